//! Clonal cores of partitioned matroids.
//!
//! Each part X_i of the host is replaced by a clonal set G_i of λ(X_i) fresh
//! elements added freely into the guts of (X_i, E−X_i); afterwards the
//! original ground set is deleted. The core keeps every connectivity
//! relation among the parts, which `verify_core_theorem` checks wholesale.

use std::collections::BTreeSet;

use crate::connectivity::{is_clonal_set, lambda, local_conn, LawReport};
use crate::error::{Error, Result};
use crate::extension::free_add_into_guts;
use crate::matroid::{PartitionedMatroid, MAX_ELEMENTS};
use crate::subset::{Subset, EMPTY};

/// A clonal core together with where each part came from.
#[derive(Debug, Clone)]
pub struct CoreResult {
    pub core: PartitionedMatroid,
    /// One entry per part, in order: part name, the original X_i as a subset
    /// of the host, and λ(X_i).
    pub provenance: Vec<(String, Subset, u8)>,
}

/// Computes the clonal core. When host size plus all the additions fit in
/// the element cap the additions happen first and the original elements are
/// deleted at the end in one minor; otherwise each part is deleted as soon
/// as its clones are in place, which keeps the working ground set small.
/// Both routes produce the same matroid with the same labels.
pub fn clonal_core(p: &PartitionedMatroid) -> Result<CoreResult> {
    let m = p.matroid();
    let lambdas: Vec<u8> = (0..p.n_parts()).map(|i| lambda(m, p.part(i))).collect();
    let total: usize = lambdas.iter().map(|&t| t as usize).sum();
    if total > MAX_ELEMENTS {
        return Err(Error::GroundSetFull(format!(
            "core needs {total} elements, over the cap of {MAX_ELEMENTS}"
        )));
    }
    let interleave = m.n() + total > MAX_ELEMENTS;
    clonal_core_impl(p, &lambdas, interleave)
}

pub(crate) fn clonal_core_impl(
    p: &PartitionedMatroid,
    lambdas: &[u8],
    interleave: bool,
) -> Result<CoreResult> {
    let host = p.matroid();

    // Clone labels are `<part>.g<k>`, skipping any name the host already
    // uses so that taking the core of a core stays well-defined.
    let mut taken: BTreeSet<String> = host.labels().iter().cloned().collect();
    let mut fresh: Vec<Vec<String>> = Vec::with_capacity(p.n_parts());
    for (i, &lam) in lambdas.iter().enumerate() {
        let name = p.part_name(i);
        let mut labels = Vec::with_capacity(lam as usize);
        let mut k = 1usize;
        while labels.len() < lam as usize {
            let cand = format!("{name}.g{k}");
            if taken.insert(cand.clone()) {
                labels.push(cand);
            }
            k += 1;
        }
        fresh.push(labels);
    }

    let mut cur = host.clone();
    for i in 0..p.n_parts() {
        let name = p.part_name(i);
        // Part i's current position, found by label: earlier deletions (in
        // the interleaved route) shift indices but never labels.
        let part_labels: Vec<&str> =
            p.part(i).iter().map(|e| host.labels()[e].as_str()).collect();
        let z = cur.subset_of_labels(part_labels.iter().copied())?;
        assert_eq!(
            lambda(&cur, z),
            lambdas[i],
            "replacing earlier parts by their clones must not move lambda of part `{name}`"
        );
        let (next, _) = free_add_into_guts(&cur, z, lambdas[i] as usize, &fresh[i])?;
        cur = next;
        if interleave {
            let z = cur.subset_of_labels(part_labels.iter().copied())?;
            cur = cur.minor(z, EMPTY)?;
        }
    }
    if !interleave {
        let originals =
            cur.subset_of_labels(host.labels().iter().map(String::as_str))?;
        cur = cur.minor(originals, EMPTY)?;
    }

    let mut parts = Vec::with_capacity(p.n_parts());
    let mut provenance = Vec::with_capacity(p.n_parts());
    for i in 0..p.n_parts() {
        let name = p.part_name(i);
        let y = cur.subset_of_labels(fresh[i].iter().map(String::as_str))?;
        parts.push((name.to_string(), y));
        provenance.push((name.to_string(), p.part(i), lambdas[i]));
    }
    let core = PartitionedMatroid::new(cur, parts)?;
    Ok(CoreResult { core, provenance })
}

/// Is every part already its own clonal core: a clonal set of full λ?
pub fn is_clonal_core_matroid(p: &PartitionedMatroid) -> bool {
    (0..p.n_parts()).all(|i| {
        let y = p.part(i);
        lambda(p.matroid(), y) as u32 == y.card() && is_clonal_set(p.matroid(), y)
    })
}

/// Builds the core and checks the full slate of preserved invariants:
/// λ agrees on every union of parts, ⊓ and ⊓* agree on every disjoint pair
/// of part unions, and each core part is a clonal independent coindependent
/// set. Failures land in the report, never in an Err.
pub fn verify_core_theorem(p: &PartitionedMatroid) -> Result<LawReport> {
    let parts = p.n_parts();
    if parts > 6 {
        return Err(Error::BadParameters(format!(
            "core theorem verification handles at most 6 parts, got {parts}"
        )));
    }
    let result = clonal_core(p)?;
    let host = p.matroid();
    let core = result.core.matroid();
    let mut report = LawReport::new(host, "core-theorem");

    let union_of = |pm: &PartitionedMatroid, j: u32| {
        (0..parts)
            .filter(|i| j >> i & 1 == 1)
            .fold(EMPTY, |acc, i| acc.union(pm.part(i)))
    };
    let names_of = |j: u32| {
        (0..parts)
            .filter(|i| j >> i & 1 == 1)
            .map(|i| p.part_name(i))
            .collect::<Vec<_>>()
            .join("+")
    };

    for j in 1..1u32 << parts {
        report.count += 1;
        let lx = lambda(host, union_of(p, j));
        let ly = lambda(core, union_of(&result.core, j));
        if lx != ly {
            report.pass = false;
            report.witness.get_or_insert(format!(
                "lambda over {} is {lx} in the host but {ly} in the core",
                names_of(j)
            ));
        }
        for k in 1..1u32 << parts {
            if j & k != 0 {
                continue;
            }
            let xj = union_of(p, j);
            let xk = union_of(p, k);
            let yj = union_of(&result.core, j);
            let yk = union_of(&result.core, k);
            for dual in [false, true] {
                report.count += 1;
                let cx = local_conn(host, xj, xk, dual)?;
                let cy = local_conn(core, yj, yk, dual)?;
                if cx != cy {
                    report.pass = false;
                    report.witness.get_or_insert(format!(
                        "local {}connectivity of {} against {} is {cx} in the host but {cy} in the core",
                        if dual { "dual " } else { "" },
                        names_of(j),
                        names_of(k)
                    ));
                }
            }
        }
    }

    for (i, (name, _, t)) in result.provenance.iter().enumerate() {
        report.count += 3;
        let y = result.core.part(i);
        let sized = y.card() as u8 == *t;
        if !(sized && core.r(y) == *t && core.r_dual(y) == *t) {
            report.pass = false;
            report.witness.get_or_insert(format!(
                "core part `{name}` is not free: size {}, rank {}, corank {}, lambda {t}",
                y.card(),
                core.r(y),
                core.r_dual(y)
            ));
        }
        if !is_clonal_set(core, y) {
            report.pass = false;
            report.witness.get_or_insert(format!("core part `{name}` is not clonal"));
        }
    }
    Ok(report)
}
