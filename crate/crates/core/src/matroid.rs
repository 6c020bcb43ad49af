//! Matroids as full rank tables, plus the constructions that stay inside
//! ground sets of at most 20 elements.
//!
//! Every construction boundary validates the three rank axioms exhaustively:
//! r(∅) = 0, unit increase, and local submodularity. At the 20-element cap a
//! table holds 2^20 bytes, and validation is O(2^n · n²), which is the price
//! of never trusting a construction.

use crate::error::{Error, Result};
use crate::subset::{Subset, EMPTY};

/// Hard cap on ground-set size (rank tables are 2^n bytes).
pub const MAX_ELEMENTS: usize = 20;

#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    labels: Vec<String>,
    table: Vec<u8>,
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == ',' || c == ':') {
        return Err(Error::BadParameters(format!(
            "label `{label}` must be nonempty and free of whitespace, commas and colons"
        )));
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        check_label(l)?;
        if labels[..i].contains(l) {
            return Err(Error::LabelClash(format!("duplicate label `{l}`")));
        }
    }
    Ok(())
}

impl Matroid {
    /// Builds and validates a matroid from an explicit rank table; entry `X`
    /// of `table` is the rank of the subset whose bitmask is `X`, with bit
    /// `i` standing for `labels[i]`.
    pub fn from_rank_table(n: usize, labels: Vec<String>, table: Vec<u8>) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetFull(format!(
                "{n} elements exceeds the cap of {MAX_ELEMENTS}"
            )));
        }
        if labels.len() != n {
            return Err(Error::BadParameters(format!(
                "{} labels for {n} elements",
                labels.len()
            )));
        }
        if table.len() != 1 << n {
            return Err(Error::BadParameters(format!(
                "rank table has {} entries, expected {}",
                table.len(),
                1usize << n
            )));
        }
        check_labels(&labels)?;
        let m = Matroid { labels, table };
        m.validate()?;
        Ok(m)
    }

    /// Builds a matroid from a family of bases. Independence is the downward
    /// closure of the family and ranks come from the recursion
    /// r(X) = |X| if X is independent, else max over e in X of r(X − e).
    /// A family violating basis exchange produces a non-submodular table and
    /// surfaces as an `AxiomViolation`.
    pub fn from_bases(n: usize, labels: Vec<String>, bases: &[Subset]) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetFull(format!(
                "{n} elements exceeds the cap of {MAX_ELEMENTS}"
            )));
        }
        if bases.is_empty() {
            return Err(Error::BadParameters("empty basis family".into()));
        }
        let full = Subset::full(n);
        for b in bases {
            if !b.is_subset_of(full) {
                return Err(Error::BadParameters(format!(
                    "basis {b:?} is not a subset of the ground set"
                )));
            }
        }
        if labels.len() != n {
            return Err(Error::BadParameters(format!(
                "{} labels for {n} elements",
                labels.len()
            )));
        }
        check_labels(&labels)?;
        let table = table_from_bases(n, bases);
        let m = Matroid { labels, table };
        m.validate()?;
        Ok(m)
    }

    /// Exhaustive check of the rank axioms; first violation is reported with
    /// a labelled witness.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let t = &self.table;
        if t[0] != 0 {
            return Err(Error::AxiomViolation {
                axiom: "empty set has rank 0",
                witness: format!("r(empty) = {}", t[0]),
            });
        }
        for x in 0..1u32 << n {
            let rx = t[x as usize];
            for e in 0..n {
                if x >> e & 1 == 1 {
                    continue;
                }
                let rxe = t[(x | 1 << e) as usize];
                if rxe < rx || rxe > rx + 1 {
                    return Err(Error::AxiomViolation {
                        axiom: "unit increase",
                        witness: format!(
                            "r({0}) = {rx} but r({0} + {1}) = {rxe}",
                            self.set_string(Subset(x)),
                            self.labels[e]
                        ),
                    });
                }
                for f in e + 1..n {
                    if x >> f & 1 == 1 {
                        continue;
                    }
                    let rxf = t[(x | 1 << f) as usize];
                    let rxef = t[(x | 1 << e | 1 << f) as usize];
                    if rxe + rxf < rxef + rx {
                        return Err(Error::AxiomViolation {
                            axiom: "submodularity",
                            witness: format!(
                                "X = {}, e = {}, f = {}: {rxe} + {rxf} < {rxef} + {rx}",
                                self.set_string(Subset(x)),
                                self.labels[e],
                                self.labels[f]
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n())
    }

    /// Rank of a subset.
    pub fn r(&self, x: Subset) -> u8 {
        self.table[(x.0 & self.full().0) as usize]
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> u8 {
        self.table[self.full().0 as usize]
    }

    /// Rank in the dual: r*(X) = |X| + r(E − X) − r(M).
    pub fn r_dual(&self, x: Subset) -> u8 {
        let x = x.inter(self.full());
        (x.card() as u8 + self.r(self.full().minus(x))) - self.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn subset_of_labels<'a, I>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut s = EMPTY;
        for l in labels {
            s = s.with(self.label_index(l)?);
        }
        Ok(s)
    }

    /// Comma-joined labels of a subset, for error messages and reports.
    pub fn set_string(&self, x: Subset) -> String {
        if x.is_empty() {
            return "empty".into();
        }
        let names: Vec<&str> = x.iter().map(|i| self.labels[i].as_str()).collect();
        names.join(",")
    }

    /// FNV-1a over labels and table; stable across runs, used as the matroid
    /// id in reports and modular cuts.
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |byte: u8| {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for l in &self.labels {
            for b in l.bytes() {
                eat(b);
            }
            eat(0);
        }
        for &b in &self.table {
            eat(b);
        }
        h
    }

    /// All bases, ascending by bitmask.
    pub fn bases(&self) -> Vec<Subset> {
        let r = self.rank();
        (0..1u32 << self.n())
            .map(Subset)
            .filter(|&x| x.card() as u8 == r && self.r(x) == r)
            .collect()
    }

    pub fn is_basis(&self, b: Subset) -> bool {
        b.card() as u8 == self.rank() && self.r(b) == self.rank()
    }

    /// Same matroid, new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.n() {
            return Err(Error::BadParameters(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n()
            )));
        }
        check_labels(&labels)?;
        Ok(Matroid { labels, table: self.table.clone() })
    }

    pub fn dual(&self) -> Matroid {
        let n = self.n();
        let table: Vec<u8> = (0..1u32 << n).map(|x| self.r_dual(Subset(x))).collect();
        let m = Matroid { labels: self.labels.clone(), table };
        m.validate().expect("dual of a valid matroid is valid");
        m
    }

    /// M \ delete / contract, in one step. Labels of kept elements survive.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        if !delete.disjoint(contract) {
            return Err(Error::OverlappingSets(format!(
                "delete and contract share {}",
                self.set_string(delete.inter(contract))
            )));
        }
        let delete = delete.inter(self.full());
        let contract = contract.inter(self.full());
        let keep: Vec<usize> = self
            .full()
            .minus(delete)
            .minus(contract)
            .iter()
            .collect();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let rc = self.r(contract);
        let mut table = vec![0u8; 1 << keep.len()];
        for (x, entry) in table.iter_mut().enumerate() {
            let mut lifted = contract;
            for (bit, &orig) in keep.iter().enumerate() {
                if x >> bit & 1 == 1 {
                    lifted = lifted.with(orig);
                }
            }
            *entry = self.r(lifted) - rc;
        }
        let m = Matroid { labels, table };
        m.validate().expect("minor of a valid matroid is valid");
        Ok(m)
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n() + other.n();
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetFull(format!(
                "{} + {} elements exceeds the cap of {MAX_ELEMENTS}",
                self.n(),
                other.n()
            )));
        }
        for l in other.labels() {
            if self.labels.contains(l) {
                return Err(Error::LabelClash(format!("label `{l}` is in both summands")));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let lo = self.full().0;
        let table: Vec<u8> = (0..1u32 << n)
            .map(|x| self.r(Subset(x & lo)) + other.r(Subset(x >> self.n())))
            .collect();
        let m = Matroid { labels, table };
        m.validate().expect("direct sum of valid matroids is valid");
        Ok(m)
    }

    /// Truncation to rank k: r'(X) = min(r(X), k).
    pub fn truncate(&self, k: u8) -> Result<Matroid> {
        if k > self.rank() {
            return Err(Error::BadParameters(format!(
                "cannot truncate a rank-{} matroid to rank {k}",
                self.rank()
            )));
        }
        let table: Vec<u8> = self.table.iter().map(|&r| r.min(k)).collect();
        let m = Matroid { labels: self.labels.clone(), table };
        m.validate().expect("truncation of a valid matroid is valid");
        Ok(m)
    }

    /// U_{r,n} with labels "0" .. "n-1".
    pub fn uniform(r: u8, n: usize) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetFull(format!(
                "{n} elements exceeds the cap of {MAX_ELEMENTS}"
            )));
        }
        if r as usize > n {
            return Err(Error::BadParameters(format!("uniform({r},{n}) needs r <= n")));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table: Vec<u8> = (0..1u32 << n)
            .map(|x| (x.count_ones() as u8).min(r))
            .collect();
        let m = Matroid { labels, table };
        m.validate().expect("uniform matroids are valid");
        Ok(m)
    }

    /// The Vámos matroid: rank 4 on a1,a2,b1,b2,c1,c2,d1,d2 whose only
    /// non-spanning circuits are the five circuit-hyperplanes
    /// {a1,a2,b1,b2}, {a1,a2,c1,c2}, {b1,b2,c1,c2}, {b1,b2,d1,d2},
    /// {c1,c2,d1,d2}; the sixth pair-union {a1,a2,d1,d2} is a basis.
    pub fn vamos() -> Matroid {
        let labels: Vec<String> = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let pair = |i: usize| Subset::from_indices([2 * i, 2 * i + 1]);
        let chs = [
            pair(0).union(pair(1)),
            pair(0).union(pair(2)),
            pair(1).union(pair(2)),
            pair(1).union(pair(3)),
            pair(2).union(pair(3)),
        ];
        let bases: Vec<Subset> = (0..1u32 << 8)
            .map(Subset)
            .filter(|x| x.card() == 4 && !chs.contains(x))
            .collect();
        Matroid::from_bases(8, labels, &bases).expect("the Vamos matroid is a matroid")
    }

    /// Tipless free spike of rank r >= 3 with legs {x_i, y_i}: a subset
    /// containing k >= 1 full legs has rank min(|S| − k + 1, r), any other
    /// subset is free. For r = 3 this is U_{3,6}.
    pub fn free_spike(r: u8) -> Result<Matroid> {
        if r < 3 {
            return Err(Error::BadParameters(format!("free_spike({r}) needs r >= 3")));
        }
        let n = 2 * r as usize;
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetFull(format!(
                "a rank-{r} spike has {n} elements, over the cap of {MAX_ELEMENTS}"
            )));
        }
        let mut labels = Vec::with_capacity(n);
        for i in 1..=r {
            labels.push(format!("x{i}"));
            labels.push(format!("y{i}"));
        }
        let table: Vec<u8> = (0..1u32 << n)
            .map(|x| {
                let mut legs = 0u8;
                for i in 0..r as usize {
                    if x >> (2 * i) & 3 == 3 {
                        legs += 1;
                    }
                }
                let size = x.count_ones() as u8;
                if legs == 0 {
                    size.min(r)
                } else {
                    (size - legs + 1).min(r)
                }
            })
            .collect();
        let m = Matroid { labels, table };
        m.validate().expect("free spikes are valid");
        Ok(m)
    }
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Matroid(n={}, r={}, [{}])",
            self.n(),
            self.rank(),
            self.labels.join(",")
        )
    }
}

/// Rank table from a basis family: mark bases, close downward over supersets
/// to get the independence indicator, then fill ranks by the max-subrank
/// recursion. Both passes are O(2^n · n).
fn table_from_bases(n: usize, bases: &[Subset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut ind = vec![false; size];
    for b in bases {
        ind[b.0 as usize] = true;
    }
    for e in 0..n {
        let bit = 1usize << e;
        for x in 0..size {
            if x & bit == 0 && ind[x | bit] {
                ind[x] = true;
            }
        }
    }
    let mut table = vec![0u8; size];
    for x in 1..size {
        table[x] = if ind[x] {
            (x as u32).count_ones() as u8
        } else {
            let mut best = 0u8;
            let mut rest = x as u32;
            while rest != 0 {
                let e = rest.trailing_zeros();
                rest &= rest - 1;
                best = best.max(table[x & !(1usize << e)]);
            }
            best
        };
    }
    table
}

/// A matroid together with an ordered partition of its ground set into named
/// (possibly empty) parts.
#[derive(Clone)]
pub struct PartitionedMatroid {
    matroid: Matroid,
    parts: Vec<(String, Subset)>,
}

impl PartitionedMatroid {
    pub fn new(matroid: Matroid, parts: Vec<(String, Subset)>) -> Result<PartitionedMatroid> {
        let mut seen = EMPTY;
        for (i, (name, set)) in parts.iter().enumerate() {
            check_label(name)?;
            if parts[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::LabelClash(format!("duplicate part name `{name}`")));
            }
            if !set.is_subset_of(matroid.full()) {
                return Err(Error::BadParameters(format!(
                    "part `{name}` is not a subset of the ground set"
                )));
            }
            if !set.disjoint(seen) {
                return Err(Error::OverlappingSets(format!(
                    "part `{name}` overlaps an earlier part on {}",
                    matroid.set_string(set.inter(seen))
                )));
            }
            seen = seen.union(*set);
        }
        if seen != matroid.full() {
            return Err(Error::BadParameters(format!(
                "parts do not cover the ground set; missing {}",
                matroid.set_string(matroid.full().minus(seen))
            )));
        }
        Ok(PartitionedMatroid { matroid, parts })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn parts(&self) -> &[(String, Subset)] {
        &self.parts
    }

    pub fn n_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, i: usize) -> Subset {
        self.parts[i].1
    }

    pub fn part_name(&self, i: usize) -> &str {
        &self.parts[i].0
    }

    pub fn dual(&self) -> PartitionedMatroid {
        PartitionedMatroid { matroid: self.matroid.dual(), parts: self.parts.clone() }
    }
}

impl std::fmt::Debug for PartitionedMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Partitioned({:?},", self.matroid)?;
        for (name, set) in &self.parts {
            write!(f, " {name}={}", self.matroid.set_string(*set))?;
        }
        write!(f, ")")
    }
}

/// Is there a rank-preserving bijection matching part i of `a` onto part i of
/// `b` for every i? Parts correspond by position; a size mismatch in any
/// position is an error rather than `false`.
pub fn partitioned_isomorphic(a: &PartitionedMatroid, b: &PartitionedMatroid) -> Result<bool> {
    if a.n_parts() != b.n_parts() {
        return Err(Error::BadParameters(format!(
            "{} parts vs {} parts",
            a.n_parts(),
            b.n_parts()
        )));
    }
    for i in 0..a.n_parts() {
        if a.part(i).card() != b.part(i).card() {
            return Err(Error::PartSizeMismatch {
                part: a.part_name(i).to_string(),
                left: a.part(i).card() as usize,
                right: b.part(i).card() as usize,
            });
        }
    }
    if a.matroid().rank() != b.matroid().rank() {
        return Ok(false);
    }

    // Elements of a, listed part by part, each with its candidate images.
    let mut order: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..a.n_parts() {
        let images: Vec<usize> = b.part(i).iter().collect();
        for u in a.part(i).iter() {
            order.push((u, images.clone()));
        }
    }

    fn search(
        a: &Matroid,
        b: &Matroid,
        order: &[(usize, Vec<usize>)],
        depth: usize,
        assigned: Subset,
        phi: &mut [usize; 32],
        used: Subset,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let (u, ref images) = order[depth];
        'candidates: for &v in images {
            if used.contains(v) {
                continue;
            }
            // The partial map must preserve ranks of all subsets of the
            // assigned prefix extended by u; checked incrementally, this is
            // a full table comparison by the time the map is total.
            for s in assigned.submasks() {
                let mut t = EMPTY;
                for i in s.iter() {
                    t = t.with(phi[i]);
                }
                if a.r(s.with(u)) != b.r(t.with(v)) {
                    continue 'candidates;
                }
            }
            phi[u] = v;
            if search(a, b, order, depth + 1, assigned.with(u), phi, used.with(v)) {
                return true;
            }
        }
        false
    }

    let mut phi = [0usize; 32];
    Ok(search(a.matroid(), b.matroid(), &order, 0, EMPTY, &mut phi, EMPTY))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn uniform_ranks() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.rank(), 2);
        assert_eq!(u.r(Subset::from_indices([0])), 1);
        assert_eq!(u.r(Subset::from_indices([0, 1, 2])), 2);
        assert_eq!(u.labels(), &["0", "1", "2", "3"]);
        assert_eq!(u.bases().len(), 6);
        assert!(Matroid::uniform(5, 4).is_err());
    }

    #[test]
    fn rank_table_rejects_non_matroids() {
        // r(∅) ≠ 0
        let err = Matroid::from_rank_table(1, labels(&["a"]), vec![1, 1]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom, .. } if axiom.contains("empty")));
        // jump by 2
        let err = Matroid::from_rank_table(1, labels(&["a"]), vec![0, 2]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom, .. } if axiom == "unit increase"));
        // non-submodular: r(ab) + r(ac) < r(abc) + r(a)
        let mut t = vec![0u8; 8];
        for x in 1u32..8 {
            t[x as usize] = x.count_ones() as u8;
        }
        t[0b011] = 1;
        t[0b101] = 1;
        let err = Matroid::from_rank_table(3, labels(&["a", "b", "c"]), t).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom, .. } if axiom == "submodularity"));
    }

    #[test]
    fn bases_round_trip_uniform() {
        let u = Matroid::uniform(3, 6).unwrap();
        let again = Matroid::from_bases(6, labels(&["0", "1", "2", "3", "4", "5"]), &u.bases())
            .unwrap();
        assert_eq!(u, again);
    }

    #[test]
    fn exchange_failure_is_an_axiom_violation() {
        // {a} and {b,c} cannot both be bases of a matroid.
        let err = Matroid::from_bases(
            3,
            labels(&["a", "b", "c"]),
            &[Subset::from_indices([0]), Subset::from_indices([1, 2])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }

    #[test]
    fn dual_is_an_involution_and_swaps_uniform_parameters() {
        let u = Matroid::uniform(2, 5).unwrap();
        let d = u.dual();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.r(Subset::from_indices([0, 1, 2])), 3);
        assert_eq!(d.dual(), u);
        for x in 0..1u32 << 5 {
            assert_eq!(u.r_dual(Subset(x)), d.r(Subset(x)));
        }
    }

    #[test]
    fn minor_of_uniform() {
        let u = Matroid::uniform(3, 6).unwrap();
        let m = u.minor(Subset::singleton(5), Subset::singleton(0)).unwrap();
        assert_eq!(m.n(), 4);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.labels(), &["1", "2", "3", "4"]);
        assert!(matches!(
            u.minor(Subset::singleton(1), Subset::from_indices([1, 2])),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn direct_sum_adds_ranks() {
        let a = Matroid::uniform(2, 3).unwrap().relabel(labels(&["a1", "a2", "a3"])).unwrap();
        let b = Matroid::uniform(1, 2).unwrap().relabel(labels(&["b1", "b2"])).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.r(Subset::from_indices([0, 1, 3])), 3);
        assert_eq!(s.r(Subset::from_indices([3, 4])), 1);
        assert!(matches!(a.direct_sum(&a), Err(Error::LabelClash(_))));
    }

    #[test]
    fn truncation() {
        let u = Matroid::uniform(4, 6).unwrap();
        let t = u.truncate(2).unwrap();
        assert_eq!(t, Matroid::uniform(2, 6).unwrap());
        assert!(u.truncate(5).is_err());
    }

    #[test]
    fn vamos_circuit_hyperplanes() {
        let v = Matroid::vamos();
        assert_eq!(v.rank(), 4);
        assert_eq!(v.bases().len(), 65); // C(8,4) − 5
        let quad = |ls: [&str; 4]| v.subset_of_labels(ls).unwrap();
        for ch in [
            ["a1", "a2", "b1", "b2"],
            ["a1", "a2", "c1", "c2"],
            ["b1", "b2", "c1", "c2"],
            ["b1", "b2", "d1", "d2"],
            ["c1", "c2", "d1", "d2"],
        ] {
            assert_eq!(v.r(quad(ch)), 3);
        }
        assert_eq!(v.r(quad(["a1", "a2", "d1", "d2"])), 4);
    }

    #[test]
    fn free_spike_rank_formula() {
        assert_eq!(
            Matroid::free_spike(3).unwrap().relabel(labels(&["0", "1", "2", "3", "4", "5"])).unwrap(),
            Matroid::uniform(3, 6).unwrap()
        );
        let s = Matroid::free_spike(4).unwrap();
        let leg = |i: usize| Subset::from_indices([2 * i, 2 * i + 1]);
        assert_eq!(s.r(leg(0)), 2);
        assert_eq!(s.r(leg(0).union(leg(1))), 3);
        assert_eq!(s.r(leg(0).union(leg(1)).union(leg(2))), 4);
        assert_eq!(s.r(Subset::from_indices([0, 2, 4, 6])), 4);
        assert!(Matroid::free_spike(2).is_err());
    }

    #[test]
    fn free_spike_agrees_with_its_basis_family() {
        // Bases are the r-subsets containing at most one full leg.
        for r in 3..=6u8 {
            let s = Matroid::free_spike(r).unwrap();
            let n = 2 * r as usize;
            let bases: Vec<Subset> = (0..1u32 << n)
                .map(Subset)
                .filter(|x| {
                    let legs = (0..r as usize).filter(|i| x.0 >> (2 * i) & 3 == 3).count();
                    x.card() == r as u32 && legs <= 1
                })
                .collect();
            let from_bases = Matroid::from_bases(n, s.labels().to_vec(), &bases).unwrap();
            assert_eq!(s, from_bases, "rank-{r} spike");
        }
    }

    #[test]
    fn fingerprints_distinguish_labels_and_tables() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.fingerprint(), Matroid::uniform(2, 4).unwrap().fingerprint());
        assert_ne!(u.fingerprint(), Matroid::uniform(1, 4).unwrap().fingerprint());
        assert_ne!(
            u.fingerprint(),
            u.relabel(labels(&["p", "q", "r", "s"])).unwrap().fingerprint()
        );
    }

    #[test]
    fn partition_validation() {
        let u = Matroid::uniform(2, 4).unwrap();
        let p = |sets: Vec<(&str, Subset)>| {
            PartitionedMatroid::new(
                u.clone(),
                sets.into_iter().map(|(n, s)| (n.to_string(), s)).collect(),
            )
        };
        assert!(p(vec![
            ("A", Subset::from_indices([0, 1])),
            ("B", Subset::from_indices([2, 3])),
        ])
        .is_ok());
        // empty parts are allowed
        assert!(p(vec![
            ("A", Subset::from_indices([0, 1, 2, 3])),
            ("B", EMPTY),
        ])
        .is_ok());
        assert!(matches!(
            p(vec![
                ("A", Subset::from_indices([0, 1, 2])),
                ("B", Subset::from_indices([2, 3])),
            ]),
            Err(Error::OverlappingSets(_))
        ));
        assert!(matches!(
            p(vec![("A", Subset::from_indices([0, 1]))]),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            p(vec![
                ("A", Subset::from_indices([0, 1])),
                ("A", Subset::from_indices([2, 3])),
            ]),
            Err(Error::LabelClash(_))
        ));
    }

    #[test]
    fn isomorphism_by_parts() {
        let u = Matroid::uniform(2, 4).unwrap();
        let w = u.relabel(labels(&["p", "q", "r", "s"])).unwrap();
        let pa = PartitionedMatroid::new(
            u.clone(),
            vec![
                ("A".into(), Subset::from_indices([0, 1])),
                ("B".into(), Subset::from_indices([2, 3])),
            ],
        )
        .unwrap();
        let pb = PartitionedMatroid::new(
            w,
            vec![
                ("A".into(), Subset::from_indices([0, 3])),
                ("B".into(), Subset::from_indices([1, 2])),
            ],
        )
        .unwrap();
        assert!(partitioned_isomorphic(&pa, &pb).unwrap());

        // Same part sizes, different matroid: false, not an error.
        let m = Matroid::uniform(1, 4).unwrap();
        let pm = PartitionedMatroid::new(
            m,
            vec![
                ("A".into(), Subset::from_indices([0, 1])),
                ("B".into(), Subset::from_indices([2, 3])),
            ],
        )
        .unwrap();
        assert!(!partitioned_isomorphic(&pa, &pm).unwrap());

        // Size mismatch in a position: error.
        let skew = PartitionedMatroid::new(
            u,
            vec![
                ("A".into(), Subset::from_indices([0])),
                ("B".into(), Subset::from_indices([1, 2, 3])),
            ],
        )
        .unwrap();
        assert!(matches!(
            partitioned_isomorphic(&pa, &skew),
            Err(Error::PartSizeMismatch { .. })
        ));
    }

    #[test]
    fn isomorphism_detects_structure_not_just_sizes() {
        // U_{2,4} vs the rank-2 matroid with elements 2,3 parallel: same
        // sizes and rank, not isomorphic.
        let u = Matroid::uniform(2, 4).unwrap();
        let mut t = vec![0u8; 16];
        for x in 0..16u32 {
            let merged = (x & 0b0011) | if x & 0b1100 != 0 { 0b0100 } else { 0 };
            t[x as usize] = (merged.count_ones() as u8).min(2);
        }
        let p = Matroid::from_rank_table(4, labels(&["0", "1", "2", "3"]), t).unwrap();
        let whole = |m: &Matroid| {
            PartitionedMatroid::new(m.clone(), vec![("E".into(), Subset::full(4))]).unwrap()
        };
        assert!(!partitioned_isomorphic(&whole(&u), &whole(&p)).unwrap());
        assert!(partitioned_isomorphic(&whole(&p), &whole(&p)).unwrap());
    }
}
