//! Connectivity functionals and the identities they satisfy.
//!
//! `lambda` is Tutte's connectivity function λ(X) = r(X) + r(E−X) − r(M);
//! `local_conn` is ⊓(X,Y) = r(X) + r(Y) − r(X∪Y) for disjoint X, Y, with a
//! dual variant computed through the rank formula rather than a dual table;
//! `kappa` minimises λ over all separations keeping X and Y apart.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{Subset, EMPTY};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// λ(X) = r(X) + r(E−X) − r(M). Self-dual and invariant under complement.
pub fn lambda(m: &Matroid, x: Subset) -> u8 {
    let x = x.inter(m.full());
    m.r(x) + m.r(m.full().minus(x)) - m.rank()
}

/// ⊓(X,Y) = r(X) + r(Y) − r(X∪Y), or the same in the dual when `dual` is
/// set. X and Y must be disjoint.
pub fn local_conn(m: &Matroid, x: Subset, y: Subset, dual: bool) -> Result<u8> {
    if !x.disjoint(y) {
        return Err(Error::OverlappingSets(format!(
            "local connectivity needs disjoint sets; both contain {}",
            m.set_string(x.inter(y))
        )));
    }
    Ok(if dual {
        m.r_dual(x) + m.r_dual(y) - m.r_dual(x.union(y))
    } else {
        m.r(x) + m.r(y) - m.r(x.union(y))
    })
}

/// κ(X,Y) = min { λ(Z) : X ⊆ Z ⊆ E−Y }, by exhausting the 2^(n−|X|−|Y|)
/// choices of Z.
pub fn kappa(m: &Matroid, x: Subset, y: Subset) -> Result<u8> {
    if !x.disjoint(y) {
        return Err(Error::OverlappingSets(format!(
            "kappa needs disjoint sets; both contain {}",
            m.set_string(x.inter(y))
        )));
    }
    let free = m.full().minus(x).minus(y);
    let mut best = u8::MAX;
    for s in free.submasks() {
        best = best.min(lambda(m, x.union(s)));
    }
    Ok(best)
}

/// Closure (or coclosure, when `dual` is set): X plus every element whose
/// addition does not raise the (co)rank.
pub fn closure(m: &Matroid, x: Subset, dual: bool) -> Subset {
    let x = x.inter(m.full());
    let rx = if dual { m.r_dual(x) } else { m.r(x) };
    let mut out = x;
    for e in m.full().minus(x).iter() {
        let re = if dual { m.r_dual(x.with(e)) } else { m.r(x.with(e)) };
        if re == rx {
            out = out.with(e);
        }
    }
    out
}

/// A set is clonal when swapping any two of its elements is a
/// rank-preserving symmetry: for all e, f in A and all X avoiding both,
/// r(X ∪ e) = r(X ∪ f).
pub fn is_clonal_set(m: &Matroid, a: Subset) -> bool {
    let a = a.inter(m.full());
    let elems: Vec<usize> = a.iter().collect();
    for (i, &e) in elems.iter().enumerate() {
        for &f in &elems[i + 1..] {
            let rest = m.full().without(e).without(f);
            for x in rest.submasks() {
                if m.r(x.with(e)) != m.r(x.with(f)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The connectivity laws this module can check on a whole matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// λ(X∪Y) = λ(X) + λ(Y) − ⊓(X,Y) − ⊓*(X,Y) for disjoint X, Y.
    Geoffs,
    /// ⊓(A∪B,C∪D) + ⊓(A,B) + ⊓(C,D) = ⊓(A∪C,B∪D) + ⊓(A,C) + ⊓(B,D) for
    /// pairwise disjoint A,B,C,D, together with the three-set form
    /// ⊓(A∪B,C) + ⊓(A,B) = ⊓(A∪C,B) + ⊓(A,C).
    Jamess,
    /// Step monotonicity of flexipaths; not a law of plain matroids.
    MonoFree,
}

impl std::str::FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Law> {
        match s {
            "geoffs" => Ok(Law::Geoffs),
            "jamess" => Ok(Law::Jamess),
            "mono-free" => Ok(Law::MonoFree),
            other => Err(Error::BadParameters(format!(
                "unknown law `{other}`; expected geoffs, jamess or mono-free"
            ))),
        }
    }
}

impl Law {
    pub fn name(&self) -> &'static str {
        match self {
            Law::Geoffs => "geoffs",
            Law::Jamess => "jamess",
            Law::MonoFree => "mono-free",
        }
    }
}

/// When to stop exhausting and start sampling.
#[derive(Debug, Clone, Serialize)]
pub struct LawConfig {
    /// Ground sets up to this size are checked over every tuple.
    pub exhaustive_max_n: usize,
    /// Tuples drawn per identity above the exhaustive threshold.
    pub samples: u64,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { exhaustive_max_n: 10, samples: 10_000, seed: 0 }
    }
}

/// Outcome of a law check. Failures are reported, never thrown.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    /// Fingerprint of the matroid checked, in hex.
    pub matroid: String,
    pub law: String,
    pub pass: bool,
    pub witness: Option<String>,
    /// Number of tuples the law was evaluated on.
    pub count: u64,
}

impl LawReport {
    pub fn new(m: &Matroid, law: &str) -> LawReport {
        LawReport {
            matroid: format!("{:016x}", m.fingerprint()),
            law: law.to_string(),
            pass: true,
            witness: None,
            count: 0,
        }
    }

    fn fail(&mut self, witness: String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }
}

/// Checks one law on one matroid: exhaustively over all tuples when
/// n ≤ `exhaustive_max_n`, otherwise on seeded random tuples. The first
/// violated instance becomes the witness.
pub fn check_laws(m: &Matroid, law: Law, cfg: &LawConfig) -> Result<LawReport> {
    match law {
        Law::Geoffs => Ok(check_geoffs(m, cfg)),
        Law::Jamess => Ok(check_jamess(m, cfg)),
        Law::MonoFree => Err(Error::BadParameters(
            "mono-free applies to flexipaths; use flexipath::check_mono".into(),
        )),
    }
}

fn geoffs_instance(m: &Matroid, x: Subset, y: Subset, report: &mut LawReport) {
    report.count += 1;
    let lhs = lambda(m, x.union(y));
    let rhs = i16::from(lambda(m, x)) + i16::from(lambda(m, y))
        - i16::from(local_conn(m, x, y, false).unwrap())
        - i16::from(local_conn(m, x, y, true).unwrap());
    if i16::from(lhs) != rhs {
        report.fail(format!(
            "X = {}, Y = {}: lambda(X+Y) = {lhs} but the right side is {rhs}",
            m.set_string(x),
            m.set_string(y)
        ));
    }
}

fn check_geoffs(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let mut report = LawReport::new(m, Law::Geoffs.name());
    let n = m.n();
    if n <= cfg.exhaustive_max_n {
        for x in 0..1u32 << n {
            let x = Subset(x);
            for y in m.full().minus(x).submasks() {
                geoffs_instance(m, x, y, &mut report);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            let mut x = EMPTY;
            let mut y = EMPTY;
            for e in 0..n {
                match rng.gen_range(0..3) {
                    0 => x = x.with(e),
                    1 => y = y.with(e),
                    _ => {}
                }
            }
            geoffs_instance(m, x, y, &mut report);
        }
    }
    report
}

fn jamess_quad(m: &Matroid, sets: [Subset; 4], report: &mut LawReport) {
    let [a, b, c, d] = sets;
    report.count += 1;
    let conn = |p: Subset, q: Subset| i16::from(local_conn(m, p, q, false).unwrap());
    let lhs = conn(a.union(b), c.union(d)) + conn(a, b) + conn(c, d);
    let rhs = conn(a.union(c), b.union(d)) + conn(a, c) + conn(b, d);
    if lhs != rhs {
        report.fail(format!(
            "A = {}, B = {}, C = {}, D = {}: four-set form gives {lhs} != {rhs}",
            m.set_string(a),
            m.set_string(b),
            m.set_string(c),
            m.set_string(d)
        ));
    }
}

fn jamess_triple(m: &Matroid, sets: [Subset; 3], report: &mut LawReport) {
    let [a, b, c] = sets;
    report.count += 1;
    let conn = |p: Subset, q: Subset| i16::from(local_conn(m, p, q, false).unwrap());
    let lhs = conn(a.union(b), c) + conn(a, b);
    let rhs = conn(a.union(c), b) + conn(a, c);
    if lhs != rhs {
        report.fail(format!(
            "A = {}, B = {}, C = {}: three-set form gives {lhs} != {rhs}",
            m.set_string(a),
            m.set_string(b),
            m.set_string(c)
        ));
    }
}

fn check_jamess(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let mut report = LawReport::new(m, Law::Jamess.name());
    let n = m.n();
    if n <= cfg.exhaustive_max_n {
        for a in 0..1u32 << n {
            let a = Subset(a);
            let rest = m.full().minus(a);
            for b in rest.submasks() {
                for c in rest.minus(b).submasks() {
                    jamess_triple(m, [a, b, c], &mut report);
                    for d in rest.minus(b).minus(c).submasks() {
                        jamess_quad(m, [a, b, c, d], &mut report);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            let mut sets = [EMPTY; 4];
            for e in 0..n {
                let slot = rng.gen_range(0..5);
                if slot < 4 {
                    sets[slot] = sets[slot].with(e);
                }
            }
            jamess_quad(m, sets, &mut report);
            let mut sets = [EMPTY; 3];
            for e in 0..n {
                let slot = rng.gen_range(0..4);
                if slot < 3 {
                    sets[slot] = sets[slot].with(e);
                }
            }
            jamess_triple(m, sets, &mut report);
        }
    }
    report
}
