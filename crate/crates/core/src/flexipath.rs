//! 4-paths and 4-flexipaths: verification, normalization to common step
//! connectivity, specially placed steps, connectivity profiles, and the
//! classification of every (4,c)-flexipath into the taxonomy.

use crate::connectivity::{kappa, lambda, local_conn, LawReport};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, PartitionedMatroid};
use crate::subset::{Subset, EMPTY};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verified {
    Unchecked,
    Path,
    Flexipath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlexiMode {
    Subset,
    Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Special {
    S1,
    S2,
}

impl std::fmt::Display for Special {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Special::S1 => "S1",
            Special::S2 => "S2",
        })
    }
}

/// A partitioned matroid read as a path: the first part is the left end L,
/// the last is the right end R, and everything between is an internal step.
/// The `verified` level records how much has actually been checked.
#[derive(Debug, Clone)]
pub struct FourPath {
    pm: PartitionedMatroid,
    verified: Verified,
}

impl FourPath {
    pub fn new(pm: PartitionedMatroid) -> Result<FourPath> {
        if pm.n_parts() < 2 {
            return Err(Error::BadParameters(
                "a path needs at least the two end parts".into(),
            ));
        }
        Ok(FourPath { pm, verified: Verified::Unchecked })
    }

    pub fn pm(&self) -> &PartitionedMatroid {
        &self.pm
    }

    pub fn matroid(&self) -> &Matroid {
        self.pm.matroid()
    }

    pub fn verified(&self) -> Verified {
        self.verified
    }

    pub fn n_steps(&self) -> usize {
        self.pm.n_parts() - 2
    }

    pub fn left(&self) -> Subset {
        self.pm.part(0)
    }

    pub fn right(&self) -> Subset {
        self.pm.part(self.pm.n_parts() - 1)
    }

    /// Internal step i, 1-based.
    pub fn step(&self, i: usize) -> Subset {
        self.pm.part(i)
    }

    pub fn step_name(&self, i: usize) -> &str {
        self.pm.part_name(i)
    }

    /// Duality preserves both the path and the flexipath property, since λ
    /// and κ are self-dual; the verification level carries over.
    pub fn dual(&self) -> FourPath {
        FourPath { pm: self.pm.dual(), verified: self.verified }
    }

    fn prefix_name(&self, j: u32) -> String {
        let mut s = self.pm.part_name(0).to_string();
        for i in 1..=self.n_steps() {
            if j >> (i - 1) & 1 == 1 {
                s.push('+');
                s.push_str(self.step_name(i));
            }
        }
        s
    }

    fn union_of_steps(&self, j: u32) -> Subset {
        (1..=self.n_steps())
            .filter(|i| j >> (i - 1) & 1 == 1)
            .fold(EMPTY, |acc, i| acc.union(self.step(i)))
    }

    /// The path conditions with a witness: κ(L,R) = 3 and every prefix
    /// L ∪ Q₁ ∪ … ∪ Q_i has λ = 3.
    pub(crate) fn check_path(&self) -> std::result::Result<(), String> {
        let m = self.matroid();
        let k = kappa(m, self.left(), self.right()).expect("ends of a partition are disjoint");
        if k != 3 {
            return Err(format!("kappa(L,R) = {k}, want 3"));
        }
        let mut prefix = self.left();
        let mut j = 0u32;
        for i in 0..=self.n_steps() {
            if i > 0 {
                prefix = prefix.union(self.step(i));
                j |= 1 << (i - 1);
            }
            let l = lambda(m, prefix);
            if l != 3 {
                return Err(format!("lambda({}) = {l}, want 3", self.prefix_name(j)));
            }
        }
        Ok(())
    }

    pub(crate) fn check_flexi(&self, mode: FlexiMode) -> std::result::Result<(), String> {
        let m = self.matroid();
        let n = self.n_steps();
        match mode {
            FlexiMode::Subset => {
                for j in 0..1u32 << n {
                    let l = lambda(m, self.left().union(self.union_of_steps(j)));
                    if l != 3 {
                        return Err(format!(
                            "lambda({}) = {l}, want 3",
                            self.prefix_name(j)
                        ));
                    }
                }
                Ok(())
            }
            FlexiMode::Permutation => {
                let mut items: Vec<usize> = (1..=n).collect();
                permutations(&mut items, 0, &mut |perm| {
                    let mut prefix = self.left();
                    for (k, &i) in perm.iter().enumerate() {
                        prefix = prefix.union(self.step(i));
                        let l = lambda(m, prefix);
                        if l != 3 {
                            let order: Vec<&str> =
                                perm.iter().map(|&i| self.step_name(i)).collect();
                            return Err(format!(
                                "permutation ({}): prefix of length {} has lambda {l}, want 3",
                                order.join(","),
                                k + 1
                            ));
                        }
                    }
                    Ok(())
                })
            }
        }
    }

    /// Checks κ(L,R) = 3 and all prefix λ values; marks `verified = path`
    /// on success.
    pub fn is_four_path(&mut self) -> bool {
        match self.check_path() {
            Ok(()) => {
                if self.verified < Verified::Path {
                    self.verified = Verified::Path;
                }
                true
            }
            Err(_) => false,
        }
    }

    /// Checks the flexipath condition on top of the path condition. Subset
    /// mode checks λ(L ∪ Q_J) = 3 for every J; permutation mode walks every
    /// permutation's prefixes literally and exists as the oracle. The two
    /// agree because prefix unions over all permutations are exactly the
    /// subsets.
    pub fn is_four_flexipath(&mut self, mode: FlexiMode) -> bool {
        if !self.is_four_path() {
            return false;
        }
        match self.check_flexi(mode) {
            Ok(()) => {
                self.verified = Verified::Flexipath;
                true
            }
            Err(_) => false,
        }
    }

    /// λ of each internal step when they all agree.
    pub fn common_step_lambda(&self) -> Option<u8> {
        let n = self.n_steps();
        if n == 0 {
            return None;
        }
        let c = lambda(self.matroid(), self.step(1));
        (2..=n)
            .all(|i| lambda(self.matroid(), self.step(i)) == c)
            .then_some(c)
    }
}

fn permutations<E>(
    items: &mut Vec<usize>,
    k: usize,
    f: &mut impl FnMut(&[usize]) -> std::result::Result<(), E>,
) -> std::result::Result<(), E> {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        let r = permutations(items, k + 1, f);
        items.swap(k, i);
        r?;
    }
    Ok(())
}

fn require_flexipath(fp: &FourPath, op: &str) -> Result<()> {
    if fp.verified != Verified::Flexipath {
        return Err(Error::NotVerified(format!(
            "{op} needs a verified flexipath; run is_four_flexipath first"
        )));
    }
    Ok(())
}

/// A strict (4,c)-flexipath: verified, every step λ equal, and no pair of
/// steps mergeable (λ(Q_i ∪ Q_j) > c). The structural lemmas asserted
/// downstream hold only under these hypotheses, so they are enforced as
/// preconditions rather than left to assertions.
fn require_reduced(fp: &FourPath, op: &str) -> Result<u8> {
    require_flexipath(fp, op)?;
    let c = fp.common_step_lambda().ok_or_else(|| {
        Error::BadParameters(format!(
            "{op} needs a common step lambda; run reduce_to_4c first"
        ))
    })?;
    let m = fp.matroid();
    for i in 1..=fp.n_steps() {
        for j in i + 1..=fp.n_steps() {
            if lambda(m, fp.step(i).union(fp.step(j))) == c {
                return Err(Error::BadParameters(format!(
                    "steps {} and {} are mergeable; run reduce_to_4c first",
                    fp.step_name(i),
                    fp.step_name(j)
                )));
            }
        }
    }
    Ok(c)
}

/// Removes step i by unioning it into the chosen end. Any subset-union of
/// the result's steps with L is one of the original path's, so the result
/// is again a flexipath; that is asserted, not re-trusted.
pub fn absorb_step(fp: &FourPath, i: usize, into: Side) -> Result<FourPath> {
    require_flexipath(fp, "absorb_step")?;
    let n = fp.n_steps();
    if i == 0 || i > n {
        return Err(Error::BadParameters(format!(
            "step index {i} out of range 1..={n}"
        )));
    }
    let mut parts: Vec<(String, Subset)> = fp.pm.parts().to_vec();
    let (_, q) = parts.remove(i);
    match into {
        Side::Left => parts[0].1 = parts[0].1.union(q),
        Side::Right => parts.last_mut().unwrap().1 = parts.last_mut().unwrap().1.union(q),
    }
    let pm = PartitionedMatroid::new(fp.matroid().clone(), parts)?;
    let out = FourPath { pm, verified: Verified::Flexipath };
    out.check_path().expect("absorbing a step of a flexipath keeps the path");
    out.check_flexi(FlexiMode::Subset)
        .expect("absorbing a step of a flexipath keeps the flexipath");
    Ok(out)
}

/// Replaces steps i and j by their union, allowed when that union has the
/// same λ as both steps. The result is re-verified by assertion.
pub fn merge_steps(fp: &FourPath, i: usize, j: usize) -> Result<FourPath> {
    require_flexipath(fp, "merge_steps")?;
    let n = fp.n_steps();
    if i == 0 || i > n || j == 0 || j > n || i == j {
        return Err(Error::BadParameters(format!(
            "step indices {i}, {j} must be distinct and within 1..={n}"
        )));
    }
    let (i, j) = (i.min(j), i.max(j));
    let m = fp.matroid();
    let union = fp.step(i).union(fp.step(j));
    if lambda(m, union) != lambda(m, fp.step(i)) || lambda(m, fp.step(i)) != lambda(m, fp.step(j))
    {
        return Err(Error::NotMergeable(format!(
            "lambda({}+{}) = {} with lambda({}) = {}, lambda({}) = {}",
            fp.step_name(i),
            fp.step_name(j),
            lambda(m, union),
            fp.step_name(i),
            lambda(m, fp.step(i)),
            fp.step_name(j),
            lambda(m, fp.step(j)),
        )));
    }
    let mut parts: Vec<(String, Subset)> = fp.pm.parts().to_vec();
    let (name_j, _) = parts.remove(j);
    parts[i].0 = format!("{}+{}", parts[i].0, name_j);
    parts[i].1 = union;
    let pm = PartitionedMatroid::new(m.clone(), parts)?;
    let out = FourPath { pm, verified: Verified::Flexipath };
    out.check_path().expect("merging equal-lambda steps keeps the path");
    out.check_flexi(FlexiMode::Subset)
        .expect("merging equal-lambda steps keeps the flexipath");
    Ok(out)
}

/// Normalizes to a (4,c)-flexipath: first every step whose λ exceeds the
/// minimum step-λ is absorbed into the right end, then equal-λ pairs whose
/// union keeps that λ are merged until none remain. Deterministic policy,
/// lowest index first. Returns the result and c (0 when no steps remain).
pub fn reduce_to_4c(fp: &FourPath) -> Result<(FourPath, u8)> {
    require_flexipath(fp, "reduce_to_4c")?;
    let mut cur = fp.clone();
    if cur.n_steps() == 0 {
        return Ok((cur, 0));
    }
    let c = (1..=cur.n_steps())
        .map(|i| lambda(cur.matroid(), cur.step(i)))
        .min()
        .unwrap();
    loop {
        let over = (1..=cur.n_steps())
            .find(|&i| lambda(cur.matroid(), cur.step(i)) != c);
        match over {
            Some(i) => cur = absorb_step(&cur, i, Side::Right)?,
            None => break,
        }
    }
    'merging: loop {
        for i in 1..=cur.n_steps() {
            for j in i + 1..=cur.n_steps() {
                if lambda(cur.matroid(), cur.step(i).union(cur.step(j))) == c {
                    cur = merge_steps(&cur, i, j)?;
                    continue 'merging;
                }
            }
        }
        break;
    }
    for i in 1..=cur.n_steps() {
        assert_eq!(lambda(cur.matroid(), cur.step(i)), c);
        for j in i + 1..=cur.n_steps() {
            assert!(lambda(cur.matroid(), cur.step(i).union(cur.step(j))) > c);
        }
    }
    Ok((cur, c))
}

/// Steps i with ⊓(L,R) = ⊓(L,Q_i) = ⊓(R,Q_i) = 2 are specially placed of
/// type S1; the same in the dual is S2. At most one step can be specially
/// placed, which is asserted.
pub fn find_specially_placed(fp: &FourPath) -> Result<Vec<(usize, Special)>> {
    let c = require_reduced(fp, "find_specially_placed")?;
    if c != 2 {
        return Err(Error::BadParameters(format!(
            "specially placed steps live in (4,2)-flexipaths; c = {c}"
        )));
    }
    let m = fp.matroid();
    let mut out = Vec::new();
    for i in 1..=fp.n_steps() {
        for (dual, kind) in [(false, Special::S1), (true, Special::S2)] {
            let ends = local_conn(m, fp.left(), fp.right(), dual)?;
            let lq = local_conn(m, fp.left(), fp.step(i), dual)?;
            let rq = local_conn(m, fp.right(), fp.step(i), dual)?;
            if ends == 2 && lq == 2 && rq == 2 {
                out.push((i, kind));
            }
        }
    }
    assert!(
        out.len() <= 1,
        "more than one specially placed step: {out:?}"
    );
    Ok(out)
}

/// Every pairwise ⊓ and ⊓* among the ends and steps of a (4,c)-flexipath.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityProfile {
    /// (⊓(L,R), ⊓*(L,R))
    pub end_pair: (u8, u8),
    /// Per step i: (⊓(L,Q_i), ⊓*(L,Q_i), ⊓(R,Q_i), ⊓*(R,Q_i)).
    pub end_step: Vec<(u8, u8, u8, u8)>,
    /// Per pair i < j: (i, j, ⊓(Q_i,Q_j), ⊓*(Q_i,Q_j)).
    pub step_pairs: Vec<(usize, usize, u8, u8)>,
    /// Common step λ; None for a step-free path.
    pub c: Option<u8>,
}

impl std::fmt::Display for ConnectivityProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ends {:?}", self.end_pair)?;
        for (i, q) in self.end_step.iter().enumerate() {
            write!(f, "; Q{} vs ends {:?}", i + 1, q)?;
        }
        for (i, j, a, b) in &self.step_pairs {
            write!(f, "; Q{i}Q{j} ({a},{b})")?;
        }
        match self.c {
            Some(c) => write!(f, "; c = {c}"),
            None => write!(f, "; no steps"),
        }
    }
}

/// Computes the profile of a verified (4,c)-flexipath and asserts the
/// structural lemmas along the way: ⊓(L,Q_i) + ⊓*(L,Q_i) = c on both ends,
/// ⊓(L,Q_i) = ⊓(R,Q_i), ⊓(Q_i,Q_j) + ⊓*(Q_i,Q_j) ≤ c − 1, and for n ≥ 2
/// also ⊓(L,R) + ⊓*(L,R) ≤ 5 − c.
pub fn profile(fp: &FourPath) -> Result<ConnectivityProfile> {
    require_flexipath(fp, "profile")?;
    let n = fp.n_steps();
    let c = if n == 0 { None } else { Some(require_reduced(fp, "profile")?) };
    let m = fp.matroid();
    let conn = |x, y, dual| local_conn(m, x, y, dual).expect("parts are disjoint");
    let end_pair = (
        conn(fp.left(), fp.right(), false),
        conn(fp.left(), fp.right(), true),
    );
    let mut end_step = Vec::with_capacity(n);
    for i in 1..=n {
        let q = fp.step(i);
        let tuple = (
            conn(fp.left(), q, false),
            conn(fp.left(), q, true),
            conn(fp.right(), q, false),
            conn(fp.right(), q, true),
        );
        let c = c.unwrap();
        assert_eq!(tuple.0 + tuple.1, c, "step {i}: left sums must give c");
        assert_eq!(tuple.2 + tuple.3, c, "step {i}: right sums must give c");
        assert_eq!(tuple.0, tuple.2, "step {i}: ends see the same connectivity");
        end_step.push(tuple);
    }
    let mut step_pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let a = conn(fp.step(i), fp.step(j), false);
            let b = conn(fp.step(i), fp.step(j), true);
            assert!(
                a + b < c.unwrap(),
                "steps {i},{j}: pair connectivity exceeds c − 1"
            );
            step_pairs.push((i, j, a, b));
        }
    }
    if n >= 2 {
        assert!(
            end_pair.0 + end_pair.1 <= 5 - c.unwrap(),
            "end connectivity exceeds 5 − c"
        );
    }
    Ok(ConnectivityProfile { end_pair, end_step, step_pairs, c })
}

/// Step monotonicity, λ(Q_i ∪ Q_j) ≥ λ(Q_i) for distinct steps, reported as
/// a law over the path's matroid.
pub fn check_mono(fp: &FourPath) -> Result<LawReport> {
    require_flexipath(fp, "check_mono")?;
    let m = fp.matroid();
    let mut report = LawReport::new(m, "mono-free");
    for i in 1..=fp.n_steps() {
        for j in 1..=fp.n_steps() {
            if i == j {
                continue;
            }
            report.count += 1;
            let li = lambda(m, fp.step(i));
            let lij = lambda(m, fp.step(i).union(fp.step(j)));
            if lij < li {
                report.pass = false;
                report.witness.get_or_insert(format!(
                    "lambda({}+{}) = {lij} < lambda({}) = {li}",
                    fp.step_name(i),
                    fp.step_name(j),
                    fp.step_name(i)
                ));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassTag {
    Squashed,
    Stretched,
    SpikeReminiscent,
    PaddleReminiscent,
    RelaxedSpikeReminiscent,
    RelaxedPaddleReminiscent,
    PrismLike,
    TightenedPrismLike,
    DoublyTightenedPrismLike,
    VamosInspired,
    MixedNasty,
    PlaneNasty,
    DualPlaneNasty,
    TwoStepResidual,
    C1TypeI,
    C1TypeII,
    C3TypeI,
    C3TypeII,
    C3TypeIII,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A classification outcome: the tag, the specially placed step that was
/// absorbed on the way (if any), and whether the profile matched in the
/// dual rather than in the matroid itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlexiClass {
    pub tag: ClassTag,
    pub absorbed_special: Option<(String, Special)>,
    pub dualized: bool,
}

impl std::fmt::Display for FlexiClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag)?;
        if let Some((name, kind)) = &self.absorbed_special {
            write!(f, " [absorbed {name} as {kind}]")?;
        }
        if self.dualized {
            write!(f, " [dual]")?;
        }
        Ok(())
    }
}

/// The profile as seen either straight or through the dual, which swaps
/// every ⊓ with its ⊓*.
struct View<'a> {
    prof: &'a ConnectivityProfile,
    dual: bool,
}

impl View<'_> {
    fn end(&self) -> (u8, u8) {
        let (a, b) = self.prof.end_pair;
        if self.dual { (b, a) } else { (a, b) }
    }

    fn step(&self, k: usize) -> (u8, u8, u8, u8) {
        let (a, b, c, d) = self.prof.end_step[k];
        if self.dual { (b, a, d, c) } else { (a, b, c, d) }
    }

    fn pair(&self, k: usize) -> (u8, u8) {
        let (_, _, a, b) = self.prof.step_pairs[k];
        if self.dual { (b, a) } else { (a, b) }
    }

    fn n(&self) -> usize {
        self.prof.end_step.len()
    }

    fn all_steps(&self, want: (u8, u8, u8, u8)) -> bool {
        (0..self.n()).all(|k| self.step(k) == want)
    }

    fn all_pairs(&self, want: (u8, u8)) -> bool {
        (0..self.prof.step_pairs.len()).all(|k| self.pair(k) == want)
    }

    fn pair_multiset(&self) -> Vec<(u8, u8)> {
        let mut v: Vec<(u8, u8)> =
            (0..self.prof.step_pairs.len()).map(|k| self.pair(k)).collect();
        v.sort_unstable();
        v
    }
}

fn match_c2(prof: &ConnectivityProfile) -> Option<(ClassTag, bool)> {
    use ClassTag::*;
    for dual in [false, true] {
        let v = View { prof, dual };
        let n = v.n();
        let found = if v.end() == (3, 0) && v.all_steps((2, 0, 2, 0)) && v.all_pairs((1, 0)) {
            Some(Squashed)
        } else if v.end() == (0, 3) && v.all_steps((0, 2, 0, 2)) && v.all_pairs((0, 1)) {
            Some(Stretched)
        } else if v.end() == (1, 2) && v.all_steps((1, 1, 1, 1)) && v.all_pairs((1, 0)) {
            Some(SpikeReminiscent)
        } else if v.end() == (2, 1) && v.all_steps((1, 1, 1, 1)) && v.all_pairs((0, 1)) {
            Some(PaddleReminiscent)
        } else if n == 3 && v.all_steps((1, 1, 1, 1)) {
            if v.end() == (0, 2) && v.all_pairs((1, 0)) {
                Some(RelaxedSpikeReminiscent)
            } else if v.end() == (2, 0) && v.all_pairs((0, 1)) {
                Some(RelaxedPaddleReminiscent)
            } else if v.end() == (0, 0) && v.all_pairs((0, 0)) {
                Some(PrismLike)
            } else if v.end() == (0, 1) && v.all_pairs((0, 0)) {
                Some(TightenedPrismLike)
            } else if v.end() == (1, 1) && v.all_pairs((0, 0)) {
                Some(DoublyTightenedPrismLike)
            } else if v.end() == (0, 1) && v.pair_multiset() == [(0, 0), (0, 0), (1, 0)] {
                Some(VamosInspired)
            } else if v.end() == (1, 1) && v.pair_multiset() == [(0, 0), (0, 1), (1, 0)] {
                Some(MixedNasty)
            } else if v.end() == (1, 1) && v.pair_multiset() == [(0, 0), (0, 0), (1, 0)] {
                Some(PlaneNasty)
            } else if v.end() == (1, 1) && v.pair_multiset() == [(0, 0), (0, 0), (0, 1)] {
                Some(DualPlaneNasty)
            } else {
                None
            }
        } else if n == 2 && v.end() == (1, 1) && v.all_pairs((0, 0)) {
            Some(TwoStepResidual)
        } else {
            None
        };
        if let Some(tag) = found {
            return Some((tag, dual));
        }
    }
    None
}

fn match_c1(prof: &ConnectivityProfile) -> Option<(ClassTag, bool)> {
    for dual in [false, true] {
        let v = View { prof, dual };
        if v.end().0 == 3 && v.all_steps((1, 0, 1, 0)) {
            return Some((ClassTag::C1TypeI, dual));
        }
        if v.end().0 == 2 && v.n() >= 2 {
            let flipped = (0..v.n()).filter(|&k| v.step(k) == (0, 1, 0, 1)).count();
            let straight = (0..v.n()).filter(|&k| v.step(k) == (1, 0, 1, 0)).count();
            if flipped == 1 && straight == v.n() - 1 {
                return Some((ClassTag::C1TypeII, dual));
            }
        }
    }
    None
}

fn match_c3(prof: &ConnectivityProfile) -> Option<(ClassTag, bool)> {
    for dual in [false, true] {
        let v = View { prof, dual };
        let row = (v.end(), v.pair(0));
        let tag = match row {
            ((2, 0), (1, 1)) => Some(ClassTag::C3TypeI),
            ((1, 0), (1, 0)) => Some(ClassTag::C3TypeII),
            ((1, 1), (2, 0)) => Some(ClassTag::C3TypeIII),
            _ => None,
        };
        if let Some(tag) = tag {
            return Some((tag, dual));
        }
    }
    None
}

/// Classifies a strict (4,c)-flexipath with c ∈ {1,2,3}: steps must share a
/// common λ and no pair may be mergeable (run `reduce_to_4c` first when in
/// doubt). For c = 2 a specially placed step is absorbed into the right end
/// first (recorded in the result) whenever there are at least three steps;
/// profiles are then matched against the class definitions, primal before
/// dual.
pub fn classify(fp: &FourPath) -> Result<FlexiClass> {
    require_flexipath(fp, "classify")?;
    let n = fp.n_steps();
    if n == 0 {
        return Err(Error::BadParameters("no steps to classify".into()));
    }
    let c = require_reduced(fp, "classify")?;
    match c {
        1 => {
            let prof = profile(fp)?;
            match match_c1(&prof) {
                Some((tag, dualized)) => Ok(FlexiClass { tag, absorbed_special: None, dualized }),
                None => Err(Error::OutsideTaxonomy(Box::new(prof))),
            }
        }
        2 => {
            if n < 2 {
                return Err(Error::BadParameters(format!(
                    "classification of (4,2)-flexipaths needs at least 2 steps, got {n}"
                )));
            }
            let specials = find_specially_placed(fp)?;
            let (work, absorbed) = match specials.first() {
                Some(&(i, kind)) if n >= 3 => {
                    let name = fp.step_name(i).to_string();
                    (absorb_step(fp, i, Side::Right)?, Some((name, kind)))
                }
                _ => (fp.clone(), None),
            };
            let prof = profile(&work)?;
            match match_c2(&prof) {
                Some((tag, dualized)) => {
                    Ok(FlexiClass { tag, absorbed_special: absorbed, dualized })
                }
                None => Err(Error::OutsideTaxonomy(Box::new(prof))),
            }
        }
        3 => {
            if n != 2 {
                return Err(Error::BadParameters(format!(
                    "a (4,3)-flexipath has exactly 2 steps, got {n}"
                )));
            }
            let prof = profile(fp)?;
            match match_c3(&prof) {
                Some((tag, dualized)) => Ok(FlexiClass { tag, absorbed_special: None, dualized }),
                None => Err(Error::OutsideTaxonomy(Box::new(prof))),
            }
        }
        other => Err(Error::BadParameters(format!(
            "no classification for c = {other}"
        ))),
    }
}
