//! Single-element extensions through modular cuts, the guts construction,
//! circuit-hyperplane relaxation and its inverse, and natural matroids of
//! integer polymatroids.

use crate::connectivity::{closure, is_clonal_set, lambda};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, PartitionedMatroid, MAX_ELEMENTS};
use crate::subset::{Subset, EMPTY};

/// Every flat of `m`, ascending by bitmask.
pub fn flats(m: &Matroid) -> Vec<Subset> {
    (0..1u32 << m.n())
        .map(Subset)
        .filter(|&x| closure(m, x, false) == x)
        .collect()
}

/// A modular cut of a fixed host matroid: a family of flats that is closed
/// upward and under intersections of modular pairs. The host is pinned by
/// fingerprint so a cut cannot silently migrate to another matroid.
#[derive(Debug, Clone)]
pub struct ModularCut {
    host: u64,
    flats: Vec<Subset>,
}

impl ModularCut {
    pub fn new(m: &Matroid, members: Vec<Subset>) -> Result<ModularCut> {
        let mut flats: Vec<Subset> = members.into_iter().map(|f| f.inter(m.full())).collect();
        flats.sort();
        flats.dedup();
        for &f in &flats {
            if closure(m, f, false) != f {
                return Err(Error::BadParameters(format!(
                    "{} is not a flat",
                    m.set_string(f)
                )));
            }
        }
        let contains = |x: Subset| flats.binary_search(&x).is_ok();
        for &f in &flats {
            for e in m.full().minus(f).iter() {
                let up = closure(m, f.with(e), false);
                if !contains(up) {
                    return Err(Error::BadParameters(format!(
                        "not upward closed: {} is in the cut but {} is not",
                        m.set_string(f),
                        m.set_string(up)
                    )));
                }
            }
        }
        for (i, &f) in flats.iter().enumerate() {
            for &g in &flats[i + 1..] {
                let modular =
                    m.r(f) + m.r(g) == m.r(f.union(g)) + m.r(f.inter(g));
                if modular && !contains(f.inter(g)) {
                    return Err(Error::BadParameters(format!(
                        "modular pair {} and {} meets outside the cut",
                        m.set_string(f),
                        m.set_string(g)
                    )));
                }
            }
        }
        Ok(ModularCut { host: m.fingerprint(), flats })
    }

    pub fn host(&self) -> u64 {
        self.host
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn contains(&self, f: Subset) -> bool {
        self.flats.binary_search(&f).is_ok()
    }
}

/// The modular cut of the guts of the separation (Z, E−Z): all flats F with
/// r(Z∪F) + r((E−Z)∪F) − r(M) − r(F) = 0. That family is always a modular
/// cut, which the constructor re-checks.
pub fn guts_modular_cut(m: &Matroid, z: Subset) -> ModularCut {
    let z = z.inter(m.full());
    let co = m.full().minus(z);
    let members: Vec<Subset> = flats(m)
        .into_iter()
        .filter(|&f| m.r(z.union(f)) + m.r(co.union(f)) == m.rank() + m.r(f))
        .collect();
    ModularCut::new(m, members).expect("the guts family is a modular cut")
}

/// Adds one element through a modular cut: r'(X∪e) = r(X) exactly when
/// cl(X) lies in the cut. The result is rebuilt through full validation, so
/// a family that is not actually a modular cut surfaces as AxiomViolation.
pub fn extend_by_modular_cut(m: &Matroid, cut: &ModularCut, label: &str) -> Result<Matroid> {
    if cut.host() != m.fingerprint() {
        return Err(Error::BadParameters(
            "modular cut belongs to a different host matroid".into(),
        ));
    }
    let n = m.n();
    if n + 1 > MAX_ELEMENTS {
        return Err(Error::GroundSetFull(format!(
            "cannot extend past {MAX_ELEMENTS} elements"
        )));
    }
    if m.labels().iter().any(|l| l == label) {
        return Err(Error::LabelClash(format!("label `{label}` is already in use")));
    }
    let mut labels = m.labels().to_vec();
    labels.push(label.to_string());
    let mut table = vec![0u8; 1 << (n + 1)];
    for x in 0..1u32 << n {
        let s = Subset(x);
        let r = m.r(s);
        table[x as usize] = r;
        table[(x | 1 << n) as usize] = if cut.contains(closure(m, s, false)) {
            r
        } else {
            r + 1
        };
    }
    Matroid::from_rank_table(n + 1, labels, table)
}

/// Principal extension: a new element placed freely on the flat spanned by
/// X, via the cut of all flats containing cl(X).
pub fn principal_extension(m: &Matroid, x: Subset, label: &str) -> Result<Matroid> {
    let span = closure(m, x, false);
    let members: Vec<Subset> = flats(m)
        .into_iter()
        .filter(|f| span.is_subset_of(*f))
        .collect();
    let cut = ModularCut::new(m, members).expect("a principal filter of flats is a modular cut");
    extend_by_modular_cut(m, &cut, label)
}

/// Adds `k` elements one at a time into the guts of (Z, E−Z), recomputing
/// the guts cut after each step. Returns the extension and the set G of new
/// elements.
///
/// Along the way the guts cuts are checked to grow monotonically, and when
/// k equals λ(Z) the characteristic shape of the result is asserted: G is a
/// clonal set of rank λ(Z) inside the guts flat cl(Z) ∩ cl(E−Z), and that
/// flat itself has rank λ(Z).
pub fn free_add_into_guts(
    m: &Matroid,
    z: Subset,
    k: usize,
    labels: &[String],
) -> Result<(Matroid, Subset)> {
    if labels.len() != k {
        return Err(Error::BadParameters(format!(
            "{} labels for {k} additions",
            labels.len()
        )));
    }
    let z = z.inter(m.full());
    let orig_full = m.full();
    let t = lambda(m, z);
    let mut cur = m.clone();
    let mut added = EMPTY;
    for label in labels {
        let cut = guts_modular_cut(&cur, z);
        let next = extend_by_modular_cut(&cur, &cut, label)?;
        let next_cut = guts_modular_cut(&next, z);
        for &f in cut.flats() {
            assert!(
                next_cut.contains(closure(&next, f, false)),
                "guts cut failed to grow monotonically at {}",
                next.set_string(f)
            );
        }
        added = added.with(cur.n());
        cur = next;
    }
    if k as u8 == t && k > 0 {
        let guts_flat = closure(&cur, z, false).inter(closure(&cur, orig_full.minus(z), false));
        assert_eq!(cur.r(added), t, "G should have rank lambda(Z)");
        assert!(is_clonal_set(&cur, added), "G should be clonal");
        assert!(added.is_subset_of(guts_flat), "G should lie in the guts flat");
        assert_eq!(cur.r(guts_flat), t, "the guts flat should have rank lambda(Z)");
    }
    Ok((cur, added))
}

/// Relaxes a circuit-hyperplane: B joins the basis family and the matroid
/// is rebuilt from bases and revalidated. No rank entry is patched in place.
pub fn relax(m: &Matroid, b: Subset) -> Result<Matroid> {
    let b = b.inter(m.full());
    let size = b.card() as u8;
    if m.r(b) + 1 != size || m.r(b) + 1 != m.rank() {
        return Err(Error::NotCircuitHyperplane(format!(
            "{} has rank {} with |B| = {size} and r(M) = {}; want r(B) = |B| − 1 = r(M) − 1",
            m.set_string(b),
            m.r(b),
            m.rank()
        )));
    }
    if closure(m, b, false) != b {
        return Err(Error::NotCircuitHyperplane(format!(
            "{} is not closed",
            m.set_string(b)
        )));
    }
    for e in b.iter() {
        if m.r(b.without(e)) != size - 1 {
            return Err(Error::NotCircuitHyperplane(format!(
                "{} minus {} is dependent, so B is not a circuit",
                m.set_string(b),
                m.labels()[e]
            )));
        }
    }
    let mut bases = m.bases();
    bases.push(b);
    Matroid::from_bases(m.n(), m.labels().to_vec(), &bases)
}

/// The inverse of relaxation: removes a free basis from the basis family and
/// rebuilds. B is free when it is not the unique basis and every single
/// exchange B − f + e is again a basis.
pub fn tighten(m: &Matroid, b: Subset) -> Result<Matroid> {
    let b = b.inter(m.full());
    if m.rank() == 0 || usize::from(m.rank()) == m.n() {
        return Err(Error::NotFreeBasis(format!(
            "a rank-{} matroid on {} elements has no free basis",
            m.rank(),
            m.n()
        )));
    }
    if !m.is_basis(b) {
        return Err(Error::NotFreeBasis(format!("{} is not a basis", m.set_string(b))));
    }
    let mut bases = m.bases();
    if bases.len() == 1 {
        return Err(Error::NotFreeBasis("B is the unique basis".into()));
    }
    for e in m.full().minus(b).iter() {
        for f in b.iter() {
            let swapped = b.without(f).with(e);
            if !m.is_basis(swapped) {
                return Err(Error::NotFreeBasis(format!(
                    "exchange {} − {} + {} is not a basis",
                    m.set_string(b),
                    m.labels()[f],
                    m.labels()[e]
                )));
            }
        }
    }
    bases.retain(|&x| x != b);
    Matroid::from_bases(m.n(), m.labels().to_vec(), &bases)
}

/// An integer polymatroid on at most six named parts, given as a full value
/// table over subsets of parts.
#[derive(Debug, Clone)]
pub struct Polymatroid {
    names: Vec<String>,
    f: Vec<u8>,
}

pub const MAX_PARTS: usize = 6;

impl Polymatroid {
    pub fn new(names: Vec<String>, f: Vec<u8>) -> Result<Polymatroid> {
        if names.len() > MAX_PARTS {
            return Err(Error::BadParameters(format!(
                "{} parts exceeds the cap of {MAX_PARTS}",
                names.len()
            )));
        }
        if f.len() != 1 << names.len() {
            return Err(Error::BadParameters(format!(
                "value table has {} entries, expected {}",
                f.len(),
                1usize << names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',' || c == ':') {
                return Err(Error::BadParameters(format!("bad part name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::LabelClash(format!("duplicate part name `{name}`")));
            }
        }
        polymatroid_axioms(names.len(), &f)?;
        Ok(Polymatroid { names, f })
    }

    pub fn n_parts(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn f(&self, a: Subset) -> u8 {
        self.f[(a.0 & ((1 << self.names.len()) - 1)) as usize]
    }

    /// The natural matroid with `counts[i]` elements in part i:
    /// r(S) = min over part sets A of f(A) + Σ_{i∉A} |S ∩ part_i|.
    /// Elements of part `p` are labelled `p.p1`, `p.p2`, ...
    pub fn natural_matroid(&self, counts: &[usize]) -> Result<PartitionedMatroid> {
        natural_matroid_of_table(&self.names, &self.f, counts)
    }
}

fn polymatroid_axioms(p: usize, f: &[u8]) -> Result<()> {
    if f[0] != 0 {
        return Err(Error::BadParameters(format!("f(empty) = {} rather than 0", f[0])));
    }
    for a in 0..1u32 << p {
        for e in 0..p {
            if a >> e & 1 == 0 && f[(a | 1 << e) as usize] < f[a as usize] {
                return Err(Error::BadParameters(format!(
                    "f is not monotone at part set {a:#b} plus part {e}"
                )));
            }
        }
        for b in 0..1u32 << p {
            if f[a as usize] + f[b as usize] < f[(a | b) as usize] + f[(a & b) as usize] {
                return Err(Error::BadParameters(format!(
                    "f is not submodular at part sets {a:#b} and {b:#b}"
                )));
            }
        }
    }
    Ok(())
}

/// Shared construction for `Polymatroid::natural_matroid` and for internal
/// callers whose tables exceed the public part cap; the polymatroid axioms
/// are asserted here either way.
pub(crate) fn natural_matroid_of_table(
    names: &[String],
    f: &[u8],
    counts: &[usize],
) -> Result<PartitionedMatroid> {
    let p = names.len();
    assert_eq!(f.len(), 1 << p);
    polymatroid_axioms(p, f).expect("natural matroid needs a polymatroid table");
    if counts.len() != p {
        return Err(Error::BadParameters(format!(
            "{} counts for {p} parts",
            counts.len()
        )));
    }
    for (i, &c) in counts.iter().enumerate() {
        let fv = f[1 << i];
        if c > fv as usize {
            return Err(Error::BadCounts(format!(
                "part `{}` asks for {c} elements but f gives it rank {fv}",
                names[i]
            )));
        }
    }
    let n: usize = counts.iter().sum();
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetFull(format!(
            "{n} elements exceeds the cap of {MAX_ELEMENTS}"
        )));
    }

    let mut labels = Vec::with_capacity(n);
    let mut part_masks = vec![EMPTY; p];
    for (i, &c) in counts.iter().enumerate() {
        for k in 1..=c {
            part_masks[i] = part_masks[i].with(labels.len());
            labels.push(format!("{}.p{k}", names[i]));
        }
    }

    let mut table = vec![0u8; 1 << n];
    let mut cnt = vec![0u8; p];
    for (x, entry) in table.iter_mut().enumerate() {
        let s = Subset(x as u32);
        for (i, &mask) in part_masks.iter().enumerate() {
            cnt[i] = s.inter(mask).card() as u8;
        }
        let total: u8 = cnt[..p].iter().sum();
        let mut best = total; // A = ∅
        for a in 1..1u32 << p {
            let mut inside = 0u8;
            for (i, &c) in cnt[..p].iter().enumerate() {
                if a >> i & 1 == 1 {
                    inside += c;
                }
            }
            best = best.min(f[a as usize] + total - inside);
        }
        *entry = best;
    }
    let m = Matroid::from_rank_table(n, labels, table)
        .expect("the natural matroid of a polymatroid is a matroid");
    PartitionedMatroid::new(
        m,
        names
            .iter()
            .zip(part_masks)
            .map(|(name, mask)| (name.clone(), mask))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_extension_places_points_on_flats() {
        let u = Matroid::uniform(2, 4).unwrap();
        let ext = principal_extension(&u, Subset::singleton(0), "p").unwrap();
        assert_eq!(ext.n(), 5);
        assert_eq!(ext.rank(), 2);
        // p is parallel to element 0 and independent from the others.
        let p = ext.label_index("p").unwrap();
        assert_eq!(ext.r(Subset::from_indices([0, p])), 1);
        assert_eq!(ext.r(Subset::from_indices([1, p])), 2);

        let u = Matroid::uniform(3, 5).unwrap();
        let line = Subset::from_indices([0, 1]);
        let ext = principal_extension(&u, line, "q").unwrap();
        let q = ext.label_index("q").unwrap();
        assert_eq!(ext.r(line.with(q)), 2);
        assert_eq!(ext.r(Subset::from_indices([2, q])), 2);
        assert_eq!(ext.rank(), 3);
    }

    #[test]
    fn free_extension_through_the_empty_cut() {
        let u = Matroid::uniform(2, 4).unwrap();
        let cut = ModularCut::new(&u, vec![]).unwrap();
        let ext = extend_by_modular_cut(&u, &cut, "e").unwrap();
        assert_eq!(ext.rank(), 3); // e is independent of everything
        assert_eq!(ext.r(Subset::from_indices([0, 1, 4])), 3);
    }

    #[test]
    fn modular_cut_validation() {
        let u = Matroid::uniform(2, 4).unwrap();
        // Not a flat: {0,1} spans E in rank 2.
        assert!(matches!(
            ModularCut::new(&u, vec![Subset::from_indices([0, 1])]),
            Err(Error::BadParameters(_))
        ));
        // Not upward closed: {0} without E.
        assert!(matches!(
            ModularCut::new(&u, vec![Subset::singleton(0)]),
            Err(Error::BadParameters(_))
        ));
        // Two singletons form a modular pair meeting at the missing ∅.
        assert!(matches!(
            ModularCut::new(
                &u,
                vec![Subset::singleton(0), Subset::singleton(1), u.full()]
            ),
            Err(Error::BadParameters(_))
        ));
        // The principal cut at a singleton is fine.
        assert!(ModularCut::new(&u, vec![Subset::singleton(0), u.full()]).is_ok());
    }

    #[test]
    fn extension_guards() {
        let u = Matroid::uniform(2, 4).unwrap();
        let cut = ModularCut::new(&u, vec![u.full()]).unwrap();
        assert!(matches!(
            extend_by_modular_cut(&u, &cut, "0"),
            Err(Error::LabelClash(_))
        ));
        let other = Matroid::uniform(3, 6).unwrap();
        assert!(matches!(
            extend_by_modular_cut(&other, &cut, "p"),
            Err(Error::BadParameters(_))
        ));
        let big = Matroid::uniform(3, 20).unwrap();
        let bigcut = ModularCut::new(&big, vec![big.full()]).unwrap();
        assert!(matches!(
            extend_by_modular_cut(&big, &bigcut, "p"),
            Err(Error::GroundSetFull(_))
        ));
    }

    #[test]
    fn guts_cut_of_a_line_is_principal() {
        let u = Matroid::uniform(3, 6).unwrap();
        let z = Subset::from_indices([0, 1]);
        let cut = guts_modular_cut(&u, z);
        assert_eq!(cut.flats(), &[z, u.full()]);
    }

    #[test]
    fn free_additions_into_the_guts() {
        let u = Matroid::uniform(3, 6).unwrap();
        let z = Subset::from_indices([0, 1]);
        let labs = vec!["g1".to_string(), "g2".to_string()];
        // k = λ(Z) = 2, so the theorem asserts fire inside.
        let (ext, g) = free_add_into_guts(&u, z, 2, &labs).unwrap();
        assert_eq!(ext.n(), 8);
        assert_eq!(g.card(), 2);
        assert_eq!(ext.r(g), 2);
        assert_eq!(ext.r(z.union(g)), 2); // both additions stay on the line
        assert!(is_clonal_set(&ext, g));
        assert!(matches!(
            free_add_into_guts(&u, z, 2, &labs[..1]),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn relaxation_adds_one_basis() {
        let v = Matroid::vamos();
        let ch = v.subset_of_labels(["a1", "a2", "b1", "b2"]).unwrap();
        let r = relax(&v, ch).unwrap();
        assert_eq!(r.bases().len(), 66);
        assert_eq!(r.r(ch), 4);
        // Exactly one table entry moved, by exactly one.
        let mut diffs = 0;
        for x in 0..1u32 << 8 {
            if r.r(Subset(x)) != v.r(Subset(x)) {
                assert_eq!(x, ch.0);
                assert_eq!(r.r(Subset(x)), v.r(Subset(x)) + 1);
                diffs += 1;
            }
        }
        assert_eq!(diffs, 1);
        // Uniform matroids have no circuit-hyperplanes.
        let u = Matroid::uniform(2, 4).unwrap();
        assert!(matches!(
            relax(&u, Subset::from_indices([0, 1])),
            Err(Error::NotCircuitHyperplane(_))
        ));
    }

    #[test]
    fn tightening_removes_one_basis() {
        let u = Matroid::uniform(2, 4).unwrap();
        let b = Subset::from_indices([0, 1]);
        let t = tighten(&u, b).unwrap();
        assert_eq!(t.r(b), 1); // 0 and 1 became parallel
        let mut diffs = 0;
        for x in 0..1u32 << 4 {
            if t.r(Subset(x)) != u.r(Subset(x)) {
                assert_eq!(x, b.0);
                diffs += 1;
            }
        }
        assert_eq!(diffs, 1);
        // Tightening is the inverse of relaxation where both apply.
        let v = Matroid::vamos();
        let ch = v.subset_of_labels(["a1", "a2", "b1", "b2"]).unwrap();
        let relaxed = relax(&v, ch).unwrap();
        assert_eq!(tighten(&relaxed, ch).unwrap(), v);
    }

    #[test]
    fn tighten_rejects_non_free_bases() {
        // Free matroid: unique basis, and rank = |E|.
        let free = Matroid::uniform(3, 3).unwrap();
        assert!(matches!(
            tighten(&free, free.full()),
            Err(Error::NotFreeBasis(_))
        ));
        // In U_{1,2} ⊕ U_{1,2} the exchange {0,2} − 2 + 1 is dependent.
        let a = Matroid::uniform(1, 2).unwrap().relabel(vec!["a1".into(), "a2".into()]).unwrap();
        let b = Matroid::uniform(1, 2).unwrap().relabel(vec!["b1".into(), "b2".into()]).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert!(matches!(
            tighten(&s, Subset::from_indices([0, 2])),
            Err(Error::NotFreeBasis(_))
        ));
        // Not a basis at all.
        let u = Matroid::uniform(2, 4).unwrap();
        assert!(matches!(
            tighten(&u, Subset::singleton(0)),
            Err(Error::NotFreeBasis(_))
        ));
    }

    #[test]
    fn natural_matroid_of_two_lines() {
        let p = Polymatroid::new(
            vec!["a".into(), "b".into()],
            vec![0, 2, 2, 3],
        )
        .unwrap();
        let pm = p.natural_matroid(&[2, 2]).unwrap();
        let m = pm.matroid();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.labels(), &["a.p1", "a.p2", "b.p1", "b.p2"]);
        assert_eq!(m.r(pm.part(0)), 2);
        assert_eq!(m.r(pm.part(1)), 2);
        assert_eq!(
            crate::connectivity::local_conn(m, pm.part(0), pm.part(1), false).unwrap(),
            1
        );
        assert!(matches!(p.natural_matroid(&[3, 2]), Err(Error::BadCounts(_))));
        assert!(matches!(p.natural_matroid(&[2]), Err(Error::BadParameters(_))));
    }

    #[test]
    fn polymatroid_validation() {
        assert!(matches!(
            Polymatroid::new(vec!["a".into()], vec![1, 1]),
            Err(Error::BadParameters(_))
        ));
        // Not submodular: f(a)+f(b) < f(ab)+f(∅).
        assert!(matches!(
            Polymatroid::new(vec!["a".into(), "b".into()], vec![0, 1, 1, 3]),
            Err(Error::BadParameters(_))
        ));
        // Not monotone.
        assert!(matches!(
            Polymatroid::new(vec!["a".into(), "b".into()], vec![0, 2, 1, 1]),
            Err(Error::BadParameters(_))
        ));
        let names: Vec<String> = (0..7).map(|i| format!("p{i}")).collect();
        assert!(matches!(
            Polymatroid::new(names, vec![0; 128]),
            Err(Error::BadParameters(_))
        ));
    }
}
