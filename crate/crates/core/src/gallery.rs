//! A catalog of worked flexipaths: one named entry per interesting spot in
//! the taxonomy, each carrying its construction, its verified path, and the
//! class it is expected to land in. Entries are built lazily and cached, so
//! repeated lookups are cheap.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::extension::{principal_extension, relax, tighten, Polymatroid};
use crate::files;
use crate::flexipath::{classify, ClassTag, FlexiClass, FlexiMode, FourPath, Special};
use crate::matroid::{Matroid, PartitionedMatroid};
use crate::subset::EMPTY;

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    /// One-line sketch of how the host matroid is put together.
    pub recipe: &'static str,
    /// Where the entry sits in the taxonomy and what it exercises.
    pub locus: &'static str,
    /// The path on the host, verified as a (4, c)-flexipath.
    pub path: FourPath,
    pub expected: FlexiClass,
}

const NAMES: [&str; 16] = [
    "spike_rem",
    "m8",
    "paddle_rem",
    "prism",
    "prism_t",
    "prism_tt",
    "m9",
    "n9",
    "n9_dual",
    "nasty_mixed",
    "c3_ii",
    "c3_i",
    "c3_iii",
    "char_vi",
    "c1_i",
    "special_fig2",
];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

static CACHE: OnceLock<Mutex<HashMap<&'static str, GalleryEntry>>> = OnceLock::new();

pub fn gallery(name: &str) -> Result<GalleryEntry> {
    let canonical = NAMES
        .iter()
        .copied()
        .find(|&n| n == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(canonical) {
        return Ok(e.clone());
    }
    // Built outside the lock: some entries look up others while building.
    let e = build(canonical);
    cache.lock().unwrap().insert(canonical, e.clone());
    Ok(e)
}

/// Every entry, in catalog order.
pub fn all() -> Vec<GalleryEntry> {
    NAMES.iter().map(|n| gallery(n).expect("catalog name")).collect()
}

fn build(name: &'static str) -> GalleryEntry {
    match name {
        "spike_rem" => spike_rem(),
        "m8" => m8(),
        "paddle_rem" => paddle_rem(),
        "prism" => prism(),
        "prism_t" => prism_t(),
        "prism_tt" => prism_tt(),
        "m9" => m9(),
        "n9" => n9(),
        "n9_dual" => n9_dual(),
        "nasty_mixed" => nasty_mixed(),
        "c3_ii" => c3_ii(),
        "c3_i" => c3_i(),
        "c3_iii" => c3_iii(),
        "char_vi" => char_vi(),
        "c1_i" => c1_i(),
        "special_fig2" => special_fig2(),
        _ => unreachable!("checked against NAMES"),
    }
}

// ---- small construction helpers ----

/// Principal extension by one new point placed freely on cl(over).
fn ext(m: &Matroid, over: &[&str], label: &str) -> Matroid {
    let x = m.subset_of_labels(over.iter().copied()).expect("gallery label");
    principal_extension(m, x, label).expect("gallery extension")
}

/// Several new points placed freely on the same closure, one after another.
fn ext_many(m: &Matroid, over: &[&str], labels: &[&str]) -> Matroid {
    labels.iter().fold(m.clone(), |acc, l| ext(&acc, over, l))
}

fn del(m: &Matroid, labels: &[&str]) -> Matroid {
    let x = m.subset_of_labels(labels.iter().copied()).expect("gallery label");
    m.minor(x, EMPTY).expect("gallery deletion")
}

fn named(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

/// Verifies and returns the path; every catalog path must be a flexipath.
fn verified(pm: PartitionedMatroid) -> FourPath {
    let mut fp = FourPath::new(pm).expect("gallery path");
    assert!(
        fp.is_four_flexipath(FlexiMode::Subset),
        "gallery path failed flexipath verification"
    );
    fp
}

fn path(m: &Matroid, parts: &[(&str, &[&str])]) -> FourPath {
    let resolved = parts
        .iter()
        .map(|(name, labels)| {
            let set = m.subset_of_labels(labels.iter().copied()).expect("gallery label");
            (name.to_string(), set)
        })
        .collect();
    verified(PartitionedMatroid::new(m.clone(), resolved).expect("gallery partition"))
}

fn finish(
    name: &'static str,
    recipe: &'static str,
    locus: &'static str,
    path: FourPath,
    expected: FlexiClass,
) -> GalleryEntry {
    let got = classify(&path).expect("gallery entry must classify");
    assert_eq!(got, expected, "gallery entry {name} classified away from its expected class");
    GalleryEntry { name, recipe, locus, path, expected }
}

fn plain(tag: ClassTag) -> FlexiClass {
    FlexiClass { tag, absorbed_special: None, dualized: false }
}

// ---- the entries ----

const ALPHAS: [&str; 3] = ["alpha1", "alpha2", "alpha3"];
const BETAS: [&str; 3] = ["beta1", "beta2", "beta3"];

fn spike_rem() -> GalleryEntry {
    let m = Matroid::free_spike(7).expect("free spike");
    let m = ext_many(&m, &["x1", "y1", "x2", "y2"], &ALPHAS);
    let m = ext_many(&m, &["x6", "y6", "x7", "y7"], &BETAS);
    let m = m.truncate(6).expect("truncation");
    let m = del(&m, &["x1", "y1", "x2", "y2", "x6", "y6", "x7", "y7"]);
    let p = path(
        &m,
        &[
            ("L", &ALPHAS),
            ("Q1", &["x3", "y3"]),
            ("Q2", &["x4", "y4"]),
            ("Q3", &["x5", "y5"]),
            ("R", &BETAS),
        ],
    );
    finish(
        "spike_rem",
        "free 7-spike, three extra points on each outer leg pair's closure, \
         truncated to rank 6, outer spike legs deleted",
        "the spike-reminiscent family with three middle steps; L u R is a \
         circuit-hyperplane",
        p,
        plain(ClassTag::SpikeReminiscent),
    )
}

fn m8() -> GalleryEntry {
    let spike = gallery("spike_rem").expect("catalog name");
    // Relies on the spike_rem invariant that L u R is a circuit-hyperplane.
    let b = spike.path.left().union(spike.path.right());
    let m = relax(spike.path.matroid(), b).expect("relaxation");
    let p = path(
        &m,
        &[
            ("L", &ALPHAS),
            ("Q1", &["x3", "y3"]),
            ("Q2", &["x4", "y4"]),
            ("Q3", &["x5", "y5"]),
            ("R", &BETAS),
        ],
    );
    finish(
        "m8",
        "spike_rem with the circuit-hyperplane L u R relaxed into a basis",
        "the relaxed spike-reminiscent exception next door to spike_rem",
        p,
        plain(ClassTag::RelaxedSpikeReminiscent),
    )
}

fn paddle_rem() -> GalleryEntry {
    let spike = gallery("spike_rem").expect("catalog name");
    let p = verified(spike.path.pm().dual());
    finish(
        "paddle_rem",
        "the dual of spike_rem, with the same parts",
        "the paddle-reminiscent family; dual partner of spike_rem",
        p,
        plain(ClassTag::PaddleReminiscent),
    )
}

fn prism() -> GalleryEntry {
    let b6 = named(&["b1", "b2", "b3", "b4", "b5", "b6"]);
    let m = Matroid::uniform(6, 6).expect("uniform").relabel(b6).expect("labels");
    let m = ext_many(&m, &["b1", "b4"], &["x1", "y1"]);
    let m = ext_many(&m, &["b2", "b5"], &["x2", "y2"]);
    let m = ext_many(&m, &["b3", "b6"], &["x3", "y3"]);
    let m = ext_many(&m, &["b1", "b2", "b3"], &ALPHAS);
    let m = ext_many(&m, &["b4", "b5", "b6"], &BETAS);
    let m = del(&m, &["b1", "b2", "b3", "b4", "b5", "b6"]);
    let p = path(
        &m,
        &[
            ("L", &ALPHAS),
            ("Q1", &["x1", "y1"]),
            ("Q2", &["x2", "y2"]),
            ("Q3", &["x3", "y3"]),
            ("R", &BETAS),
        ],
    );
    finish(
        "prism",
        "three skew lines across a free rank-6 frame plus a plane of points \
         at each end, frame deleted",
        "the prism-like sporadic with n = 3; the x/y points form a free basis",
        p,
        plain(ClassTag::PrismLike),
    )
}

fn prism_t() -> GalleryEntry {
    let base = gallery("prism").expect("catalog name");
    let steps =
        base.path.step(1).union(base.path.step(2)).union(base.path.step(3));
    let m = tighten(base.path.matroid(), steps).expect("tightening");
    let p = verified(
        PartitionedMatroid::new(m, base.path.pm().parts().to_vec()).expect("parts"),
    );
    finish(
        "prism_t",
        "prism with its free basis of step points tightened into a \
         circuit-hyperplane",
        "the tightened prism-like sporadic",
        p,
        plain(ClassTag::TightenedPrismLike),
    )
}

fn prism_tt() -> GalleryEntry {
    let base = gallery("prism_t").expect("catalog name");
    let ends = base.path.left().union(base.path.right());
    let m = tighten(base.path.matroid(), ends).expect("tightening");
    let p = verified(
        PartitionedMatroid::new(m, base.path.pm().parts().to_vec()).expect("parts"),
    );
    finish(
        "prism_tt",
        "prism_t with the free basis L u R tightened as well",
        "the doubly tightened prism-like sporadic",
        p,
        plain(ClassTag::DoublyTightenedPrismLike),
    )
}

fn m9() -> GalleryEntry {
    let pair = Matroid::uniform(2, 2)
        .expect("uniform")
        .relabel(named(&["a", "d"]))
        .expect("labels");
    let m = Matroid::vamos().direct_sum(&pair).expect("direct sum");
    let m = ext_many(&m, &["a1", "a2", "a"], &["alpha1", "alpha2", "alpha3", "alpha4"]);
    let m = ext_many(&m, &["d1", "d2", "d"], &["delta1", "delta2", "delta3", "delta4"]);
    let m = ext_many(&m, &["alpha4", "delta4"], &["beta1", "gamma1"]);
    let m = del(&m, &["a1", "a2", "d1", "d2", "a", "d", "alpha4", "delta4"]);
    let p = path(
        &m,
        &[
            ("L", &ALPHAS),
            ("Q1", &["beta1", "gamma1"]),
            ("Q2", &["b1", "b2"]),
            ("Q3", &["c1", "c2"]),
            ("R", &["delta1", "delta2", "delta3"]),
        ],
    );
    finish(
        "m9",
        "rank-8 sum of the Vamos matroid and a free pair, planes of points \
         grown over the a- and d-lines, a connecting line added, scaffold \
         deleted",
        "the sporadic that inherits the Vamos matroid's failure of modularity",
        p,
        plain(ClassTag::VamosInspired),
    )
}

fn n9() -> GalleryEntry {
    let base = gallery("m9").expect("catalog name");
    let ends = base.path.left().union(base.path.right());
    let m = tighten(base.path.matroid(), ends).expect("tightening");
    let p = verified(
        PartitionedMatroid::new(m, base.path.pm().parts().to_vec()).expect("parts"),
    );
    finish(
        "n9",
        "m9 with the free basis L u R tightened into a circuit-hyperplane",
        "the plane-nasty sporadic; dual partner of n9_dual",
        p,
        plain(ClassTag::PlaneNasty),
    )
}

fn n9_dual() -> GalleryEntry {
    let base = gallery("n9").expect("catalog name");
    let p = verified(base.path.pm().dual());
    finish(
        "n9_dual",
        "the dual of n9, with the same parts",
        "the dual plane-nasty sporadic",
        p,
        plain(ClassTag::DualPlaneNasty),
    )
}

fn natural_host(text: &str) -> PartitionedMatroid {
    let (parts, f, counts) = files::parse_polymatroid_str(text).expect("catalog data");
    let p = Polymatroid::new(parts, f).expect("catalog polymatroid");
    p.natural_matroid(&counts).expect("natural matroid")
}

fn nasty_mixed() -> GalleryEntry {
    let pm = natural_host(include_str!("../data/nasty_mixed.pmt"));
    finish(
        "nasty_mixed",
        "natural matroid of a hand-built five-part polymatroid (see \
         data/nasty_mixed.notes.md)",
        "a profile whose step pairs touch primally, dually and not at all",
        verified(pm),
        plain(ClassTag::MixedNasty),
    )
}

fn c3_i() -> GalleryEntry {
    let pm = natural_host(include_str!("../data/c3_i.pmt"));
    finish(
        "c3_i",
        "natural matroid of a hand-built four-part polymatroid (see \
         data/c3_i.notes.md)",
        "the two-step c = 3 shape with ends meeting in a line",
        verified(pm),
        plain(ClassTag::C3TypeI),
    )
}

fn c3_iii() -> GalleryEntry {
    let base = gallery("c3_i").expect("catalog name");
    let parts = base.path.pm().parts();
    let swapped = vec![
        parts[1].clone(),
        parts[0].clone(),
        parts[3].clone(),
        parts[2].clone(),
    ];
    let pm = PartitionedMatroid::new(base.path.matroid().clone(), swapped).expect("parts");
    finish(
        "c3_iii",
        "c3_i read sideways: ends swapped with steps",
        "the third c = 3 shape, showing the roles of ends and steps trade",
        verified(pm),
        plain(ClassTag::C3TypeIII),
    )
}

fn c3_ii() -> GalleryEntry {
    let m = Matroid::uniform(5, 5)
        .expect("uniform")
        .relabel(named(&["b1", "b2", "b3", "b4", "p"]))
        .expect("labels");
    let m = ext_many(&m, &["b1", "b2", "p"], &["x12", "y12", "z12"]);
    let m = ext_many(&m, &["b2", "b3", "p"], &["x23", "y23", "z23"]);
    let m = ext_many(&m, &["b3", "b4", "p"], &["x34", "y34", "z34"]);
    let m = ext_many(&m, &["b4", "b1", "p"], &["x41", "y41", "z41"]);
    let m = del(&m, &["b1", "b2", "b3", "b4", "p"]);
    let p = path(
        &m,
        &[
            ("L", &["x12", "y12", "z12"]),
            ("Q1", &["x23", "y23", "z23"]),
            ("Q2", &["x41", "y41", "z41"]),
            ("R", &["x34", "y34", "z34"]),
        ],
    );
    finish(
        "c3_ii",
        "four planes through a common point in rank 5, three points on each, \
         scaffold deleted; opposite planes are the ends",
        "the second c = 3 shape, all four parts mutually touching in a point",
        p,
        plain(ClassTag::C3TypeII),
    )
}

fn char_vi() -> GalleryEntry {
    let b6 = named(&["b1", "b2", "b3", "b4", "b5", "b6"]);
    let m = Matroid::uniform(6, 6).expect("uniform").relabel(b6).expect("labels");
    let m = ext_many(&m, &["b1", "b2", "b3"], &["b1p", "b2p", "b3p"]);
    let m = ext_many(&m, &["b4", "b5", "b6"], &["b4p", "b5p", "b6p"]);
    let m = ext(&m, &["b3", "b6"], "c");
    let m = ext_many(&m, &["b1", "b4"], &["c1", "c4"]);
    let m = ext_many(&m, &["b2", "b5"], &["c2", "c5"]);
    let delete = m
        .subset_of_labels(["b1", "b2", "b3", "b4", "b5", "b6"])
        .expect("gallery label");
    let contract = m.subset_of_labels(["c"]).expect("gallery label");
    let m = m.minor(delete, contract).expect("gallery minor");
    let p = path(
        &m,
        &[
            ("L", &["b1p", "b2p", "b3p"]),
            ("Q1", &["c1", "c4"]),
            ("Q2", &["c2", "c5"]),
            ("R", &["b4p", "b5p", "b6p"]),
        ],
    );
    finish(
        "char_vi",
        "two end planes over a free rank-6 frame, cross lines through a \
         contracted connecting point, frame deleted",
        "the residual two-step shape that closes out the c = 2, n = 2 case",
        p,
        plain(ClassTag::TwoStepResidual),
    )
}

fn c1_i() -> GalleryEntry {
    let f6 = Matroid::uniform(3, 6)
        .expect("uniform")
        .relabel(named(&["f1", "f2", "f3", "f4", "f5", "f6"]))
        .expect("labels");
    let e4 = Matroid::uniform(2, 4)
        .expect("uniform")
        .relabel(named(&["e1", "e2", "e3", "e4"]))
        .expect("labels");
    let m = f6.direct_sum(&e4).expect("direct sum").truncate(3).expect("truncation");
    let p = path(
        &m,
        &[
            ("L", &["f1", "f2", "f3"]),
            ("Q1", &["e1"]),
            ("Q2", &["e2"]),
            ("Q3", &["e3"]),
            ("Q4", &["e4"]),
            ("R", &["f4", "f5", "f6"]),
        ],
    );
    finish(
        "c1_i",
        "truncation to rank 3 of a free sum of two uniform pieces, ends from \
         one piece, singleton steps from the other",
        "the first c = 1 shape: every step sits in cl(L) and in cl(R)",
        p,
        plain(ClassTag::C1TypeI),
    )
}

fn special_fig2() -> GalleryEntry {
    let m = Matroid::uniform(7, 7)
        .expect("uniform")
        .relabel(named(&["s1", "s2", "s3", "s4", "s5", "s6", "s7"]))
        .expect("labels");
    let m = ext(&m, &["s3", "s4", "s5", "s6", "s7"], "s8");
    let m = ext_many(&m, &["s1", "s2"], &["p1", "p2", "p3", "p4", "a", "b"]);
    let m = ext_many(&m, &["s1", "s2", "s3"], &ALPHAS);
    let m = ext_many(&m, &["s1", "s2", "s4"], &BETAS);
    let m = del(&m, &["s1", "s2", "s3", "s4"]);
    let m = ext_many(&m, &["p1", "s5"], &["q11", "q12"]);
    let m = ext_many(&m, &["p2", "s6"], &["q21", "q22"]);
    let m = del(&m, &["s5", "s6", "p1", "p2"]);
    let m = ext_many(&m, &["p3", "s7"], &["q31", "q32"]);
    let m = ext_many(&m, &["p4", "s8"], &["q41", "q42"]);
    let m = del(&m, &["s7", "s8", "p3", "p4"]);
    let p = path(
        &m,
        &[
            ("L", &ALPHAS),
            ("Q1", &["q11", "q12"]),
            ("Q2", &["q21", "q22"]),
            ("ab", &["a", "b"]),
            ("Q3", &["q31", "q32"]),
            ("Q4", &["q41", "q42"]),
            ("R", &BETAS),
        ],
    );
    finish(
        "special_fig2",
        "rank-7 host with both end planes through a common line, a pair of \
         points on that line as one step, and four step lines hung off it",
        "a specially placed step: the ab pair meets both ends in the common \
         line and is absorbed before matching",
        p,
        FlexiClass {
            tag: ClassTag::PaddleReminiscent,
            absorbed_special: Some(("ab".to_string(), Special::S1)),
            dualized: false,
        },
    )
}
