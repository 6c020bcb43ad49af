//! The acceptance slate. Each criterion is one test that prints a single
//! `criterion NN (...): PASS in ...` line and asserts its runtime budget
//! where one is stated.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;

use flexi::clonal::{clonal_core, is_clonal_core_matroid};
use flexi::connectivity::{check_laws, closure, Law, LawConfig};
use flexi::extension::free_add_into_guts;
use flexi::flexipath::{
    absorb_step, classify, find_specially_placed, profile, reduce_to_4c, ClassTag, FlexiClass,
    FlexiMode, FourPath, Side, Special,
};
use flexi::gallery;
use flexi::matroid::partitioned_isomorphic;
use flexi::subset::Subset;
use flexi::verify::{
    self, random_matroid, random_path, synthetic_paths, trial_rng, Suite, VerifyConfig,
};

fn pass(idx: u32, name: &str, started: Instant, budget: Option<Duration>) {
    let took = started.elapsed();
    if let Some(b) = budget {
        assert!(took < b, "criterion {idx:02} blew its budget: {took:.2?} >= {b:?}");
    }
    println!("criterion {idx:02} ({name}): PASS in {took:.2?}");
}

fn laws_config() -> LawConfig {
    LawConfig::default() // exhaustive up to n = 10, sampled above
}

#[test]
fn criterion_01_connectivity_laws() {
    let t = Instant::now();
    let cfg = laws_config();

    // every distinct gallery host with n ≤ 10, exhaustively
    let mut hosts = BTreeMap::new();
    for e in gallery::all() {
        let m = e.path.matroid();
        hosts.entry(m.fingerprint()).or_insert_with(|| m.clone());
    }
    let mut small = 0;
    for m in hosts.values().filter(|m| m.n() <= 10) {
        small += 1;
        for law in [Law::Geoffs, Law::Jamess] {
            let rep = check_laws(m, law, &cfg).unwrap();
            assert!(rep.pass, "{law:?} failed on a gallery host: {:?}", rep.witness);
        }
    }
    assert!(small >= 2, "expected at least two gallery hosts with n <= 10");

    // and 200 random matroids with n ≤ 8, also exhaustive at that size
    for trial in 0..200 {
        let mut rng = trial_rng(0, trial);
        let m = random_matroid(&mut rng, 8);
        for law in [Law::Geoffs, Law::Jamess] {
            let rep = check_laws(&m, law, &cfg).unwrap();
            assert!(rep.pass, "{law:?} failed on trial {trial}: {:?}", rep.witness);
        }
    }
    pass(1, "connectivity laws", t, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_02_clonal_core_theorem() {
    let t = Instant::now();
    let cfg = VerifyConfig {
        suite: Suite::CoreTheorem,
        seed: 0,
        trials: 100,
        max_n: 8,
        json: false,
        laws: laws_config(),
    };
    let report = verify::run(&cfg);
    assert_eq!(report.checks.len(), 100);
    assert!(report.pass, "{}", report.render_text());
    pass(2, "clonal core theorem on random hosts", t, Some(Duration::from_secs(180)));
}

#[test]
fn criterion_03_guts_addition_order_independence() {
    let t = Instant::now();
    let a_b = ["a".to_string(), "b".to_string()];
    for trial in 0..50u64 {
        let mut rng = trial_rng(0, (7 << 32) + trial);
        let m = random_matroid(&mut rng, 7);
        let z = Subset(rng.gen::<u32>() & ((1u32 << m.n()) - 1));

        let (both, _) = free_add_into_guts(&m, z, 2, &a_b).unwrap();
        let (a_first, _) = free_add_into_guts(&m, z, 1, &a_b[..1]).unwrap();
        let (a_then_b, _) = free_add_into_guts(&a_first, z, 1, &a_b[1..]).unwrap();
        let (b_first, _) = free_add_into_guts(&m, z, 1, &a_b[1..]).unwrap();
        let (b_then_a, _) = free_add_into_guts(&b_first, z, 1, &a_b[..1]).unwrap();

        // one k = 2 call is the two single additions, literally
        assert_eq!(both, a_then_b, "trial {trial}");

        // swapping the order swaps nothing but the positions of a and b
        let n = m.n();
        let swap = |s: u32| {
            let a_bit = s >> n & 1;
            let b_bit = s >> (n + 1) & 1;
            (s & !(3 << n)) | (b_bit << n) | (a_bit << (n + 1))
        };
        for s in 0..1u32 << (n + 2) {
            assert_eq!(
                a_then_b.r(Subset(s)),
                b_then_a.r(Subset(swap(s))),
                "trial {trial}: rank tables disagree through the transposition"
            );
        }
    }
    pass(3, "guts additions commute", t, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_04_clonal_core_idempotent_on_gallery() {
    let t = Instant::now();
    for e in gallery::all() {
        let once = clonal_core(e.path.pm()).unwrap();
        assert!(
            is_clonal_core_matroid(&once.core),
            "{}: first core is not already a clonal core matroid",
            e.name
        );
        let twice = clonal_core(&once.core).unwrap();
        assert!(
            partitioned_isomorphic(&once.core, &twice.core).unwrap(),
            "{}: core of the core moved",
            e.name
        );
    }
    pass(4, "clonal core idempotence across the gallery", t, Some(Duration::from_secs(60)));
}

#[test]
fn criterion_05_gallery_fidelity() {
    let t = Instant::now();
    let entries = gallery::all();
    assert_eq!(entries.len(), 16);
    for e in &entries {
        // re-verify from scratch rather than trusting the cached state
        let mut fresh = FourPath::new(e.path.pm().clone()).unwrap();
        assert!(
            fresh.is_four_flexipath(FlexiMode::Subset),
            "{}: does not verify as a (4,c)-flexipath",
            e.name
        );
        assert_eq!(classify(&fresh).unwrap(), e.expected, "{}", e.name);
    }

    let m8 = gallery::gallery("m8").unwrap();
    assert_eq!(m8.expected.tag, ClassTag::RelaxedSpikeReminiscent);
    let n9 = gallery::gallery("n9").unwrap();
    assert_eq!(n9.expected.tag, ClassTag::PlaneNasty);

    let c3_ii = gallery::gallery("c3_ii").unwrap();
    let prof = profile(&c3_ii.path).unwrap();
    assert_eq!(prof.end_pair, (1, 0));
    assert_eq!(prof.step_pairs, vec![(1, 2, 1, 0)]);

    // stated preconditions of the relax/tighten chains
    let spike = gallery::gallery("spike_rem").unwrap();
    let m = spike.path.matroid();
    let lr = spike.path.left().union(spike.path.right());
    assert_eq!(m.r(lr), m.rank() - 1);
    assert_eq!(lr.card(), m.rank() as u32);
    assert_eq!(closure(m, lr, false), lr, "L∪R must be a circuit-hyperplane");

    let prism = gallery::gallery("prism").unwrap();
    let steps = (1..=prism.path.n_steps())
        .fold(Subset(0), |acc, i| acc.union(prism.path.step(i)));
    assert!(prism.path.matroid().is_basis(steps), "the x/y set must be a basis");
    let prism_t = gallery::gallery("prism_t").unwrap();
    let ends = prism_t.path.left().union(prism_t.path.right());
    assert!(prism_t.path.matroid().is_basis(ends), "the α/β set must be a basis");

    pass(5, "gallery fidelity, all 16 entries", t, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_06_flexipath_oracle_equivalence() {
    let t = Instant::now();
    let mut agreements = 0u32;
    let mut positives = 0u32;
    let mut check = |fp: &FourPath| {
        let mut sub = FourPath::new(fp.pm().clone()).unwrap();
        let mut per = FourPath::new(fp.pm().clone()).unwrap();
        let a = sub.is_four_flexipath(FlexiMode::Subset);
        let b = per.is_four_flexipath(FlexiMode::Permutation);
        assert_eq!(a, b, "oracles disagree on {:?}", fp.pm().parts());
        agreements += 1;
        positives += u32::from(a);
    };

    for trial in 0..100 {
        check(&random_path(&mut trial_rng(0, (8 << 32) + trial), 5));
    }
    for trial in 0..100 {
        check(&random_path(&mut trial_rng(0, (9 << 32) + trial), 8));
    }
    for e in gallery::all() {
        check(&e.path);
    }
    for (_, fp) in synthetic_paths().iter().filter(|(_, fp)| fp.n_steps() <= 4) {
        check(fp);
    }
    assert!(agreements >= 200);
    assert!(positives >= 16, "no positive instances would make the check vacuous");
    pass(6, "subset vs permutation oracle agreement", t, None);
}

#[test]
fn criterion_07_taxonomy_totality() {
    let t = Instant::now();
    let cfg = VerifyConfig {
        suite: Suite::Taxonomy,
        seed: 0,
        trials: 500,
        max_n: 8,
        json: false,
        laws: laws_config(),
    };
    let report = verify::run(&cfg);
    assert!(report.pass, "{}", report.render_text());
    assert!(report.checks.iter().all(|c| c.pass));

    // Spot check: at most one specially placed step in every reduced (4,2)
    // gallery path or dual.
    for e in gallery::all() {
        for fp in [e.path.clone(), e.path.dual()] {
            let (red, c) = reduce_to_4c(&fp).unwrap();
            if c == 2 && red.n_steps() > 0 {
                let specials = find_specially_placed(&red).unwrap();
                assert!(specials.len() <= 1, "{}: {specials:?}", e.name);
            }
        }
    }
    pass(7, "taxonomy totality", t, None);
}

#[test]
fn criterion_08_duality_coherence() {
    let t = Instant::now();
    use ClassTag::*;
    type Row = (&'static str, ClassTag, Option<(&'static str, Special)>, bool);
    let expected: &[Row] = &[
        ("spike_rem", PaddleReminiscent, None, false),
        ("m8", RelaxedPaddleReminiscent, None, false),
        ("paddle_rem", SpikeReminiscent, None, false),
        ("prism", PrismLike, None, false),
        ("prism_t", TightenedPrismLike, None, true),
        ("prism_tt", DoublyTightenedPrismLike, None, false),
        ("m9", VamosInspired, None, true),
        ("n9", DualPlaneNasty, None, false),
        ("n9_dual", PlaneNasty, None, false),
        ("nasty_mixed", MixedNasty, None, false),
        ("c3_ii", C3TypeII, None, true),
        ("c3_i", C3TypeI, None, true),
        ("c3_iii", C3TypeIII, None, true),
        ("char_vi", TwoStepResidual, None, false),
        ("c1_i", C1TypeI, None, true),
        ("special_fig2", SpikeReminiscent, Some(("ab", Special::S2)), false),
    ];
    assert_eq!(expected.len(), gallery::names().len());
    for (name, tag, absorbed, dualized) in expected {
        let e = gallery::gallery(name).unwrap();
        let got = classify(&e.path.dual()).unwrap();
        let want = FlexiClass {
            tag: *tag,
            absorbed_special: absorbed.map(|(n, s)| (n.to_string(), s)),
            dualized: *dualized,
        };
        assert_eq!(got, want, "dual of {name}");
    }
    pass(8, "duality coherence across the gallery", t, None);
}

#[test]
fn criterion_09_c1_and_c3_endpoints() {
    let t = Instant::now();

    let c1 = gallery::gallery("c1_i").unwrap();
    let m = c1.path.matroid();
    assert_eq!(m.rank(), 3);
    let meet = closure(m, c1.path.left(), false).inter(closure(m, c1.path.right(), false));
    for i in 1..=c1.path.n_steps() {
        assert!(
            c1.path.step(i).is_subset_of(meet),
            "step {i} escapes cl(L) ∩ cl(R)"
        );
    }

    let rows = [
        ("c3_i", (2, 0), (1, 1)),
        ("c3_ii", (1, 0), (1, 0)),
        ("c3_iii", (1, 1), (2, 0)),
    ];
    for (name, end, pair) in rows {
        let e = gallery::gallery(name).unwrap();
        let prof = profile(&e.path).unwrap();
        assert_eq!(prof.c, Some(3), "{name}");
        assert_eq!(prof.end_pair, end, "{name}");
        assert_eq!(prof.step_pairs, vec![(1, 2, pair.0, pair.1)], "{name}");
    }
    pass(9, "(4,1) and (4,3) endpoint checks", t, None);
}

#[test]
fn criterion_10_large_synthetics_stay_in_the_four_classes() {
    let t = Instant::now();
    let allowed = [
        ClassTag::SpikeReminiscent,
        ClassTag::PaddleReminiscent,
        ClassTag::Squashed,
        ClassTag::Stretched,
    ];
    let mut instances = 0u32;
    let mut check = |name: &str, fp: &FourPath| {
        let (red, c) = reduce_to_4c(fp).unwrap();
        assert_eq!(c, 2, "{name}: synthetics are (4,2) by construction");
        let class = classify(&red).unwrap();
        assert!(
            allowed.contains(&class.tag),
            "{name} classified off the reminiscent set: {class}"
        );
        instances += 1;
    };

    for (name, fp) in synthetic_paths() {
        if fp.n_steps() < 5 {
            continue;
        }
        check(&name, &fp);
        // absorbing an end step keeps n ≥ 5 for the larger synthetics
        if fp.n_steps() >= 6 {
            check(&format!("{name}/absorb-left"), &absorb_step(&fp, 1, Side::Left).unwrap());
            check(
                &format!("{name}/absorb-right"),
                &absorb_step(&fp, fp.n_steps(), Side::Right).unwrap(),
            );
        }
    }
    assert!(instances >= 20, "only {instances} synthetic instances with n >= 5");
    pass(10, "large synthetic flexipaths", t, None);
}
