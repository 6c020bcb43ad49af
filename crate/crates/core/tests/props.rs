//! Property checks over randomly generated matroids: the algebra the rest
//! of the crate leans on, exercised on instances nobody hand-picked.

use proptest::prelude::*;

use flexi::connectivity::{closure, kappa, lambda, local_conn};
use flexi::extension::principal_extension;
use flexi::files;
use flexi::matroid::Matroid;
use flexi::subset::{Subset, EMPTY};
use flexi::verify::{random_matroid, trial_rng};

// Out of the way of the streams the verification suites use.
const STREAM: u64 = 99 << 32;

fn arb_case(max_n: usize) -> impl Strategy<Value = (Matroid, u32, u32, u32)> {
    (any::<u64>(), any::<u32>(), any::<u32>(), any::<u32>()).prop_map(move |(s, a, b, c)| {
        (random_matroid(&mut trial_rng(s, STREAM), max_n), a, b, c)
    })
}

fn mask(m: &Matroid, bits: u32) -> Subset {
    Subset(bits & ((1u32 << m.n()) - 1))
}

proptest! {
    #[test]
    fn dual_is_an_involution((m, _, _, _) in arb_case(6)) {
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn lambda_is_self_dual_and_symmetric((m, a, _, _) in arb_case(6)) {
        let x = mask(&m, a);
        let co = m.full().minus(x);
        prop_assert_eq!(lambda(&m, x), lambda(&m.dual(), x));
        prop_assert_eq!(lambda(&m, x), lambda(&m, co));
    }

    #[test]
    fn geoffs_identity((m, a, b, _) in arb_case(6)) {
        let x = mask(&m, a);
        let y = mask(&m, b).minus(x);
        let conn = local_conn(&m, x, y, false).unwrap() as i32;
        let dual = local_conn(&m, x, y, true).unwrap() as i32;
        let rhs = lambda(&m, x) as i32 + lambda(&m, y) as i32
            - lambda(&m, x.union(y)) as i32;
        prop_assert_eq!(conn + dual, rhs);
    }

    #[test]
    fn local_connectivity_is_monotone((m, a, b, c) in arb_case(6)) {
        let y = mask(&m, b);
        let x = mask(&m, a).minus(y);
        let bigger = x.union(mask(&m, c).minus(y));
        for dual in [false, true] {
            let small = local_conn(&m, x, y, dual).unwrap();
            let large = local_conn(&m, bigger, y, dual).unwrap();
            prop_assert!(small <= large, "⊓ shrank when X grew (dual={})", dual);
        }
    }

    #[test]
    fn kappa_is_self_dual_and_bounded((m, a, b, _) in arb_case(6)) {
        let x = mask(&m, a);
        let y = mask(&m, b).minus(x);
        let k = kappa(&m, x, y).unwrap();
        prop_assert_eq!(k, kappa(&m.dual(), x, y).unwrap());
        prop_assert!(k <= lambda(&m, x).min(lambda(&m, y)));
        prop_assert!(k >= local_conn(&m, x, y, false).unwrap());
    }

    #[test]
    fn closure_is_a_closure_operator((m, a, _, _) in arb_case(6)) {
        for dual in [false, true] {
            let x = mask(&m, a);
            let cl = closure(&m, x, dual);
            prop_assert!(x.is_subset_of(cl));
            prop_assert_eq!(closure(&m, cl, dual), cl);
            let host = if dual { m.dual() } else { m.clone() };
            prop_assert_eq!(host.r(cl), host.r(x));
        }
    }

    #[test]
    fn truncation_caps_every_rank((m, a, _, _) in arb_case(6)) {
        let x = mask(&m, a);
        for k in 0..=m.rank() {
            let t = m.truncate(k).unwrap();
            prop_assert_eq!(t.r(x), m.r(x).min(k));
        }
    }

    #[test]
    fn principal_extension_lands_on_the_flat((m, a, _, _) in arb_case(6)) {
        prop_assume!(m.n() < 20);
        let x = mask(&m, a);
        let ext = principal_extension(&m, x, "fresh").unwrap();
        let p = ext.label_index("fresh").unwrap();
        prop_assert_eq!(ext.rank(), m.rank());
        // the new point adds nothing on top of X (a loop when X is empty) …
        prop_assert_eq!(ext.r(x.with(p)), m.r(x));
        // … and is otherwise a point of the flat spanned by X
        prop_assert_eq!(ext.r(Subset::singleton(p)), u8::from(m.r(x) > 0));
    }

    #[test]
    fn matroid_files_round_trip((m, _, _, _) in arb_case(7)) {
        let text = files::matroid_to_string(&m);
        let back = files::parse_matroid_str(&text).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn minors_commute((m, a, b, _) in arb_case(6)) {
        let d = mask(&m, a);
        let c = mask(&m, b).minus(d);
        prop_assume!(d.union(c).card() < m.n() as u32);
        let del_first = m.minor(d, EMPTY).unwrap().minor(EMPTY, c_shift(d, c)).unwrap();
        let both = m.minor(d, c).unwrap();
        prop_assert_eq!(del_first, both);
    }
}

/// Re-expresses `c` after the elements of `d` have been deleted: every index
/// drops by the number of deleted elements below it.
fn c_shift(d: Subset, c: Subset) -> Subset {
    let mut out = EMPTY;
    for e in c.iter() {
        let below = (d.0 & ((1u32 << e) - 1)).count_ones() as usize;
        out = out.with(e - below);
    }
    out
}
