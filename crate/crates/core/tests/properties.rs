//! Cross-module property tests: invariants that must hold for arbitrary
//! valid inputs, not only the frozen fixtures used elsewhere in the suite.

use proptest::collection::vec;
use proptest::prelude::*;
use troplab_core::toda::{shift_n, t0_membership};
use troplab_core::{
    bbs_evolve, beta, conserved, evolve, shift, BbsState, ConservedVector, CurveModel, JacPoint,
    Jacobian, Rational, TodaState,
};

/// Integer states over 2 to 4 sites, filtered to the phase space.
fn int_state() -> impl Strategy<Value = TodaState> {
    (2usize..=4)
        .prop_flat_map(|n| (vec(0i64..=8, n), vec(0i64..=8, n)))
        .prop_filter_map("phase space needs sum Q < sum W", |(q, w)| {
            TodaState::from_ints(&q, &w).ok()
        })
}

/// Rational states with a shared small denominator.
fn rat_state() -> impl Strategy<Value = TodaState> {
    (2usize..=4, 1i64..=3)
        .prop_flat_map(|(n, den)| (vec(0i64..=12, n), vec(0i64..=12, n), Just(den)))
        .prop_filter_map("phase space needs sum Q < sum W", |(q, w, den)| {
            let qr: Vec<Rational> = q.into_iter().map(|v| Rational::new(v, den)).collect();
            let wr: Vec<Rational> = w.into_iter().map(|v| Rational::new(v, den)).collect();
            TodaState::new(qr, wr).ok()
        })
}

proptest! {
    #[test]
    fn evolution_conserves_the_spectrum(s in rat_state()) {
        let next = evolve(&s).unwrap();
        prop_assert_eq!(conserved(&next), conserved(&s));
    }

    #[test]
    fn evolution_commutes_with_relabeling(s in int_state()) {
        prop_assert_eq!(evolve(&shift(&s)).unwrap(), shift(&evolve(&s).unwrap()));
    }

    #[test]
    fn conserved_vector_ignores_relabeling(s in rat_state(), i in 0usize..4) {
        prop_assert_eq!(conserved(&shift_n(&s, i)), conserved(&s));
    }

    #[test]
    fn state_json_roundtrips(s in rat_state()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: TodaState = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }

    /// One ball-system step equals one lattice step transported through the
    /// run-length dictionary, up to the relabeling that returns the evolved
    /// state to the base sector.
    #[test]
    fn ball_motion_matches_the_lattice(cells in vec(prop::bool::weighted(0.3), 4..=12)) {
        let b = BbsState::new(cells);
        prop_assume!(b.is_ok());
        let b = b.unwrap();
        let s = beta(&b);
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        // The sector decomposition behind `t0_membership` only covers
        // generic levels (distinct soliton sizes, balls sparse enough).
        prop_assume!(conserved(&s).is_generic().is_ok());
        let n = s.len();
        let toda_next = evolve(&s).unwrap();
        let i = t0_membership(&toda_next).unwrap();
        let expected = shift_n(&toda_next, (n - i) % n);
        prop_assert_eq!(beta(&bbs_evolve(&b)).unwrap(), expected);
    }

    #[test]
    fn reduction_is_idempotent(zn in vec(-60i64..=60, 2), den in 1i64..=4) {
        let cm = CurveModel::build(&ConservedVector::from_ints(&[7, 3, 1, 0]).unwrap()).unwrap();
        let jac = Jacobian::new(&cm, None).unwrap();
        let z: Vec<Rational> = zn.into_iter().map(|v| Rational::new(v, den)).collect();
        let red = jac.reduce(&JacPoint::alpha(z)).unwrap();
        let again = jac.reduce(&red).unwrap();
        prop_assert_eq!(&again.z, &red.z);
    }
}
