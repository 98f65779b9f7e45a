use feynman_gw_core::quasimodular::QSeries;
use feynman_gw_core::{
    assemble_generating_series, catalog, feynman_integral_degree, fit_quasimodular, naive_integral, Integer,
    Rational, TruncationSpec,
};

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn genus_two() -> Vec<(feynman_gw_core::FeynmanGraph, u64)> {
    vec![(catalog::get("theta").unwrap(), 12), (catalog::get("dumbbell").unwrap(), 8)]
}

// Degrees 2..4 also agree with a brute-force monodromy count of
// simply ramified genus-2 covers.
const F2: [i64; 12] = [0, 2, 16, 60, 160, 360, 672, 1240, 1920, 3180, 4400, 6832];

#[test]
fn genus_two_contributions_match_oracle_through_degree_six() {
    for (g, _) in genus_two() {
        let fast = feynman_integral_degree(&g, 6).unwrap();
        let naive = naive_integral(&g, &TruncationSpec::sufficient(6)).unwrap();
        assert_eq!(fast, naive);
    }
}

#[test]
fn genus_two_series() {
    let f2 = assemble_generating_series(&genus_two(), 12).unwrap();
    for (d, &c) in (1..=12u64).zip(F2.iter()) {
        assert_eq!(f2.collapsed_coefficient(d), Rational::from_integer(Integer::from(c)), "degree {d}");
    }
    assert_eq!(f2.collapsed_coefficient(13), rat(0, 1));
}

#[test]
fn genus_two_fit() {
    let f2 = assemble_generating_series(&genus_two(), 12).unwrap();
    let fit = fit_quasimodular(&QSeries::from_degree_series(&f2, 12, Clone::clone), 6).unwrap();
    assert!(fit.residual_ok);
    assert_eq!(fit.basis, vec![(0, 0, 1), (1, 1, 0), (3, 0, 0)]);
    assert_eq!(fit.coefficients, vec![rat(-1, 12960), rat(-1, 8640), rat(1, 5184)]);
}

#[test]
fn wrong_weight_does_not_fit() {
    let f2 = assemble_generating_series(&genus_two(), 12).unwrap();
    let s = QSeries::from_degree_series(&f2, 12, Clone::clone);
    for w in [2, 4, 8] {
        assert!(!fit_quasimodular(&s, w).unwrap().residual_ok, "weight {w}");
    }
}
