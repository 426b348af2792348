mod common;

use proptest::prelude::*;
use star_resolvent::coeff::{build_coeff_matrix, build_theta_matrix};
use star_resolvent::diagnostics::{numerical_bandwidth, Threshold};
use star_resolvent::{star_product, Basis, FunctionSpec};

fn small_function() -> impl Strategy<Value = (FunctionSpec, fn(f64) -> f64)> {
    prop_oneof![
        Just((FunctionSpec::Constant { value: 1.0 }, (|_| 1.0) as fn(f64) -> f64)),
        Just((FunctionSpec::Monomial { degree: 1 }, (|t| t) as fn(f64) -> f64)),
        Just((
            FunctionSpec::Monomial { degree: 3 },
            (|t: f64| t * t * t) as fn(f64) -> f64
        )),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coeff_matrix_matches_split_quadrature(
        m in 1usize..=12,
        t_end in 0.25f64..4.0,
        (spec, f) in small_function(),
    ) {
        let basis = Basis::new(m, t_end).unwrap();
        let built = build_coeff_matrix(&spec, &basis).unwrap();
        let oracle = common::oracle_coeff_matrix(m, t_end, &f);
        let scale = oracle.amax().max(1.0);
        prop_assert!((built.entries() - &oracle).amax() <= 1e-10 * scale);
    }

    #[test]
    fn theta_square_matches_ramp_kernel(m in 2usize..=40) {
        let basis = Basis::unit(m).unwrap();
        let theta = build_theta_matrix(&basis);
        let product = star_product(&theta, &theta).unwrap();
        let b = numerical_bandwidth(&theta, Threshold::default());
        let direct = common::volterra_kernel_matrix(m, 1.0, 48, &|t, s| t - s);
        for k in 0..m - b {
            for l in 0..m {
                prop_assert!((product.get(k, l) - direct[(k, l)]).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn theta_square_corner_is_one_sixth() {
    let theta = build_theta_matrix(&Basis::unit(6).unwrap());
    let p = star_product(&theta, &theta).unwrap();
    assert!((p.get(0, 0) - 1.0 / 6.0).abs() <= 1e-15);
}

#[test]
fn theta_two_by_two() {
    let theta = build_theta_matrix(&Basis::unit(2).unwrap());
    let c = 1.0 / (2.0 * 3f64.sqrt());
    let expected = [[0.5, -c], [c, 0.0]];
    for k in 0..2 {
        for l in 0..2 {
            assert!(
                (theta.get(k, l) - expected[k][l]).abs() <= 1e-15,
                "{k},{l}: {}",
                theta.get(k, l)
            );
        }
    }
}

#[test]
fn oracle_basis_agrees_with_library() {
    let basis = Basis::new(30, 2.5).unwrap();
    for i in 0..=20 {
        let t = 2.5 * i as f64 / 20.0;
        let mine = basis.eval(t).unwrap();
        let theirs = common::shifted_legendre(30, 2.5, t);
        for (a, b) in mine.iter().zip(&theirs) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}
