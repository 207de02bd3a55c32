use crosslab::cross::{cross_envelope, ProductMask};
use crosslab::extension::{
    cauchy_reconstruct, fit_rational, local_cross, local_overlap_consistency, rel_error, sample_cross,
    verify_extension, Branch, Holomorphic, SamplingStrategy,
};
use crosslab::extremal::SolveParams;
use crosslab::geometry::Grid;
use crosslab::poly::BiPoly;
use crosslab::singularity::{envelope_trace, SingularSet};
use crosslab::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn diag() -> SingularSet {
    SingularSet::Poly(BiPoly::diagonal())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y)| c(x, y))
}

/// Random numerator of bidegree at most `(1, 1)`.
fn numerator() -> impl Strategy<Value = BiPoly> {
    proptest::collection::vec(complex(), 4).prop_map(|cs| BiPoly::new(vec![cs[..2].to_vec(), cs[2..].to_vec()]))
}

fn strategy(seed: u64) -> SamplingStrategy {
    SamplingStrategy { per_branch: [200, 200], seed, ..Default::default() }
}

fn env_and_trace(n: usize) -> (ProductMask, ProductMask) {
    let g = Grid::square(1.05, n).unwrap();
    let env = cross_envelope(&local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0), &g, &g, &SolveParams::default())
        .unwrap()
        .mask;
    let trace = envelope_trace(&diag(), &env);
    (env, trace)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn recovers_numerator_times_spare_poles(n0 in numerator(), m0 in 0u32..=1, extra in 0u32..=1, seed in 0u64..1000) {
        let m = m0 + extra;
        let p = BiPoly::diagonal();
        let f = |z: Complex64, w: Complex64| n0.eval(z, w) / p.eval(z, w).powu(m0);
        let x = local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0);
        let s = sample_cross(&f, &x, &diag(), &strategy(seed)).unwrap();
        let deg = (1 + extra as usize, 1 + extra as usize);
        let fit = fit_rational(&s, &diag(), m, deg).unwrap();
        let want = n0.mul(&p.pow(extra));
        for i in 0..=deg.0 {
            for j in 0..=deg.1 {
                prop_assert!((fit.numerator.coeff(i, j) - want.coeff(i, j)).norm() <= 1e-8);
            }
        }
    }

    #[test]
    fn fit_is_linear_in_the_data(n1 in numerator(), n2 in numerator(), a in complex(), b in complex()) {
        let x = local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0);
        let f1 = |z: Complex64, w: Complex64| n1.eval(z, w).exp();
        let f2 = |z: Complex64, w: Complex64| n2.eval(z, w) / (z - w);
        let s1 = sample_cross(&f1, &x, &diag(), &strategy(3)).unwrap();
        let s2 = s1.with_values(&f2);
        let mix = |z: Complex64, w: Complex64| a * f1(z, w) + b * f2(z, w);
        let s3 = s1.with_values(&mix);
        let deg = (3, 3);
        let (g1, g2, g3) = (
            fit_rational(&s1, &diag(), 1, deg).unwrap(),
            fit_rational(&s2, &diag(), 1, deg).unwrap(),
            fit_rational(&s3, &diag(), 1, deg).unwrap(),
        );
        let scale = 1.0 + g1.max_coefficient() + g2.max_coefficient();
        for i in 0..=3 {
            for j in 0..=3 {
                let lin = a * g1.numerator.coeff(i, j) + b * g2.numerator.coeff(i, j);
                prop_assert!((g3.numerator.coeff(i, j) - lin).norm() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn cauchy_is_exact_on_polynomials(
        cs in proptest::collection::vec(complex(), 81),
        center in (complex(), complex()),
        radii in (0.1..1.0f64, 0.1..1.0f64),
    ) {
        // Total degree up to 8 = n_quad / 4 with n_quad = 32.
        let p = BiPoly::new((0..9).map(|i| cs[i * 9..i * 9 + 9 - i].to_vec()).collect());
        let got = cauchy_reconstruct(&|z, w| p.eval(z, w), center, radii, 32).unwrap();
        let want = p.eval(center.0, center.1);
        prop_assert!((got - want).norm() <= 1e-10 * (1.0 + p.scale()));
    }
}

#[test]
fn either_branch_alone_determines_the_fit() {
    let x = local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0);
    let f = |z: Complex64, w: Complex64| (c(1.0, 0.5) + z * w - w) / ((z - w) * (z - w));
    let both = sample_cross(&f, &x, &diag(), &SamplingStrategy::default()).unwrap();
    let full = fit_rational(&both, &diag(), 2, (1, 1)).unwrap();
    let (env, trace) = env_and_trace(32);
    for branch in [Branch::AG, Branch::DB] {
        let one = fit_rational(&both.only(branch), &diag(), 2, (1, 1)).unwrap();
        let r = verify_extension(&one, &full, &env, &trace, 300, 5, 0.05).unwrap();
        assert!(r.max_rel_error <= 1e-6, "{branch:?}: {r:?}");
    }
}

#[test]
fn entire_functions_need_no_poles() {
    let x = local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0);
    let f = |z: Complex64, w: Complex64| z * w;
    let s = sample_cross(&f, &x, &diag(), &SamplingStrategy::default()).unwrap();
    let fit = fit_rational(&s, &diag(), 0, (1, 1)).unwrap();
    let (env, trace) = env_and_trace(32);
    let r = verify_extension(&fit, &f, &env, &trace, 500, 9, 0.05).unwrap();
    assert!(r.max_rel_error <= 1e-9, "{r:?}");
    assert!(r.max_rel_error <= fit.condition * 1e-12);
}

#[test]
fn wrong_data_is_detected() {
    let x = local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0);
    let f = |z: Complex64, w: Complex64| 1.0 / (z - w);
    let g = |z: Complex64, w: Complex64| f(z, w) + 1.0;
    let s = sample_cross(&f, &x, &diag(), &SamplingStrategy::default()).unwrap();
    let fit = fit_rational(&s, &diag(), 1, (2, 2)).unwrap();
    let (env, trace) = env_and_trace(32);
    let r = verify_extension(&fit, &g, &env, &trace, 500, 9, 0.05).unwrap();
    assert!(r.max_rel_error > 0.1);

    // Too few poles cannot reproduce a double pole.
    let h = |z: Complex64, w: Complex64| 1.0 / ((z - w) * (z - w));
    let fit = fit_rational(&s.with_values(&h), &diag(), 1, (2, 2)).unwrap();
    let r = verify_extension(&fit, &h, &env, &trace, 500, 9, 0.05).unwrap();
    assert!(r.max_rel_error > 0.1);
}

#[test]
fn overlap_consistency() {
    let x = local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0);
    let f = |z: Complex64, w: Complex64| (z + w) / (z - w);
    let s = sample_cross(&f, &x, &diag(), &SamplingStrategy::default()).unwrap();
    let fit = fit_rational(&s, &diag(), 1, (2, 2)).unwrap();
    let (env, _) = env_and_trace(32);
    let same = local_overlap_consistency(&fit, &fit.clone(), &env, 300, 1, 0.05).unwrap();
    assert_eq!(same, 0.0);
    let off = local_overlap_consistency(&fit, &fit.plus_constant(c(1.0, 0.0)), &env, 300, 1, 0.05).unwrap();
    assert!(off > 0.1);
    let g: &dyn Holomorphic = &fit;
    assert!(rel_error(g.eval(c(0.5, 0.0), c(0.0, 0.0)), c(1.0, 0.0)) <= 1e-8);
}
