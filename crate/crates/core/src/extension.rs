//! Re-extension of separately holomorphic data from a cross by rational
//! least squares with a fixed denominator `P^m`, plus the checks around it:
//! uniqueness from `A×B` data, removability by Cauchy integrals and
//! agreement of local fits on overlaps.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cross::{Cross, ProductMask};
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, SetSpec};
use crate::poly::BiPoly;
use crate::singularity::{envelope_trace, SingularSet};

/// Design weights are `1 / max(|P|^m, WEIGHT_FLOOR)`.
pub const WEIGHT_FLOOR: f64 = 1e-6;
/// Fits whose design condition number exceeds this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Anything that can be evaluated at `(z, w)`.
pub trait Holomorphic: Sync {
    fn eval(&self, z: Complex64, w: Complex64) -> Complex64;
}

impl<F: Fn(Complex64, Complex64) -> Complex64 + Sync> Holomorphic for F {
    fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self(z, w)
    }
}

/// `N₀(z, w) / P(z, w)^{m₀}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub numerator: BiPoly,
    pub pole: BiPoly,
    pub pole_order: u32,
}

impl GroundTruth {
    pub fn new(numerator: BiPoly, m: &SingularSet, pole_order: u32) -> Self {
        GroundTruth { numerator, pole: m.polynomial(), pole_order }
    }
}

impl Holomorphic for GroundTruth {
    fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.numerator.eval(z, w) / self.pole.eval(z, w).powu(self.pole_order)
    }
}

/// Branch of the cross a sample was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `A × G`.
    AG,
    /// `D × B`.
    DB,
    /// `A × B`.
    AB,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingStrategy {
    /// Sample counts on `A×G` and `D×B`.
    pub per_branch: [usize; 2],
    /// Points keep `|P| ≥ clearance · max|coeff P|`; for point sets the
    /// Euclidean distance to `M`. Defaults to `0.05 · diam(D×G)`.
    pub clearance: Option<f64>,
    pub seed: u64,
}

impl Default for SamplingStrategy {
    fn default() -> Self {
        SamplingStrategy { per_branch: [400, 400], clearance: None, seed: 0 }
    }
}

impl SamplingStrategy {
    pub fn clearance_for(&self, cross: &Cross) -> f64 {
        self.clearance.unwrap_or(0.05 * cross.diameter())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampleSet {
    pub points: Vec<[Complex64; 2]>,
    pub values: Vec<Complex64>,
    pub branches: Vec<Branch>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Samples from one branch only.
    pub fn only(&self, branch: Branch) -> SampleSet {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.branches[i] == branch).collect();
        SampleSet {
            points: keep.iter().map(|&i| self.points[i]).collect(),
            values: keep.iter().map(|&i| self.values[i]).collect(),
            branches: vec![branch; keep.len()],
        }
    }

    /// Same points, values replaced by `f`.
    pub fn with_values(&self, f: &dyn Holomorphic) -> SampleSet {
        SampleSet {
            values: self.points.par_iter().map(|p| f.eval(p[0], p[1])).collect(),
            ..self.clone()
        }
    }
}

/// Membership test for "far enough from `M`".
struct Clearance<'a> {
    m: &'a SingularSet,
    p: BiPoly,
    threshold: f64,
    radius: f64,
}

impl<'a> Clearance<'a> {
    fn new(m: &'a SingularSet, radius: f64) -> Self {
        let p = m.polynomial();
        Clearance { m, threshold: radius * p.scale(), p, radius }
    }

    fn ok(&self, z: Complex64, w: Complex64) -> bool {
        match self.m {
            SingularSet::Points(pts) => {
                pts.iter().all(|q| (q[0] - z).norm().hypot((q[1] - w).norm()) >= self.radius)
            }
            _ => self.p.eval(z, w).norm() >= self.threshold,
        }
    }

    /// `P(z, ·) ≡ 0`.
    fn degenerate_in_w(&self, z: Complex64) -> bool {
        self.p.slice_w(z).scale() <= 1e-12 * self.p.scale()
    }

    fn degenerate_in_z(&self, w: Complex64) -> bool {
        self.p.slice_z(w).scale() <= 1e-12 * self.p.scale()
    }
}

type Bounds = (Complex64, Complex64);

fn in_box(b: Bounds, u: f64, v: f64) -> Complex64 {
    Complex64::new(b.0.re + u * (b.1.re - b.0.re), b.0.im + v * (b.1.im - b.0.im))
}

/// Shifted 4-dimensional Halton points in `zbox × wbox`, kept when `accept`
/// holds, until `count` are found.
fn quasi_random_pairs(
    zbox: Bounds,
    wbox: Bounds,
    count: usize,
    shift: [f64; 4],
    accept: &(dyn Fn(Complex64, Complex64) -> bool + Sync),
) -> Result<Vec<[Complex64; 2]>> {
    let budget = 2000 * count + 100_000;
    let batch = (4 * count).max(1024);
    let mut out = Vec::with_capacity(count);
    let mut start = 1;
    while out.len() < count && start < budget {
        let found: Vec<Option<[Complex64; 2]>> = (start..start + batch)
            .into_par_iter()
            .map(|k| {
                let u: Vec<f64> = [2u8, 3, 5, 7]
                    .iter()
                    .zip(shift)
                    .map(|(&b, s)| (halton::number(b, k) + s).fract())
                    .collect();
                let (z, w) = (in_box(zbox, u[0], u[1]), in_box(wbox, u[2], u[3]));
                accept(z, w).then_some([z, w])
            })
            .collect();
        out.extend(found.into_iter().flatten().take(count - out.len()));
        start += batch;
    }
    if out.len() < count {
        return Err(Error::Sampling(format!(
            "placed only {} of {count} points; sets too thin or clearance too large",
            out.len()
        )));
    }
    Ok(out)
}

fn shifts(rng: &mut ChaCha8Rng) -> [f64; 4] {
    [rng.gen(), rng.gen(), rng.gen(), rng.gen()]
}

fn evaluate(f: &dyn Holomorphic, points: &[[Complex64; 2]]) -> Result<Vec<Complex64>> {
    let values: Vec<Complex64> = points.par_iter().map(|p| f.eval(p[0], p[1])).collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Sampling(format!("non-finite value at {:?}", points[i])));
    }
    Ok(values)
}

/// Quasi-random samples of `f` on `(A×G) ∪ (D×B)` away from `M`.
///
/// `A×G` samples skip `z` with `M_z = G`, and `D×B` samples skip `w` with
/// `M^w = D`.
pub fn sample_cross(
    f: &dyn Holomorphic,
    cross: &Cross,
    m: &SingularSet,
    strategy: &SamplingStrategy,
) -> Result<SampleSet> {
    m.validate()?;
    let clear = Clearance::new(m, strategy.clearance_for(cross));
    let mut rng = ChaCha8Rng::seed_from_u64(strategy.seed);
    let ag = quasi_random_pairs(
        cross.a.bounding_box(),
        cross.g.bounding_box(),
        strategy.per_branch[0],
        shifts(&mut rng),
        &|z, w| {
            cross.a.contains(z) && cross.g.contains(w) && !clear.degenerate_in_w(z) && clear.ok(z, w)
        },
    )?;
    let db = quasi_random_pairs(
        cross.d.bounding_box(),
        cross.b.bounding_box(),
        strategy.per_branch[1],
        shifts(&mut rng),
        &|z, w| {
            cross.d.contains(z) && cross.b.contains(w) && !clear.degenerate_in_z(w) && clear.ok(z, w)
        },
    )?;
    let branches =
        std::iter::repeat(Branch::AG).take(ag.len()).chain(std::iter::repeat(Branch::DB).take(db.len())).collect();
    let points: Vec<_> = ag.into_iter().chain(db).collect();
    let values = evaluate(f, &points)?;
    Ok(SampleSet { points, values, branches })
}

/// Quasi-random points of `(A×B) \ M`.
pub fn sample_product(
    a: &SetSpec,
    b: &SetSpec,
    m: &SingularSet,
    count: usize,
    clearance: f64,
    seed: u64,
) -> Result<Vec<[Complex64; 2]>> {
    let clear = Clearance::new(m, clearance);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    quasi_random_pairs(a.bounding_box(), b.bounding_box(), count, shifts(&mut rng), &|z, w| {
        a.contains(z) && b.contains(w) && clear.ok(z, w)
    })
}

/// `N / P^m` with a fitted numerator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalApproximant {
    pub numerator: BiPoly,
    pub denominator: BiPoly,
    pub m: u32,
    /// Condition number of the weighted design matrix.
    pub condition: f64,
}

impl RationalApproximant {
    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.numerator.eval(z, w) / self.denominator.eval(z, w).powu(self.m)
    }

    /// Largest numerator coefficient modulus.
    pub fn max_coefficient(&self) -> f64 {
        self.numerator.scale()
    }

    /// The approximant plus the constant `c`.
    pub fn plus_constant(&self, c: Complex64) -> RationalApproximant {
        RationalApproximant {
            numerator: self.numerator.add(&self.denominator.pow(self.m).scaled(c)),
            ..self.clone()
        }
    }
}

impl Holomorphic for RationalApproximant {
    fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        RationalApproximant::eval(self, z, w)
    }
}

/// Weighted least squares for `N` of bidegree at most `deg` in
/// `N(z_i, w_i) ≈ v_i · P(z_i, w_i)^m`.
pub fn fit_rational(
    samples: &SampleSet,
    p: &SingularSet,
    m: u32,
    deg: (usize, usize),
) -> Result<RationalApproximant> {
    p.validate()?;
    let (dz, dw) = deg;
    let ncoef = (dz + 1) * (dw + 1);
    if samples.len() < 2 * ncoef {
        return Err(Error::Sampling(format!(
            "{} samples for {ncoef} coefficients; need at least {}",
            samples.len(),
            2 * ncoef
        )));
    }
    let denominator = p.polynomial();
    let pm = denominator.pow(m);
    let rows: Vec<(Vec<Complex64>, Complex64)> = samples
        .points
        .par_iter()
        .zip(&samples.values)
        .map(|(pt, &v)| {
            let (z, w) = (pt[0], pt[1]);
            let pv = pm.eval(z, w);
            let weight = 1.0 / pv.norm().max(WEIGHT_FLOOR);
            let mut row = Vec::with_capacity(ncoef);
            let mut zi = Complex64::new(weight, 0.0);
            for _ in 0..=dz {
                let mut t = zi;
                for _ in 0..=dw {
                    row.push(t);
                    t *= w;
                }
                zi *= z;
            }
            (row, v * pv * weight)
        })
        .collect();
    let design = DMatrix::from_row_iterator(rows.len(), ncoef, rows.iter().flat_map(|r| r.0.iter().copied()));
    let rhs = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let svd = design.svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::RankDeficient { condition });
    }
    let sol = svd.solve(&rhs, 0.0).map_err(|e| Error::Sampling(e.to_string()))?;
    let numerator = BiPoly::new((0..=dz).map(|i| sol.as_slice()[i * (dw + 1)..(i + 1) * (dw + 1)].to_vec()).collect());
    Ok(RationalApproximant { numerator, denominator, m, condition })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    pub n_test_points: usize,
    pub region: String,
}

/// `|a − b| / (1 + |b|)`.
pub fn rel_error(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// Uniform draws (with replacement) of grid pairs flagged in `region`.
fn draw_pairs(
    region: &ProductMask,
    n: usize,
    seed: u64,
    keep: impl Fn(Complex64, Complex64) -> bool,
) -> Vec<[Complex64; 2]> {
    let mut cumulative = Vec::with_capacity(region.grid_w.len());
    let mut total = 0;
    for iw in 0..region.grid_w.len() {
        total += region.row_count(iw);
        cumulative.push(total);
    }
    let mut out = Vec::with_capacity(n);
    if total == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 * n {
        if out.len() == n {
            break;
        }
        let k = rng.gen_range(0..total);
        let iw = cumulative.partition_point(|&c| c <= k);
        let before = if iw == 0 { 0 } else { cumulative[iw - 1] };
        let iz = region.nth_in_row(iw, k - before).expect("row count");
        let (z, w) = (region.grid_z.point(iz), region.grid_w.point(iw));
        if keep(z, w) {
            out.push([z, w]);
        }
    }
    out
}

/// Compares `approx` with `f` at `n_test` random nodes of `env \ trace` with
/// `|P| ≥ clearance · max|coeff P|`.
pub fn verify_extension(
    approx: &RationalApproximant,
    f: &dyn Holomorphic,
    env: &ProductMask,
    trace: &ProductMask,
    n_test: usize,
    seed: u64,
    clearance: f64,
) -> Result<ErrorReport> {
    if env.is_empty() {
        return Err(Error::EmptyMask);
    }
    if n_test < 100 {
        return Err(Error::InvalidArgument(format!("n_test = {n_test} < 100")));
    }
    let region = env.and_not(trace);
    let threshold = clearance * approx.denominator.scale();
    let points = draw_pairs(&region, n_test, seed, |z, w| {
        approx.denominator.eval(z, w).norm() >= threshold
    });
    if points.len() < n_test.div_ceil(2) {
        return Err(Error::Sampling(format!(
            "found {} of {n_test} usable test points",
            points.len()
        )));
    }
    let errors: Vec<f64> =
        points.par_iter().map(|p| rel_error(approx.eval(p[0], p[1]), f.eval(p[0], p[1]))).collect();
    Ok(ErrorReport {
        max_rel_error: errors.iter().copied().fold(0.0, f64::max),
        mean_rel_error: errors.iter().sum::<f64>() / errors.len() as f64,
        n_test_points: errors.len(),
        region: format!("{} of {} envelope cells off the trace", region.count(), env.count()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Uniqueness {
    /// Largest coefficient of the fit to zero data; infinite when the
    /// design is rank-deficient.
    pub residual: f64,
    pub condition: f64,
    pub n_samples: usize,
}

/// Fits zero data on `(A×B) \ M`. A tiny residual means `A×B` data already
/// determines the rational class.
pub fn uniqueness_residual(
    cross: &Cross,
    m: &SingularSet,
    p_power: u32,
    deg: (usize, usize),
    strategy: &SamplingStrategy,
) -> Result<Uniqueness> {
    let count = strategy.per_branch[0] + strategy.per_branch[1];
    let points =
        sample_product(&cross.a, &cross.b, m, count, strategy.clearance_for(cross), strategy.seed)?;
    uniqueness_residual_from_points(&points, m, p_power, deg)
}

/// [`uniqueness_residual`] on explicit points.
pub fn uniqueness_residual_from_points(
    points: &[[Complex64; 2]],
    m: &SingularSet,
    p_power: u32,
    deg: (usize, usize),
) -> Result<Uniqueness> {
    let samples = SampleSet {
        points: points.to_vec(),
        values: vec![Complex64::new(0.0, 0.0); points.len()],
        branches: vec![Branch::AB; points.len()],
    };
    match fit_rational(&samples, m, p_power, deg) {
        Ok(fit) => Ok(Uniqueness {
            residual: fit.max_coefficient(),
            condition: fit.condition,
            n_samples: points.len(),
        }),
        Err(Error::RankDeficient { condition }) => {
            Ok(Uniqueness { residual: f64::INFINITY, condition, n_samples: points.len() })
        }
        Err(e) => Err(e),
    }
}

fn torus_mean(
    f: &dyn Holomorphic,
    (a, b): (Complex64, Complex64),
    (delta, eps): (f64, f64),
    n: usize,
) -> Complex64 {
    let node = |k: usize| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
    let rows: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let z = a + node(j) * delta;
            (0..n).map(|k| f.eval(z, b + node(k) * eps)).sum()
        })
        .collect();
    rows.into_iter().sum::<Complex64>() / (n * n) as f64
}

/// `f(a, b)` from values on the torus `|z−a| = δ, |w−b| = ε` by the
/// trapezoidal rule on `n_quad²` nodes, checked against `(2·n_quad)²`.
pub fn cauchy_reconstruct(
    f: &dyn Holomorphic,
    center: (Complex64, Complex64),
    radii: (f64, f64),
    n_quad: usize,
) -> Result<Complex64> {
    if n_quad < 32 {
        return Err(Error::InvalidArgument(format!("n_quad = {n_quad} < 32")));
    }
    if !(radii.0 > 0.0 && radii.1 > 0.0) {
        return Err(Error::InvalidArgument("torus radii must be positive".into()));
    }
    let coarse = torus_mean(f, center, radii, n_quad);
    let fine = torus_mean(f, center, radii, 2 * n_quad);
    let change = (coarse - fine).norm();
    if !(change <= 1e-6) {
        return Err(Error::Quadrature { change });
    }
    Ok(fine)
}

/// Largest relative discrepancy of two fits at `n_test` random nodes of
/// `overlap` off the trace of their common denominator.
pub fn local_overlap_consistency(
    fit1: &RationalApproximant,
    fit2: &RationalApproximant,
    overlap: &ProductMask,
    n_test: usize,
    seed: u64,
    clearance: f64,
) -> Result<f64> {
    if fit1.denominator != fit2.denominator || fit1.m != fit2.m {
        return Err(Error::InvalidArgument("fits have different denominators".into()));
    }
    if overlap.is_empty() {
        return Err(Error::EmptyMask);
    }
    let trace = envelope_trace(&SingularSet::Poly(fit1.denominator.clone()), overlap);
    Ok(verify_extension(fit1, fit2, overlap, &trace, n_test, seed, clearance)?.max_rel_error)
}

/// Local cross around `(a, b)`: `D = Δ_a(r)`, `G = Δ_b(r)` and closed base
/// discs of radius `r / 4`.
pub fn local_cross(a: Complex64, b: Complex64, r: f64) -> Cross {
    Cross::new(
        DomainSpec::disc(a, r),
        SetSpec::disc(a, r / 4.0),
        DomainSpec::disc(b, r),
        SetSpec::disc(b, r / 4.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn standard() -> Cross {
        local_cross(c(0.0, 0.0), c(0.0, 0.0), 1.0)
    }

    fn diag() -> SingularSet {
        SingularSet::Poly(BiPoly::diagonal())
    }

    fn inv_diff(z: Complex64, w: Complex64) -> Complex64 {
        1.0 / (z - w)
    }

    #[test]
    fn samples_respect_cross_and_clearance() {
        let x = standard();
        let strat = SamplingStrategy::default();
        let s = sample_cross(&inv_diff, &x, &diag(), &strat).unwrap();
        assert_eq!(s.len(), 800);
        let cl = strat.clearance_for(&x);
        for p in &s.points {
            assert!(x.contains(p[0], p[1]));
            assert!((p[0] - p[1]).norm() >= cl);
        }
        assert_eq!(s.only(Branch::AG).len(), 400);
        assert_eq!(s, sample_cross(&inv_diff, &x, &diag(), &strat).unwrap());
    }

    #[test]
    fn infeasible_clearance() {
        let x = standard();
        let strat = SamplingStrategy { clearance: Some(3.0), ..Default::default() };
        assert!(matches!(sample_cross(&inv_diff, &x, &diag(), &strat), Err(Error::Sampling(_))));
    }

    #[test]
    fn degenerate_slices_are_skipped() {
        // P = z (w − 0.5).
        let m = SingularSet::Poly(BiPoly::from_real(&[&[0.0], &[-0.5, 1.0]]));
        let x = standard();
        let strat = SamplingStrategy { clearance: Some(0.01), ..Default::default() };
        let s = sample_cross(&|_, _| c(1.0, 0.0), &x, &m, &strat).unwrap();
        let p = m.polynomial();
        for (pt, br) in s.points.iter().zip(&s.branches) {
            if *br == Branch::AG {
                assert!(p.slice_w(pt[0]).scale() > 1e-12);
                assert!(pt[0].norm() >= 0.01);
            }
        }
    }

    #[test]
    fn exact_recovery() {
        let x = standard();
        let s = sample_cross(&inv_diff, &x, &diag(), &SamplingStrategy::default()).unwrap();
        let fit = fit_rational(&s, &diag(), 1, (0, 0)).unwrap();
        assert!((fit.numerator.coeff(0, 0) - 1.0).norm() <= 1e-8);

        let f = |z: Complex64, w: Complex64| (z + w) / ((z - w) * (z - w));
        let s = s.with_values(&f);
        let fit = fit_rational(&s, &diag(), 2, (1, 1)).unwrap();
        let want = [[0.0, 1.0], [1.0, 0.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert!((fit.numerator.coeff(i, j) - v).norm() <= 1e-8);
            }
        }

        let zero = s.with_values(&|_, _| c(0.0, 0.0));
        let fit = fit_rational(&zero, &diag(), 1, (2, 2)).unwrap();
        assert!(fit.max_coefficient() <= 1e-10);
    }

    #[test]
    fn too_few_samples() {
        let x = standard();
        let strat = SamplingStrategy { per_branch: [5, 4], ..Default::default() };
        let s = sample_cross(&inv_diff, &x, &diag(), &strat).unwrap();
        assert!(matches!(fit_rational(&s, &diag(), 1, (2, 1)), Err(Error::Sampling(_))));
    }

    #[test]
    fn uniqueness_from_product_data() {
        let x = standard();
        let strat = SamplingStrategy::default();
        let u = uniqueness_residual(&x, &diag(), 1, (2, 2), &strat).unwrap();
        assert!(u.residual <= 1e-10);
        let u = uniqueness_residual(&x, &diag(), 1, (0, 0), &strat).unwrap();
        assert!(u.residual <= 1e-14);
    }

    #[test]
    fn collapsed_base_needs_enough_z_values() {
        let ws: Vec<Complex64> = (0..40).map(|k| Complex64::from_polar(0.2, k as f64 * 0.37)).collect();
        let pts = |zs: &[Complex64]| -> Vec<[Complex64; 2]> {
            zs.iter().flat_map(|&z| ws.iter().map(move |&w| [z, w])).collect()
        };
        let two = pts(&[c(0.1, 0.0), c(-0.1, 0.05)]);
        let u = uniqueness_residual_from_points(&two, &diag(), 1, (2, 2)).unwrap();
        assert!(u.residual.is_infinite());
        let three = pts(&[c(0.1, 0.0), c(-0.1, 0.05), c(0.0, -0.12)]);
        let u = uniqueness_residual_from_points(&three, &diag(), 1, (2, 2)).unwrap();
        assert!(u.residual <= 1e-10);
    }

    #[test]
    fn cauchy_examples() {
        let v = cauchy_reconstruct(&|z: Complex64, w: Complex64| z * w, (c(0.1, 0.0), c(0.2, 0.0)), (0.3, 0.3), 32)
            .unwrap();
        assert!((v - 0.02).norm() <= 1e-10);
        let v = cauchy_reconstruct(&inv_diff, (c(0.0, 0.0), c(0.8, 0.0)), (0.2, 0.2), 64).unwrap();
        assert!((v + 1.25).norm() <= 1e-8);
        let v = cauchy_reconstruct(
            &|z: Complex64, w: Complex64| z.sin() * w.exp(),
            (c(0.0, 0.0), c(0.0, 0.0)),
            (0.5, 0.5),
            32,
        )
        .unwrap();
        assert!(v.norm() <= 1e-9);
        assert!(cauchy_reconstruct(&inv_diff, (c(0.0, 0.0), c(0.0, 0.0)), (0.2, 0.2), 16).is_err());
    }

    #[test]
    fn torus_through_the_pole_does_not_converge() {
        // |z − w| comes arbitrarily close to 0 on this torus.
        let r = cauchy_reconstruct(&inv_diff, (c(0.0, 0.0), c(0.4, 0.0)), (0.2, 0.2), 32);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
