//! Relative extremal functions of planar condensers.
//!
//! In the plane plurisubharmonic means subharmonic, so `h*_{A,Ω}` is the
//! harmonic measure of `∂Ω` in `Ω \ A`. The grid solver computes the largest
//! discrete subharmonic minorant of the obstacle (0 on `A`, 1 elsewhere)
//! with projected over-relaxed Gauss–Seidel. [`mc_exit_probability`] is an
//! independent walk-on-spheres estimate of the same quantity.

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{exhaustion, rasterize, DomainSpec, Grid, Mask, SetSpec};

/// Field of values in `[0, 1]` on the nodes of `domain`; `NaN` elsewhere.
#[derive(Debug, Clone)]
pub struct ScalarField {
    pub grid: Grid,
    pub domain: Mask,
    /// The set the field was solved against; values vanish there.
    pub a_mask: Mask,
    pub values: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

impl ScalarField {
    pub fn value(&self, idx: usize) -> Option<f64> {
        self.domain.get(idx).then(|| self.values[idx])
    }

    /// Bilinear interpolation; `None` unless all four surrounding nodes are
    /// in the domain.
    pub fn sample(&self, z: Complex64) -> Option<f64> {
        let g = &self.grid;
        let fx = (z.re - g.min.re) / g.dx();
        let fy = (z.im - g.min.im) / g.dy();
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let (i, j) = (fx.floor() as usize, fy.floor() as usize);
        let (i, j) = (i.min(g.nx - 2), j.min(g.ny - 2));
        let (tx, ty) = (fx - i as f64, fy - j as f64);
        if tx > 1.0 || ty > 1.0 {
            return None;
        }
        let v = |a: usize, b: usize| self.value(g.index(a, b));
        let (v00, v10, v01, v11) = (v(i, j)?, v(i + 1, j)?, v(i, j + 1)?, v(i + 1, j + 1)?);
        Some(
            v00 * (1.0 - tx) * (1.0 - ty)
                + v10 * tx * (1.0 - ty)
                + v01 * (1.0 - tx) * ty
                + v11 * tx * ty,
        )
    }

    pub fn max(&self) -> f64 {
        self.defined().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.defined().fold(f64::INFINITY, f64::min)
    }

    fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().zip(&self.domain.flags).filter(|(_, &d)| d).map(|(&v, _)| v)
    }

    /// CSV: header `nx,ny,x0,y0,x1,y1` with its values on the next line,
    /// then one row of values per grid row, `NaN` outside the domain.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let g = &self.grid;
        writeln!(out, "nx,ny,x0,y0,x1,y1")?;
        writeln!(
            out,
            "{},{},{:e},{:e},{:e},{:e}",
            g.nx, g.ny, g.min.re, g.min.im, g.max.re, g.max.im
        )?;
        for (row, dom) in self.values.chunks(g.nx).zip(self.domain.flags.chunks(g.nx)) {
            let line: Vec<String> = row
                .iter()
                .zip(dom)
                .map(|(&v, &d)| if d { format!("{v:.17e}") } else { "NaN".into() })
                .collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    /// Plain PGM heatmap, `value * 255`, 0 outside the domain.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let g = &self.grid;
        writeln!(out, "P2\n{} {}\n255", g.nx, g.ny)?;
        for (row, dom) in self.values.chunks(g.nx).zip(self.domain.flags.chunks(g.nx)).rev() {
            let line: Vec<String> = row
                .iter()
                .zip(dom)
                .map(|(&v, &d)| if d { ((v * 255.0).round() as u8).to_string() } else { "0".into() })
                .collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveParams {
    /// Bound on the remaining sup-norm error, estimated from the last sweep
    /// change and the contraction rate of the sweep.
    pub tol: f64,
    /// `None` picks `200 * max(nx, ny)`.
    pub max_iter: Option<usize>,
    /// Over-relaxation factor in `[1, 2)`; `None` picks the optimal factor
    /// for the bounding grid.
    pub relaxation: Option<f64>,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams { tol: 1e-7, max_iter: None, relaxation: None }
    }
}

impl SolveParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config("tol must be positive".into()));
        }
        if self.max_iter == Some(0) {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if let Some(w) = self.relaxation {
            if !(1.0..2.0).contains(&w) {
                return Err(Error::Config(format!("relaxation must lie in [1, 2), got {w}")));
            }
        }
        Ok(())
    }
}

/// Asymptotic contraction of SOR for the 5-point Laplacian with Jacobi
/// radius `mu`.
fn sor_contraction(omega: f64, mu: f64) -> f64 {
    let disc = omega * omega * mu * mu - 4.0 * (omega - 1.0);
    if disc <= 0.0 {
        omega - 1.0
    } else {
        let r = 0.5 * (omega * mu + disc.sqrt());
        r * r
    }
}

/// Five-point stencil of one free node: weights of the west, east, south
/// and north array neighbours plus a constant from boundary crossings.
#[derive(Debug, Clone, Copy)]
struct Stencil {
    k: [f64; 4],
    b: f64,
}

/// Where the segment from `from` (inside) towards `to` first meets the
/// boundary, as a fraction of its length. `inside` must hold at `from`.
fn crossing(from: Complex64, to: Complex64, inside: impl Fn(Complex64) -> bool) -> f64 {
    if inside(to) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if inside(from + (to - from) * mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // keeps coefficients bounded when a node sits on the boundary
    hi.max(1e-3)
}

/// Shortley–Weller weights: neighbour `d` at distance `h[d]` carries the
/// value `fixed[d]` if it is a boundary crossing, the array value otherwise.
fn fitted_stencil(h: [f64; 4], fixed: [Option<f64>; 4]) -> Stencil {
    let c = [
        2.0 / (h[0] * (h[0] + h[1])),
        2.0 / (h[1] * (h[0] + h[1])),
        2.0 / (h[2] * (h[2] + h[3])),
        2.0 / (h[3] * (h[2] + h[3])),
    ];
    let total: f64 = c.iter().sum();
    let mut st = Stencil { k: [0.0; 4], b: 0.0 };
    for d in 0..4 {
        match fixed[d] {
            Some(v) => st.b += c[d] * v / total,
            None => st.k[d] = c[d] / total,
        }
    }
    st
}

/// Boundary geometry used to place Dirichlet data between nodes.
struct Fitted<'a> {
    omega: &'a DomainSpec,
    a: &'a SetSpec,
}

/// Solves the discrete obstacle problem for `h*_{A,Ω}`.
///
/// Nodes of `a_mask` are pinned to 0; every other domain node is free. A
/// neighbour outside the domain (or off the grid) contributes the boundary
/// value 1.
pub fn solve_relative_extremal(
    omega_mask: &Mask,
    a_mask: &Mask,
    params: &SolveParams,
) -> Result<ScalarField> {
    solve_core(omega_mask, a_mask, params, None)
}

fn solve_core(
    omega_mask: &Mask,
    a_mask: &Mask,
    params: &SolveParams,
    fitted: Option<Fitted>,
) -> Result<ScalarField> {
    params.validate()?;
    let grid = omega_mask.grid;
    if a_mask.grid != grid {
        return Err(Error::InvalidGeometry("A and Ω masks live on different grids".into()));
    }
    if a_mask.count() == 0 {
        return Err(Error::EmptyA);
    }
    if !a_mask.is_subset_of(omega_mask) {
        return Err(Error::InvalidGeometry("A mask is not contained in Ω mask".into()));
    }

    // padded layout: one ghost ring of boundary value 1
    let (nx, ny) = (grid.nx, grid.ny);
    let w = nx + 2;
    let pad = |idx: usize| {
        let (i, j) = grid.coords(idx);
        (j + 1) * w + i + 1
    };
    let (dx, dy) = (grid.dx(), grid.dy());
    let regular = fitted_stencil([dx, dx, dy, dy], [None; 4]);
    let mut u = vec![1.0f64; w * (ny + 2)];
    let mut free: Vec<(usize, Stencil)> = Vec::new();
    for idx in 0..grid.len() {
        if a_mask.get(idx) {
            u[pad(idx)] = 0.0;
        } else if omega_mask.get(idx) {
            let mut st = regular;
            if let Some(geo) = &fitted {
                let (i, j) = grid.coords(idx);
                let z = grid.point(idx);
                let steps = [(-1, 0, dx), (1, 0, dx), (0, -1, dy), (0, 1, dy)];
                let mut h = [dx, dx, dy, dy];
                let mut fixed = [None; 4];
                for (d, &(di, dj, len)) in steps.iter().enumerate() {
                    let (qi, qj) = (i as i64 + di, j as i64 + dj);
                    let on_grid = qi >= 0 && qj >= 0 && (qi as usize) < nx && (qj as usize) < ny;
                    let q = on_grid.then(|| grid.index(qi as usize, qj as usize));
                    let target = z + Complex64::new(di as f64 * dx, dj as f64 * dy);
                    match q {
                        Some(q) if a_mask.get(q) => {
                            h[d] = len * crossing(z, target, |x| !geo.a.contains(x));
                            fixed[d] = Some(0.0);
                        }
                        Some(q) if !omega_mask.get(q) => {
                            h[d] = len * crossing(z, target, |x| geo.omega.contains(x));
                            fixed[d] = Some(1.0);
                        }
                        Some(_) => {}
                        None => fixed[d] = Some(1.0),
                    }
                }
                if fixed.iter().any(Option::is_some) {
                    st = fitted_stencil(h, fixed);
                }
            }
            free.push((pad(idx), st));
        }
    }

    let n = nx.max(ny) as f64;
    let mu = 0.5 * ((std::f64::consts::PI / (nx - 1) as f64).cos()
        + (std::f64::consts::PI / (ny - 1) as f64).cos());
    let omega = params
        .relaxation
        .unwrap_or_else(|| 2.0 / (1.0 + (1.0 - mu * mu).sqrt()));
    let rho = sor_contraction(omega, mu).min(1.0 - 1e-12);
    let max_iter = params.max_iter.unwrap_or(200 * n as usize);

    let mut change = 0.0;
    for sweep in 1..=max_iter {
        change = 0.0f64;
        for &(p, st) in &free {
            let avg = st.k[0] * u[p - 1] + st.k[1] * u[p + 1] + st.k[2] * u[p - w] + st.k[3] * u[p + w] + st.b;
            let old = u[p];
            let new = (old + omega * (avg - old)).min(1.0);
            change = change.max((new - old).abs());
            u[p] = new;
        }
        if change * rho / (1.0 - rho) < params.tol {
            let mut values = vec![f64::NAN; grid.len()];
            for idx in 0..grid.len() {
                if omega_mask.get(idx) {
                    values[idx] = u[pad(idx)].clamp(0.0, 1.0);
                }
            }
            return Ok(ScalarField {
                grid,
                domain: omega_mask.clone(),
                a_mask: a_mask.clone(),
                values,
                iterations: sweep,
                residual: change,
            });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, residual: change })
}

/// Rasterizes both specs and solves, placing the boundary data of `∂Ω` and
/// `∂A` at their true crossings between nodes (Shortley–Weller stencil).
pub fn solve_specs(
    omega: &DomainSpec,
    a: &SetSpec,
    grid: &Grid,
    params: &SolveParams,
) -> Result<ScalarField> {
    let omega_mask = rasterize(omega, grid)?;
    let a_mask = rasterize(a, grid)?.and(&omega_mask);
    solve_core(&omega_mask, &a_mask, params, Some(Fitted { omega, a }))
}

/// Discrete upper semicontinuous regularization.
///
/// A node off `A` lying strictly below all of its in-domain, off-`A`
/// 3x3 neighbours is raised to the smallest of them. Isolated dips are the
/// only grid artifact an u.s.c. envelope can remove, and the operation is
/// idempotent.
pub fn regularize_usc(field: &ScalarField) -> ScalarField {
    let grid = &field.grid;
    let mut out = field.clone();
    for idx in 0..grid.len() {
        if !field.domain.get(idx) || field.a_mask.get(idx) {
            continue;
        }
        let lowest = grid
            .neighbors8(idx)
            .filter(|&q| field.domain.get(q) && !field.a_mask.get(q))
            .map(|q| field.values[q])
            .fold(f64::INFINITY, f64::min);
        if lowest.is_finite() && field.values[idx] < lowest {
            out.values[idx] = lowest;
        }
    }
    for idx in 0..grid.len() {
        if field.a_mask.get(idx) {
            out.values[idx] = 0.0;
        }
    }
    out
}

/// Iterates of the exhaustion and their monotonicity report.
#[derive(Debug, Clone)]
pub struct OmegaLimit {
    /// `h*` on `Ω_k`, `k = 1..=k_max`.
    pub iterates: Vec<ScalarField>,
    /// `max(u_{k+1} - u_k)` over nodes where both are defined; entry `k-1`
    /// compares iterates `k` and `k+1`.
    pub max_increase: Vec<f64>,
}

impl OmegaLimit {
    pub fn field(&self) -> &ScalarField {
        self.iterates.last().expect("at least two iterates")
    }
}

/// Approximates `ω_{A,Ω}` by `h*_{A∩Ω_k, Ω_k}` over the fixed exhaustion.
pub fn omega_limit(
    omega: &DomainSpec,
    a: &SetSpec,
    grid: &Grid,
    k_max: usize,
    params: &SolveParams,
) -> Result<OmegaLimit> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    let a_full = rasterize(a, grid)?;
    let mut iterates: Vec<ScalarField> = Vec::with_capacity(k_max);
    let mut max_increase = Vec::with_capacity(k_max - 1);
    for k in 1..=k_max {
        let omega_spec = exhaustion(omega, k)?;
        let omega_k = rasterize(&omega_spec, grid)?;
        let a_k = a_full.and(&omega_k);
        let field = solve_core(&omega_k, &a_k, params, Some(Fitted { omega: &omega_spec, a }))?;
        if let Some(prev) = iterates.last() {
            let inc = (0..grid.len())
                .filter(|&i| prev.domain.get(i) && field.domain.get(i))
                .map(|i| field.values[i] - prev.values[i])
                .fold(f64::NEG_INFINITY, f64::max);
            if inc > 5.0 * params.tol {
                return Err(Error::ExhaustionInconsistency { k, prev: k - 1, excess: inc });
            }
            max_increase.push(inc);
        }
        iterates.push(field);
    }
    Ok(OmegaLimit { iterates, max_increase })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub censored: usize,
}

/// Longest walk before it is censored.
const MAX_WALK_STEPS: usize = 100_000;

enum WalkEnd {
    Boundary,
    SetA,
    Censored,
}

fn walk(mut x: Complex64, omega: &DomainSpec, a: &SetSpec, capture: f64, rng: &mut ChaCha8Rng) -> WalkEnd {
    for _ in 0..MAX_WALK_STEPS {
        let to_boundary = -omega.sdf(x);
        let to_a = a.sdf(x);
        if to_boundary.min(to_a) <= capture {
            return if to_boundary <= to_a { WalkEnd::Boundary } else { WalkEnd::SetA };
        }
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        x += Complex64::from_polar(to_boundary.min(to_a), theta);
    }
    WalkEnd::Censored
}

/// Walk-on-spheres estimate of the probability that Brownian motion from
/// `z` leaves `Ω` before hitting `A`, which equals `ω_{A,Ω}(z)`.
///
/// Walk `t` draws from a ChaCha stream keyed by `(seed, t)`, so the result
/// does not depend on scheduling. Capture width is `1e-3 * diam(Ω)`.
pub fn mc_exit_probability(
    z: Complex64,
    omega: &DomainSpec,
    a: &SetSpec,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    omega.validate()?;
    a.validate()?;
    if n < 100 {
        return Err(Error::InvalidArgument("need at least 100 walks".into()));
    }
    if !omega.contains(z) || a.contains(z) {
        return Err(Error::OutsideDomain(format!("{z}")));
    }
    let capture = 1e-3 * omega.diameter();
    let (exits, censored) = (0..n as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            match walk(z, omega, a, capture, &mut rng) {
                WalkEnd::Boundary => (1usize, 0usize),
                WalkEnd::SetA => (0, 0),
                WalkEnd::Censored => (0, 1),
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if censored * 100 > n {
        return Err(Error::TooManyCensored { censored, total: n });
    }
    let m = (n - censored) as f64;
    let mean = exits as f64 / m;
    Ok(McEstimate {
        mean,
        std_error: (mean * (1.0 - mean) / m).sqrt(),
        n_samples: n - censored,
        seed,
        censored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn annulus_case(n: usize) -> ScalarField {
        let grid = Grid::square(1.1, n).unwrap();
        solve_specs(
            &DomainSpec::disc(c(0.0, 0.0), 1.0),
            &SetSpec::disc(c(0.0, 0.0), 0.25),
            &grid,
            &SolveParams::default(),
        )
        .unwrap()
    }

    #[test]
    fn condenser_value_at_half_radius() {
        let f = annulus_case(257);
        let v = f.sample(c(0.5, 0.0)).unwrap();
        assert!((v - 0.5).abs() <= 0.02, "{v}");
        let v = f.sample(c(0.0, -0.5)).unwrap();
        assert!((v - 0.5).abs() <= 0.02, "{v}");
    }

    #[test]
    fn a_equal_to_omega_gives_zero() {
        let grid = Grid::square(1.1, 33).unwrap();
        let m = rasterize(&DomainSpec::disc(c(0.0, 0.0), 1.0), &grid).unwrap();
        let f = solve_relative_extremal(&m, &m, &SolveParams::default()).unwrap();
        assert_eq!(f.max(), 0.0);
    }

    #[test]
    fn values_stay_below_one_when_a_meets_the_domain() {
        let grid = Grid::square(1.1, 65).unwrap();
        let f = solve_specs(
            &DomainSpec::disc(c(0.0, 0.0), 1.0),
            &SetSpec::disc(c(0.5, 0.0), 0.2),
            &grid,
            &SolveParams::default(),
        )
        .unwrap();
        assert!(f.max() < 1.0);
        assert!(f.min() == 0.0);
    }

    #[test]
    fn empty_a_and_nonconvergence() {
        let grid = Grid::square(1.1, 33).unwrap();
        let m = rasterize(&DomainSpec::disc(c(0.0, 0.0), 1.0), &grid).unwrap();
        let empty = Mask::new(grid, vec![false; grid.len()]);
        assert!(matches!(
            solve_relative_extremal(&m, &empty, &SolveParams::default()),
            Err(Error::EmptyA)
        ));
        let a = rasterize(&SetSpec::disc(c(0.0, 0.0), 0.2), &grid).unwrap();
        let params = SolveParams { max_iter: Some(3), ..SolveParams::default() };
        match solve_relative_extremal(&m, &a, &params) {
            Err(Error::NoConvergence { iterations, residual }) => {
                assert_eq!(iterations, 3);
                assert!(residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn plain_gauss_seidel_agrees_with_over_relaxation() {
        let grid = Grid::square(1.1, 41).unwrap();
        let (d, a) = (DomainSpec::disc(c(0.0, 0.0), 1.0), SetSpec::disc(c(0.2, 0.1), 0.3));
        let fast = solve_specs(&d, &a, &grid, &SolveParams::default()).unwrap();
        let slow = solve_specs(
            &d,
            &a,
            &grid,
            &SolveParams { relaxation: Some(1.0), tol: 1e-9, max_iter: Some(200_000) },
        )
        .unwrap();
        let diff = fast
            .values
            .iter()
            .zip(&slow.values)
            .filter(|(a, _)| a.is_finite())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-6, "{diff}");
        assert!(fast.iterations < slow.iterations);
    }

    #[test]
    fn usc_regularization() {
        let f = annulus_case(65);
        let mut flat = f.clone();
        for (v, &d) in flat.values.iter_mut().zip(&f.domain.flags) {
            if d {
                *v = 0.7;
            }
        }
        for idx in 0..flat.grid.len() {
            if flat.a_mask.get(idx) {
                flat.values[idx] = 0.0;
            }
        }
        let reg = regularize_usc(&flat);
        assert_eq!(reg.values.iter().filter(|v| v.is_finite()).count(),
                   flat.values.iter().filter(|v| v.is_finite()).count());
        for (a, b) in reg.values.iter().zip(&flat.values) {
            assert!(a == b || (a.is_nan() && b.is_nan()));
        }

        let mut dipped = f.clone();
        let p = f.grid.nearest(c(0.6, 0.0)).unwrap();
        dipped.values[p] -= 0.3;
        let fixed = regularize_usc(&dipped);
        assert!(fixed.values[p] >= f.values[p] - 0.05);
        let again = regularize_usc(&fixed);
        for (a, b) in again.values.iter().zip(&fixed.values) {
            assert!(a == b || (a.is_nan() && b.is_nan()));
        }
    }

    #[test]
    fn usc_change_bounded_by_gradient() {
        let f = annulus_case(129);
        let reg = regularize_usc(&f);
        let g = &f.grid;
        let mut grad: f64 = 0.0;
        for idx in 0..g.len() {
            if !f.domain.get(idx) {
                continue;
            }
            for q in g.neighbors4(idx) {
                if f.domain.get(q) {
                    grad = grad.max((f.values[q] - f.values[idx]).abs() / g.spacing());
                }
            }
        }
        let change = reg
            .values
            .iter()
            .zip(&f.values)
            .filter(|(a, _)| a.is_finite())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(change <= 2.0 * g.spacing() * grad, "{change} vs {grad}");
    }

    #[test]
    fn walk_on_spheres_edge_cases() {
        let d = DomainSpec::disc(c(0.0, 0.0), 1.0);
        let a = SetSpec::disc(c(0.0, 0.0), 0.25);
        let near_a = mc_exit_probability(c(0.2505, 0.0), &d, &a, 1000, 3).unwrap();
        assert!(near_a.mean < 0.01, "{near_a:?}");
        let near_edge = mc_exit_probability(c(0.0, 0.9995), &d, &a, 1000, 3).unwrap();
        assert!(near_edge.mean > 0.99, "{near_edge:?}");
        assert!(mc_exit_probability(c(0.1, 0.0), &d, &a, 1000, 3).is_err());
        assert!(mc_exit_probability(c(1.5, 0.0), &d, &a, 1000, 3).is_err());
        assert!(mc_exit_probability(c(0.5, 0.0), &d, &a, 10, 3).is_err());
    }

    #[test]
    fn walk_on_spheres_matches_condenser_formula() {
        let d = DomainSpec::disc(c(0.0, 0.0), 1.0);
        let a = SetSpec::disc(c(0.0, 0.0), 0.25);
        let est = mc_exit_probability(c(0.5, 0.0), &d, &a, 20_000, 11).unwrap();
        let exact = (4.0f64 * 0.5).ln() / 4.0f64.ln();
        assert!((est.mean - exact).abs() <= 3.0 * est.std_error + 0.02, "{est:?}");
        assert!(est.std_error <= 0.5 / (est.n_samples as f64).sqrt() + 1e-12);
        let again = mc_exit_probability(c(0.5, 0.0), &d, &a, 20_000, 11).unwrap();
        assert_eq!(est, again);
    }
}
