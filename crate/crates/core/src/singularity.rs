//! The singular set `M`: fibers, branch locus and its trace on an envelope.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cross::ProductMask;
use crate::error::{Error, Result};
use crate::poly::{sort_lex, BiPoly, Poly};

/// Algebraic singular set.
///
/// JSON: `{"poly": [[c00, c01, ...], ...]}` (row = power of `z`, column =
/// power of `w`), `{"graphs": [[c0, c1, ...], ...]}` for graphs
/// `w = Σ c_k z^k`, or `{"points": [[z, w], ...]}` for a finite set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SingularSet {
    Poly(BiPoly),
    Graphs(Vec<Vec<Complex64>>),
    /// Zero-dimensional set. Its defining polynomial for fitting is 1.
    Points(Vec<[Complex64; 2]>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberResult {
    pub roots: Vec<FiberRoot>,
    /// The whole line lies in `M`.
    pub degenerate: bool,
}

impl FiberResult {
    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Smallest distance between two roots counted with multiplicity
    /// (0 for a repeated root, `inf` with fewer than two roots).
    pub fn min_gap(&self) -> f64 {
        if self.roots.iter().any(|r| r.multiplicity > 1) {
            return 0.0;
        }
        let v = self.values();
        let mut gap = f64::INFINITY;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                gap = gap.min((v[i] - v[j]).norm());
            }
        }
        gap
    }
}

/// Roots closer than this (relative) are merged into one with multiplicity.
const CLUSTER_TOL: f64 = 1e-6;

fn cluster(mut roots: Vec<Complex64>) -> Vec<FiberRoot> {
    sort_lex(&mut roots);
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut members = vec![roots[i]];
        used[i] = true;
        for j in i + 1..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() <= CLUSTER_TOL * (1.0 + roots[i].norm()) {
                used[j] = true;
                members.push(roots[j]);
            }
        }
        let value = members.iter().sum::<Complex64>() / members.len() as f64;
        out.push(FiberRoot { value, multiplicity: members.len() });
    }
    out
}

fn slice_roots(slice: &Poly, scale: f64) -> Result<FiberResult> {
    if slice.scale() <= 1e-12 * scale {
        return Ok(FiberResult { roots: Vec::new(), degenerate: true });
    }
    let roots = slice.roots()?;
    let residuals: Vec<f64> = roots.iter().map(|&r| slice.eval(r).norm()).collect();
    let allowed = |r: Complex64| {
        1e-8 * slice.coeffs.iter().enumerate().map(|(k, c)| c.norm() * r.norm().powi(k as i32)).sum::<f64>()
    };
    if roots.iter().zip(&residuals).any(|(&r, &res)| res > allowed(r)) {
        return Err(Error::RootFinding { residuals });
    }
    Ok(FiberResult { roots: cluster(roots), degenerate: false })
}

impl SingularSet {
    pub fn validate(&self) -> Result<()> {
        match self {
            SingularSet::Poly(p) if p.is_zero() => {
                Err(Error::InvalidPolynomial("P is identically zero (M = U)".into()))
            }
            SingularSet::Graphs(gs) => {
                if gs.is_empty() {
                    return Err(Error::InvalidPolynomial("empty graph list".into()));
                }
                for i in 0..gs.len() {
                    for j in i + 1..gs.len() {
                        let (a, b) = (Poly::new(gs[i].clone()), Poly::new(gs[j].clone()));
                        let n = a.coeffs.len().max(b.coeffs.len());
                        let same = (0..n).all(|k| {
                            a.coeffs.get(k).copied().unwrap_or_default()
                                == b.coeffs.get(k).copied().unwrap_or_default()
                        });
                        if same {
                            return Err(Error::InvalidPolynomial("repeated graph".into()));
                        }
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Defining polynomial of the one-dimensional part.
    pub fn polynomial(&self) -> BiPoly {
        match self {
            SingularSet::Poly(p) => p.clone(),
            SingularSet::Graphs(gs) => gs
                .iter()
                .map(|g| BiPoly::graph(&Poly::new(g.clone())))
                .fold(BiPoly::constant(Complex64::new(1.0, 0.0)), |acc, g| acc.mul(&g)),
            SingularSet::Points(_) => BiPoly::constant(Complex64::new(1.0, 0.0)),
        }
    }

    /// `M_z`: the roots of `w ↦ P(z, w)`.
    pub fn fiber_w(&self, z: Complex64) -> Result<FiberResult> {
        match self {
            SingularSet::Poly(p) => slice_roots(&p.slice_w(z), p.scale()),
            SingularSet::Graphs(gs) => Ok(FiberResult {
                roots: cluster(gs.iter().map(|g| Poly::new(g.clone()).eval(z)).collect()),
                degenerate: false,
            }),
            SingularSet::Points(pts) => Ok(FiberResult {
                roots: cluster(pts.iter().filter(|p| p[0] == z).map(|p| p[1]).collect()),
                degenerate: false,
            }),
        }
    }

    /// `M^w`: the roots of `z ↦ P(z, w)`.
    pub fn fiber_z(&self, w: Complex64) -> Result<FiberResult> {
        match self {
            SingularSet::Poly(p) => slice_roots(&p.slice_z(w), p.scale()),
            SingularSet::Graphs(gs) => {
                let mut roots = Vec::new();
                for g in gs {
                    let mut shifted = g.clone();
                    if shifted.is_empty() {
                        shifted.push(Complex64::default());
                    }
                    shifted[0] -= w;
                    let q = Poly::new(shifted);
                    let fib = slice_roots(&q, q.scale())?;
                    if fib.degenerate {
                        return Ok(fib);
                    }
                    for r in fib.roots {
                        roots.extend(std::iter::repeat_n(r.value, r.multiplicity));
                    }
                }
                Ok(FiberResult { roots: cluster(roots), degenerate: false })
            }
            SingularSet::Points(pts) => Ok(FiberResult {
                roots: cluster(pts.iter().filter(|p| p[1] == w).map(|p| p[0]).collect()),
                degenerate: false,
            }),
        }
    }
}

/// Branch locus of a polynomial singular set.
#[derive(Debug, Clone)]
pub struct BranchLocus {
    /// Deduplicated `z` values, ordered lexicographically.
    pub points: Vec<Complex64>,
    /// `w`-degree of `gcd(P, ∂P/∂w)` for generic `z`: 0 when `P` is square
    /// free, otherwise the locus is that of the square-free part.
    pub repeated_degree: usize,
    /// The nonvanishing principal subresultant (the discriminant when
    /// `repeated_degree == 0`), in ascending powers of `z`.
    pub discriminant: Poly,
}

fn principal_subresultant(a: &[Complex64], b: &[Complex64], j: usize) -> Complex64 {
    // a, b ascending coefficients with formal degrees m, n
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n - 2 * j;
    let mut mat = DMatrix::<Complex64>::zeros(size, size);
    // column c holds the coefficient of x^(m+n-j-1-c)
    let top = m + n - j - 1;
    let mut row = 0;
    for (poly, deg, shifts) in [(a, m, n - j), (b, n, m - j)] {
        for k in (0..shifts).rev() {
            for (p, &coef) in poly.iter().enumerate().take(deg + 1) {
                let d = p + k;
                if d <= top && top - d < size {
                    mat[(row, top - d)] = coef;
                }
            }
            row += 1;
        }
    }
    mat.determinant()
}

fn hadamard_bound(a: &[Complex64], b: &[Complex64], j: usize) -> f64 {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let na = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    na.max(1e-300).powi((n - j) as i32) * nb.max(1e-300).powi((m - j) as i32)
}

/// Newton on `P = ∂P/∂w = 0` from `z0` and the midpoint of the closest pair
/// of fiber roots. Keeps `z0` when the iteration wanders off.
fn refine_branch_point(p: &BiPoly, pw: &BiPoly, z0: Complex64) -> Complex64 {
    let Ok(roots) = p.slice_w(z0).roots() else { return z0 };
    let mut pair = None;
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < gap {
                gap = (roots[i] - roots[j]).norm();
                pair = Some(0.5 * (roots[i] + roots[j]));
            }
        }
    }
    let Some(w0) = pair else { return z0 };
    let (pz, pwz, pww) = (p.d_dz(), pw.d_dz(), pw.d_dw());
    let (mut z, mut w) = (z0, w0);
    for _ in 0..50 {
        let (f1, f2) = (p.eval(z, w), pw.eval(z, w));
        // Jacobian [[P_z, P_w], [P_wz, P_ww]]
        let (a, b, c, d) = (pz.eval(z, w), f2, pwz.eval(z, w), pww.eval(z, w));
        let det = a * d - b * c;
        if det.norm() == 0.0 {
            break;
        }
        let dz = (f1 * d - b * f2) / det;
        let dw = (a * f2 - c * f1) / det;
        z -= dz;
        w -= dw;
        if !z.is_finite() || (z - z0).norm() > 1e-3 * (1.0 + z0.norm()) {
            return z0;
        }
        if dz.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// `z`-projection of `{P = ∂P/∂w = 0}` together with the zeros of the
/// leading `w`-coefficient.
///
/// The principal subresultant coefficients of `P(z,·)` and `∂P/∂w(z,·)` are
/// recovered as polynomials in `z` by evaluating Sylvester minors on the
/// unit circle and interpolating. The first one that does not vanish
/// identically is the discriminant of the square-free part.
pub fn branch_locus(m: &SingularSet) -> Result<BranchLocus> {
    if let SingularSet::Points(_) = m {
        return Err(Error::InvalidPolynomial("branch locus needs a curve".into()));
    }
    m.validate()?;
    let p = m.polynomial();
    let p = p.scaled(Complex64::new(1.0 / p.scale(), 0.0));
    let (dz, _) = p.degrees();
    let dw = (0..=p.degrees().1)
        .rev()
        .find(|&j| p.column(j).iter().any(|c| c.norm() > 0.0))
        .unwrap_or(0);
    if dw == 0 {
        return Err(Error::InvalidPolynomial("P does not depend on w".into()));
    }
    let dp = p.d_dw();

    let mut points = Vec::new();
    let lead = Poly::new(p.column(dw)).trimmed(1e-14);
    if lead.degree().unwrap_or(0) > 0 {
        points.extend(lead.roots()?);
    }

    let mut found = None;
    for j in 0..dw {
        let size = 2 * dw - 1 - 2 * j;
        let n_nodes = dz * size + 1;
        let mut values = Vec::with_capacity(n_nodes);
        let mut bound: f64 = 0.0;
        for k in 0..n_nodes {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n_nodes as f64);
            let a: Vec<Complex64> = (0..=dw).map(|q| Poly::new(p.column(q)).eval(z)).collect();
            let b: Vec<Complex64> = (0..dw).map(|q| Poly::new(dp.column(q)).eval(z)).collect();
            bound = bound.max(hadamard_bound(&a, &b, j));
            values.push(principal_subresultant(&a, &b, j));
        }
        let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak <= 1e-10 * bound {
            continue;
        }
        let coeffs: Vec<Complex64> = (0..n_nodes)
            .map(|l| {
                values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        v * Complex64::from_polar(
                            1.0,
                            -std::f64::consts::TAU * (k * l) as f64 / n_nodes as f64,
                        )
                    })
                    .sum::<Complex64>()
                    / n_nodes as f64
            })
            .collect();
        found = Some((j, Poly::new(coeffs).trimmed(1e-12)));
        break;
    }
    let (repeated_degree, discriminant) = found
        .ok_or_else(|| Error::InvalidPolynomial("every subresultant vanishes".into()))?;
    if discriminant.degree().unwrap_or(0) > 0 {
        let roots = discriminant.roots()?;
        if repeated_degree == 0 {
            points.extend(roots.into_iter().map(|z| refine_branch_point(&p, &dp, z)));
        } else {
            points.extend(roots);
        }
    }
    let mut points = merge_clusters(&points);
    sort_lex(&mut points);
    Ok(BranchLocus { points, repeated_degree, discriminant })
}

/// Means of groups of points closer than `1e-6 (1 + |z|)`. A double
/// discriminant root at a node of `M` splits by about the square root of
/// the rounding error, and Newton stalls there.
fn merge_clusters(points: &[Complex64]) -> Vec<Complex64> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &z in points {
        let near = clusters.iter_mut().find(|(s, n)| (*s / *n as f64 - z).norm() <= 1e-6 * (1.0 + z.norm()));
        match near {
            Some((s, n)) => {
                *s += z;
                *n += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    clusters.into_iter().map(|(s, n)| s / n as f64).collect()
}

/// Grid surrogate of `M ∩ env`: product cells whose rectangle may meet `M`.
///
/// A cell is kept when `|P(center)|` is within the Lipschitz bound of `P`
/// (from coefficient norms over the grids' extent) times the distance from
/// the center to a cell corner. Zero-dimensional sets flag the cells that
/// contain their points.
pub fn envelope_trace(m: &SingularSet, env: &ProductMask) -> ProductMask {
    let (gz, gw) = (env.grid_z, env.grid_w);
    if let SingularSet::Points(pts) = m {
        let mut out = ProductMask::empty(gz, gw);
        for p in pts {
            if let (Some(iz), Some(iw)) = (gz.nearest(p[0]), gw.nearest(p[1])) {
                if env.get(iz, iw) {
                    out.set(iz, iw, true);
                }
            }
        }
        return out;
    }
    let p = m.polynomial();
    let extent = |g: &crate::geometry::Grid| {
        [g.min, g.max, crate::Complex64::new(g.min.re, g.max.im), crate::Complex64::new(g.max.re, g.min.im)]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    };
    let rz = 0.5 * gz.dx().hypot(gz.dy());
    let rw = 0.5 * gw.dx().hypot(gw.dy());
    let (lz, lw) = p.gradient_bound(extent(&gz) + rz, extent(&gw) + rw);
    let reach = lz * rz + lw * rw;
    let zs: Vec<Complex64> = gz.points().collect();
    ProductMask::from_rows(gz, gw, |iw, row| {
        let w = gw.point(iw);
        let slice = p.slice_z(w);
        for (iz, &z) in zs.iter().enumerate() {
            if env.get(iz, iw) && slice.eval(z).norm() <= reach {
                row.set(iz);
            }
        }
    })
}

/// Outcome of [`is_isolated_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Isolation {
    /// `M` meets the bidisc exactly in its center.
    pub isolated: bool,
    /// `M` misses the bidisc altogether.
    pub empty: bool,
}

/// Probe rings per bidisc and probes per ring.
const PROBE_RINGS: usize = 16;
const PROBES_PER_RING: usize = 64;

/// Decides whether `M ∩ (Δ_a(δ) × Δ_b(ε)) = {(a, b)}` by computing `w`-fibers
/// over concentric probe rings in `Δ_a(δ)` (and at `a` itself).
pub fn is_isolated_point(
    m: &SingularSet,
    center: (Complex64, Complex64),
    radii: (f64, f64),
) -> Result<Isolation> {
    let (a, b) = center;
    let (delta, eps) = radii;
    if let SingularSet::Points(pts) = m {
        let inside: Vec<_> =
            pts.iter().filter(|p| (p[0] - a).norm() < delta && (p[1] - b).norm() < eps).collect();
        return Ok(Isolation {
            isolated: !inside.is_empty() && inside.iter().all(|p| p[0] == a && p[1] == b),
            empty: inside.is_empty(),
        });
    }
    let tol = 1e-6 * (1.0 + b.norm());
    let mut hits = Vec::new();
    let mut probes = vec![a];
    for r in 1..PROBE_RINGS {
        let rad = delta * r as f64 / PROBE_RINGS as f64;
        probes.extend((0..PROBES_PER_RING).map(|k| {
            a + Complex64::from_polar(rad, std::f64::consts::TAU * k as f64 / PROBES_PER_RING as f64)
        }));
    }
    let results: Vec<Result<FiberResult>> = probes.par_iter().map(|&z| m.fiber_w(z)).collect();
    for (z, fib) in probes.iter().zip(results) {
        let fib = fib?;
        if fib.degenerate {
            return Ok(Isolation { isolated: false, empty: false });
        }
        hits.extend(fib.values().into_iter().filter(|w| (w - b).norm() < eps).map(|w| (*z, w)));
    }
    Ok(Isolation {
        isolated: !hits.is_empty()
            && hits.iter().all(|&(z, w)| (z - a).norm() <= tol && (w - b).norm() <= tol),
        empty: hits.is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w2_minus_z() -> SingularSet {
        SingularSet::Poly(BiPoly::from_real(&[&[0.0, 0.0, 1.0], &[-1.0]]))
    }

    #[test]
    fn fibers() {
        let diag = SingularSet::Poly(BiPoly::diagonal());
        assert_eq!(diag.fiber_w(c(0.3, 0.0)).unwrap().values(), vec![c(0.3, 0.0)]);
        assert_eq!(diag.fiber_z(c(0.3, 0.0)).unwrap().values(), vec![c(0.3, 0.0)]);

        let r = w2_minus_z().fiber_w(c(1.0, 0.0)).unwrap().values();
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-12 && (r[1] - c(1.0, 0.0)).norm() < 1e-12);
        let r = w2_minus_z().fiber_z(c(2.0, 0.0)).unwrap().values();
        assert!(r.len() == 1 && (r[0] - c(4.0, 0.0)).norm() < 1e-12);

        // (w - z) z
        let p = BiPoly::from_real(&[&[0.0], &[0.0, 1.0], &[-1.0]]);
        let fib = SingularSet::Poly(p).fiber_w(c(0.0, 0.0)).unwrap();
        assert!(fib.degenerate);

        let sq = SingularSet::Graphs(vec![vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]]);
        let r = sq.fiber_z(c(4.0, 0.0)).unwrap().values();
        assert!((r[0] - c(-2.0, 0.0)).norm() < 1e-12 && (r[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn double_root_is_clustered() {
        let fib = w2_minus_z().fiber_w(c(0.0, 0.0)).unwrap();
        assert_eq!(fib.roots.len(), 1);
        assert_eq!(fib.roots[0].multiplicity, 2);
        assert_eq!(fib.min_gap(), 0.0);
    }

    #[test]
    fn graphs_fiber_exactly() {
        let gs = vec![vec![c(0.1, 0.2), c(1.0, -1.0)], vec![c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]];
        let m = SingularSet::Graphs(gs.clone());
        for z in [c(0.3, 0.1), c(-0.7, 0.4)] {
            let mut want: Vec<_> = gs.iter().map(|g| Poly::new(g.clone()).eval(z)).collect();
            sort_lex(&mut want);
            let got = m.fiber_w(z).unwrap().values();
            for (a, b) in got.iter().zip(&want) {
                assert!((a - b).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn branch_locus_examples() {
        let bl = branch_locus(&w2_minus_z()).unwrap();
        assert_eq!(bl.points.len(), 1);
        assert!(bl.points[0].norm() <= 1e-9);
        assert_eq!(bl.repeated_degree, 0);

        let cubic = SingularSet::Graphs(vec![vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(branch_locus(&cubic).unwrap().points.is_empty());

        // (w - 1)(w - 2): resultant is a nonzero constant
        let p = SingularSet::Poly(BiPoly::from_real(&[&[2.0, -3.0, 1.0]]));
        let bl = branch_locus(&p).unwrap();
        assert!(bl.points.is_empty());
        assert_eq!(bl.discriminant.degree(), Some(0));
        // |Res| = (2/3)^2 |A(3/2)| for A = P / 3
        assert!((bl.discriminant.coeffs[0].norm() - 1.0 / 27.0).abs() < 1e-12);
    }

    #[test]
    fn branch_locus_of_non_square_free() {
        // (w^2 - z)^2: discriminant vanishes identically
        let p = BiPoly::from_real(&[&[0.0, 0.0, 1.0], &[-1.0]]).pow(2);
        let bl = branch_locus(&SingularSet::Poly(p)).unwrap();
        assert_eq!(bl.repeated_degree, 2);
        assert_eq!(bl.points.len(), 1);
        assert!(bl.points[0].norm() < 1e-8);
    }

    #[test]
    fn leading_coefficient_zeros_are_included() {
        // z w - 1: the fiber escapes to infinity at z = 0
        let p = BiPoly::from_real(&[&[-1.0], &[0.0, 1.0]]);
        let bl = branch_locus(&SingularSet::Poly(p)).unwrap();
        assert_eq!(bl.points.len(), 1);
        assert!(bl.points[0].norm() < 1e-12);
    }

    #[test]
    fn isolation() {
        let origin = (c(0.0, 0.0), c(0.0, 0.0));
        let pt = SingularSet::Points(vec![[c(0.0, 0.0), c(0.0, 0.0)], [c(0.5, 0.0), c(0.5, 0.0)]]);
        assert_eq!(is_isolated_point(&pt, origin, (0.1, 0.1)).unwrap(), Isolation { isolated: true, empty: false });
        let diag = SingularSet::Poly(BiPoly::diagonal());
        assert_eq!(is_isolated_point(&diag, origin, (0.1, 0.1)).unwrap(), Isolation { isolated: false, empty: false });
        // z^2 + w^2 = (w - iz)(w + iz) is a pair of lines through the origin
        let lines = SingularSet::Poly(BiPoly::from_real(&[&[0.0, 0.0, 1.0], &[0.0], &[1.0]]));
        assert!(!is_isolated_point(&lines, origin, (0.1, 0.1)).unwrap().isolated);
        let far = SingularSet::Poly(BiPoly::from_real(&[&[-1.0, 1.0]]));
        assert_eq!(is_isolated_point(&far, origin, (0.1, 0.5)).unwrap(), Isolation { isolated: false, empty: true });
    }

    #[test]
    fn json_forms() {
        let m: SingularSet = serde_json::from_str(r#"{"poly": [[[0,0],[-1,0]],[[1,0]]]}"#).unwrap();
        assert_eq!(m.polynomial(), BiPoly::diagonal());
        let g: SingularSet = serde_json::from_str(r#"{"graphs": [[[0,0],[0,0],[1,0]]]}"#).unwrap();
        assert!(matches!(g, SingularSet::Graphs(_)));
        assert!(serde_json::from_str::<SingularSet>(r#"{"polynomial": []}"#).is_err());
        assert!(SingularSet::Poly(BiPoly::constant(c(0.0, 0.0))).validate().is_err());
    }
}
