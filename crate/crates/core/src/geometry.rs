//! Constructive planar geometry.
//!
//! Open domains ([`DomainSpec`]) play the role of the factors `D`, `G` of a
//! cross, closed fat sets ([`SetSpec`]) play the role of the locally regular
//! sets `A`, `B`. Both rasterize onto a [`Grid`] as a [`Mask`] and expose a
//! conservative signed distance used by walk-on-spheres.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Open planar domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Disc {
        center: Complex64,
        radius: f64,
    },
    /// `r_in < |z - center| < r_out`; `r_in = 0` gives a punctured disc.
    Annulus {
        center: Complex64,
        r_in: f64,
        r_out: f64,
    },
    Rectangle {
        min: Complex64,
        max: Complex64,
    },
    Union {
        parts: Vec<DomainSpec>,
    },
    Intersection {
        parts: Vec<DomainSpec>,
    },
    /// `base` with a closed set removed, which keeps the result open.
    Difference {
        base: Box<DomainSpec>,
        remove: Box<SetSpec>,
    },
}

/// Closed planar set with interior.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Disc {
        center: Complex64,
        radius: f64,
    },
    Annulus {
        center: Complex64,
        r_in: f64,
        r_out: f64,
    },
    Rectangle {
        min: Complex64,
        max: Complex64,
    },
    Union {
        parts: Vec<SetSpec>,
    },
    /// A fat set with finitely many (polar) points removed. On a grid each
    /// removed point knocks out its nearest node.
    MinusPoints {
        set: Box<SetSpec>,
        points: Vec<Complex64>,
    },
}

fn check_round(center: Complex64, r_in: Option<f64>, r_out: f64) -> Result<()> {
    if !(center.re.is_finite() && center.im.is_finite()) {
        return Err(Error::InvalidGeometry("non-finite center".into()));
    }
    if !(r_out > 0.0 && r_out.is_finite()) {
        return Err(Error::InvalidGeometry(format!("radius must be positive, got {r_out}")));
    }
    if let Some(r_in) = r_in {
        if !(r_in >= 0.0 && r_in < r_out) {
            return Err(Error::InvalidGeometry(format!(
                "annulus needs 0 <= r_in < r_out, got {r_in}, {r_out}"
            )));
        }
    }
    Ok(())
}

fn check_rect(min: Complex64, max: Complex64) -> Result<()> {
    if !(max.re > min.re && max.im > min.im) {
        return Err(Error::InvalidGeometry("rectangle needs positive area".into()));
    }
    Ok(())
}

fn box_sdf(z: Complex64, min: Complex64, max: Complex64) -> f64 {
    let c = (min + max) * 0.5;
    let half = (max - min) * 0.5;
    let dx = (z.re - c.re).abs() - half.re;
    let dy = (z.im - c.im).abs() - half.im;
    let outside = dx.max(0.0).hypot(dy.max(0.0));
    outside + dx.max(dy).min(0.0)
}

/// Circle enclosing both circles.
fn merge_circles(a: (Complex64, f64), b: (Complex64, f64)) -> (Complex64, f64) {
    let d = (b.0 - a.0).norm();
    if d + b.1 <= a.1 {
        return a;
    }
    if d + a.1 <= b.1 {
        return b;
    }
    let r = (d + a.1 + b.1) * 0.5;
    let c = a.0 + (b.0 - a.0) * ((r - a.1) / d);
    (c, r)
}

impl DomainSpec {
    pub fn disc(center: Complex64, radius: f64) -> Self {
        DomainSpec::Disc { center, radius }
    }

    pub fn annulus(center: Complex64, r_in: f64, r_out: f64) -> Self {
        DomainSpec::Annulus { center, r_in, r_out }
    }

    pub fn rectangle(min: Complex64, max: Complex64) -> Self {
        DomainSpec::Rectangle { min, max }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Disc { center, radius } => check_round(*center, None, *radius),
            DomainSpec::Annulus { center, r_in, r_out } => {
                check_round(*center, Some(*r_in), *r_out)
            }
            DomainSpec::Rectangle { min, max } => check_rect(*min, *max),
            DomainSpec::Union { parts } | DomainSpec::Intersection { parts } => {
                if parts.is_empty() {
                    return Err(Error::InvalidGeometry("empty part list".into()));
                }
                parts.iter().try_for_each(DomainSpec::validate)
            }
            DomainSpec::Difference { base, remove } => {
                base.validate()?;
                remove.validate()
            }
        }
    }

    /// Exact membership in the open set. Removed points of a
    /// [`SetSpec::MinusPoints`] inside a difference are ignored.
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            DomainSpec::Disc { center, radius } => (z - center).norm() < *radius,
            DomainSpec::Annulus { center, r_in, r_out } => {
                let r = (z - center).norm();
                *r_in < r && r < *r_out
            }
            DomainSpec::Rectangle { min, max } => {
                min.re < z.re && z.re < max.re && min.im < z.im && z.im < max.im
            }
            DomainSpec::Union { parts } => parts.iter().any(|p| p.contains(z)),
            DomainSpec::Intersection { parts } => parts.iter().all(|p| p.contains(z)),
            DomainSpec::Difference { base, remove } => base.contains(z) && !remove.contains(z),
        }
    }

    /// Signed distance bound, negative inside. `|sdf|` never exceeds the
    /// true distance to the boundary.
    pub fn sdf(&self, z: Complex64) -> f64 {
        match self {
            DomainSpec::Disc { center, radius } => (z - center).norm() - radius,
            DomainSpec::Annulus { center, r_in, r_out } => {
                let r = (z - center).norm();
                (r_in - r).max(r - r_out)
            }
            DomainSpec::Rectangle { min, max } => box_sdf(z, *min, *max),
            DomainSpec::Union { parts } => {
                parts.iter().map(|p| p.sdf(z)).fold(f64::INFINITY, f64::min)
            }
            DomainSpec::Intersection { parts } => {
                parts.iter().map(|p| p.sdf(z)).fold(f64::NEG_INFINITY, f64::max)
            }
            DomainSpec::Difference { base, remove } => base.sdf(z).max(-remove.sdf(z)),
        }
    }

    /// Enclosing circle (center, radius); exact for discs and annuli.
    pub fn enclosing_circle(&self) -> (Complex64, f64) {
        match self {
            DomainSpec::Disc { center, radius } => (*center, *radius),
            DomainSpec::Annulus { center, r_out, .. } => (*center, *r_out),
            DomainSpec::Rectangle { min, max } => ((min + max) * 0.5, (max - min).norm() * 0.5),
            DomainSpec::Union { parts } => parts
                .iter()
                .map(DomainSpec::enclosing_circle)
                .reduce(merge_circles)
                .expect("validated union has parts"),
            DomainSpec::Intersection { parts } => parts
                .iter()
                .map(DomainSpec::enclosing_circle)
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("validated intersection has parts"),
            DomainSpec::Difference { base, .. } => base.enclosing_circle(),
        }
    }

    /// Upper bound on the diameter (exact for discs, annuli and rectangles).
    pub fn diameter(&self) -> f64 {
        2.0 * self.enclosing_circle().1
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Complex64, Complex64) {
        match self {
            DomainSpec::Disc { center, radius } => round_box(*center, *radius),
            DomainSpec::Annulus { center, r_out, .. } => round_box(*center, *r_out),
            DomainSpec::Rectangle { min, max } => (*min, *max),
            DomainSpec::Union { parts } => parts
                .iter()
                .map(DomainSpec::bounding_box)
                .reduce(|a, b| {
                    (
                        Complex64::new(a.0.re.min(b.0.re), a.0.im.min(b.0.im)),
                        Complex64::new(a.1.re.max(b.1.re), a.1.im.max(b.1.im)),
                    )
                })
                .expect("validated union has parts"),
            DomainSpec::Intersection { parts } => parts
                .iter()
                .map(DomainSpec::bounding_box)
                .reduce(|a, b| {
                    (
                        Complex64::new(a.0.re.max(b.0.re), a.0.im.max(b.0.im)),
                        Complex64::new(a.1.re.min(b.1.re), a.1.im.min(b.1.im)),
                    )
                })
                .expect("validated intersection has parts"),
            DomainSpec::Difference { base, .. } => base.bounding_box(),
        }
    }

    /// Erosion by `eps`; `None` when the result is provably empty.
    fn erode(&self, eps: f64) -> Option<DomainSpec> {
        match self {
            DomainSpec::Disc { center, radius } => {
                (radius - eps > 0.0).then(|| DomainSpec::disc(*center, radius - eps))
            }
            DomainSpec::Annulus { center, r_in, r_out } => {
                let (a, b) = (r_in + eps, r_out - eps);
                (a < b).then(|| DomainSpec::annulus(*center, a, b))
            }
            DomainSpec::Rectangle { min, max } => {
                let d = Complex64::new(eps, eps);
                let (a, b) = (min + d, max - d);
                (b.re > a.re && b.im > a.im).then(|| DomainSpec::rectangle(a, b))
            }
            DomainSpec::Union { parts } => {
                let parts: Vec<_> = parts.iter().filter_map(|p| p.erode(eps)).collect();
                (!parts.is_empty()).then_some(DomainSpec::Union { parts })
            }
            DomainSpec::Intersection { parts } => {
                let parts = parts.iter().map(|p| p.erode(eps)).collect::<Option<Vec<_>>>()?;
                let (lo, hi) = DomainSpec::Intersection { parts: parts.clone() }.bounding_box();
                (hi.re > lo.re && hi.im > lo.im).then_some(DomainSpec::Intersection { parts })
            }
            DomainSpec::Difference { base, remove } => Some(DomainSpec::Difference {
                base: Box::new(base.erode(eps)?),
                remove: Box::new(remove.dilate(eps)),
            }),
        }
    }
}

fn round_box(c: Complex64, r: f64) -> (Complex64, Complex64) {
    (c - Complex64::new(r, r), c + Complex64::new(r, r))
}

impl SetSpec {
    pub fn disc(center: Complex64, radius: f64) -> Self {
        SetSpec::Disc { center, radius }
    }

    pub fn annulus(center: Complex64, r_in: f64, r_out: f64) -> Self {
        SetSpec::Annulus { center, r_in, r_out }
    }

    pub fn rectangle(min: Complex64, max: Complex64) -> Self {
        SetSpec::Rectangle { min, max }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SetSpec::Disc { center, radius } => check_round(*center, None, *radius),
            SetSpec::Annulus { center, r_in, r_out } => check_round(*center, Some(*r_in), *r_out),
            SetSpec::Rectangle { min, max } => check_rect(*min, *max),
            SetSpec::Union { parts } => {
                if parts.is_empty() {
                    return Err(Error::InvalidGeometry("empty part list".into()));
                }
                parts.iter().try_for_each(SetSpec::validate)
            }
            SetSpec::MinusPoints { set, .. } => set.validate(),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            SetSpec::Disc { center, radius } => (z - center).norm() <= *radius,
            SetSpec::Annulus { center, r_in, r_out } => {
                let r = (z - center).norm();
                *r_in <= r && r <= *r_out
            }
            SetSpec::Rectangle { min, max } => {
                min.re <= z.re && z.re <= max.re && min.im <= z.im && z.im <= max.im
            }
            SetSpec::Union { parts } => parts.iter().any(|p| p.contains(z)),
            SetSpec::MinusPoints { set, points } => set.contains(z) && !points.contains(&z),
        }
    }

    /// Signed distance bound, negative inside. Removed points are polar and
    /// do not affect the distance.
    pub fn sdf(&self, z: Complex64) -> f64 {
        match self {
            SetSpec::Disc { center, radius } => (z - center).norm() - radius,
            SetSpec::Annulus { center, r_in, r_out } => {
                let r = (z - center).norm();
                (r_in - r).max(r - r_out)
            }
            SetSpec::Rectangle { min, max } => box_sdf(z, *min, *max),
            SetSpec::Union { parts } => {
                parts.iter().map(|p| p.sdf(z)).fold(f64::INFINITY, f64::min)
            }
            SetSpec::MinusPoints { set, .. } => set.sdf(z),
        }
    }

    pub fn bounding_box(&self) -> (Complex64, Complex64) {
        match self {
            SetSpec::Disc { center, radius } => round_box(*center, *radius),
            SetSpec::Annulus { center, r_out, .. } => round_box(*center, *r_out),
            SetSpec::Rectangle { min, max } => (*min, *max),
            SetSpec::Union { parts } => parts
                .iter()
                .map(SetSpec::bounding_box)
                .reduce(|a, b| {
                    (
                        Complex64::new(a.0.re.min(b.0.re), a.0.im.min(b.0.im)),
                        Complex64::new(a.1.re.max(b.1.re), a.1.im.max(b.1.im)),
                    )
                })
                .expect("validated union has parts"),
            SetSpec::MinusPoints { set, .. } => set.bounding_box(),
        }
    }

    /// Closed superset containing every point within `eps` of the set.
    /// Rectangles dilate to their enclosing rectangle.
    fn dilate(&self, eps: f64) -> SetSpec {
        match self {
            SetSpec::Disc { center, radius } => SetSpec::disc(*center, radius + eps),
            SetSpec::Annulus { center, r_in, r_out } => {
                if r_in - eps > 0.0 {
                    SetSpec::annulus(*center, r_in - eps, r_out + eps)
                } else {
                    SetSpec::disc(*center, r_out + eps)
                }
            }
            SetSpec::Rectangle { min, max } => {
                let d = Complex64::new(eps, eps);
                SetSpec::rectangle(min - d, max + d)
            }
            SetSpec::Union { parts } => SetSpec::Union {
                parts: parts.iter().map(|p| p.dilate(eps)).collect(),
            },
            SetSpec::MinusPoints { set, .. } => set.dilate(eps),
        }
    }
}

/// Either kind of spec, for operations accepting both.
#[derive(Debug, Clone, Copy)]
pub enum Region<'a> {
    Open(&'a DomainSpec),
    Closed(&'a SetSpec),
}

impl<'a> From<&'a DomainSpec> for Region<'a> {
    fn from(d: &'a DomainSpec) -> Self {
        Region::Open(d)
    }
}

impl<'a> From<&'a SetSpec> for Region<'a> {
    fn from(s: &'a SetSpec) -> Self {
        Region::Closed(s)
    }
}

/// Uniform grid over a rectangle, nodes in row-major order (`index = j * nx + i`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: Complex64,
    pub max: Complex64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn new(min: Complex64, max: Complex64, nx: usize, ny: usize) -> Result<Self> {
        let g = Grid { min, max, nx, ny };
        g.validate()?;
        Ok(g)
    }

    /// Square grid `[-half, half]^2` with `n` nodes per side.
    pub fn square(half: f64, n: usize) -> Result<Self> {
        Grid::new(Complex64::new(-half, -half), Complex64::new(half, half), n, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 8 || self.ny < 8 {
            return Err(Error::InvalidGeometry(format!(
                "grid needs at least 8 nodes per side, got {}x{}",
                self.nx, self.ny
            )));
        }
        check_rect(self.min, self.max)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.max.re - self.min.re) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.max.im - self.min.im) / (self.ny - 1) as f64
    }

    /// Larger of the two spacings.
    pub fn spacing(&self) -> f64 {
        self.dx().max(self.dy())
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx % self.nx, idx / self.nx)
    }

    pub fn point(&self, idx: usize) -> Complex64 {
        let (i, j) = self.coords(idx);
        Complex64::new(
            self.min.re + i as f64 * self.dx(),
            self.min.im + j as f64 * self.dy(),
        )
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// Nearest node to `z`, if `z` lies within half a cell of the grid.
    pub fn nearest(&self, z: Complex64) -> Option<usize> {
        let fi = ((z.re - self.min.re) / self.dx()).round();
        let fj = ((z.im - self.min.im) / self.dy()).round();
        if fi < 0.0 || fj < 0.0 || fi >= self.nx as f64 || fj >= self.ny as f64 {
            return None;
        }
        Some(self.index(fi as usize, fj as usize))
    }

    /// 4-neighbours of a node inside the grid.
    pub fn neighbors4(&self, idx: usize) -> impl Iterator<Item = usize> {
        let (i, j) = self.coords(idx);
        let (nx, ny) = (self.nx, self.ny);
        [
            (i > 0).then(|| idx - 1),
            (i + 1 < nx).then(|| idx + 1),
            (j > 0).then(|| idx - nx),
            (j + 1 < ny).then(|| idx + nx),
        ]
        .into_iter()
        .flatten()
    }

    /// Neighbours in the 3x3 block around a node (excluding the node).
    pub fn neighbors8(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let (i, j) = self.coords(idx);
        (-1i64..=1)
            .flat_map(move |dj| (-1i64..=1).map(move |di| (di, dj)))
            .filter(|&(di, dj)| di != 0 || dj != 0)
            .filter_map(move |(di, dj)| {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                (a >= 0 && b >= 0 && a < self.nx as i64 && b < self.ny as i64)
                    .then(|| self.index(a as usize, b as usize))
            })
    }
}

/// Boolean flag per grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    pub grid: Grid,
    pub flags: Vec<bool>,
}

impl Mask {
    pub fn new(grid: Grid, flags: Vec<bool>) -> Self {
        assert_eq!(flags.len(), grid.len(), "mask length must match grid");
        Mask { grid, flags }
    }

    pub fn full(grid: Grid) -> Self {
        Mask::new(grid, vec![true; grid.len()])
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn get(&self, idx: usize) -> bool {
        self.flags[idx]
    }

    pub fn is_subset_of(&self, other: &Mask) -> bool {
        self.flags.iter().zip(&other.flags).all(|(&a, &b)| !a || b)
    }

    pub fn and(&self, other: &Mask) -> Mask {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn or(&self, other: &Mask) -> Mask {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn and_not(&self, other: &Mask) -> Mask {
        self.zip_with(other, |a, b| a && !b)
    }

    fn zip_with(&self, other: &Mask, f: impl Fn(bool, bool) -> bool) -> Mask {
        assert_eq!(self.grid, other.grid, "masks live on different grids");
        let flags = self.flags.iter().zip(&other.flags).map(|(&a, &b)| f(a, b)).collect();
        Mask::new(self.grid, flags)
    }

    /// CSV: `nx,ny` header line, then one row of 0/1 per grid row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{},{}", self.grid.nx, self.grid.ny)?;
        for row in self.flags.chunks(self.grid.nx) {
            let line: Vec<&str> = row.iter().map(|&f| if f { "1" } else { "0" }).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    /// Plain (ASCII) PGM, members white. Top image row is the largest `y`.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "P2\n{} {}\n255", self.grid.nx, self.grid.ny)?;
        for row in self.flags.chunks(self.grid.nx).rev() {
            let line: Vec<&str> = row.iter().map(|&f| if f { "255" } else { "0" }).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn rasterize_domain(spec: &DomainSpec, grid: &Grid) -> Vec<bool> {
    match spec {
        DomainSpec::Union { parts } => combine(parts.iter().map(|p| rasterize_domain(p, grid)), |a, b| a || b),
        DomainSpec::Intersection { parts } => {
            combine(parts.iter().map(|p| rasterize_domain(p, grid)), |a, b| a && b)
        }
        DomainSpec::Difference { base, remove } => {
            let mut flags = rasterize_domain(base, grid);
            for (f, r) in flags.iter_mut().zip(rasterize_set(remove, grid)) {
                *f = *f && !r;
            }
            flags
        }
        leaf => grid.points().map(|z| leaf.contains(z)).collect(),
    }
}

fn rasterize_set(spec: &SetSpec, grid: &Grid) -> Vec<bool> {
    match spec {
        SetSpec::Union { parts } => combine(parts.iter().map(|p| rasterize_set(p, grid)), |a, b| a || b),
        SetSpec::MinusPoints { set, points } => {
            let mut flags = rasterize_set(set, grid);
            for idx in points.iter().filter_map(|&p| grid.nearest(p)) {
                flags[idx] = false;
            }
            flags
        }
        leaf => grid.points().map(|z| leaf.contains(z)).collect(),
    }
}

fn combine(mut parts: impl Iterator<Item = Vec<bool>>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    let mut acc = parts.next().expect("validated spec has parts");
    for next in parts {
        for (a, b) in acc.iter_mut().zip(next) {
            *a = f(*a, b);
        }
    }
    acc
}

/// Rasterizes a domain or closed set: a node is flagged iff it belongs to the
/// realized set (boundary nodes of closed sets included).
pub fn rasterize<'a>(spec: impl Into<Region<'a>>, grid: &Grid) -> Result<Mask> {
    grid.validate()?;
    let flags = match spec.into() {
        Region::Open(d) => {
            d.validate()?;
            rasterize_domain(d, grid)
        }
        Region::Closed(s) => {
            s.validate()?;
            rasterize_set(s, grid)
        }
    };
    let mask = Mask::new(*grid, flags);
    if mask.count() == 0 {
        return Err(Error::Unresolved);
    }
    Ok(mask)
}

/// `k`-th member of a fixed exhaustion: the erosion of `spec` by
/// `diam(spec) / (4k)`.
pub fn exhaustion(spec: &DomainSpec, k: usize) -> Result<DomainSpec> {
    spec.validate()?;
    if k == 0 {
        return Err(Error::InvalidGeometry("exhaustion index must be >= 1".into()));
    }
    let eps = spec.diameter() / (4 * k) as f64;
    spec.erode(eps).ok_or(Error::ExhaustionTooCoarse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disc_rasterizes_to_open_membership() {
        let grid = Grid::square(1.1, 64).unwrap();
        let mask = rasterize(&DomainSpec::disc(c(0.0, 0.0), 1.0), &grid).unwrap();
        for (k, z) in grid.points().enumerate() {
            assert_eq!(mask.get(k), z.norm() < 1.0);
        }
    }

    #[test]
    fn closed_disc_area_matches_point_count() {
        let grid = Grid::square(1.1, 64).unwrap();
        let mask = rasterize(&SetSpec::disc(c(0.0, 0.0), 0.25), &grid).unwrap();
        // independent count: cell-area estimate of the disc
        let cell = grid.dx() * grid.dy();
        let expected = std::f64::consts::PI * 0.25 * 0.25 / cell;
        let got = mask.count() as f64;
        assert!((got - expected).abs() <= 0.1 * expected, "{got} vs {expected}");
    }

    #[test]
    fn removing_everything_is_unresolved() {
        let grid = Grid::square(1.1, 64).unwrap();
        let spec = DomainSpec::Difference {
            base: Box::new(DomainSpec::disc(c(0.0, 0.0), 1.0)),
            remove: Box::new(SetSpec::disc(c(0.0, 0.0), 2.0)),
        };
        assert!(matches!(rasterize(&spec, &grid), Err(Error::Unresolved)));
    }

    #[test]
    fn exhaustion_of_disc_and_annulus() {
        let disc = DomainSpec::disc(c(0.0, 0.0), 1.0);
        assert_eq!(exhaustion(&disc, 1).unwrap(), DomainSpec::disc(c(0.0, 0.0), 0.5));
        let mut last = 0.0;
        for k in 1..50 {
            match exhaustion(&disc, k).unwrap() {
                DomainSpec::Disc { radius, .. } => {
                    assert!(radius > last && radius < 1.0);
                    last = radius;
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(last > 0.985);
        let ann = DomainSpec::annulus(c(0.0, 0.0), 0.2, 1.0);
        assert_eq!(exhaustion(&ann, 2).unwrap(), DomainSpec::annulus(c(0.0, 0.0), 0.45, 0.75));
    }

    #[test]
    fn exhaustion_too_small() {
        let ann = DomainSpec::annulus(c(0.0, 0.0), 0.5, 1.0);
        assert!(matches!(exhaustion(&ann, 1), Err(Error::ExhaustionTooCoarse)));
        assert!(exhaustion(&ann, 5).is_ok());
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(DomainSpec::disc(c(0.0, 0.0), -1.0).validate().is_err());
        assert!(DomainSpec::annulus(c(0.0, 0.0), 1.0, 0.5).validate().is_err());
        assert!(SetSpec::rectangle(c(1.0, 0.0), c(0.0, 1.0)).validate().is_err());
        assert!(Grid::square(1.0, 4).is_err());
    }

    #[test]
    fn removed_point_knocks_out_nearest_node() {
        let grid = Grid::square(1.0, 21).unwrap();
        let fat = SetSpec::disc(c(0.0, 0.0), 0.5);
        let thin = SetSpec::MinusPoints { set: Box::new(fat.clone()), points: vec![c(0.01, -0.02)] };
        let a = rasterize(&fat, &grid).unwrap();
        let b = rasterize(&thin, &grid).unwrap();
        assert_eq!(a.count(), b.count() + 1);
        assert!(!b.get(grid.nearest(c(0.0, 0.0)).unwrap()));
    }

    #[test]
    fn json_shape_tree() {
        let json = r#"{"shape":"union","parts":[{"shape":"disc","center":[0,0],"radius":1.0},
                       {"shape":"rectangle","min":[0,0],"max":[2,1]}]}"#;
        let spec: DomainSpec = serde_json::from_str(json).unwrap();
        assert!(spec.contains(c(1.5, 0.5)));
        assert!(!spec.contains(c(1.5, -0.5)));
        let bad = r#"{"shape":"disc","center":[0,0],"radius":1.0,"colour":"red"}"#;
        assert!(serde_json::from_str::<DomainSpec>(bad).is_err());
    }

    #[test]
    fn sdf_is_a_distance_bound() {
        let spec = DomainSpec::Difference {
            base: Box::new(DomainSpec::Union {
                parts: vec![
                    DomainSpec::disc(c(0.0, 0.0), 1.0),
                    DomainSpec::rectangle(c(0.5, -0.3), c(1.8, 0.3)),
                ],
            }),
            remove: Box::new(SetSpec::disc(c(-0.3, 0.2), 0.2)),
        };
        let grid = Grid::square(2.0, 41).unwrap();
        let mask = rasterize(&spec, &grid).unwrap();
        // every node strictly within |sdf| of z must share z's membership
        for (k, z) in grid.points().enumerate() {
            let d = spec.sdf(z).abs();
            for (m, w) in grid.points().enumerate() {
                if (w - z).norm() < d * 0.999 {
                    assert_eq!(mask.get(k), mask.get(m), "{z} vs {w}");
                }
            }
        }
    }
}
