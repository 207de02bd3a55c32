//! Crosses `X = (D×B) ∪ (A×G)` and their envelopes
//! `X̂ = {ω_{A,D}(z) + ω_{B,G}(w) < 1}` on product grids.

use std::collections::VecDeque;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{solve_specs, ScalarField, SolveParams};
use crate::geometry::{rasterize, DomainSpec, Grid, Mask, SetSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cross {
    pub d: DomainSpec,
    pub a: SetSpec,
    pub g: DomainSpec,
    pub b: SetSpec,
}

impl Cross {
    pub fn new(d: DomainSpec, a: SetSpec, g: DomainSpec, b: SetSpec) -> Self {
        Cross { d, a, g, b }
    }

    /// Checks that the realized sets `A ∩ D` and `B ∩ G` are nonempty at
    /// the given resolutions.
    pub fn validate_on(&self, grid_z: &Grid, grid_w: &Grid) -> Result<()> {
        let d = rasterize(&self.d, grid_z)?;
        let g = rasterize(&self.g, grid_w)?;
        let a = rasterize(&self.a, grid_z)?.and(&d);
        let b = rasterize(&self.b, grid_w)?.and(&g);
        if a.count() == 0 || b.count() == 0 {
            return Err(Error::Unresolved);
        }
        Ok(())
    }

    pub fn contains(&self, z: Complex64, w: Complex64) -> bool {
        cross_membership(self, z, w)
    }

    /// Diameter of `D × G`.
    pub fn diameter(&self) -> f64 {
        self.d.diameter().hypot(self.g.diameter())
    }
}

/// `(z ∈ D and w ∈ B) or (z ∈ A and w ∈ G)`.
pub fn cross_membership(cross: &Cross, z: Complex64, w: Complex64) -> bool {
    (cross.d.contains(z) && cross.b.contains(w)) || (cross.a.contains(z) && cross.g.contains(w))
}

/// Bits of one `w`-row of a [`ProductMask`].
pub struct RowBits<'a>(&'a mut [u64]);

impl RowBits<'_> {
    pub fn set(&mut self, iz: usize) {
        self.0[iz / 64] |= 1 << (iz % 64);
    }
}

/// Subset of `grid_z × grid_w`, one packed bit row per `w` node.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMask {
    pub grid_z: Grid,
    pub grid_w: Grid,
    row_words: usize,
    bits: Vec<u64>,
}

impl ProductMask {
    pub fn empty(grid_z: Grid, grid_w: Grid) -> Self {
        let row_words = grid_z.len().div_ceil(64);
        ProductMask { grid_z, grid_w, row_words, bits: vec![0; row_words * grid_w.len()] }
    }

    /// Fills each `w`-row in parallel.
    pub fn from_rows(
        grid_z: Grid,
        grid_w: Grid,
        fill: impl Fn(usize, &mut RowBits) + Sync,
    ) -> Self {
        let mut mask = ProductMask::empty(grid_z, grid_w);
        let words = mask.row_words;
        mask.bits.par_chunks_mut(words).enumerate().for_each(|(iw, row)| fill(iw, &mut RowBits(row)));
        mask
    }

    pub fn from_fn(grid_z: Grid, grid_w: Grid, f: impl Fn(usize, usize) -> bool + Sync) -> Self {
        ProductMask::from_rows(grid_z, grid_w, |iw, row| {
            for iz in 0..grid_z.len() {
                if f(iz, iw) {
                    row.set(iz);
                }
            }
        })
    }

    /// `mz × mw`.
    pub fn product(mz: &Mask, mw: &Mask) -> Self {
        ProductMask::from_fn(mz.grid, mw.grid, |iz, iw| mz.get(iz) && mw.get(iw))
    }

    /// Rasterization of the cross itself.
    pub fn of_cross(cross: &Cross, grid_z: &Grid, grid_w: &Grid) -> Result<Self> {
        let d = rasterize(&cross.d, grid_z)?;
        let a = rasterize(&cross.a, grid_z)?.and(&d);
        let g = rasterize(&cross.g, grid_w)?;
        let b = rasterize(&cross.b, grid_w)?.and(&g);
        Ok(ProductMask::from_fn(*grid_z, *grid_w, |iz, iw| {
            (d.get(iz) && b.get(iw)) || (a.get(iz) && g.get(iw))
        }))
    }

    pub fn pairs(&self) -> usize {
        self.grid_z.len() * self.grid_w.len()
    }

    fn bit(&self, iz: usize, iw: usize) -> (usize, u64) {
        (iw * self.row_words + iz / 64, 1 << (iz % 64))
    }

    pub fn get(&self, iz: usize, iw: usize) -> bool {
        let (w, b) = self.bit(iz, iw);
        self.bits[w] & b != 0
    }

    pub fn set(&mut self, iz: usize, iw: usize, value: bool) {
        let (w, b) = self.bit(iz, iw);
        if value {
            self.bits[w] |= b;
        } else {
            self.bits[w] &= !b;
        }
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_count(&self, iw: usize) -> usize {
        let row = &self.bits[iw * self.row_words..(iw + 1) * self.row_words];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The `k`-th flagged `z` index of row `iw`.
    pub fn nth_in_row(&self, iw: usize, k: usize) -> Option<usize> {
        (0..self.grid_z.len()).filter(|&iz| self.get(iz, iw)).nth(k)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_grids(&self, other: &ProductMask) {
        assert!(
            self.grid_z == other.grid_z && self.grid_w == other.grid_w,
            "product masks live on different grids"
        );
    }

    pub fn is_subset_of(&self, other: &ProductMask) -> bool {
        self.check_grids(other);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &ProductMask) -> ProductMask {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn and_not(&self, other: &ProductMask) -> ProductMask {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn or(&self, other: &ProductMask) -> ProductMask {
        self.zip_with(other, |a, b| a | b)
    }

    fn zip_with(&self, other: &ProductMask, f: impl Fn(u64, u64) -> u64) -> ProductMask {
        self.check_grids(other);
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect();
        ProductMask { bits, ..self.clone() }
    }

    /// Flagged `(iz, iw)` pairs in row order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nz = self.grid_z.len();
        (0..self.grid_w.len()).flat_map(move |iw| {
            (0..nz).filter(move |&iz| self.get(iz, iw)).map(move |iz| (iz, iw))
        })
    }

    /// Fiber over a `w` node as a mask on `grid_z`.
    pub fn z_fiber(&self, iw: usize) -> Mask {
        Mask::new(self.grid_z, (0..self.grid_z.len()).map(|iz| self.get(iz, iw)).collect())
    }

    /// Run-length encoded CSV: header `nz,nw`, then per `w`-row the row index
    /// followed by `start,length` pairs of flagged `z` runs.
    pub fn write_rle_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{},{}", self.grid_z.len(), self.grid_w.len())?;
        let nz = self.grid_z.len();
        for iw in 0..self.grid_w.len() {
            write!(out, "{iw}")?;
            let mut iz = 0;
            while iz < nz {
                if self.get(iz, iw) {
                    let start = iz;
                    while iz < nz && self.get(iz, iw) {
                        iz += 1;
                    }
                    write!(out, ",{start},{}", iz - start)?;
                } else {
                    iz += 1;
                }
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Parses the output of [`ProductMask::write_rle_csv`].
    pub fn read_rle_csv(text: &str, grid_z: Grid, grid_w: Grid) -> Result<ProductMask> {
        let bad = |line: &str| Error::Config(format!("bad mask row: {line}"));
        let numbers = |line: &str| -> Result<Vec<usize>> {
            line.split(',').map(|s| s.trim().parse().map_err(|_| bad(line))).collect()
        };
        let mut lines = text.lines();
        let header = numbers(lines.next().unwrap_or(""))?;
        if header != [grid_z.len(), grid_w.len()] {
            return Err(Error::Config(format!("mask header {header:?} does not match the grids")));
        }
        let mut mask = ProductMask::empty(grid_z, grid_w);
        for line in lines {
            let nums = numbers(line)?;
            let (&iw, runs) = nums.split_first().ok_or_else(|| bad(line))?;
            if iw >= grid_w.len() || runs.len() % 2 != 0 {
                return Err(bad(line));
            }
            for run in runs.chunks(2) {
                if run[0] + run[1] > grid_z.len() {
                    return Err(bad(line));
                }
                for iz in run[0]..run[0] + run[1] {
                    mask.set(iz, iw, true);
                }
            }
        }
        Ok(mask)
    }
}

/// Grid envelope: both nodes in their domains and `ω_A(z) + ω_B(w) < 1`.
pub fn envelope_mask(omega_a: &ScalarField, omega_b: &ScalarField) -> ProductMask {
    let (gz, gw) = (omega_a.grid, omega_b.grid);
    ProductMask::from_rows(gz, gw, |iw, row| {
        let Some(vb) = omega_b.value(iw) else { return };
        for iz in 0..gz.len() {
            if let Some(va) = omega_a.value(iz) {
                if va + vb < 1.0 {
                    row.set(iz);
                }
            }
        }
    })
}

/// Envelope of a cross together with its two factor fields.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub mask: ProductMask,
    pub omega_a: ScalarField,
    pub omega_b: ScalarField,
}

/// Solves `ω_{A,D}` on `grid_z` and `ω_{B,G}` on `grid_w`, then thresholds.
pub fn cross_envelope(
    cross: &Cross,
    grid_z: &Grid,
    grid_w: &Grid,
    params: &SolveParams,
) -> Result<Envelope> {
    let (omega_a, omega_b) = rayon::join(
        || solve_specs(&cross.d, &cross.a, grid_z, params),
        || solve_specs(&cross.g, &cross.b, grid_w, params),
    );
    let (omega_a, omega_b) = (omega_a?, omega_b?);
    Ok(Envelope { mask: envelope_mask(&omega_a, &omega_b), omega_a, omega_b })
}

/// Labels are materialized only up to this many product pairs.
pub const LABEL_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub count: usize,
    /// Component sizes in discovery order.
    pub sizes: Vec<usize>,
    /// Per-pair label (`0` = unflagged, `k` = component `k`), index
    /// `iw * nz + iz`; present when the product has at most [`LABEL_LIMIT`]
    /// pairs.
    pub labels: Option<Vec<u32>>,
}

/// Connected components of a product mask. Two pairs are adjacent when they
/// differ by one 4-neighbour step in exactly one factor.
pub fn connected_components(mask: &ProductMask) -> Result<ComponentReport> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    let (gz, gw) = (mask.grid_z, mask.grid_w);
    let nz = gz.len();
    let mut unvisited = mask.clone();
    let mut labels = (mask.pairs() <= LABEL_LIMIT).then(|| vec![0u32; mask.pairs()]);
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for iw0 in 0..gw.len() {
        for iz0 in 0..nz {
            if !unvisited.get(iz0, iw0) {
                continue;
            }
            let label = sizes.len() as u32 + 1;
            let mut size = 0;
            unvisited.set(iz0, iw0, false);
            queue.push_back((iz0 as u32, iw0 as u32));
            while let Some((iz, iw)) = queue.pop_front() {
                let (iz, iw) = (iz as usize, iw as usize);
                size += 1;
                if let Some(l) = labels.as_mut() {
                    l[iw * nz + iz] = label;
                }
                for nz_ in gz.neighbors4(iz) {
                    if unvisited.get(nz_, iw) {
                        unvisited.set(nz_, iw, false);
                        queue.push_back((nz_ as u32, iw as u32));
                    }
                }
                for nw in gw.neighbors4(iw) {
                    if unvisited.get(iz, nw) {
                        unvisited.set(iz, nw, false);
                        queue.push_back((iz as u32, nw as u32));
                    }
                }
            }
            sizes.push(size);
        }
    }
    Ok(ComponentReport { count: sizes.len(), sizes, labels })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SublevelComponent {
    pub size: usize,
    pub meets_a: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SublevelReport {
    pub alpha: f64,
    pub components: Vec<SublevelComponent>,
    /// Every component meets `A`.
    pub pass: bool,
}

/// Components (4-adjacency) of `{field < alpha}` and whether each meets `A`.
pub fn sublevel_components(field: &ScalarField, alpha: f64, a_mask: &Mask) -> SublevelReport {
    let grid = field.grid;
    let inside: Vec<bool> =
        (0..grid.len()).map(|i| field.value(i).is_some_and(|v| v < alpha)).collect();
    let mut seen = vec![false; grid.len()];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for start in 0..grid.len() {
        if !inside[start] || seen[start] {
            continue;
        }
        let (mut size, mut meets_a) = (0, false);
        seen[start] = true;
        stack.push(start);
        while let Some(p) = stack.pop() {
            size += 1;
            meets_a |= a_mask.get(p);
            for q in grid.neighbors4(p) {
                if inside[q] && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        components.push(SublevelComponent { size, meets_a });
    }
    let pass = components.iter().all(|c| c.meets_a);
    SublevelReport { alpha, components, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_cross(r: f64) -> Cross {
        Cross::new(
            DomainSpec::disc(c(0.0, 0.0), 1.0),
            SetSpec::disc(c(0.0, 0.0), r),
            DomainSpec::disc(c(0.0, 0.0), 1.0),
            SetSpec::disc(c(0.0, 0.0), r),
        )
    }

    #[test]
    fn membership_branches() {
        let x = unit_cross(0.25);
        assert!(cross_membership(&x, c(0.1, 0.0), c(0.8, 0.0)));
        assert!(!cross_membership(&x, c(0.5, 0.0), c(0.8, 0.0)));
        assert!(cross_membership(&x, c(0.1, 0.0), c(0.1, 0.0)));
        assert!(cross_membership(&x, c(0.9, 0.0), c(0.0, 0.2)));
        assert!(!cross_membership(&x, c(1.1, 0.0), c(0.0, 0.2)));
    }

    #[test]
    fn components_of_constructed_masks() {
        let g = Grid::square(1.0, 10).unwrap();
        let full = ProductMask::from_fn(g, g, |_, _| true);
        assert_eq!(connected_components(&full).unwrap().count, 1);
        let blocks = ProductMask::from_fn(g, g, |iz, iw| (iz < 30 && iw < 30) || (iz >= 60 && iw >= 60));
        let rep = connected_components(&blocks).unwrap();
        assert_eq!(rep.count, 2);
        assert_eq!(rep.sizes, vec![900, 1600]);
        let labels = rep.labels.unwrap();
        assert_eq!(labels[0], 1);
        assert_eq!(labels[99 * 100 + 99], 2);
        assert!(connected_components(&ProductMask::empty(g, g)).is_err());
    }

    #[test]
    fn rle_round_trip_counts() {
        let g = Grid::square(1.0, 8).unwrap();
        let m = ProductMask::from_fn(g, g, |iz, iw| (iz + iw) % 3 == 0 || iz > 50);
        let mut buf = Vec::new();
        m.write_rle_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(ProductMask::read_rle_csv(&text, g, g).unwrap(), m);
        let total: usize = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').skip(1).skip(1).step_by(2).map(|x| x.parse::<usize>().unwrap()).sum::<usize>())
            .sum();
        assert_eq!(total, m.count());
    }

    #[test]
    fn trivial_envelope_is_full_product() {
        let g = Grid::square(1.1, 24).unwrap();
        let d = DomainSpec::disc(c(0.0, 0.0), 1.0);
        let dm = rasterize(&d, &g).unwrap();
        let f = crate::extremal::solve_relative_extremal(&dm, &dm, &SolveParams::default()).unwrap();
        let env = envelope_mask(&f, &f);
        assert_eq!(env, ProductMask::product(&dm, &dm));
    }

    #[test]
    fn envelope_fibers_are_sublevel_sets() {
        let g = Grid::square(1.1, 24).unwrap();
        let x = unit_cross(0.3);
        let fa = solve_specs(&x.d, &x.a, &g, &SolveParams::default()).unwrap();
        let env = envelope_mask(&fa, &fa);
        for iw in 0..g.len() {
            let fiber = env.z_fiber(iw);
            for iz in 0..g.len() {
                let want = match (fa.value(iz), fa.value(iw)) {
                    (Some(a), Some(b)) => a < 1.0 - b,
                    _ => false,
                };
                assert_eq!(fiber.get(iz), want);
            }
        }
        assert!(ProductMask::of_cross(&x, &g, &g).unwrap().is_subset_of(&env));
        assert_eq!(connected_components(&env).unwrap().count, 1);
    }

    #[test]
    fn sublevel_sets_meet_a() {
        let g = Grid::square(1.1, 65).unwrap();
        let x = unit_cross(0.25);
        let f = solve_specs(&x.d, &x.a, &g, &SolveParams::default()).unwrap();
        let rep = sublevel_components(&f, 0.5, &f.a_mask);
        assert_eq!(rep.components.len(), 1);
        assert!(rep.pass);
        let two = SetSpec::Union {
            parts: vec![SetSpec::disc(c(-0.5, 0.0), 0.15), SetSpec::disc(c(0.5, 0.0), 0.15)],
        };
        let f = solve_specs(&x.d, &two, &g, &SolveParams::default()).unwrap();
        let rep = sublevel_components(&f, 0.1, &f.a_mask);
        assert_eq!(rep.components.len(), 2);
        assert!(rep.pass);
        let rep = sublevel_components(&f, 0.999, &f.a_mask);
        assert_eq!(rep.components.len(), 1);
    }
}
