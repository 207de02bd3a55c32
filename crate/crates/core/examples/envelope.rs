//! Envelope of a cross over an annulus, its connectivity and the
//! run-length encoding written by `crosslab envelope`.

use crosslab::cross::{connected_components, cross_envelope, Cross, ProductMask};
use crosslab::extremal::SolveParams;
use crosslab::geometry::{rasterize, DomainSpec, Grid, SetSpec};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let c = |x, y| Complex64::new(x, y);
    let cross = Cross::new(
        DomainSpec::annulus(c(0.0, 0.0), 0.3, 1.0),
        SetSpec::disc(c(0.6, 0.0), 0.2),
        DomainSpec::disc(c(0.0, 0.0), 1.0),
        SetSpec::disc(c(0.0, 0.0), 0.25),
    );
    let grid = Grid::square(1.05, 64)?;
    let env = cross_envelope(&cross, &grid, &grid, &SolveParams::default())?;
    let domains = ProductMask::product(&rasterize(&cross.d, &grid)?, &rasterize(&cross.g, &grid)?);
    let parts = connected_components(&env.mask)?;
    println!(
        "{} of {} domain pairs in the envelope, {} component(s)",
        env.mask.count(),
        domains.count(),
        parts.count
    );
    // Fiber over w = 0: a sublevel set of ω_A.
    let iw = grid.nearest(c(0.0, 0.0)).unwrap();
    println!("fiber over w = 0 has {} nodes", env.mask.z_fiber(iw).count());
    let mut rle = Vec::new();
    env.mask.write_rle_csv(&mut rle)?;
    println!("RLE size: {} bytes", rle.len());
    Ok(())
}
