//! Two local fits around different base points agree where their envelopes
//! overlap; adding a constant to one of them breaks the agreement.

use crosslab::cross::cross_envelope;
use crosslab::extension::{fit_rational, local_cross, local_overlap_consistency, sample_cross, SamplingStrategy};
use crosslab::extremal::SolveParams;
use crosslab::geometry::Grid;
use crosslab::poly::BiPoly;
use crosslab::singularity::SingularSet;
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let c = |x, y| Complex64::new(x, y);
    let m = SingularSet::Poly(BiPoly::diagonal());
    let f = |z: Complex64, w: Complex64| (z * z + w) / (z - w);
    let grid = Grid::square(1.35, 64)?;
    let strategy = SamplingStrategy { clearance: Some(0.05), ..Default::default() };

    let mut fits = Vec::new();
    let mut envs = Vec::new();
    for (a, b) in [(c(-0.3, 0.0), c(0.3, 0.0)), (c(0.3, 0.0), c(-0.3, 0.0))] {
        let cross = local_cross(a, b, 1.0);
        fits.push(fit_rational(&sample_cross(&f, &cross, &m, &strategy)?, &m, 1, (2, 2))?);
        envs.push(cross_envelope(&cross, &grid, &grid, &SolveParams::default())?.mask);
    }
    let overlap = envs[0].and(&envs[1]);
    println!("overlap holds {} grid pairs", overlap.count());
    let d = local_overlap_consistency(&fits[0], &fits[1], &overlap, 500, 7, 0.05)?;
    println!("discrepancy of the two fits: {d:.2e}");
    let shifted = fits[1].plus_constant(c(0.5, 0.0));
    let d = local_overlap_consistency(&fits[0], &shifted, &overlap, 500, 7, 0.05)?;
    println!("after shifting one fit by 0.5: {d:.2e}");
    Ok(())
}
