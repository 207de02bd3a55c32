//! Sample `(1 + zw) / (z − w)` on a cross, fit `N / (z − w)`, and compare the
//! fit with the function on the envelope away from the diagonal.

use crosslab::cross::{cross_envelope, Cross};
use crosslab::extension::{fit_rational, sample_cross, uniqueness_residual, verify_extension, SamplingStrategy};
use crosslab::extremal::SolveParams;
use crosslab::geometry::{DomainSpec, Grid, SetSpec};
use crosslab::poly::BiPoly;
use crosslab::singularity::{envelope_trace, SingularSet};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let origin = Complex64::new(0.0, 0.0);
    let cross = Cross::new(
        DomainSpec::disc(origin, 1.0),
        SetSpec::disc(origin, 0.25),
        DomainSpec::disc(origin, 1.0),
        SetSpec::disc(origin, 0.25),
    );
    let m = SingularSet::Poly(BiPoly::diagonal());
    let f = |z: Complex64, w: Complex64| (1.0 + z * w) / (z - w);
    let strategy = SamplingStrategy::default();

    let samples = sample_cross(&f, &cross, &m, &strategy)?;
    let fit = fit_rational(&samples, &m, 1, (2, 2))?;
    println!("fit from {} samples, condition {:.3e}", samples.len(), fit.condition);
    println!("numerator: {:?}", fit.numerator.rows());

    let grid = Grid::square(1.05, 96)?;
    let env = cross_envelope(&cross, &grid, &grid, &SolveParams::default())?;
    let trace = envelope_trace(&m, &env.mask);
    let report = verify_extension(&fit, &f, &env.mask, &trace, 500, 7, strategy.clearance_for(&cross))?;
    println!("{report:?}");

    let u = uniqueness_residual(&cross, &m, 1, (2, 2), &strategy)?;
    println!("zero data on A×B gives coefficients up to {:.2e}", u.residual);
    Ok(())
}
