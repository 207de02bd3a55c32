//! Extremal functions over an increasing exhaustion of a square. Iterates
//! decrease towards the direct solve.

use crosslab::extremal::{omega_limit, solve_specs, SolveParams};
use crosslab::geometry::{DomainSpec, Grid, SetSpec};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let omega = DomainSpec::rectangle(Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0));
    let a = SetSpec::disc(Complex64::new(0.3, 0.0), 0.15);
    let grid = Grid::square(1.05, 129)?;
    let params = SolveParams::default();
    let limit = omega_limit(&omega, &a, &grid, 24, &params)?;
    let direct = solve_specs(&omega, &a, &grid, &params)?;
    let probe = Complex64::new(-0.2, 0.1);
    for (k, f) in limit.iterates.iter().enumerate().step_by(4) {
        println!("k = {:>2}: {:.5}", k + 1, f.sample(probe).unwrap_or(f64::NAN));
    }
    println!("direct: {:.5}", direct.sample(probe).unwrap());
    let worst = limit.max_increase.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!("largest increase between iterates: {worst:.2e}");
    Ok(())
}
