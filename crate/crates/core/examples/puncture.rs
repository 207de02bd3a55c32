//! A small hole of radius ε around 0 barely matters to the extremal function:
//! `h*` on the annulus `ε < |w| < 1` tends to 0 at `w = 0.1` as ε → 0.
//!
//! `cargo run --example puncture -- [grid nodes per side]`

use crosslab::extremal::{solve_specs, SolveParams};
use crosslab::geometry::{DomainSpec, Grid, SetSpec};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(441);
    let origin = Complex64::new(0.0, 0.0);
    let grid = Grid::square(1.02, n)?;
    let a = SetSpec::annulus(origin, 0.3, 0.6);
    println!("{:>8} {:>12} {:>12} {:>8}", "eps", "h*(0.1)", "closed form", "sweeps");
    for eps in [0.04, 0.02, 0.01, 0.005, 0.0025] {
        let omega = DomainSpec::annulus(origin, eps, 1.0);
        let field = solve_specs(&omega, &a, &grid, &SolveParams::default())?;
        let value = field.sample(Complex64::new(0.1, 0.0)).unwrap_or(f64::NAN);
        let exact = 3f64.ln() / (0.3 / eps).ln();
        println!("{eps:>8} {value:>12.6} {exact:>12.6} {:>8}", field.iterations);
    }
    Ok(())
}
