//! Relative extremal function of the condenser `(|z| ≤ 1/4, |z| < 1)`
//! against `log(4|z|) / log 4`, and a PGM picture of it.
//!
//! `cargo run --example annulus_extremal -- [out.pgm]`

use std::fs::File;
use std::io::BufWriter;

use crosslab::extremal::{solve_specs, SolveParams};
use crosslab::geometry::{DomainSpec, Grid, SetSpec};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let origin = Complex64::new(0.0, 0.0);
    let grid = Grid::square(1.1, 256)?;
    let field = solve_specs(&DomainSpec::disc(origin, 1.0), &SetSpec::disc(origin, 0.25), &grid, &SolveParams::default())?;
    println!("{} sweeps, residual {:.2e}", field.iterations, field.residual);
    for r in [0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9] {
        let v = field.sample(Complex64::from_polar(r, 0.7)).unwrap();
        let exact = (4.0 * r).ln() / 4f64.ln();
        println!("|z| = {r:.1}: {v:.6} (exact {exact:.6})");
    }
    if let Some(path) = std::env::args().nth(1) {
        field.write_pgm(BufWriter::new(File::create(&path)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
