//! Every component of `{ω_A < α}` touches `A`, even for a disconnected `A`.

use crosslab::cross::sublevel_components;
use crosslab::extremal::{solve_specs, SolveParams};
use crosslab::geometry::{DomainSpec, Grid, SetSpec};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let c = |x, y| Complex64::new(x, y);
    let a = SetSpec::Union { parts: vec![SetSpec::disc(c(-0.5, 0.0), 0.1), SetSpec::disc(c(0.5, 0.2), 0.15)] };
    let field = solve_specs(&DomainSpec::disc(c(0.0, 0.0), 1.0), &a, &Grid::square(1.05, 129)?, &SolveParams::default())?;
    for alpha in [0.2, 0.5, 0.8, 0.95] {
        let report = sublevel_components(&field, alpha, &field.a_mask);
        let sizes: Vec<usize> = report.components.iter().map(|c| c.size).collect();
        println!("alpha {alpha:.2}: components {sizes:?}, all meet A: {}", report.pass);
    }
    Ok(())
}
