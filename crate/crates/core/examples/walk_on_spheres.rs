//! Monte Carlo exit probabilities against the grid solver on an off-center
//! condenser, where no closed form is at hand.

use crosslab::extremal::{mc_exit_probability, solve_specs, SolveParams};
use crosslab::geometry::{DomainSpec, Grid, SetSpec};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let omega = DomainSpec::rectangle(Complex64::new(-1.0, -0.6), Complex64::new(1.0, 0.6));
    let a = SetSpec::disc(Complex64::new(0.4, 0.1), 0.2);
    let field = solve_specs(&omega, &a, &Grid::square(1.05, 257)?, &SolveParams::default())?;
    for (k, z) in [(-0.6, 0.0), (0.0, 0.3), (0.7, -0.3), (0.1, 0.1)].into_iter().enumerate() {
        let z = Complex64::new(z.0, z.1);
        let mc = mc_exit_probability(z, &omega, &a, 20_000, k as u64)?;
        println!(
            "{z:>12}: grid {:.4}  walks {:.4} ± {:.4}",
            field.sample(z).unwrap(),
            mc.mean,
            mc.std_error
        );
    }
    Ok(())
}
