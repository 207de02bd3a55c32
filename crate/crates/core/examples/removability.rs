//! A point singularity is invisible to Cauchy integrals: the torus average
//! of an extension recovers its value at the center, and an isolated point
//! of the singular set is detected as such.

use crosslab::extension::cauchy_reconstruct;
use crosslab::poly::BiPoly;
use crosslab::singularity::{is_isolated_point, SingularSet};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let c = |x, y| Complex64::new(x, y);
    let f = |z: Complex64, w: Complex64| (z + 2.0 * w).exp() / (1.0 - z * w);
    let center = (c(0.1, 0.0), c(-0.2, 0.1));
    let value = cauchy_reconstruct(&f, center, (0.3, 0.3), 64)?;
    let exact = f(center.0, center.1);
    println!("torus average {value:.12}, value {exact:.12}, error {:.1e}", (value - exact).norm());

    let point = SingularSet::Points(vec![[c(0.0, 0.0), c(0.0, 0.0)]]);
    println!("{{(0,0)}}: {:?}", is_isolated_point(&point, (c(0.0, 0.0), c(0.0, 0.0)), (0.2, 0.2))?);
    // z·w = 0 is a union of two lines, not an isolated point.
    let lines = SingularSet::Poly(BiPoly::from_real(&[&[0.0], &[0.0, 1.0]]));
    println!("zw = 0: {:?}", is_isolated_point(&lines, (c(0.0, 0.0), c(0.0, 0.0)), (0.2, 0.2))?);
    Ok(())
}
