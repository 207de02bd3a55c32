//! Fibers and branch points of a few singular curves.

use crosslab::poly::{BiPoly, Poly};
use crosslab::singularity::{branch_locus, SingularSet};
use crosslab::Complex64;

fn main() -> crosslab::Result<()> {
    let c = |x| Complex64::new(x, 0.0);
    let curves = [
        ("w^2 - z", SingularSet::Poly(BiPoly::from_real(&[&[0.0, 0.0, 1.0], &[-1.0]]))),
        ("w^3 - 3w - z", SingularSet::Poly(BiPoly::from_real(&[&[0.0, -3.0, 0.0, 1.0], &[-1.0]]))),
        ("(w - z)(w + z^2)", SingularSet::Graphs(vec![vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0), c(-1.0)]])),
    ];
    for (name, m) in curves {
        let locus = branch_locus(&m)?;
        println!("{name}");
        println!("  branch points: {:?}", locus.points);
        for z in locus.points.iter().take(2) {
            println!("  fiber over {z}: {:?}", m.fiber_w(*z)?.roots);
        }
        println!("  fiber over 2: {:?}", m.fiber_w(c(2.0))?.values());
    }
    let graph = SingularSet::Poly(BiPoly::graph(&Poly::from_real(&[0.0, 0.0, 1.0])));
    println!("graph of z^2 over w = 4: {:?}", graph.fiber_z(c(4.0))?.values());
    Ok(())
}
