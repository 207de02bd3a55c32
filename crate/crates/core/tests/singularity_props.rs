use crosslab::cross::ProductMask;
use crosslab::geometry::Grid;
use crosslab::poly::{BiPoly, Poly};
use crosslab::singularity::{branch_locus, envelope_trace, is_isolated_point, SingularSet};
use crosslab::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y)| c(x, y))
}

/// Monic in `w` of degree `dw`, with `z`-degree at most 2 in the lower terms.
fn monic() -> impl Strategy<Value = BiPoly> {
    (1usize..=4).prop_flat_map(|dw| {
        proptest::collection::vec(complex(), 3 * dw).prop_map(move |cs| {
            let mut rows = vec![vec![c(0.0, 0.0); dw + 1]; 3];
            for (i, row) in rows.iter_mut().enumerate() {
                row[..dw].copy_from_slice(&cs[i * dw..(i + 1) * dw]);
            }
            rows[0][dw] = c(1.0, 0.0);
            BiPoly::new(rows)
        })
    })
}

fn assert_close(a: &[Complex64], b: &[Complex64], tol: f64) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        prop_assert!((x - y).norm() <= tol, "{x} vs {y}");
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn graph_fibers_are_the_graph_values(
        phis in proptest::collection::vec(proptest::collection::vec(complex(), 1..4), 1..4),
        z in complex(),
    ) {
        let m = SingularSet::Graphs(phis.clone());
        let mut want: Vec<Complex64> = phis.iter().map(|p| Poly::new(p.clone()).eval(z)).collect();
        crosslab::poly::sort_lex(&mut want);
        let mut got = m.fiber_w(z).unwrap().values();
        got.dedup_by(|a, b| (*a - *b).norm() <= 1e-12);
        want.dedup_by(|a, b| (*a - *b).norm() <= 1e-12);
        assert_close(&got, &want, 1e-12)?;
    }

    #[test]
    fn swapping_variables_swaps_fibers(p in monic(), v in complex()) {
        let a = SingularSet::Poly(p.clone()).fiber_w(v).unwrap();
        let b = SingularSet::Poly(p.swapped()).fiber_z(v).unwrap();
        prop_assert_eq!(a.degenerate, b.degenerate);
        assert_close(&a.values(), &b.values(), 1e-12)?;
    }

    #[test]
    fn branch_locus_is_where_fibers_collide(p in monic(), probes in proptest::collection::vec(complex(), 20)) {
        let m = SingularSet::Poly(p.clone());
        let dw = p.degrees().1;
        let Ok(locus) = branch_locus(&m) else { return Ok(()) };
        if locus.repeated_degree > 0 {
            return Ok(());
        }
        for &z in &locus.points {
            prop_assert!(m.fiber_w(z).unwrap().min_gap() <= 1e-6, "{z}");
        }
        for z in probes.into_iter().map(|z| 2.0 * z) {
            if locus.points.iter().any(|&b| (b - z).norm() < 1e-3) {
                continue;
            }
            let fib = m.fiber_w(z).unwrap();
            prop_assert_eq!(fib.roots.len(), dw);
            prop_assert!(fib.roots.iter().all(|r| r.multiplicity == 1));
        }
    }

    #[test]
    fn trace_lies_in_the_envelope(p in monic(), bits in proptest::collection::vec(any::<bool>(), 64 * 64)) {
        let g = Grid::square(1.0, 8).unwrap();
        let env = ProductMask::from_fn(g, g, |iz, iw| bits[iw * 64 + iz]);
        let trace = envelope_trace(&SingularSet::Poly(p), &env);
        prop_assert!(trace.is_subset_of(&env));
    }
}

#[test]
fn trace_examples() {
    let g = Grid::square(1.0, 24).unwrap();
    let full = ProductMask::from_fn(g, g, |_, _| true);
    let cell = g.dx().hypot(g.dy());

    let diag = envelope_trace(&SingularSet::Poly(BiPoly::diagonal()), &full);
    for (iz, iw) in full.iter() {
        let gap = (g.point(iz) - g.point(iw)).norm();
        if gap == 0.0 {
            assert!(diag.get(iz, iw));
        }
        if diag.get(iz, iw) {
            // |z - w| is bounded by the Lipschitz reach of z - w.
            assert!(gap <= 2.0 * cell, "{gap}");
        }
    }
    assert!(diag.count() < full.count() / 10);

    let far = envelope_trace(&SingularSet::Poly(BiPoly::from_real(&[&[-5.0, 1.0]])), &full);
    assert!(far.is_empty());

    let sq = SingularSet::Graphs(vec![vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]]);
    let parabola = envelope_trace(&sq, &full);
    assert!(!parabola.is_empty());
    for (iz, iw) in parabola.iter() {
        let (z, w) = (g.point(iz), g.point(iw));
        assert!((w - z * z).norm() <= 6.0 * cell);
    }
}

#[test]
fn points_sets_are_isolated() {
    let m = SingularSet::Points(vec![[c(0.0, 0.0), c(0.0, 0.0)]]);
    let iso = is_isolated_point(&m, (c(0.0, 0.0), c(0.0, 0.0)), (0.1, 0.1)).unwrap();
    assert!(iso.isolated && !iso.empty);
    let line = SingularSet::Poly(BiPoly::diagonal());
    let iso = is_isolated_point(&line, (c(0.0, 0.0), c(0.0, 0.0)), (0.1, 0.1)).unwrap();
    assert!(!iso.isolated && !iso.empty);
    let iso = is_isolated_point(&line, (c(0.0, 0.0), c(0.5, 0.0)), (0.1, 0.1)).unwrap();
    assert!(iso.empty);
}

#[test]
fn crossing_branches_give_one_point_each() {
    // (w - z)(w + z^2): the branches meet over z = 0 and z = -1.
    let m = SingularSet::Graphs(vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]]);
    let locus = branch_locus(&m).unwrap();
    assert_eq!(locus.points.len(), 2, "{:?}", locus.points);
    assert!((locus.points[0] - c(-1.0, 0.0)).norm() <= 1e-8);
    assert!(locus.points[1].norm() <= 1e-8);
}
