mod common;

use proptest::prelude::*;
use twonorm::approx::phi;
use twonorm::rng;
use twonorm::sequences::{cauchy_series, ProbePair, SequencePrefix};
use twonorm::spaces::TwoNorm;
use twonorm::{oracle_solve, solve, Element, SimultaneousProblem, Space, SubspaceBasis};

fn coords(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, len)
}

/// `sqrt(|x|²|y|² − ⟨x,y⟩²)` written out literally.
fn gram_textbook(x: &[f64], y: &[f64]) -> f64 {
    let xx: f64 = x.iter().map(|v| v * v).sum();
    let yy: f64 = y.iter().map(|v| v * v).sum();
    let xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (xx * yy - xy * xy).max(0.0).sqrt()
}

/// Independent evaluation of the polynomial 2-norm: values and derivatives
/// from the power sums directly.
fn white_textbook(points: &[f64], f: &[f64], g: &[f64]) -> f64 {
    let eval = |c: &[f64], t: f64| c.iter().enumerate().map(|(j, a)| a * t.powi(j as i32)).sum::<f64>();
    let deriv = |c: &[f64], t: f64| {
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(j, a)| j as f64 * a * t.powi(j as i32 - 1))
            .sum::<f64>()
    };
    points
        .iter()
        .map(|&t| (eval(f, t) * deriv(g, t) - deriv(f, t) * eval(g, t)).abs())
        .sum()
}

proptest! {
    #[test]
    fn gram_matches_textbook_formula(x in coords(4), y in coords(4)) {
        let s = Space::gram(4).unwrap();
        let v = s.eval(&x, &y);
        let scale: f64 = x.iter().map(|a| a * a).sum::<f64>() * y.iter().map(|a| a * a).sum::<f64>();
        // the textbook form carries ~sqrt(ε·scale) error near dependence
        prop_assert!((v - gram_textbook(&x, &y)).abs() <= 1e-7 * (1.0 + scale.sqrt()));
    }

    #[test]
    fn white_matches_direct_evaluation(f in coords(3), g in coords(3)) {
        let pts = [0.0, 0.2, 0.4, 0.6];
        let s = Space::white(2, pts.to_vec()).unwrap();
        let v = s.eval(&f, &g);
        prop_assert!((v - white_textbook(&pts, &f, &g)).abs() <= 1e-10 * (1.0 + v));
    }

    #[test]
    fn seminorm_is_sublinear(x in coords(3), y in coords(3), b in coords(3), alpha in -4.0f64..4.0) {
        prop_assume!(b.iter().any(|v| v.abs() > 1e-3));
        for s in [Space::gram(3).unwrap(), Space::white(2, vec![0.0, 0.2, 0.4, 0.6]).unwrap()] {
            let b = Element::from(b.clone());
            let (x, y) = (Element::from(x.clone()), Element::from(y.clone()));
            let px = s.seminorm_b(&b, &x).unwrap();
            let py = s.seminorm_b(&b, &y).unwrap();
            let pxy = s.seminorm_b(&b, &x.add(&y)).unwrap();
            prop_assert!(pxy <= px + py + 1e-9 * (1.0 + px + py));
            let pax = s.seminorm_b(&b, &x.scale(alpha)).unwrap();
            prop_assert!((pax - alpha.abs() * px).abs() <= 1e-9 * (1.0 + pax));
            prop_assert!(s.seminorm_b(&b, &b.scale(alpha)).unwrap() <= 1e-9 * (1.0 + alpha.abs()));
        }
    }

    #[test]
    fn white_dependent_pairs_vanish(f in coords(4), alpha in -3.0f64..3.0) {
        let s = Space::white(3, vec![0.0, 0.15, 0.3, 0.45, 0.7, 0.9]).unwrap();
        let g: Vec<f64> = f.iter().map(|v| alpha * v).collect();
        prop_assert!(s.eval(&f, &g) <= 1e-9);
    }

    #[test]
    fn phi_is_convex(seed in 0u64..500, lambda in 0.0f64..=1.0) {
        let mut r = rng::seeded(seed);
        let (p, _) = common::random_gram_problem(&mut r, 3, 2, 50.0);
        let g = rng::uniform_element(&mut r, p.space.len()).scale(3.0);
        let h = rng::uniform_element(&mut r, p.space.len()).scale(3.0);
        let mid = phi(&p, &g.blend(&h, lambda)).unwrap();
        let chord = lambda * phi(&p, &g).unwrap() + (1.0 - lambda) * phi(&p, &h).unwrap();
        prop_assert!(mid <= chord + 1e-9);
    }

    #[test]
    fn cauchy_profile_is_monotone(seed in 0u64..500, n in 2usize..25) {
        let mut r = rng::seeded(seed);
        let s = Space::gram(3).unwrap();
        let seq = SequencePrefix {
            elements: (0..n).map(|_| rng::uniform_element(&mut r, 3)).collect(),
            probes: ProbePair { y: Element::from(vec![0.0, 1.0, 0.2]), z: Element::from(vec![0.3, 0.0, 1.0]) },
        };
        let series = cauchy_series(&s, &seq).unwrap();
        prop_assert_eq!(series.len(), n - 1);
        prop_assert!(series.windows(2).all(|w| w[1].0 <= w[0].0 && w[1].1 <= w[0].1));
    }

    #[test]
    fn report_json_round_trips(xs in prop::collection::vec(-1e6f64..1e6, 1..8)) {
        let s = twonorm::json::to_string(&Element::from(xs.clone())).unwrap();
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, xs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enlarging_g_never_increases_value(seed in 0u64..1000) {
        let mut r = rng::seeded(seed);
        let (p, _) = common::random_gram_problem(&mut r, 3, 3, 50.0);
        let mut smaller = p.clone();
        smaller.g_basis = SubspaceBasis::new(p.g_basis.vectors()[..2].to_vec());
        let big = solve(&p).unwrap().value;
        let small = solve(&smaller).unwrap().value;
        prop_assert!(big <= small + p.solver.tol);
    }

    #[test]
    fn solve_report_is_consistent(seed in 0u64..1000) {
        let mut r = rng::seeded(seed);
        let (p, _) = common::random_gram_problem(&mut r, 2, 2, 50.0);
        let rep = solve(&p).unwrap();
        prop_assert!((phi(&p, &rep.g_star).unwrap() - rep.value).abs() <= p.solver.tol);
        prop_assert!(rep.per_restart.iter().all(|x| rep.value <= x.value + p.solver.tol));
    }
}

#[test]
fn polynomial_solver_tracks_the_grid_oracle() {
    let mut r = rng::seeded(31);
    let mut worst = 0.0_f64;
    for i in 0..10 {
        let p: SimultaneousProblem = common::random_white_problem(&mut r, 1 + i % 2);
        let rep = solve(&p).unwrap();
        let radius = 2.0 * rep.coeffs[0].abs().max(2.0);
        let or = oracle_solve(&p, radius, 2000).unwrap();
        // subgradient-only route: never much better than the grid, and close to it
        assert!(rep.value >= or.value - 1e-6, "instance {i}");
        worst = worst.max(rep.value - or.value);
    }
    assert!(worst < 1e-4, "worst gap {worst}");
}
