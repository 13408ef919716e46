mod common;

use common::{dist_sq, norm, point, random_amalgamator, random_set, sample_in, violation, SET_KINDS};
use dsap::problems_io::{generate_random, GeneratorKind};
use dsap::rng;
use dsap::strings::{self, IndexVector};
use proptest::prelude::*;
use rand::Rng as _;

fn coords(n: usize, half: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-half..half, n)
}

fn case() -> impl Strategy<Value = (usize, usize, u64, Vec<f64>, Vec<f64>)> {
    (0..SET_KINDS.len(), 1usize..=10, any::<u64>())
        .prop_flat_map(|(k, n, seed)| (Just(k), Just(n), Just(seed), coords(n, 50.0), coords(n, 50.0)))
}

fn slack(points: &[&[f64]]) -> f64 {
    let s = points.iter().map(|p| norm(p)).fold(0.0, f64::max);
    1e-9 * (1.0 + s * s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn projection_is_a_firmly_nonexpansive_idempotent_retraction((k, n, seed, x, y) in case()) {
        let mut r = rng::seeded(seed, 0);
        let set = random_set(&mut r, SET_KINDS[k], n);
        let px = set.project(&point(x.clone())).unwrap();
        let py = set.project(&point(y.clone())).unwrap();
        let (pxc, pyc) = (px.coords(), py.coords());
        let tol = slack(&[&x, &y]);

        // ‖Px − Py‖² ≤ ⟨Px − Py, x − y⟩
        let inner: f64 = pxc.iter().zip(pyc).zip(x.iter().zip(&y)).map(|((a, b), (c, d))| (a - b) * (c - d)).sum();
        prop_assert!(dist_sq(pxc, pyc) <= inner + tol);
        prop_assert!(violation(&set, pxc) <= tol);
        let again = set.project(&px).unwrap();
        prop_assert!(dist_sq(again.coords(), pxc).sqrt() <= 1e-12 * (1.0 + norm(pxc)));
    }

    #[test]
    fn projection_is_nearest((k, n, seed, x, _y) in case()) {
        let mut r = rng::seeded(seed, 1);
        let set = random_set(&mut r, SET_KINDS[k], n);
        let px = set.project(&point(x.clone())).unwrap();
        let d = dist_sq(&x, px.coords());
        prop_assert!((set.distance(&point(x.clone())).unwrap().powi(2) - d).abs() <= slack(&[&x]));
        for _ in 0..20 {
            let z = sample_in(&mut r, &set, n);
            prop_assert!(d <= dist_sq(&x, &z) + slack(&[&x, &z]));
        }
    }

    #[test]
    fn string_and_amalgamator_are_nonexpansive(seed in any::<u64>(), n in 1usize..=8, m in 1usize..=8) {
        let problem = generate_random(GeneratorKind::Mixed, n, m, seed, 0.1).unwrap();
        let mut r = rng::seeded(seed, 2);
        let x = point(common::uniform_cube(&mut r, n, 20.0));
        let y = point(common::uniform_cube(&mut r, n, 20.0));
        let len = r.random_range(1..=2 * m);
        let t = IndexVector::new((0..len).map(|_| r.random_range(0..m)).collect()).unwrap();
        let tx = strings::apply_string(problem.sets(), &t, &x).unwrap();
        let ty = strings::apply_string(problem.sets(), &t, &y).unwrap();
        prop_assert!(tx.endpoint().distance(ty.endpoint()) <= x.distance(&y) + 1e-10);

        let (a, _) = random_amalgamator(&mut r, m, 2 * m);
        let ax = strings::apply_amalgamator(problem.sets(), &a, &x).unwrap();
        let ay = strings::apply_amalgamator(problem.sets(), &a, &y).unwrap();
        prop_assert!(ax.next.distance(&ay.next) <= x.distance(&y) + 1e-10);
        prop_assert!(ax.phi_sum >= 0.0);
    }

    #[test]
    fn points_of_the_intersection_are_fixed(seed in any::<u64>(), n in 1usize..=8, m in 1usize..=10) {
        let margin = 0.1;
        let problem = generate_random(GeneratorKind::Mixed, n, m, seed, margin).unwrap();
        let mut r = rng::seeded(seed, 3);
        let u = rng::unit_vector(&mut r, n);
        let s = margin * r.random::<f64>();
        let anchor = problem.known_feasible_point().unwrap().coords();
        let x = point(anchor.iter().zip(&u).map(|(a, d)| a + s * d).collect());
        let (a, _) = random_amalgamator(&mut r, m, m);
        let step = strings::apply_amalgamator(problem.sets(), &a, &x).unwrap();
        prop_assert!(step.next.distance(&x) <= 1e-10);
        prop_assert!(step.phi_sum <= 1e-20);
    }

    #[test]
    fn zero_phi_means_no_motion(seed in any::<u64>(), n in 1usize..=6, m in 1usize..=6) {
        let problem = generate_random(GeneratorKind::Mixed, n, m, seed, 0.1).unwrap();
        let mut r = rng::seeded(seed, 4);
        let x = point(common::uniform_cube(&mut r, n, 5.0));
        let t = IndexVector::new((0..m).collect()).unwrap();
        let res = strings::apply_string(problem.sets(), &t, &x).unwrap();
        let phi = strings::phi(&t, &x, &res.stages).unwrap();
        prop_assert!(phi >= 0.0);
        if phi == 0.0 {
            prop_assert_eq!(res.endpoint(), &x);
        }
        // Each stage moves by at most √φ in total.
        prop_assert!(res.endpoint().distance(&x) <= phi.sqrt() * (t.len() as f64).sqrt() + 1e-12);
    }
}
