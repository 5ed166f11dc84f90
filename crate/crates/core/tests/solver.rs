mod common;

use common::{c, int_grid, random_eta, rng};
use proptest::prelude::*;
use strip_rigidity::mu::mu_eval;
use strip_rigidity::solver::{psi_bounded_form, psi_closed_form, psi_ode_oracle, psi_trajectory, DEFAULT_ZERO_TOL};
use strip_rigidity::{EtaFunction, StripPoint};

fn sp(re: f64, im: f64) -> StripPoint {
    StripPoint::from_parts(re, im)
}

#[test]
fn spec_examples() {
    let zero = EtaFunction::parse("const:0").unwrap();
    assert!((psi_closed_form(&zero, sp(0.3, 2.0), 16.0, 1e-10).unwrap() - 2.297397).norm() < 1e-6);
    let two = EtaFunction::constant(c(2.0, 0.0));
    for p in psi_trajectory(&two, sp(2.0, 0.0), &[1.0, 10.0, 50.0], 1e-10).unwrap() {
        assert!((p.psi - 1.0).norm() < 1e-9);
    }
    let f = EtaFunction::frac();
    let a = psi_closed_form(&f, sp(1.5, 0.0), 10.0, 1e-10).unwrap();
    let b = psi_ode_oracle(&f, sp(1.5, 0.0), 10.0, 1e-10).unwrap();
    assert!((a - b).norm() < 1e-8);
}

#[test]
fn bounded_branch_sup_bound() {
    for (eta, w) in [(EtaFunction::parse("const:2i").unwrap(), sp(0.8, -0.4)), (EtaFunction::constant(c(2.0, 0.0)), sp(2.0, 0.0))] {
        let traj = psi_trajectory(&eta, w, &int_grid(1, 1000), 1e-10).unwrap();
        let sup = traj.iter().map(|p| p.psi.norm()).fold(0.0, f64::max);
        let bound = eta.sup_bound() * (c(1.0, 0.0) - w.w).norm() / w.sigma;
        assert!(sup <= bound + 1e-6, "{sup} > {bound}");
        let b = psi_bounded_form(&eta, w, 1000.0, 1e-10, DEFAULT_ZERO_TOL).unwrap();
        assert!((b - traj.last().unwrap().psi).norm() < 1e-6);
    }
}

#[test]
fn unbounded_branch_grows() {
    let mut r = rng(7);
    for k in 0..6 {
        let eta = random_eta(&mut r, k);
        let w = sp(0.2 + 0.3 * k as f64, 3.0 - k as f64);
        let mu = mu_eval(&eta, w, 1e-10).unwrap().value;
        if mu.norm() <= 0.01 {
            continue;
        }
        let traj = psi_trajectory(&eta, w, &int_grid(1, 1000), 1e-10).unwrap();
        let first = traj[..500].iter().map(|p| p.psi.norm()).fold(0.0, f64::max);
        let second = traj[500..].iter().map(|p| p.psi.norm()).fold(0.0, f64::max);
        assert!(second >= first * 2f64.powf(w.sigma) / 2.0, "{} w={}: {second} vs {first}", eta.id(), w.w);
    }
}

fn eta_strategy() -> impl Strategy<Value = EtaFunction> {
    (0usize..3, any::<u64>()).prop_map(|(fam, seed)| random_eta(&mut rng(seed), fam))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn psi_at_one(eta in eta_strategy(), re in -1.0f64..3.0, im in -30.0f64..30.0) {
        prop_assert_eq!(psi_closed_form(&eta, sp(re, im), 1.0, 1e-10).unwrap(), c(1.0, 0.0));
        prop_assert_eq!(psi_ode_oracle(&eta, sp(re, im), 1.0, 1e-10).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn cross_oracle(eta in eta_strategy(), re in 0.1f64..2.0, im in -10.0f64..10.0, t in 1.0f64..100.0) {
        let tol = 1e-10;
        let a = psi_closed_form(&eta, sp(re, im), t, tol).unwrap();
        let b = psi_ode_oracle(&eta, sp(re, im), t, tol).unwrap();
        prop_assert!((a - b).norm() <= 10.0 * tol * (1.0 + a.norm()), "{} vs {}", a, b);
    }

    #[test]
    fn growth_law(eta in eta_strategy(), re in 0.1f64..2.0, im in -10.0f64..10.0, t in 1.0f64..500.0) {
        let w = sp(re, im);
        let psi = psi_closed_form(&eta, w, t, 1e-11).unwrap();
        let mu = mu_eval(&eta, w, 1e-11).unwrap().value;
        let lhs = (psi * t.powf(-re) + mu).norm();
        let cert = (c(1.0, 0.0) - w.w).norm() * eta.sup_bound() / (re * t.powf(re));
        prop_assert!(lhs <= cert + 1e-9, "{} > {}", lhs, cert);
    }
}
