mod common;

use common::{c, zeta};
use proptest::prelude::*;
use strip_rigidity::mu::{
    check_line_hypothesis, check_pair, find_zero_newton, mu_derivative, mu_eval, scan_strip, winding_number, Rect,
    ScanOptions, ScanRegion,
};
use strip_rigidity::{EtaFunction, StripPoint};

const ZEROS: [f64; 3] = [14.134725141734693, 21.022039638771555, 25.010857580145688];

fn sp(re: f64, im: f64) -> StripPoint {
    StripPoint::from_parts(re, im)
}

fn region(sigma: (f64, f64, f64), tau: (f64, f64, f64)) -> ScanRegion {
    ScanRegion { sigma: (sigma.0, sigma.1), tau: (tau.0, tau.1), sigma_step: sigma.2, tau_step: tau.2 }
}

#[test]
fn zeta_identity_in_and_out_of_strip() {
    let f = EtaFunction::frac();
    for s in [c(2.0, 0.0), c(0.3, 7.0), c(0.9, -12.0), c(1.2, 30.0)] {
        let mu = mu_eval(&f, StripPoint::new(s), 1e-10).unwrap().value;
        let want = (c(1.0, 0.0) - s) * zeta(s) / s;
        assert!((mu - want).norm() < 1e-8, "s={s}: {mu} vs {want}");
    }
}

#[test]
fn newton_finds_zeta_zeros_with_certificates() {
    let f = EtaFunction::frac();
    for tau in ZEROS {
        let z = find_zero_newton(&f, c(0.6, tau + 0.1), 1e-10, 50).unwrap();
        assert!((z.location - c(0.5, tau)).norm() < 1e-8);
        assert_eq!(z.winding, Some(1));
        assert!(z.critical_line && z.partner_nonzero);
        // Perturbed seed reconverges.
        let again = find_zero_newton(&f, z.location + 0.01, 1e-10, 50).unwrap();
        assert!((again.location - z.location).norm() <= 10.0 * 1e-10);
    }
}

#[test]
fn winding_counts_several_zeros() {
    let f = EtaFunction::frac();
    let r = Rect { sigma: (0.2, 0.8), tau: (13.0, 26.0) };
    assert_eq!(winding_number(&f, r, 1e-8).unwrap(), 3);
}

#[test]
fn scan_examples() {
    let e = EtaFunction::parse("const:2i").unwrap();
    let rep = scan_strip(&e, region((0.05, 0.95, 0.05), (-1.0, 1.0, 0.05)), ScanOptions::default()).unwrap();
    assert_eq!(rep.zeros.len(), 1);
    assert!(rep.zeros[0].partner_nonzero && !rep.zeros[0].critical_line);

    let f = EtaFunction::frac();
    let rep = scan_strip(&f, region((0.05, 0.95, 0.1), (10.0, 30.0, 0.25)), ScanOptions::default()).unwrap();
    assert_eq!(rep.zeros.len(), 3);
    for (z, tau) in rep.zeros.iter().zip(ZEROS) {
        assert!((z.location.re - 0.5).abs() < 1e-4 && (z.location.im - tau).abs() < 1e-4);
    }
    assert!(rep.line_hypothesis_min > 1e-3);
    assert!(rep.zeros.iter().all(|z| z.partner_nonzero));

    let one = EtaFunction::constant(c(1.0, 0.0));
    let rep = scan_strip(&one, region((0.1, 0.9, 0.1), (1.0, 5.0, 0.5)), ScanOptions::default()).unwrap();
    assert!(rep.zeros.is_empty());
    assert_eq!(rep.grid.len(), 9 * 9);
}

#[test]
fn scan_clamps_sigma() {
    let f = EtaFunction::frac();
    let rep = scan_strip(&f, region((0.01, 0.5, 0.25), (5.0, 6.0, 0.5)), ScanOptions::default()).unwrap();
    assert_eq!(rep.region.sigma.0, 0.02);
    assert!(rep.grid.iter().all(|g| g.sigma >= 0.02));
    assert!(scan_strip(&f, region((0.0, 0.5, 0.25), (5.0, 6.0, 0.5)), ScanOptions::default()).is_err());
}

#[test]
fn reflected_pair_for_constant_eta() {
    let e = EtaFunction::parse("const:2i").unwrap();
    let p = check_pair(&e, sp(0.8, -0.4), 1e-9).unwrap();
    assert!(p.s_is_zero && !p.both_zero());
    assert!((p.mu_partner - 3.0).norm() < 1e-9);
    let lc = check_line_hypothesis(&e, (-2.0, 2.0), 0.1, 1e-10).unwrap();
    assert!(lc.min_abs > 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conjugation_for_real_eta(re in 0.05f64..3.0, im in -30.0f64..30.0, rho in -3.0f64..3.0, frac in proptest::bool::ANY) {
        let e = if frac { EtaFunction::frac() } else { EtaFunction::constant(c(rho, 0.0)) };
        let tol = 1e-10;
        let a = mu_eval(&e, sp(re, im), tol).unwrap().value;
        let b = mu_eval(&e, sp(re, -im), tol).unwrap().value;
        prop_assert!((a - b.conj()).norm() <= 2.0 * tol);
    }

    #[test]
    fn constant_closed_form(re in 0.01f64..5.0, im in -50.0f64..50.0, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let rho = c(a, b);
        let w = c(re, im);
        let tol = 1e-10;
        let got = mu_eval(&EtaFunction::constant(rho), StripPoint::new(w), tol).unwrap().value;
        prop_assert!((got - ((rho - 1.0) * w - rho) / w).norm() <= tol);
    }

    #[test]
    fn derivative_consistency(re in 0.1f64..2.0, im in -25.0f64..25.0, fam in 0usize..3) {
        let e = match fam {
            0 => EtaFunction::frac(),
            1 => EtaFunction::parse("osc:1-i,0.5,2.5").unwrap(),
            _ => EtaFunction::parse("const:3-2i").unwrap(),
        };
        let tol = 1e-12;
        let h = 1e-5;
        let d = mu_derivative(&e, sp(re, im), 1e-10).unwrap();
        let fd = (mu_eval(&e, sp(re + h, im), tol).unwrap().value - mu_eval(&e, sp(re - h, im), tol).unwrap().value) / (2.0 * h);
        prop_assert!((d - fd).norm() <= 1e-6 + 10.0 * 1e-10, "{} vs {}", d, fd);
    }
}
