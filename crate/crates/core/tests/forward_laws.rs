use dtep::forward::{
    char_poly_polybc, char_poly_transmission, phi_family, reduce_transmission, solution_family, transmission_spectrum,
    FamilyKind,
};
use dtep::roots::{poly_coprime, poly_roots};
use dtep::sample::{self, trial_rng};
use dtep::{StandardCoeffs, TransmissionInstance, Wide, C64};

fn rel(x: C64, want: C64) -> f64 {
    (x - want).norm() / want.norm()
}

fn standard(seed: u64, k: u64, l: usize) -> StandardCoeffs<f64> {
    sample::standard(&mut trial_rng(seed, k), l)
}

fn transmission(seed: u64, k: u64, l: usize) -> TransmissionInstance<f64> {
    sample::transmission(&mut trial_rng(seed, k), l)
}

#[test]
fn leading_coefficients_of_p_and_q() {
    for k in 0..40 {
        let s = standard(1, k, 1 + k as usize % 10);
        let p = solution_family(&s, FamilyKind::P);
        let q = solution_family(&s, FamilyKind::Q);
        let mut prod = C64::new(1.0, 0.0);
        for n in 1..=s.l() {
            prod /= s.a()[n - 1];
            assert_eq!(p.get(n + 1).degree(), Some(n));
            assert!(rel(p.get(n + 1).leading(), prod) < 1e-10);
            if n >= 2 {
                assert_eq!(q.get(n + 1).degree(), Some(n - 1));
                assert!(rel(q.get(n + 1).leading(), -prod) < 1e-10);
            }
        }
    }
}

#[test]
fn leading_coefficient_of_phi() {
    for k in 0..40 {
        let t = transmission(2, k, 1 + k as usize % 8);
        let phi = phi_family(&t.alpha, &t.beta, FamilyKind::Phi);
        let mut prod = C64::new(1.0, 0.0);
        for n in 1..=t.l() + 1 {
            assert_eq!(phi.get(n).degree(), Some(n - 1));
            assert!(rel(phi.get(n).leading(), prod) < 1e-10);
            if n <= t.l() {
                prod /= t.alpha[n - 1];
            }
        }
    }
}

#[test]
fn wronskian_is_a_nonzero_constant() {
    for k in 0..20 {
        let s = standard(3, k, 1 + k as usize % 8);
        let p = solution_family(&s, FamilyKind::P);
        let q = solution_family(&s, FamilyKind::Q);
        for n in 0..=s.l() {
            let w = &(q.get(n + 1) * p.get(n)) - &(q.get(n) * p.get(n + 1));
            let c = w.coeff(0);
            assert!(c.norm() > 1e-6, "n = {n}");
            for z in &w.coeffs()[1..] {
                assert!(z.norm() <= 1e-10 * c.norm().max(1.0), "n = {n}: {w:?}");
            }
        }
    }
}

#[test]
fn end_polynomials_are_coprime() {
    for k in 0..30 {
        let l = 2 + k as usize % 7;
        let s = standard(4, k, l);
        let p = solution_family(&s, FamilyKind::P);
        let q = solution_family(&s, FamilyKind::Q);
        assert!(poly_coprime(p.last(), q.last(), 1e-8).unwrap(), "trial {k}");

        let t = transmission(4, k, l);
        let phid = phi_family(&t.alpha_dot, &t.beta_dot, FamilyKind::PhiDot);
        assert!(poly_coprime(phid.get(l + 1), phid.get(l), 1e-8).unwrap(), "trial {k}");
    }
}

#[test]
fn transmission_degree_never_collapses() {
    for k in 0..100 {
        let l = 1 + k as usize % 8;
        assert_eq!(char_poly_transmission(&transmission(5, k, l)).degree(), Some(2 * l - 1));
    }
}

#[test]
fn reduction_preserves_the_spectrum() {
    // compared in double-double so that root conditioning does not blur the test
    for k in 0..40 {
        let l = 1 + k as usize % 8;
        let t = transmission(6, k, l).convert::<Wide>();
        let (s, bc, _) = reduce_transmission(&t).unwrap();
        let e = char_poly_polybc(&s, &bc).unwrap();
        let from_e = poly_roots(&e).unwrap();
        let from_d = transmission_spectrum(&t).unwrap();
        assert_eq!(from_e.len(), 2 * l - 1);
        let d = from_d.matching_distance(&from_e).unwrap();
        assert!(d.hi() < 1e-12, "trial {k}: {d}");

        // and E is a constant multiple of D
        let d_poly = char_poly_transmission(&t);
        let ratio = e.leading() / d_poly.leading();
        let gap = &e - &d_poly.scale_by(ratio);
        assert!(gap.scale().hi() < 1e-20 * e.scale().hi(), "trial {k}");
    }
}

#[test]
fn two_spectra_are_disjoint() {
    for k in 0..30 {
        let s = standard(7, k, 2 + k as usize % 8);
        let ts = dtep::forward::two_spectra_forward(&s).unwrap();
        assert_eq!(ts.mu.len(), s.l());
        assert_eq!(ts.nu.len(), s.l() - 1);
        for x in ts.mu.values() {
            assert!(ts.nu.values().iter().all(|y| (x - y).norm() > 1e-8));
        }
    }
}
