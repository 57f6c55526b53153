//! Change of variables between the transmission form
//! `α_n ψ_{n+1} + β_n ψ_n + α_n ψ_{n-1} = λ ψ_n` and the normalised form
//! `a_n y_{n+1} + b_n y_n + y_{n-1} = λ y_n`.
//!
//! These are field operations only, so they are generic over any
//! [`num_traits::Num`] type. That lets tests run them in exact rational
//! arithmetic as well as in floating point.

use std::ops::Neg;

use num_traits::Num;

/// Any field-like scalar: floats, complex numbers, rationals.
pub trait Field: Clone + Num + Neg<Output = Self> {}

impl<F: Clone + Num + Neg<Output = F>> Field for F {}

/// Gauge multipliers `d_1..d_{l+1}` with `d_{l+1} = 1`, `d_n = d_{n+1} / α_n`.
pub fn gauge_from_alpha<F: Field>(alpha: &[F]) -> Vec<F> {
    let l = alpha.len();
    let mut d = vec![F::one(); l + 1];
    for n in (1..=l).rev() {
        d[n - 1] = d[n].clone() / alpha[n - 1].clone();
    }
    d
}

/// Reduced coefficients `(a, b)` and gauge `d` for transmission coefficients `(α, β)`.
///
/// `a_{l+1-n} = d_n α_n / d_{n-1}` for `n = 2..l`, `a_l = 1`, `b_{l+1-n} = β_n`.
pub fn reduce_coefficients<F: Field>(alpha: &[F], beta: &[F]) -> (Vec<F>, Vec<F>, Vec<F>) {
    let l = alpha.len();
    assert_eq!(beta.len(), l);
    let d = gauge_from_alpha(alpha);
    // d[k] holds d_{k+1}
    let mut a = vec![F::one(); l];
    for n in 2..=l {
        a[l - n] = d[n - 1].clone() * alpha[n - 1].clone() / d[n - 2].clone();
    }
    let b = beta.iter().rev().cloned().collect();
    (a, b, d)
}

/// Inverse of [`reduce_coefficients`] given `α_l`:
/// `d_{l+1} = 1`, `d_l = 1/α_l`, `d_{n-1} = d_{n+1} / a_{l+1-n}`,
/// `α_n = d_{n+1} / d_n`, `β_n = b_{l+1-n}`.
pub fn lift_coefficients<F: Field>(a: &[F], b: &[F], alpha_l: F) -> (Vec<F>, Vec<F>) {
    let l = b.len();
    assert!(a.len() >= l.saturating_sub(1));
    // d[n] holds d_n for n = 1..=l+1; d[0] is unused
    let mut d = vec![F::one(); l + 2];
    d[l] = F::one() / alpha_l;
    for n in (2..=l).rev() {
        d[n - 1] = d[n + 1].clone() / a[l - n].clone();
    }
    let alpha = (1..=l).map(|n| d[n + 1].clone() / d[n].clone()).collect();
    let beta = b.iter().rev().cloned().collect();
    (alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_step_example() {
        let (a, b, d) = reduce_coefficients(&[2.0], &[7.0]);
        assert_eq!(a, vec![1.0]);
        assert_eq!(b, vec![7.0]);
        assert_eq!(d, vec![0.5, 1.0]);
        let (alpha, beta) = lift_coefficients(&[1.0], &[0.0], 2.0);
        assert_eq!(alpha, vec![2.0]);
        assert_eq!(beta, vec![0.0]);
    }

    #[test]
    fn interior_coefficients_are_neighbour_products() {
        let alpha = [2.0, 3.0, 5.0];
        let (a, _, _) = reduce_coefficients(&alpha, &[0.0; 3]);
        // a_{l+1-n} = α_n α_{n-1}
        assert_eq!(a, vec![15.0, 6.0, 1.0]);
    }

    #[test]
    fn beta_is_index_reversal() {
        let (_, b, _) = reduce_coefficients(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]);
        assert_eq!(b, vec![3.0, 2.0, 1.0]);
    }
}
