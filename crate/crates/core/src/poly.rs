//! Complex-coefficient univariate polynomials.
//!
//! Every object the Nikiforov–Uvarov reduction manipulates (σ, σ̃, τ̃, π, τ) is
//! a polynomial of degree at most two, so this module only offers what that
//! algebra needs: ring operations, formal derivative, Horner evaluation and
//! the square root of a quadratic that is (numerically) a perfect square.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients smaller than this fraction of the largest one are dropped.
pub const TRIM_RELATIVE: f64 = 1e-14;

/// Default relative tolerance for [`Poly::sqrt_perfect_square`].
pub const DEFAULT_SQUARE_TOL: f64 = 1e-9;

/// Principal square root with the cut on the negative real axis.
///
/// The result has `Re >= 0`; on the cut (`Re == 0`) the root with `Im >= 0`
/// is returned regardless of the sign of a zero imaginary part.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let z = if z.im == 0.0 { Complex64::new(z.re, 0.0) } else { z };
    let w = z.sqrt();
    if w.re < 0.0 || (w.re == 0.0 && w.im < 0.0) {
        -w
    } else {
        w
    }
}

/// Polynomial with complex coefficients stored in ascending powers.
///
/// The zero polynomial has no coefficients. The trailing coefficient of a
/// nonzero polynomial is always nonzero.
#[derive(Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "non-finite polynomial coefficient"
        );
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `s`.
    pub fn x() -> Self {
        Poly::from_real(&[0.0, 1.0])
    }

    fn normalize(&mut self) {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = TRIM_RELATIVE * max;
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= cutoff {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `s^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Largest coefficient magnitude, used as the scale for relative checks.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, &c| acc * s + c)
    }

    pub fn eval_real(&self, s: f64) -> Complex64 {
        self.eval(Complex64::new(s, 0.0))
    }

    pub fn ensure_degree_at_most(&self, max: usize) -> Result<()> {
        if self.degree() > max {
            Err(Error::DegreeTooHigh { degree: self.degree(), max })
        } else {
            Ok(())
        }
    }

    /// `b² − 4ac` for `as² + bs + c`; reduces to `b²` when `a = 0`.
    pub fn discriminant_quadratic(&self) -> Result<Complex64> {
        self.ensure_degree_at_most(2)?;
        let (c, b, a) = (self.coeff(0), self.coeff(1), self.coeff(2));
        Ok(b * b - 4.0 * a * c)
    }

    /// Linear `L` with `L² = self`, provided the discriminant vanishes to
    /// within `tol` relative to the squared coefficient scale.
    ///
    /// The sign is fixed so that the leading coefficient of `L` has a
    /// non-negative real part (non-negative imaginary part on ties).
    pub fn sqrt_perfect_square(&self, tol: f64) -> Result<Poly> {
        let disc = self.discriminant_quadratic()?;
        let scale = self.scale();
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let relative = disc.norm() / (scale * scale);
        if relative > tol {
            return Err(Error::NotPerfectSquare { relative_discriminant: relative });
        }
        let (c, b, a) = (self.coeff(0), self.coeff(1), self.coeff(2));
        let root = if a.norm() >= c.norm() {
            let lead = principal_sqrt(a);
            Poly::new(vec![b / (2.0 * lead), lead])
        } else {
            let constant = principal_sqrt(c);
            Poly::new(vec![constant, b / (2.0 * constant)])
        };
        Ok(canonical_sign(root))
    }
}

fn canonical_sign(p: Poly) -> Poly {
    let lead = p.leading();
    if lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0) {
        -p
    } else {
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})s"),
                _ => format!("({c})s^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::default(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_poly_close(p: &Poly, expected: &[f64], tol: f64) {
        let n = p.coeffs().len().max(expected.len());
        for i in 0..n {
            let e = expected.get(i).copied().unwrap_or(0.0);
            assert!((p.coeff(i) - c(e)).norm() <= tol, "coeff {i}: {:?} vs {:?}", p, expected);
        }
    }

    #[test]
    fn add_cancels_and_keeps_identity() {
        let p = Poly::from_real(&[1.0, 1.0]) + Poly::from_real(&[1.0, -1.0]);
        assert_eq!(p, Poly::from_real(&[2.0]));
        assert_eq!(p.degree(), 0);
        let q = Poly::from_real(&[3.0, -2.0, 5.0]);
        assert_eq!(&q + &Poly::zero(), q);
    }

    #[test]
    fn add_hand_expansion() {
        // (1 − s) + 2·(−s/2) = 1 − 2s, checked at three points as well
        let q = 1.0;
        let p = Poly::from_real(&[1.0, -q]) + Poly::from_real(&[0.0, -q / 2.0]).scaled(c(2.0));
        assert_poly_close(&p, &[1.0, -2.0], 0.0);
        for s in [-1.0, 0.3, 2.0] {
            assert!((p.eval_real(s) - c(1.0 - 2.0 * s)).norm() < 1e-15);
        }
    }

    #[test]
    fn mul_examples() {
        let p = Poly::from_real(&[1.0, 1.0]) * Poly::from_real(&[1.0, -1.0]);
        assert_poly_close(&p, &[1.0, 0.0, -1.0], 0.0);
        let sigma = Poly::x() * Poly::from_real(&[1.0, -1.0]);
        assert_poly_close(&sigma, &[0.0, 1.0, -1.0], 0.0);
        let sq = Poly::from_real(&[-1.0, 2.0]) * Poly::from_real(&[-1.0, 2.0]);
        assert_poly_close(&sq, &[1.0, -4.0, 4.0], 0.0);
    }

    #[test]
    fn derivative_examples() {
        let sigma = Poly::from_real(&[0.0, 1.0, -1.0]);
        assert_poly_close(&sigma.derivative(), &[1.0, -2.0], 0.0);
        assert!(Poly::from_real(&[7.0]).derivative().is_zero());

        let (q, eps, beta) = (1.3, 72.25, 16.0);
        let sigma_tilde =
            Poly::from_real(&[beta - eps, 2.0 * eps * q - beta * q, -eps * q * q]);
        assert_poly_close(
            &sigma_tilde.derivative(),
            &[2.0 * eps * q - beta * q, -2.0 * eps * q * q],
            1e-12,
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Poly::from_real(&[1.0, -2.0]).eval_real(0.5), c(0.0));
        let sigma = Poly::from_real(&[0.0, 1.0, -1.0]);
        assert_eq!(sigma.eval_real(0.0), c(0.0));
        assert_eq!(sigma.eval_real(1.0), c(0.0));
        let (eps, beta) = (72.25, 16.0);
        let sigma_tilde = Poly::from_real(&[beta - eps, 2.0 * eps - beta, -eps]);
        assert_eq!(sigma_tilde.eval_real(0.0), c(-56.25));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(Poly::from_real(&[1.0, -2.0, 1.0]).discriminant_quadratic().unwrap(), c(0.0));
        assert_eq!(Poly::from_real(&[1.0, 0.0, 1.0]).discriminant_quadratic().unwrap(), c(-4.0));
        assert_eq!(Poly::from_real(&[1.0, -4.0, 4.0]).discriminant_quadratic().unwrap(), c(0.0));
        assert_eq!(Poly::from_real(&[1.0, 3.0]).discriminant_quadratic().unwrap(), c(9.0));
        assert!(matches!(
            Poly::from_real(&[1.0, 0.0, 0.0, 1.0]).discriminant_quadratic(),
            Err(Error::DegreeTooHigh { degree: 3, max: 2 })
        ));
    }

    #[test]
    fn sqrt_of_perfect_squares() {
        let l = Poly::from_real(&[1.0, -4.0, 4.0]).sqrt_perfect_square(DEFAULT_SQUARE_TOL).unwrap();
        assert_poly_close(&l, &[-1.0, 2.0], 1e-15);

        let l = Poly::from_real(&[9.0]).sqrt_perfect_square(DEFAULT_SQUARE_TOL).unwrap();
        assert_poly_close(&l, &[3.0], 0.0);
        let l = Poly::from_real(&[-4.0]).sqrt_perfect_square(DEFAULT_SQUARE_TOL).unwrap();
        assert_eq!(l.coeff(0), Complex64::new(0.0, 2.0));

        // Eq. (16) radicand with q=1, β=16, ε=72.25, k=8.5 is ((2t+1)s − 2t)², t=7.5
        let (q, beta, eps, k) = (1.0, 16.0, 72.25, 8.5);
        let radicand = Poly::from_real(&[
            4.0 * (eps - beta),
            4.0 * (beta * q - 2.0 * eps * q + k),
            q * q + 4.0 * eps * q * q - 4.0 * k * q,
        ]);
        let l = radicand.sqrt_perfect_square(DEFAULT_SQUARE_TOL).unwrap();
        assert_poly_close(&l, &[-15.0, 16.0], 1e-12);
    }

    #[test]
    fn sqrt_rejects_non_squares() {
        assert!(matches!(
            Poly::from_real(&[1.0, 0.0, 1.0]).sqrt_perfect_square(DEFAULT_SQUARE_TOL),
            Err(Error::NotPerfectSquare { .. })
        ));
        assert!(Poly::from_real(&[0.0, 1.0]).sqrt_perfect_square(DEFAULT_SQUARE_TOL).is_err());
    }

    #[test]
    fn trims_cancellation_noise() {
        let p = Poly::from_real(&[1.0, 2.0, 1e-16]);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn principal_sqrt_ties() {
        assert_eq!(principal_sqrt(Complex64::new(-4.0, -0.0)), Complex64::new(0.0, 2.0));
        let r = principal_sqrt(Complex64::new(-3.0, -4.0));
        assert!(r.re >= 0.0);
        assert!((r * r - Complex64::new(-3.0, -4.0)).norm() < 1e-14);
    }

    fn cplx() -> impl Strategy<Value = Complex64> {
        (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| Complex64::new(a, b))
    }

    fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(cplx(), 0..=max_len).prop_map(Poly::new)
    }

    fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
    }

    proptest! {
        #[test]
        fn ring_ops_commute_with_eval(p in poly(4), q in poly(4), xs in prop::collection::vec(cplx(), 10)) {
            let sum = &p + &q;
            let prod = &p * &q;
            for x in xs {
                prop_assert!(rel_close(sum.eval(x), p.eval(x) + q.eval(x), 1e-12));
                prop_assert!(rel_close(prod.eval(x), p.eval(x) * q.eval(x), 1e-12));
            }
        }

        #[test]
        fn product_rule(p in poly(3), q in poly(3)) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            let n = lhs.coeffs().len().max(rhs.coeffs().len());
            let scale = 1.0 + lhs.scale().max(rhs.scale());
            for i in 0..n {
                prop_assert!((lhs.coeff(i) - rhs.coeff(i)).norm() <= 1e-12 * scale);
            }
        }

        #[test]
        fn sqrt_inverts_square(a in cplx(), b in cplx()) {
            prop_assume!(b.norm() > 1e-3);
            let l = Poly::new(vec![a, b]);
            let sq = &l * &l;
            let root = sq.sqrt_perfect_square(DEFAULT_SQUARE_TOL).unwrap();
            let same = (0..2).all(|i| (root.coeff(i) - l.coeff(i)).norm() <= 1e-9 * (1.0 + l.scale()));
            let flipped = (0..2).all(|i| (root.coeff(i) + l.coeff(i)).norm() <= 1e-9 * (1.0 + l.scale()));
            prop_assert!(same || flipped);
            let back = &root * &root;
            for i in 0..3 {
                prop_assert!((back.coeff(i) - sq.coeff(i)).norm() <= 1e-10 * sq.scale());
            }
        }
    }
}
