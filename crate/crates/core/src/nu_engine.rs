//! Generic Nikiforov–Uvarov reduction.
//!
//! Starting from an equation of hypergeometric type
//!
//! ```text
//! ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0,   deg σ, σ̃ ≤ 2,  deg τ̃ ≤ 1
//! ```
//!
//! the engine finds every constant `k` for which the radicand
//! `r(s; k) = ((σ' − τ̃)/2)² − σ̃ + kσ` is a perfect square, builds the two
//! branches `π = (σ' − τ̃)/2 ± √r` for each, and derives `τ = τ̃ + 2π` and
//! `λ = k + π'`. Bound states come from branches with `τ' < 0` whose weight
//! function vanishes at the ends of the interval.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{principal_sqrt, Poly, DEFAULT_SQUARE_TOL};

/// Iteration cap for [`quantize`].
pub const SECANT_MAX_ITER: usize = 200;
/// Relative stopping tolerance for [`quantize`].
pub const SECANT_TOL: f64 = 1e-12;

/// The triple `(τ̃, σ, σ̃)` of a hypergeometric-type equation.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricForm {
    tau_tilde: Poly,
    sigma: Poly,
    sigma_tilde: Poly,
}

impl HypergeometricForm {
    pub fn new(tau_tilde: Poly, sigma: Poly, sigma_tilde: Poly) -> Result<Self> {
        if tau_tilde.degree() > 1 {
            return Err(Error::InvalidForm("tau_tilde must have degree <= 1"));
        }
        if sigma.degree() > 2 {
            return Err(Error::InvalidForm("sigma must have degree <= 2"));
        }
        if sigma_tilde.degree() > 2 {
            return Err(Error::InvalidForm("sigma_tilde must have degree <= 2"));
        }
        if sigma.is_zero() {
            return Err(Error::InvalidForm("sigma must not vanish identically"));
        }
        Ok(HypergeometricForm { tau_tilde, sigma, sigma_tilde })
    }

    pub fn tau_tilde(&self) -> &Poly {
        &self.tau_tilde
    }

    pub fn sigma(&self) -> &Poly {
        &self.sigma
    }

    pub fn sigma_tilde(&self) -> &Poly {
        &self.sigma_tilde
    }

    /// `(σ' − τ̃)/2`, the part of π that does not depend on `k`.
    pub fn half_drift(&self) -> Poly {
        (&self.sigma.derivative() - &self.tau_tilde).scaled(Complex64::new(0.5, 0.0))
    }

    /// The quadratic under the square root of π for a given `k`.
    pub fn radicand(&self, k: Complex64) -> Poly {
        let h = self.half_drift();
        &(&(&h * &h) - &self.sigma_tilde) + &self.sigma.scaled(k)
    }

    /// `σ''`, a constant.
    pub fn sigma_second(&self) -> Complex64 {
        self.sigma.coeff(2) * 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSign {
    Plus,
    Minus,
}

impl BranchSign {
    fn factor(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }
}

/// One candidate solution `(k, ±)` with its π, τ and λ.
#[derive(Debug, Clone, PartialEq)]
pub struct NuBranch {
    pub k: Complex64,
    pub sign: BranchSign,
    pub pi: Poly,
    pub tau: Poly,
    pub lambda: Complex64,
}

impl NuBranch {
    /// `τ'`, the constant slope of τ.
    pub fn tau_slope(&self) -> Complex64 {
        self.tau.coeff(1)
    }
}

/// All `k` that make the radicand a perfect square, sorted by `(Re, Im)`
/// descending.
///
/// The discriminant of `r(s; k)` in `s` is a polynomial of degree at most
/// two in `k`; its roots are the candidates.
pub fn k_candidates(form: &HypergeometricForm) -> Result<Vec<Complex64>> {
    let r0 = form.radicand(Complex64::default());
    let (c0, b0, a0) = (r0.coeff(0), r0.coeff(1), r0.coeff(2));
    let sg = form.sigma();
    let (s0, s1, s2) = (sg.coeff(0), sg.coeff(1), sg.coeff(2));

    let d2 = s1 * s1 - 4.0 * s2 * s0;
    let d1 = 2.0 * b0 * s1 - 4.0 * (a0 * s0 + c0 * s2);
    let d0 = b0 * b0 - 4.0 * a0 * c0;
    let disc_in_k = Poly::new(vec![d0, d1, d2]);

    let mut ks = match disc_in_k.degree() {
        _ if disc_in_k.is_zero() => return Err(Error::DegenerateForm),
        0 => return Err(Error::DegenerateForm),
        1 => vec![-disc_in_k.coeff(0) / disc_in_k.coeff(1)],
        _ => {
            let (c, b, a) = (disc_in_k.coeff(0), disc_in_k.coeff(1), disc_in_k.coeff(2));
            let root = principal_sqrt(b * b - 4.0 * a * c);
            // pick the sign that avoids cancellation
            let plus = b + root;
            let minus = b - root;
            let big = if plus.norm() >= minus.norm() { plus } else { minus };
            if big.norm() == 0.0 {
                vec![Complex64::default(), Complex64::default()]
            } else {
                let half = -big * 0.5;
                vec![half / a, c / half]
            }
        }
    };
    ks.sort_by(|x, y| {
        y.re.partial_cmp(&x.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(y.im.partial_cmp(&x.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(ks)
}

/// Both sign branches for one `k`, `Plus` first.
pub fn branches(form: &HypergeometricForm, k: Complex64) -> Result<Vec<NuBranch>> {
    let root = form.radicand(k).sqrt_perfect_square(DEFAULT_SQUARE_TOL)?;
    let half_drift = form.half_drift();
    Ok([BranchSign::Plus, BranchSign::Minus]
        .into_iter()
        .map(|sign| {
            let pi = &half_drift + &root.scaled(Complex64::new(sign.factor(), 0.0));
            let tau = form.tau_tilde() + &pi.scaled(Complex64::new(2.0, 0.0));
            let lambda = k + pi.coeff(1);
            NuBranch { k, sign, pi, tau, lambda }
        })
        .collect())
}

/// Every `(k, ±)` combination, in `k_candidates` order.
pub fn all_branches(form: &HypergeometricForm) -> Result<Vec<NuBranch>> {
    let mut out = Vec::with_capacity(4);
    for k in k_candidates(form)? {
        out.extend(branches(form, k)?);
    }
    Ok(out)
}

/// `τ` must decrease for polynomial solutions to be orthogonal.
pub fn admissible(branch: &NuBranch) -> bool {
    branch.tau_slope().re < 0.0
}

/// `λₙ = −n τ' − n(n−1) σ''/2`.
pub fn lambda_n(n: u32, branch: &NuBranch, form: &HypergeometricForm) -> Complex64 {
    let n = n as f64;
    -branch.tau_slope() * n - form.sigma_second() * (n * (n - 1.0) / 2.0)
}

/// Magnitude of `(π − (σ'−τ̃)/2)² − r(s; k)` relative to the radicand scale.
pub fn branch_residual(form: &HypergeometricForm, branch: &NuBranch) -> f64 {
    let radicand = form.radicand(branch.k);
    let root = &branch.pi - &form.half_drift();
    let diff = &(&root * &root) - &radicand;
    diff.scale() / radicand.scale().max(f64::MIN_POSITIVE)
}

/// A one-parameter family of forms whose quantization condition `λ = λₙ`
/// is solved for the spectral parameter.
pub trait SpectralFamily {
    /// λ of the physical branch at the given parameter value.
    fn lambda(&self, param: Complex64) -> Result<Complex64>;
    /// λₙ of the same branch at the given parameter value.
    fn lambda_n(&self, n: u32, param: Complex64) -> Result<Complex64>;
}

/// Solves `λ(p) = λₙ(p)` by secant iteration from the two starting guesses.
pub fn quantize<F: SpectralFamily + ?Sized>(
    family: &F,
    n: u32,
    guesses: (Complex64, Complex64),
) -> Result<Complex64> {
    let mismatch = |p: Complex64| -> Result<(Complex64, f64)> {
        let lambda = family.lambda(p)?;
        let f = lambda - family.lambda_n(n, p)?;
        Ok((f, SECANT_TOL * lambda.norm().max(1.0)))
    };

    let (mut x0, mut x1) = guesses;
    let (mut f0, _) = mismatch(x0)?;
    let (mut f1, mut tol1) = mismatch(x1)?;
    for _ in 0..SECANT_MAX_ITER {
        if f1.norm() < tol1 {
            return Ok(x1);
        }
        let slope = f1 - f0;
        if slope.norm() == 0.0 || !slope.re.is_finite() {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / slope;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        (f1, tol1) = mismatch(x1)?;
    }
    if f1.norm() < tol1 {
        return Ok(x1);
    }
    Err(Error::QuantizationDivergence { iterations: SECANT_MAX_ITER, residual: f1.norm() })
}

/// Slack for comparing weight exponents with their bounds.
pub const EXPONENT_TOL: f64 = 1e-9;

/// Weight `ρ(s) = s^B (1 − qs)^A` solving `(σρ)' = τρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpec {
    /// `B`, the exponent of `s`.
    pub exponent_at_zero: Complex64,
    /// `A`, the exponent of `1 − qs`.
    pub exponent_at_inv_q: Complex64,
    pub q: Complex64,
}

impl WeightSpec {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        (self.exponent_at_zero * s.ln() + self.exponent_at_inv_q * (one - self.q * s).ln()).exp()
    }

    /// `ρ'/ρ`.
    pub fn log_derivative(&self, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.exponent_at_zero / s - self.exponent_at_inv_q * self.q / (one - self.q * s)
    }

    /// `σρ` vanishes at both ends of `[0, 1/q]` and `ρ` is normalizable near `s = 0`.
    ///
    /// Exponents within [`EXPONENT_TOL`] (relative) of a boundary count as on it.
    pub fn is_bound(&self) -> bool {
        let slack = EXPONENT_TOL * self.exponent_at_zero.norm().max(1.0);
        self.exponent_at_zero.re > slack && self.exponent_at_inv_q.re > -1.0 + slack
    }
}

/// Weight function for a branch, by partial fractions of `(τ − σ')/σ`.
///
/// Requires `σ = σ₁ s (1 − qs)` with `σ₁ ≠ 0` and `q ≠ 0`.
pub fn weight(form: &HypergeometricForm, branch: &NuBranch) -> Result<WeightSpec> {
    let sigma = form.sigma();
    let (s0, s1, s2) = (sigma.coeff(0), sigma.coeff(1), sigma.coeff(2));
    let scale = sigma.scale();
    if s0.norm() > 1e-14 * scale {
        return Err(Error::UnsupportedSigma("sigma has no root at s = 0"));
    }
    if s1.norm() <= 1e-14 * scale {
        return Err(Error::UnsupportedSigma("sigma has a double root at s = 0"));
    }
    if s2.norm() <= 1e-14 * scale {
        return Err(Error::UnsupportedSigma("sigma has a single finite root"));
    }
    let q = -s2 / s1;
    let numerator = &branch.tau - &sigma.derivative();
    let exponent_at_zero = numerator.coeff(0) / s1;
    let exponent_at_inv_q = -numerator.eval(Complex64::new(1.0, 0.0) / q) / s1;
    Ok(WeightSpec { exponent_at_zero, exponent_at_inv_q, q })
}

/// The branch the physics wants: `τ' < 0` with a weight that vanishes at
/// both ends. Ties go to the larger `Re B`, then the larger `Re A`.
pub fn select_branch(form: &HypergeometricForm) -> Result<Option<(NuBranch, WeightSpec)>> {
    let mut best: Option<(NuBranch, WeightSpec)> = None;
    for branch in all_branches(form)? {
        if !admissible(&branch) {
            continue;
        }
        let w = weight(form, &branch)?;
        if !w.is_bound() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, bw)) => {
                (w.exponent_at_zero.re, w.exponent_at_inv_q.re)
                    > (bw.exponent_at_zero.re, bw.exponent_at_inv_q.re)
            }
        };
        if better {
            best = Some((branch, w));
        }
    }
    Ok(best)
}

/// `yₙ = ρ⁻¹ dⁿ/dsⁿ [σⁿ ρ]` with unit normalizing constant.
///
/// `σⁿρ = σ₁ⁿ s^{B+n} (1−qs)^{A+n}` is differentiated term by term; after
/// `n` steps every term is `c_j s^{B+j} (1−qs)^{A+n−j}` so dividing by ρ
/// leaves a polynomial.
pub fn rodrigues(n: u32, form: &HypergeometricForm, weight: &WeightSpec) -> Result<Poly> {
    if weight.exponent_at_zero.re <= -1.0 {
        return Err(Error::Domain(format!(
            "Rodrigues formula needs Re(B) > -1, got {}",
            weight.exponent_at_zero
        )));
    }
    let n = n as usize;
    let (b, a, q) = (weight.exponent_at_zero, weight.exponent_at_inv_q, weight.q);
    let s1 = form.sigma().coeff(1);

    // coefficient of s^{B+j}(1−qs)^{A+total−j}
    let mut terms = vec![Complex64::default(); n + 1];
    terms[n] = s1.powu(n as u32);
    let mut total = 2 * n;
    for _ in 0..n {
        let mut next = vec![Complex64::default(); n + 1];
        for (j, &c) in terms.iter().enumerate() {
            if c == Complex64::default() {
                continue;
            }
            // j and total − j are both >= 1 until the last step
            let m = total - j;
            next[j - 1] += c * (b + j as f64);
            next[j] -= c * q * (a + m as f64);
        }
        terms = next;
        total -= 1;
    }

    let line = Poly::new(vec![Complex64::new(1.0, 0.0), -q]);
    let mut y = Poly::zero();
    for (j, &c) in terms.iter().enumerate() {
        if c == Complex64::default() {
            continue;
        }
        let mut term = Poly::constant(c);
        for _ in 0..j {
            term = &term * &Poly::x();
        }
        for _ in 0..(n - j) {
            term = &term * &line;
        }
        y = &y + &term;
    }
    Ok(y)
}

/// Coefficient-wise size of `σy'' + τy' + λy`, relative to its largest term.
pub fn hypergeometric_residual(
    form: &HypergeometricForm,
    tau: &Poly,
    lambda: Complex64,
    y: &Poly,
) -> f64 {
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let a = form.sigma() * &d2;
    let b = tau * &d1;
    let c = y.scaled(lambda);
    let sum = &(&a + &b) + &c;
    let scale = a.scale().max(b.scale()).max(c.scale()).max(f64::MIN_POSITIVE);
    sum.scale() / scale
}
