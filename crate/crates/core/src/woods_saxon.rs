//! Woods–Saxon potential in its real, PT-symmetric and non-PT complex forms.
//!
//! With `α = 1/(2a)` and `s = −e^{2αr}` the s-wave radial equation becomes
//! hypergeometric with
//!
//! ```text
//! τ̃ = 1 − qs,   σ = s(1 − qs),   σ̃ = −εq²s² + (2εq − βq)s + (β − ε)
//! ```
//!
//! where `ε = −E/(4 h α²)`, `β = V₀/(4 h α²)` and `h = ħ²/2m`. The complex
//! variants substitute `α → iα_I` (and `V₀ → iV₀ᵢ`), which only changes the
//! values of ε and β; the algebra downstream is shared.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nu_engine::{self, HypergeometricForm, NuBranch, SpectralFamily};
use crate::poly::{principal_sqrt, Poly};
use crate::quadrature;
use crate::special_fn::{self, JacobiParams};

/// `ħ²/2m` for a nucleon, in MeV·fm².
pub const NUCLEON_HBAR2_OVER_2M: f64 = 20.7355;

/// Relative tolerance of the normalization quadrature.
pub const NORMALIZE_TOL: f64 = 1e-10;

const POLE_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Depth in MeV.
    pub v0: f64,
    /// Radius in fm.
    pub r0: f64,
    /// Diffuseness in fm.
    pub a: f64,
    pub q: f64,
    /// `ħ²/2m` in MeV·fm².
    pub hbar2_over_2m: f64,
}

impl Default for PhysicalParams {
    /// Parameters of the potential plot: 5 MeV deep, 5.8 fm wide, 0.65 fm
    /// diffuseness, in natural units (`ħ = 2m = 1`).
    fn default() -> Self {
        PhysicalParams { v0: 5.0, r0: 5.8, a: 0.65, q: 1.0, hbar2_over_2m: 1.0 }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("v0", self.v0),
            ("a", self.a),
            ("q", self.q),
            ("hbar2_over_2m", self.hbar2_over_2m),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.r0 >= 0.0 && self.r0.is_finite()) {
            return Err(Error::Domain(format!("r0 must be non-negative, got {}", self.r0)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    Real,
    /// `α → iα_I`.
    PtSymmetric { alpha_i: f64 },
    /// `V₀ → iV₀ᵢ` and `α → iα_I`.
    NonPtNonHermitian { v0i: f64, alpha_i: f64 },
}

impl Variant {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be positive, got {v}")))
            }
        };
        match *self {
            Variant::Real => Ok(()),
            Variant::PtSymmetric { alpha_i } => check("alpha_i", alpha_i),
            Variant::NonPtNonHermitian { v0i, alpha_i } => {
                check("v0i", v0i)?;
                check("alpha_i", alpha_i)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Real => "real",
            Variant::PtSymmetric { .. } => "pt",
            Variant::NonPtNonHermitian { .. } => "nonpt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub epsilon: Complex64,
    pub beta: Complex64,
    pub q: Complex64,
    /// Principal `√(ε − β)`.
    pub t: Complex64,
}

impl DimensionlessParams {
    pub fn new(epsilon: Complex64, beta: Complex64, q: Complex64) -> Self {
        DimensionlessParams { epsilon, beta, q, t: principal_sqrt(epsilon - beta) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub n: u32,
    /// Spectral parameter solving the quantization condition; `t_n² = ε_n − β`.
    pub t_n: Complex64,
    pub epsilon_n: Complex64,
    /// Energy in MeV.
    pub e_n: Complex64,
    pub valid: bool,
}

/// Normalized s-state `Rₙ(s) = Cₙ (1−s) s^t Pₙ^{(2t,1)}(1−2s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStateWavefunction {
    pub n: u32,
    pub t: f64,
    pub q: f64,
    pub c_n: f64,
    pub jacobi: JacobiParams,
}

impl BoundStateWavefunction {
    /// Builds the `q = 1` state and fixes `Cₙ` so that `∫₀¹ Rₙ² ds = 1`.
    pub fn normalized(n: u32, t: f64) -> Result<Self> {
        let c_n = normalize(n, t, 1.0)?;
        Ok(BoundStateWavefunction { n, t, q: 1.0, c_n, jacobi: JacobiParams::new(2.0 * t, 1.0)? })
    }

    /// The polynomial part `Cₙ (1−s) Pₙ(1−2s)`, so that `Rₙ = s^t · g(s)`.
    pub fn polynomial_factor(&self) -> Poly {
        let p = Poly::from_real(&special_fn::jacobi_in_s(self.n, self.jacobi));
        (&p * &Poly::from_real(&[1.0, -1.0])).scaled(Complex64::new(self.c_n, 0.0))
    }
}

/// `4 h α²` for the real variant (`= h/a²`) or `4 h α_I²` for the complex ones.
fn alpha_energy(params: &PhysicalParams, variant: &Variant) -> f64 {
    let h = params.hbar2_over_2m;
    match *variant {
        Variant::Real => h / (params.a * params.a),
        Variant::PtSymmetric { alpha_i } | Variant::NonPtNonHermitian { alpha_i, .. } => {
            4.0 * h * alpha_i * alpha_i
        }
    }
}

/// `ε` per unit energy: `ε = E · factor`.
fn epsilon_per_energy(params: &PhysicalParams, variant: &Variant) -> f64 {
    match variant {
        // α² → −α_I² flips the sign
        Variant::Real => -1.0 / alpha_energy(params, variant),
        _ => 1.0 / alpha_energy(params, variant),
    }
}

/// Dimensionless depth β for the variant.
pub fn beta(params: &PhysicalParams, variant: &Variant) -> Complex64 {
    let scale = alpha_energy(params, variant);
    match *variant {
        Variant::Real => Complex64::new(params.v0 / scale, 0.0),
        Variant::PtSymmetric { .. } => Complex64::new(-params.v0 / scale, 0.0),
        Variant::NonPtNonHermitian { v0i, .. } => Complex64::new(0.0, -v0i / scale),
    }
}

pub fn to_dimensionless(params: &PhysicalParams, variant: &Variant, e: Complex64) -> DimensionlessParams {
    DimensionlessParams::new(
        e * epsilon_per_energy(params, variant),
        beta(params, variant),
        Complex64::new(params.q, 0.0),
    )
}

/// Inverse of the ε part of [`to_dimensionless`].
pub fn energy_from_epsilon(params: &PhysicalParams, variant: &Variant, eps: Complex64) -> Complex64 {
    eps / epsilon_per_energy(params, variant)
}

/// Potential in MeV at radius `r` (fm), measured from `R₀`.
pub fn potential_value(params: &PhysicalParams, variant: &Variant, r: f64) -> Result<Complex64> {
    let x = r - params.r0;
    let (v0, q) = (params.v0, params.q);
    match *variant {
        Variant::Real => Ok(Complex64::new(-v0 / (1.0 + q * (x / params.a).exp()), 0.0)),
        Variant::PtSymmetric { alpha_i } | Variant::NonPtNonHermitian { alpha_i, .. } => {
            let theta = 2.0 * alpha_i * x;
            let (sin, cos) = theta.sin_cos();
            if Complex64::new(1.0 + q * cos, q * sin).norm() < POLE_EPS {
                return Err(Error::PoleAtR { r });
            }
            let denom = 1.0 + q * q + 2.0 * q * cos;
            Ok(match *variant {
                Variant::NonPtNonHermitian { v0i, .. } => {
                    -Complex64::new(q * sin, 1.0 + q * cos) * (v0i / denom)
                }
                _ => -Complex64::new(1.0 + q * cos, -q * sin) * (v0 / denom),
            })
        }
    }
}

/// The hypergeometric triple for given dimensionless ε, β, q.
pub fn hypergeometric_form(dimless: &DimensionlessParams) -> HypergeometricForm {
    form_for(dimless.epsilon, dimless.beta, dimless.q)
}

fn form_for(eps: Complex64, beta: Complex64, q: Complex64) -> HypergeometricForm {
    let one = Complex64::new(1.0, 0.0);
    HypergeometricForm::new(
        Poly::new(vec![one, -q]),
        Poly::new(vec![Complex64::default(), one, -q]),
        Poly::new(vec![beta - eps, 2.0 * eps * q - beta * q, -eps * q * q]),
    )
    .expect("Woods-Saxon polynomials have admissible degrees")
}

/// `t_n = (β − (n+1)²) / (2(n+1))`.
pub fn closed_form_t(beta: Complex64, n: u32) -> Complex64 {
    let m = n as f64 + 1.0;
    (beta - m * m) / (2.0 * m)
}

/// `ε_n = (β/(2(n+1)))² + ((n+1)/2)² + β/2`.
pub fn closed_form_epsilon(beta: Complex64, n: u32) -> Complex64 {
    let m = n as f64 + 1.0;
    let first = beta / (2.0 * m);
    first * first + (m / 2.0) * (m / 2.0) + beta / 2.0
}

pub fn level_valid(params: &PhysicalParams, variant: &Variant, n: u32) -> bool {
    let m = n as f64 + 1.0;
    let b = beta(params, variant);
    let bound = match variant {
        Variant::Real => b.re,
        Variant::PtSymmetric { .. } => -b.re,
        Variant::NonPtNonHermitian { .. } => -b.im,
    };
    m * m < bound
}

pub fn spectrum(params: &PhysicalParams, variant: &Variant, n_max: u32) -> Vec<SpectrumEntry> {
    let b = beta(params, variant);
    (0..=n_max)
        .map(|n| {
            let epsilon_n = closed_form_epsilon(b, n);
            SpectrumEntry {
                n,
                t_n: closed_form_t(b, n),
                epsilon_n,
                e_n: energy_from_epsilon(params, variant, epsilon_n),
                valid: level_valid(params, variant, n),
            }
        })
        .collect()
}

/// Woods–Saxon forms parametrized by `t`, with `ε = β + t²`.
///
/// λ and λₙ come from the engine: the form is rebuilt at each `t` and the
/// branch whose weight is `s^{2t}(1−qs)` is picked out of all four.
#[derive(Debug, Clone, Copy)]
pub struct WoodsSaxonFamily {
    pub beta: Complex64,
    pub q: Complex64,
}

impl WoodsSaxonFamily {
    pub fn new(beta: Complex64, q: Complex64) -> Self {
        WoodsSaxonFamily { beta, q }
    }

    pub fn for_params(params: &PhysicalParams, variant: &Variant) -> Self {
        WoodsSaxonFamily::new(beta(params, variant), Complex64::new(params.q, 0.0))
    }

    pub fn form_at(&self, t: Complex64) -> HypergeometricForm {
        form_for(self.beta + t * t, self.beta, self.q)
    }

    pub fn branch_at(&self, t: Complex64) -> Result<(HypergeometricForm, NuBranch)> {
        let form = self.form_at(t);
        let one = Complex64::new(1.0, 0.0);
        let mut best: Option<(f64, NuBranch)> = None;
        for branch in nu_engine::all_branches(&form)? {
            let w = nu_engine::weight(&form, &branch)?;
            let dist = (w.exponent_at_zero - 2.0 * t).norm() + (w.exponent_at_inv_q - one).norm();
            if best.as_ref().is_none_or(|(d, _)| dist < *d) {
                best = Some((dist, branch));
            }
        }
        let (_, branch) = best.ok_or(Error::DegenerateForm)?;
        Ok((form, branch))
    }

    /// Starting guesses `t₀ = β/(2(n+1))`, `t₁ = 1.1 t₀`.
    pub fn initial_guesses(&self, n: u32) -> (Complex64, Complex64) {
        let mut t0 = self.beta / (2.0 * (n as f64 + 1.0));
        if t0.norm() == 0.0 {
            t0 = Complex64::new(1.0, 0.0);
        }
        (t0, t0 * 1.1)
    }

    pub fn quantize(&self, n: u32) -> Result<Complex64> {
        nu_engine::quantize(self, n, self.initial_guesses(n))
    }
}

impl SpectralFamily for WoodsSaxonFamily {
    fn lambda(&self, t: Complex64) -> Result<Complex64> {
        Ok(self.branch_at(t)?.1.lambda)
    }

    fn lambda_n(&self, n: u32, t: Complex64) -> Result<Complex64> {
        let (form, branch) = self.branch_at(t)?;
        Ok(nu_engine::lambda_n(n, &branch, &form))
    }
}

/// `Cₙ` with `∫₀¹ Cₙ² (1−s)² s^{2t} Pₙ^{(2t,1)}(1−2s)² ds = 1`.
pub fn normalize(n: u32, t: f64, q: f64) -> Result<f64> {
    if q != 1.0 {
        return Err(Error::Unsupported("wavefunctions are only defined for q = 1"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("normalization needs t > 0, got {t}")));
    }
    let params = JacobiParams::new(2.0 * t, 1.0)?;
    let integral = quadrature::integrate(
        |s| {
            let p = special_fn::jacobi_recurrence(n, params, 1.0 - 2.0 * s).unwrap_or(f64::NAN);
            let f = (1.0 - s) * s.powf(t) * p;
            f * f
        },
        0.0,
        1.0,
        NORMALIZE_TOL,
    );
    Ok(1.0 / integral.sqrt())
}

pub fn wavefunction_eval(wf: &BoundStateWavefunction, s: f64) -> Result<f64> {
    if wf.q != 1.0 {
        return Err(Error::Unsupported("wavefunctions are only defined for q = 1"));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("s = {s} outside (0, 1)")));
    }
    let p = special_fn::jacobi_recurrence(wf.n, wf.jacobi, 1.0 - 2.0 * s)?;
    Ok(wf.c_n * (1.0 - s) * s.powf(wf.t) * p)
}

/// Normalized real-variant state `n`, provided the level is bound and `q = 1`.
pub fn bound_state(params: &PhysicalParams, n: u32) -> Result<BoundStateWavefunction> {
    if params.q != 1.0 {
        return Err(Error::Unsupported("wavefunctions are only defined for q = 1"));
    }
    if !level_valid(params, &Variant::Real, n) {
        return Err(Error::Domain(format!("level n = {n} is not bound")));
    }
    let t = closed_form_t(beta(params, &Variant::Real), n).re;
    BoundStateWavefunction::normalized(n, t)
}
