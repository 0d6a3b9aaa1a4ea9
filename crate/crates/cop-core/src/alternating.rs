//! Quadratic substitution and the alternating reconstruction.
//!
//! In the normalised alternating regime a classical functional `u` is
//! determined by its quadratic component `sigma u` and the point
//! `tau = <u, x> / <u, 1>`. Its monic orthogonal sequence is rebuilt from the
//! sequence `R_n` of the quadratic component:
//! `P_{2n}(x) = R_n(x^2)` and `P_{2n+1}(x) = (x - tau) S_n(x^2)`, where `S_n`
//! is the Christoffel transform of `R_n` at `tau^2`.

use serde::{Deserialize, Serialize};

use crate::error::{CopError, Result};
use crate::functionals::MomentFunctional;
use crate::poly::Poly;
use crate::scalar::{Scalar, Tolerance};

/// Transpose of `p(x) -> p(x^2)`: moments `nu_k = mu_{2k}`.
pub fn sigma_transpose(u: &MomentFunctional) -> MomentFunctional {
    MomentFunctional::new(u.moments.iter().step_by(2).copied().collect())
}

/// Unique `(a, b)` with `p(x) = a(x^2) + (x - tau) b(x^2)`.
pub fn j_tau_split(p: &Poly, tau: Scalar) -> (Poly, Poly) {
    let (even, odd) = p.even_odd();
    let a = &even + &odd.scale(tau);
    (a, odd)
}

/// Functional `u` with `<u, p> = <v, a>` where `(a, b) = j_tau_split(p, tau)`:
/// `mu_{2k} = nu_k`, `mu_{2k+1} = tau nu_k`.
pub fn j_tau_pullback(v: &MomentFunctional, tau: Scalar) -> MomentFunctional {
    let moments = v.moments.iter().flat_map(|&nu| [nu, tau * nu]).collect();
    MomentFunctional::new(moments)
}

/// Output of [`build_alternating_ops`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlternatingBuild {
    pub tau: Scalar,
    /// Base sequence `R_0..R_K`.
    pub base: Vec<Poly>,
    /// Christoffel transforms `S_0..S_{K-1}`.
    pub derived: Vec<Poly>,
    /// Full sequence `P_0..P_{2K}`.
    pub ops: Vec<Poly>,
    /// `R_n(tau^2)` for `n = 0..=K`.
    pub critical: Vec<Scalar>,
}

/// Rebuild the full sequence from monic `R_0..R_K` and `tau`.
///
/// Fails with `CriticalZero { n }` at the first `n` with `R_n(tau^2) = 0`.
pub fn build_alternating_ops(base: &[Poly], tau: Scalar, tol: &Tolerance) -> Result<AlternatingBuild> {
    if base.is_empty() {
        return Err(CopError::InvalidInput { detail: "empty base sequence".into() });
    }
    for (n, r) in base.iter().enumerate() {
        if r.degree() != Some(n) || !tol.is_zero(r.coeff(n) - 1.0, 1.0) {
            return Err(CopError::InvalidInput { detail: format!("R_{n} is not monic of degree {n}") });
        }
    }
    let t2 = tau * tau;
    let mut critical = Vec::with_capacity(base.len());
    for (n, r) in base.iter().enumerate() {
        let v = r.eval(t2);
        let scale: f64 = r.coeffs().iter().enumerate().map(|(k, c)| c.norm() * t2.norm().powi(k as i32)).sum();
        if tol.is_zero(v, scale) {
            return Err(CopError::CriticalZero { n });
        }
        critical.push(v);
    }
    let kernel = Poly::linear_factor(t2);
    let mut derived = Vec::with_capacity(base.len() - 1);
    for n in 0..base.len() - 1 {
        let numer = &base[n + 1] - &base[n].scale(critical[n + 1] / critical[n]);
        let (quot, rem) = numer.divrem(&kernel)?;
        let residual = rem.max_abs_coeff() / numer.max_abs_coeff().max(1.0);
        if residual > 1e-8 {
            return Err(CopError::NonzeroRemainder { n, residual });
        }
        derived.push(quot);
    }
    let odd_factor = Poly::linear_factor(tau);
    let mut ops = Vec::with_capacity(2 * base.len() - 1);
    for n in 0..base.len() {
        ops.push(base[n].of_square());
        if let Some(s) = derived.get(n) {
            ops.push(&odd_factor * &s.of_square());
        }
    }
    Ok(AlternatingBuild { tau, base: base.to_vec(), derived, ops, critical })
}

/// Residuals `<u, phi(x) x^{2k}>` and `<u, psi(x) x^{2k}>` for `k <= up_to`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    pub phi: Vec<Scalar>,
    pub psi: Vec<Scalar>,
}

impl AnnihilationReport {
    /// Largest modulus over both lists.
    pub fn max_abs(&self) -> f64 {
        self.phi.iter().chain(&self.psi).map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// The two annihilation conditions equivalent to `D(phi u) = S(psi u)` in the
/// normalised alternating regime.
pub fn alternating_structural_check(u: &MomentFunctional, phi: &Poly, psi: &Poly, up_to: usize) -> Result<AnnihilationReport> {
    if phi.degree().is_some_and(|d| d > 2) || psi.degree().is_some_and(|d| d > 1) {
        return Err(CopError::InvalidInput { detail: "need deg phi <= 2 and deg psi <= 1".into() });
    }
    if phi.is_zero() && psi.is_zero() {
        return Err(CopError::InvalidInput { detail: "phi and psi are both zero".into() });
    }
    let mut report = AnnihilationReport { phi: Vec::new(), psi: Vec::new() };
    for k in 0..=up_to {
        let even = Poly::monomial(Scalar::new(1.0, 0.0), 2 * k);
        report.phi.push(u.pair(&(phi * &even))?);
        report.psi.push(u.pair(&(psi * &even))?);
    }
    Ok(report)
}
