//! The divided-difference operator `D` and the averaging operator `S`.
//!
//! For an admissible map with half-step neighbours `Y`, `Z` of `X`,
//! `(Dp)(X) = (p(Y) - p(Z)) / (Y - Z)` and `(Sp)(X) = (p(Y) + p(Z)) / 2`.
//! Both are polynomials in `X` because they are symmetric in `(Y, Z)`, so they
//! are expressible through `e1 = Y + Z` and `e2 = YZ`:
//!
//! - `D(x^{n+1}) = H_n` with `H_n = e1 H_{n-1} - e2 H_{n-2}`, `H_0 = 1`, `H_1 = e1`;
//! - `S(x^n) = P_n / 2` with `P_n = e1 P_{n-1} - e2 P_{n-2}`, `P_0 = 2`, `P_1 = e1`.
//!
//! Images of monomials are cached eagerly and the operators act by linearity.

use crate::error::{CopError, Result};
use crate::grids::HalfStepSet;
use crate::maps::{alternating_symmetric_data, qexp_symmetric_data, quadratic_symmetric_data, MapModel, QExpParams, QuadraticParams, Regime};
use crate::poly::Poly;
use crate::scalar::{powi, Scalar, Tolerance};

/// Default degree up to which monomial images are cached.
pub const DEFAULT_CACHE_DEGREE: usize = 64;

/// Regime-bound `D` and `S` with cached monomial images.
#[derive(Clone, Debug)]
pub struct OperatorPair {
    regime: Regime,
    q_half: Option<Scalar>,
    e1: Poly,
    e2: Poly,
    d_images: Vec<Poly>,
    s_images: Vec<Poly>,
}

impl OperatorPair {
    /// Build from the symmetric data of a classified map.
    pub fn from_map(m: &MapModel, tol: &Tolerance) -> Result<Self> {
        OperatorPair::from_map_with_cache(m, tol, DEFAULT_CACHE_DEGREE)
    }

    pub fn from_map_with_cache(m: &MapModel, tol: &Tolerance, cache: usize) -> Result<Self> {
        match m.regime {
            Regime::Continuous => Ok(OperatorPair::continuous(cache)),
            Regime::Alternating => {
                m.symmetric_data(tol)?;
                Ok(OperatorPair::alternating(cache))
            }
            Regime::Quadratic => Ok(OperatorPair::quadratic(m.quadratic_params()?, cache)),
            Regime::QExponential => Ok(OperatorPair::qexp(m.qexp_params()?, cache)),
        }
    }

    /// Operators of a quadratic progression.
    pub fn quadratic(p: QuadraticParams, cache: usize) -> Self {
        let (e1, e2) = quadratic_symmetric_data(p);
        OperatorPair::from_symmetric(Regime::Quadratic, None, e1, e2, cache)
    }

    /// Operators of a q-exponential progression.
    pub fn qexp(p: QExpParams, cache: usize) -> Self {
        let (e1, e2) = qexp_symmetric_data(p);
        OperatorPair::from_symmetric(Regime::QExponential, Some(p.q_half), e1, e2, cache)
    }

    /// Operators of the normalised alternating map, built from the even/odd
    /// split `p(x) = a(-x^2) + x b(-x^2)`, which gives `Dp = b(x^2)`, `Sp = a(x^2)`.
    pub fn alternating(cache: usize) -> Self {
        let (e1, e2) = alternating_symmetric_data();
        let mut d_images = Vec::with_capacity(cache + 1);
        let mut s_images = Vec::with_capacity(cache + 1);
        for n in 0..=cache {
            let (d, s) = alternating_apply(&Poly::monomial(Scalar::new(1.0, 0.0), n));
            d_images.push(d);
            s_images.push(s);
        }
        OperatorPair {
            regime: Regime::Alternating,
            q_half: Some(Scalar::new(0.0, 1.0)),
            e1,
            e2,
            d_images,
            s_images,
        }
    }

    /// `D = d/dx`, `S = id`.
    pub fn continuous(cache: usize) -> Self {
        let one = Scalar::new(1.0, 0.0);
        let d_images = (0..=cache)
            .map(|n| if n == 0 { Poly::zero() } else { Poly::monomial(one * n as f64, n - 1) })
            .collect();
        let s_images = (0..=cache).map(|n| Poly::monomial(one, n)).collect();
        OperatorPair {
            regime: Regime::Continuous,
            q_half: None,
            e1: Poly::new(vec![Scalar::new(0.0, 0.0), Scalar::new(2.0, 0.0)]),
            e2: Poly::monomial(one, 2),
            d_images,
            s_images,
        }
    }

    /// Build the caches from arbitrary symmetric data by the two recurrences.
    pub fn from_symmetric(regime: Regime, q_half: Option<Scalar>, e1: Poly, e2: Poly, cache: usize) -> Self {
        let one = Poly::one();
        let mut hdd = vec![one.clone(), e1.clone()];
        let mut power_sums = vec![Poly::constant(Scalar::new(2.0, 0.0)), e1.clone()];
        while hdd.len() < cache + 1 {
            let n = hdd.len();
            hdd.push(&(&e1 * &hdd[n - 1]) - &(&e2 * &hdd[n - 2]));
            power_sums.push(&(&e1 * &power_sums[n - 1]) - &(&e2 * &power_sums[n - 2]));
        }
        let mut d_images = vec![Poly::zero()];
        d_images.extend(hdd.into_iter().take(cache));
        let s_images = power_sums.into_iter().take(cache + 1).map(|p| p.scale(Scalar::new(0.5, 0.0))).collect();
        OperatorPair { regime, q_half, e1, e2, d_images, s_images }
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Highest monomial degree with cached images.
    pub fn cache_degree(&self) -> usize {
        self.d_images.len() - 1
    }

    pub fn symmetric_data(&self) -> (&Poly, &Poly) {
        (&self.e1, &self.e2)
    }

    /// `D(x^n)`.
    pub fn d_monomial(&self, n: usize) -> Result<&Poly> {
        self.d_images.get(n).ok_or(CopError::DegreeOverflow { needed: n, available: self.cache_degree() })
    }

    /// `S(x^n)`.
    pub fn s_monomial(&self, n: usize) -> Result<&Poly> {
        self.s_images.get(n).ok_or(CopError::DegreeOverflow { needed: n, available: self.cache_degree() })
    }

    fn apply(&self, images: &[Poly], p: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (k, &c) in p.coeffs().iter().enumerate() {
            let img = images.get(k).ok_or(CopError::DegreeOverflow { needed: k, available: self.cache_degree() })?;
            acc = &acc + &img.scale(c);
        }
        Ok(acc)
    }

    /// `Dp`.
    pub fn d(&self, p: &Poly) -> Result<Poly> {
        self.apply(&self.d_images, p)
    }

    /// `Sp`.
    pub fn s(&self, p: &Poly) -> Result<Poly> {
        self.apply(&self.s_images, p)
    }

    /// Closed-form leading coefficients `(gamma_n, alpha_n)` of `D(x^n)` and `S(x^n)`.
    ///
    /// Quadratic and continuous: `(n, 1)`. q-exponential (and alternating,
    /// with `q^{1/2} = i`): `gamma_n = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`,
    /// `alpha_n = (q^{n/2} + q^{-n/2}) / 2`.
    pub fn leading_action(&self, n: i64) -> (Scalar, Scalar) {
        match (self.regime, self.q_half) {
            (Regime::QExponential | Regime::Alternating, Some(qh)) => {
                let up = powi(qh, n);
                let down = powi(qh, -n);
                ((up - down) / (qh - qh.inv()), (up + down) / 2.0)
            }
            _ => (Scalar::new(n as f64, 0.0), Scalar::new(1.0, 0.0)),
        }
    }

    /// Compare the closed-form leading coefficients with the cached images
    /// of `x^n`; returns the larger of the two discrepancies.
    pub fn leading_action_residual(&self, n: usize) -> Result<f64> {
        let (gamma, alpha) = self.leading_action(n as i64);
        let d_lead = if n == 0 { Scalar::new(0.0, 0.0) } else { self.d_monomial(n)?.coeff(n - 1) };
        let s_lead = self.s_monomial(n)?.coeff(n);
        Ok((d_lead - gamma).norm().max((s_lead - alpha).norm()))
    }
}

/// `(Dp, Sp)` for the normalised alternating map.
pub fn alternating_apply(p: &Poly) -> (Poly, Poly) {
    let (even, odd) = p.even_odd();
    // p(x) = even(x^2) + x odd(x^2) = a(-x^2) + x b(-x^2) with a(t) = even(-t), b(t) = odd(-t).
    let flip = Poly::monomial(Scalar::new(-1.0, 0.0), 1);
    let a = even.compose(&flip);
    let b = odd.compose(&flip);
    (b.of_square(), a.of_square())
}

/// Right side of the pointwise expression of `L p = phi D^2 p + psi S D p` at `X(s)`:
///
/// `phi(X) / (Y - Z) * Delta(nabla(p o X) / (X - Z1))
///  + psi(X)/2 * (Delta(p o X) / (Y1 - X) + nabla(p o X) / (X - Z1))`,
///
/// where `Delta f = f(s+h) - f(s)`, `nabla f = f(s) - f(s-h)`, `Y1 = X(s+h)`, `Z1 = X(s-h)`.
pub fn pointwise_nu_form(
    m: &MapModel,
    grid: &HalfStepSet,
    phi: &Poly,
    psi: &Poly,
    p: &Poly,
    s: Scalar,
    tol: &Tolerance,
) -> Result<Scalar> {
    let h = grid.h;
    let x = |t: Scalar| m.eval_point(t, tol);
    let (xs, y, z, y1, z1) = (x(s)?, x(s + h / 2.0)?, x(s - h / 2.0)?, x(s + h)?, x(s - h)?);
    let scale = xs.norm().max(1.0);
    for (den, label) in [(y - z, "Y - Z"), (y1 - xs, "Y1 - X"), (xs - z1, "X - Z1")] {
        if tol.is_zero(den, scale) {
            return Err(CopError::ZeroDenominator { detail: format!("{label} at s = {s}") });
        }
    }
    let (p_x, p_y1, p_z1) = (p.eval(xs), p.eval(y1), p.eval(z1));
    let forward = (p_y1 - p_x) / (y1 - xs);
    let backward = (p_x - p_z1) / (xs - z1);
    Ok(phi.eval(xs) * (forward - backward) / (y - z) + psi.eval(xs) / 2.0 * (forward + backward))
}

/// Operator form `phi D(Dp) + psi S(Dp)` evaluated at `X(s)`.
pub fn operator_nu_form(ops: &OperatorPair, phi: &Poly, psi: &Poly, p: &Poly, xs: Scalar) -> Result<Scalar> {
    let dp = ops.d(p)?;
    Ok(phi.eval(xs) * ops.d(&dp)?.eval(xs) + psi.eval(xs) * ops.s(&dp)?.eval(xs))
}
