//! Admissible maps: classification of full-step samples, closed forms, and
//! the symmetric data `e1 = Y + Z`, `e2 = YZ` as polynomials in `X`.
//!
//! On a full-step progression `s0 + hZ` the samples `x_k = X(s0 + kh)` obey
//! `x_{k+1} + x_{k-1} = A x_k + B`. The value of `A` selects the regime:
//!
//! | regime        | condition       | closed form along `s0 + t h`             |
//! |---------------|-----------------|------------------------------------------|
//! | quadratic     | `A = 2`         | `a t^2 + b t + c`                        |
//! | alternating   | `A = -2`        | `a e^{i pi t} + b`                        |
//! | q-exponential | `A = q + 1/q`   | `a q^t + b q^{-t} + c`                    |
//!
//! The closed form is evaluated at half-integer `t` as well, which is how the
//! half-step neighbours `Y = X(s + h/2)` and `Z = X(s - h/2)` are obtained.

use serde::{Deserialize, Serialize};

use crate::error::{CopError, Result};
use crate::grids::{canonical_rep, half_step_offset};
use crate::poly::Poly;
use crate::scalar::{powi, Scalar, Tolerance};

/// Which admissible closed form a map follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Quadratic,
    Alternating,
    QExponential,
    /// The `h = 0` limit: `D = d/dx`, `S = id`.
    Continuous,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Quadratic => "quadratic",
            Regime::Alternating => "alternating",
            Regime::QExponential => "q_exponential",
            Regime::Continuous => "continuous",
        }
    }
}

/// Parameters of the closed form on one progression.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Progression {
    /// `X(s0 + t h) = a t^2 + b t + c`.
    Quadratic { a: Scalar, b: Scalar, c: Scalar },
    /// `X(s0 + t h) = a e^{i pi t} + b`.
    Alternating { a: Scalar, b: Scalar },
    /// `X(s0 + t h) = a q^t + b q^{-t} + c`.
    QExponential { a: Scalar, b: Scalar, c: Scalar },
}

/// Parameters of a quadratic progression, as consumed by the regularity engine.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl QuadraticParams {
    /// The invariant `b^2 - 4ac` shared by compatible progressions.
    pub fn discriminant(&self) -> Scalar {
        self.b * self.b - self.a * self.c * 4.0
    }
}

/// Parameters of a q-exponential progression with a fixed `q^{1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QExpParams {
    pub q_half: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl QExpParams {
    pub fn q(&self) -> Scalar {
        self.q_half * self.q_half
    }

    /// `alpha = (q^{1/2} + q^{-1/2}) / 2`.
    pub fn alpha(&self) -> Scalar {
        (self.q_half + self.q_half.inv()) / 2.0
    }
}

/// A classified admissible map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapModel {
    pub regime: Regime,
    /// Coefficient `A` of the full-step relation.
    #[serde(rename = "A")]
    pub step_scale: Scalar,
    /// Coefficient `B` of the full-step relation.
    #[serde(rename = "B")]
    pub step_shift: Scalar,
    pub q: Option<Scalar>,
    pub q_half: Option<Scalar>,
    pub h: Scalar,
    /// Per-progression parameters keyed by canonical representative.
    pub progressions: Vec<(Scalar, Progression)>,
}

/// Coefficients of the Magnus conic `u^2 + (2Bx + 2D)u + Cx^2 + 2Ex + F = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagnusConic {
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
    pub f: Scalar,
}

fn one() -> Scalar {
    Scalar::new(1.0, 0.0)
}

/// Pick the root of `r^2 - A r + 1` with `|r| > 1`, or with argument in
/// `(0, pi]` when both roots lie on the unit circle.
pub fn choose_q(step_scale: Scalar, tol: &Tolerance) -> Scalar {
    let disc = (step_scale * step_scale - 4.0).sqrt();
    let r1 = (step_scale + disc) / 2.0;
    let r2 = (step_scale - disc) / 2.0;
    if tol.is_zero(Scalar::new(r1.norm() - 1.0, 0.0), 1.0) {
        let arg = r1.arg();
        if arg > 0.0 { r1 } else { r2 }
    } else if r1.norm() > 1.0 {
        r1
    } else {
        r2
    }
}

impl MapModel {
    fn with_progression(regime: Regime, step_scale: Scalar, step_shift: Scalar, h: Scalar, key: Scalar, p: Progression) -> Self {
        MapModel {
            regime,
            step_scale,
            step_shift,
            q: None,
            q_half: None,
            h,
            progressions: vec![(canonical_rep(key, h), p)],
        }
    }

    /// Quadratic map `X(s0 + t h) = a t^2 + b t + c`.
    pub fn quadratic(h: Scalar, key: Scalar, a: Scalar, b: Scalar, c: Scalar) -> Self {
        MapModel::with_progression(Regime::Quadratic, Scalar::new(2.0, 0.0), a * 2.0, h, key, Progression::Quadratic { a, b, c })
    }

    /// Alternating map `X(s0 + t h) = a e^{i pi t} + b`.
    pub fn alternating(h: Scalar, key: Scalar, a: Scalar, b: Scalar) -> Self {
        MapModel::with_progression(Regime::Alternating, Scalar::new(-2.0, 0.0), b * 4.0, h, key, Progression::Alternating { a, b })
    }

    /// q-exponential map `X(s0 + t h) = a q^t + b q^{-t} + c` with `q = q_half^2`.
    pub fn q_exponential(h: Scalar, key: Scalar, q_half: Scalar, a: Scalar, b: Scalar, c: Scalar) -> Self {
        let q = q_half * q_half;
        let step_scale = q + q.inv();
        let mut m = MapModel::with_progression(
            Regime::QExponential,
            step_scale,
            c * (Scalar::new(2.0, 0.0) - step_scale),
            h,
            key,
            Progression::QExponential { a, b, c },
        );
        m.q = Some(q);
        m.q_half = Some(q_half);
        m
    }

    /// The `h = 0` sentinel: `X(s) = s`, `D = d/dx`, `S = id`.
    pub fn continuous() -> Self {
        MapModel {
            regime: Regime::Continuous,
            step_scale: Scalar::new(2.0, 0.0),
            step_shift: Scalar::new(0.0, 0.0),
            q: None,
            q_half: None,
            h: Scalar::new(0.0, 0.0),
            progressions: Vec::new(),
        }
    }

    /// Register another progression (its representative is canonicalised).
    pub fn add_progression(&mut self, key: Scalar, p: Progression) {
        self.progressions.push((canonical_rep(key, self.h), p));
    }

    fn lookup(&self, s: Scalar, tol: &Tolerance) -> Result<(Progression, i64)> {
        for &(key, p) in &self.progressions {
            if let Some(j) = half_step_offset(s, key, self.h, tol) {
                return Ok((p, j));
            }
        }
        Err(CopError::UnknownProgression { detail: format!("{s}") })
    }

    /// Closed form at `key + j h/2`.
    fn eval_half_steps(&self, p: Progression, j: i64) -> Scalar {
        match p {
            Progression::Quadratic { a, b, c } => {
                let t = j as f64 / 2.0;
                a * t * t + b * t + c
            }
            Progression::Alternating { a, b } => a * powi(Scalar::new(0.0, 1.0), j) + b,
            Progression::QExponential { a, b, c } => {
                let qh = self.q_half.unwrap_or_else(one);
                a * powi(qh, j) + b * powi(qh, -j) + c
            }
        }
    }

    /// `X(s0 + k h)` on the progression registered under `s0_key`.
    pub fn eval_closed_form(&self, s0_key: Scalar, k: i64, tol: &Tolerance) -> Result<Scalar> {
        if self.regime == Regime::Continuous {
            return Err(CopError::RegimeUnsupported { regime: "continuous".into(), op: "eval_closed_form".into() });
        }
        let (p, j) = self.lookup(s0_key, tol)?;
        Ok(self.eval_half_steps(p, j + 2 * k))
    }

    /// `X(s)` at any point of a registered coset (identity in the continuous regime).
    pub fn eval_point(&self, s: Scalar, tol: &Tolerance) -> Result<Scalar> {
        if self.regime == Regime::Continuous {
            return Ok(s);
        }
        let (p, j) = self.lookup(s, tol)?;
        Ok(self.eval_half_steps(p, j))
    }

    /// Parameters of the first registered quadratic progression.
    pub fn quadratic_params(&self) -> Result<QuadraticParams> {
        match self.progressions.first() {
            Some(&(_, Progression::Quadratic { a, b, c })) => Ok(QuadraticParams { a, b, c }),
            _ => Err(self.unsupported("quadratic_params")),
        }
    }

    /// Parameters of the first registered q-exponential progression.
    pub fn qexp_params(&self) -> Result<QExpParams> {
        match (self.progressions.first(), self.q_half) {
            (Some(&(_, Progression::QExponential { a, b, c })), Some(q_half)) => Ok(QExpParams { q_half, a, b, c }),
            _ => Err(self.unsupported("qexp_params")),
        }
    }

    fn unsupported(&self, op: &str) -> CopError {
        CopError::RegimeUnsupported { regime: self.regime.name().into(), op: op.into() }
    }

    /// `e1 = Y + Z` and `e2 = YZ` as polynomials in `X`, read from the first
    /// registered progression.
    pub fn symmetric_data(&self, tol: &Tolerance) -> Result<(Poly, Poly)> {
        match self.progressions.first() {
            Some(&(_, Progression::Quadratic { a, b, c })) => Ok(quadratic_symmetric_data(QuadraticParams { a, b, c })),
            Some(&(_, Progression::QExponential { a, b, c })) => {
                let q_half = self.q_half.ok_or_else(|| self.unsupported("symmetric_data"))?;
                Ok(qexp_symmetric_data(QExpParams { q_half, a, b, c }))
            }
            Some(&(_, Progression::Alternating { a, b })) => {
                if !tol.is_zero(b, a.norm()) {
                    return Err(CopError::RegimeUnsupported {
                        regime: "alternating (not normalised)".into(),
                        op: "symmetric_data".into(),
                    });
                }
                Ok(alternating_symmetric_data())
            }
            None => Err(self.unsupported("symmetric_data")),
        }
    }

    /// Conic coefficients read off `e1 = -2Bx - 2D` and `e2 = Cx^2 + 2Ex + F`.
    pub fn magnus_conic(&self, tol: &Tolerance) -> Result<MagnusConic> {
        let (e1, e2) = self.symmetric_data(tol)?;
        Ok(MagnusConic {
            b: -e1.coeff(1) / 2.0,
            d: -e1.coeff(0) / 2.0,
            c: e2.coeff(2),
            e: e2.coeff(1) / 2.0,
            f: e2.coeff(0),
        })
    }
}

/// Symmetric data of a quadratic progression `a t^2 + b t + c`:
/// `e1 = 2x + a/2`, `e2 = x^2 - (a/2)x + a^2/16 - (b^2 - 4ac)/4`.
pub fn quadratic_symmetric_data(p: QuadraticParams) -> (Poly, Poly) {
    let e1 = Poly::new(vec![p.a / 2.0, Scalar::new(2.0, 0.0)]);
    let e2 = Poly::new(vec![p.a * p.a / 16.0 - p.discriminant() / 4.0, -p.a / 2.0, one()]);
    (e1, e2)
}

/// Symmetric data of a q-exponential progression:
/// `e1 = 2 alpha (x - c) + 2c`,
/// `e2 = (x - c)^2 + ab (q^{1/2} - q^{-1/2})^2 + 2 alpha c (x - c) + c^2`.
pub fn qexp_symmetric_data(p: QExpParams) -> (Poly, Poly) {
    let alpha = p.alpha();
    let shift = Poly::linear_factor(p.c);
    let gap = p.q_half - p.q_half.inv();
    let e1 = &shift.scale(alpha * 2.0) + &Poly::constant(p.c * 2.0);
    let e2 = &(&(&shift * &shift) + &Poly::constant(p.a * p.b * gap * gap + p.c * p.c)) + &shift.scale(alpha * p.c * 2.0);
    (e1, e2)
}

/// Symmetric data of the normalised alternating map (`Y = iX`, `Z = -iX`).
pub fn alternating_symmetric_data() -> (Poly, Poly) {
    (Poly::zero(), Poly::monomial(one(), 2))
}

/// Fit `A`, `B` from samples `x_{-1}, x_0, x_1, x_2, ...` taken at
/// `s0 - h, s0, s0 + h, ...`, classify, and recover the closed form.
///
/// Every sample is checked against the recovered closed form.
pub fn classify_samples(samples: &[Scalar], h: Scalar, s0_key: Scalar, tol: &Tolerance) -> Result<MapModel> {
    if samples.len() < 4 {
        return Err(CopError::DegenerateSamples { detail: format!("need at least 4 samples, got {}", samples.len()) });
    }
    let scale = samples.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let (xm, x0, x1, x2) = (samples[0], samples[1], samples[2], samples[3]);
    if tol.is_zero(x0 - x1, scale) {
        return Err(CopError::DegenerateSamples { detail: "x_0 = x_1, the 2x2 system is singular".into() });
    }
    let step_scale = (x1 + xm - x2 - x0) / (x0 - x1);
    let step_shift = x1 + xm - step_scale * x0;
    let two = Scalar::new(2.0, 0.0);
    let model = if tol.is_zero(step_scale - two, 2.0) {
        let a = step_shift / 2.0;
        MapModel::quadratic(h, s0_key, a, x1 - x0 - a, x0)
    } else if tol.is_zero(step_scale + two, 2.0) {
        let residual = (x1 + x0 - step_shift / 2.0).norm();
        if residual > tol.band(scale) {
            return Err(CopError::AlternatingViolation { residual });
        }
        MapModel::alternating(h, s0_key, x0 - step_shift / 4.0, step_shift / 4.0)
    } else {
        let q = choose_q(step_scale, tol);
        let q_half = q.sqrt();
        let c = step_shift / (two - step_scale);
        let gap = q - q.inv();
        let a = (x1 - c - (x0 - c) * q.inv()) / gap;
        let b = ((x0 - c) * q - x1 + c) / gap;
        MapModel::q_exponential(h, s0_key, q_half, a, b, c)
    };
    let mut model = model;
    model.step_scale = step_scale;
    model.step_shift = step_shift;
    for (i, &x) in samples.iter().enumerate() {
        let fitted = model.eval_closed_form(model.progressions[0].0, i as i64 - 1, tol)?;
        let residual = (fitted - x).norm();
        if residual > tol.band(scale) {
            return Err(CopError::InconsistentSamples { index: i, residual });
        }
    }
    Ok(model)
}
