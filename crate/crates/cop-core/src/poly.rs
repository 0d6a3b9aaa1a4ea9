//! Dense univariate polynomials with complex coefficients.
//!
//! Provides:
//! - [`Poly`]: coefficient vector indexed by power, trailing zeros trimmed
//! - arithmetic through the `Add`, `Sub`, `Mul`, `Neg` operators and
//!   [`Poly::scale`], [`Poly::compose`], [`Poly::divrem`]
//! - [`Poly::roots`]: Durand-Kerner (Weierstrass) root finder
//! - [`terminating_hypergeometric`]: terminating `pFq` series as a polynomial

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{CopError, Result};
use crate::scalar::{pochhammer, Scalar, Tolerance};

const ROOT_ITERATION_CAP: usize = 1000;
const ROOT_RESIDUAL: f64 = 1e-9;

/// Dense polynomial `sum_k coeffs[k] x^k`.
///
/// The zero polynomial has an empty coefficient list; its degree is `None`
/// (standing for minus infinity).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "PolyRepr")]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

#[derive(Deserialize)]
struct PolyRepr {
    coeffs: Vec<Scalar>,
}

impl From<PolyRepr> for Poly {
    fn from(r: PolyRepr) -> Self {
        Poly::new(r.coeffs)
    }
}

impl Poly {
    /// Build from coefficients (index = power); exact trailing zeros are removed.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Scalar::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Scalar::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::new(1.0, 0.0))
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Scalar::new(1.0, 0.0), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `c x^n`.
    pub fn monomial(c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![Scalar::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_factor(root: Scalar) -> Self {
        Poly::new(vec![-root, Scalar::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, `None` for the zero polynomial.
    pub fn leading(&self) -> Option<Scalar> {
        self.coeffs.last().copied()
    }

    /// True when the leading coefficient is exactly one.
    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Scalar::new(1.0, 0.0))
    }

    /// Largest coefficient modulus (zero for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// `self(inner(x))`, by Horner's scheme on polynomials.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| &(&acc * inner) + &Poly::constant(c))
    }

    /// `self(x^2)`.
    pub fn of_square(&self) -> Poly {
        let mut coeffs = vec![Scalar::new(0.0, 0.0); 2 * self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c;
        }
        Poly::new(coeffs)
    }

    /// Split `self(x) = even(x^2) + x * odd(x^2)`.
    pub fn even_odd(&self) -> (Poly, Poly) {
        let even = self.coeffs.iter().step_by(2).copied().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).copied().collect();
        (Poly::new(even), Poly::new(odd))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(CopError::DivideByZeroPoly)?;
        let lead = divisor.coeffs[dd];
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::new(0.0, 0.0); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let t = rem[k + dd] / lead;
            quot[k] = t;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= t * dc;
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Drop trailing coefficients that are zero per `tol`, with the largest
    /// coefficient modulus as scale.
    pub fn trim(&self, tol: &Tolerance) -> Poly {
        let scale = self.max_abs_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| tol.is_zero(*c, scale)) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// Divide by the leading coefficient once; the result has leading
    /// coefficient exactly one.
    pub fn monic(&self, tol: &Tolerance) -> Result<Poly> {
        let lead = self.leading().ok_or(CopError::ZeroLeading)?;
        if tol.is_zero(lead, self.max_abs_coeff()) {
            return Err(CopError::ZeroLeading);
        }
        let mut coeffs: Vec<Scalar> = self.coeffs.iter().map(|&c| c / lead).collect();
        if let Some(last) = coeffs.last_mut() {
            *last = Scalar::new(1.0, 0.0);
        }
        Ok(Poly::new(coeffs))
    }

    /// Largest coefficientwise modulus of `self - other`.
    pub fn max_diff(&self, other: &Poly) -> f64 {
        (self - other).max_abs_coeff()
    }

    /// All complex roots with multiplicity, by Durand-Kerner iteration.
    ///
    /// Initial guesses are `R (0.4 + 0.9i)^k` with `R = 1 + max |c_k / c_n|`.
    /// Each returned root satisfies
    /// `|p(z)| <= 1e-9 * max|c_k| * max(1, |z|)^n`.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(CopError::InvalidInput {
                    detail: "root finding needs degree at least 1".into(),
                })
            }
        };
        let lead = self.coeffs[n];
        let monic: Vec<Scalar> = self.coeffs.iter().map(|&c| c / lead).collect();
        let eval_monic = |z: Scalar| monic.iter().rev().fold(Scalar::new(0.0, 0.0), |acc, &c| acc * z + c);
        let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let seed = Scalar::new(0.4, 0.9);
        let mut z: Vec<Scalar> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
        for _ in 0..ROOT_ITERATION_CAP {
            let mut max_step: f64 = 0.0;
            for i in 0..n {
                let mut den = Scalar::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        den *= z[i] - z[j];
                    }
                }
                if den.norm() == 0.0 {
                    den = Scalar::new(f64::EPSILON, 0.0);
                }
                let step = eval_monic(z[i]) / den;
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
            if !max_step.is_finite() {
                break;
            }
            if max_step < 1e-15 {
                break;
            }
        }
        let scale = self.max_abs_coeff();
        let acceptable = z.iter().all(|&r| {
            r.re.is_finite()
                && r.im.is_finite()
                && self.eval(r).norm() <= ROOT_RESIDUAL * scale * r.norm().max(1.0).powi(n as i32)
        });
        if acceptable {
            Ok(z)
        } else {
            Err(CopError::NoConvergence { iterations: ROOT_ITERATION_CAP })
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(k, c)| format!("({c})x^{k}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(Scalar::new(-1.0, 0.0))
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

/// Terminating series `sum_{k=0}^{n} prod(upper)_k / prod(lower)_k t^k / k!`.
///
/// The first upper parameter must equal `-n` within `tol`, so that the
/// series stops at `k = n`. A lower parameter in `{0, -1, ..., -(n-1)}`
/// is a pole and is rejected.
pub fn terminating_hypergeometric(
    upper: &[Scalar],
    lower: &[Scalar],
    n: usize,
    tol: &Tolerance,
) -> Result<Poly> {
    let first = upper.first().ok_or_else(|| CopError::NotTerminating {
        detail: "no upper parameters".into(),
    })?;
    if !tol.is_zero(*first + n as f64, n as f64) {
        return Err(CopError::NotTerminating {
            detail: format!("first upper parameter {first} is not -{n}"),
        });
    }
    for (index, &b) in lower.iter().enumerate() {
        for k in 0..n {
            if tol.is_zero(b + k as f64, 1.0) {
                return Err(CopError::PochhammerPole { index });
            }
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut factorial = 1.0;
    for k in 0..=n {
        if k > 0 {
            factorial *= k as f64;
        }
        let num: Scalar = upper.iter().map(|&a| pochhammer(a, k)).product();
        let den: Scalar = lower.iter().map(|&b| pochhammer(b, k)).product();
        coeffs.push(num / den / factorial);
    }
    Ok(Poly::new(coeffs))
}
