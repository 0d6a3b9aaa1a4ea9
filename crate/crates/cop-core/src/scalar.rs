//! Complex scalars and the two-parameter tolerance policy.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CopError, Result};

/// Complex double-precision scalar. Serialises as `[re, im]`.
pub type Scalar = Complex64;

/// Build a real scalar.
pub fn re(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// Build a scalar from real and imaginary parts.
pub fn cx(re: f64, im: f64) -> Scalar {
    Scalar::new(re, im)
}

/// Fail with `NonFinite` when either component is NaN or infinite.
pub fn ensure_finite(z: Scalar, context: &str) -> Result<Scalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(CopError::NonFinite { context: context.to_string() })
    }
}

/// Absolute plus relative tolerance used for every "is this zero" decision.
///
/// A value `z` counts as zero when `|z| <= abs_eps + rel_eps * scale`, where
/// the caller supplies `scale` as the magnitude context of the computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-10, rel_eps: 1e-9 }
    }
}

impl Tolerance {
    /// Tolerance with explicit absolute and relative parts.
    pub fn new(abs_eps: f64, rel_eps: f64) -> Self {
        Tolerance { abs_eps, rel_eps }
    }

    /// The zero band for a given magnitude context.
    pub fn band(&self, scale: f64) -> f64 {
        self.abs_eps + self.rel_eps * scale.abs()
    }

    /// `|z| <= abs_eps + rel_eps * scale`.
    pub fn is_zero(&self, z: Scalar, scale: f64) -> bool {
        z.norm() <= self.band(scale)
    }

    /// True when `z` is nonzero but within ten times the zero band.
    pub fn is_near_zero(&self, z: Scalar, scale: f64) -> bool {
        let n = z.norm();
        n > self.band(scale) && n <= 10.0 * self.band(scale)
    }

    /// Compare two scalars with the magnitude of the larger as scale.
    pub fn approx_eq(&self, a: Scalar, b: Scalar) -> bool {
        self.is_zero(a - b, a.norm().max(b.norm()))
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: Scalar, k: usize) -> Scalar {
    (0..k).fold(Scalar::new(1.0, 0.0), |acc, j| acc * (x + j as f64))
}

/// q-Pochhammer symbol `(x; q)_k = (1-x)(1-xq)...(1-xq^{k-1})`.
pub fn q_pochhammer(x: Scalar, q: Scalar, k: usize) -> Scalar {
    let mut acc = Scalar::new(1.0, 0.0);
    let mut term = x;
    for _ in 0..k {
        acc *= Scalar::new(1.0, 0.0) - term;
        term *= q;
    }
    acc
}

/// Integer power supporting negative exponents.
pub fn powi(z: Scalar, n: i64) -> Scalar {
    if n >= 0 {
        z.powu(n as u32)
    } else {
        z.inv().powu((-n) as u32)
    }
}
