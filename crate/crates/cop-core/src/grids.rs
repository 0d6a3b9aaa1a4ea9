//! Finite models of half-step-invariant sets.
//!
//! A half-step-invariant set is stored as a step `h`, a list of coset
//! representatives of `(h/2)Z`, and a window `K`: the materialised points are
//! `v + k h/2` for every representative `v` and `|k| <= K`.

use serde::{Deserialize, Serialize};

use crate::error::{CopError, Result};
use crate::scalar::{Scalar, Tolerance};

/// Step, coset representatives and materialisation window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfStepSet {
    pub h: Scalar,
    pub reps: Vec<Scalar>,
    pub window: usize,
}

impl HalfStepSet {
    /// Validate that `h != 0`, `window >= 1`, and that the representatives
    /// lie in pairwise distinct cosets of `(h/2)Z`.
    pub fn new(h: Scalar, reps: Vec<Scalar>, window: usize, tol: &Tolerance) -> Result<Self> {
        if h.norm() == 0.0 {
            return Err(CopError::InvalidInput { detail: "step h must be nonzero".into() });
        }
        if window == 0 {
            return Err(CopError::InvalidInput { detail: "window must be at least 1".into() });
        }
        for i in 0..reps.len() {
            for j in 0..i {
                if same_coset(reps[i], reps[j], h, tol) {
                    return Err(CopError::InvalidInput {
                        detail: format!("representatives {j} and {i} share a coset"),
                    });
                }
            }
        }
        Ok(HalfStepSet { h, reps, window })
    }

    /// Points `v + k h/2` for every representative and `lo <= k <= hi`,
    /// grouped by representative.
    pub fn points_in_range(&self, lo: i64, hi: i64) -> Vec<Scalar> {
        let half = self.h / 2.0;
        self.reps
            .iter()
            .flat_map(|&v| (lo..=hi).map(move |k| v + half * k as f64))
            .collect()
    }

    /// All materialised points, `|k| <= window`.
    pub fn materialize(&self) -> Vec<Scalar> {
        let k = self.window as i64;
        self.points_in_range(-k, k)
    }

    /// Materialised points whose full-step neighbours `s +- h` are also
    /// materialised (the interior used by second-order checks).
    pub fn interior(&self) -> Vec<Scalar> {
        let k = self.window as i64;
        self.points_in_range(-k + 2, k - 2)
    }
}

/// `s - k h/2` with `k` the unique integer placing `Re(result / h)` in `[0, 1/2)`.
pub fn canonical_rep(s: Scalar, h: Scalar) -> Scalar {
    let k = (2.0 * (s / h).re).floor();
    let out = s - h * (k / 2.0);
    let t = (out / h).re;
    if t >= 0.5 {
        out - h / 2.0
    } else if t < 0.0 {
        out + h / 2.0
    } else {
        out
    }
}

/// True when `(s - t) / (h/2)` is an integer within tolerance.
pub fn same_coset(s: Scalar, t: Scalar, h: Scalar, tol: &Tolerance) -> bool {
    let r = (s - t) / (h / 2.0);
    let nearest = Scalar::new(r.re.round(), 0.0);
    tol.is_zero(r - nearest, r.norm())
}

/// Offset of `s` from `rep` in half-steps, when they share a coset.
pub fn half_step_offset(s: Scalar, rep: Scalar, h: Scalar, tol: &Tolerance) -> Option<i64> {
    if same_coset(s, rep, h, tol) {
        Some(((s - rep) / (h / 2.0)).re.round() as i64)
    } else {
        None
    }
}

/// Values of `map` over `points`, deduplicated under `tol`, in first-seen order.
pub fn image_set<F>(map: F, points: &[Scalar], tol: &Tolerance) -> Vec<Scalar>
where
    F: Fn(Scalar) -> Scalar,
{
    let mut out: Vec<Scalar> = Vec::new();
    for &s in points {
        let v = map(s);
        if !out.iter().any(|&w| tol.approx_eq(v, w)) {
            out.push(v);
        }
    }
    out
}

/// True when two finite sets agree under `tol` (each element of one has a
/// partner in the other and the sizes match).
pub fn sets_equal(a: &[Scalar], b: &[Scalar], tol: &Tolerance) -> bool {
    a.len() == b.len()
        && a.iter().all(|&x| b.iter().any(|&y| tol.approx_eq(x, y)))
        && b.iter().all(|&y| a.iter().any(|&x| tol.approx_eq(x, y)))
}

/// The map `W(s) = s + (gamma - 1)(1 - (-1)^s)/2` on integers `s`.
pub fn para_krawtchouk_w(s: i64, gamma: f64) -> f64 {
    let sign = if s.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    s as f64 + 0.5 * (gamma - 1.0) * (1.0 - sign)
}

/// The set `{0, gamma/2, 1, gamma/2 + 1, ..., (N-1)/2, gamma/2 + (N-1)/2}` for odd `N`,
/// as a grid with `h = 2` and representatives `0`, `gamma/2`.
pub fn para_krawtchouk_support(n: usize, gamma: f64) -> Vec<Scalar> {
    let grid = HalfStepSet {
        h: Scalar::new(2.0, 0.0),
        reps: vec![Scalar::new(0.0, 0.0), Scalar::new(gamma / 2.0, 0.0)],
        window: n.div_ceil(2).max(1),
    };
    grid.points_in_range(0, ((n - 1) / 2) as i64)
}
