//! Linear functionals on polynomials, realised as finite moment vectors.
//!
//! A [`MomentFunctional`] stores `mu_k = <u, x^k>` for `k <= M`. Pairing with a
//! polynomial of degree above `M` is an error, never a silent truncation.
//! The transposes of `D` and `S` act by `<Du, p> = -<u, Dp>` and
//! `<Su, p> = <u, Sp>`; polynomial modification by `<p0 u, q> = <u, p0 q>`.

use serde::{Deserialize, Serialize};

use crate::ds::OperatorPair;
use crate::error::{CopError, Result};
use crate::maps::MapModel;
use crate::poly::Poly;
use crate::regularity::RecurrenceTable;
use crate::scalar::Scalar;

/// Moment vector `mu_0 ..= mu_M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentFunctional {
    pub moments: Vec<Scalar>,
}

/// A functional given as a finite weighted sum `sum_s w_s p(x_s)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteRep {
    pub nodes: Vec<Scalar>,
    pub weights: Vec<Scalar>,
}

impl DiscreteRep {
    /// Induced moments `sum_s w_s x_s^k` for `k <= max_degree`.
    pub fn moments(&self, max_degree: usize) -> MomentFunctional {
        let moments = (0..=max_degree)
            .map(|k| self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * x.powu(k as u32)).sum())
            .collect();
        MomentFunctional { moments }
    }

    /// `sum_s w_s p(x_s)`.
    pub fn pair(&self, p: &Poly) -> Scalar {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * p.eval(x)).sum()
    }
}

impl MomentFunctional {
    pub fn new(moments: Vec<Scalar>) -> Self {
        MomentFunctional { moments }
    }

    /// Moments `t^k` of the evaluation functional at `t`.
    pub fn dirac(t: Scalar, max_degree: usize) -> Self {
        MomentFunctional::new((0..=max_degree).map(|k| t.powu(k as u32)).collect())
    }

    /// Highest degree `M` the functional can pair with.
    pub fn max_degree(&self) -> usize {
        self.moments.len().saturating_sub(1)
    }

    /// Largest moment modulus.
    pub fn norm(&self) -> f64 {
        self.moments.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }

    fn check_degree(&self, p: &Poly) -> Result<()> {
        match p.degree() {
            Some(d) if self.moments.is_empty() || d > self.max_degree() => {
                Err(CopError::DegreeOverflow { needed: d, available: self.max_degree() })
            }
            _ => Ok(()),
        }
    }

    /// `<u, p> = sum_k p_k mu_k`.
    pub fn pair(&self, p: &Poly) -> Result<Scalar> {
        self.check_degree(p)?;
        Ok(p.coeffs().iter().zip(&self.moments).map(|(&c, &m)| c * m).sum())
    }

    /// `sum_k |p_k| |mu_k|`, the magnitude context of `<u, p>`.
    pub fn pair_magnitude(&self, p: &Poly) -> Result<f64> {
        self.check_degree(p)?;
        Ok(p.coeffs().iter().zip(&self.moments).map(|(c, m)| c.norm() * m.norm()).sum())
    }

    /// Moments of `p0 u`, up to degree `M - deg p0`.
    pub fn poly_modify(&self, p0: &Poly) -> Result<MomentFunctional> {
        let d = p0.degree().unwrap_or(0);
        if d > self.max_degree() {
            return Err(CopError::DegreeOverflow { needed: d, available: self.max_degree() });
        }
        let moments = (0..=self.max_degree() - d)
            .map(|k| p0.coeffs().iter().enumerate().map(|(j, &c)| c * self.moments[j + k]).sum())
            .collect();
        Ok(MomentFunctional::new(moments))
    }

    /// Moments of the transposed divided difference: `nu_k = -<u, D(x^k)>`,
    /// for every `k` with `deg D(x^k) <= M`.
    pub fn transpose_d(&self, ops: &OperatorPair) -> Result<MomentFunctional> {
        let top = self.max_degree() + 1;
        let moments = (0..=top)
            .map(|k| Ok(-self.pair(ops.d_monomial(k)?)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentFunctional::new(moments))
    }

    /// Moments of the transposed averaging operator: `nu_k = <u, S(x^k)>`, `k <= M`.
    pub fn transpose_s(&self, ops: &OperatorPair) -> Result<MomentFunctional> {
        let moments = (0..=self.max_degree())
            .map(|k| self.pair(ops.s_monomial(k)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentFunctional::new(moments))
    }

    /// Residuals `<D(phi u) - S(psi u), x^k>` for `k <= up_to`, that is
    /// `-<u, phi D(x^k)> - <u, psi S(x^k)>`.
    pub fn structural_residual(&self, phi: &Poly, psi: &Poly, ops: &OperatorPair, up_to: usize) -> Result<Vec<Scalar>> {
        (0..=up_to)
            .map(|k| {
                let d = self.pair(&(phi * ops.d_monomial(k)?))?;
                let s = self.pair(&(psi * ops.s_monomial(k)?))?;
                Ok(-d - s)
            })
            .collect()
    }

    /// Magnitude context of each structural residual.
    pub fn structural_magnitude(&self, phi: &Poly, psi: &Poly, ops: &OperatorPair, up_to: usize) -> Result<Vec<f64>> {
        (0..=up_to)
            .map(|k| {
                Ok(self.pair_magnitude(&(phi * ops.d_monomial(k)?))? + self.pair_magnitude(&(psi * ops.s_monomial(k)?))?)
            })
            .collect()
    }

    /// One step of the derived-functional recursion in the q-exponential regime:
    ///
    /// `u' = D((alpha^2 - 1)((x - c)^2 - 4ab) psi u) - S(phi u)`.
    ///
    /// The weight `(alpha^2 - 1)((x - c)^2 - 4ab)` is `(Y - Z)^2 / 4` written in `x`.
    ///
    /// Called with the shifted pair `(phi^[n], psi^[n])` and `u^[n]` it
    /// produces `u^[n+1]`.
    pub fn derived_functional(&self, phi: &Poly, psi: &Poly, m: &MapModel, ops: &OperatorPair) -> Result<MomentFunctional> {
        let p = m.qexp_params()?;
        let alpha = p.alpha();
        let shift = Poly::linear_factor(p.c);
        let weight = (&(&shift * &shift) - &Poly::constant(p.a * p.b * 4.0)).scale(alpha * alpha - 1.0);
        let carried = &weight * psi;
        let top = self.max_degree().saturating_sub(carried.degree().unwrap_or(0).max(phi.degree().unwrap_or(0)));
        let moments = (0..=top)
            .map(|k| {
                let d = self.pair(&(&carried * ops.d_monomial(k)?))?;
                let s = self.pair(&(phi * ops.s_monomial(k)?))?;
                Ok(-d - s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentFunctional::new(moments))
    }

    /// Gram matrix `<u, p_i p_j>`.
    pub fn gram(&self, polys: &[Poly]) -> Result<Vec<Vec<Scalar>>> {
        polys
            .iter()
            .map(|p| polys.iter().map(|r| self.pair(&(p * r))).collect())
            .collect()
    }

    /// Determinant of the Hankel matrix `(mu_{i+j})_{0 <= i,j < n}`.
    pub fn hankel_determinant(&self, n: usize) -> Result<Scalar> {
        if n > 0 && 2 * (n - 1) > self.max_degree() {
            return Err(CopError::DegreeOverflow { needed: 2 * (n - 1), available: self.max_degree() });
        }
        let rows = (0..n).map(|i| (0..n).map(|j| self.moments[i + j]).collect()).collect();
        Ok(determinant(rows))
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut det = Scalar::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if a[pivot][col].norm() == 0.0 {
            return Scalar::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
        }
    }
    det
}

/// Moments `mu_k = mu0 (J^k)_{00}` of the Jacobi matrix with diagonal `B`,
/// superdiagonal `1` and subdiagonal `C`, for `k <= 2K - 1` where `K` is the
/// number of `B` entries used.
pub fn moments_from_recurrence(table: &RecurrenceTable, mu0: Scalar) -> Result<MomentFunctional> {
    let k = table.b.len().min(table.c.len() + 1);
    if k == 0 {
        return Err(CopError::InsufficientTable { needed: 1, available: 0 });
    }
    let mut v = vec![Scalar::new(0.0, 0.0); k];
    v[0] = Scalar::new(1.0, 0.0);
    let mut moments = Vec::with_capacity(2 * k);
    for _ in 0..2 * k {
        moments.push(mu0 * v[0]);
        let mut next = vec![Scalar::new(0.0, 0.0); k];
        for i in 0..k {
            let mut acc = table.b[i] * v[i];
            if i + 1 < k {
                acc += v[i + 1];
            }
            if i > 0 {
                acc += table.c[i - 1] * v[i - 1];
            }
            next[i] = acc;
        }
        v = next;
    }
    Ok(MomentFunctional::new(moments))
}
