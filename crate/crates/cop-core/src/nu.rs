//! The second-order operator `L = phi D^2 + psi S D`.
//!
//! Classical sequences are eigenpolynomials of `L`, the eigenvalue of `P_n`
//! being the leading coefficient of `L(x^n)`. The Hahn derived sequences
//! `D^k P_{n+k}`, once made monic, are again orthogonal.

use serde::{Deserialize, Serialize};

use crate::ds::OperatorPair;
use crate::error::{CopError, Result};
use crate::functionals::MomentFunctional;
use crate::poly::Poly;
use crate::regularity::{generate_ops, RecurrenceTable};
use crate::scalar::{Scalar, Tolerance};

/// `L = phi D^2 + psi S D` over a fixed operator pair.
#[derive(Clone, Debug)]
pub struct NuOperator {
    pub phi: Poly,
    pub psi: Poly,
    pub ops: OperatorPair,
}

/// One row of [`NuOperator::eigen_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub lambda: Scalar,
    /// `max |L(P_n) - lambda_n P_n|` over coefficients.
    pub residual: f64,
    /// `max |P_n|` over coefficients, the natural scale of the residual.
    pub scale: f64,
}

impl NuOperator {
    pub fn new(phi: Poly, psi: Poly, ops: OperatorPair) -> Self {
        NuOperator { phi, psi, ops }
    }

    /// `phi D(D p) + psi S(D p)`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let dp = self.ops.d(p)?;
        let ddp = self.ops.d(&dp)?;
        let sdp = self.ops.s(&dp)?;
        Ok(&(&self.phi * &ddp) + &(&self.psi * &sdp))
    }

    /// Leading coefficient of `L(x^n)`.
    pub fn eigenvalue(&self, n: usize) -> Result<Scalar> {
        Ok(self.apply(&Poly::monomial(Scalar::new(1.0, 0.0), n))?.coeff(n))
    }

    /// `max |<u, (L x^i) x^j> - <u, x^i (L x^j)>|` over `i, j <= up_to`.
    pub fn formal_symmetry_residual(&self, u: &MomentFunctional, up_to: usize) -> Result<f64> {
        let one = Scalar::new(1.0, 0.0);
        let images: Vec<Poly> = (0..=up_to).map(|i| self.apply(&Poly::monomial(one, i))).collect::<Result<_>>()?;
        let mut worst: f64 = 0.0;
        for i in 0..=up_to {
            for j in 0..i {
                let left = u.pair(&(&images[i] * &Poly::monomial(one, j)))?;
                let right = u.pair(&(&Poly::monomial(one, i) * &images[j]))?;
                worst = worst.max((left - right).norm());
            }
        }
        Ok(worst)
    }

    /// `L P_n = lambda_n P_n` for the first `count` members of the table's sequence.
    pub fn eigen_check(&self, table: &RecurrenceTable, count: usize) -> Result<Vec<EigenEntry>> {
        let polys = generate_ops(table, count.saturating_sub(1))?;
        polys
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let lambda = self.eigenvalue(n)?;
                let residual = self.apply(p)?.max_diff(&p.scale(lambda));
                Ok(EigenEntry { lambda, residual, scale: p.max_abs_coeff() })
            })
            .collect()
    }
}

/// Monic `Q_n^{[k]} = D^k P_{n+k} / prod_{j=1}^{k} gamma_{n+j}` for `n < count`.
pub fn hahn_derived(table: &RecurrenceTable, ops: &OperatorPair, k: usize, count: usize, tol: &Tolerance) -> Result<Vec<Poly>> {
    let polys = generate_ops(table, count + k)?;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let mut kappa = Scalar::new(1.0, 0.0);
        for j in 1..=k {
            let (gamma, _) = ops.leading_action((n + j) as i64);
            if tol.is_zero(gamma, 1.0) {
                return Err(CopError::TorsionNormalization { index: n + j });
            }
            kappa *= gamma;
        }
        let mut p = polys[n + k].clone();
        for _ in 0..k {
            p = ops.d(&p)?;
        }
        out.push(p.scale(kappa.inv()));
    }
    Ok(out)
}

/// Residuals `<u, (x - tau) x^{2k}> = mu_{2k+1} - tau mu_{2k}` for `k <= up_to`.
pub fn alternating_nu_check(u: &MomentFunctional, tau: Scalar, up_to: usize) -> Result<Vec<Scalar>> {
    let factor = Poly::linear_factor(tau);
    (0..=up_to)
        .map(|k| u.pair(&(&factor * &Poly::monomial(Scalar::new(1.0, 0.0), 2 * k))))
        .collect()
}
