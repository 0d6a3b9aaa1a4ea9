//! Named families: Askey-Wilson (including its root-of-unity truncation),
//! complementary Bannai-Ito, even-`N` dual (-1)-Hahn, shifted Jacobi,
//! Laguerre and Hermite.

use serde::{Deserialize, Serialize};

use crate::alternating::{build_alternating_ops, AlternatingBuild};
use crate::error::{CopError, Result};
use crate::maps::QExpParams;
use crate::poly::{terminating_hypergeometric, Poly};
use crate::regularity::{generate_ops, root_of_unity_order, ClassicalData, RecurrenceTable};
use crate::scalar::{pochhammer, powi, Scalar, Tolerance};

fn one() -> Scalar {
    Scalar::new(1.0, 0.0)
}

/// Askey-Wilson parameters on the lattice `X(s0 + kh) = A q^{-k} + B q^k + C`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AskeyWilsonParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub q: Scalar,
    #[serde(rename = "A")]
    pub big_a: Scalar,
    #[serde(rename = "B")]
    pub big_b: Scalar,
    #[serde(rename = "C")]
    pub big_c: Scalar,
    /// Branch of `q^{1/2}`; the principal root when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_half: Option<Scalar>,
}

impl AskeyWilsonParams {
    /// `g = abcd`.
    pub fn g(&self) -> Scalar {
        self.a * self.b * self.c * self.d
    }

    /// Principal `sqrt(AB)`.
    pub fn sqrt_ab(&self) -> Scalar {
        (self.big_a * self.big_b).sqrt()
    }

    pub fn q_half(&self) -> Scalar {
        self.q_half.unwrap_or_else(|| self.q.sqrt())
    }

    fn params(&self) -> [Scalar; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn pair_products(&self) -> [Scalar; 6] {
        let [a, b, c, d] = self.params();
        [a * b, a * c, a * d, b * c, b * d, c * d]
    }

    /// Progression parameters `a_{s0} = B`, `b_{s0} = A`, `c = C`.
    pub fn qexp_params(&self) -> QExpParams {
        QExpParams { q_half: self.q_half(), a: self.big_b, b: self.big_a, c: self.big_c }
    }

    /// The structural pair of the family.
    pub fn classical_data(&self) -> Result<ClassicalData> {
        let [a, b, c, d] = self.params();
        let g = self.g();
        let e1 = a + b + c + d;
        let e3 = a * b * c + a * b * d + a * c * d + b * c * d;
        let e2: Scalar = self.pair_products().iter().sum();
        let root = self.sqrt_ab();
        let ab = self.big_a * self.big_b;
        let shift = Poly::linear_factor(self.big_c);
        let phi_t = Poly::new(vec![ab * 4.0 * (e2 - g - 1.0), -root * 2.0 * (e1 + e3), (g + 1.0) * 2.0]);
        let prefactor = self.q_half() * 4.0 / (self.q - 1.0);
        let psi_t = Poly::new(vec![prefactor * root * (e1 - e3), prefactor * (g - 1.0)]);
        ClassicalData::new(phi_t.compose(&shift), psi_t.compose(&shift))
    }

    fn check_generic(&self, n: usize, tol: &Tolerance) -> Result<()> {
        let g = self.g();
        for k in -1..=(2 * n as i64 + 1) {
            if tol.is_zero(one() - g * powi(self.q, k), 1.0) {
                return Err(CopError::GenericityViolation { detail: format!("1 - g q^{k} = 0") });
            }
        }
        for (i, prod) in self.pair_products().iter().enumerate() {
            for k in 0..=n as i64 {
                if tol.is_zero(one() - prod * powi(self.q, k), 1.0) {
                    return Err(CopError::GenericityViolation { detail: format!("pair product {i} equals q^-{k}") });
                }
            }
        }
        if tol.is_zero(self.big_a * self.big_b, 1.0) {
            return Err(CopError::GenericityViolation { detail: "AB = 0".into() });
        }
        Ok(())
    }

    /// `B_n = C + sqrt(AB) (a + 1/a - A_n - C_n)` with the standard
    /// Askey-Wilson `A_n`, `C_n`; the parameter of largest modulus plays the
    /// role of `a` (the expression is symmetric in `a, b, c, d`).
    pub fn b_coefficient(&self, n: usize) -> Scalar {
        let mut ps = self.params();
        ps.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
        let [a, b, c, d] = ps;
        if a.norm() == 0.0 {
            return self.big_c;
        }
        let q = self.q;
        let g = self.g();
        let ni = n as i64;
        let qn = powi(q, ni);
        let qn1 = powi(q, ni - 1);
        let up = (one() - a * b * qn) * (one() - a * c * qn) * (one() - a * d * qn) * (one() - g * qn1)
            / (a * (one() - g * powi(q, 2 * ni - 1)) * (one() - g * powi(q, 2 * ni)));
        let down = if n == 0 {
            Scalar::new(0.0, 0.0)
        } else {
            a * (one() - qn) * (one() - b * c * qn1) * (one() - b * d * qn1) * (one() - c * d * qn1)
                / ((one() - g * powi(q, 2 * ni - 2)) * (one() - g * powi(q, 2 * ni - 1)))
        };
        self.big_c + self.sqrt_ab() * (a + a.inv() - up - down)
    }

    /// `C_{n+1}` from the six-factor product formula.
    pub fn c_coefficient(&self, n: usize) -> Scalar {
        let q = self.q;
        let g = self.g();
        let ni = n as i64;
        let qn = powi(q, ni);
        let pairs: Scalar = self.pair_products().iter().map(|p| one() - p * qn).product();
        let num = self.big_a * self.big_b * (one() - powi(q, ni + 1)) * (one() - g * powi(q, ni - 1)) * pairs;
        let mid = one() - g * powi(q, 2 * ni);
        let den = (one() - g * powi(q, 2 * ni - 1)) * mid * mid * (one() - g * powi(q, 2 * ni + 1));
        num / den
    }

    /// `E_nu = (a^nu + b^nu + c^nu + d^nu - (abc)^nu - ... - (bcd)^nu) / (1 - g^nu)`.
    pub fn e_nu(&self, nu: usize) -> Scalar {
        let [a, b, c, d] = self.params();
        let p = |z: Scalar| z.powu(nu as u32);
        let num = p(a) + p(b) + p(c) + p(d) - p(a * b * c) - p(a * b * d) - p(a * c * d) - p(b * c * d);
        num / (one() - p(self.g()))
    }
}

/// `B_0..B_N`, `C_1..C_{N+1}` of the monic Askey-Wilson sequence.
pub fn askey_wilson_table(p: &AskeyWilsonParams, n: usize, tol: &Tolerance) -> Result<RecurrenceTable> {
    p.check_generic(n, tol)?;
    let b = (0..=n).map(|k| p.b_coefficient(k)).collect();
    let c = (0..=n).map(|k| p.c_coefficient(k)).collect();
    Ok(RecurrenceTable::from_coefficients(b, c, one()))
}

/// Root-of-unity truncation data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AskeyWilsonTruncation {
    pub nu: usize,
    pub e_nu: Scalar,
    pub sqrt_ab: Scalar,
    pub r: Scalar,
    /// `xi_s = C + sqrt(AB)(r q^s + r^{-1} q^{-s})`, `s = 0..nu-1`.
    pub nodes: Vec<Scalar>,
    /// `P_nu'(xi_s)` from the closed form.
    pub derivatives: Vec<Scalar>,
    /// Weights from the ratio recursion, normalised to sum to `h_0 = 1`.
    pub weights_ratio: Vec<Scalar>,
    /// Weights `h_{nu-1} / (P_{nu-1}(xi_s) P_nu'(xi_s))`.
    pub weights_christoffel: Vec<Scalar>,
    /// `C_nu` from the product formula (vanishes at a primitive root).
    pub c_nu: Scalar,
    /// `B_0..B_{nu-1}`, `C_1..C_nu`.
    pub table: RecurrenceTable,
}

impl AskeyWilsonTruncation {
    /// `P_nu(x) = (AB)^{nu/2} (t^nu + t^{-nu} - E_nu)` with `x = C + sqrt(AB)(t + 1/t)`.
    pub fn p_nu_closed(&self, p: &AskeyWilsonParams, x: Scalar) -> Scalar {
        let w = (x - p.big_c) / self.sqrt_ab;
        let t = w / 2.0 + (w * w / 4.0 - 1.0).sqrt();
        let tn = t.powu(self.nu as u32);
        self.sqrt_ab.powu(self.nu as u32) * (tn + tn.inv() - self.e_nu)
    }
}

/// Nodes and two independent weight computations at a primitive `nu`-th root `q`.
pub fn askey_wilson_truncation(p: &AskeyWilsonParams, nu: usize, tol: &Tolerance) -> Result<AskeyWilsonTruncation> {
    if nu < 3 || root_of_unity_order(p.q, nu, tol) != Some(nu) {
        return Err(CopError::NotTorsion { nu, detail: "q is not a primitive root of this order".into() });
    }
    let table = askey_wilson_table(p, nu - 1, tol)?;
    let e_nu = p.e_nu(nu);
    if tol.is_zero(e_nu - 2.0, 2.0) || tol.is_zero(e_nu + 2.0, 2.0) {
        return Err(CopError::DoubleZeroLocus);
    }
    let r_nu = e_nu / 2.0 + (e_nu * e_nu / 4.0 - 1.0).sqrt();
    let r = (r_nu.ln() / nu as f64).exp();
    let q = p.q;
    let root = p.sqrt_ab();
    let ts: Vec<Scalar> = (0..nu as i64).map(|s| r * powi(q, s)).collect();
    let nodes: Vec<Scalar> = ts.iter().map(|&t| p.big_c + root * (t + t.inv())).collect();
    let lead = root.powu(nu as u32 - 1) * nu as f64 * (r_nu - r_nu.inv());
    let derivatives: Vec<Scalar> = ts.iter().map(|&t| lead / (t - t.inv())).collect();

    // Ratio recursion, multiplied through by a b c d so that no parameter is inverted:
    // lambda_{s+1}/lambda_s = q (1 - r^2 q^{2s+2}) / (1 - r^2 q^{2s}) * prod (1 - e r q^s) / prod (e - r q^{s+1}).
    let ps = p.params();
    let mut weights_ratio = vec![one()];
    for s in 0..nu as i64 - 1 {
        let rs = r * powi(q, s);
        let rs1 = r * powi(q, s + 1);
        let num: Scalar = ps.iter().map(|&e| one() - e * rs).product();
        let den: Scalar = ps.iter().map(|&e| e - rs1).product();
        let ratio = q * (one() - rs1 * rs1) / (one() - rs * rs) * num / den;
        let last = *weights_ratio.last().unwrap_or(&one());
        weights_ratio.push(last * ratio);
    }
    let total: Scalar = weights_ratio.iter().sum();
    let weights_ratio = weights_ratio.iter().map(|w| w * table.h[0] / total).collect();

    let polys = generate_ops(&table, nu)?;
    let h_last = table.h[nu - 1];
    let weights_christoffel = nodes
        .iter()
        .zip(&derivatives)
        .map(|(&x, &dp)| h_last / (polys[nu - 1].eval(x) * dp))
        .collect();
    Ok(AskeyWilsonTruncation {
        nu,
        e_nu,
        sqrt_ab: root,
        r,
        nodes,
        derivatives,
        weights_ratio,
        weights_christoffel,
        c_nu: table.c[nu - 1],
        table,
    })
}

/// Complementary Bannai-Ito parameters `(alpha, beta, gamma, delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CbiParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
}

impl CbiParams {
    /// `g = alpha + beta - gamma - delta`.
    pub fn g(&self) -> Scalar {
        self.alpha + self.beta - self.gamma - self.delta
    }

    fn nonzero(v: Scalar, index: usize, tol: &Tolerance) -> Result<Scalar> {
        if tol.is_zero(v, 1.0) {
            Err(CopError::DenominatorZero { index })
        } else {
            Ok(v)
        }
    }

    /// `a_n = (n+g+1)(n+alpha+beta+1)(n+beta-gamma+1/2)(n+beta-delta+1/2) / ((2n+g+1)(2n+g+2))`.
    pub fn a_n(&self, n: usize, tol: &Tolerance) -> Result<Scalar> {
        let nf = n as f64;
        let g = self.g();
        let den = Self::nonzero((g + 2.0 * nf + 1.0) * (g + 2.0 * nf + 2.0), n, tol)?;
        Ok((g + nf + 1.0) * (self.alpha + self.beta + nf + 1.0) * (self.beta - self.gamma + nf + 0.5) * (self.beta - self.delta + nf + 0.5) / den)
    }

    /// `c_n = -n(n-gamma-delta)(n+alpha-gamma+1/2)(n+alpha-delta+1/2) / ((2n+g)(2n+g+1))`, with `c_0 = 0`.
    pub fn c_n(&self, n: usize, tol: &Tolerance) -> Result<Scalar> {
        if n == 0 {
            return Ok(Scalar::new(0.0, 0.0));
        }
        let nf = n as f64;
        let g = self.g();
        let den = Self::nonzero((g + 2.0 * nf) * (g + 2.0 * nf + 1.0), n, tol)?;
        Ok(-(self.gamma + self.delta - nf) * -nf * (self.alpha - self.gamma + nf + 0.5) * (self.alpha - self.delta + nf + 0.5) / den)
    }
}

/// Base table, reconstruction at `tau = beta`, and the interlaced recurrence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CbiConstruction {
    /// `a_0..a_N`.
    pub a: Vec<Scalar>,
    /// `c_0..c_N`.
    pub c: Vec<Scalar>,
    /// `B_n = beta^2 - a_n + c_n`, `C_n = -a_{n-1} c_n`.
    pub base: RecurrenceTable,
    pub build: AlternatingBuild,
    /// `B_n = (-1)^n beta`, `C_n = tau_n` with `tau_{2m} = c_m`, `tau_{2m+1} = -a_m`.
    pub interlaced: RecurrenceTable,
}

/// Base recurrence with `R_0..R_{N+1}`, the rebuilt `P_0..P_{2N+2}` and the
/// interlaced table.
pub fn cbi_base_and_interlaced(p: &CbiParams, n: usize, tol: &Tolerance) -> Result<CbiConstruction> {
    let a: Vec<Scalar> = (0..=n).map(|k| p.a_n(k, tol)).collect::<Result<_>>()?;
    let c: Vec<Scalar> = (0..=n).map(|k| p.c_n(k, tol)).collect::<Result<_>>()?;
    let beta2 = p.beta * p.beta;
    let base_b = (0..=n).map(|k| beta2 - a[k] + c[k]).collect();
    let base_c = (1..=n).map(|k| -a[k - 1] * c[k]).collect();
    let base = RecurrenceTable::from_coefficients(base_b, base_c, one());
    let build = build_alternating_ops(&generate_ops(&base, n + 1)?, p.beta, tol)?;
    let inter_b = (0..2 * n + 2).map(|k| if k % 2 == 0 { p.beta } else { -p.beta }).collect();
    let inter_c = (1..2 * n + 2).map(|k| if k % 2 == 0 { c[k / 2] } else { -a[k / 2] }).collect();
    let interlaced = RecurrenceTable::from_coefficients(inter_b, inter_c, one());
    Ok(CbiConstruction { a, c, base, build, interlaced })
}

/// Dual (-1)-Hahn parameters; `n` must be even.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualHahnParams {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
}

/// Split of the shifted even-`N` family into its quadratic parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualHahnSplit {
    /// `tau = 2N + 2 - alpha - beta`.
    pub tau: f64,
    /// `u_0..u_N`.
    pub u: Vec<f64>,
    /// `b_0..b_{N-1}`.
    pub b: Vec<f64>,
    /// `B_n = (-1)^n tau`, `C_n = u_n`.
    pub shifted: RecurrenceTable,
    /// `R^_0..R^_N`.
    pub shifted_polys: Vec<Poly>,
    /// `P_0..P_M` with `R^_{2n}(t) = P_n(t^2)`.
    pub even: Vec<Poly>,
    /// `Q_0..Q_{M-1}` with `R^_{2n+1}(t) = (t - tau) Q_n(t^2)`.
    pub odd: Vec<Poly>,
    /// `(P_{n+1} + u_{2n+1} P_n) / (x - tau^2)`, `n = 0..M-1`.
    pub christoffel: Vec<Poly>,
    /// Relative remainders of those divisions.
    pub christoffel_remainders: Vec<f64>,
    /// Largest odd coefficient of `R^_{2n}` and even coefficient of `R^_{2n+1} / (t - tau)`.
    pub parity_defect: f64,
}

/// Shifted recurrence and quadratic split of the even-`N` dual (-1)-Hahn family.
pub fn dual_m1_hahn_even(p: &DualHahnParams) -> Result<DualHahnSplit> {
    let big_n = p.n;
    if big_n % 2 == 1 {
        return Err(CopError::OddN { n: big_n });
    }
    if big_n == 0 {
        return Err(CopError::InvalidInput { detail: "N must be positive".into() });
    }
    let nf = big_n as f64;
    let (alpha, beta) = (p.alpha, p.beta);
    let u: Vec<f64> = (0..=big_n)
        .map(|k| {
            let kf = k as f64;
            if k % 2 == 0 {
                4.0 * kf * (alpha - kf)
            } else {
                4.0 * (nf - kf + 1.0) * (kf + beta - nf - 1.0)
            }
        })
        .collect();
    let b: Vec<f64> = (0..big_n).map(|k| if k % 2 == 0 { 2.0 * nf + 1.0 - alpha - beta } else { -2.0 * nf - 3.0 + alpha + beta }).collect();
    let tau = 2.0 * nf + 2.0 - alpha - beta;
    let shifted = RecurrenceTable::from_coefficients(
        (0..big_n).map(|k| Scalar::new(b[k] + 1.0, 0.0)).collect(),
        (1..big_n).map(|k| Scalar::new(u[k], 0.0)).collect(),
        one(),
    );
    let shifted_polys = generate_ops(&shifted, big_n)?;
    let tau_c = Scalar::new(tau, 0.0);
    let mut parity_defect: f64 = 0.0;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (k, r) in shifted_polys.iter().enumerate() {
        if k % 2 == 0 {
            let (e, o) = r.even_odd();
            parity_defect = parity_defect.max(o.max_abs_coeff());
            even.push(e);
        } else {
            let (quot, rem) = r.divrem(&Poly::linear_factor(tau_c))?;
            let (e, o) = quot.even_odd();
            parity_defect = parity_defect.max(rem.max_abs_coeff()).max(o.max_abs_coeff());
            odd.push(e);
        }
    }
    let kernel = Poly::linear_factor(Scalar::new(tau * tau, 0.0));
    let mut christoffel = Vec::new();
    let mut christoffel_remainders = Vec::new();
    for n in 0..big_n / 2 {
        let numer = &even[n + 1] + &even[n].scale(Scalar::new(u[2 * n + 1], 0.0));
        let (quot, rem) = numer.divrem(&kernel)?;
        christoffel_remainders.push(rem.max_abs_coeff() / numer.max_abs_coeff().max(1.0));
        christoffel.push(quot);
    }
    Ok(DualHahnSplit { tau, u, b, shifted, shifted_polys, even, odd, christoffel, christoffel_remainders, parity_defect })
}

fn check_pole(value: Scalar, what: &str, tol: &Tolerance) -> Result<()> {
    let neg = -value;
    if neg.re >= 0.5 && tol.is_zero(neg - neg.re.round(), 1.0) {
        return Err(CopError::ParameterPole { detail: format!("{what} is a negative integer") });
    }
    Ok(())
}

/// Monic shifted Jacobi `R_0..R_count`:
/// `R_n(t) = (-1)^n (alpha+1)_n / (n+alpha+beta+1)_n 2F1(-n, n+alpha+beta+1; alpha+1; t)`.
pub fn jacobi_shifted(alpha: Scalar, beta: Scalar, count: usize, tol: &Tolerance) -> Result<Vec<Poly>> {
    check_pole(alpha, "alpha", tol)?;
    check_pole(beta, "beta", tol)?;
    check_pole(alpha + beta + 1.0, "alpha + beta + 1", tol)?;
    (0..=count).map(|n| jacobi_term(alpha, beta, n, 0, tol)).collect()
}

fn jacobi_term(alpha: Scalar, beta: Scalar, m: usize, extra: usize, tol: &Tolerance) -> Result<Poly> {
    let top = alpha + beta + 1.0 + (m + extra) as f64;
    let series = terminating_hypergeometric(&[Scalar::new(-(m as f64), 0.0), top], &[alpha + 1.0], m, tol)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(series.scale(pochhammer(alpha + 1.0, m) / pochhammer(top, m) * sign))
}

/// Monic Laguerre `R_0..R_count`: `R_n(t) = (-1)^n (alpha+1)_n 1F1(-n; alpha+1; t)`.
pub fn laguerre(alpha: Scalar, count: usize, tol: &Tolerance) -> Result<Vec<Poly>> {
    check_pole(alpha, "alpha", tol)?;
    (0..=count).map(|n| laguerre_term(alpha + 1.0, n, tol)).collect()
}

fn laguerre_term(lower: Scalar, m: usize, tol: &Tolerance) -> Result<Poly> {
    let series = terminating_hypergeometric(&[Scalar::new(-(m as f64), 0.0)], &[lower], m, tol)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(series.scale(pochhammer(lower, m) * sign))
}

/// Closed form of the alternating Jacobi sequence:
/// `P_n(x) = (-1)^m (x-1)^e (alpha+1)_m / (m+alpha+beta+1+e)_m 2F1(-m, m+alpha+beta+1+e; alpha+1; x^2)`
/// with `m = floor(n/2)`, `e = n mod 2`.
pub fn jacobi_alternating_closed(alpha: Scalar, beta: Scalar, n: usize, tol: &Tolerance) -> Result<Poly> {
    let (m, e) = (n / 2, n % 2);
    let body = jacobi_term(alpha, beta, m, e, tol)?.of_square();
    Ok(if e == 1 { &Poly::linear_factor(one()) * &body } else { body })
}

/// Closed form of the alternating Hermite sequence:
/// `P_n(x) = (-1)^m x^e (1/2+e)_m 1F1(-m; 1/2+e; x^2)`.
pub fn hermite_alternating_closed(n: usize, tol: &Tolerance) -> Result<Poly> {
    let (m, e) = (n / 2, n % 2);
    let body = laguerre_term(Scalar::new(0.5 + e as f64, 0.0), m, tol)?.of_square();
    Ok(if e == 1 { &Poly::x() * &body } else { body })
}

/// Monic Hermite recurrence `B_n = 0`, `C_n = n/2` for `n < count`.
pub fn hermite_table(count: usize) -> RecurrenceTable {
    RecurrenceTable::from_coefficients(
        vec![Scalar::new(0.0, 0.0); count],
        (1..count).map(|n| Scalar::new(n as f64 / 2.0, 0.0)).collect(),
        one(),
    )
}

/// Recover `B_n`, `C_n` from a monic sequence `R_0..R_K` (`B_0..B_{K-1}`, `C_1..C_{K-1}`).
pub fn recurrence_from_monic(polys: &[Poly]) -> Result<RecurrenceTable> {
    if polys.len() < 2 {
        return Err(CopError::InsufficientTable { needed: 2, available: polys.len() });
    }
    let mut b = Vec::new();
    let mut c = Vec::new();
    for n in 0..polys.len() - 1 {
        let bn = if n == 0 { -polys[1].coeff(0) } else { polys[n].coeff(n - 1) - polys[n + 1].coeff(n) };
        b.push(bn);
        if n > 0 {
            let rest = &(&(&Poly::x() * &polys[n]) - &polys[n].scale(bn)) - &polys[n + 1];
            c.push(rest.coeff(n - 1));
        }
    }
    Ok(RecurrenceTable::from_coefficients(b, c, one()))
}

/// A named family and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    AskeyWilson(AskeyWilsonParams),
    Cbi(CbiParams),
    DualM1HahnEven(DualHahnParams),
    JacobiShifted { alpha: Scalar, beta: Scalar },
    Laguerre { alpha: Scalar },
}
