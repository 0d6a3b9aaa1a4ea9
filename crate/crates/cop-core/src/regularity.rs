//! Regularity certificates and recurrence coefficients of classical functionals.
//!
//! Given `D(phi u) = S(psi u)` with `deg phi <= 2`, `deg psi <= 1`, the
//! functional `u` is regular exactly when a list of scalars `d_j` and the
//! values of transformed polynomials `phi^[n]` at critical points are all
//! nonzero. In that case the monic orthogonal sequence obeys
//! `P_{n+1} = (x - B_n) P_n - C_n P_{n-1}` with explicit `B_n`, `C_n`.
//!
//! Provides:
//! - [`QExpTheorem`] / [`QuadraticTheorem`]: the scalar sequences and transformed pairs
//! - [`qexp_coefficients`], [`quadratic_coefficients`], [`torsion_coefficients`]
//! - [`generate_ops`], [`christoffel_quadrature`]
//! - [`q_to_1_degeneration`], [`compatibility_qexp`], [`compatibility_quadratic`]

use serde::{Deserialize, Serialize};

use crate::error::{Certificate, CopError, Result};
use crate::functionals::moments_from_recurrence;
use crate::maps::{QExpParams, QuadraticParams};
use crate::poly::Poly;
use crate::scalar::{powi, Scalar, Tolerance};

/// The pair `(phi, psi)` of a structural equation `D(phi u) = S(psi u)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalData {
    pub phi: Poly,
    pub psi: Poly,
}

impl ClassicalData {
    /// Check `deg phi <= 2`, `deg psi <= 1`, not both zero.
    pub fn new(phi: Poly, psi: Poly) -> Result<Self> {
        if phi.degree().is_some_and(|d| d > 2) || psi.degree().is_some_and(|d| d > 1) {
            return Err(CopError::InvalidInput { detail: "need deg phi <= 2 and deg psi <= 1".into() });
        }
        if phi.is_zero() && psi.is_zero() {
            return Err(CopError::InvalidInput { detail: "phi and psi are both zero".into() });
        }
        Ok(ClassicalData { phi, psi })
    }

    /// Magnitude context for the nonvanishing tests: `max(|phi_i|, |psi_i|, 1)`.
    pub fn scale(&self) -> f64 {
        self.phi.max_abs_coeff().max(self.psi.max_abs_coeff()).max(1.0)
    }
}

/// Which index set the theorem is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexSpec {
    /// Initial segment of the infinite case: `B_0..B_{count-1}`, `C_1..C_count`.
    Infinite { count: usize },
    /// Finite case `I = {0, ..., N+1}`: `B_0..B_N`, `C_1..C_{N+1}`, the last
    /// one being the terminal norm coefficient.
    Finite { n: usize },
}

impl IndexSpec {
    /// Largest `n` in `K_I`.
    fn last(self) -> Result<usize> {
        match self {
            IndexSpec::Infinite { count: 0 } => Err(CopError::InvalidInput { detail: "count must be at least 1".into() }),
            IndexSpec::Infinite { count } => Ok(count - 1),
            IndexSpec::Finite { n } => Ok(n),
        }
    }

    fn terminal(self) -> bool {
        matches!(self, IndexSpec::Finite { .. })
    }
}

/// Values behind the regularity verdict.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `d_j` for `j` in `J_I`.
    pub d: Vec<Scalar>,
    /// `phi^[n]` at its critical point, for `n` in `K_I`.
    pub phi_crit: Vec<Scalar>,
    /// Values that passed but lie within ten times the zero band.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Monic recurrence data `P_{n+1} = (x - B_n) P_n - C_n P_{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    /// `B_0, B_1, ...`.
    #[serde(rename = "B")]
    pub b: Vec<Scalar>,
    /// `C_1, C_2, ...` (entry `i` holds `C_{i+1}`).
    #[serde(rename = "C")]
    pub c: Vec<Scalar>,
    /// Norms `h_0, h_1, ...` with `h_n = C_n h_{n-1}`.
    pub h: Vec<Scalar>,
    #[serde(default)]
    pub diagnostics: Diagnostics,
    /// True when the last `C` is a terminal norm coefficient.
    #[serde(default)]
    pub terminal: bool,
}

impl RecurrenceTable {
    /// Table from raw coefficients, with norms accumulated from `h0`.
    pub fn from_coefficients(b: Vec<Scalar>, c: Vec<Scalar>, h0: Scalar) -> Self {
        let mut h = vec![h0];
        for &cn in &c {
            let last = *h.last().unwrap_or(&h0);
            h.push(last * cn);
        }
        RecurrenceTable { b, c, h, diagnostics: Diagnostics::default(), terminal: false }
    }

    /// `C_n` for `n >= 1`.
    pub fn c_at(&self, n: usize) -> Option<Scalar> {
        n.checked_sub(1).and_then(|i| self.c.get(i).copied())
    }

    /// Replace `h_0` and recompute the norms.
    pub fn with_h0(mut self, h0: Scalar) -> Self {
        let fresh = RecurrenceTable::from_coefficients(self.b.clone(), self.c.clone(), h0);
        self.h = fresh.h;
        self
    }

    /// Keep `B_0..B_n`, `C_1..C_n` (enough for `P_0..P_{n+1}` and moments to `2n+1`).
    pub fn truncated(&self, n: usize) -> Result<RecurrenceTable> {
        if self.b.len() < n + 1 || self.c.len() < n {
            return Err(CopError::InsufficientTable { needed: n + 1, available: self.b.len() });
        }
        let mut t = RecurrenceTable::from_coefficients(self.b[..=n].to_vec(), self.c[..n].to_vec(), self.h[0]);
        t.diagnostics = self.diagnostics.clone();
        Ok(t)
    }
}

/// Gaussian rule from the zeros of a truncating polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<Scalar>,
    pub weights: Vec<Scalar>,
}

fn check_nonzero(v: Scalar, scale: f64, which: Certificate, index: usize, tol: &Tolerance, diag: &mut Diagnostics) -> Result<()> {
    if tol.is_zero(v, scale) {
        return Err(CopError::RegularityViolation { which, index });
    }
    if tol.is_near_zero(v, scale) {
        diag.warnings.push(format!("{} at index {index} is near zero ({v})", which.tag()));
    }
    Ok(())
}

/// Scalar sequences of the q-exponential regularity theorem.
#[derive(Clone, Debug)]
pub struct QExpTheorem {
    pub data: ClassicalData,
    pub params: QExpParams,
}

impl QExpTheorem {
    pub fn new(data: ClassicalData, params: QExpParams) -> Self {
        QExpTheorem { data, params }
    }

    /// `gamma_n = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`.
    pub fn gamma(&self, n: i64) -> Scalar {
        let qh = self.params.q_half;
        (powi(qh, n) - powi(qh, -n)) / (qh - qh.inv())
    }

    /// `alpha_n = (q^{n/2} + q^{-n/2}) / 2`.
    pub fn alpha(&self, n: i64) -> Scalar {
        let qh = self.params.q_half;
        (powi(qh, n) + powi(qh, -n)) / 2.0
    }

    fn phi2(&self) -> Scalar {
        self.data.phi.coeff(2)
    }

    fn psi1(&self) -> Scalar {
        self.data.psi.coeff(1)
    }

    /// `d_n = phi_2 gamma_n + psi_1 alpha_n`.
    pub fn d(&self, n: i64) -> Scalar {
        self.phi2() * self.gamma(n) + self.psi1() * self.alpha(n)
    }

    /// `e_n = (2 phi_2 c + phi_1) gamma_n + (psi_1 c + psi_0) alpha_n`.
    pub fn e(&self, n: i64) -> Scalar {
        let c = self.params.c;
        let phi = &self.data.phi;
        let psi = &self.data.psi;
        (phi.coeff(2) * c * 2.0 + phi.coeff(1)) * self.gamma(n) + psi.eval(c) * self.alpha(n)
    }

    /// `phi^[n]` evaluated at `x = c + t`.
    pub fn phi_shifted_at(&self, n: i64, t: Scalar) -> Scalar {
        let (quad, lin, cst) = self.phi_shifted_parts(n);
        let ab2 = self.params.a * self.params.b * 2.0;
        quad * (t * t - ab2) + lin * t + cst
    }

    fn phi_shifted_parts(&self, n: i64) -> (Scalar, Scalar, Scalar) {
        let c = self.params.c;
        let a1 = self.alpha(1);
        let phi = &self.data.phi;
        let quad = self.psi1() * (a1 * a1 - 1.0) * self.gamma(2 * n) + self.phi2() * self.alpha(2 * n);
        let lin = phi.derivative().eval(c) * self.alpha(n) + self.data.psi.eval(c) * (a1 * a1 - 1.0) * self.gamma(n);
        let cst = phi.eval(c) + self.phi2() * self.params.a * self.params.b * 2.0;
        (quad, lin, cst)
    }

    /// `phi^[n]` as a polynomial in `x`.
    pub fn phi_shifted(&self, n: i64) -> Poly {
        let (quad, lin, cst) = self.phi_shifted_parts(n);
        let ab2 = self.params.a * self.params.b * 2.0;
        let in_t = Poly::new(vec![cst - quad * ab2, lin, quad]);
        in_t.compose(&Poly::linear_factor(self.params.c))
    }

    /// `psi^[n] = d_{2n} (x - c) + e_n`.
    pub fn psi_shifted(&self, n: i64) -> Poly {
        Poly::new(vec![self.e(n) - self.d(2 * n) * self.params.c, self.d(2 * n)])
    }

    /// Critical point `c - e_n / d_{2n}`, returned as the offset `-e_n / d_{2n}` from `c`.
    pub fn crit_offset(&self, n: i64) -> Scalar {
        -self.e(n) / self.d(2 * n)
    }

    /// Eigenvalue `lambda_n = gamma_n d_{n-1}` of the associated operator.
    pub fn eigenvalue(&self, n: i64) -> Scalar {
        self.gamma(n) * self.d(n - 1)
    }

    fn table(&self, spec: IndexSpec, tol: &Tolerance) -> Result<RecurrenceTable> {
        let last = spec.last()?;
        let scale = self.data.scale();
        let mut diag = Diagnostics::default();
        for j in 0..=(2 * last + 1) {
            let dj = self.d(j as i64);
            check_nonzero(dj, scale, Certificate::D, j, tol, &mut diag)?;
            diag.d.push(dj);
        }
        for n in 0..=last {
            let v = self.phi_shifted_at(n as i64, self.crit_offset(n as i64));
            check_nonzero(v, scale, Certificate::PhiCrit, n, tol, &mut diag)?;
            diag.phi_crit.push(v);
        }
        let c = self.params.c;
        let mut b = Vec::with_capacity(last + 1);
        let mut cs = Vec::with_capacity(last + 1);
        for n in 0..=last {
            let ni = n as i64;
            let bn = if n == 0 {
                c - self.gamma(1) * self.e(0) / self.d(0)
            } else {
                c + self.gamma(ni) * self.e(ni - 1) / self.d(2 * ni - 2) - self.gamma(ni + 1) * self.e(ni) / self.d(2 * ni)
            };
            let cn = if n == 0 {
                -self.gamma(1) / self.d(1) * diag.phi_crit[0]
            } else {
                -self.gamma(ni + 1) * self.d(ni - 1) / (self.d(2 * ni - 1) * self.d(2 * ni + 1)) * diag.phi_crit[n]
            };
            b.push(bn);
            cs.push(cn);
        }
        let mut t = RecurrenceTable::from_coefficients(b, cs, Scalar::new(1.0, 0.0));
        t.diagnostics = diag;
        t.terminal = spec.terminal();
        Ok(t)
    }
}

/// Scalar sequences of the quadratic regularity theorem.
#[derive(Clone, Debug)]
pub struct QuadraticTheorem {
    pub data: ClassicalData,
    pub params: QuadraticParams,
}

impl QuadraticTheorem {
    pub fn new(data: ClassicalData, params: QuadraticParams) -> Self {
        QuadraticTheorem { data, params }
    }

    /// `d_n = phi_2 n + psi_1`.
    pub fn d(&self, n: i64) -> Scalar {
        self.data.phi.coeff(2) * n as f64 + self.data.psi.coeff(1)
    }

    /// `e_n = phi_1 n + psi_0 + a psi_1 n^2 / 2`.
    pub fn e(&self, n: i64) -> Scalar {
        let nf = n as f64;
        self.data.phi.coeff(1) * nf + self.data.psi.coeff(0) + self.params.a * self.data.psi.coeff(1) * (nf * nf / 2.0)
    }

    /// `phi^[n](x) = phi_2 x^2 + (phi_1 + 3 a n d_n / 2) x + phi(a n^2/4)
    ///  + a n psi(a n^2/4) / 2 + n (b^2 - 4ac) d_n / 4`.
    pub fn phi_shifted(&self, n: i64) -> Poly {
        let nf = n as f64;
        let a = self.params.a;
        let dn = self.d(n);
        let at = a * (nf * nf / 4.0);
        let cst = self.data.phi.eval(at) + a * nf / 2.0 * self.data.psi.eval(at) + self.params.discriminant() * dn * (nf / 4.0);
        Poly::new(vec![cst, self.data.phi.coeff(1) + a * dn * (1.5 * nf), self.data.phi.coeff(2)])
    }

    /// `psi^[n] = d_{2n} (x + a n^2 / 4) + e_n`.
    pub fn psi_shifted(&self, n: i64) -> Poly {
        let nf = n as f64;
        let d2n = self.d(2 * n);
        Poly::new(vec![d2n * self.params.a * (nf * nf / 4.0) + self.e(n), d2n])
    }

    /// Critical point `-a n^2 / 4 - e_n / d_{2n}`.
    pub fn crit(&self, n: i64) -> Scalar {
        let nf = n as f64;
        -self.params.a * (nf * nf / 4.0) - self.e(n) / self.d(2 * n)
    }

    /// Eigenvalue `lambda_n = n d_{n-1}` of the associated operator.
    pub fn eigenvalue(&self, n: i64) -> Scalar {
        self.d(n - 1) * n as f64
    }

    fn table(&self, spec: IndexSpec, tol: &Tolerance) -> Result<RecurrenceTable> {
        let last = spec.last()?;
        let scale = self.data.scale();
        let mut diag = Diagnostics::default();
        for j in 0..=(2 * last + 1) {
            let dj = self.d(j as i64);
            check_nonzero(dj, scale, Certificate::D, j, tol, &mut diag)?;
            diag.d.push(dj);
        }
        for n in 0..=last {
            let v = self.phi_shifted(n as i64).eval(self.crit(n as i64));
            check_nonzero(v, scale, Certificate::PhiCrit, n, tol, &mut diag)?;
            diag.phi_crit.push(v);
        }
        let a = self.params.a;
        let mut b = Vec::with_capacity(last + 1);
        let mut cs = Vec::with_capacity(last + 1);
        for n in 0..=last {
            let ni = n as i64;
            let nf = n as f64;
            let bn = if n == 0 {
                -self.e(0) / self.d(0)
            } else {
                self.e(ni - 1) * nf / self.d(2 * ni - 2) - self.e(ni) * (nf + 1.0) / self.d(2 * ni) - a * (nf * (nf - 1.0) / 2.0)
            };
            let cn = if n == 0 {
                -diag.phi_crit[0] / self.d(1)
            } else {
                -self.d(ni - 1) * (nf + 1.0) / (self.d(2 * ni - 1) * self.d(2 * ni + 1)) * diag.phi_crit[n]
            };
            b.push(bn);
            cs.push(cn);
        }
        let mut t = RecurrenceTable::from_coefficients(b, cs, Scalar::new(1.0, 0.0));
        t.diagnostics = diag;
        t.terminal = spec.terminal();
        Ok(t)
    }
}

/// Smallest `m <= max_order` with `q^m = 1` within tolerance.
pub fn root_of_unity_order(q: Scalar, max_order: usize, tol: &Tolerance) -> Option<usize> {
    if !tol.is_zero(Scalar::new(q.norm() - 1.0, 0.0), 1.0) {
        return None;
    }
    (1..=max_order).find(|&m| tol.is_zero(q.powu(m as u32) - 1.0, 1.0))
}

/// Recurrence table of the q-exponential theorem (`q` not a root of unity
/// of any order the construction touches).
pub fn qexp_coefficients(cd: &ClassicalData, p: QExpParams, spec: IndexSpec, tol: &Tolerance) -> Result<RecurrenceTable> {
    let last = spec.last()?;
    if let Some(order) = root_of_unity_order(p.q(), 2 * last + 2, tol) {
        return Err(CopError::RootOfUnity { order });
    }
    QExpTheorem::new(cd.clone(), p).table(spec, tol)
}

/// Recurrence table of the quadratic theorem.
pub fn quadratic_coefficients(cd: &ClassicalData, p: QuadraticParams, spec: IndexSpec, tol: &Tolerance) -> Result<RecurrenceTable> {
    QuadraticTheorem::new(cd.clone(), p).table(spec, tol)
}

/// Finite table when `q` is a primitive `nu`-th root of unity, `N + 1 < nu`.
pub fn torsion_coefficients(cd: &ClassicalData, p: QExpParams, n: usize, nu: usize, tol: &Tolerance) -> Result<RecurrenceTable> {
    if nu < 3 {
        return Err(CopError::NotTorsion { nu, detail: "order must be at least 3".into() });
    }
    let q = p.q();
    match root_of_unity_order(q, nu, tol) {
        Some(order) if order == nu => {}
        Some(order) => return Err(CopError::NotTorsion { nu, detail: format!("q has order {order}") }),
        None => return Err(CopError::NotTorsion { nu, detail: "q^nu != 1".into() }),
    }
    if n + 1 >= nu {
        return Err(CopError::TorsionOverflow { n, nu });
    }
    let theorem = QExpTheorem::new(cd.clone(), p);
    for m in 1..=n + 1 {
        if tol.is_zero(theorem.gamma(m as i64), 1.0) {
            return Err(CopError::TorsionNormalization { index: m });
        }
    }
    if tol.is_zero(theorem.alpha(1), 1.0) {
        return Err(CopError::GenericityViolation { detail: "alpha = 0".into() });
    }
    theorem.table(IndexSpec::Finite { n }, tol)
}

/// Monic `P_0 ..= P_count` from the recurrence (`P_{-1} = 0`).
pub fn generate_ops(table: &RecurrenceTable, count: usize) -> Result<Vec<Poly>> {
    if table.b.len() < count || table.c.len() + 1 < count {
        return Err(CopError::InsufficientTable { needed: count, available: table.b.len().min(table.c.len() + 1) });
    }
    let mut out = vec![Poly::one()];
    let mut prev = Poly::zero();
    for n in 0..count {
        let cur = out[n].clone();
        let mut next = &(&Poly::x() * &cur) - &cur.scale(table.b[n]);
        if n > 0 {
            next = &next - &prev.scale(table.c[n - 1]);
        }
        prev = cur;
        out.push(next);
    }
    Ok(out)
}

/// Gaussian rule on the zeros of `P_{N+1}` with Christoffel numbers
/// `lambda_s = h_N / (P_N(x_s) P'_{N+1}(x_s))`; exact through degree `2N + 1`.
pub fn christoffel_quadrature(table: &RecurrenceTable, n: usize, tol: &Tolerance) -> Result<QuadratureRule> {
    let trunc = table.truncated(n)?;
    let polys = generate_ops(&trunc, n + 1)?;
    let top = &polys[n + 1];
    let nodes = top.roots()?;
    let spread = nodes.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..nodes.len() {
        for j in 0..i {
            if (nodes[i] - nodes[j]).norm() <= 1e-7 * spread {
                return Err(CopError::MultipleZero { index: i });
            }
        }
    }
    let slope = top.derivative();
    let hn = trunc.h[n];
    let weights: Vec<Scalar> = nodes.iter().map(|&x| hn / (polys[n].eval(x) * slope.eval(x))).collect();
    let u = moments_from_recurrence(&trunc, trunc.h[0])?;
    let mut worst: f64 = 0.0;
    for (k, &mu) in u.moments.iter().enumerate() {
        let sum: Scalar = nodes.iter().zip(&weights).map(|(&x, &w)| w * x.powu(k as u32)).sum();
        let mag: f64 = nodes.iter().zip(&weights).map(|(x, w)| w.norm() * x.norm().powi(k as i32)).sum::<f64>().max(mu.norm());
        worst = worst.max((sum - mu).norm() / mag.max(tol.abs_eps));
    }
    if worst > 1e-6 {
        return Err(CopError::QuadratureInexact { residual: worst });
    }
    Ok(QuadratureRule { nodes, weights })
}

/// q-exponential surrogate of a quadratic progression:
/// `q = e^eps`, `a_eps = a/eps^2 + b/(2 eps)`, `b_eps = a/eps^2 - b/(2 eps)`,
/// `c_eps = c - 2a/eps^2`, with `q^{1/2} = e^{eps/2}`.
pub fn degeneration_params(p: QuadraticParams, eps: Scalar) -> QExpParams {
    let e2 = eps * eps;
    QExpParams {
        q_half: (eps / 2.0).exp(),
        a: p.a / e2 + p.b / (eps * 2.0),
        b: p.a / e2 - p.b / (eps * 2.0),
        c: p.c - p.a * 2.0 / e2,
    }
}

/// q-exponential table of the surrogate built by [`degeneration_params`].
pub fn q_to_1_degeneration(cd: &ClassicalData, p: QuadraticParams, eps: Scalar, spec: IndexSpec, tol: &Tolerance) -> Result<RecurrenceTable> {
    QExpTheorem::new(cd.clone(), degeneration_params(p, eps)).table(spec, tol)
}

/// Outcome of comparing two progressions of one map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    /// Gap in the shared invariant (`ab` or `b^2 - 4ac`).
    pub invariant_gap: f64,
    /// Gap between the two `C_2` values.
    pub c2_gap: f64,
}

fn c2_gap(t1: Result<RecurrenceTable>, t2: Result<RecurrenceTable>) -> f64 {
    match (t1, t2) {
        (Ok(a), Ok(b)) => (a.c[1] - b.c[1]).norm(),
        _ => f64::NAN,
    }
}

/// Compare `a b` across two q-exponential progressions and cross-check `C_2`.
pub fn compatibility_qexp(cd: &ClassicalData, p1: QExpParams, p2: QExpParams, tol: &Tolerance) -> CompatibilityReport {
    let (i1, i2) = (p1.a * p1.b, p2.a * p2.b);
    let spec = IndexSpec::Infinite { count: 2 };
    let invariant_gap = (i1 - i2).norm();
    CompatibilityReport {
        compatible: tol.is_zero(i1 - i2, i1.norm().max(i2.norm())),
        invariant_gap,
        c2_gap: c2_gap(qexp_coefficients(cd, p1, spec, tol), qexp_coefficients(cd, p2, spec, tol)),
    }
}

/// Compare `b^2 - 4ac` across two quadratic progressions and cross-check `C_2`.
pub fn compatibility_quadratic(cd: &ClassicalData, p1: QuadraticParams, p2: QuadraticParams, tol: &Tolerance) -> CompatibilityReport {
    let (i1, i2) = (p1.discriminant(), p2.discriminant());
    let spec = IndexSpec::Infinite { count: 2 };
    CompatibilityReport {
        compatible: tol.is_zero(i1 - i2, i1.norm().max(i2.norm())),
        invariant_gap: (i1 - i2).norm(),
        c2_gap: c2_gap(quadratic_coefficients(cd, p1, spec, tol), quadratic_coefficients(cd, p2, spec, tol)),
    }
}
