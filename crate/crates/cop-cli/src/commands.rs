//! Input documents and the library calls behind each subcommand.

use cop_core::alternating::build_alternating_ops;
use cop_core::ds::{OperatorPair, DEFAULT_CACHE_DEGREE};
use cop_core::families::*;
use cop_core::functionals::moments_from_recurrence;
use cop_core::maps::{classify_samples, QExpParams, QuadraticParams};
use cop_core::nu::NuOperator;
use cop_core::regularity::*;
use cop_core::{CopError, Poly, Scalar, Tolerance};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::CliError;
use crate::output::Report;

type Outcome = Result<Report, CliError>;

/// A scalar written either as a bare real number or as `[re, im]`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarInput {
    Real(f64),
    Complex([f64; 2]),
}

impl From<ScalarInput> for Scalar {
    fn from(s: ScalarInput) -> Scalar {
        match s {
            ScalarInput::Real(x) => Scalar::new(x, 0.0),
            ScalarInput::Complex([re, im]) => Scalar::new(re, im),
        }
    }
}

fn one() -> ScalarInput {
    ScalarInput::Real(1.0)
}

fn zero() -> ScalarInput {
    ScalarInput::Real(0.0)
}

/// `classify`: four consecutive samples `X(s0 + k h)`, `k = -1..=2`.
#[derive(Debug, Deserialize)]
pub struct ClassifyInput {
    pub samples: Vec<ScalarInput>,
    #[serde(default = "one")]
    pub h: ScalarInput,
    #[serde(default = "zero")]
    pub key: ScalarInput,
}

pub fn classify(input: ClassifyInput, tol: &Tolerance) -> Outcome {
    let samples: Vec<Scalar> = input.samples.into_iter().map(Scalar::from).collect();
    let model = classify_samples(&samples, input.h.into(), input.key.into(), tol)?;
    Ok(Report::new(serde_json::to_value(model)?))
}

/// The lattice an operator pair lives on.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Lattice {
    QExponential { params: QExpParams },
    Quadratic { params: QuadraticParams },
    /// `q` a primitive `nu`-th root of unity, table `B_0..B_n`.
    Torsion { params: QExpParams, nu: usize },
    Alternating,
    Continuous,
}

impl Lattice {
    fn operators(&self) -> OperatorPair {
        match self {
            Lattice::QExponential { params } | Lattice::Torsion { params, .. } => OperatorPair::qexp(*params, DEFAULT_CACHE_DEGREE),
            Lattice::Quadratic { params } => OperatorPair::quadratic(*params, DEFAULT_CACHE_DEGREE),
            Lattice::Alternating => OperatorPair::alternating(DEFAULT_CACHE_DEGREE),
            Lattice::Continuous => OperatorPair::continuous(DEFAULT_CACHE_DEGREE),
        }
    }
}

fn default_index() -> IndexSpec {
    IndexSpec::Infinite { count: 10 }
}

/// `ops-generate` and `regularity-check`: a classical pair on a lattice.
#[derive(Debug, Deserialize)]
pub struct ClassicalInput {
    pub phi: Poly,
    pub psi: Poly,
    #[serde(flatten)]
    pub lattice: Lattice,
    #[serde(default = "default_index")]
    pub index: IndexSpec,
    #[serde(default = "one")]
    pub h0: ScalarInput,
}

fn engine_table(input: &ClassicalInput, tol: &Tolerance) -> Result<RecurrenceTable, CliError> {
    let cd = ClassicalData::new(input.phi.clone(), input.psi.clone())?;
    let table = match &input.lattice {
        Lattice::QExponential { params } => qexp_coefficients(&cd, *params, input.index, tol)?,
        Lattice::Quadratic { params } => quadratic_coefficients(&cd, *params, input.index, tol)?,
        Lattice::Torsion { params, nu } => {
            let n = match input.index {
                IndexSpec::Finite { n } => n,
                IndexSpec::Infinite { count } => count.saturating_sub(1),
            };
            torsion_coefficients(&cd, *params, n, *nu, tol)?
        }
        Lattice::Alternating | Lattice::Continuous => {
            return Err(CopError::RegimeUnsupported { regime: "alternating or continuous".into(), op: "regularity engine".into() }.into())
        }
    };
    Ok(table.with_h0(input.h0.into()))
}

pub fn regularity_check(input: ClassicalInput, tol: &Tolerance) -> Outcome {
    let table = engine_table(&input, tol)?;
    let json = json!({ "regular": true, "table": table });
    Ok(Report::with_table(json, table))
}

pub fn ops_generate(input: ClassicalInput, tol: &Tolerance) -> Outcome {
    let table = engine_table(&input, tol)?;
    let ops = generate_ops(&table, table.b.len())?;
    let l = NuOperator::new(input.phi.clone(), input.psi.clone(), input.lattice.operators());
    let eigenvalues = (0..ops.len()).map(|n| l.eigenvalue(n)).collect::<Result<Vec<_>, _>>()?;
    let mut json = serde_json::to_value(&input.lattice)?;
    json["phi"] = serde_json::to_value(&input.phi)?;
    json["psi"] = serde_json::to_value(&input.psi)?;
    json["table"] = serde_json::to_value(&table)?;
    json["ops"] = serde_json::to_value(&ops)?;
    json["eigenvalues"] = serde_json::to_value(&eigenvalues)?;
    Ok(Report::with_table(json, table))
}

/// `quadrature`: a table and the truncation level `n` (rule with `n + 1` nodes).
#[derive(Debug, Deserialize)]
pub struct QuadratureInput {
    pub table: RecurrenceTable,
    pub n: usize,
}

pub fn quadrature(input: QuadratureInput, tol: &Tolerance) -> Outcome {
    let rule = christoffel_quadrature(&input.table, input.n, tol)?;
    Ok(Report::new(serde_json::to_value(rule)?))
}

/// Base sequence for `alternating-build`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum BaseInput {
    Table { table: RecurrenceTable },
    Polys { polys: Vec<Poly> },
    Family(FamilySpec),
}

/// `alternating-build`: base sequence `R_0..R_count` and the point `tau`.
#[derive(Debug, Deserialize)]
pub struct AlternatingInput {
    pub base: BaseInput,
    pub tau: ScalarInput,
    #[serde(default = "default_base_count")]
    pub count: usize,
}

fn default_base_count() -> usize {
    4
}

pub fn alternating_build(input: AlternatingInput, tol: &Tolerance) -> Outcome {
    let base = match input.base {
        BaseInput::Table { table } => generate_ops(&table, input.count)?,
        BaseInput::Polys { polys } => polys,
        BaseInput::Family(FamilySpec::JacobiShifted { alpha, beta }) => jacobi_shifted(alpha, beta, input.count, tol)?,
        BaseInput::Family(FamilySpec::Laguerre { alpha }) => laguerre(alpha, input.count, tol)?,
        BaseInput::Family(_) => {
            return Err(CopError::InvalidInput { detail: "base family must be jacobi_shifted or laguerre".into() }.into())
        }
    };
    let build = build_alternating_ops(&base, input.tau.into(), tol)?;
    let table = recurrence_from_monic(&build.ops)?;
    let mut json = serde_json::to_value(&build)?;
    json["table"] = serde_json::to_value(&table)?;
    Ok(Report::with_table(json, table))
}

/// `nu-verify`: a table, the pair `(phi, psi)` and the lattice. Output of
/// `ops-generate` is accepted as is.
#[derive(Debug, Deserialize)]
pub struct NuInput {
    pub phi: Poly,
    pub psi: Poly,
    #[serde(flatten)]
    pub lattice: Lattice,
    pub table: RecurrenceTable,
    /// Largest degree in the symmetry check; defaults to the table length minus one.
    pub symmetry_degree: Option<usize>,
}

pub fn nu_verify(input: NuInput) -> Outcome {
    let l = NuOperator::new(input.phi, input.psi, input.lattice.operators());
    let entries = l.eigen_check(&input.table, input.table.b.len() + 1)?;
    let u = moments_from_recurrence(&input.table, input.table.h[0])?;
    let degree = input.symmetry_degree.unwrap_or(input.table.b.len().saturating_sub(1));
    let symmetry = l.formal_symmetry_residual(&u, degree)?;
    let lambda: Vec<Scalar> = entries.iter().map(|e| e.lambda).collect();
    let residuals: Vec<f64> = entries.iter().map(|e| e.residual).collect();
    Ok(Report::new(json!({ "lambda": lambda, "residuals": residuals, "symmetry_residual": symmetry })))
}

/// Options of the `family` subcommand.
pub struct FamilyOptions {
    pub nu: Option<usize>,
    pub truncate: bool,
    pub count: usize,
}

pub fn family(spec: FamilySpec, opts: &FamilyOptions, tol: &Tolerance) -> Outcome {
    match spec {
        FamilySpec::AskeyWilson(p) => match (opts.truncate, opts.nu) {
            (true, Some(nu)) => {
                let tr = askey_wilson_truncation(&p, nu, tol)?;
                let table = tr.table.clone();
                Ok(Report::with_table(serde_json::to_value(tr)?, table))
            }
            (true, None) => Err(CopError::InvalidInput { detail: "--truncate needs --nu".into() }.into()),
            (false, _) => {
                let table = askey_wilson_table(&p, opts.count.saturating_sub(1), tol)?;
                Ok(Report::with_table(serde_json::to_value(&table)?, table))
            }
        },
        FamilySpec::Cbi(p) => {
            let out = cbi_base_and_interlaced(&p, opts.count, tol)?;
            let table = out.interlaced.clone();
            Ok(Report::with_table(serde_json::to_value(out)?, table))
        }
        FamilySpec::DualM1HahnEven(p) => {
            let split = dual_m1_hahn_even(&p)?;
            let table = split.shifted.clone();
            Ok(Report::with_table(serde_json::to_value(split)?, table))
        }
        FamilySpec::JacobiShifted { alpha, beta } => monic_family(jacobi_shifted(alpha, beta, opts.count, tol)?),
        FamilySpec::Laguerre { alpha } => monic_family(laguerre(alpha, opts.count, tol)?),
    }
}

fn monic_family(ops: Vec<Poly>) -> Outcome {
    let table = recurrence_from_monic(&ops)?;
    Ok(Report::with_table(json!({ "ops": ops, "table": table }), table))
}

/// `degeneration`: quadratic data and the values of `eps` to compare.
#[derive(Debug, Deserialize)]
pub struct DegenerationInput {
    pub phi: Poly,
    pub psi: Poly,
    pub params: QuadraticParams,
    pub eps: Vec<f64>,
    #[serde(default = "default_degeneration_count")]
    pub count: usize,
}

fn default_degeneration_count() -> usize {
    9
}

pub fn degeneration(input: DegenerationInput, tol: &Tolerance) -> Outcome {
    let cd = ClassicalData::new(input.phi, input.psi)?;
    let spec = IndexSpec::Infinite { count: input.count };
    let target = quadratic_coefficients(&cd, input.params, spec, tol)?;
    let gap = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).map(|(x, y)| (x - y).norm() / x.norm().max(1.0)).fold(0.0, f64::max);
    let mut limits = Vec::with_capacity(input.eps.len());
    for &eps in &input.eps {
        let t = q_to_1_degeneration(&cd, input.params, Scalar::new(eps, 0.0), spec, tol)?;
        limits.push(json!({
            "eps": eps,
            "params": degeneration_params(input.params, Scalar::new(eps, 0.0)),
            "B_gap": gap(&target.b, &t.b),
            "C_gap": gap(&target.c, &t.c),
            "table": t,
        }));
    }
    let json = json!({ "quadratic": target, "limits": limits });
    Ok(Report::with_table(json, target))
}
