//! The nine acceptance criteria, each returning a one-line summary on
//! success and a reason on failure.

use std::f64::consts::PI;

use cop_core::alternating::{build_alternating_ops, j_tau_pullback};
use cop_core::ds::{OperatorPair, DEFAULT_CACHE_DEGREE};
use cop_core::families::*;
use cop_core::functionals::{moments_from_recurrence, MomentFunctional};
use cop_core::grids::{image_set, para_krawtchouk_support, para_krawtchouk_w, sets_equal, HalfStepSet};
use cop_core::maps::*;
use cop_core::nu::{alternating_nu_check, hahn_derived, NuOperator};
use cop_core::regularity::*;
use cop_core::{CopError, Poly, Scalar, Tolerance};
use rand::rngs::StdRng;
use rand::Rng;

use super::*;

pub type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn bounded_complex(r: &mut StdRng, radius: f64) -> Scalar {
    Scalar::from_polar(r.gen_range(0.2..radius), r.gen_range(0.0..2.0 * PI))
}

/// Random model of the requested regime on a single progression keyed at 0.
fn random_model(r: &mut StdRng, regime: Regime) -> MapModel {
    let h = re(1.0);
    let zero = re(0.0);
    match regime {
        Regime::Quadratic => MapModel::quadratic(h, zero, bounded_complex(r, 4.0), bounded_complex(r, 4.0), bounded_complex(r, 4.0)),
        Regime::Alternating => MapModel::alternating(h, zero, bounded_complex(r, 4.0), bounded_complex(r, 4.0)),
        _ => {
            let modulus = if r.gen_bool(0.5) { r.gen_range(0.3..0.9) } else { r.gen_range(1.1..3.0) };
            let q = Scalar::from_polar(modulus, r.gen_range(0.05..PI - 0.05) * if r.gen_bool(0.5) { 1.0 } else { -1.0 });
            MapModel::q_exponential(h, zero, q.sqrt(), bounded_complex(r, 4.0), bounded_complex(r, 4.0), bounded_complex(r, 4.0))
        }
    }
}

fn expected_ab(m: &MapModel) -> (Scalar, Scalar) {
    match m.progressions[0].1 {
        Progression::Quadratic { a, .. } => (re(2.0), a * 2.0),
        Progression::Alternating { b, .. } => (re(-2.0), b * 4.0),
        Progression::QExponential { c, .. } => {
            let q = m.q_half.unwrap_or(re(1.0)).powu(2);
            let big_a = q + q.inv();
            (big_a, c * (re(2.0) - big_a))
        }
    }
}

/// 1. Classification round trip and the global full-step relation.
pub fn classification_round_trip() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for regime in [Regime::Quadratic, Regime::Alternating, Regime::QExponential] {
        for trial in 0..50 {
            let m = random_model(&mut r, regime);
            let samples: Vec<Scalar> = (-1..=2).map(|k| m.eval_closed_form(re(0.0), k, &tol)).collect::<Result<_, _>>().map_err(err)?;
            let fitted = classify_samples(&samples, m.h, re(0.0), &tol).map_err(|e| format!("{regime:?} trial {trial}: {e}"))?;
            ensure(fitted.regime == regime, || format!("{regime:?} trial {trial}: classified as {:?}", fitted.regime))?;
            let (big_a, big_b) = expected_ab(&m);
            let gap = (fitted.step_scale - big_a).norm().max((fitted.step_shift - big_b).norm() / big_b.norm().max(1.0));
            ensure(gap <= 1e-8, || format!("{regime:?} trial {trial}: (A,B) gap {gap:e}"))?;
            worst = worst.max(gap);
            let grid = HalfStepSet::new(m.h, vec![re(0.0)], 6, &tol).map_err(err)?;
            for s in grid.interior() {
                let x = |t: Scalar| fitted.eval_point(t, &tol);
                let (xs, y1, z1) = (x(s).map_err(err)?, x(s + m.h).map_err(err)?, x(s - m.h).map_err(err)?);
                let scale = xs.norm().max(y1.norm()).max(z1.norm()).max(1.0);
                let resid = (y1 + z1 - fitted.step_scale * xs - fitted.step_shift).norm() / scale;
                ensure(resid <= 1e-8, || format!("{regime:?} trial {trial}: full-step relation {resid:e} at {s}"))?;
                if regime == Regime::Alternating {
                    let first = (y1 + xs - fitted.step_shift / 2.0).norm() / scale;
                    ensure(first <= 1e-8, || format!("alternating trial {trial}: first-order relation {first:e}"))?;
                }
            }
        }
    }
    Ok(format!("150 models, worst (A,B) gap {worst:.1e}"))
}

fn normalised_alternating_model(reps: &[f64]) -> MapModel {
    let i_pi = Scalar::new(0.0, PI);
    let mut m = MapModel::alternating(re(1.0), re(reps[0]), (i_pi * reps[0]).exp(), re(0.0));
    for &v in &reps[1..] {
        m.add_progression(re(v), Progression::Alternating { a: (i_pi * v).exp(), b: re(0.0) });
    }
    m
}

/// 2. D and S against the neighbour quotients on every grid point.
pub fn operator_identity() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(2);
    let reps_alt = [0.0, 0.1, 0.35];
    let models = [
        MapModel::quadratic(re(1.0), re(0.0), bounded_complex(&mut r, 1.0), bounded_complex(&mut r, 1.0), bounded_complex(&mut r, 1.0)),
        MapModel::q_exponential(re(1.0), re(0.0), Scalar::from_polar(1.2, 0.3), bounded_complex(&mut r, 1.0), bounded_complex(&mut r, 1.0), bounded_complex(&mut r, 1.0)),
        normalised_alternating_model(&reps_alt),
    ];
    let mut worst: f64 = 0.0;
    for m in &models {
        let ops = OperatorPair::from_map(m, &tol).map_err(err)?;
        let reps: Vec<Scalar> = m.progressions.iter().map(|(k, _)| *k).collect();
        let grid = HalfStepSet::new(m.h, reps, 4, &tol).map_err(err)?;
        for _ in 0..20 {
            let degree = r.gen_range(1..=10);
            let p = random_poly(&mut r, degree);
            let (dp, sp) = (ops.d(&p).map_err(err)?, ops.s(&p).map_err(err)?);
            let (gamma, _) = ops.leading_action(degree as i64);
            if !tol.is_zero(gamma, 1.0) {
                ensure(dp.degree() == Some(degree - 1), || format!("{:?}: deg D(p) = {:?} for deg p = {degree}", m.regime, dp.degree()))?;
            }
            for s in grid.materialize() {
                let x = |t: Scalar| m.eval_point(t, &tol);
                let (xs, y, z) = match (x(s), x(s + m.h / 2.0), x(s - m.h / 2.0)) {
                    (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                    _ => continue,
                };
                let radius = y.norm().max(z.norm()).max(1.0);
                let mag: f64 = p.coeffs().iter().enumerate().map(|(k, c)| c.norm() * radius.powi(k as i32)).sum();
                let d_mag: f64 = p.coeffs().iter().enumerate().skip(1).map(|(k, c)| k as f64 * c.norm() * radius.powi(k as i32 - 1)).sum();
                let d_point = (p.eval(y) - p.eval(z)) / (y - z);
                let s_point = (p.eval(y) + p.eval(z)) / 2.0;
                let gap = ((dp.eval(xs) - d_point).norm() / d_mag).max((sp.eval(xs) - s_point).norm() / mag);
                worst = worst.max(gap);
                ensure(gap <= 1e-8, || format!("{:?}: pointwise gap {gap:e} at s = {s}", m.regime))?;
            }
        }
    }
    let cont = OperatorPair::continuous(DEFAULT_CACHE_DEGREE);
    for _ in 0..20 {
        let p = random_poly(&mut r, 10);
        ensure(cont.d(&p).map_err(err)?.max_diff(&p.derivative()) < 1e-12, || "continuous D is not d/dx".into())?;
    }
    Ok(format!("3 lattice regimes x 20 polynomials, worst relative gap {worst:.1e}"))
}

/// A random q-exponential classical pair that passes the engine's diagnostics.
pub fn random_qexp_case(r: &mut StdRng, count: usize) -> (ClassicalData, QExpParams, RecurrenceTable) {
    let tol = Tolerance::default();
    loop {
        let p = QExpParams {
            q_half: Scalar::from_polar(r.gen_range(1.03..1.25), r.gen_range(-0.3..0.3)),
            a: random_complex(r, 1.0),
            b: random_complex(r, 1.0),
            c: random_complex(r, 1.0),
        };
        let phi = Poly::new(vec![random_complex(r, 0.5), random_complex(r, 0.5), random_complex(r, 0.5)]);
        let psi = Poly::new(vec![random_complex(r, 0.5), Scalar::from_polar(r.gen_range(0.6..1.4), r.gen_range(0.0..2.0 * PI))]);
        let cd = ClassicalData::new(phi, psi).expect("nonzero pair");
        if let Ok(t) = qexp_coefficients(&cd, p, IndexSpec::Infinite { count }, &tol) {
            let well_scaled = t.c.iter().all(|c| c.norm() > 1e-3 && c.norm() < 1e3) && t.b.iter().all(|b| b.norm() < 1e2);
            if well_scaled {
                return (cd, p, t);
            }
        }
    }
}

/// A random quadratic classical pair that passes the engine's diagnostics.
pub fn random_quadratic_case(r: &mut StdRng, count: usize) -> (ClassicalData, QuadraticParams, RecurrenceTable) {
    let tol = Tolerance::default();
    loop {
        let p = QuadraticParams { a: random_complex(r, 0.5), b: random_complex(r, 1.0), c: random_complex(r, 1.0) };
        let phi = Poly::new(vec![random_complex(r, 0.5), random_complex(r, 0.5), random_complex(r, 0.3)]);
        let psi = Poly::new(vec![random_complex(r, 0.5), Scalar::from_polar(r.gen_range(0.8..1.5), r.gen_range(-0.5..0.5))]);
        let cd = ClassicalData::new(phi, psi).expect("nonzero pair");
        if let Ok(t) = quadratic_coefficients(&cd, p, IndexSpec::Infinite { count }, &tol) {
            let well_scaled = t.c.iter().all(|c| c.norm() > 1e-3 && c.norm() < 1e3) && t.b.iter().all(|b| b.norm() < 1e2);
            if well_scaled {
                return (cd, p, t);
            }
        }
    }
}

/// Gram diagonality, norm recursion and structural closure for one table.
fn orthogonality_checks(cd: &ClassicalData, ops: &OperatorPair, t: &RecurrenceTable) -> std::result::Result<(f64, f64), String> {
    let u = moments_from_recurrence(t, re(1.0)).map_err(err)?;
    let polys = generate_ops(t, 10).map_err(err)?;
    let mut worst_gram: f64 = 0.0;
    for (i, p) in polys.iter().enumerate() {
        for (j, r) in polys.iter().enumerate().take(i + 1) {
            let prod = p * r;
            let target = if i == j { t.h[i] } else { re(0.0) };
            let gap = (u.pair(&prod).map_err(err)? - target).norm() / u.pair_magnitude(&prod).map_err(err)?.max(1e-300);
            ensure(gap <= 1e-8, || format!("Gram entry ({i},{j}) off by {gap:e} relative to the pairing magnitude"))?;
            worst_gram = worst_gram.max(gap);
        }
    }
    for n in 1..t.h.len() {
        ensure((t.h[n] - t.h[n - 1] * t.c[n - 1]).norm() <= 1e-12 * t.h[n].norm().max(1.0), || format!("h_{n} != C_{n} h_{}", n - 1))?;
    }
    let res = u.structural_residual(&cd.phi, &cd.psi, ops, 18).map_err(err)?;
    let mag = u.structural_magnitude(&cd.phi, &cd.psi, ops, 18).map_err(err)?;
    let mut worst: f64 = 0.0;
    for (k, (v, m)) in res.iter().zip(&mag).enumerate() {
        let rel = v.norm() / m.max(1.0);
        ensure(rel <= 1e-8, || format!("structural residual {rel:e} at degree {k}"))?;
        worst = worst.max(rel);
    }
    Ok((worst_gram, worst))
}

/// 3. q-exponential regularity implies orthogonality and the structural equation.
pub fn qexp_orthogonality() -> Outcome {
    let mut r = rng(3);
    let mut worst_gram: f64 = 0.0;
    let mut worst_struct: f64 = 0.0;
    for _ in 0..20 {
        let (cd, p, t) = random_qexp_case(&mut r, 11);
        let ops = OperatorPair::qexp(p, DEFAULT_CACHE_DEGREE);
        let (g, s) = orthogonality_checks(&cd, &ops, &t)?;
        worst_gram = worst_gram.max(g);
        worst_struct = worst_struct.max(s);
    }
    Ok(format!("20 draws, Gram gap {worst_gram:.1e}, structural residual {worst_struct:.1e}"))
}

fn degeneration_gap(cd: &ClassicalData, p: QuadraticParams, eps: f64) -> std::result::Result<f64, String> {
    let tol = Tolerance::default();
    let spec = IndexSpec::Infinite { count: 9 };
    let t = quadratic_coefficients(cd, p, spec, &tol).map_err(err)?;
    let d = q_to_1_degeneration(cd, p, re(eps), spec, &tol).map_err(err)?;
    Ok(max_rel_gap(&t.b, &d.b).max(max_rel_gap(&t.c, &d.c)))
}

/// 4. Quadratic theorem checks and the q -> 1 limit.
pub fn quadratic_and_degeneration() -> Outcome {
    let mut r = rng(4);
    for _ in 0..20 {
        let (cd, p, t) = random_quadratic_case(&mut r, 11);
        let ops = OperatorPair::quadratic(p, DEFAULT_CACHE_DEGREE);
        orthogonality_checks(&cd, &ops, &t)?;
    }
    let cd = ClassicalData::new(Poly::from_real(&[0.3, -0.2, 0.5]), Poly::from_real(&[0.4, 1.3])).map_err(err)?;
    let linear = QuadraticParams { a: re(0.0), b: re(0.3), c: re(-0.2) };
    let (g2, g3) = (degeneration_gap(&cd, linear, 1e-2)?, degeneration_gap(&cd, linear, 1e-3)?);
    let shrink = g2 / g3;
    ensure((50.0..=200.0).contains(&shrink), || format!("a = 0: gap {g2:e} -> {g3:e}, shrink {shrink:.1}"))?;
    let curved = QuadraticParams { a: re(0.6), b: re(0.3), c: re(-0.2) };
    let (c1, c2) = (degeneration_gap(&cd, curved, 1e-1)?, degeneration_gap(&cd, curved, 1e-2)?);
    let shrink_curved = c1 / c2;
    ensure((50.0..=200.0).contains(&shrink_curved), || format!("a != 0: gap {c1:e} -> {c2:e}, shrink {shrink_curved:.1}"))?;
    Ok(format!("20 quadratic draws; eps 1e-2 -> 1e-3 shrink {shrink:.0}x (a = 0), eps 1e-1 -> 1e-2 shrink {shrink_curved:.0}x (a != 0)"))
}

/// Random generic Askey-Wilson parameters at a primitive `nu`-th root of unity.
pub fn random_aw(r: &mut StdRng, nu: usize) -> AskeyWilsonParams {
    let tol = Tolerance::default();
    loop {
        let m = loop {
            let m = r.gen_range(1..nu);
            if (1..=m).filter(|&d| m.is_multiple_of(d) && nu.is_multiple_of(d)).max() == Some(1) {
                break m;
            }
        };
        let q = Scalar::from_polar(1.0, 2.0 * PI * m as f64 / nu as f64);
        let p = AskeyWilsonParams {
            a: Scalar::from_polar(r.gen_range(0.2..0.8), r.gen_range(0.0..2.0 * PI)),
            b: Scalar::from_polar(r.gen_range(0.2..0.8), r.gen_range(0.0..2.0 * PI)),
            c: Scalar::from_polar(r.gen_range(0.2..0.8), r.gen_range(0.0..2.0 * PI)),
            d: Scalar::from_polar(r.gen_range(0.2..0.8), r.gen_range(0.0..2.0 * PI)),
            q,
            big_a: Scalar::from_polar(r.gen_range(0.5..1.5), r.gen_range(0.0..2.0 * PI)),
            big_b: Scalar::from_polar(r.gen_range(0.5..1.5), r.gen_range(0.0..2.0 * PI)),
            big_c: random_complex(r, 0.5),
            q_half: None,
        };
        if let Ok(t) = askey_wilson_truncation(&p, nu, &tol) {
            let e = t.e_nu;
            let nodes_apart = (0..nu).all(|i| (0..i).all(|j| (t.nodes[i] - t.nodes[j]).norm() > 1e-3));
            if (e - 2.0).norm() > 1e-2 && (e + 2.0).norm() > 1e-2 && nodes_apart && t.table.c[..nu - 1].iter().all(|c| c.norm() > 1e-4) {
                return p;
            }
        }
    }
}

/// 5. Torsion Askey-Wilson truncation.
pub fn askey_wilson_torsion() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for nu in [5usize, 7] {
        for draw in 0..5 {
            let p = random_aw(&mut r, nu);
            let tr = askey_wilson_truncation(&p, nu, &tol).map_err(err)?;
            ensure(tr.c_nu.norm() <= 1e-9, || format!("nu {nu} draw {draw}: C_nu = {:e}", tr.c_nu.norm()))?;
            let polys = generate_ops(&tr.table, nu).map_err(err)?;
            let zeros = polys[nu].roots().map_err(err)?;
            ensure(sets_equal(&zeros, &tr.nodes, &Tolerance::new(1e-7, 1e-7)), || format!("nu {nu} draw {draw}: zeros of P_nu differ from xi_s"))?;
            let wgap = max_rel_gap(&tr.weights_ratio, &tr.weights_christoffel);
            ensure(wgap <= 1e-7, || format!("nu {nu} draw {draw}: weight gap {wgap:e}"))?;
            let scale = tr.table.h[..nu].iter().map(|h| h.norm()).fold(1.0, f64::max);
            for n in 0..nu {
                for m in 0..nu {
                    let sum: Scalar = tr.nodes.iter().zip(&tr.weights_christoffel).map(|(&x, &w)| w * polys[n].eval(x) * polys[m].eval(x)).sum();
                    let target = if n == m { tr.table.h[n] } else { re(0.0) };
                    let gap = (sum - target).norm() / scale;
                    worst = worst.max(gap);
                    ensure(gap <= 1e-7, || format!("nu {nu} draw {draw}: discrete orthogonality ({n},{m}) gap {gap:e}"))?;
                }
            }
            let engine = torsion_coefficients(&p.classical_data().map_err(err)?, p.qexp_params(), nu - 2, nu, &tol).map_err(err)?;
            let egap = max_rel_gap(&engine.b, &tr.table.b[..nu - 1]).max(max_rel_gap(&engine.c, &tr.table.c[..nu - 1]));
            ensure(egap <= 1e-8, || format!("nu {nu} draw {draw}: torsion engine gap {egap:e}"))?;
        }
    }
    Ok(format!("nu in {{5, 7}} x 5 draws, discrete orthogonality gap {worst:.1e}"))
}

/// Monic physicists' Hermite `2^{-n} H_n` from `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn monic_hermite(count: usize) -> Vec<Poly> {
    let mut h = vec![Poly::one(), Poly::from_real(&[0.0, 2.0])];
    for n in 1..count {
        let next = &(&Poly::from_real(&[0.0, 2.0]) * &h[n]) - &h[n - 1].scale(re(2.0 * n as f64));
        h.push(next);
    }
    h.iter().enumerate().take(count + 1).map(|(n, p)| p.scale(re(0.5f64.powi(n as i32)))).collect()
}

fn hankel_bound(u: &MomentFunctional, n: usize) -> f64 {
    (0..n).map(|i| (0..n).map(|j| u.moments[i + j].norm_sqr()).sum::<f64>().sqrt()).product()
}

/// 6. Alternating reconstruction: Hermite, Jacobi, forced critical zero.
pub fn alternating_reconstruction() -> Outcome {
    let tol = Tolerance::default();
    let base = laguerre(re(-0.5), 4, &tol).map_err(err)?;
    let build = build_alternating_ops(&base, re(0.0), &tol).map_err(err)?;
    let reference = monic_hermite(8);
    for n in 0..=8 {
        let gap = build.ops[n].max_diff(&reference[n]);
        ensure(gap <= 1e-10, || format!("Hermite P_{n} gap {gap:e}"))?;
        let closed = hermite_alternating_closed(n, &tol).map_err(err)?;
        ensure(closed.max_diff(&reference[n]) <= 1e-10, || format!("Hermite closed form {n}"))?;
    }
    let recovered = recurrence_from_monic(&build.ops).map_err(err)?;
    let table = hermite_table(8);
    ensure(max_rel_gap(&recovered.b, &table.b) <= 1e-12 && max_rel_gap(&recovered.c, &table.c[..7]) <= 1e-12, || "Hermite recurrence B_n = 0, C_n = n/2 not recovered".into())?;
    let upper = laguerre(re(0.5), 3, &tol).map_err(err)?;
    for (n, s) in build.derived.iter().enumerate() {
        ensure(s.max_diff(&upper[n]) <= 1e-10, || format!("S_{n} is not monic Laguerre(1/2)"))?;
    }

    let samples = [re(-0.7), re(0.2), re(0.55), Scalar::new(0.3, 0.4), re(1.3)];
    for (alpha, beta) in [(0.7, 1.3), (-0.4, 2.2)] {
        let jac = jacobi_shifted(re(alpha), re(beta), 3, &tol).map_err(err)?;
        let build = build_alternating_ops(&jac, re(1.0), &tol).map_err(err)?;
        for n in 0..=6 {
            let closed = jacobi_alternating_closed(re(alpha), re(beta), n, &tol).map_err(err)?;
            for &x in &samples {
                let gap = (closed.eval(x) - build.ops[n].eval(x)).norm() / closed.eval(x).norm().max(1.0);
                ensure(gap <= 1e-10, || format!("Jacobi ({alpha},{beta}) P_{n} gap {gap:e} at {x}"))?;
            }
        }
    }

    let m = 2;
    let base = laguerre(re(-0.5), 3, &tol).map_err(err)?;
    let tau = base[m].roots().map_err(err)?[0].sqrt();
    let failure = build_alternating_ops(&base, tau, &tol).unwrap_err();
    ensure(failure == CopError::CriticalZero { n: m }, || format!("expected CriticalZero at {m}, got {failure:?}"))?;
    let v = MomentFunctional::new((0..2 * m + 2).map(|k| cop_core::scalar::pochhammer(re(0.5), k)).collect());
    let u = j_tau_pullback(&v, tau);
    let det = u.hankel_determinant(2 * m).map_err(err)?;
    let bound = hankel_bound(&u, 2 * m);
    ensure(det.norm() <= 1e-9 * bound, || format!("Hankel determinant {:e} vs bound {bound:e}", det.norm()))?;
    let control = j_tau_pullback(&v, tau + 0.3);
    let control_det = control.hankel_determinant(2 * m).map_err(err)?;
    ensure(control_det.norm() > 1e-4 * hankel_bound(&control, 2 * m), || "control Hankel determinant also vanishes".into())?;
    Ok(format!("Hermite n <= 8, Jacobi n <= 6 at 5 points, critical zero at m = {m} with |det|/bound {:.1e}", det.norm() / bound))
}

fn random_cbi(r: &mut StdRng) -> CbiParams {
    CbiParams {
        alpha: re(r.gen_range(0.1..1.5)),
        beta: re(r.gen_range(0.3..1.5)),
        gamma: re(r.gen_range(-1.0..-0.1)),
        delta: re(r.gen_range(-1.0..-0.1)),
    }
}

/// 7. Complementary Bannai-Ito and even-N dual (-1)-Hahn.
pub fn cbi_and_dual_hahn() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(7);
    for draw in 0..5 {
        let p = random_cbi(&mut r);
        let out = cbi_base_and_interlaced(&p, 9, &tol).map_err(err)?;
        let beta2 = p.beta * p.beta;
        for n in 0..=8 {
            let ratio = out.build.base[n + 1].eval(beta2) / out.build.base[n].eval(beta2);
            ensure((ratio - out.a[n]).norm() <= 1e-9 * out.a[n].norm().max(1.0), || format!("draw {draw}: R_{}(beta^2)/R_{n}(beta^2) != a_{n}", n + 1))?;
        }
        for n in 0..=8 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let tau_n = if n == 0 { re(0.0) } else if n % 2 == 0 { out.c[n / 2] } else { -out.a[n / 2] };
            let ops = &out.build.ops;
            let lhs = &(&ops[n + 1] + &ops[n].scale(p.beta * sign)) - &(&Poly::x() * &ops[n]);
            let lhs = if n > 0 { &lhs + &ops[n - 1].scale(tau_n) } else { lhs };
            let scale = ops[n + 1].max_abs_coeff().max(1.0);
            ensure(lhs.max_abs_coeff() <= 1e-9 * scale, || format!("draw {draw}: interlaced recurrence fails at n = {n}"))?;
            ensure((out.interlaced.b[n] - p.beta * sign).norm() < 1e-15, || format!("interlaced B_{n}"))?;
        }
    }
    let split = dual_m1_hahn_even(&DualHahnParams { alpha: 5.3, beta: 2.1, n: 8 }).map_err(err)?;
    for (n, &bn) in split.b.iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        ensure((bn + 1.0 - sign * split.tau).abs() <= 1e-12, || format!("b_{n} + 1 != (-1)^n tau"))?;
    }
    let worst_rem = split.christoffel_remainders.iter().copied().fold(0.0, f64::max);
    ensure(worst_rem <= 1e-10, || format!("Christoffel remainder {worst_rem:e}"))?;
    ensure(split.parity_defect <= 1e-8 * split.shifted_polys.iter().map(|p| p.max_abs_coeff()).fold(1.0, f64::max), || format!("parity defect {:e}", split.parity_defect))?;
    for (n, q) in split.odd.iter().enumerate() {
        let gap = q.max_diff(&split.christoffel[n]) / q.max_abs_coeff().max(1.0);
        ensure(gap <= 1e-10, || format!("Q_{n} from split differs from Christoffel quotient by {gap:e}"))?;
    }
    let u = &split.u;
    let tau2 = re(split.tau * split.tau);
    let quad_scale = split.even.iter().chain(&split.odd).map(|p| p.max_abs_coeff()).fold(1.0, f64::max);
    for n in 1..split.even.len() - 1 {
        let (pm, p0, pp) = (&split.even[n - 1], &split.even[n], &split.even[n + 1]);
        let lhs = &(&(pp + &p0.scale(tau2 + u[2 * n] + u[2 * n + 1])) + &pm.scale(re(u[2 * n] * u[2 * n - 1]))) - &(&Poly::x() * p0);
        ensure(lhs.max_abs_coeff() <= 1e-10 * quad_scale, || format!("P recurrence fails at n = {n}"))?;
    }
    for n in 0..split.odd.len() - 1 {
        let (q0, qp) = (&split.odd[n], &split.odd[n + 1]);
        let mut lhs = &(qp + &q0.scale(tau2 + u[2 * n + 2] + u[2 * n + 1])) - &(&Poly::x() * q0);
        if n > 0 {
            lhs = &lhs + &split.odd[n - 1].scale(re(u[2 * n] * u[2 * n + 1]));
        }
        ensure(lhs.max_abs_coeff() <= 1e-10 * quad_scale, || format!("Q recurrence fails at n = {n}"))?;
    }
    Ok(format!("5 CBI draws n <= 8; dual (-1)-Hahn (5.3, 2.1, 8) Christoffel remainder {worst_rem:.1e}"))
}

fn eigen_ok(l: &NuOperator, t: &RecurrenceTable, count: usize, expected: impl Fn(usize) -> Scalar, label: &str) -> std::result::Result<(), String> {
    let entries = l.eigen_check(t, count).map_err(err)?;
    for (n, e) in entries.iter().enumerate() {
        let lam_scale = e.lambda.norm().max(1.0);
        ensure(e.residual <= 1e-8 * e.scale.max(1.0) * lam_scale, || format!("{label}: L P_{n} residual {:e}", e.residual))?;
        let want = expected(n);
        ensure((e.lambda - want).norm() <= 1e-8 * lam_scale, || format!("{label}: lambda_{n} = {} vs {want}", e.lambda))?;
    }
    Ok(())
}

fn symmetry_scale(l: &NuOperator, u: &MomentFunctional, up_to: usize) -> std::result::Result<f64, String> {
    let images: f64 = (0..=up_to).map(|i| l.apply(&Poly::monomial(re(1.0), i)).map(|p| p.max_abs_coeff())).collect::<Result<Vec<_>, _>>().map_err(err)?.into_iter().fold(1.0, f64::max);
    Ok(images * u.norm().max(1.0))
}

/// 8. Eigenvalue equation, formal symmetry and the Hahn derived family.
pub fn nu_verification() -> Outcome {
    let tol = Tolerance::default();
    let mut r = rng(3);
    let mut worst_sym: f64 = 0.0;
    for trial in 0..20 {
        let (cd, p, t) = random_qexp_case(&mut r, 11);
        let ops = OperatorPair::qexp(p, DEFAULT_CACHE_DEGREE);
        let th = QExpTheorem::new(cd.clone(), p);
        let l = NuOperator::new(cd.phi.clone(), cd.psi.clone(), ops.clone());
        eigen_ok(&l, &t, 11, |n| if n == 0 { re(0.0) } else { th.eigenvalue(n as i64) }, &format!("q-exp trial {trial}"))?;
        let u = moments_from_recurrence(&t, re(1.0)).map_err(err)?;
        let sym = l.formal_symmetry_residual(&u, 9).map_err(err)?;
        let scale = symmetry_scale(&l, &u, 9)?;
        ensure(sym <= 1e-8 * scale, || format!("q-exp trial {trial}: symmetry residual {sym:e}"))?;
        worst_sym = worst_sym.max(sym / scale);
        if trial == 0 {
            let mut bent = u.clone();
            let shift = bent.moments[3] * 0.05 + 0.05;
            bent.moments[3] += shift;
            let control = l.formal_symmetry_residual(&bent, 9).map_err(err)?;
            ensure(control > 1e-4, || format!("perturbed control residual only {control:e}"))?;
            let m = MapModel::q_exponential(re(1.0), re(0.0), p.q_half, p.a, p.b, p.c);
            let u1 = u.derived_functional(&cd.phi, &cd.psi, &m, &ops).map_err(err)?;
            let q1 = hahn_derived(&t, &ops, 1, 7, &tol).map_err(err)?;
            let g = u1.gram(&q1).map_err(err)?;
            let diag = (0..7).map(|i| g[i][i].norm()).fold(0.0, f64::max);
            for i in 0..7 {
                ensure(q1[i].degree() == Some(i) && (q1[i].coeff(i) - 1.0).norm() < 1e-8, || format!("Q^[1]_{i} not monic"))?;
                for j in 0..i {
                    ensure(g[i][j].norm() <= 1e-8 * diag, || format!("Q^[1] Gram ({i},{j}) = {:e}", g[i][j].norm()))?;
                }
            }
        }
    }
    let mut r = rng(4);
    for trial in 0..20 {
        let (cd, p, t) = random_quadratic_case(&mut r, 11);
        let ops = OperatorPair::quadratic(p, DEFAULT_CACHE_DEGREE);
        let th = QuadraticTheorem::new(cd.clone(), p);
        let l = NuOperator::new(cd.phi.clone(), cd.psi.clone(), ops);
        eigen_ok(&l, &t, 11, |n| th.eigenvalue(n as i64), &format!("quadratic trial {trial}"))?;
        let u = moments_from_recurrence(&t, re(1.0)).map_err(err)?;
        let sym = l.formal_symmetry_residual(&u, 9).map_err(err)?;
        ensure(sym <= 1e-8 * symmetry_scale(&l, &u, 9)?, || format!("quadratic trial {trial}: symmetry residual {sym:e}"))?;
    }
    let mut r = rng(5);
    for nu in [5usize, 7] {
        for _ in 0..5 {
            let p = random_aw(&mut r, nu);
            let cd = p.classical_data().map_err(err)?;
            let t = askey_wilson_table(&p, nu - 2, &tol).map_err(err)?;
            let th = QExpTheorem::new(cd.clone(), p.qexp_params());
            let l = NuOperator::new(cd.phi, cd.psi, OperatorPair::qexp(p.qexp_params(), DEFAULT_CACHE_DEGREE));
            eigen_ok(&l, &t, nu, |n| if n == 0 { re(0.0) } else { th.eigenvalue(n as i64) }, &format!("AW nu {nu}"))?;
        }
    }
    // Alternating tables (criteria 6 and 7): the first-order check and Gram diagonality.
    let mut r = rng(7);
    for _ in 0..5 {
        let p = random_cbi(&mut r);
        let out = cbi_base_and_interlaced(&p, 4, &tol).map_err(err)?;
        let v = moments_from_recurrence(&out.base, re(1.0)).map_err(err)?;
        let u = j_tau_pullback(&v, p.beta);
        let first = alternating_nu_check(&u, p.beta, 4).map_err(err)?;
        ensure(first.iter().all(|z| z.norm() <= 1e-12 * u.norm().max(1.0)), || "CBI first-order residual".into())?;
        let (off, _) = gram_defect(&u, &out.build.ops[..9], &[re(1.0); 9]);
        ensure(off <= 1e-8 * u.norm().max(1.0), || format!("CBI Gram off-diagonal {off:e}"))?;
    }
    let v = MomentFunctional::new((0..10).map(|k| cop_core::scalar::pochhammer(re(0.5), k)).collect());
    let hermite_u = j_tau_pullback(&v, re(0.0));
    ensure(alternating_nu_check(&hermite_u, re(0.0), 4).map_err(err)?.iter().all(|z| z.norm() == 0.0), || "Hermite first-order residual".into())?;
    Ok(format!("q-exp, quadratic and AW eigen checks pass; worst relative symmetry residual {worst_sym:.1e}"))
}

/// 9. Para-Krawtchouk image identity.
pub fn para_krawtchouk_grid() -> Outcome {
    let tol = Tolerance::default();
    for n in [5usize, 7, 9] {
        for gamma in [0.3, 0.6, 1.4] {
            let mut x = MapModel::quadratic(re(2.0), re(0.0), re(0.0), re(4.0), re(0.0));
            x.add_progression(re(gamma / 2.0), Progression::Quadratic { a: re(0.0), b: re(4.0), c: re(gamma) });
            let support = para_krawtchouk_support(n, gamma);
            let image_x = image_set(|s| x.eval_point(s, &tol).unwrap_or(re(f64::NAN)), &support, &tol);
            let ints: Vec<Scalar> = (0..=n).map(|s| re(s as f64)).collect();
            let image_w = image_set(|s| re(para_krawtchouk_w(s.re.round() as i64, gamma)), &ints, &tol);
            ensure(image_x.len() == n + 1, || format!("N = {n}, gamma = {gamma}: |X(S_N)| = {}", image_x.len()))?;
            ensure(sets_equal(&image_w, &image_x, &tol), || format!("N = {n}, gamma = {gamma}: images differ"))?;
        }
    }
    Ok("N in {5, 7, 9} x gamma in {0.3, 0.6, 1.4}: W(N_N) = X(S_N)".into())
}
