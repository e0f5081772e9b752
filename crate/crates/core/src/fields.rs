//! Jacobi operator along geodesics, Jacobi vector fields, and conjugate
//! points, working entirely in the Levi-Civita parallel frame where the
//! equation is literally Y″ + J(t)Y = 0.
//!
//! Along a geodesic of a g.o. metric the operator reduces to a rotating
//! conjugation of its initial value, J(t) = e^{tΛ} J⁰ e^{−tΛ}, with Λ the
//! calibrated difference tensor. Substituting Z = e^{−tΛ}Y removes the time
//! dependence:
//!
//!   Z″ + 2ΛZ′ + (Λ² + J⁰)Z = 0,
//!
//! a constant-coefficient system solved by one 12×12 matrix exponential.
//! A fixed-step RK4 integration of the nonautonomous equation with a
//! Richardson error estimate serves as the independent numerical baseline.

use crate::lie::{BracketTable, Calibration};
use crate::linalg::{bisect_root, dot6, golden_section_min, Mat, SymMatrix6};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The reduced data of one geodesic: the rotation generator and the initial
/// Jacobi operator in the parallel frame. Synthetic pairs (for test
/// equations like J ≡ λ·Id) plug into every solver the same way.
#[derive(Clone, Debug)]
pub struct ReducedOperators {
    pub lambda: Mat,
    pub j0: SymMatrix6,
}

impl ReducedOperators {
    pub fn from_calibration(calib: &Calibration, table: &BracketTable, x: &[f64; 6]) -> Self {
        let (lambda, j0) = calib.published_frame_operators(table, x);
        ReducedOperators { lambda, j0 }
    }

    /// Constant-operator test hook: Λ = 0, J ≡ m.
    pub fn constant(m: SymMatrix6) -> Self {
        ReducedOperators {
            lambda: Mat::zeros(6, 6),
            j0: m,
        }
    }
}

/// How to realize J(t).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorModel {
    /// Closed form e^{tΛ} J⁰ e^{−tΛ}.
    Conjugation,
    /// Truncated series Σ tᵏ/k!·J⁽ᵏ⁾ of the given order.
    Taylor(usize),
}

/// The Jacobi operator at parameter t.
pub fn operator_at_t(ops: &ReducedOperators, t: f64, model: OperatorModel) -> SymMatrix6 {
    match model {
        OperatorModel::Conjugation => {
            let e = ops.lambda.scale(t).expm();
            let m = e.matmul(&ops.j0.to_mat()).matmul(&e.transpose());
            SymMatrix6::from_mat(&m)
        }
        OperatorModel::Taylor(order) => {
            let mut term = ops.j0.to_mat();
            let mut acc = term.clone();
            let mut factorial = 1.0f64;
            for k in 1..=order {
                term = ops.lambda.commutator(&term);
                factorial *= k as f64;
                acc = acc.add(&term.scale(t.powi(k as i32) / factorial));
            }
            SymMatrix6::from_mat(&acc)
        }
    }
}

/// Integration method for the field solver.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ConstCoef,
    Rk4,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ConstCoef => write!(f, "constcoef"),
            Method::Rk4 => write!(f, "rk4"),
        }
    }
}

/// A sampled Jacobi field: Y(tᵢ) and Y′(tᵢ) on a uniform grid.
#[derive(Clone, Debug, Serialize)]
pub struct FieldTrajectory {
    pub t: Vec<f64>,
    pub y: Vec<[f64; 6]>,
    pub dy: Vec<[f64; 6]>,
    pub method: Method,
}

impl FieldTrajectory {
    /// Max deviation of the Wronskian ⟨Y₁′,Y₂⟩ − ⟨Y₁,Y₂′⟩ from its initial
    /// value along the grid.
    pub fn wronskian_drift(&self, other: &FieldTrajectory) -> f64 {
        assert_eq!(self.t.len(), other.t.len());
        let w0 = dot6(&self.dy[0], &other.y[0]) - dot6(&self.y[0], &other.dy[0]);
        let mut drift = 0.0f64;
        for i in 0..self.t.len() {
            let w = dot6(&self.dy[i], &other.y[i]) - dot6(&self.y[i], &other.dy[i]);
            drift = drift.max((w - w0).abs());
        }
        drift
    }

    /// Max pointwise difference of the Y components against another
    /// trajectory on the same grid.
    pub fn sup_distance(&self, other: &FieldTrajectory) -> f64 {
        assert_eq!(self.t.len(), other.t.len());
        let mut d = 0.0f64;
        for i in 0..self.t.len() {
            for c in 0..6 {
                d = d.max((self.y[i][c] - other.y[i][c]).abs());
            }
        }
        d
    }
}

/// Step-size rejection of the RK4 path.
#[derive(Clone, Debug)]
pub struct StepRejected {
    pub t: f64,
    pub estimate: f64,
    pub tolerance: f64,
}

impl fmt::Display for StepRejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rk4 error estimate {:.3e} exceeds tolerance {:.3e} at t = {}",
            self.estimate, self.tolerance, self.t
        )
    }
}

impl std::error::Error for StepRejected {}

/// The 12×12 generator of the reduced first-order system in W = (Z, Z′).
fn reduced_generator(ops: &ReducedOperators) -> Mat {
    let l2 = ops.lambda.matmul(&ops.lambda);
    let k = l2.add(&ops.j0.to_mat());
    let mut a = Mat::zeros(12, 12);
    for i in 0..6 {
        a[(i, i + 6)] = 1.0;
        for j in 0..6 {
            a[(i + 6, j)] = -k[(i, j)];
            a[(i + 6, j + 6)] = -2.0 * ops.lambda[(i, j)];
        }
    }
    a
}

/// Solve Y″ + J(t)Y = 0 with Y(0) = y0, Y′(0) = v0 on the grid 0, h, …, t_max.
///
/// * `ConstCoef` propagates the rotated variable with a single step matrix
///   e^{hA} and rotates back, so each grid value is exact up to the
///   exponential's accuracy.
/// * `Rk4` integrates the nonautonomous system directly, with J(t) from the
///   conjugation closed form; a parallel half-step integration provides the
///   Richardson error estimate and triggers rejection above `tol`.
pub fn solve_fields(
    ops: &ReducedOperators,
    y0: [f64; 6],
    v0: [f64; 6],
    t_max: f64,
    h: f64,
    method: Method,
    tol: f64,
) -> Result<FieldTrajectory, StepRejected> {
    assert!(h > 0.0 && t_max > 0.0 && t_max <= 100.0);
    match method {
        Method::ConstCoef => Ok(solve_constcoef(ops, y0, v0, t_max, h)),
        Method::Rk4 => solve_rk4(ops, y0, v0, t_max, h, tol),
    }
}

fn grid(t_max: f64, h: f64) -> Vec<f64> {
    let n = (t_max / h).round() as usize;
    (0..=n).map(|i| i as f64 * h).collect()
}

fn solve_constcoef(
    ops: &ReducedOperators,
    y0: [f64; 6],
    v0: [f64; 6],
    t_max: f64,
    h: f64,
) -> FieldTrajectory {
    let ts = grid(t_max, h);
    let step = reduced_generator(ops).scale(h).expm();
    let rot_step = ops.lambda.scale(h).expm();

    // W = (Z, Z′) with Z(0) = Y0, Z′(0) = V0 − ΛY0
    let ly0 = ops.lambda.matvec(&y0);
    let mut w = vec![0.0f64; 12];
    for i in 0..6 {
        w[i] = y0[i];
        w[i + 6] = v0[i] - ly0[i];
    }
    let mut rot = Mat::identity(6);

    let mut y = Vec::with_capacity(ts.len());
    let mut dy = Vec::with_capacity(ts.len());
    for (i, _t) in ts.iter().enumerate() {
        if i > 0 {
            w = step.matvec(&w);
            rot = rot.matmul(&rot_step);
        }
        let z: Vec<f64> = w[..6].to_vec();
        let dz: Vec<f64> = w[6..].to_vec();
        // Y = e^{tΛ}Z, Y′ = e^{tΛ}(Z′ + ΛZ)
        let yz = rot.matvec(&z);
        let lz = ops.lambda.matvec(&z);
        let sum: Vec<f64> = (0..6).map(|c| dz[c] + lz[c]).collect();
        let dyz = rot.matvec(&sum);
        y.push(std::array::from_fn(|c| yz[c]));
        dy.push(std::array::from_fn(|c| dyz[c]));
    }
    FieldTrajectory {
        t: ts,
        y,
        dy,
        method: Method::ConstCoef,
    }
}

struct Rk4State {
    /// rotation e^{tΛ} maintained incrementally
    rot: Mat,
    y: [f64; 6],
    v: [f64; 6],
}

fn rk4_rhs(j: &SymMatrix6, y: &[f64; 6], v: &[f64; 6]) -> ([f64; 6], [f64; 6]) {
    let jy = j.apply(y);
    (*v, std::array::from_fn(|i| -jy[i]))
}

fn rk4_step(ops: &ReducedOperators, s: &mut Rk4State, j0: &SymMatrix6, rot_half: &Mat, h: f64) {
    // J at t, t+h/2, t+h from the maintained rotation
    let j_t = *j0;
    let rot_mid = s.rot.matmul(rot_half);
    let rot_next = rot_mid.matmul(rot_half);
    let j_mid = conjugate(&rot_mid, &ops.j0);
    let j_next = conjugate(&rot_next, &ops.j0);

    let (k1y, k1v) = rk4_rhs(&j_t, &s.y, &s.v);
    let y2 = add_scaled(&s.y, &k1y, h / 2.0);
    let v2 = add_scaled(&s.v, &k1v, h / 2.0);
    let (k2y, k2v) = rk4_rhs(&j_mid, &y2, &v2);
    let y3 = add_scaled(&s.y, &k2y, h / 2.0);
    let v3 = add_scaled(&s.v, &k2v, h / 2.0);
    let (k3y, k3v) = rk4_rhs(&j_mid, &y3, &v3);
    let y4 = add_scaled(&s.y, &k3y, h);
    let v4 = add_scaled(&s.v, &k3v, h);
    let (k4y, k4v) = rk4_rhs(&j_next, &y4, &v4);

    for i in 0..6 {
        s.y[i] += h / 6.0 * (k1y[i] + 2.0 * k2y[i] + 2.0 * k3y[i] + k4y[i]);
        s.v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    s.rot = rot_next;
}

fn conjugate(rot: &Mat, j0: &SymMatrix6) -> SymMatrix6 {
    SymMatrix6::from_mat(&rot.matmul(&j0.to_mat()).matmul(&rot.transpose()))
}

fn add_scaled(a: &[f64; 6], b: &[f64; 6], s: f64) -> [f64; 6] {
    std::array::from_fn(|i| a[i] + s * b[i])
}

fn solve_rk4(
    ops: &ReducedOperators,
    y0: [f64; 6],
    v0: [f64; 6],
    t_max: f64,
    h: f64,
    tol: f64,
) -> Result<FieldTrajectory, StepRejected> {
    let ts = grid(t_max, h);
    let rot_half = ops.lambda.scale(h / 2.0).expm();
    let rot_quarter = ops.lambda.scale(h / 4.0).expm();

    let mut full = Rk4State {
        rot: Mat::identity(6),
        y: y0,
        v: v0,
    };
    let mut half = Rk4State {
        rot: Mat::identity(6),
        y: y0,
        v: v0,
    };

    let mut y = vec![y0];
    let mut dy = vec![v0];
    for &t in ts.iter().skip(1) {
        let j_full = conjugate(&full.rot, &ops.j0);
        rk4_step(ops, &mut full, &j_full, &rot_half, h);
        for _ in 0..2 {
            let j_half = conjugate(&half.rot, &ops.j0);
            rk4_step(ops, &mut half, &j_half, &rot_quarter, h / 2.0);
        }
        // Richardson: the half-step run is ~16× more accurate
        let mut est = 0.0f64;
        for c in 0..6 {
            est = est.max((full.y[c] - half.y[c]).abs() * (16.0 / 15.0));
        }
        if est > tol {
            return Err(StepRejected {
                t,
                estimate: est,
                tolerance: tol,
            });
        }
        y.push(half.y);
        dy.push(half.v);
    }
    Ok(FieldTrajectory {
        t: ts,
        y,
        dy,
        method: Method::Rk4,
    })
}

/// Fundamental matrix solution M(t) with M(0) = 0, M′(0) = Id, evaluated by
/// the constant-coefficient reduction at one parameter value.
pub fn fundamental_at(ops: &ReducedOperators, t: f64) -> Mat {
    let prop = reduced_generator(ops).scale(t).expm();
    // columns: initial W = (0, e_c); read back M(t) = e^{tΛ}·Z(t)
    let rot = ops.lambda.scale(t).expm();
    let mut z = Mat::zeros(6, 6);
    for c in 0..6 {
        for r in 0..6 {
            z[(r, c)] = prop[(r, c + 6)];
        }
    }
    rot.matmul(&z)
}

/// A conjugate point: a zero of det M(t) with its multiplicity from the
/// rank drop of M(t*).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConjugatePoint {
    pub t: f64,
    pub multiplicity: usize,
}

/// Locate conjugate points on (0, t_max]: grid scan of det M(t) for sign
/// changes refined by bisection, plus dips of the smallest singular value
/// refined by golden-section search (even-multiplicity zeros never change
/// the determinant's sign). Multiplicity counts singular values below
/// 1e−7·‖M‖.
pub fn conjugate_points(
    ops: &ReducedOperators,
    t_max: f64,
    tol: f64,
    grid_points: usize,
) -> Vec<ConjugatePoint> {
    assert!(t_max > 0.0 && t_max <= 100.0);
    let n = grid_points.max(64);
    let h = t_max / n as f64;
    let step = reduced_generator(ops).scale(h).expm();
    let rot_step = ops.lambda.scale(h).expm();

    // propagate the fundamental columns on the grid
    let mut w = Mat::zeros(12, 6);
    for c in 0..6 {
        w[(c + 6, c)] = 1.0;
    }
    let mut rot = Mat::identity(6);
    let mut dets = Vec::with_capacity(n + 1);
    let mut sigmins = Vec::with_capacity(n + 1);
    let mut norms = Vec::with_capacity(n + 1);
    dets.push(0.0f64);
    sigmins.push(0.0f64);
    norms.push(0.0f64);
    for _ in 1..=n {
        w = step.matmul(&w);
        rot = rot.matmul(&rot_step);
        let mut z = Mat::zeros(6, 6);
        for c in 0..6 {
            for r in 0..6 {
                z[(r, c)] = w[(r, c)];
            }
        }
        let m = rot.matmul(&z);
        let sv = m.singular_values();
        dets.push(m.det());
        sigmins.push(sv[5]);
        norms.push(sv[0]);
    }

    // one scale for the whole trajectory: at a full rank drop (all columns
    // vanishing, e.g. constant curvature) the local ‖M(t*)‖ is itself zero
    let global = norms.iter().fold(0.0f64, |a, &b| a.max(b)).max(1e-300);

    let mut raw: Vec<f64> = Vec::new();
    // sign changes of det (skip the structural zero at t = 0)
    for i in 1..n {
        if dets[i] * dets[i + 1] < 0.0 {
            let f = |t: f64| fundamental_at(ops, t).det();
            raw.push(bisect_root(f, i as f64 * h, (i + 1) as f64 * h, tol));
        }
    }
    // dips of σ_min (catches even-multiplicity zeros without a sign change)
    for i in 2..n {
        if sigmins[i] < sigmins[i - 1] && sigmins[i] <= sigmins[i + 1] {
            let f = |t: f64| {
                let m = fundamental_at(ops, t);
                m.singular_values()[5]
            };
            let (t_star, smin) = golden_section_min(f, (i - 1) as f64 * h, (i + 1) as f64 * h, tol);
            if smin <= 1e-7 * global {
                raw.push(t_star);
            }
        }
    }

    raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<ConjugatePoint> = Vec::new();
    for t in raw {
        if t <= 10.0 * tol.max(1e-12) {
            continue;
        }
        if let Some(last) = out.last() {
            if (t - last.t).abs() <= 10.0 * tol.max(h * 1e-6) {
                continue;
            }
        }
        let m = fundamental_at(ops, t);
        let sv = m.singular_values();
        let multiplicity = sv.iter().filter(|&&s| s < 1e-7 * global).count();
        if multiplicity == 0 {
            continue;
        }
        out.push(ConjugatePoint { t, multiplicity });
    }
    out
}

/// Frequencies of J(t): distinct positive rotation rates of Λ together with
/// their pairwise sums and differences. J(t)'s entries are trigonometric
/// polynomials in exactly these frequencies.
pub fn operator_frequencies(ops: &ReducedOperators) -> Vec<f64> {
    // eigen-frequencies of the skew Λ: sqrt of eigenvalues of −Λ²
    let l2 = ops.lambda.matmul(&ops.lambda).scale(-1.0);
    let eigs = l2.sym_eigvals();
    let mut base: Vec<f64> = Vec::new();
    for e in eigs {
        let w = e.max(0.0).sqrt();
        if w > 1e-9 && !base.iter().any(|b| (b - w).abs() < 1e-9) {
            base.push(w);
        }
    }
    let mut freqs: Vec<f64> = Vec::new();
    let mut push = |f: f64| {
        if f > 1e-9 && !freqs.iter().any(|g: &f64| (g - f).abs() < 1e-9) {
            freqs.push(f);
        }
    };
    for &a in &base {
        push(a);
        for &b in &base {
            push((a - b).abs());
            push(a + b);
        }
    }
    freqs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    freqs
}

/// Relative residual of fitting sampled J(t) entries on the trigonometric
/// basis {1} ∪ {cos ωt, sin ωt} over the predicted frequencies.
pub fn frequency_fit_residual(ops: &ReducedOperators, n_samples: usize, t_span: f64) -> f64 {
    let freqs = operator_frequencies(ops);
    let cols = 1 + 2 * freqs.len();
    let n = n_samples.max(2 * cols);
    let ts: Vec<f64> = (0..n).map(|i| t_span * i as f64 / n as f64).collect();
    let mut worst: f64 = 0.0;
    // fit all 21 upper entries against the shared basis
    let mut basis = Mat::zeros(n, cols);
    for (r, &t) in ts.iter().enumerate() {
        basis[(r, 0)] = 1.0;
        for (fi, &w) in freqs.iter().enumerate() {
            basis[(r, 1 + 2 * fi)] = (w * t).cos();
            basis[(r, 2 + 2 * fi)] = (w * t).sin();
        }
    }
    let samples: Vec<SymMatrix6> = ts
        .iter()
        .map(|&t| operator_at_t(ops, t, OperatorModel::Conjugation))
        .collect();
    for i in 0..6 {
        for j in i..6 {
            let b: Vec<f64> = samples.iter().map(|m| m.0[i][j]).collect();
            let scale = b.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
            if scale < 1e-12 {
                continue;
            }
            let sol = lstsq_local(&basis, &b);
            worst = worst.max(sol / scale / (n as f64).sqrt());
        }
    }
    worst
}

fn lstsq_local(a: &Mat, b: &[f64]) -> f64 {
    crate::linalg::lstsq(a, b).residual_l2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivatives::Variant;
    use crate::lie::{build_bracket_table, calibrate};
    use crate::samples::seeded_unit_vectors;
    use std::sync::OnceLock;

    fn setup() -> &'static (BracketTable, Calibration) {
        static CELL: OnceLock<(BracketTable, Calibration)> = OnceLock::new();
        CELL.get_or_init(|| {
            let table = build_bracket_table([1.0, 1.0, 1.0]);
            let calib = calibrate(Variant::Repaired, 1e-9, 42, 96, &table);
            (table, calib)
        })
    }

    fn m6_ops(x: &[f64; 6]) -> ReducedOperators {
        let (table, calib) = setup();
        ReducedOperators::from_calibration(calib, table, x)
    }

    #[test]
    fn operator_at_zero_is_j0() {
        let ops = m6_ops(&seeded_unit_vectors(31, 1)[0]);
        let j = operator_at_t(&ops, 0.0, OperatorModel::Conjugation);
        assert!(j.sub(&ops.j0).max_abs() < 1e-14);
    }

    #[test]
    fn conjugation_agrees_with_taylor8_at_small_t() {
        let ops = m6_ops(&seeded_unit_vectors(32, 1)[0]);
        let a = operator_at_t(&ops, 0.1, OperatorModel::Conjugation);
        let b = operator_at_t(&ops, 0.1, OperatorModel::Taylor(8));
        assert!(a.sub(&b).max_abs() < 1e-8);
    }

    #[test]
    fn trace_is_constant_along_the_geodesic() {
        let ops = m6_ops(&seeded_unit_vectors(33, 1)[0]);
        let t0 = ops.j0.trace();
        for t in [0.5, 1.0, 2.0] {
            let j = operator_at_t(&ops, t, OperatorModel::Conjugation);
            assert!((j.trace() - t0).abs() < 1e-12);
        }
    }

    #[test]
    fn scalar_oscillator_is_exact() {
        // J ≡ λ Id, Y(0)=0, Y′(0)=e₁ → Y(t) = sin(√λ t)/√λ e₁
        let lam = 2.3f64;
        let ops = ReducedOperators::constant(SymMatrix6::scaled_identity(lam));
        let mut v0 = [0.0; 6];
        v0[0] = 1.0;
        let traj = solve_fields(&ops, [0.0; 6], v0, 3.0, 0.01, Method::ConstCoef, 1e-6).unwrap();
        for (i, &t) in traj.t.iter().enumerate() {
            let expect = (lam.sqrt() * t).sin() / lam.sqrt();
            assert!((traj.y[i][0] - expect).abs() < 1e-10, "t={t}");
            for c in 1..6 {
                assert!(traj.y[i][c].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constcoef_and_rk4_agree_on_m6() {
        for x in seeded_unit_vectors(34, 3) {
            let ops = m6_ops(&x);
            let y0 = [0.0; 6];
            let mut v0 = [0.0; 6];
            v0[1] = 1.0;
            v0[4] = -0.5;
            let t_max = 2.0 * std::f64::consts::PI;
            let a = solve_fields(&ops, y0, v0, t_max, 1e-3, Method::ConstCoef, 1e-6).unwrap();
            let b = solve_fields(&ops, y0, v0, t_max, 1e-3, Method::Rk4, 1e-6).unwrap();
            assert!(a.sup_distance(&b) < 1e-6);
        }
    }

    #[test]
    fn agreement_on_the_degenerate_axis_point() {
        // chain vanishes at e₁ but J⁰ does not; both solvers must agree
        let mut x = [0.0; 6];
        x[0] = 1.0;
        let ops = m6_ops(&x);
        let mut v0 = [0.0; 6];
        v0[2] = 1.0;
        let t_max = 2.0 * std::f64::consts::PI;
        let a = solve_fields(&ops, [0.0; 6], v0, t_max, 1e-3, Method::ConstCoef, 1e-6).unwrap();
        let b = solve_fields(&ops, [0.0; 6], v0, t_max, 1e-3, Method::Rk4, 1e-6).unwrap();
        assert!(a.sup_distance(&b) < 1e-6);
    }

    #[test]
    fn wronskian_is_conserved() {
        let ops = m6_ops(&seeded_unit_vectors(35, 1)[0]);
        let mut v1 = [0.0; 6];
        v1[0] = 1.0;
        let mut y2 = [0.0; 6];
        y2[3] = 0.7;
        let mut v2 = [0.0; 6];
        v2[5] = -0.2;
        let t_max = 2.0 * std::f64::consts::PI;
        for method in [Method::ConstCoef, Method::Rk4] {
            let a = solve_fields(&ops, [0.0; 6], v1, t_max, 1e-3, method, 1e-6).unwrap();
            let b = solve_fields(&ops, y2, v2, t_max, 1e-3, method, 1e-6).unwrap();
            assert!(a.wronskian_drift(&b) < 1e-8, "{method}");
        }
    }

    #[test]
    fn rejection_fires_on_a_hopeless_tolerance() {
        let ops = m6_ops(&seeded_unit_vectors(36, 1)[0]);
        let mut v0 = [0.0; 6];
        v0[0] = 1.0;
        let r = solve_fields(&ops, [0.0; 6], v0, 2.0, 0.5, Method::Rk4, 1e-16);
        assert!(r.is_err(), "coarse steps at 1e-16 tolerance must reject");
    }

    #[test]
    fn conjugate_points_of_constant_curvature_one() {
        let ops = ReducedOperators::constant(SymMatrix6::identity());
        let pts = conjugate_points(&ops, 4.0, 1e-10, 512);
        assert!(!pts.is_empty());
        assert!((pts[0].t - std::f64::consts::PI).abs() < 1e-8);
        assert_eq!(pts[0].multiplicity, 6);
    }

    #[test]
    fn flat_space_has_no_conjugate_points() {
        let ops = ReducedOperators::constant(SymMatrix6::zero());
        let pts = conjugate_points(&ops, 10.0, 1e-9, 512);
        assert!(pts.is_empty());
    }

    #[test]
    fn m6_conjugate_points_stable_under_grid_refinement() {
        let ops = m6_ops(&seeded_unit_vectors(37, 1)[0]);
        let a = conjugate_points(&ops, 12.0, 1e-9, 1024);
        let b = conjugate_points(&ops, 12.0, 1e-9, 2048);
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for (p, q) in a.iter().zip(b.iter()) {
            assert!((p.t - q.t).abs() < 1e-6);
            assert_eq!(p.multiplicity, q.multiplicity);
        }
    }

    #[test]
    fn operator_entries_are_trig_polynomials_in_the_lambda_frequencies() {
        let ops = m6_ops(&seeded_unit_vectors(38, 1)[0]);
        let resid = frequency_fit_residual(&ops, 64, 4.0 * std::f64::consts::PI);
        assert!(resid < 1e-6, "residual {resid}");
    }

    #[test]
    fn fundamental_solution_is_odd_under_geodesic_reversal() {
        // M_x(−t) = −M_{−x}(t): fields vanishing at 0 reverse oddly through
        // the reversed geodesic
        let (table, calib) = setup();
        let x = seeded_unit_vectors(39, 1)[0];
        let ops_fwd = ReducedOperators::from_calibration(calib, table, &x);
        let ops_rev = ReducedOperators::from_calibration(calib, table, &x.map(|v| -v));
        for t in [0.3f64, 1.1, 2.7] {
            let back = fundamental_at(&ops_fwd, -t);
            let rev = fundamental_at(&ops_rev, t).scale(-1.0);
            assert!(back.sub(&rev).max_abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn constant_operator_solutions_are_odd_in_time() {
        // with Λ = 0 the equation is even in t, so Y(−t) = −Y(t) literally
        let ops = ReducedOperators::constant(SymMatrix6::scaled_identity(1.7));
        let mut v0 = [0.0; 6];
        v0[0] = 1.0;
        v0[4] = -0.3;
        for t in [0.5f64, 1.25, 3.0] {
            let fwd = fundamental_at(&ops, t).matvec(&v0);
            let back = fundamental_at(&ops, -t).matvec(&v0);
            for c in 0..6 {
                assert!((back[c] + fwd[c]).abs() < 1e-10);
            }
        }
    }
}
