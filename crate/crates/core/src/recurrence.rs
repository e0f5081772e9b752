//! Discovery and verification of the constant-coefficient linear dependence
//! among the covariant derivatives of the Jacobi operator — the Jacobi
//! osculating rank.
//!
//! For unit-speed tangent vectors the chain J⁽¹⁾, J⁽²⁾, … eventually
//! satisfies J⁽ᵖ⁺¹⁾ = Σᵢ aᵢ J⁽ⁱ⁾ with coefficients independent of the
//! geodesic. The solver stacks vectorized chains over many sampled unit
//! vectors, finds the smallest p for which the least-squares fit closes with
//! an x-independent coefficient vector, and cross-checks the result on held
//! out samples, on shifted chains, and against a Krylov computation of the
//! minimal-polynomial degree of the commutator map.

use crate::derivatives::{derivative_matrix, j5_decompose, Variant};
use crate::lie::{BracketTable, Calibration, M_DIM};
use crate::linalg::{lstsq, Mat, SymMatrix6};
use crate::samples::seeded_unit_vectors;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Upper-triangle flattening with off-diagonal weight √2, so the Euclidean
/// inner product of two images equals the Frobenius inner product of the
/// matrices.
pub fn vectorize_sym(m: &SymMatrix6) -> [f64; 21] {
    let mut out = [0.0; 21];
    let mut idx = 0;
    for i in 0..6 {
        for j in i..6 {
            out[idx] = if i == j {
                m.0[i][j]
            } else {
                std::f64::consts::SQRT_2 * m.0[i][j]
            };
            idx += 1;
        }
    }
    out
}

/// Which chain the solver consumes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankSource {
    /// The calibrated Lie reconstruction; full chain available.
    Oracle,
    /// The published matrices only: J⁽²⁾…J⁽⁵⁾ plus the decomposition
    /// residue B, with the dependence of J⁽⁵⁾ on {J⁽³⁾, B} as the target.
    Published,
}

/// An accepted constant-coefficient recurrence.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Recurrence {
    pub source: RankSource,
    /// Order p: J⁽ᵖ⁺¹⁾ = Σ_{i=1..p} aᵢ J⁽ⁱ⁾ on unit vectors.
    pub order: usize,
    /// Coefficients a₁…a_p (for the published source: the coefficients of
    /// J⁽³⁾ and B in the J⁽⁵⁾ dependence).
    pub coefficients: Vec<f64>,
    /// Nearest rationals with denominator ≤ 1024, as text.
    pub coefficients_rational: Vec<String>,
    /// Relative residual of the fit on the training samples.
    pub fit_residual: f64,
    /// Relative residual on a disjoint seeded sample.
    pub holdout_residual: f64,
    /// Max coefficient deviation between two disjoint half-sample fits.
    pub coefficient_spread: f64,
    pub samples_used: usize,
    pub degenerate_skipped: usize,
    pub seed: u64,
}

/// Failure diagnostics of the rank search.
#[derive(Clone, Debug)]
pub enum RankError {
    NoDependence {
        k_max: usize,
        /// Best relative residual per candidate order p.
        residuals: Vec<f64>,
        /// Singular values of the stacked system at the last p tried.
        singular_values: Vec<f64>,
    },
    TooFewSamples {
        provided: usize,
        required: usize,
        singular_values: Vec<f64>,
    },
}

impl fmt::Display for RankError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankError::NoDependence {
                k_max,
                residuals,
                singular_values,
            } => write!(
                f,
                "no constant-coefficient dependence up to order {k_max}; \
                 residuals {residuals:?}, singular values {singular_values:?}"
            ),
            RankError::TooFewSamples {
                provided,
                required,
                singular_values,
            } => write!(
                f,
                "rank decision ill-conditioned: {provided} usable samples \
                 (need at least {required}); singular values {singular_values:?}"
            ),
        }
    }
}

impl std::error::Error for RankError {}

/// Vectorized chain [vec(J⁰), …, vec(J⁽ᴷ⁾)] of a reduced operator pair.
pub fn chain_from_operators(lambda: &Mat, j0: &SymMatrix6, k_max: usize) -> Vec<[f64; 21]> {
    let mut mats: Vec<Mat> = Vec::with_capacity(k_max + 1);
    mats.push(j0.to_mat());
    for k in 0..k_max {
        mats.push(lambda.commutator(&mats[k]));
    }
    mats.iter()
        .map(|m| vectorize_sym(&SymMatrix6::from_mat(m)))
        .collect()
}

/// Chains at sampled unit vectors; degenerate samples (vanishing derivative
/// chain, e.g. pure root directions) are skipped and counted.
fn sampled_chains(
    calib: &Calibration,
    table: &BracketTable,
    seed: u64,
    n: usize,
    k_max: usize,
) -> (Vec<Vec<[f64; 21]>>, usize) {
    let mut chains = Vec::new();
    let mut degenerate = 0usize;
    for x in seeded_unit_vectors(seed, n) {
        let (lambda, j0) = calib.published_frame_operators(table, &x);
        let chain = chain_from_operators(&lambda, &j0, k_max);
        let scale = chain[1..]
            .iter()
            .map(|v| v.iter().fold(0.0f64, |a, &b| a.max(b.abs())))
            .fold(0.0f64, f64::max);
        if scale < 1e-12 {
            degenerate += 1;
            continue;
        }
        chains.push(chain);
    }
    (chains, degenerate)
}

fn stack_system(chains: &[Vec<[f64; 21]>], p: usize, shift: usize) -> (Mat, Vec<f64>) {
    let rows = chains.len() * 21;
    let mut a = Mat::zeros(rows, p);
    let mut b = vec![0.0; rows];
    for (s, chain) in chains.iter().enumerate() {
        for r in 0..21 {
            let row = s * 21 + r;
            for i in 1..=p {
                a[(row, i - 1)] = chain[i + shift][r];
            }
            b[row] = chain[p + 1 + shift][r];
        }
    }
    (a, b)
}

fn relative_residual(a: &Mat, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.matvec(x);
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in 0..b.len() {
        num += (ax[i] - b[i]) * (ax[i] - b[i]);
        den += b[i] * b[i];
    }
    (num / den.max(1e-300)).sqrt()
}

/// Nearest rational p/q with q ≤ `max_den`, rendered as text.
pub fn nearest_rational(x: f64, max_den: i64) -> String {
    let mut best = (x.round() as i64, 1i64);
    let mut best_err = (x - best.0 as f64).abs();
    for q in 2..=max_den {
        let p = (x * q as f64).round() as i64;
        let err = (x - p as f64 / q as f64).abs();
        if err < best_err * (1.0 - 1e-12) {
            best = (p, q);
            best_err = err;
        }
        if best_err == 0.0 {
            break;
        }
    }
    let (p, q) = best;
    if q == 1 {
        format!("{p}")
    } else {
        format!("{p}/{q}")
    }
}

/// Find the smallest p with J⁽ᵖ⁺¹⁾ in the constant-coefficient span of
/// {J⁽¹⁾…J⁽ᵖ⁾} across unit samples. Tangent vectors are normalized to unit
/// speed before fitting; homogeneity restores the general case.
pub fn find_recurrence(
    source: RankSource,
    k_max: usize,
    n_samples: usize,
    tol: f64,
    seed: u64,
    calib: &Calibration,
    table: &BracketTable,
) -> Result<Recurrence, RankError> {
    match source {
        RankSource::Oracle => find_oracle_recurrence(k_max, n_samples, tol, seed, calib, table),
        RankSource::Published => find_published_recurrence(n_samples, tol, seed),
    }
}

fn find_oracle_recurrence(
    k_max: usize,
    n_samples: usize,
    tol: f64,
    seed: u64,
    calib: &Calibration,
    table: &BracketTable,
) -> Result<Recurrence, RankError> {
    assert!((2..=11).contains(&k_max), "k_max must be in 2..=11");
    let required = 2 * (k_max + 1);
    let (chains, degenerate) = sampled_chains(calib, table, seed, n_samples, k_max + 1);
    if chains.len() < required {
        let p = k_max.saturating_sub(1).max(1);
        let sv = if !chains.is_empty() {
            let (a, _) = stack_system(&chains, p.min(chains.len() * 21), 0);
            a.singular_values()
        } else {
            vec![]
        };
        return Err(RankError::TooFewSamples {
            provided: chains.len(),
            required,
            singular_values: sv,
        });
    }

    let mut residuals = Vec::new();
    let mut last_sv = Vec::new();
    for p in 1..k_max {
        let (a, b) = stack_system(&chains, p, 0);
        let sol = lstsq(&a, &b);
        let rel = relative_residual(&a, &sol.x, &b);
        residuals.push(rel);
        last_sv = sol.singular_values.clone();
        if rel < tol {
            // x-independence: two disjoint half-sample fits must agree
            let half = chains.len() / 2;
            let (a1, b1) = stack_system(&chains[..half], p, 0);
            let (a2, b2) = stack_system(&chains[half..], p, 0);
            let s1 = lstsq(&a1, &b1);
            let s2 = lstsq(&a2, &b2);
            let spread =
                s1.x.iter()
                    .zip(s2.x.iter())
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0f64, f64::max);

            // held-out residual on a disjoint seed
            let (hold, _) =
                sampled_chains(calib, table, seed ^ 0x9e37_79b9_7f4a_7c15, n_samples, p + 1);
            let (ah, bh) = stack_system(&hold, p, 0);
            let holdout = relative_residual(&ah, &sol.x, &bh);

            return Ok(Recurrence {
                source: RankSource::Oracle,
                order: p,
                coefficients: sol.x.clone(),
                coefficients_rational: sol.x.iter().map(|&c| nearest_rational(c, 1024)).collect(),
                fit_residual: rel,
                holdout_residual: holdout,
                coefficient_spread: spread,
                samples_used: chains.len(),
                degenerate_skipped: degenerate,
                seed,
            });
        }
    }
    Err(RankError::NoDependence {
        k_max,
        residuals,
        singular_values: last_sv,
    })
}

/// Published-forms-only span consideration: J⁽⁵⁾ against {J⁽³⁾, B} on unit
/// vectors, where B is the N²-residue of the decomposition. This is exact:
/// J⁽⁵⁾ = −(5/8)·J⁽³⁾ + 1·B at ‖x‖ = 1.
fn find_published_recurrence(
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<Recurrence, RankError> {
    let (_, b_matrix) = j5_decompose(Variant::Repaired).expect("decomposition holds");
    let j3 = derivative_matrix(3, Variant::Repaired);
    let j5 = derivative_matrix(5, Variant::Repaired);

    let mut rows_a: Vec<[f64; 2]> = Vec::new();
    let mut rows_b: Vec<f64> = Vec::new();
    let mut degenerate = 0usize;
    let mut used = 0usize;
    for x in seeded_unit_vectors(seed, n_samples) {
        let v3 = vectorize_sym(&j3.eval_f64(&x));
        let v5 = vectorize_sym(&j5.eval_f64(&x));
        let vb = vectorize_sym(&b_matrix.eval_f64(&x));
        let scale = v5.iter().fold(0.0f64, |a, &c| a.max(c.abs()));
        if scale < 1e-12 {
            degenerate += 1;
            continue;
        }
        used += 1;
        for r in 0..21 {
            rows_a.push([v3[r], vb[r]]);
            rows_b.push(v5[r]);
        }
    }
    let a = Mat::from_fn(rows_a.len(), 2, |i, j| rows_a[i][j]);
    let sol = lstsq(&a, &rows_b);
    let rel = relative_residual(&a, &sol.x, &rows_b);
    if rel > tol.max(1e-10) {
        return Err(RankError::NoDependence {
            k_max: 5,
            residuals: vec![rel],
            singular_values: sol.singular_values,
        });
    }
    Ok(Recurrence {
        source: RankSource::Published,
        order: 2,
        coefficients: sol.x.clone(),
        coefficients_rational: sol.x.iter().map(|&c| nearest_rational(c, 1024)).collect(),
        fit_residual: rel,
        holdout_residual: rel,
        coefficient_spread: 0.0,
        samples_used: used,
        degenerate_skipped: degenerate,
        seed,
    })
}

/// Verification report for an accepted recurrence.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Residual on a fresh disjoint sample.
    pub fresh_residual: f64,
    /// Residuals of the shifted relations J⁽ᵖ⁺¹⁺ᵐ⁾ = Σ aᵢ J⁽ⁱ⁺ᵐ⁾, m = 1..3;
    /// their smallness is the "constant" in constant osculating rank.
    pub shifted_residuals: Vec<f64>,
    /// Residual of the ‖x‖-graded relation on non-unit samples
    /// (aᵢ → aᵢ‖x‖^{p+1−i}).
    pub rescaled_residual: f64,
    pub fresh_seed: u64,
}

/// Re-verify a recurrence on fresh samples, on shifted chains, and on
/// rescaled (non-unit) tangent vectors.
pub fn verify_recurrence(
    rec: &Recurrence,
    fresh_seed: u64,
    n_samples: usize,
    calib: &Calibration,
    table: &BracketTable,
) -> VerifyReport {
    assert_eq!(
        rec.source,
        RankSource::Oracle,
        "verification runs on the oracle chain"
    );
    let p = rec.order;
    let shifts = 3usize;
    let (chains, _) = sampled_chains(calib, table, fresh_seed, n_samples, p + 1 + shifts);

    let (a, b) = stack_system(&chains, p, 0);
    let fresh_residual = relative_residual(&a, &rec.coefficients, &b);

    let mut shifted_residuals = Vec::new();
    for m in 1..=shifts {
        let (a, b) = stack_system(&chains, p, m);
        shifted_residuals.push(relative_residual(&a, &rec.coefficients, &b));
    }

    // rescaled: J^{p+1}(r·u) = Σ aᵢ r^{p+1−i} J^{i}(r·u)
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    let radii = [0.5f64, 1.3, 2.0];
    for (s, x) in seeded_unit_vectors(fresh_seed ^ 0x5bf0_3635, 24)
        .iter()
        .enumerate()
    {
        let r = radii[s % radii.len()];
        let scaled: [f64; M_DIM] = x.map(|v| r * v);
        let (lambda, j0) = calib.published_frame_operators(table, &scaled);
        let chain = chain_from_operators(&lambda, &j0, p + 1);
        for row in 0..21 {
            let mut lhs = chain[p + 1][row];
            for i in 1..=p {
                lhs -= rec.coefficients[i - 1] * r.powi((p + 1 - i) as i32) * chain[i][row];
            }
            num += lhs * lhs;
            den += chain[p + 1][row] * chain[p + 1][row];
        }
    }
    let rescaled_residual = (num / den.max(1e-300)).sqrt();

    VerifyReport {
        fresh_residual,
        shifted_residuals,
        rescaled_residual,
        fresh_seed,
    }
}

/// Degree of the minimal polynomial of ad_Λ on the cyclic subspace generated
/// by J⁽¹⁾ = [Λ, J⁽⁰⁾], by Krylov iteration with a relative singular-value
/// gap of 1e−8. The recurrence order must equal this degree.
///
/// The cyclic subspace of J⁽⁰⁾ itself carries one extra dimension — the
/// stationary (ad-kernel) component of J⁽⁰⁾, which never enters the
/// derivative chain — so the rank is read off the ad-image.
pub fn krylov_rank(x: &[f64; M_DIM], calib: &Calibration, table: &BracketTable) -> usize {
    let (lambda, j0) = calib.published_frame_operators(table, x);
    let chain = chain_from_operators(&lambda, &j0, 12);
    let a = Mat::from_fn(21, 12, |i, j| chain[j + 1][i]);
    let sv = a.singular_values();
    let top = sv[0].max(1e-300);
    sv.iter().take_while(|&&s| s > 1e-8 * top).count()
}
