//! The closed-form covariant derivatives J⁽²⁾…J⁽⁵⁾ of the Jacobi operator at
//! t = 0 on M⁶ = U(3)/(U(1)×U(1)×U(1)), as 6×6 symmetric matrices of
//! polynomials in the tangent coordinates x₁…x₆.
//!
//! Two variants are first class and every consumer says which one it wants:
//!
//! * [`Variant::Printed`] is a token-for-token transcription of the published
//!   closed forms (coefficients, signs and groupings untouched).
//! * [`Variant::Repaired`] fixes the sign misprints of the published text.
//!
//! Two independent exact audits drive the repair:
//!
//! * the trace law — on a g.o. space tr J(t) is constant along every
//!   geodesic, so tr J⁽ᵏ⁾₀ must vanish identically for k ≥ 1; the printed
//!   forms violate this at k = 3, 4, 5, and unique minimal whole-entry sign
//!   flips (J³(2,2), J⁴(3,3), J⁵(2,2)) restore it ([`sign_repair_search`]);
//! * the isotropy law — the forms must commute with the rotations of the
//!   coordinate pairs {1,4},{2,5},{3,6} induced by the isotropy torus
//!   ([`audit_equivariance`]); this off-diagonal-sensitive constraint,
//!   together with exact symbolic cross-validation against the Lie
//!   reconstruction (`crossval`), pins five further sign slips inside single
//!   printed summands: J³(1,4), J³(2,4), J³(2,5), J³(4,5), J⁴(4,5), copied
//!   by the publication into the matching J⁵ entries through the exact
//!   relation J⁽⁵⁾ = −(5/8)·N·J⁽³⁾ + N²·B (N = Σxᵢ²).
//!
//! Every repair is a sign change of a printed group — never a coefficient
//! edit — and a J⁽³⁾ repair propagates to the matching J⁽⁵⁾ entry so the
//! decomposition survives exactly. [`ENTRY_CORRECTIONS`] lists the five
//! summand-level corrections with their provenance.

use crate::linalg::SymMatrix6;
use crate::poly::{norm_poly, parse_poly, DivOutcome, MultiPoly, PolyMatrix, NVARS};
use crate::qsqrt2::QSqrt2;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::OnceLock;

/// Which transcription a computation consumes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Printed,
    /// Minimal sign repair; the default for downstream geometry.
    #[default]
    Repaired,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Printed => write!(f, "printed"),
            Variant::Repaired => write!(f, "repaired"),
        }
    }
}

/// One derivative order J⁽ᵏ⁾₀ with its provenance.
#[derive(Clone, Debug)]
pub struct DerivativeMatrix {
    pub order: u8,
    pub variant: Variant,
    /// Whole-entry sign flips applied relative to the printed text
    /// (1-based entries; from the trace repair).
    pub flips: Vec<(usize, usize)>,
    /// Entries with a summand-level sign correction (1-based).
    pub corrections: Vec<(usize, usize)>,
    pub matrix: PolyMatrix,
}

pub const ORDERS: [u8; 4] = [2, 3, 4, 5];

fn order_slot(k: u8) -> usize {
    assert!((2..=5).contains(&k), "derivative order must be 2..=5");
    (k - 2) as usize
}

/// Build the order-k matrix in the requested variant.
pub fn build_derivative_matrix(k: u8, variant: Variant) -> DerivativeMatrix {
    let slot = order_slot(k);
    let matrix = match variant {
        Variant::Printed => printed_matrices()[slot].clone(),
        Variant::Repaired => repaired_matrices()[slot].clone(),
    };
    let (flips, corrections) = match variant {
        Variant::Printed => (Vec::new(), Vec::new()),
        Variant::Repaired => (
            canonical_repairs()
                .flips_for(k)
                .iter()
                .map(|&(i, j)| (i + 1, j + 1))
                .collect(),
            ENTRY_CORRECTIONS
                .iter()
                .filter(|c| c.k == k)
                .map(|c| (c.i, c.j))
                .collect(),
        ),
    };
    DerivativeMatrix {
        order: k,
        variant,
        flips,
        corrections,
        matrix,
    }
}

/// All entries the repaired variant touches, as (k, i, j) with 1-based
/// indices: the trace flips plus the summand corrections.
pub fn repaired_entry_set() -> Vec<(u8, usize, usize)> {
    let mut out: Vec<(u8, usize, usize)> = Vec::new();
    for &k in &ORDERS {
        for &(i, j) in canonical_repairs().flips_for(k) {
            out.push((k, i + 1, j + 1));
        }
    }
    for c in ENTRY_CORRECTIONS {
        out.push((c.k, c.i, c.j));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Shared reference to the order-k matrix (cheap; parsed once per process).
pub fn derivative_matrix(k: u8, variant: Variant) -> &'static PolyMatrix {
    let slot = order_slot(k);
    match variant {
        Variant::Printed => &printed_matrices()[slot],
        Variant::Repaired => &repaired_matrices()[slot],
    }
}

/// Numeric evaluation of J⁽ᵏ⁾₀ at a tangent vector.
pub fn eval_derivative(k: u8, variant: Variant, x: &[f64; NVARS]) -> SymMatrix6 {
    derivative_matrix(k, variant).eval_f64(x)
}

/// Exact evaluation over ℚ(√2).
pub fn eval_derivative_exact(
    k: u8,
    variant: Variant,
    x: &[QSqrt2; NVARS],
) -> crate::poly::ExactSym6 {
    derivative_matrix(k, variant).eval_exact(x)
}

/// Fully expanded trace polynomial Σᵢ J⁽ᵏ⁾ᵢᵢ.
pub fn trace_poly(k: u8, variant: Variant) -> MultiPoly {
    derivative_matrix(k, variant).trace()
}

/// Failure of the J⁽⁵⁾ = a·N·J⁽³⁾ + N²·B decomposition, naming the entry.
#[derive(Clone, Debug)]
pub struct DecomposeError {
    pub entry: (usize, usize),
    pub detail: String,
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J5 decomposition fails at entry ({}, {}): {}",
            self.entry.0 + 1,
            self.entry.1 + 1,
            self.detail
        )
    }
}

impl std::error::Error for DecomposeError {}

/// Verify entrywise that J⁽⁵⁾ = a·N·J⁽³⁾ + N²·B with a = −5/8, and return
/// (a, B). B carries the N²-term cubics with their 3/(32√2)-scale signs.
pub fn j5_decompose(variant: Variant) -> Result<(QSqrt2, PolyMatrix), DecomposeError> {
    let a = QSqrt2::from_ratio(-5, 8);
    let n = norm_poly();
    let n2 = n.mul(&n);
    let j3 = derivative_matrix(3, variant);
    let j5 = derivative_matrix(5, variant);
    let mut upper = Vec::new();
    for i in 0..NVARS {
        for j in i..NVARS {
            let expected_low = j3.entry(i, j).mul(&n).scale(&a);
            let residue = j5.entry(i, j).sub(&expected_low);
            let b = match residue.divexact(&n2).expect("N² is nonzero") {
                DivOutcome::Exact(b) => b,
                DivOutcome::NotDivisible { remainder, .. } => {
                    return Err(DecomposeError {
                        entry: (i, j),
                        detail: format!(
                            "J5 − (−5/8)·N·J3 is not divisible by N²; remainder has {} terms",
                            remainder.num_terms()
                        ),
                    });
                }
            };
            if i == j && !b.is_zero() {
                return Err(DecomposeError {
                    entry: (i, j),
                    detail: "diagonal of B must vanish".to_string(),
                });
            }
            upper.push(b);
        }
    }
    Ok((a, PolyMatrix::from_upper(upper)))
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

/// A point where a nonzero trace polynomial is exhibited numerically.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Exact coordinates, in ℚ(√2) text form.
    pub x: [String; NVARS],
    /// Exact trace value.
    pub value: String,
    /// Decimal rendering of the trace value.
    pub value_f64: f64,
}

/// Per-order trace audit result.
#[derive(Clone, Debug, Serialize)]
pub struct OrderAudit {
    pub k: u8,
    /// Symbolic verdict: does tr J⁽ᵏ⁾ vanish identically?
    pub trace_is_zero: bool,
    /// Number of terms left in the expanded trace polynomial.
    pub trace_terms: usize,
    /// Canonical text of the trace polynomial (empty when zero).
    pub trace_text: String,
    pub witnesses: Vec<Witness>,
    /// Minimal flip sets restoring trace ≡ 0 (1-based entries, order-tagged).
    pub suggested_flips: Vec<Vec<(u8, usize, usize)>>,
}

/// Trace-constancy audit across all four orders.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub variant: Variant,
    pub passed: bool,
    pub orders: Vec<OrderAudit>,
}

fn qs(s: &str) -> QSqrt2 {
    s.parse().expect("static QSqrt2 literal")
}

/// Candidate witness points; exact, small numerators, evaluated in order.
fn witness_candidates() -> Vec<[QSqrt2; NVARS]> {
    let w = |strs: [&str; 6]| strs.map(qs);
    vec![
        w(["1", "0", "1", "0", "1", "1"]),
        w(["0", "1/2*sqrt2", "0", "0", "0", "1/2*sqrt2"]),
        w(["1", "2", "0", "0", "1", "1"]),
        w(["1", "1", "1", "1", "1", "0"]),
        w(["1", "-1", "2", "1", "0", "1"]),
        w(["2", "1", "1", "0", "1", "3"]),
    ]
}

/// Audit a single order of one variant.
pub fn audit_order(k: u8, variant: Variant) -> OrderAudit {
    let trace = trace_poly(k, variant);
    let trace_is_zero = trace.is_zero();
    let mut witnesses = Vec::new();
    if !trace_is_zero {
        for cand in witness_candidates() {
            let value = trace.eval_exact(&cand);
            let value_f64 = value.to_f64();
            if value_f64.abs() > 1e-6 {
                witnesses.push(Witness {
                    x: cand.map(|c| c.to_string()),
                    value: value.to_string(),
                    value_f64,
                });
            }
            if witnesses.len() >= 3 {
                break;
            }
        }
        assert!(
            !witnesses.is_empty(),
            "nonzero trace at k={k} must come with a numeric witness"
        );
    }
    let suggested_flips = if trace_is_zero {
        vec![vec![]]
    } else {
        sign_repair_search(k, 1)
            .into_iter()
            .map(|fs| fs.one_based())
            .collect()
    };
    OrderAudit {
        k,
        trace_is_zero,
        trace_terms: trace.num_terms(),
        trace_text: if trace_is_zero {
            String::new()
        } else {
            trace.to_string()
        },
        witnesses,
        suggested_flips,
    }
}

/// Check tr J⁽ᵏ⁾ ≡ 0 for k = 2…5. Verdicts are symbolic; witnesses numeric.
pub fn audit_go_consistency(variant: Variant) -> AuditReport {
    let orders: Vec<OrderAudit> = ORDERS.iter().map(|&k| audit_order(k, variant)).collect();
    let passed = orders.iter().all(|o| o.trace_is_zero);
    AuditReport {
        variant,
        passed,
        orders,
    }
}

// ---------------------------------------------------------------------------
// isotropy equivariance audit
// ---------------------------------------------------------------------------

/// Infinitesimal equivariance defect of a symmetric polynomial matrix under
/// simultaneous rotations of the coordinate pairs {1,4},{2,5},{3,6} with
/// rates w = (w₁,w₂,w₃):
///
///   D(J, w) = Σ_a (ξx)_a ∂J/∂x_a − (r J − J r),
///
/// where ξ rotates each pair p at rate wₚ and r is the matching 6×6
/// generator. Any operator-valued form that is invariantly defined on the
/// flag manifold satisfies D = 0 for every w in the 2-plane of isotropy
/// rotations, so a nonzero defect is internal evidence of a misprint that
/// needs no external reconstruction at all.
pub fn equivariance_defect(m: &PolyMatrix, w: [i64; 3]) -> PolyMatrix {
    // directional derivative along ξ: δx_p = −wₚ x_{p+3}, δx_{p+3} = wₚ x_p
    let mut delta: Vec<MultiPoly> = Vec::with_capacity(NVARS);
    for p in 0..3 {
        delta.push(MultiPoly::var(p + 3).scale(&QSqrt2::from_int(-w[p])));
    }
    for p in 0..3 {
        delta.push(MultiPoly::var(p).scale(&QSqrt2::from_int(w[p])));
    }
    PolyMatrix::from_fn(|i, j| {
        let e = m.entry(i, j);
        let mut d = MultiPoly::zero();
        for (a, da) in delta.iter().enumerate() {
            if !da.is_zero() {
                d = d.add(&e.partial_derivative(a).mul(da));
            }
        }
        // (rJ − Jr)_ij with r[p][p+3] = −wₚ, r[p+3][p] = wₚ
        let mut c = MultiPoly::zero();
        for p in 0..3 {
            let wp = QSqrt2::from_int(w[p]);
            // row rotation: r_i· picks J entries
            if i == p {
                c = c.sub(&m.entry(p + 3, j).scale(&wp));
            }
            if i == p + 3 {
                c = c.add(&m.entry(p, j).scale(&wp));
            }
            // −(Jr)_ij = −J_ia r_aj
            if j == p + 3 {
                c = c.add(&m.entry(i, p).scale(&wp));
            }
            if j == p {
                c = c.sub(&m.entry(i, p + 3).scale(&wp));
            }
        }
        d.sub(&c)
    })
}

/// Equivariance audit of one order.
#[derive(Clone, Debug, Serialize)]
pub struct OrderEquivariance {
    pub k: u8,
    /// 1-based entries with a nonzero defect under some isotropy rotation.
    pub broken_entries: Vec<(usize, usize)>,
}

/// Isotropy-equivariance audit across orders.
#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceAudit {
    pub variant: Variant,
    /// Signs (s₁,s₂,s₃) of the rotation-rate relation s·w = 0 that cuts the
    /// isotropy 2-plane out of the three per-pair rotations; recovered from
    /// the order-2 matrix.
    pub plane_signs: [i64; 3],
    pub passed: bool,
    pub orders: Vec<OrderEquivariance>,
}

/// Two integer generators of the plane {w : s·w = 0}.
fn isotropy_generators(s: [i64; 3]) -> [[i64; 3]; 2] {
    [[s[1], -s[0], 0], [0, s[2], -s[1]]]
}

/// Check every order of a variant against the infinitesimal isotropy action.
///
/// The three per-pair rotation rates of an actual isotropy element satisfy
/// one signed linear relation s₁w₁+s₂w₂+s₃w₃ = 0 (the three root angles of
/// u(3) sum to zero up to orientation). The relation is recovered from J⁽²⁾,
/// whose printed form is internally consistent, and then imposed on the
/// higher orders.
pub fn audit_equivariance(variant: Variant) -> EquivarianceAudit {
    let j2 = derivative_matrix(2, variant);
    let mut plane = None;
    for s in [[1i64, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
        let ok = isotropy_generators(s)
            .iter()
            .all(|w| equivariance_defect(j2, *w).is_zero());
        if ok {
            plane = Some(s);
            break;
        }
    }
    let plane = plane.expect("the order-2 matrix must fix the isotropy plane");
    let gens = isotropy_generators(plane);
    let mut orders = Vec::new();
    for &k in &ORDERS {
        let m = derivative_matrix(k, variant);
        let mut broken = std::collections::BTreeSet::new();
        for w in &gens {
            let d = equivariance_defect(m, *w);
            for ((i, j), e) in d.entries_upper() {
                if !e.is_zero() {
                    broken.insert((i + 1, j + 1));
                }
            }
        }
        orders.push(OrderEquivariance {
            k,
            broken_entries: broken.into_iter().collect(),
        });
    }
    let passed = orders.iter().all(|o| o.broken_entries.is_empty());
    EquivarianceAudit {
        variant,
        plane_signs: plane,
        passed,
        orders,
    }
}

// ---------------------------------------------------------------------------
// sign repair
// ---------------------------------------------------------------------------

/// A set of whole-entry sign flips, each tagged with the order it applies to
/// (0-based entries internally).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSet {
    pub flips: Vec<(u8, usize, usize)>,
}

impl FlipSet {
    pub fn one_based(&self) -> Vec<(u8, usize, usize)> {
        self.flips
            .iter()
            .map(|&(k, i, j)| (k, i + 1, j + 1))
            .collect()
    }

    fn entries_for(&self, k: u8) -> Vec<(usize, usize)> {
        self.flips
            .iter()
            .filter(|&&(ord, _, _)| ord == k)
            .map(|&(_, i, j)| (i, j))
            .collect()
    }
}

/// Enumerate diagonal sign-flip sets of cardinality ≤ `max_flips` that make
/// tr J⁽ᵏ⁾ vanish identically, ordered by cardinality.
///
/// Off-diagonal flips never change the trace, so they cannot repair it and
/// are excluded from the search space. A diagonal flip at order 3 or 5 is
/// propagated to the matching entry of the partner order, because the exact
/// J⁽⁵⁾ = −(5/8)·N·J⁽³⁾ + N²·B relation ties the two diagonals together.
pub fn sign_repair_search(k: u8, max_flips: usize) -> Vec<FlipSet> {
    assert!(max_flips <= 4, "repair model allows at most 4 flips");
    let m = derivative_matrix(k, Variant::Printed);
    let trace = m.trace();
    let diag: Vec<MultiPoly> = (0..NVARS).map(|i| m.entry(i, i).clone()).collect();
    let two = QSqrt2::from_int(2);
    let mut out = Vec::new();
    for subset in 0u32..(1 << NVARS) {
        let size = subset.count_ones() as usize;
        if size > max_flips {
            continue;
        }
        // trace after flipping S: trace − 2·Σ_{i∈S} J_ii
        let mut t = trace.clone();
        for i in 0..NVARS {
            if subset & (1 << i) != 0 {
                t = t.sub(&diag[i].scale(&two));
            }
        }
        if t.is_zero() {
            let mut flips: Vec<(u8, usize, usize)> = Vec::new();
            for i in 0..NVARS {
                if subset & (1 << i) != 0 {
                    flips.push((k, i, i));
                    match k {
                        3 => flips.push((5, i, i)),
                        5 => flips.push((3, i, i)),
                        _ => {}
                    }
                }
            }
            out.push(FlipSet { flips });
        }
    }
    out.sort_by_key(|fs| fs.entries_for(k).len());
    out
}

/// Resolution of the repaired variant: the per-order flip sets actually
/// applied, or a diagnostic when no unique minimal repair exists.
#[derive(Clone, Debug)]
pub struct RepairResolution {
    /// 0-based flips per order slot (k = 2..=5).
    per_order: [Vec<(usize, usize)>; 4],
    pub unique: bool,
    pub diagnostic: Option<String>,
}

impl RepairResolution {
    pub fn flips_for(&self, k: u8) -> &[(usize, usize)] {
        &self.per_order[order_slot(k)]
    }
}

fn compute_repairs() -> RepairResolution {
    let mut per_order: [Vec<(usize, usize)>; 4] = Default::default();
    let mut unique = true;
    let mut diagnostic = None;
    for &k in &ORDERS {
        if trace_poly(k, Variant::Printed).is_zero() {
            continue;
        }
        // smallest repairs first; a unique minimal set is required
        let mut found: Option<FlipSet> = None;
        for budget in 1..=2usize {
            let sets = sign_repair_search(k, budget);
            let min_len = sets
                .iter()
                .map(|s| s.entries_for(k).len())
                .min()
                .unwrap_or(usize::MAX);
            let minimal: Vec<&FlipSet> = sets
                .iter()
                .filter(|s| s.entries_for(k).len() == min_len)
                .collect();
            match minimal.len() {
                0 => continue,
                1 => {
                    found = Some(minimal[0].clone());
                    break;
                }
                _ => {
                    unique = false;
                    diagnostic = Some(format!(
                        "order {k}: {} minimal flip sets restore the trace; refusing to pick",
                        minimal.len()
                    ));
                    break;
                }
            }
        }
        match found {
            Some(fs) if unique => {
                for (ord, i, j) in fs.flips {
                    per_order[order_slot(ord)].push((i, j));
                }
            }
            _ => {
                if diagnostic.is_none() {
                    unique = false;
                    diagnostic = Some(format!(
                        "order {k}: no flip set of size ≤ 2 restores the trace"
                    ));
                }
            }
        }
    }
    for flips in per_order.iter_mut() {
        flips.sort_unstable();
        flips.dedup();
    }
    RepairResolution {
        per_order,
        unique,
        diagnostic,
    }
}

/// The canonical repair used by [`Variant::Repaired`].
pub fn canonical_repairs() -> &'static RepairResolution {
    static CELL: OnceLock<RepairResolution> = OnceLock::new();
    CELL.get_or_init(compute_repairs)
}

// ---------------------------------------------------------------------------
// the transcribed entries
// ---------------------------------------------------------------------------

fn parse_order(strings: &[&str; 21]) -> PolyMatrix {
    let upper: Vec<MultiPoly> = strings
        .iter()
        .map(|s| parse_poly(s).unwrap_or_else(|e| panic!("bad closed-form entry: {e}\n{s}")))
        .collect();
    PolyMatrix::from_upper(upper)
}

fn printed_matrices() -> &'static [PolyMatrix; 4] {
    static CELL: OnceLock<[PolyMatrix; 4]> = OnceLock::new();
    CELL.get_or_init(parse_printed_fresh)
}

/// Parse the four printed tables from their text, bypassing the cache.
/// Exists so integrity checks can time a cold transcription pass.
pub fn parse_printed_fresh() -> [PolyMatrix; 4] {
    [
        parse_order(&J2_ENTRIES),
        parse_order(&J3_ENTRIES),
        parse_order(&J4_ENTRIES),
        parse_order(&J5_ENTRIES),
    ]
}

fn repaired_matrices() -> &'static [PolyMatrix; 4] {
    static CELL: OnceLock<[PolyMatrix; 4]> = OnceLock::new();
    CELL.get_or_init(|| {
        let repairs = canonical_repairs();
        let printed = printed_matrices();
        [2u8, 3, 4, 5].map(|k| {
            let mut m = printed[order_slot(k)].flip_signs(repairs.flips_for(k));
            for c in ENTRY_CORRECTIONS.iter().filter(|c| c.k == k) {
                m = m.replace_entry(
                    c.i - 1,
                    c.j - 1,
                    parse_poly(c.corrected).unwrap_or_else(|e| {
                        panic!("bad corrected entry at k={} ({},{}): {e}", c.k, c.i, c.j)
                    }),
                );
            }
            m
        })
    })
}

/// A summand-level sign correction of one published entry.
///
/// Each correction changes the sign of exactly one printed factor or summand
/// group; the corrected text is verified (in tests) to restore isotropy
/// equivariance and to agree exactly, as a polynomial, with the independent
/// Lie-theoretic reconstruction. The J⁵ corrections are the J³ corrections
/// transported through J⁽⁵⁾ = −(5/8)·N·J⁽³⁾ + N²·B; the N²-parts of the
/// published J⁵ are all correct.
#[derive(Clone, Copy, Debug)]
pub struct EntryCorrection {
    pub k: u8,
    /// 1-based entry indices.
    pub i: usize,
    pub j: usize,
    /// What changed relative to the printed text.
    pub note: &'static str,
    pub corrected: &'static str,
}

pub const ENTRY_CORRECTIONS: &[EntryCorrection] = &[
    EntryCorrection {
        k: 3,
        i: 1,
        j: 4,
        note: "x1*(x2*x6 - x3*x5) reads -x1*(x2*x6 + x3*x5)",
        corrected: "9/(16*sqrt2)*(x2^2-x3^2+x5^2-x6^2)*(-x1*(x2*x6+x3*x5) + x4*(x2*x3-x5*x6))",
    },
    EntryCorrection {
        k: 3,
        i: 2,
        j: 4,
        note: "first summand x6*(...) carries an overall minus sign",
        corrected: "3/(16*sqrt2)*(-x6*(x2^2*(4*x1^2-x5^2) + x4^2*(x1^2-4*x5^2) + (x1^2-x5^2)*(x1^2+7*x3^2+x5^2+7*x6^2)) \
         - x2*x3*x5*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2) - x4*x1*x3*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2))",
    },
    EntryCorrection {
        k: 3,
        i: 2,
        j: 5,
        note: "(x1*x3 + x4*x6) reads (x1*x3 - x4*x6)",
        corrected: "9/(16*sqrt2)*(x1^2-x3^2+x4^2-x6^2)*(x2*(x1*x6+x3*x4) - x5*(x1*x3-x4*x6))",
    },
    EntryCorrection {
        k: 3,
        i: 4,
        j: 5,
        note: "third summand +x5*x2*x6*(...) reads -x5*x2*x6*(...)",
        corrected: "3/(16*sqrt2)*(x3*(-x1^2*(x4^2+4*x5^2) + x2^2*(4*x4^2+x5^2) - (x1^2-x2^2)*(x1^2+x2^2+7*x3^2+7*x6^2)) \
         + x4*x1*x6*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) - x5*x2*x6*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    },
    EntryCorrection {
        k: 4,
        i: 4,
        j: 5,
        note: "+N*(3*x3^2-5*x6^2) reads -N*(3*x3^2-5*x6^2)",
        corrected: "3/64*(8*x6*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x1*x3*x5-x2*x3*x4+x4*x5*x6) \
         - x1*x2*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 - (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(3*x3^2-5*x6^2) \
         + 12*((x1^2+x4^2)*(x2^2+x5^2) - (x3^2+x6^2)^2)))",
    },
    EntryCorrection {
        k: 5,
        i: 1,
        j: 4,
        note: "copied J3(1,4) misprint",
        corrected: "-45/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x2^2-x3^2+x5^2-x6^2)*(-x1*(x2*x6+x3*x5) + x4*(x2*x3-x5*x6))",
    },
    EntryCorrection {
        k: 5,
        i: 2,
        j: 4,
        note: "copied J3(2,4) misprint; the N^2 summand is correct",
        corrected: "-3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x6*(x1^2-x5^2) + x3*(x1*x4+x2*x5)) \
         - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x6*(x2^2*(4*x1^2-x5^2) + x4^2*(x1^2-4*x5^2) \
         + (x1^2-x5^2)*(x1^2+7*x3^2+x5^2+7*x6^2)) - x2*x3*x5*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2) \
         - x4*x1*x3*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2))",
    },
    EntryCorrection {
        k: 5,
        i: 2,
        j: 5,
        note: "copied J3(2,5) misprint",
        corrected: "-45/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x3^2+x4^2-x6^2)*(x2*(x1*x6+x3*x4) - x5*(x1*x3-x4*x6))",
    },
    EntryCorrection {
        k: 5,
        i: 4,
        j: 5,
        note: "copied J3(4,5) misprint; the N^2 summand is correct",
        corrected: "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x3*(x2^2-x1^2) + x6*(x1*x4-x2*x5)) \
         - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x3*(-x1^2*(x4^2+4*x5^2) + x2^2*(4*x4^2+x5^2) \
         - (x1^2-x2^2)*(x1^2+x2^2+7*x3^2+7*x6^2)) + x4*x1*x6*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) \
         - x5*x2*x6*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    },
];

// Upper-triangle entries in row-major order:
// (1,1) (1,2) (1,3) (1,4) (1,5) (1,6) (2,2) (2,3) ... (5,6) (6,6).

const J2_ENTRIES: [&str; 21] = [
    // row 1
    "-3/4*(x4^2*(x2^2+x3^2+x5^2+x6^2) - 2*(x2*x6+x3*x5)^2)",
    "3/8*(x4*x5*(x1^2+x2^2+x4^2+x5^2) - 2*(x2*x6+x3*x5)*(x1*x6+x3*x4))",
    "3/8*(x4*x6*(x1^2+x3^2+x4^2+x6^2) - 2*(x2*x6+x3*x5)*(x1*x5+x2*x4))",
    "3/4*(x1*x4*(x2^2+x3^2+x5^2+x6^2) + 2*(x2*x6+x3*x5)*(x2*x3-x5*x6))",
    "-3/8*(x2*x4*(x1^2+x2^2+x4^2+x5^2) + 2*(x2*x6+x3*x5)*(x1*x3-x4*x6))",
    "-3/8*(x3*x4*(x1^2+x3^2+x4^2+x6^2) + 2*(x2*x6+x3*x5)*(x1*x2-x4*x5))",
    // row 2
    "-3/4*(x5^2*(x1^2+x3^2+x4^2+x6^2) - 2*(x1*x6+x3*x4)^2)",
    "3/8*(x5*x6*(x2^2+x3^2+x5^2+x6^2) - 2*(x1*x6+x3*x4)*(x1*x5+x2*x4))",
    "-3/8*(x1*x5*(x1^2+x2^2+x4^2+x5^2) + 2*(x1*x6+x3*x4)*(x2*x3-x5*x6))",
    "3/4*(x2*x5*(x1^2+x3^2+x4^2+x6^2) + 2*(x1*x6+x3*x4)*(x1*x3-x4*x6))",
    "-3/8*(x3*x5*(x2^2+x3^2+x5^2+x6^2) + 2*(x1*x6+x3*x4)*(x1*x2-x4*x5))",
    // row 3
    "-3/4*(x6^2*(x1^2+x2^2+x4^2+x5^2) - 2*(x1*x5+x2*x4)^2)",
    "-3/8*(x1*x6*(x1^2+x3^2+x4^2+x6^2) + 2*(x1*x5+x2*x4)*(x2*x3-x5*x6))",
    "-3/8*(x2*x6*(x2^2+x3^2+x5^2+x6^2) + 2*(x1*x5+x2*x4)*(x1*x3-x4*x6))",
    "3/4*(x3*x6*(x1^2+x2^2+x4^2+x5^2) + 2*(x1*x5+x2*x4)*(x1*x2-x4*x5))",
    // row 4
    "-3/4*(x1^2*(x2^2+x3^2+x5^2+x6^2) - 2*(x2*x3-x5*x6)^2)",
    "3/8*(x1*x2*(x1^2+x2^2+x4^2+x5^2) - 2*(x2*x3-x5*x6)*(x1*x3-x4*x6))",
    "3/8*(x1*x3*(x1^2+x3^2+x4^2+x6^2) - 2*(x2*x3-x5*x6)*(x1*x2-x4*x5))",
    // row 5
    "-3/4*(x2^2*(x1^2+x3^2+x4^2+x6^2) - 2*(x1*x3-x4*x6)^2)",
    "3/8*(x2*x3*(x2^2+x3^2+x5^2+x6^2) - 2*(x1*x3-x4*x6)*(x1*x2-x4*x5))",
    // row 6
    "-3/4*(x3^2*(x1^2+x2^2+x4^2+x5^2) - 2*(x1*x2-x4*x5)^2)",
];

const J3_ENTRIES: [&str; 21] = [
    // row 1
    "9/(8*sqrt2)*x4*(x2^2-x3^2+x5^2-x6^2)*(x2*x6+x3*x5)",
    "3/(16*sqrt2)*(x3*(x1^2*(x4^2-4*x5^2) + x2^2*(4*x4^2-x5^2) + (x4^2-x5^2)*(7*x3^2+x4^2+x5^2+7*x6^2)) \
     + x1*x4*x6*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) - x2*x5*x6*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    "3/(16*sqrt2)*(-x4*(x1*x5+x2*x4)*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2) \
     + x6*(x2*x6+x3*x5)*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2))",
    "9/(16*sqrt2)*(x2^2-x3^2+x5^2-x6^2)*(x1*(x2*x6-x3*x5) + x4*(x2*x3-x5*x6))",
    "3/(16*sqrt2)*(x4*(x1*x3-x4*x6)*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) \
     + x2*(x2*x6+x3*x5)*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    "3/(16*sqrt2)*(x5*(x1^2*(x4^2-4*x3^2) + x6^2*(4*x4^2-x3^2) + (x4^2-x3^2)*(7*x2^2+x3^2+x4^2+7*x5^2)) \
     - x1*x2*x4*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2) - x6*x2*x3*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2))",
    // row 2
    "9/(8*sqrt2)*x5*(x1^2-x3^2+x4^2-x6^2)*(x1*x6+x3*x4)",
    "3/(16*sqrt2)*(x5*(x1*x5+x2*x4)*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2) \
     - x6*(x1*x6+x3*x4)*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2))",
    "3/(16*sqrt2)*(x6*(x2^2*(4*x1^2-x5^2) + x4^2*(x1^2-4*x5^2) + (x1^2-x5^2)*(x1^2+7*x3^2+x5^2+7*x6^2)) \
     - x2*x3*x5*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2) - x4*x1*x3*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2))",
    "9/(16*sqrt2)*(x1^2-x3^2+x4^2-x6^2)*(x2*(x1*x6+x3*x4) - x5*(x1*x3+x4*x6))",
    "3/(16*sqrt2)*(x4*(x2^2*(4*x3^2-x5^2) + x6^2*(x3^2-4*x5^2) + (x3^2-x5^2)*(7*x1^2+x3^2+7*x4^2+x5^2)) \
     + x2*x1*x5*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2) + x6*x1*x3*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2))",
    // row 3
    "9/(8*sqrt2)*x6*(x1^2-x2^2+x4^2-x5^2)*(x1*x5+x2*x4)",
    "3/(16*sqrt2)*(x6*(x2*x3-x5*x6)*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2) \
     + x1*(x1*x5+x2*x4)*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2))",
    "3/(16*sqrt2)*(x6*(-x1*x3+x4*x6)*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2) \
     - x2*(x1*x5+x2*x4)*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2))",
    "9/(16*sqrt2)*(x1^2-x2^2+x4^2-x5^2)*(-x3*(x1*x5+x2*x4) + x6*(x1*x2-x4*x5))",
    // row 4
    "9/(8*sqrt2)*x1*(x2^2-x3^2+x5^2-x6^2)*(-x2*x3+x5*x6)",
    "3/(16*sqrt2)*(x3*(-x1^2*(x4^2+4*x5^2) + x2^2*(4*x4^2+x5^2) - (x1^2-x2^2)*(x1^2+x2^2+7*x3^2+7*x6^2)) \
     + x4*x1*x6*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) + x5*x2*x6*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    "3/(16*sqrt2)*(x1*(x1*x2-x4*x5)*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2) \
     - x3*(x2*x3-x5*x6)*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2))",
    // row 5
    "9/(8*sqrt2)*x2*(x1^2-x3^2+x4^2-x6^2)*(x1*x3-x4*x6)",
    "3/(16*sqrt2)*(x1*(-x2^2*(x5^2+4*x6^2) + x3^2*(4*x5^2+x6^2) - (x2^2-x3^2)*(7*x1^2+x2^2+x3^2+7*x4^2)) \
     + x5*x2*x4*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2) - x6*x3*x4*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2))",
    // row 6
    "9/(8*sqrt2)*x3*(x1^2-x2^2+x4^2-x5^2)*(-x1*x2+x4*x5)",
];

const J4_ENTRIES: [&str; 21] = [
    // row 1
    "3/32*(-8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x2*x6+x3*x5)^2 \
     + x4^2*((x1^2+7*x2^2+7*x3^2+x4^2+7*x5^2+7*x6^2)*(x2^2+x3^2+x5^2+x6^2) - 6*(x2^2+x5^2)*(x3^2+x6^2)))",
    "3/64*(8*x6*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x1*x3*x5+x2*x3*x4) \
     - x4*x5*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 - (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(3*x3^2-5*x6^2) \
     + 12*((x1^2+x4^2)*(x2^2+x5^2) - (x3^2+x6^2)^2)))",
    "3/64*(8*x5*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x1*x3*x5+x2*x3*x4) \
     - x4*x6*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-3*x2^2+5*x5^2) \
     + 12*((x1^2+x4^2)*(x3^2+x6^2) - (x2^2+x5^2)^2)))",
    "3/32*(8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x2*x3+x5*x6)*(x2*x6+x3*x5) \
     - x1*x4*((x1^2+x4^2)*(x2^2+x3^2+x5^2+x6^2) - 6*(x2^2+x5^2)*(x3^2+x6^2) + 7*(x2^2+x3^2+x5^2+x6^2)^2))",
    "3/64*(8*x3*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x1*x3*x5-x4*x5*x6) \
     + x2*x4*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(5*x3^2-3*x6^2) \
     + 12*((x1^2+x4^2)*(x2^2+x5^2) - (x3^2+x6^2)^2)))",
    "3/64*(8*x2*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x1*x3*x5-x4*x5*x6) \
     + x3*x4*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(5*x2^2-3*x5^2) \
     + 12*((x1^2+x4^2)*(x3^2+x6^2) - (x2^2+x5^2)^2)))",
    // row 2
    "3/32*(-8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x6+x3*x4)^2 \
     + x5^2*((7*x1^2+x2^2+7*x3^2+7*x4^2+x5^2+7*x6^2)*(x1^2+x3^2+x4^2+x6^2) - 6*(x1^2+x4^2)*(x3^2+x6^2)))",
    "3/64*(8*x4*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x1*x3*x5+x2*x3*x4) \
     - x5*x6*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 - (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(3*x1^2-5*x4^2) \
     + 12*((x2^2+x5^2)*(x3^2+x6^2) - (x1^2+x4^2)^2)))",
    "3/64*(8*x3*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x2*x3*x4-x4*x5*x6) \
     + x1*x5*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(5*x3^2-3*x6^2) \
     + 12*((x1^2+x4^2)*(x2^2+x5^2) - (x3^2+x6^2)^2)))",
    "3/32*(8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x1*x3+x4*x6)*(x1*x6+x3*x4) \
     - x2*x5*((x2^2+x5^2)*(x1^2+x3^2+x4^2+x6^2) - 6*(x1^2+x4^2)*(x3^2+x6^2) + 7*(x1^2+x3^2+x4^2+x6^2)^2))",
    "3/64*(8*x1*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2*x6+x2*x3*x4-x4*x5*x6) \
     + x3*x5*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(5*x1^2-3*x4^2) \
     + 12*((x2^2+x5^2)*(x3^2+x6^2) - (x1^2+x4^2)^2)))",
    // row 3
    "3/32*(8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x5+x2*x4)^2 \
     - x6^2*((7*x1^2+7*x2^2+x3^2+7*x4^2+7*x5^2+x6^2)*(x1^2+x2^2+x4^2+x5^2) - 6*(x1^2+x4^2)*(x2^2+x5^2)))",
    "3/64*(8*x2*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x3*x5+x2*x3*x4-x4*x5*x6) \
     + x1*x6*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(5*x2^2-3*x5^2) \
     + 12*((x1^2+x4^2)*(x3^2+x6^2) - (x2^2+x5^2)^2)))",
    "3/64*(8*x1*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x3*x5+x2*x3*x4-x4*x5*x6) \
     + x2*x6*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(5*x1^2-3*x4^2) \
     + 12*((x2^2+x5^2)*(x3^2+x6^2) - (x1^2+x4^2)^2)))",
    "3/32*(8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x1*x2+x4*x5)*(x1*x5+x2*x4) \
     - x3*x6*((x3^2+x6^2)*(x1^2+x2^2+x4^2+x5^2) - 6*(x1^2+x4^2)*(x2^2+x5^2) + 7*(x1^2+x2^2+x4^2+x5^2)^2))",
    // row 4
    "3/32*(-8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x2*x3-x5*x6)^2 \
     + x1^2*((x1^2+7*x2^2+7*x3^2+x4^2+7*x5^2+7*x6^2)*(x2^2+x3^2+x5^2+x6^2) - 6*(x2^2+x5^2)*(x3^2+x6^2)))",
    "3/64*(8*x6*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x1*x3*x5-x2*x3*x4+x4*x5*x6) \
     - x1*x2*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 + (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(3*x3^2-5*x6^2) \
     + 12*((x1^2+x4^2)*(x2^2+x5^2) - (x3^2+x6^2)^2)))",
    "3/64*(8*x5*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x1*x2*x6-x2*x3*x4+x4*x5*x6) \
     - x1*x3*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 - (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(3*x2^2-5*x5^2) \
     + 12*((x1^2+x4^2)*(x3^2+x6^2) - (x2^2+x5^2)^2)))",
    // row 5
    "3/32*(-8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x3-x4*x6)^2 \
     + x2^2*((7*x1^2+x2^2+7*x3^2+7*x4^2+x5^2+7*x6^2)*(x1^2+x3^2+x4^2+x6^2) - 6*(x1^2+x4^2)*(x3^2+x6^2)))",
    "3/64*(8*x4*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x1*x2*x6-x1*x3*x5+x4*x5*x6) \
     - x2*x3*((x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2 - (x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(3*x1^2-5*x4^2) \
     + 12*((x2^2+x5^2)*(x3^2+x6^2) - (x1^2+x4^2)^2)))",
    // row 6
    "3/32*(-8*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*x2-x4*x5)^2 \
     + x3^2*((7*x1^2+7*x2^2+x3^2+7*x4^2+7*x5^2+x6^2)*(x1^2+x2^2+x4^2+x5^2) - 6*(x1^2+x4^2)*(x2^2+x5^2)))",
];

const J5_ENTRIES: [&str; 21] = [
    // row 1
    "-45/(64*sqrt2)*x4*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x2^2-x3^2+x5^2-x6^2)*(x2*x6+x3*x5)",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x3*(x4^2-x5^2) + x6*(x1*x4-x2*x5)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x3*(x1^2*(x4^2-4*x5^2) + x2^2*(4*x4^2-x5^2) \
     + (x4^2-x5^2)*(7*x3^2+x4^2+x5^2+7*x6^2)) + x1*x4*x6*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) \
     - x2*x5*x6*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    "-3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x2*(x4^2-x6^2) + x5*(x1*x4-x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(-x4*(x1*x5+x2*x4)*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2) \
     + x6*(x2*x6+x3*x5)*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2))",
    "-45/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x2^2-x3^2+x5^2-x6^2)*(x1*(x2*x6-x3*x5) + x4*(x2*x3-x5*x6))",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x6*(x2^2-x4^2) + x3*(x1*x4+x2*x5)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x4*(x1*x3-x4*x6)*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) \
     + x2*(x2*x6+x3*x5)*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    "-3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x5*(x3^2-x4^2) + x2*(x1*x4+x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x5*(x1^2*(x4^2-4*x3^2) + x6^2*(4*x4^2-x3^2) \
     + (x4^2-x3^2)*(7*x2^2+x3^2+x4^2+7*x5^2)) - x1*x2*x4*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2) \
     - x6*x2*x3*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2))",
    // row 2
    "-45/(64*sqrt2)*x5*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x3^2+x4^2-x6^2)*(x1*x6+x3*x4)",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x1*(x5^2-x6^2) + x4*(x2*x5-x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x5*(x1*x5+x2*x4)*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2) \
     - x6*(x1*x6+x3*x4)*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2))",
    "-3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x6*(x1^2-x5^2) + x3*(x1*x4+x2*x5)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x6*(x2^2*(4*x1^2-x5^2) + x4^2*(x1^2-4*x5^2) \
     + (x1^2-x5^2)*(x1^2+7*x3^2+x5^2+7*x6^2)) - x2*x3*x5*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2) \
     - x4*x1*x3*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2))",
    "-45/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x3^2+x4^2-x6^2)*(x2*(x1*x6+x3*x4) - x5*(x1*x3+x4*x6))",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x4*(x3^2-x5^2) + x1*(x2*x5+x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x4*(x2^2*(4*x3^2-x5^2) + x6^2*(x3^2-4*x5^2) \
     + (x3^2-x5^2)*(7*x1^2+x3^2+7*x4^2+x5^2)) + x2*x1*x5*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2) \
     + x6*x1*x3*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2))",
    // row 3
    "-45/(64*sqrt2)*x6*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x2^2+x4^2-x5^2)*(x1*x5+x2*x4)",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x5*(x1^2-x6^2) + x2*(x1*x4+x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x6*(x2*x3-x5*x6)*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2) \
     + x1*(x1*x5+x2*x4)*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2))",
    "-3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x4*(x2^2-x6^2) + x1*(x2*x5+x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x6*(-x1*x3+x4*x6)*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2) \
     - x2*(x1*x5+x2*x4)*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2))",
    "-45/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x2^2+x4^2-x5^2)*(-x3*(x1*x5+x2*x4) + x6*(x1*x2-x4*x5))",
    // row 4
    "-45/(64*sqrt2)*x1*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x2^2-x3^2+x5^2-x6^2)*(-x2*x3+x5*x6)",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x3*(x2^2-x1^2) + x6*(x1*x4-x2*x5)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x3*(-x1^2*(x4^2+4*x5^2) + x2^2*(4*x4^2+x5^2) \
     - (x1^2-x2^2)*(x1^2+x2^2+7*x3^2+7*x6^2)) + x4*x1*x6*(x1^2+4*x2^2+7*x3^2+x4^2+4*x5^2+7*x6^2) \
     + x5*x2*x6*(4*x1^2+x2^2+7*x3^2+4*x4^2+x5^2+7*x6^2))",
    "-3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x2*(x3^2-x1^2) + x5*(x1*x4-x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*(x1*x2-x4*x5)*(x1^2+7*x2^2+4*x3^2+x4^2+7*x5^2+4*x6^2) \
     - x3*(x2*x3-x5*x6)*(4*x1^2+7*x2^2+x3^2+4*x4^2+7*x5^2+x6^2))",
    // row 5
    "-45/(64*sqrt2)*x2*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x3^2+x4^2-x6^2)*(x1*x3-x4*x6)",
    "3/(32*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)^2*(x1*(x3^2-x2^2) + x4*(x2*x5-x3*x6)) \
     - 15/(128*sqrt2)*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1*(-x2^2*(x5^2+4*x6^2) + x3^2*(4*x5^2+x6^2) \
     - (x2^2-x3^2)*(7*x1^2+x2^2+x3^2+7*x4^2)) + x5*x2*x4*(7*x1^2+x2^2+4*x3^2+7*x4^2+x5^2+4*x6^2) \
     - x6*x3*x4*(7*x1^2+4*x2^2+x3^2+7*x4^2+4*x5^2+x6^2))",
    // row 6
    "-45/(64*sqrt2)*x3*(x1^2+x2^2+x3^2+x4^2+x5^2+x6^2)*(x1^2-x2^2+x4^2-x5^2)*(-x1*x2+x4*x5)",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{upper_index, Homogeneity};

    fn golden_point() -> [QSqrt2; 6] {
        ["0", "1/2*sqrt2", "0", "0", "0", "1/2*sqrt2"].map(qs)
    }

    #[test]
    fn all_entries_parse_and_are_homogeneous() {
        for &k in &ORDERS {
            let m = derivative_matrix(k, Variant::Printed);
            for ((i, j), e) in m.entries_upper() {
                assert_eq!(
                    e.homogeneity(),
                    Homogeneity::Degree(k as u32 + 2),
                    "entry ({},{}) of order {} is not homogeneous of degree {}",
                    i + 1,
                    j + 1,
                    k,
                    k + 2
                );
            }
        }
    }

    #[test]
    fn printed_j2_entry_11_matches_text() {
        let m = derivative_matrix(2, Variant::Printed);
        let expect = parse_poly("-3/4*(x4^2*(x2^2+x3^2+x5^2+x6^2) - 2*(x2*x6+x3*x5)^2)").unwrap();
        assert_eq!(m.entry(0, 0), &expect);
    }

    #[test]
    fn printed_j3_entry_66_matches_text() {
        let m = derivative_matrix(3, Variant::Printed);
        let expect = parse_poly("9/(8*sqrt2)*x3*(x1^2-x2^2+x4^2-x5^2)*(-x1*x2+x4*x5)").unwrap();
        assert_eq!(m.entry(5, 5), &expect);
    }

    #[test]
    fn j5_entry_11_contains_norm_factor() {
        let m = derivative_matrix(5, Variant::Printed);
        match m.entry(0, 0).divexact(&norm_poly()).unwrap() {
            DivOutcome::Exact(_) => {}
            DivOutcome::NotDivisible { .. } => panic!("J5(1,1) must contain the factor N"),
        }
    }

    #[test]
    fn eval_j2_at_e1_is_zero() {
        let zero = eval_derivative(2, Variant::Printed, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn golden_j2_exact() {
        let vals = eval_derivative_exact(2, Variant::Printed, &golden_point());
        for i in 0..6 {
            for j in i..6 {
                let expect = match (i, j) {
                    (0, 0) => qs("3/8"),
                    (2, 2) | (4, 4) | (2, 4) => qs("-3/16"),
                    _ => QSqrt2::zero(),
                };
                assert_eq!(
                    vals.entry(i, j),
                    &expect,
                    "J2 golden entry ({},{})",
                    i + 1,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn golden_j3_exact() {
        let vals = eval_derivative_exact(3, Variant::Printed, &golden_point());
        for i in 0..6 {
            for j in i..6 {
                let expect = match (i, j) {
                    (0, 2) | (0, 4) => qs("3/16"),
                    _ => QSqrt2::zero(),
                };
                assert_eq!(
                    vals.entry(i, j),
                    &expect,
                    "J3 golden entry ({},{})",
                    i + 1,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn golden_j4_and_j5_entries() {
        let v4 = eval_derivative_exact(4, Variant::Printed, &golden_point());
        assert_eq!(v4.entry(0, 0), &qs("-3/16"));
        let v5 = eval_derivative_exact(5, Variant::Printed, &golden_point());
        assert_eq!(v5.entry(0, 2), &qs("-3/32"));
    }

    #[test]
    fn trace2_vanishes_symbolically() {
        assert!(trace_poly(2, Variant::Printed).is_zero());
    }

    #[test]
    fn trace3_has_the_product_form() {
        let t = trace_poly(3, Variant::Printed);
        let expect = parse_poly("9/(4*sqrt2)*(x1^2-x3^2+x4^2-x6^2)*(x1*x5*x6+x3*x4*x5)").unwrap();
        assert_eq!(t, expect);
        // spot witness from the audit contract
        let w = ["1", "0", "1", "0", "1", "1"].map(qs);
        assert_eq!(t.eval_exact(&w), qs("-9/8*sqrt2")); // −9/(4√2) = −(9/8)√2
    }

    #[test]
    fn trace5_is_minus_five_eighths_n_trace3() {
        let t5 = trace_poly(5, Variant::Printed);
        let expect = trace_poly(3, Variant::Printed)
            .mul(&norm_poly())
            .scale(&qs("-5/8"));
        assert_eq!(t5, expect);
    }

    #[test]
    fn j5_decomposition_both_variants() {
        for variant in [Variant::Printed, Variant::Repaired] {
            let (a, b) = j5_decompose(variant).expect("decomposition must succeed");
            assert_eq!(a, qs("-5/8"));
            for i in 0..6 {
                assert!(b.entry(i, i).is_zero(), "diag(B) must vanish");
            }
            // B(1,2) as read off the N²-term
            let expect = parse_poly("3/(32*sqrt2)*(x3*(x4^2-x5^2) + x6*(x1*x4-x2*x5))").unwrap();
            assert_eq!(b.entry(0, 1), &expect, "B(1,2) for {variant}");
            // B(1,1) has no N² term
            assert!(b.entry(0, 0).is_zero());
        }
    }

    #[test]
    fn repair_search_k3_finds_the_22_flip() {
        let sets = sign_repair_search(3, 1);
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].flips, vec![(3, 1, 1), (5, 1, 1)]);
    }

    #[test]
    fn repair_search_k4_confirms_the_33_flip_symbolically() {
        let sets = sign_repair_search(4, 1);
        assert_eq!(
            sets.len(),
            1,
            "flip of entry (3,3) must zero the k=4 trace symbolically"
        );
        assert_eq!(sets[0].flips, vec![(4, 2, 2)]);
    }

    #[test]
    fn repair_search_k2_returns_the_empty_set() {
        let sets = sign_repair_search(2, 1);
        assert!(sets.iter().any(|s| s.flips.is_empty()));
    }

    #[test]
    fn repaired_variant_passes_the_audit() {
        let report = audit_go_consistency(Variant::Repaired);
        assert!(
            report.passed,
            "repaired traces must vanish: {:?}",
            report
                .orders
                .iter()
                .map(|o| (o.k, o.trace_is_zero))
                .collect::<Vec<_>>()
        );
        assert!(canonical_repairs().unique);
    }

    #[test]
    fn equivariance_audit_printed_vs_repaired() {
        let printed = audit_equivariance(Variant::Printed);
        assert_eq!(printed.plane_signs, [1, 1, 1]);
        assert!(!printed.passed);
        // the order-2 matrix is internally consistent
        assert!(printed.orders[0].broken_entries.is_empty());
        // the k=4 defect implicates the diagonal flip and the (4,5) slip
        let k4: &OrderEquivariance = &printed.orders[2];
        assert!(k4.broken_entries.contains(&(3, 3)));
        assert!(k4.broken_entries.contains(&(4, 5)));

        let repaired = audit_equivariance(Variant::Repaired);
        assert!(
            repaired.passed,
            "repaired forms must be isotropy-equivariant: {:?}",
            repaired
                .orders
                .iter()
                .map(|o| (o.k, o.broken_entries.clone()))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn repaired_entry_set_is_the_misprint_inventory() {
        let set = repaired_entry_set();
        let expect = vec![
            (3u8, 1usize, 4usize),
            (3, 2, 2),
            (3, 2, 4),
            (3, 2, 5),
            (3, 4, 5),
            (4, 3, 3),
            (4, 4, 5),
            (5, 1, 4),
            (5, 2, 2),
            (5, 2, 4),
            (5, 2, 5),
            (5, 4, 5),
        ];
        assert_eq!(set, expect);
    }

    #[test]
    fn corrections_are_homogeneous_and_differ_from_print_by_sign_slips() {
        for c in ENTRY_CORRECTIONS {
            let p = parse_poly(c.corrected).unwrap();
            assert_eq!(p.homogeneity(), Homogeneity::Degree(c.k as u32 + 2));
            let printed = derivative_matrix(c.k, Variant::Printed);
            let diff = printed.entry(c.i - 1, c.j - 1).sub(&p);
            assert!(!diff.is_zero(), "a correction must change the entry");
            // a sign slip flips a sub-sum: printed − corrected = 2·(flipped part),
            // so every monomial of the diff appears in the printed entry
            for (m, _) in diff.terms() {
                assert!(
                    !printed.entry(c.i - 1, c.j - 1).coeff(m).is_zero(),
                    "correction k={} ({},{}) introduces a foreign monomial",
                    c.k,
                    c.i,
                    c.j
                );
            }
        }
    }

    #[test]
    fn printed_variant_fails_the_audit_at_3_4_5() {
        let report = audit_go_consistency(Variant::Printed);
        assert!(!report.passed);
        for o in &report.orders {
            match o.k {
                2 => assert!(o.trace_is_zero),
                _ => {
                    assert!(!o.trace_is_zero);
                    assert!(!o.witnesses.is_empty());
                    for w in &o.witnesses {
                        assert!(w.value_f64.abs() > 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn golden_k4_witness_value() {
        // tr J⁽⁴⁾ at the golden point is −3/16 (= −3/16 − 3/32 + 3/32)
        let t = trace_poly(4, Variant::Printed);
        assert_eq!(t.eval_exact(&golden_point()), qs("-3/16"));
    }

    #[test]
    fn homogeneity_scaling_numeric() {
        // eval(k, λx) = λ^{ k+2 } eval(k, x)
        let x = [0.3, -0.2, 0.45, 0.1, -0.7, 0.52];
        let lam = 1.37f64;
        let lx = x.map(|v| v * lam);
        for &k in &ORDERS {
            let a = eval_derivative(k, Variant::Printed, &lx);
            let b = eval_derivative(k, Variant::Printed, &x).scale(lam.powi(k as i32 + 2));
            assert!(a.sub(&b).max_abs() <= 1e-12 * b.max_abs().max(1.0), "k={k}");
        }
    }

    #[test]
    fn flip_signs_indexing() {
        let m = derivative_matrix(3, Variant::Printed);
        let f = m.flip_signs(&[(1, 1)]);
        assert_eq!(f.entry(1, 1), &m.entry(1, 1).neg());
        assert_eq!(f.entry(0, 0), m.entry(0, 0));
        let _ = upper_index(1, 1);
    }
}
