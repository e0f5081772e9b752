//! First-principles reconstruction on u(3) = h ⊕ m.
//!
//! The basis of m is aligned with the three 2-dimensional root spaces of the
//! flag manifold, one per off-diagonal position of a 3×3 skew-Hermitian
//! matrix:
//!
//! ```text
//! index  element            root space
//! 0      A₁₂ = E₁₂ − E₂₁    (1,2)
//! 1      A₁₃ = E₁₃ − E₃₁    (1,3)
//! 2      A₂₃ = E₂₃ − E₃₂    (2,3)
//! 3      B₁₂ = i(E₁₂+E₂₁)   (1,2)
//! 4      B₁₃ = i(E₁₃+E₃₁)   (1,3)
//! 5      B₂₃ = i(E₂₃+E₃₂)   (2,3)
//! ```
//!
//! plus h-indices 6, 7, 8 for iE₁₁, iE₂₂, iE₃₃. All structure constants are
//! integers; they are computed once from the matrix realization, not typed in
//! by hand.
//!
//! With the bi-invariant form the space is naturally reductive, so the
//! Levi-Civita curvature at the origin is a bracket expression and the
//! difference tensor Λ_x = ½·P_m∘ad(x)|_m turns the covariant derivative
//! chain of the Jacobi operator into iterated commutators:
//! J⁽ᵏ⁺¹⁾ = ε(Λ_x J⁽ᵏ⁾ − J⁽ᵏ⁾Λ_x), because the canonical connection
//! parallelizes the curvature and Λ_x x = 0.
//!
//! The calibration search aligns this oracle with the published closed forms:
//! a bijection of the three coordinate pairs {1,4},{2,5},{3,6} onto the root
//! spaces, one orientation sign per pair, an overall curvature sign, the
//! chain sign ε, a metric scale s solved in closed form from one golden
//! entry, and per-order constants c₂…c₅ expected to be 1.

use crate::derivatives::{eval_derivative, Variant};
use crate::linalg::{Mat, SymMatrix6};
use crate::samples::{rational_to_f64, rational_unit_points, seeded_unit_vectors};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::OnceLock;

pub const M_DIM: usize = 6;
pub const H_DIM: usize = 3;
pub const G_DIM: usize = 9;

// ---------------------------------------------------------------------------
// matrix realization and structure constants
// ---------------------------------------------------------------------------

/// 3×3 matrix of Gaussian integers (re, im).
type Gm = [[(i64, i64); 3]; 3];

fn gm_zero() -> Gm {
    [[(0, 0); 3]; 3]
}

fn gm_commutator(a: &Gm, b: &Gm) -> Gm {
    // a*b − b*a over Gaussian integers
    let mut out = gm_zero();
    for i in 0..3 {
        for j in 0..3 {
            let mut re = 0i64;
            let mut im = 0i64;
            for k in 0..3 {
                let (ar, ai) = a[i][k];
                let (br, bi) = b[k][j];
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
                let (ar, ai) = b[i][k];
                let (br, bi) = a[k][j];
                re -= ar * br - ai * bi;
                im -= ar * bi + ai * br;
            }
            out[i][j] = (re, im);
        }
    }
    out
}

/// Off-diagonal positions of the three root spaces, in basis order.
const ROOT_POS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn basis_matrix(idx: usize) -> Gm {
    let mut m = gm_zero();
    match idx {
        0..=2 => {
            let (i, j) = ROOT_POS[idx];
            m[i][j] = (1, 0);
            m[j][i] = (-1, 0);
        }
        3..=5 => {
            let (i, j) = ROOT_POS[idx - 3];
            m[i][j] = (0, 1);
            m[j][i] = (0, 1);
        }
        6..=8 => {
            m[idx - 6][idx - 6] = (0, 1);
        }
        _ => panic!("basis index out of range"),
    }
    m
}

/// Exact coordinates of a skew-Hermitian Gaussian-integer matrix in the
/// basis; panics if the matrix ever leaves the span (it cannot for brackets
/// of basis elements, and the check documents that).
fn decompose(w: &Gm) -> [i64; G_DIM] {
    let mut c = [0i64; G_DIM];
    for r in 0..3 {
        let (i, j) = ROOT_POS[r];
        c[r] = w[i][j].0;
        c[r + 3] = w[i][j].1;
    }
    for a in 0..3 {
        c[a + 6] = w[a][a].1;
    }
    let mut back = gm_zero();
    for (k, &coef) in c.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        let bm = basis_matrix(k);
        for i in 0..3 {
            for j in 0..3 {
                back[i][j].0 += coef * bm[i][j].0;
                back[i][j].1 += coef * bm[i][j].1;
            }
        }
    }
    assert_eq!(&back, w, "bracket left the span of the basis");
    c
}

type FullTable = [[[i64; G_DIM]; G_DIM]; G_DIM];

/// Integer structure-constant tables of u(3) in the fixed basis, plus the
/// root-space metric scales.
#[derive(Clone, Debug)]
pub struct BracketTable {
    /// full[i][j] = coordinates of [e_i, e_j].
    full: &'static FullTable,
    /// Metric scales (s₁, s₂, s₃) of the three root spaces.
    pub metric: [f64; 3],
}

impl BracketTable {
    /// Coordinates of [e_i, e_j].
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[i64; G_DIM] {
        &self.full[i][j]
    }

    /// [x, y] for full 9-coordinate vectors.
    pub fn bracket(&self, x: &[f64; G_DIM], y: &[f64; G_DIM]) -> [f64; G_DIM] {
        let mut out = [0.0; G_DIM];
        for i in 0..G_DIM {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..G_DIM {
                if y[j] == 0.0 {
                    continue;
                }
                let c = &self.full[i][j];
                let f = x[i] * y[j];
                for k in 0..G_DIM {
                    if c[k] != 0 {
                        out[k] += f * c[k] as f64;
                    }
                }
            }
        }
        out
    }

    /// Inner product on m with the root-space scales.
    pub fn inner_m(&self, u: &[f64; M_DIM], v: &[f64; M_DIM]) -> f64 {
        let mut s = 0.0;
        for r in 0..3 {
            s += self.metric[r] * (u[r] * v[r] + u[r + 3] * v[r + 3]);
        }
        s
    }
}

/// Build the table; `metric` are the positive root-space scales (s₁,s₂,s₃).
/// The structure constants themselves are metric-independent.
pub fn build_bracket_table(metric: [f64; 3]) -> BracketTable {
    assert!(
        metric.iter().all(|&s| s > 0.0),
        "metric scales must be positive"
    );
    static CONSTS: OnceLock<FullTable> = OnceLock::new();
    let full = CONSTS.get_or_init(|| {
        let mats: Vec<Gm> = (0..G_DIM).map(basis_matrix).collect();
        let mut full = [[[0i64; G_DIM]; G_DIM]; G_DIM];
        for i in 0..G_DIM {
            for j in 0..G_DIM {
                full[i][j] = decompose(&gm_commutator(&mats[i], &mats[j]));
            }
        }
        full
    });
    BracketTable { full, metric }
}

/// An element of u(3) split into tangent (m) and isotropy (h) coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieElement {
    pub m: [f64; M_DIM],
    pub h: [f64; H_DIM],
}

impl LieElement {
    pub fn from_m(m: [f64; M_DIM]) -> Self {
        LieElement { m, h: [0.0; H_DIM] }
    }

    pub fn coords(&self) -> [f64; G_DIM] {
        let mut c = [0.0; G_DIM];
        c[..M_DIM].copy_from_slice(&self.m);
        c[M_DIM..].copy_from_slice(&self.h);
        c
    }

    pub fn from_coords(c: &[f64; G_DIM]) -> Self {
        let mut m = [0.0; M_DIM];
        let mut h = [0.0; H_DIM];
        m.copy_from_slice(&c[..M_DIM]);
        h.copy_from_slice(&c[M_DIM..]);
        LieElement { m, h }
    }

    pub fn bracket(&self, other: &LieElement, table: &BracketTable) -> LieElement {
        LieElement::from_coords(&table.bracket(&self.coords(), &other.coords()))
    }
}

// ---------------------------------------------------------------------------
// generic scalar so each geometric formula exists exactly once
// ---------------------------------------------------------------------------

/// Minimal field interface shared by f64 and exact rationals.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div_i64(&self, n: i64) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_i64(&self, n: i64) -> Self {
        self / n as f64
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_i64(&self, n: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(n))
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type M6<T> = [[T; M_DIM]; M_DIM];

fn m6_zero<T: Scalar>() -> M6<T> {
    std::array::from_fn(|_| std::array::from_fn(|_| T::zero()))
}

fn m6_mul<T: Scalar>(a: &M6<T>, b: &M6<T>) -> M6<T> {
    let mut out = m6_zero::<T>();
    for i in 0..M_DIM {
        for k in 0..M_DIM {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..M_DIM {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

fn m6_commutator<T: Scalar>(a: &M6<T>, b: &M6<T>) -> M6<T> {
    let ab = m6_mul(a, b);
    let ba = m6_mul(b, a);
    std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j].sub(&ba[i][j])))
}

/// m-part and h-part of [e_j, x] for x ∈ m.
fn ad_basis<T: Scalar>(table: &BracketTable, j: usize, x: &[T; M_DIM]) -> ([T; M_DIM], [T; H_DIM]) {
    let mut um: [T; M_DIM] = std::array::from_fn(|_| T::zero());
    let mut uh: [T; H_DIM] = std::array::from_fn(|_| T::zero());
    for i in 0..M_DIM {
        if x[i].is_zero() {
            continue;
        }
        let c = table.bracket_basis(j, i);
        for k in 0..M_DIM {
            if c[k] != 0 {
                um[k] = um[k].add(&x[i].mul(&T::from_i64(c[k])));
            }
        }
        for a in 0..H_DIM {
            if c[M_DIM + a] != 0 {
                uh[a] = uh[a].add(&x[i].mul(&T::from_i64(c[M_DIM + a])));
            }
        }
    }
    (um, uh)
}

/// m-part of [u, x] for u, x ∈ m.
fn bracket_mm_m<T: Scalar>(table: &BracketTable, u: &[T; M_DIM], x: &[T; M_DIM]) -> [T; M_DIM] {
    let mut out: [T; M_DIM] = std::array::from_fn(|_| T::zero());
    for i in 0..M_DIM {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..M_DIM {
            if x[j].is_zero() {
                continue;
            }
            let c = table.bracket_basis(i, j);
            let f = u[i].mul(&x[j]);
            for k in 0..M_DIM {
                if c[k] != 0 {
                    out[k] = out[k].add(&f.mul(&T::from_i64(c[k])));
                }
            }
        }
    }
    out
}

/// [z, x] for z ∈ h, x ∈ m (lands in m).
fn bracket_hm<T: Scalar>(table: &BracketTable, z: &[T; H_DIM], x: &[T; M_DIM]) -> [T; M_DIM] {
    let mut out: [T; M_DIM] = std::array::from_fn(|_| T::zero());
    for a in 0..H_DIM {
        if z[a].is_zero() {
            continue;
        }
        for j in 0..M_DIM {
            if x[j].is_zero() {
                continue;
            }
            let c = table.bracket_basis(M_DIM + a, j);
            let f = z[a].mul(&x[j]);
            for k in 0..M_DIM {
                if c[k] != 0 {
                    out[k] = out[k].add(&f.mul(&T::from_i64(c[k])));
                }
            }
        }
    }
    out
}

/// Λ_x = ½·P_m∘ad(x)|_m, the difference tensor between the canonical and
/// Levi-Civita connections. Linear in x, skew, and Λ_x x = 0.
pub fn lambda_matrix<T: Scalar>(table: &BracketTable, x: &[T; M_DIM]) -> M6<T> {
    let mut l = m6_zero::<T>();
    for j in 0..M_DIM {
        // column j = ½ [x, e_j]_m = −½ [e_j, x]_m
        let (um, _) = ad_basis(table, j, x);
        for (k, um_k) in um.iter().enumerate() {
            l[k][j] = um_k.neg().div_i64(2);
        }
    }
    l
}

/// Naturally reductive curvature
/// `R(X,Y)Z = ¼[X,[Y,Z]_m]_m − ¼[Y,[X,Z]_m]_m − ½[[X,Y]_m,Z]_m − [[X,Y]_h,Z]`
/// for X, Y, Z ∈ m, in the convention with ⟨R(X,Y)Y,X⟩ ≥ 0 on normal metrics.
pub fn curvature<T: Scalar>(
    table: &BracketTable,
    x: &[T; M_DIM],
    y: &[T; M_DIM],
    z: &[T; M_DIM],
) -> [T; M_DIM] {
    let yz = bracket_mm_m(table, y, z);
    let xz = bracket_mm_m(table, x, z);
    let t1 = bracket_mm_m(table, x, &yz);
    let t2 = bracket_mm_m(table, y, &xz);
    // full [x,y] including its h-part
    let mut xy_m: [T; M_DIM] = std::array::from_fn(|_| T::zero());
    let mut xy_h: [T; H_DIM] = std::array::from_fn(|_| T::zero());
    for i in 0..M_DIM {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..M_DIM {
            if y[j].is_zero() {
                continue;
            }
            let c = table.bracket_basis(i, j);
            let f = x[i].mul(&y[j]);
            for k in 0..M_DIM {
                if c[k] != 0 {
                    xy_m[k] = xy_m[k].add(&f.mul(&T::from_i64(c[k])));
                }
            }
            for a in 0..H_DIM {
                if c[M_DIM + a] != 0 {
                    xy_h[a] = xy_h[a].add(&f.mul(&T::from_i64(c[M_DIM + a])));
                }
            }
        }
    }
    let t3 = bracket_mm_m(table, &xy_m, z);
    let t4 = bracket_hm(table, &xy_h, z);
    std::array::from_fn(|k| {
        t1[k]
            .sub(&t2[k])
            .div_i64(4)
            .sub(&t3[k].div_i64(2))
            .sub(&t4[k])
    })
}

/// Jacobi operator J⁽⁰⁾ with J⁽⁰⁾X = R(X, x)x, as a 6×6 matrix.
/// Specializing the curvature to Y = Z = x leaves
/// `J⁽⁰⁾X = −¼[[X,x]_m, x]_m − [[X,x]_h, x]`.
pub fn jacobi_operator<T: Scalar>(table: &BracketTable, x: &[T; M_DIM]) -> M6<T> {
    let mut out = m6_zero::<T>();
    for j in 0..M_DIM {
        let (um, uh) = ad_basis(table, j, x);
        let a = bracket_mm_m(table, &um, x);
        let b = bracket_hm(table, &uh, x);
        for k in 0..M_DIM {
            out[k][j] = a[k].div_i64(4).add(&b[k]).neg();
        }
    }
    out
}

/// Derivative chain [J⁽⁰⁾, …, J⁽ᴷ⁾] via J⁽ᵏ⁺¹⁾ = ε(Λ J⁽ᵏ⁾ − J⁽ᵏ⁾Λ).
pub fn derivative_chain<T: Scalar>(
    table: &BracketTable,
    x: &[T; M_DIM],
    k_max: usize,
    epsilon: i8,
) -> Vec<M6<T>> {
    assert!(k_max <= 12, "chain depth limited to 12");
    let lambda = lambda_matrix(table, x);
    let mut chain = Vec::with_capacity(k_max + 1);
    chain.push(jacobi_operator(table, x));
    for k in 0..k_max {
        let mut next = m6_commutator(&lambda, &chain[k]);
        if epsilon < 0 {
            for row in next.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.neg();
                }
            }
        }
        chain.push(next);
    }
    chain
}

pub fn m6_to_mat(m: &M6<f64>) -> Mat {
    Mat::from_fn(M_DIM, M_DIM, |i, j| m[i][j])
}

pub fn m6_to_sym(m: &M6<f64>) -> SymMatrix6 {
    SymMatrix6::from_mat(&m6_to_mat(m))
}

// ---------------------------------------------------------------------------
// calibration against the closed forms
// ---------------------------------------------------------------------------

/// Discrete part of a calibration candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateKey {
    /// Pair p (coordinates p+1, p+4) is mapped onto root space `assignment[p]`.
    pub assignment: [usize; 3],
    /// Orientation flip of the second (B-axis) coordinate of each pair.
    pub conjugation: [bool; 3],
    /// Overall curvature sign.
    pub curvature_sign: i8,
    /// Chain convention sign ε.
    pub epsilon: i8,
}

impl CandidateKey {
    /// Our m-index and sign for published coordinate p (0-based).
    fn map_coord(&self, p: usize) -> (usize, f64) {
        let pair = p % 3;
        let axis = p / 3;
        let idx = self.assignment[pair] + 3 * axis;
        let sign = if axis == 1 && self.conjugation[pair] {
            -1.0
        } else {
            1.0
        };
        (idx, sign)
    }

    /// Published coordinates → our m-coordinates (orthogonal part only).
    pub fn to_ours(&self, x: &[f64; M_DIM]) -> [f64; M_DIM] {
        let mut v = [0.0; M_DIM];
        for p in 0..M_DIM {
            let (idx, sign) = self.map_coord(p);
            v[idx] = sign * x[p];
        }
        v
    }

    /// Conjugate an operator matrix from our frame to the published frame.
    pub fn to_published_frame(&self, m: &M6<f64>) -> M6<f64> {
        let mut out = [[0.0; M_DIM]; M_DIM];
        for p in 0..M_DIM {
            let (ip, sp) = self.map_coord(p);
            for q in 0..M_DIM {
                let (iq, sq) = self.map_coord(q);
                out[p][q] = sp * sq * m[ip][iq];
            }
        }
        out
    }
}

impl fmt::Display for CandidateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs->roots {:?}, conj {:?}, curvature {:+}, epsilon {:+}",
            self.assignment, self.conjugation, self.curvature_sign, self.epsilon
        )
    }
}

/// Residual record for one evaluated candidate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub key: CandidateKey,
    /// Max relative entry residual over the sample; unsolvable candidates
    /// carry `None`.
    pub residual: Option<f64>,
    pub scale: Option<f64>,
    pub order_constants: Option<[f64; 4]>,
}

/// A closed-form entry that disagrees between oracle and target.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryMismatch {
    pub k: u8,
    /// 1-based entry indices.
    pub i: usize,
    pub j: usize,
    pub max_relative_error: f64,
}

/// Outcome of the calibration search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    pub key: CandidateKey,
    /// Metric scale s: the published normalization equals the oracle's
    /// bi-invariant form −½tr(XY) on m multiplied by s.
    pub scale: f64,
    /// Per-order constants c₂…c₅; 1 means the convention matches exactly.
    pub order_constants: [f64; 4],
    pub residual_max: f64,
    pub per_order_residual: [f64; 4],
    pub matching: bool,
    pub tol: f64,
    pub variant: Variant,
    pub seed: u64,
    pub sample_count: usize,
    pub degenerate_skipped: usize,
    /// Entries whose residual exceeds tol for the best candidate.
    pub worst_entries: Vec<EntryMismatch>,
    /// Residual of every discrete candidate evaluated.
    pub candidates: Vec<CandidateRecord>,
}

impl Calibration {
    /// Published-frame Λ̃ and J̃⁰ for a tangent vector in published coordinates; the
    /// derivative chain of this pair reproduces the closed forms, and the
    /// Jacobi operator along the geodesic is J(t) = e^{tΛ̃} J̃⁰ e^{−tΛ̃}.
    pub fn published_frame_operators(
        &self,
        table: &BracketTable,
        x: &[f64; M_DIM],
    ) -> (Mat, SymMatrix6) {
        let v = self.key.to_ours(x);
        let lam = lambda_matrix(table, &v);
        let j0 = jacobi_operator(table, &v);
        let lam_p = self.key.to_published_frame(&lam);
        let j0_p = self.key.to_published_frame(&j0);
        let sl = self.key.epsilon as f64 / self.scale.sqrt();
        let s0 = self.key.curvature_sign as f64 / self.scale;
        let lam_mat = Mat::from_fn(M_DIM, M_DIM, |i, j| sl * lam_p[i][j]);
        let j0_mat = Mat::from_fn(M_DIM, M_DIM, |i, j| s0 * j0_p[i][j]);
        (lam_mat, SymMatrix6::from_mat(&j0_mat))
    }
}

/// The golden evaluation point (0, 1/√2, 0, 0, 0, 1/√2).
pub const GOLDEN_X: [f64; 6] = [
    0.0,
    std::f64::consts::FRAC_1_SQRT_2,
    0.0,
    0.0,
    0.0,
    std::f64::consts::FRAC_1_SQRT_2,
];

/// Nonvanishing closed-form entries at the golden point, per order
/// (0-based indices, exact dyadic values).
fn golden_entries(k: u8) -> &'static [(usize, usize, f64)] {
    match k {
        2 => &[
            (0, 0, 0.375),
            (2, 2, -0.1875),
            (4, 4, -0.1875),
            (2, 4, -0.1875),
        ],
        3 => &[(0, 2, 0.1875), (0, 4, 0.1875)],
        4 => &[(0, 0, -0.1875)],
        5 => &[(0, 2, -0.09375)],
        _ => unreachable!(),
    }
}

fn all_candidate_keys() -> Vec<CandidateKey> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut keys = Vec::with_capacity(192);
    for assignment in PERMS {
        for conj_bits in 0..8u8 {
            let conjugation = [conj_bits & 1 != 0, conj_bits & 2 != 0, conj_bits & 4 != 0];
            for curvature_sign in [1i8, -1] {
                for epsilon in [1i8, -1] {
                    keys.push(CandidateKey {
                        assignment,
                        conjugation,
                        curvature_sign,
                        epsilon,
                    });
                }
            }
        }
    }
    keys
}

struct CandidateFit {
    scale: f64,
    c: [f64; 4],
    residual: f64,
    per_order: [f64; 4],
    degenerate: usize,
}

/// Published-frame chain prediction (orders 0..=k_max) for a candidate, with the
/// scale power folded in but not the per-order constants.
fn predict(
    key: &CandidateKey,
    table: &BracketTable,
    scale: f64,
    x: &[f64; M_DIM],
    k_max: usize,
) -> Vec<M6<f64>> {
    let v = key.to_ours(x);
    let chain = derivative_chain(table, &v, k_max, key.epsilon);
    let sigma = key.curvature_sign as f64;
    chain
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let p = key.to_published_frame(m);
            let f = sigma * scale.powf(-((k as f64) + 2.0) / 2.0);
            let mut out = [[0.0; M_DIM]; M_DIM];
            for i in 0..M_DIM {
                for j in 0..M_DIM {
                    out[i][j] = f * p[i][j];
                }
            }
            out
        })
        .collect()
}

fn fit_candidate(
    key: &CandidateKey,
    table: &BracketTable,
    published: &[Vec<SymMatrix6>; 4],
    samples: &[[f64; M_DIM]],
    mut worst: Option<&mut Vec<f64>>,
) -> Option<CandidateFit> {
    // solve the scale from a golden k=2 entry: app = σ s⁻² (chain in frame)
    let golden_pred = predict(key, table, 1.0, &GOLDEN_X, 5);
    let mut scale = None;
    for &(i, j, app) in golden_entries(2) {
        let m = golden_pred[2][i][j];
        if m.abs() > 1e-6 {
            let s2 = m / app;
            if s2 > 0.0 {
                scale = Some(s2.sqrt());
            }
            break;
        }
    }
    let scale = scale?;

    // per-order constants from one golden entry each (c₂ = 1 by the choice
    // of s; kept explicit as a check)
    let mut c = [1.0f64; 4];
    for &k in &[3u8, 4, 5] {
        let mut ck = None;
        for &(i, j, app) in golden_entries(k) {
            let m = golden_pred[k as usize][i][j] * scale.powf(-((k as f64) + 2.0) / 2.0);
            if m.abs() > 1e-9 {
                ck = Some(app / m);
                break;
            }
        }
        c[(k - 2) as usize] = ck?;
    }

    // residual over the full sample with the solved constants
    let mut per_order = [0.0f64; 4];
    let mut degenerate = 0usize;
    for (si, x) in samples.iter().enumerate() {
        let pred = predict(key, table, scale, x, 5);
        for (slot, &k) in [2usize, 3, 4, 5].iter().enumerate() {
            let app = &published[slot][si];
            let denom = app.max_abs();
            if denom < 1e-12 {
                degenerate += 1;
                continue;
            }
            let mut err = 0.0f64;
            for i in 0..M_DIM {
                for j in 0..M_DIM {
                    let d = (c[slot] * pred[k][i][j] - app.0[i][j]).abs();
                    err = err.max(d);
                    if let Some(w) = worst.as_deref_mut() {
                        let idx = slot * 36 + i * 6 + j;
                        w[idx] = w[idx].max(d / denom);
                    }
                }
            }
            per_order[slot] = per_order[slot].max(err / denom);
        }
    }
    Some(CandidateFit {
        scale,
        c,
        residual: per_order.iter().fold(0.0f64, |a, &b| a.max(b)),
        per_order,
        degenerate,
    })
}

/// Calibration sample: the 64 fixed rational unit points first, then seeded
/// pseudorandom unit vectors up to `n` in total.
pub fn calibration_samples(seed: u64, n: usize) -> Vec<[f64; M_DIM]> {
    let mut samples: Vec<[f64; M_DIM]> = rational_unit_points()
        .iter()
        .map(rational_to_f64)
        .take(n)
        .collect();
    if n > samples.len() {
        let extra = n - samples.len();
        samples.extend(seeded_unit_vectors(seed, extra));
    }
    samples
}

/// Exhaustive search over the 192 discrete candidates; the winner minimizes
/// the max relative entry residual, ties broken toward order constants
/// closest to 1. Every candidate's residual is recorded.
pub fn calibrate(
    variant: Variant,
    tol: f64,
    seed: u64,
    n_samples: usize,
    table: &BracketTable,
) -> Calibration {
    let samples = calibration_samples(seed, n_samples);
    let published: [Vec<SymMatrix6>; 4] = [2u8, 3, 4, 5].map(|k| {
        samples
            .iter()
            .map(|x| eval_derivative(k, variant, x))
            .collect()
    });

    let mut records = Vec::new();
    let mut best: Option<(CandidateKey, CandidateFit)> = None;
    for key in all_candidate_keys() {
        let fit = fit_candidate(&key, table, &published, &samples, None);
        records.push(CandidateRecord {
            key,
            residual: fit.as_ref().map(|f| f.residual),
            scale: fit.as_ref().map(|f| f.scale),
            order_constants: fit.as_ref().map(|f| f.c),
        });
        if let Some(f) = fit {
            let better = match &best {
                None => true,
                Some((_, b)) => {
                    f.residual < b.residual * (1.0 - 1e-12)
                        || (close(f.residual, b.residual) && c_distance(&f.c) < c_distance(&b.c))
                }
            };
            if better {
                best = Some((key, f));
            }
        }
    }

    let (key, fit) = best.expect("at least one candidate must be solvable");
    // re-run the winner tracking per-entry residuals
    let mut worst_grid = vec![0.0f64; 4 * 36];
    let _ = fit_candidate(&key, table, &published, &samples, Some(&mut worst_grid));
    let mut worst_entries: Vec<EntryMismatch> = Vec::new();
    for slot in 0..4 {
        for i in 0..M_DIM {
            for j in i..M_DIM {
                let r = worst_grid[slot * 36 + i * 6 + j];
                if r > tol {
                    worst_entries.push(EntryMismatch {
                        k: (slot + 2) as u8,
                        i: i + 1,
                        j: j + 1,
                        max_relative_error: r,
                    });
                }
            }
        }
    }
    worst_entries.sort_by(|a, b| {
        b.max_relative_error
            .partial_cmp(&a.max_relative_error)
            .unwrap()
    });

    let matching = fit.residual < tol;
    Calibration {
        key,
        scale: fit.scale,
        order_constants: fit.c,
        residual_max: fit.residual,
        per_order_residual: fit.per_order,
        matching,
        tol,
        variant,
        seed,
        sample_count: samples.len(),
        degenerate_skipped: fit.degenerate / 4,
        worst_entries,
        candidates: records,
    }
}

/// Cross-validate a stored calibration against a variant on fresh seeded
/// unit vectors: (max relative entry residual, per-order residuals,
/// degenerate samples skipped).
pub fn verify_calibration(
    calib: &Calibration,
    variant: Variant,
    seed: u64,
    n_samples: usize,
    table: &BracketTable,
) -> (f64, [f64; 4], usize) {
    let samples = seeded_unit_vectors(seed, n_samples);
    let mut per_order = [0.0f64; 4];
    let mut degenerate = 0usize;
    for x in &samples {
        let pred = predict(&calib.key, table, calib.scale, x, 5);
        for (slot, &k) in [2usize, 3, 4, 5].iter().enumerate() {
            let app = eval_derivative(k as u8, variant, x);
            let denom = app.max_abs();
            if denom < 1e-12 {
                degenerate += 1;
                continue;
            }
            let c = calib.order_constants[slot];
            let mut err = 0.0f64;
            for i in 0..M_DIM {
                for j in 0..M_DIM {
                    err = err.max((c * pred[k][i][j] - app.0[i][j]).abs());
                }
            }
            per_order[slot] = per_order[slot].max(err / denom);
        }
    }
    let max = per_order.iter().fold(0.0f64, |a, &b| a.max(b));
    (max, per_order, degenerate / 4)
}

fn c_distance(c: &[f64; 4]) -> f64 {
    c.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::seeded_unit_vectors;

    fn table() -> BracketTable {
        build_bracket_table([1.0, 1.0, 1.0])
    }

    #[test]
    fn antisymmetry_and_jacobi_exact() {
        let t = table();
        for i in 0..G_DIM {
            for j in 0..G_DIM {
                let cij = t.bracket_basis(i, j);
                let cji = t.bracket_basis(j, i);
                for k in 0..G_DIM {
                    assert_eq!(cij[k], -cji[k], "antisymmetry at ({i},{j},{k})");
                }
            }
        }
        // Jacobi identity over all basis triples, exactly in integers
        for a in 0..G_DIM {
            for b in 0..G_DIM {
                for c in 0..G_DIM {
                    let mut total = [0i64; G_DIM];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = t.bracket_basis(y, z);
                        for (m, &coef) in inner.iter().enumerate() {
                            if coef == 0 {
                                continue;
                            }
                            let outer = t.bracket_basis(x, m);
                            for k in 0..G_DIM {
                                total[k] += coef * outer[k];
                            }
                        }
                    }
                    assert_eq!(total, [0i64; G_DIM], "Jacobi fails at ({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn reductive_structure() {
        let t = table();
        // [h, m_r] ⊆ m_r and [m_r, m_r] ⊆ h
        for a in 0..H_DIM {
            for r in 0..3 {
                for &idx in &[r, r + 3] {
                    let c = t.bracket_basis(M_DIM + a, idx);
                    for (k, &coef) in c.iter().enumerate() {
                        if coef != 0 {
                            assert!(
                                k == r || k == r + 3,
                                "[h, m_{r}] leaves the root space: k={k}"
                            );
                        }
                    }
                }
            }
        }
        for r in 0..3 {
            let c = t.bracket_basis(r, r + 3);
            for (k, &coef) in c.iter().take(M_DIM).enumerate() {
                assert_eq!(coef, 0, "[A_r, B_r] must be in h (k={k})");
            }
        }
    }

    #[test]
    fn root_addition_couples_pairs() {
        // [root space (1,3), root space (2,3)] lands in root space (1,2)
        let t = table();
        for &u in &[1usize, 4] {
            for &v in &[2usize, 5] {
                let c = t.bracket_basis(u, v);
                for (k, &coef) in c.iter().take(M_DIM).enumerate() {
                    if coef != 0 {
                        assert!(k == 0 || k == 3, "[pair2, pair3] must land in pair 1");
                    }
                }
            }
        }
    }

    #[test]
    fn metric_invariance_of_isotropy() {
        // ⟨[z,u],v⟩ + ⟨u,[z,v]⟩ = 0 for z ∈ h, u,v ∈ m (equal scales)
        let t = table();
        for a in 0..H_DIM {
            for u in 0..M_DIM {
                for v in 0..M_DIM {
                    let zu = t.bracket_basis(M_DIM + a, u);
                    let zv = t.bracket_basis(M_DIM + a, v);
                    assert_eq!(zu[v] + zv[u], 0, "isotropy is not skew at ({a},{u},{v})");
                }
            }
        }
    }

    #[test]
    fn lambda_is_skew_linear_and_kills_x() {
        let t = table();
        for x in seeded_unit_vectors(7, 50) {
            let l = lambda_matrix(&t, &x);
            for i in 0..M_DIM {
                for j in 0..M_DIM {
                    assert!((l[i][j] + l[j][i]).abs() < 1e-14, "skewness");
                }
            }
            let lx: [f64; 6] = std::array::from_fn(|i| (0..6).map(|j| l[i][j] * x[j]).sum());
            assert!(lx.iter().all(|v| v.abs() < 1e-14), "Λ_x x must vanish");
            let l2 = lambda_matrix(&t, &x.map(|v| 2.5 * v));
            for i in 0..M_DIM {
                for j in 0..M_DIM {
                    assert!((l2[i][j] - 2.5 * l[i][j]).abs() < 1e-13, "linearity");
                }
            }
        }
    }

    #[test]
    fn lambda_at_a12_annihilates_its_pair() {
        let t = table();
        let mut x = [0.0; 6];
        x[0] = 1.0; // A₁₂
        let l = lambda_matrix(&t, &x);
        for i in 0..M_DIM {
            assert_eq!(l[i][0], 0.0);
            assert_eq!(l[i][3], 0.0);
        }
        // rotates between the other two pairs
        assert!(l[2][1].abs() > 0.4);
    }

    #[test]
    fn jacobi_operator_is_symmetric_psd_and_kills_x() {
        let t = table();
        for x in seeded_unit_vectors(11, 200) {
            let j = jacobi_operator(&t, &x);
            for i in 0..M_DIM {
                for k in 0..M_DIM {
                    assert!((j[i][k] - j[k][i]).abs() < 1e-13, "symmetry");
                }
            }
            let jx: [f64; 6] = std::array::from_fn(|i| (0..6).map(|k| j[i][k] * x[k]).sum());
            assert!(jx.iter().all(|v| v.abs() < 1e-13), "J x must vanish");
            let eigs = m6_to_sym(&j).eigenvalues();
            assert!(eigs[0] >= -1e-12, "J not psd: {}", eigs[0]);
        }
    }

    #[test]
    fn jacobi_operator_scales_quadratically() {
        let t = table();
        let x = seeded_unit_vectors(3, 1)[0];
        let j1 = jacobi_operator(&t, &x);
        let j2 = jacobi_operator(&t, &x.map(|v| 3.0 * v));
        for i in 0..M_DIM {
            for k in 0..M_DIM {
                assert!((j2[i][k] - 9.0 * j1[i][k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_bianchi_identity() {
        let t = table();
        let vs = seeded_unit_vectors(13, 30);
        for w in vs.chunks_exact(3) {
            let (x, y, z) = (&w[0], &w[1], &w[2]);
            let a = curvature(&t, x, y, z);
            let b = curvature(&t, y, z, x);
            let c = curvature(&t, z, x, y);
            for k in 0..M_DIM {
                assert!((a[k] + b[k] + c[k]).abs() < 1e-12, "Bianchi fails");
            }
        }
    }

    #[test]
    fn chain_traces_vanish_and_scale() {
        let t = table();
        for x in seeded_unit_vectors(17, 20) {
            let chain = derivative_chain(&t, &x, 8, 1);
            for (k, m) in chain.iter().enumerate().skip(1) {
                let tr: f64 = (0..M_DIM).map(|i| m[i][i]).sum();
                assert!(tr.abs() < 1e-12, "trace of J^({k}) must vanish");
            }
            let lam = 1.7f64;
            let chain2 = derivative_chain(&t, &x.map(|v| lam * v), 8, 1);
            for k in 0..=8 {
                let f = lam.powi(k as i32 + 2);
                for i in 0..M_DIM {
                    for j in 0..M_DIM {
                        assert!(
                            (chain2[k][i][j] - f * chain[k][i][j]).abs() < 1e-12 * f.max(1.0),
                            "homogeneity fails at k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn chain_vanishes_on_a_root_axis() {
        // on a single root direction J⁰ commutes with Λ, so the chain dies
        let t = table();
        let mut x = [0.0; 6];
        x[0] = 1.0;
        let chain = derivative_chain(&t, &x, 5, 1);
        for m in chain.iter().skip(1) {
            let max = m.iter().flatten().fold(0.0f64, |a, &b| a.max(b.abs()));
            assert!(max < 1e-14);
        }
    }

    #[test]
    fn exact_and_float_chains_agree() {
        let t = table();
        let nums = [3i64, -1, 4, 1, -5, 9];
        let xq: [BigRational; 6] =
            std::array::from_fn(|i| BigRational::new(BigInt::from(nums[i]), BigInt::from(10)));
        let xf: [f64; 6] = std::array::from_fn(|i| nums[i] as f64 / 10.0);
        let ce = derivative_chain(&t, &xq, 5, 1);
        let cf = derivative_chain(&t, &xf, 5, 1);
        use num_traits::ToPrimitive;
        for k in 0..=5 {
            for i in 0..M_DIM {
                for j in 0..M_DIM {
                    let e = ce[k][i][j].to_f64().unwrap();
                    assert!((e - cf[k][i][j]).abs() < 1e-12 * e.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn bracket_of_element_with_itself_vanishes() {
        let t = table();
        for x in seeded_unit_vectors(23, 10) {
            let e = LieElement::from_m(x);
            let b = e.bracket(&e, &t);
            assert!(b.m.iter().all(|v| v.abs() < 1e-14));
            assert!(b.h.iter().all(|v| v.abs() < 1e-14));
        }
    }
}
