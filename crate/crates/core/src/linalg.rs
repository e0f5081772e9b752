//! Small dense f64 linear algebra: the whole crate works with 6×6 and 12×12
//! matrices plus tall least-squares stacks, so everything here is plain
//! row-major storage with direct loops.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut s = 0.0;
            for j in 0..self.cols {
                s += self[(i, j)] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: f64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// AB − BA.
    pub fn commutator(&self, rhs: &Mat) -> Mat {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn norm_one(&self) -> f64 {
        // max column sum
        let mut best: f64 = 0.0;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += self[(i, j)].abs();
            }
            best = best.max(s);
        }
        best
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[f64]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    /// LU factorization with partial pivoting; returns (LU, perm, sign).
    fn lu(&self) -> Option<(Mat, Vec<usize>, f64)> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                if lu[(i, k)].abs() > best {
                    best = lu[(i, k)].abs();
                    p = i;
                }
            }
            if best == 0.0 {
                return None; // exactly singular at this pivot
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let s = lu[(k, j)];
                    lu[(i, j)] -= f * s;
                }
            }
        }
        Some((lu, perm, sign))
    }

    pub fn det(&self) -> f64 {
        match self.lu() {
            None => 0.0,
            Some((lu, _, sign)) => {
                let mut d = sign;
                for i in 0..self.rows {
                    d *= lu[(i, i)];
                }
                d
            }
        }
    }

    /// Solve A X = B for X (A square nonsingular).
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        let n = self.rows;
        let (lu, perm, _) = self.lu()?;
        let mut x = Mat::zeros(n, b.cols);
        for j in 0..b.cols {
            // apply permutation and forward substitution
            let mut y = vec![0.0; n];
            for i in 0..n {
                let mut s = b[(perm[i], j)];
                for k in 0..i {
                    s -= lu[(i, k)] * y[k];
                }
                y[i] = s;
            }
            // backward substitution
            for i in (0..n).rev() {
                let mut s = y[i];
                for k in i + 1..n {
                    s -= lu[(i, k)] * x[(k, j)];
                }
                x[(i, j)] = s / lu[(i, i)];
            }
        }
        Some(x)
    }

    /// Matrix exponential by scaling-and-squaring with the [13/13] Padé
    /// approximant. Accurate to close to machine precision for the modest
    /// norms that occur here.
    pub fn expm(&self) -> Mat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let norm = self.norm_one();
        const THETA_13: f64 = 5.371920351148152;
        let s = if norm > THETA_13 {
            (norm / THETA_13).log2().ceil() as i32
        } else {
            0
        };
        let a = self.scale(0.5f64.powi(s));

        const B: [f64; 14] = [
            64764752532480000.0,
            32382376266240000.0,
            7771770303897600.0,
            1187353796428800.0,
            129060195264000.0,
            10559470521600.0,
            670442572800.0,
            33522128640.0,
            1323241920.0,
            40840800.0,
            960960.0,
            16380.0,
            182.0,
            1.0,
        ];

        let a2 = a.matmul(&a);
        let a4 = a2.matmul(&a2);
        let a6 = a2.matmul(&a4);
        let id = Mat::identity(n);

        // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
        let w1 = a6.scale(B[13]).add(&a4.scale(B[11])).add(&a2.scale(B[9]));
        let w2 = a6
            .scale(B[7])
            .add(&a4.scale(B[5]))
            .add(&a2.scale(B[3]))
            .add(&id.scale(B[1]));
        let u = a.matmul(&a6.matmul(&w1).add(&w2));
        // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
        let z1 = a6.scale(B[12]).add(&a4.scale(B[10])).add(&a2.scale(B[8]));
        let v = a6
            .matmul(&z1)
            .add(&a6.scale(B[6]))
            .add(&a4.scale(B[4]))
            .add(&a2.scale(B[2]))
            .add(&id.scale(B[0]));

        let num = v.add(&u);
        let den = v.sub(&u);
        let mut r = den.solve(&num).expect("Padé denominator is nonsingular");
        for _ in 0..s {
            r = r.matmul(&r);
        }
        r
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    /// ascending order.
    pub fn sym_eigvals(&self) -> Vec<f64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let tol = 1e-15 * a.max_abs().max(1e-300);
        for _sweep in 0..64 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off = off.max(a[(i, j)].abs());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq.abs() <= tol * 1e-2 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
        vals
    }

    /// Singular values, descending. One-sided Jacobi on the columns; tall
    /// matrices are reduced by Householder QR first.
    pub fn singular_values(&self) -> Vec<f64> {
        let work = if self.rows > self.cols {
            self.qr_r()
        } else {
            self.clone()
        };
        let m = work.rows;
        let n = work.cols;
        let mut a = work;
        for _sweep in 0..64 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let mut app = 0.0;
                    let mut aqq = 0.0;
                    let mut apq = 0.0;
                    for i in 0..m {
                        app += a[(i, p)] * a[(i, p)];
                        aqq += a[(i, q)] * a[(i, q)];
                        apq += a[(i, p)] * a[(i, q)];
                    }
                    if apq.abs() <= 1e-17 * (app * aqq).sqrt().max(1e-300) {
                        continue;
                    }
                    rotated = true;
                    let tau = (aqq - app) / (2.0 * apq);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for i in 0..m {
                        let aip = a[(i, p)];
                        let aiq = a[(i, q)];
                        a[(i, p)] = c * aip - s * aiq;
                        a[(i, q)] = s * aip + c * aiq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut vals: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|i| a[(i, j)] * a[(i, j)]).sum::<f64>().sqrt())
            .collect();
        vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
        vals
    }

    /// R factor of the Householder QR decomposition (square, cols × cols).
    fn qr_r(&self) -> Mat {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        for k in 0..n.min(m.saturating_sub(1)) {
            let mut norm = 0.0f64;
            for i in k..m {
                norm += a[(i, k)] * a[(i, k)];
            }
            let norm = norm.sqrt();
            if norm == 0.0 {
                continue;
            }
            let alpha = if a[(k, k)] >= 0.0 { -norm } else { norm };
            let mut v: Vec<f64> = (k..m).map(|i| a[(i, k)]).collect();
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|x| x * x).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            for j in k..n {
                let mut dot = 0.0;
                for i in k..m {
                    dot += v[i - k] * a[(i, j)];
                }
                let f = 2.0 * dot / vnorm2;
                for i in k..m {
                    a[(i, j)] -= f * v[i - k];
                }
            }
        }
        Mat::from_fn(n, n, |i, j| if i <= j { a[(i, j)] } else { 0.0 })
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>12.5e} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Least-squares solution of min ‖Ax − b‖₂ by Householder QR, with the
/// singular values of A for rank diagnostics.
pub struct LstSq {
    pub x: Vec<f64>,
    pub residual_l2: f64,
    pub singular_values: Vec<f64>,
}

pub fn lstsq(a: &Mat, b: &[f64]) -> LstSq {
    assert_eq!(a.rows, b.len());
    assert!(a.rows >= a.cols);
    let (m, n) = (a.rows, a.cols);
    let mut work = a.clone();
    let mut rhs = b.to_vec();
    for k in 0..n.min(m.saturating_sub(1)) {
        let mut norm = 0.0f64;
        for i in k..m {
            norm += work[(i, k)] * work[(i, k)];
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if work[(k, k)] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| work[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..n {
            let mut dot = 0.0;
            for i in k..m {
                dot += v[i - k] * work[(i, j)];
            }
            let f = 2.0 * dot / vnorm2;
            for i in k..m {
                work[(i, j)] -= f * v[i - k];
            }
        }
        let mut dot = 0.0;
        for i in k..m {
            dot += v[i - k] * rhs[i];
        }
        let f = 2.0 * dot / vnorm2;
        for i in k..m {
            rhs[i] -= f * v[i - k];
        }
    }
    // back substitution on the leading n×n triangle
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s -= work[(i, j)] * x[j];
        }
        x[i] = if work[(i, i)] != 0.0 {
            s / work[(i, i)]
        } else {
            0.0
        };
    }
    let residual_l2 = rhs[n..].iter().map(|r| r * r).sum::<f64>().sqrt();
    let r = Mat::from_fn(n, n, |i, j| if i <= j { work[(i, j)] } else { 0.0 });
    LstSq {
        x,
        residual_l2,
        singular_values: r.singular_values(),
    }
}

/// Symmetric 6×6 matrix of reals.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SymMatrix6(pub [[f64; 6]; 6]);

impl SymMatrix6 {
    pub fn zero() -> Self {
        SymMatrix6([[0.0; 6]; 6])
    }

    pub fn identity() -> Self {
        let mut m = [[0.0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        SymMatrix6(m)
    }

    pub fn scaled_identity(c: f64) -> Self {
        let mut m = Self::identity();
        for i in 0..6 {
            m.0[i][i] = c;
        }
        m
    }

    /// Build from a general matrix, asserting near-symmetry, then symmetrize.
    pub fn from_mat(m: &Mat) -> Self {
        assert_eq!((m.rows, m.cols), (6, 6));
        let scale = m.max_abs().max(1.0);
        let mut out = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                debug_assert!(
                    (m[(i, j)] - m[(j, i)]).abs() <= 1e-9 * scale,
                    "matrix is not symmetric: ({i},{j})"
                );
                out[i][j] = 0.5 * (m[(i, j)] + m[(j, i)]);
            }
        }
        SymMatrix6(out)
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_fn(6, 6, |i, j| self.0[i][j])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..6).map(|i| self.0[i][i]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn add(&self, rhs: &SymMatrix6) -> SymMatrix6 {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &SymMatrix6) -> SymMatrix6 {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: f64) -> SymMatrix6 {
        let mut out = *self;
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] *= c;
            }
        }
        out
    }

    pub fn apply(&self, v: &[f64; 6]) -> [f64; 6] {
        let mut out = [0.0; 6];
        for i in 0..6 {
            let mut s = 0.0;
            for j in 0..6 {
                s += self.0[i][j] * v[j];
            }
            out[i] = s;
        }
        out
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.to_mat().sym_eigvals()
    }
}

pub fn dot6(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn norm6(a: &[f64; 6]) -> f64 {
    dot6(a, a).sqrt()
}

/// Minimize a unimodal function on [a, b] by golden-section search.
pub fn golden_section_min(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    (x, fx)
}

/// Locate a root of f in [a, b] given f(a)·f(b) ≤ 0, by bisection.
pub fn bisect_root(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, xtol: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        if (b - a).abs() <= xtol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fa > 0.0) != (fm > 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}
