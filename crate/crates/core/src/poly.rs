//! Sparse multivariate polynomials in x₁…x₆ over ℚ(√2).
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, with no stored zero coefficients, so equality and the text form are
//! canonical. The sparse map wins here: the closed-form entries have at most
//! a few dozen monomials each.

use crate::qsqrt2::QSqrt2;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const NVARS: usize = 6;

/// Exponent vector of one monomial in x₁…x₆.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub exps: [u8; NVARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NVARS] };

    pub fn var(i: usize) -> Monomial {
        assert!(i < NVARS);
        let mut exps = [0; NVARS];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; NVARS];
        for i in 0..NVARS {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// other / self, when divisible.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u8; NVARS];
        for i in 0..NVARS {
            exps[i] = other.exps[i].checked_sub(self.exps[i])?;
        }
        Some(Monomial { exps })
    }
}

/// Graded-lexicographic: total degree first, then exponent vector with x₁
/// most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Result of the homogeneity check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    /// The zero polynomial (homogeneous of every degree).
    Zero,
    /// Every term has the given total degree.
    Degree(u32),
    /// Terms of different total degrees are present.
    Mixed,
}

/// Outcome of exact division; not-divisible is a normal result, not an error.
#[derive(Clone, Debug)]
pub enum DivOutcome {
    Exact(MultiPoly),
    NotDivisible {
        quotient: MultiPoly,
        remainder: MultiPoly,
    },
}

/// Error for division by the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisor;

impl fmt::Display for ZeroDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "division by the zero polynomial")
    }
}

impl std::error::Error for ZeroDivisor {}

/// Sparse multivariate polynomial over ℚ(√2).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, QSqrt2>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: QSqrt2) -> Self {
        let mut p = MultiPoly::zero();
        p.insert_add(Monomial::ONE, c);
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(QSqrt2::one())
    }

    /// The variable xᵢ (0-based index).
    pub fn var(i: usize) -> Self {
        let mut p = MultiPoly::zero();
        p.insert_add(Monomial::var(i), QSqrt2::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QSqrt2)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QSqrt2 {
        self.terms.get(m).cloned().unwrap_or_else(QSqrt2::zero)
    }

    /// Constant value if the polynomial is constant (possibly zero).
    pub fn constant_value(&self) -> Option<QSqrt2> {
        if self.is_zero() {
            Some(QSqrt2::zero())
        } else if self.terms.len() == 1 {
            self.terms.get(&Monomial::ONE).cloned()
        } else {
            None
        }
    }

    fn insert_add(&mut self, m: Monomial, c: QSqrt2) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &QSqrt2)> {
        self.terms.last_key_value()
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.insert_add(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &QSqrt2) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree check: `Degree(d)` iff every term has total degree `d`.
    pub fn homogeneity(&self) -> Homogeneity {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Homogeneity::Zero;
        };
        let d = first.total_degree();
        if iter.all(|m| m.total_degree() == d) {
            Homogeneity::Degree(d)
        } else {
            Homogeneity::Mixed
        }
    }

    /// Exact value over ℚ(√2).
    pub fn eval_exact(&self, x: &[QSqrt2; NVARS]) -> QSqrt2 {
        // Cache powers per variable up to the needed degree.
        let mut max_exp = [0u8; NVARS];
        for m in self.terms.keys() {
            for i in 0..NVARS {
                max_exp[i] = max_exp[i].max(m.exps[i]);
            }
        }
        let mut powers: Vec<Vec<QSqrt2>> = Vec::with_capacity(NVARS);
        for i in 0..NVARS {
            let mut row = Vec::with_capacity(max_exp[i] as usize + 1);
            row.push(QSqrt2::one());
            for e in 1..=max_exp[i] as usize {
                let next = &row[e - 1] * &x[i];
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = QSqrt2::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for i in 0..NVARS {
                if m.exps[i] > 0 {
                    t = &t * &powers[i][m.exps[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Floating evaluation: direct per-monomial products in double-double
    /// arithmetic with compensated accumulation. The entries cancel heavily
    /// near their zero sets, so plain f64 summation is not good enough.
    pub fn eval_f64(&self, x: &[f64; NVARS]) -> f64 {
        let mut acc = Dd::zero();
        for (m, c) in self.terms.iter() {
            let mut t = dd_from_qsqrt2(c);
            for i in 0..NVARS {
                for _ in 0..m.exps[i] {
                    t = t.mul_f64(x[i]);
                }
            }
            acc = acc.add(t);
        }
        acc.hi + acc.lo
    }

    /// Division with remainder by a single divisor in graded-lex order.
    /// `Exact(r)` means `self == q * r` precisely.
    pub fn divexact(&self, q: &MultiPoly) -> Result<DivOutcome, ZeroDivisor> {
        let (lead_m, lead_c) = q.leading().ok_or(ZeroDivisor)?;
        let mut rem = MultiPoly::zero();
        let mut quot = MultiPoly::zero();
        let mut work = self.clone();
        while let Some((m, c)) = work.leading().map(|(m, c)| (*m, c.clone())) {
            if lead_m.divides(&m) {
                let qm = lead_m.quotient_into(&m).unwrap();
                let qc = c
                    .checked_div(lead_c)
                    .expect("leading coefficient is nonzero");
                let mut t = MultiPoly::zero();
                t.insert_add(qm, qc);
                work = work.sub(&t.mul(q));
                quot = quot.add(&t);
            } else {
                // move the leading term to the remainder
                let mut t = MultiPoly::zero();
                t.insert_add(m, c);
                work = work.sub(&t);
                rem = rem.add(&t);
            }
        }
        if rem.is_zero() {
            Ok(DivOutcome::Exact(quot))
        } else {
            Ok(DivOutcome::NotDivisible {
                quotient: quot,
                remainder: rem,
            })
        }
    }

    /// Partial derivative ∂/∂xᵢ (0-based).
    pub fn partial_derivative(&self, i: usize) -> MultiPoly {
        assert!(i < NVARS);
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps;
            exps[i] = e - 1;
            out.insert_add(Monomial { exps }, c * &QSqrt2::from_int(e as i64));
        }
        out
    }

    /// Substitute x ↦ λx: multiplies each degree-d term by λ^d.
    pub fn scale_vars(&self, lambda: &QSqrt2) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let mut f = QSqrt2::one();
            for _ in 0..m.total_degree() {
                f = &f * lambda;
            }
            out.insert_add(*m, c * &f);
        }
        out
    }
}

/// x₁² + … + x₆², the squared-norm polynomial.
pub fn norm_poly() -> MultiPoly {
    let mut n = MultiPoly::zero();
    for i in 0..NVARS {
        let xi = MultiPoly::var(i);
        n = n.add(&xi.mul(&xi));
    }
    n
}

/// Canonical text form: leading term first in graded-lex order, mixed
/// coefficients parenthesized, e.g. `-3/4*x1^2*x4^2+(1/2+3/32*sqrt2)*x2*x6`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let mixed = !c.is_rational() && !c.rat_part().is_zero();
            // mixed coefficients are parenthesized, so they always need the
            // explicit separator
            if idx > 0 && (mixed || !cs.starts_with('-')) {
                write!(f, "+")?;
            }
            if m.total_degree() == 0 {
                if mixed {
                    write!(f, "({})", cs)?;
                } else {
                    write!(f, "{}", cs)?;
                }
            } else if mixed {
                write!(f, "({})*{}", cs, m)?;
            } else {
                write!(f, "{}*{}", cs, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl FromStr for MultiPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

// ---------------------------------------------------------------------------
// double-double helpers for compensated floating evaluation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn zero() -> Dd {
        Dd { hi: 0.0, lo: 0.0 }
    }

    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = fast_two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = fast_two_sum(p, e);
        Dd { hi, lo }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

fn dd_from_qsqrt2(c: &QSqrt2) -> Dd {
    use num_traits::ToPrimitive;
    let a = c.rat_part().to_f64().unwrap_or(f64::NAN);
    let b = c.sqrt2_part().to_f64().unwrap_or(f64::NAN);
    // √2 as a double-double constant
    const SQRT2_HI: f64 = std::f64::consts::SQRT_2;
    const SQRT2_LO: f64 = -9.667293313452913e-17;
    let (p, e) = two_prod(b, SQRT2_HI);
    let e = e + b * SQRT2_LO;
    Dd { hi: p, lo: e }.add(Dd::from_f64(a))
}

// ---------------------------------------------------------------------------
// expression parser
// ---------------------------------------------------------------------------

/// Error from the polynomial expression parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parse an expression over x1…x6, `sqrt2` and integer literals with
/// `+ - * / ^ ( )`. Division requires a nonzero constant divisor, so
/// coefficients can be written the way the source prints them, e.g.
/// `9/(8*sqrt2)`.
pub fn parse_poly(src: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            message: msg.to_string(),
            position: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            let _ = self.eat(b'+');
            self.term()?
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let c = f
                        .constant_value()
                        .ok_or_else(|| self.err("divisor must be a constant"))?;
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    let inv = QSqrt2::one().checked_div(&c).unwrap();
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        let base = self.base()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let n = self.uint()?;
            if n > 64 {
                return Err(self.err("exponent too large"));
            }
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(MultiPoly::constant(QSqrt2::from_int(n as i64)))
            }
            Some(b's') => {
                if self.src[self.pos..].starts_with(b"sqrt2") {
                    self.pos += 5;
                    Ok(MultiPoly::constant(QSqrt2::sqrt2()))
                } else {
                    Err(self.err("unknown symbol"))
                }
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.uint()?;
                if !(1..=NVARS as u32).contains(&i) {
                    return Err(self.err("variable index out of range"));
                }
                Ok(MultiPoly::var(i as usize - 1))
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }
}

// ---------------------------------------------------------------------------
// symmetric 6×6 matrices of polynomials
// ---------------------------------------------------------------------------

/// Index into upper-triangle storage, row-major with i ≤ j (0-based).
pub fn upper_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * NVARS - i * (i + 1) / 2 + j
}

pub const UPPER_LEN: usize = NVARS * (NVARS + 1) / 2; // 21

/// Symmetric 6×6 matrix of polynomials, stored as its 21 upper-triangle
/// entries; `entry(i, j)` and `entry(j, i)` are the same polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    upper: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zero() -> Self {
        PolyMatrix {
            upper: vec![MultiPoly::zero(); UPPER_LEN],
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut upper = Vec::with_capacity(UPPER_LEN);
        for i in 0..NVARS {
            for j in i..NVARS {
                upper.push(f(i, j));
            }
        }
        PolyMatrix { upper }
    }

    pub fn from_upper(upper: Vec<MultiPoly>) -> Self {
        assert_eq!(upper.len(), UPPER_LEN);
        PolyMatrix { upper }
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.upper[upper_index(i, j)]
    }

    pub fn entries_upper(&self) -> impl Iterator<Item = ((usize, usize), &MultiPoly)> {
        (0..NVARS).flat_map(move |i| (i..NVARS).map(move |j| ((i, j), self.entry(i, j))))
    }

    pub fn trace(&self) -> MultiPoly {
        let mut t = MultiPoly::zero();
        for i in 0..NVARS {
            t = t.add(self.entry(i, i));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|p| p.is_zero())
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, &MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix::from_fn(|i, j| f(i, j, self.entry(i, j)))
    }

    pub fn zip_with(
        &self,
        rhs: &PolyMatrix,
        mut f: impl FnMut(&MultiPoly, &MultiPoly) -> MultiPoly,
    ) -> PolyMatrix {
        PolyMatrix::from_fn(|i, j| f(self.entry(i, j), rhs.entry(i, j)))
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.zip_with(rhs, |a, b| a.sub(b))
    }

    /// Flip the sign of the listed entries (0-based, order inside a pair is
    /// irrelevant).
    pub fn flip_signs(&self, flips: &[(usize, usize)]) -> PolyMatrix {
        let mut out = self.clone();
        for &(i, j) in flips {
            let idx = upper_index(i, j);
            out.upper[idx] = out.upper[idx].neg();
        }
        out
    }

    /// Replace one entry (0-based).
    pub fn replace_entry(&self, i: usize, j: usize, p: MultiPoly) -> PolyMatrix {
        let mut out = self.clone();
        out.upper[upper_index(i, j)] = p;
        out
    }

    pub fn eval_f64(&self, x: &[f64; NVARS]) -> crate::linalg::SymMatrix6 {
        let mut m = [[0.0; NVARS]; NVARS];
        for i in 0..NVARS {
            for j in i..NVARS {
                let v = self.entry(i, j).eval_f64(x);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        crate::linalg::SymMatrix6(m)
    }

    pub fn eval_exact(&self, x: &[QSqrt2; NVARS]) -> ExactSym6 {
        ExactSym6 {
            upper: self.upper.iter().map(|p| p.eval_exact(x)).collect(),
        }
    }
}

/// Symmetric 6×6 matrix of exact ℚ(√2) values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactSym6 {
    upper: Vec<QSqrt2>,
}

impl ExactSym6 {
    pub fn zero() -> Self {
        ExactSym6 {
            upper: vec![QSqrt2::zero(); UPPER_LEN],
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> QSqrt2) -> Self {
        let mut upper = Vec::with_capacity(UPPER_LEN);
        for i in 0..NVARS {
            for j in i..NVARS {
                upper.push(f(i, j));
            }
        }
        ExactSym6 { upper }
    }

    pub fn entry(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.upper[upper_index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|c| c.is_zero())
    }

    pub fn trace(&self) -> QSqrt2 {
        let mut t = QSqrt2::zero();
        for i in 0..NVARS {
            t = &t + self.entry(i, i);
        }
        t
    }

    pub fn to_f64(&self) -> crate::linalg::SymMatrix6 {
        let mut m = [[0.0; NVARS]; NVARS];
        for i in 0..NVARS {
            for j in i..NVARS {
                let v = self.entry(i, j).to_f64();
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        crate::linalg::SymMatrix6(m)
    }
}
