//! Exact rational and integer matrix kernel.
//!
//! Everything here is arbitrary-precision and deterministic: RREF over Q is
//! the canonical form used for subspace equality throughout the crate, and
//! row-style Hermite normal form over Z backs the unimodular completions
//! needed for rational-complement normalization.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer as _, One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parse "p/q" or a bare integer literal.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| Error::BadInput(format!("invalid rational literal: {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::BadInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Render as "p/q", or as a bare integer when the denominator is one.
pub fn rat_to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rat_to_json(q: &Rat) -> serde_json::Value {
    use num::ToPrimitive;
    if q.denom().is_one() {
        if let Some(i) = q.numer().to_i64() {
            return serde_json::Value::from(i);
        }
    }
    serde_json::Value::String(rat_to_string(q))
}

fn rat_from_json(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(i))
            } else {
                Err(Error::BadInput(format!(
                    "rational entries must be integers or \"p/q\" strings, got {n}"
                )))
            }
        }
        serde_json::Value::String(s) => rat_from_str(s),
        other => Err(Error::BadInput(format!(
            "expected rational literal, got {other}"
        ))),
    }
}

/// A dense matrix over Q with entries kept in lowest terms
/// (positive denominator is guaranteed by `BigRational`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        RationalMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from i64 entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        self.row(i).to_vec()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn is_skew(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RationalMatrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RationalMatrix::new(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        RationalMatrix::new(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        RationalMatrix::new(self.rows, cols, data)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RationalMatrix::new(self.rows + other.rows, self.cols, data)
    }

    /// Extract the block with the given row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut out = Self::zeros(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Contiguous block of shape `nr x nc` with top-left corner (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        let rows: Vec<usize> = (r0..r0 + nr).collect();
        let cols: Vec<usize> = (c0..c0 + nc).collect();
        self.submatrix(&rows, &cols)
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// The RREF is the unique canonical representative of the row span;
    /// pivots are chosen leftmost-first, scanning rows top to bottom.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    m.row_axpy(i, r, &-f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space of the matrix as a column-vector solution space,
    /// returned as a `Subspace` of dimension cols - rank.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            basis.push(v);
        }
        Subspace::from_rows(n, RationalMatrix::from_rows_or_empty(basis, n))
    }

    fn from_rows_or_empty(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        if rows.is_empty() {
            Self::zeros(0, cols)
        } else {
            Self::from_rows(rows)
        }
    }

    /// Exact inverse; `Err(Singular)` when the matrix is not invertible.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "invert requires a square matrix".into(),
            ));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).ne((0..n).collect::<Vec<_>>().iter()) {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// Determinant by fraction-free Gaussian elimination over Q.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "det requires a square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m[(c, c)].clone();
            let inv = m[(c, c)].recip();
            m.scale_row(c, &inv);
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    m.row_axpy(i, c, &-f);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = &self[(i, j)] * f;
            self[(i, j)] = v;
        }
    }

    /// row_i += f * row_src
    fn row_axpy(&mut self, i: usize, src: usize, f: &Rat) {
        for j in 0..self.cols {
            let v = &self[(i, j)] + &self[(src, j)] * f;
            self[(i, j)] = v;
        }
    }

    /// Convert to an integer matrix; fails when any entry has denominator > 1.
    pub fn to_integer(&self) -> Result<IntegerMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            if !x.denom().is_one() {
                return Err(Error::BadInput("matrix has non-integer entries".into()));
            }
            data.push(x.numer().clone());
        }
        Ok(IntegerMatrix::new(self.rows, self.cols, data))
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rat_to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<serde_json::Value> = self.row(i).iter().map(rat_to_json).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RationalMatrix;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a row-major array of arrays of rational literals")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<RationalMatrix, A::Error> {
                let mut rows: Vec<Vec<Rat>> = Vec::new();
                while let Some(raw) = seq.next_element::<Vec<serde_json::Value>>()? {
                    let row: std::result::Result<Vec<Rat>, _> =
                        raw.iter().map(rat_from_json).collect();
                    rows.push(row.map_err(de::Error::custom)?);
                }
                let cols = rows.first().map_or(0, |r| r.len());
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(de::Error::custom("ragged matrix rows"));
                }
                Ok(RationalMatrix::from_rows_or_empty(rows, cols))
            }
        }
        d.deserialize_seq(V)
    }
}

/// A dense matrix over Z with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntegerMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| Int::from(x))).collect();
        IntegerMatrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_skew(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        )
    }

    pub fn det(&self) -> Int {
        let d = self.to_rational().det();
        debug_assert!(d.denom().is_one());
        d.numer().clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row_i -= q * row_src
    fn row_submul(&mut self, i: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(i, j)] - q * &self[(src, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form with unimodular transform: returns (h, u)
/// with u*a = h, |det u| = 1, h in echelon form with positive pivots and
/// entries above each pivot reduced into [0, pivot).
///
/// Ties in pivot selection go to the smallest row index among rows with
/// minimal absolute value, which makes the transform deterministic.
pub fn row_hnf(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(a.rows());
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclidean reduction in column c over rows r..
        loop {
            let mut best: Option<(usize, Int)> = None;
            for i in r..rows {
                let v = h[(i, c)].abs();
                if v.is_zero() {
                    continue;
                }
                match &best {
                    Some((_, b)) if *b <= v => {}
                    _ => best = Some((i, v)),
                }
            }
            let Some((p, _)) = best else {
                break;
            };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let pivot = h[(r, c)].clone();
            let mut again = false;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                // floor division keeps remainders small and terminates
                let q = h[(i, c)].div_floor(&pivot);
                h.row_submul(i, r, &q);
                u.row_submul(i, r, &q);
                if !h[(i, c)].is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            h.row_submul(i, r, &q);
            u.row_submul(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Extend a basis of a saturated sublattice of Z^n to an element of GL(n, Z)
/// whose first k rows are the input rows verbatim.
///
/// Fails with `NotSaturated` when the row lattice is not a direct summand
/// of Z^n (equivalently, when some elementary divisor exceeds 1).
pub fn complete_to_unimodular(primitive_rows: &IntegerMatrix) -> Result<IntegerMatrix> {
    let k = primitive_rows.rows();
    let n = primitive_rows.cols();
    if k > n {
        return Err(Error::NotSaturated);
    }
    if k == 0 {
        return Ok(IntegerMatrix::identity(n));
    }
    // u * a^t = h with h = [T; 0]; then a * u^t = [T^t | 0].
    let (h, u) = row_hnf(&primitive_rows.transpose());
    // rank must be k and the top k x k block T must be unimodular
    let t = {
        let mut t = IntegerMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                t[(i, j)] = h[(i, j)].clone();
            }
        }
        t
    };
    for i in k..n {
        for j in 0..k {
            if !h[(i, j)].is_zero() {
                return Err(Error::NotSaturated);
            }
        }
    }
    if !t.is_unimodular() {
        return Err(Error::NotSaturated);
    }
    // completion = [[T^t, 0], [0, I]] * (u^t)^{-1}
    let mut top = IntegerMatrix::zeros(n, n);
    let tt = t.transpose();
    for i in 0..k {
        for j in 0..k {
            top[(i, j)] = tt[(i, j)].clone();
        }
    }
    for i in k..n {
        top[(i, i)] = Int::one();
    }
    let ut_inv = u
        .transpose()
        .to_rational()
        .invert()
        .expect("unimodular matrices are invertible")
        .to_integer()
        .expect("inverse of a unimodular integer matrix is integral");
    Ok(top.mul(&ut_inv))
}

/// A linear subspace of Q^n, canonically represented by the RREF of any
/// spanning set (zero rows dropped).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
}

impl Subspace {
    /// Canonicalize a spanning set of row vectors.
    pub fn from_rows(ambient_dim: usize, rows: RationalMatrix) -> Self {
        assert_eq!(rows.cols(), ambient_dim);
        let (r, pivots) = rows.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let all: Vec<usize> = (0..ambient_dim).collect();
        Subspace {
            ambient_dim,
            basis: r.submatrix(&keep, &all),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
        }
    }

    /// Span of the coordinate axes e_i for i in idx (0-based).
    pub fn coordinate(ambient_dim: usize, idx: &[usize]) -> Self {
        let mut rows = RationalMatrix::zeros(idx.len(), ambient_dim);
        for (r, &i) in idx.iter().enumerate() {
            rows[(r, i)] = Rat::one();
        }
        Subspace::from_rows(ambient_dim, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let stacked = self
            .basis
            .vstack(&RationalMatrix::from_rows(vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    pub fn sum_dim(&self, other: &Subspace) -> usize {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        self.basis.vstack(&other.basis).rank()
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }

    pub fn intersects_trivially(&self, other: &Subspace) -> bool {
        self.intersection_dim(other) == 0
    }

    /// Annihilator in the dual space: {f : f(v) = 0 for all v in self},
    /// identified with a subspace of Q^n via the dual standard basis.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    /// Pivot columns of the canonical basis, 0-based.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.basis.rref().1
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ambient_dim: usize,
            basis: RationalMatrix,
        }
        let raw = Raw::deserialize(d)?;
        if raw.basis.cols() != raw.ambient_dim && raw.basis.rows() != 0 {
            return Err(de::Error::custom("basis width must equal ambient_dim"));
        }
        let basis = if raw.basis.rows() == 0 {
            RationalMatrix::zeros(0, raw.ambient_dim)
        } else {
            raw.basis
        };
        Ok(Subspace::from_rows(raw.ambient_dim, basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows)
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = rm(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, rm(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity_fixed() {
        let id = RationalMatrix::identity(3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_row_swap() {
        let (r, p) = rm(&[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r, RationalMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_idempotent_and_span_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let m = RationalMatrix::new(
                rows,
                cols,
                (0..rows * cols)
                    .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
                    .collect(),
            );
            let (r1, _) = m.rref();
            let (r2, _) = r1.rref();
            assert_eq!(r1, r2);
            // same row span
            assert_eq!(
                Subspace::from_rows(cols, m.clone()),
                Subspace::from_rows(cols, r1)
            );
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel().is_zero());
        assert_eq!(RationalMatrix::zeros(2, 2).kernel().dim(), 2);
        let k = rm(&[&[1, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[rat_int(-2), rat_int(1)]));
    }

    #[test]
    fn invert_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.invert().unwrap(), id);

        // 2x2 inverse formula oracle: [[a,b],[c,d]]^-1 = 1/(ad-bc) [[d,-b],[-c,a]]
        let m = RationalMatrix::from_rows(vec![
            vec![rat_int(0), rat(1, 2)],
            vec![rat(-1, 2), rat_int(0)],
        ]);
        let det = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)];
        let oracle = RationalMatrix::from_rows(vec![
            vec![&m[(1, 1)] / &det, -&m[(0, 1)] / &det],
            vec![-&m[(1, 0)] / &det, &m[(0, 0)] / &det],
        ]);
        assert_eq!(oracle, rm(&[&[0, -2], &[2, 0]]));
        assert_eq!(m.invert().unwrap(), oracle);

        assert_eq!(rm(&[&[1, 1], &[1, 1]]).invert(), Err(Error::Singular));
    }

    #[test]
    fn invert_iff_full_rank_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let m = RationalMatrix::new(
                n,
                n,
                (0..n * n).map(|_| rat_int(rng.gen_range(-4..=4))).collect(),
            );
            match m.invert() {
                Ok(inv) => {
                    assert_eq!(m.rank(), n);
                    assert_eq!(m.mul(&inv), RationalMatrix::identity(n));
                }
                Err(Error::Singular) => assert!(m.rank() < n),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn hnf_examples() {
        let id = IntegerMatrix::identity(2);
        let (h, u) = row_hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let (h, u) = row_hnf(&IntegerMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(h, IntegerMatrix::identity(2));
        assert_eq!(u, IntegerMatrix::from_i64(&[&[0, 1], &[1, 0]]));

        let (h, u) = row_hnf(&IntegerMatrix::from_i64(&[&[2, 4]]));
        assert_eq!(h, IntegerMatrix::from_i64(&[&[2, 4]]));
        assert_eq!(u, IntegerMatrix::identity(1));
    }

    #[test]
    fn hnf_random_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let a = IntegerMatrix::new(
                rows,
                cols,
                (0..rows * cols)
                    .map(|_| Int::from(rng.gen_range(-9..=9i64)))
                    .collect(),
            );
            let (h, u) = row_hnf(&a);
            assert_eq!(u.mul(&a), h);
            assert!(u.is_unimodular());
            // echelon with positive pivots, entries above reduced into [0, pivot)
            let mut last_pivot_col: Option<usize> = None;
            for i in 0..rows {
                let pivot_col = (0..cols).find(|&j| !h[(i, j)].is_zero());
                if let Some(c) = pivot_col {
                    if let Some(prev) = last_pivot_col {
                        assert!(c > prev);
                    }
                    assert!(h[(i, c)].is_positive());
                    for k in 0..i {
                        assert!(!h[(k, c)].is_negative() && h[(k, c)] < h[(i, c)]);
                    }
                    last_pivot_col = Some(c);
                } else {
                    for k in i..rows {
                        for j in 0..cols {
                            assert!(h[(k, j)].is_zero());
                        }
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn complete_to_unimodular_examples() {
        let a = complete_to_unimodular(&IntegerMatrix::from_i64(&[&[1, 0]])).unwrap();
        assert_eq!(a, IntegerMatrix::identity(2));

        let a = complete_to_unimodular(&IntegerMatrix::from_i64(&[&[1, 1]])).unwrap();
        assert_eq!(a, IntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert!(a.det().abs().is_one());

        assert_eq!(
            complete_to_unimodular(&IntegerMatrix::from_i64(&[&[2, 0]])),
            Err(Error::NotSaturated)
        );
    }

    #[test]
    fn complete_to_unimodular_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut done = 0;
        while done < 60 {
            // random unimodular matrix via a short product of elementary ops
            let n = rng.gen_range(1..=5);
            let mut m = IntegerMatrix::identity(n);
            for _ in 0..8 {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i == j {
                    continue;
                }
                let q = Int::from(rng.gen_range(-3..=3i64));
                m.row_submul(i, j, &q);
            }
            let k = rng.gen_range(1..=n);
            let input = {
                let rows: Vec<usize> = (0..k).collect();
                let cols: Vec<usize> = (0..n).collect();
                let r = m.to_rational().submatrix(&rows, &cols);
                r.to_integer().unwrap()
            };
            let completed = complete_to_unimodular(&input).unwrap();
            assert!(completed.det().abs().is_one());
            for i in 0..k {
                for j in 0..n {
                    assert_eq!(completed[(i, j)], input[(i, j)]);
                }
            }
            done += 1;
        }
    }

    #[test]
    fn subspace_equality_and_annihilator() {
        let s1 = Subspace::from_rows(2, rm(&[&[2, 4]]));
        let s2 = Subspace::from_rows(2, rm(&[&[1, 2]]));
        assert_eq!(s1, s2);
        let ann = s1.annihilator();
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&[rat_int(-2), rat_int(1)]));
    }

    #[test]
    fn rational_json_round_trip() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(-3)],
            vec![rat_int(0), rat(-7, 3)],
        ]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1/2",-3],[0,"-7/3"]]"#);
        let back: RationalMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
