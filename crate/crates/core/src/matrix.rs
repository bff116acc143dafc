//! Dense matrices over `Q(zeta_n)` with exact Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{min_conductor_of, Cyclotomic};
use crate::error::{Error, Result};
use crate::rational::{lcm_u32, Rational};

/// Row-major matrix whose entries all live at one conductor.
#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<Cyclotomic>,
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Binary matrix operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Mul,
    Kron,
    DirectSum,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Self { rows, cols, conductor, entries: vec![Cyclotomic::zero(conductor); rows * cols] }
    }

    pub fn identity(d: usize, conductor: u32) -> Self {
        Self::scalar(d, &Cyclotomic::one(conductor))
    }

    pub fn scalar(d: usize, c: &Cyclotomic) -> Self {
        let mut m = Self::zeros(d, d, c.conductor());
        for i in 0..d {
            m.entries[i * d + i] = c.clone();
        }
        m
    }

    /// Builds from rows, lifting every entry to the least common conductor.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries: Vec<Cyclotomic> = rows.into_iter().flatten().collect();
        Ok(Self::from_entries(r, c, entries))
    }

    /// Integer matrix at the given conductor.
    pub fn from_ints(rows: &[&[i64]], conductor: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|&v| Cyclotomic::from_int(conductor, v))).collect();
        Self { rows: r, cols: c, conductor, entries }
    }

    pub(crate) fn from_entries(rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let conductor = entries.iter().fold(1, |m, e| lcm_u32(m, e.conductor()));
        let entries = entries
            .into_iter()
            .map(|e| if e.conductor() == conductor { e } else { e.at(conductor) })
            .collect();
        Self { rows, cols, conductor, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, conductor: u32, f: impl Fn(usize, usize) -> Cyclotomic) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        let m = Self::from_entries(rows, cols, entries);
        if m.conductor % conductor == 0 {
            m
        } else {
            m.at(lcm_u32(m.conductor, conductor))
        }
    }

    /// Column vector.
    pub fn column(v: Vec<Cyclotomic>) -> Self {
        let n = v.len();
        Self::from_entries(n, 1, v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        let v = if v.conductor() == self.conductor {
            v
        } else {
            let m = lcm_u32(self.conductor, v.conductor());
            if m != self.conductor {
                *self = self.at(m);
            }
            v.at(m)
        };
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Same matrix over `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::ConductorMismatch(self.conductor, m));
        }
        Ok(self.at(m))
    }

    pub(crate) fn at(&self, m: u32) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        Self { rows: self.rows, cols: self.cols, conductor: m, entries: self.entries.iter().map(|e| e.at(m)).collect() }
    }

    /// Rewrites over `Q(zeta_m)` if every entry lies there.
    pub fn descend(&self, m: u32) -> Option<Self> {
        let entries = self.entries.iter().map(|e| e.descend(m)).collect::<Option<Vec<_>>>()?;
        Some(Self { rows: self.rows, cols: self.cols, conductor: m, entries })
    }

    pub fn min_conductor(&self) -> u32 {
        min_conductor_of(&self.entries)
    }

    /// Entrywise `zeta -> zeta^k`.
    pub fn galois(&self, k: u32) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e.galois(k)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, conductor: self.conductor, entries }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_entries(self.rows, self.cols, self.entries.iter().map(|e| e * c).collect())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// The scalar `c` if the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<Cyclotomic> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if (i == j && e != c) || (i != j && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(c.clone())
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.conductor);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let m = lcm_u32(self.conductor, other.conductor);
            (self.at(m), other.at(m))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let (a, b) = self.aligned(other);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect();
        Ok(Self { entries, ..a })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let (a, b) = self.aligned(other);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| x - y).collect();
        Ok(Self { entries, ..a })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (a, b) = self.aligned(other);
        let n = a.conductor;
        let mut entries = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = Cyclotomic::zero(n);
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self { rows: a.rows, cols: b.cols, conductor: n, entries })
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let (r, c) = (a.rows * b.rows, a.cols * b.cols);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(a.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols));
            }
        }
        Self { rows: r, cols: c, conductor: a.conductor, entries }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols, a.conductor);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.entries[i * m.cols + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.entries[(a.rows + i) * m.cols + a.cols + j] = b.get(i, j).clone();
            }
        }
        m
    }

    /// Sub-block with the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        Self { rows: rows.len(), cols: cols.len(), conductor: self.conductor, entries }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Matrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::ShapeMismatch("vstack column counts differ".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        Ok(Self::from_entries(rows, cols, entries))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Cyclotomic>]) -> Result<Self> {
        let rows = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch("columns of different lengths".into()));
        }
        let entries = (0..rows).flat_map(|i| cols.iter().map(move |c| c[i].clone())).collect();
        Ok(Self::from_entries(rows, cols.len(), entries))
    }

    pub fn column_vector(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Reduced row echelon form; pivots are the first nonzero entry in column order.
    pub fn rref(&self) -> Rref {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for x in a[r].iter_mut().skip(c) {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let entries = a.into_iter().flatten().collect();
        let reduced = Self { rows: self.rows, cols: self.cols, conductor: self.conductor, entries };
        Rref { reduced, rank: pivots.len(), pivots }
    }

    /// Rows on which the columns are independent (pivots of the transpose).
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().rref().pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let n = self.conductor;
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Cyclotomic::zero(n); self.cols];
            v[f] = Cyclotomic::one(n);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(i, f);
            }
            out.push(v);
        }
        out
    }

    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("cannot invert {}x{}", self.rows, self.cols)));
        }
        let d = self.rows;
        let mut aug = Vec::with_capacity(d * 2 * d);
        let id = Self::identity(d, self.conductor);
        for i in 0..d {
            aug.extend_from_slice(self.row(i));
            aug.extend_from_slice(id.row(i));
        }
        let aug = Self { rows: d, cols: 2 * d, conductor: self.conductor, entries: aug };
        let Rref { reduced, rank, pivots } = aug.rref();
        if rank < d || pivots[d - 1] >= d {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (d..2 * d).collect();
        Ok(reduced.submatrix(&(0..d).collect::<Vec<_>>(), &cols))
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Cyclotomic::zero(self.conductor), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<&Cyclotomic> {
        self.entries.iter().find(|e| !e.is_zero())
    }

    /// Whether every entry is fixed by the given exponents.
    pub fn fixed_by(&self, exponents: &[u32]) -> bool {
        exponents.iter().all(|&k| self.entries.iter().all(|e| e.galois(k) == *e))
    }
}

pub fn mat_arith(a: &Matrix, b: &Matrix, op: MatOp) -> Result<Matrix> {
    match op {
        MatOp::Add => a.checked_add(b),
        MatOp::Mul => a.checked_mul(b),
        MatOp::Kron => Ok(a.kron(b)),
        MatOp::DirectSum => Ok(a.direct_sum(b)),
    }
}

/// Rank of a list of vectors of equal length.
pub fn vectors_rank(vs: &[Vec<Cyclotomic>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_rows(vs.to_vec()).map(|m| m.rank()).unwrap_or(0)
}

/// Coordinates with respect to a list of linearly independent vectors.
#[derive(Debug, Clone)]
pub struct SpanCoordinates {
    basis: Matrix,
    rows: Vec<usize>,
    block_inv: Matrix,
}

impl SpanCoordinates {
    pub fn new(vectors: &[Vec<Cyclotomic>]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::ShapeMismatch("empty spanning set".into()));
        }
        let basis = Matrix::from_columns(vectors)?;
        let rows = basis.independent_rows();
        if rows.len() != vectors.len() {
            return Err(Error::Singular);
        }
        let all: Vec<usize> = (0..vectors.len()).collect();
        let block_inv = basis.submatrix(&rows, &all).invert()?;
        Ok(Self { basis, rows, block_inv })
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `x` with `sum_i x_i b_i = v`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        if v.len() != self.basis.rows() {
            return None;
        }
        let picked: Vec<Cyclotomic> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let x = self.block_inv.apply(&picked);
        let back = self.basis.apply(&x);
        back.iter().zip(v).all(|(a, b)| a == b).then_some(x)
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for Matrix {}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        self.checked_add(other).expect("matrix shapes must agree")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        self.checked_sub(other).expect("matrix shapes must agree")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix shapes must agree")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { entries: self.entries.iter().map(|e| -e).collect(), ..self.clone() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over Q(z{})]", self.rows, self.cols, self.conductor)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
