//! Exact linear algebra over ℚ and over the rational function field ℚ(t).
//!
//! Everything here is exact. Elimination is generic over the [`Field`]
//! trait so the same echelon code serves `QMatrix` and matrices of
//! [`RatFunc`]; [`rank_ratfunc`] additionally has a fraction-free route
//! over ℚ[t] that clears denominators up front.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Dense matrix over ℚ.
pub type QMatrix = Mat<Rational>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Operations needed by Gaussian elimination.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Panics when `rhs` is zero.
    fn over(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Pivot preference, lower is better.
    fn pivot_cost(&self) -> u64;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        assert!(!Zero::is_zero(rhs), "division by zero");
        self / rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn pivot_cost(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Mat {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out[(i, j)].plus(&a.times(b));
                    out[(i, j)] = cur;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.times(c)).collect(),
        }
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).fold(F::zero(), |acc, i| acc.plus(&self[(i, i)]))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = eliminate(&mut rows, self.cols, true);
        (Mat::from_rows(rows, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        eliminate(&mut rows, self.cols, false).len()
    }

    /// Basis of the right null space `{v : self * v = 0}`.
    ///
    /// One vector per free column `f`: 1 at `f`, 0 at the other free
    /// columns, minus the reduced row entries at pivot columns. The output
    /// therefore only depends on the row space, not on pivot choices.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r[(i, f)].negated();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = eliminate(&mut rows, self.cols + 1, true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }
}

impl QMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), cols)
    }

    /// Determinant by exact elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det: Rational = One::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !Zero::is_zero(&a[r][c])) else {
                return Zero::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if Zero::is_zero(&a[r][c]) {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
            }
        }
        det
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Coordinates with respect to a fixed set of linearly independent rows.
///
/// Built once from the reduced echelon form of the rows and the transform
/// taking the original rows to it, so each lookup is a sparse dot product
/// instead of a fresh elimination.
#[derive(Clone, Debug)]
pub struct SpanCoordinates {
    reduced: QMatrix,
    pivots: Vec<usize>,
    transform: QMatrix,
}

impl SpanCoordinates {
    /// `None` when the rows are dependent.
    pub fn new(rows: &QMatrix) -> Option<Self> {
        let d = rows.rows();
        let n = rows.cols();
        let aug = Mat::from_fn(d, n + d, |i, j| {
            if j < n {
                rows[(i, j)].clone()
            } else {
                rat((j - n == i) as i64)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < d || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(SpanCoordinates {
            reduced: Mat::from_fn(d, n, |i, j| r[(i, j)].clone()),
            transform: Mat::from_fn(d, d, |i, j| r[(i, n + j)].clone()),
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns of the reduced basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduced echelon basis of the span.
    pub fn reduced(&self) -> &QMatrix {
        &self.reduced
    }

    /// `v` minus its projection along the pivot coordinates; zero exactly
    /// when `v` lies in the span.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = &v[p];
            if Zero::is_zero(c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(self.reduced.row(i)) {
                if !Zero::is_zero(r) {
                    *o -= c * r;
                }
            }
        }
        out
    }

    /// Coefficients `c` with `v = sum c_i rows_i`, or `None` off the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.residual(v).iter().all(Zero::is_zero) {
            return None;
        }
        let d = self.dim();
        let mut c: Vec<Rational> = vec![Zero::zero(); d];
        for (i, &p) in self.pivots.iter().enumerate() {
            let a = &v[p];
            if Zero::is_zero(a) {
                continue;
            }
            for (cj, t) in c.iter_mut().zip(self.transform.row(i)) {
                if !Zero::is_zero(t) {
                    *cj += a * t;
                }
            }
        }
        Some(c)
    }
}

/// Row space kept in reduced echelon form, extended one vector at a time.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; returns whether it enlarged
    /// the row space.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.cols, "vector has wrong length");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.minus(&c.times(r));
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            *x = x.over(&inv);
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = x.minus(&c.times(r));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Canonical kernel basis of the accumulated rows.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = row[f].negated();
                }
                v
            })
            .collect()
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

/// In-place Gaussian elimination on `rows`. Returns pivot columns in order;
/// afterwards the first `pivots.len()` rows are the echelon rows. With
/// `reduce`, pivots are scaled to one and cleared above as well.
fn eliminate<F: Field>(rows: &mut [Vec<F>], cols: usize, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].pivot_cost());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        if reduce {
            let inv = F::one().over(&rows[r][c]);
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = x.times(&inv);
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let clear = |row: &mut Vec<F>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].over(&prow[c]);
            for k in c..cols {
                if prow[k].is_zero() {
                    continue;
                }
                row[k] = row[k].minus(&f.times(&prow[k]));
            }
        };
        tail.iter_mut().for_each(clear);
        if reduce {
            let (above, rest) = rows.split_at_mut(r);
            let prow = &rest[0];
            for row in above.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for k in c..cols {
                    if prow[k].is_zero() {
                        continue;
                    }
                    row[k] = row[k].minus(&f.times(&prow[k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Univariate polynomial over ℚ in `t`, coefficients from low to high
/// degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Zero::zero(), One::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Zero::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Zero::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Zero::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("division by the zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Zero::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if Zero::is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Scaled so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = <Rational as One>::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of ℚ(t): `numer / denom` with coprime parts and monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    numer: UPoly,
    denom: UPoly,
}

impl RatFunc {
    /// Panics on a zero denominator.
    pub fn new(numer: UPoly, denom: UPoly) -> Self {
        assert!(!denom.is_zero(), "zero denominator in rational function");
        if numer.is_zero() {
            return Self::from_poly(UPoly::zero());
        }
        let g = numer.gcd(&denom);
        let (n, _) = numer.div_rem(&g);
        let (d, _) = denom.div_rem(&g);
        let l = d.lead().cloned().expect("nonzero denominator");
        let inv = <Rational as One>::one() / l;
        RatFunc {
            numer: n.scale(&inv),
            denom: d.scale(&inv),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc {
            numer: p,
            denom: UPoly::constant(One::one()),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(UPoly::t())
    }

    pub fn numer(&self) -> &UPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UPoly {
        &self.denom
    }

    /// Value at `t0`, `None` at a pole.
    pub fn eval(&self, t0: &Rational) -> Option<Rational> {
        let d = self.denom.eval(t0);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.numer.eval(t0) / d)
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        RatFunc::constant(One::one())
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.denom == rhs.denom {
            return RatFunc::new(self.numer.add(&rhs.numer), self.denom.clone());
        }
        RatFunc::new(
            self.numer.mul(&rhs.denom).add(&rhs.numer.mul(&self.denom)),
            self.denom.mul(&rhs.denom),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        RatFunc::new(self.numer.mul(&rhs.numer), self.denom.mul(&rhs.denom))
    }
    fn over(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in Q(t)");
        RatFunc::new(self.numer.mul(&rhs.denom), self.denom.mul(&rhs.numer))
    }
    fn negated(&self) -> Self {
        RatFunc {
            numer: self.numer.neg(),
            denom: self.denom.clone(),
        }
    }
    fn pivot_cost(&self) -> u64 {
        (self.numer.degree().unwrap_or(0) + self.denom.degree().unwrap_or(0)) as u64
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num_terms = self.numer.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count();
        if self.denom.degree() == Some(0) {
            return write!(f, "{}", self.numer);
        }
        if num_terms > 1 {
            write!(f, "({})/({})", self.numer, self.denom)
        } else {
            write!(f, "{}/({})", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rank over ℚ(t).
///
/// Each row is first multiplied through by the lcm of its denominators, so
/// elimination runs fraction-free on ℚ[t] rows. After every elimination
/// step the touched row is divided by the gcd of its entries. Pivots are
/// the lowest-degree nonzero entries of the current column.
pub fn rank_ratfunc(m: &Mat<RatFunc>) -> usize {
    let cols = m.cols();
    let mut rows: Vec<Vec<UPoly>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(UPoly::constant(One::one()), |acc, x| {
                let g = acc.gcd(&x.denom);
                acc.mul(&x.denom).div_rem(&g).0
            });
            row.iter().map(|x| x.numer.mul(&lcm.div_rem(&x.denom).0)).collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let best = (rank..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].degree());
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&prow[c]);
            let a = prow[c].div_rem(&g).0;
            let b = row[c].div_rem(&g).0;
            for k in c..cols {
                row[k] = row[k].mul(&a).sub(&prow[k].mul(&b));
            }
            let content = row.iter().fold(UPoly::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && content.degree() != Some(0) {
                for x in row.iter_mut() {
                    *x = x.div_rem(&content).0;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_reducer_matches_batch_elimination() {
        let m = QMatrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2], &[1, 3, 2, 6]]);
        let mut r = RowReducer::new(4);
        let grew: Vec<bool> = m.row_vecs().into_iter().map(|v| r.insert(v)).collect();
        assert_eq!(grew, vec![true, false, true, false]);
        assert_eq!(r.rank(), m.rank());
        assert_eq!(r.kernel_basis(), m.kernel_basis());
    }

    fn rf(p: &[i64]) -> RatFunc {
        RatFunc::from_poly(UPoly::new(p.iter().map(|&x| rat(x)).collect()))
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(QMatrix::identity(2).rank(), 2);
        assert_eq!(QMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_small_cases() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
        let k = QMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, rat((i == j) as i64));
            }
        }
        let k = QMatrix::from_ints(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn kernel_is_canonical_under_row_operations() {
        let a = QMatrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 7, 9]]);
        let b = QMatrix::from_ints(&[&[3, 6, 10, 13], &[-1, -2, -4, -5]]);
        assert_eq!(a.kernel_basis(), b.kernel_basis());
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = QMatrix::from_ints(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[rat(3), rat(1)]), Some(vec![rat(2), rat(1)]));
        let s = QMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[rat(1), rat(3)]), None);
    }

    #[test]
    fn determinant() {
        let a = QMatrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), rat(18));
        assert_eq!(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).det(), rat(0));
    }

    #[test]
    fn upoly_gcd_and_division() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = UPoly::new(vec![rat(-2), rat(1), rat(1)]);
        let b = UPoly::new(vec![rat(3), rat(-4), rat(1)]);
        assert_eq!(a.gcd(&b), UPoly::new(vec![rat(-1), rat(1)]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UPoly::constant(rat(1)));
        assert_eq!(r, UPoly::new(vec![rat(-5), rat(5)]));
    }

    #[test]
    fn ratfunc_normalizes() {
        let x = RatFunc::new(UPoly::new(vec![rat(-2), rat(2)]), UPoly::new(vec![rat(-3), rat(3)]));
        assert_eq!(x, RatFunc::constant(ratio(2, 3)));
        let y = RatFunc::t().over(&RatFunc::t().times(&RatFunc::t()));
        assert_eq!(y.numer(), &UPoly::constant(rat(1)));
        assert_eq!(y.denom(), &UPoly::t());
        assert_eq!(y.eval(&rat(0)), None);
        assert_eq!(y.eval(&rat(2)), Some(ratio(1, 2)));
    }

    #[test]
    fn rank_over_qt() {
        let m = Mat::from_rows(vec![vec![rf(&[0, 1]), rf(&[0])], vec![rf(&[0]), rf(&[1])]], 2);
        assert_eq!(rank_ratfunc(&m), 2);
        let m = Mat::from_rows(vec![vec![rf(&[0, 1]), rf(&[0, 0, 1])], vec![rf(&[1]), rf(&[0, 1])]], 2);
        assert_eq!(rank_ratfunc(&m), 1);
        assert_eq!(m.rank(), 1);
        let m = Mat::from_rows(vec![vec![rf(&[-1, 1])]], 1);
        assert_eq!(rank_ratfunc(&m), 1);
    }

    #[test]
    fn rank_over_qt_with_denominators() {
        let inv_t = RatFunc::one().over(&RatFunc::t());
        // [[1/t, 1], [1, t]] has rank 1.
        let m = Mat::from_rows(vec![vec![inv_t, rf(&[1])], vec![rf(&[1]), rf(&[0, 1])]], 2);
        assert_eq!(rank_ratfunc(&m), 1);
    }
}
