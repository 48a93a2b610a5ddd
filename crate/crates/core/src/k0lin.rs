//! Exact integer linear algebra on Grothendieck groups of incidence algebras.
//!
//! Vectors are written in the basis of simple classes `[S_x]`, indexed by the
//! canonical element order of the poset. The zeta matrix `Z` has the
//! projective classes as columns, and the Coxeter matrix is `Φ = -Zᵀ·Z⁻¹`,
//! so that `Φ·[P_a] = -[I_a]` for every element `a`.

use std::fmt;
use std::ops::Index;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{narrow, Exact};
use crate::poset::Poset;

/// Dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_big_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(
                "rows have different lengths".into(),
            ));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[K0Vector]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, K0Vector::len);
        if columns.iter().any(|v| v.len() != r) {
            return Err(Error::DimensionMismatch(
                "columns have different lengths".into(),
            ));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.coords().iter().enumerate() {
                m.data[i * c + j] = v.clone();
            }
        }
        Ok(m)
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

    pub fn get(&self, r: usize, c: usize) -> Option<&BigInt> {
        (r < self.rows && c < self.cols).then(|| &self.data[r * self.cols + c])
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> K0Vector {
        assert!(c < self.cols, "column {c} out of range");
        K0Vector::new((0..self.rows).map(|r| self[(r, c)].clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|r| r.iter().map(i64::from_big).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let a = self.to_rows();
        let b = other.to_rows();
        let rows = match (narrow::<i64>(&a), narrow::<i64>(&b)) {
            (Some(a64), Some(b64)) => dense_mul(&a64, &b64, other.cols)
                .map(|r| lift(&r))
                .unwrap_or_else(|| dense_mul(&a, &b, other.cols).expect("bigint never overflows")),
            _ => dense_mul(&a, &b, other.cols).expect("bigint never overflows"),
        };
        Self::from_big_rows(rows).map(|mut m| {
            m.cols = other.cols;
            m
        })
    }

    pub fn mul_vec(&self, v: &K0Vector) -> Result<K0Vector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(K0Vector::new(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .zip(v.coords())
                        .filter(|(a, _)| !a.is_zero_value())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: usize) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Whether the matrix equals `s` times the identity.
    pub fn is_scalar(&self, s: i64) -> bool {
        if !self.is_square() {
            return false;
        }
        let s = BigInt::from(s);
        (0..self.rows).all(|r| {
            self.row(r).iter().enumerate().all(
                |(c, v)| {
                    if r == c {
                        *v == s
                    } else {
                        v.is_zero_value()
                    }
                },
            )
        })
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        self.get(r, c).unwrap_or_else(|| {
            panic!(
                "entry ({r},{c}) outside a {}x{} matrix",
                self.rows, self.cols
            )
        })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let items: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", items.join(", "))?;
        }
        Ok(())
    }
}

fn lift<T: Exact>(rows: &[Vec<T>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(T::to_big).collect())
        .collect()
}

fn dense_mul<T: Exact>(a: &[Vec<T>], b: &[Vec<T>], cols: usize) -> Option<Vec<Vec<T>>> {
    a.par_iter()
        .map(|row| {
            let mut out = vec![T::zero_value(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero_value() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero_value() {
                        *o = o.add(&x.mul(y)?)?;
                    }
                }
            }
            Some(out)
        })
        .collect()
}

/// Integer vector in the basis of simple classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Vector {
    coords: Vec<BigInt>,
}

impl K0Vector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        K0Vector { coords }
    }

    pub fn zeros(n: usize) -> Self {
        K0Vector {
            coords: vec![BigInt::zero(); n],
        }
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        K0Vector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(i64::from_big).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &K0Vector) -> K0Vector {
        assert_eq!(self.len(), other.len(), "vector lengths differ");
        K0Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &K0Vector) -> K0Vector {
        assert_eq!(self.len(), other.len(), "vector lengths differ");
        K0Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, s: i64) -> K0Vector {
        let s = BigInt::from(s);
        K0Vector::new(self.coords.iter().map(|a| a * &s).collect())
    }

    /// Support of the vector.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.coords[i].is_zero_value())
            .collect()
    }
}

impl fmt::Display for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coords.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", items.join(", "))
    }
}

/// The least `k` with `Φ^k = sign·I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedOrder {
    pub k: usize,
    pub sign: i8,
    pub exact_order: usize,
}

impl SignedOrder {
    pub fn new(k: usize, sign: i8) -> Self {
        SignedOrder {
            k,
            sign,
            exact_order: if sign > 0 { k } else { 2 * k },
        }
    }
}

/// Default exponent bound for order searches on an `n`-element poset.
pub fn default_order_bound(n: usize) -> usize {
    4 * n.max(1)
}

pub fn zeta_matrix(p: &Poset) -> IntMatrix {
    let n = p.size();
    let mut z = IntMatrix::zeros(n, n);
    for b in 0..n {
        for a in p.up_set(b).ones() {
            z.data[b * n + a] = BigInt::one();
        }
    }
    z
}

/// Nonzero Möbius values per row: `rows[x]` lists `(y, μ(x, y))` in increasing `y`.
fn mobius_rows<T: Exact>(p: &Poset) -> Option<Vec<Vec<(usize, T)>>> {
    (0..p.size())
        .into_par_iter()
        .map(|x| {
            let mut nz: Vec<(usize, T)> = vec![(x, T::one_value())];
            for y in p.up_set(x).ones().filter(|&y| y != x) {
                let mut s = T::zero_value();
                for (z, v) in &nz {
                    if p.leq(*z, y) {
                        s = s.add(v)?;
                    }
                }
                if !s.is_zero_value() {
                    nz.push((y, s.neg()?));
                }
            }
            Some(nz)
        })
        .collect()
}

pub fn mobius_matrix(p: &Poset) -> IntMatrix {
    let n = p.size();
    let rows: Vec<Vec<(usize, BigInt)>> = match mobius_rows::<i64>(p) {
        Some(r) => r
            .into_iter()
            .map(|row| row.into_iter().map(|(y, v)| (y, BigInt::from(v))).collect())
            .collect(),
        None => mobius_rows::<BigInt>(p).expect("bigint never overflows"),
    };
    let mut m = IntMatrix::zeros(n, n);
    for (x, row) in rows.into_iter().enumerate() {
        for (y, v) in row {
            m.data[x * n + y] = v;
        }
    }
    m
}

/// Nonzero entries of each column of Φ, as `(row, value)` pairs.
fn coxeter_columns<T: Exact>(
    p: &Poset,
    mobius: &[Vec<(usize, T)>],
) -> Option<Vec<Vec<(usize, T)>>> {
    let n = p.size();
    let mut by_column: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for (k, row) in mobius.iter().enumerate() {
        for (j, v) in row {
            by_column[*j].push((k, v.clone()));
        }
    }
    // Φ[i][j] = -Σ_{k ≤ i} μ(k, j)
    by_column
        .par_iter()
        .map_init(
            || vec![T::zero_value(); n],
            |out, col| {
                for (k, v) in col {
                    for i in p.up_set(*k).ones() {
                        out[i] = out[i].sub(v)?;
                    }
                }
                let mut nz = Vec::new();
                for (i, x) in out.iter_mut().enumerate() {
                    if !x.is_zero_value() {
                        nz.push((i, std::mem::replace(x, T::zero_value())));
                    }
                }
                Some(nz)
            },
        )
        .collect()
}

pub fn coxeter_matrix(p: &Poset) -> IntMatrix {
    let n = p.size();
    let mut phi = IntMatrix::zeros(n, n);
    if let Some(cols) = mobius_rows::<i64>(p).and_then(|m| coxeter_columns(p, &m)) {
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col {
                phi.data[i * n + j] = BigInt::from(v);
            }
        }
        return phi;
    }
    let m = mobius_rows::<BigInt>(p).expect("bigint never overflows");
    let cols = coxeter_columns(p, &m).expect("bigint never overflows");
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col {
            phi.data[i * n + j] = v;
        }
    }
    phi
}

/// Indicator of the down-set `{b : b <= a}`.
pub fn projective_class(p: &Poset, a: usize) -> Result<K0Vector> {
    if a >= p.size() {
        return Err(Error::ElementOutOfRange(a));
    }
    let mut v = K0Vector::zeros(p.size());
    for b in p.down_set(a) {
        v.coords[b] = BigInt::one();
    }
    Ok(v)
}

/// Indicator of the up-set `{c : a <= c}`.
pub fn injective_class(p: &Poset, a: usize) -> Result<K0Vector> {
    if a >= p.size() {
        return Err(Error::ElementOutOfRange(a));
    }
    let mut v = K0Vector::zeros(p.size());
    for c in p.up_set(a).ones() {
        v.coords[c] = BigInt::one();
    }
    Ok(v)
}

/// A linear map that can be applied to vectors with checked arithmetic.
trait LinearOp<T: Exact>: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[T]) -> Option<Vec<T>>;
}

/// A matrix stored by columns, so that sparse inputs cost little.
struct ColumnOp<T> {
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Exact> ColumnOp<T> {
    fn from_entries(n: usize, entries: impl Iterator<Item = (usize, usize, T)>) -> Self {
        let mut columns = vec![Vec::new(); n];
        for (i, j, v) in entries {
            if !v.is_zero_value() {
                columns[j].push((i, v));
            }
        }
        ColumnOp { columns }
    }
}

impl<T: Exact> LinearOp<T> for ColumnOp<T> {
    fn dim(&self) -> usize {
        self.columns.len()
    }

    fn apply(&self, x: &[T]) -> Option<Vec<T>> {
        let mut out = vec![T::zero_value(); x.len()];
        for (col, xj) in self.columns.iter().zip(x) {
            if xj.is_zero_value() {
                continue;
            }
            for (i, v) in col {
                out[*i] = out[*i].add(&v.mul(xj)?)?;
            }
        }
        Some(out)
    }
}

/// `x ↦ -Zᵀ·M·x` where `M = Z⁻¹` is kept sparse and `Zᵀ` is applied by
/// solving the unit lower-triangular system `Mᵀ·y = w`.
struct MobiusOp<T> {
    rows: Vec<Vec<(usize, T)>>,
    strict_columns: Vec<Vec<(usize, T)>>,
}

impl<T: Exact> MobiusOp<T> {
    fn new(rows: Vec<Vec<(usize, T)>>) -> Self {
        let mut strict_columns = vec![Vec::new(); rows.len()];
        for (k, row) in rows.iter().enumerate() {
            for (j, v) in row {
                if *j != k {
                    strict_columns[*j].push((k, v.clone()));
                }
            }
        }
        MobiusOp {
            rows,
            strict_columns,
        }
    }
}

impl<T: Exact> LinearOp<T> for MobiusOp<T> {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn apply(&self, x: &[T]) -> Option<Vec<T>> {
        let mut y: Vec<T> = Vec::with_capacity(x.len());
        for row in &self.rows {
            let mut w = T::zero_value();
            for (j, v) in row {
                if !x[*j].is_zero_value() {
                    w = w.add(&v.mul(&x[*j])?)?;
                }
            }
            y.push(w);
        }
        for i in 0..y.len() {
            let mut acc = y[i].clone();
            for (k, v) in &self.strict_columns[i] {
                if !y[*k].is_zero_value() {
                    acc = acc.sub(&v.mul(&y[*k])?)?;
                }
            }
            y[i] = acc;
        }
        y.iter().map(T::neg).collect()
    }
}

/// The Coxeter transformation of a poset, applied without forming the dense matrix.
pub struct CoxeterOperator {
    small: Option<MobiusOp<i64>>,
    big: MobiusOp<BigInt>,
}

impl CoxeterOperator {
    pub fn new(p: &Poset) -> Self {
        let small = mobius_rows::<i64>(p).map(MobiusOp::new);
        let big = match &small {
            Some(op) => MobiusOp::new(
                op.rows
                    .iter()
                    .map(|r| r.iter().map(|(j, v)| (*j, BigInt::from(*v))).collect())
                    .collect(),
            ),
            None => MobiusOp::new(mobius_rows::<BigInt>(p).expect("bigint never overflows")),
        };
        CoxeterOperator { small, big }
    }

    pub fn dim(&self) -> usize {
        self.big.dim()
    }

    pub fn apply(&self, v: &K0Vector) -> Result<K0Vector> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}-element poset",
                v.len(),
                self.dim()
            )));
        }
        if let (Some(op), Some(x)) = (&self.small, v.to_i64()) {
            if let Some(y) = op.apply(&x) {
                return Ok(K0Vector::from_i64(&y));
            }
        }
        Ok(K0Vector::new(
            self.big.apply(v.coords()).expect("bigint never overflows"),
        ))
    }

    /// Checked application on machine integers; `None` on overflow.
    pub fn apply_i64(&self, x: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(x.len(), self.dim(), "vector length must match the poset");
        self.small.as_ref()?.apply(x)
    }

    /// Least `k <= k_max` with `Φ^k = ±I`.
    pub fn signed_order(&self, k_max: usize) -> Result<SignedOrder> {
        if let Some(op) = &self.small {
            if let Some(outcome) = order_scan(op, k_max) {
                return outcome;
            }
        }
        order_scan(&self.big, k_max).expect("bigint never overflows")
    }
}

/// Order search for the Coxeter matrix of `p`, without forming it densely.
pub fn coxeter_order(p: &Poset, k_max: usize) -> Result<SignedOrder> {
    CoxeterOperator::new(p).signed_order(k_max)
}

/// Smallest `k <= k_max` with `m^k = ±I`, computed exactly.
pub fn find_signed_order(m: &IntMatrix, k_max: usize) -> Result<SignedOrder> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "order of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if m.rows == 0 {
        return Err(Error::EmptyPoset);
    }
    let n = m.rows;
    let entries = || {
        (0..n).flat_map(move |i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, v))
        })
    };
    if entries().all(|(_, _, v)| i64::from_big(v).is_some()) {
        let op = ColumnOp::from_entries(
            n,
            entries().map(|(i, j, v)| (i, j, i64::from_big(v).expect("checked"))),
        );
        if let Some(outcome) = order_scan(&op, k_max) {
            return outcome;
        }
    }
    let op = ColumnOp::from_entries(n, entries().map(|(i, j, v)| (i, j, v.clone())));
    order_scan(&op, k_max).expect("bigint never overflows")
}

/// `Some(s)` when `v = s·e_j` with `s = ±1`.
fn returns_to<T: Exact>(v: &[T], j: usize) -> Option<i8> {
    let s = if v[j].is_one_value() {
        1
    } else if v[j].is_minus_one() {
        -1
    } else {
        return None;
    };
    v.iter()
        .enumerate()
        .all(|(i, x)| i == j || x.is_zero_value())
        .then_some(s)
}

/// Leading and trailing nonzero positions of a set of vectors. Vectors with
/// pairwise distinct leading (or trailing) positions are linearly
/// independent, so the larger count is a lower bound on the rank of their span.
#[derive(Clone)]
struct PivotCover {
    first: FixedBitSet,
    last: FixedBitSet,
}

impl PivotCover {
    fn new(n: usize) -> Self {
        PivotCover {
            first: FixedBitSet::with_capacity(n),
            last: FixedBitSet::with_capacity(n),
        }
    }

    fn record<T: Exact>(&mut self, v: &[T]) {
        if let Some(i) = v.iter().position(|x| !x.is_zero_value()) {
            self.first.insert(i);
        }
        if let Some(i) = v.iter().rposition(|x| !x.is_zero_value()) {
            self.last.insert(i);
        }
    }

    fn merge(&mut self, other: &PivotCover) {
        self.first.union_with(&other.first);
        self.last.union_with(&other.last);
    }

    fn rank_bound(&self) -> usize {
        self.first.count_ones(..).max(self.last.count_ones(..))
    }
}

/// Scans `k = 1, 2, …` on a few unit probes. When every probe satisfies
/// `Φ^k e = s·e` for a common sign, `Φ^k = s·I` holds on the span of all
/// iterates seen so far; the candidate is accepted once further probes have
/// shown that span to be the whole space. Returns `None` on overflow.
fn order_scan<T: Exact, O: LinearOp<T>>(op: &O, k_max: usize) -> Option<Result<SignedOrder>> {
    let n = op.dim();
    let mut probes = vec![n - 1];
    if n > 1 {
        probes.push(0);
    }
    let mut vectors: Vec<Vec<T>> = probes.iter().map(|&j| unit::<T>(n, j)).collect();
    let mut cover = PivotCover::new(n);
    for v in &vectors {
        cover.record(v);
    }
    for k in 1..=k_max {
        for v in vectors.iter_mut() {
            *v = op.apply(v)?;
        }
        let mut signs = probes.iter().zip(&vectors).map(|(&j, v)| returns_to(v, j));
        let first = signs.next().flatten();
        if let Some(s) = first {
            if signs.all(|t| t == Some(s)) && certify(op, k, s, &cover)? {
                return Some(Ok(SignedOrder::new(k, s)));
            }
        }
        for v in &vectors {
            cover.record(v);
        }
    }
    Some(Err(Error::NotPeriodic { bound: k_max }))
}

fn unit<T: Exact>(n: usize, j: usize) -> Vec<T> {
    let mut v = vec![T::zero_value(); n];
    v[j] = T::one_value();
    v
}

/// Decides whether `Φ^k = s·I` given that it already holds on vectors whose
/// pivots are recorded in `cover`. Adds unit probes at uncovered leading
/// positions until the pivots reach full rank or some probe fails.
fn certify<T: Exact, O: LinearOp<T>>(op: &O, k: usize, s: i8, cover: &PivotCover) -> Option<bool> {
    let n = op.dim();
    let mut cover = cover.clone();
    let batch = rayon::current_num_threads().max(1) * 4;
    while cover.rank_bound() < n {
        let fresh: Vec<usize> = (0..n)
            .filter(|&j| !cover.first.contains(j))
            .take(batch)
            .collect();
        let results: Vec<Option<(bool, PivotCover)>> = fresh
            .par_iter()
            .map(|&j| {
                let mut local = PivotCover::new(n);
                let mut v = unit::<T>(n, j);
                for _ in 0..k {
                    local.record(&v);
                    v = op.apply(&v)?;
                }
                Some((returns_to(&v, j) == Some(s), local))
            })
            .collect();
        for r in results {
            let (ok, local) = r?;
            if !ok {
                return Some(false);
            }
            cover.merge(&local);
        }
    }
    Some(true)
}

/// Fraction-free Gaussian elimination. Returns the rank and, for square
/// input, the determinant. `None` signals overflow.
fn bareiss<T: Exact>(mut a: Vec<Vec<T>>) -> Option<(usize, T)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = T::one_value();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero_value()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let pivot = a[r][c].clone();
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            if lead.is_zero_value() && pivot == prev {
                continue;
            }
            for j in c + 1..cols {
                let t = pivot.mul(&row[j])?;
                let u = if lead.is_zero_value() || pivot_row[j].is_zero_value() {
                    T::zero_value()
                } else {
                    lead.mul(&pivot_row[j])?
                };
                row[j] = t.sub(&u)?.div_exact(&prev)?;
            }
            row[c] = T::zero_value();
        }
        prev = pivot;
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if negate {
            prev.neg()?
        } else {
            prev
        }
    } else {
        T::zero_value()
    };
    Some((r, det))
}

fn bareiss_any(m: &IntMatrix) -> (usize, BigInt) {
    let rows = m.to_rows();
    if let Some(small) = narrow::<i128>(&rows) {
        if let Some((r, d)) = bareiss(small) {
            return (r, BigInt::from(d));
        }
    }
    bareiss(rows).expect("bigint never overflows")
}

pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    Ok(bareiss_any(m).1)
}

pub fn rank(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    bareiss_any(m).0
}

/// True iff `m` is square with determinant ±1.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).is_ok_and(|d| d.abs().is_one_value())
}

fn faddeev_leverrier<T: Exact>(a: &[Vec<T>]) -> Option<Vec<T>> {
    let n = a.len();
    let mut coeffs = vec![T::one_value()];
    // `am` holds A·M_{k-1}; M_k = A·M_{k-1} + c_{n-k+1}·I.
    let mut am: Vec<Vec<T>> = vec![vec![T::zero_value(); n]; n];
    for k in 1..=n {
        let mut mk = am;
        let c = coeffs[k - 1].clone();
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = row[i].add(&c)?;
        }
        am = dense_mul(a, &mk, n)?;
        let mut trace = T::zero_value();
        for (i, row) in am.iter().enumerate() {
            trace = trace.add(&row[i])?;
        }
        coeffs.push(trace.neg()?.div_exact(&T::from_i64(k as i64))?);
    }
    Some(coeffs)
}

/// Characteristic polynomial `det(xI - m)`, coefficients from the leading
/// power down to the constant term.
pub fn char_poly(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let rows = m.to_rows();
    if let Some(small) = narrow::<i128>(&rows) {
        if let Some(c) = faddeev_leverrier(&small) {
            return Ok(c.into_iter().map(BigInt::from).collect());
        }
    }
    Ok(faddeev_leverrier(&rows).expect("bigint never overflows"))
}
