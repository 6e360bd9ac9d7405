use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Commutative ring operations needed by division-free matrix algorithms.
///
/// Implemented by [`Scalar`] and by [`Poly`](crate::poly::Poly), so that the
/// characteristic polynomial and nilpotency test run unchanged on Hessians.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, rhs: &Self) -> Self;
    fn mul_elem(&self, rhs: &Self) -> Self;
    fn neg_elem(&self) -> Self;

    fn sub_elem(&self, rhs: &Self) -> Self {
        self.add_elem(&rhs.neg_elem())
    }
}

impl RingElem for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

/// Dense row-major matrix over a commutative ring.
///
/// `zero` is a template element used to build fresh entries; it also fixes the
/// field (and, for polynomial entries, the variable count) of empty matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
    zero: T,
}

impl<T: RingElem> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, zero: T) -> Self {
        let z = zero.zero_like();
        Matrix {
            rows,
            cols,
            entries: vec![z.clone(); rows * cols],
            zero: z,
        }
    }

    pub fn identity_like(n: usize, zero: T) -> Self {
        let mut m = Matrix::filled(n, n, zero);
        for i in 0..n {
            m.entries[i * n + i] = m.zero.one_like();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows_like(rows: Vec<Vec<T>>, zero: T) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            zero: zero.zero_like(),
        })
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

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: RingElem>(&self, zero: U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            zero: zero.zero_like(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::filled(self.cols, self.rows, self.zero.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElem::is_zero_elem)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::filled(self.rows, rhs.cols, self.zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].add_elem(&a.mul_elem(b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, T::add_elem)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, T::sub_elem)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("operand shapes differ".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(self.zero.clone(), |x| x.mul_elem(c))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity_like(self.rows, self.zero.clone());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Coefficients of `det(xI - M)`, leading coefficient first.
    ///
    /// Uses Berkowitz's algorithm, which needs no division and therefore works
    /// over any commutative ring (including prime fields and polynomial rings).
    pub fn charpoly(&self) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "charpoly of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let one = self.zero.one_like();
        let mut v = vec![one.clone()];
        for r in 0..self.rows {
            // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
            let mut t = Vec::with_capacity(r + 2);
            t.push(one.clone());
            t.push(self.get(r, r).neg_elem());
            let mut col: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let mut dot = self.zero.clone();
                for (j, c) in col.iter().enumerate() {
                    dot = dot.add_elem(&self.get(r, j).mul_elem(c));
                }
                t.push(dot.neg_elem());
                col = (0..r)
                    .map(|i| {
                        let mut acc = self.zero.clone();
                        for (j, c) in col.iter().enumerate() {
                            let a = self.get(i, j);
                            if !a.is_zero_elem() && !c.is_zero_elem() {
                                acc = acc.add_elem(&a.mul_elem(c));
                            }
                        }
                        acc
                    })
                    .collect();
            }
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..=r + 1 {
                let mut acc = self.zero.clone();
                for (j, vj) in v.iter().enumerate().take(i.min(r) + 1) {
                    let tij = &t[i - j];
                    if !tij.is_zero_elem() && !vj.is_zero_elem() {
                        acc = acc.add_elem(&tij.mul_elem(vj));
                    }
                }
                next.push(acc);
            }
            v = next;
        }
        Ok(v)
    }

    /// Nilpotency over an integral domain: every non-leading coefficient of
    /// the characteristic polynomial vanishes.
    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.charpoly()?.iter().skip(1).all(RingElem::is_zero_elem))
    }
}

/// Output of [`Matrix::congruence_diagonalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Congruence {
    /// Invertible `V` with `A = V D V^T`.
    pub v: Matrix<Scalar>,
    /// Diagonal entries of `D`.
    pub diagonal: Vec<Scalar>,
    /// Invertible `U` with `A = U diag(I_r, 0) U^T`, when square roots exist.
    pub normalized: Option<Matrix<Scalar>>,
    pub rank: usize,
}

impl Matrix<Scalar> {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, Scalar::zero(field))
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix::identity_like(n, Scalar::zero(field))
    }

    pub fn diagonal(field: Field, d: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(field, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Builds a scalar matrix, checking that every entry lies in `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        for x in rows.iter().flatten() {
            if x.field() != field {
                return Err(Error::FieldMismatch(field, x.field()));
            }
        }
        Matrix::from_rows_like(rows, Scalar::zero(field))
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.zero.field()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length differs from column count".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(self.field()), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Row rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = Scalar::one(self.field());
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let piv = m[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = m[i * cols + c].clone();
                for j in c + 1..cols {
                    let v = &(&(&piv * &m[i * cols + j]) - &(&lead * &m[r * cols + j])) / &prev;
                    m[i * cols + j] = v;
                }
                m[i * cols + c] = Scalar::zero(self.field());
            }
            prev = piv;
            r += 1;
        }
        r
    }

    pub fn det(&self) -> Result<Scalar> {
        let cp = self.charpoly()?;
        let last = cp.last().cloned().expect("charpoly is nonempty");
        Ok(if self.rows % 2 == 1 { -last } else { last })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = self.field();
        let mut a = self.clone();
        let mut inv = Matrix::identity(f, n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(Error::Singular)?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let pinv = a.get(c, c).inv().expect("nonzero pivot");
            a.scale_row(c, &pinv);
            inv.scale_row(c, &pinv);
            for i in 0..n {
                if i != c && !a.get(i, c).is_zero() {
                    let factor = a.get(i, c).clone();
                    a.add_row_multiple(i, c, &-&factor);
                    inv.add_row_multiple(i, c, &-&factor);
                }
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : M x = 0}` from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let f = self.field();
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let pinv = a.get(r, c).inv().expect("nonzero pivot");
            a.scale_row(r, &pinv);
            for i in 0..self.rows {
                if i != r && !a.get(i, c).is_zero() {
                    let factor = a.get(i, c).clone();
                    a.add_row_multiple(i, r, &-&factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Scalar::zero(f); self.cols];
                v[free] = Scalar::one(f);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(row, free);
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(i, j) * c;
            self.set(i, j, v);
        }
    }

    /// row_dst += c * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + &(c * self.get(src, j));
            self.set(dst, j, v);
        }
    }

    /// col_dst += c * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + &(c * self.get(i, src));
            self.set(i, dst, v);
        }
    }

    /// Symmetric (Lagrange) reduction `A = V D V^T`.
    ///
    /// When every usable diagonal entry vanishes the 2x2 block `[[0,b],[b,0]]`
    /// is split by adding a row/column pair first. A second pass tries to
    /// rescale to `A = U diag(I_r, 0) U^T` using exact square roots, pairing up
    /// non-square entries whose plane is hyperbolic.
    pub fn congruence_diagonalize(&self) -> Result<Congruence> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let f = self.field();
        if f.characteristic() == 2 {
            return Err(Error::Unsupported(
                "symmetric reduction in characteristic 2".into(),
            ));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut w = Matrix::identity(f, n);
        for k in 0..n {
            if m.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m.get(j, j).is_zero()) {
                    m.swap_rows(k, j);
                    m.swap_cols(k, j);
                    w.swap_rows(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) {
                    let one = Scalar::one(f);
                    m.add_row_multiple(k, j, &one);
                    m.add_col_multiple(k, j, &one);
                    w.add_row_multiple(k, j, &one);
                } else {
                    continue;
                }
            }
            let pinv = m.get(k, k).inv().expect("nonzero pivot");
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let c = -&(m.get(i, k) * &pinv);
                m.add_row_multiple(i, k, &c);
                m.add_col_multiple(i, k, &c);
                w.add_row_multiple(i, k, &c);
            }
        }
        let diagonal: Vec<Scalar> = (0..n).map(|i| m.get(i, i).clone()).collect();
        let v = w.inverse()?;
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        let normalized = normalize(&v, &diagonal);
        Ok(Congruence {
            v,
            diagonal,
            normalized,
            rank,
        })
    }

    /// Checks `self = u diag(I_r, 0) u^T` for the given `r`.
    pub fn verify_factorization(&self, u: &Matrix<Scalar>, r: usize) -> bool {
        let f = self.field();
        let j: Vec<Scalar> = (0..self.rows)
            .map(|i| if i < r { Scalar::one(f) } else { Scalar::zero(f) })
            .collect();
        u.mul(&Matrix::diagonal(f, &j))
            .and_then(|x| x.mul(&u.transpose()))
            .is_ok_and(|x| &x == self)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field(),
            rows: self.rows,
            entries: self
                .to_rows()
                .iter()
                .map(|r| r.iter().map(Scalar::to_plain_string).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows {
            return Err(Error::descriptor(
                "/entries",
                format!("expected {} rows, found {}", j.rows, j.entries.len()),
            ));
        }
        let mut rows = Vec::with_capacity(j.rows);
        for (i, r) in j.entries.iter().enumerate() {
            let mut row = Vec::with_capacity(r.len());
            for (k, s) in r.iter().enumerate() {
                row.push(
                    crate::poly::parse_scalar(s, j.field)
                        .map_err(|e| Error::descriptor(format!("/entries/{i}/{k}"), e))?,
                );
            }
            rows.push(row);
        }
        Matrix::from_rows(j.field, rows)
    }
}

/// Rescales `V` so that every nonzero diagonal entry becomes 1, moving the
/// zero entries to the end.
fn normalize(v: &Matrix<Scalar>, diagonal: &[Scalar]) -> Option<Matrix<Scalar>> {
    let f = v.field();
    let n = diagonal.len();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut zero_cols = Vec::new();
    let mut pending: Vec<usize> = Vec::new();
    for (i, d) in diagonal.iter().enumerate() {
        if d.is_zero() {
            zero_cols.push(v.column(i));
        } else if let Some(s) = d.sqrt() {
            cols.push(v.column(i).iter().map(|x| x * &s).collect());
        } else {
            pending.push(i);
        }
    }
    // Pair non-square entries d_a, d_b with -d_a d_b a square: the plane is
    // hyperbolic and therefore isometric to x^2 + y^2.
    while let Some(a) = pending.pop() {
        let (pos, s) = pending
            .iter()
            .enumerate()
            .find_map(|(k, &b)| (-&(&diagonal[a] * &diagonal[b])).sqrt().map(|s| (k, s)))?;
        let b = pending.remove(pos);
        let (da, db) = (&diagonal[a], &diagonal[b]);
        let one = Scalar::one(f);
        let two = Scalar::from_i64(f, 2);
        let e = [&s / da, one.clone()];
        let ep = [-&(&s / da), one];
        let g = &two * db;
        let fv = [&ep[0] / &g, &ep[1] / &g];
        let half = Scalar::ratio(f, 1, 2);
        let i_unit = Scalar::imag_unit();
        if f != crate::algebra::Field::GaussianRationals {
            return None;
        }
        let x1 = [&e[0] + &(&half * &fv[0]), &e[1] + &(&half * &fv[1])];
        let x2 = [
            &i_unit * &(&e[0] - &(&half * &fv[0])),
            &i_unit * &(&e[1] - &(&half * &fv[1])),
        ];
        // T = X^{-T} where X = [x1 x2]; the plane block of V becomes V_plane T.
        let x = Matrix::from_rows(
            f,
            vec![
                vec![x1[0].clone(), x2[0].clone()],
                vec![x1[1].clone(), x2[1].clone()],
            ],
        )
        .ok()?;
        let t = x.inverse().ok()?.transpose();
        let va = v.column(a);
        let vb = v.column(b);
        for c in 0..2 {
            cols.push(
                (0..n)
                    .map(|r| &(&va[r] * t.get(0, c)) + &(&vb[r] * t.get(1, c)))
                    .collect(),
            );
        }
    }
    cols.extend(zero_cols);
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    Matrix::from_rows(f, rows).ok()
}

/// Matrix exchange format: `{"field": "Qi", "rows": 2, "entries": [["1", "1/2+1 i"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: Field,
    pub rows: usize,
    pub entries: Vec<Vec<String>>,
}

impl fmt::Display for Matrix<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_plain_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
