//! Dense matrices over GF(q): exact rank, row/column spaces, rank distance,
//! and deterministic enumeration of the general linear group.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;

/// Default hard cap on |GL_n(q)| for exhaustive enumeration.
pub const DEFAULT_GL_CAP: u128 = 100_000_000;

/// An immutable m x n matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  {:?}",
                &self.entries[i * self.cols..(i + 1) * self.cols]
            )?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimensions must be positive".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::InvalidInput(format!(
                "entry {bad} is not an element of {field}"
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<u32>>) -> Result<Matrix> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimensions must be positive".into(),
            ));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, m, n, rows.concat())
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The matrix with a single 1 in (i, j), zero-based indices.
    pub fn elementary(field: Field, rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols);
        m.entries[i * cols + j] = 1;
        m
    }

    pub fn diagonal(field: Field, diag: &[u32]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zero(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major flattening, the coordinate vector in F_q^(mn).
    pub fn flatten(&self) -> Vec<u32> {
        self.entries.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = &self.field;
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut entries = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        entries[idx] = f.add(entries[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = vec![0u32; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Matrix power for square matrices, e >= 0.
    pub fn pow(&self, e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("pow needs a square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            base = base.matmul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        echelon_rank(&self.field, rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse; None when singular or non-square.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        // Augmented rows [self | I].
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
            aug.swap(col, pivot);
            let inv = f.inv(aug[col][col]).ok()?;
            for x in aug[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..n {
                if r != col && aug[r][col] != 0 {
                    let factor = aug[r][col];
                    for j in 0..2 * n {
                        let s = f.mul(factor, aug[col][j]);
                        aug[r][j] = f.sub(aug[r][j], s);
                    }
                }
            }
        }
        let entries = aug.iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(Matrix {
            field: self.field.clone(),
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Multiplicative order by repeated multiplication, capped.
    pub fn multiplicative_order(&self, cap: u64) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "order needs a square matrix".into(),
            ));
        }
        let id = Matrix::identity(self.field.clone(), self.rows);
        let mut acc = self.clone();
        for e in 1..=cap {
            if acc == id {
                return Ok(e);
            }
            acc = acc.matmul(self)?;
        }
        Err(Error::SearchSpaceTooLarge(format!(
            "matrix order exceeds cap {cap}"
        )))
    }

    /// Reduced-echelon basis of the span of the rows.
    pub fn row_space(&self) -> SubspaceBasis {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        SubspaceBasis::from_vectors(self.field.clone(), self.cols, rows)
    }

    /// Reduced-echelon basis of the span of the columns.
    pub fn col_space(&self) -> SubspaceBasis {
        let cols: Vec<Vec<u32>> = (0..self.cols).map(|j| self.col(j)).collect();
        SubspaceBasis::from_vectors(self.field.clone(), self.rows, cols)
    }

    /// rank(self - other), the rank distance.
    pub fn rank_distance(&self, other: &Matrix) -> Result<usize> {
        Ok(self.sub(other)?.rank())
    }
}

/// Forward Gaussian elimination; consumes the rows, returns the rank.
pub(crate) fn echelon_rank(field: &Field, mut rows: Vec<Vec<u32>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        for r in rank + 1..rows.len() {
            if rows[r][col] != 0 {
                let factor = field.mul(rows[r][col], inv);
                for j in col..ncols {
                    let s = field.mul(factor, rows[rank][j]);
                    rows[r][j] = field.sub(rows[r][j], s);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Reduced row-echelon form with leftmost-pivot, first-nonzero-row selection.
/// Zero rows are dropped; returns the basis rows and their pivot columns.
pub(crate) fn rref(field: &Field, mut rows: Vec<Vec<u32>>) -> (Vec<Vec<u32>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    if rows.is_empty() {
        return (rows, vec![]);
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(pivot) = (next..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(next, pivot);
        let inv = field.inv(rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != next && rows[r][col] != 0 {
                let factor = rows[r][col];
                for j in 0..ncols {
                    let s = field.mul(factor, rows[next][j]);
                    rows[r][j] = field.sub(rows[r][j], s);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    (rows, pivots)
}

/// How two subspaces of a common ambient space compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceRelation {
    Equal,
    /// Left is a proper subspace of right.
    SubsetOf,
    /// Right is a proper subspace of left.
    SupersetOf,
    Incomparable,
}

impl SubspaceRelation {
    pub fn as_str(&self) -> &'static str {
        match self {
            SubspaceRelation::Equal => "equal",
            SubspaceRelation::SubsetOf => "subset",
            SubspaceRelation::SupersetOf => "superset",
            SubspaceRelation::Incomparable => "incomparable",
        }
    }
}

/// A subspace of F_q^ambient in reduced row-echelon form. Canonical, so
/// two bases are equal as values iff they span the same subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    field: Field,
    ambient: usize,
    vectors: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn from_vectors(field: Field, ambient: usize, vectors: Vec<Vec<u32>>) -> SubspaceBasis {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (vectors, pivots) = rref(&field, vectors);
        SubspaceBasis {
            field,
            ambient,
            vectors,
            pivots,
        }
    }

    pub fn trivial(field: Field, ambient: usize) -> SubspaceBasis {
        SubspaceBasis {
            field,
            ambient,
            vectors: vec![],
            pivots: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let factor = v[p];
                for j in 0..self.ambient {
                    let s = f.mul(factor, row[j]);
                    v[j] = f.sub(v[j], s);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        Ok(SubspaceBasis::from_vectors(
            self.field.clone(),
            self.ambient,
            all,
        ))
    }

    /// Classification plus the dimension of the intersection,
    /// dim U + dim V - dim(U + V).
    pub fn relate(&self, other: &SubspaceBasis) -> Result<(SubspaceRelation, usize)> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let fwd = other.contains_space(self);
        let bwd = self.contains_space(other);
        let relation = match (fwd, bwd) {
            (true, true) => SubspaceRelation::Equal,
            (true, false) => SubspaceRelation::SubsetOf,
            (false, true) => SubspaceRelation::SupersetOf,
            (false, false) => SubspaceRelation::Incomparable,
        };
        let inter = self.dim() + other.dim() - self.sum(other)?.dim();
        Ok((relation, inter))
    }
}

/// |GL_n(q)| = prod_{i=0}^{n-1} (q^n - q^i).
pub fn gl_order(field: &Field, n: usize) -> u128 {
    let q = field.order() as u128;
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product()
}

/// Deterministic lazy enumeration of GL_n(q), built row by row: each new
/// row is the smallest encoded vector outside the span of the previous
/// rows. The first matrix yielded is always the identity.
///
/// The iterator is single-consumer. Parallel searches must partition the
/// space by first-row prefix rather than share one cursor.
pub fn enumerate_gl(field: &Field, n: usize, cap: u128) -> Result<GlIter> {
    let order = gl_order(field, n);
    if order > cap {
        return Err(Error::SearchSpaceTooLarge(format!(
            "|GL_{n}({})| = {order} exceeds cap {cap}",
            field.order()
        )));
    }
    let q = field.order() as u64;
    let qn = q.pow(n as u32);
    Ok(GlIter {
        field: field.clone(),
        n,
        q,
        qn,
        rows: Vec::with_capacity(n),
        spans: vec![only_zero(qn)],
        next: vec![0],
    })
}

fn only_zero(qn: u64) -> Vec<bool> {
    let mut s = vec![false; qn as usize];
    s[0] = true;
    s
}

pub struct GlIter {
    field: Field,
    n: usize,
    q: u64,
    qn: u64,
    /// Encoded values of the rows chosen so far.
    rows: Vec<u64>,
    /// spans[d] marks the encoded vectors spanned by rows[0..d].
    spans: Vec<Vec<bool>>,
    /// next[d] is the next candidate value to try at level d.
    next: Vec<u64>,
}

impl GlIter {
    fn decode(&self, mut v: u64) -> Vec<u32> {
        let mut row = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            row.push((v % self.q) as u32);
            v /= self.q;
        }
        row
    }

    fn encode(&self, row: &[u32]) -> u64 {
        let mut v = 0u64;
        for &x in row.iter().rev() {
            v = v * self.q + x as u64;
        }
        v
    }

    /// Span of the current rows plus all multiples of `row` added in.
    fn extend_span(&self, base: &[bool], row_value: u64) -> Vec<bool> {
        let f = &self.field;
        let row = self.decode(row_value);
        let mut span = base.to_vec();
        let members: Vec<u64> = (0..self.qn).filter(|&v| base[v as usize]).collect();
        for c in 1..f.order() {
            let scaled: Vec<u32> = row.iter().map(|&x| f.mul(x, c)).collect();
            for &m in &members {
                let mv = self.decode(m);
                let sum: Vec<u32> = mv.iter().zip(&scaled).map(|(&a, &b)| f.add(a, b)).collect();
                span[self.encode(&sum) as usize] = true;
            }
        }
        span
    }
}

impl Iterator for GlIter {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        loop {
            let depth = self.rows.len();
            let span = &self.spans[depth];
            let mut candidate = None;
            let mut v = self.next[depth];
            while v < self.qn {
                if !span[v as usize] {
                    candidate = Some(v);
                    break;
                }
                v += 1;
            }
            match candidate {
                Some(v) => {
                    self.next[depth] = v + 1;
                    if depth + 1 == self.n {
                        // Complete matrix; stay at this depth for the next call.
                        let mut rows: Vec<Vec<u32>> =
                            self.rows.iter().map(|&r| self.decode(r)).collect();
                        rows.push(self.decode(v));
                        return Some(
                            Matrix::from_rows(self.field.clone(), rows)
                                .expect("enumerated rows are well-formed"),
                        );
                    }
                    let span = self.extend_span(&self.spans[depth], v);
                    self.rows.push(v);
                    self.spans.push(span);
                    self.next.push(0);
                }
                None => {
                    // Exhausted this level; backtrack.
                    if depth == 0 {
                        return None;
                    }
                    self.rows.pop();
                    self.spans.pop();
                    self.next.pop();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    fn gf3() -> Field {
        Field::new(3, 1, None).unwrap()
    }

    #[test]
    fn transpose_definition() {
        let m = Matrix::from_rows(gf2(), vec![vec![1, 1, 0], vec![0, 1, 0]]).unwrap();
        let t = m.transpose();
        let expected = Matrix::from_rows(gf2(), vec![vec![1, 0], vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn square_of_nilpotent_like_matrix() {
        // [[1,0,0],[1,1,0],[0,0,0]]^2 = [[1,0,0],[0,1,0],[0,0,0]] over GF(2).
        let m =
            Matrix::from_rows(gf2(), vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 0]]).unwrap();
        let sq = m.matmul(&m).unwrap();
        let expected =
            Matrix::from_rows(gf2(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn scale_by_zero_is_zero() {
        let m = Matrix::from_rows(gf3(), vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert!(m.scale(0).is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(gf2(), 3).rank(), 3);
        let r1 =
            Matrix::from_rows(gf2(), vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(r1.rank(), 1);
        let r2 =
            Matrix::from_rows(gf2(), vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(r2.rank(), 2);
    }

    #[test]
    fn rank_distance_examples() {
        let f = gf2();
        let a = Matrix::from_rows(f.clone(), vec![vec![1, 1, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(a.rank_distance(&a).unwrap(), 0);
        let id = Matrix::identity(f.clone(), 2);
        let z = Matrix::zero(f.clone(), 2, 2);
        assert_eq!(id.rank_distance(&z).unwrap(), 2);
        let b = Matrix::from_rows(f.clone(), vec![vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(a.rank_distance(&b).unwrap(), 2);
    }

    #[test]
    fn rank_distance_shape_mismatch() {
        let a = Matrix::zero(gf2(), 2, 3);
        let b = Matrix::zero(gf2(), 3, 2);
        assert!(matches!(
            a.rank_distance(&b),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn field_mismatch_rejected() {
        let a = Matrix::zero(gf2(), 2, 2);
        let b = Matrix::zero(gf3(), 2, 2);
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn line_spaces() {
        let z = Matrix::zero(gf2(), 2, 3);
        assert!(z.row_space().is_trivial());
        assert!(z.col_space().is_trivial());

        let e12 = Matrix::elementary(gf2(), 2, 3, 0, 1);
        assert_eq!(e12.row_space().vectors(), &[vec![0, 1, 0]]);
        assert_eq!(e12.col_space().vectors(), &[vec![1, 0]]);

        let m = Matrix::from_rows(gf2(), vec![vec![1, 1, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(m.row_space().vectors(), &[vec![1, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn rank_equals_space_dims() {
        let m = Matrix::from_rows(
            gf3(),
            vec![vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]],
        )
        .unwrap();
        let r = m.rank();
        assert_eq!(m.row_space().dim(), r);
        assert_eq!(m.col_space().dim(), r);
        assert_eq!(m.transpose().rank(), r);
    }

    #[test]
    fn subspace_relations() {
        let f = gf2();
        let u = SubspaceBasis::from_vectors(f.clone(), 3, vec![vec![0, 1, 0]]);
        let v = SubspaceBasis::from_vectors(f.clone(), 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(u.relate(&u).unwrap(), (SubspaceRelation::Equal, 1));
        assert_eq!(u.relate(&v).unwrap(), (SubspaceRelation::SubsetOf, 1));
        assert_eq!(v.relate(&u).unwrap(), (SubspaceRelation::SupersetOf, 1));

        let a = SubspaceBasis::from_vectors(f.clone(), 2, vec![vec![1, 0]]);
        let b = SubspaceBasis::from_vectors(f.clone(), 2, vec![vec![0, 1]]);
        assert_eq!(a.relate(&b).unwrap(), (SubspaceRelation::Incomparable, 0));
    }

    #[test]
    fn subspace_ambient_mismatch() {
        let a = SubspaceBasis::from_vectors(gf2(), 2, vec![vec![1, 0]]);
        let b = SubspaceBasis::from_vectors(gf2(), 3, vec![vec![1, 0, 0]]);
        assert!(matches!(a.relate(&b), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn gl_counts_match_formula() {
        for (field, n, expected) in [(gf2(), 2, 6u128), (gf2(), 3, 168), (gf3(), 2, 48)] {
            assert_eq!(gl_order(&field, n), expected);
            let count = enumerate_gl(&field, n, DEFAULT_GL_CAP).unwrap().count();
            assert_eq!(count as u128, expected);
        }
    }

    #[test]
    fn gl_starts_with_identity_and_is_invertible() {
        let mut it = enumerate_gl(&gf3(), 2, DEFAULT_GL_CAP).unwrap();
        assert_eq!(it.next().unwrap(), Matrix::identity(gf3(), 2));
        for m in it {
            assert!(m.is_invertible());
        }
    }

    #[test]
    fn gl_yields_distinct_matrices() {
        let all: Vec<Matrix> = enumerate_gl(&gf2(), 3, DEFAULT_GL_CAP).unwrap().collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn gl_cap_enforced() {
        let err = enumerate_gl(&gf3(), 4, 1000).err().unwrap();
        assert_eq!(err.kind(), "SearchSpaceTooLarge");
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf3();
        for m in enumerate_gl(&f, 2, DEFAULT_GL_CAP).unwrap() {
            let inv = m.inverse().unwrap();
            assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(f.clone(), 2));
        }
    }

    #[test]
    fn singular_has_no_inverse() {
        // det([[1,2],[2,1]]) = 1 - 4 = 0 over GF(3).
        let f = gf3();
        let singular = Matrix::from_rows(f, vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn multiplicative_order_of_identity() {
        let id = Matrix::identity(gf3(), 2);
        assert_eq!(id.multiplicative_order(10).unwrap(), 1);
    }
}
