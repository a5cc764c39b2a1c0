//! F_q-linear rank-metric codes given by generators, with a cached
//! reduced basis over the mn-dimensional flattening.

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matfq::{rref, Matrix, SubspaceBasis};

/// Cap on q^dim for codeword enumeration.
pub const MAX_CODEWORDS: u128 = 1_000_000;

/// A linear subspace of F_q^(m x n) under the rank distance. The stated
/// generator list is preserved; queries go through the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCode {
    field: Field,
    m: usize,
    n: usize,
    generators: Vec<Matrix>,
    basis: Vec<Matrix>,
    /// Flattened basis rows with their pivot columns, echelon form.
    basis_rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RankCode {
    pub fn new(field: Field, m: usize, n: usize, generators: Vec<Matrix>) -> Result<RankCode> {
        if m == 0 || n == 0 {
            return Err(Error::DimensionMismatch(
                "ambient dimensions must be positive".into(),
            ));
        }
        for g in &generators {
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if g.nrows() != m || g.ncols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, ambient is {m}x{n}",
                    g.nrows(),
                    g.ncols()
                )));
            }
        }
        let flat: Vec<Vec<u32>> = generators.iter().map(Matrix::flatten).collect();
        let (basis_rows, pivots) = rref(&field, flat);
        let basis = basis_rows
            .iter()
            .map(|row| {
                Matrix::new(field.clone(), m, n, row.clone()).expect("basis rows are in range")
            })
            .collect();
        Ok(RankCode {
            field,
            m,
            n,
            generators,
            basis,
            basis_rows,
            pivots,
        })
    }

    /// The span of a set of elementary matrices at the given 0-based
    /// positions.
    pub fn from_elementary(
        field: Field,
        m: usize,
        n: usize,
        positions: &[(usize, usize)],
    ) -> Result<RankCode> {
        let generators = positions
            .iter()
            .map(|&(i, j)| Matrix::elementary(field.clone(), m, n, i, j))
            .collect();
        RankCode::new(field, m, n, generators)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn is_zero_code(&self) -> bool {
        self.basis.is_empty()
    }

    /// Number of codewords, q^dim.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128).pow(self.dim() as u32)
    }

    /// Coefficients of a member over the basis, or None if not a member.
    /// Reads pivot coordinates off the echelon basis, then checks the
    /// residual.
    pub fn coefficients_of(&self, candidate: &Matrix) -> Option<Vec<u32>> {
        if candidate.field() != &self.field
            || candidate.nrows() != self.m
            || candidate.ncols() != self.n
        {
            return None;
        }
        let f = &self.field;
        let flat = candidate.flatten();
        let coeffs: Vec<u32> = self.pivots.iter().map(|&p| flat[p]).collect();
        let mut residual = flat;
        for (c, row) in coeffs.iter().zip(&self.basis_rows) {
            if *c != 0 {
                for (r, &b) in residual.iter_mut().zip(row) {
                    *r = f.sub(*r, f.mul(*c, b));
                }
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, candidate: &Matrix) -> bool {
        self.coefficients_of(candidate).is_some()
    }

    /// The codeword with the given basis coefficients.
    pub fn combine(&self, coeffs: &[u32]) -> Matrix {
        debug_assert_eq!(coeffs.len(), self.dim());
        let f = &self.field;
        let mut flat = vec![0u32; self.m * self.n];
        for (c, row) in coeffs.iter().zip(&self.basis_rows) {
            if *c != 0 {
                for (x, &b) in flat.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(*c, b));
                }
            }
        }
        Matrix::new(self.field.clone(), self.m, self.n, flat).expect("combination is in range")
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.size() > MAX_CODEWORDS {
            return Err(Error::CodeTooLarge(format!(
                "code has q^{} = {} codewords, enumeration cap is {MAX_CODEWORDS}",
                self.dim(),
                self.size()
            )));
        }
        Ok(())
    }

    /// All q^dim codewords, one per coefficient tuple, the zero word
    /// first. Single-consumer; partition by coefficient prefix to
    /// parallelize.
    pub fn codewords(&self) -> Result<CodewordIter<'_>> {
        self.check_enumerable()?;
        Ok(CodewordIter {
            code: self,
            coeffs: vec![0; self.dim()],
            done: false,
        })
    }

    /// All coefficient tuples in enumeration order.
    pub fn coefficient_tuples(&self) -> Result<CoeffIter> {
        self.check_enumerable()?;
        Ok(CoeffIter {
            q: self.field.order(),
            coeffs: vec![0; self.dim()],
            done: false,
        })
    }

    /// Minimum rank over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if self.is_zero_code() {
            return Err(Error::ZeroCode);
        }
        self.check_enumerable()?;
        let mut best = usize::MAX;
        for cw in self.codewords()? {
            if !cw.is_zero() {
                best = best.min(cw.rank());
            }
        }
        Ok(best)
    }

    /// Row space and column space of the whole code: spans of all
    /// codeword row spaces resp. column spaces, read off the basis.
    pub fn line_spaces(&self) -> (SubspaceBasis, SubspaceBasis) {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for b in &self.basis {
            for i in 0..self.m {
                rows.push(b.row(i).to_vec());
            }
            for j in 0..self.n {
                cols.push(b.col(j));
            }
        }
        (
            SubspaceBasis::from_vectors(self.field.clone(), self.n, rows),
            SubspaceBasis::from_vectors(self.field.clone(), self.m, cols),
        )
    }

    /// A basis of rank-one codewords if they span the code, else None.
    pub fn rank_one_basis(&self) -> Result<Option<Vec<Matrix>>> {
        self.check_enumerable()?;
        let mut selected: Vec<Matrix> = Vec::new();
        let mut echelon: Vec<Vec<u32>> = Vec::new();
        for cw in self.codewords()? {
            if selected.len() == self.dim() {
                break;
            }
            if cw.rank() != 1 {
                continue;
            }
            let mut trial = echelon.clone();
            trial.push(cw.flatten());
            let (reduced, _) = rref(&self.field, trial);
            if reduced.len() > echelon.len() {
                echelon = reduced;
                selected.push(cw);
            }
        }
        Ok((selected.len() == self.dim()).then_some(selected))
    }
}

pub struct CodewordIter<'a> {
    code: &'a RankCode,
    coeffs: Vec<u32>,
    done: bool,
}

impl Iterator for CodewordIter<'_> {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        let word = self.code.combine(&self.coeffs);
        self.done = !increment(&mut self.coeffs, self.code.field.order());
        Some(word)
    }
}

pub struct CoeffIter {
    q: u32,
    coeffs: Vec<u32>,
    done: bool,
}

impl Iterator for CoeffIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.coeffs.clone();
        self.done = !increment(&mut self.coeffs, self.q);
        Some(out)
    }
}

/// Odometer increment, least-significant digit first; false on wrap.
fn increment(coeffs: &mut [u32], q: u32) -> bool {
    for c in coeffs.iter_mut() {
        *c += 1;
        if *c < q {
            return true;
        }
        *c = 0;
    }
    false
}
