//! Linear maps between rank-metric codes: isometry verification,
//! exhaustive Property-1 witness search, and cheap refutations.

use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::matfq::{enumerate_gl, gl_order, rref, Matrix};

/// Resource caps for exhaustive searches. `RANKEXT_MAX_SEARCH` in the CLI
/// overrides `max_pairs`.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Cap on the number of (A, B) candidates.
    pub max_pairs: u128,
    /// Cap on q^dim for anything that enumerates codewords.
    pub max_codewords: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_pairs: 100_000_000,
            max_codewords: 1_000_000,
        }
    }
}

/// Cap on q^dim for the quadratic codeword-pair scan in
/// [`CodeMap::refute_property_p`].
pub const MAX_REFUTE_CODEWORDS: u128 = 4096;

/// A linear map between codes, specified by images of the stated domain
/// generators. Construction rejects assignments that break linearity and
/// non-injective maps.
#[derive(Debug, Clone)]
pub struct CodeMap {
    domain: RankCode,
    codomain: RankCode,
    gen_images: Vec<Matrix>,
    basis_images: Vec<Matrix>,
}

impl CodeMap {
    pub fn new(domain: RankCode, images: Vec<Matrix>) -> Result<CodeMap> {
        if images.len() != domain.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                images.len(),
                domain.generators().len()
            )));
        }
        for img in &images {
            if img.field() != domain.field() {
                return Err(Error::FieldMismatch);
            }
            if img.nrows() != domain.nrows() || img.ncols() != domain.ncols() {
                return Err(Error::DimensionMismatch(format!(
                    "image is {}x{}, ambient is {}x{}",
                    img.nrows(),
                    img.ncols(),
                    domain.nrows(),
                    domain.ncols()
                )));
            }
        }
        let field = domain.field().clone();
        let dim = domain.dim();
        let ambient = domain.nrows() * domain.ncols();

        // Solve coeffs(g_i) . Y = flatten(images[i]) for the basis images Y.
        // Since the generator coefficient matrix has full column rank dim,
        // the reduced system is [I | Y]; a pivot in the image block means
        // some linear relation among generators is not honored.
        let augmented: Vec<Vec<u32>> = domain
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, img)| {
                let mut row = domain
                    .coefficients_of(g)
                    .expect("generators are members of their own code");
                row.extend(img.flatten());
                row
            })
            .collect();
        let (reduced, pivots) = rref(&field, augmented);
        if pivots.iter().any(|&p| p >= dim) {
            return Err(Error::InconsistentAssignment(
                "images violate a linear relation among the generators".into(),
            ));
        }
        debug_assert_eq!(reduced.len(), dim);
        let basis_images: Vec<Matrix> = reduced
            .iter()
            .map(|row| {
                Matrix::new(
                    field.clone(),
                    domain.nrows(),
                    domain.ncols(),
                    row[dim..dim + ambient].to_vec(),
                )
                .expect("solution rows are in range")
            })
            .collect();

        let image_rank = {
            let flat: Vec<Vec<u32>> = basis_images.iter().map(Matrix::flatten).collect();
            rref(&field, flat).0.len()
        };
        if image_rank != dim {
            return Err(Error::NotInjective);
        }

        let codomain = RankCode::new(field, domain.nrows(), domain.ncols(), images.clone())?;
        Ok(CodeMap {
            domain,
            codomain,
            gen_images: images,
            basis_images,
        })
    }

    /// The map sending each domain generator to itself.
    pub fn identity(domain: RankCode) -> Result<CodeMap> {
        let images = domain.generators().to_vec();
        CodeMap::new(domain, images)
    }

    pub fn domain(&self) -> &RankCode {
        &self.domain
    }

    pub fn codomain(&self) -> &RankCode {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[Matrix] {
        &self.gen_images
    }

    pub fn basis_images(&self) -> &[Matrix] {
        &self.basis_images
    }

    /// Image of an arbitrary domain member.
    pub fn apply(&self, codeword: &Matrix) -> Result<Matrix> {
        let coeffs = self.domain.coefficients_of(codeword).ok_or_else(|| {
            Error::InvalidInput("matrix is not a member of the domain code".into())
        })?;
        Ok(self.combine_images(&coeffs))
    }

    fn combine_images(&self, coeffs: &[u32]) -> Matrix {
        let f = self.domain.field();
        let mut acc = Matrix::zero(f.clone(), self.domain.nrows(), self.domain.ncols());
        for (c, img) in coeffs.iter().zip(&self.basis_images) {
            if *c != 0 {
                acc = acc.add(&img.scale(*c)).expect("shapes match");
            }
        }
        acc
    }

    /// True iff rank is preserved on every codeword. Checking a basis
    /// alone is not sufficient, so this enumerates the whole code.
    pub fn is_isometry(&self) -> Result<bool> {
        for coeffs in self.domain.coefficient_tuples()? {
            let word = self.domain.combine(&coeffs);
            let image = self.combine_images(&coeffs);
            if word.rank() != image.rank() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive search for a Property-1 pair, in enumeration order with
    /// the A loop outside. The column condition depends on A alone and
    /// the row condition on B alone, so each loop runs at most once over
    /// its group.
    pub fn property_p_witness(&self, limits: &SearchLimits) -> Result<Option<PropertyWitness>> {
        let f = self.domain.field();
        let m = self.domain.nrows();
        let n = self.domain.ncols();
        let pair_count = gl_order(f, m) * gl_order(f, n);
        if pair_count > limits.max_pairs {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{pair_count} (A, B) pairs exceed cap {}",
                limits.max_pairs
            )));
        }
        if self.domain.size() > limits.max_codewords {
            return Err(Error::CodeTooLarge(format!(
                "domain has {} codewords, cap is {}",
                self.domain.size(),
                limits.max_codewords
            )));
        }

        let mut words = Vec::new();
        for coeffs in self.domain.coefficient_tuples()? {
            let word = self.domain.combine(&coeffs);
            let image = self.combine_images(&coeffs);
            words.push((word, image.row_space(), image.col_space()));
        }

        let found_a = enumerate_gl(f, m, limits.max_pairs)?.find(|a| {
            words.iter().all(|(word, _, img_col)| {
                a.matmul(word).expect("shapes match").col_space() == *img_col
            })
        });
        let Some(a) = found_a else {
            return Ok(None);
        };
        let found_b = enumerate_gl(f, n, limits.max_pairs)?.find(|b| {
            words.iter().all(|(word, img_row, _)| {
                word.matmul(b).expect("shapes match").row_space() == *img_row
            })
        });
        Ok(found_b.map(|b| PropertyWitness { a, b }))
    }

    /// Search for a concrete Property-1 violation: the code-level
    /// dimension test first, then ordered codeword pairs whose row- or
    /// column-space inclusion is not preserved. Absence proves nothing.
    pub fn refute_property_p(&self) -> Result<Option<Refutation>> {
        let (dom_row, dom_col) = self.domain.line_spaces();
        let (img_row, img_col) = self.codomain.line_spaces();
        if dom_row.dim() != img_row.dim() {
            return Ok(Some(Refutation::DimensionMismatch {
                side: Side::Row,
                domain_dim: dom_row.dim(),
                image_dim: img_row.dim(),
            }));
        }
        if dom_col.dim() != img_col.dim() {
            return Ok(Some(Refutation::DimensionMismatch {
                side: Side::Col,
                domain_dim: dom_col.dim(),
                image_dim: img_col.dim(),
            }));
        }

        if self.domain.size() > MAX_REFUTE_CODEWORDS {
            return Err(Error::CodeTooLarge(format!(
                "pair scan needs q^dim <= {MAX_REFUTE_CODEWORDS}, code has {}",
                self.domain.size()
            )));
        }
        let mut words = Vec::new();
        for coeffs in self.domain.coefficient_tuples()? {
            let word = self.domain.combine(&coeffs);
            let image = self.combine_images(&coeffs);
            words.push((
                word.row_space(),
                word.col_space(),
                image.row_space(),
                image.col_space(),
                word,
            ));
        }
        for (r1, c1, ir1, ic1, w1) in &words {
            for (r2, _, ir2, _, w2) in &words {
                if r2.contains_space(r1) && !ir2.contains_space(ir1) {
                    return Ok(Some(Refutation::InclusionViolation {
                        side: Side::Row,
                        inner: w1.clone(),
                        outer: w2.clone(),
                    }));
                }
            }
            for (_, c2, _, ic2, w2) in &words {
                if c2.contains_space(c1) && !ic2.contains_space(ic1) {
                    return Ok(Some(Refutation::InclusionViolation {
                        side: Side::Col,
                        inner: w1.clone(),
                        outer: w2.clone(),
                    }));
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Col,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Row => "row",
            Side::Col => "column",
        }
    }
}

/// A pair (A, B) satisfying Property 1 for every codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyWitness {
    pub a: Matrix,
    pub b: Matrix,
}

impl PropertyWitness {
    /// Re-verify both space equalities on every codeword, independently
    /// of however this pair was found.
    pub fn verify(&self, map: &CodeMap) -> Result<bool> {
        if !self.a.is_invertible() || !self.b.is_invertible() {
            return Ok(false);
        }
        if self.a.nrows() != map.domain().nrows() || self.b.nrows() != map.domain().ncols() {
            return Ok(false);
        }
        for coeffs in map.domain().coefficient_tuples()? {
            let word = map.domain().combine(&coeffs);
            let image = map.combine_images(&coeffs);
            let rows_match = word.matmul(&self.b)?.row_space() == image.row_space();
            let cols_match = self.a.matmul(&word)?.col_space() == image.col_space();
            if !rows_match || !cols_match {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A concrete Property-1 refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// dim(rowsp) or dim(colsp) differs between domain and image code,
    /// violating the necessary condition for any ambient isometry.
    DimensionMismatch {
        side: Side,
        domain_dim: usize,
        image_dim: usize,
    },
    /// A codeword pair whose space inclusion the map fails to preserve:
    /// span(inner) is contained in span(outer) but the images are not.
    InclusionViolation {
        side: Side,
        inner: Matrix,
        outer: Matrix,
    },
}

impl Refutation {
    pub fn kind(&self) -> &'static str {
        match self {
            Refutation::DimensionMismatch { .. } => "dimension-mismatch",
            Refutation::InclusionViolation { .. } => "inclusion-violation",
        }
    }
}

/// Verify that a specific pair refutes Property 1 through an inclusion
/// violation, as in the worked examples: rowsp(inner) <= rowsp(outer)
/// while the images intersect trivially.
pub fn verify_inclusion_refutation(map: &CodeMap, inner: &Matrix, outer: &Matrix) -> Result<bool> {
    let (inner_img, outer_img) = (map.apply(inner)?, map.apply(outer)?);
    let included = outer.row_space().contains_space(&inner.row_space());
    let (_, intersection) = inner_img.row_space().relate(&outer_img.row_space())?;
    Ok(included && intersection == 0 && !inner_img.row_space().is_trivial())
}
