//! Wire formats: JSON descriptors for fields, matrices, codes, maps,
//! scalar assignments, and witnesses, with validated conversions to the
//! domain types.

use serde::{Deserialize, Serialize};

use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::extend::{ExtensionWitness, ScalarAssignment};
use crate::gf::Field;
use crate::isometry::{CodeMap, PropertyWitness, Refutation};
use crate::matfq::{Matrix, SubspaceBasis};
use crate::paths::Position;

/// `{"p": 3, "k": 1}` or `{"p": 2, "k": 2, "modulus": [1,1,1]}`,
/// modulus coefficients ascending, constant term first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldJson {
    pub fn to_field(&self) -> Result<Field> {
        Field::new(self.p, self.k, self.modulus.as_deref())
    }

    pub fn from_field(field: &Field) -> FieldJson {
        FieldJson {
            p: field.characteristic() as u64,
            k: field.degree(),
            modulus: (field.degree() > 1).then(|| field.modulus().to_vec()),
        }
    }
}

/// `{"field": {...}, "rows": 2, "cols": 3, "entries": [[1,1,0],[0,1,0]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<Matrix> {
        let field = self.field.to_field()?;
        self.to_matrix_in(&field)
    }

    /// Conversion against an ambient field, rejecting disagreements.
    pub fn to_matrix_in(&self, field: &Field) -> Result<Matrix> {
        if self.field.to_field()? != *field {
            return Err(Error::FieldMismatch);
        }
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "entry grid does not match {}x{}",
                self.rows, self.cols
            )));
        }
        Matrix::from_rows(field.clone(), self.entries.clone())
    }

    pub fn from_matrix(matrix: &Matrix) -> MatrixJson {
        MatrixJson {
            field: FieldJson::from_field(matrix.field()),
            rows: matrix.nrows(),
            cols: matrix.ncols(),
            entries: (0..matrix.nrows())
                .map(|i| matrix.row(i).to_vec())
                .collect(),
        }
    }
}

/// `{"field": {...}, "m": 2, "n": 3, "generators": [matrix, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldJson,
    pub m: usize,
    pub n: usize,
    pub generators: Vec<MatrixJson>,
}

impl CodeJson {
    pub fn to_code(&self) -> Result<RankCode> {
        let field = self.field.to_field()?;
        let generators = self
            .generators
            .iter()
            .map(|g| g.to_matrix_in(&field))
            .collect::<Result<Vec<_>>>()?;
        RankCode::new(field, self.m, self.n, generators)
    }

    pub fn from_code(code: &RankCode) -> CodeJson {
        CodeJson {
            field: FieldJson::from_field(code.field()),
            m: code.nrows(),
            n: code.ncols(),
            generators: code
                .generators()
                .iter()
                .map(MatrixJson::from_matrix)
                .collect(),
        }
    }
}

/// `{"domain": code, "images": [matrix, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: CodeJson,
    pub images: Vec<MatrixJson>,
}

impl MapJson {
    pub fn to_map(&self) -> Result<CodeMap> {
        let domain = self.domain.to_code()?;
        let field = domain.field().clone();
        let images = self
            .images
            .iter()
            .map(|g| g.to_matrix_in(&field))
            .collect::<Result<Vec<_>>>()?;
        CodeMap::new(domain, images)
    }

    pub fn from_map(map: &CodeMap) -> MapJson {
        MapJson {
            domain: CodeJson::from_code(map.domain()),
            images: map
                .generator_images()
                .iter()
                .map(MatrixJson::from_matrix)
                .collect(),
        }
    }
}

/// `{"field": ..., "m": 2, "n": 2, "positions": [[1,1],[1,2]], "scalars": [1,2]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub field: FieldJson,
    pub m: usize,
    pub n: usize,
    pub positions: Vec<Position>,
    pub scalars: Vec<u32>,
}

impl AssignmentJson {
    pub fn parts(&self) -> Result<(Field, ScalarAssignment, usize, usize)> {
        let field = self.field.to_field()?;
        Ok((
            field,
            ScalarAssignment::new(self.positions.clone(), self.scalars.clone()),
            self.m,
            self.n,
        ))
    }
}

/// `{"A": matrix, "B": matrix, "transposed": false}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
    pub transposed: bool,
}

impl WitnessJson {
    pub fn from_witness(witness: &ExtensionWitness) -> WitnessJson {
        WitnessJson {
            a: MatrixJson::from_matrix(&witness.a),
            b: MatrixJson::from_matrix(&witness.b),
            transposed: witness.transposed,
        }
    }

    pub fn to_witness(&self) -> Result<ExtensionWitness> {
        Ok(ExtensionWitness {
            a: self.a.to_matrix()?,
            b: self.b.to_matrix()?,
            transposed: self.transposed,
        })
    }
}

/// Property-1 pair without the transpose flag.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
}

impl PairJson {
    pub fn from_pair(witness: &PropertyWitness) -> PairJson {
        PairJson {
            a: MatrixJson::from_matrix(&witness.a),
            b: MatrixJson::from_matrix(&witness.b),
        }
    }

    pub fn to_pair(&self) -> Result<PropertyWitness> {
        Ok(PropertyWitness {
            a: self.a.to_matrix()?,
            b: self.b.to_matrix()?,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}

impl SubspaceJson {
    pub fn from_basis(basis: &SubspaceBasis) -> SubspaceJson {
        SubspaceJson {
            ambient: basis.ambient(),
            dim: basis.dim(),
            basis: basis.vectors().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RefutationJson {
    pub kind: &'static str,
    pub side: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer: Option<MatrixJson>,
}

impl RefutationJson {
    pub fn from_refutation(refutation: &Refutation) -> RefutationJson {
        match refutation {
            Refutation::DimensionMismatch {
                side,
                domain_dim,
                image_dim,
            } => RefutationJson {
                kind: refutation.kind(),
                side: side.as_str(),
                domain_dim: Some(*domain_dim),
                image_dim: Some(*image_dim),
                inner: None,
                outer: None,
            },
            Refutation::InclusionViolation { side, inner, outer } => RefutationJson {
                kind: refutation.kind(),
                side: side.as_str(),
                domain_dim: None,
                image_dim: None,
                inner: Some(MatrixJson::from_matrix(inner)),
                outer: Some(MatrixJson::from_matrix(outer)),
            },
        }
    }
}

/// Machine-readable error object emitted in JSON mode.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson {
    pub error: ErrorBody,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

impl ErrorJson {
    pub fn from_error(err: &Error) -> ErrorJson {
        ErrorJson {
            error: ErrorBody {
                kind: err.kind(),
                message: err.to_string(),
            },
        }
    }
}
