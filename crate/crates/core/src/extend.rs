//! The extension engine: rank-drop values on closed simple paths,
//! diagonal-pair construction on irreducible supports, the elementary
//! extension builder, the GF(2) rank-one extension, and the exhaustive
//! ambient-extension oracle.

use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::isometry::{CodeMap, PropertyWitness, SearchLimits};
use crate::matfq::{enumerate_gl, gl_order, Matrix};
use crate::paths::{validate_path, Path, PathClass, Position, Support};

/// Scalars on elementary positions: the data of a map
/// E_(i,j) -> scalar * E_(i,j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarAssignment {
    pub positions: Vec<Position>,
    pub scalars: Vec<u32>,
}

impl ScalarAssignment {
    pub fn new(positions: Vec<Position>, scalars: Vec<u32>) -> ScalarAssignment {
        ScalarAssignment { positions, scalars }
    }

    fn validate(&self, field: &Field, m: usize, n: usize) -> Result<()> {
        if self.positions.len() != self.scalars.len() {
            return Err(Error::InvalidInput(format!(
                "{} positions but {} scalars",
                self.positions.len(),
                self.scalars.len()
            )));
        }
        let support = Support::from_positions(m, n, self.positions.iter().copied())?;
        if support.len() != self.positions.len() {
            return Err(Error::InvalidInput("positions must be distinct".into()));
        }
        for &s in &self.scalars {
            if !field.contains(s) {
                return Err(Error::InvalidInput(format!(
                    "{s} is not an element of {field}"
                )));
            }
            if s == 0 {
                return Err(Error::ZeroScalar);
            }
        }
        Ok(())
    }

    fn scalar_at(&self, pos: &Position) -> Option<u32> {
        self.positions
            .iter()
            .position(|p| p == pos)
            .map(|i| self.scalars[i])
    }
}

/// An ambient isometry M -> A M B (or A M^t B when transposed) realizing
/// a code map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub a: Matrix,
    pub b: Matrix,
    pub transposed: bool,
}

impl ExtensionWitness {
    pub fn apply(&self, word: &Matrix) -> Result<Matrix> {
        let mid = if self.transposed {
            word.transpose()
        } else {
            word.clone()
        };
        self.a.matmul(&mid)?.matmul(&self.b)
    }

    /// True iff applying the witness to every stated domain generator
    /// reproduces its image.
    pub fn verify_map(&self, map: &CodeMap) -> Result<bool> {
        if !self.a.is_invertible() || !self.b.is_invertible() {
            return Ok(false);
        }
        if self.transposed && map.domain().nrows() != map.domain().ncols() {
            return Ok(false);
        }
        for (g, img) in map.domain().generators().iter().zip(map.generator_images()) {
            if self.apply(g)? != *img {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff A E_h B = scalar_h E_h for every assigned position.
    pub fn verify_assignment(
        &self,
        field: &Field,
        assignment: &ScalarAssignment,
        m: usize,
        n: usize,
    ) -> Result<bool> {
        for (pos, &s) in assignment.positions.iter().zip(&assignment.scalars) {
            let e = Matrix::elementary(
                field.clone(),
                m,
                n,
                pos.row as usize - 1,
                pos.col as usize - 1,
            );
            if self.apply(&e)? != e.scale(s) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The unique field element that drops the rank of the path matrix.
///
/// For a closed simple path of even length k and nonzero coefficients on
/// its first k-1 positions, the matrix sum with value `a` on the last
/// position has rank k/2 for all but exactly one nonzero `a`, where the
/// rank is k/2 - 1. Found and cross-checked by scanning all of F_q.
pub fn rank_drop_value(field: &Field, path: &Path, coeffs: &[u32]) -> Result<u32> {
    let k = path.len();
    if coeffs.len() + 1 != k {
        return Err(Error::InvalidInput(format!(
            "a path of length {k} takes {} fixed coefficients, got {}",
            k - 1,
            coeffs.len()
        )));
    }
    for &c in coeffs {
        if !field.contains(c) {
            return Err(Error::InvalidInput(format!(
                "{c} is not an element of {field}"
            )));
        }
        if c == 0 {
            return Err(Error::ZeroScalar);
        }
    }
    let m = path.positions().iter().map(|p| p.row).max().unwrap_or(1) as usize;
    let n = path.positions().iter().map(|p| p.col).max().unwrap_or(1) as usize;

    let build = |last: u32| -> Matrix {
        let mut entries = vec![0u32; m * n];
        for (pos, &c) in path.positions().iter().zip(coeffs.iter().chain([&last])) {
            entries[(pos.row as usize - 1) * n + (pos.col as usize - 1)] = c;
        }
        Matrix::new(field.clone(), m, n, entries).expect("entries in range")
    };

    let verdict = validate_path(&build(1), path.positions());
    if verdict.class != PathClass::ClosedSimple {
        return Err(Error::NotClosedSimple(format!(
            "sequence classifies as {}",
            verdict.class.as_str()
        )));
    }
    debug_assert!(k.is_multiple_of(2));

    let mut drop = None;
    for a in field.elements() {
        let rank = build(a).rank();
        if rank == k / 2 - 1 {
            if drop.replace(a).is_some() {
                return Err(Error::NoDropValue);
            }
        } else if rank != k / 2 {
            return Err(Error::NoDropValue);
        }
    }
    match drop {
        Some(a) if a != 0 => Ok(a),
        _ => Err(Error::NoDropValue),
    }
}

/// Diagonal invertible A, B with a_i * b_j = scalar at every assigned
/// position. Requires the position support to be irreducible; spanning-
/// forest propagation seeds each connected component at its smallest
/// position and fills unassigned diagonal entries with 1.
pub fn build_diagonal_pair(
    field: &Field,
    positions: &[Position],
    scalars: &[u32],
    m: usize,
    n: usize,
) -> Result<(Matrix, Matrix)> {
    let assignment = ScalarAssignment::new(positions.to_vec(), scalars.to_vec());
    assignment.validate(field, m, n)?;
    let support = Support::from_positions(m, n, positions.iter().copied())?;
    if !support.is_irreducible() {
        return Err(Error::NotIrreducible);
    }

    let mut pairs: Vec<(Position, u32)> = positions
        .iter()
        .copied()
        .zip(scalars.iter().copied())
        .collect();
    pairs.sort_by_key(|(p, _)| *p);

    let mut a_diag: Vec<Option<u32>> = vec![None; m];
    let mut b_diag: Vec<Option<u32>> = vec![None; n];
    let mut processed = vec![false; pairs.len()];
    for _ in 0..pairs.len() {
        // Prefer a position touching an already-assigned diagonal entry;
        // otherwise seed a new component at the smallest remaining one.
        let next = pairs
            .iter()
            .enumerate()
            .filter(|(h, _)| !processed[*h])
            .find(|(_, (p, _))| {
                a_diag[p.row as usize - 1].is_some() || b_diag[p.col as usize - 1].is_some()
            })
            .or_else(|| pairs.iter().enumerate().find(|(h, _)| !processed[*h]))
            .map(|(h, _)| h)
            .expect("loop runs once per position");
        let (p, s) = pairs[next];
        let (i, j) = (p.row as usize - 1, p.col as usize - 1);
        match (a_diag[i], b_diag[j]) {
            (Some(a), None) => {
                b_diag[j] = Some(field.mul(field.inv(a)?, s));
            }
            (None, Some(b)) => {
                a_diag[i] = Some(field.mul(field.inv(b)?, s));
            }
            (None, None) => {
                a_diag[i] = Some(1);
                b_diag[j] = Some(s);
            }
            (Some(_), Some(_)) => {
                unreachable!("two assigned endpoints would close a cycle in a forest")
            }
        }
        processed[next] = true;
    }

    let a_vals: Vec<u32> = a_diag.into_iter().map(|x| x.unwrap_or(1)).collect();
    let b_vals: Vec<u32> = b_diag.into_iter().map(|x| x.unwrap_or(1)).collect();
    for ((p, s), _) in pairs.iter().zip(0..) {
        debug_assert_eq!(
            field.mul(a_vals[p.row as usize - 1], b_vals[p.col as usize - 1]),
            *s
        );
    }
    Ok((
        Matrix::diagonal(field.clone(), &a_vals),
        Matrix::diagonal(field.clone(), &b_vals),
    ))
}

/// Extend a scalar assignment on elementary matrices to an ambient
/// isometry, or certify that it is not an isometry.
///
/// Follows the greedy reduction chain of the position support down to its
/// irreducible tail, builds the diagonal pair there, and verifies the
/// pair against all assigned positions. A verification failure pins the
/// violating position.
pub fn extend_elementary(
    field: &Field,
    assignment: &ScalarAssignment,
    m: usize,
    n: usize,
) -> Result<ExtensionWitness> {
    assignment.validate(field, m, n)?;
    let support = Support::from_positions(m, n, assignment.positions.iter().copied())?;
    let chain = support.reduction_chain();
    let tail = chain.final_support();
    let tail_positions = tail.to_vec();
    let tail_scalars: Vec<u32> = tail_positions
        .iter()
        .map(|p| assignment.scalar_at(p).expect("tail is a subset"))
        .collect();
    let (a, b) = build_diagonal_pair(field, &tail_positions, &tail_scalars, m, n)?;

    for (pos, &expected) in assignment.positions.iter().zip(&assignment.scalars) {
        let actual = field.mul(
            a.get(pos.row as usize - 1, pos.row as usize - 1),
            b.get(pos.col as usize - 1, pos.col as usize - 1),
        );
        if actual != expected {
            return Err(Error::NotAnIsometry {
                position: *pos,
                expected,
                actual,
            });
        }
    }
    Ok(ExtensionWitness {
        a,
        b,
        transposed: false,
    })
}

/// The code map induced by a scalar assignment: the code spanned by the
/// elementary matrices at the assigned positions, each sent to its
/// scalar multiple.
pub fn elementary_map(
    field: &Field,
    assignment: &ScalarAssignment,
    m: usize,
    n: usize,
) -> Result<CodeMap> {
    assignment.validate(field, m, n)?;
    let zero_based: Vec<(usize, usize)> = assignment
        .positions
        .iter()
        .map(|p| (p.row as usize - 1, p.col as usize - 1))
        .collect();
    let domain = RankCode::from_elementary(field.clone(), m, n, &zero_based)?;
    let images = domain
        .generators()
        .iter()
        .zip(&assignment.scalars)
        .map(|(g, &s)| g.scale(s))
        .collect();
    CodeMap::new(domain, images)
}

/// The GF(2) extension for rank-one generated codes: a verified
/// Property-1 pair is itself the ambient extension.
pub fn extend_rank_one_f2(map: &CodeMap, witness: &PropertyWitness) -> Result<ExtensionWitness> {
    let field = map.domain().field();
    if field.order() != 2 {
        return Err(Error::WrongField(field.order()));
    }
    let rank_one = map
        .domain()
        .rank_one_basis()?
        .ok_or(Error::NotRankOneGenerated)?;
    if !witness.verify(map)? {
        return Err(Error::WitnessInvalid(
            "pair fails Property 1 on some codeword".into(),
        ));
    }
    let candidate = ExtensionWitness {
        a: witness.a.clone(),
        b: witness.b.clone(),
        transposed: false,
    };
    for r in &rank_one {
        if candidate.apply(r)? != map.apply(r)? {
            return Err(Error::VerificationFailed(format!(
                "witness disagrees with the map on a rank-one codeword (rank {})",
                r.rank()
            )));
        }
    }
    for coeffs in map.domain().coefficient_tuples()? {
        let word = map.domain().combine(&coeffs);
        if candidate.apply(&word)? != map.apply(&word)? {
            return Err(Error::VerificationFailed(
                "witness disagrees with the map on a codeword".into(),
            ));
        }
    }
    Ok(candidate)
}

/// Knobs for the brute-force oracle.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Search the M -> A M^t B branch too (square ambient only).
    pub allow_transpose: bool,
    /// Solve B from a full-rank codeword instead of looping over GL_n.
    pub use_pruning: bool,
    pub limits: SearchLimits,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            allow_transpose: false,
            use_pruning: true,
            limits: SearchLimits::default(),
        }
    }
}

/// Decide extendability exactly by exhaustive search; returns the
/// enumeration-minimal witness in (transposed, A, B) order or None.
pub fn oracle_extension(map: &CodeMap, allow_transpose: bool) -> Result<Option<ExtensionWitness>> {
    oracle_extension_with(
        map,
        &OracleOptions {
            allow_transpose,
            ..OracleOptions::default()
        },
    )
}

pub fn oracle_extension_with(
    map: &CodeMap,
    opts: &OracleOptions,
) -> Result<Option<ExtensionWitness>> {
    let m = map.domain().nrows();
    let n = map.domain().ncols();
    let mut branches = vec![false];
    if opts.allow_transpose && m == n {
        branches.push(true);
    }
    for transposed in branches {
        if let Some(witness) = search_branch(map, transposed, opts)? {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// A full-rank square codeword and its image, for oracle pruning.
fn full_rank_codeword(map: &CodeMap, limits: &SearchLimits) -> Result<Option<(Matrix, Matrix)>> {
    let code = map.domain();
    if code.nrows() != code.ncols() {
        return Ok(None);
    }
    let target = code.nrows();
    for (b, img) in code.basis().iter().zip(map.basis_images()) {
        if b.rank() == target {
            return Ok(Some((b.clone(), img.clone())));
        }
    }
    if code.size() > limits.max_codewords {
        return Ok(None);
    }
    for word in code.codewords()? {
        if word.rank() == target {
            let image = map.apply(&word)?;
            return Ok(Some((word, image)));
        }
    }
    Ok(None)
}

fn search_branch(
    map: &CodeMap,
    transposed: bool,
    opts: &OracleOptions,
) -> Result<Option<ExtensionWitness>> {
    let field = map.domain().field().clone();
    let m = map.domain().nrows();
    let n = map.domain().ncols();
    let basis: Vec<Matrix> = map
        .domain()
        .basis()
        .iter()
        .map(|g| if transposed { g.transpose() } else { g.clone() })
        .collect();
    let images = map.basis_images();
    // Equality on a basis settles equality on the whole code.
    let check = |a: &Matrix, b: &Matrix| -> bool {
        basis.iter().zip(images).all(|(g, img)| {
            a.matmul(g)
                .and_then(|ag| ag.matmul(b))
                .map(|agb| agb == *img)
                .unwrap_or(false)
        })
    };

    let pruning = if opts.use_pruning {
        full_rank_codeword(map, &opts.limits)?
    } else {
        None
    };

    if let Some((word, image)) = pruning {
        // A determines B: A C0 B = phi(C0) has the unique solution
        // B = (A C0)^(-1) phi(C0).
        let base = if transposed {
            word.transpose()
        } else {
            word.clone()
        };
        for a in enumerate_gl(&field, m, opts.limits.max_pairs)? {
            let ac = a.matmul(&base)?;
            let Some(ac_inv) = ac.inverse() else { continue };
            let b = ac_inv.matmul(&image)?;
            if !b.is_invertible() {
                continue;
            }
            if check(&a, &b) {
                return Ok(Some(ExtensionWitness { a, b, transposed }));
            }
        }
        return Ok(None);
    }

    let pair_count = gl_order(&field, m) * gl_order(&field, n);
    if pair_count > opts.limits.max_pairs {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{pair_count} (A, B) pairs exceed cap {}",
            opts.limits.max_pairs
        )));
    }
    // Materialize the inner loop when small enough to re-scan cheaply.
    let b_cached: Option<Vec<Matrix>> = if gl_order(&field, n) <= 1_000_000 {
        Some(enumerate_gl(&field, n, opts.limits.max_pairs)?.collect())
    } else {
        None
    };
    for a in enumerate_gl(&field, m, opts.limits.max_pairs)? {
        match &b_cached {
            Some(bs) => {
                for b in bs {
                    if check(&a, b) {
                        return Ok(Some(ExtensionWitness {
                            a,
                            b: b.clone(),
                            transposed,
                        }));
                    }
                }
            }
            None => {
                for b in enumerate_gl(&field, n, opts.limits.max_pairs)? {
                    if check(&a, &b) {
                        return Ok(Some(ExtensionWitness { a, b, transposed }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        match q {
            2 | 3 | 5 => Field::new(q, 1, None).unwrap(),
            4 => Field::new(2, 2, None).unwrap(),
            _ => panic!("unsupported test field"),
        }
    }

    fn pos(i: u32, j: u32) -> Position {
        Position::new(i, j)
    }

    fn square_cycle() -> Path {
        Path::canonical(vec![pos(1, 1), pos(1, 2), pos(2, 2), pos(2, 1)])
    }

    #[test]
    fn rank_drop_on_2x2_cycle_gf3() {
        // det(M_a) = a - 1 up to sign for unit coefficients.
        let a = rank_drop_value(&gf(3), &square_cycle(), &[1, 1, 1]).unwrap();
        assert_eq!(a, 1);
    }

    #[test]
    fn rank_drop_on_2x2_cycle_gf2() {
        let a = rank_drop_value(&gf(2), &square_cycle(), &[1, 1, 1]).unwrap();
        assert_eq!(a, 1);
    }

    #[test]
    fn rank_drop_on_length_6_cycle_gf5() {
        let path = Path::canonical(vec![
            pos(1, 1),
            pos(1, 2),
            pos(2, 2),
            pos(2, 3),
            pos(3, 3),
            pos(3, 1),
        ]);
        let f = gf(5);
        let a = rank_drop_value(&f, &path, &[1, 1, 1, 1, 1]).unwrap();
        // Independent scan: the returned value is the only rank-2 choice.
        for c in f.elements() {
            let mut rows = vec![vec![0u32; 3]; 3];
            for (p, v) in path.positions().iter().zip([1, 1, 1, 1, 1, c]) {
                rows[p.row as usize - 1][p.col as usize - 1] = v;
            }
            let rank = Matrix::from_rows(f.clone(), rows).unwrap().rank();
            assert_eq!(rank == 2, c == a);
        }
    }

    #[test]
    fn rank_drop_rejects_open_paths() {
        let open = Path::canonical(vec![pos(1, 1), pos(1, 2), pos(2, 2)]);
        let err = rank_drop_value(&gf(3), &open, &[1, 1]).unwrap_err();
        assert!(matches!(err, Error::NotClosedSimple(_)));
    }

    #[test]
    fn rank_drop_rejects_zero_coefficients() {
        let err = rank_drop_value(&gf(3), &square_cycle(), &[1, 0, 1]).unwrap_err();
        assert_eq!(err, Error::ZeroScalar);
    }

    #[test]
    fn diagonal_pair_single_position() {
        let f = gf(3);
        let (a, b) = build_diagonal_pair(&f, &[pos(1, 1)], &[2], 2, 3).unwrap();
        assert_eq!(a, Matrix::identity(f.clone(), 2));
        assert_eq!(b, Matrix::diagonal(f, &[2, 1, 1]));
    }

    #[test]
    fn diagonal_pair_l_shape() {
        // Positions (1,1), (1,2), (2,1) with scalars (1, s, t) give
        // A = diag(1, t), B = diag(1, s).
        let f = gf(3);
        let (s, t) = (2u32, 2u32);
        let (a, b) =
            build_diagonal_pair(&f, &[pos(1, 1), pos(1, 2), pos(2, 1)], &[1, s, t], 2, 2).unwrap();
        assert_eq!(a, Matrix::diagonal(f.clone(), &[1, t]));
        assert_eq!(b, Matrix::diagonal(f, &[1, s]));
    }

    #[test]
    fn diagonal_pair_rejects_full_square() {
        let f = gf(3);
        let err = build_diagonal_pair(
            &f,
            &[pos(1, 1), pos(1, 2), pos(2, 1), pos(2, 2)],
            &[1, 1, 1, 1],
            2,
            2,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotIrreducible);
    }

    #[test]
    fn extend_all_ones_gives_identity_pair() {
        let f = gf(3);
        let assignment = ScalarAssignment::new(
            vec![pos(1, 1), pos(1, 2), pos(2, 1), pos(2, 2)],
            vec![1, 1, 1, 1],
        );
        let w = extend_elementary(&f, &assignment, 2, 2).unwrap();
        assert_eq!(w.a, Matrix::identity(f.clone(), 2));
        assert_eq!(w.b, Matrix::identity(f.clone(), 2));
        assert!(w.verify_assignment(&f, &assignment, 2, 2).unwrap());
    }

    #[test]
    fn extend_consistent_full_square_gf3() {
        // Scalars (1,2,2,1) come from A = diag(1,2), B = diag(1,2).
        let f = gf(3);
        let assignment = ScalarAssignment::new(
            vec![pos(1, 1), pos(1, 2), pos(2, 1), pos(2, 2)],
            vec![1, 2, 2, 1],
        );
        let w = extend_elementary(&f, &assignment, 2, 2).unwrap();
        assert!(w.verify_assignment(&f, &assignment, 2, 2).unwrap());
        assert_eq!(w.a, Matrix::diagonal(f.clone(), &[1, 2]));
        assert_eq!(w.b, Matrix::diagonal(f, &[1, 2]));
    }

    #[test]
    fn extend_detects_non_isometry() {
        // (1 1 / 1 1) has rank 1 but its image (1 1 / 1 2) has rank 2,
        // so no ambient isometry realizes scalars (1,1,1,2).
        let f = gf(3);
        let assignment = ScalarAssignment::new(
            vec![pos(1, 1), pos(1, 2), pos(2, 1), pos(2, 2)],
            vec![1, 1, 1, 2],
        );
        let err = extend_elementary(&f, &assignment, 2, 2).unwrap_err();
        assert!(matches!(err, Error::NotAnIsometry { .. }));
    }

    #[test]
    fn oracle_finds_identity_for_identity_map() {
        let code = RankCode::from_elementary(gf(2), 2, 3, &[(0, 0), (1, 1)]).unwrap();
        let map = CodeMap::identity(code).unwrap();
        let w = oracle_extension(&map, false).unwrap().unwrap();
        assert_eq!(w.a, Matrix::identity(gf(2), 2));
        assert_eq!(w.b, Matrix::identity(gf(2), 3));
        assert!(!w.transposed);
        assert!(w.verify_map(&map).unwrap());
    }

    #[test]
    fn oracle_pruned_and_unpruned_agree() {
        let f = gf(2);
        let code = RankCode::from_elementary(f.clone(), 2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let a = Matrix::from_rows(f.clone(), vec![vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(f.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let images: Vec<Matrix> = code
            .generators()
            .iter()
            .map(|g| a.matmul(g).unwrap().matmul(&b).unwrap())
            .collect();
        let map = CodeMap::new(code, images).unwrap();
        let pruned = oracle_extension_with(
            &map,
            &OracleOptions {
                allow_transpose: false,
                use_pruning: true,
                limits: SearchLimits::default(),
            },
        )
        .unwrap();
        let unpruned = oracle_extension_with(
            &map,
            &OracleOptions {
                allow_transpose: false,
                use_pruning: false,
                limits: SearchLimits::default(),
            },
        )
        .unwrap();
        assert_eq!(pruned, unpruned);
        assert!(pruned.unwrap().verify_map(&map).unwrap());
    }

    #[test]
    fn oracle_transpose_branch_finds_transposition() {
        // M -> M^t on the full 2x2 space is an isometry of the second
        // kind only: no (A, B) realizes it directly, and the transpose
        // branch finds (Id, Id).
        let f = gf(2);
        let code =
            RankCode::from_elementary(f.clone(), 2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let images: Vec<Matrix> = code.generators().iter().map(Matrix::transpose).collect();
        let map = CodeMap::new(code, images).unwrap();
        assert!(oracle_extension(&map, false).unwrap().is_none());
        let w = oracle_extension(&map, true).unwrap().unwrap();
        assert!(w.transposed);
        assert_eq!(w.a, Matrix::identity(f.clone(), 2));
        assert_eq!(w.b, Matrix::identity(f, 2));
        assert!(w.verify_map(&map).unwrap());
    }

    #[test]
    fn extend_rank_one_f2_on_column_swap() {
        let f = gf(2);
        let code = RankCode::from_elementary(f.clone(), 2, 2, &[(0, 0), (0, 1)]).unwrap();
        let swap = Matrix::from_rows(f.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let images: Vec<Matrix> = code
            .generators()
            .iter()
            .map(|g| g.matmul(&swap).unwrap())
            .collect();
        let map = CodeMap::new(code, images).unwrap();
        let witness = PropertyWitness {
            a: Matrix::identity(f.clone(), 2),
            b: swap,
        };
        let ext = extend_rank_one_f2(&map, &witness).unwrap();
        assert!(ext.verify_map(&map).unwrap());
    }

    #[test]
    fn extend_rank_one_f2_wrong_field() {
        let code = RankCode::from_elementary(gf(3), 2, 2, &[(0, 0)]).unwrap();
        let map = CodeMap::identity(code).unwrap();
        let witness = PropertyWitness {
            a: Matrix::identity(gf(3), 2),
            b: Matrix::identity(gf(3), 2),
        };
        assert_eq!(
            extend_rank_one_f2(&map, &witness).unwrap_err(),
            Error::WrongField(3)
        );
    }

    #[test]
    fn elementary_map_round_trips_through_oracle() {
        // A consistent assignment extends; the induced map's oracle agrees.
        let f = gf(4);
        let assignment =
            ScalarAssignment::new(vec![pos(1, 1), pos(1, 2), pos(2, 2)], vec![2, 3, 2]);
        let w = extend_elementary(&f, &assignment, 2, 2).unwrap();
        assert!(w.verify_assignment(&f, &assignment, 2, 2).unwrap());
        let map = elementary_map(&f, &assignment, 2, 2).unwrap();
        let oracle = oracle_extension(&map, false).unwrap();
        assert!(oracle.is_some());
    }
}
