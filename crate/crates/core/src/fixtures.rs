//! Named reproductions of the worked obstruction and path examples, each
//! with hard-coded expected verdicts, plus the Singer-cycle constructor.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::code::RankCode;
use crate::error::{Error, Result};
use crate::extend::oracle_extension;
use crate::gf::{self, Field};
use crate::isometry::{verify_inclusion_refutation, CodeMap, PropertyWitness, SearchLimits};
use crate::matfq::Matrix;
use crate::paths::{self, validate_path, Position, ReductionChain, Support};

/// Cap for the primitive-element order checks.
pub const MAX_ORDER: u64 = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct FixtureInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub defaults: Vec<(&'static str, &'static str)>,
}

pub fn list_examples() -> Vec<FixtureInfo> {
    vec![
        FixtureInfo {
            name: "bg-transpose-2x3",
            summary: "transpose inside an inclusion: isometric but not extendable",
            defaults: vec![("q", "2")],
        },
        FixtureInfo {
            name: "bg-block-4x4",
            summary: "block map (A,B) -> (A,B^t): not extendable, Id-codeword pruning",
            defaults: vec![("q", "2")],
        },
        FixtureInfo {
            name: "rowspace-mismatch-2x3",
            summary: "constant-rank-2 codes with row-space dims 2 vs 3",
            defaults: vec![],
        },
        FixtureInfo {
            name: "singer-cycle",
            summary: "order obstruction via a Singer cycle P and Q = P^(q-1)",
            defaults: vec![("q", "3"), ("n", "2")],
        },
        FixtureInfo {
            name: "non-multiplicative-3x3",
            summary: "identity-fixing non-multiplicative isometry with a Property-1 pair",
            defaults: vec![],
        },
        FixtureInfo {
            name: "rank-one-nonextendable-2x3",
            summary: "rank-one generated code whose isometry fails Property 1",
            defaults: vec![],
        },
        FixtureInfo {
            name: "rank-one-family-n",
            summary: "non-extendable isometries on codes of dimension 2n-2 in 2 x n",
            defaults: vec![("n", "4")],
        },
        FixtureInfo {
            name: "scalar-rank-one-2x4",
            summary: "scaling one rank-one generator breaks Property 1 (q > 2)",
            defaults: vec![("q", "3"), ("alpha", "2")],
        },
        FixtureInfo {
            name: "arrow-irreducible",
            summary: "arrow matrix: m+n-1 nonzero entries and no closed simple path",
            defaults: vec![("m", "3"), ("n", "3")],
        },
        FixtureInfo {
            name: "path-demo-3x5",
            summary: "the 3x5 support with a closed simple path and irreducible reductions",
            defaults: vec![],
        },
        FixtureInfo {
            name: "chain-demo-3x3",
            summary: "two reduction chains of the same 3x3 support, all of length 3",
            defaults: vec![],
        },
    ]
}

/// Outcome of one fixture run: computed vs expected verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub expected: BTreeMap<String, Value>,
    pub computed: BTreeMap<String, Value>,
    pub pass: bool,
}

type Verdicts = (BTreeMap<String, Value>, BTreeMap<String, Value>);

pub fn run_example(name: &str, params: &BTreeMap<String, String>) -> Result<FixtureReport> {
    let (expected, computed) = match name {
        "bg-transpose-2x3" => bg_transpose(params)?,
        "bg-block-4x4" => bg_block(params)?,
        "rowspace-mismatch-2x3" => rowspace_mismatch(params)?,
        "singer-cycle" => singer_cycle(params)?,
        "non-multiplicative-3x3" => non_multiplicative(params)?,
        "rank-one-nonextendable-2x3" => rank_one_nonextendable(params)?,
        "rank-one-family-n" => rank_one_family(params)?,
        "scalar-rank-one-2x4" => scalar_rank_one(params)?,
        "arrow-irreducible" => arrow_irreducible(params)?,
        "path-demo-3x5" => path_demo(params)?,
        "chain-demo-3x3" => chain_demo(params)?,
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    let pass = expected.iter().all(|(k, v)| computed.get(k) == Some(v))
        && expected.len() == computed.len();
    Ok(FixtureReport {
        name: name.to_string(),
        params: params.clone(),
        expected,
        computed,
        pass,
    })
}

/// GF(q) for a prime power q.
pub fn field_from_q(q: u64) -> Result<Field> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut k = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    Field::new(p, k, None)
}

fn param_u64(params: &BTreeMap<String, String>, key: &str, default: u64) -> Result<u64> {
    match params.get(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| Error::InvalidInput(format!("parameter {key}={raw} is not an integer"))),
    }
}

fn check_known_params(params: &BTreeMap<String, String>, allowed: &[&str]) -> Result<()> {
    for key in params.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::UnsupportedParams(format!(
                "unknown parameter '{key}' (allowed: {allowed:?})"
            )));
        }
    }
    Ok(())
}

fn mat(field: &Field, rows: Vec<Vec<u32>>) -> Matrix {
    Matrix::from_rows(field.clone(), rows).expect("fixture matrices are well-formed")
}

fn oracle_extendable(map: &CodeMap) -> Result<bool> {
    Ok(oracle_extension(map, true)?.is_some())
}

/// The inclusion iota: F_q^(2x2) -> F_q^(2x3) composed with transposition.
fn bg_transpose(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &["q"])?;
    let field = field_from_q(param_u64(params, "q", 2)?)?;
    let mut generators = Vec::new();
    let mut images = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            generators.push(Matrix::elementary(field.clone(), 2, 3, i, j));
            images.push(Matrix::elementary(field.clone(), 2, 3, j, i));
        }
    }
    let domain = RankCode::new(field, 2, 3, generators)?;
    let map = CodeMap::new(domain, images)?;
    let computed = BTreeMap::from([
        ("dim".into(), json!(map.domain().dim())),
        ("isometry".into(), json!(map.is_isometry()?)),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("dim".into(), json!(4)),
        ("isometry".into(), json!(true)),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

/// diag(A, B) -> diag(A, B^t) on 2x2 blocks of a 4x4 ambient space.
fn bg_block(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &["q"])?;
    let field = field_from_q(param_u64(params, "q", 2)?)?;
    let mut generators = Vec::new();
    let mut images = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            generators.push(Matrix::elementary(field.clone(), 4, 4, i, j));
            images.push(Matrix::elementary(field.clone(), 4, 4, i, j));
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            generators.push(Matrix::elementary(field.clone(), 4, 4, 2 + i, 2 + j));
            images.push(Matrix::elementary(field.clone(), 4, 4, 2 + j, 2 + i));
        }
    }
    let domain = RankCode::new(field, 4, 4, generators)?;
    let map = CodeMap::new(domain, images)?;
    let has_full_rank = map.domain().codewords()?.any(|w| w.rank() == 4);
    let computed = BTreeMap::from([
        ("dim".into(), json!(map.domain().dim())),
        ("isometry".into(), json!(map.is_isometry()?)),
        ("has_full_rank_codeword".into(), json!(has_full_rank)),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("dim".into(), json!(8)),
        ("isometry".into(), json!(true)),
        ("has_full_rank_codeword".into(), json!(true)),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

/// Constant-rank-2 codes whose row spaces have dimensions 2 and 3.
fn rowspace_mismatch(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &[])?;
    let f = Field::new(2, 1, None)?;
    let domain = RankCode::new(
        f.clone(),
        2,
        3,
        vec![
            mat(&f, vec![vec![1, 1, 0], vec![0, 1, 0]]),
            mat(&f, vec![vec![0, 1, 0], vec![1, 0, 0]]),
        ],
    )?;
    let images = vec![
        mat(&f, vec![vec![0, 0, 1], vec![0, 1, 0]]),
        mat(&f, vec![vec![0, 1, 0], vec![1, 0, 0]]),
    ];
    let map = CodeMap::new(domain, images)?;
    let (dom_row, _) = map.domain().line_spaces();
    let (img_row, _) = map.codomain().line_spaces();
    let witness = map.property_p_witness(&SearchLimits::default())?;
    let refutation = map.refute_property_p()?;
    let computed = BTreeMap::from([
        ("isometry".into(), json!(map.is_isometry()?)),
        ("rowsp_dim_domain".into(), json!(dom_row.dim())),
        ("rowsp_dim_codomain".into(), json!(img_row.dim())),
        ("witness_found".into(), json!(witness.is_some())),
        ("refuted".into(), json!(refutation.is_some())),
        (
            "refutation_kind".into(),
            json!(refutation.map(|r| r.kind())),
        ),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("isometry".into(), json!(true)),
        ("rowsp_dim_domain".into(), json!(2)),
        ("rowsp_dim_codomain".into(), json!(3)),
        ("witness_found".into(), json!(false)),
        ("refuted".into(), json!(true)),
        ("refutation_kind".into(), json!("dimension-mismatch")),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

/// Id -> Id, P -> Q = P^(q-1) on the field algebra F_q[P]: the orders of
/// P and Q differ, so no conjugation realizes the map.
fn singer_cycle(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &["q", "n"])?;
    let q = param_u64(params, "q", 3)?;
    let n = param_u64(params, "n", 2)? as usize;
    if q == 2 {
        return Err(Error::UnsupportedParams(
            "q = 2 degenerates the example: Q = P^(q-1) = P".into(),
        ));
    }
    if n < 2 {
        return Err(Error::UnsupportedParams("need n >= 2".into()));
    }
    let field = field_from_q(q)?;
    if field.degree() != 1 {
        return Err(Error::UnsupportedParams(
            "singer-cycle is implemented for prime q".into(),
        ));
    }
    let p = primitive_companion(&field, n)?;
    let big_q = p.pow(q - 1)?;
    let qn_minus_1 = q.pow(n as u32) - 1;
    let order_p = p.multiplicative_order(MAX_ORDER)?;
    let order_q = big_q.multiplicative_order(MAX_ORDER)?;

    // Generators are the power basis of P; the map sends P^e to Q^e.
    // Q generates the same field algebra, so the images stay independent.
    let mut generators = Vec::with_capacity(n);
    let mut images = Vec::with_capacity(n);
    for e in 0..n {
        generators.push(p.pow(e as u64)?);
        images.push(big_q.pow(e as u64)?);
    }
    let code = RankCode::new(field, n, n, generators)?;
    let all_rank_n = code.codewords()?.all(|w| w.is_zero() || w.rank() == n);
    let map = CodeMap::new(code, images)?;
    let computed = BTreeMap::from([
        ("dim".into(), json!(map.domain().dim())),
        ("order_p".into(), json!(order_p)),
        ("order_q".into(), json!(order_q)),
        ("all_nonzero_rank_n".into(), json!(all_rank_n)),
        ("isometry".into(), json!(map.is_isometry()?)),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("dim".into(), json!(n)),
        ("order_p".into(), json!(qn_minus_1)),
        ("order_q".into(), json!(qn_minus_1 / (q - 1))),
        ("all_nonzero_rank_n".into(), json!(true)),
        ("isometry".into(), json!(true)),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

/// The 4-element GF(2) code {0, Id, M1, M2}: swapping M1 and M2 while
/// fixing Id is an isometry with a Property-1 pair but no extension.
fn non_multiplicative(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &[])?;
    let f = Field::new(2, 1, None)?;
    let m1 = mat(&f, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 0]]);
    let m2 = mat(&f, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 1]]);
    let id = Matrix::identity(f.clone(), 3);
    let code = RankCode::new(f.clone(), 3, 3, vec![id.clone(), m1.clone(), m2.clone()])?;
    let map = CodeMap::new(code, vec![id, m2, m1])?;
    let witness = map.property_p_witness(&SearchLimits::default())?;
    // The displayed Property-1 pair.
    let displayed_pair = PropertyWitness {
        a: mat(&f, vec![vec![0, 0, 1], vec![1, 1, 1], vec![1, 0, 0]]),
        b: mat(&f, vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0]]),
    };
    let computed = BTreeMap::from([
        ("isometry".into(), json!(map.is_isometry()?)),
        ("witness_found".into(), json!(witness.is_some())),
        (
            "displayed_pair_verifies".into(),
            json!(displayed_pair.verify(&map)?),
        ),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("isometry".into(), json!(true)),
        ("witness_found".into(), json!(true)),
        ("displayed_pair_verifies".into(), json!(true)),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

fn rank_one_generators(f: &Field) -> Vec<Matrix> {
    vec![
        mat(f, vec![vec![1, 0, 0], vec![0, 0, 0]]),
        mat(f, vec![vec![0, 0, 0], vec![0, 1, 0]]),
        mat(f, vec![vec![0, 0, 1], vec![0, 0, 1]]),
        mat(f, vec![vec![1, 1, 0], vec![1, 1, 0]]),
    ]
}

/// Four rank-one generators; sending C4 to C4 + C3 is an isometry
/// without Property 1.
fn rank_one_nonextendable(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &[])?;
    let f = Field::new(2, 1, None)?;
    let gens = rank_one_generators(&f);
    let code = RankCode::new(f.clone(), 2, 3, gens.clone())?;
    let images = vec![
        gens[0].clone(),
        gens[1].clone(),
        gens[2].clone(),
        gens[3].add(&gens[2])?,
    ];
    let map = CodeMap::new(code, images)?;
    let rank_one = map.domain().rank_one_basis()?;
    let witness = map.property_p_witness(&SearchLimits::default())?;
    let refutation = map.refute_property_p()?;
    let computed = BTreeMap::from([
        ("dim".into(), json!(map.domain().dim())),
        ("rank_one_generated".into(), json!(rank_one.is_some())),
        ("isometry".into(), json!(map.is_isometry()?)),
        ("witness_found".into(), json!(witness.is_some())),
        ("refuted".into(), json!(refutation.is_some())),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("dim".into(), json!(4)),
        ("rank_one_generated".into(), json!(true)),
        ("isometry".into(), json!(true)),
        ("witness_found".into(), json!(false)),
        ("refuted".into(), json!(true)),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

/// The family C_n = {(A | C)} in GF(2)^(2 x n): dimension 2n - 2 yet
/// still non-extendable.
fn rank_one_family(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &["n"])?;
    let n = param_u64(params, "n", 4)? as usize;
    if n < 4 {
        return Err(Error::UnsupportedParams("family needs n >= 4".into()));
    }
    let f = Field::new(2, 1, None)?;
    let shift = n - 3;
    // Embed a 2x3 block into the last three columns.
    let embed = |block: &Matrix| -> Matrix {
        let mut rows = vec![vec![0u32; n]; 2];
        for i in 0..2 {
            for j in 0..3 {
                rows[i][shift + j] = block.get(i, j);
            }
        }
        mat(&f, rows)
    };
    let mut generators = Vec::new();
    let mut images = Vec::new();
    for i in 0..2 {
        for j in 0..shift {
            generators.push(Matrix::elementary(f.clone(), 2, n, i, j));
            images.push(Matrix::elementary(f.clone(), 2, n, i, j));
        }
    }
    let gens = rank_one_generators(&f);
    for g in &gens {
        generators.push(embed(g));
    }
    for img in [
        gens[0].clone(),
        gens[1].clone(),
        gens[2].clone(),
        gens[3].add(&gens[2])?,
    ] {
        images.push(embed(&img));
    }
    let code = RankCode::new(f, 2, n, generators)?;
    let map = CodeMap::new(code, images)?;
    let computed = BTreeMap::from([
        ("dim".into(), json!(map.domain().dim())),
        ("isometry".into(), json!(map.is_isometry()?)),
        ("extendable".into(), json!(oracle_extendable(&map)?)),
    ]);
    let expected = BTreeMap::from([
        ("dim".into(), json!(2 * n - 2)),
        ("isometry".into(), json!(true)),
        ("extendable".into(), json!(false)),
    ]);
    Ok((expected, computed))
}

/// Five rank-one generators in F_q^(2x4); scaling C5 by alpha breaks the
/// row-space inclusion rowsp(C5 - C2) <= rowsp(C1 + ... + C5).
fn scalar_rank_one(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &["q", "alpha"])?;
    let q = param_u64(params, "q", 3)?;
    if q == 2 {
        return Err(Error::UnsupportedParams(
            "needs alpha outside {0, 1}, impossible for q = 2".into(),
        ));
    }
    let f = field_from_q(q)?;
    let alpha = param_u64(params, "alpha", 2)? as u32;
    if alpha <= 1 || !f.contains(alpha) {
        return Err(Error::UnsupportedParams(format!(
            "alpha must lie in F_q minus {{0, 1}}, got {alpha}"
        )));
    }
    let gens = vec![
        mat(&f, vec![vec![1, 0, 0, 0], vec![0, 0, 0, 0]]),
        mat(&f, vec![vec![0, 0, 0, 0], vec![0, 1, 0, 0]]),
        mat(&f, vec![vec![0, 0, 1, 0], vec![0, 0, 2, 0]]),
        mat(&f, vec![vec![0, 0, 0, 1], vec![0, 0, 0, 1]]),
        mat(&f, vec![vec![0, 0, 0, 0], vec![1, 1, 1, 1]]),
    ];
    let code = RankCode::new(f.clone(), 2, 4, gens.clone())?;
    let mut images: Vec<Matrix> = gens[..4].to_vec();
    images.push(gens[4].scale(alpha));
    let map = CodeMap::new(code, images)?;
    let refutation = map.refute_property_p()?;
    // The displayed refuting pair.
    let inner = gens[4].sub(&gens[1])?;
    let outer = gens
        .iter()
        .skip(1)
        .fold(gens[0].clone(), |acc, g| acc.add(g).expect("shapes match"));
    let pair_ok = verify_inclusion_refutation(&map, &inner, &outer)?;
    let computed = BTreeMap::from([
        ("dim".into(), json!(map.domain().dim())),
        ("isometry".into(), json!(map.is_isometry()?)),
        ("refuted".into(), json!(refutation.is_some())),
        ("displayed_pair_verifies".into(), json!(pair_ok)),
    ]);
    let expected = BTreeMap::from([
        ("dim".into(), json!(5)),
        ("isometry".into(), json!(true)),
        ("refuted".into(), json!(true)),
        ("displayed_pair_verifies".into(), json!(true)),
    ]);
    Ok((expected, computed))
}

/// First row and first column all ones: m+n-1 entries, no closed simple
/// path.
fn arrow_irreducible(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &["m", "n"])?;
    let m = param_u64(params, "m", 3)? as usize;
    let n = param_u64(params, "n", 3)? as usize;
    if m < 2 || n < 2 {
        return Err(Error::UnsupportedParams("arrow needs m, n >= 2".into()));
    }
    let f = Field::new(2, 1, None)?;
    let mut rows = vec![vec![0u32; n]; m];
    rows[0] = vec![1; n];
    for r in rows.iter_mut() {
        r[0] = 1;
    }
    let matrix = mat(&f, rows);
    let computed = BTreeMap::from([
        ("irreducible".into(), json!(paths::is_irreducible(&matrix))),
        ("support".into(), json!(paths::support(&matrix).len())),
    ]);
    let expected = BTreeMap::from([
        ("irreducible".into(), json!(true)),
        ("support".into(), json!(m + n - 1)),
    ]);
    Ok((expected, computed))
}

/// The 3x5 demonstration: one closed simple path, and both displayed
/// reductions irreducible.
fn path_demo(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &[])?;
    let f = Field::new(2, 1, None)?;
    let matrix = mat(
        &f,
        vec![
            vec![1, 0, 0, 1, 0],
            vec![0, 1, 0, 1, 0],
            vec![1, 1, 0, 0, 0],
        ],
    );
    let displayed = [
        Position::new(1, 1),
        Position::new(1, 4),
        Position::new(2, 4),
        Position::new(2, 2),
        Position::new(3, 2),
        Position::new(3, 1),
    ];
    let verdict = validate_path(&matrix, &displayed);
    let found = paths::find_closed_simple_path(&matrix);
    let sup = paths::support(&matrix);
    let m_prime = sup.reduce_at(&Position::new(1, 1))?;
    let m_second = sup.reduce_at(&Position::new(1, 4))?;
    let computed = BTreeMap::from([
        ("displayed_path_class".into(), json!(verdict.class.as_str())),
        (
            "found_path".into(),
            json!(found.map(|p| p.positions().to_vec())),
        ),
        (
            "m_prime_irreducible".into(),
            json!(m_prime.is_irreducible()),
        ),
        (
            "m_second_irreducible".into(),
            json!(m_second.is_irreducible()),
        ),
    ]);
    let expected = BTreeMap::from([
        ("displayed_path_class".into(), json!("closed-simple")),
        (
            "found_path".into(),
            json!([[1, 1], [1, 4], [2, 4], [2, 2], [3, 2], [3, 1]]),
        ),
        ("m_prime_irreducible".into(), json!(true)),
        ("m_second_irreducible".into(), json!(true)),
    ]);
    Ok((expected, computed))
}

/// The 3x3 support with two displayed chains; every chain has length 3.
fn chain_demo(params: &BTreeMap<String, String>) -> Result<Verdicts> {
    check_known_params(params, &[])?;
    let f = Field::new(2, 1, None)?;
    let start = mat(&f, vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]);
    let sup = |rows: Vec<Vec<u32>>| Support::from_matrix(&mat(&f, rows));
    let first = ReductionChain::from_parts(
        vec![
            Support::from_matrix(&start),
            sup(vec![vec![0, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]),
            sup(vec![vec![0, 1, 0], vec![1, 1, 1], vec![0, 1, 0]]),
        ],
        vec![Position::new(1, 1), Position::new(3, 3)],
    );
    let second = ReductionChain::from_parts(
        vec![
            Support::from_matrix(&start),
            sup(vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]),
            sup(vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]),
        ],
        vec![Position::new(2, 2), Position::new(3, 3)],
    );
    let greedy = paths::reduction_chain(&start);
    let census = paths::enumerate_all_chains(&start)?;
    let computed = BTreeMap::from([
        ("first_chain_valid".into(), json!(first.is_ok())),
        ("second_chain_valid".into(), json!(second.is_ok())),
        ("greedy_length".into(), json!(greedy.len())),
        ("all_lengths".into(), json!(census.distinct_lengths())),
    ]);
    let expected = BTreeMap::from([
        ("first_chain_valid".into(), json!(true)),
        ("second_chain_valid".into(), json!(true)),
        ("greedy_length".into(), json!(3)),
        ("all_lengths".into(), json!([3])),
    ]);
    Ok((expected, computed))
}

/// Companion matrix of the first monic primitive degree-n polynomial over
/// a prime field, by ascending coefficient encoding. The returned matrix
/// has verified multiplicative order q^n - 1.
pub fn primitive_companion(field: &Field, n: usize) -> Result<Matrix> {
    if field.degree() != 1 {
        return Err(Error::InvalidInput(
            "primitive_companion needs a prime field".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    let p = field.characteristic();
    let group_order = (p as u64)
        .checked_pow(n as u32)
        .map(|q| q - 1)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or_else(|| {
            Error::SearchSpaceTooLarge(format!("order checking needs q^n - 1 <= {MAX_ORDER}"))
        })?;

    for candidate in gf::monic_polys(p, n) {
        if !gf::is_irreducible(&candidate, p) {
            continue;
        }
        if poly_x_order(&candidate, p, group_order) != group_order {
            continue;
        }
        let companion = companion_matrix(field, &candidate);
        verify_order(&companion, group_order)?;
        return Ok(companion);
    }
    Err(Error::SearchExhausted)
}

/// Multiplicative order of x modulo a monic irreducible polynomial,
/// via prime-factor tests on the group order.
fn poly_x_order(modulus: &[u32], p: u32, group_order: u64) -> u64 {
    let n = modulus.len() - 1;
    let x: Vec<u32> = if n == 1 {
        // x reduces to the constant -c0 in GF(p)[x]/(x + c0).
        vec![(p - modulus[0]) % p]
    } else {
        vec![0, 1]
    };
    if x.iter().all(|&c| c == 0) {
        return 0;
    }
    let pow = |e: u64| -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = gf::poly::rem(&gf::poly::mul(&acc, &base, p), modulus, p);
            }
            base = gf::poly::rem(&gf::poly::mul(&base, &base, p), modulus, p);
            e >>= 1;
        }
        acc
    };
    if pow(group_order) != vec![1] {
        return 0;
    }
    let mut order = group_order;
    for factor in prime_factors(group_order) {
        while order.is_multiple_of(factor) && pow(order / factor) == vec![1] {
            order /= factor;
        }
    }
    order
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Companion matrix: subdiagonal ones, last column -coefficients.
fn companion_matrix(field: &Field, poly: &[u32]) -> Matrix {
    let n = poly.len() - 1;
    let mut rows = vec![vec![0u32; n]; n];
    for i in 1..n {
        rows[i][i - 1] = 1;
    }
    for i in 0..n {
        rows[i][n - 1] = field.neg(poly[i]);
    }
    Matrix::from_rows(field.clone(), rows).expect("companion entries in range")
}

/// Confirm the matrix order by prime-divisor powers.
fn verify_order(matrix: &Matrix, order: u64) -> Result<()> {
    let id = Matrix::identity(matrix.field().clone(), matrix.nrows());
    if matrix.pow(order)? != id {
        return Err(Error::SearchExhausted);
    }
    for factor in prime_factors(order) {
        if matrix.pow(order / factor)? == id {
            return Err(Error::SearchExhausted);
        }
    }
    Ok(())
}
