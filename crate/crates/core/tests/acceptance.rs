//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{gf, is_forest, random_invertible, random_rank_one, random_support, support_matrix};
use rankext::extend::{
    elementary_map, extend_elementary, extend_rank_one_f2, oracle_extension_with, OracleOptions,
    ScalarAssignment,
};
use rankext::fixtures::{list_examples, run_example};
use rankext::isometry::{CodeMap, SearchLimits};
use rankext::paths::{validate_path, PathClass, Position, Support};
use rankext::{Matrix, RankCode};

fn report(id: u32, name: &str, detail: &str) {
    println!("acceptance {id} ({name}): PASS — {detail}");
}

/// Criterion 1: all 11 catalogued fixtures pass on default parameters,
/// the whole suite under 120 s with bg-block-4x4 individually under 30 s.
#[test]
fn criterion_1_fixture_suite() {
    let suite_start = Instant::now();
    let mut names = Vec::new();
    for info in list_examples() {
        let start = Instant::now();
        let fixture = run_example(info.name, &BTreeMap::new())
            .unwrap_or_else(|e| panic!("fixture {} errored: {e}", info.name));
        assert!(
            fixture.pass,
            "fixture {} failed:\n  expected {:?}\n  computed {:?}",
            info.name, fixture.expected, fixture.computed
        );
        if info.name == "bg-block-4x4" {
            assert!(
                start.elapsed() < Duration::from_secs(30),
                "bg-block-4x4 took {:?}, budget is 30 s",
                start.elapsed()
            );
        }
        names.push(info.name);
    }
    let elapsed = suite_start.elapsed();
    assert_eq!(names.len(), 11);
    assert!(
        elapsed < Duration::from_secs(120),
        "fixture suite took {elapsed:?}, budget is 120 s"
    );
    report(1, "fixture suite", &format!("11 fixtures in {elapsed:.2?}"));
}

/// Criterion 2: >= 200 random consistent scalar assignments extend and
/// re-verify; for q = 2, m, n <= 3 the verdict agrees exactly with the
/// unpruned exhaustive oracle.
#[test]
fn criterion_2_main_theorem_round_trip() {
    let mut rng = StdRng::seed_from_u64(0x5e_c2);
    let qs = [2u64, 3, 4, 5];
    let mut total = 0;
    let mut cross_checked = 0;
    let unpruned = |allow_transpose: bool| OracleOptions {
        allow_transpose,
        use_pruning: false,
        limits: SearchLimits::default(),
    };

    for trial in 0..230 {
        // Force enough small GF(2) instances for the oracle cross-check.
        let (q, m, n) = if trial % 4 == 0 {
            (2, rng.random_range(1..=3), rng.random_range(1..=3))
        } else {
            (
                qs[rng.random_range(0..qs.len())],
                rng.random_range(1..=5),
                rng.random_range(1..=5),
            )
        };
        let field = gf(q);
        let max_k = (m * n).min(m + n + 3);
        let k = rng.random_range(1..=max_k);
        let support = random_support(&mut rng, m, n, k);
        let positions = support.to_vec();

        // Scalars induced by a random invertible diagonal pair.
        let a_diag: Vec<u32> = (0..m).map(|_| rng.random_range(1..field.order())).collect();
        let b_diag: Vec<u32> = (0..n).map(|_| rng.random_range(1..field.order())).collect();
        let scalars: Vec<u32> = positions
            .iter()
            .map(|p| field.mul(a_diag[p.row as usize - 1], b_diag[p.col as usize - 1]))
            .collect();
        let assignment = ScalarAssignment::new(positions, scalars);
        let witness = extend_elementary(&field, &assignment, m, n)
            .expect("diagonal-pair scalars always extend");
        assert!(
            witness
                .verify_assignment(&field, &assignment, m, n)
                .unwrap(),
            "witness failed re-verification on trial {trial}"
        );
        total += 1;

        if q == 2 && m <= 3 && n <= 3 {
            let map = elementary_map(&field, &assignment, m, n).unwrap();
            let oracle = oracle_extension_with(&map, &unpruned(false)).unwrap();
            assert!(
                oracle.is_some(),
                "unpruned oracle disagrees with extend_elementary on trial {trial}"
            );
            assert!(oracle.unwrap().verify_map(&map).unwrap());
            cross_checked += 1;
        }
    }
    assert!(total >= 200, "only {total} instances");
    assert!(
        cross_checked >= 30,
        "only {cross_checked} oracle cross-checks"
    );
    report(
        2,
        "main theorem round-trip",
        &format!("{total} instances, {cross_checked} exhaustive oracle cross-checks"),
    );
}

/// Criterion 3: for paths of lengths 4 and 6 with random nonzero
/// coefficients, exactly one field element drops the rank to k/2 - 1 and
/// every other gives k/2, on >= 500 trials.
#[test]
fn criterion_3_rank_drop_uniqueness() {
    let mut rng = StdRng::seed_from_u64(0x5e_c3);
    let mut trials = 0;
    for q in [2u64, 3, 4, 5] {
        let field = gf(q);
        for _ in 0..130 {
            let len6 = rng.random_range(0..2) == 1;
            let path = if len6 {
                let rows = pick_distinct(&mut rng, 5, 3);
                let cols = pick_distinct(&mut rng, 5, 3);
                rankext::Path::canonical(vec![
                    Position::new(rows[0], cols[0]),
                    Position::new(rows[0], cols[1]),
                    Position::new(rows[1], cols[1]),
                    Position::new(rows[1], cols[2]),
                    Position::new(rows[2], cols[2]),
                    Position::new(rows[2], cols[0]),
                ])
            } else {
                let rows = pick_distinct(&mut rng, 5, 2);
                let cols = pick_distinct(&mut rng, 5, 2);
                rankext::Path::canonical(vec![
                    Position::new(rows[0], cols[0]),
                    Position::new(rows[0], cols[1]),
                    Position::new(rows[1], cols[1]),
                    Position::new(rows[1], cols[0]),
                ])
            };
            let k = path.len();
            let coeffs: Vec<u32> = (0..k - 1)
                .map(|_| rng.random_range(1..field.order()))
                .collect();
            let drop = rankext::extend::rank_drop_value(&field, &path, &coeffs).unwrap();
            assert_ne!(drop, 0);

            // Independent oracle: rebuild every candidate matrix and rank
            // it directly.
            let m = path.positions().iter().map(|p| p.row).max().unwrap() as usize;
            let n = path.positions().iter().map(|p| p.col).max().unwrap() as usize;
            for a in field.elements() {
                let mut rows = vec![vec![0u32; n]; m];
                for (pos, &c) in path
                    .positions()
                    .iter()
                    .zip(coeffs.iter().chain(std::iter::once(&a)))
                {
                    rows[pos.row as usize - 1][pos.col as usize - 1] = c;
                }
                let rank = Matrix::from_rows(field.clone(), rows).unwrap().rank();
                if a == drop {
                    assert_eq!(rank, k / 2 - 1);
                } else {
                    assert_eq!(rank, k / 2, "a = {a} should not drop the rank");
                }
            }
            trials += 1;
        }
    }
    assert!(trials >= 500);
    report(3, "rank-drop uniqueness", &format!("{trials} trials"));
}

fn pick_distinct(rng: &mut StdRng, bound: u32, count: usize) -> Vec<u32> {
    let mut values: Vec<u32> = (1..=bound).collect();
    for i in 0..count {
        let j = rng.random_range(i..values.len());
        values.swap(i, j);
    }
    values.truncate(count);
    values
}

/// Criterion 4: 1000 random supports with at least m+n entries always
/// contain a closed simple path, independently validated.
#[test]
fn criterion_4_path_existence() {
    let mut rng = StdRng::seed_from_u64(0x5e_c4);
    for trial in 0..1000 {
        let m = rng.random_range(2..=6);
        let n = rng.random_range(2..=6);
        let size = rng.random_range(m + n..=m * n);
        let support = random_support(&mut rng, m, n, size);
        let matrix = support_matrix(&support);
        let path = support
            .find_closed_simple_path()
            .unwrap_or_else(|| panic!("trial {trial}: no path in support of size {size}"));
        let verdict = validate_path(&matrix, path.positions());
        assert_eq!(
            verdict.class,
            PathClass::ClosedSimple,
            "trial {trial}: found path classifies as {}",
            verdict.class.as_str()
        );
    }
    report(
        4,
        "closed-path existence",
        "1000 supports with |supp| >= m+n",
    );
}

/// Criterion 5: arrow matrices are irreducible with exactly m+n-1
/// entries, and every irreducible support produced by reduction stays
/// within the m+n-1 bound.
#[test]
fn criterion_5_irreducible_bound() {
    for m in 2..=6 {
        for n in 2..=6 {
            let mut rows = vec![vec![0u32; n]; m];
            for j in 0..n {
                rows[0][j] = 1;
            }
            for r in rows.iter_mut() {
                r[0] = 1;
            }
            let arrow = Matrix::from_rows(gf(2), rows).unwrap();
            assert!(rankext::paths::is_irreducible(&arrow));
            assert_eq!(rankext::paths::support(&arrow).len(), m + n - 1);
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5e_c5);
    for _ in 0..500 {
        let m = rng.random_range(2..=6);
        let n = rng.random_range(2..=6);
        let size = rng.random_range(0..=m * n);
        let support = random_support(&mut rng, m, n, size);
        let chain = support.reduction_chain();
        let tail = chain.final_support();
        assert!(tail.is_irreducible());
        assert!(
            tail.len() < m + n,
            "irreducible tail has {} entries in a {m}x{n} grid",
            tail.len()
        );
        chain.validate().unwrap();
    }
    report(
        5,
        "irreducibility bound",
        "arrows 2..=6 and 500 reduction tails within m+n-1",
    );
}

/// Deterministic corpus shared by criteria 6 and 7: all 512 supports on
/// a 3x3 grid plus 200 seeded random 3x4 and 4x4 supports.
fn chain_corpus() -> Vec<Support> {
    let mut corpus = Vec::new();
    for mask in 0u32..512 {
        let positions = (0..9)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| Position::new(b / 3 + 1, b % 3 + 1));
        corpus.push(Support::from_positions(3, 3, positions).unwrap());
    }
    let mut rng = StdRng::seed_from_u64(0x5e_c6);
    for i in 0..200 {
        let (m, n) = if i % 2 == 0 { (3, 4) } else { (4, 4) };
        let size = rng.random_range(0..=12.min(m * n));
        corpus.push(random_support(&mut rng, m, n, size));
    }
    corpus
}

/// Criterion 6: exhaustive chain enumeration over the corpus yields a
/// single distinct chain length per support, within 5 minutes.
#[test]
fn criterion_6_chain_length_invariance() {
    let start = Instant::now();
    let corpus = chain_corpus();
    let count = corpus.len();
    for support in corpus {
        let census = support
            .enumerate_all_chains(rankext::paths::DEFAULT_CHAIN_COLLECT_CAP)
            .unwrap();
        let lengths = census.distinct_lengths();
        assert_eq!(
            lengths.len(),
            1,
            "support {:?} has chain lengths {lengths:?}",
            support.to_vec()
        );
        // The greedy chain must realize the common length.
        assert_eq!(support.reduction_chain().len(), lengths[0]);
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "chain census took {elapsed:?}, budget is 5 min"
    );
    report(
        6,
        "chain length invariance",
        &format!("{count} supports in {elapsed:.2?}"),
    );
}

/// Criterion 7: for every enumerated chain with at most 5 deletions,
/// each of the (l-1)! orderings of its deletion sequence replays as a
/// valid chain. Checking every subset prefix covers all orderings.
#[test]
fn criterion_7_deletion_permutations() {
    let mut chains_checked: u64 = 0;
    let mut supports_checked = 0;
    for support in chain_corpus() {
        let census = support
            .enumerate_all_chains(rankext::paths::DEFAULT_CHAIN_COLLECT_CAP)
            .unwrap();
        let Some(chains) = census.chains else {
            continue;
        };
        if chains.is_empty() || chains[0].is_empty() || chains[0].len() > 5 {
            continue;
        }
        let deletion_sets: BTreeSet<Vec<Position>> = chains
            .iter()
            .map(|c| {
                let mut sorted = c.clone();
                sorted.sort();
                sorted
            })
            .collect();
        for set in &deletion_sets {
            let d = set.len();
            // Every prefix subset reached by any ordering must allow
            // every remaining deletion; that validates all d! orderings.
            for mask in 0u32..(1 << d) {
                let remaining = set
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, p)| *p);
                let removed: Vec<Position> = set
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, p)| *p)
                    .collect();
                let current = Support::from_positions(
                    support.nrows(),
                    support.ncols(),
                    support
                        .positions()
                        .copied()
                        .filter(|p| !removed.contains(p)),
                )
                .unwrap();
                for p in remaining {
                    assert!(
                        current.closed_simple_path_through(&p).is_some(),
                        "deletion {p} not replayable after removing {removed:?}"
                    );
                }
            }
        }
        chains_checked += chains.len() as u64;
        supports_checked += 1;
    }
    assert!(supports_checked > 100);
    report(
        7,
        "deletion-order permutations",
        &format!("{chains_checked} chains over {supports_checked} supports"),
    );
}

/// Criterion 8: over GF(2), whenever a random rank-one-generated code
/// map has a Property-1 witness, the rank-one extension succeeds and
/// re-verifies.
#[test]
fn criterion_8_rank_one_extension() {
    let mut rng = StdRng::seed_from_u64(0x5e_c8);
    let field = gf(2);
    let limits = SearchLimits::default();
    let mut successes = 0;
    let mut attempts = 0;
    while successes < 50 && attempts < 500 {
        attempts += 1;
        let m = rng.random_range(2..=3);
        let n = rng.random_range(2..=3);
        let dim = rng.random_range(1..=4.min(m * n - 1));

        // Independent rank-one generators.
        let mut generators: Vec<Matrix> = Vec::new();
        let mut tries = 0;
        while generators.len() < dim && tries < 100 {
            tries += 1;
            let candidate = random_rank_one(&mut rng, &field, m, n);
            let mut probe = generators.clone();
            probe.push(candidate.clone());
            let span = RankCode::new(field.clone(), m, n, probe).unwrap();
            if span.dim() == generators.len() + 1 {
                generators.push(candidate);
            }
        }
        if generators.len() < dim {
            continue;
        }

        // C -> A C B composed with a permutation of the generators.
        let a = random_invertible(&mut rng, &field, m);
        let b = random_invertible(&mut rng, &field, n);
        let mut perm: Vec<usize> = (0..dim).collect();
        if attempts % 2 == 0 {
            for i in 0..dim {
                let j = rng.random_range(i..dim);
                perm.swap(i, j);
            }
        }
        let images: Vec<Matrix> = perm
            .iter()
            .map(|&i| a.matmul(&generators[i]).unwrap().matmul(&b).unwrap())
            .collect();
        let code = RankCode::new(field.clone(), m, n, generators).unwrap();
        assert!(code.rank_one_basis().unwrap().is_some());
        let map = CodeMap::new(code, images).unwrap();

        let Some(witness) = map.property_p_witness(&limits).unwrap() else {
            continue;
        };
        let extension = extend_rank_one_f2(&map, &witness)
            .expect("Property 1 witness must yield an extension over GF(2)");
        assert!(extension.verify_map(&map).unwrap());
        successes += 1;
    }
    assert!(
        successes >= 50,
        "only {successes} witnessed cases in {attempts} attempts"
    );
    report(
        8,
        "rank-one extension over GF(2)",
        &format!("{successes} witnessed cases, all extended"),
    );
}

/// Criterion 9: the path-calculus irreducibility test agrees with the
/// independent bipartite-forest oracle on all 512 3x3 supports and on
/// 1000 random larger ones.
#[test]
fn criterion_9_forest_cross_check() {
    for mask in 0u32..512 {
        let positions = (0..9)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| Position::new(b / 3 + 1, b % 3 + 1));
        let support = Support::from_positions(3, 3, positions).unwrap();
        assert_eq!(
            support.is_irreducible(),
            is_forest(&support),
            "disagreement on 3x3 mask {mask}"
        );
    }
    let mut rng = StdRng::seed_from_u64(0x5e_c9);
    for trial in 0..1000 {
        let m = rng.random_range(2..=6);
        let n = rng.random_range(2..=6);
        let size = rng.random_range(0..=m * n);
        let support = random_support(&mut rng, m, n, size);
        assert_eq!(
            support.is_irreducible(),
            is_forest(&support),
            "disagreement on trial {trial}"
        );
    }
    report(
        9,
        "bipartite-forest cross-check",
        "512 exhaustive + 1000 random supports agree",
    );
}
