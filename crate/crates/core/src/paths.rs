//! Matrix support paths: closed simple paths, path-reductions,
//! irreducibility, and reduction chains.
//!
//! Everything here depends only on the zero/nonzero pattern of a matrix,
//! so operations accept a [`Matrix`] but immediately project to its
//! [`Support`]. Positions are 1-based, matching the usual (i, j) matrix
//! indexing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matfq::Matrix;

/// Caps keeping exhaustive path searches at desk scale.
pub const MAX_ENUM_SUPPORT: usize = 24;
pub const MAX_CHAIN_SUPPORT: usize = 16;

/// Default cap on how many chains [`enumerate_all_chains`] materializes.
pub const DEFAULT_CHAIN_COLLECT_CAP: u128 = 200_000;

/// A 1-based (row, column) position in an m x n matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub row: u32,
    pub col: u32,
}

impl Position {
    pub fn new(row: u32, col: u32) -> Position {
        Position { row, col }
    }

    /// Whether two positions lie on a common line (row or column).
    pub fn shares_line(&self, other: &Position) -> bool {
        self.row == other.row || self.col == other.col
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pair = <[u32; 2]>::deserialize(deserializer)?;
        if pair[0] == 0 || pair[1] == 0 {
            return Err(D::Error::custom("positions are 1-based"));
        }
        Ok(Position::new(pair[0], pair[1]))
    }
}

/// The zero-one support pattern of an m x n matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    m: usize,
    n: usize,
    positions: BTreeSet<Position>,
}

/// Positions of the nonzero entries of a matrix.
pub fn support(matrix: &Matrix) -> Support {
    Support::from_matrix(matrix)
}

impl Support {
    pub fn from_matrix(matrix: &Matrix) -> Support {
        let mut positions = BTreeSet::new();
        for i in 0..matrix.nrows() {
            for j in 0..matrix.ncols() {
                if matrix.get(i, j) != 0 {
                    positions.insert(Position::new(i as u32 + 1, j as u32 + 1));
                }
            }
        }
        Support {
            m: matrix.nrows(),
            n: matrix.ncols(),
            positions,
        }
    }

    pub fn from_positions(
        m: usize,
        n: usize,
        positions: impl IntoIterator<Item = Position>,
    ) -> Result<Support> {
        let mut set = BTreeSet::new();
        for p in positions {
            if p.row == 0 || p.row as usize > m || p.col == 0 || p.col as usize > n {
                return Err(Error::InvalidInput(format!(
                    "position {p} outside a {m}x{n} matrix"
                )));
            }
            set.insert(p);
        }
        Ok(Support {
            m,
            n,
            positions: set,
        })
    }

    pub fn nrows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: &Position) -> bool {
        self.positions.contains(p)
    }

    pub fn positions(&self) -> impl Iterator<Item = &Position> {
        self.positions.iter()
    }

    pub fn to_vec(&self) -> Vec<Position> {
        self.positions.iter().copied().collect()
    }

    /// The 0/1 matrix with this support.
    pub fn to_matrix(&self, field: &Field) -> Matrix {
        let mut entries = vec![0u32; self.m * self.n];
        for p in &self.positions {
            entries[(p.row as usize - 1) * self.n + (p.col as usize - 1)] = 1;
        }
        Matrix::new(field.clone(), self.m, self.n, entries).expect("support is in range")
    }

    fn without(&self, p: &Position) -> Support {
        let mut positions = self.positions.clone();
        positions.remove(p);
        Support {
            m: self.m,
            n: self.n,
            positions,
        }
    }

    /// Iteratively delete every position lying on a line with at most one
    /// support position. What survives is exactly the union of all closed
    /// simple paths.
    fn prune(&self) -> BTreeSet<Position> {
        let mut live = self.positions.clone();
        loop {
            let mut row_count: HashMap<u32, usize> = HashMap::new();
            let mut col_count: HashMap<u32, usize> = HashMap::new();
            for p in &live {
                *row_count.entry(p.row).or_default() += 1;
                *col_count.entry(p.col).or_default() += 1;
            }
            let doomed: Vec<Position> = live
                .iter()
                .filter(|p| row_count[&p.row] <= 1 || col_count[&p.col] <= 1)
                .copied()
                .collect();
            if doomed.is_empty() {
                return live;
            }
            for p in doomed {
                live.remove(&p);
            }
        }
    }

    /// Prune-then-walk construction of a closed simple path; `None` iff
    /// the support is irreducible.
    pub fn find_closed_simple_path(&self) -> Option<Path> {
        let live = self.prune();
        let start = *live.iter().next()?;
        let mut seq: Vec<Position> = vec![start];
        let mut along_row = true;
        loop {
            let cur = *seq.last().unwrap();
            let candidates: Vec<Position> = live
                .iter()
                .filter(|p| {
                    **p != cur
                        && if along_row {
                            p.row == cur.row
                        } else {
                            p.col == cur.col
                        }
                })
                .copied()
                .collect();
            // Close as soon as some candidate's other line holds an
            // already-visited position; tie-break on the smallest candidate
            // and the latest such visit.
            let mut closure: Option<(usize, Position)> = None;
            for &q in &candidates {
                let hit = seq.iter().enumerate().rev().find(|(_, p)| {
                    if along_row {
                        p.col == q.col
                    } else {
                        p.row == q.row
                    }
                });
                if let Some((idx, _)) = hit {
                    closure = Some((idx, q));
                    break;
                }
            }
            if let Some((s, q)) = closure {
                let mut cycle = seq[s..].to_vec();
                cycle.push(q);
                let path = Path::canonical(cycle);
                debug_assert_eq!(
                    classify_sequence(self, path.positions()).class,
                    PathClass::ClosedSimple
                );
                return Some(path);
            }
            let next = *candidates
                .first()
                .expect("pruned support has two entries per occupied line");
            seq.push(next);
            along_row = !along_row;
        }
    }

    /// True iff the support contains no closed simple path. Irreducible
    /// supports have at most m+n-1 positions.
    pub fn is_irreducible(&self) -> bool {
        let irreducible = self.find_closed_simple_path().is_none();
        debug_assert!(!irreducible || self.len() < self.m + self.n);
        irreducible
    }

    /// Some closed simple path through `pos`, if any. Depth-first search
    /// for a simple row/column-alternating detour from the row of `pos`
    /// back to its column.
    pub fn closed_simple_path_through(&self, pos: &Position) -> Option<Path> {
        if !self.positions.contains(pos) {
            return None;
        }
        // Walk vertices of the bipartite line graph: rows and columns.
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        enum Line {
            Row(u32),
            Col(u32),
        }
        let incident = |line: Line| -> Vec<Position> {
            self.positions
                .iter()
                .filter(|p| match line {
                    Line::Row(r) => p.row == r,
                    Line::Col(c) => p.col == c,
                })
                .copied()
                .collect()
        };
        let start = Line::Row(pos.row);
        let target = Line::Col(pos.col);

        fn dfs(
            cur: Line,
            target: Line,
            banned: &Position,
            incident: &dyn Fn(Line) -> Vec<Position>,
            visited: &mut Vec<Line>,
            edges: &mut Vec<Position>,
        ) -> bool {
            for e in incident(cur) {
                if e == *banned || edges.contains(&e) {
                    continue;
                }
                let next = match cur {
                    Line::Row(_) => Line::Col(e.col),
                    Line::Col(_) => Line::Row(e.row),
                };
                if next == target {
                    edges.push(e);
                    return true;
                }
                if visited.contains(&next) {
                    continue;
                }
                visited.push(next);
                edges.push(e);
                if dfs(next, target, banned, incident, visited, edges) {
                    return true;
                }
                edges.pop();
                visited.pop();
            }
            false
        }

        let mut visited = vec![start];
        let mut edges = Vec::new();
        if dfs(start, target, pos, &incident, &mut visited, &mut edges) {
            let mut cycle = vec![*pos];
            cycle.extend(edges);
            let path = Path::canonical(cycle);
            debug_assert_eq!(
                classify_sequence(self, path.positions()).class,
                PathClass::ClosedSimple
            );
            Some(path)
        } else {
            None
        }
    }

    /// Every closed-simple-path support exactly once, in canonical form.
    pub fn enumerate_closed_simple_paths(&self) -> Result<Vec<Path>> {
        if self.len() > MAX_ENUM_SUPPORT {
            return Err(Error::SearchSpaceTooLarge(format!(
                "support has {} positions, enumeration cap is {MAX_ENUM_SUPPORT}",
                self.len()
            )));
        }
        let mut found: BTreeSet<Vec<Position>> = BTreeSet::new();
        // Anchor each cycle at its smallest position: search detours that
        // only use strictly larger positions.
        for anchor in &self.positions {
            let larger: Vec<Position> = self
                .positions
                .iter()
                .filter(|p| *p > anchor)
                .copied()
                .collect();
            enumerate_cycles_at(anchor, &larger, &mut found);
        }
        Ok(found.into_iter().map(Path::canonical).collect())
    }

    /// Zero out `pos`; it must lie on a closed simple path.
    pub fn reduce_at(&self, pos: &Position) -> Result<Support> {
        if !self.positions.contains(pos) {
            return Err(Error::NotInSupport(*pos));
        }
        if self.closed_simple_path_through(pos).is_none() {
            return Err(Error::NotOnClosedSimplePath(*pos));
        }
        Ok(self.without(pos))
    }

    /// Positions that lie on some closed simple path, i.e. the legal
    /// reductions.
    pub fn reducible_positions(&self) -> Vec<Position> {
        self.positions
            .iter()
            .filter(|p| self.closed_simple_path_through(p).is_some())
            .copied()
            .collect()
    }

    /// The deterministic greedy chain: delete the smallest reducible
    /// position until irreducible.
    pub fn reduction_chain(&self) -> ReductionChain {
        let mut supports = vec![self.clone()];
        let mut deleted = Vec::new();
        loop {
            let cur = supports.last().unwrap();
            match cur.reducible_positions().first() {
                Some(&p) => {
                    let next = cur.without(&p);
                    deleted.push(p);
                    supports.push(next);
                }
                None => {
                    return ReductionChain { supports, deleted };
                }
            }
        }
    }

    /// Exhaustive enumeration over every legal deletion at every step.
    /// Chain counts are folded over shared intermediate supports; the
    /// chains themselves are materialized only when the total stays under
    /// `collect_cap`.
    pub fn enumerate_all_chains(&self, collect_cap: u128) -> Result<ChainCensus> {
        if self.len() > MAX_CHAIN_SUPPORT {
            return Err(Error::SearchSpaceTooLarge(format!(
                "support has {} positions, chain enumeration cap is {MAX_CHAIN_SUPPORT}",
                self.len()
            )));
        }
        let universe = self.to_vec();
        let index: HashMap<Position, usize> =
            universe.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let full_mask: u32 = (1u32 << universe.len()).wrapping_sub(1);
        if universe.is_empty() {
            return Ok(ChainCensus {
                length_counts: BTreeMap::from([(1, 1)]),
                chains: Some(vec![vec![]]),
            });
        }

        let restore = |mask: u32| -> Support {
            let positions = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p);
            Support::from_positions(self.m, self.n, positions).expect("subset of valid support")
        };

        let mut reducible_memo: HashMap<u32, Vec<usize>> = HashMap::new();
        let reducible = |mask: u32, memo: &mut HashMap<u32, Vec<usize>>| -> Vec<usize> {
            if let Some(v) = memo.get(&mask) {
                return v.clone();
            }
            let sup = restore(mask);
            let v: Vec<usize> = sup.reducible_positions().iter().map(|p| index[p]).collect();
            memo.insert(mask, v.clone());
            v
        };

        // Bottom-up over masks is wasteful; recurse with memoized counts.
        fn lengths(
            mask: u32,
            reducible: &mut dyn FnMut(u32) -> Vec<usize>,
            memo: &mut HashMap<u32, BTreeMap<usize, u128>>,
        ) -> BTreeMap<usize, u128> {
            if let Some(m) = memo.get(&mask) {
                return m.clone();
            }
            let red = reducible(mask);
            let result = if red.is_empty() {
                BTreeMap::from([(1usize, 1u128)])
            } else {
                let mut out: BTreeMap<usize, u128> = BTreeMap::new();
                for bit in red {
                    let child = lengths(mask & !(1 << bit), reducible, memo);
                    for (len, count) in child {
                        *out.entry(len + 1).or_default() += count;
                    }
                }
                out
            };
            memo.insert(mask, result.clone());
            result
        }

        let mut count_memo = HashMap::new();
        let length_counts = lengths(
            full_mask,
            &mut |mask| reducible(mask, &mut reducible_memo),
            &mut count_memo,
        );

        let total: u128 = length_counts.values().sum();
        let chains = if total <= collect_cap {
            let mut all = Vec::new();
            let mut stack: Vec<Position> = Vec::new();
            collect_chains(
                full_mask,
                &universe,
                &mut |mask| reducible(mask, &mut reducible_memo),
                &mut stack,
                &mut all,
            );
            Some(all)
        } else {
            None
        };

        Ok(ChainCensus {
            length_counts,
            chains,
        })
    }
}

fn collect_chains(
    mask: u32,
    universe: &[Position],
    reducible: &mut dyn FnMut(u32) -> Vec<usize>,
    stack: &mut Vec<Position>,
    out: &mut Vec<Vec<Position>>,
) {
    let red = reducible(mask);
    if red.is_empty() {
        out.push(stack.clone());
        return;
    }
    for bit in red {
        stack.push(universe[bit]);
        collect_chains(mask & !(1 << bit), universe, reducible, stack, out);
        stack.pop();
    }
}

/// DFS for all simple cycles through `anchor` whose other positions are
/// drawn from `larger`; canonical forms are inserted into `found`.
fn enumerate_cycles_at(
    anchor: &Position,
    larger: &[Position],
    found: &mut BTreeSet<Vec<Position>>,
) {
    fn extend(
        anchor: &Position,
        larger: &[Position],
        seq: &mut Vec<Position>,
        found: &mut BTreeSet<Vec<Position>>,
    ) {
        let cur = *seq.last().unwrap();
        let along_row = seq.len() % 2 == 1; // odd length: leave via the row
        for &q in larger {
            if seq.contains(&q) {
                continue;
            }
            let shares = if along_row {
                q.row == cur.row
            } else {
                q.col == cur.col
            };
            if !shares {
                continue;
            }
            // Simplicity: the line we travel along must hold only `cur`
            // so far, and q's free line must be unoccupied (continue) or
            // hold exactly the anchor (closure).
            let travel_count = seq
                .iter()
                .filter(|p| {
                    if along_row {
                        p.row == q.row
                    } else {
                        p.col == q.col
                    }
                })
                .count();
            if travel_count != 1 {
                continue;
            }
            let free_line: Vec<Position> = seq
                .iter()
                .filter(|p| {
                    if along_row {
                        p.col == q.col
                    } else {
                        p.row == q.row
                    }
                })
                .copied()
                .collect();
            seq.push(q);
            match free_line.as_slice() {
                [] => extend(anchor, larger, seq, found),
                [only] if only == anchor => {
                    debug_assert!(seq.len() >= 4);
                    found.insert(Path::canonical(seq.clone()).positions().to_vec());
                }
                _ => {}
            }
            seq.pop();
        }
    }
    // By symmetry every cycle can be traversed leaving the anchor along
    // its row first, so one starting orientation suffices.
    let mut seq = vec![*anchor];
    extend(anchor, larger, &mut seq, found);
}

/// An ordered sequence of support positions forming a path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    positions: Vec<Position>,
}

impl Path {
    /// A path with the positions in the given order. No validation;
    /// consumers classify against a support.
    pub fn new(seq: Vec<Position>) -> Path {
        Path { positions: seq }
    }

    /// Canonical representative: the lexicographically smallest among all
    /// rotations of the sequence and of its reversal.
    pub fn canonical(seq: Vec<Position>) -> Path {
        let k = seq.len();
        if k == 0 {
            return Path { positions: seq };
        }
        let mut best: Option<Vec<Position>> = None;
        let mut consider = |candidate: Vec<Position>| {
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        };
        for start in 0..k {
            let fwd: Vec<Position> = (0..k).map(|i| seq[(start + i) % k]).collect();
            let rev: Vec<Position> = (0..k).map(|i| seq[(start + k - i) % k]).collect();
            consider(fwd);
            consider(rev);
        }
        Path {
            positions: best.unwrap(),
        }
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn support_set(&self) -> BTreeSet<Position> {
        self.positions.iter().copied().collect()
    }
}

/// Outcome of classifying a position sequence against a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathClass {
    Invalid,
    /// A path that is neither closed nor simple.
    Open,
    /// An open simple path.
    SimpleOpen,
    /// Closed but not simple.
    Closed,
    ClosedSimple,
}

impl PathClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PathClass::Invalid => "invalid",
            PathClass::Open => "open-path",
            PathClass::SimpleOpen => "simple-open",
            PathClass::Closed => "closed",
            PathClass::ClosedSimple => "closed-simple",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathVerdict {
    pub class: PathClass,
    /// Present exactly when the sequence is not a path.
    pub reason: Option<String>,
}

impl PathVerdict {
    fn invalid(reason: impl Into<String>) -> PathVerdict {
        PathVerdict {
            class: PathClass::Invalid,
            reason: Some(reason.into()),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.class, PathClass::Closed | PathClass::ClosedSimple)
    }

    pub fn is_simple(&self) -> bool {
        matches!(self.class, PathClass::SimpleOpen | PathClass::ClosedSimple)
    }
}

/// Classify a position sequence on the support of `matrix`.
pub fn validate_path(matrix: &Matrix, seq: &[Position]) -> PathVerdict {
    classify_sequence(&support(matrix), seq)
}

fn classify_sequence(sup: &Support, seq: &[Position]) -> PathVerdict {
    if seq.is_empty() {
        return PathVerdict::invalid("empty sequence");
    }
    for p in seq {
        if p.row as usize > sup.nrows() || p.col as usize > sup.ncols() {
            return PathVerdict::invalid(format!(
                "position {p} outside a {}x{} matrix",
                sup.nrows(),
                sup.ncols()
            ));
        }
        if !sup.contains(p) {
            return PathVerdict::invalid(format!("entry at {p} is zero"));
        }
    }
    let distinct: BTreeSet<&Position> = seq.iter().collect();
    if distinct.len() != seq.len() {
        return PathVerdict::invalid("repeated position");
    }
    for w in seq.windows(2) {
        if !w[0].shares_line(&w[1]) {
            return PathVerdict::invalid(format!(
                "consecutive positions {} and {} share no component",
                w[0], w[1]
            ));
        }
    }
    let closed = seq.len() >= 4 && seq.first().unwrap().shares_line(seq.last().unwrap());
    let mut row_count: HashMap<u32, usize> = HashMap::new();
    let mut col_count: HashMap<u32, usize> = HashMap::new();
    for p in seq {
        *row_count.entry(p.row).or_default() += 1;
        *col_count.entry(p.col).or_default() += 1;
    }
    let simple = row_count.values().all(|&c| c <= 2) && col_count.values().all(|&c| c <= 2);
    let class = match (closed, simple) {
        (true, true) => PathClass::ClosedSimple,
        (true, false) => PathClass::Closed,
        (false, true) => PathClass::SimpleOpen,
        (false, false) => PathClass::Open,
    };
    PathVerdict {
        class,
        reason: None,
    }
}

/// Some closed simple path of `matrix`, or `None` iff it is irreducible.
pub fn find_closed_simple_path(matrix: &Matrix) -> Option<Path> {
    support(matrix).find_closed_simple_path()
}

/// All closed-simple-path supports of `matrix`, deduplicated.
pub fn enumerate_closed_simple_paths(matrix: &Matrix) -> Result<Vec<Path>> {
    support(matrix).enumerate_closed_simple_paths()
}

pub fn is_irreducible(matrix: &Matrix) -> bool {
    support(matrix).is_irreducible()
}

pub fn reduce_at(matrix: &Matrix, pos: &Position) -> Result<Support> {
    support(matrix).reduce_at(pos)
}

pub fn reduction_chain(matrix: &Matrix) -> ReductionChain {
    support(matrix).reduction_chain()
}

pub fn enumerate_all_chains(matrix: &Matrix) -> Result<ChainCensus> {
    support(matrix).enumerate_all_chains(DEFAULT_CHAIN_COLLECT_CAP)
}

/// A path-reduction chain: successive supports plus the deleted positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionChain {
    supports: Vec<Support>,
    deleted: Vec<Position>,
}

impl ReductionChain {
    /// Validate a user-supplied chain against the chain invariants.
    pub fn from_parts(supports: Vec<Support>, deleted: Vec<Position>) -> Result<ReductionChain> {
        if supports.is_empty() {
            return Err(Error::InvalidInput(
                "a chain needs at least one support".into(),
            ));
        }
        if deleted.len() + 1 != supports.len() {
            return Err(Error::InvalidInput(format!(
                "chain of {} supports must delete exactly {} positions, got {}",
                supports.len(),
                supports.len() - 1,
                deleted.len()
            )));
        }
        let chain = ReductionChain { supports, deleted };
        chain.validate()?;
        Ok(chain)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, pos) in self.deleted.iter().enumerate() {
            let cur = &self.supports[i];
            let next = cur.reduce_at(pos)?;
            if next != self.supports[i + 1] {
                return Err(Error::InvalidInput(format!(
                    "support {} does not equal the previous support minus {pos}",
                    i + 1
                )));
            }
        }
        let last = self.supports.last().unwrap();
        if !last.is_irreducible() {
            return Err(Error::InvalidInput(
                "final support of the chain is not irreducible".into(),
            ));
        }
        Ok(())
    }

    /// Number of supports in the chain (deletions + 1).
    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    pub fn deleted(&self) -> &[Position] {
        &self.deleted
    }

    pub fn final_support(&self) -> &Support {
        self.supports.last().unwrap()
    }
}

/// Result of exhaustive chain enumeration.
#[derive(Debug, Clone)]
pub struct ChainCensus {
    /// Multiset of chain lengths: length -> number of chains.
    pub length_counts: BTreeMap<usize, u128>,
    /// The deletion sequences themselves, when few enough to materialize.
    pub chains: Option<Vec<Vec<Position>>>,
}

impl ChainCensus {
    pub fn total_chains(&self) -> u128 {
        self.length_counts.values().sum()
    }

    pub fn distinct_lengths(&self) -> Vec<usize> {
        self.length_counts.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    fn pos(i: u32, j: u32) -> Position {
        Position::new(i, j)
    }

    /// The 3x5 demonstration matrix with six nonzero entries.
    fn demo_3x5() -> Matrix {
        Matrix::from_rows(
            gf2(),
            vec![
                vec![1, 0, 0, 1, 0],
                vec![0, 1, 0, 1, 0],
                vec![1, 1, 0, 0, 0],
            ],
        )
        .unwrap()
    }

    /// First row and first column all ones, zero elsewhere.
    fn arrow(m: usize, n: usize) -> Matrix {
        let mut rows = vec![vec![0u32; n]; m];
        rows[0] = vec![1; n];
        for r in rows.iter_mut() {
            r[0] = 1;
        }
        Matrix::from_rows(gf2(), rows).unwrap()
    }

    fn all_ones(m: usize, n: usize) -> Matrix {
        Matrix::from_rows(gf2(), vec![vec![1; n]; m]).unwrap()
    }

    #[test]
    fn support_examples() {
        assert!(support(&Matrix::zero(gf2(), 2, 3)).is_empty());
        let e12 = Matrix::elementary(gf2(), 2, 3, 0, 1);
        assert_eq!(support(&e12).to_vec(), vec![pos(1, 2)]);
        let demo = support(&demo_3x5());
        assert_eq!(
            demo.to_vec(),
            vec![
                pos(1, 1),
                pos(1, 4),
                pos(2, 2),
                pos(2, 4),
                pos(3, 1),
                pos(3, 2)
            ]
        );
    }

    #[test]
    fn classify_demo_path() {
        let demo = demo_3x5();
        let seq = [
            pos(1, 1),
            pos(1, 4),
            pos(2, 4),
            pos(2, 2),
            pos(3, 2),
            pos(3, 1),
        ];
        assert_eq!(validate_path(&demo, &seq).class, PathClass::ClosedSimple);
    }

    #[test]
    fn classify_three_in_a_row() {
        let m = all_ones(2, 3);
        let verdict = validate_path(&m, &[pos(1, 1), pos(1, 2), pos(1, 3)]);
        assert_eq!(verdict.class, PathClass::Open);
    }

    #[test]
    fn classify_zero_entry_is_invalid() {
        let demo = demo_3x5();
        let verdict = validate_path(&demo, &[pos(1, 1), pos(1, 3)]);
        assert_eq!(verdict.class, PathClass::Invalid);
        assert!(verdict.reason.unwrap().contains("zero"));
    }

    #[test]
    fn classify_no_shared_component_is_invalid() {
        let m = all_ones(2, 2);
        let verdict = validate_path(&m, &[pos(1, 1), pos(2, 2), pos(1, 2), pos(2, 1)]);
        assert_eq!(verdict.class, PathClass::Invalid);
    }

    #[test]
    fn find_path_all_ones_2x2() {
        let p = find_closed_simple_path(&all_ones(2, 2)).unwrap();
        assert_eq!(p.positions(), &[pos(1, 1), pos(1, 2), pos(2, 2), pos(2, 1)]);
    }

    #[test]
    fn find_path_on_demo_matches_displayed_path() {
        let p = find_closed_simple_path(&demo_3x5()).unwrap();
        assert_eq!(
            p.positions(),
            &[
                pos(1, 1),
                pos(1, 4),
                pos(2, 4),
                pos(2, 2),
                pos(3, 2),
                pos(3, 1)
            ]
        );
    }

    #[test]
    fn arrow_matrices_are_irreducible() {
        for m in 2..=6 {
            for n in 2..=6 {
                let a = arrow(m, n);
                assert!(find_closed_simple_path(&a).is_none());
                assert!(is_irreducible(&a));
                assert_eq!(support(&a).len(), m + n - 1);
            }
        }
    }

    #[test]
    fn demo_reductions_are_irreducible() {
        let demo = support(&demo_3x5());
        let m_prime = demo.reduce_at(&pos(1, 1)).unwrap();
        let m_second = demo.reduce_at(&pos(1, 4)).unwrap();
        assert!(m_prime.is_irreducible());
        assert!(m_second.is_irreducible());
    }

    #[test]
    fn reduce_at_rejects_arrow_positions() {
        let a = support(&arrow(3, 3));
        assert!(matches!(
            a.reduce_at(&pos(1, 1)),
            Err(Error::NotOnClosedSimplePath(_))
        ));
        assert!(matches!(
            a.reduce_at(&pos(2, 2)),
            Err(Error::NotInSupport(_))
        ));
    }

    #[test]
    fn enumerate_paths_counts() {
        assert_eq!(
            enumerate_closed_simple_paths(&all_ones(2, 2))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_closed_simple_paths(&arrow(3, 3)).unwrap().len(),
            0
        );
        // One cycle per pair of columns.
        assert_eq!(
            enumerate_closed_simple_paths(&all_ones(2, 3))
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn greedy_chain_on_demo_3x3() {
        let m =
            Matrix::from_rows(gf2(), vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        let chain = reduction_chain(&m);
        assert_eq!(chain.len(), 3);
        chain.validate().unwrap();
        assert!(chain.final_support().is_irreducible());
    }

    #[test]
    fn greedy_chain_lengths() {
        assert_eq!(reduction_chain(&arrow(4, 5)).len(), 1);
        assert_eq!(reduction_chain(&all_ones(2, 2)).len(), 2);
    }

    #[test]
    fn displayed_chains_validate() {
        let sup = |rows: Vec<Vec<u32>>| support(&Matrix::from_rows(gf2(), rows).unwrap());
        let m = sup(vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]);
        let first = ReductionChain::from_parts(
            vec![
                m.clone(),
                sup(vec![vec![0, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]),
                sup(vec![vec![0, 1, 0], vec![1, 1, 1], vec![0, 1, 0]]),
            ],
            vec![pos(1, 1), pos(3, 3)],
        );
        assert!(first.is_ok());
        let second = ReductionChain::from_parts(
            vec![
                m,
                sup(vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]),
                sup(vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]),
            ],
            vec![pos(2, 2), pos(3, 3)],
        );
        assert!(second.is_ok());
    }

    #[test]
    fn all_chains_of_demo_3x3_have_length_3() {
        let m =
            Matrix::from_rows(gf2(), vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        let census = enumerate_all_chains(&m).unwrap();
        assert_eq!(census.distinct_lengths(), vec![3]);
        let chains = census.chains.as_ref().unwrap();
        assert_eq!(chains.len() as u128, census.total_chains());
        assert!(chains.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn all_chains_arrow_single_trivial() {
        let census = enumerate_all_chains(&arrow(3, 3)).unwrap();
        assert_eq!(census.length_counts, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn all_chains_all_ones_3x3_single_length() {
        let census = enumerate_all_chains(&all_ones(3, 3)).unwrap();
        assert_eq!(census.distinct_lengths().len(), 1);
        // 9 entries, irreducible floor at 3+3-1 = 5, so 4 deletions.
        assert_eq!(census.distinct_lengths()[0], 5);
    }

    #[test]
    fn closed_paths_touch_lines_exactly_twice() {
        let m = all_ones(3, 3);
        for path in enumerate_closed_simple_paths(&m).unwrap() {
            let mut rows: BTreeMap<u32, usize> = BTreeMap::new();
            let mut cols: BTreeMap<u32, usize> = BTreeMap::new();
            for p in path.positions() {
                *rows.entry(p.row).or_default() += 1;
                *cols.entry(p.col).or_default() += 1;
            }
            assert!(rows.values().all(|&c| c == 2));
            assert!(cols.values().all(|&c| c == 2));
            // Square submatrix: as many occupied rows as columns.
            assert_eq!(rows.len(), cols.len());
        }
    }

    #[test]
    fn canonical_form_is_rotation_reflection_invariant() {
        let seq = vec![pos(1, 1), pos(1, 2), pos(2, 2), pos(2, 1)];
        let canon = Path::canonical(seq.clone());
        let mut rotated = seq.clone();
        rotated.rotate_left(2);
        assert_eq!(Path::canonical(rotated), canon);
        let mut reversed = seq;
        reversed.reverse();
        assert_eq!(Path::canonical(reversed), canon);
    }

    #[test]
    fn position_serde_round_trip() {
        let p = pos(2, 5);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,5]");
        assert_eq!(serde_json::from_str::<Position>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Position>("[0,1]").is_err());
    }
}
