//! Shared helpers for the integration suites: independent oracles and
//! seeded sampling. Everything here stays independent of the library
//! code paths it is used to check.
#![allow(dead_code)] // each test binary uses its own subset

use rand::rngs::StdRng;
use rand::Rng;

use rankext::paths::{Position, Support};
use rankext::{Field, Matrix};

/// Union-find acyclicity test on the row/column bipartite graph: the
/// support is a forest iff no union ever joins two already-connected
/// lines. Independent of the path-calculus implementation.
pub fn is_forest(support: &Support) -> bool {
    let m = support.nrows();
    let n = support.ncols();
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in support.positions() {
        let row = p.row as usize - 1;
        let col = m + p.col as usize - 1;
        let (a, b) = (find(&mut parent, row), find(&mut parent, col));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// A random support of exactly `size` distinct positions in an m x n
/// grid.
pub fn random_support(rng: &mut StdRng, m: usize, n: usize, size: usize) -> Support {
    let mut cells: Vec<Position> = (1..=m as u32)
        .flat_map(|i| (1..=n as u32).map(move |j| Position::new(i, j)))
        .collect();
    for i in 0..size.min(cells.len()) {
        let j = rng.random_range(i..cells.len());
        cells.swap(i, j);
    }
    cells.truncate(size.min(m * n));
    Support::from_positions(m, n, cells).expect("cells are in range")
}

pub fn gf(q: u64) -> Field {
    match q {
        4 => Field::new(2, 2, None),
        8 => Field::new(2, 3, None),
        9 => Field::new(3, 2, None),
        q => Field::new(q, 1, None),
    }
    .expect("test fields are valid")
}

/// 0/1 matrix over GF(2) with the given support.
pub fn support_matrix(support: &Support) -> Matrix {
    support.to_matrix(&gf(2))
}

/// A uniformly random invertible matrix, by rejection.
pub fn random_invertible(rng: &mut StdRng, field: &Field, n: usize) -> Matrix {
    loop {
        let entries: Vec<u32> = (0..n * n)
            .map(|_| rng.random_range(0..field.order()))
            .collect();
        let candidate = Matrix::new(field.clone(), n, n, entries).expect("entries in range");
        if candidate.is_invertible() {
            return candidate;
        }
    }
}

/// A random rank-one matrix u * v^t with u, v nonzero.
pub fn random_rank_one(rng: &mut StdRng, field: &Field, m: usize, n: usize) -> Matrix {
    let q = field.order();
    loop {
        let u: Vec<u32> = (0..m).map(|_| rng.random_range(0..q)).collect();
        let v: Vec<u32> = (0..n).map(|_| rng.random_range(0..q)).collect();
        if u.iter().all(|&x| x == 0) || v.iter().all(|&x| x == 0) {
            continue;
        }
        let entries: Vec<u32> = u
            .iter()
            .flat_map(|&ui| v.iter().map(move |&vj| field.mul(ui, vj)))
            .collect();
        let candidate = Matrix::new(field.clone(), m, n, entries).expect("entries in range");
        if candidate.rank() == 1 {
            return candidate;
        }
    }
}
