//! Shared oracles and generators for the integration suites.
//!
//! Everything here recomputes results by a route independent of the
//! library's production code paths: ranks via rational Gauss-Jordan
//! elimination instead of fraction-free integer elimination, extremal
//! values via plain subset enumeration instead of branch and bound, and
//! augmentations by revalidating every candidate graph from scratch
//! instead of incremental checks.

// Oracles favor plain indexed loops and flat argument lists over
// iterator idiom; obviousness is what makes them trustworthy.
#![allow(dead_code, clippy::needless_range_loop, clippy::too_many_arguments)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use zarank::conditions::{passes_all_conditions, CheckConfig};
use zarank::form::SosDecomposition;
use zarank::graph::{AugmentedGraph, Cell, Edge2, Edge3};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank over the rationals by Gauss-Jordan elimination with exact
/// arithmetic.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let ncols = mat.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot) = (row..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(row, pivot);
        let inv = mat[row][col].clone();
        for i in 0..mat.len() {
            if i != row && !mat[i][col].is_zero() {
                let factor = &mat[i][col] / &inv;
                for c in col..ncols {
                    let delta = &mat[row][c] * &factor;
                    mat[i][c] -= delta;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    rank
}

/// Rank of a decomposition's flattened coefficient vectors, computed
/// rationally.
pub fn rational_decomposition_rank(d: &SosDecomposition) -> usize {
    let rows: Vec<Vec<BigInt>> = d.forms().iter().map(|f| f.flatten()).collect();
    rational_rank(&rows)
}

fn c4_free_masks(row_masks: &[u32]) -> bool {
    for (i, &a) in row_masks.iter().enumerate() {
        for &b in &row_masks[i + 1..] {
            if (a & b).count_ones() > 1 {
                return false;
            }
        }
    }
    true
}

/// Maximum 4-cycle-free 1-edge count by enumerating every subset of the
/// grid. Usable only for small grids.
pub fn brute_zarankiewicz(m: u8, n: u8) -> usize {
    let cells = m as usize * n as usize;
    assert!(cells <= 20, "brute force subset enumeration is for tiny grids");
    let mut best = 0;
    for mask in 0u32..(1 << cells) {
        let mut rows = vec![0u32; m as usize];
        for idx in 0..cells {
            if mask & (1 << idx) != 0 {
                rows[idx / n as usize] |= 1 << (idx % n as usize);
            }
        }
        if c4_free_masks(&rows) {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Canonical codes of all maximum 4-cycle-free 1-edge sets, by subset
/// enumeration.
pub fn brute_extremal_class_codes(m: u8, n: u8) -> BTreeSet<Vec<u8>> {
    let cells = m as usize * n as usize;
    assert!(cells <= 20, "brute force subset enumeration is for tiny grids");
    let best = brute_zarankiewicz(m, n);
    let mut codes = BTreeSet::new();
    for mask in 0u32..(1 << cells) {
        if mask.count_ones() as usize != best {
            continue;
        }
        let mut rows = vec![0u32; m as usize];
        let mut e1 = Vec::new();
        for idx in 0..cells {
            if mask & (1 << idx) != 0 {
                rows[idx / n as usize] |= 1 << (idx % n as usize);
                e1.push(Cell::new((idx / n as usize) as u8, (idx % n as usize) as u8));
            }
        }
        if c4_free_masks(&rows) {
            let g = AugmentedGraph::new(m, n, e1, [], []).unwrap();
            codes.insert(g.canonical_code().unwrap());
        }
    }
    codes
}

/// Maximum number of 2-edges (and 3-edges when allowed) addable to a
/// fixed 1-edge set, found by trying every candidate subset and
/// revalidating each candidate graph from scratch.
pub fn slow_max_augmentation(
    m: u8,
    n: u8,
    e1: &BTreeSet<Cell>,
    allow_e3: bool,
    check: &CheckConfig,
    allow_degenerate: bool,
) -> usize {
    let free: Vec<Cell> = (0..m)
        .flat_map(|r| (0..n).map(move |c| Cell::new(r, c)))
        .filter(|c| !e1.contains(c))
        .collect();
    let mut cand2 = Vec::new();
    for (i, &a) in free.iter().enumerate() {
        for &b in &free[i + 1..] {
            let degenerate = a.row() == b.row() || a.col() == b.col();
            if degenerate && !allow_degenerate {
                continue;
            }
            cand2.push(Edge2::new(a, b).unwrap());
        }
    }
    let mut cand3 = Vec::new();
    if allow_e3 {
        for (i, &a) in free.iter().enumerate() {
            for (j, &b) in free.iter().enumerate().skip(i + 1) {
                for &c in &free[j + 1..] {
                    if let Ok(edge) = Edge3::new(a, b, c) {
                        cand3.push(edge);
                    }
                }
            }
        }
    }

    fn recurse(
        m: u8,
        n: u8,
        e1: &BTreeSet<Cell>,
        cand2: &[Edge2],
        cand3: &[Edge3],
        chosen2: &mut Vec<Edge2>,
        chosen3: &mut Vec<Edge3>,
        start: usize,
        check: &CheckConfig,
    ) -> usize {
        let mut best = chosen2.len() + chosen3.len();
        for idx in start..cand2.len() + cand3.len() {
            if idx < cand2.len() {
                chosen2.push(cand2[idx]);
            } else {
                chosen3.push(cand3[idx - cand2.len()]);
            }
            let g = AugmentedGraph::new(
                m,
                n,
                e1.iter().copied(),
                chosen2.iter().copied(),
                chosen3.iter().copied(),
            )
            .unwrap();
            if passes_all_conditions(&g, check) {
                best = best.max(recurse(
                    m, n, e1, cand2, cand3, chosen2, chosen3, idx + 1, check,
                ));
            }
            if idx < cand2.len() {
                chosen2.pop();
            } else {
                chosen3.pop();
            }
        }
        best
    }

    recurse(
        m,
        n,
        e1,
        &cand2,
        &cand3,
        &mut Vec::new(),
        &mut Vec::new(),
        0,
        check,
    )
}

/// Whether two graphs are related by row and column relabeling.
pub fn isomorphic(a: &AugmentedGraph, b: &AugmentedGraph) -> bool {
    a.m() == b.m()
        && a.n() == b.n()
        && a.canonical_code().unwrap() == b.canonical_code().unwrap()
}

/// A random simple (but not necessarily condition-passing) augmented
/// graph with at least one edge, for algebraic property checks. Cells
/// are drawn without replacement so simplicity holds by construction;
/// 2-edges may be degenerate.
pub fn random_simple_graph(rng: &mut ChaCha8Rng, max_m: u8, max_n: u8) -> AugmentedGraph {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    let mut pool: Vec<Cell> = (0..m)
        .flat_map(|r| (0..n).map(move |c| Cell::new(r, c)))
        .collect();
    pool.shuffle(rng);

    let mut e3 = Vec::new();
    for _ in 0..rng.gen_range(0..=2u8) {
        let found = (0..pool.len()).find_map(|i| {
            ((i + 1)..pool.len()).find_map(|j| {
                ((j + 1)..pool.len())
                    .find(|&k| Edge3::new(pool[i], pool[j], pool[k]).is_ok())
                    .map(|k| (i, j, k))
            })
        });
        if let Some((i, j, k)) = found {
            let edge = Edge3::new(pool[i], pool[j], pool[k]).unwrap();
            // Remove back to front so the indices stay valid.
            pool.remove(k);
            pool.remove(j);
            pool.remove(i);
            e3.push(edge);
        }
    }

    let mut e2 = Vec::new();
    for _ in 0..rng.gen_range(0..=3u8) {
        if pool.len() < 2 {
            break;
        }
        let b = pool.pop().unwrap();
        let a = pool.pop().unwrap();
        e2.push(Edge2::new(a, b).unwrap());
    }

    let take = rng.gen_range(0..=pool.len());
    let mut e1: Vec<Cell> = pool.drain(..take).collect();
    if e1.is_empty() && e2.is_empty() && e3.is_empty() {
        e1.push(Cell::new(0, 0));
    }
    AugmentedGraph::new(m, n, e1, e2, e3).unwrap()
}
