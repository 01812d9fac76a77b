//! Branch-and-bound computation of the four extremal statistics.
//!
//! Four quantities are computed over an m x n grid:
//!
//! * `z`: the maximum size of a 4-cycle-free 1-edge set (the classical
//!   Zarankiewicz-style cell count),
//! * `zl`: the maximum total edge count over graphs whose 1-edge set is
//!   extremal 4-cycle-free and whose only additions are 2-edges,
//! * `z3l`: the same with both 2- and 3-edges allowed,
//! * `z3a`: the maximum total edge count with no restriction on the
//!   1-edge set, explored under a node budget.
//!
//! All searches are exact depth-first enumerations with upper-bound
//! pruning; pruning is strict (a branch is cut only when it cannot tie
//! the incumbent), so every optimal configuration is still visited and
//! the reported witness set is independent of exploration order. The
//! 1-edge layer prunes row permutations by enumerating only
//! non-increasing row masks; augmentation layers validate the cycle-free
//! conditions incrementally, rechecking exactly the edges whose
//! condition neighborhoods intersect the newly occupied cells, and every
//! reported witness is revalidated from scratch as a safety net.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};
use thiserror::Error;

use crate::conditions::{is_c4_free, passes_all_conditions, CheckConfig, OppositeScope};
use crate::graph::{AugmentedGraph, Cell, Edge2, Edge3, CANONICAL_CELL_LIMIT};

/// Largest row or column count accepted by the extremal searches.
pub const SIDE_LIMIT: u8 = 8;

/// Largest cell count accepted by the unrestricted search.
pub const FULL_CELL_LIMIT: usize = 25;

/// Node budget applied to the unrestricted search when none is given.
pub const DEFAULT_FULL_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Z,
    Zl,
    Z3l,
    Z3a,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [Statistic::Z, Statistic::Zl, Statistic::Z3l, Statistic::Z3a];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Z => "z",
            Statistic::Zl => "zl",
            Statistic::Z3l => "z3l",
            Statistic::Z3a => "z3a",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, SearchError> {
        match s {
            "z" => Ok(Statistic::Z),
            "zl" => Ok(Statistic::Zl),
            "z3l" => Ok(Statistic::Z3l),
            "z3a" => Ok(Statistic::Z3a),
            other => Err(SearchError::UnknownStatistic(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("grid {m}x{n} is outside the supported range; rows and columns must be between 1 and {limit}")]
    SideGuard { m: u8, n: u8, limit: u8 },
    #[error("grid {m}x{n} has {cells} cells; this search supports at most {limit}")]
    CellGuard {
        m: u8,
        n: u8,
        cells: usize,
        limit: usize,
    },
    #[error("unknown statistic {0:?}; expected one of z, zl, z3l, z3a")]
    UnknownStatistic(String),
}

/// An extra acceptance predicate applied to every candidate graph the
/// search would otherwise count; used to layer experimental rules on
/// top of the built-in conditions without changing the engine.
pub type ExtraCondition = Arc<dyn Fn(&AugmentedGraph) -> bool + Send + Sync>;

/// Knobs shared by all searches. The `extra_condition` hook lets callers
/// impose an additional pruning predicate on every candidate graph; it
/// is off by default and its presence is recorded in result snapshots.
#[derive(Clone)]
pub struct SearchConfig {
    pub opposite_scope: OppositeScope,
    /// Admit row- and column-degenerate 2-edges as search candidates.
    /// Off by default: degenerate 2-edges are exempt from the
    /// opposite-cell restriction, so admitting them inflates the
    /// augmented statistics.
    pub allow_degenerate_2edges: bool,
    /// Prune row permutations in the 1-edge layer. Never changes the
    /// value; exposed so the claim is testable.
    pub symmetry_reduction: bool,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Worker threads for searches that parallelize across extremal
    /// 1-edge classes. Capped by the `ZRK_THREADS` environment variable
    /// and forced to 1 whenever a budget is set, so budgeted runs stay
    /// reproducible.
    pub threads: usize,
    /// Number of witnesses to report (the ones with smallest canonical
    /// codes are kept).
    pub max_witnesses: usize,
    pub extra_condition: Option<ExtraCondition>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            opposite_scope: OppositeScope::default(),
            allow_degenerate_2edges: false,
            symmetry_reduction: true,
            node_budget: None,
            time_budget: None,
            threads: 1,
            max_witnesses: 8,
            extra_condition: None,
        }
    }
}

impl fmt::Debug for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchConfig")
            .field("opposite_scope", &self.opposite_scope)
            .field("allow_degenerate_2edges", &self.allow_degenerate_2edges)
            .field("symmetry_reduction", &self.symmetry_reduction)
            .field("node_budget", &self.node_budget)
            .field("time_budget", &self.time_budget)
            .field("threads", &self.threads)
            .field("max_witnesses", &self.max_witnesses)
            .field("extra_condition", &self.extra_condition.is_some())
            .finish()
    }
}

impl SearchConfig {
    pub fn check_config(&self) -> CheckConfig {
        CheckConfig {
            opposite_scope: self.opposite_scope,
        }
    }

    fn snapshot(&self, effective_threads: usize, notes: Vec<String>) -> ConfigSnapshot {
        ConfigSnapshot {
            opposite_scope: self.opposite_scope,
            allow_degenerate_2edges: self.allow_degenerate_2edges,
            symmetry_reduction: self.symmetry_reduction,
            node_budget: self.node_budget,
            time_budget_seconds: self.time_budget.map(|d| d.as_secs_f64()),
            threads: effective_threads,
            max_witnesses: self.max_witnesses,
            extra_condition_active: self.extra_condition.is_some(),
            notes,
        }
    }
}

/// The configuration a result was computed under, in serializable form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub opposite_scope: OppositeScope,
    pub allow_degenerate_2edges: bool,
    pub symmetry_reduction: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_seconds: Option<f64>,
    pub threads: usize,
    pub max_witnesses: usize,
    pub extra_condition_active: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub statistic: Statistic,
    pub m: u8,
    pub n: u8,
    pub value: usize,
    /// Extremal graphs attaining `value`, deduplicated up to row and
    /// column relabeling and reported in canonical form (in increasing
    /// canonical-code order).
    pub witnesses: Vec<AugmentedGraph>,
    /// True when no budget cutoff occurred, i.e. `value` is optimal
    /// under the recorded configuration.
    pub exhaustive: bool,
    pub nodes_explored: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    pub config: ConfigSnapshot,
}

/// What augmenting a fixed 1-edge set achieved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentationOutcome {
    /// Maximum number of 2- and 3-edges added on top of the 1-edge set.
    pub added: usize,
    /// Full graphs (1-edge set plus additions) attaining `added`.
    pub witnesses: Vec<AugmentedGraph>,
    pub exhaustive: bool,
    pub nodes_explored: u64,
}

/// Flag emitted when a search value strictly exceeds the value published
/// for that statistic in the literature.
pub const FLAG_EXCEEDS_PUBLISHED: &str = "exceeds-published-value";

/// Flag emitted when a node or time budget cut the search short.
pub const FLAG_BUDGET_EXHAUSTED: &str = "budget-exhausted";

/// Flag emitted when the grid is too large for canonical codes, so
/// witnesses are deduplicated by their literal labeling instead.
pub const FLAG_WITNESSES_NOT_CANONICAL: &str = "witnesses-not-canonical";

fn published_zl_value(m: u8, n: u8) -> Option<usize> {
    match (m, n) {
        (5, 3) => Some(9),
        (5, 5) => Some(14),
        (6, 4) => Some(14),
        _ => None,
    }
}

/// Parse a thread cap from the `ZRK_THREADS` environment variable's raw
/// value; non-numeric values are ignored and 0 is treated as 1.
fn thread_cap(raw: Option<&str>) -> Option<usize> {
    raw.and_then(|s| s.trim().parse::<usize>().ok())
        .map(|v| v.max(1))
}

fn effective_threads(cfg: &SearchConfig) -> usize {
    if cfg.node_budget.is_some() || cfg.time_budget.is_some() {
        return 1;
    }
    let mut t = cfg.threads.max(1);
    if let Some(cap) = thread_cap(std::env::var("ZRK_THREADS").ok().as_deref()) {
        t = t.min(cap);
    }
    t
}

/// Node and wall-clock accounting shared by the search loops. `tick`
/// returns false once either limit is hit; the deadline is only polled
/// every 4096 nodes to keep the hot path cheap.
struct Budget {
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    nodes: u64,
    tripped: bool,
}

impl Budget {
    fn new(node_limit: Option<u64>, time_budget: Option<Duration>) -> Self {
        Budget {
            node_limit,
            deadline: time_budget.map(|d| Instant::now() + d),
            nodes: 0,
            tripped: false,
        }
    }

    fn unlimited() -> Self {
        Budget::new(None, None)
    }

    fn tick(&mut self) -> bool {
        if self.tripped {
            return false;
        }
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                self.tripped = true;
                return false;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes & 0xFFF == 0 && Instant::now() >= deadline {
                self.tripped = true;
                return false;
            }
        }
        true
    }

    fn tripped(&self) -> bool {
        self.tripped
    }
}

/// Collects optimal graphs deduplicated up to relabeling, keeping the
/// `keep` smallest canonical codes. Grids beyond the canonical guard
/// fall back to deduplication by literal encoding.
struct WitnessPool {
    map: BTreeMap<Vec<u8>, AugmentedGraph>,
    keep: usize,
    canonical: bool,
}

impl WitnessPool {
    fn new(keep: usize, cells: usize) -> Self {
        WitnessPool {
            map: BTreeMap::new(),
            keep,
            canonical: cells <= CANONICAL_CELL_LIMIT,
        }
    }

    fn clear(&mut self) {
        self.map.clear();
    }

    fn insert(&mut self, g: &AugmentedGraph) {
        if self.canonical {
            let (canonical, code) = g
                .canonical_form()
                .expect("pool is canonical only within the cell guard");
            self.map.insert(code, canonical);
        } else {
            self.map.insert(g.encode(), g.clone());
        }
        self.trim();
    }

    fn absorb(&mut self, other: WitnessPool) {
        for (code, g) in other.map {
            self.map.insert(code, g);
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.map.len() > self.keep {
            let last = self.map.keys().next_back().cloned().expect("nonempty");
            self.map.remove(&last);
        }
    }

    fn into_witnesses(self) -> Vec<AugmentedGraph> {
        self.map.into_values().collect()
    }
}

fn pairs_in(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// `table[rows][free]` bounds the number of cells placeable in `rows`
/// further rows when `free` column pairs are still unused. For a fixed
/// cell total the pair consumption is minimized by spreading the cells
/// evenly across the rows (pair counts are convex in the per-row count),
/// so the bound is the largest total whose balanced spread fits.
fn capacity_table(m: usize, n: usize) -> Vec<Vec<usize>> {
    let total_pairs = pairs_in(n);
    let mut table = vec![vec![0usize; total_pairs + 1]; m + 1];
    for (rows, row_table) in table.iter_mut().enumerate().skip(1) {
        for (free, slot) in row_table.iter_mut().enumerate() {
            let mut bound = 0;
            for s in (0..=rows * n).rev() {
                let q = s / rows;
                let r = s % rows;
                let cost = (rows - r) * pairs_in(q) + r * pairs_in(q + 1);
                if cost <= free {
                    bound = s;
                    break;
                }
            }
            *slot = bound;
        }
    }
    table
}

/// Depth-first search over 1-edge sets, one row mask at a time,
/// maintaining the bitset of used column pairs; a pair reused across two
/// rows is exactly a 4-cycle. With symmetry reduction, only
/// non-increasing mask sequences are enumerated; every graph has a
/// row-sorted relabeling, so each isomorphism class is still visited.
struct RowSearch<'a> {
    m: usize,
    n: usize,
    pairs_of: Vec<u64>,
    capacity: Vec<Vec<usize>>,
    total_pairs: u32,
    symmetry: bool,
    budget: &'a mut Budget,
    masks: Vec<u16>,
    used_pairs: u64,
    edges: usize,
    best: usize,
    pool: WitnessPool,
}

impl<'a> RowSearch<'a> {
    fn new(m: usize, n: usize, symmetry: bool, budget: &'a mut Budget, keep: usize) -> Self {
        let mut pairs_of = vec![0u64; 1 << n];
        for mask in 0..(1u32 << n) {
            let mut p = 0u64;
            for a in 0..n {
                if mask & (1 << a) == 0 {
                    continue;
                }
                for b in (a + 1)..n {
                    if mask & (1 << b) != 0 {
                        p |= 1 << (a * 8 + b);
                    }
                }
            }
            pairs_of[mask as usize] = p;
        }
        RowSearch {
            m,
            n,
            pairs_of,
            capacity: capacity_table(m, n),
            total_pairs: pairs_in(n) as u32,
            symmetry,
            budget,
            masks: vec![0; m],
            used_pairs: 0,
            edges: 0,
            best: 0,
            pool: WitnessPool::new(keep, m * n),
        }
    }

    fn graph_from_masks(&self) -> AugmentedGraph {
        let mut e1 = Vec::with_capacity(self.edges);
        for (r, &mask) in self.masks.iter().enumerate() {
            for c in 0..self.n {
                if mask & (1 << c) != 0 {
                    e1.push(Cell::new(r as u8, c as u8));
                }
            }
        }
        AugmentedGraph::new(self.m as u8, self.n as u8, e1, [], [])
            .expect("row masks stay within the grid")
    }

    fn dfs(&mut self, row: usize) {
        if !self.budget.tick() {
            return;
        }
        if row == self.m {
            if self.edges > self.best {
                self.best = self.edges;
                self.pool.clear();
            }
            if self.edges == self.best {
                let g = self.graph_from_masks();
                self.pool.insert(&g);
            }
            return;
        }
        let free = (self.total_pairs - self.used_pairs.count_ones()) as usize;
        if self.edges + self.capacity[self.m - row][free] < self.best {
            return;
        }
        let cap: u16 = if self.symmetry && row > 0 {
            self.masks[row - 1]
        } else {
            (1u16 << self.n) - 1
        };
        let mut mask = cap;
        loop {
            let p = self.pairs_of[mask as usize];
            if p & self.used_pairs == 0 {
                self.masks[row] = mask;
                self.used_pairs |= p;
                self.edges += mask.count_ones() as usize;
                self.dfs(row + 1);
                self.edges -= mask.count_ones() as usize;
                self.used_pairs &= !p;
                self.masks[row] = 0;
            }
            if mask == 0 || self.budget.tripped() {
                break;
            }
            mask -= 1;
        }
    }
}

fn run_row_search(
    m: u8,
    n: u8,
    symmetry: bool,
    budget: &mut Budget,
    keep: usize,
) -> (usize, WitnessPool) {
    let mut search = RowSearch::new(m as usize, n as usize, symmetry, budget, keep);
    search.dfs(0);
    let RowSearch { best, pool, .. } = search;
    (best, pool)
}

fn side_guard(m: u8, n: u8) -> Result<(), SearchError> {
    if m == 0 || n == 0 || m > SIDE_LIMIT || n > SIDE_LIMIT {
        return Err(SearchError::SideGuard {
            m,
            n,
            limit: SIDE_LIMIT,
        });
    }
    Ok(())
}

/// Maximum size of a 4-cycle-free 1-edge set on an m x n grid, with
/// witnesses. Exhaustive unless a budget from the configuration trips.
pub fn zarankiewicz(m: u8, n: u8, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    side_guard(m, n)?;
    let cells = m as usize * n as usize;
    let mut budget = Budget::new(cfg.node_budget, cfg.time_budget);
    let (value, pool) = run_row_search(m, n, cfg.symmetry_reduction, &mut budget, cfg.max_witnesses);
    let mut flags = Vec::new();
    if budget.tripped() {
        flags.push(FLAG_BUDGET_EXHAUSTED.to_string());
    }
    if cells > CANONICAL_CELL_LIMIT {
        flags.push(FLAG_WITNESSES_NOT_CANONICAL.to_string());
    }
    let result = SearchResult {
        statistic: Statistic::Z,
        m,
        n,
        value,
        witnesses: pool.into_witnesses(),
        exhaustive: !budget.tripped(),
        nodes_explored: budget.nodes,
        flags,
        config: cfg.snapshot(1, vec![]),
    };
    revalidate_witnesses(&result, cfg);
    Ok(result)
}

/// All maximum 4-cycle-free 1-edge sets on an m x n grid, one canonical
/// representative per class, in increasing canonical-code order. Always
/// exhaustive (budgets are not consulted; the guard keeps this fast).
pub fn enumerate_extremal_c4free(m: u8, n: u8) -> Result<Vec<BTreeSet<Cell>>, SearchError> {
    side_guard(m, n)?;
    let cells = m as usize * n as usize;
    if cells > CANONICAL_CELL_LIMIT {
        return Err(SearchError::CellGuard {
            m,
            n,
            cells,
            limit: CANONICAL_CELL_LIMIT,
        });
    }
    let mut budget = Budget::unlimited();
    let (_, pool) = run_row_search(m, n, true, &mut budget, usize::MAX);
    Ok(pool
        .into_witnesses()
        .into_iter()
        .map(|g| g.e1().clone())
        .collect())
}

/// One candidate 2-edge: its occupancy mask, the mask of its two
/// opposite cells (empty for degenerate edges, which have none), and the
/// edge itself for building result graphs.
struct Cand2 {
    mask: u64,
    opp_mask: u64,
    degenerate: bool,
    edge: Edge2,
}

/// One candidate 3-edge: its occupancy mask and the mask of the six
/// other cells of its spanned 3 x 3 pattern, whose full occupation is
/// exactly a saturation failure.
struct Cand3 {
    mask: u64,
    o_mask: u64,
    edge: Edge3,
}

/// Which edge layers an augmentation run enumerates. 1-edges are only
/// enumerated in the unrestricted statistic, where the run starts from
/// an empty grid; the other two modes keep the given 1-edge set fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AugmentLayers {
    TwoEdges,
    TwoAndThreeEdges,
    AllFromEmpty,
}

impl AugmentLayers {
    fn over_fixed_e1(allow_e3: bool) -> Self {
        if allow_e3 {
            AugmentLayers::TwoAndThreeEdges
        } else {
            AugmentLayers::TwoEdges
        }
    }

    fn enumerates_ones(self) -> bool {
        self == AugmentLayers::AllFromEmpty
    }

    fn enumerates_threes(self) -> bool {
        self != AugmentLayers::TwoEdges
    }
}

/// Depth-first augmentation engine. Candidates are ordered 1-edge cells
/// first (only in unrestricted mode), then 2-edges, then 3-edges, each
/// block sorted by edge order; subsets are enumerated index-increasing,
/// so each configuration is visited exactly once and the exploration
/// order is deterministic.
struct AugmentEngine<'a> {
    m: usize,
    n: usize,
    total_cells: usize,
    scope: OppositeScope,
    hook: Option<ExtraCondition>,
    one_cands: Vec<Cell>,
    two_cands: Vec<Cand2>,
    three_cands: Vec<Cand3>,
    budget: &'a mut Budget,
    row_masks: Vec<u32>,
    e1: Vec<Cell>,
    occ: u64,
    occ12: u64,
    chosen2: Vec<usize>,
    chosen3: Vec<usize>,
    best: usize,
    pool: WitnessPool,
}

impl<'a> AugmentEngine<'a> {
    fn new(
        m: u8,
        n: u8,
        e1: &BTreeSet<Cell>,
        layers: AugmentLayers,
        cfg: &SearchConfig,
        budget: &'a mut Budget,
        keep: usize,
    ) -> Self {
        let (m, n) = (m as usize, n as usize);
        let total_cells = m * n;
        debug_assert!(total_cells <= 64);
        let bit = |c: Cell| 1u64 << (c.row() as usize * n + c.col() as usize);

        let mut row_masks = vec![0u32; m];
        let mut occ = 0u64;
        for &c in e1 {
            row_masks[c.row() as usize] |= 1 << c.col();
            occ |= bit(c);
        }

        let one_cands: Vec<Cell> = if layers.enumerates_ones() {
            debug_assert!(e1.is_empty());
            (0..m)
                .flat_map(|r| (0..n).map(move |c| Cell::new(r as u8, c as u8)))
                .collect()
        } else {
            Vec::new()
        };

        let free: Vec<Cell> = (0..m)
            .flat_map(|r| (0..n).map(move |c| Cell::new(r as u8, c as u8)))
            .filter(|&c| bit(c) & occ == 0)
            .collect();

        let mut two_cands = Vec::new();
        for (i, &a) in free.iter().enumerate() {
            for &b in &free[i + 1..] {
                let degenerate = a.row() == b.row() || a.col() == b.col();
                if degenerate && !cfg.allow_degenerate_2edges {
                    continue;
                }
                let edge = Edge2::new(a, b).expect("distinct free cells");
                let opp_mask = edge
                    .opposite_cells()
                    .map(|[p, q]| bit(p) | bit(q))
                    .unwrap_or(0);
                two_cands.push(Cand2 {
                    mask: bit(a) | bit(b),
                    opp_mask,
                    degenerate,
                    edge,
                });
            }
        }
        two_cands.sort_by_key(|x| x.edge);

        let mut three_cands = Vec::new();
        if layers.enumerates_threes() {
            for (i, &a) in free.iter().enumerate() {
                for (j, &b) in free.iter().enumerate().skip(i + 1) {
                    for &c in &free[j + 1..] {
                        let rows: BTreeSet<u8> = [a.row(), b.row(), c.row()].into();
                        let cols: BTreeSet<u8> = [a.col(), b.col(), c.col()].into();
                        if rows.len() != 3 || cols.len() != 3 {
                            continue;
                        }
                        let edge = Edge3::new(a, b, c).expect("spans 3 rows and 3 columns");
                        let o_mask = edge
                            .saturation_cells()
                            .into_iter()
                            .fold(0u64, |acc, cell| acc | bit(cell));
                        three_cands.push(Cand3 {
                            mask: bit(a) | bit(b) | bit(c),
                            o_mask,
                            edge,
                        });
                    }
                }
            }
            three_cands.sort_by_key(|x| x.edge);
        }

        AugmentEngine {
            m,
            n,
            total_cells,
            scope: cfg.opposite_scope,
            hook: cfg.extra_condition.clone(),
            one_cands,
            two_cands,
            three_cands,
            budget,
            row_masks,
            e1: e1.iter().copied().collect(),
            occ,
            occ12: occ,
            chosen2: Vec::new(),
            chosen3: Vec::new(),
            best: 0,
            pool: WitnessPool::new(keep, total_cells),
        }
    }

    fn bit(&self, c: Cell) -> u64 {
        1u64 << (c.row() as usize * self.n + c.col() as usize)
    }

    fn total(&self) -> usize {
        self.e1.len() + self.chosen2.len() + self.chosen3.len()
    }

    fn cand_count(&self) -> usize {
        self.one_cands.len() + self.two_cands.len() + self.three_cands.len()
    }

    fn build_graph(&self) -> AugmentedGraph {
        AugmentedGraph::new(
            self.m as u8,
            self.n as u8,
            self.e1.iter().copied(),
            self.chosen2.iter().map(|&j| self.two_cands[j].edge),
            self.chosen3.iter().map(|&j| self.three_cands[j].edge),
        )
        .expect("search state is a valid graph")
    }

    /// The opposite-cell restriction for a 2-edge with opposite mask
    /// `opp`, against prospective occupancies: at most one opposite cell
    /// may lie in the configured scope, and the two may not be halves of
    /// one common 3-edge (under the occupancy scope the count clause
    /// already covers that case).
    fn opposite_ok(&self, opp: u64, occ: u64, occ12: u64) -> bool {
        match self.scope {
            OppositeScope::OneAndTwoEdges => {
                (opp & occ12).count_ones() <= 1
                    && !self
                        .chosen3
                        .iter()
                        .any(|&j| self.three_cands[j].mask & opp == opp)
            }
            OppositeScope::AnyEdge => (opp & occ).count_ones() <= 1,
        }
    }

    fn hook_rejects(&self) -> bool {
        match &self.hook {
            Some(h) => !h(&self.build_graph()),
            None => false,
        }
    }

    /// Add the 1-edge cell unless it completes a 4-cycle or re-occupies
    /// a cell. Only reachable before any 2-/3-edge is chosen, so no
    /// existing edge needs rechecking.
    fn try_add_one(&mut self, cell: Cell) -> bool {
        debug_assert!(self.chosen2.is_empty() && self.chosen3.is_empty());
        let bit = self.bit(cell);
        if bit & self.occ != 0 {
            return false;
        }
        let r = cell.row() as usize;
        let cbit = 1u32 << cell.col();
        for r2 in 0..self.m {
            if r2 != r && self.row_masks[r2] & cbit != 0 && self.row_masks[r] & self.row_masks[r2] != 0
            {
                return false;
            }
        }
        self.row_masks[r] |= cbit;
        self.occ |= bit;
        self.occ12 |= bit;
        self.e1.push(cell);
        if self.hook_rejects() {
            self.undo_one(cell);
            return false;
        }
        true
    }

    fn undo_one(&mut self, cell: Cell) {
        let bit = self.bit(cell);
        self.row_masks[cell.row() as usize] &= !(1u32 << cell.col());
        self.occ &= !bit;
        self.occ12 &= !bit;
        self.e1.pop();
    }

    /// Add the 2-edge unless it breaks simplicity, its own opposite-cell
    /// restriction, the restriction of an existing 2-edge whose opposite
    /// cells it occupies, or the saturation of an existing 3-edge whose
    /// six-cell pattern it completes.
    fn try_add_two(&mut self, i: usize) -> bool {
        let (mask, opp, degenerate) = {
            let c = &self.two_cands[i];
            (c.mask, c.opp_mask, c.degenerate)
        };
        if mask & self.occ != 0 {
            return false;
        }
        let occ = self.occ | mask;
        let occ12 = self.occ12 | mask;
        if !degenerate && !self.opposite_ok(opp, occ, occ12) {
            return false;
        }
        for &j in &self.chosen2 {
            let e = &self.two_cands[j];
            if !e.degenerate && e.opp_mask & mask != 0 && !self.opposite_ok(e.opp_mask, occ, occ12)
            {
                return false;
            }
        }
        for &j in &self.chosen3 {
            let t = &self.three_cands[j];
            if t.o_mask & mask != 0 && t.o_mask & occ == t.o_mask {
                return false;
            }
        }
        self.occ = occ;
        self.occ12 = occ12;
        self.chosen2.push(i);
        if self.hook_rejects() {
            self.undo_two(i);
            return false;
        }
        true
    }

    fn undo_two(&mut self, i: usize) {
        let mask = self.two_cands[i].mask;
        self.occ &= !mask;
        self.occ12 &= !mask;
        self.chosen2.pop();
    }

    /// Add the 3-edge unless it breaks simplicity, its own saturation,
    /// the saturation of an existing 3-edge, or the opposite-cell
    /// restriction of an existing 2-edge. Under the literal scope a
    /// 3-edge adds nothing the count clause sees, so only the common
    /// 3-edge clause needs checking there; the extension condition needs
    /// no check at all, because it can only fail where saturation
    /// already fails.
    fn try_add_three(&mut self, i: usize) -> bool {
        let (mask, o_mask) = {
            let c = &self.three_cands[i];
            (c.mask, c.o_mask)
        };
        if mask & self.occ != 0 {
            return false;
        }
        let occ = self.occ | mask;
        if o_mask & occ == o_mask {
            return false;
        }
        for &j in &self.chosen3 {
            let t = &self.three_cands[j];
            if t.o_mask & mask != 0 && t.o_mask & occ == t.o_mask {
                return false;
            }
        }
        for &j in &self.chosen2 {
            let e = &self.two_cands[j];
            if e.degenerate {
                continue;
            }
            let clash = match self.scope {
                OppositeScope::OneAndTwoEdges => e.opp_mask & mask == e.opp_mask,
                OppositeScope::AnyEdge => {
                    e.opp_mask & mask != 0 && (e.opp_mask & occ).count_ones() > 1
                }
            };
            if clash {
                return false;
            }
        }
        self.occ = occ;
        self.chosen3.push(i);
        if self.hook_rejects() {
            self.undo_three(i);
            return false;
        }
        true
    }

    fn undo_three(&mut self, i: usize) {
        let mask = self.three_cands[i].mask;
        self.occ &= !mask;
        self.chosen3.pop();
    }

    fn record(&mut self) {
        let total = self.total();
        if total > self.best {
            self.best = total;
            self.pool.clear();
        }
        if total == self.best {
            let g = self.build_graph();
            if self.hook.as_ref().is_none_or(|h| h(&g)) {
                self.pool.insert(&g);
            }
        }
    }

    fn dfs(&mut self, start: usize) {
        if !self.budget.tick() {
            return;
        }
        self.record();
        let free = self.total_cells - self.occ.count_ones() as usize;
        let headroom = if start < self.one_cands.len() {
            free
        } else {
            free / 2
        };
        if self.total() + headroom < self.best {
            return;
        }
        let ones = self.one_cands.len();
        let twos = self.two_cands.len();
        for idx in start..self.cand_count() {
            if self.budget.tripped() {
                return;
            }
            if idx < ones {
                let cell = self.one_cands[idx];
                if self.try_add_one(cell) {
                    self.dfs(idx + 1);
                    self.undo_one(cell);
                }
            } else if idx < ones + twos {
                let i = idx - ones;
                if self.try_add_two(i) {
                    self.dfs(idx + 1);
                    self.undo_two(i);
                }
            } else {
                let i = idx - ones - twos;
                if self.try_add_three(i) {
                    self.dfs(idx + 1);
                    self.undo_three(i);
                }
            }
        }
    }
}

fn run_augmentation(
    m: u8,
    n: u8,
    e1: &BTreeSet<Cell>,
    layers: AugmentLayers,
    cfg: &SearchConfig,
    budget: &mut Budget,
    keep: usize,
) -> (usize, WitnessPool) {
    let mut engine = AugmentEngine::new(m, n, e1, layers, cfg, budget, keep);
    engine.dfs(0);
    let best = engine.best;
    let base = e1.len();
    let AugmentEngine { pool, .. } = engine;
    (best - base.min(best), pool)
}

/// Maximum number of 2-edges (and 3-edges when `allow_e3`) addable on
/// top of a fixed 1-edge set, with the full graphs attaining it.
///
/// Additions are validated incrementally: a new edge is checked against
/// its own conditions and exactly the existing edges whose opposite
/// cells or saturation patterns it occupies. Witnesses are reported in
/// canonical form when the grid fits the canonical guard, as labeled
/// otherwise.
///
/// # Panics
///
/// Panics when the grid exceeds 64 cells, a 1-edge cell falls outside
/// the grid, or the 1-edge set has a 4-cycle; callers own those
/// preconditions.
pub fn max_augmentation(
    m: u8,
    n: u8,
    e1: &BTreeSet<Cell>,
    allow_e3: bool,
    cfg: &SearchConfig,
) -> AugmentationOutcome {
    assert!(
        m >= 1 && n >= 1 && m as usize * n as usize <= 64,
        "augmentation grid must have between 1 and 64 cells"
    );
    assert!(
        e1.iter().all(|c| c.row() < m && c.col() < n),
        "1-edge set must lie within the grid"
    );
    assert!(
        is_c4_free(m, n, e1).passed,
        "1-edge set must be 4-cycle-free"
    );
    let mut budget = Budget::new(cfg.node_budget, cfg.time_budget);
    let layers = AugmentLayers::over_fixed_e1(allow_e3);
    let (added, pool) = run_augmentation(m, n, e1, layers, cfg, &mut budget, cfg.max_witnesses);
    AugmentationOutcome {
        added,
        witnesses: pool.into_witnesses(),
        exhaustive: !budget.tripped(),
        nodes_explored: budget.nodes,
    }
}

struct ClassOutcome {
    added: usize,
    pool: WitnessPool,
    nodes: u64,
    tripped: bool,
}

/// Shared implementation of the two searches over extremal 1-edge
/// classes: enumerate the classes, augment each (in parallel when
/// configured and unbudgeted), and merge.
fn limited_search(
    statistic: Statistic,
    allow_e3: bool,
    m: u8,
    n: u8,
    cfg: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    side_guard(m, n)?;
    let cells = m as usize * n as usize;
    if cells > CANONICAL_CELL_LIMIT {
        return Err(SearchError::CellGuard {
            m,
            n,
            cells,
            limit: CANONICAL_CELL_LIMIT,
        });
    }

    let mut budget = Budget::new(cfg.node_budget, cfg.time_budget);
    let (z_value, class_pool) = run_row_search(m, n, cfg.symmetry_reduction, &mut budget, usize::MAX);
    let classes: Vec<BTreeSet<Cell>> = class_pool
        .into_witnesses()
        .into_iter()
        .map(|g| g.e1().clone())
        .collect();
    let z_nodes = budget.nodes;
    let z_tripped = budget.tripped();

    let threads = effective_threads(cfg).min(classes.len()).max(1);
    let mut outcomes: Vec<Option<ClassOutcome>> = Vec::new();
    outcomes.resize_with(classes.len(), || None);
    let layers = AugmentLayers::over_fixed_e1(allow_e3);
    if threads <= 1 {
        for (i, e1) in classes.iter().enumerate() {
            let before = budget.nodes;
            let (added, pool) =
                run_augmentation(m, n, e1, layers, cfg, &mut budget, cfg.max_witnesses);
            outcomes[i] = Some(ClassOutcome {
                added,
                pool,
                nodes: budget.nodes - before,
                tripped: budget.tripped(),
            });
        }
    } else {
        let classes_ref = &classes;
        let collected: Vec<Vec<(usize, ClassOutcome)>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    s.spawn(move || {
                        let mut out = Vec::new();
                        let mut i = t;
                        while i < classes_ref.len() {
                            let mut class_budget = Budget::unlimited();
                            let (added, pool) = run_augmentation(
                                m,
                                n,
                                &classes_ref[i],
                                layers,
                                cfg,
                                &mut class_budget,
                                cfg.max_witnesses,
                            );
                            out.push((
                                i,
                                ClassOutcome {
                                    added,
                                    pool,
                                    nodes: class_budget.nodes,
                                    tripped: class_budget.tripped(),
                                },
                            ));
                            i += threads;
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("augmentation worker panicked"))
                .collect()
        });
        for chunk in collected {
            for (i, outcome) in chunk {
                outcomes[i] = Some(outcome);
            }
        }
    }

    let outcomes: Vec<ClassOutcome> = outcomes
        .into_iter()
        .map(|o| o.expect("every class is processed"))
        .collect();
    let best_added = outcomes.iter().map(|o| o.added).max().unwrap_or(0);
    let value = z_value + best_added;
    let exhaustive = !z_tripped && outcomes.iter().all(|o| !o.tripped);
    let nodes_explored = z_nodes + outcomes.iter().map(|o| o.nodes).sum::<u64>();

    let mut merged = WitnessPool::new(cfg.max_witnesses, cells);
    for outcome in outcomes {
        if outcome.added == best_added {
            merged.absorb(outcome.pool);
        }
    }

    let mut flags = Vec::new();
    let mut notes = vec![
        "no additional pairwise 2-edge rule beyond the opposite-cell restriction is applied"
            .to_string(),
    ];
    if !exhaustive {
        flags.push(FLAG_BUDGET_EXHAUSTED.to_string());
    }
    if statistic == Statistic::Zl && exhaustive {
        if let Some(published) = published_zl_value(m, n) {
            if value > published {
                flags.push(FLAG_EXCEEDS_PUBLISHED.to_string());
                notes.push(format!(
                    "search value {value} exceeds the published value {published} for zl({m},{n})"
                ));
            }
        }
    }

    let result = SearchResult {
        statistic,
        m,
        n,
        value,
        witnesses: merged.into_witnesses(),
        exhaustive,
        nodes_explored,
        flags,
        config: cfg.snapshot(threads, notes),
    };
    revalidate_witnesses(&result, cfg);
    Ok(result)
}

/// Maximum total edge count over graphs with an extremal 4-cycle-free
/// 1-edge set and 2-edge additions only.
pub fn z_limited(m: u8, n: u8, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    limited_search(Statistic::Zl, false, m, n, cfg)
}

/// Maximum total edge count over graphs with an extremal 4-cycle-free
/// 1-edge set and both 2- and 3-edge additions.
pub fn z3_limited(m: u8, n: u8, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    limited_search(Statistic::Z3l, true, m, n, cfg)
}

/// Maximum total edge count with no restriction on the 1-edge set.
/// Single-threaded and budgeted (a default node budget applies when the
/// configuration sets none); a budget cutoff is reported through
/// `exhaustive = false` rather than an error.
pub fn z3_full(m: u8, n: u8, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let cells = m as usize * n as usize;
    if m == 0 || n == 0 {
        return Err(SearchError::SideGuard {
            m,
            n,
            limit: FULL_CELL_LIMIT as u8,
        });
    }
    if cells > FULL_CELL_LIMIT {
        return Err(SearchError::CellGuard {
            m,
            n,
            cells,
            limit: FULL_CELL_LIMIT,
        });
    }

    let node_budget = cfg.node_budget.or(Some(DEFAULT_FULL_NODE_BUDGET));
    let mut budget = Budget::new(node_budget, cfg.time_budget);
    let empty = BTreeSet::new();
    let (value, pool) =
        run_augmentation(
            m,
            n,
            &empty,
            AugmentLayers::AllFromEmpty,
            cfg,
            &mut budget,
            cfg.max_witnesses,
        );

    let mut notes = vec!["unrestricted search runs single-threaded".to_string()];
    if cfg.node_budget.is_none() {
        notes.push(format!(
            "default node budget of {DEFAULT_FULL_NODE_BUDGET} applied"
        ));
    }
    let mut flags = Vec::new();
    if budget.tripped() {
        flags.push(FLAG_BUDGET_EXHAUSTED.to_string());
    }
    let mut snapshot = cfg.snapshot(1, notes);
    snapshot.node_budget = node_budget;

    let result = SearchResult {
        statistic: Statistic::Z3a,
        m,
        n,
        value,
        witnesses: pool.into_witnesses(),
        exhaustive: !budget.tripped(),
        nodes_explored: budget.nodes,
        flags,
        config: snapshot,
    };
    revalidate_witnesses(&result, cfg);
    Ok(result)
}

/// Dispatch a statistic to its search.
pub fn compute(
    statistic: Statistic,
    m: u8,
    n: u8,
    cfg: &SearchConfig,
) -> Result<SearchResult, SearchError> {
    match statistic {
        Statistic::Z => zarankiewicz(m, n, cfg),
        Statistic::Zl => z_limited(m, n, cfg),
        Statistic::Z3l => z3_limited(m, n, cfg),
        Statistic::Z3a => z3_full(m, n, cfg),
    }
}

/// Safety net: every reported witness must replay from scratch. The
/// incremental engine is the only producer, so any failure here is an
/// internal inconsistency worth a crash.
fn revalidate_witnesses(result: &SearchResult, cfg: &SearchConfig) {
    let check = cfg.check_config();
    for w in &result.witnesses {
        assert!(w.is_simple(), "internal error: search witness is not simple");
        assert!(
            passes_all_conditions(w, &check),
            "internal error: search witness fails a condition"
        );
        assert_eq!(
            w.edge_count(),
            result.value,
            "internal error: search witness does not attain the reported value"
        );
        if let Some(hook) = &cfg.extra_condition {
            assert!(
                hook(w),
                "internal error: search witness fails the extra condition"
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(r: u16, c: u16) -> Cell {
        Cell::one_based(r, c).unwrap()
    }

    #[test]
    fn capacity_bound_spreads_cells_evenly() {
        // Three further rows, three free pairs, three columns: one row
        // of 3 cells costs all three pairs and strands the other rows at
        // 1 cell each (5 total), while 2+2+2 also costs three pairs and
        // places 6. The bound must see the balanced option.
        let table = capacity_table(3, 3);
        assert_eq!(table[3][3], 6);
        assert_eq!(table[3][0], 3);
        assert_eq!(table[1][3], 3);
        assert_eq!(table[2][1], 3);
    }

    #[test]
    fn tiny_grid_values() {
        let cfg = SearchConfig::default();
        for (m, n, expected) in [(1, 1, 1), (1, 4, 4), (2, 2, 3), (2, 3, 4), (3, 3, 6)] {
            let r = zarankiewicz(m, n, &cfg).unwrap();
            assert_eq!(r.value, expected, "z({m},{n})");
            assert!(r.exhaustive);
            assert!(!r.witnesses.is_empty());
            for w in &r.witnesses {
                assert_eq!(w.edge_count(), expected);
            }
        }
    }

    #[test]
    fn guards_reject_out_of_range_grids() {
        let cfg = SearchConfig::default();
        assert!(matches!(
            zarankiewicz(0, 3, &cfg),
            Err(SearchError::SideGuard { .. })
        ));
        assert!(matches!(
            zarankiewicz(9, 3, &cfg),
            Err(SearchError::SideGuard { .. })
        ));
        assert!(matches!(
            z_limited(8, 8, &cfg),
            Err(SearchError::CellGuard { .. })
        ));
        assert!(matches!(
            z3_full(6, 5, &cfg),
            Err(SearchError::CellGuard { .. })
        ));
    }

    #[test]
    fn extremal_classes_on_tiny_grids() {
        // 2x2: any three cells avoid a 4-cycle and all choices are
        // related by row/column swaps.
        let classes = enumerate_extremal_c4free(2, 2).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].len(), 3);
        // 2x3: a full row plus one cell, or two disjoint column pairs.
        let classes = enumerate_extremal_c4free(2, 3).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|e1| e1.len() == 4));
    }

    #[test]
    fn augmenting_a_full_grid_adds_nothing() {
        let e1: BTreeSet<Cell> = [cell(1, 1), cell(1, 2), cell(1, 3)].into();
        let outcome = max_augmentation(1, 3, &e1, true, &SearchConfig::default());
        assert_eq!(outcome.added, 0);
        assert!(outcome.exhaustive);
        assert_eq!(outcome.witnesses.len(), 1);
        assert_eq!(outcome.witnesses[0].edge_count(), 3);
    }

    #[test]
    fn augmentation_respects_the_opposite_cell_restriction() {
        // One occupied corner leaves the antidiagonal 2-edge legal on a
        // 2x2 grid; occupying both corners blocks it.
        let e1: BTreeSet<Cell> = [cell(1, 1)].into();
        let outcome = max_augmentation(2, 2, &e1, false, &SearchConfig::default());
        assert_eq!(outcome.added, 1);
        let e1: BTreeSet<Cell> = [cell(1, 1), cell(2, 2)].into();
        let outcome = max_augmentation(2, 2, &e1, false, &SearchConfig::default());
        assert_eq!(outcome.added, 0);
    }

    #[test]
    fn chain_holds_on_tiny_grids() {
        let cfg = SearchConfig::default();
        for (m, n) in [(2, 2), (2, 3)] {
            let z = zarankiewicz(m, n, &cfg).unwrap().value;
            let zl = z_limited(m, n, &cfg).unwrap().value;
            let z3l = z3_limited(m, n, &cfg).unwrap().value;
            let z3a = z3_full(m, n, &cfg).unwrap().value;
            assert!(z3a >= z3l && z3l >= zl && zl >= z, "chain on ({m},{n})");
        }
    }

    #[test]
    fn unrestricted_tiny_values() {
        let cfg = SearchConfig::default();
        let r = z3_full(1, 1, &cfg).unwrap();
        assert_eq!(r.value, 1);
        assert!(r.exhaustive);
        let r = z3_full(2, 2, &cfg).unwrap();
        assert_eq!(r.value, 3);
        let r = z3_full(1, 3, &cfg).unwrap();
        assert_eq!(r.value, 3);
    }

    #[test]
    fn node_budget_trips_honestly() {
        let cfg = SearchConfig {
            node_budget: Some(1),
            ..SearchConfig::default()
        };
        let r = zarankiewicz(3, 3, &cfg).unwrap();
        assert!(!r.exhaustive);
        assert!(r.flags.iter().any(|f| f == FLAG_BUDGET_EXHAUSTED));
        assert!(r.value <= 6);
    }

    #[test]
    fn symmetry_toggle_never_changes_the_value() {
        for (m, n) in [(2, 3), (3, 3), (4, 3)] {
            let on = zarankiewicz(m, n, &SearchConfig::default()).unwrap();
            let off = zarankiewicz(
                m,
                n,
                &SearchConfig {
                    symmetry_reduction: false,
                    ..SearchConfig::default()
                },
            )
            .unwrap();
            assert_eq!(on.value, off.value, "({m},{n})");
            assert!(on.nodes_explored <= off.nodes_explored);
        }
    }

    #[test]
    fn results_are_identical_across_runs_and_threads() {
        let single = SearchConfig::default();
        let multi = SearchConfig {
            threads: 2,
            ..SearchConfig::default()
        };
        let a = z3_limited(3, 3, &single).unwrap();
        let b = z3_limited(3, 3, &single).unwrap();
        assert_eq!(a, b);
        let c = z3_limited(3, 3, &multi).unwrap();
        assert_eq!(a.value, c.value);
        assert_eq!(a.exhaustive, c.exhaustive);
        assert_eq!(a.witnesses, c.witnesses);
        assert_eq!(a.nodes_explored, c.nodes_explored);
    }

    #[test]
    fn extra_condition_hook_prunes() {
        // Cap the 1-edge count at two through the hook: the 2x2 optimum
        // of three 1-edges becomes unreachable and the best drops to
        // two, e.g. one corner plus the antidiagonal 2-edge.
        let cfg = SearchConfig {
            extra_condition: Some(Arc::new(|g: &AugmentedGraph| g.e1().len() <= 2)),
            ..SearchConfig::default()
        };
        let r = z3_full(2, 2, &cfg).unwrap();
        assert!(r.config.extra_condition_active);
        assert_eq!(r.value, 2);
        assert!(r.witnesses.iter().all(|w| w.e1().len() <= 2));
        assert_eq!(z3_full(2, 2, &SearchConfig::default()).unwrap().value, 3);
    }

    #[test]
    fn thread_cap_parses_defensively() {
        assert_eq!(thread_cap(None), None);
        assert_eq!(thread_cap(Some("4")), Some(4));
        assert_eq!(thread_cap(Some(" 2 ")), Some(2));
        assert_eq!(thread_cap(Some("0")), Some(1));
        assert_eq!(thread_cap(Some("lots")), None);
    }

    #[test]
    fn statistic_names_round_trip() {
        for s in Statistic::ALL {
            assert_eq!(s.name().parse::<Statistic>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(json, format!("\"{}\"", s.name()));
        }
        assert!("z3".parse::<Statistic>().is_err());
    }
}
