//! Augmented bipartite graphs on an m x n grid.
//!
//! A graph carries three edge layers over the cells of the grid: 1-edges
//! (single cells), 2-edges (unordered pairs of distinct cells, which may
//! share a row or a column), and 3-edges (unordered triples that must span
//! three distinct rows and three distinct columns). A cell is *occupied*
//! when it is a 1-edge or a half of some 2- or 3-edge, and a graph is
//! *simple* when no cell is used by more than one edge.
//!
//! Rows and columns are 0-based in memory. Everything that crosses an I/O
//! boundary (JSON files, reports, display output) is 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest grid (in cells) for which canonical codes are computed.
pub const CANONICAL_CELL_LIMIT: usize = 49;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("cell ({row}, {col}) lies outside the {m}x{n} grid")]
    OutOfBounds { row: u16, col: u16, m: u8, n: u8 },
    #[error("1-based indices must be at least 1 and at most 256, got ({0}, {1})")]
    IndexRange(u16, u16),
    #[error("a 2-edge needs two distinct cells")]
    Edge2Identical,
    #[error("a 3-edge must span three distinct rows and three distinct columns")]
    Edge3Degenerate,
    #[error("grid {m}x{n} exceeds the canonical-code limit of {limit} cells")]
    DimensionTooLarge { m: u8, n: u8, limit: usize },
    #[error("graph is not simple: cell {0} is used by more than one edge")]
    NotSimple(Cell),
    #[error("grid dimensions must be at least 1x1")]
    EmptyGrid,
    #[error("edge is not part of the graph")]
    EdgeNotInGraph,
}

/// A cell as a 1-based (row, column) index pair, the layout used by
/// literal constructors and the on-disk JSON.
pub type RawCell = (u16, u16);

/// A grid cell. Construct with 0-based indices via [`Cell::new`] or with
/// 1-based indices via [`Cell::one_based`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    row: u8,
    col: u8,
}

impl Cell {
    pub fn new(row: u8, col: u8) -> Self {
        Cell { row, col }
    }

    pub fn one_based(row: u16, col: u16) -> Result<Self, GraphError> {
        if row == 0 || col == 0 || row > 256 || col > 256 {
            return Err(GraphError::IndexRange(row, col));
        }
        Ok(Cell::new((row - 1) as u8, (col - 1) as u8))
    }

    pub fn row(&self) -> u8 {
        self.row
    }

    pub fn col(&self) -> u8 {
        self.col
    }

    /// 1-based row index, as used in file formats and reports.
    pub fn row1(&self) -> u16 {
        self.row as u16 + 1
    }

    /// 1-based column index.
    pub fn col1(&self) -> u16 {
        self.col as u16 + 1
    }

    fn in_grid(&self, m: u8, n: u8) -> bool {
        self.row < m && self.col < n
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row1(), self.col1())
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.row1(), self.col1()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (row, col) = <(u16, u16)>::deserialize(d)?;
        Cell::one_based(row, col).map_err(D::Error::custom)
    }
}

/// How the two halves of a 2-edge relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Edge2Kind {
    /// Distinct rows and distinct columns.
    Nondegenerate,
    /// Both halves in one row.
    RowDegenerate,
    /// Both halves in one column.
    ColumnDegenerate,
}

/// An unordered pair of distinct cells. Halves are stored in ascending
/// order, so equal pairs compare equal regardless of construction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge2 {
    a: Cell,
    b: Cell,
}

impl Edge2 {
    pub fn new(a: Cell, b: Cell) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::Edge2Identical);
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Edge2 { a, b })
    }

    pub fn halves(&self) -> [Cell; 2] {
        [self.a, self.b]
    }

    pub fn kind(&self) -> Edge2Kind {
        if self.a.row == self.b.row {
            Edge2Kind::RowDegenerate
        } else if self.a.col == self.b.col {
            Edge2Kind::ColumnDegenerate
        } else {
            Edge2Kind::Nondegenerate
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind() != Edge2Kind::Nondegenerate
    }

    /// The two cells completing the rectangle spanned by a nondegenerate
    /// 2-edge: for halves (i,j) and (k,l) these are (i,l) and (k,j).
    /// Degenerate 2-edges span no rectangle and yield `None`.
    pub fn opposite_cells(&self) -> Option<[Cell; 2]> {
        if self.is_degenerate() {
            return None;
        }
        Some([
            Cell::new(self.a.row, self.b.col),
            Cell::new(self.b.row, self.a.col),
        ])
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.a == c || self.b == c
    }
}

impl fmt::Display for Edge2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl Serialize for Edge2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[Cell; 2]>::deserialize(d)?;
        Edge2::new(a, b).map_err(D::Error::custom)
    }
}

/// An unordered triple of cells with pairwise distinct rows and pairwise
/// distinct columns. Cells are stored in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge3 {
    cells: [Cell; 3],
}

impl Edge3 {
    pub fn new(a: Cell, b: Cell, c: Cell) -> Result<Self, GraphError> {
        let mut cells = [a, b, c];
        cells.sort();
        let rows: BTreeSet<u8> = cells.iter().map(|c| c.row).collect();
        let cols: BTreeSet<u8> = cells.iter().map(|c| c.col).collect();
        if rows.len() != 3 || cols.len() != 3 {
            return Err(GraphError::Edge3Degenerate);
        }
        Ok(Edge3 { cells })
    }

    pub fn cells(&self) -> [Cell; 3] {
        self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Sorted distinct rows spanned by the triple.
    pub fn rows(&self) -> [u8; 3] {
        let mut r = [self.cells[0].row, self.cells[1].row, self.cells[2].row];
        r.sort();
        r
    }

    /// Sorted distinct columns spanned by the triple.
    pub fn cols(&self) -> [u8; 3] {
        let mut c = [self.cells[0].col, self.cells[1].col, self.cells[2].col];
        c.sort();
        c
    }

    /// The six cells of the spanned 3x3 subgrid that are not halves of
    /// the triple, in ascending order.
    pub fn saturation_cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(6);
        for &r in &self.rows() {
            for &c in &self.cols() {
                let cell = Cell::new(r, c);
                if !self.contains(cell) {
                    out.push(cell);
                }
            }
        }
        debug_assert_eq!(out.len(), 6);
        out
    }

    /// Whether a cell lies in the 3x3 subgrid spanned by the triple.
    pub fn spans(&self, c: Cell) -> bool {
        self.rows().contains(&c.row) && self.cols().contains(&c.col)
    }
}

impl fmt::Display for Edge3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}, {}, {}}}",
            self.cells[0], self.cells[1], self.cells[2]
        )
    }
}

impl Serialize for Edge3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.cells.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c] = <[Cell; 3]>::deserialize(d)?;
        Edge3::new(a, b, c).map_err(D::Error::custom)
    }
}

/// A bipartite graph on an m x n grid augmented with 2- and 3-edges.
///
/// Construction validates grid bounds and edge well-formedness but not
/// simplicity, so that [`AugmentedGraph::is_simple`] can be queried on
/// arbitrary inputs. Operations that require a simple graph check it
/// themselves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AugmentedGraph {
    m: u8,
    n: u8,
    e1: BTreeSet<Cell>,
    e2: BTreeSet<Edge2>,
    e3: BTreeSet<Edge3>,
}

impl AugmentedGraph {
    pub fn new(
        m: u8,
        n: u8,
        e1: impl IntoIterator<Item = Cell>,
        e2: impl IntoIterator<Item = Edge2>,
        e3: impl IntoIterator<Item = Edge3>,
    ) -> Result<Self, GraphError> {
        if m == 0 || n == 0 {
            return Err(GraphError::EmptyGrid);
        }
        let e1: BTreeSet<Cell> = e1.into_iter().collect();
        let e2: BTreeSet<Edge2> = e2.into_iter().collect();
        let e3: BTreeSet<Edge3> = e3.into_iter().collect();
        let check = |c: &Cell| -> Result<(), GraphError> {
            if c.in_grid(m, n) {
                Ok(())
            } else {
                Err(GraphError::OutOfBounds {
                    row: c.row1(),
                    col: c.col1(),
                    m,
                    n,
                })
            }
        };
        for c in &e1 {
            check(c)?;
        }
        for e in &e2 {
            for c in &e.halves() {
                check(c)?;
            }
        }
        for e in &e3 {
            for c in &e.cells() {
                check(c)?;
            }
        }
        Ok(AugmentedGraph { m, n, e1, e2, e3 })
    }

    /// Convenience constructor taking 1-based cell indices, matching the
    /// on-disk JSON layout.
    pub fn from_one_based(
        m: u8,
        n: u8,
        e1: &[RawCell],
        e2: &[(RawCell, RawCell)],
        e3: &[(RawCell, RawCell, RawCell)],
    ) -> Result<Self, GraphError> {
        let cell = |(r, c): RawCell| Cell::one_based(r, c);
        let e1 = e1.iter().map(|&p| cell(p)).collect::<Result<Vec<_>, _>>()?;
        let e2 = e2
            .iter()
            .map(|&(p, q)| Edge2::new(cell(p)?, cell(q)?))
            .collect::<Result<Vec<_>, _>>()?;
        let e3 = e3
            .iter()
            .map(|&(p, q, r)| Edge3::new(cell(p)?, cell(q)?, cell(r)?))
            .collect::<Result<Vec<_>, _>>()?;
        AugmentedGraph::new(m, n, e1, e2, e3)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn e1(&self) -> &BTreeSet<Cell> {
        &self.e1
    }

    pub fn e2(&self) -> &BTreeSet<Edge2> {
        &self.e2
    }

    pub fn e3(&self) -> &BTreeSet<Edge3> {
        &self.e3
    }

    /// Total number of edges across all three layers.
    pub fn edge_count(&self) -> usize {
        self.e1.len() + self.e2.len() + self.e3.len()
    }

    /// Every cell used by some edge. For simple graphs the size equals
    /// `|E1| + 2|E2| + 3|E3|`.
    pub fn occupied_cells(&self) -> BTreeSet<Cell> {
        let mut occ: BTreeSet<Cell> = self.e1.iter().copied().collect();
        for e in &self.e2 {
            occ.extend(e.halves());
        }
        for e in &self.e3 {
            occ.extend(e.cells());
        }
        occ
    }

    /// Cells that are 1-edges or halves of 2-edges, ignoring 3-edges.
    pub fn one_two_cells(&self) -> BTreeSet<Cell> {
        let mut occ: BTreeSet<Cell> = self.e1.iter().copied().collect();
        for e in &self.e2 {
            occ.extend(e.halves());
        }
        occ
    }

    /// Multiplicity of each used cell across all edges.
    pub fn cell_usage(&self) -> BTreeMap<Cell, usize> {
        let mut usage: BTreeMap<Cell, usize> = BTreeMap::new();
        for &c in &self.e1 {
            *usage.entry(c).or_insert(0) += 1;
        }
        for e in &self.e2 {
            for c in e.halves() {
                *usage.entry(c).or_insert(0) += 1;
            }
        }
        for e in &self.e3 {
            for c in e.cells() {
                *usage.entry(c).or_insert(0) += 1;
            }
        }
        usage
    }

    /// No cell is used by more than one edge.
    pub fn is_simple(&self) -> bool {
        self.cell_usage().values().all(|&k| k == 1)
    }

    /// Whether two distinct cells are halves of one common edge (the same
    /// 2-edge or the same 3-edge).
    pub fn co_edged(&self, a: Cell, b: Cell) -> bool {
        self.e2.iter().any(|e| e.contains(a) && e.contains(b))
            || self.e3.iter().any(|e| e.contains(a) && e.contains(b))
    }

    /// Apply row and column relabelings. `row_perm[old] = new`.
    pub fn relabel(&self, row_perm: &[u8], col_perm: &[u8]) -> AugmentedGraph {
        debug_assert_eq!(row_perm.len(), self.m as usize);
        debug_assert_eq!(col_perm.len(), self.n as usize);
        let map = |c: Cell| Cell::new(row_perm[c.row as usize], col_perm[c.col as usize]);
        let e1 = self.e1.iter().map(|&c| map(c));
        let e2 = self
            .e2
            .iter()
            .map(|e| Edge2::new(map(e.a), map(e.b)).expect("relabeling keeps cells distinct"));
        let e3 = self.e3.iter().map(|e| {
            let [a, b, c] = e.cells();
            Edge3::new(map(a), map(b), map(c)).expect("relabeling keeps rows and columns distinct")
        });
        AugmentedGraph::new(self.m, self.n, e1, e2.collect::<Vec<_>>(), e3.collect::<Vec<_>>())
            .expect("relabeling stays inside the grid")
    }

    /// Deterministic byte encoding of the graph as labeled.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 2 * self.e1.len() + 4 * self.e2.len() + 6 * self.e3.len());
        out.push(self.m);
        out.push(self.n);
        out.push(0xE1);
        out.push(self.e1.len() as u8);
        for c in &self.e1 {
            out.push(c.row);
            out.push(c.col);
        }
        out.push(0xE2);
        out.push(self.e2.len() as u8);
        for e in &self.e2 {
            for c in e.halves() {
                out.push(c.row);
                out.push(c.col);
            }
        }
        out.push(0xE3);
        out.push(self.e3.len() as u8);
        for e in &self.e3 {
            for c in e.cells() {
                out.push(c.row);
                out.push(c.col);
            }
        }
        out
    }

    /// The lexicographically smallest [`encode`](Self::encode) output over
    /// all row and column relabelings, together with a relabeled graph
    /// attaining it. Two graphs get equal codes exactly when one can be
    /// turned into the other by permuting rows and permuting columns.
    ///
    /// Cost is factorial in the worst case, so grids beyond
    /// [`CANONICAL_CELL_LIMIT`] cells are rejected. Rows and columns are
    /// first grouped by permutation-invariant signatures, which keeps the
    /// search small on the grid sizes this crate targets.
    pub fn canonical_form(&self) -> Result<(AugmentedGraph, Vec<u8>), GraphError> {
        let cells = self.m as usize * self.n as usize;
        if cells > CANONICAL_CELL_LIMIT {
            return Err(GraphError::DimensionTooLarge {
                m: self.m,
                n: self.n,
                limit: CANONICAL_CELL_LIMIT,
            });
        }

        let row_sig = |r: u8| {
            let e1 = self.e1.iter().filter(|c| c.row == r).count();
            let h2 = self
                .e2
                .iter()
                .flat_map(|e| e.halves())
                .filter(|c| c.row == r)
                .count();
            let h3 = self
                .e3
                .iter()
                .flat_map(|e| e.cells())
                .filter(|c| c.row == r)
                .count();
            (e1, h2, h3)
        };
        let col_sig = |c: u8| {
            let e1 = self.e1.iter().filter(|x| x.col == c).count();
            let h2 = self
                .e2
                .iter()
                .flat_map(|e| e.halves())
                .filter(|x| x.col == c)
                .count();
            let h3 = self
                .e3
                .iter()
                .flat_map(|e| e.cells())
                .filter(|x| x.col == c)
                .count();
            (e1, h2, h3)
        };

        let row_blocks = signature_blocks((0..self.m).map(|r| (row_sig(r), r)));
        let col_blocks = signature_blocks((0..self.n).map(|c| (col_sig(c), c)));

        let mut best: Option<(Vec<u8>, AugmentedGraph)> = None;
        for_each_block_order(&row_blocks, &mut |row_order| {
            let mut row_perm = vec![0u8; self.m as usize];
            for (new, &old) in row_order.iter().enumerate() {
                row_perm[old as usize] = new as u8;
            }
            for_each_block_order(&col_blocks, &mut |col_order| {
                let mut col_perm = vec![0u8; self.n as usize];
                for (new, &old) in col_order.iter().enumerate() {
                    col_perm[old as usize] = new as u8;
                }
                let candidate = self.relabel(&row_perm, &col_perm);
                let code = candidate.encode();
                match &best {
                    Some((b, _)) if *b <= code => {}
                    _ => best = Some((code, candidate)),
                }
            });
        });
        let (code, graph) = best.expect("at least the identity relabeling is considered");
        Ok((graph, code))
    }

    /// The code half of [`canonical_form`](Self::canonical_form).
    pub fn canonical_code(&self) -> Result<Vec<u8>, GraphError> {
        self.canonical_form().map(|(_, code)| code)
    }
}

/// Group indices by signature, blocks ordered by ascending signature.
fn signature_blocks<S: Ord>(items: impl Iterator<Item = (S, u8)>) -> Vec<Vec<u8>> {
    let mut by_sig: BTreeMap<S, Vec<u8>> = BTreeMap::new();
    for (sig, idx) in items {
        by_sig.entry(sig).or_default().push(idx);
    }
    by_sig.into_values().collect()
}

/// Visit every concatenation of per-block permutations.
fn for_each_block_order(blocks: &[Vec<u8>], visit: &mut impl FnMut(&[u8])) {
    fn rec(blocks: &[Vec<u8>], prefix: &mut Vec<u8>, visit: &mut impl FnMut(&[u8])) {
        match blocks.split_first() {
            None => visit(prefix),
            Some((first, rest)) => {
                let mut block = first.clone();
                permute(&mut block, 0, &mut |perm| {
                    let len = prefix.len();
                    prefix.extend_from_slice(perm);
                    rec(rest, prefix, visit);
                    prefix.truncate(len);
                });
            }
        }
    }
    fn permute(items: &mut [u8], k: usize, visit: &mut impl FnMut(&[u8])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
    rec(blocks, &mut Vec::new(), visit);
}

impl Serialize for AugmentedGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AugmentedGraph", 5)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("e1", &self.e1.iter().collect::<Vec<_>>())?;
        st.serialize_field("e2", &self.e2.iter().collect::<Vec<_>>())?;
        st.serialize_field("e3", &self.e3.iter().collect::<Vec<_>>())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AugmentedGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: u8,
            n: u8,
            #[serde(default)]
            e1: Vec<Cell>,
            #[serde(default)]
            e2: Vec<Edge2>,
            #[serde(default)]
            e3: Vec<Edge3>,
        }
        let raw = Raw::deserialize(d)?;
        AugmentedGraph::new(raw.m, raw.n, raw.e1, raw.e2, raw.e3).map_err(D::Error::custom)
    }
}

/// The canonical JSON serialization: field order m, n, e1, e2, e3 with each
/// edge list ascending. Byte equality of two serializations is equivalent
/// to graph equality.
pub fn to_canonical_json(g: &AugmentedGraph) -> String {
    serde_json::to_string(g).expect("graph serialization cannot fail")
}

/// What occupies a cell in a simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellStatus {
    Free,
    One,
    TwoHalf(Edge2),
    ThreeHalf(Edge3),
}

/// Per-cell view of a simple augmented graph. Round-trips with
/// [`AugmentedGraph`] via [`OccupancyGrid::to_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyGrid {
    m: u8,
    n: u8,
    cells: Vec<CellStatus>,
}

impl OccupancyGrid {
    pub fn from_graph(g: &AugmentedGraph) -> Result<Self, GraphError> {
        let mut cells = vec![CellStatus::Free; g.m as usize * g.n as usize];
        let idx = |c: Cell| c.row as usize * g.n as usize + c.col as usize;
        let mut put = |c: Cell, status: CellStatus| -> Result<(), GraphError> {
            let slot = &mut cells[idx(c)];
            if *slot != CellStatus::Free {
                return Err(GraphError::NotSimple(c));
            }
            *slot = status;
            Ok(())
        };
        for &c in &g.e1 {
            put(c, CellStatus::One)?;
        }
        for e in &g.e2 {
            for c in e.halves() {
                put(c, CellStatus::TwoHalf(*e))?;
            }
        }
        for e in &g.e3 {
            for c in e.cells() {
                put(c, CellStatus::ThreeHalf(*e))?;
            }
        }
        Ok(OccupancyGrid {
            m: g.m,
            n: g.n,
            cells,
        })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn status(&self, c: Cell) -> &CellStatus {
        &self.cells[c.row as usize * self.n as usize + c.col as usize]
    }

    pub fn is_occupied(&self, c: Cell) -> bool {
        *self.status(c) != CellStatus::Free
    }

    pub fn to_graph(&self) -> AugmentedGraph {
        let mut e1 = BTreeSet::new();
        let mut e2 = BTreeSet::new();
        let mut e3 = BTreeSet::new();
        for r in 0..self.m {
            for c in 0..self.n {
                let cell = Cell::new(r, c);
                match self.status(cell) {
                    CellStatus::Free => {}
                    CellStatus::One => {
                        e1.insert(cell);
                    }
                    CellStatus::TwoHalf(e) => {
                        e2.insert(*e);
                    }
                    CellStatus::ThreeHalf(e) => {
                        e3.insert(*e);
                    }
                }
            }
        }
        AugmentedGraph::new(self.m, self.n, e1, e2, e3)
            .expect("grid cells are in bounds by construction")
    }
}
