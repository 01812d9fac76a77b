//! Exact algebra for biquadratic forms and sums of squares of bilinear
//! forms.
//!
//! A biquadratic form is a polynomial Sum a x_i x_k y_j y_l held as a
//! sparse map from canonical monomial keys to arbitrary-precision integer
//! coefficients. The monomial x_i x_k y_j y_l depends only on the
//! multisets {i,k} and {j,l}, so the key canonicalization merges every
//! index tuple naming the same monomial; in particular the cell pairs
//! {(i,j),(k,l)} and {(i,l),(k,j)} share one key, which realizes the
//! coefficient symmetry a_ijkl = a_kjil = a_klij.
//!
//! All arithmetic is exact: coefficients are [`BigInt`] and ranks come
//! from fraction-free elimination. No floating point appears anywhere in
//! this module.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{AugmentedGraph, Cell};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("graph is not simple: cell {0} is used by more than one edge")]
    NotSimple(Cell),
    #[error("decomposition has no forms")]
    EmptyDecomposition,
    #[error("a bilinear form in a decomposition needs at least one nonzero entry")]
    EmptyForm,
    #[error("dimension mismatch: expected {expected_m}x{expected_n}, got {got_m}x{got_n}")]
    DimensionMismatch {
        expected_m: u8,
        expected_n: u8,
        got_m: u8,
        got_n: u8,
    },
    #[error("monomial indices ({i},{j},{k},{l}) fall outside the {m}x{n} grid")]
    IndexOutOfRange {
        i: u16,
        j: u16,
        k: u16,
        l: u16,
        m: u8,
        n: u8,
    },
    #[error("graph has no edges, so it has no decomposition")]
    EmptyGraph,
}

/// Canonical key for the monomial x_i x_k y_j y_l: the sorted multiset
/// of x indices paired with the sorted multiset of y indices (0-based
/// internally). Every cell pairing that names the same monomial maps to
/// the same key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialKey {
    x: [u8; 2],
    y: [u8; 2],
}

impl MonomialKey {
    pub fn from_cells(a: Cell, b: Cell) -> Self {
        let mut x = [a.row(), b.row()];
        let mut y = [a.col(), b.col()];
        x.sort();
        y.sort();
        MonomialKey { x, y }
    }

    /// The representative cell pair (x0,y0),(x1,y1). Other pairings of
    /// the same multisets name the same monomial.
    pub fn cells(&self) -> [Cell; 2] {
        [
            Cell::new(self.x[0], self.y[0]),
            Cell::new(self.x[1], self.y[1]),
        ]
    }

    /// Whether the key encodes a square x_i^2 y_j^2.
    pub fn is_diagonal(&self) -> bool {
        self.x[0] == self.x[1] && self.y[0] == self.y[1]
    }

    fn in_grid(&self, m: u8, n: u8) -> bool {
        self.x[1] < m && self.y[1] < n
    }
}

impl fmt::Display for MonomialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |f: &mut fmt::Formatter<'_>, name: &str, pair: [u8; 2]| -> fmt::Result {
            if pair[0] == pair[1] {
                write!(f, "{}{}^2", name, pair[0] as u16 + 1)
            } else {
                write!(
                    f,
                    "{}{} {}{}",
                    name,
                    pair[0] as u16 + 1,
                    name,
                    pair[1] as u16 + 1
                )
            }
        };
        var(f, "x", self.x)?;
        write!(f, " ")?;
        var(f, "y", self.y)
    }
}

impl Serialize for MonomialKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.cells().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[Cell; 2]>::deserialize(d)?;
        Ok(MonomialKey::from_cells(a, b))
    }
}

/// Integer coefficients travel through JSON as decimal strings (numbers
/// are accepted on input) so arbitrary precision survives serialization.
mod int_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BigInt::from(v)),
            Raw::Str(s) => s
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid integer literal {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Term {
    cells: MonomialKey,
    #[serde(with = "int_str")]
    coefficient: BigInt,
}

/// A sparse biquadratic form with exact integer coefficients. Zero
/// coefficients are never stored, so map equality is form equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiquadraticForm {
    m: u8,
    n: u8,
    coeffs: BTreeMap<MonomialKey, BigInt>,
}

impl BiquadraticForm {
    pub fn zero(m: u8, n: u8) -> Self {
        BiquadraticForm {
            m,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialKey, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    fn add(&mut self, key: MonomialKey, delta: BigInt) {
        if delta.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(key).or_insert_with(BigInt::zero);
        *entry += delta;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// The coefficient a_ijkl of x_i x_k y_j y_l, with 1-based indices.
    /// Invariant under the substitutions (i,j,k,l) -> (k,j,i,l) and
    /// (i,j,k,l) -> (k,l,i,j) by key canonicalization; absent monomials
    /// have coefficient zero.
    pub fn coefficient(&self, i: u16, j: u16, k: u16, l: u16) -> Result<BigInt, FormError> {
        let out_of_range = FormError::IndexOutOfRange {
            i,
            j,
            k,
            l,
            m: self.m,
            n: self.n,
        };
        let a = Cell::one_based(i, j).map_err(|_| out_of_range.clone())?;
        let b = Cell::one_based(k, l).map_err(|_| out_of_range.clone())?;
        let key = MonomialKey::from_cells(a, b);
        if !key.in_grid(self.m, self.n) {
            return Err(out_of_range);
        }
        Ok(self.coeffs.get(&key).cloned().unwrap_or_else(BigInt::zero))
    }

    /// Plain-text rendering, terms in canonical key order:
    /// `x1^2 y1^2 + 2 x1 x2 y1 y2 + ...`.
    pub fn render_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (key, coeff)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                out.push_str(if coeff.is_negative() { " - " } else { " + " });
            } else if coeff.is_negative() {
                out.push('-');
            }
            let abs = coeff.abs();
            if !abs.is_one() {
                out.push_str(&format!("{abs} "));
            }
            out.push_str(&key.to_string());
        }
        out
    }
}

impl Serialize for BiquadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<Term> = self
            .coeffs
            .iter()
            .map(|(k, c)| Term {
                cells: *k,
                coefficient: c.clone(),
            })
            .collect();
        let mut st = s.serialize_struct("BiquadraticForm", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BiquadraticForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: u8,
            n: u8,
            terms: Vec<Term>,
        }
        let raw = Raw::deserialize(d)?;
        let mut form = BiquadraticForm::zero(raw.m, raw.n);
        for t in raw.terms {
            if !t.cells.in_grid(raw.m, raw.n) {
                return Err(D::Error::custom(format!(
                    "monomial {} falls outside the {}x{} grid",
                    t.cells, raw.m, raw.n
                )));
            }
            form.add(t.cells, t.coefficient);
        }
        Ok(form)
    }
}

/// A sparse bilinear form Sum c_ij x_i y_j with exact integer entries.
/// Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    m: u8,
    n: u8,
    coeffs: BTreeMap<Cell, BigInt>,
}

impl BilinearForm {
    pub fn new(
        m: u8,
        n: u8,
        entries: impl IntoIterator<Item = (Cell, BigInt)>,
    ) -> Result<Self, FormError> {
        let mut coeffs: BTreeMap<Cell, BigInt> = BTreeMap::new();
        for (cell, coeff) in entries {
            if cell.row() >= m || cell.col() >= n {
                return Err(FormError::DimensionMismatch {
                    expected_m: m,
                    expected_n: n,
                    got_m: cell.row() + 1,
                    got_n: cell.col() + 1,
                });
            }
            let entry = coeffs.entry(cell).or_insert_with(BigInt::zero);
            *entry += coeff;
            if entry.is_zero() {
                coeffs.remove(&cell);
            }
        }
        Ok(BilinearForm { m, n, coeffs })
    }

    /// The form whose entries are 1 on the given cells: the square
    /// contributed by one edge.
    pub fn indicator(m: u8, n: u8, cells: impl IntoIterator<Item = Cell>) -> Self {
        BilinearForm::new(m, n, cells.into_iter().map(|c| (c, BigInt::one())))
            .expect("edge cells lie inside the grid")
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Cell, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, c: Cell) -> BigInt {
        self.coeffs.get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Row-major flattening over the full grid, for rank computations.
    pub fn flatten(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.m as usize * self.n as usize];
        for (cell, coeff) in &self.coeffs {
            out[cell.row() as usize * self.n as usize + cell.col() as usize] = coeff.clone();
        }
        out
    }
}

/// An ordered list of bilinear forms representing Sum g_t(x,y)^2.
/// Construction guarantees the list is nonempty, dimensions agree, and
/// no form is identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosDecomposition {
    forms: Vec<BilinearForm>,
}

impl SosDecomposition {
    pub fn new(forms: Vec<BilinearForm>) -> Result<Self, FormError> {
        let first = forms.first().ok_or(FormError::EmptyDecomposition)?;
        let (m, n) = (first.m, first.n);
        for f in &forms {
            if (f.m, f.n) != (m, n) {
                return Err(FormError::DimensionMismatch {
                    expected_m: m,
                    expected_n: n,
                    got_m: f.m,
                    got_n: f.n,
                });
            }
            if f.is_empty() {
                return Err(FormError::EmptyForm);
            }
        }
        Ok(SosDecomposition { forms })
    }

    pub fn m(&self) -> u8 {
        self.forms[0].m
    }

    pub fn n(&self) -> u8 {
        self.forms[0].n
    }

    pub fn forms(&self) -> &[BilinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Serialize for SosDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            cell: Cell,
            #[serde(with = "int_str")]
            coeff: &'a BigInt,
        }
        // Local serializer shim: int_str::serialize takes &BigInt, and
        // serde's `with` on a reference field needs the same signature.
        impl<'a> Entry<'a> {
            fn of(cell: Cell, coeff: &'a BigInt) -> Self {
                Entry { cell, coeff }
            }
        }
        let nested: Vec<Vec<Entry>> = self
            .forms
            .iter()
            .map(|f| f.coeffs.iter().map(|(c, v)| Entry::of(*c, v)).collect())
            .collect();
        nested.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SosDecomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            cell: Cell,
            #[serde(with = "int_str")]
            coeff: BigInt,
        }
        let nested = <Vec<Vec<Entry>>>::deserialize(d)?;
        // Grid dimensions are not stored in decomposition files; infer
        // the smallest grid containing every referenced cell.
        let mut m = 1u8;
        let mut n = 1u8;
        for e in nested.iter().flatten() {
            m = m.max(e.cell.row() + 1);
            n = n.max(e.cell.col() + 1);
        }
        let forms = nested
            .into_iter()
            .map(|entries| BilinearForm::new(m, n, entries.into_iter().map(|e| (e.cell, e.coeff))))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        SosDecomposition::new(forms).map_err(D::Error::custom)
    }
}

/// Expand the form attached to a graph directly, edge by edge: each
/// 1-edge contributes x_i^2 y_j^2, each 2-edge (x_i y_j + x_k y_l)^2,
/// each 3-edge (x_i y_j + x_k y_l + x_p y_q)^2. Independent of
/// [`expand`], which multiplies out arbitrary decompositions; the two
/// agree on canonical decompositions and the test suite holds them to
/// that.
pub fn build_form(g: &AugmentedGraph) -> Result<BiquadraticForm, FormError> {
    require_simple(g)?;
    let mut form = BiquadraticForm::zero(g.m(), g.n());
    let two = BigInt::from(2);
    for &c in g.e1() {
        form.add(MonomialKey::from_cells(c, c), BigInt::one());
    }
    for e in g.e2() {
        let [a, b] = e.halves();
        form.add(MonomialKey::from_cells(a, a), BigInt::one());
        form.add(MonomialKey::from_cells(b, b), BigInt::one());
        form.add(MonomialKey::from_cells(a, b), two.clone());
    }
    for e in g.e3() {
        let cells = e.cells();
        for &c in &cells {
            form.add(MonomialKey::from_cells(c, c), BigInt::one());
        }
        for p in 0..3 {
            for q in (p + 1)..3 {
                form.add(MonomialKey::from_cells(cells[p], cells[q]), two.clone());
            }
        }
    }
    Ok(form)
}

/// The decomposition that defines the graph's form: one bilinear form
/// per edge, entries 1 on the edge's cells; 1-edges first, then 2-edges,
/// then 3-edges, each block in sorted order.
pub fn canonical_decomposition(g: &AugmentedGraph) -> Result<SosDecomposition, FormError> {
    require_simple(g)?;
    if g.edge_count() == 0 {
        return Err(FormError::EmptyGraph);
    }
    let mut forms = Vec::with_capacity(g.edge_count());
    for &c in g.e1() {
        forms.push(BilinearForm::indicator(g.m(), g.n(), [c]));
    }
    for e in g.e2() {
        forms.push(BilinearForm::indicator(g.m(), g.n(), e.halves()));
    }
    for e in g.e3() {
        forms.push(BilinearForm::indicator(g.m(), g.n(), e.cells()));
    }
    SosDecomposition::new(forms)
}

/// Multiply out Sum g_t^2 exactly. The coefficient of a distinct-cell
/// monomial {(a,b),(c,d)} is 2 Sum_t c_ab c_cd (accumulated across every
/// cell pairing sharing the key), the diagonal coefficient of (a,b) is
/// Sum_t c_ab^2.
pub fn expand(d: &SosDecomposition) -> BiquadraticForm {
    let mut form = BiquadraticForm::zero(d.m(), d.n());
    let two = BigInt::from(2);
    for f in d.forms() {
        let support: Vec<(&Cell, &BigInt)> = f.entries().collect();
        for (p, (cell_p, coeff_p)) in support.iter().enumerate() {
            form.add(
                MonomialKey::from_cells(**cell_p, **cell_p),
                *coeff_p * *coeff_p,
            );
            for (cell_q, coeff_q) in &support[(p + 1)..] {
                form.add(
                    MonomialKey::from_cells(**cell_p, **cell_q),
                    &two * *coeff_p * *coeff_q,
                );
            }
        }
    }
    form
}

/// The exact rank over the rationals of the decomposition's flattened
/// coefficient vectors.
pub fn independent_rank(d: &SosDecomposition) -> usize {
    matrix_rank(d.forms().iter().map(|f| f.flatten()).collect())
}

/// Exact integer matrix rank by fraction-free (Bareiss) elimination.
/// The pivot is always the first nonzero entry in row-major order, so
/// the elimination path is deterministic.
pub fn matrix_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let (pivot_rows, rest) = rows.split_at_mut(rank + 1);
        let pivot = &pivot_rows[rank];
        for row in rest {
            for c in (col + 1)..ncols {
                let num = &pivot[col] * &row[c] - &row[col] * &pivot[c];
                row[c] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}

fn require_simple(g: &AugmentedGraph) -> Result<(), FormError> {
    match g.cell_usage().into_iter().find(|(_, uses)| *uses > 1) {
        Some((cell, _)) => Err(FormError::NotSimple(cell)),
        None => Ok(()),
    }
}
