//! Rank certificates and Gram-pattern replays.
//!
//! The rank claim for a generalized cycle-free simple graph is that the
//! sum-of-squares rank of its form equals its edge count. The machine
//! checkable content of that claim consists of (i) the combinatorial
//! conditions and (ii) two exact algebraic facts about the canonical
//! decomposition: it multiplies out to the graph's form and its
//! coefficient vectors are linearly independent. [`certify_sos_rank`]
//! bundles those checks into a [`RankCertificate`]; an invalid
//! certificate carries the failing reports and makes no rank claim.
//!
//! [`check_gram_pattern`] replays the orthogonality structure of a
//! decomposition: each occupied cell is assigned the column of its
//! coefficients across the decomposition's forms, and the strict pattern
//! expects unit norms, dot product 1 on co-edged pairs, and dot product
//! 0 everywhere else. The strict pattern is sufficient but not
//! necessary: a decomposition can represent the form while only the sum
//! relations (which expansion equality guarantees) hold, and the report
//! distinguishes the two.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::builtin::BuiltinId;
use crate::conditions::{is_generalized_cycle_free, CheckConfig, ConditionReport};
use crate::form::{
    build_form, canonical_decomposition, expand, independent_rank, matrix_rank, FormError,
    SosDecomposition,
};
use crate::graph::{to_canonical_json, AugmentedGraph, Cell};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("decomposition does not expand to the graph's form")]
    ExpansionMismatch,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// The map sending each cell to the column of its coefficients across a
/// decomposition's forms. Cells absent from every form get the zero
/// vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorAssignment {
    r: usize,
    vectors: BTreeMap<Cell, Vec<BigInt>>,
}

impl VectorAssignment {
    pub fn from_decomposition(d: &SosDecomposition) -> Self {
        let r = d.len();
        let mut vectors: BTreeMap<Cell, Vec<BigInt>> = BTreeMap::new();
        for (t, form) in d.forms().iter().enumerate() {
            for (cell, coeff) in form.entries() {
                vectors
                    .entry(*cell)
                    .or_insert_with(|| vec![BigInt::zero(); r])[t] = coeff.clone();
            }
        }
        VectorAssignment { r, vectors }
    }

    /// The length of every vector: the number of forms.
    pub fn len(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.r == 0
    }

    /// The vector of a cell; zero if the cell appears in no form.
    pub fn vector(&self, c: Cell) -> Vec<BigInt> {
        self.vectors
            .get(&c)
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.r])
    }

    pub fn dot(&self, a: Cell, b: Cell) -> BigInt {
        match (self.vectors.get(&a), self.vectors.get(&b)) {
            (Some(va), Some(vb)) => va.iter().zip(vb).map(|(x, y)| x * y).sum(),
            _ => BigInt::zero(),
        }
    }

    pub fn norm_sq(&self, c: Cell) -> BigInt {
        self.dot(c, c)
    }
}

/// One pair of occupied cells whose dot product differs from the strict
/// pattern's expectation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramViolation {
    pub cells: [Cell; 2],
    #[serde(with = "int_as_i64")]
    pub expected: i64,
    pub actual: String,
}

mod int_as_i64 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &i64, s: S) -> Result<S::Ok, S::Error> {
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        i64::deserialize(d)
    }
}

/// Outcome of replaying a decomposition's Gram structure against a
/// graph. `expansion_verified` is always true in a constructed report
/// (mismatch is an error); `strict_pattern` tells whether every pairwise
/// dot product matches the co-edge pattern, and when it is false only
/// the sum-level relations implied by expansion equality are known to
/// hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub expansion_verified: bool,
    pub strict_pattern: bool,
    pub vector_length: usize,
    pub pairs_checked: usize,
    pub violations: Vec<GramViolation>,
}

/// Replay the Gram structure of `d` against `g`.
///
/// Requires exact expansion equality (anything else is an error, not a
/// report). The strict pattern then expects, for the decomposition's
/// vector assignment: unit norm on every occupied cell, dot product 1 on
/// every pair of distinct cells joined by a common 2- or 3-edge, and dot
/// product 0 on every other pair of occupied cells.
pub fn check_gram_pattern(
    g: &AugmentedGraph,
    d: &SosDecomposition,
) -> Result<GramReport, CertificateError> {
    let target = build_form(g)?;
    if expand(d) != target {
        return Err(CertificateError::ExpansionMismatch);
    }
    let assignment = VectorAssignment::from_decomposition(d);
    let occupied: Vec<Cell> = g.occupied_cells().into_iter().collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0usize;
    for (idx, &a) in occupied.iter().enumerate() {
        for &b in &occupied[idx..] {
            pairs_checked += 1;
            let expected: i64 = if a == b || g.co_edged(a, b) { 1 } else { 0 };
            let actual = assignment.dot(a, b);
            if actual != BigInt::from(expected) {
                violations.push(GramViolation {
                    cells: [a, b],
                    expected,
                    actual: actual.to_string(),
                });
            }
        }
    }
    Ok(GramReport {
        expansion_verified: true,
        strict_pattern: violations.is_empty(),
        vector_length: assignment.len(),
        pairs_checked,
        violations,
    })
}

/// A machine-checked rank claim. Valid exactly when every condition
/// passed, the canonical decomposition expands to the graph's form, and
/// its independent rank equals the edge count; only then is
/// `claimed_rank` present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub graph: AugmentedGraph,
    /// SHA-256 of the canonical graph serialization, hex-encoded, making
    /// the certificate tamper-evident in regression suites.
    pub graph_hash: String,
    pub edge_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_rank: Option<usize>,
    pub condition_reports: Vec<ConditionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition_rank: Option<usize>,
    pub expansion_verified: bool,
    pub valid: bool,
}

/// Hex SHA-256 of the canonical (sorted-edge) JSON serialization.
pub fn graph_content_hash(g: &AugmentedGraph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(to_canonical_json(g).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Check the rank claim for a graph. Never errors: every failure mode
/// (a broken condition, a non-simple graph, an empty graph) is encoded
/// in the certificate, which is then invalid and claims no rank.
pub fn certify_sos_rank(g: &AugmentedGraph, cfg: &CheckConfig) -> RankCertificate {
    let condition_reports = is_generalized_cycle_free(g, cfg);
    let conditions_pass = condition_reports.iter().all(|r| r.passed);
    let edge_count = g.edge_count();

    let (decomposition_rank, expansion_verified) = match canonical_decomposition(g) {
        Ok(d) => {
            let expansion_verified = build_form(g).map(|f| expand(&d) == f).unwrap_or(false);
            (Some(independent_rank(&d)), expansion_verified)
        }
        Err(_) => (None, false),
    };

    let valid =
        conditions_pass && expansion_verified && decomposition_rank == Some(edge_count);
    RankCertificate {
        graph_hash: graph_content_hash(g),
        graph: g.clone(),
        edge_count,
        claimed_rank: valid.then_some(edge_count),
        condition_reports,
        decomposition_rank,
        expansion_verified,
        valid,
    }
}

/// The facts checked about the bundled fifteen-square form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FifteenSquareReport {
    /// The fifteen squares multiply out to the form exactly.
    pub expansion_equal: bool,
    /// Number of squares in the decomposition.
    pub square_count: usize,
    /// Exact rank of the fifteen flattened coefficient vectors.
    pub independent_rank: usize,
    /// The three halves of the 3-edge share one vector.
    pub forced_equalities: bool,
    /// Rank of the fourteen base vectors (1-edge cells plus one half
    /// per 2-edge).
    pub base_rank: usize,
    /// Rank of the base vectors with the shared 3-edge vector stacked
    /// on top.
    pub stacked_rank: usize,
    /// The shared vector lies outside the span of the base vectors.
    pub extra_vector_outside_base: bool,
    pub valid: bool,
}

/// Verify the bundled 5x5 rank-15 form: its fifteen-square decomposition
/// expands exactly, has independent rank 15, the base vectors (twelve
/// 1-edge cells and one half per 2-edge) span a 14-dimensional space,
/// and the vector shared by the 3-edge halves lies outside that span.
pub fn verify_q55() -> FifteenSquareReport {
    let g = BuiltinId::Q55.graph();
    let d = canonical_decomposition(&g).expect("bundled graph is simple and nonempty");
    let form = build_form(&g).expect("bundled graph is simple");
    let expansion_equal = expand(&d) == form;
    let assignment = VectorAssignment::from_decomposition(&d);

    let e3 = g.e3().iter().next().expect("bundled graph has one 3-edge");
    let [h0, h1, h2] = e3.cells();
    let u = assignment.vector(h0);
    let forced_equalities = u == assignment.vector(h1) && u == assignment.vector(h2);

    let mut base: Vec<Vec<BigInt>> = Vec::with_capacity(14);
    for &c in g.e1() {
        base.push(assignment.vector(c));
    }
    for e in g.e2() {
        base.push(assignment.vector(e.halves()[0]));
    }
    let base_rank = matrix_rank(base.clone());
    base.push(u);
    let stacked_rank = matrix_rank(base);

    let independent = independent_rank(&d);
    FifteenSquareReport {
        expansion_equal,
        square_count: d.len(),
        independent_rank: independent,
        forced_equalities,
        base_rank,
        stacked_rank,
        extra_vector_outside_base: stacked_rank == base_rank + 1,
        valid: expansion_equal
            && d.len() == 15
            && independent == 15
            && forced_equalities
            && base_rank == 14
            && stacked_rank == 15,
    }
}
