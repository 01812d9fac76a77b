//! Bundled worked examples.
//!
//! Four constructions are shipped with the crate so the command-line
//! tools and the test suite can refer to them by name:
//!
//! - `g53`: 5x3, eight 1-edges plus one 2-edge and one 3-edge (10 edges);
//! - `g55`: 5x5, twelve 1-edges plus two 2-edges and two 3-edges (16);
//! - `g64`: 6x4, the incidence graph of the complete graph on four
//!   vertices as 1-edges plus two 2-edges and two 3-edges (16); rows
//!   1..6 stand for the vertex pairs 12, 13, 14, 23, 24, 34;
//! - `q55`: the 5x5 rank-15 form, realized as `g55` with only its first
//!   3-edge (15 edges); its canonical decomposition is the fifteen-square
//!   list the rank argument analyzes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::AugmentedGraph;

/// Identifier of a bundled construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinId {
    G53,
    G55,
    G64,
    Q55,
}

impl BuiltinId {
    pub const ALL: [BuiltinId; 4] = [BuiltinId::G53, BuiltinId::G55, BuiltinId::G64, BuiltinId::Q55];

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinId::G53 => "g53",
            BuiltinId::G55 => "g55",
            BuiltinId::G64 => "g64",
            BuiltinId::Q55 => "q55",
        }
    }

    /// The rank each construction is built to certify: its edge count.
    pub fn expected_rank(&self) -> usize {
        match self {
            BuiltinId::G53 => 10,
            BuiltinId::G55 => 16,
            BuiltinId::G64 => 16,
            BuiltinId::Q55 => 15,
        }
    }

    /// Alternate row labels, where the construction has them. The 6x4
    /// graph indexes its rows by the six vertex pairs of the complete
    /// graph on {1,2,3,4}.
    pub fn row_labels(&self) -> Option<&'static [&'static str]> {
        match self {
            BuiltinId::G64 => Some(&["12", "13", "14", "23", "24", "34"]),
            _ => None,
        }
    }

    pub fn graph(&self) -> AugmentedGraph {
        let g = match self {
            BuiltinId::G53 => AugmentedGraph::from_one_based(
                5,
                3,
                &[(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3), (4, 1), (5, 2)],
                &[((1, 3), (4, 2))],
                &[((2, 2), (3, 1), (5, 3))],
            ),
            BuiltinId::G55 => AugmentedGraph::from_one_based(
                5,
                5,
                &[
                    (1, 1),
                    (1, 2),
                    (1, 3),
                    (2, 1),
                    (2, 4),
                    (3, 2),
                    (3, 4),
                    (3, 5),
                    (4, 3),
                    (4, 5),
                    (5, 1),
                    (5, 5),
                ],
                &[((1, 4), (5, 2)), ((2, 3), (4, 2))],
                &[((2, 2), (4, 4), (5, 3)), ((2, 5), (3, 3), (4, 1))],
            ),
            BuiltinId::G64 => AugmentedGraph::from_one_based(
                6,
                4,
                &[
                    (1, 1),
                    (1, 2),
                    (2, 1),
                    (2, 3),
                    (3, 1),
                    (3, 4),
                    (4, 2),
                    (4, 3),
                    (5, 2),
                    (5, 4),
                    (6, 3),
                    (6, 4),
                ],
                &[((1, 3), (2, 4)), ((5, 1), (6, 2))],
                &[((1, 4), (3, 2), (4, 1)), ((2, 2), (5, 3), (6, 1))],
            ),
            BuiltinId::Q55 => AugmentedGraph::from_one_based(
                5,
                5,
                &[
                    (1, 1),
                    (1, 2),
                    (1, 3),
                    (2, 1),
                    (2, 4),
                    (3, 2),
                    (3, 4),
                    (3, 5),
                    (4, 3),
                    (4, 5),
                    (5, 1),
                    (5, 5),
                ],
                &[((1, 4), (5, 2)), ((2, 3), (4, 2))],
                &[((2, 2), (4, 4), (5, 3))],
            ),
        };
        g.expect("bundled constructions are well-formed")
    }
}

impl fmt::Display for BuiltinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinId {
    type Err = UnknownBuiltin;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownBuiltin(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown builtin {0:?}; available: g53, g55, g64, q55")]
pub struct UnknownBuiltin(pub String);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{
        is_generalized_cycle_free, CheckConfig, Condition, Violation,
    };
    use crate::form::{canonical_decomposition, independent_rank};
    use crate::graph::Cell;

    fn cell(r: u16, c: u16) -> Cell {
        Cell::one_based(r, c).unwrap()
    }

    #[test]
    fn every_builtin_is_simple_with_the_advertised_edge_count() {
        for id in BuiltinId::ALL {
            let g = id.graph();
            assert!(g.is_simple(), "{id}");
            assert_eq!(g.edge_count(), id.expected_rank(), "{id}");
        }
    }

    #[test]
    fn g53_occupies_all_but_two_cells() {
        let g = BuiltinId::G53.graph();
        let occ = g.occupied_cells();
        assert_eq!(occ.len(), 13);
        assert!(!occ.contains(&cell(4, 3)));
        assert!(!occ.contains(&cell(5, 1)));
    }

    #[test]
    fn g64_occupies_all_but_two_cells() {
        let g = BuiltinId::G64.graph();
        let occ = g.occupied_cells();
        assert_eq!(occ.len(), 22);
        assert!(!occ.contains(&cell(3, 3)));
        assert!(!occ.contains(&cell(4, 4)));
    }

    #[test]
    fn g53_g55_q55_pass_all_conditions() {
        for id in [BuiltinId::G53, BuiltinId::G55, BuiltinId::Q55] {
            let reports = is_generalized_cycle_free(&id.graph(), &CheckConfig::default());
            assert!(reports.iter().all(|r| r.passed), "{id}: {reports:?}");
        }
    }

    #[test]
    fn g64_fails_saturation_on_its_second_three_edge() {
        // Of the six non-half cells spanned by the 3-edge on rows
        // {2,5,6} and columns {1,2,3}, four are 1-edges and two are
        // 2-edge halves, so the subgrid is fully occupied and the
        // saturation condition genuinely fails; with occupied cells
        // outside the subgrid the extension condition falls with it.
        // Everything else passes.
        let g = BuiltinId::G64.graph();
        let reports = is_generalized_cycle_free(&g, &CheckConfig::default());
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
        assert_eq!(failed.len(), 2);
        assert_eq!(failed[0].condition, Condition::ThreeEdgeSaturation);
        assert_eq!(failed[1].condition, Condition::ThreeEdgeExtension);
        match failed[0].witness.as_ref().unwrap() {
            Violation::SaturatedThreeEdge { edge, occupied } => {
                assert_eq!(
                    edge.cells(),
                    [cell(2, 2), cell(5, 3), cell(6, 1)]
                );
                assert_eq!(
                    occupied,
                    &vec![
                        cell(2, 1),
                        cell(2, 3),
                        cell(5, 1),
                        cell(5, 2),
                        cell(6, 2),
                        cell(6, 3)
                    ]
                );
            }
            other => panic!("unexpected witness {other:?}"),
        }
        match failed[1].witness.as_ref().unwrap() {
            Violation::ExtensionCell { edge, .. } => {
                assert_eq!(edge.cells(), [cell(2, 2), cell(5, 3), cell(6, 1)]);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn q55_is_g55_minus_one_three_edge() {
        let q = BuiltinId::Q55.graph();
        let g = BuiltinId::G55.graph();
        assert_eq!(q.e1(), g.e1());
        assert_eq!(q.e2(), g.e2());
        assert_eq!(q.e3().len(), 1);
        assert!(g.e3().is_superset(q.e3()));
    }

    #[test]
    fn canonical_decompositions_have_full_rank() {
        for id in BuiltinId::ALL {
            let d = canonical_decomposition(&id.graph()).unwrap();
            assert_eq!(d.len(), id.expected_rank(), "{id}");
            assert_eq!(independent_rank(&d), id.expected_rank(), "{id}");
        }
    }

    #[test]
    fn names_round_trip() {
        for id in BuiltinId::ALL {
            assert_eq!(id.name().parse::<BuiltinId>().unwrap(), id);
        }
        assert!("g99".parse::<BuiltinId>().is_err());
    }
}
