//! Vertex decomposability (non-pure version).
//!
//! `K` is vertex decomposable if it is a simplex (including `{∅}`), or it
//! has a shedding vertex `v`: `del(v)` and `lk(v)` are vertex decomposable
//! and no facet of `lk(v)` is a facet of `del(v)`.

use std::collections::HashMap;

use super::canon::{canonical_form_raw, CanonicalForm};
use super::{maximal_faces, SimplicialComplex};

/// Leaf budget for the canonical forms used as memo keys.
const MEMO_CANON_BUDGET: usize = 5_000;

#[derive(Clone, PartialEq, Eq, Hash)]
enum MemoKey {
    Canonical(CanonicalForm),
    Exact(Vec<Vec<u32>>),
}

struct Search {
    memo: HashMap<MemoKey, bool>,
    nodes: usize,
    budget: usize,
}

/// Drop unused vertex indices and renumber to `0..n`.
fn compact(facets: Vec<Vec<u32>>) -> (usize, Vec<Vec<u32>>) {
    let mut used: Vec<u32> = facets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let renumbered = facets
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|v| used.binary_search(&v).expect("used") as u32)
                .collect()
        })
        .collect();
    (used.len(), maximal_faces(renumbered))
}

impl Search {
    fn key(&self, vertices: usize, facets: &[Vec<u32>]) -> MemoKey {
        match canonical_form_raw(vertices, facets, MEMO_CANON_BUDGET) {
            Ok(form) => MemoKey::Canonical(form),
            Err(_) => MemoKey::Exact(facets.to_vec()),
        }
    }

    /// `None` once the node budget is spent.
    fn decide(&mut self, vertices: usize, facets: &[Vec<u32>]) -> Option<bool> {
        if facets.len() <= 1 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let key = self.key(vertices, facets);
        if let Some(&known) = self.memo.get(&key) {
            return Some(known);
        }
        let mut verdict = false;
        for v in 0..vertices as u32 {
            let link: Vec<Vec<u32>> = facets
                .iter()
                .filter(|f| f.binary_search(&v).is_ok())
                .map(|f| f.iter().copied().filter(|&w| w != v).collect())
                .collect();
            let deletion = maximal_faces(
                facets
                    .iter()
                    .map(|f| f.iter().copied().filter(|&w| w != v).collect())
                    .collect(),
            );
            // link facets are F \ v; shedding needs none of them maximal in del(v)
            if link.iter().any(|g| deletion.binary_search(g).is_ok()) {
                continue;
            }
            let (dn, df) = compact(deletion);
            if !self.decide(dn, &df)? {
                continue;
            }
            let (ln, lf) = compact(link);
            if self.decide(ln, &lf)? {
                verdict = true;
                break;
            }
        }
        self.memo.insert(key, verdict);
        Some(verdict)
    }
}

/// `Some(true)` / `Some(false)` when the search settles, `None` when more than
/// `node_budget` recursive calls would be needed.
pub fn is_vertex_decomposable(k: &SimplicialComplex, node_budget: usize) -> Option<bool> {
    if k.is_void() {
        return Some(true);
    }
    let mut search = Search {
        memo: HashMap::new(),
        nodes: 0,
        budget: node_budget,
    };
    search.decide(k.vertex_count(), k.facets())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{chessboard, delete_closed_simplex, VertexLabel};

    const BUDGET: usize = 100_000;

    #[test]
    fn simplex_is_decomposable() {
        let tri = SimplicialComplex::simplex((1..=3).map(VertexLabel::Point));
        assert_eq!(is_vertex_decomposable(&tri, BUDGET), Some(true));
        assert_eq!(is_vertex_decomposable(&SimplicialComplex::empty(), BUDGET), Some(true));
    }

    #[test]
    fn small_chessboards() {
        assert_eq!(is_vertex_decomposable(&chessboard(2, 3), BUDGET), Some(true));
        assert_eq!(is_vertex_decomposable(&chessboard(1, 3), BUDGET), Some(true));
        // two disjoint edges: every vertex's link is a facet of its deletion
        assert_eq!(is_vertex_decomposable(&chessboard(2, 2), BUDGET), Some(false));
    }

    #[test]
    fn torus_is_not_decomposable() {
        // Delta_{3,3} is a pure 2-dimensional torus, so it is not shellable
        assert_eq!(is_vertex_decomposable(&chessboard(3, 3), BUDGET), Some(false));
    }

    #[test]
    fn hexagon_minus_an_edge_is_a_path() {
        let d23 = chessboard(2, 3);
        let edge = d23.labelled_facets()[0].clone();
        let path = delete_closed_simplex(&d23, &edge).unwrap();
        assert_eq!(is_vertex_decomposable(&path, BUDGET), Some(true));
    }

    #[test]
    fn disconnected_graph_is_not_decomposable() {
        let two_edges = SimplicialComplex::from_faces(
            [[1, 2], [3, 4]].map(|e| e.map(VertexLabel::Point)),
        );
        assert_eq!(is_vertex_decomposable(&two_edges, BUDGET), Some(false));
        // points are fine
        assert_eq!(is_vertex_decomposable(&SimplicialComplex::points(4), BUDGET), Some(true));
    }

    #[test]
    fn tiny_budget_reports_unknown() {
        assert_eq!(is_vertex_decomposable(&chessboard(3, 4), 2), None);
    }
}
