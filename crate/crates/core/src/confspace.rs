//! The discrete configuration space `Conf_r(n, N)` of `r` unlabelled robots
//! on `K_{n,N}` as an explicit cube complex.
//!
//! A cell is a set of pairwise disjoint graph vertices (stationary robots)
//! and graph edges (moving robots). Its dimension is the number of edges; a
//! `d`-cell has `2d` facets, obtained by replacing one edge by either
//! endpoint.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::SolutionType;
use crate::simplicial::{SimplicialComplex, VertexLabel};

/// Default cap on the number of 0-cells `binomial(n + N, r)`.
pub const DEFAULT_MAX_ZERO_CELLS: u64 = 1_000_000;

/// A vertex of `K_{n,N}`, 1-based on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GraphVertex {
    Left(u32),
    Right(u32),
}

impl fmt::Display for GraphVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphVertex::Left(i) => write!(f, "L{i}"),
            GraphVertex::Right(j) => write!(f, "R{j}"),
        }
    }
}

/// The edge `Left(left) - Right(right)` of `K_{n,N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub left: u32,
    pub right: u32,
}

impl GraphEdge {
    pub fn endpoints(&self) -> [GraphVertex; 2] {
        [GraphVertex::Left(self.left), GraphVertex::Right(self.right)]
    }
}

impl fmt::Display for GraphEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(L{}-R{})", self.left, self.right)
    }
}

/// Complete bipartite graph `K_{n,N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: u32,
    pub right: u32,
}

impl BipartiteGraph {
    pub fn vertices(&self) -> Vec<GraphVertex> {
        (1..=self.left)
            .map(GraphVertex::Left)
            .chain((1..=self.right).map(GraphVertex::Right))
            .collect()
    }

    pub fn edges(&self) -> Vec<GraphEdge> {
        (1..=self.left)
            .flat_map(|left| (1..=self.right).map(move |right| GraphEdge { left, right }))
            .collect()
    }
}

/// A cell, keyed canonically by its sorted stationary vertices and sorted
/// moving edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CubeCell {
    pub stationary: Vec<GraphVertex>,
    pub moving: Vec<GraphEdge>,
}

impl CubeCell {
    pub fn zero(mut occupied: Vec<GraphVertex>) -> Self {
        occupied.sort();
        Self {
            stationary: occupied,
            moving: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.moving.len()
    }

    /// One line of the cell export: `d; v1,v2,...; (u1-w1),(u2-w2),...`.
    pub fn to_line(&self) -> String {
        let vs: Vec<String> = self.stationary.iter().map(ToString::to_string).collect();
        let es: Vec<String> = self.moving.iter().map(ToString::to_string).collect();
        format!("{}; {}; {}", self.dimension(), vs.join(","), es.join(","))
    }

    fn facet(&self, edge: usize, endpoint: GraphVertex) -> CubeCell {
        let mut stationary = self.stationary.clone();
        let at = stationary.binary_search(&endpoint).unwrap_or_else(|i| i);
        stationary.insert(at, endpoint);
        let mut moving = self.moving.clone();
        moving.remove(edge);
        CubeCell { stationary, moving }
    }
}

impl fmt::Display for CubeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_zero_cells: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_zero_cells: DEFAULT_MAX_ZERO_CELLS,
        }
    }
}

/// `Conf_r(n, N)` with face maps and, for every 0-cell, the cells having it as
/// a corner.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    robots: u32,
    graph: BipartiteGraph,
    cells: Vec<Vec<CubeCell>>,
    index: Vec<HashMap<CubeCell, usize>>,
    /// `faces[d][i][k] = [left, right]`: the `(d-1)`-cells obtained from
    /// cell `i` of dimension `d` by replacing its `k`-th edge with its left or
    /// right endpoint. Empty for `d = 0`.
    faces: Vec<Vec<Vec<[usize; 2]>>>,
    /// `star[v]` lists `(dimension, index)` of every positive-dimensional
    /// cell with 0-cell `v` as a corner.
    star: Vec<Vec<(usize, usize)>>,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Build `Conf_r(n, N)` with the default 0-cell cap.
pub fn build_conf(robots: u32, left: u32, right: u32) -> Result<CubeComplex> {
    build_conf_with(robots, left, right, &BuildOptions::default())
}

pub fn build_conf_with(robots: u32, left: u32, right: u32, options: &BuildOptions) -> Result<CubeComplex> {
    if robots < 1 || left < 1 || right < 1 {
        return Err(Error::InvalidParameters(format!(
            "Conf_{robots}({left},{right}) needs r, n, N >= 1"
        )));
    }
    let total = left as u64 + right as u64;
    if robots as u64 > total {
        return Err(Error::InvalidParameters(format!(
            "{robots} robots do not fit on K_{{{left},{right}}}"
        )));
    }
    let zero_cells = binomial(total, robots as u64);
    if zero_cells > options.max_zero_cells as u128 {
        return Err(Error::Resource {
            what: "0-cells of the configuration space",
            size: zero_cells,
            limit: options.max_zero_cells as u128,
        });
    }

    let graph = BipartiteGraph { left, right };
    let all_vertices = graph.vertices();
    let top = robots.min(left).min(right) as usize;
    let mut cells: Vec<Vec<CubeCell>> = Vec::new();
    for d in 0..=top {
        let stationary_count = robots as usize - d;
        if stationary_count + 2 * d > total as usize {
            break;
        }
        let mut layer = Vec::new();
        for ls in (1..=left).combinations(d) {
            for rs in (1..=right).combinations(d) {
                for matched in rs.iter().copied().permutations(d) {
                    let moving: Vec<GraphEdge> = ls
                        .iter()
                        .zip(&matched)
                        .map(|(&l, &r)| GraphEdge { left: l, right: r })
                        .collect();
                    let free: Vec<GraphVertex> = all_vertices
                        .iter()
                        .copied()
                        .filter(|v| match v {
                            GraphVertex::Left(i) => !ls.contains(i),
                            GraphVertex::Right(j) => !rs.contains(j),
                        })
                        .collect();
                    for stationary in free.into_iter().combinations(stationary_count) {
                        layer.push(CubeCell {
                            stationary,
                            moving: moving.clone(),
                        });
                    }
                }
            }
        }
        layer.sort();
        cells.push(layer);
    }

    let index: Vec<HashMap<CubeCell, usize>> = cells
        .iter()
        .map(|layer| layer.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();

    let mut faces: Vec<Vec<Vec<[usize; 2]>>> = vec![Vec::new()];
    for d in 1..cells.len() {
        let mut layer_faces = Vec::with_capacity(cells[d].len());
        for cell in &cells[d] {
            let mut per_edge = Vec::with_capacity(d);
            for (k, edge) in cell.moving.iter().enumerate() {
                let [l, r] = edge.endpoints();
                let lookup = |endpoint| {
                    index[d - 1].get(&cell.facet(k, endpoint)).copied().ok_or_else(|| {
                        Error::Inconsistent(format!("facet of {cell} missing from the complex"))
                    })
                };
                per_edge.push([lookup(l)?, lookup(r)?]);
            }
            layer_faces.push(per_edge);
        }
        faces.push(layer_faces);
    }

    let mut star = vec![Vec::new(); cells[0].len()];
    for (d, layer) in cells.iter().enumerate().skip(1) {
        for (i, cell) in layer.iter().enumerate() {
            for mask in 0u64..(1u64 << d) {
                let mut occupied = cell.stationary.clone();
                for (k, edge) in cell.moving.iter().enumerate() {
                    occupied.push(edge.endpoints()[(mask >> k & 1) as usize]);
                }
                let corner = CubeCell::zero(occupied);
                let v = index[0][&corner];
                star[v].push((d, i));
            }
        }
    }

    Ok(CubeComplex {
        robots,
        graph,
        cells,
        index,
        faces,
        star,
    })
}

impl CubeComplex {
    pub fn robots(&self) -> u32 {
        self.robots
    }

    pub fn graph(&self) -> BipartiteGraph {
        self.graph
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[CubeCell] {
        self.cells.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn zero_cells(&self) -> &[CubeCell] {
        &self.cells[0]
    }

    pub fn index_of(&self, cell: &CubeCell) -> Option<usize> {
        self.index.get(cell.dimension())?.get(cell).copied()
    }

    /// `[left, right]` facet indices per moving edge of cell `i` in dimension `d`.
    pub fn facets_of(&self, dim: usize, i: usize) -> &[[usize; 2]] {
        &self.faces[dim][i]
    }

    /// Cell counts by dimension.
    pub fn f_vector(&self) -> Vec<u64> {
        self.cells.iter().map(|l| l.len() as u64).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    fn zero_cell_index(&self, v: &CubeCell) -> Result<usize> {
        if v.dimension() != 0 {
            return Err(Error::NotAZeroCell(v.to_string()));
        }
        self.index[0]
            .get(v)
            .copied()
            .ok_or_else(|| Error::NotAZeroCell(v.to_string()))
    }

    /// `(a, b, c, d)`: occupied left, occupied right, free left, free right.
    pub fn classify_zero_cell(&self, v: &CubeCell) -> Result<SolutionType> {
        self.zero_cell_index(v)?;
        let a = v
            .stationary
            .iter()
            .filter(|x| matches!(x, GraphVertex::Left(_)))
            .count() as u32;
        let b = self.robots - a;
        Ok(SolutionType::new(a, b, self.graph.left - a, self.graph.right - b))
    }

    /// Simplicial link of a 0-cell: a `k`-simplex for every `(k+1)`-cell
    /// with `v` as a corner, on vertices labelled by robot moves.
    pub fn vertex_link(&self, v: &CubeCell) -> Result<SimplicialComplex> {
        let idx = self.zero_cell_index(v)?;
        let occupied: BTreeSet<GraphVertex> = v.stationary.iter().copied().collect();
        let faces: Vec<Vec<VertexLabel>> = self.star[idx]
            .iter()
            .map(|&(d, i)| {
                self.cells[d][i]
                    .moving
                    .iter()
                    .map(|e| {
                        let [l, r] = e.endpoints();
                        let (from, to) = if occupied.contains(&l) { (l, r) } else { (r, l) };
                        VertexLabel::Move { from, to }
                    })
                    .collect()
            })
            .collect();
        if faces.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        Ok(SimplicialComplex::from_faces(faces))
    }

    /// One representative 0-cell per solution type (the least in cell order).
    pub fn type_representatives(&self) -> BTreeMap<SolutionType, CubeCell> {
        let mut out = BTreeMap::new();
        for v in self.zero_cells() {
            let t = self.classify_zero_cell(v).expect("own 0-cell");
            out.entry(t).or_insert_with(|| v.clone());
        }
        out
    }

    /// All vertex links, in 0-cell order, computed in parallel.
    pub fn all_vertex_links(&self) -> Vec<(SolutionType, SimplicialComplex)> {
        self.zero_cells()
            .par_iter()
            .map(|v| {
                (
                    self.classify_zero_cell(v).expect("own 0-cell"),
                    self.vertex_link(v).expect("own 0-cell"),
                )
            })
            .collect()
    }

    /// Plain-text cell list: header line then one cell per line.
    pub fn to_cell_text(&self) -> String {
        let mut out = format!(
            "# Conf_{}({},{}) cells: dimension; stationary vertices; moving edges\n",
            self.robots, self.graph.left, self.graph.right
        );
        for layer in &self.cells {
            for cell in layer {
                out.push_str(&cell.to_line());
                out.push('\n');
            }
        }
        out
    }
}

/// Whether every clique of the 1-skeleton of `k` spans a simplex.
pub fn is_flag(k: &SimplicialComplex) -> bool {
    let n = k.vertex_count();
    let adjacency: Vec<BTreeSet<u32>> = (0..n as u32).map(|v| k.neighbours(v)).collect();
    let mut flag = true;
    bron_kerbosch(
        &adjacency,
        Vec::new(),
        (0..n as u32).collect(),
        BTreeSet::new(),
        &mut |clique| {
            if !k.contains_face(clique) {
                flag = false;
            }
        },
    );
    flag
}

fn bron_kerbosch<F: FnMut(&[u32])>(
    adjacency: &[BTreeSet<u32>],
    clique: Vec<u32>,
    mut candidates: BTreeSet<u32>,
    mut excluded: BTreeSet<u32>,
    report: &mut F,
) {
    if candidates.is_empty() {
        if excluded.is_empty() && !clique.is_empty() {
            report(&clique);
        }
        return;
    }
    let pivot = *candidates
        .union(&excluded)
        .max_by_key(|u| adjacency[**u as usize].intersection(&candidates).count())
        .expect("non-empty");
    let branch: Vec<u32> = candidates
        .iter()
        .copied()
        .filter(|v| !adjacency[pivot as usize].contains(v))
        .collect();
    for v in branch {
        let nbrs = &adjacency[v as usize];
        let mut next = clique.clone();
        next.push(v);
        bron_kerbosch(
            adjacency,
            next,
            candidates.intersection(nbrs).copied().collect(),
            excluded.intersection(nbrs).copied().collect(),
            report,
        );
        candidates.remove(&v);
        excluded.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{are_isomorphic, chessboard, join, model_link};

    /// Independent count of d-cells: choose d edges forming a matching, then
    /// r - d stationary vertices among the rest, by brute force over subsets.
    fn brute_force_f_vector(r: u32, n: u32, m: u32) -> Vec<u64> {
        let graph = BipartiteGraph { left: n, right: m };
        let edges = graph.edges();
        let vertices = graph.vertices();
        let mut counts = vec![0u64; r as usize + 1];
        for emask in 0u64..(1u64 << edges.len()) {
            let chosen: Vec<GraphEdge> =
                (0..edges.len()).filter(|i| emask >> i & 1 == 1).map(|i| edges[i]).collect();
            if chosen.len() > r as usize {
                continue;
            }
            let mut touched = BTreeSet::new();
            if !chosen.iter().all(|e| e.endpoints().iter().all(|v| touched.insert(*v))) {
                continue;
            }
            let free = vertices.len() - touched.len();
            counts[chosen.len()] += binomial(free as u64, (r as usize - chosen.len()) as u64) as u64;
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn f_vector_examples() {
        let c = build_conf(2, 3, 3).unwrap();
        assert_eq!(c.f_vector(), vec![15, 36, 18]);
        assert_eq!(c.euler_characteristic(), -3);

        let c = build_conf(3, 4, 5).unwrap();
        assert_eq!(c.f_vector()[0], 84);
        assert_eq!(c.f_vector()[1], 420);

        let c = build_conf(1, 2, 2).unwrap();
        assert_eq!(c.f_vector(), vec![4, 4]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn f_vector_matches_brute_force() {
        for (r, n, m) in [(2, 3, 3), (2, 2, 3), (3, 3, 3), (3, 2, 4), (1, 3, 2), (4, 3, 3)] {
            assert_eq!(build_conf(r, n, m).unwrap().f_vector(), brute_force_f_vector(r, n, m));
        }
    }

    #[test]
    fn zero_cells_are_binomial_over_grid() {
        for r in 1..=4 {
            for n in 1..=5 {
                for m in 1..=6 {
                    if r > n + m {
                        continue;
                    }
                    let c = build_conf(r, n, m).unwrap();
                    assert_eq!(c.f_vector()[0] as u128, binomial((n + m) as u64, r as u64));
                }
            }
        }
    }

    #[test]
    fn ordered_dimension_is_robot_count() {
        for (r, n, m) in [(2, 2, 3), (2, 3, 5), (3, 3, 4), (3, 4, 4)] {
            assert_eq!(build_conf(r, n, m).unwrap().dimension(), r as usize);
        }
        assert_eq!(build_conf(5, 3, 3).unwrap().dimension(), 1);
    }

    #[test]
    fn face_closure() {
        let c = build_conf(3, 3, 4).unwrap();
        for d in 1..=c.dimension() {
            for (i, cell) in c.cells(d).iter().enumerate() {
                let faces = c.facets_of(d, i);
                assert_eq!(faces.len(), d);
                for (k, [l, r]) in faces.iter().enumerate() {
                    let [lv, rv] = cell.moving[k].endpoints();
                    assert_eq!(c.cells(d - 1)[*l], cell.facet(k, lv));
                    assert_eq!(c.cells(d - 1)[*r], cell.facet(k, rv));
                }
            }
        }
    }

    #[test]
    fn invalid_and_oversized_requests() {
        assert!(matches!(build_conf(0, 3, 3), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_conf(7, 3, 3), Err(Error::InvalidParameters(_))));
        let small = BuildOptions { max_zero_cells: 100 };
        assert!(build_conf_with(3, 4, 5, &small).is_ok());
        assert!(matches!(build_conf_with(4, 4, 5, &small), Err(Error::Resource { size: 126, .. })));
    }

    #[test]
    fn classification_examples() {
        use GraphVertex::{Left as L, Right as R};
        let c = build_conf(3, 4, 5).unwrap();
        let cell = |vs: Vec<GraphVertex>| CubeCell::zero(vs);
        assert_eq!(
            c.classify_zero_cell(&cell(vec![L(1), L(2), L(3)])).unwrap(),
            SolutionType::new(3, 0, 1, 5)
        );
        assert_eq!(
            c.classify_zero_cell(&cell(vec![L(2), L(3), R(3)])).unwrap(),
            SolutionType::new(2, 1, 2, 4)
        );
        assert_eq!(
            c.classify_zero_cell(&cell(vec![R(1), R(2), R(3)])).unwrap(),
            SolutionType::new(0, 3, 4, 2)
        );
        assert!(matches!(
            c.classify_zero_cell(&cell(vec![R(1), R(2), R(9)])),
            Err(Error::NotAZeroCell(_))
        ));
        assert!(matches!(c.vertex_link(&cell(vec![L(1)])), Err(Error::NotAZeroCell(_))));
    }

    #[test]
    fn surface_links_are_cycles() {
        use GraphVertex::{Left as L, Right as R};
        let c = build_conf(2, 3, 3).unwrap();
        let same = c.vertex_link(&CubeCell::zero(vec![L(1), L(2)])).unwrap();
        assert_eq!(same.f_vector(), vec![6, 6]);
        assert!(are_isomorphic(&same, &SimplicialComplex::cycle(6)).unwrap());
        let opposite = c.vertex_link(&CubeCell::zero(vec![L(1), R(1)])).unwrap();
        assert_eq!(opposite.f_vector(), vec![4, 4]);
        assert!(are_isomorphic(&opposite, &SimplicialComplex::cycle(4)).unwrap());
        let two_points = SimplicialComplex::points(2);
        assert!(are_isomorphic(&opposite, &join(&two_points, &two_points)).unwrap());
    }

    #[test]
    fn theta_graph_link() {
        use GraphVertex::{Left as L, Right as R};
        let c = build_conf(2, 3, 4).unwrap();
        let lk = c.vertex_link(&CubeCell::zero(vec![L(1), R(1)])).unwrap();
        let theta = join(&SimplicialComplex::points(2), &SimplicialComplex::points(3));
        assert!(are_isomorphic(&lk, &theta).unwrap());
    }

    #[test]
    fn link_labels_are_moves() {
        use GraphVertex::{Left as L, Right as R};
        let c = build_conf(1, 2, 2).unwrap();
        let lk = c.vertex_link(&CubeCell::zero(vec![L(1)])).unwrap();
        assert_eq!(
            lk.labelled_facets(),
            vec![
                vec![VertexLabel::Move { from: L(1), to: R(1) }],
                vec![VertexLabel::Move { from: L(1), to: R(2) }]
            ]
        );
    }

    #[test]
    fn full_graph_has_empty_links() {
        let c = build_conf(4, 2, 2).unwrap();
        assert_eq!(c.f_vector(), vec![1]);
        assert!(c.vertex_link(&c.zero_cells()[0].clone()).unwrap().is_empty_complex());
    }

    #[test]
    fn links_match_model_and_are_flag() {
        let c = build_conf(3, 4, 5).unwrap();
        for (t, lk) in c.all_vertex_links() {
            assert!(is_flag(&lk));
            assert!(are_isomorphic(&lk, &model_link(&t, 4, 5).unwrap()).unwrap());
        }
    }

    #[test]
    fn flag_examples() {
        assert!(is_flag(&SimplicialComplex::cycle(6)));
        assert!(!is_flag(&SimplicialComplex::cycle(3)));
        assert!(is_flag(&chessboard(3, 3)));
        let filled = SimplicialComplex::simplex((1..=3).map(VertexLabel::Point));
        assert!(is_flag(&filled));
        // boundary of a tetrahedron: every triangle present, the 4-clique is not
        let boundary = SimplicialComplex::from_faces(
            [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]].map(|f| f.map(VertexLabel::Point)),
        );
        assert!(!is_flag(&boundary));
    }

    #[test]
    fn cell_export_lines() {
        let c = build_conf(1, 1, 1).unwrap();
        assert_eq!(c.to_cell_text(), "# Conf_1(1,1) cells: dimension; stationary vertices; moving edges\n0; L1; \n0; R1; \n1; ; (L1-R1)\n");
    }
}
