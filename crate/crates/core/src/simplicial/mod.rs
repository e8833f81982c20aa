//! Finite abstract simplicial complexes stored by their facets.
//!
//! Vertices carry structured labels ([`VertexLabel`]) that survive joins and
//! deletions, so a vertex of a link or a chessboard can always be traced back
//! to the square or robot move it stands for.

mod canon;
mod decomposable;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::confspace::GraphVertex;
use crate::error::{Error, Result};
use crate::params::SolutionType;

pub use canon::{are_isomorphic, canonical_form, find_isomorphism, CanonicalForm, DEFAULT_SEARCH_BUDGET};
pub use decomposable::is_vertex_decomposable;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexLabel {
    /// Square of a chessboard, 1-based.
    Square { row: u32, col: u32 },
    /// Robot move from an occupied graph vertex to an unoccupied one.
    Move { from: GraphVertex, to: GraphVertex },
    Point(u32),
    /// Tags added by [`join`] when the two factors share labels.
    First(Box<VertexLabel>),
    Second(Box<VertexLabel>),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Square { row, col } => write!(f, "r{row}c{col}"),
            VertexLabel::Move { from, to } => write!(f, "{from}>{to}"),
            VertexLabel::Point(i) => write!(f, "p{i}"),
            VertexLabel::First(inner) => write!(f, "a.{inner}"),
            VertexLabel::Second(inner) => write!(f, "b.{inner}"),
        }
    }
}

/// A simplicial complex given by its facets.
///
/// Internally the labels are sorted and deduplicated, every label occurs in
/// some facet, each facet is a sorted list of label indices, and the facet
/// list is sorted with no facet contained in another. Two complexes are
/// therefore `==` exactly when they have the same labelled simplices.
///
/// The *void* complex has no faces at all; the *empty* complex `{∅}` has
/// only the empty face (it is `Delta_{0,n}`, and the unit for joins).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    labels: Vec<VertexLabel>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    pub fn void() -> Self {
        Self {
            labels: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// `{∅}`
    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// The complex generated by the given faces (closed downward).
    pub fn from_faces<I, F>(faces: I) -> Self
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = VertexLabel>,
    {
        let faces: Vec<BTreeSet<VertexLabel>> = faces
            .into_iter()
            .map(|f| f.into_iter().collect())
            .collect();
        let labels: Vec<VertexLabel> = faces
            .iter()
            .flat_map(|f| f.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<&VertexLabel, u32> =
            labels.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
        let raw: Vec<Vec<u32>> = faces
            .iter()
            .map(|f| f.iter().map(|l| index[l]).collect())
            .collect();
        let facets = maximal_faces(raw);
        Self { labels, facets }
    }

    /// A single closed simplex on the given vertices.
    pub fn simplex<I: IntoIterator<Item = VertexLabel>>(vertices: I) -> Self {
        Self::from_faces([vertices])
    }

    /// `n` isolated points labelled `p1..pn`.
    pub fn points(n: u32) -> Self {
        Self::from_faces((1..=n).map(|i| [VertexLabel::Point(i)]))
    }

    /// A cycle on `n >= 3` points.
    pub fn cycle(n: u32) -> Self {
        Self::from_faces((1..=n).map(|i| [VertexLabel::Point(i), VertexLabel::Point(i % n + 1)]))
    }

    pub(crate) fn from_raw(labels: Vec<VertexLabel>, facets: Vec<Vec<u32>>) -> Self {
        let faces: Vec<Vec<VertexLabel>> = facets
            .iter()
            .map(|f| f.iter().map(|&v| labels[v as usize].clone()).collect())
            .collect();
        Self::from_faces(faces)
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, vertex: u32) -> &VertexLabel {
        &self.labels[vertex as usize]
    }

    pub fn vertex_of(&self, label: &VertexLabel) -> Option<u32> {
        self.labels.binary_search(label).ok().map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn labelled_facets(&self) -> Vec<Vec<VertexLabel>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.labels[v as usize].clone()).collect())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// True for `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// Dimension; `-1` for `{∅}`, `None` for the void complex.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Whether `face` (vertex indices, any order) is a face of the complex.
    pub fn contains_face(&self, face: &[u32]) -> bool {
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.facets.iter().any(|f| is_sorted_subset(&sorted, f))
    }

    /// Vertex indices of a labelled face, if every label is a vertex.
    pub fn face_indices(&self, face: &[VertexLabel]) -> Option<Vec<u32>> {
        let mut out: Vec<u32> = face.iter().map(|l| self.vertex_of(l)).collect::<Option<_>>()?;
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// All faces grouped by dimension: entry `k` holds the `k`-simplices in
    /// lexicographic order. The empty face is not listed.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<u32>>> {
        let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
        let mut sets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); top];
        for facet in &self.facets {
            for_each_nonempty_subset(facet, |s| {
                sets[s.len() - 1].insert(s.to_vec());
            });
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// `f_k` = number of `k`-simplices, `k >= 0`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().iter().map(Vec::len).collect()
    }

    /// Vertex indices adjacent to `v` in the 1-skeleton.
    pub fn neighbours(&self, v: u32) -> BTreeSet<u32> {
        self.facets
            .iter()
            .filter(|f| f.binary_search(&v).is_ok())
            .flat_map(|f| f.iter().copied())
            .filter(|&w| w != v)
            .collect()
    }

    /// The full subcomplex on the vertices for which `keep` holds.
    pub fn induced<F: Fn(u32) -> bool>(&self, keep: F) -> Self {
        let faces: Vec<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| keep(v)).collect())
            .collect();
        if self.is_void() {
            return Self::void();
        }
        Self::from_raw(self.labels.clone(), faces)
    }

    /// `lk(v) = { F \ v : v in F }`
    pub fn link_of_vertex(&self, v: u32) -> Self {
        let faces: Vec<Vec<u32>> = self
            .facets
            .iter()
            .filter(|f| f.binary_search(&v).is_ok())
            .map(|f| f.iter().copied().filter(|&w| w != v).collect())
            .collect();
        if faces.is_empty() {
            return Self::void();
        }
        Self::from_raw(self.labels.clone(), faces)
    }

    pub fn map_labels<F: Fn(&VertexLabel) -> VertexLabel>(&self, f: F) -> Self {
        let labels: Vec<VertexLabel> = self.labels.iter().map(f).collect();
        if self.is_void() {
            return Self::void();
        }
        Self::from_raw(labels, self.facets.clone())
    }

    /// Facet list export: a header line, then one facet per line as
    /// comma-separated sorted labels. `{∅}` is written as a single empty line.
    pub fn to_facet_text(&self, header: &str) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(header);
        out.push('\n');
        for facet in &self.facets {
            let line: Vec<String> = facet
                .iter()
                .map(|&v| self.labels[v as usize].to_string())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn for_each_nonempty_subset<F: FnMut(&[u32])>(set: &[u32], mut f: F) {
    let n = set.len();
    assert!(n < 64, "facet too large to enumerate");
    let mut buf = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        buf.clear();
        buf.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| set[i]));
        f(&buf);
    }
}

/// Sorted, deduplicated, inclusion-maximal members of `faces`.
pub(crate) fn maximal_faces(faces: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut faces: Vec<Vec<u32>> = faces
        .into_iter()
        .map(|mut f| {
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    faces.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for f in faces {
        if !kept.iter().any(|k| k.len() > f.len() && is_sorted_subset(&f, k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// The chessboard complex `Delta_{m,n}`: non-attacking rook placements on an
/// `m x n` board. `Delta_{0,n}` and `Delta_{m,0}` are `{∅}`.
pub fn chessboard(rows: u32, cols: u32) -> SimplicialComplex {
    let k = rows.min(cols);
    if k == 0 {
        return SimplicialComplex::empty();
    }
    // maximal placements use min(m, n) rooks
    let mut faces = Vec::new();
    let mut placement = Vec::with_capacity(k as usize);
    let (lines, across, transposed) = if rows <= cols {
        (rows, cols, false)
    } else {
        (cols, rows, true)
    };
    let mut used = vec![false; across as usize + 1];
    place_rooks(1, lines, across, &mut used, &mut placement, &mut faces, transposed);
    SimplicialComplex::from_faces(faces)
}

#[allow(clippy::too_many_arguments)]
fn place_rooks(
    line: u32,
    lines: u32,
    across: u32,
    used: &mut [bool],
    placement: &mut Vec<VertexLabel>,
    out: &mut Vec<Vec<VertexLabel>>,
    transposed: bool,
) {
    if line > lines {
        out.push(placement.clone());
        return;
    }
    for j in 1..=across {
        if used[j as usize] {
            continue;
        }
        used[j as usize] = true;
        placement.push(if transposed {
            VertexLabel::Square { row: j, col: line }
        } else {
            VertexLabel::Square { row: line, col: j }
        });
        place_rooks(line + 1, lines, across, used, placement, out, transposed);
        placement.pop();
        used[j as usize] = false;
    }
}

/// The join `K * L`: all unions of a face of `K` with a face of `L`.
///
/// `{∅}` is the unit and the void complex absorbs. If the label sets
/// intersect, the factors are tagged with [`VertexLabel::First`] /
/// [`VertexLabel::Second`].
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    if k.is_void() || l.is_void() {
        return SimplicialComplex::void();
    }
    if k.is_empty_complex() {
        return l.clone();
    }
    if l.is_empty_complex() {
        return k.clone();
    }
    let clash = {
        let ks: BTreeSet<&VertexLabel> = k.labels.iter().collect();
        l.labels.iter().any(|x| ks.contains(x))
    };
    join_labelled(k, l, clash)
}

/// The join with every label tagged by its side, so that the result's labels
/// do not depend on which vertices the factors happen to have.
pub fn join_tagged(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    if k.is_void() || l.is_void() {
        return SimplicialComplex::void();
    }
    join_labelled(k, l, true)
}

fn join_labelled(k: &SimplicialComplex, l: &SimplicialComplex, clash: bool) -> SimplicialComplex {
    let tag = |x: &VertexLabel, first: bool| -> VertexLabel {
        match (clash, first) {
            (false, _) => x.clone(),
            (true, true) => VertexLabel::First(Box::new(x.clone())),
            (true, false) => VertexLabel::Second(Box::new(x.clone())),
        }
    };
    let mut faces = Vec::with_capacity(k.facets.len() * l.facets.len());
    for f in &k.facets {
        for g in &l.facets {
            let face: Vec<VertexLabel> = f
                .iter()
                .map(|&v| tag(&k.labels[v as usize], true))
                .chain(g.iter().map(|&v| tag(&l.labels[v as usize], false)))
                .collect();
            faces.push(face);
        }
    }
    SimplicialComplex::from_faces(faces)
}

/// `K` with the closed simplex `s` removed: the full subcomplex on the
/// vertices not in `s`. The empty simplex leaves `K` unchanged.
pub fn delete_closed_simplex(k: &SimplicialComplex, s: &[VertexLabel]) -> Result<SimplicialComplex> {
    if s.is_empty() {
        return Ok(k.clone());
    }
    let describe = || {
        s.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let face = k
        .face_indices(s)
        .ok_or_else(|| Error::NotASimplex(format!("{{{}}}", describe())))?;
    if !k.contains_face(&face) {
        return Err(Error::NotASimplex(format!("{{{}}}", describe())));
    }
    Ok(k.induced(|v| face.binary_search(&v).is_err()))
}

/// The link predicted for a type-`(a,b,c,d)` 0-cell of `Conf_r(n, N)`:
/// `Delta_{a, N-b} * Delta_{b, n-a} = Delta_{a,d} * Delta_{b,c}`.
pub fn model_link(t: &SolutionType, left: u32, right: u32) -> Result<SimplicialComplex> {
    if t.a + t.c != left || t.b + t.d != right {
        return Err(Error::InvalidParameters(format!(
            "type {t} does not fit K_{{{left},{right}}}"
        )));
    }
    Ok(join(&chessboard(t.a, t.d), &chessboard(t.b, t.c)))
}

/// Human-readable name of the model link with empty factors dropped, e.g.
/// `Δ_{2,4} ⋆ Δ_{1,2}` or `Δ_{3,5}`.
pub fn describe_model_link(t: &SolutionType) -> String {
    let factors: Vec<String> = [(t.a, t.d), (t.b, t.c)]
        .into_iter()
        .filter(|&(m, n)| m > 0 && n > 0)
        .map(|(m, n)| format!("Δ_{{{m},{n}}}"))
        .collect();
    if factors.is_empty() {
        "∅".to_owned()
    } else {
        factors.join(" ⋆ ")
    }
}

/// Number of faces (including the empty face) of `Delta_{m,n}`:
/// `sum_k C(m,k) C(n,k) k!`.
pub fn chessboard_face_count(rows: u32, cols: u32) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for k in 0..=rows.min(cols) as u128 {
        if let Some(prev) = k.checked_sub(1) {
            term = term * (rows as u128 - prev) * (cols as u128 - prev) / k;
        }
        total += term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(row: u32, col: u32) -> VertexLabel {
        VertexLabel::Square { row, col }
    }

    /// Brute-force count of placements of `k` non-attacking rooks.
    fn placements(m: u32, n: u32, k: u32) -> usize {
        let squares: Vec<(u32, u32)> = (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        let total = squares.len();
        (0u64..(1u64 << total))
            .filter(|mask| mask.count_ones() == k)
            .filter(|mask| {
                let chosen: Vec<(u32, u32)> =
                    (0..total).filter(|i| mask >> i & 1 == 1).map(|i| squares[i]).collect();
                chosen.iter().enumerate().all(|(x, p)| {
                    chosen[x + 1..].iter().all(|q| p.0 != q.0 && p.1 != q.1)
                })
            })
            .count()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn chessboard_examples() {
        let d22 = chessboard(2, 2);
        assert_eq!(d22.vertex_count(), 4);
        assert_eq!(
            d22.labelled_facets(),
            vec![vec![sq(1, 1), sq(2, 2)], vec![sq(1, 2), sq(2, 1)]]
        );
        let d13 = chessboard(1, 3);
        assert_eq!(d13.f_vector(), vec![3]);
        assert_eq!(chessboard(2, 3).f_vector(), vec![6, 6]);
        assert!(chessboard(0, 4).is_empty_complex());
        assert!(chessboard(3, 0).is_empty_complex());
    }

    #[test]
    fn chessboard_f_vector_matches_enumeration() {
        for m in 1..=4u32 {
            for n in 1..=4u32 {
                let f = chessboard(m, n).f_vector();
                for k in 0..m.min(n) {
                    let closed = binomial(m as u64, k as u64 + 1)
                        * binomial(n as u64, k as u64 + 1)
                        * (1..=k as u64 + 1).product::<u64>();
                    assert_eq!(f[k as usize] as u64, closed, "Delta_{{{m},{n}}} f_{k}");
                    assert_eq!(f[k as usize], placements(m, n, k + 1), "Delta_{{{m},{n}}} f_{k}");
                }
            }
        }
    }

    #[test]
    fn chessboard_f_vector_closed_form_up_to_six() {
        for m in 1..=6u32 {
            for n in m..=6u32 {
                let f = chessboard(m, n).f_vector();
                for k in 0..m {
                    let closed = binomial(m as u64, k as u64 + 1)
                        * binomial(n as u64, k as u64 + 1)
                        * (1..=k as u64 + 1).product::<u64>();
                    assert_eq!(f[k as usize] as u64, closed);
                }
                assert_eq!(
                    chessboard_face_count(m, n),
                    1 + f.iter().map(|&x| x as u128).sum::<u128>()
                );
            }
        }
    }

    #[test]
    fn transposed_chessboards_are_isomorphic() {
        for (m, n) in [(2, 3), (1, 4), (2, 5)] {
            assert!(are_isomorphic(&chessboard(m, n), &chessboard(n, m)).unwrap());
        }
    }

    #[test]
    fn join_examples() {
        let theta = join(&SimplicialComplex::points(2), &SimplicialComplex::points(3));
        assert_eq!(theta.f_vector(), vec![5, 6]);
        assert!(theta.facets().iter().all(|f| f.len() == 2));

        let d35 = chessboard(3, 5);
        assert_eq!(join(&SimplicialComplex::empty(), &d35), d35);
        assert_eq!(join(&d35, &chessboard(0, 1)), d35);

        assert_eq!(join(&chessboard(2, 2), &chessboard(2, 2)).f_vector(), vec![8, 20, 16, 4]);
    }

    #[test]
    fn join_with_void_is_void() {
        assert!(join(&SimplicialComplex::void(), &chessboard(2, 2)).is_void());
    }

    #[test]
    fn join_tags_only_on_clash() {
        let k = SimplicialComplex::points(2);
        let l = chessboard(1, 2);
        let j = join(&k, &l);
        assert!(j.labels().iter().all(|x| !matches!(x, VertexLabel::First(_) | VertexLabel::Second(_))));
        let j2 = join(&k, &k);
        assert_eq!(j2.vertex_count(), 4);
        assert!(j2.labels().iter().all(|x| matches!(x, VertexLabel::First(_) | VertexLabel::Second(_))));
    }

    #[test]
    fn deletion_examples() {
        let d23 = chessboard(2, 3);
        assert_eq!(delete_closed_simplex(&d23, &[]).unwrap(), d23);

        let edge = d23.labelled_facets()[0].clone();
        let path = delete_closed_simplex(&d23, &edge).unwrap();
        assert_eq!(path.f_vector(), vec![4, 3]);
        // a path: two endpoints of degree 1, two interior vertices of degree 2
        let mut degrees: Vec<usize> = (0..4).map(|v| path.neighbours(v).len()).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 2, 2]);

        let d22 = chessboard(2, 2);
        let punctured = delete_closed_simplex(&d22, &[sq(1, 1)]).unwrap();
        assert_eq!(
            punctured.labelled_facets(),
            vec![vec![sq(1, 2), sq(2, 1)], vec![sq(2, 2)]]
        );
    }

    #[test]
    fn deletion_rejects_non_simplices() {
        let d22 = chessboard(2, 2);
        assert!(matches!(
            delete_closed_simplex(&d22, &[sq(1, 1), sq(1, 2)]),
            Err(Error::NotASimplex(_))
        ));
        assert!(matches!(
            delete_closed_simplex(&d22, &[sq(3, 3)]),
            Err(Error::NotASimplex(_))
        ));
    }

    #[test]
    fn deleting_everything_leaves_the_empty_complex() {
        let d11 = chessboard(1, 1);
        assert!(delete_closed_simplex(&d11, &[sq(1, 1)]).unwrap().is_empty_complex());
    }

    #[test]
    fn model_link_examples() {
        let t = SolutionType::new(3, 0, 1, 5);
        assert_eq!(model_link(&t, 4, 5).unwrap(), chessboard(3, 5));
        assert_eq!(describe_model_link(&t), "Δ_{3,5}");

        let t = SolutionType::new(1, 2, 3, 3);
        let expected = join(&chessboard(1, 3), &chessboard(2, 3));
        assert_eq!(model_link(&t, 4, 5).unwrap(), expected);
        assert_eq!(describe_model_link(&t), "Δ_{1,3} ⋆ Δ_{2,3}");

        let t = SolutionType::new(2, 2, 2, 2);
        let expected = join(&chessboard(2, 2), &chessboard(2, 2));
        assert_eq!(model_link(&t, 4, 4).unwrap(), expected);
        assert!(model_link(&t, 4, 5).is_err());
    }

    #[test]
    fn facet_text_export() {
        let text = chessboard(2, 2).to_facet_text("labels: square r<row>c<col>");
        assert_eq!(text, "# labels: square r<row>c<col>\nr1c1,r2c2\nr1c2,r2c1\n");
    }

    #[test]
    fn maximal_faces_drops_contained_faces() {
        let f = maximal_faces(vec![vec![2, 1], vec![1], vec![3], vec![1, 2], vec![]]);
        assert_eq!(f, vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn induced_and_link() {
        let d23 = chessboard(2, 3);
        let v = d23.vertex_of(&sq(1, 1)).unwrap();
        let lk = d23.link_of_vertex(v);
        assert_eq!(lk.f_vector(), vec![2]);
        let rest = d23.induced(|w| w != v);
        assert_eq!(rest.f_vector(), vec![5, 4]);
    }
}
