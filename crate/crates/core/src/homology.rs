//! Reduced integer homology of simplicial and cubical complexes.
//!
//! Chain groups are indexed from degree `-1` (the augmentation). Ranks and
//! torsion come from the Smith normal form of each boundary matrix,
//! computed by sparse elimination over checked `i64`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::confspace::CubeComplex;
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Integer matrix stored as `(row, col, value)` triplets with no zeros and
/// no repeated positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Repeated positions are summed; zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((r, c)).or_insert(0) += v;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect();
        Self { rows, cols, entries }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self * other`, failing on overflow.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(r, c, v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(i, k, a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let prod = a.checked_mul(b).ok_or(Error::Overflow("matrix product"))?;
                    let slot = acc.entry((i, j)).or_insert(0);
                    *slot = slot.checked_add(prod).ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect(),
        })
    }

    /// Text export: `rows cols nnz` header, then one `row col value` line per
    /// entry, 0-based.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.entries.len());
        for (r, c, v) in &self.entries {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }
}

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl SmithForm {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<u64> {
        self.invariant_factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sparse elimination state; rows hold `col -> value`, `cols` holds the
/// rows with a nonzero in each column.
struct Elimination {
    rows: Vec<BTreeMap<usize, i64>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Elimination {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows];
        let mut cols = vec![BTreeSet::new(); m.cols];
        for &(r, c, v) in &m.entries {
            rows[r].insert(c, v);
            cols[c].insert(r);
        }
        Self { rows, cols }
    }

    /// Smallest absolute value, ties broken by the Markowitz count.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<((u64, usize), (usize, usize))> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, &v) in row {
                let cost = (row.len() - 1) * (self.cols[j].len() - 1);
                let key = (v.unsigned_abs(), cost);
                if best.is_none_or(|(b, _)| key < b) {
                    best = Some((key, (i, j)));
                    if key == (1, 0) {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, p)| p)
    }

    /// `row[target] -= q * row[source]`
    fn row_axpy(&mut self, target: usize, source: usize, q: i64) -> Result<()> {
        let src: Vec<(usize, i64)> = self.rows[source].iter().map(|(&c, &v)| (c, v)).collect();
        for (c, v) in src {
            let delta = q.checked_mul(v).ok_or(Error::Overflow("Smith normal form"))?;
            let slot = self.rows[target].entry(c).or_insert(0);
            *slot = slot.checked_sub(delta).ok_or(Error::Overflow("Smith normal form"))?;
            if *slot == 0 {
                self.rows[target].remove(&c);
                self.cols[c].remove(&target);
            } else {
                self.cols[c].insert(target);
            }
        }
        Ok(())
    }

    /// `col[target] -= q * col[source]`
    fn col_axpy(&mut self, target: usize, source: usize, q: i64) -> Result<()> {
        let src: Vec<usize> = self.cols[source].iter().copied().collect();
        for r in src {
            let v = self.rows[r][&source];
            let delta = q.checked_mul(v).ok_or(Error::Overflow("Smith normal form"))?;
            let slot = self.rows[r].entry(target).or_insert(0);
            *slot = slot.checked_sub(delta).ok_or(Error::Overflow("Smith normal form"))?;
            if *slot == 0 {
                self.rows[r].remove(&target);
                self.cols[target].remove(&r);
            } else {
                self.cols[target].insert(r);
            }
        }
        Ok(())
    }

    /// Reduce until the pivot is the only nonzero in its row and column,
    /// moving it to a smaller entry whenever a remainder appears; returns the
    /// final pivot value.
    fn isolate(&mut self, mut i: usize, mut j: usize) -> Result<u64> {
        loop {
            let p = self.rows[i][&j];
            let others: Vec<usize> = self.cols[j].iter().copied().filter(|&k| k != i).collect();
            for k in others {
                let q = self.rows[k][&j] / p;
                if q != 0 {
                    self.row_axpy(k, i, q)?;
                }
            }
            if let Some(k) = self
                .cols[j]
                .iter()
                .copied()
                .filter(|&k| k != i)
                .min_by_key(|&k| self.rows[k][&j].unsigned_abs())
            {
                i = k;
                continue;
            }
            let others: Vec<usize> = self.rows[i].keys().copied().filter(|&l| l != j).collect();
            for l in others {
                let q = self.rows[i][&l] / p;
                if q != 0 {
                    self.col_axpy(l, j, q)?;
                }
            }
            if let Some(l) = self
                .rows[i]
                .iter()
                .filter(|&(&l, _)| l != j)
                .min_by_key(|(_, v)| v.unsigned_abs())
                .map(|(&l, _)| l)
            {
                j = l;
                continue;
            }
            self.rows[i].clear();
            self.cols[j].clear();
            return Ok(p.unsigned_abs());
        }
    }
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SmithForm> {
    let mut e = Elimination::new(m);
    let mut diagonal: Vec<u64> = Vec::new();
    while let Some((i, j)) = e.choose_pivot() {
        diagonal.push(e.isolate(i, j)?);
    }
    Ok(SmithForm {
        rank: diagonal.len(),
        invariant_factors: normalize_diagonal(diagonal)?,
    })
}

/// Turn any diagonal into the divisibility chain with the same cokernel.
fn normalize_diagonal(mut diagonal: Vec<u64>) -> Result<Vec<u64>> {
    diagonal.sort_unstable();
    let units = diagonal.iter().take_while(|&&d| d == 1).count();
    let rest = &mut diagonal[units..];
    for a in 0..rest.len() {
        for b in a + 1..rest.len() {
            let g = gcd(rest[a], rest[b]);
            if g != rest[a] {
                let l = (rest[a] / g)
                    .checked_mul(rest[b])
                    .ok_or(Error::Overflow("invariant factors"))?;
                rest[a] = g;
                rest[b] = l;
            }
        }
    }
    Ok(diagonal)
}

/// Augmented chain complex: `cells[k]` is the rank of `C_{k-1}` and
/// `boundaries[k]` is `∂_k : C_k -> C_{k-1}` for `k = 0..=top`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    cells: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Checks `∂_{k} ∘ ∂_{k+1} = 0` for all `k`.
    pub fn new(cells: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != cells.len().max(1) {
            return Err(Error::Inconsistent(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                cells.len()
            )));
        }
        for (k, m) in boundaries.iter().enumerate() {
            if m.shape() != (cells[k], cells[k + 1]) {
                return Err(Error::Inconsistent(format!(
                    "boundary in degree {k} has shape {:?}, expected ({}, {})",
                    m.shape(),
                    cells[k],
                    cells[k + 1]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
                return Err(Error::Inconsistent(format!("boundary of boundary is nonzero in degree {k}")));
            }
        }
        Ok(Self { cells, boundaries })
    }

    /// Ordered-vertex simplicial boundary plus the augmentation.
    pub fn from_simplicial(k: &SimplicialComplex) -> Result<Self> {
        if k.is_void() {
            return Self::new(Vec::new(), Vec::new());
        }
        let faces = k.faces_by_dimension();
        let mut cells = vec![1];
        cells.extend(faces.iter().map(Vec::len));
        let mut boundaries = Vec::with_capacity(faces.len());
        if let Some(vertices) = faces.first() {
            boundaries.push(SparseMatrix::from_triplets(1, vertices.len(), (0..vertices.len()).map(|c| (0, c, 1))));
        }
        for d in 1..faces.len() {
            let index: HashMap<&[u32], usize> =
                faces[d - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
            let mut triplets = Vec::with_capacity(faces[d].len() * (d + 1));
            let mut facet = Vec::with_capacity(d);
            for (c, simplex) in faces[d].iter().enumerate() {
                for skip in 0..=d {
                    facet.clear();
                    facet.extend(simplex.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    triplets.push((index[facet.as_slice()], c, sign));
                }
            }
            boundaries.push(SparseMatrix::from_triplets(faces[d - 1].len(), faces[d].len(), triplets));
        }
        Self::new(cells, boundaries)
    }

    /// Cubical boundary `∂ = Σ_k (-1)^k (right facet_k - left facet_k)`,
    /// `k` running over the moving edges in order, plus the augmentation.
    pub fn from_cubical(c: &CubeComplex) -> Result<Self> {
        let top = c.dimension();
        let mut cells = vec![1];
        cells.extend((0..=top).map(|d| c.cells(d).len()));
        let mut boundaries = vec![SparseMatrix::from_triplets(
            1,
            cells[1],
            (0..cells[1]).map(|i| (0, i, 1)),
        )];
        for d in 1..=top {
            let mut triplets = Vec::with_capacity(cells[d + 1] * 2 * d);
            for i in 0..cells[d + 1] {
                for (k, [left, right]) in c.facets_of(d, i).iter().enumerate() {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    triplets.push((*right, i, sign));
                    triplets.push((*left, i, -sign));
                }
            }
            boundaries.push(SparseMatrix::from_triplets(cells[d], cells[d + 1], triplets));
        }
        Self::new(cells, boundaries)
    }

    /// Rank of `C_d`, `d >= -1`.
    pub fn rank_in_degree(&self, d: i64) -> usize {
        usize::try_from(d + 1).ok().and_then(|i| self.cells.get(i)).copied().unwrap_or(0)
    }

    /// `∂_d : C_d -> C_{d-1}` for `d >= 0`.
    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(d)
    }

    /// Highest degree with a nonzero chain group, `-2` when there is none.
    pub fn top_degree(&self) -> i64 {
        self.cells.len() as i64 - 2
    }
}

/// Reduced homology in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub betti: u64,
    pub torsion: Vec<u64>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// `H̃_d` for `d = -1..=top`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn get(&self, d: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == d)
    }

    pub fn betti(&self, d: i64) -> u64 {
        self.get(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: i64) -> &[u64] {
        self.get(d).map_or(&[], |h| h.torsion.as_slice())
    }

    pub fn is_zero_in(&self, d: i64) -> bool {
        self.get(d).is_none_or(DegreeHomology::is_zero)
    }

    /// `Σ_{d >= -1} (-1)^d betti_d`
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| if h.degree.rem_euclid(2) == 0 { h.betti as i64 } else { -(h.betti as i64) })
            .sum()
    }

    /// Compact rendering such as `H̃_0 = Z^2, H̃_1 = Z/2`; `0` when acyclic.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .filter(|h| !h.is_zero())
            .map(|h| {
                let mut groups = Vec::new();
                match h.betti {
                    0 => {}
                    1 => groups.push("Z".to_string()),
                    b => groups.push(format!("Z^{b}")),
                }
                groups.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
                format!("H̃_{} = {}", h.degree, groups.join(" + "))
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(", ")
        }
    }
}

pub fn reduced_homology(cc: &ChainComplex) -> Result<HomologyResult> {
    let forms: Vec<SmithForm> = cc.boundaries.iter().map(smith_normal_form).collect::<Result<_>>()?;
    let mut degrees = Vec::with_capacity(cc.cells.len());
    for (i, &rank) in cc.cells.iter().enumerate() {
        // C_{i-1}: incoming ∂_{i-1} (absent for degree -1), outgoing ∂_i
        let out_rank = if i == 0 { 0 } else { forms[i - 1].rank };
        let in_form = forms.get(i);
        let in_rank = in_form.map_or(0, |f| f.rank);
        degrees.push(DegreeHomology {
            degree: i as i64 - 1,
            betti: (rank - out_rank - in_rank) as u64,
            torsion: in_form.map(SmithForm::torsion).unwrap_or_default(),
        });
    }
    Ok(HomologyResult { degrees })
}

pub fn simplicial_homology(k: &SimplicialComplex) -> Result<HomologyResult> {
    reduced_homology(&ChainComplex::from_simplicial(k)?)
}

pub fn cubical_homology(c: &CubeComplex) -> Result<HomologyResult> {
    reduced_homology(&ChainComplex::from_cubical(c)?)
}

/// Homological connectivity: `Degree(i - 1)` for the least `i` with
/// `H̃_i ≠ 0`, `Acyclic` when everything through the top degree vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    Degree(i64),
    Acyclic,
}

impl Connectivity {
    /// Whether this is at least `k`-connected (homologically).
    pub fn at_least(&self, k: i64) -> bool {
        match self {
            Connectivity::Degree(c) => *c >= k,
            Connectivity::Acyclic => true,
        }
    }

    pub fn degree(&self) -> Option<i64> {
        match self {
            Connectivity::Degree(c) => Some(*c),
            Connectivity::Acyclic => None,
        }
    }
}

impl std::fmt::Display for Connectivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Connectivity::Degree(c) => write!(f, "{c}"),
            Connectivity::Acyclic => f.write_str("acyclic"),
        }
    }
}

pub fn homological_connectivity(h: &HomologyResult, topdim: i64) -> Connectivity {
    h.degrees
        .iter()
        .filter(|d| d.degree <= topdim)
        .find(|d| !d.is_zero())
        .map_or(Connectivity::Acyclic, |d| Connectivity::Degree(d.degree - 1))
}

/// Homology and connectivity of a simplicial complex in one call.
pub fn connectivity_of(k: &SimplicialComplex) -> Result<(HomologyResult, Connectivity)> {
    let h = simplicial_homology(k)?;
    let top = k.dimension().unwrap_or(-2);
    let c = homological_connectivity(&h, top);
    Ok((h, c))
}
