//! Canonical forms and isomorphism search by individualization-refinement.
//!
//! Vertices and facets are coloured by iterated refinement of the
//! vertex-facet incidence structure. Colours are ranks of sorted signatures,
//! so they never depend on the input vertex numbering. When refinement
//! stalls, a vertex of the first non-singleton cell is individualized and the
//! search branches.

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::error::{Error, Result};

/// Default limit on search leaves for one canonical form / isomorphism call.
pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;

/// Labelling-independent encoding of a complex: facets over vertices
/// `0..vertices` in the lexicographically least labelling reached by the
/// search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertices: u32,
    pub facets: Vec<Vec<u32>>,
}

/// Vertex-facet incidence over compact indices.
pub(crate) struct Incidence {
    vertex_facets: Vec<Vec<u32>>,
    facet_vertices: Vec<Vec<u32>>,
}

impl Incidence {
    pub(crate) fn new(vertices: usize, facets: &[Vec<u32>]) -> Self {
        let mut vertex_facets = vec![Vec::new(); vertices];
        for (j, f) in facets.iter().enumerate() {
            for &v in f {
                vertex_facets[v as usize].push(j as u32);
            }
        }
        Self {
            vertex_facets,
            facet_vertices: facets.to_vec(),
        }
    }

    /// Disjoint union: the second complex's vertices and facets come after
    /// the first's.
    fn union(a: &Incidence, b: &Incidence) -> Self {
        let nv = a.vertex_facets.len() as u32;
        let nf = a.facet_vertices.len() as u32;
        let mut vertex_facets = a.vertex_facets.clone();
        vertex_facets.extend(
            b.vertex_facets
                .iter()
                .map(|fs| fs.iter().map(|&j| j + nf).collect()),
        );
        let mut facet_vertices = a.facet_vertices.clone();
        facet_vertices.extend(
            b.facet_vertices
                .iter()
                .map(|vs| vs.iter().map(|&v| v + nv).collect()),
        );
        Self {
            vertex_facets,
            facet_vertices,
        }
    }

    fn vertices(&self) -> usize {
        self.vertex_facets.len()
    }
}

/// Replace each entry by the rank of its value among the distinct values.
fn rank<T: Ord + Clone>(sigs: &[T]) -> (Vec<u32>, usize) {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    let ranks = sigs
        .iter()
        .map(|s| distinct.binary_search(s).expect("present") as u32)
        .collect();
    (ranks, distinct.len())
}

#[derive(Clone)]
struct Colouring {
    vertex: Vec<u32>,
    facet: Vec<u32>,
}

impl Colouring {
    fn initial(inc: &Incidence) -> Self {
        let sizes: Vec<usize> = inc.facet_vertices.iter().map(Vec::len).collect();
        Self {
            vertex: vec![0; inc.vertices()],
            facet: rank(&sizes).0,
        }
    }

    fn vertex_classes(&self) -> usize {
        let mut v = self.vertex.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    /// Refine to the coarsest equitable colouring finer than the current one.
    fn refine(&mut self, inc: &Incidence) {
        let mut classes = (self.vertex_classes(), {
            let mut f = self.facet.clone();
            f.sort_unstable();
            f.dedup();
            f.len()
        });
        loop {
            let fsig: Vec<(u32, Vec<u32>)> = inc
                .facet_vertices
                .iter()
                .zip(&self.facet)
                .map(|(vs, &c)| {
                    let mut s: Vec<u32> = vs.iter().map(|&v| self.vertex[v as usize]).collect();
                    s.sort_unstable();
                    (c, s)
                })
                .collect();
            let (facet, nf) = rank(&fsig);
            let vsig: Vec<(u32, Vec<u32>)> = inc
                .vertex_facets
                .iter()
                .zip(&self.vertex)
                .map(|(fs, &c)| {
                    let mut s: Vec<u32> = fs.iter().map(|&j| facet[j as usize]).collect();
                    s.sort_unstable();
                    (c, s)
                })
                .collect();
            let (vertex, nv) = rank(&vsig);
            self.vertex = vertex;
            self.facet = facet;
            if (nv, nf) == classes {
                return;
            }
            classes = (nv, nf);
        }
    }

    /// Give `v` a colour of its own, just below the rest of its cell.
    fn individualize(&mut self, v: usize) {
        let c = self.vertex[v];
        let pairs: Vec<(u32, bool)> = self
            .vertex
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, x == c && i != v))
            .collect();
        self.vertex = rank(&pairs).0;
    }

    /// Members of the first (lowest colour) non-singleton vertex cell.
    fn target_cell(&self, range: std::ops::Range<usize>) -> Option<Vec<usize>> {
        let mut counts = std::collections::BTreeMap::<u32, Vec<usize>>::new();
        for i in range {
            counts.entry(self.vertex[i]).or_default().push(i);
        }
        counts.into_values().find(|members| members.len() > 1)
    }
}

fn encode(facets: &[Vec<u32>], labelling: &[u32], offset: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = facets
        .iter()
        .map(|f| {
            let mut g: Vec<u32> = f.iter().map(|&v| labelling[v as usize] - offset).collect();
            g.sort_unstable();
            g
        })
        .collect();
    out.sort();
    out
}

pub(crate) fn canonical_form_raw(
    vertices: usize,
    facets: &[Vec<u32>],
    budget: usize,
) -> Result<CanonicalForm> {
    let inc = Incidence::new(vertices, facets);
    let mut colouring = Colouring::initial(&inc);
    colouring.refine(&inc);
    let mut best: Option<Vec<Vec<u32>>> = None;
    let mut leaves = 0usize;
    canon_search(&inc, facets, colouring, &mut best, &mut leaves, budget)?;
    Ok(CanonicalForm {
        vertices: vertices as u32,
        facets: best.unwrap_or_default(),
    })
}

fn canon_search(
    inc: &Incidence,
    facets: &[Vec<u32>],
    colouring: Colouring,
    best: &mut Option<Vec<Vec<u32>>>,
    leaves: &mut usize,
    budget: usize,
) -> Result<()> {
    match colouring.target_cell(0..inc.vertices()) {
        None => {
            *leaves += 1;
            if *leaves > budget {
                return Err(Error::Resource {
                    what: "canonical form search leaves",
                    size: *leaves as u128,
                    limit: budget as u128,
                });
            }
            let code = encode(facets, &colouring.vertex, 0);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            Ok(())
        }
        Some(cell) => {
            for v in cell {
                let mut next = colouring.clone();
                next.individualize(v);
                next.refine(inc);
                canon_search(inc, facets, next, best, leaves, budget)?;
            }
            Ok(())
        }
    }
}

/// Canonical form of `k`; isomorphic complexes get equal forms.
pub fn canonical_form(k: &SimplicialComplex, budget: usize) -> Result<CanonicalForm> {
    canonical_form_raw(k.vertex_count(), k.facets(), budget)
}

/// A vertex bijection `K -> L` (indexed by `K`'s vertex indices) mapping
/// facets onto facets, if one exists.
pub fn find_isomorphism(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: usize,
) -> Result<Option<Vec<u32>>> {
    if k.vertex_count() != l.vertex_count() || k.facets().len() != l.facets().len() {
        return Ok(None);
    }
    let mut ks: Vec<usize> = k.facets().iter().map(Vec::len).collect();
    let mut ls: Vec<usize> = l.facets().iter().map(Vec::len).collect();
    ks.sort_unstable();
    ls.sort_unstable();
    if ks != ls {
        return Ok(None);
    }
    let n = k.vertex_count();
    let ki = Incidence::new(n, k.facets());
    let li = Incidence::new(n, l.facets());
    let both = Incidence::union(&ki, &li);
    let mut colouring = Colouring::initial(&both);
    colouring.refine(&both);
    let target: Vec<Vec<u32>> = l.facets().to_vec();
    let mut leaves = 0usize;
    iso_search(&both, n, k.facets(), &target, colouring, &mut leaves, budget)
}

fn balanced(colouring: &Colouring, n: usize, facet_split: usize) -> bool {
    let mut a: Vec<u32> = colouring.vertex[..n].to_vec();
    let mut b: Vec<u32> = colouring.vertex[n..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return false;
    }
    let mut fa: Vec<u32> = colouring.facet[..facet_split].to_vec();
    let mut fb: Vec<u32> = colouring.facet[facet_split..].to_vec();
    fa.sort_unstable();
    fb.sort_unstable();
    fa == fb
}

fn iso_search(
    both: &Incidence,
    n: usize,
    k_facets: &[Vec<u32>],
    l_facets: &[Vec<u32>],
    colouring: Colouring,
    leaves: &mut usize,
    budget: usize,
) -> Result<Option<Vec<u32>>> {
    if !balanced(&colouring, n, k_facets.len()) {
        return Ok(None);
    }
    match colouring.target_cell(0..n) {
        None => {
            *leaves += 1;
            if *leaves > budget {
                return Err(Error::Resource {
                    what: "isomorphism search leaves",
                    size: *leaves as u128,
                    limit: budget as u128,
                });
            }
            // discrete and balanced: colours pair K-vertices with L-vertices
            let mut by_colour = vec![0u32; n];
            for w in 0..n {
                by_colour[colouring.vertex[n + w] as usize] = w as u32;
            }
            let map: Vec<u32> = (0..n).map(|v| by_colour[colouring.vertex[v] as usize]).collect();
            let image = encode(k_facets, &map, 0);
            Ok((image == l_facets).then_some(map))
        }
        Some(cell) => {
            let v = cell[0];
            let colour = colouring.vertex[v];
            let candidates: Vec<usize> = (n..2 * n).filter(|&w| colouring.vertex[w] == colour).collect();
            for w in candidates {
                let mut next = colouring.clone();
                individualize_pair(&mut next, v, w);
                next.refine(both);
                if let Some(map) = iso_search(both, n, k_facets, l_facets, next, leaves, budget)? {
                    return Ok(Some(map));
                }
            }
            Ok(None)
        }
    }
}

fn individualize_pair(colouring: &mut Colouring, v: usize, w: usize) {
    let c = colouring.vertex[v];
    let pairs: Vec<(u32, bool)> = colouring
        .vertex
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, x == c && i != v && i != w))
        .collect();
    colouring.vertex = rank(&pairs).0;
}

/// Whether some vertex bijection maps the facets of `k` onto those of `l`.
pub fn are_isomorphic(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<bool> {
    Ok(find_isomorphism(k, l, DEFAULT_SEARCH_BUDGET)?.is_some())
}
