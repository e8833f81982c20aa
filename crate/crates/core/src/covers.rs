//! Cell counts of the fully labelled configuration space `Conf(r, R, n, N)`,
//! where robots, ghosts and vertices are all distinguished.
//!
//! A `d`-cell is a partition of vertices and occupants into `d` blocks of
//! four (left vertex, right vertex, robot, ghost: a robot and a ghost swapping
//! along an edge) and `T - 2d` blocks of two (a vertex and its occupant).

use num_bigint::BigUint;

use crate::confspace::{build_conf_with, BuildOptions};
use crate::error::{Error, Result};
use crate::params::Parameters;

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `C(n,d) C(N,d) C(r,d) C(R,d) (d!)^3 (T-2d)!`
pub fn labelled_cell_count(p: &Parameters, d: u32) -> BigUint {
    let (r, big_r, n, big_n) = p.as_tuple();
    if d > p.min_entry() {
        return BigUint::from(0u32);
    }
    let df = factorial(d);
    binomial(n, d)
        * binomial(big_n, d)
        * binomial(r, d)
        * binomial(big_r, d)
        * &df
        * &df
        * &df
        * factorial(p.total() - 2 * d)
}

/// Counts for `d = 0..=min(r, R, n, N)`.
pub fn labelled_f_vector(p: &Parameters) -> Vec<BigUint> {
    (0..=p.min_entry()).map(|d| labelled_cell_count(p, d)).collect()
}

/// Largest total for which [`enumerate_labelled_cells`] is allowed to run.
pub const ENUMERATION_MAX_TOTAL: u32 = 8;

/// Cell counts by dimension, by direct enumeration of block partitions.
pub fn enumerate_labelled_cells(p: &Parameters) -> Result<Vec<u64>> {
    if p.total() > ENUMERATION_MAX_TOTAL {
        return Err(Error::Resource {
            what: "total for partition enumeration",
            size: p.total() as u128,
            limit: ENUMERATION_MAX_TOTAL as u128,
        });
    }
    let (r, big_r, n, big_n) = p.as_tuple();
    let mut counts = vec![0u64; p.min_entry() as usize + 1];
    let mut state = Partition {
        left: n,
        right: big_n,
        robots: r,
        ghosts: big_r,
        used_right: 0,
        used_robots: 0,
        used_ghosts: 0,
    };
    state.left_vertex(0, 0, &mut counts);
    Ok(counts)
}

struct Partition {
    left: u32,
    right: u32,
    robots: u32,
    ghosts: u32,
    used_right: u32,
    used_robots: u32,
    used_ghosts: u32,
}

impl Partition {
    /// Place left vertex `i`: a pair with one free occupant, or a block of
    /// four with a free right vertex, robot and ghost.
    fn left_vertex(&mut self, i: u32, blocks: usize, counts: &mut [u64]) {
        if i == self.left {
            self.right_vertex(0, blocks, counts);
            return;
        }
        for x in 0..self.robots {
            if self.used_robots >> x & 1 == 0 {
                self.used_robots ^= 1 << x;
                self.left_vertex(i + 1, blocks, counts);
                self.used_robots ^= 1 << x;
            }
        }
        for y in 0..self.ghosts {
            if self.used_ghosts >> y & 1 == 0 {
                self.used_ghosts ^= 1 << y;
                self.left_vertex(i + 1, blocks, counts);
                self.used_ghosts ^= 1 << y;
            }
        }
        for j in 0..self.right {
            if self.used_right >> j & 1 != 0 {
                continue;
            }
            for x in 0..self.robots {
                if self.used_robots >> x & 1 != 0 {
                    continue;
                }
                for y in 0..self.ghosts {
                    if self.used_ghosts >> y & 1 != 0 {
                        continue;
                    }
                    self.used_right ^= 1 << j;
                    self.used_robots ^= 1 << x;
                    self.used_ghosts ^= 1 << y;
                    self.left_vertex(i + 1, blocks + 1, counts);
                    self.used_right ^= 1 << j;
                    self.used_robots ^= 1 << x;
                    self.used_ghosts ^= 1 << y;
                }
            }
        }
    }

    /// Remaining right vertices each take one free occupant.
    fn right_vertex(&mut self, j: u32, blocks: usize, counts: &mut [u64]) {
        if j == self.right {
            counts[blocks] += 1;
            return;
        }
        if self.used_right >> j & 1 != 0 {
            self.right_vertex(j + 1, blocks, counts);
            return;
        }
        for x in 0..self.robots {
            if self.used_robots >> x & 1 == 0 {
                self.used_robots ^= 1 << x;
                self.right_vertex(j + 1, blocks, counts);
                self.used_robots ^= 1 << x;
            }
        }
        for y in 0..self.ghosts {
            if self.used_ghosts >> y & 1 == 0 {
                self.used_ghosts ^= 1 << y;
                self.right_vertex(j + 1, blocks, counts);
                self.used_ghosts ^= 1 << y;
            }
        }
    }
}

/// One dimension of the covering check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverRow {
    pub dimension: u32,
    pub labelled: BigUint,
    /// `r! R! f_d(Conf_r(n, N))`
    pub via_robots: BigUint,
    /// `n! N! f_d(Conf_n(r, R))`
    pub via_vertices: BigUint,
}

impl CoverRow {
    pub fn passes(&self) -> bool {
        self.labelled == self.via_robots && self.labelled == self.via_vertices
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverRecord {
    pub parameters: Parameters,
    pub rows: Vec<CoverRow>,
}

impl CoverRecord {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(CoverRow::passes)
    }
}

/// Compare the labelled count with both unlabelled quotients for
/// `d = 0..=dmax`.
pub fn verify_cover_index(p: &Parameters, dmax: u32, options: &BuildOptions) -> Result<CoverRecord> {
    let (r, big_r, n, big_n) = p.as_tuple();
    let robots_side = build_conf_with(r, n, big_n, options)?.f_vector();
    let vertex_side = build_conf_with(n, r, big_r, options)?.f_vector();
    let f = |v: &[u64], d: u32| BigUint::from(v.get(d as usize).copied().unwrap_or(0));
    let rows = (0..=dmax)
        .map(|d| CoverRow {
            dimension: d,
            labelled: labelled_cell_count(p, d),
            via_robots: factorial(r) * factorial(big_r) * f(&robots_side, d),
            via_vertices: factorial(n) * factorial(big_n) * f(&vertex_side, d),
        })
        .collect();
    Ok(CoverRecord { parameters: *p, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u32, big_r: u32, n: u32, big_n: u32) -> Parameters {
        Parameters::new(r, big_r, n, big_n).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(labelled_cell_count(&p(2, 4, 3, 3), 0), BigUint::from(720u32));
        assert_eq!(labelled_cell_count(&p(2, 4, 3, 3), 1), BigUint::from(1728u32));
        assert_eq!(labelled_cell_count(&p(3, 6, 4, 5), 0), BigUint::from(362_880u32));
        assert_eq!(labelled_cell_count(&p(2, 4, 3, 3), 3), BigUint::from(0u32));
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for total in 0..=6 {
            for r in 0..=total {
                for n in 0..=total {
                    let q = p(r, total - r, n, total - n);
                    let brute = enumerate_labelled_cells(&q).unwrap();
                    let closed: Vec<BigUint> = labelled_f_vector(&q);
                    let brute: Vec<BigUint> = brute.into_iter().map(BigUint::from).collect();
                    assert_eq!(brute, closed, "{q}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_capped() {
        assert!(matches!(enumerate_labelled_cells(&p(3, 6, 4, 5)), Err(Error::Resource { .. })));
    }

    #[test]
    fn cover_examples() {
        let opts = BuildOptions::default();
        let rec = verify_cover_index(&p(2, 4, 3, 3), 2, &opts).unwrap();
        assert!(rec.passes());
        assert_eq!(rec.rows.len(), 3);

        let rec = verify_cover_index(&p(3, 6, 4, 5), 0, &opts).unwrap();
        let row = &rec.rows[0];
        assert_eq!(row.labelled, BigUint::from(362_880u32));
        assert_eq!(row.via_robots, BigUint::from(84u32 * 6 * 720));
        assert_eq!(row.via_vertices, BigUint::from(126u32 * 24 * 120));

        assert!(verify_cover_index(&p(1, 3, 2, 2), 1, &opts).unwrap().passes());
    }

    #[test]
    fn transpose_symmetry() {
        for (r, big_r, n, big_n) in [(2, 4, 3, 3), (3, 6, 4, 5), (2, 5, 3, 4), (4, 4, 4, 4)] {
            for d in 0..=4 {
                assert_eq!(
                    labelled_cell_count(&p(r, big_r, n, big_n), d),
                    labelled_cell_count(&p(n, big_n, r, big_r), d)
                );
            }
        }
    }
}
