//! Integer arithmetic over parameter quadruples `(r, R, n, N)`.
//!
//! `r` robots and `R` ghosts occupy the `n + N` vertices of `K_{n,N}`, so
//! `r + R = n + N`. A 0-cell of the configuration space has a *type*
//! `(a, b, c, d)`: the 2x2 matrix with row sums `(r, R)` and column sums
//! `(n, N)`. Everything here is exact integer arithmetic; sums are checked.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `floor(x / 3)` for any sign of `x`.
pub fn third_floor(x: i64) -> i64 {
    x.div_euclid(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Parameters {
    /// robots (`r`)
    pub robots: u32,
    /// ghosts, i.e. unoccupied vertices (`R`)
    pub ghosts: u32,
    /// left side of the bipartite graph (`n`)
    pub left: u32,
    /// right side of the bipartite graph (`N`)
    pub right: u32,
}

impl Parameters {
    pub fn new(robots: u32, ghosts: u32, left: u32, right: u32) -> Result<Self> {
        let rows = robots
            .checked_add(ghosts)
            .ok_or(Error::Overflow("r + R"))?;
        let cols = left.checked_add(right).ok_or(Error::Overflow("n + N"))?;
        if rows != cols {
            return Err(Error::InvalidParameters(format!(
                "r + R = {rows} but n + N = {cols}"
            )));
        }
        Ok(Self {
            robots,
            ghosts,
            left,
            right,
        })
    }

    /// Parameters of `Conf_r(n, N)`; the ghost count is derived.
    pub fn for_conf(robots: u32, left: u32, right: u32) -> Result<Self> {
        let total = left.checked_add(right).ok_or(Error::Overflow("n + N"))?;
        let ghosts = total.checked_sub(robots).ok_or_else(|| {
            Error::InvalidParameters(format!("{robots} robots do not fit on K_{{{left},{right}}}"))
        })?;
        Self::new(robots, ghosts, left, right)
    }

    /// The common value `T = r + R = n + N`.
    pub fn total(&self) -> u32 {
        self.robots + self.ghosts
    }

    pub fn min_entry(&self) -> u32 {
        self.robots.min(self.ghosts).min(self.left).min(self.right)
    }

    pub fn is_nontrivial(&self) -> bool {
        self.min_entry() >= 2
    }

    /// `r <= n <= N <= R`
    pub fn is_canonical(&self) -> bool {
        self.robots <= self.left && self.left <= self.right && self.right <= self.ghosts
    }

    pub fn as_tuple(&self) -> (u32, u32, u32, u32) {
        (self.robots, self.ghosts, self.left, self.right)
    }

    fn require_nontrivial(&self) -> Result<()> {
        if self.is_nontrivial() {
            Ok(())
        } else {
            Err(Error::Trivial(*self))
        }
    }

    fn require_canonical(&self) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::NotOrdered(*self, "r <= n <= N <= R"))
        }
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(r,R,n,N)=({},{},{},{})",
            self.robots, self.ghosts, self.left, self.right
        )
    }
}

/// Type `(a, b, c, d)` of a 0-cell: `a` robots on the left, `b` robots on
/// the right, `c` ghosts on the left, `d` ghosts on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionType {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl SolutionType {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Self { a, b, c, d }
    }

    pub fn solves(&self, p: &Parameters) -> bool {
        self.a + self.b == p.robots
            && self.c + self.d == p.ghosts
            && self.a + self.c == p.left
            && self.b + self.d == p.right
    }

    /// The row/column sums this type is a solution for.
    pub fn parameters(&self) -> Parameters {
        Parameters {
            robots: self.a + self.b,
            ghosts: self.c + self.d,
            left: self.a + self.c,
            right: self.b + self.d,
        }
    }

    pub fn total(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    /// The nine sums of the min-of-min table: rows pick `a`, `d` or
    /// `floor((a+d+1)/3)`, columns pick `b`, `c` or `floor((b+c+1)/3)`.
    /// Returned grouped as (no floor: 4, one floor: 4, two floors: 1).
    pub fn nine_sums(&self) -> ([i64; 4], [i64; 4], i64) {
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        let fad = third_floor(a + d + 1);
        let fbc = third_floor(b + c + 1);
        (
            [a + b, a + c, d + b, d + c],
            [a + fbc, d + fbc, fad + b, fad + c],
            fad + fbc,
        )
    }
}

impl fmt::Display for SolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// All non-negative solutions of the row and column sum problem, ordered by
/// increasing `a`.
pub fn solution_types(p: &Parameters) -> Vec<SolutionType> {
    // a ranges over values keeping b, c, d non-negative
    let lo = p.robots.saturating_sub(p.right);
    let hi = p.robots.min(p.left);
    (lo..=hi)
        .filter_map(|a| {
            let b = p.robots - a;
            let c = p.left - a;
            let d = p.right.checked_sub(b)?;
            let t = SolutionType::new(a, b, c, d);
            t.solves(p).then_some(t)
        })
        .collect()
}

/// `nu_{m,n} = min(m, n, floor((m + n + 1) / 3))`.
pub fn nu(m: u32, n: u32) -> u32 {
    let third = ((m as u64 + n as u64 + 1) / 3) as u32;
    m.min(n).min(third)
}

/// The three candidates `(l0, floor(l1/3), floor(l2/3))` whose minimum is `ell`.
pub fn ell_candidates(p: &Parameters) -> [u32; 3] {
    let l0 = p.min_entry();
    let l1 = p.robots.min(p.ghosts) as u64 + p.left.min(p.right) as u64 + 1;
    let l2 = p.total() as u64;
    [l0, (l1 / 3) as u32, (l2 / 3) as u32]
}

/// `ell` such that the universal cover is `(ell - 2)`-connected at infinity
/// but not `(ell - 1)`-connected at infinity.
pub fn ell(p: &Parameters) -> Result<u32> {
    p.require_nontrivial()?;
    Ok(ell_candidates(p).into_iter().min().unwrap_or(0))
}

/// Connectivity lower bound `nu(a,d) + nu(b,c) - 2` of the link of a type-`t`
/// 0-cell, which is `Delta_{a,d} * Delta_{b,c}`.
pub fn link_lower_bound(t: &SolutionType) -> i64 {
    link_lower_bound_with(t, nu)
}

/// [`link_lower_bound`] with a caller supplied `nu`; the verification harness
/// uses this to run against deliberately corrupted formulas.
pub fn link_lower_bound_with(t: &SolutionType, nu_fn: fn(u32, u32) -> u32) -> i64 {
    nu_fn(t.a, t.d) as i64 + nu_fn(t.b, t.c) as i64 - 2
}

/// `min_t link_lower_bound(t)` over all solution types, with a minimizing type.
pub fn min_link_bound(p: &Parameters) -> Option<(i64, SolutionType)> {
    solution_types(p)
        .into_iter()
        .map(|t| (link_lower_bound(&t), t))
        .min_by_key(|&(bound, t)| (bound, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimMinimum {
    pub value: i64,
    pub witness: SolutionType,
}

/// Minima of the nine-sum table grouped by number of floor functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsMinima {
    pub no_floor: ClaimMinimum,
    pub one_floor: ClaimMinimum,
    pub two_floor: ClaimMinimum,
}

/// Closed forms `r`, `floor((r+n+1)/3)`, `floor((n+N)/3)`, each checked
/// against a brute-force minimization over every solution type.
pub fn claims_minima(p: &Parameters) -> Result<ClaimsMinima> {
    p.require_nontrivial()?;
    p.require_canonical()?;

    let closed = [
        p.robots as i64,
        third_floor(p.robots as i64 + p.left as i64 + 1),
        third_floor(p.left as i64 + p.right as i64),
    ];

    let mut best: [Option<ClaimMinimum>; 3] = [None; 3];
    for t in solution_types(p) {
        let (none, one, two) = t.nine_sums();
        let group_min = [
            none.into_iter().min().unwrap_or(i64::MAX),
            one.into_iter().min().unwrap_or(i64::MAX),
            two,
        ];
        for (slot, value) in best.iter_mut().zip(group_min) {
            if slot.is_none_or(|m| value < m.value) {
                *slot = Some(ClaimMinimum { value, witness: t });
            }
        }
    }

    let [no_floor, one_floor, two_floor] = best.map(|m| m.expect("valid parameters have solutions"));
    let brute = [no_floor.value, one_floor.value, two_floor.value];
    if brute != closed {
        return Err(Error::Inconsistent(format!(
            "claims minima for {p}: brute force {brute:?} vs closed form {closed:?}"
        )));
    }
    Ok(ClaimsMinima {
        no_floor,
        one_floor,
        two_floor,
    })
}

/// `floor(p/3) + floor(q/3)`, checked against `floor((p + q - i)/3)` with
/// `i = q mod 3`.
pub fn add_floors(p: i64, q: i64) -> Result<i64> {
    let sum = third_floor(p) + third_floor(q);
    let i = q.rem_euclid(3);
    let combined = third_floor(p + q - i);
    if sum != combined {
        return Err(Error::Inconsistent(format!(
            "floor addition at ({p}, {q}): {sum} vs {combined}"
        )));
    }
    Ok(sum)
}

/// `floor((a+d+1)/3) + floor((b+c+1)/3)` as a single floor selected by
/// `(b + c) mod 3`, where `n + N = a + b + c + d`.
pub fn two_floor_case_value(t: &SolutionType) -> i64 {
    let total = t.total() as i64;
    match (t.b + t.c) % 3 {
        2 => third_floor(total + 2),
        0 => third_floor(total + 1),
        _ => third_floor(total),
    }
}

/// The eight parameter sets sharing a universal cover, and the member with
/// `r <= n <= N <= R`.
pub fn symmetry_orbit(p: &Parameters) -> (BTreeSet<Parameters>, Parameters) {
    let Parameters {
        robots: r,
        ghosts: g,
        left: n,
        right: m,
    } = *p;
    let orbit: BTreeSet<Parameters> = [
        (r, g, n, m),
        (r, g, m, n),
        (g, r, n, m),
        (g, r, m, n),
        (n, m, r, g),
        (n, m, g, r),
        (m, n, r, g),
        (m, n, g, r),
    ]
    .into_iter()
    .map(|(robots, ghosts, left, right)| Parameters {
        robots,
        ghosts,
        left,
        right,
    })
    .collect();
    (orbit, canonical(p))
}

/// Canonical orbit representative `r <= n <= N <= R`.
pub fn canonical(p: &Parameters) -> Parameters {
    let rows = (p.robots.min(p.ghosts), p.robots.max(p.ghosts));
    let cols = (p.left.min(p.right), p.left.max(p.right));
    // the pair holding the global minimum also holds the global maximum
    let (outer, inner) = if rows.0 <= cols.0 { (rows, cols) } else { (cols, rows) };
    Parameters {
        robots: outer.0,
        ghosts: outer.1,
        left: inner.0,
        right: inner.1,
    }
}

/// The exceptional case where the minimum is only reached by a non-trivial
/// join: `r = n = N = R` and `r = 1 (mod 3)`.
pub fn is_exceptional(p: &Parameters) -> Result<bool> {
    p.require_nontrivial()?;
    p.require_canonical()?;
    Ok(p.robots == p.left && p.left == p.right && p.right == p.ghosts && p.robots % 3 == 1)
}

/// Whether `Conf_r(n, N)` is an `r`-dimensional duality complex, for
/// `2 <= r <= n <= N`: exactly when `n >= 2r - 1`.
pub fn is_duality(p: &Parameters) -> Result<bool> {
    if !(2 <= p.robots && p.robots <= p.left && p.left <= p.right) {
        return Err(Error::NotOrdered(*p, "2 <= r <= n <= N"));
    }
    let by_inequality = p.left + 1 >= 2 * p.robots;
    let by_ell = ell(p)? == p.robots;
    if by_inequality != by_ell {
        return Err(Error::Inconsistent(format!(
            "duality criterion n >= 2r-1 gives {by_inequality} but ell = r gives {by_ell} for {p}"
        )));
    }
    Ok(by_inequality)
}

/// Every parameter set with `min >= 2`, `r <= n <= N <= R` and `T <= max_total`.
pub fn canonical_grid(max_total: u32) -> Vec<Parameters> {
    let mut out = Vec::new();
    for total in 4..=max_total {
        for r in 2..=total / 2 {
            for n in r..=total / 2 {
                let big_n = total - n;
                let ghosts = total - r;
                if n <= big_n && big_n <= ghosts {
                    out.push(Parameters {
                        robots: r,
                        ghosts,
                        left: n,
                        right: big_n,
                    });
                }
            }
        }
    }
    out
}

/// Every non-trivial parameter set (any order) with `T <= max_total`.
pub fn nontrivial_grid(max_total: u32) -> Vec<Parameters> {
    let mut out = Vec::new();
    for total in 4..=max_total {
        for r in 2..=total - 2 {
            for n in 2..=total - 2 {
                out.push(Parameters {
                    robots: r,
                    ghosts: total - r,
                    left: n,
                    right: total - n,
                });
            }
        }
    }
    out
}
