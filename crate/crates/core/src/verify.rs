//! Verification harness: twelve numbered checks of the connectivity formulas
//! and structural facts, run by exact enumeration and integer homology.
//!
//! Every check is a pure function of a [`VerifyConfig`]; the `nu` formula is
//! injectable so the harness can be run against a corrupted formula and
//! shown to catch it.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::confspace::{build_conf, is_flag, CubeComplex};
use crate::covers::{enumerate_labelled_cells, labelled_cell_count, labelled_f_vector, verify_cover_index};
use crate::confspace::BuildOptions;
use crate::error::Result;
use crate::homology::{connectivity_of, Connectivity};
use crate::params::{
    add_floors, canonical_grid, ell, is_duality, is_exceptional, link_lower_bound_with, nontrivial_grid, nu,
    solution_types, third_floor, two_floor_case_value, Parameters, SolutionType,
};
use crate::simplicial::{
    are_isomorphic, chessboard, delete_closed_simplex, describe_model_link, join_tagged, model_link,
    SimplicialComplex, VertexLabel,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Every grid capped at total `T <= 9`.
    Quick,
    /// Grids at their documented caps.
    Full,
}

impl Level {
    fn cap(self, full: u32) -> u32 {
        match self {
            Level::Quick => full.min(QUICK_MAX_TOTAL),
            Level::Full => full,
        }
    }
}

pub const QUICK_MAX_TOTAL: u32 = 9;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub level: Level,
    pub nu: fn(u32, u32) -> u32,
    /// Seed for the randomized floor identity check.
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(level: Level) -> Self {
        Self {
            level,
            nu,
            seed: 0x5eed,
        }
    }
}

/// `min(m, n, floor((m + n) / 3))`, an off-by-one corruption of `nu`.
pub fn corrupted_nu(m: u32, n: u32) -> u32 {
    m.min(n).min((m + n) / 3)
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// One line per failing instance.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2}: {} ({:.2} s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub outcomes: Vec<Outcome>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failed(&self) -> Vec<u8> {
        self.outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect()
    }
}

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "vertex counts of the shared cover"),
    (2, "link table of Conf_3(4,5)"),
    (3, "chessboard connectivity"),
    (4, "vertex links are joins of chessboards"),
    (5, "punctured chessboards and joins"),
    (6, "Conf_2(3,3) is a surface"),
    (7, "minimum link bound is ell - 2"),
    (8, "exceptional case (4,4,4,4)"),
    (9, "covering index r! R!"),
    (10, "floor identities"),
    (11, "flag links"),
    (12, "duality criterion"),
];

/// Run all criteria in order.
pub fn run(config: &VerifyConfig) -> Summary {
    Summary {
        outcomes: CRITERIA.iter().map(|&(id, _)| run_criterion(id, config)).collect(),
    }
}

/// Run one criterion; panics on an unknown id.
pub fn run_criterion(id: u8, config: &VerifyConfig) -> Outcome {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let result = match id {
        1 => vertex_counts(),
        2 => link_table(config),
        3 => chessboard_connectivity(config),
        4 => links_are_joins(config),
        5 => punctured(config),
        6 => surface(),
        7 => main_theorem(config),
        8 => exceptional(config),
        9 => covering(config),
        10 => floors(config),
        11 => flag_links(config),
        _ => duality(config),
    };
    let elapsed = start.elapsed();
    let (mut failures, checked) = match result {
        Ok(Check { failures, checked }) => (failures, checked),
        Err(e) => (vec![format!("error: {e}")], 0),
    };
    if matches!(id, 1 | 12) && elapsed > Duration::from_secs(1) {
        failures.push(format!("took {:.2} s, limit 1 s", elapsed.as_secs_f64()));
    }
    let detail = if failures.is_empty() {
        format!("{checked} checks")
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        let more = if failures.len() > 5 {
            format!(" (+{} more)", failures.len() - 5)
        } else {
            String::new()
        };
        format!("{}/{checked} failed: {}{more}", failures.len(), shown.join("; "))
    };
    Outcome {
        id,
        title,
        passed: failures.is_empty(),
        detail,
        failures,
        elapsed,
    }
}

#[derive(Default)]
struct Check {
    failures: Vec<String>,
    checked: usize,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Check) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    fn merge_all(checks: Vec<Check>) -> Check {
        let mut all = Check::default();
        for c in checks {
            all.merge(c);
        }
        all
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

fn vertex_counts() -> Result<Check> {
    let mut check = Check::default();
    let f_small = build_conf(3, 4, 5)?.f_vector()[0];
    let f_large = build_conf(4, 3, 6)?.f_vector()[0];
    let labelled = labelled_cell_count(&Parameters::new(3, 6, 4, 5)?, 0);
    check.expect(f_small == 84, || format!("f_0(Conf_3(4,5)) = {f_small}"));
    check.expect(f_large == 126, || format!("f_0(Conf_4(3,6)) = {f_large}"));
    check.expect(labelled == BigUint::from(362_880u32), || format!("labelled 0-cells = {labelled}"));
    let via_small = BigUint::from(f_small) * factorial(3) * factorial(6);
    let via_large = BigUint::from(f_large) * factorial(4) * factorial(5);
    check.expect(via_small == labelled && via_large == labelled, || {
        format!("{labelled} vs {via_small} vs {via_large}")
    });
    Ok(check)
}

type TableRow = ((u32, u32, u32, u32), &'static str, i64);

/// `(type, model link, link bound)` for each 0-cell type of `Conf_3(4,5)`.
const CONF_3_4_5_TABLE: [TableRow; 4] = [
    ((3, 0, 1, 5), "Δ_{3,5}", 1),
    ((2, 1, 2, 4), "Δ_{2,4} ⋆ Δ_{1,2}", 1),
    ((1, 2, 3, 3), "Δ_{1,3} ⋆ Δ_{2,3}", 1),
    ((0, 3, 4, 2), "Δ_{3,4}", 0),
];

fn link_table(config: &VerifyConfig) -> Result<Check> {
    let mut check = Check::default();
    let c = build_conf(3, 4, 5)?;
    let mut seen: BTreeMap<SolutionType, String> = BTreeMap::new();
    for v in c.zero_cells() {
        let t = c.classify_zero_cell(v)?;
        seen.entry(t).or_insert_with(|| describe_model_link(&t));
    }
    check.expect(seen.len() == 4, || format!("{} types", seen.len()));
    for ((a, b, cc, d), link, bound) in CONF_3_4_5_TABLE {
        let t = SolutionType::new(a, b, cc, d);
        let got_link = seen.get(&t).cloned().unwrap_or_default();
        let got_bound = link_lower_bound_with(&t, config.nu);
        check.expect(got_link == link && got_bound == bound, || {
            format!("type {t}: {got_link} bound {got_bound}, expected {link} bound {bound}")
        });
    }
    let p = Parameters::for_conf(3, 4, 5)?;
    let l = ell(&p)?;
    check.expect(l == 2, || format!("ell = {l}"));
    Ok(check)
}

/// Boards `Delta_{m,n}` with `1 <= m <= n` and `m + n <= max_sum`.
fn boards(max_sum: u32) -> Vec<(u32, u32)> {
    (1..=max_sum / 2)
        .flat_map(|m| (m..=max_sum - m).map(move |n| (m, n)))
        .collect()
}

fn chessboard_connectivity(config: &VerifyConfig) -> Result<Check> {
    let checks: Vec<Check> = boards(config.level.cap(10))
        .into_par_iter()
        .map(|(m, n)| -> Result<Check> {
            let mut check = Check::default();
            let v = (config.nu)(m, n) as i64;
            let (h, c) = connectivity_of(&chessboard(m, n))?;
            check.expect(c == Connectivity::Degree(v - 2), || {
                format!("Δ_{{{m},{n}}}: connectivity {c}, expected {}", v - 2)
            });
            check.expect(!h.is_zero_in(v - 1), || format!("Δ_{{{m},{n}}}: H̃_{} = 0", v - 1));
            Ok(check)
        })
        .collect::<Result<_>>()?;
    Ok(Check::merge_all(checks))
}

/// Conf grid for the link checks: `r <= 3`, `n <= 4`, `N <= 5`, plus
/// `Conf_4(4,4)`.
fn link_grid(level: Level) -> Vec<(u32, u32, u32)> {
    let mut grid: Vec<(u32, u32, u32)> = (1..=3)
        .flat_map(|r| (1..=4).flat_map(move |n| (1..=5).map(move |m| (r, n, m))))
        .filter(|&(r, n, m)| r <= n + m && n + m <= level.cap(9))
        .collect();
    grid.push((4, 4, 4));
    grid
}

type Links = Vec<(SolutionType, SimplicialComplex)>;

fn all_links(grid: &[(u32, u32, u32)]) -> Result<Vec<(CubeComplex, Links)>> {
    grid.par_iter()
        .map(|&(r, n, m)| {
            let c = build_conf(r, n, m)?;
            let links = c.all_vertex_links();
            Ok((c, links))
        })
        .collect()
}

fn links_are_joins(config: &VerifyConfig) -> Result<Check> {
    let complexes = all_links(&link_grid(config.level))?;
    let checks: Vec<Check> = complexes
        .par_iter()
        .map(|(c, links)| -> Result<Check> {
            let g = c.graph();
            let mut check = Check::default();
            for (v, (t, lk)) in c.zero_cells().iter().zip(links) {
                let model = model_link(t, g.left, g.right)?;
                let iso = are_isomorphic(lk, &model)?;
                check.expect(iso, || {
                    format!("Conf_{}({},{}) 0-cell {}: link is not {}", c.robots(), g.left, g.right, v, describe_model_link(t))
                });
            }
            Ok(check)
        })
        .collect::<Result<_>>()?;
    Ok(Check::merge_all(checks))
}

/// Every face of `k`, the empty face first, as label lists.
fn closed_simplices(k: &SimplicialComplex) -> Vec<Vec<VertexLabel>> {
    let mut out = vec![Vec::new()];
    for layer in k.faces_by_dimension() {
        for face in layer {
            out.push(face.iter().map(|&v| k.label(v).clone()).collect());
        }
    }
    out
}

fn punctured(config: &VerifyConfig) -> Result<Check> {
    let checks: Vec<Check> = boards(config.level.cap(9))
        .into_par_iter()
        .map(|(m, n)| -> Result<Check> {
            let mut check = Check::default();
            let board = chessboard(m, n);
            let bound = (config.nu)(m, n) as i64 - 2;
            for s in closed_simplices(&board) {
                let (_, c) = connectivity_of(&delete_closed_simplex(&board, &s)?)?;
                check.expect(c.at_least(bound), || {
                    let names: Vec<String> = s.iter().map(ToString::to_string).collect();
                    format!("Δ_{{{m},{n}}} minus {{{}}}: connectivity {c} < {bound}", names.join(","))
                });
            }
            Ok(check)
        })
        .collect::<Result<_>>()?;
    let mut check = Check::merge_all(checks);
    check.merge(deletion_join_identity()?);
    Ok(check)
}

/// `(K * L) \ s = (K \ s_K) * (L \ s_L)` for every closed simplex `s` of
/// small chessboard joins.
fn deletion_join_identity() -> Result<Check> {
    let mut small = boards(5);
    small.push((0, 2));
    let pairs: Vec<((u32, u32), (u32, u32))> = small
        .iter()
        .flat_map(|&x| small.iter().map(move |&y| (x, y)))
        .collect();
    let checks: Vec<Check> = pairs
        .into_par_iter()
        .map(|((m, n), (p, q))| -> Result<Check> {
            let mut check = Check::default();
            let (k, l) = (chessboard(m, n), chessboard(p, q));
            let j = join_tagged(&k, &l);
            for s in closed_simplices(&j) {
                let (mut s0, mut s1) = (Vec::new(), Vec::new());
                for label in &s {
                    match label {
                        VertexLabel::First(x) => s0.push((**x).clone()),
                        VertexLabel::Second(y) => s1.push((**y).clone()),
                        other => s0.push(other.clone()),
                    }
                }
                let lhs = delete_closed_simplex(&j, &s)?;
                let rhs = join_tagged(&delete_closed_simplex(&k, &s0)?, &delete_closed_simplex(&l, &s1)?);
                check.expect(lhs == rhs, || {
                    format!("Δ_{{{m},{n}}} ⋆ Δ_{{{p},{q}}}: deletion of {} does not split", s.len())
                });
            }
            Ok(check)
        })
        .collect::<Result<_>>()?;
    Ok(Check::merge_all(checks))
}

fn surface() -> Result<Check> {
    let mut check = Check::default();
    let c = build_conf(2, 3, 3)?;
    let f = c.f_vector();
    check.expect(f == [15, 36, 18], || format!("f-vector {f:?}"));
    let chi = c.euler_characteristic();
    check.expect(chi == -3, || format!("euler characteristic {chi}"));
    for (v, (t, lk)) in c.zero_cells().iter().zip(c.all_vertex_links()) {
        let length = if t.a == 1 { 4 } else { 6 };
        let ok = are_isomorphic(&lk, &SimplicialComplex::cycle(length))?;
        check.expect(ok, || format!("link of {v} is not a {length}-cycle"));
    }
    Ok(check)
}

fn main_theorem(config: &VerifyConfig) -> Result<Check> {
    let mut check = Check::default();
    for p in canonical_grid(config.level.cap(14)) {
        let l = ell(&p)? as i64;
        let bound = solution_types(&p)
            .iter()
            .map(|t| link_lower_bound_with(t, config.nu))
            .min()
            .unwrap_or(i64::MAX);
        check.expect(bound == l - 2, || format!("{p}: minimum bound {bound}, ell - 2 = {}", l - 2));
    }
    let witnesses: Vec<Check> = canonical_grid(config.level.cap(10))
        .into_par_iter()
        .map(|p| -> Result<Check> {
            let mut check = Check::default();
            let l = ell(&p)? as i64;
            let mut types = solution_types(&p);
            types.sort_by_key(|t| (link_lower_bound_with(t, config.nu), *t));
            let mut found = None;
            for t in types {
                let (h, _) = connectivity_of(&model_link(&t, p.left, p.right)?)?;
                if !h.is_zero_in(l - 1) {
                    found = Some(t);
                    break;
                }
            }
            check.expect(found.is_some(), || format!("{p}: no link with H̃_{} ≠ 0", l - 1));
            Ok(check)
        })
        .collect::<Result<_>>()?;
    check.merge(Check::merge_all(witnesses));
    Ok(check)
}

fn exceptional(config: &VerifyConfig) -> Result<Check> {
    let mut check = Check::default();
    let p = Parameters::new(4, 4, 4, 4)?;
    let exc = is_exceptional(&p)?;
    check.expect(exc, || "not flagged exceptional".into());
    let l = ell(&p)?;
    check.expect(l == 2, || format!("ell = {l}"));
    let witness = solution_types(&p)
        .into_iter()
        .min_by_key(|t| (link_lower_bound_with(t, config.nu), *t))
        .expect("solutions exist");
    check.expect(witness == SolutionType::new(2, 2, 2, 2), || format!("witness {witness}"));
    let (h, _) = connectivity_of(&model_link(&witness, 4, 4)?)?;
    check.expect(h.is_zero_in(-1) && h.is_zero_in(0), || format!("witness link not connected: {}", h.summary()));
    check.expect(h.betti(1) == 1, || format!("H̃_1 rank {}", h.betti(1)));
    Ok(check)
}

fn covering(config: &VerifyConfig) -> Result<Check> {
    let mut check = Check::default();
    for total in 0..=6 {
        for r in 0..=total {
            for n in 0..=total {
                let p = Parameters::new(r, total - r, n, total - n)?;
                let brute: Vec<BigUint> = enumerate_labelled_cells(&p)?.into_iter().map(BigUint::from).collect();
                let closed = labelled_f_vector(&p);
                check.expect(brute == closed, || format!("{p}: enumeration {brute:?} vs closed form {closed:?}"));
            }
        }
    }
    let records: Vec<Result<crate::covers::CoverRecord>> = nontrivial_grid(config.level.cap(9))
        .into_par_iter()
        .map(|p| verify_cover_index(&p, p.min_entry() + 1, &BuildOptions::default()))
        .collect();
    for record in records {
        let record = record?;
        check.expect(record.passes(), || {
            let bad: Vec<String> = record
                .rows
                .iter()
                .filter(|r| !r.passes())
                .map(|r| format!("d={}: {} vs {} vs {}", r.dimension, r.labelled, r.via_robots, r.via_vertices))
                .collect();
            format!("{}: {}", record.parameters, bad.join(", "))
        });
    }
    Ok(check)
}

fn floors(config: &VerifyConfig) -> Result<Check> {
    let mut check = Check::default();
    let mut rng = StdRng::seed_from_u64(config.seed);
    for _ in 0..10_000 {
        let (p, q) = (rng.gen_range(-100..=1000), rng.gen_range(-100..=1000));
        let ok = add_floors(p, q).is_ok();
        check.expect(ok, || format!("floor addition fails at ({p}, {q})"));
    }
    for p in canonical_grid(config.level.cap(14)) {
        for t in solution_types(&p) {
            let direct = third_floor((t.a + t.d + 1) as i64) + third_floor((t.b + t.c + 1) as i64);
            let case = two_floor_case_value(&t);
            check.expect(direct == case, || format!("{p} type {t}: {direct} vs {case}"));
        }
    }
    Ok(check)
}

fn flag_links(config: &VerifyConfig) -> Result<Check> {
    let complexes = all_links(&link_grid(config.level))?;
    let mut check = Check::default();
    for (c, links) in &complexes {
        for (v, (_, lk)) in c.zero_cells().iter().zip(links) {
            let g = c.graph();
            check.expect(is_flag(lk), || format!("Conf_{}({},{}) 0-cell {v}: link not flag", c.robots(), g.left, g.right));
        }
    }
    Ok(check)
}

fn duality(config: &VerifyConfig) -> Result<Check> {
    let mut check = Check::default();
    let cap = config.level.cap(40);
    for total in 4..=cap {
        for r in 2..=total / 2 {
            for n in r..=total / 2 {
                let p = Parameters::for_conf(r, n, total - n)?;
                let by_inequality = n + 1 >= 2 * r;
                let by_ell = ell(&p)? == r;
                match is_duality(&p) {
                    Ok(d) => check.expect(d == by_inequality && d == by_ell, || {
                        format!("{p}: is_duality {d}, n >= 2r-1 {by_inequality}, ell = r {by_ell}")
                    }),
                    Err(e) => check.expect(false, || format!("{p}: {e}")),
                }
            }
        }
    }
    Ok(check)
}
