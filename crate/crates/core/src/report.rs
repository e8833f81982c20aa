//! Connectivity-at-infinity report for one parameter set.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::confspace::{binomial, build_conf_with, is_flag, BuildOptions, CubeComplex};
use crate::covers::labelled_f_vector;
use crate::error::{Error, Result};
use crate::homology::{connectivity_of, Connectivity, HomologyResult};
use crate::params::{
    canonical, ell, ell_candidates, is_exceptional, link_lower_bound, nu, solution_types, symmetry_orbit,
    Parameters, SolutionType,
};
use crate::simplicial::{are_isomorphic, chessboard_face_count, describe_model_link, model_link};

pub const SCHEMA: &str = "bbg-report/1";

/// Model links with at most this many faces get their homology computed
/// unless homology is forced.
pub const DEFAULT_LINK_FACE_CAP: u128 = 50_000;

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub build: BuildOptions,
    /// Compute link homology regardless of [`DEFAULT_LINK_FACE_CAP`].
    pub force_homology: bool,
    /// Report trivial parameters instead of failing.
    pub allow_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub parameters: Parameters,
    pub orbit: Vec<Parameters>,
    pub canonical: Parameters,
    /// Set for trivial parameters, where the formulas do not apply.
    pub note: Option<String>,
    pub formulas: Option<Formulas>,
    /// `Conf_r(n, N)` is `min(r, R, n, N)`-dimensional.
    pub dimension: u32,
    /// Cell counts of the fully labelled cover, as decimal strings.
    pub labelled_cell_counts: Vec<String>,
    pub complex: Option<ComplexSummary>,
    pub types: Vec<TypeRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formulas {
    pub ell: u32,
    pub ell_candidates: [u32; 3],
    pub statement: String,
    pub min_link_bound: i64,
    pub witness: SolutionType,
    /// `ell` equals the dimension.
    pub duality: bool,
    pub exceptional: bool,
    /// A type whose link has nonzero homology in degree `ell - 1`.
    pub obstruction: Option<SolutionType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub f_vector: Vec<u64>,
    pub euler_characteristic: i64,
    /// Every vertex link is a flag complex.
    pub flag: bool,
    pub links_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRow {
    pub solution_type: SolutionType,
    pub zero_cells: u64,
    pub model_link: String,
    pub nu_ad: u32,
    pub nu_bc: u32,
    pub lower_bound: i64,
    pub homology: Option<HomologyResult>,
    pub connectivity: Option<Connectivity>,
    /// The actual link of a representative 0-cell is isomorphic to the model.
    pub isomorphic_to_model: Option<bool>,
}

/// Build the report for `Conf_r(n, N)`.
pub fn report(robots: u32, left: u32, right: u32, options: &ReportOptions) -> Result<Report> {
    let p = Parameters::for_conf(robots, left, right)?;
    let trivial = !p.is_nontrivial();
    if trivial && !options.allow_trivial {
        return Err(Error::Trivial(p));
    }
    let (orbit, canon) = symmetry_orbit(&p);

    let zero_cells = binomial(p.total() as u64, robots as u64);
    let complex = if robots >= 1 && zero_cells <= options.build.max_zero_cells as u128 {
        Some(build_conf_with(robots, left, right, &options.build)?)
    } else {
        None
    };

    let types = type_rows(&p, complex.as_ref(), options)?;
    let summary = complex.as_ref().map(summarize);
    let dimension = p.min_entry();

    let (note, formulas) = if trivial {
        (Some(Error::Trivial(p).to_string()), None)
    } else {
        let l = ell(&p)?;
        let (bound, witness) = types
            .iter()
            .map(|row| (row.lower_bound, row.solution_type))
            .min()
            .expect("solutions exist");
        let obstruction = types
            .iter()
            .find(|row| row.homology.as_ref().is_some_and(|h| !h.is_zero_in(l as i64 - 1)))
            .map(|row| row.solution_type);
        (
            None,
            Some(Formulas {
                ell: l,
                ell_candidates: ell_candidates(&p),
                statement: connectivity_statement(l),
                min_link_bound: bound,
                witness,
                duality: l == dimension,
                exceptional: is_exceptional(&canon)?,
                obstruction,
            }),
        )
    };

    Ok(Report {
        schema: SCHEMA.to_string(),
        parameters: p,
        orbit: orbit.into_iter().collect(),
        canonical: canonical(&p),
        note,
        formulas,
        dimension,
        labelled_cell_counts: labelled_f_vector(&p).iter().map(ToString::to_string).collect(),
        complex: summary,
        types,
    })
}

pub fn connectivity_statement(ell: u32) -> String {
    let l = ell as i64;
    format!(
        "{}-connected at infinity, not {}-connected at infinity",
        l - 2,
        l - 1
    )
}

fn summarize(c: &CubeComplex) -> ComplexSummary {
    let links = c.all_vertex_links();
    ComplexSummary {
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
        flag: links.par_iter().all(|(_, lk)| is_flag(lk)),
        links_checked: links.len(),
    }
}

fn type_rows(p: &Parameters, complex: Option<&CubeComplex>, options: &ReportOptions) -> Result<Vec<TypeRow>> {
    let representatives = complex.map(CubeComplex::type_representatives);
    solution_types(p)
        .into_par_iter()
        .map(|t| {
            let model = model_link(&t, p.left, p.right)?;
            let faces = chessboard_face_count(t.a, t.d) * chessboard_face_count(t.b, t.c);
            let (homology, connectivity) = if options.force_homology || faces <= DEFAULT_LINK_FACE_CAP {
                let (h, c) = connectivity_of(&model)?;
                (Some(h), Some(c))
            } else {
                (None, None)
            };
            let isomorphic_to_model = match (complex, &representatives) {
                (Some(c), Some(reps)) => match reps.get(&t) {
                    Some(v) => Some(are_isomorphic(&c.vertex_link(v)?, &model)?),
                    None => None,
                },
                _ => None,
            };
            Ok(TypeRow {
                solution_type: t,
                zero_cells: (binomial(p.left as u64, t.a as u64) * binomial(p.right as u64, t.b as u64)) as u64,
                model_link: describe_model_link(&t),
                nu_ad: nu(t.a, t.d),
                nu_bc: nu(t.b, t.c),
                lower_bound: link_lower_bound(&t),
                homology,
                connectivity,
                isomorphic_to_model,
            })
        })
        .collect()
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameters(format!("malformed report: {e}")))
    }

    pub fn to_text(&self) -> String {
        let p = &self.parameters;
        let mut out = String::new();
        let _ = writeln!(out, "Conf_{}({},{})  {}", p.robots, p.left, p.right, p);
        let orbit: Vec<String> = self
            .orbit
            .iter()
            .map(|q| format!("({},{},{},{})", q.robots, q.ghosts, q.left, q.right))
            .collect();
        let _ = writeln!(out, "orbit: {}", orbit.join(" "));
        let c = &self.canonical;
        let _ = writeln!(out, "canonical: ({},{},{},{})", c.robots, c.ghosts, c.left, c.right);
        let _ = writeln!(out, "dimension: {}", self.dimension);
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
        }
        if let Some(f) = &self.formulas {
            let [l0, l1, l2] = f.ell_candidates;
            let _ = writeln!(out, "ell = {} (candidates {l0}, {l1}, {l2})", f.ell);
            let _ = writeln!(out, "universal cover: {}", f.statement);
            let _ = writeln!(out, "minimum link bound: {} at type {}", f.min_link_bound, f.witness);
            let _ = writeln!(out, "duality complex: {}", yes_no(f.duality));
            let _ = writeln!(out, "exceptional case: {}", yes_no(f.exceptional));
            match f.obstruction {
                Some(t) => {
                    let _ = writeln!(out, "nonzero H̃_{} in the link of type {t}", f.ell as i64 - 1);
                }
                None => {
                    let _ = writeln!(out, "no link homology witness computed in degree {}", f.ell as i64 - 1);
                }
            }
        }
        if let Some(s) = &self.complex {
            let fv: Vec<String> = s.f_vector.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "f-vector: ({})  euler characteristic: {}", fv.join(","), s.euler_characteristic);
            let _ = writeln!(out, "flag links: {} ({} checked)", yes_no(s.flag), s.links_checked);
        }
        let _ = writeln!(out, "labelled cover cells: {}", self.labelled_cell_counts.join(","));
        let _ = writeln!(out, "types:");
        for row in &self.types {
            let homology = match (&row.homology, &row.connectivity) {
                (Some(h), Some(c)) => format!("  hconn {c}  [{}]", h.summary()),
                _ => String::new(),
            };
            let iso = match row.isomorphic_to_model {
                Some(true) => "  link = model",
                Some(false) => "  link != model",
                None => "",
            };
            let _ = writeln!(
                out,
                "  {}  x{}  {}  nu {} + {}  bound {}{}{}",
                row.solution_type, row.zero_cells, row.model_link, row.nu_ad, row.nu_bc, row.lower_bound, homology, iso
            );
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
