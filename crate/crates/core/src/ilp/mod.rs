//! The ring grooming integer program.
//!
//! For rings `i = 1..R`, vertices `j` and pairs `j < k`:
//!
//! * `x_i_j` (binary): ring `i` has an ADM at `j`;
//! * `t0_i_j_k`, `t1_i_j_k` (nonnegative integers): units of `{j,k}` on ring
//!   `i` along the outer (through edge `n`) and inner arc.
//!
//! Rows: `cov_j_k` (every pair fully served), `cap_i_l` (edge load at most
//! `c`), `adm_i_j` (traffic at `j` on ring `i` needs `x_i_j`, at most `2c`
//! units), and optionally `cutA_i_j_k` / `cutB_i_j_k`
//! (`t0 + t1 <= d_jk x_ij` and `<= d_jk x_ik`). The objective is `sum x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{all_pairs, total_demand, Arc, Instance, Pair, Solution};
use crate::ringload::delta;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

/// `sum coeff * var  sense  rhs`; variables are indices into
/// [`IlpModel::variables`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(i64, usize)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub n: usize,
    pub c: u32,
    pub ring_count: usize,
    pub variables: Vec<Variable>,
    pub rows: Vec<Row>,
    index: HashMap<String, usize>,
}

pub fn x_name(ring: usize, v: usize) -> String {
    format!("x_{ring}_{v}")
}

pub fn t_name(ring: usize, pair: Pair, arc: Arc) -> String {
    let tag = match arc {
        Arc::Outer => "t0",
        Arc::Inner => "t1",
    };
    format!("{tag}_{ring}_{}_{}", pair.j(), pair.k())
}

impl IlpModel {
    pub fn var(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }

    fn push_var(&mut self, name: String, kind: VarKind) -> usize {
        let id = self.variables.len();
        self.index.insert(name.clone(), id);
        self.variables.push(Variable { name, kind });
        id
    }
}

/// Builds the model with `rings` rings (default: the total demand).
pub fn build_ilp(inst: &Instance, rings: Option<usize>, with_cuts: bool) -> IlpModel {
    let n = inst.n();
    let c = inst.capacity() as i64;
    let r_count = rings.unwrap_or(total_demand(inst) as usize);
    let pairs: Vec<Pair> = all_pairs(n).collect();
    let mut m = IlpModel {
        n,
        c: inst.capacity(),
        ring_count: r_count,
        variables: Vec::new(),
        rows: Vec::new(),
        index: HashMap::new(),
    };
    let mut x = vec![vec![0; n + 1]; r_count + 1];
    let mut t0 = vec![vec![0; pairs.len()]; r_count + 1];
    let mut t1 = vec![vec![0; pairs.len()]; r_count + 1];
    for i in 1..=r_count {
        for v in 1..=n {
            x[i][v] = m.push_var(x_name(i, v), VarKind::Binary);
        }
        for (q, &p) in pairs.iter().enumerate() {
            t0[i][q] = m.push_var(t_name(i, p, Arc::Outer), VarKind::General);
            t1[i][q] = m.push_var(t_name(i, p, Arc::Inner), VarKind::General);
        }
    }

    for (q, &p) in pairs.iter().enumerate() {
        let terms = (1..=r_count).flat_map(|i| [(1, t0[i][q]), (1, t1[i][q])]).collect();
        m.rows.push(Row {
            name: format!("cov_{}_{}", p.j(), p.k()),
            terms,
            sense: Sense::Eq,
            rhs: inst.demand(p) as i64,
        });
    }
    for i in 1..=r_count {
        for l in 1..=n {
            let terms = pairs
                .iter()
                .enumerate()
                .map(|(q, p)| {
                    let outer = delta(p.j(), p.k(), l, n).expect("valid pair and edge") == 1;
                    (1, if outer { t0[i][q] } else { t1[i][q] })
                })
                .collect();
            m.rows.push(Row {
                name: format!("cap_{i}_{l}"),
                terms,
                sense: Sense::Le,
                rhs: c,
            });
        }
    }
    for i in 1..=r_count {
        for v in 1..=n {
            let mut terms: Vec<(i64, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| p.contains(v))
                .flat_map(|(q, _)| [(1, t0[i][q]), (1, t1[i][q])])
                .collect();
            terms.push((-2 * c, x[i][v]));
            m.rows.push(Row {
                name: format!("adm_{i}_{v}"),
                terms,
                sense: Sense::Le,
                rhs: 0,
            });
        }
    }
    if with_cuts {
        for i in 1..=r_count {
            for (q, &p) in pairs.iter().enumerate() {
                let d = inst.demand(p) as i64;
                for (tag, end) in [("cutA", p.j()), ("cutB", p.k())] {
                    m.rows.push(Row {
                        name: format!("{tag}_{i}_{}_{}", p.j(), p.k()),
                        terms: vec![(1, t0[i][q]), (1, t1[i][q]), (-d, x[i][end])],
                        sense: Sense::Le,
                        rhs: 0,
                    });
                }
            }
        }
    }
    m
}

const WRAP: usize = 78;

fn write_terms(
    out: &mut String,
    head: &str,
    terms: &[(i64, usize)],
    vars: &[Variable],
    tail: Option<&str>,
) {
    let mut line = String::from(head);
    for (idx, &(coeff, v)) in terms.iter().filter(|t| t.0 != 0).enumerate() {
        let name = &vars[v].name;
        let sign = if coeff < 0 { "-" } else { "+" };
        let mag = coeff.unsigned_abs();
        let body = if mag == 1 { name.clone() } else { format!("{mag} {name}") };
        let piece = match (idx, coeff < 0) {
            (0, false) => body,
            (0, true) => format!("- {body}"),
            _ => format!("{sign} {body}"),
        };
        if line.len() + piece.len() + 1 > WRAP && line.trim().len() > head.trim().len() {
            out.push_str(line.trim_end());
            out.push('\n');
            line = String::from("   ");
        } else if !line.ends_with(' ') {
            line.push(' ');
        }
        line.push_str(&piece);
    }
    if let Some(tail) = tail {
        if line.len() + tail.len() + 1 > WRAP {
            out.push_str(line.trim_end());
            out.push('\n');
            line = String::from("   ");
        } else {
            line.push(' ');
        }
        line.push_str(tail);
    }
    out.push_str(&line);
    out.push('\n');
}

/// CPLEX LP text: `Minimize`, `Subject To`, `Bounds`, `Binaries`,
/// `Generals`, `End`. Long expressions wrap onto indented continuation lines.
pub fn export_lp_text(m: &IlpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ ring grooming: n = {}, c = {}, rings = {}", m.n, m.c, m.ring_count);
    out.push_str("Minimize\n");
    let objective: Vec<(i64, usize)> = m
        .variables
        .iter()
        .enumerate()
        .filter(|(_, v)| v.kind == VarKind::Binary)
        .map(|(id, _)| (1, id))
        .collect();
    if objective.is_empty() {
        out.push_str(" obj: 0\n");
    } else {
        write_terms(&mut out, " obj:", &objective, &m.variables, None);
    }
    out.push_str("Subject To\n");
    for row in &m.rows {
        let head = format!(" {}:", row.name);
        let tail = format!("{} {}", row.sense.symbol(), row.rhs);
        if row.terms.iter().all(|t| t.0 == 0) {
            let _ = writeln!(out, "{head} 0 {tail}");
        } else {
            write_terms(&mut out, &head, &row.terms, &m.variables, Some(&tail));
        }
    }
    out.push_str("Bounds\n");
    for v in &m.variables {
        match v.kind {
            VarKind::Binary => {
                let _ = writeln!(out, " 0 <= {} <= 1", v.name);
            }
            VarKind::General => {
                let _ = writeln!(out, " {} >= 0", v.name);
            }
        }
    }
    for (section, kind) in [("Binaries", VarKind::Binary), ("Generals", VarKind::General)] {
        out.push_str(section);
        out.push('\n');
        let mut line = String::new();
        for v in m.variables.iter().filter(|v| v.kind == kind) {
            if !line.is_empty() && line.len() + v.name.len() + 1 > WRAP {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            line.push(' ');
            line.push_str(&v.name);
        }
        if !line.is_empty() {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out.push_str("End\n");
    out
}

/// Variable values by name.
pub type Assignment = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IlpError {
    #[error("solution uses {rings} rings but the model has {limit}")]
    TooManyRings { rings: usize, limit: usize },
    #[error("solution refers to vertex {vertex}, outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("assignment has no value for {0}")]
    MissingVariable(String),
    #[error("assignment names unknown variable {0}")]
    UnknownVariable(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Reads `name value` lines; blank lines and `#` comments are skipped.
pub fn parse_assignment(text: &str) -> Result<Assignment, IlpError> {
    let mut out = Assignment::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| IlpError::Syntax { line: idx + 1, message };
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err("expected `name value`".into()));
        };
        let value: i64 = value
            .parse()
            .map_err(|_| err(format!("bad integer {value:?}")))?;
        if out.insert(name.to_string(), value).is_some() {
            return Err(err(format!("{name} assigned twice")));
        }
    }
    Ok(out)
}

/// `name value` lines in the model's variable order.
pub fn format_assignment(m: &IlpModel, a: &Assignment) -> String {
    let mut out = String::new();
    for v in &m.variables {
        if let Some(val) = a.get(&v.name) {
            let _ = writeln!(out, "{} {val}", v.name);
        }
    }
    out
}

/// Ring `i` of the solution becomes ring `i` of the model: its ADMs set
/// `x`, outer units go to `t0`, inner units to `t1`. Remaining rings are zero.
pub fn solution_to_assignment(m: &IlpModel, sol: &Solution) -> Result<Assignment, IlpError> {
    if sol.rings.len() > m.ring_count {
        return Err(IlpError::TooManyRings { rings: sol.rings.len(), limit: m.ring_count });
    }
    let mut a: Assignment = m.variables.iter().map(|v| (v.name.clone(), 0)).collect();
    for (idx, ring) in sol.rings.iter().enumerate() {
        let i = idx + 1;
        for &v in &ring.adms {
            if !(1..=m.n).contains(&v) {
                return Err(IlpError::VertexOutOfRange { vertex: v, n: m.n });
            }
            a.insert(x_name(i, v), 1);
        }
        for r in &ring.routed {
            if r.pair.k() > m.n {
                return Err(IlpError::VertexOutOfRange { vertex: r.pair.k(), n: m.n });
            }
            *a.get_mut(&t_name(i, r.pair, r.arc)).expect("variable exists") += r.units as i64;
        }
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowViolation {
    pub row: String,
    pub lhs: i64,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssignmentReport {
    pub violated_rows: Vec<RowViolation>,
    /// Variables outside their bounds (binary not 0/1, negative integer).
    pub bound_violations: Vec<String>,
}

impl AssignmentReport {
    pub fn is_feasible(&self) -> bool {
        self.violated_rows.is_empty() && self.bound_violations.is_empty()
    }
}

/// Evaluates every row and bound in integer arithmetic.
pub fn check_assignment(m: &IlpModel, a: &Assignment) -> Result<AssignmentReport, IlpError> {
    if let Some(name) = a.keys().find(|k| m.var(k).is_none()) {
        return Err(IlpError::UnknownVariable(name.clone()));
    }
    let values = m
        .variables
        .iter()
        .map(|v| a.get(&v.name).copied().ok_or_else(|| IlpError::MissingVariable(v.name.clone())))
        .collect::<Result<Vec<i64>, _>>()?;
    let mut report = AssignmentReport::default();
    for (v, &val) in m.variables.iter().zip(&values) {
        let ok = match v.kind {
            VarKind::Binary => val == 0 || val == 1,
            VarKind::General => val >= 0,
        };
        if !ok {
            report.bound_violations.push(v.name.clone());
        }
    }
    for row in &m.rows {
        let lhs: i64 = row.terms.iter().map(|&(coeff, v)| coeff * values[v]).sum();
        if !row.sense.holds(lhs, row.rhs) {
            report.violated_rows.push(RowViolation {
                row: row.name.clone(),
                lhs,
                sense: row.sense,
                rhs: row.rhs,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{adm_count, RingPlan, RoutedDemand};

    fn toy() -> Instance {
        Instance::new(2, 1, [(1, 2, 1)]).unwrap()
    }

    fn count(m: &IlpModel, prefix: &str) -> usize {
        m.rows.iter().filter(|r| r.name.starts_with(prefix)).count()
    }

    #[test]
    fn toy_counts() {
        let m = build_ilp(&toy(), Some(1), false);
        assert_eq!((count(&m, "cov_"), count(&m, "cap_"), count(&m, "adm_")), (1, 2, 2));
        let kinds = |k| m.variables.iter().filter(|v| v.kind == k).count();
        assert_eq!((kinds(VarKind::Binary), kinds(VarKind::General)), (2, 2));
        let cut = build_ilp(&toy(), Some(1), true);
        assert_eq!(cut.rows.len(), m.rows.len() + 2);
        assert!(m.rows.iter().all(|r| cut.rows.contains(r)));
        let three = build_ilp(&toy(), Some(3), false);
        assert_eq!(three.variables.len(), 3 * m.variables.len());
    }

    #[test]
    fn default_ring_count() {
        let m = build_ilp(&fixtures::nine_vertex_instance(), None, false);
        assert_eq!(m.ring_count, 9);
        assert_eq!(m.variables.len(), 9 * (9 + 2 * 36));
    }

    #[test]
    fn capacity_rows_follow_arcs() {
        let m = build_ilp(&toy(), Some(1), false);
        let names = |row: &str| -> Vec<&str> {
            m.row(row).unwrap().terms.iter().map(|&(_, v)| m.variables[v].name.as_str()).collect()
        };
        assert_eq!(names("cap_1_1"), vec!["t1_1_1_2"]);
        assert_eq!(names("cap_1_2"), vec!["t0_1_1_2"]);
    }

    #[test]
    fn nine_adm_solution_maps_to_feasible_assignment() {
        let inst = fixtures::nine_vertex_instance();
        let sol = fixtures::nine_vertex_nine_adm_solution();
        let m = build_ilp(&inst, None, true);
        let a = solution_to_assignment(&m, &sol).unwrap();
        let xs: i64 = a.iter().filter(|(k, _)| k.starts_with("x_")).map(|(_, v)| v).sum();
        assert_eq!(xs as u64, adm_count(&sol));
        assert_eq!(xs, 9);
        assert!(check_assignment(&m, &a).unwrap().is_feasible());
    }

    #[test]
    fn empty_solution_is_all_zero() {
        let m = build_ilp(&toy(), Some(2), false);
        let a = solution_to_assignment(&m, &Solution::default()).unwrap();
        assert_eq!(a.len(), m.variables.len());
        assert!(a.values().all(|&v| v == 0));
        let report = check_assignment(&m, &a).unwrap();
        assert_eq!(report.violated_rows.len(), 1);
        assert_eq!(report.violated_rows[0].row, "cov_1_2");
    }

    #[test]
    fn violations_are_named() {
        let inst = fixtures::nine_vertex_instance();
        let sol = fixtures::nine_vertex_nine_adm_solution();
        let m = build_ilp(&inst, None, false);
        let good = solution_to_assignment(&m, &sol).unwrap();

        // one outer unit of {1,3} removed from ring 1: coverage breaks
        let mut a = good.clone();
        *a.get_mut("t0_1_1_3").unwrap() -= 1;
        *a.get_mut("t0_5_1_3").unwrap() += 1;
        let report = check_assignment(&m, &a).unwrap();
        assert!(report.violated_rows.iter().any(|v| v.row == "adm_5_1"), "{report:?}");

        let mut a = good.clone();
        *a.get_mut("t0_1_1_3").unwrap() -= 1;
        let report = check_assignment(&m, &a).unwrap();
        assert_eq!(report.violated_rows[0].row, "cov_1_3");

        let mut a = good.clone();
        a.insert("x_1_1".into(), 0);
        let report = check_assignment(&m, &a).unwrap();
        assert_eq!(report.violated_rows.len(), 1);
        assert_eq!(report.violated_rows[0].row, "adm_1_1");

        let mut a = good.clone();
        a.remove("x_1_1");
        assert_eq!(check_assignment(&m, &a), Err(IlpError::MissingVariable("x_1_1".into())));
        let mut a = good;
        a.insert("y".into(), 0);
        assert_eq!(check_assignment(&m, &a), Err(IlpError::UnknownVariable("y".into())));
    }

    #[test]
    fn too_many_rings() {
        let m = build_ilp(&fixtures::nine_vertex_instance(), Some(2), false);
        let err = solution_to_assignment(&m, &fixtures::nine_vertex_nine_adm_solution());
        assert_eq!(err, Err(IlpError::TooManyRings { rings: 3, limit: 2 }));
    }

    #[test]
    fn cuts_imply_an_adm_per_terminal() {
        // Summing cutA over rings and substituting the coverage row leaves
        // -d * sum_i x_ij <= -d, i.e. sum_i x_ij >= 1.
        let inst = Instance::new(4, 2, [(1, 3, 3), (2, 4, 1)]).unwrap();
        let m = build_ilp(&inst, None, true);
        for (p, d) in inst.demands() {
            let mut combined: BTreeMap<usize, i64> = BTreeMap::new();
            for i in 1..=m.ring_count {
                let row = m.row(&format!("cutA_{i}_{}_{}", p.j(), p.k())).unwrap();
                assert_eq!((row.sense, row.rhs), (Sense::Le, 0));
                for &(coeff, v) in &row.terms {
                    *combined.entry(v).or_default() += coeff;
                }
            }
            let cov = m.row(&format!("cov_{}_{}", p.j(), p.k())).unwrap();
            for &(coeff, v) in &cov.terms {
                *combined.entry(v).or_default() -= coeff;
            }
            combined.retain(|_, coeff| *coeff != 0);
            let rhs = -(d as i64);
            let expected: BTreeMap<usize, i64> = (1..=m.ring_count)
                .map(|i| (m.var(&x_name(i, p.j())).unwrap(), rhs))
                .collect();
            assert_eq!(combined, expected);
        }
    }

    #[test]
    fn toy_golden_files() {
        let plain = export_lp_text(&build_ilp(&toy(), Some(1), false));
        assert_eq!(plain, include_str!("../../tests/fixtures/toy_n2.lp"));
        let cuts = export_lp_text(&build_ilp(&toy(), Some(1), true));
        assert_eq!(cuts, include_str!("../../tests/fixtures/toy_n2_cuts.lp"));
    }

    #[test]
    fn lp_export_is_deterministic() {
        let m = build_ilp(&fixtures::nine_vertex_instance(), None, true);
        let a = export_lp_text(&m);
        assert_eq!(a, export_lp_text(&build_ilp(&fixtures::nine_vertex_instance(), None, true)));
        assert!(a.lines().all(|l| l.len() <= 255));
        assert!(a.starts_with("\\ ring grooming"));
        assert!(a.ends_with("End\n"));
    }

    #[test]
    fn assignment_text_roundtrip() {
        let m = build_ilp(&toy(), Some(1), false);
        let sol = Solution::new(vec![RingPlan::from_routed(vec![RoutedDemand::new(
            Pair::new(1, 2).unwrap(),
            Arc::Outer,
            1,
        )])]);
        let a = solution_to_assignment(&m, &sol).unwrap();
        let text = format_assignment(&m, &a);
        assert_eq!(text, "x_1_1 1\nx_1_2 1\nt0_1_1_2 1\nt1_1_1_2 0\n");
        assert_eq!(parse_assignment(&text).unwrap(), a);
        assert!(matches!(parse_assignment("x 1 2"), Err(IlpError::Syntax { line: 1, .. })));
        assert!(matches!(parse_assignment("x\n"), Err(IlpError::Syntax { .. })));
        assert!(matches!(parse_assignment("x 1\nx 0\n"), Err(IlpError::Syntax { line: 2, .. })));
    }
}
