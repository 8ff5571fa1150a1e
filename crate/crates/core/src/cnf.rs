//! DIMACS encoding of "a bad coloring exists", and decoding of models.
//!
//! Two colors use one variable per point (true means color 1). Other color
//! counts use one-hot variables `p*c + col + 1` with exactly-one clauses.
//! Monochromatic kinds forbid each candidate set from being constant;
//! the remaining kinds get one auxiliary variable per required-equal pair and
//! a clause per candidate asking that some pair differ.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::certificate::Certificate;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::kind::{Kind, KindSpec};
use crate::search::SearchStats;
use crate::witness::WitnessFamily;
use crate::words::Color;

pub const ENCODING: &str = "v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let mut header = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('c') {
                comments.push(c.trim().to_string());
                continue;
            }
            if let Some(p) = line.strip_prefix("p cnf") {
                let nums: Vec<usize> = p
                    .split_whitespace()
                    .map(|x| x.parse().map_err(|_| Error::Parse(format!("header {line:?}"))))
                    .collect::<Result<_>>()?;
                let [vars, count] = nums[..] else {
                    return Err(Error::Parse(format!("header {line:?}")));
                };
                header = Some((vars, count));
                continue;
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| Error::Parse(format!("literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::Parse("missing `p cnf` header".into()))?;
        if !current.is_empty() || clauses.len() != count {
            return Err(Error::Parse(format!("expected {count} clauses, read {}", clauses.len())));
        }
        if clauses.iter().flatten().any(|l| l.unsigned_abs() as usize > vars) {
            return Err(Error::Parse("literal exceeds the declared variable count".into()));
        }
        Ok(Self { vars, clauses, comments })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CnfOptions {
    pub max_clauses: usize,
    pub divisibility: bool,
}

impl Default for CnfOptions {
    fn default() -> Self {
        Self {
            max_clauses: 20_000_000,
            divisibility: true,
        }
    }
}

fn point_var(p: usize, col: usize, c: usize) -> i32 {
    if c == 2 {
        p as i32 + 1
    } else {
        (p * c + col) as i32 + 1
    }
}

fn monochromatic_kind(kind: Kind) -> bool {
    matches!(
        kind,
        Kind::Hj { .. } | Kind::HjEq { .. } | Kind::Vdw { .. } | Kind::Gw { .. } | Kind::Oplus
    )
}

struct Builder {
    c: usize,
    vars: usize,
    clauses: Vec<Vec<i32>>,
    max: usize,
    equal: HashMap<(u32, u32), i32>,
}

impl Builder {
    fn push(&mut self, clause: Vec<i32>) -> Result<()> {
        if self.clauses.len() >= self.max {
            return Err(Error::SizeLimit(format!("more than {} clauses", self.max)));
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Variable true iff points `a` and `b` share a color.
    fn equal_var(&mut self, a: u32, b: u32) -> Result<i32> {
        let key = (a.min(b), a.max(b));
        if let Some(&e) = self.equal.get(&key) {
            return Ok(e);
        }
        self.vars += 1;
        let e = self.vars as i32;
        self.equal.insert(key, e);
        let (a, b) = (key.0 as usize, key.1 as usize);
        let c = self.c;
        if c == 2 {
            let (x, y) = (point_var(a, 0, 2), point_var(b, 0, 2));
            self.push(vec![-e, -x, y])?;
            self.push(vec![-e, x, -y])?;
            self.push(vec![e, x, y])?;
            self.push(vec![e, -x, -y])?;
        } else {
            for col in 0..c {
                let (x, y) = (point_var(a, col, c), point_var(b, col, c));
                self.push(vec![-x, -y, e])?;
                self.push(vec![-e, -x, y])?;
            }
        }
        Ok(e)
    }
}

/// Encodes "a coloring of `spec`'s ground set at `size` admits no witness".
pub fn export_cnf(spec: &KindSpec, size: usize, opts: &CnfOptions) -> Result<Cnf> {
    spec.check_admissible(size, opts.divisibility)?;
    let family = WitnessFamily::compile(spec, size)?;
    let c = spec.c;
    let points = family.points();
    let mut b = Builder {
        c,
        vars: if c == 2 { points } else { points * c },
        clauses: Vec::new(),
        max: opts.max_clauses,
        equal: HashMap::new(),
    };
    if c != 2 {
        for p in 0..points {
            b.push((0..c).map(|col| point_var(p, col, c)).collect())?;
            for x in 0..c {
                for y in x + 1..c {
                    b.push(vec![-point_var(p, x, c), -point_var(p, y, c)])?;
                }
            }
        }
    }
    let mono = monochromatic_kind(spec.kind);
    for i in 0..family.len() {
        let groups: Vec<&[u32]> = family.groups(i).collect();
        if groups.is_empty() {
            b.push(Vec::new())?;
        } else if mono {
            for g in groups {
                if c == 2 {
                    b.push(g.iter().map(|&p| point_var(p as usize, 0, 2)).collect())?;
                    b.push(g.iter().map(|&p| -point_var(p as usize, 0, 2)).collect())?;
                } else {
                    for col in 0..c {
                        b.push(g.iter().map(|&p| -point_var(p as usize, col, c)).collect())?;
                    }
                }
            }
        } else {
            let mut clause = Vec::new();
            for g in groups {
                for &q in &g[1..] {
                    clause.push(-b.equal_var(g[0], q)?);
                }
            }
            b.push(clause)?;
        }
    }
    Ok(Cnf {
        vars: b.vars,
        clauses: b.clauses,
        comments: vec![format!(
            "kind={} h={} c={} k={} encoding={ENCODING}",
            spec.kind.token(),
            spec.h,
            spec.c,
            size
        )],
    })
}

/// Reads `kind=`, `h=`, `c=`, `k=` back from the comment header.
pub fn cnf_header(cnf: &Cnf) -> Result<(KindSpec, usize)> {
    for line in &cnf.comments {
        let fields: HashMap<&str, &str> = line.split_whitespace().filter_map(|t| t.split_once('=')).collect();
        if let (Some(kind), Some(h), Some(c), Some(k)) = (fields.get("kind"), fields.get("h"), fields.get("c"), fields.get("k")) {
            if fields.get("encoding") != Some(&ENCODING) {
                return Err(Error::Parse(format!("unsupported encoding in {line:?}")));
            }
            let num = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("header field {x:?}")));
            let spec = KindSpec::new(kind.parse()?, num(h)?, num(c)?)?;
            return Ok((spec, num(k)?));
        }
    }
    Err(Error::Parse("no `c kind=... encoding=...` comment".into()))
}

/// Turns a satisfying assignment (DIMACS literals) back into a Bad certificate.
pub fn decode_cnf_model(spec: &KindSpec, size: usize, model: &[i32]) -> Result<Certificate> {
    spec.validate()?;
    let ground = spec.ground(size);
    let points = ground.size()?;
    let c = spec.c;
    let needed = if c == 2 { points } else { points * c };
    let mut value: Vec<Option<bool>> = vec![None; needed + 1];
    for &lit in model {
        let v = lit.unsigned_abs() as usize;
        if v <= needed {
            value[v] = Some(lit > 0);
        }
    }
    // solvers may omit variables that occur in no clause
    let get = |v: i32| value[v as usize].unwrap_or(false);
    let mut table = Vec::with_capacity(points);
    for p in 0..points {
        if c == 2 {
            table.push(get(point_var(p, 0, 2)) as Color);
            continue;
        }
        let mut hot = None;
        for col in 0..c {
            if get(point_var(p, col, c)) {
                if hot.is_some() {
                    return Err(Error::InvalidModel(format!("point {p} has two colors")));
                }
                hot = Some(col as Color);
            }
        }
        table.push(hot.ok_or_else(|| Error::InvalidModel(format!("point {p} has no color")))?);
    }
    let d = Coloring::new(ground, c, table)?;
    let family = WitnessFamily::compile(spec, size)?;
    if let Some(w) = family.find(&d) {
        return Err(Error::InconsistentModel(w.to_string()));
    }
    let stats = SearchStats {
        threads: 1,
        ..SearchStats::default()
    };
    Ok(Certificate::bad(spec, size, &d, stats).with_trace(serde_json::json!({ "source": "cnf-model", "encoding": ENCODING })))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    Sat(Vec<i32>),
    Unsat,
    Unknown,
}

/// Parses competition-style solver output (`s ...` and `v ...` lines).
/// A bare list of literals is read as a model.
pub fn parse_solver_output(text: &str) -> Result<SolverOutcome> {
    let mut status = None;
    let mut lits = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        let body = if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim().to_string());
            continue;
        } else if let Some(v) = line.strip_prefix('v') {
            v
        } else if line.starts_with('c') || line.is_empty() {
            continue;
        } else {
            line
        };
        for tok in body.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::Parse(format!("model literal {tok:?}")))?;
            if lit != 0 {
                lits.push(lit);
            }
        }
    }
    match status.as_deref() {
        Some("UNSATISFIABLE") => Ok(SolverOutcome::Unsat),
        Some("SATISFIABLE") | None if !lits.is_empty() => Ok(SolverOutcome::Sat(lits)),
        _ => Ok(SolverOutcome::Unknown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hj(c: usize) -> KindSpec {
        KindSpec::new(Kind::Hj { m: 1 }, 2, c).unwrap()
    }

    #[test]
    fn line_instance_counts() {
        let cnf = export_cnf(&hj(2), 2, &CnfOptions::default()).unwrap();
        assert_eq!((cnf.vars, cnf.clauses.len()), (4, 10));
        let cnf = export_cnf(&hj(2), 1, &CnfOptions::default()).unwrap();
        assert_eq!((cnf.vars, cnf.clauses.len()), (2, 2));
        let text = cnf.to_dimacs();
        assert!(text.starts_with("c kind=hj:1 h=2 c=2 k=1 encoding=v1\np cnf 2 2\n"));
        let back = Cnf::parse_dimacs(&text).unwrap();
        assert_eq!(back, cnf);
        assert_eq!(cnf_header(&back).unwrap(), (hj(2), 1));
    }

    #[test]
    fn decoding() {
        let cert = decode_cnf_model(&hj(2), 1, &[-1, 2]).unwrap();
        assert_eq!(cert.coloring.as_ref().unwrap().data, "01");
        cert.verify(false).unwrap();
        assert!(matches!(decode_cnf_model(&hj(2), 1, &[1, 2]), Err(Error::InconsistentModel(_))));
        // one-hot with point 0 carrying colors 0 and 1
        assert!(matches!(
            decode_cnf_model(&hj(3), 1, &[1, 2, -3, -4, 5, -6]),
            Err(Error::InvalidModel(_))
        ));
        assert_eq!(decode_cnf_model(&hj(2), 1, &[1]).unwrap().coloring.unwrap().data, "10");
        assert!(matches!(decode_cnf_model(&hj(3), 1, &[1]), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn size_limit() {
        let opts = CnfOptions {
            max_clauses: 3,
            ..CnfOptions::default()
        };
        assert!(matches!(export_cnf(&hj(2), 2, &opts), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn solver_output() {
        assert_eq!(
            parse_solver_output("c hi\ns SATISFIABLE\nv -1 2\nv 0\n").unwrap(),
            SolverOutcome::Sat(vec![-1, 2])
        );
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n").unwrap(), SolverOutcome::Unsat);
        assert_eq!(parse_solver_output("-1 2 0").unwrap(), SolverOutcome::Sat(vec![-1, 2]));
    }
}
