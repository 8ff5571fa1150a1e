//! Audits the known inequalities between partition numbers on stored values.
//!
//! A relation is reported as holding only when it follows from the stored
//! bounds in the right direction: `L <= R` needs an upper bound on `L` and a
//! lower bound on `R`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::db::{db_key, DbResult, ResultsDb};
use crate::error::{Error, Result};
use crate::kind::{Kind, KindSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMode {
    /// Compare values as stored.
    Strict,
    /// When only the left side is restricted to multiples of `h`, round the
    /// right side up to a multiple of `h` first.
    Roundup,
}

impl FromStr for ChainMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Self::Strict),
            "roundup" | "round-up" => Ok(Self::Roundup),
            _ => Err(Error::Parse(format!("chain mode {s:?}"))),
        }
    }
}

impl fmt::Display for ChainMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Roundup => "roundup",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStatus {
    Holds,
    Violated,
    NotComparable,
}

impl fmt::Display for ChainStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Holds => "holds",
            Self::Violated => "violated",
            Self::NotComparable => "not-comparable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Side {
    pub key: String,
    pub label: String,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    /// The right side is multiplied by this before comparing.
    pub factor: usize,
    pub rounded_to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub id: String,
    pub relation: String,
    pub left: Side,
    pub right: Side,
    pub status: ChainStatus,
    pub mode: ChainMode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub mode: ChainMode,
    pub entries: Vec<ChainEntry>,
}

impl ChainReport {
    pub fn count(&self, status: ChainStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// Entries with the given id whose left side is `left`.
    pub fn find(&self, id: &str, left: &KindSpec) -> Option<&ChainEntry> {
        let key = db_key(left, true);
        self.entries.iter().find(|e| e.id == id && e.left.key == key)
    }
}

/// How a relation's right-hand side is derived from the left.
struct Rule {
    id: &'static str,
    equality: bool,
    right: fn(&KindSpec, &ResultsDb) -> Option<(KindSpec, usize)>,
}

fn same(kind: Kind, s: &KindSpec) -> Option<(KindSpec, usize)> {
    Some((KindSpec::new(kind, s.h, s.c).ok()?, 1))
}

/// `m * hj(1; h^m)`.
fn scaled_line(s: &KindSpec) -> Option<(KindSpec, usize)> {
    let m = s.kind.m();
    let big = s.h.checked_pow(m as u32)?;
    Some((KindSpec::new(Kind::Hj { m: 1 }, big, s.c).ok()?, m))
}

/// Exact Gallai-Witt value `w_C(h, m)` from the database.
fn gw_value(db: &ResultsDb, h: usize, m: usize, c: usize) -> Option<usize> {
    let spec = KindSpec::new(Kind::Gw { m }, h, c).ok()?;
    db.entries.get(&db_key(&spec, true))?.value
}

const RULES: &[Rule] = &[
    Rule {
        id: "f8<=f9",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F8 { .. }).then(|| same(Kind::F9 { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "f8s<=f9s",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F8Star { .. }).then(|| same(Kind::F9Star { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "f8<=f8s",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F8 { .. }).then(|| same(Kind::F8Star { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "f9<=f9s",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F9 { .. }).then(|| same(Kind::F9Star { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "f8s<=hj",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F8Star { .. }).then(|| same(Kind::Hj { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "hj<=hjeq",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::Hj { .. }).then(|| same(Kind::HjEq { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "f9s<=f13",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F9Star { .. }).then(|| same(Kind::F13 { m: s.kind.m() }, s))?,
    },
    Rule {
        id: "f9sn<=f13(mn)",
        equality: false,
        right: |s, _| match s.kind {
            Kind::F9StarN { m, n } => same(Kind::F13 { m: m * n }, s),
            _ => None,
        },
    },
    Rule {
        id: "f9s<=m*hj(1;h^m)",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::F9Star { .. }).then(|| scaled_line(s))?,
    },
    Rule {
        id: "hjeq<=m*hj(1;h^m)",
        equality: false,
        right: |s, _| matches!(s.kind, Kind::HjEq { .. }).then(|| scaled_line(s))?,
    },
    Rule {
        id: "vdw(m+1)=gw(1,m)",
        equality: true,
        right: |s, _| match s.kind {
            Kind::Vdw { m } if m >= 2 => Some((KindSpec::new(Kind::Gw { m: m - 1 }, 1, s.c).ok()?, 1)),
            _ => None,
        },
    },
    Rule {
        id: "hj(1)<=f8s(h^2*gw(h,1))",
        equality: false,
        right: |s, db| match s.kind {
            Kind::Hj { m: 1 } => {
                let w = gw_value(db, s.h, 1, s.c)?;
                same(Kind::F8Star { m: s.h * s.h * w }, s)
            }
            _ => None,
        },
    },
    Rule {
        id: "hj<=f13(h*gw(h,m))",
        equality: false,
        right: |s, db| match s.kind {
            Kind::Hj { m } => {
                let w = gw_value(db, s.h, m, s.c)?;
                same(Kind::F13 { m: s.h * w }, s)
            }
            _ => None,
        },
    },
];

fn round_up(x: usize, h: usize) -> usize {
    x.div_ceil(h) * h
}

fn side(spec: &KindSpec, r: Option<&DbResult>, factor: usize, round: Option<usize>) -> Side {
    let adjust = |x: usize| {
        let x = x * factor;
        round.map_or(x, |h| round_up(x, h))
    };
    let label = if factor == 1 {
        spec.to_string()
    } else {
        format!("{factor}*{spec}")
    };
    Side {
        key: db_key(spec, true),
        label,
        lower: r.map(|r| adjust(r.lower)),
        upper: r.and_then(|r| r.upper).map(adjust),
        factor,
        rounded_to: round,
    }
}

fn judge(l: &Side, r: &Side, equality: bool) -> ChainStatus {
    let (Some(ll), Some(rl)) = (l.lower, r.lower) else {
        return ChainStatus::NotComparable;
    };
    let exceeds = |lo: usize, up: Option<usize>| up.is_some_and(|u| lo > u);
    if equality {
        if exceeds(ll, r.upper) || exceeds(rl, l.upper) {
            return ChainStatus::Violated;
        }
        if l.upper == Some(ll) && r.upper == Some(rl) && ll == rl {
            return ChainStatus::Holds;
        }
        return ChainStatus::NotComparable;
    }
    if exceeds(ll, r.upper) {
        return ChainStatus::Violated;
    }
    if l.upper.is_some_and(|u| u <= rl) {
        return ChainStatus::Holds;
    }
    ChainStatus::NotComparable
}

/// Checks every applicable relation whose left side is stored in `db`.
pub fn verify_chain(db: &ResultsDb, mode: ChainMode) -> Result<ChainReport> {
    let mut entries = Vec::new();
    for (key, entry) in &db.entries {
        let left_spec = entry.spec()?;
        if *key != db_key(&left_spec, true) {
            continue;
        }
        let left_result = db.get_key(key)?;
        for rule in RULES {
            let Some((right_spec, factor)) = (rule.right)(&left_spec, db) else {
                continue;
            };
            let right_result = db.get(&right_spec, true)?;
            let round = (mode == ChainMode::Roundup
                && left_spec.kind.divisible_family()
                && !right_spec.kind.divisible_family())
            .then_some(left_spec.h);
            let left = side(&left_spec, left_result.as_ref(), 1, None);
            let right = side(&right_spec, right_result.as_ref(), factor, round);
            let status = judge(&left, &right, rule.equality);
            let mut certificates = Vec::new();
            if status == ChainStatus::Violated {
                for r in left_result.iter().chain(right_result.iter()) {
                    certificates.extend(r.lower_cert.iter().cloned());
                    certificates.extend(r.upper_cert.iter().cloned());
                }
            }
            let op = if rule.equality { "=" } else { "<=" };
            entries.push(ChainEntry {
                id: rule.id.to_string(),
                relation: format!("{} {op} {}", left.label, right.label),
                left,
                right,
                status,
                mode,
                certificates,
            });
        }
    }
    Ok(ChainReport { mode, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{compute_number, Budget, SearchOptions};

    fn put(db: &mut ResultsDb, kind: Kind, h: usize, c: usize, max: usize) {
        let spec = KindSpec::new(kind, h, c).unwrap();
        let r = compute_number(&spec, max, Budget::unlimited(), &SearchOptions::default()).unwrap();
        db.record(&DbResult::from_number(&r)).unwrap();
    }

    #[test]
    fn bounds_direction() {
        let mk = |lower, upper| Side {
            key: String::new(),
            label: String::new(),
            lower: Some(lower),
            upper,
            factor: 1,
            rounded_to: None,
        };
        assert_eq!(judge(&mk(2, Some(2)), &mk(3, None), false), ChainStatus::Holds);
        assert_eq!(judge(&mk(2, None), &mk(3, None), false), ChainStatus::NotComparable);
        assert_eq!(judge(&mk(5, None), &mk(3, Some(3)), false), ChainStatus::Violated);
        assert_eq!(judge(&mk(3, Some(3)), &mk(3, Some(3)), true), ChainStatus::Holds);
        assert_eq!(judge(&mk(3, None), &mk(3, Some(3)), true), ChainStatus::NotComparable);
    }

    #[test]
    fn identity_on_computed_values() {
        let dir = tempfile::tempdir().unwrap();
        let mut db = ResultsDb::new(&dir.path().join("r.json"));
        put(&mut db, Kind::Vdw { m: 3 }, 1, 2, 12);
        put(&mut db, Kind::Gw { m: 2 }, 1, 2, 12);
        let report = verify_chain(&db, ChainMode::Strict).unwrap();
        let e = report.entries.iter().find(|e| e.id == "vdw(m+1)=gw(1,m)").unwrap();
        assert_eq!(e.status, ChainStatus::Holds);
        assert_eq!(e.left.lower, Some(9));
    }

    #[test]
    fn planted_violation_carries_certificates() {
        let dir = tempfile::tempdir().unwrap();
        let mut db = ResultsDb::new(&dir.path().join("r.json"));
        put(&mut db, Kind::F9Star { m: 2 }, 2, 2, 6);
        // f13(1) stored under the m=2 key: smaller than f9s(2)
        let fake = KindSpec::new(Kind::F13 { m: 2 }, 2, 2).unwrap();
        let small = KindSpec::new(Kind::F13 { m: 1 }, 2, 2).unwrap();
        let r = compute_number(&small, 4, Budget::unlimited(), &SearchOptions::default()).unwrap();
        let mut planted = DbResult::from_number(&r);
        planted.spec = fake;
        planted.upper_cert = planted.upper_cert.map(|mut c| {
            c.m = 2;
            c
        });
        db.record(&planted).unwrap();
        let report = verify_chain(&db, ChainMode::Strict).unwrap();
        let e = report.entries.iter().find(|e| e.id == "f9s<=f13").unwrap();
        assert_eq!(e.status, ChainStatus::Violated);
        assert!(e.certificates.len() >= 2);
    }
}
