//! Naive reference implementations used to cross-check the library.
//!
//! Candidates are rebuilt here from the definitions, with their own point
//! indexing (cube words little-endian, grid points little-endian, Ω points
//! in discovery order), and colorings are enumerated exhaustively.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use hjlab::omega::omega_rank;
use hjlab::{Coloring, Kind, KindSpec};

/// One candidate witness: lists of points that must share a color.
pub type Candidate = Vec<Vec<usize>>;

pub struct Oracle {
    pub points: usize,
    pub candidates: Vec<Candidate>,
    /// Library rank of each oracle point.
    pub library_rank: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Blocks {
    Any,
    Equal,
    Size(usize),
    Singleton,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Colors {
    Mono,
    Balanced,
    Profile,
}

fn pow(b: usize, e: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * b)
}

fn digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % base);
        x /= base;
    }
    out
}

fn keep(groups: Vec<Vec<usize>>) -> Candidate {
    groups
        .into_iter()
        .map(|mut g| {
            g.sort_unstable();
            g.dedup();
            g
        })
        .filter(|g| g.len() > 1)
        .collect()
}

/// Every (blocks, anchor) labelling of `0..k`: label `< h` is an anchor
/// letter, label `h + j` puts the position in block `j`.
fn cube_candidates(k: usize, h: usize, m: usize, blocks: Blocks, colors: Colors) -> Vec<Candidate> {
    let mut out = Vec::new();
    if m == 0 || m > k {
        return out;
    }
    for code in 0..pow(h + m, k) {
        let labels = digits(code, h + m, k);
        // blocks must appear in order of first position, all non-empty
        let mut next = 0;
        let mut ok = true;
        let mut sizes = vec![0; m];
        for &l in &labels {
            if l >= h {
                let j = l - h;
                if j > next {
                    ok = false;
                    break;
                }
                if j == next {
                    next += 1;
                }
                sizes[j] += 1;
            }
        }
        if !ok || next != m {
            continue;
        }
        let admitted = match blocks {
            Blocks::Any => true,
            Blocks::Equal => sizes.iter().all(|&s| s == sizes[0]),
            Blocks::Size(n) => sizes.iter().all(|&s| s == n),
            Blocks::Singleton => sizes.iter().all(|&s| s == 1),
        };
        if !admitted {
            continue;
        }
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for a in 0..pow(h, m) {
            let letters = digits(a, h, m);
            let mut counts = vec![0; h];
            for &x in &letters {
                counts[x] += 1;
            }
            let key = match colors {
                Colors::Mono => Vec::new(),
                Colors::Balanced if counts.iter().all(|&c| c * h == m) => Vec::new(),
                Colors::Balanced => continue,
                Colors::Profile => counts,
            };
            let point: usize = labels
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let letter = if l < h { l } else { letters[l - h] };
                    letter * pow(h, i)
                })
                .sum();
            groups.entry(key).or_default().push(point);
        }
        out.push(keep(groups.into_values().collect()));
    }
    out
}

fn ap_candidates(n: usize, m: usize) -> Vec<Candidate> {
    let mut out = Vec::new();
    for start in 0..n {
        for step in 1..n.max(1) {
            if start + (m.max(1) - 1) * step >= n {
                break;
            }
            out.push(keep(vec![(0..m).map(|i| start + i * step).collect()]));
        }
    }
    if m <= 1 && n > 0 {
        out.push(Vec::new());
    }
    out
}

fn gw_candidates(h: usize, n: usize, m: usize) -> Vec<Candidate> {
    let mut out = Vec::new();
    for c in 0..pow(n, h) {
        let corner = digits(c, n, h);
        for step in 1..=n {
            if corner.iter().any(|&x| x + step * m >= n) {
                break;
            }
            let group = (0..pow(m + 1, h))
                .map(|o| {
                    let off = digits(o, m + 1, h);
                    (0..h).map(|e| (corner[e] + step * off[e]) * pow(n, e)).sum()
                })
                .collect();
            out.push(keep(vec![group]));
        }
    }
    out
}

/// Compositions of `total` into `h` parts, each part at most `total`.
fn compositions(total: usize, h: usize) -> Vec<Vec<usize>> {
    (0..pow(total + 1, h))
        .map(|x| digits(x, total + 1, h))
        .filter(|p| p.iter().sum::<usize>() == total)
        .collect()
}

fn oplus_candidates(total: usize, h: usize, index: &HashMap<Vec<usize>, usize>) -> Vec<Candidate> {
    let mut out = Vec::new();
    for step in 1..=total {
        for base in compositions(total - step, h) {
            let group = (0..h)
                .map(|a| {
                    let mut p = base.clone();
                    p[a] += step;
                    index[&p]
                })
                .collect();
            out.push(keep(vec![group]));
        }
    }
    out
}

impl Oracle {
    pub fn new(spec: &KindSpec, size: usize) -> Self {
        let h = spec.h;
        let (points, library_rank, candidates) = match spec.kind {
            Kind::Vdw { m } => (size, (0..size).collect(), ap_candidates(size, m)),
            Kind::Gw { m } => {
                let points = pow(size, h);
                // library grid ranks are big-endian
                let ranks = (0..points)
                    .map(|p| {
                        let c = digits(p, size, h);
                        c.iter().rev().fold(0, |acc, &x| acc * size + x)
                    })
                    .collect();
                (points, ranks, gw_candidates(h, size, m))
            }
            Kind::Oplus => {
                let all = compositions(size, h);
                let index: HashMap<Vec<usize>, usize> = all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
                let ranks = all.iter().map(|p| omega_rank(p)).collect();
                (all.len(), ranks, oplus_candidates(size, h, &index))
            }
            kind => {
                let points = pow(h, size);
                let ranks = (0..points)
                    .map(|p| digits(p, h, size).iter().fold(0, |acc, &x| acc * h + x))
                    .collect();
                let cands = match kind {
                    Kind::Hj { m } => cube_candidates(size, h, m, Blocks::Any, Colors::Mono),
                    Kind::HjEq { m } => cube_candidates(size, h, m, Blocks::Equal, Colors::Mono),
                    Kind::F8 { m } => cube_candidates(size, h, m, Blocks::Any, Colors::Balanced),
                    Kind::F9 { m } => cube_candidates(size, h, m, Blocks::Equal, Colors::Balanced),
                    Kind::F8Star { m } => cube_candidates(size, h, m, Blocks::Any, Colors::Profile),
                    Kind::F9Star { m } => cube_candidates(size, h, m, Blocks::Equal, Colors::Profile),
                    Kind::F9StarN { m, n } => cube_candidates(size, h, m, Blocks::Size(n), Colors::Profile),
                    Kind::F13 { m } => cube_candidates(size, h, m, Blocks::Singleton, Colors::Profile),
                    _ => unreachable!(),
                };
                (points, ranks, cands)
            }
        };
        Self {
            points,
            candidates,
            library_rank,
        }
    }

    fn satisfied(c: &Candidate, table: &[u8]) -> bool {
        c.iter().all(|g| g.iter().all(|&p| table[p] == table[g[0]]))
    }

    pub fn has_witness(&self, table: &[u8]) -> bool {
        self.candidates.iter().any(|c| Self::satisfied(c, table))
    }

    /// Whether the library coloring `d` admits a witness.
    pub fn admits(&self, d: &Coloring) -> bool {
        let table: Vec<u8> = self.library_rank.iter().map(|&r| d.at(r)).collect();
        self.has_witness(&table)
    }

    /// First coloring (odometer order) without a witness.
    pub fn find_bad(&self, c: usize) -> Option<Vec<u8>> {
        let mut table = vec![0u8; self.points];
        let mut cached = 0usize;
        loop {
            let hit = self.candidates.get(cached).is_some_and(|cand| Self::satisfied(cand, &table))
                || match self.candidates.iter().position(|cand| Self::satisfied(cand, &table)) {
                    Some(i) => {
                        cached = i;
                        true
                    }
                    None => false,
                };
            if !hit {
                return Some(table);
            }
            let mut i = 0;
            while i < self.points {
                table[i] += 1;
                if (table[i] as usize) < c {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
            if i == self.points {
                return None;
            }
        }
    }
}

/// One instance of the cross-check grid.
#[derive(Clone, Copy, Debug)]
pub struct Instance {
    pub spec: KindSpec,
    pub size: usize,
    pub divisibility: bool,
}

fn push(out: &mut Vec<Instance>, kind: Kind, h: usize, c: usize, size: usize) {
    let Ok(spec) = KindSpec::new(kind, h, c) else { return };
    let divisibility = spec.admissible(size, true);
    out.push(Instance {
        spec,
        size,
        divisibility,
    });
}

/// Alphabet 2 with sizes up to 4 and up to 3 colors, plus alphabet 3 with
/// sizes up to 2 and up to 2 colors; intervals run to 8.
pub fn oracle_grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for (h, max_k, max_c) in [(2, 4, 3), (3, 2, 2)] {
        for c in 1..=max_c {
            for k in 1..=max_k {
                for m in 1..=k {
                    push(&mut out, Kind::Hj { m }, h, c, k);
                    push(&mut out, Kind::HjEq { m }, h, c, k);
                    push(&mut out, Kind::F13 { m }, h, c, k);
                    if m % h == 0 {
                        push(&mut out, Kind::F8 { m }, h, c, k);
                        push(&mut out, Kind::F9 { m }, h, c, k);
                        push(&mut out, Kind::F8Star { m }, h, c, k);
                        push(&mut out, Kind::F9Star { m }, h, c, k);
                        for n in 1..=k / m {
                            push(&mut out, Kind::F9StarN { m, n }, h, c, k);
                        }
                    }
                }
                for m in 1..=2 {
                    push(&mut out, Kind::Gw { m }, h, c, k);
                }
                push(&mut out, Kind::Oplus, h, c, k);
            }
        }
    }
    for c in 1..=3 {
        for n in 1..=8 {
            for m in 2..=3 {
                push(&mut out, Kind::Vdw { m }, 1, c, n);
            }
        }
    }
    out
}
