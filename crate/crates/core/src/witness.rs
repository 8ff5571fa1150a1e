//! Witness finders.
//!
//! Every kind reduces to the same shape: a list of candidate witnesses, each
//! carrying groups of points that must be monochromatic. A coloring admits a
//! witness iff some candidate has all its groups monochromatic. The compiled
//! [`WitnessFamily`] is shared by the finders, the search engine and the CNF
//! encoder; [`crate::verify`] re-checks witnesses without it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::blocks::{enumerate_block_systems, subspace_ranks, BlockConstraint, BlockSystem};
use crate::coloring::{grid_rank, Coloring, Ground};
use crate::error::{Error, Result};
use crate::kind::{ColorConstraint, Kind, KindSpec};
use crate::omega::{composition_count, omega_enumerate, omega_rank, OmegaReading};
use crate::words::{Color, Letter};

/// The object whose existence a partition number asks for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Subspace(BlockSystem),
    F13 {
        positions: Vec<usize>,
        anchor: Vec<Option<Letter>>,
    },
    Ap {
        start: usize,
        step: usize,
    },
    GwGrid {
        corner: Vec<usize>,
        step: usize,
    },
    Oplus {
        base: Vec<usize>,
        step: usize,
    },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Subspace(s) => write!(f, "subspace {s}"),
            Self::F13 { positions, anchor } => {
                write!(f, "N={positions:?} rho=")?;
                for a in anchor {
                    match a {
                        Some(a) => write!(f, "{a}")?,
                        None => write!(f, "*")?,
                    }
                }
                Ok(())
            }
            Self::Ap { start, step } => write!(f, "ap(start={start}, step={step})"),
            Self::GwGrid { corner, step } => write!(f, "grid(corner={corner:?}, step={step})"),
            Self::Oplus { base, step } => write!(f, "oplus(base={base:?}, step={step})"),
        }
    }
}

/// Candidate witnesses for one (kind, size), each with its equal-color groups.
///
/// Groups of a single point are dropped; a candidate with no groups is
/// satisfied by every coloring.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    points: usize,
    witnesses: Vec<Witness>,
    cand_start: Vec<u32>,
    group_start: Vec<u32>,
    members: Vec<u32>,
}

impl WitnessFamily {
    fn new(points: usize) -> Self {
        Self {
            points,
            witnesses: Vec::new(),
            cand_start: vec![0],
            group_start: vec![0],
            members: Vec::new(),
        }
    }

    fn push<'a>(&mut self, witness: Witness, groups: impl IntoIterator<Item = &'a [usize]>) {
        for g in groups {
            if g.len() < 2 {
                continue;
            }
            self.members.extend(g.iter().map(|&p| p as u32));
            self.group_start.push(self.members.len() as u32);
        }
        self.witnesses.push(witness);
        self.cand_start.push((self.group_start.len() - 1) as u32);
    }

    /// Candidates for `spec` at `size`.
    pub fn compile(spec: &KindSpec, size: usize) -> Result<Self> {
        spec.validate()?;
        let (h, m) = (spec.h, spec.kind.m());
        match spec.kind {
            Kind::F13 { m } => Ok(compile_f13(size, m, h)?),
            Kind::Vdw { m } => Ok(compile_ap(size, m)),
            Kind::Gw { m } => compile_gw(h, size, m),
            Kind::Oplus => Ok(compile_oplus(size, h)),
            kind => {
                let (bc, cc) = kind.subspace_constraints().expect("subspace kind");
                compile_subspace(size, h, m, bc, cc)
            }
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witness(&self, i: usize) -> &Witness {
        &self.witnesses[i]
    }

    pub fn group_count(&self) -> usize {
        self.group_start.len() - 1
    }

    /// Global ids of the groups of candidate `i`.
    pub fn group_ids(&self, i: usize) -> std::ops::Range<usize> {
        self.cand_start[i] as usize..self.cand_start[i + 1] as usize
    }

    pub fn group(&self, g: usize) -> &[u32] {
        &self.members[self.group_start[g] as usize..self.group_start[g + 1] as usize]
    }

    pub fn groups(&self, i: usize) -> impl Iterator<Item = &[u32]> + '_ {
        self.group_ids(i).map(move |g| self.group(g))
    }

    /// Whether candidate `i` is a witness for the coloring `table`.
    pub fn is_satisfied(&self, i: usize, table: &[Color]) -> bool {
        self.groups(i).all(|g| {
            let c = table[g[0] as usize];
            g[1..].iter().all(|&p| table[p as usize] == c)
        })
    }

    /// First candidate (in enumeration order) that is a witness.
    pub fn first_satisfied(&self, table: &[Color]) -> Option<usize> {
        (0..self.len()).find(|&i| self.is_satisfied(i, table))
    }

    /// First witness for `d`.
    pub fn find(&self, d: &Coloring) -> Option<Witness> {
        self.first_satisfied(d.table()).map(|i| self.witnesses[i].clone())
    }
}

fn compile_subspace(
    k: usize,
    h: usize,
    m: usize,
    bc: BlockConstraint,
    cc: ColorConstraint,
) -> Result<WitnessFamily> {
    if cc == ColorConstraint::BalancedConstant && m % h != 0 {
        return Err(Error::InvalidKind(format!("alphabet size {h} must divide m={m}")));
    }
    let points = crate::words::cube_size(k, h)?;
    let mut family = WitnessFamily::new(points);
    if m == 0 || m > k {
        return Ok(family);
    }
    // Each assignment of letters to blocks gets a group id; u32::MAX = unconstrained.
    let assignments = h.pow(m as u32);
    let mut group_of = vec![u32::MAX; assignments];
    let mut profile_ids: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    for (a, slot) in group_of.iter_mut().enumerate() {
        let mut counts = vec![0usize; h];
        let mut x = a;
        for _ in 0..m {
            counts[x % h] += 1;
            x /= h;
        }
        *slot = match cc {
            ColorConstraint::Monochromatic => 0,
            ColorConstraint::BalancedConstant => {
                if counts.iter().all(|&c| c == m / h) {
                    0
                } else {
                    u32::MAX
                }
            }
            ColorConstraint::ProfileInvariant => {
                let next = profile_ids.len() as u32;
                *profile_ids.entry(counts).or_insert(next)
            }
        };
    }
    let n_groups = group_of.iter().filter(|&&g| g != u32::MAX).max().map_or(0, |&g| g as usize + 1);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n_groups];
    for s in enumerate_block_systems(k, m, h, bc) {
        for b in &mut buckets {
            b.clear();
        }
        for (a, rank) in subspace_ranks(&s, h).into_iter().enumerate() {
            if group_of[a] != u32::MAX {
                buckets[group_of[a] as usize].push(rank);
            }
        }
        family.push(Witness::Subspace(s), buckets.iter().map(Vec::as_slice));
    }
    Ok(family)
}

fn compile_f13(k: usize, m: usize, h: usize) -> Result<WitnessFamily> {
    let inner = compile_subspace(k, h, m, BlockConstraint::Singleton, ColorConstraint::ProfileInvariant)?;
    let witnesses = inner
        .witnesses
        .iter()
        .map(|w| match w {
            Witness::Subspace(s) => Witness::F13 {
                positions: s.blocks().iter().map(|b| b[0]).collect(),
                anchor: s.anchor().to_vec(),
            },
            _ => unreachable!(),
        })
        .collect();
    Ok(WitnessFamily { witnesses, ..inner })
}

fn compile_ap(n: usize, m: usize) -> WitnessFamily {
    let mut family = WitnessFamily::new(n);
    for start in 0..n {
        if m <= 1 {
            family.push(Witness::Ap { start, step: 1 }, std::iter::empty());
            continue;
        }
        let mut step = 1;
        while start + (m - 1) * step < n {
            let group: Vec<usize> = (0..m).map(|i| start + i * step).collect();
            family.push(Witness::Ap { start, step }, [group.as_slice()]);
            step += 1;
        }
    }
    family
}

fn compile_gw(h: usize, n: usize, m: usize) -> Result<WitnessFamily> {
    let points = Ground::Grid { h, n }.size()?;
    let mut family = WitnessFamily::new(points);
    if n == 0 {
        return Ok(family);
    }
    let offsets: Vec<Vec<usize>> = (0..(m + 1).pow(h as u32))
        .map(|r| crate::coloring::grid_unrank(r, h, m + 1))
        .collect();
    let mut group = Vec::with_capacity(offsets.len());
    let mut coords = vec![0; h];
    for r in 0..points {
        let corner = crate::coloring::grid_unrank(r, h, n);
        let top = *corner.iter().max().unwrap_or(&0);
        let mut step = 1;
        while top + step * m < n {
            group.clear();
            for off in &offsets {
                for e in 0..h {
                    coords[e] = corner[e] + step * off[e];
                }
                group.push(grid_rank(&coords, n));
            }
            family.push(
                Witness::GwGrid {
                    corner: corner.clone(),
                    step,
                },
                [group.as_slice()],
            );
            step += 1;
        }
    }
    Ok(family)
}

fn compile_oplus(total: usize, h: usize) -> WitnessFamily {
    let mut family = WitnessFamily::new(composition_count(total, h));
    let mut candidates = Vec::new();
    for step in 1..=total {
        for base in omega_enumerate(total - step, h, OmegaReading::Inclusive) {
            candidates.push((base.parts().to_vec(), step));
        }
    }
    candidates.sort();
    for (base, step) in candidates {
        let group: Vec<usize> = (0..h)
            .map(|a| {
                let mut p = base.clone();
                p[a] += step;
                omega_rank(&p)
            })
            .collect();
        family.push(Witness::Oplus { base, step }, [group.as_slice()]);
    }
    family
}

/// First witness for `spec` in the coloring `d`.
pub fn find_witness(spec: &KindSpec, d: &Coloring) -> Result<Option<Witness>> {
    let size = size_of_ground(spec, d.ground())?;
    Ok(WitnessFamily::compile(spec, size)?.find(d))
}

/// Reads the size parameter back from a ground set matching `spec`.
pub fn size_of_ground(spec: &KindSpec, ground: Ground) -> Result<usize> {
    let size = match ground {
        Ground::Cube { k, .. } => k,
        Ground::Interval { n } => n,
        Ground::Grid { n, .. } => n,
        Ground::Omega { total, .. } => total,
    };
    if spec.ground(size) != ground {
        return Err(Error::InvalidColoring(format!("{ground} does not match {spec}")));
    }
    Ok(size)
}

fn cube_of(d: &Coloring) -> Result<(usize, usize)> {
    match d.ground() {
        Ground::Cube { k, h } => Ok((k, h)),
        g => Err(Error::InvalidColoring(format!("expected a cube, got {g}"))),
    }
}

/// First block system with `m` blocks meeting both constraints.
pub fn find_subspace_witness(
    d: &Coloring,
    m: usize,
    blocks: BlockConstraint,
    colors: ColorConstraint,
) -> Result<Option<Witness>> {
    let (k, h) = cube_of(d)?;
    Ok(compile_subspace(k, h, m, blocks, colors)?.find(d))
}

/// First `(N, ρ)` with `|N| = m` on which the color depends only on letter counts.
pub fn find_f13_witness(d: &Coloring, m: usize) -> Result<Option<Witness>> {
    let (k, h) = cube_of(d)?;
    Ok(compile_f13(k, m, h)?.find(d))
}

/// First monochromatic `m`-term progression, by `(start, step)`.
pub fn find_ap_witness(d: &Coloring, m: usize) -> Result<Option<Witness>> {
    match d.ground() {
        Ground::Interval { n } => Ok(compile_ap(n, m).find(d)),
        g => Err(Error::InvalidColoring(format!("expected an interval, got {g}"))),
    }
}

/// First monochromatic homothetic copy of `{0..m}^h`, by `(corner, step)`.
pub fn find_gallai_witt_witness(d: &Coloring, m: usize) -> Result<Option<Witness>> {
    match d.ground() {
        Ground::Grid { h, n } => Ok(compile_gw(h, n, m)?.find(d)),
        g => Err(Error::InvalidColoring(format!("expected a grid, got {g}"))),
    }
}

/// First `(base, step)` whose bumped points share a color.
pub fn find_oplus_witness(d: &Coloring) -> Result<Option<Witness>> {
    match d.ground() {
        Ground::Omega { total, h } => Ok(compile_oplus(total, h).find(d)),
        g => Err(Error::InvalidColoring(format!("expected omega, got {g}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_witness;
    use crate::words::{cube_size, unrank_word};

    fn cube(k: usize, h: usize, c: usize, table: &[u8]) -> Coloring {
        Coloring::new(Ground::Cube { k, h }, c, table.to_vec()).unwrap()
    }

    #[test]
    fn constant_cube_has_a_line() {
        let d = cube(1, 2, 2, &[0, 0]);
        let w = find_subspace_witness(&d, 1, BlockConstraint::Any, ColorConstraint::Monochromatic)
            .unwrap()
            .unwrap();
        let Witness::Subspace(s) = w else { panic!() };
        assert_eq!(s.blocks(), &[vec![0]]);
        assert_eq!(s.anchor(), &[None]);
    }

    #[test]
    fn diagonal_is_the_only_monochromatic_line() {
        // d(00)=d(11)=0, d(01)=d(10)=1
        let d = cube(2, 2, 2, &[0, 1, 1, 0]);
        let w = find_subspace_witness(&d, 1, BlockConstraint::Any, ColorConstraint::Monochromatic)
            .unwrap()
            .unwrap();
        let Witness::Subspace(s) = w else { panic!() };
        assert_eq!(s.blocks(), &[vec![0, 1]]);
        let fam = WitnessFamily::compile(&KindSpec::new(Kind::Hj { m: 1 }, 2, 2).unwrap(), 2).unwrap();
        let hits = (0..fam.len()).filter(|&i| fam.is_satisfied(i, d.table())).count();
        assert_eq!(hits, 1);

        let w = find_subspace_witness(&d, 2, BlockConstraint::Any, ColorConstraint::ProfileInvariant)
            .unwrap()
            .unwrap();
        let Witness::Subspace(s) = w else { panic!() };
        assert_eq!(s.blocks(), &[vec![0], vec![1]]);
    }

    #[test]
    fn balanced_needs_divisibility() {
        let d = cube(2, 2, 2, &[0, 1, 1, 0]);
        assert!(matches!(
            find_subspace_witness(&d, 1, BlockConstraint::Any, ColorConstraint::BalancedConstant),
            Err(Error::InvalidKind(_))
        ));
        assert!(find_subspace_witness(&d, 3, BlockConstraint::Any, ColorConstraint::Monochromatic)
            .unwrap()
            .is_none());
    }

    fn ones(w: &crate::words::Word) -> usize {
        w.letters().iter().filter(|&&a| a == 1).count()
    }

    #[test]
    fn f13_examples() {
        let parity = Coloring::from_fn(Ground::Cube { k: 3, h: 2 }, 2, |r| {
            (ones(&unrank_word(r, 3, 2).unwrap()) % 2) as u8
        })
        .unwrap();
        assert!(find_f13_witness(&parity, 2).unwrap().is_some());

        let first = Coloring::from_fn(Ground::Cube { k: 3, h: 2 }, 2, |r| unrank_word(r, 3, 2).unwrap()[0]).unwrap();
        assert!(find_f13_witness(&first, 3).unwrap().is_none());

        let any = cube(2, 2, 2, &[0, 1, 1, 1]);
        let w = find_f13_witness(&any, 1).unwrap().unwrap();
        assert_eq!(
            w,
            Witness::F13 {
                positions: vec![0],
                anchor: vec![None, Some(0)]
            }
        );
    }

    #[test]
    fn ap_examples() {
        let g3 = Ground::Interval { n: 3 };
        let d = Coloring::constant(g3, 2, 0).unwrap();
        assert_eq!(find_ap_witness(&d, 3).unwrap(), Some(Witness::Ap { start: 0, step: 1 }));
        let d = Coloring::decode(Ground::Interval { n: 8 }, 2, "00110011").unwrap();
        assert_eq!(find_ap_witness(&d, 3).unwrap(), None);
        let d = Coloring::decode(g3, 2, "010").unwrap();
        assert_eq!(find_ap_witness(&d, 2).unwrap(), Some(Witness::Ap { start: 0, step: 2 }));
    }

    #[test]
    fn gallai_witt_examples() {
        let d = Coloring::decode(Ground::Grid { h: 1, n: 3 }, 2, "010").unwrap();
        assert_eq!(
            find_gallai_witt_witness(&d, 1).unwrap(),
            Some(Witness::GwGrid { corner: vec![0], step: 2 })
        );
        let d = Coloring::constant(Ground::Grid { h: 2, n: 2 }, 2, 1).unwrap();
        assert_eq!(
            find_gallai_witt_witness(&d, 1).unwrap(),
            Some(Witness::GwGrid { corner: vec![0, 0], step: 1 })
        );
        let d = Coloring::decode(Ground::Grid { h: 1, n: 2 }, 2, "01").unwrap();
        assert_eq!(find_gallai_witt_witness(&d, 1).unwrap(), None);
    }

    #[test]
    fn oplus_examples() {
        let g4 = Ground::Omega { total: 4, h: 2 };
        let d = Coloring::constant(g4, 2, 0).unwrap();
        let spec = KindSpec::new(Kind::Oplus, 2, 2).unwrap();
        let found = find_oplus_witness(&d).unwrap().unwrap();
        assert!(verify_witness(&spec, 4, &d, &found).unwrap());
        let planted = Witness::Oplus { base: vec![1, 1], step: 2 };
        assert!(verify_witness(&spec, 4, &d, &planted).unwrap());

        // (0,2),(1,1),(2,0) get three different colors
        let d = Coloring::new(Ground::Omega { total: 2, h: 2 }, 3, vec![0, 1, 2]).unwrap();
        assert_eq!(find_oplus_witness(&d).unwrap(), None);
        for code in 0..8u8 {
            let table = vec![code & 1, code >> 1 & 1, code >> 2 & 1];
            let d = Coloring::new(Ground::Omega { total: 2, h: 2 }, 2, table).unwrap();
            assert!(find_oplus_witness(&d).unwrap().is_some());
        }
    }

    /// Every candidate in a family verifies independently against a coloring
    /// built to satisfy it, and the family is complete against brute force.
    #[test]
    fn soundness_and_completeness_on_small_grid() {
        let kinds = |h: usize| {
            let mut v = vec![];
            for m in 1..=3 {
                v.push(Kind::Hj { m });
                v.push(Kind::HjEq { m });
                v.push(Kind::F13 { m });
                if m % h == 0 {
                    v.extend([
                        Kind::F8 { m },
                        Kind::F9 { m },
                        Kind::F8Star { m },
                        Kind::F9Star { m },
                        Kind::F9StarN { m, n: 1 },
                    ]);
                }
            }
            v
        };
        for h in 2..=3 {
            for k in 0..=3 {
                if cube_size(k, h).unwrap() > 27 {
                    continue;
                }
                for kind in kinds(h) {
                    let spec = KindSpec::new(kind, h, 2).unwrap();
                    let fam = WitnessFamily::compile(&spec, k).unwrap();
                    let n = fam.points();
                    // 40 pseudo-random tables per instance
                    let mut state = 0x9e3779b97f4a7c15u64 ^ (k as u64) << 8 ^ h as u64;
                    for _ in 0..40 {
                        let table: Vec<u8> = (0..n)
                            .map(|_| {
                                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                                (state >> 33) as u8 & 1
                            })
                            .collect();
                        let d = cube(k, h, 2, &table);
                        let found = fam.find(&d);
                        for i in 0..fam.len() {
                            let ok = verify_witness(&spec, k, &d, fam.witness(i)).unwrap();
                            assert_eq!(ok, fam.is_satisfied(i, &table), "{spec} k={k} cand {i}");
                        }
                        if let Some(w) = found {
                            assert!(verify_witness(&spec, k, &d, &w).unwrap());
                        }
                    }
                }
            }
        }
    }
}
