//! Witness-lifting reductions between the partition numbers.
//!
//! Every transform re-verifies its input witness before running and its
//! output witness before returning, so chains of reductions stay checkable.

use serde::{Deserialize, Serialize};

use crate::blocks::BlockSystem;
use crate::coloring::{grid_unrank, Coloring, Ground};
use crate::error::{Error, Result};
use crate::kind::{Kind, KindSpec};
use crate::omega::{omega_enumerate, omega_rank, OmegaPoint, OmegaReading};
use crate::verify::verify_witness;
use crate::witness::{find_gallai_witt_witness, find_oplus_witness, Witness};
use crate::words::{cube_size, rank_word, unrank_word, Letter, Word};

fn cube_of(d: &Coloring) -> Result<(usize, usize)> {
    match d.ground() {
        Ground::Cube { k, h } => Ok((k, h)),
        g => Err(Error::InvalidColoring(format!("expected a cube, got {g}"))),
    }
}

/// Fails with `InvalidInputWitness` unless `w` is a witness of `kind` for `d`.
fn require(kind: Kind, d: &Coloring, size: usize, h: usize, w: &Witness) -> Result<()> {
    let spec = KindSpec::new(kind, h, d.colors())?;
    match verify_witness(&spec, size, d, w) {
        Ok(true) => Ok(()),
        Ok(false) => Err(Error::InvalidInputWitness(format!("{w} is not a {spec} witness"))),
        Err(e) => Err(Error::InvalidInputWitness(e.to_string())),
    }
}

/// Output-side check; a failure here is a bug in the transform.
fn ensure(kind: Kind, d: &Coloring, size: usize, h: usize, w: &Witness) -> Result<()> {
    let spec = KindSpec::new(kind, h, d.colors())?;
    if verify_witness(&spec, size, d, w)? {
        Ok(())
    } else {
        Err(Error::RejectedResult(format!("lifted {w} fails as a {spec} witness")))
    }
}

fn line_of(w: &BlockSystem) -> Witness {
    Witness::Subspace(w.clone())
}

/// Splits composite letters over `h^m` into `m` letters over `h`:
/// position `i*m + l` gets component `l` of `eta[i]` (big-endian).
pub fn grid_flatten_map(eta: &Word, m: usize, h: usize) -> Result<Word> {
    let big = cube_size(m, h)?;
    eta.validate(big)?;
    let mut out = Vec::with_capacity(eta.len() * m);
    for &a in eta.letters() {
        out.extend(unrank_word(a as usize, m, h)?.into_letters());
    }
    Ok(Word::new(out))
}

/// `e(eta) = d(F(eta))` on `Cube(n, h^m)` for `d` on `Cube(n*m, h)`.
pub fn grid_pullback(d: &Coloring, n: usize, m: usize) -> Result<Coloring> {
    let (k, h) = cube_of(d)?;
    if k != n * m || m == 0 {
        return Err(Error::InvalidColoring(format!("{} is not a cube of side {n}*{m}", d.ground())));
    }
    let big = cube_size(m, h)?;
    if big > crate::words::MAX_SYMBOLS {
        return Err(Error::UnsupportedAlphabet(big));
    }
    let ground = Ground::Cube { k: n, h: big };
    let mut table = Vec::with_capacity(ground.size()?);
    for r in 0..ground.size()? {
        let flat = grid_flatten_map(&unrank_word(r, n, big)?, m, h)?;
        table.push(d.at(rank_word(&flat, h)?));
    }
    Coloring::new(ground, d.colors(), table)
}

/// Lifts a monochromatic line of `e = d∘F` to an equal-size `m`-block
/// subspace of `d`: `M_l = {i*m + l : i in N}`, anchor split componentwise.
pub fn grid_lift_witness(d: &Coloring, line: &BlockSystem, n: usize, m: usize) -> Result<Witness> {
    let (_, h) = cube_of(d)?;
    let e = grid_pullback(d, n, m)?;
    let big = cube_size(m, h)?;
    require(Kind::Hj { m: 1 }, &e, n, big, &line_of(line))?;
    let moving = &line.blocks()[0];
    let blocks: Vec<Vec<usize>> = (0..m).map(|l| moving.iter().map(|&i| i * m + l).collect()).collect();
    let mut anchor = vec![None; n * m];
    for (i, a) in line.anchor().iter().enumerate() {
        if let Some(a) = a {
            for (l, &x) in unrank_word(*a as usize, m, h)?.letters().iter().enumerate() {
                anchor[i * m + l] = Some(x);
            }
        }
    }
    let w = Witness::Subspace(BlockSystem::new(n * m, blocks, anchor)?);
    ensure(Kind::HjEq { m }, d, n * m, h, &w)?;
    Ok(w)
}

/// An f13 witness `(N, rho)` as the singleton-block system `<{a_l}>, rho`.
pub fn singleton_blocks(d: &Coloring, w: &Witness) -> Result<Witness> {
    let (k, h) = cube_of(d)?;
    let Witness::F13 { positions, anchor } = w else {
        return Err(Error::InvalidInputWitness(format!("{w} is not an f13 witness")));
    };
    let m = positions.len();
    require(Kind::F13 { m }, d, k, h, w)?;
    let blocks = positions.iter().map(|&a| vec![a]).collect();
    let out = Witness::Subspace(BlockSystem::new(k, blocks, anchor.clone())?);
    // f9* needs h | m; otherwise the f13 check above already covers the points
    if m % h == 0 {
        ensure(Kind::F9Star { m }, d, k, h, &out)?;
        ensure(Kind::F9StarN { m, n: 1 }, d, k, h, &out)?;
    }
    Ok(out)
}

/// `F(eta)`: letter `eta[l]` on block `M_l`, the anchor elsewhere.
pub fn blocks_embed(s: &BlockSystem, eta: &Word) -> Result<Word> {
    if eta.len() != s.dim() {
        return Err(Error::InvalidWord(format!("expected {} letters, got {}", s.dim(), eta.len())));
    }
    Ok(s.point(eta.letters()))
}

/// `e(eta) = d(F(eta))` on `Cube(m*, h)`, after checking `s` is an f8*
/// witness for `d`.
pub fn embed_pullback(d: &Coloring, s: &BlockSystem) -> Result<Coloring> {
    let (k, h) = cube_of(d)?;
    let m = s.dim();
    require(Kind::F8Star { m }, d, k, h, &Witness::Subspace(s.clone()))?;
    Coloring::from_fn(Ground::Cube { k: m, h }, d.colors(), |r| {
        let eta = unrank_word(r, m, h).expect("rank in range");
        d.word_color(&s.point(eta.letters())).expect("point in cube")
    })
}

/// Lifts a line `(N, tau)` of `e = d∘F` to the line `(N', tau')` of `d`
/// with `N' = ⋃_{l∈N} M_l`.
pub fn embed_lift_line(d: &Coloring, s: &BlockSystem, line: &BlockSystem) -> Result<Witness> {
    let (k, h) = cube_of(d)?;
    let e = embed_pullback(d, s)?;
    require(Kind::Hj { m: 1 }, &e, s.dim(), h, &line_of(line))?;
    let mut moving = Vec::new();
    for &l in &line.blocks()[0] {
        moving.extend_from_slice(&s.blocks()[l]);
    }
    let mut anchor = s.anchor().to_vec();
    for (l, a) in line.anchor().iter().enumerate() {
        if let Some(a) = a {
            for &t in &s.blocks()[l] {
                anchor[t] = Some(*a);
            }
        }
    }
    let w = Witness::Subspace(BlockSystem::new(k, vec![moving], anchor)?);
    ensure(Kind::Hj { m: 1 }, d, k, h, &w)?;
    Ok(w)
}

/// The word with `parts[a]` copies of each letter `a`, placed along
/// `order` (a permutation of the positions).
pub fn partition_word(p: &OmegaPoint, order: &[usize]) -> Result<Word> {
    let total = p.total();
    let mut seen = vec![false; total];
    if order.len() != total || order.iter().any(|&i| i >= total || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidPositions(format!("{order:?} is not a permutation of 0..{total}")));
    }
    let mut letters = vec![0 as Letter; total];
    let mut it = order.iter();
    for (a, &count) in p.parts().iter().enumerate() {
        for &i in it.by_ref().take(count) {
            letters[i] = a as Letter;
        }
    }
    Ok(Word::new(letters))
}

/// `G`: consecutive intervals of each letter, in letter order.
pub fn canonical_word(p: &OmegaPoint) -> Word {
    let order: Vec<usize> = (0..p.total()).collect();
    partition_word(p, &order).expect("identity is a permutation")
}

/// `c(l) = e(G(l))` on `Omega(m*, h)`.
pub fn omega_pullback(e: &Coloring) -> Result<Coloring> {
    let (k, h) = cube_of(e)?;
    let points = omega_enumerate(k, h, OmegaReading::Inclusive);
    let table = points
        .iter()
        .map(|p| e.word_color(&canonical_word(p)))
        .collect::<Result<Vec<_>>>()?;
    Coloring::new(Ground::Omega { total: k, h }, e.colors(), table)
}

/// `F(eta)(e) = h*eta(e) + h*n - sum(eta)`, a point of `Omega(h^2 n, h)`.
pub fn oplus_map(eta: &[usize], h: usize, n: usize) -> Result<Vec<usize>> {
    if eta.len() != h || eta.iter().any(|&x| x >= n) {
        return Err(Error::InvalidPositions(format!("{eta:?} is not a point of grid(h={h},n={n})")));
    }
    let sum: usize = eta.iter().sum();
    Ok(eta.iter().map(|&x| h * x + h * n - sum).collect())
}

/// Where the Gallai-Witt witness on the pulled-back grid comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GwSource {
    Search,
    Planted { corner: Vec<usize>, step: usize },
}

/// A solution of the bumped-composition property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OplusSolution {
    pub base: Vec<usize>,
    pub step: usize,
    /// `omega_bump(base, step, a)` for each letter `a`.
    pub points: Vec<Vec<usize>>,
    pub gw_corner: Vec<usize>,
    pub gw_step: usize,
    pub offset: usize,
    /// The step read literally as the grid step, kept for the record; its
    /// sums miss `m*` by `(h-1)*step` when `h > 1`.
    pub literal_step: usize,
}

/// Solves (⊕) for `d` on `Omega(h^2 n, h)` through a Gallai-Witt witness
/// of `e = d∘F` on the grid of side `n`.
pub fn solve_oplus_via_gallai_witt(d: &Coloring, n: usize, source: &GwSource) -> Result<OplusSolution> {
    let Ground::Omega { total, h } = d.ground() else {
        return Err(Error::InvalidColoring(format!("expected omega, got {}", d.ground())));
    };
    if h < 2 {
        return Err(Error::UnsupportedAlphabet(h));
    }
    if total != h * h * n {
        return Err(Error::InvalidColoring(format!("omega total {total} is not h^2*n = {}", h * h * n)));
    }
    let grid = Ground::Grid { h, n };
    let e = Coloring::from_fn(grid, d.colors(), |r| {
        let point = oplus_map(&grid_unrank(r, h, n), h, n).expect("grid point");
        d.at(omega_rank(&point))
    })?;
    let (corner, delta) = match source {
        GwSource::Search => match find_gallai_witt_witness(&e, 1)? {
            Some(Witness::GwGrid { corner, step }) => (corner, step),
            _ => return Err(Error::NoWitnessAtN(n)),
        },
        GwSource::Planted { corner, step } => {
            let w = Witness::GwGrid {
                corner: corner.clone(),
                step: *step,
            };
            require(Kind::Gw { m: 1 }, &e, n, h, &w)?;
            (corner.clone(), *step)
        }
    };
    let offset = h * n - corner.iter().sum::<usize>() - delta;
    let base: Vec<usize> = corner.iter().map(|&m| h * m + offset).collect();
    let step = h * delta;
    let points: Vec<Vec<usize>> = (0..h)
        .map(|a| {
            let mut p = base.clone();
            p[a] += step;
            p
        })
        .collect();
    for (a, p) in points.iter().enumerate() {
        let mut theta = corner.clone();
        theta[a] += delta;
        debug_assert_eq!(&oplus_map(&theta, h, n)?, p);
    }
    let w = Witness::Oplus {
        base: base.clone(),
        step,
    };
    ensure(Kind::Oplus, d, total, h, &w)?;
    Ok(OplusSolution {
        base,
        step,
        points,
        gw_corner: corner,
        gw_step: delta,
        offset,
        literal_step: delta,
    })
}

/// How the pipeline obtains its (⊕) solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "strategy")]
pub enum OplusStrategy {
    /// Through a Gallai-Witt witness on the grid of side `n`; needs `m* = h^2 n`.
    GallaiWitt { n: usize, source: GwSource },
    /// Direct search over Ω, for sides too small to carry a grid witness.
    Direct,
}

/// Stage-by-stage record of a pipeline run, points given by rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub k: usize,
    pub h: usize,
    pub m_star: usize,
    pub strategy: OplusStrategy,
    pub pullback_table: String,
    pub omega_table: String,
    pub base: Vec<usize>,
    pub step: usize,
    pub cube_line: BlockSystem,
    pub line: BlockSystem,
    pub color: u8,
}

/// Finds a monochromatic line of `d` from an f8* witness `s` with `m*`
/// blocks: pull back to the `m*`-cube, then to Ω, solve (⊕), read off a
/// line of the `m*`-cube and lift it through `s`.
pub fn find_monochromatic_line_main(d: &Coloring, s: &BlockSystem, strategy: &OplusStrategy) -> Result<PipelineTrace> {
    let (k, h) = cube_of(d)?;
    let m_star = s.dim();
    require(Kind::F8Star { m: m_star }, d, k, h, &Witness::Subspace(s.clone()))?;
    let stage = |stage: &'static str| move |e: Error| Error::PipelineStage { stage, reason: e.to_string() };

    let e = embed_pullback(d, s).map_err(stage("embed"))?;
    let omega = omega_pullback(&e).map_err(stage("omega"))?;
    let (base, step) = match strategy {
        OplusStrategy::GallaiWitt { n, source } => {
            if m_star != h * h * n {
                return Err(Error::PipelineStage {
                    stage: "oplus",
                    reason: format!("m*={m_star} but h^2*n = {}", h * h * n),
                });
            }
            let sol = solve_oplus_via_gallai_witt(&omega, *n, source).map_err(stage("oplus"))?;
            (sol.base, sol.step)
        }
        OplusStrategy::Direct => match find_oplus_witness(&omega).map_err(stage("oplus"))? {
            Some(Witness::Oplus { base, step }) => (base, step),
            _ => {
                return Err(Error::PipelineStage {
                    stage: "oplus",
                    reason: "no (base, step) solves the bumped-composition property".into(),
                })
            }
        },
    };

    // interval layout: P'_0, ..., P'_{h-1} anchored, then the moving block
    let mut anchor = Vec::with_capacity(m_star);
    for (a, &count) in base.iter().enumerate() {
        anchor.extend(std::iter::repeat_n(Some(a as Letter), count));
    }
    let moving: Vec<usize> = (anchor.len()..m_star).collect();
    anchor.extend(std::iter::repeat_n(None, step));
    let cube_line = BlockSystem::new(m_star, vec![moving], anchor).map_err(stage("line"))?;
    require(Kind::Hj { m: 1 }, &e, m_star, h, &line_of(&cube_line)).map_err(stage("line"))?;

    let lifted = embed_lift_line(d, s, &cube_line).map_err(stage("lift"))?;
    let Witness::Subspace(line) = lifted else { unreachable!() };
    let color = d.word_color(&line.point(&[0]))?;
    Ok(PipelineTrace {
        k,
        h,
        m_star,
        strategy: strategy.clone(),
        pullback_table: e.encode(),
        omega_table: omega.encode(),
        base,
        step,
        cube_line,
        line,
        color,
    })
}
