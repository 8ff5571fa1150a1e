//! Exhaustive search for bad colorings.
//!
//! The search assigns colors to points in rank order. Each candidate witness
//! tracks how many of its groups already carry two colors and how many of its
//! points are still uncolored; a candidate with no broken group and a single
//! uncolored point forbids that point the color of its group. Colorings are
//! restricted to lex-leaders of their orbit under color renaming and the
//! point symmetries of the ground set.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{grid_rank, grid_unrank, Coloring, Ground};
use crate::error::{Error, Result};
use crate::kind::KindSpec;
use crate::omega::{omega_enumerate, omega_rank, OmegaReading};
use crate::symmetry::point_symmetries;
use crate::witness::{Witness, WitnessFamily};
use crate::words::{Color, Letter};

const UNSET: Color = Color::MAX;
const CHECK_EVERY: u64 = 4096;

/// Limits on a single search; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(n: u64) -> Self {
        Self {
            max_nodes: Some(n),
            max_seconds: None,
        }
    }

    pub fn seconds(s: f64) -> Self {
        Self {
            max_nodes: None,
            max_seconds: Some(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Color renaming plus ground-set symmetries.
    pub symmetry: bool,
    /// Also use coordinate permutations of the cube.
    pub coord_symmetry: bool,
    pub threads: usize,
    /// Nonzero seeds shuffle the order in which colors are tried.
    pub seed: u64,
    /// Restrict the f8/f9 family to sizes divisible by `h`.
    pub divisibility: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            symmetry: true,
            coord_symmetry: true,
            threads: 1,
            seed: 0,
            divisibility: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub seconds: f64,
    pub threads: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchVerdict {
    /// A coloring admitting no witness.
    Bad { coloring: Coloring, stats: SearchStats },
    /// Every coloring admits a witness.
    NoneExists { stats: SearchStats },
    BudgetExceeded { stats: SearchStats },
}

impl SearchVerdict {
    pub fn stats(&self) -> &SearchStats {
        match self {
            Self::Bad { stats, .. } | Self::NoneExists { stats } | Self::BudgetExceeded { stats } => stats,
        }
    }

    pub fn bad(&self) -> Option<&Coloring> {
        match self {
            Self::Bad { coloring, .. } => Some(coloring),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bad { .. } => "bad",
            Self::NoneExists { .. } => "none-exists",
            Self::BudgetExceeded { .. } => "budget-exceeded",
        }
    }
}

/// Searches for a coloring of `spec`'s ground set at `size` with no witness.
pub fn exists_bad_coloring(
    spec: &KindSpec,
    size: usize,
    budget: Budget,
    opts: &SearchOptions,
) -> Result<SearchVerdict> {
    spec.check_admissible(size, opts.divisibility)?;
    let family = WitnessFamily::compile(spec, size)?;
    search_family(&family, spec.ground(size), spec.c, budget, opts)
}

/// Searches an already compiled family.
pub fn search_family(
    family: &WitnessFamily,
    ground: Ground,
    c: usize,
    budget: Budget,
    opts: &SearchOptions,
) -> Result<SearchVerdict> {
    let start = Instant::now();
    if c >= UNSET as usize {
        return Err(Error::SizeLimit(format!("search supports at most {} colors", UNSET)));
    }
    let threads = opts.threads.max(1);
    let stats = |nodes| SearchStats {
        nodes,
        seconds: start.elapsed().as_secs_f64(),
        threads,
        seed: opts.seed,
    };
    if (0..family.len()).any(|i| family.group_ids(i).is_empty()) {
        return Ok(SearchVerdict::NoneExists { stats: stats(0) });
    }
    let syms = if opts.symmetry {
        point_symmetries(ground, opts.coord_symmetry)?
    } else {
        Vec::new()
    };
    let model = Model::new(family, c, &syms, opts);
    let shared = Shared {
        stop: AtomicBool::new(false),
        over_budget: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        found: Mutex::new(None),
        budget,
        start,
    };
    if threads == 1 {
        let mut w = Worker::new(&model);
        w.run(&[], &shared);
        w.flush(&shared);
    } else {
        let jobs = model.split(threads * 8);
        let next = AtomicU64::new(0);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| {
                    let mut w = Worker::new(&model);
                    loop {
                        let j = next.fetch_add(1, Ordering::Relaxed) as usize;
                        if j >= jobs.len() || shared.stop.load(Ordering::Relaxed) {
                            break;
                        }
                        w.run(&jobs[j], &shared);
                    }
                    w.flush(&shared);
                });
            }
        });
    }
    let nodes = shared.nodes.load(Ordering::Relaxed);
    if let Some(colors) = shared.found.into_inner().expect("worker panicked") {
        let mut table = vec![0 as Color; family.points()];
        for (i, &p) in model.active.iter().enumerate() {
            table[p as usize] = colors[i];
        }
        if family.first_satisfied(&table).is_some() {
            return Err(Error::RejectedResult("search produced a coloring with a witness".into()));
        }
        let coloring = Coloring::new(ground, c, table)?;
        return Ok(SearchVerdict::Bad {
            coloring,
            stats: stats(nodes),
        });
    }
    if shared.over_budget.load(Ordering::Relaxed) {
        Ok(SearchVerdict::BudgetExceeded { stats: stats(nodes) })
    } else {
        Ok(SearchVerdict::NoneExists { stats: stats(nodes) })
    }
}

/// Immutable search data, indexed by depth (position among active points).
struct Model {
    c: usize,
    /// Point ranks that lie in some group, in search order.
    active: Vec<u32>,
    depth_groups: Vec<Vec<u32>>,
    group_members: Vec<Vec<u32>>,
    group_cand: Vec<u32>,
    cand_groups: Vec<std::ops::Range<usize>>,
    cand_size: Vec<u32>,
    syms: Vec<Vec<u32>>,
    value_symmetry: bool,
    color_order: Vec<Vec<Color>>,
}

impl Model {
    fn new(family: &WitnessFamily, c: usize, syms: &[Vec<u32>], opts: &SearchOptions) -> Self {
        let mut in_group = vec![false; family.points()];
        for g in 0..family.group_count() {
            for &p in family.group(g) {
                in_group[p as usize] = true;
            }
        }
        let active: Vec<u32> = (0..family.points() as u32).filter(|&p| in_group[p as usize]).collect();
        let mut depth_of = vec![u32::MAX; family.points()];
        for (i, &p) in active.iter().enumerate() {
            depth_of[p as usize] = i as u32;
        }
        let mut depth_groups = vec![Vec::new(); active.len()];
        let mut group_members = Vec::with_capacity(family.group_count());
        let mut group_cand = Vec::with_capacity(family.group_count());
        let mut cand_groups = Vec::with_capacity(family.len());
        let mut cand_size = Vec::with_capacity(family.len());
        for i in 0..family.len() {
            let ids = family.group_ids(i);
            cand_groups.push(ids.clone());
            let mut size = 0;
            for g in ids {
                let members: Vec<u32> = family.group(g).iter().map(|&p| depth_of[p as usize]).collect();
                for &d in &members {
                    depth_groups[d as usize].push(g as u32);
                }
                size += members.len() as u32;
                group_members.push(members);
                group_cand.push(i as u32);
            }
            cand_size.push(size);
        }
        let syms = syms
            .iter()
            .map(|s| active.iter().map(|&p| depth_of[s[p as usize] as usize]).collect())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let color_order = (0..active.len())
            .map(|_| {
                let mut order: Vec<Color> = (0..c as Color).collect();
                if opts.seed != 0 {
                    order.shuffle(&mut rng);
                }
                order
            })
            .collect();
        Self {
            c,
            active,
            depth_groups,
            group_members,
            group_cand,
            cand_groups,
            cand_size,
            syms,
            value_symmetry: opts.symmetry,
            color_order,
        }
    }

    fn len(&self) -> usize {
        self.active.len()
    }

    /// Valid prefixes of a common depth, at least `want` of them when possible.
    fn split(&self, want: usize) -> Vec<Vec<Color>> {
        let mut jobs: Vec<Vec<Color>> = vec![Vec::new()];
        let mut w = Worker::new(self);
        for depth in 0..self.len() {
            if jobs.len() >= want || jobs.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for job in &jobs {
                for col in 0..self.c as Color {
                    let mut prefix = job.clone();
                    prefix.push(col);
                    if w.replay(&prefix) {
                        w.unwind(prefix.len());
                        next.push(prefix);
                    }
                }
            }
            jobs = next;
            debug_assert!(jobs.iter().all(|j| j.len() == depth + 1));
        }
        jobs
    }
}

struct Shared {
    stop: AtomicBool,
    over_budget: AtomicBool,
    nodes: AtomicU64,
    found: Mutex<Option<Vec<Color>>>,
    budget: Budget,
    start: Instant,
}

/// Mutable search state over a [`Model`].
struct Worker<'a> {
    m: &'a Model,
    color: Vec<Color>,
    /// `max color + 1` over depths `0..t`, per `t`.
    used: Vec<u8>,
    cnt: Vec<u16>,
    distinct: Vec<u8>,
    broken: Vec<u32>,
    uncolored: Vec<u32>,
    forbid: Vec<u16>,
    forbidden: Vec<u8>,
    trail: Vec<(u32, Color)>,
    trail_mark: Vec<usize>,
    pending_nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(m: &'a Model) -> Self {
        let n = m.len();
        Self {
            m,
            color: vec![UNSET; n],
            used: vec![0; n + 1],
            cnt: vec![0; m.group_members.len() * m.c],
            distinct: vec![0; m.group_members.len()],
            broken: vec![0; m.cand_size.len()],
            uncolored: m.cand_size.clone(),
            forbid: vec![0; n * m.c],
            forbidden: vec![0; n],
            trail: Vec::new(),
            trail_mark: vec![0; n],
            pending_nodes: 0,
        }
    }

    /// Colors depth `t`; false when this creates a witness or a point with
    /// no remaining color. Must be undone with [`Self::undo`] either way.
    fn assign(&mut self, t: usize, col: Color) -> bool {
        let m = self.m;
        let c = m.c;
        self.trail_mark[t] = self.trail.len();
        self.color[t] = col;
        self.used[t + 1] = self.used[t].max(col + 1);
        for &g in &m.depth_groups[t] {
            let g = g as usize;
            let slot = &mut self.cnt[g * c + col as usize];
            *slot += 1;
            if *slot == 1 {
                self.distinct[g] += 1;
                if self.distinct[g] == 2 {
                    self.broken[m.group_cand[g] as usize] += 1;
                }
            }
            self.uncolored[m.group_cand[g] as usize] -= 1;
        }
        let mut ok = true;
        for &g in &m.depth_groups[t] {
            let cand = m.group_cand[g as usize] as usize;
            if self.broken[cand] != 0 {
                continue;
            }
            match self.uncolored[cand] {
                0 => ok = false,
                1 => {
                    let (q, forced) = self.last_open(cand);
                    if self.add_forbid(q, forced) {
                        ok = false;
                    }
                }
                _ => {}
            }
        }
        ok
    }

    /// The single uncolored point of an intact candidate and the color its
    /// group already shows.
    fn last_open(&self, cand: usize) -> (u32, Color) {
        for g in self.m.cand_groups[cand].clone() {
            let members = &self.m.group_members[g];
            if let Some(&q) = members.iter().find(|&&q| self.color[q as usize] == UNSET) {
                let shown = members
                    .iter()
                    .map(|&p| self.color[p as usize])
                    .find(|&x| x != UNSET)
                    .expect("groups have two points");
                return (q, shown);
            }
        }
        unreachable!("candidate has an uncolored point")
    }

    /// Returns true if `q` has no color left.
    fn add_forbid(&mut self, q: u32, col: Color) -> bool {
        let c = self.m.c;
        let slot = &mut self.forbid[q as usize * c + col as usize];
        *slot += 1;
        self.trail.push((q, col));
        if *slot == 1 {
            self.forbidden[q as usize] += 1;
        }
        self.forbidden[q as usize] as usize == c
    }

    fn undo(&mut self, t: usize) {
        let m = self.m;
        let c = m.c;
        let col = self.color[t];
        while self.trail.len() > self.trail_mark[t] {
            let (q, x) = self.trail.pop().unwrap();
            let slot = &mut self.forbid[q as usize * c + x as usize];
            *slot -= 1;
            if *slot == 0 {
                self.forbidden[q as usize] -= 1;
            }
        }
        for &g in &m.depth_groups[t] {
            let g = g as usize;
            let cand = m.group_cand[g] as usize;
            self.uncolored[cand] += 1;
            let slot = &mut self.cnt[g * c + col as usize];
            *slot -= 1;
            if *slot == 0 {
                if self.distinct[g] == 2 {
                    self.broken[cand] -= 1;
                }
                self.distinct[g] -= 1;
            }
        }
        self.color[t] = UNSET;
    }

    /// Whether color `col` may be tried at depth `t`.
    fn allowed(&self, t: usize, col: Color) -> bool {
        if self.m.value_symmetry && col > self.used[t] {
            return false;
        }
        self.forbid[t * self.m.c + col as usize] == 0
    }

    /// False if some symmetry maps the prefix `0..=t` to a smaller one.
    fn lex_leader(&self, t: usize) -> bool {
        let mut renum = [UNSET; 256];
        for s in &self.m.syms {
            renum[..self.m.c].fill(UNSET);
            let mut next = 0;
            for i in 0..=t {
                let j = s[i] as usize;
                if j > t {
                    break;
                }
                let cj = self.color[j] as usize;
                let r = if !self.m.value_symmetry {
                    cj as Color
                } else {
                    if renum[cj] == UNSET {
                        renum[cj] = next;
                        next += 1;
                    }
                    renum[cj]
                };
                if r != self.color[i] {
                    if r < self.color[i] {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    /// Applies a prefix; false if it is pruned. Leaves it applied.
    fn replay(&mut self, prefix: &[Color]) -> bool {
        for (t, &col) in prefix.iter().enumerate() {
            if !self.allowed(t, col) {
                self.unwind(t);
                return false;
            }
            let ok = self.assign(t, col) && self.lex_leader(t);
            if !ok {
                self.unwind(t + 1);
                return false;
            }
        }
        true
    }

    /// Undoes depths `0..depth`.
    fn unwind(&mut self, depth: usize) {
        for t in (0..depth).rev() {
            if self.color[t] != UNSET {
                self.undo(t);
            }
        }
    }

    fn flush(&mut self, shared: &Shared) {
        shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed);
        self.pending_nodes = 0;
    }

    fn tick(&mut self, shared: &Shared) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes < CHECK_EVERY {
            return true;
        }
        self.flush(shared);
        if shared.stop.load(Ordering::Relaxed) {
            return false;
        }
        let nodes = shared.nodes.load(Ordering::Relaxed);
        let out_of_nodes = shared.budget.max_nodes.is_some_and(|b| nodes >= b);
        let out_of_time = shared
            .budget
            .max_seconds
            .is_some_and(|b| shared.start.elapsed().as_secs_f64() >= b);
        if out_of_nodes || out_of_time {
            shared.over_budget.store(true, Ordering::Relaxed);
            shared.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Depth-first search below `prefix`.
    fn run(&mut self, prefix: &[Color], shared: &Shared) {
        let n = self.m.len();
        let base = prefix.len();
        if !self.replay(prefix) {
            return;
        }
        let mut choice = vec![0usize; n + 1];
        let mut t = base;
        loop {
            if t == n {
                let mut found = shared.found.lock().expect("poisoned");
                if found.is_none() {
                    *found = Some(self.color.clone());
                }
                shared.stop.store(true, Ordering::Relaxed);
                break;
            }
            let mut picked = None;
            while choice[t] < self.m.c {
                let col = self.m.color_order[t][choice[t]];
                choice[t] += 1;
                if self.allowed(t, col) {
                    picked = Some(col);
                    break;
                }
            }
            let Some(col) = picked else {
                if t == base {
                    break;
                }
                t -= 1;
                self.undo(t);
                continue;
            };
            if !self.tick(shared) {
                self.undo_range(base, t);
                self.unwind(base);
                return;
            }
            if self.assign(t, col) && self.lex_leader(t) {
                t += 1;
                choice[t] = 0;
            } else {
                self.undo(t);
            }
        }
        self.undo_range(base, t.min(n));
        self.unwind(base);
    }

    fn undo_range(&mut self, from: usize, to: usize) {
        for t in (from..to).rev() {
            if self.color[t] != UNSET {
                self.undo(t);
            }
        }
    }
}

/// Bounds or exact value of a partition number.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberResult {
    pub spec: KindSpec,
    pub divisibility: bool,
    pub value: Option<usize>,
    /// The number is at least this.
    pub lower: usize,
    pub upper: Option<usize>,
    /// Bad coloring at the largest refuted size.
    pub bad: Option<BadRecord>,
    /// Exhaustion record at the value.
    pub exhaustion: Option<ExhaustionRecord>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BadRecord {
    pub size: usize,
    pub coloring: Coloring,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExhaustionRecord {
    pub size: usize,
    pub stats: SearchStats,
}

/// Scans admissible sizes `1..=max_size` until every coloring has a witness.
///
/// Each size gets the full `budget`. Stopping at the first success is sound
/// because the property is upward closed (see [`lift_witness_up`]).
pub fn compute_number(spec: &KindSpec, max_size: usize, budget: Budget, opts: &SearchOptions) -> Result<NumberResult> {
    spec.validate()?;
    let sizes: Vec<usize> = (1..=max_size).filter(|&s| spec.admissible(s, opts.divisibility)).collect();
    if sizes.is_empty() {
        return Err(Error::InvalidSize {
            kind: spec.to_string(),
            size: max_size,
        });
    }
    let mut result = NumberResult {
        spec: *spec,
        divisibility: opts.divisibility,
        value: None,
        lower: sizes[0],
        upper: None,
        bad: None,
        exhaustion: None,
    };
    for size in sizes {
        match exists_bad_coloring(spec, size, budget, opts)? {
            SearchVerdict::Bad { coloring, stats } => {
                result.bad = Some(BadRecord { size, coloring, stats });
                result.lower = next_admissible(spec, size, opts.divisibility);
            }
            SearchVerdict::NoneExists { stats } => {
                result.value = Some(size);
                result.lower = size;
                result.upper = Some(size);
                result.exhaustion = Some(ExhaustionRecord { size, stats });
                return Ok(result);
            }
            SearchVerdict::BudgetExceeded { .. } => {
                result.lower = size;
                return Ok(result);
            }
        }
    }
    Ok(result)
}

fn next_admissible(spec: &KindSpec, size: usize, divisibility: bool) -> usize {
    (size + 1..).find(|&s| spec.admissible(s, divisibility)).unwrap()
}

/// A coloring restricted from size `k+1` to size `k`, with the map sending
/// its witnesses back up.
///
/// Cubes fix the last coordinate to `anchor`; intervals and grids keep the
/// initial segment; Ω adds one to part `anchor`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub spec: KindSpec,
    pub size: usize,
    pub anchor: Letter,
    pub coloring: Coloring,
}

/// Restricts `d` (at size `k+1`) to size `k`.
pub fn lift_witness_up(spec: &KindSpec, d: &Coloring, anchor: Letter) -> Result<Restriction> {
    spec.validate()?;
    let big = crate::witness::size_of_ground(spec, d.ground())?;
    if big == 0 {
        return Err(Error::InvalidSize {
            kind: spec.to_string(),
            size: big,
        });
    }
    let k = big - 1;
    let h = spec.h;
    let ground = spec.ground(k);
    if matches!(ground, Ground::Cube { .. } | Ground::Omega { .. }) && anchor as usize >= h {
        return Err(Error::InvalidWitness(format!("anchor letter {anchor} not below {h}")));
    }
    let coloring = match ground {
        Ground::Cube { .. } => {
            Coloring::from_fn(ground, d.colors(), |r| d.at(r * h + anchor as usize))?
        }
        Ground::Interval { .. } => Coloring::from_fn(ground, d.colors(), |r| d.at(r))?,
        Ground::Grid { h, n } => Coloring::from_fn(ground, d.colors(), |r| d.at(grid_rank(&grid_unrank(r, h, n), n + 1)))?,
        Ground::Omega { total, h } => {
            let points = omega_enumerate(total, h, OmegaReading::Inclusive);
            Coloring::from_fn(ground, d.colors(), |r| {
                let mut p = points[r].parts().to_vec();
                p[anchor as usize] += 1;
                d.at(omega_rank(&p))
            })?
        }
    };
    debug_assert_eq!(coloring.table().len(), ground.size().unwrap_or(0));
    Ok(Restriction {
        spec: *spec,
        size: k,
        anchor,
        coloring,
    })
}

impl Restriction {
    /// A witness for the restricted coloring, moved to the original one.
    pub fn lift(&self, w: &Witness) -> Result<Witness> {
        Ok(match (w, self.spec.ground(self.size)) {
            (Witness::Subspace(s), Ground::Cube { .. }) => Witness::Subspace(s.extend_anchor(self.anchor)),
            (Witness::F13 { positions, anchor }, Ground::Cube { .. }) => {
                let mut anchor = anchor.clone();
                anchor.push(Some(self.anchor));
                Witness::F13 {
                    positions: positions.clone(),
                    anchor,
                }
            }
            (Witness::Ap { .. }, Ground::Interval { .. }) | (Witness::GwGrid { .. }, Ground::Grid { .. }) => w.clone(),
            (Witness::Oplus { base, step }, Ground::Omega { .. }) => {
                let mut base = base.clone();
                base[self.anchor as usize] += 1;
                Witness::Oplus { base, step: *step }
            }
            (w, g) => {
                return Err(Error::InvalidWitness(format!("{w} does not live on {g}")));
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kind::Kind;
    use crate::verify::verify_witness;
    use crate::witness::find_witness;

    fn spec(kind: Kind, h: usize, c: usize) -> KindSpec {
        KindSpec::new(kind, h, c).unwrap()
    }

    fn run(s: &KindSpec, size: usize, opts: &SearchOptions) -> SearchVerdict {
        exists_bad_coloring(s, size, Budget::unlimited(), opts).unwrap()
    }

    #[test]
    fn hj_line_examples() {
        let s = spec(Kind::Hj { m: 1 }, 2, 2);
        let opts = SearchOptions::default();
        let v = run(&s, 1, &opts);
        assert_eq!(v.bad().unwrap().encode(), "01");
        assert!(matches!(run(&s, 2, &opts), SearchVerdict::NoneExists { .. }));
    }

    #[test]
    fn f8s_at_two_separates_the_mixed_points() {
        let s = spec(Kind::F8Star { m: 2 }, 2, 2);
        let d = run(&s, 2, &SearchOptions::default()).bad().unwrap().clone();
        assert_ne!(d.at(1), d.at(2));
    }

    #[test]
    fn inadmissible_size_is_rejected() {
        let s = spec(Kind::F9 { m: 2 }, 2, 2);
        assert!(matches!(
            exists_bad_coloring(&s, 3, Budget::unlimited(), &SearchOptions::default()),
            Err(Error::InvalidSize { .. })
        ));
    }

    #[test]
    fn small_numbers() {
        let opts = SearchOptions::default();
        let r = compute_number(&spec(Kind::Hj { m: 1 }, 2, 2), 4, Budget::unlimited(), &opts).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(r.bad.as_ref().unwrap().size, 1);
        let r = compute_number(&spec(Kind::Hj { m: 2 }, 2, 1), 4, Budget::unlimited(), &opts).unwrap();
        assert_eq!(r.value, Some(2));
        let r = compute_number(&spec(Kind::Vdw { m: 3 }, 1, 2), 12, Budget::unlimited(), &opts).unwrap();
        assert_eq!(r.value, Some(9));
        assert_eq!(r.bad.as_ref().unwrap().size, 8);
        assert!(find_witness(&r.spec, &r.bad.as_ref().unwrap().coloring).unwrap().is_none());
    }

    #[test]
    fn budget_is_reported() {
        let s = spec(Kind::Vdw { m: 3 }, 1, 3);
        let v = exists_bad_coloring(&s, 27, Budget::nodes(10_000), &SearchOptions::default()).unwrap();
        assert!(matches!(v, SearchVerdict::BudgetExceeded { .. }));
        let r = compute_number(&s, 40, Budget::nodes(1), &SearchOptions::default()).unwrap();
        assert_eq!(r.value, None);
        assert!(r.lower >= 1);
    }

    /// Every pruning switch and thread count gives the same verdict.
    #[test]
    fn verdicts_agree_across_options() {
        let cases = [
            (Kind::Hj { m: 1 }, 2, 3, 2),
            (Kind::Hj { m: 1 }, 3, 2, 2),
            (Kind::F8Star { m: 2 }, 2, 2, 4),
            (Kind::F13 { m: 2 }, 2, 2, 3),
            (Kind::Vdw { m: 3 }, 1, 2, 8),
            (Kind::Vdw { m: 3 }, 1, 2, 9),
            (Kind::Gw { m: 1 }, 2, 2, 3),
            (Kind::Oplus, 2, 3, 3),
        ];
        for (kind, h, c, size) in cases {
            let s = spec(kind, h, c);
            let reference = run(&s, size, &SearchOptions::default()).name();
            for symmetry in [false, true] {
                for threads in [1, 3] {
                    for seed in [0, 7] {
                        let opts = SearchOptions {
                            symmetry,
                            threads,
                            seed,
                            ..SearchOptions::default()
                        };
                        let v = run(&s, size, &opts);
                        assert_eq!(v.name(), reference, "{s} size {size} {opts:?}");
                        if let Some(d) = v.bad() {
                            assert!(find_witness(&s, d).unwrap().is_none());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_thread_is_reproducible() {
        let s = spec(Kind::Vdw { m: 3 }, 1, 2);
        let opts = SearchOptions {
            seed: 11,
            ..SearchOptions::default()
        };
        let a = run(&s, 8, &opts);
        let b = run(&s, 8, &opts);
        assert_eq!(a.bad(), b.bad());
        assert_eq!(a.stats().nodes, b.stats().nodes);
    }

    #[test]
    fn restriction_examples() {
        let s = spec(Kind::Hj { m: 1 }, 2, 2);
        let big = Ground::Cube { k: 3, h: 2 };
        let d = Coloring::constant(big, 2, 1).unwrap();
        let r = lift_witness_up(&s, &d, 0).unwrap();
        assert!(r.coloring.table().iter().all(|&x| x == 1));
        let w = find_witness(&s, &r.coloring).unwrap().unwrap();
        assert!(verify_witness(&s, 3, &d, &r.lift(&w).unwrap()).unwrap());

        // color = last letter; fixing it to 0 gives a constant restriction
        let d = Coloring::from_fn(big, 2, |r| (r % 2) as u8).unwrap();
        let r = lift_witness_up(&s, &d, 0).unwrap();
        assert!(r.coloring.table().iter().all(|&x| x == 0));
        let lifted = r.lift(&find_witness(&s, &r.coloring).unwrap().unwrap()).unwrap();
        let Witness::Subspace(b) = &lifted else { panic!() };
        assert_eq!(b.anchor()[2], Some(0));
        assert!(verify_witness(&s, 3, &d, &lifted).unwrap());
    }
}
