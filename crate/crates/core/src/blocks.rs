//! Block systems: the pair (disjoint moving blocks, anchor) naming an
//! `m`-dimensional subspace of the cube.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{cube_size, CountProfile, Letter, Word};

/// Pairwise disjoint non-empty blocks `M_0..M_{m-1}` of `0..k` plus an
/// anchor on every other position.
///
/// Blocks are kept sorted internally and ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSystem {
    k: usize,
    blocks: Vec<Vec<usize>>,
    anchor: Vec<Option<Letter>>,
}

impl BlockSystem {
    /// `anchor` has length `k`: `Some(letter)` exactly off the blocks.
    pub fn new(k: usize, mut blocks: Vec<Vec<usize>>, anchor: Vec<Option<Letter>>) -> Result<Self> {
        if anchor.len() != k {
            return Err(Error::InvalidWitness(format!(
                "anchor has length {}, expected {k}",
                anchor.len()
            )));
        }
        let mut covered = vec![false; k];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidWitness("empty block".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i >= k {
                    return Err(Error::InvalidWitness(format!("position {i} outside 0..{k}")));
                }
                if std::mem::replace(&mut covered[i], true) {
                    return Err(Error::InvalidWitness(format!("position {i} in two blocks")));
                }
            }
        }
        for (i, (&c, a)) in covered.iter().zip(&anchor).enumerate() {
            if c == a.is_some() {
                return Err(Error::InvalidWitness(format!(
                    "anchor must be defined exactly off the blocks (position {i})"
                )));
            }
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { k, blocks, anchor })
    }

    /// Builds a system from blocks and an anchor listed as `(position, letter)`.
    pub fn from_pairs(k: usize, blocks: Vec<Vec<usize>>, anchor: &[(usize, Letter)]) -> Result<Self> {
        let mut full = vec![None; k];
        for &(i, a) in anchor {
            if i >= k {
                return Err(Error::InvalidWitness(format!("anchor position {i} outside 0..{k}")));
            }
            full[i] = Some(a);
        }
        Self::new(k, blocks, full)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn anchor(&self) -> &[Option<Letter>] {
        &self.anchor
    }

    /// Checks the anchor letters against the alphabet.
    pub fn validate_letters(&self, h: usize) -> Result<()> {
        match self.anchor.iter().flatten().find(|&&a| a as usize >= h) {
            Some(a) => Err(Error::InvalidWitness(format!("anchor letter {a} not below {h}"))),
            None => Ok(()),
        }
    }

    /// The point whose block `l` carries `assignment[l]`.
    pub fn point(&self, assignment: &[Letter]) -> Word {
        let mut letters: Vec<Letter> = self.anchor.iter().map(|a| a.unwrap_or(0)).collect();
        for (block, &a) in self.blocks.iter().zip(assignment) {
            for &i in block {
                letters[i] = a;
            }
        }
        Word::new(letters)
    }

    /// Appends one anchored position carrying `letter`.
    pub fn extend_anchor(&self, letter: Letter) -> Self {
        let mut anchor = self.anchor.clone();
        anchor.push(Some(letter));
        Self {
            k: self.k + 1,
            blocks: self.blocks.clone(),
            anchor,
        }
    }
}

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (j, b) in self.blocks.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            let items: Vec<String> = b.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        write!(f, "> rho=")?;
        for a in &self.anchor {
            match a {
                Some(a) => write!(f, "{a}")?,
                None => write!(f, "*")?,
            }
        }
        Ok(())
    }
}

/// Restriction on the block sizes of an enumerated system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockConstraint {
    Any,
    EqualSize,
    Size(usize),
    Singleton,
}

impl BlockConstraint {
    fn max_size(self) -> Option<usize> {
        match self {
            Self::Size(n) => Some(n),
            Self::Singleton => Some(1),
            _ => None,
        }
    }

    pub fn admits(self, blocks: &[Vec<usize>]) -> bool {
        match self {
            Self::Any => true,
            Self::EqualSize => blocks.windows(2).all(|w| w[0].len() == w[1].len()),
            Self::Size(n) => blocks.iter().all(|b| b.len() == n),
            Self::Singleton => blocks.iter().all(|b| b.len() == 1),
        }
    }
}

/// All points of the subspace, ordered by the rank of their block-letter
/// assignment (block 0 most significant).
pub fn subspace_points(s: &BlockSystem, h: usize) -> Vec<Word> {
    let m = s.dim();
    let mut assignment = vec![0 as Letter; m];
    let total = h.pow(m as u32);
    let mut out = Vec::with_capacity(total);
    for r in 0..total {
        let mut x = r;
        for slot in assignment.iter_mut().rev() {
            *slot = (x % h) as Letter;
            x /= h;
        }
        out.push(s.point(&assignment));
    }
    out
}

/// Ranks of the subspace points, in the same order as [`subspace_points`].
pub fn subspace_ranks(s: &BlockSystem, h: usize) -> Vec<usize> {
    let k = s.k();
    let place = |i: usize| h.pow((k - 1 - i) as u32);
    let base: usize = s
        .anchor()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.map(|a| a as usize * place(i)))
        .sum();
    let weights: Vec<usize> = s
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&i| place(i)).sum())
        .collect();
    let m = s.dim();
    let total = h.pow(m as u32);
    let mut out = Vec::with_capacity(total);
    for r in 0..total {
        let mut x = r;
        let mut rank = base;
        for w in weights.iter().rev() {
            rank += (x % h) * w;
            x /= h;
        }
        out.push(rank);
    }
    out
}

/// Per-letter counts of blocks on which `v` is constant.
pub fn block_profile(v: &Word, s: &BlockSystem, h: usize) -> Result<CountProfile> {
    v.validate(h)?;
    if v.len() != s.k() {
        return Err(Error::NotAMember);
    }
    for (i, a) in s.anchor().iter().enumerate() {
        if let Some(a) = a {
            if v[i] != *a {
                return Err(Error::NotAMember);
            }
        }
    }
    let mut profile = CountProfile::zero(h);
    for block in s.blocks() {
        let a = v[block[0]];
        if block.iter().any(|&i| v[i] != a) {
            return Err(Error::NotAMember);
        }
        profile.bump(a);
    }
    Ok(profile)
}

/// Every canonical block system with `m` blocks in `0..k` satisfying the
/// constraint, each paired with every anchor (anchors by rank).
pub fn enumerate_block_systems(
    k: usize,
    m: usize,
    h: usize,
    constraint: BlockConstraint,
) -> impl Iterator<Item = BlockSystem> {
    let partitions = if m == 0 || m > k {
        Vec::new()
    } else {
        block_partitions(k, m, constraint)
    };
    partitions.into_iter().flat_map(move |blocks| {
        let free: Vec<usize> = {
            let used: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
            (0..k).filter(|i| !used.contains(i)).collect()
        };
        let count = cube_size(free.len(), h).unwrap_or(0);
        (0..count).map(move |r| {
            let mut anchor = vec![None; k];
            let mut x = r;
            for &i in free.iter().rev() {
                anchor[i] = Some((x % h) as Letter);
                x /= h;
            }
            BlockSystem {
                k,
                blocks: blocks.clone(),
                anchor,
            }
        })
    })
}

/// All lines of the cube: block systems with one block.
pub fn enumerate_lines(k: usize, h: usize) -> impl Iterator<Item = BlockSystem> {
    enumerate_block_systems(k, 1, h, BlockConstraint::Any)
}

/// Canonical `m`-block partial partitions of `0..k` (blocks ordered by their
/// minimum element, encoded as a restricted-growth labeling).
fn block_partitions(k: usize, m: usize, constraint: BlockConstraint) -> Vec<Vec<Vec<usize>>> {
    fn go(
        i: usize,
        k: usize,
        m: usize,
        cap: Option<usize>,
        constraint: BlockConstraint,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let opened = blocks.len();
        if m - opened > k - i {
            return;
        }
        if i == k {
            if opened == m && constraint.admits(blocks) {
                out.push(blocks.clone());
            }
            return;
        }
        for j in 0..opened {
            if cap.is_some_and(|c| blocks[j].len() >= c) {
                continue;
            }
            blocks[j].push(i);
            go(i + 1, k, m, cap, constraint, blocks, out);
            blocks[j].pop();
        }
        if opened < m {
            blocks.push(vec![i]);
            go(i + 1, k, m, cap, constraint, blocks, out);
            blocks.pop();
        }
        go(i + 1, k, m, cap, constraint, blocks, out);
    }
    let mut out = Vec::new();
    go(0, k, m, constraint.max_size(), constraint, &mut Vec::new(), &mut out);
    out
}
