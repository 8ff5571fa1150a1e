//! The composition space Ω: per-letter counts summing to a fixed total.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{CountProfile, Letter};

/// A weak composition of `total` into `h` parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaPoint(CountProfile);

impl OmegaPoint {
    /// Checks that the parts sum to `total`.
    pub fn new(parts: Vec<usize>, total: usize) -> Result<Self> {
        let p = CountProfile::new(parts);
        if p.total() != total {
            return Err(Error::OutOfOmega(format!("{p} does not sum to {total}")));
        }
        Ok(Self(p))
    }

    pub fn parts(&self) -> &[usize] {
        self.0.counts()
    }

    pub fn total(&self) -> usize {
        self.0.total()
    }

    pub fn profile(&self) -> &CountProfile {
        &self.0
    }
}

impl std::fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Which points count as members of Ω.
///
/// `Inclusive` admits parts equal to the total; `Strict` reads Ω as a subset
/// of words over `{0..total-1}` and drops them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaReading {
    #[default]
    Inclusive,
    Strict,
}

impl OmegaReading {
    pub fn admits(self, parts: &[usize], total: usize) -> bool {
        match self {
            Self::Inclusive => true,
            Self::Strict => parts.iter().all(|&p| p < total),
        }
    }
}

/// Number of weak compositions of `total` into `parts` parts.
pub fn composition_count(total: usize, parts: usize) -> usize {
    if parts == 0 {
        return usize::from(total == 0);
    }
    binomial(total + parts - 1, parts - 1)
}

pub(crate) fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All points of Ω in lexicographic order.
pub fn omega_enumerate(total: usize, h: usize, reading: OmegaReading) -> Vec<OmegaPoint> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=rest {
            cur.push(v);
            go(rest - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    if h == 0 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    go(total, h, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .filter(|p| reading.admits(p, total))
        .map(|p| OmegaPoint(CountProfile::new(p)))
        .collect()
}

/// Position of `parts` in the inclusive lexicographic enumeration.
pub fn omega_rank(parts: &[usize]) -> usize {
    let mut rest: usize = parts.iter().sum();
    let mut rank = 0;
    for (i, &p) in parts.iter().enumerate() {
        let slots_after = parts.len() - i - 1;
        if slots_after == 0 {
            break;
        }
        for v in 0..p {
            rank += composition_count(rest - v, slots_after);
        }
        rest -= p;
    }
    rank
}

/// Inverse of [`omega_rank`].
pub fn omega_unrank(mut rank: usize, total: usize, h: usize) -> Result<OmegaPoint> {
    if h == 0 || rank >= composition_count(total, h) {
        return Err(Error::OutOfOmega(format!("rank {rank} for total {total}, h={h}")));
    }
    let mut parts = Vec::with_capacity(h);
    let mut rest = total;
    for i in 0..h {
        let slots_after = h - i - 1;
        if slots_after == 0 {
            parts.push(rest);
            break;
        }
        let mut v = 0;
        loop {
            let block = composition_count(rest - v, slots_after);
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        parts.push(v);
        rest -= v;
    }
    Ok(OmegaPoint(CountProfile::new(parts)))
}

/// The bumped point: `base` with `step` added at letter `alpha`.
pub fn omega_bump(base: &[usize], step: usize, alpha: Letter, total: usize) -> Result<OmegaPoint> {
    let a = alpha as usize;
    if step == 0 {
        return Err(Error::OutOfOmega("step must be positive".into()));
    }
    if a >= base.len() {
        return Err(Error::OutOfOmega(format!("letter {alpha} outside the alphabet")));
    }
    let mut parts = base.to_vec();
    parts[a] += step;
    let sum: usize = parts.iter().sum();
    if sum != total || parts.iter().any(|&p| p > total) {
        return Err(Error::OutOfOmega(format!(
            "bumped point sums to {sum}, expected {total}"
        )));
    }
    Ok(OmegaPoint(CountProfile::new(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parts(v: &[OmegaPoint]) -> Vec<Vec<usize>> {
        v.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn enumerate_examples() {
        let four = omega_enumerate(4, 2, OmegaReading::Inclusive);
        assert_eq!(parts(&four), [[0, 4], [1, 3], [2, 2], [3, 1], [4, 0]]);
        assert_eq!(omega_enumerate(2, 2, OmegaReading::Inclusive).len(), 3);
        assert_eq!(parts(&omega_enumerate(0, 3, OmegaReading::Inclusive)), [[0, 0, 0]]);
        let strict = omega_enumerate(4, 2, OmegaReading::Strict);
        assert_eq!(parts(&strict), [[1, 3], [2, 2], [3, 1]]);
    }

    #[test]
    fn counts_and_ranks() {
        for h in 1..=4 {
            for total in 0..=6 {
                let all = omega_enumerate(total, h, OmegaReading::Inclusive);
                assert_eq!(all.len(), composition_count(total, h));
                for (r, p) in all.iter().enumerate() {
                    assert_eq!(omega_rank(p.parts()), r);
                    assert_eq!(&omega_unrank(r, total, h).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn bump_examples() {
        assert_eq!(omega_bump(&[1, 1], 2, 0, 4).unwrap().parts(), &[3, 1]);
        assert_eq!(omega_bump(&[1, 1], 2, 1, 4).unwrap().parts(), &[1, 3]);
        assert_eq!(omega_bump(&[6, 4], 2, 0, 12).unwrap().parts(), &[8, 4]);
        assert!(omega_bump(&[1, 1], 2, 0, 5).is_err());
        assert!(omega_bump(&[1, 1], 0, 0, 2).is_err());
    }

    proptest! {
        #[test]
        fn bump_outputs_sum_and_are_distinct(
            base in prop::collection::vec(0usize..5, 2..5),
            step in 1usize..5,
        ) {
            let total = base.iter().sum::<usize>() + step;
            let outs: Vec<_> = (0..base.len())
                .map(|a| omega_bump(&base, step, a as Letter, total).unwrap())
                .collect();
            for o in &outs {
                prop_assert_eq!(o.total(), total);
            }
            for i in 0..outs.len() {
                for j in i + 1..outs.len() {
                    prop_assert_ne!(&outs[i], &outs[j]);
                }
            }
        }
    }
}
