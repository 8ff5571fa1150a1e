//! Direct re-validation of witnesses by point evaluation.
//!
//! Nothing here touches [`crate::witness::WitnessFamily`]: points are built
//! from the witness payload and looked up in the coloring one by one.

use std::collections::HashMap;

use crate::blocks::{BlockConstraint, BlockSystem};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::kind::{ColorConstraint, Kind, KindSpec};
use crate::omega::{omega_enumerate, OmegaReading};
use crate::witness::Witness;
use crate::words::{Color, Letter, Word};

/// Whether `w` satisfies the defining condition of `spec` for `d` at `size`.
///
/// Returns `Err(InvalidWitness)` when the payload does not have the shape the
/// kind requires, and `Ok(false)` when it has the shape but `d` breaks it.
pub fn verify_witness(spec: &KindSpec, size: usize, d: &Coloring, w: &Witness) -> Result<bool> {
    spec.validate()?;
    if d.ground() != spec.ground(size) {
        return Err(Error::InvalidColoring(format!(
            "{} is not the ground set of {spec} at size {size}",
            d.ground()
        )));
    }
    let h = spec.h;
    match (spec.kind, w) {
        (Kind::F13 { m }, Witness::F13 { positions, anchor }) => verify_f13(d, size, h, m, positions, anchor),
        (Kind::Vdw { m }, &Witness::Ap { start, step }) => verify_ap(d, size, m, start, step),
        (Kind::Gw { m }, Witness::GwGrid { corner, step }) => verify_grid(d, size, h, m, corner, *step),
        (Kind::Oplus, Witness::Oplus { base, step }) => verify_oplus(d, size, h, base, *step),
        (kind, Witness::Subspace(s)) if kind.subspace_constraints().is_some() => {
            let (bc, cc) = kind.subspace_constraints().unwrap();
            verify_subspace(d, size, h, kind.m(), bc, cc, s)
        }
        (kind, w) => Err(Error::InvalidWitness(format!(
            "{} witness payload {w} has the wrong variant",
            kind.name()
        ))),
    }
}

fn verify_subspace(
    d: &Coloring,
    k: usize,
    h: usize,
    m: usize,
    bc: BlockConstraint,
    cc: ColorConstraint,
    s: &BlockSystem,
) -> Result<bool> {
    // re-run the constructor checks on a deserialized payload
    let s = BlockSystem::new(s.k(), s.blocks().to_vec(), s.anchor().to_vec())?;
    s.validate_letters(h)?;
    if s.k() != k || s.dim() != m {
        return Err(Error::InvalidWitness(format!(
            "expected {m} blocks in 0..{k}, got {} blocks in 0..{}",
            s.dim(),
            s.k()
        )));
    }
    if !bc.admits(s.blocks()) {
        return Err(Error::InvalidWitness(format!("block sizes violate {bc:?}")));
    }
    let mut assignment = vec![0 as Letter; m];
    let mut seen: HashMap<Vec<usize>, Color> = HashMap::new();
    let mut mono: Option<Color> = None;
    loop {
        let mut word: Vec<Letter> = vec![0; k];
        for (i, a) in s.anchor().iter().enumerate() {
            if let Some(a) = a {
                word[i] = *a;
            }
        }
        for (block, &a) in s.blocks().iter().zip(&assignment) {
            for &i in block {
                word[i] = a;
            }
        }
        let color = d.word_color(&Word::new(word))?;
        let mut counts = vec![0usize; h];
        for &a in &assignment {
            counts[a as usize] += 1;
        }
        let ok = match cc {
            ColorConstraint::Monochromatic => *mono.get_or_insert(color) == color,
            ColorConstraint::BalancedConstant => {
                !counts.iter().all(|&c| c * h == m) || *mono.get_or_insert(color) == color
            }
            ColorConstraint::ProfileInvariant => *seen.entry(counts).or_insert(color) == color,
        };
        if !ok {
            return Ok(false);
        }
        if !next_tuple(&mut assignment, h) {
            return Ok(true);
        }
    }
}

fn verify_f13(
    d: &Coloring,
    k: usize,
    h: usize,
    m: usize,
    positions: &[usize],
    anchor: &[Option<Letter>],
) -> Result<bool> {
    if positions.len() != m || positions.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidWitness(format!(
            "N must list {m} increasing positions, got {positions:?}"
        )));
    }
    if anchor.len() != k || positions.iter().any(|&i| i >= k) {
        return Err(Error::InvalidWitness(format!("witness does not fit a side-{k} cube")));
    }
    for (i, a) in anchor.iter().enumerate() {
        let inside = positions.contains(&i);
        match a {
            Some(a) if !inside && (*a as usize) < h => {}
            None if inside => {}
            _ => return Err(Error::InvalidWitness(format!("bad anchor at position {i}"))),
        }
    }
    let mut eta = vec![0 as Letter; m];
    let mut seen: HashMap<Vec<usize>, Color> = HashMap::new();
    loop {
        let mut word: Vec<Letter> = anchor.iter().map(|a| a.unwrap_or(0)).collect();
        let mut counts = vec![0usize; h];
        for (&i, &a) in positions.iter().zip(&eta) {
            word[i] = a;
            counts[a as usize] += 1;
        }
        let color = d.word_color(&Word::new(word))?;
        if *seen.entry(counts).or_insert(color) != color {
            return Ok(false);
        }
        if !next_tuple(&mut eta, h) {
            return Ok(true);
        }
    }
}

fn verify_ap(d: &Coloring, n: usize, m: usize, start: usize, step: usize) -> Result<bool> {
    if step == 0 || start + m.saturating_sub(1) * step >= n {
        return Err(Error::InvalidWitness(format!(
            "progression start={start} step={step} of length {m} does not fit 0..{n}"
        )));
    }
    let first = d.at(start);
    Ok((0..m).all(|i| d.at(start + i * step) == first))
}

fn verify_grid(d: &Coloring, n: usize, h: usize, m: usize, corner: &[usize], step: usize) -> Result<bool> {
    if corner.len() != h || step == 0 || corner.iter().any(|&x| x + step * m >= n) {
        return Err(Error::InvalidWitness(format!(
            "grid copy corner={corner:?} step={step} does not fit side {n}"
        )));
    }
    let mut offset = vec![0 as Letter; h];
    let mut first = None;
    loop {
        let rank = corner
            .iter()
            .zip(&offset)
            .fold(0, |acc, (&x, &i)| acc * n + x + step * i as usize);
        let color = d.at(rank);
        if *first.get_or_insert(color) != color {
            return Ok(false);
        }
        if !next_tuple(&mut offset, m + 1) {
            return Ok(true);
        }
    }
}

fn verify_oplus(d: &Coloring, total: usize, h: usize, base: &[usize], step: usize) -> Result<bool> {
    if base.len() != h || step == 0 || base.iter().sum::<usize>() + step != total {
        return Err(Error::InvalidWitness(format!(
            "base {base:?} with step {step} does not sum to {total}"
        )));
    }
    let index: HashMap<Vec<usize>, usize> = omega_enumerate(total, h, OmegaReading::Inclusive)
        .into_iter()
        .enumerate()
        .map(|(r, p)| (p.parts().to_vec(), r))
        .collect();
    let mut first = None;
    for a in 0..h {
        let mut p = base.to_vec();
        p[a] += step;
        let rank = *index
            .get(&p)
            .ok_or_else(|| Error::InvalidWitness(format!("{p:?} is not in omega")))?;
        let color = d.at(rank);
        if *first.get_or_insert(color) != color {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Odometer step over `radix^len`; false after the last tuple.
fn next_tuple(t: &mut [Letter], radix: usize) -> bool {
    for slot in t.iter_mut().rev() {
        if (*slot as usize) + 1 < radix {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Ground;
    use crate::witness::{find_subspace_witness, WitnessFamily};

    #[test]
    fn recolored_line_point_fails() {
        let spec = KindSpec::new(Kind::Hj { m: 1 }, 2, 2).unwrap();
        let g = Ground::Cube { k: 2, h: 2 };
        let d = Coloring::constant(g, 2, 0).unwrap();
        let w = find_subspace_witness(&d, 1, BlockConstraint::Any, ColorConstraint::Monochromatic)
            .unwrap()
            .unwrap();
        assert!(verify_witness(&spec, 2, &d, &w).unwrap());
        let Witness::Subspace(s) = &w else { panic!() };
        let p = crate::words::rank_word(&s.point(&[1]), 2).unwrap();
        let mut table = d.table().to_vec();
        table[p] = 1;
        let d2 = Coloring::new(g, 2, table).unwrap();
        assert!(!verify_witness(&spec, 2, &d2, &w).unwrap());
    }

    #[test]
    fn ap_example() {
        let spec = KindSpec::new(Kind::Vdw { m: 2 }, 1, 2).unwrap();
        let d = Coloring::decode(Ground::Interval { n: 3 }, 2, "010").unwrap();
        assert!(verify_witness(&spec, 3, &d, &Witness::Ap { start: 0, step: 2 }).unwrap());
        assert!(!verify_witness(&spec, 3, &d, &Witness::Ap { start: 0, step: 1 }).unwrap());
        assert!(verify_witness(&spec, 3, &d, &Witness::Ap { start: 2, step: 1 }).is_err());
    }

    #[test]
    fn structural_mismatch_is_an_error() {
        let spec = KindSpec::new(Kind::F9Star { m: 2 }, 2, 2).unwrap();
        let d = Coloring::constant(Ground::Cube { k: 3, h: 2 }, 2, 0).unwrap();
        let unequal = BlockSystem::new(3, vec![vec![0, 1], vec![2]], vec![None; 3]).unwrap();
        assert!(matches!(
            verify_witness(&spec, 3, &d, &Witness::Subspace(unequal)),
            Err(Error::InvalidWitness(_))
        ));
        assert!(matches!(
            verify_witness(&spec, 3, &d, &Witness::Ap { start: 0, step: 1 }),
            Err(Error::InvalidWitness(_))
        ));
    }

    /// Witnesses for a stronger kind re-verify under the weaker one.
    #[test]
    fn implication_ladder() {
        let pairs = [
            (Kind::Hj { m: 2 }, Kind::F8Star { m: 2 }),
            (Kind::HjEq { m: 2 }, Kind::F9Star { m: 2 }),
            (Kind::F9Star { m: 2 }, Kind::F9 { m: 2 }),
            (Kind::F8Star { m: 2 }, Kind::F8 { m: 2 }),
        ];
        let k = 3;
        let g = Ground::Cube { k, h: 2 };
        for (strong, weak) in pairs {
            let strong = KindSpec::new(strong, 2, 2).unwrap();
            let weak = KindSpec::new(weak, 2, 2).unwrap();
            let fam = WitnessFamily::compile(&strong, k).unwrap();
            for code in 0..256usize {
                let d = Coloring::from_fn(g, 2, |r| (code >> r & 1) as u8).unwrap();
                if let Some(w) = fam.find(&d) {
                    assert!(verify_witness(&weak, k, &d, &w).unwrap(), "{strong} -> {weak}");
                }
            }
        }
    }
}
