//! Point permutations that map every candidate witness of a kind onto
//! another candidate, used for lex-leader pruning.

use crate::coloring::{grid_rank, grid_unrank, Ground};
use crate::error::Result;
use crate::omega::{omega_enumerate, omega_rank, OmegaReading};
use crate::words::{rank_word, unrank_word, Letter, Word};

/// Largest group the search will carry; bigger groups are truncated.
const MAX_GROUP: usize = 5040;

/// Non-identity point permutations of the ground set. For cubes, letter
/// relabelings always; coordinate permutations when `coords` is set.
pub fn point_symmetries(ground: Ground, coords: bool) -> Result<Vec<Vec<u32>>> {
    let size = ground.size()?;
    let mut out = Vec::new();
    match ground {
        Ground::Cube { k, h } => {
            let letter_perms = permutations(h);
            let coord_perms = if coords { permutations(k) } else { vec![(0..k).collect()] };
            let words: Vec<Word> = (0..size).map(|r| unrank_word(r, k, h)).collect::<Result<_>>()?;
            'outer: for lp in &letter_perms {
                for cp in &coord_perms {
                    if out.len() >= MAX_GROUP {
                        break 'outer;
                    }
                    let mut perm = Vec::with_capacity(size);
                    for w in &words {
                        let image: Vec<Letter> = (0..k).map(|i| lp[w[cp[i]] as usize] as Letter).collect();
                        perm.push(rank_word(&Word::new(image), h)? as u32);
                    }
                    out.push(perm);
                }
            }
        }
        Ground::Interval { n } => {
            out.push((0..n as u32).rev().collect());
        }
        Ground::Grid { h, n } => {
            for axes in permutations(h) {
                for flips in 0..1usize << h {
                    if out.len() >= MAX_GROUP {
                        break;
                    }
                    let perm = (0..size)
                        .map(|r| {
                            let c = grid_unrank(r, h, n);
                            let image: Vec<usize> = (0..h)
                                .map(|e| {
                                    let x = c[axes[e]];
                                    if flips >> e & 1 == 1 {
                                        n - 1 - x
                                    } else {
                                        x
                                    }
                                })
                                .collect();
                            grid_rank(&image, n) as u32
                        })
                        .collect();
                    out.push(perm);
                }
            }
        }
        Ground::Omega { total, h } => {
            let points = omega_enumerate(total, h, OmegaReading::Inclusive);
            for sigma in permutations(h) {
                let perm = points
                    .iter()
                    .map(|p| {
                        let image: Vec<usize> = (0..h).map(|a| p.parts()[sigma[a]]).collect();
                        omega_rank(&image) as u32
                    })
                    .collect();
                out.push(perm);
            }
        }
    }
    out.retain(|p: &Vec<u32>| p.iter().enumerate().any(|(i, &x)| x as usize != i));
    out.sort();
    out.dedup();
    Ok(out)
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
