//! Dense colorings of the finite ground sets the partition numbers live on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::omega::composition_count;
use crate::words::{cube_size, rank_word, Color, Word};

/// The point set a coloring is defined on. Points are addressed by rank:
/// words big-endian base `h`, grid points big-endian base `n`, and Ω points
/// by their lexicographic position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Ground {
    Cube { k: usize, h: usize },
    Interval { n: usize },
    Grid { h: usize, n: usize },
    Omega { total: usize, h: usize },
}

impl Ground {
    pub fn size(self) -> Result<usize> {
        match self {
            Self::Cube { k, h } => cube_size(k, h),
            Self::Interval { n } => Ok(n),
            Self::Grid { h, n } => cube_size(h, n),
            Self::Omega { total, h } => Ok(composition_count(total, h)),
        }
    }
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Cube { k, h } => write!(f, "cube(k={k},h={h})"),
            Self::Interval { n } => write!(f, "interval(n={n})"),
            Self::Grid { h, n } => write!(f, "grid(h={h},n={n})"),
            Self::Omega { total, h } => write!(f, "omega(m={total},h={h})"),
        }
    }
}

impl FromStr for Ground {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("ground set header {s:?}"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut fields = std::collections::HashMap::new();
        for item in body.split(',').filter(|x| !x.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            fields.insert(key.trim(), value);
        }
        let get = |key: &str| fields.get(key).copied().ok_or_else(bad);
        match name.trim() {
            "cube" => Ok(Self::Cube { k: get("k")?, h: get("h")? }),
            "interval" => Ok(Self::Interval { n: get("n")? }),
            "grid" => Ok(Self::Grid { h: get("h")?, n: get("n")? }),
            "omega" => Ok(Self::Omega { total: get("m")?, h: get("h")? }),
            _ => Err(bad()),
        }
    }
}

impl From<Ground> for String {
    fn from(g: Ground) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for Ground {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A total map from the ground set to colors `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    ground: Ground,
    colors: usize,
    table: Vec<Color>,
}

impl Coloring {
    pub fn new(ground: Ground, colors: usize, table: Vec<Color>) -> Result<Self> {
        let size = ground.size()?;
        if table.len() != size {
            return Err(Error::InvalidColoring(format!(
                "{ground} has {size} points, table has {}",
                table.len()
            )));
        }
        if colors == 0 {
            return Err(Error::InvalidColoring("no colors".into()));
        }
        if let Some(c) = table.iter().find(|&&c| c as usize >= colors) {
            return Err(Error::InvalidColoring(format!("color {c} not below {colors}")));
        }
        Ok(Self {
            ground,
            colors,
            table,
        })
    }

    /// Colors every point by `f(rank)`.
    pub fn from_fn(ground: Ground, colors: usize, f: impl FnMut(usize) -> Color) -> Result<Self> {
        let size = ground.size()?;
        Self::new(ground, colors, (0..size).map(f).collect())
    }

    pub fn constant(ground: Ground, colors: usize, color: Color) -> Result<Self> {
        Self::from_fn(ground, colors, |_| color)
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn table(&self) -> &[Color] {
        &self.table
    }

    pub fn at(&self, rank: usize) -> Color {
        self.table[rank]
    }

    /// Color of a cube word.
    pub fn word_color(&self, w: &Word) -> Result<Color> {
        match self.ground {
            Ground::Cube { k, h } if w.len() == k => Ok(self.table[rank_word(w, h)?]),
            _ => Err(Error::InvalidWord(format!("{w} is not a point of {}", self.ground))),
        }
    }

    /// The table as a base-`colors` digit string (digits `0-9a-z`).
    pub fn encode(&self) -> String {
        self.table
            .iter()
            .map(|&c| char::from_digit(u32::from(c), 36).unwrap_or('?'))
            .collect()
    }

    pub fn decode(ground: Ground, colors: usize, data: &str) -> Result<Self> {
        if colors > 36 {
            return Err(Error::InvalidColoring(format!(
                "digit-string encoding supports at most 36 colors, got {colors}"
            )));
        }
        let table = data
            .chars()
            .map(|ch| {
                ch.to_digit(36)
                    .map(|d| d as Color)
                    .ok_or_else(|| Error::InvalidColoring(format!("bad digit {ch:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, colors, table)
    }
}

/// Big-endian base-`n` rank of a grid point.
pub fn grid_rank(coords: &[usize], n: usize) -> usize {
    coords.iter().fold(0, |acc, &x| acc * n + x)
}

/// Inverse of [`grid_rank`] for `h` coordinates.
pub fn grid_unrank(mut r: usize, h: usize, n: usize) -> Vec<usize> {
    let mut coords = vec![0; h];
    for slot in coords.iter_mut().rev() {
        *slot = r % n;
        r /= n;
    }
    coords
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        for g in [
            Ground::Cube { k: 3, h: 2 },
            Ground::Interval { n: 8 },
            Ground::Grid { h: 2, n: 3 },
            Ground::Omega { total: 4, h: 2 },
        ] {
            assert_eq!(g.to_string().parse::<Ground>().unwrap(), g);
        }
        assert!("cube(k=2)".parse::<Ground>().is_err());
        assert!("sphere(n=2)".parse::<Ground>().is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(Ground::Cube { k: 3, h: 2 }.size().unwrap(), 8);
        assert_eq!(Ground::Grid { h: 2, n: 3 }.size().unwrap(), 9);
        assert_eq!(Ground::Omega { total: 4, h: 2 }.size().unwrap(), 5);
        assert_eq!(Ground::Interval { n: 0 }.size().unwrap(), 0);
    }

    #[test]
    fn table_validation_and_encoding() {
        let g = Ground::Interval { n: 8 };
        let d = Coloring::decode(g, 2, "00110011").unwrap();
        assert_eq!(d.encode(), "00110011");
        assert!(Coloring::decode(g, 2, "0011001").is_err());
        assert!(Coloring::decode(g, 2, "00110012").is_err());
    }

    #[test]
    fn grid_ranks() {
        for r in 0..27 {
            assert_eq!(grid_rank(&grid_unrank(r, 3, 3), 3), r);
        }
    }
}
