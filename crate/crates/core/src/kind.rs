//! Which partition number is being computed, and on which ground set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocks::BlockConstraint;
use crate::coloring::Ground;
use crate::error::{Error, Result};
use crate::words::MAX_SYMBOLS;

/// A partition-number family with its dimension parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Kind {
    /// Monochromatic `m`-dimensional subspace.
    Hj { m: usize },
    /// As `Hj` with equal block sizes.
    HjEq { m: usize },
    /// Constant on the balanced points of an `m`-block subspace.
    F8 { m: usize },
    /// `F8` with equal block sizes.
    F9 { m: usize },
    /// Color depends only on the block profile.
    F8Star { m: usize },
    /// `F8Star` with equal block sizes.
    F9Star { m: usize },
    /// `F9Star` with every block of size `n`.
    F9StarN { m: usize, n: usize },
    /// Color depends only on letter counts over an `m`-set, for some anchor.
    F13 { m: usize },
    /// Monochromatic `m`-term arithmetic progression.
    Vdw { m: usize },
    /// Monochromatic homothetic copy of the `(m+1)^h` grid.
    Gw { m: usize },
    /// The bumped-composition property on Ω.
    Oplus,
}

/// How a subspace kind constrains colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColorConstraint {
    Monochromatic,
    BalancedConstant,
    ProfileInvariant,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Hj { .. } => "hj",
            Self::HjEq { .. } => "hjeq",
            Self::F8 { .. } => "f8",
            Self::F9 { .. } => "f9",
            Self::F8Star { .. } => "f8s",
            Self::F9Star { .. } => "f9s",
            Self::F9StarN { .. } => "f9sn",
            Self::F13 { .. } => "f13",
            Self::Vdw { .. } => "vdw",
            Self::Gw { .. } => "gw",
            Self::Oplus => "oplus",
        }
    }

    /// Builds a kind from its name and parameters (`n` only for `f9sn`).
    pub fn from_parts(name: &str, m: usize, n: Option<usize>) -> Result<Self> {
        Ok(match name {
            "hj" => Self::Hj { m },
            "hjeq" => Self::HjEq { m },
            "f8" => Self::F8 { m },
            "f9" => Self::F9 { m },
            "f8s" => Self::F8Star { m },
            "f9s" => Self::F9Star { m },
            "f9sn" => Self::F9StarN {
                m,
                n: n.ok_or_else(|| Error::InvalidKind("f9sn needs a block size n".into()))?,
            },
            "f13" => Self::F13 { m },
            "vdw" => Self::Vdw { m },
            "gw" => Self::Gw { m },
            "oplus" => Self::Oplus,
            other => return Err(Error::InvalidKind(format!("unknown kind {other:?}"))),
        })
    }

    /// The parseable form: `hj:1`, `f9sn:2,1`, `oplus`.
    pub fn token(self) -> String {
        match self {
            Self::Oplus => "oplus".into(),
            Self::F9StarN { m, n } => format!("f9sn:{m},{n}"),
            k => format!("{}:{}", k.name(), k.m()),
        }
    }

    pub fn m(self) -> usize {
        match self {
            Self::Hj { m }
            | Self::HjEq { m }
            | Self::F8 { m }
            | Self::F9 { m }
            | Self::F8Star { m }
            | Self::F9Star { m }
            | Self::F9StarN { m, .. }
            | Self::F13 { m }
            | Self::Vdw { m }
            | Self::Gw { m } => m,
            Self::Oplus => 0,
        }
    }

    pub fn block_size(self) -> Option<usize> {
        match self {
            Self::F9StarN { n, .. } => Some(n),
            _ => None,
        }
    }

    /// Block and color constraints for the subspace kinds.
    pub fn subspace_constraints(self) -> Option<(BlockConstraint, ColorConstraint)> {
        use BlockConstraint as B;
        use ColorConstraint as C;
        Some(match self {
            Self::Hj { .. } => (B::Any, C::Monochromatic),
            Self::HjEq { .. } => (B::EqualSize, C::Monochromatic),
            Self::F8 { .. } => (B::Any, C::BalancedConstant),
            Self::F9 { .. } => (B::EqualSize, C::BalancedConstant),
            Self::F8Star { .. } => (B::Any, C::ProfileInvariant),
            Self::F9Star { .. } => (B::EqualSize, C::ProfileInvariant),
            Self::F9StarN { n, .. } => (B::Size(n), C::ProfileInvariant),
            _ => return None,
        })
    }

    /// The families whose sizes must be multiples of the alphabet size.
    pub fn divisible_family(self) -> bool {
        matches!(
            self,
            Self::F8 { .. } | Self::F9 { .. } | Self::F8Star { .. } | Self::F9Star { .. } | Self::F9StarN { .. }
        )
    }

    pub fn on_cube(self) -> bool {
        !matches!(self, Self::Vdw { .. } | Self::Gw { .. } | Self::Oplus)
    }
}

impl FromStr for Kind {
    type Err = Error;
    /// Accepts `hj:1`, `f9sn:2,1`, `oplus`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums = params
            .split(',')
            .filter(|x| !x.is_empty())
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("kind {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(name, nums.first().copied().unwrap_or(0), nums.get(1).copied())
    }
}

/// A kind together with alphabet size `h` and color count `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KindSpec {
    pub kind: Kind,
    pub h: usize,
    pub c: usize,
}

impl KindSpec {
    pub fn new(kind: Kind, h: usize, c: usize) -> Result<Self> {
        let spec = Self { kind, h, c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.h == 0 || self.h > MAX_SYMBOLS || self.c == 0 || self.c > MAX_SYMBOLS {
            return Err(Error::InvalidKind(format!(
                "alphabet and color counts must be in 1..={MAX_SYMBOLS}"
            )));
        }
        if self.kind != Kind::Oplus && self.kind.m() == 0 {
            return Err(Error::InvalidKind(format!("{}: m must be positive", self.kind.name())));
        }
        if self.kind.divisible_family() && self.kind.m() % self.h != 0 {
            return Err(Error::InvalidKind(format!(
                "{}: alphabet size {} must divide m={}",
                self.kind.name(),
                self.h,
                self.kind.m()
            )));
        }
        if self.kind.block_size() == Some(0) {
            return Err(Error::InvalidKind("f9sn: block size must be positive".into()));
        }
        Ok(())
    }

    /// The ground set colored at `size`.
    pub fn ground(&self, size: usize) -> Ground {
        match self.kind {
            Kind::Vdw { .. } => Ground::Interval { n: size },
            Kind::Gw { .. } => Ground::Grid { h: self.h, n: size },
            Kind::Oplus => Ground::Omega { total: size, h: self.h },
            _ => Ground::Cube { k: size, h: self.h },
        }
    }

    /// Whether `size` is a candidate value; divisible families need
    /// multiples of `h` unless `divisibility` is off.
    pub fn admissible(&self, size: usize, divisibility: bool) -> bool {
        !(divisibility && self.kind.divisible_family() && size % self.h != 0)
    }

    pub fn check_admissible(&self, size: usize, divisibility: bool) -> Result<()> {
        if self.admissible(size, divisibility) {
            Ok(())
        } else {
            Err(Error::InvalidSize {
                kind: self.to_string(),
                size,
            })
        }
    }
}

impl fmt::Display for KindSpec {
    /// `hj(1;2,2)`, `f9sn(2,1;2,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.kind.name();
        match self.kind {
            Kind::F9StarN { m, n } => write!(f, "{name}({m},{n};{},{})", self.h, self.c),
            Kind::Oplus => write!(f, "{name}({},{})", self.h, self.c),
            Kind::Vdw { m } => write!(f, "{name}({m};{})", self.c),
            k => write!(f, "{name}({};{},{})", k.m(), self.h, self.c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(KindSpec::new(Kind::F9 { m: 3 }, 2, 2).is_err());
        assert!(KindSpec::new(Kind::F9 { m: 2 }, 2, 2).is_ok());
        assert!(KindSpec::new(Kind::Hj { m: 0 }, 2, 2).is_err());
        assert!(KindSpec::new(Kind::F9StarN { m: 2, n: 0 }, 2, 2).is_err());
        assert!(KindSpec::new(Kind::Oplus, 2, 3).is_ok());
        assert!(KindSpec::new(Kind::Hj { m: 1 }, 0, 2).is_err());
    }

    #[test]
    fn admissibility() {
        let f8 = KindSpec::new(Kind::F8Star { m: 2 }, 2, 2).unwrap();
        assert!(f8.admissible(4, true));
        assert!(!f8.admissible(3, true));
        assert!(f8.admissible(3, false));
        let hj = KindSpec::new(Kind::Hj { m: 1 }, 2, 2).unwrap();
        assert!(hj.admissible(3, true));
    }

    #[test]
    fn display_and_parse() {
        let spec = KindSpec::new(Kind::Hj { m: 1 }, 2, 2).unwrap();
        assert_eq!(spec.to_string(), "hj(1;2,2)");
        assert_eq!("f9sn:2,1".parse::<Kind>().unwrap(), Kind::F9StarN { m: 2, n: 1 });
        assert_eq!("oplus".parse::<Kind>().unwrap(), Kind::Oplus);
        assert!("zz:1".parse::<Kind>().is_err());
        for k in [Kind::F9StarN { m: 2, n: 1 }, Kind::Oplus, Kind::Gw { m: 3 }] {
            assert_eq!(k.token().parse::<Kind>().unwrap(), k);
        }
    }
}
