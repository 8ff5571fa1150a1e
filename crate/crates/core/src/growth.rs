//! The Grzegorczyk generators `E_n` and symbolic tower expressions.
//!
//! `E_0(x, y) = x + y`, `E_1(x) = x^2 + 2`, `E_{n+2}(0) = 2`,
//! `E_{n+2}(x + 1) = E_{n+1}(E_{n+2}(x))`. Evaluation always runs under a
//! [`GrowthBudget`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthBudget {
    pub max_bits: u64,
    pub max_steps: u64,
}

impl GrowthBudget {
    pub fn new(max_bits: u64, max_steps: u64) -> Result<Self> {
        if max_bits == 0 || max_steps == 0 {
            return Err(Error::Parse("growth budget limits must be positive".into()));
        }
        Ok(Self { max_bits, max_steps })
    }
}

impl Default for GrowthBudget {
    fn default() -> Self {
        Self {
            max_bits: 4096,
            max_steps: 1_000_000,
        }
    }
}

struct Evaluator {
    budget: GrowthBudget,
    steps: u64,
}

impl Evaluator {
    fn step(&mut self, v: BigUint) -> Result<BigUint> {
        self.steps += 1;
        if self.steps > self.budget.max_steps || v.bits() > self.budget.max_bits {
            return Err(Error::BudgetExceeded { step: self.steps });
        }
        Ok(v)
    }

    fn unary(&mut self, n: usize, x: &BigUint) -> Result<BigUint> {
        match n {
            1 => self.step(x * x + 2u32),
            _ => {
                // x applications of E_{n-1} starting from 2
                let times = x.to_u64().ok_or(Error::BudgetExceeded { step: self.steps })?;
                let mut v = self.step(BigUint::from(2u32))?;
                for _ in 0..times {
                    v = self.unary(n - 1, &v)?;
                }
                Ok(v)
            }
        }
    }
}

/// Exact `E_n(args)`; `BudgetExceeded` once a value outgrows `max_bits` or
/// more than `max_steps` values have been produced.
pub fn eval_e(n: usize, args: &[BigUint], budget: GrowthBudget) -> Result<BigUint> {
    let expected = if n == 0 { 2 } else { 1 };
    if args.len() != expected {
        return Err(Error::InvalidArity {
            index: n,
            expected,
            got: args.len(),
        });
    }
    let mut ev = Evaluator { budget, steps: 0 };
    if n == 0 {
        return ev.step(&args[0] + &args[1]);
    }
    ev.unary(n, &args[0])
}

/// An expression tree for large bounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TowerExpr {
    Lit(BigUint),
    Add(Box<TowerExpr>, Box<TowerExpr>),
    Mul(Box<TowerExpr>, Box<TowerExpr>),
    Pow(Box<TowerExpr>, Box<TowerExpr>),
    E(usize, Vec<TowerExpr>),
}

impl TowerExpr {
    pub fn lit(v: u64) -> Self {
        Self::Lit(BigUint::from(v))
    }

    pub fn pow(base: Self, exp: Self) -> Self {
        Self::Pow(Box::new(base), Box::new(exp))
    }

    /// `2^2^...^top` with `height` twos.
    pub fn tower(height: usize, top: Self) -> Self {
        (0..height).fold(top, |acc, _| Self::pow(Self::lit(2), acc))
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Lit(v) if v.is_zero() => Err(Error::Parse("tower literals must be positive".into())),
            Self::Lit(_) => Ok(()),
            Self::Add(a, b) | Self::Mul(a, b) | Self::Pow(a, b) => {
                a.validate()?;
                b.validate()
            }
            Self::E(_, args) => args.iter().try_for_each(|a| a.validate()),
        }
    }

    /// Exact value, if every intermediate fits `budget`.
    pub fn eval(&self, budget: GrowthBudget) -> Result<BigUint> {
        let over = || Error::BudgetExceeded { step: 0 };
        let check = |v: BigUint| if v.bits() > budget.max_bits { Err(over()) } else { Ok(v) };
        match self {
            Self::Lit(v) => check(v.clone()),
            Self::Add(a, b) => check(a.eval(budget)? + b.eval(budget)?),
            Self::Mul(a, b) => check(a.eval(budget)? * b.eval(budget)?),
            Self::Pow(a, b) => {
                let base = a.eval(budget)?;
                let exp = b.eval(budget)?;
                if base <= BigUint::one() {
                    return Ok(base);
                }
                let e = exp.to_u64().ok_or_else(over)?;
                if (base.bits() - 1).saturating_mul(e) >= budget.max_bits {
                    return Err(over());
                }
                check(base.pow(e as u32))
            }
            Self::E(n, args) => {
                let vals = args.iter().map(|a| a.eval(budget)).collect::<Result<Vec<_>>>()?;
                eval_e(*n, &vals, budget)
            }
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Self::Lit(_) | Self::E(..))
    }
}

impl fmt::Display for TowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &TowerExpr, f: &mut fmt::Formatter<'_>| {
            if e.is_atom() {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            Self::Lit(v) => write!(f, "{v}"),
            Self::Add(a, b) => {
                write!(f, "{a}+")?;
                wrap(b, f)
            }
            Self::Mul(a, b) => {
                wrap(a, f)?;
                write!(f, "*")?;
                wrap(b, f)
            }
            Self::Pow(a, b) => {
                wrap(a, f)?;
                write!(f, "^")?;
                wrap(b, f)
            }
            Self::E(n, args) => {
                write!(f, "E{n}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in tower expression", self.pos))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<BigUint> {
        self.peek();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn expr(&mut self) -> Result<TowerExpr> {
        let mut lhs = self.term()?;
        while self.eat(b'+') {
            lhs = TowerExpr::Add(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<TowerExpr> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = TowerExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<TowerExpr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(TowerExpr::pow(base, self.factor()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TowerExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(b'E') => {
                self.pos += 1;
                let n = self.number()?.to_usize().ok_or_else(|| self.err("index too large"))?;
                if !self.eat(b'(') {
                    return Err(self.err("expected `(`"));
                }
                let mut args = vec![self.expr()?];
                while self.eat(b',') {
                    args.push(self.expr()?);
                }
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(TowerExpr::E(n, args))
            }
            _ => Ok(TowerExpr::Lit(self.number()?)),
        }
    }
}

impl FromStr for TowerExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        e.validate()?;
        Ok(e)
    }
}

impl Serialize for TowerExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TowerExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A named bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerSource {
    /// `2^(2^(r^(2^(2^(m+9)))))`, the classical bound on `w(r, m)`.
    Gowers { r: u64, m: u64 },
    /// A tower of 24 twos.
    Shelah24,
    Literal(BigUint),
    ECall { n: usize, args: Vec<BigUint> },
    Expr(TowerExpr),
}

impl FromStr for TowerSource {
    type Err = Error;

    /// `shelah24`, `gowers:2,3`, `lit:1446`, `E2(3)`, or any expression.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "shelah24" {
            return Ok(Self::Shelah24);
        }
        let bad = || Error::Parse(format!("tower source {s:?}"));
        if let Some(p) = s.strip_prefix("gowers:") {
            let (r, m) = p.split_once(',').ok_or_else(bad)?;
            let r: u64 = r.trim().parse().map_err(|_| bad())?;
            let m: u64 = m.trim().parse().map_err(|_| bad())?;
            if r == 0 {
                return Err(bad());
            }
            return Ok(Self::Gowers { r, m });
        }
        if let Some(p) = s.strip_prefix("lit:") {
            let v: BigUint = p.trim().parse().map_err(|_| bad())?;
            if v.is_zero() {
                return Err(bad());
            }
            return Ok(Self::Literal(v));
        }
        Ok(match s.parse::<TowerExpr>()? {
            TowerExpr::Lit(v) => Self::Literal(v),
            TowerExpr::E(n, args) if args.iter().all(|a| matches!(a, TowerExpr::Lit(_))) => Self::ECall {
                n,
                args: args
                    .into_iter()
                    .map(|a| match a {
                        TowerExpr::Lit(v) => v,
                        _ => unreachable!(),
                    })
                    .collect(),
            },
            e => Self::Expr(e),
        })
    }
}

impl fmt::Display for TowerSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gowers { r, m } => write!(f, "gowers({r},{m})"),
            Self::Shelah24 => write!(f, "shelah24"),
            Self::Literal(v) => write!(f, "{v}"),
            Self::ECall { .. } | Self::Expr(_) => write!(f, "{}", tower_build(self)),
        }
    }
}

/// The expression tree for a named bound.
pub fn tower_build(source: &TowerSource) -> TowerExpr {
    match source {
        TowerSource::Gowers { r, m } => {
            let inner = TowerExpr::tower(2, TowerExpr::lit(m + 9));
            TowerExpr::tower(2, TowerExpr::pow(TowerExpr::lit(*r), inner))
        }
        TowerSource::Shelah24 => TowerExpr::tower(23, TowerExpr::lit(2)),
        TowerSource::Literal(v) => TowerExpr::Lit(v.clone()),
        TowerSource::ECall { n, args } => TowerExpr::E(*n, args.iter().cloned().map(TowerExpr::Lit).collect()),
        TowerSource::Expr(e) => e.clone(),
    }
}

/// `2^2^...^top` with `height` twos, `top >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Tower {
    height: u64,
    top: BigUint,
}

impl Tower {
    fn exact(v: BigUint) -> Self {
        Self { height: 0, top: v }
    }

    /// Folds the top into the exponent above it while it stays small.
    fn normalize(mut self, max_bits: u64) -> Self {
        while self.height > 0 {
            match self.top.to_u64() {
                Some(t) if t < max_bits => {
                    self.top = BigUint::one() << t;
                    self.height -= 1;
                }
                _ => break,
            }
        }
        self
    }

    /// An upper bound on `k * self`.
    fn times(&self, k: &BigUint) -> Self {
        if self.height == 0 {
            Self::exact(&self.top * k)
        } else {
            Self {
                height: self.height,
                top: &self.top + k.bits(),
            }
        }
    }

    /// An upper bound on `self^2`.
    fn square(&self) -> Self {
        match self.height {
            0 => Self::exact(&self.top * &self.top),
            1 => Self {
                height: 1,
                top: &self.top * 2u32,
            },
            h => Self {
                height: h,
                top: &self.top + 1u32,
            },
        }
    }

    fn two_to(&self) -> Self {
        Self {
            height: self.height + 1,
            top: self.top.clone(),
        }
    }
}

/// Sound comparison of two towers, `None` when the rules cannot decide.
fn cmp_tower(a: &Tower, b: &Tower) -> Option<Ordering> {
    match a.height.cmp(&b.height) {
        Ordering::Equal => Some(a.top.cmp(&b.top)),
        // a = T(hb, T(ha-hb, ta)) and T(1, ta) = 2^ta exceeds tb once ta >= bits(tb)
        Ordering::Greater => (a.top >= BigUint::from(b.top.bits())).then_some(Ordering::Greater),
        Ordering::Less => cmp_tower(b, a).map(Ordering::reverse),
    }
}

fn max_tower(a: Tower, b: Tower) -> Option<Tower> {
    Some(match cmp_tower(&a, &b)? {
        Ordering::Less => b,
        _ => a,
    })
}

/// Lower and upper tower bounds on an expression.
fn bounds(e: &TowerExpr, budget: GrowthBudget) -> Option<(Tower, Tower)> {
    if let Ok(v) = e.eval(budget) {
        let t = Tower::exact(v);
        return Some((t.clone(), t));
    }
    let norm = |t: Tower| t.normalize(budget.max_bits);
    let (lo, hi) = match e {
        TowerExpr::Lit(v) => (Tower::exact(v.clone()), Tower::exact(v.clone())),
        TowerExpr::Add(a, b) => {
            let (la, ua) = bounds(a, budget)?;
            let (lb, ub) = bounds(b, budget)?;
            (max_tower(la, lb)?, max_tower(ua, ub)?.times(&BigUint::from(2u32)))
        }
        TowerExpr::Mul(a, b) => {
            let (la, ua) = bounds(a, budget)?;
            let (lb, ub) = bounds(b, budget)?;
            (max_tower(la, lb)?, max_tower(ua, ub)?.square())
        }
        TowerExpr::Pow(a, b) => {
            let TowerExpr::Lit(base) = a.as_ref() else {
                return None;
            };
            if *base < BigUint::from(2u32) {
                return None;
            }
            let (lb, ub) = bounds(b, budget)?;
            // 2^x <= base^x <= 2^(bits(base) * x)
            (lb.two_to(), ub.times(&BigUint::from(base.bits())).two_to())
        }
        TowerExpr::E(..) => return None,
    };
    Some((norm(lo), norm(hi)))
}

/// Compares two expressions: exactly when both evaluate within `budget`,
/// otherwise by tower bounds. Never guesses.
pub fn tower_compare(a: &TowerExpr, b: &TowerExpr, budget: GrowthBudget) -> Result<Ordering> {
    a.validate()?;
    b.validate()?;
    if let (Ok(x), Ok(y)) = (a.eval(budget), b.eval(budget)) {
        return Ok(x.cmp(&y));
    }
    let unknown = || Error::UnknownOrdering(format!("{a} vs {b}"));
    let (la, ua) = bounds(a, budget).ok_or_else(unknown)?;
    let (lb, ub) = bounds(b, budget).ok_or_else(unknown)?;
    if cmp_tower(&la, &ub) == Some(Ordering::Greater) {
        return Ok(Ordering::Greater);
    }
    if cmp_tower(&ua, &lb) == Some(Ordering::Less) {
        return Ok(Ordering::Less);
    }
    if la == ua && lb == ub && la == lb {
        return Ok(Ordering::Equal);
    }
    Err(unknown())
}

pub fn ordering_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}
