//! Exact multivariate polynomials over the rationals in a small fixed
//! alphabet of named parameters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::SymbolicError;

/// Parameter names. The derived order is the canonical variable order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Expansion coefficient `a_k`.
    Coef(u8),
    /// `λ` of the auxiliary equation.
    Lambda,
    /// `μ` of the auxiliary equation.
    Mu,
    /// Dispersion coefficient `b`.
    Dispersion,
    /// `c^α`, the fractional power of the wave speed.
    CAlpha,
    /// Integration constant of the reduced ODE.
    Constant,
    /// `s` with `s² = 6b`.
    Sqrt6b,
    /// Opaque `λ^α`; only appears in the quoted erratum for the mKdV speed.
    LambdaPowAlpha,
}

impl Symbol {
    /// Symbols that the coefficient system solves for.
    pub fn is_unknown(self) -> bool {
        matches!(self, Symbol::Coef(_) | Symbol::CAlpha | Symbol::Constant)
    }

    pub fn name(self) -> String {
        match self {
            Symbol::Coef(k) => format!("a{k}"),
            Symbol::Lambda => "lambda".into(),
            Symbol::Mu => "mu".into(),
            Symbol::Dispersion => "b".into(),
            Symbol::CAlpha => "c_alpha".into(),
            Symbol::Constant => "C1".into(),
            Symbol::Sqrt6b => "s".into(),
            Symbol::LambdaPowAlpha => "lambda_pow_alpha".into(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Symbol {
    type Err = SymbolicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "lambda" => Symbol::Lambda,
            "mu" => Symbol::Mu,
            "b" => Symbol::Dispersion,
            "c_alpha" => Symbol::CAlpha,
            "C1" | "c1" => Symbol::Constant,
            "s" => Symbol::Sqrt6b,
            "lambda_pow_alpha" => Symbol::LambdaPowAlpha,
            other => match other.strip_prefix('a').and_then(|k| k.parse::<u8>().ok()) {
                Some(k) => Symbol::Coef(k),
                None => return Err(SymbolicError::UnknownSymbol(other.to_string())),
            },
        })
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// Product of symbol powers, sorted by symbol with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(symbol: Symbol) -> Self {
        Monomial(vec![(symbol, 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (Symbol, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in powers {
            *map.entry(s).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, symbol: Symbol) -> u32 {
        self.0.iter().find(|(s, _)| *s == symbol).map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// The monomial with `symbol` removed, and the exponent it had.
    fn split_off(&self, symbol: Symbol) -> (Monomial, u32) {
        let e = self.degree_in(symbol);
        let rest = self.0.iter().copied().filter(|(s, _)| *s != symbol).collect();
        (Monomial(rest), e)
    }

    fn with_power(&self, symbol: Symbol, exponent: u32) -> Monomial {
        let (rest, _) = self.split_off(symbol);
        rest.mul(&Monomial::from_powers([(symbol, exponent)]))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical multivariate polynomial with exact rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by monomial and zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamExpr {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ParamExpr {
    pub fn zero() -> Self {
        ParamExpr::default()
    }

    pub fn one() -> Self {
        ParamExpr::constant(BigRational::one())
    }

    pub fn constant(value: BigRational) -> Self {
        ParamExpr::term(value, Monomial::one())
    }

    pub fn int(value: i64) -> Self {
        ParamExpr::constant(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        ParamExpr::constant(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn symbol(symbol: Symbol) -> Self {
        ParamExpr::term(BigRational::one(), Monomial::var(symbol))
    }

    pub fn term(coefficient: BigRational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        ParamExpr { terms }
    }

    /// Exact conversion of a finite double (every double is a dyadic rational).
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(ParamExpr::constant)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the expression has no symbols.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// `Some(sym)` if the expression is exactly one bare symbol.
    pub fn as_symbol(&self) -> Option<Symbol> {
        let (m, c) = self.terms.iter().next()?;
        if self.terms.len() == 1 && c.is_one() && m.powers().len() == 1 && m.powers()[0].1 == 1 {
            Some(m.powers()[0].0)
        } else {
            None
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|&(s, _)| s))
            .collect()
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &BigRational) -> ParamExpr {
        if factor.is_zero() {
            return ParamExpr::zero();
        }
        ParamExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> ParamExpr {
        let mut acc = ParamExpr::one();
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution of symbols by expressions. Unmapped symbols
    /// are kept.
    pub fn substitute(&self, map: &BTreeMap<Symbol, ParamExpr>) -> ParamExpr {
        let mut out = ParamExpr::zero();
        for (m, c) in &self.terms {
            let mut product = ParamExpr::constant(c.clone());
            for &(s, e) in m.powers() {
                let factor = match map.get(&s) {
                    Some(replacement) => replacement.pow(e),
                    None => ParamExpr::term(BigRational::one(), Monomial::from_powers([(s, e)])),
                };
                product = &product * &factor;
            }
            out = out + product;
        }
        out
    }

    pub fn partial(&self, symbol: Symbol) -> ParamExpr {
        let mut out = ParamExpr::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(symbol);
            if e > 0 {
                let coefficient = c * BigRational::from_integer(BigInt::from(e));
                out.add_term(m.with_power(symbol, e - 1), coefficient);
            }
        }
        out
    }

    /// Numeric evaluation; fails on the first symbol `lookup` cannot bind.
    pub fn eval<F>(&self, lookup: F) -> Result<f64, SymbolicError>
    where
        F: Fn(Symbol) -> Option<f64>,
    {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut value = c.to_f64().unwrap_or(f64::NAN);
            for &(s, e) in m.powers() {
                let x = lookup(s).ok_or(SymbolicError::Unbound(s))?;
                value *= x.powi(e as i32);
            }
            total += value;
        }
        Ok(total)
    }

    pub fn eval_map(&self, values: &BTreeMap<Symbol, f64>) -> Result<f64, SymbolicError> {
        self.eval(|s| values.get(&s).copied())
    }

    /// Apply rewrite relations to a fixpoint.
    pub fn reduce(&self, relations: &Relations) -> ParamExpr {
        if relations.is_empty() {
            return self.clone();
        }
        let mut current = self.clone();
        loop {
            let next = relations.rewrite_once(&current);
            if next == current {
                return current;
            }
            current = next;
        }
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for ParamExpr {
    type Output = ParamExpr;
    fn add(mut self, rhs: ParamExpr) -> ParamExpr {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add for &ParamExpr {
    type Output = ParamExpr;
    fn add(self, rhs: &ParamExpr) -> ParamExpr {
        self.clone() + rhs.clone()
    }
}

impl Neg for ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        ParamExpr {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        -self.clone()
    }
}

impl Sub for ParamExpr {
    type Output = ParamExpr;
    fn sub(self, rhs: ParamExpr) -> ParamExpr {
        self + (-rhs)
    }
}

impl Sub for &ParamExpr {
    type Output = ParamExpr;
    fn sub(self, rhs: &ParamExpr) -> ParamExpr {
        self.clone() - rhs.clone()
    }
}

impl Mul for &ParamExpr {
    type Output = ParamExpr;
    fn mul(self, rhs: &ParamExpr) -> ParamExpr {
        let mut out = ParamExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ParamExpr {
    type Output = ParamExpr;
    fn mul(self, rhs: ParamExpr) -> ParamExpr {
        &self * &rhs
    }
}

macro_rules! mixed_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<&ParamExpr> for ParamExpr {
            type Output = ParamExpr;
            fn $method(self, rhs: &ParamExpr) -> ParamExpr {
                $trait::$method(&self, rhs)
            }
        }

        impl $trait<ParamExpr> for &ParamExpr {
            type Output = ParamExpr;
            fn $method(self, rhs: ParamExpr) -> ParamExpr {
                $trait::$method(self, &rhs)
            }
        }
    )*};
}

mixed_ops!(Add add, Sub sub, Mul mul);

impl From<Symbol> for ParamExpr {
    fn from(symbol: Symbol) -> Self {
        ParamExpr::symbol(symbol)
    }
}

impl From<BigRational> for ParamExpr {
    fn from(value: BigRational) -> Self {
        ParamExpr::constant(value)
    }
}

/// One rewrite `symbol^power → replacement`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewrite {
    pub symbol: Symbol,
    pub power: u32,
    pub replacement: ParamExpr,
}

/// A rewrite system applied during normalization. Every replacement must be
/// free of its own symbol, which makes the system terminating; the rules in
/// use here involve disjoint symbols, so it is also confluent.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Relations {
    rules: Vec<Rewrite>,
}

impl Relations {
    pub fn new() -> Self {
        Relations::default()
    }

    /// `s² → 6b` with `b` given as an expression.
    pub fn sqrt_six_b(b: &ParamExpr) -> Self {
        let mut r = Relations::new();
        r.push(Symbol::Sqrt6b, 2, b.scale(&BigRational::from_integer(6.into())));
        r
    }

    pub fn push(&mut self, symbol: Symbol, power: u32, replacement: ParamExpr) {
        assert!(power >= 1, "rewrite power must be positive");
        assert!(
            !replacement.symbols().contains(&symbol),
            "rewrite for {symbol} must not mention {symbol}"
        );
        self.rules.push(Rewrite {
            symbol,
            power,
            replacement,
        });
    }

    pub fn rules(&self) -> &[Rewrite] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn merge(&mut self, other: &Relations) {
        for rule in &other.rules {
            if !self.rules.contains(rule) {
                self.rules.push(rule.clone());
            }
        }
    }

    fn rewrite_once(&self, expr: &ParamExpr) -> ParamExpr {
        let mut out = ParamExpr::zero();
        for (m, c) in expr.terms() {
            let mut piece = ParamExpr::term(c.clone(), m.clone());
            for rule in &self.rules {
                let mut next = ParamExpr::zero();
                for (pm, pc) in piece.terms() {
                    let (rest, e) = pm.split_off(rule.symbol);
                    if e >= rule.power {
                        let kept = rest.mul(&Monomial::from_powers([(rule.symbol, e % rule.power)]));
                        let replaced = rule.replacement.pow(e / rule.power);
                        next = next + &ParamExpr::term(pc.clone(), kept) * &replaced;
                    } else {
                        next = next + ParamExpr::term(pc.clone(), pm.clone());
                    }
                }
                piece = next;
            }
            out = out + piece;
        }
        out
    }

    /// Numeric value for each rewritten symbol not already bound, taking the
    /// positive root of `symbol^power = replacement`.
    pub fn derive_values(&self, values: &mut BTreeMap<Symbol, f64>) -> Result<(), SymbolicError> {
        for rule in &self.rules {
            if values.contains_key(&rule.symbol) {
                continue;
            }
            let rhs = rule.replacement.eval_map(values)?;
            let root = if rule.power % 2 == 0 {
                if rhs < 0.0 {
                    return Err(SymbolicError::Reality(format!("{rhs}")));
                }
                rhs.powf(1.0 / rule.power as f64)
            } else {
                rhs.signum() * rhs.abs().powf(1.0 / rule.power as f64)
            };
            values.insert(rule.symbol, root);
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// serialization

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    #[serde(default)]
    powers: BTreeMap<Symbol, u32>,
}

#[derive(Serialize, Deserialize)]
struct ExprRepr {
    #[serde(default, skip_deserializing)]
    text: String,
    terms: Vec<TermRepr>,
}

impl Serialize for ParamExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = ExprRepr {
            text: self.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    coeff: c.to_string(),
                    powers: m.powers().iter().copied().collect(),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ExprRepr::deserialize(deserializer)?;
        let mut out = ParamExpr::zero();
        for t in repr.terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            out.add_term(Monomial::from_powers(t.powers), c);
        }
        Ok(out)
    }
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parse an integer, decimal (`-1.25`, `3e-2`) or fraction (`7/3`) exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, SymbolicError> {
    let err = || SymbolicError::Parse(text.to_string());
    let trimmed = text.trim();
    if let Some((n, d)) = trimmed.split_once('/') {
        let n = parse_decimal(n.trim()).ok_or_else(err)?;
        let d = parse_decimal(d.trim()).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(n / d);
    }
    parse_decimal(trimmed).ok_or_else(err)
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}
