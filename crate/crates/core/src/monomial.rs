//! Monomials and monomial ideals of `k[x_1, ..., x_m]` localized at the
//! homogeneous maximal ideal.
//!
//! Every ideal in this crate is a monomial ideal, so membership is a
//! divisibility test against the minimal generators and every finite length
//! is a count of monomials. Localization does not change any of these counts:
//! all associated primes of monomial quotients are monomial primes inside the
//! maximal ideal.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of ring variables.
pub const MAX_VARS: usize = 8;

/// The ambient ring `A = k[x_1..x_m]_(x_1..x_m)`, identified by `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingContext {
    num_vars: usize,
}

impl RingContext {
    pub fn new(num_vars: usize) -> Result<Self> {
        if num_vars == 0 || num_vars > MAX_VARS {
            return Err(Error::UnsupportedVariableCount(num_vars));
        }
        Ok(Self { num_vars })
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.num_vars)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.num_vars, i)
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        Monomial::new(self.num_vars, exps)
    }

    pub fn ideal<I: IntoIterator<Item = Monomial>>(&self, gens: I) -> MonomialIdeal {
        MonomialIdeal::new(*self, gens)
    }

    /// The maximal ideal `(x_1, ..., x_m)`.
    pub fn maximal_ideal(&self) -> MonomialIdeal {
        self.ideal((0..self.num_vars).map(|i| self.var(i)))
    }

    pub fn check(&self, other: &RingContext) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::ContextMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }
}

/// Krull dimension, with `-∞` for the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dimension {
    NegInfinity,
    Finite(usize),
}

impl Dimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Dimension::NegInfinity => None,
            Dimension::Finite(d) => Some(*d),
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, Dimension::NegInfinity)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::NegInfinity => write!(f, "-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Length of a module: a monomial count, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

/// A monomial `x^a`, stored inline.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    pub fn new(nvars: usize, exps: &[u32]) -> Result<Self> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::UnsupportedVariableCount(nvars));
        }
        if exps.len() != nvars {
            return Err(Error::ExponentLength {
                expected: nvars,
                got: exps.len(),
            });
        }
        let mut out = Self::one(nvars);
        for (slot, &e) in out.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent exceeds u16 range");
        }
        out.degree = exps.iter().sum();
        Ok(out)
    }

    pub fn one(nvars: usize) -> Self {
        debug_assert!(nvars <= MAX_VARS);
        Self {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u32 {
        self.support().fold(0, |acc, i| acc | (1 << i))
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps[..self.nvars as usize]
                .iter()
                .zip(&other.exps[..self.nvars as usize])
                .all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] += other.exps[i];
        }
        out.degree += other.degree;
        out
    }

    /// `self / other`, assuming `other | self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] -= other.exps[i];
        }
        out.degree -= other.degree;
        out
    }

    /// Exponent-wise `max(self - other, 0)`: the generator of `(self) : other`.
    pub fn quotient_part(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            out.exps[i] = self.exps[i].saturating_sub(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.degree = deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.degree = deg;
        out
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let mut out = *self;
        for i in 0..self.nvars as usize {
            out.exps[i] *= n as u16;
        }
        out.degree *= n;
        out
    }

    /// Drop every variable in `mask` (set its exponent to zero).
    pub fn strip(&self, mask: u32) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            if mask & (1 << i) != 0 {
                out.exps[i] = 0;
            }
            deg += out.exps[i] as u32;
        }
        out.degree = deg;
        out
    }

    /// Componentwise `self >= other` on raw exponent vectors.
    pub fn dominates(&self, other: &[u32]) -> bool {
        self.exponents().iter().zip(other).all(|(&a, &b)| a as u32 >= b)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.exponents().iter().map(|&e| e as u32).collect()
    }

    /// Render with the given variable names, e.g. `x1^2*x3`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }

    /// Render using default names `x1..xm`.
    pub fn to_default_string(&self) -> String {
        self.render(&default_names(self.num_vars()))
    }
}

pub fn default_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.exps.hash(state);
    }
}

/// Graded lexicographic order with `x_1 > x_2 > ... > x_m`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_default_string())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_default_string())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Monomial::new(v.len(), &v).map_err(serde::de::Error::custom)
    }
}

/// A monomial ideal, stored by its minimal generators in ascending
/// graded-lexicographic order. The zero ideal has no generators, the unit
/// ideal has the single generator `1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    ctx: RingContext,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new<I: IntoIterator<Item = Monomial>>(ctx: RingContext, gens: I) -> Self {
        let gens = minimalize(gens.into_iter().collect());
        debug_assert!(gens.iter().all(|g| g.num_vars() == ctx.num_vars()));
        Self { ctx, gens }
    }

    pub fn zero(ctx: RingContext) -> Self {
        Self { ctx, gens: Vec::new() }
    }

    pub fn unit(ctx: RingContext) -> Self {
        Self {
            ctx,
            gens: vec![ctx.one()],
        }
    }

    pub fn principal(ctx: RingContext, u: Monomial) -> Self {
        Self { ctx, gens: vec![u] }
    }

    #[inline]
    pub fn ctx(&self) -> RingContext {
        self.ctx
    }

    #[inline]
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens
            .iter()
            .take_while(|g| g.degree() <= u.degree())
            .any(|g| g.divides(u))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// First generator of `self` outside `other`, if any.
    pub fn first_outside(&self, other: &MonomialIdeal) -> Option<Monomial> {
        self.gens.iter().find(|g| !other.contains(g)).copied()
    }

    pub fn add(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut all = self.gens.clone();
        all.extend_from_slice(&other.gens);
        Self::new(self.ctx, all)
    }

    pub fn add_monomials(&self, elems: &[Monomial]) -> MonomialIdeal {
        let mut all = self.gens.clone();
        all.extend_from_slice(elems);
        Self::new(self.ctx, all)
    }

    pub fn mul(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul(b));
            }
        }
        Self::new(self.ctx, out)
    }

    pub fn mul_monomial(&self, u: &Monomial) -> MonomialIdeal {
        // multiplying by a monomial preserves minimality and order
        Self {
            ctx: self.ctx,
            gens: self.gens.iter().map(|g| g.mul(u)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MonomialIdeal {
        let mut acc = Self::unit(self.ctx);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.lcm(b));
            }
        }
        Self::new(self.ctx, out)
    }

    /// `self : u`.
    pub fn colon_monomial(&self, u: &Monomial) -> MonomialIdeal {
        Self::new(self.ctx, self.gens.iter().map(|g| g.quotient_part(u)))
    }

    /// `self : other`, the intersection of the colons by each generator.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut acc = Self::unit(self.ctx);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_monomial(g));
            if acc == *self {
                break;
            }
        }
        acc
    }

    /// `self : other^∞`, as the stable value of the colon chain.
    pub fn saturate(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Whether the ideal contains a pure power of every variable.
    pub fn is_m_primary(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    /// Smallest `a_i` with `x_i^{a_i}` in the ideal, for every `i`.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let m = self.ctx.num_vars();
        let mut bounds = vec![None::<u32>; m];
        for g in &self.gens {
            let mut supp = g.support();
            match (supp.next(), supp.next()) {
                (None, _) => return Some(vec![0; m]),
                (Some(i), None) => {
                    let e = g.exponent(i);
                    bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
                }
                _ => {}
            }
        }
        bounds.into_iter().collect()
    }

    /// Minimal primes, each given as a bitmask of variables. The unit ideal
    /// has none; the zero ideal has the single prime `0` (empty mask).
    pub fn minimal_primes(&self) -> Vec<u32> {
        if self.is_unit() {
            return Vec::new();
        }
        let m = self.ctx.num_vars();
        let supports: Vec<u32> = self.gens.iter().map(Monomial::support_mask).collect();
        let mut covers: Vec<u32> = (0u32..(1 << m))
            .filter(|s| supports.iter().all(|g| g & s != 0))
            .collect();
        covers.sort_by_key(|s| (s.count_ones(), *s));
        let mut minimal: Vec<u32> = Vec::new();
        for s in covers {
            if !minimal.iter().any(|p| p & s == *p) {
                minimal.push(s);
            }
        }
        minimal
    }

    /// `dim A / self`.
    pub fn quotient_dim(&self) -> Dimension {
        if self.is_unit() {
            return Dimension::NegInfinity;
        }
        let m = self.ctx.num_vars();
        let supports: Vec<u32> = self.gens.iter().map(Monomial::support_mask).collect();
        let cover = (0u32..(1 << m))
            .filter(|s| supports.iter().all(|g| g & s != 0))
            .map(u32::count_ones)
            .min()
            .expect("full variable set always covers a proper ideal");
        Dimension::Finite(m - cover as usize)
    }

    /// Whether the ideal is contained in the monomial prime given by `mask`.
    pub fn inside_prime(&self, mask: u32) -> bool {
        self.gens.iter().all(|g| g.support_mask() & mask != 0)
    }

    /// Monomials outside the ideal, in graded-lexicographic order. `None`
    /// when the ideal is not m-primary (infinitely many).
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        self.pure_power_bounds()?;
        let m = self.ctx.num_vars();
        let mut out = Vec::new();
        let mut cur = self.ctx.one();
        self.dfs_standard(0, m, &mut cur, &mut out);
        out.sort();
        Some(out)
    }

    fn dfs_standard(&self, var: usize, m: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if var == m {
            out.push(*cur);
            return;
        }
        let saved = *cur;
        loop {
            if self.contains(cur) {
                break;
            }
            self.dfs_standard(var + 1, m, cur, out);
            cur.exps[var] += 1;
            cur.degree += 1;
        }
        *cur = saved;
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.render(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.ctx.num_vars())))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sort, deduplicate and drop every monomial divisible by another one.
pub fn minimalize(mut cands: Vec<Monomial>) -> Vec<Monomial> {
    cands.sort_unstable();
    cands.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(cands.len());
    for c in cands {
        // only strictly lower degrees can properly divide
        let redundant = kept
            .iter()
            .take_while(|g| g.degree() < c.degree())
            .any(|g| g.divides(&c));
        if !redundant {
            kept.push(c);
        }
    }
    kept
}

/// Checked product `a · b`.
pub fn ideal_product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.ctx.check(&b.ctx)?;
    Ok(a.mul(b))
}

pub fn ideal_power(a: &MonomialIdeal, n: u32) -> MonomialIdeal {
    a.pow(n)
}

/// Checked intersection `a ∩ b`.
pub fn ideal_intersection(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.ctx.check(&b.ctx)?;
    Ok(a.intersect(b))
}

pub fn colon_by_monomial(q: &MonomialIdeal, u: &Monomial) -> MonomialIdeal {
    q.colon_monomial(u)
}

pub fn saturation(q: &MonomialIdeal, i: &MonomialIdeal) -> MonomialIdeal {
    q.saturate(i)
}

/// Number of monomials in `top + q` that are not in `bottom + q`.
///
/// Finiteness is decided exactly: the count is finite iff for every minimal
/// generator `g` of `top + q` the colon `(bottom + q) : g` contains a pure
/// power of every variable.
pub fn graded_quotient_length(top: &MonomialIdeal, bottom: &MonomialIdeal, q: &MonomialIdeal) -> Length {
    let upper = top.add(q);
    let lower = bottom.add(q);
    let mut total = 0u64;
    for (i, g) in upper.gens().iter().enumerate() {
        if lower.contains(g) {
            continue;
        }
        let Some(std) = lower.colon_monomial(g).standard_monomials() else {
            return Length::Infinite;
        };
        let earlier = &upper.gens()[..i];
        total += std
            .iter()
            .map(|v| g.mul(v))
            .filter(|u| !earlier.iter().any(|h| h.divides(u)))
            .count() as u64;
    }
    Length::Finite(total)
}

/// Count of monomials in `upper` not in `lower`, given an m-primary `hint`
/// with `hint · upper ⊆ lower`. Every counted monomial has the form `g·v`
/// with `g` a generator of `upper` and `v` standard for `hint`.
pub(crate) fn count_difference_with_hint(
    upper: &MonomialIdeal,
    lower: &MonomialIdeal,
    hint_standard: &[Monomial],
) -> u64 {
    let mut total = 0u64;
    for (i, g) in upper.gens().iter().enumerate() {
        let earlier = &upper.gens()[..i];
        for v in hint_standard {
            let u = g.mul(v);
            if !lower.contains(&u) && !earlier.iter().any(|h| h.divides(&u)) {
                total += 1;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize) -> RingContext {
        RingContext::new(m).unwrap()
    }

    fn mono(c: RingContext, e: &[u32]) -> Monomial {
        c.monomial(e).unwrap()
    }

    #[test]
    fn product_examples() {
        let c = ctx(2);
        let a = c.ideal([c.var(0)]);
        let b = c.ideal([c.var(1)]);
        assert_eq!(ideal_product(&a, &b).unwrap().gens(), &[mono(c, &[1, 1])]);
        let m = c.maximal_ideal();
        let sq = ideal_product(&m, &m).unwrap();
        assert_eq!(sq, c.ideal([mono(c, &[2, 0]), mono(c, &[1, 1]), mono(c, &[0, 2])]));

        let c3 = ctx(3);
        let i1 = c3.maximal_ideal();
        let i2 = c3.ideal([c3.var(2)]);
        let p = ideal_product(&i1, &i2).unwrap();
        assert_eq!(
            p,
            c3.ideal([mono(c3, &[1, 0, 1]), mono(c3, &[0, 1, 1]), mono(c3, &[0, 0, 2])])
        );
        assert!(ideal_product(&i1, &m).is_err());
    }

    #[test]
    fn power_examples() {
        let c = ctx(2);
        assert!(ideal_power(&c.maximal_ideal(), 0).is_unit());
        let c1 = ctx(1);
        assert_eq!(ideal_power(&c1.maximal_ideal(), 3).gens(), &[mono(c1, &[3])]);
        assert_eq!(ideal_power(&c.maximal_ideal(), 2).gens().len(), 3);
    }

    #[test]
    fn colon_examples() {
        let c = ctx(3);
        let q = c.ideal([mono(c, &[1, 1, 0])]);
        assert_eq!(colon_by_monomial(&q, &c.var(0)), c.ideal([c.var(1)]));
        let q = c.ideal([mono(c, &[2, 0, 0]), c.var(1)]);
        assert_eq!(colon_by_monomial(&q, &c.var(0)), c.ideal([c.var(0), c.var(1)]));
        let q = c.ideal([c.var(2)]);
        assert!(colon_by_monomial(&q, &c.var(2)).is_unit());
    }

    #[test]
    fn saturation_examples() {
        let c = ctx(2);
        let q = c.ideal([mono(c, &[2, 1])]);
        assert_eq!(saturation(&q, &c.ideal([c.var(0)])), c.ideal([c.var(1)]));
        assert_eq!(saturation(&q, &MonomialIdeal::unit(c)), q);

        let c4 = ctx(4);
        let q = c4.ideal([c4.var(2)]);
        let i = c4.ideal([
            mono(c4, &[1, 0, 1, 0]),
            mono(c4, &[0, 1, 1, 0]),
            mono(c4, &[0, 0, 2, 0]),
        ]);
        assert!(saturation(&q, &i).is_unit());
    }

    #[test]
    fn dim_examples() {
        let c4 = ctx(4);
        assert_eq!(MonomialIdeal::zero(c4).quotient_dim(), Dimension::Finite(4));
        assert_eq!(c4.ideal([c4.var(2)]).quotient_dim(), Dimension::Finite(3));
        assert_eq!(MonomialIdeal::unit(c4).quotient_dim(), Dimension::NegInfinity);
        let c2 = ctx(2);
        assert_eq!(c2.ideal([mono(c2, &[1, 1])]).quotient_dim(), Dimension::Finite(1));
    }

    #[test]
    fn length_examples() {
        let c = ctx(2);
        let unit = MonomialIdeal::unit(c);
        let zero = MonomialIdeal::zero(c);
        assert_eq!(
            graded_quotient_length(&unit, &c.maximal_ideal(), &zero),
            Length::Finite(1)
        );
        let b = c.ideal([mono(c, &[2, 0]), c.var(1)]);
        assert_eq!(graded_quotient_length(&unit, &b, &zero), Length::Finite(2));
        let c1 = ctx(1);
        assert_eq!(
            graded_quotient_length(&c1.maximal_ideal(), &MonomialIdeal::zero(c1), &MonomialIdeal::zero(c1)),
            Length::Infinite
        );
    }

    #[test]
    fn intersection_examples() {
        let c = ctx(2);
        let a = c.ideal([c.var(0)]);
        let b = c.ideal([c.var(1)]);
        assert_eq!(ideal_intersection(&a, &b).unwrap().gens(), &[mono(c, &[1, 1])]);
        let a = c.ideal([mono(c, &[2, 0])]);
        let b = c.ideal([c.var(0)]);
        assert_eq!(ideal_intersection(&a, &b).unwrap(), a);
        let a = c.maximal_ideal();
        let b = c.ideal([mono(c, &[1, 1])]);
        assert_eq!(ideal_intersection(&a, &b).unwrap(), b);
    }

    #[test]
    fn zero_and_unit_conventions() {
        let c = ctx(3);
        assert!(MonomialIdeal::zero(c).is_zero());
        assert!(c.ideal([c.one(), c.var(0)]).is_unit());
        assert_eq!(c.ideal([c.one(), c.var(0)]).gens().len(), 1);
    }

    #[test]
    fn minimal_primes_of_edge_ideal() {
        let c = ctx(3);
        // (x1x2, x2x3): minimal primes (x2), (x1,x3)
        let q = c.ideal([mono(c, &[1, 1, 0]), mono(c, &[0, 1, 1])]);
        let mut p = q.minimal_primes();
        p.sort();
        assert_eq!(p, vec![0b010, 0b101]);
        assert_eq!(MonomialIdeal::zero(c).minimal_primes(), vec![0]);
    }

    #[test]
    fn standard_monomials_are_graded_lex_sorted() {
        let c = ctx(2);
        let q = c.ideal([mono(c, &[2, 0]), mono(c, &[1, 1]), mono(c, &[0, 3])]);
        let std = q.standard_monomials().unwrap();
        let shown: Vec<String> = std.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "x2", "x1", "x2^2"]);
        assert!(c.ideal([c.var(0)]).standard_monomials().is_none());
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let c = ctx(3);
        let a = mono(c, &[0, 0, 2]);
        let b = mono(c, &[1, 0, 0]);
        assert!(b < a);
        assert!(mono(c, &[1, 1, 0]) > mono(c, &[1, 0, 1]));
    }
}
