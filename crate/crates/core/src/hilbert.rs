//! Multigraded Hilbert functions of an ideal family, exact interpolation of
//! their polynomials in the binomial basis, difference operators and mixed
//! multiplicities of maximal degrees.
//!
//! For a family `(J; I_1, ..., I_d; M)` two functions are evaluated:
//!
//! * `P(n0, n) = ℓ(J^{n0} 𝕀^n M / J^{n0+1} 𝕀^n M)`
//! * `F(n0, n) = ℓ(𝕀^n M / J^{n0} 𝕀^n M)`
//!
//! with `𝕀^n = I_1^{n_1} ⋯ I_d^{n_d}`. Both are polynomial for large
//! arguments. Polynomials are stored by their coefficients `e(k0, k)` on the
//! basis `C(n0 + k0, k0) ∏ C(n_i + k_i, k_i)`; the coefficients of `P` are the
//! mixed multiplicities `e(J^[k0+1], 𝕀^[k]; M)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::QuotientModule;
use crate::monomial::{
    count_difference_with_hint, graded_quotient_length, Dimension, Length, Monomial, MonomialIdeal, RingContext,
};

/// `J` together with `I_1, ..., I_d` and the module `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealFamily {
    j: MonomialIdeal,
    ideals: Vec<MonomialIdeal>,
    module: QuotientModule,
}

impl IdealFamily {
    pub fn new(j: MonomialIdeal, ideals: Vec<MonomialIdeal>, module: QuotientModule) -> Result<Self> {
        let ctx = module.ctx();
        ctx.check(&j.ctx())?;
        for i in &ideals {
            ctx.check(&i.ctx())?;
        }
        if ideals.is_empty() {
            return Err(Error::NoIdeals);
        }
        if !j.is_m_primary() {
            return Err(Error::JNotPrimary);
        }
        Ok(Self { j, ideals, module })
    }

    pub fn ctx(&self) -> RingContext {
        self.module.ctx()
    }

    pub fn j(&self) -> &MonomialIdeal {
        &self.j
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> Result<&MonomialIdeal> {
        self.ideals.get(i).ok_or(Error::IdealIndex(i))
    }

    pub fn module(&self) -> &QuotientModule {
        &self.module
    }

    /// Number of ideals `d`.
    pub fn d(&self) -> usize {
        self.ideals.len()
    }

    /// `I = I_1 ⋯ I_d`.
    pub fn product_ideal(&self) -> MonomialIdeal {
        self.ideals
            .iter()
            .fold(MonomialIdeal::unit(self.ctx()), |acc, i| acc.mul(i))
    }

    /// The same ideals acting on another module.
    pub fn with_module(&self, module: QuotientModule) -> IdealFamily {
        IdealFamily {
            j: self.j.clone(),
            ideals: self.ideals.clone(),
            module,
        }
    }

    /// `M̄ = M / 0_M : I^∞`.
    pub fn saturated_module(&self) -> QuotientModule {
        self.module.saturated(&self.product_ideal())
    }

    /// `q = dim M̄`.
    pub fn saturated_dim(&self) -> Dimension {
        self.saturated_module().dim()
    }

    pub fn max_degree(&self) -> u32 {
        self.ideals
            .iter()
            .map(MonomialIdeal::max_degree)
            .chain([self.j.max_degree(), self.module.max_degree()])
            .max()
            .unwrap_or(0)
    }

    pub fn all_ideals_m_primary(&self) -> bool {
        self.ideals.iter().all(MonomialIdeal::is_m_primary)
    }
}

/// A multidegree `(n0, n_1, ..., n_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub n0: usize,
    pub n: Vec<usize>,
}

impl MultiDegree {
    pub fn new(n0: usize, n: Vec<usize>) -> Self {
        Self { n0, n }
    }

    pub fn diagonal(value: usize, d: usize) -> Self {
        Self {
            n0: value,
            n: vec![value; d],
        }
    }

    fn from_axes(axes: &[usize]) -> Self {
        Self {
            n0: axes[0],
            n: axes[1..].to_vec(),
        }
    }

    pub fn axes(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.n.len() + 1);
        v.push(self.n0);
        v.extend_from_slice(&self.n);
        v
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{:?})", self.n0, self.n)
    }
}

/// The index `(k0, k)` of a mixed multiplicity `e(J^[k0+1], 𝕀^[k]; M)`,
/// displayed as `(k0 + 1, k)`, the number of `J`-elements first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedType {
    pub k0: usize,
    pub k: Vec<usize>,
}

impl MixedType {
    pub fn new(k0: usize, k: Vec<usize>) -> Self {
        Self { k0, k }
    }

    /// Build from the number of `J`-elements `k0 + 1` and `k`.
    pub fn from_j_count(j_count: usize, k: Vec<usize>) -> Result<Self> {
        if j_count == 0 {
            return Err(Error::EmptyJPart);
        }
        Ok(Self { k0: j_count - 1, k })
    }

    pub fn j_count(&self) -> usize {
        self.k0 + 1
    }

    pub fn total(&self) -> usize {
        self.k0 + self.k.iter().sum::<usize>()
    }

    pub fn axes(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.k.len() + 1);
        v.push(self.k0);
        v.extend_from_slice(&self.k);
        v
    }

    /// `k - e_i`, if `k_i > 0`.
    pub fn lowered(&self, i: usize) -> Option<MixedType> {
        if *self.k.get(i)? == 0 {
            return None;
        }
        let mut k = self.k.clone();
        k[i] -= 1;
        Some(MixedType { k0: self.k0, k })
    }

    fn check_arity(&self, d: usize) -> Result<()> {
        if self.k.len() != d {
            return Err(Error::ArityMismatch {
                expected: d,
                got: self.k.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for MixedType {
    /// `(k0+1,(k_1,...,k_d))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.k.iter().map(ToString::to_string).collect();
        write!(f, "({},({}))", self.k0 + 1, k.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    P,
    F,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Which::P => write!(f, "P"),
            Which::F => write!(f, "F"),
        }
    }
}

/// Generalized binomial coefficient `C(x, j)` for any integer `x`.
pub fn binomial(x: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    if x >= 0 && j > x {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(x - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// A polynomial in `(n0, n_1, ..., n_d)` on the basis
/// `C(n0 + k0, k0) ∏ C(n_i + k_i, k_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialBasisPolynomial {
    arity: usize,
    coeffs: BTreeMap<Vec<usize>, BigRational>,
}

impl BinomialBasisPolynomial {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    /// Build from `(index, coefficient)` pairs; zero coefficients are dropped.
    pub fn from_coeffs<I: IntoIterator<Item = (Vec<usize>, BigRational)>>(arity: usize, it: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (idx, c) in it {
            assert_eq!(idx.len(), arity);
            if !c.is_zero() {
                coeffs.insert(idx, c);
            }
        }
        Self { arity, coeffs }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.coeffs
    }

    pub fn coefficient(&self, idx: &[usize]) -> BigRational {
        self.coeffs.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, `None` standing for the degree `-∞` of the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|k| k.iter().sum()).max()
    }

    pub fn evaluate(&self, point: &[i64]) -> BigRational {
        assert_eq!(point.len(), self.arity);
        let mut acc = BigRational::zero();
        for (idx, c) in &self.coeffs {
            let mut basis = BigInt::one();
            for (&n, &k) in point.iter().zip(idx) {
                basis *= binomial(n + k as i64, k as i64);
            }
            acc += c * BigRational::from_integer(basis);
        }
        acc
    }

    /// `Δ^a` with `a = (a0, a_1, ..., a_d)`; along one axis the new
    /// coefficient at `j` is the sum of the old ones at indices above `j`.
    pub fn difference(&self, a: &[usize]) -> BinomialBasisPolynomial {
        assert_eq!(a.len(), self.arity);
        let mut cur = self.clone();
        for (axis, &times) in a.iter().enumerate() {
            for _ in 0..times {
                cur = cur.difference_axis(axis);
            }
        }
        cur
    }

    fn difference_axis(&self, axis: usize) -> BinomialBasisPolynomial {
        let mut out: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
        for (idx, c) in &self.coeffs {
            for j in 0..idx[axis] {
                let mut target = idx.clone();
                target[axis] = j;
                *out.entry(target).or_insert_with(BigRational::zero) += c;
            }
        }
        Self::from_coeffs(self.arity, out)
    }

    /// Whether every coefficient at an index componentwise `>=` `idx` and
    /// different from it vanishes.
    pub fn vanishes_above(&self, idx: &[usize]) -> bool {
        self.coeffs
            .keys()
            .all(|h| h.as_slice() == idx || !h.iter().zip(idx).all(|(a, b)| a >= b))
    }
}

impl fmt::Display for BinomialBasisPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("{c}*B{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Values of `P` or `F` (or a difference of them) on the grid
/// `base + [0, extent_0) × ... × [0, extent_d)`, row-major with axis 0 slowest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub which: Which,
    pub base: MultiDegree,
    pub extent: Vec<usize>,
    /// The `Δ`-index already applied, all zeros for a raw table.
    pub differenced: Vec<usize>,
    pub values: Vec<i64>,
}

impl HilbertTable {
    pub fn arity(&self) -> usize {
        self.extent.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn strides(extent: &[usize]) -> Vec<usize> {
        let mut strides = vec![1; extent.len()];
        for i in (0..extent.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * extent[i + 1];
        }
        strides
    }

    /// Grid offsets in storage order.
    pub fn offsets(extent: &[usize]) -> Vec<Vec<usize>> {
        let total: usize = extent.iter().product();
        let strides = Self::strides(extent);
        (0..total)
            .map(|flat| strides.iter().zip(extent).map(|(s, e)| (flat / s) % e).collect())
            .collect()
    }

    pub fn get(&self, offset: &[usize]) -> i64 {
        let strides = Self::strides(&self.extent);
        let flat: usize = offset.iter().zip(&strides).map(|(o, s)| o * s).sum();
        self.values[flat]
    }

    /// `Δ^a` on the table; each axis shrinks by `a_axis`.
    pub fn difference(&self, a: &[usize]) -> Option<HilbertTable> {
        assert_eq!(a.len(), self.arity());
        let mut cur = self.clone();
        for (axis, &times) in a.iter().enumerate() {
            for _ in 0..times {
                cur = cur.difference_axis(axis)?;
            }
        }
        Some(cur)
    }

    fn difference_axis(&self, axis: usize) -> Option<HilbertTable> {
        if self.extent[axis] < 2 {
            return None;
        }
        let mut extent = self.extent.clone();
        extent[axis] -= 1;
        let values = Self::offsets(&extent)
            .into_iter()
            .map(|off| {
                let mut next = off.clone();
                next[axis] += 1;
                self.get(&next) - self.get(&off)
            })
            .collect();
        let mut differenced = self.differenced.clone();
        differenced[axis] += 1;
        Some(HilbertTable {
            which: self.which,
            base: self.base.clone(),
            extent,
            differenced,
            values,
        })
    }

    /// The common value if the table is constant.
    pub fn constant(&self) -> Option<i64> {
        let first = *self.values.first()?;
        self.values.iter().all(|&v| v == first).then_some(first)
    }
}

/// Stabilization policy for "large enough" arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationPolicy {
    /// Base offset `N`; `None` means `dim M̄ + max generator degree`.
    pub initial_base: Option<usize>,
    /// How many times `N` may double before giving up.
    pub max_doublings: u32,
    /// How many times a containment window may move out before a failure
    /// verdict is final.
    pub containment_doublings: u32,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        Self {
            initial_base: None,
            max_doublings: 6,
            containment_doublings: 1,
        }
    }
}

impl StabilizationPolicy {
    pub fn initial_base_for(&self, fam: &IdealFamily) -> usize {
        self.initial_base.unwrap_or_else(|| {
            let q = fam.saturated_dim().finite().unwrap_or(0);
            (q + fam.max_degree() as usize).max(1)
        })
    }
}

/// Storage hook for Hilbert tables (the CLI plugs its disk cache in here).
pub trait TableStore {
    fn load(&self, key: &str) -> Option<HilbertTable>;
    fn store(&self, key: &str, table: &HilbertTable);
}

/// Canonical cache key of a raw table.
pub fn table_key(fam: &IdealFamily, which: Which, base: &MultiDegree, extent: &[usize]) -> String {
    use sha2::{Digest, Sha256};
    let canon = format!(
        "m={};top={:?};rel={:?};J={:?};I={:?};which={};base={:?};extent={:?}",
        fam.ctx().num_vars(),
        fam.module().top().gens(),
        fam.module().relations().gens(),
        fam.j().gens(),
        fam.ideals().iter().map(|i| i.gens().to_vec()).collect::<Vec<_>>(),
        which,
        base.axes(),
        extent,
    );
    hex::encode(Sha256::digest(canon.as_bytes()))
}

/// Evaluates `P` and `F` of one family, memoizing the pieces
/// `J^{n0} 𝕀^n M + relations`.
pub struct HilbertEvaluator<'a> {
    fam: &'a IdealFamily,
    pieces: HashMap<(usize, Vec<usize>), Rc<MonomialIdeal>>,
    j_power_standard: HashMap<usize, Rc<Vec<Monomial>>>,
}

impl<'a> HilbertEvaluator<'a> {
    pub fn new(fam: &'a IdealFamily) -> Self {
        Self {
            fam,
            pieces: HashMap::new(),
            j_power_standard: HashMap::new(),
        }
    }

    pub fn family(&self) -> &IdealFamily {
        self.fam
    }

    /// Generators of `J^{n0} 𝕀^n · top + relations`.
    pub fn piece(&mut self, n0: usize, n: &[usize]) -> Rc<MonomialIdeal> {
        let key = (n0, n.to_vec());
        if let Some(p) = self.pieces.get(&key) {
            return Rc::clone(p);
        }
        let rel = self.fam.module.relations();
        let ideal = if n0 > 0 {
            let prev = self.piece(n0 - 1, n);
            prev.mul(&self.fam.j).add(rel)
        } else if let Some(i) = n.iter().rposition(|&e| e > 0) {
            let mut lower = n.to_vec();
            lower[i] -= 1;
            let prev = self.piece(0, &lower);
            prev.mul(&self.fam.ideals[i]).add(rel)
        } else {
            self.fam.module.top().clone()
        };
        let ideal = Rc::new(ideal);
        self.pieces.insert(key, Rc::clone(&ideal));
        ideal
    }

    fn j_standard(&mut self, power: usize) -> Rc<Vec<Monomial>> {
        if let Some(s) = self.j_power_standard.get(&power) {
            return Rc::clone(s);
        }
        let std = self
            .fam
            .j
            .pow(power as u32)
            .standard_monomials()
            .expect("powers of an m-primary ideal are m-primary");
        let std = Rc::new(std);
        self.j_power_standard.insert(power, Rc::clone(&std));
        std
    }

    pub fn p(&mut self, deg: &MultiDegree) -> u64 {
        let upper = self.piece(deg.n0, &deg.n);
        let lower = self.piece(deg.n0 + 1, &deg.n);
        let hint = self.j_standard(1);
        count_difference_with_hint(&upper, &lower, &hint)
    }

    pub fn f(&mut self, deg: &MultiDegree) -> u64 {
        let upper = self.piece(0, &deg.n);
        let lower = self.piece(deg.n0, &deg.n);
        let hint = self.j_standard(deg.n0);
        count_difference_with_hint(&upper, &lower, &hint)
    }

    pub fn eval(&mut self, which: Which, deg: &MultiDegree) -> u64 {
        match which {
            Which::P => self.p(deg),
            Which::F => self.f(deg),
        }
    }

    pub fn table(&mut self, which: Which, base: &MultiDegree, extent: &[usize]) -> HilbertTable {
        let base_axes = base.axes();
        let values = HilbertTable::offsets(extent)
            .into_iter()
            .map(|off| {
                let axes: Vec<usize> = base_axes.iter().zip(&off).map(|(b, o)| b + o).collect();
                self.eval(which, &MultiDegree::from_axes(&axes)) as i64
            })
            .collect();
        HilbertTable {
            which,
            base: base.clone(),
            extent: extent.to_vec(),
            differenced: vec![0; extent.len()],
            values,
        }
    }
}

fn check_deg(fam: &IdealFamily, deg: &MultiDegree) -> Result<()> {
    if deg.n.len() != fam.d() {
        return Err(Error::ArityMismatch {
            expected: fam.d(),
            got: deg.n.len(),
        });
    }
    Ok(())
}

fn family_piece(fam: &IdealFamily, n0: usize, n: &[usize]) -> MonomialIdeal {
    let mut acc = fam.j.pow(n0 as u32).mul(fam.module.top());
    for (i, &e) in n.iter().enumerate() {
        acc = acc.mul(&fam.ideals[i].pow(e as u32));
    }
    acc
}

/// `ℓ(J^{n0} 𝕀^n M / J^{n0+1} 𝕀^n M)`, counted by the general length routine.
pub fn hf_p(fam: &IdealFamily, deg: &MultiDegree) -> Result<u64> {
    check_deg(fam, deg)?;
    let top = family_piece(fam, deg.n0, &deg.n);
    let bottom = top.mul(&fam.j);
    match graded_quotient_length(&top, &bottom, fam.module.relations()) {
        Length::Finite(v) => Ok(v),
        Length::Infinite => Err(Error::InfiniteLength("P")),
    }
}

/// `ℓ(𝕀^n M / J^{n0} 𝕀^n M)`, counted by the general length routine.
pub fn hf_f(fam: &IdealFamily, deg: &MultiDegree) -> Result<u64> {
    check_deg(fam, deg)?;
    let top = family_piece(fam, 0, &deg.n);
    let bottom = top.mul(&fam.j.pow(deg.n0 as u32));
    match graded_quotient_length(&top, &bottom, fam.module.relations()) {
        Length::Finite(v) => Ok(v),
        Length::Infinite => Err(Error::InfiniteLength("F")),
    }
}

/// Tensor Newton coefficients `Δ^a f(base)` of a raw table.
fn newton_coefficients(table: &HilbertTable) -> Vec<BigInt> {
    let extent = &table.extent;
    let strides = HilbertTable::strides(extent);
    let mut c: Vec<BigInt> = table.values.iter().map(|&v| BigInt::from(v)).collect();
    for axis in 0..extent.len() {
        let w = extent[axis];
        let lines: Vec<usize> = (0..c.len())
            .filter(|flat| (flat / strides[axis]).is_multiple_of(w))
            .collect();
        for level in 1..w {
            for &start in &lines {
                // high to low so each step reads the previous level
                for pos in (level..w).rev() {
                    let hi = start + pos * strides[axis];
                    let lo = start + (pos - 1) * strides[axis];
                    let diff = &c[hi] - &c[lo];
                    c[hi] = diff;
                }
            }
        }
    }
    c
}

/// Convert Newton coefficients around `base` into the binomial basis.
///
/// Along one axis, `C(n - N, a)` has basis coefficient `C(-1 - k - N, a - k)`
/// at index `k`, because the coefficient at `k` of any polynomial `p` is
/// `(Δ^k p)(-1 - k)`.
fn newton_to_binomial_basis(newton: &[BigInt], base: &[usize], extent: &[usize]) -> Vec<BigInt> {
    let strides = HilbertTable::strides(extent);
    let mut cur = newton.to_vec();
    for axis in 0..extent.len() {
        let w = extent[axis];
        let n = base[axis] as i64;
        let transform: Vec<Vec<BigInt>> = (0..w)
            .map(|k| {
                (0..w)
                    .map(|a| binomial(-1 - k as i64 - n, a as i64 - k as i64))
                    .collect()
            })
            .collect();
        let mut next = vec![BigInt::zero(); cur.len()];
        for (flat, slot) in next.iter_mut().enumerate() {
            let k = (flat / strides[axis]) % w;
            let line_start = flat - k * strides[axis];
            let mut acc = BigInt::zero();
            for (a, coeff) in transform[k].iter().enumerate().skip(k) {
                if !coeff.is_zero() {
                    acc += coeff * &cur[line_start + a * strides[axis]];
                }
            }
            *slot = acc;
        }
        cur = next;
    }
    cur
}

/// Fit the unique polynomial of per-axis degree `< extent` through a raw table.
pub fn fit_table(table: &HilbertTable) -> BinomialBasisPolynomial {
    let newton = newton_coefficients(table);
    let coeffs = newton_to_binomial_basis(&newton, &table.base.axes(), &table.extent);
    let idx = HilbertTable::offsets(&table.extent);
    BinomialBasisPolynomial::from_coeffs(
        table.extent.len(),
        idx.into_iter()
            .zip(coeffs)
            .map(|(k, c)| (k, BigRational::from_integer(c))),
    )
}

/// Result of a certified interpolation, with its provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Interpolation {
    pub which: Which,
    pub polynomial: BinomialBasisPolynomial,
    /// Degree bound used for the fit (`dim M̄ - 1` for `P`, `dim M̄` for `F`).
    pub degree_bound: Option<usize>,
    /// Fit window; `None` when `M̄ = 0` and no fit was needed.
    pub window: Option<HilbertTable>,
    /// Verification band points and values, all reproduced exactly.
    pub band: Vec<(MultiDegree, i64)>,
    pub attempts: u32,
}

impl Interpolation {
    pub fn base(&self) -> Option<&MultiDegree> {
        self.window.as_ref().map(|w| &w.base)
    }
}

/// Interpolate `P` or `F` with the stabilization contract: the fit on the
/// window must have total degree at most the bound and must reproduce a
/// disjoint band; otherwise the base offset doubles.
pub fn interpolate(fam: &IdealFamily, which: Which, policy: &StabilizationPolicy) -> Result<Interpolation> {
    interpolate_with_store(fam, which, policy, None)
}

pub fn interpolate_with_store(
    fam: &IdealFamily,
    which: Which,
    policy: &StabilizationPolicy,
    store: Option<&dyn TableStore>,
) -> Result<Interpolation> {
    let arity = fam.d() + 1;
    let Some(q) = fam.saturated_dim().finite() else {
        return Ok(Interpolation {
            which,
            polynomial: BinomialBasisPolynomial::zero(arity),
            degree_bound: None,
            window: None,
            band: Vec::new(),
            attempts: 0,
        });
    };
    let bound = match which {
        Which::P => q.saturating_sub(1),
        Which::F => q,
    };
    let mut source = FamilyGrid {
        eval: HilbertEvaluator::new(fam),
        which,
        store,
    };
    stabilized_fit(
        &mut source,
        which,
        arity,
        bound,
        policy.initial_base_for(fam),
        policy.max_doublings,
    )
}

/// Integer-valued function on a grid of multidegrees.
pub trait GridSource {
    fn value(&mut self, axes: &[usize]) -> i64;

    fn table(&mut self, which: Which, base: &[usize], extent: &[usize]) -> HilbertTable {
        let values = HilbertTable::offsets(extent)
            .into_iter()
            .map(|off| {
                let axes: Vec<usize> = base.iter().zip(&off).map(|(b, o)| b + o).collect();
                self.value(&axes)
            })
            .collect();
        HilbertTable {
            which,
            base: MultiDegree::from_axes(base),
            extent: extent.to_vec(),
            differenced: vec![0; extent.len()],
            values,
        }
    }
}

struct FamilyGrid<'a, 's> {
    eval: HilbertEvaluator<'a>,
    which: Which,
    store: Option<&'s dyn TableStore>,
}

impl GridSource for FamilyGrid<'_, '_> {
    fn value(&mut self, axes: &[usize]) -> i64 {
        self.eval.eval(self.which, &MultiDegree::from_axes(axes)) as i64
    }

    fn table(&mut self, which: Which, base: &[usize], extent: &[usize]) -> HilbertTable {
        let base = MultiDegree::from_axes(base);
        let key = table_key(self.eval.family(), which, &base, extent);
        if let Some(t) = self.store.and_then(|s| s.load(&key)) {
            return t;
        }
        let t = self.eval.table(which, &base, extent);
        if let Some(s) = self.store {
            s.store(&key, &t);
        }
        t
    }
}

/// Fit a polynomial of total degree at most `bound` on the window
/// `N + [0, bound + 2)^arity` and demand exact reproduction on the band
/// `N + bound + 2 + {0, 1}^arity`; `N` starts at `initial` and doubles on
/// failure.
pub fn stabilized_fit(
    source: &mut dyn GridSource,
    which: Which,
    arity: usize,
    bound: usize,
    initial: usize,
    max_doublings: u32,
) -> Result<Interpolation> {
    let extent = vec![bound + 2; arity];
    let initial = initial.max(1);
    let mut residuals = Vec::new();
    let mut base_value = initial;
    for attempt in 0..=max_doublings {
        base_value = initial << attempt;
        let base = vec![base_value; arity];
        let table = source.table(which, &base, &extent);
        let poly = fit_table(&table);
        residuals.clear();
        if poly.total_degree().is_some_and(|deg| deg > bound) {
            residuals.push((base, i128::MAX));
            continue;
        }
        let band_base = base_value + bound + 2;
        let mut band = Vec::new();
        for off in HilbertTable::offsets(&vec![2; arity]) {
            let axes: Vec<usize> = off.iter().map(|o| band_base + o).collect();
            let actual = source.value(&axes);
            let point: Vec<i64> = axes.iter().map(|&a| a as i64).collect();
            let diff = poly.evaluate(&point) - BigRational::from_integer(actual.into());
            if !diff.is_zero() {
                residuals.push((axes.clone(), diff.to_integer().to_i128().unwrap_or(i128::MAX)));
            }
            band.push((MultiDegree::from_axes(&axes), actual));
        }
        if residuals.is_empty() {
            return Ok(Interpolation {
                which,
                polynomial: poly,
                degree_bound: Some(bound),
                window: Some(table),
                band,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::Stabilization {
        last_base: base_value,
        residuals,
    })
}

/// A mixed multiplicity of maximal degrees together with its defined-flag.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MixedMultiplicity {
    pub ty: MixedType,
    pub value: BigRational,
    /// All coefficients strictly above the index vanish.
    pub defined: bool,
    pub total_degree: Option<usize>,
    pub base: Option<MultiDegree>,
}

impl MixedMultiplicity {
    pub fn as_i64(&self) -> i64 {
        self.value
            .to_integer()
            .to_i64()
            .expect("mixed multiplicity fits in i64")
    }

    pub fn is_integral(&self) -> bool {
        self.value.is_integer()
    }
}

pub fn mixed_from_polynomial(poly: &BinomialBasisPolynomial, ty: &MixedType) -> (BigRational, bool) {
    let idx = ty.axes();
    (poly.coefficient(&idx), poly.vanishes_above(&idx))
}

pub fn mixed_multiplicity(
    fam: &IdealFamily,
    ty: &MixedType,
    policy: &StabilizationPolicy,
) -> Result<MixedMultiplicity> {
    ty.check_arity(fam.d())?;
    let interp = interpolate(fam, Which::P, policy)?;
    let (value, defined) = mixed_from_polynomial(&interp.polynomial, ty);
    debug_assert!(!defined || !value.is_negative());
    Ok(MixedMultiplicity {
        ty: ty.clone(),
        value,
        defined,
        total_degree: interp.polynomial.total_degree(),
        base: interp.base().cloned(),
    })
}

/// The `Δ^{(k0,k)}` table of `P` on a stabilized window, with enough
/// extent along each axis to leave at least two points after differencing.
pub fn difference_table(
    fam: &IdealFamily,
    ty: &MixedType,
    policy: &StabilizationPolicy,
) -> Result<Option<HilbertTable>> {
    ty.check_arity(fam.d())?;
    let interp = interpolate(fam, Which::P, policy)?;
    let Some(window) = interp.window else {
        return Ok(None);
    };
    let extent: Vec<usize> = window
        .extent
        .iter()
        .zip(ty.axes())
        .map(|(&w, k)| w.max(k + 2))
        .collect();
    let table = if extent == window.extent {
        window
    } else {
        HilbertEvaluator::new(fam).table(Which::P, &window.base, &extent)
    };
    Ok(table.difference(&ty.axes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(v: i64) -> BigRational {
        BigRational::from_i64(v).unwrap()
    }

    fn line_family(m: usize) -> IdealFamily {
        let c = RingContext::new(m).unwrap();
        let mx = c.maximal_ideal();
        IdealFamily::new(mx.clone(), vec![mx], QuotientModule::ring(c)).unwrap()
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn one_variable_hilbert_functions() {
        let fam = line_family(1);
        for n0 in 0..4 {
            for n in 0..4 {
                let deg = MultiDegree::new(n0, vec![n]);
                assert_eq!(hf_p(&fam, &deg).unwrap(), 1);
                assert_eq!(hf_f(&fam, &deg).unwrap(), n0 as u64);
                let mut ev = HilbertEvaluator::new(&fam);
                assert_eq!(ev.p(&deg), 1);
                assert_eq!(ev.f(&deg), n0 as u64);
            }
        }
    }

    #[test]
    fn zero_module_gives_zero_everywhere() {
        let c = RingContext::new(2).unwrap();
        let mx = c.maximal_ideal();
        let fam = IdealFamily::new(mx.clone(), vec![mx], QuotientModule::cyclic(MonomialIdeal::unit(c))).unwrap();
        let deg = MultiDegree::new(2, vec![3]);
        assert_eq!(hf_p(&fam, &deg).unwrap(), 0);
        assert_eq!(hf_f(&fam, &deg).unwrap(), 0);
        let interp = interpolate(&fam, Which::P, &StabilizationPolicy::default()).unwrap();
        assert!(interp.polynomial.is_zero());
        assert_eq!(interp.polynomial.total_degree(), None);
    }

    #[test]
    fn constant_polynomial_for_one_variable() {
        let fam = line_family(1);
        let interp = interpolate(&fam, Which::P, &StabilizationPolicy::default()).unwrap();
        assert_eq!(interp.polynomial.coeffs().len(), 1);
        assert_eq!(interp.polynomial.coefficient(&[0, 0]), rat(1));
        let mm = mixed_multiplicity(&fam, &MixedType::new(0, vec![1]), &StabilizationPolicy::default()).unwrap();
        assert_eq!(mm.value, rat(0));
        assert!(mm.defined);
    }

    #[test]
    fn maximal_ideal_in_two_variables() {
        let fam = line_family(2);
        let mm = mixed_multiplicity(&fam, &MixedType::new(0, vec![1]), &StabilizationPolicy::default()).unwrap();
        assert_eq!(mm.value, rat(1));
        assert!(mm.defined);
        let mm = mixed_multiplicity(&fam, &MixedType::new(1, vec![0]), &StabilizationPolicy::default()).unwrap();
        assert_eq!(mm.value, rat(1));
    }

    #[test]
    fn difference_examples() {
        let p = BinomialBasisPolynomial::from_coeffs(2, [(vec![1, 1], rat(1))]);
        assert_eq!(p.difference(&[0, 0]), p);
        let one = p.difference(&[1, 1]);
        assert_eq!(one, BinomialBasisPolynomial::from_coeffs(2, [(vec![0, 0], rat(1))]));
        assert!(one.difference(&[1, 0]).is_zero());
    }

    #[test]
    fn difference_matches_pointwise_difference() {
        let p = BinomialBasisPolynomial::from_coeffs(
            2,
            [(vec![2, 1], rat(3)), (vec![0, 3], rat(-2)), (vec![1, 0], rat(5))],
        );
        let dp = p.difference(&[1, 0]);
        for a in 0..4i64 {
            for b in 0..4i64 {
                let lhs = dp.evaluate(&[a, b]);
                let rhs = p.evaluate(&[a + 1, b]) - p.evaluate(&[a, b]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn fit_reproduces_window_and_recovers_coefficients() {
        let p =
            BinomialBasisPolynomial::from_coeffs(2, [(vec![2, 0], rat(1)), (vec![1, 1], rat(4)), (vec![0, 0], rat(7))]);
        let base = MultiDegree::new(5, vec![3]);
        let extent = vec![4, 4];
        let values = HilbertTable::offsets(&extent)
            .into_iter()
            .map(|o| {
                p.evaluate(&[5 + o[0] as i64, 3 + o[1] as i64])
                    .to_integer()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        let table = HilbertTable {
            which: Which::P,
            base,
            extent,
            differenced: vec![0, 0],
            values,
        };
        assert_eq!(fit_table(&table), p);
    }

    #[test]
    fn table_difference_and_constancy() {
        let fam = line_family(2);
        let interp = interpolate(&fam, Which::P, &StabilizationPolicy::default()).unwrap();
        let window = interp.window.unwrap();
        let d = window.difference(&[0, 1]).unwrap();
        assert_eq!(d.constant(), Some(1));
        assert!(window.difference(&[9, 0]).is_none());
    }

    #[test]
    fn family_validation() {
        let c = RingContext::new(2).unwrap();
        let i = c.ideal([c.var(0)]);
        assert_eq!(
            IdealFamily::new(i.clone(), vec![i.clone()], QuotientModule::ring(c)).unwrap_err(),
            Error::JNotPrimary
        );
        assert_eq!(
            IdealFamily::new(c.maximal_ideal(), vec![], QuotientModule::ring(c)).unwrap_err(),
            Error::NoIdeals
        );
        assert_eq!(MixedType::from_j_count(0, vec![1]).unwrap_err(), Error::EmptyJPart);
    }
}
