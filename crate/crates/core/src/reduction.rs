//! Joint reductions, reductions and element properties, each certified by
//! monomial containments on a window of large multidegrees.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{mixed_multiplicity, HilbertEvaluator, IdealFamily, MixedType, MultiDegree, StabilizationPolicy};
use crate::module::QuotientModule;
use crate::monomial::{Monomial, MonomialIdeal};

/// Where a joint-reduction element is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    /// One of `I_1, ..., I_d` (zero-based).
    I(usize),
    J,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::I(i) => write!(f, "I{}", i + 1),
            Source::J => write!(f, "J"),
        }
    }
}

fn source_ideal(fam: &IdealFamily, src: Source) -> Result<&MonomialIdeal> {
    match src {
        Source::J => Ok(fam.j()),
        Source::I(i) => fam.ideal(i),
    }
}

/// Elements with their source ideals and the declared type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointReductionCandidate {
    elements: Vec<(Monomial, Source)>,
    ty: MixedType,
}

impl JointReductionCandidate {
    /// Checks membership of every element and that the source counts match
    /// `ty` (`k_i` from `I_i`, `k0 + 1` from `J`).
    pub fn new(fam: &IdealFamily, elements: Vec<(Monomial, Source)>, ty: MixedType) -> Result<Self> {
        if ty.k.len() != fam.d() {
            return Err(Error::ArityMismatch {
                expected: fam.d(),
                got: ty.k.len(),
            });
        }
        for (u, src) in &elements {
            if u.num_vars() != fam.ctx().num_vars() {
                return Err(Error::ContextMismatch {
                    left: fam.ctx().num_vars(),
                    right: u.num_vars(),
                });
            }
            if !source_ideal(fam, *src)?.contains(u) {
                return Err(Error::ElementNotInSource {
                    element: u.to_default_string(),
                    source_name: src.to_string(),
                });
            }
        }
        let cand = Self { elements, ty };
        let counted = cand.counted_type(fam.d());
        if counted != (cand.ty.k0 + 1, cand.ty.k.clone()) {
            return Err(Error::TypeMismatch(format!(
                "declared {} but elements give {} J-elements and k = {:?}",
                cand.ty, counted.0, counted.1
            )));
        }
        Ok(cand)
    }

    /// Build with the type read off the sources.
    pub fn from_elements(fam: &IdealFamily, elements: Vec<(Monomial, Source)>) -> Result<Self> {
        let tmp = Self {
            elements: elements.clone(),
            ty: MixedType::new(0, vec![0; fam.d()]),
        };
        let (j, k) = tmp.counted_type(fam.d());
        let ty = MixedType::from_j_count(j, k)?;
        Self::new(fam, elements, ty)
    }

    fn counted_type(&self, d: usize) -> (usize, Vec<usize>) {
        let mut k = vec![0; d];
        let mut j = 0;
        for (_, src) in &self.elements {
            match src {
                Source::J => j += 1,
                Source::I(i) if *i < d => k[*i] += 1,
                Source::I(_) => {}
            }
        }
        (j, k)
    }

    pub fn elements(&self) -> &[(Monomial, Source)] {
        &self.elements
    }

    pub fn ty(&self) -> &MixedType {
        &self.ty
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|(u, _)| *u).collect()
    }

    /// Elements drawn from `I_1, ..., I_d`, in candidate order.
    pub fn i_part(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter(|(_, s)| matches!(s, Source::I(_)))
            .map(|(u, _)| *u)
            .collect()
    }

    /// Elements drawn from `J`, in candidate order.
    pub fn j_part(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter(|(_, s)| *s == Source::J)
            .map(|(u, _)| *u)
            .collect()
    }

    pub fn from_source(&self, src: Source) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter(|(_, s)| *s == src)
            .map(|(u, _)| *u)
            .collect()
    }

    /// Position of the first element drawn from `I_i`.
    pub fn first_from(&self, i: usize) -> Option<usize> {
        self.elements.iter().position(|(_, s)| *s == Source::I(i))
    }

    /// The candidate with one element removed and the type lowered to match.
    pub fn without(&self, pos: usize) -> Option<JointReductionCandidate> {
        let (_, src) = *self.elements.get(pos)?;
        let ty = match src {
            Source::I(i) => self.ty.lowered(i)?,
            Source::J => {
                if self.ty.k0 == 0 {
                    return None;
                }
                MixedType::new(self.ty.k0 - 1, self.ty.k.clone())
            }
        };
        let mut elements = self.elements.clone();
        elements.remove(pos);
        Some(JointReductionCandidate { elements, ty })
    }

    /// The same elements moved onto another module with the same ideals.
    pub fn retarget(&self, fam: &IdealFamily) -> Result<JointReductionCandidate> {
        Self::new(fam, self.elements.clone(), self.ty.clone())
    }

    pub fn describe(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|(u, s)| format!("{}@{}", u.render(names), s))
            .collect();
        format!("[{}] type {}", parts.join(", "), self.ty)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The containment holds on every multidegree of the window.
    HoldsOnWindow,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: MultiDegree,
    pub monomial: Monomial,
}

/// Outcome of a containment check on the window `{N, N+1}^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentCertificate {
    pub verdict: Verdict,
    /// The base `N` of the last window checked.
    pub window_base: usize,
    /// Multidegrees checked in the last window.
    pub window: Vec<MultiDegree>,
    pub witness: Option<Witness>,
}

impl ContainmentCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnWindow
    }
}

fn corner_points(base: usize, arity: usize) -> Vec<Vec<usize>> {
    (0..1usize << arity)
        .map(|mask| (0..arity).map(|i| base + ((mask >> i) & 1)).collect())
        .collect()
}

/// Run `check` on every point of `{N, N+1}^arity`, moving `N` out by
/// doubling while the check fails.
fn certify_on_window<F>(arity: usize, initial: usize, doublings: u32, mut check: F) -> ContainmentCertificate
where
    F: FnMut(&[usize]) -> Option<Monomial>,
{
    let mut last = None;
    for attempt in 0..=doublings {
        let base = initial.max(1) << attempt;
        let points = corner_points(base, arity);
        let mut witness = None;
        for p in &points {
            if let Some(u) = check(p) {
                witness = Some(Witness {
                    degree: MultiDegree::new(p[0], p[1..].to_vec()),
                    monomial: u,
                });
                break;
            }
        }
        let window: Vec<MultiDegree> = points.iter().map(|p| MultiDegree::new(p[0], p[1..].to_vec())).collect();
        let cert = ContainmentCertificate {
            verdict: if witness.is_some() {
                Verdict::Fails
            } else {
                Verdict::HoldsOnWindow
            },
            window_base: base,
            window,
            witness,
        };
        if cert.holds() {
            return cert;
        }
        last = Some(cert);
    }
    last.expect("at least one attempt")
}

/// `u · ideal ∋ g`.
fn in_multiple(g: &Monomial, u: &Monomial, ideal: &MonomialIdeal) -> bool {
    u.divides(g) && ideal.contains(&g.div(u))
}

/// First generator of `J^{n0} 𝕀^n M` outside the joint-reduction side, if any.
fn joint_reduction_gap(
    eval: &mut HilbertEvaluator<'_>,
    cand: &JointReductionCandidate,
    n0: usize,
    n: &[usize],
) -> Option<Monomial> {
    let rel = eval.family().module().relations().clone();
    let lhs = eval.piece(n0, n);
    let j_elems = cand.j_part();
    let j_side = (n0 > 0).then(|| eval.piece(n0 - 1, n));
    let mut i_sides = Vec::new();
    for (i, &ni) in n.iter().enumerate() {
        let elems = cand.from_source(Source::I(i));
        if ni == 0 || elems.is_empty() {
            continue;
        }
        let mut lower = n.to_vec();
        lower[i] -= 1;
        i_sides.push((elems, eval.piece(n0, &lower)));
    }
    lhs.gens().iter().copied().find(|g| {
        if rel.contains(g) {
            return false;
        }
        if let Some(side) = &j_side {
            if j_elems.iter().any(|u| in_multiple(g, u, side)) {
                return false;
            }
        }
        !i_sides
            .iter()
            .any(|(elems, side)| elems.iter().any(|u| in_multiple(g, u, side)))
    })
}

/// Certify `J^{n0} 𝕀^n M = (𝔯_0) J^{n0-1} 𝕀^n M + Σ (𝔯_i) J^{n0} 𝕀^{n-e_i} M`
/// on the window. Only `⊆` needs checking; it is tested on the minimal
/// generators of the left side.
pub fn verify_joint_reduction(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> ContainmentCertificate {
    let mut eval = HilbertEvaluator::new(fam);
    verify_joint_reduction_with(&mut eval, cand, policy)
}

/// As [`verify_joint_reduction`], reusing the pieces memoized by `eval`.
pub fn verify_joint_reduction_with(
    eval: &mut HilbertEvaluator<'_>,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> ContainmentCertificate {
    let fam = eval.family();
    let arity = fam.d() + 1;
    let initial = policy.initial_base_for(fam);
    certify_on_window(arity, initial, policy.containment_doublings, |p| {
        joint_reduction_gap(eval, cand, p[0], &p[1..])
    })
}

/// Certify `𝕀^n M = Σ (𝔍_i) 𝕀^{n-e_i} M` for elements `𝔍_i ⊆ I_i` given
/// as `(element, ideal index)`.
pub fn verify_pure_joint_reduction(
    fam: &IdealFamily,
    elements: &[(Monomial, usize)],
    policy: &StabilizationPolicy,
) -> Result<ContainmentCertificate> {
    for (u, i) in elements {
        if !fam.ideal(*i)?.contains(u) {
            return Err(Error::ElementNotInSource {
                element: u.to_default_string(),
                source_name: Source::I(*i).to_string(),
            });
        }
    }
    let mut eval = HilbertEvaluator::new(fam);
    let rel = fam.module().relations().clone();
    let initial = policy.initial_base_for(fam);
    Ok(certify_on_window(fam.d(), initial, policy.containment_doublings, |n| {
        let lhs = eval.piece(0, n);
        let mut sides = Vec::new();
        for (i, &ni) in n.iter().enumerate() {
            if ni == 0 {
                continue;
            }
            let mut lower = n.to_vec();
            lower[i] -= 1;
            let elems: Vec<Monomial> = elements.iter().filter(|(_, s)| *s == i).map(|(u, _)| *u).collect();
            sides.push((elems, eval.piece(0, &lower)));
        }
        lhs.gens().iter().copied().find(|g| {
            !rel.contains(g)
                && !sides
                    .iter()
                    .any(|(elems, side)| elems.iter().any(|u| in_multiple(g, u, side)))
        })
    }))
}

/// Certify `i^{n+1} M = (gens) i^n M` on the window `{N, N+1}`.
pub fn is_reduction(
    i: &MonomialIdeal,
    gens: &[Monomial],
    m: &QuotientModule,
    policy: &StabilizationPolicy,
) -> ContainmentCertificate {
    let rel = m.relations().clone();
    let initial = policy
        .initial_base
        .unwrap_or_else(|| (m.dim().finite().unwrap_or(0) + i.max_degree().max(m.max_degree()) as usize).max(1));
    let mut powers: Vec<MonomialIdeal> = vec![m.top().clone()];
    let mut power = |n: usize| -> MonomialIdeal {
        while powers.len() <= n {
            let next = powers.last().unwrap().mul(i).add(&rel);
            powers.push(next);
        }
        powers[n].clone()
    };
    certify_on_window(1, initial, policy.containment_doublings, |p| {
        let n = p[0];
        let lower = power(n);
        let upper = power(n + 1);
        upper
            .gens()
            .iter()
            .copied()
            .find(|g| !rel.contains(g) && !gens.iter().any(|u| in_multiple(g, u, &lower)))
    })
}

/// `0_M : u ⊆ 0_M : I^∞`.
pub fn is_filter_regular(fam: &IdealFamily, u: &Monomial) -> bool {
    is_filter_regular_on(fam.module(), &fam.product_ideal(), u)
}

pub fn is_filter_regular_on(m: &QuotientModule, i: &MonomialIdeal, u: &Monomial) -> bool {
    let killed = m.top().intersect(&m.relations().colon_monomial(u));
    killed.is_subset(&m.relations().saturate(i))
}

/// Each element is filter-regular on the quotient by its predecessors.
pub fn is_filter_regular_sequence(m: &QuotientModule, i: &MonomialIdeal, elems: &[Monomial]) -> bool {
    let mut cur = m.clone();
    for u in elems {
        if !is_filter_regular_on(&cur, i, u) {
            return false;
        }
        cur = cur.quotient_by(std::slice::from_ref(u));
    }
    true
}

/// Certify `uM ∩ 𝕀^n I_i M = u 𝕀^n M` on the window `{N, N+1}^d`.
pub fn is_rees_superficial(
    fam: &IdealFamily,
    u: &Monomial,
    i: usize,
    policy: &StabilizationPolicy,
) -> Result<ContainmentCertificate> {
    if !fam.ideal(i)?.contains(u) {
        return Err(Error::ElementNotInSource {
            element: u.to_default_string(),
            source_name: Source::I(i).to_string(),
        });
    }
    let m = fam.module();
    let rel = m.relations().clone();
    let u_side = m.top().mul_monomial(u).add(&rel);
    let mut eval = HilbertEvaluator::new(fam);
    let initial = policy.initial_base_for(fam);
    Ok(certify_on_window(fam.d(), initial, policy.containment_doublings, |n| {
        let base = eval.piece(0, n);
        let mut up = n.to_vec();
        up[i] += 1;
        let lhs = u_side.intersect(&eval.piece(0, &up));
        lhs.gens()
            .iter()
            .copied()
            .find(|g| !rel.contains(g) && !in_multiple(g, u, &base))
    }))
}

/// Rees superficial and filter-regular.
pub fn is_weak_fc(fam: &IdealFamily, u: &Monomial, i: usize, policy: &StabilizationPolicy) -> Result<bool> {
    Ok(is_rees_superficial(fam, u, i, policy)?.holds() && is_filter_regular(fam, u))
}

/// `|elems| = dim M` and `ℓ(M/(elems)M) < ∞`; never true for `M = 0`.
pub fn is_system_of_parameters(m: &QuotientModule, elems: &[Monomial]) -> bool {
    match m.dim().finite() {
        Some(dim) if !m.is_zero() => dim == elems.len() && m.quotient_by(elems).length().is_finite(),
        _ => false,
    }
}

/// `(elems)` is an ideal of definition of `M`.
pub fn is_multiplicity_system(m: &QuotientModule, elems: &[Monomial]) -> bool {
    m.is_zero() || m.quotient_by(elems).length().is_finite()
}

/// Candidate pool for [`search_joint_reduction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolPolicy {
    /// Add pairwise products (squares included) of generators.
    pub products: bool,
    /// Largest degree of a pool element.
    pub max_degree: u32,
    /// Number of candidates verified before giving up.
    pub budget: usize,
}

impl Default for PoolPolicy {
    fn default() -> Self {
        Self {
            products: true,
            max_degree: 6,
            budget: 5000,
        }
    }
}

/// Minimal generators, then pairwise products, deduplicated in that order.
pub fn element_pool(ideal: &MonomialIdeal, policy: &PoolPolicy) -> Vec<Monomial> {
    let mut pool: Vec<Monomial> = ideal
        .gens()
        .iter()
        .copied()
        .filter(|g| g.degree() <= policy.max_degree)
        .collect();
    if policy.products {
        let gens = ideal.gens();
        let mut products = Vec::new();
        for (a, ga) in gens.iter().enumerate() {
            for gb in &gens[a..] {
                let p = ga.mul(gb);
                if p.degree() <= policy.max_degree && !pool.contains(&p) && !products.contains(&p) {
                    products.push(p);
                }
            }
        }
        products.sort();
        pool.extend(products);
    }
    pool
}

fn combinations(pool_len: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, pool_len, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub found: Option<JointReductionCandidate>,
    pub certificate: Option<ContainmentCertificate>,
    pub tried: usize,
    /// Every tuple of the pool was tried.
    pub exhausted: bool,
}

/// Try tuples from the pools in a fixed order: sources `I_1, ..., I_d, J`,
/// within each source combinations of pool positions in lexicographic
/// order, the last source varying fastest. Returns the first certified one.
pub fn search_joint_reduction(
    fam: &IdealFamily,
    ty: &MixedType,
    pool_policy: &PoolPolicy,
    policy: &StabilizationPolicy,
) -> Result<SearchOutcome> {
    if ty.k.len() != fam.d() {
        return Err(Error::ArityMismatch {
            expected: fam.d(),
            got: ty.k.len(),
        });
    }
    let mut sources: Vec<(Source, Vec<Monomial>, Vec<Vec<usize>>)> = Vec::new();
    for (i, &ki) in ty.k.iter().enumerate() {
        let pool = element_pool(&fam.ideals()[i], pool_policy);
        let combos = combinations(pool.len(), ki);
        sources.push((Source::I(i), pool, combos));
    }
    let jpool = element_pool(fam.j(), pool_policy);
    let jcombos = combinations(jpool.len(), ty.k0 + 1);
    sources.push((Source::J, jpool, jcombos));
    if sources.iter().any(|(_, _, c)| c.is_empty()) {
        return Ok(SearchOutcome {
            found: None,
            certificate: None,
            tried: 0,
            exhausted: true,
        });
    }
    let mut eval = HilbertEvaluator::new(fam);
    let mut counter = vec![0usize; sources.len()];
    let mut tried = 0;
    loop {
        if tried >= pool_policy.budget {
            return Ok(SearchOutcome {
                found: None,
                certificate: None,
                tried,
                exhausted: false,
            });
        }
        let mut elements = Vec::new();
        for ((src, pool, combos), &c) in sources.iter().zip(&counter) {
            for &idx in &combos[c] {
                elements.push((pool[idx], *src));
            }
        }
        let cand = JointReductionCandidate::new(fam, elements, ty.clone())?;
        tried += 1;
        let cert = verify_joint_reduction_with(&mut eval, &cand, policy);
        if cert.holds() {
            return Ok(SearchOutcome {
                found: Some(cand),
                certificate: Some(cert),
                tried,
                exhausted: false,
            });
        }
        // advance the mixed-radix counter, last source fastest
        let mut pos = sources.len();
        loop {
            if pos == 0 {
                return Ok(SearchOutcome {
                    found: None,
                    certificate: None,
                    tried,
                    exhausted: true,
                });
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < sources[pos].2.len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Consistency {
    Consistent,
    Inconsistent,
    /// No certified candidate in the pool within budget.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefinedCheck {
    pub defined: bool,
    pub search: SearchOutcome,
    pub verdict: Consistency,
}

/// Compare the defined-flag of a mixed multiplicity with the existence of a
/// monomial joint reduction of the matching type. A certified candidate
/// with the flag false is a contradiction; no candidate proves nothing.
pub fn defined_iff_joint_reduction(
    fam: &IdealFamily,
    ty: &MixedType,
    pool_policy: &PoolPolicy,
    policy: &StabilizationPolicy,
) -> Result<DefinedCheck> {
    let mm = mixed_multiplicity(fam, ty, policy)?;
    let search = search_joint_reduction(fam, ty, pool_policy, policy)?;
    let verdict = match (mm.defined, search.found.is_some()) {
        (true, true) => Consistency::Consistent,
        (false, true) => Consistency::Inconsistent,
        (_, false) => Consistency::Inconclusive,
    };
    Ok(DefinedCheck {
        defined: mm.defined,
        search,
        verdict,
    })
}
