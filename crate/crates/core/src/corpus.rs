//! Seeded random families of monomial ideals with certified joint reductions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hilbert::{IdealFamily, MixedType, StabilizationPolicy};
use crate::module::QuotientModule;
use crate::monomial::{Dimension, Monomial, MonomialIdeal, RingContext};
use crate::reduction::{search_joint_reduction, JointReductionCandidate, PoolPolicy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusPolicy {
    pub max_vars: usize,
    pub max_ideals: usize,
    pub max_gen_degree: u32,
    /// Search budget per family.
    pub search_budget: usize,
    /// Families drawn before giving up on reaching the requested count.
    pub max_attempts: usize,
    /// Restrict to `𝔪`-primary ideals and the ring itself.
    pub m_primary_only: bool,
}

impl Default for CorpusPolicy {
    fn default() -> Self {
        Self {
            max_vars: 4,
            max_ideals: 2,
            max_gen_degree: 3,
            search_budget: 300,
            max_attempts: 2000,
            m_primary_only: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusInstance {
    /// Position in the draw sequence of its seed.
    pub draw: usize,
    pub fam: IdealFamily,
    pub cand: JointReductionCandidate,
}

fn random_monomial(rng: &mut ChaCha8Rng, c: &RingContext, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(1..=max_deg);
    let mut e = vec![0u32; c.num_vars()];
    for _ in 0..deg {
        e[rng.gen_range(0..c.num_vars())] += 1;
    }
    c.monomial(&e).expect("ring length")
}

fn pure_powers(rng: &mut ChaCha8Rng, c: &RingContext, max_deg: u32) -> Vec<Monomial> {
    (0..c.num_vars())
        .map(|i| c.var(i).pow(rng.gen_range(1..=max_deg.min(2))))
        .collect()
}

fn random_ideal(rng: &mut ChaCha8Rng, c: &RingContext, max_deg: u32, m_primary: bool) -> MonomialIdeal {
    let mut gens = if m_primary || rng.gen_bool(0.3) {
        pure_powers(rng, c, max_deg)
    } else {
        Vec::new()
    };
    let extra = rng.gen_range(if gens.is_empty() { 1 } else { 0 }..=2);
    for _ in 0..extra {
        gens.push(random_monomial(rng, c, max_deg));
    }
    c.ideal(gens)
}

fn random_module(rng: &mut ChaCha8Rng, c: &RingContext, max_deg: u32) -> QuotientModule {
    match rng.gen_range(0..4) {
        0 | 1 => QuotientModule::ring(*c),
        2 => {
            let deg = max_deg.max(2);
            QuotientModule::cyclic(c.ideal([random_monomial(rng, c, deg)]))
        }
        _ => {
            let top = c.ideal([c.var(rng.gen_range(0..c.num_vars()))]);
            let rel = top.mul(&c.ideal([random_monomial(rng, c, 2)]));
            QuotientModule::subquotient(top, rel)
        }
    }
}

/// Draw one family; `None` if the saturated module is zero.
pub fn random_family(rng: &mut ChaCha8Rng, policy: &CorpusPolicy) -> Option<IdealFamily> {
    let m = if policy.max_vars >= 4 && rng.gen_bool(0.15) {
        4
    } else {
        rng.gen_range(2..=policy.max_vars.clamp(2, 3))
    };
    let c = RingContext::new(m).ok()?;
    // keep four-variable instances cheap
    let max_deg = if m == 4 {
        policy.max_gen_degree.min(2)
    } else {
        policy.max_gen_degree
    };
    let d = rng.gen_range(1..=policy.max_ideals.max(1));
    let ideals = (0..d)
        .map(|_| random_ideal(rng, &c, max_deg, policy.m_primary_only))
        .collect();
    let j = c.ideal(pure_powers(rng, &c, max_deg));
    let module = if policy.m_primary_only {
        QuotientModule::ring(c)
    } else {
        random_module(rng, &c, max_deg)
    };
    let fam = IdealFamily::new(j, ideals, module).ok()?;
    match fam.saturated_dim() {
        Dimension::Finite(q) if q >= 1 => Some(fam),
        _ => None,
    }
}

/// A type `(k0, k)` with `k0 + |k| = dim M̄ - 1`, spread at random.
pub fn random_type(rng: &mut ChaCha8Rng, fam: &IdealFamily) -> Option<MixedType> {
    let Dimension::Finite(q) = fam.saturated_dim() else {
        return None;
    };
    let mut counts = vec![0usize; fam.d() + 1];
    for _ in 0..q.checked_sub(1)? {
        *counts.choose_mut(rng).expect("nonempty") += 1;
    }
    Some(MixedType::new(counts[0], counts[1..].to_vec()))
}

/// Instances drawn from `seed` until `count` certify or the attempts run out.
pub fn generate_corpus(
    seed: u64,
    count: usize,
    policy: &CorpusPolicy,
    stab: &StabilizationPolicy,
) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = PoolPolicy {
        products: true,
        max_degree: 2 * policy.max_gen_degree,
        budget: policy.search_budget,
    };
    let mut out = Vec::new();
    for draw in 0..policy.max_attempts {
        if out.len() >= count {
            break;
        }
        let Some(fam) = random_family(&mut rng, policy) else {
            continue;
        };
        let Some(ty) = random_type(&mut rng, &fam) else {
            continue;
        };
        let Ok(outcome) = search_joint_reduction(&fam, &ty, &pool, stab) else {
            continue;
        };
        if let Some(cand) = outcome.found {
            out.push(CorpusInstance { draw, fam, cand });
        }
    }
    out
}
