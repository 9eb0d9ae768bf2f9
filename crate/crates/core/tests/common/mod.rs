#![allow(dead_code)]

use multimult_core::reduction::{is_filter_regular_on, is_multiplicity_system, is_system_of_parameters};
use multimult_core::{
    mult_symbol, verify_joint_reduction, IdealFamily, JointReductionCandidate, MixedType, Monomial, MonomialIdeal,
    QuotientModule, RingContext, Source, StabilizationPolicy,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn four_variable_family() -> IdealFamily {
    let c = RingContext::new(4).unwrap();
    let i1 = c.ideal([c.var(0), c.var(1), c.var(2)]);
    let i2 = c.ideal([c.var(2)]);
    IdealFamily::new(c.maximal_ideal(), vec![i1, i2], QuotientModule::ring(c)).unwrap()
}

/// `(x3 @ I2, x1^p @ J, x2^p @ J, x4^p @ J)`.
pub fn four_variable_candidate(fam: &IdealFamily, p: u32) -> JointReductionCandidate {
    let c = fam.ctx();
    JointReductionCandidate::new(
        fam,
        vec![
            (c.var(2), Source::I(1)),
            (c.var(0).pow(p), Source::J),
            (c.var(1).pow(p), Source::J),
            (c.var(3).pow(p), Source::J),
        ],
        MixedType::new(2, vec![0, 1]),
    )
    .unwrap()
}

/// Monomials of `[0, bound]^m` outside `ideal`, by direct divisibility tests.
pub fn brute_colength(ideal: &MonomialIdeal, bound: u32) -> u64 {
    let m = ideal.ctx().num_vars();
    let mut count = 0;
    let mut e = vec![0u32; m];
    loop {
        let inside = ideal.gens().iter().any(|g| (0..m).all(|i| g.exponent(i) <= e[i]));
        if !inside {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                return count;
            }
            e[i] += 1;
            if e[i] <= bound {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

pub fn box_monomials(c: &RingContext, bound: u32) -> Vec<Monomial> {
    let m = c.num_vars();
    let side = bound as usize + 1;
    (0..side.pow(m as u32))
        .map(|mut flat| {
            let mut e = vec![0u32; m];
            for x in e.iter_mut() {
                *x = (flat % side) as u32;
                flat /= side;
            }
            c.monomial(&e).unwrap()
        })
        .collect()
}

pub fn exps_strategy(m: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max_exp, m)
}

/// `(m, generator exponent lists)` for a nonzero ideal.
pub fn ideal_strategy(m: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(exps_strategy(m, max_exp), 1..=max_gens)
}

pub fn ideal_of(c: &RingContext, gens: &[Vec<u32>]) -> MonomialIdeal {
    c.ideal(gens.iter().map(|e| c.monomial(e).unwrap()))
}

/// Generators plus pure powers `x_i^b`, so the quotient has finite length.
pub fn primary_of(c: &RingContext, gens: &[Vec<u32>], b: u32) -> MonomialIdeal {
    ideal_of(c, gens).add(&c.ideal((0..c.num_vars()).map(|i| c.var(i).pow(b))))
}

pub fn permute(c: &RingContext, u: &Monomial, perm: &[usize]) -> Monomial {
    let mut e = vec![0u32; c.num_vars()];
    for (i, &p) in perm.iter().enumerate() {
        e[p] = u.exponent(i);
    }
    c.monomial(&e).unwrap()
}

pub fn permute_ideal(c: &RingContext, i: &MonomialIdeal, perm: &[usize]) -> MonomialIdeal {
    c.ideal(i.gens().iter().map(|g| permute(c, g, perm)))
}

// Each property returns the proptest error type so it can run both under
// `proptest!` and under an explicit runner.

/// `w ∈ I : u ⟺ uw ∈ I`, and `LK ⊆ I ⟺ L ⊆ I : K`.
pub fn colon_adjunction(
    m: usize,
    i: &[Vec<u32>],
    k: &[Vec<u32>],
    l: &[Vec<u32>],
    u: &[u32],
) -> Result<(), TestCaseError> {
    let c = RingContext::new(m).unwrap();
    let (i, k, l) = (ideal_of(&c, i), ideal_of(&c, k), ideal_of(&c, l));
    let u = c.monomial(u).unwrap();
    let iu = i.colon_monomial(&u);
    for w in box_monomials(&c, 4) {
        prop_assert_eq!(iu.contains(&w), i.contains(&w.mul(&u)));
    }
    prop_assert_eq!(l.mul(&k).is_subset(&i), l.is_subset(&i.colon(&k)));
    prop_assert!(i.colon(&k).mul(&k).is_subset(&i));
    Ok(())
}

/// `(I : K^∞) : K^∞ = I : K^∞`, and the saturation equals `I : K^s` for large `s`.
pub fn saturation_idempotent(m: usize, i: &[Vec<u32>], k: &[Vec<u32>]) -> Result<(), TestCaseError> {
    let c = RingContext::new(m).unwrap();
    let (i, k) = (ideal_of(&c, i), ideal_of(&c, k));
    let sat = i.saturate(&k);
    prop_assert_eq!(sat.saturate(&k), sat.clone());
    prop_assert!(i.is_subset(&sat));
    let mut power = i.clone();
    for _ in 0..16 {
        power = power.colon(&k);
    }
    prop_assert_eq!(power, sat);
    Ok(())
}

/// No generator divides another, and the generating set does not depend on
/// duplicates, redundant multiples or input order.
pub fn generators_minimal(m: usize, gens: &[Vec<u32>], extra: &[u32]) -> Result<(), TestCaseError> {
    let c = RingContext::new(m).unwrap();
    let i = ideal_of(&c, gens);
    for (a, ga) in i.gens().iter().enumerate() {
        for (b, gb) in i.gens().iter().enumerate() {
            if a != b {
                prop_assert!(!ga.divides(gb));
            }
        }
    }
    let mut shuffled: Vec<Monomial> = gens.iter().rev().map(|e| c.monomial(e).unwrap()).collect();
    shuffled.extend(i.gens().iter().copied());
    shuffled.push(i.gens()[0].mul(&c.monomial(extra).unwrap()));
    prop_assert_eq!(c.ideal(shuffled), i.clone());
    for g in i.gens() {
        prop_assert!(gens.iter().any(|e| c.monomial(e).unwrap() == *g));
    }
    Ok(())
}

/// Colength by standard monomials against a direct count in a box.
pub fn length_oracle(m: usize, gens: &[Vec<u32>], b: u32) -> Result<(), TestCaseError> {
    let c = RingContext::new(m).unwrap();
    let i = primary_of(&c, gens, b);
    let len = QuotientModule::cyclic(i.clone()).length().finite();
    prop_assert_eq!(len, Some(brute_colength(&i, b)));
    let std = i.standard_monomials().unwrap();
    prop_assert_eq!(std.len() as u64, brute_colength(&i, b));
    Ok(())
}

/// Renaming variables leaves every verdict and value unchanged.
pub fn permutation_invariance(
    m: usize,
    q: &[Vec<u32>],
    i: &[Vec<u32>],
    y: &[Vec<u32>],
    perm: &[usize],
) -> Result<(), TestCaseError> {
    let c = RingContext::new(m).unwrap();
    let q = ideal_of(&c, q);
    let ideal = ideal_of(&c, i);
    let y: Vec<Monomial> = y.iter().map(|e| c.monomial(e).unwrap()).collect();
    let mp = QuotientModule::cyclic(permute_ideal(&c, &q, perm));
    let mq = QuotientModule::cyclic(q.clone());
    let yp: Vec<Monomial> = y.iter().map(|u| permute(&c, u, perm)).collect();
    let ip = permute_ideal(&c, &ideal, perm);

    prop_assert_eq!(mq.dim(), mp.dim());
    prop_assert_eq!(mq.length(), mp.length());
    prop_assert_eq!(is_multiplicity_system(&mq, &y), is_multiplicity_system(&mp, &yp));
    prop_assert_eq!(is_system_of_parameters(&mq, &y), is_system_of_parameters(&mp, &yp));
    prop_assert_eq!(mult_symbol(&mq, &y).ok(), mult_symbol(&mp, &yp).ok());
    prop_assert_eq!(
        is_filter_regular_on(&mq, &ideal, &y[0]),
        is_filter_regular_on(&mp, &ip, &yp[0])
    );

    // joint reduction verdict of (y1 @ I, x1 @ J) and its renaming
    let policy = StabilizationPolicy {
        initial_base: Some(3),
        ..StabilizationPolicy::default()
    };
    let jr = |module: QuotientModule, ideal: MonomialIdeal, y1: Monomial, x1: Monomial| -> Option<bool> {
        let fam = IdealFamily::new(c.maximal_ideal(), vec![ideal.add_monomials(&[y1])], module).ok()?;
        let elements = vec![(y1, Source::I(0)), (x1, Source::J)];
        let cand = JointReductionCandidate::new(&fam, elements, MixedType::new(0, vec![1])).ok()?;
        Some(verify_joint_reduction(&fam, &cand, &policy).holds())
    };
    let x1 = c.var(0);
    prop_assert_eq!(jr(mq, ideal, y[0], x1), jr(mp, ip, yp[0], permute(&c, &x1, perm)));
    Ok(())
}
