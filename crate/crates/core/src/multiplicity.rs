//! The multiplicity symbol, Hilbert–Samuel multiplicities and the checks
//! relating mixed multiplicities of maximal degrees to them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    mixed_multiplicity, stabilized_fit, GridSource, IdealFamily, MixedType, StabilizationPolicy, Which,
};
use crate::module::QuotientModule;
use crate::monomial::{graded_quotient_length, Dimension, Monomial, MonomialIdeal};
use crate::reduction::{
    is_filter_regular_on, is_filter_regular_sequence, is_multiplicity_system, is_system_of_parameters,
    verify_joint_reduction, JointReductionCandidate,
};

/// `e(y; M)`: the length of `M` for empty `y`, otherwise
/// `e(y'; M/y_1M) - e(y'; 0_M : y_1)`.
pub fn mult_symbol(m: &QuotientModule, y: &[Monomial]) -> Result<i64> {
    if !is_multiplicity_system(m, y) {
        return Err(Error::NotMultiplicitySystem);
    }
    Ok(mult_symbol_unchecked(m, y))
}

fn mult_symbol_unchecked(m: &QuotientModule, y: &[Monomial]) -> i64 {
    if m.is_zero() {
        return 0;
    }
    match y.split_first() {
        None => m.length().finite().expect("multiplicity system gives finite length") as i64,
        Some((y1, rest)) => {
            let quotient = m.quotient_by(std::slice::from_ref(y1));
            let killed = m.annihilator_of(y1);
            mult_symbol_unchecked(&quotient, rest) - mult_symbol_unchecked(&killed, rest)
        }
    }
}

struct SamuelGrid<'a> {
    m: &'a QuotientModule,
    a: &'a MonomialIdeal,
    powers: Vec<MonomialIdeal>,
}

impl GridSource for SamuelGrid<'_> {
    /// `ℓ(M / a^{n+1} M)`.
    fn value(&mut self, axes: &[usize]) -> i64 {
        let n = axes[0] + 1;
        while self.powers.len() <= n {
            let next = self.powers.last().unwrap().mul(self.a);
            self.powers.push(next);
        }
        let len = graded_quotient_length(self.m.top(), &self.powers[n], self.m.relations());
        len.finite().expect("ideal of definition gives finite colength") as i64
    }
}

/// `e(a; M)`: `dim M!` times the leading coefficient of `n ↦ ℓ(M/a^{n+1}M)`.
pub fn hilbert_samuel(m: &QuotientModule, a: &MonomialIdeal, policy: &StabilizationPolicy) -> Result<i64> {
    if m.is_zero() {
        return Ok(0);
    }
    if !m.quotient_by_ideal(a).length().is_finite() {
        return Err(Error::NotIdealOfDefinition);
    }
    let dim = m.dim().finite().expect("nonzero module");
    let mut grid = SamuelGrid {
        m,
        a,
        powers: vec![m.top().clone()],
    };
    let initial = policy
        .initial_base
        .unwrap_or(dim + a.max_degree().max(m.max_degree()) as usize);
    let fit = stabilized_fit(&mut grid, Which::F, 1, dim, initial, policy.max_doublings)?;
    // the basis element C(n + dim, dim) carries the leading term n^dim / dim!
    let lead = fit.polynomial.coefficient(&[dim]);
    if !lead.is_integer() {
        return Err(Error::Stabilization {
            last_base: initial,
            residuals: vec![(vec![dim], 0)],
        });
    }
    Ok(lead.to_integer().to_i64().expect("multiplicity fits in i64"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    AtMost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportVerdict {
    Equal,
    LeqStrict,
    HypothesisUnmet,
    Mismatch,
}

impl fmt::Display for ReportVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReportVerdict::Equal => "EQUAL",
            ReportVerdict::LeqStrict => "LEQ-STRICT",
            ReportVerdict::HypothesisUnmet => "HYPOTHESIS-UNMET",
            ReportVerdict::Mismatch => "MISMATCH",
        };
        write!(f, "{s}")
    }
}

/// One asserted relation between two independently computed values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub instance: String,
    pub relation: Relation,
    pub left: Option<BigRational>,
    pub right: Option<BigRational>,
    pub left_path: String,
    pub right_path: String,
    pub hypotheses: Vec<(String, bool)>,
    pub verdict: ReportVerdict,
}

impl VerificationReport {
    pub(crate) fn decide(
        claim_id: &str,
        instance: &str,
        relation: Relation,
        left: Option<BigRational>,
        right: Option<BigRational>,
        paths: (&str, &str),
        hypotheses: Vec<(String, bool)>,
    ) -> Self {
        let verdict = match (&left, &right) {
            _ if hypotheses.iter().any(|(_, ok)| !ok) => ReportVerdict::HypothesisUnmet,
            (Some(l), Some(r)) => match relation {
                Relation::Equal if l == r => ReportVerdict::Equal,
                Relation::AtMost if l == r => ReportVerdict::Equal,
                Relation::AtMost if l < r => ReportVerdict::LeqStrict,
                _ => ReportVerdict::Mismatch,
            },
            _ => ReportVerdict::HypothesisUnmet,
        };
        Self {
            claim_id: claim_id.to_string(),
            instance: instance.to_string(),
            relation,
            left,
            right,
            left_path: paths.0.to_string(),
            right_path: paths.1.to_string(),
            hypotheses,
            verdict,
        }
    }

    pub fn is_mismatch(&self) -> bool {
        self.verdict == ReportVerdict::Mismatch
    }

    /// The relation was checked and holds.
    pub fn asserted(&self) -> bool {
        matches!(self.verdict, ReportVerdict::Equal | ReportVerdict::LeqStrict)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|(_, ok)| *ok)
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn mixed_value(fam: &IdealFamily, ty: &MixedType, policy: &StabilizationPolicy) -> Option<BigRational> {
    mixed_multiplicity(fam, ty, policy).ok().map(|m| m.value)
}

fn certified(fam: &IdealFamily, cand: &JointReductionCandidate, policy: &StabilizationPolicy) -> (String, bool) {
    (
        "candidate is a joint reduction (certified on window)".to_string(),
        verify_joint_reduction(fam, cand, policy).holds(),
    )
}

pub(crate) fn instance_label(fam: &IdealFamily, cand: &JointReductionCandidate) -> String {
    let names = crate::monomial::default_names(fam.ctx().num_vars());
    format!(
        "M={} J={} I=[{}] x={}",
        fam.module().describe(&names),
        fam.j().render(&names),
        fam.ideals()
            .iter()
            .map(|i| i.render(&names))
            .collect::<Vec<_>>()
            .join("; "),
        cand.describe(&names)
    )
}

/// The first element of the candidate from `I_i` together with the rest of
/// the candidate, lowered by one in `k_i`.
fn split_at_ideal(cand: &JointReductionCandidate, i: usize) -> Option<(Monomial, JointReductionCandidate)> {
    let pos = cand.first_from(i)?;
    let x1 = cand.elements()[pos].0;
    Some((x1, cand.without(pos)?))
}

/// `e(M; k) = e(M/x_1M; k - e_i) - e(0_M : x_1; k - e_i)` for the first
/// candidate element `x_1` from `I_i`, all three by separate interpolations.
pub fn verify_mixed_recursion(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    i: usize,
    policy: &StabilizationPolicy,
) -> VerificationReport {
    let instance = instance_label(fam, cand);
    let mut hyps = vec![certified(fam, cand, policy)];
    let split = split_at_ideal(cand, i);
    hyps.push((
        format!("k_{} > 0 with an element of I_{}", i + 1, i + 1),
        split.is_some(),
    ));
    let (left, right) = match &split {
        Some((x1, rest)) => {
            let left = mixed_value(fam, cand.ty(), policy);
            let quotient = fam.with_module(fam.module().quotient_by(std::slice::from_ref(x1)));
            let killed = fam.with_module(fam.module().annihilator_of(x1));
            let right = match (
                mixed_value(&quotient, rest.ty(), policy),
                mixed_value(&killed, rest.ty(), policy),
            ) {
                (Some(a), Some(b)) => Some(a - b),
                _ => None,
            };
            hyps.push((
                "all three interpolations stabilized".to_string(),
                left.is_some() && right.is_some(),
            ));
            (left, right)
        }
        None => (None, None),
    };
    VerificationReport::decide(
        "mixed-recursion",
        &instance,
        Relation::Equal,
        left,
        right,
        (
            "coefficient of interpolated P(M)",
            "coefficients of interpolated P(M/x1M) and P(0_M:x1)",
        ),
        hyps,
    )
}

/// Bound by the quotient `M/x_1M`, with equality when `x_1` is regular or
/// filter-regular.
pub fn verify_cor_filter_regular(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    i: usize,
    policy: &StabilizationPolicy,
) -> Vec<VerificationReport> {
    let instance = instance_label(fam, cand);
    let base = vec![certified(fam, cand, policy)];
    let Some((x1, rest)) = split_at_ideal(cand, i) else {
        let hyps = vec![(format!("k_{} > 0 with an element of I_{}", i + 1, i + 1), false)];
        return vec![VerificationReport::decide(
            "quotient-bound",
            &instance,
            Relation::AtMost,
            None,
            None,
            ("", ""),
            hyps,
        )];
    };
    let left = mixed_value(fam, cand.ty(), policy);
    let quotient = fam.with_module(fam.module().quotient_by(&[x1]));
    let right = mixed_value(&quotient, rest.ty(), policy);
    let paths = (
        "coefficient of interpolated P(M)",
        "coefficient of interpolated P(M/x1M)",
    );
    let regular = fam.module().is_regular(&x1);
    let filter_regular = is_filter_regular_on(fam.module(), &fam.product_ideal(), &x1);
    let with = |extra: Option<(&str, bool)>| {
        let mut h = base.clone();
        if let Some((name, ok)) = extra {
            h.push((name.to_string(), ok));
        }
        h
    };
    vec![
        VerificationReport::decide(
            "quotient-bound",
            &instance,
            Relation::AtMost,
            left.clone(),
            right.clone(),
            paths,
            with(None),
        ),
        VerificationReport::decide(
            "regular-element-equality",
            &instance,
            Relation::Equal,
            left.clone(),
            right.clone(),
            paths,
            with(Some(("x1 is M-regular", regular))),
        ),
        VerificationReport::decide(
            "filter-regular-equality",
            &instance,
            Relation::Equal,
            left,
            right,
            paths,
            with(Some(("x1 is I-filter-regular", filter_regular))),
        ),
    ]
}

/// Bound by `e(U; M/(x_I)M : I^∞)` for the `J`-part `U`, with equality when
/// `x_I` is an `I`-filter-regular sequence.
pub fn verify_cor_transition(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> Vec<VerificationReport> {
    let instance = instance_label(fam, cand);
    let i = fam.product_ideal();
    let x_i = cand.i_part();
    let u = cand.j_part();
    let left = mixed_value(fam, cand.ty(), policy);
    let target = fam.module().quotient_by(&x_i).saturated(&i);
    let right = mult_symbol(&target, &u).ok().map(int);
    let mut hyps = vec![certified(fam, cand, policy)];
    hyps.push((
        "U is a multiplicity system of M/(x_I)M : I^inf".to_string(),
        right.is_some(),
    ));
    let paths = (
        "coefficient of interpolated P(M)",
        "multiplicity symbol of U on M/(x_I)M : I^inf",
    );
    let mut eq_hyps = hyps.clone();
    eq_hyps.push((
        "x_I is an I-filter-regular sequence".to_string(),
        is_filter_regular_sequence(fam.module(), &i, &x_i),
    ));
    vec![
        VerificationReport::decide(
            "saturated-quotient-bound",
            &instance,
            Relation::AtMost,
            left.clone(),
            right.clone(),
            paths,
            hyps,
        ),
        VerificationReport::decide(
            "saturated-quotient-equality",
            &instance,
            Relation::Equal,
            left,
            right,
            paths,
            eq_hyps,
        ),
    ]
}

/// `dim M/(x_I, I)M < dim M/(x_I)M`.
pub fn dimension_drop_condition(fam: &IdealFamily, cand: &JointReductionCandidate) -> bool {
    let x_i = cand.i_part();
    let reduced = fam.module().quotient_by(&x_i);
    let ideal = MonomialIdeal::new(fam.ctx(), x_i.iter().copied()).add(&fam.product_ideal());
    let cut = fam.module().quotient_by_ideal(&ideal);
    cut.dim() < reduced.dim()
}

/// For a system of parameters `x`: bound by `e(x; M)`, with equality under
/// the dimension drop `dim M/(x_I, I)M < dim M/(x_I)M`.
pub fn verify_cor_sop(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> Vec<VerificationReport> {
    let instance = instance_label(fam, cand);
    let x = cand.monomials();
    let mut hyps = vec![certified(fam, cand, policy)];
    hyps.push((
        "x is a system of parameters for M".to_string(),
        is_system_of_parameters(fam.module(), &x),
    ));
    let left = mixed_value(fam, cand.ty(), policy);
    let right = mult_symbol(fam.module(), &x).ok().map(int);
    let paths = ("coefficient of interpolated P(M)", "multiplicity symbol of x on M");
    let mut eq_hyps = hyps.clone();
    eq_hyps.push((
        "dim M/(x_I, I)M < dim M/(x_I)M".to_string(),
        dimension_drop_condition(fam, cand),
    ));
    vec![
        VerificationReport::decide(
            "parameter-bound",
            &instance,
            Relation::AtMost,
            left.clone(),
            right.clone(),
            paths,
            hyps,
        ),
        VerificationReport::decide(
            "parameter-equality",
            &instance,
            Relation::Equal,
            left,
            right,
            paths,
            eq_hyps,
        ),
    ]
}

/// `I` avoids every minimal prime of `Ann(M/(x_I)M)`.
pub fn height_condition(fam: &IdealFamily, cand: &JointReductionCandidate) -> bool {
    let reduced = fam.module().quotient_by(&cand.i_part());
    if reduced.is_zero() {
        return false;
    }
    let i = fam.product_ideal();
    reduced
        .annihilator()
        .minimal_primes()
        .into_iter()
        .all(|p| !i.inside_prime(p))
}

/// `k0 + |k| = dim M̄ - 1`.
pub fn degree_condition(fam: &IdealFamily, cand: &JointReductionCandidate) -> bool {
    match fam.saturated_dim() {
        Dimension::Finite(q) => q >= 1 && cand.ty().total() == q - 1,
        Dimension::NegInfinity => false,
    }
}

/// Under the height and degree conditions, `x` is a system of parameters
/// and the mixed multiplicity equals `e(x; M)`.
pub fn verify_cor_height(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> Vec<VerificationReport> {
    let instance = instance_label(fam, cand);
    let x = cand.monomials();
    let hyps = vec![
        certified(fam, cand, policy),
        (
            "ht (Ann M/(x_I)M + I) / Ann M/(x_I)M > 0".to_string(),
            height_condition(fam, cand),
        ),
        ("k0 + |k| = dim M_bar - 1".to_string(), degree_condition(fam, cand)),
    ];
    let sop = is_system_of_parameters(fam.module(), &x);
    let left = mixed_value(fam, cand.ty(), policy);
    let right = mult_symbol(fam.module(), &x).ok().map(int);
    vec![
        VerificationReport::decide(
            "height-parameter-system",
            &instance,
            Relation::Equal,
            Some(int(sop as i64)),
            Some(int(1)),
            ("system-of-parameters test on x", "expected true"),
            hyps.clone(),
        ),
        VerificationReport::decide(
            "height-equality",
            &instance,
            Relation::Equal,
            left,
            right,
            ("coefficient of interpolated P(M)", "multiplicity symbol of x on M"),
            hyps,
        ),
    ]
}

/// With every `I_i` `m`-primary the mixed multiplicity equals `e(x; M)`.
pub fn verify_rees_mprimary(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> VerificationReport {
    let instance = instance_label(fam, cand);
    let x = cand.monomials();
    let right = mult_symbol(fam.module(), &x).ok().map(int);
    let hyps = vec![
        ("every I_i is m-primary".to_string(), fam.all_ideals_m_primary()),
        certified(fam, cand, policy),
        ("x is a multiplicity system of M".to_string(), right.is_some()),
    ];
    let left = mixed_value(fam, cand.ty(), policy);
    VerificationReport::decide(
        "primary-ideals-equality",
        &instance,
        Relation::Equal,
        left,
        right,
        ("coefficient of interpolated P(M)", "multiplicity symbol of x on M"),
        hyps,
    )
}

/// For a candidate of `J`-elements only: `e(J^[k0+1], 𝕀^[0]; M) = e(x; M̄)`.
pub fn verify_base_case(
    fam: &IdealFamily,
    cand: &JointReductionCandidate,
    policy: &StabilizationPolicy,
) -> VerificationReport {
    let instance = instance_label(fam, cand);
    let x = cand.monomials();
    let saturated = fam.saturated_module();
    let right = mult_symbol(&saturated, &x).ok().map(int);
    let hyps = vec![
        (
            "candidate has J-elements only".to_string(),
            cand.ty().k.iter().all(|&k| k == 0),
        ),
        certified(fam, cand, policy),
        ("x is a multiplicity system of M_bar".to_string(), right.is_some()),
    ];
    let left = mixed_value(fam, cand.ty(), policy);
    VerificationReport::decide(
        "saturation-base-case",
        &instance,
        Relation::Equal,
        left,
        right,
        ("coefficient of interpolated P(M)", "multiplicity symbol of x on M_bar"),
        hyps,
    )
}

/// Hilbert–Samuel multiplicity computed from a one-variable table, compared
/// with the multiplicity symbol; used by the verification suites.
pub fn samuel_vs_symbol(m: &QuotientModule, y: &[Monomial], policy: &StabilizationPolicy) -> Result<(i64, i64)> {
    let symbol = mult_symbol(m, y)?;
    let ideal = MonomialIdeal::new(m.ctx(), y.iter().copied());
    let samuel = hilbert_samuel(m, &ideal, policy)?;
    Ok((symbol, samuel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::RingContext;
    use crate::reduction::Source;

    fn example_family() -> IdealFamily {
        let c = RingContext::new(4).unwrap();
        let i1 = c.ideal([c.var(0), c.var(1), c.var(2)]);
        let i2 = c.ideal([c.var(2)]);
        IdealFamily::new(c.maximal_ideal(), vec![i1, i2], QuotientModule::ring(c)).unwrap()
    }

    fn example_candidate(fam: &IdealFamily, power: u32) -> JointReductionCandidate {
        let c = fam.ctx();
        JointReductionCandidate::new(
            fam,
            vec![
                (c.var(2), Source::I(1)),
                (c.var(0).pow(power), Source::J),
                (c.var(1).pow(power), Source::J),
                (c.var(3).pow(power), Source::J),
            ],
            MixedType::new(2, vec![0, 1]),
        )
        .unwrap()
    }

    fn plane_family() -> IdealFamily {
        let c = RingContext::new(2).unwrap();
        let mx = c.maximal_ideal();
        IdealFamily::new(mx.clone(), vec![mx], QuotientModule::ring(c)).unwrap()
    }

    fn plane_candidate(fam: &IdealFamily) -> JointReductionCandidate {
        let c = fam.ctx();
        JointReductionCandidate::new(
            fam,
            vec![(c.var(0), Source::I(0)), (c.var(1), Source::J)],
            MixedType::new(0, vec![1]),
        )
        .unwrap()
    }

    #[test]
    fn symbol_examples() {
        let c = RingContext::new(4).unwrap();
        let a = QuotientModule::ring(c);
        let vars: Vec<Monomial> = (0..4).map(|i| c.var(i)).collect();
        assert_eq!(mult_symbol(&a, &vars).unwrap(), 1);
        // pure powers form a regular sequence: the product of the exponents
        let z = [c.var(2), c.var(0).pow(2), c.var(1).pow(2), c.var(3).pow(2)];
        assert_eq!(mult_symbol(&a, &z).unwrap(), 8);
        let c2 = RingContext::new(2).unwrap();
        let m = QuotientModule::cyclic(c2.ideal([c2.var(0)]));
        assert_eq!(mult_symbol(&m, &[c2.var(1)]).unwrap(), 1);
        let m = QuotientModule::cyclic(c2.ideal([c2.var(0).mul(&c2.var(1))]));
        assert_eq!(mult_symbol(&m, &[c2.var(0), c2.var(1)]).unwrap(), 0);
        assert_eq!(
            mult_symbol(&QuotientModule::ring(c2), &[c2.var(0)]).unwrap_err(),
            Error::NotMultiplicitySystem
        );
    }

    #[test]
    fn samuel_examples() {
        let p = StabilizationPolicy::default();
        let c = RingContext::new(2).unwrap();
        let a = QuotientModule::ring(c);
        assert_eq!(hilbert_samuel(&a, &c.maximal_ideal(), &p).unwrap(), 1);
        let q = c.ideal([c.var(0).pow(2), c.var(1)]);
        assert_eq!(hilbert_samuel(&a, &q, &p).unwrap(), 2);
        let c4 = RingContext::new(4).unwrap();
        let z = c4.ideal([c4.var(2), c4.var(0).pow(2), c4.var(1).pow(2), c4.var(3).pow(2)]);
        assert_eq!(hilbert_samuel(&QuotientModule::ring(c4), &z, &p).unwrap(), 8);
        assert_eq!(
            hilbert_samuel(&a, &c.ideal([c.var(0)]), &p).unwrap_err(),
            Error::NotIdealOfDefinition
        );
    }

    #[test]
    fn recursion_on_examples() {
        let p = StabilizationPolicy::default();
        let fam = example_family();
        let r = verify_mixed_recursion(&fam, &example_candidate(&fam, 1), 1, &p);
        assert_eq!(r.verdict, ReportVerdict::Equal);
        assert_eq!(r.left, Some(int(0)));
        let fam = plane_family();
        let r = verify_mixed_recursion(&fam, &plane_candidate(&fam), 0, &p);
        assert_eq!(r.verdict, ReportVerdict::Equal);
        assert_eq!(r.left, Some(int(1)));
    }

    #[test]
    fn example_filter_regular_path_gives_zero() {
        let p = StabilizationPolicy::default();
        let fam = example_family();
        let reports = verify_cor_filter_regular(&fam, &example_candidate(&fam, 1), 1, &p);
        let fr = reports
            .iter()
            .find(|r| r.claim_id == "filter-regular-equality")
            .unwrap();
        assert_eq!(fr.verdict, ReportVerdict::Equal);
        assert_eq!(fr.right, Some(int(0)));
    }

    #[test]
    fn example_parameter_bounds() {
        let p = StabilizationPolicy::default();
        let fam = example_family();
        let x = verify_cor_sop(&fam, &example_candidate(&fam, 1), &p);
        assert_eq!(x[0].verdict, ReportVerdict::LeqStrict);
        assert_eq!(x[0].right, Some(int(1)));
        assert_eq!(x[1].verdict, ReportVerdict::HypothesisUnmet);
        let z = verify_cor_sop(&fam, &example_candidate(&fam, 2), &p);
        assert_eq!(z[0].right, Some(int(8)));
        let h = verify_cor_height(&fam, &example_candidate(&fam, 1), &p);
        assert!(h.iter().all(|r| r.verdict == ReportVerdict::HypothesisUnmet));
    }

    #[test]
    fn plane_corollaries() {
        let p = StabilizationPolicy::default();
        let fam = plane_family();
        let cand = plane_candidate(&fam);
        let sop = verify_cor_sop(&fam, &cand, &p);
        assert_eq!(sop[1].verdict, ReportVerdict::Equal);
        let h = verify_cor_height(&fam, &cand, &p);
        assert!(h.iter().all(|r| r.verdict == ReportVerdict::Equal));
        let t = verify_cor_transition(&fam, &cand, &p);
        assert_eq!(t[1].verdict, ReportVerdict::Equal);
        assert_eq!(t[1].right, Some(int(1)));
        assert_eq!(verify_rees_mprimary(&fam, &cand, &p).verdict, ReportVerdict::Equal);
    }

    #[test]
    fn base_case_on_plane() {
        let p = StabilizationPolicy::default();
        let fam = plane_family();
        let c = fam.ctx();
        let cand = JointReductionCandidate::new(
            &fam,
            vec![(c.var(0), Source::J), (c.var(1), Source::J)],
            MixedType::new(1, vec![0]),
        )
        .unwrap();
        let r = verify_base_case(&fam, &cand, &p);
        assert_eq!(r.verdict, ReportVerdict::Equal);
        assert_eq!(r.left, Some(int(1)));
    }

    #[test]
    fn teissier_style_instance() {
        let p = StabilizationPolicy::default();
        let c = RingContext::new(2).unwrap();
        let i1 = c.ideal([c.var(0).pow(2), c.var(1)]);
        let fam = IdealFamily::new(c.maximal_ideal(), vec![i1], QuotientModule::ring(c)).unwrap();
        let cand = JointReductionCandidate::new(
            &fam,
            vec![(c.var(1), Source::I(0)), (c.var(0), Source::J)],
            MixedType::new(0, vec![1]),
        )
        .unwrap();
        let r = verify_rees_mprimary(&fam, &cand, &p);
        assert_eq!(r.verdict, ReportVerdict::Equal);
        assert_eq!(r.left, Some(int(1)));
    }

    #[test]
    fn one_variable_degenerate_instance() {
        let p = StabilizationPolicy::default();
        let c = RingContext::new(1).unwrap();
        let i = c.ideal([c.var(0)]);
        let fam = IdealFamily::new(i.clone(), vec![i], QuotientModule::ring(c)).unwrap();
        let cand = JointReductionCandidate::new(
            &fam,
            vec![(c.var(0), Source::I(0)), (c.var(0), Source::J)],
            MixedType::new(0, vec![1]),
        )
        .unwrap();
        let r = verify_rees_mprimary(&fam, &cand, &p);
        assert_eq!(r.verdict, ReportVerdict::Equal);
        assert_eq!(r.left, Some(int(0)));
        let r = verify_mixed_recursion(&fam, &cand, 0, &p);
        assert_eq!(r.verdict, ReportVerdict::Equal);
    }
}
