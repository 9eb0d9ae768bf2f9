//! Fixed families for the benchmarks.

use multimult_core::{IdealFamily, JointReductionCandidate, MixedType, QuotientModule, RingContext, Source};

/// Four variables, `I1 = (x1, x2, x3)`, `I2 = (x3)`, `J` maximal, `M = A`.
pub fn four_variables() -> IdealFamily {
    let c = RingContext::new(4).expect("four variables");
    let i1 = c.ideal([c.var(0), c.var(1), c.var(2)]);
    let i2 = c.ideal([c.var(2)]);
    IdealFamily::new(c.maximal_ideal(), vec![i1, i2], QuotientModule::ring(c)).expect("valid family")
}

/// `(x3 @ I2, x1^p @ J, x2^p @ J, x4^p @ J)` on [`four_variables`].
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
    .expect("valid candidate")
}

/// Three variables with two non-primary ideals and a cyclic module.
pub fn three_variables() -> IdealFamily {
    let c = RingContext::new(3).expect("three variables");
    let m = |e: &[u32]| c.monomial(e).expect("three exponents");
    let i1 = c.ideal([m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[0, 0, 1])]);
    let i2 = c.ideal([m(&[2, 0, 0]), m(&[0, 1, 1])]);
    let j = c.ideal([m(&[2, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 2])]);
    let module = QuotientModule::cyclic(c.ideal([m(&[1, 2, 1])]));
    IdealFamily::new(j, vec![i1, i2], module).expect("valid family")
}
