//! Monomial subquotient modules `top / relations` with `relations ⊆ top`.
//!
//! The cyclic module `A/Q` is `top = A`, `relations = Q`. Keeping a general
//! top ideal makes the class closed under everything the verification suites
//! need: `M/xM`, `0_M : x`, `I^k M`, `M/0_M:I^∞` and submodules cut out by
//! ideals all stay monomial subquotients, so every length is a count.

use serde::{Deserialize, Serialize};

use crate::monomial::{graded_quotient_length, Dimension, Length, Monomial, MonomialIdeal, RingContext};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientModule {
    ctx: RingContext,
    top: MonomialIdeal,
    relations: MonomialIdeal,
}

impl QuotientModule {
    /// The cyclic module `A/Q`.
    pub fn cyclic(relations: MonomialIdeal) -> Self {
        let ctx = relations.ctx();
        Self {
            ctx,
            top: MonomialIdeal::unit(ctx),
            relations,
        }
    }

    /// The free module `A`.
    pub fn ring(ctx: RingContext) -> Self {
        Self::cyclic(MonomialIdeal::zero(ctx))
    }

    /// `(top + relations) / relations`.
    pub fn subquotient(top: MonomialIdeal, relations: MonomialIdeal) -> Self {
        let ctx = top.ctx();
        let top = top.add(&relations);
        Self { ctx, top, relations }
    }

    pub fn ctx(&self) -> RingContext {
        self.ctx
    }

    pub fn top(&self) -> &MonomialIdeal {
        &self.top
    }

    pub fn relations(&self) -> &MonomialIdeal {
        &self.relations
    }

    pub fn is_cyclic(&self) -> bool {
        self.top.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_subset(&self.relations)
    }

    /// `Ann(M) = relations : top`.
    pub fn annihilator(&self) -> MonomialIdeal {
        self.relations.colon(&self.top)
    }

    pub fn dim(&self) -> Dimension {
        if self.is_zero() {
            return Dimension::NegInfinity;
        }
        self.annihilator().quotient_dim()
    }

    pub fn length(&self) -> Length {
        graded_quotient_length(&self.top, &self.relations, &MonomialIdeal::zero(self.ctx))
    }

    /// Whether the monomial `u` represents a nonzero element of `M`.
    pub fn has_basis_monomial(&self, u: &Monomial) -> bool {
        self.top.contains(u) && !self.relations.contains(u)
    }

    /// `aM` as a submodule of `M`.
    pub fn ideal_times(&self, a: &MonomialIdeal) -> QuotientModule {
        Self::subquotient(self.top.mul(a), self.relations.clone())
    }

    /// `M / aM`.
    pub fn quotient_by_ideal(&self, a: &MonomialIdeal) -> QuotientModule {
        Self::subquotient(self.top.clone(), self.relations.add(&self.top.mul(a)))
    }

    /// `M / (elems) M`.
    pub fn quotient_by(&self, elems: &[Monomial]) -> QuotientModule {
        let a = MonomialIdeal::new(self.ctx, elems.iter().copied());
        self.quotient_by_ideal(&a)
    }

    /// `0_M : u`.
    pub fn annihilator_of(&self, u: &Monomial) -> QuotientModule {
        let top = self.top.intersect(&self.relations.colon_monomial(u));
        Self::subquotient(top, self.relations.clone())
    }

    /// `0_M : I^∞`.
    pub fn torsion(&self, i: &MonomialIdeal) -> QuotientModule {
        let top = self.top.intersect(&self.relations.saturate(i));
        Self::subquotient(top, self.relations.clone())
    }

    /// `M / 0_M : I^∞`.
    pub fn saturated(&self, i: &MonomialIdeal) -> QuotientModule {
        let rel = self.top.intersect(&self.relations.saturate(i));
        Self::subquotient(self.top.clone(), rel)
    }

    /// The submodule `((top ∩ q) + relations) / relations`.
    pub fn submodule(&self, q: &MonomialIdeal) -> QuotientModule {
        Self::subquotient(self.top.intersect(q), self.relations.clone())
    }

    /// `0_M : u = 0_M`.
    pub fn is_regular(&self, u: &Monomial) -> bool {
        self.top
            .intersect(&self.relations.colon_monomial(u))
            .is_subset(&self.relations)
    }

    /// Largest generator degree of the presentation.
    pub fn max_degree(&self) -> u32 {
        self.top.max_degree().max(self.relations.max_degree())
    }

    pub fn describe(&self, names: &[String]) -> String {
        if self.is_cyclic() {
            format!("A/{}", self.relations.render(names))
        } else {
            format!("{}/{}", self.top.render(names), self.relations.render(names))
        }
    }
}
