//! Exact computations with mixed multiplicities of monomial ideals over the
//! local ring `k[x_1..x_m]` at the maximal ideal of the origin.

pub mod corpus;
pub mod error;
pub mod hilbert;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod multiplicity;
pub mod reduction;

pub use error::{Error, Result};
pub use hilbert::{
    difference_table, hf_f, hf_p, interpolate, interpolate_with_store, mixed_multiplicity, BinomialBasisPolynomial,
    HilbertEvaluator, HilbertTable, IdealFamily, Interpolation, MixedMultiplicity, MixedType, MultiDegree,
    StabilizationPolicy, TableStore, Which,
};
pub use koszul::{
    euler_char_direct, euler_char_via_difference, koszul_strand_homology, rees_piece_basis, BandPolicy, EulerMethod,
    EulerValue, PieceKind, ReesDatum, StrandHomologyProfile,
};
pub use module::QuotientModule;
pub use monomial::{Dimension, Length, Monomial, MonomialIdeal, RingContext};
pub use multiplicity::{hilbert_samuel, mult_symbol, Relation, ReportVerdict, VerificationReport};
pub use reduction::{
    search_joint_reduction, verify_joint_reduction, ContainmentCertificate, JointReductionCandidate, PoolPolicy,
    Source, Verdict, Witness,
};
