//! Exact computer algebra for finitely generated free algebras of
//! identity-defined varieties (alternative, associative, right alternative,
//! custom): graded T-ideal components and normal forms by exact sparse
//! elimination, a generic-octonion split representation for rank 3,
//! degree-truncated structure subspaces, Veronese subalgebra generator
//! counting, and invariants of finite linear groups.

pub mod cache;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod linalg;
pub mod monomial;
pub mod parser;
pub mod poly;
pub mod split;
pub mod structure;
pub mod tideal;
pub mod veronese;

pub use cyclo::{cyclotomic, poly_to_cyclo, poly_to_rational, Cyclo};
pub use error::{Error, Result};
pub use group::LinearGroupAction;
pub use monomial::{enumerate_monomials, Generator, MonomialBasis, MultiDegree, TreeMonomial};
pub use parser::{format, parse};
pub use poly::{
    associator, circ, commutator, lpow, teichmuller_check, FreePoly, Scalar, Substitution,
};
pub use split::{
    eval_split, even_odd_center_identity, is_zero_split, octonion_mul, split_component_rank,
    Octonion, SPoly, SplitRep,
};
pub use structure::{pigeonhole_witness, StructureEngine, SubspaceSlice};
pub use tideal::{ComponentNormalizer, IdentitySet, NormalVector, TIdealEngine};
pub use veronese::{
    invariant_component, invariant_generators, new_generators, veronese_component,
    DegreeComponent, GeneratorDegreeRow, GeneratorReport, VeroneseConfig,
};
