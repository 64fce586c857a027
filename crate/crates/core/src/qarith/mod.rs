//! Exact quantum-integer and quantum-binomial arithmetic over ℤ[v,v⁻¹],
//! specialization into concrete coefficient fields, and the
//! quantum-characteristic computation.

pub mod binomial;
pub mod context;
pub mod field;
pub mod identities;
pub mod laurent;

pub use binomial::{integer_binomial, quantum_binomial, quantum_integer};
pub use context::{quantum_characteristic, FieldContext};
pub use field::{FieldDescriptor, FieldElement};
pub use identities::{verify_identities, IdentityRanges, IdentityReport};
pub use laurent::LaurentPoly;

/// Test hook: plant a wrong value in the binomial memo table so that
/// downstream identity checks detect the corruption. Only meant for
/// fault-injection tests; never call this in normal operation.
#[doc(hidden)]
pub fn poison_binomial_memo_for_tests(a: i64, b: i64, wrong: LaurentPoly) {
    binomial::poison_memo(a, b, wrong);
}
