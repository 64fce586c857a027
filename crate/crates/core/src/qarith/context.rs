//! A coefficient field together with a distinguished invertible element
//! `q` and its quantum characteristic ℓ — the smallest positive integer
//! with `[ℓ] = 0`, or `0` if no quantum integer vanishes.

use std::fmt;

use num_traits::Zero;

use super::field::{FieldDescriptor, FieldElement};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A pair `(K, q)` with the derived quantum characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    descriptor: FieldDescriptor,
    q: FieldElement,
    ell: u64,
    q_order_odd_or_pm1: bool,
}

impl FieldContext {
    /// Build a context, computing ℓ by closed form. Contexts where `q`
    /// has finite even multiplicative order and `q ≠ ±1` are rejected:
    /// the positive-characteristic theory requires `q = ±1` or odd order.
    pub fn new(descriptor: FieldDescriptor, q: FieldElement) -> Result<Self> {
        if q.descriptor() != descriptor {
            return Err(Error::ContextMismatch);
        }
        if q.is_zero() {
            return Err(Error::UnsupportedContext("q must be invertible".into()));
        }
        let (ell, odd_or_pm1) = quantum_characteristic(&descriptor, &q)?;
        Ok(FieldContext {
            descriptor,
            q,
            ell,
            q_order_odd_or_pm1: odd_or_pm1,
        })
    }

    /// Parse a `(field descriptor, q literal)` pair.
    pub fn parse(field: &str, q: &str) -> Result<Self> {
        let descriptor = FieldDescriptor::parse(field)?;
        let q = descriptor.parse_q(q)?;
        Self::new(descriptor, q)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.descriptor
    }

    pub fn q(&self) -> &FieldElement {
        &self.q
    }

    /// The quantum characteristic ℓ ≥ 0.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn q_order_odd_or_pm1(&self) -> bool {
        self.q_order_odd_or_pm1
    }

    pub fn q_is_one(&self) -> bool {
        self.q.is_one()
    }

    pub fn zero(&self) -> FieldElement {
        self.descriptor.zero()
    }

    pub fn one(&self) -> FieldElement {
        self.descriptor.one()
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(&self, k: i64) -> FieldElement {
        self.q.pow(k)
    }

    /// Image of a Laurent polynomial under the ring homomorphism
    /// ℤ[v,v⁻¹] → K sending v to q.
    pub fn evaluate(&self, p: &LaurentPoly) -> FieldElement {
        if self.q_is_one() {
            // v ↦ 1 collapses to the coefficient sum
            let total = p.terms().map(|(_, c)| c).sum();
            return self.descriptor.from_bigint(&total);
        }
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            if c.is_zero() {
                continue;
            }
            let term = self.q_power(*e).mul(&self.descriptor.from_bigint(c));
            acc = acc.add(&term);
        }
        acc
    }

    /// Short canonical form, e.g. `fp:2[q=1]` or `cyclo:3[q=zeta^1]`.
    pub fn canonical_string(&self) -> String {
        format!("{}[q={}]", self.descriptor, q_literal(&self.descriptor, &self.q))
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// Render q in the literal grammar when possible, falling back to the
/// canonical element encoding.
pub fn q_literal(descriptor: &FieldDescriptor, q: &FieldElement) -> String {
    if q.is_one() {
        return "1".into();
    }
    if *q == descriptor.from_i64(-1) {
        return "-1".into();
    }
    match descriptor {
        FieldDescriptor::Prime(_) => q.canonical_string(),
        FieldDescriptor::Cyclotomic(d) => {
            for k in 1..*d {
                if *q == descriptor.zeta_power(k as i64).unwrap() {
                    return format!("zeta^{k}");
                }
            }
            q.canonical_string()
        }
        FieldDescriptor::Rational => q.canonical_string(),
    }
}

/// Compute ℓ and the parity flag by closed form:
/// - `q = ±1`: ℓ is the field characteristic;
/// - otherwise, let `m` be the multiplicative order of `q` (infinite over
///   ℚ away from ±1): `m` infinite gives ℓ = 0; odd `m` gives ℓ = m;
///   finite even `m` is rejected.
pub fn quantum_characteristic(
    descriptor: &FieldDescriptor,
    q: &FieldElement,
) -> Result<(u64, bool)> {
    if q.is_zero() {
        return Err(Error::UnsupportedContext("q must be invertible".into()));
    }
    if q.is_one() || *q == descriptor.from_i64(-1) {
        return Ok((descriptor.characteristic(), true));
    }
    let order = match descriptor {
        FieldDescriptor::Rational => None,
        FieldDescriptor::Prime(p) => {
            let mut x = q.clone();
            let mut m = 1u64;
            while !x.is_one() {
                x = x.mul(q);
                m += 1;
                assert!(m <= *p, "element order exceeded group order");
            }
            Some(m)
        }
        FieldDescriptor::Cyclotomic(d) => {
            let mut found = None;
            for k in 1..*d {
                if *q == descriptor.zeta_power(k as i64).unwrap() {
                    found = Some(*d / num_integer::gcd(*d, k));
                    break;
                }
            }
            match found {
                Some(m) => Some(m),
                None => {
                    return Err(Error::UnsupportedContext(
                        "cyclotomic q must be a power of zeta".into(),
                    ))
                }
            }
        }
    };
    match order {
        None => Ok((0, true)),
        Some(m) if m % 2 == 1 => Ok((m, true)),
        Some(m) => Err(Error::UnsupportedContext(format!(
            "q has even multiplicative order {m}; only q = ±1 or odd order is supported"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::binomial::quantum_integer;
    use super::*;

    /// Definition-level oracle: search for the smallest n with [n] = 0.
    fn ell_by_search(ctx: &FieldContext, bound: i64) -> u64 {
        for n in 1..=bound {
            if ctx.evaluate(&quantum_integer(n)).is_zero() {
                return n as u64;
            }
        }
        0
    }

    #[test]
    fn quantum_characteristic_closed_form() {
        let cases = [
            ("rational", "1", 0u64),
            ("rational", "-1", 0),
            ("fp:7", "1", 7),
            ("fp:2", "1", 2),
            ("fp:7", "2", 3),  // 2 has order 3 mod 7
            ("fp:31", "5", 3), // 5^3 = 125 = 1 mod 31
            ("cyclo:5", "zeta^1", 5),
            ("cyclo:5", "zeta^2", 5),
            ("cyclo:9", "zeta^3", 3),
            ("cyclo:3", "1", 0),
        ];
        for (field, q, expected) in cases {
            let ctx = FieldContext::parse(field, q).unwrap();
            assert_eq!(ctx.ell(), expected, "{field} q={q}");
            assert_eq!(ctx.ell(), ell_by_search(&ctx, 40), "{field} q={q}");
            assert!(ctx.q_order_odd_or_pm1());
        }
    }

    #[test]
    fn rejects_even_order_q() {
        assert!(FieldContext::parse("fp:5", "2").is_err()); // order 4
        assert!(FieldContext::parse("fp:7", "3").is_err()); // order 6
        assert!(FieldContext::parse("cyclo:4", "zeta^1").is_err());
        assert!(FieldContext::parse("fp:5", "0").is_err());
    }

    #[test]
    fn evaluate_is_a_ring_homomorphism() {
        use num_bigint::BigInt;
        for (field, q) in [("rational", "1"), ("fp:7", "2"), ("cyclo:5", "zeta^2")] {
            let ctx = FieldContext::parse(field, q).unwrap();
            let a = &quantum_integer(4) - &LaurentPoly::monomial(-3, BigInt::from(5));
            let b = &quantum_integer(-7) + &LaurentPoly::monomial(2, BigInt::from(2));
            assert_eq!(
                ctx.evaluate(&(&a + &b)),
                ctx.evaluate(&a).add(&ctx.evaluate(&b))
            );
            assert_eq!(
                ctx.evaluate(&(&a * &b)),
                ctx.evaluate(&a).mul(&ctx.evaluate(&b))
            );
        }
    }

    #[test]
    fn evaluate_examples() {
        let rat = FieldContext::parse("rational", "1").unwrap();
        assert_eq!(rat.evaluate(&quantum_integer(5)), rat.descriptor().from_i64(5));

        let f5 = FieldContext::parse("fp:5", "1").unwrap();
        assert!(f5.evaluate(&quantum_integer(5)).is_zero());

        let z3 = FieldContext::parse("cyclo:3", "zeta^1").unwrap();
        assert!(z3.evaluate(&quantum_integer(3)).is_zero());
        assert!(!z3.evaluate(&quantum_integer(2)).is_zero());
    }
}
