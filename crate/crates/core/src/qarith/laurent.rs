//! Laurent polynomials in one variable `v` with arbitrary-precision
//! integer coefficients, i.e. elements of ℤ[v,v⁻¹].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An element of ℤ[v,v⁻¹], stored as a map exponent → coefficient.
///
/// Canonical form: no stored coefficient is zero, so equality is plain
/// coefficient-map equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The monomial `c · v^e`.
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::monomial(0, n.into())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate over (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert_add(&mut self, exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply by `v^k` (exponent shift).
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The bar involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True if invariant under `v ↦ v⁻¹`.
    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Exact division, or `None` when the quotient does not lie in ℤ[v,v⁻¹].
    ///
    /// Long division on the underlying ordinary polynomials after shifting
    /// exponents to be non-negative.
    pub fn checked_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let num_shift = self.min_exp().unwrap();
        let den_shift = divisor.min_exp().unwrap();
        let mut rem = self.shifted(-num_shift);
        let den = divisor.shifted(-den_shift);
        let den_deg = den.max_exp().unwrap();
        let den_lead = den.coeff(den_deg);
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let rem_deg = rem.max_exp().unwrap();
            if rem_deg < den_deg {
                return None;
            }
            let lead = rem.coeff(rem_deg);
            if (&lead % &den_lead) != BigInt::zero() {
                return None;
            }
            let q = LaurentPoly::monomial(rem_deg - den_deg, &lead / &den_lead);
            rem = &rem - &(&q * &den);
            quot = &quot + &q;
        }
        Some(quot.shifted(num_shift - den_shift))
    }

    /// Canonical serialization: sorted `exp:coeff` pairs joined by spaces,
    /// empty polynomial rendered as `0`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_canonical(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "0" {
            return Some(Self::zero());
        }
        let mut coeffs = BTreeMap::new();
        for pair in s.split_whitespace() {
            let (e, c) = pair.split_once(':')?;
            let exp: i64 = e.parse().ok()?;
            let coeff: BigInt = c.parse().ok()?;
            if coeff.is_zero() {
                return None;
            }
            if coeffs.insert(exp, coeff).is_some() {
                return None;
            }
        }
        Some(LaurentPoly { coeffs })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, c);
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.insert_add(*e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, &(-c));
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if first {
                first = false;
                if c < &BigInt::zero() {
                    write!(f, "-")?;
                }
            } else if c < &BigInt::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.magnitude();
            match *e {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "v")?,
                1 => write!(f, "{abs}v")?,
                _ if abs.is_one() => write!(f, "v^{e}")?,
                _ => write!(f, "{abs}v^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, BigInt::one())
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = &v(2) - &v(2);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn arithmetic_round_trip() {
        let p = &(&v(1) + &v(-1)) * &(&v(1) - &v(-1));
        assert_eq!(p, &v(2) - &v(-2));
    }

    #[test]
    fn exact_division() {
        // (v^2 - v^-2) / (v - v^-1) = v + v^-1
        let num = &v(2) - &v(-2);
        let den = &v(1) - &v(-1);
        assert_eq!(num.checked_div(&den), Some(&v(1) + &v(-1)));
        // inexact division is detected
        let three = LaurentPoly::from_integer(3);
        assert_eq!(three.checked_div(&LaurentPoly::from_integer(2)), None);
        assert_eq!((&v(1) + &v(0)).checked_div(&(&v(1) - &v(0))), None);
    }

    #[test]
    fn bar_involution() {
        let p = &v(3) + &LaurentPoly::from_integer(7);
        assert_eq!(p.bar(), &v(-3) + &LaurentPoly::from_integer(7));
        assert!(!p.is_bar_invariant());
        assert!((&p + &p.bar()).is_bar_invariant());
    }

    #[test]
    fn canonical_string_round_trip() {
        let p = &(&v(2) - &v(-5)) + &LaurentPoly::from_integer(-12);
        let s = p.canonical_string();
        assert_eq!(s, "-5:-1 0:-12 2:1");
        assert_eq!(LaurentPoly::parse_canonical(&s), Some(p));
        assert_eq!(LaurentPoly::parse_canonical("0"), Some(LaurentPoly::zero()));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&v(2) + &v(-2)) + &LaurentPoly::from_integer(2);
        assert_eq!(p.to_string(), "v^2 + 2 + v^-2");
    }
}
