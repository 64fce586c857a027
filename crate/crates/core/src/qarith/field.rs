//! Exact coefficient-field backends: the rationals, prime fields 𝔽_p,
//! and cyclotomic fields ℚ(ζ_d).
//!
//! Every element is kept in a canonical fully-reduced form so that
//! equality is decidable by direct comparison. Cyclotomic elements are
//! polynomials in ζ_d of degree < φ(d), reduced modulo the d-th
//! cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which field a context lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// ℚ
    Rational,
    /// 𝔽_p for a prime p
    Prime(u64),
    /// ℚ(ζ_d), ζ_d a primitive d-th root of unity
    Cyclotomic(u64),
}

impl FieldDescriptor {
    /// Parse the descriptor grammar `rational`, `fp:<p>`, `cyclo:<d>`.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldDescriptor::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidDescriptor(format!("bad prime in `{s}`")))?;
            if !is_prime(p) {
                return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
            }
            return Ok(FieldDescriptor::Prime(p));
        }
        if let Some(d) = s.strip_prefix("cyclo:") {
            let d: u64 = d
                .parse()
                .map_err(|_| Error::InvalidDescriptor(format!("bad order in `{s}`")))?;
            if d == 0 {
                return Err(Error::InvalidDescriptor("cyclo:0 is not a field".into()));
            }
            return Ok(FieldDescriptor::Cyclotomic(d));
        }
        Err(Error::InvalidDescriptor(format!(
            "unknown field descriptor `{s}` (expected rational, fp:<p>, cyclo:<d>)"
        )))
    }

    /// The (ordinary) characteristic of the field.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldDescriptor::Rational => FieldElement::Rational(BigRational::zero()),
            FieldDescriptor::Prime(p) => FieldElement::Fp { value: 0, p: *p },
            FieldDescriptor::Cyclotomic(d) => FieldElement::Cyclo(CycloElement::zero(*d)),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_bigint(&BigInt::one())
    }

    /// Image of an integer under the ring homomorphism ℤ → K.
    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            FieldDescriptor::Rational => FieldElement::Rational(BigRational::from(n.clone())),
            FieldDescriptor::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                let digits = r.to_u64_digits().1;
                FieldElement::Fp {
                    value: digits.first().copied().unwrap_or(0),
                    p: *p,
                }
            }
            FieldDescriptor::Cyclotomic(d) => {
                FieldElement::Cyclo(CycloElement::constant(*d, BigRational::from(n.clone())))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    /// The element ζ_d^k; only available over cyclotomic fields.
    pub fn zeta_power(&self, k: i64) -> Result<FieldElement> {
        match self {
            FieldDescriptor::Cyclotomic(d) => Ok(FieldElement::Cyclo(CycloElement::zeta_power(
                *d,
                k.rem_euclid(*d as i64) as u64,
            ))),
            _ => Err(Error::InvalidDescriptor(
                "zeta^k only makes sense over a cyclotomic field".into(),
            )),
        }
    }

    /// Parse the q-element grammar: `1`, `-1`, an integer literal over a
    /// prime field, or `zeta^<k>` over a cyclotomic field.
    pub fn parse_q(&self, s: &str) -> Result<FieldElement> {
        match s {
            "1" => return Ok(self.one()),
            "-1" => return Ok(self.from_i64(-1)),
            _ => {}
        }
        if s == "zeta" {
            return self.zeta_power(1);
        }
        if let Some(k) = s.strip_prefix("zeta^") {
            let k: i64 = k
                .parse()
                .map_err(|_| Error::InvalidDescriptor(format!("bad exponent in `{s}`")))?;
            return self.zeta_power(k);
        }
        if let FieldDescriptor::Prime(_) = self {
            let n: i64 = s
                .parse()
                .map_err(|_| Error::InvalidDescriptor(format!("bad q literal `{s}`")))?;
            return Ok(self.from_i64(n));
        }
        Err(Error::InvalidDescriptor(format!(
            "q literal `{s}` is not valid over {self}"
        )))
    }

    /// Parse an element in canonical form (inverse of
    /// [`FieldElement::canonical_string`]).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let bad = || Error::CacheFormat(format!("bad element `{s}` over {self}"));
        match self {
            FieldDescriptor::Rational => {
                Ok(FieldElement::Rational(parse_rational(s).ok_or_else(bad)?))
            }
            FieldDescriptor::Prime(p) => {
                let value: u64 = s.parse().map_err(|_| bad())?;
                if value >= *p {
                    return Err(bad());
                }
                Ok(FieldElement::Fp { value, p: *p })
            }
            FieldDescriptor::Cyclotomic(d) => {
                let inner = s
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let degree = euler_phi(*d) as usize;
                let mut coeffs = vec![BigRational::zero(); degree];
                if !inner.is_empty() {
                    let parts: Vec<_> = inner.split(',').collect();
                    if parts.len() != degree {
                        return Err(bad());
                    }
                    for (i, part) in parts.iter().enumerate() {
                        coeffs[i] = parse_rational(part).ok_or_else(bad)?;
                    }
                }
                Ok(FieldElement::Cyclo(CycloElement { d: *d, coeffs }))
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::Prime(p) => write!(f, "fp:{p}"),
            FieldDescriptor::Cyclotomic(d) => write!(f, "cyclo:{d}"),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Coefficients of the d-th cyclotomic polynomial Φ_d (degree φ(d),
/// monic, integer coefficients), computed by dividing `x^d - 1` by all
/// Φ_e with e a proper divisor of d. Cached per d.
pub(crate) fn cyclotomic_polynomial(d: u64) -> Arc<Vec<BigInt>> {
    static CACHE: LazyLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = CACHE.lock().unwrap().get(&d) {
        return hit.clone();
    }
    let value = if d == 1 {
        vec![-BigInt::one(), BigInt::one()]
    } else {
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for e in 1..d {
            if d % e == 0 {
                num = int_poly_div_exact(&num, &cyclotomic_polynomial(e));
            }
        }
        num
    };
    let value = Arc::new(value);
    CACHE
        .lock()
        .unwrap()
        .entry(d)
        .or_insert_with(|| value.clone());
    value
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for i in 0..=dd {
            rem[k + i] -= &c * &den[i];
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// An element of ℚ(ζ_d): a polynomial in ζ of degree < φ(d), reduced
/// modulo Φ_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElement {
    d: u64,
    coeffs: Vec<BigRational>,
}

impl CycloElement {
    fn zero(d: u64) -> Self {
        CycloElement {
            d,
            coeffs: vec![BigRational::zero(); euler_phi(d) as usize],
        }
    }

    fn constant(d: u64, c: BigRational) -> Self {
        let mut out = Self::zero(d);
        if !out.coeffs.is_empty() {
            out.coeffs[0] = c;
        }
        out
    }

    fn zeta_power(d: u64, k: u64) -> Self {
        let mut raw = vec![BigRational::zero(); k as usize + 1];
        raw[k as usize] = BigRational::one();
        Self::reduce(d, raw)
    }

    /// Reduce a raw polynomial in ζ modulo Φ_d to degree < φ(d).
    fn reduce(d: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(d);
        let deg = phi.len() - 1;
        let mut i = raw.len();
        while i > deg {
            i -= 1;
            let c = std::mem::replace(&mut raw[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            // ζ^i = -c_{deg-1}ζ^{i-1} - … - c_0 ζ^{i-deg}
            for j in 0..deg {
                let adj = &c * BigRational::from(phi[j].clone());
                raw[i - deg + j] -= adj;
            }
        }
        raw.truncate(deg);
        raw.resize(deg, BigRational::zero());
        CycloElement { d, coeffs: raw }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.d, rhs.d, "mixed cyclotomic orders");
        CycloElement {
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        CycloElement {
            d: self.d,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.d, rhs.d, "mixed cyclotomic orders");
        let n = self.coeffs.len();
        if n == 0 {
            return self.clone();
        }
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.d, raw)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in
    /// ℚ[x] against Φ_d, which is irreducible over ℚ.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.d)
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        // invariants: r0 = s0·self (mod Φ), r1 = s1·self (mod Φ)
        let mut r0 = phi;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = rat_poly_div_rem(&r0, &r1);
            let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant gcd
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip();
        let coeffs = s0.iter().map(|c| c * &scale).collect();
        Some(Self::reduce(self.d, coeffs))
    }

    pub fn order(&self) -> u64 {
        self.d
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rat_poly_div_rem(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    let lead = den[dd].recip();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead;
        if c.is_zero() {
            continue;
        }
        for i in 0..=dd {
            let adj = &c * &den[i];
            rem[k + i] -= adj;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), BigRational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// An element of one of the supported fields, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElement {
    Rational(BigRational),
    Fp { value: u64, p: u64 },
    Cyclo(CycloElement),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Fp { value, .. } => *value == 0,
            FieldElement::Cyclo(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.descriptor().one()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldElement::Rational(_) => FieldDescriptor::Rational,
            FieldElement::Fp { p, .. } => FieldDescriptor::Prime(*p),
            FieldElement::Cyclo(c) => FieldDescriptor::Cyclotomic(c.order()),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (FieldElement::Fp { value: a, p }, FieldElement::Fp { value: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                FieldElement::Fp {
                    value: (a + b) % p,
                    p: *p,
                }
            }
            (FieldElement::Cyclo(a), FieldElement::Cyclo(b)) => FieldElement::Cyclo(a.add(b)),
            _ => panic!("mixed field backends"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Fp { value, p } => FieldElement::Fp {
                value: (p - value) % p,
                p: *p,
            },
            FieldElement::Cyclo(a) => FieldElement::Cyclo(a.neg()),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (FieldElement::Fp { value: a, p }, FieldElement::Fp { value: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                FieldElement::Fp {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            (FieldElement::Cyclo(a), FieldElement::Cyclo(b)) => FieldElement::Cyclo(a.mul(b)),
            _ => panic!("mixed field backends"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            FieldElement::Rational(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(FieldElement::Rational(a.recip()))
                }
            }
            FieldElement::Fp { value, p } => {
                if *value == 0 {
                    None
                } else {
                    Some(FieldElement::Fp {
                        value: mod_inverse(*value, *p),
                        p: *p,
                    })
                }
            }
            FieldElement::Cyclo(a) => a.inv().map(FieldElement::Cyclo),
        }
    }

    /// `self^k` for any integer k (negative powers through the inverse).
    pub fn pow(&self, k: i64) -> Self {
        let desc = self.descriptor();
        if k == 0 {
            return desc.one();
        }
        let base = if k < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut out = desc.one();
        let mut acc = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&acc);
            }
            e >>= 1;
            if e > 0 {
                acc = acc.mul(&acc);
            }
        }
        out
    }

    /// Canonical serialization: `a/b` or `a` over ℚ; the residue over
    /// 𝔽_p; `[c0,c1,…]` (coefficients of ζ^0 … ζ^{φ(d)-1}) over ℚ(ζ_d).
    pub fn canonical_string(&self) -> String {
        match self {
            FieldElement::Rational(r) => rational_string(r),
            FieldElement::Fp { value, .. } => value.to_string(),
            FieldElement::Cyclo(c) => {
                let parts: Vec<_> = c.coeffs.iter().map(rational_string).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |d: u64| -> Vec<i64> {
            cyclotomic_polynomial(d)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_relation() {
        // ζ² + ζ + 1 = 0 in ℚ(ζ₃)
        let desc = FieldDescriptor::Cyclotomic(3);
        let z = desc.zeta_power(1).unwrap();
        let sum = z.mul(&z).add(&z).add(&desc.one());
        assert!(sum.is_zero());
        // ζ³ = 1
        assert!(z.pow(3).is_one());
    }

    #[test]
    fn cyclo_inverse() {
        let desc = FieldDescriptor::Cyclotomic(5);
        let z = desc.zeta_power(1).unwrap();
        let x = z.add(&desc.from_i64(2)); // 2 + ζ
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
        assert_eq!(desc.zero().inv(), None);
    }

    #[test]
    fn fp_arithmetic() {
        let desc = FieldDescriptor::Prime(7);
        let a = desc.from_i64(-3); // = 4
        assert_eq!(a.canonical_string(), "4");
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(a.pow(-2), a.inv().unwrap().mul(&a.inv().unwrap()));
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!(
            FieldDescriptor::parse("rational").unwrap(),
            FieldDescriptor::Rational
        );
        assert_eq!(
            FieldDescriptor::parse("fp:7").unwrap(),
            FieldDescriptor::Prime(7)
        );
        assert_eq!(
            FieldDescriptor::parse("cyclo:5").unwrap(),
            FieldDescriptor::Cyclotomic(5)
        );
        assert!(FieldDescriptor::parse("fp:6").is_err());
        assert!(FieldDescriptor::parse("real").is_err());
    }

    #[test]
    fn q_literal_parsing() {
        let fp = FieldDescriptor::Prime(5);
        assert_eq!(fp.parse_q("3").unwrap(), fp.from_i64(3));
        assert_eq!(fp.parse_q("-1").unwrap(), fp.from_i64(4));
        let cyc = FieldDescriptor::Cyclotomic(3);
        assert_eq!(cyc.parse_q("zeta^2").unwrap(), cyc.zeta_power(2).unwrap());
        assert!(cyc.parse_q("2").is_err());
        assert!(FieldDescriptor::Rational.parse_q("zeta^1").is_err());
    }

    #[test]
    fn canonical_element_round_trip() {
        let cyc = FieldDescriptor::Cyclotomic(5);
        let x = cyc
            .zeta_power(3)
            .unwrap()
            .add(&cyc.from_i64(2))
            .inv()
            .unwrap();
        let s = x.canonical_string();
        assert_eq!(cyc.parse_element(&s).unwrap(), x);

        let rat = FieldDescriptor::Rational;
        let y = FieldElement::Rational(BigRational::new(BigInt::from(-7), BigInt::from(3)));
        assert_eq!(rat.parse_element(&y.canonical_string()).unwrap(), y);
    }
}
