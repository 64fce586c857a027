//! Quantum integers `[n]` and quantum binomial coefficients `[a over b]`
//! as exact elements of ℤ[v,v⁻¹].
//!
//! Binomials are never computed by dividing in a coefficient field. For
//! `a ≥ 0` we run the Pascal recurrence for the one-variable Gaussian
//! binomial in `w`, whose coefficients are non-negative integers, and
//! transform by `w = v²` together with the exponent shift `v^{-b(a-b)}`.
//! For `a < 0` we first apply the inversion formula
//! `[a over b] = (-1)^b [b-a-1 over b]`. Results are memoized on `(a, b)`.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;

/// The quantum integer `[n] = v^{n-1} + v^{n-3} + … + v^{-n+1}`,
/// with `[0] = 0` and `[-n] = -[n]`.
pub fn quantum_integer(n: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let m = n.abs();
    for i in 0..m {
        out += &LaurentPoly::monomial(m - 1 - 2 * i, BigInt::one());
    }
    if n < 0 {
        out = -&out;
    }
    out
}

/// A dense polynomial in `w` with coefficients indexed by exponent.
pub(crate) type WDense = Vec<BigInt>;

/// Rows of the Pascal triangle for the `w`-Gaussian binomial, computed
/// iteratively so that only one row is live at a time. Row `a` holds
/// the entries `b = 0 ..= min(a, max_b)`; the entry at `b` is the
/// Gaussian binomial of degree `b(a-b)`.
pub(crate) struct GaussianRows {
    row: Vec<WDense>,
    a: i64,
    max_b: i64,
}

impl GaussianRows {
    pub fn new(max_b: i64) -> Self {
        assert!(max_b >= 0);
        GaussianRows {
            row: vec![vec![BigInt::one()]],
            a: 0,
            max_b,
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// Entries of the current row; index `b` is valid for `b ≤ min(a, max_b)`.
    pub fn row(&self) -> &[WDense] {
        &self.row
    }

    /// Step from row `a` to row `a + 1` via
    /// `C(a+1, b) = C(a, b) + w^{a+1-b} · C(a, b-1)`.
    pub fn advance(&mut self) {
        let a = self.a + 1;
        let top = a.min(self.max_b) as usize;
        let mut next: Vec<WDense> = Vec::with_capacity(top + 1);
        for b in 0..=top {
            let deg = b * (a as usize - b);
            let mut p = vec![BigInt::zero(); deg + 1];
            if let Some(prev) = self.row.get(b) {
                for (i, c) in prev.iter().enumerate() {
                    p[i] += c;
                }
            }
            if b >= 1 {
                if let Some(prev) = self.row.get(b - 1) {
                    let off = a as usize - b;
                    for (i, c) in prev.iter().enumerate() {
                        p[off + i] += c;
                    }
                }
            }
            next.push(p);
        }
        self.row = next;
        self.a = a;
    }
}

/// The `w`-Gaussian binomial for `0 ≤ b ≤ a`, by row sweep.
pub(crate) fn gaussian_w_poly(a: i64, b: i64) -> WDense {
    assert!(0 <= b && b <= a);
    let mut rows = GaussianRows::new(b);
    while rows.a() < a {
        rows.advance();
    }
    rows.row()[b as usize].clone()
}

/// Transform a `w`-Gaussian binomial into the bar-invariant quantum
/// binomial: substitute `w = v²` and shift by `v^{-b(a-b)}`.
pub(crate) fn laurent_from_gaussian(a: i64, b: i64, w_poly: &WDense) -> LaurentPoly {
    let shift = -(b * (a - b));
    let mut out = LaurentPoly::zero();
    for (i, c) in w_poly.iter().enumerate() {
        if !c.is_zero() {
            out += &LaurentPoly::monomial(2 * i as i64 + shift, c.clone());
        }
    }
    out
}

static ZERO: LazyLock<Arc<LaurentPoly>> = LazyLock::new(|| Arc::new(LaurentPoly::zero()));
static ONE: LazyLock<Arc<LaurentPoly>> = LazyLock::new(|| Arc::new(LaurentPoly::one()));

static MEMO: LazyLock<Mutex<HashMap<(i64, i64), Arc<LaurentPoly>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The quantum binomial coefficient `[a over b]` in ℤ[v,v⁻¹], for all
/// integers `a, b`, with `[a over b] = 0` for `b < 0`.
pub fn quantum_binomial(a: i64, b: i64) -> Arc<LaurentPoly> {
    if b < 0 {
        return ZERO.clone();
    }
    if b == 0 {
        return ONE.clone();
    }
    if a >= 0 && b > a {
        return ZERO.clone();
    }
    if let Some(hit) = MEMO.lock().unwrap().get(&(a, b)) {
        return hit.clone();
    }
    let value = if a < 0 {
        // inversion formula: [a over b] = (-1)^b [b-a-1 over b]
        let base = quantum_binomial(b - a - 1, b);
        if b % 2 == 0 {
            base
        } else {
            Arc::new(-&*base)
        }
    } else {
        Arc::new(laurent_from_gaussian(a, b, &gaussian_w_poly(a, b)))
    };
    MEMO.lock()
        .unwrap()
        .entry((a, b))
        .or_insert(value)
        .clone()
}

#[doc(hidden)]
pub(crate) fn poison_memo(a: i64, b: i64, wrong: LaurentPoly) {
    MEMO.lock().unwrap().insert((a, b), Arc::new(wrong));
}

/// The ordinary binomial coefficient `C(a, b)` extended by `0` for `b < 0`,
/// valid for all integers (e.g. `C(-1, 2) = 1`).
pub fn integer_binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    if a < 0 {
        let base = integer_binomial(b - a - 1, b);
        return if b % 2 == 0 { base } else { -base };
    }
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut out = BigInt::one();
    for i in 0..b {
        out = out * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, BigInt::one())
    }

    /// Independent oracle: the defining product formula
    /// `[a][a-1]⋯[a-b+1] / ([1][2]⋯[b])`, by exact division in ℤ[v,v⁻¹].
    fn binomial_by_product(a: i64, b: i64) -> LaurentPoly {
        if b < 0 {
            return LaurentPoly::zero();
        }
        if b == 0 {
            return LaurentPoly::one();
        }
        let mut num = LaurentPoly::one();
        let mut den = LaurentPoly::one();
        for i in 0..b {
            num = &num * &quantum_integer(a - i);
            den = &den * &quantum_integer(i + 1);
        }
        num.checked_div(&den)
            .expect("quantum binomial is an element of Z[v,v^-1]")
    }

    #[test]
    fn quantum_integer_closed_form() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(quantum_integer(3), &(&v(2) + &v(0)) + &v(-2));
        assert_eq!(quantum_integer(-2), -&(&v(1) + &v(-1)));
        for n in -9..=9 {
            assert_eq!(quantum_integer(-n), -&quantum_integer(n));
        }
    }

    #[test]
    fn binomial_base_cases() {
        assert!(quantum_binomial(7, -1).is_zero());
        assert_eq!(*quantum_binomial(7, 0), LaurentPoly::one());
        assert!(quantum_binomial(3, 5).is_zero());
        assert_eq!(*quantum_binomial(5, 1), quantum_integer(5));
    }

    #[test]
    fn binomial_4_2() {
        let expected = &(&(&v(4) + &v(2)) + &LaurentPoly::from_integer(2)) + &(&v(-2) + &v(-4));
        assert_eq!(*quantum_binomial(4, 2), expected);
        assert_eq!(binomial_by_product(4, 2), expected);
    }

    #[test]
    fn binomial_negative_a() {
        // [-1 over 2] = [2 over 2] = 1, cross-checked with the product formula
        assert_eq!(*quantum_binomial(-1, 2), LaurentPoly::one());
        assert_eq!(binomial_by_product(-1, 2), LaurentPoly::one());
    }

    #[test]
    fn pascal_route_matches_product_route() {
        for a in -8..=8 {
            for b in -2..=8 {
                assert_eq!(
                    *quantum_binomial(a, b),
                    binomial_by_product(a, b),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn bar_invariance_and_symmetry() {
        for a in -8..=8i64 {
            for b in -2..=8i64 {
                assert!(quantum_binomial(a, b).is_bar_invariant(), "a={a} b={b}");
            }
        }
        for a in 0..=8i64 {
            for b in 0..=a {
                assert_eq!(quantum_binomial(a, b), quantum_binomial(a, a - b));
            }
        }
    }

    #[test]
    fn integer_binomial_matches_quantum_at_one() {
        for a in -6..=8i64 {
            for b in -2..=8i64 {
                let at_one: BigInt = quantum_binomial(a, b).terms().map(|(_, c)| c).sum();
                assert_eq!(at_one, integer_binomial(a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn gaussian_rows_match_direct() {
        let mut rows = GaussianRows::new(4);
        for _ in 0..10 {
            rows.advance();
        }
        for b in 0..=4i64 {
            assert_eq!(rows.row()[b as usize], gaussian_w_poly(10, b));
        }
    }
}
