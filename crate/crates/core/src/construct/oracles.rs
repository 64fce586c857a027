//! Independent character oracles used to cross-check the construction:
//! the Freudenthal recursion (characteristic zero), the rank-1 Gram
//! diagonal, and the rank-1 digit formula for positive quantum
//! characteristic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gspace::object::Character;
use crate::qarith::{quantum_binomial, FieldContext};
use crate::roots::{RootSystem, Weight};

/// Weight multiplicities of the irreducible highest-weight module over
/// characteristic zero at `q = 1`, by the Freudenthal recursion
/// `(‖λ+ρ‖² - ‖μ+ρ‖²)·m_μ = 2 Σ_{γ>0} Σ_{k≥1} (μ+kγ, γ)·m_{μ+kγ}`.
pub fn freudenthal_character(rs: &RootSystem, lambda: &Weight) -> Result<Character> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominant(lambda.to_string()));
    }
    let positive = rs.positive_roots();
    let rho = rs.rho();
    let lambda_rho = lambda.add(&rho);
    let top_norm = rs.inner_scaled(&lambda_rho, &lambda_rho);

    let mut mults = Character::default();
    mults.insert(lambda.clone(), 1);
    let max_h = rs.polytope_height(lambda)?;
    let levels = rs.enumerate_levels(lambda, max_h);
    for level in levels.iter().skip(1) {
        for mu in level {
            if !rs.weyl_polytope_member(mu, lambda)? {
                continue;
            }
            let mu_rho = mu.add(&rho);
            let denom = top_norm - rs.inner_scaled(&mu_rho, &mu_rho);
            assert!(denom > 0, "Freudenthal denominator must be positive");
            let mut num: i128 = 0;
            for gamma in &positive {
                let mut nu = mu.add(gamma);
                while rs.leq(&nu, lambda).is_some() {
                    let m = mults.multiplicity(&nu);
                    if m > 0 {
                        num += m as i128 * rs.inner_scaled(&nu, gamma);
                    }
                    nu = nu.add(gamma);
                }
            }
            let scaled = 2 * num;
            assert!(
                scaled % denom == 0,
                "Freudenthal division must be exact at {mu}"
            );
            let m = scaled / denom;
            assert!(m >= 1, "polytope weights of the coset have multiplicity >= 1");
            mults.insert(mu.clone(), m as u64);
        }
    }
    Ok(mults)
}

/// Total dimension by the Weyl dimension formula
/// `∏_{γ>0} (λ+ρ, γ) / (ρ, γ)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominant(lambda.to_string()));
    }
    let rho = rs.rho();
    let lambda_rho = lambda.add(&rho);
    let mut acc = BigRational::one();
    for gamma in rs.positive_roots() {
        let num = rs.inner_scaled(&lambda_rho, &gamma);
        let den = rs.inner_scaled(&rho, &gamma);
        acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    assert!(acc.is_integer());
    Ok(u64::try_from(acc.numer()).expect("desk-scale dimension"))
}

/// Rank-1 oracle from the diagonal Gram matrix: the weight `n - 2k`
/// survives in the simple module exactly when `[n over k]` does not
/// vanish in the context.
pub fn rank1_gram_character(ctx: &FieldContext, n: i64) -> Result<Character> {
    if n < 0 {
        return Err(Error::NonDominant(format!("{n}")));
    }
    let mut out = Character::default();
    for k in 0..=n {
        if !ctx.evaluate(&quantum_binomial(n, k)).is_zero() {
            out.insert(Weight(vec![n - 2 * k]), 1);
        }
    }
    Ok(out)
}

/// Rank-1 oracle from the digit formula: multiplicity-one weights
/// `n - 2·Σ jᵢ·(layer radix)` where the first digit is taken base ℓ and
/// the remaining layers base `inner_ell_prime` (a full unconstrained
/// layer when the inner characteristic is zero).
pub fn rank1_digit_character(ell: u64, inner_ell_prime: u64, n: i64) -> Result<Character> {
    if n < 0 || ell == 0 {
        return Err(Error::InvalidDescriptor(
            "digit oracle needs n >= 0 and ell > 0".into(),
        ));
    }
    let l = ell as i64;
    let n0 = n % l;
    let n1 = n / l;
    let mut out = Character::default();
    for j1 in digit_combinations(n1, inner_ell_prime as i64) {
        for j0 in 0..=n0 {
            out.insert(Weight(vec![n - 2 * (j0 + l * j1)]), 1);
        }
    }
    Ok(out)
}

/// All `j` that are digitwise bounded by `m` in the given base; base 0
/// means no digit constraint (characteristic-zero layer): `0..=m`.
fn digit_combinations(m: i64, base: i64) -> Vec<i64> {
    if base == 0 {
        return (0..=m).collect();
    }
    if m == 0 {
        return vec![0];
    }
    let d = m % base;
    let rest = m / base;
    let mut out = Vec::new();
    for tail in digit_combinations(rest, base) {
        for j in 0..=d {
            out.push(j + base * tail);
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_simple, BuildPolicy, BuildRequest};

    fn a1() -> RootSystem {
        RootSystem::parse("A1").unwrap()
    }

    #[test]
    fn freudenthal_rank1_strings() {
        let rs = a1();
        for n in 0..=6 {
            let ch = freudenthal_character(&rs, &Weight(vec![n])).unwrap();
            assert_eq!(ch.total_dim(), (n + 1) as u64);
            for k in 0..=n {
                assert_eq!(ch.multiplicity(&Weight(vec![n - 2 * k])), 1);
            }
        }
    }

    #[test]
    fn freudenthal_a2_adjoint_and_fifteen() {
        let rs = RootSystem::parse("A2").unwrap();
        let adjoint = freudenthal_character(&rs, &Weight(vec![1, 1])).unwrap();
        assert_eq!(adjoint.total_dim(), 8);
        assert_eq!(adjoint.multiplicity(&Weight(vec![0, 0])), 2);
        let fifteen = freudenthal_character(&rs, &Weight(vec![2, 1])).unwrap();
        assert_eq!(fifteen.total_dim(), 15);
        assert_eq!(weyl_dimension(&rs, &Weight(vec![1, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&rs, &Weight(vec![2, 1])).unwrap(), 15);
    }

    #[test]
    fn freudenthal_matches_weyl_dimension_on_a_grid() {
        for desc in ["A2", "A3", "D4"] {
            let rs = RootSystem::parse(desc).unwrap();
            let mut fundamentals = Vec::new();
            for i in 0..rs.rank() {
                let mut w = Weight::zero(rs.rank());
                w.0[i] = 1;
                fundamentals.push(w);
            }
            for lambda in fundamentals {
                let ch = freudenthal_character(&rs, &lambda).unwrap();
                assert_eq!(
                    ch.total_dim(),
                    weyl_dimension(&rs, &lambda).unwrap(),
                    "{desc} {lambda}"
                );
            }
        }
    }

    #[test]
    fn d4_fundamental_dimensions() {
        let rs = RootSystem::parse("D4").unwrap();
        // nodes 0,2,3 are the three 8-dimensional representations;
        // node 1 (the center) is the 28-dimensional adjoint
        let expected = [8u64, 28, 8, 8];
        for (i, &dim) in expected.iter().enumerate() {
            let mut w = Weight::zero(4);
            w.0[i] = 1;
            assert_eq!(weyl_dimension(&rs, &w).unwrap(), dim, "node {i}");
        }
    }

    #[test]
    fn gram_oracle_examples() {
        let rational = FieldContext::parse("rational", "1").unwrap();
        let full = rank1_gram_character(&rational, 4).unwrap();
        assert_eq!(full.total_dim(), 5);

        let f2 = FieldContext::parse("fp:2", "1").unwrap();
        let two = rank1_gram_character(&f2, 2).unwrap();
        assert_eq!(two.total_dim(), 2);
        assert_eq!(two.multiplicity(&Weight(vec![2])), 1);
        assert_eq!(two.multiplicity(&Weight(vec![-2])), 1);

        // C(5,k) mod 2 vanishes except k in {0,1,4,5}
        let five = rank1_gram_character(&f2, 5).unwrap();
        assert_eq!(five.total_dim(), 4);
        for w in [5i64, 3, -3, -5] {
            assert_eq!(five.multiplicity(&Weight(vec![w])), 1, "weight {w}");
        }
        assert!(rank1_gram_character(&f2, -1).is_err());
    }

    #[test]
    fn digit_oracle_examples() {
        let four = rank1_digit_character(2, 2, 3).unwrap();
        assert_eq!(four.total_dim(), 4);
        for w in [3i64, 1, -1, -3] {
            assert_eq!(four.multiplicity(&Weight(vec![w])), 1);
        }
        // one quantum layer, one characteristic-zero layer
        let mixed = rank1_digit_character(3, 0, 4).unwrap();
        assert_eq!(mixed.total_dim(), 4);
        // restricted weight: a single digit, full string
        let full = rank1_digit_character(5, 0, 4).unwrap();
        assert_eq!(full.total_dim(), 5);
        for k in 0..=4i64 {
            assert_eq!(full.multiplicity(&Weight(vec![4 - 2 * k])), 1);
        }
    }

    #[test]
    fn oracles_agree_with_builds_on_a_small_grid() {
        // characteristic zero
        let rs = RootSystem::parse("A2").unwrap();
        let ctx = FieldContext::parse("rational", "1").unwrap();
        for a in 0..=2 {
            for b in 0..=2 {
                let lambda = Weight(vec![a, b]);
                let req = BuildRequest::new(
                    rs.clone(),
                    ctx.clone(),
                    lambda.clone(),
                    BuildPolicy::DominantAuto,
                );
                let built = build_simple(&req).unwrap().character();
                let oracle = freudenthal_character(&rs, &lambda).unwrap();
                assert_eq!(built, oracle, "lambda={lambda}");
            }
        }
        // rank-1 positive characteristic
        let rs1 = a1();
        for (field, q, inner) in [("fp:2", "1", 2u64), ("cyclo:3", "zeta^1", 0)] {
            let ctx = FieldContext::parse(field, q).unwrap();
            for n in 0..=8 {
                let req = BuildRequest::new(
                    rs1.clone(),
                    ctx.clone(),
                    Weight(vec![n]),
                    BuildPolicy::DominantAuto,
                );
                let built = build_simple(&req).unwrap().character();
                let gram = rank1_gram_character(&ctx, n).unwrap();
                let digit = rank1_digit_character(ctx.ell(), inner, n).unwrap();
                assert_eq!(built, gram, "{field} n={n}");
                assert_eq!(built, digit, "{field} n={n}");
            }
        }
    }
}
