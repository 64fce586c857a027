//! Simply-laced root-system combinatorics in fundamental-weight
//! coordinates: Cartan data, the dominance order, Weyl-orbit reduction,
//! and level-by-level weight enumeration.
//!
//! Node numbering (stable; cache keys depend on it):
//! - `A<n>`: a path `0 — 1 — … — n-1`.
//! - `D<n>`: a chain `0 — 1 — … — n-3` with both `n-2` and `n-1`
//!   attached to `n-3` (so `D4` has center node `1`).
//! - `E6/E7/E8`: chain `0 — 2 — 3 — 4 — 5 (— 6 (— 7))` with node `1`
//!   attached to node `3`.
//!
//! Weights are integer vectors in the fundamental-weight basis, so
//! `⟨μ, α_i∨⟩` is simply the i-th coordinate, and the simple root `α_i`
//! is the i-th column of the Cartan matrix.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Simply-laced families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootFamily {
    A,
    D,
    E,
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scaled(-1)
    }

    /// True when every coordinate is divisible by `k`; then the quotient.
    pub fn divided(&self, k: i64) -> Option<Weight> {
        if self.0.iter().all(|c| c % k == 0) {
            Some(Weight(self.0.iter().map(|c| c / k).collect()))
        } else {
            None
        }
    }

    /// Parse a comma-separated coordinate list, e.g. `1,0,-2`.
    pub fn parse(s: &str, rank: usize) -> Result<Weight> {
        let coords: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|c| c.trim().parse::<i64>()).collect();
        let coords =
            coords.map_err(|_| Error::InvalidDescriptor(format!("bad weight literal `{s}`")))?;
        if coords.len() != rank {
            return Err(Error::InvalidDescriptor(format!(
                "weight `{s}` has {} coordinates, expected {rank}",
                coords.len()
            )));
        }
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A simply-laced root system with its Cartan matrix and exact inverse
/// data (adjugate over the determinant).
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: RootFamily,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    det: i64,
    adjugate: Vec<Vec<i64>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}
impl Eq for RootSystem {}

impl RootSystem {
    pub fn new(family: RootFamily, rank: usize) -> Result<Self> {
        let ok = match family {
            RootFamily::A => rank >= 1,
            RootFamily::D => rank >= 4,
            RootFamily::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidDescriptor(format!(
                "unsupported root system {family:?}{rank}"
            )));
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |i: usize, j: usize, cartan: &mut Vec<Vec<i64>>| {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        };
        match family {
            RootFamily::A => {
                for i in 0..rank - 1 {
                    link(i, i + 1, &mut cartan);
                }
            }
            RootFamily::D => {
                for i in 0..rank - 3 {
                    link(i, i + 1, &mut cartan);
                }
                link(rank - 2, rank - 3, &mut cartan);
                link(rank - 1, rank - 3, &mut cartan);
            }
            RootFamily::E => {
                link(0, 2, &mut cartan);
                for i in 2..rank - 1 {
                    link(i, i + 1, &mut cartan);
                }
                link(1, 3, &mut cartan);
            }
        }
        let (det, adjugate) = adjugate_and_det(&cartan);
        assert!(det > 0, "Cartan matrix must have positive determinant");
        Ok(RootSystem {
            family,
            rank,
            cartan,
            det,
            adjugate,
        })
    }

    /// Parse a descriptor `A<n>`, `D<n>`, `E6|E7|E8`.
    pub fn parse(s: &str) -> Result<Self> {
        let (family, rest) = match s.chars().next() {
            Some('A') => (RootFamily::A, &s[1..]),
            Some('D') => (RootFamily::D, &s[1..]),
            Some('E') => (RootFamily::E, &s[1..]),
            _ => {
                return Err(Error::InvalidDescriptor(format!(
                    "unknown root-system descriptor `{s}`"
                )))
            }
        };
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad rank in `{s}`")))?;
        Self::new(family, rank)
    }

    pub fn family(&self) -> RootFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn det_cartan(&self) -> i64 {
        self.det
    }

    pub fn descriptor(&self) -> String {
        let letter = match self.family {
            RootFamily::A => 'A',
            RootFamily::D => 'D',
            RootFamily::E => 'E',
        };
        format!("{letter}{}", self.rank)
    }

    fn check_index(&self, alpha: usize) -> Result<()> {
        if alpha < self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: alpha,
                rank: self.rank,
            })
        }
    }

    fn check_rank(&self, w: &Weight) {
        assert_eq!(w.rank(), self.rank, "weight rank mismatch");
    }

    /// `⟨μ, α∨⟩` — a coordinate read in the fundamental-weight basis.
    pub fn pairing(&self, mu: &Weight, alpha: usize) -> Result<i64> {
        self.check_index(alpha)?;
        self.check_rank(mu);
        Ok(mu.0[alpha])
    }

    /// The simple root `α_i` expressed in the fundamental-weight basis:
    /// the i-th column of the Cartan matrix.
    pub fn simple_root_as_weight(&self, alpha: usize) -> Result<Weight> {
        self.check_index(alpha)?;
        Ok(Weight((0..self.rank).map(|j| self.cartan[j][alpha]).collect()))
    }

    /// Dominance order: when `μ ≤ λ`, the unique non-negative integer
    /// vector `(c_α)` with `λ - μ = Σ c_α α`, found by solving the Cartan
    /// system exactly (adjugate over determinant, then integrality and
    /// non-negativity checks).
    pub fn leq(&self, mu: &Weight, lambda: &Weight) -> Option<Vec<i64>> {
        self.check_rank(mu);
        self.check_rank(lambda);
        let diff = lambda.sub(mu);
        let mut coeffs = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut acc: i128 = 0;
            for j in 0..self.rank {
                acc += self.adjugate[i][j] as i128 * diff.0[j] as i128;
            }
            if acc % self.det as i128 != 0 {
                return None;
            }
            let c = acc / self.det as i128;
            if c < 0 {
                return None;
            }
            coeffs.push(c as i64);
        }
        Some(coeffs)
    }

    /// Height of `λ - μ` in the root lattice, when `μ ≤ λ`.
    pub fn height_below(&self, mu: &Weight, lambda: &Weight) -> Option<i64> {
        self.leq(mu, lambda).map(|c| c.iter().sum())
    }

    /// The unique dominant weight in the Weyl orbit of `μ`, by repeated
    /// simple reflections at negative coordinates.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        self.check_rank(mu);
        let mut w = mu.clone();
        loop {
            match w.0.iter().position(|&c| c < 0) {
                None => return w,
                Some(i) => {
                    // s_i(μ) = μ - ⟨μ, α_i∨⟩ α_i
                    let c = w.0[i];
                    for j in 0..self.rank {
                        w.0[j] -= c * self.cartan[j][i];
                    }
                }
            }
        }
    }

    /// True iff `μ` lies in the convex hull of the Weyl orbit of the
    /// dominant weight `λ` intersected with `λ + ℤR`, i.e.
    /// `dominant_conjugate(μ) ≤ λ`.
    pub fn weyl_polytope_member(&self, mu: &Weight, lambda: &Weight) -> Result<bool> {
        if !lambda.is_dominant() {
            return Err(Error::NonDominant(lambda.to_string()));
        }
        Ok(self.leq(&self.dominant_conjugate(mu), lambda).is_some())
    }

    /// Height of the lowest Weyl-orbit point below `λ`: the maximal
    /// height any weight of the polytope of `λ` can have.
    pub fn polytope_height(&self, lambda: &Weight) -> Result<i64> {
        if !lambda.is_dominant() {
            return Err(Error::NonDominant(lambda.to_string()));
        }
        let lowest = self.dominant_conjugate(&lambda.neg()).neg();
        Ok(self
            .height_below(&lowest, lambda)
            .expect("the lowest orbit weight lies below lambda"))
    }

    /// Levels `0..=max_height` of the cone `λ - ℕΠ`: level `h` holds
    /// exactly the weights `λ - Σ c_α α` with `Σ c_α = h`, in lexicographic
    /// coordinate order.
    pub fn enumerate_levels(&self, lambda: &Weight, max_height: i64) -> Vec<Vec<Weight>> {
        self.check_rank(lambda);
        assert!(max_height >= 0);
        let simples: Vec<Weight> = (0..self.rank)
            .map(|i| self.simple_root_as_weight(i).unwrap())
            .collect();
        let mut levels = vec![vec![lambda.clone()]];
        for _ in 1..=max_height {
            let prev = levels.last().unwrap();
            let mut next = BTreeSet::new();
            for w in prev {
                for alpha in &simples {
                    next.insert(w.sub(alpha));
                }
            }
            levels.push(next.into_iter().collect());
        }
        levels
    }

    /// All positive roots, in fundamental-weight coordinates. In the
    /// simply-laced case every positive root of height `h+1` is `γ + α`
    /// for a positive root `γ` of height `h` and simple `α` with
    /// `⟨γ, α∨⟩ = -1`.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let simples: Vec<Weight> = (0..self.rank)
            .map(|i| self.simple_root_as_weight(i).unwrap())
            .collect();
        let mut all: BTreeSet<Weight> = simples.iter().cloned().collect();
        let mut frontier: Vec<Weight> = simples.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for gamma in &frontier {
                for (i, alpha) in simples.iter().enumerate() {
                    if gamma.0[i] == -1 {
                        let cand = gamma.add(alpha);
                        if all.insert(cand.clone()) {
                            next.push(cand);
                        }
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }

    /// The Weyl vector ρ (all-ones in fundamental coordinates).
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// Inner product scaled by `det(Cartan)`: `det·(μ, ν)` with the
    /// normalization `(α, α) = 2` for all roots. Always an integer.
    pub fn inner_scaled(&self, mu: &Weight, nu: &Weight) -> i128 {
        self.check_rank(mu);
        self.check_rank(nu);
        let mut acc: i128 = 0;
        for i in 0..self.rank {
            if mu.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += mu.0[i] as i128 * self.adjugate[i][j] as i128 * nu.0[j] as i128;
            }
        }
        acc
    }
}

/// Determinant and adjugate of a small integer matrix, via exact
/// rational elimination.
fn adjugate_and_det(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    // augmented [M | I] over the rationals
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from(BigInt::from(m[i][j]))
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..2 * n {
            a[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let adj = &f * &a[col][j];
                    a[r][j] -= adj;
                }
            }
        }
    }
    assert!(det.is_integer() && det.numer().is_positive());
    let det_int = i64::try_from(det.numer()).unwrap();
    let adjugate = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let scaled = &a[i][n + j] * &det;
                    assert!(scaled.is_integer(), "adjugate entry must be integral");
                    i64::try_from(scaled.numer()).unwrap()
                })
                .collect()
        })
        .collect();
    (det_int, adjugate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(coords: &[i64]) -> Weight {
        Weight(coords.to_vec())
    }

    #[test]
    fn cartan_determinants() {
        for (desc, det) in [
            ("A1", 2),
            ("A2", 3),
            ("A5", 6),
            ("D4", 4),
            ("D5", 4),
            ("E6", 3),
            ("E7", 2),
            ("E8", 1),
        ] {
            assert_eq!(RootSystem::parse(desc).unwrap().det_cartan(), det, "{desc}");
        }
        assert!(RootSystem::parse("D3").is_err());
        assert!(RootSystem::parse("E9").is_err());
        assert!(RootSystem::parse("B2").is_err());
    }

    #[test]
    fn pairing_reads_coordinates() {
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.pairing(&w(&[1, 1]), 0).unwrap(), 1);
        let alpha0 = a2.simple_root_as_weight(0).unwrap();
        assert_eq!(alpha0, w(&[2, -1]));
        assert_eq!(a2.pairing(&alpha0, 1).unwrap(), -1);
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.pairing(&w(&[-3]), 0).unwrap(), -3);
        assert!(a1.pairing(&w(&[-3]), 1).is_err());
    }

    #[test]
    fn simple_roots_are_cartan_columns() {
        let d4 = RootSystem::parse("D4").unwrap();
        // node 1 is the center of D4 in this numbering
        assert_eq!(d4.simple_root_as_weight(1).unwrap(), w(&[-1, 2, -1, -1]));
        for rs in ["A3", "D5", "E6", "E8"] {
            let rs = RootSystem::parse(rs).unwrap();
            for i in 0..rs.rank() {
                let alpha = rs.simple_root_as_weight(i).unwrap();
                for j in 0..rs.rank() {
                    assert_eq!(alpha.0[j], rs.cartan()[j][i]);
                }
            }
        }
    }

    #[test]
    fn leq_solves_the_cartan_system() {
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.leq(&w(&[1, 1]), &w(&[1, 1])), Some(vec![0, 0]));
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.leq(&w(&[-2]), &w(&[2])), Some(vec![2]));
        // (1,0) - (0,0) is not in the root lattice of A2
        assert_eq!(a2.leq(&w(&[0, 0]), &w(&[1, 0])), None);
        // positivity is required, not just integrality
        assert_eq!(a1.leq(&w(&[2]), &w(&[-2])), None);
        assert_eq!(a2.leq(&w(&[0, 0]), &w(&[1, 1])), Some(vec![1, 1]));
    }

    #[test]
    fn leq_is_a_partial_order() {
        let a2 = RootSystem::parse("A2").unwrap();
        let box_weights: Vec<Weight> = (-4..=4)
            .flat_map(|a| (-4..=4).map(move |b| w(&[a, b])))
            .collect();
        for x in &box_weights {
            assert_eq!(a2.leq(x, x), Some(vec![0, 0]));
            for y in &box_weights {
                if x != y && a2.leq(x, y).is_some() {
                    assert!(a2.leq(y, x).is_none(), "antisymmetry {x} {y}");
                }
                for z in &box_weights {
                    if let (Some(cxy), Some(cyz)) = (a2.leq(x, y), a2.leq(y, z)) {
                        let cxz = a2.leq(x, z).expect("transitivity");
                        for i in 0..2 {
                            assert_eq!(cxz[i], cxy[i] + cyz[i]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dominant_conjugate_examples() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.dominant_conjugate(&w(&[-3])), w(&[3]));
        assert_eq!(a1.dominant_conjugate(&w(&[3])), w(&[3]));
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.dominant_conjugate(&w(&[-1, 2])), w(&[1, 1]));
        // idempotent and reflection-invariant
        for a in -3..=3 {
            for b in -3..=3 {
                let mu = w(&[a, b]);
                let dom = a2.dominant_conjugate(&mu);
                assert!(dom.is_dominant());
                assert_eq!(a2.dominant_conjugate(&dom), dom);
                for i in 0..2 {
                    let mut refl = mu.clone();
                    let c = refl.0[i];
                    for j in 0..2 {
                        refl.0[j] -= c * a2.cartan()[j][i];
                    }
                    assert_eq!(a2.dominant_conjugate(&refl), dom);
                }
            }
        }
    }

    #[test]
    fn level_enumeration() {
        let a1 = RootSystem::parse("A1").unwrap();
        let levels = a1.enumerate_levels(&w(&[2]), 2);
        assert_eq!(
            levels,
            vec![vec![w(&[2])], vec![w(&[0])], vec![w(&[-2])]]
        );
        let a2 = RootSystem::parse("A2").unwrap();
        let levels = a2.enumerate_levels(&w(&[1, 0]), 1);
        assert_eq!(levels[1], vec![w(&[-1, 1]), w(&[2, -2])]);
        // level sizes are composition counts C(h+r-1, r-1)
        let a3 = RootSystem::parse("A3").unwrap();
        let levels = a3.enumerate_levels(&w(&[0, 0, 0]), 5);
        for (h, level) in levels.iter().enumerate() {
            let expected = num_integer::binomial(h + 2, 2);
            assert_eq!(level.len(), expected, "height {h}");
        }
        // every enumerated weight answers to leq with the right height
        for (h, level) in a2.enumerate_levels(&w(&[2, 1]), 4).iter().enumerate() {
            for mu in level {
                let coeffs = a2.leq(mu, &w(&[2, 1])).unwrap();
                assert_eq!(coeffs.iter().sum::<i64>(), h as i64);
            }
        }
    }

    #[test]
    fn polytope_membership() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert!(a1.weyl_polytope_member(&w(&[0]), &w(&[2])).unwrap());
        assert!(!a1.weyl_polytope_member(&w(&[-4]), &w(&[2])).unwrap());
        let a2 = RootSystem::parse("A2").unwrap();
        assert!(a2.weyl_polytope_member(&w(&[0, 0]), &w(&[1, 1])).unwrap());
        assert!(a2.weyl_polytope_member(&w(&[1, 0]), &w(&[-1, 0])).is_err());
        assert_eq!(a1.polytope_height(&w(&[3])).unwrap(), 3);
        // A2 adjoint: lowest weight is -(1,1), height of (1,1)-(-1,-1) is 4
        assert_eq!(a2.polytope_height(&w(&[1, 1])).unwrap(), 4);
    }

    #[test]
    fn positive_root_counts() {
        for (desc, count) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            let rs = RootSystem::parse(desc).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{desc}");
        }
    }

    #[test]
    fn inner_product_normalization() {
        // every root has squared length 2
        for desc in ["A2", "D4", "E6"] {
            let rs = RootSystem::parse(desc).unwrap();
            let det = rs.det_cartan() as i128;
            for gamma in rs.positive_roots() {
                assert_eq!(rs.inner_scaled(&gamma, &gamma), 2 * det, "{desc} {gamma}");
            }
            // (ω_i, α_j) = δ_ij
            for i in 0..rs.rank() {
                let mut e = Weight::zero(rs.rank());
                e.0[i] = 1;
                for j in 0..rs.rank() {
                    let alpha = rs.simple_root_as_weight(j).unwrap();
                    let expected = if i == j { det } else { 0 };
                    assert_eq!(rs.inner_scaled(&e, &alpha), expected);
                }
            }
        }
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(Weight::parse("1,0,-2", 3).unwrap(), w(&[1, 0, -2]));
        assert!(Weight::parse("1,0", 3).is_err());
        assert!(Weight::parse("1,x", 2).is_err());
    }
}
