//! Level-by-level construction of the simple objects `S(λ)`: starting
//! from the skyscraper at λ, each new weight space is the image of
//! `G_{δμ}`, with `F_μ` the corestriction and `E_μ` the inclusion.

pub mod oracles;

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gspace::linalg::{rref, Matrix};
use crate::gspace::object::{CoefficientChoice, GradedObject, OperatorPair};
use crate::qarith::FieldContext;
use crate::roots::{RootSystem, Weight};

pub use oracles::{
    freudenthal_character, rank1_digit_character, rank1_gram_character, weyl_dimension,
};

/// How far to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildPolicy {
    /// Build all of `S(λ)` for dominant λ, using the Weyl-polytope
    /// support bound for termination.
    DominantAuto,
    /// Build the restriction to heights `0..=H` below λ. Mandatory for
    /// non-dominant λ, whose simple objects have unbounded support.
    FixedDepth(i64),
}

/// A build request: root system, coefficient context and choice, highest
/// weight, and termination policy.
#[derive(Clone, Debug)]
pub struct BuildRequest {
    pub rs: RootSystem,
    pub ctx: FieldContext,
    pub choice: CoefficientChoice,
    pub lambda: Weight,
    pub policy: BuildPolicy,
}

impl BuildRequest {
    pub fn new(rs: RootSystem, ctx: FieldContext, lambda: Weight, policy: BuildPolicy) -> Self {
        BuildRequest {
            rs,
            ctx,
            choice: CoefficientChoice::quantum_binomial_default(),
            lambda,
            policy,
        }
    }

    /// Canonical cache key for this request.
    pub fn cache_key(&self) -> String {
        let policy = match self.policy {
            BuildPolicy::DominantAuto => "auto".to_string(),
            BuildPolicy::FixedDepth(h) => format!("depth{h}"),
        };
        format!(
            "{}_{}_q{}_{}_l{}_{}",
            self.rs.descriptor(),
            self.ctx.descriptor(),
            crate::qarith::context::q_literal(self.ctx.descriptor(), self.ctx.q()),
            self.choice.tag(),
            self.lambda,
            policy
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Build the weights of one level in parallel. On or off, the result
    /// is identical.
    pub serial: bool,
}

/// Build `S(λ)` (or its truncation) per the request, with level-parallel
/// construction.
pub fn build_simple(req: &BuildRequest) -> Result<GradedObject> {
    build_simple_with(req, &BuildOptions::default())
}

/// What one weight contributed to its level.
struct BuiltWeight {
    mu: Weight,
    dim: usize,
    pivot_cols: Vec<usize>,
    /// (alpha, n, E block, F block)
    blocks: Vec<(usize, i64, Matrix, Matrix)>,
}

pub fn build_simple_with(req: &BuildRequest, opts: &BuildOptions) -> Result<GradedObject> {
    let dominant = req.lambda.is_dominant();
    match req.policy {
        BuildPolicy::DominantAuto if !dominant => {
            return Err(Error::NonDominant(req.lambda.to_string()))
        }
        BuildPolicy::FixedDepth(h) if h < 0 => {
            return Err(Error::InvalidDescriptor("negative build depth".into()))
        }
        _ => {}
    }
    let polytope_h = if dominant {
        Some(req.rs.polytope_height(&req.lambda)?)
    } else {
        None
    };
    let (max_h, truncated) = match req.policy {
        BuildPolicy::DominantAuto => (polytope_h.unwrap(), false),
        BuildPolicy::FixedDepth(h) => match polytope_h {
            Some(ph) if h >= ph => (ph, false),
            _ => (h, true),
        },
    };

    let mut obj = GradedObject::skyscraper(
        req.ctx.clone(),
        req.rs.clone(),
        req.choice.clone(),
        req.lambda.clone(),
    );

    let simples: Vec<Weight> = (0..req.rs.rank())
        .map(|i| req.rs.simple_root_as_weight(i).unwrap())
        .collect();
    // Frontier: weights of the current level inside the support bound.
    // Their simple-root descendants are the only candidates at the next
    // level; out-of-bound descendants form the shell, which must give
    // rank-zero images.
    let mut frontier: Vec<Weight> = vec![req.lambda.clone()];
    for _height in 1..=max_h {
        let candidates: BTreeSet<Weight> = frontier
            .iter()
            .flat_map(|w| simples.iter().map(move |a| w.sub(a)))
            .collect();
        let candidates: Vec<Weight> = candidates.into_iter().collect();
        let outcomes: Vec<Result<Option<BuiltWeight>>> = if opts.serial {
            candidates
                .iter()
                .map(|mu| build_weight(&obj, req, dominant, mu))
                .collect()
        } else {
            candidates
                .par_iter()
                .map(|mu| build_weight(&obj, req, dominant, mu))
                .collect()
        };
        frontier = Vec::new();
        for (mu, outcome) in candidates.iter().zip(outcomes) {
            if dominant_member(req, dominant, mu)? {
                frontier.push(mu.clone());
            }
            let Some(built) = outcome? else { continue };
            obj.insert_weight(built.mu.clone(), built.dim);
            obj.insert_pivots(built.mu.clone(), built.pivot_cols);
            for (alpha, n, e, f) in built.blocks {
                obj.insert_op((built.mu.clone(), alpha, n), OperatorPair { e, f });
            }
        }
    }
    obj.set_completeness(!truncated, truncated.then_some(max_h));
    Ok(obj)
}

fn dominant_member(req: &BuildRequest, dominant: bool, mu: &Weight) -> Result<bool> {
    if !dominant {
        return Ok(true);
    }
    req.rs.weyl_polytope_member(mu, &req.lambda)
}

fn build_weight(
    obj: &GradedObject,
    req: &BuildRequest,
    dominant: bool,
    mu: &Weight,
) -> Result<Option<BuiltWeight>> {
    let delta = obj.assemble_delta(mu);
    if delta.total_dim == 0 {
        return Ok(None);
    }
    let g = obj.g_delta(&delta, &req.choice);
    let elim = rref(&g);
    if !dominant_member(req, dominant, mu)? {
        // Shell weight: the support bound predicts a zero image here.
        if elim.rank != 0 {
            return Err(Error::Internal(format!(
                "nonzero image (rank {}) at {mu}, outside the Weyl polytope of {}",
                elim.rank, req.lambda
            )));
        }
        return Ok(None);
    }
    if elim.rank == 0 {
        return Ok(None);
    }
    // E_μ: the pivot columns of G themselves; F_μ: coordinates of every
    // column in the pivot basis. E_μ · F_μ = G by bookkeeping.
    let e_total = g.column_select(&elim.pivot_cols);
    let f_total = elim.reduced.row_slice(0, elim.rank);
    debug_assert_eq!(e_total.mul(&f_total), g, "E·F must reproduce G at {mu}");
    let mut blocks = Vec::with_capacity(delta.blocks.len());
    for block in &delta.blocks {
        let e = e_total.row_slice(block.offset, block.dim);
        let f = f_total.column_slice(block.offset, block.dim);
        blocks.push((block.alpha, block.n, e, f));
    }
    Ok(Some(BuiltWeight {
        mu: mu.clone(),
        dim: elim.rank,
        pivot_cols: elim.pivot_cols,
        blocks,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gspace::verify_axioms;

    fn request(rs: &str, field: &str, q: &str, lambda: &[i64], policy: BuildPolicy) -> BuildRequest {
        let rs = RootSystem::parse(rs).unwrap();
        let ctx = FieldContext::parse(field, q).unwrap();
        BuildRequest::new(rs, ctx, Weight(lambda.to_vec()), policy)
    }

    fn dims_of(obj: &GradedObject) -> Vec<(Vec<i64>, usize)> {
        obj.dims()
            .iter()
            .map(|(w, &d)| (w.0.clone(), d))
            .collect()
    }

    #[test]
    fn zero_weight_gives_skyscraper() {
        let req = request("A1", "rational", "1", &[0], BuildPolicy::DominantAuto);
        let s = build_simple(&req).unwrap();
        assert_eq!(dims_of(&s), vec![(vec![0], 1)]);
        assert!(s.is_complete());
    }

    #[test]
    fn sl2_three_dimensional() {
        let req = request("A1", "rational", "1", &[2], BuildPolicy::DominantAuto);
        let s = build_simple(&req).unwrap();
        assert_eq!(
            dims_of(&s),
            vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]
        );
        assert!(verify_axioms(&s, 4).pass());
    }

    #[test]
    fn sl2_mod_two_loses_middle_weight() {
        let req = request("A1", "fp:2", "1", &[2], BuildPolicy::DominantAuto);
        let s = build_simple(&req).unwrap();
        assert_eq!(dims_of(&s), vec![(vec![-2], 1), (vec![2], 1)]);
        assert!(verify_axioms(&s, 4).pass());
    }

    #[test]
    fn non_dominant_needs_fixed_depth() {
        let req = request("A1", "rational", "1", &[-1], BuildPolicy::DominantAuto);
        assert!(build_simple(&req).is_err());
        let req = request("A1", "rational", "1", &[-1], BuildPolicy::FixedDepth(4));
        let s = build_simple(&req).unwrap();
        assert_eq!(
            dims_of(&s),
            vec![
                (vec![-9], 1),
                (vec![-7], 1),
                (vec![-5], 1),
                (vec![-3], 1),
                (vec![-1], 1)
            ]
        );
        assert!(!s.is_complete());
        assert_eq!(s.truncation_height(), Some(4));
        assert!(verify_axioms(&s, 3).pass());
    }

    #[test]
    fn deep_fixed_depth_on_dominant_weight_is_complete() {
        let auto = build_simple(&request("A1", "rational", "1", &[3], BuildPolicy::DominantAuto))
            .unwrap();
        let deep = build_simple(&request(
            "A1",
            "rational",
            "1",
            &[3],
            BuildPolicy::FixedDepth(50),
        ))
        .unwrap();
        assert_eq!(auto, deep);
        assert!(deep.is_complete());
        let shallow = build_simple(&request(
            "A1",
            "rational",
            "1",
            &[3],
            BuildPolicy::FixedDepth(1),
        ))
        .unwrap();
        assert_eq!(shallow.total_dim(), 2);
        assert!(!shallow.is_complete());
    }

    #[test]
    fn parallel_and_serial_builds_agree() {
        let req = request("A2", "fp:2", "1", &[1, 1], BuildPolicy::DominantAuto);
        let parallel = build_simple(&req).unwrap();
        let serial = build_simple_with(&req, &BuildOptions { serial: true }).unwrap();
        assert_eq!(parallel, serial);
        let twice = build_simple(&req).unwrap();
        assert_eq!(parallel, twice);
    }

    #[test]
    fn adjoint_a2_in_characteristic_three_drops_to_seven() {
        // the A2 adjoint is 8-dimensional over Q and 7-dimensional mod 3
        let rational = build_simple(&request(
            "A2",
            "rational",
            "1",
            &[1, 1],
            BuildPolicy::DominantAuto,
        ))
        .unwrap();
        assert_eq!(rational.total_dim(), 8);
        let mod3 = build_simple(&request("A2", "fp:3", "1", &[1, 1], BuildPolicy::DominantAuto))
            .unwrap();
        assert_eq!(mod3.total_dim(), 7);
        assert_eq!(mod3.dim_at(&Weight(vec![0, 0])), 1);
    }

    #[test]
    fn primitive_vectors_live_at_the_top_only() {
        for (field, lambda) in [("rational", vec![2, 0]), ("fp:2", vec![1, 1])] {
            let req = request("A2", field, "1", &lambda, BuildPolicy::DominantAuto);
            let s = build_simple(&req).unwrap();
            let prim = s.primitive_dims();
            assert_eq!(prim.len(), 1);
            assert_eq!(prim.get(&Weight(lambda.clone())), Some(&1));
        }
    }

    #[test]
    fn decompose_recovers_direct_sums() {
        let s1 = build_simple(&request("A1", "fp:3", "1", &[2], BuildPolicy::DominantAuto))
            .unwrap();
        let s2 = build_simple(&request("A1", "fp:3", "1", &[4], BuildPolicy::DominantAuto))
            .unwrap();
        let sum = s1.direct_sum(&s2).unwrap().direct_sum(&s1).unwrap();
        let found = sum.decompose();
        assert_eq!(found.get(&Weight(vec![2])), Some(&2));
        assert_eq!(found.get(&Weight(vec![4])), Some(&1));
        assert!(verify_axioms(&sum, 4).pass());
        // character additivity
        let expected = s1
            .character()
            .add(&s2.character())
            .add(&s1.character());
        assert_eq!(sum.character(), expected);
    }
}
