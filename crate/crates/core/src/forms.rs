//! Contravariant forms: symmetric bilinear forms with orthogonal weight
//! spaces under which the E-operators are adjoint to the F-operators.
//! The form on a simple object is built by pushing the top-weight scalar
//! down through `G_{δμ}`, and is unique once that scalar is fixed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gspace::linalg::{self, Matrix};
use crate::gspace::object::GradedObject;
use crate::qarith::FieldElement;
use crate::report::TheoremReport;
use crate::roots::Weight;

/// Gram matrices of the form, one per weight, in the stored basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContravariantForm {
    gram: BTreeMap<Weight, Matrix>,
}

impl ContravariantForm {
    pub fn gram_at(&self, w: &Weight) -> Option<&Matrix> {
        self.gram.get(w)
    }

    pub fn grams(&self) -> &BTreeMap<Weight, Matrix> {
        &self.gram
    }

    pub(crate) fn from_grams(gram: BTreeMap<Weight, Matrix>) -> Self {
        ContravariantForm { gram }
    }
}

/// Build the contravariant form on a simple object with the given
/// nonzero top-weight scalar.
///
/// Below the top, the Gram matrix at μ is determined by
/// `b_μ(F_μ v, F_μ w) = b_δμ(G_{δμ} v, w)`: with a preimage matrix `X`
/// satisfying `F_μ·X = id`, it equals `Xᵀ·G_{δμ}ᵀ·B_δμ·X`. Objects from
/// the level-by-level build supply `X` for free through their pivot
/// bookkeeping; for other simple objects (Frobenius or Steinberg
/// products) a deterministic preimage is solved per weight.
pub fn build_form(s: &GradedObject, top_value: &FieldElement) -> Result<ContravariantForm> {
    if !s.choice().is_symmetric() {
        return Err(Error::HypothesisViolation(
            "contravariant forms require a coefficient choice symmetric in m and n".into(),
        ));
    }
    if top_value.is_zero() {
        return Err(Error::HypothesisViolation(
            "the top-weight scalar must be nonzero".into(),
        ));
    }
    let tops = s.maximal_weights();
    let [top] = tops.as_slice() else {
        return Err(Error::HypothesisViolation(
            "form construction needs a unique highest weight".into(),
        ));
    };

    // Process weights by descending height below the top.
    let mut by_height: BTreeMap<i64, Vec<Weight>> = BTreeMap::new();
    for w in s.dims().keys() {
        let h = s.root_system().height_below(w, top).ok_or_else(|| {
            Error::HypothesisViolation(format!("stored weight {w} is not below the top {top}"))
        })?;
        by_height.entry(h).or_default().push(w.clone());
    }

    let desc = s.ctx().descriptor();
    let mut gram: BTreeMap<Weight, Matrix> = BTreeMap::new();
    for (h, weights) in by_height {
        for mu in weights {
            if h == 0 {
                let top_gram = Matrix::identity(desc, s.dim_at(&mu)).scaled(top_value);
                gram.insert(mu, top_gram);
                continue;
            }
            let delta = s.assemble_delta(&mu);
            let dim = s.dim_at(&mu);
            // block diagonal of the Gram matrices above μ
            let mut b_delta = Matrix::zeros(desc, delta.total_dim, delta.total_dim);
            for block in &delta.blocks {
                let g = gram
                    .get(&block.source)
                    .expect("higher Gram matrices are already built");
                b_delta.paste(block.offset, block.offset, g);
            }
            let f_concat = s.concat_f(&mu);
            let x = preimage_matrix(s, &mu, &f_concat, dim)?;
            debug_assert_eq!(
                f_concat.mul(&x),
                Matrix::identity(desc, dim),
                "preimage matrix must section F at {mu}"
            );
            let g_endo = s.stacked_e(&mu).mul(&f_concat);
            let gm = x.transpose().mul(&g_endo.transpose()).mul(&b_delta).mul(&x);
            debug_assert_eq!(gm, gm.transpose(), "Gram matrix must be symmetric at {mu}");
            gram.insert(mu, gm);
        }
    }
    Ok(ContravariantForm::from_grams(gram))
}

fn preimage_matrix(
    s: &GradedObject,
    mu: &Weight,
    f_concat: &Matrix,
    dim: usize,
) -> Result<Matrix> {
    let desc = s.ctx().descriptor();
    if let Some(pivots) = s.pivots_at(mu) {
        let mut x = Matrix::zeros(desc, f_concat.cols(), dim);
        for (i, &col) in pivots.iter().enumerate() {
            x.set(col, i, desc.one());
        }
        return Ok(x);
    }
    linalg::solve(f_concat, &Matrix::identity(desc, dim)).ok_or_else(|| {
        Error::HypothesisViolation(format!(
            "F is not surjective at {mu}; no preimage bookkeeping available"
        ))
    })
}

/// Check `b(E_{α,n} v, w) = b(v, F_{α,n} w)` as the exact matrix identity
/// `Eᵀ·gram(μ+nα) = gram(μ)·F` for every stored operator with `n ≤ bound`.
pub fn verify_adjointness(
    s: &GradedObject,
    form: &ContravariantForm,
    bound_mn: i64,
) -> TheoremReport {
    let mut report = TheoremReport::new(
        "contravariant adjointness E^T B_up = B_low F",
        format!("{} weights, bound {}", s.dims().len(), bound_mn),
    );
    for ((mu, alpha, n), pair) in s.ops() {
        if *n > bound_mn {
            continue;
        }
        let alpha_w = s.root_system().simple_root_as_weight(*alpha).unwrap();
        let upper = mu.add(&alpha_w.scaled(*n));
        let (Some(b_low), Some(b_up)) = (form.gram_at(mu), form.gram_at(&upper)) else {
            report.record(false, || format!("missing Gram matrix for ({mu},{alpha},{n})"));
            continue;
        };
        let lhs = pair.e.transpose().mul(b_up);
        let rhs = b_low.mul(&pair.f);
        report.record(lhs == rhs, || format!("mu={mu} alpha={alpha} n={n}"));
    }
    report
}

/// Check that every Gram matrix has full rank.
pub fn verify_nondegenerate(form: &ContravariantForm) -> TheoremReport {
    let mut report = TheoremReport::new(
        "contravariant form non-degeneracy",
        format!("{} Gram matrices", form.grams().len()),
    );
    for (w, gram) in form.grams() {
        let rank = linalg::rank(gram);
        report.record(rank == gram.rows(), || {
            format!("rank {rank} < dim {} at {w}", gram.rows())
        });
    }
    report
}

/// Check exact symmetry of every Gram matrix.
pub fn verify_symmetry(form: &ContravariantForm) -> TheoremReport {
    let mut report = TheoremReport::new(
        "Gram symmetry",
        format!("{} Gram matrices", form.grams().len()),
    );
    for (w, gram) in form.grams() {
        report.record(*gram == gram.transpose(), || format!("asymmetric at {w}"));
    }
    report
}

/// Check that `G_{δμ}` is self-adjoint for the block-diagonal delta form:
/// `Gᵀ·B_δμ = B_δμ·G` at every weight.
pub fn verify_g_self_adjoint(s: &GradedObject, form: &ContravariantForm) -> TheoremReport {
    let mut report = TheoremReport::new(
        "G self-adjointness G^T B = B G",
        format!("{} weights", s.dims().len()),
    );
    let desc = s.ctx().descriptor();
    for mu in s.dims().keys() {
        let delta = s.assemble_delta(mu);
        if delta.total_dim == 0 {
            continue;
        }
        let mut b_delta = Matrix::zeros(desc, delta.total_dim, delta.total_dim);
        for block in &delta.blocks {
            match form.gram_at(&block.source) {
                Some(g) => b_delta.paste(block.offset, block.offset, g),
                None => {
                    report.record(false, || format!("missing Gram above {mu}"));
                    continue;
                }
            }
        }
        let g = s.g_delta(&delta, s.choice());
        report.record(
            g.transpose().mul(&b_delta) == b_delta.mul(&g),
            || format!("G not self-adjoint at {mu}"),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_simple, BuildPolicy, BuildRequest};
    use crate::gspace::object::CoefficientChoice;
    use crate::qarith::FieldContext;
    use crate::roots::RootSystem;

    fn build(rs: &str, field: &str, q: &str, lambda: &[i64]) -> GradedObject {
        let req = BuildRequest::new(
            RootSystem::parse(rs).unwrap(),
            FieldContext::parse(field, q).unwrap(),
            Weight(lambda.to_vec()),
            BuildPolicy::DominantAuto,
        );
        build_simple(&req).unwrap()
    }

    #[test]
    fn skyscraper_form_is_the_top_scalar() {
        let s = build("A1", "rational", "1", &[0]);
        let two = s.ctx().descriptor().from_i64(2);
        let form = build_form(&s, &two).unwrap();
        assert_eq!(form.grams().len(), 1);
        assert_eq!(*form.gram_at(&Weight(vec![0])).unwrap().get(0, 0), two);
    }

    #[test]
    fn built_forms_verify_on_small_simples() {
        for (rs, field, q, lambda) in [
            ("A1", "rational", "1", vec![2]),
            ("A1", "fp:2", "1", vec![3]),
            ("A2", "rational", "1", vec![1, 1]),
            ("A2", "fp:2", "1", vec![1, 1]),
            ("A1", "cyclo:3", "zeta^1", vec![4]),
        ] {
            let s = build(rs, field, q, &lambda);
            let one = s.ctx().one();
            let form = build_form(&s, &one).unwrap();
            assert!(verify_symmetry(&form).pass(), "{rs} {field} {lambda:?}");
            let adj = verify_adjointness(&s, &form, 6);
            assert!(adj.pass(), "{rs} {field} {lambda:?}: {:?}", adj.failures);
            assert!(
                verify_nondegenerate(&form).pass(),
                "{rs} {field} {lambda:?}"
            );
            assert!(
                verify_g_self_adjoint(&s, &form).pass(),
                "{rs} {field} {lambda:?}"
            );
        }
    }

    #[test]
    fn scaling_the_top_scales_everything() {
        let s = build("A2", "rational", "1", &[1, 1]);
        let one = s.ctx().one();
        let three = s.ctx().descriptor().from_i64(3);
        let f1 = build_form(&s, &one).unwrap();
        let f3 = build_form(&s, &three).unwrap();
        for (w, g) in f1.grams() {
            assert_eq!(g.scaled(&three), *f3.gram_at(w).unwrap());
        }
        // and the build is deterministic
        assert_eq!(f1, build_form(&s, &one).unwrap());
    }

    #[test]
    fn perturbed_gram_fails_adjointness() {
        let s = build("A1", "rational", "1", &[2]);
        let one = s.ctx().one();
        let form = build_form(&s, &one).unwrap();
        let mut grams = form.grams().clone();
        let zero_w = Weight(vec![0]);
        let mut g = grams.get(&zero_w).unwrap().clone();
        let bumped = g.get(0, 0).add(&one);
        g.set(0, 0, bumped);
        grams.insert(zero_w, g);
        let bad = ContravariantForm::from_grams(grams);
        assert!(!verify_adjointness(&s, &bad, 4).pass());
    }

    #[test]
    fn zero_gram_fails_nondegeneracy() {
        let desc = crate::qarith::FieldDescriptor::Rational;
        let mut grams = BTreeMap::new();
        grams.insert(Weight(vec![0]), Matrix::zeros(&desc, 1, 1));
        let form = ContravariantForm::from_grams(grams);
        assert!(!verify_nondegenerate(&form).pass());
    }

    #[test]
    fn non_symmetric_choice_is_refused() {
        let rs = RootSystem::parse("A1").unwrap();
        let ctx = FieldContext::parse("rational", "1").unwrap();
        let asym = CoefficientChoice::custom("asym", false, |ctx, _, _, _, _, _, r| {
            if r == 0 {
                ctx.one()
            } else {
                ctx.zero()
            }
        });
        let s = GradedObject::skyscraper(ctx.clone(), rs, asym, Weight(vec![1]));
        assert!(build_form(&s, &ctx.one()).is_err());
        // zero top scalar is refused as well
        let s2 = build("A1", "rational", "1", &[1]);
        assert!(build_form(&s2, &ctx.zero()).is_err());
    }

    #[test]
    fn delta_twisted_form_has_rank_dim_mu() {
        // the radical of the G-twisted delta form is ker G, so its rank
        // equals the new dimension
        let s = build("A2", "rational", "1", &[1, 1]);
        let one = s.ctx().one();
        let form = build_form(&s, &one).unwrap();
        let desc = s.ctx().descriptor();
        for (mu, &dim) in s.dims() {
            let delta = s.assemble_delta(mu);
            if delta.total_dim == 0 {
                continue;
            }
            let mut b_delta = Matrix::zeros(desc, delta.total_dim, delta.total_dim);
            for block in &delta.blocks {
                b_delta.paste(
                    block.offset,
                    block.offset,
                    form.gram_at(&block.source).unwrap(),
                );
            }
            let g = s.g_delta(&delta, s.choice());
            assert_eq!(linalg::rank(&b_delta.mul(&g)), dim, "at {mu}");
        }
    }
}
