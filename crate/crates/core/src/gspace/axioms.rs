//! Verifiers for the three defining axioms of the category: finiteness
//! and shape consistency of the grading, the commutation relations in
//! their base-weight form, and the primitive ⊕ coprimitive splitting of
//! every weight space.

use crate::report::TheoremReport;
use crate::roots::Weight;

use super::linalg::{self, Matrix};
use super::object::GradedObject;

/// Reports for the three axioms.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub support: TheoremReport,
    pub commutation: TheoremReport,
    pub splitting: TheoremReport,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.support.pass() && self.commutation.pass() && self.splitting.pass()
    }

    pub fn reports(&self) -> [&TheoremReport; 3] {
        [&self.support, &self.commutation, &self.splitting]
    }
}

/// Check all three axioms on `m`, sampling the commutation relations for
/// operator degrees `1 ..= sample_bound_mn`.
pub fn verify_axioms(m: &GradedObject, sample_bound_mn: i64) -> AxiomReport {
    let inputs = format!(
        "object over {} on {} with {} weights, bound {}",
        m.ctx(),
        m.root_system().descriptor(),
        m.dims().len(),
        sample_bound_mn
    );
    AxiomReport {
        support: check_support(m, &inputs),
        commutation: check_commutation(m, sample_bound_mn, &inputs),
        splitting: check_splitting(m, &inputs),
    }
}

/// (X1) structural checks: dimensions positive, operator shapes match
/// the graded dimensions, keys only between stored weights. Finiteness
/// of the stored support makes quasi-boundedness automatic.
fn check_support(m: &GradedObject, inputs: &str) -> TheoremReport {
    let mut report = TheoremReport::new("(X1) support and shapes", inputs);
    for (w, &dim) in m.dims() {
        report.record(dim > 0, || format!("stored zero dimension at {w}"));
    }
    for ((mu, alpha, n), pair) in m.ops() {
        let alpha_w = m.root_system().simple_root_as_weight(*alpha).unwrap();
        let upper = mu.add(&alpha_w.scaled(*n));
        let lo = m.dim_at(mu);
        let hi = m.dim_at(&upper);
        report.record(*n >= 1, || format!("bad degree n={n} at {mu}"));
        report.record(lo > 0 && hi > 0, || {
            format!("operator ({mu},{alpha},{n}) touches an absent space")
        });
        report.record(
            pair.e.rows() == hi && pair.e.cols() == lo,
            || format!("E shape at ({mu},{alpha},{n})"),
        );
        report.record(
            pair.f.rows() == lo && pair.f.cols() == hi,
            || format!("F shape at ({mu},{alpha},{n})"),
        );
    }
    report
}

/// (X2)′: for every stored weight μ (the weight of the argument vector),
/// all pairs of simple roots and degrees `m, n ≤ bound`:
/// `E_{α,m}F_{β,n}|_{M_μ}` equals `F_{β,n}E_{α,m}|_{M_μ}` for α ≠ β and
/// `Σ_r c(μ,α,m,n,r) F_{α,n-r}E_{α,m-r}|_{M_μ}` for α = β.
fn check_commutation(m: &GradedObject, bound: i64, inputs: &str) -> TheoremReport {
    let mut report = TheoremReport::new("(X2)' commutation relations", inputs);
    let rs = m.root_system();
    let rank = rs.rank();
    let weights: Vec<Weight> = m.dims().keys().cloned().collect();
    // A truncated object only realizes the relations of the built closed
    // region: the instance at argument weight μ with downward degree n is
    // indexed by the weight μ - nβ, which must lie within the truncation.
    let tops = m.maximal_weights();
    let covered = |w: &Weight| -> bool {
        match m.truncation_height() {
            None => true,
            Some(h) => tops
                .iter()
                .any(|t| rs.height_below(w, t).is_some_and(|d| d <= h)),
        }
    };
    for mu in &weights {
        for alpha in 0..rank {
            let alpha_w = rs.simple_root_as_weight(alpha).unwrap();
            for beta in 0..rank {
                let beta_w = rs.simple_root_as_weight(beta).unwrap();
                for op_m in 1..=bound {
                    for op_n in 1..=bound {
                        if !covered(&mu.sub(&beta_w.scaled(op_n))) {
                            continue;
                        }
                        // E_{α,m} F_{β,n} on M_μ: first down by nβ, then up by mα
                        let down = mu.sub(&beta_w.scaled(op_n));
                        let f_first = m.f_matrix(&down, beta, op_n);
                        let e_second = m.e_matrix(&down, alpha, op_m);
                        let lhs = e_second.mul(&f_first);

                        let rhs = if alpha != beta {
                            // F_{β,n} E_{α,m}: up by mα, then down by nβ
                            let e_first = m.e_matrix(mu, alpha, op_m);
                            let up = mu.add(&alpha_w.scaled(op_m));
                            let f_second = m.f_matrix(&up.sub(&beta_w.scaled(op_n)), beta, op_n);
                            f_second.mul(&e_first)
                        } else {
                            let mut acc = Matrix::zeros(
                                m.ctx().descriptor(),
                                lhs.rows(),
                                lhs.cols(),
                            );
                            for r in 0..=op_m.min(op_n) {
                                let c = m.choice().value(
                                    m.ctx(),
                                    rs,
                                    mu,
                                    alpha,
                                    op_m,
                                    op_n,
                                    r,
                                );
                                if c.is_zero() {
                                    continue;
                                }
                                let e = m.e_matrix(mu, alpha, op_m - r);
                                let f = m.f_matrix(
                                    &mu.add(&alpha_w.scaled(op_m - op_n)),
                                    alpha,
                                    op_n - r,
                                );
                                acc = acc.add(&f.mul(&e).scaled(&c));
                            }
                            acc
                        };
                        report.record(lhs == rhs, || {
                            format!("mu={mu} alpha={alpha} beta={beta} m={op_m} n={op_n}")
                        });
                    }
                }
            }
        }
    }
    report
}

/// (X3): at every stored weight, `rank F_μ + dim ker E_μ = dim M_μ` and
/// `im F_μ ∩ ker E_μ = 0`.
fn check_splitting(m: &GradedObject, inputs: &str) -> TheoremReport {
    let mut report = TheoremReport::new("(X3) primitive/coprimitive splitting", inputs);
    for (w, &dim) in m.dims() {
        let e_stacked = m.stacked_e(w);
        let f_concat = m.concat_f(w);
        let rank_f = linalg::rank(&f_concat);
        let nullity_e = dim - linalg::rank(&e_stacked);
        report.record(rank_f + nullity_e == dim, || {
            format!("dim count at {w}: rank F = {rank_f}, dim ker E = {nullity_e}, dim = {dim}")
        });
        // im F ∩ ker E = 0 ⟺ E is injective on im F
        let basis = linalg::column_space_basis(&f_concat);
        let image_rank = linalg::rank(&e_stacked.mul(&basis));
        report.record(image_rank == rank_f, || {
            format!("im F ∩ ker E ≠ 0 at {w} (rank drop {rank_f} → {image_rank})")
        });
    }
    report
}
