//! The data model for graded spaces with operators: weight-indexed
//! dimensions, sparse per-(μ,α,n) operator matrices, the delta-space
//! assembly and the `G_{δμ}` endomorphism, characters, direct sums and
//! semisimple decomposition.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qarith::{quantum_binomial, FieldContext, FieldElement};
use crate::roots::{RootSystem, Weight};

use super::linalg::{self, Matrix};

/// Key of a stored operator pair: the lower weight `μ`, the simple-root
/// index `α`, and the degree `n ≥ 1`. `E` maps `M_μ → M_{μ+nα}` and `F`
/// maps `M_{μ+nα} → M_μ`.
pub type OpKey = (Weight, usize, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPair {
    pub e: Matrix,
    pub f: Matrix,
}

/// A pluggable choice of commutation coefficients `c(μ, α, m, n, r)`,
/// keyed by the weight of the argument vector. The default is the
/// quantum binomial `[⟨μ,α∨⟩ + m - n over r]`.
#[derive(Clone)]
pub struct CoefficientChoice {
    tag: String,
    symmetric: bool,
    #[allow(clippy::type_complexity)]
    func: Arc<
        dyn Fn(&FieldContext, &RootSystem, &Weight, usize, i64, i64, i64) -> FieldElement
            + Send
            + Sync,
    >,
}

impl CoefficientChoice {
    pub fn quantum_binomial_default() -> Self {
        CoefficientChoice {
            tag: "qbin".into(),
            symmetric: true,
            func: Arc::new(|ctx, rs, mu, alpha, m, n, r| {
                let pairing = rs.pairing(mu, alpha).expect("alpha index in range");
                ctx.evaluate(&quantum_binomial(pairing + m - n, r))
            }),
        }
    }

    /// A custom choice for experiments and tests. The function must
    /// return 1 at `r = 0`; values at `r < 0` are forced to zero here.
    pub fn custom(
        tag: impl Into<String>,
        symmetric: bool,
        func: impl Fn(&FieldContext, &RootSystem, &Weight, usize, i64, i64, i64) -> FieldElement
            + Send
            + Sync
            + 'static,
    ) -> Self {
        CoefficientChoice {
            tag: tag.into(),
            symmetric,
            func: Arc::new(func),
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "qbin" => Ok(Self::quantum_binomial_default()),
            _ => Err(Error::InvalidDescriptor(format!(
                "unknown coefficient-choice tag `{tag}`"
            ))),
        }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn value(
        &self,
        ctx: &FieldContext,
        rs: &RootSystem,
        mu: &Weight,
        alpha: usize,
        m: i64,
        n: i64,
        r: i64,
    ) -> FieldElement {
        if r < 0 {
            return ctx.zero();
        }
        (self.func)(ctx, rs, mu, alpha, m, n, r)
    }
}

impl fmt::Debug for CoefficientChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientChoice")
            .field("tag", &self.tag)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

/// One nonzero summand `M_{μ+nα}` of a delta space, with its offset in
/// the concatenated coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaBlock {
    pub alpha: usize,
    pub n: i64,
    pub source: Weight,
    pub dim: usize,
    pub offset: usize,
}

/// `M_{δμ} = ⊕_{α,n>0} M_{μ+nα}` with the fixed block order: α ascending,
/// then n ascending.
#[derive(Clone, Debug)]
pub struct DeltaSpace {
    pub base: Weight,
    pub blocks: Vec<DeltaBlock>,
    pub total_dim: usize,
}

/// A character: weight → multiplicity ≥ 1, finite support.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Character(pub BTreeMap<Weight, u64>);

impl Character {
    pub fn total_dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn insert(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn add(&self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (w, m) in &rhs.0 {
            out.insert(w.clone(), *m);
        }
        out
    }

    /// Pointwise dilation μ ↦ ℓμ.
    pub fn dilated(&self, ell: i64) -> Character {
        Character(
            self.0
                .iter()
                .map(|(w, m)| (w.scaled(ell), *m))
                .collect(),
        )
    }

    /// Convolution: the character of a graded tensor product.
    pub fn convolution(&self, rhs: &Character) -> Character {
        let mut out = Character::default();
        for (v, m1) in &self.0 {
            for (w, m2) in &rhs.0 {
                out.insert(v.add(w), m1 * m2);
            }
        }
        out
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, m) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "e({w})")?;
            } else {
                write!(f, "{m}·e({w})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An object of the category: an X-graded space with operators. Only
/// weights of nonzero dimension are stored; operator matrices are absent
/// whenever either endpoint space is zero.
#[derive(Clone, Debug)]
pub struct GradedObject {
    ctx: FieldContext,
    rs: RootSystem,
    choice: CoefficientChoice,
    dims: BTreeMap<Weight, usize>,
    ops: BTreeMap<OpKey, OperatorPair>,
    /// Pivot columns of `G_{δμ}` recorded by the level-by-level build;
    /// they realize preimages under `F_μ` for the form construction.
    pivots: BTreeMap<Weight, Vec<usize>>,
    /// Highest weight, when the object was built as a simple.
    lambda: Option<Weight>,
    complete: bool,
    truncation_height: Option<i64>,
}

impl PartialEq for GradedObject {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.rs == other.rs
            && self.choice.tag() == other.choice.tag()
            && self.dims == other.dims
            && self.ops == other.ops
            && self.pivots == other.pivots
            && self.lambda == other.lambda
            && self.complete == other.complete
            && self.truncation_height == other.truncation_height
    }
}
impl Eq for GradedObject {}

impl GradedObject {
    /// The one-dimensional skyscraper at λ with no operators.
    pub fn skyscraper(
        ctx: FieldContext,
        rs: RootSystem,
        choice: CoefficientChoice,
        lambda: Weight,
    ) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(lambda.clone(), 1);
        GradedObject {
            ctx,
            rs,
            choice,
            dims,
            ops: BTreeMap::new(),
            pivots: BTreeMap::new(),
            lambda: Some(lambda),
            complete: true,
            truncation_height: None,
        }
    }

    pub(crate) fn new_raw(
        ctx: FieldContext,
        rs: RootSystem,
        choice: CoefficientChoice,
        dims: BTreeMap<Weight, usize>,
        ops: BTreeMap<OpKey, OperatorPair>,
        pivots: BTreeMap<Weight, Vec<usize>>,
        lambda: Option<Weight>,
        complete: bool,
        truncation_height: Option<i64>,
    ) -> Self {
        GradedObject {
            ctx,
            rs,
            choice,
            dims,
            ops,
            pivots,
            lambda,
            complete,
            truncation_height,
        }
    }

    pub(crate) fn insert_weight(&mut self, w: Weight, dim: usize) {
        assert!(dim > 0);
        self.dims.insert(w, dim);
    }

    pub(crate) fn insert_op(&mut self, key: OpKey, pair: OperatorPair) {
        self.ops.insert(key, pair);
    }

    pub(crate) fn insert_pivots(&mut self, w: Weight, cols: Vec<usize>) {
        self.pivots.insert(w, cols);
    }

    pub(crate) fn set_completeness(&mut self, complete: bool, truncation_height: Option<i64>) {
        self.complete = complete;
        self.truncation_height = truncation_height;
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn choice(&self) -> &CoefficientChoice {
        &self.choice
    }

    pub fn dims(&self) -> &BTreeMap<Weight, usize> {
        &self.dims
    }

    pub fn dim_at(&self, w: &Weight) -> usize {
        self.dims.get(w).copied().unwrap_or(0)
    }

    pub fn ops(&self) -> &BTreeMap<OpKey, OperatorPair> {
        &self.ops
    }

    pub fn op(&self, mu: &Weight, alpha: usize, n: i64) -> Option<&OperatorPair> {
        self.ops.get(&(mu.clone(), alpha, n))
    }

    /// `E_{μ,α,n}: M_μ → M_{μ+nα}` as a matrix, materializing zeros and
    /// the `n = 0` identity.
    pub fn e_matrix(&self, mu: &Weight, alpha: usize, n: i64) -> Matrix {
        let source_dim = self.dim_at(mu);
        if n == 0 {
            return Matrix::identity(self.ctx.descriptor(), source_dim);
        }
        let alpha_w = self.rs.simple_root_as_weight(alpha).expect("index in range");
        let target = mu.add(&alpha_w.scaled(n));
        let target_dim = self.dim_at(&target);
        if n < 0 {
            return Matrix::zeros(self.ctx.descriptor(), target_dim, source_dim);
        }
        match self.ops.get(&(mu.clone(), alpha, n)) {
            Some(pair) => pair.e.clone(),
            None => Matrix::zeros(self.ctx.descriptor(), target_dim, source_dim),
        }
    }

    /// `F_{μ,α,n}: M_{μ+nα} → M_μ` as a matrix, materializing zeros and
    /// the `n = 0` identity.
    pub fn f_matrix(&self, mu: &Weight, alpha: usize, n: i64) -> Matrix {
        let target_dim = self.dim_at(mu);
        if n == 0 {
            return Matrix::identity(self.ctx.descriptor(), target_dim);
        }
        let alpha_w = self.rs.simple_root_as_weight(alpha).expect("index in range");
        let source = mu.add(&alpha_w.scaled(n));
        let source_dim = self.dim_at(&source);
        if n < 0 {
            return Matrix::zeros(self.ctx.descriptor(), target_dim, source_dim);
        }
        match self.ops.get(&(mu.clone(), alpha, n)) {
            Some(pair) => pair.f.clone(),
            None => Matrix::zeros(self.ctx.descriptor(), target_dim, source_dim),
        }
    }

    pub fn pivots_at(&self, w: &Weight) -> Option<&Vec<usize>> {
        self.pivots.get(w)
    }

    pub fn lambda(&self) -> Option<&Weight> {
        self.lambda.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn truncation_height(&self) -> Option<i64> {
        self.truncation_height
    }

    /// Stored weights that are maximal in the dominance order.
    pub fn maximal_weights(&self) -> Vec<Weight> {
        self.dims
            .keys()
            .filter(|w| {
                self.dims
                    .keys()
                    .all(|v| v == *w || self.rs.leq(w, v).is_none())
            })
            .cloned()
            .collect()
    }

    /// Enumerate the nonzero summands `M_{μ+nα}` in the fixed order:
    /// α ascending, then n ascending.
    pub fn assemble_delta(&self, mu: &Weight) -> DeltaSpace {
        let mut blocks = Vec::new();
        let mut offset = 0usize;
        for alpha in 0..self.rs.rank() {
            let alpha_w = self.rs.simple_root_as_weight(alpha).unwrap();
            let mut ns: Vec<(i64, Weight, usize)> = Vec::new();
            for (w, &dim) in &self.dims {
                let diff = w.sub(mu);
                if let Some(n) = multiple_of(&diff, &alpha_w) {
                    if n >= 1 {
                        ns.push((n, w.clone(), dim));
                    }
                }
            }
            ns.sort_by_key(|(n, _, _)| *n);
            for (n, source, dim) in ns {
                blocks.push(DeltaBlock {
                    alpha,
                    n,
                    source,
                    dim,
                    offset,
                });
                offset += dim;
            }
        }
        DeltaSpace {
            base: mu.clone(),
            blocks,
            total_dim: offset,
        }
    }

    /// The endomorphism `G_{δμ}` of the delta space. The block sending
    /// summand `(β, n)` to summand `(α, m)` is `F_{β,n}E_{α,m}` for
    /// `α ≠ β` and `Σ_r c(μ+nα, α, m, n, r) F_{α,n-r}E_{α,m-r}` for
    /// `α = β`; operator index 0 is the identity, negative indices are
    /// zero. All ingredients live at weights strictly above μ.
    pub fn g_delta(&self, delta: &DeltaSpace, choice: &CoefficientChoice) -> Matrix {
        let mu = &delta.base;
        let desc = self.ctx.descriptor();
        let mut g = Matrix::zeros(desc, delta.total_dim, delta.total_dim);
        for target in &delta.blocks {
            let (alpha, m) = (target.alpha, target.n);
            let alpha_w = self.rs.simple_root_as_weight(alpha).unwrap();
            for source in &delta.blocks {
                let (beta, n) = (source.alpha, source.n);
                let block = if alpha != beta {
                    // F_{β,n} E_{α,m} : M_{μ+nβ} → M_{μ+nβ+mα} → M_{μ+mα}
                    let e = self.e_matrix(&source.source, alpha, m);
                    let f = self.f_matrix(&target.source, beta, n);
                    if e.rows() == 0 {
                        continue;
                    }
                    f.mul(&e)
                } else {
                    // Σ_r c(μ+nα, α, m, n, r) F_{α,n-r} E_{α,m-r}
                    let mut acc =
                        Matrix::zeros(desc, target.dim, source.dim);
                    for r in 0..=m.min(n) {
                        let c = choice.value(
                            &self.ctx,
                            &self.rs,
                            &source.source,
                            alpha,
                            m,
                            n,
                            r,
                        );
                        if c.is_zero() {
                            continue;
                        }
                        // E_{α,m-r}: M_{μ+nα} → M_{μ+(n+m-r)α}
                        let e = self.e_matrix(&source.source, alpha, m - r);
                        if e.rows() == 0 {
                            continue;
                        }
                        // F_{α,n-r}: M_{μ+(n+m-r)α} → M_{μ+mα}
                        let f_base = mu.add(&alpha_w.scaled(m));
                        let f = self.f_matrix(&f_base, alpha, n - r);
                        acc = acc.add(&f.mul(&e).scaled(&c));
                    }
                    acc
                };
                g.paste(target.offset, source.offset, &block);
            }
        }
        g
    }

    /// μ ↦ dim M_μ restricted to nonzero dimensions.
    pub fn character(&self) -> Character {
        Character(
            self.dims
                .iter()
                .map(|(w, &d)| (w.clone(), d as u64))
                .collect(),
        )
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.values().map(|&d| d as u64).sum()
    }

    /// Block-diagonal direct sum. Both objects must live over the same
    /// context, root system and coefficient choice.
    pub fn direct_sum(&self, rhs: &GradedObject) -> Result<GradedObject> {
        if self.ctx != rhs.ctx
            || self.rs != rhs.rs
            || self.choice.tag() != rhs.choice.tag()
        {
            return Err(Error::ContextMismatch);
        }
        let mut dims = BTreeMap::new();
        for (w, &d) in self.dims.iter().chain(rhs.dims.iter()) {
            *dims.entry(w.clone()).or_insert(0) += d;
        }
        let desc = self.ctx.descriptor();
        let mut ops = BTreeMap::new();
        let keys: std::collections::BTreeSet<OpKey> = self
            .ops
            .keys()
            .chain(rhs.ops.keys())
            .cloned()
            .collect();
        for key in keys {
            let (mu, alpha, n) = &key;
            let alpha_w = self.rs.simple_root_as_weight(*alpha).unwrap();
            let upper = mu.add(&alpha_w.scaled(*n));
            let lo = (self.dim_at(mu), rhs.dim_at(mu));
            let hi = (self.dim_at(&upper), rhs.dim_at(&upper));
            let mut e = Matrix::zeros(desc, hi.0 + hi.1, lo.0 + lo.1);
            let mut f = Matrix::zeros(desc, lo.0 + lo.1, hi.0 + hi.1);
            if let Some(pair) = self.ops.get(&key) {
                e.paste(0, 0, &pair.e);
                f.paste(0, 0, &pair.f);
            }
            if let Some(pair) = rhs.ops.get(&key) {
                e.paste(hi.0, lo.0, &pair.e);
                f.paste(lo.0, hi.0, &pair.f);
            }
            ops.insert(key, OperatorPair { e, f });
        }
        Ok(GradedObject {
            ctx: self.ctx.clone(),
            rs: self.rs.clone(),
            choice: self.choice.clone(),
            dims,
            ops,
            pivots: BTreeMap::new(),
            lambda: None,
            complete: self.complete && rhs.complete,
            truncation_height: match (self.truncation_height, rhs.truncation_height) {
                (None, None) => None,
                (a, b) => a.into_iter().chain(b).min(),
            },
        })
    }

    /// For each weight μ, the dimension of `ker E_μ` (kernel of the
    /// stacked E-blocks out of μ).
    pub fn primitive_dims(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for (w, &dim) in &self.dims {
            let stacked = self.stacked_e(w);
            let nullity = dim - linalg::rank(&stacked);
            if nullity > 0 {
                out.insert(w.clone(), nullity);
            }
        }
        out
    }

    /// All E-blocks out of μ stacked vertically (a matrix `M_μ → M_{δμ}`).
    pub fn stacked_e(&self, mu: &Weight) -> Matrix {
        let delta = self.assemble_delta(mu);
        let mut out = Matrix::zeros(self.ctx.descriptor(), delta.total_dim, self.dim_at(mu));
        for block in &delta.blocks {
            let e = self.e_matrix(mu, block.alpha, block.n);
            out.paste(block.offset, 0, &e);
        }
        out
    }

    /// All F-blocks into μ concatenated horizontally (a matrix `M_{δμ} → M_μ`).
    pub fn concat_f(&self, mu: &Weight) -> Matrix {
        let delta = self.assemble_delta(mu);
        let mut out = Matrix::zeros(self.ctx.descriptor(), self.dim_at(mu), delta.total_dim);
        for block in &delta.blocks {
            let f = self.f_matrix(mu, block.alpha, block.n);
            out.paste(0, block.offset, &f);
        }
        out
    }

    /// The multiset of highest weights in the semisimple decomposition:
    /// λ with multiplicity `dim M_λ^{prim}`.
    pub fn decompose(&self) -> BTreeMap<Weight, usize> {
        self.primitive_dims()
    }
}

/// When `diff = n·alpha` for an integer n, return n.
fn multiple_of(diff: &Weight, alpha: &Weight) -> Option<i64> {
    let j = alpha.0.iter().position(|&c| c != 0)?;
    if diff.0[j] % alpha.0[j] != 0 {
        return None;
    }
    let n = diff.0[j] / alpha.0[j];
    if *diff == alpha.scaled(n) {
        Some(n)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup_a1() -> (FieldContext, RootSystem, CoefficientChoice) {
        (
            FieldContext::parse("rational", "1").unwrap(),
            RootSystem::parse("A1").unwrap(),
            CoefficientChoice::quantum_binomial_default(),
        )
    }

    #[test]
    fn skyscraper_shape() {
        let (ctx, rs, c) = setup_a1();
        let s = GradedObject::skyscraper(ctx, rs, c, Weight(vec![3]));
        assert_eq!(s.total_dim(), 1);
        assert_eq!(s.character().multiplicity(&Weight(vec![3])), 1);
        assert_eq!(s.maximal_weights(), vec![Weight(vec![3])]);
        // delta space above the top is empty, and far above support too
        assert_eq!(s.assemble_delta(&Weight(vec![3])).total_dim, 0);
        assert_eq!(s.assemble_delta(&Weight(vec![99])).total_dim, 0);
    }

    #[test]
    fn delta_block_ordering() {
        let (ctx, rs, c) = setup_a1();
        // dims at (2) and (0); delta at (-2) sees (0) via n=1 and (2) via n=2
        let mut dims = BTreeMap::new();
        dims.insert(Weight(vec![2]), 1);
        dims.insert(Weight(vec![0]), 1);
        let obj = GradedObject::new_raw(
            ctx,
            rs,
            c,
            dims,
            BTreeMap::new(),
            BTreeMap::new(),
            None,
            true,
            None,
        );
        let delta = obj.assemble_delta(&Weight(vec![-2]));
        assert_eq!(delta.total_dim, 2);
        assert_eq!(delta.blocks.len(), 2);
        assert_eq!((delta.blocks[0].alpha, delta.blocks[0].n), (0, 1));
        assert_eq!(delta.blocks[0].source, Weight(vec![0]));
        assert_eq!((delta.blocks[1].alpha, delta.blocks[1].n), (0, 2));
        assert_eq!(delta.blocks[1].source, Weight(vec![2]));
    }

    #[test]
    fn g_delta_rank1_worked_example() {
        // A1, skyscraper at λ=(1): at μ=(-1) the delta space is M_{(1)}
        // via (α,1) and G is the 1×1 matrix ([1 over 1]) = (1) over (ℚ,1).
        let (ctx, rs, c) = setup_a1();
        let s = GradedObject::skyscraper(ctx.clone(), rs, c.clone(), Weight(vec![1]));
        let delta = s.assemble_delta(&Weight(vec![-1]));
        assert_eq!(delta.total_dim, 1);
        let g = s.g_delta(&delta, &c);
        assert_eq!(g.rows(), 1);
        assert_eq!(*g.get(0, 0), ctx.one());
    }

    #[test]
    fn g_delta_rank1_mod2() {
        let ctx = FieldContext::parse("fp:2", "1").unwrap();
        let rs = RootSystem::parse("A1").unwrap();
        let c = CoefficientChoice::quantum_binomial_default();
        let s = GradedObject::skyscraper(ctx.clone(), rs, c.clone(), Weight(vec![1]));
        let delta = s.assemble_delta(&Weight(vec![-1]));
        let g = s.g_delta(&delta, &c);
        assert_eq!(*g.get(0, 0), ctx.one());
    }

    #[test]
    fn character_convolution_and_dilation() {
        let mut a = Character::default();
        a.insert(Weight(vec![1]), 1);
        a.insert(Weight(vec![-1]), 1);
        let sq = a.convolution(&a);
        assert_eq!(sq.multiplicity(&Weight(vec![0])), 2);
        assert_eq!(sq.total_dim(), 4);
        let d = a.dilated(3);
        assert_eq!(d.multiplicity(&Weight(vec![3])), 1);
    }

    #[test]
    fn direct_sum_adds_characters() {
        let (ctx, rs, c) = setup_a1();
        let s = GradedObject::skyscraper(ctx, rs, c, Weight(vec![2]));
        let sum = s.direct_sum(&s).unwrap();
        assert_eq!(sum.character().multiplicity(&Weight(vec![2])), 2);
        assert_eq!(sum.total_dim(), 2);
        // mixed contexts are rejected
        let ctx2 = FieldContext::parse("fp:3", "1").unwrap();
        let rs2 = RootSystem::parse("A1").unwrap();
        let other = GradedObject::skyscraper(
            ctx2,
            rs2,
            CoefficientChoice::quantum_binomial_default(),
            Weight(vec![2]),
        );
        assert!(s.direct_sum(&other).is_err());
    }
}
