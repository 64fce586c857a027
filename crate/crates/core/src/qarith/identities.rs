//! Exhaustive exact verification of the quantum-binomial identities:
//! the transformation, symmetry, inversion, Pascal, Chu–Vandermonde,
//! Pfaff–Saalschütz and alternating-sum identities in ℤ[v,v⁻¹], plus the
//! q-Lucas theorem and the ℓ-divisibility lemmas in fixed positive-ℓ
//! contexts.
//!
//! Symbolic checks run over Laurent polynomials. The two convolution
//! identities additionally use a dense `i128` fast path with checked
//! arithmetic, falling back to big-integer polynomials on any overflow,
//! so the exhaustive boxes stay fast without sacrificing exactness.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::binomial::{
    integer_binomial, quantum_binomial, quantum_integer, GaussianRows, WDense,
};
use super::context::FieldContext;
use super::field::FieldElement;
use super::laurent::LaurentPoly;

/// Integer boxes for the identity suite, all derived from one headline
/// bound: the symbolic identities run over `|a|,|b|,|n| ≤ symbolic_bound`,
/// the Pfaff–Saalschütz free variables over `|x|,|y| ≤ saalschutz_xy_bound`,
/// the alternating sum over `2 ≤ m ≤ alternating_m_max`, and the
/// positive-ℓ checks over `0 ≤ a,b,n ≤ modular_bound`.
#[derive(Clone, Debug)]
pub struct IdentityRanges {
    pub symbolic_bound: i64,
    pub saalschutz_xy_bound: i64,
    pub alternating_m_max: i64,
    pub modular_bound: i64,
}

impl IdentityRanges {
    /// Standard derivation from a single headline bound `b`: symbolic box
    /// `b`, Saalschütz x/y box `min(b, 8)`, alternating m up to 8, and a
    /// 4× wider box for the specialization identities.
    pub fn from_bound(bound: u32) -> Self {
        let b = bound.max(1) as i64;
        IdentityRanges {
            symbolic_bound: b,
            saalschutz_xy_bound: b.min(8),
            alternating_m_max: 8,
            modular_bound: 4 * b,
        }
    }
}

/// Outcome of one identity over its whole box.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
}

impl IdentityCheck {
    fn new(name: impl Into<String>) -> Self {
        IdentityCheck {
            name: name.into(),
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < 8 {
                self.counterexamples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Report for the whole suite.
#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn total_instances(&self) -> u64 {
        self.checks.iter().map(|c| c.instances).sum()
    }
}

/// The fixed list of positive-ℓ contexts exercised by the suite.
pub fn fixed_modular_contexts() -> Vec<FieldContext> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        out.push(FieldContext::parse(&format!("fp:{p}"), "1").unwrap());
    }
    for d in [3u64, 5, 7] {
        out.push(FieldContext::parse(&format!("cyclo:{d}"), "zeta^1").unwrap());
    }
    out
}

/// Run the full identity suite over the given ranges.
pub fn verify_identities(ranges: &IdentityRanges) -> IdentityReport {
    let mut report = IdentityReport::default();
    report.checks.push(check_definition(ranges.symbolic_bound));
    report.checks.push(check_transformation(ranges.symbolic_bound));
    report.checks.push(check_symmetry(ranges.symbolic_bound));
    report.checks.push(check_inversion(ranges.symbolic_bound));
    report.checks.push(check_pascal(ranges.symbolic_bound));
    report.checks.push(check_chu_vandermonde(ranges.symbolic_bound));
    report.checks.push(check_pfaff_saalschutz(
        ranges.symbolic_bound,
        ranges.saalschutz_xy_bound,
    ));
    report.checks.push(check_alternating(
        ranges.saalschutz_xy_bound,
        ranges.alternating_m_max,
    ));
    report.checks.extend(check_modular(ranges.modular_bound));
    report
}

/// The defining quotient `[a][a-1]⋯[a-b+1] / ([1][2]⋯[b])`, computed by
/// exact division in ℤ[v,v⁻¹]. This is the independent route against
/// which the Pascal-recurrence implementation is compared.
pub(crate) fn binomial_by_product(a: i64, b: i64) -> LaurentPoly {
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
        .expect("the quantum binomial lies in Z[v,v^-1]")
}

fn check_definition(bound: i64) -> IdentityCheck {
    let mut check = IdentityCheck::new("definition: recurrence route equals product route");
    for a in -bound..=bound {
        for b in -bound..=bound {
            let ok = *quantum_binomial(a, b) == binomial_by_product(a, b);
            check.record(ok, || format!("a={a} b={b}"));
        }
    }
    check
}

fn check_transformation(bound: i64) -> IdentityCheck {
    let mut check = IdentityCheck::new("(1) transformation: [a b]' at w=v^2 equals v^{b(a-b)}[a b]");
    for a in 0..=bound {
        for b in 0..=bound {
            let gauss = if b <= a {
                let w = super::binomial::gaussian_w_poly(a, b);
                w_substituted(&w)
            } else {
                LaurentPoly::zero()
            };
            let rhs = binomial_by_product(a, b).shifted(b * (a - b));
            check.record(gauss == rhs, || format!("a={a} b={b}"));
        }
    }
    check
}

fn w_substituted(w: &WDense) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (i, c) in w.iter().enumerate() {
        if !c.is_zero() {
            out += &LaurentPoly::monomial(2 * i as i64, c.clone());
        }
    }
    out
}

fn check_symmetry(bound: i64) -> IdentityCheck {
    let mut check = IdentityCheck::new("(2) symmetry: [a b] = [a a-b] for 0 <= b <= a");
    for a in 0..=bound {
        for b in 0..=a {
            let ok = quantum_binomial(a, b) == quantum_binomial(a, a - b);
            check.record(ok, || format!("a={a} b={b}"));
        }
    }
    check
}

fn check_inversion(bound: i64) -> IdentityCheck {
    let mut check = IdentityCheck::new("(3) inversion: [a b] = (-1)^b [b-a-1 b]");
    for a in -bound..=bound {
        for b in -bound..=bound {
            let lhs = binomial_by_product(a, b);
            let mut rhs = binomial_by_product(b - a - 1, b);
            if b.rem_euclid(2) == 1 {
                rhs = -&rhs;
            }
            check.record(lhs == rhs, || format!("a={a} b={b}"));
        }
    }
    check
}

fn check_pascal(bound: i64) -> IdentityCheck {
    let mut check = IdentityCheck::new("(4) Pascal: [a b] = v^b [a-1 b] + v^{b-a} [a-1 b-1]");
    for a in -bound..=bound {
        for b in -bound..=bound {
            let lhs = quantum_binomial(a, b);
            let rhs = &quantum_binomial(a - 1, b).shifted(b)
                + &quantum_binomial(a - 1, b - 1).shifted(b - a);
            check.record(*lhs == rhs, || format!("a={a} b={b}"));
        }
    }
    check
}

fn check_chu_vandermonde(bound: i64) -> IdentityCheck {
    let table = DenseTable::new(2 * bound, bound);
    let cells: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|a| (-bound..=bound).map(move |b| (a, b)))
        .collect();
    let partial: Vec<IdentityCheck> = cells
        .par_iter()
        .map(|&(a, b)| {
            let mut check = IdentityCheck::new("");
            for n in -bound..=bound {
                let ok = match chu_vandermonde_dense(&table, a, b, n) {
                    Some(ok) => ok,
                    None => chu_vandermonde_bigint(a, b, n),
                };
                check.record(ok, || format!("a={a} b={b} n={n}"));
            }
            check
        })
        .collect();
    merge("(5) Chu-Vandermonde convolution", partial)
}

fn chu_vandermonde_dense(table: &DenseTable, a: i64, b: i64, n: i64) -> Option<bool> {
    let lhs = table.get(a + b, n)?;
    let mut acc = Dense::zero();
    for r in 0..=n.max(0) {
        let s = n - r;
        let term = table.get(a, r)?.mul(table.get(b, s)?)?;
        acc = acc.add(&term.shift(a * s - b * r))?;
    }
    Some(acc == *lhs)
}

fn chu_vandermonde_bigint(a: i64, b: i64, n: i64) -> bool {
    let lhs = quantum_binomial(a + b, n);
    let mut acc = LaurentPoly::zero();
    for r in 0..=n.max(0) {
        let s = n - r;
        let term = &*quantum_binomial(a, r) * &quantum_binomial(b, s);
        acc += &term.shifted(a * s - b * r);
    }
    acc == *lhs
}

fn check_pfaff_saalschutz(ab_bound: i64, xy_bound: i64) -> IdentityCheck {
    let reach = ab_bound + 2 * xy_bound + 1;
    let table = DenseTable::new(reach.max(2 * ab_bound), ab_bound);
    let cells: Vec<(i64, i64)> = (-ab_bound..=ab_bound)
        .flat_map(|a| (-ab_bound..=ab_bound).map(move |b| (a, b)))
        .collect();
    let partial: Vec<IdentityCheck> = cells
        .par_iter()
        .map(|&(a, b)| {
            let mut check = IdentityCheck::new("");
            for x in -xy_bound..=xy_bound {
                for y in -xy_bound..=xy_bound {
                    let ok = match saalschutz_dense(&table, x, y, a, b) {
                        Some(ok) => ok,
                        None => saalschutz_bigint(x, y, a, b),
                    };
                    check.record(ok, || format!("x={x} y={y} a={a} b={b}"));
                }
            }
            check
        })
        .collect();
    merge("(6) Pfaff-Saalschutz", partial)
}

fn saalschutz_dense(table: &DenseTable, x: i64, y: i64, a: i64, b: i64) -> Option<bool> {
    let lhs = table.get(x + a, a)?.mul(table.get(y + b, b)?)?;
    let mut acc = Dense::zero();
    for k in 0..=a.min(b).max(-1) {
        let term = table
            .get(x + y + k, k)?
            .mul(table.get(x + a - b, a - k)?)?
            .mul(table.get(y + b - a, b - k)?)?;
        acc = acc.add(&term)?;
    }
    Some(acc == lhs)
}

fn saalschutz_bigint(x: i64, y: i64, a: i64, b: i64) -> bool {
    let lhs = &*quantum_binomial(x + a, a) * &quantum_binomial(y + b, b);
    let mut acc = LaurentPoly::zero();
    for k in 0..=a.min(b).max(-1) {
        let term = &(&*quantum_binomial(x + y + k, k) * &quantum_binomial(x + a - b, a - k))
            * &quantum_binomial(y + b - a, b - k);
        acc += &term;
    }
    acc == lhs
}

fn check_alternating(x_bound: i64, m_max: i64) -> IdentityCheck {
    let mut check =
        IdentityCheck::new("(7) alternating sum: sum_r (-1)^r v^{r(2-m)} [x-r 1][m r] = 0");
    for m in 2..=m_max {
        for x in -x_bound..=x_bound {
            let mut acc = LaurentPoly::zero();
            for r in 0..=m {
                let mut term = &*quantum_binomial(x - r, 1) * &quantum_binomial(m, r);
                term = term.shifted(r * (2 - m));
                if r % 2 == 1 {
                    term = -&term;
                }
                acc += &term;
            }
            check.record(acc.is_zero(), || format!("m={m} x={x}"));
        }
    }
    check
}

// ---------------------------------------------------------------------
// Positive-ℓ checks: q-Lucas and the two ℓ-divisibility lemmas.
// ---------------------------------------------------------------------

fn check_modular(bound: i64) -> Vec<IdentityCheck> {
    let contexts = fixed_modular_contexts();
    let mut classes: Vec<(u64, Vec<FieldContext>)> = Vec::new();
    for ctx in contexts {
        let ell = ctx.ell();
        match classes.iter_mut().find(|(l, _)| *l == ell) {
            Some((_, v)) => v.push(ctx),
            None => classes.push((ell, vec![ctx])),
        }
    }
    classes.sort_by_key(|(l, _)| *l);
    let results: Vec<Vec<IdentityCheck>> = classes
        .par_iter()
        .map(|(ell, ctxs)| check_modular_class(*ell, ctxs, bound))
        .collect();
    results.into_iter().flatten().collect()
}

/// Evaluate the quantum binomial `[a over b]` given its `w`-Gaussian
/// coefficient vector, using `v^order = 1`: bucket the exponents
/// `2i - b(a-b)` modulo the order of q and take one short linear
/// combination of powers of q.
fn eval_wdense(ctx: &FieldContext, a: i64, b: i64, w: &WDense) -> FieldElement {
    if ctx.q_is_one() {
        let total: BigInt = w.iter().sum();
        return ctx.descriptor().from_bigint(&total);
    }
    let order = if *ctx.q() == ctx.descriptor().from_i64(-1) {
        2
    } else {
        ctx.ell().max(1) as i64 // q is a primitive ℓ-th root of unity
    };
    let mut buckets = vec![BigInt::zero(); order as usize];
    let shift = -(b * (a - b));
    for (i, c) in w.iter().enumerate() {
        let e = (2 * i as i64 + shift).rem_euclid(order);
        buckets[e as usize] += c;
    }
    let mut acc = ctx.zero();
    for (e, c) in buckets.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&ctx.q_power(e as i64).mul(&ctx.descriptor().from_bigint(c)));
        }
    }
    acc
}

fn check_modular_class(ell: u64, ctxs: &[FieldContext], bound: i64) -> Vec<IdentityCheck> {
    let l = ell as i64;
    let b_max = bound;
    let row_max = bound + l * bound;

    // [a over b]_K for a,b <= bound, per context, plus ordinary binomials.
    let mut qtab: Vec<Vec<Vec<FieldElement>>> = vec![Vec::new(); ctxs.len()];
    let mut ctab: Vec<Vec<Vec<FieldElement>>> = vec![Vec::new(); ctxs.len()];
    {
        let mut rows = GaussianRows::new(b_max);
        loop {
            let a = rows.a();
            for (ci, ctx) in ctxs.iter().enumerate() {
                let mut qrow = Vec::with_capacity(b_max as usize + 1);
                let mut crow = Vec::with_capacity(b_max as usize + 1);
                for b in 0..=b_max {
                    let q = match rows.row().get(b as usize) {
                        Some(w) => eval_wdense(ctx, a, b, w),
                        None => ctx.zero(),
                    };
                    qrow.push(q);
                    crow.push(ctx.descriptor().from_bigint(&integer_binomial(a, b)));
                }
                qtab[ci].push(qrow);
                ctab[ci].push(crow);
            }
            if a == bound {
                break;
            }
            rows.advance();
        }
    }

    let mut lucas: Vec<IdentityCheck> = ctxs
        .iter()
        .map(|c| IdentityCheck::new(format!("4.4 q-Lucas in {c}")))
        .collect();
    for ci in 0..ctxs.len() {
        for a in 0..=bound {
            let (a1, a0) = (a / l, a % l);
            for b in 0..=bound {
                let (b1, b0) = (b / l, b % l);
                let lhs = &qtab[ci][a as usize][b as usize];
                let rhs = qtab[ci][a0 as usize][b0 as usize].mul(&ctab[ci][a1 as usize][b1 as usize]);
                lucas[ci].record(*lhs == rhs, || format!("a={a} b={b}"));
            }
        }
    }

    // One long row sweep serves both divisibility lemmas.
    let mut div1: Vec<IdentityCheck> = ctxs
        .iter()
        .map(|c| IdentityCheck::new(format!("4.5(1) [la b] specialization in {c}")))
        .collect();
    let mut div2: Vec<IdentityCheck> = ctxs
        .iter()
        .map(|c| IdentityCheck::new(format!("4.5(2) Chu-Vandermonde specialization in {c}")))
        .collect();

    let mut rows = GaussianRows::new(b_max);
    loop {
        let big_a = rows.a();
        for (ci, ctx) in ctxs.iter().enumerate() {
            let evaluated: Vec<FieldElement> = (0..=b_max)
                .map(|b| match rows.row().get(b as usize) {
                    Some(w) => eval_wdense(ctx, big_a, b, w),
                    None => ctx.zero(),
                })
                .collect();

            // 4.5(1): rows of the form big_a = l·a with a <= bound
            if big_a % l == 0 && big_a / l <= bound {
                let a = big_a / l;
                for b in 0..=b_max {
                    let expected = if b % l == 0 {
                        ctab[ci][a as usize][(b / l) as usize].clone()
                    } else {
                        ctx.zero()
                    };
                    div1[ci].record(evaluated[b as usize] == expected, || {
                        format!("a={a} b={b}")
                    });
                }
            }

            // 4.5(2): decompositions big_a = a + l·b with 0 <= a,b <= bound
            let b_lo = ((big_a - bound) + l - 1).div_euclid(l).max(0);
            let b_hi = (big_a / l).min(bound);
            for b in b_lo..=b_hi {
                let a = big_a - l * b;
                for n in 0..=bound {
                    let mut rhs = ctx.zero();
                    let mut s = 0;
                    while l * s <= n {
                        let r = n - l * s;
                        if r <= bound && s <= bound {
                            rhs = rhs.add(
                                &qtab[ci][a as usize][r as usize]
                                    .mul(&ctab[ci][b as usize][s as usize]),
                            );
                        }
                        s += 1;
                    }
                    div2[ci].record(evaluated[n as usize] == rhs, || {
                        format!("a={a} b={b} n={n}")
                    });
                }
            }
        }
        if rows.a() == row_max {
            break;
        }
        rows.advance();
    }

    let mut out = lucas;
    out.extend(div1);
    out.extend(div2);
    out
}

fn merge(name: &str, parts: Vec<IdentityCheck>) -> IdentityCheck {
    let mut out = IdentityCheck::new(name);
    for part in parts {
        out.instances += part.instances;
        out.failures += part.failures;
        for ce in part.counterexamples {
            if out.counterexamples.len() < 8 {
                out.counterexamples.push(ce);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------
// Dense i128 fast path.
// ---------------------------------------------------------------------

/// A Laurent polynomial with i128 coefficients laid out densely from a
/// base exponent. `None` anywhere means "overflowed, use the big-integer
/// route".
#[derive(Clone, Debug, PartialEq)]
struct Dense {
    off: i64,
    c: Vec<i128>,
}

impl Dense {
    fn zero() -> Self {
        Dense { off: 0, c: vec![] }
    }

    fn normalize(mut self) -> Self {
        while self.c.last().is_some_and(|&x| x == 0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.off += lead as i64;
        }
        if self.c.is_empty() {
            self.off = 0;
        }
        self
    }

    fn from_poly(p: &LaurentPoly) -> Option<Self> {
        if p.is_zero() {
            return Some(Self::zero());
        }
        let off = p.min_exp().unwrap();
        let len = (p.max_exp().unwrap() - off) as usize + 1;
        let mut c = vec![0i128; len];
        for (e, coeff) in p.terms() {
            c[(e - off) as usize] = i128::try_from(coeff).ok()?;
        }
        Some(Dense { off, c })
    }

    fn shift(&self, k: i64) -> Self {
        if self.c.is_empty() {
            return Self::zero();
        }
        Dense {
            off: self.off + k,
            c: self.c.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.c.is_empty() || rhs.c.is_empty() {
            return Some(Self::zero());
        }
        let mut c = vec![0i128; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = c[i + j].checked_add(a.checked_mul(b)?)?;
                }
            }
        }
        Some(
            Dense {
                off: self.off + rhs.off,
                c,
            }
            .normalize(),
        )
    }

    fn add(&self, rhs: &Self) -> Option<Self> {
        if self.c.is_empty() {
            return Some(rhs.clone());
        }
        if rhs.c.is_empty() {
            return Some(self.clone());
        }
        let off = self.off.min(rhs.off);
        let hi = (self.off + self.c.len() as i64).max(rhs.off + rhs.c.len() as i64);
        let mut c = vec![0i128; (hi - off) as usize];
        for (i, &a) in self.c.iter().enumerate() {
            c[(self.off - off) as usize + i] = a;
        }
        for (i, &b) in rhs.c.iter().enumerate() {
            let slot = (rhs.off - off) as usize + i;
            c[slot] = c[slot].checked_add(b)?;
        }
        Some(Dense { off, c }.normalize())
    }
}

/// Precomputed dense binomials `[a over b]` for `|a| ≤ a_bound`,
/// `0 ≤ b ≤ b_bound` (b outside that range is handled as zero).
struct DenseTable {
    a_bound: i64,
    b_bound: i64,
    zero: Dense,
    data: Vec<Option<Dense>>,
}

impl DenseTable {
    fn new(a_bound: i64, b_bound: i64) -> Self {
        let mut data = Vec::with_capacity(((2 * a_bound + 1) * (b_bound + 1)) as usize);
        for a in -a_bound..=a_bound {
            for b in 0..=b_bound {
                data.push(Dense::from_poly(&quantum_binomial(a, b)));
            }
        }
        DenseTable {
            a_bound,
            b_bound,
            zero: Dense::zero(),
            data,
        }
    }

    /// `None` = value not representable in i128 (take the fallback).
    fn get(&self, a: i64, b: i64) -> Option<&Dense> {
        if b < 0 || (a >= 0 && b > a) {
            return Some(&self.zero);
        }
        assert!(
            a.abs() <= self.a_bound && b <= self.b_bound,
            "dense table bounds too small: a={a} b={b}"
        );
        self.data[((a + self.a_bound) * (self.b_bound + 1) + b) as usize].as_ref()
    }
}
