//! Multivariate division with quotients, Buchberger's algorithm with
//! Gebauer–Möller pair elimination, reduced Gröbner bases, and membership
//! certificates.
//!
//! The reduced basis is unique per (ideal, order), which is what makes ideal
//! equality decidable downstream. Certificate (transform) tracking is opt-in
//! because it roughly doubles memory; only membership-certificate checks need
//! it.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::scalars::Field;
use crate::{Error, Result};

/// Environment variable capping any single Gröbner-basis run, in seconds.
pub const BUDGET_ENV: &str = "IDEALFORGE_BUDGET_SECONDS";

/// Default per-run budget when the environment variable is unset.
pub const DEFAULT_BUDGET_SECONDS: u64 = 600;

/// The per-run time budget from the environment (default 600 s).
pub fn budget_from_env() -> Duration {
    let secs = std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .unwrap_or(DEFAULT_BUDGET_SECONDS);
    Duration::from_secs(secs)
}

/// A soft deadline checked periodically inside reduction loops.
#[derive(Debug, Clone, Copy)]
struct Deadline {
    at: Instant,
}

impl Deadline {
    fn from_env() -> Deadline {
        Deadline { at: Instant::now() + budget_from_env() }
    }

    fn from_budget(budget: Duration) -> Deadline {
        Deadline { at: Instant::now() + budget }
    }

    fn check(&self) -> Result<()> {
        if Instant::now() >= self.at {
            Err(Error::Budget(format!(
                "Gröbner run exceeded the {BUDGET_ENV} budget"
            )))
        } else {
            Ok(())
        }
    }
}

/// A reduced Gröbner basis: monic, mutually tail-reduced, sorted ascending by
/// leading monomial; uniquely determined by (ideal, order).
#[derive(Debug, Clone)]
pub struct ReducedGB<F: Field> {
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial<F>>,
    /// When requested: `basis[k] = Σ_i transform[k][i] · gens[i]` over the
    /// input generator list, exactly.
    pub transform: Option<Vec<Vec<Polynomial<F>>>>,
}

impl<F: Field> ReducedGB<F> {
    /// The unique normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        let (rem, _) = reduce(f, &self.basis, self.order)?;
        Ok(rem)
    }

    /// Ideal membership: zero normal form.
    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether the basis is `{1}` (the unit ideal).
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].total_degree() == 0
    }

    /// A membership certificate for `f` over the *original* generators used
    /// to build this basis; requires transform tracking. `None` iff the
    /// normal form of `f` is nonzero.
    pub fn certificate(
        &self,
        gens: &[Polynomial<F>],
        f: &Polynomial<F>,
    ) -> Result<Option<Certificate<F>>> {
        let transform = self
            .transform
            .as_ref()
            .expect("certificate requires a transform-tracked basis");
        let (rem, quots) = reduce(f, &self.basis, self.order)?;
        if !rem.is_zero() {
            return Ok(None);
        }
        let field = f.field().clone();
        let ring = f.ring().clone();
        let mut coefficients = vec![Polynomial::zero(&field, &ring); gens.len()];
        for (k, q) in quots.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (i, t) in transform[k].iter().enumerate() {
                if !t.is_zero() {
                    coefficients[i] = coefficients[i].add(&q.mul(t)?)?;
                }
            }
        }
        let cert = Certificate::new(f.clone(), coefficients);
        debug_assert!(cert.verify(gens)?, "certificate re-expansion failed");
        Ok(Some(cert))
    }
}

/// Explicit coefficients expressing a target polynomial in a generator list.
#[derive(Debug, Clone)]
pub struct Certificate<F: Field> {
    pub target: Polynomial<F>,
    pub coefficients: Vec<Polynomial<F>>,
    pub max_coeff_degree: i64,
}

impl<F: Field> Certificate<F> {
    /// Builds the certificate and records the coefficient-degree measure.
    pub fn new(target: Polynomial<F>, coefficients: Vec<Polynomial<F>>) -> Self {
        let max_coeff_degree =
            coefficients.iter().map(|c| c.total_degree()).max().unwrap_or(-1);
        Certificate { target, coefficients, max_coeff_degree }
    }

    /// Re-expands `Σ coefficients[i]·gens[i]` and compares with the target,
    /// exactly.
    pub fn verify(&self, gens: &[Polynomial<F>]) -> Result<bool> {
        if gens.len() != self.coefficients.len() {
            return Ok(false);
        }
        let mut acc = Polynomial::zero(self.target.field(), self.target.ring());
        for (c, g) in self.coefficients.iter().zip(gens.iter()) {
            if !c.is_zero() {
                acc = acc.add(&c.mul(g)?)?;
            }
        }
        Ok(acc == self.target)
    }
}

/// Multivariate division: `f = Σ quotients[i]·gens[i] + remainder`, with no
/// remainder term divisible by any leading monomial of `gens`. Deterministic:
/// the lowest-index divisor wins at every step.
pub fn reduce<F: Field>(
    f: &Polynomial<F>,
    gens: &[Polynomial<F>],
    order: MonomialOrder,
) -> Result<(Polynomial<F>, Vec<Polynomial<F>>)> {
    let deadline = Deadline::from_env();
    reduce_inner(f, gens, order, &deadline)
}

fn reduce_inner<F: Field>(
    f: &Polynomial<F>,
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    deadline: &Deadline,
) -> Result<(Polynomial<F>, Vec<Polynomial<F>>)> {
    let field = f.field().clone();
    let ring = f.ring().clone();
    for g in gens {
        if g.ring() != &ring || g.field() != &field {
            return Err(Error::RingMismatch("division operands disagree".into()));
        }
    }
    let gens: Vec<Polynomial<F>> = gens.iter().map(|g| g.with_order(order)).collect();
    let mut r = f.with_order(order);
    let mut rem_terms: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut quot_terms: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); gens.len()];
    let mut steps = 0u32;
    while let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        steps += 1;
        if steps % 1024 == 0 {
            deadline.check()?;
        }
        let hit = gens.iter().position(|g| {
            g.leading().map_or(false, |(gm, _)| gm.divides(&lm))
        });
        match hit {
            Some(i) => {
                let (gm, gc) = gens[i].leading().expect("nonzero divisor");
                let shift = lm.div(gm);
                let c = field.div(&lc, gc).expect("leading coefficient nonzero");
                quot_terms[i].push((shift.clone(), c.clone()));
                let neg_c = field.neg(&c);
                r = r.merge_scaled(&gens[i], Some(&shift), &neg_c);
            }
            None => {
                rem_terms.push((lm, lc));
                r = r.tail();
            }
        }
    }
    let remainder = Polynomial::from_terms(&field, &ring, order, rem_terms);
    let quotients = quot_terms
        .into_iter()
        .map(|ts| Polynomial::from_terms(&field, &ring, order, ts))
        .collect();
    Ok((remainder, quotients))
}

/// One working element of the Buchberger state: the polynomial plus, when
/// tracking, its representation over the input generators.
struct WorkElem<F: Field> {
    p: Polynomial<F>,
    rep: Option<Vec<Polynomial<F>>>,
}

impl<F: Field> WorkElem<F> {
    fn lm(&self) -> &Monomial {
        self.p.leading().expect("work elements are nonzero").0
    }

    /// Scales both the polynomial and its representation into canonical form.
    fn normalize(&mut self) {
        let field = self.p.field().clone();
        let coeffs: Vec<F::Elem> = self.p.terms().iter().map(|(_, c)| c.clone()).collect();
        let gamma = field.canonical_scale(&coeffs);
        if !field.is_one(&gamma) {
            self.p = self.p.scale(&gamma);
            if let Some(rep) = &mut self.rep {
                for t in rep.iter_mut() {
                    *t = t.scale(&gamma);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens` under
/// `order`. Zero generators are dropped. With `with_transform`, every basis
/// element carries an exact representation over the input list.
pub fn groebner<F: Field>(
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    with_transform: bool,
) -> Result<ReducedGB<F>> {
    groebner_budgeted(gens, order, with_transform, budget_from_env())
}

/// As [`groebner`], but with an explicit time budget.
pub fn groebner_budgeted<F: Field>(
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    with_transform: bool,
    budget: Duration,
) -> Result<ReducedGB<F>> {
    let deadline = Deadline::from_budget(budget);
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(ReducedGB {
            order,
            basis: Vec::new(),
            transform: with_transform.then(Vec::new),
        });
    };
    let field = first.field().clone();
    let ring = first.ring().clone();

    let mut g: Vec<WorkElem<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for (idx, gen) in gens.iter().enumerate() {
        if gen.ring() != &ring || gen.field() != &field {
            return Err(Error::RingMismatch("generators disagree on ring/field".into()));
        }
        if gen.is_zero() {
            continue;
        }
        let rep = with_transform.then(|| {
            let mut row = vec![Polynomial::zero(&field, &ring); gens.len()];
            row[idx] = Polynomial::one(&field, &ring);
            row
        });
        let mut elem = WorkElem { p: gen.with_order(order), rep };
        elem.normalize();
        add_element(&mut g, &mut pairs, elem);
    }

    while !pairs.is_empty() {
        deadline.check()?;
        // Normal selection strategy: smallest lcm under the active order,
        // ties broken by (i, j) for determinism.
        let mut best = 0;
        for k in 1..pairs.len() {
            let a = &pairs[k];
            let b = &pairs[best];
            match order.cmp(&a.lcm, &b.lcm) {
                Ordering::Less => best = k,
                Ordering::Equal if (a.i, a.j) < (b.i, b.j) => best = k,
                _ => {}
            }
        }
        let pair = pairs.swap_remove(best);
        let (spoly, srep) = s_polynomial(&g[pair.i], &g[pair.j], &pair.lcm, &field, &ring, gens.len())?;
        let (nf, nf_rep) = reduce_tracked(spoly, srep, &g, order, &deadline)?;
        if nf.is_zero() {
            continue;
        }
        let mut elem = WorkElem { p: nf, rep: nf_rep };
        elem.normalize();
        add_element(&mut g, &mut pairs, elem);
    }

    interreduce(g, order, with_transform, &deadline)
}

/// `S(f, g) = lc_g·(lcm/lm_f)·f − lc_f·(lcm/lm_g)·g`: both leading terms meet
/// at `lcm` and cancel.
fn s_polynomial<F: Field>(
    a: &WorkElem<F>,
    b: &WorkElem<F>,
    lcm: &Monomial,
    field: &F,
    ring: &crate::poly::Ring,
    ngens: usize,
) -> Result<(Polynomial<F>, Option<Vec<Polynomial<F>>>)> {
    let (lma, lca) = a.p.leading().expect("nonzero");
    let (lmb, lcb) = b.p.leading().expect("nonzero");
    let ua = lcm.div(lma);
    let ub = lcm.div(lmb);
    let lca = lca.clone();
    let lcb = lcb.clone();
    let left = a.p.mul_monomial(&ua).scale(&lcb);
    let right = b.p.mul_monomial(&ub).scale(&lca);
    let s = left.sub(&right)?;
    let rep = match (&a.rep, &b.rep) {
        (Some(ra), Some(rb)) => {
            let mut row = Vec::with_capacity(ngens);
            let neg_lca = field.neg(&lca);
            for i in 0..ngens {
                let l = ra[i].mul_monomial(&ua).scale(&lcb);
                let r = rb[i].mul_monomial(&ub).scale(&neg_lca);
                row.push(l.add(&r)?);
            }
            Some(row)
        }
        _ => None,
    };
    let _ = ring;
    Ok((s, rep))
}

/// Full normal form of `p` against the working basis, updating the tracked
/// representation alongside.
fn reduce_tracked<F: Field>(
    p: Polynomial<F>,
    rep: Option<Vec<Polynomial<F>>>,
    g: &[WorkElem<F>],
    order: MonomialOrder,
    deadline: &Deadline,
) -> Result<(Polynomial<F>, Option<Vec<Polynomial<F>>>)> {
    let field = p.field().clone();
    let ring = p.ring().clone();
    let mut r = p;
    let mut rep = rep;
    let mut rem_terms: Vec<(Monomial, F::Elem)> = Vec::new();
    let mut steps = 0u32;
    while let Some((lm, lc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        steps += 1;
        if steps % 1024 == 0 {
            deadline.check()?;
        }
        match g.iter().position(|e| e.lm().divides(&lm)) {
            Some(i) => {
                let (gm, gc) = g[i].p.leading().expect("nonzero");
                let shift = lm.div(gm);
                let c = field.div(&lc, gc).expect("nonzero leading coefficient");
                let neg_c = field.neg(&c);
                r = r.merge_scaled(&g[i].p, Some(&shift), &neg_c);
                if let Some(rep) = &mut rep {
                    let gi_rep = g[i].rep.as_ref().expect("tracking is uniform");
                    let shift_poly =
                        Polynomial::from_terms(&field, &ring, order, vec![(shift, neg_c)]);
                    for (t, gt) in rep.iter_mut().zip(gi_rep.iter()) {
                        if !gt.is_zero() {
                            *t = t.add(&shift_poly.mul(gt)?)?;
                        }
                    }
                }
            }
            None => {
                rem_terms.push((lm, lc));
                r = r.tail();
            }
        }
    }
    let remainder = Polynomial::from_terms(&field, &ring, order, rem_terms);
    Ok((remainder, rep))
}

/// Gebauer–Möller update: installs a new element, pruning the pair queue by
/// the chain and product criteria.
fn add_element<F: Field>(g: &mut Vec<WorkElem<F>>, pairs: &mut Vec<Pair>, elem: WorkElem<F>) {
    let t = g.len();
    let lm_t = elem.lm().clone();

    // Candidate pairs (i, t), pruned among themselves: keep a pair only if
    // it is coprime (then dropped below) or no other candidate's lcm divides
    // its lcm.
    let cand: Vec<Pair> = (0..t)
        .map(|i| Pair { i, j: t, lcm: g[i].lm().lcm(&lm_t) })
        .collect();
    let coprime: Vec<bool> = (0..t).map(|i| g[i].lm().coprime(&lm_t)).collect();
    let mut keep = vec![false; t];
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..t {
        let survives = coprime[i] || {
            let me = &cand[i].lcm;
            let later = (i + 1..t).any(|j| cand[j].lcm.divides(me));
            let earlier = kept.iter().any(|&j| cand[j].lcm.divides(me));
            !(later || earlier)
        };
        if survives {
            keep[i] = true;
            kept.push(i);
        }
    }

    // Chain criterion against the old queue: drop (i, j) once lm_t divides
    // their lcm and both mixed lcms are proper.
    pairs.retain(|p| {
        !lm_t.divides(&p.lcm)
            || g[p.i].lm().lcm(&lm_t) == p.lcm
            || g[p.j].lm().lcm(&lm_t) == p.lcm
    });

    // Product criterion: coprime leading monomials reduce to zero anyway.
    for (i, pair) in cand.into_iter().enumerate() {
        if keep[i] && !coprime[i] {
            pairs.push(pair);
        }
    }

    g.push(elem);
}

/// Extracts the unique reduced basis: minimal leading monomials, tails fully
/// reduced, monic, sorted ascending by leading monomial.
fn interreduce<F: Field>(
    g: Vec<WorkElem<F>>,
    order: MonomialOrder,
    with_transform: bool,
    deadline: &Deadline,
) -> Result<ReducedGB<F>> {
    if g.is_empty() {
        return Ok(ReducedGB {
            order,
            basis: Vec::new(),
            transform: with_transform.then(Vec::new),
        });
    }
    let field = g[0].p.field().clone();

    // Minimal subset: ascending by leading monomial, keep only elements whose
    // leading monomial no kept element divides.
    let mut idx: Vec<usize> = (0..g.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(g[a].lm(), g[b].lm()).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for &k in &idx {
        if !kept.iter().any(|&m| g[m].lm().divides(g[k].lm())) {
            kept.push(k);
        }
    }

    // Tail-reduce each survivor by the others; by minimality the leading
    // term survives its own reduction.
    let mut basis: Vec<WorkElem<F>> = Vec::with_capacity(kept.len());
    for (pos, &k) in kept.iter().enumerate() {
        let others: Vec<WorkElem<F>> = kept
            .iter()
            .enumerate()
            .filter(|(q, _)| *q != pos)
            .map(|(_, &m)| WorkElem { p: g[m].p.clone(), rep: g[m].rep.clone() })
            .collect();
        let (nf, nf_rep) =
            reduce_tracked(g[k].p.clone(), g[k].rep.clone(), &others, order, deadline)?;
        debug_assert!(!nf.is_zero(), "minimal element reduced to zero");
        let mut elem = WorkElem { p: nf, rep: nf_rep };
        // Monic canonical form.
        let lc = elem.p.leading().expect("nonzero").1.clone();
        let inv = field.inv(&lc).expect("leading coefficient nonzero");
        if !field.is_one(&inv) {
            elem.p = elem.p.scale(&inv);
            if let Some(rep) = &mut elem.rep {
                for t in rep.iter_mut() {
                    *t = t.scale(&inv);
                }
            }
        }
        basis.push(elem);
    }
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let transform = if with_transform {
        Some(basis.iter().map(|e| e.rep.clone().expect("tracked")).collect())
    } else {
        None
    };
    let basis = basis.into_iter().map(|e| e.p).collect();
    Ok(ReducedGB { order, basis, transform })
}

/// Buchberger's criterion, asserted exhaustively: every S-polynomial of basis
/// pairs reduces to zero. Used by tests and the verifier's self-checks.
pub fn is_groebner<F: Field>(basis: &[Polynomial<F>], order: MonomialOrder) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (lmi, lci) = basis[i].leading().expect("nonzero");
            let (lmj, lcj) = basis[j].leading().expect("nonzero");
            let lcm = lmi.lcm(lmj);
            let left = basis[i].mul_monomial(&lcm.div(lmi)).scale(lcj);
            let right = basis[j].mul_monomial(&lcm.div(lmj)).scale(lci);
            let s = left.sub(&right)?;
            let (rem, _) = reduce(&s, basis, order)?;
            if !rem.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, ring_make, RingSpec};
    use crate::scalars::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::time::Duration;

    fn qq() -> Rationals {
        Rationals
    }

    fn ring(names: &[&str]) -> crate::poly::Ring {
        ring_make(RingSpec::custom(names.iter().copied()).unwrap()).unwrap()
    }

    fn pp(f: &Rationals, r: &crate::poly::Ring, s: &str) -> Polynomial<Rationals> {
        parse_poly(f, r, s).unwrap()
    }

    #[test]
    fn division_examples() {
        let f = qq();
        let r = ring(&["x", "y"]);
        let (rem, quots) =
            reduce(&pp(&f, &r, "x^2*y"), &[pp(&f, &r, "x")], MonomialOrder::Lex).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quots[0], pp(&f, &r, "x*y"));

        let (rem, quots) =
            reduce(&pp(&f, &r, "y"), &[pp(&f, &r, "x")], MonomialOrder::Lex).unwrap();
        assert_eq!(rem, pp(&f, &r, "y"));
        assert!(quots[0].is_zero());

        // Lowest-index divisor wins ties.
        let (rem, quots) = reduce(
            &pp(&f, &r, "x*y"),
            &[pp(&f, &r, "x"), pp(&f, &r, "y")],
            MonomialOrder::Lex,
        )
        .unwrap();
        assert!(rem.is_zero());
        assert_eq!(quots[0], pp(&f, &r, "y"));
        assert!(quots[1].is_zero());
    }

    #[test]
    fn division_identity_holds() {
        let f = qq();
        let r = ring(&["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rand_poly = |rng: &mut ChaCha8Rng| {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(0..5) {
                let exps: Vec<u16> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                terms.push((
                    crate::poly::Monomial::new(exps),
                    f.from_i64(rng.gen_range(-3i64..=3)),
                ));
            }
            Polynomial::from_terms(&f, &r, MonomialOrder::GrevLex, terms)
        };
        for _ in 0..100 {
            let p = rand_poly(&mut rng);
            let g1 = rand_poly(&mut rng);
            let g2 = rand_poly(&mut rng);
            let gens = vec![g1, g2];
            let (rem, quots) = reduce(&p, &gens, MonomialOrder::GrevLex).unwrap();
            let mut acc = rem.clone();
            for (q, g) in quots.iter().zip(gens.iter()) {
                acc = acc.add(&q.mul(g).unwrap()).unwrap();
            }
            assert_eq!(acc, p, "f = Σ qᵢgᵢ + r must hold exactly");
            // No remainder term is divisible by any leading monomial.
            for g in gens.iter().filter(|g| !g.is_zero()) {
                let lm = g.leading().unwrap().0;
                for (m, _) in rem.terms() {
                    assert!(!lm.divides(m));
                }
            }
        }
    }

    #[test]
    fn groebner_univariate_collapse() {
        let f = qq();
        let r = ring(&["x"]);
        let gb = groebner(
            &[pp(&f, &r, "x^2 - 1"), pp(&f, &r, "x^3 - x")],
            MonomialOrder::Lex,
            false,
        )
        .unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert_eq!(gb.basis[0], pp(&f, &r, "x^2 - 1"));
    }

    #[test]
    fn groebner_already_reduced() {
        let f = qq();
        let r = ring(&["x", "y"]);
        let gb =
            groebner(&[pp(&f, &r, "x"), pp(&f, &r, "y")], MonomialOrder::GrevLex, false).unwrap();
        assert_eq!(gb.basis, vec![pp(&f, &r, "y"), pp(&f, &r, "x")]);
    }

    #[test]
    fn groebner_eliminates_t() {
        // (t·x, (1−t)·y) ∩ k[x,y] = (x·y): the brute-force elimination oracle
        // for this 3-variable instance is the pencil-and-paper expansion.
        let f = qq();
        let r = ring(&["t", "x", "y"]);
        let gb = groebner(
            &[pp(&f, &r, "t*x"), pp(&f, &r, "y - t*y")],
            MonomialOrder::Block { split: 1 },
            false,
        )
        .unwrap();
        let free: Vec<_> = gb.basis.iter().filter(|p| !p.uses_var(0)).collect();
        assert_eq!(free.len(), 1);
        assert_eq!(free[0], &pp(&f, &r, "x*y"));
    }

    #[test]
    fn groebner_zero_and_empty_inputs() {
        let f = qq();
        let r = ring(&["x"]);
        let gb = groebner::<Rationals>(&[], MonomialOrder::Lex, false).unwrap();
        assert!(gb.basis.is_empty());
        let z = Polynomial::zero(&f, &r);
        let gb = groebner(&[z.clone(), pp(&f, &r, "x"), z], MonomialOrder::Lex, true).unwrap();
        assert_eq!(gb.basis.len(), 1);
        // Transform rows stay aligned with the 3-element input list.
        assert_eq!(gb.transform.as_ref().unwrap()[0].len(), 3);
    }

    #[test]
    fn groebner_is_idempotent() {
        let f = qq();
        let r = ring(&["x", "y", "z"]);
        let gens = vec![
            pp(&f, &r, "x^2 + y"),
            pp(&f, &r, "x*y - z"),
            pp(&f, &r, "y^3 - 2*z"),
        ];
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let gb = groebner(&gens, order, false).unwrap();
            assert!(is_groebner(&gb.basis, order).unwrap());
            let gb2 = groebner(&gb.basis, order, false).unwrap();
            assert_eq!(gb.basis, gb2.basis, "reduced basis is a fixed point");
        }
    }

    #[test]
    fn classic_katsura_like_system() {
        // A small dense-ish system; checks the S-pair criterion holds on the
        // output and that membership of the inputs is preserved.
        let f = qq();
        let r = ring(&["x", "y", "z"]);
        let gens = vec![
            pp(&f, &r, "x + 2*y + 2*z - 1"),
            pp(&f, &r, "x^2 + 2*y^2 + 2*z^2 - x"),
            pp(&f, &r, "2*x*y + 2*y*z - y"),
        ];
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let gb = groebner(&gens, order, false).unwrap();
            assert!(is_groebner(&gb.basis, order).unwrap());
            for g in &gens {
                assert!(gb.contains(g).unwrap());
            }
        }
    }

    #[test]
    fn transform_reexpands_every_basis_element() {
        let f = qq();
        let r = ring(&["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..25 {
            let mut gens = Vec::new();
            for _ in 0..rng.gen_range(1..4) {
                let mut terms = Vec::new();
                for _ in 0..rng.gen_range(1..4) {
                    let exps: Vec<u16> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                    terms.push((
                        crate::poly::Monomial::new(exps),
                        f.from_i64(rng.gen_range(-2i64..=2)),
                    ));
                }
                gens.push(Polynomial::from_terms(&f, &r, MonomialOrder::GrevLex, terms));
            }
            let gb = groebner(&gens, MonomialOrder::GrevLex, true).unwrap();
            let transform = gb.transform.as_ref().unwrap();
            for (k, b) in gb.basis.iter().enumerate() {
                let cert = Certificate::new(b.clone(), transform[k].clone());
                assert!(cert.verify(&gens).unwrap(), "basis element fails to re-expand");
            }
            // Each input generator reduces to zero by the basis.
            for g in &gens {
                assert!(gb.contains(g).unwrap());
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let f = qq();
        let r = ring(&["x"]);
        let gens = vec![pp(&f, &r, "x^2 - 1"), pp(&f, &r, "x^3 - x")];
        let gb = groebner(&gens, MonomialOrder::Lex, true).unwrap();
        let cert = gb.certificate(&gens, &pp(&f, &r, "x^4 - 1")).unwrap().unwrap();
        assert_eq!(cert.max_coeff_degree, 2, "x⁴−1 = (x²+1)(x²−1)");
        assert!(cert.verify(&gens).unwrap());

        let r2 = ring(&["x", "y"]);
        let gens2 = vec![pp(&f, &r2, "x")];
        let gb2 = groebner(&gens2, MonomialOrder::Lex, true).unwrap();
        assert!(gb2.certificate(&gens2, &pp(&f, &r2, "y")).unwrap().is_none());
    }

    #[test]
    fn membership_is_order_independent() {
        let f = qq();
        let r = ring(&["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let rand_poly = |rng: &mut ChaCha8Rng, max_terms: usize| {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=max_terms) {
                let exps: Vec<u16> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                terms.push((
                    crate::poly::Monomial::new(exps),
                    f.from_i64(rng.gen_range(-2i64..=2)),
                ));
            }
            Polynomial::from_terms(&f, &r, MonomialOrder::GrevLex, terms)
        };
        for _ in 0..100 {
            let gens: Vec<_> = (0..rng.gen_range(1..4)).map(|_| rand_poly(&mut rng, 3)).collect();
            let probe = rand_poly(&mut rng, 3);
            let lex = groebner(&gens, MonomialOrder::Lex, false).unwrap();
            let grev = groebner(&gens, MonomialOrder::GrevLex, false).unwrap();
            assert_eq!(
                lex.contains(&probe).unwrap(),
                grev.contains(&probe).unwrap(),
                "membership verdicts must agree across orders"
            );
        }
    }

    #[test]
    fn works_over_prime_fields() {
        let f = PrimeField::new(13, 4).unwrap();
        let r = ring(&["x", "y"]);
        let gens = vec![
            parse_poly(&f, &r, "x^2 + y").unwrap(),
            parse_poly(&f, &r, "x*y + 12").unwrap(),
        ];
        let gb = groebner(&gens, MonomialOrder::GrevLex, false).unwrap();
        assert!(is_groebner(&gb.basis, MonomialOrder::GrevLex).unwrap());
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn budget_zero_refuses() {
        let f = qq();
        let r = ring(&["x", "y", "z"]);
        let gens = vec![pp(&f, &r, "x^2 + y"), pp(&f, &r, "x*y - z"), pp(&f, &r, "y^2 - z^2")];
        let err = groebner_budgeted(&gens, MonomialOrder::GrevLex, false, Duration::ZERO);
        assert!(matches!(err, Err(Error::Budget(_))));
    }

    #[test]
    fn rational_content_stays_primitive() {
        // Coefficient blowup guard: a system whose naive fraction arithmetic
        // inflates; content removal keeps the reduced basis exact and small.
        let f = qq();
        let r = ring(&["x", "y"]);
        let gens = vec![pp(&f, &r, "2*x^2 - 4*y"), pp(&f, &r, "6*x*y + 9*y^2 - 3")];
        let gb = groebner(&gens, MonomialOrder::GrevLex, false).unwrap();
        assert!(is_groebner(&gb.basis, MonomialOrder::GrevLex).unwrap());
        for b in &gb.basis {
            let (_, lc) = b.leading().unwrap();
            assert!(f.is_one(lc), "reduced basis is monic");
        }
    }
}
