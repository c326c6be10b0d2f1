//! The two-parameter ideal family and its catalogue of candidate primes.
//!
//! Two ambient rings are in play for parameters `(n, d)`:
//!
//! * the **long ring** `k[s_2..s_n, f_2..f_n, b_{ri}, c_{ri}]` carrying the
//!   ideal built by [`build_kl`], whose membership problem has the doubly
//!   exponential certificate-degree behaviour, and
//! * the **short ring** `k[b_{ri}, c_{ri}]` carrying its image [`build_k`]
//!   under the evaluation map that sends each `s_r`/`f_r` to a product of
//!   `c`-variables (with an extra `b01^d` factor at the top level).
//!
//! Around those two constructors the module provides the level sub-ideals
//! `M`, `N`, `L` ([`build_sublevels`]), the index-shifted copy of the
//! `(n−1, d²)` ideal used by the recursion ([`build_shifted`]), the small
//! auxiliary ideals `C_r`, `D_r`, `B_r`, `B_{kr}` ([`build_aux`]), the twenty
//! candidate-prime families `Q1`–`Q20` ([`build_prime`]), their full
//! enumeration ([`enumerate_primes`]), and the closed-form candidate count
//! ([`count_primes_formula`]).
//!
//! Everything here is a constructor: no Gröbner bases are computed except by
//! [`enumerate_primes`], which deduplicates candidates up to ideal equality.

use crate::ideals::Ideal;
use crate::poly::{
    bvar, cvar, fvar, ring_make, svar, Polynomial, Ring, RingSpec, Substitution,
};
use crate::scalars::{default_verification_prime, Field, FieldSpec};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::fmt;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// The family parameters: recursion depth `n ≥ 2` and step degree `d ≥ 2`.
///
/// `d` is capped at 255 so that every exponent the constructors form — up to
/// `d²` on a single variable — fits the monomial exponent type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub n: u32,
    pub d: u32,
}

impl FamilyParams {
    /// Validates and builds the parameter pair.
    pub fn new(n: u32, d: u32) -> Result<FamilyParams> {
        if n < 2 {
            return Err(Error::InvalidParam(format!("n must be at least 2, got {n}")));
        }
        if d < 2 {
            return Err(Error::InvalidParam(format!("d must be at least 2, got {d}")));
        }
        if d > 255 {
            return Err(Error::InvalidParam(format!(
                "d must be at most 255 so that d^2 fits a monomial exponent, got {d}"
            )));
        }
        Ok(FamilyParams { n, d })
    }

    /// The long ring `k[s_2..s_n, f_2..f_n, b, c]` of dimension `10n − 6`.
    pub fn long_ring(&self) -> Ring {
        let spec = RingSpec::long(self.n).expect("validated n yields a long ring");
        ring_make(spec).expect("long ring spec is well formed")
    }

    /// The short ring `k[b_{0i}..b_{n−1,i}, c_{1i}..c_{n−1,i}]`.
    pub fn short_ring(&self) -> Ring {
        let spec = RingSpec::short(self.n).expect("validated n yields a short ring");
        ring_make(spec).expect("short ring spec is well formed")
    }

    /// The parameters `(n−1, d²)` of the shifted copy one recursion level
    /// down. Fails at `n = 2` (the recursion bottoms out) or when `d²`
    /// exceeds the degree cap.
    pub fn shifted(&self) -> Result<FamilyParams> {
        if self.n < 3 {
            return Err(Error::InvalidParam(
                "the recursion has no level below n = 2".into(),
            ));
        }
        FamilyParams::new(self.n - 1, self.d * self.d)
    }

    /// The order of roots of unity a field should contain for the full
    /// candidate-prime catalogue at these parameters: `d²` covers `n ≤ 3`
    /// (the `d²`-but-not-`d` roots appear at the first recursion level), and
    /// each further level squares the degree, giving `d^(2^(n−2))`.
    pub fn required_unity_order(&self) -> Result<u64> {
        let e = if self.n <= 3 {
            2
        } else {
            1u32.checked_shl(self.n - 2)
                .ok_or_else(|| Error::InvalidParam("unity order exponent overflows".into()))?
        };
        (self.d as u64)
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidParam("required unity order overflows u64".into()))
    }

    /// The default verification field: the smallest prime above `2^30` that
    /// is `≡ 1` modulo [`FamilyParams::required_unity_order`].
    pub fn default_field_spec(&self) -> Result<FieldSpec> {
        let m = self.required_unity_order()?;
        Ok(FieldSpec::prime(default_verification_prime(m), m))
    }
}

// ---------------------------------------------------------------------------
// Generator-building plumbing
// ---------------------------------------------------------------------------

/// Shared plumbing for writing generators: a field, a ring, and the degree
/// `d`, with one-letter accessors mirroring the variable families.
pub(crate) struct Gens<F: Field> {
    field: F,
    ring: Ring,
    d: u32,
}

impl<F: Field> Gens<F> {
    pub(crate) fn new(field: &F, ring: &Ring, d: u32) -> Gens<F> {
        Gens { field: field.clone(), ring: ring.clone(), d }
    }

    pub(crate) fn ring(&self) -> &Ring {
        &self.ring
    }

    pub(crate) fn d(&self) -> u32 {
        self.d
    }

    /// `d²` (fits `u32` because `d ≤ 255`).
    pub(crate) fn dd(&self) -> u32 {
        self.d * self.d
    }

    fn named(&self, name: &str) -> Polynomial<F> {
        Polynomial::var(&self.field, &self.ring, name)
            .unwrap_or_else(|_| panic!("variable {name:?} exists in {:?}", self.ring.vars()))
    }

    /// The variable `b_{ri}`.
    pub(crate) fn b(&self, r: u32, i: u32) -> Polynomial<F> {
        self.named(&bvar(r, i))
    }

    /// The variable `c_{ri}`.
    pub(crate) fn c(&self, r: u32, i: u32) -> Polynomial<F> {
        self.named(&cvar(r, i))
    }

    /// The pure power `b_{ri}^e`.
    pub(crate) fn bp(&self, r: u32, i: u32, e: u32) -> Polynomial<F> {
        let e = u16::try_from(e).expect("exponent fits u16 (d is capped at 255)");
        Polynomial::monomial(&self.field, &self.ring, &[(&bvar(r, i), e)])
            .expect("b-variable exists")
    }

    /// The variable `s_r`; `s_1` denotes the constant 1 (long ring only).
    pub(crate) fn s(&self, r: u32) -> Polynomial<F> {
        if r <= 1 {
            self.one()
        } else {
            self.named(&svar(r))
        }
    }

    /// The variable `f_r`; `f_1` denotes the constant 1 (long ring only).
    pub(crate) fn f(&self, r: u32) -> Polynomial<F> {
        if r <= 1 {
            self.one()
        } else {
            self.named(&fvar(r))
        }
    }

    pub(crate) fn one(&self) -> Polynomial<F> {
        Polynomial::one(&self.field, &self.ring)
    }

    /// The constant polynomial with scalar value `a`.
    pub(crate) fn scalar(&self, a: &F::Elem) -> Polynomial<F> {
        Polynomial::constant(&self.field, &self.ring, a.clone())
    }

    /// The chain `c_{11} c_{21} ⋯ c_{hi,1}`; empty (`1`) when `hi ≤ 0`.
    pub(crate) fn c1_chain(&self, hi: i64) -> Polynomial<F> {
        let mut acc = self.one();
        let mut j = 1i64;
        while j <= hi {
            acc = acc * self.c(j as u32, 1);
            j += 1;
        }
        acc
    }

    /// The row `c_{r1}, c_{r2}, c_{r3}, c_{r4}`.
    pub(crate) fn c_row(&self, r: u32) -> Vec<Polynomial<F>> {
        (1..=4).map(|i| self.c(r, i)).collect()
    }

    /// Builds an ideal from generators in this ring.
    pub(crate) fn ideal(&self, gens: Vec<Polynomial<F>>) -> Ideal<F> {
        Ideal::new(&self.field, &self.ring, gens).expect("generators live in the builder ring")
    }
}

/// `a^e` in the coefficient field, by square-and-multiply.
fn elem_pow<F: Field>(field: &F, a: &F::Elem, e: u64) -> F::Elem {
    let mut base = a.clone();
    let mut e = e;
    let mut acc = field.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = field.mul(&acc, &base);
        }
        base = field.mul(&base, &base);
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// The long ideal and the short ideal
// ---------------------------------------------------------------------------

/// Generators of the long ideal in printed order. Count `10n + 2`.
fn kl_generators<F: Field>(g: &Gens<F>, p: FamilyParams) -> Vec<Polynomial<F>> {
    let n = p.n;
    let d = p.d;
    let mut out = Vec::with_capacity(10 * n as usize + 2);

    // Level 0.
    out.push(g.b(0, 1) * g.bp(0, 3, d) - g.b(0, 4) * g.bp(0, 2, d));

    // Fourteen level-1 generators.
    for i in 1..=4 {
        out.push(g.c(1, i) * (g.b(0, 2) - g.b(1, i) * g.b(0, 3)));
    }
    for i in 1..=4 {
        out.push(g.c(1, i) * (g.b(0, 1) - g.bp(1, i, d) * g.b(0, 4)));
    }
    for i in 1..=4u32 {
        for j in (i + 1)..=4 {
            out.push(g.c(1, i) * g.c(1, j) * (g.b(1, i) - g.b(1, j)));
        }
    }

    // Level 2.
    out.push(g.bp(0, 4, d) * g.c(1, 1) - g.bp(0, 1, d) * g.c(1, 2));
    out.push(g.bp(0, 4, d) * g.c(1, 4) - g.bp(0, 1, d) * g.c(1, 3));
    out.push(g.bp(0, 1, d) * (g.c(1, 2) - g.c(1, 3)));
    out.push(g.bp(0, 4, d) * (g.c(1, 2) * g.b(1, 1) - g.c(1, 3) * g.b(1, 4)));

    if n == 2 {
        // At n = 2 the four-member level-2 tail collapses to a single
        // generator (there are no second-level b/c variables to range over),
        // and the s/f-defining generators are the top-level ones, carrying
        // the extra b01^d factor.
        out.push(g.bp(0, 4, d) * g.c(1, 2) * (g.b(1, 2) - g.b(1, 3)));
        out.push(g.s(2) - g.c(1, 1) * g.bp(0, 1, d));
        out.push(g.f(2) - g.c(1, 4) * g.bp(0, 1, d));
        return out;
    }

    for i in 1..=4 {
        out.push(g.bp(0, 4, d) * g.c(1, 2) * g.c(2, i) * (g.b(1, 2) - g.b(2, i) * g.b(1, 3)));
    }
    out.push(g.s(2) - g.c(1, 1));
    out.push(g.f(2) - g.c(1, 4));

    // Middle levels r = 3 … n−1 define s_r, f_r without the b01^d twist.
    for r in 3..n {
        out.push(g.s(r) - g.s(r - 1) * g.c(r - 1, 1));
    }
    for r in 3..n {
        out.push(g.f(r) - g.s(r - 1) * g.c(r - 1, 4));
    }
    for r in 3..=n {
        out.push(g.bp(0, 1, d) * (g.f(r - 1) * g.c(r - 1, 1) - g.s(r - 1) * g.c(r - 1, 2)));
    }
    for r in 3..=n {
        out.push(g.bp(0, 1, d) * (g.f(r - 1) * g.c(r - 1, 4) - g.s(r - 1) * g.c(r - 1, 3)));
    }
    for r in 3..=n {
        out.push(g.bp(0, 1, d) * g.s(r - 1) * (g.c(r - 1, 3) - g.c(r - 1, 2)));
    }
    for r in 3..=n {
        out.push(
            g.bp(0, 1, d) * g.f(r - 1) * (g.c(r - 1, 2) * g.b(r - 1, 1) - g.c(r - 1, 3) * g.b(r - 1, 4)),
        );
    }
    for r in 3..n {
        for i in 1..=4 {
            out.push(
                g.bp(0, 1, d)
                    * g.f(r - 1)
                    * g.c(r - 1, 2)
                    * g.c(r, i)
                    * (g.b(r - 1, 2) - g.b(r, i) * g.b(r - 1, 3)),
            );
        }
    }

    // Top level.
    out.push(g.s(n) - g.s(n - 1) * g.c(n - 1, 1) * g.bp(0, 1, d));
    out.push(g.f(n) - g.s(n - 1) * g.c(n - 1, 4) * g.bp(0, 1, d));
    out.push(g.bp(0, 1, d) * g.f(n - 1) * g.c(n - 1, 2) * (g.b(n - 1, 2) - g.b(n - 1, 3)));
    out
}

/// The long ideal: `10n + 2` generators in the long ring, maximal generator
/// degree at most `d + 5` (attained once `n ≥ 4`).
pub fn build_kl<F: Field>(field: &F, p: FamilyParams) -> Ideal<F> {
    let ring = p.long_ring();
    let g = Gens::new(field, &ring, p.d);
    g.ideal(kl_generators(&g, p))
}

/// Generators of the short ideal, tagged with their level. Count `8n + 4`
/// for `n ≥ 3` and `20` at `n = 2`.
fn k_generators<F: Field>(g: &Gens<F>, p: FamilyParams) -> Vec<(u32, Polynomial<F>)> {
    let n = p.n;
    let d = p.d;
    let mut out = Vec::with_capacity(8 * n as usize + 4);

    // One level-0 generator.
    out.push((0, g.b(0, 1) * g.bp(0, 3, d) - g.b(0, 4) * g.bp(0, 2, d)));

    // Fourteen level-1 generators.
    for i in 1..=4 {
        out.push((1, g.c(1, i) * (g.b(0, 2) - g.b(1, i) * g.b(0, 3))));
    }
    for i in 1..=4 {
        out.push((1, g.c(1, i) * (g.b(0, 1) - g.bp(1, i, d) * g.b(0, 4))));
    }
    for i in 1..=4u32 {
        for j in (i + 1)..=4 {
            out.push((1, g.c(1, i) * g.c(1, j) * (g.b(1, i) - g.b(1, j))));
        }
    }

    // Level-2 generators.
    out.push((2, g.bp(0, 4, d) * g.c(1, 1) - g.bp(0, 1, d) * g.c(1, 2)));
    out.push((2, g.bp(0, 4, d) * g.c(1, 4) - g.bp(0, 1, d) * g.c(1, 3)));
    out.push((2, g.bp(0, 1, d) * (g.c(1, 2) - g.c(1, 3))));
    out.push((2, g.bp(0, 4, d) * (g.c(1, 2) * g.b(1, 1) - g.c(1, 3) * g.b(1, 4))));

    if n == 2 {
        // The four-member tail is replaced by a single generator at n = 2.
        out.push((2, g.bp(0, 4, d) * g.c(1, 2) * (g.b(1, 2) - g.b(1, 3))));
        return out;
    }

    for i in 1..=4 {
        out.push((2, g.bp(0, 4, d) * g.c(1, 2) * g.c(2, i) * (g.b(1, 2) - g.b(2, i) * g.b(1, 3))));
    }

    // First four level-r generators, r = 3 … n.
    for r in 3..=n {
        let pre3 = g.c1_chain(r as i64 - 3);
        let pre2 = g.c1_chain(r as i64 - 2);
        out.push((
            r,
            g.bp(0, 1, d) * pre3.clone() * (g.c(r - 2, 4) * g.c(r - 1, 1) - g.c(r - 2, 1) * g.c(r - 1, 2)),
        ));
        out.push((
            r,
            g.bp(0, 1, d) * pre3.clone() * (g.c(r - 2, 4) * g.c(r - 1, 4) - g.c(r - 2, 1) * g.c(r - 1, 3)),
        ));
        out.push((r, g.bp(0, 1, d) * pre2 * (g.c(r - 1, 3) - g.c(r - 1, 2))));
        out.push((
            r,
            g.bp(0, 1, d)
                * pre3
                * g.c(r - 2, 4)
                * (g.c(r - 1, 2) * g.b(r - 1, 1) - g.c(r - 1, 3) * g.b(r - 1, 4)),
        ));
    }

    // Last four level-r generators, r = 3 … n−1 (the r = 2 instances are the
    // tail of the level-2 block above).
    for r in 3..n {
        let pre3 = g.c1_chain(r as i64 - 3);
        for i in 1..=4 {
            out.push((
                r,
                g.bp(0, 1, d)
                    * pre3.clone()
                    * g.c(r - 2, 4)
                    * g.c(r - 1, 2)
                    * g.c(r, i)
                    * (g.b(r - 1, 2) - g.b(r, i) * g.b(r - 1, 3)),
            ));
        }
    }

    // The last level-n generator.
    out.push((
        n,
        g.bp(0, 1, d)
            * g.c1_chain(n as i64 - 3)
            * g.c(n - 2, 4)
            * g.c(n - 1, 2)
            * (g.b(n - 1, 2) - g.b(n - 1, 3)),
    ));
    out
}

/// The short ideal: the image of [`build_kl`] under the evaluation map,
/// generated in the short ring.
pub fn build_k<F: Field>(field: &F, p: FamilyParams) -> Ideal<F> {
    let ring = p.short_ring();
    let g = Gens::new(field, &ring, p.d);
    g.ideal(k_generators(&g, p).into_iter().map(|(_, f)| f).collect())
}

/// The level decomposition of the short ideal: `m` holds the level-0 and
/// level-1 generators (always fifteen), `n` the level-2 generators (eight,
/// or five at `n = 2`), and `l` everything from level 3 up (empty at
/// `n = 2`). Their sum regenerates [`build_k`].
pub struct Sublevels<F: Field> {
    pub m: Ideal<F>,
    pub n: Ideal<F>,
    pub l: Ideal<F>,
}

/// Splits the short ideal's generators by level.
pub fn build_sublevels<F: Field>(field: &F, p: FamilyParams) -> Sublevels<F> {
    let ring = p.short_ring();
    let g = Gens::new(field, &ring, p.d);
    let mut m = Vec::new();
    let mut n = Vec::new();
    let mut l = Vec::new();
    for (level, f) in k_generators(&g, p) {
        match level {
            0 | 1 => m.push(f),
            2 => n.push(f),
            _ => l.push(f),
        }
    }
    Sublevels { m: g.ideal(m), n: g.ideal(n), l: g.ideal(l) }
}

// ---------------------------------------------------------------------------
// Evaluation map
// ---------------------------------------------------------------------------

/// The evaluation homomorphism from the long ring to the short ring:
///
/// * `s_r ↦ c_{11} ⋯ c_{r−1,1}` and `f_r ↦ c_{11} ⋯ c_{r−2,1} c_{r−1,4}` for
///   `r = 2 … n−1`,
/// * `s_n ↦ c_{11} ⋯ c_{n−1,1} b_{01}^d` and
///   `f_n ↦ c_{11} ⋯ c_{n−2,1} c_{n−1,4} b_{01}^d`,
///
/// with every `b`/`c` variable mapping to itself. At `n = 2` only the two
/// top-level images apply.
pub fn eval_map<F: Field>(field: &F, p: FamilyParams) -> Substitution<F> {
    let long = p.long_ring();
    let short = p.short_ring();
    let g = Gens::new(field, &short, p.d);
    let mut sub = Substitution::new(&long, &short);
    for r in 2..p.n {
        sub.set(&svar(r), g.c1_chain(r as i64 - 1))
            .expect("s-variable has a short-ring image");
        sub.set(&fvar(r), g.c1_chain(r as i64 - 2) * g.c(r - 1, 4))
            .expect("f-variable has a short-ring image");
    }
    let n = p.n;
    sub.set(&svar(n), g.c1_chain(n as i64 - 1) * g.bp(0, 1, p.d))
        .expect("s_n has a short-ring image");
    sub.set(&fvar(n), g.c1_chain(n as i64 - 2) * g.c(n - 1, 4) * g.bp(0, 1, p.d))
        .expect("f_n has a short-ring image");
    sub
}

/// Applies the evaluation map generator-wise (zero images are dropped).
pub fn eval_ideal<F: Field>(field: &F, p: FamilyParams, ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let sub = eval_map(field, p);
    let short = p.short_ring();
    let images = ideal
        .generators()
        .iter()
        .map(|f| sub.apply(f))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(field, &short, images)
}

// ---------------------------------------------------------------------------
// The shifted copy
// ---------------------------------------------------------------------------

/// The shifted copy of the `(n−1, d²)` short ideal inside the `(n, d)` short
/// ring, split by level: `k = m + n + l`.
pub struct ShiftedLevels<F: Field> {
    pub k: Ideal<F>,
    pub m: Ideal<F>,
    pub n: Ideal<F>,
    pub l: Ideal<F>,
}

/// The renaming `b_{ri} ↦ b_{r+1,i}`, `c_{ri} ↦ c_{r+1,i}` as an index map
/// from the `(n−1)`-level short ring into the `n`-level one.
fn shift_var_map(src: &Ring, dst: &Ring, src_n: u32) -> Vec<usize> {
    let mut map = vec![usize::MAX; src.nvars()];
    for r in 0..src_n {
        for i in 1..=4 {
            let from = src.var_index(&bvar(r, i)).expect("source b-variable");
            let to = dst.var_index(&bvar(r + 1, i)).expect("target b-variable");
            map[from] = to;
        }
    }
    for r in 1..src_n {
        for i in 1..=4 {
            let from = src.var_index(&cvar(r, i)).expect("source c-variable");
            let to = dst.var_index(&cvar(r + 1, i)).expect("target c-variable");
            map[from] = to;
        }
    }
    map
}

/// Builds the `(n−1, d²)` short ideal and transports it into the `(n, d)`
/// short ring along the index shift. Requires `n ≥ 3`.
pub fn build_shifted<F: Field>(field: &F, p: FamilyParams) -> Result<ShiftedLevels<F>> {
    let inner = p.shifted()?;
    let src = inner.short_ring();
    let dst = p.short_ring();
    let map = shift_var_map(&src, &dst, inner.n);
    let g = Gens::new(field, &src, inner.d);
    let mut k = Vec::new();
    let mut m = Vec::new();
    let mut n = Vec::new();
    let mut l = Vec::new();
    for (level, f) in k_generators(&g, inner) {
        let shifted = f.map_exponents(&dst, &map);
        k.push(shifted.clone());
        match level {
            0 | 1 => m.push(shifted),
            2 => n.push(shifted),
            _ => l.push(shifted),
        }
    }
    Ok(ShiftedLevels {
        k: Ideal::new(field, &dst, k)?,
        m: Ideal::new(field, &dst, m)?,
        n: Ideal::new(field, &dst, n)?,
        l: Ideal::new(field, &dst, l)?,
    })
}

/// Transports an arbitrary ideal of the `(n−1, d²)` short ring into the
/// `(n, d)` short ring along the index shift.
pub fn shift_ideal<F: Field>(ideal: &Ideal<F>, target: FamilyParams) -> Result<Ideal<F>> {
    let inner = target.shifted()?;
    let src = inner.short_ring();
    if ideal.ring().vars() != src.vars() {
        return Err(Error::RingMismatch(
            "shift source must be the short ring one level down".into(),
        ));
    }
    let dst = target.short_ring();
    let map = shift_var_map(&src, &dst, inner.n);
    let gens: Vec<_> = ideal
        .generators()
        .iter()
        .map(|f| f.map_exponents(&dst, &map))
        .collect();
    Ideal::new(ideal.field(), &dst, gens)
}

// ---------------------------------------------------------------------------
// Auxiliary ideals
// ---------------------------------------------------------------------------

/// Accessors for the small auxiliary ideals `C_r`, `D_r`, `B_r`, `B_{kr}` in
/// the short ring.
pub struct Aux<F: Field> {
    gens: Gens<F>,
    p: FamilyParams,
}

/// Builds the auxiliary-ideal accessor for the `(n, d)` short ring.
pub fn build_aux<F: Field>(field: &F, p: FamilyParams) -> Aux<F> {
    let ring = p.short_ring();
    Aux { gens: Gens::new(field, &ring, p.d), p }
}

impl<F: Field> Aux<F> {
    fn check_level(&self, what: &str, r: u32, lo: u32, hi: u32) -> Result<()> {
        if r < lo || r > hi {
            return Err(Error::InvalidParam(format!(
                "{what} index {r} outside {lo}..={hi} at n = {}",
                self.p.n
            )));
        }
        Ok(())
    }

    /// `C_r = (c_{r1}, c_{r2}, c_{r3}, c_{r4})` for `r < n`; `C_n = (0)`
    /// (there are no level-`n` c-variables).
    pub fn c_r(&self, r: u32) -> Result<Ideal<F>> {
        self.check_level("C_r", r, 1, self.p.n)?;
        if r == self.p.n {
            return Ok(self.gens.ideal(Vec::new()));
        }
        Ok(self.gens.ideal(self.gens.c_row(r)))
    }

    /// `D_r = (c_{r4} − c_{r1}, c_{r3} − c_{r2}, c_{r2} − c_{r1})` for
    /// `r < n`; `D_n = (0)`.
    pub fn d_r(&self, r: u32) -> Result<Ideal<F>> {
        self.check_level("D_r", r, 1, self.p.n)?;
        if r == self.p.n {
            return Ok(self.gens.ideal(Vec::new()));
        }
        let g = &self.gens;
        Ok(g.ideal(vec![
            g.c(r, 4) - g.c(r, 1),
            g.c(r, 3) - g.c(r, 2),
            g.c(r, 2) - g.c(r, 1),
        ]))
    }

    /// The sum `D_lo + ⋯ + D_hi` (the zero ideal when the range is empty).
    pub fn d_span(&self, lo: u32, hi: u32) -> Result<Ideal<F>> {
        let mut gens = Vec::new();
        for r in lo..=hi.min(self.p.n) {
            gens.extend(self.d_r(r)?.generators().iter().cloned());
        }
        Ok(self.gens.ideal(gens))
    }

    /// `B_r = (1 − b_{2i}, …, 1 − b_{ri} | i = 1..4)`; `B_0 = B_1 = (0)`.
    pub fn b_r(&self, r: u32) -> Result<Ideal<F>> {
        self.check_level("B_r", r, 0, self.p.n - 1)?;
        if r <= 1 {
            return Ok(self.gens.ideal(Vec::new()));
        }
        self.b_kr(2, r)
    }

    /// `B_{kr} = (1 − b_{ki}, 1 − b_{k+1,i}, …, 1 − b_{ri} | i = 1..4)`,
    /// the zero ideal when `r < k`.
    pub fn b_kr(&self, k: u32, r: u32) -> Result<Ideal<F>> {
        if k < 2 {
            return Err(Error::InvalidParam(format!("B_kr needs k >= 2, got {k}")));
        }
        self.check_level("B_kr", r, 0, self.p.n - 1)?;
        let g = &self.gens;
        let mut gens = Vec::new();
        for j in k..=r.min(self.p.n - 1) {
            for i in 1..=4 {
                gens.push(g.one() - g.b(j, i));
            }
        }
        Ok(g.ideal(gens))
    }
}

// ---------------------------------------------------------------------------
// Candidate primes
// ---------------------------------------------------------------------------

/// The twenty candidate-prime families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(missing_docs)]
pub enum FamilyId {
    Q1, Q2, Q3, Q4, Q5, Q6, Q7, Q8, Q9, Q10,
    Q11, Q12, Q13, Q14, Q15, Q16, Q17, Q18, Q19, Q20,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", *self as u32 + 1)
    }
}

/// A subset of `{1, 2, 3, 4}`, encoded as a four-bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lambda(u8);

impl Lambda {
    /// The empty subset.
    pub fn empty() -> Lambda {
        Lambda(0)
    }

    /// The full subset `{1, 2, 3, 4}`.
    pub fn full() -> Lambda {
        Lambda(0b1111)
    }

    /// Builds a subset from member indices (each in `1..=4`).
    pub fn from_members(members: &[u32]) -> Result<Lambda> {
        let mut mask = 0u8;
        for &i in members {
            if !(1..=4).contains(&i) {
                return Err(Error::InvalidParam(format!("subset member {i} outside 1..=4")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(Lambda(mask))
    }

    /// Whether `i ∈ Λ`.
    pub fn contains(self, i: u32) -> bool {
        (1..=4).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The member indices in ascending order.
    pub fn members(self) -> Vec<u32> {
        (1..=4).filter(|&i| self.contains(i)).collect()
    }

    /// Ordered pairs `i < j` of members.
    pub fn pairs(self) -> Vec<(u32, u32)> {
        let m = self.members();
        let mut out = Vec::new();
        for (a, &i) in m.iter().enumerate() {
            for &j in &m[a + 1..] {
                out.push((i, j));
            }
        }
        out
    }

    /// All sixteen subsets, in ascending mask order.
    pub fn all() -> impl Iterator<Item = Lambda> {
        (0u8..16).map(Lambda)
    }

    /// The fifteen non-empty subsets, in ascending mask order.
    pub fn nonempty() -> impl Iterator<Item = Lambda> {
        (1u8..16).map(Lambda)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The parameter bundle selecting one member of a candidate-prime family.
#[derive(Clone, Debug)]
pub struct PrimeSelector<F: Field> {
    pub family_id: FamilyId,
    pub lambda: Option<Lambda>,
    pub alpha: Option<F::Elem>,
    pub beta: Option<F::Elem>,
    pub t: Option<u32>,
}

impl<F: Field> PrimeSelector<F> {
    /// A selector with no optional parameters.
    pub fn new(family_id: FamilyId) -> Self {
        PrimeSelector { family_id, lambda: None, alpha: None, beta: None, t: None }
    }

    pub fn lambda(mut self, lambda: Lambda) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn alpha(mut self, alpha: F::Elem) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn beta(mut self, beta: F::Elem) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn t(mut self, t: u32) -> Self {
        self.t = Some(t);
        self
    }
}

/// One constructed candidate prime: the selector that produced it, the
/// recursion depth it was lifted from (`shift = 0` for the current level),
/// and the ideal itself in the short ring.
#[derive(Clone)]
pub struct PrimeCandidate<F: Field> {
    pub family_id: FamilyId,
    pub lambda: Option<Lambda>,
    pub alpha: Option<F::Elem>,
    pub beta: Option<F::Elem>,
    pub t: Option<u32>,
    pub shift: u32,
    pub ideal: Ideal<F>,
}

impl<F: Field> PrimeCandidate<F> {
    /// A deterministic human-readable tag, e.g. `Q8{1,3}[a=-1]` or
    /// `Q2@shift1`.
    pub fn label(&self) -> String {
        let field = self.ideal.field();
        let mut s = self.family_id.to_string();
        if let Some(t) = self.t {
            s.push_str(&format!("[t={t}]"));
        }
        if let Some(l) = self.lambda {
            s.push_str(&l.to_string());
        }
        if let Some(a) = &self.alpha {
            s.push_str(&format!("[a={}]", field.format_scalar(a)));
        }
        if let Some(b) = &self.beta {
            s.push_str(&format!("[b={}]", field.format_scalar(b)));
        }
        if self.shift > 0 {
            s.push_str(&format!("@shift{}", self.shift));
        }
        s
    }
}

/// Validation helpers for [`build_prime`].
struct SelCheck<'a, F: Field> {
    field: &'a F,
    p: FamilyParams,
    sel: &'a PrimeSelector<F>,
}

impl<'a, F: Field> SelCheck<'a, F> {
    fn no_lambda(&self) -> Result<()> {
        if self.sel.lambda.is_some() {
            return Err(Error::InvalidParam(format!(
                "{} takes no subset parameter",
                self.sel.family_id
            )));
        }
        Ok(())
    }

    fn no_alpha_beta(&self) -> Result<()> {
        if self.sel.alpha.is_some() || self.sel.beta.is_some() {
            return Err(Error::InvalidParam(format!(
                "{} takes no root-of-unity parameter",
                self.sel.family_id
            )));
        }
        Ok(())
    }

    fn no_t(&self) -> Result<()> {
        if self.sel.t.is_some() {
            return Err(Error::InvalidParam(format!(
                "{} takes no level parameter",
                self.sel.family_id
            )));
        }
        Ok(())
    }

    fn lambda(&self) -> Result<Lambda> {
        self.sel.lambda.ok_or_else(|| {
            Error::InvalidParam(format!("{} requires a subset parameter", self.sel.family_id))
        })
    }

    fn lambda_nonempty(&self) -> Result<Lambda> {
        let l = self.lambda()?;
        if l.is_empty() {
            return Err(Error::InvalidParam(format!(
                "{} requires a non-empty subset",
                self.sel.family_id
            )));
        }
        Ok(l)
    }

    fn root(&self, which: &str, value: &Option<F::Elem>, order: u64) -> Result<F::Elem> {
        let a = value.clone().ok_or_else(|| {
            Error::InvalidParam(format!("{} requires {which}", self.sel.family_id))
        })?;
        if !self.field.is_one(&elem_pow(self.field, &a, order)) {
            return Err(Error::InvalidParam(format!(
                "{}: {which} must be a {order}-th root of unity",
                self.sel.family_id
            )));
        }
        Ok(a)
    }

    fn t(&self) -> Result<u32> {
        let t = self.sel.t.ok_or_else(|| {
            Error::InvalidParam(format!("{} requires a level parameter t", self.sel.family_id))
        })?;
        if !(2..=self.p.n).contains(&t) {
            return Err(Error::InvalidParam(format!(
                "{}: level t = {t} outside 2..={}",
                self.sel.family_id, self.p.n
            )));
        }
        Ok(t)
    }

    fn needs_level2(&self) -> Result<()> {
        if self.p.n < 3 {
            return Err(Error::InvalidParam(format!(
                "{} references second-level variables and needs n >= 3",
                self.sel.family_id
            )));
        }
        Ok(())
    }
}

/// Builds one candidate prime from a selector, validating parameter arity,
/// subset non-emptiness, and root-of-unity orders.
pub fn build_prime<F: Field>(
    field: &F,
    p: FamilyParams,
    sel: &PrimeSelector<F>,
) -> Result<PrimeCandidate<F>> {
    let ring = p.short_ring();
    let g = Gens::new(field, &ring, p.d);
    let aux = build_aux(field, p);
    let chk = SelCheck { field, p, sel };
    let d = p.d as u64;
    let dd = d * d;

    // c_{2i} for i outside the subset.
    let c2_outside = |lam: Lambda| -> Vec<Polynomial<F>> {
        (1..=4).filter(|&i| !lam.contains(i)).map(|i| g.c(2, i)).collect()
    };

    let mut gens: Vec<Polynomial<F>> = Vec::new();
    let mut lambda = None;
    let mut alpha = None;
    let mut beta = None;
    let mut t_level = None;

    match sel.family_id {
        FamilyId::Q1 => {
            chk.no_alpha_beta()?;
            chk.no_t()?;
            let lam = chk.lambda()?;
            gens.push(g.b(0, 1));
            gens.push(g.b(0, 4));
            for i in 1..=4 {
                if !lam.contains(i) {
                    gens.push(g.c(1, i));
                }
            }
            for &i in &lam.members() {
                gens.push(g.b(0, 2) - g.b(1, i) * g.b(0, 3));
            }
            for (i, j) in lam.pairs() {
                gens.push(g.b(1, i) - g.b(1, j));
            }
            lambda = Some(lam);
        }
        FamilyId::Q2 => {
            chk.no_lambda()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            gens.extend(g.c_row(1));
            gens.push(g.b(0, 1) * g.bp(0, 3, p.d) - g.b(0, 4) * g.bp(0, 2, p.d));
        }
        FamilyId::Q3 => {
            chk.no_lambda()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            gens = vec![g.c(1, 1), g.c(1, 2), g.c(1, 4), g.b(0, 1), g.b(0, 2), g.b(1, 3), g.b(1, 4)];
        }
        FamilyId::Q4 => {
            chk.needs_level2()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            let lam = chk.lambda()?;
            gens = vec![
                g.c(1, 1),
                g.c(1, 4),
                g.b(0, 1),
                g.b(0, 2),
                g.b(1, 2),
                g.b(1, 3),
                g.c(1, 2) * g.b(1, 1) - g.c(1, 3) * g.b(1, 4),
            ];
            gens.extend(c2_outside(lam));
            for &i in &lam.members() {
                gens.push(g.one() - g.b(2, i));
            }
            lambda = Some(lam);
        }
        FamilyId::Q5 => {
            chk.no_lambda()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            gens = vec![
                g.c(1, 1),
                g.c(1, 4),
                g.b(0, 1),
                g.b(0, 2),
                g.b(1, 2),
                g.b(1, 3),
                g.c(1, 2) * g.b(1, 1) - g.c(1, 3) * g.b(1, 4),
            ];
        }
        FamilyId::Q6 | FamilyId::Q7 => {
            chk.needs_level2()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            gens = vec![g.c(1, 1), g.c(1, 3), g.c(1, 4), g.b(0, 1), g.b(0, 2), g.b(1, 1), g.b(1, 2)];
            if sel.family_id == FamilyId::Q6 {
                let lam = chk.lambda()?;
                gens.extend(c2_outside(lam));
                for &i in &lam.members() {
                    gens.push(g.b(2, i));
                }
                lambda = Some(lam);
            } else {
                let lam = chk.lambda_nonempty()?;
                gens.push(g.b(1, 3));
                gens.extend(c2_outside(lam));
                for (i, j) in lam.pairs() {
                    gens.push(g.b(2, i) - g.b(2, j));
                }
                lambda = Some(lam);
            }
        }
        FamilyId::Q8 => {
            chk.needs_level2()?;
            chk.no_t()?;
            let lam = chk.lambda()?;
            let a = chk.root("alpha", &sel.alpha, d)?;
            gens.extend(g.c_row(1));
            gens.extend([g.b(0, 1), g.b(0, 2), g.b(0, 3), g.b(1, 2), g.b(1, 3)]);
            gens.extend(c2_outside(lam));
            for &i in &lam.members() {
                gens.push(g.b(2, i) - g.scalar(&a));
            }
            lambda = Some(lam);
            alpha = Some(a);
        }
        FamilyId::Q9 => {
            chk.needs_level2()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            let lam = chk.lambda_nonempty()?;
            gens.extend(g.c_row(1));
            gens.extend([g.b(0, 1), g.b(0, 2), g.b(0, 3), g.b(1, 2), g.b(1, 3)]);
            gens.extend(c2_outside(lam));
            for (i, j) in lam.pairs() {
                gens.push(g.b(2, i) - g.b(2, j));
            }
            lambda = Some(lam);
        }
        FamilyId::Q10 => {
            chk.needs_level2()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            let lam = chk.lambda()?;
            gens.extend(g.c_row(1));
            gens.extend([g.b(0, 1), g.b(0, 2), g.b(0, 3), g.b(0, 4), g.b(1, 2), g.b(1, 3)]);
            gens.extend(c2_outside(lam));
            for (i, j) in lam.pairs() {
                gens.push(g.b(2, i) - g.b(2, j));
            }
            lambda = Some(lam);
        }
        FamilyId::Q11 => {
            chk.needs_level2()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            let lam = chk.lambda()?;
            gens = vec![g.c(1, 1), g.c(1, 3) - g.c(1, 2), g.c(1, 4)];
            gens.extend([g.b(0, 1), g.b(0, 2), g.b(1, 1), g.b(1, 2), g.b(1, 3), g.b(1, 4)]);
            gens.extend(c2_outside(lam));
            for &i in &lam.members() {
                gens.push(g.one() - g.b(2, i));
            }
            lambda = Some(lam);
        }
        FamilyId::Q12 | FamilyId::Q13 => {
            chk.needs_level2()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            let lam = chk.lambda()?;
            gens.extend(g.c_row(1));
            gens.extend([g.b(0, 1), g.b(0, 2), g.b(1, 1), g.b(1, 2), g.b(1, 3), g.b(1, 4)]);
            gens.extend(c2_outside(lam));
            if sel.family_id == FamilyId::Q12 {
                for &i in &lam.members() {
                    gens.push(g.one() - g.b(2, i));
                }
            } else {
                for (i, j) in lam.pairs() {
                    gens.push(g.b(2, i) - g.b(2, j));
                }
            }
            lambda = Some(lam);
        }
        FamilyId::Q14 | FamilyId::Q15 | FamilyId::Q16 => {
            chk.needs_level2()?;
            chk.no_t()?;
            gens.extend(g.c_row(1));
            gens.extend([
                g.b(0, 1),
                g.b(0, 2),
                g.b(0, 3),
                g.b(1, 1),
                g.b(1, 2),
                g.b(1, 3),
                g.b(1, 4),
            ]);
            match sel.family_id {
                FamilyId::Q14 => {
                    chk.no_alpha_beta()?;
                    let lam = chk.lambda()?;
                    gens.extend(c2_outside(lam));
                    for (i, j) in lam.pairs() {
                        gens.push(g.b(2, i) - g.b(2, j));
                    }
                    lambda = Some(lam);
                }
                FamilyId::Q15 => {
                    let lam = chk.lambda_nonempty()?;
                    let a = chk.root("alpha", &sel.alpha, dd)?;
                    if field.is_one(&elem_pow(field, &a, d)) {
                        return Err(Error::InvalidParam(
                            "Q15: alpha must not be a d-th root of unity".into(),
                        ));
                    }
                    gens.extend(c2_outside(lam));
                    for &i in &lam.members() {
                        gens.push(g.b(2, i) - g.scalar(&a));
                    }
                    lambda = Some(lam);
                    alpha = Some(a);
                }
                _ => {
                    let lam = chk.lambda_nonempty()?;
                    let a = chk.root("alpha", &sel.alpha, d)?;
                    gens.extend(c2_outside(lam));
                    for &i in &lam.members() {
                        gens.push(g.b(2, i) - g.scalar(&a));
                    }
                    lambda = Some(lam);
                    alpha = Some(a);
                }
            }
        }
        FamilyId::Q17 | FamilyId::Q18 => {
            chk.no_lambda()?;
            chk.no_alpha_beta()?;
            let t = chk.t()?;
            if sel.family_id == FamilyId::Q18 {
                gens.extend(g.c_row(1));
            }
            gens.extend(aux.d_span(2, t - 1)?.generators().iter().cloned());
            gens.extend(aux.c_r(t)?.generators().iter().cloned());
            gens.extend(aux.b_kr(2, t - 1)?.generators().iter().cloned());
            if sel.family_id == FamilyId::Q17 {
                gens.push(g.c(1, 1) - g.bp(1, 2, g.dd()) * g.c(1, 2));
                gens.push(g.c(1, 4) - g.c(1, 1));
                gens.push(g.c(1, 3) - g.c(1, 2));
            }
            gens.push(g.b(0, 2) - g.b(1, 2) * g.b(0, 3));
            for i in 1..=4 {
                gens.push(g.b(1, 2) - g.b(1, i));
            }
            gens.push(g.b(0, 1) - g.bp(1, 2, p.d) * g.b(0, 4));
            t_level = Some(t);
        }
        FamilyId::Q19 => {
            chk.no_lambda()?;
            let t = chk.t()?;
            let a = chk.root("alpha", &sel.alpha, d)?;
            let b = chk.root("beta", &sel.beta, d)?;
            if p.n == 2 {
                // The n = 2 list fixes the second root to 1 and reads
                // `b12 − α·b11` against `b12 − b13`, `b11 − b14`.
                if !field.is_one(&b) {
                    return Err(Error::InvalidParam(
                        "Q19 at n = 2 requires beta = 1".into(),
                    ));
                }
                gens.extend(g.c_row(1));
                gens.push(g.b(1, 1) - g.b(1, 4));
                gens.push(g.b(1, 2) - g.b(1, 3));
                gens.push(g.b(0, 2));
                gens.push(g.b(0, 3));
                gens.push(g.b(0, 1) - g.bp(1, 2, p.d) * g.b(0, 4));
                gens.push(g.b(1, 2) - g.scalar(&a) * g.b(1, 1));
            } else if t == 2 {
                gens.extend(g.c_row(1));
                gens.extend(g.c_row(2));
                gens.push(g.b(0, 1) - g.bp(1, 2, p.d) * g.b(0, 4));
                gens.push(g.b(0, 2));
                gens.push(g.b(0, 3));
                gens.push(g.b(1, 2) - g.scalar(&a) * g.b(1, 3));
                gens.push(g.b(1, 1) - g.scalar(&b) * g.b(1, 3));
                gens.push(g.b(1, 1) - g.b(1, 4));
            } else {
                gens.extend(g.c_row(1));
                gens.extend(aux.d_span(2, t - 1)?.generators().iter().cloned());
                gens.extend(aux.c_r(t)?.generators().iter().cloned());
                gens.extend(aux.b_kr(3, t - 1)?.generators().iter().cloned());
                gens.push(g.b(0, 1) - g.bp(1, 2, p.d) * g.b(0, 4));
                gens.push(g.b(0, 2));
                gens.push(g.b(0, 3));
                gens.push(g.b(1, 2) - g.scalar(&a) * g.b(1, 3));
                gens.push(g.b(1, 1) - g.scalar(&b) * g.b(1, 3));
                gens.push(g.b(1, 1) - g.b(1, 4));
                for i in 1..=4 {
                    gens.push(g.b(2, i) - g.scalar(&a));
                }
            }
            t_level = Some(t);
            alpha = Some(a);
            beta = Some(b);
        }
        FamilyId::Q20 => {
            chk.no_lambda()?;
            chk.no_alpha_beta()?;
            chk.no_t()?;
            gens.extend(g.c_row(1));
            gens.push(g.b(1, 1) - g.b(1, 4));
            gens.push(g.b(1, 2) - g.b(1, 3));
            gens.extend([g.b(0, 1), g.b(0, 2), g.b(0, 3), g.b(0, 4)]);
        }
    }

    Ok(PrimeCandidate {
        family_id: sel.family_id,
        lambda,
        alpha,
        beta,
        t: t_level,
        shift: 0,
        ideal: g.ideal(gens),
    })
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// The result of enumerating the candidate primes at one parameter pair:
/// deduplicated candidates in a deterministic order, the raw count before
/// deduplication (which matches [`count_primes_formula`] whenever every
/// root-of-unity pool is complete), and notices about skipped roots or
/// merged duplicates.
pub struct Enumeration<F: Field> {
    pub candidates: Vec<PrimeCandidate<F>>,
    pub raw_count: u64,
    pub notices: Vec<String>,
}

/// All solutions of `x^m = 1` available in the field, as ascending powers of
/// a primitive root of the largest feasible order, plus a notice when fewer
/// than `m` exist.
fn unity_roots<F: Field>(field: &F, m: u64) -> (Vec<F::Elem>, Option<String>) {
    let mut best = 1u64;
    for cand in (1..=m).rev() {
        if m % cand == 0 && field.root_of_unity(cand).is_ok() {
            best = cand;
            break;
        }
    }
    let mut roots = Vec::with_capacity(best as usize);
    match field.root_of_unity(best) {
        Ok(z) => {
            let mut acc = field.one();
            for _ in 0..best {
                roots.push(acc.clone());
                acc = field.mul(&acc, &z);
            }
        }
        Err(_) => roots.push(field.one()),
    }
    let notice = if (roots.len() as u64) < m {
        Some(format!(
            "only {} of {} {}-th roots of unity exist over {}; candidates needing the rest are skipped",
            roots.len(),
            m,
            m,
            field.name()
        ))
    } else {
        None
    };
    (roots, notice)
}

/// Enumerates the full candidate list: the theorem list for the current
/// level, together with every candidate of the `(n−1, d²)` family lifted
/// along the index shift and extended by `C_1 + (b01, b02, b03, b04)`.
/// Duplicate ideals are removed within each level.
pub fn enumerate_primes<F: Field>(field: &F, p: FamilyParams) -> Result<Enumeration<F>> {
    let d = p.d as u64;
    let mut notices = Vec::new();
    let (droots, dnote) = unity_roots(field, d);
    if let Some(msg) = dnote {
        notices.push(msg);
    }

    let mut local: Vec<PrimeCandidate<F>> = Vec::new();
    let push = |local: &mut Vec<PrimeCandidate<F>>, sel: PrimeSelector<F>| -> Result<()> {
        local.push(build_prime(field, p, &sel)?);
        Ok(())
    };

    if p.n == 2 {
        for lam in Lambda::nonempty() {
            push(&mut local, PrimeSelector::new(FamilyId::Q1).lambda(lam))?;
        }
        push(&mut local, PrimeSelector::new(FamilyId::Q2))?;
        push(&mut local, PrimeSelector::new(FamilyId::Q3))?;
        push(&mut local, PrimeSelector::new(FamilyId::Q5))?;
        push(&mut local, PrimeSelector::new(FamilyId::Q17).t(2))?;
        push(&mut local, PrimeSelector::new(FamilyId::Q18).t(2))?;
        for a in &droots {
            push(
                &mut local,
                PrimeSelector::new(FamilyId::Q19).t(2).alpha(a.clone()).beta(field.one()),
            )?;
        }
        push(&mut local, PrimeSelector::new(FamilyId::Q20))?;
        let raw = local.len() as u64;
        let (kept, mut merge_notes) = dedup_candidates(local)?;
        notices.append(&mut merge_notes);
        return Ok(Enumeration { candidates: kept, raw_count: raw, notices });
    }

    let dd = d * d;
    let (ddroots, ddnote) = unity_roots(field, dd);
    if let Some(msg) = ddnote {
        notices.push(msg);
    }
    let strict: Vec<F::Elem> = ddroots
        .iter()
        .filter(|a| !field.is_one(&elem_pow(field, a, d)))
        .cloned()
        .collect();

    for lam in Lambda::nonempty() {
        push(&mut local, PrimeSelector::new(FamilyId::Q1).lambda(lam))?;
    }
    push(&mut local, PrimeSelector::new(FamilyId::Q2))?;
    push(&mut local, PrimeSelector::new(FamilyId::Q3))?;
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q4).lambda(lam))?;
    }
    push(&mut local, PrimeSelector::new(FamilyId::Q5))?;
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q6).lambda(lam))?;
    }
    for lam in Lambda::nonempty() {
        push(&mut local, PrimeSelector::new(FamilyId::Q7).lambda(lam))?;
    }
    for lam in Lambda::all() {
        for a in &droots {
            push(&mut local, PrimeSelector::new(FamilyId::Q8).lambda(lam).alpha(a.clone()))?;
        }
    }
    for lam in Lambda::nonempty() {
        push(&mut local, PrimeSelector::new(FamilyId::Q9).lambda(lam))?;
    }
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q10).lambda(lam))?;
    }
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q11).lambda(lam))?;
    }
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q12).lambda(lam))?;
    }
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q13).lambda(lam))?;
    }
    for lam in Lambda::all() {
        push(&mut local, PrimeSelector::new(FamilyId::Q14).lambda(lam))?;
    }
    for lam in Lambda::nonempty() {
        for a in &strict {
            push(&mut local, PrimeSelector::new(FamilyId::Q15).lambda(lam).alpha(a.clone()))?;
        }
    }
    for lam in Lambda::nonempty() {
        for a in &droots {
            push(&mut local, PrimeSelector::new(FamilyId::Q16).lambda(lam).alpha(a.clone()))?;
        }
    }
    for t in 2..=p.n {
        push(&mut local, PrimeSelector::new(FamilyId::Q17).t(t))?;
    }
    for t in 2..=p.n {
        push(&mut local, PrimeSelector::new(FamilyId::Q18).t(t))?;
    }
    for t in 2..=p.n {
        for a in &droots {
            for b in &droots {
                push(
                    &mut local,
                    PrimeSelector::new(FamilyId::Q19).t(t).alpha(a.clone()).beta(b.clone()),
                )?;
            }
        }
    }

    let local_raw = local.len() as u64;
    let (mut kept, mut merge_notes) = dedup_candidates(local)?;
    notices.append(&mut merge_notes);

    // Recursion: lift every candidate of the (n−1, d²) family.
    let child = enumerate_primes(field, p.shifted()?)?;
    notices.extend(child.notices);
    let ring = p.short_ring();
    let g = Gens::new(field, &ring, p.d);
    for cand in child.candidates {
        let mut gens: Vec<Polynomial<F>> =
            shift_ideal(&cand.ideal, p)?.generators().to_vec();
        gens.extend(g.c_row(1));
        gens.extend([g.b(0, 1), g.b(0, 2), g.b(0, 3), g.b(0, 4)]);
        kept.push(PrimeCandidate {
            family_id: cand.family_id,
            lambda: cand.lambda,
            alpha: cand.alpha,
            beta: cand.beta,
            t: cand.t,
            shift: cand.shift + 1,
            ideal: g.ideal(gens),
        });
    }

    Ok(Enumeration {
        candidates: kept,
        raw_count: local_raw + child.raw_count,
        notices,
    })
}

/// Removes candidates whose ideal equals an earlier one (reduced-basis
/// comparison), keeping first occurrences and recording each merge.
fn dedup_candidates<F: Field>(
    cands: Vec<PrimeCandidate<F>>,
) -> Result<(Vec<PrimeCandidate<F>>, Vec<String>)> {
    let mut kept: Vec<PrimeCandidate<F>> = Vec::with_capacity(cands.len());
    let mut notes = Vec::new();
    for cand in cands {
        let mut dup_of = None;
        for old in &kept {
            if old.ideal.equal(&cand.ideal)? {
                dup_of = Some(old.label());
                break;
            }
        }
        match dup_of {
            Some(older) => notes.push(format!(
                "{} duplicates {older}; kept the earlier candidate",
                cand.label()
            )),
            None => kept.push(cand),
        }
    }
    Ok((kept, notes))
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

/// The closed-form candidate count:
///
/// ```text
/// 160n − 301 + 16d + n(n−1) + Σ_{j=1}^{n−3} (31 + n − j)·d^(2^j) + 18·d^(2^(n−2))
/// ```
///
/// for `n ≥ 3`; the `n = 2` list has no printed formula and counts `21 + d`
/// directly. The value counts constructed candidates and may exceed the
/// number of distinct ideals (duplicates are not subtracted).
pub fn count_primes_formula(p: FamilyParams) -> BigInt {
    if p.n == 2 {
        return BigInt::from(21 + p.d as i64);
    }
    assert!(p.n <= 33, "count at n = {} exceeds any representable size", p.n);
    let n = p.n as i64;
    let d = BigInt::from(p.d);
    let mut total = BigInt::from(160 * n - 301 + 16 * p.d as i64 + n * (n - 1));
    for j in 1..=(n - 3) {
        let power = d.pow(1u32 << j);
        total += BigInt::from(31 + n - j) * power;
    }
    total += BigInt::from(18) * d.pow(1u32 << (n - 2));
    total
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalars::{PrimeField, Rationals};

    fn params(n: u32, d: u32) -> FamilyParams {
        FamilyParams::new(n, d).expect("valid test parameters")
    }

    fn f13() -> PrimeField {
        PrimeField::new(13, 4).expect("13 = 1 mod 4")
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyParams::new(1, 2).is_err());
        assert!(FamilyParams::new(2, 1).is_err());
        assert!(FamilyParams::new(2, 256).is_err());
        assert!(FamilyParams::new(2, 2).is_ok());
        assert_eq!(params(2, 2).required_unity_order().unwrap(), 4);
        assert_eq!(params(3, 2).required_unity_order().unwrap(), 4);
        assert_eq!(params(4, 2).required_unity_order().unwrap(), 16);
        assert_eq!(params(5, 3).required_unity_order().unwrap(), 3u64.pow(8));
        assert!(params(2, 2).shifted().is_err());
        assert_eq!(params(3, 2).shifted().unwrap(), params(2, 4));
        assert_eq!(params(4, 3).shifted().unwrap(), params(3, 9));
    }

    #[test]
    fn long_ideal_shapes() {
        let q = Rationals;
        let cases = [(2u32, 2u32, 22usize, 4i64), (2, 3, 22, 5), (3, 2, 32, 6), (4, 2, 42, 7)];
        for (n, d, count, maxdeg) in cases {
            let kl = build_kl(&q, params(n, d));
            assert_eq!(kl.generators().len(), count, "generator count at ({n},{d})");
            let observed = kl.generators().iter().map(|g| g.total_degree()).max().unwrap();
            assert_eq!(observed, maxdeg, "max degree at ({n},{d})");
            assert!(observed <= d as i64 + 5);
        }
        // The d+5 bound is attained exactly once middle levels exist.
        let kl52 = build_kl(&q, params(5, 2));
        assert_eq!(kl52.generators().len(), 52);
        assert_eq!(kl52.generators().iter().map(|g| g.total_degree()).max().unwrap(), 7);
    }

    #[test]
    fn short_ideal_shapes() {
        let q = Rationals;
        for (n, d, count) in [(2u32, 2u32, 20usize), (2, 3, 20), (3, 2, 28), (4, 2, 36), (5, 2, 44)]
        {
            let k = build_k(&q, params(n, d));
            assert_eq!(k.generators().len(), count, "generator count at ({n},{d})");
        }
        let k22 = build_k(&q, params(2, 2));
        let ring = params(2, 2).short_ring();
        let g01 = parse_poly(&q, &ring, "b01*b03^2 - b04*b02^2").unwrap();
        assert!(k22.generators().contains(&g01));
        let g25 = parse_poly(&q, &ring, "b04^2*c12*b12 - b04^2*c12*b13").unwrap();
        assert!(k22.generators().contains(&g25));
    }

    #[test]
    fn evaluation_images_match_the_display() {
        let q = Rationals;
        let p32 = params(3, 2);
        let sub = eval_map(&q, p32);
        let long = p32.long_ring();
        let short = p32.short_ring();
        let image = |name: &str| {
            sub.apply(&Polynomial::var(&q, &long, name).unwrap()).unwrap()
        };
        assert_eq!(image("s2"), parse_poly(&q, &short, "c11").unwrap());
        assert_eq!(image("f2"), parse_poly(&q, &short, "c14").unwrap());
        assert_eq!(image("s3"), parse_poly(&q, &short, "c11*c21*b01^2").unwrap());
        assert_eq!(image("f3"), parse_poly(&q, &short, "c11*c24*b01^2").unwrap());
        assert_eq!(image("b02"), parse_poly(&q, &short, "b02").unwrap());

        let p22 = params(2, 2);
        let sub2 = eval_map(&q, p22);
        let long2 = p22.long_ring();
        let short2 = p22.short_ring();
        let s2 = sub2.apply(&Polynomial::var(&q, &long2, "s2").unwrap()).unwrap();
        assert_eq!(s2, parse_poly(&q, &short2, "c11*b01^2").unwrap());
        let f2 = sub2.apply(&Polynomial::var(&q, &long2, "f2").unwrap()).unwrap();
        assert_eq!(f2, parse_poly(&q, &short2, "c14*b01^2").unwrap());
    }

    #[test]
    fn evaluation_sends_the_long_list_onto_the_short_list() {
        let q = Rationals;
        for (n, d) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let p = params(n, d);
            let sub = eval_map(&q, p);
            let kl = build_kl(&q, p);
            let k = build_k(&q, p);
            let mut images = Vec::new();
            let mut zero_images = 0usize;
            for gen in kl.generators() {
                let img = sub.apply(gen).unwrap();
                if img.is_zero() {
                    zero_images += 1;
                } else {
                    images.push(img);
                }
            }
            // Exactly the s/f-defining generators die under evaluation.
            assert_eq!(zero_images, 2 * n as usize - 2, "zero images at ({n},{d})");
            assert_eq!(images.len(), k.generators().len(), "image count at ({n},{d})");
            for img in &images {
                assert!(
                    k.generators().contains(img),
                    "image {img} missing from the short list at ({n},{d})"
                );
            }
            for gen in k.generators() {
                assert!(images.contains(gen), "{gen} not hit at ({n},{d})");
            }
        }
    }

    #[test]
    fn evaluated_ideal_equals_the_short_ideal() {
        let field = f13();
        let p = params(2, 2);
        let image = eval_ideal(&field, p, &build_kl(&field, p)).unwrap();
        assert!(image.equal(&build_k(&field, p)).unwrap());
    }

    #[test]
    fn sublevels_partition_the_short_ideal() {
        let q = Rationals;
        for (n, d, nn, ll) in [(2u32, 2u32, 5usize, 0usize), (3, 2, 8, 5), (4, 2, 8, 13)] {
            let p = params(n, d);
            let sub = build_sublevels(&q, p);
            assert_eq!(sub.m.generators().len(), 15);
            assert_eq!(sub.n.generators().len(), nn);
            assert_eq!(sub.l.generators().len(), ll);
            let total =
                sub.m.generators().len() + sub.n.generators().len() + sub.l.generators().len();
            assert_eq!(total, build_k(&q, p).generators().len());
        }
        let p = params(3, 2);
        let sub = build_sublevels(&q, p);
        let rebuilt = sub.m.sum(&sub.n).unwrap().sum(&sub.l).unwrap();
        assert!(rebuilt.equal(&build_k(&q, p)).unwrap());
    }

    #[test]
    fn shifted_copy_renames_one_level_down() {
        let q = Rationals;
        let p = params(3, 2);
        let shifted = build_shifted(&q, p).unwrap();
        assert_eq!(shifted.k.generators().len(), 20);
        assert_eq!(shifted.m.generators().len(), 15);
        assert_eq!(shifted.n.generators().len(), 5);
        assert!(shifted.l.generators().is_empty());

        let ring = p.short_ring();
        let level0 = parse_poly(&q, &ring, "b11*b13^4 - b14*b12^4").unwrap();
        assert!(shifted.k.generators().contains(&level0));

        // The five shifted level-2 generators, written out.
        let expected = [
            "b14^4*c21 - b11^4*c22",
            "b14^4*c24 - b11^4*c23",
            "b11^4*c22 - b11^4*c23",
            "b14^4*c22*b21 - b14^4*c23*b24",
            "b14^4*c22*b22 - b14^4*c22*b23",
        ];
        for text in expected {
            let want = parse_poly(&q, &ring, text).unwrap();
            assert!(shifted.n.generators().contains(&want), "missing {text}");
        }

        assert!(build_shifted(&q, params(2, 2)).is_err());
    }

    #[test]
    fn shift_respects_ring_checks() {
        let q = Rationals;
        let p = params(3, 2);
        let inner = p.shifted().unwrap();
        let k_inner = build_k(&q, inner);
        let lifted = shift_ideal(&k_inner, p).unwrap();
        assert!(lifted.equal(&build_shifted(&q, p).unwrap().k).unwrap());
        // Wrong source ring: the (3,2) short ring is not one level down.
        assert!(shift_ideal(&lifted, p).is_err());
    }

    #[test]
    fn auxiliary_ideal_displays() {
        let q = Rationals;
        let p = params(3, 2);
        let aux = build_aux(&q, p);
        let ring = p.short_ring();

        let c1 = aux.c_r(1).unwrap();
        let want: Vec<_> = ["c11", "c12", "c13", "c14"]
            .iter()
            .map(|t| parse_poly(&q, &ring, t).unwrap())
            .collect();
        assert_eq!(c1.generators(), &want[..]);
        assert!(aux.c_r(3).unwrap().generators().is_empty());
        assert!(aux.c_r(0).is_err());
        assert!(aux.c_r(4).is_err());

        let d2 = aux.d_r(2).unwrap();
        let want: Vec<_> = ["c24 - c21", "c23 - c22", "c22 - c21"]
            .iter()
            .map(|t| parse_poly(&q, &ring, t).unwrap())
            .collect();
        assert_eq!(d2.generators(), &want[..]);
        assert!(aux.d_r(3).unwrap().generators().is_empty());

        assert!(aux.d_span(2, 1).unwrap().generators().is_empty());
        assert_eq!(aux.d_span(1, 2).unwrap().generators().len(), 6);

        assert!(aux.b_r(0).unwrap().generators().is_empty());
        assert!(aux.b_r(1).unwrap().generators().is_empty());
        let b22 = aux.b_kr(2, 2).unwrap();
        let want: Vec<_> = ["1 - b21", "1 - b22", "1 - b23", "1 - b24"]
            .iter()
            .map(|t| parse_poly(&q, &ring, t).unwrap())
            .collect();
        assert_eq!(b22.generators(), &want[..]);
        assert!(aux.b_kr(2, 1).unwrap().generators().is_empty());
        assert!(aux.b_kr(3, 2).unwrap().generators().is_empty());
        assert!(aux.b_kr(1, 2).is_err());
        assert!(aux.b_kr(2, 3).is_err());
    }

    #[test]
    fn prime_constructors_match_their_displays() {
        let q = Rationals;
        let p = params(2, 2);
        let ring = p.short_ring();
        let parse = |t: &str| parse_poly(&q, &ring, t).unwrap();

        let q2 = build_prime(&q, p, &PrimeSelector::new(FamilyId::Q2)).unwrap();
        let want = ["c11", "c12", "c13", "c14", "b01*b03^2 - b04*b02^2"];
        assert_eq!(q2.ideal.generators(), &want.map(parse)[..]);
        assert_eq!(q2.label(), "Q2");

        let q3 = build_prime(&q, p, &PrimeSelector::new(FamilyId::Q3)).unwrap();
        let want = ["c11", "c12", "c14", "b01", "b02", "b13", "b14"];
        assert_eq!(q3.ideal.generators(), &want.map(parse)[..]);

        let q1 = build_prime(
            &q,
            p,
            &PrimeSelector::new(FamilyId::Q1).lambda(Lambda::full()),
        )
        .unwrap();
        let want = [
            "b01",
            "b04",
            "b02 - b11*b03",
            "b02 - b12*b03",
            "b02 - b13*b03",
            "b02 - b14*b03",
            "b11 - b12",
            "b11 - b13",
            "b11 - b14",
            "b12 - b13",
            "b12 - b14",
            "b13 - b14",
        ];
        assert_eq!(q1.ideal.generators(), &want.map(parse)[..]);
        assert_eq!(q1.label(), "Q1{1,2,3,4}");

        let q20 = build_prime(&q, p, &PrimeSelector::new(FamilyId::Q20)).unwrap();
        let want =
            ["c11", "c12", "c13", "c14", "b11 - b14", "b12 - b13", "b01", "b02", "b03", "b04"];
        assert_eq!(q20.ideal.generators(), &want.map(parse)[..]);

        let q17 = build_prime(&q, p, &PrimeSelector::new(FamilyId::Q17).t(2)).unwrap();
        let want = [
            "c11 - b12^4*c12",
            "c14 - c11",
            "c13 - c12",
            "b02 - b12*b03",
            "b12 - b11",
            "b12 - b13",
            "b12 - b14",
            "b01 - b12^2*b04",
        ];
        assert_eq!(q17.ideal.generators(), &want.map(parse)[..]);
        assert_eq!(q17.label(), "Q17[t=2]");

        let q19 = build_prime(
            &q,
            p,
            &PrimeSelector::new(FamilyId::Q19).t(2).alpha(q.from_i64(-1)).beta(q.one()),
        )
        .unwrap();
        let want = [
            "c11",
            "c12",
            "c13",
            "c14",
            "b11 - b14",
            "b12 - b13",
            "b02",
            "b03",
            "b01 - b12^2*b04",
            "b12 + b11",
        ];
        assert_eq!(q19.ideal.generators(), &want.map(parse)[..]);
    }

    #[test]
    fn prime_constructor_validation() {
        let q = Rationals;
        let p2 = params(2, 2);
        let p3 = params(3, 2);

        // Non-empty-subset families reject the empty set.
        for id in [FamilyId::Q7, FamilyId::Q9, FamilyId::Q15, FamilyId::Q16] {
            let sel = PrimeSelector::new(id).lambda(Lambda::empty()).alpha(q.from_i64(-1));
            assert!(build_prime(&q, p3, &sel).is_err(), "{id} must reject an empty subset");
        }
        // Q1 accepts any subset, including the empty one.
        assert!(build_prime(&q, p2, &PrimeSelector::new(FamilyId::Q1).lambda(Lambda::empty()))
            .is_ok());

        // Missing and malformed parameters.
        assert!(build_prime(&q, p3, &PrimeSelector::new(FamilyId::Q1)).is_err());
        assert!(build_prime(&q, p3, &PrimeSelector::new(FamilyId::Q8).lambda(Lambda::full()))
            .is_err());
        let bad_root = PrimeSelector::new(FamilyId::Q8)
            .lambda(Lambda::full())
            .alpha(q.from_i64(2));
        assert!(build_prime(&q, p3, &bad_root).is_err());
        let not_strict = PrimeSelector::new(FamilyId::Q15)
            .lambda(Lambda::full())
            .alpha(q.from_i64(-1));
        assert!(
            build_prime(&q, params(3, 2), &not_strict).is_err(),
            "Q15 rejects alpha with alpha^d = 1"
        );

        // Level families validate their range and extra parameters.
        assert!(build_prime(&q, p2, &PrimeSelector::new(FamilyId::Q17)).is_err());
        assert!(build_prime(&q, p2, &PrimeSelector::new(FamilyId::Q17).t(3)).is_err());
        assert!(build_prime(&q, p2, &PrimeSelector::new(FamilyId::Q2).t(2)).is_err());

        // Level-2 families need n >= 3.
        assert!(build_prime(&q, p2, &PrimeSelector::new(FamilyId::Q4).lambda(Lambda::full()))
            .is_err());

        // Q19 at n = 2 pins beta to 1.
        let bad_beta = PrimeSelector::new(FamilyId::Q19)
            .t(2)
            .alpha(q.one())
            .beta(q.from_i64(-1));
        assert!(build_prime(&q, p2, &bad_beta).is_err());
    }

    #[test]
    fn q15_strict_root_exists_over_f13() {
        // 8 is a primitive 4th root mod 13: 8^2 = 64 = 12 = -1.
        let field = f13();
        let i = field.root_of_unity(4).unwrap();
        let sel = PrimeSelector::new(FamilyId::Q15).lambda(Lambda::full()).alpha(i);
        let cand = build_prime(&field, params(3, 2), &sel).unwrap();
        assert_eq!(cand.ideal.generators().len(), 15);
    }

    #[test]
    fn enumeration_at_the_base_level() {
        let field = f13();
        let p = params(2, 2);
        let en = enumerate_primes(&field, p).unwrap();
        assert_eq!(en.raw_count, 23);
        assert_eq!(en.candidates.len(), 23, "the n = 2 list has no duplicates");
        assert!(en.notices.is_empty());
        assert_eq!(count_primes_formula(p), BigInt::from(23));
        let q1_count = en
            .candidates
            .iter()
            .filter(|c| c.family_id == FamilyId::Q1)
            .count();
        assert_eq!(q1_count, 15);
        // Deterministic order: repeated runs agree label-for-label.
        let again = enumerate_primes(&field, p).unwrap();
        let labels: Vec<_> = en.candidates.iter().map(|c| c.label()).collect();
        let labels2: Vec<_> = again.candidates.iter().map(|c| c.label()).collect();
        assert_eq!(labels, labels2);
    }

    #[test]
    fn enumeration_with_recursion() {
        let field = f13();
        let p = params(3, 2);
        let en = enumerate_primes(&field, p).unwrap();
        // The raw count reproduces the closed form exactly when every root
        // pool is complete.
        assert_eq!(BigInt::from(en.raw_count), count_primes_formula(p));
        assert_eq!(en.raw_count, 289);
        // Exactly two local merges: the empty-subset Q8 pair collapses
        // across alpha, and the empty-subset Q12/Q13 coincide.
        assert_eq!(en.candidates.len(), 287);
        assert_eq!(
            en.notices.iter().filter(|m| m.contains("duplicates")).count(),
            2
        );
        // The lifted base-level list arrives intact: 21 + 4 candidates.
        let lifted: Vec<_> = en.candidates.iter().filter(|c| c.shift == 1).collect();
        assert_eq!(lifted.len(), 25);

        // A lifted candidate is the shifted ideal plus C1 + (b01..b04).
        let inner = p.shifted().unwrap();
        let q2_inner = build_prime(&field, inner, &PrimeSelector::new(FamilyId::Q2)).unwrap();
        let ring = p.short_ring();
        let g = Gens::new(&field, &ring, p.d);
        let mut gens = shift_ideal(&q2_inner.ideal, p).unwrap().generators().to_vec();
        gens.extend(g.c_row(1));
        gens.extend([g.b(0, 1), g.b(0, 2), g.b(0, 3), g.b(0, 4)]);
        let expected = g.ideal(gens);
        let lifted_q2 = lifted
            .iter()
            .find(|c| c.family_id == FamilyId::Q2)
            .expect("lifted Q2 present");
        assert!(lifted_q2.ideal.equal(&expected).unwrap());
        assert_eq!(lifted_q2.label(), "Q2@shift1");
    }

    #[test]
    fn enumeration_over_the_rationals_records_missing_roots() {
        let q = Rationals;
        let en = enumerate_primes(&q, params(3, 2)).unwrap();
        // The strict d²-root family is empty over QQ: 30 candidates gone,
        // and the recursion loses the two imaginary 4th roots of unity in
        // its Q19 family (half of 2·1·4 = 8 instances at the base level).
        assert!(en.raw_count < 289);
        assert!(en
            .notices
            .iter()
            .any(|m| m.contains("roots of unity") && m.contains("QQ")));
    }

    #[test]
    fn count_formula_hand_values() {
        assert_eq!(count_primes_formula(params(2, 2)), BigInt::from(23));
        assert_eq!(count_primes_formula(params(2, 7)), BigInt::from(28));
        assert_eq!(count_primes_formula(params(3, 2)), BigInt::from(289));
        assert_eq!(count_primes_formula(params(3, 3)), BigInt::from(395));
        assert_eq!(count_primes_formula(params(4, 2)), BigInt::from(807));
        // Monotone in n, and dominated from below by the last term.
        for d in [2u32, 3, 5] {
            let mut prev = count_primes_formula(params(2, d));
            for n in 3..=6u32 {
                let cur = count_primes_formula(params(n, d));
                assert!(cur > prev, "count must grow with n at d = {d}");
                let tail = BigInt::from(18) * BigInt::from(d).pow(1u32 << (n - 2));
                assert!(cur >= tail);
                prev = cur;
            }
        }
    }
}
