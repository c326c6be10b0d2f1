//! Variable tables, sparse multivariate polynomials, monomial orders, and
//! ring homomorphisms (substitution).
//!
//! A [`Ring`] is an immutable table of variable names. A [`Polynomial`] is a
//! sorted sparse term vector over a [`crate::scalars::Field`]; terms are kept
//! strictly descending under the polynomial's active [`MonomialOrder`], zero
//! coefficients are never stored, and the zero polynomial has an empty term
//! set. Polynomial equality is mathematical (independent of the active
//! order).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::scalars::Field;
use crate::{Error, Result};

/// How a ring's variable table was derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingMode {
    /// `k[s_2..s_n, f_2..f_n, b_{0i}..b_{n-1,i}, c_{1i}..c_{n-1,i}]`,
    /// dimension `10n − 6`.
    Long(u32),
    /// The `b`/`c` variables only, dimension `8(n−1) + 4`.
    Short(u32),
    /// Any explicit list of distinct names.
    Custom,
}

/// A validated ring description: mode plus the ordered variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    pub mode: RingMode,
    pub variables: Vec<String>,
}

/// The name of the level variable `s_r`.
pub fn svar(r: u32) -> String {
    format!("s{r}")
}

/// The name of the level variable `f_r`.
pub fn fvar(r: u32) -> String {
    format!("f{r}")
}

/// The name of `b_{ri}`.
pub fn bvar(r: u32, i: u32) -> String {
    format!("b{r}{i}")
}

/// The name of `c_{ri}`.
pub fn cvar(r: u32, i: u32) -> String {
    format!("c{r}{i}")
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl RingSpec {
    /// The long-mode ring of dimension `10n − 6`: `s`-block, `f`-block, then
    /// `b_{ri}` by `(r, i)`, then `c_{ri}` by `(r, i)`.
    pub fn long(n: u32) -> Result<RingSpec> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("long ring needs n ≥ 2, got {n}")));
        }
        let mut variables = Vec::with_capacity(10 * n as usize - 6);
        for r in 2..=n {
            variables.push(svar(r));
        }
        for r in 2..=n {
            variables.push(fvar(r));
        }
        for r in 0..n {
            for i in 1..=4 {
                variables.push(bvar(r, i));
            }
        }
        for r in 1..n {
            for i in 1..=4 {
                variables.push(cvar(r, i));
            }
        }
        Ok(RingSpec { mode: RingMode::Long(n), variables })
    }

    /// The short-mode ring of dimension `8(n−1) + 4`: the `b`/`c` variables
    /// only.
    pub fn short(n: u32) -> Result<RingSpec> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("short ring needs n ≥ 2, got {n}")));
        }
        let mut variables = Vec::with_capacity(8 * (n as usize - 1) + 4);
        for r in 0..n {
            for i in 1..=4 {
                variables.push(bvar(r, i));
            }
        }
        for r in 1..n {
            for i in 1..=4 {
                variables.push(cvar(r, i));
            }
        }
        Ok(RingSpec { mode: RingMode::Short(n), variables })
    }

    /// A custom ring over explicit names.
    pub fn custom<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<RingSpec> {
        let variables: Vec<String> = names.into_iter().map(Into::into).collect();
        Ok(RingSpec { mode: RingMode::Custom, variables })
    }

    fn validate(&self) -> Result<()> {
        if self.variables.is_empty() {
            return Err(Error::InvalidRing("variable list is empty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &self.variables {
            if !valid_name(v) {
                return Err(Error::InvalidRing(format!(
                    "variable name {v:?} does not match [a-z][a-z0-9]*"
                )));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    index: HashMap<String, usize>,
}

/// An immutable handle to a polynomial ring's variable table.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl Ring {
    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.0.spec.variables.len()
    }

    /// The construction mode.
    pub fn mode(&self) -> RingMode {
        self.0.spec.mode
    }

    /// The ordered variable names.
    pub fn vars(&self) -> &[String] {
        &self.0.spec.variables
    }

    /// The name of variable `i`.
    pub fn var_name(&self, i: usize) -> &str {
        &self.0.spec.variables[i]
    }

    /// The index of a named variable, if present.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    /// A new ring with `name` prepended at index 0 (used for auxiliary
    /// elimination variables). Mode becomes `Custom`.
    pub fn extended_front(&self, name: &str) -> Result<Ring> {
        let mut names = Vec::with_capacity(self.nvars() + 1);
        names.push(name.to_string());
        names.extend(self.vars().iter().cloned());
        ring_make(RingSpec::custom(names)?)
    }

    /// A fresh variable name not already present (base, base0, base1, …).
    pub fn fresh_var(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        for k in 0.. {
            let cand = format!("{base}{k}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
        }
        unreachable!()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec.variables == other.0.spec.variables
    }
}

impl Eq for Ring {}

/// Validates `spec` and builds the ring handle with canonical variable
/// indexing.
pub fn ring_make(spec: RingSpec) -> Result<Ring> {
    spec.validate()?;
    let index = spec
        .variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    Ok(Ring(Arc::new(RingInner { spec, index })))
}

/// An exponent vector over a ring, with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    deg: u32,
}

impl Monomial {
    /// The monomial 1 in an `nvars`-variable ring.
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0u16; nvars].into_boxed_slice(), deg: 0 }
    }

    /// Builds from an explicit exponent vector.
    pub fn new(exps: Vec<u16>) -> Monomial {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: exps.into_boxed_slice(), deg }
    }

    /// The exponent of variable `i`.
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// All exponents.
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Whether this is the monomial 1.
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps: exps.into_boxed_slice(), deg: self.deg + other.deg }
    }

    /// Whether `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Exact quotient `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let exps: Vec<u16> =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { exps: exps.into_boxed_slice(), deg: self.deg - other.deg }
    }

    /// Least common multiple.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Whether the supports are disjoint.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A total, multiplicative well-order on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic (variable 0 heaviest).
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Elimination order: variables `0..split` compared lexicographically
    /// first, ties broken by grevlex on the rest. Any polynomial whose
    /// leading monomial avoids the first block lies entirely in the subring
    /// of the remaining variables.
    Block { split: usize },
}

impl MonomialOrder {
    /// Compares `a` and `b`; `Greater` means `a` is the larger monomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex_cmp(a.exps(), b.exps()),
            MonomialOrder::GrevLex => grevlex_cmp(a.exps(), b.exps(), a.deg, b.deg),
            MonomialOrder::Block { split } => {
                let head = lex_cmp(&a.exps()[..split], &b.exps()[..split]);
                if head != Ordering::Equal {
                    return head;
                }
                let ta: u32 = a.exps()[split..].iter().map(|&e| e as u32).sum();
                let tb: u32 = b.exps()[split..].iter().map(|&e| e as u32).sum();
                grevlex_cmp(&a.exps()[split..], &b.exps()[split..], ta, tb)
            }
        }
    }

    /// Short parse-friendly name.
    pub fn parse(name: &str) -> Result<MonomialOrder> {
        match name {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            _ => Err(Error::InvalidParam(format!(
                "unknown order {name:?} (expected lex or grevlex)"
            ))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block { split } => write!(f, "block{split}"),
        }
    }
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u16], b: &[u16], dega: u32, degb: u32) -> Ordering {
    match dega.cmp(&degb) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // Smaller exponent in the *last* differing position wins.
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

/// A sparse polynomial: canonical term vector over a fixed ring and field.
#[derive(Debug, Clone)]
pub struct Polynomial<F: Field> {
    field: F,
    ring: Ring,
    order: MonomialOrder,
    /// Strictly descending under `order`; no zero coefficients.
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Polynomial<F> {
    /// The zero polynomial.
    pub fn zero(field: &F, ring: &Ring) -> Self {
        Polynomial {
            field: field.clone(),
            ring: ring.clone(),
            order: MonomialOrder::GrevLex,
            terms: Vec::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(field: &F, ring: &Ring, c: F::Elem) -> Self {
        let mut p = Self::zero(field, ring);
        if !field.is_zero(&c) {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    /// The constant 1.
    pub fn one(field: &F, ring: &Ring) -> Self {
        Self::constant(field, ring, field.one())
    }

    /// A small integer constant.
    pub fn int(field: &F, ring: &Ring, v: i64) -> Self {
        Self::constant(field, ring, field.from_i64(v))
    }

    /// The named variable as a polynomial.
    pub fn var(field: &F, ring: &Ring, name: &str) -> Result<Self> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        let mut exps = vec![0u16; ring.nvars()];
        exps[idx] = 1;
        Ok(Polynomial {
            field: field.clone(),
            ring: ring.clone(),
            order: MonomialOrder::GrevLex,
            terms: vec![(Monomial::new(exps), field.one())],
        })
    }

    /// The monomial `Π name^exp` as a polynomial with coefficient 1.
    pub fn monomial(field: &F, ring: &Ring, powers: &[(&str, u16)]) -> Result<Self> {
        let mut exps = vec![0u16; ring.nvars()];
        for (name, e) in powers {
            let idx = ring
                .var_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            exps[idx] = exps[idx].checked_add(*e).expect("exponent overflow");
        }
        Ok(Polynomial {
            field: field.clone(),
            ring: ring.clone(),
            order: MonomialOrder::GrevLex,
            terms: vec![(Monomial::new(exps), field.one())],
        })
    }

    /// Builds from raw terms (merged, zero-dropped, sorted under `order`).
    pub fn from_terms(
        field: &F,
        ring: &Ring,
        order: MonomialOrder,
        terms: Vec<(Monomial, F::Elem)>,
    ) -> Self {
        let mut map: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.exps().len(), ring.nvars());
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = field.add(e.get(), &c);
                    if field.is_zero(&s) {
                        e.remove();
                    } else {
                        e.insert(s);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !field.is_zero(&c) {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> = map.into_iter().collect();
        terms.sort_unstable_by(|(a, _), (b, _)| order.cmp(b, a));
        Polynomial { field: field.clone(), ring: ring.clone(), order, terms }
    }

    /// The coefficient field.
    pub fn field(&self) -> &F {
        &self.field
    }

    /// The ambient ring.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The active monomial order the terms are sorted under.
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The terms, strictly descending under the active order.
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading (largest) term under the active order.
    pub fn leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Max term degree; −1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree() as i64).max().unwrap_or(-1)
    }

    /// The same polynomial re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if self.order == order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|(a, _), (b, _)| order.cmp(b, a));
        Polynomial { field: self.field.clone(), ring: self.ring.clone(), order, terms }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("operands live in different rings".into()));
        }
        if self.field != other.field {
            return Err(Error::RingMismatch("operands live over different fields".into()));
        }
        Ok(())
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let rhs =
            if other.order == self.order { other.clone() } else { other.with_order(self.order) };
        Ok(self.merge_scaled(&rhs, None, &self.field.one()))
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let rhs =
            if other.order == self.order { other.clone() } else { other.with_order(self.order) };
        let minus_one = self.field.neg(&self.field.one());
        Ok(self.merge_scaled(&rhs, None, &minus_one))
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.field.neg(c)))
            .collect();
        Polynomial {
            field: self.field.clone(),
            ring: self.ring.clone(),
            order: self.order,
            terms,
        }
    }

    /// `self + c·m·other` in one sorted merge pass — the reduction kernel.
    /// `shift = None` means `m = 1`. Both inputs must share the active order.
    pub fn merge_scaled(&self, other: &Self, shift: Option<&Monomial>, c: &F::Elem) -> Self {
        debug_assert_eq!(self.order, other.order);
        let f = &self.field;
        let mut out: Vec<(Monomial, F::Elem)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb0, cb) = &other.terms[j];
            let mb = match shift {
                Some(s) => mb0.mul(s),
                None => mb0.clone(),
            };
            match self.order.cmp(ma, &mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(cb, c);
                    if !f.is_zero(&v) {
                        out.push((mb, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(ca, &f.mul(cb, c));
                    if !f.is_zero(&v) {
                        out.push((mb, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        while i < self.terms.len() {
            out.push(self.terms[i].clone());
            i += 1;
        }
        while j < other.terms.len() {
            let (mb0, cb) = &other.terms[j];
            let mb = match shift {
                Some(s) => mb0.mul(s),
                None => mb0.clone(),
            };
            let v = f.mul(cb, c);
            if !f.is_zero(&v) {
                out.push((mb, v));
            }
            j += 1;
        }
        Polynomial {
            field: self.field.clone(),
            ring: self.ring.clone(),
            order: self.order,
            terms: out,
        }
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let rhs =
            if other.order == self.order { other.clone() } else { other.with_order(self.order) };
        let f = &self.field;
        let mut map: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let v = f.mul(ca, cb);
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &v);
                        if f.is_zero(&s) {
                            e.remove();
                        } else {
                            e.insert(s);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        if !f.is_zero(&v) {
                            e.insert(v);
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> = map.into_iter().collect();
        terms.sort_unstable_by(|(a, _), (b, _)| self.order.cmp(b, a));
        Ok(Polynomial {
            field: self.field.clone(),
            ring: self.ring.clone(),
            order: self.order,
            terms,
        })
    }

    /// Scales by a field element.
    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Polynomial {
                field: self.field.clone(),
                ring: self.ring.clone(),
                order: self.order,
                terms: Vec::new(),
            };
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
            .collect();
        Polynomial {
            field: self.field.clone(),
            ring: self.ring.clone(),
            order: self.order,
            terms,
        }
    }

    /// Multiplies by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        Polynomial {
            field: self.field.clone(),
            ring: self.ring.clone(),
            order: self.order,
            terms,
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Polynomial::one(&self.field, &self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Maps this polynomial into `target` by sending variable `i` of the
    /// source ring to variable `var_map[i]` of the target (a pure renaming /
    /// embedding; exponents are permuted).
    pub fn map_exponents(&self, target: &Ring, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; target.nvars()];
                for (i, &e) in m.exps().iter().enumerate() {
                    if e != 0 {
                        exps[var_map[i]] = e;
                    }
                }
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(&self.field, target, self.order, terms)
    }

    /// Whether any term uses variable `i`.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) != 0)
    }

    /// The polynomial minus its leading term. Panics on zero.
    pub fn tail(&self) -> Self {
        debug_assert!(!self.terms.is_empty());
        Polynomial {
            field: self.field.clone(),
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms[1..].to_vec(),
        }
    }

    /// Canonical text form (terms descending under the active order).
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = self.field.coeff_display(c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(&self.ring, m);
            match (&mono[..], &mag[..]) {
                ("", _) => out.push_str(&mag),
                (_, "1") => out.push_str(&mono),
                _ => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.ring != other.ring {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        let resorted = other.with_order(self.order);
        self.terms == resorted.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

// Operator sugar for owned polynomials. The fallible inherent methods
// (`add`, `sub`, `mul`) are the primary API; the operators exist for modules
// that assemble large fixed generator lists, where every operand is known to
// live in one ring. Mixing rings through an operator is a programming error
// and panics.

impl<F: Field> std::ops::Add for Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: Polynomial<F>) -> Polynomial<F> {
        Polynomial::add(&self, &rhs).expect("operands of `+` share a ring")
    }
}

impl<F: Field> std::ops::Sub for Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: Polynomial<F>) -> Polynomial<F> {
        Polynomial::sub(&self, &rhs).expect("operands of `-` share a ring")
    }
}

impl<F: Field> std::ops::Mul for Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: Polynomial<F>) -> Polynomial<F> {
        Polynomial::mul(&self, &rhs).expect("operands of `*` share a ring")
    }
}

impl<F: Field> std::ops::Neg for Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(&self)
    }
}

/// A ring homomorphism given by images of the source variables.
///
/// Variables without an explicit image map identically (by name) into the
/// target ring; applying the map distributes over `+` and `·`.
pub struct Substitution<F: Field> {
    source: Ring,
    target: Ring,
    images: Vec<Option<Polynomial<F>>>,
}

impl<F: Field> Substitution<F> {
    /// An identity-by-name substitution between two rings.
    pub fn new(source: &Ring, target: &Ring) -> Self {
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.nvars()],
        }
    }

    /// Sets the image of a source variable.
    pub fn set(&mut self, var: &str, image: Polynomial<F>) -> Result<()> {
        let idx = self
            .source
            .var_index(var)
            .ok_or_else(|| Error::Parse(format!("unknown source variable {var:?}")))?;
        if image.ring() != &self.target {
            return Err(Error::RingMismatch(format!(
                "image of {var:?} lives outside the target ring"
            )));
        }
        self.images[idx] = Some(image);
        Ok(())
    }

    /// Applies the homomorphism.
    pub fn apply(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if p.ring() != &self.source {
            return Err(Error::RingMismatch("polynomial not in the source ring".into()));
        }
        let field = p.field().clone();
        let mut acc = Polynomial::zero(&field, &self.target);
        for (m, c) in p.terms() {
            let mut term = Polynomial::constant(&field, &self.target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = match &self.images[i] {
                    Some(q) => q.pow(e as u32)?,
                    None => {
                        let name = self.source.var_name(i);
                        Polynomial::var(&field, &self.target, name)?.pow(e as u32)?
                    }
                };
                term = term.mul(&img)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parses the external polynomial grammar: terms joined by `+`/`-`; a term is
/// an optional integer or `a/b` coefficient and `*`-separated variable powers
/// `name^k`; whitespace is insignificant.
pub fn parse_poly<F: Field>(field: &F, ring: &Ring, text: &str) -> Result<Polynomial<F>> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let poly = parse_sum(field, ring, &tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {pos}")));
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().expect("digits parse as BigInt")));
            }
            'a'..='z' => {
                let start = i;
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit())
                {
                    i += 1;
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

fn parse_sum<F: Field>(
    field: &F,
    ring: &Ring,
    tokens: &[Token],
    pos: &mut usize,
) -> Result<Polynomial<F>> {
    let mut acc = Polynomial::zero(field, ring);
    let mut first = true;
    loop {
        let mut sign = false;
        if *pos < tokens.len() {
            match tokens[*pos] {
                Token::Plus => {
                    *pos += 1;
                }
                Token::Minus => {
                    sign = true;
                    *pos += 1;
                }
                _ if first => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "expected + or - between terms at token {pos:?}"
                    )))
                }
            }
        } else if first {
            return Err(Error::Parse("empty polynomial text".into()));
        } else {
            break;
        }
        if *pos >= tokens.len() {
            return Err(Error::Parse("dangling sign at end of input".into()));
        }
        let term = parse_term(field, ring, tokens, pos)?;
        acc = if sign { acc.sub(&term)? } else { acc.add(&term)? };
        first = false;
        if *pos >= tokens.len() {
            break;
        }
    }
    Ok(acc)
}

fn parse_term<F: Field>(
    field: &F,
    ring: &Ring,
    tokens: &[Token],
    pos: &mut usize,
) -> Result<Polynomial<F>> {
    let mut coeff = field.one();
    let mut exps = vec![0u16; ring.nvars()];
    let mut nfactors = 0;
    loop {
        match tokens.get(*pos) {
            Some(Token::Int(n)) => {
                *pos += 1;
                let num = n.clone();
                let den = if let Some(Token::Slash) = tokens.get(*pos) {
                    *pos += 1;
                    match tokens.get(*pos) {
                        Some(Token::Int(d)) => {
                            *pos += 1;
                            d.clone()
                        }
                        _ => return Err(Error::Parse("expected integer after '/'".into())),
                    }
                } else {
                    BigInt::from(1)
                };
                coeff = field.mul(&coeff, &field.from_fraction(&num, &den)?);
            }
            Some(Token::Name(name)) => {
                *pos += 1;
                let idx = ring
                    .var_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                let e: u16 = if let Some(Token::Caret) = tokens.get(*pos) {
                    *pos += 1;
                    match tokens.get(*pos) {
                        Some(Token::Int(k)) => {
                            *pos += 1;
                            k.try_into().map_err(|_| {
                                Error::Parse(format!("exponent {k} out of range"))
                            })?
                        }
                        _ => return Err(Error::Parse("expected integer exponent after '^'".into())),
                    }
                } else {
                    1
                };
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
            }
            _ => return Err(Error::Parse(format!("expected a factor at token {pos:?}"))),
        }
        nfactors += 1;
        if let Some(Token::Star) = tokens.get(*pos) {
            *pos += 1;
            continue;
        }
        break;
    }
    debug_assert!(nfactors > 0);
    Ok(Polynomial::from_terms(
        field,
        ring,
        MonomialOrder::GrevLex,
        vec![(Monomial::new(exps), coeff)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> Rationals {
        Rationals
    }

    fn xyz() -> Ring {
        ring_make(RingSpec::custom(["x", "y", "z"]).unwrap()).unwrap()
    }

    #[test]
    fn ring_dimensions() {
        assert_eq!(ring_make(RingSpec::long(2).unwrap()).unwrap().nvars(), 14);
        assert_eq!(ring_make(RingSpec::long(3).unwrap()).unwrap().nvars(), 24);
        assert_eq!(ring_make(RingSpec::long(4).unwrap()).unwrap().nvars(), 34);
        assert_eq!(ring_make(RingSpec::short(2).unwrap()).unwrap().nvars(), 12);
        assert_eq!(ring_make(RingSpec::short(3).unwrap()).unwrap().nvars(), 20);
        assert!(RingSpec::long(1).is_err());
        assert!(ring_make(RingSpec::custom(["x", "x"]).unwrap()).is_err());
        assert!(ring_make(RingSpec::custom(["X"]).unwrap()).is_err());
    }

    #[test]
    fn long_ring_variable_layout() {
        let r = ring_make(RingSpec::long(3).unwrap()).unwrap();
        assert_eq!(r.vars()[0], "s2");
        assert_eq!(r.vars()[1], "s3");
        assert_eq!(r.vars()[2], "f2");
        assert_eq!(r.vars()[3], "f3");
        assert_eq!(r.vars()[4], "b01");
        assert_eq!(r.vars()[15], "b24");
        assert_eq!(r.vars()[16], "c11");
        assert_eq!(r.vars()[23], "c24");
    }

    #[test]
    fn parse_examples() {
        let f = qq();
        let long2 = ring_make(RingSpec::long(2).unwrap()).unwrap();
        let g01 = parse_poly(&f, &long2, "b01*b03^2 - b04*b02^2").unwrap();
        assert_eq!(g01.terms().len(), 2);
        assert_eq!(g01.total_degree(), 3);

        let zero = parse_poly(&f, &long2, "0").unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.total_degree(), -1);

        let xy = ring_make(RingSpec::custom(["x", "y"]).unwrap()).unwrap();
        let p = parse_poly(&f, &xy, "x^2*y - y").unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.total_degree(), 3);

        assert!(parse_poly(&f, &xy, "x + q").is_err());
        assert!(parse_poly(&f, &xy, "x ^ y").is_err());
        assert!(parse_poly(&f, &xy, "").is_err());
    }

    #[test]
    fn parse_format_round_trip() {
        let f = qq();
        let r = xyz();
        for text in [
            "x^2*y - y + 1",
            "x",
            "0",
            "3*x*y*z",
            "1/2*x^3 - 2/3",
            "x^2 + 2*x*y + y^2 - z",
            "7",
            "-x + y",
        ] {
            let p = parse_poly(&f, &r, text).unwrap();
            let s = p.to_text();
            let q = parse_poly(&f, &r, &s).unwrap();
            assert_eq!(p, q, "round-trip through {s:?}");
        }
        // Canonical forms print back to themselves.
        let p = parse_poly(&f, &r, "y + x").unwrap();
        assert_eq!(parse_poly(&f, &r, &p.to_text()).unwrap().to_text(), p.to_text());
    }

    #[test]
    fn round_trip_mod_p() {
        let f = PrimeField::new(13, 1).unwrap();
        let r = xyz();
        let p = parse_poly(&f, &r, "12*x + 5*y - 1/2").unwrap();
        let q = parse_poly(&f, &r, &p.to_text()).unwrap();
        assert_eq!(p, q);
        // 12 ≡ −1 prints via the balanced lift.
        assert!(p.to_text().starts_with("-x"), "got {}", p.to_text());
    }

    #[test]
    fn arithmetic_basics() {
        let f = qq();
        let r = xyz();
        let p = parse_poly(&f, &r, "x^2*y - y + 1").unwrap();
        assert!(p.sub(&p).unwrap().is_zero());

        let a = parse_poly(&f, &r, "x + y").unwrap();
        let b = parse_poly(&f, &r, "x - y").unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, parse_poly(&f, &r, "x^2 - y^2").unwrap());

        let one = Polynomial::one(&f, &r);
        assert_eq!(p.mul(&one).unwrap(), p);

        let other = ring_make(RingSpec::custom(["x", "y"]).unwrap()).unwrap();
        let q = parse_poly(&f, &other, "x").unwrap();
        assert!(p.add(&q).is_err(), "ring mismatch must error");
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let f = qq();
        let r = xyz();
        let p = parse_poly(&f, &r, "x^3 - 2*x*y + y - 5").unwrap();
        let rebuilt = Polynomial::from_terms(&f, &r, p.order(), p.terms().to_vec());
        assert_eq!(rebuilt.terms(), p.terms());
    }

    #[test]
    fn orders_disagree_but_equality_holds() {
        let f = qq();
        let r = xyz();
        let p = parse_poly(&f, &r, "x + y^2").unwrap();
        let lex = p.with_order(MonomialOrder::Lex);
        let grev = p.with_order(MonomialOrder::GrevLex);
        assert_eq!(lex.leading().unwrap().0, &Monomial::new(vec![1, 0, 0]));
        assert_eq!(grev.leading().unwrap().0, &Monomial::new(vec![0, 2, 0]));
        assert_eq!(lex, grev);
    }

    #[test]
    fn grevlex_classic_comparisons() {
        let ord = MonomialOrder::GrevLex;
        // Higher total degree wins.
        assert_eq!(
            ord.cmp(&Monomial::new(vec![2, 0, 0]), &Monomial::new(vec![1, 0, 0])),
            Ordering::Greater
        );
        // x*z vs y^2 at equal degree: last differing exponent decides, smaller wins.
        assert_eq!(
            ord.cmp(&Monomial::new(vec![1, 0, 1]), &Monomial::new(vec![0, 2, 0])),
            Ordering::Less
        );
        // x*y > x*z in grevlex.
        assert_eq!(
            ord.cmp(&Monomial::new(vec![1, 1, 0]), &Monomial::new(vec![1, 0, 1])),
            Ordering::Greater
        );
    }

    fn random_poly(
        f: &Rationals,
        r: &Ring,
        rng: &mut ChaCha8Rng,
        max_terms: usize,
        max_deg: u16,
    ) -> Polynomial<Rationals> {
        let nterms = rng.gen_range(0..=max_terms);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let mut exps = vec![0u16; r.nvars()];
            for e in exps.iter_mut() {
                *e = rng.gen_range(0..=max_deg);
            }
            let c = f.from_i64(rng.gen_range(-4i64..=4));
            terms.push((Monomial::new(exps), c));
        }
        Polynomial::from_terms(f, r, MonomialOrder::GrevLex, terms)
    }

    #[test]
    fn order_axioms_on_random_monomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let orders =
            [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block { split: 2 }];
        for _ in 0..500 {
            let m = |rng: &mut ChaCha8Rng| {
                Monomial::new((0..5).map(|_| rng.gen_range(0..4u16)).collect())
            };
            let (a, b, c) = (m(&mut rng), m(&mut rng), m(&mut rng));
            for ord in orders {
                // Totality + antisymmetry.
                assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
                // Multiplicativity: a ≥ b ⇒ ac ≥ bc.
                let ac = a.mul(&c);
                let bc = b.mul(&c);
                assert_eq!(ord.cmp(&a, &b), ord.cmp(&ac, &bc));
                // Well-order: 1 is minimal.
                let one = Monomial::one(5);
                assert_ne!(ord.cmp(&a, &one), Ordering::Less);
            }
        }
    }

    #[test]
    fn block_order_elimination_property() {
        let f = qq();
        let r = ring_make(RingSpec::custom(["t", "u", "x", "y", "z"]).unwrap()).unwrap();
        let ord = MonomialOrder::Block { split: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let p = random_poly(&f, &r, &mut rng, 6, 3).with_order(ord);
            if let Some((lm, _)) = p.leading() {
                if lm.exp(0) == 0 && lm.exp(1) == 0 {
                    assert!(
                        !p.uses_var(0) && !p.uses_var(1),
                        "leading monomial avoids the block but the tail does not: {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn substitution_examples() {
        let f = qq();
        let long2 = ring_make(RingSpec::long(2).unwrap()).unwrap();
        let short2 = ring_make(RingSpec::short(2).unwrap()).unwrap();
        let mut sub = Substitution::new(&long2, &short2);
        sub.set("s2", Polynomial::var(&f, &short2, "c11").unwrap()).unwrap();
        sub.set("f2", Polynomial::var(&f, &short2, "c14").unwrap()).unwrap();
        let p = parse_poly(&f, &long2, "s2 - f2").unwrap();
        let img = sub.apply(&p).unwrap();
        assert_eq!(img, parse_poly(&f, &short2, "c11 - c14").unwrap());

        // Identity map fixes a b/c-only polynomial.
        let sub_id = Substitution::new(&long2, &short2);
        let g01 = parse_poly(&f, &long2, "b01*b03^2 - b04*b02^2").unwrap();
        assert_eq!(
            sub_id.apply(&g01).unwrap(),
            parse_poly(&f, &short2, "b01*b03^2 - b04*b02^2").unwrap()
        );

        // Missing image of a used variable errors.
        let p = parse_poly(&f, &long2, "s2").unwrap();
        let empty = Substitution::new(&long2, &short2);
        assert!(empty.apply(&p).is_err());
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let f = qq();
        let src = xyz();
        let dst = ring_make(RingSpec::custom(["u", "v"]).unwrap()).unwrap();
        let mut sub = Substitution::new(&src, &dst);
        sub.set("x", parse_poly(&f, &dst, "u + v").unwrap()).unwrap();
        sub.set("y", parse_poly(&f, &dst, "u*v").unwrap()).unwrap();
        sub.set("z", parse_poly(&f, &dst, "v^2 - 1").unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let p = random_poly(&f, &src, &mut rng, 4, 2);
            let q = random_poly(&f, &src, &mut rng, 4, 2);
            let lhs = sub.apply(&p.mul(&q).unwrap()).unwrap();
            let rhs = sub.apply(&p).unwrap().mul(&sub.apply(&q).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = sub.apply(&p.add(&q).unwrap()).unwrap();
            let rhs = sub.apply(&p).unwrap().add(&sub.apply(&q).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn map_exponents_round_trip() {
        let f = qq();
        let r = xyz();
        let ext = r.extended_front("t").unwrap();
        assert_eq!(ext.vars(), ["t", "x", "y", "z"]);
        let p = parse_poly(&f, &r, "x^2*y - z").unwrap();
        let up = p.map_exponents(&ext, &[1, 2, 3]);
        assert_eq!(up.to_text(), "x^2*y - z");
        assert!(!up.uses_var(0));
        let down = up.map_exponents(&r, &[0, 0, 1, 2]);
        assert_eq!(down, p);
    }
}
