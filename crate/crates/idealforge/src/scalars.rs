//! Exact coefficient arithmetic: arbitrary-precision rationals and prime
//! fields containing prescribed roots of unity.
//!
//! Every coefficient in the crate is an element of a [`Field`]; there is no
//! floating point and no rounding. Two fields are provided: [`Rationals`]
//! (ℚ, with roots of unity ±1 only) and [`PrimeField`] (`F_p` for a prime
//! `p ≡ 1 (mod m)`, which contains a primitive `m`-th root of unity).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Which kind of coefficient field to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldKind {
    /// The rational numbers ℚ.
    Rationals,
    /// A prime field `F_p`.
    PrimeField,
}

/// A validated description of a coefficient field.
///
/// Invariants (checked by [`FieldSpec::validate`] / [`field_make`]):
/// a `PrimeField` modulus is prime and `≡ 1 (mod unity_order)`, so a
/// primitive `unity_order`-th root of unity exists; ℚ admits
/// `unity_order ∈ {1, 2}` only (roots ±1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub modulus: Option<u64>,
    pub unity_order: u64,
}

impl FieldSpec {
    /// The rationals with roots of unity ±1 available.
    pub fn rationals() -> Self {
        FieldSpec { kind: FieldKind::Rationals, modulus: None, unity_order: 2 }
    }

    /// A prime field `F_p` required to contain primitive `unity_order`-th
    /// roots of unity.
    pub fn prime(p: u64, unity_order: u64) -> Self {
        FieldSpec { kind: FieldKind::PrimeField, modulus: Some(p), unity_order }
    }

    /// Checks the invariants listed on the type.
    pub fn validate(&self) -> Result<()> {
        if self.unity_order == 0 {
            return Err(Error::InvalidField("unity_order must be positive".into()));
        }
        match self.kind {
            FieldKind::Rationals => {
                if self.modulus.is_some() {
                    return Err(Error::InvalidField("rationals take no modulus".into()));
                }
                if self.unity_order > 2 {
                    return Err(Error::InvalidField(format!(
                        "rationals contain no primitive {}-th root of unity (only ±1)",
                        self.unity_order
                    )));
                }
                Ok(())
            }
            FieldKind::PrimeField => {
                let p = self
                    .modulus
                    .ok_or_else(|| Error::InvalidField("prime field needs a modulus".into()))?;
                if !is_prime_u64(p) {
                    return Err(Error::InvalidField(format!("modulus {p} is not prime")));
                }
                if (p - 1) % self.unity_order != 0 {
                    return Err(Error::InvalidField(format!(
                        "modulus {p} is not ≡ 1 (mod {})",
                        self.unity_order
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Exact field arithmetic over a fixed coefficient domain.
///
/// Implementations are immutable handles; elements are plain values, so both
/// are freely shareable across threads.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    /// The element representation (canonical form: reduced fraction with
    /// positive denominator, or residue in `[0, p)`).
    type Elem: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Exact division; `None` when `b` is zero.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_i64(&self, v: i64) -> Self::Elem;

    /// Interprets an exact fraction literal. Fails over `F_p` when the
    /// denominator vanishes mod `p` (a wrong-field literal).
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// Signed display used inside polynomials: returns (is_negative,
    /// magnitude-string). Prime-field residues use the balanced lift so that
    /// `p − 1` prints as `-1`.
    fn coeff_display(&self, a: &Self::Elem) -> (bool, String);

    /// Standalone scalar display: decimal integer, `a/b` fraction, or
    /// `r mod p`.
    fn format_scalar(&self, a: &Self::Elem) -> String;

    /// A multiplier γ such that scaling a polynomial with these coefficients
    /// (`coeffs[0]` = leading) by γ yields its canonical normalization:
    /// monic over a prime field; integer, content-free, positive-leading
    /// over ℚ. `coeffs` is nonempty and `coeffs[0] ≠ 0`.
    fn canonical_scale(&self, coeffs: &[Self::Elem]) -> Self::Elem {
        self.inv(&coeffs[0]).expect("leading coefficient is nonzero")
    }

    /// The order of roots of unity this field was declared to contain.
    fn unity_order(&self) -> u64;

    /// A fixed primitive `m`-th root of unity ζ: `ζ^m = 1` and `ζ^j ≠ 1` for
    /// `0 < j < m`. Deterministic across runs (smallest residue choice).
    fn root_of_unity(&self, m: u64) -> Result<Self::Elem>;

    /// The validated spec this field was built from.
    fn spec(&self) -> FieldSpec;

    /// Short human-readable name, e.g. `QQ` or `F_1073741827`.
    fn name(&self) -> String;
}

/// The rational numbers ℚ. Roots of unity: ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() { None } else { Some(a.recip()) }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse("fraction with zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn canonical_scale(&self, coeffs: &[BigRational]) -> BigRational {
        use num_integer::Integer;
        // γ = lcm(denominators) / gcd(numerators), signed so the leading
        // coefficient comes out positive: content removal keeps Buchberger's
        // rational arithmetic bounded.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        debug_assert!(!num_gcd.is_zero());
        let mut gamma = BigRational::new(den_lcm, num_gcd);
        if (coeffs[0].numer() * gamma.numer()).is_negative() {
            gamma = -gamma;
        }
        gamma
    }

    fn coeff_display(&self, a: &BigRational) -> (bool, String) {
        let neg = a.is_negative();
        let abs = if neg { -a } else { a.clone() };
        if abs.is_integer() {
            (neg, abs.numer().to_string())
        } else {
            (neg, format!("{}/{}", abs.numer(), abs.denom()))
        }
    }

    fn format_scalar(&self, a: &BigRational) -> String {
        let (neg, s) = self.coeff_display(a);
        if neg { format!("-{s}") } else { s }
    }

    fn unity_order(&self) -> u64 {
        2
    }

    fn root_of_unity(&self, m: u64) -> Result<BigRational> {
        match m {
            1 => Ok(self.one()),
            2 => Ok(-self.one()),
            _ => Err(Error::NoRoot(format!("no primitive {m}-th root of unity in QQ"))),
        }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }

    fn name(&self) -> String {
        "QQ".into()
    }
}

/// A prime field `F_p` with `p ≡ 1 (mod unity_order)`.
///
/// Elements are residues in `[0, p)` stored as `u64`; products go through
/// `u128`, so any prime `p < 2^63` is safe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    unity_order: u64,
}

impl PrimeField {
    /// Builds and validates the field.
    pub fn new(p: u64, unity_order: u64) -> Result<Self> {
        FieldSpec::prime(p, unity_order).validate()?;
        Ok(PrimeField { p, unity_order })
    }

    /// The modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.p - a }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 { None } else { Some(self.pow(*a, self.p - 2)) }
    }

    fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = ((num % &p) + &p) % &p;
        let d = ((den % &p) + &p) % &p;
        let n: u64 = n.try_into().expect("reduced residue fits u64");
        let d: u64 = d.try_into().expect("reduced residue fits u64");
        let di = self
            .inv(&d)
            .ok_or_else(|| Error::Parse(format!("denominator vanishes mod {}", self.p)))?;
        Ok(self.mul(&n, &di))
    }

    fn coeff_display(&self, a: &u64) -> (bool, String) {
        // Balanced lift: residues above p/2 print as small negative integers,
        // so generators like b02 − b11·b03 stay readable mod p.
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }

    fn format_scalar(&self, a: &u64) -> String {
        format!("{} mod {}", a, self.p)
    }

    fn unity_order(&self) -> u64 {
        self.unity_order
    }

    fn root_of_unity(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Err(Error::NoRoot("root order must be positive".into()));
        }
        if (self.p - 1) % m != 0 {
            return Err(Error::NoRoot(format!(
                "F_{} has no primitive {m}-th root of unity",
                self.p
            )));
        }
        let prime_factors = factorize(m);
        // Smallest residue of multiplicative order exactly m; determinism
        // matters for reproducible prime enumerations.
        for a in 1..self.p {
            if self.pow(a, m) != 1 {
                continue;
            }
            if prime_factors.iter().all(|q| self.pow(a, m / q) != 1) {
                return Ok(a);
            }
        }
        unreachable!("a cyclic group of order divisible by m has an element of order m")
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::prime(self.p, self.unity_order)
    }

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// A runtime-tagged field handle, for callers (such as the CLI) that pick the
/// field from user input and then dispatch into the generic API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldHandle {
    Rationals(Rationals),
    Prime(PrimeField),
}

/// Validates `spec` and returns the corresponding field handle.
pub fn field_make(spec: &FieldSpec) -> Result<FieldHandle> {
    spec.validate()?;
    match spec.kind {
        FieldKind::Rationals => Ok(FieldHandle::Rationals(Rationals)),
        FieldKind::PrimeField => Ok(FieldHandle::Prime(PrimeField::new(
            spec.modulus.expect("validated"),
            spec.unity_order,
        )?)),
    }
}

/// `a·b mod p` through `u128`.
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// The distinct prime factors of `m`.
fn factorize(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Deterministic Miller–Rabin for `u64` (the chosen bases are exact for all
/// 64-bit integers).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let powmod = |mut base: u64, mut exp: u64| -> u64 {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, n);
            }
            base = mulmod(base, base, n);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The default verification prime: the smallest prime `p > 2^30` with
/// `p ≡ 1 (mod unity_order)`. Large characteristic keeps the characteristic
/// coprime to every degree parameter in play.
pub fn default_verification_prime(unity_order: u64) -> u64 {
    assert!(unity_order > 0);
    let floor = 1u64 << 30;
    let mut k = floor / unity_order + 1;
    loop {
        let p = unity_order * k + 1;
        if p > floor && is_prime_u64(p) {
            return p;
        }
        k += 1;
    }
}
