//! A degree-bounded linear-algebra oracle for ideal operations.
//!
//! Everything here works from the raw generators with dense exact linear
//! algebra over an explicit monomial basis — no Gröbner bases, no division.
//! An oracle element is only trusted after its cofactor certificate has been
//! re-expanded with plain polynomial arithmetic, so agreement with the
//! Gröbner-backed operations is certified in both directions:
//!
//! * every oracle element must be accepted by the Gröbner result (if the
//!   Gröbner ideal came out too small, this direction fails);
//! * every degree-bounded element of the Gröbner result must lie in the
//!   oracle's span (if the Gröbner ideal came out too big, this one fails).
//!
//! The oracle's only incompleteness is the cofactor-degree bound, so the
//! second direction retries on a short ladder of bounds before reporting a
//! disagreement.

use idealforge::groebner::reduce;
use idealforge::ideals::{monomials_up_to, Ideal};
use idealforge::poly::{Monomial, MonomialOrder, Polynomial, Ring};
use idealforge::scalars::Field;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

// ---------------------------------------------------------------------------
// Exact linear algebra
// ---------------------------------------------------------------------------

/// A vector space in reduced row-echelon form over dense coordinate vectors,
/// supporting exact span-membership tests.
pub struct VecSpace<F: Field> {
    field: F,
    width: usize,
    /// `(pivot, row)` with the pivot entry 1 and every other row zero there.
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> VecSpace<F> {
    pub fn new(field: &F, width: usize) -> Self {
        VecSpace { field: field.clone(), width, rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (p, row) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = v[*p].clone();
                for i in 0..self.width {
                    let t = f.mul(&c, &row[i]);
                    v[i] = f.sub(&v[i], &t);
                }
            }
        }
    }

    /// Adds `v` to the space; returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.width);
        let f = self.field.clone();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero leading entry");
        for c in v.iter_mut() {
            *c = f.mul(c, &inv);
        }
        // Keep the reduced-echelon invariant: clear the new pivot column
        // everywhere else, so membership tests stay single-pass.
        for (_, row) in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                for i in 0..self.width {
                    let t = f.mul(&c, &v[i]);
                    row[i] = f.sub(&row[i], &t);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|c| self.field.is_zero(c))
    }
}

/// A basis of `{x : Mx = 0}` for a dense matrix, by exact Gauss–Jordan
/// elimination.
pub fn kernel<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let nrows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = field.inv(&m[rank][col]).expect("nonzero pivot");
        for c in col..ncols {
            m[rank][c] = field.mul(&m[rank][c], &inv);
        }
        for r in 0..nrows {
            if r != rank && !field.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let t = field.mul(&factor, &m[rank][c]);
                    m[r][c] = field.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let mut is_pivot = vec![false; ncols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for fc in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[fc] = field.one();
        for &(r, pc) in &pivots {
            if !field.is_zero(&m[r][fc]) {
                v[pc] = field.neg(&m[r][fc]);
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Constraint-matrix assembly
// ---------------------------------------------------------------------------

/// Row indices keyed by `(block, monomial)`: each block is an independent
/// family of linear constraints over the same unknowns.
struct Rows<F: Field> {
    field: F,
    ncols: usize,
    index: HashMap<(u32, Monomial), usize>,
    matrix: Vec<Vec<F::Elem>>,
}

impl<F: Field> Rows<F> {
    fn new(field: &F, ncols: usize) -> Self {
        Rows { field: field.clone(), ncols, index: HashMap::new(), matrix: Vec::new() }
    }

    fn add(&mut self, block: u32, mono: &Monomial, col: usize, c: &F::Elem, negate: bool) {
        let next = self.matrix.len();
        let row = *self.index.entry((block, mono.clone())).or_insert_with(|| {
            self.matrix.push(vec![self.field.zero(); self.ncols]);
            next
        });
        let entry = &mut self.matrix[row][col];
        *entry = if negate { self.field.sub(entry, c) } else { self.field.add(entry, c) };
    }
}

/// All products `m·gᵢ` with `deg m ≤ bound`, labelled by their column index
/// offsets `base..`.
fn product_columns<F: Field>(
    gens: &[Polynomial<F>],
    cof_monos: &[Monomial],
) -> Vec<(usize, usize, Polynomial<F>)> {
    let mut cols = Vec::with_capacity(gens.len() * cof_monos.len());
    for (gi, g) in gens.iter().enumerate() {
        for (mi, m) in cof_monos.iter().enumerate() {
            cols.push((gi, mi, g.mul_monomial(m)));
        }
    }
    cols
}

/// Rebuilds the cofactors encoded in one kernel vector and re-expands them:
/// returns `(Σ cofᵢ·gᵢ, cofactors)`, exact by construction.
fn expand_combination<F: Field>(
    field: &F,
    ring: &Ring,
    gens: &[Polynomial<F>],
    cof_monos: &[Monomial],
    coords: &[F::Elem],
) -> (Polynomial<F>, Vec<Polynomial<F>>) {
    let mut total = Polynomial::zero(field, ring);
    let mut cofactors = Vec::with_capacity(gens.len());
    for (gi, g) in gens.iter().enumerate() {
        let terms: Vec<(Monomial, F::Elem)> = cof_monos
            .iter()
            .enumerate()
            .map(|(mi, m)| (m.clone(), coords[gi * cof_monos.len() + mi].clone()))
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        let cof = Polynomial::from_terms(field, ring, ORDER, terms);
        total = total.add(&cof.mul(g).expect("same ring")).expect("same ring");
        cofactors.push(cof);
    }
    (total, cofactors)
}

/// The coordinate vector of `f` over `monos` (which must cover its support).
fn coord_vec<F: Field>(f: &Polynomial<F>, index: &HashMap<Monomial, usize>, width: usize) -> Vec<F::Elem> {
    let field = f.field();
    let mut v = vec![field.zero(); width];
    for (m, c) in f.terms() {
        let i = *index.get(m).unwrap_or_else(|| panic!("monomial {m:?} outside the basis"));
        v[i] = c.clone();
    }
    v
}

// ---------------------------------------------------------------------------
// The oracle spaces
// ---------------------------------------------------------------------------

/// All elements of the target space of degree ≤ `cap`, as polynomials plus
/// their echelonized coordinate span over the degree-≤-`cap` monomials.
pub struct OracleSpace<F: Field> {
    pub basis: Vec<Polynomial<F>>,
    pub span: VecSpace<F>,
}

fn fresh_space<F: Field>(field: &F, width: usize) -> OracleSpace<F> {
    OracleSpace { basis: Vec::new(), span: VecSpace::new(field, width) }
}

/// `{f : deg f ≤ cap, f ∈ A ∩ B}` with cofactors of degree ≤ `bound` on both
/// sides. Every element is certified by arithmetic: its A-combination and
/// B-combination are expanded and compared.
pub fn intersection_oracle<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    cap: u32,
    bound: u32,
    cap_index: &HashMap<Monomial, usize>,
) -> OracleSpace<F> {
    let field = a.field();
    let ring = a.ring();
    let cof = monomials_up_to(ring.nvars(), bound);
    let a_cols = product_columns(a.generators(), &cof);
    let b_cols = product_columns(b.generators(), &cof);
    let na = a_cols.len();
    let ncols = na + b_cols.len();

    // Block 0: the A-combination minus the B-combination vanishes.
    // Block 1: the A-combination (= the candidate f) has no monomial of
    // degree > cap.
    let mut rows = Rows::new(field, ncols);
    for (j, (_, _, p)) in a_cols.iter().enumerate() {
        for (m, c) in p.terms() {
            rows.add(0, m, j, c, false);
            if m.degree() > cap {
                rows.add(1, m, j, c, false);
            }
        }
    }
    for (j, (_, _, p)) in b_cols.iter().enumerate() {
        for (m, c) in p.terms() {
            rows.add(0, m, na + j, c, true);
        }
    }

    let mut out = fresh_space(field, cap_index.len());
    for v in kernel(field, rows.matrix, ncols) {
        let (fa, _) = expand_combination(field, ring, a.generators(), &cof, &v[..na]);
        let (fb, _) = expand_combination(field, ring, b.generators(), &cof, &v[na..]);
        assert_eq!(fa, fb, "oracle certificate must expand identically on both sides");
        if fa.is_zero() {
            continue;
        }
        assert!(fa.total_degree() <= cap as i64, "degree cap must be enforced by the rows");
        let coords = coord_vec(&fa, cap_index, cap_index.len());
        if out.span.insert(coords) {
            out.basis.push(fa);
        }
    }
    out
}

/// `{f : deg f ≤ cap, f·bⱼ ∈ A for every j}` with A-cofactors of degree
/// ≤ `bound`; each element is certified by re-expanding every `f·bⱼ`.
pub fn quotient_oracle<F: Field>(
    a: &Ideal<F>,
    b: &Ideal<F>,
    cap: u32,
    bound: u32,
    cap_monos: &[Monomial],
    cap_index: &HashMap<Monomial, usize>,
) -> OracleSpace<F> {
    let field = a.field();
    let ring = a.ring();
    let cof = monomials_up_to(ring.nvars(), bound);
    let a_cols = product_columns(a.generators(), &cof);
    let nf = cap_monos.len();
    let nb = b.generators().len();
    let ncols = nf + nb * a_cols.len();

    // Block j: f·bⱼ minus the j-th A-combination vanishes.
    let mut rows = Rows::new(field, ncols);
    for (j, bj) in b.generators().iter().enumerate() {
        for (k, mono) in cap_monos.iter().enumerate() {
            for (m, c) in bj.mul_monomial(mono).terms() {
                rows.add(j as u32, m, k, c, false);
            }
        }
        let base = nf + j * a_cols.len();
        for (t, (_, _, p)) in a_cols.iter().enumerate() {
            for (m, c) in p.terms() {
                rows.add(j as u32, m, base + t, c, true);
            }
        }
    }

    let mut out = fresh_space(field, cap_index.len());
    for v in kernel(field, rows.matrix, ncols) {
        let terms: Vec<(Monomial, F::Elem)> = cap_monos
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), v[k].clone()))
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        let f = Polynomial::from_terms(field, ring, ORDER, terms);
        if f.is_zero() {
            continue;
        }
        for (j, bj) in b.generators().iter().enumerate() {
            let base = nf + j * a_cols.len();
            let (aj, _) = expand_combination(
                field,
                ring,
                a.generators(),
                &cof,
                &v[base..base + a_cols.len()],
            );
            let fbj = f.mul(bj).expect("same ring");
            assert_eq!(fbj, aj, "f·b_{j} must re-expand from the A-cofactors");
        }
        let coords = coord_vec(&f, cap_index, cap_index.len());
        if out.span.insert(coords) {
            out.basis.push(f);
        }
    }
    out
}

/// `{f : deg f ≤ cap, f ∈ A, f free of the eliminated variable}` with
/// cofactors of degree ≤ `bound`, certified by re-expansion.
pub fn elimination_oracle<F: Field>(
    a: &Ideal<F>,
    kill: usize,
    cap: u32,
    bound: u32,
    cap_index: &HashMap<Monomial, usize>,
) -> OracleSpace<F> {
    let field = a.field();
    let ring = a.ring();
    let cof = monomials_up_to(ring.nvars(), bound);
    let a_cols = product_columns(a.generators(), &cof);
    let ncols = a_cols.len();

    // Every monomial that mentions the eliminated variable, or that exceeds
    // the cap, must cancel.
    let mut rows = Rows::new(field, ncols);
    for (j, (_, _, p)) in a_cols.iter().enumerate() {
        for (m, c) in p.terms() {
            if m.exp(kill) > 0 || m.degree() > cap {
                rows.add(0, m, j, c, false);
            }
        }
    }

    let mut out = fresh_space(field, cap_index.len());
    for v in kernel(field, rows.matrix, ncols) {
        let (f, _) = expand_combination(field, ring, a.generators(), &cof, &v);
        if f.is_zero() {
            continue;
        }
        assert!(!f.uses_var(kill), "elimination rows must kill the variable");
        assert!(f.total_degree() <= cap as i64);
        let coords = coord_vec(&f, cap_index, cap_index.len());
        if out.span.insert(coords) {
            out.basis.push(f);
        }
    }
    out
}

/// A basis of `{f ∈ span(monos) : f ∈ I}`, computed from the reduced Gröbner
/// basis: the kernel of the (linear) normal-form map. Each element is
/// double-checked with an independent membership call.
pub fn gb_truncation<F: Field>(idl: &Ideal<F>, monos: &[Monomial]) -> Vec<Polynomial<F>> {
    let field = idl.field();
    let ring = idl.ring();
    let gb = idl.gb(ORDER).expect("Gröbner basis");
    let mut rows = Rows::new(field, monos.len());
    for (k, mono) in monos.iter().enumerate() {
        let one = Polynomial::one(field, ring);
        let (nf, _) = reduce(&one.mul_monomial(mono), &gb.basis, ORDER).expect("reduce");
        for (m, c) in nf.terms() {
            rows.add(0, m, k, c, false);
        }
    }
    let mut out = Vec::new();
    for v in kernel(field, rows.matrix, monos.len()) {
        let terms: Vec<(Monomial, F::Elem)> = monos
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), v[k].clone()))
            .filter(|(_, c)| !field.is_zero(c))
            .collect();
        let f = Polynomial::from_terms(field, ring, ORDER, terms);
        if f.is_zero() {
            continue;
        }
        assert!(idl.contains(&f).expect("membership"), "normal-form kernel element must be a member");
        out.push(f);
    }
    out
}

// ---------------------------------------------------------------------------
// The equivalence checks
// ---------------------------------------------------------------------------

const BOUNDS: [u32; 3] = [6, 9, 12];

/// Both directions of the intersection comparison at degree ≤ `cap`; the
/// cofactor bound climbs the ladder when the oracle span is too shallow.
pub fn check_intersection<F: Field>(a: &Ideal<F>, b: &Ideal<F>, cap: u32) -> Result<u32, String> {
    let gb_result = a.intersect(b).map_err(|e| format!("intersect: {e}"))?;
    let cap_monos = monomials_up_to(a.ring().nvars(), cap);
    let cap_index: HashMap<Monomial, usize> =
        cap_monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let truncation = gb_truncation(&gb_result, &cap_monos);
    let mut last = String::new();
    for bound in BOUNDS {
        let oracle = intersection_oracle(a, b, cap, bound, &cap_index);
        for f in &oracle.basis {
            if !gb_result.contains(f).map_err(|e| format!("contains: {e}"))? {
                return Err(format!(
                    "Gröbner intersection rejects a certified common element: {f}"
                ));
            }
        }
        match truncation
            .iter()
            .find(|t| !oracle.span.contains(&coord_vec(t, &cap_index, cap_monos.len())))
        {
            None => return Ok(bound),
            Some(t) => {
                last = format!(
                    "Gröbner intersection element {t} is outside the oracle span at \
                     cofactor bound {bound}"
                );
            }
        }
    }
    Err(last)
}

/// Both directions of the colon comparison at degree ≤ `cap`.
pub fn check_quotient<F: Field>(a: &Ideal<F>, b: &Ideal<F>, cap: u32) -> Result<u32, String> {
    let gb_result = a.quotient(b).map_err(|e| format!("quotient: {e}"))?;
    let cap_monos = monomials_up_to(a.ring().nvars(), cap);
    let cap_index: HashMap<Monomial, usize> =
        cap_monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let truncation = gb_truncation(&gb_result, &cap_monos);
    let mut last = String::new();
    for bound in BOUNDS {
        let oracle = quotient_oracle(a, b, cap, bound, &cap_monos, &cap_index);
        for f in &oracle.basis {
            if !gb_result.contains(f).map_err(|e| format!("contains: {e}"))? {
                return Err(format!(
                    "Gröbner colon rejects an element whose products all re-expand in A: {f}"
                ));
            }
        }
        match truncation
            .iter()
            .find(|t| !oracle.span.contains(&coord_vec(t, &cap_index, cap_monos.len())))
        {
            None => return Ok(bound),
            Some(t) => {
                last = format!(
                    "Gröbner colon element {t} is outside the oracle span at cofactor \
                     bound {bound}"
                );
            }
        }
    }
    Err(last)
}

/// Both directions of the elimination comparison at degree ≤ `cap`, over the
/// monomials free of the eliminated variable.
pub fn check_elimination<F: Field>(a: &Ideal<F>, var: &str, cap: u32) -> Result<u32, String> {
    let gb_result = a.eliminate(&[var]).map_err(|e| format!("eliminate: {e}"))?;
    let kill = a.ring().var_index(var).expect("variable exists");
    let cap_monos: Vec<Monomial> = monomials_up_to(a.ring().nvars(), cap)
        .into_iter()
        .filter(|m| m.exp(kill) == 0)
        .collect();
    let cap_index: HashMap<Monomial, usize> =
        cap_monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    for g in gb_result.generators() {
        if g.uses_var(kill) {
            return Err(format!("eliminate left {var} in generator {g}"));
        }
    }
    let truncation = gb_truncation(&gb_result, &cap_monos);
    let mut last = String::new();
    for bound in BOUNDS {
        let oracle = elimination_oracle(a, kill, cap, bound, &cap_index);
        for f in &oracle.basis {
            if !gb_result.contains(f).map_err(|e| format!("contains: {e}"))? {
                return Err(format!(
                    "Gröbner elimination rejects a certified {var}-free element: {f}"
                ));
            }
        }
        match truncation
            .iter()
            .find(|t| !oracle.span.contains(&coord_vec(t, &cap_index, cap_monos.len())))
        {
            None => return Ok(bound),
            Some(t) => {
                last = format!(
                    "Gröbner elimination element {t} is outside the oracle span at \
                     cofactor bound {bound}"
                );
            }
        }
    }
    Err(last)
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// A random nonzero polynomial of total degree ≤ 2 with small coefficients.
pub fn random_poly<F: Field>(field: &F, ring: &Ring, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let pool = monomials_up_to(ring.nvars(), 2);
    loop {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let m = pool[rng.gen_range(0..pool.len())].clone();
            let c = field.from_i64(rng.gen_range(-5..=5));
            terms.push((m, c));
        }
        let p = Polynomial::from_terms(field, ring, ORDER, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random two-generator ideal with generators of total degree ≤ 2.
pub fn random_ideal<F: Field>(field: &F, ring: &Ring, rng: &mut ChaCha8Rng) -> Ideal<F> {
    let gens = vec![random_poly(field, ring, rng), random_poly(field, ring, rng)];
    Ideal::new(field, ring, gens).expect("nonzero generators in one ring")
}

/// Statistics from a full oracle-equivalence run.
pub struct OracleStats {
    pub instances: u32,
    pub checks: u32,
    pub max_bound: u32,
}

/// Runs `instances` random triples of checks and returns summary statistics;
/// any disagreement aborts with the offending instance spelled out.
pub fn run_oracle_suite<F: Field>(
    field: &F,
    ring: &Ring,
    instances: u32,
    cap: u32,
    seed: u64,
) -> Result<OracleStats, String> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = OracleStats { instances, checks: 0, max_bound: 0 };
    for i in 0..instances {
        let a = random_ideal(field, ring, &mut rng);
        let b = random_ideal(field, ring, &mut rng);
        let var = ring.var_name((i as usize) % ring.nvars()).to_string();
        let describe = |what: &str, err: String| {
            format!(
                "instance {i} ({what}): {err}\n  A = {}\n  B = {}",
                a.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
                b.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
            )
        };
        for (what, outcome) in [
            ("intersection", check_intersection(&a, &b, cap)),
            ("colon", check_quotient(&a, &b, cap)),
            ("elimination", check_elimination(&a, &var, cap)),
        ] {
            let bound = outcome.map_err(|e| describe(what, e))?;
            stats.checks += 1;
            stats.max_bound = stats.max_bound.max(bound);
        }
    }
    Ok(stats)
}
