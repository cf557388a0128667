//! Groebner bases, normal forms, and ideal arithmetic.
//!
//! One engine serves every ideal computation in the crate. Ideals of a
//! quotient ring are represented by generator lists in the ambient
//! polynomial ring; the defining ideal is adjoined whenever a basis is
//! computed, so membership, equality, and the lattice operations all
//! reduce to ambient-ring questions.
//!
//! Bases are always fully reduced (monic, every term of every element
//! irreducible by the others) and sorted by descending leading
//! monomial. A reduced basis is a canonical form of the ideal, so
//! equality of ideals is structural equality of bases.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    format_polynomial, parse_polynomial, Monomial, MonomialOrder, Polynomial, Rational, Term,
};
use crate::error::{Error, Result};

/// Engine-internal polynomial: nonempty terms sorted strictly
/// descending under the working order.
type EPoly = Vec<Term>;

/// The positive scalar that sends these coefficients to coprime
/// integers: lcm of denominators over gcd of scaled numerators.
fn content_factor<'a, I: Iterator<Item = &'a Term>>(terms: I) -> Rational {
    let mut denom_lcm = BigInt::one();
    let mut numers: Vec<(BigInt, BigInt)> = Vec::new();
    for (_, c) in terms {
        denom_lcm = denom_lcm.lcm(c.denom());
        numers.push((c.numer().clone(), c.denom().clone()));
    }
    let mut numer_gcd = BigInt::zero();
    for (n, d) in &numers {
        numer_gcd = numer_gcd.gcd(&(n * &denom_lcm / d));
        if numer_gcd.is_one() {
            break;
        }
    }
    if numer_gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(denom_lcm, numer_gcd)
}

struct Engine {
    order: MonomialOrder,
    nvars: usize,
}

impl Engine {
    fn from_poly(&self, p: &Polynomial) -> EPoly {
        let mut terms: EPoly = p.terms().to_vec();
        if self.order != MonomialOrder::GrevLex {
            terms.sort_by(|(a, _), (b, _)| self.order.cmp(b, a));
        }
        terms
    }

    fn to_poly(&self, ep: EPoly) -> Polynomial {
        Polynomial::from_terms(self.nvars, ep)
    }

    /// a - c * m * b, both operands sorted; single merge pass.
    fn sub_scaled(&self, a: &EPoly, b: &EPoly, c: &Rational, m: &Monomial) -> EPoly {
        let mut out: EPoly = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match self.order.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, -(c * &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &a[i].1 - c * &b[j].1;
                    if !coeff.is_zero() {
                        out.push((bm, coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        while j < b.len() {
            out.push((b[j].0.mul(m), -(c * &b[j].1)));
            j += 1;
        }
        out
    }

    /// Full normal form: every term of the result is irreducible by
    /// the leading monomials of `basis`. Reducers are tried in the
    /// order given by `scan`, which must index into `basis`; the
    /// result is independent of that order exactly when `basis` is a
    /// Groebner basis.
    fn normal_form_scan(&self, f: &EPoly, basis: &[EPoly], scan: &[usize]) -> EPoly {
        let mut rest: EPoly = f.clone();
        let mut done: EPoly = Vec::new();
        'next: while !rest.is_empty() {
            let (lm, lc) = (&rest[0].0, &rest[0].1);
            for &k in scan {
                let b = &basis[k];
                let (bm, bc) = &b[0];
                if bm.divides(lm) {
                    let q = bm.quotient_into(lm);
                    let scale = lc / bc;
                    rest = self.sub_scaled(&rest, b, &scale, &q);
                    continue 'next;
                }
            }
            done.push(rest.remove(0));
        }
        done
    }

    fn normal_form(&self, f: &EPoly, basis: &[EPoly]) -> EPoly {
        let scan: Vec<usize> = (0..basis.len()).collect();
        self.normal_form_scan(f, basis, &scan)
    }

    /// Normal form up to a scalar: same reduction loop, but the
    /// working polynomial is rescaled to integer content every few
    /// steps. Exact rational chains otherwise grow the coefficients
    /// exponentially on high-degree inputs; basis construction only
    /// needs the result's ray, so the rescaling is free.
    fn normal_form_up_to_scalar(&self, f: &EPoly, basis: &[EPoly]) -> EPoly {
        let mut rest: EPoly = f.clone();
        let mut done: EPoly = Vec::new();
        let mut steps = 0usize;
        'next: while !rest.is_empty() {
            let (lm, lc) = (&rest[0].0, &rest[0].1);
            for b in basis {
                let (bm, bc) = &b[0];
                if bm.divides(lm) {
                    let q = bm.quotient_into(lm);
                    let scale = lc / bc;
                    rest = self.sub_scaled(&rest, b, &scale, &q);
                    steps += 1;
                    if steps % 8 == 0 {
                        let factor = content_factor(done.iter().chain(rest.iter()));
                        for (_, c) in done.iter_mut().chain(rest.iter_mut()) {
                            *c = &*c * &factor;
                        }
                    }
                    continue 'next;
                }
            }
            done.push(rest.remove(0));
        }
        done
    }

    fn s_poly(&self, f: &EPoly, g: &EPoly) -> EPoly {
        let (fm, fc) = &f[0];
        let (gm, gc) = &g[0];
        let l = fm.lcm(gm);
        let a = self.sub_scaled(
            &Vec::new(),
            f,
            &(-(Rational::one() / fc)),
            &fm.quotient_into(&l),
        );
        self.sub_scaled(&a, g, &(Rational::one() / gc), &gm.quotient_into(&l))
    }

    /// Scales to coprime integer coefficients with positive lead; a
    /// canonical representative of the scalar ray through the
    /// polynomial, which also keeps coefficient growth in check.
    fn primitive(&self, ep: &mut EPoly) {
        if ep.is_empty() {
            return;
        }
        let mut factor = content_factor(ep.iter());
        if ep[0].1.is_negative() {
            factor = -factor;
        }
        for (_, c) in ep.iter_mut() {
            *c = &*c * &factor;
        }
    }

    fn monic(&self, ep: &mut EPoly) {
        if let Some((_, lc)) = ep.first() {
            let inv = Rational::one() / lc;
            for (_, c) in ep.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }

    /// Repeatedly replaces each element by its normal form against
    /// the others until nothing changes. Drops zeros and duplicates.
    fn interreduce(&self, mut basis: Vec<EPoly>) -> Vec<EPoly> {
        basis.retain(|e| !e.is_empty());
        for e in basis.iter_mut() {
            self.primitive(e);
        }
        basis.sort_by(|a, b| self.cmp_epoly(a, b));
        basis.dedup();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < basis.len() {
                let f = basis.remove(i);
                let mut h = self.normal_form_up_to_scalar(&f, &basis);
                self.primitive(&mut h);
                if h.is_empty() {
                    changed = true;
                    continue;
                }
                if h != f {
                    changed = true;
                }
                basis.insert(i, h);
                i += 1;
            }
            if !changed {
                return basis;
            }
        }
    }

    fn cmp_epoly(&self, a: &EPoly, b: &EPoly) -> Ordering {
        for ((ma, ca), (mb, cb)) in a.iter().zip(b.iter()) {
            match self.order.cmp(ma, mb).then_with(|| ca.cmp(cb)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        a.len().cmp(&b.len())
    }

    /// Buchberger's algorithm with sugar-degree selection and the
    /// Gebauer-Moeller pair update, followed by full reduction of the
    /// result. The update prunes pairs whose s-polynomials are known
    /// to reduce to zero (coprime leads, lcm chains); any basis that
    /// survives the loop satisfies the full S-polynomial criterion.
    fn buchberger(&self, gens: Vec<EPoly>) -> Vec<EPoly> {
        let mut basis = self.interreduce(gens);
        if basis.iter().any(|e| e[0].0.is_one()) {
            let mut one = vec![(Monomial::one(self.nvars), Rational::one())];
            self.primitive(&mut one);
            return vec![one];
        }

        // Pending pairs keyed by (sugar, lcm degree, lcm, i, j): the
        // BTreeSet pop order makes the selection deterministic.
        type PairKey = (u64, u64, Monomial, usize, usize);
        let mut pending: BTreeSet<PairKey> = BTreeSet::new();
        let mut sugars: Vec<u64> = basis.iter().map(|e| e[0].0.degree()).collect();

        let pair_key = |basis: &[EPoly], sugars: &[u64], i: usize, t: usize| -> PairKey {
            let (li, lt) = (&basis[i][0].0, &basis[t][0].0);
            let l = li.lcm(lt);
            let sugar = (sugars[i] + l.degree() - li.degree())
                .max(sugars[t] + l.degree() - lt.degree());
            (sugar, l.degree(), l, i, t)
        };

        // Gebauer-Moeller update for a newly appended element t:
        // prune the old pair list, then winnow the new pairs.
        let update = |basis: &[EPoly],
                      sugars: &[u64],
                      pending: &mut BTreeSet<PairKey>,
                      t: usize| {
            let lt = &basis[t][0].0;
            // Old pairs whose lcm the new lead properly refines are
            // superseded by the pairs through t.
            let stale: Vec<PairKey> = pending
                .iter()
                .filter(|(_, _, l, i, j)| {
                    lt.divides(l)
                        && basis[*i][0].0.lcm(lt) != *l
                        && basis[*j][0].0.lcm(lt) != *l
                })
                .cloned()
                .collect();
            for key in stale {
                pending.remove(&key);
            }

            // New pairs, minimal lcms only: drop any whose lcm is
            // properly divided by another new pair's lcm.
            let lcms: Vec<Monomial> = (0..t).map(|i| basis[i][0].0.lcm(lt)).collect();
            let mut keep: Vec<usize> = Vec::new();
            'cand: for i in 0..t {
                for k in 0..t {
                    if lcms[k] != lcms[i] && lcms[k].divides(&lcms[i]) {
                        continue 'cand;
                    }
                }
                keep.push(i);
            }
            // Equal lcms collapse to one representative, and a class
            // containing a coprime-lead pair reduces to zero outright.
            let mut by_lcm: Vec<(Monomial, Vec<usize>)> = Vec::new();
            for i in keep {
                match by_lcm.iter_mut().find(|(l, _)| *l == lcms[i]) {
                    Some((_, class)) => class.push(i),
                    None => by_lcm.push((lcms[i].clone(), vec![i])),
                }
            }
            for (_, class) in by_lcm {
                if class.iter().any(|&i| basis[i][0].0.coprime(lt)) {
                    continue;
                }
                pending.insert(pair_key(basis, sugars, class[0], t));
            }
        };

        for t in 1..basis.len() {
            update(&basis, &sugars, &mut pending, t);
        }

        while let Some(key) = pending.pop_first() {
            let (pair_sugar, _, _, i, j) = key;
            let mut s = self.s_poly(&basis[i], &basis[j]);
            self.primitive(&mut s);
            let mut h = self.normal_form_up_to_scalar(&s, &basis);
            if h.is_empty() {
                continue;
            }
            self.primitive(&mut h);
            if h[0].0.is_one() {
                return vec![h];
            }
            basis.push(h);
            sugars.push(pair_sugar.max(basis.last().unwrap()[0].0.degree()));
            let t = basis.len() - 1;
            update(&basis, &sugars, &mut pending, t);
        }

        // Minimalize: scanning by ascending lead, a proper divisor
        // always precedes its multiples in any monomial order.
        basis.sort_by(|a, b| self.cmp_epoly(a, b));
        let mut minimal: Vec<EPoly> = Vec::new();
        for e in basis {
            if !minimal.iter().any(|m| m[0].0.divides(&e[0].0)) {
                minimal.push(e);
            }
        }
        // Reduce: tails rewritten against the full minimal set.
        let reduced: Vec<EPoly> = (0..minimal.len())
            .map(|i| {
                let others: Vec<EPoly> = minimal
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, e)| e.clone())
                    .collect();
                let mut h = self.normal_form(&minimal[i], &others);
                self.monic(&mut h);
                h
            })
            .collect();
        let mut reduced = reduced;
        reduced.sort_by(|a, b| self.order.cmp(&b[0].0, &a[0].0));
        reduced
    }
}

/// A fully reduced Groebner basis: monic elements, mutually
/// irreducible, sorted by descending leading monomial. Canonical for
/// the ideal and the order, so two ideals are equal exactly when
/// their bases compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    polys: Vec<Polynomial>,
}

pub fn groebner_basis(nvars: usize, gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let engine = Engine { order, nvars };
    let egens: Vec<EPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| engine.from_poly(p))
        .collect();
    let basis = engine.buchberger(egens);
    GroebnerBasis {
        order,
        nvars,
        polys: basis.into_iter().map(|e| engine.to_poly(e)).collect(),
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Basis elements, descending by leading monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    fn engine(&self) -> Engine {
        Engine { order: self.order, nvars: self.nvars }
    }

    fn engine_polys(&self, engine: &Engine) -> Vec<EPoly> {
        self.polys.iter().map(|p| engine.from_poly(p)).collect()
    }

    /// The unique remainder of `f` modulo the ideal: no term is
    /// divisible by any basis leading monomial, and `f` minus the
    /// result lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let engine = self.engine();
        let basis = self.engine_polys(&engine);
        let nf = engine.normal_form(&engine.from_poly(f), &basis);
        engine.to_poly(nf)
    }

    /// Normal form computed with reducers tried in the order given by
    /// `scan` (a permutation of basis indices). For a reduced basis
    /// the result never depends on the permutation.
    pub fn normal_form_permuted(&self, f: &Polynomial, scan: &[usize]) -> Polynomial {
        assert_eq!(scan.len(), self.polys.len());
        let engine = self.engine();
        let basis = self.engine_polys(&engine);
        let nf = engine.normal_form_scan(&engine.from_poly(f), &basis, scan);
        engine.to_poly(nf)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Buchberger's criterion, verified directly: every s-polynomial
    /// of basis elements reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let engine = self.engine();
        let basis = self.engine_polys(&engine);
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let s = engine.s_poly(&basis[i], &basis[j]);
                if !engine.normal_form(&s, &basis).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// The coordinate ring of an affine variety: named variables and a
/// proper defining ideal of relations.
#[derive(Debug)]
pub struct QuotientRing {
    vars: Vec<String>,
    defining_raw: Vec<Polynomial>,
    defining: GroebnerBasis,
}

pub fn quotient_ring(vars: Vec<String>, defining: Vec<Polynomial>) -> Result<Arc<QuotientRing>> {
    let mut seen = BTreeSet::new();
    for v in &vars {
        if !seen.insert(v.clone()) {
            return Err(Error::DuplicateVariable { name: v.clone() });
        }
    }
    let nvars = vars.len();
    for p in &defining {
        if p.nvars() != nvars {
            return Err(Error::Invalid("defining polynomial has wrong variable count".into()));
        }
    }
    let gb = groebner_basis(nvars, &defining, MonomialOrder::GrevLex);
    if gb.is_unit() {
        return Err(Error::UnitDefiningIdeal);
    }
    Ok(Arc::new(QuotientRing { vars, defining_raw: defining, defining: gb }))
}

impl QuotientRing {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn defining_generators(&self) -> &[Polynomial] {
        &self.defining_raw
    }

    pub fn defining_basis(&self) -> &GroebnerBasis {
        &self.defining
    }

    /// Canonical representative of the residue class of `f`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.defining.normal_form(f)
    }

    pub fn is_zero_mod(&self, f: &Polynomial) -> bool {
        self.defining.contains(f)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.vars)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, &self.vars)
    }

    /// Structural identity: same variables and same defining ideal.
    pub fn same_ring(&self, other: &QuotientRing) -> bool {
        self.vars == other.vars && self.defining.polys() == other.defining.polys()
    }
}

/// An ideal of a quotient ring, held as the generator list the caller
/// supplied (in the ambient ring) plus a lazily computed basis of the
/// generators together with the defining relations.
#[derive(Clone, Debug)]
pub struct IdealHandle {
    ring: Arc<QuotientRing>,
    raw: Vec<Polynomial>,
    cache: Arc<OnceLock<GroebnerBasis>>,
}

impl IdealHandle {
    pub fn new(ring: Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        for g in &gens {
            if g.nvars() != ring.nvars() {
                return Err(Error::Invalid("generator has wrong variable count".into()));
            }
        }
        Ok(IdealHandle { ring, raw: gens, cache: Arc::new(OnceLock::new()) })
    }

    pub fn unit(ring: Arc<QuotientRing>) -> IdealHandle {
        let one = Polynomial::one(ring.nvars());
        IdealHandle { ring, raw: vec![one], cache: Arc::new(OnceLock::new()) }
    }

    pub fn zero(ring: Arc<QuotientRing>) -> IdealHandle {
        IdealHandle { ring, raw: Vec::new(), cache: Arc::new(OnceLock::new()) }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    /// The generator sequence exactly as supplied, order and
    /// multiplicity included.
    pub fn raw_generators(&self) -> &[Polynomial] {
        &self.raw
    }

    /// Reduced basis of the generators plus the defining relations.
    pub fn basis(&self) -> &GroebnerBasis {
        self.cache.get_or_init(|| {
            let mut gens = self.raw.clone();
            gens.extend(self.ring.defining_generators().iter().cloned());
            groebner_basis(self.ring.nvars(), &gens, MonomialOrder::GrevLex)
        })
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.basis().contains(f)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis().is_unit()
    }

    /// True when every generator is a relation, i.e. the ideal is
    /// zero in the quotient ring.
    pub fn is_zero_ideal(&self) -> bool {
        self.basis().polys() == self.ring.defining_basis().polys()
    }

    /// A small generating set modulo the relations: the basis
    /// elements that do not already lie in the defining ideal.
    /// Products and powers built from these generate the same ideal
    /// as ones built from the raw list.
    pub fn small_generators(&self) -> Vec<Polynomial> {
        self.basis()
            .polys()
            .iter()
            .filter(|g| !self.ring.is_zero_mod(g))
            .cloned()
            .collect()
    }
}

fn require_same_ring(a: &IdealHandle, b: &IdealHandle) -> Result<Arc<QuotientRing>> {
    if !a.ring.same_ring(&b.ring) {
        return Err(Error::ContextMismatch);
    }
    Ok(a.ring.clone())
}

/// Sum: generator lists concatenated, order preserved.
pub fn ideal_sum(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    let ring = require_same_ring(a, b)?;
    let mut gens = a.raw.clone();
    gens.extend(b.raw.iter().cloned());
    IdealHandle::new(ring, gens)
}

/// Product: pairwise products of small generating sets, reduced
/// modulo the relations.
pub fn ideal_product(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    let ring = require_same_ring(a, b)?;
    let ga = a.small_generators();
    let gb = b.small_generators();
    let mut gens = Vec::with_capacity(ga.len() * gb.len());
    for x in &ga {
        for y in &gb {
            let p = ring.reduce(&x.mul(y));
            if !p.is_zero() {
                gens.push(p);
            }
        }
    }
    IdealHandle::new(ring, gens)
}

/// Power by multiset products of the small generating set; the zeroth
/// power is the unit ideal.
pub fn ideal_power(a: &IdealHandle, k: u32) -> IdealHandle {
    let ring = a.ring.clone();
    if k == 0 {
        return IdealHandle::unit(ring);
    }
    let gens = a.small_generators();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, Polynomial)> = vec![(0, k, Polynomial::one(ring.nvars()))];
    while let Some((start, left, acc)) = stack.pop() {
        if left == 0 {
            let p = ring.reduce(&acc);
            if !p.is_zero() {
                out.push(p);
            }
            continue;
        }
        // Descending index so products pop in lexicographic order of
        // the chosen multiset.
        for i in (start..gens.len()).rev() {
            stack.push((i, left - 1, acc.mul(&gens[i])));
        }
    }
    IdealHandle { ring, raw: out, cache: Arc::new(OnceLock::new()) }
}

/// Ambient-ring intersection by the auxiliary-variable construction:
/// t*A + (1-t)*B in one more variable, then the generators free of t
/// under an elimination order.
fn intersect_ambient(
    nvars: usize,
    gens_a: &[Polynomial],
    gens_b: &[Polynomial],
) -> Vec<Polynomial> {
    let lift = |p: &Polynomial, with_t: bool| -> Polynomial {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut exps = Vec::with_capacity(nvars + 1);
                exps.push(if with_t { 1 } else { 0 });
                exps.extend_from_slice(m.exps());
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(nvars + 1, terms)
    };
    let mut gens = Vec::with_capacity(gens_a.len() + gens_b.len());
    for g in gens_a {
        gens.push(lift(g, true));
    }
    for g in gens_b {
        // (1 - t) * g = g - t*g
        gens.push(lift(g, false).sub(&lift(g, true)));
    }
    let gb = groebner_basis(nvars + 1, &gens, MonomialOrder::Elimination(1));
    gb.polys()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exps()[0] == 0))
        .map(|p| {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::new(m.exps()[1..].to_vec()), c.clone()))
                .collect();
            Polynomial::from_terms(nvars, terms)
        })
        .collect()
}

pub fn ideal_intersect(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    let ring = require_same_ring(a, b)?;
    let gens = intersect_ambient(ring.nvars(), a.basis().polys(), b.basis().polys());
    IdealHandle::new(ring, gens)
}

/// Exact single-divisor division; the divisor must divide without
/// remainder.
fn divide_exact(f: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    let engine = Engine { order: MonomialOrder::GrevLex, nvars: f.nvars() };
    let div = engine.from_poly(d);
    let (dm, dc) = div[0].clone();
    let mut rest = engine.from_poly(f);
    let mut quot: EPoly = Vec::new();
    while let Some((lm, lc)) = rest.first().cloned() {
        if !dm.divides(&lm) {
            return Err(Error::Invalid("inexact division".into()));
        }
        let qm = dm.quotient_into(&lm);
        let qc = &lc / &dc;
        rest = engine.sub_scaled(&rest, &div, &qc, &qm);
        quot.push((qm, qc));
    }
    Ok(Polynomial::from_terms(f.nvars(), quot))
}

/// Colon ideal (a : b): all f with f*b inside a. Computed per
/// divisor as (a intersect (d)) scaled by 1/d, then intersected over
/// the divisors. The colon depends only on the ideal b generates, so
/// the divisors come from its reduced basis: that keeps the divisor
/// count minimal even when b was presented with many redundant
/// generators. Quotients by the zero ideal are refused.
pub fn ideal_quotient(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    let ring = require_same_ring(a, b)?;
    let mut acc: Option<IdealHandle> = None;
    for d in b.small_generators() {
        let meet = intersect_ambient(ring.nvars(), a.basis().polys(), &[d.clone()]);
        let gens: Result<Vec<Polynomial>> = meet.iter().map(|g| divide_exact(g, &d)).collect();
        let q = IdealHandle::new(ring.clone(), gens?)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => ideal_intersect(&prev, &q)?,
        });
    }
    acc.ok_or(Error::ZeroDivisorIdeal)
}

/// The ideal scaled by one ring element: f times every generator.
pub fn scale_ideal(h: &IdealHandle, f: &Polynomial) -> Result<IdealHandle> {
    let ring = h.ring().clone();
    let gens = h
        .small_generators()
        .iter()
        .map(|g| ring.reduce(&g.mul(f)))
        .filter(|g| !g.is_zero())
        .collect();
    IdealHandle::new(ring, gens)
}

pub fn ideal_equal(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    require_same_ring(a, b)?;
    Ok(a.basis().polys() == b.basis().polys())
}

/// True when every generator of `a` lies in `b`.
pub fn ideal_subset(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    require_same_ring(a, b)?;
    Ok(a.raw.iter().all(|g| b.contains(g)))
}

/// First generator of `a` outside `b`, with its normal form: a
/// checkable certificate that the inclusion fails.
pub fn first_nonmember(a: &IdealHandle, b: &IdealHandle) -> Result<Option<(Polynomial, Polynomial)>> {
    require_same_ring(a, b)?;
    for g in &a.raw {
        let nf = b.basis().normal_form(g);
        if !nf.is_zero() {
            return Ok(Some((g.clone(), nf)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ring(vars: &[&str], defs: &[&str]) -> Arc<QuotientRing> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let defs: Vec<Polynomial> =
            defs.iter().map(|t| parse_polynomial(t, &names).unwrap()).collect();
        quotient_ring(names, defs).unwrap()
    }

    fn ideal(r: &Arc<QuotientRing>, gens: &[&str]) -> IdealHandle {
        let gens: Vec<Polynomial> = gens.iter().map(|t| r.parse(t).unwrap()).collect();
        IdealHandle::new(r.clone(), gens).unwrap()
    }

    fn basis_strings(h: &IdealHandle) -> Vec<String> {
        h.basis().polys().iter().map(|p| h.ring().format(p)).collect()
    }

    #[test]
    fn cuspidal_relation_reduces_canonically() {
        let r = ring(&["x", "y"], &["y^2 - x^3"]);
        assert_eq!(
            r.defining_basis().polys().iter().map(|p| r.format(p)).collect::<Vec<_>>(),
            vec!["x^3 - y^2"]
        );
        // x^3*y and y^3 are the same residue; x^4 lands on x*y^2.
        assert_eq!(r.format(&r.reduce(&r.parse("x^3*y").unwrap())), "y^3");
        assert_eq!(r.format(&r.reduce(&r.parse("y^3").unwrap())), "y^3");
        assert_eq!(r.format(&r.reduce(&r.parse("x^4").unwrap())), "x*y^2");
        assert!(r.is_zero_mod(&r.parse("y^2 - x^3").unwrap()));
        assert!(r.is_zero_mod(&r.parse("x*y^2 - x^4").unwrap()));
    }

    #[test]
    fn redundant_generators_collapse() {
        let r = ring(&["x", "y"], &["y^2 - x^3"]);
        let i = ideal(&r, &["y", "x^2"]);
        assert_eq!(basis_strings(&i), vec!["x^2", "y"]);
        assert_eq!(
            i.small_generators().iter().map(|p| r.format(p)).collect::<Vec<_>>(),
            vec!["x^2", "y"]
        );
    }

    #[test]
    fn textbook_basis_with_one_new_element() {
        // (x^2 + y, x*y + x) over the plane: the pair produces y^2 - y...
        let r = ring(&["x", "y"], &[]);
        let i = ideal(&r, &["x^2 + y", "x*y + x"]);
        let gb = i.basis();
        assert!(gb.satisfies_buchberger_criterion());
        // x*(xy + x) - y*(x^2 + y) = x^2 - y^2 -> x^2 + y reduces it to -y^2 - y
        assert!(i.contains(&r.parse("y^2 + y").unwrap()));
        assert!(!i.contains(&r.parse("y").unwrap()));
    }

    #[test]
    fn unit_ideal_detection() {
        let r = ring(&["x"], &[]);
        let i = ideal(&r, &["x", "x + 1"]);
        assert!(i.is_unit_ideal());
        assert_eq!(basis_strings(&i), vec!["1"]);
    }

    #[test]
    fn unit_defining_ideal_is_refused() {
        let names: Vec<String> = vec!["x".into()];
        let one = parse_polynomial("1", &names).unwrap();
        assert!(matches!(
            quotient_ring(names, vec![one]),
            Err(Error::UnitDefiningIdeal)
        ));
    }

    #[test]
    fn duplicate_variables_are_refused() {
        let names: Vec<String> = vec!["x".into(), "x".into()];
        assert!(matches!(
            quotient_ring(names, vec![]),
            Err(Error::DuplicateVariable { .. })
        ));
    }

    #[test]
    fn normal_form_is_the_unique_remainder() {
        let r = ring(&["x", "y"], &[]);
        let i = ideal(&r, &["x^2 - y", "x*y - 1"]);
        let gb = i.basis();
        let f = r.parse("x^5 + x^3*y^2 - x").unwrap();
        let nf = gb.normal_form(&f);
        // f - nf is in the ideal and nf is fully reduced.
        assert!(gb.contains(&f.sub(&nf)));
        for perm in [[0usize, 1, 2], [2, 1, 0], [1, 2, 0]] {
            let scan: Vec<usize> = perm.iter().copied().take(gb.polys().len()).collect();
            if scan.len() == gb.polys().len() {
                assert_eq!(gb.normal_form_permuted(&f, &scan), nf);
            }
        }
    }

    #[test]
    fn sum_concatenates_raw_generators() {
        let r = ring(&["x", "y"], &[]);
        let a = ideal(&r, &["x"]);
        let b = ideal(&r, &["y", "x"]);
        let s = ideal_sum(&a, &b).unwrap();
        let texts: Vec<String> = s.raw_generators().iter().map(|p| r.format(p)).collect();
        assert_eq!(texts, vec!["x", "y", "x"]);
        assert_eq!(basis_strings(&s), vec!["x", "y"]);
    }

    #[test]
    fn product_and_power_agree() {
        let r = ring(&["x", "y"], &[]);
        let m = ideal(&r, &["x", "y"]);
        let sq = ideal_product(&m, &m).unwrap();
        assert_eq!(basis_strings(&sq), vec!["x^2", "x*y", "y^2"]);
        let p2 = ideal_power(&m, 2);
        assert!(ideal_equal(&sq, &p2).unwrap());
        let p0 = ideal_power(&m, 0);
        assert!(p0.is_unit_ideal());
        let p3 = ideal_power(&m, 3);
        assert_eq!(basis_strings(&p3), vec!["x^3", "x^2*y", "x*y^2", "y^3"]);
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let r = ring(&["x", "y"], &[]);
        let a = ideal(&r, &["x^2"]);
        let b = ideal(&r, &["y"]);
        let meet = ideal_intersect(&a, &b).unwrap();
        assert_eq!(basis_strings(&meet), vec!["x^2*y"]);
    }

    #[test]
    fn colon_ideal_classics() {
        let r = ring(&["x", "y"], &[]);
        // (x^2, xy) : (x) = (x, y)
        let a = ideal(&r, &["x^2", "x*y"]);
        let b = ideal(&r, &["x"]);
        let q = ideal_quotient(&a, &b).unwrap();
        assert_eq!(basis_strings(&q), vec!["x", "y"]);
        // (xy) : (x^2, y) = (xy) : stays principal over two divisors
        let a = ideal(&r, &["x*y"]);
        let b = ideal(&r, &["x^2", "y"]);
        let q = ideal_quotient(&a, &b).unwrap();
        assert_eq!(basis_strings(&q), vec!["x*y"]);
    }

    #[test]
    fn quotient_by_vanishing_ideal_is_refused() {
        let r = ring(&["x", "y"], &["y^2 - x^3"]);
        let a = ideal(&r, &["x"]);
        let b = ideal(&r, &["y^2 - x^3", "2*x^3 - 2*y^2"]);
        assert!(matches!(ideal_quotient(&a, &b), Err(Error::ZeroDivisorIdeal)));
    }

    #[test]
    fn quotient_skips_vanishing_divisors() {
        let r = ring(&["x", "y"], &["y^2 - x^3"]);
        let a = ideal(&r, &["x^2", "y"]);
        let b1 = ideal(&r, &["x"]);
        let b2 = ideal(&r, &["x", "y^2 - x^3"]);
        let q1 = ideal_quotient(&a, &b1).unwrap();
        let q2 = ideal_quotient(&a, &b2).unwrap();
        assert!(ideal_equal(&q1, &q2).unwrap());
    }

    #[test]
    fn equality_is_generator_independent() {
        let r = ring(&["x", "y"], &["y^2 - x^3"]);
        let a = ideal(&r, &["y", "x^2"]);
        let b = ideal(&r, &["2*y", "3*x^2", "x^2 + y"]);
        assert!(ideal_equal(&a, &b).unwrap());
        let c = ideal(&r, &["y", "x"]);
        assert!(!ideal_equal(&a, &c).unwrap());
        assert!(ideal_subset(&a, &c).unwrap());
        assert!(!ideal_subset(&c, &a).unwrap());
        let witness = first_nonmember(&c, &a).unwrap().unwrap();
        assert_eq!(r.format(&witness.0), "x");
    }

    #[test]
    fn context_mismatch_is_refused() {
        let r1 = ring(&["x", "y"], &["y^2 - x^3"]);
        let r2 = ring(&["x", "y"], &[]);
        let a = ideal(&r1, &["x"]);
        let b = ideal(&r2, &["x"]);
        assert!(matches!(ideal_sum(&a, &b), Err(Error::ContextMismatch)));
        // Structurally identical rings interoperate even when built twice.
        let r3 = ring(&["x", "y"], &["y^2 - x^3"]);
        let c = ideal(&r3, &["y"]);
        assert!(ideal_sum(&a, &c).is_ok());
    }

    #[test]
    fn zero_ideal_and_membership_mod_relations() {
        let r = ring(&["x", "y"], &["y^2 - x^3"]);
        let z = ideal(&r, &["y^2 - x^3"]);
        assert!(z.is_zero_ideal());
        assert!(z.small_generators().is_empty());
        let i = ideal(&r, &["y"]);
        // y^3 = x^3*y in the ring, so x^3*y is in (y) + relations.
        assert!(i.contains(&r.parse("x^3*y").unwrap()));
        assert!(!i.contains(&r.parse("x").unwrap()));
    }

    #[test]
    fn exact_division_tracks_quotients() {
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let f = parse_polynomial("x^3*y + x^2*y^2", &vars).unwrap();
        let d = parse_polynomial("x^2", &vars).unwrap();
        let q = divide_exact(&f, &d).unwrap();
        assert_eq!(format_polynomial(&q, &vars), "x*y + y^2");
        let bad = parse_polynomial("x^2 + y", &vars).unwrap();
        assert!(divide_exact(&bad, &d).is_err());
    }

    #[test]
    fn power_counts_multisets() {
        let r = ring(&["x", "y"], &[]);
        let m = ideal(&r, &["x", "y"]);
        // Multisets of size 3 from 2 generators: 4 of them.
        let p3 = ideal_power(&m, 3);
        assert_eq!(p3.raw_generators().len(), 4);
        assert_eq!(
            p3.raw_generators().iter().map(|p| r.format(p)).collect::<Vec<_>>(),
            vec!["x^3", "x^2*y", "x*y^2", "y^3"]
        );
    }

    #[test]
    fn primitive_scaling_is_transparent() {
        let r = ring(&["x"], &[]);
        let a = ideal(&r, &["1/2*x^2 - 1/3*x"]);
        let b = ideal(&r, &["3*x^2 - 2*x"]);
        assert!(ideal_equal(&a, &b).unwrap());
        assert_eq!(basis_strings(&a), vec!["x^2 - 2/3*x"]);
    }

    #[test]
    fn quotient_ring_reduction_respects_scaling() {
        let r = ring(&["x", "y"], &["2*y^2 - 2*x^3"]);
        assert!(r.is_zero_mod(&r.parse("y^2 - x^3").unwrap()));
        assert_eq!(r.format(&r.reduce(&r.parse("x^3 + x").unwrap())), "y^2 + x");
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = ring(&["x", "y", "z"], &["y - x^2", "z - x*y"]);
        let polys: Vec<String> =
            r.defining_basis().polys().iter().map(|p| r.format(p)).collect();
        assert_eq!(polys, vec!["x^2 - y", "x*y - z", "y^2 - x*z"]);
        assert!(r.defining_basis().satisfies_buchberger_criterion());
        // The parametrization x = t, y = t^2, z = t^3 kills x*z - y^2.
        assert!(r.is_zero_mod(&r.parse("x*z - y^2").unwrap()));
    }

    #[test]
    fn groebner_scaling_constant() {
        let half = Polynomial::constant(1, rat(1) / rat(2));
        let gb = groebner_basis(1, &[half], MonomialOrder::GrevLex);
        assert!(gb.is_unit());
    }
}
