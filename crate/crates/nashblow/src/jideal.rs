//! The determinant-based ideal operators.
//!
//! Given an ideal with chosen generators f_0..f_m and a rank-r
//! foliation, the central operator builds every (r+1)-square
//! determinant that pairs a block of generator rows (f_i, derivatives
//! of f_i) with a block of coordinate rows (0, derivatives of x_j),
//! scaled by products of generators, one per coordinate row. The
//! resulting ideal is independent of the generator choice; that
//! independence is enforced by tests, not assumed by the code.
//!
//! Alongside it: the sequence-sensitive pure-determinant operator,
//! two ways of enlarging a generator sequence (multiplying by the
//! coordinates, or adjoining subsums for power generation), and the
//! rank-one three-variable cross-product operator.

use std::collections::HashSet;

use crate::arith::{determinant, index_combinations, index_multisets, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{ideal_power, ideal_product, ideal_sum, IdealHandle};
use crate::variety::{derivation_apply, Foliation, VarietyContext};

/// Default bound on enumerated candidate generators before a
/// computation refuses to continue.
pub const DEFAULT_DET_CAP: usize = 20_000;

/// An ordered generator sequence. Unlike an ideal handle, order and
/// multiplicity are semantically meaningful: the pure-determinant
/// operator depends on the sequence, not just the ideal it generates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSequence {
    elements: Vec<Polynomial>,
}

impl GeneratorSequence {
    pub fn new(ctx: &VarietyContext, elements: Vec<Polynomial>) -> Result<GeneratorSequence> {
        for e in &elements {
            if e.nvars() != ctx.nvars() {
                return Err(Error::Invalid("sequence element has wrong variable count".into()));
            }
        }
        Ok(GeneratorSequence { elements })
    }

    pub fn from_texts(ctx: &VarietyContext, texts: &[String]) -> Result<GeneratorSequence> {
        let elements = texts.iter().map(|t| ctx.parse(t)).collect::<Result<Vec<_>>>()?;
        GeneratorSequence::new(ctx, elements)
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Determinant with normal-form reduction after every product, so
/// intermediates stay small modulo the defining ideal.
pub fn det_poly(ctx: &VarietyContext, matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let reduce = |p: Polynomial| ctx.reduce(&p);
    let det = determinant(matrix, &reduce)?;
    Ok(ctx.reduce(&det))
}

/// Deterministic assembly of a generator list: reduce, drop zeros,
/// deduplicate, sort descending by leading monomial (ties broken on
/// the full term list).
fn canonical_generators(ctx: &VarietyContext, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut out = Vec::new();
    for g in gens {
        let g = ctx.reduce(&g);
        if g.is_zero() {
            continue;
        }
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| {
        let cmp = crate::arith::MonomialOrder::GrevLex;
        for ((ma, ca), (mb, cb)) in b.terms().iter().zip(a.terms().iter()) {
            match cmp.cmp(ma, mb).then_with(|| ca.cmp(cb)) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        b.terms().len().cmp(&a.terms().len())
    });
    out
}

/// The input generators as the operator sees them: reduced, nonzero,
/// first occurrence kept. Replacing a generator by its normal form
/// shifts every determinant by an element of the defining ideal, so
/// the output ideal is unchanged.
fn reduced_inputs(ctx: &VarietyContext, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut out = Vec::new();
    for g in gens {
        let g = ctx.reduce(g);
        if g.is_zero() {
            continue;
        }
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    out
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128);
        acc /= (i + 1) as u128;
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

fn multiset_count_capped(n: usize, k: usize, cap: u128) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    binomial_capped(n + k - 1, k, cap)
}

/// Pure-determinant operator on a sequence: all (r+1)-square
/// determinants whose rows are (f_i, derivatives of f_i) over
/// strictly increasing index choices. Sequence-dependent by design;
/// fewer than r+1 elements give the zero ideal.
pub fn m_ideal(
    ctx: &VarietyContext,
    seq: &GeneratorSequence,
    fol: &Foliation,
) -> Result<IdealHandle> {
    let r = fol.rank();
    let rows: Vec<Vec<Polynomial>> = seq
        .elements
        .iter()
        .map(|f| generator_row(ctx, f, fol))
        .collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for idx in index_combinations(seq.len(), r + 1) {
        let sub: Vec<Vec<Polynomial>> = idx.iter().map(|&i| rows[i].clone()).collect();
        gens.push(det_poly(ctx, &sub)?);
    }
    ctx.ideal(canonical_generators(ctx, gens))
}

/// Row (f, derivative of f along each foliation member), reduced.
fn generator_row(ctx: &VarietyContext, f: &Polynomial, fol: &Foliation) -> Result<Vec<Polynomial>> {
    let mut row = Vec::with_capacity(fol.rank() + 1);
    row.push(ctx.reduce(f));
    for d in fol.derivations() {
        row.push(derivation_apply(ctx, d, f)?);
    }
    Ok(row)
}

/// Row (0, derivative of the j-th coordinate along each member).
fn coordinate_row(ctx: &VarietyContext, j: usize, fol: &Foliation) -> Vec<Polynomial> {
    let mut row = Vec::with_capacity(fol.rank() + 1);
    row.push(Polynomial::zero(ctx.nvars()));
    for d in fol.derivations() {
        row.push(ctx.reduce(&d.images()[j]));
    }
    row
}

/// The main operator. For every split a + b = r + 1 (a generator
/// rows, b coordinate rows), every strictly increasing choice of a
/// generators and b coordinates, and every size-b multiset u of
/// generator indices, emit the product f_u1 * ... * f_ub times the
/// block determinant. The enumeration is refused outright if it would
/// exceed `cap` candidates.
pub fn j_ideal(
    ctx: &VarietyContext,
    ideal: &IdealHandle,
    fol: &Foliation,
    cap: usize,
) -> Result<IdealHandle> {
    let gens = reduced_inputs(ctx, ideal.raw_generators());
    let m1 = gens.len();
    if m1 == 0 {
        return ctx.ideal(Vec::new());
    }
    let r = fol.rank();
    let n = ctx.nvars();

    let a_lo = 1.max((r + 1).saturating_sub(n));
    let a_hi = (r + 1).min(m1);
    let mut total: u128 = 0;
    for a in a_lo..=a_hi {
        let b = r + 1 - a;
        let dets = binomial_capped(m1, a, cap as u128)
            .saturating_mul(binomial_capped(n, b, cap as u128));
        let scalings = multiset_count_capped(m1, b, cap as u128);
        total = total.saturating_add(dets.saturating_mul(scalings));
        if total > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
    }

    let gen_rows: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|f| generator_row(ctx, f, fol))
        .collect::<Result<_>>()?;
    let coord_rows: Vec<Vec<Polynomial>> = (0..n).map(|j| coordinate_row(ctx, j, fol)).collect();

    let mut out = Vec::new();
    for a in a_lo..=a_hi {
        let b = r + 1 - a;
        for i_set in index_combinations(m1, a) {
            for j_set in index_combinations(n, b) {
                let mut matrix: Vec<Vec<Polynomial>> = Vec::with_capacity(r + 1);
                for &i in &i_set {
                    matrix.push(gen_rows[i].clone());
                }
                for &j in &j_set {
                    matrix.push(coord_rows[j].clone());
                }
                let det = det_poly(ctx, &matrix)?;
                if det.is_zero() {
                    continue;
                }
                if b == 0 {
                    out.push(det);
                    continue;
                }
                for u in index_multisets(m1, b) {
                    let mut g = det.clone();
                    for &k in &u {
                        g = ctx.reduce(&g.mul(&gens[k]));
                    }
                    out.push(g);
                }
            }
        }
    }
    ctx.ideal(canonical_generators(ctx, out))
}

/// Appends every product of a sequence element with a coordinate
/// variable, reduced. Order: original sequence first, then products
/// with the element index outermost.
pub fn extend_products(ctx: &VarietyContext, seq: &GeneratorSequence) -> GeneratorSequence {
    let mut elements = seq.elements.clone();
    for f in &seq.elements {
        for j in 0..ctx.nvars() {
            let xj = Polynomial::variable(ctx.nvars(), j);
            elements.push(ctx.reduce(&f.mul(&xj)));
        }
    }
    GeneratorSequence { elements }
}

/// Appends every subsum reachable inside degree-d products: all sums
/// of size-1..=d multisets of sequence elements, deduplicated by
/// monic normal form. The d-th powers of the output generate the d-th
/// power of the ideal; single elements come back unchanged.
pub fn extend_powers(
    ctx: &VarietyContext,
    seq: &GeneratorSequence,
    d: u32,
    cap: usize,
) -> Result<GeneratorSequence> {
    let mut total: u128 = 0;
    for s in 1..=(d as usize) {
        total = total.saturating_add(multiset_count_capped(seq.len(), s, cap as u128));
        if total > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
    }
    let mut seen: HashSet<Polynomial> = seq
        .elements
        .iter()
        .map(|f| ctx.reduce(f).monic())
        .collect();
    let mut elements = seq.elements.clone();
    for s in 1..=(d as usize) {
        for mult in index_multisets(seq.len(), s) {
            let mut sum = Polynomial::zero(ctx.nvars());
            for &i in &mult {
                sum = sum.add(&seq.elements[i]);
            }
            let sum = ctx.reduce(&sum);
            if sum.is_zero() {
                continue;
            }
            if seen.insert(sum.monic()) {
                elements.push(sum);
            }
        }
    }
    Ok(GeneratorSequence { elements })
}

/// Rank-one operator in three coordinates: the cross-product ideal of
/// the sequence with its entrywise derivative, and that ideal plus
/// the squared sequence ideal times the coordinate-velocity ideal.
/// Returns (cross ideal, full ideal).
pub fn jtoy_ideal(
    ctx: &VarietyContext,
    l: &GeneratorSequence,
    fol: &Foliation,
) -> Result<(IdealHandle, IdealHandle)> {
    if ctx.nvars() != 3 {
        return Err(Error::NeedsThreeVariables { got: ctx.nvars() });
    }
    if fol.rank() != 1 {
        return Err(Error::NeedsRankOne { got: fol.rank() });
    }
    let d = &fol.derivations()[0];
    let velocity: Vec<Polynomial> = d.images().iter().map(|p| ctx.reduce(p)).collect();
    if velocity.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroVelocity);
    }

    let values: Vec<Polynomial> = l.elements.iter().map(|p| ctx.reduce(p)).collect();
    let derivs: Vec<Polynomial> = l
        .elements
        .iter()
        .map(|p| derivation_apply(ctx, d, p))
        .collect::<Result<_>>()?;

    let mut cross_gens = Vec::new();
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            let t = values[i].mul(&derivs[j]).sub(&values[j].mul(&derivs[i]));
            cross_gens.push(ctx.reduce(&t));
        }
    }
    let cross = ctx.ideal(canonical_generators(ctx, cross_gens))?;

    let l_ideal = ctx.ideal(values.clone())?;
    let v_ideal = ctx.ideal(velocity)?;
    let scaled = ideal_product(&ideal_power(&l_ideal, 2), &v_ideal)?;
    let full = ideal_sum(&cross, &scaled)?;
    Ok((cross, full))
}
