//! Affine variety contexts, derivations on the coordinate ring, and
//! foliations spanned by commuting-up-to-the-span families of
//! derivations.
//!
//! A derivation is stored by its values on the variables; everything
//! else follows from the chain rule. Validity of a foliation means
//! two things: the family attains its full rank somewhere on the
//! variety, and it is closed under Lie brackets up to that rank, both
//! decided by determinantal conditions modulo the defining ideal.
//!
//! The defining ideal is assumed prime (the ring a domain). That
//! precondition is not verified here; the unit-ideal rejection in the
//! ring constructor is the only guard.

use std::sync::Arc;

use crate::arith::{determinant, index_combinations, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{quotient_ring, IdealHandle, QuotientRing};

/// A variety given by named coordinates and defining relations; all
/// ideal and derivation work happens relative to one of these.
#[derive(Clone, Debug)]
pub struct VarietyContext {
    ring: Arc<QuotientRing>,
}

pub fn make_context(variables: Vec<String>, p_generator_texts: &[String]) -> Result<VarietyContext> {
    let defining = p_generator_texts
        .iter()
        .map(|t| crate::arith::parse_polynomial(t, &variables))
        .collect::<Result<Vec<_>>>()?;
    Ok(VarietyContext { ring: quotient_ring(variables, defining)? })
}

impl VarietyContext {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.ring.parse(text)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.ring.format(p)
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.ring.reduce(p)
    }

    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        IdealHandle::new(self.ring.clone(), gens)
    }

    pub fn ideal_from_texts(&self, texts: &[String]) -> Result<IdealHandle> {
        let gens = texts.iter().map(|t| self.parse(t)).collect::<Result<Vec<_>>>()?;
        self.ideal(gens)
    }

    pub fn unit_ideal(&self) -> IdealHandle {
        IdealHandle::unit(self.ring.clone())
    }
}

/// A derivation of the coordinate ring, stored by its values on the
/// variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ctx: &VarietyContext, images: Vec<Polynomial>) -> Result<Derivation> {
        if images.len() != ctx.nvars() {
            return Err(Error::ImageCount { expected: ctx.nvars(), got: images.len() });
        }
        for im in &images {
            if im.nvars() != ctx.nvars() {
                return Err(Error::Invalid("derivation image has wrong variable count".into()));
            }
        }
        Ok(Derivation { images })
    }

    pub fn from_texts(ctx: &VarietyContext, texts: &[String]) -> Result<Derivation> {
        let images = texts.iter().map(|t| ctx.parse(t)).collect::<Result<Vec<_>>>()?;
        Derivation::new(ctx, images)
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }
}

/// Chain rule: the derivation applied to `f`, reduced to normal form.
pub fn derivation_apply(ctx: &VarietyContext, d: &Derivation, f: &Polynomial) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(ctx.nvars());
    for (j, image) in d.images.iter().enumerate() {
        if image.is_zero() {
            continue;
        }
        let df = f.partial_derivative(j)?;
        if df.is_zero() {
            continue;
        }
        acc = acc.add(&df.mul(image));
    }
    Ok(ctx.reduce(&acc))
}

/// Tangency: a derivation descends to the quotient ring exactly when
/// it maps every defining relation back into the defining ideal.
pub fn derivation_validate(ctx: &VarietyContext, d: &Derivation) -> Result<bool> {
    for g in ctx.ring().defining_generators() {
        if !derivation_apply(ctx, d, g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Commutator of two derivations, again stored by values on the
/// variables and reduced to normal form.
pub fn lie_bracket(ctx: &VarietyContext, d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let mut images = Vec::with_capacity(ctx.nvars());
    for j in 0..ctx.nvars() {
        let a = derivation_apply(ctx, d1, &d2.images[j])?;
        let b = derivation_apply(ctx, d2, &d1.images[j])?;
        images.push(ctx.reduce(&a.sub(&b)));
    }
    Derivation::new(ctx, images)
}

/// An ordered family of derivations spanning a rank-`r` distribution.
#[derive(Clone, Debug)]
pub struct Foliation {
    derivations: Vec<Derivation>,
}

impl Foliation {
    pub fn new(derivations: Vec<Derivation>) -> Result<Foliation> {
        if derivations.is_empty() {
            return Err(Error::Invalid("a foliation needs at least one derivation".into()));
        }
        Ok(Foliation { derivations })
    }

    pub fn rank(&self) -> usize {
        self.derivations.len()
    }

    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }
}

/// Verdicts of the two foliation conditions. Tangency failures are
/// reported as errors (naming the offending derivation), not here.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FoliationReport {
    /// Some r-by-r minor of the value matrix is nonzero in the ring.
    pub generic_rank: bool,
    /// Every bracket of two family members stays inside the span, in
    /// the determinantal sense: all (r+1)-minors of the family
    /// extended by the bracket vanish in the ring.
    pub lie_closure: bool,
}

impl FoliationReport {
    pub fn is_valid(&self) -> bool {
        self.generic_rank && self.lie_closure
    }
}

/// Values matrix of a family of derivations: row i is derivation i on
/// the variables, reduced.
fn value_matrix(ctx: &VarietyContext, ds: &[&Derivation]) -> Vec<Vec<Polynomial>> {
    ds.iter()
        .map(|d| d.images.iter().map(|p| ctx.reduce(p)).collect())
        .collect()
}

/// True when some k-by-k minor of the matrix is nonzero mod the
/// defining ideal.
fn has_nonzero_minor(ctx: &VarietyContext, matrix: &[Vec<Polynomial>], k: usize) -> Result<bool> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    if k > rows || k > cols {
        return Ok(false);
    }
    let reduce = |p: Polynomial| ctx.reduce(&p);
    for row_set in index_combinations(rows, k) {
        for col_set in index_combinations(cols, k) {
            let sub: Vec<Vec<Polynomial>> = row_set
                .iter()
                .map(|&i| col_set.iter().map(|&j| matrix[i][j].clone()).collect())
                .collect();
            if !determinant(&sub, &reduce)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// True when every k-by-k minor vanishes mod the defining ideal;
/// vacuously true when the matrix has no k-by-k minors.
fn all_minors_vanish(ctx: &VarietyContext, matrix: &[Vec<Polynomial>], k: usize) -> Result<bool> {
    Ok(!has_nonzero_minor(ctx, matrix, k)?)
}

pub fn foliation_validate(ctx: &VarietyContext, f: &Foliation) -> Result<FoliationReport> {
    for (index, d) in f.derivations.iter().enumerate() {
        if !derivation_validate(ctx, d)? {
            return Err(Error::NotTangent { index });
        }
    }
    let r = f.rank();
    let base: Vec<&Derivation> = f.derivations.iter().collect();
    let base_matrix = value_matrix(ctx, &base);
    let generic_rank = has_nonzero_minor(ctx, &base_matrix, r)?;

    let mut lie_closure = true;
    'pairs: for i in 0..r {
        for j in (i + 1)..r {
            let bracket = lie_bracket(ctx, &f.derivations[i], &f.derivations[j])?;
            let mut rows = base.clone();
            rows.push(&bracket);
            let stacked = value_matrix(ctx, &rows);
            if !all_minors_vanish(ctx, &stacked, r + 1)? {
                lie_closure = false;
                break 'pairs;
            }
        }
    }
    Ok(FoliationReport { generic_rank, lie_closure })
}
