//! Decision procedures for the laws the determinant operator
//! satisfies, and for the resolution criterion built on them.
//!
//! Each check returns a verdict carrying a concrete certificate: a
//! generator outside an ideal together with its nonzero normal form
//! when an inclusion fails, the smallest exponent when a bounded scan
//! succeeds, or an explicit inconclusive-at-bound marker when it does
//! not. Checks never guess: a `holds` field is the result of exact
//! ideal arithmetic.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::{
    first_nonmember, ideal_equal, ideal_power, ideal_product, ideal_quotient, ideal_subset,
    scale_ideal, IdealHandle,
};
use crate::jideal::{j_ideal, jtoy_ideal, GeneratorSequence};
use crate::variety::{Derivation, Foliation, VarietyContext};

/// Default bound for the equality-exponent scan.
pub const DEFAULT_N_MAX: u32 = 8;
/// Default bound for the divisibility-exponent scan.
pub const DEFAULT_ALPHA_MAX: u32 = 6;
/// Default number of chain steps explored.
pub const DEFAULT_MAX_STEPS: usize = 5;

/// Outcome of one check, with a machine-checkable certificate.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckVerdict {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A generator of `side` with nonzero normal form against the
    /// other side's basis: the inclusion fails at this element.
    NonMember {
        side: String,
        generator: String,
        normal_form: String,
    },
    /// Smallest exponent at which a scanned equality held.
    SmallestN { n: u32 },
    /// Divisibility witness: the scaling ideal over its denominator,
    /// found at the smallest working exponent.
    Divisor {
        alpha: u32,
        denominator: String,
        numerator_basis: Vec<String>,
    },
    /// Every exponent up to the bound was tried and none worked; says
    /// nothing about larger exponents.
    InconclusiveAtBound { bound: u32 },
}

fn verdict(name: &str, holds: bool) -> CheckVerdict {
    CheckVerdict { name: name.to_string(), holds, witness: None, note: None }
}

fn non_member_witness(
    ctx: &VarietyContext,
    side: &str,
    a: &IdealHandle,
    b: &IdealHandle,
) -> Result<Option<Witness>> {
    Ok(first_nonmember(a, b)?.map(|(g, nf)| Witness::NonMember {
        side: side.to_string(),
        generator: ctx.format(&g),
        normal_form: ctx.format(&nf),
    }))
}

/// Product law: the (r+1)-th power of one ideal times the operator of
/// another sits inside the operator of the product. Expected to hold
/// unconditionally.
pub fn check_thm12(
    ctx: &VarietyContext,
    i: &IdealHandle,
    j: &IdealHandle,
    fol: &Foliation,
    cap: usize,
) -> Result<CheckVerdict> {
    let r = fol.rank();
    let lhs = ideal_product(&ideal_power(i, (r + 1) as u32), &j_ideal(ctx, j, fol, cap)?)?;
    let prod = ideal_product(i, j)?;
    let rhs = j_ideal(ctx, &prod, fol, cap)?;
    let mut v = verdict("thm12", ideal_subset(&lhs, &rhs)?);
    if !v.holds {
        v.witness = non_member_witness(ctx, "product-side", &lhs, &rhs)?;
    }
    if i.is_zero_ideal() || j.is_zero_ideal() {
        v.note = Some("degenerate: a zero ideal input makes the inclusion vacuous".into());
    }
    Ok(v)
}

/// Power law: the operator of the N-th power equals the
/// (N-1)(r+1)-th power times the operator. Expected to hold
/// unconditionally.
pub fn check_thm14(
    ctx: &VarietyContext,
    i: &IdealHandle,
    n: u32,
    fol: &Foliation,
    cap: usize,
) -> Result<CheckVerdict> {
    if n == 0 {
        return Err(Error::Invalid("power-law exponent must be at least 1".into()));
    }
    let r = (fol.rank() + 1) as u32;
    let lhs = j_ideal(ctx, &ideal_power(i, n), fol, cap)?;
    let rhs = ideal_product(&ideal_power(i, (n - 1) * r), &j_ideal(ctx, i, fol, cap)?)?;
    let mut v = verdict("thm14", ideal_equal(&lhs, &rhs)?);
    if !v.holds {
        v.witness = match non_member_witness(ctx, "power-side", &lhs, &rhs)? {
            Some(w) => Some(w),
            None => non_member_witness(ctx, "scaled-side", &rhs, &lhs)?,
        };
    }
    if i.is_zero_ideal() {
        v.note = Some("degenerate: zero ideal input".into());
    }
    Ok(v)
}

struct EqualityScan {
    derived: IdealHandle,
    verdicts: BTreeMap<u32, bool>,
    smallest: Option<u32>,
    inclusion_holds: bool,
}

/// Scans the scaled equality J^N * D^{r+2} = J^N * op(J*D) for
/// N = 0..=n_max, where D = op(J). Stops at the first success unless
/// `full` is set (equality at N implies it at N+1, both sides being
/// multiplied by J, so nothing is learned after a success).
fn equality_scan(
    ctx: &VarietyContext,
    j: &IdealHandle,
    fol: &Foliation,
    n_max: u32,
    cap: usize,
    full: bool,
) -> Result<EqualityScan> {
    let r = fol.rank();
    let derived = j_ideal(ctx, j, fol, cap)?;
    let inner = j_ideal(ctx, &ideal_product(j, &derived)?, fol, cap)?;
    let lhs0 = ideal_power(&derived, (r + 2) as u32);
    let inclusion_holds = ideal_subset(&lhs0, &inner)?;

    let mut verdicts = BTreeMap::new();
    let mut smallest = None;
    let mut jn = IdealHandle::unit(ctx.ring().clone());
    for n in 0..=n_max {
        if n > 0 {
            jn = ideal_product(&jn, j)?;
        }
        let lhs = ideal_product(&jn, &lhs0)?;
        let rhs = ideal_product(&jn, &inner)?;
        let eq = ideal_equal(&lhs, &rhs)?;
        verdicts.insert(n, eq);
        if eq && smallest.is_none() {
            smallest = Some(n);
            if !full {
                break;
            }
        }
    }
    Ok(EqualityScan { derived, verdicts, smallest, inclusion_holds })
}

/// Unconditional inclusion: the (r+2)-th power of the operator sits
/// inside the operator of ideal-times-operator. A false verdict
/// cannot come from bad input; it means the implementation itself is
/// inconsistent, and the note says so.
pub fn check_main_inclusion(
    ctx: &VarietyContext,
    j: &IdealHandle,
    fol: &Foliation,
    cap: usize,
) -> Result<CheckVerdict> {
    let r = fol.rank();
    let derived = j_ideal(ctx, j, fol, cap)?;
    let lhs = ideal_power(&derived, (r + 2) as u32);
    let inner = j_ideal(ctx, &ideal_product(j, &derived)?, fol, cap)?;
    let mut v = verdict("main_inclusion", ideal_subset(&lhs, &inner)?);
    if !v.holds {
        v.witness = non_member_witness(ctx, "operator-power", &lhs, &inner)?;
        v.note = Some(
            "internal consistency alarm: this inclusion is a theorem and must never fail"
                .into(),
        );
    } else if j.is_zero_ideal() {
        v.note = Some("degenerate: zero ideal input".into());
    }
    Ok(v)
}

/// Bounded search for the scaled equality. Success reports the
/// smallest exponent; exhausting the bound is reported as
/// inconclusive, not false, whenever the unconditional inclusion
/// holds.
pub fn check_main_equality(
    ctx: &VarietyContext,
    j: &IdealHandle,
    fol: &Foliation,
    n_max: u32,
    cap: usize,
) -> Result<CheckVerdict> {
    let scan = equality_scan(ctx, j, fol, n_max, cap, false)?;
    let mut v = verdict("main_equality", scan.smallest.is_some());
    match scan.smallest {
        Some(n) => v.witness = Some(Witness::SmallestN { n }),
        None => {
            v.witness = Some(Witness::InconclusiveAtBound { bound: n_max });
            if scan.inclusion_holds {
                v.note = Some(
                    "no exponent up to the bound reached equality; the one-sided inclusion holds"
                        .into(),
                );
            } else {
                v.note = Some(
                    "internal consistency alarm: the one-sided inclusion failed".into(),
                );
            }
        }
    }
    if j.is_zero_ideal() {
        v.note = Some("degenerate: zero ideal input".into());
    }
    Ok(v)
}

/// Full-scan variant used to exercise monotonicity: evaluates every
/// exponent up to the bound instead of stopping at the first success.
pub fn main_equality_full_scan(
    ctx: &VarietyContext,
    j: &IdealHandle,
    fol: &Foliation,
    n_max: u32,
    cap: usize,
) -> Result<BTreeMap<u32, bool>> {
    Ok(equality_scan(ctx, j, fol, n_max, cap, true)?.verdicts)
}

/// A fractional ideal: an ordinary ideal over a denominator that does
/// not vanish in the ring. Compared by clearing denominators.
#[derive(Clone, Debug)]
pub struct FractionalIdeal {
    numerator: IdealHandle,
    denominator: Polynomial,
}

impl FractionalIdeal {
    pub fn new(
        ctx: &VarietyContext,
        numerator: IdealHandle,
        denominator: Polynomial,
    ) -> Result<FractionalIdeal> {
        if ctx.reduce(&denominator).is_zero() {
            return Err(Error::ZeroDivisorIdeal);
        }
        Ok(FractionalIdeal { numerator, denominator })
    }

    pub fn numerator(&self) -> &IdealHandle {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn equals(&self, other: &FractionalIdeal) -> Result<bool> {
        let lhs = scale_ideal(&self.numerator, &other.denominator)?;
        let rhs = scale_ideal(&other.numerator, &self.denominator)?;
        ideal_equal(&lhs, &rhs)
    }
}

/// Bounded search for a fractional ideal S with S * op(I) = I^alpha.
/// For each exponent the candidate S is the maximal one, the
/// fractional colon ideal (f * I^alpha : op(I)) / f; if any S works,
/// the maximal one does, so the search has no false negatives from
/// the choice of S or of f.
pub fn check_divisibility(
    ctx: &VarietyContext,
    i: &IdealHandle,
    fol: &Foliation,
    alpha_max: u32,
    cap: usize,
) -> Result<CheckVerdict> {
    if alpha_max == 0 {
        return Err(Error::Invalid("divisibility bound must be at least 1".into()));
    }
    let derived = j_ideal(ctx, i, fol, cap)?;
    if derived.is_zero_ideal() {
        return Err(Error::ZeroDerivativeIdeal);
    }
    // Any nonzero generator works as the denominator: for f in the
    // derived ideal, h * op(I) inside I^alpha already forces h into
    // (1/f) * R, so the candidate below is the full maximal one no
    // matter which f is picked. Take the smallest to keep the scaled
    // ideals cheap.
    let f = derived
        .small_generators()
        .iter()
        .min_by_key(|p| p.total_degree())
        .cloned()
        .ok_or(Error::ZeroDerivativeIdeal)?;
    let mut v = verdict("divides", false);
    for alpha in 1..=alpha_max {
        let target = scale_ideal(&ideal_power(i, alpha), &f)?;
        let q = ideal_quotient(&target, &derived)?;
        let recovered = ideal_product(&derived, &q)?;
        if ideal_equal(&recovered, &target)? {
            v.holds = true;
            v.witness = Some(Witness::Divisor {
                alpha,
                denominator: ctx.format(&f),
                numerator_basis: q
                    .small_generators()
                    .iter()
                    .map(|p| ctx.format(p))
                    .collect(),
            });
            return Ok(v);
        }
    }
    v.witness = Some(Witness::InconclusiveAtBound { bound: alpha_max });
    Ok(v)
}

/// Rank-one three-variable criterion: the cross product of the
/// velocity with its derivative must land in the cube of the velocity
/// ideal.
pub fn toy_check(ctx: &VarietyContext, d: &Derivation) -> Result<CheckVerdict> {
    let fol = Foliation::new(vec![d.clone()])?;
    let velocity: Vec<Polynomial> = d.images().iter().map(|p| ctx.reduce(p)).collect();
    let seq = GeneratorSequence::new(ctx, velocity.clone())?;
    let (cross, _) = jtoy_ideal(ctx, &seq, &fol)?;
    let v_ideal = ctx.ideal(velocity)?;
    let cube = ideal_power(&v_ideal, 3);
    let mut v = verdict("toy", ideal_subset(&cross, &cube)?);
    if !v.holds {
        v.witness = non_member_witness(ctx, "cross-product", &cross, &cube)?;
    }
    Ok(v)
}

/// One step of the iterated construction, with everything needed to
/// audit it: the ideal, its operator value, and the equality scan.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub index: usize,
    pub ideal: IdealHandle,
    pub derived: IdealHandle,
    pub equality_verdicts: BTreeMap<u32, bool>,
    pub smallest_passing_n: Option<u32>,
}

/// The chain J_0 = (1), J_{i+1} = J_i * op(J_i), with the equality
/// check run at every step. `terminated_at` is the first index whose
/// equality holds; `truncated` reports that a step exceeded the
/// candidate cap and the chain stopped early with partial results.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
    pub terminated_at: Option<usize>,
    pub truncated: bool,
}

pub fn nash_chain(
    ctx: &VarietyContext,
    fol: &Foliation,
    max_steps: usize,
    n_max: u32,
    continue_past_success: bool,
    cap: usize,
) -> Result<ChainReport> {
    let mut steps = Vec::new();
    let mut terminated_at = None;
    let mut truncated = false;
    let mut current = IdealHandle::unit(ctx.ring().clone());
    for index in 0..=max_steps {
        let scan = match equality_scan(ctx, &current, fol, n_max, cap, false) {
            Ok(s) => s,
            Err(Error::CapExceeded { .. }) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        steps.push(ChainStep {
            index,
            ideal: current.clone(),
            derived: scan.derived.clone(),
            equality_verdicts: scan.verdicts,
            smallest_passing_n: scan.smallest,
        });
        if scan.smallest.is_some() {
            if terminated_at.is_none() {
                terminated_at = Some(index);
            }
            if !continue_past_success {
                break;
            }
        }
        if index < max_steps {
            current = ideal_product(&current, &scan.derived)?;
        }
    }
    Ok(ChainReport { steps, terminated_at, truncated })
}

/// The telescoped identity across two consecutive chain steps:
/// J_i^{N-r-2} * J_{i+1}^{r+3} = J_i^N * J_{i+2}. Needs N at least
/// r+2; the zero exponent is the unit ideal. J_{i+2} comes from the
/// chain when present and is rebuilt from J_{i+1} otherwise.
pub fn section1_identity_check(
    ctx: &VarietyContext,
    chain: &ChainReport,
    i: usize,
    n: u32,
    fol: &Foliation,
    cap: usize,
) -> Result<CheckVerdict> {
    let r = fol.rank();
    if (n as usize) < r + 2 {
        return Err(Error::ExponentTooSmall { n, r });
    }
    let step = |k: usize| chain.steps.iter().find(|s| s.index == k);
    let (ji, ji1) = match (step(i), step(i + 1)) {
        (Some(a), Some(b)) => (a.ideal.clone(), b.ideal.clone()),
        (Some(a), None) => {
            let next = ideal_product(&a.ideal, &a.derived)?;
            (a.ideal.clone(), next)
        }
        _ => {
            return Err(Error::Invalid(format!(
                "chain report has no step {i}; rerun with more steps"
            )))
        }
    };
    let ji2 = match step(i + 2) {
        Some(c) => c.ideal.clone(),
        None => {
            let derived = match step(i + 1) {
                Some(b) => b.derived.clone(),
                None => j_ideal(ctx, &ji1, fol, cap)?,
            };
            ideal_product(&ji1, &derived)?
        }
    };

    let lhs = ideal_product(
        &ideal_power(&ji, n - (r as u32) - 2),
        &ideal_power(&ji1, (r as u32) + 3),
    )?;
    let rhs = ideal_product(&ideal_power(&ji, n), &ji2)?;
    let mut v = verdict("identity", ideal_equal(&lhs, &rhs)?);
    if !v.holds {
        v.witness = match non_member_witness(ctx, "telescoped-side", &lhs, &rhs)? {
            Some(w) => Some(w),
            None => non_member_witness(ctx, "product-side", &rhs, &lhs)?,
        };
    }
    Ok(v)
}
