//! The JSON problem document and its loaded form. One document
//! declares a ring, defining relations, named derivations, a
//! foliation, and named ideals; the CLI and the C ABI both consume
//! this format.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::arith::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::jideal::GeneratorSequence;
use crate::variety::{
    foliation_validate, make_context, Derivation, Foliation, VarietyContext,
};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemDoc {
    ring: RingDoc,
    #[serde(default)]
    defining_ideal: Vec<String>,
    #[serde(default)]
    derivations: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    foliation: Vec<String>,
    #[serde(default)]
    ideals: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    variables: Vec<String>,
    characteristic: i64,
}

/// A loaded and fully parsed problem: every polynomial has been
/// checked against the declared variables before any command runs.
pub struct Problem {
    ctx: VarietyContext,
    derivations: BTreeMap<String, Derivation>,
    foliation_names: Vec<String>,
    ideals: BTreeMap<String, Vec<Polynomial>>,
}

impl Problem {
    pub fn from_str(text: &str) -> Result<Problem> {
        let doc: ProblemDoc = serde_json::from_str(text)
            .map_err(|e| Error::Invalid(format!("schema violation: {e}")))?;
        if doc.ring.characteristic != 0 {
            return Err(Error::Invalid(format!(
                "characteristic must be 0, got {}",
                doc.ring.characteristic
            )));
        }
        let ctx = make_context(doc.ring.variables, &doc.defining_ideal)?;
        let mut derivations = BTreeMap::new();
        for (name, texts) in &doc.derivations {
            let d = Derivation::from_texts(&ctx, texts)
                .map_err(|e| Error::Invalid(format!("derivation `{name}`: {e}")))?;
            derivations.insert(name.clone(), d);
        }
        for name in &doc.foliation {
            if !derivations.contains_key(name) {
                return Err(Error::Invalid(format!(
                    "foliation names unknown derivation `{name}`"
                )));
            }
        }
        let mut ideals = BTreeMap::new();
        for (name, texts) in &doc.ideals {
            let gens = texts
                .iter()
                .map(|t| ctx.parse(t))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Invalid(format!("ideal `{name}`: {e}")))?;
            ideals.insert(name.clone(), gens);
        }
        Ok(Problem { ctx, derivations, foliation_names: doc.foliation, ideals })
    }

    pub fn from_path(path: &Path) -> Result<Problem> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Problem::from_str(&text)
    }

    pub fn ctx(&self) -> &VarietyContext {
        &self.ctx
    }

    pub fn derivation_names(&self) -> impl Iterator<Item = &str> {
        self.derivations.keys().map(|s| s.as_str())
    }

    pub fn foliation_names(&self) -> &[String] {
        &self.foliation_names
    }

    pub fn foliation(&self) -> Result<Foliation> {
        let members = self
            .foliation_names
            .iter()
            .map(|n| self.derivations[n].clone())
            .collect();
        Foliation::new(members)
    }

    /// The foliation with its preconditions enforced: member tangency,
    /// generic rank, and closure under brackets.
    pub fn validated_foliation(&self) -> Result<Foliation> {
        let fol = self.foliation()?;
        let report = foliation_validate(&self.ctx, &fol)?;
        if !report.generic_rank {
            return Err(Error::Invalid(
                "foliation is degenerate: every full-rank minor of its value matrix vanishes"
                    .into(),
            ));
        }
        if !report.lie_closure {
            return Err(Error::Invalid(
                "foliation is not closed under brackets".into(),
            ));
        }
        Ok(fol)
    }

    pub fn derivation(&self, name: &str) -> Result<&Derivation> {
        self.derivations
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("unknown derivation `{name}`")))
    }

    pub fn ideal(&self, name: &str) -> Result<IdealHandle> {
        let gens = self
            .ideals
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("unknown ideal `{name}`")))?;
        self.ctx.ideal(gens.clone())
    }

    /// The named generator list as an ordered sequence, order and
    /// multiplicity preserved exactly as written.
    pub fn sequence(&self, name: &str) -> Result<GeneratorSequence> {
        let gens = self
            .ideals
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("unknown ideal `{name}`")))?;
        GeneratorSequence::new(&self.ctx, gens.clone())
    }

    /// Canonical printed form of an ideal: the elements of its reduced
    /// basis that are nonzero in the quotient ring, so defining
    /// relations never appear as ideal generators. Equal ideals print
    /// identically because the reduced basis is unique.
    pub fn basis_texts(&self, h: &IdealHandle) -> Vec<String> {
        h.small_generators().iter().map(|p| self.ctx.format(p)).collect()
    }
}
