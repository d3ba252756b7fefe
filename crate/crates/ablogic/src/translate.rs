//! Embeddings of the bounded logic (and its positive fragment) into A: the
//! star translation, the material-fragment translation, and the
//! enthymematic-fragment translation, with countermodel transfer.

use crate::semantics::{Rat, Valuation};
use crate::structures::{Hypersequent, LabelledSequent, Sequent};
use crate::syntax::{Formula, MBOT, QBOT};
use num::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("connective outside the translation fragment: {0}")]
    OutOfFragment(String),
}

fn qbot() -> Formula {
    Formula::var(QBOT)
}

/// Star translation over the {⇒, ⊥, variable} fragment:
/// p* = (p ∨ q⊥) ∧ t, ⊥* = q⊥ ∧ t, (A⇒B)* = t ∧ (A* → B*).
pub fn star(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Var(_) => Ok(Formula::and(Formula::or(f.clone(), qbot()), Formula::True)),
        Formula::Bot => Ok(Formula::and(qbot(), Formula::True)),
        Formula::PosArrow(a, b) => Ok(Formula::and(
            Formula::True,
            Formula::arrow(star(a)?, star(b)?),
        )),
        other => Err(TranslateError::OutOfFragment(format!("{other:?}"))),
    }
}

fn star_multiset(
    m: &crate::structures::FormulaMultiset,
) -> Result<crate::structures::FormulaMultiset, TranslateError> {
    let mut out = crate::structures::FormulaMultiset::new();
    for (f, k) in m.iter_counts() {
        out.insert_n(star(f)?, k);
    }
    Ok(out)
}

pub fn star_sequent(s: &Sequent) -> Result<Sequent, TranslateError> {
    Ok(Sequent::new(star_multiset(&s.left)?, star_multiset(&s.right)?))
}

/// Componentwise star translation of a hypersequent.
pub fn star_hyper(h: &Hypersequent) -> Result<Hypersequent, TranslateError> {
    let comps = h
        .components()
        .iter()
        .map(star_sequent)
        .collect::<Result<_, _>>()?;
    Ok(Hypersequent::new(comps))
}

/// Labelwise star translation of a labelled sequent (labels untouched).
pub fn star_labelled(ls: &LabelledSequent) -> Result<LabelledSequent, TranslateError> {
    let side = |m: &crate::structures::Multiset<(crate::structures::Label, Formula)>| {
        let mut out = crate::structures::Multiset::new();
        for ((lab, f), k) in m.iter_counts() {
            out.insert_n((lab.clone(), star(f)?), k);
        }
        Ok::<_, TranslateError>(out)
    };
    Ok(LabelledSequent {
        left: side(&ls.left)?,
        right: side(&ls.right)?,
        store: star_multiset(&ls.store)?,
    })
}

/// Material-fragment translation over {⊃, ⊥, variables}:
/// ⊥ ↦ the reserved variable b, A⊃B ↦ (t ∧ A') → (b ∨ B').
pub fn material(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Var(x) if x != MBOT => Ok(f.clone()),
        Formula::Bot => Ok(Formula::var(MBOT)),
        Formula::MatArrow(a, b) => Ok(Formula::arrow(
            Formula::and(Formula::True, material(a)?),
            Formula::or(Formula::var(MBOT), material(b)?),
        )),
        other => Err(TranslateError::OutOfFragment(format!("{other:?}"))),
    }
}

/// Enthymematic-fragment translation over {⊇, ∧, ∨, t, variables}:
/// A⊇B ↦ (t ∧ A') → B', other connectives pointwise.
pub fn enthymematic(f: &Formula) -> Result<Formula, TranslateError> {
    match f {
        Formula::Var(_) | Formula::True => Ok(f.clone()),
        Formula::EnthArrow(a, b) => Ok(Formula::arrow(
            Formula::and(Formula::True, enthymematic(a)?),
            enthymematic(b)?,
        )),
        Formula::And(a, b) => Ok(Formula::and(enthymematic(a)?, enthymematic(b)?)),
        Formula::Or(a, b) => Ok(Formula::or(enthymematic(a)?, enthymematic(b)?)),
        other => Err(TranslateError::OutOfFragment(format!("{other:?}"))),
    }
}

/// Transfers an A-countermodel of φ* back to a bounded countermodel of φ:
/// scale so that v(q⊥) = −1, then read off v'(p) = v(p*). Returns None when
/// v(q⊥) ≥ 0 (such valuations cannot refute a starred goal; callers re-solve).
pub fn star_countermodel(v: &Valuation) -> Option<Valuation> {
    let q = v.get(QBOT).cloned().unwrap_or_else(Rat::zero);
    if q >= Rat::zero() {
        return None;
    }
    let scale = -Rat::one() / q;
    let zero = Rat::zero();
    let mone = -Rat::one();
    let out: Valuation = v
        .iter()
        .filter(|(x, _)| x.as_str() != QBOT)
        .map(|(x, val)| {
            let s = val.clone() * scale.clone();
            // v(p*) after scaling: min(max(v(p), −1), 0).
            let clamped = if s < mone { mone.clone() } else { s };
            let clamped = if clamped > zero { zero.clone() } else { clamped };
            (x.clone(), clamped)
        })
        .collect();
    Some(out)
}
