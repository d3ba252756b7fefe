//! Exact-rational semantics for the group-valued logic (values in Q) and the
//! bounded logic (values in [-1, 0]), plus randomized countermodel search.

use crate::structures::{Hypersequent, Sequent};
use crate::syntax::{Dialect, Formula, MBOT};
use num::{BigRational, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub type Rat = BigRational;

/// Assignment of rational values to propositional variables; missing
/// variables evaluate to 0 in the group semantics and must be explicitly
/// present for the bounded semantics (where 0 is still a legal default).
pub type Valuation = BTreeMap<String, Rat>;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

fn min(a: Rat, b: Rat) -> Rat {
    if a <= b {
        a
    } else {
        b
    }
}

fn max(a: Rat, b: Rat) -> Rat {
    if a >= b {
        a
    } else {
        b
    }
}

/// Group semantics over Q.
pub fn eval_a(f: &Formula, v: &Valuation) -> Rat {
    match f {
        Formula::Var(x) => v.get(x).cloned().unwrap_or_else(Rat::zero),
        Formula::True => Rat::zero(),
        Formula::Neg(a) => -eval_a(a, v),
        Formula::Plus(a, b) => eval_a(a, v) + eval_a(b, v),
        Formula::Arrow(a, b) => eval_a(b, v) - eval_a(a, v),
        Formula::PosArrow(a, b) => min(Rat::zero(), eval_a(b, v) - eval_a(a, v)),
        Formula::EnthArrow(a, b) => eval_a(b, v) - min(Rat::zero(), eval_a(a, v)),
        Formula::MatArrow(a, b) => {
            let bot = v.get(MBOT).cloned().unwrap_or_else(Rat::zero);
            max(bot, eval_a(b, v)) - min(Rat::zero(), eval_a(a, v))
        }
        Formula::And(a, b) => min(eval_a(a, v), eval_a(b, v)),
        Formula::Or(a, b) => max(eval_a(a, v), eval_a(b, v)),
        Formula::Bot | Formula::Tilde(_) | Formula::OPlus(_, _) => {
            panic!("bounded-dialect connective under group semantics: {f:?}")
        }
    }
}

/// Bounded semantics over [-1, 0].
pub fn eval_l(f: &Formula, v: &Valuation) -> Rat {
    match f {
        Formula::Var(x) => v.get(x).cloned().unwrap_or_else(Rat::zero),
        Formula::Bot => -Rat::one(),
        Formula::True => Rat::zero(),
        Formula::Tilde(a) => -Rat::one() - eval_l(a, v),
        Formula::OPlus(a, b) => min(Rat::zero(), eval_l(a, v) + eval_l(b, v) + Rat::one()),
        Formula::PosArrow(a, b) | Formula::MatArrow(a, b) | Formula::EnthArrow(a, b) => {
            min(Rat::zero(), eval_l(b, v) - eval_l(a, v))
        }
        Formula::And(a, b) => min(eval_l(a, v), eval_l(b, v)),
        Formula::Or(a, b) => max(eval_l(a, v), eval_l(b, v)),
        Formula::Neg(_) | Formula::Plus(_, _) | Formula::Arrow(_, _) => {
            panic!("group-dialect connective under bounded semantics: {f:?}")
        }
    }
}

pub fn eval(f: &Formula, v: &Valuation, dialect: Dialect) -> Rat {
    match dialect {
        Dialect::A => eval_a(f, v),
        Dialect::L => eval_l(f, v),
    }
}

/// A single formula is valid when its value is >= 0 (group) resp. = 0
/// (bounded) under the valuation.
pub fn formula_ok(f: &Formula, v: &Valuation, dialect: Dialect) -> bool {
    match dialect {
        Dialect::A => !eval_a(f, v).is_negative(),
        Dialect::L => eval_l(f, v).is_zero(),
    }
}

/// A component holds under a valuation when the sum of the left side is at
/// most the sum of the right side.
pub fn holds_component(s: &Sequent, v: &Valuation, dialect: Dialect) -> bool {
    let sum = |m: &crate::structures::FormulaMultiset| -> Rat {
        m.iter_occurrences().map(|f| eval(f, v, dialect)).sum()
    };
    sum(&s.left) <= sum(&s.right)
}

/// A hypersequent holds when some component holds.
pub fn holds_hyper(h: &Hypersequent, v: &Valuation, dialect: Dialect) -> bool {
    h.comps
        .iter_occurrences()
        .any(|c| holds_component(c, v, dialect))
}

pub fn random_rat<R: Rng>(rng: &mut R, dialect: Dialect) -> Rat {
    let den = rng.gen_range(1i64..=4);
    match dialect {
        Dialect::A => rat(rng.gen_range(-8 * den..=8 * den), den),
        // Values must lie in [-1, 0].
        Dialect::L => rat(rng.gen_range(-den..=0), den),
    }
}

/// Randomized search for a valuation under which the hypersequent fails.
pub fn random_refute_hyper(
    h: &Hypersequent,
    dialect: Dialect,
    seed: u64,
    tries: usize,
) -> Option<Valuation> {
    let vars: Vec<String> = h.variables().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let v: Valuation = vars
            .iter()
            .map(|x| (x.clone(), random_rat(&mut rng, dialect)))
            .collect();
        if !holds_hyper(h, &v, dialect) {
            return Some(v);
        }
    }
    None
}

/// Randomized search for a valuation making the formula invalid.
pub fn random_refute_formula(
    f: &Formula,
    dialect: Dialect,
    seed: u64,
    tries: usize,
) -> Option<Valuation> {
    let mut vars = std::collections::BTreeSet::new();
    f.variables(&mut vars);
    let vars: Vec<String> = vars.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let v: Valuation = vars
            .iter()
            .map(|x| (x.clone(), random_rat(&mut rng, dialect)))
            .collect();
        if !formula_ok(f, &v, dialect) {
            return Some(v);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::parse_hypersequent;
    use crate::syntax::parse_formula;

    fn v(pairs: &[(&str, (i64, i64))]) -> Valuation {
        pairs
            .iter()
            .map(|(k, (n, d))| (k.to_string(), rat(*n, *d)))
            .collect()
    }

    #[test]
    fn group_connectives() {
        let val = v(&[("p", (3, 2)), ("q", (-1, 1))]);
        let e = |s: &str| eval_a(&parse_formula(s, Dialect::A).unwrap(), &val);
        assert_eq!(e("p + q"), rat(1, 2));
        assert_eq!(e("p -> q"), rat(-5, 2));
        assert_eq!(e("-p"), rat(-3, 2));
        assert_eq!(e("p /\\ q"), rat(-1, 1));
        assert_eq!(e("p \\/ q"), rat(3, 2));
        assert_eq!(e("p => q"), rat(-5, 2));
        assert_eq!(e("q => p"), rat(0, 1));
        assert_eq!(e("t"), rat(0, 1));
    }

    #[test]
    fn bounded_connectives() {
        let val = v(&[("p", (-1, 2)), ("q", (-3, 4))]);
        let e = |s: &str| eval_l(&parse_formula(s, Dialect::L).unwrap(), &val);
        assert_eq!(e("~p"), rat(-1, 2));
        assert_eq!(e("bot"), rat(-1, 1));
        assert_eq!(e("p o+ q"), rat(-1, 4));
        assert_eq!(e("p => q"), rat(-1, 4));
        assert_eq!(e("q => p"), rat(0, 1));
        assert_eq!(e("p o+ ~p"), rat(0, 1));
    }

    #[test]
    fn prelinearity_always_ok_in_group() {
        let f = parse_formula("(p -> q) \\/ (q -> p)", Dialect::A).unwrap();
        assert!(random_refute_formula(&f, Dialect::A, 7, 2000).is_none());
    }

    #[test]
    fn plain_atom_refutable() {
        let f = parse_formula("p", Dialect::A).unwrap();
        let val = random_refute_formula(&f, Dialect::A, 7, 2000).unwrap();
        assert!(eval_a(&f, &val).is_negative());
        let g = parse_formula("p", Dialect::L).unwrap();
        let valg = random_refute_formula(&g, Dialect::L, 7, 2000).unwrap();
        assert!(eval_l(&g, &valg).is_negative());
    }

    #[test]
    fn hypersequent_semantics() {
        let h = parse_hypersequent("p |- q | q |- p", Dialect::A).unwrap();
        assert!(random_refute_hyper(&h, Dialect::A, 1, 2000).is_none());
        let h2 = parse_hypersequent("p |- q", Dialect::A).unwrap();
        let val = random_refute_hyper(&h2, Dialect::A, 1, 2000).unwrap();
        assert!(!holds_hyper(&h2, &val, Dialect::A));
    }

    #[test]
    fn bounded_excluded_middle_variant() {
        // p o+ ~p is valid in the bounded logic.
        let f = parse_formula("p o+ ~p", Dialect::L).unwrap();
        assert!(random_refute_formula(&f, Dialect::L, 3, 2000).is_none());
        // but p \/ ~p is not.
        let g = parse_formula("p \\/ ~p", Dialect::L).unwrap();
        assert!(random_refute_formula(&g, Dialect::L, 3, 2000).is_some());
    }
}
