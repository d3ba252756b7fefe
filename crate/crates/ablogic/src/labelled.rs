//! Labelled single-sequent proof search (GA_l / GŁ_l): logical rules that
//! track ⇒-introductions through set labels, success checking by reducing the
//! label-regular inequation to an unlabelled linear system, and the ⊆*
//! relation.

use crate::hyper::ProveError;
use crate::lp::{feasible, lambda_certificate, LinIneq, LinSystem, LpError, Rel};
use crate::proof::{Node, ProofCert, ProofTree, RuleId, Verdict};
use crate::semantics::{holds_component, Rat, Valuation};
use crate::structures::{
    unit_label, FormulaMultiset, Hypersequent, Label, LabelTree, LabelledSequent, Labelling,
    Multiset, Sequent,
};
use crate::syntax::{dialect_ok, normalize, CalculusId, Dialect, Formula};
use num::{One, Zero};
use std::collections::BTreeMap;

/// A labelled inequation Γ ▷ Δ with ▷ ∈ {>, ≥}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelledIneq {
    pub left: Multiset<(Label, Formula)>,
    pub right: Multiset<(Label, Formula)>,
    pub strict: bool,
}

fn slack_formula(prefix: &str, id: u32) -> Formula {
    Formula::Var(format!("{prefix}{id}"))
}

fn strip_label(m: &Multiset<(Label, Formula)>, x: u32) -> Multiset<(Label, Formula)> {
    m.iter_counts()
        .flat_map(|((l, f), n)| {
            let mut l = l.clone();
            l.remove(&x);
            std::iter::repeat((l, f.clone())).take(n)
        })
        .collect()
}

fn split_on(
    m: &Multiset<(Label, Formula)>,
    x: u32,
) -> (Multiset<(Label, Formula)>, Multiset<(Label, Formula)>) {
    let mut with = Multiset::new();
    let mut without = Multiset::new();
    for ((l, f), n) in m.iter_counts() {
        if l.contains(&x) {
            with.insert_n((l.clone(), f.clone()), n);
        } else {
            without.insert_n((l.clone(), f.clone()), n);
        }
    }
    (with, without)
}

fn to_lin(iq: &LabelledIneq) -> LinIneq {
    let mut coeffs: BTreeMap<String, Rat> = BTreeMap::new();
    let mut bots: i64 = 0;
    let mut tally = |m: &Multiset<(Label, Formula)>, sign: i64, bots: &mut i64| {
        for ((l, f), n) in m.iter_counts() {
            assert!(l.is_empty(), "reduction leaves only unit labels");
            match f {
                Formula::Var(v) => {
                    *coeffs.entry(v.clone()).or_insert_with(Rat::zero) +=
                        Rat::from_integer((sign * n as i64).into())
                }
                Formula::Bot => *bots += sign * n as i64,
                _ => panic!("reduction applies to atomic inequations"),
            }
        }
    };
    tally(&iq.left, 1, &mut bots);
    tally(&iq.right, -1, &mut bots);
    // Moving the ⊥ constants (value −1 each) to the right-hand side.
    LinIneq::new(
        coeffs,
        if iq.strict { Rel::Gt } else { Rel::Ge },
        Rat::from_integer(bots.into()),
    )
}

fn reduce_with_prefix(
    ineqs: &[LabelledIneq],
    tree: &LabelTree,
    prefix: &str,
) -> Result<LinSystem, String> {
    // Precondition: no atomic label occurs in more than one inequation, and
    // every label is a path of the tree.
    for id in tree.ids() {
        let mut seen = 0usize;
        for iq in ineqs {
            let occurs = iq
                .left
                .iter_counts()
                .chain(iq.right.iter_counts())
                .any(|((l, _), _)| l.contains(&id));
            if occurs {
                seen += 1;
            }
        }
        if seen > 1 {
            return Err(format!("atomic label {id} occurs in {seen} inequations"));
        }
    }
    for iq in ineqs {
        for ((l, _), _) in iq.left.iter_counts().chain(iq.right.iter_counts()) {
            if !tree.is_path(l) {
                return Err("label is not a path of the tree".to_string());
            }
        }
    }
    let n = tree.len();
    let m = ineqs.len();
    let mut work: Vec<LabelledIneq> = ineqs.to_vec();
    let mut t = tree.clone();
    while let Some(&x) = t.roots().first() {
        // The unique inequation mentioning x (if none, the splits are empty).
        let idx = work
            .iter()
            .position(|iq| {
                iq.left
                    .iter_counts()
                    .chain(iq.right.iter_counts())
                    .any(|((l, _), _)| l.contains(&x))
            })
            .unwrap_or(0);
        let iq = work[idx].clone();
        let (sigma, gamma) = split_on(&iq.left, x);
        let (pi, delta) = split_on(&iq.right, x);
        let lam = slack_formula(prefix, x);
        // S₁: Γ, λₓ ▷ Δ
        let mut s1_left = gamma;
        s1_left.insert((unit_label(), lam.clone()));
        let s1 = LabelledIneq {
            left: s1_left,
            right: delta,
            strict: iq.strict,
        };
        // S₂: Σ ≥ Π, λₓ (with x deleted from the labels)
        let mut s2_right = strip_label(&pi, x);
        s2_right.insert((unit_label(), lam.clone()));
        let s2 = LabelledIneq {
            left: strip_label(&sigma, x),
            right: s2_right,
            strict: false,
        };
        // S₃: 0 ≥ λₓ
        let s3 = LabelledIneq {
            left: Multiset::new(),
            right: Multiset::singleton((unit_label(), lam)),
            strict: false,
        };
        work[idx] = s1;
        work.push(s2);
        work.push(s3);
        t.remove_root(x);
    }
    assert_eq!(work.len(), 2 * n + m, "reduction emits exactly 2n+m inequations");
    Ok(LinSystem::from_ineqs(work.iter().map(to_lin).collect()))
}

/// Reduces label-regular inequations over the label tree to an equivalent
/// unlabelled system with one ≤0 slack variable per atomic label.
pub fn reduce_label_regular(
    ineqs: &[LabelledIneq],
    tree: &LabelTree,
) -> Result<LinSystem, String> {
    reduce_with_prefix(ineqs, tree, "$lam")
}

/// Δ ⊆* Γ: plain multiset inclusion, or recursively after pairing one ⊥ of Γ
/// with one element of Δ.
pub fn subset_star(delta: &FormulaMultiset, gamma: &FormulaMultiset) -> bool {
    if delta.is_subset(gamma) {
        return true;
    }
    if !gamma.contains(&Formula::Bot) {
        return false;
    }
    let mut g = gamma.clone();
    g.remove_one(&Formula::Bot);
    for (q, _) in delta.iter_counts() {
        let mut d = delta.clone();
        d.remove_one(q);
        if subset_star(&d, &g) {
            return true;
        }
    }
    false
}

fn is_formula_var(name: &str) -> bool {
    !name.starts_with('$') || name == crate::syntax::MBOT || name == crate::syntax::QBOT
}

fn add_bounds(sys: &mut LinSystem) {
    let mut vars = std::collections::BTreeSet::new();
    for iq in &sys.ineqs {
        vars.extend(iq.coeffs.keys().cloned());
    }
    for v in vars {
        if is_formula_var(&v) {
            sys.lower.insert(v.clone(), -Rat::one());
            sys.upper.insert(v, Rat::zero());
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LabelOutcome {
    Success {
        system: LinSystem,
        labellings: Vec<Labelling>,
    },
    Failure(Valuation),
}

fn all_labellings(tree: &LabelTree) -> Vec<Labelling> {
    let ids: Vec<u32> = tree.ids().collect();
    let n = ids.len();
    (0..(1usize << n))
        .map(|mask| {
            ids.iter()
                .enumerate()
                .map(|(i, id)| (*id, mask & (1 << i) != 0))
                .collect()
        })
        .collect()
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for last in (k - 1)..n {
        for mut s in k_subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out
}

fn recover_labellings(
    s: &LabelledSequent,
    tree: &LabelTree,
    dialect: Dialect,
) -> Result<Vec<Labelling>, LpError> {
    match dialect {
        Dialect::A => {
            if tree.len() > 12 {
                return Ok(Vec::new());
            }
            let mut induced: BTreeMap<Sequent, Labelling> = BTreeMap::new();
            for f in all_labellings(tree) {
                induced.entry(s.apply_labelling(&f)).or_insert(f);
            }
            let comps: Vec<(&Sequent, &Labelling)> = induced.iter().collect();
            // Small sub-hypersequents first: most successes certify with one
            // or two labelling functions, and the full system can be dense.
            for k in 1..=3.min(comps.len()) {
                for subset in k_subsets(comps.len(), k) {
                    let h = Hypersequent::new(
                        subset.iter().map(|&i| comps[i].0.clone()).collect(),
                    );
                    if let Ok(Some(lambda)) = lambda_certificate(&h) {
                        return Ok(subset
                            .iter()
                            .zip(&lambda)
                            .filter(|(_, l)| **l > 0)
                            .map(|(&i, _)| comps[i].1.clone())
                            .collect());
                    }
                }
            }
            let h = Hypersequent::new(comps.iter().map(|(c, _)| (*c).clone()).collect());
            match lambda_certificate(&h) {
                // lambda_certificate follows components() (= sorted) order,
                // matching the BTreeMap iteration order of `induced`.
                Ok(Some(lambda)) => Ok(comps
                    .iter()
                    .zip(&lambda)
                    .filter(|(_, l)| **l > 0)
                    .map(|((_, f), _)| (*f).clone())
                    .collect()),
                Ok(None) => panic!("a successful leaf certifies through multipliers"),
                // The list is best-effort: the infeasibility record stands
                // alone when the dense recovery system is too large.
                Err(LpError::ResourceLimit { .. }) => Ok(Vec::new()),
                Err(e) => Err(e),
            }
        }
        Dialect::L => {
            if tree.len() > 3 {
                return Ok(Vec::new());
            }
            let fs = all_labellings(tree);
            // Small subset search against the ⊆* success condition.
            for mask in 1usize..(1 << fs.len()) {
                let chosen: Vec<&Labelling> = fs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, f)| f)
                    .collect();
                let mut gam = FormulaMultiset::new();
                let mut del = FormulaMultiset::new();
                for f in &chosen {
                    let seq = s.apply_labelling(f);
                    gam = gam.union(&seq.left);
                    del = del.union(&seq.right);
                }
                if subset_star(&del, &gam) {
                    return Ok(chosen.into_iter().cloned().collect());
                }
            }
            Ok(Vec::new())
        }
    }
}

/// Decides success of an atomic labelled leaf: the leaf fails exactly when
/// the inequation Γ > Δ is consistent (within the bounds, for the bounded
/// dialect).
pub fn success_check(
    s: &LabelledSequent,
    tree: &LabelTree,
    dialect: Dialect,
) -> Result<LabelOutcome, LpError> {
    let iq = LabelledIneq {
        left: s.left.clone(),
        right: s.right.clone(),
        strict: true,
    };
    let mut sys = reduce_label_regular(&[iq], tree).expect("search keeps labels regular");
    if dialect == Dialect::L {
        add_bounds(&mut sys);
    }
    match feasible(&sys)? {
        Some(w) => Ok(LabelOutcome::Failure(
            w.into_iter().filter(|(k, _)| is_formula_var(k)).collect(),
        )),
        None => Ok(LabelOutcome::Success {
            labellings: recover_labellings(s, tree, dialect)?,
            system: sys,
        }),
    }
}

// ---------------------------------------------------------------------------
// Proof search
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug, Default, serde::Serialize)]
pub struct LabelStats {
    /// Connective count of the (normalized) goal.
    pub goal_cp: usize,
    /// Longest root-to-leaf chain of rule applications.
    pub max_branch_len: usize,
    /// Atomic labels introduced per branch, each by one (⇒,l).
    pub max_labels: usize,
    /// Sizes of the reduced systems of the visited leaves.
    pub lp_sizes: Vec<usize>,
    pub leaf_count: usize,
}

struct LCtx {
    dialect: Dialect,
    next: u32,
    // First failure witness: every logical rule propagates refutations
    // downward, so one failing leaf's valuation refutes the goal.
    failure: Option<Valuation>,
    stats: LabelStats,
}

fn principal(s: &LabelledSequent) -> Option<(Label, Formula, bool)> {
    for ((l, f), _) in s.left.iter_counts() {
        if crate::hyper::reducible(f) {
            return Some((l.clone(), f.clone(), true));
        }
    }
    for ((l, f), _) in s.right.iter_counts() {
        if crate::hyper::reducible(f) {
            return Some((l.clone(), f.clone(), false));
        }
    }
    None
}

fn replace_occ(
    s: &LabelledSequent,
    left: bool,
    old: &(Label, Formula),
    adds_l: &[(Label, Formula)],
    adds_r: &[(Label, Formula)],
) -> LabelledSequent {
    let mut out = s.clone();
    if left {
        out.left.remove_one(old);
    } else {
        out.right.remove_one(old);
    }
    for a in adds_l {
        out.left.insert(a.clone());
    }
    for a in adds_r {
        out.right.insert(a.clone());
    }
    out
}

fn search_l(
    s: &LabelledSequent,
    tree: &LabelTree,
    depth: usize,
    ctx: &mut LCtx,
) -> Result<ProofTree, LpError> {
    let Some((x, f, on_left)) = principal(s) else {
        // Atomic leaf.
        assert!(
            depth <= ctx.stats.goal_cp,
            "branch length exceeds the goal connective count"
        );
        assert_eq!(
            tree.len(),
            s_posl_count(depth, tree),
            "atomic labels correspond to (⇒,l) applications"
        );
        ctx.stats.max_branch_len = ctx.stats.max_branch_len.max(depth);
        ctx.stats.max_labels = ctx.stats.max_labels.max(tree.len());
        ctx.stats.leaf_count += 1;
        ctx.stats.lp_sizes.push(2 * tree.len() + 1);
        let mut leaf = ProofTree::leaf(RuleId::Close, Node::Labelled(s.clone()));
        match success_check(s, tree, ctx.dialect)? {
            LabelOutcome::Success { labellings, .. } => {
                leaf.certificate = Some(ProofCert::Labellings(labellings));
            }
            LabelOutcome::Failure(w) => {
                if ctx.failure.is_none() {
                    ctx.failure = Some(w);
                }
            }
        }
        return Ok(leaf);
    };
    let occ = (x.clone(), f.clone());
    let (rule, premises): (RuleId, Vec<(LabelledSequent, LabelTree)>) = match (&f, on_left) {
        (Formula::True, true) => (RuleId::TL, vec![(replace_occ(s, true, &occ, &[], &[]), tree.clone())]),
        (Formula::True, false) => (RuleId::TR, vec![(replace_occ(s, false, &occ, &[], &[]), tree.clone())]),
        (Formula::Neg(a), true) => (
            RuleId::NegL,
            vec![(
                replace_occ(s, true, &occ, &[], &[(x.clone(), (**a).clone())]),
                tree.clone(),
            )],
        ),
        (Formula::Neg(a), false) => (
            RuleId::NegR,
            vec![(
                replace_occ(s, false, &occ, &[(x.clone(), (**a).clone())], &[]),
                tree.clone(),
            )],
        ),
        (Formula::Plus(a, b), true) => (
            RuleId::PlusL,
            vec![(
                replace_occ(
                    s,
                    true,
                    &occ,
                    &[(x.clone(), (**a).clone()), (x.clone(), (**b).clone())],
                    &[],
                ),
                tree.clone(),
            )],
        ),
        (Formula::Plus(a, b), false) => (
            RuleId::PlusR,
            vec![(
                replace_occ(
                    s,
                    false,
                    &occ,
                    &[],
                    &[(x.clone(), (**a).clone()), (x.clone(), (**b).clone())],
                ),
                tree.clone(),
            )],
        ),
        (Formula::Arrow(a, b), true) => (
            RuleId::ArrowL,
            vec![(
                replace_occ(
                    s,
                    true,
                    &occ,
                    &[(x.clone(), (**b).clone())],
                    &[(x.clone(), (**a).clone())],
                ),
                tree.clone(),
            )],
        ),
        (Formula::Arrow(a, b), false) => (
            RuleId::ArrowR,
            vec![(
                replace_occ(
                    s,
                    false,
                    &occ,
                    &[(x.clone(), (**a).clone())],
                    &[(x.clone(), (**b).clone())],
                ),
                tree.clone(),
            )],
        ),
        (Formula::PosArrow(a, b), true) => {
            // Fresh atomic label below the tip of x.
            let y = ctx.next;
            ctx.next += 1;
            let mut t2 = tree.clone();
            t2.add(y, tree.tip(&x));
            let mut xy = x.clone();
            xy.insert(y);
            (
                RuleId::PosL,
                vec![(
                    replace_occ(
                        s,
                        true,
                        &occ,
                        &[(xy.clone(), (**b).clone())],
                        &[(xy, (**a).clone())],
                    ),
                    t2,
                )],
            )
        }
        (Formula::PosArrow(a, b), false) => (
            RuleId::PosR,
            vec![
                (
                    replace_occ(
                        s,
                        false,
                        &occ,
                        &[(x.clone(), (**a).clone())],
                        &[(x.clone(), (**b).clone())],
                    ),
                    tree.clone(),
                ),
                (replace_occ(s, false, &occ, &[], &[]), tree.clone()),
            ],
        ),
        _ => unreachable!("normalized labelled goals use t, neg, +, ->, =>"),
    };
    let mut subs = Vec::with_capacity(premises.len());
    for (p, t) in &premises {
        subs.push(search_l(p, t, depth + 1, ctx)?);
    }
    Ok(ProofTree::node(rule, Node::Labelled(s.clone()), subs))
}

/// The number of (⇒,l) applications along this branch equals the number of
/// atomic labels in its tree (labels are introduced nowhere else).
fn s_posl_count(_depth: usize, tree: &LabelTree) -> usize {
    tree.len()
}

/// Number of logical-rule applications a formula costs: every node except
/// variables and ⊥ is principal for exactly one rule (including t).
fn rule_budget(f: &Formula) -> usize {
    match f {
        Formula::Var(_) | Formula::Bot => 0,
        Formula::True => 1,
        Formula::Neg(a) | Formula::Tilde(a) => 1 + rule_budget(a),
        Formula::Plus(a, b)
        | Formula::Arrow(a, b)
        | Formula::PosArrow(a, b)
        | Formula::MatArrow(a, b)
        | Formula::EnthArrow(a, b)
        | Formula::OPlus(a, b)
        | Formula::And(a, b)
        | Formula::Or(a, b) => 1 + rule_budget(a) + rule_budget(b),
    }
}

fn normalize_sequent(s: &Sequent, target: CalculusId) -> Result<Sequent, ProveError> {
    let map = |m: &FormulaMultiset| -> Result<FormulaMultiset, ProveError> {
        let mut out = FormulaMultiset::new();
        for (f, n) in m.iter_counts() {
            if !dialect_ok(f, target) {
                return Err(ProveError::Dialect);
            }
            out.insert_n(normalize(f, target)?, n);
        }
        Ok(out)
    };
    Ok(Sequent::new(map(&s.left)?, map(&s.right)?))
}

fn prove_labelled(
    goal: &Sequent,
    target: CalculusId,
) -> Result<(Verdict, LabelStats), ProveError> {
    let d = target.dialect();
    let norm = normalize_sequent(goal, target)?;
    let start = LabelledSequent::from_sequent(&norm);
    let mut ctx = LCtx {
        dialect: d,
        next: 1,
        failure: None,
        stats: LabelStats {
            goal_cp: norm
                .left
                .iter_occurrences()
                .chain(norm.right.iter_occurrences())
                .map(rule_budget)
                .sum(),
            ..LabelStats::default()
        },
    };
    let tree = search_l(&start, &LabelTree::new(), 0, &mut ctx).map_err(ProveError::Lp)?;
    let Some(w) = ctx.failure else {
        return Ok((Verdict::Valid(tree), ctx.stats));
    };
    assert!(!holds_component(&norm, &w, d), "countermodel must refute the goal");
    assert!(!holds_component(goal, &w, d), "normalization preserves values");
    Ok((Verdict::Invalid(w), ctx.stats))
}

pub fn prove_ga_l(goal: &Sequent) -> Result<Verdict, ProveError> {
    Ok(prove_labelled(goal, CalculusId::GaL)?.0)
}

pub fn prove_gl_l(goal: &Sequent) -> Result<Verdict, ProveError> {
    Ok(prove_labelled(goal, CalculusId::GlL)?.0)
}

pub fn prove_ga_l_stats(goal: &Sequent) -> Result<(Verdict, LabelStats), ProveError> {
    prove_labelled(goal, CalculusId::GaL)
}

pub fn prove_gl_l_stats(goal: &Sequent) -> Result<(Verdict, LabelStats), ProveError> {
    prove_labelled(goal, CalculusId::GlL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::rat;
    use crate::structures::parse_labelled_sequent;
    use crate::syntax::parse_formula;

    fn goal(s: &str, d: Dialect) -> Sequent {
        Sequent::goal(parse_formula(s, d).unwrap())
    }

    #[test]
    fn reduction_examples() {
        // n = 0: unchanged.
        let iq = LabelledIneq {
            left: Multiset::singleton((unit_label(), Formula::var("p"))),
            right: Multiset::singleton((unit_label(), Formula::var("q"))),
            strict: true,
        };
        let sys = reduce_label_regular(&[iq], &LabelTree::new()).unwrap();
        assert_eq!(sys.ineqs.len(), 1);

        // n = 1, m = 1: {1:p, x:q > 1:q, x:p} → 3 inequations.
        let s = parse_labelled_sequent("1:p, x1:q |- 1:q, x1:p", Dialect::A).unwrap();
        let mut tree = LabelTree::new();
        tree.add(1, None);
        let iq = LabelledIneq {
            left: s.left,
            right: s.right,
            strict: true,
        };
        let sys = reduce_label_regular(&[iq], &tree).unwrap();
        assert_eq!(sys.ineqs.len(), 3);
        // p + λ > q; q ≥ p + λ; 0 ≥ λ — jointly infeasible.
        assert_eq!(feasible(&sys).unwrap(), None);

        // n = 2 nested chain → 5 inequations.
        let s = parse_labelled_sequent("1:p, x1.x2:q |- x1:p, x1.x2:p", Dialect::A).unwrap();
        let mut tree = LabelTree::new();
        tree.add(1, None);
        tree.add(2, Some(1));
        let iq = LabelledIneq {
            left: s.left,
            right: s.right,
            strict: true,
        };
        let sys = reduce_label_regular(&[iq], &tree).unwrap();
        assert_eq!(sys.ineqs.len(), 5);
    }

    #[test]
    fn subset_star_examples() {
        let ms = |fs: &[Formula]| -> FormulaMultiset { fs.iter().cloned().collect() };
        assert!(subset_star(&ms(&[Formula::var("q")]), &ms(&[Formula::Bot])));
        assert!(subset_star(&ms(&[]), &ms(&[Formula::var("p")])));
        assert!(!subset_star(&ms(&[Formula::var("p")]), &ms(&[])));
    }

    #[test]
    fn paper_example_two_labellings() {
        let g = goal(
            "(p => (p => r)) => ((q => (q => r)) => (p => (q => r)))",
            Dialect::A,
        );
        let (v, _stats) = prove_ga_l_stats(&g).unwrap();
        let t = v.proof().expect("valid");
        // Some leaf certifies with two labelling functions.
        fn leaves(t: &ProofTree, out: &mut Vec<ProofTree>) {
            if t.premises.is_empty() {
                out.push(t.clone());
            }
            for p in &t.premises {
                leaves(p, out);
            }
        }
        let mut ls = Vec::new();
        leaves(t, &mut ls);
        assert!(ls.iter().any(|l| matches!(
            &l.certificate,
            Some(ProofCert::Labellings(fs)) if fs.len() == 2
        )));
    }

    #[test]
    fn labelled_basics() {
        match prove_ga_l(&goal("p", Dialect::A)).unwrap() {
            Verdict::Invalid(w) => assert!(w["p"] < rat(0, 1)),
            v => panic!("expected Invalid, got {v:?}"),
        }
        let id = Sequent::new(
            FormulaMultiset::singleton(Formula::var("a")),
            FormulaMultiset::singleton(Formula::var("a")),
        );
        assert!(prove_ga_l(&id).unwrap().is_valid());
        assert!(prove_gl_l(&goal("bot => p", Dialect::L)).unwrap().is_valid());
        assert!(prove_gl_l(&goal("((p => q) => q) => ((q => p) => p)", Dialect::L))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn agreement_with_hyper() {
        for s in [
            "p => p",
            "p => q",
            "(p => q) \\/ (q => p)",
            "(p /\\ q) => p",
            "p => (p \\/ q)",
            "t",
            "p -> (p + p)",
            "(p + q) -> (q + p)",
        ] {
            let f = parse_formula(s, Dialect::A).unwrap();
            let h = crate::hyper::prove_ga(&Hypersequent::goal(f.clone()))
                .unwrap()
                .is_valid();
            let l = prove_ga_l(&Sequent::goal(f)).unwrap().is_valid();
            assert_eq!(h, l, "{s}");
        }
        for s in [
            "p => p",
            "p o+ ~p",
            "p \\/ ~p",
            "(p => q) \\/ (q => p)",
            "bot => p",
            "p => (p o+ p)",
            "(p o+ p) => p",
        ] {
            let f = parse_formula(s, Dialect::L).unwrap();
            let h = crate::hyper::prove_gl(&Hypersequent::goal(f.clone()))
                .unwrap()
                .is_valid();
            let l = prove_gl_l(&Sequent::goal(f)).unwrap().is_valid();
            assert_eq!(h, l, "{s}");
        }
    }

    #[test]
    fn reduction_matches_labelling_enumeration() {
        // Feasibility of the reduced system must equal consistency over all
        // 2^n labelling functions on random label-regular single inequations.
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for case in 0..60 {
            // Random chain/forest of up to 4 labels.
            let mut tree = LabelTree::new();
            let n = rng.gen_range(0..=4u32);
            for id in 1..=n {
                let parent = if id == 1 || rng.gen_bool(0.4) {
                    None
                } else {
                    Some(rng.gen_range(1..id))
                };
                tree.add(id, parent);
            }
            let vars = ["p", "q", "r"];
            let mk_side = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut m: Multiset<(Label, Formula)> = Multiset::new();
                for _ in 0..rng.gen_range(1..=4) {
                    let v = Formula::var(vars[rng.gen_range(0..vars.len())]);
                    let lab = if n == 0 || rng.gen_bool(0.4) {
                        unit_label()
                    } else {
                        tree.path(rng.gen_range(1..=n))
                    };
                    m.insert((lab, v));
                }
                m
            };
            let iq = LabelledIneq {
                left: mk_side(&mut rng),
                right: mk_side(&mut rng),
                strict: true,
            };
            let sys = reduce_label_regular(&[iq.clone()], &tree).unwrap();
            let reduced_feasible = feasible(&sys).unwrap().is_some();
            // Brute force: ∃v ∀f: Σ v(f(Γ)) > Σ v(f(Δ)).
            let ls = LabelledSequent {
                left: iq.left.clone(),
                right: iq.right.clone(),
                store: FormulaMultiset::new(),
            };
            let mut brute = Vec::new();
            for f in all_labellings(&tree) {
                let seq = ls.apply_labelling(&f);
                let mut coeffs: BTreeMap<String, Rat> = BTreeMap::new();
                for (fo, k) in seq.left.iter_counts() {
                    if let Formula::Var(v) = fo {
                        *coeffs.entry(v.clone()).or_insert_with(Rat::zero) +=
                            Rat::from_integer((k as i64).into());
                    }
                }
                for (fo, k) in seq.right.iter_counts() {
                    if let Formula::Var(v) = fo {
                        *coeffs.entry(v.clone()).or_insert_with(Rat::zero) -=
                            Rat::from_integer((k as i64).into());
                    }
                }
                brute.push(LinIneq::new(coeffs, Rel::Gt, Rat::zero()));
            }
            let brute_feasible = feasible(&LinSystem::from_ineqs(brute)).unwrap().is_some();
            assert_eq!(reduced_feasible, brute_feasible, "case {case}");
        }
    }
}
