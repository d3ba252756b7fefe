//! Terminating focused proof search (GA_t / GŁ_t): the invertible logical
//! phase followed by a structural loop on atomic focused hypersequents using
//! (shift), (EW)/(IW) deletions, (M)/(ID) pair stripping and (S'), with an
//! instrumented termination measure.

use crate::hyper::{
    decompose_step, nested_less, nested_measure, normalize_hyper, s_prime_result, ProveError,
};
use crate::lp::{atomic_valid_a, atomic_valid_l, LpError, Verdict as LpVerdict};
use crate::proof::{Keep, Node, ProofCert, ProofTree, RuleId, Verdict};
use crate::semantics::holds_hyper;
use crate::structures::{
    d_measure, FocusedHypersequent, FormulaMultiset, Hypersequent, Multiset, Sequent,
};
use crate::syntax::{CalculusId, Dialect, Formula};

/// The lexicographic measure (c, n, d, s): connective-count multiset of the
/// compound occurrences, distinct variables including the focus, focus
/// imbalance, symbol count.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct TerminationMeasure {
    pub c: Vec<usize>,
    pub n: usize,
    pub d: usize,
    pub s: usize,
}

pub fn measure(fh: &FocusedHypersequent) -> TerminationMeasure {
    let mut vars = fh.body.variables();
    vars.insert(fh.focus.clone());
    let mut c: Vec<usize> = fh
        .body
        .mc_compound()
        .iter_occurrences()
        .copied()
        .collect();
    c.sort_unstable();
    TerminationMeasure {
        c,
        n: vars.len(),
        d: d_measure(fh),
        s: fh.body.symbols(),
    }
}

/// Strict lexicographic order with the multiset component under the
/// Dershowitz–Manna extension.
pub fn measure_less(a: &TerminationMeasure, b: &TerminationMeasure) -> bool {
    let ma: Multiset<usize> = a.c.iter().copied().collect();
    let mb: Multiset<usize> = b.c.iter().copied().collect();
    if ma != mb {
        return crate::structures::multiset_less(&ma, &mb);
    }
    (a.n, a.d, a.s) < (b.n, b.d, b.s)
}

/// One search edge: the rule applied and the measure of the premise reached.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct TraceEvent {
    pub rule: String,
    pub measure: TerminationMeasure,
    /// Whether the flat (c, n, d, s) measure strictly decreased on this edge.
    pub flat_decreased: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, serde::Serialize)]
pub struct SearchStats {
    pub trace: Vec<TraceEvent>,
    /// Edges on which the flat measure failed to decrease (all of them are
    /// duplicating logical rules; the nested component measure is asserted
    /// instead on every edge).
    pub flat_violations: usize,
    /// (S') applications, all of which must strictly decrease d.
    pub s_prime_count: usize,
}

struct Ctx {
    dialect: Dialect,
    stats: SearchStats,
}

impl Ctx {
    fn edge(&mut self, rule: &RuleId, from: &FocusedHypersequent, to: &FocusedHypersequent) {
        let m_from = measure(from);
        let m_to = measure(to);
        let flat = measure_less(&m_to, &m_from);
        if !flat {
            self.stats.flat_violations += 1;
        }
        if let RuleId::SPrime(_) = rule {
            self.stats.s_prime_count += 1;
            assert!(m_to.d < m_from.d, "(S') must strictly decrease d");
        }
        self.stats.trace.push(TraceEvent {
            rule: rule.to_string(),
            measure: m_to,
            flat_decreased: flat,
        });
    }
}

enum SearchErr {
    Counter(crate::semantics::Valuation),
    Lp(LpError),
}

impl From<LpError> for SearchErr {
    fn from(e: LpError) -> Self {
        SearchErr::Lp(e)
    }
}

fn refocus(fh: &FocusedHypersequent, body: Hypersequent) -> FocusedHypersequent {
    FocusedHypersequent::new(&fh.focus, body)
}

fn node_f(rule: RuleId, fh: &FocusedHypersequent, prems: Vec<ProofTree>) -> ProofTree {
    ProofTree::node(rule, Node::Focused(fh.clone()), prems)
}


/// Proof of a single palindromic component Π ⊢ Π under the focus, by
/// (M)/(ID)/(Λ).
fn prove_pi_f(pi: &FormulaMultiset, focus: &str) -> ProofTree {
    let fh = FocusedHypersequent::new(
        focus,
        Hypersequent::single(Sequent::new(pi.clone(), pi.clone())),
    );
    if pi.is_empty() {
        return ProofTree::leaf(RuleId::Lam, Node::Focused(fh));
    }
    if pi.len() == 1 {
        return ProofTree::leaf(RuleId::Id, Node::Focused(fh));
    }
    let a = pi.iter_occurrences().next().unwrap().clone();
    let single = FormulaMultiset::singleton(a.clone());
    let mut rest = pi.clone();
    rest.remove_one(&a);
    let id_leaf = ProofTree::leaf(
        RuleId::Id,
        Node::Focused(FocusedHypersequent::new(
            focus,
            Hypersequent::single(Sequent::new(single.clone(), single)),
        )),
    );
    ProofTree::node(
        RuleId::Mingle,
        Node::Focused(fh),
        vec![id_leaf, prove_pi_f(&rest, focus)],
    )
}

/// Proof of `body` (containing `target`) by weakening every other component
/// away and closing `target` with `close`.
fn ew_chain(fh: &FocusedHypersequent, target: &Sequent, close: ProofTree) -> ProofTree {
    let others: Vec<Sequent> = {
        let mut m = fh.body.comps.clone();
        m.remove_one(target);
        m.iter_occurrences().cloned().collect()
    };
    let mut tree = close;
    let mut cur = Hypersequent::single(target.clone());
    for c in others {
        cur = cur.replace(&[], &[c.clone()]);
        tree = ProofTree::node(
            RuleId::Ew,
            Node::Focused(refocus(fh, cur.clone())),
            vec![tree],
        );
    }
    // The accumulated body equals fh.body up to multiset identity.
    debug_assert_eq!(cur, fh.body);
    tree
}

fn atomic_valid(body: &Hypersequent, dialect: Dialect) -> Result<LpVerdict, LpError> {
    match dialect {
        Dialect::A => atomic_valid_a(body),
        Dialect::L => atomic_valid_l(body),
    }
}

/// Structural loop on an atomic, semantically valid focused hypersequent.
fn structural(fh: &FocusedHypersequent, ctx: &mut Ctx) -> Result<ProofTree, SearchErr> {
    let p = Formula::Var(fh.focus.clone());
    let comps = fh.body.components();

    // 1. A palindromic component closes the whole hypersequent.
    if let Some(c) = comps.iter().find(|c| c.left == c.right) {
        return Ok(ew_chain(fh, c, prove_pi_f(&c.left, &fh.focus)));
    }

    let p_occurs = comps
        .iter()
        .any(|c| c.left.contains(&p) || c.right.contains(&p));

    if !p_occurs {
        // 2. Focus absent: shift to the smallest occurring variable, or
        //    handle the variable-free (⊥-only) case.
        let vars = fh.body.variables();
        if let Some(q) = vars.iter().next() {
            let prem = FocusedHypersequent::new(q, fh.body.clone());
            ctx.edge(&RuleId::Shift(q.clone()), fh, &prem);
            let sub = structural(&prem, ctx)?;
            return Ok(node_f(RuleId::Shift(q.clone()), fh, vec![sub]));
        }
        // No variables at all: only ⊥ occurrences remain (bounded dialect;
        // in the group dialect a variable-free atomic component is empty and
        // case 1 has already fired).
        assert_eq!(ctx.dialect, Dialect::L, "group leaves are palindromic here");
        let c = comps
            .iter()
            .find(|c| c.left.count(&Formula::Bot) >= c.right.count(&Formula::Bot))
            .expect("a valid bot-only leaf has a holding component");
        return Ok(ew_chain(fh, c, bots_proof(c, &fh.focus)));
    }

    // 3a. Some component carries the focus on both sides: strip one pair
    //     with (M), closing the split-off p ⊢ p part by (EW)*/(ID).
    if let Some(c) = comps
        .iter()
        .find(|c| c.left.contains(&p) && c.right.contains(&p))
    {
        let g = {
            let mut m = fh.body.comps.clone();
            m.remove_one(c);
            m
        };
        let pid = Sequent::new(
            FormulaMultiset::singleton(p.clone()),
            FormulaMultiset::singleton(p.clone()),
        );
        let mut stripped = c.clone();
        stripped.left.remove_one(&p);
        stripped.right.remove_one(&p);
        let prem1 = refocus(fh, Hypersequent::new(g.union(&Multiset::singleton(pid.clone()))));
        let prem2 = refocus(fh, Hypersequent::new(g.union(&Multiset::singleton(stripped))));
        ctx.edge(&RuleId::Mingle, fh, &prem2);
        let left_tree = ew_chain(
            &prem1,
            &pid,
            ProofTree::leaf(
                RuleId::Id,
                Node::Focused(FocusedHypersequent::new(
                    &fh.focus,
                    Hypersequent::single(pid.clone()),
                )),
            ),
        );
        let right_tree = structural(&prem2, ctx)?;
        return Ok(node_f(RuleId::Mingle, fh, vec![left_tree, right_tree]));
    }

    // 3b. Every component is one-sided in the focus.
    let lefts: Vec<&Sequent> = comps.iter().filter(|c| c.left.contains(&p)).collect();
    let rights: Vec<&Sequent> = comps.iter().filter(|c| c.right.contains(&p)).collect();
    match (lefts.first(), rights.first()) {
        (Some(c1), Some(c2)) => {
            // Two-sided: apply (S'), choosing the kept component so that the
            // premise stays valid (one of the two choices always does).
            for keep in [Keep::First, Keep::Second] {
                let body = s_prime_result(&fh.body, &fh.focus, c1, c2, keep)
                    .expect("(S') side conditions hold for one-sided components");
                if atomic_valid(&body, ctx.dialect)?.is_valid() {
                    let prem = refocus(fh, body);
                    ctx.edge(&RuleId::SPrime(keep), fh, &prem);
                    let sub = structural(&prem, ctx)?;
                    return Ok(node_f(RuleId::SPrime(keep), fh, vec![sub]));
                }
            }
            unreachable!("some (S') keep-choice preserves validity");
        }
        (Some(c1), None) => {
            match ctx.dialect {
                Dialect::A => {
                    // One-sided surplus: the component can be weakened away.
                    assert!(fh.body.comps.len() > 1, "single surplus component is refutable");
                    let prem = refocus(fh, fh.body.replace(&[c1], &[]));
                    ctx.edge(&RuleId::Ew, fh, &prem);
                    let sub = structural(&prem, ctx)?;
                    Ok(node_f(RuleId::Ew, fh, vec![sub]))
                }
                Dialect::L => {
                    // Bounded: drop a single left focus occurrence by (IW).
                    let mut thin = (*c1).clone();
                    thin.left.remove_one(&p);
                    let prem = refocus(fh, fh.body.replace(&[c1], &[thin]));
                    ctx.edge(&RuleId::Iw, fh, &prem);
                    let sub = structural(&prem, ctx)?;
                    Ok(node_f(RuleId::Iw, fh, vec![sub]))
                }
            }
        }
        (None, Some(c2)) => match ctx.dialect {
            Dialect::A => {
                assert!(fh.body.comps.len() > 1, "single surplus component is refutable");
                let prem = refocus(fh, fh.body.replace(&[c2], &[]));
                ctx.edge(&RuleId::Ew, fh, &prem);
                let sub = structural(&prem, ctx)?;
                Ok(node_f(RuleId::Ew, fh, vec![sub]))
            }
            Dialect::L => {
                // Right-sided surplus cannot be removed within the bounds;
                // close semantically, re-certifying with the lp kernel.
                match atomic_valid_l(&fh.body)? {
                    LpVerdict::Valid(crate::lp::Certificate::Infeasible(sys)) => {
                        let mut leaf =
                            ProofTree::leaf(RuleId::Close, Node::Focused(fh.clone()));
                        leaf.certificate = Some(ProofCert::Infeasible(sys.dump()));
                        Ok(leaf)
                    }
                    _ => unreachable!("leaf was certified valid"),
                }
            }
        },
        (None, None) => unreachable!("focus occurs"),
    }
}

/// Derivation of a ⊥-only component k·⊥ ⊢ j·⊥ with k ≥ j: (M)/(ID) strips
/// pairs, (IW) removes the excess, (Λ) closes.
fn bots_proof(c: &Sequent, focus: &str) -> ProofTree {
    let k = c.left.count(&Formula::Bot);
    let j = c.right.count(&Formula::Bot);
    assert!(k >= j && c.left.len() == k && c.right.len() == j);
    let fh = FocusedHypersequent::new(focus, Hypersequent::single(c.clone()));
    if j > 0 {
        let pid = Sequent::new(
            FormulaMultiset::singleton(Formula::Bot),
            FormulaMultiset::singleton(Formula::Bot),
        );
        let mut rest = c.clone();
        rest.left.remove_one(&Formula::Bot);
        rest.right.remove_one(&Formula::Bot);
        let id_leaf = ProofTree::leaf(
            RuleId::Id,
            Node::Focused(FocusedHypersequent::new(focus, Hypersequent::single(pid))),
        );
        return ProofTree::node(
            RuleId::Mingle,
            Node::Focused(fh),
            vec![id_leaf, bots_proof(&rest, focus)],
        );
    }
    if k > 0 {
        let mut rest = c.clone();
        rest.left.remove_one(&Formula::Bot);
        return ProofTree::node(
            RuleId::Iw,
            Node::Focused(fh),
            vec![bots_proof(&rest, focus)],
        );
    }
    ProofTree::leaf(RuleId::Lam, Node::Focused(fh))
}

fn search_t(fh: &FocusedHypersequent, ctx: &mut Ctx) -> Result<ProofTree, SearchErr> {
    match decompose_step(&fh.body) {
        Some((rule, bodies)) => {
            let m0 = nested_measure(&fh.body);
            let mut subs = Vec::with_capacity(bodies.len());
            for b in &bodies {
                assert!(
                    nested_less(&nested_measure(b), &m0),
                    "logical step must shrink the nested measure"
                );
                let prem = refocus(fh, b.clone());
                ctx.edge(&rule, fh, &prem);
                subs.push(search_t(&prem, ctx)?);
            }
            Ok(node_f(rule, fh, subs))
        }
        None => match atomic_valid(&fh.body, ctx.dialect)? {
            LpVerdict::Invalid(w) => Err(SearchErr::Counter(w)),
            LpVerdict::Valid(_) => structural(fh, ctx),
        },
    }
}

fn prove_t(
    fg: &FocusedHypersequent,
    target: CalculusId,
) -> Result<(Verdict, SearchStats), ProveError> {
    let d = target.dialect();
    let body = normalize_hyper(&fg.body, target)?;
    let fh = FocusedHypersequent::new(&fg.focus, body);
    let mut ctx = Ctx {
        dialect: d,
        stats: SearchStats::default(),
    };
    let out = match search_t(&fh, &mut ctx) {
        Ok(t) => Verdict::Valid(t),
        Err(SearchErr::Counter(w)) => {
            assert!(!holds_hyper(&fh.body, &w, d));
            assert!(!holds_hyper(&fg.body, &w, d));
            Verdict::Invalid(w)
        }
        Err(SearchErr::Lp(e)) => return Err(ProveError::Lp(e)),
    };
    Ok((out, ctx.stats))
}

pub fn prove_ga_t(fg: &FocusedHypersequent) -> Result<Verdict, ProveError> {
    Ok(prove_t(fg, CalculusId::GaT)?.0)
}

pub fn prove_gl_t(fg: &FocusedHypersequent) -> Result<Verdict, ProveError> {
    Ok(prove_t(fg, CalculusId::GlT)?.0)
}

pub fn prove_ga_t_traced(
    fg: &FocusedHypersequent,
) -> Result<(Verdict, SearchStats), ProveError> {
    prove_t(fg, CalculusId::GaT)
}

pub fn prove_gl_t_traced(
    fg: &FocusedHypersequent,
) -> Result<(Verdict, SearchStats), ProveError> {
    prove_t(fg, CalculusId::GlT)
}

/// Explicit (S') application with full side-condition checking.
pub fn apply_s_prime(
    fg: &FocusedHypersequent,
    comp1: &Sequent,
    comp2: &Sequent,
    keep: Keep,
) -> Result<FocusedHypersequent, String> {
    if fg.body.comps.count(comp1) == 0 {
        return Err("first component not in the hypersequent".to_string());
    }
    if comp1 == comp2 {
        if fg.body.comps.count(comp1) < 2 {
            return Err("need two occurrences of the component".to_string());
        }
    } else if fg.body.comps.count(comp2) == 0 {
        return Err("second component not in the hypersequent".to_string());
    }
    let body = s_prime_result(&fg.body, &fg.focus, comp1, comp2, keep)
        .ok_or_else(|| "(S') side conditions violated".to_string())?;
    let out = FocusedHypersequent::new(&fg.focus, body);
    assert!(d_measure(&out) < d_measure(fg), "(S') strictly decreases d");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::check_proof;
    use crate::proof::parse_goal;
    use crate::semantics::rat;
    use crate::structures::parse_hypersequent;

    fn fgoal(focus: &str, s: &str, d: Dialect) -> FocusedHypersequent {
        FocusedHypersequent::new(focus, parse_goal(s, d).unwrap())
    }

    #[test]
    fn paper_trace_example() {
        let fg = fgoal("q", "((q+q+q) /\\ (p+p+p)) -> (p+q+q)", Dialect::A);
        let (v, stats) = prove_ga_t_traced(&fg).unwrap();
        let t = v.proof().expect("valid");
        assert!(check_proof(t, CalculusId::GaT), "{}", t.render());
        // The trace must contain the n=1, m=2 (S') step.
        assert!(stats.s_prime_count >= 1);
        assert!(stats
            .trace
            .iter()
            .any(|e| e.rule.starts_with("S'")), "{stats:?}");
    }

    #[test]
    fn focused_basics() {
        match prove_ga_t(&fgoal("p", "p", Dialect::A)).unwrap() {
            Verdict::Invalid(w) => assert!(w["p"] < rat(0, 1)),
            v => panic!("expected Invalid, got {v:?}"),
        }
        let v = prove_ga_t(&FocusedHypersequent::new(
            "p",
            parse_hypersequent("p |- p", Dialect::A).unwrap(),
        ))
        .unwrap();
        assert!(check_proof(v.proof().unwrap(), CalculusId::GaT));
    }

    #[test]
    fn bounded_focused() {
        let v = prove_gl_t(&fgoal(
            "p",
            "((p => q) => q) => ((q => p) => p)",
            Dialect::L,
        ))
        .unwrap();
        assert!(check_proof(v.proof().expect("valid"), CalculusId::GlT));
        let v = prove_gl_t(&FocusedHypersequent::new(
            "p",
            parse_hypersequent("bot |- p", Dialect::L).unwrap(),
        ))
        .unwrap();
        assert!(check_proof(v.proof().expect("valid"), CalculusId::GlT));
        match prove_gl_t(&fgoal("p", "p \\/ (p => bot)", Dialect::L)).unwrap() {
            Verdict::Invalid(w) => assert_eq!(w["p"], rat(-1, 2)),
            v => panic!("expected Invalid, got {v:?}"),
        }
    }

    #[test]
    fn s_prime_side_conditions() {
        let fg = FocusedHypersequent::new(
            "p",
            parse_hypersequent("q |- p | p, p |- q, q", Dialect::A).unwrap(),
        );
        let c1 = parse_hypersequent("p, p |- q, q", Dialect::A).unwrap().components()[0].clone();
        let c2 = parse_hypersequent("q |- p", Dialect::A).unwrap().components()[0].clone();
        let out = apply_s_prime(&fg, &c1, &c2, Keep::Second).unwrap();
        // n=2 focus-left in c1, m=1 focus-right in c2:
        // merge = 1·(p,p-part Γ₁) + 2·Γ₂ ⊢ …, keeping c2.
        let expect = parse_hypersequent("q, q |- q, q | q |- p", Dialect::A).unwrap();
        assert_eq!(out.body, expect);

        // Violated side condition: focus on both sides of comp1.
        let fg2 = FocusedHypersequent::new(
            "p",
            parse_hypersequent("p |- p, q | q |- p", Dialect::A).unwrap(),
        );
        let b1 = parse_hypersequent("p |- p, q", Dialect::A).unwrap().components()[0].clone();
        let b2 = parse_hypersequent("q |- p", Dialect::A).unwrap().components()[0].clone();
        assert!(apply_s_prime(&fg2, &b1, &b2, Keep::First).is_err());
    }

    #[test]
    fn agreement_with_hyper_search() {
        for (s, d) in [
            ("(a -> b) \\/ (b -> a)", Dialect::A),
            ("a -> (a + a)", Dialect::A),
            ("t -> (a -> a)", Dialect::A),
            ("(a /\\ b) -> a", Dialect::A),
            ("a -> (a \\/ b)", Dialect::A),
        ] {
            let g = parse_goal(s, d).unwrap();
            let h = crate::hyper::prove_ga(&g).unwrap().is_valid();
            let t = prove_ga_t(&FocusedHypersequent::new("p", g)).unwrap().is_valid();
            assert_eq!(h, t, "{s}");
        }
        for s in [
            "p => p",
            "p o+ ~p",
            "p \\/ ~p",
            "(p => q) \\/ (q => p)",
            "bot => p",
        ] {
            let g = parse_goal(s, Dialect::L).unwrap();
            let h = crate::hyper::prove_gl(&g).unwrap().is_valid();
            let t = prove_gl_t(&FocusedHypersequent::new("z", g)).unwrap().is_valid();
            assert_eq!(h, t, "{s}");
        }
    }
}
