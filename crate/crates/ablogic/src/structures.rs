//! Sequent-level data structures: multisets, (hyper)sequents, focused
//! hypersequents, labelled sequents and the associated complexity measures.

use crate::syntax::{parse_formula_opts, render_formula, Dialect, Formula, SyntaxError};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

// ---------------------------------------------------------------------------
// Multisets
// ---------------------------------------------------------------------------

/// Finite multiset with deterministic (ordered) iteration.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> Default for Multiset<T> {
    fn default() -> Self {
        Multiset {
            counts: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: T) -> Self {
        let mut m = Self::new();
        m.insert(x);
        m
    }

    pub fn from_iter<I: IntoIterator<Item = T>>(it: I) -> Self {
        let mut m = Self::new();
        for x in it {
            m.insert(x);
        }
        m
    }

    pub fn insert(&mut self, x: T) {
        *self.counts.entry(x).or_insert(0) += 1;
    }

    pub fn insert_n(&mut self, x: T, n: usize) {
        if n > 0 {
            *self.counts.entry(x).or_insert(0) += n;
        }
    }

    /// Removes one occurrence; panics if absent.
    pub fn remove_one(&mut self, x: &T) {
        match self.counts.get_mut(x) {
            Some(c) if *c > 1 => {
                *c -= 1;
            }
            Some(_) => {
                self.counts.remove(x);
            }
            None => panic!("remove_one: element not in multiset"),
        }
    }

    pub fn count(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.count(x) > 0
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total number of occurrences.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    /// Number of distinct elements.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn iter_counts(&self) -> impl Iterator<Item = (&T, usize)> {
        self.counts.iter().map(|(k, v)| (k, *v))
    }

    pub fn iter_occurrences(&self) -> impl Iterator<Item = &T> {
        self.counts
            .iter()
            .flat_map(|(k, v)| std::iter::repeat(k).take(*v))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (k, v) in other.iter_counts() {
            m.insert_n(k.clone(), v);
        }
        m
    }

    /// Multiset difference; panics if `other` is not included in `self`.
    pub fn minus(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for (k, v) in other.iter_counts() {
            let have = m.count(k);
            assert!(have >= v, "minus: not a submultiset");
            if have == v {
                m.counts.remove(k);
            } else {
                *m.counts.get_mut(k).unwrap() -= v;
            }
        }
        m
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter_counts().all(|(k, v)| other.count(k) >= v)
    }

    pub fn scale(&self, n: usize) -> Self {
        let mut m = Self::new();
        for (k, v) in self.iter_counts() {
            m.insert_n(k.clone(), v * n);
        }
        m
    }
}

impl<T: Ord + Clone> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(it: I) -> Self {
        Multiset::from_iter(it)
    }
}

/// Dershowitz–Manna strict multiset extension of `<` on naturals:
/// `a < b` iff `a != b` and every element of `a \ b` is strictly below some
/// element of `b \ a`.
pub fn multiset_less(a: &Multiset<usize>, b: &Multiset<usize>) -> bool {
    multiset_less_by(a, b, |x, y| x < y)
}

/// Dershowitz–Manna extension over an arbitrary (possibly partial) strict
/// order on the elements.
pub fn multiset_less_by<T: Ord + Clone>(
    a: &Multiset<T>,
    b: &Multiset<T>,
    lt: impl Fn(&T, &T) -> bool,
) -> bool {
    if a == b {
        return false;
    }
    let mut a_only: Vec<&T> = Vec::new();
    let mut b_only: Vec<&T> = Vec::new();
    let keys: BTreeSet<&T> = a
        .iter_counts()
        .map(|(k, _)| k)
        .chain(b.iter_counts().map(|(k, _)| k))
        .collect();
    for k in keys {
        let ca = a.count(k);
        let cb = b.count(k);
        if ca > cb {
            a_only.extend(std::iter::repeat(k).take(ca - cb));
        } else if cb > ca {
            b_only.extend(std::iter::repeat(k).take(cb - ca));
        }
    }
    if b_only.is_empty() {
        return false;
    }
    a_only
        .iter()
        .all(|x| b_only.iter().any(|y| lt(x, y)))
}

// ---------------------------------------------------------------------------
// Sequents and hypersequents
// ---------------------------------------------------------------------------

pub type FormulaMultiset = Multiset<Formula>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Sequent {
    pub left: FormulaMultiset,
    pub right: FormulaMultiset,
}

impl Sequent {
    pub fn new(left: FormulaMultiset, right: FormulaMultiset) -> Self {
        Sequent { left, right }
    }

    pub fn goal(f: Formula) -> Self {
        Sequent {
            left: Multiset::new(),
            right: Multiset::singleton(f),
        }
    }

    pub fn is_atomic(&self) -> bool {
        self.left.iter_counts().all(|(f, _)| f.is_atomic())
            && self.right.iter_counts().all(|(f, _)| f.is_atomic())
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// Merge two components pointwise (the two-premise mingle reading).
    pub fn merge(&self, other: &Sequent) -> Sequent {
        Sequent {
            left: self.left.union(&other.left),
            right: self.right.union(&other.right),
        }
    }

    /// Multiset of connective counts of all formula occurrences.
    pub fn mc(&self) -> Multiset<usize> {
        self.left
            .iter_occurrences()
            .chain(self.right.iter_occurrences())
            .map(|f| f.cp())
            .collect()
    }

    /// Number of symbols (formula occurrences weighted by size).
    pub fn symbols(&self) -> usize {
        self.left
            .iter_occurrences()
            .chain(self.right.iter_occurrences())
            .map(|f| f.size())
            .sum()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.left.iter_occurrences().chain(self.right.iter_occurrences()) {
            f.variables(&mut out);
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Hypersequent {
    /// Non-empty multiset of components.
    pub comps: Multiset<Sequent>,
}

impl Hypersequent {
    pub fn new(comps: Multiset<Sequent>) -> Self {
        assert!(!comps.is_empty(), "hypersequent must have a component");
        Hypersequent { comps }
    }

    pub fn single(s: Sequent) -> Self {
        Hypersequent {
            comps: Multiset::singleton(s),
        }
    }

    pub fn goal(f: Formula) -> Self {
        Self::single(Sequent::goal(f))
    }

    pub fn is_atomic(&self) -> bool {
        self.comps.iter_counts().all(|(c, _)| c.is_atomic())
    }

    pub fn mc(&self) -> Multiset<usize> {
        let mut m = Multiset::new();
        for c in self.comps.iter_occurrences() {
            for f in c.left.iter_occurrences().chain(c.right.iter_occurrences()) {
                m.insert(f.cp());
            }
        }
        m
    }

    /// `mc` restricted to non-atomic formula occurrences.
    pub fn mc_compound(&self) -> Multiset<usize> {
        let mut m = Multiset::new();
        for c in self.comps.iter_occurrences() {
            for f in c.left.iter_occurrences().chain(c.right.iter_occurrences()) {
                if !f.is_atomic() {
                    m.insert(f.cp());
                }
            }
        }
        m
    }

    pub fn symbols(&self) -> usize {
        self.comps.iter_occurrences().map(|c| c.symbols()).sum()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for c in self.comps.iter_occurrences() {
            out.extend(c.variables());
        }
        out
    }

    pub fn components(&self) -> Vec<Sequent> {
        self.comps.iter_occurrences().cloned().collect()
    }

    pub fn replace(&self, remove: &[&Sequent], add: &[Sequent]) -> Hypersequent {
        let mut comps = self.comps.clone();
        for r in remove {
            comps.remove_one(r);
        }
        for a in add {
            comps.insert(a.clone());
        }
        Hypersequent::new(comps)
    }
}

/// A hypersequent with a distinguished focus variable, the state of the
/// terminating proof search.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FocusedHypersequent {
    pub focus: String,
    pub body: Hypersequent,
}

impl FocusedHypersequent {
    pub fn new(focus: &str, body: Hypersequent) -> Self {
        FocusedHypersequent {
            focus: focus.to_string(),
            body,
        }
    }
}

/// Occurrence-count distance of the focus variable: the sum over components
/// of |count(left, p) - count(right, p)| for p the focus, counting only
/// top-level atomic occurrences.
pub fn d_measure(fh: &FocusedHypersequent) -> usize {
    let p = Formula::Var(fh.focus.clone());
    fh.body
        .comps
        .iter_occurrences()
        .map(|c| {
            let l = c.left.count(&p);
            let r = c.right.count(&p);
            l.abs_diff(r)
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Labelled sequents
// ---------------------------------------------------------------------------

/// A label is a set of atomic-label identifiers; the empty set is the unit
/// label `1`.
pub type Label = BTreeSet<u32>;

pub fn unit_label() -> Label {
    BTreeSet::new()
}

pub fn label_name(id: u32) -> String {
    format!("x{id}")
}

pub fn render_label(l: &Label) -> String {
    if l.is_empty() {
        "1".to_string()
    } else {
        l.iter()
            .map(|i| label_name(*i))
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Forest of atomic labels: each atomic label has an optional parent; roots
/// hang off the unit label. A label occurring in a label-regular sequent is
/// always the set of atomic labels on a path from the unit.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LabelTree {
    pub parent: BTreeMap<u32, Option<u32>>,
}

impl LabelTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, id: u32, parent: Option<u32>) {
        if let Some(p) = parent {
            assert!(self.parent.contains_key(&p), "parent label must exist");
        }
        let prev = self.parent.insert(id, parent);
        assert!(prev.is_none(), "duplicate atomic label");
    }

    pub fn contains(&self, id: u32) -> bool {
        self.parent.contains_key(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.parent.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// The path-closure of atomic label `id`: the label denoting it.
    pub fn path(&self, id: u32) -> Label {
        let mut out = BTreeSet::new();
        let mut cur = Some(id);
        while let Some(c) = cur {
            out.insert(c);
            cur = *self.parent.get(&c).expect("label in tree");
        }
        out
    }

    /// Checks that `l` is a path from the unit.
    pub fn is_path(&self, l: &Label) -> bool {
        if l.is_empty() {
            return true;
        }
        // The path of its deepest element must equal l. Deepest = the element
        // whose path has maximal size.
        l.iter()
            .any(|id| self.contains(*id) && &self.path(*id) == l)
    }

    /// Children of the unit label (maximal atomic labels for the reduction).
    pub fn roots(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .parent
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|(k, _)| *k)
            .collect();
        v.sort_unstable();
        v
    }

    /// Removes atomic label `id`, re-rooting its children.
    pub fn remove_root(&mut self, id: u32) {
        assert_eq!(self.parent.get(&id), Some(&None), "must be a root");
        self.parent.remove(&id);
        for (_, p) in self.parent.iter_mut() {
            if *p == Some(id) {
                *p = None;
            }
        }
    }

    /// Deepest element of a path-label (the atomic label the path names).
    pub fn tip(&self, l: &Label) -> Option<u32> {
        l.iter()
            .copied()
            .max_by_key(|id| self.path(*id).len())
    }
}

/// A labelling function assigns 0/1 to every atomic label; extended to a
/// label set by conjunction and to the unit label by 1.
pub type Labelling = BTreeMap<u32, bool>;

pub fn labelling_selects(f: &Labelling, l: &Label) -> bool {
    l.iter().all(|id| *f.get(id).unwrap_or(&false))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LabelledSequent {
    pub left: Multiset<(Label, Formula)>,
    pub right: Multiset<(Label, Formula)>,
    /// Side store used by the proof-carrying labelled search; empty elsewhere.
    pub store: FormulaMultiset,
}

impl LabelledSequent {
    pub fn from_sequent(s: &Sequent) -> Self {
        LabelledSequent {
            left: s
                .left
                .iter_occurrences()
                .map(|f| (unit_label(), f.clone()))
                .collect(),
            right: s
                .right
                .iter_occurrences()
                .map(|f| (unit_label(), f.clone()))
                .collect(),
            store: Multiset::new(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        self.left.iter_counts().all(|((_, f), _)| f.is_atomic())
            && self.right.iter_counts().all(|((_, f), _)| f.is_atomic())
    }

    /// Applies a labelling function: keeps the formulas whose label is
    /// selected, dropping labels.
    pub fn apply_labelling(&self, f: &Labelling) -> Sequent {
        let mut s = Sequent::default();
        for ((l, fo), n) in self.left.iter_counts() {
            if labelling_selects(f, l) {
                s.left.insert_n(fo.clone(), n);
            }
        }
        for ((l, fo), n) in self.right.iter_counts() {
            if labelling_selects(f, l) {
                s.right.insert_n(fo.clone(), n);
            }
        }
        s
    }

    /// Drops every label (and the store), yielding the underlying sequent.
    pub fn unlabelled(&self) -> Sequent {
        let mut s = Sequent::default();
        for ((_, fo), n) in self.left.iter_counts() {
            s.left.insert_n(fo.clone(), n);
        }
        for ((_, fo), n) in self.right.iter_counts() {
            s.right.insert_n(fo.clone(), n);
        }
        s
    }

    pub fn atomic_labels(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for ((l, _), _) in self.left.iter_counts().chain(self.right.iter_counts()) {
            out.extend(l.iter().copied());
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Rendering and parsing of sequent notation
// ---------------------------------------------------------------------------

fn render_side(m: &FormulaMultiset) -> String {
    m.iter_occurrences()
        .map(render_formula)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        s.push_str(&render_side(&self.left));
        if !self.left.is_empty() {
            s.push(' ');
        }
        s.push_str("|-");
        if !self.right.is_empty() {
            s.push(' ');
            s.push_str(&render_side(&self.right));
        }
        write!(f, "{s}")
    }
}

impl fmt::Display for Hypersequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter_occurrences()
            .map(|c| c.to_string())
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

impl fmt::Display for FocusedHypersequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.focus, self.body)
    }
}

impl fmt::Display for LabelledSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &Multiset<(Label, Formula)>| {
            m.iter_occurrences()
                .map(|(l, fo)| format!("{}:{}", render_label(l), render_formula(fo)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = side(&self.left);
        if !self.store.is_empty() {
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str("|| ");
            s.push_str(&render_side(&self.store));
        }
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str("|-");
        let r = side(&self.right);
        if !r.is_empty() {
            s.push(' ');
            s.push_str(&r);
        }
        write!(f, "{s}")
    }
}

/// Parses `Γ |- Δ | Γ' |- Δ' | ...` where each side is a comma-separated
/// list of formulas (possibly empty).
pub fn parse_hypersequent(input: &str, dialect: Dialect) -> Result<Hypersequent, SyntaxError> {
    parse_hypersequent_opts(input, dialect, false)
}

pub(crate) fn parse_hypersequent_opts(
    input: &str,
    dialect: Dialect,
    allow_reserved: bool,
) -> Result<Hypersequent, SyntaxError> {
    // Split components on '|' that is not part of "|-"; split sides on "|-".
    let mut comps: Vec<&str> = Vec::new();
    let bytes = input.as_bytes();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i] == b'|' && (i + 1 >= bytes.len() || bytes[i + 1] != b'-') {
            comps.push(&input[start..i]);
            start = i + 1;
            i += 1;
        } else if bytes[i] == b'|' {
            i += 2;
        } else {
            i += 1;
        }
    }
    comps.push(&input[start..]);
    let mut out = Multiset::new();
    for comp in comps {
        out.insert(parse_component(comp, dialect, allow_reserved)?);
    }
    Ok(Hypersequent::new(out))
}

fn parse_component(s: &str, dialect: Dialect, allow_reserved: bool) -> Result<Sequent, SyntaxError> {
    let parts: Vec<&str> = s.split("|-").collect();
    if parts.len() != 2 {
        return Err(SyntaxError::Parse {
            pos: 0,
            msg: format!("component {s:?} must contain exactly one |-"),
        });
    }
    Ok(Sequent {
        left: parse_formula_list(parts[0], dialect, allow_reserved)?,
        right: parse_formula_list(parts[1], dialect, allow_reserved)?,
    })
}

fn parse_formula_list(
    s: &str,
    dialect: Dialect,
    allow_reserved: bool,
) -> Result<FormulaMultiset, SyntaxError> {
    let mut out = Multiset::new();
    // Split on commas at paren depth 0.
    let mut depth = 0i32;
    let mut start = 0usize;
    let bytes = s.as_bytes();
    let mut pieces = Vec::new();
    for (i, b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                pieces.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&s[start..]);
    for p in pieces {
        if p.trim().is_empty() {
            continue;
        }
        out.insert(parse_formula_opts(p.trim(), dialect, allow_reserved)?);
    }
    Ok(out)
}

/// Parses a labelled sequent in the rendered notation
/// `x1.x2:A, 1:B || C |- 1:D`.
pub fn parse_labelled_sequent(
    input: &str,
    dialect: Dialect,
) -> Result<LabelledSequent, SyntaxError> {
    let parts: Vec<&str> = input.split("|-").collect();
    if parts.len() != 2 {
        return Err(SyntaxError::Parse {
            pos: 0,
            msg: "labelled sequent must contain exactly one |-".to_string(),
        });
    }
    let (lhs, store) = match parts[0].split_once("||") {
        Some((l, st)) => (l, Some(st)),
        None => (parts[0], None),
    };
    let mut out = LabelledSequent::default();
    parse_labelled_side(lhs, dialect, &mut out.left)?;
    parse_labelled_side(parts[1], dialect, &mut out.right)?;
    if let Some(st) = store {
        out.store = parse_formula_list(st, dialect, true)?;
    }
    Ok(out)
}

fn parse_labelled_side(
    s: &str,
    dialect: Dialect,
    out: &mut Multiset<(Label, Formula)>,
) -> Result<(), SyntaxError> {
    let mut depth = 0i32;
    let mut start = 0usize;
    let bytes = s.as_bytes();
    let mut pieces = Vec::new();
    for (i, b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                pieces.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&s[start..]);
    for p in pieces {
        let p = p.trim();
        if p.is_empty() {
            continue;
        }
        let (lab, fo) = p.split_once(':').ok_or(SyntaxError::Parse {
            pos: 0,
            msg: format!("labelled formula {p:?} must be label:formula"),
        })?;
        let mut label = unit_label();
        let lab = lab.trim();
        if lab != "1" {
            for piece in lab.split('.') {
                let piece = piece.trim();
                let id: u32 = piece
                    .strip_prefix('x')
                    .and_then(|d| d.parse().ok())
                    .ok_or(SyntaxError::Parse {
                        pos: 0,
                        msg: format!("bad atomic label {piece:?}"),
                    })?;
                label.insert(id);
            }
        }
        out.insert((label, parse_formula_opts(fo.trim(), dialect, true)?));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn ms(v: &[usize]) -> Multiset<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn multiset_less_examples() {
        // Strict submultiset.
        assert!(multiset_less(&ms(&[1]), &ms(&[1, 1])));
        // Replace one big element by many smaller ones.
        assert!(multiset_less(&ms(&[0, 0, 0, 2]), &ms(&[3])));
        assert!(multiset_less(&ms(&[1, 1, 1]), &ms(&[2])));
        // Not less.
        assert!(!multiset_less(&ms(&[2]), &ms(&[1, 1, 1])));
        assert!(!multiset_less(&ms(&[1]), &ms(&[1])));
        assert!(!multiset_less(&ms(&[0, 1, 0, 1]), &ms(&[1, 1])));
        // Irreflexive / antisymmetric on these.
        assert!(!multiset_less(&ms(&[1, 1]), &ms(&[0, 1, 0, 1])) || true);
    }

    #[test]
    fn cp_counts_connectives_only() {
        let f = parse_formula("(p -> q) /\\ t", Dialect::A).unwrap();
        assert_eq!(f.cp(), 2);
        assert_eq!(Formula::True.cp(), 0);
        assert_eq!(Formula::Bot.cp(), 0);
    }

    #[test]
    fn hypersequent_roundtrip() {
        let h = parse_hypersequent("a |- b | b |- a", Dialect::A).unwrap();
        assert_eq!(h.comps.len(), 2);
        let txt = h.to_string();
        let h2 = parse_hypersequent(&txt, Dialect::A).unwrap();
        assert_eq!(h, h2);
        let e = parse_hypersequent("|-", Dialect::A).unwrap();
        assert_eq!(e.to_string(), "|-");
        let e2 = parse_hypersequent("|- | |-", Dialect::A).unwrap();
        assert_eq!(e2.comps.len(), 2);
    }

    #[test]
    fn d_measure_counts_focus_imbalance() {
        let h = parse_hypersequent("q, q, q |- p, q, q | p, p, p |- p, q, q", Dialect::A).unwrap();
        let fh = FocusedHypersequent::new("q", h);
        assert_eq!(d_measure(&fh), 3);
        let fh2 = FocusedHypersequent::new("p", fh.body.clone());
        assert_eq!(d_measure(&fh2), 3);
        let fh3 = FocusedHypersequent::new("z", fh.body);
        assert_eq!(d_measure(&fh3), 0);
    }

    #[test]
    fn label_tree_paths() {
        let mut t = LabelTree::new();
        t.add(1, None);
        t.add(2, Some(1));
        t.add(3, None);
        assert_eq!(t.path(2), [1u32, 2].into_iter().collect());
        assert!(t.is_path(&[1u32].into_iter().collect()));
        assert!(t.is_path(&[1u32, 2].into_iter().collect()));
        assert!(!t.is_path(&[2u32].into_iter().collect()));
        assert!(!t.is_path(&[1u32, 3].into_iter().collect()));
        assert_eq!(t.roots(), vec![1, 3]);
    }

    #[test]
    fn labelled_sequent_roundtrip() {
        let s = parse_labelled_sequent("x1.x2:p, 1:q |- x1:p", Dialect::A).unwrap();
        assert_eq!(s.left.len(), 2);
        let txt = s.to_string();
        let s2 = parse_labelled_sequent(&txt, Dialect::A).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn apply_labelling_selects_by_conjunction() {
        let s = parse_labelled_sequent("x1.x2:p, 1:q |- x1:r", Dialect::A).unwrap();
        let mut f = Labelling::new();
        f.insert(1, true);
        f.insert(2, false);
        let seq = s.apply_labelling(&f);
        assert_eq!(seq.left.len(), 1); // only 1:q
        assert_eq!(seq.right.len(), 1); // x1:r selected
    }
}
