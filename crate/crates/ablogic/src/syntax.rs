//! Formula syntax: AST, concrete-syntax parser/printer, dialect checks and
//! normalization into the primitive connective set of each target calculus.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Reserved variable standing for the falsity constant when material
/// implication is read inside the group semantics.
pub const MBOT: &str = "$mbot";
/// Reserved variable used by the star translation.
pub const QBOT: &str = "$qbot";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Formula {
    /// Propositional variable.
    Var(String),
    /// Group unit `t`.
    True,
    /// Falsity constant of the many-valued logic, `bot`.
    Bot,
    /// Group negation `-A`.
    Neg(Box<Formula>),
    /// Many-valued negation `~A`.
    Tilde(Box<Formula>),
    /// Group sum `A + B`.
    Plus(Box<Formula>, Box<Formula>),
    /// Group implication `A -> B`.
    Arrow(Box<Formula>, Box<Formula>),
    /// Positive (truncated) implication `A => B`.
    PosArrow(Box<Formula>, Box<Formula>),
    /// Material implication `A .> B`.
    MatArrow(Box<Formula>, Box<Formula>),
    /// Enthymematic implication `A =>> B`.
    EnthArrow(Box<Formula>, Box<Formula>),
    /// Strong (truncated) sum `A o+ B`.
    OPlus(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Dialect {
    /// Abelian-logic dialect over the rationals-with-order model.
    A,
    /// Lukasiewicz dialect over the interval [-1, 0].
    L,
}

/// Identifies a calculus as a normalization / proving target.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CalculusId {
    Ga,
    GaT,
    GaL,
    GaI,
    GaS,
    Gl,
    GlT,
    GlL,
    GlS,
}

impl CalculusId {
    pub fn dialect(self) -> Dialect {
        match self {
            CalculusId::Ga | CalculusId::GaT | CalculusId::GaL | CalculusId::GaI | CalculusId::GaS => Dialect::A,
            CalculusId::Gl | CalculusId::GlT | CalculusId::GlL | CalculusId::GlS => Dialect::L,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("connective {0} is not available in dialect {1:?}")]
    DialectViolation(String, Dialect),
    #[error("variable name {0} is reserved")]
    ReservedVariable(String),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }
    pub fn tilde(a: Formula) -> Formula {
        Formula::Tilde(Box::new(a))
    }
    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Plus(Box::new(a), Box::new(b))
    }
    pub fn arrow(a: Formula, b: Formula) -> Formula {
        Formula::Arrow(Box::new(a), Box::new(b))
    }
    pub fn pos_arrow(a: Formula, b: Formula) -> Formula {
        Formula::PosArrow(Box::new(a), Box::new(b))
    }
    pub fn mat_arrow(a: Formula, b: Formula) -> Formula {
        Formula::MatArrow(Box::new(a), Box::new(b))
    }
    pub fn enth_arrow(a: Formula, b: Formula) -> Formula {
        Formula::EnthArrow(Box::new(a), Box::new(b))
    }
    pub fn oplus(a: Formula, b: Formula) -> Formula {
        Formula::OPlus(Box::new(a), Box::new(b))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// True for variables and constants.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::True | Formula::Bot)
    }

    /// Connective count: atoms (variables and constants) weigh 0, every
    /// connective occurrence weighs 1.
    pub fn cp(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::True | Formula::Bot => 0,
            Formula::Neg(a) | Formula::Tilde(a) => 1 + a.cp(),
            Formula::Plus(a, b)
            | Formula::Arrow(a, b)
            | Formula::PosArrow(a, b)
            | Formula::MatArrow(a, b)
            | Formula::EnthArrow(a, b)
            | Formula::OPlus(a, b)
            | Formula::And(a, b)
            | Formula::Or(a, b) => 1 + a.cp() + b.cp(),
        }
    }

    /// Total AST node count (atoms weigh 1).
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::True | Formula::Bot => 1,
            Formula::Neg(a) | Formula::Tilde(a) => 1 + a.size(),
            Formula::Plus(a, b)
            | Formula::Arrow(a, b)
            | Formula::PosArrow(a, b)
            | Formula::MatArrow(a, b)
            | Formula::EnthArrow(a, b)
            | Formula::OPlus(a, b)
            | Formula::And(a, b)
            | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn subformulas<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        out.push(self);
        match self {
            Formula::Var(_) | Formula::True | Formula::Bot => {}
            Formula::Neg(a) | Formula::Tilde(a) => a.subformulas(out),
            Formula::Plus(a, b)
            | Formula::Arrow(a, b)
            | Formula::PosArrow(a, b)
            | Formula::MatArrow(a, b)
            | Formula::EnthArrow(a, b)
            | Formula::OPlus(a, b)
            | Formula::And(a, b)
            | Formula::Or(a, b) => {
                a.subformulas(out);
                b.subformulas(out);
            }
        }
    }

    pub fn variables(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::True | Formula::Bot => {}
            Formula::Neg(a) | Formula::Tilde(a) => a.variables(out),
            Formula::Plus(a, b)
            | Formula::Arrow(a, b)
            | Formula::PosArrow(a, b)
            | Formula::MatArrow(a, b)
            | Formula::EnthArrow(a, b)
            | Formula::OPlus(a, b)
            | Formula::And(a, b)
            | Formula::Or(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    T,
    Bot,
    Tilde,
    Minus,
    Plus,
    OPlus,
    And,
    Or,
    Arrow,
    PosArrow,
    MatArrow,
    EnthArrow,
    Iff,
    LPar,
    RPar,
    Comma,
    Turnstile,
    Bar,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let b = input.as_bytes();
    let mut i = 0usize;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = if i + 2 <= b.len() { &input[i..i + 2] } else { "" };
        let three = if i + 3 <= b.len() { &input[i..i + 3] } else { "" };
        if three == "=>>" {
            out.push((i, Tok::EnthArrow));
            i += 3;
            continue;
        }
        if three == "<->" {
            out.push((i, Tok::Iff));
            i += 3;
            continue;
        }
        match two {
            "=>" => {
                out.push((i, Tok::PosArrow));
                i += 2;
                continue;
            }
            "->" => {
                out.push((i, Tok::Arrow));
                i += 2;
                continue;
            }
            ".>" => {
                out.push((i, Tok::MatArrow));
                i += 2;
                continue;
            }
            "/\\" => {
                out.push((i, Tok::And));
                i += 2;
                continue;
            }
            "\\/" => {
                out.push((i, Tok::Or));
                i += 2;
                continue;
            }
            "o+" => {
                // Only a token when not part of an identifier such as `foo+`.
                let prev_ident = i > 0 && (b[i - 1] as char).is_ascii_alphanumeric();
                if !prev_ident {
                    out.push((i, Tok::OPlus));
                    i += 2;
                    continue;
                }
            }
            "|-" => {
                out.push((i, Tok::Turnstile));
                i += 2;
                continue;
            }
            _ => {}
        }
        match c {
            '~' => {
                out.push((i, Tok::Tilde));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LPar));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RPar));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            '|' => {
                out.push((i, Tok::Bar));
                i += 1;
            }
            _ if c.is_ascii_alphabetic() || c == '_' || c == '$' => {
                let start = i;
                i += 1;
                while i < b.len() {
                    let d = b[i] as char;
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let word = &input[start..i];
                match word {
                    "t" => out.push((start, Tok::T)),
                    "bot" => out.push((start, Tok::Bot)),
                    _ => out.push((start, Tok::Ident(word.to_string()))),
                }
            }
            _ => {
                return Err(SyntaxError::Parse {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    dialect: Dialect,
    /// Allow `$`-prefixed reserved variables (used when we re-read our own
    /// rendered output, e.g. proof files).
    allow_reserved: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }
    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(usize::MAX)
    }
    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
    fn err<T>(&self, msg: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            pos: self.at(),
            msg: msg.to_string(),
        })
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        self.implication()
    }

    /// Implications: lowest precedence, right-associative.
    fn implication(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.lattice()?;
        match self.peek() {
            Some(Tok::Arrow) => {
                self.check_dialect("->", Dialect::A)?;
                self.bump();
                let rhs = self.implication()?;
                Ok(Formula::arrow(lhs, rhs))
            }
            Some(Tok::PosArrow) => {
                self.bump();
                let rhs = self.implication()?;
                Ok(Formula::pos_arrow(lhs, rhs))
            }
            Some(Tok::MatArrow) => {
                self.bump();
                let rhs = self.implication()?;
                Ok(Formula::mat_arrow(lhs, rhs))
            }
            Some(Tok::EnthArrow) => {
                self.bump();
                let rhs = self.implication()?;
                Ok(Formula::enth_arrow(lhs, rhs))
            }
            Some(Tok::Iff) => {
                self.check_dialect("<->", Dialect::A)?;
                self.bump();
                let rhs = self.implication()?;
                // Sugar: A <-> B expands immediately.
                Ok(Formula::and(
                    Formula::arrow(lhs.clone(), rhs.clone()),
                    Formula::arrow(rhs, lhs),
                ))
            }
            _ => Ok(lhs),
        }
    }

    /// Lattice connectives, left-associative.
    fn lattice(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.additive()?;
        loop {
            match self.peek() {
                Some(Tok::And) => {
                    self.bump();
                    let rhs = self.additive()?;
                    lhs = Formula::and(lhs, rhs);
                }
                Some(Tok::Or) => {
                    self.bump();
                    let rhs = self.additive()?;
                    lhs = Formula::or(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Additive connectives, left-associative; bind tighter than lattice ops.
    fn additive(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.check_dialect("+", Dialect::A)?;
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Formula::plus(lhs, rhs);
                }
                Some(Tok::OPlus) => {
                    self.check_dialect("o+", Dialect::L)?;
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Formula::oplus(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.check_dialect("~", Dialect::L)?;
                self.bump();
                Ok(Formula::tilde(self.unary()?))
            }
            Some(Tok::Minus) => {
                self.check_dialect("-", Dialect::A)?;
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.bump() {
            Some(Tok::T) => Ok(Formula::True),
            Some(Tok::Bot) => match self.dialect {
                // In the group dialect `bot` is read as a reserved variable.
                Dialect::A => Ok(Formula::Var(MBOT.to_string())),
                Dialect::L => Ok(Formula::Bot),
            },
            Some(Tok::Ident(name)) => {
                if name.starts_with('$') && !self.allow_reserved {
                    return Err(SyntaxError::ReservedVariable(name));
                }
                Ok(Formula::Var(name))
            }
            Some(Tok::LPar) => {
                let f = self.formula()?;
                match self.bump() {
                    Some(Tok::RPar) => Ok(f),
                    _ => self.err("expected ')'"),
                }
            }
            _ => self.err("expected a formula"),
        }
    }

    fn check_dialect(&self, op: &str, wanted: Dialect) -> Result<(), SyntaxError> {
        if self.dialect != wanted {
            Err(SyntaxError::DialectViolation(op.to_string(), self.dialect))
        } else {
            Ok(())
        }
    }
}

pub fn parse_formula(input: &str, dialect: Dialect) -> Result<Formula, SyntaxError> {
    parse_formula_opts(input, dialect, false)
}

pub(crate) fn parse_formula_opts(
    input: &str,
    dialect: Dialect,
    allow_reserved: bool,
) -> Result<Formula, SyntaxError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        dialect,
        allow_reserved,
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after formula");
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

// Precedence levels for printing: 3 unary, 2 additive, 1 lattice, 0 implication.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::True | Formula::Bot => 4,
        Formula::Neg(_) | Formula::Tilde(_) => 3,
        Formula::Plus(..) | Formula::OPlus(..) => 2,
        Formula::And(..) | Formula::Or(..) => 1,
        Formula::Arrow(..)
        | Formula::PosArrow(..)
        | Formula::MatArrow(..)
        | Formula::EnthArrow(..) => 0,
    }
}

fn render_at(f: &Formula, out: &mut String, min_prec: u8) {
    let p = prec(f);
    let need = p < min_prec;
    if need {
        out.push('(');
    }
    match f {
        Formula::Var(v) => {
            if v == MBOT {
                out.push_str("bot");
            } else {
                out.push_str(v);
            }
        }
        Formula::True => out.push('t'),
        Formula::Bot => out.push_str("bot"),
        Formula::Neg(a) => {
            out.push('-');
            render_at(a, out, 3);
        }
        Formula::Tilde(a) => {
            out.push('~');
            render_at(a, out, 3);
        }
        Formula::Plus(a, b) => {
            render_at(a, out, 2);
            out.push_str(" + ");
            render_at(b, out, 3);
        }
        Formula::OPlus(a, b) => {
            render_at(a, out, 2);
            out.push_str(" o+ ");
            render_at(b, out, 3);
        }
        Formula::And(a, b) => {
            render_at(a, out, 1);
            out.push_str(" /\\ ");
            render_at(b, out, 2);
        }
        Formula::Or(a, b) => {
            render_at(a, out, 1);
            out.push_str(" \\/ ");
            render_at(b, out, 2);
        }
        Formula::Arrow(a, b) => {
            render_at(a, out, 1);
            out.push_str(" -> ");
            render_at(b, out, 0);
        }
        Formula::PosArrow(a, b) => {
            render_at(a, out, 1);
            out.push_str(" => ");
            render_at(b, out, 0);
        }
        Formula::MatArrow(a, b) => {
            render_at(a, out, 1);
            out.push_str(" .> ");
            render_at(b, out, 0);
        }
        Formula::EnthArrow(a, b) => {
            render_at(a, out, 1);
            out.push_str(" =>> ");
            render_at(b, out, 0);
        }
    }
    if need {
        out.push(')');
    }
}

/// Note: in the A dialect the reserved variable standing for the material
/// falsity renders back as `bot`.
pub fn render_formula(f: &Formula) -> String {
    let mut s = String::new();
    render_at(f, &mut s, 0);
    s
}

impl fmt::Display for Formula {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", render_formula(self))
    }
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

/// Rewrites a formula into the primitive connective set of the target
/// calculus, applying the defining equations of the derived connectives.
///
/// Targets over the group dialect:
///   * hypersequent/terminating: primitives {var, t, -, +, ->, /\, \/};
///     `=>` expands to `(A -> B) /\ t`, `=>>` to `(t /\ A) -> B`,
///     `.>` to `(t /\ A) -> (bot \/ B)`.
///   * labelled/single-sequent: primitives {var, t, -, +, ->, =>}; in
///     addition `A /\ B` expands to `A + (A => B)` and `A \/ B` to
///     `(B => A) -> A` so that every fresh label comes from a `=>` on the
///     left.
///
/// Targets over the many-valued dialect:
///   * hypersequent/terminating: primitives {var, bot, =>, /\, \/};
///     `~A` = `A => bot`, `A o+ B` = `(A => bot) => B`, `t` = `bot => bot`,
///     `.>`/`=>>` are read as `=>`.
///   * labelled/single-sequent: additionally `A \/ B` = `(A => B) => B` and
///     `A /\ B` = `~(~A \/ ~B)` (fully expanded).
pub fn normalize(f: &Formula, target: CalculusId) -> Result<Formula, SyntaxError> {
    match target.dialect() {
        Dialect::A => normalize_a(f, target),
        Dialect::L => normalize_l(f, target),
    }
}

fn normalize_a(f: &Formula, target: CalculusId) -> Result<Formula, SyntaxError> {
    let labelled_family = matches!(target, CalculusId::GaL | CalculusId::GaI | CalculusId::GaS);
    let rec = |x: &Formula| normalize_a(x, target);
    Ok(match f {
        Formula::Var(v) => Formula::Var(v.clone()),
        Formula::True => Formula::True,
        Formula::Bot => return Err(SyntaxError::DialectViolation("bot".into(), Dialect::A)),
        Formula::Tilde(_) => return Err(SyntaxError::DialectViolation("~".into(), Dialect::A)),
        Formula::OPlus(..) => return Err(SyntaxError::DialectViolation("o+".into(), Dialect::A)),
        Formula::Neg(a) => Formula::neg(rec(a)?),
        Formula::Plus(a, b) => Formula::plus(rec(a)?, rec(b)?),
        Formula::Arrow(a, b) => Formula::arrow(rec(a)?, rec(b)?),
        Formula::PosArrow(a, b) => {
            if labelled_family {
                Formula::pos_arrow(rec(a)?, rec(b)?)
            } else {
                Formula::and(Formula::arrow(rec(a)?, rec(b)?), Formula::True)
            }
        }
        Formula::EnthArrow(a, b) => {
            // (t /\ A) -> B
            let inner = Formula::arrow(Formula::and(Formula::True, (**a).clone()), (**b).clone());
            rec(&inner)?
        }
        Formula::MatArrow(a, b) => {
            // (t /\ A) -> (bot \/ B), with bot the reserved group variable.
            let inner = Formula::arrow(
                Formula::and(Formula::True, (**a).clone()),
                Formula::or(Formula::Var(MBOT.to_string()), (**b).clone()),
            );
            rec(&inner)?
        }
        Formula::And(a, b) => {
            if labelled_family {
                // A /\ B = A + (A => B)
                let na = rec(a)?;
                let nb = rec(b)?;
                Formula::plus(na.clone(), Formula::pos_arrow(na, nb))
            } else {
                Formula::and(rec(a)?, rec(b)?)
            }
        }
        Formula::Or(a, b) => {
            if labelled_family {
                // A \/ B = (B => A) -> A
                let na = rec(a)?;
                let nb = rec(b)?;
                Formula::arrow(Formula::pos_arrow(nb, na.clone()), na)
            } else {
                Formula::or(rec(a)?, rec(b)?)
            }
        }
    })
}

fn normalize_l(f: &Formula, target: CalculusId) -> Result<Formula, SyntaxError> {
    let labelled_family = matches!(target, CalculusId::GlL | CalculusId::GlS);
    let rec = |x: &Formula| normalize_l(x, target);
    Ok(match f {
        Formula::Var(v) => Formula::Var(v.clone()),
        Formula::Bot => Formula::Bot,
        Formula::True => Formula::pos_arrow(Formula::Bot, Formula::Bot),
        Formula::Neg(_) => return Err(SyntaxError::DialectViolation("-".into(), Dialect::L)),
        Formula::Plus(..) => return Err(SyntaxError::DialectViolation("+".into(), Dialect::L)),
        Formula::Arrow(..) => return Err(SyntaxError::DialectViolation("->".into(), Dialect::L)),
        Formula::Tilde(a) => Formula::pos_arrow(rec(a)?, Formula::Bot),
        Formula::OPlus(a, b) => {
            Formula::pos_arrow(Formula::pos_arrow(rec(a)?, Formula::Bot), rec(b)?)
        }
        Formula::PosArrow(a, b) | Formula::MatArrow(a, b) | Formula::EnthArrow(a, b) => {
            Formula::pos_arrow(rec(a)?, rec(b)?)
        }
        Formula::And(a, b) => {
            if labelled_family {
                // ~( ~A \/ ~B ), expanded through the \/ definition below.
                let na = rec(a)?;
                let nb = rec(b)?;
                let not = |x: Formula| Formula::pos_arrow(x, Formula::Bot);
                let or = Formula::pos_arrow(
                    Formula::pos_arrow(not(na), not(nb.clone())),
                    not(nb),
                );
                not(or)
            } else {
                Formula::and(rec(a)?, rec(b)?)
            }
        }
        Formula::Or(a, b) => {
            if labelled_family {
                // (A => B) => B
                let na = rec(a)?;
                let nb = rec(b)?;
                Formula::pos_arrow(Formula::pos_arrow(na, nb.clone()), nb)
            } else {
                Formula::or(rec(a)?, rec(b)?)
            }
        }
    })
}

/// Checks that `f` only uses connectives legal for a *normalized* formula of
/// the given target.
pub fn dialect_ok(f: &Formula, target: CalculusId) -> bool {
    let ok_here = match target.dialect() {
        Dialect::A => !matches!(
            f,
            Formula::Bot | Formula::Tilde(_) | Formula::OPlus(..) | Formula::MatArrow(..) | Formula::EnthArrow(..)
        ),
        Dialect::L => !matches!(
            f,
            Formula::True
                | Formula::Neg(_)
                | Formula::Plus(..)
                | Formula::Arrow(..)
                | Formula::MatArrow(..)
                | Formula::EnthArrow(..)
        ),
    };
    if !ok_here {
        return false;
    }
    match f {
        Formula::Var(_) | Formula::True | Formula::Bot => true,
        Formula::Neg(a) | Formula::Tilde(a) => dialect_ok(a, target),
        Formula::Plus(a, b)
        | Formula::Arrow(a, b)
        | Formula::PosArrow(a, b)
        | Formula::MatArrow(a, b)
        | Formula::EnthArrow(a, b)
        | Formula::OPlus(a, b)
        | Formula::And(a, b)
        | Formula::Or(a, b) => dialect_ok(a, target) && dialect_ok(b, target),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_roundtrip_basics() {
        for (s, d) in [
            ("a -> b -> c", Dialect::A),
            ("a + b + c", Dialect::A),
            ("-(a + b) -> -a + -b", Dialect::A),
            ("(a \\/ b) /\\ t", Dialect::A),
            ("a => b => c", Dialect::A),
            ("(b =>> c) =>> ((c =>> d) =>> (b =>> d))", Dialect::A),
            ("~p o+ q", Dialect::L),
            ("(p .> q) .> (q .> p)", Dialect::L),
            ("p => (q => p)", Dialect::L),
            ("bot => p \\/ ~q", Dialect::L),
        ] {
            let f = parse_formula(s, d).unwrap();
            let printed = render_formula(&f);
            let f2 = parse_formula(&printed, d).unwrap();
            assert_eq!(f, f2, "round trip failed for {s} (printed {printed})");
        }
    }

    #[test]
    fn precedence_shape() {
        // unary > additive > lattice > implications (right associative)
        let f = parse_formula("-a + b /\\ c -> d", Dialect::A).unwrap();
        assert_eq!(
            f,
            Formula::arrow(
                Formula::and(
                    Formula::plus(Formula::neg(Formula::var("a")), Formula::var("b")),
                    Formula::var("c"),
                ),
                Formula::var("d"),
            )
        );
        let g = parse_formula("a -> b -> c", Dialect::A).unwrap();
        assert_eq!(
            g,
            Formula::arrow(
                Formula::var("a"),
                Formula::arrow(Formula::var("b"), Formula::var("c"))
            )
        );
    }

    #[test]
    fn iff_expands() {
        let f = parse_formula("a <-> b", Dialect::A).unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::arrow(Formula::var("a"), Formula::var("b")),
                Formula::arrow(Formula::var("b"), Formula::var("a")),
            )
        );
    }

    #[test]
    fn bot_in_group_dialect_is_reserved_variable() {
        let f = parse_formula("p .> bot", Dialect::A).unwrap();
        assert_eq!(
            f,
            Formula::mat_arrow(Formula::var("p"), Formula::Var(MBOT.to_string()))
        );
        assert_eq!(render_formula(&f), "p .> bot");
    }

    #[test]
    fn reserved_variables_rejected() {
        assert!(matches!(
            parse_formula("$qbot", Dialect::A),
            Err(SyntaxError::ReservedVariable(_))
        ));
        assert!(matches!(
            parse_formula("$mbot -> p", Dialect::A),
            Err(SyntaxError::ReservedVariable(_))
        ));
    }

    #[test]
    fn dialect_violations() {
        assert!(parse_formula("~p", Dialect::A).is_err());
        assert!(parse_formula("p + q", Dialect::L).is_err());
        assert!(parse_formula("p -> q", Dialect::L).is_err());
        assert!(parse_formula("p o+ q", Dialect::A).is_err());
        assert!(parse_formula("p <-> q", Dialect::L).is_err());
    }

    #[test]
    fn normalize_examples() {
        // => expands for the plain hypersequent target…
        let f = parse_formula("p => q", Dialect::A).unwrap();
        let n = normalize(&f, CalculusId::Ga).unwrap();
        assert_eq!(n, parse_formula("(p -> q) /\\ t", Dialect::A).unwrap());
        // …but stays primitive for the labelled target.
        let n2 = normalize(&f, CalculusId::GaL).unwrap();
        assert_eq!(n2, f);
        // Lattice connectives expand for the labelled target.
        let g = parse_formula("p /\\ q", Dialect::A).unwrap();
        assert_eq!(
            normalize(&g, CalculusId::GaL).unwrap(),
            parse_formula("p + (p => q)", Dialect::A).unwrap()
        );
        let h = parse_formula("p \\/ q", Dialect::A).unwrap();
        assert_eq!(
            normalize(&h, CalculusId::GaL).unwrap(),
            parse_formula("(q => p) -> p", Dialect::A).unwrap()
        );
        // Many-valued definitions.
        let k = parse_formula("~p o+ q", Dialect::L).unwrap();
        assert_eq!(
            normalize(&k, CalculusId::Gl).unwrap(),
            parse_formula("((p => bot) => bot) => q", Dialect::L).unwrap()
        );
        let t = parse_formula("t", Dialect::L).unwrap();
        assert_eq!(
            normalize(&t, CalculusId::Gl).unwrap(),
            parse_formula("bot => bot", Dialect::L).unwrap()
        );
    }

    #[test]
    fn normalize_idempotent_on_normal_forms() {
        for (s, tgt) in [
            ("p => q -> r", CalculusId::GaL),
            ("(p /\\ q) \\/ t", CalculusId::Ga),
            ("p => (q => bot)", CalculusId::Gl),
        ] {
            let f = parse_formula(s, tgt.dialect()).unwrap();
            let n1 = normalize(&f, tgt).unwrap();
            let n2 = normalize(&n1, tgt).unwrap();
            assert_eq!(n1, n2);
            assert!(dialect_ok(&n1, tgt));
        }
    }
}
