//! Rule-tagged derivation trees with JSON serialization shared by every
//! calculus, plus the Valid/Invalid verdict type.

use crate::semantics::{Rat, Valuation};
use crate::structures::{
    parse_hypersequent_opts, parse_labelled_sequent, FocusedHypersequent, Hypersequent,
    LabelledSequent, Sequent,
};
use crate::syntax::{CalculusId, Dialect, SyntaxError};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which component an (S') application keeps alongside the merge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Keep {
    First,
    Second,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RuleId {
    // Axioms.
    Id,
    Lam,
    Bot,
    // Structural rules.
    Ew,
    Ec,
    Split,
    Mingle,
    Iw,
    Weak,
    Contract(usize),
    // Logical rules.
    TL,
    TR,
    NegL,
    NegR,
    PlusL,
    PlusR,
    ArrowL,
    ArrowR,
    AndL,
    AndR,
    OrL,
    OrR,
    PosL,
    PosR,
    // Terminating-calculus rules.
    Shift(String),
    SPrime(Keep),
    /// Semantic closure of an atomic leaf, certified by the lp module.
    Close,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Id => write!(f, "ID"),
            RuleId::Lam => write!(f, "LAM"),
            RuleId::Bot => write!(f, "BOT"),
            RuleId::Ew => write!(f, "EW"),
            RuleId::Ec => write!(f, "EC"),
            RuleId::Split => write!(f, "S"),
            RuleId::Mingle => write!(f, "M"),
            RuleId::Iw => write!(f, "IW"),
            RuleId::Weak => write!(f, "W"),
            RuleId::Contract(n) => write!(f, "C({n})"),
            RuleId::TL => write!(f, "t,l"),
            RuleId::TR => write!(f, "t,r"),
            RuleId::NegL => write!(f, "neg,l"),
            RuleId::NegR => write!(f, "neg,r"),
            RuleId::PlusL => write!(f, "+,l"),
            RuleId::PlusR => write!(f, "+,r"),
            RuleId::ArrowL => write!(f, "->,l"),
            RuleId::ArrowR => write!(f, "->,r"),
            RuleId::AndL => write!(f, "and,l"),
            RuleId::AndR => write!(f, "and,r"),
            RuleId::OrL => write!(f, "or,l"),
            RuleId::OrR => write!(f, "or,r"),
            RuleId::PosL => write!(f, "=>,l"),
            RuleId::PosR => write!(f, "=>,r"),
            RuleId::Shift(q) => write!(f, "shift({q})"),
            RuleId::SPrime(Keep::First) => write!(f, "S'(first)"),
            RuleId::SPrime(Keep::Second) => write!(f, "S'(second)"),
            RuleId::Close => write!(f, "CLOSE"),
        }
    }
}

impl FromStr for RuleId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let r = match s {
            "ID" => RuleId::Id,
            "LAM" => RuleId::Lam,
            "BOT" => RuleId::Bot,
            "EW" => RuleId::Ew,
            "EC" => RuleId::Ec,
            "S" => RuleId::Split,
            "M" => RuleId::Mingle,
            "IW" => RuleId::Iw,
            "W" => RuleId::Weak,
            "t,l" => RuleId::TL,
            "t,r" => RuleId::TR,
            "neg,l" => RuleId::NegL,
            "neg,r" => RuleId::NegR,
            "+,l" => RuleId::PlusL,
            "+,r" => RuleId::PlusR,
            "->,l" => RuleId::ArrowL,
            "->,r" => RuleId::ArrowR,
            "and,l" => RuleId::AndL,
            "and,r" => RuleId::AndR,
            "or,l" => RuleId::OrL,
            "or,r" => RuleId::OrR,
            "=>,l" => RuleId::PosL,
            "=>,r" => RuleId::PosR,
            "S'(first)" => RuleId::SPrime(Keep::First),
            "S'(second)" => RuleId::SPrime(Keep::Second),
            "CLOSE" => RuleId::Close,
            _ => {
                if let Some(inner) = s.strip_prefix("C(").and_then(|t| t.strip_suffix(')')) {
                    RuleId::Contract(inner.parse().map_err(|_| format!("bad rule {s:?}"))?)
                } else if let Some(inner) =
                    s.strip_prefix("shift(").and_then(|t| t.strip_suffix(')'))
                {
                    RuleId::Shift(inner.to_string())
                } else {
                    return Err(format!("unknown rule {s:?}"));
                }
            }
        };
        Ok(r)
    }
}

/// What sits at a proof node, depending on the calculus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Node {
    Hyper(Hypersequent),
    Focused(FocusedHypersequent),
    Labelled(LabelledSequent),
    Seq(Sequent),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Hyper(h) => write!(f, "{h}"),
            Node::Focused(h) => write!(f, "{h}"),
            Node::Labelled(s) => write!(f, "{s}"),
            Node::Seq(s) => write!(f, "{s}"),
        }
    }
}

impl Node {
    pub fn parse(input: &str, calculus: CalculusId) -> Result<Node, SyntaxError> {
        let d = calculus.dialect();
        match calculus {
            CalculusId::Ga | CalculusId::Gl => Ok(Node::Hyper(parse_hypersequent_opts(
                input, d, true,
            )?)),
            CalculusId::GaT | CalculusId::GlT => {
                let input = input.trim();
                let (focus, rest) = input
                    .strip_prefix('[')
                    .and_then(|t| t.split_once(']'))
                    .ok_or(SyntaxError::Parse {
                        pos: 0,
                        msg: "focused hypersequent must start with [focus]".to_string(),
                    })?;
                Ok(Node::Focused(FocusedHypersequent::new(
                    focus.trim(),
                    parse_hypersequent_opts(rest.trim(), d, true)?,
                )))
            }
            CalculusId::GaL | CalculusId::GaI | CalculusId::GlL => {
                Ok(Node::Labelled(parse_labelled_sequent(input, d)?))
            }
            CalculusId::GaS | CalculusId::GlS => {
                let h = parse_hypersequent_opts(input, d, true)?;
                let comps = h.components();
                if comps.len() != 1 {
                    return Err(SyntaxError::Parse {
                        pos: 0,
                        msg: "single-sequent conclusion".to_string(),
                    });
                }
                Ok(Node::Seq(comps[0].clone()))
            }
        }
    }

    pub fn as_hyper(&self) -> Option<&Hypersequent> {
        match self {
            Node::Hyper(h) => Some(h),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&Sequent> {
        match self {
            Node::Seq(s) => Some(s),
            _ => None,
        }
    }
}

/// Evidence attached to closed leaves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProofCert {
    /// Integer multipliers for an atomic closure (group semantics).
    Lambda(Vec<u64>),
    /// Text dump of the infeasible refutation system (bounded semantics).
    Infeasible(String),
    /// Labelling functions certifying a labelled success leaf.
    Labellings(Vec<BTreeMap<u32, bool>>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofTree {
    pub rule: RuleId,
    pub conclusion: Node,
    pub premises: Vec<ProofTree>,
    pub certificate: Option<ProofCert>,
}

impl ProofTree {
    pub fn leaf(rule: RuleId, conclusion: Node) -> Self {
        ProofTree {
            rule,
            conclusion,
            premises: Vec::new(),
            certificate: None,
        }
    }

    pub fn node(rule: RuleId, conclusion: Node, premises: Vec<ProofTree>) -> Self {
        ProofTree {
            rule,
            conclusion,
            premises,
            certificate: None,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("rule".into(), serde_json::Value::String(self.rule.to_string()));
        obj.insert(
            "conclusion".into(),
            serde_json::Value::String(self.conclusion.to_string()),
        );
        obj.insert(
            "premises".into(),
            serde_json::Value::Array(self.premises.iter().map(|p| p.to_json()).collect()),
        );
        if let Some(c) = &self.certificate {
            let v = match c {
                ProofCert::Lambda(l) => serde_json::json!({ "lambda": l }),
                ProofCert::Infeasible(s) => serde_json::json!({ "infeasible": s }),
                ProofCert::Labellings(fs) => {
                    let fs: Vec<BTreeMap<String, bool>> = fs
                        .iter()
                        .map(|f| {
                            f.iter()
                                .map(|(k, v)| (crate::structures::label_name(*k), *v))
                                .collect()
                        })
                        .collect();
                    serde_json::json!({ "labellings": fs })
                }
            };
            obj.insert("certificate".into(), v);
        }
        serde_json::Value::Object(obj)
    }

    pub fn from_json(v: &serde_json::Value, calculus: CalculusId) -> Result<ProofTree, String> {
        let obj = v.as_object().ok_or("proof node must be an object")?;
        let rule: RuleId = obj
            .get("rule")
            .and_then(|r| r.as_str())
            .ok_or("missing rule")?
            .parse()?;
        let conclusion = Node::parse(
            obj.get("conclusion")
                .and_then(|c| c.as_str())
                .ok_or("missing conclusion")?,
            calculus,
        )
        .map_err(|e| format!("bad conclusion: {e}"))?;
        let premises = obj
            .get("premises")
            .and_then(|p| p.as_array())
            .map(|arr| {
                arr.iter()
                    .map(|p| ProofTree::from_json(p, calculus))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?
            .unwrap_or_default();
        let certificate = match obj.get("certificate") {
            None | Some(serde_json::Value::Null) => None,
            Some(c) => {
                let co = c.as_object().ok_or("certificate must be an object")?;
                if let Some(l) = co.get("lambda") {
                    let l: Vec<u64> = serde_json::from_value(l.clone())
                        .map_err(|e| format!("bad lambda: {e}"))?;
                    Some(ProofCert::Lambda(l))
                } else if let Some(s) = co.get("infeasible") {
                    Some(ProofCert::Infeasible(
                        s.as_str().ok_or("infeasible must be a string")?.to_string(),
                    ))
                } else if let Some(fs) = co.get("labellings") {
                    let fs: Vec<BTreeMap<String, bool>> = serde_json::from_value(fs.clone())
                        .map_err(|e| format!("bad labellings: {e}"))?;
                    let fs = fs
                        .into_iter()
                        .map(|f| {
                            f.into_iter()
                                .map(|(k, v)| {
                                    k.strip_prefix('x')
                                        .and_then(|d| d.parse::<u32>().ok())
                                        .map(|id| (id, v))
                                        .ok_or_else(|| format!("bad label {k:?}"))
                                })
                                .collect::<Result<BTreeMap<u32, bool>, String>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(ProofCert::Labellings(fs))
                } else {
                    return Err("unknown certificate kind".to_string());
                }
            }
        };
        Ok(ProofTree {
            rule,
            conclusion,
            premises,
            certificate,
        })
    }

    /// Pretty multi-line rendering (premises above, conclusion below).
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        for p in &self.premises {
            p.render_into(out, depth + 1);
        }
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("[{}] {}\n", self.rule, self.conclusion));
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Valid(ProofTree),
    Invalid(Valuation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid(_))
    }

    pub fn proof(&self) -> Option<&ProofTree> {
        match self {
            Verdict::Valid(p) => Some(p),
            Verdict::Invalid(_) => None,
        }
    }

    pub fn countermodel(&self) -> Option<&Valuation> {
        match self {
            Verdict::Valid(_) => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

pub fn render_valuation(v: &Valuation) -> String {
    v.iter()
        .map(|(k, r)| format!("{k} = {r}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn valuation_to_json(v: &Valuation) -> serde_json::Value {
    let m: BTreeMap<String, String> = v.iter().map(|(k, r)| (k.clone(), r.to_string())).collect();
    serde_json::json!(m)
}

pub fn valuation_from_json(v: &serde_json::Value) -> Result<Valuation, String> {
    let m: BTreeMap<String, String> =
        serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    m.into_iter()
        .map(|(k, s)| {
            s.parse::<Rat>()
                .map(|r| (k, r))
                .map_err(|e| format!("bad rational {s:?}: {e}"))
        })
        .collect()
}

/// Parses a goal as either a hypersequent (contains `|-`) or a single formula.
pub fn parse_goal(input: &str, dialect: Dialect) -> Result<Hypersequent, SyntaxError> {
    if input.contains("|-") {
        crate::structures::parse_hypersequent(input, dialect)
    } else {
        Ok(Hypersequent::goal(crate::syntax::parse_formula(
            input, dialect,
        )?))
    }
}
