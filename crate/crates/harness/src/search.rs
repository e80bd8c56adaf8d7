//! Counterexample search: every subject satisfying `hyp` and not `concl`.
//!
//! Expressions combine predicate names with `!`, `&`, `|` and parentheses;
//! `!` binds tightest, then `&`, then `|`. Subjects are the universe members
//! and the integer adapter's modules. A predicate the adapter cannot decide
//! evaluates to unknown, and a subject with an unknown side is skipped.

use std::fmt;

use serde::{Deserialize, Serialize};
use zerodiv_core::{ModuleSpec, Verdict};

use crate::statements::Described;
use crate::universe::{Member, Universe};
use crate::witness::{torsion_record, Claim, WitnessRecord, INTEGERS};
use crate::zadapter::{ZModule, CASES};
use crate::HarnessError;

/// The registered predicate vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Auslander,
    TorsionFree,
    PropertyA,
    ContentModule,
    ContentSurjective,
    Flat,
    FaithfullyFlat,
    Faithful,
    RegModule,
    FreeModule,
    CyclicModule,
    ZeroModule,
    Domain,
    Field,
    Local,
    LocallyFree,
}

pub const VOCABULARY: &[(&str, Predicate)] = &[
    ("auslander", Predicate::Auslander),
    ("torsion_free", Predicate::TorsionFree),
    ("property_a", Predicate::PropertyA),
    ("content_module", Predicate::ContentModule),
    ("content_surjective", Predicate::ContentSurjective),
    ("flat", Predicate::Flat),
    ("faithfully_flat", Predicate::FaithfullyFlat),
    ("faithful", Predicate::Faithful),
    ("reg_module", Predicate::RegModule),
    ("free_module", Predicate::FreeModule),
    ("cyclic_module", Predicate::CyclicModule),
    ("zero_module", Predicate::ZeroModule),
    ("domain", Predicate::Domain),
    ("field", Predicate::Field),
    ("local", Predicate::Local),
    ("locally_free", Predicate::LocallyFree),
];

impl Predicate {
    pub fn name(self) -> &'static str {
        VOCABULARY.iter().find(|(_, p)| *p == self).expect("every predicate is registered").0
    }

    fn claim(self) -> Option<Claim> {
        Some(match self {
            Predicate::Auslander => Claim::Auslander,
            Predicate::TorsionFree => Claim::TorsionFree,
            Predicate::PropertyA => Claim::PropertyA,
            Predicate::ContentModule => Claim::ContentModule,
            Predicate::ContentSurjective => Claim::ContentSurjective,
            Predicate::Flat => Claim::Flat,
            Predicate::FaithfullyFlat => Claim::FaithfullyFlat,
            Predicate::Faithful => Claim::Faithful,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Predicate),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(p) => f.write_str(p.name()),
            Expr::Not(e) => write!(f, "!{e}"),
            Expr::And(a, b) => write!(f, "({a} & {b})"),
            Expr::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Name(String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, HarnessError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                out.push((i, Token::Name(name)));
                continue;
            }
            other => return Err(expr_error(text, i, format!("unexpected character '{other}'"))),
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

fn expr_error(text: &str, at: usize, message: String) -> HarnessError {
    HarnessError::Expression {
        text: text.to_string(),
        at,
        message,
    }
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.text.len(), |(i, _)| *i)
    }

    fn or(&mut self) -> Result<Expr, HarnessError> {
        let mut left = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            left = Expr::Or(Box::new(left), Box::new(self.and()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Expr, HarnessError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            left = Expr::And(Box::new(left), Box::new(self.unary()?));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, HarnessError> {
        let at = self.offset();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.unary()?)))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(expr_error(self.text, self.offset(), "expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                VOCABULARY
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, p)| Expr::Atom(*p))
                    .ok_or_else(|| expr_error(self.text, at, format!("unknown predicate '{name}'")))
            }
            Some(_) => Err(expr_error(self.text, at, "expected a predicate, '!' or '('".into())),
            None => Err(expr_error(self.text, at, "unexpected end of expression".into())),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, HarnessError> {
    let mut p = Parser {
        text,
        tokens: tokenize(text)?,
        pos: 0,
    };
    let e = p.or()?;
    if p.pos != p.tokens.len() {
        return Err(expr_error(text, p.offset(), "trailing input".into()));
    }
    Ok(e)
}

/// What the search ranges over.
enum Candidate<'a> {
    Member(&'a Member),
    Integers(ZModule),
}

impl Candidate<'_> {
    fn atom(&self, p: Predicate) -> Option<bool> {
        match self {
            Candidate::Member(m) => Some(member_atom(m, p)),
            Candidate::Integers(z) => integer_atom(*z, p),
        }
    }

    fn eval(&self, e: &Expr) -> Option<bool> {
        match e {
            Expr::Atom(p) => self.atom(*p),
            Expr::Not(x) => self.eval(x).map(|b| !b),
            Expr::And(a, b) => match (self.eval(a), self.eval(b)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Expr::Or(a, b) => match (self.eval(a), self.eval(b)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
        }
    }
}

fn verdict<'a>(m: &'a Member, p: Predicate) -> Option<&'a Verdict> {
    let f = &m.facts;
    Some(match p {
        Predicate::Auslander => &f.auslander,
        Predicate::TorsionFree => &f.torsion_free,
        Predicate::PropertyA => &f.property_a,
        Predicate::ContentModule => &f.content_module,
        Predicate::ContentSurjective => &f.content_surjective,
        Predicate::Flat => &f.flat,
        Predicate::FaithfullyFlat => &f.faithfully_flat,
        Predicate::Faithful => &f.faithful,
        _ => return None,
    })
}

fn member_atom(m: &Member, p: Predicate) -> bool {
    if let Some(v) = verdict(m, p) {
        return v.holds;
    }
    let rp = m.ring.ring_predicates();
    match p {
        Predicate::RegModule => m.spec == ModuleSpec::Reg,
        Predicate::FreeModule => matches!(m.spec, ModuleSpec::Reg | ModuleSpec::Free(_)),
        Predicate::CyclicModule => matches!(m.spec, ModuleSpec::Reg | ModuleSpec::Cyclic(_)),
        Predicate::ZeroModule => m.module.is_zero(),
        Predicate::Domain => rp.is_domain,
        Predicate::Field => rp.is_field,
        Predicate::Local => rp.is_local,
        Predicate::LocallyFree => m.facts.locally_free,
        _ => unreachable!("module predicates are read from facts"),
    }
}

fn integer_atom(z: ZModule, p: Predicate) -> Option<bool> {
    match p {
        Predicate::Auslander => z.is_auslander(),
        Predicate::TorsionFree => z.is_torsion_free(),
        Predicate::PropertyA => Some(z.has_property_a()),
        Predicate::Flat | Predicate::LocallyFree => Some(z.is_flat()),
        // Z/n for n >= 2 is not faithful, hence not faithfully flat; Z is free.
        Predicate::FaithfullyFlat => Some(z.is_flat()),
        Predicate::Faithful => Some(z.is_faithful()),
        Predicate::RegModule | Predicate::FreeModule => Some(z.n == 0),
        Predicate::CyclicModule => Some(true),
        Predicate::ZeroModule => Some(z.is_zero()),
        Predicate::Domain => Some(true),
        Predicate::Field | Predicate::Local => Some(false),
        Predicate::ContentModule | Predicate::ContentSurjective => None,
    }
}

fn atoms(e: &Expr, out: &mut Vec<Predicate>) {
    match e {
        Expr::Atom(p) => {
            if !out.contains(p) {
                out.push(*p)
            }
        }
        Expr::Not(x) => atoms(x, out),
        Expr::And(a, b) | Expr::Or(a, b) => {
            atoms(a, out);
            atoms(b, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub ring: String,
    pub module: String,
    /// Witnesses for the module predicates named in either expression.
    pub witnesses: Vec<WitnessRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub hypothesis: String,
    pub conclusion: String,
    /// Subjects where both sides were decidable.
    pub examined: usize,
    /// Subjects satisfying the hypothesis.
    pub applicable: usize,
    /// Subjects with an undecidable side.
    pub undecided: usize,
    pub hits: Vec<Hit>,
}

fn member_witnesses(m: &Member, preds: &[Predicate]) -> Vec<WitnessRecord> {
    let d = Described::member(m);
    preds
        .iter()
        .filter_map(|&p| Some((p.claim()?, verdict(m, p)?)))
        .flat_map(|(c, v)| d.witness(c, v, &m.module))
        .collect()
}

/// Members of `universe` and the adapter modules `Z`, `Z/n` (n in the
/// registered cases) with `hyp` true and `concl` false, in universe order.
pub fn search_counterexample(hyp: &str, concl: &str, universe: &Universe) -> Result<SearchReport, HarnessError> {
    let h = parse_expr(hyp)?;
    let c = parse_expr(concl)?;
    let mut preds = Vec::new();
    atoms(&h, &mut preds);
    atoms(&c, &mut preds);
    let candidates = universe
        .members
        .iter()
        .map(Candidate::Member)
        .chain(std::iter::once(0).chain(CASES).map(|n| Candidate::Integers(ZModule::new(n))));
    let mut report = SearchReport {
        hypothesis: h.to_string(),
        conclusion: c.to_string(),
        examined: 0,
        applicable: 0,
        undecided: 0,
        hits: Vec::new(),
    };
    for cand in candidates {
        let (Some(hv), Some(cv)) = (cand.eval(&h), cand.eval(&c)) else {
            report.undecided += 1;
            continue;
        };
        report.examined += 1;
        if !hv {
            continue;
        }
        report.applicable += 1;
        if cv {
            continue;
        }
        report.hits.push(match cand {
            Candidate::Member(m) => Hit {
                ring: m.ring.key().to_string(),
                module: m.spec.to_string(),
                witnesses: member_witnesses(m, &preds),
            },
            Candidate::Integers(z) => Hit {
                ring: INTEGERS.to_string(),
                module: z.descriptor(),
                witnesses: if preds.contains(&Predicate::TorsionFree) {
                    torsion_record(z).into_iter().collect()
                } else {
                    Vec::new()
                },
            },
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_errors() {
        let e = parse_expr("!flat & auslander | domain").unwrap();
        assert_eq!(e.to_string(), "((!flat & auslander) | domain)");
        let e = parse_expr("flat & (auslander | domain)").unwrap();
        assert_eq!(e.to_string(), "(flat & (auslander | domain))");
        for bad in ["", "flat &", "(flat", "flat)", "noetherian", "flat # domain"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
        match parse_expr("flat & noetherian") {
            Err(HarnessError::Expression { at, .. }) => assert_eq!(at, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vocabulary_names_round_trip() {
        for (name, p) in VOCABULARY {
            assert_eq!(p.name(), *name);
            assert_eq!(parse_expr(name).unwrap(), Expr::Atom(*p));
        }
    }
}
