//! The construction language.
//!
//! ```text
//! Ring    := Z<n> | ZZ | Prod(Ring, Ring) | PolyQuot(Ring, poly)
//!          | Localize(Ring, {elem, ...}) | TotalQuotient(Ring)
//! Module  := Reg | Free(<k>) | Cyclic(elem, ...) | Sum(Module, Module)
//!          | Hom(Module) | Tensor(Module, Algebra) | Localize(Module, {elem, ...})
//! Algebra := Algebra(Ring, Ring) | Ring        (a bare ring is over the ambient ring)
//! ```
//!
//! Elements and relation polynomials are kept as source text; they are read
//! against a concrete ring when the tree is resolved. Every node carries the
//! byte span it was parsed from, and tree equality ignores spans.

use std::fmt;
use std::sync::Arc;

use zerodiv_core::{make_ring, AlgebraSpec, FiniteRing, ModuleSpec, RingSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// A piece of raw source text: an element or a relation polynomial.
#[derive(Clone, Debug)]
pub struct Text {
    pub text: String,
    pub span: Span,
}

impl PartialEq for Text {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

#[derive(Clone, Debug)]
pub struct RingAst {
    pub node: RingNode,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RingNode {
    Zmod(i64),
    /// The integers, handled by the analytic adapter.
    Integers,
    Prod(Box<RingAst>, Box<RingAst>),
    PolyQuot(Box<RingAst>, Text),
    Localize(Box<RingAst>, Vec<Text>),
    TotalQuotient(Box<RingAst>),
}

#[derive(Clone, Debug)]
pub struct ModuleAst {
    pub node: ModuleNode,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleNode {
    Reg,
    Free(usize),
    Cyclic(Vec<Text>),
    Sum(Box<ModuleAst>, Box<ModuleAst>),
    Hom(Box<ModuleAst>),
    Tensor(Box<ModuleAst>, AlgebraAst),
    Localize(Box<ModuleAst>, Vec<Text>),
}

#[derive(Clone, Debug)]
pub struct AlgebraAst {
    pub algebra: RingAst,
    /// `None` for the bare-ring shorthand.
    pub base: Option<RingAst>,
    pub span: Span,
}

impl PartialEq for RingAst {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl PartialEq for ModuleAst {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl PartialEq for AlgebraAst {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.base == other.base
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct DslError {
    pub message: String,
    pub span: Span,
}

impl DslError {
    pub fn new(message: impl Into<String>, span: Span) -> DslError {
        DslError {
            message: message.into(),
            span,
        }
    }

    /// The message with the source line and a caret marker under the span.
    pub fn render(&self, source: &str) -> String {
        let start = self.span.start.min(source.len());
        let width = self.span.end.saturating_sub(self.span.start).max(1);
        format!(
            "error: {}\n  {}\n  {}{}",
            self.message,
            source,
            " ".repeat(source[..start].chars().count()),
            "^".repeat(width)
        )
    }
}

fn join(items: &[Text]) -> String {
    items.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RingAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            RingNode::Zmod(n) => write!(f, "Z{n}"),
            RingNode::Integers => f.write_str("ZZ"),
            RingNode::Prod(a, b) => write!(f, "Prod({a},{b})"),
            RingNode::PolyQuot(a, rel) => write!(f, "PolyQuot({a},{})", rel.text),
            RingNode::Localize(a, set) => write!(f, "Localize({a},{{{}}})", join(set)),
            RingNode::TotalQuotient(a) => write!(f, "TotalQuotient({a})"),
        }
    }
}

impl fmt::Display for ModuleAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            ModuleNode::Reg => f.write_str("Reg"),
            ModuleNode::Free(k) => write!(f, "Free({k})"),
            ModuleNode::Cyclic(gens) => write!(f, "Cyclic({})", join(gens)),
            ModuleNode::Sum(a, b) => write!(f, "Sum({a},{b})"),
            ModuleNode::Hom(a) => write!(f, "Hom({a})"),
            ModuleNode::Tensor(a, b) => write!(f, "Tensor({a},{b})"),
            ModuleNode::Localize(a, set) => write!(f, "Localize({a},{{{}}})", join(set)),
        }
    }
}

impl fmt::Display for AlgebraAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Some(base) => write!(f, "Algebra({},{base})", self.algebra),
            None => write!(f, "{}", self.algebra),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn here(&self) -> Span {
        let end = self.src[self.pos..].chars().next().map_or(self.pos, |c| self.pos + c.len_utf8());
        Span { start: self.pos, end }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(DslError::new(format!("expected '{c}'"), self.here()))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), DslError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(DslError::new("expected a constructor name", self.here()));
        }
        self.pos += len;
        Ok((self.src[start..self.pos].to_string(), Span { start, end: self.pos }))
    }

    /// Raw text up to a top-level `,` or the closing bracket of the current group.
    fn raw(&mut self, what: &str) -> Result<Text, DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        let mut end = None;
        for (i, c) in self.src[start..].char_indices() {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' if depth == 0 => {
                    end = Some(start + i);
                    break;
                }
                ')' | ']' | '}' => depth -= 1,
                ',' if depth == 0 => {
                    end = Some(start + i);
                    break;
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| DslError::new(format!("unterminated {what}"), Span { start, end: self.src.len() }))?;
        let text = self.src[start..end].trim();
        if text.is_empty() {
            return Err(DslError::new(format!("empty {what}"), Span { start, end: end.max(start + 1) }));
        }
        self.pos = end;
        let lead = self.src[start..end].len() - self.src[start..end].trim_start().len();
        Ok(Text {
            text: text.split_whitespace().collect::<Vec<_>>().join(" "),
            span: Span {
                start: start + lead,
                end: start + lead + text.len(),
            },
        })
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(c)
    }

    /// `elem, elem, ...` until `close`, which is consumed. May be empty.
    fn elements(&mut self, close: char) -> Result<Vec<Text>, DslError> {
        let mut out = Vec::new();
        if self.peek_is(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.raw("element")?);
            if self.peek_is(',') {
                self.pos += 1;
                continue;
            }
            self.expect(close)?;
            return Ok(out);
        }
    }

    fn set(&mut self) -> Result<Vec<Text>, DslError> {
        self.expect('{')?;
        self.elements('}')
    }

    fn finish(&mut self) -> Result<(), DslError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(DslError::new("trailing input", Span { start: self.pos, end: self.src.len() }));
        }
        Ok(())
    }

    fn ring(&mut self) -> Result<RingAst, DslError> {
        let (name, span) = self.ident()?;
        let start = span.start;
        let node = match name.as_str() {
            "ZZ" => RingNode::Integers,
            "Prod" => {
                self.expect('(')?;
                let a = self.ring()?;
                self.expect(',')?;
                let b = self.ring()?;
                self.expect(')')?;
                RingNode::Prod(Box::new(a), Box::new(b))
            }
            "PolyQuot" => {
                self.expect('(')?;
                let a = self.ring()?;
                self.expect(',')?;
                let rel = self.raw("relation polynomial")?;
                self.expect(')')?;
                RingNode::PolyQuot(Box::new(a), rel)
            }
            "Localize" => {
                self.expect('(')?;
                let a = self.ring()?;
                self.expect(',')?;
                let set = self.set()?;
                self.expect(')')?;
                RingNode::Localize(Box::new(a), set)
            }
            "TotalQuotient" => {
                self.expect('(')?;
                let a = self.ring()?;
                self.expect(')')?;
                RingNode::TotalQuotient(Box::new(a))
            }
            z if z.starts_with('Z') && z.len() > 1 && z[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let n: i64 = z[1..].parse().map_err(|_| DslError::new("modulus out of range", span))?;
                if n < 2 {
                    return Err(DslError::new("modulus must be at least 2", span));
                }
                RingNode::Zmod(n)
            }
            other => return Err(DslError::new(format!("unknown ring constructor '{other}'"), span)),
        };
        Ok(RingAst {
            node,
            span: Span { start, end: self.pos },
        })
    }

    fn algebra(&mut self) -> Result<AlgebraAst, DslError> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with("Algebra") {
            self.ident()?;
            self.expect('(')?;
            let algebra = self.ring()?;
            self.expect(',')?;
            let base = self.ring()?;
            self.expect(')')?;
            return Ok(AlgebraAst {
                algebra,
                base: Some(base),
                span: Span { start, end: self.pos },
            });
        }
        let algebra = self.ring()?;
        Ok(AlgebraAst {
            algebra,
            base: None,
            span: Span { start, end: self.pos },
        })
    }

    fn module(&mut self) -> Result<ModuleAst, DslError> {
        let (name, span) = self.ident()?;
        let start = span.start;
        let node = match name.as_str() {
            "Reg" => ModuleNode::Reg,
            "Free" => {
                self.expect('(')?;
                let k = self.raw("rank")?;
                let rank: usize = k
                    .text
                    .parse()
                    .ok()
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| DslError::new("rank must be a positive integer", k.span))?;
                self.expect(')')?;
                ModuleNode::Free(rank)
            }
            "Cyclic" => {
                self.expect('(')?;
                ModuleNode::Cyclic(self.elements(')')?)
            }
            "Sum" => {
                self.expect('(')?;
                let a = self.module()?;
                self.expect(',')?;
                let b = self.module()?;
                self.expect(')')?;
                ModuleNode::Sum(Box::new(a), Box::new(b))
            }
            "Hom" => {
                self.expect('(')?;
                let a = self.module()?;
                self.expect(')')?;
                ModuleNode::Hom(Box::new(a))
            }
            "Tensor" => {
                self.expect('(')?;
                let a = self.module()?;
                self.expect(',')?;
                let b = self.algebra()?;
                self.expect(')')?;
                ModuleNode::Tensor(Box::new(a), b)
            }
            "Localize" => {
                self.expect('(')?;
                let a = self.module()?;
                self.expect(',')?;
                let set = self.set()?;
                self.expect(')')?;
                ModuleNode::Localize(Box::new(a), set)
            }
            other => return Err(DslError::new(format!("unknown module constructor '{other}'"), span)),
        };
        Ok(ModuleAst {
            node,
            span: Span { start, end: self.pos },
        })
    }
}

pub fn parse_ring(src: &str) -> Result<RingAst, DslError> {
    let mut p = Parser::new(src);
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_module(src: &str) -> Result<ModuleAst, DslError> {
    let mut p = Parser::new(src);
    let m = p.module()?;
    p.finish()?;
    Ok(m)
}

pub fn parse_algebra(src: &str) -> Result<AlgebraAst, DslError> {
    let mut p = Parser::new(src);
    let a = p.algebra()?;
    p.finish()?;
    Ok(a)
}

fn texts(items: &[Text]) -> Vec<String> {
    items.iter().map(|t| t.text.clone()).collect()
}

impl RingAst {
    /// The core descriptor. Relation syntax is checked here, with spans;
    /// the integers have no finite descriptor.
    pub fn to_spec(&self) -> Result<RingSpec, DslError> {
        Ok(match &self.node {
            RingNode::Zmod(n) => RingSpec::zmod(*n),
            RingNode::Integers => {
                return Err(DslError::new("ZZ is only available to the integer adapter", self.span));
            }
            RingNode::Prod(a, b) => RingSpec::prod(a.to_spec()?, b.to_spec()?),
            RingNode::PolyQuot(a, rel) => {
                RingSpec::poly_quot(a.to_spec()?, &rel.text).map_err(|e| DslError::new(e.to_string(), rel.span))?
            }
            RingNode::Localize(a, set) => RingSpec::localize(a.to_spec()?, texts(set)),
            RingNode::TotalQuotient(a) => RingSpec::total_quotient(a.to_spec()?),
        })
    }

    pub fn is_integers(&self) -> bool {
        self.node == RingNode::Integers
    }

    /// Builds the ring. A construction failure is reported at the innermost
    /// node that fails: the relation of a non-monic quotient, the set of a
    /// bad localization.
    pub fn build(&self) -> Result<(RingSpec, Arc<FiniteRing>), DslError> {
        let spec = self.to_spec()?;
        match make_ring(&spec) {
            Ok(ring) => Ok((spec, ring)),
            Err(e) => {
                for child in self.children() {
                    child.build()?;
                }
                let span = match &self.node {
                    RingNode::PolyQuot(_, rel) => rel.span,
                    RingNode::Localize(_, set) if !set.is_empty() => Span {
                        start: set[0].span.start,
                        end: set[set.len() - 1].span.end,
                    },
                    _ => self.span,
                };
                Err(DslError::new(e.to_string(), span))
            }
        }
    }

    fn children(&self) -> Vec<&RingAst> {
        match &self.node {
            RingNode::Prod(a, b) => vec![a, b],
            RingNode::PolyQuot(a, _) | RingNode::Localize(a, _) | RingNode::TotalQuotient(a) => vec![a],
            RingNode::Zmod(_) | RingNode::Integers => Vec::new(),
        }
    }
}

impl AlgebraAst {
    /// `Algebra(B, R)`; the shorthand takes `ambient` as the base.
    pub fn to_spec(&self, ambient: &RingSpec) -> Result<AlgebraSpec, DslError> {
        Ok(AlgebraSpec {
            algebra: self.algebra.to_spec()?,
            base: match &self.base {
                Some(b) => b.to_spec()?,
                None => ambient.clone(),
            },
        })
    }
}

impl ModuleAst {
    pub fn to_spec(&self, ambient: &RingSpec) -> Result<ModuleSpec, DslError> {
        Ok(match &self.node {
            ModuleNode::Reg => ModuleSpec::Reg,
            ModuleNode::Free(k) => ModuleSpec::Free(*k),
            ModuleNode::Cyclic(gens) => ModuleSpec::Cyclic(texts(gens)),
            ModuleNode::Sum(a, b) => ModuleSpec::sum(a.to_spec(ambient)?, b.to_spec(ambient)?),
            ModuleNode::Hom(a) => ModuleSpec::hom(a.to_spec(ambient)?),
            ModuleNode::Tensor(a, b) => ModuleSpec::tensor(a.to_spec(ambient)?, b.to_spec(ambient)?),
            ModuleNode::Localize(a, set) => ModuleSpec::localize(a.to_spec(ambient)?, texts(set)),
        })
    }

    /// For modules over `ZZ`: `Reg` is `Z` (0), `Cyclic(n)` is `Z/n`.
    pub fn integer_modulus(&self) -> Result<u64, DslError> {
        match &self.node {
            ModuleNode::Reg => Ok(0),
            ModuleNode::Cyclic(gens) if gens.len() == 1 => gens[0]
                .text
                .parse::<i64>()
                .map(|n| n.unsigned_abs())
                .map_err(|_| DslError::new("expected an integer", gens[0].span)),
            _ => Err(DslError::new("over ZZ only Reg and Cyclic(<n>) are available", self.span)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = parse_ring("Prod(Z2,Z2)").unwrap();
        assert!(matches!(r.node, RingNode::Prod(..)));
        let m = parse_module("Cyclic((0,1))").unwrap();
        match &m.node {
            ModuleNode::Cyclic(g) => {
                assert_eq!(g[0].text, "(0,1)");
                assert_eq!(g[0].span, Span { start: 7, end: 12 });
            }
            other => panic!("{other:?}"),
        }
        let q = parse_ring("PolyQuot(Z2, x^2 + x)").unwrap();
        assert_eq!(q.to_spec().unwrap().to_string(), "PolyQuot(Z2,x^2+x)");
        assert_eq!(parse_module("Cyclic()").unwrap().to_spec(&RingSpec::zmod(2)).unwrap(), ModuleSpec::Cyclic(vec![]));
        assert!(parse_ring("ZZ").unwrap().is_integers());
        assert_eq!(
            parse_module("Tensor(Reg, Algebra(Prod(Z2,Z2), Z2))").unwrap().to_string(),
            "Tensor(Reg,Algebra(Prod(Z2,Z2),Z2))"
        );
        assert_eq!(
            parse_ring("Localize(Z6, {3})").unwrap().to_spec().unwrap().to_string(),
            "Localize(Z6,{3})"
        );
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_ring("Prod(Z2,Q3)").unwrap_err();
        assert_eq!(e.span, Span { start: 8, end: 10 });
        let e = parse_ring("PolyQuot(Z4, 2*x^2 + 1)").unwrap().build().unwrap_err();
        assert_eq!(e.message, "relation polynomial is not monic");
        assert_eq!(e.span, Span { start: 13, end: 22 });
        let e = parse_ring("Prod(Z2,Z2").unwrap_err();
        assert_eq!(e.span.start, 10);
        assert!(e.render("Prod(Z2,Z2").ends_with("          ^"));
        assert!(parse_module("Free(0)").is_err());
        assert!(parse_ring("Z1").is_err());
        assert!(parse_module("Reg junk").is_err());
    }

    fn element() -> impl Strategy<Value = String> {
        prop_oneof![
            (0u8..12).prop_map(|n| n.to_string()),
            (0u8..4, 0u8..4).prop_map(|(a, b)| format!("({a},{b})")),
            (0u8..4).prop_map(|a| format!("{a}+x")),
            Just("x".to_string()),
        ]
    }

    fn ring() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![(2i64..40).prop_map(|n| format!("Z{n}")), Just("ZZ".to_string())];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("Prod( {a} ,{b})")),
                (inner.clone(), prop_oneof![Just("x^2"), Just("x^2 + x + 1"), Just("x^3+2")])
                    .prop_map(|(a, r)| format!("PolyQuot({a}, {r})")),
                (inner.clone(), proptest::collection::vec(element(), 0..3))
                    .prop_map(|(a, s)| format!("Localize({a},{{{}}})", s.join(", "))),
                inner.prop_map(|a| format!("TotalQuotient({a})")),
            ]
        })
    }

    fn module() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            Just("Reg".to_string()),
            (1usize..4).prop_map(|k| format!("Free({k})")),
            proptest::collection::vec(element(), 0..3).prop_map(|g| format!("Cyclic({})", g.join(" , "))),
        ];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("Sum({a}, {b})")),
                inner.clone().prop_map(|a| format!("Hom({a})")),
                (inner.clone(), ring(), prop::option::of(ring())).prop_map(|(a, b, r)| match r {
                    Some(r) => format!("Tensor({a}, Algebra({b}, {r}))"),
                    None => format!("Tensor({a}, {b})"),
                }),
                (inner, proptest::collection::vec(element(), 1..3))
                    .prop_map(|(a, s)| format!("Localize({a}, {{{}}})", s.join(","))),
            ]
        })
    }

    proptest! {
        #[test]
        fn ring_round_trip(src in ring()) {
            let tree = parse_ring(&src).unwrap();
            prop_assert_eq!(tree.span, Span { start: 0, end: src.len() });
            let printed = tree.to_string();
            prop_assert_eq!(parse_ring(&printed).unwrap(), tree);
        }

        #[test]
        fn module_round_trip(src in module()) {
            let tree = parse_module(&src).unwrap();
            prop_assert_eq!(tree.span, Span { start: 0, end: src.len() });
            let printed = tree.to_string();
            let again = parse_module(&printed).unwrap();
            prop_assert_eq!(&again, &tree);
            prop_assert_eq!(again.to_string(), printed);
        }
    }
}
