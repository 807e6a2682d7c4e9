//! Surface syntax for rings, modules and elements.
//!
//! ```text
//! ring    := factor ("x" factor)*
//! factor  := "Z/" int | "F" int ["[" vars "]" "/(" exprs ")"] | "Zloc(" int ")"
//!          | "Floc(" int ")" | "Frac(" ring ")" | "triv(" ring "," module ")" | "(" ring ")"
//! module  := mterm ("+" mterm)*
//! mterm   := "free(" int ")" ["/rel" matrix] | "Frac" | ring ["/(" exprs ")"]
//! matrix  := "[" [row ("," row)*] "]"      row := "[" exprs "]"
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ["^" int]
//! atom    := int | ident | "(" expr ")" | "(" expr ("," expr)+ ")" | "[" exprs "]"
//! ```
//!
//! Printing inserts only the parentheses precedence requires, so
//! `parse(print(ast)) == ast`. Source locations are carried in [`Loc`] and
//! ignored by equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::dvr::{is_prime, Dvr};
use crate::elem::Elem;
use crate::error::{Error, Result, Span};
use crate::finite::FiniteRing;
use crate::fp_poly;
use crate::module::{DvrModule, ModuleDescriptor, Summand};
use crate::ring::{Ring, RingDescriptor};

/// Source location; every `Loc` compares equal so that printed and reparsed
/// trees match.
#[derive(Debug, Clone, Copy, Default)]
pub struct Loc(pub Span);

impl PartialEq for Loc {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Loc {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn prec(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemExpr {
    Int(u64, Loc),
    Var(String, Loc),
    Neg(Box<ElemExpr>, Loc),
    Bin(BinOp, Box<ElemExpr>, Box<ElemExpr>, Loc),
    Pow(Box<ElemExpr>, u32, Loc),
    /// `(a, b, …)` with at least two entries.
    Tuple(Vec<ElemExpr>, Loc),
    /// `[a, …]` with at least one entry.
    Bracket(Vec<ElemExpr>, Loc),
}

impl ElemExpr {
    pub fn loc(&self) -> Span {
        match self {
            ElemExpr::Int(_, l)
            | ElemExpr::Var(_, l)
            | ElemExpr::Neg(_, l)
            | ElemExpr::Bin(_, _, _, l)
            | ElemExpr::Pow(_, _, l)
            | ElemExpr::Tuple(_, l)
            | ElemExpr::Bracket(_, l) => l.0,
        }
    }

    /// 1 for sums, 2 for products, 3 for negation, 4 for powers and atoms.
    fn prec(&self) -> u8 {
        match self {
            ElemExpr::Bin(op, ..) => op.prec(),
            ElemExpr::Neg(..) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for ElemExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemExpr::Int(n, _) => write!(f, "{n}"),
            ElemExpr::Var(v, _) => write!(f, "{v}"),
            ElemExpr::Neg(x, _) => {
                if x.prec() < 3 {
                    write!(f, "-({x})")
                } else {
                    write!(f, "-{x}")
                }
            }
            ElemExpr::Bin(op, a, b, _) => {
                if a.prec() < op.prec() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, "{}", op.symbol())?;
                if b.prec() <= op.prec() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            ElemExpr::Pow(x, k, _) => {
                if x.prec() < 4 || matches!(**x, ElemExpr::Pow(..)) {
                    write!(f, "({x})^{k}")
                } else {
                    write!(f, "{x}^{k}")
                }
            }
            ElemExpr::Tuple(xs, _) => write!(f, "({})", join(xs)),
            ElemExpr::Bracket(xs, _) => write!(f, "[{}]", join(xs)),
        }
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    ZMod(u64, Loc),
    /// `F<q>` with no polynomial tail: the field with `q` elements.
    Galois(u64, Loc),
    /// `F<p>[vars]/(relations)`.
    PolyRing { p: u64, vars: Vec<String>, relations: Vec<ElemExpr>, loc: Loc },
    Product(Vec<RingExpr>, Loc),
    Zloc(u64, Loc),
    Floc(u64, Loc),
    Frac(Box<RingExpr>, Loc),
    Triv(Box<RingExpr>, Box<ModuleExpr>, Loc),
}

impl RingExpr {
    pub fn loc(&self) -> Span {
        match self {
            RingExpr::ZMod(_, l)
            | RingExpr::Galois(_, l)
            | RingExpr::Product(_, l)
            | RingExpr::Zloc(_, l)
            | RingExpr::Floc(_, l)
            | RingExpr::Frac(_, l)
            | RingExpr::Triv(_, _, l) => l.0,
            RingExpr::PolyRing { loc, .. } => loc.0,
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::ZMod(n, _) => write!(f, "Z/{n}"),
            RingExpr::Galois(q, _) => write!(f, "F{q}"),
            RingExpr::PolyRing { p, vars, relations, .. } => {
                write!(f, "F{p}[{}]/({})", vars.join(","), join(relations))
            }
            RingExpr::Product(xs, _) => {
                let parts: Vec<String> = xs
                    .iter()
                    .map(|x| match x {
                        RingExpr::Product(..) => format!("({x})"),
                        _ => x.to_string(),
                    })
                    .collect();
                write!(f, "{}", parts.join(" x "))
            }
            RingExpr::Zloc(p, _) => write!(f, "Zloc({p})"),
            RingExpr::Floc(q, _) => write!(f, "Floc({q})"),
            RingExpr::Frac(r, _) => write!(f, "Frac({r})"),
            RingExpr::Triv(r, m, _) => write!(f, "triv({r}, {m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleExpr {
    /// Two or more terms, none of them sums.
    Sum(Vec<ModuleExpr>, Loc),
    Free { rank: u64, relations: Option<Vec<Vec<ElemExpr>>>, loc: Loc },
    Frac(Loc),
    /// A ring viewed as a module over itself, optionally modulo generators.
    Quotient { ring: RingExpr, gens: Option<Vec<ElemExpr>>, loc: Loc },
}

impl ModuleExpr {
    pub fn loc(&self) -> Span {
        match self {
            ModuleExpr::Sum(_, l) | ModuleExpr::Frac(l) => l.0,
            ModuleExpr::Free { loc, .. } | ModuleExpr::Quotient { loc, .. } => loc.0,
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Sum(xs, _) => {
                write!(f, "{}", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" + "))
            }
            ModuleExpr::Free { rank, relations: None, .. } => write!(f, "free({rank})"),
            ModuleExpr::Free { rank, relations: Some(rows), .. } => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "free({rank})/rel [{}]", rows.join(", "))
            }
            ModuleExpr::Frac(_) => write!(f, "Frac"),
            ModuleExpr::Quotient { ring, gens: None, .. } => write!(f, "{ring}"),
            ModuleExpr::Quotient { ring, gens: Some(g), .. } => write!(f, "{ring}/({})", join(g)),
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBrack => write!(f, "'['"),
            Tok::RBrack => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn syntax(message: impl Into<String>, span: Span) -> Error {
    Error::Syntax { message: message.into(), span }
}

fn semantic(message: impl Into<String>, span: Span) -> Error {
    Error::Semantic { message: message.into(), span }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let text = &src[start..i];
            Tok::Int(text.parse().map_err(|_| syntax("integer literal too large", Span::new(start, i)))?)
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b',' => Tok::Comma,
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                _ => {
                    let ch = src[start..].chars().next().unwrap();
                    return Err(syntax(format!("unexpected character '{ch}'"), Span::new(start, start + ch.len_utf8())));
                }
            }
        };
        out.push((tok, Span::new(start, i)));
    }
    out.push((Tok::End, Span::new(src.len(), src.len())));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        syntax(format!("expected {wanted}, found {}", self.peek()), self.span())
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> Result<Span> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn loc(&self, start: usize) -> Loc {
        Loc(Span::new(start, self.prev_end()))
    }

    fn ring(&mut self) -> Result<RingExpr> {
        let start = self.span().start;
        let first = self.factor()?;
        if !self.is_ident("x") {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.is_ident("x") {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(RingExpr::Product(parts, self.loc(start)))
    }

    fn factor(&mut self) -> Result<RingExpr> {
        let start = self.span().start;
        let name = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let r = self.ring()?;
                self.expect(Tok::RParen, "')'")?;
                return Ok(r);
            }
            Tok::Ident(s) => s,
            _ => return Err(self.unexpected("a ring")),
        };
        self.bump();
        match name.as_str() {
            "Z" => {
                self.expect(Tok::Slash, "'/' after Z")?;
                let n = self.int()?;
                Ok(RingExpr::ZMod(n, self.loc(start)))
            }
            "Zloc" | "Floc" => {
                self.expect(Tok::LParen, "'('")?;
                let p = self.int()?;
                self.expect(Tok::RParen, "')'")?;
                let loc = self.loc(start);
                Ok(if name == "Zloc" { RingExpr::Zloc(p, loc) } else { RingExpr::Floc(p, loc) })
            }
            "Frac" => {
                self.expect(Tok::LParen, "'(' after Frac")?;
                let r = self.ring()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(RingExpr::Frac(Box::new(r), self.loc(start)))
            }
            "triv" => {
                self.expect(Tok::LParen, "'(' after triv")?;
                let r = self.ring()?;
                self.expect(Tok::Comma, "',' between ring and module")?;
                let m = self.module()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(RingExpr::Triv(Box::new(r), Box::new(m), self.loc(start)))
            }
            s if s.len() > 1 && s.starts_with('F') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let q: u64 = s[1..].parse().map_err(|_| syntax("field size too large", self.loc(start).0))?;
                if *self.peek() != Tok::LBrack {
                    return Ok(RingExpr::Galois(q, self.loc(start)));
                }
                self.bump();
                let mut vars = Vec::new();
                loop {
                    match self.bump() {
                        (Tok::Ident(v), _) => vars.push(v),
                        (t, sp) => return Err(syntax(format!("expected a variable name, found {t}"), sp)),
                    }
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBrack, "']'")?;
                self.expect(Tok::Slash, "'/' before the relations")?;
                self.expect(Tok::LParen, "'('")?;
                let relations = self.expr_list()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(RingExpr::PolyRing { p: q, vars, relations, loc: self.loc(start) })
            }
            other => Err(syntax(format!("unknown ring '{other}'"), self.loc(start).0)),
        }
    }

    fn module(&mut self) -> Result<ModuleExpr> {
        let start = self.span().start;
        let first = self.mterm()?;
        if *self.peek() != Tok::Plus {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Plus {
            self.bump();
            parts.push(self.mterm()?);
        }
        Ok(ModuleExpr::Sum(parts, self.loc(start)))
    }

    fn mterm(&mut self) -> Result<ModuleExpr> {
        let start = self.span().start;
        if self.is_ident("free") {
            self.bump();
            self.expect(Tok::LParen, "'(' after free")?;
            let rank = self.int()?;
            self.expect(Tok::RParen, "')'")?;
            let relations = if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Ident(s) if s == "rel") {
                self.bump();
                self.bump();
                Some(self.matrix()?)
            } else {
                None
            };
            return Ok(ModuleExpr::Free { rank, relations, loc: self.loc(start) });
        }
        if self.is_ident("Frac") && *self.peek_at(1) != Tok::LParen {
            self.bump();
            return Ok(ModuleExpr::Frac(self.loc(start)));
        }
        let ring = self.ring()?;
        let gens = if *self.peek() == Tok::Slash {
            self.bump();
            self.expect(Tok::LParen, "'(' before the quotient generators")?;
            let g = self.expr_list()?;
            self.expect(Tok::RParen, "')'")?;
            Some(g)
        } else {
            None
        };
        Ok(ModuleExpr::Quotient { ring, gens, loc: self.loc(start) })
    }

    fn matrix(&mut self) -> Result<Vec<Vec<ElemExpr>>> {
        self.expect(Tok::LBrack, "'[' starting a matrix")?;
        let mut rows = Vec::new();
        if *self.peek() == Tok::RBrack {
            self.bump();
            return Ok(rows);
        }
        loop {
            self.expect(Tok::LBrack, "'[' starting a matrix row")?;
            rows.push(self.expr_list()?);
            self.expect(Tok::RBrack, "']'")?;
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBrack, "']' closing the matrix")?;
        Ok(rows)
    }

    fn expr_list(&mut self) -> Result<Vec<ElemExpr>> {
        let mut xs = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            xs.push(self.expr()?);
        }
        Ok(xs)
    }

    fn expr(&mut self) -> Result<ElemExpr> {
        let start = self.span().start;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = ElemExpr::Bin(op, Box::new(lhs), Box::new(rhs), self.loc(start));
        }
    }

    fn term(&mut self) -> Result<ElemExpr> {
        let start = self.span().start;
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = ElemExpr::Bin(op, Box::new(lhs), Box::new(rhs), self.loc(start));
        }
    }

    fn unary(&mut self) -> Result<ElemExpr> {
        let start = self.span().start;
        if *self.peek() == Tok::Minus {
            self.bump();
            let x = self.unary()?;
            return Ok(ElemExpr::Neg(Box::new(x), self.loc(start)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ElemExpr> {
        let start = self.span().start;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let sp = self.span();
        let k = self.int()?;
        let k = u32::try_from(k).map_err(|_| syntax("exponent too large", sp))?;
        Ok(ElemExpr::Pow(Box::new(base), k, self.loc(start)))
    }

    fn atom(&mut self) -> Result<ElemExpr> {
        let start = self.span().start;
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(ElemExpr::Int(n, self.loc(start)))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(ElemExpr::Var(v, self.loc(start)))
            }
            Tok::LParen => {
                self.bump();
                let xs = self.expr_list()?;
                self.expect(Tok::RParen, "')'")?;
                if xs.len() == 1 {
                    Ok(xs.into_iter().next().unwrap())
                } else {
                    Ok(ElemExpr::Tuple(xs, self.loc(start)))
                }
            }
            Tok::LBrack => {
                self.bump();
                let xs = self.expr_list()?;
                self.expect(Tok::RBrack, "']'")?;
                Ok(ElemExpr::Bracket(xs, self.loc(start)))
            }
            _ => Err(self.unexpected("an element")),
        }
    }
}

pub fn parse_ring(src: &str) -> Result<RingExpr> {
    let mut p = Parser::new(src)?;
    let r = p.ring()?;
    p.end()?;
    Ok(r)
}

pub fn parse_module(src: &str) -> Result<ModuleExpr> {
    let mut p = Parser::new(src)?;
    let m = p.module()?;
    p.end()?;
    Ok(m)
}

pub fn parse_elem(src: &str) -> Result<ElemExpr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

pub fn parse_matrix(src: &str) -> Result<Vec<Vec<ElemExpr>>> {
    let mut p = Parser::new(src)?;
    let m = p.matrix()?;
    p.end()?;
    Ok(m)
}

// ---------------------------------------------------------------------------
// Lowering to descriptors

/// `p^d = q` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut d) = (q, 0);
    while r % p == 0 {
        r /= p;
        d += 1;
    }
    (r == 1).then_some((p, d))
}

pub fn lower_ring(e: &RingExpr) -> Result<RingDescriptor> {
    match e {
        RingExpr::ZMod(n, l) => {
            if *n < 2 {
                return Err(semantic("modulus must be ≥ 2", l.0));
            }
            Ok(RingDescriptor::ZMod(*n))
        }
        RingExpr::Galois(q, l) => {
            let (p, d) = prime_power(*q).ok_or_else(|| semantic(format!("{q} is not a prime power"), l.0))?;
            RingDescriptor::galois_field(p, d).map_err(|err| semantic(err.to_string(), l.0))
        }
        RingExpr::PolyRing { p, vars, relations, loc } => lower_poly_ring(*p, vars, relations, loc.0),
        RingExpr::Product(xs, _) => Ok(RingDescriptor::Product(xs.iter().map(lower_ring).collect::<Result<_>>()?)),
        RingExpr::Zloc(p, l) => {
            if !is_prime(*p) {
                return Err(semantic(format!("{p} is not prime"), l.0));
            }
            Ok(RingDescriptor::LocalizedIntegers(*p))
        }
        RingExpr::Floc(q, l) => {
            prime_power(*q).ok_or_else(|| semantic(format!("{q} is not a prime power"), l.0))?;
            Ok(RingDescriptor::LocalizedPolynomials(*q))
        }
        RingExpr::Frac(inner, l) => {
            let d = lower_ring(inner)?;
            if !d.is_dvr() {
                return Err(semantic("Frac(...) needs Zloc(p) or Floc(q)", l.0));
            }
            Ok(RingDescriptor::FractionFieldOf(Box::new(d)))
        }
        RingExpr::Triv(base, module, l) => {
            let b = lower_ring(base)?;
            let m = lower_module(&b, module)?;
            if m.is_zero() {
                return Err(semantic("the module of a trivial extension must be nonzero", l.0));
            }
            Ok(RingDescriptor::trivial_extension(b, m.into_descriptor()))
        }
    }
}

type MPoly = BTreeMap<Vec<u32>, u64>;

fn lower_poly_ring(p: u64, vars: &[String], relations: &[ElemExpr], span: Span) -> Result<RingDescriptor> {
    if !is_prime(p) {
        return Err(semantic(format!("polynomial rings need a prime field; {p} is not prime"), span));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(semantic(format!("variable {v} listed twice"), span));
        }
    }
    let polys: Vec<MPoly> = relations.iter().map(|r| eval_mpoly(r, p, vars)).collect::<Result<_>>()?;
    if vars.len() == 1 && polys.len() == 1 {
        let mut coeffs = Vec::new();
        for (m, &c) in &polys[0] {
            let d = m[0] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, 0);
            }
            coeffs[d] = c as u32;
        }
        let coeffs = fp_poly::trim(coeffs);
        let loc = relations[0].loc();
        if coeffs.len() < 2 {
            return Err(semantic("modulus polynomial must have degree ≥ 1", loc));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(semantic("modulus polynomial must be monic", loc));
        }
        return Ok(RingDescriptor::PolyQuotient { p, modulus: coeffs, var: vars[0].clone() });
    }
    let mut monomials = Vec::new();
    for (poly, expr) in polys.iter().zip(relations) {
        match poly.iter().next() {
            Some((m, 1)) if poly.len() == 1 => monomials.push(m.clone()),
            _ => {
                return Err(semantic(
                    "with several variables or relations, each relation must be a monomial",
                    expr.loc(),
                ))
            }
        }
    }
    crate::finite::monomial_basis(vars, &monomials).map_err(|e| semantic(e.to_string(), span))?;
    Ok(RingDescriptor::MonomialQuotient { p, vars: vars.to_vec(), relations: monomials })
}

fn eval_mpoly(e: &ElemExpr, p: u64, vars: &[String]) -> Result<MPoly> {
    let k = vars.len();
    let constant = |c: u64| -> MPoly {
        let mut m = MPoly::new();
        if !c.is_multiple_of(p) {
            m.insert(vec![0; k], c % p);
        }
        m
    };
    let add = |a: &MPoly, b: &MPoly| -> MPoly {
        let mut out = a.clone();
        for (m, &c) in b {
            let e = out.entry(m.clone()).or_insert(0);
            *e = (*e + c) % p;
        }
        out.retain(|_, c| *c != 0);
        out
    };
    let neg = |a: &MPoly| -> MPoly { a.iter().map(|(m, &c)| (m.clone(), (p - c) % p)).collect() };
    let mul = |a: &MPoly, b: &MPoly| -> MPoly {
        let mut out = MPoly::new();
        for (ma, &ca) in a {
            for (mb, &cb) in b {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let e = out.entry(m).or_insert(0);
                *e = (*e + ca * cb) % p;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    };
    Ok(match e {
        ElemExpr::Int(n, _) => constant(*n),
        ElemExpr::Var(v, l) => {
            let i = vars.iter().position(|x| x == v).ok_or_else(|| semantic(format!("unknown variable {v}"), l.0))?;
            let mut m = vec![0; k];
            m[i] = 1;
            MPoly::from([(m, 1)])
        }
        ElemExpr::Neg(x, _) => neg(&eval_mpoly(x, p, vars)?),
        ElemExpr::Bin(op, a, b, l) => {
            let (x, y) = (eval_mpoly(a, p, vars)?, eval_mpoly(b, p, vars)?);
            match op {
                BinOp::Add => add(&x, &y),
                BinOp::Sub => add(&x, &neg(&y)),
                BinOp::Mul => mul(&x, &y),
                BinOp::Div => {
                    let c = match (y.len(), y.get(&vec![0; k])) {
                        (1, Some(&c)) => c,
                        _ => return Err(semantic("polynomials may only be divided by nonzero constants", l.0)),
                    };
                    mul(&x, &constant(fp_poly::inv_mod_p(c, p)))
                }
            }
        }
        ElemExpr::Pow(x, n, _) => {
            let base = eval_mpoly(x, p, vars)?;
            let mut acc = constant(1);
            for _ in 0..*n {
                acc = mul(&acc, &base);
            }
            acc
        }
        ElemExpr::Tuple(_, l) | ElemExpr::Bracket(_, l) => {
            return Err(semantic("expected a polynomial", l.0));
        }
    })
}

/// A lowered module, tracking whether it is zero.
pub enum LoweredModule {
    Presentation { base: RingDescriptor, rank: usize, relations: Vec<Vec<Elem>>, zero: bool },
    Formal { base: RingDescriptor, summands: Vec<Summand> },
}

impl LoweredModule {
    pub fn is_zero(&self) -> bool {
        match self {
            LoweredModule::Presentation { zero, .. } => *zero,
            LoweredModule::Formal { summands, .. } => summands.is_empty(),
        }
    }

    pub fn into_descriptor(self) -> ModuleDescriptor {
        match self {
            LoweredModule::Presentation { base, rank, relations, .. } => {
                ModuleDescriptor::FinitePresentation { base, rank, relations }
            }
            LoweredModule::Formal { base, summands } => ModuleDescriptor::DvrFormalSum { base, summands },
        }
    }
}

/// Lowers a module expression over an already lowered base ring.
pub fn lower_module(base: &RingDescriptor, e: &ModuleExpr) -> Result<LoweredModule> {
    let ring = Ring::new(base).map_err(|err| semantic(err.to_string(), e.loc()))?;
    if base.is_dvr() {
        let d = ring.dvr().unwrap().clone();
        let summands = dvr_summands(&ring, &d, base, e)?;
        return Ok(LoweredModule::Formal { base: base.clone(), summands });
    }
    if ring.finite().is_none() {
        return Err(semantic(format!("modules over {base} are not supported"), e.loc()));
    }
    let (rank, relations) = finite_presentation(&ring, base, e)?;
    let r = ring.finite().unwrap();
    let m = crate::ring::finite_module(r, &ModuleDescriptor::FinitePresentation {
        base: base.clone(),
        rank,
        relations: relations.clone(),
    })
    .map_err(|err| semantic(err.to_string(), e.loc()))?;
    Ok(LoweredModule::Presentation { base: base.clone(), rank, relations, zero: m.order() == 1 })
}

fn check_base(base: &RingDescriptor, ring: &RingExpr, span: Span) -> Result<()> {
    let d = lower_ring(ring)?;
    if &d != base {
        return Err(semantic(format!("module over {d} used with base ring {base}"), span));
    }
    Ok(())
}

fn finite_presentation(ring: &Ring, base: &RingDescriptor, e: &ModuleExpr) -> Result<(usize, Vec<Vec<Elem>>)> {
    match e {
        ModuleExpr::Sum(xs, _) => {
            let parts: Vec<(usize, Vec<Vec<Elem>>)> =
                xs.iter().map(|x| finite_presentation(ring, base, x)).collect::<Result<_>>()?;
            let rank = parts.iter().map(|p| p.0).sum();
            let mut rows = Vec::new();
            let mut offset = 0;
            for (r, rels) in parts {
                for row in rels {
                    let mut full = vec![ring.zero(); rank];
                    full[offset..offset + r].clone_from_slice(&row);
                    rows.push(full);
                }
                offset += r;
            }
            Ok((rank, rows))
        }
        ModuleExpr::Free { rank, relations, loc } => {
            let rank = *rank as usize;
            let mut rows = Vec::new();
            for row in relations.iter().flatten() {
                if row.len() != rank {
                    return Err(semantic(format!("relation row has {} entries, expected {rank}", row.len()), loc.0));
                }
                rows.push(row.iter().map(|x| eval_elem(ring, x)).collect::<Result<Vec<_>>>()?);
            }
            Ok((rank, rows))
        }
        ModuleExpr::Frac(l) => Err(semantic("Frac is a module over Zloc(p) or Floc(q) only", l.0)),
        ModuleExpr::Quotient { ring: r, gens, loc } => {
            check_base(base, r, loc.0)?;
            let rows = match gens {
                None => Vec::new(),
                Some(g) => g.iter().map(|x| Ok(vec![eval_elem(ring, x)?])).collect::<Result<_>>()?,
            };
            Ok((1, rows))
        }
    }
}

fn dvr_summands(ring: &Ring, d: &Dvr, base: &RingDescriptor, e: &ModuleExpr) -> Result<Vec<Summand>> {
    match e {
        ModuleExpr::Sum(xs, _) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(dvr_summands(ring, d, base, x)?);
            }
            Ok(out)
        }
        ModuleExpr::Frac(_) => Ok(vec![Summand::FractionField]),
        ModuleExpr::Free { rank, relations, loc } => {
            let rank = *rank as usize;
            let mut rows = Vec::new();
            for row in relations.iter().flatten() {
                if row.len() != rank {
                    return Err(semantic(format!("relation row has {} entries, expected {rank}", row.len()), loc.0));
                }
                rows.push(row.iter().map(|x| eval_elem(ring, x)).collect::<Result<Vec<_>>>()?);
            }
            let m = DvrModule::from_presentation(d.clone(), &rows, rank).map_err(|err| semantic(err.to_string(), loc.0))?;
            Ok(m.summands().to_vec())
        }
        ModuleExpr::Quotient { ring: r, gens, loc } => {
            check_base(base, r, loc.0)?;
            let gens: Vec<Elem> = gens.iter().flatten().map(|x| eval_elem(ring, x)).collect::<Result<_>>()?;
            let v = gens.iter().filter_map(|g| d.valuation(g).finite()).min();
            Ok(match v {
                None => vec![Summand::Free],
                Some(0) => Vec::new(),
                Some(k) => vec![Summand::CyclicTorsion(k as u32)],
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Element evaluation

/// Evaluates an element expression in a constructed ring, returning the
/// canonical payload.
pub fn eval_elem(ring: &Ring, e: &ElemExpr) -> Result<Elem> {
    if let Some(r) = ring.finite() {
        let i = eval_finite(r, e)?;
        return Ok(r.label(i).clone());
    }
    if let Some(d) = ring.dvr() {
        let x = eval_dvr(d, e)?;
        if !d.in_ring(&x) {
            return Err(semantic(format!("{} does not lie in {}", d.format(&x), ring.descriptor()), e.loc()));
        }
        return Ok(x);
    }
    if let Some(d) = ring.fraction_dvr() {
        return eval_dvr(d, e);
    }
    if let Some(t) = ring.dvr_triv() {
        return eval_dvr_triv(t, e);
    }
    Err(semantic("elements of this ring cannot be evaluated", e.loc()))
}

fn int_i64(n: u64, l: &Loc) -> Result<i64> {
    i64::try_from(n).map_err(|_| semantic("integer literal too large", l.0))
}

fn eval_finite(r: &FiniteRing, e: &ElemExpr) -> Result<usize> {
    Ok(match e {
        ElemExpr::Int(n, l) => r.from_int(int_i64(*n, l)?),
        ElemExpr::Var(v, l) => r.variable(v).ok_or_else(|| semantic(format!("unknown variable {v}"), l.0))?,
        ElemExpr::Neg(x, _) => r.neg(eval_finite(r, x)?),
        ElemExpr::Bin(op, a, b, l) => {
            let (x, y) = (eval_finite(r, a)?, eval_finite(r, b)?);
            match op {
                BinOp::Add => r.add(x, y),
                BinOp::Sub => r.sub(x, y),
                BinOp::Mul => r.mul(x, y),
                BinOp::Div => {
                    let inv = r.inverse(y).ok_or_else(|| semantic(format!("{} is not invertible", r.format(y)), l.0))?;
                    r.mul(x, inv)
                }
            }
        }
        ElemExpr::Pow(x, k, _) => r.pow(eval_finite(r, x)?, *k),
        ElemExpr::Tuple(xs, l) => {
            if let Some(fs) = r.product_factors() {
                if fs.len() != xs.len() {
                    return Err(semantic(format!("expected a {}-tuple", fs.len()), l.0));
                }
                let parts: Vec<Elem> = fs
                    .iter()
                    .zip(xs)
                    .map(|(f, x)| Ok(f.label(eval_finite(f, x)?).clone()))
                    .collect::<Result<_>>()?;
                r.index_of(&Elem::Tuple(parts)).unwrap()
            } else if let Some((base, module)) = r.triv_parts() {
                if xs.len() != 2 {
                    return Err(semantic("expected a pair (a, e)", l.0));
                }
                let a = eval_finite(base, &xs[0])?;
                let comps: Vec<usize> = match &xs[1] {
                    ElemExpr::Bracket(ys, _) => ys.iter().map(|y| eval_finite(base, y)).collect::<Result<_>>()?,
                    y => vec![eval_finite(base, y)?],
                };
                if comps.len() != module.rank() {
                    return Err(semantic(format!("module elements have {} components", module.rank()), xs[1].loc()));
                }
                let m = module.element_of(&comps);
                r.index_of(&Elem::pair(base.label(a).clone(), module.label(m))).unwrap()
            } else {
                return Err(semantic("tuples denote elements of products or trivial extensions", l.0));
            }
        }
        ElemExpr::Bracket(_, l) => return Err(semantic("brackets denote module elements", l.0)),
    })
}

fn eval_dvr(d: &Dvr, e: &ElemExpr) -> Result<Elem> {
    Ok(match e {
        ElemExpr::Int(n, l) => d.from_int(int_i64(*n, l)?),
        ElemExpr::Var(v, l) => match d.variable() {
            Some(x) if v == "x" => x,
            _ => return Err(semantic(format!("unknown variable {v}"), l.0)),
        },
        ElemExpr::Neg(x, _) => d.neg(&eval_dvr(d, x)?),
        ElemExpr::Bin(op, a, b, l) => {
            let (x, y) = (eval_dvr(d, a)?, eval_dvr(d, b)?);
            match op {
                BinOp::Add => d.add(&x, &y),
                BinOp::Sub => d.sub(&x, &y),
                BinOp::Mul => d.mul(&x, &y),
                BinOp::Div => d.div(&x, &y).ok_or_else(|| semantic("division by zero", l.0))?,
            }
        }
        ElemExpr::Pow(x, k, _) => {
            let b = eval_dvr(d, x)?;
            (0..*k).fold(d.one(), |acc, _| d.mul(&acc, &b))
        }
        ElemExpr::Tuple(_, l) | ElemExpr::Bracket(_, l) => {
            return Err(semantic("expected a scalar", l.0));
        }
    })
}

fn eval_dvr_triv(t: &crate::trivext::DvrTrivExt, e: &ElemExpr) -> Result<Elem> {
    let d = t.base();
    Ok(match e {
        ElemExpr::Int(n, l) => t.from_int(int_i64(*n, l)?),
        ElemExpr::Neg(x, _) => t.neg(&eval_dvr_triv(t, x)?),
        ElemExpr::Bin(op, a, b, l) => {
            let (x, y) = (eval_dvr_triv(t, a)?, eval_dvr_triv(t, b)?);
            match op {
                BinOp::Add => t.add(&x, &y),
                BinOp::Sub => t.sub(&x, &y),
                BinOp::Mul => t.mul(&x, &y),
                BinOp::Div => {
                    let inv = t.inverse(&y).ok_or_else(|| semantic("divisor is not a unit", l.0))?;
                    t.mul(&x, &inv)
                }
            }
        }
        ElemExpr::Pow(x, k, _) => {
            let b = eval_dvr_triv(t, x)?;
            (0..*k).fold(t.one(), |acc, _| t.mul(&acc, &b))
        }
        ElemExpr::Tuple(xs, l) => {
            if xs.len() != 2 {
                return Err(semantic("expected a pair (a, e)", l.0));
            }
            let a = eval_dvr(d, &xs[0])?;
            if !d.in_ring(&a) {
                return Err(semantic(format!("{} does not lie in the base ring", d.format(&a)), xs[0].loc()));
            }
            let raw: Vec<&ElemExpr> = match &xs[1] {
                ElemExpr::Bracket(ys, _) => ys.iter().collect(),
                y => vec![y],
            };
            let m = t.module();
            if raw.len() != m.summands().len() {
                return Err(semantic(format!("module elements have {} components", m.summands().len()), xs[1].loc()));
            }
            let comps = raw
                .iter()
                .enumerate()
                .map(|(i, y)| {
                    let c = eval_dvr(d, y)?;
                    m.canonical_component(i, c).map_err(|err| semantic(err.to_string(), y.loc()))
                })
                .collect::<Result<Vec<_>>>()?;
            Elem::pair(a, comps)
        }
        ElemExpr::Var(_, l) | ElemExpr::Bracket(_, l) => {
            return Err(semantic("elements of A ∝ E are written (a, e)", l.0));
        }
    })
}

/// Parses and lowers a ring in one step.
pub fn ring_from_str(src: &str) -> Result<RingDescriptor> {
    lower_ring(&parse_ring(src)?)
}

/// Parses and lowers a module over `base`.
pub fn module_from_str(base: &RingDescriptor, src: &str) -> Result<ModuleDescriptor> {
    Ok(lower_module(base, &parse_module(src)?)?.into_descriptor())
}

pub fn elem_from_str(ring: &Ring, src: &str) -> Result<Elem> {
    eval_elem(ring, &parse_elem(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalog_rings() {
        assert_eq!(ring_from_str("Z/8").unwrap(), RingDescriptor::ZMod(8));
        assert_eq!(ring_from_str("Zloc(3)").unwrap(), RingDescriptor::LocalizedIntegers(3));
        let gf4 = ring_from_str("F4").unwrap();
        assert_eq!(gf4, RingDescriptor::galois_field(2, 2).unwrap());
        assert_eq!(ring_from_str("F2[x]/(x^2+x+1)").unwrap(), gf4);
        let t = ring_from_str("triv(Z/4, Z/4/(2))").unwrap();
        assert_eq!(t.to_string(), "triv(Z/4, Z/4/(2))");
        let m = ring_from_str("F2[x,y]/(x^2,x*y,y^2)").unwrap();
        assert_eq!(Ring::new(&m).unwrap().order(), crate::ring::Order::Finite(8));
    }

    #[test]
    fn modulus_error_has_span() {
        match ring_from_str("Z/1") {
            Err(Error::Semantic { message, span }) => {
                assert_eq!(message, "modulus must be ≥ 2");
                assert_eq!(span, Span::new(0, 3));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(ring_from_str("Z/"), Err(Error::Syntax { .. })));
        assert!(matches!(ring_from_str("F2[x]/(2*x^2+1)"), Err(Error::Semantic { .. })));
        assert!(matches!(ring_from_str("triv(Z/4, Z/8/(2))"), Err(Error::Semantic { .. })));
    }

    #[test]
    fn printing_round_trips() {
        for src in ["-(a*b)", "a-(b-c)", "(x^2)^3", "(-x)^2", "a*-b", "--a", "(1, 2/3)", "[1, x+1]", "a/(b*c)"] {
            let e = parse_elem(src).unwrap();
            assert_eq!(e.to_string(), src);
            assert_eq!(parse_elem(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn evaluates_elements() {
        let t = Ring::new(&ring_from_str("triv(Zloc(2), Frac)").unwrap()).unwrap();
        let x = elem_from_str(&t, "(2, 1/3)").unwrap();
        assert_eq!(t.format(&x), "(2, 1/3)");
        let r = Ring::new(&ring_from_str("Z/4 x Z/3").unwrap()).unwrap();
        let x = elem_from_str(&r, "(3, 2) * (3, 2)").unwrap();
        assert_eq!(r.format(&x), "(1, 1)");
        let f = Ring::new(&ring_from_str("Floc(2)").unwrap()).unwrap();
        let x = elem_from_str(&f, "(x^2+x^3)/(1+x)").unwrap();
        assert_eq!(f.dvr().unwrap().valuation(&x), crate::dvr::ValuationValue::Finite(2));
        assert!(elem_from_str(&f, "1/x").is_err());
    }

    #[test]
    fn dvr_modules_lower_to_formal_sums() {
        let base = RingDescriptor::LocalizedIntegers(2);
        let m = module_from_str(&base, "free(1) + Zloc(2)/(2)").unwrap();
        assert_eq!(m, ModuleDescriptor::DvrFormalSum { base, summands: vec![Summand::Free, Summand::CyclicTorsion(1)] });
    }
}
