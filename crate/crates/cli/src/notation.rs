//! Tangle notation.
//!
//! ```text
//! input   := fraction | closure | expr
//! fraction:= INT | INT '/' INT | 'inf'
//! closure := ('N' | 'D') '(' expr ')'
//! expr    := term ('+' term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := '[' 'inf' ']' | '[' INT ((',' | ' ') INT)* ']'
//!          | ('inv' | 'rot') '(' expr ')' | '(' expr ')'
//! ```
//!
//! A bracket with one integer is an integer tangle; with more it is a
//! continued fraction, whose inner terms must be nonzero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use tanglekit::diagram::Closure;
use tanglekit::{ContinuedFraction, Fraction, TangleExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed text.
    Syntax,
    /// Well-formed but violating a precondition, e.g. a zero inner term.
    Domain,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct NotationError {
    pub offset: usize,
    pub message: String,
    pub kind: ErrorKind,
}

/// What a piece of notation denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Notation {
    Fraction(Fraction),
    ContinuedFraction(ContinuedFraction),
    Tangle(TangleExpr),
    Closed(Closure, TangleExpr),
}

impl Notation {
    /// The tangle this notation draws; fractions get their canonical form.
    pub fn tangle(&self) -> Option<TangleExpr> {
        match self {
            Notation::Fraction(f) => Some(TangleExpr::from_contfrac(
                &ContinuedFraction::expand_canonical(f),
            )),
            Notation::ContinuedFraction(cf) => Some(TangleExpr::from_contfrac(cf)),
            Notation::Tangle(t) => Some(t.clone()),
            Notation::Closed(..) => None,
        }
    }
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notation::Fraction(x) => write!(f, "{x}"),
            Notation::ContinuedFraction(cf) => write!(f, "{cf}"),
            Notation::Tangle(t) => write!(f, "{t}"),
            Notation::Closed(Closure::Numerator, t) => write!(f, "N({t})"),
            Notation::Closed(Closure::Denominator, t) => write!(f, "D({t})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    Minus,
    Slash,
    Int(BigInt),
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> NotationError {
    NotationError {
        offset,
        message: message.into(),
        kind: ErrorKind::Syntax,
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, NotationError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let single = match c {
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            out.push((i, t));
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            out.push((i, Tok::Int(text[i..end].parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '\u{221e}' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '\u{221e}') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let word = &text[i..end];
            out.push((
                i,
                Tok::Ident(if word == "\u{221e}" {
                    "inf".into()
                } else {
                    word.into()
                }),
            ));
        } else {
            return Err(syntax(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Partial parse: a lone continued fraction stays one until combined.
enum Item {
    Cf(ContinuedFraction),
    Expr(TangleExpr),
}

impl Item {
    fn expr(self) -> TangleExpr {
        match self {
            Item::Cf(cf) => TangleExpr::from_contfrac(&cf),
            Item::Expr(e) => e,
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> NotationError {
        match self.peek() {
            Some(t) => syntax(self.offset(), format!("expected {wanted}, found {t}")),
            None => syntax(self.len, format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), NotationError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn expr(&mut self) -> Result<Item, NotationError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = Item::Expr(TangleExpr::sum(acc.expr(), rhs.expr()));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Item, NotationError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Item::Expr(TangleExpr::product(acc.expr(), rhs.expr()));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Item, NotationError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Item::Expr(TangleExpr::mirror(self.unary()?.expr())));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Item, NotationError> {
        let at = self.offset();
        match self.next() {
            Some((_, Tok::LBrack)) => self.bracket(at),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((_, Tok::Ident(name))) => {
                let wrap: fn(TangleExpr) -> TangleExpr = match name.as_str() {
                    "inv" => TangleExpr::invert,
                    "rot" => TangleExpr::rotate,
                    "N" | "D" => {
                        return Err(syntax(
                            at,
                            "closures N(...) and D(...) apply only to a whole expression",
                        ))
                    }
                    _ => {
                        return Err(syntax(
                            at,
                            format!("unknown name `{name}` (expected inv or rot)"),
                        ))
                    }
                };
                self.expect(Tok::LParen, "`(`")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Item::Expr(wrap(inner.expr())))
            }
            Some((_, Tok::Int(_))) => Err(syntax(
                at,
                "bare numbers are fractions; write tangles in brackets, e.g. [3]",
            )),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a tangle"))
            }
        }
    }

    /// After `[`: `inf]`, or signed integers separated by commas or spaces.
    fn bracket(&mut self, open: usize) -> Result<Item, NotationError> {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "inf") {
            self.pos += 1;
            self.expect(Tok::RBrack, "`]`")?;
            return Ok(Item::Expr(TangleExpr::Infinity));
        }
        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        loop {
            let at = self.offset();
            let negative = self.peek() == Some(&Tok::Minus);
            if negative {
                self.pos += 1;
            }
            match self.next() {
                Some((_, Tok::Int(n))) => terms.push((at, if negative { -n } else { n })),
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("an integer"));
                }
            }
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::RBrack) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Minus | Tok::Int(_)) => {}
                _ => return Err(self.unexpected("`,` or `]`")),
            }
        }
        if let Some((at, _)) = terms.iter().skip(1).find(|(_, a)| a.is_zero()) {
            return Err(NotationError {
                offset: *at,
                message: "inner continued fraction terms must be nonzero".into(),
                kind: ErrorKind::Domain,
            });
        }
        if terms.len() == 1 {
            return Ok(Item::Expr(TangleExpr::Int(terms.remove(0).1)));
        }
        let cf = ContinuedFraction::new(terms.into_iter().map(|(_, a)| a))
            .map_err(|e| syntax(open, e.to_string()))?;
        Ok(Item::Cf(cf))
    }

    fn finish(&self) -> Result<(), NotationError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of input"))
        } else {
            Ok(())
        }
    }
}

fn as_fraction(toks: &[(usize, Tok)]) -> Option<Fraction> {
    let (neg, rest) = match toks {
        [(_, Tok::Minus), rest @ ..] => (true, rest),
        _ => (false, toks),
    };
    let sign = |n: &BigInt| if neg { -n } else { n.clone() };
    match rest {
        [(_, Tok::Ident(s))] if s == "inf" && !neg => Some(Fraction::infinity()),
        [(_, Tok::Int(p))] => Some(Fraction::integer(sign(p))),
        [(_, Tok::Int(p)), (_, Tok::Slash), (_, Tok::Int(q))] => {
            Fraction::new(sign(p), q.clone()).ok()
        }
        [(_, Tok::Int(p)), (_, Tok::Slash), (_, Tok::Minus), (_, Tok::Int(q))] => {
            Fraction::new(sign(p), -q).ok()
        }
        _ => None,
    }
}

pub fn parse(text: &str) -> Result<Notation, NotationError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    if let Some(f) = as_fraction(&toks) {
        return Ok(Notation::Fraction(f));
    }
    if let [(at, Tok::Int(_)), (_, Tok::Slash), ..] = toks.as_slice() {
        if matches!(toks.get(2), Some((_, Tok::Int(z))) if z.is_zero())
            && matches!(&toks[0].1, Tok::Int(z) if z.is_zero())
        {
            return Err(NotationError {
                offset: *at,
                message: "0/0 is not a fraction".into(),
                kind: ErrorKind::Domain,
            });
        }
    }
    let mut p = Parser {
        toks,
        pos: 0,
        len: text.len(),
    };
    let closure = match (p.toks.first(), p.toks.get(1)) {
        (Some((_, Tok::Ident(n))), Some((_, Tok::LParen))) if n == "N" || n == "D" => {
            p.pos = 2;
            Some(if n == "N" {
                Closure::Numerator
            } else {
                Closure::Denominator
            })
        }
        _ => None,
    };
    let item = p.expr()?;
    if let Some(which) = closure {
        p.expect(Tok::RParen, "`)`")?;
        p.finish()?;
        return Ok(Notation::Closed(which, item.expr()));
    }
    p.finish()?;
    Ok(match item {
        Item::Cf(cf) => Notation::ContinuedFraction(cf),
        Item::Expr(e) => Notation::Tangle(e),
    })
}
