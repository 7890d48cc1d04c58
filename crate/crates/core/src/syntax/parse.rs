//! Text syntax for types, terms and sequents.
//!
//! Besides the fully parenthesized grammar printed by `Display`, the parser
//! accepts `_|_`, `~A`, unparenthesized right-associative `->`, redundant
//! grouping parentheses and, when declared, bare atom names.

use super::connectives::{bot, neg};
use super::term::{BoundVar, FreeVar, Term};
use super::types::Type;
use crate::error::{Error, Result};

/// Parser configuration.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Bare identifiers, mapped to `a0:1, a1:1, ...` in this order.
    pub atoms: Vec<String>,
}

impl ParseOptions {
    pub fn with_atoms<S: AsRef<str>>(atoms: &[S]) -> Self {
        ParseOptions {
            atoms: atoms.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }
}

pub fn parse_type(text: &str) -> Result<Type> {
    let mut p = Parser::new(text, ParseOptions::default());
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

pub fn parse_term(text: &str) -> Result<Term> {
    parse_term_with(text, &ParseOptions::default())
}

pub fn parse_term_with(text: &str, opts: &ParseOptions) -> Result<Term> {
    let mut p = Parser::new(text, opts.clone());
    let t = p.expr()?;
    p.end()?;
    t.type_of()?;
    Ok(t.canonical())
}

/// Parses a term and requires type 1.
pub fn parse_formula_with(text: &str, opts: &ParseOptions) -> Result<Term> {
    let t = parse_term_with(text, opts)?;
    let ty = t.type_of()?;
    if ty != Type::One {
        return Err(Error::IllTyped(format!("{t} has type {ty}, not 1")));
    }
    Ok(t)
}

pub fn parse_formula(text: &str) -> Result<Term> {
    parse_formula_with(text, &ParseOptions::default())
}

/// Splits `F1, F2 |- G1, G2` into its two formula lists.
pub fn parse_sequent_sides(text: &str, opts: &ParseOptions) -> Result<(Vec<Term>, Vec<Term>)> {
    let mut p = Parser::new(text, opts.clone());
    let ante = p.formula_list(true)?;
    p.skip_ws();
    if !p.eat("|-") {
        return Err(p.error("expected '|-'"));
    }
    let succ = p.formula_list(false)?;
    p.end()?;
    Ok((ante, succ))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    opts: ParseOptions,
    scope: Vec<BoundVar>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, opts: ParseOptions) -> Self {
        Parser {
            src,
            pos: 0,
            opts,
            scope: Vec::new(),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{tok}'")))
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn nat(&mut self) -> Result<u32> {
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        let n = digits.parse().map_err(|_| self.error("number out of range"))?;
        self.pos += digits.len();
        Ok(n)
    }

    fn ident(&mut self) -> Result<String> {
        let id: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        if id.is_empty() || !id.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return Err(self.error("expected an identifier"));
        }
        self.pos += id.len();
        Ok(id)
    }

    fn ty(&mut self) -> Result<Type> {
        if self.eat("0") {
            Ok(Type::Zero)
        } else if self.eat("1") {
            Ok(Type::One)
        } else if self.eat("(") {
            let mut comps = vec![self.ty()?];
            while self.eat(",") {
                comps.push(self.ty()?);
            }
            self.expect(")")?;
            Ok(Type::Product(comps))
        } else {
            Err(self.error("expected a type"))
        }
    }

    /// `index:type` after the `a` or `x` sigil.
    fn var_tail(&mut self) -> Result<(u32, Type)> {
        let n = self.nat()?;
        self.expect(":")?;
        Ok((n, self.ty()?))
    }

    fn binder(&mut self) -> Result<BoundVar> {
        self.skip_ws();
        if !self.rest().starts_with('x') {
            return Err(self.error("expected a bound variable"));
        }
        self.pos += 1;
        let (i, ty) = self.var_tail()?;
        Ok(BoundVar::new(i, ty))
    }

    fn formula_list(&mut self, before_turnstile: bool) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        self.skip_ws();
        let at_end = |p: &mut Self| {
            p.skip_ws();
            if before_turnstile {
                p.rest().starts_with("|-")
            } else {
                p.pos == p.src.len()
            }
        };
        if at_end(self) {
            return Ok(out);
        }
        loop {
            let start = self.pos;
            let f = self.expr()?;
            if let Err(e) = f.type_of() {
                return Err(Error::Parse {
                    pos: start,
                    msg: e.to_string(),
                });
            }
            if !f.is_formula() {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("{f} is not a formula"),
                });
            }
            out.push(f.canonical());
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    /// `app ("->" expr)?`
    fn expr(&mut self) -> Result<Term> {
        let lhs = self.unary()?;
        if self.eat("->") {
            let rhs = self.expr()?;
            Ok(Term::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat("~") {
            return Ok(neg(self.unary()?));
        }
        let mut t = self.primary()?;
        while self.peek() == Some('(') {
            self.pos += 1;
            let args = self.args()?;
            t = Term::app(t, args);
        }
        Ok(t)
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        let mut args = vec![self.expr()?];
        while self.eat(",") {
            args.push(self.expr()?);
        }
        self.expect(")")?;
        Ok(args)
    }

    fn primary(&mut self) -> Result<Term> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if self.eat("_|_") {
            return Ok(bot());
        }
        let start = self.pos;
        match c {
            '(' => {
                self.pos += 1;
                if self.keyword("all") {
                    let x = self.binder()?;
                    self.expect(".")?;
                    self.scope.push(x.clone());
                    let body = self.expr();
                    self.scope.pop();
                    let body = body?;
                    self.expect(")")?;
                    Ok(Term::All(x, Box::new(body)))
                } else if self.keyword("lam") {
                    let mut xs = vec![self.binder()?];
                    while !self.eat(".") {
                        xs.push(self.binder()?);
                    }
                    let n = xs.len();
                    self.scope.extend(xs.iter().cloned());
                    let body = self.expr();
                    self.scope.truncate(self.scope.len() - n);
                    let body = body?;
                    self.expect(")")?;
                    Ok(Term::Lam(xs, Box::new(body)))
                } else {
                    let t = self.expr()?;
                    self.expect(")")?;
                    Ok(t)
                }
            }
            '\'' => {
                self.pos += 1;
                Ok(Term::Object(self.ident()?))
            }
            '$' => {
                self.pos += 1;
                let f = self.ident()?;
                self.expect("(")?;
                Ok(Term::Fun(f, self.args()?))
            }
            'a' | 'x' if self.rest()[1..].starts_with(|d: char| d.is_ascii_digit()) => {
                self.pos += 1;
                let (i, ty) = self.var_tail()?;
                if c == 'a' {
                    Ok(Term::Free(FreeVar::new(i, ty)))
                } else {
                    let v = BoundVar::new(i, ty);
                    if !self.scope.contains(&v) {
                        self.pos = start;
                        return Err(self.error(format!("bound variable {v} is not in scope")));
                    }
                    Ok(Term::Bound(v))
                }
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let id = self.ident()?;
                match self.opts.atoms.iter().position(|a| *a == id) {
                    Some(i) => Ok(Term::atom(i as u32)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!("undeclared atom '{id}'")))
                    }
                }
            }
            _ => Err(self.error(format!("unexpected character '{c}'"))),
        }
    }

    /// Consumes `kw` when it is followed by whitespace.
    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let r = self.rest();
        if r.starts_with(kw) && r[kw.len()..].starts_with(char::is_whitespace) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types() {
        assert_eq!(parse_type("(0,(1))").unwrap(), Type::pred(&[Type::Zero, Type::pred(&[Type::One])]));
        assert!(parse_type("()").is_err());
    }

    #[test]
    fn round_trip_examples() {
        for s in [
            "a0:1",
            "(a0:1 -> a1:1)",
            "(all x0:1 . x0:1)",
            "(lam x0:1 x1:0 . (x0:1 -> a3:(0)(x1:0)))",
            "(lam x0:1 . x0:1)(a0:1)",
            "$f('c, a0:0)",
            "(all x0:(1) . x0:(1)(a0:1))",
        ] {
            let t = parse_term(s).unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn sugar() {
        let opts = ParseOptions::with_atoms(&["P", "Q"]);
        let peirce = parse_formula_with("((P -> Q) -> P) -> P", &opts).unwrap();
        assert_eq!(peirce.to_string(), "(((a0:1 -> a1:1) -> a0:1) -> a0:1)");
        assert_eq!(parse_formula("~a0:1").unwrap(), neg(Term::atom(0)));
        assert_eq!(parse_formula("_|_").unwrap(), bot());
        assert!(parse_formula("(all x5:1 . x5:1)").unwrap().is_bottom());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("(a0:1 -> ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_term("x0:1"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_term("a0:1(a1:1)"), Err(Error::IllTyped(_))));
        assert!(parse_formula("'c").is_err());
    }

    #[test]
    fn sequent_sides() {
        let (a, s) = parse_sequent_sides("a0:1, (a0:1 -> a1:1) |- a1:1", &ParseOptions::default()).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(s.len(), 1);
        let (a, s) = parse_sequent_sides("|-", &ParseOptions::default()).unwrap();
        assert!(a.is_empty() && s.is_empty());
        assert!(parse_sequent_sides("|- (", &ParseOptions::default()).is_err());
    }
}
