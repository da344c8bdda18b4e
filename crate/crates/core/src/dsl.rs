//! A small expression language for elements.
//!
//! ```text
//! expr  := term { "*" term }
//! term  := atom [ "^" NAT ]
//! atom  := "I" | "W" | "G" NAT | "U" NAT
//!        | "E" "{" [ point { "," point } ] "}"
//!        | "(" expr ")" | "@" path | "@" json-object
//! point := "(" NAT "," NAT ")"
//! ```
//!
//! `I` is the identity, `W` the swap, `G n` / `U n` the row / column
//! generators, `E{...}` the identity with the listed holes. `@path` loads a
//! JSON element file and `@{...}` embeds the same JSON inline. A path runs
//! until whitespace, `*`, `^` or `)`. Whitespace is insignificant elsewhere.
//!
//! Products read left to right in application order: `A * B` applies `A`
//! first, then `B`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use crate::element::{Element, Z2};
use crate::equations::solve_left_minimal;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::quotient::{generator_product, iota_map, FreeWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Identity,
    Swap,
    Gamma(u32),
    Upsilon(u32),
    PartialIdentity(Vec<Point>),
    Literal(Box<Element>),
    File(PathBuf),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0, line: 1, column: 1 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, column: self.column, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Skips whitespace, then reports the next character without consuming it.
    fn next_token(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.next_token() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return match self.peek() {
                Some(c) => self.error(format!("expected a number, found '{c}'")),
                None => self.error("expected a number, found end of input"),
            };
        }
        let (line, column) = (self.line, self.column);
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse {
            line,
            column,
            message: "number out of range".into(),
        })
    }

    fn positive(&mut self, what: &str) -> Result<u32> {
        let (line, column) = {
            self.skip_ws();
            (self.line, self.column)
        };
        let n = self.nat()?;
        if n == 0 {
            return Err(Error::Parse { line, column, message: format!("{what} must be at least 1") });
        }
        Ok(n)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut factors = vec![self.term()?];
        while self.next_token() == Some('*') {
            self.bump();
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn term(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if self.next_token() == Some('^') {
            self.bump();
            let k = self.nat()?;
            return Ok(Expr::Power(Box::new(atom), k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.next_token() else {
            return self.error("expected an expression, found end of input");
        };
        match c {
            'I' => {
                self.bump();
                Ok(Expr::Identity)
            }
            'W' => {
                self.bump();
                Ok(Expr::Swap)
            }
            'G' => {
                self.bump();
                Ok(Expr::Gamma(self.positive("generator index")?))
            }
            'U' => {
                self.bump();
                Ok(Expr::Upsilon(self.positive("generator index")?))
            }
            'E' => {
                self.bump();
                self.holes()
            }
            '(' => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            '@' => {
                self.bump();
                if self.peek() == Some('{') {
                    self.literal()
                } else {
                    self.path()
                }
            }
            c => self.error(format!("unexpected '{c}'")),
        }
    }

    fn holes(&mut self) -> Result<Expr> {
        self.expect('{')?;
        let mut seen = BTreeSet::new();
        let mut points = Vec::new();
        if self.next_token() == Some('}') {
            self.bump();
            return Ok(Expr::PartialIdentity(points));
        }
        loop {
            self.skip_ws();
            let (line, column) = (self.line, self.column);
            self.expect('(')?;
            let i = self.positive("coordinate")?;
            self.expect(',')?;
            let j = self.positive("coordinate")?;
            self.expect(')')?;
            let p = Point { i, j };
            if !seen.insert(p) {
                return Err(Error::Parse { line, column, message: format!("duplicate hole {p}") });
            }
            points.push(p);
            match self.next_token() {
                Some(',') => {
                    self.bump();
                }
                Some('}') => {
                    self.bump();
                    return Ok(Expr::PartialIdentity(points));
                }
                Some(c) => return self.error(format!("expected ',' or '}}', found '{c}'")),
                None => return self.error("unterminated hole list"),
            }
        }
    }

    /// An inline JSON object; JSON element records contain no braces inside strings.
    fn literal(&mut self) -> Result<Expr> {
        let (line, column) = (self.line, self.column);
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.bump() {
            match c {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = &self.src[start..self.pos];
                        return Element::from_json(text)
                            .map(|e| Expr::Literal(Box::new(e)))
                            .map_err(|e| Error::Parse { line, column, message: format!("bad element literal: {e}") });
                    }
                }
                _ => {}
            }
        }
        Err(Error::Parse { line, column, message: "unterminated element literal".into() })
    }

    fn path(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace() && !matches!(c, '*' | '^' | ')')) {
            self.bump();
        }
        if start == self.pos {
            return self.error("expected a file path after '@'");
        }
        Ok(Expr::File(PathBuf::from(&self.src[start..self.pos])))
    }
}

/// Parses a complete expression. Errors carry the 1-based line and column.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    match p.next_token() {
        None => Ok(e),
        Some(c) => p.error(format!("unexpected '{c}' after expression")),
    }
}

pub fn eval(e: &Expr) -> Result<Element> {
    Ok(match e {
        Expr::Identity => Element::identity(),
        Expr::Swap => Element::swap(),
        Expr::Gamma(n) => Element::gamma(*n)?,
        Expr::Upsilon(n) => Element::upsilon(*n)?,
        Expr::PartialIdentity(holes) => Element::partial_identity(holes.iter().copied()),
        Expr::Literal(a) => (**a).clone(),
        Expr::File(path) => Element::from_json(&std::fs::read_to_string(path)?)?,
        Expr::Product(factors) => {
            let mut acc = Element::identity();
            for f in factors {
                acc = acc.compose(&eval(f)?);
            }
            acc
        }
        Expr::Power(base, k) => eval(base)?.pow(*k),
    })
}

/// `eval(parse(text))`.
pub fn eval_str(text: &str) -> Result<Element> {
    eval(&parse(text)?)
}

fn canonical_text(word: &FreeWord, g: Z2) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letter = |c: char, k: u32, e: u32| if e == 1 { format!("{c}{k}") } else { format!("{c}{k}^{e}") };
    parts.extend(word.a_exponents().iter().map(|(&k, &e)| letter('G', k, e)));
    parts.extend(word.b_exponents().iter().map(|(&l, &f)| letter('U', l, f)));
    if g.is_one() {
        parts.push("W".into());
    }
    if parts.is_empty() {
        "I".into()
    } else {
        parts.join(" * ")
    }
}

fn holes_text(holes: &BTreeSet<Point>) -> String {
    let pts: Vec<String> = holes.iter().map(|p| format!("({},{})", p.i, p.j)).collect();
    format!("E{{{}}}", pts.join(","))
}

fn deviation_text(holes: &BTreeSet<Point>, word: &FreeWord, g: Z2, canon_text: &str) -> String {
    if word.is_unit() && g == Z2::Zero {
        holes_text(holes)
    } else {
        format!("{} * {canon_text}", holes_text(holes))
    }
}

/// An expression evaluating to `a`: the generator product of its class,
/// preceded by the finite deviation `d` with `d * product = a`, written as
/// `E{...}` when `d` is a partial identity and as an inline literal otherwise.
/// Elements without such a deviation print as a single literal.
pub fn print(a: &Element) -> String {
    let x = iota_map(a);
    let canon_text = canonical_text(&x.word, x.g);
    let mut canon = generator_product(&x.word);
    if x.g.is_one() {
        canon = canon.compose(&Element::swap());
    }
    if canon == *a {
        return canon_text;
    }
    if a.natural_leq(&canon) {
        let holes: BTreeSet<Point> = a.domain_complement().difference(&canon.domain_complement()).copied().collect();
        return deviation_text(&holes, &x.word, x.g, &canon_text);
    }
    match solve_left_minimal(&canon, a) {
        Some(d) if d.is_idempotent() => deviation_text(&d.domain_complement(), &x.word, x.g, &canon_text),
        Some(d) => format!("@{} * {canon_text}", d.to_json()),
        None => format!("@{}", a.to_json()),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Identity => f.write_str("I"),
            Expr::Swap => f.write_str("W"),
            Expr::Gamma(n) => write!(f, "G{n}"),
            Expr::Upsilon(n) => write!(f, "U{n}"),
            Expr::PartialIdentity(holes) => f.write_str(&holes_text(&holes.iter().copied().collect())),
            Expr::Literal(a) => write!(f, "@{}", a.to_json()),
            Expr::File(p) => write!(f, "@{}", p.display()),
            Expr::Product(factors) => {
                for (k, x) in factors.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" * ")?;
                    }
                    match x {
                        Expr::Product(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Expr::Power(base, k) => match **base {
                Expr::Product(_) | Expr::Power(..) => write!(f, "({base})^{k}"),
                _ => write!(f, "{base}^{k}"),
            },
        }
    }
}
