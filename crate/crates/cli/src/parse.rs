//! The system-file grammar.
//!
//! ```text
//! # comments run to end of line
//! vars: x1 x2            required, declares the variable order
//! components: 1          optional metadata for test fixtures
//! x1^2 + x2^2 - 1        one polynomial per line
//! ```
//!
//! Expressions are integer-coefficient polynomials built from the declared
//! names with `+`, `-`, `*`, `^`, parentheses, and unary minus. There is no
//! division and no implicit multiplication. Exponents are nonnegative
//! integers. Coefficients may be arbitrarily large.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use polarpoints_core::polycore::{Int, MPoly, Rat, Ring};
use polarpoints_core::sysbuild::InputSystem;

#[derive(Debug, PartialEq, Eq, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

/// A parsed input file, before validation against the library's invariants.
#[derive(Debug)]
pub struct SystemFile {
    pub variables: Vec<String>,
    /// Expected number of connected components, for fixtures. Never trusted
    /// by the algorithm itself.
    pub components: Option<usize>,
    pub polynomials: Vec<MPoly>,
}

impl SystemFile {
    pub fn into_input_system(self) -> Result<InputSystem, String> {
        InputSystem::new(self.polynomials).map_err(|e| e.to_string())
    }
}

#[derive(Debug, PartialEq, Clone)]
enum Tok {
    Int(Int),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line, col: 1 }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos] as char;
            let col = self.col;
            match c {
                ' ' | '\t' => {
                    self.bump(1);
                }
                '#' => break,
                '+' => {
                    out.push((Tok::Plus, col));
                    self.bump(1);
                }
                '-' => {
                    out.push((Tok::Minus, col));
                    self.bump(1);
                }
                '*' => {
                    out.push((Tok::Star, col));
                    self.bump(1);
                }
                '^' => {
                    out.push((Tok::Caret, col));
                    self.bump(1);
                }
                '(' => {
                    out.push((Tok::LParen, col));
                    self.bump(1);
                }
                ')' => {
                    out.push((Tok::RParen, col));
                    self.bump(1);
                }
                '/' => {
                    return err(
                        self.line,
                        col,
                        "division is not part of the grammar; coefficients must be integers",
                    );
                }
                '0'..='9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.bump(1);
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let n = Int::from_str(text).expect("digits parse");
                    out.push((Tok::Int(n), col));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.bump(1);
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((Tok::Ident(text.to_string()), col));
                }
                other => return err(self.line, col, format!("unexpected character '{}'", other)),
            }
        }
        Ok(out)
    }

    fn bump(&mut self, by: usize) {
        self.pos += by;
        self.col += by;
    }
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    ring: Ring,
    vars: &'a HashMap<String, usize>,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, c)| *c)
            .unwrap_or(1)
    }

    fn advance(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    // expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.advance();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.advance();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.advance();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    // factor := atom ['^' INT]
    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.advance();
            let col = self.col();
            match self.advance() {
                Some(Tok::Int(n)) => {
                    let e = match u32::try_from(n.clone()) {
                        Ok(e) if e <= 4096 => e,
                        _ => return err(self.line, col, "exponent out of range"),
                    };
                    let mut acc = MPoly::one(base.ring());
                    for _ in 0..e {
                        acc = &acc * &base;
                    }
                    Ok(acc)
                }
                _ => err(self.line, col, "expected an integer exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    // atom := INT | IDENT | '(' expr ')' | '-' atom
    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let col = self.col();
        match self.advance().cloned() {
            Some(Tok::Int(n)) => Ok(MPoly::constant(self.ring, Rat::from(n))),
            Some(Tok::Ident(name)) => match self.vars.get(&name) {
                Some(&j) => Ok(MPoly::var(self.ring, j)),
                None => err(self.line, col, format!("unknown variable '{}'", name)),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let col = self.col();
                match self.advance() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(self.line, col, "expected ')'"),
                }
            }
            Some(Tok::Minus) => {
                let inner = self.atom()?;
                Ok(-inner)
            }
            other => err(
                self.line,
                col,
                format!(
                    "expected a number, variable, or '(', found {}",
                    match other {
                        Some(t) => format!("'{}'", tok_name(&t)),
                        None => "end of line".to_string(),
                    }
                ),
            ),
        }
    }
}

fn tok_name(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Ident(_) => "name",
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
    }
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut variables: Option<Vec<String>> = None;
    let mut components: Option<usize> = None;
    let mut polynomials = Vec::new();
    let mut vars_index: HashMap<String, usize> = HashMap::new();
    let mut ring = Ring::x_only(0);

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            if variables.is_some() {
                return err(line_no, 1, "duplicate vars: line");
            }
            let names: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
            if names.is_empty() {
                return err(line_no, 1, "vars: line declares no variables");
            }
            for (j, name) in names.iter().enumerate() {
                if !name.chars().next().map(|c| c.is_ascii_alphabetic() || c == '_').unwrap_or(false)
                    || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return err(line_no, 1, format!("invalid variable name '{}'", name));
                }
                if vars_index.insert(name.clone(), j).is_some() {
                    return err(line_no, 1, format!("duplicate variable '{}'", name));
                }
            }
            ring = Ring::x_only(names.len());
            variables = Some(names);
            continue;
        }
        if let Some(rest) = line.strip_prefix("components:") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError {
                    line: line_no,
                    col: 1,
                    msg: "components: expects a nonnegative integer".to_string(),
                })?;
            components = Some(n);
            continue;
        }
        if variables.is_none() {
            return err(line_no, 1, "polynomials must come after the vars: line");
        }
        let toks = Lexer::new(raw.split('#').next().unwrap_or(""), line_no).tokens()?;
        let mut p = ExprParser { toks: &toks, pos: 0, line: line_no, ring, vars: &vars_index };
        let poly = p.expr()?;
        if p.pos < toks.len() {
            return err(line_no, p.col(), "trailing input after expression");
        }
        polynomials.push(poly);
    }

    let variables = match variables {
        Some(v) => v,
        None => return err(1, 1, "missing vars: line"),
    };
    if polynomials.is_empty() {
        return err(1, 1, "no polynomials given");
    }
    Ok(SystemFile { variables, components, polynomials })
}
