use std::sync::Arc;

use exactla::{parse_rational, Rational};
use num_traits::{One, Signed};

use crate::algebra::{algebra, bracket, BracketWord, LieElement};
use crate::word::Word;
use crate::{GeneratorSet, LieError};

/// Render a basis element as a nested bracket expression, e.g. `[e1,[e1,f1]]`.
pub fn format_bracket_word(g: &GeneratorSet, b: BracketWord) -> String {
    match b {
        BracketWord::Lyndon(w) => format_lyndon(g, w),
        BracketWord::Square(w) => {
            let s = format_lyndon(g, w);
            format!("[{s},{s}]")
        }
    }
}

fn format_lyndon(g: &GeneratorSet, w: Word) -> String {
    match w.standard_factorization() {
        None => g.name(w.first() as usize).to_string(),
        Some((u, v)) => format!("[{},{}]", format_lyndon(g, u), format_lyndon(g, v)),
    }
}

/// `c1*[..] + c2*[..] − …`; `0` for the zero element.
pub fn format_element(x: &LieElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (b, c)) in x.terms().iter().enumerate() {
        let word = format_bracket_word(x.gens(), *b);
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&word);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Num(String),
    Open,
    Close,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
}

fn lex(s: &str) -> Result<Vec<Tok>, LieError> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '[' => {
                out.push(Tok::Open);
                i += 1
            }
            ']' => {
                out.push(Tok::Close);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let st = i;
                while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '/') {
                    i += 1;
                }
                out.push(Tok::Num(cs[st..i].iter().collect()));
            }
            a if a.is_alphabetic() || a == '_' => {
                let st = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Name(cs[st..i].iter().collect()));
            }
            other => return Err(LieError::Syntax(format!("unexpected `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    gens: &'a Arc<GeneratorSet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<(), LieError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(LieError::Syntax(format!("expected {t:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<LieElement, LieError> {
        let mut acc = LieElement::zero(self.gens);
        let mut sign = Rational::one();
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = acc.add_scaled(&t, &sign)?;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LieElement, LieError> {
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            let c = parse_rational(&n).map_err(|e| LieError::Syntax(e.to_string()))?;
            self.expect(Tok::Star)?;
            return Ok(self.atom()?.scale(&c));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<LieElement, LieError> {
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                let i = self.gens.index_of(&n).ok_or_else(|| LieError::Syntax(format!("unknown generator `{n}`")))?;
                Ok(LieElement::generator(self.gens, i))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::Close)?;
                bracket(&a, &b)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            other => Err(LieError::Syntax(format!("unexpected {other:?}"))),
        }
    }
}

/// Parse an element such as `2*[[e1,f1],e2] - 1/2*[e1,f1] + e2`.
pub fn parse_element(gens: &Arc<GeneratorSet>, s: &str) -> Result<LieElement, LieError> {
    let toks = lex(s)?;
    if toks == [Tok::Num("0".into())] {
        return Ok(LieElement::zero(gens));
    }
    let _ = algebra(gens);
    let mut p = Parser { toks, pos: 0, gens };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(LieError::Syntax(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
