use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// Generators plus relator words.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Domain(format!("duplicate generator name {n:?}")));
            }
        }
        for r in &relators {
            if r.max_generator().is_some_and(|g| g as usize >= names.len()) {
                return Err(Error::Domain("relator uses an undeclared generator".into()));
            }
        }
        Ok(Presentation { names, relators })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Parses one word in this presentation's generators.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let index: HashMap<&str, u32> = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u32))
            .collect();
        let tokens = tokenize(s)?;
        let mut p = WordParser {
            tokens: &tokens,
            pos: 0,
            index: &index,
        };
        let w = p.word()?;
        if p.pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(w)
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # S_3
    /// gens: a b
    /// rels: a^2, b^2, (a b)^3
    /// ```
    ///
    /// Letters are whitespace separated, `^` takes an integer exponent,
    /// parentheses group sub-words and `[x, y, …]` is a left-normed commutator.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut rel_lines = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("gens:") {
                if names.is_some() {
                    return Err(Error::Parse("more than one gens: line".into()));
                }
                let ns: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for n in &ns {
                    if !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(Error::Parse(format!("bad generator name {n:?}")));
                    }
                }
                names = Some(ns);
            } else if let Some(rest) = line.strip_prefix("rels:") {
                rel_lines.push(rest.to_string());
            } else {
                return Err(Error::Parse(format!("unrecognized line {line:?}")));
            }
        }
        let names = names.ok_or_else(|| Error::Parse("missing gens: line".into()))?;
        let mut pres = Presentation::new(names, Vec::new())?;
        for line in rel_lines {
            for part in split_top_level(&line)? {
                if part.trim().is_empty() {
                    continue;
                }
                let w = pres.parse_word(&part)?;
                pres.relators.push(w);
            }
        }
        Ok(pres)
    }

    /// Checks that the given permutations satisfy every relator.
    pub fn satisfied_by(&self, images: &[crate::Permutation]) -> bool {
        if images.len() != self.names.len() {
            return false;
        }
        self.relators.iter().all(|r| {
            let mut p = crate::Permutation::identity(images[0].degree());
            for l in r.letters() {
                let g = &images[l.gen as usize];
                p = if l.inverse { &p * &g.inverse() } else { &p * g };
            }
            p.is_identity()
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.names.join(" "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display(&self.names).to_string())
            .collect();
        writeln!(f, "rels: {}", rels.join(", "))
    }
}

fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
    }
    out.push(cur);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() || c == '*' => i += 1,
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            '-' | '0'..='9' if matches!(out.last(), Some(Token::Caret)) => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = lit
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {lit:?}")))?;
                out.push(Token::Int(v));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct WordParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    index: &'a HashMap<&'a str, u32>,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::empty();
        while let Some(t) = self.peek() {
            if matches!(t, Token::RParen | Token::RBracket | Token::Comma) {
                break;
            }
            let atom = self.atom()?;
            w = w.concat(&atom);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        let base = match self.tokens.get(self.pos).cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                if name == "1" {
                    Word::empty()
                } else {
                    let g = self
                        .index
                        .get(name.as_str())
                        .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                    Word(vec![Letter::new(*g)])
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Token::RParen)?;
                w
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut parts = 1;
                while self.peek() == Some(&Token::Comma) {
                    self.pos += 1;
                    let next = self.word()?;
                    acc = acc.commutator(&next);
                    parts += 1;
                }
                if parts < 2 {
                    return Err(Error::Parse("commutator needs two entries".into()));
                }
                self.expect(Token::RBracket)?;
                acc
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        };
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Int(k)) => {
                    let k = *k;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("'^' must be followed by an integer".into())),
            }
        }
        Ok(base)
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?}")))
        }
    }
}

/// A presentation with one generator per element of a finite group and the
/// relators `g·h·(gh)⁻¹` for every ordered pair.
#[derive(Clone, Debug)]
pub struct MultiplicationTable {
    presentation: Presentation,
    /// `products[g * n + h]` is the generator index of `g·h`.
    products: Vec<u32>,
    n: usize,
}

impl MultiplicationTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Generator `i` stands for element `Elem(i)` of the source group.
    pub fn element(&self, generator: u32) -> Elem {
        Elem(generator)
    }

    pub fn product(&self, g: u32, h: u32) -> u32 {
        self.products[g as usize * self.n + h as usize]
    }

    pub fn inverse(&self, g: u32) -> u32 {
        (0..self.n as u32)
            .find(|&h| self.product(g, h) == 0)
            .expect("multiplication table of a group")
    }
}

pub fn multiplication_table_presentation(g: &FiniteGroup) -> Result<MultiplicationTable> {
    let n = g.order();
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut relators = Vec::with_capacity(n * n);
    let mut products = Vec::with_capacity(n * n);
    for a in g.elements() {
        for b in g.elements() {
            let c = g.mul(a, b);
            products.push(c.0);
            relators.push(Word(vec![
                Letter::new(a.0),
                Letter::new(b.0),
                Letter::new(c.0).inv(),
            ]));
        }
    }
    Ok(MultiplicationTable {
        presentation: Presentation::new(names, relators)?,
        products,
        n,
    })
}

/// A presentation of `g` on its own generators, read off the Cayley graph:
/// one relator `w(e)·s·w(e·s)⁻¹` per non-tree edge.
pub fn cayley_presentation(g: &FiniteGroup) -> Presentation {
    let word_of = |e: Elem| Word(g.word(e).iter().map(|&s| Letter::new(s as u32)).collect());
    let mut relators = Vec::new();
    for e in g.elements() {
        let we = word_of(e);
        for s in 0..g.num_generators() {
            let f = g.mul_gen(e, s, false);
            let r = we
                .concat(&Word::gen(s as u32))
                .concat(&word_of(f).inverse())
                .cyclic_reduce();
            if !r.is_empty() && !relators.contains(&r) {
                relators.push(r);
            }
        }
    }
    Presentation {
        names: g.generator_names().to_vec(),
        relators,
    }
}
