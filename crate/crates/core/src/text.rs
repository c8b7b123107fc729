//! Text syntax for letters, words, patterns, rays and points.
//!
//! Letters: a single digit, `<n>` for any integer, `[a b …]` for a block
//! letter (the code of a tuple). `_` is ø, `*` matches any letter and
//! `!{a,b}` matches any letter outside the set. Rays read `(p)^- t @k`.
//! Two-sided points read `@`, `(p)^- u . v #`, `(p)^- t @k` or
//! `(p)^- u . v (q)^+`, with `.` between indices 0 and 1. One-sided points
//! read `@`, `u #` or `u . (p)^+`.

use crate::point::{BiPoint, OnePoint, PointError};
use crate::words::{
    decode_tuple, encode_tuple, Cell, LeftRay, Letter, PatCell, Pattern, WordError, FRESH,
};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Point(#[from] PointError),
}

fn syntax(pos: usize, msg: impl Into<String>) -> TextError {
    TextError::Syntax {
        pos,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Letter(Letter),
    Empty,
    Star,
    Except(BTreeSet<Letter>),
    Open,
    CloseLeft,
    CloseRight,
    Dot,
    Hash,
    At(Option<i64>),
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().collect(),
            i: 0,
            src,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.src.len(), |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TextError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Result<u128, TextError> {
        self.skip_ws();
        let start = self.i;
        let mut v: u128 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u128))
                .ok_or_else(|| syntax(self.pos(), "number too large"))?;
            self.i += 1;
        }
        if self.i == start {
            return Err(syntax(self.pos(), "expected a number"));
        }
        Ok(v)
    }

    fn letter_value(&mut self) -> Result<Letter, TextError> {
        let pos = self.pos();
        let v = self.number()?;
        if v >= FRESH as u128 {
            return Err(syntax(pos, "letter out of range"));
        }
        Ok(v as Letter)
    }

    fn next(&mut self) -> Result<Option<Tok>, TextError> {
        self.skip_ws();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        self.i += 1;
        let tok = match c {
            '0'..='9' => Tok::Letter(c.to_digit(10).unwrap() as Letter),
            '<' => {
                let a = self.letter_value()?;
                self.expect('>')?;
                Tok::Letter(a)
            }
            '[' => {
                let mut tuple = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(']') {
                        self.i += 1;
                        break;
                    }
                    match self.next()? {
                        Some(Tok::Letter(a)) => tuple.push(a),
                        _ => return Err(syntax(pos, "block letters hold plain letters only")),
                    }
                }
                Tok::Letter(
                    encode_tuple(&tuple)
                        .ok_or_else(|| syntax(pos, "empty or oversized block letter"))?,
                )
            }
            '_' => Tok::Empty,
            '*' => Tok::Star,
            '!' => {
                self.expect('{')?;
                let mut set = BTreeSet::new();
                self.skip_ws();
                if self.peek() == Some('}') {
                    self.i += 1;
                } else {
                    loop {
                        set.insert(self.letter_value()?);
                        self.skip_ws();
                        match self.peek() {
                            Some(',') => self.i += 1,
                            Some('}') => {
                                self.i += 1;
                                break;
                            }
                            _ => return Err(syntax(self.pos(), "expected `,` or `}`")),
                        }
                    }
                }
                Tok::Except(set)
            }
            '(' => Tok::Open,
            ')' => {
                self.expect('^')?;
                match self.peek() {
                    Some('-') | Some('−') => {
                        self.i += 1;
                        Tok::CloseLeft
                    }
                    Some('+') => {
                        self.i += 1;
                        Tok::CloseRight
                    }
                    _ => return Err(syntax(self.pos(), "expected `-` or `+` after `^`")),
                }
            }
            '.' => Tok::Dot,
            '#' => Tok::Hash,
            '@' => {
                self.skip_ws();
                let neg = matches!(self.peek(), Some('-') | Some('−'));
                if neg {
                    self.i += 1;
                }
                self.skip_ws();
                if neg || self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let p = self.pos();
                    let v = self.number()?;
                    let v = i64::try_from(v).map_err(|_| syntax(p, "index out of range"))?;
                    Tok::At(Some(if neg { -v } else { v }))
                } else {
                    Tok::At(None)
                }
            }
            _ => return Err(syntax(pos, format!("unexpected `{c}`"))),
        };
        Ok(Some(tok))
    }

    fn all(mut self) -> Result<Vec<(usize, Tok)>, TextError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let pos = self.pos();
            match self.next()? {
                Some(t) => out.push((pos, t)),
                None => return Ok(out),
            }
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, TextError> {
        Ok(Parser {
            toks: Lexer::new(src).all()?,
            i: 0,
            end: src.len(),
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn want(&mut self, t: &Tok, what: &str) -> Result<(), TextError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn letters(&mut self) -> Vec<Letter> {
        let mut out = Vec::new();
        while let Some(Tok::Letter(a)) = self.peek() {
            out.push(*a);
            self.i += 1;
        }
        out
    }

    fn finish(&self) -> Result<(), TextError> {
        if self.i == self.toks.len() {
            Ok(())
        } else {
            Err(syntax(self.pos(), "trailing input"))
        }
    }

    fn period(&mut self, close: Tok) -> Result<Vec<Letter>, TextError> {
        self.want(&Tok::Open, "`(`")?;
        let p = self.letters();
        let what = if close == Tok::CloseLeft {
            "`)^-`"
        } else {
            "`)^+`"
        };
        self.want(&close, what)?;
        Ok(p)
    }
}

pub fn parse_letter(s: &str) -> Result<Letter, TextError> {
    let mut p = Parser::new(s)?;
    let w = p.letters();
    p.finish()?;
    match w[..] {
        [a] => Ok(a),
        _ => Err(syntax(0, "expected exactly one letter")),
    }
}

/// A word over the extended alphabet, e.g. `2 3 _ _`.
pub fn parse_word(s: &str) -> Result<Vec<Cell>, TextError> {
    let mut p = Parser::new(s)?;
    let mut out = Vec::new();
    while let Some(t) = p.peek() {
        match t {
            Tok::Letter(a) => out.push(Some(*a)),
            Tok::Empty => out.push(None),
            _ => return Err(syntax(p.pos(), "expected a letter or `_`")),
        }
        p.i += 1;
    }
    Ok(out)
}

/// A word over the alphabet without ø.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>, TextError> {
    let mut p = Parser::new(s)?;
    let w = p.letters();
    p.finish()?;
    Ok(w)
}

pub fn parse_pattern(s: &str) -> Result<Pattern, TextError> {
    let mut p = Parser::new(s)?;
    let mut cells = Vec::new();
    while let Some(t) = p.peek() {
        cells.push(match t {
            Tok::Letter(a) => PatCell::Is(*a),
            Tok::Star => PatCell::Any,
            Tok::Except(set) => PatCell::AnyExcept(set.clone()),
            _ => return Err(syntax(p.pos(), "expected a letter, `*` or `!{..}`")),
        });
        p.i += 1;
    }
    Ok(Pattern::new(cells)?)
}

/// `(p)^- t @k`; the end index defaults to 0.
pub fn parse_ray(s: &str) -> Result<LeftRay, TextError> {
    let mut p = Parser::new(s)?;
    let period = p.period(Tok::CloseLeft)?;
    let t = p.letters();
    let end = match p.peek() {
        Some(Tok::At(Some(k))) => {
            let k = *k;
            p.i += 1;
            k
        }
        _ => 0,
    };
    p.finish()?;
    Ok(LeftRay::new(period, t, end)?)
}

pub fn parse_point(s: &str) -> Result<BiPoint, TextError> {
    let mut p = Parser::new(s)?;
    if p.eat(&Tok::At(None)) {
        p.finish()?;
        return Ok(BiPoint::Empty);
    }
    let left = p.period(Tok::CloseLeft)?;
    let mut u = p.letters();
    if let Some(Tok::At(Some(k))) = p.peek() {
        let k = *k;
        p.i += 1;
        p.finish()?;
        return Ok(BiPoint::Finite(LeftRay::new(left, u, k)?));
    }
    p.want(&Tok::Dot, "`.` or `@k`")?;
    let v = p.letters();
    let start = 1 - u.len() as i64;
    let vl = v.len() as i64;
    u.extend(v);
    if p.eat(&Tok::Hash) {
        p.finish()?;
        return Ok(BiPoint::Finite(LeftRay::new(left, u, vl)?));
    }
    let right = p.period(Tok::CloseRight)?;
    p.finish()?;
    Ok(BiPoint::infinite(left, u, right, start)?)
}

pub fn parse_one_point(s: &str) -> Result<OnePoint, TextError> {
    let mut p = Parser::new(s)?;
    if p.eat(&Tok::At(None)) {
        p.finish()?;
        return Ok(OnePoint::Empty);
    }
    let u = p.letters();
    if p.eat(&Tok::Hash) {
        p.finish()?;
        return Ok(OnePoint::finite(u));
    }
    p.want(&Tok::Dot, "`#` or `.`")?;
    let period = p.period(Tok::CloseRight)?;
    p.finish()?;
    Ok(OnePoint::infinite(u, period)?)
}

/// How letters are rendered: plain integers or decoded block letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Plain,
    Block(usize),
}

impl Style {
    pub fn letter(self, a: Letter) -> String {
        match self {
            _ if a == FRESH => "?".to_string(),
            Style::Plain if a < 10 => a.to_string(),
            Style::Plain => format!("<{a}>"),
            Style::Block(m) => format!("[{}]", Style::Plain.compact(&decode_tuple(a, m))),
        }
    }

    pub fn cell(self, c: Cell) -> String {
        c.map_or_else(|| "_".to_string(), |a| self.letter(a))
    }

    /// Letters without separators, as inside a period.
    pub fn compact(self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.letter(a)).collect()
    }

    /// Cells separated by single spaces.
    pub fn word(self, w: &[Cell]) -> String {
        w.iter()
            .map(|&c| self.cell(c))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn pattern(self, p: &Pattern) -> String {
        p.cells()
            .iter()
            .map(|c| match c {
                PatCell::Is(a) => self.letter(*a),
                PatCell::Any => "*".to_string(),
                PatCell::AnyExcept(s) => {
                    format!(
                        "!{{{}}}",
                        s.iter()
                            .map(|a| a.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                }
            })
            .collect()
    }

    pub fn ray(self, r: &LeftRay) -> String {
        let mut out = format!("({})^-", self.compact(r.period()));
        for &a in r.transient() {
            out.push(' ');
            out.push_str(&self.letter(a));
        }
        out.push_str(&format!(" @{}", r.end()));
        out
    }

    /// Letters at `lo..=hi` with a leading space each.
    fn run(self, x: &BiPoint, lo: i64, hi: i64) -> String {
        (lo..=hi)
            .map(|i| format!(" {}", self.cell(x.index(i))))
            .collect()
    }

    pub fn point(self, x: &BiPoint) -> String {
        let letters = |lo: i64, hi: i64| -> Vec<Letter> {
            (lo..=hi).map(|i| x.index(i).expect("letter")).collect()
        };
        match x {
            BiPoint::Empty => "@".to_string(),
            BiPoint::Finite(r) if r.end() < 0 => self.ray(r),
            BiPoint::Finite(r) => {
                let lo = (r.end() - r.transient().len() as i64 + 1).min(1);
                let p = r.period().len() as i64;
                format!(
                    "({})^-{} .{} #",
                    self.compact(&letters(lo - p, lo - 1)),
                    self.run(x, lo, 0),
                    self.run(x, 1, r.end())
                )
            }
            BiPoint::Infinite(t) => {
                let (lo, hi) = if t.body().is_empty() && t.left() == t.right() {
                    (1, 0)
                } else {
                    (
                        t.start().min(1),
                        (t.start() + t.body().len() as i64 - 1).max(0),
                    )
                };
                let (p, q) = (t.left().len() as i64, t.right().len() as i64);
                format!(
                    "({})^-{} .{} ({})^+",
                    self.compact(&letters(lo - p, lo - 1)),
                    self.run(x, lo, 0),
                    self.run(x, 1, hi),
                    self.compact(&letters(hi + 1, hi + q))
                )
            }
        }
    }

    pub fn one_point(self, z: &OnePoint) -> String {
        let spaced = |w: &[Letter]| {
            w.iter()
                .map(|&a| format!("{} ", self.letter(a)))
                .collect::<String>()
        };
        match z {
            OnePoint::Empty => "@".to_string(),
            OnePoint::Finite(w) => format!("{}#", spaced(w)),
            OnePoint::Infinite { transient, period } => {
                format!("{}. ({})^+", spaced(transient), self.compact(period))
            }
        }
    }
}

pub fn fmt_letter(a: Letter) -> String {
    Style::Plain.letter(a)
}

pub fn fmt_word(w: &[Cell]) -> String {
    Style::Plain.word(w)
}

pub fn fmt_pattern(p: &Pattern) -> String {
    Style::Plain.pattern(p)
}

pub fn fmt_ray(r: &LeftRay) -> String {
    Style::Plain.ray(r)
}

pub fn fmt_point(x: &BiPoint) -> String {
    Style::Plain.point(x)
}

pub fn fmt_one_point(z: &OnePoint) -> String {
    Style::Plain.one_point(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        for s in [
            "@",
            "(1)^- . 2 3 #",
            "(0)^- 1 . #",
            "(0)^- . (1)^+",
            "(01)^- . (01)^+",
            "(1)^- 2 . 3 #",
            "(0)^- 1 . 2 (<12>3)^+",
            "(1)^- 2 @-3",
        ] {
            assert_eq!(fmt_point(&parse_point(s).unwrap()), s);
        }
    }

    #[test]
    fn point_semantics() {
        let x = parse_point("(1)^- . 2 3 #").unwrap();
        assert_eq!(x.index(2), Some(3));
        assert_eq!(x.shift(1), parse_point("(1)^- 2 . 3 #").unwrap());
        assert_eq!(
            parse_point("(0)^- 1 @-1").unwrap(),
            parse_point("(0)^- 1 . #").unwrap().shift(1)
        );
        assert_eq!(
            parse_point("(1)^- 2 @ − 3").unwrap(),
            parse_point("(1)^- 2 @-3").unwrap()
        );
    }

    #[test]
    fn rays_and_patterns() {
        let r = parse_ray("(0)^- 1 1 @2").unwrap();
        assert_eq!(fmt_ray(&r), "(0)^- 1 1 @2");
        assert_eq!(parse_ray("(1)^-").unwrap(), LeftRay::constant(1, 0));
        for s in ["11", "*2", "!{0,1}", "<10>*"] {
            assert_eq!(fmt_pattern(&parse_pattern(s).unwrap()), s);
        }
        assert_eq!(fmt_word(&parse_word("2 3 _ _").unwrap()), "2 3 _ _");
        assert!(parse_pattern("").is_err());
    }

    #[test]
    fn block_letters() {
        let a = parse_letter("[0 1]").unwrap();
        assert_eq!(Style::Block(2).letter(a), "[01]");
        assert_eq!(parse_letter("[01]").unwrap(), a);
    }

    #[test]
    fn one_sided_round_trip() {
        for s in ["@", "1 2 #", "2 . (01)^+", ". (2)^+"] {
            assert_eq!(fmt_one_point(&parse_one_point(s).unwrap()), s);
        }
    }

    #[test]
    fn errors_report_position() {
        assert!(matches!(
            parse_point("(1)^- 2 x"),
            Err(TextError::Syntax { pos: 8, .. })
        ));
        assert!(parse_ray("()^-").is_err());
    }
}
