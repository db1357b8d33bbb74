//! Words, relators, and the Coxeter, progenitor and symmetric presentations.
//!
//! The native text format is
//!
//! ```text
//! gens S1 S2; rel S1^2; rel S2^2; rel (S1 S2)^3;
//! ```
//!
//! Letters are generator names, optionally raised to an integer power;
//! parenthesised groups may be raised to a power as well. Statements end
//! with `;` and may be separated by any whitespace.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{delete_node, CoxeterMatrix, Label};
use crate::enumerator::PermutationAction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}")]
    BadName(String),
    #[error("relator {0} is trivial after free reduction")]
    TrivialRelator(usize),
    #[error("letter refers to generator {gen} but only {count} are declared")]
    UnknownGenerator { gen: usize, count: usize },
    #[error("permutation action has {got} generators, expected {want}")]
    ActionMismatch { got: usize, want: usize },
    #[error("node {0} is out of range")]
    NodeOutOfRange(usize),
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    /// One-based signed index: `g+1` or `-(g+1)`.
    pub fn signed(self) -> i64 {
        let v = self.gen as i64 + 1;
        if self.inv {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(v: i64) -> Option<Self> {
        match v {
            0 => None,
            v if v > 0 => Some(Letter { gen: v as usize - 1, inv: false }),
            v => Some(Letter { gen: (-v) as usize - 1, inv: true }),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.signed())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Letter::from_signed(v).ok_or_else(|| serde::de::Error::custom("letter index 0"))
    }
}

/// Element of the free group, kept freely reduced by the constructors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::new(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one if inverse.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Smallest `u` with `self = u^e`; returns `(u, e)`.
    fn root(&self) -> (&[Letter], usize) {
        let n = self.0.len();
        for p in 1..n {
            if n.is_multiple_of(p) && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return (&self.0[..p], n / p);
            }
        }
        (&self.0, 1)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::from_letters(iter)
    }
}

/// Generators and relators. Relators are freely reduced and nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|f| f.is_ascii_alphabetic()) && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(PresentationError::BadName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let mut p = Presentation { generators, relators: Vec::new() };
        for r in relators {
            p.add_relator(r)?;
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn add_relator(&mut self, r: Word) -> Result<(), PresentationError> {
        let r = Word::from_letters(r.0);
        if r.is_empty() {
            return Err(PresentationError::TrivialRelator(self.relators.len() + 1));
        }
        if let Some(l) = r.0.iter().find(|l| l.gen >= self.generators.len()) {
            return Err(PresentationError::UnknownGenerator { gen: l.gen + 1, count: self.generators.len() });
        }
        self.relators.push(r);
        Ok(())
    }

    /// True when `g^2` or `g^-2` is literally one of the relators.
    pub fn is_involutory(&self, g: usize) -> bool {
        let sq = Word::gen(g).pow(2);
        let inv = sq.inverse();
        self.relators.iter().any(|r| *r == sq || *r == inv)
    }

    /// Letters with runs of one letter collapsed to powers.
    fn runs(&self, u: &[Letter], sep: &str) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < u.len() {
            let l = u[i];
            let mut e = 1i64;
            while i + (e as usize) < u.len() && u[i + e as usize] == l {
                e += 1;
            }
            i += e as usize;
            let name = &self.generators[l.gen];
            let e = if l.inv { -e } else { e };
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
        }
        parts.join(sep)
    }

    fn word_text(&self, w: &Word, sep: &str) -> String {
        let (u, e) = w.root();
        if e == 1 || u.len() == 1 {
            self.runs(&w.0, sep)
        } else {
            format!("({})^{e}", self.runs(u, sep))
        }
    }

    fn fmt_word(&self, w: &Word, out: &mut String) {
        out.push_str(&self.word_text(w, " "));
    }

    /// Relator in native syntax, e.g. `(S1 S2)^3`.
    pub fn word_to_string(&self, w: &Word) -> String {
        let mut s = String::new();
        self.fmt_word(w, &mut s);
        s
    }

    pub fn to_native(&self) -> String {
        let mut s = format!("gens {};", self.generators.join(" "));
        for r in &self.relators {
            s.push_str(" rel ");
            self.fmt_word(r, &mut s);
            s.push(';');
        }
        s.push('\n');
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    /// Text for pasting into GAP-style systems:
    ///
    /// ```text
    /// F := FreeGroup("S1", "S2");
    /// S1 := F.1; S2 := F.2;
    /// G := F / [ S1^2, S2^2, (S1*S2)^3 ];
    /// ```
    pub fn to_caslike(&self) -> String {
        let quoted: Vec<String> = self.generators.iter().map(|g| format!("\"{g}\"")).collect();
        let mut s = format!("F := FreeGroup({});\n", quoted.join(", "));
        let binds: Vec<String> =
            self.generators.iter().enumerate().map(|(i, g)| format!("{g} := F.{};", i + 1)).collect();
        if !binds.is_empty() {
            s.push_str(&binds.join(" "));
            s.push('\n');
        }
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r, "*")).collect();
        s.push_str(&format!("G := F / [ {} ];\n", rels.join(", ")));
        s
    }

    pub fn emit(&self, format: EmitFormat) -> String {
        match format {
            EmitFormat::Native => self.to_native(),
            EmitFormat::Json => self.to_json() + "\n",
            EmitFormat::Caslike => self.to_caslike(),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_native().trim_end())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Native,
    Json,
    Caslike,
}

impl FromStr for EmitFormat {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "native" => Ok(EmitFormat::Native),
            "json" => Ok(EmitFormat::Json),
            "caslike" => Ok(EmitFormat::Caslike),
            other => Err(PresentationError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit(p: &Presentation, format: &str) -> Result<String, PresentationError> {
    Ok(p.emit(format.parse()?))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphanumeric() || c == '_') || (i == 0 && !c.is_ascii_alphabetic()))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn int(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
            .map_or(rest.len(), |(i, _)| i);
        let v = rest[..len].parse().map_err(|_| self.err("expected an integer exponent"))?;
        self.pos += len;
        Ok(v)
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        if self.eat('^') {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn word(&mut self, gens: &[String]) -> Result<Word, PresentationError> {
        let mut w = Word::identity();
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.word(gens)?;
                    if !self.eat(')') {
                        return Err(self.err("expected `)`"));
                    }
                    let e = self.exponent()?;
                    w = w.concat(&inner.pow(e));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    let name = self.ident().unwrap();
                    let g = gens.iter().position(|x| x == name).ok_or_else(|| PresentationError::Syntax {
                        offset: start,
                        message: format!("undeclared generator {name:?}"),
                    })?;
                    let e = self.exponent()?;
                    w = w.concat(&Word::gen(g).pow(e));
                }
                _ => return Ok(w),
            }
        }
    }
}

/// Inverse of [`Presentation::to_native`].
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut p = Parser { src: text, pos: 0 };
    if p.ident() != Some("gens") {
        return Err(p.err("expected `gens`"));
    }
    let mut gens = Vec::new();
    while let Some(name) = p.ident() {
        gens.push(name.to_string());
    }
    if !p.eat(';') {
        return Err(p.err("expected `;` after generator list"));
    }
    let mut rels = Vec::new();
    while p.peek().is_some() {
        let at = p.pos;
        if p.ident() != Some("rel") {
            p.pos = at;
            return Err(p.err("expected `rel`"));
        }
        let w = p.word(&gens)?;
        if !p.eat(';') {
            return Err(p.err("expected `;` after relator"));
        }
        rels.push(w);
    }
    Presentation::new(gens, rels)
}

fn s_name(node: usize) -> String {
    format!("S{}", node + 1)
}

fn coxeter_relators(m: &CoxeterMatrix, gen_of: impl Fn(usize) -> usize) -> Vec<Word> {
    let n = m.rank();
    let mut rels: Vec<Word> = (0..n).map(|i| Word::gen(gen_of(i)).pow(2)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if let Label::Finite(e) = m.label(i, j) {
                let w = Word::from_letters([Letter::new(gen_of(i)), Letter::new(gen_of(j))]);
                rels.push(w.pow(e as i64));
            }
        }
    }
    rels
}

/// `⟨S_1..S_n | S_i^2, (S_i S_j)^{m_ij}⟩`, with no relator for `m_ij = ∞`.
pub fn coxeter_presentation(m: &CoxeterMatrix) -> Presentation {
    let gens = (0..m.rank()).map(s_name).collect();
    Presentation::new(gens, coxeter_relators(m, |i| i)).expect("valid Coxeter presentation")
}

/// Coxeter presentation of `W'` (node `k` deleted) with the surviving
/// generators keeping their original names.
pub fn parabolic_presentation(m: &CoxeterMatrix, k: usize) -> Result<Presentation, PresentationError> {
    let del = delete_node(m, k).map_err(|_| PresentationError::NodeOutOfRange(k + 1))?;
    let gens = del.kept.iter().map(|&o| s_name(o)).collect();
    Presentation::new(gens, coxeter_relators(&del.matrix, |i| i))
}

/// The progenitor `2^{*m}:W'`: generators `S_i` (`i ≠ k`) then `T_1..T_m`;
/// relators are those of `W'`, `T_1^2`, and `S_i^-1 T_j S_i T_{j^π(s_i)}^-1`
/// for every `i ≠ k` and every `j`.
pub fn progenitor_presentation(
    m: &CoxeterMatrix,
    k: usize,
    pi: &PermutationAction,
) -> Result<Presentation, PresentationError> {
    let del = delete_node(m, k).map_err(|_| PresentationError::NodeOutOfRange(k + 1))?;
    let s = del.kept.len();
    if pi.generator_count() != s {
        return Err(PresentationError::ActionMismatch { got: pi.generator_count(), want: s });
    }
    let deg = pi.degree();
    let mut gens: Vec<String> = del.kept.iter().map(|&o| s_name(o)).collect();
    gens.extend((1..=deg).map(|j| format!("T{j}")));
    let t = |j: usize| s + j;
    let mut rels = coxeter_relators(&del.matrix, |i| i);
    rels.push(Word::gen(t(0)).pow(2));
    for i in 0..s {
        for j in 0..deg {
            let img = pi.image(i, j);
            rels.push(Word::from_letters([
                Letter::new(i).inverse(),
                Letter::new(t(j)),
                Letter::new(i),
                Letter::new(t(img)).inverse(),
            ]));
        }
    }
    Presentation::new(gens, rels)
}

/// `Q`: the progenitor with `(S_i T_1)^{m_ik}` added for `2 < m_ik < ∞`.
pub fn symgen_presentation(
    m: &CoxeterMatrix,
    k: usize,
    pi: &PermutationAction,
) -> Result<Presentation, PresentationError> {
    let mut p = progenitor_presentation(m, k, pi)?;
    let s = m.rank() - 1;
    let others = (0..m.rank()).filter(|&i| i != k);
    for (new, old) in others.enumerate() {
        if let Label::Finite(e) = m.label(old, k) {
            if e == 2 {
                continue;
            }
            assert!(e > 2);
            let w = Word::from_letters([Letter::new(new), Letter::new(s)]);
            p.add_relator(w.pow(e as i64))?;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{named_type, parse_diagram};

    fn action(images: Vec<Vec<usize>>) -> PermutationAction {
        PermutationAction::new(images).unwrap()
    }

    #[test]
    fn free_reduction() {
        let a = Letter::new(0);
        let b = Letter::new(1);
        let w = Word::from_letters([a, b, b.inverse(), a.inverse(), b]);
        assert_eq!(w.letters(), &[b]);
        assert_eq!(Word::gen(0).pow(-2).letters(), &[a.inverse(), a.inverse()]);
        let ab = Word::from_letters([a, b]);
        assert!(ab.concat(&ab.inverse()).is_empty());
    }

    #[test]
    fn coxeter_examples() {
        let p = coxeter_presentation(&named_type("A2").unwrap());
        assert_eq!(p.to_native(), "gens S1 S2; rel S1^2; rel S2^2; rel (S1 S2)^3;\n");
        let p = coxeter_presentation(&named_type("I2(inf)").unwrap());
        assert_eq!(p.to_native(), "gens S1 S2; rel S1^2; rel S2^2;\n");
        let p = coxeter_presentation(&named_type("A1").unwrap());
        assert_eq!(p.to_native(), "gens S1; rel S1^2;\n");
        assert!(p.is_involutory(0));
    }

    #[test]
    fn progenitor_a2() {
        let m = named_type("A2").unwrap();
        let pi = action(vec![vec![1, 0]]);
        let p = progenitor_presentation(&m, 1, &pi).unwrap();
        assert_eq!(p.to_native(), "gens S1 T1 T2; rel S1^2; rel T1^2; rel S1^-1 T1 S1 T2^-1; rel S1^-1 T2 S1 T1^-1;\n");
        assert!(p.is_involutory(1));
        assert!(!p.is_involutory(2));
    }

    #[test]
    fn progenitor_counts_and_fixed_points() {
        let m = named_type("A3").unwrap();
        let pi = action(vec![vec![0, 2, 1], vec![1, 0, 2]]);
        let p = progenitor_presentation(&m, 2, &pi).unwrap();
        assert_eq!(p.relators().len(), 2 * 3 + 3 + 1);
        let q = symgen_presentation(&m, 2, &pi).unwrap();
        assert_eq!(q.relators().len(), p.relators().len() + 1);
        assert_eq!(q.word_to_string(q.relators().last().unwrap()), "(S2 T1)^3");

        let m = parse_diagram("rank 2").unwrap();
        let pi = action(vec![vec![0]]);
        let p = progenitor_presentation(&m, 1, &pi).unwrap();
        assert_eq!(p.word_to_string(&p.relators()[2]), "S1^-1 T1 S1 T1^-1");
        assert!(progenitor_presentation(&m, 1, &action(vec![])).is_err());
    }

    #[test]
    fn symgen_added_relators() {
        let b4 = named_type("B4").unwrap();
        let pi = action(vec![vec![1, 0, 2, 3], vec![0, 2, 1, 3], vec![0, 1, 3, 2]]);
        let q = symgen_presentation(&b4, 3, &pi).unwrap();
        assert_eq!(q.word_to_string(q.relators().last().unwrap()), "(S3 T1)^4");
        let h4 = named_type("H4").unwrap();
        let q = symgen_presentation(&h4, 3, &pi).unwrap();
        assert_eq!(q.word_to_string(q.relators().last().unwrap()), "(S3 T1)^5");
        let inf = named_type("I2(inf)").unwrap();
        let pi = action(vec![vec![0]]);
        let p = progenitor_presentation(&inf, 1, &pi).unwrap();
        let q = symgen_presentation(&inf, 1, &pi).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn native_round_trip() {
        let p = coxeter_presentation(&named_type("A2").unwrap());
        let text = p.to_native();
        let back = parse_presentation(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_native(), text);
        let empty = Presentation::new(vec!["a".into()], vec![]).unwrap();
        assert_eq!(empty.to_native(), "gens a;\n");
        assert_eq!(parse_presentation("gens a;").unwrap(), empty);
        let p = parse_presentation("gens a b;\nrel ((a b)^2 b^-1)^2 a^-3;\n rel b^-2;").unwrap();
        assert_eq!(p.to_native(), "gens a b; rel a b a^2 b a^-2; rel b^-2;\n");
        assert_eq!(parse_presentation(&p.to_native()).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_presentation("gens a; rel c;"), Err(PresentationError::Syntax { offset: 12, .. })));
        assert!(parse_presentation("gens a; rel a a^-1;").is_err());
        assert!(parse_presentation("gens a a;").is_err());
        assert!(parse_presentation("rel a;").is_err());
        assert!(parse_presentation("gens a; rel (a;").is_err());
    }

    #[test]
    fn json_and_caslike() {
        let p = coxeter_presentation(&named_type("A2").unwrap());
        assert_eq!(p.to_json(), r#"{"generators":["S1","S2"],"relators":[[1,1],[2,2],[1,2,1,2,1,2]]}"#);
        let back: Presentation = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert_eq!(
            p.to_caslike(),
            "F := FreeGroup(\"S1\", \"S2\");\nS1 := F.1; S2 := F.2;\nG := F / [ S1^2, S2^2, (S1*S2)^3 ];\n"
        );
        assert!(emit(&p, "xml").is_err());
        assert_eq!(emit(&p, "native").unwrap(), p.to_native());
    }
}
