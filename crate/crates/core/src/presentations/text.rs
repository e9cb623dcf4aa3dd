//! Line-oriented text format for presentations.
//!
//! ```text
//! # comment
//! gens: x0 x1 x2
//! rel: x0*x1*x2^-1
//! rel: x0^(x1*x2) * x1^3
//! sub: x0*x1
//! ```
//!
//! Words use `*` for products, `^n` for integer powers, `^(word)` for
//! conjugation and parentheses for grouping; `1` is the empty word.

use std::path::Path;

use super::presentation::{Presentation, Provenance, SubgroupSpec};
use super::word::{Convention, Word};
use super::PresentationError;

/// Result of loading a file: a plain presentation, or a subgroup of it when
/// `sub:` lines are present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    Presentation(Presentation),
    Subgroup(SubgroupSpec),
}

impl Loaded {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Loaded::Presentation(p) => p,
            Loaded::Subgroup(s) => &s.parent,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
    names: &'a [String],
    conv: Convention,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> PresentationError {
        PresentationError::Parse { line: self.line, column: self.col0 + self.pos + 1, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), PresentationError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut w = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let h = self.word()?;
                    self.expect(b')')?;
                    w = w.conjugate(&h, self.conv);
                }
                _ => {
                    let e = self.integer()?;
                    w = w.pow(e);
                }
            }
        }
        Ok(w)
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent or '(' after '^'")
        })
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match self.names.iter().position(|n| n == name) {
                    Some(g) => Ok(Word::gen(g)),
                    None => {
                        self.pos = start;
                        Err(self.err(format!("undeclared generator '{name}'")))
                    }
                }
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of word")),
        }
    }
}

/// Parses one word over `names`. `line`/`column` offset diagnostics.
pub fn parse_word_at(
    text: &str,
    names: &[String],
    conv: Convention,
    line: usize,
    column: usize,
) -> Result<Word, PresentationError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, line, col0: column, names, conv };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

pub fn parse_word(text: &str, names: &[String], conv: Convention) -> Result<Word, PresentationError> {
    parse_word_at(text, names, conv, 1, 0)
}

fn valid_name(n: &str) -> bool {
    let mut c = n.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_') && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

/// Parses the text format. A file without `gens:` is reported as
/// [`PresentationError::MissingData`], which is how data stubs are
/// recognised.
pub fn parse_presentation(text: &str, source: &str, conv: Convention) -> Result<Loaded, PresentationError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut subs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = body.split_once(':') else {
            return Err(PresentationError::Parse { line, column: 1, message: "expected 'gens:', 'rel:' or 'sub:'".into() });
        };
        let column = key.len() + 1;
        match key.trim() {
            "gens" => {
                if names.is_some() {
                    return Err(PresentationError::Parse { line, column: 1, message: "duplicate 'gens:' line".into() });
                }
                let ns: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = ns.iter().find(|n| !valid_name(n)) {
                    return Err(PresentationError::Parse { line, column, message: format!("bad generator name '{bad}'") });
                }
                names = Some(ns);
            }
            k @ ("rel" | "sub") => {
                let Some(ns) = names.as_ref() else {
                    return Err(PresentationError::Parse { line, column: 1, message: "'gens:' must come first".into() });
                };
                let w = parse_word_at(rest, ns, conv, line, column)?;
                if k == "rel" {
                    relators.push(w);
                } else {
                    subs.push(w);
                }
            }
            other => {
                return Err(PresentationError::Parse { line, column: 1, message: format!("unknown key '{other}'") });
            }
        }
    }
    let names = names.ok_or_else(|| PresentationError::MissingData(source.to_string()))?;
    let p = Presentation::new(names, relators, Provenance::new(source))?;
    if subs.is_empty() {
        Ok(Loaded::Presentation(p))
    } else {
        Ok(Loaded::Subgroup(SubgroupSpec::new(source, p, subs)?))
    }
}

pub fn load_presentation_file(path: &Path, conv: Convention) -> Result<Loaded, PresentationError> {
    let text = std::fs::read_to_string(path).map_err(|e| PresentationError::Io(format!("{}: {e}", path.display())))?;
    parse_presentation(&text, &path.display().to_string(), conv)
}

pub fn to_text(p: &Presentation) -> String {
    let mut s = format!("gens: {}\n", p.names.join(" "));
    for r in &p.relators {
        s.push_str(&format!("rel: {}\n", p.render(r)));
    }
    s
}

pub fn subgroup_to_text(sub: &SubgroupSpec) -> String {
    let mut s = to_text(&sub.parent);
    for w in &sub.words {
        s.push_str(&format!("sub: {}\n", sub.parent.render(w)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_file() {
        let l = parse_presentation("gens: x0 x1 x2\nrel: x0*x1*x2^-1\n", "t", Convention::Right).unwrap();
        let p = l.presentation();
        assert_eq!(p.gen_count(), 3);
        assert_eq!(p.relators[0], Word(vec![1, 2, -3]));
    }

    #[test]
    fn conjugation_and_groups() {
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let w = parse_word("(b*c^-1)^2", &names, Convention::Right).unwrap();
        assert_eq!(w, Word(vec![2, -3, 2, -3]));
        let c = parse_word("c^(a)", &names, Convention::Right).unwrap();
        assert_eq!(c, Word(vec![-1, 3, 1]));
    }

    #[test]
    fn undeclared_generator_located() {
        let e = parse_presentation("gens: a b\nrel: a*c\n", "t", Convention::Right).unwrap_err();
        assert_eq!(e, PresentationError::Parse { line: 2, column: 8, message: "undeclared generator 'c'".into() });
    }

    #[test]
    fn stub_is_missing_data() {
        let e = parse_presentation("# nothing here\n", "G2", Convention::Right).unwrap_err();
        assert!(matches!(e, PresentationError::MissingData(_)));
    }
}
