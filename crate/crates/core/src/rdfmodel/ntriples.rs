//! Line-oriented N-Triples serialization and parsing.

use std::io::BufRead;

use super::term::{write_term, Term, Triple};
use crate::error::NTriplesError;

/// Appends `<s> <p> <o> .\n` to `out`.
pub fn write_triple(out: &mut String, t: &Triple) {
    write_term(out, &t.subject);
    out.push(' ');
    write_term(out, &t.predicate);
    out.push(' ');
    write_term(out, &t.object);
    out.push_str(" .\n");
}

/// Canonical line for `t`, without the trailing newline.
pub fn serialize(t: &Triple) -> String {
    let mut s = String::new();
    write_triple(&mut s, t);
    s.pop();
    s
}

/// Parses one line. Blank lines and comments yield `Ok(None)`.
pub fn parse_line(line: &str) -> Result<Option<Triple>, String> {
    let mut p = LineParser { s: line.as_bytes(), text: line, pos: 0 };
    p.skip_ws();
    if p.at_end() || p.peek() == Some(b'#') {
        return Ok(None);
    }
    let subject = p.term()?;
    if subject.is_literal() {
        return Err("literal in subject position".into());
    }
    p.skip_ws();
    let predicate = p.term()?;
    if !predicate.is_iri() {
        return Err("predicate must be an IRI".into());
    }
    p.skip_ws();
    let object = p.term()?;
    p.skip_ws();
    if p.peek() != Some(b'.') {
        return Err(format!("expected '.' at column {}", p.pos + 1));
    }
    p.pos += 1;
    p.skip_ws();
    if !p.at_end() && p.peek() != Some(b'#') {
        return Err(format!("trailing content at column {}", p.pos + 1));
    }
    Ok(Some(Triple { subject, predicate, object }))
}

struct LineParser<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl LineParser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Term, String> {
        match self.peek() {
            Some(b'<') => Ok(Term::Iri(self.iri()?)),
            Some(b'_') => {
                if self.s.get(self.pos + 1) != Some(&b':') {
                    return Err(format!("bad blank node at column {}", self.pos + 1));
                }
                self.pos += 2;
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || matches!(c, b'_' | b'-' | b'.') || c >= 0x80 {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                // a label never ends with '.'
                while self.pos > start && self.s[self.pos - 1] == b'.' {
                    self.pos -= 1;
                }
                if self.pos == start {
                    return Err(format!("empty blank node label at column {}", start + 1));
                }
                Ok(Term::Blank(self.text[start..self.pos].to_string()))
            }
            Some(b'"') => self.literal(),
            Some(c) => Err(format!("unexpected '{}' at column {}", c as char, self.pos + 1)),
            None => Err("unexpected end of line".into()),
        }
    }

    fn iri(&mut self) -> Result<String, String> {
        self.pos += 1;
        let mut out = String::new();
        loop {
            let start = self.pos;
            while let Some(c) = self.peek() {
                if c == b'>' || c == b'\\' {
                    break;
                }
                self.pos += 1;
            }
            out.push_str(&self.text[start..self.pos]);
            match self.peek() {
                Some(b'>') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(b'\\') => out.push(self.escape(false)?),
                _ => return Err("unterminated IRI".into()),
            }
        }
    }

    fn literal(&mut self) -> Result<Term, String> {
        self.pos += 1;
        let mut lex = String::new();
        loop {
            let start = self.pos;
            while let Some(c) = self.peek() {
                if c == b'"' || c == b'\\' {
                    break;
                }
                self.pos += 1;
            }
            lex.push_str(&self.text[start..self.pos]);
            match self.peek() {
                Some(b'"') => {
                    self.pos += 1;
                    break;
                }
                Some(b'\\') => lex.push(self.escape(true)?),
                _ => return Err("unterminated literal".into()),
            }
        }
        match self.peek() {
            Some(b'^') => {
                if self.s.get(self.pos + 1) != Some(&b'^') {
                    return Err(format!("expected '^^' at column {}", self.pos + 1));
                }
                self.pos += 2;
                if self.peek() != Some(b'<') {
                    return Err(format!("expected datatype IRI at column {}", self.pos + 1));
                }
                let dt = self.iri()?;
                Ok(Term::Literal { lex, datatype: Some(dt) })
            }
            Some(b'@') => Err(format!("language tags are not supported (column {})", self.pos + 1)),
            _ => Ok(Term::Literal { lex, datatype: None }),
        }
    }

    fn escape(&mut self, in_literal: bool) -> Result<char, String> {
        let col = self.pos + 1;
        self.pos += 1;
        let c = self.peek().ok_or("dangling escape")?;
        self.pos += 1;
        let simple = match c {
            b't' => Some('\t'),
            b'n' => Some('\n'),
            b'r' => Some('\r'),
            b'b' => Some('\u{8}'),
            b'f' => Some('\u{c}'),
            b'"' => Some('"'),
            b'\'' => Some('\''),
            b'\\' => Some('\\'),
            _ => None,
        };
        if let Some(ch) = simple {
            if in_literal {
                return Ok(ch);
            }
            return Err(format!("escape \\{} not allowed in IRI at column {col}", c as char));
        }
        let len = match c {
            b'u' => 4,
            b'U' => 8,
            _ => return Err(format!("unknown escape \\{} at column {col}", c as char)),
        };
        let hex = self.text.get(self.pos..self.pos + len).ok_or("truncated \\u escape")?;
        let cp = u32::from_str_radix(hex, 16).map_err(|_| format!("bad hex in escape at column {col}"))?;
        self.pos += len;
        char::from_u32(cp).ok_or_else(|| format!("invalid code point at column {col}"))
    }
}

/// Streaming reader yielding triples with 1-based line numbers in errors.
pub struct Reader<R> {
    inner: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Reader<R> {
    pub fn new(inner: R) -> Self {
        Self { inner, line: 0, buf: String::new() }
    }
}

impl<R: BufRead> Iterator for Reader<R> {
    type Item = Result<Triple, NTriplesError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.inner.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            match parse_line(&self.buf) {
                Ok(Some(t)) => return Some(Ok(t)),
                Ok(None) => continue,
                Err(message) => return Some(Err(NTriplesError::Syntax { line: self.line, message })),
            }
        }
    }
}
