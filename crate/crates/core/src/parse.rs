//! Line-oriented tokenizer shared by the net and complex text formats.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Open,
    Close,
    Sign(bool),
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub col: usize,
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits one line into tokens; `#` starts a comment, commas separate
/// like whitespace.
pub fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() || c == ',' => i += 1,
            '{' => {
                out.push(Token { tok: Tok::Open, col });
                i += 1;
            }
            '}' => {
                out.push(Token { tok: Tok::Close, col });
                i += 1;
            }
            '+' | '-' => {
                out.push(Token { tok: Tok::Sign(c == '+'), col });
                i += 1;
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
            }
            c => return Err(ParseError::new(lineno, col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
pub struct Line {
    pub no: usize,
    toks: Vec<Token>,
    pos: usize,
    end_col: usize,
}

impl Line {
    pub fn new(no: usize, text: &str) -> Result<Self, ParseError> {
        Ok(Line { no, toks: tokenize(text, no)?, pos: 0, end_col: text.len() + 1 })
    }

    pub fn is_blank(&self) -> bool {
        self.toks.is_empty()
    }

    pub fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.no, self.col(), msg)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{kw}`"))),
        }
    }

    /// `{ a, b c }`
    pub fn set(&mut self) -> Result<Vec<String>, ParseError> {
        if self.peek() != Some(&Tok::Open) {
            return Err(self.err("expected `{`"));
        }
        self.pos += 1;
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Close) => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(Tok::Ident(_)) => out.push(self.ident("identifier")?),
                _ => return Err(self.err("expected identifier or `}`")),
            }
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn json_error(e: serde_json::Error) -> ParseError {
    ParseError::new(e.line(), e.column(), e.to_string())
}

pub fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}
