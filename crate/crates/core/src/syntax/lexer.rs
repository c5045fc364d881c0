use std::fmt;

use super::ParseError;

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Iri(String),
    Var(String),
    At(String),
    Word(String),
    QuoteOpen,
    QuoteClose,
    Dot,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Star,
    Eq,
    Bang,
    AndAnd,
    OrOr,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Iri(s) => write!(f, "`<{s}>`"),
            Tok::Var(s) => write!(f, "`?{s}`"),
            Tok::At(s) => write!(f, "`@{s}`"),
            Tok::Word(s) => write!(f, "`{s}`"),
            Tok::QuoteOpen => f.write_str("`<<`"),
            Tok::QuoteClose => f.write_str("`>>`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::AndAnd => f.write_str("`&&`"),
            Tok::OrOr => f.write_str("`||`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);

    macro_rules! advance {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let error = |expected: &str, found: String| ParseError {
            line: pos.line,
            column: pos.column,
            expected: expected.to_owned(),
            found,
        };
        if c.is_whitespace() {
            advance!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance!();
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let tok = match c {
            '<' if next == Some('<') => {
                advance!();
                advance!();
                Tok::QuoteOpen
            }
            '<' => {
                advance!();
                let start = i;
                while i < chars.len() && chars[i] != '>' {
                    if chars[i].is_whitespace() || chars[i] == '<' {
                        return Err(ParseError {
                            line,
                            column,
                            expected: "`>` closing the IRI".into(),
                            found: describe(chars[i]),
                        });
                    }
                    advance!();
                }
                if i == chars.len() {
                    return Err(ParseError {
                        line,
                        column,
                        expected: "`>` closing the IRI".into(),
                        found: "end of input".into(),
                    });
                }
                let text: String = chars[start..i].iter().collect();
                advance!();
                if text.is_empty() {
                    return Err(error("IRI text", "`<>`".into()));
                }
                Tok::Iri(text)
            }
            '>' if next == Some('>') => {
                advance!();
                advance!();
                Tok::QuoteClose
            }
            '?' | '@' => {
                advance!();
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    advance!();
                }
                let name: String = chars[start..i].iter().collect();
                if name.is_empty() {
                    let found = chars.get(i).map_or("end of input".into(), |&c| describe(c));
                    return Err(error("a name", found));
                }
                if c == '?' {
                    Tok::Var(name)
                } else {
                    Tok::At(name)
                }
            }
            '&' if next == Some('&') => {
                advance!();
                advance!();
                Tok::AndAnd
            }
            '|' if next == Some('|') => {
                advance!();
                advance!();
                Tok::OrOr
            }
            '.' | '{' | '}' | '(' | ')' | '*' | '=' | '!' => {
                advance!();
                match c {
                    '.' => Tok::Dot,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '*' => Tok::Star,
                    '=' => Tok::Eq,
                    _ => Tok::Bang,
                }
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    advance!();
                }
                Tok::Word(chars[start..i].iter().collect())
            }
            other => return Err(error("a token", describe(other))),
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
    });
    Ok(out)
}

fn describe(c: char) -> String {
    if c == '\n' {
        "end of line".into()
    } else {
        format!("`{c}`")
    }
}

/// A cursor over a token stream.
pub struct Cursor {
    tokens: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Cursor {
        Cursor { tokens, at: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    pub fn error(&self, expected: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.pos.line,
            column: t.pos.column,
            expected: expected.into(),
            found: t.tok.to_string(),
        }
    }

    pub fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.error(tok.to_string()))
        }
    }

    /// Case-insensitive keyword test.
    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w.eq_ignore_ascii_case(kw))
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        if self.at_keyword(kw) {
            Ok(self.bump())
        } else {
            Err(self.error(format!("`{kw}`")))
        }
    }
}
