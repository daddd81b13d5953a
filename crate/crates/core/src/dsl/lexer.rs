use std::fmt;

use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Comma,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Str(_) => f.write_str("string literal"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Semi => f.write_str("`;`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    /// Position of the most recently consumed character.
    last: (usize, usize),
}

impl<'a> Cursor<'a> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.last = (self.line, self.column);
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

/// Splits `source` into tokens. Lexical errors are collected rather than
/// aborting; the returned token stream always ends with `Eof`.
pub(crate) fn tokenize(source: &str) -> (Vec<Token>, Vec<ParseError>) {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
        last: (1, 1),
    };
    let mut tokens = Vec::new();
    let mut errors = Vec::new();

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let span = |length: usize| SourceSpan::new(line, column, length);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                cur.bump();
            }
            '#' => {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            }
            '{' | '}' | '[' | ']' | ':' | ';' | ',' => {
                cur.bump();
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    ':' => TokenKind::Colon,
                    ';' => TokenKind::Semi,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token { kind, span: span(1) });
            }
            '"' => {
                cur.bump();
                let mut text = String::new();
                let mut length = 1;
                let mut terminated = false;
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                    length += 1;
                    match c {
                        '"' => {
                            terminated = true;
                            break;
                        }
                        '\\' => {
                            let esc_at = SourceSpan::new(cur.last.0, cur.last.1, 1);
                            match cur.peek() {
                                Some(e @ ('"' | '\\' | 'n' | 't' | 'r')) => {
                                    cur.bump();
                                    length += 1;
                                    text.push(match e {
                                        'n' => '\n',
                                        't' => '\t',
                                        'r' => '\r',
                                        other => other,
                                    });
                                }
                                _ => errors.push(ParseError::new(
                                    esc_at,
                                    ParseErrorKind::UnexpectedToken,
                                    "invalid escape in string literal; expected one of \\\" \\\\ \\n \\t \\r",
                                )),
                            }
                        }
                        other => text.push(other),
                    }
                }
                if !terminated {
                    errors.push(ParseError::new(
                        span(length),
                        ParseErrorKind::UnexpectedToken,
                        "unterminated string literal; expected closing `\"` on the same line",
                    ));
                }
                tokens.push(Token {
                    kind: TokenKind::Str(text),
                    span: span(length),
                });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(c) = cur.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    word.push(c);
                    cur.bump();
                }
                let length = word.len();
                if !word.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    errors.push(ParseError::new(
                        span(length),
                        ParseErrorKind::BadIdentifier,
                        format!("invalid identifier `{word}`; expected an identifier starting with a letter"),
                    ));
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(word),
                    span: span(length),
                });
            }
            other => {
                cur.bump();
                errors.push(ParseError::new(
                    span(1),
                    ParseErrorKind::UnexpectedToken,
                    format!("unexpected character `{}`; expected an identifier or punctuation", other.escape_default()),
                ));
            }
        }
    }

    let eof_span = if source.is_empty() {
        SourceSpan::new(1, 1, 1)
    } else {
        SourceSpan::new(cur.last.0, cur.last.1, 1)
    };
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: eof_span,
    });
    (tokens, errors)
}
