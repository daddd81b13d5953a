use std::collections::HashSet;

use super::lexer::{tokenize, Token, TokenKind};
use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::model::{ComponentSpec, OperationSchema, SpecDocument, StateId};

/// Parses a document, naming it `"<input>"`.
pub fn parse(source: &str) -> Result<SpecDocument, Vec<ParseError>> {
    parse_named(source, "<input>")
}

/// Parses a document and records `source_name` on it. Returns every error
/// found in a single pass; a document is only returned if there are none.
pub fn parse_named(source: &str, source_name: &str) -> Result<SpecDocument, Vec<ParseError>> {
    let (tokens, lex_errors) = tokenize(source);
    let mut parser = Parser {
        tokens,
        pos: 0,
        errors: lex_errors,
    };
    let components = parser.document();
    if parser.errors.is_empty() {
        Ok(SpecDocument::new(components, source_name))
    } else {
        let mut errors = parser.errors;
        errors.sort_by_key(|e| (e.span.line, e.span.column));
        Err(errors)
    }
}

// Clause keywords in the order they must appear inside a component.
const CLAUSES: [&str; 5] = ["states", "init", "var", "label", "op"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    errors: Vec<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    fn error_here(&self, kind: ParseErrorKind, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError::new(tok.span, kind, format!("expected {expected}, found {}", tok.kind))
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> PResult<Token> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.error_here(ParseErrorKind::UnexpectedToken, expected))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<Token> {
        if self.at_keyword(kw) {
            return Ok(self.advance());
        }
        let kind = match self.peek().kind {
            TokenKind::Ident(_) => ParseErrorKind::UnknownKeyword,
            _ => ParseErrorKind::UnexpectedToken,
        };
        Err(self.error_here(kind, &format!("`{kw}`")))
    }

    fn ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                let tok = self.advance();
                Ok((s, tok.span))
            }
            _ => Err(self.error_here(ParseErrorKind::UnexpectedToken, what)),
        }
    }

    fn string(&mut self, what: &str) -> PResult<String> {
        match &self.peek().kind {
            TokenKind::Str(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error_here(ParseErrorKind::UnexpectedToken, what)),
        }
    }

    /// `IDENT ("," IDENT)* ";"` with duplicates reported as errors.
    fn state_list(&mut self, what: &str) -> PResult<Vec<StateId>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        loop {
            let (name, span) = self.ident(&format!("{what} name"))?;
            if seen.insert(name.clone()) {
                out.push(StateId::new(name));
            } else {
                self.errors.push(ParseError::new(
                    span,
                    ParseErrorKind::BadIdentifier,
                    format!("duplicate {what} `{name}`; expected each {what} to be listed once"),
                ));
            }
            match self.peek().kind {
                TokenKind::Comma => {
                    self.advance();
                }
                _ => break,
            }
        }
        self.expect(TokenKind::Semi, "`,` or `;`")?;
        Ok(out)
    }

    /// Skips to the end of the current clause: past the next `;`, or up to a
    /// `}` that closes the enclosing block.
    fn recover_clause(&mut self) {
        let mut depth = 0usize;
        loop {
            if depth == 0 && self.at_clause_start() {
                return;
            }
            match self.peek().kind {
                TokenKind::Eof => return,
                TokenKind::Semi if depth == 0 => {
                    self.advance();
                    return;
                }
                TokenKind::RBrace if depth == 0 => return,
                TokenKind::LBrace => depth += 1,
                TokenKind::RBrace => depth -= 1,
                _ => {}
            }
            self.advance();
        }
    }

    /// True if the next tokens look like the start of a component clause,
    /// e.g. `init :` or `op Name`.
    fn at_clause_start(&self) -> bool {
        let TokenKind::Ident(kw) = &self.peek().kind else {
            return false;
        };
        let next = self.tokens.get(self.pos + 1).map(|t| &t.kind);
        match kw.as_str() {
            "op" => matches!(next, Some(TokenKind::Ident(_))),
            kw if CLAUSES.contains(&kw) => next == Some(&TokenKind::Colon),
            _ => false,
        }
    }

    /// Skips to the next top-level `component` keyword. Always consumes at
    /// least one token unless already at the end.
    fn recover_component(&mut self) {
        let mut depth = 0usize;
        self.advance();
        loop {
            match &self.peek().kind {
                TokenKind::Eof => return,
                TokenKind::Ident(s) if s == "component" && depth == 0 => return,
                TokenKind::LBrace => depth += 1,
                TokenKind::RBrace => depth = depth.saturating_sub(1),
                _ => {}
            }
            self.advance();
        }
    }

    fn document(&mut self) -> Vec<ComponentSpec> {
        let mut components = Vec::new();
        loop {
            if self.peek().kind == TokenKind::Eof {
                break;
            }
            if self.at_keyword("component") {
                if let Some(c) = self.component() {
                    components.push(c);
                }
            } else {
                let err = self.expect_keyword("component").unwrap_err();
                self.errors.push(err);
                self.recover_component();
            }
        }
        if components.is_empty() && self.errors.is_empty() {
            let err = self.error_here(ParseErrorKind::MissingSection, "at least one `component`");
            self.errors.push(err);
        }
        components
    }

    fn component(&mut self) -> Option<ComponentSpec> {
        self.advance();
        let name = match self.component_header() {
            Ok(name) => name,
            Err(e) => {
                self.errors.push(e);
                // Resume at the next component; the header token may already
                // be `component`, in which case nothing is skipped.
                if !self.at_keyword("component") {
                    self.recover_component();
                }
                return None;
            }
        };

        let mut states: Option<Vec<StateId>> = None;
        let mut init: Option<StateId> = None;
        let mut state_var: Option<String> = None;
        let mut label: Option<String> = None;
        let mut ops: Vec<OperationSchema> = Vec::new();
        let mut op_names: HashSet<String> = HashSet::new();
        let mut stage = 0usize;
        let end;
        // A clause that failed to parse is not also reported as missing.
        let mut attempted = [false; 2];

        loop {
            let tok = self.peek().clone();
            let kw = match &tok.kind {
                TokenKind::RBrace => {
                    end = self.advance().span;
                    break;
                }
                TokenKind::Eof => {
                    self.errors.push(ParseError::new(
                        tok.span,
                        ParseErrorKind::UnexpectedToken,
                        format!("expected `}}` to close component `{name}`, found end of input"),
                    ));
                    end = tok.span;
                    break;
                }
                TokenKind::Ident(s) => s.clone(),
                other => {
                    self.errors.push(ParseError::new(
                        tok.span,
                        ParseErrorKind::UnexpectedToken,
                        format!("expected a clause (states, init, var, label, op) or `}}`, found {other}"),
                    ));
                    self.advance();
                    self.recover_clause();
                    continue;
                }
            };

            let Some(clause_stage) = CLAUSES.iter().position(|c| *c == kw) else {
                self.errors.push(ParseError::new(
                    tok.span,
                    ParseErrorKind::UnknownKeyword,
                    format!("unknown clause `{kw}`; expected one of states, init, var, label, op"),
                ));
                self.advance();
                self.recover_clause();
                continue;
            };
            let already_seen = match clause_stage {
                0 => states.is_some(),
                1 => init.is_some(),
                2 => state_var.is_some(),
                3 => label.is_some(),
                _ => false,
            };
            if already_seen {
                self.errors.push(ParseError::new(
                    tok.span,
                    ParseErrorKind::DuplicateSection,
                    format!("duplicate `{kw}` clause in component `{name}`; expected at most one"),
                ));
            } else if clause_stage < stage {
                self.errors.push(ParseError::new(
                    tok.span,
                    ParseErrorKind::UnexpectedToken,
                    format!("`{kw}` clause out of order; expected clauses in the order states, init, var, label, op"),
                ));
            }
            stage = stage.max(clause_stage);
            if clause_stage < 2 {
                attempted[clause_stage] = true;
            }
            self.advance();

            if kw == "op" {
                match self.op_decl() {
                    Ok((op, span)) => {
                        if op_names.insert(op.name.clone()) {
                            ops.push(op);
                        } else {
                            self.errors.push(ParseError::new(
                                span,
                                ParseErrorKind::BadIdentifier,
                                format!("duplicate operation `{}`; expected unique operation names", op.name),
                            ));
                        }
                    }
                    Err(e) => self.errors.push(e),
                }
                continue;
            }

            let result = self.expect(TokenKind::Colon, &format!("`:` after `{kw}`")).and_then(|_| {
                match clause_stage {
                    0 => self.state_list("state").map(|s| states.get_or_insert(s).len()),
                    1 => {
                        let (s, _) = self.ident("initial state name")?;
                        self.expect(TokenKind::Semi, "`;`")?;
                        init.get_or_insert(StateId::new(s));
                        Ok(0)
                    }
                    2 => {
                        let (s, _) = self.ident("state variable name")?;
                        self.expect(TokenKind::Semi, "`;`")?;
                        state_var.get_or_insert(s);
                        Ok(0)
                    }
                    _ => {
                        let s = self.string("component label string")?;
                        self.expect(TokenKind::Semi, "`;`")?;
                        label.get_or_insert(s);
                        Ok(0)
                    }
                }
            });
            if let Err(e) = result {
                self.errors.push(e);
                self.recover_clause();
            }
        }

        let missing = |section: &str| {
            ParseError::new(
                end,
                ParseErrorKind::MissingSection,
                format!("component `{name}` is missing its `{section}` clause; expected `{section}: ...;`"),
            )
        };
        if states.is_none() && !attempted[0] {
            self.errors.push(missing("states"));
        }
        if init.is_none() && !attempted[1] {
            self.errors.push(missing("init"));
        }
        Some(ComponentSpec {
            name,
            state_var,
            label,
            states: states?,
            init: init?,
            ops,
        })
    }

    fn component_header(&mut self) -> PResult<String> {
        let (name, _) = self.ident("component name")?;
        self.expect(TokenKind::LBrace, "`{` after component name")?;
        Ok(name)
    }

    /// Parses an operation after its `op` keyword. On an error inside the
    /// body, skips past the op's closing brace.
    fn op_decl(&mut self) -> PResult<(OperationSchema, SourceSpan)> {
        let (name, span) = match self.ident("operation name") {
            Ok(v) => v,
            Err(e) => {
                self.recover_clause();
                return Err(e);
            }
        };
        let header = (|| {
            let mut label = None;
            if self.peek().kind == TokenKind::LBracket {
                self.advance();
                label = Some(self.string("event label string")?);
                self.expect(TokenKind::RBracket, "`]` after event label")?;
            }
            self.expect(TokenKind::LBrace, "`{` to open operation body")?;
            Ok(label)
        })();
        let label = match header {
            Ok(label) => label,
            Err(e) => {
                self.recover_clause();
                return Err(e);
            }
        };
        let body = (|| {
            self.expect_keyword("pre")?;
            self.expect(TokenKind::Colon, "`:` after `pre`")?;
            let pre = self.state_list("pre-state")?;
            self.expect_keyword("post")?;
            self.expect(TokenKind::Colon, "`:` after `post`")?;
            let (post, _) = self.ident("post-state name")?;
            self.expect(TokenKind::Semi, "`;`")?;
            self.expect(TokenKind::RBrace, "`}` to close operation body")?;
            Ok(OperationSchema {
                name,
                label,
                pre,
                post: StateId::new(post),
            })
        })();
        match body {
            Ok(op) => Ok((op, span)),
            Err(e) => {
                // Skip to the op's closing brace.
                let mut depth = 0usize;
                loop {
                    match self.peek().kind {
                        TokenKind::Eof => break,
                        TokenKind::RBrace if depth == 0 => {
                            self.advance();
                            break;
                        }
                        TokenKind::RBrace => depth -= 1,
                        TokenKind::LBrace => depth += 1,
                        _ => {}
                    }
                    self.advance();
                }
                Err(e)
            }
        }
    }
}
