//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! iff     := implies ( "<->" iff )?
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "~" unary | "K" digits unary | "E" unary | "C" unary | atom
//! atom    := var | "top" | "bot" | "(" iff ")"
//! ```

use thiserror::Error;

use super::{Agent, AgentSet, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown agent {agent} at offset {pos}")]
    UnknownAgent { pos: usize, agent: Agent },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Var(String),
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    Iff,
    K(Agent),
    E,
    C,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Var(v) => format!("variable `{v}`"),
            Token::Top => "`top`".into(),
            Token::Bot => "`bot`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::K(a) => format!("`K{a}`"),
            Token::E => "`E`".into(),
            Token::C => "`C`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => {
                out.push((start, Token::Not));
                i += 1;
            }
            b'&' => {
                out.push((start, Token::And));
                i += 1;
            }
            b'|' => {
                out.push((start, Token::Or));
                i += 1;
            }
            b'(' => {
                out.push((start, Token::LParen));
                i += 1;
            }
            b')' => {
                out.push((start, Token::RParen));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) != Some(&b'>') {
                    return Err(syntax(start, "expected `->`"));
                }
                out.push((start, Token::Implies));
                i += 2;
            }
            b'<' => {
                if !text[i..].starts_with("<->") {
                    return Err(syntax(start, "expected `<->`"));
                }
                out.push((start, Token::Iff));
                i += 3;
            }
            b'E' => {
                out.push((start, Token::E));
                i += 1;
            }
            b'C' => {
                out.push((start, Token::C));
                i += 1;
            }
            b'K' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(syntax(start, "expected agent index after `K`"));
                }
                let agent = text[digits_start..i]
                    .parse()
                    .map_err(|_| syntax(start, "agent index out of range"))?;
                out.push((start, Token::K(agent)));
            }
            b'a'..=b'z' => {
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let tok = match &text[start..i] {
                    "top" => Token::Top,
                    "bot" => Token::Bot,
                    v => Token::Var(v.to_string()),
                };
                out.push((start, tok));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    agents: &'a AgentSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        if self.eat(&Token::Iff) {
            Ok(lhs.iff(self.iff()?))
        } else {
            Ok(lhs)
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            Ok(lhs.implies(self.implies()?))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Token::K(agent)) => {
                if !self.agents.contains(agent) {
                    return Err(ParseError::UnknownAgent { pos: at, agent });
                }
                self.pos += 1;
                Ok(Formula::k(agent, self.unary()?))
            }
            Some(Token::E) => {
                self.pos += 1;
                Ok(Formula::e(self.unary()?))
            }
            Some(Token::C) => {
                self.pos += 1;
                Ok(Formula::c(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Var(v) => Ok(Formula::Var(v)),
            Token::Top => Ok(Formula::Top),
            Token::Bot => Ok(Formula::Bot),
            Token::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(at, format!("unexpected {}", other.describe()))),
        }
    }
}

/// Parses `text` as a formula over `agents`.
pub fn parse(text: &str, agents: &AgentSet) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        agents,
    };
    let f = parser.iff()?;
    if let Some(tok) = parser.peek() {
        return Err(syntax(
            parser.offset(),
            format!("unexpected {} after formula", tok.describe()),
        ));
    }
    Ok(f)
}
