//! Tokenizer for the OpenQASM 2.0 subset. Tracks 1-based line/column for
//! every token; `//` comments and CRLF line endings are handled here.

use super::{ParseError, SourcePosition};

#[derive(Clone, Debug, PartialEq)]
pub(super) enum TokenKind {
    Ident(String),
    Integer(u64),
    Real(f64),
    Str(String),
    Pi,
    Semicolon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,
    Star,
    Slash,
    Minus,
    Eof,
}

impl TokenKind {
    pub(super) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(name) => format!("'{name}'"),
            TokenKind::Integer(v) => format!("integer {v}"),
            TokenKind::Real(v) => format!("real {v}"),
            TokenKind::Str(s) => format!("\"{s}\""),
            TokenKind::Pi => "'pi'".to_string(),
            TokenKind::Semicolon => "';'".to_string(),
            TokenKind::Comma => "','".to_string(),
            TokenKind::LParen => "'('".to_string(),
            TokenKind::RParen => "')'".to_string(),
            TokenKind::LBracket => "'['".to_string(),
            TokenKind::RBracket => "']'".to_string(),
            TokenKind::Arrow => "'->'".to_string(),
            TokenKind::Star => "'*'".to_string(),
            TokenKind::Slash => "'/'".to_string(),
            TokenKind::Minus => "'-'".to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub position: SourcePosition,
}

pub(super) fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0usize;
    let mut line = 1usize;
    let mut column = 1usize;

    macro_rules! here {
        () => {
            SourcePosition { line, column }
        };
    }

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
            }
            ' ' | '\t' | '\r' => {
                column += 1;
                i += 1;
            }
            '/' if i + 1 < chars.len() && chars[i + 1] == '/' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ';' | ',' | '(' | ')' | '[' | ']' | '*' | '/' => {
                let kind = match c {
                    ';' => TokenKind::Semicolon,
                    ',' => TokenKind::Comma,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    '*' => TokenKind::Star,
                    _ => TokenKind::Slash,
                };
                tokens.push(Token { kind, position: here!() });
                column += 1;
                i += 1;
            }
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    tokens.push(Token {
                        kind: TokenKind::Arrow,
                        position: here!(),
                    });
                    column += 2;
                    i += 2;
                } else {
                    tokens.push(Token {
                        kind: TokenKind::Minus,
                        position: here!(),
                    });
                    column += 1;
                    i += 1;
                }
            }
            '"' => {
                let position = here!();
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end] != '"' && chars[end] != '\n' {
                    end += 1;
                }
                if end >= chars.len() || chars[end] != '"' {
                    return Err(ParseError::new(position, "closing '\"'", "end of line"));
                }
                let text: String = chars[start..end].iter().collect();
                column += end - i + 1;
                i = end + 1;
                tokens.push(Token {
                    kind: TokenKind::Str(text),
                    position,
                });
            }
            c if c.is_ascii_digit() || c == '.' => {
                let position = here!();
                let start = i;
                let mut is_real = false;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    is_real = true;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        is_real = true;
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                column += i - start;
                let kind = if is_real {
                    match text.parse::<f64>() {
                        Ok(v) => TokenKind::Real(v),
                        Err(_) => {
                            return Err(ParseError::new(position, "a number", format!("'{text}'")))
                        }
                    }
                } else {
                    match text.parse::<u64>() {
                        Ok(v) => TokenKind::Integer(v),
                        Err(_) => {
                            return Err(ParseError::new(position, "an integer", format!("'{text}'")))
                        }
                    }
                };
                tokens.push(Token { kind, position });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let position = here!();
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                column += i - start;
                let kind = if text == "pi" {
                    TokenKind::Pi
                } else {
                    TokenKind::Ident(text)
                };
                tokens.push(Token { kind, position });
            }
            other => {
                return Err(ParseError::new(
                    here!(),
                    "a QASM token",
                    format!("character '{other}'"),
                ));
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        position: SourcePosition { line, column },
    });
    Ok(tokens)
}
