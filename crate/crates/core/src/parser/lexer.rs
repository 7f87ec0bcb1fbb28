use super::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Lowercase-, digit- or underscore-initial identifier.
    Ident(String),
    /// Uppercase-initial identifier.
    Var(String),
    Not,
    LParen,
    RParen,
    Comma,
    Semi,
    Dot,
    If,
    Minus,
    Bar,
    Eof,
}

impl Tok {
    pub(crate) fn text(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => s.clone(),
            Tok::Not => "not".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::Semi => ";".into(),
            Tok::Dot => ".".into(),
            Tok::If => ":-".into(),
            Tok::Minus => "-".into(),
            Tok::Bar => "|".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i == start {
                return Err(unexpected(c.to_string(), tl, tc));
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = if word == "not" {
                Tok::Not
            } else if c.is_ascii_uppercase() {
                Tok::Var(word)
            } else {
                Tok::Ident(word)
            };
            out.push(Token { tok, line: tl, column: tc });
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '.' => Tok::Dot,
            '-' => Tok::Minus,
            '|' => Tok::Bar,
            ':' if chars.get(i + 1) == Some(&'-') => {
                i += 1;
                col += 1;
                Tok::If
            }
            _ => return Err(unexpected(c.to_string(), tl, tc)),
        };
        i += 1;
        col += 1;
        out.push(Token { tok, line: tl, column: tc });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

fn unexpected(token: String, line: usize, column: usize) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Syntax,
        line,
        column,
        message: "unexpected character".into(),
        token,
    }
}
