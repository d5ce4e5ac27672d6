use std::fmt;

use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Comma,
    Semi,
    Amp,
    Pipe,
    Star,
    Bang,
    Arrow,
    Or,
    And,
    Define,
    Colon,
    Dot,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", other.text()),
        }
    }
}

impl Tok {
    pub(crate) fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Star => "*",
            Tok::Bang => "!",
            Tok::Arrow => "->",
            Tok::Or => "\\/",
            Tok::And => "/\\",
            Tok::Define => ":=",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Eq => "=",
            Tok::Ident(_) => "identifier",
            Tok::Number(_) => "number",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits `text` into tokens. `#` starts a comment running to end of line;
/// CR is treated as whitespace so CRLF input lexes like LF input.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let start = SourceSpan::new(line, col, 1);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[begin..i].iter().collect();
            let len = i - begin;
            out.push(Token { tok: Tok::Ident(word), span: SourceSpan::new(line, col, len) });
            col += len;
            continue;
        }
        if c.is_ascii_digit() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let len = i - begin;
            let digits: String = chars[begin..i].iter().collect();
            let span = SourceSpan::new(line, col, len);
            let n = digits.parse::<u64>().map_err(|_| ParseError {
                kind: ParseErrorKind::Syntax { expected: vec!["a smaller number".into()], found: digits.clone() },
                span,
            })?;
            out.push(Token { tok: Tok::Number(n), span });
            col += len;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('\\', Some('/')) => (Tok::Or, 2),
            ('/', Some('\\')) => (Tok::And, 2),
            (':', Some('=')) => (Tok::Define, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('<', _) => (Tok::Lt, 1),
            ('>', _) => (Tok::Gt, 1),
            (',', _) => (Tok::Comma, 1),
            (';', _) => (Tok::Semi, 1),
            ('&', _) => (Tok::Amp, 1),
            ('|', _) => (Tok::Pipe, 1),
            ('*', _) => (Tok::Star, 1),
            ('!', _) => (Tok::Bang, 1),
            (':', _) => (Tok::Colon, 1),
            ('.', _) => (Tok::Dot, 1),
            ('=', _) => (Tok::Eq, 1),
            _ => return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(c), span: start }),
        };
        out.push(Token { tok, span: SourceSpan::new(line, col, len) });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, span: SourceSpan::new(line, col, 1) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_track_lines_and_columns() {
        let toks = tokenize("true /\\\r\n  at(R,FACE)").unwrap();
        assert_eq!(toks[0].span, SourceSpan::new(1, 1, 4));
        assert_eq!(toks[1].tok, Tok::And);
        assert_eq!(toks[1].span, SourceSpan::new(1, 6, 2));
        assert_eq!(toks[2].tok, Tok::Ident("at".into()));
        assert_eq!(toks[2].span, SourceSpan::new(2, 3, 2));
    }

    #[test]
    fn comments_are_skipped() {
        let toks = tokenize("# header\ntrue # trailing").unwrap();
        assert_eq!(toks.len(), 2);
        assert_eq!(toks[0].span.line, 2);
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("true $").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(1, 6, 1));
    }
}
