use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    /// Digits with an optional fractional part, kept as written.
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Equals,
    DotDot,
    Eof,
}

/// Byte range in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

pub fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let pos = |i: usize| chars.get(i).map_or(input.len(), |&(p, _)| p);
    while i < chars.len() {
        let c = chars[i].1;
        let start = pos(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' | '−' => Some(Token::Minus),
            '*' | '·' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            ',' => Some(Token::Comma),
            '=' => Some(Token::Equals),
            '∞' => Some(Token::Ident("inf".into())),
            'π' => Some(Token::Ident("pi".into())),
            'θ' => Some(Token::Ident("theta".into())),
            _ => None,
        };
        if let Some(token) = single {
            i += 1;
            out.push(Spanned { token, span: Span { start, end: pos(i) } });
            continue;
        }
        if c == '.' && at(i + 1) == Some('.') {
            i += 2;
            out.push(Spanned { token: Token::DotDot, span: Span { start, end: pos(i) } });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && at(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut text = String::new();
            while let Some(d) = at(i).filter(char::is_ascii_digit) {
                text.push(d);
                i += 1;
            }
            // A single dot followed by a digit is a decimal point; ".." is a range.
            if at(i) == Some('.') && at(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                text.push('.');
                i += 1;
                while let Some(d) = at(i).filter(char::is_ascii_digit) {
                    text.push(d);
                    i += 1;
                }
            }
            if text.starts_with('.') {
                text.insert(0, '0');
            }
            out.push(Spanned { token: Token::Number(text), span: Span { start, end: pos(i) } });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(d) = at(i).filter(|d| d.is_alphanumeric() || *d == '_') {
                text.push(d);
                i += 1;
            }
            out.push(Spanned { token: Token::Ident(text), span: Span { start, end: pos(i) } });
            continue;
        }
        return Err(ParseError::Syntax { position: start, message: format!("unexpected character '{c}'") });
    }
    out.push(Spanned { token: Token::Eof, span: Span { start: input.len(), end: input.len() } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<Token> {
        tokenize(s).unwrap().into_iter().map(|t| t.token).collect()
    }

    #[test]
    fn range_is_not_a_decimal() {
        assert_eq!(
            kinds("1..inf"),
            vec![Token::Number("1".into()), Token::DotDot, Token::Ident("inf".into()), Token::Eof]
        );
        assert_eq!(kinds("2.5"), vec![Token::Number("2.5".into()), Token::Eof]);
        assert_eq!(kinds(".5"), vec![Token::Number("0.5".into()), Token::Eof]);
    }

    #[test]
    fn bad_character_reports_position() {
        assert_eq!(
            tokenize("u + $").unwrap_err(),
            ParseError::Syntax { position: 4, message: "unexpected character '$'".into() }
        );
    }
}
