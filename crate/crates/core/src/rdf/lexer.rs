//! Tokenizer shared by the Turtle and SPARQL parsers.

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    /// `<...>` with escapes resolved; may be relative.
    IriRef(String),
    /// `prefix:local`; the prefix may be empty.
    PName(String, String),
    BlankLabel(String),
    Var(String),
    Str(String),
    Integer(String),
    Decimal(String),
    /// `@word`: either a language tag or a directive keyword.
    At(String),
    /// Bare word such as `a`, `true`, `PREFIX`, `SELECT`.
    Word(String),
    DoubleCaret,
    Punct(&'static str),
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    /// Accept `?x`/`$x` variables and comparison operators (SPARQL mode).
    query_mode: bool,
}

impl Lexer {
    pub fn new(text: &str, query_mode: bool) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            query_mode,
        }
    }

    pub fn tokenize(mut self) -> Result<Vec<Token>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            let t = self.next_token()?;
            let done = t.tok == Tok::Eof;
            out.push(t);
            if done {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, SyntaxError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let tok = match self.peek() {
            None => Tok::Eof,
            Some(c) => self.lex_one(c)?,
        };
        Ok(Token { tok, line, column })
    }

    fn lex_one(&mut self, c: char) -> Result<Tok, SyntaxError> {
        match c {
            '<' => {
                if let Some(iri) = self.try_iri_ref()? {
                    return Ok(Tok::IriRef(iri));
                }
                if !self.query_mode {
                    return Err(self.error("malformed IRI reference"));
                }
                self.bump();
                if self.peek() == Some('=') {
                    self.bump();
                    Ok(Tok::Punct("<="))
                } else {
                    Ok(Tok::Punct("<"))
                }
            }
            '>' if self.query_mode => {
                self.bump();
                if self.peek() == Some('=') {
                    self.bump();
                    Ok(Tok::Punct(">="))
                } else {
                    Ok(Tok::Punct(">"))
                }
            }
            '=' if self.query_mode => {
                self.bump();
                Ok(Tok::Punct("="))
            }
            '!' if self.query_mode && self.peek_at(1) == Some('=') => {
                self.bump();
                self.bump();
                Ok(Tok::Punct("!="))
            }
            '"' | '\'' => self.string(c).map(Tok::Str),
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.error("expected language tag or directive after '@'"));
                }
                Ok(Tok::At(word))
            }
            '^' => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.error("expected '^^'"));
                }
                Ok(Tok::DoubleCaret)
            }
            '_' if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name_chars(true);
                if label.is_empty() {
                    return Err(self.error("empty blank node label"));
                }
                Ok(Tok::BlankLabel(label))
            }
            '?' | '$' if self.query_mode => {
                self.bump();
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(self.error("empty variable name"));
                }
                Ok(Tok::Var(name))
            }
            '.' if !self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.bump();
                Ok(Tok::Punct("."))
            }
            '.' | '+' | '-' | '0'..='9' => self.number(),
            ';' | ',' | '[' | ']' | '(' | ')' | '{' | '}' | '*' => {
                self.bump();
                Ok(Tok::Punct(match c {
                    ';' => ";",
                    ',' => ",",
                    '[' => "[",
                    ']' => "]",
                    '(' => "(",
                    ')' => ")",
                    '{' => "{",
                    '}' => "}",
                    _ => "*",
                }))
            }
            ':' => {
                self.bump();
                let local = self.local_name()?;
                Ok(Tok::PName(String::new(), local))
            }
            c if c.is_alphabetic() || c == '_' => {
                let word = self.name_chars(false);
                if self.peek() == Some(':') {
                    self.bump();
                    let local = self.local_name()?;
                    Ok(Tok::PName(word, local))
                } else {
                    Ok(Tok::Word(word))
                }
            }
            other => Err(self.error(format!("unexpected character {other:?}"))),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    /// Name characters with interior dots; a trailing dot is left unconsumed.
    fn name_chars(&mut self, allow_leading_digit: bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            let ok = c.is_alphanumeric()
                || c == '_'
                || (!s.is_empty() && (c == '-' || c == '\u{00B7}'))
                || (allow_leading_digit && c.is_ascii_digit())
                || (c == '.' && !s.is_empty() && self.peek_at(1).is_some_and(|n| n.is_alphanumeric() || n == '_' || n == '-'));
            if ok {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    /// Local part of a prefixed name, with `%HH` and `\` escapes.
    fn local_name(&mut self) -> Result<String, SyntaxError> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == ':' || c == '-' || c == '\u{00B7}' {
                s.push(c);
                self.bump();
            } else if c == '%' {
                let (a, b) = (self.peek_at(1), self.peek_at(2));
                if !(a.is_some_and(|c| c.is_ascii_hexdigit()) && b.is_some_and(|c| c.is_ascii_hexdigit())) {
                    return Err(self.error("malformed percent escape in local name"));
                }
                for _ in 0..3 {
                    s.push(self.bump().unwrap_or_default());
                }
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => s.push(e),
                    _ => return Err(self.error("invalid escape in local name")),
                }
            } else if c == '.' && !s.is_empty() {
                match self.peek_at(1) {
                    Some(n) if n.is_alphanumeric() || n == '_' || n == ':' || n == '-' || n == '%' || n == '\\' => {
                        s.push(c);
                        self.bump();
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        Ok(s)
    }

    /// Attempts to read `<...>`; returns None (consuming nothing) when the
    /// text at the cursor is not an IRI reference.
    fn try_iri_ref(&mut self) -> Result<Option<String>, SyntaxError> {
        let mut i = self.pos + 1;
        let mut raw = String::new();
        loop {
            match self.chars.get(i) {
                None => return Ok(None),
                Some('>') => break,
                Some(&c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => return Ok(None),
                Some(&c) => raw.push(c),
            }
            i += 1;
        }
        let consumed = i + 1 - self.pos;
        for _ in 0..consumed {
            self.bump();
        }
        if raw.contains('\\') {
            let mut out = String::new();
            let chars: Vec<char> = raw.chars().collect();
            let mut j = 0;
            while j < chars.len() {
                if chars[j] == '\\' {
                    let width = match chars.get(j + 1) {
                        Some('u') => 4,
                        Some('U') => 8,
                        _ => return Err(self.error("invalid escape in IRI")),
                    };
                    let hex: String = chars.iter().skip(j + 2).take(width).collect();
                    let c = u32::from_str_radix(&hex, 16)
                        .ok()
                        .filter(|_| hex.len() == width)
                        .and_then(char::from_u32)
                        .ok_or_else(|| self.error("invalid unicode escape in IRI"))?;
                    out.push(c);
                    j += 2 + width;
                } else {
                    out.push(chars[j]);
                    j += 1;
                }
            }
            raw = out;
        }
        Ok(Some(raw))
    }

    fn string(&mut self, quote: char) -> Result<String, SyntaxError> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let open = if long { 3 } else { 1 };
        for _ in 0..open {
            self.bump();
        }
        let mut s = String::new();
        loop {
            let Some(c) = self.peek() else {
                return Err(self.error("unterminated string literal"));
            };
            if c == quote {
                if !long {
                    self.bump();
                    return Ok(s);
                }
                if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                    // A long string may end with up to two extra quote chars.
                    if self.peek_at(3) != Some(quote) {
                        self.bump();
                        self.bump();
                        self.bump();
                        return Ok(s);
                    }
                }
                s.push(c);
                self.bump();
            } else if c == '\\' {
                self.bump();
                let e = self.bump().ok_or_else(|| self.error("unterminated escape"))?;
                match e {
                    't' => s.push('\t'),
                    'b' => s.push('\u{8}'),
                    'n' => s.push('\n'),
                    'r' => s.push('\r'),
                    'f' => s.push('\u{c}'),
                    '"' | '\'' | '\\' => s.push(e),
                    'u' | 'U' => {
                        let width = if e == 'u' { 4 } else { 8 };
                        let mut hex = String::new();
                        for _ in 0..width {
                            hex.push(self.bump().ok_or_else(|| self.error("truncated unicode escape"))?);
                        }
                        let ch = u32::from_str_radix(&hex, 16)
                            .ok()
                            .and_then(char::from_u32)
                            .ok_or_else(|| self.error("invalid unicode escape"))?;
                        s.push(ch);
                    }
                    other => return Err(self.error(format!("invalid string escape '\\{other}'"))),
                }
            } else if !long && (c == '\n' || c == '\r') {
                return Err(self.error("line break in short string literal"));
            } else {
                s.push(c);
                self.bump();
            }
        }
    }

    fn number(&mut self) -> Result<Tok, SyntaxError> {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            s.push('.');
            self.bump();
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            return Err(self.error("numeric literals with exponents are not supported"));
        }
        let digits = s.trim_start_matches(['+', '-']);
        if digits.is_empty() || digits == "." {
            return Err(self.error("malformed numeric literal"));
        }
        Ok(if decimal { Tok::Decimal(s) } else { Tok::Integer(s) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str, q: bool) -> Vec<Tok> {
        Lexer::new(s, q).tokenize().unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn lexes_turtle_fragments() {
        assert_eq!(
            toks("ex:a wo:weight_value 10.0 .", false),
            vec![
                Tok::PName("ex".into(), "a".into()),
                Tok::PName("wo".into(), "weight_value".into()),
                Tok::Decimal("10.0".into()),
                Tok::Punct("."),
                Tok::Eof
            ]
        );
        assert_eq!(toks("5.", false), vec![Tok::Integer("5".into()), Tok::Punct("."), Tok::Eof]);
        assert_eq!(toks("ex:a.", false)[0], Tok::PName("ex".into(), "a".into()));
    }

    #[test]
    fn strings_and_escapes() {
        assert_eq!(toks(r#""a\"b\n""#, false)[0], Tok::Str("a\"b\n".into()));
        assert_eq!(toks("\"\"\"x\n\"y\"\"\"\"", false)[0], Tok::Str("x\n\"y\"".into()));
        assert!(Lexer::new("\"a\nb\"", false).tokenize().is_err());
    }

    #[test]
    fn exponent_rejected() {
        let err = Lexer::new("1.5e3", false).tokenize().unwrap_err();
        assert!(err.message.contains("exponent"));
    }

    #[test]
    fn query_mode_comparison_operators() {
        assert_eq!(
            toks("?x <= 5", true),
            vec![Tok::Var("x".into()), Tok::Punct("<="), Tok::Integer("5".into()), Tok::Eof]
        );
        assert_eq!(toks("?x != <http://a>", true)[2], Tok::IriRef("http://a".into()));
    }

    #[test]
    fn positions_are_one_based() {
        let t = Lexer::new("\n  ex:a", false).tokenize().unwrap();
        assert_eq!((t[0].line, t[0].column), (2, 3));
    }
}
