//! A forgiving Java tokenizer.
//!
//! Comments vanish, literals become opaque tokens, and unterminated
//! constructs simply run to end of input.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Number,
    /// String, char or text-block literal.
    Literal,
    Punct,
}

#[derive(Debug, Clone)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
    /// 1-based line of the first byte.
    pub line: usize,
    /// A `/** ... */` comment sits between this token and the previous one.
    pub doc_before: bool,
}

impl Token<'_> {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == p
    }

    pub fn is_ident(&self) -> bool {
        self.kind == TokenKind::Ident
    }

    pub fn is_word(&self, w: &str) -> bool {
        self.kind == TokenKind::Ident && self.text == w
    }
}

const MULTI_PUNCT: &[&str] = &["...", "->", "::"];

pub fn tokenize(src: &str) -> Vec<Token<'_>> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut doc_pending = false;

    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'\n' => {
                line += 1;
                i += 1;
            }
            b' ' | b'\t' | b'\r' | 0x0c => i += 1,
            b'/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if bytes.get(i + 1) == Some(&b'*') => {
                let is_doc = bytes.get(i + 2) == Some(&b'*') && bytes.get(i + 3) != Some(&b'/');
                let body_start = i + 2;
                let close = src[body_start..].find("*/").map(|p| body_start + p + 2);
                let stop = close.unwrap_or(bytes.len());
                line += bytes[i..stop].iter().filter(|&&c| c == b'\n').count();
                i = stop;
                doc_pending = is_doc;
            }
            b'"' | b'\'' => {
                let start = i;
                let start_line = line;
                i = if b == b'"' && src[i..].starts_with("\"\"\"") {
                    skip_text_block(bytes, i)
                } else {
                    skip_quoted(bytes, i, b)
                };
                line += bytes[start..i].iter().filter(|&&c| c == b'\n').count();
                tokens.push(make(TokenKind::Literal, src, start, i, start_line, &mut doc_pending));
            }
            b'0'..=b'9' => {
                let start = i;
                i = skip_number(bytes, i);
                tokens.push(make(TokenKind::Number, src, start, i, line, &mut doc_pending));
            }
            b'.' if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) => {
                let start = i;
                i = skip_number(bytes, i);
                tokens.push(make(TokenKind::Number, src, start, i, line, &mut doc_pending));
            }
            _ => {
                let c = src[i..].chars().next().expect("in bounds");
                if c == '_' || c == '$' || c.is_alphabetic() {
                    let start = i;
                    i += c.len_utf8();
                    while let Some(c) = src[i..].chars().next() {
                        if c == '_' || c == '$' || c.is_alphanumeric() {
                            i += c.len_utf8();
                        } else {
                            break;
                        }
                    }
                    tokens.push(make(TokenKind::Ident, src, start, i, line, &mut doc_pending));
                } else if c.is_whitespace() {
                    i += c.len_utf8();
                } else {
                    let start = i;
                    let len = MULTI_PUNCT
                        .iter()
                        .find(|p| src[i..].starts_with(**p))
                        .map_or(c.len_utf8(), |p| p.len());
                    i += len;
                    tokens.push(make(TokenKind::Punct, src, start, i, line, &mut doc_pending));
                }
            }
        }
    }
    tokens
}

fn make<'a>(
    kind: TokenKind,
    src: &'a str,
    start: usize,
    end: usize,
    line: usize,
    doc_pending: &mut bool,
) -> Token<'a> {
    let doc_before = std::mem::take(doc_pending);
    Token {
        kind,
        text: &src[start..end],
        start,
        end,
        line,
        doc_before,
    }
}

fn skip_quoted(bytes: &[u8], mut i: usize, quote: u8) -> usize {
    i += 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'\n' => return i,
            c if c == quote => return i + 1,
            _ => i += 1,
        }
    }
    bytes.len()
}

fn skip_text_block(bytes: &[u8], mut i: usize) -> usize {
    i += 3;
    while i + 2 < bytes.len() {
        if bytes[i] == b'\\' {
            i += 2;
            continue;
        }
        if &bytes[i..i + 3] == b"\"\"\"" {
            return i + 3;
        }
        i += 1;
    }
    bytes.len()
}

fn skip_number(bytes: &[u8], start: usize) -> usize {
    let hex = bytes[start..].starts_with(b"0x") || bytes[start..].starts_with(b"0X");
    let mut i = start;
    while i < bytes.len() {
        let c = bytes[i];
        let exponent_sign = (c == b'+' || c == b'-')
            && i > start
            && if hex {
                matches!(bytes[i - 1], b'p' | b'P')
            } else {
                matches!(bytes[i - 1], b'e' | b'E')
            };
        if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || exponent_sign {
            if c == b'.' && !bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                break;
            }
            i += 1;
        } else {
            break;
        }
    }
    i
}
