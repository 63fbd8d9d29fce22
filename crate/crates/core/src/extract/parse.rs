//! Brace-structure recognizer for Java sources.
//!
//! Classes, interfaces, enums and records are walked member by member. A
//! member followed by a brace block is a method when it reads as
//! `[modifiers] [<T>] ReturnType name(params) [throws ...]` or as a
//! constructor named after its class. Method bodies are scanned for type
//! references and call sites; anonymous and local classes found inside any
//! block are walked recursively.

use std::collections::HashMap;

use super::lexer::{tokenize, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Import {
    pub path: String,
    pub wildcard: bool,
    pub is_static: bool,
}

/// An API reference before qualification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApiRef {
    /// Type as written: `InputStream`, `Map.Entry`, `java.util.List`.
    Type(String),
    /// Call on a type-like target as written (`StringBuilder`, `System.out`).
    Member { target: String, method: String },
    /// Call on a receiver whose type is unknown.
    Bare(String),
    /// Unqualified call, resolved against static imports or the class.
    Local { class: String, method: String },
}

#[derive(Debug, Clone)]
pub(crate) struct RawMethod {
    pub name: String,
    pub param_types: Vec<String>,
    pub return_type: String,
    pub start: usize,
    pub end: usize,
    pub start_line: usize,
    pub has_javadoc: bool,
    pub refs: Vec<ApiRef>,
}

#[derive(Debug, Default)]
pub(crate) struct ParsedFile {
    pub package: Option<String>,
    pub imports: Vec<Import>,
    pub methods: Vec<RawMethod>,
}

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "strictfp",
    "transient",
    "volatile",
    "default",
    "sealed",
];

const TYPE_KEYWORDS: &[&str] = &["class", "interface", "enum", "record"];

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long", "native",
    "new", "package", "private", "protected", "public", "return", "short", "static", "strictfp",
    "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try", "void",
    "volatile", "while", "true", "false", "null",
];

/// Keywords that may directly precede an unqualified call.
const CALL_PREFIX_KEYWORDS: &[&str] = &["return", "throw", "else", "case", "yield", "assert", "do"];

const PRIMITIVES: &[&str] = &[
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void", "var",
];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// Whether a written type names a class rather than a primitive or a type
/// variable such as `T`.
pub fn is_reference_type(path: &str) -> bool {
    let last = path.rsplit('.').next().unwrap_or(path);
    let mut chars = last.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if PRIMITIVES.contains(&last) || !first.is_uppercase() {
        return false;
    }
    let type_var = last.len() <= 2 && last.chars().all(|c| c.is_uppercase() || c.is_ascii_digit());
    !type_var
}

pub(crate) fn parse_file(src: &str) -> Result<ParsedFile, String> {
    let toks = tokenize(src);
    let brace = match_pairs(&toks, "{", "}").map_err(|line| format!("unbalanced braces near line {line}"))?;
    let paren = match_pairs(&toks, "(", ")").unwrap_or_else(|_| lenient_pairs(&toks, "(", ")"));
    let mut parser = Parser {
        toks,
        brace,
        paren,
        methods: Vec::new(),
    };
    let mut file = ParsedFile::default();
    parser.header(&mut file);
    let n = parser.toks.len();
    parser.members(0, n, "", false, &HashMap::new());
    file.methods = parser.methods;
    Ok(file)
}

/// Matches open/close tokens; on imbalance returns the offending line.
fn match_pairs(toks: &[Token<'_>], open: &str, close: &str) -> Result<Vec<Option<usize>>, usize> {
    let mut out = vec![None; toks.len()];
    let mut stack = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if t.is_punct(open) {
            stack.push(i);
        } else if t.is_punct(close) {
            let o = stack.pop().ok_or(t.line)?;
            out[o] = Some(i);
            out[i] = Some(o);
        }
    }
    match stack.pop() {
        Some(o) => Err(toks[o].line),
        None => Ok(out),
    }
}

fn lenient_pairs(toks: &[Token<'_>], open: &str, close: &str) -> Vec<Option<usize>> {
    let mut out = vec![None; toks.len()];
    let mut stack = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if t.is_punct(open) {
            stack.push(i);
        } else if t.is_punct(close) {
            if let Some(o) = stack.pop() {
                out[o] = Some(i);
                out[i] = Some(o);
            }
        }
    }
    out
}

struct Member {
    start: usize,
    /// Index of the terminating `;` or `{`.
    end: usize,
    block: Option<(usize, usize)>,
    enum_constant: bool,
}

struct Signature {
    name: String,
    params: Vec<(String, String)>,
    return_type: String,
}

struct Parser<'a> {
    toks: Vec<Token<'a>>,
    brace: Vec<Option<usize>>,
    paren: Vec<Option<usize>>,
    methods: Vec<RawMethod>,
}

impl<'a> Parser<'a> {
    fn tok(&self, i: usize) -> Option<&Token<'a>> {
        self.toks.get(i)
    }

    fn header(&self, file: &mut ParsedFile) {
        let mut depth = 0usize;
        let mut i = 0;
        while i < self.toks.len() {
            let t = &self.toks[i];
            if t.is_punct("{") {
                depth += 1;
            } else if t.is_punct("}") {
                depth = depth.saturating_sub(1);
            } else if depth == 0 && (t.is_word("package") || t.is_word("import")) {
                let is_import = t.is_word("import");
                let mut j = i + 1;
                let is_static = is_import && self.tok(j).is_some_and(|t| t.is_word("static"));
                if is_static {
                    j += 1;
                }
                let mut path = String::new();
                while let Some(t) = self.tok(j) {
                    if t.is_punct(";") {
                        break;
                    }
                    path.push_str(t.text);
                    j += 1;
                }
                if is_import {
                    let wildcard = path.ends_with(".*");
                    let path = path.trim_end_matches(".*").to_string();
                    file.imports.push(Import {
                        path,
                        wildcard,
                        is_static,
                    });
                } else {
                    file.package = Some(path);
                }
                i = j;
            }
            i += 1;
        }
    }

    /// Splits a class body (tokens `start..end`) into member declarations.
    fn split_members(&self, start: usize, end: usize, is_enum: bool) -> Vec<Member> {
        let mut out = Vec::new();
        let mut seg = start;
        let mut in_constants = is_enum;
        let mut i = start;
        while i < end {
            let t = &self.toks[i];
            if t.is_punct("(") {
                i = self.paren[i].map_or(i + 1, |c| c + 1);
            } else if t.is_punct("{") {
                let close = self.brace[i].expect("balanced");
                out.push(Member {
                    start: seg,
                    end: i,
                    block: Some((i, close)),
                    enum_constant: in_constants,
                });
                i = close + 1;
                seg = i;
            } else if t.is_punct(";") {
                out.push(Member {
                    start: seg,
                    end: i,
                    block: None,
                    enum_constant: in_constants,
                });
                in_constants = false;
                i += 1;
                seg = i;
            } else {
                i += 1;
            }
        }
        out
    }

    /// Token indices of `start..end` without annotations.
    fn strip_annotations(&self, start: usize, end: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = start;
        while i < end {
            let t = &self.toks[i];
            if t.is_punct("@") && !self.tok(i + 1).is_some_and(|n| n.is_word("interface")) {
                i += 1;
                if self.tok(i).is_some_and(Token::is_ident) {
                    i += 1;
                }
                while i + 1 < end && self.toks[i].is_punct(".") && self.toks[i + 1].is_ident() {
                    i += 2;
                }
                if i < end && self.toks[i].is_punct("(") {
                    i = self.paren[i].map_or(i + 1, |c| c + 1);
                }
                continue;
            }
            out.push(i);
            i += 1;
        }
        out
    }

    fn members(
        &mut self,
        start: usize,
        end: usize,
        class: &str,
        is_enum: bool,
        outer_fields: &HashMap<String, String>,
    ) {
        let members = self.split_members(start, end, is_enum);
        let mut fields = outer_fields.clone();
        for m in &members {
            if m.block.is_none() && !m.enum_constant {
                let sig = self.strip_annotations(m.start, m.end);
                let sig: Vec<usize> = sig
                    .into_iter()
                    .skip_while(|&i| MODIFIERS.contains(&self.toks[i].text))
                    .collect();
                if let Some(&first) = sig.first() {
                    if let Some((ty, name, _)) = self.declaration_at(first, m.end + 1) {
                        fields.insert(name, ty);
                    }
                }
            }
        }
        for m in members {
            let Some((open, close)) = m.block else {
                continue;
            };
            if m.enum_constant {
                self.members(open + 1, close, class, false, &fields);
                continue;
            }
            let sig = self.strip_annotations(m.start, m.end);
            if let Some(kw) = sig.iter().position(|&i| {
                TYPE_KEYWORDS.contains(&self.toks[i].text) && self.toks[i].is_ident()
            }) {
                let preceded_by_dot = kw > 0 && self.toks[sig[kw - 1]].is_punct(".");
                if !preceded_by_dot {
                    let name = sig
                        .get(kw + 1)
                        .map(|&i| self.toks[i].text.to_string())
                        .unwrap_or_default();
                    let nested_enum = self.toks[sig[kw]].text == "enum";
                    self.members(open + 1, close, &name, nested_enum, &fields);
                    continue;
                }
            }
            if let Some(signature) = self.signature(&sig, class) {
                self.method(m.start, open, close, class, signature, &fields);
                continue;
            }
            if self.anonymous_body(open) {
                self.members(open + 1, close, class, false, &fields);
            } else {
                self.scan_block(open + 1, close, class, &fields);
            }
        }
    }

    fn signature(&self, sig: &[usize], class: &str) -> Option<Signature> {
        let lp = sig.iter().position(|&i| self.toks[i].is_punct("("))?;
        if lp == 0 {
            return None;
        }
        let name_tok = &self.toks[sig[lp - 1]];
        if !name_tok.is_ident() || is_keyword(name_tok.text) {
            return None;
        }
        let mut k = 0;
        while k < lp - 1 && MODIFIERS.contains(&self.toks[sig[k]].text) {
            k += 1;
        }
        if k < lp - 1 && self.toks[sig[k]].is_punct("<") {
            let mut depth = 0i32;
            while k < lp - 1 {
                let t = &self.toks[sig[k]];
                if t.is_punct("<") {
                    depth += 1;
                } else if t.is_punct(">") {
                    depth -= 1;
                }
                k += 1;
                if depth == 0 {
                    break;
                }
            }
        }
        let ret = &sig[k..lp - 1];
        let type_like = |t: &Token<'_>| {
            (t.is_ident() && (!is_keyword(t.text) || PRIMITIVES.contains(&t.text)))
                || t.is_word("extends")
                || t.is_word("super")
                || matches!(t.text, "." | "<" | ">" | "," | "?" | "[" | "]" | "&")
                    && t.kind == TokenKind::Punct
        };
        if !ret.iter().all(|&i| type_like(&self.toks[i])) {
            return None;
        }
        if ret.is_empty() && name_tok.text != class {
            return None;
        }
        let rp_abs = self.paren[sig[lp]]?;
        let rp = sig.iter().position(|&i| i == rp_abs)?;
        // Only `throws` clauses and legacy array dims may follow the params.
        let tail = &sig[rp + 1..];
        if let Some(&first) = tail.first() {
            let t = &self.toks[first];
            if !(t.is_word("throws") || t.is_punct("[")) {
                return None;
            }
        }
        let params = self.params(&sig[lp + 1..rp])?;
        Some(Signature {
            name: name_tok.text.to_string(),
            params,
            return_type: self.join(ret),
        })
    }

    /// Parses a parameter list into (type, name) pairs.
    fn params(&self, toks: &[usize]) -> Option<Vec<(String, String)>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut cur: Vec<usize> = Vec::new();
        let mut flush = |cur: &mut Vec<usize>| -> Option<()> {
            let items: Vec<usize> = cur.drain(..).filter(|&i| !self.toks[i].is_word("final")).collect();
            if items.is_empty() {
                return Some(());
            }
            let (&name, ty) = items.split_last()?;
            if !self.toks[name].is_ident() || ty.is_empty() {
                return None;
            }
            out.push((self.join(ty), self.toks[name].text.to_string()));
            Some(())
        };
        for &i in toks {
            let t = &self.toks[i];
            if t.is_punct("<") {
                depth += 1;
            } else if t.is_punct(">") {
                depth -= 1;
            }
            if t.is_punct(",") && depth == 0 {
                flush(&mut cur)?;
            } else {
                cur.push(i);
            }
        }
        flush(&mut cur)?;
        Some(out)
    }

    fn join(&self, idx: &[usize]) -> String {
        let mut s = String::new();
        let mut prev_word = false;
        for &i in idx {
            let t = &self.toks[i];
            let word = t.is_ident();
            if word && prev_word {
                s.push(' ');
            }
            s.push_str(t.text);
            prev_word = word;
        }
        s
    }

    fn method(
        &mut self,
        member_start: usize,
        open: usize,
        close: usize,
        class: &str,
        sig: Signature,
        fields: &HashMap<String, String>,
    ) {
        let mut vars = fields.clone();
        let mut refs = Vec::new();
        let mut param_types = Vec::new();
        for (ty, name) in sig.params {
            let base = base_type(&ty);
            if is_reference_type(&base) {
                refs.push(ApiRef::Type(base.clone()));
            }
            vars.insert(name, base);
            param_types.push(ty);
        }
        self.body_refs(open + 1, close, class, &mut vars, &mut refs);
        let ret_base = base_type(&sig.return_type);
        if is_reference_type(&ret_base) {
            refs.push(ApiRef::Type(ret_base));
        }
        let first = &self.toks[member_start];
        self.methods.push(RawMethod {
            name: sig.name,
            param_types,
            return_type: sig.return_type,
            start: first.start,
            end: self.toks[close].end,
            start_line: first.line,
            has_javadoc: first.doc_before,
            refs,
        });
        self.scan_block(open + 1, close, class, fields);
    }

    /// Whether the `{` at `open` starts an anonymous class body
    /// (`new Type<..>(args) {`).
    fn anonymous_body(&self, open: usize) -> bool {
        if open == 0 || !self.toks[open - 1].is_punct(")") {
            return false;
        }
        let Some(lp) = self.paren[open - 1] else {
            return false;
        };
        let mut j = lp;
        if j > 0 && self.toks[j - 1].is_punct(">") {
            let mut depth = 0i32;
            while j > 0 {
                j -= 1;
                let t = &self.toks[j];
                if t.is_punct(">") {
                    depth += 1;
                } else if t.is_punct("<") {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
            }
        }
        // j now sits on `(` or `<`; walk back over a dotted type name.
        let mut k = j;
        loop {
            if k == 0 || !self.toks[k - 1].is_ident() {
                return false;
            }
            k -= 1;
            if k > 0 && self.toks[k - 1].is_punct(".") {
                k -= 1;
                continue;
            }
            break;
        }
        k > 0 && self.toks[k - 1].is_word("new")
    }

    /// Finds anonymous and local classes inside a block.
    fn scan_block(&mut self, start: usize, end: usize, class: &str, fields: &HashMap<String, String>) {
        let mut k = start;
        while k < end {
            if !self.toks[k].is_punct("{") {
                k += 1;
                continue;
            }
            let close = self.brace[k].expect("balanced");
            if self.anonymous_body(k) {
                self.members(k + 1, close, class, false, fields);
                k = close + 1;
                continue;
            }
            let mut j = k;
            let mut local = None;
            while j > start {
                j -= 1;
                let t = &self.toks[j];
                if t.is_punct(";") || t.is_punct("{") || t.is_punct("}") {
                    break;
                }
                if t.is_ident()
                    && TYPE_KEYWORDS.contains(&t.text)
                    && !(j > 0 && self.toks[j - 1].is_punct("."))
                {
                    local = Some(j);
                }
            }
            if let Some(kw) = local {
                let name = self.tok(kw + 1).map(|t| t.text.to_string()).unwrap_or_default();
                let is_enum = self.toks[kw].text == "enum";
                self.members(k + 1, close, &name, is_enum, fields);
                k = close + 1;
                continue;
            }
            k += 1;
        }
    }

    /// Reads a dotted type name with optional generics and array dims at `i`.
    /// Returns (path, index after the type).
    fn type_at(&self, i: usize, end: usize) -> Option<(String, usize)> {
        let mut j = i;
        let mut path = String::new();
        loop {
            let t = self.tok(j).filter(|_| j < end)?;
            if !t.is_ident() || (is_keyword(t.text) && !PRIMITIVES.contains(&t.text)) {
                return None;
            }
            path.push_str(t.text);
            j += 1;
            if j + 1 < end && self.toks[j].is_punct(".") && self.toks[j + 1].is_ident() {
                path.push('.');
                j += 1;
                continue;
            }
            break;
        }
        if j < end && self.toks[j].is_punct("<") {
            let mut depth = 0i32;
            while j < end {
                let t = &self.toks[j];
                match t.text {
                    "<" => depth += 1,
                    ">" => depth -= 1,
                    "," | "?" | "." | "[" | "]" | "&" => {}
                    _ if t.is_ident() => {}
                    _ => return None,
                }
                j += 1;
                if depth == 0 {
                    break;
                }
            }
            if depth != 0 {
                return None;
            }
        }
        while j + 1 < end && self.toks[j].is_punct("[") && self.toks[j + 1].is_punct("]") {
            j += 2;
        }
        if j < end && self.toks[j].is_punct("...") {
            j += 1;
        }
        Some((path, j))
    }

    /// Recognizes `Type name` followed by `=`, `;`, `,`, `:` or `)`.
    /// Returns (type path, variable name, index of the name).
    fn declaration_at(&self, i: usize, end: usize) -> Option<(String, String, usize)> {
        let (path, j) = self.type_at(i, end)?;
        let name = self.tok(j).filter(|_| j < end)?;
        if !name.is_ident() || is_keyword(name.text) {
            return None;
        }
        let after = self.tok(j + 1)?;
        if !matches!(after.text, "=" | ";" | "," | ":" | ")") || after.kind != TokenKind::Punct {
            return None;
        }
        Some((path, name.text.to_string(), j))
    }

    fn body_refs(
        &self,
        start: usize,
        end: usize,
        class: &str,
        vars: &mut HashMap<String, String>,
        refs: &mut Vec<ApiRef>,
    ) {
        let mut k = start;
        while k < end {
            let t = &self.toks[k];
            if t.kind != TokenKind::Ident {
                k += 1;
                continue;
            }
            if t.is_word("new") {
                if let Some((path, j)) = self.type_at(k + 1, end) {
                    if is_reference_type(&path) {
                        refs.push(ApiRef::Type(path));
                    }
                    k = j;
                } else {
                    k += 1;
                }
                continue;
            }
            let prev = if k > 0 { Some(&self.toks[k - 1]) } else { None };
            let statement_start = match prev {
                None => true,
                Some(p) => {
                    (p.kind == TokenKind::Punct && matches!(p.text, "{" | "}" | ";" | "(" | "," | ":"))
                        || p.is_word("final")
                }
            };
            if statement_start && !is_keyword(t.text) {
                if let Some((path, name, name_idx)) = self.declaration_at(k, end) {
                    if is_reference_type(&path) || PRIMITIVES.contains(&path.as_str()) {
                        let ctor_follows = self.toks[name_idx + 1].is_punct("=")
                            && self.tok(name_idx + 2).is_some_and(|t| t.is_word("new"))
                            && self.type_at(name_idx + 3, end).is_some_and(|(p, _)| p == path);
                        if is_reference_type(&path) && !ctor_follows {
                            refs.push(ApiRef::Type(path.clone()));
                        }
                        if path != "var" {
                            vars.insert(name, path);
                        }
                        k = name_idx + 1;
                        continue;
                    }
                }
            }
            let is_call = self.tok(k + 1).is_some_and(|n| n.is_punct("("));
            if is_call && !is_keyword(t.text) {
                if let Some(r) = self.call_ref(k, class, vars) {
                    refs.push(r);
                }
            }
            k += 1;
        }
    }

    fn call_ref(&self, k: usize, class: &str, vars: &HashMap<String, String>) -> Option<ApiRef> {
        let method = self.toks[k].text.to_string();
        let prev = if k > 0 { Some(&self.toks[k - 1]) } else { None };
        match prev {
            Some(p) if p.is_punct(".") => {}
            Some(p) if p.is_punct("::") => return None,
            Some(p) if p.is_ident() && !CALL_PREFIX_KEYWORDS.contains(&p.text) => {
                // `Type name(` is a declaration, not a call.
                return None;
            }
            _ => {
                return Some(ApiRef::Local {
                    class: class.to_string(),
                    method,
                })
            }
        }
        let mut chain = Vec::new();
        let mut j = k - 1;
        while j > 0 && self.toks[j].is_punct(".") && self.toks[j - 1].is_ident() {
            chain.push(self.toks[j - 1].text);
            j -= 1;
            if j == 0 || !self.toks[j - 1].is_punct(".") {
                break;
            }
            j -= 1;
        }
        chain.reverse();
        let Some((&head, rest)) = chain.split_first() else {
            return Some(ApiRef::Bare(method));
        };
        let with_rest = |base: &str, rest: &[&str]| {
            let mut target = base.to_string();
            for seg in rest {
                target.push('.');
                target.push_str(seg);
            }
            target
        };
        if head == "this" {
            return Some(match rest.split_first() {
                None => ApiRef::Local {
                    class: class.to_string(),
                    method,
                },
                Some((field, more)) => match vars.get(*field) {
                    Some(ty) => ApiRef::Member {
                        target: with_rest(ty, more),
                        method,
                    },
                    None => ApiRef::Bare(method),
                },
            });
        }
        if head == "super" {
            return Some(ApiRef::Bare(method));
        }
        if let Some(ty) = vars.get(head) {
            return Some(ApiRef::Member {
                target: with_rest(ty, rest),
                method,
            });
        }
        let upper = |s: &str| s.chars().next().is_some_and(char::is_uppercase);
        if upper(head) || chain.iter().any(|s| upper(s)) {
            return Some(ApiRef::Member {
                target: chain.join("."),
                method,
            });
        }
        Some(ApiRef::Bare(method))
    }
}

/// Strips generics, array dims and varargs: `List<String>[]` -> `List`.
pub fn base_type(ty: &str) -> String {
    let cut = ty.find(['<', '[']).unwrap_or(ty.len());
    ty[..cut].trim_end_matches("...").trim().to_string()
}
