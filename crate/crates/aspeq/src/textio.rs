//! Reading and writing the textual program formats.
//!
//! A `.lp` file is a sequence of `.`-terminated statements: the five rule
//! forms plus `#hide`, `#visible`, and `#atoms` declarations, with `%`
//! comments. A `.wlp` file carries weight constraint rules and accepts the
//! same declarations. Printing is canonical, one statement per line with
//! rules first and declarations last, and `parse(print(p))` reproduces `p`
//! up to atom ids. Generated atoms keep their reserved dotted names when
//! printed, so translation output is meant to be read, not parsed back.

use std::collections::BTreeSet;
use std::fmt;

use crate::ast::{build_program, Atom, Program, Rule, SymbolTable};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::wcp::{build_wc_program, WCProgram, WCRule, WeightConstraint};

/// Source position for diagnostics, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// A parse result plus non-fatal observations about the input.
#[derive(Debug)]
pub struct Parsed<T> {
    pub program: T,
    pub warnings: Vec<String>,
}

/// Bounds and weights must stay below 2^63.
const NUM_LIMIT: u64 = 1 << 63;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Directive(&'static str),
    Implies,
    Comma,
    Dot,
    Eq,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn is_ident_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn lex(text: &str, file: &str) -> Result<(Vec<Token>, SourceSpan)> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut line = 1u32;
    let mut col = 1u32;
    let mut toks = Vec::new();
    let span = |line, col| SourceSpan { file: file.to_string(), line, column: col };
    let fail = |line, col, msg: String| Err(Error::Parse { span: span(line, col), msg });
    while i < bytes.len() {
        let b = bytes[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, n: u32| {
            toks.push(Token { tok, span: span(l0, c0) });
            (n, n)
        };
        let (di, dc) = match b {
            b' ' | b'\t' | b'\r' => (1, 1),
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            b'%' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'.' => push(Tok::Dot, 1),
            b',' => push(Tok::Comma, 1),
            b'=' => push(Tok::Eq, 1),
            b'{' => push(Tok::LBrace, 1),
            b'}' => push(Tok::RBrace, 1),
            b'[' => push(Tok::LBracket, 1),
            b']' => push(Tok::RBracket, 1),
            b':' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    push(Tok::Implies, 2)
                } else {
                    return fail(l0, c0, "expected `:-`".to_string());
                }
            }
            b'-' => return fail(l0, c0, "negative numbers are not supported".to_string()),
            b'0'..=b'9' => {
                let start = i;
                let mut n = 0;
                while i + n < bytes.len() && bytes[i + n].is_ascii_digit() {
                    n += 1;
                }
                if bytes.get(i + n).is_some_and(|&b| is_ident_char(b)) {
                    return fail(l0, c0, "atom names must start with a lowercase letter or `_`".to_string());
                }
                let digits = &text[start..start + n];
                let value: u64 = digits
                    .parse()
                    .ok()
                    .filter(|&v| v < NUM_LIMIT)
                    .ok_or(Error::Parse {
                        span: span(l0, c0),
                        msg: format!("number `{digits}` is too large (numbers must stay below 2^63)"),
                    })?;
                push(Tok::Num(value), n as u32)
            }
            b'#' => {
                let start = i + 1;
                let mut n = 0;
                while start + n < bytes.len() && is_ident_char(bytes[start + n]) {
                    n += 1;
                }
                let name = match &text[start..start + n] {
                    "hide" => "hide",
                    "visible" => "visible",
                    "atoms" => "atoms",
                    other => return fail(l0, c0, format!("unknown directive `#{other}`")),
                };
                push(Tok::Directive(name), (n + 1) as u32)
            }
            b if b.is_ascii_lowercase() || b == b'_' => {
                let start = i;
                loop {
                    while i < bytes.len() && is_ident_char(bytes[i]) {
                        i += 1;
                        col += 1;
                    }
                    if bytes.get(i) != Some(&b'(') {
                        break;
                    }
                    let (ol, oc) = (line, col);
                    i += 1;
                    col += 1;
                    let mut depth = 1u32;
                    while depth > 0 {
                        match bytes.get(i) {
                            None | Some(b'\n') => {
                                return fail(ol, oc, "unclosed `(` in atom name".to_string())
                            }
                            Some(b'(') => depth += 1,
                            Some(b')') => depth -= 1,
                            Some(&c) if is_ident_char(c) || c == b',' => {}
                            Some(_) => {
                                let c = text[i..].chars().next().unwrap();
                                return fail(
                                    line,
                                    col,
                                    format!("character `{c}` is not allowed inside atom arguments"),
                                );
                            }
                        }
                        i += 1;
                        col += 1;
                    }
                }
                toks.push(Token { tok: Tok::Ident(text[start..i].to_string()), span: span(l0, c0) });
                continue;
            }
            b if b.is_ascii_uppercase() => {
                return fail(
                    l0,
                    c0,
                    "atom names must start with a lowercase letter or `_` (variables are not supported)"
                        .to_string(),
                );
            }
            _ => {
                let c = text[i..].chars().next().unwrap();
                return fail(l0, c0, format!("unexpected character `{c}`"));
            }
        };
        i += di as usize;
        col += dc;
    }
    Ok((toks, span(line, col)))
}

struct Tokens {
    toks: Vec<Token>,
    i: usize,
    eof: SourceSpan,
}

impl Tokens {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.i + 1).map(|t| &t.tok)
    }

    fn take(&mut self) -> Option<Token> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn here(&self) -> SourceSpan {
        self.toks.get(self.i).map_or_else(|| self.eof.clone(), |t| t.span.clone())
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { span: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn atom(&mut self, table: &mut SymbolTable) -> Result<Atom> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Token { tok: Tok::Ident(name), .. }) = self.take() else { unreachable!() };
                Ok(table.intern(&name))
            }
            _ => self.err("expected an atom"),
        }
    }

    fn atom_name(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Token { tok: Tok::Ident(name), .. }) = self.take() else { unreachable!() };
                Ok(name)
            }
            _ => self.err("expected an atom"),
        }
    }

    fn num(&mut self) -> Result<u64> {
        match self.peek() {
            Some(&Tok::Num(n)) => {
                self.i += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    /// `lit, lit, ...`, possibly empty, up to (not consuming) `closer`.
    fn lit_list(&mut self, table: &mut SymbolTable, closer: &Tok) -> Result<(Vec<Atom>, Vec<Atom>)> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.peek() == Some(closer) {
            return Ok((pos, neg));
        }
        loop {
            if self.eat_keyword("not") {
                neg.push(self.atom(table)?);
            } else {
                pos.push(self.atom(table)?);
            }
            if !self.eat(&Tok::Comma) {
                return Ok((pos, neg));
            }
        }
    }

    /// `lit=NUM, ...`, possibly empty, up to (not consuming) `closer`.
    fn wlit_list(
        &mut self,
        table: &mut SymbolTable,
        closer: &Tok,
    ) -> Result<(Vec<(Atom, u64)>, Vec<(Atom, u64)>)> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.peek() == Some(closer) {
            return Ok((pos, neg));
        }
        loop {
            let negated = self.eat_keyword("not");
            let a = self.atom(table)?;
            self.expect(&Tok::Eq, "`=` and a weight")?;
            let w = self.num()?;
            if negated {
                neg.push((a, w));
            } else {
                pos.push((a, w));
            }
            if !self.eat(&Tok::Comma) {
                return Ok((pos, neg));
            }
        }
    }

    /// `atom, atom, ...`, possibly empty, up to (not consuming) `closer`.
    fn atom_list(&mut self, table: &mut SymbolTable, closer: &Tok) -> Result<Vec<Atom>> {
        let mut out = Vec::new();
        if self.peek() == Some(closer) {
            return Ok(out);
        }
        loop {
            out.push(self.atom(table)?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn name_list(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Dot) {
            return Ok(out);
        }
        loop {
            out.push(self.atom_name()?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }
}

/// Declarations collected as names during parsing and resolved once the
/// whole file has been read, so a directive may precede or follow the rules
/// mentioning its atoms without changing the result.
#[derive(Default)]
struct Decls {
    hide: Vec<String>,
    visible: Vec<String>,
    extra: Vec<String>,
    saw_hide: bool,
    saw_visible: bool,
}

impl Decls {
    fn add(&mut self, kind: &str, names: Vec<String>) {
        match kind {
            "hide" => {
                self.saw_hide = true;
                self.hide.extend(names);
            }
            "visible" => {
                self.saw_visible = true;
                self.visible.extend(names);
            }
            _ => self.extra.extend(names),
        }
    }

    fn resolve(
        self,
        table: &mut SymbolTable,
        warnings: &mut Vec<String>,
    ) -> (Option<Vec<Atom>>, Option<Vec<Atom>>, Vec<Atom>) {
        let mut convert = |names: Vec<String>, kind: &str| -> Vec<Atom> {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for n in names {
                if seen.insert(n.clone()) {
                    out.push(table.intern(&n));
                } else {
                    warnings.push(format!("atom `{n}` is listed more than once in #{kind}"));
                }
            }
            out
        };
        let hide = convert(self.hide, "hide");
        let visible = convert(self.visible, "visible");
        let extra = convert(self.extra, "atoms");
        (
            self.saw_visible.then_some(visible),
            self.saw_hide.then_some(hide),
            extra,
        )
    }
}

/// Parses `.lp` text into a program. `file` names the input in diagnostics.
pub fn parse_program(text: &str, file: &str) -> Result<Parsed<Program>> {
    let (toks, eof) = lex(text, file)?;
    let mut ts = Tokens { toks, i: 0, eof };
    let mut table = SymbolTable::new();
    let mut rules = Vec::new();
    let mut decls = Decls::default();
    while ts.peek().is_some() {
        match ts.peek() {
            Some(&Tok::Directive(kind)) => {
                ts.i += 1;
                let names = ts.name_list()?;
                decls.add(kind, names);
            }
            Some(Tok::LBrace) => {
                let open = ts.here();
                ts.i += 1;
                let heads = ts.atom_list(&mut table, &Tok::RBrace)?;
                ts.expect(&Tok::RBrace, "`}`")?;
                if heads.is_empty() {
                    return Err(Error::Parse {
                        span: open,
                        msg: "choice rule must have at least one head atom".to_string(),
                    });
                }
                let (pos, neg) = if ts.eat(&Tok::Implies) {
                    ts.lit_list(&mut table, &Tok::Dot)?
                } else {
                    (Vec::new(), Vec::new())
                };
                rules.push(Rule::choice(heads, pos, neg));
            }
            Some(Tok::Ident(name)) if name == "compute" && ts.peek2() == Some(&Tok::LBrace) => {
                ts.i += 2;
                let (pos, neg) = ts.lit_list(&mut table, &Tok::RBrace)?;
                ts.expect(&Tok::RBrace, "`}`")?;
                rules.push(Rule::compute(pos, neg));
            }
            Some(Tok::Ident(_)) => {
                let head = ts.atom(&mut table)?;
                if ts.eat(&Tok::Implies) {
                    if matches!(ts.peek(), Some(Tok::Num(_))) {
                        let bound = ts.num()?;
                        if ts.eat(&Tok::LBrace) {
                            let (pos, neg) = ts.lit_list(&mut table, &Tok::RBrace)?;
                            ts.expect(&Tok::RBrace, "`}`")?;
                            rules.push(Rule::constraint(head, bound, pos, neg));
                        } else if ts.eat(&Tok::LBracket) {
                            let (pos, neg) = ts.wlit_list(&mut table, &Tok::RBracket)?;
                            ts.expect(&Tok::RBracket, "`]`")?;
                            rules.push(Rule::weight(head, bound, pos, neg));
                        } else {
                            return ts.err("expected `{` or `[` after the bound");
                        }
                    } else {
                        let (pos, neg) = ts.lit_list(&mut table, &Tok::Dot)?;
                        rules.push(Rule::basic(head, pos, neg));
                    }
                } else {
                    rules.push(Rule::basic(head, Vec::new(), Vec::new()));
                }
            }
            _ => return ts.err("expected a rule or directive"),
        }
        ts.expect(&Tok::Dot, "`.` at the end of the statement")?;
    }
    let mut warnings = Vec::new();
    let (visible, hidden, extra) = decls.resolve(&mut table, &mut warnings);
    let program = build_program(table, rules, visible.as_deref(), hidden.as_deref(), &extra)?;
    Ok(Parsed { program, warnings })
}

/// Parses `.wlp` text into a weight constraint program.
pub fn parse_wc_program(text: &str, file: &str) -> Result<Parsed<WCProgram>> {
    let (toks, eof) = lex(text, file)?;
    let mut ts = Tokens { toks, i: 0, eof };
    let mut table = SymbolTable::new();
    let mut rules = Vec::new();
    let mut decls = Decls::default();
    while ts.peek().is_some() {
        if let Some(&Tok::Directive(kind)) = ts.peek() {
            ts.i += 1;
            let names = ts.name_list()?;
            decls.add(kind, names);
        } else {
            let head = parse_wc(&mut ts, &mut table)?;
            let mut body = Vec::new();
            if ts.eat(&Tok::Implies) {
                loop {
                    body.push(parse_wc(&mut ts, &mut table)?);
                    if !ts.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            rules.push(WCRule { head, body });
        }
        ts.expect(&Tok::Dot, "`.` at the end of the statement")?;
    }
    let mut warnings = Vec::new();
    let (visible, hidden, extra) = decls.resolve(&mut table, &mut warnings);
    let program = build_wc_program(table, rules, visible.as_deref(), hidden.as_deref(), &extra)?;
    Ok(Parsed { program, warnings })
}

fn parse_wc(ts: &mut Tokens, table: &mut SymbolTable) -> Result<WeightConstraint> {
    let start = ts.here();
    let lower = if matches!(ts.peek(), Some(Tok::Num(_))) { ts.num()? } else { 0 };
    ts.expect(&Tok::LBrace, "`{`")?;
    let (pos, neg) = ts.wlit_list(table, &Tok::RBrace)?;
    ts.expect(&Tok::RBrace, "`}`")?;
    let upper = if matches!(ts.peek(), Some(Tok::Num(_))) { Some(ts.num()?) } else { None };
    WeightConstraint::new(lower, upper, pos, neg)
        .map_err(|e| Error::Parse { span: start, msg: e.to_string() })
}

fn lit_text(pos: &[Atom], neg: &[Atom], t: &SymbolTable) -> String {
    let items: Vec<String> = pos
        .iter()
        .map(|&a| t.name(a).to_string())
        .chain(neg.iter().map(|&a| format!("not {}", t.name(a))))
        .collect();
    items.join(", ")
}

fn wlit_text(pos: &[(Atom, u64)], neg: &[(Atom, u64)], t: &SymbolTable) -> String {
    let items: Vec<String> = pos
        .iter()
        .map(|&(a, w)| format!("{}={w}", t.name(a)))
        .chain(neg.iter().map(|&(a, w)| format!("not {}={w}", t.name(a))))
        .collect();
    items.join(", ")
}

fn braced(items: &str) -> String {
    if items.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {items} }}")
    }
}

fn bracketed(items: &str) -> String {
    if items.is_empty() {
        "[ ]".to_string()
    } else {
        format!("[ {items} ]")
    }
}

fn rule_text(r: &Rule, t: &SymbolTable) -> String {
    match r {
        Rule::Basic { head, pos, neg } => {
            let body = lit_text(pos, neg, t);
            if body.is_empty() {
                format!("{}.", t.name(*head))
            } else {
                format!("{} :- {body}.", t.name(*head))
            }
        }
        Rule::Constraint { head, bound, pos, neg } => {
            format!("{} :- {bound} {}.", t.name(*head), braced(&lit_text(pos, neg, t)))
        }
        Rule::Choice { heads, pos, neg } => {
            let hs: Vec<&str> = heads.iter().map(|&a| t.name(a)).collect();
            let body = lit_text(pos, neg, t);
            if body.is_empty() {
                format!("{}.", braced(&hs.join(", ")))
            } else {
                format!("{} :- {body}.", braced(&hs.join(", ")))
            }
        }
        Rule::Weight { head, bound, pos, neg } => {
            format!("{} :- {bound} {}.", t.name(*head), bracketed(&wlit_text(pos, neg, t)))
        }
        Rule::Compute { pos, neg } => format!("compute {}.", braced(&lit_text(pos, neg, t))),
    }
}

fn sorted_names<'t>(s: &Interpretation, t: &'t SymbolTable) -> Vec<&'t str> {
    let mut names: Vec<&str> = s.iter().map(|a| t.name(a)).collect();
    names.sort_unstable();
    names
}

fn declaration_text(hidden: &Interpretation, lone_visible: &Interpretation, t: &SymbolTable) -> String {
    let mut out = String::new();
    let hide = sorted_names(hidden, t);
    if !hide.is_empty() {
        out.push_str(&format!("#hide {}.\n", hide.join(", ")));
    }
    let atoms = sorted_names(lone_visible, t);
    if !atoms.is_empty() {
        out.push_str(&format!("#atoms {}.\n", atoms.join(", ")));
    }
    out
}

/// Canonical text for a program: rules in order, then `#hide` for the
/// hidden atoms and `#atoms` for visible atoms occurring in no rule.
pub fn print_program(p: &Program) -> String {
    let t = p.symbols();
    let mut out = String::new();
    for r in p.rules() {
        out.push_str(&rule_text(r, t));
        out.push('\n');
    }
    out.push_str(&declaration_text(p.hbh(), &p.hba().intersection(p.hbv()), t));
    out
}

fn wc_text(c: &WeightConstraint, t: &SymbolTable) -> String {
    let mut s = format!("{} {}", c.lower(), braced(&wlit_text(c.pos(), c.neg(), t)));
    if let Some(u) = c.upper() {
        s.push_str(&format!(" {u}"));
    }
    s
}

/// Canonical text for a weight constraint program. Lower bounds are always
/// written, absent upper bounds are omitted.
pub fn print_wc_program(p: &WCProgram) -> String {
    let t = p.symbols();
    let mut out = String::new();
    let mut occurring = Interpretation::new();
    for r in p.rules() {
        r.head.for_each_atom(|a| occurring.insert(a));
        for c in &r.body {
            c.for_each_atom(|a| occurring.insert(a));
        }
        let head = wc_text(&r.head, t);
        if r.body.is_empty() {
            out.push_str(&format!("{head}.\n"));
        } else {
            let body: Vec<String> = r.body.iter().map(|c| wc_text(c, t)).collect();
            out.push_str(&format!("{head} :- {}.\n", body.join(", ")));
        }
    }
    let lone_visible = p.hbv().difference(&occurring);
    out.push_str(&declaration_text(p.hbh(), &lone_visible, t));
    out
}

/// One-line model rendering: visible atoms first, then hidden atoms marked
/// `*`, both sorted by name.
pub fn format_model(p: &Program, m: &Interpretation) -> String {
    let mut vis: Vec<String> =
        m.intersection(p.hbv()).iter().map(|a| p.name(a).to_string()).collect();
    vis.sort_unstable();
    let mut hid: Vec<String> =
        m.intersection(p.hbh()).iter().map(|a| format!("*{}", p.name(a))).collect();
    hid.sort_unstable();
    vis.extend(hid);
    format!("{{{}}}", vis.join(", "))
}
