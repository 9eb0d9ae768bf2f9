//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! variables: x1 x2 x3 x4
//! relations: x1^2*x2          # module A/(relations); optional
//! top: x2                     # module (top)/(relations); optional
//! J: x1, x2, x3, x4
//! ideal I1: x1, x2, x3
//! ideal I2: x3
//! candidate x (3,(0,1)): x3@I2 x1@J x2@J x4@J
//! request mixed type=(3,(0,1))
//! ```

use std::collections::BTreeMap;
use std::fmt;

use multimult_core::{
    IdealFamily, JointReductionCandidate, MixedType, Monomial, MonomialIdeal, QuotientModule, RingContext, Source,
};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    /// Stable kebab-case tag, e.g. `unknown-variable`.
    pub kind: &'static str,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, column: usize, kind: &'static str, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line,
        column,
        kind,
        message: message.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RequestKind {
    Hilbert,
    Mixed,
    VerifyJr,
    ElementProps,
    MultSymbol,
    Chi,
    VerifyTheorem,
    VerifyCorollaries,
    SearchJr,
}

impl RequestKind {
    const ALL: [RequestKind; 9] = [
        RequestKind::Hilbert,
        RequestKind::Mixed,
        RequestKind::VerifyJr,
        RequestKind::ElementProps,
        RequestKind::MultSymbol,
        RequestKind::Chi,
        RequestKind::VerifyTheorem,
        RequestKind::VerifyCorollaries,
        RequestKind::SearchJr,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RequestKind::Hilbert => "hilbert",
            RequestKind::Mixed => "mixed",
            RequestKind::VerifyJr => "verify-jr",
            RequestKind::ElementProps => "element-props",
            RequestKind::MultSymbol => "mult-symbol",
            RequestKind::Chi => "chi",
            RequestKind::VerifyTheorem => "verify-theorem",
            RequestKind::VerifyCorollaries => "verify-corollaries",
            RequestKind::SearchJr => "search-jr",
        }
    }

    /// `(required, optional)` parameter names.
    fn params(&self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            RequestKind::Hilbert => (&[], &["which"]),
            RequestKind::Mixed => (&["type"], &[]),
            RequestKind::VerifyJr => (&["cand"], &[]),
            RequestKind::ElementProps => (&["element", "ideal"], &[]),
            RequestKind::MultSymbol => (&[], &["cand", "elements"]),
            RequestKind::Chi => (&["cand"], &["type"]),
            RequestKind::VerifyTheorem => (&["cand", "ideal"], &[]),
            RequestKind::VerifyCorollaries => (&["cand"], &["ideal"]),
            RequestKind::SearchJr => (&["type"], &["budget", "max-degree"]),
        }
    }
}

impl fmt::Display for RequestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Type(MixedType),
    Candidate(String),
    Ideal(usize),
    Monomials(Vec<Monomial>),
    Which(multimult_core::Which),
    Count(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub line: usize,
    pub kind: RequestKind,
    /// Raw `key=value` text in input order, for echoing.
    pub text: String,
    pub params: BTreeMap<String, Param>,
}

impl Request {
    pub fn ty(&self) -> Option<&MixedType> {
        match self.params.get("type") {
            Some(Param::Type(t)) => Some(t),
            _ => None,
        }
    }

    pub fn candidate(&self) -> Option<&str> {
        match self.params.get("cand") {
            Some(Param::Candidate(c)) => Some(c),
            _ => None,
        }
    }

    pub fn ideal(&self) -> Option<usize> {
        match self.params.get("ideal") {
            Some(Param::Ideal(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn monomials(&self, key: &str) -> Option<&[Monomial]> {
        match self.params.get(key) {
            Some(Param::Monomials(m)) => Some(m),
            _ => None,
        }
    }

    pub fn which(&self) -> Option<multimult_core::Which> {
        match self.params.get("which") {
            Some(Param::Which(w)) => Some(*w),
            _ => None,
        }
    }

    pub fn count(&self, key: &str) -> Option<usize> {
        match self.params.get(key) {
            Some(Param::Count(n)) => Some(*n),
            _ => None,
        }
    }
}

/// The declarations as written, echoed into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceEcho {
    pub variables: Vec<String>,
    pub top: Option<Vec<String>>,
    pub relations: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub ideals: Vec<(String, Vec<String>)>,
    pub candidates: Vec<CandidateEcho>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateEcho {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
    /// `(k_1, ..., k_d, k0 + 1)`.
    pub type_vector: String,
    pub elements: Vec<String>,
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub echo: InstanceEcho,
    pub ctx: RingContext,
    pub family: IdealFamily,
    pub ideal_names: Vec<String>,
    pub candidates: Vec<(String, JointReductionCandidate)>,
    pub requests: Vec<Request>,
}

impl Instance {
    pub fn candidate(&self, name: &str) -> Option<&JointReductionCandidate> {
        self.candidates.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn names(&self) -> &[String] {
        &self.echo.variables
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Tokens of `text` split on whitespace and commas, with 1-based columns
/// relative to `offset`.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((offset + s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out
}

struct Parser {
    variables: Option<Vec<String>>,
    ctx: Option<RingContext>,
}

impl Parser {
    fn ctx(&self, line: usize, column: usize) -> PResult<RingContext> {
        match self.ctx {
            Some(c) => Ok(c),
            None => err(line, column, "missing-variables", "declare `variables:` first"),
        }
    }

    /// `x1^2*x3` or `1`.
    fn monomial(&self, line: usize, column: usize, text: &str) -> PResult<Monomial> {
        let ctx = self.ctx(line, column)?;
        let names = self.variables.as_ref().expect("set with ctx");
        let mut exps = vec![0u32; ctx.num_vars()];
        if text == "1" {
            return Ok(ctx.one());
        }
        let mut col = column;
        for factor in text.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, Some(e)),
                None => (factor, None),
            };
            let Some(var) = names.iter().position(|v| v == name) else {
                return err(
                    line,
                    col,
                    "unknown-variable",
                    format!("`{name}` is not a declared variable"),
                );
            };
            let e = match exp {
                None => 1,
                Some(e) => match e.parse::<u32>() {
                    Ok(v) if v <= u16::MAX as u32 => v,
                    _ => {
                        return err(
                            line,
                            col + name.len() + 1,
                            "malformed-exponent",
                            format!("`{e}` is not a nonnegative integer exponent"),
                        )
                    }
                },
            };
            exps[var] += e;
            col += factor.len() + 1;
        }
        ctx.monomial(&exps)
            .or_else(|e| err(line, column, "malformed-exponent", e.to_string()))
    }

    fn monomial_list(&self, line: usize, offset: usize, text: &str) -> PResult<(Vec<String>, Vec<Monomial>)> {
        let mut raw = Vec::new();
        let mut out = Vec::new();
        for (col, tok) in tokens(text, offset) {
            out.push(self.monomial(line, col, tok)?);
            raw.push(tok.to_string());
        }
        Ok((raw, out))
    }
}

/// `(k0+1,(k_1,...,k_d))`.
pub fn parse_type(text: &str) -> Option<MixedType> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t.strip_prefix('(')?.strip_suffix(')')?;
    let (first, rest) = inner.split_once(',')?;
    let rest = rest.strip_prefix('(')?.strip_suffix(')')?;
    let j_count: usize = first.parse().ok()?;
    let k = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|v| v.parse().ok())
            .collect::<Option<Vec<usize>>>()?
    };
    MixedType::from_j_count(j_count, k).ok()
}

fn type_vector(ty: &MixedType) -> String {
    let parts: Vec<String> =
        ty.k.iter()
            .chain(std::iter::once(&ty.j_count()))
            .map(ToString::to_string)
            .collect();
    format!("({})", parts.join(","))
}

struct PendingCandidate {
    line: usize,
    column: usize,
    name: String,
    declared: Option<MixedType>,
    elements: Vec<(usize, String, String)>,
}

pub fn parse_instance(text: &str) -> PResult<Instance> {
    let mut p = Parser {
        variables: None,
        ctx: None,
    };
    let mut top: Option<(Vec<String>, Vec<Monomial>)> = None;
    let mut relations: (Vec<String>, Vec<Monomial>) = (Vec::new(), Vec::new());
    let mut j: Option<(usize, Vec<String>, Vec<Monomial>)> = None;
    let mut ideals: Vec<(String, Vec<String>, Vec<Monomial>)> = Vec::new();
    let mut pending: Vec<PendingCandidate> = Vec::new();
    let mut raw_requests: Vec<(usize, usize, usize, String, String)> = Vec::new();
    let mut last_line = 0;

    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim_start();
        if let Some(rest) = body.strip_prefix("request ") {
            let off = lead + "request ".len();
            let rest_trim = rest.trim_start();
            let off = off + (rest.len() - rest_trim.len());
            let (kind, params) = rest_trim.split_once(char::is_whitespace).unwrap_or((rest_trim, ""));
            let params_trim = params.trim_start();
            let params_off = off + kind.len() + 1 + (params.len() - params_trim.len());
            raw_requests.push((
                line,
                off + 1,
                params_off,
                kind.to_string(),
                params_trim.trim_end().to_string(),
            ));
            continue;
        }
        let Some((head, value)) = body.split_once(':') else {
            return err(line, lead + 1, "syntax", "expected `key: value` or `request ...`");
        };
        let value_off = lead + head.len() + 1;
        let head_tokens: Vec<&str> = head.split_whitespace().collect();
        match head_tokens.as_slice() {
            ["variables"] => {
                if p.variables.is_some() {
                    return err(line, lead + 1, "duplicate-declaration", "variables declared twice");
                }
                let names: Vec<(usize, &str)> = tokens(value, value_off);
                for (i, (col, n)) in names.iter().enumerate() {
                    if !is_ident(n) || *n == "J" {
                        return err(
                            line,
                            *col,
                            "bad-variable",
                            format!("`{n}` is not a valid variable name"),
                        );
                    }
                    if names[..i].iter().any(|(_, m)| m == n) {
                        return err(line, *col, "duplicate-variable", format!("`{n}` declared twice"));
                    }
                }
                let ctx = RingContext::new(names.len())
                    .or_else(|e| err(line, value_off + 1, "bad-variable-count", e.to_string()))?;
                p.variables = Some(names.iter().map(|(_, n)| n.to_string()).collect());
                p.ctx = Some(ctx);
            }
            ["relations"] => relations = p.monomial_list(line, value_off, value)?,
            ["top"] => top = Some(p.monomial_list(line, value_off, value)?),
            ["J"] => {
                let (raw, gens) = p.monomial_list(line, value_off, value)?;
                j = Some((line, raw, gens));
            }
            ["ideal", name] => {
                let col = lead + head.find(name).unwrap_or(0) + 1;
                if !is_ident(name) || *name == "J" {
                    return err(
                        line,
                        col,
                        "bad-ideal-name",
                        format!("`{name}` is not a valid ideal name"),
                    );
                }
                if ideals.iter().any(|(n, _, _)| n == name) {
                    return err(line, col, "duplicate-ideal", format!("ideal `{name}` declared twice"));
                }
                let (raw, gens) = p.monomial_list(line, value_off, value)?;
                if gens.is_empty() {
                    return err(
                        line,
                        value_off + 1,
                        "empty-ideal",
                        format!("ideal `{name}` has no generators"),
                    );
                }
                ideals.push((name.to_string(), raw, gens));
            }
            ["candidate", name, rest @ ..] => {
                let col = lead + head.find(name).unwrap_or(0) + 1;
                if pending.iter().any(|c| &c.name == name) {
                    return err(
                        line,
                        col,
                        "duplicate-candidate",
                        format!("candidate `{name}` declared twice"),
                    );
                }
                let declared = if rest.is_empty() {
                    None
                } else {
                    let t = rest.join("");
                    match parse_type(&t) {
                        Some(ty) => Some(ty),
                        None => {
                            return err(
                                line,
                                col + name.len() + 1,
                                "malformed-type",
                                format!("`{t}` is not a type"),
                            )
                        }
                    }
                };
                let mut elements = Vec::new();
                for (c, tok) in tokens(value, value_off) {
                    let Some((mono, src)) = tok.split_once('@') else {
                        return err(
                            line,
                            c,
                            "malformed-element",
                            format!("`{tok}` should be `monomial@source`"),
                        );
                    };
                    elements.push((c, mono.to_string(), src.to_string()));
                }
                pending.push(PendingCandidate {
                    line,
                    column: col,
                    name: name.to_string(),
                    declared,
                    elements,
                });
            }
            _ => {
                return err(
                    line,
                    lead + 1,
                    "unknown-directive",
                    format!("unknown declaration `{}`", head.trim()),
                )
            }
        }
    }

    let ctx = p.ctx(last_line.max(1), 1)?;
    let Some((j_line, j_raw, j_gens)) = j else {
        return err(last_line.max(1), 1, "missing-j", "declare `J:`");
    };
    if ideals.is_empty() {
        return err(
            last_line.max(1),
            1,
            "at-least-one-ideal",
            "declare at least one `ideal NAME: ...`",
        );
    }
    let j_ideal = ctx.ideal(j_gens);
    let module = match &top {
        None => QuotientModule::cyclic(ctx.ideal(relations.1.iter().copied())),
        Some((_, t)) => {
            let top_ideal = ctx.ideal(t.iter().copied());
            QuotientModule::subquotient(
                top_ideal.clone(),
                ctx.ideal(relations.1.iter().copied()).intersect(&top_ideal),
            )
        }
    };
    let ideal_list: Vec<MonomialIdeal> = ideals.iter().map(|(_, _, g)| ctx.ideal(g.iter().copied())).collect();
    let family =
        IdealFamily::new(j_ideal, ideal_list, module).or_else(|e| err(j_line, 1, "bad-family", e.to_string()))?;
    let ideal_names: Vec<String> = ideals.iter().map(|(n, _, _)| n.clone()).collect();

    let source_of = |name: &str| -> Option<Source> {
        if name == "J" {
            Some(Source::J)
        } else {
            ideal_names.iter().position(|n| n == name).map(Source::I)
        }
    };

    let mut candidates = Vec::new();
    let mut cand_echo = Vec::new();
    for pc in &pending {
        let mut elements = Vec::new();
        for (col, mono, src) in &pc.elements {
            let u = p.monomial(pc.line, *col, mono)?;
            let Some(s) = source_of(src) else {
                return err(
                    pc.line,
                    col + mono.len() + 1,
                    "unknown-source",
                    format!("`{src}` is neither `J` nor a declared ideal"),
                );
            };
            elements.push((u, s));
        }
        let inferred = JointReductionCandidate::from_elements(&family, elements.clone())
            .or_else(|e| err(pc.line, pc.column, "bad-candidate", e.to_string()))?;
        if let Some(declared) = &pc.declared {
            if declared != inferred.ty() {
                return err(
                    pc.line,
                    pc.column,
                    "candidate-type-mismatch",
                    format!("declared type {declared} but the elements give {}", inferred.ty()),
                );
            }
        }
        cand_echo.push(CandidateEcho {
            name: pc.name.clone(),
            ty: inferred.ty().to_string(),
            type_vector: type_vector(inferred.ty()),
            elements: pc.elements.iter().map(|(_, m, s)| format!("{m}@{s}")).collect(),
        });
        candidates.push((pc.name.clone(), inferred));
    }

    let mut requests = Vec::new();
    for (line, col, params_off, kind, params) in raw_requests {
        let Some(k) = RequestKind::ALL.iter().find(|k| k.name() == kind) else {
            return err(line, col, "unknown-request", format!("unknown request `{kind}`"));
        };
        let (required, optional) = k.params();
        let mut map = BTreeMap::new();
        for (pcol, tok) in split_params(&params, params_off) {
            let Some((key, value)) = tok.split_once('=') else {
                return err(
                    line,
                    pcol,
                    "malformed-parameter",
                    format!("`{tok}` should be `key=value`"),
                );
            };
            if !required.contains(&key) && !optional.contains(&key) {
                return err(
                    line,
                    pcol,
                    "unknown-parameter",
                    format!("`{key}` is not a parameter of `{kind}`"),
                );
            }
            let vcol = pcol + key.len() + 1;
            let param = match key {
                "type" => match parse_type(value) {
                    Some(t) if t.k.len() == ideal_names.len() => Param::Type(t),
                    Some(t) => {
                        return err(
                            line,
                            vcol,
                            "type-arity",
                            format!(
                                "type {t} has {} ideal entries, expected {}",
                                t.k.len(),
                                ideal_names.len()
                            ),
                        )
                    }
                    None => return err(line, vcol, "malformed-type", format!("`{value}` is not a type")),
                },
                "cand" => {
                    if !candidates.iter().any(|(n, _)| n == value) {
                        return err(line, vcol, "undeclared-name", format!("no candidate named `{value}`"));
                    }
                    Param::Candidate(value.to_string())
                }
                "ideal" => match ideal_names.iter().position(|n| n == value) {
                    Some(i) => Param::Ideal(i),
                    None => return err(line, vcol, "undeclared-name", format!("no ideal named `{value}`")),
                },
                "element" | "elements" => {
                    let mut ms = Vec::new();
                    for (c, m) in value.split(';').scan(vcol, |c, m| {
                        let here = *c;
                        *c += m.len() + 1;
                        Some((here, m))
                    }) {
                        ms.push(p.monomial(line, c, m)?);
                    }
                    if key == "element" && ms.len() != 1 {
                        return err(line, vcol, "malformed-parameter", "`element` takes one monomial");
                    }
                    Param::Monomials(ms)
                }
                "which" => match value {
                    "P" => Param::Which(multimult_core::Which::P),
                    "F" => Param::Which(multimult_core::Which::F),
                    _ => return err(line, vcol, "malformed-parameter", "`which` is `P` or `F`"),
                },
                _ => match value.parse::<usize>() {
                    Ok(n) => Param::Count(n),
                    Err(_) => return err(line, vcol, "malformed-parameter", format!("`{value}` is not a count")),
                },
            };
            if map.insert(key.to_string(), param).is_some() {
                return err(line, pcol, "duplicate-parameter", format!("`{key}` given twice"));
            }
        }
        for r in required {
            if !map.contains_key(*r) {
                return err(line, col, "missing-parameter", format!("`{kind}` needs `{r}=`"));
            }
        }
        if *k == RequestKind::MultSymbol && map.contains_key("cand") == map.contains_key("elements") {
            return err(
                line,
                col,
                "missing-parameter",
                "`mult-symbol` needs exactly one of `cand=` or `elements=`",
            );
        }
        if let (Some(Param::Type(t)), Some(Param::Candidate(c))) = (map.get("type"), map.get("cand")) {
            let cand = &candidates.iter().find(|(n, _)| n == c).expect("checked").1;
            if cand.ty() != t {
                return err(
                    line,
                    col,
                    "candidate-type-mismatch",
                    format!("candidate `{c}` has type {}, not {t}", cand.ty()),
                );
            }
        }
        requests.push(Request {
            line,
            kind: *k,
            text: if params.is_empty() {
                kind.clone()
            } else {
                format!("{kind} {params}")
            },
            params: map,
        });
    }

    Ok(Instance {
        echo: InstanceEcho {
            variables: p.variables.unwrap_or_default(),
            top: top.map(|(raw, _)| raw),
            relations: relations.0,
            j: j_raw,
            ideals: ideals.iter().map(|(n, raw, _)| (n.clone(), raw.clone())).collect(),
            candidates: cand_echo,
        },
        ctx,
        family,
        ideal_names,
        candidates,
        requests,
    })
}

/// Whitespace-separated `key=value` tokens; values may contain commas
/// inside parentheses.
fn split_params(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let sep = c.is_whitespace() && depth == 0;
        match (sep, start) {
            (true, Some(s)) => {
                out.push((offset + s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out
}
