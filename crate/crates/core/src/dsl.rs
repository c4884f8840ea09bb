//! The input language for groups and weights.
//!
//! ```text
//! # comment
//! group B 3            # or: A n | D n | I2 m
//! L s = 2              # rational weights, one line per generator
//! L t = 1
//! L u = 1
//! ```
//!
//! An explicit Coxeter matrix replaces the `group` line:
//!
//! ```text
//! matrix 3
//! 1 3 2
//! 3 1 4
//! 2 4 1
//! ```
//!
//! Lexicographic weights use `L lex s = e_1`; the first coordinate dominates.
//! Generators are named `s, t, u` up to rank 3 and `s1 … sn` otherwise, and
//! can always be referred to as `s<i>` (one-based). Without `L` lines every
//! weight is 1.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::coxeter::{
    default_generator_names, CoxeterError, CoxeterGroup, CoxeterMatrix, CoxeterType, WeightFunction,
    DEFAULT_SIZE_CAP,
};
use crate::ordered::{parse_rational, render_rational, Exponent, GammaMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: CoxeterError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Named(CoxeterType),
    Matrix(CoxeterMatrix),
}

/// Weights as written; lex indices are one-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    Default,
    Rational(Vec<BigRational>),
    Lex(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spec {
    pub group: GroupSpec,
    pub weights: WeightSpec,
}

impl Spec {
    pub fn matrix(&self) -> Result<CoxeterMatrix, CoxeterError> {
        match &self.group {
            GroupSpec::Named(ty) => CoxeterMatrix::named(*ty),
            GroupSpec::Matrix(m) => Ok(m.clone()),
        }
    }

    pub fn mode(&self) -> GammaMode {
        match &self.weights {
            WeightSpec::Lex(idx) => GammaMode::Lex(idx.iter().copied().max().unwrap_or(1)),
            _ => GammaMode::Rational,
        }
    }

    pub fn weight_function(&self, rank: usize) -> WeightFunction {
        match &self.weights {
            WeightSpec::Default => WeightFunction::uniform(rank, Exponent::integer(1)),
            WeightSpec::Rational(q) => WeightFunction::new(q.iter().cloned().map(Exponent::Rational).collect()),
            WeightSpec::Lex(idx) => {
                let GammaMode::Lex(k) = self.mode() else { unreachable!() };
                WeightFunction::new(idx.iter().map(|&i| Exponent::unit(k, i - 1)).collect())
            }
        }
    }
}

/// A parsed and validated specification.
#[derive(Debug, Clone)]
pub struct ParsedSpec {
    pub spec: Spec,
    pub group: CoxeterGroup,
    pub weights: WeightFunction,
}

struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in code.char_indices() {
        if ch.is_whitespace() || ch == '=' {
            if let Some(s) = start.take() {
                out.push(Token { col: s, text: &code[s..i] });
            }
            if ch == '=' {
                out.push(Token { col: i, text: "=" });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { col: s, text: &code[s..] });
    }
    out
}

struct LineCtx<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    end_col: usize,
}

impl<'a> LineCtx<'a> {
    fn err<T>(&self, idx: usize, msg: impl Into<String>) -> Result<T, DslError> {
        let col = self.tokens.get(idx).map_or(self.end_col, |t| t.col + 1);
        Err(DslError::Syntax {
            line: self.line,
            col,
            msg: msg.into(),
        })
    }

    fn get(&self, idx: usize, what: &str) -> Result<&'a str, DslError> {
        match self.tokens.get(idx) {
            Some(t) => Ok(t.text),
            None => self.err(idx, format!("expected {what}")),
        }
    }

    fn number<T: std::str::FromStr>(&self, idx: usize, what: &str) -> Result<T, DslError> {
        let s = self.get(idx, what)?;
        match s.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err(idx, format!("expected {what}, found `{s}`")),
        }
    }

    fn finish(&self, idx: usize) -> Result<(), DslError> {
        if idx < self.tokens.len() {
            return self.err(idx, format!("unexpected `{}`", self.tokens[idx].text));
        }
        Ok(())
    }
}

enum WeightLine {
    Rational(BigRational),
    Lex(usize),
}

fn resolve_generator(names: &[String], name: &str) -> Option<usize> {
    names.iter().position(|n| n == name).or_else(|| {
        let i: usize = name.strip_prefix('s')?.parse().ok()?;
        (1..=names.len()).contains(&i).then(|| i - 1)
    })
}

fn parse_syntax(text: &str) -> Result<Spec, DslError> {
    let mut group: Option<(GroupSpec, usize)> = None;
    let mut pending_rows: Option<(usize, usize, Vec<Vec<u32>>)> = None;
    // (generator, weight, line, column)
    let mut weight_lines: Vec<(String, WeightLine, usize, usize)> = Vec::new();
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let ctx = LineCtx {
            line: n + 1,
            tokens: tokenize(raw),
            end_col: raw.trim_end().chars().count() + 1,
        };
        last_line = n + 1;
        if ctx.tokens.is_empty() {
            continue;
        }
        if let Some((rank, line0, rows)) = pending_rows.as_mut() {
            let mut row = Vec::with_capacity(*rank);
            for i in 0..ctx.tokens.len() {
                row.push(ctx.number::<u32>(i, "a matrix entry")?);
            }
            if row.len() != *rank {
                return ctx.err(row.len().min(ctx.tokens.len()), format!("expected {rank} matrix entries"));
            }
            rows.push(row);
            if rows.len() == *rank {
                let line0 = *line0;
                let rows = std::mem::take(rows);
                pending_rows = None;
                let m = CoxeterMatrix::new(rows).map_err(|source| DslError::Semantic { line: line0, source })?;
                group = Some((GroupSpec::Matrix(m), line0));
            }
            continue;
        }
        match ctx.tokens[0].text {
            "group" | "matrix" if group.is_some() => {
                return ctx.err(0, "the group is already defined");
            }
            "group" => {
                let kind = ctx.get(1, "a type name (A, B, D or I2)")?;
                let ty = match kind {
                    "A" => CoxeterType::A(ctx.number(2, "a rank")?),
                    "B" => CoxeterType::B(ctx.number(2, "a rank")?),
                    "D" => CoxeterType::D(ctx.number(2, "a rank")?),
                    "I2" => CoxeterType::I2(ctx.number(2, "an integer m")?),
                    other => return ctx.err(1, format!("unknown type `{other}`")),
                };
                ctx.finish(3)?;
                if let Err(e) = CoxeterMatrix::named(ty) {
                    return ctx.err(2, e.to_string());
                }
                group = Some((GroupSpec::Named(ty), n + 1));
            }
            "matrix" => {
                let rank: usize = ctx.number(1, "a rank")?;
                ctx.finish(2)?;
                if rank == 0 {
                    return ctx.err(1, "rank must be positive");
                }
                pending_rows = Some((rank, n + 1, Vec::new()));
            }
            "L" => {
                let lex = ctx.tokens.get(1).is_some_and(|t| t.text == "lex");
                let at = if lex { 2 } else { 1 };
                let gen = ctx.get(at, "a generator")?;
                if ctx.get(at + 1, "`=`")? != "=" {
                    return ctx.err(at + 1, "expected `=`");
                }
                let value = ctx.get(at + 2, if lex { "e_<i>" } else { "a rational weight" })?;
                let w = if lex {
                    match value.strip_prefix("e_").and_then(|i| i.parse::<usize>().ok()) {
                        Some(i) if i >= 1 => WeightLine::Lex(i),
                        _ => return ctx.err(at + 2, format!("expected e_<i> with i ≥ 1, found `{value}`")),
                    }
                } else {
                    match parse_rational(value) {
                        Some(q) => WeightLine::Rational(q),
                        None => return ctx.err(at + 2, format!("expected a rational, found `{value}`")),
                    }
                };
                ctx.finish(at + 3)?;
                weight_lines.push((gen.to_string(), w, n + 1, ctx.tokens[at].col + 1));
            }
            other => return ctx.err(0, format!("unknown directive `{other}`")),
        }
    }
    if let Some((rank, _, rows)) = pending_rows {
        return Err(DslError::Syntax {
            line: last_line + 1,
            col: 1,
            msg: format!("matrix ends after {} of {rank} rows", rows.len()),
        });
    }
    let Some((group, _)) = group else {
        return Err(DslError::Syntax {
            line: last_line.max(1),
            col: 1,
            msg: "missing `group` or `matrix`".into(),
        });
    };
    let spec = Spec {
        group,
        weights: WeightSpec::Default,
    };
    let rank = spec.matrix().expect("checked while parsing").rank();
    let names = default_generator_names(rank);
    let weights = assemble_weights(&names, weight_lines)?;
    Ok(Spec { weights, ..spec })
}

fn assemble_weights(
    names: &[String],
    lines: Vec<(String, WeightLine, usize, usize)>,
) -> Result<WeightSpec, DslError> {
    if lines.is_empty() {
        return Ok(WeightSpec::Default);
    }
    let syntax = |line, col, msg: String| Err(DslError::Syntax { line, col, msg });
    let lex = matches!(lines[0].1, WeightLine::Lex(_));
    let mut rational = vec![None; names.len()];
    let mut lexical = vec![None; names.len()];
    let mut last = (0, 0);
    for (gen, w, line, col) in lines {
        last = (line, col);
        let Some(s) = resolve_generator(names, &gen) else {
            return syntax(line, col, format!("unknown generator `{gen}`"));
        };
        if rational[s].is_some() || lexical[s].is_some() {
            return syntax(line, col, format!("weight of `{gen}` given twice"));
        }
        match w {
            WeightLine::Rational(q) if !lex => rational[s] = Some(q),
            WeightLine::Lex(i) if lex => lexical[s] = Some(i),
            _ => return syntax(line, col, "rational and lex weights cannot be mixed".into()),
        }
    }
    let missing = |found: &dyn Fn(usize) -> bool| (0..names.len()).find(|&s| !found(s));
    if lex {
        if let Some(s) = missing(&|s| lexical[s].is_some()) {
            return syntax(last.0, 1, format!("no weight for generator `{}`", names[s]));
        }
        Ok(WeightSpec::Lex(lexical.into_iter().map(Option::unwrap).collect()))
    } else {
        if let Some(s) = missing(&|s| rational[s].is_some()) {
            return syntax(last.0, 1, format!("no weight for generator `{}`", names[s]));
        }
        Ok(WeightSpec::Rational(rational.into_iter().map(Option::unwrap).collect()))
    }
}

/// Parses a specification, builds the group and validates the weights.
pub fn parse_spec(text: &str) -> Result<ParsedSpec, DslError> {
    let spec = parse_syntax(text)?;
    let weight_line = text
        .lines()
        .position(|l| tokenize(l).first().is_some_and(|t| t.text == "L"))
        .map_or(1, |i| i + 1);
    let group_line = text
        .lines()
        .position(|l| tokenize(l).first().is_some_and(|t| t.text == "group" || t.text == "matrix"))
        .map_or(1, |i| i + 1);
    let matrix = spec.matrix().expect("checked while parsing");
    let group = CoxeterGroup::build(&matrix, DEFAULT_SIZE_CAP).map_err(|source| DslError::Semantic {
        line: group_line,
        source,
    })?;
    let weights = spec.weight_function(group.rank());
    weights.validate(&group).map_err(|source| DslError::Semantic {
        line: weight_line,
        source,
    })?;
    Ok(ParsedSpec { spec, group, weights })
}

/// Renders a specification in the input language.
pub fn render_spec(spec: &Spec) -> String {
    let mut out = String::new();
    let rank = match &spec.group {
        GroupSpec::Named(ty) => {
            out.push_str(&format!("group {ty}\n"));
            CoxeterMatrix::named(*ty).map_or(0, |m| m.rank())
        }
        GroupSpec::Matrix(m) => {
            out.push_str(&format!("matrix {}\n", m.rank()));
            for row in m.entries() {
                let row: Vec<String> = row.iter().map(u32::to_string).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            m.rank()
        }
    };
    let names = default_generator_names(rank);
    match &spec.weights {
        WeightSpec::Default => {}
        WeightSpec::Rational(q) => {
            for (n, q) in names.iter().zip(q) {
                out.push_str(&format!("L {n} = {}\n", render_rational(q)));
            }
        }
        WeightSpec::Lex(idx) => {
            for (n, i) in names.iter().zip(idx) {
                out.push_str(&format!("L lex {n} = e_{i}\n"));
            }
        }
    }
    out
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_spec(self))
    }
}
