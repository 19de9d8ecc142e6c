//! Variety files.
//!
//! ```text
//! # comment
//! ambient P(1,1,1,1,1,1) vars x y z t u w
//! eq x^3 + y^3 + z^3 + t^3 - u^3 - w^3
//! eq ...
//! point [1:-1:0:0:0:0] expect OTP
//! expect otp-count 9
//! seed 1
//! primes 7,13,31
//! ```
//!
//! The ambient header comes first; `eq` lines give the generators, `point`
//! lines declare rational points with an optional expected kind (`OTP`,
//! `ODP`, `smooth`, `other`). `seed` and `primes` set defaults for the
//! commands reading the file.

use std::fmt::Write as _;

use tripoint_core::algebra::{Rational, RationalField};
use tripoint_core::geometry::{parse_point, render_coords, Ambient, GeometryError, Variety};
use tripoint_core::local::SingularityKind;
use tripoint_core::polyring::{parse_polynomial, PolyError};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct DeclaredPoint {
    pub coords: Vec<Rational>,
    pub expect: Option<SingularityKind>,
}

#[derive(Debug, Clone)]
pub struct VarietyFile {
    pub variety: Variety,
    pub points: Vec<DeclaredPoint>,
    pub expect_otp_count: Option<usize>,
    pub seed: Option<u64>,
    pub primes: Option<Vec<u64>>,
}

pub fn parse_kind(word: &str) -> Option<SingularityKind> {
    match word.to_ascii_lowercase().as_str() {
        "otp" => Some(SingularityKind::Otp),
        "odp" => Some(SingularityKind::Odp),
        "smooth" => Some(SingularityKind::Smooth),
        "other" => Some(SingularityKind::Other),
        _ => None,
    }
}

fn kind_word(kind: SingularityKind) -> &'static str {
    match kind {
        SingularityKind::Otp => "OTP",
        SingularityKind::Odp => "ODP",
        SingularityKind::Smooth => "smooth",
        SingularityKind::Other | SingularityKind::Indeterminate => "other",
    }
}

pub fn parse_primes(text: &str) -> Result<Vec<u64>, String> {
    text.split(',').map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad prime '{}'", p.trim()))).collect()
}

struct LineCursor<'a> {
    source: &'a str,
    line: usize,
}

impl LineCursor<'_> {
    fn parse_error(&self, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse { file: self.source.to_string(), line: self.line, column, message: message.into() }
    }
}

/// Parses the text of a variety file; `source` names it in error messages.
pub fn parse_variety_text(text: &str, source: &str) -> Result<VarietyFile, CliError> {
    let mut ambient: Option<Ambient> = None;
    let mut generators = Vec::new();
    let mut eq_lines = Vec::new();
    let mut raw_points: Vec<(usize, usize, String, Option<SingularityKind>)> = Vec::new();
    let mut expect_otp_count = None;
    let mut seed = None;
    let mut primes = None;

    for (i, raw) in text.lines().enumerate() {
        let cur = LineCursor { source, line: i + 1 };
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        // column (1-based) of the first character after the keyword
        let rest_col = indent + keyword.len() + 1 + (rest.len() - rest.trim_start().len()) + 1;
        let rest = rest.trim();
        match keyword {
            "ambient" => {
                if ambient.is_some() {
                    return Err(cur.parse_error(indent + 1, "second ambient header"));
                }
                let a = Ambient::parse_header(trimmed).map_err(|e| cur.parse_error(rest_col, e.to_string()))?;
                ambient = Some(a);
            }
            "eq" => {
                let a = ambient.as_ref().ok_or_else(|| cur.parse_error(indent + 1, "eq before the ambient header"))?;
                let f = parse_polynomial(rest, a.ctx()).map_err(|e| match e {
                    PolyError::Parse { column, message } => cur.parse_error(rest_col + column - 1, message),
                    other => cur.parse_error(rest_col, other.to_string()),
                })?;
                generators.push(f);
                eq_lines.push(cur.line);
            }
            "point" => {
                let (coords, tail) = match rest.find(']') {
                    Some(end) => (&rest[..=end], rest[end + 1..].trim()),
                    None => return Err(cur.parse_error(rest_col, "point must look like [a:b:...]")),
                };
                let expect = if tail.is_empty() {
                    None
                } else {
                    let words: Vec<&str> = tail.split_whitespace().collect();
                    match words.as_slice() {
                        ["expect", kind] => Some(parse_kind(kind).ok_or_else(|| {
                            cur.parse_error(rest_col, format!("unknown kind '{kind}' (OTP, ODP, smooth, other)"))
                        })?),
                        _ => return Err(cur.parse_error(rest_col, format!("unexpected '{tail}' after the point"))),
                    }
                };
                raw_points.push((cur.line, rest_col, coords.to_string(), expect));
            }
            "expect" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                match words.as_slice() {
                    ["otp-count", n] => {
                        let n = n.parse().map_err(|_| cur.parse_error(rest_col, format!("bad count '{n}'")))?;
                        expect_otp_count = Some(n);
                    }
                    _ => return Err(cur.parse_error(rest_col, format!("unknown expectation '{rest}'"))),
                }
            }
            "seed" => {
                seed = Some(rest.parse().map_err(|_| cur.parse_error(rest_col, format!("bad seed '{rest}'")))?);
            }
            "primes" => {
                primes = Some(parse_primes(rest).map_err(|m| cur.parse_error(rest_col, m))?);
            }
            other => return Err(cur.parse_error(indent + 1, format!("unknown keyword '{other}'"))),
        }
    }

    let ambient = ambient.ok_or_else(|| CliError::Parse {
        file: source.to_string(),
        line: 1,
        column: 1,
        message: "expected an ambient header".into(),
    })?;
    let variety = Variety::new(ambient, generators).map_err(|e| match e {
        GeometryError::NotHomogeneous { index, .. } => {
            CliError::Homogeneity { file: source.to_string(), line: eq_lines[index], message: e.to_string() }
        }
        GeometryError::NoGenerators => CliError::Parse {
            file: source.to_string(),
            line: text.lines().count().max(1),
            column: 1,
            message: "no eq lines".into(),
        },
        other => CliError::InvalidInput(format!("{source}: {other}")),
    })?;

    let mut points = Vec::new();
    for (line, column, text, expect) in raw_points {
        let cur = LineCursor { source, line };
        let coords = parse_point(&text).map_err(|e| cur.parse_error(column, e.to_string()))?;
        if coords.len() != variety.ambient().nvars() {
            let message = format!("expected {} coordinates, got {}", variety.ambient().nvars(), coords.len());
            return Err(cur.parse_error(column, message));
        }
        if coords.iter().all(|c| *c == Rational::from_integer(0.into())) {
            return Err(cur.parse_error(column, "the zero vector is not a projective point"));
        }
        if !variety.contains(&coords) {
            return Err(CliError::InvalidInput(format!("{source}:{line}: point {text} does not lie on the variety")));
        }
        points.push(DeclaredPoint { coords, expect });
    }
    Ok(VarietyFile { variety, points, expect_otp_count, seed, primes })
}

impl VarietyFile {
    pub fn new(variety: Variety) -> Self {
        Self { variety, points: Vec::new(), expect_otp_count: None, seed: None, primes: None }
    }

    /// Points declared as ordinary triple points.
    pub fn declared_otps(&self) -> Vec<Vec<Rational>> {
        self.points.iter().filter(|p| p.expect == Some(SingularityKind::Otp)).map(|p| p.coords.clone()).collect()
    }

    /// The file text; parsing it gives back an equal file.
    pub fn render(&self, comment: &str) -> String {
        let mut out = String::new();
        for line in comment.lines() {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{}", self.variety.ambient().header());
        for g in self.variety.generators() {
            let _ = writeln!(out, "eq {g}");
        }
        for p in &self.points {
            let coords = render_coords(&RationalField, &p.coords);
            match p.expect {
                Some(kind) => writeln!(out, "point {coords} expect {}", kind_word(kind)),
                None => writeln!(out, "point {coords}"),
            }
            .expect("writing to a string");
        }
        if let Some(n) = self.expect_otp_count {
            let _ = writeln!(out, "expect otp-count {n}");
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed {s}");
        }
        if let Some(primes) = &self.primes {
            let list: Vec<String> = primes.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "primes {}", list.join(","));
        }
        out
    }
}
