//! Line-oriented instance files.
//!
//! The grammar (one statement per line, `#` starts a comment, blank lines
//! are skipped, anything else is rejected):
//!
//! ```text
//! group family:cyclic:3        # or: group table  (rows follow)
//! points 2
//! domain g=1: 0                # X_g as a point list (may be empty)
//! map g=1: 0->1                # sigma_g pairs, sources in X_{g^-1}
//! ```
//!
//! The `group` and `points` statements must appear once each, before any
//! `domain` or `map` line. For `group table`, the rows follow immediately,
//! one per line; the first row fixes the order. Omitted domains default to
//! empty, except the identity, which defaults to the full point set with
//! the identity map. Parse and semantic errors carry line and column.

use thiserror::Error;

use crate::action::{PartialAction, Violation};
use crate::group::{FiniteGroup, GroupError};

/// A parse or semantic error, located at `line:col` (both 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Everything that can go wrong when loading an instance.
#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("instance violates the partial-action axioms: {}", render_violations(.0))]
    Invalid(Vec<Violation>),
}

fn render_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// Parses and validates an instance file.
///
/// Axiom violations are errors here; use [`parse_instance_unvalidated`] to
/// obtain the raw instance together with its violation list.
pub fn parse_instance(text: &str) -> Result<(FiniteGroup, PartialAction), InstanceError> {
    let (group, pa) = parse_instance_unvalidated(text)?;
    let violations = pa.validate();
    if violations.is_empty() {
        Ok((group, pa))
    } else {
        Err(InstanceError::Invalid(violations))
    }
}

/// Parses an instance without running the axiom checks.
pub fn parse_instance_unvalidated(
    text: &str,
) -> Result<(FiniteGroup, PartialAction), InstanceError> {
    let mut group: Option<FiniteGroup> = None;
    let mut points: Option<usize> = None;
    let mut domains: Vec<Option<Vec<usize>>> = Vec::new();
    let mut maps: Vec<Option<Vec<(usize, usize)>>> = Vec::new();

    let lines: Vec<&str> = text.lines().collect();
    let mut idx = 0;
    while idx < lines.len() {
        let lineno = idx + 1;
        let line = lines[idx];
        idx += 1;
        let content = strip_comment(line);
        if content.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(content, lineno);
        let keyword = cur.word()?;
        match keyword.as_str() {
            "group" => {
                if group.is_some() {
                    return Err(cur.error("duplicate group statement").into());
                }
                let spec = cur.rest_trimmed();
                if spec.is_empty() {
                    return Err(cur.error("expected a group specification").into());
                }
                let g = if spec == "table" {
                    let (g, consumed) = parse_table_block(&lines, idx)?;
                    idx += consumed;
                    g
                } else {
                    FiniteGroup::parse_spec(spec)?
                };
                domains = vec![None; g.order()];
                maps = vec![None; g.order()];
                group = Some(g);
            }
            "points" => {
                if points.is_some() {
                    return Err(cur.error("duplicate points statement").into());
                }
                points = Some(cur.number()?);
                cur.expect_end()?;
            }
            "domain" | "map" => {
                let g = match &group {
                    Some(g) => g,
                    None => return Err(cur.error("group must be declared first").into()),
                };
                let n = match points {
                    Some(n) => n,
                    None => return Err(cur.error("points must be declared first").into()),
                };
                let elem = cur.element(g.order())?;
                if keyword == "domain" {
                    if domains[elem].is_some() {
                        return Err(cur
                            .error(format!("duplicate domain for element {elem}"))
                            .into());
                    }
                    let mut pts = Vec::new();
                    while !cur.at_end() {
                        let p = cur.point(n)?;
                        if pts.contains(&p) {
                            return Err(cur
                                .error(format!("duplicate point {p} in domain"))
                                .into());
                        }
                        pts.push(p);
                    }
                    domains[elem] = Some(pts);
                } else {
                    if maps[elem].is_some() {
                        return Err(cur
                            .error(format!("duplicate map for element {elem}"))
                            .into());
                    }
                    let mut pairs: Vec<(usize, usize)> = Vec::new();
                    while !cur.at_end() {
                        let (a, b) = cur.pair(n)?;
                        if pairs.iter().any(|&(x, _)| x == a) {
                            return Err(cur
                                .error(format!("duplicate map pair with source {a}"))
                                .into());
                        }
                        pairs.push((a, b));
                    }
                    maps[elem] = Some(pairs);
                }
            }
            other => {
                return Err(cur
                    .error(format!("unknown statement '{other}'"))
                    .into());
            }
        }
    }

    let group = group.ok_or(ParseError {
        line: lines.len().max(1),
        col: 1,
        message: "missing group statement".to_string(),
    })?;
    let points = points.ok_or(ParseError {
        line: lines.len().max(1),
        col: 1,
        message: "missing points statement".to_string(),
    })?;

    // Defaults: identity full and identical, everything else empty.
    let mut final_domains = Vec::with_capacity(group.order());
    let mut final_maps = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let dom = match domains[g].take() {
            Some(d) => d,
            None if g == FiniteGroup::IDENTITY => (0..points).collect(),
            None => Vec::new(),
        };
        let map = match maps[g].take() {
            Some(m) => m,
            None if g == FiniteGroup::IDENTITY => (0..points).map(|x| (x, x)).collect(),
            None => Vec::new(),
        };
        final_domains.push(dom);
        final_maps.push(map);
    }

    let pa = PartialAction::new(group.clone(), points, final_domains, final_maps)
        .map_err(|e| ParseError {
            line: lines.len().max(1),
            col: 1,
            message: e.to_string(),
        })?;
    Ok((group, pa))
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_table_block(
    lines: &[&str],
    start: usize,
) -> Result<(FiniteGroup, usize), InstanceError> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut consumed = 0;
    let mut expected: Option<usize> = None;
    let mut idx = start;
    while idx < lines.len() {
        let lineno = idx + 1;
        let content = strip_comment(lines[idx]);
        idx += 1;
        consumed += 1;
        if content.trim().is_empty() {
            if rows.is_empty() {
                continue;
            }
            return Err(ParseError {
                line: lineno,
                col: 1,
                message: "table rows must be contiguous".to_string(),
            }
            .into());
        }
        let mut cur = Cursor::new(content, lineno);
        let mut row = Vec::new();
        while !cur.at_end() {
            row.push(cur.number()?);
        }
        if let Some(n) = expected {
            if row.len() != n {
                return Err(ParseError {
                    line: lineno,
                    col: 1,
                    message: format!("table row has {} entries, expected {n}", row.len()),
                }
                .into());
            }
        } else {
            expected = Some(row.len());
        }
        rows.push(row);
        if rows.len() == expected.unwrap() {
            let g = FiniteGroup::from_table(&rows)?;
            return Ok((g, consumed));
        }
    }
    Err(ParseError {
        line: lines.len().max(1),
        col: 1,
        message: "unterminated group table".to_string(),
    }
    .into())
}

/// A token cursor over one line, tracking columns for error messages.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len()
            && self.text.as_bytes()[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.pos + 1, message: message.into() }
    }

    fn token(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        if self.pos >= self.text.len() {
            return Err(self.error("unexpected end of line"));
        }
        let start = self.pos;
        while self.pos < self.text.len()
            && !self.text.as_bytes()[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        Ok(&self.text[start..self.pos])
    }

    fn word(&mut self) -> Result<String, ParseError> {
        Ok(self.token()?.to_string())
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let tok = self.token()?;
        tok.parse().map_err(|_| ParseError {
            line: self.line,
            col: start + 1,
            message: format!("expected a number, found '{tok}'"),
        })
    }

    /// Parses `g=<idx>:` and range-checks the element index.
    fn element(&mut self, order: usize) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let tok = self.token()?;
        let body = tok
            .strip_prefix("g=")
            .and_then(|rest| rest.strip_suffix(':'))
            .ok_or_else(|| ParseError {
                line: self.line,
                col: start + 1,
                message: format!("expected 'g=<element>:', found '{tok}'"),
            })?;
        let g: usize = body.parse().map_err(|_| ParseError {
            line: self.line,
            col: start + 1,
            message: format!("bad element index '{body}'"),
        })?;
        if g >= order {
            return Err(ParseError {
                line: self.line,
                col: start + 1,
                message: format!("element index {g} out of range (order {order})"),
            });
        }
        Ok(g)
    }

    fn point(&mut self, points: usize) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let p = self.number()?;
        if p >= points {
            return Err(ParseError {
                line: self.line,
                col: start + 1,
                message: format!("point index {p} out of range ({points} points)"),
            });
        }
        Ok(p)
    }

    /// Parses `a->b` with both sides range-checked.
    fn pair(&mut self, points: usize) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let tok = self.token()?;
        let (a, b) = tok.split_once("->").ok_or_else(|| ParseError {
            line: self.line,
            col: start + 1,
            message: format!("expected 'a->b', found '{tok}'"),
        })?;
        let parse = |s: &str| -> Result<usize, ParseError> {
            let v: usize = s.parse().map_err(|_| ParseError {
                line: self.line,
                col: start + 1,
                message: format!("bad point index '{s}'"),
            })?;
            if v >= points {
                return Err(ParseError {
                    line: self.line,
                    col: start + 1,
                    message: format!("point index {v} out of range ({points} points)"),
                });
            }
            Ok(v)
        };
        Ok((parse(a)?, parse(b)?))
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if !self.at_end() {
            return Err(self.error("trailing garbage"));
        }
        Ok(())
    }

    fn rest_trimmed(&mut self) -> &'a str {
        self.skip_ws();
        self.text[self.pos..].trim_end()
    }
}
