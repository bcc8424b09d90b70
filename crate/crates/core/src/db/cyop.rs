//! The `.cyop` operator file format.
//!
//! ```text
//! cyop 1
//! id 1
//! order 4
//! terms 2
//! P0: 0 0 0 0 1
//! P1: -120 -1250 -4375 -6250 -3125
//! ```

use thiserror::Error;

use crate::exact::{fmt_rat, parse_rat, Poly};
use crate::operator::{OperatorError, ThetaOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyopError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// An operator with its optional identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyopDoc {
    pub id: Option<String>,
    pub operator: ThetaOperator,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> CyopError {
    CyopError::Syntax { line, col, msg: msg.into() }
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Splits into `(1-based line number, column of first token, content)`,
/// dropping blank and comment-only lines.
pub(crate) fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_usize(line: usize, s: Option<&str>, key: &str) -> Result<usize, CyopError> {
    s.and_then(|v| v.parse().ok())
        .ok_or_else(|| syntax(line, 1, format!("'{key}' needs a nonnegative integer")))
}

pub fn parse_cyop(text: &str) -> Result<CyopDoc, CyopError> {
    parse_lines(&significant_lines(text), text.lines().count() + 1)
}

pub(crate) fn parse_lines(lines: &[(usize, &str)], eof_line: usize) -> Result<CyopDoc, CyopError> {
    let mut it = lines.iter().peekable();
    match it.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["cyop", "1"] => {}
        Some((n, l)) if l.starts_with("cyop") => return Err(syntax(*n, 1, "unsupported cyop version")),
        Some((n, _)) => return Err(syntax(*n, 1, "expected 'cyop 1'")),
        None => return Err(syntax(eof_line, 1, "empty document")),
    }

    let (mut id, mut order, mut terms) = (None, None, None);
    let mut order_line = 0;
    while let Some((n, l)) = it.peek() {
        let mut words = l.split_whitespace();
        let key = words.next().unwrap_or("");
        let value = words.next();
        let dup = |n: usize| syntax(n, 1, format!("duplicate '{key}'"));
        match key {
            "id" => {
                if id.is_some() {
                    return Err(dup(*n));
                }
                id = Some(value.ok_or_else(|| syntax(*n, 1, "'id' needs a value"))?.to_string());
            }
            "order" => {
                if order.is_some() {
                    return Err(dup(*n));
                }
                order = Some(parse_usize(*n, value, "order")?);
                order_line = *n;
            }
            "terms" => {
                if terms.is_some() {
                    return Err(dup(*n));
                }
                terms = Some(parse_usize(*n, value, "terms")?);
            }
            _ => break,
        }
        if words.next().is_some() {
            return Err(syntax(*n, 1, format!("trailing input after '{key}'")));
        }
        it.next();
    }
    let next_line = it.peek().map_or(eof_line, |(n, _)| *n);
    let order = order.ok_or_else(|| syntax(next_line, 1, "missing 'order'"))?;
    let terms = terms.ok_or_else(|| syntax(next_line, 1, "missing 'terms'"))?;
    if terms == 0 {
        return Err(syntax(next_line, 1, "'terms' must be positive"));
    }

    let mut polys = Vec::with_capacity(terms);
    for i in 0..terms {
        let Some((n, l)) = it.next() else {
            return Err(syntax(eof_line, 1, format!("expected {terms} P-lines, found {i}")));
        };
        let label = format!("P{i}:");
        let Some(rest) = l.strip_prefix(&label) else {
            return Err(syntax(*n, 1, format!("expected '{label}'")));
        };
        let mut coeffs = Vec::with_capacity(order + 1);
        for word in rest.split_whitespace() {
            let col = word.as_ptr() as usize - l.as_ptr() as usize + 1;
            let c = parse_rat(word).ok_or_else(|| syntax(*n, col, format!("bad coefficient '{word}'")))?;
            coeffs.push(c);
        }
        if coeffs.len() != order + 1 {
            return Err(syntax(
                *n,
                1,
                format!("P{i} has {} coefficients, order {order} needs {}", coeffs.len(), order + 1),
            ));
        }
        polys.push(Poly::new(coeffs));
    }
    if let Some((n, _)) = it.next() {
        return Err(syntax(*n, 1, format!("unexpected line after {terms} P-lines")));
    }
    let operator = ThetaOperator::new(polys)?;
    if operator.order() != order {
        return Err(syntax(
            order_line,
            1,
            format!("declared order {order} but polynomials have degree {}", operator.order()),
        ));
    }
    Ok(CyopDoc { id, operator })
}

/// Canonical text: header, then one line per θ-polynomial.
pub fn serialize_cyop(doc: &CyopDoc) -> String {
    let d = &doc.operator;
    let mut out = String::from("cyop 1\n");
    if let Some(id) = &doc.id {
        out.push_str(&format!("id {id}\n"));
    }
    out.push_str(&format!("order {}\nterms {}\n", d.order(), d.k() + 1));
    for (i, p) in d.terms().iter().enumerate() {
        let cs: Vec<String> = (0..=d.order()).map(|m| fmt_rat(&p.coeff(m))).collect();
        out.push_str(&format!("P{i}: {}\n", cs.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUINTIC: &str = "cyop 1\nid 1\norder 4\nterms 2\nP0: 0 0 0 0 1\nP1: -120 -1250 -4375 -6250 -3125\n";

    #[test]
    fn parses_quintic() {
        let doc = parse_cyop(QUINTIC).unwrap();
        assert_eq!(doc.id.as_deref(), Some("1"));
        assert_eq!(doc.operator.k(), 1);
        assert_eq!(serialize_cyop(&doc), QUINTIC);
    }

    #[test]
    fn comments_blank_lines_and_rationals() {
        let text = "# header\ncyop 1   # version\n\norder 1\nterms 2\nP0: 0 1\nP1: -1/2 -1\n";
        let doc = parse_cyop(text).unwrap();
        assert_eq!(doc.id, None);
        assert_eq!(serialize_cyop(&doc), "cyop 1\norder 1\nterms 2\nP0: 0 1\nP1: -1/2 -1\n");
    }

    #[test]
    fn errors_carry_locations() {
        let bad_terms = "cyop 1\norder 4\nterms 3\nP0: 0 0 0 0 1\nP1: -120 -1250 -4375 -6250 -3125\n";
        assert!(matches!(parse_cyop(bad_terms), Err(CyopError::Syntax { line: 6, .. })));
        let bad_coeff = "cyop 1\norder 1\nterms 1\nP0: 0 x\n";
        assert!(matches!(parse_cyop(bad_coeff), Err(CyopError::Syntax { line: 4, col: 7, .. })));
        let short = "cyop 1\norder 2\nterms 1\nP0: 0 1\n";
        assert!(matches!(parse_cyop(short), Err(CyopError::Syntax { line: 4, .. })));
        let version = "cyop 2\n";
        assert!(matches!(parse_cyop(version), Err(CyopError::Syntax { line: 1, .. })));
        let zero = "cyop 1\norder 1\nterms 2\nP0: 0 1\nP1: 0 0\n";
        assert_eq!(parse_cyop(zero), Err(CyopError::Operator(OperatorError::ZeroBoundaryTerm)));
        let degree = "cyop 1\norder 2\nterms 1\nP0: 0 1 0\n";
        assert!(matches!(parse_cyop(degree), Err(CyopError::Syntax { line: 2, .. })));
    }
}
