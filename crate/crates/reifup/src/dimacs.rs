//! DIMACS CNF reading and writing.
//!
//! The parser accepts the liberties real files take: comments anywhere,
//! clauses split across lines or sharing one, and a header clause count that
//! disagrees with the body (reported as a warning, not an error).

use crate::cnf::{Clause, CnfFormula, Literal};
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected 'p cnf <vars> <clauses>', got '{text}'")]
    MalformedHeader { line: usize, text: String },
    #[error("no 'p cnf' header found")]
    MissingHeader,
    #[error("line {line}: clause data before the 'p cnf' header")]
    DataBeforeHeader { line: usize },
    #[error("line {line}: invalid token '{token}'")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: unterminated clause at end of input")]
    UnterminatedClause { line: usize },
}

/// Non-fatal irregularities found while parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    ClauseCountMismatch { header: usize, actual: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::ClauseCountMismatch { header, actual } => {
                write!(f, "header declares {header} clauses but {actual} were read")
            }
        }
    }
}

/// A parsed formula together with any warnings.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub formula: CnfFormula,
    pub warnings: Vec<ParseWarning>,
}

/// Parses DIMACS CNF text.
///
/// The variable count of the result is the maximum of the header value and
/// the largest variable mentioned by a clause. A bare `0` forms an empty
/// clause.
pub fn parse_dimacs(text: &str) -> Result<Parsed, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::MalformedHeader {
                    line: line_no,
                    text: trimmed.to_string(),
                });
            }
            header = Some(parse_header(trimmed, line_no)?);
            continue;
        }
        if header.is_none() {
            return Err(ParseError::DataBeforeHeader { line: line_no });
        }
        for token in trimmed.split_whitespace() {
            let code: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if code == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current)));
            } else {
                if code.unsigned_abs() > u32::MAX as u64 {
                    return Err(ParseError::InvalidToken {
                        line: line_no,
                        token: token.to_string(),
                    });
                }
                current.push(Literal::new(code.unsigned_abs() as u32, code > 0));
            }
        }
    }

    let (num_vars, declared) = header.ok_or(ParseError::MissingHeader)?;
    if !current.is_empty() {
        return Err(ParseError::UnterminatedClause { line: last_line });
    }
    let mut warnings = Vec::new();
    if clauses.len() != declared {
        warnings.push(ParseWarning::ClauseCountMismatch {
            header: declared,
            actual: clauses.len(),
        });
    }
    Ok(Parsed {
        formula: CnfFormula::new(num_vars, clauses),
        warnings,
    })
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, usize), ParseError> {
    let malformed = || ParseError::MalformedHeader {
        line: line_no,
        text: line.to_string(),
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(malformed());
    }
    let num_vars: u32 = fields[2].parse().map_err(|_| malformed())?;
    let num_clauses: usize = fields[3].parse().map_err(|_| malformed())?;
    Ok((num_vars, num_clauses))
}

/// Serializes a formula to DIMACS text: comment lines first (each prefixed
/// `c `), then the header, then the clauses in stored order with stored
/// literal order, each terminated by `0`. Equal formulas produce identical
/// bytes. Comments must be 7-bit printable.
pub fn serialize_dimacs<I>(f: &CnfFormula, comments: I) -> String
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut out = String::new();
    for comment in comments {
        let comment = comment.as_ref();
        debug_assert!(
            comment.bytes().all(|b| (b' '..=b'~').contains(&b)),
            "comment lines must be 7-bit printable"
        );
        out.push_str("c ");
        out.push_str(comment);
        out.push('\n');
    }
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses());
    for clause in f.clauses() {
        for lit in clause.iter() {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// `serialize_dimacs` without comments.
pub fn to_dimacs(f: &CnfFormula) -> String {
    serialize_dimacs(f, std::iter::empty::<&str>())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGMA2: &str = "p cnf 3 4\n-1 0\n1 2 0\n-2 3 0\n-2 -3 0\n";

    #[test]
    fn parses_the_four_clause_example() {
        let parsed = parse_dimacs(SIGMA2).unwrap();
        let f = parsed.formula;
        assert!(parsed.warnings.is_empty());
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.num_clauses(), 4);
        assert_eq!(f.clauses()[0], Clause::from_dimacs(&[-1]));
        assert_eq!(f.clauses()[1], Clause::from_dimacs(&[1, 2]));
        assert_eq!(f.clauses()[2], Clause::from_dimacs(&[-2, 3]));
        assert_eq!(f.clauses()[3], Clause::from_dimacs(&[-2, -3]));
        assert!(!f.has_empty_clause());
    }

    #[test]
    fn parses_the_empty_formula() {
        let parsed = parse_dimacs("p cnf 0 0\n").unwrap();
        assert_eq!(parsed.formula.num_vars(), 0);
        assert_eq!(parsed.formula.num_clauses(), 0);
    }

    #[test]
    fn parses_a_bare_zero_as_the_empty_clause() {
        let parsed = parse_dimacs("p cnf 2 1\n0\n").unwrap();
        assert_eq!(parsed.formula.num_vars(), 2);
        assert_eq!(parsed.formula.num_clauses(), 1);
        assert!(parsed.formula.has_empty_clause());
    }

    #[test]
    fn round_trips_the_example_byte_exactly() {
        let parsed = parse_dimacs(SIGMA2).unwrap();
        assert_eq!(to_dimacs(&parsed.formula), SIGMA2);
    }

    #[test]
    fn serializes_the_empty_formula() {
        assert_eq!(to_dimacs(&CnfFormula::empty(0)), "p cnf 0 0\n");
    }

    #[test]
    fn comments_precede_the_header() {
        let f = CnfFormula::from_dimacs(1, &[&[1]]);
        let text = serialize_dimacs(&f, ["hello"]);
        assert_eq!(text, "c hello\np cnf 1 1\n1 0\n");
    }

    #[test]
    fn clause_count_mismatch_is_a_warning() {
        let parsed = parse_dimacs("p cnf 2 5\n1 2 0\n").unwrap();
        assert_eq!(
            parsed.warnings,
            vec![ParseWarning::ClauseCountMismatch {
                header: 5,
                actual: 1
            }]
        );
    }

    #[test]
    fn num_vars_is_max_of_header_and_body() {
        let parsed = parse_dimacs("p cnf 2 1\n4 -1 0\n").unwrap();
        assert_eq!(parsed.formula.num_vars(), 4);
    }

    #[test]
    fn clauses_may_span_and_share_lines() {
        let parsed = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 0\n").unwrap();
        assert_eq!(parsed.formula.clauses()[0], Clause::from_dimacs(&[1, 2, 3]));
        assert_eq!(parsed.formula.clauses()[1], Clause::from_dimacs(&[-1]));
    }

    #[test]
    fn error_on_malformed_header() {
        assert_eq!(
            parse_dimacs("p cnf x 4\n").unwrap_err(),
            ParseError::MalformedHeader {
                line: 1,
                text: "p cnf x 4".to_string()
            }
        );
        assert!(matches!(
            parse_dimacs("p cnf -3 4\n"),
            Err(ParseError::MalformedHeader { line: 1, .. })
        ));
    }

    #[test]
    fn error_on_non_integer_token() {
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 two 0\n"),
            Err(ParseError::InvalidToken { line: 2, .. })
        ));
    }

    #[test]
    fn error_on_data_before_header() {
        assert!(matches!(
            parse_dimacs("0\np cnf 1 1\n"),
            Err(ParseError::DataBeforeHeader { line: 1 })
        ));
    }

    #[test]
    fn error_on_unterminated_clause() {
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 2\n"),
            Err(ParseError::UnterminatedClause { line: 2 })
        ));
    }

    #[test]
    fn error_on_missing_header() {
        assert_eq!(
            parse_dimacs("c only a comment\n").unwrap_err(),
            ParseError::MissingHeader
        );
    }
}
