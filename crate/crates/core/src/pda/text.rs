//! The PDA text format.
//!
//! ```text
//! # comment lines start with '#'
//! K F Z S
//! <F rows of K tokens, each `*` or a positive integer>
//! ```
//!
//! The file must end with a newline. The parser only enforces syntax and
//! shape; whether `Z` and `S` agree with the grid is a verification question
//! (see [`verify_document`](super::verify_document)).

use std::fmt;

use thiserror::Error;

use super::{params_of, PdaArray, PdaCell};

/// The `K F Z S` header line as declared in the file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdaHeader {
    pub k: usize,
    pub f: usize,
    pub z: usize,
    pub s: usize,
}

impl fmt::Display for PdaHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.k, self.f, self.z, self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaDocument {
    pub header: PdaHeader,
    pub array: PdaArray,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    MissingTrailingNewline,
    Header(String),
    BadToken(String),
    NonPositiveSymbol(String),
    RowLength { expected: usize, found: usize },
    MissingRows { expected: usize, found: usize },
    ExtraRow,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => f.write_str("no header line"),
            ParseErrorKind::MissingTrailingNewline => f.write_str("missing trailing newline"),
            ParseErrorKind::Header(msg) => write!(f, "bad header: {msg}"),
            ParseErrorKind::BadToken(t) => {
                write!(f, "token {t:?} is neither `*` nor a decimal integer")
            }
            ParseErrorKind::NonPositiveSymbol(t) => {
                write!(f, "symbol {t} is not a positive integer")
            }
            ParseErrorKind::RowLength { expected, found } => {
                write!(f, "row has {found} tokens, expected K = {expected}")
            }
            ParseErrorKind::MissingRows { expected, found } => {
                write!(f, "found {found} rows, expected F = {expected}")
            }
            ParseErrorKind::ExtraRow => f.write_str("more rows than F"),
        }
    }
}

/// A parse failure with its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Splits a line into tokens with their 1-based character columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = line[..offset + start].chars().count() + 1;
        let tok = &tail[..len];
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

fn parse_cell(tok: &str, line: usize, column: usize) -> Result<PdaCell, ParseError> {
    if tok == "*" {
        return Ok(PdaCell::Star);
    }
    let err = |kind| ParseError { line, column, kind };
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(ParseErrorKind::BadToken(tok.to_string())));
    }
    if tok.starts_with('-') || digits.bytes().all(|b| b == b'0') {
        return Err(err(ParseErrorKind::NonPositiveSymbol(tok.to_string())));
    }
    if tok.starts_with('+') {
        return Err(err(ParseErrorKind::BadToken(tok.to_string())));
    }
    digits
        .parse::<u32>()
        .ok()
        .and_then(PdaCell::symbol)
        .ok_or_else(|| err(ParseErrorKind::BadToken(tok.to_string())))
}

fn parse_header(line_no: usize, line: &str) -> Result<PdaHeader, ParseError> {
    let toks: Vec<(usize, &str)> = tokens(line).collect();
    if toks.len() != 4 {
        return Err(ParseError {
            line: line_no,
            column: 1,
            kind: ParseErrorKind::Header(format!("expected `K F Z S`, got {} fields", toks.len())),
        });
    }
    let mut vals = [0usize; 4];
    for (slot, &(col, tok)) in vals.iter_mut().zip(&toks) {
        *slot = tok.parse().map_err(|_| ParseError {
            line: line_no,
            column: col,
            kind: ParseErrorKind::Header(format!("{tok:?} is not a non-negative integer")),
        })?;
    }
    let [k, f, z, s] = vals;
    if k == 0 || f == 0 {
        return Err(ParseError {
            line: line_no,
            column: 1,
            kind: ParseErrorKind::Header("K and F must be positive".into()),
        });
    }
    Ok(PdaHeader { k, f, z, s })
}

/// Parses the text format.
pub fn parse(text: &str) -> Result<PdaDocument, ParseError> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_line, header_text) = content.next().ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Empty,
    })?;
    let header = parse_header(header_line, header_text)?;

    let mut cells = Vec::with_capacity(header.k * header.f);
    let mut n_rows = 0;
    let mut last_line = header_line;
    for (line_no, line) in content {
        if n_rows == header.f {
            return Err(ParseError {
                line: line_no,
                column: 1,
                kind: ParseErrorKind::ExtraRow,
            });
        }
        let toks: Vec<(usize, &str)> = tokens(line).collect();
        if toks.len() != header.k {
            let column = toks.get(header.k).map_or(line.chars().count() + 1, |t| t.0);
            return Err(ParseError {
                line: line_no,
                column,
                kind: ParseErrorKind::RowLength {
                    expected: header.k,
                    found: toks.len(),
                },
            });
        }
        for (col, tok) in toks {
            cells.push(parse_cell(tok, line_no, col)?);
        }
        n_rows += 1;
        last_line = line_no;
    }
    if n_rows != header.f {
        return Err(ParseError {
            line: last_line + 1,
            column: 1,
            kind: ParseErrorKind::MissingRows {
                expected: header.f,
                found: n_rows,
            },
        });
    }
    if !text.ends_with('\n') {
        return Err(ParseError {
            line: text.lines().count(),
            column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
            kind: ParseErrorKind::MissingTrailingNewline,
        });
    }
    let array = PdaArray::new(header.f, header.k, cells).expect("shape checked while parsing");
    Ok(PdaDocument { header, array })
}

/// Writes the text format. The header's `Z` is the first column's star count
/// and `S` the number of distinct symbols; both equal the PDA parameters
/// when the array is valid.
pub fn emit(arr: &PdaArray) -> String {
    let z = params_of(arr)
        .map(|p| p.z.to_string())
        .unwrap_or_else(|_| arr.column_star_counts()[0].to_string());
    let mut out = format!(
        "{} {} {} {}\n",
        arr.cols(),
        arr.rows(),
        z,
        arr.distinct_symbols()
    );
    out.push_str(&arr.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_1: &str = "4 6 3 4\n* * 1 2\n* 1 * 3\n* 2 3 *\n1 * * 4\n2 * 4 *\n3 4 * *\n";

    #[test]
    fn parses_example_one() {
        let doc = parse(EXAMPLE_1).unwrap();
        assert_eq!(
            doc.header,
            PdaHeader {
                k: 4,
                f: 6,
                z: 3,
                s: 4
            }
        );
        assert_eq!(doc.array.get(3, 0).as_symbol(), Some(1));
        assert_eq!(emit(&doc.array), EXAMPLE_1);
    }

    #[test]
    fn single_symbol_array() {
        let doc = parse("1 1 0 1\n1\n").unwrap();
        assert_eq!((doc.array.rows(), doc.array.cols()), (1, 1));
        assert_eq!(doc.array.get(0, 0).as_symbol(), Some(1));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a comment\n2 2 1 1\n\n* 1\n# between rows\n1 *\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.array, PdaArray::from_grid_str("* 1\n1 *").unwrap());
    }

    #[test]
    fn short_row_reports_its_line() {
        let err = parse("4 2 1 1\n* * 1 *\n* 1 *\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(
            err.kind,
            ParseErrorKind::RowLength {
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn bad_tokens_report_line_and_column() {
        let err = parse("2 2 1 1\n* 1\n1 x\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        assert!(matches!(err.kind, ParseErrorKind::BadToken(_)));

        let err = parse("2 2 1 1\n* 0\n1 *\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(matches!(err.kind, ParseErrorKind::NonPositiveSymbol(_)));

        let err = parse("2 2 1 1\n*  -4\n1 *\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
        assert!(matches!(err.kind, ParseErrorKind::NonPositiveSymbol(_)));

        let err = parse("2 2 1 1\n* 1.5\n1 *\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::BadToken(_)));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse("").unwrap_err().kind, ParseErrorKind::Empty);
        assert_eq!(parse("# only\n").unwrap_err().kind, ParseErrorKind::Empty);
        assert!(matches!(
            parse("2 2 1\n").unwrap_err().kind,
            ParseErrorKind::Header(_)
        ));
        assert!(matches!(
            parse("0 2 1 1\n").unwrap_err().kind,
            ParseErrorKind::Header(_)
        ));
        assert!(matches!(
            parse("2 2 1 1\n* 1\n").unwrap_err().kind,
            ParseErrorKind::MissingRows {
                expected: 2,
                found: 1
            }
        ));
        assert_eq!(
            parse("2 1 1 1\n* 1\n1 *\n").unwrap_err().kind,
            ParseErrorKind::ExtraRow
        );
        assert_eq!(
            parse("2 2 1 1\n* 1\n1 *").unwrap_err().kind,
            ParseErrorKind::MissingTrailingNewline
        );
    }

    #[test]
    fn header_values_are_not_checked_against_the_grid() {
        let doc = parse("2 2 0 7\n* 1\n1 *\n").unwrap();
        assert_eq!(doc.header.s, 7);
    }
}
