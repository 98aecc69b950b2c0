//! Line-oriented transmission trace:
//!
//! ```text
//! s=<symbol> terms=(k,j);(k,j);... payload=<hex>
//! ```
//!
//! `k` (user) and `j` (row) are 1-based.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Term, Transmission, TransmissionLog};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace line {line}: {msg}")]
pub struct TraceError {
    pub line: usize,
    pub msg: String,
}

impl TransmissionLog {
    pub fn to_trace(&self) -> String {
        let mut out = String::new();
        for t in &self.transmissions {
            let terms: Vec<String> = t
                .terms
                .iter()
                .map(|x| format!("({},{})", x.user + 1, x.row + 1))
                .collect();
            writeln!(
                out,
                "s={} terms={} payload={}",
                t.symbol,
                terms.join(";"),
                hex::encode(&t.payload)
            )
            .expect("writing to a String");
        }
        out
    }

    /// Parses a trace back; blank lines are ignored. All payloads must have
    /// the same length.
    pub fn from_trace(text: &str) -> Result<Self, TraceError> {
        let mut transmissions: Vec<Transmission> = Vec::new();
        let mut packet_size = None;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| TraceError { line: line_no, msg };
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [s, terms, payload] = fields[..] else {
                return Err(err(format!("expected 3 fields, found {}", fields.len())));
            };
            let field = |f: &'static str, v: &str| -> Result<String, TraceError> {
                v.strip_prefix(f)
                    .map(str::to_owned)
                    .ok_or_else(|| TraceError {
                        line: line_no,
                        msg: format!("expected `{f}...`, found `{v}`"),
                    })
            };
            let symbol: u32 = field("s=", s)?
                .parse()
                .ok()
                .filter(|&s| s > 0)
                .ok_or_else(|| err("symbol must be a positive integer".into()))?;
            if transmissions.last().is_some_and(|t| t.symbol >= symbol) {
                return Err(err("symbols must be strictly increasing".into()));
            }
            let terms = field("terms=", terms)?
                .split(';')
                .map(|tok| parse_term(tok).ok_or_else(|| err(format!("bad term `{tok}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let payload = hex::decode(field("payload=", payload)?)
                .map_err(|e| err(format!("bad payload: {e}")))?;
            match packet_size {
                None => packet_size = Some(payload.len()),
                Some(n) if n != payload.len() => {
                    return Err(err(format!(
                        "payload has {} bytes, earlier ones {n}",
                        payload.len()
                    )))
                }
                _ => {}
            }
            transmissions.push(Transmission {
                symbol,
                terms,
                payload,
            });
        }
        Ok(TransmissionLog {
            packet_size: packet_size.unwrap_or(0),
            transmissions,
        })
    }
}

fn parse_term(tok: &str) -> Option<Term> {
    let (k, j) = tok.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
    let (k, j): (usize, usize) = (k.trim().parse().ok()?, j.trim().parse().ok()?);
    (k > 0 && j > 0).then(|| Term {
        user: k - 1,
        row: j - 1,
    })
}
