use std::fmt::Write;

use crate::{LinAlgError, Rational, SparseMatrix};

/// Serialize as a header line `rows cols` followed by `row col num/den` lines.
pub fn to_text(m: &SparseMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for (r, c, v) in m.entries() {
        let _ = writeln!(s, "{} {} {}/{}", r, c, v.numer(), v.denom());
    }
    s
}

pub fn from_text(text: &str) -> Result<SparseMatrix, LinAlgError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| LinAlgError::Parse("missing header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| LinAlgError::Parse(format!("bad header `{header}`"))))
        .collect::<Result<_, _>>()?;
    if dims.len() != 2 {
        return Err(LinAlgError::Parse(format!("bad header `{header}`")));
    }
    let mut entries = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(LinAlgError::Parse(format!("bad entry `{line}`")));
        }
        let r: usize = toks[0].parse().map_err(|_| LinAlgError::Parse(format!("bad row in `{line}`")))?;
        let c: usize = toks[1].parse().map_err(|_| LinAlgError::Parse(format!("bad col in `{line}`")))?;
        let v = parse_rational(toks[2])?;
        entries.push((r, c, v));
    }
    SparseMatrix::from_triplets(dims[0], dims[1], entries)
}

/// Parse `a`, `-a`, or `a/b`.
pub fn parse_rational(tok: &str) -> Result<Rational, LinAlgError> {
    let v: Rational = tok.parse().map_err(|_| LinAlgError::Parse(format!("bad rational `{tok}`")))?;
    Ok(v)
}
