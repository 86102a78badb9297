//! Plain-text matrices: a `dim n` line followed by `n` rows of `n`
//! whitespace-separated decimals. `#` starts a comment.

use gleason_core::numerics::SymMatrix;

use crate::CliError;

/// Square matrix as read, before any symmetry check.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixText {
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixText {
    pub fn to_sym(&self) -> Result<SymMatrix, CliError> {
        Ok(SymMatrix::from_rows(&self.rows)?)
    }
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Dot-decimal literal, scientific notation allowed, finite only.
pub fn parse_decimal(token: &str, line: usize) -> Result<f64, CliError> {
    let bad = || CliError::Parse(format!("line {line}: `{token}` is not a decimal number"));
    let plausible = token
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    if !plausible {
        return Err(bad());
    }
    let v: f64 = token.parse().map_err(|_| bad())?;
    v.is_finite().then_some(v).ok_or_else(bad)
}

/// True when the first content line starts with `dim`.
pub fn looks_like_matrix(text: &str) -> bool {
    content_lines(text).next().is_some_and(|(_, l)| l.split_whitespace().next() == Some("dim"))
}

pub fn parse_matrix(text: &str) -> Result<MatrixText, CliError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| CliError::Parse("empty matrix file".into()))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("dim") {
        return Err(CliError::Parse(format!("line {ln}: expected `dim <n>`")));
    }
    let dim: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Parse(format!("line {ln}: dimension must be a positive integer")))?;
    if tokens.next().is_some() {
        return Err(CliError::Parse(format!("line {ln}: trailing tokens after dimension")));
    }
    let mut rows = Vec::with_capacity(dim);
    for (ln, line) in lines {
        if rows.len() == dim {
            return Err(CliError::Parse(format!("line {ln}: more than {dim} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|t| parse_decimal(t, ln))
            .collect::<Result<Vec<f64>, _>>()?;
        if row.len() != dim {
            return Err(CliError::Parse(format!(
                "line {ln}: expected {dim} entries, found {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(CliError::Parse(format!("expected {dim} rows, found {}", rows.len())));
    }
    Ok(MatrixText { dim, rows })
}

/// Writes a matrix with 17 significant digits per entry.
pub fn write_matrix(m: &SymMatrix) -> String {
    let mut out = format!("dim {}\n", m.dim());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Probe table: each line is `x1 … xn value`.
pub fn parse_probe_table(text: &str) -> Result<(Vec<Vec<f64>>, Vec<f64>), CliError> {
    let mut probes = Vec::new();
    let mut values = Vec::new();
    let mut width = None;
    for (ln, line) in content_lines(text) {
        let mut nums = line
            .split_whitespace()
            .map(|t| parse_decimal(t, ln))
            .collect::<Result<Vec<f64>, _>>()?;
        if nums.len() < 2 {
            return Err(CliError::Parse(format!("line {ln}: need a probe vector and a value")));
        }
        if *width.get_or_insert(nums.len()) != nums.len() {
            return Err(CliError::Parse(format!("line {ln}: inconsistent probe dimension")));
        }
        values.push(nums.pop().unwrap());
        probes.push(nums);
    }
    if probes.is_empty() {
        return Err(CliError::Parse("empty probe table".into()));
    }
    Ok((probes, values))
}
