//! Output formatting: 17-significant-digit floats for bit-exact round
//! trips, sparse triples, and dense heatmap CSV.

use hvhess::SparseSymMatrix64;

/// 17 significant digits round-trip any f64 exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Full symmetric closure as sorted `row,col,value` lines.
pub fn sparse_triples(matrix: &SparseSymMatrix64) -> String {
    let mut cells: Vec<(usize, usize, f64)> = matrix.entries_full().collect();
    cells.sort_by_key(|&(r, c, _)| (r, c));
    let mut out = String::new();
    for (r, c, v) in cells {
        out.push_str(&format!("{r},{c},{}\n", fmt_float(v)));
    }
    out.push_str(&format!("# nnz {}\n", matrix.nnz()));
    out
}

/// Parses the output of [`sparse_triples`] back into a matrix.
#[cfg(test)]
pub fn parse_sparse_triples(text: &str, size: usize) -> Result<SparseSymMatrix64, String> {
    let mut matrix = SparseSymMatrix64::new(size);
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 3 {
            return Err(format!("expected row,col,value: {trimmed:?}"));
        }
        let r: usize = fields[0].trim().parse().map_err(|e| format!("{e}"))?;
        let c: usize = fields[1].trim().parse().map_err(|e| format!("{e}"))?;
        let v: f64 = fields[2].trim().parse().map_err(|e| format!("{e}"))?;
        matrix.set(r, c, v);
    }
    Ok(matrix)
}

/// Dense comma-separated rows, one line per matrix row.
pub fn dense_csv(matrix: &SparseSymMatrix64) -> String {
    let size = matrix.size();
    let dense = matrix.to_dense();
    let mut out = String::new();
    for r in 0..size {
        let row: Vec<String> = (0..size).map(|c| fmt_float(dense[r * size + c])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
