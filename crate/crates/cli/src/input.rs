//! Input parsing: a JSON document with `points` and `reference`, or plain
//! CSV rows of coordinates with the reference supplied on the command line.

use serde::Deserialize;

use crate::CliError;

/// The JSON input schema. Unknown fields (e.g. problem parameters) are
/// accepted and ignored.
#[derive(Debug, Deserialize)]
pub struct InputDocument {
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub reference: Option<Vec<f64>>,
}

/// Parses the file content, sniffing JSON (leading `{`) vs CSV.
pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("bad JSON input: {e}")))
    } else {
        parse_csv(text)
    }
}

fn parse_csv(text: &str) -> Result<InputDocument, CliError> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = parse_vector(trimmed)
            .map_err(|e| CliError::parse(format!("CSV line {}: {e}", lineno + 1)))?;
        points.push(row);
    }
    Ok(InputDocument { points, reference: None })
}

/// Parses a comma-separated list of floats such as the `--ref` value.
pub fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|f| !f.is_empty())
        .map(|f| f.parse::<f64>().map_err(|e| format!("bad number {f:?}: {e}")))
        .collect()
}

/// Combines the document and the `--ref` flag; the flag wins when both are
/// present.
pub fn resolve_reference(
    doc: &InputDocument,
    flag: Option<&str>,
) -> Result<Vec<f64>, CliError> {
    if let Some(text) = flag {
        return parse_vector(text).map_err(CliError::parse);
    }
    doc.reference
        .clone()
        .ok_or_else(|| CliError::parse("no reference point: add a \"reference\" field or pass --ref".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_json_and_csv() {
        let json = r#"{"points": [[1.0, 2.0]], "reference": [3.0, 4.0]}"#;
        let doc = parse_document(json).unwrap();
        assert_eq!(doc.points, vec![vec![1.0, 2.0]]);
        assert_eq!(doc.reference, Some(vec![3.0, 4.0]));

        let csv = "# comment\n1.0, 2.0\n\n5,6\n";
        let doc = parse_document(csv).unwrap();
        assert_eq!(doc.points, vec![vec![1.0, 2.0], vec![5.0, 6.0]]);
        assert!(doc.reference.is_none());
    }

    #[test]
    fn flag_overrides_document_reference() {
        let json = r#"{"points": [], "reference": [1.0]}"#;
        let doc = parse_document(json).unwrap();
        assert_eq!(resolve_reference(&doc, Some("9,9")).unwrap(), vec![9.0, 9.0]);
        assert_eq!(resolve_reference(&doc, None).unwrap(), vec![1.0]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_document("{ not json").is_err());
        assert!(parse_document("1.0, x, 3").is_err());
    }
}
