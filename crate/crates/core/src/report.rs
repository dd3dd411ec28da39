//! Labelled integer tables with text, CSV and JSON renderings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rows may be shorter than the header (triangular tables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountReport {
    pub title: String,
    /// Header of the label column.
    pub row_header: String,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub cells: Vec<Vec<u64>>,
    pub note: String,
}

fn bare(label: &str) -> Result<()> {
    if label.contains([',', '\n', '\r', '"']) {
        return Err(Error::InvalidArgument(format!(
            "label {label:?} cannot appear in a CSV cell"
        )));
    }
    Ok(())
}

impl CountReport {
    pub fn new(
        title: impl Into<String>,
        row_header: impl Into<String>,
        column_labels: Vec<String>,
    ) -> Self {
        Self {
            title: title.into(),
            row_header: row_header.into(),
            row_labels: Vec::new(),
            column_labels,
            cells: Vec::new(),
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn push_row(&mut self, label: impl Into<String>, cells: Vec<u64>) {
        self.row_labels.push(label.into());
        self.cells.push(cells);
    }

    pub fn validate(&self) -> Result<()> {
        if self.row_labels.len() != self.cells.len() {
            return Err(Error::InvalidArgument(format!(
                "{} row labels for {} rows",
                self.row_labels.len(),
                self.cells.len()
            )));
        }
        if let Some(i) = self.cells.iter().position(|r| r.len() > self.column_labels.len()) {
            return Err(Error::InvalidArgument(format!(
                "row {i} has more cells than columns"
            )));
        }
        std::iter::once(&self.row_header)
            .chain(&self.row_labels)
            .chain(&self.column_labels)
            .try_for_each(|l| bare(l))
    }

    pub fn to_csv(&self) -> Result<String> {
        self.validate()?;
        let mut out = String::new();
        let header: Vec<&str> = std::iter::once(self.row_header.as_str())
            .chain(self.column_labels.iter().map(String::as_str))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (label, row) in self.row_labels.iter().zip(&self.cells) {
            out.push_str(label);
            for c in row {
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses CSV written by [`CountReport::to_csv`]; title and note are empty.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
        let mut fields = header.split(',').map(str::to_string);
        let row_header = fields.next().unwrap_or_default();
        let mut report = Self::new("", row_header, fields.collect());
        for (i, line) in lines.enumerate() {
            let mut fields = line.split(',');
            let label = fields.next().unwrap_or_default().to_string();
            let cells = fields
                .map(|f| {
                    f.parse::<u64>().map_err(|e| {
                        Error::InvalidArgument(format!("line {}: {f:?}: {e}", i + 2))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            report.push_row(label, cells);
        }
        report.validate()?;
        Ok(report)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(text)?;
        r.validate()?;
        Ok(r)
    }

    /// Right-aligned columns under a title line, note last.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = vec![std::iter::once(self.row_header.clone())
            .chain(self.column_labels.iter().cloned())
            .collect()];
        for (label, row) in self.row_labels.iter().zip(&self.cells) {
            grid.push(
                std::iter::once(label.clone())
                    .chain(row.iter().map(u64::to_string))
                    .collect(),
            );
        }
        let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
        let width: Vec<usize> = (0..cols)
            .map(|c| grid.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        for row in &grid {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:>w$}", w = width[c]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        if !self.note.is_empty() {
            out.push_str(&self.note);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> CountReport {
        let mut r = CountReport::new("counts", "k", vec!["0".into(), "1".into(), "2".into()])
            .with_note("first-rule counts");
        r.push_row("2", vec![2, 2]);
        r.push_row("3", vec![4, 5, 5]);
        r
    }

    #[test]
    fn csv_layout() {
        assert_eq!(triangle().to_csv().unwrap(), "k,0,1,2\n2,2,2\n3,4,5,5\n");
    }

    #[test]
    fn csv_header_without_rows() {
        let r = CountReport::new("", "k", vec!["a".into()]);
        assert_eq!(r.to_csv().unwrap(), "k,a\n");
    }

    #[test]
    fn text_alignment() {
        let t = triangle().to_text();
        assert_eq!(t, "counts\nk  0  1  2\n2  2  2\n3  4  5  5\nfirst-rule counts\n");
    }

    #[test]
    fn rejects_bad_labels_and_shapes() {
        let mut r = triangle();
        r.row_labels[0] = "a,b".into();
        assert!(r.to_csv().is_err());
        let mut r = triangle();
        r.cells[0] = vec![1, 2, 3, 4];
        assert!(r.validate().is_err());
        assert!(CountReport::from_csv("k,a\nx,notanumber\n").is_err());
        assert!(CountReport::from_json(r#"{"title":""}"#).is_err());
    }

    proptest! {
        #[test]
        fn round_trips(rows in proptest::collection::vec(proptest::collection::vec(any::<u64>(), 0..5), 0..6)) {
            let mut r = CountReport::new("t", "row", (0..5).map(|i| format!("c{i}")).collect());
            for (i, row) in rows.into_iter().enumerate() {
                r.push_row(format!("r{i}"), row);
            }
            prop_assert_eq!(CountReport::from_json(&r.to_json().unwrap()).unwrap(), r.clone());
            let back = CountReport::from_csv(&r.to_csv().unwrap()).unwrap();
            prop_assert_eq!(back.cells, r.cells);
            prop_assert_eq!(back.row_labels, r.row_labels);
            prop_assert_eq!(back.column_labels, r.column_labels);
        }
    }
}
