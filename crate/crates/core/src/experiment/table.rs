use std::fmt::Write as _;

use crate::Rational;

/// CSV text with a leading `# config-sha256=...` comment line and a header row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self, config_hash: &str) -> String {
        let mut out = String::new();
        writeln!(out, "# config-sha256={config_hash}").unwrap();
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for r in &self.rows {
            writeln!(out, "{}", r.join(",")).unwrap();
        }
        out
    }
}

/// Exact ratio as `p/q`, always with a denominator.
pub fn fmt_ratio(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Shortest round-trip float text; `.` decimal, no locale.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let mut t = Table::new(&["n", "ratio"]);
        t.push(vec!["1".into(), fmt_ratio(Rational::new(4, 2))]);
        assert_eq!(t.render("ab"), "# config-sha256=ab\nn,ratio\n1,2/1\n");
        assert_eq!(fmt_f64(0.5), "0.5");
    }
}
