//! Line-oriented `key: value` documents used for reports and certificates.

use std::fmt;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Parses `key: value` lines; blank lines are skipped and lines without a
    /// colon are rejected with their line number.
    pub fn parse(text: &str) -> Result<Self, usize> {
        let mut r = Report::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once(": ").or_else(|| line.strip_suffix(':').map(|k| (k, ""))).ok_or(i + 1)?;
            r.push(k.trim(), v.trim());
        }
        Ok(r)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new();
        r.push("method", "oracle");
        r.push("branch_count", 12);
        let text = r.to_string();
        assert_eq!(text, "method: oracle\nbranch_count: 12\n");
        assert_eq!(Report::parse(&text).unwrap(), r);
        assert_eq!(Report::parse("nonsense").unwrap_err(), 1);
    }
}
