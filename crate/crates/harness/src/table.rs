//! CSV result tables with a small metadata header.
//!
//! Numeric cells use Rust's shortest round-trip float formatting, so a table
//! is byte-reproducible from (config, seed). The only line that varies
//! between identical runs is the `# generated-unix` stamp, which callers
//! comparing outputs must ignore.

/// Header line prefix of the volatile timestamp entry.
pub const TIMESTAMP_PREFIX: &str = "# generated-unix:";

#[derive(Debug, Clone)]
pub struct Metadata {
    pub schema: String,
    pub kind: &'static str,
    pub config_sha256: String,
    pub seed: u64,
    pub tool_version: &'static str,
}

#[derive(Debug, Clone)]
pub struct ResultTable {
    pub metadata: Metadata,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Shortest decimal representation that round-trips back to the same f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

impl ResultTable {
    pub fn new(metadata: Metadata, columns: Vec<&'static str>) -> Self {
        Self { metadata, columns, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Render header, column line, and rows. `now_unix = None` omits the
    /// timestamp line entirely.
    pub fn render(&self, now_unix: Option<u64>) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema: {}\n", self.metadata.schema));
        out.push_str(&format!("# kind: {}\n", self.metadata.kind));
        out.push_str(&format!("# config-sha256: {}\n", self.metadata.config_sha256));
        out.push_str(&format!("# seed: {}\n", self.metadata.seed));
        out.push_str(&format!("# tool-version: {}\n", self.metadata.tool_version));
        if let Some(now) = now_unix {
            out.push_str(&format!("{TIMESTAMP_PREFIX} {now}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Strip the timestamp line, leaving only reproducible bytes.
pub fn reproducible_body(rendered: &str) -> String {
    rendered
        .lines()
        .filter(|line| !line.starts_with(TIMESTAMP_PREFIX))
        .map(|line| format!("{line}\n"))
        .collect()
}
