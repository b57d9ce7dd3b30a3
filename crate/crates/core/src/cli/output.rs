use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::METRIC_TAG;

/// Provenance block written ahead of every result.
#[derive(Clone, Debug)]
pub struct Header {
    pub config: Value,
    pub timestamp: Option<u64>,
}

impl Header {
    pub fn new(config: Value, with_timestamp: bool) -> Self {
        let timestamp =
            with_timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
        Self { config, timestamp }
    }

    fn lines(&self) -> Vec<String> {
        let mut lines = vec![format!("# topobound {}", env!("CARGO_PKG_VERSION"))];
        if let Some(t) = self.timestamp {
            lines.push(format!("# generated_unix: {t}"));
        }
        lines.push(format!("# config: {}", self.config));
        lines.push(format!("# metric: {METRIC_TAG}"));
        lines
    }
}

pub fn render_csv<T: Serialize>(header: &Header, rows: &[T]) -> Result<String> {
    let mut out = header.lines().join("\n");
    out.push('\n');
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Parse(format!("csv: {e}")))?;
    }
    let body = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    out.push_str(&String::from_utf8_lossy(&body));
    Ok(out)
}

pub fn render_json<T: Serialize>(header: &Header, result: &T) -> Result<String> {
    let mut doc = json!({
        "tool": "topobound",
        "version": env!("CARGO_PKG_VERSION"),
        "config": header.config,
        "metric": METRIC_TAG,
        "result": result,
    });
    if let Some(t) = header.timestamp {
        doc["generated_unix"] = json!(t);
    }
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}
