use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One generated artifact, stored as a JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// `mono-reduction`, `fbdd-reduction`, `random-circuit`, ...
    pub kind: String,
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: serde_json::Value,
    /// Classifier file, relative to the manifest.
    pub file: Option<String>,
    pub instance: Vec<f64>,
    pub class: usize,
    pub target: usize,
    /// Expected relevancy of `target`, when known.
    pub expected: Option<bool>,
}

pub fn write_manifest(entries: &[ManifestEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&serde_json::to_string(e).expect("manifest entries serialize"));
        out.push('\n');
    }
    out
}

pub fn read_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Invalid(format!("manifest line {}: {e}", i + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let e = ManifestEntry {
            kind: "mono-reduction".into(),
            seed: Some(4),
            params: serde_json::json!({"vars": 3, "clauses": 5}),
            file: Some("mono-4.mono".into()),
            instance: vec![1.0; 7],
            class: 1,
            target: 1,
            expected: Some(false),
        };
        let text = write_manifest(&[e.clone(), e.clone()]);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(read_manifest(&text).unwrap(), vec![e.clone(), e]);
        assert!(read_manifest("{\"kind\": 3}\n").is_err());
    }
}
