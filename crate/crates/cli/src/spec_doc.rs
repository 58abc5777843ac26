//! Walk specification files.
//!
//! A spec file is a JSON object:
//!
//! ```json
//! {
//!   "name": "symmetric N=3",
//!   "p": [0.5, 0.5, 0.5, 0.0],
//!   "q": [0.0, 0.5, 0.5, 0.5],
//!   "r": [0.0, 0.0, 0.0, 0.0],
//!   "s": [0.5, 0.0, 0.0, 0.5],
//!   "start": 0
//! }
//! ```
//!
//! `name`, `start`, `ghost_left` and `ghost_right` are optional.

use std::fs;
use std::path::Path;

use fibwalk::{WalkParams, WalkSpec64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghost_left: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghost_right: Option<f64>,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("list \"{name}\" has {len} entries, expected {expected}")]
    LengthMismatch { name: &'static str, len: usize, expected: usize },

    #[error("lists p, q, r, s must not be empty")]
    Empty,

    #[error(transparent)]
    Invalid(#[from] fibwalk::Error),
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let doc: SpecDocument = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        // serde_json appends its own " at line L column C"
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        SpecError::Syntax { line: e.line(), column: e.column(), message }
    })?;
    doc.check_lengths()?;
    Ok(doc)
}

pub fn read_spec(path: &Path) -> Result<SpecDocument, SpecError> {
    let text = fs::read_to_string(path).map_err(|source| SpecError::Io { path: path.display().to_string(), source })?;
    parse_spec(&text)
}

impl SpecDocument {
    fn lists(&self) -> [(&'static str, usize); 4] {
        [("p", self.p.len()), ("q", self.q.len()), ("r", self.r.len()), ("s", self.s.len())]
    }

    /// Reports the list whose length disagrees with the majority
    /// (with `p` as the reference on a tie).
    fn check_lengths(&self) -> Result<(), SpecError> {
        let lists = self.lists();
        let count = |len: usize| lists.iter().filter(|(_, l)| *l == len).count();
        let expected = lists.iter().map(|(_, l)| *l).max_by_key(|&l| (count(l), l == lists[0].1)).unwrap_or(0);
        if let Some(&(name, len)) = lists.iter().find(|(_, l)| *l != expected) {
            return Err(SpecError::LengthMismatch { name, len, expected });
        }
        if expected == 0 {
            return Err(SpecError::Empty);
        }
        Ok(())
    }

    pub fn to_spec(&self) -> Result<WalkSpec64, SpecError> {
        self.check_lengths()?;
        let mut params = WalkParams::new(self.p.clone(), self.q.clone(), self.r.clone(), self.s.clone())
            .with_ghosts(self.ghost_left.unwrap_or(1.0), self.ghost_right.unwrap_or(1.0));
        if let Some(start) = self.start {
            params = params.with_start(start);
        }
        Ok(params.validate()?)
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents always serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = r#"{"p": [0.5, 0.5, 0.5, 0.0], "q": [0.0, 0.5, 0.5, 0.5], "r": [0, 0, 0, 0], "s": [0.5, 0, 0, 0.5]}"#;

    #[test]
    fn fixture_maps_onto_the_spec() {
        let spec = parse_spec(FIXTURE).unwrap().to_spec().unwrap();
        let want = WalkParams::new(vec![0.5, 0.5, 0.5, 0.0], vec![0.0, 0.5, 0.5, 0.5], vec![0.0; 4], vec![0.5, 0.0, 0.0, 0.5])
            .validate()
            .unwrap();
        assert_eq!(spec, want);
    }

    #[test]
    fn odd_list_is_named() {
        let text = r#"{"p": [0.5, 0.5, 0.5, 0], "q": [0, 0.5, 0.5, 0.5], "r": [0, 0, 0, 0], "s": [0.5, 0, 0]}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(matches!(err, SpecError::LengthMismatch { name: "s", len: 3, expected: 4 }), "{err}");
        assert!(err.to_string().contains("\"s\""));
    }

    #[test]
    fn unknown_key_is_named() {
        let text = r#"{"p": [1], "q": [0], "r": [0], "s": [0], "v": 1}"#;
        let err = parse_spec(text).unwrap_err().to_string();
        assert!(err.contains("`v`"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_spec("{\n  \"p\": [0.5,, 0.5]\n}").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 2, .. }), "{err}");
        assert!(err.to_string().starts_with("line 2, column "));
    }

    #[test]
    fn decimal_literals_convert_exactly() {
        let doc = parse_spec(r#"{"p": [0.1], "q": [0.2], "r": [0.3], "s": [0.4]}"#).unwrap();
        assert_eq!(doc.p[0], 0.1);
        assert_eq!(doc.q[0], 0.2);
        assert_eq!(parse_spec(&doc.to_text()).unwrap(), doc);
    }
}
