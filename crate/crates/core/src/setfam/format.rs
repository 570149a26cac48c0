//! The `.fam` text format.
//!
//! ```text
//! # a comment
//! ground: a,b,c
//! a
//! a,b,c
//! {}
//! ```

use super::family::SetFamily;
use super::mask::GroundSet;
use crate::error::{Error, Result};

pub fn parse_fam(text: &str) -> Result<SetFamily> {
    let mut ground: Option<GroundSet> = None;
    let mut masks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match &ground {
            None => {
                let rest = line
                    .strip_prefix("ground:")
                    .ok_or_else(|| Error::Parse { line: line_no, msg: "expected `ground: label,label,...`".into() })?;
                let labels: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
                ground = Some(
                    GroundSet::with_labels(labels).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?,
                );
            }
            Some(g) => {
                let m = if line == "{}" {
                    Default::default()
                } else {
                    let mut m = crate::SubsetMask::EMPTY;
                    for label in line.split(',') {
                        let i =
                            g.index_of(label.trim()).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
                        m = m.with(i);
                    }
                    m
                };
                masks.push(m);
            }
        }
    }
    let ground = ground.ok_or(Error::Parse { line: 0, msg: "missing `ground:` line".into() })?;
    SetFamily::new(ground, masks)
}

pub fn write_fam(f: &SetFamily) -> String {
    let g = f.ground();
    let mut out = format!("ground: {}\n", g.labels().join(","));
    for m in f.iter() {
        if m.is_empty() {
            out.push_str("{}");
        } else {
            let labels: Vec<&str> = m.elements().map(|i| g.label(i)).collect();
            out.push_str(&labels.join(","));
        }
        out.push('\n');
    }
    out
}
