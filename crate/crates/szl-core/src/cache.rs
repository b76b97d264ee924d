//! Line-oriented verdict cache. Sweeps are re-run across moduli, so results
//! accumulate in a small versioned text file:
//!
//! ```text
//! szlcache 1
//! <lowercase hex canonical code> TAB <ell> TAB member|nonmember TAB <trace>
//! ```

use std::path::Path;

use crate::error::{Error, Result};

pub const CACHE_HEADER: &str = "szlcache 1";

/// One cached verdict, keyed by canonical code and modulus parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CacheEntry {
    pub code: Vec<u8>,
    pub ell: u32,
    pub member: bool,
    pub trace: String,
}

pub fn to_hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

pub fn from_hex(s: &str) -> Option<Vec<u8>> {
    if s.len() % 2 != 0 || s.is_empty() {
        return None;
    }
    let digit = |c: u8| match c {
        b'0'..=b'9' => Some(c - b'0'),
        b'a'..=b'f' => Some(c - b'a' + 10),
        _ => None,
    };
    s.as_bytes()
        .chunks(2)
        .map(|pair| Some(digit(pair[0])? * 16 + digit(pair[1])?))
        .collect()
}

/// Serializes entries in the given order; UTF-8, LF line endings.
pub fn cache_store(path: &Path, entries: &[CacheEntry]) -> Result<()> {
    let mut out = String::new();
    out.push_str(CACHE_HEADER);
    out.push('\n');
    for e in entries {
        out.push_str(&to_hex(&e.code));
        out.push('\t');
        out.push_str(&e.ell.to_string());
        out.push('\t');
        out.push_str(if e.member { "member" } else { "nonmember" });
        out.push('\t');
        out.push_str(&e.trace);
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::CacheIo(e.to_string()))
}

/// Loads a cache file, rejecting unknown headers and malformed lines with
/// their line numbers.
pub fn cache_load(path: &Path) -> Result<Vec<CacheEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::CacheIo(e.to_string()))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CACHE_HEADER => {}
        Some((_, header)) => {
            return Err(Error::CacheVersion {
                expected: CACHE_HEADER.into(),
                found: header.into(),
            })
        }
        None => {
            return Err(Error::CacheVersion {
                expected: CACHE_HEADER.into(),
                found: String::new(),
            })
        }
    }
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::CacheParse {
                line: line_no,
                reason: format!("expected 4 tab-separated fields, found {}", fields.len()),
            });
        }
        let code = from_hex(fields[0]).ok_or_else(|| Error::CacheParse {
            line: line_no,
            reason: format!("invalid hex code {:?}", fields[0]),
        })?;
        let ell: u32 = fields[1].parse().map_err(|_| Error::CacheParse {
            line: line_no,
            reason: format!("invalid modulus field {:?}", fields[1]),
        })?;
        let member = match fields[2] {
            "member" => true,
            "nonmember" => false,
            other => {
                return Err(Error::CacheParse {
                    line: line_no,
                    reason: format!("invalid verdict field {other:?}"),
                })
            }
        };
        entries.push(CacheEntry {
            code,
            ell,
            member,
            trace: fields[3].to_string(),
        });
    }
    Ok(entries)
}
