use std::fs;
use std::io::{Read, Write};

use serde_json::Value;
use superanalytic::wire;

use crate::UsageError;

/// Reads and parses a JSON document. Errors name the source and carry a
/// `line:column` position or a JSON path.
pub fn read_document(source: &str) -> Result<Value, UsageError> {
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| UsageError(format!("<stdin>: {e}")))?;
        s
    } else {
        fs::read_to_string(source).map_err(|e| UsageError(format!("{source}: {e}")))?
    };
    wire::parse_document(&text).map_err(|e| UsageError(format!("{}: {e}", display_name(source))))
}

pub fn display_name(source: &str) -> &str {
    if source == "-" {
        "<stdin>"
    } else {
        source
    }
}

pub fn write_output(target: Option<&str>, text: &str) -> Result<(), UsageError> {
    match target {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("{path}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|()| out.flush()).map_err(UsageError::from)
        }
    }
}
