//! CSV emission with a fixed float format so identical configs produce
//! byte-identical output.

use std::io::Write;

use conic_census::error::{Error, Result};

/// Twelve significant digits, scientific notation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn write_rows(out: Option<&str>, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let mut text = String::with_capacity(64 * (rows.len() + 1));
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| Error::Domain(format!("cannot create '{path}': {e}")))?;
            f.write_all(text.as_bytes())
                .map_err(|e| Error::Domain(format!("cannot write '{path}': {e}")))
        }
    }
}
