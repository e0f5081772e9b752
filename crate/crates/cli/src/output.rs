//! Output rendering: json / csv / text with 17-significant-digit decimals
//! and the provenance header embedded in every artifact.

use crate::config::Provenance;
use crate::{CommonArgs, FormatArg};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// 17 significant digits; round-trips f64 exactly.
pub fn g17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Send rendered output to --out or stdout.
pub fn emit(common: &CommonArgs, rendered: &str) -> i32 {
    match &common.out {
        None => {
            print!("{rendered}");
            let _ = std::io::stdout().flush();
            crate::EXIT_OK
        }
        Some(path) => write_file(path, rendered),
    }
}

pub fn write_file(path: &Path, data: &str) -> i32 {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            let _ = std::fs::create_dir_all(parent);
        }
    }
    match std::fs::write(path, data) {
        Ok(()) => crate::EXIT_OK,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", path.display());
            crate::EXIT_FAIL
        }
    }
}

/// Wrap a payload with its provenance and render as pretty JSON.
pub fn to_json<T: Serialize>(payload: &T, provenance: &Provenance) -> String {
    #[derive(Serialize)]
    struct Artifact<'a, T> {
        #[serde(flatten)]
        payload: &'a T,
        provenance: &'a Provenance,
    }
    let mut s = serde_json::to_string_pretty(&Artifact {
        payload,
        provenance,
    })
    .expect("artifact serialization");
    s.push('\n');
    s
}

/// Render one artifact in the requested format from prepared pieces.
pub fn render<T: Serialize>(
    common: &CommonArgs,
    provenance: &Provenance,
    payload: &T,
    csv: impl FnOnce() -> String,
    text: impl FnOnce() -> String,
) -> String {
    match common.format {
        FormatArg::Json => to_json(payload, provenance),
        FormatArg::Csv => format!("{}{}", provenance.header_lines(), csv()),
        FormatArg::Text => format!("{}{}", provenance.header_lines(), text()),
    }
}

pub fn matrix_csv(m: &[[f64; 6]; 6]) -> String {
    let mut s = String::from("i,j,value\n");
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            s.push_str(&format!("{},{},{}\n", i + 1, j + 1, g17(*v)));
        }
    }
    s
}

pub fn matrix_text(m: &[[f64; 6]; 6]) -> String {
    let mut s = String::new();
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>24}", g17(*v))).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}
