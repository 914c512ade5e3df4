use std::io::Write;
use std::path::{Path, PathBuf};

use crate::args::OUT_DIR_ENV;

/// Where an artifact goes: `--out`, else `$GDOF_OUT_DIR/<default_name>`,
/// else stdout.
pub fn target(out: &Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(default_name))
    })
}

pub fn emit(out: &Option<PathBuf>, default_name: &str, content: &str) -> Result<(), String> {
    match target(out, default_name) {
        Some(path) => write_file(&path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| format!("writing to stdout: {e}"))
        }
    }
}

pub fn write_file(path: &Path, content: &str) -> Result<(), String> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| format!("creating {}: {e}", dir.display()))?;
    }
    std::fs::write(path, content).map_err(|e| format!("writing {}: {e}", path.display()))
}

/// File-name friendly form of a tuple or rational: `2-2-3-2`, `2_5`.
pub fn slug(s: &str) -> String {
    s.chars()
        .filter_map(|c| match c {
            '(' | ')' | ' ' => None,
            ',' => Some('-'),
            '/' => Some('_'),
            c => Some(c),
        })
        .collect()
}
