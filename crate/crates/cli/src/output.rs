use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use singlering::montecarlo::{write_rows, OutputFormat};

use crate::args::GlobalArgs;
use crate::Failure;

/// Where the primary artifact goes: an explicit `--output`, the default
/// directory, or stdout.
pub fn destination(global: &GlobalArgs, command: &str) -> Option<PathBuf> {
    let ext = OutputFormat::from(global.format).extension();
    match (&global.output, &global.output_dir) {
        (Some(path), Some(dir)) if path.is_relative() => Some(dir.join(path)),
        (Some(path), _) => Some(path.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{command}.{ext}"))),
        (None, None) => None,
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Compute(format!("{}: {e}", path.display()))
}

pub fn write_to<T: Serialize>(
    rows: &[T],
    global: &GlobalArgs,
    path: Option<&Path>,
) -> Result<(), Failure> {
    let format = OutputFormat::from(global.format);
    match path {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| io_failure(parent, e))?;
            }
            let file = File::create(path).map_err(|e| io_failure(path, e))?;
            let mut out = BufWriter::new(file);
            write_rows(rows, format, &mut out)?;
            out.flush().map_err(|e| io_failure(path, e))
        }
        None => {
            let stdout = io::stdout();
            write_rows(rows, format, stdout.lock())?;
            Ok(())
        }
    }
}

/// Writes the command's main table.
pub fn emit<T: Serialize>(
    rows: &[T],
    global: &GlobalArgs,
    command: &str,
) -> Result<Option<PathBuf>, Failure> {
    let path = destination(global, command);
    write_to(rows, global, path.as_deref())?;
    Ok(path)
}

/// `dir/stem.records.csv` -> `dir/stem.records.<tag>.csv`.
pub fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{tag}"),
    };
    path.with_file_name(name)
}
