use std::fs;
use std::path::Path;

use braidforge::linalg::{Tolerances, C64};
use braidforge::repfile::{parse_complex, RepFile};

use crate::{CliResult, Failure};

pub fn read_file(path: &Path) -> CliResult<RepFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(RepFile::parse(&text)?)
}

/// Writes to `path`, or to stdout when absent.
pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn lambda(text: Option<&str>) -> CliResult<Option<C64>> {
    Ok(text.map(parse_complex).transpose()?)
}

pub fn tolerances() -> CliResult<Tolerances> {
    Ok(Tolerances::from_env()?)
}
