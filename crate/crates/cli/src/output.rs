//! Atomic file output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

pub struct OutputDir {
    dir: PathBuf,
}

impl OutputDir {
    /// Creates `dir` if needed and checks that it accepts new files, so a
    /// long run does not fail at the very end.
    pub fn prepare(dir: &Path) -> Result<Self, CliError> {
        let io = |source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        };
        fs::create_dir_all(dir).map_err(io)?;
        let probe = tempfile_in(dir).map_err(io)?;
        fs::remove_file(&probe).map_err(io)?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
        })
    }

    /// Writes to a hidden temporary file and renames it into place.
    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let target = self.dir.join(name);
        let tmp = self.dir.join(format!(".{name}.{}.tmp", std::process::id()));
        let io = |source| CliError::Io {
            path: target.clone(),
            source,
        };
        let result = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(contents.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        result.map_err(io)?;
        Ok(target)
    }
}

fn tempfile_in(dir: &Path) -> std::io::Result<PathBuf> {
    let p = dir.join(format!(".landbubble-probe.{}", std::process::id()));
    fs::File::create(&p)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_replaces() {
        let dir = std::env::temp_dir().join(format!("landbubble-out-{}", std::process::id()));
        let out = OutputDir::prepare(&dir).unwrap();
        let p = out.write("a.csv", "x\n1\n").unwrap();
        out.write("a.csv", "x\n2\n").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "x\n2\n");
        let names: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
