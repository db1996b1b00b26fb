use std::io::Write;
use std::path::{Path, PathBuf};

use hetec_core::ArchitectureConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::InputSource;
use crate::CliError;

/// Everything needed to rerun a report: embedded at the top of each one.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub input: InputSource,
    pub input_sha256: String,
    pub config: ArchitectureConfig,
}

impl Header {
    pub fn new(
        command: &'static str,
        seed: u64,
        input: InputSource,
        input_text: &str,
        config: ArchitectureConfig,
    ) -> Self {
        Header {
            tool: "hetec",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            input,
            input_sha256: sha256_hex(input_text.as_bytes()),
            config,
        }
    }

    /// `<command>-<16 hex digits>.<ext>`, keyed on the header plus any
    /// command-specific parameters.
    pub fn file_name(&self, extra: &str, ext: &str) -> String {
        let key = serde_json::to_string(self).expect("header serializes") + extra;
        format!("{}-{}.{ext}", self.command, &sha256_hex(key.as_bytes())[..16])
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory. Without `replace`, an existing file with the same name is left
/// alone if its contents agree and is an error otherwise.
pub fn write_atomic(dir: &Path, name: &str, contents: &[u8], replace: bool) -> Result<PathBuf, CliError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let target = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
    tmp.write_all(contents).map_err(io(tmp.path()))?;
    // temporary files are created owner-only; reports are ordinary files
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644)).map_err(io(tmp.path()))?;
    }
    tmp.as_file().sync_all().map_err(io(tmp.path()))?;
    if replace {
        return tmp
            .persist(&target)
            .map(|_| target.clone())
            .map_err(|e| CliError::Io { path: target, source: e.error });
    }
    match tmp.persist_noclobber(&target) {
        Ok(_) => Ok(target),
        Err(e) if e.error.kind() == std::io::ErrorKind::AlreadyExists => {
            let existing = std::fs::read(&target).map_err(io(&target))?;
            if existing == contents {
                Ok(target)
            } else {
                Err(CliError::Conflict(target))
            }
        }
        Err(e) => Err(CliError::Io { path: target, source: e.error }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_once_and_accepts_identical_rewrites() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_atomic(dir.path(), "a.json", b"{}", false).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"{}");
        assert_eq!(write_atomic(dir.path(), "a.json", b"{}", false).unwrap(), path);
        assert!(matches!(write_atomic(dir.path(), "a.json", b"[]", false), Err(CliError::Conflict(_))));
        write_atomic(dir.path(), "a.json", b"[]", true).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"[]");
        // no temporary files left behind
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn names_depend_on_seed_and_extra() {
        let source = InputSource::File { path: "x.qasm".into() };
        let a = Header::new("estimate", 1, source.clone(), "", ArchitectureConfig::default());
        let b = Header::new("estimate", 2, source, "", ArchitectureConfig::default());
        assert_ne!(a.file_name("", "json"), b.file_name("", "json"));
        assert_ne!(a.file_name("", "json"), a.file_name("s=2", "json"));
        assert!(a.file_name("", "csv").starts_with("estimate-") && a.file_name("", "csv").ends_with(".csv"));
    }

    #[test]
    fn sha256_known_value() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
