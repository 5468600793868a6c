//! Output files: atomic writes, content hashes and staged directories.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `bytes` to a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = path.with_file_name(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res
}

pub fn json_bytes<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable report");
    out.push(b'\n');
    out
}

/// A directory of artifacts, each recorded with its hash. Safe to share
/// across threads.
#[derive(Debug)]
pub struct Bundle {
    root: PathBuf,
    artifacts: Mutex<BTreeMap<String, Artifact>>,
}

impl Bundle {
    pub fn new(root: impl Into<PathBuf>) -> io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(Bundle {
            root,
            artifacts: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// `rel` uses `/` separators and is relative to the bundle root.
    pub fn write(&self, rel: &str, bytes: &[u8]) -> io::Result<()> {
        write_atomic(&self.root.join(rel), bytes)?;
        let art = Artifact {
            path: rel.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len() as u64,
        };
        self.artifacts.lock().expect("artifact lock").insert(rel.to_string(), art);
        Ok(())
    }

    pub fn write_json<T: Serialize + ?Sized>(&self, rel: &str, value: &T) -> io::Result<()> {
        self.write(rel, &json_bytes(value))
    }

    /// Artifacts sorted by path.
    pub fn artifacts(&self) -> Vec<Artifact> {
        self.artifacts.lock().expect("artifact lock").values().cloned().collect()
    }
}

/// A bundle built in a hidden sibling directory and moved over the target
/// on [`Staging::commit`]. Dropped without committing, it removes itself.
#[derive(Debug)]
pub struct Staging {
    tmp: PathBuf,
    dest: PathBuf,
    done: bool,
}

pub const MANIFEST: &str = "manifest.json";

impl Staging {
    /// Fails if `dest` exists and is neither empty nor a previous bundle.
    pub fn begin(dest: &Path) -> Result<Staging, String> {
        if dest.exists() {
            if !dest.is_dir() {
                return Err(format!("{} exists and is not a directory", dest.display()));
            }
            let empty = fs::read_dir(dest).map_err(|e| e.to_string())?.next().is_none();
            if !empty && !dest.join(MANIFEST).is_file() {
                return Err(format!(
                    "{} is not empty and holds no {MANIFEST}; refusing to replace it",
                    dest.display()
                ));
            }
        }
        let name = dest
            .file_name()
            .ok_or_else(|| format!("{} has no directory name", dest.display()))?;
        let tmp = dest.with_file_name(format!(".{}.partial-{}", name.to_string_lossy(), std::process::id()));
        if tmp.exists() {
            fs::remove_dir_all(&tmp).map_err(|e| e.to_string())?;
        }
        fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
        Ok(Staging {
            tmp,
            dest: dest.to_path_buf(),
            done: false,
        })
    }

    pub fn path(&self) -> &Path {
        &self.tmp
    }

    pub fn commit(mut self) -> io::Result<()> {
        if self.dest.exists() {
            fs::remove_dir_all(&self.dest)?;
        }
        fs::rename(&self.tmp, &self.dest)?;
        self.done = true;
        Ok(())
    }
}

impl Drop for Staging {
    fn drop(&mut self) {
        if !self.done {
            let _ = fs::remove_dir_all(&self.tmp);
        }
    }
}
