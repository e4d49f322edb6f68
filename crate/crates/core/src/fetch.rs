//! Download-once cache for TU dataset archives.
//!
//! Layout of a cache directory:
//!
//! ```text
//! <cache>/specgraph.lock     one "NAME sha256hex" line per archive ever fetched
//! <cache>/<NAME>/<NAME>_A.txt ...
//! ```
//!
//! An archive whose digest disagrees with the lockfile is rejected before
//! anything is unpacked. Names without a lockfile entry are trusted on first
//! download and recorded.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DEFAULT_URL_TEMPLATE: &str = "https://www.chrsmrrs.com/graphkerneldatasets/{name}.zip";
pub const LOCKFILE_NAME: &str = "specgraph.lock";

const REQUIRED_SUFFIXES: [&str; 3] = ["_A.txt", "_graph_indicator.txt", "_graph_labels.txt"];

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("downloading {url}: {message}")]
    Network { url: String, message: String },
    #[error("checksum mismatch for {name}: lockfile has {expected}, archive is {actual}")]
    ChecksumMismatch { name: String, expected: String, actual: String },
    #[error("malformed archive for {name}: {message}")]
    MalformedArchive { name: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> FetchError + '_ {
    move |source| FetchError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// `true` if `dir` holds the files the TU parser needs for `name`.
pub fn is_cached(dir: &Path, name: &str) -> bool {
    REQUIRED_SUFFIXES
        .iter()
        .all(|s| dir.join(format!("{name}{s}")).is_file())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn read_lockfile(cache_dir: &Path) -> Result<BTreeMap<String, String>, FetchError> {
    let path = cache_dir.join(LOCKFILE_NAME);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(io_err(&path)(e)),
    };
    Ok(text
        .lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.to_string(), it.next()?.to_ascii_lowercase()))
        })
        .collect())
}

fn write_lockfile(cache_dir: &Path, entries: &BTreeMap<String, String>) -> Result<(), FetchError> {
    let path = cache_dir.join(LOCKFILE_NAME);
    let body: String = entries.iter().map(|(k, v)| format!("{k} {v}\n")).collect();
    fs::write(&path, body).map_err(io_err(&path))
}

fn download(url: &str) -> Result<Vec<u8>, FetchError> {
    let net = |message: String| FetchError::Network {
        url: url.to_string(),
        message,
    };
    if let Some(path) = url.strip_prefix("file://") {
        return fs::read(path).map_err(|e| net(e.to_string()));
    }
    let resp = ureq::get(url).call().map_err(|e| net(e.to_string()))?;
    let mut bytes = Vec::new();
    resp.into_reader()
        .read_to_end(&mut bytes)
        .map_err(|e| net(e.to_string()))?;
    Ok(bytes)
}

/// Unpacks `bytes` under `dest` and returns the directory holding `<name>_A.txt`.
fn unpack(name: &str, bytes: &[u8], dest: &Path) -> Result<PathBuf, FetchError> {
    let malformed = |message: String| FetchError::MalformedArchive {
        name: name.to_string(),
        message,
    };
    let mut archive = zip::ZipArchive::new(io::Cursor::new(bytes)).map_err(|e| malformed(e.to_string()))?;
    archive.extract(dest).map_err(|e| malformed(e.to_string()))?;
    // archives usually wrap the files in a NAME/ folder; accept a flat layout too
    for candidate in [dest.join(name), dest.to_path_buf()] {
        if is_cached(&candidate, name) {
            return Ok(candidate);
        }
    }
    Err(malformed(format!("no {name}_A.txt, {name}_graph_indicator.txt and {name}_graph_labels.txt")))
}

/// Returns `<cache_dir>/<name>`, downloading `url_template` (with `{name}`
/// substituted) first if the directory is incomplete.
pub fn fetch_dataset(name: &str, cache_dir: impl AsRef<Path>, url_template: &str) -> Result<PathBuf, FetchError> {
    let cache_dir = cache_dir.as_ref();
    let target = cache_dir.join(name);
    if is_cached(&target, name) {
        log::debug!("{name}: cache hit at {}", target.display());
        return Ok(target);
    }

    let url = url_template.replace("{name}", name);
    log::info!("{name}: downloading {url}");
    let bytes = download(&url)?;
    let actual = sha256_hex(&bytes);

    fs::create_dir_all(cache_dir).map_err(io_err(cache_dir))?;
    let mut lock = read_lockfile(cache_dir)?;
    if let Some(expected) = lock.get(name) {
        if *expected != actual {
            return Err(FetchError::ChecksumMismatch {
                name: name.to_string(),
                expected: expected.clone(),
                actual,
            });
        }
    }

    let staging = cache_dir.join(format!(".{name}.partial"));
    if staging.exists() {
        fs::remove_dir_all(&staging).map_err(io_err(&staging))?;
    }
    let result = unpack(name, &bytes, &staging).and_then(|found| {
        if target.exists() {
            fs::remove_dir_all(&target).map_err(io_err(&target))?;
        }
        fs::rename(&found, &target).map_err(io_err(&target))
    });
    let _ = fs::remove_dir_all(&staging);
    result?;

    lock.insert(name.to_string(), actual);
    write_lockfile(cache_dir, &lock)?;
    Ok(target)
}
