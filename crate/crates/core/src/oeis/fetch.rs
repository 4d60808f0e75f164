//! Opt-in OEIS b-file download with a raw-bytes disk cache.
//!
//! The cache layout is `<cache_dir>/<Axxxxxx>/b<xxxxxx>.txt`. Writes go to a
//! temporary file in the same directory and are renamed into place, so a
//! reader never observes a partial file and concurrent fetches of the same
//! id are last-writer-wins.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use thiserror::Error;

use super::bfile::{BFile, BFileError, SequenceId};

pub const BASE_URL_ENV: &str = "OEIS_BASE_URL";
pub const CACHE_DIR_ENV: &str = "HOLOPROOF_CACHE_DIR";
pub const NETWORK_ENV: &str = "HOLOPROOF_NETWORK";
pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

const USER_AGENT: &str = concat!(
    "holoproof/",
    env!("CARGO_PKG_VERSION"),
    " (b-file verifier; exact recurrence checks)"
);

#[derive(Debug, Error)]
pub enum FetchError {
    #[error(transparent)]
    InvalidId(BFileError),
    #[error(
        "{id} is not cached and network access is disabled (pass --fetch or set {NETWORK_ENV}=1)"
    )]
    NetworkDisabled { id: SequenceId },
    #[error("network error fetching {url}: {message}")]
    Network { url: String, message: String },
    #[error("HTTP {status} fetching {url}")]
    Http { url: String, status: u16 },
    #[error("cannot parse b-file for {id}: {source}")]
    Parse { id: SequenceId, source: BFileError },
    #[error("cache I/O at {path}: {source}")]
    Cache { path: PathBuf, source: io::Error },
}

#[derive(Debug, Clone)]
pub struct FetchConfig {
    pub base_url: String,
    pub cache_dir: PathBuf,
    pub network: bool,
}

impl FetchConfig {
    /// Base URL and cache directory from the environment. Network access is
    /// on if `network` is set or `HOLOPROOF_NETWORK=1`.
    pub fn from_env(network: bool) -> Self {
        let base_url = std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        let cache_dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(default_cache_dir);
        let env_network = std::env::var(NETWORK_ENV).is_ok_and(|v| v == "1");
        FetchConfig {
            base_url,
            cache_dir,
            network: network || env_network,
        }
    }

    pub fn url_for(&self, id: &SequenceId) -> String {
        format!(
            "{}/{}/{}",
            self.base_url.trim_end_matches('/'),
            id,
            id.bfile_name()
        )
    }

    pub fn cache_path(&self, id: &SequenceId) -> PathBuf {
        self.cache_dir.join(id.as_str()).join(id.bfile_name())
    }
}

fn default_cache_dir() -> PathBuf {
    dirs::cache_dir()
        .unwrap_or_else(std::env::temp_dir)
        .join("holoproof")
        .join("bfiles")
}

fn parse_for(id: &SequenceId, bytes: &[u8]) -> Result<BFile, FetchError> {
    BFile::parse(bytes)
        .map(|b| b.with_id(id.clone()))
        .map_err(|source| FetchError::Parse {
            id: id.clone(),
            source,
        })
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FetchError> {
    let cache_err = |source| FetchError::Cache {
        path: path.to_path_buf(),
        source,
    };
    let dir = path.parent().expect("cache path has a parent");
    std::fs::create_dir_all(dir).map_err(cache_err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(cache_err)?;
    tmp.write_all(bytes).map_err(cache_err)?;
    tmp.as_file().sync_all().map_err(cache_err)?;
    tmp.persist(path).map_err(|e| cache_err(e.error))?;
    Ok(())
}

fn download(url: &str) -> Result<Vec<u8>, FetchError> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .http_status_as_error(false)
        .timeout_global(Some(Duration::from_secs(60)))
        .user_agent(USER_AGENT)
        .build()
        .into();
    let network = |e: ureq::Error| FetchError::Network {
        url: url.to_string(),
        message: e.to_string(),
    };
    let mut resp = agent.get(url).call().map_err(network)?;
    let status = resp.status().as_u16();
    if !(200..300).contains(&status) {
        return Err(FetchError::Http {
            url: url.to_string(),
            status,
        });
    }
    resp.body_mut()
        .with_config()
        .limit(64 * 1024 * 1024)
        .read_to_vec()
        .map_err(network)
}

/// Returns the b-file for `id`, from cache when present, otherwise from the
/// network if enabled. Parse failures of fresh downloads are not cached.
pub fn fetch_bfile(id: &str, config: &FetchConfig) -> Result<BFile, FetchError> {
    let id: SequenceId = id.parse().map_err(FetchError::InvalidId)?;
    let path = config.cache_path(&id);
    match std::fs::read(&path) {
        Ok(bytes) => return parse_for(&id, &bytes),
        Err(e) if e.kind() == io::ErrorKind::NotFound => {}
        Err(source) => return Err(FetchError::Cache { path, source }),
    }
    if !config.network {
        return Err(FetchError::NetworkDisabled { id });
    }
    let bytes = download(&config.url_for(&id))?;
    let parsed = parse_for(&id, &bytes)?;
    write_atomic(&path, &bytes)?;
    Ok(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(dir: &Path, network: bool) -> FetchConfig {
        FetchConfig {
            // Port 9 (discard) on loopback: any accidental request fails fast.
            base_url: "http://127.0.0.1:9".to_string(),
            cache_dir: dir.to_path_buf(),
            network,
        }
    }

    #[test]
    fn invalid_id_rejected_before_io() {
        let dir = tempfile::tempdir().unwrap();
        let err = fetch_bfile("X123", &config(dir.path(), true)).unwrap_err();
        assert!(matches!(
            err,
            FetchError::InvalidId(BFileError::InvalidId(_))
        ));
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn warm_cache_needs_no_network() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(dir.path(), false);
        let id: SequenceId = "A045406".parse().unwrap();
        write_atomic(&cfg.cache_path(&id), b"2 1\n3 3\n").unwrap();
        let b = fetch_bfile("A045406", &cfg).unwrap();
        assert_eq!(b.entries().len(), 2);
        assert_eq!(b.sequence_id, Some(id));
    }

    #[test]
    fn cold_cache_without_network_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let err = fetch_bfile("A045406", &config(dir.path(), false)).unwrap_err();
        assert!(matches!(err, FetchError::NetworkDisabled { .. }));
    }

    #[test]
    fn url_layout() {
        let cfg = FetchConfig {
            base_url: "https://example.org/".to_string(),
            cache_dir: PathBuf::from("/c"),
            network: false,
        };
        let id: SequenceId = "A001711".parse().unwrap();
        assert_eq!(cfg.url_for(&id), "https://example.org/A001711/b001711.txt");
        assert_eq!(cfg.cache_path(&id), PathBuf::from("/c/A001711/b001711.txt"));
    }
}
