//! Advisory on-disk cache of enumeration results.
//!
//! Entries live in `$PENULT_CACHE_DIR`, falling back to `$XDG_CACHE_HOME/penult`
//! and then `~/.cache/penult`. Any read or write failure is ignored and the
//! result is recomputed.

use std::env;
use std::fs;
use std::path::PathBuf;

use penult_core::enumerate::{read_archive, write_archive};
use penult_core::{Board, RuleSet};

pub struct Key {
    file: String,
}

impl Key {
    /// `flags` lists any result-affecting options beyond game and size.
    pub fn new(command: &str, game: RuleSet, n: usize, flags: &str) -> Key {
        Key { file: format!("{command}-{game}-{n}-{:016x}.jsonl", fnv1a(flags.as_bytes())) }
    }
}

/// Stable across builds, unlike the std hasher.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

fn dir() -> Option<PathBuf> {
    if let Some(d) = env::var_os("PENULT_CACHE_DIR") {
        return (!d.is_empty()).then(|| PathBuf::from(d));
    }
    if let Some(d) = env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("penult"));
    }
    env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("penult"))
}

pub fn load(key: &Key) -> Option<Vec<Board>> {
    read_archive(&dir()?.join(&key.file)).ok()
}

pub fn store(key: &Key, boards: &[Board]) {
    let Some(dir) = dir() else { return };
    if fs::create_dir_all(&dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("{}.tmp{}", key.file, std::process::id()));
    if write_archive(&tmp, boards).is_ok() {
        let _ = fs::rename(&tmp, dir.join(&key.file));
    }
}
