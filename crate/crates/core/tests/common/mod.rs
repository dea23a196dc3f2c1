#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

pub fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}
