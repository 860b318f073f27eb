//! Report writers. Every file carries the run's config hash and seed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Stamp {
    pub config_hash: String,
    pub seed: u64,
}

pub struct Writer {
    pub dir: PathBuf,
    pub stamp: Stamp,
    written: Vec<PathBuf>,
}

/// Keeps ids usable as file names.
pub fn file_safe(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect();
    if s.is_empty() || s.starts_with('.') {
        format!("_{s}")
    } else {
        s
    }
}

impl Writer {
    pub fn new(dir: &Path, stamp: Stamp) -> Result<Writer, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Writer {
            dir: dir.to_path_buf(),
            stamp,
            written: Vec::new(),
        })
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    pub fn raw(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.written.push(path.clone());
        Ok(path)
    }

    /// Pretty JSON object with `config_hash` and `seed` merged in at top level.
    pub fn json<T: Serialize>(&mut self, name: &str, body: &T) -> Result<PathBuf, CliError> {
        let mut obj = match serde_json::to_value(body).map_err(tfmn::Error::from)? {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("data".into(), other);
                m
            }
        };
        obj.insert("config_hash".into(), Value::String(self.stamp.config_hash.clone()));
        obj.insert("seed".into(), Value::from(self.stamp.seed));
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).map_err(tfmn::Error::from)?;
        text.push('\n');
        self.raw(name, &text)
    }

    /// CSV body preceded by a `#` line naming the config hash and seed.
    pub fn csv(&mut self, name: &str, body: &str) -> Result<PathBuf, CliError> {
        let text = format!("# config_hash={} seed={}\n{body}", self.stamp.config_hash, self.stamp.seed);
        self.raw(name, &text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_stamps() {
        assert_eq!(file_safe("self-organisation"), "self-organisation");
        assert_eq!(file_safe("a/b c"), "a_b_c");
        assert_eq!(file_safe(".."), "_..");
        let dir = tempfile::tempdir().unwrap();
        let mut w = Writer::new(
            dir.path(),
            Stamp {
                config_hash: "h".into(),
                seed: 4,
            },
        )
        .unwrap();
        let p = w.json("x.json", &serde_json::json!({"a": 1})).unwrap();
        let v: Value = serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap();
        assert_eq!(v["config_hash"], "h");
        assert_eq!(v["seed"], 4);
        let p = w.csv("x.csv", "a,b\n").unwrap();
        assert_eq!(fs::read_to_string(p).unwrap(), "# config_hash=h seed=4\na,b\n");
        assert_eq!(w.written().len(), 2);
    }
}
