use std::collections::{HashMap, HashSet};
use std::path::Path;

use url::Url;

use super::graph::{data_lines, read_text};
use crate::error::{Error, Result};

pub const MAX_REDIRECT_HOPS: usize = 10;

/// Offline alias → target map for link shorteners and other redirects.
/// Keys and values are stored in normalized form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RedirectMap {
    map: HashMap<String, String>,
}

impl RedirectMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, alias: &str, target: &str) -> Result<()> {
        let alias = normalize(alias)?;
        let target = normalize(target)?;
        self.map.insert(alias, target);
        Ok(())
    }

    pub fn from_pairs<A: AsRef<str>, B: AsRef<str>>(pairs: &[(A, B)]) -> Result<Self> {
        let mut map = Self::new();
        for (a, b) in pairs {
            map.insert(a.as_ref(), b.as_ref())?;
        }
        Ok(map)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, normalized: &str) -> Option<&str> {
        self.map.get(normalized).map(String::as_str)
    }
}

/// Reads an `alias<TAB>canonical` redirect table.
pub fn load_redirects(path: &Path) -> Result<RedirectMap> {
    let text = read_text(path)?;
    let mut map = RedirectMap::new();
    for (line_no, line) in data_lines(&text) {
        let mut fields = line.split('\t');
        let (Some(alias), Some(target), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(path, line_no, "expected alias<TAB>canonical"));
        };
        map.insert(alias, target)
            .map_err(|e| Error::parse(path, line_no, e.to_string()))?;
    }
    Ok(map)
}

/// Normalizes `raw` and resolves it through `redirects`.
///
/// Scheme and host are lowercased, default ports and fragments dropped, and
/// a bare `/` path removed. Strings without a scheme are read as `http://`.
/// Redirects are followed up to [`MAX_REDIRECT_HOPS`] times; a revisited URL
/// is a cycle. The result is a fixed point of this function.
pub fn canonicalize_url(raw: &str, redirects: Option<&RedirectMap>) -> Result<String> {
    let mut current = normalize(raw)?;
    let Some(redirects) = redirects else {
        return Ok(current);
    };
    let mut seen = HashSet::new();
    seen.insert(current.clone());
    let mut hops = 0;
    while let Some(next) = redirects.get(&current) {
        if !seen.insert(next.to_owned()) {
            return Err(Error::Url {
                raw: raw.to_owned(),
                reason: "redirect cycle".into(),
            });
        }
        hops += 1;
        if hops > MAX_REDIRECT_HOPS {
            return Err(Error::Url {
                raw: raw.to_owned(),
                reason: format!("more than {MAX_REDIRECT_HOPS} redirect hops"),
            });
        }
        current = next.to_owned();
    }
    Ok(current)
}

fn normalize(raw: &str) -> Result<String> {
    let reject = |reason: &str| Error::Url {
        raw: raw.to_owned(),
        reason: reason.to_owned(),
    };
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(reject("empty"));
    }
    let parsed = if trimmed.contains("://") {
        Url::parse(trimmed)
    } else {
        Url::parse(&format!("http://{trimmed}"))
    }
    .map_err(|e| reject(&e.to_string()))?;

    if !matches!(parsed.scheme(), "http" | "https") {
        return Err(reject("unsupported scheme"));
    }
    if parsed.host_str().is_none_or(str::is_empty) {
        return Err(reject("missing host"));
    }
    if !parsed.username().is_empty() || parsed.password().is_some() {
        return Err(reject("embedded credentials"));
    }
    let mut parsed = parsed;
    parsed.set_fragment(None);
    let mut out = String::from(parsed);
    if parsed_path_is_root(&out) {
        out.pop();
    }
    Ok(out)
}

// True when the serialized url ends in the root path with no query.
fn parsed_path_is_root(serialized: &str) -> bool {
    let Some(rest) = serialized.split_once("://").map(|(_, r)| r) else {
        return false;
    };
    !rest.contains('?') && rest.find('/') == Some(rest.len() - 1)
}
