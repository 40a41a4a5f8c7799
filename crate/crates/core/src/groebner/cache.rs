//! On-disk cache of reduced bases.
//!
//! One file per key `(degree label, generator hash, order)`. Writes go to a
//! temporary file in the cache directory and are renamed into place, so
//! readers only ever see complete files; writers for the same key are
//! serialised within the process.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use super::buchberger::{buchberger_with, BuchbergerOptions, GroebnerBasis};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::text::parse_multipoly;

pub const CACHE_FORMAT_VERSION: u32 = 1;
const HEADER: &str = "# alvero groebner basis cache";

#[derive(Debug)]
pub struct BasisCache {
    dir: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

fn hash_hex(data: &str) -> String {
    let digest = Sha256::digest(data.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn generator_hashes(gens: &[MultiPoly]) -> Vec<String> {
    gens.iter().map(|g| hash_hex(&g.to_string())).collect()
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(BasisCache { dir, locks: Mutex::new(HashMap::new()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(&self, degree: usize, gens: &[MultiPoly], order: &MonomialOrder) -> String {
        let nvars = gens.first().map(MultiPoly::nvars).unwrap_or(0);
        let joined = format!("{nvars}\n{}", generator_hashes(gens).join("\n"));
        let order_tag: String = order.tag().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        format!("d{degree}-{order_tag}-{}", &hash_hex(&joined)[..24])
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    fn lock_for(&self, key: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().expect("cache lock map poisoned");
        locks.entry(key.to_string()).or_default().clone()
    }

    /// Returns the cached basis if present and consistent with the inputs.
    pub fn load(&self, degree: usize, gens: &[MultiPoly], order: &MonomialOrder) -> Result<Option<GroebnerBasis>> {
        let path = self.path(&self.key(degree, gens, order));
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        Ok(parse_cache_file(&text, gens, order))
    }

    pub fn store(&self, degree: usize, gb: &GroebnerBasis) -> Result<()> {
        let key = self.key(degree, &gb.generators_in, &gb.order);
        let lock = self.lock_for(&key);
        let _guard = lock.lock().expect("cache key lock poisoned");
        let mut body = String::new();
        body.push_str(HEADER);
        body.push('\n');
        body.push_str(&format!("format-version: {CACHE_FORMAT_VERSION}\n"));
        body.push_str(&format!("degree: {degree}\n"));
        body.push_str(&format!("order: {}\n", gb.order.tag()));
        body.push_str(&format!("nvars: {}\n", gb.nvars()));
        for h in generator_hashes(&gb.generators_in) {
            body.push_str(&format!("generator-hash: {h}\n"));
        }
        body.push_str(&format!("basis: {}\n", gb.basis.len()));
        for p in &gb.basis {
            body.push_str(&p.to_string());
            body.push('\n');
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(body.as_bytes())?;
        tmp.persist(self.path(&key)).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }

    /// Cached Buchberger: reuse a stored basis, otherwise compute and store.
    /// Certificate requests bypass the cache since cofactors are not stored.
    pub fn buchberger(
        cache: Option<&BasisCache>,
        degree: usize,
        gens: &[MultiPoly],
        order: &MonomialOrder,
        opts: &BuchbergerOptions<'_>,
    ) -> Result<GroebnerBasis> {
        let cache = match cache {
            Some(c) if !opts.certificates => c,
            _ => return buchberger_with(gens, order, opts),
        };
        if let Some(gb) = cache.load(degree, gens, order)? {
            return Ok(gb);
        }
        let gb = buchberger_with(gens, order, opts)?;
        cache.store(degree, &gb)?;
        Ok(gb)
    }
}

fn parse_cache_file(text: &str, gens: &[MultiPoly], order: &MonomialOrder) -> Option<GroebnerBasis> {
    let mut lines = text.lines();
    if lines.next()? != HEADER {
        return None;
    }
    let mut field = |name: &str| -> Option<String> {
        let line = lines.next()?;
        line.strip_prefix(name)?.strip_prefix(": ").map(str::to_string)
    };
    if field("format-version")?.parse::<u32>().ok()? != CACHE_FORMAT_VERSION {
        return None;
    }
    field("degree")?;
    if field("order")? != order.tag() {
        return None;
    }
    let nvars: usize = field("nvars")?.parse().ok()?;
    if gens.iter().any(|g| g.nvars() != nvars) {
        return None;
    }
    for h in generator_hashes(gens) {
        if field("generator-hash")? != h {
            return None;
        }
    }
    let count: usize = field("basis")?.parse().ok()?;
    let basis = lines
        .take(count)
        .map(|l| parse_multipoly(l, nvars).ok())
        .collect::<Option<Vec<_>>>()?;
    if basis.len() != count {
        return None;
    }
    Some(GroebnerBasis::from_parts(nvars, gens.to_vec(), basis, order.clone()))
}
