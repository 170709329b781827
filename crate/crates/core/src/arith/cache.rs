//! Process-wide factorization cache, optionally backed by a flat file of
//! `n<TAB>sign<TAB>p:e,p:e,...` lines.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Mutex, RwLock};

use super::{Factorization, Int};

pub struct FactorCache {
    map: Mutex<HashMap<Int, Factorization>>,
    file: Option<Mutex<File>>,
}

static GLOBAL: RwLock<Option<FactorCache>> = RwLock::new(None);

impl FactorCache {
    pub fn in_memory() -> Self {
        FactorCache {
            map: Mutex::new(HashMap::new()),
            file: None,
        }
    }

    /// Reads existing lines (malformed ones are skipped) and opens for append.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut map = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for line in reader.lines() {
                if let Some((n, f)) = parse_line(&line?) {
                    map.insert(n, f);
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(FactorCache {
            map: Mutex::new(map),
            file: Some(Mutex::new(file)),
        })
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: &Int) -> Option<Factorization> {
        self.map.lock().unwrap().get(n).cloned()
    }

    pub fn insert(&self, n: &Int, f: &Factorization) {
        let fresh = self
            .map
            .lock()
            .unwrap()
            .insert(n.clone(), f.clone())
            .is_none();
        if let (true, Some(file)) = (fresh, &self.file) {
            let line = format_line(n, f);
            // one write per record keeps concurrent appends whole
            let _ = file.lock().unwrap().write_all(line.as_bytes());
        }
    }
}

pub fn format_line(n: &Int, f: &Factorization) -> String {
    let parts: Vec<String> = f.factors.iter().map(|(p, e)| format!("{p}:{e}")).collect();
    let sign = if f.sign < 0 { "-1" } else { "+1" };
    format!("{n}\t{sign}\t{}\n", parts.join(","))
}

pub fn parse_line(line: &str) -> Option<(Int, Factorization)> {
    let mut cols = line.trim_end().split('\t');
    let n: Int = cols.next()?.parse().ok()?;
    let sign: i8 = match cols.next()? {
        "+1" | "1" => 1,
        "-1" => -1,
        _ => return None,
    };
    let mut factors = Vec::new();
    let body = cols.next().unwrap_or("");
    if !body.is_empty() {
        for part in body.split(',') {
            let (p, e) = part.split_once(':')?;
            factors.push((p.parse().ok()?, e.parse().ok()?));
        }
    }
    let f = Factorization { sign, factors };
    (f.value() == n).then_some((n, f))
}

/// Installs the process-wide cache. `None` keeps it in memory only.
pub fn enable_cache(path: Option<&Path>) -> io::Result<()> {
    let cache = match path {
        Some(p) => FactorCache::open(p)?,
        None => FactorCache::in_memory(),
    };
    *GLOBAL.write().unwrap() = Some(cache);
    Ok(())
}

pub fn disable_cache() {
    *GLOBAL.write().unwrap() = None;
}

pub(super) fn lookup(n: &Int) -> Option<Factorization> {
    GLOBAL.read().unwrap().as_ref().and_then(|c| c.get(n))
}

pub(super) fn store(n: &Int, f: &Factorization) {
    if let Some(c) = GLOBAL.read().unwrap().as_ref() {
        c.insert(n, f);
    }
}
