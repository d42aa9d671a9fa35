use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::code::{CodeType, EnumeratorFamily};
use crate::error::{Error, Result};

/// `(type, family, gamma, beta)`; Type II stores `alpha` in the `beta` slot
/// with `gamma = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegistryKey {
    pub code_type: CodeType,
    pub family: EnumeratorFamily,
    pub gamma: i64,
    pub beta: i64,
}

impl fmt::Display for RegistryKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.code_type, self.family, self.gamma, self.beta)
    }
}

impl FromStr for RegistryKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [t, fam, g, b] = parts[..] else {
            return Err(Error::Parse(format!("expected type,family,gamma,beta, got {s:?}")));
        };
        let num = |v: &str| v.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {v:?}")));
        Ok(Self {
            code_type: t.parse()?,
            family: fam.parse()?,
            gamma: num(g)?,
            beta: num(b)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeySource {
    Baseline,
    ThisRun,
}

/// Known parameter keys. Append-only; a key is new iff it is not in the
/// baseline.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    keys: BTreeMap<RegistryKey, KeySource>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `type,family,gamma,beta` lines; blank lines and `#` comments
    /// are skipped.
    pub fn from_baseline_str(text: &str) -> Result<Self> {
        let mut r = Self::new();
        r.extend_baseline(text)?;
        Ok(r)
    }

    pub fn extend_baseline(&mut self, text: &str) -> Result<()> {
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            self.keys.insert(line.parse()?, KeySource::Baseline);
        }
        Ok(())
    }

    pub fn contains(&self, key: &RegistryKey) -> bool {
        self.keys.contains_key(key)
    }

    pub fn in_baseline(&self, key: &RegistryKey) -> bool {
        self.keys.get(key) == Some(&KeySource::Baseline)
    }

    pub fn is_new(&self, key: &RegistryKey) -> bool {
        !self.in_baseline(key)
    }

    /// Records a key found during a run; returns whether it was unseen.
    pub fn insert_found(&mut self, key: RegistryKey) -> bool {
        if self.keys.contains_key(&key) {
            return false;
        }
        self.keys.insert(key, KeySource::ThisRun);
        true
    }

    pub fn baseline_len(&self) -> usize {
        self.keys.values().filter(|&&s| s == KeySource::Baseline).count()
    }

    pub fn found(&self) -> impl Iterator<Item = &RegistryKey> {
        self.keys
            .iter()
            .filter(|(_, &s)| s == KeySource::ThisRun)
            .map(|(k, _)| k)
    }

    /// Number of keys found this run per `gamma` (Type I only).
    pub fn new_per_gamma(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for k in self.found().filter(|k| k.code_type == CodeType::TypeI) {
            *out.entry(k.gamma).or_insert(0) += 1;
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let set: BTreeSet<_> = self.keys.keys().collect();
        set.iter().map(|k| format!("{k}\n")).collect()
    }
}
