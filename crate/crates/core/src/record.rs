//! Code origins, neighbour provenance and the one-line record format.
//!
//! A record is a single line of space-separated `key=value` fields, e.g.
//!
//! ```text
//! fingerprint=800..,400.. type=I family=W72_1 gamma=0 beta=165 d=12 counts=12:330,14:8640 new=1 origin=G1:0a1b2c3d4 chain=- parent=- depth=0 discovered=0 run=0 iteration=0 virus=0
//! ```

use std::fmt;
use std::str::FromStr;

use crate::analysis::{certify_auto, Certificate};
use crate::code::{CodeType, EnumeratorFamily, LinearCode, MinDistance};
use crate::construct::{build_generator, BlockSeed, GeneratorFamily};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::neighbour::chain_end;

/// Where a chain starts: a family seed or an explicit generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSource {
    Seed { family: GeneratorFamily, seed: BlockSeed },
    Matrix(BitMatrix),
}

impl CodeSource {
    pub fn build(&self) -> Result<LinearCode> {
        match self {
            CodeSource::Seed { family, seed } => build_generator(*family, seed),
            CodeSource::Matrix(m) => LinearCode::from_generator(m),
        }
    }

    pub fn from_code(code: &LinearCode) -> Self {
        CodeSource::Matrix(code.generator().clone())
    }
}

impl fmt::Display for CodeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSource::Seed { family, seed } => write!(f, "{family}:{}", seed.to_hex()),
            CodeSource::Matrix(m) => write!(f, "mat:{}:{}", m.ncols(), m.to_hex_rows().join(",")),
        }
    }
}

/// `G<i>:<9 hex digits>` or `mat:<columns>:<hex row>,<hex row>,...`.
impl FromStr for CodeSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("mat:") {
            let (cols, rows) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected mat:<columns>:<rows>, got {s:?}")))?;
            let cols: usize = cols
                .parse()
                .map_err(|_| Error::Parse(format!("bad column count {cols:?}")))?;
            let rows: Vec<&str> = rows.split(',').filter(|r| !r.is_empty()).collect();
            return Ok(CodeSource::Matrix(BitMatrix::from_hex_rows(cols, &rows)?));
        }
        let (family, hex) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected G<i>:<seed> or mat:..., got {s:?}")))?;
        let family: GeneratorFamily = family.parse()?;
        let seed = BlockSeed::from_hex(hex, family.block_kind())?;
        Ok(CodeSource::Seed { family, seed })
    }
}

/// A start code plus the neighbour vectors applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub origin: CodeSource,
    pub chain: Vec<BitVector>,
    /// Fingerprint of the code just before the last step.
    pub parent: Option<String>,
}

impl Provenance {
    pub fn origin(origin: CodeSource) -> Self {
        Self {
            origin,
            chain: Vec::new(),
            parent: None,
        }
    }

    pub fn depth(&self) -> usize {
        self.chain.len()
    }

    pub fn extended(&self, x: BitVector, parent_fingerprint: String) -> Self {
        let mut chain = self.chain.clone();
        chain.push(x);
        Self {
            origin: self.origin.clone(),
            chain,
            parent: Some(parent_fingerprint),
        }
    }

    pub fn rebuild(&self) -> Result<LinearCode> {
        chain_end(&self.origin.build()?, &self.chain)
    }
}

/// One certified code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeRecord {
    pub fingerprint: String,
    pub code_type: CodeType,
    pub family: EnumeratorFamily,
    pub gamma: i64,
    /// `beta` for Type I, `alpha` for Type II.
    pub beta: i64,
    pub d: usize,
    /// Nonzero `(w, A_w)` of the certifying window.
    pub counts: Vec<(usize, u64)>,
    pub is_new: bool,
    pub provenance: Provenance,
    /// Deterministic discovery ordinal within its producer.
    pub discovered: u64,
    pub run: usize,
    pub iteration: usize,
    pub virus: usize,
}

impl CodeRecord {
    pub fn from_certificate(
        code: &LinearCode,
        cert: &Certificate,
        provenance: Provenance,
        discovered: u64,
    ) -> Result<Self> {
        let params = cert.params.clone()?;
        let d = cert
            .min_distance
            .exact()
            .ok_or_else(|| Error::EnumeratorMismatch("no codeword inside the window".into()))?;
        let (gamma, beta) = params.key_values();
        Ok(Self {
            fingerprint: code.fingerprint(),
            code_type: params.code_type,
            family: params.family,
            gamma,
            beta,
            d,
            counts: cert.window.nonzero().collect(),
            is_new: false,
            provenance,
            discovered,
            run: 0,
            iteration: 0,
            virus: 0,
        })
    }

    pub fn key(&self) -> crate::search::RegistryKey {
        crate::search::RegistryKey {
            code_type: self.code_type,
            family: self.family,
            gamma: self.gamma,
            beta: self.beta,
        }
    }

    /// Rebuilds the code from its provenance and checks it matches.
    pub fn revalidate(&self) -> Result<LinearCode> {
        let fail = |m: String| Err(Error::Revalidation(m));
        let code = self.provenance.rebuild()?;
        if code.fingerprint() != self.fingerprint {
            return fail("fingerprint differs from rebuilt code".into());
        }
        if !code.is_self_dual() {
            return fail("rebuilt code is not self-dual".into());
        }
        let cert = certify_auto(&code)?;
        if cert.min_distance != MinDistance::Exact(self.d) {
            return fail(format!("d = {:?}, recorded {}", cert.min_distance, self.d));
        }
        let params = cert.params?;
        if (params.code_type, params.family, params.key_values()) != (self.code_type, self.family, (self.gamma, self.beta))
        {
            return fail(format!(
                "parameters {} {} {:?} differ from recorded {} {} ({}, {})",
                params.code_type,
                params.family,
                params.key_values(),
                self.code_type,
                self.family,
                self.gamma,
                self.beta
            ));
        }
        Ok(code)
    }
}

impl fmt::Display for CodeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.provenance;
        let counts: Vec<String> = self.counts.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        let chain: Vec<String> = p.chain.iter().map(BitVector::to_hex).collect();
        let dash = |v: Vec<String>| if v.is_empty() { "-".to_string() } else { v.join(",") };
        let beta_key = match self.code_type {
            CodeType::TypeI => "beta",
            CodeType::TypeII => "alpha",
        };
        write!(
            f,
            "fingerprint={} type={} family={} gamma={} {beta_key}={} d={} counts={} new={} origin={} chain={} parent={} depth={} discovered={} run={} iteration={} virus={}",
            self.fingerprint,
            self.code_type,
            self.family,
            self.gamma,
            self.beta,
            self.d,
            dash(counts),
            u8::from(self.is_new),
            p.origin,
            dash(chain),
            p.parent.as_deref().unwrap_or("-"),
            p.depth(),
            self.discovered,
            self.run,
            self.iteration,
            self.virus
        )
    }
}

impl FromStr for CodeRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for token in line.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("field without '=': {token:?}")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| Error::Parse(format!("missing field {k}")));
        fn num<T: FromStr>(k: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::Parse(format!("bad {k} value {v:?}")))
        }
        let code_type: CodeType = get("type")?.parse()?;
        let beta = match code_type {
            CodeType::TypeI => num("beta", get("beta")?)?,
            CodeType::TypeII => num("alpha", get("alpha")?)?,
        };
        let counts = match get("counts")? {
            "-" => Vec::new(),
            s => s
                .split(',')
                .map(|pair| {
                    let (w, c) = pair
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("bad count {pair:?}")))?;
                    Ok((num("weight", w)?, num("count", c)?))
                })
                .collect::<Result<_>>()?,
        };
        let fingerprint = get("fingerprint")?.to_string();
        let origin: CodeSource = get("origin")?.parse()?;
        let length = match &origin {
            CodeSource::Seed { .. } => 72,
            CodeSource::Matrix(m) => m.ncols(),
        };
        let chain = match get("chain")? {
            "-" => Vec::new(),
            s => s
                .split(',')
                .map(|h| BitVector::from_hex(length, h))
                .collect::<Result<_>>()?,
        };
        let parent = match get("parent")? {
            "-" => None,
            s => Some(s.to_string()),
        };
        let provenance = Provenance { origin, chain, parent };
        let depth: usize = num("depth", get("depth")?)?;
        if depth != provenance.depth() {
            return Err(Error::Parse(format!(
                "depth {depth} but chain has {} steps",
                provenance.depth()
            )));
        }
        Ok(Self {
            fingerprint,
            code_type,
            family: get("family")?.parse()?,
            gamma: num("gamma", get("gamma")?)?,
            beta,
            d: num("d", get("d")?)?,
            counts,
            is_new: get("new")? == "1",
            provenance,
            discovered: num("discovered", get("discovered")?)?,
            run: num("run", get("run")?)?,
            iteration: num("iteration", get("iteration")?)?,
            virus: num("virus", get("virus")?)?,
        })
    }
}
