//! Minimum distance, type and enumerator parameters of a self-dual code.

use std::fmt;

use crate::code::{
    classify_type, distance_below, enumerator_params, extremal_bound, weight_window, CodeType, EnumeratorFamily, EnumeratorParams, LinearCode,
    MinDistance, WeightWindow,
};
use crate::error::{Error, Result};

/// Everything read off one weight window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub window: WeightWindow,
    pub min_distance: MinDistance,
    pub code_type: CodeType,
    pub params: std::result::Result<EnumeratorParams, Error>,
}

impl Certificate {
    pub fn radius(&self) -> usize {
        self.window.max_weight() / 2
    }
}

/// Certifies a self-dual code with a window of radius `t`.
pub fn certify(code: &LinearCode, t: usize) -> Result<Certificate> {
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let window = weight_window(code, t)?;
    let code_type = classify_type(&window, code);
    let params = enumerator_params(&window, code_type);
    Ok(Certificate {
        min_distance: window.min_distance(),
        window,
        code_type,
        params,
    })
}

/// Radius 7 (or the dimension, if smaller), widened to 8 when weight 14
/// alone cannot tell the two Type I families apart.
pub fn certify_auto(code: &LinearCode) -> Result<Certificate> {
    let k = code.dimension();
    let cert = certify(code, k.min(7))?;
    if matches!(cert.params, Err(Error::EnumeratorAmbiguous)) && k >= 8 {
        return certify(code, 8);
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Screen {
    /// A nonzero codeword of this weight lies below the floor.
    Below(usize),
    Passed(Certificate),
}

/// Cheap rejection of codes with distance below `floor`, then a full
/// certificate for the survivors.
pub fn screen(code: &LinearCode, floor: usize) -> Result<Screen> {
    if !code.is_self_dual() {
        return Err(Error::NotSelfDual);
    }
    let k = code.dimension();
    if let Some(d) = distance_below(code, floor)? {
        return Ok(Screen::Below(d));
    }
    let cert = if floor / 2 > 7 && k > 7 {
        certify(code, (floor / 2).min(k))?
    } else {
        certify_auto(code)?
    };
    Ok(Screen::Passed(cert))
}

/// Report for an arbitrary code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub fingerprint: String,
    pub length: usize,
    pub dimension: usize,
    pub self_dual: bool,
    pub certificate: Option<Certificate>,
}

impl Analysis {
    /// `t = None` picks the radius automatically.
    pub fn new(code: &LinearCode, t: Option<usize>) -> Result<Self> {
        let self_dual = code.is_self_dual();
        let certificate = match (self_dual, t) {
            (false, _) => None,
            (true, Some(t)) => Some(certify(code, t)?),
            (true, None) => Some(certify(code, code.dimension().min(8))?),
        };
        Ok(Self {
            fingerprint: code.fingerprint(),
            length: code.length(),
            dimension: code.dimension(),
            self_dual,
            certificate,
        })
    }

    pub fn bound(&self) -> Option<usize> {
        self.certificate
            .as_ref()
            .map(|c| extremal_bound(self.length, c.code_type))
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "length={} dimension={}", self.length, self.dimension)?;
        writeln!(f, "self_dual={}", self.self_dual)?;
        let Some(cert) = &self.certificate else {
            return writeln!(f, "fingerprint={}", self.fingerprint);
        };
        let d = match cert.min_distance {
            MinDistance::Exact(d) => d.to_string(),
            MinDistance::Above(b) => format!(">{b}"),
        };
        writeln!(f, "window={} d={} type={}", cert.window.max_weight(), d, cert.code_type)?;
        writeln!(f, "bound={}", self.bound().unwrap_or(0))?;
        let counts: Vec<String> = cert.window.nonzero().map(|(w, c)| format!("A{w}={c}")).collect();
        writeln!(f, "counts={}", if counts.is_empty() { "-".into() } else { counts.join(" ") })?;
        match &cert.params {
            Ok(p) if p.family == EnumeratorFamily::NotLength72 => writeln!(f, "family={}", p.family)?,
            Ok(p) => match p.code_type {
                CodeType::TypeI => writeln!(f, "family={} gamma={} beta={}", p.family, p.gamma, p.beta)?,
                CodeType::TypeII => writeln!(f, "family={} alpha={}", p.family, p.alpha)?,
            },
            Err(e) => writeln!(f, "params_error={e}")?,
        }
        writeln!(f, "fingerprint={}", self.fingerprint)
    }
}
