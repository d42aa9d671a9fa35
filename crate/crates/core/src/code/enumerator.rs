use std::fmt;
use std::str::FromStr;

use super::{LinearCode, WeightWindow};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeType {
    /// Singly-even.
    TypeI,
    /// Doubly-even.
    TypeII,
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeType::TypeI => "I",
            CodeType::TypeII => "II",
        })
    }
}

impl FromStr for CodeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "TypeI" => Ok(CodeType::TypeI),
            "II" | "TypeII" => Ok(CodeType::TypeII),
            other => Err(Error::Parse(format!("unknown code type {other:?}"))),
        }
    }
}

/// Which length-72 weight enumerator a code follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnumeratorFamily {
    W72_1,
    W72_2,
    TypeII72,
    NotLength72,
}

impl fmt::Display for EnumeratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnumeratorFamily::W72_1 => "W72_1",
            EnumeratorFamily::W72_2 => "W72_2",
            EnumeratorFamily::TypeII72 => "TypeII72",
            EnumeratorFamily::NotLength72 => "NotLength72",
        })
    }
}

impl FromStr for EnumeratorFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "W72_1" => Ok(EnumeratorFamily::W72_1),
            "W72_2" => Ok(EnumeratorFamily::W72_2),
            "TypeII72" => Ok(EnumeratorFamily::TypeII72),
            "NotLength72" => Ok(EnumeratorFamily::NotLength72),
            other => Err(Error::Parse(format!("unknown enumerator family {other:?}"))),
        }
    }
}

/// Parameters read off the partial weight distribution.
///
/// Type I, length 72: `A12 = 2*beta`, `A14 = 8640 - 64*gamma` (W72_1) or
/// `7616 - 64*gamma` (W72_2). Type II, length 72: `A12 = 4398 + alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumeratorParams {
    pub code_type: CodeType,
    pub family: EnumeratorFamily,
    pub gamma: i64,
    pub beta: i64,
    pub alpha: i64,
}

impl EnumeratorParams {
    /// `(gamma, beta)` for Type I; `(0, alpha)` for Type II.
    pub fn key_values(&self) -> (i64, i64) {
        match self.code_type {
            CodeType::TypeI => (self.gamma, self.beta),
            CodeType::TypeII => (0, self.alpha),
        }
    }
}

/// Doubly-even iff every generator row has weight divisible by four, which
/// suffices once the rows are pairwise orthogonal.
pub fn classify_type(window: &WeightWindow, code: &LinearCode) -> CodeType {
    let singly = window.nonzero().any(|(w, _)| w % 4 == 2);
    if !singly && code.is_self_orthogonal() && code.generator().rows().iter().all(|r| r.weight() % 4 == 0) {
        CodeType::TypeII
    } else {
        CodeType::TypeI
    }
}

/// Upper bound on the minimum distance of a self-dual code of even length `n`.
pub fn extremal_bound(n: usize, code_type: CodeType) -> usize {
    let base = 4 * (n / 24);
    match code_type {
        CodeType::TypeI if n % 24 == 22 => base + 6,
        _ => base + 4,
    }
}

const W1_A14: i64 = 8640;
const W1_A16: i64 = 124_281;
const W2_A14: i64 = 7616;
const W2_A16: i64 = 134_521;
const II_A12: i64 = 4398;
const II_A16: i64 = 197_073;

/// Extracts `(gamma, beta)` or `alpha` from the window of a length-72
/// self-dual code. Needs weights through 14; weight 16 separates the two
/// Type I families when both are arithmetically possible.
pub fn enumerator_params(window: &WeightWindow, code_type: CodeType) -> Result<EnumeratorParams> {
    if window.length() != 72 {
        return Ok(EnumeratorParams {
            code_type,
            family: EnumeratorFamily::NotLength72,
            gamma: 0,
            beta: 0,
            alpha: 0,
        });
    }
    if window.max_weight() < 14 {
        return Err(Error::EnumeratorMismatch(format!(
            "window reaches weight {}, need at least 14",
            window.max_weight()
        )));
    }
    if let Some((w, c)) = window.nonzero().find(|&(w, _)| w < 12) {
        return Err(Error::EnumeratorMismatch(format!("A{w} = {c}, minimum distance below 12")));
    }
    let a = |w: usize| window.count(w) as i64;
    let a16 = (window.max_weight() >= 16).then(|| a(16));

    match code_type {
        CodeType::TypeII => {
            if a(14) != 0 {
                return Err(Error::EnumeratorMismatch(format!("doubly-even code with A14 = {}", a(14))));
            }
            let alpha = a(12) - II_A12;
            if let Some(a16) = a16 {
                if a16 != II_A16 - 12 * alpha {
                    return Err(Error::EnumeratorMismatch(format!(
                        "A16 = {a16}, expected {} for alpha = {alpha}",
                        II_A16 - 12 * alpha
                    )));
                }
            }
            Ok(EnumeratorParams {
                code_type,
                family: EnumeratorFamily::TypeII72,
                gamma: 0,
                beta: 0,
                alpha,
            })
        }
        CodeType::TypeI => {
            if a(12) % 2 != 0 {
                return Err(Error::EnumeratorMismatch(format!("A12 = {} is odd", a(12))));
            }
            let beta = a(12) / 2;
            let candidates: Vec<(EnumeratorFamily, i64, i64)> = [
                (EnumeratorFamily::W72_1, W1_A14, W1_A16),
                (EnumeratorFamily::W72_2, W2_A14, W2_A16),
            ]
            .into_iter()
            .filter_map(|(family, c14, c16)| {
                let diff = c14 - a(14);
                (diff >= 0 && diff % 64 == 0).then_some((family, diff / 64, c16))
            })
            .collect();
            let chosen = match a16 {
                Some(a16) => candidates
                    .iter()
                    .find(|&&(_, gamma, c16)| a16 == c16 - 24 * beta + 384 * gamma)
                    .copied(),
                None if candidates.len() > 1 => return Err(Error::EnumeratorAmbiguous),
                None => candidates.first().copied(),
            };
            let (family, gamma, _) = chosen.ok_or_else(|| {
                Error::EnumeratorMismatch(format!(
                    "A12 = {}, A14 = {}, A16 = {:?} fit neither Type I enumerator",
                    a(12),
                    a(14),
                    a16
                ))
            })?;
            Ok(EnumeratorParams {
                code_type,
                family,
                gamma,
                beta,
                alpha: 0,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn window72(pairs: &[(usize, u64)], max_weight: usize) -> WeightWindow {
        let mut counts = vec![0; max_weight + 1];
        for &(w, c) in pairs {
            counts[w] = c;
        }
        WeightWindow::from_counts(72, max_weight, counts)
    }

    #[test]
    fn extremal_bounds() {
        assert_eq!(extremal_bound(72, CodeType::TypeII), 16);
        assert_eq!(extremal_bound(72, CodeType::TypeI), 16);
        assert_eq!(extremal_bound(22, CodeType::TypeI), 6);
        assert_eq!(extremal_bound(24, CodeType::TypeI), 8);
        assert_eq!(extremal_bound(46, CodeType::TypeI), 10);
    }

    #[test]
    fn type_i_family_one() {
        let w = window72(&[(12, 330), (14, 8640), (16, 120_321)], 16);
        let p = enumerator_params(&w, CodeType::TypeI).unwrap();
        assert_eq!((p.family, p.gamma, p.beta), (EnumeratorFamily::W72_1, 0, 165));
    }

    #[test]
    fn type_i_gamma_36() {
        let w = window72(&[(12, 1074), (14, 6336)], 14);
        assert!(matches!(enumerator_params(&w, CodeType::TypeI), Err(Error::EnumeratorAmbiguous)));
        let a16 = 124_281 - 24 * 537 + 384 * 36;
        let w = window72(&[(12, 1074), (14, 6336), (16, a16)], 16);
        let p = enumerator_params(&w, CodeType::TypeI).unwrap();
        assert_eq!((p.family, p.gamma, p.beta), (EnumeratorFamily::W72_1, 36, 537));
    }

    #[test]
    fn type_i_family_two_needs_a16() {
        // gamma = 20 in W72_2 gives A14 = 6336, which is also W72_1 with gamma = 36
        let beta = 300;
        let a16_w2 = (134_521 - 24 * beta + 384 * 20) as u64;
        let w = window72(&[(12, 600), (14, 6336)], 14);
        assert!(matches!(enumerator_params(&w, CodeType::TypeI), Err(Error::EnumeratorAmbiguous)));
        let w = window72(&[(12, 600), (14, 6336), (16, a16_w2)], 16);
        let p = enumerator_params(&w, CodeType::TypeI).unwrap();
        assert_eq!((p.family, p.gamma, p.beta), (EnumeratorFamily::W72_2, 20, 300));
        // the two families' A16 predictions differ by 4096 for the same A14
        let a16_w1 = 124_281 - 24 * beta + 384 * 36;
        assert_eq!(a16_w2 as i64 - a16_w1, 4096);
    }

    #[test]
    fn type_ii_alpha() {
        let w = window72(&[(12, 4398), (16, 197_073)], 16);
        let p = enumerator_params(&w, CodeType::TypeII).unwrap();
        assert_eq!((p.family, p.alpha), (EnumeratorFamily::TypeII72, 0));
    }

    #[test]
    fn mismatches() {
        let w = window72(&[(12, 330), (14, 8641)], 14);
        assert!(matches!(enumerator_params(&w, CodeType::TypeI), Err(Error::EnumeratorMismatch(_))));
        let w = window72(&[(10, 3), (12, 330), (14, 8640)], 14);
        assert!(enumerator_params(&w, CodeType::TypeI).is_err());
        let w = window72(&[(12, 330), (14, 8640), (16, 1)], 16);
        assert!(enumerator_params(&w, CodeType::TypeI).is_err());
        let w = window72(&[(12, 330)], 12);
        assert!(enumerator_params(&w, CodeType::TypeI).is_err());
    }

    #[test]
    fn not_length_72() {
        let w = WeightWindow::from_counts(8, 4, vec![0, 0, 0, 0, 14]);
        let p = enumerator_params(&w, CodeType::TypeII).unwrap();
        assert_eq!(p.family, EnumeratorFamily::NotLength72);
    }

    #[test]
    fn classify_examples() {
        let hamming = LinearCode::from_generator(
            &BitMatrix::from_binary_rows("11110000\n00111100\n00001111\n01010101").unwrap(),
        )
        .unwrap();
        let w = super::super::weight_window(&hamming, 4).unwrap();
        assert_eq!(classify_type(&w, &hamming), CodeType::TypeII);
        let mut all = vec![0u64; 9];
        hamming.for_each_codeword(|c| all[c.weight()] += 1);
        assert!(all.iter().enumerate().all(|(w, &c)| c == 0 || w % 4 == 0));

        let rep = LinearCode::from_generator(&BitMatrix::from_binary_rows("11").unwrap()).unwrap();
        let w = super::super::weight_window(&rep, 1).unwrap();
        assert_eq!(classify_type(&w, &rep), CodeType::TypeI);
    }
}
