use std::fmt;
use std::str::FromStr;

use crate::code::EnumeratorFamily;
use crate::error::{Error, Result};

/// Search parameters. Operator defaults are fixed so runs reproduce exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub population_size: usize,
    pub iterations: usize,
    pub runs: usize,
    pub strong_fraction: f64,
    pub strong_growth: usize,
    pub common_growth: usize,
    pub strong_flips: usize,
    pub common_flips: usize,
    pub master_seed: u64,
    /// Keep only neighbours following this enumerator.
    pub family_filter: Option<EnumeratorFamily>,
    pub distance_floor: usize,
    /// Restrict `x` to vanish on the first half of the coordinates.
    pub half_zero: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            population_size: 1000,
            iterations: 500,
            runs: 50,
            strong_fraction: 0.1,
            strong_growth: 4,
            common_growth: 1,
            strong_flips: 2,
            common_flips: 8,
            master_seed: 0,
            family_filter: None,
            distance_floor: 12,
            half_zero: false,
        }
    }
}

impl SearchConfig {
    /// Sets one field by its name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
        }
        match key {
            "population_size" => self.population_size = parse(key, value)?,
            "iterations" => self.iterations = parse(key, value)?,
            "runs" => self.runs = parse(key, value)?,
            "strong_fraction" => {
                let f: f64 = parse(key, value)?;
                if !(0.0..=1.0).contains(&f) {
                    return Err(Error::Parse(format!("strong_fraction {f} outside [0, 1]")));
                }
                self.strong_fraction = f;
            }
            "strong_growth" => self.strong_growth = parse(key, value)?,
            "common_growth" => self.common_growth = parse(key, value)?,
            "strong_flips" => self.strong_flips = parse(key, value)?,
            "common_flips" => self.common_flips = parse(key, value)?,
            "master_seed" => self.master_seed = parse(key, value)?,
            "family_filter" => {
                self.family_filter = match value {
                    "" | "any" | "none" => None,
                    v => Some(v.parse()?),
                }
            }
            "distance_floor" => self.distance_floor = parse(key, value)?,
            "half_zero" => self.half_zero = parse(key, value)?,
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn strong_count(&self, population: usize) -> usize {
        // tolerate binary rounding in products such as 0.1 * 30
        ((self.strong_fraction * population as f64 - 1e-9).ceil().max(0.0) as usize).min(population)
    }
}

impl FromStr for SearchConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Self::default();
        c.apply_str(s)?;
        Ok(c)
    }
}

impl fmt::Display for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "population_size = {}", self.population_size)?;
        writeln!(f, "iterations = {}", self.iterations)?;
        writeln!(f, "runs = {}", self.runs)?;
        writeln!(f, "strong_fraction = {}", self.strong_fraction)?;
        writeln!(f, "strong_growth = {}", self.strong_growth)?;
        writeln!(f, "common_growth = {}", self.common_growth)?;
        writeln!(f, "strong_flips = {}", self.strong_flips)?;
        writeln!(f, "common_flips = {}", self.common_flips)?;
        writeln!(f, "master_seed = {}", self.master_seed)?;
        match self.family_filter {
            Some(fam) => writeln!(f, "family_filter = {fam}")?,
            None => writeln!(f, "family_filter = any")?,
        }
        writeln!(f, "distance_floor = {}", self.distance_floor)?;
        writeln!(f, "half_zero = {}", self.half_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let c: SearchConfig = "# smoke\npopulation_size = 200\niterations=50\nfamily_filter = W72_1\n"
            .parse()
            .unwrap();
        assert_eq!(c.population_size, 200);
        assert_eq!(c.iterations, 50);
        assert_eq!(c.family_filter, Some(EnumeratorFamily::W72_1));
        assert_eq!(c.runs, 50);
        assert_eq!(c.to_string().parse::<SearchConfig>().unwrap(), c);
        assert_eq!(SearchConfig::default().to_string().parse::<SearchConfig>().unwrap(), SearchConfig::default());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!("population = 3".parse::<SearchConfig>().is_err());
        assert!("runs".parse::<SearchConfig>().is_err());
        assert!("runs = -1".parse::<SearchConfig>().is_err());
        assert!("strong_fraction = 1.5".parse::<SearchConfig>().is_err());
    }

    #[test]
    fn strong_counts() {
        let c = SearchConfig::default();
        assert_eq!(c.strong_count(10), 1);
        assert_eq!(c.strong_count(1000), 100);
        assert_eq!(c.strong_count(11), 2);
        let all = SearchConfig {
            strong_fraction: 1.0,
            ..c
        };
        assert_eq!(all.strong_count(7), 7);
    }
}
