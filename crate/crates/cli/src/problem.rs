//! The JSON problem file: polynomial, digits, and optional limits.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::CliError;
use ratile_core::dynamics::{validate_digits_with, DigitSet, DEFAULT_ADDRESS_LIMIT};
use ratile_core::exactnum::{validate_spec_i64, LaurentElem, PolynomialSpec};
use ratile_core::tiles::{TileContext, TreeOptions, DEFAULT_NODE_LIMIT};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub max_depth: Option<usize>,
    pub node_limit: Option<usize>,
    pub address_limit: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// `a_0, …, a_n`, ascending.
    pub coefficients: Vec<i64>,
    /// Digits as Laurent polynomials in `a`, e.g. `"a - 1"`.
    pub digits: Vec<String>,
    #[serde(default)]
    pub m_override: Option<i32>,
    #[serde(default)]
    pub limits: Option<Limits>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub spec: PolynomialSpec,
    pub digits: DigitSet,
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::invalid("path", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::invalid("problem file", e))
    }

    pub fn validate(self) -> Result<Problem, CliError> {
        let spec = validate_spec_i64(&self.coefficients).map_err(|e| CliError::invalid("coefficients", e))?;
        let mut raw = Vec::with_capacity(self.digits.len());
        for (i, d) in self.digits.iter().enumerate() {
            let v: LaurentElem = d.parse().map_err(|e| CliError::invalid(format!("digits[{i}]"), e))?;
            raw.push(v);
        }
        let digits = validate_digits_with(&spec, &raw, self.m_override).map_err(|e| CliError::invalid("digits", e))?;
        Ok(Problem { file: self, spec, digits })
    }
}

impl Problem {
    /// Reads a problem file; `ex1`, `ex2` and `ex3` name the worked examples unless such a file exists.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        if !path.exists() {
            if let Some(file) = path.to_str().and_then(builtin) {
                return file.validate();
            }
        }
        ProblemFile::read(path)?.validate()
    }

    pub fn context(&self) -> Result<TileContext, CliError> {
        Ok(TileContext::new(&self.spec, &self.digits)?)
    }

    fn limits(&self) -> Limits {
        self.file.limits.clone().unwrap_or_default()
    }

    pub fn tree_options(&self) -> TreeOptions {
        TreeOptions { lookahead: None, node_limit: self.limits().node_limit.unwrap_or(DEFAULT_NODE_LIMIT) }
    }

    pub fn address_limit(&self) -> u128 {
        self.limits().address_limit.map_or(DEFAULT_ADDRESS_LIMIT, u128::from)
    }

    /// Rejects depths above the file's `max_depth`.
    pub fn check_depth(&self, depth: usize) -> Result<(), CliError> {
        match self.limits().max_depth {
            Some(max) if depth > max => {
                Err(CliError::invalid("depth", format!("{depth} exceeds limits.max_depth = {max}")))
            }
            _ => Ok(()),
        }
    }
}

/// The three worked examples: `α = 3/2`, `2α² + 2α + 3 = 0`, and `α = 4/3`.
pub fn builtin(name: &str) -> Option<ProblemFile> {
    let (coefficients, digits): (Vec<i64>, Vec<&str>) = match name {
        "ex1" => (vec![-3, 2], vec!["0", "1", "2"]),
        "ex2" => (vec![3, 2, 2], vec!["0", "1", "2"]),
        "ex3" => (vec![-4, 3], vec!["0", "1", "2", "a - 1"]),
        _ => return None,
    };
    Some(ProblemFile {
        coefficients,
        digits: digits.into_iter().map(String::from).collect(),
        m_override: None,
        limits: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_name_the_field() {
        let e = ProblemFile::parse(r#"{"coefficients": [-3, 2], "digits": ["0", "1", "1"]}"#)
            .unwrap()
            .validate()
            .unwrap_err();
        assert!(matches!(&e, CliError::Invalid { field, .. } if field == "digits"));
        let e = ProblemFile::parse(r#"{"coefficients": [1, 2], "digits": ["0"]}"#).unwrap().validate().unwrap_err();
        assert!(matches!(&e, CliError::Invalid { field, .. } if field == "coefficients"));
        let e = ProblemFile::parse(r#"{"coefficients": [-3, 2], "digits": ["0", "1", "2 +"]}"#)
            .unwrap()
            .validate()
            .unwrap_err();
        assert!(matches!(&e, CliError::Invalid { field, .. } if field == "digits[2]"));
        let e = ProblemFile::parse(r#"{"coefficients": [-3, 2]}"#).unwrap_err();
        assert!(e.to_string().contains("digits"));
    }

    #[test]
    fn builtins_validate() {
        for name in ["ex1", "ex2", "ex3"] {
            builtin(name).unwrap().validate().unwrap();
        }
    }
}
