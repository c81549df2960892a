//! JSON interchange format for algebras.
//!
//! ```json
//! { "arity": 2, "dim": 3, "labels": ["x", "x1", "x2"],
//!   "brackets": [ { "args": [2, 3], "value": [ { "index": 1, "coeff": "1" } ] } ] }
//! ```
//!
//! Indices are 1-based, `args` strictly increasing, coefficients are
//! rationals written as `"p"` or `"p/q"`.

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use super::NLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub arity: usize,
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub value: Vec<Coefficient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub index: usize,
    pub coeff: String,
}

pub(crate) fn serialize_vector<S: Serializer>(v: &Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

impl NLieAlgebra {
    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let dim = file.dim;
        let labels = if file.labels.is_empty() {
            (1..=dim).map(|i| format!("e{i}")).collect()
        } else if file.labels.len() == dim {
            file.labels.clone()
        } else {
            return Err(Error::Malformed(format!("{} labels for dimension {dim}", file.labels.len())));
        };
        let mut brackets = Vec::with_capacity(file.brackets.len());
        for entry in &file.brackets {
            if entry.args.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::Malformed(format!("bracket arguments {:?} out of range 1..={dim}", entry.args)));
            }
            let args: Vec<usize> = entry.args.iter().map(|i| i - 1).collect();
            let mut value = linalg::zero_vector(dim);
            for c in &entry.value {
                if c.index == 0 || c.index > dim {
                    return Err(Error::Malformed(format!("coefficient index {} out of range 1..={dim}", c.index)));
                }
                value[c.index - 1] += rational::parse(&c.coeff)?;
            }
            brackets.push((args, value));
        }
        NLieAlgebra::new(file.arity, labels, brackets)
    }

    pub fn to_file(&self) -> AlgebraFile {
        let brackets = self
            .constants
            .iter()
            .map(|(args, value)| BracketEntry {
                args: args.iter().map(|i| i + 1).collect(),
                value: value
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| Coefficient { index: i + 1, coeff: rational::format(c) })
                    .collect(),
            })
            .collect();
        AlgebraFile { arity: self.arity, dim: self.dim(), labels: self.labels.clone(), brackets }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_file_roundtrip() {
        let h = NLieAlgebra::heisenberg(2, 1).unwrap();
        let text = h.to_json();
        let back = NLieAlgebra::from_json(&text).unwrap();
        assert_eq!(back.constants(), h.constants());
        assert_eq!(back.labels(), h.labels());
    }

    #[test]
    fn parses_fractions_and_rejects_bad_input() {
        let text = r#"{"arity":2,"dim":2,"brackets":[{"args":[1,2],"value":[{"index":2,"coeff":"-3/6"}]}]}"#;
        let a = NLieAlgebra::from_json(text).unwrap();
        assert_eq!(rational::format(&a.constants()[&vec![0, 1]][1]), "-1/2");
        let bad_order = r#"{"arity":2,"dim":2,"brackets":[{"args":[2,1],"value":[]}]}"#;
        assert!(NLieAlgebra::from_json(bad_order).is_err());
        let bad_coeff = r#"{"arity":2,"dim":2,"brackets":[{"args":[1,2],"value":[{"index":1,"coeff":"x"}]}]}"#;
        assert!(NLieAlgebra::from_json(bad_coeff).is_err());
        assert!(NLieAlgebra::from_json("{").is_err());
    }
}
