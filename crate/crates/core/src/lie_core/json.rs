//! Canonical JSON form of a [`GradedAlgebra`]. Brackets appear for `i < j` in
//! basis order, terms in basis order, coefficients as `"p/q"` or `"p"`.

use serde::{Deserialize, Serialize};

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::parse_scalar;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BasisJson {
    pub name: String,
    pub degree: i32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermJson {
    pub name: String,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct BracketJson {
    pub left: String,
    pub right: String,
    pub value: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct AlgebraJson {
    pub basis: Vec<BasisJson>,
    pub brackets: Vec<BracketJson>,
}

impl GradedAlgebra {
    pub fn to_json_value(&self) -> AlgebraJson {
        let basis = self
            .basis()
            .iter()
            .map(|b| BasisJson {
                name: b.name.clone(),
                degree: b.degree,
            })
            .collect();
        let brackets = self
            .structure_constants()
            .iter()
            .map(|(&(i, j), v)| BracketJson {
                left: self.name(i).to_string(),
                right: self.name(j).to_string(),
                value: v
                    .iter()
                    .map(|(t, c)| TermJson {
                        name: self.name(*t).to_string(),
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect();
        AlgebraJson { basis, brackets }
    }

    /// Pretty-printed canonical JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_value(doc: &AlgebraJson) -> Result<Self> {
        let basis = doc.basis.iter().map(|b| (b.name.clone(), b.degree)).collect();
        let mut brackets = Vec::with_capacity(doc.brackets.len());
        for b in &doc.brackets {
            let mut terms = Vec::with_capacity(b.value.len());
            for t in &b.value {
                let c = parse_scalar(&t.coeff)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
                terms.push((t.name.clone(), c));
            }
            brackets.push((b.left.clone(), b.right.clone(), terms));
        }
        GradedAlgebra::build_owned(basis, brackets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraJson = serde_json::from_str(text)?;
        Self::from_json_value(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::frac;

    #[test]
    fn coefficients_in_lowest_terms() {
        let a = GradedAlgebra::build(
            &[("P", -1), ("Q", -1), ("N", -2)],
            &[("Q", "P", vec![("N", frac(4, 6))])],
        )
        .unwrap();
        let doc = a.to_json_value();
        assert_eq!(doc.brackets[0].left, "P");
        assert_eq!(doc.brackets[0].value[0].coeff, "-2/3");
        let again = GradedAlgebra::from_json(&a.to_json()).unwrap();
        assert_eq!(again.to_json(), a.to_json());
    }

    #[test]
    fn bad_coefficient_is_a_parse_error() {
        let text = r#"{"basis":[{"name":"A","degree":-1},{"name":"B","degree":-1},{"name":"C","degree":-2}],
            "brackets":[{"left":"A","right":"B","value":[{"name":"C","coeff":"x"}]}]}"#;
        assert!(matches!(GradedAlgebra::from_json(text), Err(Error::Parse(_))));
    }
}
