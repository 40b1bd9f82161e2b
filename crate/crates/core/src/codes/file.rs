use serde::{Deserialize, Serialize};

use crate::codes::{CodeError, RealCode};
use crate::linalg::Matrix;
use crate::Scalar;

/// On-disk form of a code.
///
/// ```json
/// { "name": "rep3", "n": 3, "k": 1, "generator": [[1, 1, 1]], "parity_check": null }
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub generator: Option<Vec<Vec<f64>>>,
    pub parity_check: Option<Vec<Vec<f64>>>,
}

impl CodeFile {
    pub fn from_code<T: Scalar>(code: &RealCode<T>) -> Self {
        let rows = |m: &Matrix<T>| m.to_rows().into_iter().map(|r| r.into_iter().map(T::to_f64_lossy).collect()).collect();
        CodeFile {
            name: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            generator: Some(rows(code.generator())),
            parity_check: Some(rows(code.parity_check())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CodeError> {
        serde_json::from_str(text).map_err(|e| CodeError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code file serializes")
    }

    /// Builds the code, enforcing every invariant of [`RealCode`] plus the
    /// declared `n` and `k`.
    pub fn into_code<T: Scalar>(self, tol: T) -> Result<RealCode<T>, CodeError> {
        let n = self.n;
        let load = |rows: Vec<Vec<f64>>, what: &str| -> Result<Matrix<T>, CodeError> {
            if rows.is_empty() {
                return Ok(Matrix::empty(n));
            }
            if rows.iter().any(|r| r.len() != n) {
                return Err(CodeError::File(format!("{what} rows must have n = {n} entries")));
            }
            let rows: Vec<Vec<T>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| T::from_f64(x).ok_or(CodeError::File("entry out of range".into()))).collect())
                .collect::<Result<_, _>>()?;
            Matrix::from_rows(&rows).map_err(|e| CodeError::File(format!("{what}: {e}")))
        };
        let code = match (self.generator, self.parity_check) {
            (None, None) => return Err(CodeError::File("neither generator nor parity_check given".into())),
            (Some(g), None) => RealCode::from_generator(self.name, load(g, "generator")?, tol)?,
            (None, Some(h)) => RealCode::from_parity_check(self.name, load(h, "parity_check")?, tol)?,
            (Some(g), Some(h)) => {
                RealCode::from_matrices(self.name, load(g, "generator")?, load(h, "parity_check")?, tol)?
            }
        };
        if code.k() != self.k {
            return Err(CodeError::Invalid(format!("declared k = {} but matrices give k = {}", self.k, code.k())));
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::make_icosahedral;

    #[test]
    fn round_trip() {
        let c = make_icosahedral::<f64>();
        let text = CodeFile::from_code(&c).to_json();
        let back: RealCode<f64> = CodeFile::from_json(&text).unwrap().into_code(1e-9).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn generator_only() {
        let f = CodeFile::from_json(r#"{"name":"rep3","n":3,"k":1,"generator":[[1,1,1]],"parity_check":null}"#).unwrap();
        let c: RealCode<f64> = f.into_code(1e-9).unwrap();
        assert_eq!(c.r(), 2);
    }

    #[test]
    fn rejects_violations() {
        let bad_k = r#"{"name":"x","n":3,"k":2,"generator":[[1,1,1]],"parity_check":null}"#;
        assert!(CodeFile::from_json(bad_k).unwrap().into_code::<f64>(1e-9).is_err());
        let not_orth = r#"{"name":"x","n":2,"k":1,"generator":[[1,1]],"parity_check":[[1,0]]}"#;
        assert!(CodeFile::from_json(not_orth).unwrap().into_code::<f64>(1e-9).is_err());
        let ragged = r#"{"name":"x","n":3,"k":1,"generator":[[1,1]],"parity_check":null}"#;
        assert!(CodeFile::from_json(ragged).unwrap().into_code::<f64>(1e-9).is_err());
        let neither = r#"{"name":"x","n":3,"k":1,"generator":null,"parity_check":null}"#;
        assert!(CodeFile::from_json(neither).unwrap().into_code::<f64>(1e-9).is_err());
        let nan = r#"{"name":"x","n":1,"k":1,"generator":[[1e400]],"parity_check":null}"#;
        assert!(CodeFile::from_json(nan).is_err() || CodeFile::from_json(nan).unwrap().into_code::<f64>(1e-9).is_err());
    }
}
