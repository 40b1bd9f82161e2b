use std::path::Path;

use mheight::codes::{
    make_axis_replicated, make_binary_induced, make_dodecahedral, make_icosahedral, make_negacyclic, random_code,
    BinaryMatrix, CodeFile, EntryDistribution,
};
use mheight::RealCode64;

use crate::CliError;

/// The family behind a selector, kept for closed-form checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Negacyclic(usize),
    NegacyclicDual(usize),
    Other,
}

pub struct Selected {
    pub code: RealCode64,
    pub family: Family,
}

fn count(what: &str, s: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("{what}: `{s}` is not a count")))
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parses `--code`. Families:
///
/// ```text
/// neg:N  neg-dual:N  ico  ico-dual  dod  dod-dual  axis:N
/// binary:ROW,ROW,...  random:N,K  path/to/code.json
/// ```
pub fn select(spec: &str, seed: u64, tol: f64) -> Result<Selected, CliError> {
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let other = |code| Ok(Selected { code, family: Family::Other });
    match family {
        "neg" => {
            let n = count("neg", params)?;
            Ok(Selected { code: make_negacyclic(n).map_err(usage)?, family: Family::Negacyclic(n) })
        }
        "neg-dual" => {
            let n = count("neg-dual", params)?;
            let code = make_negacyclic(n).and_then(|c| c.dual()).map_err(usage)?;
            Ok(Selected { code, family: Family::NegacyclicDual(n) })
        }
        "ico" => other(make_icosahedral()),
        "ico-dual" => other(make_icosahedral().dual().map_err(usage)?),
        "dod" => other(make_dodecahedral()),
        "dod-dual" => other(make_dodecahedral().dual().map_err(usage)?),
        "axis" => other(make_axis_replicated(count("axis", params)?).map_err(usage)?),
        "binary" => {
            let rows: Vec<&str> = params.split(',').collect();
            let b = BinaryMatrix::from_strings(&rows).map_err(usage)?;
            other(make_binary_induced(&b).map_err(usage)?)
        }
        "random" => {
            let (n, k) = params
                .split_once(',')
                .ok_or_else(|| CliError::Usage("random expects `random:N,K`".into()))?;
            let (n, k) = (count("random n", n)?, count("random k", k)?);
            other(random_code(n, k, seed, EntryDistribution::Gaussian).map_err(usage)?)
        }
        _ => load_file(Path::new(spec), tol).map(|code| Selected { code, family: Family::Other }),
    }
}

fn load_file(path: &Path, tol: f64) -> Result<RealCode64, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("`{}` is neither a code family nor a readable file: {e}", path.display())))?;
    let file = CodeFile::from_json(&text).map_err(usage)?;
    file.into_code(tol).map_err(|e| CliError::InvalidCode(e.to_string()))
}
