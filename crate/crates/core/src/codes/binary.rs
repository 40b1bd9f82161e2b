use crate::codes::{default_tol, CodeError, RealCode};
use crate::linalg::Matrix;
use crate::Scalar;

const MAX_KAPPA: usize = 12;
const MAX_LEN: usize = 64;

/// Generator matrix of a binary linear code, one bit string per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatrix {
    len: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    /// Rows written as strings over `{0, 1}`, e.g. `["1100", "0011"]`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self, CodeError> {
        let mut out = Vec::with_capacity(rows.len());
        let mut len = None;
        for row in rows {
            let row = row.as_ref();
            if *len.get_or_insert(row.len()) != row.len() {
                return Err(CodeError::BadBinaryCode("rows differ in length".into()));
            }
            let mut mask = 0u64;
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => mask |= 1 << j,
                    _ => return Err(CodeError::BadBinaryCode(format!("unexpected symbol {ch:?}"))),
                }
            }
            out.push(mask);
        }
        let len = len.unwrap_or(0);
        if len == 0 || len > MAX_LEN {
            return Err(CodeError::BadBinaryCode(format!("row length must be in 1..={MAX_LEN}")));
        }
        Ok(BinaryMatrix { len, rows: out })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Linearly independent rows spanning the same code (elimination over F₂).
    fn basis(&self) -> Vec<u64> {
        let mut basis: Vec<u64> = Vec::new();
        for &row in &self.rows {
            let mut v = row;
            for &b in &basis {
                let lead = b.trailing_zeros();
                if v >> lead & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                let lead = v.trailing_zeros();
                for b in basis.iter_mut() {
                    if *b >> lead & 1 == 1 {
                        *b ^= v;
                    }
                }
                basis.push(v);
            }
        }
        basis
    }
}

fn orthogonal_to_all(basis: &[u64], word: u64) -> bool {
    basis.iter().all(|&b| (b & word).count_ones() % 2 == 0)
}

/// Parity-check matrix of the real code induced by the binary code `B`.
///
/// `B` must contain the all-ones word and its dual must have minimum distance
/// greater than 2. The columns are `(1/√r)·((−1)^{x_j})_j` for the codewords
/// `x ∈ B` with `x_0 = 0`, in lexicographic order of `x`.
pub fn binary_induced_parity_check<T: Scalar>(b: &BinaryMatrix) -> Result<Matrix<T>, CodeError> {
    let r = b.len();
    let basis = b.basis();
    let kappa = basis.len();
    if kappa == 0 {
        return Err(CodeError::BadBinaryCode("code is zero".into()));
    }
    if kappa > MAX_KAPPA {
        return Err(CodeError::BadBinaryCode(format!("dimension {kappa} exceeds {MAX_KAPPA}")));
    }
    let words: Vec<u64> = (0u64..1 << kappa)
        .map(|c| {
            basis
                .iter()
                .enumerate()
                .filter(|(t, _)| c >> t & 1 == 1)
                .fold(0, |acc, (_, &v)| acc ^ v)
        })
        .collect();
    let ones = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
    if !words.contains(&ones) {
        return Err(CodeError::BadBinaryCode("all-ones word is not a codeword".into()));
    }
    for i in 0..r {
        for j in i..r {
            let w = (1u64 << i) | (1u64 << j);
            if orthogonal_to_all(&basis, w) {
                return Err(CodeError::BadBinaryCode(format!(
                    "dual code contains a word of weight {}",
                    w.count_ones()
                )));
            }
        }
    }
    let key = |x: &u64| (0..r).map(|j| x >> j & 1).collect::<Vec<_>>();
    let mut cols: Vec<u64> = words.into_iter().filter(|x| x & 1 == 0).collect();
    cols.sort_by_key(key);
    let s = T::one() / T::from_usize_exact(r).sqrt();
    let mut h = Matrix::zeros(r, cols.len());
    for (c, x) in cols.iter().enumerate() {
        for j in 0..r {
            h[(j, c)] = if x >> j & 1 == 1 { -s } else { s };
        }
    }
    Ok(h)
}

/// The `[2^{κ-1}, 2^{κ-1} - r]` real code induced by the binary `[r, κ]` code `B`.
pub fn make_binary_induced<T: Scalar>(b: &BinaryMatrix) -> Result<RealCode<T>, CodeError> {
    let h = binary_induced_parity_check::<T>(b)?;
    if h.cols() <= h.rows() {
        return Err(CodeError::BadBinaryCode(format!(
            "induced length {} does not exceed redundancy {}",
            h.cols(),
            h.rows()
        )));
    }
    let label: Vec<String> = b
        .rows
        .iter()
        .map(|&m| (0..b.len).map(|j| if m >> j & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    RealCode::from_parity_check(format!("binary({})", label.join(",")), h, default_tol())
}
