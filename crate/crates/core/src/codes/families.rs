use crate::codes::{default_tol, CodeError, RealCode};
use crate::linalg::Matrix;
use crate::Scalar;

/// The negacyclic `[n, n-2]` MDS code `C(n)`: column `j` of its parity-check
/// matrix is `(cos(jπ/n), sin(jπ/n))`.
pub fn make_negacyclic<T: Scalar>(n: usize) -> Result<RealCode<T>, CodeError> {
    if n <= 2 {
        return Err(CodeError::BadLength { n, min: 3 });
    }
    let alpha = std::f64::consts::PI / n as f64;
    let mut h = Matrix::zeros(2, n);
    for j in 0..n {
        let (s, c) = (j as f64 * alpha).sin_cos();
        h[(0, j)] = T::lit(c);
        h[(1, j)] = T::lit(s);
    }
    RealCode::from_parity_check(format!("neg({n})"), h, default_tol())
}

fn golden<T: Scalar>() -> T {
    T::lit((1.0 + 5f64.sqrt()) / 2.0)
}

/// The `[6, 3]` icosahedral code: parity-check columns are one vertex from
/// each antipodal pair of a regular icosahedron on the unit sphere.
pub fn make_icosahedral<T: Scalar>() -> RealCode<T> {
    let phi = golden::<f64>();
    let rows: [[f64; 6]; 3] = [
        [0.0, phi, 1.0, 0.0, 1.0, -phi],
        [1.0, 0.0, phi, 1.0, -phi, 0.0],
        [phi, 1.0, 0.0, -phi, 0.0, 1.0],
    ];
    let s = 1.0 / (phi + 2.0).sqrt();
    let h = Matrix::from_rows(&rows.map(|r| r.map(|x| T::lit(x * s)).to_vec())).expect("3x6");
    RealCode::from_parity_check("ico", h, default_tol()).expect("icosahedral matrix has rank 3")
}

/// The `[10, 7]` dodecahedral code: parity-check columns are one vertex from
/// each antipodal pair of a regular dodecahedron on the unit sphere.
pub fn make_dodecahedral<T: Scalar>() -> RealCode<T> {
    let phi = golden::<f64>();
    let psi = -1.0 / phi;
    let rows: [[f64; 10]; 3] = [
        [1.0, 1.0, 1.0, 1.0, 0.0, psi, phi, 0.0, -psi, phi],
        [1.0, 1.0, -1.0, -1.0, psi, phi, 0.0, -psi, phi, 0.0],
        [1.0, -1.0, 1.0, -1.0, phi, 0.0, psi, phi, 0.0, -psi],
    ];
    let s = 1.0 / 3f64.sqrt();
    let h = Matrix::from_rows(&rows.map(|r| r.map(|x| T::lit(x * s)).to_vec())).expect("3x10");
    RealCode::from_parity_check("dod", h, default_tol()).expect("dodecahedral matrix has rank 3")
}

/// `[n, n-2]` code whose parity-check matrix has `⌊n/2⌋` copies of `(1, 0)ᵀ`
/// followed by `⌈n/2⌉` copies of `(0, 1)ᵀ`.
pub fn make_axis_replicated<T: Scalar>(n: usize) -> Result<RealCode<T>, CodeError> {
    if n < 2 {
        return Err(CodeError::BadLength { n, min: 2 });
    }
    let mut h = Matrix::zeros(2, n);
    for j in 0..n {
        h[(usize::from(j >= n / 2), j)] = T::one();
    }
    RealCode::from_parity_check(format!("axis({n})"), h, default_tol())
}
