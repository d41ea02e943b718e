use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{tensor, ComplexMatrix, C64};

/// Absolute tolerance on `|tr A|`, `|tr B|` for feasible points.
pub const TRACE_TOL: f64 = 1e-12;
/// Absolute tolerance on `‖A‖²_F + ‖B‖²_F − 1/d`.
pub const NORM_TOL: f64 = 1e-12;

/// A pair `(A, B)` of traceless `d x d` matrices. Normalized points also
/// satisfy `‖A‖²_F + ‖B‖²_F = 1/d`; unnormalized ones carry any scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointRecord", into = "PointRecord")]
pub struct FeasiblePoint {
    d: usize,
    a: ComplexMatrix,
    b: ComplexMatrix,
    normalized: bool,
}

fn check_pair(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!("A is {0}x{0} but B is {1}x{1}", a.rows(), b.rows())));
    }
    if a.rows() < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {}", a.rows())));
    }
    Ok(a.rows())
}

fn check_traceless(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    let (ta, tb) = (a.trace().norm(), b.trace().norm());
    if ta > TRACE_TOL || tb > TRACE_TOL {
        return Err(Error::Infeasible(format!("|tr A| = {ta:.3e}, |tr B| = {tb:.3e}")));
    }
    Ok(())
}

impl FeasiblePoint {
    /// Validates both trace and norm constraints.
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        let d = check_pair(&a, &b)?;
        check_traceless(&a, &b)?;
        let norm = a.frobenius_norm_sq() + b.frobenius_norm_sq();
        let target = 1.0 / d as f64;
        if (norm - target).abs() > NORM_TOL {
            return Err(Error::Infeasible(format!("‖A‖² + ‖B‖² = {norm:.15} but 1/d = {target:.15}")));
        }
        Ok(Self { d, a, b, normalized: true })
    }

    /// Traceless pair without the norm constraint.
    pub fn traceless(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        let d = check_pair(&a, &b)?;
        check_traceless(&a, &b)?;
        Ok(Self { d, a, b, normalized: false })
    }

    pub(crate) fn from_parts_unchecked(a: ComplexMatrix, b: ComplexMatrix, normalized: bool) -> Self {
        Self { d: a.rows(), a, b, normalized }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `‖A‖²_F + ‖B‖²_F`.
    pub fn norm_sq(&self) -> f64 {
        self.a.frobenius_norm_sq() + self.b.frobenius_norm_sq()
    }

    pub fn into_parts(self) -> (ComplexMatrix, ComplexMatrix) {
        (self.a, self.b)
    }
}

/// Removes the traces and rescales so that `‖A‖²_F + ‖B‖²_F = 1/d`.
pub fn project_to_feasible(a0: &ComplexMatrix, b0: &ComplexMatrix) -> Result<FeasiblePoint> {
    let (a, b) = centered(a0, b0)?;
    let d = a.rows();
    let total = a.frobenius_norm_sq() + b.frobenius_norm_sq();
    let scale_in = a0.frobenius_norm_sq() + b0.frobenius_norm_sq();
    if total == 0.0 || total <= 1e-28 * scale_in {
        return Err(Error::Degenerate("both matrices are multiples of the identity".into()));
    }
    let s = (1.0 / (d as f64 * total)).sqrt();
    Ok(FeasiblePoint::from_parts_unchecked(a.scale_real(s), b.scale_real(s), true))
}

/// Removes the traces only; the result carries the inputs' scale.
pub fn remove_traces(a0: &ComplexMatrix, b0: &ComplexMatrix) -> Result<FeasiblePoint> {
    let (a, b) = centered(a0, b0)?;
    Ok(FeasiblePoint::from_parts_unchecked(a, b, false))
}

fn centered(a0: &ComplexMatrix, b0: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let d = check_pair(a0, b0)?;
    Ok((remove_trace(a0, d), remove_trace(b0, d)))
}

pub(crate) fn remove_trace(m: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let shift = m.trace() / d as f64;
    let mut out = m.clone();
    for i in 0..d {
        out[(i, i)] -= shift;
    }
    out
}

/// `X = A ⊗ I + I ⊗ B`.
pub fn assemble_x(p: &FeasiblePoint) -> ComplexMatrix {
    let id = ComplexMatrix::identity(p.d);
    &tensor(&p.a, &id) + &tensor(&id, &p.b)
}

/// `(3d − 4)/d²`.
pub fn bound(d: usize) -> f64 {
    let d = d as f64;
    (3.0 * d - 4.0) / (d * d)
}

/// Scale-free form `((3d − 4)/d) (‖A‖²_F + ‖B‖²_F)`.
pub fn scaled_bound(p: &FeasiblePoint) -> f64 {
    let d = p.d as f64;
    (3.0 * d - 4.0) / d * p.norm_sq()
}

/// Wire form: `{"d": 4, "A": [[re, im], ...], "B": [...]}`, row-major.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub d: usize,
    #[serde(rename = "A")]
    pub a: Vec<[f64; 2]>,
    #[serde(rename = "B")]
    pub b: Vec<[f64; 2]>,
}

fn to_pairs(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    m.as_slice().iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(d: usize, pairs: &[[f64; 2]]) -> Result<ComplexMatrix> {
    ComplexMatrix::from_vec(d, d, pairs.iter().map(|&[re, im]| C64::new(re, im)).collect())
}

impl From<FeasiblePoint> for PointRecord {
    fn from(p: FeasiblePoint) -> Self {
        Self { d: p.d, a: to_pairs(&p.a), b: to_pairs(&p.b) }
    }
}

impl TryFrom<PointRecord> for FeasiblePoint {
    type Error = Error;

    fn try_from(r: PointRecord) -> Result<Self> {
        let a = from_pairs(r.d, &r.a)?;
        let b = from_pairs(r.d, &r.b)?;
        match FeasiblePoint::new(a.clone(), b.clone()) {
            Ok(p) => Ok(p),
            Err(Error::Infeasible(_)) => FeasiblePoint::traceless(a, b),
            Err(e) => Err(e),
        }
    }
}
