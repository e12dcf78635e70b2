//! The eigenflag maps. A totally positive `g` has a simple positive spectrum;
//! the flag of its eigenvectors in decreasing eigenvalue order is the Borel
//! `B` in `𝔹_{>0}` containing `g`, the increasing order gives `B'` in
//! `𝔹_{<0}`, and the eigenvector frame is the centralizer torus `B ∩ B'`.
//!
//! Eigen data is exact when the characteristic polynomial splits over `Q`.
//! Otherwise the roots are isolated exactly, refined far below `f64`
//! resolution, and eigenvectors come from inverse iteration; the results are
//! dyadic rationals with a reported residual.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{char_poly, from_f64, rational_roots, to_f64, Rational, SquareMatrix};
use crate::flags::{is_in_b_neg, is_in_b_pos, stabilizes, BorelPoint, FlagPairClass};
use crate::pinning::is_in_g_pos;
use crate::tori::TorusFrame;

/// Bound on `|g v - λ v|_∞ / |v|_∞` on the approximate path.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Smallest allowed gap between approximate eigenvalues.
pub const SEPARATION_TOL: f64 = 1e-9;

/// Eigenvalues in strictly decreasing order and matching eigenvector columns.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    pub values: Vec<Rational>,
    pub vectors: SquareMatrix,
    pub exact: bool,
    /// Largest relative residual over the columns; 0 on the exact path.
    pub residual: f64,
}

impl EigenData {
    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(to_f64).collect()
    }
}

fn require_positive(g: &SquareMatrix) -> Result<()> {
    match is_in_g_pos(g).witness {
        None => Ok(()),
        Some((idx, v)) => Err(Error::Precondition(format!(
            "matrix is not totally positive: minor {idx} = {v}"
        ))),
    }
}

fn shifted(g: &SquareMatrix, lambda: &Rational) -> SquareMatrix {
    let mut m = g.clone();
    for i in 0..g.n() {
        let v = m.get(i, i) - lambda;
        m.set(i, i, v);
    }
    m
}

/// Scales a vector so that its first nonzero entry is 1.
fn normalize_first(v: Vec<Rational>) -> Vec<Rational> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .unwrap_or_else(|| Rational::from_integer(1.into()));
    v.into_iter().map(|x| x / &lead).collect()
}

fn exact_eigenvector(g: &SquareMatrix, lambda: &Rational) -> Result<Vec<Rational>> {
    let mut kernel = shifted(g, lambda).kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::Contradiction(format!(
            "eigenvalue {lambda} has a {}-dimensional eigenspace",
            kernel.len()
        )));
    }
    Ok(normalize_first(kernel.pop().expect("one kernel vector")))
}

fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

/// Two steps of inverse iteration with an almost exact shift, rounded to
/// doubles (kept as exact dyadic rationals).
fn approximate_eigenvector(g: &SquareMatrix, lambda: &Rational) -> Result<Vec<Rational>> {
    let a = shifted(g, lambda);
    let mut x = vec![Rational::from_integer(1.into()); g.n()];
    for _ in 0..2 {
        let y = a
            .solve(&x)
            .map_err(|_| Error::Numerical("shifted matrix is singular".into()))?;
        let m = max_abs(&y);
        if m.is_zero() {
            return Err(Error::Numerical("inverse iteration collapsed".into()));
        }
        x = y.iter().map(|v| from_f64(to_f64(&(v / &m)))).collect::<Result<_>>()?;
    }
    if x.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        x = x.into_iter().map(|v| -v).collect();
    }
    Ok(x)
}

fn relative_residual(g: &SquareMatrix, lambda: &Rational, v: &[Rational]) -> f64 {
    let gv = g.mul_vec(v);
    let r: Vec<Rational> = gv.iter().zip(v).map(|(a, b)| a - lambda * b).collect();
    to_f64(&(max_abs(&r) / max_abs(v)))
}

/// Full eigendecomposition of a totally positive matrix.
pub fn eigen_split(g: &SquareMatrix) -> Result<EigenData> {
    require_positive(g)?;
    let n = g.n();
    let p = char_poly(g);
    let rational = rational_roots(&p);
    if rational.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Contradiction("repeated eigenvalue".into()));
    }

    if rational.len() == n {
        let values: Vec<Rational> = rational.into_iter().rev().collect();
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::Contradiction("non-positive eigenvalue".into()));
        }
        let cols = values
            .iter()
            .map(|l| exact_eigenvector(g, l))
            .collect::<Result<Vec<_>>>()?;
        return Ok(EigenData {
            values,
            vectors: SquareMatrix::from_columns(&cols)?,
            exact: true,
            residual: 0.0,
        });
    }

    if p.square_free().degree() != Some(n) {
        return Err(Error::Contradiction("repeated eigenvalue".into()));
    }
    let intervals = p.isolate_real_roots();
    if intervals.len() != n {
        return Err(Error::Contradiction(format!(
            "only {} of {n} eigenvalues are real",
            intervals.len()
        )));
    }
    let fine = Rational::new(1.into(), num_bigint::BigInt::from(1) << 64usize);
    let mut values = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    let mut residual: f64 = 0.0;
    for iv in intervals.iter().rev() {
        if let Some(exact) = rational.iter().find(|r| &iv.0 < *r && *r <= &iv.1) {
            cols.push(exact_eigenvector(g, exact)?);
            values.push(exact.clone());
            continue;
        }
        let (mut lo, mut hi) = p.refine_root(iv, &fine);
        if lo.is_positive() {
            let rel = &lo * &fine;
            (lo, hi) = p.refine_root(&(lo, hi), &rel);
        }
        let lambda = (lo + hi) / Rational::from_integer(2.into());
        let v = approximate_eigenvector(g, &lambda)?;
        residual = residual.max(relative_residual(g, &lambda, &v));
        cols.push(v);
        values.push(lambda);
    }
    if values.iter().any(|v| !v.is_positive()) {
        return Err(Error::Contradiction("non-positive eigenvalue".into()));
    }
    let gap = values
        .windows(2)
        .map(|w| to_f64(&(&w[0] - &w[1])))
        .fold(f64::INFINITY, f64::min);
    if gap <= SEPARATION_TOL {
        return Err(Error::Numerical(format!(
            "eigenvalue separation {gap:e} below tolerance"
        )));
    }
    if residual.is_nan() || residual >= RESIDUAL_TOL {
        return Err(Error::Numerical(format!("eigen residual {residual:e} above tolerance")));
    }
    Ok(EigenData {
        values,
        vectors: SquareMatrix::from_columns(&cols)?,
        exact: false,
        residual,
    })
}

fn reversed_columns(m: &SquareMatrix) -> SquareMatrix {
    let n = m.n();
    SquareMatrix::from_fn(n, |i, j| m.get(i, n - 1 - j).clone())
}

/// `(B, B')`: flags of eigenvectors in decreasing and increasing eigenvalue
/// order.
pub fn pi_prime(g: &SquareMatrix) -> Result<FlagPairClass> {
    let data = eigen_split(g)?;
    let b = BorelPoint::new(data.vectors.clone())?;
    let b_prime = BorelPoint::new(reversed_columns(&data.vectors))?;
    if data.exact && !(stabilizes(g, &b) && stabilizes(g, &b_prime)) {
        return Err(Error::InvariantViolation("eigenflags are not stable under g".into()));
    }
    FlagPairClass::new(b, b_prime).map_err(|e| Error::InvariantViolation(format!("eigenflag positivity: {e}")))
}

/// The eigenvector frame, i.e. the identity component of the centralizer.
pub fn pi(g: &SquareMatrix) -> Result<TorusFrame> {
    TorusFrame::new(eigen_split(g)?.vectors)
}

/// `g` lies in the Borel of `b`, and `b` is in `𝔹_{>0}`.
pub fn verify_unique_borel(g: &SquareMatrix, b: &BorelPoint) -> bool {
    stabilizes(g, b) && is_in_b_pos(b)
}

/// `g^{-1}` lies in the Borel of `b`, and `b` is in `𝔹_{<0}`.
pub fn verify_unique_borel_neg(g: &SquareMatrix, b: &BorelPoint) -> bool {
    g.inverse().is_ok_and(|inv| stabilizes(&inv, b)) && is_in_b_neg(b)
}

/// Largest strictly-lower entry of `basis^{-1} g basis`, relative to its
/// largest entry: zero exactly when `g` stabilizes the flag.
pub fn stabilization_defect(g: &SquareMatrix, b: &BorelPoint) -> f64 {
    let Ok(inv) = b.basis().inverse() else {
        return f64::INFINITY;
    };
    let m = &(&inv * g) * b.basis();
    let n = m.n();
    let all: Vec<Rational> = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
    let lower: Vec<Rational> = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).clone())
        .collect();
    let scale = max_abs(&all);
    if scale.is_zero() {
        return 0.0;
    }
    to_f64(&(max_abs(&lower) / scale))
}

/// [`verify_unique_borel`] for flags built from approximate eigenvectors.
pub fn verify_unique_borel_within(g: &SquareMatrix, b: &BorelPoint, tol: f64) -> bool {
    is_in_b_pos(b) && stabilization_defect(g, b) <= tol
}

/// [`verify_unique_borel_neg`] for flags built from approximate eigenvectors.
pub fn verify_unique_borel_neg_within(g: &SquareMatrix, b: &BorelPoint, tol: f64) -> bool {
    is_in_b_neg(b) && g.inverse().is_ok_and(|inv| stabilization_defect(&inv, b) <= tol)
}
