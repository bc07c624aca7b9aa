//! Exact ancient solutions on the strip built by separation of variables,
//! their linear spans, and growth classification.
//!
//! A separated solution is `coeff * exp(alpha * x0) * exp(rho * t) * psi(x')`
//! where `psi` is a cross-section Dirichlet mode with eigenvalue `mu` and
//! `rho = alpha^2 - mu`.  It solves the heat equation on the strip for all
//! t <= 0 and vanishes on the lateral boundary.

use crate::error::{Error, Result};
use crate::geometry::{box_eigenpairs, Mode, SpaceTimeGrid, StripDomain};
use crate::linalg::Matrix;
use serde::{Deserialize, Serialize};

/// One separated ancient solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedSolution {
    pub coeff: f64,
    pub alpha: f64,
    pub mode: Mode,
    /// temporal rate, always `alpha^2 - mode.eigenvalue`
    pub rho: f64,
}

impl SeparatedSolution {
    pub fn new(coeff: f64, alpha: f64, mode: Mode) -> Self {
        let rho = alpha * alpha - mode.eigenvalue;
        SeparatedSolution { coeff, alpha, mode, rho }
    }

    /// First-mode solution on the given domain.
    pub fn fundamental(domain: &StripDomain, coeff: f64, alpha: f64) -> Result<Self> {
        let mode = Mode::new(domain, &vec![1; domain.cross_dim()])?;
        Ok(SeparatedSolution::new(coeff, alpha, mode))
    }

    /// Closed-form value; does not validate the arguments.
    #[inline]
    pub fn value(&self, lengths: &[f64], t: f64, x0: f64, x_cross: &[f64]) -> f64 {
        self.coeff
            * (self.alpha * x0 + self.rho * t).exp()
            * self.mode.value(lengths, x_cross)
    }

    /// Checked evaluation: rejects positive times and points outside the
    /// closed cross-section.  On the lateral boundary the value is exactly 0.
    pub fn evaluate(&self, domain: &StripDomain, t: f64, x0: f64, x_cross: &[f64]) -> Result<f64> {
        if t > 0.0 {
            return Err(Error::Precondition(format!(
                "ancient solutions are defined for t <= 0 only, got t = {t}"
            )));
        }
        if !domain.contains_cross_closed(x_cross) {
            return Err(Error::Precondition(format!(
                "cross-section point {x_cross:?} outside {:?}",
                domain.lengths()
            )));
        }
        Ok(self.value(domain.lengths(), t, x0, x_cross))
    }

    /// Closed-form sup of |psi| times |coeff|; the witness constant of the
    /// exponential growth bound.
    pub fn witness_constant(&self) -> f64 {
        self.coeff.abs() * self.mode.normalization
    }
}

/// Growth classification of a separated solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GrowthKind {
    /// satisfies `|u| <= C exp(d (|x| + sqrt|t|))` for every `d >= d_min`
    ExponentialMember,
    /// temporal factor `exp(rho t)` with `rho < 0` beats every such bound
    /// as `t -> -infinity`
    NotAncientBounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub kind: GrowthKind,
    /// smallest admissible exponential rate (membership threshold) when member
    pub d_min: Option<f64>,
    /// witness constant |coeff| * sup|psi|
    pub witness: f64,
}

/// Classify by the sign of the temporal rate: membership in the exponential
/// class holds exactly when `rho >= 0` (i.e. `alpha^2 >= mu`), with
/// `d_min = |alpha|`.
pub fn classify_growth(u: &SeparatedSolution) -> GrowthClass {
    if u.rho >= 0.0 {
        GrowthClass {
            kind: GrowthKind::ExponentialMember,
            d_min: Some(u.alpha.abs()),
            witness: u.witness_constant(),
        }
    } else {
        GrowthClass { kind: GrowthKind::NotAncientBounded, d_min: None, witness: u.witness_constant() }
    }
}

/// Finite linear span of separated solutions.  Elements are rows of the
/// coefficient matrix applied to the basis.
#[derive(Debug, Clone)]
pub struct SolutionSpan {
    basis: Vec<SeparatedSolution>,
    coefficients: Matrix,
}

impl SolutionSpan {
    pub fn new(basis: Vec<SeparatedSolution>, coefficients: Matrix) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Precondition("span needs a nonempty basis".into()));
        }
        if coefficients.cols() != basis.len() {
            return Err(Error::Precondition(format!(
                "coefficient matrix has {} columns for {} basis solutions",
                coefficients.cols(),
                basis.len()
            )));
        }
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i].alpha == basis[j].alpha && basis[i].mode.index == basis[j].mode.index {
                    return Err(Error::Precondition(format!(
                        "basis entries {i} and {j} share (alpha, mode)"
                    )));
                }
            }
        }
        let span = SolutionSpan { basis, coefficients };
        span.check_row_rank()?;
        Ok(span)
    }

    /// Span with the basis itself as the elements.
    pub fn from_elements(basis: Vec<SeparatedSolution>) -> Result<Self> {
        let n = basis.len();
        SolutionSpan::new(basis, Matrix::identity(n))
    }

    fn check_row_rank(&self) -> Result<()> {
        let c = &self.coefficients;
        let g = c.mul(&c.transpose());
        let piv = crate::linalg::cholesky_pivots(&g, 1e-10)?;
        if piv.active.iter().any(|a| !a) {
            return Err(Error::Precondition(
                "coefficient matrix is row-rank deficient beyond tolerance".into(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn basis(&self) -> &[SeparatedSolution] {
        &self.basis
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.coefficients
    }

    /// Value of span element `i`.
    pub fn element_value(&self, i: usize, lengths: &[f64], t: f64, x0: f64, x_cross: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (j, b) in self.basis.iter().enumerate() {
            let c = self.coefficients.get(i, j);
            if c != 0.0 {
                acc += c * b.value(lengths, t, x0, x_cross);
            }
        }
        acc
    }

    /// Restrict to a subset of elements (rows), keeping the basis.
    pub fn select_elements(&self, rows: &[usize]) -> Result<SolutionSpan> {
        let mut m = Matrix::zeros(rows.len(), self.basis.len());
        for (new_i, &old_i) in rows.iter().enumerate() {
            for j in 0..self.basis.len() {
                m.set(new_i, j, self.coefficients.get(old_i, j));
            }
        }
        SolutionSpan::new(self.basis.clone(), m)
    }
}

/// Family of first-mode solutions with axial rates equally spaced between
/// the membership threshold `sqrt(mu_1)` and `d`.  Every member belongs to
/// the exponential class with rate at most `d`.
pub fn build_continuum_family(domain: &StripDomain, d: f64, count: usize) -> Result<SolutionSpan> {
    let mu1 = domain.mu1();
    let lo = mu1.sqrt();
    if !(d > lo) {
        return Err(Error::Precondition(format!(
            "probe family needs d > sqrt(mu_1) = {lo:.12}, got d = {d}"
        )));
    }
    if count < 2 {
        return Err(Error::Precondition(format!("family needs at least 2 members, got {count}")));
    }
    let mut basis = Vec::with_capacity(count);
    for i in 0..count {
        let alpha = lo + (d - lo) * i as f64 / (count - 1) as f64;
        basis.push(SeparatedSolution::fundamental(domain, 1.0, alpha)?);
    }
    SolutionSpan::from_elements(basis)
}

/// Probe family for the dimension experiment: the first-mode continuum plus
/// one solution with rate `d` for each higher cross-section mode below the
/// spectral cutoff, `total` members altogether.
pub fn build_probe_family(domain: &StripDomain, d: f64, total: usize) -> Result<SolutionSpan> {
    let modes = box_eigenpairs(domain, d * d)?;
    if modes.is_empty() {
        return Err(Error::Precondition(format!(
            "no cross-section mode fits below d^2 = {}, probe set is empty",
            d * d
        )));
    }
    let higher: Vec<&Mode> = modes.iter().skip(1).collect();
    let n_higher = higher.len().min(total.saturating_sub(2));
    let n_cont = total - n_higher;
    let mut family = build_continuum_family(domain, d, n_cont)?;
    let mut basis = family.basis().to_vec();
    for m in higher.iter().take(n_higher) {
        basis.push(SeparatedSolution::new(1.0, d, (*m).clone()));
    }
    family = SolutionSpan::from_elements(basis)?;
    Ok(family)
}

/// Report of the discrete heat-operator residual of a sampled function.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub h: f64,
    pub tau: f64,
}

/// Max absolute residual of the backward-time / centered-space discrete
/// heat operator applied to `f(t, x0, x1)` sampled on the grid.  First order
/// in the time step and second order in the spacings.
pub fn heat_residual_on_grid(
    grid: &SpaceTimeGrid,
    f: impl Fn(f64, f64, f64) -> f64,
) -> ResidualReport {
    let mut worst = 0.0f64;
    for m in 1..=grid.nt {
        let t = grid.t_at(m);
        let tp = grid.t_at(m - 1);
        for i in 1..grid.n0 {
            let x0 = grid.x0_at(i);
            for j in 1..grid.n1 {
                let x1 = grid.x1_at(j);
                let u = f(t, x0, x1);
                let dt = (u - f(tp, x0, x1)) / grid.tau;
                let dxx = (f(t, x0 + grid.h0, x1) - 2.0 * u + f(t, x0 - grid.h0, x1))
                    / (grid.h0 * grid.h0);
                let dyy =
                    (f(t, x0, x1 + grid.h) - 2.0 * u + f(t, x0, x1 - grid.h)) / (grid.h * grid.h);
                let r = (dt - dxx - dyy).abs();
                if r > worst {
                    worst = r;
                }
            }
        }
    }
    ResidualReport { max_residual: worst, h: grid.h, tau: grid.tau }
}

/// Discrete residual of a separated solution or span element on a grid.
pub fn verify_pde_residual(
    u: &SeparatedSolution,
    domain: &StripDomain,
    grid: &SpaceTimeGrid,
) -> ResidualReport {
    let lengths = domain.lengths().to_vec();
    let u = u.clone();
    heat_residual_on_grid(grid, move |t, x0, x1| u.value(&lengths, t, x0, &[x1]))
}

/// A sample point witnessing failure of a polynomial growth bound.
#[derive(Debug, Clone, Serialize)]
pub struct PolynomialViolation {
    pub t: f64,
    pub x0: f64,
    pub x1: f64,
    pub value: f64,
    pub bound: f64,
    pub radius: f64,
}

/// Search for a point where `|u|` exceeds the degree-`d` polynomial envelope
/// fitted on the smallest cylinder.  For any nonzero separated solution the
/// exponential factor (axial when `rho >= 0`, temporal otherwise) eventually
/// beats every polynomial, so a violation must appear on a large enough
/// cylinder; `None` means the bound held on all sampled cylinders.
pub fn polynomial_bound_violation(
    u: &SeparatedSolution,
    domain: &StripDomain,
    degree: f64,
    fit_radius: f64,
    radii: &[f64],
) -> Option<PolynomialViolation> {
    if u.coeff == 0.0 {
        return None;
    }
    const SAMPLES_1D: usize = 41;
    fn sample_points(r: f64, cross_len: f64) -> Vec<(f64, f64, f64)> {
        let mut pts = Vec::with_capacity(SAMPLES_1D * SAMPLES_1D * 7);
        for it in 0..SAMPLES_1D {
            let t = -r * r * it as f64 / (SAMPLES_1D - 1) as f64;
            for i0 in 0..SAMPLES_1D {
                let x0 = -r + 2.0 * r * i0 as f64 / (SAMPLES_1D - 1) as f64;
                for j in 1..8 {
                    pts.push((t, x0, cross_len * j as f64 / 8.0));
                }
            }
        }
        pts
    }
    let lengths = domain.lengths();
    let envelope = |t: f64, x0: f64, x1: f64| {
        let xn = (x0 * x0 + x1 * x1).sqrt();
        (xn + (-t).max(0.0).sqrt() + 1.0).powf(degree)
    };
    let mut fit_c = 0.0f64;
    for (t, x0, x1) in sample_points(fit_radius, lengths[0]) {
        let ratio = u.value(lengths, t, x0, &[x1]).abs() / envelope(t, x0, x1);
        if ratio > fit_c {
            fit_c = ratio;
        }
    }
    for &r in radii {
        for (t, x0, x1) in sample_points(r, lengths[0]) {
            let v = u.value(lengths, t, x0, &[x1]).abs();
            let bound = fit_c * envelope(t, x0, x1);
            if v > bound * (1.0 + 1e-9) {
                return Some(PolynomialViolation { t, x0, x1, value: v, bound, radius: r });
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Serialization: family documents with full-precision decimals
// ---------------------------------------------------------------------------

/// One family member in the portable JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub coeff: f64,
    pub alpha: f64,
    pub k_index: Vec<usize>,
    pub rho: f64,
}

/// Serializable description of a span whose coefficient matrix is the
/// identity (one record per element).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub lengths: Vec<f64>,
    pub x_trunc: f64,
    pub members: Vec<FamilyRecord>,
}

impl FamilyDocument {
    pub fn from_span(domain: &StripDomain, span: &SolutionSpan) -> FamilyDocument {
        FamilyDocument {
            lengths: domain.lengths().to_vec(),
            x_trunc: domain.x_trunc(),
            members: span
                .basis()
                .iter()
                .map(|u| FamilyRecord {
                    coeff: u.coeff,
                    alpha: u.alpha,
                    k_index: u.mode.index.clone(),
                    rho: u.rho,
                })
                .collect(),
        }
    }

    /// Rebuild the span, recomputing and checking the stored temporal rate.
    pub fn into_span(self) -> Result<(StripDomain, SolutionSpan)> {
        let domain = StripDomain::new(&self.lengths, self.x_trunc)?;
        let mut basis = Vec::with_capacity(self.members.len());
        for (i, rec) in self.members.iter().enumerate() {
            let mode = Mode::new(&domain, &rec.k_index)?;
            let u = SeparatedSolution::new(rec.coeff, rec.alpha, mode);
            if u.rho != rec.rho {
                return Err(Error::CheckFailed(format!(
                    "member {i}: stored rho {} does not equal alpha^2 - mu = {}",
                    rec.rho, u.rho
                )));
            }
            basis.push(u);
        }
        let span = SolutionSpan::from_elements(basis)?;
        Ok((domain, span))
    }
}
