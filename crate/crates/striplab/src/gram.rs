//! Space-time inner products over parabolic cylinders and Gram matrices of
//! solution families.
//!
//! The pairing of two locally square integrable functions over the cylinder
//! of radius `r` is the plain integral of their product; the energy of a
//! single solution is the pairing with itself and is non-decreasing in `r`.
//! For separated solutions every pairing factors into three one-dimensional
//! integrals and is evaluated in closed form; sampled inputs fall back to
//! tensor-product Simpson quadrature.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::quadrature::{integrate_separable3, Axis};
use crate::solutions::{SeparatedSolution, SolutionSpan};
use crate::geometry::StripDomain;
use serde::{Deserialize, Serialize};

/// How a Gram matrix (or a single pairing) was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GramMethod {
    ClosedForm,
    Quadrature,
}

impl std::fmt::Display for GramMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GramMethod::ClosedForm => write!(f, "closed-form"),
            GramMethod::Quadrature => write!(f, "quadrature"),
        }
    }
}

/// Time factor: integral of `exp(rate * t)` over `(-r^2, 0]`, with the exact
/// degenerate limit `r^2` at rate zero.
pub fn time_factor(rate: f64, r: f64) -> f64 {
    if rate == 0.0 {
        r * r
    } else {
        (1.0 - (-rate * r * r).exp()) / rate
    }
}

/// Axial factor: integral of `exp(rate * x0)` over `(-r, r)`, with the exact
/// degenerate limit `2r` at rate zero.
pub fn axial_factor(rate: f64, r: f64) -> f64 {
    if rate == 0.0 {
        2.0 * r
    } else {
        ((rate * r).exp() - (-rate * r).exp()) / rate
    }
}

/// Closed-form pairing of two separated solutions over the cylinder of
/// radius `r`: product of the time factor, the axial factor, and the
/// cross-section overlap (1 for equal modes, 0 otherwise).
pub fn inner_product_closed(u: &SeparatedSolution, v: &SeparatedSolution, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Precondition(format!("radius must be positive: {r}")));
    }
    if u.mode.index != v.mode.index {
        return Ok(0.0);
    }
    Ok(u.coeff * v.coeff * time_factor(u.rho + v.rho, r) * axial_factor(u.alpha + v.alpha, r))
}

/// Closed-form energy of a separated solution over the cylinder of radius `r`.
pub fn energy_closed(u: &SeparatedSolution, r: f64) -> Result<f64> {
    inner_product_closed(u, u, r)
}

/// Closed-form cylinder integral of the product of gradients.  For equal
/// modes this equals `(alpha_u * alpha_v + mu)` times the pairing (the
/// cross-section factor integrates by parts onto the eigenvalue); distinct
/// modes pair to zero in both the value and the gradient.
pub fn gradient_inner_product_closed(
    u: &SeparatedSolution,
    v: &SeparatedSolution,
    r: f64,
) -> Result<f64> {
    if u.mode.index != v.mode.index {
        return Ok(0.0);
    }
    let pairing = inner_product_closed(u, v, r)?;
    Ok((u.alpha * v.alpha + u.mode.eigenvalue) * pairing)
}

/// Quadrature resolution (cell counts per axis) for cylinder pairings.
#[derive(Debug, Clone, Copy)]
pub struct QuadResolution {
    pub t_cells: usize,
    pub x0_cells: usize,
    pub x1_cells: usize,
}

impl QuadResolution {
    pub fn new(t_cells: usize, x0_cells: usize, x1_cells: usize) -> Self {
        QuadResolution { t_cells, x0_cells, x1_cells }
    }

    pub fn halved(&self) -> Self {
        QuadResolution {
            t_cells: (self.t_cells / 2).max(2),
            x0_cells: (self.x0_cells / 2).max(2),
            x1_cells: (self.x1_cells / 2).max(2),
        }
    }
}

impl Default for QuadResolution {
    fn default() -> Self {
        QuadResolution { t_cells: 512, x0_cells: 512, x1_cells: 64 }
    }
}

/// Tensor Simpson pairing of two separated solutions over the cylinder.
///
/// The integrand factors per axis, so per-axis samples are precomputed and
/// combined in the same ascending-index reduction as a direct sweep.  The
/// axial width must be resolved by at least 16 cells.
pub fn inner_product_quadrature(
    domain: &StripDomain,
    u: &SeparatedSolution,
    v: &SeparatedSolution,
    r: f64,
    res: QuadResolution,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Precondition(format!("radius must be positive: {r}")));
    }
    if domain.cross_dim() != 1 {
        return Err(Error::Precondition(
            "quadrature pairings support one-dimensional cross-sections".into(),
        ));
    }
    if r > domain.x_trunc() {
        return Err(Error::Precondition(format!(
            "cylinder radius {r} exceeds the axial window {}",
            domain.x_trunc()
        )));
    }
    if res.x0_cells < 16 {
        return Err(Error::Precondition(format!(
            "axial width needs at least 16 cells, got {}",
            res.x0_cells
        )));
    }
    let t_axis = Axis::new(-r * r, 0.0, res.t_cells)?;
    let x0_axis = Axis::new(-r, r, res.x0_cells)?;
    let len = domain.lengths()[0];
    let x1_axis = Axis::new(0.0, len, res.x1_cells)?;
    let rate_t = u.rho + v.rho;
    let rate_x = u.alpha + v.alpha;
    let ft: Vec<f64> = t_axis.nodes.iter().map(|t| (rate_t * t).exp()).collect();
    let f0: Vec<f64> = x0_axis.nodes.iter().map(|x| (rate_x * x).exp()).collect();
    let f1: Vec<f64> = x1_axis
        .nodes
        .iter()
        .map(|x| u.mode.value(domain.lengths(), &[*x]) * v.mode.value(domain.lengths(), &[*x]))
        .collect();
    Ok(u.coeff * v.coeff * integrate_separable3(&t_axis, &x0_axis, &x1_axis, &ft, &f0, &f1))
}

/// Gram matrix of a solution span at one radius.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub radius: f64,
    pub snapped_radius: f64,
    pub method: GramMethod,
    pub basis_ids: Vec<String>,
    pub entries: Matrix,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    /// Smallest and largest eigenvalue of the entries.
    pub fn eigen_range(&self) -> Result<(f64, f64)> {
        let (vals, _) = linalg::sym_eigen(&self.entries)?;
        Ok((*vals.last().unwrap(), vals[0]))
    }

    /// Structural invariants: finite entries, symmetry to 1e-14 relative,
    /// PSD down to `-1e-10` of the largest eigenvalue.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.entries.get(i, j).is_finite() {
                    return Err(Error::Numeric(format!("gram entry ({i},{j}) is not finite")));
                }
            }
        }
        let defect = self.entries.symmetry_defect();
        if defect > 1e-14 {
            return Err(Error::CheckFailed(format!(
                "gram matrix asymmetry {defect:e} exceeds 1e-14 relative"
            )));
        }
        let (min, max) = self.eigen_range()?;
        if min < -1e-10 * max.max(0.0) {
            return Err(Error::CheckFailed(format!(
                "gram matrix is not PSD: min eigenvalue {min:e} vs max {max:e}"
            )));
        }
        Ok(())
    }
}

fn basis_ids(span: &SolutionSpan) -> Vec<String> {
    (0..span.len()).map(|i| format!("u{i}")).collect()
}

/// Assemble the Gram matrix of the span elements at radius `r`.
///
/// Pairings are computed on the basis and pushed through the span's
/// coefficient matrix.  The realized radius and the method are recorded so
/// that downstream consumers can refuse to mix methods.
pub fn gram(
    domain: &StripDomain,
    span: &SolutionSpan,
    r: f64,
    method: GramMethod,
    res: Option<QuadResolution>,
) -> Result<GramMatrix> {
    if span.is_empty() {
        return Err(Error::Precondition("gram of an empty span".into()));
    }
    let n = span.basis().len();
    let mut base = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = match method {
                GramMethod::ClosedForm => {
                    inner_product_closed(&span.basis()[i], &span.basis()[j], r)?
                }
                GramMethod::Quadrature => inner_product_quadrature(
                    domain,
                    &span.basis()[i],
                    &span.basis()[j],
                    r,
                    res.unwrap_or_default(),
                )?,
            };
            base.set(i, j, v);
            base.set(j, i, v);
        }
    }
    let entries = span.coefficients().congruence(&base);
    let g = GramMatrix { radius: r, snapped_radius: r, method, basis_ids: basis_ids(span), entries };
    g.validate()?;
    Ok(g)
}

/// Annulus energy between radii `r < R`: the difference of the two cylinder
/// energies computed by the same method.
pub fn annulus_energy(
    domain: &StripDomain,
    u: &SeparatedSolution,
    r: f64,
    big_r: f64,
    method: GramMethod,
    res: Option<QuadResolution>,
) -> Result<f64> {
    if !(r < big_r) {
        return Err(Error::Precondition(format!("annulus needs r < R, got r={r}, R={big_r}")));
    }
    match method {
        GramMethod::ClosedForm => Ok(energy_closed(u, big_r)? - energy_closed(u, r)?),
        GramMethod::Quadrature => {
            let res = res.unwrap_or_default();
            let outer = inner_product_quadrature(domain, u, u, big_r, res)?;
            let inner = inner_product_quadrature(domain, u, u, r, res)?;
            Ok(outer - inner)
        }
    }
}

/// Direct quadrature of the annulus region, decomposed into the deep-time
/// slab and the two axial side slabs; the region oracle for
/// [`annulus_energy`].
pub fn annulus_energy_direct(
    domain: &StripDomain,
    u: &SeparatedSolution,
    r: f64,
    big_r: f64,
    res: QuadResolution,
) -> Result<f64> {
    if !(r < big_r) {
        return Err(Error::Precondition(format!("annulus needs r < R, got r={r}, R={big_r}")));
    }
    let len = domain.lengths()[0];
    let lengths = domain.lengths().to_vec();
    let x1_axis = Axis::new(0.0, len, res.x1_cells)?;
    let f1: Vec<f64> = x1_axis
        .nodes
        .iter()
        .map(|x| {
            let m = u.mode.value(&lengths, &[*x]);
            m * m
        })
        .collect();
    let rate_t = 2.0 * u.rho;
    let rate_x = 2.0 * u.alpha;
    let c2 = u.coeff * u.coeff;
    let boxes = [
        ((-big_r * big_r, -r * r), (-big_r, big_r)),
        ((-r * r, 0.0), (-big_r, -r)),
        ((-r * r, 0.0), (r, big_r)),
    ];
    let mut total = 0.0;
    for ((t0, t1), (a, b)) in boxes {
        let t_axis = Axis::new(t0, t1, res.t_cells)?;
        let x0_axis = Axis::new(a, b, res.x0_cells)?;
        let ft: Vec<f64> = t_axis.nodes.iter().map(|t| (rate_t * t).exp()).collect();
        let f0: Vec<f64> = x0_axis.nodes.iter().map(|x| (rate_x * x).exp()).collect();
        total += c2 * integrate_separable3(&t_axis, &x0_axis, &x1_axis, &ft, &f0, &f1);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Mode;
    use crate::solutions::build_continuum_family;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit() -> StripDomain {
        StripDomain::unit(4.0)
    }

    #[test]
    fn degenerate_limits_are_exact() {
        assert_eq!(time_factor(0.0, 1.0), 1.0);
        assert_eq!(axial_factor(0.0, 1.0), 2.0);
        // antisymmetric rates hit the axial limit exactly
        let d = unit();
        let up = SeparatedSolution::fundamental(&d, 1.0, 2.0).unwrap();
        let um = SeparatedSolution::fundamental(&d, 1.0, -2.0).unwrap();
        let v = inner_product_closed(&up, &um, 1.5).unwrap();
        let expected = time_factor(up.rho + um.rho, 1.5) * 3.0;
        assert_relative_eq!(v, expected, max_relative = 1e-15);
    }

    #[test]
    fn physical_first_mode_time_factor() {
        // alpha = 0 on the unit strip: T = (e^{2 pi^2} - 1) / (2 pi^2), S = 2
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 0.0).unwrap();
        let v = energy_closed(&u, 1.0).unwrap();
        let t = ((2.0 * PI * PI).exp() - 1.0) / (2.0 * PI * PI);
        assert_relative_eq!(v, t * 2.0, max_relative = 1e-13);
        // Simpson oracle
        let q = inner_product_quadrature(&d, &u, &u, 1.0, QuadResolution::new(512, 64, 32)).unwrap();
        assert_relative_eq!(q, v, max_relative = 1e-6);
    }

    #[test]
    fn distinct_modes_are_orthogonal() {
        let d = unit();
        let m1 = Mode::new(&d, &[1]).unwrap();
        let m2 = Mode::new(&d, &[2]).unwrap();
        let u = SeparatedSolution::new(1.0, 2.0, m1);
        let v = SeparatedSolution::new(3.0, 2.0, m2);
        assert_eq!(inner_product_closed(&u, &v, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn known_energy_value_alpha_one() {
        // coeff 1, alpha 1, first mode, r = 1:
        // [(1 - e^{-2 rho}) / (2 rho)] * sinh(2) * 2... axial_factor(2,1) = e^2 - e^{-2}
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 1.0).unwrap();
        let v = energy_closed(&u, 1.0).unwrap();
        let rho = 1.0 - PI * PI;
        let t = (1.0 - (-2.0 * rho).exp()) / (2.0 * rho);
        let s = (2.0f64).sinh();
        assert_relative_eq!(v, t * s, max_relative = 1e-13);
        assert_relative_eq!(v, 1.035e7, max_relative = 1e-3);
        let q = inner_product_quadrature(&d, &u, &u, 1.0, QuadResolution::new(512, 128, 32)).unwrap();
        assert_relative_eq!(q, v, max_relative = 1e-6);
    }

    #[test]
    fn quadrature_zero_solution() {
        let d = unit();
        let z = SeparatedSolution::fundamental(&d, 0.0, 1.0).unwrap();
        assert_eq!(
            inner_product_quadrature(&d, &z, &z, 1.0, QuadResolution::new(32, 32, 16)).unwrap(),
            0.0
        );
    }

    #[test]
    fn quadrature_refinement_order() {
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 2.5).unwrap();
        let exact = energy_closed(&u, 1.0).unwrap();
        let coarse =
            inner_product_quadrature(&d, &u, &u, 1.0, QuadResolution::new(16, 16, 16)).unwrap();
        let fine =
            inner_product_quadrature(&d, &u, &u, 1.0, QuadResolution::new(32, 32, 32)).unwrap();
        let ratio = (coarse - exact).abs() / (fine - exact).abs();
        assert!(ratio >= 3.5, "refinement error ratio {ratio} below 3.5");
    }

    #[test]
    fn quadrature_rejects_unresolved_axis() {
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 1.0).unwrap();
        assert!(inner_product_quadrature(&d, &u, &u, 1.0, QuadResolution::new(32, 8, 16)).is_err());
        // window too small
        assert!(inner_product_quadrature(&d, &u, &u, 5.0, QuadResolution::default()).is_err());
    }

    #[test]
    fn gram_of_two_modes_is_diagonal() {
        let d = unit();
        let m1 = Mode::new(&d, &[1]).unwrap();
        let m2 = Mode::new(&d, &[2]).unwrap();
        let span = SolutionSpan::from_elements(vec![
            SeparatedSolution::new(1.0, 4.0, m1),
            SeparatedSolution::new(1.0, 7.0, m2),
        ])
        .unwrap();
        let g = gram(&d, &span, 2.0, GramMethod::ClosedForm, None).unwrap();
        assert_eq!(g.entries.get(0, 1), 0.0);
        assert!(g.entries.get(0, 0) > 0.0 && g.entries.get(1, 1) > 0.0);
    }

    #[test]
    fn continuum_gram_is_spd_and_diag_matches_energy() {
        let d = unit();
        let fam = build_continuum_family(&d, 6.0, 8).unwrap();
        let g = gram(&d, &fam, 2.0, GramMethod::ClosedForm, None).unwrap();
        let (min, max) = g.eigen_range().unwrap();
        assert!(min > 1e-12 * max, "family gram must have full numerical rank");
        for (i, u) in fam.basis().iter().enumerate() {
            assert_relative_eq!(
                g.entries.get(i, i),
                energy_closed(u, 2.0).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn energy_nondecreasing_in_radius() {
        let d = unit();
        for alpha in [0.0, 1.0, PI, 4.0, 6.0] {
            let u = SeparatedSolution::fundamental(&d, 1.3, alpha).unwrap();
            let mut prev = 0.0;
            for i in 1..=8 {
                let e = energy_closed(&u, 0.5 * i as f64).unwrap();
                assert!(e >= prev, "energy decreased at r={} for alpha={alpha}", 0.5 * i as f64);
                prev = e;
            }
        }
    }

    #[test]
    fn annulus_additivity_and_direct_quadrature() {
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 1.0).unwrap();
        let a = annulus_energy(&d, &u, 1.0, 2.0, GramMethod::ClosedForm, None).unwrap();
        let e2 = energy_closed(&u, 2.0).unwrap();
        let e1 = energy_closed(&u, 1.0).unwrap();
        assert_relative_eq!(a, e2 - e1, max_relative = 1e-12);
        assert!(a > 0.0);
        let direct =
            annulus_energy_direct(&d, &u, 1.0, 2.0, QuadResolution::new(2048, 256, 32)).unwrap();
        assert_relative_eq!(direct, a, max_relative = 1e-6);
    }

    #[test]
    fn annulus_rejects_bad_radii() {
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 1.0).unwrap();
        assert!(annulus_energy(&d, &u, 2.0, 2.0, GramMethod::ClosedForm, None).is_err());
    }

    #[test]
    fn pairing_symmetry() {
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.7, 3.3).unwrap();
        let v = SeparatedSolution::fundamental(&d, -0.4, 1.1).unwrap();
        let uv = inner_product_closed(&u, &v, 1.8).unwrap();
        let vu = inner_product_closed(&v, &u, 1.8).unwrap();
        assert_relative_eq!(uv, vu, max_relative = 1e-12);
    }

    #[test]
    fn gradient_pairing_closed_form() {
        let d = unit();
        let u = SeparatedSolution::fundamental(&d, 1.0, 4.0).unwrap();
        let g = gradient_inner_product_closed(&u, &u, 1.0).unwrap();
        let e = energy_closed(&u, 1.0).unwrap();
        assert_relative_eq!(g, (16.0 + PI * PI) * e, max_relative = 1e-14);
    }
}
