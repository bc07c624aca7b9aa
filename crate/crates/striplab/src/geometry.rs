//! The strip domain, its parabolic cylinders, space-time grids, and the
//! Dirichlet spectrum of the box cross-section.

use crate::error::{Error, Result};
use crate::linalg;
use serde::{Deserialize, Serialize};

/// Infinite strip with a box cross-section: the axial coordinate runs over
/// the whole line while the cross-section is `(0, L_1) x ... x (0, L_n)`
/// with homogeneous Dirichlet sides.  `x_trunc` bounds the axial window used
/// by grid-based computations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripDomain {
    cross_dim: usize,
    lengths: Vec<f64>,
    x_trunc: f64,
}

impl StripDomain {
    pub fn new(lengths: &[f64], x_trunc: f64) -> Result<Self> {
        let n = lengths.len();
        if n != 1 && n != 2 {
            return Err(Error::Precondition(format!(
                "cross-section dimension must be 1 or 2, got {n}"
            )));
        }
        if lengths.iter().any(|l| !(*l > 0.0)) {
            return Err(Error::Precondition(format!("side lengths must be positive: {lengths:?}")));
        }
        if !(x_trunc > 0.0) {
            return Err(Error::Precondition(format!("truncation must be positive: {x_trunc}")));
        }
        Ok(StripDomain { cross_dim: n, lengths: lengths.to_vec(), x_trunc })
    }

    /// Unit-width strip `(0,1)` with axial window `[-X, X]`.
    pub fn unit(x_trunc: f64) -> Self {
        StripDomain::new(&[1.0], x_trunc).expect("unit strip is valid")
    }

    pub fn cross_dim(&self) -> usize {
        self.cross_dim
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn x_trunc(&self) -> f64 {
        self.x_trunc
    }

    /// Cross-section volume, the product of the side lengths.
    pub fn cross_volume(&self) -> f64 {
        self.lengths.iter().product()
    }

    /// Diameter of the cross-section box.
    pub fn cross_diameter(&self) -> f64 {
        self.lengths.iter().map(|l| l * l).sum::<f64>().sqrt()
    }

    /// Smallest Dirichlet eigenvalue of the cross-section.
    pub fn mu1(&self) -> f64 {
        self.lengths
            .iter()
            .map(|l| (std::f64::consts::PI / l) * (std::f64::consts::PI / l))
            .sum()
    }

    /// Volume of the parabolic cylinder of radius `r`:
    /// time depth `r^2` times axial width `2r` times the cross volume.
    pub fn cylinder_volume(&self, r: f64) -> f64 {
        r * r * 2.0 * r * self.cross_volume()
    }

    /// True when the cross-section point lies strictly inside the box.
    pub fn contains_cross(&self, x_cross: &[f64]) -> bool {
        x_cross.len() == self.cross_dim
            && x_cross.iter().zip(&self.lengths).all(|(x, l)| *x > 0.0 && *x < *l)
    }

    /// True when the cross-section point lies in the closed box.
    pub fn contains_cross_closed(&self, x_cross: &[f64]) -> bool {
        x_cross.len() == self.cross_dim
            && x_cross.iter().zip(&self.lengths).all(|(x, l)| *x >= 0.0 && *x <= *l)
    }
}

/// Parabolic cylinder `(-r^2, 0] x (-r, r) x cross-section`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicCylinder {
    pub radius: f64,
}

impl ParabolicCylinder {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Precondition(format!("cylinder radius must be positive: {radius}")));
        }
        Ok(ParabolicCylinder { radius })
    }

    pub fn time_depth(&self) -> f64 {
        self.radius * self.radius
    }
}

/// Parabolic ball `(t - r^2, t] x B_r(x)` centered at a space-time point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParabolicBall {
    pub t_center: f64,
    pub center: Vec<f64>,
    pub radius: f64,
}

impl ParabolicBall {
    pub fn new(t_center: f64, center: &[f64], radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Precondition(format!("ball radius must be positive: {radius}")));
        }
        Ok(ParabolicBall { t_center, center: center.to_vec(), radius })
    }
}

/// Uniform space-time grid on the window `(-T, 0] x [-X, X] x (0, L)`
/// (one-dimensional cross-section).  Nodes include both lateral boundaries
/// and the axial ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeGrid {
    pub h0: f64,
    pub h: f64,
    pub tau: f64,
    pub t_span: f64,
    pub x_trunc: f64,
    pub cross_length: f64,
    /// axial cell count (nodes = n0 + 1)
    pub n0: usize,
    /// cross-section cell count (nodes = n1 + 1)
    pub n1: usize,
    /// time step count (levels = nt + 1)
    pub nt: usize,
}

impl SpaceTimeGrid {
    /// Build a grid from target spacings; spacings are rounded so that the
    /// window is an exact multiple of each step.
    pub fn new(domain: &StripDomain, h0: f64, h: f64, tau: f64, t_span: f64) -> Result<Self> {
        if domain.cross_dim() != 1 {
            return Err(Error::Precondition(
                "space-time grids support one-dimensional cross-sections only".into(),
            ));
        }
        if !(h0 > 0.0 && h > 0.0 && tau > 0.0 && t_span > 0.0) {
            return Err(Error::Precondition("grid spacings and span must be positive".into()));
        }
        let len = domain.lengths()[0];
        let n0 = ((2.0 * domain.x_trunc() / h0).round() as usize).max(2);
        let n1 = ((len / h).round() as usize).max(2);
        let nt = ((t_span / tau).round() as usize).max(1);
        if n0 + 1 < 3 || n1 + 1 < 3 {
            return Err(Error::Precondition("grids need at least 3 nodes per space axis".into()));
        }
        Ok(SpaceTimeGrid {
            h0: 2.0 * domain.x_trunc() / n0 as f64,
            h: len / n1 as f64,
            tau: t_span / nt as f64,
            t_span,
            x_trunc: domain.x_trunc(),
            cross_length: len,
            n0,
            n1,
            nt,
        })
    }

    /// Grid refined by two in space and four in time, for order studies.
    pub fn refined(&self) -> SpaceTimeGrid {
        SpaceTimeGrid {
            h0: self.h0 / 2.0,
            h: self.h / 2.0,
            tau: self.tau / 4.0,
            t_span: self.t_span,
            x_trunc: self.x_trunc,
            cross_length: self.cross_length,
            n0: self.n0 * 2,
            n1: self.n1 * 2,
            nt: self.nt * 4,
        }
    }

    pub fn x0_at(&self, i: usize) -> f64 {
        -self.x_trunc + self.h0 * i as f64
    }

    pub fn x1_at(&self, j: usize) -> f64 {
        self.h * j as f64
    }

    pub fn t_at(&self, m: usize) -> f64 {
        -self.t_span + self.tau * m as f64
    }

    /// Snap an axial radius to the nearest grid node, returning
    /// `(node offset from center, snapped radius)`.
    pub fn snap_axial(&self, r: f64) -> (usize, f64) {
        let cells = (r / self.h0).round().max(1.0) as usize;
        let cells = cells.min(self.n0 / 2);
        (cells, cells as f64 * self.h0)
    }
}

/// Dirichlet eigenfunction of the box cross-section, indexed by positive
/// integers along each side.  `eigenvalue` is the sum of `(k_i pi / L_i)^2`
/// and `normalization` makes the mode L2-normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub index: Vec<usize>,
    pub eigenvalue: f64,
    pub normalization: f64,
}

impl Mode {
    pub fn new(domain: &StripDomain, index: &[usize]) -> Result<Self> {
        if index.len() != domain.cross_dim() || index.iter().any(|k| *k == 0) {
            return Err(Error::Precondition(format!(
                "mode index must have {} positive entries, got {index:?}",
                domain.cross_dim()
            )));
        }
        let mut mu = 0.0;
        let mut norm = 1.0;
        for (k, l) in index.iter().zip(domain.lengths()) {
            let w = *k as f64 * std::f64::consts::PI / l;
            mu += w * w;
            norm *= (2.0 / l).sqrt();
        }
        Ok(Mode { index: index.to_vec(), eigenvalue: mu, normalization: norm })
    }

    /// Value of the normalized eigenfunction at a cross-section point; zero
    /// outside the open box.
    pub fn value(&self, lengths: &[f64], x_cross: &[f64]) -> f64 {
        let mut v = self.normalization;
        for ((k, l), x) in self.index.iter().zip(lengths).zip(x_cross) {
            if *x <= 0.0 || *x >= *l {
                return 0.0;
            }
            v *= (*k as f64 * std::f64::consts::PI * x / l).sin();
        }
        v
    }
}

/// All cross-section modes with eigenvalue at most `mu_max`, sorted by
/// eigenvalue with lexicographic index tie-break.
pub fn box_eigenpairs(domain: &StripDomain, mu_max: f64) -> Result<Vec<Mode>> {
    if !(mu_max > 0.0) {
        return Err(Error::Precondition(format!("mu_max must be positive: {mu_max}")));
    }
    let mut modes = Vec::new();
    let pi = std::f64::consts::PI;
    match domain.cross_dim() {
        1 => {
            let l = domain.lengths()[0];
            let kmax = (mu_max.sqrt() * l / pi).floor() as usize;
            for k in 1..=kmax {
                let m = Mode::new(domain, &[k])?;
                if m.eigenvalue <= mu_max {
                    modes.push(m);
                }
            }
        }
        2 => {
            let (l1, l2) = (domain.lengths()[0], domain.lengths()[1]);
            let k1max = (mu_max.sqrt() * l1 / pi).floor() as usize;
            for k1 in 1..=k1max.max(1) {
                let part = (k1 as f64 * pi / l1).powi(2);
                if part > mu_max {
                    break;
                }
                let rem = mu_max - part;
                let k2max = (rem.sqrt() * l2 / pi).floor() as usize;
                for k2 in 1..=k2max {
                    let m = Mode::new(domain, &[k1, k2])?;
                    if m.eigenvalue <= mu_max {
                        modes.push(m);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    modes.sort_by(|a, b| {
        a.eigenvalue
            .partial_cmp(&b.eigenvalue)
            .unwrap()
            .then_with(|| a.index.cmp(&b.index))
    });
    Ok(modes)
}

/// Number of cross-section modes with eigenvalue at most `d^2`.
pub fn weyl_count(domain: &StripDomain, d: f64) -> Result<usize> {
    if !(d > 0.0) {
        return Err(Error::Precondition(format!("weyl count needs d > 0, got {d}")));
    }
    Ok(box_eigenpairs(domain, d * d)?.len())
}

/// Finite-difference Dirichlet eigenpairs on the interval `(0, L)`.
///
/// `m` is the total node count including both boundary nodes, so the matrix
/// acts on `m - 2` interior values.  Eigenvalues come from Sturm bisection of
/// the second-difference matrix and converge to `(k pi / L)^2` at second
/// order in the spacing; the independent path makes this the discrete oracle
/// for [`box_eigenpairs`].
pub fn fd_eigenpairs_1d(length: f64, m: usize, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    if m < 3 {
        return Err(Error::Precondition(format!("need at least 3 nodes, got {m}")));
    }
    if !(length > 0.0) {
        return Err(Error::Precondition(format!("interval length must be positive: {length}")));
    }
    let interior = m - 2;
    let count = count.min(interior);
    let h = length / (m - 1) as f64;
    let diag = vec![2.0 / (h * h); interior];
    let off = vec![-1.0 / (h * h); interior.saturating_sub(1)];
    let values = linalg::tridiag_smallest_eigenvalues(&diag, &off, count);
    let mut out = Vec::with_capacity(count);
    for ev in values {
        let vec = if interior == 1 {
            vec![1.0]
        } else {
            linalg::tridiag_eigenvector(&diag, &off, ev)
        };
        out.push((ev, vec));
    }
    Ok(out)
}
