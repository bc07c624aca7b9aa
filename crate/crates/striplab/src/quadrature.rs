//! Composite Simpson quadrature on uniform grids, in one dimension and as
//! tensor products over space-time boxes.
//!
//! Node order is fixed and reductions accumulate in ascending index order,
//! so results are bitwise reproducible for identical inputs.

use crate::error::{Error, Result};

/// Per-node Simpson weights for `cells` uniform cells (weights exclude the
/// spacing factor).  Even cell counts use the classic composite rule; an odd
/// count falls back to a trapezoid on the first cell followed by Simpson on
/// the remaining even count.
pub fn simpson_weights(cells: usize) -> Result<Vec<f64>> {
    if cells == 0 {
        return Err(Error::Precondition("quadrature needs at least one cell".into()));
    }
    let mut w = vec![0.0; cells + 1];
    if cells == 1 {
        w[0] = 0.5;
        w[1] = 0.5;
        return Ok(w);
    }
    let (start, trapezoid_first) = if cells % 2 == 0 { (0, false) } else { (1, true) };
    if trapezoid_first {
        w[0] += 0.5;
        w[1] += 0.5;
    }
    let m = (cells - start) / 2;
    for block in 0..m {
        let i = start + 2 * block;
        w[i] += 1.0 / 3.0;
        w[i + 1] += 4.0 / 3.0;
        w[i + 2] += 1.0 / 3.0;
    }
    Ok(w)
}

/// Integrate sampled values over a uniform grid with spacing `h`.
pub fn integrate_samples(values: &[f64], h: f64) -> Result<f64> {
    let w = simpson_weights(values.len() - 1)?;
    let mut acc = 0.0;
    for i in 0..values.len() {
        acc += w[i] * values[i];
    }
    Ok(acc * h)
}

/// Integrate `f` over `[a, b]` with `cells` uniform cells.
pub fn integrate_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, cells: usize) -> Result<f64> {
    let w = simpson_weights(cells)?;
    let h = (b - a) / cells as f64;
    let mut acc = 0.0;
    for (i, wi) in w.iter().enumerate() {
        let x = a + h * i as f64;
        acc += wi * f(x);
    }
    Ok(acc * h)
}

/// Uniform quadrature axis: nodes plus matching Simpson weights.
#[derive(Debug, Clone)]
pub struct Axis {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub spacing: f64,
}

impl Axis {
    pub fn new(a: f64, b: f64, cells: usize) -> Result<Self> {
        if !(b > a) {
            return Err(Error::Precondition(format!("degenerate axis [{a}, {b}]")));
        }
        let h = (b - a) / cells as f64;
        let nodes = (0..=cells).map(|i| a + h * i as f64).collect();
        let weights = simpson_weights(cells)?;
        Ok(Axis { nodes, weights, spacing: h })
    }
}

/// Tensor-product Simpson integral of `f(t, x0, x1)` over a box.
///
/// The triple loop runs `(t, x0, x1)` in ascending index order.
pub fn integrate_box3(
    t_axis: &Axis,
    x0_axis: &Axis,
    x1_axis: &Axis,
    f: impl Fn(f64, f64, f64) -> f64,
) -> f64 {
    let mut acc = 0.0;
    for (it, &t) in t_axis.nodes.iter().enumerate() {
        let wt = t_axis.weights[it];
        let mut acc_t = 0.0;
        for (i0, &x0) in x0_axis.nodes.iter().enumerate() {
            let w0 = x0_axis.weights[i0];
            let mut acc_x = 0.0;
            for (i1, &x1) in x1_axis.nodes.iter().enumerate() {
                acc_x += x1_axis.weights[i1] * f(t, x0, x1);
            }
            acc_t += w0 * acc_x;
        }
        acc += wt * acc_t;
    }
    acc * t_axis.spacing * x0_axis.spacing * x1_axis.spacing
}

/// Tensor-product integral of a separable integrand given per-axis samples:
/// the same reduction as [`integrate_box3`] with `f = ft * f0 * f1`.
pub fn integrate_separable3(
    t_axis: &Axis,
    x0_axis: &Axis,
    x1_axis: &Axis,
    ft: &[f64],
    f0: &[f64],
    f1: &[f64],
) -> f64 {
    let mut acc = 0.0;
    for (it, fti) in ft.iter().enumerate() {
        let wt = t_axis.weights[it] * fti;
        let mut acc_t = 0.0;
        for (i0, f0i) in f0.iter().enumerate() {
            let w0 = x0_axis.weights[i0] * f0i;
            let mut acc_x = 0.0;
            for (i1, f1i) in f1.iter().enumerate() {
                acc_x += x1_axis.weights[i1] * f1i;
            }
            acc_t += w0 * acc_x;
        }
        acc += wt * acc_t;
    }
    acc * t_axis.spacing * x0_axis.spacing * x1_axis.spacing
}

/// Observed order of convergence from errors at spacing `h` and `h/2`.
pub fn observed_order(err_coarse: f64, err_fine: f64) -> f64 {
    (err_coarse.abs() / err_fine.abs()).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn exact_on_cubics() {
        // Simpson integrates cubics exactly
        let v = integrate_fn(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 8).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn odd_cell_fallback_still_converges() {
        let exact = 1.0 - (-1.0f64).exp();
        let coarse = integrate_fn(|x| (-x).exp(), 0.0, 1.0, 17).unwrap();
        let fine = integrate_fn(|x| (-x).exp(), 0.0, 1.0, 34).unwrap();
        let order = observed_order(coarse - exact, fine - exact);
        assert!(order > 1.9, "order {order} too low for odd-count fallback");
    }

    #[test]
    fn fourth_order_on_smooth_exponential() {
        let exact = (2.0f64).exp() - 1.0;
        let coarse = integrate_fn(f64::exp, 0.0, 2.0, 16).unwrap() - exact;
        let fine = integrate_fn(f64::exp, 0.0, 2.0, 32).unwrap() - exact;
        let order = observed_order(coarse, fine);
        assert!(order > 3.8, "expected ~4th order, got {order}");
    }

    #[test]
    fn box3_matches_product_of_1d() {
        let t = Axis::new(-1.0, 0.0, 8).unwrap();
        let x0 = Axis::new(-1.0, 1.0, 8).unwrap();
        let x1 = Axis::new(0.0, 1.0, 8).unwrap();
        let v = integrate_box3(&t, &x0, &x1, |a, b, c| (a + 2.0 * b + c).exp());
        let p = integrate_fn(f64::exp, -1.0, 0.0, 8).unwrap()
            * integrate_fn(|x| (2.0 * x).exp(), -1.0, 1.0, 8).unwrap()
            * integrate_fn(f64::exp, 0.0, 1.0, 8).unwrap();
        assert_relative_eq!(v, p, max_relative = 1e-13);
    }

    proptest! {
        #[test]
        fn weights_sum_to_cell_count(cells in 1usize..60) {
            let w = simpson_weights(cells).unwrap();
            let total: f64 = w.iter().sum();
            prop_assert!((total - cells as f64).abs() < 1e-12);
        }

        #[test]
        fn linear_functions_integrate_exactly(cells in 1usize..40, a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let v = integrate_fn(|x| a * x + b, 0.0, 1.5, cells).unwrap();
            let exact = a * 1.125 + b * 1.5;
            prop_assert!((v - exact).abs() <= 1e-12 * (1.0 + exact.abs()));
        }
    }
}
