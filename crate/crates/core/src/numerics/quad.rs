//! Cumulative and definite quadrature on uniform nodes.

use super::grid::{combine, Sample, SampledCurve};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rule {
    /// Composite Simpson over node pairs; an odd leftover interval is closed
    /// with the 3-point rule `h(-f0 + 8f1 + 5f2)/12`. Fourth order, but the
    /// error alternates between even and odd nodes.
    Simpson,
    /// Each interval integrated against the 6-point local Lagrange
    /// interpolant. Sixth order and smooth from node to node, so the result
    /// can be differentiated again without odd/even ripple.
    #[default]
    Lagrange6,
}

/// Node-wise antiderivative that vanishes at node `from`.
pub fn cumulative_integral<T: Sample>(c: &SampledCurve<T>, from: usize) -> Result<SampledCurve<T>> {
    cumulative_integral_with(c, from, Rule::default())
}

pub fn cumulative_integral_with<T: Sample>(c: &SampledCurve<T>, from: usize, rule: Rule) -> Result<SampledCurve<T>> {
    let n = c.len();
    if n < 3 {
        return Err(Error::BadGrid(format!("cumulative quadrature needs 3 nodes, got {n}")));
    }
    if from >= n {
        return Err(Error::BadGrid(format!("base node {from} outside {n} nodes")));
    }
    let points = match rule {
        Rule::Simpson => simpson_cumulative(&c.points, c.axis.step, from),
        Rule::Lagrange6 => lagrange_cumulative(&c.points, c.axis.step, from),
    };
    Ok(SampledCurve { axis: c.axis, points })
}

fn simpson_cumulative<T: Sample>(f: &[T], h: f64, from: usize) -> Vec<T> {
    let n = f.len();
    let mut out = vec![T::zero(); n];
    // Walk away from the base in each direction; `dir` maps an offset to an index.
    for dir in [1isize, -1] {
        let idx = |m: usize| (from as isize + dir * m as isize) as usize;
        let reach = if dir > 0 { n - 1 - from } else { from };
        let mut even_sum = T::zero();
        for m in 1..=reach {
            let value = if m % 2 == 0 {
                let pair = combine(&[1.0, 4.0, 1.0], [f[idx(m - 2)], f[idx(m - 1)], f[idx(m)]]);
                even_sum = even_sum.add(pair.scale(h / 3.0));
                even_sum
            } else {
                // Last interval [m-1, m] from the three nearest nodes.
                let tail = if m >= 2 {
                    combine(&[-1.0, 8.0, 5.0], [f[idx(m - 2)], f[idx(m - 1)], f[idx(m)]])
                } else if reach >= 2 {
                    combine(&[5.0, 8.0, -1.0], [f[idx(0)], f[idx(1)], f[idx(2)]])
                } else {
                    // Only two nodes on this side: borrow the neighbour across the base.
                    let back = (from as isize - dir) as usize;
                    combine(&[-1.0, 8.0, 5.0], [f[back], f[idx(0)], f[idx(1)]])
                };
                even_sum.add(tail.scale(h / 12.0))
            };
            out[idx(m)] = value.scale(dir as f64);
        }
    }
    out
}

/// `int_a^b l_m(x) dx` for every Lagrange basis polynomial on `nodes`.
fn lagrange_interval_weights(nodes: &[f64], a: f64, b: f64) -> Vec<f64> {
    (0..nodes.len())
        .map(|m| {
            // Coefficients of prod_{j != m} (x - x_j) / (x_m - x_j), lowest first.
            let mut poly = vec![1.0];
            let mut denom = 1.0;
            for (j, &xj) in nodes.iter().enumerate() {
                if j == m {
                    continue;
                }
                let mut next = vec![0.0; poly.len() + 1];
                for (k, &p) in poly.iter().enumerate() {
                    next[k + 1] += p;
                    next[k] -= xj * p;
                }
                poly = next;
                denom *= nodes[m] - xj;
            }
            let antider = |x: f64| {
                poly.iter().enumerate().rev().fold(0.0, |acc, (k, &p)| acc * x + p / (k + 1) as f64) * x
            };
            (antider(b) - antider(a)) / denom
        })
        .collect()
}

fn lagrange_cumulative<T: Sample>(f: &[T], h: f64, from: usize) -> Vec<T> {
    let n = f.len();
    let width = 6.min(n);
    // interval k = [k, k+1]; window centered on it where possible
    let interval = |k: usize| -> T {
        let start = (k + 1).saturating_sub(width / 2).min(n - width);
        let nodes: Vec<f64> = (start..start + width).map(|m| m as f64 - k as f64).collect();
        let w = lagrange_interval_weights(&nodes, 0.0, 1.0);
        combine(&w, (start..start + width).map(|m| f[m])).scale(h)
    };
    let mut out = vec![T::zero(); n];
    for k in from..n - 1 {
        out[k + 1] = out[k].add(interval(k));
    }
    for k in (0..from).rev() {
        out[k] = out[k + 1].add(interval(k).scale(-1.0));
    }
    out
}

/// Composite Simpson rule for `int_a^b f` with `panels` (rounded up to even)
/// subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + k as f64 * h);
    }
    sum * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Vec4;
    use crate::numerics::{curve_derivative, Axis};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn interior_weights_match_known_formula() {
        let w = lagrange_interval_weights(&[-2.0, -1.0, 0.0, 1.0, 2.0, 3.0], 0.0, 1.0);
        let expect = [11.0, -93.0, 802.0, 802.0, -93.0, 11.0].map(|x| x / 1440.0);
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_curve() {
        let ax = Axis::new(0.0, 0.1, 11).unwrap();
        let c = SampledCurve::from_fn(ax, |_| Vec4::basis(1));
        for rule in [Rule::Simpson, Rule::Lagrange6] {
            let i = cumulative_integral_with(&c, 0, rule).unwrap();
            assert!(i.points[10].max_abs_diff(Vec4::basis(1)) < 1e-14);
        }
    }

    #[test]
    fn trig_endpoint() {
        let ax = Axis::linspace(0.0, FRAC_PI_2, 201).unwrap();
        let c = SampledCurve::from_fn(ax, |x| [x.cos(), x.sin(), 0.0]);
        for rule in [Rule::Simpson, Rule::Lagrange6] {
            let i = cumulative_integral_with(&c, 0, rule).unwrap();
            let end = i.points[200];
            assert!((end[0] - 1.0).abs() < 1e-10 && (end[1] - 1.0).abs() < 1e-10 && end[2] == 0.0);
            // every node, odd ones included; the Simpson end rule is one order looser
            let tol = if rule == Rule::Simpson { 1e-9 } else { 1e-12 };
            for (k, p) in i.points.iter().enumerate() {
                let x = ax.at(k);
                assert!((p[0] - x.sin()).abs() < tol && (p[1] - (1.0 - x.cos())).abs() < tol);
            }
        }
    }

    #[test]
    fn base_in_the_middle() {
        let ax = Axis::linspace(-1.0, 1.0, 41).unwrap();
        let c = SampledCurve::from_fn(ax, |x| x.exp());
        for (rule, tol) in [(Rule::Simpson, 1e-6), (Rule::Lagrange6, 1e-9)] {
            let i = cumulative_integral_with(&c, 20, rule).unwrap();
            assert_eq!(i.points[20], 0.0);
            for (k, p) in i.points.iter().enumerate() {
                assert!((p - (ax.at(k).exp() - 1.0)).abs() < tol, "{rule:?} node {k}");
            }
        }
    }

    #[test]
    fn integrate_then_differentiate() {
        let ax = Axis::linspace(0.0, 2.0, 201).unwrap();
        let c = SampledCurve::from_fn(ax, |x| (2.0 * x).cos() + x);
        let back = curve_derivative(&cumulative_integral(&c, 0).unwrap(), 1);
        for (a, b) in back.points.iter().zip(&c.points) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize, rule: Rule| {
            let ax = Axis::linspace(0.0, 3.0, n).unwrap();
            let c = SampledCurve::from_fn(ax, |x| (2.0 * x).sin());
            let i = cumulative_integral_with(&c, 0, rule).unwrap();
            i.points
                .iter()
                .enumerate()
                .fold(0.0f64, |m, (k, p)| m.max((p - (1.0 - (2.0 * ax.at(k)).cos()) / 2.0).abs()))
        };
        for rule in [Rule::Simpson, Rule::Lagrange6] {
            let e: Vec<f64> = [21, 41, 81, 161].iter().map(|&n| err(n, rule)).collect();
            for w in e.windows(2) {
                let order = (w[0] / w[1]).log2();
                assert!(order > 3.8, "{rule:?}: observed order {order} from {e:?}");
            }
        }
    }

    #[test]
    fn definite_simpson() {
        let v = simpson(|x| x.sin(), 0.0, std::f64::consts::PI, 64);
        assert!((v - 2.0).abs() < 1e-6);
    }
}
