use super::diff::curve_derivative;
use super::grid::SampledCurve;
use crate::error::{Error, Result};
use crate::minkowski::Vec4;
use crate::tol;

/// Frenet apparatus of a sampled curve in `E`, node by node.
///
/// Nodes with `kappa <= kappa_tol` carry no normal, binormal or torsion.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetData {
    pub tangent: Vec<Vec4>,
    pub kappa: Vec<f64>,
    pub normal: Vec<Option<Vec4>>,
    pub binormal: Vec<Option<Vec4>>,
    pub torsion: Vec<Option<f64>>,
    /// `|alpha'| = 1` within 1e-6 at every node.
    pub arclength: bool,
}

impl FrenetData {
    pub fn degenerate_nodes(&self) -> Vec<usize> {
        self.normal.iter().enumerate().filter(|(_, n)| n.is_none()).map(|(i, _)| i).collect()
    }

    pub fn is_degenerate_everywhere(&self) -> bool {
        self.normal.iter().all(Option::is_none)
    }
}

pub fn frenet(alpha: &SampledCurve<Vec4>) -> Result<FrenetData> {
    frenet_with(alpha, tol::KAPPA)
}

/// Frenet data with `T = a'/|a'|`, `kappa = |a' x a''|/|a'|^3`, `N` the unit
/// part of `a''` orthogonal to `T` (the direction of `T'`), `B = T x N` and
/// torsion `det(a', a'', a''')/|a' x a''|^2`.
pub fn frenet_with(alpha: &SampledCurve<Vec4>, kappa_tol: f64) -> Result<FrenetData> {
    if alpha.len() < 5 {
        return Err(Error::BadGrid(format!("Frenet data needs 5 nodes, got {}", alpha.len())));
    }
    let spatial = alpha.map(Vec4::spatial);
    let d1 = curve_derivative(&spatial, 1).points;
    let d2 = curve_derivative(&spatial, 2).points;
    let d3 = curve_derivative(&spatial, 3).points;

    let n = alpha.len();
    let mut out = FrenetData {
        tangent: Vec::with_capacity(n),
        kappa: Vec::with_capacity(n),
        normal: Vec::with_capacity(n),
        binormal: Vec::with_capacity(n),
        torsion: Vec::with_capacity(n),
        arclength: true,
    };
    for i in 0..n {
        let speed = d1[i].norm3();
        if speed <= tol::REGULAR {
            return Err(Error::NotRegular { t: alpha.t(i), speed });
        }
        if (speed - 1.0).abs() > 1e-6 {
            out.arclength = false;
        }
        let t = d1[i] / speed;
        let cross = d1[i].cross3(d2[i]);
        let kappa = cross.norm3() / speed.powi(3);
        out.tangent.push(t);
        out.kappa.push(kappa);
        if kappa <= kappa_tol {
            out.normal.push(None);
            out.binormal.push(None);
            out.torsion.push(None);
            continue;
        }
        let perp = d2[i] - t * d2[i].dot3(t);
        let nrm = perp / perp.norm3();
        let b = t.cross3(nrm);
        let det = cross.dot3(d3[i]);
        out.normal.push(Some(nrm));
        out.binormal.push(Some(b));
        out.torsion.push(Some(det / cross.dot3(cross)));
    }
    Ok(out)
}
