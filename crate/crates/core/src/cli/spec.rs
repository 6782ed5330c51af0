//! Spec documents (TOML). See the README for the schema.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::bjorling::{extract_data, reduce_from_l3, BjorlingData};
use crate::chebnet::gallery::critical;
use crate::chebnet::{gallery, GalleryName, SphereCurve};
use crate::error::{Error, Result};
use crate::lift::lift_net;
use crate::minkowski::Vec4;
use crate::numerics::{Axis, SampledCurve};

/// `[min, max, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct Domain(pub f64, pub f64, pub usize);

impl Domain {
    pub fn axis(self) -> Result<Axis> {
        Axis::linspace(self.0, self.1, self.2)
    }
}

/// `linear t + sum_k cos[k] cos(k w t) + sum_k sin[k-1] sin(k w t)`; the
/// cosine list starts at the constant term.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
    #[serde(default)]
    pub linear: f64,
}

impl Component {
    pub fn eval(&self, t: f64, freq: f64) -> f64 {
        let c: f64 = self.cos.iter().enumerate().map(|(k, a)| a * (k as f64 * freq * t).cos()).sum();
        let s: f64 = self.sin.iter().enumerate().map(|(k, b)| b * ((k + 1) as f64 * freq * t).sin()).sum();
        self.linear * t + c + s
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    TrigPoly {
        domain: Domain,
        #[serde(default = "one")]
        frequency: f64,
        /// Project the values onto the unit sphere (sphere curves only).
        #[serde(default)]
        normalize: bool,
        x0: Option<Component>,
        x1: Option<Component>,
        x2: Option<Component>,
        x3: Option<Component>,
    },
    Samples {
        domain: Domain,
        points: Vec<Vec<f64>>,
    },
    /// A named generator: `critical.t1` or `critical.t2`.
    Gallery {
        tag: String,
        domain: Option<Domain>,
    },
}

fn one() -> f64 {
    1.0
}

fn components(points: &[Vec<f64>], width: usize) -> Result<()> {
    match points.iter().position(|p| p.len() != width) {
        Some(k) => Err(Error::BadInput(format!("sample {k} has {} components, expected {width}", points[k].len()))),
        None => Ok(()),
    }
}

impl CurveSpec {
    pub fn axis(&self) -> Result<Axis> {
        match self {
            Self::TrigPoly { domain, .. } | Self::Samples { domain, .. } => domain.axis(),
            Self::Gallery { domain: Some(d), .. } => d.axis(),
            Self::Gallery { domain: None, .. } => critical::axis(201),
        }
    }

    fn gallery_fn(tag: &str) -> Result<fn(f64) -> Vec4> {
        match tag {
            "critical.t1" => Ok(critical::t1),
            "critical.t2" => Ok(critical::t2),
            _ => Err(Error::BadInput(format!("unknown gallery curve {tag:?}"))),
        }
    }

    fn sampled(&self, width: usize) -> Result<SampledCurve<Vec4>> {
        let axis = self.axis()?;
        match self {
            Self::TrigPoly { frequency, x0, x1, x2, x3, .. } => {
                let comps = [x0, x1, x2, x3];
                if let Some(k) = (width..4).find(|&k| comps[k].is_some()) {
                    return Err(Error::BadInput(format!("component x{k} given for a {width}-component curve")));
                }
                let ev = |c: &Option<Component>, t: f64| c.as_ref().map_or(0.0, |c| c.eval(t, *frequency));
                Ok(SampledCurve::from_fn(axis, |t| Vec4::new(ev(x0, t), ev(x1, t), ev(x2, t), ev(x3, t))))
            }
            Self::Samples { points, .. } => {
                if points.len() != axis.n {
                    return Err(Error::BadInput(format!("{} samples for a {}-node domain", points.len(), axis.n)));
                }
                components(points, width)?;
                let pts = points.iter().map(|p| Vec4::from_array([0, 1, 2, 3].map(|i| p.get(i).copied().unwrap_or(0.0))));
                SampledCurve::new(axis, pts.collect())
            }
            Self::Gallery { tag, .. } => Ok(SampledCurve::from_fn(axis, Self::gallery_fn(tag)?)),
        }
    }

    /// A curve in R^4_1.
    pub fn to_vec4(&self) -> Result<SampledCurve<Vec4>> {
        self.sampled(4)
    }

    /// A curve on the unit sphere of the spatial slice; `x0` must vanish.
    pub fn to_sphere(&self) -> Result<SphereCurve> {
        let c = self.sampled(4)?;
        let tagged = |s: SphereCurve| match self {
            Self::Gallery { tag, .. } => s.with_tag(tag.clone()),
            _ => s,
        };
        match self {
            Self::TrigPoly { normalize: true, .. } => {
                if let Some(k) = c.points.iter().position(|p| p.x0 != 0.0) {
                    return Err(Error::BadSphereCurve { index: k, deviation: c.points[k].x0.abs() });
                }
                let pts = c.points.clone();
                SphereCurve::normalized(c.axis, |t| pts[c.axis.nearest(t)]).map(tagged)
            }
            _ => SphereCurve::new(c).map(tagged),
        }
    }

    /// A curve in R^3_1, components `x0, x1, x2`.
    pub fn to_l3(&self) -> Result<SampledCurve<[f64; 3]>> {
        let c = self.sampled(3)?;
        Ok(c.map(|p| [p.x0, p.x1, p.x2]))
    }
}

/// Either a gallery entry or a first-kind net from two sphere curves.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetSpec {
    pub gallery: Option<GalleryName>,
    /// Nodes per side for gallery entries.
    #[serde(default = "default_n")]
    pub n: usize,
    pub t1: Option<CurveSpec>,
    pub t2: Option<CurveSpec>,
    #[serde(default)]
    pub origin: [f64; 4],
}

fn default_n() -> usize {
    201
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    #[default]
    Minimal,
    Nonminimal,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftSpec {
    #[serde(default)]
    pub expect: Expectation,
    /// Lower bound on `max |H|` when a non-minimal lift is expected.
    #[serde(default = "default_min_h")]
    pub min_mean_curvature: f64,
    /// Nodes per side of the isothermal resampling; defaults to the net's.
    pub isothermal_n: Option<usize>,
}

impl Default for LiftSpec {
    fn default() -> Self {
        Self { expect: Expectation::Minimal, min_mean_curvature: default_min_h(), isothermal_n: None }
    }
}

fn default_min_h() -> f64 {
    0.01
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum DataSpec {
    /// The curve `v = v[column]` on the lift of a gallery net.
    Gallery { gallery: GalleryName, n: Option<usize>, column: Option<usize> },
    Curves { c: CurveSpec, a: CurveSpec, b: CurveSpec },
    NullGenerators { c: CurveSpec, n3: CurveSpec },
    L3 { gamma: CurveSpec, normal: CurveSpec },
}

impl DataSpec {
    pub fn resolve(&self) -> Result<BjorlingData> {
        match self {
            Self::Gallery { gallery: name, n, column } => {
                let g = gallery(*name, n.unwrap_or(default_n()))?;
                let lift = lift_net(&g.net)?;
                let j = column.unwrap_or(lift.grid.v.base());
                if j >= lift.grid.nv() {
                    return Err(Error::BadInput(format!("column {j} outside a {}-column grid", lift.grid.nv())));
                }
                extract_data(&lift, j)
            }
            Self::Curves { c, a, b } => BjorlingData::new(c.to_vec4()?, a.to_vec4()?, b.to_vec4()?),
            Self::NullGenerators { c, n3 } => BjorlingData::from_null_generators(c.to_vec4()?, &n3.to_vec4()?),
            Self::L3 { gamma, normal } => reduce_from_l3(&gamma.to_l3()?, &normal.to_l3()?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionSpec {
    Default { domain: Domain },
    Curve { curve: CurveSpec },
    /// Constant angle profile over the curve's parameter axis.
    Theta { domain: Domain, value: f64 },
    /// Ruled solution along a lightlike line.
    Ruled { curve: CurveSpec },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonuniqueSpec {
    #[serde(default = "default_away")]
    pub away: f64,
    #[serde(default = "default_divergence")]
    pub min_divergence: f64,
}

impl Default for NonuniqueSpec {
    fn default() -> Self {
        Self { away: default_away(), min_divergence: default_divergence() }
    }
}

fn default_away() -> f64 {
    0.5
}

fn default_divergence() -> f64 {
    0.1
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub net: Option<NetSpec>,
    pub lift: Option<LiftSpec>,
    pub data: Option<DataSpec>,
    pub extension: Option<ExtensionSpec>,
    pub second_extension: Option<ExtensionSpec>,
    pub nonunique: Option<NonuniqueSpec>,
    /// Per-check tolerance overrides, keyed by check name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl SpecDoc {
    pub fn parse(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}
