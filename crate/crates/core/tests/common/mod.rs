#![allow(dead_code)]

use chebylift::chebnet::SphereCurve;
use chebylift::numerics::Axis;
use chebylift::Vec4;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit3(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

fn rotate(x: [f64; 3], axis: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let d = axis[0] * x[0] + axis[1] * x[1] + axis[2] * x[2];
    let cross = [axis[1] * x[2] - axis[2] * x[1], axis[2] * x[0] - axis[0] * x[2], axis[0] * x[1] - axis[1] * x[0]];
    [0, 1, 2].map(|i| x[i] * c + cross[i] * s + axis[i] * d * (1.0 - c))
}

/// Random proper orthochronous Lorentz transformation: a rotation followed by
/// a boost of rapidity below `max_rapidity`.
pub struct Lorentz {
    axis: [f64; 3],
    angle: f64,
    dir: [f64; 3],
    rapidity: f64,
}

impl Lorentz {
    pub fn random(rng: &mut impl Rng, max_rapidity: f64) -> Self {
        Self {
            axis: unit3(rng),
            angle: rng.gen_range(0.0..std::f64::consts::TAU),
            dir: unit3(rng),
            rapidity: rng.gen_range(0.0..max_rapidity),
        }
    }

    pub fn apply(&self, v: Vec4) -> Vec4 {
        let r = rotate([v.x1, v.x2, v.x3], self.axis, self.angle);
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        let along = self.dir[0] * r[0] + self.dir[1] * r[1] + self.dir[2] * r[2];
        let x0 = ch * v.x0 + sh * along;
        let shift = sh * v.x0 + (ch - 1.0) * along;
        Vec4::new(x0, r[0] + shift * self.dir[0], r[1] + shift * self.dir[1], r[2] + shift * self.dir[2])
    }
}

/// `normalize(center + sum_k c_k cos(k t) + s_k sin(k t))` with two harmonics
/// and total coefficient norm at most `amplitude`.
pub struct TrigCurve {
    pub center: [f64; 3],
    pub cos: Vec<[f64; 3]>,
    pub sin: Vec<[f64; 3]>,
}

impl TrigCurve {
    pub fn random(rng: &mut impl Rng, center: [f64; 3], amplitude: f64) -> Self {
        let mut draw = || {
            let d = unit3(rng);
            let r = rng.gen_range(0.0..amplitude / 4.0);
            d.map(|x| x * r)
        };
        let cos = vec![draw(), draw()];
        let sin = vec![draw(), draw()];
        Self { center, cos, sin }
    }

    pub fn eval(&self, t: f64) -> Vec4 {
        let mut p = self.center;
        for (k, (c, s)) in self.cos.iter().zip(&self.sin).enumerate() {
            let m = (k + 1) as f64;
            for i in 0..3 {
                p[i] += c[i] * (m * t).cos() + s[i] * (m * t).sin();
            }
        }
        Vec4::spatial3(p[0], p[1], p[2])
    }

    pub fn sample(&self, axis: Axis) -> SphereCurve {
        SphereCurve::normalized(axis, |t| self.eval(t)).unwrap()
    }
}

/// `random_pair` from a fixed seed, for proptest strategies over seeds.
pub fn seeded_pair(seed: u64, axis: Axis) -> (SphereCurve, SphereCurve) {
    random_pair(&mut rng(seed), axis)
}

/// Two random sphere curves around orthogonal caps, so `T1 != +-T2`.
pub fn random_pair(rng: &mut impl Rng, axis: Axis) -> (SphereCurve, SphereCurve) {
    let c1 = unit3(rng);
    let helper = unit3(rng);
    let mut c2 = [
        c1[1] * helper[2] - c1[2] * helper[1],
        c1[2] * helper[0] - c1[0] * helper[2],
        c1[0] * helper[1] - c1[1] * helper[0],
    ];
    let n = (c2[0] * c2[0] + c2[1] * c2[1] + c2[2] * c2[2]).sqrt();
    c2 = c2.map(|x| x / n);
    let t1 = TrigCurve::random(rng, c1, 0.5);
    let t2 = TrigCurve::random(rng, c2, 0.5);
    (t1.sample(axis), t2.sample(axis))
}
