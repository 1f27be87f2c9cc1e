//! Minkowski space with signature (+,-,-,-): vectors, the connected Lorentz
//! group, causal classification, orbit labels and orbit sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::{Matrix4, Vector4};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{par_blocks, stream_rng, unit_vector};

/// Numerical tolerances shared by the geometric checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed residual in `mᵀηm = η` for a Lorentz matrix.
    pub group: f64,
    /// Relative tolerance for numerically derived quantities.
    pub num: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            group: 1e-9,
            num: 1e-8,
        }
    }
}

/// The Minkowski metric diag(+1,-1,-1,-1).
pub fn eta() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A point of Minkowski space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl FourVector {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(t: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { t, x1, x2, x3 }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x1, self.x2, self.x3]
    }

    /// Time component together with a spatial 3-vector.
    pub fn from_parts(t: f64, x: [f64; 3]) -> Self {
        Self::new(t, x[0], x[1], x[2])
    }

    pub fn spatial(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// `t² − x1² − x2² − x3²`.
    pub fn interval(self) -> f64 {
        self.t * self.t - self.x1 * self.x1 - self.x2 * self.x2 - self.x3 * self.x3
    }

    /// The Minkowski bilinear form.
    pub fn dot(self, other: Self) -> f64 {
        self.t * other.t - self.x1 * other.x1 - self.x2 * other.x2 - self.x3 * other.x3
    }

    /// Sum of squared components; a scale for relative tolerances.
    pub fn euclidean_norm_sq(self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum()
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::from(self.to_array())
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for FourVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector::new(self * v.t, self * v.x1, self * v.x2, self * v.x3)
    }
}

impl fmt::Display for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.t, self.x1, self.x2, self.x3)
    }
}

/// Parses the comma-separated text form `t,x1,x2,x3`.
impl FromStr for FourVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidInput(format!(
                "expected four comma-separated components, got {s:?}"
            )));
        }
        let mut c = [0.0; 4];
        for (slot, p) in c.iter_mut().zip(&parts) {
            *slot = p
                .parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("component {p:?}: {e}")))?;
        }
        let v = Self::from_array(c);
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite component in {s:?}")));
        }
        Ok(v)
    }
}

/// `t² − x1² − x2² − x3²`.
pub fn interval(v: FourVector) -> f64 {
    v.interval()
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Zero,
    TimelikeFuture,
    TimelikePast,
    NullFuture,
    NullPast,
    Spacelike,
}

impl CausalClass {
    pub fn is_timelike(self) -> bool {
        matches!(self, Self::TimelikeFuture | Self::TimelikePast)
    }

    pub fn is_null(self) -> bool {
        matches!(self, Self::NullFuture | Self::NullPast)
    }

    /// Image under `v ↦ −v`.
    pub fn reflected(self) -> Self {
        match self {
            Self::TimelikeFuture => Self::TimelikePast,
            Self::TimelikePast => Self::TimelikeFuture,
            Self::NullFuture => Self::NullPast,
            Self::NullPast => Self::NullFuture,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Zero => "zero",
            Self::TimelikeFuture => "timelike-future",
            Self::TimelikePast => "timelike-past",
            Self::NullFuture => "null-future",
            Self::NullPast => "null-past",
            Self::Spacelike => "spacelike",
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CausalClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "zero" => Self::Zero,
            "timelike-future" | "future" => Self::TimelikeFuture,
            "timelike-past" | "past" => Self::TimelikePast,
            "null-future" => Self::NullFuture,
            "null-past" => Self::NullPast,
            "spacelike" => Self::Spacelike,
            _ => return Err(Error::InvalidInput(format!("unknown causal class {s:?}"))),
        })
    }
}

/// Classifies `v`; intervals with `|s| ≤ tol` fall into the null or zero branch.
pub fn classify(v: FourVector, tol: f64) -> CausalClass {
    let s = v.interval();
    if s.abs() <= tol {
        if v.t.abs() <= tol && v.euclidean_norm_sq() <= tol * tol {
            CausalClass::Zero
        } else if v.t > 0.0 {
            CausalClass::NullFuture
        } else if v.t < 0.0 {
            CausalClass::NullPast
        } else {
            // t = 0 with a tiny spatial part: numerically the origin.
            CausalClass::Zero
        }
    } else if s > 0.0 {
        if v.t > 0.0 {
            CausalClass::TimelikeFuture
        } else {
            CausalClass::TimelikePast
        }
    } else {
        CausalClass::Spacelike
    }
}

/// Tolerance used by [`orbit_of`]: relative to the size of the vector.
pub fn scaled_tolerance(v: FourVector, tol: &Tolerances) -> f64 {
    tol.num * v.euclidean_norm_sq().max(1.0)
}

/// An element of the connected Lorentz group SO⁺(3,1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LorentzTransform {
    m: Matrix4<f64>,
}

impl LorentzTransform {
    /// Validates `m` against `mᵀηm = η`, `det m = 1` and `m₀₀ ≥ 1`.
    pub fn new(m: Matrix4<f64>, tol: f64) -> Result<Self> {
        let residual = lorentz_residual(&m);
        if !residual.is_finite() || residual > tol * (1.0 + m.abs().max().powi(2)) {
            return Err(Error::NotLorentz { residual });
        }
        if m[(0, 0)] < 1.0 - tol || m.determinant() <= 0.0 {
            return Err(Error::NotLorentz { residual });
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: Matrix4::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    /// `self · other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    /// `η mᵀ η`.
    pub fn inverse(&self) -> Self {
        let e = eta();
        Self {
            m: e * self.m.transpose() * e,
        }
    }

    pub fn act(&self, v: FourVector) -> FourVector {
        FourVector::from_vector(&(self.m * v.to_vector()))
    }

    /// Max-entry residual of `mᵀηm − η`.
    pub fn residual(&self) -> f64 {
        lorentz_residual(&self.m)
    }

    /// Entrywise comparison.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.m - other.m).abs().max() <= tol * (1.0 + self.m.abs().max())
    }

    /// Pure boost along a unit `direction` with the given rapidity.
    pub fn boost(direction: [f64; 3], rapidity: f64) -> Result<Self> {
        let n = check_unit(direction)?;
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, i + 1)] = sh * n[i];
            m[(i + 1, 0)] = sh * n[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] += (ch - 1.0) * n[i] * n[j];
            }
        }
        Ok(Self { m })
    }

    /// Spatial rotation by `angle` about a unit `axis` (right-hand rule).
    pub fn rotation(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = check_unit(axis)?;
        let r = rotation_matrix3(n, angle);
        let mut m = Matrix4::identity();
        for i in 0..3 {
            for j in 0..3 {
                m[(i + 1, j + 1)] = r[i][j];
            }
        }
        Ok(Self { m })
    }

    /// Embeds a 3×3 rotation matrix.
    pub fn from_rotation(r: [[f64; 3]; 3]) -> Self {
        let mut m = Matrix4::identity();
        for i in 0..3 {
            for j in 0..3 {
                m[(i + 1, j + 1)] = r[i][j];
            }
        }
        Self { m }
    }

    /// A random element: uniform rotation composed with a boost whose
    /// rapidity is uniform on `[0, max_rapidity]` along a uniform direction.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_rapidity: f64) -> Self {
        let axis = unit_vector(rng);
        let angle = rng.random_range(0.0..std::f64::consts::TAU);
        let dir = unit_vector(rng);
        let eta_r = rng.random_range(0.0..=max_rapidity);
        let rot = Self::from_rotation(rotation_matrix3(axis, angle));
        let b = Self::boost(dir, eta_r).expect("unit_vector returns unit vectors");
        b.compose(&rot)
    }
}

/// Deterministic random Lorentz transform for `seed` under the default sampler.
pub fn random_lorentz(seed: u64) -> LorentzTransform {
    LorentzTransform::random(&mut stream_rng(seed, 0), SamplerConfig::default().max_rapidity)
}

/// `act(g, v) = g·v`.
pub fn act(g: &LorentzTransform, v: FourVector) -> FourVector {
    g.act(v)
}

fn lorentz_residual(m: &Matrix4<f64>) -> f64 {
    let e = eta();
    (m.transpose() * e * m - e).abs().max()
}

fn check_unit(v: [f64; 3]) -> Result<[f64; 3]> {
    let n2 = v.iter().map(|c| c * c).sum::<f64>();
    if !n2.is_finite() || (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "expected a unit 3-vector, got {v:?} (norm² {n2})"
        )));
    }
    Ok(v)
}

/// Rodrigues rotation matrix about a unit axis.
pub fn rotation_matrix3(n: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let (s, c) = angle.sin_cos();
    let k = 1.0 - c;
    let [x, y, z] = n;
    [
        [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
        [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
        [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
    ]
}

/// An orbit of the Lorentz group in Minkowski space.
///
/// `radius` is a length: the interval of every point is `+radius²` on the
/// timelike hyperboloids and `−radius²` on the spacelike one. Null cones and
/// the origin have radius zero. The future timelike hyperboloid
/// `t² − |x|² = r²` is the orbit whose stabilizer is SU(2); it is called a
/// spacelike hyperboloid in some of the literature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiOrbit {
    pub class: CausalClass,
    pub radius: f64,
}

impl MinkowskiOrbit {
    pub fn new(class: CausalClass, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidInput(format!("orbit radius {radius} must be finite and ≥ 0")));
        }
        let zero_radius_class = matches!(
            class,
            CausalClass::Zero | CausalClass::NullFuture | CausalClass::NullPast
        );
        if zero_radius_class && radius != 0.0 {
            return Err(Error::InvalidInput(format!("{class} orbits have radius 0, got {radius}")));
        }
        if !zero_radius_class && radius == 0.0 {
            return Err(Error::InvalidInput(format!("{class} orbits need a positive radius")));
        }
        Ok(Self { class, radius })
    }

    pub fn zero() -> Self {
        Self {
            class: CausalClass::Zero,
            radius: 0.0,
        }
    }

    /// Future timelike hyperboloid of radius `r > 0`.
    pub fn future(r: f64) -> Result<Self> {
        Self::new(CausalClass::TimelikeFuture, r)
    }

    pub fn past(r: f64) -> Result<Self> {
        Self::new(CausalClass::TimelikePast, r)
    }

    pub fn spacelike(r: f64) -> Result<Self> {
        Self::new(CausalClass::Spacelike, r)
    }

    /// Value of the interval on the orbit.
    pub fn interval(&self) -> f64 {
        match self.class {
            CausalClass::TimelikeFuture | CausalClass::TimelikePast => self.radius * self.radius,
            CausalClass::Spacelike => -self.radius * self.radius,
            _ => 0.0,
        }
    }

    /// A point of the orbit fixed by the standard stabilizer.
    pub fn base_point(&self) -> FourVector {
        let r = self.radius;
        match self.class {
            CausalClass::Zero => FourVector::ZERO,
            CausalClass::TimelikeFuture => FourVector::new(r, 0.0, 0.0, 0.0),
            CausalClass::TimelikePast => FourVector::new(-r, 0.0, 0.0, 0.0),
            CausalClass::NullFuture => FourVector::new(1.0, 0.0, 0.0, 1.0),
            CausalClass::NullPast => FourVector::new(-1.0, 0.0, 0.0, -1.0),
            CausalClass::Spacelike => FourVector::new(0.0, 0.0, 0.0, r),
        }
    }

    /// Orbit of `−v` for `v` in this orbit.
    pub fn reflected(&self) -> Self {
        Self {
            class: self.class.reflected(),
            radius: self.radius,
        }
    }

    /// Whether `v` lies on this orbit within the relative tolerance.
    pub fn contains(&self, v: FourVector, tol: &Tolerances) -> bool {
        orbit_of_with(v, tol).class == self.class
            && (self.interval() - v.interval()).abs() <= scaled_tolerance(v, tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.class == other.class && (self.radius - other.radius).abs() <= tol * (1.0 + self.radius)
    }
}

impl fmt::Display for MinkowskiOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.class, self.radius)
    }
}

/// Orbit containing `v`, using the default tolerances.
pub fn orbit_of(v: FourVector) -> MinkowskiOrbit {
    orbit_of_with(v, &Tolerances::default())
}

pub fn orbit_of_with(v: FourVector, tol: &Tolerances) -> MinkowskiOrbit {
    let class = classify(v, scaled_tolerance(v, tol));
    let radius = match class {
        CausalClass::Zero | CausalClass::NullFuture | CausalClass::NullPast => 0.0,
        _ => v.interval().abs().sqrt(),
    };
    MinkowskiOrbit { class, radius }
}

/// Regularization of orbit samplers on non-compact orbits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Rapidities are drawn uniformly from `[0, max_rapidity]`
    /// (`[−max, max]` on the spacelike and null orbits).
    pub max_rapidity: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { max_rapidity: 5.0 }
    }
}

/// One point of `o` drawn with the bounded-rapidity sampler.
pub fn sample_point<R: Rng + ?Sized>(o: &MinkowskiOrbit, cfg: &SamplerConfig, rng: &mut R) -> FourVector {
    let r = o.radius;
    let max = cfg.max_rapidity;
    match o.class {
        CausalClass::Zero => FourVector::ZERO,
        CausalClass::TimelikeFuture | CausalClass::TimelikePast => {
            let n = unit_vector(rng);
            let eta = rng.random_range(0.0..=max);
            let v = FourVector::from_parts(r * eta.cosh(), n.map(|c| r * eta.sinh() * c));
            if o.class == CausalClass::TimelikePast {
                -v
            } else {
                v
            }
        }
        CausalClass::Spacelike => {
            let n = unit_vector(rng);
            let eta = rng.random_range(-max..=max);
            FourVector::from_parts(r * eta.sinh(), n.map(|c| r * eta.cosh() * c))
        }
        CausalClass::NullFuture | CausalClass::NullPast => {
            let n = unit_vector(rng);
            let scale = rng.random_range(-max..=max).exp();
            let v = FourVector::from_parts(scale, n.map(|c| scale * c));
            if o.class == CausalClass::NullPast {
                -v
            } else {
                v
            }
        }
    }
}

/// `n` deterministic samples of `o`.
pub fn sample_orbit(o: &MinkowskiOrbit, n: usize, seed: u64, cfg: &SamplerConfig) -> Result<Vec<FourVector>> {
    if n == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let blocks = par_blocks(n, seed, |rng, range| {
        range.map(|_| sample_point(o, cfg, rng)).collect::<Vec<_>>()
    });
    Ok(blocks.into_iter().flatten().collect())
}

/// Per-class statistics of sampled orbit sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub count: usize,
    pub min_radius: f64,
    pub max_radius: f64,
}

impl ClassStats {
    fn single(r: f64) -> Self {
        Self {
            count: 1,
            min_radius: r,
            max_radius: r,
        }
    }

    fn merge(&mut self, o: &Self) {
        self.count += o.count;
        self.min_radius = self.min_radius.min(o.min_radius);
        self.max_radius = self.max_radius.max(o.max_radius);
    }
}

/// Empirical range of `orbit_of(u + v)` over sampled pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitSumRange {
    pub n_samples: usize,
    pub min_radius: f64,
    pub max_radius: f64,
    pub by_class: BTreeMap<CausalClass, ClassStats>,
}

impl OrbitSumRange {
    fn empty(n_samples: usize) -> Self {
        Self {
            n_samples,
            min_radius: f64::INFINITY,
            max_radius: f64::NEG_INFINITY,
            by_class: BTreeMap::new(),
        }
    }

    fn push(&mut self, o: MinkowskiOrbit) {
        self.min_radius = self.min_radius.min(o.radius);
        self.max_radius = self.max_radius.max(o.radius);
        self.by_class
            .entry(o.class)
            .and_modify(|s| s.merge(&ClassStats::single(o.radius)))
            .or_insert_with(|| ClassStats::single(o.radius));
    }

    fn merge(&mut self, other: &Self) {
        self.min_radius = self.min_radius.min(other.min_radius);
        self.max_radius = self.max_radius.max(other.max_radius);
        for (c, s) in &other.by_class {
            self.by_class.entry(*c).and_modify(|m| m.merge(s)).or_insert(*s);
        }
    }

    /// Class counts, in class order.
    pub fn histogram(&self) -> Vec<(CausalClass, usize)> {
        self.by_class.iter().map(|(c, s)| (*c, s.count)).collect()
    }
}

/// Samples independent pairs `(u, v) ∈ o1 × o2` and records the orbit of `u + v`.
pub fn orbit_sum_range(
    o1: &MinkowskiOrbit,
    o2: &MinkowskiOrbit,
    n_samples: usize,
    seed: u64,
    cfg: &SamplerConfig,
) -> Result<OrbitSumRange> {
    if n_samples == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let tol = Tolerances::default();
    let parts = par_blocks(n_samples, seed, |rng, range| {
        let mut acc = OrbitSumRange::empty(range.len());
        for _ in range {
            let u = sample_point(o1, cfg, rng);
            let v = sample_point(o2, cfg, rng);
            acc.push(orbit_of_with(u + v, &tol));
        }
        acc
    });
    let mut total = OrbitSumRange::empty(n_samples);
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v(t: f64, a: f64, b: f64, c: f64) -> FourVector {
        FourVector::new(t, a, b, c)
    }

    #[test]
    fn interval_examples() {
        assert_eq!(interval(v(1.0, 0.0, 0.0, 0.0)), 1.0);
        assert_eq!(interval(v(1.0, 1.0, 0.0, 0.0)), 0.0);
        // 0.09 − 1.44 − 0.25 − 4.00
        assert!((interval(v(0.3, 1.2, -0.5, 2.0)) + 5.60).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(v(2.0, 0.0, 0.0, 0.0), 1e-9), CausalClass::TimelikeFuture);
        assert_eq!(classify(v(0.0, 1.0, 0.0, 0.0), 1e-9), CausalClass::Spacelike);
        assert_eq!(classify(v(-1.0, 1.0, 0.0, 0.0), 1e-9), CausalClass::NullPast);
        assert_eq!(classify(v(-2.0, 1.0, 0.0, 0.0), 1e-9), CausalClass::TimelikePast);
        assert_eq!(classify(FourVector::ZERO, 1e-9), CausalClass::Zero);
    }

    #[test]
    fn boost_and_rotation_examples() {
        let b0 = LorentzTransform::boost([1.0, 0.0, 0.0], 0.0).unwrap();
        assert!(b0.approx_eq(&LorentzTransform::identity(), 1e-15));
        let r = LorentzTransform::rotation([0.0, 0.0, 1.0], 2.0 * PI).unwrap();
        assert!(r.approx_eq(&LorentzTransform::identity(), 1e-9));
        let b = LorentzTransform::boost([1.0, 0.0, 0.0], 0.7).unwrap();
        let w = b.act(v(1.0, 0.0, 0.0, 0.0));
        // (cosh 0.7)² − (sinh 0.7)²
        assert!((w.interval() - 1.0).abs() < 1e-12);
        assert!(LorentzTransform::boost([1.0, 1.0, 0.0], 0.2).is_err());
        assert!(LorentzTransform::rotation([0.0, 0.0, 0.0], 0.2).is_err());
    }

    #[test]
    fn act_examples() {
        let x = v(0.3, 1.2, -0.5, 2.0);
        assert_eq!(act(&LorentzTransform::identity(), x), x);
        let g = random_lorentz(3);
        assert_eq!(act(&g, FourVector::ZERO), FourVector::ZERO);
        let b = LorentzTransform::boost([1.0, 0.0, 0.0], 1.0).unwrap();
        let w = act(&b, v(1.0, 0.0, 0.0, 0.0));
        assert!((w.t - 1f64.cosh()).abs() < 1e-14);
        assert!((w.x1 - 1f64.sinh()).abs() < 1e-14);
        assert_eq!((w.x2, w.x3), (0.0, 0.0));
    }

    #[test]
    fn lorentz_validation() {
        let g = random_lorentz(11);
        assert!(LorentzTransform::new(*g.matrix(), 1e-9).is_ok());
        let mut bad = *g.matrix();
        bad[(1, 2)] += 1e-3;
        assert!(LorentzTransform::new(bad, 1e-9).is_err());
        // time reversal has m00 = −1
        let tr = Matrix4::from_diagonal(&Vector4::new(-1.0, -1.0, 1.0, 1.0));
        assert!(LorentzTransform::new(tr, 1e-9).is_err());
        let inv = g.inverse();
        assert!(g.compose(&inv).approx_eq(&LorentzTransform::identity(), 1e-9));
    }

    #[test]
    fn orbit_of_examples() {
        assert_eq!(
            orbit_of(v(2.0, 0.0, 0.0, 0.0)),
            MinkowskiOrbit {
                class: CausalClass::TimelikeFuture,
                radius: 2.0
            }
        );
        assert_eq!(orbit_of(FourVector::ZERO), MinkowskiOrbit::zero());
        // 25 − 9 − 16 = 0 with t > 0
        let o = orbit_of(v(5.0, 3.0, 0.0, 4.0));
        assert_eq!(o.class, CausalClass::NullFuture);
        assert_eq!(o.radius, 0.0);
    }

    #[test]
    fn orbit_constructor_invariants() {
        assert!(MinkowskiOrbit::new(CausalClass::TimelikeFuture, 0.0).is_err());
        assert!(MinkowskiOrbit::new(CausalClass::NullPast, 1.0).is_err());
        assert!(MinkowskiOrbit::new(CausalClass::Spacelike, -1.0).is_err());
        assert!(MinkowskiOrbit::new(CausalClass::Zero, 0.0).is_ok());
    }

    #[test]
    fn samples_lie_on_orbit_and_are_deterministic() {
        let cfg = SamplerConfig::default();
        let tol = Tolerances::default();
        for o in [
            MinkowskiOrbit::future(1.0).unwrap(),
            MinkowskiOrbit::past(0.5).unwrap(),
            MinkowskiOrbit::spacelike(2.0).unwrap(),
            MinkowskiOrbit::new(CausalClass::NullFuture, 0.0).unwrap(),
        ] {
            let s = sample_orbit(&o, 100, 9, &cfg).unwrap();
            assert_eq!(s.len(), 100);
            for p in &s {
                let q = orbit_of_with(*p, &tol);
                assert_eq!(q.class, o.class, "{p}");
                assert!((p.interval() - o.interval()).abs() <= scaled_tolerance(*p, &tol));
            }
            assert_eq!(s, sample_orbit(&o, 100, 9, &cfg).unwrap());
        }
        let zero = sample_orbit(&MinkowskiOrbit::zero(), 5, 1, &cfg).unwrap();
        assert!(zero.iter().all(|p| *p == FourVector::ZERO));
        assert!(sample_orbit(&MinkowskiOrbit::zero(), 0, 1, &cfg).is_err());
    }

    #[test]
    fn future_samples_have_t_at_least_radius() {
        let s = sample_orbit(&MinkowskiOrbit::future(1.0).unwrap(), 1000, 2, &SamplerConfig::default()).unwrap();
        let mean = s.iter().map(|p| p.t).sum::<f64>() / s.len() as f64;
        assert!(s.iter().all(|p| p.t >= 1.0 - 1e-12));
        assert!(mean >= 1.0);
    }

    #[test]
    fn orbit_sum_zero_is_identity() {
        let cfg = SamplerConfig::default();
        let r = orbit_sum_range(&MinkowskiOrbit::zero(), &MinkowskiOrbit::future(1.5).unwrap(), 2000, 4, &cfg).unwrap();
        assert_eq!(r.histogram(), vec![(CausalClass::TimelikeFuture, 2000)]);
        assert!((r.min_radius - 1.5).abs() < 1e-9 && (r.max_radius - 1.5).abs() < 1e-9);
    }

    #[test]
    fn orbit_sum_future_past_mixes_classes() {
        let cfg = SamplerConfig::default();
        let f = MinkowskiOrbit::future(1.0).unwrap();
        let p = MinkowskiOrbit::past(1.0).unwrap();
        let r = orbit_sum_range(&f, &p, 20_000, 5, &cfg).unwrap();
        assert!(r.by_class.contains_key(&CausalClass::Spacelike));
        assert!(r.min_radius < 0.5, "{}", r.min_radius);
    }
}
