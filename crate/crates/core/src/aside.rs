//! The A-side: the smoothing X = {u₁v₁ − c₁ = u₂v₂ − c₂ = z}, its
//! Lagrangian fibration π, fibers, the fixed-point curves Ĉ_i and the walls.
//! Float only.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::base_geometry::{Side, WallConfig};
use crate::novikov::Scalar;

pub const TOL: f64 = 1e-9;
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AsideError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point is not on X (residuals {0:e}, {1:e})")]
    OffX(f64, f64),
    #[error("product constraint violated: |uv - ({expected})| = {residual:e}")]
    Product { expected: Complex64, residual: f64 },
    #[error("q = ({0}, {1}, {2}) lies on the singular locus")]
    OnDelta(f64, f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XPoint {
    pub u1: Complex64,
    pub v1: Complex64,
    pub u2: Complex64,
    pub v2: Complex64,
    pub z: Complex64,
}

/// Walls H_{i±} of Maslov-0 disks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Wall {
    H1Plus,
    H1Minus,
    H2Plus,
    H2Minus,
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wall::H1Plus => "H1+",
            Wall::H1Minus => "H1-",
            Wall::H2Plus => "H2+",
            Wall::H2Minus => "H2-",
        })
    }
}

/// The A-side with constants c_i = e^{w_i}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ASide {
    pub w1: f64,
    pub w2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ASide {
    pub fn new(w1: f64, w2: f64) -> Self {
        ASide { w1, w2, c1: w1.exp(), c2: w2.exp() }
    }

    pub fn from_walls<S: Scalar>(walls: &WallConfig<S>) -> Self {
        Self::new(walls.w1.to_f64(), walls.w2.to_f64())
    }

    pub fn c(&self, i: usize) -> f64 {
        if i == 1 {
            self.c1
        } else {
            self.c2
        }
    }

    pub fn w(&self, i: usize) -> f64 {
        if i == 1 {
            self.w1
        } else {
            self.w2
        }
    }

    /// `(|u₁v₁ − c₁ − z|, |u₂v₂ − c₂ − z|)`.
    pub fn residuals(&self, p: &XPoint) -> (f64, f64) {
        (
            (p.u1 * p.v1 - self.c1 - p.z).norm(),
            (p.u2 * p.v2 - self.c2 - p.z).norm(),
        )
    }

    pub fn on_x(&self, p: &XPoint) -> bool {
        let (r1, r2) = self.residuals(p);
        let scale = 1.0 + p.z.norm() + self.c1;
        r1 <= TOL * scale && r2 <= TOL * scale
    }

    /// π = (½(|u₁|²−|v₁|²), ½(|u₂|²−|v₂|²), log|z|).
    pub fn pi_map(&self, p: &XPoint) -> Result<[f64; 3], AsideError> {
        if p.z == Complex64::new(0.0, 0.0) {
            return Err(AsideError::Domain("z = 0".into()));
        }
        if !self.on_x(p) {
            let (r1, r2) = self.residuals(p);
            return Err(AsideError::OffX(r1, r2));
        }
        Ok(pi_raw(p))
    }

    /// A point of the fiber L_q with torus angles (φ, α₁, α₂).
    pub fn fiber_point(&self, q: [f64; 3], phi: f64, a1: f64, a2: f64) -> XPoint {
        let z = Complex64::from_polar(q[2].exp(), phi);
        let (u1, v1) = self.factor(self.c1 + z, q[0], a1);
        let (u2, v2) = self.factor(self.c2 + z, q[1], a2);
        XPoint { u1, v1, u2, v2, z }
    }

    /// Solves `uv = w`, `½(|u|²−|v|²) = q` with `arg u = α`.
    fn factor(&self, w: Complex64, q: f64, alpha: f64) -> (Complex64, Complex64) {
        let r = w.norm();
        if r < EXACT_TOL && q.abs() < EXACT_TOL {
            return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        }
        let s = q.hypot(r);
        let u_sq = if q >= 0.0 { q + s } else { r * r / (s - q) };
        let u = Complex64::from_polar(u_sq.sqrt(), alpha);
        if u_sq > 0.0 {
            (u, w / u)
        } else {
            (u, Complex64::from_polar((-2.0 * q).sqrt(), -alpha))
        }
    }

    /// A point of Ĉ₁ = {u₁ = v₁ = 0, z = −c₁} or Ĉ₂ = {u₂ = v₂ = 0, z = −c₂}.
    pub fn chat_point(&self, i: usize, u: Complex64, v: Complex64) -> Result<XPoint, AsideError> {
        let zero = Complex64::new(0.0, 0.0);
        let (ci, cj) = match i {
            1 => (self.c1, self.c2),
            2 => (self.c2, self.c1),
            _ => return Err(AsideError::Domain(format!("no curve C{i}"))),
        };
        let expected = Complex64::new(cj - ci, 0.0);
        let residual = (u * v - expected).norm();
        if residual > TOL * (1.0 + ci) {
            return Err(AsideError::Product { expected, residual });
        }
        let z = Complex64::new(-ci, 0.0);
        Ok(if i == 1 {
            XPoint { u1: zero, v1: zero, u2: u, v2: v, z }
        } else {
            XPoint { u1: u, v1: v, u2: zero, v2: zero, z }
        })
    }

    /// The factor pair `(r e^{iθ}, (c_j − c_i)/(r e^{iθ}))` parameterizing Ĉ_i.
    pub fn chat_param(&self, i: usize, r: f64, theta: f64) -> (Complex64, Complex64) {
        let d = if i == 1 { self.c2 - self.c1 } else { self.c1 - self.c2 };
        let u = Complex64::from_polar(r, theta);
        (u, Complex64::new(d, 0.0) / u)
    }

    /// A point of the divisor D_{i−} = {u_i = 0} or D_{i+} = {v_i = 0};
    /// `t` is the remaining factor, `(r, θ)` parameterize the other pair.
    pub fn divisor_point(&self, i: usize, side: Side, t: Complex64, r: f64, theta: f64) -> XPoint {
        let zero = Complex64::new(0.0, 0.0);
        let (a, b) = match side {
            Side::Minus => (zero, t),
            Side::Plus => (t, zero),
        };
        let (u, v) = self.chat_param(i, r, theta);
        let z = Complex64::new(-self.c(i), 0.0);
        if i == 1 {
            XPoint { u1: a, v1: b, u2: u, v2: v, z }
        } else {
            XPoint { u1: u, v1: v, u2: a, v2: b, z }
        }
    }

    /// Whether q ∈ Δ_i (within `tol`).
    pub fn in_delta(&self, i: usize, q: &[f64; 3], tol: f64) -> bool {
        q[i - 1].abs() <= tol && (q[2] - self.w(i)).abs() <= tol
    }

    pub fn wall_predicate(&self, q: [f64; 3]) -> Result<Option<Wall>, AsideError> {
        if self.in_delta(1, &q, 0.0) || self.in_delta(2, &q, 0.0) {
            return Err(AsideError::OnDelta(q[0], q[1], q[2]));
        }
        let on = |w: f64| (q[2] - w).abs() <= EXACT_TOL;
        Ok(if on(self.w1) {
            Some(if q[0] > 0.0 { Wall::H1Plus } else { Wall::H1Minus })
        } else if on(self.w2) {
            Some(if q[1] > 0.0 { Wall::H2Plus } else { Wall::H2Minus })
        } else {
            None
        })
    }
}

fn pi_raw(p: &XPoint) -> [f64; 3] {
    [
        (p.u1.norm_sqr() - p.v1.norm_sqr()) / 2.0,
        (p.u2.norm_sqr() - p.v2.norm_sqr()) / 2.0,
        p.z.norm().ln(),
    ]
}

/// The T²-action (u₁, u₂, v₁, v₂) ↦ (e^{is}u₁, e^{it}u₂, e^{−is}v₁, e^{−it}v₂).
pub fn rotate(p: &XPoint, s: f64, t: f64) -> XPoint {
    let es = Complex64::from_polar(1.0, s);
    let et = Complex64::from_polar(1.0, t);
    XPoint {
        u1: p.u1 * es,
        v1: p.v1 / es,
        u2: p.u2 * et,
        v2: p.v2 / et,
        z: p.z,
    }
}

/// Normalizes an angle into [0, 2π).
pub fn wrap_angle(a: f64) -> f64 {
    a.rem_euclid(2.0 * PI)
}

pub fn max_abs_diff(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
