//! Closed forms for the two-block reduced objective.
//!
//! With `A = diag(a1, a2, …)` and the leading `2 × 2` block of `B` equal to
//! `[[b11, b12], [b21, b22]]`, the objective along a real rotation angle
//! `θ` (with `t = tan θ`) is `h(t) = k + (m + n t)/(1 + t²)`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockClosedForm {
    pub a1: f64,
    pub a2: f64,
    pub b11: f64,
    pub b12: f64,
    pub b21: f64,
    pub b22: f64,
    pub theta: f64,
}

impl BlockClosedForm {
    pub fn k(&self) -> f64 {
        (self.a1 + self.b11).powi(2) + self.b21.powi(2) + self.b12.powi(2) + (self.a2 + self.b22).powi(2)
    }

    pub fn m(&self) -> f64 {
        self.b12.powi(2) - self.b21.powi(2) + (self.a2 + self.b11).powi(2) - (self.a2 + self.b22).powi(2)
    }

    pub fn n(&self) -> f64 {
        2.0 * self.b12 * (self.a2 + self.b22) + 2.0 * self.b21 * (self.a2 + self.b11)
    }

    pub fn t(&self) -> f64 {
        self.theta.tan()
    }

    pub fn h_at(&self, t: f64) -> f64 {
        if t.is_infinite() {
            return self.k();
        }
        self.k() + (self.m() + self.n() * t) / (1.0 + t * t)
    }

    /// `h` at the stored angle, in trigonometric form (finite at `θ = π/2`).
    pub fn h_theta(&self) -> f64 {
        let (s, c) = (2.0 * self.theta).sin_cos();
        self.k() + 0.5 * self.m() * (1.0 + c) + 0.5 * self.n() * s
    }

    pub fn h_sup(&self) -> f64 {
        let (k, m, n) = (self.k(), self.m(), self.n());
        if n == 0.0 {
            (k + m).max(k)
        } else {
            k + 0.5 * (m + m.hypot(n))
        }
    }

    /// Where `h_sup` is reached; `None` stands for `t = ±∞`.
    pub fn argmax_t(&self) -> Option<f64> {
        let (m, n) = (self.m(), self.n());
        if n == 0.0 {
            return (m >= 0.0).then_some(0.0);
        }
        Some((-m + m.hypot(n)) / n)
    }

    pub fn reduced(&self, d: usize) -> ReducedCoordinates {
        ReducedCoordinates {
            d,
            x: 0.5 * (self.a1 + self.a2),
            y: 0.5 * (self.a1 - self.a2),
            z: 0.5 * (self.b11 - self.b22),
            w: 0.5 * (self.b11 + self.b22),
            p: 0.5 * (self.b12 + self.b21),
            q: 0.5 * (self.b12 - self.b21),
        }
    }
}

/// Coordinates `a1 = x + y`, `a2 = x − y`, `b11 = w + z`, `b22 = w − z`,
/// `b12 = p + q`, `b21 = p − q`. The remaining `d − 2` diagonal entries of
/// `A` and `B` are `−2x/(d−2)` and `−2w/(d−2)`, which turns the norm
/// constraint into `φᵀWφ = 1/(2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedCoordinates {
    pub d: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub p: f64,
    pub q: f64,
}

impl ReducedCoordinates {
    pub fn from_vec(d: usize, v: [f64; 6]) -> Self {
        Self { d, x: v[0], y: v[1], z: v[2], w: v[3], p: v[4], q: v[5] }
    }

    pub fn to_vec(&self) -> [f64; 6] {
        [self.x, self.y, self.z, self.w, self.p, self.q]
    }

    pub fn block_form(&self) -> BlockClosedForm {
        BlockClosedForm {
            a1: self.x + self.y,
            a2: self.x - self.y,
            b11: self.w + self.z,
            b12: self.p + self.q,
            b21: self.p - self.q,
            b22: self.w - self.z,
            theta: 0.0,
        }
    }

    /// Diagonal of `W` in the order `(x, y, z, w, p, q)`.
    pub fn weights(d: usize) -> [f64; 6] {
        let s = d as f64 / (d as f64 - 2.0);
        [s, 1.0, 1.0, s, 1.0, 1.0]
    }

    pub fn constraint(&self) -> f64 {
        let w = Self::weights(self.d);
        self.to_vec().iter().zip(w).map(|(v, wi)| wi * v * v).sum()
    }

    pub fn target(d: usize) -> f64 {
        0.5 / d as f64
    }

    pub fn delta(&self) -> f64 {
        let s = self.w + self.x - self.y;
        (self.p * self.p + self.z * self.z) * (self.q * self.q + s * s)
    }

    pub fn h(&self) -> f64 {
        let Self { x, y, z, w, p, q, .. } = *self;
        2.0 * self.delta().sqrt()
            + 2.0 * (p * p + p * q + q * q + z * (w + x + y) + (w + x).powi(2) + y * y + z * z)
    }

    /// Analytic gradient of `h`; `None` where `Δ = 0` (not differentiable).
    pub fn grad_h(&self) -> Option<[f64; 6]> {
        let Self { x, y, z, w, p, q, .. } = *self;
        let root = self.delta().sqrt();
        if root <= 0.0 {
            return None;
        }
        let s = w + x - y;
        let big_s = p * p + z * z;
        let big_t = q * q + s * s;
        let gs = big_s * s / root;
        Some([
            2.0 * (gs + z + 2.0 * (w + x)),
            2.0 * (-gs + z + 2.0 * y),
            2.0 * (z * big_t / root + (w + x + y) + 2.0 * z),
            2.0 * (gs + z + 2.0 * (w + x)),
            2.0 * (p * big_t / root + 2.0 * p + q),
            2.0 * (q * big_s / root + p + 2.0 * q),
        ])
    }
}
