use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

/// Shape of a convex domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DomainKind {
    /// Ball of radius `r` centred at the origin of `ℝⁿ`.
    Ball { n: usize, r: f64 },
    /// Box `Π [0, sᵢ]`.
    Box { sides: Vec<f64> },
}

/// A bounded convex domain with exact distance-to-boundary geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexDomain {
    pub kind: DomainKind,
}

/// Surface area of the unit sphere `S^{n−1}` in `ℝⁿ`.
pub fn unit_sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        4 => 2.0 * PI * PI,
        _ => f64::NAN,
    }
}

impl ConvexDomain {
    pub fn ball(n: usize, r: f64) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidInput(format!("dimension must be in 1..={MAX_DIM}, got {n}")));
        }
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidInput(format!("radius must be positive, got {r}")));
        }
        Ok(ConvexDomain { kind: DomainKind::Ball { n, r } })
    }

    pub fn boxed(sides: Vec<f64>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&sides.len()) {
            return Err(Error::InvalidInput(format!(
                "box needs 1..={MAX_DIM} sides, got {}",
                sides.len()
            )));
        }
        if let Some(s) = sides.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::InvalidInput(format!("box sides must be positive, got {s}")));
        }
        Ok(ConvexDomain { kind: DomainKind::Box { sides } })
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            DomainKind::Ball { n, .. } => *n,
            DomainKind::Box { sides } => sides.len(),
        }
    }

    /// Inradius `δ₀ = sup δ`.
    pub fn inradius(&self) -> f64 {
        match &self.kind {
            DomainKind::Ball { r, .. } => *r,
            DomainKind::Box { sides } => 0.5 * sides.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// Distance from `x` to the boundary (negative outside).
    pub fn dist(&self, x: &[f64]) -> f64 {
        match &self.kind {
            DomainKind::Ball { r, .. } => r - x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            DomainKind::Box { sides } => sides
                .iter()
                .zip(x)
                .map(|(s, v)| v.min(s - v))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.dist(x) > 0.0
    }

    /// `|{δ > t}|`.
    pub fn volume_profile(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match &self.kind {
            DomainKind::Ball { n, r } => {
                let rr = (r - t).max(0.0);
                unit_sphere_area(*n) * rr.powi(*n as i32) / *n as f64
            }
            DomainKind::Box { sides } => sides.iter().map(|s| (s - 2.0 * t).max(0.0)).product(),
        }
    }

    /// `A(t) = −d/dt |{δ > t}|`, the perimeter of the level set.
    pub fn area_profile(&self, t: f64) -> f64 {
        if t >= self.inradius() {
            return 0.0;
        }
        let t = t.max(0.0);
        match &self.kind {
            DomainKind::Ball { n, r } => unit_sphere_area(*n) * (r - t).powi(*n as i32 - 1),
            DomainKind::Box { sides } => {
                let shrunk: Vec<f64> = sides.iter().map(|s| (s - 2.0 * t).max(0.0)).collect();
                (0..shrunk.len())
                    .map(|i| {
                        2.0 * shrunk
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .map(|(_, v)| *v)
                            .product::<f64>()
                    })
                    .sum()
            }
        }
    }

    /// `|Ω|`.
    pub fn volume(&self) -> f64 {
        self.volume_profile(0.0)
    }

    /// Axis-aligned box containing the domain.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        match &self.kind {
            DomainKind::Ball { n, r } => vec![(-r, *r); *n],
            DomainKind::Box { sides } => sides.iter().map(|s| (0.0, *s)).collect(),
        }
    }

    /// Spec string, e.g. `ball:2,1` or `box:2x1x1`.
    pub fn label(&self) -> String {
        match &self.kind {
            DomainKind::Ball { n, r } => format!("ball:{n},{r}"),
            DomainKind::Box { sides } => {
                let s: Vec<String> = sides.iter().map(|v| v.to_string()).collect();
                format!("box:{}", s.join("x"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_examples() {
        let b = ConvexDomain::ball(2, 1.0).unwrap();
        assert_eq!(b.inradius(), 1.0);
        assert!((b.area_profile(0.25) - 2.0 * PI * 0.75).abs() < 1e-15);
        let sq = ConvexDomain::boxed(vec![1.0, 1.0]).unwrap();
        assert_eq!(sq.inradius(), 0.5);
        assert!((sq.area_profile(0.1) - 4.0 * 0.8).abs() < 1e-15);
        let b3 = ConvexDomain::ball(3, 2.0).unwrap();
        assert!((b3.volume() - 32.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn distance_function() {
        let b = ConvexDomain::box_or_panic(&[2.0, 1.0]);
        assert_eq!(b.dist(&[0.3, 0.5]), 0.3);
        assert_eq!(b.dist(&[1.0, 0.9]), 0.09999999999999998);
        assert!(!b.contains(&[2.5, 0.5]));
        let ball = ConvexDomain::ball(3, 1.0).unwrap();
        assert!((ball.dist(&[0.0, 0.6, 0.0]) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn area_is_minus_volume_derivative() {
        let doms = [
            ConvexDomain::ball(1, 1.5).unwrap(),
            ConvexDomain::ball(4, 1.0).unwrap(),
            ConvexDomain::boxed(vec![2.0, 1.0, 1.0]).unwrap(),
            ConvexDomain::boxed(vec![3.0]).unwrap(),
        ];
        for d in &doms {
            for i in 1..10 {
                let t = d.inradius() * i as f64 / 10.0;
                let h = 1e-6;
                let fd = -(d.volume_profile(t + h) - d.volume_profile(t - h)) / (2.0 * h);
                assert!((fd - d.area_profile(t)).abs() < 1e-6 * (1.0 + fd.abs()), "{}", d.label());
            }
        }
    }

    #[test]
    fn invalid_dimensions() {
        assert!(ConvexDomain::ball(5, 1.0).is_err());
        assert!(ConvexDomain::ball(2, 0.0).is_err());
        assert!(ConvexDomain::boxed(vec![]).is_err());
        assert!(ConvexDomain::boxed(vec![1.0, -1.0]).is_err());
    }

    impl ConvexDomain {
        fn box_or_panic(s: &[f64]) -> Self {
            ConvexDomain::boxed(s.to_vec()).unwrap()
        }
    }
}
