use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use super::functionals::{self as fx, Point};
use crate::density::Density;
use crate::error::{domain, Result};

/// Closed, simple, counter-clockwise polygon in the plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyCurve {
    vertices: Vec<Point>,
}

impl PolyCurve {
    pub const MIN_VERTICES: usize = 16;

    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < Self::MIN_VERTICES {
            return domain(format!(
                "polygon needs at least {} vertices, got {n}",
                Self::MIN_VERTICES
            ));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return domain("polygon has non-finite coordinates");
        }
        for i in 0..n {
            let (u, w) = (vertices[i], vertices[(i + 1) % n]);
            if u == w {
                return domain(format!("degenerate edge at vertex {i}"));
            }
        }
        if fx::polygon_area(&vertices) <= 0.0 {
            return domain("polygon must be counter-clockwise with positive area");
        }
        if let Some((i, j)) = first_crossing(&vertices) {
            return domain(format!("polygon is not simple: edges {i} and {j} intersect"));
        }
        Ok(Self { vertices })
    }

    /// Skips the simplicity check; callers guarantee a star-shaped polygon.
    pub(crate) fn from_star_shaped(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn regular(n: usize, center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return domain(format!("radius must be positive, got {radius}"));
        }
        let v = (0..n)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / n as f64;
                [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
            })
            .collect();
        Self::new(v)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        fx::polygon_area(&self.vertices)
    }

    pub fn length(&self) -> f64 {
        fx::polygon_length(&self.vertices)
    }

    pub fn centroid(&self) -> Point {
        fx::polygon_centroid(&self.vertices)
    }

    /// Every ray from `center` meets the boundary once, i.e. the polar angle
    /// about `center` increases strictly around the polygon.
    pub fn is_star_shaped_about(&self, center: Point) -> bool {
        let n = self.vertices.len();
        let mut turn = 0.0;
        for i in 0..n {
            let u = [self.vertices[i][0] - center[0], self.vertices[i][1] - center[1]];
            let w = [
                self.vertices[(i + 1) % n][0] - center[0],
                self.vertices[(i + 1) % n][1] - center[1],
            ];
            let cr = u[0] * w[1] - u[1] * w[0];
            if cr <= 0.0 {
                return false;
            }
            turn += cr.atan2(u[0] * w[0] + u[1] * w[1]);
        }
        (turn - 2.0 * PI).abs() < 1e-9
    }

    /// CSV with header `vertex_index,x,y`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex_index,x,y\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "{i},{},{}", crate::fmt12(v[0]), crate::fmt12(v[1]));
        }
        s
    }
}

fn first_crossing(v: &[Point]) -> Option<(usize, usize)> {
    let n = v.len();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (v[j], v[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: Point, b: Point, c: Point) -> bool {
    c[0] >= a[0].min(b[0]) && c[0] <= a[0].max(b[0]) && c[1] >= a[1].min(b[1]) && c[1] <= a[1].max(b[1])
}

fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Weighted perimeter of a polygon.
pub fn weighted_perimeter_2d(dens: &Density, curve: &PolyCurve) -> f64 {
    fx::perimeter_2d(dens, curve.vertices(), None)
}

/// Weighted mass enclosed by a polygon. Fails unless the polygon is
/// star-shaped about its centroid.
pub fn weighted_mass_2d(dens: &Density, curve: &PolyCurve) -> Result<f64> {
    if !curve.is_star_shaped_about(curve.centroid()) {
        return domain("polygon is not star-shaped about its centroid");
    }
    Ok(fx::mass_2d(dens, curve.vertices(), None))
}

/// Gradient of the weighted perimeter with respect to each vertex.
pub fn perimeter_gradient_2d(dens: &Density, curve: &PolyCurve) -> Vec<Point> {
    let mut g = vec![[0.0; 2]; curve.len()];
    fx::perimeter_2d(dens, curve.vertices(), Some(&mut g));
    g
}

/// Gradient of the weighted mass with respect to each vertex.
pub fn mass_gradient_2d(dens: &Density, curve: &PolyCurve) -> Vec<Point> {
    let mut g = vec![[0.0; 2]; curve.len()];
    fx::mass_2d(dens, curve.vertices(), Some(&mut g));
    g
}

/// Open meridian profile `y >= 0` whose end points lie on the x-axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    points: Vec<Point>,
}

impl Profile {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 3 {
            return domain("profile needs at least 3 points");
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return domain("profile has non-finite coordinates");
        }
        let (first, last) = (points[0], points[points.len() - 1]);
        if first[1] != 0.0 || last[1] != 0.0 {
            return domain("profile end points must lie on the axis");
        }
        if points.iter().any(|q| q[1] < 0.0) {
            return domain("profile must lie in the closed upper half-plane");
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return domain("profile has a degenerate segment");
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Closed meridian section: the profile followed by its mirror image.
    pub fn meridian(&self) -> PolyCurve {
        let n = self.points.len();
        let mut v = self.points.clone();
        v.extend(self.points[1..n - 1].iter().rev().map(|q| [q[0], -q[1]]));
        PolyCurve::from_star_shaped(v)
    }

    pub fn volume(&self) -> f64 {
        fx::axisym_volume_centroid(&self.points).0
    }

    pub fn axial_centroid(&self) -> f64 {
        fx::axisym_volume_centroid(&self.points).1
    }
}

/// Weighted area of the surface of revolution of a profile.
pub fn weighted_surface_axisym(dens: &Density, profile: &Profile) -> f64 {
    fx::surface_axisym(dens, profile.points(), None)
}

/// Weighted volume enclosed by the surface of revolution of a profile.
pub fn weighted_mass_axisym(dens: &Density, profile: &Profile) -> f64 {
    fx::mass_axisym(dens, profile.points(), None)
}

pub fn surface_gradient_axisym(dens: &Density, profile: &Profile) -> Vec<Point> {
    let mut g = vec![[0.0; 2]; profile.points().len()];
    fx::surface_axisym(dens, profile.points(), Some(&mut g));
    g
}

pub fn mass_gradient_axisym(dens: &Density, profile: &Profile) -> Vec<Point> {
    let mut g = vec![[0.0; 2]; profile.points().len()];
    fx::mass_axisym(dens, profile.points(), Some(&mut g));
    g
}

/// `L / sqrt(4 pi A)`: 1 for a circle, larger for any other shape.
pub fn isoperimetric_quotient(curve: &PolyCurve) -> f64 {
    curve.length() / (4.0 * PI * curve.area()).sqrt()
}
