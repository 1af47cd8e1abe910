//! Weighted length/area functionals of polygons and axisymmetric profiles,
//! with analytic vertex gradients.
//!
//! Mass integrals fan out from the origin: each edge `(v0, v1)` contributes
//! the signed triangle `(0, v0, v1)`. Parametrising the triangle by
//! `s * ((1 - t) v0 + t v1)` makes the radial factor of `r^p` integrate in
//! closed form, leaving a 4-node Gauss–Legendre rule along the edge.

use std::f64::consts::PI;

use crate::density::Density;
use crate::numerics::GaussLegendre;

pub(crate) type Point = [f64; 2];

#[inline]
fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
fn lerp(a: Point, b: Point, t: f64) -> Point {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn edge_rule() -> &'static GaussLegendre {
    GaussLegendre::rule(4).expect("4-node rule is supported")
}

/// `|x|^p` and its gradient.
#[inline]
fn power_and_grad(dens: &Density, x: Point) -> (f64, Point) {
    let r = norm(x);
    if r == 0.0 {
        return (0.0, [0.0, 0.0]);
    }
    let rp = dens.power(r);
    let s = dens.p() * rp / (r * r);
    (rp, [s * x[0], s * x[1]])
}

/// Adds `scale * g` to `acc`.
#[inline]
fn axpy(acc: &mut Point, scale: f64, g: Point) {
    acc[0] += scale * g[0];
    acc[1] += scale * g[1];
}

/// Edge indices `(i, i+1)`, wrapping for closed curves.
fn edges(n: usize, closed: bool) -> impl Iterator<Item = (usize, usize)> {
    let m = if closed { n } else { n.saturating_sub(1) };
    (0..m).map(move |i| (i, (i + 1) % n))
}

fn reset(grad: &mut Option<&mut [Point]>, n: usize) {
    if let Some(g) = grad.as_deref_mut() {
        assert_eq!(g.len(), n, "gradient buffer length must match vertex count");
        g.fill([0.0, 0.0]);
    }
}

/// Weighted perimeter of a closed polygon, midpoint rule per edge:
/// `sum |e| rho(|midpoint|)`.
pub(crate) fn perimeter_2d(dens: &Density, v: &[Point], mut grad: Option<&mut [Point]>) -> f64 {
    reset(&mut grad, v.len());
    let a = dens.a();
    let mut total = 0.0;
    for (i, j) in edges(v.len(), true) {
        let e = sub(v[j], v[i]);
        let len = norm(e);
        let mid = lerp(v[i], v[j], 0.5);
        let (mp, mgrad) = power_and_grad(dens, mid);
        let rho = mp + a;
        total += len * rho;
        if let Some(g) = grad.as_deref_mut() {
            let u = [e[0] / len, e[1] / len];
            axpy(&mut g[i], -rho, u);
            axpy(&mut g[j], rho, u);
            axpy(&mut g[i], 0.5 * len, mgrad);
            axpy(&mut g[j], 0.5 * len, mgrad);
        }
    }
    total
}

/// Weighted mass `a A + int r^p dA` of a closed polygon.
pub(crate) fn mass_2d(dens: &Density, v: &[Point], mut grad: Option<&mut [Point]>) -> f64 {
    reset(&mut grad, v.len());
    let (p, a) = (dens.p(), dens.a());
    let rule = edge_rule();
    let k = 1.0 / (p + 2.0);
    let mut total = 0.0;
    for (i, j) in edges(v.len(), true) {
        let (v0, v1) = (v[i], v[j]);
        let c = cross(v0, v1);
        let mut q = 0.0;
        let mut g0 = [0.0, 0.0];
        let mut g1 = [0.0, 0.0];
        for (t, w) in rule.unit_pairs() {
            let (xp, xg) = power_and_grad(dens, lerp(v0, v1, t));
            q += w * xp;
            axpy(&mut g0, w * (1.0 - t), xg);
            axpy(&mut g1, w * t, xg);
        }
        let inner = 0.5 * a + k * q;
        total += c * inner;
        if let Some(g) = grad.as_deref_mut() {
            axpy(&mut g[i], inner, [v1[1], -v1[0]]);
            axpy(&mut g[j], inner, [-v0[1], v0[0]]);
            axpy(&mut g[i], c * k, g0);
            axpy(&mut g[j], c * k, g1);
        }
    }
    total
}

/// Weighted area of the surface swept by revolving an open profile
/// (upper half-plane, `y >= 0`) about the x-axis.
pub(crate) fn surface_axisym(dens: &Density, v: &[Point], mut grad: Option<&mut [Point]>) -> f64 {
    reset(&mut grad, v.len());
    let a = dens.a();
    let rule = edge_rule();
    let mut total = 0.0;
    for (i, j) in edges(v.len(), false) {
        let (v0, v1) = (v[i], v[j]);
        let e = sub(v1, v0);
        let len = norm(e);
        let mut q = 0.0;
        let mut g0 = [0.0, 0.0];
        let mut g1 = [0.0, 0.0];
        for (t, w) in rule.unit_pairs() {
            let x = lerp(v0, v1, t);
            let (xp, xg) = power_and_grad(dens, x);
            let rho = xp + a;
            q += w * x[1] * rho;
            // grad of y * rho(|x|)
            let gx = [x[1] * xg[0], rho + x[1] * xg[1]];
            axpy(&mut g0, w * (1.0 - t), gx);
            axpy(&mut g1, w * t, gx);
        }
        total += 2.0 * PI * len * q;
        if let Some(g) = grad.as_deref_mut() {
            let u = [e[0] / len, e[1] / len];
            axpy(&mut g[i], -2.0 * PI * q, u);
            axpy(&mut g[j], 2.0 * PI * q, u);
            axpy(&mut g[i], 2.0 * PI * len, g0);
            axpy(&mut g[j], 2.0 * PI * len, g1);
        }
    }
    total
}

/// Weighted volume enclosed by revolving an open profile whose end points lie
/// on the x-axis. The closing segment along the axis contributes nothing.
pub(crate) fn mass_axisym(dens: &Density, v: &[Point], mut grad: Option<&mut [Point]>) -> f64 {
    reset(&mut grad, v.len());
    let (p, a) = (dens.p(), dens.a());
    let rule = edge_rule();
    let k = 1.0 / (p + 3.0);
    let mut total = 0.0;
    for (i, j) in edges(v.len(), false) {
        let (v0, v1) = (v[i], v[j]);
        let c = cross(v0, v1);
        let mut q = 0.0;
        let mut g0 = [0.0, 0.0];
        let mut g1 = [0.0, 0.0];
        for (t, w) in rule.unit_pairs() {
            let x = lerp(v0, v1, t);
            let (xp, xg) = power_and_grad(dens, x);
            let h = k * xp + a / 3.0;
            q += w * x[1] * h;
            let gx = [x[1] * k * xg[0], h + x[1] * k * xg[1]];
            axpy(&mut g0, w * (1.0 - t), gx);
            axpy(&mut g1, w * t, gx);
        }
        total += 2.0 * PI * c * q;
        if let Some(g) = grad.as_deref_mut() {
            axpy(&mut g[i], 2.0 * PI * q, [v1[1], -v1[0]]);
            axpy(&mut g[j], 2.0 * PI * q, [-v0[1], v0[0]]);
            axpy(&mut g[i], 2.0 * PI * c, g0);
            axpy(&mut g[j], 2.0 * PI * c, g1);
        }
    }
    total
}

/// Signed shoelace area of a closed polygon.
pub(crate) fn polygon_area(v: &[Point]) -> f64 {
    0.5 * edges(v.len(), true).map(|(i, j)| cross(v[i], v[j])).sum::<f64>()
}

pub(crate) fn polygon_length(v: &[Point]) -> f64 {
    edges(v.len(), true).map(|(i, j)| norm(sub(v[j], v[i]))).sum()
}

/// Area centroid of a closed polygon.
pub(crate) fn polygon_centroid(v: &[Point]) -> Point {
    let mut cx = 0.0;
    let mut cy = 0.0;
    let mut a2 = 0.0;
    for (i, j) in edges(v.len(), true) {
        let c = cross(v[i], v[j]);
        a2 += c;
        cx += (v[i][0] + v[j][0]) * c;
        cy += (v[i][1] + v[j][1]) * c;
    }
    [cx / (3.0 * a2), cy / (3.0 * a2)]
}

/// Unweighted volume and axial centroid of the solid of revolution.
pub(crate) fn axisym_volume_centroid(v: &[Point]) -> (f64, f64) {
    let rule = edge_rule();
    let mut vol = 0.0;
    let mut moment = 0.0;
    for (i, j) in edges(v.len(), false) {
        let c = cross(v[i], v[j]);
        for (t, w) in rule.unit_pairs() {
            let x = lerp(v[i], v[j], t);
            vol += 2.0 * PI * c * w * x[1] / 3.0;
            moment += 2.0 * PI * c * w * x[0] * x[1] / 4.0;
        }
    }
    (vol, moment / vol)
}

/// Signed curvature at `b` of the circle through `a, b, c`
/// (positive for left turns).
pub(crate) fn menger_curvature(a: Point, b: Point, c: Point) -> f64 {
    let ab = sub(b, a);
    let bc = sub(c, b);
    let ca = sub(a, c);
    2.0 * cross(ab, bc) / (norm(ab) * norm(bc) * norm(ca))
}

/// Outward unit normal at `b` for a counter-clockwise curve, from the chord
/// `a -> c`.
pub(crate) fn outward_normal(a: Point, c: Point) -> Point {
    let t = sub(c, a);
    let l = norm(t);
    [t[1] / l, -t[0] / l]
}
