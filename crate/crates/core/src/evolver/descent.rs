//! Projected, H1-preconditioned gradient descent on star-shaped curves.
//!
//! A curve is stored as radii `r_j` along fixed directions `u_j` about a
//! centre `(c, 0)` on the x-axis, so vertex `j` sits at `(c, 0) + r_j u_j`.
//! Positive radii keep the curve simple.

use std::f64::consts::PI;

use super::functionals::{self as fx, Point};
use crate::density::Density;
use crate::error::{Error, Result};

const SMOOTHING: f64 = 1.0;
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;
const WINDOW: usize = 50;
const RECENTRE_EVERY: usize = 100;
const RECENTRE_FRACTION: f64 = 0.05;
const MASS_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Geometry {
    /// Closed polygon, directions at angles `2 pi j / n`.
    Planar,
    /// Meridian profile, directions at angles `pi j / n`, `j = 0..=n`.
    Axisym,
}

#[derive(Debug, Clone)]
pub(crate) struct State {
    pub center: f64,
    pub radii: Vec<f64>,
}

pub(crate) struct Outcome {
    pub vertices: Vec<Point>,
    pub perimeter: f64,
    pub mass: f64,
    pub lambda: f64,
    pub iterations: usize,
    pub converged: bool,
    pub history: Vec<f64>,
    pub max_mass_residual: f64,
    pub recentred_at: Vec<usize>,
}

pub(crate) struct Descent<'a> {
    dens: &'a Density,
    geometry: Geometry,
    dirs: Vec<Point>,
    diag: Vec<f64>,
    off: Vec<f64>,
    center_weight: f64,
    /// Radial change induced by a unit shift of the centre, and its image
    /// under the metric.
    shift: Vec<f64>,
    metric_shift: Vec<f64>,
    shift_norm2: f64,
}

impl<'a> Descent<'a> {
    pub fn new(dens: &'a Density, geometry: Geometry, n: usize) -> Self {
        let (dirs, node_w, edge_w, h) = match geometry {
            Geometry::Planar => {
                let h = 2.0 * PI / n as f64;
                let dirs: Vec<Point> = (0..n)
                    .map(|j| {
                        let t = h * j as f64;
                        [t.cos(), t.sin()]
                    })
                    .collect();
                (dirs, vec![h; n], vec![h; n], h)
            }
            Geometry::Axisym => {
                let h = PI / n as f64;
                let dirs: Vec<Point> = (0..=n)
                    .map(|j| match j {
                        0 => [1.0, 0.0],
                        _ if j == n => [-1.0, 0.0],
                        _ => {
                            let t = h * j as f64;
                            [t.cos(), t.sin()]
                        }
                    })
                    .collect();
                let node_w = (0..=n)
                    .map(|j| {
                        let t = h * j as f64;
                        (t - 0.5 * h).max(0.0).cos() - (t + 0.5 * h).min(PI).cos()
                    })
                    .collect();
                let edge_w = (0..n).map(|j| h * (h * (j as f64 + 0.5)).sin()).collect();
                (dirs, node_w, edge_w, h)
            }
        };
        let m = node_w.len();
        let k = SMOOTHING / (h * h);
        let mut diag = node_w.clone();
        let mut off = vec![0.0; edge_w.len()];
        for (e, &w) in edge_w.iter().enumerate() {
            let (i, j) = (e, (e + 1) % m);
            diag[i] += k * w;
            diag[j] += k * w;
            off[e] = -k * w;
        }
        // Metric weight of a unit shift of the centre, measured through the
        // radial change it induces.
        let shift: Vec<f64> = dirs.iter().map(|u: &Point| u[0]).collect();
        let mut center_weight: f64 = node_w.iter().zip(&shift).map(|(w, s)| w * s * s).sum();
        for (e, &w) in edge_w.iter().enumerate() {
            let ds = shift[(e + 1) % m] - shift[e];
            center_weight += k * w * ds * ds;
        }
        let metric_shift = tridiagonal_product(&diag, &off, &shift);
        let shift_norm2 = dot(&shift, &metric_shift);
        Self {
            dens,
            geometry,
            dirs,
            diag,
            off,
            center_weight,
            shift,
            metric_shift,
            shift_norm2,
        }
    }

    pub fn vertices(&self, st: &State) -> Vec<Point> {
        self.dirs
            .iter()
            .zip(&st.radii)
            .map(|(u, r)| [st.center + r * u[0], r * u[1]])
            .collect()
    }

    fn perimeter(&self, v: &[Point], grad: Option<&mut [Point]>) -> f64 {
        match self.geometry {
            Geometry::Planar => fx::perimeter_2d(self.dens, v, grad),
            Geometry::Axisym => fx::surface_axisym(self.dens, v, grad),
        }
    }

    fn mass(&self, v: &[Point], grad: Option<&mut [Point]>) -> f64 {
        match self.geometry {
            Geometry::Planar => fx::mass_2d(self.dens, v, grad),
            Geometry::Axisym => fx::mass_axisym(self.dens, v, grad),
        }
    }

    /// Vertex gradient to parameter gradient; the last entry is the centre.
    fn to_params(&self, gv: &[Point]) -> Vec<f64> {
        let mut g: Vec<f64> = gv
            .iter()
            .zip(&self.dirs)
            .map(|(g, u)| g[0] * u[0] + g[1] * u[1])
            .collect();
        g.push(gv.iter().map(|g| g[0]).sum());
        g
    }

    /// Riesz representative of `g` on the radii orthogonal to the shift
    /// mode, plus the centre. Leaving translation to the centre alone stops
    /// the curve from sliding around a fixed shape.
    fn precondition(&self, g: &[f64]) -> Vec<f64> {
        let m = self.diag.len();
        let mut z = match self.geometry {
            Geometry::Planar => solve_cyclic(&self.diag, &self.off, &g[..m]),
            Geometry::Axisym => solve_tridiagonal(&self.diag, &self.off, &g[..m]),
        };
        let k = dot(&z, &self.metric_shift) / self.shift_norm2;
        z.iter_mut().zip(&self.shift).for_each(|(z, s)| *z -= k * s);
        z.push(g[m] / self.center_weight);
        z
    }

    /// Shifts all radii uniformly until the mass matches `m0`.
    pub fn project_mass(&self, st: &mut State, m0: f64) -> Result<f64> {
        let mut gv = vec![[0.0; 2]; self.dirs.len()];
        for _ in 0..60 {
            let v = self.vertices(st);
            let m = self.mass(&v, Some(&mut gv));
            let res = m - m0;
            if res.abs() <= MASS_TOL * m0 {
                return Ok(m);
            }
            let dm: f64 = self.to_params(&gv)[..self.dirs.len()].iter().sum();
            if !(dm > 0.0) {
                return Err(Error::Numeric("mass is not increasing under dilation".into()));
            }
            let rmin = st.radii.iter().cloned().fold(f64::INFINITY, f64::min);
            let delta = (-res / dm).max(-0.5 * rmin);
            st.radii.iter_mut().for_each(|r| *r += delta);
        }
        Err(Error::Numeric("mass projection did not converge".into()))
    }

    pub fn run(&self, mut st: State, m0: f64, max_iters: usize, tol: f64) -> Result<Outcome> {
        let nv = self.dirs.len();
        let mut mass = self.project_mass(&mut st, m0)?;
        let mut max_res = ((mass - m0) / m0).abs();
        let mut gp_v = vec![[0.0; 2]; nv];
        let mut gm_v = vec![[0.0; 2]; nv];

        let mut verts = self.vertices(&st);
        let mut perim = self.perimeter(&verts, Some(&mut gp_v));
        self.mass(&verts, Some(&mut gm_v));
        let mut history = vec![perim];
        let mut recentred_at = Vec::new();
        let mut segment_start = 0;
        let mut step: Option<f64> = None;
        let mut lambda = 0.0;
        let mut converged = false;
        let mut iters = 0;

        while iters < max_iters {
            let gp = self.to_params(&gp_v);
            let gm = self.to_params(&gm_v);
            let zp = self.precondition(&gp);
            let zm = self.precondition(&gm);
            lambda = dot(&gp, &zm) / dot(&gm, &zm);
            let d: Vec<f64> = zp.iter().zip(&zm).map(|(p, m)| lambda * m - p).collect();
            let slope = dot(&gp, &d);
            if !(slope < 0.0) || slope.abs() <= 1e-30 * perim {
                converged = true;
                break;
            }
            let t0 = step.unwrap_or_else(|| {
                let mean_edge = fx_length(&verts, self.geometry) / (nv as f64);
                let dmax = d.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
                0.1 * mean_edge / dmax
            });

            let mut t = t0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let mut trial = State {
                    center: st.center + t * d[nv],
                    radii: st.radii.iter().zip(&d).map(|(r, dr)| r + t * dr).collect(),
                };
                if trial.radii.iter().all(|r| *r > 0.0) {
                    if let Ok(m) = self.project_mass(&mut trial, m0) {
                        let v = self.vertices(&trial);
                        let p = self.perimeter(&v, None);
                        if p <= perim + ARMIJO * t * slope {
                            accepted = Some((trial, v, p, m));
                            break;
                        }
                    }
                }
                t *= 0.5;
            }
            let Some((trial, v, _, m)) = accepted else {
                // No representable decrease left.
                converged = true;
                break;
            };
            iters += 1;
            step = Some(1.5 * t);
            st = trial;
            verts = v;
            mass = m;
            max_res = max_res.max(((mass - m0) / m0).abs());
            perim = self.perimeter(&verts, Some(&mut gp_v));
            self.mass(&verts, Some(&mut gm_v));
            history.push(perim);

            let k = history.len() - 1;
            if k - segment_start >= WINDOW {
                let old = history[k - WINDOW];
                if (old - perim) / perim.abs() < tol && max_res < 1e-8 {
                    converged = true;
                    break;
                }
            }

            if iters % RECENTRE_EVERY == 0 && self.recentre(&mut st, &verts)? {
                mass = self.project_mass(&mut st, m0)?;
                max_res = max_res.max(((mass - m0) / m0).abs());
                verts = self.vertices(&st);
                perim = self.perimeter(&verts, Some(&mut gp_v));
                self.mass(&verts, Some(&mut gm_v));
                history.push(perim);
                recentred_at.push(history.len() - 1);
                segment_start = history.len() - 1;
                step = None;
            }
        }

        Ok(Outcome {
            vertices: verts,
            perimeter: perim,
            mass,
            lambda,
            iterations: iters,
            converged,
            history,
            max_mass_residual: max_res * m0,
            recentred_at,
        })
    }

    /// Moves the centre to the centroid and resamples when they drift apart.
    fn recentre(&self, st: &mut State, verts: &[Point]) -> Result<bool> {
        let xbar = match self.geometry {
            Geometry::Planar => fx::polygon_centroid(verts)[0],
            Geometry::Axisym => fx::axisym_volume_centroid(verts).1,
        };
        let mean_r = st.radii.iter().sum::<f64>() / st.radii.len() as f64;
        if (xbar - st.center).abs() <= RECENTRE_FRACTION * mean_r {
            return Ok(false);
        }
        let closed = self.geometry == Geometry::Planar;
        let c = [xbar, 0.0];
        let mut radii = Vec::with_capacity(self.dirs.len());
        for u in &self.dirs {
            let r = ray_hit(c, *u, verts, closed).ok_or_else(|| {
                Error::Numeric("curve is not star-shaped about its centroid".into())
            })?;
            radii.push(r);
        }
        *st = State { center: xbar, radii };
        Ok(true)
    }
}

fn fx_length(v: &[Point], geometry: Geometry) -> f64 {
    match geometry {
        Geometry::Planar => fx::polygon_length(v),
        Geometry::Axisym => v.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum(),
    }
}

/// Distance from `c` along unit `u` to the farthest crossing of the polyline.
fn ray_hit(c: Point, u: Point, v: &[Point], closed: bool) -> Option<f64> {
    let n = v.len();
    let m = if closed { n } else { n - 1 };
    let mut best: Option<f64> = None;
    for i in 0..m {
        let a = v[i];
        let b = v[(i + 1) % n];
        let e = [b[0] - a[0], b[1] - a[1]];
        let ac = [a[0] - c[0], a[1] - c[1]];
        let den = u[0] * e[1] - u[1] * e[0];
        if den.abs() < 1e-300 {
            continue;
        }
        let t = (ac[0] * e[1] - ac[1] * e[0]) / den;
        let s = (ac[0] * u[1] - ac[1] * u[0]) / den;
        if (-1e-12..=1.0 + 1e-12).contains(&s) && t > 0.0 {
            best = Some(best.map_or(t, |x: f64| x.max(t)));
        }
    }
    best
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `A x` for the symmetric matrix with `diag` and `off`; when `off` has as
/// many entries as `diag` its last entry couples the ends.
fn tridiagonal_product(diag: &[f64], off: &[f64], x: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut y: Vec<f64> = diag.iter().zip(x).map(|(d, x)| d * x).collect();
    for (e, &w) in off.iter().enumerate() {
        let (i, j) = (e, (e + 1) % n);
        y[i] += w * x[j];
        y[j] += w * x[i];
    }
    y
}

/// Symmetric tridiagonal solve; `off[i]` couples `i` and `i + 1`.
fn solve_tridiagonal(diag: &[f64], off: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut beta = diag[0];
    x[0] = rhs[0] / beta;
    for i in 1..n {
        c[i] = off[i - 1] / beta;
        beta = diag[i] - off[i - 1] * c[i];
        x[i] = (rhs[i] - off[i - 1] * x[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i + 1] * x[i + 1];
    }
    x
}

/// Cyclic variant; `off[n - 1]` couples the last and first unknowns.
fn solve_cyclic(diag: &[f64], off: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let corner = off[n - 1];
    let gamma = -diag[0];
    let mut b = diag.to_vec();
    b[0] -= gamma;
    b[n - 1] -= corner * corner / gamma;
    let y = solve_tridiagonal(&b, &off[..n - 1], rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = corner;
    let q = solve_tridiagonal(&b, &off[..n - 1], &u);
    let vy = y[0] + corner / gamma * y[n - 1];
    let vq = q[0] + corner / gamma * q[n - 1];
    let f = vy / (1.0 + vq);
    y.iter().zip(&q).map(|(y, q)| y - f * q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_solver_matches_dense_product() {
        let n = 9;
        let diag: Vec<f64> = (0..n).map(|i| 4.0 + i as f64 * 0.1).collect();
        let off: Vec<f64> = (0..n).map(|i| -1.0 - i as f64 * 0.05).collect();
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = solve_cyclic(&diag, &off, &rhs);
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            let ax = diag[i] * x[i] + off[prev] * x[prev] + off[i] * x[next];
            assert!((ax - rhs[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn ray_hits_circle() {
        let v: Vec<Point> = (0..200)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 200.0;
                [t.cos(), t.sin()]
            })
            .collect();
        let r = ray_hit([0.5, 0.0], [-1.0, 0.0], &v, true).unwrap();
        assert!((r - 1.5).abs() < 1e-3);
    }
}
