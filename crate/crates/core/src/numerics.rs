//! Scalar numerical kernels shared by the solvers: bracketed bisection,
//! golden-section minimisation, Gauss–Legendre quadrature and central
//! finite differences.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Stopping rule for [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iters: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-15,
            max_iters: 200,
        }
    }
}

impl RootConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iters: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) || max_iters == 0 {
            return Err(Error::Config(format!(
                "root tolerances must be positive and max_iters >= 1 (got {abs_tol}, {rel_tol}, {max_iters})"
            )));
        }
        Ok(RootConfig {
            abs_tol,
            rel_tol,
            max_iters,
        })
    }
}

/// Bisection on `[lo, hi]` for a function with `f(lo) * f(hi) <= 0`.
///
/// Stops once `|f(x)| <= abs_tol * scale`, where `scale` is the smaller of
/// `|f(lo)|` and `|f(hi)|`, once the bracket is narrower than
/// `rel_tol * |x|`, or once it cannot be split any further. After `max_iters` the midpoint is
/// returned.
pub fn bisect<F>(f: F, lo: f64, hi: f64, cfg: &RootConfig) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo.is_nan() || fhi.is_nan() {
        return Err(Error::Numeric("function is NaN at bracket end".into()));
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    let tol = cfg.abs_tol * flo.abs().min(fhi.abs());

    for _ in 0..cfg.max_iters {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= cfg.rel_tol * mid.abs() {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid.abs() <= tol {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grows `hi` geometrically until `f(hi)` has the opposite sign to `f(lo)`.
pub fn expand_bracket<F>(f: &F, lo: f64, mut hi: f64, max_doublings: usize) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let flo = f(lo);
    for _ in 0..max_doublings {
        let fhi = f(hi);
        if flo == 0.0 || fhi == 0.0 || flo.signum() != fhi.signum() {
            return Ok((lo, hi));
        }
        hi = lo + 2.0 * (hi - lo);
    }
    Err(Error::Bracket { lo, hi })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Returns the best point seen, so non-unimodal inputs still yield a
/// local candidate the caller can validate.
pub fn golden_min<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    let tol = tol.max(f64::EPSILON * (a.abs() + b.abs()));

    while (b - a) > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Node counts with a precomputed rule.
pub const SUPPORTED_NODES: [usize; 4] = [4, 7, 16, 64];

static RULES: [OnceLock<GaussLegendre>; 4] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

impl GaussLegendre {
    /// Shared rule with `nodes` points; only the counts in
    /// [`SUPPORTED_NODES`] are available.
    pub fn rule(nodes: usize) -> Result<&'static GaussLegendre> {
        let idx = SUPPORTED_NODES
            .iter()
            .position(|&n| n == nodes)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unsupported Gauss-Legendre node count {nodes}; expected one of {SUPPORTED_NODES:?}"
                ))
            })?;
        Ok(RULES[idx].get_or_init(|| GaussLegendre::compute(nodes)))
    }

    // Newton iteration on P_n from the Tricomi initial guess.
    fn compute(n: usize) -> GaussLegendre {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes mapped to `[0, 1]` with weights summing to one.
    pub fn unit_pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| (0.5 * (x + 1.0), 0.5 * w))
    }

    pub fn integrate<F>(&self, lo: f64, hi: f64, f: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * sum
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre estimate of the integral of `f` over `[lo, hi]`.
pub fn gauss_legendre<F>(f: F, lo: f64, hi: f64, nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    Ok(GaussLegendre::rule(nodes)?.integrate(lo, hi, f))
}

/// Central difference approximation of `f'(x)`.
pub fn central_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central difference approximation of `f''(x)`.
pub fn second_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}
