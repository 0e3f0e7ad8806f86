//! Gauss-Legendre rules and composite panel integration.
//!
//! Nodes and weights are computed by Newton iteration on the Legendre
//! polynomial recurrence and symmetrized about the interval midpoint, so a
//! rule of a given order is bit-reproducible.

/// A Gauss-Legendre rule on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `n` nodes (n >= 1). Open rule: no node touches an endpoint.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi-style initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-15 * x.abs().max(1.0) {
                    let (_, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // x from the cosine guess is near +1 for small i; store mirrored pair.
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate `f` over [a, b] with this rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
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

/// Dyadically graded breakpoints of [a, b] refined toward `a`:
/// widths halve toward the endpoint down to `levels` subdivisions.
pub fn graded_breakpoints_left(a: f64, b: f64, levels: u32) -> Vec<f64> {
    let span = b - a;
    let mut pts = Vec::with_capacity(levels as usize + 2);
    pts.push(a);
    for j in (0..=levels).rev() {
        pts.push(a + span * 0.5f64.powi(j as i32));
    }
    pts
}

/// Breakpoints of [a, b] dyadically refined toward both endpoints.
pub fn graded_breakpoints_both(a: f64, b: f64, levels: u32) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut pts = Vec::with_capacity(2 * levels as usize + 3);
    pts.push(a);
    for j in (1..=levels).rev() {
        pts.push(a + half * 0.5f64.powi(j as i32));
    }
    pts.push(mid);
    for j in 1..=levels {
        pts.push(b - half * 0.5f64.powi(j as i32));
    }
    pts.push(b);
    pts
}
