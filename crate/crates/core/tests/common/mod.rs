//! Brute-force reference implementations. They share no code with the
//! library: quantiles by linear scan, tail integrals as sums of
//! order-statistic cells, aversion antiderivatives written out directly.
#![allow(dead_code)]

pub fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// `x_(k)` for the smallest `k` with `k/n > p`; the maximum if none.
pub fn quantile(xs: &[f64], p: f64) -> f64 {
    let v = sorted(xs);
    let n = v.len();
    for k in 1..=n {
        if (k as f64) / (n as f64) > p {
            return v[k - 1];
        }
    }
    v[n - 1]
}

/// Length of `[(k-1)/n, k/n] ∩ [lo, 1]`.
fn cell_overlap(k: usize, n: usize, lo: f64) -> (f64, f64) {
    let left = ((k - 1) as f64 / n as f64).max(lo);
    let right = k as f64 / n as f64;
    (left, right)
}

pub fn cvar(xs: &[f64], alpha: f64) -> f64 {
    let v = sorted(xs);
    let n = v.len();
    let mut total = 0.0;
    for (i, x) in v.iter().enumerate() {
        let (l, r) = cell_overlap(i + 1, n, alpha);
        if r > l {
            total += x * (r - l);
        }
    }
    total / (1.0 - alpha)
}

/// Antiderivative of a built-in aversion density on `[β, 1]`.
#[derive(Debug, Clone, Copy)]
pub enum Phi {
    Exponential {
        beta: f64,
        gamma: f64,
    },
    PowerConvex {
        beta: f64,
        gamma: f64,
    },
    PowerConcave {
        beta: f64,
        gamma: f64,
    },
    Flat {
        beta: f64,
    },
    Step {
        beta: f64,
        levels: [f64; 2],
        weights: [f64; 3],
    },
}

impl Phi {
    pub fn beta(&self) -> f64 {
        match *self {
            Phi::Exponential { beta, .. }
            | Phi::PowerConvex { beta, .. }
            | Phi::PowerConcave { beta, .. }
            | Phi::Flat { beta }
            | Phi::Step { beta, .. } => beta,
        }
    }

    pub fn density(&self, p: f64) -> f64 {
        if p < self.beta() {
            return 0.0;
        }
        match *self {
            Phi::Exponential { beta, gamma } => {
                ((p - 1.0) / gamma).exp() / (gamma * (1.0 - ((beta - 1.0) / gamma).exp()))
            }
            Phi::PowerConvex { beta, gamma } => (1.0 - gamma) * (1.0 - p).powf(-gamma) / (1.0 - beta).powf(1.0 - gamma),
            Phi::PowerConcave { beta, gamma } => (1.0 + gamma) * p.powf(gamma) / (1.0 - beta.powf(1.0 + gamma)),
            Phi::Flat { beta } => 1.0 / (1.0 - beta),
            Phi::Step { beta, levels, weights } => {
                let mut s = weights[0] / (1.0 - beta);
                if p >= levels[0] {
                    s += weights[1] / (1.0 - levels[0]);
                }
                if p >= levels[1] {
                    s += weights[2] / (1.0 - levels[1]);
                }
                s
            }
        }
    }

    /// `∫_β^p φ`.
    pub fn mass_to(&self, p: f64) -> f64 {
        let beta = self.beta();
        if p <= beta {
            return 0.0;
        }
        match *self {
            Phi::Exponential { gamma, .. } => {
                (((p - 1.0) / gamma).exp() - ((beta - 1.0) / gamma).exp()) / (1.0 - ((beta - 1.0) / gamma).exp())
            }
            Phi::PowerConvex { gamma, .. } => {
                ((1.0 - beta).powf(1.0 - gamma) - (1.0 - p).powf(1.0 - gamma)) / (1.0 - beta).powf(1.0 - gamma)
            }
            Phi::PowerConcave { gamma, .. } => {
                (p.powf(1.0 + gamma) - beta.powf(1.0 + gamma)) / (1.0 - beta.powf(1.0 + gamma))
            }
            Phi::Flat { .. } => (p - beta) / (1.0 - beta),
            Phi::Step { levels, weights, .. } => {
                let flat = |lo: f64| if p > lo { (p - lo) / (1.0 - lo) } else { 0.0 };
                weights[0] * flat(beta) + weights[1] * flat(levels[0]) + weights[2] * flat(levels[1])
            }
        }
    }

    pub fn to_library(self) -> slidevar::AversionFunction {
        use slidevar::AversionFunction as A;
        match self {
            Phi::Exponential { beta, gamma } => A::exponential(beta, gamma),
            Phi::PowerConvex { beta, gamma } => A::power_convex(beta, gamma),
            Phi::PowerConcave { beta, gamma } => A::power_concave(beta, gamma),
            Phi::Flat { beta } => A::flat(beta),
            Phi::Step { beta, levels, weights } => A::step(beta, levels, weights),
        }
        .expect("oracle parameters are admissible")
    }
}

/// `Σ_k x_(k) · ∫_{cell k ∩ [β,1]} φ`.
pub fn tail_thickness(xs: &[f64], phi: &Phi) -> f64 {
    let v = sorted(xs);
    let n = v.len();
    let mut total = 0.0;
    for (i, x) in v.iter().enumerate() {
        let (l, r) = cell_overlap(i + 1, n, phi.beta());
        if r > l {
            total += x * (phi.mass_to(r) - phi.mass_to(l));
        }
    }
    total
}

pub fn slide_var(xs: &[f64], alpha: f64, phi: &Phi, a: f64, b: f64) -> f64 {
    let u = tail_thickness(xs, phi);
    let s = ((u - a) / (b - a)).clamp(0.0, 1.0);
    s * cvar(xs, alpha) + (1.0 - s) * quantile(xs, phi.beta())
}
