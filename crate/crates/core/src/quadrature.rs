//! Gauss-Legendre quadrature on the unit interval.
//!
//! Nodes are computed by Newton iteration on the Legendre recurrence; a
//! K-node rule integrates polynomials up to degree 2K - 1 exactly, which
//! covers every normalization integral with integer twice-exponents. The
//! composite driver refines by panel doubling for the remaining cases.

/// Nodes and weights of the K-point rule mapped to [0, 1].
#[must_use]
pub fn gauss_legendre_unit(k: usize) -> Vec<(f64, f64)> {
    assert!(k >= 1, "at least one node required");
    let mut rule = Vec::with_capacity(k);
    for i in 0..k {
        // Standard initial guess, then Newton on P_k.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(k, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push(((x + 1.0) / 2.0, w / 2.0));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// P_k(x) and P_k'(x) by the three-term recurrence.
fn legendre_with_derivative(k: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=k {
        let jf = j as f64;
        let p_next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = p_next;
    }
    let derivative = k as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, derivative)
}

/// Single-panel K-node integral of f over [0, 1].
pub fn integrate_unit(f: impl Fn(f64) -> f64, nodes: usize) -> f64 {
    gauss_legendre_unit(nodes)
        .iter()
        .map(|(x, w)| w * f(*x))
        .sum()
}

/// Composite integral of f over [0, 1], doubling the panel count until the
/// value settles to `rel_tol` or `max_doublings` is reached. Returns the
/// last value, the last relative change and whether the tolerance was met.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64,
    nodes: usize,
    rel_tol: f64,
    max_doublings: u32,
) -> (f64, f64, bool) {
    let rule = gauss_legendre_unit(nodes);
    let composite = |panels: usize| -> f64 {
        let width = 1.0 / panels as f64;
        (0..panels)
            .map(|p| {
                let left = p as f64 * width;
                rule.iter().map(|(x, w)| w * width * f(left + x * width)).sum::<f64>()
            })
            .sum()
    };
    let mut value = composite(1);
    let mut change = f64::INFINITY;
    for level in 1..=max_doublings {
        let next = composite(1 << level);
        change = (next - value).abs() / next.abs().max(f64::MIN_POSITIVE);
        value = next;
        if change <= rel_tol {
            return (value, change, true);
        }
    }
    (value, change, change <= rel_tol)
}
