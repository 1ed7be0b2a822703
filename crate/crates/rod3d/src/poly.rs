//! Real roots of low-degree polynomials by derivative cascade.
//!
//! The roots of a degree-n polynomial are bracketed by the critical
//! points, which come from the derivative; recursing down to the
//! quadratic gives guaranteed brackets, each refined by bisection and
//! polished by Newton. Even-multiplicity roots show up as critical points
//! where the polynomial itself vanishes.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// Relative tolerance treating a polynomial value as zero at a critical
/// point (even-multiplicity detection).
const TOUCH_TOL: f64 = 1e-10;

/// Relative tolerance below which a leading coefficient is dropped.
const LEAD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub x: f64,
    pub multiplicity: u8,
}

/// Evaluate `c[0] + c[1] x + ...` by Horner's rule.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect()
}

/// Magnitude scale of the polynomial near `x`, for relative zero tests.
fn scale_at(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs().max(1.0);
    let mut pow = 1.0;
    let mut s = 0.0;
    for &c in coeffs {
        s += c.abs() * pow;
        pow *= ax;
    }
    s.max(f64::MIN_POSITIVE)
}

/// All real roots of a polynomial of degree at most 4, ascending in `x`,
/// with multiplicities.
///
/// A leading coefficient smaller than `LEAD_TOL` times the largest
/// coefficient is treated as zero (degree reduction).
pub fn real_roots(coeffs: &[f64]) -> Vec<RealRoot> {
    let maxabs = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if maxabs == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].abs() <= LEAD_TOL * maxabs {
        deg -= 1;
    }
    let coeffs = &coeffs[..deg];
    assert!(deg <= 5, "degree above 4 not supported");
    match deg {
        0 | 1 => Vec::new(),
        2 => alloc::vec![RealRoot {
            x: -coeffs[0] / coeffs[1],
            multiplicity: 1,
        }],
        3 => quadratic_roots(coeffs[2], coeffs[1], coeffs[0]),
        _ => cascade_roots(coeffs),
    }
}

/// Roots of `a x² + b x + c` with a scale-aware discriminant band.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<RealRoot> {
    let disc = b * b - 4.0 * a * c;
    let scale = (b * b).max((4.0 * a * c).abs()).max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    if disc.abs() <= 1e-14 * scale {
        out.push(RealRoot {
            x: -b / (2.0 * a),
            multiplicity: 2,
        });
    } else if disc > 0.0 {
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let (x1, x2) = if b == 0.0 {
            let r = (disc.sqrt() / (2.0 * a)).abs();
            (-r, r)
        } else {
            (q / a, c / q)
        };
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        out.push(RealRoot {
            x: lo,
            multiplicity: 1,
        });
        out.push(RealRoot {
            x: hi,
            multiplicity: 1,
        });
    }
    out
}

/// Bracket-and-refine using the critical points of the derivative.
fn cascade_roots(coeffs: &[f64]) -> Vec<RealRoot> {
    let deriv = derivative(coeffs);
    let crit = real_roots(&deriv);
    let lead = coeffs[coeffs.len() - 1];

    // Cauchy bound on root magnitude.
    let bound = 1.0
        + coeffs[..coeffs.len() - 1]
            .iter()
            .fold(0.0f64, |m, c| m.max((c / lead).abs()));

    let mut nodes = Vec::with_capacity(crit.len() + 2);
    nodes.push(-bound - 1.0);
    for c in &crit {
        if c.x > nodes[nodes.len() - 1] {
            nodes.push(c.x);
        }
    }
    if bound + 1.0 > nodes[nodes.len() - 1] {
        nodes.push(bound + 1.0);
    }

    let mut out: Vec<RealRoot> = Vec::new();
    for win in nodes.windows(2) {
        let (a, b) = (win[0], win[1]);
        let (fa, fb) = (eval(coeffs, a), eval(coeffs, b));
        if fa == 0.0 && a != -bound - 1.0 {
            // Exact zero at a critical node; handled by the touch pass.
            continue;
        }
        if fa * fb < 0.0 {
            let x = refine(coeffs, a, b);
            out.push(RealRoot { x, multiplicity: 1 });
        }
    }

    // Roots at critical points: a root of multiplicity m in f is a root
    // of multiplicity m-1 in f', so the value vanishing at a critical
    // point of multiplicity m' makes it an (m'+1)-fold root of f.
    for c in &crit {
        let f = eval(coeffs, c.x);
        if f.abs() <= TOUCH_TOL * scale_at(coeffs, c.x) {
            let radius = 1e-8 * c.x.abs().max(1.0);
            let nearby: Vec<usize> = out
                .iter()
                .enumerate()
                .filter(|(_, r)| (r.x - c.x).abs() <= radius)
                .map(|(i, _)| i)
                .collect();
            match nearby.len() {
                0 => out.push(RealRoot {
                    x: c.x,
                    multiplicity: c.multiplicity + 1,
                }),
                1 => {
                    let r = &mut out[nearby[0]];
                    r.multiplicity = r.multiplicity.max(c.multiplicity + 1);
                }
                // Two bracketed crossings straddling the critical point:
                // a split near-double pair, already fully counted.
                _ => {}
            }
        }
    }
    out.sort_by(|p, q| p.x.partial_cmp(&q.x).unwrap());
    out.dedup_by(|p, q| {
        if (p.x - q.x).abs() <= 1e-12 * p.x.abs().max(1.0) {
            q.multiplicity = q.multiplicity.max(p.multiplicity);
            true
        } else {
            false
        }
    });
    out
}

fn refine(coeffs: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = eval(coeffs, a);
    for _ in 0..90 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = eval(coeffs, mid);
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let deriv = derivative(coeffs);
    let mut x = 0.5 * (a + b);
    for _ in 0..4 {
        let d = eval(&deriv, x);
        if d == 0.0 {
            break;
        }
        let step = eval(coeffs, x) / d;
        let next = x - step;
        if !next.is_finite() || next < a - (b - a) || next > b + (b - a) {
            break;
        }
        x = next;
    }
    x
}
