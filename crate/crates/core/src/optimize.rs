//! Derivative-free optimizers used by the entanglement maximizers.

use std::cell::Cell;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)]
        .into_iter()
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .expect("three candidates")
}

/// Maximizes `f` on `[a, b]` by scanning `points` equally spaced samples
/// (endpoints included) and refining the best one by golden section inside
/// its neighbouring grid cells. Never returns less than the best sample.
pub fn grid_golden_max(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    points: usize,
    tol: f64,
) -> (f64, f64) {
    assert!(points >= 2);
    let step = (b - a) / (points - 1) as f64;
    let (best_i, best_f) = (0..points)
        .map(|i| (i, f(a + step * i as f64)))
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .expect("non-empty grid");
    let lo = a + step * best_i.saturating_sub(1) as f64;
    let hi = (a + step * (best_i + 1) as f64).min(b);
    let refined = golden_section_max(&f, lo, hi, tol);
    if refined.1 >= best_f {
        refined
    } else {
        (a + step * best_i as f64, best_f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Nelder-Mead simplex minimization starting from `x0` with an initial
/// simplex of edge `step`. Stops when the spread of simplex values falls
/// below `ftol` or after `max_evals` evaluations.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    ftol: f64,
    max_evals: usize,
) -> Minimum {
    let dim = x0.len();
    let evals = Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x);
        simplex.push((x, v));
    }

    let point = |base: &[f64], dir: &[f64], t: f64| -> Vec<f64> {
        base.iter().zip(dir).map(|(b, d)| b + t * (d - b)).collect()
    };

    loop {
        simplex.sort_by(|p, q| p.1.total_cmp(&q.1));
        let spread = simplex[dim].1 - simplex[0].1;
        if spread.abs() <= ftol || evals.get() >= max_evals {
            break;
        }
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let worst = simplex[dim].0.clone();
        let reflected = point(&centroid, &worst, -1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].1 {
            let expanded = point(&centroid, &worst, -2.0);
            let fe = eval(&expanded);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let (contracted, fc) = if fr < simplex[dim].1 {
                let c = point(&centroid, &reflected, 0.5);
                let v = eval(&c);
                (c, v)
            } else {
                let c = point(&centroid, &worst, 0.5);
                let v = eval(&c);
                (c, v)
            };
            if fc < simplex[dim].1.min(fr) {
                simplex[dim] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x = point(&best, &vertex.0, 0.5);
                    let v = eval(&x);
                    *vertex = (x, v);
                }
            }
        }
    }
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evaluations: evals.get(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_cosine_peak() {
        let (x, fx) = golden_section_max(|x| (x - 1.0).cos(), 0.0, 3.0, 1e-10);
        assert!((x - 1.0).abs() < 1e-6);
        assert!((fx - 1.0).abs() < 1e-14);
    }

    #[test]
    fn grid_handles_endpoint_maximum() {
        let (x, fx) = grid_golden_max(|x| x, 0.0, 2.0, 17, 1e-10);
        assert!((x - 2.0).abs() < 1e-8);
        assert!((fx - 2.0).abs() < 1e-8);
    }

    #[test]
    fn grid_escapes_local_maximum() {
        let f = |x: f64| (3.0 * x).sin() + 0.3 * x;
        let (x, _) = grid_golden_max(f, 0.0, 6.0, 257, 1e-10);
        // global maximum is the third peak near x = 4.7
        assert!((x - 4.74).abs() < 0.05, "{x}");
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = nelder_mead(rosen, &[-1.2, 1.0], 0.5, 1e-16, 10_000);
        assert!((m.x[0] - 1.0).abs() < 1e-4 && (m.x[1] - 1.0).abs() < 1e-4, "{:?}", m.x);
        assert!(m.evaluations <= 10_000);
    }

    #[test]
    fn nelder_mead_respects_budget() {
        let m = nelder_mead(|x: &[f64]| x.iter().map(|v| v.abs()).sum(), &[3.0; 3], 1.0, 0.0, 50);
        assert!(m.evaluations < 60);
    }
}
