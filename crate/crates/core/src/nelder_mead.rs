//! Plain Nelder–Mead simplex minimizer.

#[derive(Debug, Clone, Copy)]
pub(crate) struct NelderMeadOptions {
    pub initial_step: f64,
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_evals: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
}

pub(crate) fn minimize<F>(mut f: F, x0: &[f64], opts: NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evals)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += if x[i].abs() > 0.0 { opts.initial_step * x[i].abs().max(1.0) } else { opts.initial_step };
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }

    while evals < opts.max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        let spread = simplex
            .iter()
            .skip(1)
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= opts.f_tol && spread <= opts.x_tol {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[dim].0).map(|(c, w)| c + t * (w - c)).collect()
        };

        let reflected = along(-1.0);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            let expanded = along(-2.0);
            let fe = eval(&expanded, &mut evals);
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < simplex[dim].1 {
            let x = along(-0.5);
            let v = eval(&x, &mut evals);
            (x, v)
        } else {
            let x = along(0.5);
            let v = eval(&x, &mut evals);
            (x, v)
        };
        if fc < simplex[dim].1.min(fr) {
            simplex[dim] = (contracted, fc);
            continue;
        }
        // Shrink towards the best vertex.
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best_x.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
            let v = eval(&x, &mut evals);
            *vertex = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> NelderMeadOptions {
        NelderMeadOptions { initial_step: 0.5, f_tol: 1e-14, x_tol: 1e-9, max_evals: 20_000 }
    }

    #[test]
    fn rosenbrock() {
        let m = minimize(|x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2), &[-1.2, 1.0], opts());
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] - 1.0).abs() < 1e-5, "{:?}", m.x);
    }

    #[test]
    fn shifted_quadratic_in_four_dims() {
        let target = [0.3, -2.0, 1.5, 4.0];
        let m = minimize(|x| x.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum(), &[0.0; 4], opts());
        for (a, b) in m.x.iter().zip(&target) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let m = minimize(|x| if x[0] < 0.0 { f64::NAN } else { (x[0] - 1.0).powi(2) }, &[2.0], opts());
        assert!((m.x[0] - 1.0).abs() < 1e-6);
    }
}
