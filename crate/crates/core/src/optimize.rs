//! Box-constrained Nelder–Mead simplex search.
//!
//! Trial points are projected onto the box, which is enough for the low
//! dimensional, cheap objectives of the moment fit.

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub tolerance: f64,
    pub max_iter: usize,
    /// Initial edge length as a fraction of each box side.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iter: 500,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn project(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *xi = xi.clamp(lo, hi);
    }
}

pub fn nelder_mead<F>(
    mut f: F,
    start: &[f64],
    bounds: &[(f64, f64)],
    opts: SimplexOptions,
) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = start.len();
    assert_eq!(dim, bounds.len());
    let mut x0 = start.to_vec();
    project(&mut x0, bounds);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.clone());
    for i in 0..dim {
        let (lo, hi) = bounds[i];
        let step = opts.initial_step * (hi - lo).max(f64::EPSILON);
        let mut v = x0.clone();
        // step inward if the start sits on the upper face
        v[i] = if v[i] + step <= hi { v[i] + step } else { v[i] - step };
        project(&mut v, bounds);
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let f_spread = values[dim] - values[0];
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= opts.tolerance && x_spread <= opts.tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|v| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&simplex[dim])
                .map(|(c, w)| c + t * (w - c))
                .collect();
            project(&mut p, bounds);
            p
        };

        let xr = along(-alpha);
        let fr = f(&xr);
        if fr < values[0] {
            let xe = along(-gamma);
            let fe = f(&xe);
            if fe < fr {
                simplex[dim] = xe;
                values[dim] = fe;
            } else {
                simplex[dim] = xr;
                values[dim] = fr;
            }
            continue;
        }
        if fr < values[dim - 1] {
            simplex[dim] = xr;
            values[dim] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[dim] {
            let xc = along(-rho);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(rho);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < values[dim].min(fr) {
            simplex[dim] = xc;
            values[dim] = fc;
            continue;
        }
        for i in 1..=dim {
            let shrunk: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, v)| b + sigma * (v - b))
                .collect();
            values[i] = f(&shrunk);
            simplex[i] = shrunk;
        }
    }

    let best = (0..=dim)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    SimplexResult {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl_2d() {
        let r = nelder_mead(
            |x| (x[0] - 0.3).powi(2) + 3.0 * (x[1] + 0.2).powi(2),
            &[0.9, 0.9],
            &[(-1.0, 1.0), (-1.0, 1.0)],
            SimplexOptions::default(),
        );
        assert!(r.converged);
        assert!((r.x[0] - 0.3).abs() < 1e-4 && (r.x[1] + 0.2).abs() < 1e-4);
    }

    #[test]
    fn optimum_on_the_boundary() {
        let r = nelder_mead(
            |x| (x[0] - 5.0).abs(),
            &[0.5],
            &[(0.0, 1.0)],
            SimplexOptions::default(),
        );
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn kinked_one_dimensional_minimum() {
        let r = nelder_mead(
            |x| (x[0] - 0.4217).abs(),
            &[0.9],
            &[(0.0, 1.0)],
            SimplexOptions::default(),
        );
        assert!((r.x[0] - 0.4217).abs() < 1e-8);
    }
}
