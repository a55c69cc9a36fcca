//! Nelder–Mead downhill simplex with deterministic tie-breaking.
//!
//! The objective is an arbitrary closure (here: rasterize + eigensolve), so
//! no gradients are assumed anywhere; eigenvalue crossings under higher-index
//! objectives make derivative-based methods unreliable on this problem.

use serde::{Deserialize, Serialize};

/// Classic simplex coefficients.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NelderMeadParams {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
}

impl Default for NelderMeadParams {
    fn default() -> Self {
        NelderMeadParams {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
        }
    }
}

/// Why the search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexOutcome {
    /// Objective spread across the simplex fell below the stop tolerance.
    SpreadBelowTolerance,
    /// The evaluation budget ran out.
    BudgetExhausted,
}

struct Vertex {
    params: Vec<f64>,
    value: f64,
    /// Insertion counter; breaks objective ties deterministically.
    stamp: usize,
}

/// Minimizes `evaluate` starting from `start` with an orthogonal initial
/// simplex of the given step. The closure is called at most `max_evals`
/// times; `stop_tol` is the relative objective spread ending the search.
pub fn minimize(
    start: &[f64],
    step: f64,
    params: &NelderMeadParams,
    max_evals: usize,
    stop_tol: f64,
    evaluate: &mut dyn FnMut(&[f64]) -> f64,
) -> SimplexOutcome {
    let dim = start.len();
    let mut evals = 0usize;
    let mut stamp = 0usize;
    let mut eval = |p: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        evaluate(p)
    };

    let mut simplex: Vec<Vertex> = Vec::with_capacity(dim + 1);
    let v0 = start.to_vec();
    let f0 = eval(&v0, &mut evals);
    simplex.push(Vertex {
        params: v0,
        value: f0,
        stamp,
    });
    for i in 0..dim {
        if evals >= max_evals {
            return SimplexOutcome::BudgetExhausted;
        }
        let mut p = start.to_vec();
        p[i] += step;
        let f = eval(&p, &mut evals);
        stamp += 1;
        simplex.push(Vertex {
            params: p,
            value: f,
            stamp,
        });
    }
    sort(&mut simplex);

    while evals < max_evals {
        let best = simplex[0].value;
        let worst = simplex[dim].value;
        if worst.is_finite() {
            let spread = (worst - best).abs();
            if spread <= stop_tol * best.abs().max(1e-300) {
                return SimplexOutcome::SpreadBelowTolerance;
            }
        }

        // centroid of all but the worst vertex
        let mut centroid = vec![0.0; dim];
        for v in &simplex[..dim] {
            for (c, p) in centroid.iter_mut().zip(&v.params) {
                *c += p / dim as f64;
            }
        }
        let worst_params = simplex[dim].params.clone();
        let combine = |alpha: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst_params)
                .map(|(c, w)| c + alpha * (c - w))
                .collect()
        };

        let reflected = combine(params.reflection);
        let f_reflected = eval(&reflected, &mut evals);
        if f_reflected < simplex[0].value {
            // try to expand
            if evals < max_evals {
                let expanded = combine(params.reflection * params.expansion);
                let f_expanded = eval(&expanded, &mut evals);
                stamp += 1;
                if f_expanded < f_reflected {
                    replace_worst(&mut simplex, expanded, f_expanded, stamp);
                } else {
                    replace_worst(&mut simplex, reflected, f_reflected, stamp);
                }
            } else {
                stamp += 1;
                replace_worst(&mut simplex, reflected, f_reflected, stamp);
            }
            continue;
        }
        if f_reflected < simplex[dim - 1].value {
            stamp += 1;
            replace_worst(&mut simplex, reflected, f_reflected, stamp);
            continue;
        }
        // contraction: outside when the reflection improved on the worst,
        // inside otherwise
        if evals >= max_evals {
            break;
        }
        let (contracted, f_contracted) = if f_reflected < simplex[dim].value {
            let c = combine(params.reflection * params.contraction);
            let f = eval(&c, &mut evals);
            (c, f)
        } else {
            let c = combine(-params.contraction);
            let f = eval(&c, &mut evals);
            (c, f)
        };
        if f_contracted < simplex[dim].value.min(f_reflected) {
            stamp += 1;
            replace_worst(&mut simplex, contracted, f_contracted, stamp);
            continue;
        }
        // shrink toward the best vertex
        let best_params = simplex[0].params.clone();
        for v in simplex.iter_mut().skip(1) {
            if evals >= max_evals {
                return SimplexOutcome::BudgetExhausted;
            }
            for (p, b) in v.params.iter_mut().zip(&best_params) {
                *p = b + params.shrink * (*p - b);
            }
            v.value = eval(&v.params, &mut evals);
            stamp += 1;
            v.stamp = stamp;
        }
        sort(&mut simplex);
    }
    SimplexOutcome::BudgetExhausted
}

fn replace_worst(simplex: &mut Vec<Vertex>, params: Vec<f64>, value: f64, stamp: usize) {
    let last = simplex.len() - 1;
    simplex[last] = Vertex {
        params,
        value,
        stamp,
    };
    sort(simplex);
}

fn sort(simplex: &mut [Vertex]) {
    simplex.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.stamp.cmp(&b.stamp))
    });
}
