use crate::error::{Error, Result};
use crate::scalar::Real;

use super::line_search::line_minimize;
use super::{OptimizerOptions, SearchBox};

const TINY: f64 = 1e-25;

/// Counts objective calls and turns non-finite values into errors.
pub(crate) struct Evaluator<'a, T: Real, F: Fn(&[T]) -> T> {
    f: &'a F,
    pub(crate) count: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<'a, T: Real, F: Fn(&[T]) -> T> Evaluator<'a, T, F> {
    fn new(f: &'a F) -> Self {
        Self { f, count: 0, _marker: std::marker::PhantomData }
    }

    pub(crate) fn call(&mut self, x: &[T]) -> Result<T> {
        self.count += 1;
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective {
                x: x.iter().map(|v| v.to_f64_lossy()).collect(),
                evaluations: self.count,
            })
        }
    }
}

/// Outcome of a single Powell run.
#[derive(Debug, Clone, PartialEq)]
pub struct PowellOutcome<T: Real> {
    pub x: Vec<T>,
    pub f: T,
    pub evaluations: usize,
    pub iterations: usize,
    /// The relative improvement test was met before `max_iterations`.
    pub converged: bool,
}

/// Minimizes `objective` from `x0` with Powell's conjugate-direction method.
///
/// Directions start as the coordinate axes. After each sweep of line
/// minimizations the direction of largest decrease is replaced by the net
/// displacement, unless Powell's test says doing so would degrade the
/// direction set. Iteration stops once a sweep improves `f` by less than
/// `f_tolerance` (relative, with an absolute floor near zero). Every trial
/// point is kept inside `opts.search_box`.
pub fn powell_minimize<T, F>(objective: F, x0: &[T], opts: &OptimizerOptions<T>) -> Result<PowellOutcome<T>>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let n = x0.len();
    if n == 0 {
        return Err(Error::InvalidOptions("objective dimension must be at least 1".into()));
    }
    opts.validate(n)?;
    let bounds: &SearchBox<T> = &opts.search_box;
    let mut eval = Evaluator::new(&objective);

    let mut x = x0.to_vec();
    bounds.project(&mut x);
    let mut directions: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut d = vec![T::zero(); n];
            d[i] = T::one();
            d
        })
        .collect();

    let two = T::lit(2.0);
    let tiny = T::lit(TINY);
    let mut fret = eval.call(&x)?;
    let mut anchor = x.clone();
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iterations {
        iterations += 1;
        let fp = fret;
        let mut biggest = 0;
        let mut biggest_drop = T::zero();
        for (i, dir) in directions.iter().enumerate() {
            let before = fret;
            fret = line_minimize(&mut eval, &mut x, dir, fret, bounds, opts.x_tolerance)?.0;
            if before - fret > biggest_drop {
                biggest_drop = before - fret;
                biggest = i;
            }
        }
        if two * (fp - fret) <= opts.f_tolerance * (fp.abs() + fret.abs()) + tiny {
            converged = true;
            break;
        }

        let displacement: Vec<T> = x.iter().zip(&anchor).map(|(&a, &b)| a - b).collect();
        let mut extrapolated: Vec<T> = x.iter().zip(&anchor).map(|(&a, &b)| two * a - b).collect();
        bounds.project(&mut extrapolated);
        anchor = x.clone();
        if displacement.iter().all(|&d| d == T::zero()) {
            continue;
        }
        let fe = eval.call(&extrapolated)?;
        if fe < fp {
            let t = two * (fp - two * fret + fe) * (fp - fret - biggest_drop).powi(2)
                - biggest_drop * (fp - fe).powi(2);
            if t < T::zero() {
                fret = line_minimize(&mut eval, &mut x, &displacement, fret, bounds, opts.x_tolerance)?.0;
                directions[biggest] = directions[n - 1].clone();
                directions[n - 1] = displacement;
            }
        }
    }

    Ok(PowellOutcome { x, f: fret, evaluations: eval.count, iterations, converged })
}
