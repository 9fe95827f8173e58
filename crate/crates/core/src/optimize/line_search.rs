//! One-dimensional minimization along a direction inside a box.
//!
//! The step is confined to the interval of `t` for which `x + t d` stays in
//! the box. A downhill bracket is grown by golden-ratio expansion and then
//! refined with Brent's method (golden section with parabolic steps).

use crate::error::Result;
use crate::scalar::Real;

use super::powell::Evaluator;
use super::SearchBox;

const GOLDEN: f64 = 1.618_033_988_749_895;
const CGOLD: f64 = 0.381_966_011_250_105;
const BRENT_MAX_ITER: usize = 200;
const MAX_EXPANSIONS: usize = 60;

/// Interval of `t` keeping `x + t d` inside `bounds`. Contains zero when `x`
/// lies in the box.
pub(crate) fn feasible_interval<T: Real>(x: &[T], d: &[T], bounds: &SearchBox<T>) -> (T, T) {
    let mut lo = T::neg_infinity();
    let mut hi = T::infinity();
    for i in 0..x.len() {
        let (l, u) = bounds.interval(i);
        if d[i] > T::zero() {
            lo = lo.max((l - x[i]) / d[i]);
            hi = hi.min((u - x[i]) / d[i]);
        } else if d[i] < T::zero() {
            lo = lo.max((u - x[i]) / d[i]);
            hi = hi.min((l - x[i]) / d[i]);
        }
    }
    (lo.min(T::zero()), hi.max(T::zero()))
}

fn point<T: Real>(x: &[T], d: &[T], t: T, bounds: &SearchBox<T>) -> Vec<T> {
    let mut p: Vec<T> = x.iter().zip(d).map(|(&xi, &di)| xi + t * di).collect();
    bounds.project(&mut p);
    p
}

/// Minimizes `f(x + t d)` over the feasible `t` range, starting from
/// `t = 0` whose value `f0` is already known. Moves `x` to the minimizer and
/// returns `(new value, step length t)`.
pub(crate) fn line_minimize<T, F>(
    eval: &mut Evaluator<'_, T, F>,
    x: &mut Vec<T>,
    d: &[T],
    f0: T,
    bounds: &SearchBox<T>,
    x_tol: T,
) -> Result<(T, T)>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let (t_lo, t_hi) = feasible_interval(x, d, bounds);
    if t_hi - t_lo <= T::zero() {
        return Ok((f0, T::zero()));
    }
    let base = x.clone();
    let mut phi = |t: T, eval: &mut Evaluator<'_, T, F>| -> Result<T> {
        eval.call(&point(&base, d, t, bounds))
    };

    let (a, b, c, fb) = bracket(&mut phi, eval, f0, t_lo, t_hi)?;
    let (t_best, f_best) = brent(&mut phi, eval, a, b, c, fb, x_tol)?;
    if f_best < f0 {
        *x = point(&base, d, t_best, bounds);
        Ok((f_best, t_best))
    } else {
        Ok((f0, T::zero()))
    }
}

/// Returns `(a, b, c, f(b))` with `a < b < c` (or `b` at an end of the
/// feasible range) and `f(b)` no larger than the values seen at `a` and `c`.
fn bracket<T, F, P>(
    phi: &mut P,
    eval: &mut Evaluator<'_, T, F>,
    f0: T,
    t_lo: T,
    t_hi: T,
) -> Result<(T, T, T, T)>
where
    T: Real,
    F: Fn(&[T]) -> T,
    P: FnMut(T, &mut Evaluator<'_, T, F>) -> Result<T>,
{
    let one = T::one();
    let golden = T::lit(GOLDEN);

    // Probe one unit forward; fall back to backward when uphill or blocked.
    let fwd = one.min(t_hi);
    let f_fwd = if fwd > T::zero() { Some(phi(fwd, eval)?) } else { None };
    let (sign_lim, mut b, mut fb) = match f_fwd {
        Some(fv) if fv < f0 => (t_hi, fwd, fv),
        _ => {
            let back = (-one).max(t_lo);
            let f_back = if back < T::zero() { Some(phi(back, eval)?) } else { None };
            match f_back {
                Some(fv) if fv < f0 => (t_lo, back, fv),
                _ => {
                    // zero is already the best sampled point
                    let a = if back < T::zero() { back } else { T::zero() };
                    let c = if fwd > T::zero() { fwd } else { T::zero() };
                    return Ok((a, T::zero(), c, f0));
                }
            }
        }
    };

    let mut a = T::zero();
    for _ in 0..MAX_EXPANSIONS {
        if b == sign_lim {
            break;
        }
        let mut c = b + golden * (b - a);
        c = if sign_lim > T::zero() { c.min(sign_lim) } else { c.max(sign_lim) };
        let fc = phi(c, eval)?;
        if fc >= fb {
            return Ok(order(a, b, c, fb));
        }
        a = b;
        b = c;
        fb = fc;
    }
    // downhill all the way to the box face (or expansion budget spent)
    Ok(order(a, b, b, fb))
}

fn order<T: Real>(a: T, b: T, c: T, fb: T) -> (T, T, T, T) {
    if a <= c {
        (a, b, c, fb)
    } else {
        (c, b, a, fb)
    }
}

/// Brent's method on `[a, c]` seeded with the interior best point `b`.
fn brent<T, F, P>(
    phi: &mut P,
    eval: &mut Evaluator<'_, T, F>,
    a: T,
    b: T,
    c: T,
    fb: T,
    x_tol: T,
) -> Result<(T, T)>
where
    T: Real,
    F: Fn(&[T]) -> T,
    P: FnMut(T, &mut Evaluator<'_, T, F>) -> Result<T>,
{
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let cgold = T::lit(CGOLD);
    let rel_tol = x_tol.max(T::epsilon().sqrt());
    let abs_tol = x_tol;

    let (mut lo, mut hi) = (a, c);
    let (mut x, mut w, mut v) = (b, b, b);
    let (mut fx, mut fw, mut fv) = (fb, fb, fb);
    let mut d = T::zero();
    let mut e = T::zero();

    for _ in 0..BRENT_MAX_ITER {
        let xm = half * (lo + hi);
        let tol1 = rel_tol * x.abs() + abs_tol;
        let tol2 = two * tol1;
        if (x - xm).abs() <= tol2 - half * (hi - lo) {
            break;
        }
        let mut golden_step = true;
        if e.abs() > tol1 {
            // trial parabola through x, w, v
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = two * (q - r);
            if q > T::zero() {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (half * q * e_prev).abs() && p > q * (lo - x) && p < q * (hi - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - lo < tol2 || hi - u < tol2 {
                    d = if xm >= x { tol1 } else { -tol1 };
                }
                golden_step = false;
            }
        }
        if golden_step {
            e = if x >= xm { lo - x } else { hi - x };
            d = cgold * e;
        }
        let u = if d.abs() >= tol1 { x + d } else if d >= T::zero() { x + tol1 } else { x - tol1 };
        let u = u.max(a).min(c);
        let fu = phi(u, eval)?;
        if fu <= fx {
            if u >= x {
                lo = x;
            } else {
                hi = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                lo = u;
            } else {
                hi = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}
