#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootError<E> {
    /// f(lo) and f(hi) have the same sign.
    NoBracket { flo: f64, fhi: f64 },
    MaxIter { x: f64, fx: f64 },
    Eval(E),
}

impl<E> From<E> for RootError<E> {
    fn from(e: E) -> Self {
        RootError::Eval(e)
    }
}

/// Newton's method safeguarded by bisection on a sign-changing bracket.
///
/// `f` returns the value and the derivative. Iteration stops when the step
/// (or the bracket) is below `xtol` or the residual is exactly zero.
pub fn newton_bisect<E, F>(mut f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Result<f64, RootError<E>>
where
    F: FnMut(f64) -> Result<(f64, f64), E>,
{
    let (flo, _) = f(lo)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    let (fhi, _) = f(hi)?;
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoBracket { flo, fhi });
    }
    // orient so that f(a) < 0 < f(b)
    let (mut a, mut b) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = 0.5 * (lo + hi);
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = f(x)?;
    for _ in 0..max_iter {
        if fx == 0.0 {
            return Ok(x);
        }
        let newton_out = ((x - b) * dfx - fx) * ((x - a) * dfx - fx) > 0.0;
        let slow = (2.0 * fx).abs() > (dx_old * dfx).abs();
        dx_old = dx;
        if newton_out || slow || dfx == 0.0 || !dfx.is_finite() {
            dx = 0.5 * (b - a);
            x = a + dx;
        } else {
            dx = fx / dfx;
            x -= dx;
        }
        if dx.abs() < xtol || (b - a).abs() < xtol {
            return Ok(x);
        }
        let r = f(x)?;
        fx = r.0;
        dfx = r.1;
        if fx < 0.0 {
            a = x;
        } else {
            b = x;
        }
    }
    Err(RootError::MaxIter { x, fx })
}

/// Brent's method (inverse quadratic interpolation with bisection fallback).
pub fn brent<E, F>(mut f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Result<f64, RootError<E>>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoBracket { flo: fa, fhi: fb });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b)?;
    }
    Err(RootError::MaxIter { x: b, fx: fb })
}

#[cfg(test)]
mod tests {
    use super::*;

    type R<T> = Result<T, RootError<()>>;

    #[test]
    fn newton_finds_cube_root() {
        let r: R<f64> = newton_bisect(|x| Ok((x * x * x - 2.0, 3.0 * x * x)), 0.0, 2.0, 1e-15, 100);
        assert!((r.unwrap() - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn newton_survives_flat_start() {
        // derivative vanishes at the midpoint
        let r: R<f64> = newton_bisect(|x| Ok((x * x * x, 3.0 * x * x)), -1.0, 1.0, 1e-14, 200);
        assert!(r.unwrap().abs() < 1e-4);
    }

    #[test]
    fn brent_matches_cosine_fixed_point() {
        let r: R<f64> = brent(|x| Ok(x.cos() - x), 0.0, 1.0, 1e-15, 100);
        assert!((r.unwrap() - 0.739_085_133_215_160_6).abs() < 1e-14);
    }

    #[test]
    fn missing_bracket_is_reported() {
        let r: R<f64> = brent(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, 50);
        assert!(matches!(r, Err(RootError::NoBracket { .. })));
    }
}
