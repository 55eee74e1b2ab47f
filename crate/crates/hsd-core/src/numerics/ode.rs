#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// difference between the 5th and embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates the scalar ODE `y' = f(t, y)` from `t0` to `t1` with the
/// Dormand-Prince 5(4) pair and PI-free step size control.
///
/// `t1 < t0` is allowed. Returns `Err(msg)` on evaluation failure or when
/// the step size underflows.
pub fn dopri5<E, F>(mut f: F, t0: f64, y0: f64, t1: f64, rtol: f64, atol: f64) -> Result<(f64, OdeStats), String>
where
    F: FnMut(f64, f64) -> Result<f64, E>,
    E: std::fmt::Display,
{
    let mut stats = OdeStats::default();
    let span = t1 - t0;
    if span == 0.0 {
        return Ok((y0, stats));
    }
    let dir = span.signum();
    let mut eval = |t: f64, y: f64| f(t, y).map_err(|e| e.to_string());
    let mut t = t0;
    let mut y = y0;
    let mut k1 = eval(t, y)?;
    let mut h = dir * (span.abs() * 0.1).min(0.05).max(span.abs() * 1e-3);
    for _ in 0..100_000 {
        if (t1 - t) * dir <= 0.0 {
            return Ok((y, stats));
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        let k2 = eval(t + C2 * h, y + h * A21 * k1)?;
        let k3 = eval(t + C3 * h, y + h * (A31 * k1 + A32 * k2))?;
        let k4 = eval(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
        let k5 = eval(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))?;
        let k6 = eval(t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))?;
        let y_new = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        let k7 = eval(t + h, y_new)?;
        let err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
        let scale = atol + rtol * y.abs().max(y_new.abs());
        let ratio = (err / scale).abs();
        if ratio <= 1.0 {
            stats.accepted += 1;
            let t_new = t + h;
            // snap to the endpoint to avoid a vanishing final step
            t = if (t1 - t_new) * dir <= 1e-15 * span.abs() { t1 } else { t_new };
            y = y_new;
            k1 = k7;
        } else {
            stats.rejected += 1;
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-14 * span.abs().max(1e-300) {
            return Err(format!("step size underflow at t = {t}"));
        }
    }
    Err("too many steps".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let (y, _) = dopri5(|_, y| Ok::<_, String>(y), 0.0, 1.0, 1.0, 1e-11, 1e-13).unwrap();
        assert!((y - std::f64::consts::E).abs() < 1e-10);
    }

    #[test]
    fn integrates_backwards() {
        let (y, st) = dopri5(|t, _| Ok::<_, String>(t.cos()), 0.0, 0.0, -2.0, 1e-11, 1e-13).unwrap();
        assert!((y - (-2f64).sin()).abs() < 1e-10);
        assert!(st.accepted > 0);
    }
}
