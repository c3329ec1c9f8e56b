//! Integer-order Bessel functions of the first kind.
//!
//! All orders `0..=n_max` are produced at once by Miller's downward
//! recurrence, normalized with the sum rule `J_0 + 2 Σ J_{2k} = 1`.

const RESCALE_ABOVE: f64 = 1e250;

/// Starting order for the downward recurrence. The excess over
/// `max(n_max, |x|)` keeps the relative error of every returned order
/// below 1e-15.
fn start_order(n_max: usize, x: f64) -> usize {
    let top = (n_max as f64).max(x);
    let m = (top + 40.0 + 12.0 * top.sqrt()).ceil() as usize;
    m + (m % 2)
}

/// `J_n(x)` for `n = 0..=n_max`.
pub fn bessel_j_orders(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let m = start_order(n_max, ax);
    let two_over_x = 2.0 / ax;

    let mut next = 0.0; // J_{n+1}
    let mut cur = 1e-300; // J_n, arbitrary scale
    let mut even_sum = 0.0;
    let mut j0 = 0.0;
    for n in (0..=m).rev() {
        if n <= n_max {
            out[n] = cur;
        }
        if n == 0 {
            j0 = cur;
        } else if n % 2 == 0 {
            even_sum += cur;
        }
        if n > 0 {
            let prev = (n as f64) * two_over_x * cur - next;
            next = cur;
            cur = prev;
            if cur.abs() > RESCALE_ABOVE {
                cur /= RESCALE_ABOVE;
                next /= RESCALE_ABOVE;
                even_sum /= RESCALE_ABOVE;
                for v in out.iter_mut() {
                    *v /= RESCALE_ABOVE;
                }
            }
        }
    }
    let norm = j0 + 2.0 * even_sum;
    for v in out.iter_mut() {
        *v /= norm;
    }
    if x < 0.0 {
        for (n, v) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// `J_n(x)` for any integer order, using `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let order = n.unsigned_abs() as usize;
    let v = bessel_j_orders(order, x)[order];
    if n < 0 && order % 2 == 1 {
        -v
    } else {
        v
    }
}
