//! Independent eigenvalue check by power-series shooting.
//!
//! `ψ'' = (x⁴ − 2E)ψ` has the entire solution `ψ = Σ c_k x^k` with
//! `(k+2)(k+1) c_{k+2} = c_{k−4} − 2E c_k`. A bound state makes the growing
//! component vanish, so `ψ(X; E)` changes sign across each eigenvalue for a
//! matching point `X` deep in the forbidden region.

use rug::Float;

/// `ψ(X; E)` for the even (`parity = 0`) or odd solution.
pub fn psi_at(energy: &Float, x: &Float, parity: usize) -> Float {
    let prec = energy.prec();
    let two_e = Float::with_val(prec, energy * 2u32);
    let mut c: Vec<Float> = vec![Float::new(prec); 4];
    c[parity] = Float::with_val(prec, 1);
    let x2 = Float::with_val(prec, x.square_ref());
    let mut sum = Float::new(prec);
    let mut power = if parity == 0 {
        Float::with_val(prec, 1)
    } else {
        Float::with_val(prec, x)
    };
    let mut k = parity;
    let mut peak = Float::new(prec);
    loop {
        let term = Float::with_val(prec, &c[k] * &power);
        let mag = Float::with_val(prec, term.abs_ref());
        if mag > peak {
            peak = mag.clone();
        }
        sum += &term;
        // stop once terms are negligible against the largest one
        if k > 40 && mag < Float::with_val(prec, &peak >> (prec + 8)) {
            break;
        }
        let lower = if k >= 4 {
            c[k - 4].clone()
        } else {
            Float::new(prec)
        };
        let next =
            (lower - Float::with_val(prec, &two_e * &c[k])) / ((k as u64 + 2) * (k as u64 + 1));
        while c.len() <= k + 2 {
            c.push(Float::new(prec));
        }
        c[k + 2] = next;
        k += 2;
        power *= &x2;
    }
    sum
}

/// Refines an eigenvalue inside `[lo, hi]` (where `ψ(X)` changes sign) by
/// bisection to absolute width `tol`. Returns `None` without a sign change.
pub fn refine(lo: &Float, hi: &Float, x: &Float, parity: usize, tol: &Float) -> Option<Float> {
    let prec = lo.prec();
    let mut a = lo.clone();
    let mut b = hi.clone();
    let fa = psi_at(&a, x, parity);
    let fb = psi_at(&b, x, parity);
    if fa.is_sign_negative() == fb.is_sign_negative() {
        return None;
    }
    let neg_a = fa.is_sign_negative();
    for _ in 0..4 * prec {
        let mid = Float::with_val(prec, &a + &b) / 2u32;
        let fm = psi_at(&mid, x, parity);
        if fm.is_sign_negative() == neg_a {
            a = mid;
        } else {
            b = mid;
        }
        if Float::with_val(prec, &b - &a) < *tol {
            break;
        }
    }
    Some(Float::with_val(prec, &a + &b) / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_to_twenty_digits() {
        let prec = 400;
        let x = Float::with_val(prec, 5);
        let lo = Float::with_val(prec, 0.5);
        let hi = Float::with_val(prec, 0.56);
        let tol = Float::with_val(prec, 1e-25);
        let e = refine(&lo, &hi, &x, 0, &tol).unwrap();
        let exact = Float::with_val(
            prec,
            Float::parse("0.53018104524209144982352300834633177275760").unwrap(),
        );
        let diff = Float::with_val(prec, &e - &exact).abs();
        assert!(diff < 1e-20, "{}", diff.to_f64());
    }
}
