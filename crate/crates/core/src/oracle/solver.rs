//! Rayleigh–Ritz in a scaled harmonic-oscillator basis.
//!
//! With `x = (a + a†)/√(2ω)` the Hamiltonian `p²/2 + x⁴/2` couples basis
//! states `k` and `k + 2j` only, so each parity block is pentadiagonal. The
//! block is reduced to tridiagonal form by Givens rotations (bulge chasing)
//! and its eigenvalues are isolated by Sturm-sequence bisection.

use rug::Float;

/// Pentadiagonal parity block: `diag[i]`, `off1[i] = H[i][i+1]`,
/// `off2[i] = H[i][i+2]` in the block index.
pub(crate) struct BandBlock {
    pub diag: Vec<Float>,
    pub off1: Vec<Float>,
    pub off2: Vec<Float>,
}

/// Basis block for the given parity (`0` even, `1` odd) with `size` states.
pub(crate) fn parity_block(parity: usize, size: usize, omega: &Float, prec: u32) -> BandBlock {
    let w = Float::with_val(prec, omega);
    let w2 = Float::with_val(prec, w.square_ref());
    let sqrt_prod = |k: usize, span: usize| {
        let mut p = rug::Integer::from(1);
        for t in 1..=span {
            p *= (k + t) as u64;
        }
        Float::with_val(prec, p).sqrt()
    };
    let mut diag = Vec::with_capacity(size);
    let mut off1 = Vec::with_capacity(size);
    let mut off2 = Vec::with_capacity(size);
    for i in 0..size {
        let k = 2 * i + parity;
        let kf = k as u64;
        // ⟨k|p²|k⟩ = ω(2k+1)/2 ; ⟨k|x⁴|k⟩ = (6k² + 6k + 3)/(4ω²)
        let p2 = Float::with_val(prec, &w * (2 * kf + 1)) / 2u32;
        let x4 =
            Float::with_val(prec, 6 * kf * kf + 6 * kf + 3) / Float::with_val(prec, &w2 * 4u32);
        diag.push((p2 + x4) / 2u32);
        // ⟨k|p²|k+2⟩ = −(ω/2)√((k+1)(k+2)) ; ⟨k|x⁴|k+2⟩ = (4k+6)√((k+1)(k+2))/(4ω²)
        let s2 = sqrt_prod(k, 2);
        let p2 = -Float::with_val(prec, &w * &s2) / 2u32;
        let x4 = Float::with_val(prec, &s2 * (4 * kf + 6)) / Float::with_val(prec, &w2 * 4u32);
        off1.push((p2 + x4) / 2u32);
        // ⟨k|x⁴|k+4⟩ = √((k+1)(k+2)(k+3)(k+4))/(4ω²)
        let s4 = sqrt_prod(k, 4);
        off2.push(s4 / Float::with_val(prec, &w2 * 4u32) / 2u32);
    }
    BandBlock { diag, off1, off2 }
}

/// Symmetric matrix stored densely (blocks are a few hundred wide).
struct Dense {
    n: usize,
    a: Vec<Float>,
}

impl Dense {
    fn get(&self, i: usize, j: usize) -> &Float {
        &self.a[i * self.n + j]
    }

    fn from_band(block: &BandBlock, prec: u32) -> Self {
        let n = block.diag.len();
        let mut a = vec![Float::new(prec); n * n];
        for i in 0..n {
            a[i * n + i] = block.diag[i].clone();
            if i + 1 < n {
                a[i * n + i + 1] = block.off1[i].clone();
                a[(i + 1) * n + i] = block.off1[i].clone();
            }
            if i + 2 < n {
                a[i * n + i + 2] = block.off2[i].clone();
                a[(i + 2) * n + i] = block.off2[i].clone();
            }
        }
        Dense { n, a }
    }

    /// Applies the rotation `[c s; −s c]` to rows and columns `p < q`,
    /// touching only indices in `lo..hi`.
    fn rotate(&mut self, p: usize, q: usize, c: &Float, s: &Float, lo: usize, hi: usize) {
        let n = self.n;
        let prec = c.prec();
        for k in lo..hi {
            let x = &self.a[p * n + k];
            let y = &self.a[q * n + k];
            let nx = Float::with_val(prec, c * x) + Float::with_val(prec, s * y);
            let ny = Float::with_val(prec, c * y) - Float::with_val(prec, s * x);
            self.a[p * n + k] = nx;
            self.a[q * n + k] = ny;
        }
        for k in lo..hi {
            let x = &self.a[k * n + p];
            let y = &self.a[k * n + q];
            let nx = Float::with_val(prec, c * x) + Float::with_val(prec, s * y);
            let ny = Float::with_val(prec, c * y) - Float::with_val(prec, s * x);
            self.a[k * n + p] = nx;
            self.a[k * n + q] = ny;
        }
    }

    /// Zeroes `A[q][col]` against `A[p][col]` with a rotation in plane (p, q).
    fn annihilate(&mut self, p: usize, q: usize, col: usize) {
        let x = self.get(p, col).clone();
        let y = self.get(q, col).clone();
        if y.is_zero() {
            return;
        }
        let prec = x.prec();
        let r = Float::with_val(prec, x.hypot_ref(&y));
        let c = Float::with_val(prec, &x / &r);
        let s = Float::with_val(prec, &y / &r);
        let lo = p.saturating_sub(3);
        let hi = (q + 4).min(self.n);
        self.rotate(p, q, &c, &s, lo, hi);
        let n = self.n;
        self.a[q * n + col] = Float::new(prec);
        self.a[col * n + q] = Float::new(prec);
    }
}

/// Reduces a bandwidth-2 symmetric block to tridiagonal `(diag, off)`.
pub(crate) fn tridiagonalize(block: &BandBlock, prec: u32) -> (Vec<Float>, Vec<Float>) {
    let mut m = Dense::from_band(block, prec);
    let n = m.n;
    for j in 0..n.saturating_sub(2) {
        // remove A[j+2][j], then chase the bulge it creates two rows down
        let (mut p, mut q, mut col) = (j + 1, j + 2, j);
        while q < n {
            m.annihilate(p, q, col);
            // the rotation of rows p, q leaves a bulge at (q+2, p) when q+2 < n
            col = p;
            p = q + 1;
            q += 2;
            if q >= n || m.get(q, col).is_zero() {
                break;
            }
        }
    }
    let diag = (0..n).map(|i| m.get(i, i).clone()).collect();
    let off = (0..n.saturating_sub(1))
        .map(|i| m.get(i, i + 1).clone())
        .collect();
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix below `lambda`.
pub(crate) fn sturm_count(diag: &[Float], off_sq: &[Float], lambda: &Float) -> usize {
    let prec = lambda.prec();
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) * 2));
    let mut count = 0;
    let mut q = Float::with_val(prec, &diag[0] - lambda);
    for i in 0..diag.len() {
        if i > 0 {
            let t = Float::with_val(prec, &off_sq[i - 1] / &q);
            q = Float::with_val(prec, &diag[i] - lambda) - t;
        }
        if q.is_zero() {
            q = tiny.clone();
        }
        if q.is_sign_negative() {
            count += 1;
        }
    }
    count
}

/// The lowest `count` eigenvalues of a tridiagonal matrix by bisection,
/// each to an absolute width of `tol` (zero: down to adjacent floats).
pub(crate) fn lowest_eigenvalues(
    diag: &[Float],
    off: &[Float],
    count: usize,
    tol: &Float,
    max_iter: usize,
) -> Option<Vec<Float>> {
    let prec = diag[0].prec();
    let off_sq: Vec<Float> = off
        .iter()
        .map(|e| Float::with_val(prec, e.square_ref()))
        .collect();
    // Gershgorin bounds
    let mut lo = Float::with_val(prec, &diag[0]);
    let mut hi = Float::with_val(prec, &diag[0]);
    for i in 0..diag.len() {
        let mut r = Float::new(prec);
        if i > 0 {
            r += off[i - 1].clone().abs();
        }
        if i < off.len() {
            r += off[i].clone().abs();
        }
        let a = Float::with_val(prec, &diag[i] - &r);
        let b = Float::with_val(prec, &diag[i] + &r);
        if a < lo {
            lo = a;
        }
        if b > hi {
            hi = b;
        }
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut a = match out.last() {
            Some(prev) => Float::with_val(prec, prev) - Float::with_val(prec, tol),
            None => lo.clone(),
        };
        let mut b = hi.clone();
        let mut converged = false;
        for _ in 0..max_iter {
            let mid = Float::with_val(prec, &a + &b) / 2u32;
            // interval down to adjacent floats: nothing left to split
            if mid == a || mid == b || Float::with_val(prec, &b - &a) <= *tol {
                converged = true;
                break;
            }
            if sturm_count(diag, &off_sq, &mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        if !converged {
            return None;
        }
        out.push(Float::with_val(prec, &a + &b) / 2u32);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(prec: u32, v: f64) -> Float {
        Float::with_val(prec, v)
    }

    #[test]
    fn band_reduction_preserves_spectrum_of_small_block() {
        // eigenvalues of a 5×5 pentadiagonal matrix versus characteristic-free check:
        // trace and Frobenius norm are rotation invariants
        let prec = 128;
        let block = BandBlock {
            diag: vec![
                f(prec, 4.0),
                f(prec, 3.0),
                f(prec, 5.0),
                f(prec, 2.0),
                f(prec, 6.0),
            ],
            off1: vec![
                f(prec, 1.0),
                f(prec, 0.5),
                f(prec, -0.7),
                f(prec, 0.3),
                f(prec, 0.0),
            ],
            off2: vec![
                f(prec, 0.2),
                f(prec, -0.4),
                f(prec, 0.9),
                f(prec, 0.0),
                f(prec, 0.0),
            ],
        };
        let (d, e) = tridiagonalize(&block, prec);
        let trace: f64 = d.iter().map(|x| x.to_f64()).sum();
        assert!((trace - 20.0).abs() < 1e-12);
        let frob_band: f64 = block.diag.iter().map(|x| x.to_f64().powi(2)).sum::<f64>()
            + 2.0 * block.off1.iter().map(|x| x.to_f64().powi(2)).sum::<f64>()
            + 2.0 * block.off2.iter().map(|x| x.to_f64().powi(2)).sum::<f64>();
        let frob_tri: f64 = d.iter().map(|x| x.to_f64().powi(2)).sum::<f64>()
            + 2.0 * e.iter().map(|x| x.to_f64().powi(2)).sum::<f64>();
        assert!((frob_band - frob_tri).abs() < 1e-12);
        let tol = Float::with_val(prec, 1e-30);
        let ev = lowest_eigenvalues(&d, &e, 5, &tol, 400).unwrap();
        let sum: f64 = ev.iter().map(|x| x.to_f64()).sum();
        assert!((sum - 20.0).abs() < 1e-12);
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sturm_count_on_diagonal_matrix() {
        let prec = 64;
        let d = vec![f(prec, 1.0), f(prec, 3.0), f(prec, 2.0)];
        let e = vec![f(prec, 0.0), f(prec, 0.0)];
        assert_eq!(sturm_count(&d, &e, &f(prec, 2.5)), 2);
        assert_eq!(sturm_count(&d, &e, &f(prec, 0.5)), 0);
    }
}
