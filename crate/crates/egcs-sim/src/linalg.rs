//! Dense complex linear algebra helpers: matrix exponential and a pivoted
//! Gaussian solve, enough for the operator sizes used here.

use ndarray::{s, Array2};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Max column sum of absolute values.
pub fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for col in a.columns() {
        let sum: f64 = col.iter().map(|z| z.norm()).sum();
        max = max.max(sum);
    }
    max
}

/// Matrix exponential by scaling-and-squaring with a Pade(13) approximant.
///
/// Standard Higham-style construction: scale by 2^-s until the 1-norm is
/// below theta_13, evaluate the order-13 approximant, square s times.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    if n == 0 {
        return Array2::zeros((0, 0));
    }
    if n == 1 {
        return Array2::from_elem((1, 1), a[[0, 0]].exp());
    }

    const THETA_13: f64 = 5.371920351148152;
    let norm = one_norm(a);
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / c((1u64 << s) as f64));
    let mut result = pade13(&scaled);
    for _ in 0..s {
        result = result.dot(&result);
    }
    result
}

/// Pade(13,13) coefficients.
const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn pade13(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let eye = Array2::from_diag_elem(n, c(1.0));
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let u_inner = &a6 * c(B[13]) + &a4 * c(B[11]) + &a2 * c(B[9]);
    let u = a.dot(
        &(u_inner.dot(&a6) + &a6 * c(B[7]) + &a4 * c(B[5]) + &a2 * c(B[3]) + &eye * c(B[1])),
    );
    let v_inner = &a6 * c(B[12]) + &a4 * c(B[10]) + &a2 * c(B[8]);
    let v = v_inner.dot(&a6) + &a6 * c(B[6]) + &a4 * c(B[4]) + &a2 * c(B[2]) + &eye * c(B[0]);

    // (V - U) X = (V + U)
    solve(&v - &u, &v + &u)
}

/// Solve `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: Array2<Complex64>, b: Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.nrows());
    let m = b.ncols();

    let mut aug = Array2::zeros((n, n + m));
    aug.slice_mut(s![.., ..n]).assign(&a);
    aug.slice_mut(s![.., n..]).assign(&b);

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = aug[[col, col]].norm();
        for row in (col + 1)..n {
            let mag = aug[[row, col]].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        assert!(pivot_mag > 0.0, "singular matrix in solve");
        if pivot_row != col {
            for j in 0..(n + m) {
                aug.swap([col, j], [pivot_row, j]);
            }
        }
        let pivot = aug[[col, col]];
        for row in (col + 1)..n {
            let factor = aug[[row, col]] / pivot;
            if factor == Complex64::ZERO {
                continue;
            }
            for j in col..(n + m) {
                let v = aug[[col, j]];
                aug[[row, j]] -= factor * v;
            }
        }
    }

    let mut x = Array2::<Complex64>::zeros((n, m));
    for col in (0..n).rev() {
        let pivot = aug[[col, col]];
        for j in 0..m {
            let mut sum = aug[[col, n + j]];
            for k in (col + 1)..n {
                sum -= aug[[col, k]] * x[[k, j]];
            }
            x[[col, j]] = sum / pivot;
        }
    }
    x
}
