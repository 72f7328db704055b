//! Random orthogonal matrices.

use crate::rng::RandomSource;

/// Row-major `dim x dim` orthogonal matrix: a Gaussian matrix whose rows go
/// through modified Gram-Schmidt twice.
pub fn random_rotation<R: RandomSource + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    let mut m: Vec<f64> = (0..dim * dim).map(|_| rng.standard_normal()).collect();
    orthonormalize_rows(&mut m, dim);
    orthonormalize_rows(&mut m, dim);
    m
}

/// Modified Gram-Schmidt over the rows of a row-major square matrix.
pub fn orthonormalize_rows(m: &mut [f64], dim: usize) {
    for i in 0..dim {
        let (done, rest) = m.split_at_mut(i * dim);
        let row = &mut rest[..dim];
        for q in done.chunks_exact(dim) {
            let proj = dot(q, row);
            for (r, &qk) in row.iter_mut().zip(q) {
                *r -= proj * qk;
            }
        }
        let norm = dot(row, row).sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|r| *r /= norm);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let chunks = a.len() / 4 * 4;
    for (x, y) in a[..chunks].chunks_exact(4).zip(b[..chunks].chunks_exact(4)) {
        for l in 0..4 {
            acc[l] += x[l] * y[l];
        }
    }
    let tail: f64 = a[chunks..].iter().zip(&b[chunks..]).map(|(x, y)| x * y).sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// `max |M M^T - I|` over all entries.
pub fn orthogonality_error(m: &[f64], dim: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let v = dot(&m[i * dim..(i + 1) * dim], &m[j * dim..(j + 1) * dim]);
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &[f64], dim: usize) -> f64 {
    let mut a = m.to_vec();
    let mut det = 1.0;
    for c in 0..dim {
        let pivot = (c..dim)
            .max_by(|&x, &y| a[x * dim + c].abs().total_cmp(&a[y * dim + c].abs()))
            .unwrap();
        if a[pivot * dim + c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            for k in 0..dim {
                a.swap(pivot * dim + k, c * dim + k);
            }
            det = -det;
        }
        let p = a[c * dim + c];
        det *= p;
        for r in c + 1..dim {
            let factor = a[r * dim + c] / p;
            for k in c..dim {
                a[r * dim + k] -= factor * a[c * dim + k];
            }
        }
    }
    det
}
