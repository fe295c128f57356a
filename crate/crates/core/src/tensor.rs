//! Dense row-major tensors and mode products.

use num_complex::Complex64;

/// Row-major `rows x cols` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_real<F: FnMut(usize, usize) -> f64>(rows: usize, cols: usize, mut f: F) -> Self {
        Self::from_fn(rows, cols, |i, j| Complex64::new(f(i, j), 0.0))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }
}

/// Contracts axis `axis` of `tensor` (row-major, `shape`) with `m`:
/// `out[.., i, ..] = Σ_j m[i, j] tensor[.., j, ..]`.
pub fn mode_product(tensor: &[Complex64], shape: &[usize], axis: usize, m: &Matrix) -> (Vec<Complex64>, Vec<usize>) {
    assert_eq!(shape[axis], m.cols, "mode product shape mismatch");
    let outer: usize = shape[..axis].iter().product();
    let inner: usize = shape[axis + 1..].iter().product();
    let n = shape[axis];
    let mut out = vec![Complex64::new(0.0, 0.0); outer * m.rows * inner];
    for a in 0..outer {
        for i in 0..m.rows {
            let dst = &mut out[(a * m.rows + i) * inner..(a * m.rows + i + 1) * inner];
            for j in 0..n {
                let c = m.get(i, j);
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let src = &tensor[(a * n + j) * inner..(a * n + j + 1) * inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += c * s;
                }
            }
        }
    }
    let mut new_shape = shape.to_vec();
    new_shape[axis] = m.rows;
    (out, new_shape)
}

/// Applies one matrix per axis in axis order.
pub fn multi_mode_product(tensor: &[Complex64], shape: &[usize], mats: &[Matrix]) -> (Vec<Complex64>, Vec<usize>) {
    assert_eq!(shape.len(), mats.len());
    let mut cur = tensor.to_vec();
    let mut cur_shape = shape.to_vec();
    for (axis, m) in mats.iter().enumerate() {
        let (next, next_shape) = mode_product(&cur, &cur_shape, axis, m);
        cur = next;
        cur_shape = next_shape;
    }
    (cur, cur_shape)
}

/// Row-major enumeration of a tensor-product grid given per-axis point lists.
pub fn grid_points(axes: &[&[f64]]) -> Vec<Vec<f64>> {
    let shape: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let total: usize = shape.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    for _ in 0..total {
        out.push(idx.iter().zip(axes).map(|(&i, a)| a[i]).collect());
        for l in (0..axes.len()).rev() {
            idx[l] += 1;
            if idx[l] < shape[l] {
                break;
            }
            idx[l] = 0;
        }
    }
    out
}
