use crate::field::Field;

use super::Matrix;

/// `(I_pre ⊗ f ⊗ I_post) * m` without materializing the Kronecker product.
pub fn kron_apply<F: Field>(pre: usize, f: &Matrix<F>, post: usize, m: &Matrix<F>) -> Matrix<F> {
    let field = m.field();
    let (fin, fout) = (f.cols(), f.rows());
    assert_eq!(m.rows(), pre * fin * post, "kron_apply input rows");
    let nz: Vec<Vec<(usize, &F::Elem)>> = (0..fin)
        .map(|x| {
            (0..fout)
                .filter_map(|y| {
                    let v = f.get(y, x);
                    (!field.is_zero(v)).then_some((y, v))
                })
                .collect()
        })
        .collect();
    let mut out = Matrix::zeros(field, pre * fout * post, m.cols());
    for a in 0..pre {
        for x in 0..fin {
            if nz[x].is_empty() {
                continue;
            }
            for b in 0..post {
                let src = (a * fin + x) * post + b;
                for col in 0..m.cols() {
                    let v = m.get(src, col);
                    if field.is_zero(v) {
                        continue;
                    }
                    for &(y, c) in &nz[x] {
                        let dst = (a * fout + y) * post + b;
                        field.mul_add_assign(out.entry_mut(dst, col), c, v);
                    }
                }
            }
        }
    }
    out
}

/// `f ⊗ g` applied to a matrix whose rows index `f.cols() * g.cols()`.
pub fn kron2_apply<F: Field>(f: &Matrix<F>, g: &Matrix<F>, m: &Matrix<F>) -> Matrix<F> {
    let inner = kron_apply(f.cols(), g, 1, m);
    kron_apply(1, f, g.rows(), &inner)
}

/// `(f_1 ⊗ ... ⊗ f_n) * m`.
pub fn kron_all_apply<F: Field>(factors: &[&Matrix<F>], m: &Matrix<F>) -> Matrix<F> {
    let mut cur = m.clone();
    // After step k, factors 0..k have been applied (output dims), the rest are still input dims.
    for k in 0..factors.len() {
        let pre: usize = factors[..k].iter().map(|f| f.rows()).product();
        let post: usize = factors[k + 1..].iter().map(|f| f.cols()).product();
        cur = kron_apply(pre, factors[k], post, &cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn matches_explicit_kronecker() {
        let q = Rationals;
        let f = Matrix::from_i64(&q, &[&[1, 2], &[0, 3], &[4, 0]]);
        let g = Matrix::from_i64(&q, &[&[0, 1, 1], &[2, 0, 5]]);
        let m = Matrix::from_fn(&q, 6, 2, |i, j| q.from_i64((i * 3 + j) as i64 - 4));
        assert_eq!(kron_all_apply(&[&f, &g], &m), f.kron(&g).mul(&m));
        let i2 = Matrix::identity(&q, 2);
        assert_eq!(kron_apply(2, &g, 1, &m), i2.kron(&g).mul(&m));
        assert_eq!(kron_apply(1, &f, 3, &m), f.kron(&Matrix::identity(&q, 3)).mul(&m));
    }
}
