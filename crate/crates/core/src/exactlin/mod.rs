//! Exact dense linear algebra over a [`Field`](crate::field::Field).

mod echelon;
mod kron;
mod matrix;
mod quotient;

pub use echelon::{RowSpace, Rref};
pub use kron::{kron2_apply, kron_all_apply, kron_apply};
pub use matrix::Matrix;
pub use quotient::QuotientSpace;

use crate::field::Field;

impl<F: Field> RowSpace<F> {
    /// Basis of `{x : r · x = 0 for every row r}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field().clone();
        let n = self.ambient_dim();
        let pivots = self.pivots();
        (0..n)
            .filter(|j| pivots.binary_search(j).is_err())
            .map(|free| {
                let mut v = vec![f.zero(); n];
                v[free] = f.one();
                for (t, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(&self.basis_vector(t)[free]);
                }
                v
            })
            .collect()
    }
}
