use std::sync::Arc;

use crate::algebra::{Algebra, Bimodule};
use crate::error::Result;
use crate::exactlin::Matrix;
use crate::field::Field;
use crate::report::{ValidationReport, Witness};

/// The unitalization `R̂ = R ⊕ k` with `(r, x)(r', x') = (rr' + rx' + xr', xx')`.
///
/// Basis `e_0, ..., e_{n-1}` of `R` followed by the new unit `u = e_n`.
#[derive(Debug, Clone)]
pub struct Dorroh<F: Field> {
    pub r: Arc<Algebra<F>>,
    pub rhat: Arc<Algebra<F>>,
    /// `ι(r) = (r, 0)`, a `(n + 1) x n` matrix.
    pub inclusion: Matrix<F>,
}

pub fn dorroh<F: Field>(r: &Arc<Algebra<F>>) -> Dorroh<F> {
    let f = r.field();
    let n = r.dim();
    let rhat = Algebra::from_products(
        f,
        n + 1,
        |i, j| {
            let mut v = vec![f.zero(); n + 1];
            match (i == n, j == n) {
                (false, false) => v[..n].clone_from_slice(&r.product(i, j)),
                (false, true) => v[i] = f.one(),
                (true, false) => v[j] = f.one(),
                (true, true) => v[n] = f.one(),
            }
            v
        },
        Some(crate::algebra::unit_vector(f, n + 1, n)),
    )
    .expect("shape");
    let inclusion = Matrix::from_fn(f, n + 1, n, |i, j| if i == j { f.one() } else { f.zero() });
    Dorroh {
        r: r.clone(),
        rhat: Arc::new(rhat),
        inclusion,
    }
}

impl<F: Field> Dorroh<F> {
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        rep.merge("rhat", self.rhat.validate());
        rep.expect_none(
            "inclusion_multiplicative",
            "ι(r r') = ι(r) ι(r')",
            self.r.morphism_failure(&self.rhat, &self.inclusion).map(|(i, _)| Witness::basis("R", i)),
        );
        let image: Vec<Vec<F::Elem>> = self.inclusion.columns();
        rep.record("two_sided_ideal", self.rhat.is_left_ideal(&image) && self.rhat.is_right_ideal(&image), "ι(R) is an ideal of R̂");
        rep
    }

    /// A right `R`-module with the unit of `R̂` acting as the identity.
    pub fn extend_right(&self, m: &Bimodule<F>) -> Result<Bimodule<F>> {
        let mut ops = m.right_ops().to_vec();
        ops.push(Matrix::identity(m.field(), m.dim()));
        m.with_right(self.rhat.clone(), ops)
    }

    pub fn extend_left(&self, m: &Bimodule<F>) -> Result<Bimodule<F>> {
        let mut ops = m.left_ops().to_vec();
        ops.push(Matrix::identity(m.field(), m.dim()));
        m.with_left(self.rhat.clone(), ops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn zero_ring_unitalization() {
        let f = PrimeField::new(5).unwrap();
        let r = Arc::new(Algebra::zero_multiplication(&f, 1));
        let d = dorroh(&r);
        assert_eq!(d.rhat.dim(), 2);
        assert!(d.validate().passed());
        // e·e = 0 and u·e = e.
        assert_eq!(d.rhat.product(0, 0), vec![f.zero(), f.zero()]);
        assert_eq!(d.rhat.product(1, 0), vec![f.one(), f.zero()]);
    }

    #[test]
    fn unital_input_gets_a_new_unit() {
        let q = Rationals;
        let r = Arc::new(Algebra::full_matrix(&q, 2));
        let d = dorroh(&r);
        assert_eq!(d.rhat.dim(), 5);
        assert!(d.validate().passed());
        assert_eq!(d.rhat.unit().unwrap()[4], q.one());
        assert_ne!(d.rhat.find_unit().unwrap()[..4], r.unit().unwrap()[..]);
    }
}
