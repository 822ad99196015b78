use crate::field::Field;

use super::{Matrix, RowSpace};

/// The quotient of `F^ambient_dim` by the row space of a relation matrix.
///
/// The basis of the quotient is the set of non-pivot coordinates of the
/// reduced relations; `section` sends basis vector `j` to the ambient unit
/// vector at the `j`-th non-pivot coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace<F: Field> {
    relations: RowSpace<F>,
    complement: Vec<usize>,
    project: Matrix<F>,
    section: Matrix<F>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(field: &F, ambient_dim: usize, relations: &Matrix<F>) -> Self {
        assert_eq!(relations.cols(), ambient_dim, "relation width");
        let mut rs = RowSpace::new(field, ambient_dim);
        for i in 0..relations.rows() {
            rs.insert(relations.row(i).to_vec());
        }
        Self::from_relations(rs)
    }

    pub fn from_relations(relations: RowSpace<F>) -> Self {
        let n = relations.ambient_dim();
        let field = relations.field().clone();
        let pivots = relations.pivots().to_vec();
        let complement: Vec<usize> = (0..n).filter(|j| pivots.binary_search(j).is_err()).collect();
        let k = complement.len();
        let mut project = Matrix::zeros(&field, k, n);
        for (j, &c) in complement.iter().enumerate() {
            project.set(j, c, field.one());
        }
        for (t, &p) in pivots.iter().enumerate() {
            let row = relations.basis_vector(t);
            for (j, &c) in complement.iter().enumerate() {
                if !field.is_zero(&row[c]) {
                    project.set(j, p, field.neg(&row[c]));
                }
            }
        }
        let mut section = Matrix::zeros(&field, n, k);
        for (j, &c) in complement.iter().enumerate() {
            section.set(c, j, field.one());
        }
        QuotientSpace {
            relations,
            complement,
            project,
            section,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }

    pub fn basis_dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient coordinates that index the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn relations(&self) -> &RowSpace<F> {
        &self.relations
    }

    pub fn project(&self) -> &Matrix<F> {
        &self.project
    }

    pub fn section(&self) -> &Matrix<F> {
        &self.section
    }

    pub fn project_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.project.mul_vec(v)
    }

    /// Rows of the argument are ambient coordinates.
    pub fn project_rows(&self, m: &Matrix<F>) -> Matrix<F> {
        self.project.mul(m)
    }

    /// `m * section`: a map given on the ambient space, restricted to the chosen lifts.
    pub fn restrict_columns(&self, m: &Matrix<F>) -> Matrix<F> {
        m.select_columns(&self.complement)
    }
}
