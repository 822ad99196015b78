use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra, Bimodule, Tensor};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::field::Field;
use crate::report::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `M ⊗_R R -> M`.
    Right,
    /// `R ⊗_R M -> M`.
    Left,
}

/// Rank of a multiplication map that failed to be an isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl RankCertificate {
    pub fn of(m: &Matrix<impl Field>) -> Self {
        RankCertificate {
            rank: m.rank(),
            source_dim: m.cols(),
            target_dim: m.rows(),
        }
    }
}

impl fmt::Display for RankCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} for a map {} -> {}", self.rank, self.source_dim, self.target_dim)
    }
}

impl From<RankCertificate> for Witness {
    fn from(c: RankCertificate) -> Self {
        Witness::rank(c.rank, c.source_dim, c.target_dim)
    }
}

/// A module `M` with `μ: M ⊗_R R -> M` (or `R ⊗_R M -> M`) and its inverse `d`.
#[derive(Debug, Clone)]
pub struct FirmWitness<F: Field> {
    pub module: Arc<Bimodule<F>>,
    pub side: Side,
    pub tensor: Tensor<F>,
    pub mu: Matrix<F>,
    pub d: Matrix<F>,
}

impl<F: Field> FirmWitness<F> {
    /// `μ ∘ d = id` and `d ∘ μ = id`.
    pub fn is_valid(&self) -> bool {
        self.mu.cols() == self.d.rows()
            && self.mu.rows() == self.d.cols()
            && self.mu.mul(&self.d).is_identity()
            && self.d.mul(&self.mu).is_identity()
    }
}

pub type FirmCheck<F> = std::result::Result<FirmWitness<F>, RankCertificate>;

fn conclude<F: Field>(module: &Arc<Bimodule<F>>, side: Side, tensor: Tensor<F>, mu: Matrix<F>) -> FirmCheck<F> {
    match mu.inverse() {
        Some(d) => Ok(FirmWitness {
            module: module.clone(),
            side,
            tensor,
            mu,
            d,
        }),
        None => Err(RankCertificate::of(&mu)),
    }
}

/// Decides whether `M ⊗_R R -> M` is an isomorphism for a right `R`-module `M`.
pub fn firmness<F: Field>(m: &Arc<Bimodule<F>>, r: &Arc<Algebra<F>>) -> Result<FirmCheck<F>> {
    if !same_algebra(m.right_algebra(), r) {
        return Err(Error::AlgebraMismatch("module is not a right module over the ring".into()));
    }
    let reg = Arc::new(Bimodule::regular(m.right_algebra()));
    let t = Tensor::new(m, &reg)?;
    let mu = t.right_collapse();
    Ok(conclude(m, Side::Right, t, mu))
}

/// Decides whether `R ⊗_R M -> M` is an isomorphism for a left `R`-module `M`.
pub fn left_firmness<F: Field>(m: &Arc<Bimodule<F>>, r: &Arc<Algebra<F>>) -> Result<FirmCheck<F>> {
    if !same_algebra(m.left_algebra(), r) {
        return Err(Error::AlgebraMismatch("module is not a left module over the ring".into()));
    }
    let reg = Arc::new(Bimodule::regular(m.left_algebra()));
    let t = Tensor::new(&reg, m)?;
    let mu = t.left_collapse();
    Ok(conclude(m, Side::Left, t, mu))
}

/// Firmness of `R` as a ring, checked as a right and as a left module.
///
/// The two sides always agree for a ring; disagreement is an internal error.
pub fn is_firm_ring<F: Field>(r: &Arc<Algebra<F>>) -> Result<FirmCheck<F>> {
    let reg = Arc::new(Bimodule::regular(r));
    let right = firmness(&reg, r)?;
    let left = left_firmness(&reg, r)?;
    match (&right, &left) {
        (Ok(_), Ok(_)) | (Err(_), Err(_)) => Ok(right),
        _ => Err(Error::InvariantViolation(format!(
            "R ⊗_R R -> R is {} on the right but {} on the left",
            if right.is_ok() { "invertible" } else { "singular" },
            if left.is_ok() { "invertible" } else { "singular" }
        ))),
    }
}
