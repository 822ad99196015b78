//! Seeded random instances.

use std::cmp::Ordering;
use std::sync::Arc;

use clap::ValueEnum;
use galcom_core::algebra::{matrix_unit, Algebra, Bimodule};
use galcom_core::coring::{Comodule, Coring};
use galcom_core::exactlin::Matrix;
use galcom_core::galois::{comatrix_coring, ComatrixContext, GaloisInstance};
use galcom_core::{Field, PrimeField, Rationals};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::DocBuilder;
use crate::corpus::{self, add_galois, firm_with_dagger, trivial_galois};
use crate::error::{CliError, Result};
use crate::format::InstanceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// The `n x n` matrix coring with `Σ = k^n`.
    MatrixCoring,
    /// The first row of `M_n`, `n = 2 + seed mod 2` unless given.
    FirmNonunital,
    /// A random unital algebra with its trivial coring.
    RandomAlgebra,
    /// A random subring of `M_3` spanned by matrix units, possibly without unit.
    RandomRing,
    /// A matrix coring in a random basis.
    RandomCoring,
    /// `Σ = A^n` over a random unital algebra with its comatrix coring.
    RandomDualPair,
}

#[derive(Debug, Clone)]
pub struct GenParams {
    pub n: Option<usize>,
    /// Characteristic; rationals when `None`.
    pub p: Option<u32>,
    pub seed: u64,
    pub max_dim: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n: None, p: None, seed: 0, max_dim: 8 }
    }
}

pub fn generate(kind: Kind, params: &GenParams) -> Result<InstanceFile> {
    if params.max_dim == 0 {
        return Err(CliError::InvalidParams("max-dim must be positive".into()));
    }
    if params.n == Some(0) {
        return Err(CliError::InvalidParams("n must be positive".into()));
    }
    match params.p {
        None => generate_over(&Rationals, kind, params),
        Some(p) => {
            let f = PrimeField::new(p).map_err(|_| CliError::InvalidParams(format!("{p} is not a prime")))?;
            generate_over(&f, kind, params)
        }
    }
}

fn check_dim(what: &str, dim: usize, max: usize) -> Result<()> {
    if dim > max {
        return Err(CliError::InvalidParams(format!("{what} has dimension {dim}, above max-dim {max}")));
    }
    Ok(())
}

/// Default dimension bound for random algebras; the full suite stays under a second up to here.
pub const DEFAULT_ALGEBRA_DIM: usize = 4;

pub fn generate_over<F: Field>(f: &F, kind: Kind, params: &GenParams) -> Result<InstanceFile> {
    let seed = params.seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = params.max_dim;
    let tag = format!("{:?}", kind).to_lowercase();
    let name = format!("generated_{tag}_{seed}");
    let doc = match kind {
        Kind::MatrixCoring => {
            let n = params.n.unwrap_or(2);
            check_dim("Σ", n, max)?;
            corpus::matrix_coring(f, &name, n)
        }
        Kind::FirmNonunital => {
            let n = params.n.unwrap_or(2 + (seed % 2) as usize);
            check_dim("R", n, max)?;
            corpus::firm_nonunital(f, &name, n)
        }
        Kind::RandomAlgebra => {
            let a = Arc::new(random_algebra(f, &mut rng, params.n.unwrap_or(DEFAULT_ALGEBRA_DIM).min(max)));
            let g = trivial_galois(&a, Bimodule::regular(&a));
            let mut b = DocBuilder::new(f, &name, "random unital algebra with its trivial coring and Σ = A");
            b.algebra("A", &a);
            let ctx = add_galois(&mut b, &g);
            firm_with_dagger(&mut b, &a, &ctx);
            b.params(seed, None);
            b.expect(&[("axioms", "pass"), ("galois", "pass")], Some(true), None);
            b.finish()
        }
        Kind::RandomRing => {
            let r = Arc::new(random_ring(f, &mut rng, params.n.unwrap_or(max).min(max).min(6)));
            let mut b = DocBuilder::new(f, &name, "random ring of matrix units inside M₃ in a random basis");
            b.algebra("R", &r);
            let modules: Vec<(String, Arc<Bimodule<F>>)> =
                (1..=2).map(|n| (format!("R^{n}"), Arc::new(Bimodule::free_right(&r, n)))).collect();
            let named: Vec<(&str, &Arc<Bimodule<F>>)> = modules.iter().map(|(n, m)| (n.as_str(), m)).collect();
            b.firm(&r, &named);
            b.params(seed, None);
            b.expect(&[("axioms", "pass"), ("dorroh", "pass")], None, None);
            b.finish()
        }
        Kind::RandomCoring => {
            let n = params.n.unwrap_or(2);
            check_dim("Σ", n, max)?;
            let g = random_coring(f, &mut rng, n);
            let mut b = DocBuilder::new(f, &name, "matrix coring in a random basis with Σ = k^n");
            b.algebra("k", g.a());
            let ctx = add_galois(&mut b, &g);
            firm_with_dagger(&mut b, g.r(), &ctx);
            b.params(seed, None);
            b.expect(&[("axioms", "pass"), ("galois", "pass")], Some(true), None);
            b.finish()
        }
        Kind::RandomDualPair => {
            let n = params.n.unwrap_or(1);
            if n > 2 {
                return Err(CliError::InvalidParams("random dual pairs take n ≤ 2".into()));
            }
            let g = random_dual_pair(f, &mut rng, n, max).map_err(|e| CliError::at("generate", e))?;
            let mut b = DocBuilder::new(f, &name, "Σ = A^n over a random unital algebra with its comatrix coring");
            b.algebra("k", g.r());
            b.algebra("A", g.a());
            let ctx = add_galois(&mut b, &g);
            firm_with_dagger(&mut b, g.r(), &ctx);
            b.params(seed, None);
            b.expect(&[("axioms", "pass"), ("context", "pass"), ("galois", "pass")], Some(true), None);
            b.finish()
        }
    };
    Ok(doc)
}

/// A random matrix of determinant ±1 with small integer entries: a shuffled product of
/// unit lower and unit upper triangular matrices. Its inverse is integral as well.
pub fn random_invertible<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R, n: usize) -> Matrix<F> {
    let lower = Matrix::from_fn(f, n, n, |i, j| match i.cmp(&j) {
        Ordering::Equal => f.one(),
        Ordering::Greater => f.from_i64(rng.gen_range(-1..=1)),
        Ordering::Less => f.zero(),
    });
    let upper = Matrix::from_fn(f, n, n, |i, j| match i.cmp(&j) {
        Ordering::Equal => f.one(),
        Ordering::Less => f.from_i64(rng.gen_range(-1..=1)),
        Ordering::Greater => f.zero(),
    });
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    lower.mul(&upper).select_rows(&order)
}

/// Recombines a basis of matrices by a random invertible matrix.
fn rebase<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R, size: usize, basis: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let p = random_invertible(f, rng, basis.len());
    (0..basis.len())
        .map(|j| {
            let mut acc = Matrix::zeros(f, size, size);
            for (i, b) in basis.iter().enumerate() {
                acc = acc.add(&b.scale(p.get(i, j)));
            }
            acc
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Block {
    Scalar,
    Dual,
    Upper,
    Full,
}

impl Block {
    fn size(self) -> usize {
        if matches!(self, Block::Scalar) {
            1
        } else {
            2
        }
    }

    fn dim(self) -> usize {
        match self {
            Block::Scalar => 1,
            Block::Dual => 2,
            Block::Upper => 3,
            Block::Full => 4,
        }
    }

    fn entries(self) -> Vec<Vec<(usize, usize)>> {
        match self {
            Block::Scalar => vec![vec![(0, 0)]],
            Block::Dual => vec![vec![(0, 0), (1, 1)], vec![(0, 1)]],
            Block::Upper => vec![vec![(0, 0)], vec![(0, 1)], vec![(1, 1)]],
            Block::Full => vec![vec![(0, 0)], vec![(0, 1)], vec![(1, 0)], vec![(1, 1)]],
        }
    }
}

/// A product of copies of `k`, `k[x]/(x²)`, `U₂` and `M₂` of total dimension at most
/// `max_dim`, in a random basis.
pub fn random_algebra<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R, max_dim: usize) -> Algebra<F> {
    let kinds = [Block::Scalar, Block::Dual, Block::Upper, Block::Full];
    let mut blocks = Vec::new();
    let mut dim = 0;
    loop {
        let fitting: Vec<Block> = kinds.iter().copied().filter(|b| dim + b.dim() <= max_dim.max(1)).collect();
        let Some(&b) = fitting.choose(rng) else { break };
        blocks.push(b);
        dim += b.dim();
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let size: usize = blocks.iter().map(|b| b.size()).sum();
    let mut basis = Vec::new();
    let mut offset = 0;
    for b in &blocks {
        for positions in b.entries() {
            let mut m = Matrix::zeros(f, size, size);
            for (i, j) in positions {
                m.set(offset + i, offset + j, f.one());
            }
            basis.push(m);
        }
        offset += b.size();
    }
    let basis = rebase(f, rng, size, &basis);
    Algebra::from_matrix_basis(f, size, &basis).expect("block algebras are closed under products")
}

/// The span of a random set of matrix units of `M_3` closed under products, of dimension at
/// most `max_dim`, in a random basis. Often without unit, sometimes not firm.
pub fn random_ring<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R, max_dim: usize) -> Algebra<F> {
    let max_dim = max_dim.clamp(1, 9);
    loop {
        let count = rng.gen_range(1..=3);
        let mut units: Vec<(usize, usize)> = Vec::new();
        for _ in 0..count {
            let u = (rng.gen_range(0..3), rng.gen_range(0..3));
            if !units.contains(&u) {
                units.push(u);
            }
        }
        loop {
            let mut grown = false;
            for &(i, j) in units.clone().iter() {
                for &(k, l) in units.clone().iter() {
                    if j == k && !units.contains(&(i, l)) {
                        units.push((i, l));
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
        if units.len() > max_dim {
            continue;
        }
        units.sort();
        let basis: Vec<Matrix<F>> = units.iter().map(|&(i, j)| matrix_unit(f, 3, i, j)).collect();
        let basis = rebase(f, rng, 3, &basis);
        return Algebra::from_matrix_basis(f, 3, &basis).expect("closed under products");
    }
}

/// The `n x n` matrix coring moved along a random basis change of its carrier, with `Σ = k^n`
/// moved along.
pub fn random_coring<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R, n: usize) -> GaloisInstance<F> {
    let g = corpus::matrix_coring_galois(f, n, 1);
    let c = &g.coring;
    let d = n * n;
    let p = random_invertible(f, rng, d);
    let pinv = p.inverse().expect("invertible");
    let comult = c.cc().sec().mul(c.comult());
    let comult = pinv.kron(&pinv).mul(&comult).mul(&p);
    let counit = c.counit().mul(&p);
    let moved = Arc::new(Coring::from_ambient(c.carrier().clone(), &comult, counit).expect("shape"));
    let rho = g.sigma.mc().sec().mul(g.sigma.coaction());
    let rho = Matrix::identity(f, n).kron(&pinv).mul(&rho);
    let sigma = Comodule::from_ambient(&moved, g.sigma.carrier().clone(), &rho).expect("shape");
    GaloisInstance::new(moved, sigma).expect("same coring")
}

/// `Σ = A^n` over `R = k` for a random unital `A` with `dim Σ ≤ 3`, with the comatrix coring
/// of its dual pair.
pub fn random_dual_pair<F: Field, R: Rng + ?Sized>(
    f: &F,
    rng: &mut R,
    n: usize,
    max_dim: usize,
) -> galcom_core::Result<GaloisInstance<F>> {
    let a = Arc::new(random_algebra(f, rng, (3 / n).min(max_dim)));
    let sigma = Bimodule::free_right(&a, n);
    let g = trivial_galois(&a, sigma);
    let p = g
        .firm_projectivity()?
        .ok_or_else(|| galcom_core::Error::NotFirm("free modules over k are firmly projective".into()))?;
    let ctx = ComatrixContext::from_firm_projectivity(&p)?;
    let cc = comatrix_coring(&ctx)?;
    GaloisInstance::new(cc.coring, cc.sigma)
}
