//! Typed instances: loading a document into core objects and emitting it back.

use std::collections::HashSet;
use std::path::Path;
use std::sync::Arc;

use galcom_core::algebra::{Algebra, Bimodule, Tensor};
use galcom_core::coring::{Comodule, Coring};
use galcom_core::exactlin::Matrix;
use galcom_core::galois::{ComatrixContext, GaloisInstance};
use galcom_core::{Field, PrimeField, Rationals};

use crate::error::{CliError, Result};
use crate::format::*;

#[derive(Debug, Clone)]
pub struct BimoduleEntry<F: Field> {
    pub name: String,
    pub left: String,
    pub right: String,
    pub module: Arc<Bimodule<F>>,
}

#[derive(Debug, Clone)]
pub struct CoringEntry<F: Field> {
    pub name: String,
    pub carrier: String,
    pub coring: Arc<Coring<F>>,
}

#[derive(Debug, Clone)]
pub struct ComoduleEntry<F: Field> {
    pub name: String,
    pub coring: String,
    pub carrier: String,
    pub comodule: Comodule<F>,
}

#[derive(Debug, Clone)]
pub struct MorphismEntry<F: Field> {
    pub name: String,
    pub source: String,
    pub target: String,
    pub matrix: Matrix<F>,
}

#[derive(Debug, Clone)]
pub struct ContextEntry<F: Field> {
    pub name: String,
    pub sigma: String,
    pub dagger: String,
    pub context: ComatrixContext<F>,
    /// `ε` as given, on `Σ† ⊗_k Σ`; it must vanish on the balancing relations.
    pub eps_ambient: Matrix<F>,
}

#[derive(Debug, Clone)]
pub struct GaloisEntry<F: Field> {
    pub coring: String,
    pub comodule: String,
    pub instance: GaloisInstance<F>,
}

#[derive(Debug, Clone)]
pub struct FirmEntry<F: Field> {
    pub ring: String,
    pub algebra: Arc<Algebra<F>>,
    pub modules: Vec<(String, Arc<Bimodule<F>>)>,
}

/// A fully resolved instance over one field.
#[derive(Debug, Clone)]
pub struct Instance<F: Field> {
    pub name: String,
    pub description: String,
    pub field: F,
    pub algebras: Vec<(String, Arc<Algebra<F>>)>,
    pub bimodules: Vec<BimoduleEntry<F>>,
    pub corings: Vec<CoringEntry<F>>,
    pub comodules: Vec<ComoduleEntry<F>>,
    pub morphisms: Vec<MorphismEntry<F>>,
    pub contexts: Vec<ContextEntry<F>>,
    pub galois: Option<GaloisEntry<F>>,
    pub firm: Option<FirmEntry<F>>,
    pub params: ParamsDoc,
    pub expect: ExpectDoc,
}

/// An instance over whichever field its document declares.
#[derive(Debug, Clone)]
pub enum AnyInstance {
    Rational(Instance<Rationals>),
    Prime(Instance<PrimeField>),
}

impl AnyInstance {
    pub fn name(&self) -> &str {
        match self {
            AnyInstance::Rational(i) => &i.name,
            AnyInstance::Prime(i) => &i.name,
        }
    }

    pub fn emit(&self) -> InstanceFile {
        match self {
            AnyInstance::Rational(i) => emit(i),
            AnyInstance::Prime(i) => emit(i),
        }
    }

    pub fn expect(&self) -> &ExpectDoc {
        match self {
            AnyInstance::Rational(i) => &i.expect,
            AnyInstance::Prime(i) => &i.expect,
        }
    }
}

pub fn load_path(path: &Path) -> Result<AnyInstance> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<AnyInstance> {
    load(&InstanceFile::from_json(text)?)
}

pub fn load(doc: &InstanceFile) -> Result<AnyInstance> {
    if doc.format_version != FORMAT_VERSION {
        return Err(CliError::ParseError(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    match doc.field {
        FieldSpec::Rational => Ok(AnyInstance::Rational(load_typed(doc, Rationals)?)),
        FieldSpec::Prime { p } => {
            let f = PrimeField::new(p).map_err(|e| CliError::at("field", e))?;
            Ok(AnyInstance::Prime(load_typed(doc, f)?))
        }
    }
}

fn parse_scalar<F: Field>(f: &F, s: &Scalar, at: &str) -> Result<F::Elem> {
    f.parse(&s.text()).map_err(|e| CliError::at(at, e))
}

fn parse_vector<F: Field>(f: &F, v: &[Scalar], len: usize, at: &str) -> Result<Vec<F::Elem>> {
    if v.len() != len {
        return Err(CliError::DimensionMismatch {
            at: at.into(),
            detail: format!("expected {len} entries, got {}", v.len()),
        });
    }
    v.iter().enumerate().map(|(i, s)| parse_scalar(f, s, &format!("{at}[{i}]"))).collect()
}

fn parse_matrix<F: Field>(f: &F, m: &MatrixDoc, rows: usize, cols: usize, at: &str) -> Result<Matrix<F>> {
    if m.len() != rows {
        return Err(CliError::DimensionMismatch {
            at: at.into(),
            detail: format!("expected {rows} rows, got {}", m.len()),
        });
    }
    let data = m
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(f, r, cols, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, cols, data).map_err(|e| CliError::at(at, e))
}

fn unique<'a>(names: impl Iterator<Item = &'a str>, kind: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CliError::ParseError(format!("duplicate {kind} name `{n}`")));
        }
    }
    Ok(())
}

fn find<'a, T>(items: &'a [T], name: &str, key: impl Fn(&T) -> &str) -> Result<&'a T> {
    items.iter().find(|x| key(x) == name).ok_or_else(|| CliError::UnknownReference(name.to_string()))
}

impl<F: Field> Instance<F> {
    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra<F>>> {
        find(&self.algebras, name, |(n, _)| n).map(|(_, a)| a)
    }

    pub fn bimodule(&self, name: &str) -> Result<&BimoduleEntry<F>> {
        find(&self.bimodules, name, |b| &b.name)
    }

    pub fn coring(&self, name: &str) -> Result<&CoringEntry<F>> {
        find(&self.corings, name, |c| &c.name)
    }

    pub fn comodule(&self, name: &str) -> Result<&ComoduleEntry<F>> {
        find(&self.comodules, name, |c| &c.name)
    }

    pub fn seed(&self) -> u64 {
        self.params.seed.unwrap_or(0)
    }
}

pub fn load_typed<F: Field>(doc: &InstanceFile, f: F) -> Result<Instance<F>> {
    unique(doc.algebras.iter().map(|a| a.name.as_str()), "algebra")?;
    unique(doc.bimodules.iter().map(|a| a.name.as_str()), "bimodule")?;
    unique(doc.corings.iter().map(|a| a.name.as_str()), "coring")?;
    unique(doc.comodules.iter().map(|a| a.name.as_str()), "comodule")?;
    unique(doc.morphisms.iter().map(|a| a.name.as_str()), "morphism")?;
    unique(doc.contexts.iter().map(|a| a.name.as_str()), "context")?;
    let mut inst = Instance {
        name: doc.name.clone(),
        description: doc.description.clone(),
        field: f.clone(),
        algebras: Vec::new(),
        bimodules: Vec::new(),
        corings: Vec::new(),
        comodules: Vec::new(),
        morphisms: Vec::new(),
        contexts: Vec::new(),
        galois: None,
        firm: None,
        params: doc.params.clone(),
        expect: doc.expect.clone(),
    };

    for a in &doc.algebras {
        let at = format!("algebras.{}", a.name);
        let n = a.dim;
        if a.products.len() != n {
            return Err(CliError::DimensionMismatch {
                at: format!("{at}.products"),
                detail: format!("expected {n} rows of products, got {}", a.products.len()),
            });
        }
        let mut cols = Vec::with_capacity(n * n);
        for (i, row) in a.products.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::DimensionMismatch {
                    at: format!("{at}.products[{i}]"),
                    detail: format!("expected {n} products, got {}", row.len()),
                });
            }
            for (j, p) in row.iter().enumerate() {
                cols.push(parse_vector(&f, p, n, &format!("{at}.products[{i}][{j}]"))?);
            }
        }
        let unit = a.unit.as_ref().map(|u| parse_vector(&f, u, n, &format!("{at}.unit"))).transpose()?;
        let alg = Algebra::new(&f, n, Matrix::from_columns(&f, n, &cols), unit).map_err(|e| CliError::at(&at, e))?;
        inst.algebras.push((a.name.clone(), Arc::new(alg)));
    }

    for b in &doc.bimodules {
        let at = format!("bimodules.{}", b.name);
        let left = inst.algebra(&b.left)?.clone();
        let right = inst.algebra(&b.right)?.clone();
        let ops = |ms: &[MatrixDoc], alg: &Algebra<F>, side: &str| -> Result<Vec<Matrix<F>>> {
            if ms.len() != alg.dim() {
                return Err(CliError::DimensionMismatch {
                    at: format!("{at}.{side}_action"),
                    detail: format!("expected {} matrices, got {}", alg.dim(), ms.len()),
                });
            }
            ms.iter()
                .enumerate()
                .map(|(i, m)| parse_matrix(&f, m, b.dim, b.dim, &format!("{at}.{side}_action[{i}]")))
                .collect()
        };
        let l = ops(&b.left_action, &left, "left")?;
        let r = ops(&b.right_action, &right, "right")?;
        let module = Bimodule::new(left, right, b.dim, l, r).map_err(|e| CliError::at(&at, e))?;
        inst.bimodules.push(BimoduleEntry {
            name: b.name.clone(),
            left: b.left.clone(),
            right: b.right.clone(),
            module: Arc::new(module),
        });
    }

    for c in &doc.corings {
        let at = format!("corings.{}", c.name);
        let carrier = inst.bimodule(&c.carrier)?.module.clone();
        let d = carrier.dim();
        let comult = parse_matrix(&f, &c.comult, d * d, d, &format!("{at}.comult"))?;
        let counit = parse_matrix(&f, &c.counit, carrier.left_algebra().dim(), d, &format!("{at}.counit"))?;
        let coring = Coring::from_ambient(carrier, &comult, counit).map_err(|e| CliError::at(&at, e))?;
        inst.corings.push(CoringEntry {
            name: c.name.clone(),
            carrier: c.carrier.clone(),
            coring: Arc::new(coring),
        });
    }

    for m in &doc.comodules {
        let at = format!("comodules.{}", m.name);
        let coring = inst.coring(&m.coring)?.coring.clone();
        let carrier = inst.bimodule(&m.carrier)?.module.clone();
        let rows = carrier.dim() * coring.dim();
        let coaction = parse_matrix(&f, &m.coaction, rows, carrier.dim(), &format!("{at}.coaction"))?;
        let comodule = Comodule::from_ambient(&coring, carrier, &coaction).map_err(|e| CliError::at(&at, e))?;
        inst.comodules.push(ComoduleEntry {
            name: m.name.clone(),
            coring: m.coring.clone(),
            carrier: m.carrier.clone(),
            comodule,
        });
    }

    for m in &doc.morphisms {
        let at = format!("morphisms.{}", m.name);
        let (s, t) = (inst.algebra(&m.source)?.dim(), inst.algebra(&m.target)?.dim());
        let matrix = parse_matrix(&f, &m.matrix, t, s, &at)?;
        inst.morphisms.push(MorphismEntry {
            name: m.name.clone(),
            source: m.source.clone(),
            target: m.target.clone(),
            matrix,
        });
    }

    for c in &doc.contexts {
        let at = format!("contexts.{}", c.name);
        let sigma = inst.bimodule(&c.sigma)?.module.clone();
        let dagger = inst.bimodule(&c.dagger)?.module.clone();
        let (s, d) = (sigma.dim(), dagger.dim());
        let eta = parse_matrix(&f, &c.eta, s * d, sigma.left_algebra().dim(), &format!("{at}.eta"))?;
        let eps_ambient = parse_matrix(&f, &c.eps, sigma.right_algebra().dim(), d * s, &format!("{at}.eps"))?;
        let sd = Tensor::new(&sigma, &dagger).map_err(|e| CliError::at(&at, e))?;
        let ds = Tensor::new(&dagger, &sigma).map_err(|e| CliError::at(&at, e))?;
        let context = ComatrixContext::new(sigma, dagger, sd.proj().mul(&eta), eps_ambient.mul(ds.sec()))
            .map_err(|e| CliError::at(&at, e))?;
        inst.contexts.push(ContextEntry {
            name: c.name.clone(),
            sigma: c.sigma.clone(),
            dagger: c.dagger.clone(),
            context,
            eps_ambient,
        });
    }

    if let Some(g) = &doc.galois {
        let coring = inst.coring(&g.coring)?.coring.clone();
        let sigma = inst.comodule(&g.comodule)?.comodule.clone();
        let instance = GaloisInstance::new(coring, sigma).map_err(|e| CliError::at("galois", e))?;
        inst.galois = Some(GaloisEntry {
            coring: g.coring.clone(),
            comodule: g.comodule.clone(),
            instance,
        });
    }

    if let Some(fd) = &doc.firm {
        let algebra = inst.algebra(&fd.ring)?.clone();
        let mut modules = Vec::new();
        for m in &fd.modules {
            let b = inst.bimodule(m)?;
            if b.right != fd.ring {
                return Err(CliError::at(
                    format!("firm.modules.{m}"),
                    galcom_core::Error::AlgebraMismatch(format!("`{m}` is not a right module over `{}`", fd.ring)),
                ));
            }
            modules.push((m.clone(), b.module.clone()));
        }
        inst.firm = Some(FirmEntry {
            ring: fd.ring.clone(),
            algebra,
            modules,
        });
    }
    Ok(inst)
}

pub(crate) fn scalar<F: Field>(f: &F, x: &F::Elem) -> Scalar {
    Scalar::from_text(f.render(x))
}

pub(crate) fn matrix_doc<F: Field>(m: &Matrix<F>) -> MatrixDoc {
    let f = m.field();
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| scalar(f, x)).collect()).collect()
}

pub(crate) fn algebra_doc<F: Field>(name: &str, a: &Algebra<F>) -> AlgebraDoc {
    let f = a.field();
    let n = a.dim();
    AlgebraDoc {
        name: name.to_string(),
        dim: n,
        products: (0..n)
            .map(|i| (0..n).map(|j| a.product(i, j).iter().map(|x| scalar(f, x)).collect()).collect())
            .collect(),
        unit: a.unit().map(|u| u.iter().map(|x| scalar(f, x)).collect()),
    }
}

pub(crate) fn bimodule_doc<F: Field>(name: &str, left: &str, right: &str, b: &Bimodule<F>) -> BimoduleDoc {
    BimoduleDoc {
        name: name.to_string(),
        dim: b.dim(),
        left: left.to_string(),
        right: right.to_string(),
        left_action: b.left_ops().iter().map(matrix_doc).collect(),
        right_action: b.right_ops().iter().map(matrix_doc).collect(),
    }
}

pub(crate) fn coring_doc<F: Field>(name: &str, carrier: &str, c: &Coring<F>) -> CoringDoc {
    CoringDoc {
        name: name.to_string(),
        carrier: carrier.to_string(),
        comult: matrix_doc(&c.cc().sec().mul(c.comult())),
        counit: matrix_doc(c.counit()),
    }
}

pub(crate) fn comodule_doc<F: Field>(name: &str, coring: &str, carrier: &str, m: &Comodule<F>) -> ComoduleDoc {
    ComoduleDoc {
        name: name.to_string(),
        coring: coring.to_string(),
        carrier: carrier.to_string(),
        coaction: matrix_doc(&m.mc().sec().mul(m.coaction())),
    }
}

pub(crate) fn context_doc<F: Field>(name: &str, sigma: &str, dagger: &str, c: &ComatrixContext<F>, eps_ambient: &Matrix<F>) -> ContextDoc {
    ContextDoc {
        name: name.to_string(),
        sigma: sigma.to_string(),
        dagger: dagger.to_string(),
        eta: matrix_doc(&c.sd.sec().mul(&c.eta)),
        eps: matrix_doc(eps_ambient),
    }
}

pub fn field_spec<F: Field>(f: &F) -> FieldSpec {
    match f.kind() {
        galcom_core::FieldKind::Rationals => FieldSpec::Rational,
        galcom_core::FieldKind::Prime(p) => FieldSpec::Prime { p },
    }
}

/// The canonical document of an instance. Maps into tensor products are emitted through the
/// canonical section of each quotient, so `emit(load(emit(x))) == emit(x)`.
pub fn emit<F: Field>(inst: &Instance<F>) -> InstanceFile {
    InstanceFile {
        format_version: FORMAT_VERSION,
        name: inst.name.clone(),
        description: inst.description.clone(),
        field: field_spec(&inst.field),
        algebras: inst.algebras.iter().map(|(n, a)| algebra_doc(n, a)).collect(),
        bimodules: inst.bimodules.iter().map(|b| bimodule_doc(&b.name, &b.left, &b.right, &b.module)).collect(),
        corings: inst.corings.iter().map(|c| coring_doc(&c.name, &c.carrier, &c.coring)).collect(),
        comodules: inst
            .comodules
            .iter()
            .map(|m| comodule_doc(&m.name, &m.coring, &m.carrier, &m.comodule))
            .collect(),
        morphisms: inst
            .morphisms
            .iter()
            .map(|m| MorphismDoc {
                name: m.name.clone(),
                source: m.source.clone(),
                target: m.target.clone(),
                matrix: matrix_doc(&m.matrix),
            })
            .collect(),
        contexts: inst
            .contexts
            .iter()
            .map(|c| context_doc(&c.name, &c.sigma, &c.dagger, &c.context, &c.eps_ambient))
            .collect(),
        galois: inst.galois.as_ref().map(|g| GaloisDoc {
            coring: g.coring.clone(),
            comodule: g.comodule.clone(),
        }),
        firm: inst.firm.as_ref().map(|fe| FirmDoc {
            ring: fe.ring.clone(),
            modules: fe.modules.iter().map(|(n, _)| n.clone()).collect(),
        }),
        params: inst.params.clone(),
        expect: inst.expect.clone(),
    }
}
