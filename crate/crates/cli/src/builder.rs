//! Assembles instance documents from core objects, naming shared algebras and modules once.

use std::sync::Arc;

use galcom_core::algebra::{Algebra, Bimodule};
use galcom_core::coring::{Comodule, Coring};
use galcom_core::exactlin::Matrix;
use galcom_core::galois::ComatrixContext;
use galcom_core::Field;

use crate::format::*;
use crate::instance::*;

pub struct DocBuilder<F: Field> {
    field: F,
    doc: InstanceFile,
    algebras: Vec<(String, Arc<Algebra<F>>)>,
    bimodules: Vec<(String, Arc<Bimodule<F>>)>,
}

impl<F: Field> DocBuilder<F> {
    pub fn new(field: &F, name: &str, description: &str) -> Self {
        DocBuilder {
            field: field.clone(),
            doc: InstanceFile {
                format_version: FORMAT_VERSION,
                name: name.to_string(),
                description: description.to_string(),
                field: field_spec(field),
                algebras: Vec::new(),
                bimodules: Vec::new(),
                corings: Vec::new(),
                comodules: Vec::new(),
                morphisms: Vec::new(),
                contexts: Vec::new(),
                galois: None,
                firm: None,
                params: ParamsDoc::default(),
                expect: ExpectDoc::default(),
            },
            algebras: Vec::new(),
            bimodules: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Registers an algebra, returning the name of an equal one if already present.
    pub fn algebra(&mut self, name: &str, a: &Arc<Algebra<F>>) -> String {
        if let Some((n, _)) = self.algebras.iter().find(|(_, b)| **b == **a) {
            return n.clone();
        }
        self.algebras.push((name.to_string(), a.clone()));
        self.doc.algebras.push(algebra_doc(name, a));
        name.to_string()
    }

    fn algebra_auto(&mut self, a: &Arc<Algebra<F>>) -> String {
        let name = format!("alg{}", self.algebras.len());
        self.algebra(&name, a)
    }

    /// Registers a bimodule (and its algebras), returning the name of an equal one if present.
    pub fn bimodule(&mut self, name: &str, b: &Arc<Bimodule<F>>) -> String {
        if let Some((n, _)) = self.bimodules.iter().find(|(_, c)| **c == **b) {
            return n.clone();
        }
        let left = self.algebra_auto(b.left_algebra());
        let right = self.algebra_auto(b.right_algebra());
        self.bimodules.push((name.to_string(), b.clone()));
        self.doc.bimodules.push(bimodule_doc(name, &left, &right, b));
        name.to_string()
    }

    pub fn coring(&mut self, name: &str, c: &Coring<F>) -> String {
        let carrier = self.bimodule(&format!("{name}_carrier"), c.carrier());
        self.doc.corings.push(coring_doc(name, &carrier, c));
        name.to_string()
    }

    pub fn comodule(&mut self, name: &str, coring: &str, m: &Comodule<F>) -> String {
        let carrier = self.bimodule(&format!("{name}_carrier"), m.carrier());
        self.doc.comodules.push(comodule_doc(name, coring, &carrier, m));
        name.to_string()
    }

    pub fn morphism(&mut self, name: &str, source: &Arc<Algebra<F>>, target: &Arc<Algebra<F>>, m: &Matrix<F>) {
        let s = self.algebra_auto(source);
        let t = self.algebra_auto(target);
        self.doc.morphisms.push(MorphismDoc {
            name: name.to_string(),
            source: s,
            target: t,
            matrix: matrix_doc(m),
        });
    }

    pub fn context(&mut self, name: &str, c: &ComatrixContext<F>) {
        let sigma = self.bimodule(&format!("{name}_sigma"), &c.sigma);
        let dagger = self.bimodule(&format!("{name}_dagger"), &c.dagger);
        let eps = c.eps.mul(c.ds.proj());
        self.doc.contexts.push(context_doc(name, &sigma, &dagger, c, &eps));
    }

    pub fn galois(&mut self, coring: &str, comodule: &str) {
        self.doc.galois = Some(GaloisDoc {
            coring: coring.to_string(),
            comodule: comodule.to_string(),
        });
    }

    pub fn firm(&mut self, ring: &Arc<Algebra<F>>, modules: &[(&str, &Arc<Bimodule<F>>)]) {
        let ring = self.algebra_auto(ring);
        let modules = modules.iter().map(|(n, m)| self.bimodule(n, m)).collect();
        self.doc.firm = Some(FirmDoc { ring, modules });
    }

    pub fn params(&mut self, seed: u64, family_size: Option<usize>) {
        self.doc.params = ParamsDoc {
            seed: Some(seed),
            family_size,
        };
    }

    pub fn expect(&mut self, suites: &[(&str, &str)], is_galois: Option<bool>, comonadic: Option<bool>) {
        self.doc.expect = ExpectDoc {
            suites: suites.iter().map(|(s, v)| (s.to_string(), v.to_string())).collect(),
            is_galois,
            comonadic,
        };
    }

    pub fn finish(self) -> InstanceFile {
        self.doc
    }
}
