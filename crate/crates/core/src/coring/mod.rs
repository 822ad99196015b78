//! Corings, comodules, colinear maps and relative injectivity.

mod colinear;
mod comodule;
#[allow(clippy::module_inception)]
mod coring;

pub use colinear::{cofree_retraction, contractible_equalizer_check, hom_colinear, regular_retraction, relative_injectivity, varpi, ColinearHom, InjectivityWitness};
pub use comodule::{same_coring, Comodule};
pub use coring::{failing_columns, Coring};
