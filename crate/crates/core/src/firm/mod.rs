//! Firm rings and modules, the unitalization, firm rings as corings and firmly projective modules.

mod dorroh;
mod dual_pair;
mod firmness;
mod ring_coring;

pub use dorroh::{dorroh, Dorroh};
pub use dual_pair::{is_firmly_projective, DualPair, ElementaryRing, FirmDualPair, FirmProjectivity, Projectivity};
pub use firmness::{firmness, is_firm_ring, left_firmness, FirmCheck, FirmWitness, RankCertificate, Side};
pub use ring_coring::{candidate_coring, coring_from_firm_ring, RingCoring};
