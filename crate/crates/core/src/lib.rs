//! Exact computations for quantum Schubert cell algebras `U^w_±`: root
//! data and Weyl groups, weight lattices, the quantized enveloping algebra
//! with its PBW bases, normal elements, and torus-level center reports.

pub mod lattices;
pub mod ncengine;
pub mod normalia;
pub mod qarith;
pub mod rootsys;
pub mod spectra;

pub use lattices::{IntLattice, LatticeError};
pub use ncengine::{NCPoly, NcError, PBWContext, PBWVector, RewriteSystem, Sign, DEFAULT_DEGREE_CAP};
pub use normalia::{ClassificationReport, DeltaSet, NormalFinding};
pub use qarith::{LaurentPoly, RatFunc};
pub use rootsys::{CartanDatum, RootSysError, RootVec, Weight, WeylElement};
pub use spectra::{PairReport, QuantumTorusPresentation, SpectraError};
