//! Exact computational models of weighted backward shifts on the
//! sequence spaces of vanishing and convergent scalar sequences.
//!
//! Everything is verification-grade: scalars are rationals or complex
//! rationals, norms are carried as exact squares, operator identities are
//! checked by equality rather than tolerance, and every closed form has
//! an independent route (iterated application, brute-force basis probes,
//! or conjugation through the isomorphism) against which it is tested.
//!
//! Module map:
//!
//! - [`scalar`]: exact rational / complex-rational scalars.
//! - [`seq`]: finitely supported sequences, convergent sequences as
//!   limit plus finite deviation, formula sequences with decay
//!   certificates.
//! - [`shift`]: the bounded and unbounded weighted backward shifts on
//!   the vanishing space, their powers, right inverses, and norms.
//! - [`conjugacy`]: the isomorphism onto coordinates and the conjugated
//!   operators on the convergent space.
//! - [`chaos`]: constructive chaos machinery — decay-condition reports,
//!   periodic points, orbit visits, schedules.
//! - [`spectral`]: eigenvectors, spectrum classification, brute-force
//!   norm oracles, quasinilpotence tables.
//! - [`negative`]: obstruction certificates for the extensions to the
//!   convergent space.

pub mod chaos;
pub mod conjugacy;
pub mod error;
pub mod negative;
pub mod sample;
pub mod scalar;
pub mod seq;
pub mod shift;
pub mod spectral;

pub use chaos::{
    build_periodic_point, hypercyclic_schedule, orbit_visit, per_n_membership,
    periodic_density_demo, verify_scc, DecayFit, DensityCertificate, HypercyclicSchedule,
    PeriodicPoint, SccOptions, SccReport, VisitCertificate,
};
pub use conjugacy::{
    conjugation_witness, from_coords, from_coords_formula, to_coords, ConjugationWitness,
    FormulaConv, HatOp,
};
pub use error::{Error, Result};
pub use negative::{
    domain_forces_vanishing, obstruction_report, range_limit_check, CExtension, CElementView,
    DomainDecision, Obstruction, ObstructionReport,
};
pub use scalar::{Field, Scalar};
pub use seq::{schauder_coords, ConvSeq, DecayCertificate, FinSeq, FormulaSeq, IndexBase, SupNorm};
pub use shift::{
    DomainReason, DomainReport, DomainVerdict, OperatorNorm, OperatorSpec, SeqView, ShiftOp,
    Space, Variant,
};
pub use spectral::{
    classify, eigen_residual, eigenvector_bounded, eigenvector_unbounded, opnorm_bruteforce,
    quasinilpotence_table, BruteForceNorm, Classification, KernelVector, OperatorPath,
    QuasinilpotenceRow, ResidualReport, SpectrumClass, SpectrumVerdict,
};
