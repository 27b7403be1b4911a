//! Spectral extremal analysis of k-uniform hypergraphs.
//!
//! The crate computes spectral radii of uniform hypergraphs through power
//! iteration on the adjacency tensor, builds the extremal families that
//! arise for unicyclic hypergraphs with perfect matchings, solves the
//! weighted-incidence certificate systems that pin each family's spectral
//! radius as an algebraic number, and verifies the extremality claims by
//! exhaustive enumeration up to isomorphism at desk scale.
//!
//! Modules:
//!
//! * [`hypergraph`] — the core [`UniformHypergraph`] type, structural
//!   predicates (linearity, connectivity, cyclomatic number), perfect
//!   matchings, and unicyclic class labels.
//! * [`canonical`] — canonical forms and isomorphism testing via partition
//!   refinement with backtracking.
//! * [`spectral`] — adjacency-tensor application and bracketing power
//!   iteration for the spectral radius.
//! * [`families`] — labeled constructions of the named families
//!   (stars, cycles, and the pendent-decorated unicyclic families
//!   A, B, D, I, J, L) plus edge-moving transformations.
//! * [`certificates`] — weighted incidence matrices, normality and
//!   subnormality checks, per-family certificate solvers, and subnormal
//!   comparison witnesses.
//! * [`extremal`] — exhaustive enumeration of unicyclic perfect-matching
//!   hypergraphs and verification of the catalogued extremality claims.
//!
//! # Example
//!
//! ```
//! use hyperspectra_core::{build_family, spectral_radius_default, Family, FamilySpec};
//!
//! // A star with 4 edges of size 3 has spectral radius 4^(1/3).
//! let star = build_family(&FamilySpec::new(Family::S, 3, Some(4))).unwrap();
//! let pair = spectral_radius_default(&star.graph).unwrap();
//! assert!((pair.rho - 4f64.powf(1.0 / 3.0)).abs() < 1e-9);
//! ```

pub mod canonical;
pub mod certificates;
pub mod error;
pub mod extremal;
pub mod families;
pub mod hypergraph;
pub mod spectral;

pub use canonical::{are_isomorphic, canonical_form, canonical_form_capped, CanonicalForm, DEFAULT_CANONICAL_CAP};
pub use certificates::{
    check_alpha_normal, check_alpha_subnormal, check_consistency, rho_from_alpha, solve_certificate,
    solve_certificate_with_tol, subnormal_witness, subnormal_witness_with_tol, CertFamily,
    CertificateSolution, SubnormalVerdict, SubnormalWitness, WeightedIncidenceMatrix, WitnessPair,
    CERT_CHECK_TOL, DEFAULT_ALPHA_TOL,
};
pub use error::{Error, Result};
pub use extremal::{
    enumerate_unicyclic_pm, resolve_open_comparison, verify_theorem, EnumFilter, EnumerationConfig,
    EnumerationResult, Member, OpenComparisonEntry, OpenComparisonReport, ReportEntry, RunStats,
    TheoremId, TheoremReport, Verdict, VerifyMode, DEFAULT_ENUM_VERTEX_CAP, VERIFY_GAP_THRESHOLD,
};
pub use families::{
    attach_pendent, build_c2, build_family, build_linear_cycle, build_star, coalesce, edge_release,
    move_edges, Family, FamilySpec, LabeledHypergraph, MoveReport, Sidecar,
};
pub use hypergraph::{ClassLabel, ClassTags, CycleInfo, CycleKind, Matching, UniformHypergraph};
pub use spectral::{
    apply_adjacency, spectral_radius, spectral_radius_default, EigenPair, DEFAULT_MAX_ITER,
    DEFAULT_POWER_TOL,
};
