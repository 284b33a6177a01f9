//! Exact computation of the mass polynomials `f_G(q)` and `F_G(q)` attached
//! to a finite small group `G` in `SL(n)` over a finite field of
//! characteristic `p`, the conditional Euler characteristic `S(F_G)` of a
//! crepant resolution of the quotient singularity `A^n/G`, and the group
//! invariants `#Conj(G)` and `#Ind_k(G)`.
//!
//! Everything is exact: rational arithmetic throughout, no floating point.
//!
//! # Modules
//!
//! - [`qseries`]: Laurent polynomials and rational functions in `q` with
//!   rational exponents; geometric closed forms; the `S` functional.
//! - [`galois_field`]: `F_q` arithmetic with pinned moduli, linear algebra,
//!   truncated Laurent series and Artin-Schreier class reduction.
//! - [`group`]: group-spec realization as a concrete matrix group, subgroup
//!   lattice up to conjugacy, conjugacy and indecomposable-module counts.
//! - [`census`]: strata of Galois-extension classes — tame
//!   (Frobenius, inertia) pairs, wild Artin-Schreier levels, and the two
//!   dedicated permutation-fixture censuses.
//! - [`vfun`]: closed-form evaluation of the valuation weight `v` — shift
//!   numbers, ages, and the Artin-conductor route through ramification
//!   filtrations.
//! - [`mass`]: assembly of `f` per subgroup class and of `F_G`, with
//!   polynomiality, Betti and consistency verdicts.
//! - [`oracle`]: independent brute-force verification at small concrete `q`.
//! - [`fixtures`]: built-in named group specs.
//! - [`specfile`]: the group-spec file format and machine-readable reports.
//! - [`cli`]: the `wildmckay` command-line front end.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example laurent_arithmetic     # exact q-series toolkit
//! cargo run --example finite_fields          # F_q and Artin-Schreier classes
//! cargo run --example subgroup_lattice       # realization and class data
//! cargo run --example artin_schreier_census  # symbolic counts vs brute force
//! cargo run --example v_function_two_routes  # shift-number vs Artin conductor
//! cargo run --example permutation_fixtures   # the two built-in wild censuses
//! cargo run --example main_theorem_audit     # S(F) = #Conj = #Ind across fixtures
//! cargo run --example divergence             # the non-log-terminal branch
//! cargo run --example custom_group_spec      # spec files and machine reports
//! ```
//!
//! The CLI front end exposes the same functionality as subcommands
//! (`analyze`, `census`, `verify`, `fixtures`, `reproduce-paper`); see the
//! README for the file formats.

pub mod census;
pub mod cli;
pub mod fixtures;
pub mod galois_field;
pub mod group;
pub mod mass;
pub mod oracle;
pub mod qseries;
pub mod specfile;
pub mod vfun;

pub use galois_field::{make_field, Fq, FqMatrix, TruncLaurent};
pub use qseries::{QLaurent, QRatFun, Rational};
