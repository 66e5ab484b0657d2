//! Instance generators: reductions from classic problems whose answers can
//! be brute-forced, so every generated instance carries a known label.
//!
//! Variable names are fixed per generator (prefixes `b`, `g`, `x`, `y`, `h`,
//! `c`, `r`, `z`) so planted assignments can be built by name.

pub mod allen;
pub mod dcsp;
pub mod grid;
pub mod integer;
pub mod mpss;
pub mod subset_sum;

pub use allen::{amalgamation_fixtures, from_unit_allen, AllenRelation};
pub use dcsp::{dcsp_compress, dcsp_to_d2k, DcspInstance};
pub use grid::{gen_is_d2, gen_is_d31, gen_is_d31_strict, gen_is_d40, ruler_assignment, GridGraph};
pub use integer::{closed_reinterpret, integer_brute_force, rationalize, strict0_from_integer, strict0_to_integer, IntInstance};
pub use mpss::{gap_gadget, mcc_to_mpss, mpss_planted, mpss_to_d21, MpssChoice, MpssInstance, PartiteGraph, Support, UniformVector};
pub use subset_sum::{gen_subset_sum, subset_sum_brute};
