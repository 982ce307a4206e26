//! Orbit equations between special points, the printed tables of their
//! roots, and the search for bases with countably many expansions.

mod bset;
mod equation;
mod tables;

pub use bset::{
    b_aleph0_in, enumerate_candidates, j_targets, k_range, Candidate, CandidateSet, KRange, Rejection, SearchHit,
    SearchReport, SeedVerdict, K_CAP,
};
pub use equation::{
    mirror_point, orbit_text, solve_equation, special_rf, symbolic_orbit, Agreement, CandidateEquation, Step, TableRow,
};
pub use tables::{agreement, emit_tables, row_csv, row_json, table_window, CSV_HEADER};
