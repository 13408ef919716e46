//! Problem files, random consistent problems, and iteration traces on disk.
//!
//! * Problem files (`.cfp.json`) are pretty-printed JSON with an explicit
//!   `version` field. Numbers are written in shortest round-trip form, so
//!   `save(load(f))` reproduces the canonical form of `f` byte for byte.
//! * Trace files (`.trace.csv`) hold one row per iteration with every
//!   floating-point value written to 17 significant digits.

mod generate;
mod problem_file;
mod trace_csv;

pub use generate::{generate_random, GeneratorKind};
pub use problem_file::{load_problem, parse_problem, problem_to_string, save_problem, Metadata, ProblemFile, SetSpec, PROBLEM_FILE_VERSION};
pub use trace_csv::{read_trace, trace_to_string, write_trace, TraceTable};
