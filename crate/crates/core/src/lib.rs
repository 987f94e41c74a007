//! Quantum circuit simulation along two routes.
//!
//! * Full statevector execution, either dense ([`sv`]) or chunk-partitioned
//!   with cache-blocking swap insertion ([`block`]).
//! * Wire cutting: [`cutter`] splits a circuit into narrower fragments,
//!   [`evaluator`] simulates every measurement/initialisation variant and
//!   attributes shots, and [`reconstruct`] rebuilds the full distribution
//!   from Kronecker products of per-fragment terms.
//!
//! [`generate`] builds the benchmark circuit families and [`bench`] ties the
//! two routes together into comparable records.

pub mod bench;
pub mod block;
pub mod circuit;
pub mod cutter;
pub mod error;
pub mod evaluator;
pub mod generate;
pub mod qasm;
pub mod reconstruct;
pub mod sv;

pub use circuit::{dag_edges, gate_unitary, Circuit, DagEdge, Gate, GateKind, Unitary};
pub use error::{Error, Result};
pub use qasm::{parse_circuit, serialize_circuit};
pub use sv::{probabilities, simulate, MeasureBasis, ProbVector, StateVector};
