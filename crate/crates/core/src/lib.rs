//! Local equivalence of labelled graphs over odd finite fields.
//!
//! Two graphs with edge labels in `F_q` are locally equivalent when a
//! sequence of local complementations ([`LocalOp::Star`]) and vertex
//! scalings ([`LocalOp::Circ`]) turns one into the other. [`decide`] answers
//! the question for connected graphs, [`decide_general`] for any pair, and
//! [`extract_ops`] turns a positive answer into an explicit sequence.
//!
//! ```
//! use locequiv::{decide, extract_ops, Field, LabeledGraph};
//!
//! let f = Field::prime(3).unwrap();
//! let one = f.one();
//! let path = LabeledGraph::from_edges(&f, 3, &[(0, 1, one), (1, 2, one)]).unwrap();
//! let triangle = path.star(1, one).unwrap();
//! let d = decide(&path, &triangle).unwrap();
//! let ops = extract_ops(&path, &triangle, d.witness().unwrap()).unwrap();
//! assert_eq!(path.apply_sequence(&ops).unwrap(), triangle);
//! ```

pub mod analysis;
pub mod cli;
pub mod decider;
pub mod error;
pub mod field;
pub mod graph;
pub mod io;
pub mod lambda;
pub mod orbit;
pub mod random;
pub mod subspace;
pub mod symplectic;
pub mod witness;

pub use decider::{decide, decide_general, decide_general_with, decide_with, verify_witness, DecideOptions, Decision, SearchStats};
pub use error::{Error, Result};
pub use field::{Fe, Field, FieldElement};
pub use graph::{LabeledGraph, LocalOp};
pub use lambda::{big_lambda, LambdaSystem, PhiVector};
pub use orbit::{equivalent_bruteforce, orbit, Orbit};
pub use subspace::Subspace;
pub use symplectic::{apply_normal, isotropic_of_graph, NormalMatrix};
pub use witness::{extract_ops, extract_ops_general, normal_from_phi};
