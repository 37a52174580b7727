//! Exact few-qubit simulation of postselected CHSH tests on three-qubit GHZ states.
//!
//! Two qubits of a GHZ triple, chosen per event from the third qubit's Z result, show
//! correlations whose CHSH combination reaches the algebraic maximum 4. The crate computes
//! those correlations exactly and by seeded sampling. It also evaluates the
//! probability-based CH form from triple-coincidence data and checks the two reference
//! bounds independently: 2 by enumerating deterministic local strategies, and `2√2` from
//! the operator norm of the two-qubit CHSH operator.
//!
//! Modules, bottom-up:
//!
//! * [`statevector`]: dense states, GHZ construction, Pauli expectation values.
//! * [`measurement`]: Born-rule joint distributions with visibility noise, sampling.
//! * [`postselect`]: role labeling and the postselected correlation estimators.
//! * [`inequalities`]: CHSH/CH values, bound transform, LHV enumeration, norm checker.
//! * [`coincidence`]: counts tables, the counts file format, probability reconstruction.
//! * [`cli`]: end-to-end pipelines used by the `ghzbell` binary.

pub mod cli;
pub mod coincidence;
pub mod inequalities;
pub mod linalg;
pub mod measurement;
pub mod postselect;
pub mod statevector;

pub use measurement::{joint_distribution, sample, Axis, MeasurementSetting, OutcomeEvent};
pub use statevector::{make_ghz, make_weighted_ghz, PauliString, StateVector};
