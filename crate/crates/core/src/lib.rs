//! Exact computations with the voracious projection and voracious language of
//! a Coxeter group, the finite state automaton recognising the language, and
//! a verifier that checks the structural properties of all of these on balls
//! of the Cayley graph.

pub mod automaton;
pub mod error;
pub mod field;
pub mod group;
pub mod verifier;
pub mod voracious;
pub mod walls;

pub use automaton::{AutomatonBuild, Edge, Pivot, PivotSet, VoraciousAutomaton};
pub use error::{Error, Result};
pub use field::{FieldContext, FieldScalar, Sign};
pub use group::{CoxeterGroup, CoxeterMatrix, Descents, GroupElement, Side, Word};
pub use verifier::{
    all_words, run_suite, CheckResult, CheckStatus, Constants, FellowTravellerMaxima,
    GroupDescription, VerificationReport, Verifier, VerifyConfig,
};
pub use voracious::FactorizationChain;
pub use walls::{IncidentChamber, Root, Wall, WallSet, WallSide};
