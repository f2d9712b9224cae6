//! Quantum resource estimation and hardware feasibility classification for
//! the Capacitated Vehicle Routing Problem.
//!
//! - [`instance`]: TSPLIB-dialect parsing and edge weights
//! - [`encoding`]: closed-form QUBO/HOBO resource counts
//! - [`hardware`]: device profiles and go/no-go verdicts
//! - [`qubo`]: explicit penalty QUBOs, brute-force solving, route decoding
//! - [`value`]: optimality gaps and fleet savings
//! - [`report`]: tables, feasibility diagrams
//! - [`cli`]: the `cvrp-feas` binary

pub mod cli;
pub mod encoding;
pub mod hardware;
pub mod instance;
pub mod qubo;
pub mod report;
pub mod value;
