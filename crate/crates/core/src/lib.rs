//! Friends-and-strangers graphs over edge-subgraphs of `K_{r,r}`.
//!
//! * [`bigraph`]: bipartite host graphs, bridges, the two-component
//!   criterion, structure census and random sampling.
//! * [`fs`]: the state space `FS(X, Y)`; exact component counts,
//!   exchangeability and isolated states.
//! * [`cert`]: replayable swap-sequence certificates and their corpus.
//! * [`scan`]: exhaustive and sampled scans over degree conditions.
//! * [`random_lab`]: Monte Carlo sweeps over `G(K_{r,r}, p)`.

pub mod bigraph;
pub mod cert;
pub mod error;
pub mod fs;
pub mod par;
pub mod perm;
pub mod random_lab;
pub mod scan;
pub mod seed;
pub mod unionfind;

pub use bigraph::{BiGraph, Side};
pub use error::{Error, Result};
pub use fs::{Bijection, SwapSeq};
