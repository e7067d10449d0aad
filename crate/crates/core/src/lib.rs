//! Generalized earth mover's distance (`EMD_d`) on d-tuples of histograms.
//!
//! A d-tuple of histograms over `n` bins is compared by the cheapest
//! d-dimensional transport plan, where each cell of the plan is priced by its
//! taxicab distance to the main diagonal of `[n]^d`. The crate provides
//!
//! * the cost function in its equivalent forms and Monge-property checkers
//!   ([`cost`], [`monge`]),
//! * exact discrete and continuous EMD via word matrices, a d-dimensional
//!   northwest-corner solver, and an exhaustive oracle ([`transport`]),
//! * an exact generating-function engine for expected values ([`genfunc`]),
//! * enumeration histograms and the grade-report pipeline ([`analysis`]).
//!
//! ```
//! use gemd::{Composition, DistTuple};
//!
//! let t = DistTuple::new(vec![
//!     Composition::new(vec![4, 0, 1]).unwrap(),
//!     Composition::new(vec![1, 2, 2]).unwrap(),
//!     Composition::new(vec![0, 5, 0]).unwrap(),
//! ])
//! .unwrap();
//! assert_eq!(gemd::transport::discrete_emd(&t), 6);
//! ```

pub mod analysis;
pub mod cost;
pub mod error;
pub mod genfunc;
pub mod monge;
pub mod rational;
pub mod transport;
pub mod types;

pub use error::{Error, Result};
pub use rational::Rational;
pub use transport::{DistTuple, JointArray, WordMatrix};
pub use types::{BinShape, Composition, MultiIndex};
