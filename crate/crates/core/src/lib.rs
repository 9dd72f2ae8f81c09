//! Exact computations on simplicial complexes, matroids and their
//! intersections: chromatic numbers, homological connectivity, domination
//! bounds, matroid polytopes and matching/cover numbers.

pub mod coloring;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod instance;
pub mod lp;
pub mod matroid;
pub mod meshulam;
pub mod polytopes;
pub mod random;
pub mod rational;
pub mod subset;
pub mod topology;
pub mod verify;

pub use complex::Complex;
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use lp::{LPProblem, LPResult, LPStatus, Relation, Sense};
pub use matroid::{Matroid, MatroidSystem};
pub use rational::{ExtRational, RatVec, Rational};
pub use subset::SubsetMask;
pub use topology::ExtEta;
