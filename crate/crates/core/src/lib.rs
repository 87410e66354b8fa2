//! Exact-arithmetic toolkit for the combinatorics of symplectic double cosets:
//! type-C root systems and their Weyl groups, standard Levi data, involution
//! orbits with their exponent vectors, the orbit graph, unramified local
//! period factors and decision procedures for distinguished spectral data.
//!
//! Everything combinatorial is carried out over exact rationals; floating
//! point appears only in the archimedean local factors.

// index loops read better than iterator chains in the matrix code
#![allow(clippy::needless_range_loop)]

pub mod exponents;
pub mod graph;
pub mod levi;
mod linalg;
pub mod orbits;
pub mod periods;
pub mod rootsys;
pub mod selftest;
pub mod spectrum;
pub mod sympmat;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an exact integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| mk_err())?;
        let q: BigInt = q.trim().parse().map_err(|_| mk_err())?;
        if q == BigInt::from(0) {
            return Err(mk_err());
        }
        Ok(Rat::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(Rat::from_integer(p))
    }
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vector or matrix dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// An exhaustive enumeration was requested above the supported rank.
    SizeGuard { rank: usize, limit: usize },
    /// The argument is not an involution.
    NotInvolution,
    /// The element does not normalize the requested Levi subgroup.
    NotNormalizing,
    /// The matrix is not a symplectic involution in X.
    NotInX,
    /// Levi containment M ⊆ L fails.
    NotSubLevi,
    /// A constructed block had invalid parameters (e.g. odd t for z_gamma).
    BadBlockParams(String),
    /// Evaluation at a pole of a local factor.
    Pole(String),
    /// Orbit is not cuspidal where cuspidality is required.
    NotCuspidal,
    /// Labels do not match the block structure.
    LabelMismatch(String),
    /// Missing cuspidal support data.
    MissingSupport,
    /// Input parsing failure.
    Parse(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::SizeGuard { rank, limit } => {
                write!(f, "rank {rank} exceeds enumeration guard {limit}")
            }
            Error::NotInvolution => write!(f, "element is not an involution"),
            Error::NotNormalizing => write!(f, "element does not normalize the Levi"),
            Error::NotInX => write!(f, "matrix is not a symplectic involution in X"),
            Error::NotSubLevi => write!(f, "Levi containment fails"),
            Error::BadBlockParams(s) => write!(f, "bad block parameters: {s}"),
            Error::Pole(s) => write!(f, "pole: {s}"),
            Error::NotCuspidal => write!(f, "orbit is not cuspidal"),
            Error::LabelMismatch(s) => write!(f, "label mismatch: {s}"),
            Error::MissingSupport => write!(f, "missing cuspidal support data"),
            Error::Parse(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
