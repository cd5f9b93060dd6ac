//! Well-levelled orders, Cantor tree powers, Borel codes and the automata
//! machinery that decides them.

pub mod ordinal;
pub mod wlo;
pub mod treepower;
pub mod topology;
pub mod automata;
pub mod borelcode;
pub mod mso;
pub mod games;

/// Default exact scalar for metric values.
pub type Rational = num_rational::BigRational;
/// Fixed-width exact scalar, enough for distances below `2^-126`.
pub type SmallRational = num_rational::Ratio<i128>;
