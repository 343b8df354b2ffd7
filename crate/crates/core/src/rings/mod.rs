//! Exact coefficient rings.
//!
//! [`LaurentPoly`] is `Z[z, z^-1]`, [`RationalFunction`] is the subring
//! `S^-1 Z[z, z^-1]` of `Z((z))`, and [`TruncatedSeries`] is a finite window
//! of an element of `Z((z))` or `Z((z^-1))`.
//!
//! Everything on the `z^-1` side is computed by reversing the variable and
//! calling the `z` side code.

mod laurent;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use rational::RationalFunction;
pub use series::{expand, invert_as_series, TruncatedSeries};

use std::fmt;

/// Which completion of `Z[z, z^-1]` we are working in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `Z((z))`: finitely many negative powers of `z`.
    Plus,
    /// `Z((z^-1))`: finitely many positive powers of `z`.
    Minus,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Plus => "plus",
            Direction::Minus => "minus",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "PLUS" | "+" => Ok(Direction::Plus),
            "minus" | "MINUS" | "-" => Ok(Direction::Minus),
            other => Err(format!("unknown direction `{other}` (expected plus or minus)")),
        }
    }
}
