use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::HalfInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartKind {
    /// Variables `t, y_1, …, y_L`.
    Free,
    /// Variables `s, u_1, …, u_L`; `s` enters only through `e^{μs}`.
    Osc,
}

/// Coordinate chart for differential operators at a given `ℓ`.
///
/// Slot 0 is the time-like variable (`t` or `s`), slots `1..=L` are the
/// space variables, `L = ℓ + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chart {
    kind: ChartKind,
    ell: HalfInt,
}

impl Chart {
    pub fn new(kind: ChartKind, ell: HalfInt) -> Result<Self> {
        check_ell(ell)?;
        Ok(Chart { kind, ell })
    }

    pub fn free(ell: HalfInt) -> Result<Self> {
        Self::new(ChartKind::Free, ell)
    }

    pub fn osc(ell: HalfInt) -> Result<Self> {
        Self::new(ChartKind::Osc, ell)
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn ell(&self) -> HalfInt {
        self.ell
    }

    pub fn is_osc(&self) -> bool {
        self.kind == ChartKind::Osc
    }

    /// Number of space variables `L = ℓ + 1/2`.
    pub fn space_dim(&self) -> usize {
        ((self.ell.twice() + 1) / 2) as usize
    }

    /// Number of variable slots, time included.
    pub fn slots(&self) -> usize {
        self.space_dim() + 1
    }

    /// Scaling dimension of the slot variable: `[t] = -1`, `[y_a] = -(a - 1/2)`.
    pub fn scaling_dimension(&self, slot: usize) -> HalfInt {
        if slot == 0 {
            -HalfInt::ONE
        } else {
            -(HalfInt::from_int(slot as i64) - HalfInt::HALF)
        }
    }

    /// Display name of a slot variable. At `ℓ = 3/2` the two space
    /// variables are named `x, y` (free) and `u, v` (osc).
    pub fn var_name(&self, slot: usize) -> String {
        let three_halves = self.ell == HalfInt::from_twice(3);
        match (self.kind, slot) {
            (ChartKind::Free, 0) => "t".into(),
            (ChartKind::Osc, 0) => "s".into(),
            (ChartKind::Free, 1) if three_halves => "x".into(),
            (ChartKind::Free, 2) if three_halves => "y".into(),
            (ChartKind::Osc, 1) if three_halves => "u".into(),
            (ChartKind::Osc, 2) if three_halves => "v".into(),
            (ChartKind::Free, a) => format!("y{a}"),
            (ChartKind::Osc, a) => format!("u{a}"),
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ChartKind::Free => "free",
            ChartKind::Osc => "osc",
        };
        write!(f, "{kind}(ell={})", self.ell)
    }
}

/// Accepts only `ℓ ∈ {1/2, 3/2, 5/2, …}`.
pub fn check_ell(ell: HalfInt) -> Result<()> {
    if ell.is_positive_half_odd() {
        Ok(())
    } else {
        Err(Error::BadEll(ell.to_string()))
    }
}
