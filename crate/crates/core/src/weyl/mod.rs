//! Normal-ordered Weyl algebra in the free and oscillator charts.

pub mod chart;
pub mod conjugate;
pub mod func;
pub mod operator;
pub mod render;
pub mod substitute;

pub use chart::{check_ell, Chart, ChartKind};
pub use conjugate::{conjugate, Weight};
pub use func::{apply, FuncMonomial, GaussFunc};
pub use operator::{Grading, Monomial, Operator};
pub use substitute::Substitution;
