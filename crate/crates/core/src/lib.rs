//! Exact computations with fourth-order differential operators of
//! Calabi-Yau type.
//!
//! Operators are stored in θ-form `D = Σ z^i P_i(θ)` with `θ = z d/dz`.
//! Everything is exact rational arithmetic.

pub mod constructions;
pub mod criteria;
pub mod db;
pub mod exact;
pub mod frobenius;
pub mod operator;
pub mod par;
pub mod search;
