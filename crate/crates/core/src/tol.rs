//! Numerical tolerances shared by every checker.

/// Additive slack on the triangle inequality and on sublevel membership.
pub const MEMBERSHIP: f64 = 1e-12;

/// Relative tolerance for value equalities such as `f(y) = f(z)`.
pub const EQUALITY_REL: f64 = 1e-9;

/// Default tolerance for limit membership of sequences.
pub const LIMIT: f64 = 1e-9;

/// `a = b` up to `EQUALITY_REL` relative error plus `MEMBERSHIP` absolute slack.
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQUALITY_REL * a.abs().max(b.abs()) + MEMBERSHIP
}

/// `a ≤ b` up to the membership slack.
pub fn le(a: f64, b: f64) -> bool {
    a <= b + MEMBERSHIP
}

/// Distances at or below the membership slack count as zero.
pub fn is_zero(d: f64) -> bool {
    d <= MEMBERSHIP
}
