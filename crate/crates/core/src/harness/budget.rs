//! Closed-form randomness per verifier invocation. Uniform elements cost
//! `⌈log₂ q⌉` bits and the nonzero `t` costs `⌈log₂(q−1)⌉`.

use crate::gf::Field;

/// `a, b ∈ F_q^m`, `t ∈ F_q^×` (the same count serves local correction).
pub fn ldt_bits(field: Field, m: usize) -> u64 {
    2 * m as u64 * field.element_bits() as u64 + field.nonzero_bits() as u64
}

/// `a, b ∈ F_q^{m+k}`, `α ∈ F_q^m`, `t ∈ F_q^×`.
pub fn zerotest_bits(field: Field, m: usize, k: usize) -> u64 {
    (2 * (m + k) + m) as u64 * field.element_bits() as u64 + field.nonzero_bits() as u64
}

/// `a, b ∈ F_q^m`, `α, β ∈ F_q^{2m}`, `γ₁, γ₂ ∈ F_q^{m+k}`,
/// `μ₁, μ₂ ∈ F_q^{2m+k′}`, `t`, for each of `reps` repetitions.
pub fn pcp_bits(field: Field, m: usize, k: usize, k2: usize, reps: usize) -> u64 {
    let elements = (2 * m + 4 * m + 2 * (m + k) + 2 * (2 * m + k2)) as u64;
    reps as u64 * (elements * field.element_bits() as u64 + field.nonzero_bits() as u64)
}
