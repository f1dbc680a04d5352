/// Tolerances and size limits shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Allowed deviation from Hermiticity and positivity.
    pub hermitian_tol: f64,
    /// Allowed deviation of a norm or trace from one.
    pub norm_tol: f64,
    /// Largest matrix side that may be materialized densely.
    pub dense_side_cap: usize,
}

impl NumericPolicy {
    pub const DEFAULT: NumericPolicy = NumericPolicy {
        hermitian_tol: 1e-9,
        norm_tol: 1e-12,
        dense_side_cap: 1 << 13,
    };
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self::DEFAULT
    }
}
