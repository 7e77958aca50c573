//! Exact symbolic computation for the jet-valued oscillator (Weil)
//! representation of the Heisenberg group and the algebraic Kashiwara
//! equivalence for Heisenberg modules with invertible center.
//!
//! Every computation is exact: coefficients live in ℚ(ζ₈) extended by square
//! roots of positive rationals and a formal transcendental τ standing for π.
//! Identities are checked by syntactic equality of canonical forms.

#[doc(hidden)]
#[macro_export]
macro_rules! forward_binops {
    ($t:ty; $($tr:ident $m:ident),*) => { $(
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { std::ops::$tr::$m(&self, &rhs) }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { std::ops::$tr::$m(&self, rhs) }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { std::ops::$tr::$m(self, &rhs) }
        }
    )* };
}

pub mod gauss;
pub mod jets;
pub mod kashiwara;
pub mod linalg;
pub mod metaplectic;
pub mod oscillator;
pub mod report;
pub mod scalars;
pub mod serial;
pub mod suites;
pub mod weyl;
