//! Inputs shared by the kernel benchmarks.

use mellin_core::C64;

/// Points in and around the critical strip.
pub fn strip_points() -> Vec<C64> {
    let mut out = Vec::new();
    for re in [-0.5, 0.25, 0.5, 0.75, 1.5] {
        for im in [0.5, 7.0, 14.0, 25.0] {
            out.push(C64::new(re, im));
        }
    }
    out
}
