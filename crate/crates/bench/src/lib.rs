//! Shared inputs for the benchmarks.

/// The `(n, r)` cases benchmarked end to end.
pub const DESK_CASES: [(usize, usize); 4] = [(5, 3), (6, 3), (6, 4), (7, 4)];
