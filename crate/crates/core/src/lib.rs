//! Exact and randomized enumeration of reduced words and Hecke words of
//! permutations.
//!
//! * [`perm`]: permutations, Lehmer codes, patterns, the Demazure product.
//! * [`diagram`]: Rothe diagrams and the data transition branches on.
//! * [`transition`]: the transition tree, `EG(w)` and exact `#Red(w)`.
//! * [`tableaux`]: hook-length, skew determinant and set-valued counts.
//! * [`hecke`]: exact `#Hecke(w, N)`, skew-shape permutations, Brill-Noether
//!   Euler characteristics.
//! * [`sampling`]: the `Y`, `Z` and `H` importance-sampling estimators.
//! * [`oracle`]: slow brute-force enumerators for cross-checking.
//! * [`export`]: DOT and JSON renderings of transition trees.

pub mod diagram;
pub mod error;
pub mod export;
pub mod hecke;
pub mod oracle;
pub mod perm;
pub mod sampling;
pub mod tableaux;
pub mod transition;

pub use diagram::{rothe_diagram, Cell, Diagram, DiagramAnalysis};
pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
pub use hecke::{
    brill_noether_shape, count_hecke_exact, euler_characteristic, skew_to_permutation,
    BrillNoetherParams, EulerCharacteristic,
};
pub use perm::{LehmerCode, Permutation};
pub use sampling::{estimate, Algorithm, Estimate, SamplerConfig};
pub use tableaux::{
    hook_count, lenart_count, set_valued_count, skew_det_count, skew_set_valued_count, Partition,
    SkewShape,
};
pub use transition::{
    build_tree, count_red_exact, eg_statistic, min_branch_depth, vex_shape, TransitionNode,
    VexShape,
};

/// Number of involutions in `S_n`.
pub fn involutions(n: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let (mut prev, mut cur) = (BigUint::from(1u32), BigUint::from(1u32));
    for k in 2..=n {
        let next = &cur + &prev * BigUint::from(k - 1);
        prev = cur;
        cur = next;
    }
    cur
}
