//! Fixtures shared by the benchmarks.

use transvect::instance::{block_cycle, embed_block};
use transvect::{Matrix, SymplecticSpace};

/// Generators of `(Sp(2, p) × Sp(2, p)) ⋊ swap` on `F_p^4`.
pub fn two_block_generators(p: u32) -> Vec<Matrix> {
    let sp2 = SymplecticSpace::standard(p as u64, 2).expect("odd prime");
    let mut gens = Vec::new();
    for b in 0..2 {
        gens.extend(sp2.sp_generators().iter().map(|t| embed_block(t, 2, b)));
    }
    gens.push(block_cycle(2, 2, p));
    gens
}
