use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::class::ClassLabel;
use super::mat::{conj_op, Mat2};

/// Conjugators with `|det|` below this are redrawn.
pub const MIN_CONJUGATOR_DET: f64 = 0.1;

/// Generator for the `index`-th sample of a run.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index))
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))
}

/// Entries uniform in the unit square `[0, 1) + i[0, 1)`.
pub fn random_conjugator(rng: &mut impl Rng) -> Mat2 {
    loop {
        let p = Mat2::new(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng));
        if p.det().norm() >= MIN_CONJUGATOR_DET {
            return p;
        }
    }
}

/// `P⁻¹·base·P` for a random conjugator `P`.
pub fn random_member(cls: &ClassLabel, rng: &mut impl Rng) -> Mat2 {
    let p = random_conjugator(rng);
    conj_op(&cls.base_point(), &p, 1).expect("conjugator determinant is bounded away from zero")
}
