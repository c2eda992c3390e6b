use exact_linalg::{Rat, Space, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The deterministic generator used everywhere a seed appears.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational with |numerator| ≤ 10⁴ and 1 ≤ denominator ≤ 10⁴.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    let num: i64 = rng.gen_range(-10_000..=10_000);
    let den: i64 = rng.gen_range(1..=10_000);
    Rat::new(num.into(), den.into())
}

pub fn random_coords(rng: &mut impl Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| random_rat(rng)).collect()
}

/// A random basis of `Q^dim` with small integer entries, by rejection.
pub fn random_basis(rng: &mut impl Rng, dim: usize) -> Vec<Vector> {
    loop {
        let t: Vec<Vector> = (0..dim)
            .map(|_| {
                Vector::from_i64(&(0..dim).map(|_| rng.gen_range(-9..=9)).collect::<Vec<i64>>())
            })
            .collect();
        if Space::span(dim, &t).map(|s| s.rank() == dim).unwrap_or(false) {
            return t;
        }
    }
}
