//! Random rational test points for the property suites and the CLI
//! `verify` command. All sampling is over exact rationals; callers pass
//! a seeded RNG when they need reproducibility.

use crate::maps::PointB;
use crate::rational::Rational;
use num_bigint::BigInt;
use rand::Rng;

/// Uniform-ish rational in [0, 1] with denominator at most `max_den`.
pub fn rational_in_unit<R: Rng>(rng: &mut R, max_den: u64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..=den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational point of B^n: n draws in [0, 1], sorted decreasingly.
pub fn rational_point<R: Rng>(n: usize, rng: &mut R, max_den: u64) -> PointB {
    let mut coords: Vec<Rational> = (0..n).map(|_| rational_in_unit(rng, max_den)).collect();
    coords.sort_by(|a, b| b.cmp(a));
    PointB::from_rationals(coords).expect("sorted coordinates form a valid point")
}

/// Random rational point of the absorbing set D ⊂ B²:
/// x₁ ∈ [1/2, 1], x₂ ∈ [1 − x₁, x₁].
pub fn absorbing_point<R: Rng>(rng: &mut R, max_den: u64) -> PointB {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let x1 = {
        let t = rational_in_unit(rng, max_den);
        &half + t * &half // 1/2 + t/2 ∈ [1/2, 1]
    };
    let lo = Rational::from_integer(BigInt::from(1)) - &x1;
    let span = &x1 - &lo;
    let x2 = &lo + rational_in_unit(rng, max_den) * span;
    PointB::from_rationals(vec![x1, x2]).expect("valid absorbing point")
}

/// Random integer cone vector b₀ ≥ b₁ ≥ … ≥ bₙ ≥ 0 with b₀ ≥ 1,
/// entries at most `max_val`, as rationals.
pub fn cone_vector<R: Rng>(n: usize, rng: &mut R, max_val: u64) -> Vec<Rational> {
    loop {
        let mut v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..=max_val)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        if v[0] == 0 {
            continue;
        }
        return v
            .into_iter()
            .map(|x| Rational::from_integer(BigInt::from(x)))
            .collect();
    }
}

/// Random MSA digit string with digits in 1..=`max_digit`.
pub fn digit_string<R: Rng>(len: usize, rng: &mut R, max_digit: u64) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(1..=max_digit))).collect()
}
