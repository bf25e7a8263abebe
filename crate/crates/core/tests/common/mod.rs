#![allow(dead_code)]

use mvsheaf_core::rational::ratio;
use mvsheaf_core::{Rational, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random term over `x1..xn` of at most the given depth.
pub fn random_term(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..8) {
            0 => Term::Zero,
            1 => Term::one(),
            _ => Term::var(rng.gen_range(0..n)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => Term::oplus(random_term(rng, n, d), random_term(rng, n, d)),
        1 => Term::neg(random_term(rng, n, d)),
        2 => Term::odot(random_term(rng, n, d), random_term(rng, n, d)),
        3 => Term::join(random_term(rng, n, d), random_term(rng, n, d)),
        4 => Term::meet(random_term(rng, n, d), random_term(rng, n, d)),
        5 => {
            let k = rng.gen_range(2..4);
            Term::scalar(k, random_term(rng, n, d))
        }
        _ => Term::ominus(random_term(rng, n, d), random_term(rng, n, d)),
    }
}

/// A random point of `[0,1]^n` with denominators up to `max_den`.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize, max_den: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=max_den);
            ratio(rng.gen_range(0..=d), d)
        })
        .collect()
}
