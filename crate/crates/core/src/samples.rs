//! Deterministic sample generation: seeded pseudorandom unit tangent vectors
//! plus a fixed family of rational unit-sphere points for exact-path checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Uniform f64 in [0, 1) from the raw stream.
pub fn uniform_f64(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box-Muller.
pub fn normal_f64(rng: &mut ChaCha20Rng) -> f64 {
    loop {
        let u1 = uniform_f64(rng);
        if u1 <= f64::MIN_POSITIVE {
            continue;
        }
        let u2 = uniform_f64(rng);
        return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
    }
}

/// One uniformly distributed unit vector on S⁵.
pub fn unit_vector6(rng: &mut ChaCha20Rng) -> [f64; 6] {
    loop {
        let mut v = [0.0; 6];
        for c in v.iter_mut() {
            *c = normal_f64(rng);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            for c in v.iter_mut() {
                *c /= n;
            }
            return v;
        }
    }
}

/// `n` seeded unit vectors; identical for identical seeds.
pub fn seeded_unit_vectors(seed: u64, n: usize) -> Vec<[f64; 6]> {
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| unit_vector6(&mut rng)).collect()
}

fn br(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// 64 fixed unit vectors with rational coordinates, built from Pythagorean
/// patterns placed at varying slots and signs. Exactly unit: Σ xᵢ² = 1.
pub fn rational_unit_points() -> Vec<[BigRational; 6]> {
    let mut out: Vec<[BigRational; 6]> = Vec::new();
    let zero = || br(0, 1);

    // (3/5, 4/5) pairs in rotating slots and signs
    let pair_slots = [
        (0usize, 1usize),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (5, 0),
        (0, 3),
        (1, 4),
        (2, 5),
        (0, 2),
        (1, 3),
        (2, 4),
        (3, 5),
        (0, 4),
        (1, 5),
        (0, 5),
    ];
    for (idx, &(a, b)) in pair_slots.iter().enumerate() {
        let mut v = [zero(), zero(), zero(), zero(), zero(), zero()];
        let s1 = if idx % 2 == 0 { 1 } else { -1 };
        let s2 = if (idx / 2) % 2 == 0 { 1 } else { -1 };
        v[a] = br(3 * s1, 5);
        v[b] = br(4 * s2, 5);
        out.push(v);
    }

    // (1/3, 2/3, 2/3) triples
    let triple_slots = [
        (0usize, 1usize, 2usize),
        (3, 4, 5),
        (0, 2, 4),
        (1, 3, 5),
        (0, 1, 5),
        (2, 3, 4),
        (1, 2, 4),
        (0, 3, 5),
        (0, 4, 5),
        (1, 2, 3),
        (2, 4, 5),
        (0, 1, 3),
    ];
    for (idx, &(a, b, c)) in triple_slots.iter().enumerate() {
        let mut v = [zero(), zero(), zero(), zero(), zero(), zero()];
        let s = if idx % 2 == 0 { 1 } else { -1 };
        v[a] = br(1, 3);
        v[b] = br(2 * s, 3);
        v[c] = br(2, 3);
        out.push(v);
    }

    // (1/2, 1/2, 1/2, 1/2) quadruples
    let quad_slots = [
        (0usize, 1usize, 2usize, 3usize),
        (2, 3, 4, 5),
        (0, 1, 4, 5),
        (0, 2, 3, 5),
        (1, 2, 4, 5),
        (0, 1, 2, 4),
        (1, 3, 4, 5),
        (0, 2, 3, 4),
    ];
    for (idx, &(a, b, c, d)) in quad_slots.iter().enumerate() {
        let mut v = [zero(), zero(), zero(), zero(), zero(), zero()];
        let s = if idx % 2 == 0 { 1 } else { -1 };
        v[a] = br(1, 2);
        v[b] = br(s, 2);
        v[c] = br(1, 2);
        v[d] = br(-1, 2);
        out.push(v);
    }

    // (2/7, 3/7, 6/7) triples
    let t2 = [
        (0usize, 1usize, 2usize),
        (3, 4, 5),
        (0, 3, 4),
        (1, 4, 5),
        (2, 3, 5),
        (0, 2, 5),
        (1, 2, 3),
        (0, 1, 4),
    ];
    for (idx, &(a, b, c)) in t2.iter().enumerate() {
        let mut v = [zero(), zero(), zero(), zero(), zero(), zero()];
        let s = if idx % 2 == 0 { 1 } else { -1 };
        v[a] = br(2, 7);
        v[b] = br(3 * s, 7);
        v[c] = br(6, 7);
        out.push(v);
    }

    // (1/9, 4/9, 4/9, 4/9, 4/9, 4/9): 1+16·5 = 81
    for k in 0..6usize {
        let mut v: [BigRational; 6] = std::array::from_fn(|_| br(4, 9));
        v[k] = br(1, 9);
        if k % 2 == 1 {
            v[(k + 1) % 6] = br(-4, 9);
        }
        out.push(v);
    }

    // (5/13, 12/13) pairs on mixed slots
    for (idx, &(a, b)) in [(0usize, 4usize), (1, 5), (2, 0), (3, 1), (4, 2), (5, 3)]
        .iter()
        .enumerate()
    {
        let mut v = [zero(), zero(), zero(), zero(), zero(), zero()];
        let s = if idx % 2 == 0 { 1 } else { -1 };
        v[a] = br(5 * s, 13);
        v[b] = br(12, 13);
        out.push(v);
    }

    // 16+12+8+8+6+6 = 56; pad with (4/5,-3/5) variants to reach 64
    for (idx, &(a, b)) in [
        (0usize, 1usize),
        (2, 3),
        (4, 5),
        (1, 2),
        (3, 4),
        (0, 5),
        (1, 4),
        (2, 5),
    ]
    .iter()
    .enumerate()
    {
        let mut v = [zero(), zero(), zero(), zero(), zero(), zero()];
        let s = if idx % 2 == 0 { 1 } else { -1 };
        v[a] = br(4, 5);
        v[b] = br(-3 * s, 5);
        out.push(v);
    }

    assert_eq!(out.len(), 64);
    out
}

pub fn rational_to_f64(v: &[BigRational; 6]) -> [f64; 6] {
    use num_traits::ToPrimitive;
    std::array::from_fn(|i| v[i].to_f64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn rational_points_are_exactly_unit() {
        for v in rational_unit_points() {
            let mut s = BigRational::zero();
            for c in &v {
                s += c * c;
            }
            assert!(s.is_one(), "not unit: {:?}", v);
        }
    }

    #[test]
    fn seeded_vectors_are_reproducible_and_unit() {
        let a = seeded_unit_vectors(42, 8);
        let b = seeded_unit_vectors(42, 8);
        assert_eq!(a, b);
        let c = seeded_unit_vectors(43, 8);
        assert_ne!(a, c);
        for v in a {
            let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
