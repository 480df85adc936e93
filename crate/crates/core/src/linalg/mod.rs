//! Exact linear algebra over `Q` and `Z`.

mod rational;
mod smith;
mod subspace;

pub use rational::{ParseRationalError, Rational};
pub use smith::{smith_form, smith_invariants, SmithForm};
pub use subspace::{dot, kernel, rank, solve, to_rational, Subspace};

use num_integer::Integer;

/// A point of `N` or `M`; its length is the ambient lattice rank.
pub type IntVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

/// The pairing `⟨m, v⟩ = Σ m_i v_i`.
pub fn pairing(m: &[i64], v: &[i64]) -> i64 {
    debug_assert_eq!(m.len(), v.len());
    m.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the content of a nonzero integer vector.
pub fn primitive(v: &[i64]) -> IntVector {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// Clears denominators of a rational vector and returns the primitive
/// integer vector pointing the same way (zero stays zero).
pub fn primitive_from_rational(v: &[Rational]) -> IntVector {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};
    let lcm = v
        .iter()
        .fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return vec![0; v.len()];
    }
    scaled
        .iter()
        .map(|x| (x / &g).to_i64().expect("primitive vector overflows i64"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[2, 0]), vec![1, 0]);
        assert_eq!(primitive(&[-4, 6]), vec![-2, 3]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
        let v = vec![Rational::new(1, 2), Rational::new(-1, 3)];
        assert_eq!(primitive_from_rational(&v), vec![3, -2]);
    }
}
