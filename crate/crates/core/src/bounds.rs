//! Closed-form degree and neighbourhood bounds attached to the constructions
//! and gadgets, generic over [`Scalar`] so each can be checked exactly.

use crate::scalar::Scalar;

/// Minimum total degree of the extremal digraph on `n = (k+3)q + r`
/// vertices: `2⌈(1 − 1/(k+3))n⌉` minus 4 when `r = k+2`, minus 3 when
/// `r ∈ {k, k+1}`, minus 2 otherwise.
pub fn extremal_total_min_degree(k: usize, n: usize) -> usize {
    let r = n % (k + 3);
    // ⌈(k+2)n/(k+3)⌉ in integers.
    let base = 2 * ((k + 2) * n).div_ceil(k + 3);
    let penalty = if r == k + 2 {
        4
    } else if r == k || r == k + 1 {
        3
    } else {
        2
    };
    base - penalty
}

/// `(1 − 1/(3m+2))·n/2 − 2`, the semi-degree guarantee of `G_k` built on an
/// `m`-vertex base tournament.
pub fn gk_semi_degree_bound<T: Scalar>(m: usize, n: usize) -> T {
    let two = T::from_usize_exact(2);
    let denom = T::from_usize_exact(3 * m + 2);
    (T::one() - T::one() / denom) * T::from_usize_exact(n) / two - two
}

/// Lower bound `|A|(|A|/2 + |B| − (1−δ)n)` on `e(A, B)` for disjoint `A`, `B`
/// in an oriented graph with `δ⁰ ≥ δn ≥ 2n/5`.
pub fn crossing_edge_bound<T: Scalar>(a: usize, b: usize, n: usize, delta: T) -> T {
    let a_s = T::from_usize_exact(a);
    let two = T::from_usize_exact(2);
    a_s * (a_s / two + T::from_usize_exact(b) - (T::one() - delta) * T::from_usize_exact(n))
}

/// `((2k−1)δ − k + 1) / (k·2^(2k−1)) · n`, the common-neighbourhood size a
/// `k`-vertex tournament needs to count as δ-out-good (or δ-in-good).
pub fn goodness_bound<T: Scalar>(k: usize, delta: T, n: usize) -> T {
    assert!((1..=31).contains(&k), "goodness bound needs 1 <= k <= 31");
    let kk = T::from_usize_exact(k);
    let num = T::from_usize_exact(2 * k - 1) * delta - kk + T::one();
    let den = kk * T::from_usize_exact(1usize << (2 * k - 1));
    num / den * T::from_usize_exact(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn extremal_formula_cases() {
        // k = 2, n = 10: q = 2, r = 0 → 2·8 − 2.
        assert_eq!(extremal_total_min_degree(2, 10), 14);
        // k = 2, n = 14: r = 4 = k + 2 → 2·⌈56/5⌉ − 4 = 20.
        assert_eq!(extremal_total_min_degree(2, 14), 20);
        // r = k and r = k + 1.
        assert_eq!(extremal_total_min_degree(2, 12), 2 * 10 - 3);
        assert_eq!(extremal_total_min_degree(2, 13), 2 * 11 - 3);
    }

    #[test]
    fn gk_bound_at_22_is_8() {
        assert_eq!(gk_semi_degree_bound::<Rational>(3, 22), Rational::from_integer(8));
        assert_eq!(gk_semi_degree_bound::<Rational>(3, 11), Rational::from_integer(3));
        assert!((gk_semi_degree_bound::<f64>(3, 22) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn goodness_bound_substitution() {
        assert_eq!(
            goodness_bound(2, Rational::new(1, 2), 32),
            Rational::from_integer(1)
        );
        assert_eq!(goodness_bound(2, Rational::new(1, 3), 32), Rational::from_integer(0));
    }

    #[test]
    fn crossing_bound_paley_partition() {
        let delta = Rational::new(3, 7);
        assert_eq!(crossing_edge_bound(3, 4, 7, delta), Rational::new(9, 2));
        assert_eq!(crossing_edge_bound(4, 3, 7, delta), Rational::from_integer(4));
    }
}
