//! Deterministic inputs shared by the benchmarks in `benches/`.

use poinf::oracle::{random_element, random_plus, RandomParams};
use poinf::Element;

/// `n` seeded elements of either orientation.
pub fn elements(n: usize, params: RandomParams) -> Vec<Element> {
    (0..).filter_map(|seed| random_element(seed, params).ok()).take(n).collect()
}

/// `n` seeded orientation-preserving elements.
pub fn plus_elements(n: usize, params: RandomParams) -> Vec<Element> {
    (0..).filter_map(|seed| random_plus(seed, params).ok()).take(n).collect()
}

/// Right-equation instances `(a, a * x)` with a known solution `x`.
pub fn equations(n: usize, params: RandomParams) -> Vec<(Element, Element)> {
    let es = elements(2 * n, params);
    es.chunks(2).map(|p| (p[0].clone(), p[0].compose(&p[1]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        let p = RandomParams::default();
        assert_eq!(elements(5, p), elements(5, p));
        assert!(plus_elements(5, p).iter().all(Element::is_orientation_preserving));
        for (a, b) in equations(3, p) {
            assert!(!poinf::equations::solve_right(&a, &b, None).unwrap().is_empty());
        }
    }
}
