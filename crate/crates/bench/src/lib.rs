//! Inputs shared by the benchmarks in `benches/`.

use invstab_core::dynamics::iterate_phi;
use invstab_core::{FieldElem, FiniteField, Poly, PolyRing};

/// `(p, d, c)` with `z^d + c` inversely stable over `F_p`, in increasing field size.
pub const STABLE_CASES: [(u64, u64, u64); 3] = [(17, 8, 5), (257, 128, 5), (65537, 32768, 5)];

/// `g_n` for `z^d + c` over `F_p`, a dense polynomial of degree `d^n`.
pub fn denominator(p: u64, d: u64, c: u64, n: usize) -> (PolyRing<FiniteField>, Poly<FieldElem>) {
    let f = FiniteField::prime(p).expect("prime");
    let g = iterate_phi(&f, d, &f.from_u64(c), n).expect("valid binomial").g;
    (PolyRing::new(f), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use invstab_core::stability::decide_fq;
    use invstab_core::Verdict;

    #[test]
    fn stable_cases_are_stable() {
        for (p, d, c) in STABLE_CASES {
            assert!(matches!(decide_fq(p, 1, d, &[c], 1000), Verdict::InverselyStable { .. }), "({p}, {d}, {c})");
        }
    }

    #[test]
    fn denominator_degree() {
        let (_, g) = denominator(13, 3, 2, 2);
        assert_eq!(g.degree(), Some(9));
    }
}
