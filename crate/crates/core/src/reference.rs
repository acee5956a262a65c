//! Independent reference implementations used to cross-check the production
//! paths. Nothing in this module is called by the implementations it checks:
//! the e² digits come from a Taylor series instead of the hardcoded bracket,
//! and the expansion-property checks enumerate with the quantifier structure
//! of the property itself rather than the equal-size reduction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::certified::Bracket;
use crate::expander::BipartiteKOut;

/// `e²` bracketed from the Taylor series of `e`: the partial sum of
/// `Σ 1/i!` up to `terms` underestimates `e` by less than `2/(terms+1)!`.
/// Forty terms give far more than thirty correct digits.
pub fn e_squared_taylor(terms: u32) -> Bracket {
    assert!(terms >= 1);
    let mut factorial = BigInt::one();
    let mut sum = BigRational::zero();
    for i in 0..=terms {
        if i > 0 {
            factorial *= BigInt::from(i);
        }
        sum += BigRational::new(BigInt::one(), factorial.clone());
    }
    let remainder = BigRational::new(BigInt::from(2), factorial * BigInt::from(terms + 1));
    let hi = &sum + &remainder;
    Bracket::new(&sum * &sum, &hi * &hi)
}

/// Quantifier-faithful brute force over all `(X, Y)` pairs for sides up to
/// 24 bits: every non-empty `X ⊆ S` with `|X| <= x_cap`, every `Y ⊆ T`.
/// Only `|Y| <= |X|` can violate `|Y| > |X|`, and `|N(x) ∩ Y| >= 3` needs
/// `|Y| >= 3`, so the Y sweep is restricted to sizes `3..=|X|` — a pure
/// logical restriction, not an algorithmic reduction.
///
/// Returns true iff the property holds.
pub fn property_ii_brute_force(g: &BipartiteKOut, x_cap: u32) -> bool {
    let n = g.n();
    assert!(n <= 24, "brute force is for small sides only");
    if x_cap < 3 {
        return true;
    }
    let masks: Vec<u32> = (0..n)
        .map(|s| g.neighbors(s).iter().fold(0u32, |m, &t| m | 1 << t))
        .collect();
    // Group T-subsets by size once.
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n as usize + 1];
    for y in 0u32..(1 << n) {
        by_size[y.count_ones() as usize].push(y);
    }
    let cap = x_cap.min(n);
    for x in 1u32..(1u32 << n) {
        let size = x.count_ones();
        if size > cap {
            continue;
        }
        for y_size in 3..=size {
            for &y in &by_size[y_size as usize] {
                let mut all_have_three = true;
                let mut rest = x;
                while rest != 0 {
                    let s = rest.trailing_zeros();
                    rest &= rest - 1;
                    if (masks[s as usize] & y).count_ones() < 3 {
                        all_have_three = false;
                        break;
                    }
                }
                if all_have_three {
                    return false; // |Y| <= |X| with every x seeing 3+ in Y
                }
            }
        }
    }
    true
}

/// Quantifier-faithful recheck for caps up to 3 at arbitrary side size.
///
/// A violating pair needs `3 <= |Y| <= |X| <= 3`, so `|X| = |Y| = 3` and each
/// `x` in `X` has `|N(x) ∩ Y| >= 3 = |Y|`, i.e. `Y ⊆ N(x)`. Enumerating
/// S-triples whose neighborhoods share 3+ common elements is therefore the
/// whole search. Works for any degree `k`.
pub fn property_ii_recheck_cap3(g: &BipartiteKOut, x_cap: u32) -> bool {
    assert!(x_cap <= 3, "this recheck only supports caps up to 3");
    if x_cap < 3 {
        return true;
    }
    let n = g.n();
    let intersect = |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    };
    for x1 in 0..n {
        for x2 in (x1 + 1)..n {
            let common12 = intersect(g.neighbors(x1), g.neighbors(x2));
            if common12.len() < 3 {
                continue;
            }
            for x3 in (x2 + 1)..n {
                let common = intersect(&common12, g.neighbors(x3));
                if common.len() >= 3 {
                    return false; // any 3-subset of `common` is a violating Y
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certified::{matches_to_digits, parse_decimal};
    use crate::expander::{check_property_ii, sample_k_out, ExpanderParams};
    use crate::generators::Seed;

    #[test]
    fn taylor_e_squared_contains_reference_digits() {
        let b = e_squared_taylor(40);
        let reference = parse_decimal("7.389056098930650227230427460575007813180315570551847324");
        assert!(b.lo() <= &reference && &reference <= b.hi());
        // Width small enough for 30-digit work.
        let tiny = parse_decimal("0.0000000000000000000000000000000001");
        assert!(b.width() < tiny);
        // And it straddles the hardcoded production bracket.
        let prod = Bracket::e_squared();
        assert!(b.lo() >= prod.lo() && b.hi() <= prod.hi());
    }

    #[test]
    fn taylor_matches_production_to_many_digits() {
        let taylor = e_squared_taylor(40);
        let prod = Bracket::e_squared();
        let mid_taylor = (taylor.lo() + taylor.hi()) / BigRational::from_integer(2.into());
        let mid_prod = (prod.lo() + prod.hi()) / BigRational::from_integer(2.into());
        assert!(matches_to_digits(&mid_prod, &mid_taylor, 14));
    }

    #[test]
    fn brute_force_and_recheck_agree_with_production() {
        for seed in 0..30u64 {
            let n = 8 + (seed % 5) as u32;
            let g = sample_k_out(n, 3, Seed(seed)).unwrap();
            {
                let cap = 3u32;
                let params = ExpanderParams::with_cap(n, 3, cap).unwrap();
                let fast = check_property_ii(&g, &params).unwrap().holds;
                assert_eq!(fast, property_ii_brute_force(&g, cap), "brute n={n} seed={seed}");
                assert_eq!(fast, property_ii_recheck_cap3(&g, cap), "recheck n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn recheck_sees_crafted_violation() {
        let mut nbrs = vec![vec![4, 7, 9]; 3];
        for s in 3..50u32 {
            let mut row = vec![s % 50, (s + 11) % 50, (s + 23) % 50];
            row.sort_unstable();
            row.dedup();
            while row.len() < 3 {
                let extra = (row.last().unwrap() + 1) % 50;
                if !row.contains(&extra) {
                    row.push(extra);
                }
                row.sort_unstable();
            }
            nbrs.push(row);
        }
        let g = BipartiteKOut::from_neighborhoods(50, 3, nbrs).unwrap();
        assert!(!property_ii_recheck_cap3(&g, 3));
    }
}
