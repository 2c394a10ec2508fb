//! Small categories and strategies shared by unit tests.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use proptest::prelude::*;

use crate::fincat::{validate_category, FinCategory, RawCategory};

pub fn arc(c: FinCategory) -> Arc<FinCategory> {
    Arc::new(c)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Poset on `0..n` generated by the relations `i < j` whose bit is set in
/// `bits` (pairs enumerated with `i < j`), closed transitively.
pub fn poset_from_bits(n: usize, bits: u64) -> FinCategory {
    let mut leq = alloc::vec![alloc::vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        leq[i][i] = true;
        for j in i + 1..n {
            leq[i][j] = bits >> k & 1 == 1;
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][m] && leq[m][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    FinCategory::poset(&names("p", n), |i, j| leq[i][j])
}

/// `a ⇉ b`.
pub fn parallel_pair() -> FinCategory {
    let s = |x: &str| String::from(x);
    let raw = RawCategory {
        objects: alloc::vec![s("a"), s("b")],
        morphisms: alloc::vec![
            (s("1a"), s("a"), s("a")),
            (s("1b"), s("b"), s("b")),
            (s("u"), s("a"), s("b")),
            (s("v"), s("a"), s("b")),
        ],
        identities: alloc::vec![(s("a"), s("1a")), (s("b"), s("1b"))],
        composition: alloc::vec![
            (s("1a"), s("1a"), s("1a")),
            (s("1b"), s("1b"), s("1b")),
            (s("u"), s("1a"), s("u")),
            (s("v"), s("1a"), s("v")),
            (s("1b"), s("u"), s("u")),
            (s("1b"), s("v"), s("v")),
        ],
    };
    validate_category(&raw).unwrap()
}

/// A mix of small posets, groups and the parallel pair.
pub fn small_category() -> impl Strategy<Value = FinCategory> {
    prop_oneof![
        4 => (1usize..=4, any::<u64>()).prop_map(|(n, bits)| poset_from_bits(n, bits)),
        1 => Just(FinCategory::cyclic_group(2)),
        1 => Just(FinCategory::cyclic_group(3)),
        1 => Just(parallel_pair()),
    ]
}
