//! Small named posets and spaces used by tests, the CLI corpus and the docs.

use crate::order::FinPoset;
use crate::subset::Subset;
use crate::topo::FinSpace;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `a < b`.
pub fn chain2() -> FinPoset {
    FinPoset::validate(labels(&["a", "b"]), &[("a", "b")]).unwrap()
}

/// `a < b`, `a < c`.
pub fn vee() -> FinPoset {
    FinPoset::validate(labels(&["a", "b", "c"]), &[("a", "b"), ("a", "c")]).unwrap()
}

/// `0 < m1, m2 < 1`.
pub fn diamond() -> FinPoset {
    FinPoset::validate(labels(&["0", "m1", "m2", "1"]), &[("0", "m1"), ("0", "m2"), ("m1", "1"), ("m2", "1")]).unwrap()
}

pub fn chain(n: usize) -> FinPoset {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinPoset::from_index_pairs(names, &pairs).unwrap()
}

/// Antichain on `x, y, z, ..` (falls back to `x{i}` beyond three points).
pub fn antichain(n: usize) -> FinPoset {
    let names: Vec<String> = match n {
        0..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (0..n).map(|i| format!("x{i}")).collect(),
    };
    FinPoset::from_index_pairs(names, &[]).unwrap()
}

/// The three named poset fixtures, by name.
pub fn named_posets() -> Vec<(&'static str, FinPoset)> {
    vec![("CHAIN2", chain2()), ("VEE", vee()), ("DIAMOND", diamond())]
}

/// Sierpiński space: points `0, 1`, opens `∅, {1}, {0,1}`.
pub fn sierpinski() -> FinSpace {
    FinSpace::new(labels(&["0", "1"]), vec![Subset::EMPTY, Subset::from_iter([1]), Subset::full(2)]).unwrap()
}

pub fn discrete(names: &[&str]) -> FinSpace {
    let n = names.len();
    let opens = (0u64..1 << n).map(Subset::from_bits).collect();
    FinSpace::new(labels(names), opens).unwrap()
}

pub fn indiscrete(names: &[&str]) -> FinSpace {
    FinSpace::new(labels(names), vec![Subset::EMPTY, Subset::full(names.len())]).unwrap()
}

/// Points `a, b, c` with opens `∅, {c}, {b,c}, {a,b,c}`.
pub fn chain3_space() -> FinSpace {
    FinSpace::new(
        labels(&["a", "b", "c"]),
        vec![Subset::EMPTY, Subset::from_iter([2]), Subset::from_iter([1, 2]), Subset::full(3)],
    )
    .unwrap()
}

/// The named space fixtures, by name.
pub fn named_spaces() -> Vec<(&'static str, FinSpace)> {
    vec![
        ("SIERP", sierpinski()),
        ("DISCRETE2", discrete(&["p", "q"])),
        ("DISCRETE3", discrete(&["p", "q", "r"])),
        ("CHAIN3", chain3_space()),
    ]
}
