//! Finite posets and the order-theoretic predicates used throughout the crate.

use std::collections::HashMap;

use itertools::Itertools;
use thiserror::Error;

use crate::subset::{subsets_by_cardinality, Subset, MAX_CARRIER};

/// Exhaustive subset scans (directed sets, bounded completeness) refuse
/// carriers larger than this.
pub const MAX_EXHAUSTIVE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("antisymmetry violated: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    AntisymmetryViolation(String, String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("carrier of {0} points exceeds the supported maximum")]
    TooLarge(usize),
}

/// A finite partially ordered set with labelled elements.
///
/// Element `i` is the `i`-th label; `up[i]` is `↑i` and `down[i]` is `↓i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

fn check_labels(labels: &[String]) -> Result<HashMap<&str, usize>, OrderError> {
    if labels.len() > MAX_CARRIER {
        return Err(OrderError::TooLarge(labels.len()));
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(OrderError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl FinPoset {
    /// Build a poset from a generating relation: the result is its
    /// reflexive-transitive closure.
    pub fn validate<S: AsRef<str>>(labels: Vec<String>, pairs: &[(S, S)]) -> Result<Self, OrderError> {
        let index = check_labels(&labels)?;
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| OrderError::UnknownLabel(s.to_string()));
        let idx_pairs = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>, OrderError>>()?;
        drop(index);
        Self::from_index_pairs(labels, &idx_pairs)
    }

    /// As [`FinPoset::validate`], with pairs given by element index.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut up: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(OrderError::UnknownLabel(format!("#{}", a.max(b))));
            }
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    let (a, b) = (i.min(j), i.max(j));
                    return Err(OrderError::AntisymmetryViolation(labels[a].clone(), labels[b].clone()));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// Build from an explicit relation that must already be a partial order;
    /// nothing is closed, every law is re-validated.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, OrderError> {
        check_labels(&labels)?;
        let n = labels.len();
        let up: Vec<Subset> = (0..n).map(|i| (0..n).filter(|&j| leq(i, j)).collect()).collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(OrderError::NotPartialOrder(format!("`{}` is not reflexive", labels[i])));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(OrderError::AntisymmetryViolation(labels[i].clone(), labels[j].clone()));
                }
                if !up[j].is_subset(up[i]) {
                    return Err(OrderError::NotPartialOrder(format!(
                        "transitivity fails through `{}` <= `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<Subset>) -> Self {
        let n = labels.len();
        let mut down = vec![Subset::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        FinPoset { labels, up, down }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn up(&self, a: usize) -> Subset {
        self.up[a]
    }

    #[inline]
    pub fn down(&self, a: usize) -> Subset {
        self.down[a]
    }

    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn down_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    pub fn is_upper_set(&self, s: Subset) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_lower_set(&self, s: Subset) -> bool {
        self.down_closure(s) == s
    }

    /// Common upper bounds of `s`; every element when `s` is empty.
    pub fn upper_bounds(&self, s: Subset) -> Subset {
        s.iter().fold(self.carrier(), |acc, i| acc.inter(self.up[i]))
    }

    pub fn lower_bounds(&self, s: Subset) -> Subset {
        s.iter().fold(self.carrier(), |acc, i| acc.inter(self.down[i]))
    }

    /// Least element of `s`, if `s` has one.
    pub fn least_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&i| s.is_subset(self.up[i]))
    }

    pub fn greatest_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&i| s.is_subset(self.down[i]))
    }

    /// Least upper bound of `s`. `sup ∅` is the bottom element when present.
    pub fn supremum(&self, s: Subset) -> Option<usize> {
        self.least_of(self.upper_bounds(s))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least_of(self.carrier())
    }

    pub fn maximal_elements(&self) -> Subset {
        (0..self.len()).filter(|&i| self.up[i] == Subset::singleton(i)).collect()
    }

    pub fn minimal_elements(&self) -> Subset {
        (0..self.len()).filter(|&i| self.down[i] == Subset::singleton(i)).collect()
    }

    /// First subset, in enumeration order, that has an upper bound but no
    /// least upper bound. `None` means the poset is bounded complete. The scan
    /// is exhaustive over all `2^n` subsets, including `∅`.
    pub fn bounded_completeness_witness(&self) -> Option<Subset> {
        assert!(self.len() <= MAX_EXHAUSTIVE, "exhaustive scan over {} elements", self.len());
        subsets_by_cardinality(self.len()).find(|&s| {
            let ub = self.upper_bounds(s);
            !ub.is_empty() && self.least_of(ub).is_none()
        })
    }

    pub fn is_bounded_complete(&self) -> bool {
        self.bounded_completeness_witness().is_none()
    }

    /// Nonempty and every pair of members has an upper bound inside the set.
    pub fn is_directed(&self, d: Subset) -> bool {
        if d.is_empty() {
            return false;
        }
        let members: Vec<usize> = d.iter().collect();
        members
            .iter()
            .enumerate()
            .all(|(k, &x)| members[k + 1..].iter().all(|&y| self.up[x].inter(self.up[y]).meets(d)))
    }

    /// All directed subsets, by exhaustive scan, in increasing bitmask order.
    pub fn directed_subsets(&self) -> Vec<Subset> {
        let n = self.len();
        assert!(n <= MAX_EXHAUSTIVE, "exhaustive scan over {n} elements");
        (1u64..1u64 << n).map(Subset::from_bits).filter(|&d| self.is_directed(d)).collect()
    }

    /// Definitional dcpo and algebraicity check.
    pub fn algebraicity(&self) -> Algebraicity {
        let directed: Vec<(Subset, Option<usize>)> =
            self.directed_subsets().into_iter().map(|d| (d, self.supremum(d))).collect();
        let unsupped = directed.iter().find(|(_, s)| s.is_none()).map(|(d, _)| *d);
        // x is compact iff every directed D with sup D >= x already meets ↑x.
        let compact: Subset = (0..self.len())
            .filter(|&x| directed.iter().all(|&(d, sup)| !sup.is_some_and(|s| self.leq(x, s)) || d.meets(self.up[x])))
            .collect();
        let non_algebraic = (0..self.len()).find(|&x| {
            let below = compact.inter(self.down[x]);
            !(self.is_directed(below) && self.supremum(below) == Some(x))
        });
        Algebraicity { undirected_sup_witness: unsupped, compact, non_algebraic_witness: non_algebraic }
    }

    pub fn is_algebraic_and_dcpo(&self) -> bool {
        self.algebraicity().holds()
    }

    /// Every upper set, in the global subset order.
    pub fn upper_sets(&self) -> Vec<Subset> {
        // Upper sets correspond one-to-one with antichains of minimal members.
        fn walk(p: &FinPoset, next: usize, antichain: Subset, blocked: Subset, out: &mut Vec<Subset>) {
            if next == p.len() {
                out.push(p.up_closure(antichain));
                return;
            }
            walk(p, next + 1, antichain, blocked, out);
            if !blocked.contains(next) {
                let comparable = p.up[next].union(p.down[next]);
                walk(p, next + 1, antichain.with(next), blocked.union(comparable), out);
            }
        }
        let mut out = Vec::new();
        walk(self, 0, Subset::EMPTY, Subset::EMPTY, &mut out);
        out.sort_unstable();
        out
    }

    pub fn lower_sets(&self) -> Vec<Subset> {
        let n = self.len();
        let mut out: Vec<Subset> = self.upper_sets().into_iter().map(|u| u.complement(n)).collect();
        out.sort_unstable();
        out
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in self.up[a].iter().filter(|&b| b != a) {
                let between = self.up[a].inter(self.down[b]).minus(Subset::singleton(a).with(b));
                if between.is_empty() {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Strict order pairs, sorted by index.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|a| self.up[a].iter().filter(move |&b| b != a).map(move |b| (a, b))).collect()
    }

    /// Relabelled copy of the sub-poset on `s`.
    pub fn restrict(&self, s: Subset) -> FinPoset {
        let labels = s.iter().map(|i| self.labels[i].clone()).collect();
        let up = s.iter().map(|i| self.up[i].inter(s).compress(s)).collect();
        Self::from_up_rows(labels, up)
    }

    /// Is `f` (indexed by element of `self`) an order isomorphism onto `other`?
    pub fn is_isomorphism(&self, other: &FinPoset, f: &[usize]) -> bool {
        f.len() == self.len()
            && other.len() == self.len()
            && f.iter().copied().collect::<Subset>() == other.carrier()
            && (0..self.len()).all(|a| (0..self.len()).all(|b| self.leq(a, b) == other.leq(f[a], f[b])))
    }

    /// Brute-force search for an order isomorphism. Only for tiny posets.
    pub fn find_isomorphism(&self, other: &FinPoset) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        (0..self.len()).permutations(self.len()).find(|perm| self.is_isomorphism(other, perm))
    }
}

/// Outcome of [`FinPoset::algebraicity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebraicity {
    /// A directed subset with no supremum, if any.
    pub undirected_sup_witness: Option<Subset>,
    pub compact: Subset,
    /// An element that is not the directed supremum of the compact elements below it.
    pub non_algebraic_witness: Option<usize>,
}

impl Algebraicity {
    pub fn holds(&self) -> bool {
        self.undirected_sup_witness.is_none() && self.non_algebraic_witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::test_support::arb_poset;
    use proptest::prelude::*;

    fn labels(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validate_closes_and_rejects_cycles() {
        let vee = FinPoset::validate(labels(&["a", "b", "c"]), &[("a", "b"), ("a", "c")]).unwrap();
        assert_eq!(vee.strict_pairs(), vec![(0, 1), (0, 2)]);
        let chain = FinPoset::validate(labels(&["a", "b", "c"]), &[("a", "b"), ("b", "c")]).unwrap();
        assert!(chain.leq(0, 2));
        let err = FinPoset::validate(labels(&["a", "b"]), &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, OrderError::AntisymmetryViolation("a".into(), "b".into()));
        assert_eq!(
            FinPoset::validate(labels(&["a", "a"]), &[] as &[(&str, &str)]).unwrap_err(),
            OrderError::DuplicateLabel("a".into())
        );
        assert_eq!(
            FinPoset::validate(labels(&["a"]), &[("a", "z")]).unwrap_err(),
            OrderError::UnknownLabel("z".into())
        );
    }

    #[test]
    fn suprema() {
        let chain = fixtures::chain2();
        assert_eq!(chain.supremum(Subset::from_iter([0, 1])), Some(1));
        let vee = fixtures::vee();
        assert_eq!(vee.supremum(Subset::from_iter([1, 2])), None);
        assert_eq!(vee.supremum(Subset::EMPTY), Some(0));
    }

    #[test]
    fn bounded_completeness() {
        assert!(fixtures::vee().is_bounded_complete());
        assert!(fixtures::chain2().is_bounded_complete());
        assert_eq!(fixtures::antichain(2).bounded_completeness_witness(), Some(Subset::EMPTY));
        // {a,b} below both c and d: upper bounds but no least one.
        let bowtie = FinPoset::validate(
            labels(&["o", "a", "b", "c", "d"]),
            &[("o", "a"), ("o", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        assert_eq!(bowtie.bounded_completeness_witness(), Some(Subset::from_iter([1, 2])));
    }

    #[test]
    fn maximal_elements() {
        assert_eq!(fixtures::vee().maximal_elements(), Subset::from_iter([1, 2]));
        assert_eq!(fixtures::chain2().maximal_elements(), Subset::from_iter([1]));
        assert_eq!(fixtures::diamond().maximal_elements(), Subset::from_iter([3]));
    }

    #[test]
    fn algebraic_dcpo_by_definition() {
        for p in [fixtures::chain2(), fixtures::vee(), fixtures::diamond()] {
            let a = p.algebraicity();
            assert!(a.holds());
            // In a finite poset every element is compact.
            assert_eq!(a.compact, p.carrier());
        }
    }

    #[test]
    fn upper_sets_of_vee() {
        let ups = fixtures::vee().upper_sets();
        let expect: Vec<Subset> =
            [vec![], vec![1], vec![2], vec![1, 2], vec![0, 1, 2]].into_iter().map(Subset::from_iter).collect();
        assert_eq!(ups, expect);
    }

    /// Independent oracle: enumerate all 2^n subsets as raw bitmasks and
    /// compare bounds element by element.
    fn brute_bounded_complete(p: &FinPoset) -> bool {
        let n = p.len();
        (0u64..1 << n).all(|mask| {
            let ubs: Vec<usize> = (0..n).filter(|&u| (0..n).all(|s| mask >> s & 1 == 0 || p.leq(s, u))).collect();
            ubs.is_empty() || ubs.iter().any(|&l| ubs.iter().all(|&u| p.leq(l, u)))
        })
    }

    proptest! {
        #[test]
        fn bounded_complete_agrees_with_brute_force(p in arb_poset(8)) {
            prop_assert_eq!(p.is_bounded_complete(), brute_bounded_complete(&p));
        }

        #[test]
        fn finite_posets_are_algebraic_dcpos(p in arb_poset(7)) {
            prop_assert!(p.is_algebraic_and_dcpo());
        }

        #[test]
        fn supremum_is_least_upper_bound(p in arb_poset(7), mask in any::<u64>()) {
            let s = Subset::from_bits(mask).inter(p.carrier());
            if let Some(sup) = p.supremum(s) {
                prop_assert!(s.iter().all(|x| p.leq(x, sup)));
                prop_assert!(p.upper_bounds(s).iter().all(|u| p.leq(sup, u)));
            }
        }

        #[test]
        fn closure_operators(p in arb_poset(7), a in any::<u64>(), b in any::<u64>()) {
            let a = Subset::from_bits(a).inter(p.carrier());
            let b = Subset::from_bits(b).inter(p.carrier()).union(a);
            for close in [FinPoset::up_closure, FinPoset::down_closure] {
                let ca = close(&p, a);
                prop_assert!(a.is_subset(ca));
                prop_assert_eq!(close(&p, ca), ca);
                prop_assert!(ca.is_subset(close(&p, b)));
            }
        }

        #[test]
        fn upper_sets_match_filtering_all_subsets(p in arb_poset(7)) {
            let brute: Vec<Subset> = crate::subset::subsets_by_cardinality(p.len())
                .filter(|&s| p.is_upper_set(s))
                .collect();
            prop_assert_eq!(p.upper_sets(), brute);
        }
    }
}
