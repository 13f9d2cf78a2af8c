//! Scott topology on finite posets, maximal point spaces, the Xi-Zhao model
//! `P̂` and the filter model of a finite discrete space.

use thiserror::Error;

use crate::order::{FinPoset, OrderError, MAX_EXHAUSTIVE};
use crate::subset::Subset;
use crate::topo::{FinSpace, TopoError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScottError {
    #[error("poset is not bounded complete: {0} has upper bounds but no supremum")]
    NotBoundedComplete(String),
    #[error("poset is not an algebraic dcpo: {0}")]
    NotAlgebraic(String),
    #[error("{0} is not an upper set")]
    NotUpperSet(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("space is not T1: {0}")]
    NotT1(String),
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("poset has {0} elements, exhaustive scans stop at {MAX_EXHAUSTIVE}")]
    TooLarge(usize),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Topo(#[from] TopoError),
}

/// Directed subsets paired with their suprema.
pub fn directed_with_sups(p: &FinPoset) -> Result<Vec<(Subset, Option<usize>)>, ScottError> {
    if p.len() > MAX_EXHAUSTIVE {
        return Err(ScottError::TooLarge(p.len()));
    }
    Ok(p.directed_subsets().into_iter().map(|d| (d, p.supremum(d))).collect())
}

/// Scott opens by the definition: upper sets `U` such that every directed `D`
/// with `sup D ∈ U` meets `U`. Scans all `2^n` subsets.
pub fn scott_opens_definitional(p: &FinPoset) -> Result<Vec<Subset>, ScottError> {
    let directed = directed_with_sups(p)?;
    let mut opens: Vec<Subset> = (0u64..1u64 << p.len())
        .map(Subset::from_bits)
        .filter(|&u| {
            p.is_upper_set(u) && directed.iter().all(|&(d, sup)| !sup.is_some_and(|s| u.contains(s)) || d.meets(u))
        })
        .collect();
    opens.sort_unstable();
    Ok(opens)
}

/// `ΣP`. The definitional opens are compared with the upper sets.
pub fn scott_space(p: &FinPoset) -> Result<FinSpace, ScottError> {
    let definitional = scott_opens_definitional(p)?;
    let upper = p.upper_sets();
    if definitional != upper {
        return Err(ScottError::CheckFailed(format!(
            "Scott opens ({}) differ from upper sets ({})",
            definitional.len(),
            upper.len()
        )));
    }
    Ok(FinSpace::from_topology(p.labels().to_vec(), upper))
}

/// `Max(P)` with the relative Scott topology.
pub fn max_point_space(p: &FinPoset) -> Result<FinSpace, ScottError> {
    Ok(scott_space(p)?.subspace(p.maximal_elements()).0)
}

/// Reject posets that are not bounded complete algebraic dcpos.
pub fn require_model_base(p: &FinPoset) -> Result<(), ScottError> {
    if p.len() > MAX_EXHAUSTIVE {
        return Err(ScottError::TooLarge(p.len()));
    }
    if let Some(w) = p.bounded_completeness_witness() {
        return Err(ScottError::NotBoundedComplete(w.display_with(p.labels())));
    }
    let alg = p.algebraicity();
    if let Some(d) = alg.undirected_sup_witness {
        return Err(ScottError::NotAlgebraic(format!("directed {} has no supremum", d.display_with(p.labels()))));
    }
    if let Some(x) = alg.non_algebraic_witness {
        return Err(ScottError::NotAlgebraic(format!(
            "{} is not the directed supremum of the compact elements below it",
            p.label(x)
        )));
    }
    Ok(())
}

/// The Xi-Zhao model `P̂` of a bounded complete algebraic poset.
///
/// Points are pairs `(x, e)` with `e` maximal and `x ≤ e`, listed by `x` and
/// then `e`, and labelled `x@e`. The order is
/// `(x,e) ≤ (y,d)` iff `e = d ∧ x ≤ y`, or `y = d ∧ x ≤ d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiZhaoPoset {
    base: FinPoset,
    pairs: Vec<(usize, usize)>,
    poset: FinPoset,
}

/// Directed subsets of `P̂` are checked exhaustively up to this size.
pub const DICHOTOMY_EXHAUSTIVE: usize = 10;

pub fn pair_leq(p: &FinPoset, (x, e): (usize, usize), (y, d): (usize, usize)) -> bool {
    (e == d && p.leq(x, y)) || (y == d && p.leq(x, d))
}

impl XiZhaoPoset {
    pub fn new(p: &FinPoset) -> Result<Self, ScottError> {
        require_model_base(p)?;
        let max = p.maximal_elements();
        let mut pairs: Vec<(usize, usize)> =
            (0..p.len()).flat_map(|x| max.iter().filter(move |&e| p.leq(x, e)).map(move |e| (x, e))).collect();
        pairs.sort_unstable();
        let labels: Vec<String> = pairs.iter().map(|&(x, e)| format!("{}@{}", p.label(x), p.label(e))).collect();
        let poset = FinPoset::from_relation(labels, |i, j| pair_leq(p, pairs[i], pairs[j]))?;
        let h = XiZhaoPoset { base: p.clone(), pairs, poset };
        h.check_structure()?;
        if h.len() <= DICHOTOMY_EXHAUSTIVE {
            if let Some(d) = h.dichotomy_violation()? {
                return Err(ScottError::CheckFailed(format!(
                    "directed {} has no greatest element and crosses slices",
                    h.show(d)
                )));
            }
        }
        Ok(h)
    }

    fn check_structure(&self) -> Result<(), ScottError> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if self.poset.leq(i, j) != pair_leq(&self.base, self.pairs[i], self.pairs[j]) {
                    return Err(ScottError::CheckFailed(format!(
                        "order on {} and {} disagrees with the pair law",
                        self.poset.label(i),
                        self.poset.label(j)
                    )));
                }
            }
        }
        if self.poset.maximal_elements() != self.maxima() {
            return Err(ScottError::CheckFailed("Max(P̂) is not the set of pairs (e,e)".into()));
        }
        let nonmax = self.non_maximal();
        let mut covered = Subset::EMPTY;
        for e in self.base.maximal_elements().iter() {
            let part = self.slice(e).minus(self.maxima());
            if part.meets(covered) {
                return Err(ScottError::CheckFailed("slices overlap".into()));
            }
            covered = covered.union(part);
        }
        if covered != nonmax {
            return Err(ScottError::CheckFailed("slices do not cover P̂ \\ Max(P̂)".into()));
        }
        Ok(())
    }

    /// A directed subset with no greatest element that meets two slices.
    pub fn dichotomy_violation(&self) -> Result<Option<Subset>, ScottError> {
        let directed = directed_with_sups(&self.poset)?;
        let slices: Vec<Subset> = self.base.maximal_elements().iter().map(|e| self.slice(e)).collect();
        Ok(directed
            .into_iter()
            .map(|(d, _)| d)
            .find(|&d| self.poset.greatest_of(d).is_none() && !slices.iter().any(|&s| d.is_subset(s))))
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, x: usize, e: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, e)).ok()
    }

    pub fn show(&self, s: Subset) -> String {
        s.display_with(self.poset.labels())
    }

    /// `{(e,e)}`.
    pub fn maxima(&self) -> Subset {
        (0..self.len()).filter(|&i| self.pairs[i].0 == self.pairs[i].1).collect()
    }

    pub fn non_maximal(&self) -> Subset {
        self.maxima().complement(self.len())
    }

    /// `P̂_e = {(x,e) : x ≤ e}`.
    pub fn slice(&self, e: usize) -> Subset {
        (0..self.len()).filter(|&i| self.pairs[i].1 == e).collect()
    }

    /// Index of `(e,e)`.
    pub fn top_of(&self, e: usize) -> usize {
        self.index_of(e, e).expect("e is maximal")
    }
}

pub fn xizhao_model(p: &FinPoset) -> Result<XiZhaoPoset, ScottError> {
    XiZhaoPoset::new(p)
}

/// `(e,e) ↦ e` as a map `Max(P̂) -> Max(P)`, checked to be a homeomorphism.
pub fn max_homeo_check(h: &XiZhaoPoset) -> Result<Vec<usize>, ScottError> {
    let hat_max = h.poset().maximal_elements();
    let base_max = h.base().maximal_elements();
    let source = max_point_space(h.poset())?;
    let target = max_point_space(h.base())?;
    let base_rank: Vec<usize> = base_max.iter().collect();
    let map: Vec<usize> = hat_max
        .iter()
        .map(|i| {
            let e = h.pairs()[i].1;
            base_rank.iter().position(|&m| m == e).expect("maximal")
        })
        .collect();
    if !source.is_homeomorphism(&target, &map) {
        return Err(ScottError::CheckFailed("(e,e) ↦ e is not a homeomorphism".into()));
    }
    Ok(map)
}

/// `E_A = {(e,e) : some (x,e) ∈ A \ Max(P̂)}`, read off slice by slice.
pub fn e_set(h: &XiZhaoPoset, a: Subset) -> Result<Subset, ScottError> {
    if !h.poset().is_upper_set(a) {
        return Err(ScottError::NotUpperSet(h.show(a)));
    }
    let tops = h.maxima();
    Ok(h.base().maximal_elements().iter().filter(|&e| h.slice(e).minus(tops).meets(a)).map(|e| h.top_of(e)).collect())
}

/// `E_A` by walking the non-maximal members of `A`.
pub fn e_set_by_scan(h: &XiZhaoPoset, a: Subset) -> Subset {
    let mut out = Subset::EMPTY;
    for i in a.minus(h.maxima()).iter() {
        let (_, e) = h.pairs()[i];
        out.insert(h.index_of(e, e).unwrap());
    }
    out
}

/// `⋃_{(e,e) ∈ E} (A ∩ P̂_e)`, checked to be Scott closed in `P̂ \ Max(P̂)`.
pub fn scott_closed_slices(h: &XiZhaoPoset, a: Subset, e: Subset) -> Result<Subset, ScottError> {
    if !h.poset().is_lower_set(a) {
        return Err(ScottError::PreconditionViolated(format!("{} is not Scott closed", h.show(a))));
    }
    if !e.is_subset(h.maxima()) {
        return Err(ScottError::PreconditionViolated(format!("{} is not inside Max(P̂)", h.show(e))));
    }
    if e.meets(a) {
        return Err(ScottError::PreconditionViolated(format!("{} meets {}", h.show(e), h.show(a))));
    }
    let out = e.iter().map(|t| a.inter(h.slice(h.pairs()[t].1))).fold(Subset::EMPTY, Subset::union);
    let nonmax = h.non_maximal();
    let sub = scott_space(&h.poset().restrict(nonmax))?;
    if !sub.is_closed(out.compress(nonmax)) {
        return Err(ScottError::CheckFailed(format!("{} is not Scott closed in P̂ \\ Max(P̂)", h.show(out))));
    }
    Ok(out)
}

/// The poset of filters of `O(X)` with nonempty intersection, for a finite T1
/// space. Elements are labelled `<..>` by the intersection of the filter.
///
/// All `2^|O(X)|` subfamilies are scanned; `budget` caps that count.
pub fn zhao_filter_model(x: &FinSpace, budget: u128) -> Result<FinPoset, ScottError> {
    if !x.is_t1() {
        let (a, b) = (0..x.len())
            .flat_map(|a| (0..x.len()).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && x.spec_leq(a, b))
            .unwrap_or((0, 0));
        return Err(ScottError::NotT1(format!("{} is in the closure of {}", x.label(a), x.label(b))));
    }
    let opens = x.opens();
    let m = opens.len();
    let needed = if m >= 128 { u128::MAX } else { 1u128 << m };
    if needed > budget || m > 63 {
        return Err(ScottError::BudgetExceeded { needed, budget });
    }
    let index = |u: Subset| opens.binary_search(&u).expect("open");
    let mut filters: Vec<(Subset, Subset)> = Vec::new();
    for bits in 1u64..1u64 << m {
        let fam = Subset::from_bits(bits);
        let members: Vec<Subset> = fam.iter().map(|i| opens[i]).collect();
        let up_closed =
            members.iter().all(|&u| opens.iter().filter(|&&v| u.is_subset(v)).all(|&v| fam.contains(index(v))));
        if !up_closed {
            continue;
        }
        let meet_closed = members.iter().all(|&u| members.iter().all(|&v| fam.contains(index(u.inter(v)))));
        let meet = members.iter().fold(x.carrier(), |acc, &u| acc.inter(u));
        if meet_closed && !meet.is_empty() {
            filters.push((fam, meet));
        }
    }
    filters.sort_by_key(|&(_, meet)| (std::cmp::Reverse(meet.len()), meet));
    let labels: Vec<String> =
        filters.iter().map(|&(_, meet)| format!("<{}>", meet.labels(x.labels()).join(","))).collect();
    let d = FinPoset::from_relation(labels, |i, j| filters[i].0.is_subset(filters[j].0))?;
    require_model_base(&d).map_err(|e| ScottError::CheckFailed(format!("filter poset: {e}")))?;
    let dmax: Vec<usize> = d.maximal_elements().iter().collect();
    let to_point: Vec<usize> = dmax
        .iter()
        .map(|&i| {
            let meet = filters[i].1;
            match meet.len() {
                1 => Ok(meet.first().unwrap()),
                _ => Err(ScottError::CheckFailed(format!("maximal filter {} is not principal on a point", d.label(i)))),
            }
        })
        .collect::<Result<_, _>>()?;
    if !max_point_space(&d)?.is_homeomorphism(x, &to_point) {
        return Err(ScottError::CheckFailed("Max of the filter poset is not homeomorphic to X".into()));
    }
    Ok(d)
}

/// Filter model followed by the Xi-Zhao model; `Max(P̂)` must be homeomorphic
/// to `x` through `(e,e) ↦ e ↦ point`.
pub fn t1_dcpo_model(x: &FinSpace, budget: u128) -> Result<XiZhaoPoset, ScottError> {
    let d = zhao_filter_model(x, budget)?;
    let h = xizhao_model(&d)?;
    max_homeo_check(&h)?;
    let hat_max = max_point_space(h.poset())?;
    let to_point: Vec<usize> = h
        .poset()
        .maximal_elements()
        .iter()
        .map(|i| {
            let label = d.label(h.pairs()[i].1);
            x.index_of(label.trim_start_matches('<').trim_end_matches('>')).expect("maximal filter label")
        })
        .collect();
    if !hat_max.is_homeomorphism(x, &to_point) {
        return Err(ScottError::CheckFailed("Max(P̂) is not homeomorphic to X".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::test_support::arb_poset;
    use proptest::prelude::*;

    fn names(h: &XiZhaoPoset, s: Subset) -> Vec<String> {
        s.labels(h.poset().labels())
    }

    #[test]
    fn scott_examples() {
        let sierp_shape = scott_space(&fixtures::chain2()).unwrap();
        assert_eq!(sierp_shape.opens().len(), 3);
        assert!(sierp_shape.spec_leq(0, 1));
        let vee = scott_space(&fixtures::vee()).unwrap();
        let opens: Vec<Vec<String>> = vee.opens().iter().map(|u| u.labels(vee.labels())).collect();
        assert_eq!(
            opens,
            vec![
                vec![],
                vec!["b".to_string()],
                vec!["c".into()],
                vec!["b".into(), "c".into()],
                vec!["a".into(), "b".into(), "c".into()]
            ]
        );
        let anti = scott_space(&fixtures::antichain(2)).unwrap();
        assert_eq!(anti.opens().len(), 4);
    }

    #[test]
    fn max_point_examples() {
        let m = max_point_space(&fixtures::vee()).unwrap();
        assert_eq!(m.labels(), &["b", "c"]);
        assert_eq!(m.opens().len(), 4);
        assert_eq!(max_point_space(&fixtures::chain2()).unwrap().len(), 1);
        assert_eq!(max_point_space(&fixtures::diamond()).unwrap().len(), 1);
    }

    #[test]
    fn xizhao_examples() {
        let h = xizhao_model(&fixtures::chain2()).unwrap();
        assert_eq!(h.poset().labels(), &["a@b", "b@b"]);
        assert!(h.poset().leq(0, 1));

        let h = xizhao_model(&fixtures::vee()).unwrap();
        assert_eq!(h.poset().labels(), &["a@b", "a@c", "b@b", "c@c"]);
        let strict: Vec<(usize, usize)> = h.poset().strict_pairs();
        assert_eq!(strict, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);

        let d = fixtures::diamond();
        let h = xizhao_model(&d).unwrap();
        assert!(h.poset().find_isomorphism(&d).is_some());

        let bowtie = FinPoset::validate(
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        assert!(matches!(xizhao_model(&bowtie), Err(ScottError::NotBoundedComplete(_))));
    }

    #[test]
    fn max_homeo_examples() {
        for p in [fixtures::vee(), fixtures::chain2(), fixtures::diamond()] {
            let h = xizhao_model(&p).unwrap();
            let map = max_homeo_check(&h).unwrap();
            assert_eq!(map.len(), p.maximal_elements().len());
        }
    }

    #[test]
    fn e_set_examples() {
        let h = xizhao_model(&fixtures::vee()).unwrap();
        let up_ab = h.poset().up(0);
        assert_eq!(names(&h, up_ab), ["a@b", "b@b", "c@c"]);
        assert_eq!(names(&h, e_set(&h, up_ab).unwrap()), ["b@b"]);
        assert_eq!(e_set(&h, h.maxima()).unwrap(), Subset::EMPTY);
        assert_eq!(names(&h, e_set(&h, h.poset().carrier()).unwrap()), ["b@b", "c@c"]);
        assert!(matches!(e_set(&h, Subset::from_iter([0])), Err(ScottError::NotUpperSet(_))));
    }

    #[test]
    fn scott_closed_slice_examples() {
        let h = xizhao_model(&fixtures::vee()).unwrap();
        let (bb, cc) = (h.top_of(1), h.top_of(2));
        let down_ab = h.poset().down(0);
        let out = scott_closed_slices(&h, down_ab, Subset::singleton(bb)).unwrap();
        assert_eq!(names(&h, out), ["a@b"]);
        assert_eq!(scott_closed_slices(&h, down_ab, Subset::EMPTY).unwrap(), Subset::EMPTY);
        let both = down_ab.union(h.poset().down(1));
        let out = scott_closed_slices(&h, both, Subset::from_iter([bb, cc])).unwrap();
        assert_eq!(names(&h, out), ["a@b", "a@c"]);
        assert!(matches!(
            scott_closed_slices(&h, h.poset().down(bb), Subset::singleton(bb)),
            Err(ScottError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn zhao_filter_examples() {
        let d2 = zhao_filter_model(&fixtures::discrete(&["p", "q"]), 1 << 20).unwrap();
        assert!(d2.find_isomorphism(&fixtures::vee()).is_some());
        assert_eq!(d2.labels(), &["<p,q>", "<p>", "<q>"]);
        assert_eq!(zhao_filter_model(&fixtures::discrete(&["p"]), 1 << 20).unwrap().len(), 1);
        let d3 = zhao_filter_model(&fixtures::discrete(&["p", "q", "r"]), 1 << 20).unwrap();
        assert_eq!(d3.len(), 7);
        assert_eq!(d3.maximal_elements().len(), 3);
        assert!(matches!(zhao_filter_model(&fixtures::sierpinski(), 1 << 20), Err(ScottError::NotT1(_))));
        assert!(matches!(
            zhao_filter_model(&fixtures::discrete(&["p", "q", "r"]), 100),
            Err(ScottError::BudgetExceeded { needed: 256, budget: 100 })
        ));
    }

    #[test]
    fn t1_model_end_to_end() {
        for names in [&["p"][..], &["p", "q"], &["p", "q", "r"]] {
            let x = fixtures::discrete(names);
            let h = t1_dcpo_model(&x, 1 << 20).unwrap();
            assert_eq!(h.poset().maximal_elements().len(), names.len());
        }
    }

    proptest! {
        #[test]
        fn definitional_scott_equals_upper_sets(p in arb_poset(7)) {
            prop_assert_eq!(scott_opens_definitional(&p).unwrap(), p.upper_sets());
        }

        #[test]
        fn e_sets_are_monotone_and_match_the_scan(p in arb_poset(6)) {
            let mut q = p;
            // Adjoin a bottom so most draws are bounded complete.
            let n = q.len();
            let mut labels = vec!["bot".to_string()];
            labels.extend(q.labels().iter().cloned());
            let mut pairs: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
            pairs.extend(q.strict_pairs().into_iter().map(|(a, b)| (a + 1, b + 1)));
            q = FinPoset::from_index_pairs(labels, &pairs).unwrap();
            if let Ok(h) = xizhao_model(&q) {
                let ups = h.poset().upper_sets();
                for &a in &ups {
                    prop_assert_eq!(e_set(&h, a).unwrap(), e_set_by_scan(&h, a));
                }
                for &a in ups.iter().step_by(3) {
                    for &b in ups.iter().step_by(5) {
                        if a.is_subset(b) {
                            prop_assert!(e_set(&h, a).unwrap().is_subset(e_set(&h, b).unwrap()));
                        }
                    }
                }
            }
        }
    }
}
