//! Finite topological spaces given by an explicit open-set family, continuous
//! maps between them, and the lower Vietoris hyperspace construction.
//!
//! Every predicate here runs against the stored open family. Finite `T0`
//! spaces are Alexandrov, so several answers are known in advance (opens are
//! the specialization up-sets, every irreducible closed set is a point
//! closure); those facts are asserted by tests and never used as shortcuts.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use thiserror::Error;

use crate::families::{ClosedFamily, FamilyRole};
use crate::order::{FinPoset, OrderError};
use crate::subset::{canonicalize, Subset, MAX_CARRIER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("open family must contain the empty set and the whole carrier")]
    MissingEmptyOrFull,
    #[error("opens not closed under union: {0} ∪ {1}")]
    NotClosedUnderUnion(String, String),
    #[error("opens not closed under intersection: {0} ∩ {1}")]
    NotClosedUnderIntersection(String, String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("carrier of {0} points exceeds the supported maximum")]
    TooLarge(usize),
    #[error("space is not T0: `{0}` and `{1}` have the same closure")]
    NotT0(String, String),
    #[error("space is not T1: `{0}` is not closed")]
    NotT1(String),
    #[error("family member {0} is not an irreducible closed set")]
    FamilyNotIrreducible(String),
    #[error("map is not continuous: preimage of open {0} is not open")]
    NotContinuous(String),
    #[error("map graph is not a total function into the target")]
    BadGraph,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A finite topological space.
#[derive(Debug, Clone)]
pub struct FinSpace {
    labels: Vec<String>,
    opens: Vec<Subset>,
    open_index: HashSet<Subset>,
    closed: Vec<Subset>,
    point_closures: Vec<Subset>,
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.opens == other.opens
    }
}

impl Eq for FinSpace {}

fn check_point_labels(labels: &[String]) -> Result<(), TopoError> {
    if labels.len() > MAX_CARRIER {
        return Err(TopoError::TooLarge(labels.len()));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(TopoError::DuplicatePoint(l.clone()));
        }
    }
    Ok(())
}

fn check_topology(labels: &[String], opens: &[Subset]) -> Result<(), TopoError> {
    let full = Subset::full(labels.len());
    if let Some(bad) = opens.iter().find(|u| !u.is_subset(full)) {
        return Err(TopoError::UnknownPoint(format!("#{}", bad.minus(full).first().unwrap())));
    }
    let index: HashSet<Subset> = opens.iter().copied().collect();
    if !index.contains(&Subset::EMPTY) || !index.contains(&full) {
        return Err(TopoError::MissingEmptyOrFull);
    }
    for (i, &u) in opens.iter().enumerate() {
        for &v in &opens[i + 1..] {
            if !index.contains(&u.union(v)) {
                return Err(TopoError::NotClosedUnderUnion(u.display_with(labels), v.display_with(labels)));
            }
            if !index.contains(&u.inter(v)) {
                return Err(TopoError::NotClosedUnderIntersection(u.display_with(labels), v.display_with(labels)));
            }
        }
    }
    Ok(())
}

impl FinSpace {
    /// Validate an open family and build the space.
    pub fn new(labels: Vec<String>, opens: Vec<Subset>) -> Result<Self, TopoError> {
        check_point_labels(&labels)?;
        let mut opens = opens;
        canonicalize(&mut opens);
        check_topology(&labels, &opens)?;
        Ok(Self::from_topology(labels, opens))
    }

    /// Build from a family already known to be a topology (derived spaces).
    pub(crate) fn from_topology(labels: Vec<String>, mut opens: Vec<Subset>) -> Self {
        canonicalize(&mut opens);
        let n = labels.len();
        let open_index: HashSet<Subset> = opens.iter().copied().collect();
        let mut closed: Vec<Subset> = opens.iter().map(|u| u.complement(n)).collect();
        closed.sort_unstable();
        let mut space = FinSpace { labels, opens, open_index, closed, point_closures: Vec::new() };
        space.point_closures = (0..n).map(|x| space.closure(Subset::singleton(x))).collect();
        debug_assert!(check_topology(&space.labels, &space.opens).is_ok());
        space
    }

    /// The Alexandrov space of a poset: opens are the upper sets.
    pub fn alexandrov(p: &FinPoset) -> Self {
        Self::from_topology(p.labels().to_vec(), p.upper_sets())
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

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn show(&self, s: Subset) -> String {
        s.display_with(&self.labels)
    }

    /// Opens in the global subset order.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    /// Closed sets in the global subset order.
    pub fn closed_sets(&self) -> &[Subset] {
        &self.closed
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.open_index.contains(&s)
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        s.is_subset(self.carrier()) && self.open_index.contains(&s.complement(self.len()))
    }

    /// Intersection of all closed sets containing `a`.
    pub fn closure(&self, a: Subset) -> Subset {
        self.closed.iter().filter(|c| a.is_subset(**c)).fold(self.carrier(), |acc, &c| acc.inter(c))
    }

    pub fn interior(&self, a: Subset) -> Subset {
        self.opens.iter().filter(|u| u.is_subset(a)).fold(Subset::EMPTY, |acc, &u| acc.union(u))
    }

    /// Intersection of all opens containing `a`.
    pub fn saturation(&self, a: Subset) -> Subset {
        self.opens.iter().filter(|u| a.is_subset(**u)).fold(self.carrier(), |acc, &u| acc.inter(u))
    }

    pub fn is_saturated(&self, a: Subset) -> bool {
        self.saturation(a) == a
    }

    /// `cl{x}`.
    pub fn point_closure(&self, x: usize) -> Subset {
        self.point_closures[x]
    }

    /// `x ≤ y` in the specialization preorder, i.e. `x ∈ cl{y}`.
    pub fn spec_leq(&self, x: usize, y: usize) -> bool {
        self.point_closures[y].contains(x)
    }

    /// `↓y` in the specialization preorder.
    pub fn spec_down(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, y| acc.union(self.point_closures[y]))
    }

    /// `↑s` in the specialization preorder.
    pub fn spec_up(&self, s: Subset) -> Subset {
        (0..self.len()).filter(|&x| s.iter().any(|y| self.spec_leq(y, x))).collect()
    }

    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<Subset, usize> = HashMap::new();
        for x in 0..self.len() {
            if let Some(&y) = seen.get(&self.point_closures[x]) {
                return Some((y, x));
            }
            seen.insert(self.point_closures[x], x);
        }
        None
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    pub fn require_t0(&self) -> Result<(), TopoError> {
        match self.t0_witness() {
            Some((x, y)) => Err(TopoError::NotT0(self.labels[x].clone(), self.labels[y].clone())),
            None => Ok(()),
        }
    }

    pub fn is_t1(&self) -> bool {
        (0..self.len()).all(|x| self.is_closed(Subset::singleton(x)))
    }

    /// The specialization order; errors unless the space is `T0`.
    pub fn specialization_order(&self) -> Result<FinPoset, TopoError> {
        self.require_t0()?;
        Ok(FinPoset::from_relation(self.labels.clone(), |x, y| self.spec_leq(x, y))?)
    }

    /// Every open cover of `a` has a finite subcover. The cover checked is the
    /// family of all opens meeting `a`; a subcover is extracted point by point.
    pub fn is_compact(&self, a: Subset) -> bool {
        let cover: Vec<Subset> = self.opens.iter().copied().filter(|u| u.meets(a)).collect();
        let mut covered = Subset::EMPTY;
        let mut picked = 0usize;
        for x in a.iter() {
            if covered.contains(x) {
                continue;
            }
            match cover.iter().find(|u| u.contains(x)) {
                Some(&u) => {
                    covered = covered.union(u);
                    picked += 1;
                }
                None => return false,
            }
        }
        a.is_subset(covered) && picked <= a.len()
    }

    /// Nonempty compact saturated sets, in the global subset order.
    ///
    /// Candidates are all unions of point saturations; each is then checked
    /// against the definitions of saturated and compact.
    pub fn compact_saturated_sets(&self) -> Vec<Subset> {
        let generators: Vec<Subset> = (0..self.len()).map(|x| self.saturation(Subset::singleton(x))).unique().collect();
        let mut seen: HashSet<Subset> = HashSet::new();
        let mut frontier: Vec<Subset> = generators.clone();
        seen.extend(generators.iter().copied());
        while let Some(s) = frontier.pop() {
            for &g in &generators {
                let t = s.union(g);
                if seen.insert(t) {
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<Subset> =
            seen.into_iter().filter(|&s| !s.is_empty() && self.is_saturated(s) && self.is_compact(s)).collect();
        out.sort_unstable();
        out
    }

    /// Closed sets that do not contain `a` and are maximal with that property.
    fn maximal_closed_avoiding(&self, a: Subset) -> Vec<Subset> {
        let mut maximal: Vec<Subset> = Vec::new();
        for &c in self.closed.iter().rev() {
            if !a.is_subset(c) && !maximal.iter().any(|&m| c.is_subset(m)) {
                maximal.push(c);
            }
        }
        maximal
    }

    /// Closed sets `b, c` with `a ⊆ b ∪ c` but `a` inside neither, if any.
    pub fn reducibility_witness(&self, a: Subset) -> Option<(Subset, Subset)> {
        // Any splitting pair can be enlarged to a pair of maximal closed sets
        // still avoiding `a`, so those are the only candidates needed.
        let maximal = self.maximal_closed_avoiding(a);
        maximal.iter().tuple_combinations().find(|(b, c)| a.is_subset(b.union(**c))).map(|(b, c)| (*b, *c))
    }

    /// Nonempty, and never covered by two closed sets without lying in one.
    pub fn is_irreducible(&self, a: Subset) -> bool {
        !a.is_empty() && self.reducibility_witness(a).is_none()
    }

    /// `Irr(X)`, computed definitionally over the closed-set family.
    pub fn irreducible_closed_sets(&self) -> ClosedFamily {
        let members = self.closed.iter().copied().filter(|&a| self.is_irreducible(a)).collect();
        ClosedFamily::new(FamilyRole::Irr, members)
    }

    /// `S_c(X) = {cl{x}}`.
    pub fn point_closure_family(&self) -> ClosedFamily {
        ClosedFamily::new(FamilyRole::Sc, self.point_closures.clone())
    }

    /// Is every irreducible closed set the closure of exactly one point?
    pub fn sobriety(&self) -> Result<Sobriety, TopoError> {
        self.require_t0()?;
        let irr = self.irreducible_closed_sets();
        let mut generic = Vec::with_capacity(irr.len());
        for &a in irr.members() {
            let points: Vec<usize> = (0..self.len()).filter(|&x| self.point_closures[x] == a).collect();
            match points.as_slice() {
                [x] => generic.push((a, *x)),
                _ => return Ok(Sobriety::NotSober { witness: a }),
            }
        }
        Ok(Sobriety::Sober { generic })
    }

    pub fn is_sober(&self) -> Result<bool, TopoError> {
        Ok(matches!(self.sobriety()?, Sobriety::Sober { .. }))
    }

    /// The subspace on `s`, relabelled, together with its inclusion map.
    pub fn subspace(&self, s: Subset) -> (FinSpace, Vec<usize>) {
        let labels = s.iter().map(|x| self.labels[x].clone()).collect();
        let opens: Vec<Subset> = self.opens.iter().map(|u| u.inter(s).compress(s)).unique().collect();
        (FinSpace::from_topology(labels, opens), s.iter().collect())
    }

    /// Is the injective map `f: self -> target` a topological embedding?
    pub fn embedding_defect(&self, target: &FinSpace, f: &[usize]) -> Option<String> {
        if f.len() != self.len() || f.iter().any(|&y| y >= target.len()) {
            return Some("graph is not a total function".into());
        }
        if f.iter().unique().count() != f.len() {
            return Some("map is not injective".into());
        }
        let preimages: HashSet<Subset> =
            target.opens.iter().map(|&w| (0..self.len()).filter(|&x| w.contains(f[x])).collect()).collect();
        if let Some(p) = preimages.iter().find(|p| !self.is_open(**p)) {
            return Some(format!("preimage {} is not open", self.show(*p)));
        }
        if let Some(u) = self.opens.iter().find(|u| !preimages.contains(u)) {
            return Some(format!("open {} is not the trace of a target open", self.show(*u)));
        }
        None
    }

    /// Is the bijection `f` a homeomorphism onto `target`?
    pub fn is_homeomorphism(&self, target: &FinSpace, f: &[usize]) -> bool {
        target.len() == self.len() && self.embedding_defect(target, f).is_none()
    }
}

/// Outcome of [`FinSpace::sobriety`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sobriety {
    /// Each irreducible closed set paired with its generic point.
    Sober {
        generic: Vec<(Subset, usize)>,
    },
    NotSober {
        witness: Subset,
    },
}

/// A continuous map between two finite spaces.
#[derive(Debug, Clone)]
pub struct ContinuousMap<'a> {
    source: &'a FinSpace,
    target: &'a FinSpace,
    graph: Vec<usize>,
}

impl<'a> ContinuousMap<'a> {
    pub fn new(source: &'a FinSpace, target: &'a FinSpace, graph: Vec<usize>) -> Result<Self, TopoError> {
        if graph.len() != source.len() || graph.iter().any(|&y| y >= target.len()) {
            return Err(TopoError::BadGraph);
        }
        let f = ContinuousMap { source, target, graph };
        if let Some(&w) = target.opens.iter().find(|&&w| !source.is_open(f.preimage(w))) {
            return Err(TopoError::NotContinuous(target.show(w)));
        }
        Ok(f)
    }

    pub fn identity(space: &'a FinSpace) -> Self {
        ContinuousMap { source: space, target: space, graph: (0..space.len()).collect() }
    }

    pub fn source(&self) -> &'a FinSpace {
        self.source
    }

    pub fn target(&self) -> &'a FinSpace {
        self.target
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    pub fn image(&self, a: Subset) -> Subset {
        a.iter().map(|x| self.graph[x]).collect()
    }

    pub fn preimage(&self, b: Subset) -> Subset {
        (0..self.graph.len()).filter(|&x| b.contains(self.graph[x])).collect()
    }
}

/// Every continuous map `x -> y`, graphs in lexicographic order.
///
/// Partial graphs are pruned by monotonicity in the specialization orders;
/// each complete graph is then checked on preimages of opens. More than
/// `budget` maps is an error.
pub fn continuous_maps<'a>(
    x: &'a FinSpace,
    y: &'a FinSpace,
    budget: u128,
) -> Result<Vec<ContinuousMap<'a>>, TopoError> {
    let mut out = Vec::new();
    let mut graph = Vec::with_capacity(x.len());
    extend_maps(x, y, &mut graph, &mut out, budget)?;
    Ok(out)
}

fn extend_maps<'a>(
    x: &'a FinSpace,
    y: &'a FinSpace,
    graph: &mut Vec<usize>,
    out: &mut Vec<ContinuousMap<'a>>,
    budget: u128,
) -> Result<(), TopoError> {
    let k = graph.len();
    if k == x.len() {
        if let Ok(f) = ContinuousMap::new(x, y, graph.clone()) {
            if out.len() as u128 == budget {
                return Err(TopoError::BudgetExceeded { needed: budget + 1, budget });
            }
            out.push(f);
        }
        return Ok(());
    }
    for v in 0..y.len() {
        let monotone = (0..k)
            .all(|j| (!x.spec_leq(j, k) || y.spec_leq(graph[j], v)) && (!x.spec_leq(k, j) || y.spec_leq(v, graph[j])));
        if monotone {
            graph.push(v);
            extend_maps(x, y, graph, out, budget)?;
            graph.pop();
        }
    }
    Ok(())
}

/// The lower Vietoris hyperspace `P_H(G)` of a family of irreducible closed sets.
#[derive(Debug, Clone)]
pub struct HyperSpace {
    base: FinSpace,
    members: Vec<Subset>,
    space: FinSpace,
    eta: Option<Vec<usize>>,
}

impl HyperSpace {
    pub fn base(&self) -> &FinSpace {
        &self.base
    }

    /// The points of the hyperspace: members of `G`, in the global subset order.
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn member(&self, i: usize) -> Subset {
        self.members[i]
    }

    pub fn index_of(&self, a: Subset) -> Option<usize> {
        self.members.binary_search(&a).ok()
    }

    /// The hyperspace as a plain finite space.
    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    /// `x ↦ cl{x}`, present when every point closure lies in `G`.
    pub fn eta(&self) -> Option<&[usize]> {
        self.eta.as_deref()
    }

    /// `◊_G U`.
    pub fn diamond(&self, u: Subset) -> Subset {
        diamond(&self.members, u)
    }

    /// `□_G A`.
    pub fn boxed(&self, a: Subset) -> Subset {
        boxed(&self.members, a)
    }

    /// Convert a set of hyperspace points into the family of closed sets it names.
    pub fn family_of(&self, pts: Subset) -> Vec<Subset> {
        pts.iter().map(|i| self.members[i]).collect()
    }

    /// Hyperspace points naming the given closed sets; `None` if one is absent.
    pub fn points_of(&self, family: &[Subset]) -> Option<Subset> {
        family.iter().map(|&a| self.index_of(a)).collect()
    }
}

fn diamond(members: &[Subset], u: Subset) -> Subset {
    (0..members.len()).filter(|&i| members[i].meets(u)).collect()
}

fn boxed(members: &[Subset], a: Subset) -> Subset {
    (0..members.len()).filter(|&i| members[i].is_subset(a)).collect()
}

/// Close a family under binary intersection and binary union.
fn generate_topology(subbase: &[Subset], full: Subset) -> Vec<Subset> {
    let mut seen: HashSet<Subset> = subbase.iter().copied().collect();
    seen.insert(Subset::EMPTY);
    seen.insert(full);
    let mut all: Vec<Subset> = seen.iter().copied().collect();
    let mut i = 0;
    while i < all.len() {
        let u = all[i];
        let mut j = 0;
        while j <= i {
            let v = all[j];
            for w in [u.inter(v), u.union(v)] {
                if seen.insert(w) {
                    all.push(w);
                }
            }
            j += 1;
        }
        i += 1;
    }
    all
}

/// Build `P_H(G)` and check its closed sets are exactly `{□_G A : A closed}`.
pub fn ph_space(x: &FinSpace, family: &[Subset]) -> Result<HyperSpace, TopoError> {
    let mut members = family.to_vec();
    canonicalize(&mut members);
    if members.len() > MAX_CARRIER {
        return Err(TopoError::TooLarge(members.len()));
    }
    if let Some(&bad) = members.iter().find(|&&a| !x.is_closed(a) || !x.is_irreducible(a)) {
        return Err(TopoError::FamilyNotIrreducible(x.show(bad)));
    }
    let g = members.len();
    let subbase: Vec<Subset> = x.opens().iter().map(|&u| diamond(&members, u)).collect();
    let opens = generate_topology(&subbase, Subset::full(g));
    let subbase_set: HashSet<Subset> = subbase.iter().copied().collect();
    if let Some(extra) = opens.iter().find(|w| !subbase_set.contains(w)) {
        return Err(TopoError::CheckFailed(format!("generated open {:?} is not of the form ◊U", extra)));
    }
    let labels: Vec<String> = members.iter().map(|&a| x.show(a)).collect();
    let space = FinSpace::from_topology(labels, opens);
    let boxes: HashSet<Subset> = x.closed_sets().iter().map(|&a| boxed(&members, a)).collect();
    let closed: HashSet<Subset> = space.closed_sets().iter().copied().collect();
    if boxes != closed {
        return Err(TopoError::CheckFailed("closed sets of P_H(G) differ from {□A}".into()));
    }
    let eta: Option<Vec<usize>> = (0..x.len()).map(|p| members.binary_search(&x.point_closure(p)).ok()).collect();
    if let Some(eta) = &eta {
        if let Some(defect) = x.embedding_defect(&space, eta) {
            return Err(TopoError::CheckFailed(format!("η is not an embedding: {defect}")));
        }
    }
    for i in 0..g {
        for j in 0..g {
            if space.spec_leq(i, j) != members[i].is_subset(members[j]) {
                return Err(TopoError::CheckFailed("specialization order of P_H(G) is not inclusion".into()));
            }
        }
    }
    Ok(HyperSpace { base: x.clone(), members, space, eta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::test_support::arb_space;
    use proptest::prelude::*;

    fn s(ix: &[usize]) -> Subset {
        ix.iter().copied().collect()
    }

    fn labels(n: &[&str]) -> Vec<String> {
        n.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn make_space_validation() {
        let sierp = fixtures::sierpinski();
        assert_eq!(sierp.opens(), &[s(&[]), s(&[1]), s(&[0, 1])]);
        assert_eq!(fixtures::chain3_space().len(), 3);
        let err = FinSpace::new(labels(&["0", "1"]), vec![s(&[]), s(&[0]), s(&[1])]).unwrap_err();
        assert_eq!(err, TopoError::MissingEmptyOrFull);
        let err = FinSpace::new(labels(&["a", "b", "c"]), vec![s(&[]), s(&[0]), s(&[1]), s(&[0, 1, 2])]).unwrap_err();
        assert!(matches!(err, TopoError::NotClosedUnderUnion(..)));
        let err =
            FinSpace::new(labels(&["a", "b", "c"]), vec![s(&[]), s(&[0, 1]), s(&[1, 2]), s(&[0, 1, 2])]).unwrap_err();
        assert!(matches!(err, TopoError::NotClosedUnderIntersection(..)));
    }

    #[test]
    fn specialization() {
        let p = fixtures::sierpinski().specialization_order().unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
        let d = fixtures::discrete(&["p", "q"]).specialization_order().unwrap();
        assert!(d.strict_pairs().is_empty());
        let err = fixtures::indiscrete(&["p", "q"]).specialization_order().unwrap_err();
        assert_eq!(err, TopoError::NotT0("p".into(), "q".into()));
    }

    #[test]
    fn irreducible_closed() {
        let irr = fixtures::sierpinski().irreducible_closed_sets();
        assert_eq!(irr.members(), &[s(&[0]), s(&[0, 1])]);
        let irr = fixtures::discrete(&["p", "q"]).irreducible_closed_sets();
        assert_eq!(irr.members(), &[s(&[0]), s(&[1])]);
        let c3 = fixtures::chain3_space();
        let irr = c3.irreducible_closed_sets();
        assert_eq!(irr.members(), &[s(&[0]), s(&[0, 1]), s(&[0, 1, 2])]);
        assert_eq!(irr, c3.point_closure_family().with_role(crate::families::FamilyRole::Irr));
        assert!(!fixtures::discrete(&["p", "q"]).is_irreducible(s(&[0, 1])));
    }

    #[test]
    fn compact_saturated() {
        assert_eq!(fixtures::sierpinski().compact_saturated_sets(), vec![s(&[1]), s(&[0, 1])]);
        assert_eq!(fixtures::discrete(&["p", "q"]).compact_saturated_sets(), vec![s(&[0]), s(&[1]), s(&[0, 1])]);
        assert_eq!(fixtures::chain3_space().compact_saturated_sets(), vec![s(&[2]), s(&[1, 2]), s(&[0, 1, 2])]);
    }

    #[test]
    fn hyperspaces() {
        let sierp = fixtures::sierpinski();
        let irr = sierp.irreducible_closed_sets();
        let h = ph_space(&sierp, irr.members()).unwrap();
        assert!(sierp.is_homeomorphism(h.space(), h.eta().unwrap()));
        let d = fixtures::discrete(&["p", "q"]);
        let h = ph_space(&d, &[s(&[0]), s(&[1])]).unwrap();
        assert_eq!(h.space().opens().len(), 4);
        let err = ph_space(&d, &[s(&[0, 1])]).unwrap_err();
        assert!(matches!(err, TopoError::FamilyNotIrreducible(_)));
        // A family without every point closure has no η.
        let h = ph_space(&sierp, &[s(&[0, 1])]).unwrap();
        assert!(h.eta().is_none());
    }

    #[test]
    fn sober_fixtures() {
        assert!(fixtures::sierpinski().is_sober().unwrap());
        assert!(fixtures::discrete(&["p", "q", "r"]).is_sober().unwrap());
        assert!(fixtures::indiscrete(&["p", "q"]).is_sober().is_err());
    }

    #[test]
    fn continuous_map_enumeration() {
        let sierp = fixtures::sierpinski();
        let maps = continuous_maps(&sierp, &sierp, 1000).unwrap();
        let graphs: Vec<&[usize]> = maps.iter().map(|f| f.graph()).collect();
        assert_eq!(graphs, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
        let one = fixtures::discrete(&["p"]);
        assert_eq!(continuous_maps(&one, &sierp, 1000).unwrap().len(), 2);
        let d = fixtures::discrete(&["p", "q"]);
        let maps = continuous_maps(&sierp, &d, 1000).unwrap();
        assert_eq!(maps.iter().map(|f| f.graph().to_vec()).collect::<Vec<_>>(), vec![vec![0, 0], vec![1, 1]]);
        assert!(matches!(continuous_maps(&d, &sierp, 3), Err(TopoError::BudgetExceeded { needed: 4, budget: 3 })));
    }

    proptest! {
        #[test]
        fn closure_operator_laws(x in arb_space(6), a in any::<u64>(), b in any::<u64>()) {
            let a = Subset::from_bits(a).inter(x.carrier());
            let b = Subset::from_bits(b).inter(x.carrier());
            let ca = x.closure(a);
            prop_assert!(a.is_subset(ca));
            prop_assert_eq!(x.closure(ca), ca);
            prop_assert!(ca.is_subset(x.closure(a.union(b))));
            prop_assert_eq!(x.closure(a.union(b)), ca.union(x.closure(b)));
            prop_assert_eq!(x.closure(Subset::EMPTY), Subset::EMPTY);
        }

        #[test]
        fn alexandrov_opens_are_specialization_up_sets(x in arb_space(6)) {
            let p = x.specialization_order().unwrap();
            prop_assert_eq!(x.opens(), &p.upper_sets()[..]);
            let mut nonempty: Vec<Subset> = x.opens().iter().copied().filter(|u| !u.is_empty()).collect();
            nonempty.sort();
            prop_assert_eq!(x.compact_saturated_sets(), nonempty);
        }

        #[test]
        fn finite_t0_spaces_are_sober(x in arb_space(6)) {
            prop_assert_eq!(
                x.irreducible_closed_sets(),
                x.point_closure_family().with_role(crate::families::FamilyRole::Irr)
            );
            prop_assert!(x.is_sober().unwrap());
        }

        #[test]
        fn irreducibility_through_subspaces(x in arb_space(6), y in any::<u64>(), a in any::<u64>()) {
            let y = Subset::from_bits(y).inter(x.carrier());
            let a = Subset::from_bits(a).inter(y);
            let (sub, _) = x.subspace(y);
            let in_y = sub.is_irreducible(a.compress(y));
            prop_assert_eq!(in_y, x.is_irreducible(a));
            prop_assert_eq!(in_y, x.is_irreducible(x.closure(a)));
        }

        #[test]
        fn continuous_images_of_irreducible_sets(x in arb_space(4), y in arb_space(3), pick in any::<u64>(), a in any::<u64>()) {
            let maps = continuous_maps(&x, &y, 1 << 16).unwrap();
            let f = &maps[(pick as usize) % maps.len()];
            let a = Subset::from_bits(a).inter(x.carrier());
            if x.is_irreducible(a) {
                prop_assert!(y.is_irreducible(f.image(a)));
            }
        }

        #[test]
        fn ph_closed_sets_are_boxes(x in arb_space(6)) {
            let irr = x.irreducible_closed_sets();
            let h = ph_space(&x, irr.members()).unwrap();
            let mut boxes: Vec<Subset> = x.closed_sets().iter().map(|&a| h.boxed(a)).collect();
            crate::subset::canonicalize(&mut boxes);
            prop_assert_eq!(h.space().closed_sets(), &boxes[..]);
        }
    }
}
