//! The cofinite topology on ℕ, handled exactly with finite/cofinite sets.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::families::{WdRoute, WdStatus};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("symbolic check failed: {0}")]
    CheckFailed(String),
}

/// A finite subset of ℕ, or the complement of one.
///
/// The two variants never describe the same set, so derived equality is set
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoSet {
    Finite(BTreeSet<u64>),
    Cofinite(BTreeSet<u64>),
}

impl CoSet {
    pub fn empty() -> Self {
        CoSet::Finite(BTreeSet::new())
    }

    pub fn whole() -> Self {
        CoSet::Cofinite(BTreeSet::new())
    }

    pub fn finite<I: IntoIterator<Item = u64>>(xs: I) -> Self {
        CoSet::Finite(xs.into_iter().collect())
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(xs: I) -> Self {
        CoSet::Cofinite(xs.into_iter().collect())
    }

    pub fn singleton(n: u64) -> Self {
        CoSet::finite([n])
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CoSet::Finite(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CoSet::Finite(s) if s.is_empty())
    }

    pub fn is_whole(&self) -> bool {
        matches!(self, CoSet::Cofinite(s) if s.is_empty())
    }

    /// The finite set listed by the representation (the set, or its complement).
    pub fn support(&self) -> &BTreeSet<u64> {
        match self {
            CoSet::Finite(s) | CoSet::Cofinite(s) => s,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            CoSet::Finite(s) => s.contains(&n),
            CoSet::Cofinite(s) => !s.contains(&n),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            CoSet::Finite(s) => CoSet::Cofinite(s.clone()),
            CoSet::Cofinite(s) => CoSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &CoSet) -> Self {
        use CoSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Cofinite(b - a),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
        }
    }

    pub fn inter(&self, other: &CoSet) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &CoSet) -> bool {
        use CoSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.is_subset(b),
            (Finite(a), Cofinite(b)) => a.is_disjoint(b),
            (Cofinite(_), Finite(_)) => false,
            (Cofinite(a), Cofinite(b)) => b.is_subset(a),
        }
    }

    pub fn meets(&self, other: &CoSet) -> bool {
        !self.inter(other).is_empty()
    }

    fn max_literal(&self) -> Option<u64> {
        self.support().iter().next_back().copied()
    }
}

impl fmt::Display for CoSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoSet::Finite(s) => write!(f, "{{{}}}", s.iter().join(",")),
            CoSet::Cofinite(s) if s.is_empty() => f.write_str("ℕ"),
            CoSet::Cofinite(s) => write!(f, "ℕ\\{{{}}}", s.iter().join(",")),
        }
    }
}

/// ℕ with the cofinite topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CofNat;

impl CofNat {
    pub fn is_open(&self, s: &CoSet) -> bool {
        s.is_empty() || !s.is_finite()
    }

    pub fn is_closed(&self, s: &CoSet) -> bool {
        s.is_finite() || s.is_whole()
    }

    pub fn closure(&self, s: &CoSet) -> CoSet {
        if s.is_finite() {
            s.clone()
        } else {
            CoSet::whole()
        }
    }

    /// Closed `b, c` covering the closed set `a` with `a` inside neither.
    ///
    /// Closed sets come in four shapes: `∅`, singletons, finite sets with two
    /// or more points, and ℕ. Only the third splits: peel off its least point.
    /// ℕ cannot be covered by two closed sets unless one of them is ℕ.
    pub fn reducibility_witness(&self, a: &CoSet) -> Option<(CoSet, CoSet)> {
        match a {
            CoSet::Finite(s) if s.len() >= 2 => {
                let low = *s.iter().next().unwrap();
                let rest: BTreeSet<u64> = s.iter().copied().filter(|&x| x != low).collect();
                Some((CoSet::singleton(low), CoSet::Finite(rest)))
            }
            _ => None,
        }
    }

    pub fn is_irreducible(&self, a: &CoSet) -> bool {
        self.is_closed(a) && !a.is_empty() && self.reducibility_witness(a).is_none()
    }

    /// Minimal closed sets meeting a single nonempty set `k` (every subset is
    /// compact and saturated here): the singletons of its points.
    pub fn minimal_meeting_single(&self, k: &CoSet) -> SymClosedFamily {
        match k {
            CoSet::Finite(s) => SymClosedFamily::listed(s.iter().map(|&n| CoSet::singleton(n))),
            CoSet::Cofinite(_) => {
                SymClosedFamily { singletons: SingletonPart::Within(k.clone()), ..SymClosedFamily::none() }.normalized()
            }
        }
    }

    /// The cofinite tail `ℕ \ {0, .., m-1}`.
    pub fn tail(m: u64) -> CoSet {
        CoSet::cofinite(0..m)
    }

    /// A member of the tail family that `f` misses, for finite `f`.
    pub fn escaping_tail(&self, f: &CoSet) -> Option<CoSet> {
        match f {
            CoSet::Finite(s) => Some(CofNat::tail(s.iter().next_back().map_or(0, |&m| m + 1))),
            CoSet::Cofinite(_) => None,
        }
    }

    /// ℕ is a minimal closed set meeting every tail: ℕ meets each of them, and
    /// any other closed set is finite and is escaped by some tail.
    pub fn whole_is_kf_via_tails(&self, probes: &[CoSet]) -> Result<(), SymbolicError> {
        for m in 0..8u64 {
            if !CoSet::whole().meets(&CofNat::tail(m)) {
                return Err(SymbolicError::CheckFailed(format!("ℕ misses tail {}", CofNat::tail(m))));
            }
        }
        for f in probes.iter().filter(|f| self.is_closed(f) && !f.is_whole()) {
            let t = self.escaping_tail(f).ok_or_else(|| SymbolicError::CheckFailed(format!("no escape for {f}")))?;
            if t.meets(f) || !t.is_subset(&CofNat::tail(0)) {
                return Err(SymbolicError::CheckFailed(format!("tail {t} does not escape {f}")));
            }
        }
        Ok(())
    }

    pub fn families(&self) -> Result<CofNatFamilies, SymbolicError> {
        CofNatFamilies::compute(self)
    }
}

/// Which singletons a symbolic family contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SingletonPart {
    None,
    All,
    /// `{n}` for each `n` in the set.
    Within(CoSet),
}

/// A family of closed subsets of ℕ: some singletons, possibly ℕ, plus a
/// finite list of further members. Kept normalized, so derived equality is
/// family equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymClosedFamily {
    singletons: SingletonPart,
    whole: bool,
    listed: BTreeSet<CoSet>,
}

impl SymClosedFamily {
    pub fn none() -> Self {
        SymClosedFamily { singletons: SingletonPart::None, whole: false, listed: BTreeSet::new() }
    }

    pub fn all_singletons() -> Self {
        SymClosedFamily { singletons: SingletonPart::All, ..Self::none() }
    }

    pub fn whole_only() -> Self {
        SymClosedFamily { whole: true, ..Self::none() }
    }

    pub fn listed<I: IntoIterator<Item = CoSet>>(members: I) -> Self {
        SymClosedFamily { listed: members.into_iter().collect(), ..Self::none() }.normalized()
    }

    fn singleton_set(&self) -> CoSet {
        match &self.singletons {
            SingletonPart::None => CoSet::empty(),
            SingletonPart::All => CoSet::whole(),
            SingletonPart::Within(s) => s.clone(),
        }
    }

    fn normalized(mut self) -> Self {
        let mut singles = self.singleton_set();
        let mut rest = BTreeSet::new();
        for m in std::mem::take(&mut self.listed) {
            match &m {
                CoSet::Finite(s) if s.len() == 1 => singles = singles.union(&m),
                _ if m.is_whole() => self.whole = true,
                _ => {
                    rest.insert(m);
                }
            }
        }
        self.singletons = if singles.is_empty() {
            SingletonPart::None
        } else if singles.is_whole() {
            SingletonPart::All
        } else {
            SingletonPart::Within(singles)
        };
        self.listed = rest;
        self
    }

    pub fn union(&self, other: &SymClosedFamily) -> Self {
        let mut listed = self.listed.clone();
        listed.extend(other.listed.iter().cloned());
        SymClosedFamily {
            singletons: SingletonPart::Within(self.singleton_set().union(&other.singleton_set())),
            whole: self.whole || other.whole,
            listed,
        }
        .normalized()
    }

    pub fn contains(&self, a: &CoSet) -> bool {
        match a {
            CoSet::Finite(s) if s.len() == 1 => self.singleton_set().contains(*s.iter().next().unwrap()),
            _ if a.is_whole() => self.whole,
            _ => self.listed.contains(a),
        }
    }

    pub fn is_subfamily(&self, other: &SymClosedFamily) -> bool {
        self.singleton_set().is_subset(&other.singleton_set())
            && (!self.whole || other.whole)
            && self.listed.iter().all(|m| other.contains(m))
    }

    pub fn contains_whole(&self) -> bool {
        self.whole
    }

    /// Drop ℕ.
    pub fn without_whole(&self) -> Self {
        SymClosedFamily { whole: false, ..self.clone() }
    }

    /// Some member of `self` that is not in `other`.
    pub fn member_not_in(&self, other: &SymClosedFamily) -> Option<CoSet> {
        let singles = self.singleton_set().inter(&other.singleton_set().complement());
        if let Some(n) = first_member(&singles) {
            return Some(CoSet::singleton(n));
        }
        if self.whole && !other.whole {
            return Some(CoSet::whole());
        }
        self.listed.iter().find(|m| !other.contains(m)).cloned()
    }

    pub fn describe(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.singletons {
            SingletonPart::None => {}
            SingletonPart::All => out.push("{n} for every n ∈ ℕ".to_string()),
            SingletonPart::Within(s) => out.push(format!("{{n}} for every n ∈ {s}")),
        }
        out.extend(self.listed.iter().map(|m| m.to_string()));
        if self.whole {
            out.push("ℕ".to_string());
        }
        out
    }
}

fn first_member(s: &CoSet) -> Option<u64> {
    match s {
        CoSet::Finite(f) => f.iter().next().copied(),
        CoSet::Cofinite(c) => (0..).find(|n| !c.contains(n)),
    }
}

/// `S_c`, `Irr`, `KF` and WD for the cofinite ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofNatFamilies {
    pub sc: SymClosedFamily,
    pub irr: SymClosedFamily,
    pub kf: SymClosedFamily,
    pub wd: WdStatus<SymClosedFamily>,
}

/// One representative for each shape of closed set; the topology is invariant
/// under permutations of ℕ, so a shape is irreducible iff its representative is.
fn closed_shapes() -> Vec<CoSet> {
    vec![CoSet::empty(), CoSet::singleton(0), CoSet::finite([0, 1]), CoSet::whole()]
}

impl CofNatFamilies {
    pub fn compute(x: &CofNat) -> Result<Self, SymbolicError> {
        // S_c: cl{n} = {n}.
        let pc = x.closure(&CoSet::singleton(0));
        if pc != CoSet::singleton(0) {
            return Err(SymbolicError::CheckFailed("cl{0} is not {0}".into()));
        }
        let sc = SymClosedFamily::all_singletons();

        let mut irr = SymClosedFamily::none();
        for shape in closed_shapes() {
            if x.is_irreducible(&shape) {
                irr = irr.union(&match shape {
                    CoSet::Finite(ref s) if s.len() == 1 => SymClosedFamily::all_singletons(),
                    ref w if w.is_whole() => SymClosedFamily::whole_only(),
                    other => {
                        return Err(SymbolicError::CheckFailed(format!("unexpected irreducible shape {other}")));
                    }
                });
            }
        }

        // Single compact saturated K: minimal closed sets meeting K are the
        // singletons of K. Over all K that is every singleton.
        let mut kf = x.minimal_meeting_single(&CoSet::whole());
        for k in [CoSet::singleton(3), CoSet::finite([1, 4]), CoSet::cofinite([0, 2])] {
            if !x.minimal_meeting_single(&k).is_subfamily(&kf) {
                return Err(SymbolicError::CheckFailed(format!("m({{{k}}}) escapes the singletons")));
            }
        }
        // The tail family adds ℕ.
        let probes = vec![CoSet::empty(), CoSet::singleton(7), CoSet::finite([0, 5, 9]), CoSet::finite(0..20)];
        x.whole_is_kf_via_tails(&probes)?;
        kf = kf.union(&SymClosedFamily::whole_only());

        if !sc.is_subfamily(&kf) || !kf.is_subfamily(&irr) {
            return Err(SymbolicError::CheckFailed("S_c ⊆ KF ⊆ Irr fails".into()));
        }
        let wd = if kf == irr {
            WdStatus::Determined { family: irr.clone(), route: WdRoute::Squeeze }
        } else if kf == sc {
            WdStatus::Determined { family: sc.clone(), route: WdRoute::WellFiltered }
        } else {
            WdStatus::Bracket { lower: kf.clone(), upper: irr.clone() }
        };
        Ok(CofNatFamilies { sc, irr, kf, wd })
    }
}

/// A point of `ℕ ∪ {⊤}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SobPoint {
    Nat(u64),
    Top,
}

/// `P_H(G)` for a symbolic family `G ⊆ Irr(ℕ)`: a point `n` for each
/// singleton and `⊤` for ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymHyperSpace {
    members: SymClosedFamily,
}

impl SymHyperSpace {
    pub fn new(members: SymClosedFamily) -> Result<Self, SymbolicError> {
        if !members.listed.is_empty() {
            return Err(SymbolicError::CheckFailed("only singletons and ℕ are irreducible".into()));
        }
        Ok(SymHyperSpace { members })
    }

    pub fn members(&self) -> &SymClosedFamily {
        &self.members
    }

    /// Members beyond the point closures `η(ℕ)`.
    pub fn added_points(&self) -> usize {
        usize::from(self.members.whole)
    }

    pub fn has_top(&self) -> bool {
        self.members.whole
    }

    fn member_of(&self, p: SobPoint) -> CoSet {
        match p {
            SobPoint::Nat(n) => CoSet::singleton(n),
            SobPoint::Top => CoSet::whole(),
        }
    }

    /// `p ∈ ◊U`.
    pub fn in_diamond(&self, p: SobPoint, u: &CoSet) -> bool {
        self.member_of(p).meets(u)
    }

    /// `p ∈ □A`.
    pub fn in_box(&self, p: SobPoint, a: &CoSet) -> bool {
        self.member_of(p).is_subset(a)
    }

    /// `cl{p}` is `□ cl(member)`; returned as the closed set of ℕ it boxes.
    pub fn closure_of(&self, p: SobPoint) -> CoSet {
        self.member_of(p)
    }

    /// Every irreducible closed set `□A` has exactly one generic point.
    ///
    /// `□A` is irreducible iff `A` is, and its generic points are the members
    /// equal to `A`.
    pub fn check_sober(&self) -> Result<(), SymbolicError> {
        for shape in closed_shapes().into_iter().filter(|a| CofNat.is_irreducible(a)) {
            let generic = usize::from(self.members.contains(&shape));
            if generic != 1 {
                return Err(SymbolicError::CheckFailed(format!("□{shape} has {generic} generic points")));
            }
        }
        Ok(())
    }

    /// `η(n) = {n}`: `η⁻¹(◊U) = U`, so `η` is an embedding onto the non-top part.
    pub fn check_eta_embedding(&self, probes: &[CoSet]) -> Result<(), SymbolicError> {
        for u in probes.iter().filter(|u| CofNat.is_open(u)) {
            for n in 0..32u64 {
                if self.in_diamond(SobPoint::Nat(n), u) != u.contains(n) {
                    return Err(SymbolicError::CheckFailed(format!("η⁻¹(◊{u}) ≠ {u} at {n}")));
                }
            }
            if self.has_top() && !u.is_empty() && !self.in_diamond(SobPoint::Top, u) {
                return Err(SymbolicError::CheckFailed(format!("⊤ ∉ ◊{u}")));
            }
        }
        Ok(())
    }
}

fn open_probes() -> Vec<CoSet> {
    vec![CoSet::empty(), CoSet::whole(), CoSet::cofinite([0]), CoSet::cofinite([1, 3, 8]), CofNat::tail(5)]
}

/// `ℕ^s = P_H(Irr(ℕ))`.
pub fn sobrify_cofnat() -> Result<SymHyperSpace, SymbolicError> {
    let fams = CofNat.families()?;
    let s = SymHyperSpace::new(fams.irr)?;
    s.check_sober()?;
    s.check_eta_embedding(&open_probes())?;
    Ok(s)
}

/// `ℕ^w = P_H(WD(ℕ))`.
pub fn wf_reflect_cofnat() -> Result<SymHyperSpace, SymbolicError> {
    let fams = CofNat.families()?;
    let wd = fams.wd.determined().cloned().ok_or_else(|| SymbolicError::CheckFailed("WD(ℕ) not determined".into()))?;
    let w = SymHyperSpace::new(wd)?;
    w.check_eta_embedding(&open_probes())?;
    // Well-filtered: KF = S_c on the result. KF of ℕ^s, like any sober space,
    // is its point closures; that is ensured by the generic-point check.
    w.check_sober()?;
    Ok(w)
}

/// One stage of the Shen iteration inside `ℕ^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymStage {
    pub has_top: bool,
}

impl fmt::Display for SymStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.has_top { "η(ℕ) ∪ {⊤}" } else { "η(ℕ)" })
    }
}

/// Stages `Z_0 = η(ℕ)`, `Z_{β+1} = {z : cl F = ↓z for some F ∈ KF(Z_β)}` up to
/// the first repeat.
pub fn shen_cofnat() -> Result<Vec<SymStage>, SymbolicError> {
    let z = sobrify_cofnat()?;
    let mut stages = vec![SymStage { has_top: false }];
    loop {
        let cur = stages.last().unwrap().clone();
        // Z_0 is a copy of ℕ; once ⊤ is present the stage is all of ℕ^s, which
        // is sober, so its KF sets are its point closures.
        let kf = if cur.has_top {
            SymClosedFamily::all_singletons().union(&SymClosedFamily::whole_only())
        } else {
            CofNat.families()?.kf
        };
        // The closure in ℕ^s of an infinite subset of η(ℕ) is everything, i.e. ↓⊤.
        let next = SymStage { has_top: kf.contains_whole() && z.has_top() };
        if next == cur {
            return Ok(stages);
        }
        stages.push(next);
    }
}

/// Expressions over [`CoSet`] literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoExpr {
    Lit(CoSet),
    Union(Box<CoExpr>, Box<CoExpr>),
    Inter(Box<CoExpr>, Box<CoExpr>),
    Compl(Box<CoExpr>),
}

/// Queries checked by [`window_oracle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoQuery {
    Set(CoExpr),
    Subset(CoExpr, CoExpr),
    Member(u64, CoExpr),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WindowVerdict {
    Agree,
    Disagree(String),
    /// Some literal mentions a number outside the window, so the tail bit
    /// would not describe it.
    Inconclusive,
}

/// A set seen through `{0..n-1}` plus one bit for "everything from `n` on".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Window {
    bits: Subset,
    tail: bool,
}

impl CoExpr {
    pub fn lit(s: CoSet) -> Self {
        CoExpr::Lit(s)
    }

    pub fn union(a: CoExpr, b: CoExpr) -> Self {
        CoExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn inter(a: CoExpr, b: CoExpr) -> Self {
        CoExpr::Inter(Box::new(a), Box::new(b))
    }

    pub fn compl(a: CoExpr) -> Self {
        CoExpr::Compl(Box::new(a))
    }

    pub fn eval(&self) -> CoSet {
        match self {
            CoExpr::Lit(s) => s.clone(),
            CoExpr::Union(a, b) => a.eval().union(&b.eval()),
            CoExpr::Inter(a, b) => a.eval().inter(&b.eval()),
            CoExpr::Compl(a) => a.eval().complement(),
        }
    }

    fn max_literal(&self) -> Option<u64> {
        match self {
            CoExpr::Lit(s) => s.max_literal(),
            CoExpr::Union(a, b) | CoExpr::Inter(a, b) => a.max_literal().max(b.max_literal()),
            CoExpr::Compl(a) => a.max_literal(),
        }
    }

    fn eval_window(&self, n: usize) -> Window {
        let full = Subset::full(n);
        match self {
            CoExpr::Lit(s) => Window { bits: (0..n).filter(|&i| s.contains(i as u64)).collect(), tail: !s.is_finite() },
            CoExpr::Union(a, b) => {
                let (a, b) = (a.eval_window(n), b.eval_window(n));
                Window { bits: a.bits.union(b.bits), tail: a.tail || b.tail }
            }
            CoExpr::Inter(a, b) => {
                let (a, b) = (a.eval_window(n), b.eval_window(n));
                Window { bits: a.bits.inter(b.bits), tail: a.tail && b.tail }
            }
            CoExpr::Compl(a) => {
                let a = a.eval_window(n);
                Window { bits: full.minus(a.bits), tail: !a.tail }
            }
        }
    }
}

fn window_of(s: &CoSet, n: usize) -> Window {
    CoExpr::Lit(s.clone()).eval_window(n)
}

/// Largest window accepted by [`window_oracle`].
pub const WINDOW_MAX: usize = 64;

/// Evaluate a query symbolically and through the window `{0..n-1}` + tail, and
/// compare.
pub fn window_oracle(q: &CoQuery, n: usize) -> WindowVerdict {
    assert!(n <= WINDOW_MAX, "window of {n} exceeds {WINDOW_MAX}");
    let exprs: Vec<&CoExpr> = match q {
        CoQuery::Set(a) => vec![a],
        CoQuery::Subset(a, b) => vec![a, b],
        CoQuery::Member(_, a) => vec![a],
    };
    if exprs.iter().any(|e| e.max_literal().is_some_and(|m| m >= n as u64)) {
        return WindowVerdict::Inconclusive;
    }
    match q {
        CoQuery::Set(a) => {
            let (sym, win) = (a.eval(), a.eval_window(n));
            if window_of(&sym, n) == win {
                WindowVerdict::Agree
            } else {
                WindowVerdict::Disagree(format!("symbolic {sym} vs window {:?} tail={}", win.bits, win.tail))
            }
        }
        CoQuery::Subset(a, b) => {
            let sym = a.eval().is_subset(&b.eval());
            let (wa, wb) = (a.eval_window(n), b.eval_window(n));
            let win = wa.bits.is_subset(wb.bits) && (!wa.tail || wb.tail);
            if sym == win {
                WindowVerdict::Agree
            } else {
                WindowVerdict::Disagree(format!("subset: symbolic {sym}, window {win}"))
            }
        }
        CoQuery::Member(k, a) => {
            if *k >= n as u64 {
                return WindowVerdict::Inconclusive;
            }
            let sym = a.eval().contains(*k);
            let win = a.eval_window(n).bits.contains(*k as usize);
            if sym == win {
                WindowVerdict::Agree
            } else {
                WindowVerdict::Disagree(format!("member {k}: symbolic {sym}, window {win}"))
            }
        }
    }
}

/// Inside the window, every subset `F ⊆ {0..n-1}` (a finite closed set) is
/// missed by some tail `ℕ \ {0..m-1}`, `m ≤ n`, while ℕ meets every tail.
/// Returns the first `F` with no escaping tail, if any.
pub fn kf_witness_window(n: usize) -> Option<Subset> {
    assert!(n <= 20, "window of {n} is too wide for the exhaustive scan");
    let tails: Vec<Window> = (0..=n as u64).map(|m| window_of(&CofNat::tail(m), n)).collect();
    debug_assert!(tails.iter().all(|t| t.tail));
    (0u64..1 << n).map(Subset::from_bits).find(|&f| !tails.iter().any(|t| !t.bits.meets(f)))
}
