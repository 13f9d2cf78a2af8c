//! Closed-set family engines: minimal closed sets meeting a filtered family of
//! compact saturated sets, the topological Rudin refinement, KF enumeration
//! and WD determination.
//!
//! WD membership is defined by quantifying over every continuous map into a
//! well-filtered space, which cannot be evaluated. [`wd_status`] only ever
//! determines `WD(X)` by squeezing it between `KF(X)` and `Irr(X)`, or by the
//! well-filtered characterization `KF(X) = S_c(X)`; otherwise it reports the
//! bracket.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::subset::{canonicalize, Subset};
use crate::topo::{ContinuousMap, FinSpace, TopoError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid filtered family: {0}")]
    InvalidFamily(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("WD family is not determined on this space")]
    KindNotDetermined,
    #[error("{0}")]
    NotMember(String),
    #[error("redundant computations disagree: {0}")]
    PathsDisagree(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
}

/// Which construction produced a [`ClosedFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyRole {
    Sc,
    Irr,
    Kf,
    Wd,
    Custom,
}

impl fmt::Display for FamilyRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyRole::Sc => "Sc",
            FamilyRole::Irr => "Irr",
            FamilyRole::Kf => "KF",
            FamilyRole::Wd => "WD",
            FamilyRole::Custom => "custom",
        })
    }
}

/// A deduplicated family of closed sets of one space, in the global subset order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedFamily {
    role: FamilyRole,
    members: Vec<Subset>,
}

impl ClosedFamily {
    pub fn new(role: FamilyRole, mut members: Vec<Subset>) -> Self {
        canonicalize(&mut members);
        ClosedFamily { role, members }
    }

    pub fn role(&self) -> FamilyRole {
        self.role
    }

    pub fn with_role(mut self, role: FamilyRole) -> Self {
        self.role = role;
        self
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Subset) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    /// Memberwise inclusion of families.
    pub fn is_subfamily(&self, other: &ClosedFamily) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    /// Same members, ignoring the role tag.
    pub fn same_members(&self, other: &ClosedFamily) -> bool {
        self.members == other.members
    }

    /// Drop one member (the whole space, for the starred variants).
    pub fn without(&self, a: Subset) -> ClosedFamily {
        ClosedFamily { role: self.role, members: self.members.iter().copied().filter(|&m| m != a).collect() }
    }

    pub fn minus(&self, other: &ClosedFamily) -> Vec<Subset> {
        self.members.iter().copied().filter(|&a| !other.contains(a)).collect()
    }

    pub fn show(&self, x: &FinSpace) -> Vec<String> {
        self.members.iter().map(|&a| x.show(a)).collect()
    }
}

/// A finite filtered family of nonempty compact saturated sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredFamily {
    members: Vec<Subset>,
}

impl FilteredFamily {
    pub fn new(x: &FinSpace, members: Vec<Subset>) -> Result<Self, FamilyError> {
        let mut members = members;
        canonicalize(&mut members);
        if members.is_empty() {
            return Err(FamilyError::InvalidFamily("family is empty".into()));
        }
        for &k in &members {
            if k.is_empty() {
                return Err(FamilyError::InvalidFamily("member is empty".into()));
            }
            if !k.is_subset(x.carrier()) || !x.is_saturated(k) || !x.is_compact(k) {
                return Err(FamilyError::InvalidFamily(format!("{} is not compact saturated", x.show(k))));
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !members.iter().any(|&c| c.is_subset(a) && c.is_subset(b)) {
                    return Err(FamilyError::InvalidFamily(format!(
                        "{} and {} have no lower bound in the family",
                        x.show(a),
                        x.show(b)
                    )));
                }
            }
        }
        Ok(FilteredFamily { members })
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// The member contained in every other member, if there is one.
    pub fn least_member(&self) -> Option<Subset> {
        self.members.iter().copied().find(|&k| self.members.iter().all(|&m| k.is_subset(m)))
    }
}

/// Closed sets meeting every member of `family`, minimal under inclusion.
pub fn minimal_meeting(x: &FinSpace, family: &[Subset]) -> Vec<Subset> {
    let mut minimal: Vec<Subset> = Vec::new();
    // Closed sets come by increasing cardinality, so a set is minimal exactly
    // when no previously kept minimal set lies inside it.
    for &c in x.closed_sets() {
        if family.iter().all(|&k| c.meets(k)) && !minimal.iter().any(|&m| m.is_subset(c)) {
            minimal.push(c);
        }
    }
    minimal
}

/// `m(𝒦)`, computed over all members and again from the least member alone.
pub fn minimal_closed_meeting(x: &FinSpace, family: &FilteredFamily) -> Result<ClosedFamily, FamilyError> {
    let full = ClosedFamily::new(FamilyRole::Custom, minimal_meeting(x, family.members()));
    let least = family
        .least_member()
        .ok_or_else(|| FamilyError::PathsDisagree("finite filtered family without a least member".into()))?;
    let reduced = ClosedFamily::new(FamilyRole::Custom, minimal_meeting(x, &[least]));
    if full != reduced {
        return Err(FamilyError::PathsDisagree(format!(
            "m(K) = {:?} but m(least member) = {:?}",
            full.show(x),
            reduced.show(x)
        )));
    }
    Ok(full)
}

/// A minimal closed subset of `c` that still meets every member of `family`,
/// the first such in the global subset order. Checked to be irreducible.
pub fn rudin_refine(x: &FinSpace, family: &FilteredFamily, c: Subset) -> Result<Subset, FamilyError> {
    if !x.is_closed(c) {
        return Err(FamilyError::PreconditionViolated(format!("{} is not closed", x.show(c))));
    }
    if let Some(&k) = family.members().iter().find(|&&k| !c.meets(k)) {
        return Err(FamilyError::PreconditionViolated(format!("{} misses member {}", x.show(c), x.show(k))));
    }
    // By cardinality first, so the first hit has no smaller candidate inside it.
    let refined = x
        .closed_sets()
        .iter()
        .copied()
        .find(|&a| a.is_subset(c) && family.members().iter().all(|&k| a.meets(k)))
        .expect("c itself qualifies");
    if !x.is_irreducible(refined) {
        return Err(FamilyError::PathsDisagree(format!("refinement {} is not irreducible", x.show(refined))));
    }
    Ok(refined)
}

/// Union of `m({K})` over every nonempty compact saturated `K`.
pub fn kf_sets_single_scan(x: &FinSpace) -> ClosedFamily {
    let members = x.compact_saturated_sets().into_iter().flat_map(|k| minimal_meeting(x, &[k])).collect();
    ClosedFamily::new(FamilyRole::Kf, members)
}

/// Union of `m(𝒦)` over the multi-member families `{K} ∪ {sat(K ∪ {p})}`.
pub fn kf_sets_multi_scan(x: &FinSpace) -> ClosedFamily {
    let mut members = Vec::new();
    for k in x.compact_saturated_sets() {
        let mut family = vec![k];
        for p in x.carrier().minus(k).iter() {
            family.push(x.saturation(k.with(p)));
        }
        members.extend(minimal_meeting(x, &family));
    }
    ClosedFamily::new(FamilyRole::Kf, members)
}

/// `KF(X)`: both scans are run and must agree.
pub fn kf_sets(x: &FinSpace) -> Result<ClosedFamily, FamilyError> {
    let single = kf_sets_single_scan(x);
    let multi = kf_sets_multi_scan(x);
    if single != multi {
        return Err(FamilyError::PathsDisagree(format!(
            "KF single-member scan {:?} vs multi-member scan {:?}",
            single.show(x),
            multi.show(x)
        )));
    }
    Ok(single)
}

/// How a WD family was pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WdRoute {
    /// `KF(X) = Irr(X)` squeezes `WD(X)` to `Irr(X)`.
    Squeeze,
    /// `KF(X) = S_c(X)` means `X` is well-filtered, so `WD(X) = S_c(X)`.
    WellFiltered,
}

/// `WD(X)`, either determined or known only up to `KF(X) ⊆ WD(X) ⊆ Irr(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WdStatus<F> {
    Determined { family: F, route: WdRoute },
    Bracket { lower: F, upper: F },
}

impl<F> WdStatus<F> {
    pub fn determined(&self) -> Option<&F> {
        match self {
            WdStatus::Determined { family, .. } => Some(family),
            WdStatus::Bracket { .. } => None,
        }
    }

    pub fn is_determined(&self) -> bool {
        self.determined().is_some()
    }
}

/// Decide `WD(X)` from `KF(X)`, `S_c(X)` and `Irr(X)`.
pub fn wd_from_parts(sc: &ClosedFamily, kf: &ClosedFamily, irr: &ClosedFamily) -> WdStatus<ClosedFamily> {
    if kf.same_members(irr) {
        WdStatus::Determined { family: irr.clone().with_role(FamilyRole::Wd), route: WdRoute::Squeeze }
    } else if kf.same_members(sc) {
        WdStatus::Determined { family: sc.clone().with_role(FamilyRole::Wd), route: WdRoute::WellFiltered }
    } else {
        WdStatus::Bracket { lower: kf.clone(), upper: irr.clone() }
    }
}

pub fn wd_status(x: &FinSpace) -> Result<WdStatus<ClosedFamily>, FamilyError> {
    Ok(SpaceFamilies::compute(x)?.wd)
}

/// `S_c`, `Irr`, `KF` and the WD status of one space, computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceFamilies {
    pub sc: ClosedFamily,
    pub irr: ClosedFamily,
    pub kf: ClosedFamily,
    pub wd: WdStatus<ClosedFamily>,
}

impl SpaceFamilies {
    pub fn compute(x: &FinSpace) -> Result<Self, FamilyError> {
        let sc = x.point_closure_family();
        let irr = x.irreducible_closed_sets();
        let kf = kf_sets(x)?;
        if !sc.is_subfamily(&kf) || !kf.is_subfamily(&irr) {
            return Err(FamilyError::PathsDisagree("S_c ⊆ KF ⊆ Irr fails".into()));
        }
        let wd = wd_from_parts(&sc, &kf, &irr);
        Ok(SpaceFamilies { sc, irr, kf, wd })
    }

    pub fn wd_family(&self) -> Result<&ClosedFamily, FamilyError> {
        self.wd.determined().ok_or(FamilyError::KindNotDetermined)
    }
}

/// The three closed-set kinds preserved by continuous images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    Irr,
    Kf,
    Wd,
}

fn family_of_kind(fams: &SpaceFamilies, kind: FamilyKind) -> Result<&ClosedFamily, FamilyError> {
    match kind {
        FamilyKind::Irr => Ok(&fams.irr),
        FamilyKind::Kf => Ok(&fams.kf),
        FamilyKind::Wd => fams.wd_family(),
    }
}

/// `cl(f(A))`, checked to lie in the target family of the same kind.
pub fn pushforward_family(f: &ContinuousMap<'_>, a: Subset, kind: FamilyKind) -> Result<Subset, FamilyError> {
    let (x, y) = (f.source(), f.target());
    let source = SpaceFamilies::compute(x)?;
    if !family_of_kind(&source, kind)?.contains(a) {
        return Err(FamilyError::PreconditionViolated(format!(
            "{} is not in the {kind:?} family of the source",
            x.show(a)
        )));
    }
    let target = SpaceFamilies::compute(y)?;
    let image = y.closure(f.image(a));
    if !family_of_kind(&target, kind)?.contains(image) {
        return Err(FamilyError::NotMember(format!(
            "cl(f({})) = {} is not in the {kind:?} family of the target",
            x.show(a),
            y.show(image)
        )));
    }
    Ok(image)
}
