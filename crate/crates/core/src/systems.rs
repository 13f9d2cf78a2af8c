//! The four built-in subset systems `S`, `KF`, `WD`, `Irr` as evaluators over
//! finite and symbolic spaces, the classifier panel and the H-model table.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::families::{ClosedFamily, SpaceFamilies, WdStatus};
use crate::reflections::{pair_conditions_check, Condition, ModelContext, PairWitness, ReflectionError};
use crate::subset::Subset;
use crate::symbolic::{CoSet, CofNat, CofNatFamilies, SymClosedFamily, SymbolicError};
use crate::topo::{FinSpace, TopoError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemsError {
    #[error("WD family is not determined")]
    WdNotDetermined,
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Topo(#[from] TopoError),
}

impl From<crate::families::FamilyError> for SystemsError {
    fn from(e: crate::families::FamilyError) -> Self {
        SystemsError::Reflection(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SystemKind {
    #[serde(rename = "SC")]
    Sc,
    #[serde(rename = "KF")]
    Kf,
    #[serde(rename = "WD")]
    Wd,
    #[serde(rename = "IRR")]
    Irr,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] = [SystemKind::Sc, SystemKind::Kf, SystemKind::Wd, SystemKind::Irr];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Sc => "SC",
            SystemKind::Kf => "KF",
            SystemKind::Wd => "WD",
            SystemKind::Irr => "IRR",
        }
    }

    pub fn parse(s: &str) -> Option<SystemKind> {
        SystemKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetSystemId {
    pub kind: SystemKind,
    pub starred: bool,
}

impl SubsetSystemId {
    pub fn plain(kind: SystemKind) -> Self {
        SubsetSystemId { kind, starred: false }
    }

    pub fn starred(kind: SystemKind) -> Self {
        SubsetSystemId { kind, starred: true }
    }
}

impl fmt::Display for SubsetSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, if self.starred { "*" } else { "" })
    }
}

/// Three-valued verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tri {
    True,
    False,
    Undetermined,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Undetermined => None,
        }
    }
}

/// `true`, `false`, or the string `"undetermined"`.
impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_bool() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("undetermined"),
        }
    }
}

/// A family, or the bracket it is known to lie in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluated<F> {
    Determined(F),
    Bracket { lower: F, upper: F },
}

/// Families of one space, as the classifier sees them.
pub trait SystemEvaluator {
    type Family: Clone + PartialEq + fmt::Debug;

    fn sc(&self) -> &Self::Family;
    fn kf(&self) -> &Self::Family;
    fn irr(&self) -> &Self::Family;
    fn wd(&self) -> &WdStatus<Self::Family>;
    /// Drop the whole space.
    fn starred(&self, f: &Self::Family) -> Self::Family;
    fn is_subfamily(&self, a: &Self::Family, b: &Self::Family) -> bool;
    /// Describe some member of `a` missing from `b`.
    fn member_not_in(&self, a: &Self::Family, b: &Self::Family) -> Option<String>;
    fn describe(&self, f: &Self::Family) -> Vec<String>;
}

/// `H_c(X)` or `H*_c(X)`.
pub fn hc<E: SystemEvaluator>(ev: &E, id: SubsetSystemId) -> Evaluated<E::Family> {
    let base = match id.kind {
        SystemKind::Sc => Evaluated::Determined(ev.sc().clone()),
        SystemKind::Kf => Evaluated::Determined(ev.kf().clone()),
        SystemKind::Irr => Evaluated::Determined(ev.irr().clone()),
        SystemKind::Wd => match ev.wd() {
            WdStatus::Determined { family, .. } => Evaluated::Determined(family.clone()),
            WdStatus::Bracket { lower, upper } => Evaluated::Bracket { lower: lower.clone(), upper: upper.clone() },
        },
    };
    if !id.starred {
        return base;
    }
    match base {
        Evaluated::Determined(f) => Evaluated::Determined(ev.starred(&f)),
        Evaluated::Bracket { lower, upper } => {
            Evaluated::Bracket { lower: ev.starred(&lower), upper: ev.starred(&upper) }
        }
    }
}

/// A flag with a witness for `false` (or a reason for `undetermined`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: Tri,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Flag {
    fn yes() -> Self {
        Flag { value: Tri::True, witness: None }
    }
}

fn diff_witness<E: SystemEvaluator>(ev: &E, a: &E::Family, b: &E::Family, an: &str, bn: &str) -> Option<String> {
    ev.member_not_in(a, b)
        .map(|m| format!("{m} ∈ {an} \\ {bn}"))
        .or_else(|| ev.member_not_in(b, a).map(|m| format!("{m} ∈ {bn} \\ {an}")))
}

/// Decide `H_c(X) = G_c(X)`. Under a bracket `[L, U]` the answer is `false`
/// when the other family falls outside the bracket, and undetermined otherwise.
pub fn compare<E: SystemEvaluator>(ev: &E, a: SubsetSystemId, b: SubsetSystemId) -> Flag {
    if a == b {
        return Flag::yes();
    }
    let (an, bn) = (a.to_string(), b.to_string());
    match (hc(ev, a), hc(ev, b)) {
        (Evaluated::Determined(x), Evaluated::Determined(y)) => match diff_witness(ev, &x, &y, &an, &bn) {
            None => Flag::yes(),
            Some(w) => Flag { value: Tri::False, witness: Some(w) },
        },
        (Evaluated::Bracket { lower, upper }, Evaluated::Determined(x))
        | (Evaluated::Determined(x), Evaluated::Bracket { lower, upper }) => {
            if lower == upper {
                let w = diff_witness(ev, &x, &lower, &an, &bn);
                return Flag { value: Tri::from_bool(w.is_none()), witness: w };
            }
            if let Some(m) = ev.member_not_in(&lower, &x) {
                Flag {
                    value: Tri::False,
                    witness: Some(format!("{m} is forced into WD but is missing from the other side")),
                }
            } else if let Some(m) = ev.member_not_in(&x, &upper) {
                Flag { value: Tri::False, witness: Some(format!("{m} lies outside Irr, so outside WD")) }
            } else {
                Flag { value: Tri::Undetermined, witness: Some("WD is only known between KF and Irr".into()) }
            }
        }
        (Evaluated::Bracket { lower: l1, upper: u1 }, Evaluated::Bracket { lower: l2, upper: u2 }) => {
            if l1 == u1 && l2 == u2 {
                let w = diff_witness(ev, &l1, &l2, &an, &bn);
                Flag { value: Tri::from_bool(w.is_none()), witness: w }
            } else {
                Flag { value: Tri::Undetermined, witness: Some("WD is only known between KF and Irr".into()) }
            }
        }
    }
}

/// Provenance of a distinctness fact between two subset systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum Provenance {
    /// Separated by a space this library evaluates.
    Computed { space: String, witness: String },
    /// Separated by an example the library does not mechanize.
    Cited { reference: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinctness {
    pub a: SystemKind,
    pub b: SystemKind,
    pub provenance: Provenance,
}

/// Pairs of built-in systems known to differ on some T0 space. Pairs the
/// cofinite ℕ separates are computed; the rest are cited.
pub fn distinctness_registry() -> Result<Vec<Distinctness>, SystemsError> {
    let cof = CofNatSystems::new()?;
    let mut out = Vec::new();
    for (i, &a) in SystemKind::ALL.iter().enumerate() {
        for &b in &SystemKind::ALL[i + 1..] {
            let flag = compare(&cof, SubsetSystemId::plain(a), SubsetSystemId::plain(b));
            let provenance = if flag.value == Tri::False {
                Provenance::Computed { space: "cofinite-nat".into(), witness: flag.witness.unwrap_or_default() }
            } else {
                let reference = match (a, b) {
                    (SystemKind::Kf, SystemKind::Wd) => {
                        "WD sets that are not KF sets exist in the literature on well-filtered reflections; not mechanized"
                    }
                    _ => "co-countable reals: well-filtered, so KF = WD = S_c, but not Rudin; not mechanized",
                };
                Provenance::Cited { reference: reference.into() }
            };
            out.push(Distinctness { a, b, provenance });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HModelFlag {
    pub value: Tri,
    /// The first agreeing pair of distinct systems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(SystemKind, SystemKind)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    /// Only the four built-in systems are tried, so `false` is not final.
    pub lower_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HModelTable {
    pub systems: [SystemKind; 4],
    pub matrix: Vec<Vec<Tri>>,
    pub starred: Vec<Vec<Tri>>,
    pub h_model: HModelFlag,
    pub weak_h_model: HModelFlag,
}

fn h_flag(matrix: &[Vec<Tri>], registry: &[Distinctness]) -> HModelFlag {
    let index = |k: SystemKind| SystemKind::ALL.iter().position(|&x| x == k).unwrap();
    // Computed separations first, then cited ones, KF vs WD last.
    let rank = |d: &&Distinctness| match (&d.provenance, d.a, d.b) {
        (Provenance::Computed { .. }, _, _) => 0,
        (Provenance::Cited { .. }, SystemKind::Kf, SystemKind::Wd) => 2,
        (Provenance::Cited { .. }, _, _) => 1,
    };
    let mut ordered: Vec<&Distinctness> = registry.iter().collect();
    ordered.sort_by_key(rank);
    if let Some(d) = ordered.iter().find(|d| matrix[index(d.a)][index(d.b)].is_true()) {
        return HModelFlag {
            value: Tri::True,
            pair: Some((d.a, d.b)),
            provenance: Some(d.provenance.clone()),
            lower_bound: true,
        };
    }
    let open = registry.iter().any(|d| matrix[index(d.a)][index(d.b)] == Tri::Undetermined);
    HModelFlag {
        value: if open { Tri::Undetermined } else { Tri::False },
        pair: None,
        provenance: None,
        lower_bound: true,
    }
}

pub fn hmodel_table<E: SystemEvaluator>(ev: &E) -> Result<HModelTable, SystemsError> {
    let mat = |starred: bool| -> Vec<Vec<Tri>> {
        SystemKind::ALL
            .iter()
            .map(|&a| {
                SystemKind::ALL
                    .iter()
                    .map(|&b| {
                        compare(ev, SubsetSystemId { kind: a, starred }, SubsetSystemId { kind: b, starred }).value
                    })
                    .collect()
            })
            .collect()
    };
    let registry = distinctness_registry()?;
    let (matrix, starred) = (mat(false), mat(true));
    let h_model = h_flag(&matrix, &registry);
    let weak_h_model = h_flag(&starred, &registry);
    Ok(HModelTable { systems: SystemKind::ALL, matrix, starred, h_model, weak_h_model })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierPanel {
    pub sober: Flag,
    pub well_filtered: Flag,
    pub rudin: Flag,
    pub wd_space: Flag,
    pub wk_space: Flag,
    pub weak_sober: Flag,
    pub weak_well_filtered: Flag,
    pub h_model: HModelFlag,
    pub weak_h_model: HModelFlag,
}

impl ClassifierPanel {
    /// `(premise, conclusion)` arrows among the flags that must hold.
    pub const ARROWS: [(&'static str, &'static str); 5] = [
        ("sober", "well_filtered"),
        ("sober", "rudin"),
        ("rudin", "wd_space"),
        ("rudin", "wk_space"),
        ("well_filtered", "wk_space"),
    ];

    pub fn flag(&self, name: &str) -> Option<&Flag> {
        Some(match name {
            "sober" => &self.sober,
            "well_filtered" => &self.well_filtered,
            "rudin" => &self.rudin,
            "wd_space" => &self.wd_space,
            "wk_space" => &self.wk_space,
            "weak_sober" => &self.weak_sober,
            "weak_well_filtered" => &self.weak_well_filtered,
            _ => return None,
        })
    }

    /// Arrows violated with both ends determined.
    pub fn implication_violations(&self) -> Vec<String> {
        ClassifierPanel::ARROWS
            .iter()
            .filter(|(a, b)| {
                let (a, b) = (self.flag(a).unwrap().value, self.flag(b).unwrap().value);
                a == Tri::True && b == Tri::False
            })
            .map(|(a, b)| format!("{a} ⇒ {b}"))
            .collect()
    }

    /// The flags preserved between `Max(P̂)` and `ΣP̂`.
    pub fn preserved(&self) -> [(&'static str, Tri); 5] {
        [
            ("sober", self.sober.value),
            ("well_filtered", self.well_filtered.value),
            ("rudin", self.rudin.value),
            ("wd_space", self.wd_space.value),
            ("wk_space", self.wk_space.value),
        ]
    }
}

pub fn classify<E: SystemEvaluator>(ev: &E) -> Result<ClassifierPanel, SystemsError> {
    use SystemKind::*;
    let eq = |a: SystemKind, b: SystemKind, starred: bool| {
        compare(ev, SubsetSystemId { kind: a, starred }, SubsetSystemId { kind: b, starred })
    };
    let table = hmodel_table(ev)?;
    Ok(ClassifierPanel {
        sober: eq(Irr, Sc, false),
        well_filtered: eq(Kf, Sc, false),
        rudin: eq(Kf, Irr, false),
        wd_space: eq(Wd, Irr, false),
        wk_space: eq(Kf, Wd, false),
        weak_sober: eq(Irr, Sc, true),
        weak_well_filtered: eq(Kf, Sc, true),
        h_model: table.h_model,
        weak_h_model: table.weak_h_model,
    })
}

/// Evaluator over a finite T0 space.
#[derive(Debug, Clone)]
pub struct FiniteSystems<'a> {
    space: &'a FinSpace,
    fams: SpaceFamilies,
}

impl<'a> FiniteSystems<'a> {
    pub fn new(space: &'a FinSpace) -> Result<Self, SystemsError> {
        space.require_t0()?;
        Ok(FiniteSystems { space, fams: SpaceFamilies::compute(space)? })
    }

    pub fn with_families(space: &'a FinSpace, fams: SpaceFamilies) -> Self {
        FiniteSystems { space, fams }
    }

    pub fn families(&self) -> &SpaceFamilies {
        &self.fams
    }

    pub fn family(&self, kind: SystemKind) -> Result<&ClosedFamily, SystemsError> {
        Ok(match kind {
            SystemKind::Sc => &self.fams.sc,
            SystemKind::Kf => &self.fams.kf,
            SystemKind::Irr => &self.fams.irr,
            SystemKind::Wd => self.fams.wd.determined().ok_or(SystemsError::WdNotDetermined)?,
        })
    }
}

impl SystemEvaluator for FiniteSystems<'_> {
    type Family = ClosedFamily;

    fn sc(&self) -> &ClosedFamily {
        &self.fams.sc
    }

    fn kf(&self) -> &ClosedFamily {
        &self.fams.kf
    }

    fn irr(&self) -> &ClosedFamily {
        &self.fams.irr
    }

    fn wd(&self) -> &WdStatus<ClosedFamily> {
        &self.fams.wd
    }

    fn starred(&self, f: &ClosedFamily) -> ClosedFamily {
        f.without(self.space.carrier())
    }

    fn is_subfamily(&self, a: &ClosedFamily, b: &ClosedFamily) -> bool {
        a.is_subfamily(b)
    }

    fn member_not_in(&self, a: &ClosedFamily, b: &ClosedFamily) -> Option<String> {
        a.minus(b).first().map(|&m| self.space.show(m))
    }

    fn describe(&self, f: &ClosedFamily) -> Vec<String> {
        f.show(self.space)
    }
}

/// Evaluator over the cofinite ℕ.
#[derive(Debug, Clone)]
pub struct CofNatSystems {
    fams: CofNatFamilies,
}

impl CofNatSystems {
    pub fn new() -> Result<Self, SystemsError> {
        Ok(CofNatSystems { fams: CofNat.families()? })
    }

    pub fn families(&self) -> &CofNatFamilies {
        &self.fams
    }
}

impl SystemEvaluator for CofNatSystems {
    type Family = SymClosedFamily;

    fn sc(&self) -> &SymClosedFamily {
        &self.fams.sc
    }

    fn kf(&self) -> &SymClosedFamily {
        &self.fams.kf
    }

    fn irr(&self) -> &SymClosedFamily {
        &self.fams.irr
    }

    fn wd(&self) -> &WdStatus<SymClosedFamily> {
        &self.fams.wd
    }

    fn starred(&self, f: &SymClosedFamily) -> SymClosedFamily {
        f.without_whole()
    }

    fn is_subfamily(&self, a: &SymClosedFamily, b: &SymClosedFamily) -> bool {
        a.is_subfamily(b)
    }

    fn member_not_in(&self, a: &SymClosedFamily, b: &SymClosedFamily) -> Option<String> {
        a.member_not_in(b).map(|m: CoSet| m.to_string())
    }

    fn describe(&self, f: &SymClosedFamily) -> Vec<String> {
        f.describe()
    }
}

/// The closure condition `H_c(P̂) ⊆ H(P̂)`. Members of `KF`, `WD` and `Irr`
/// are closed under taking closures, so a closed set belongs to `H(P̂)`
/// exactly when it is in `H_c(P̂)`. `S(P̂)` holds singletons only; its closed
/// members are checked against the closure hull `{cl{x}}` instead.
fn closure_condition(ctx: &ModelContext, kind: SystemKind, fam: &ClosedFamily) -> Condition {
    let sigma = &ctx.sigma;
    let in_h = |a: Subset| -> bool {
        match kind {
            SystemKind::Sc => (0..sigma.len()).any(|x| sigma.point_closure(x) == a),
            SystemKind::Kf => ctx.sigma_fams.kf.contains(sigma.closure(a)),
            SystemKind::Irr => ctx.sigma_fams.irr.contains(sigma.closure(a)),
            SystemKind::Wd => ctx.sigma_fams.wd.determined().is_some_and(|w| w.contains(sigma.closure(a))),
        }
    };
    fam.members()
        .iter()
        .find(|&&a| !in_h(a))
        .map_or_else(Condition::ok, |&a| Condition::fail(format!("{} ∉ H(P̂)", sigma.show(a))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelDeterminedReport {
    pub system: SystemKind,
    pub closure: Condition,
    pub pair: PairWitness,
}

impl ModelDeterminedReport {
    pub fn holds(&self) -> bool {
        self.closure.holds && self.pair.holds()
    }
}

/// The closure condition, the pair conditions and
/// `j(H_c(Max(P̂))) = ↑_{H_c(P̂)} η(Max(P̂))` on this instance.
pub fn dcpo_model_determined_check(
    ctx: &ModelContext,
    kind: SystemKind,
) -> Result<ModelDeterminedReport, SystemsError> {
    let sigma = FiniteSystems::with_families(&ctx.sigma, ctx.sigma_fams.clone());
    let max = FiniteSystems::with_families(&ctx.max, ctx.max_fams.clone());
    let hp = sigma.family(kind)?.clone();
    let hm = max.family(kind)?;
    let closure = closure_condition(ctx, kind, &hp);
    let mut pair = pair_conditions_check(ctx, &hp)?;
    let lhs: Vec<Subset> = hm.members().iter().map(|&a| ctx.lift(a)).collect();
    let eta_max: Vec<Subset> = ctx.max_mask.iter().map(|t| ctx.sigma.point_closure(t)).collect();
    let rhs: Vec<Subset> = hp.members().iter().copied().filter(|b| eta_max.iter().any(|c| c.is_subset(*b))).collect();
    let (l, r) = (
        ClosedFamily::new(crate::families::FamilyRole::Custom, lhs),
        ClosedFamily::new(crate::families::FamilyRole::Custom, rhs),
    );
    pair.p4 = Some(match l.minus(&r).first().or(r.minus(&l).first()) {
        None => Condition::ok(),
        Some(&a) => Condition::fail(format!("{} is on one side only", ctx.sigma.show(a))),
    });
    Ok(ModelDeterminedReport { system: kind, closure, pair })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeyVerdict {
    pub h: SystemKind,
    pub g: SystemKind,
    pub model_equal: bool,
    pub max_equal: bool,
    pub starred_model_equal: bool,
    pub starred_max_equal: bool,
}

impl KeyVerdict {
    pub fn holds(&self) -> bool {
        self.model_equal == self.max_equal && self.starred_model_equal == self.starred_max_equal
    }
}

/// `H_c(P̂) = G_c(P̂) ⇔ H_c(Max(P̂)) = G_c(Max(P̂))`, plain and starred.
pub fn proposition_key_check(ctx: &ModelContext, h: SystemKind, g: SystemKind) -> Result<KeyVerdict, SystemsError> {
    let sigma = FiniteSystems::with_families(&ctx.sigma, ctx.sigma_fams.clone());
    let max = FiniteSystems::with_families(&ctx.max, ctx.max_fams.clone());
    let eq = |ev: &FiniteSystems<'_>, starred: bool| -> Result<bool, SystemsError> {
        let (a, b) = (ev.family(h)?, ev.family(g)?);
        Ok(if starred { ev.starred(a) == ev.starred(b) } else { a.same_members(b) })
    };
    Ok(KeyVerdict {
        h,
        g,
        model_equal: eq(&sigma, false)?,
        max_equal: eq(&max, false)?,
        starred_model_equal: eq(&sigma, true)?,
        starred_max_equal: eq(&max, true)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::test_support::arb_space;
    use proptest::prelude::*;

    fn cofnat_panel() -> ClassifierPanel {
        classify(&CofNatSystems::new().unwrap()).unwrap()
    }

    #[test]
    fn hc_examples() {
        let sierp = fixtures::sierpinski();
        let ev = FiniteSystems::new(&sierp).unwrap();
        let Evaluated::Determined(f) = hc(&ev, SubsetSystemId::plain(SystemKind::Sc)) else { panic!() };
        assert_eq!(ev.describe(&f), vec!["{0}", "{0,1}"]);
        let cof = CofNatSystems::new().unwrap();
        let Evaluated::Determined(f) = hc(&cof, SubsetSystemId::starred(SystemKind::Irr)) else { panic!() };
        assert_eq!(f, SymClosedFamily::all_singletons());
        let d = fixtures::discrete(&["p", "q"]);
        let ev = FiniteSystems::new(&d).unwrap();
        let Evaluated::Determined(f) = hc(&ev, SubsetSystemId::plain(SystemKind::Kf)) else { panic!() };
        assert_eq!(ev.describe(&f), vec!["{p}", "{q}"]);
    }

    #[test]
    fn cofinite_panel() {
        let p = cofnat_panel();
        assert_eq!(p.sober.value, Tri::False);
        assert_eq!(p.well_filtered.value, Tri::False);
        assert_eq!(p.rudin.value, Tri::True);
        assert_eq!(p.wd_space.value, Tri::True);
        assert_eq!(p.wk_space.value, Tri::True);
        assert_eq!(p.weak_sober.value, Tri::True);
        assert_eq!(p.weak_well_filtered.value, Tri::True);
        assert_eq!(p.sober.witness.as_deref(), Some("ℕ ∈ IRR \\ SC"));
        assert!(p.implication_violations().is_empty());
    }

    #[test]
    fn hmodel_examples() {
        let t = hmodel_table(&CofNatSystems::new().unwrap()).unwrap();
        let row = |i: usize| t.matrix[i].clone();
        assert_eq!(row(0), vec![Tri::True, Tri::False, Tri::False, Tri::False]);
        assert_eq!(row(1), vec![Tri::False, Tri::True, Tri::True, Tri::True]);
        assert!(t.starred.iter().flatten().all(|v| v.is_true()));
        assert_eq!(t.h_model.value, Tri::True);
        assert_eq!(t.weak_h_model.value, Tri::True);
        assert_eq!(t.h_model.pair, Some((SystemKind::Kf, SystemKind::Irr)));
        assert!(matches!(t.h_model.provenance, Some(Provenance::Cited { .. })));

        let sierp = fixtures::sierpinski();
        let t = hmodel_table(&FiniteSystems::new(&sierp).unwrap()).unwrap();
        assert!(t.matrix.iter().flatten().all(|v| v.is_true()));
        assert_eq!(t.h_model.pair, Some((SystemKind::Sc, SystemKind::Kf)));
        assert!(matches!(t.h_model.provenance, Some(Provenance::Computed { .. })));
    }

    #[test]
    fn registry_marks_cited_pairs() {
        let reg = distinctness_registry().unwrap();
        assert_eq!(reg.len(), 6);
        let cited: Vec<(SystemKind, SystemKind)> =
            reg.iter().filter(|d| matches!(d.provenance, Provenance::Cited { .. })).map(|d| (d.a, d.b)).collect();
        assert_eq!(
            cited,
            vec![
                (SystemKind::Kf, SystemKind::Wd),
                (SystemKind::Kf, SystemKind::Irr),
                (SystemKind::Wd, SystemKind::Irr)
            ]
        );
    }

    #[test]
    fn bracket_comparison_contract() {
        struct Fake(WdStatus<ClosedFamily>, ClosedFamily, ClosedFamily, ClosedFamily);
        impl SystemEvaluator for Fake {
            type Family = ClosedFamily;
            fn sc(&self) -> &ClosedFamily {
                &self.1
            }
            fn kf(&self) -> &ClosedFamily {
                &self.2
            }
            fn irr(&self) -> &ClosedFamily {
                &self.3
            }
            fn wd(&self) -> &WdStatus<ClosedFamily> {
                &self.0
            }
            fn starred(&self, f: &ClosedFamily) -> ClosedFamily {
                f.clone()
            }
            fn is_subfamily(&self, a: &ClosedFamily, b: &ClosedFamily) -> bool {
                a.is_subfamily(b)
            }
            fn member_not_in(&self, a: &ClosedFamily, b: &ClosedFamily) -> Option<String> {
                a.minus(b).first().map(|s| format!("{s:?}"))
            }
            fn describe(&self, f: &ClosedFamily) -> Vec<String> {
                f.members().iter().map(|s| format!("{s:?}")).collect()
            }
        }
        use crate::families::FamilyRole as R;
        let s = |v: &[u64]| v.iter().map(|&b| Subset::from_bits(b)).collect::<Vec<_>>();
        let sc = ClosedFamily::new(R::Sc, s(&[1]));
        let kf = ClosedFamily::new(R::Kf, s(&[1, 2]));
        let irr = ClosedFamily::new(R::Irr, s(&[1, 2, 3]));
        let ev = Fake(WdStatus::Bracket { lower: kf.clone(), upper: irr.clone() }, sc, kf, irr);
        let p = classify(&ev).unwrap();
        assert_eq!(p.wd_space.value, Tri::Undetermined);
        assert_eq!(p.wk_space.value, Tri::Undetermined);
        assert_eq!(p.rudin.value, Tri::False);
        // S_c misses a member KF forces into WD.
        let f = compare(&ev, SubsetSystemId::plain(SystemKind::Sc), SubsetSystemId::plain(SystemKind::Wd));
        assert_eq!(f.value, Tri::False);
    }

    #[test]
    fn model_determined_examples() {
        let vee = ModelContext::new(&fixtures::vee()).unwrap();
        for k in [SystemKind::Sc, SystemKind::Irr] {
            assert!(dcpo_model_determined_check(&vee, k).unwrap().holds());
        }
        let c2 = ModelContext::new(&fixtures::chain2()).unwrap();
        assert!(dcpo_model_determined_check(&c2, SystemKind::Kf).unwrap().holds());
    }

    #[test]
    fn key_examples() {
        let vee = ModelContext::new(&fixtures::vee()).unwrap();
        let k = proposition_key_check(&vee, SystemKind::Sc, SystemKind::Irr).unwrap();
        assert!(k.holds() && k.model_equal && k.max_equal);
        let d = ModelContext::new(&fixtures::diamond()).unwrap();
        assert!(proposition_key_check(&d, SystemKind::Sc, SystemKind::Kf).unwrap().holds());
        let c2 = ModelContext::new(&fixtures::chain2()).unwrap();
        assert!(proposition_key_check(&c2, SystemKind::Kf, SystemKind::Irr).unwrap().holds());
    }

    proptest! {
        #[test]
        fn finite_panels_are_all_true(x in arb_space(5)) {
            let p = classify(&FiniteSystems::new(&x).unwrap()).unwrap();
            for (_, v) in p.preserved() {
                prop_assert_eq!(v, Tri::True);
            }
            prop_assert!(p.weak_sober.value.is_true() && p.weak_well_filtered.value.is_true());
            prop_assert!(p.implication_violations().is_empty());
        }

        #[test]
        fn equality_is_an_equivalence(x in arb_space(5)) {
            let ev = FiniteSystems::new(&x).unwrap();
            let ids: Vec<SubsetSystemId> = SystemKind::ALL.iter().flat_map(|&k| [SubsetSystemId::plain(k), SubsetSystemId::starred(k)]).collect();
            for &a in &ids {
                for &b in &ids {
                    prop_assert_eq!(compare(&ev, a, b).value, compare(&ev, b, a).value);
                    for &c in &ids {
                        if compare(&ev, a, b).value.is_true() && compare(&ev, b, c).value.is_true() {
                            prop_assert!(compare(&ev, a, c).value.is_true());
                        }
                    }
                }
            }
        }
    }
}
