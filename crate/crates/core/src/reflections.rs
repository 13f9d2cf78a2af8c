//! Sobrification, well-filtered reflection, the Shen iteration, the
//! embedding `j: Max(P̂)^s -> P̂^s`, pair conditions and the set equations
//! relating closed-set families of `ΣP̂` and `Max(P̂)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::families::{kf_sets, ClosedFamily, FamilyError, FamilyRole, SpaceFamilies};
use crate::order::FinPoset;
use crate::scott::{e_set, e_set_by_scan, max_point_space, scott_space, xizhao_model, ScottError, XiZhaoPoset};
use crate::subset::Subset;
use crate::topo::{continuous_maps, ph_space, FinSpace, HyperSpace, TopoError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectionError {
    #[error("space is not T0")]
    NotT0,
    #[error("WD family is not determined")]
    WdNotDetermined,
    #[error("ambient space is not sober")]
    AmbientNotSober,
    #[error("family is not between S_c and Irr: {0}")]
    SandwichViolated(String),
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Topo(TopoError),
    #[error(transparent)]
    Family(FamilyError),
    #[error(transparent)]
    Scott(ScottError),
}

impl From<TopoError> for ReflectionError {
    fn from(e: TopoError) -> Self {
        match e {
            TopoError::NotT0(..) => ReflectionError::NotT0,
            TopoError::BudgetExceeded { needed, budget } => ReflectionError::BudgetExceeded { needed, budget },
            other => ReflectionError::Topo(other),
        }
    }
}

impl From<FamilyError> for ReflectionError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Topo(t) => t.into(),
            FamilyError::KindNotDetermined => ReflectionError::WdNotDetermined,
            other => ReflectionError::Family(other),
        }
    }
}

impl From<ScottError> for ReflectionError {
    fn from(e: ScottError) -> Self {
        match e {
            ScottError::Topo(t) => t.into(),
            ScottError::BudgetExceeded { needed, budget } => ReflectionError::BudgetExceeded { needed, budget },
            other => ReflectionError::Scott(other),
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), ReflectionError> {
    if cond {
        Ok(())
    } else {
        Err(ReflectionError::CheckFailed(msg()))
    }
}

/// `X^s = P_H(Irr(X))`, checked sober with `η` an embedding.
pub fn sobrification(x: &FinSpace) -> Result<HyperSpace, ReflectionError> {
    x.require_t0()?;
    let irr = x.irreducible_closed_sets();
    let hs = ph_space(x, irr.members())?;
    check(hs.eta().is_some(), || "η is undefined".into())?;
    check(hs.space().is_sober()?, || "X^s is not sober".into())?;
    Ok(hs)
}

/// `X^w = P_H(WD(X))`, checked well-filtered through `KF = S_c`.
pub fn wf_reflection(x: &FinSpace) -> Result<HyperSpace, ReflectionError> {
    x.require_t0()?;
    let fams = SpaceFamilies::compute(x)?;
    let wd = fams.wd_family()?;
    let hs = ph_space(x, wd.members())?;
    check(hs.eta().is_some(), || "η is undefined".into())?;
    let out = SpaceFamilies::compute(hs.space())?;
    check(out.kf.same_members(&out.sc), || "X^w is not well-filtered".into())?;
    Ok(hs)
}

/// For finite `X`, `η: X -> P_H(G)` is a homeomorphism; returns its graph.
pub fn finite_collapse(hs: &HyperSpace) -> Result<Vec<usize>, ReflectionError> {
    let eta = hs.eta().ok_or_else(|| ReflectionError::CheckFailed("η is undefined".into()))?;
    check(hs.base().is_homeomorphism(hs.space(), eta), || "η is not a homeomorphism".into())?;
    Ok(eta.to_vec())
}

/// Stages `Z_0 ⊆ Z_1 ⊆ ..` inside a sober ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionChain {
    pub stages: Vec<Subset>,
    /// First `β` with `Z_β = Z_{β+1}`.
    pub stabilized_at: usize,
}

impl ReflectionChain {
    pub fn last(&self) -> Subset {
        *self.stages.last().unwrap()
    }

    /// Stage `β`, repeating the last stage past stabilization.
    pub fn stage(&self, beta: usize) -> Subset {
        self.stages[beta.min(self.stages.len() - 1)]
    }
}

/// `Z_{β+1} = {z ∈ Z : cl_Z(F) = ↓z for some F ∈ KF(Z_β)}`, run to a fixpoint.
pub fn shen_iterate(ambient: &FinSpace, start: Subset) -> Result<ReflectionChain, ReflectionError> {
    if !ambient.is_sober()? {
        return Err(ReflectionError::AmbientNotSober);
    }
    let mut stages = vec![start];
    loop {
        let cur = *stages.last().unwrap();
        let (sub, _) = ambient.subspace(cur);
        let mut next = Subset::EMPTY;
        for f in kf_sets(&sub)?.members() {
            let cl = ambient.closure(f.expand(cur));
            if let Some(z) = (0..ambient.len()).find(|&z| ambient.point_closure(z) == cl) {
                next.insert(z);
            }
        }
        if next == cur {
            break;
        }
        check(cur.is_subset(next), || "Shen stages are not increasing".into())?;
        stages.push(next);
    }
    let chain = ReflectionChain { stabilized_at: stages.len() - 1, stages };
    let (top, _) = ambient.subspace(chain.last());
    let fams = SpaceFamilies::compute(&top)?;
    check(fams.kf.same_members(&fams.sc), || "stabilized stage is not well-filtered".into())?;
    Ok(chain)
}

/// The Shen chain of `η(X)` inside `X^s`.
pub fn shen_in_sobrification(x: &FinSpace) -> Result<(HyperSpace, ReflectionChain), ReflectionError> {
    let xs = sobrification(x)?;
    let start: Subset = xs.eta().unwrap().iter().copied().collect();
    let chain = shen_iterate(xs.space(), start)?;
    Ok((xs, chain))
}

/// Everything about one poset `P` the checks share: `P̂`, `ΣP̂`, `Max(P̂)`,
/// their families and sobrifications.
#[derive(Debug, Clone)]
pub struct ModelContext {
    pub h: XiZhaoPoset,
    /// `ΣP̂`.
    pub sigma: FinSpace,
    /// `Max(P̂)` as a subspace of `ΣP̂`; point `k` is the `k`-th maximal pair.
    pub max: FinSpace,
    pub max_mask: Subset,
    pub sigma_fams: SpaceFamilies,
    pub max_fams: SpaceFamilies,
    /// `P̂^s`.
    pub sigma_s: HyperSpace,
    /// `Max(P̂)^s`.
    pub max_s: HyperSpace,
}

impl ModelContext {
    pub fn new(p: &FinPoset) -> Result<Self, ReflectionError> {
        let h = xizhao_model(p)?;
        let sigma = scott_space(h.poset())?;
        let max_mask = h.maxima();
        let max = sigma.subspace(max_mask).0;
        check(max == max_point_space(h.poset())?, || "Max(P̂) subspace mismatch".into())?;
        let sigma_fams = SpaceFamilies::compute(&sigma)?;
        let max_fams = SpaceFamilies::compute(&max)?;
        let sigma_s = sobrification(&sigma)?;
        let max_s = sobrification(&max)?;
        Ok(ModelContext { h, sigma, max, max_mask, sigma_fams, max_fams, sigma_s, max_s })
    }

    pub fn nonmax(&self) -> Subset {
        self.max_mask.complement(self.sigma.len())
    }

    /// `cl_P̂` of a subset of `Max(P̂)` given in `Max(P̂)` coordinates.
    pub fn lift(&self, a: Subset) -> Subset {
        self.sigma.closure(a.expand(self.max_mask))
    }

    /// `A ∩ Max(P̂)` in `Max(P̂)` coordinates.
    pub fn trace(&self, a: Subset) -> Subset {
        a.inter(self.max_mask).compress(self.max_mask)
    }

    /// `{↓(x,e) : (x,e) ∈ P̂ \ Max(P̂)}`.
    pub fn nonmax_ideals(&self) -> Vec<Subset> {
        self.nonmax().iter().map(|i| self.h.poset().down(i)).collect()
    }

    pub fn show_sigma(&self, fam: &[Subset]) -> Vec<String> {
        fam.iter().map(|&a| self.sigma.show(a)).collect()
    }

    pub fn show_max(&self, fam: &[Subset]) -> Vec<String> {
        fam.iter().map(|&a| self.max.show(a)).collect()
    }
}

/// Which reflection the embedding `j` is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReflectionKind {
    Sober,
    WellFiltered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JReport {
    pub kind: ReflectionKind,
    /// `j(Irr(Max(P̂)))`, as closed subsets of `P̂`.
    pub image: Vec<String>,
    pub embedding: bool,
    pub commuting_square: bool,
    pub image_is_up_set: bool,
    pub inverse_is_trace: bool,
    pub image_saturated: bool,
}

impl JReport {
    pub fn holds(&self) -> bool {
        self.embedding && self.commuting_square && self.image_is_up_set && self.inverse_is_trace && self.image_saturated
    }
}

/// `j(A) = cl_P̂(A)` from `Max(P̂)^s` (or `^w`) into `P̂^s` (or `^w`), with all
/// four clauses and saturation of the image checked.
pub fn j_embedding_check(ctx: &ModelContext, kind: ReflectionKind) -> Result<JReport, ReflectionError> {
    let (src, dst) = match kind {
        ReflectionKind::Sober => (ctx.max_s.clone(), ctx.sigma_s.clone()),
        ReflectionKind::WellFiltered => (wf_reflection(&ctx.max)?, wf_reflection(&ctx.sigma)?),
    };
    let j: Vec<usize> = src
        .members()
        .iter()
        .map(|&a| {
            dst.index_of(ctx.lift(a))
                .ok_or_else(|| ReflectionError::CheckFailed(format!("j({}) is not a point", ctx.max.show(a))))
        })
        .collect::<Result<_, _>>()?;
    let embedding = src.space().embedding_defect(dst.space(), &j).is_none();
    let eta_m = src.eta().unwrap();
    let eta_p = dst.eta().unwrap();
    let tops: Vec<usize> = ctx.max_mask.iter().collect();
    let commuting_square = (0..ctx.max.len()).all(|k| j[eta_m[k]] == eta_p[tops[k]]);
    let image: Subset = j.iter().copied().collect();
    let eta_max: Subset = tops.iter().map(|&t| eta_p[t]).collect();
    let image_is_up_set = image == dst.space().spec_up(eta_max);
    let inverse_is_trace = src.members().iter().zip(&j).all(|(&a, &ja)| ctx.trace(dst.member(ja)) == a);
    let image_saturated = dst.space().is_saturated(image);
    Ok(JReport {
        kind,
        image: image.iter().map(|i| ctx.sigma.show(dst.member(i))).collect(),
        embedding,
        commuting_square,
        image_is_up_set,
        inverse_is_trace,
        image_saturated,
    })
}

/// A condition verdict with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Condition {
    pub fn ok() -> Self {
        Condition { holds: true, witness: None }
    }

    pub fn fail(w: impl Into<String>) -> Self {
        Condition { holds: false, witness: Some(w.into()) }
    }

    fn from_defect(d: Option<String>) -> Self {
        d.map_or_else(Condition::ok, Condition::fail)
    }
}

/// `⟨P_H(G), η⟩` checked against the pair conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub family: FamilyRole,
    pub points: usize,
    pub p1: Condition,
    pub p2: Condition,
    pub p3: Condition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p4: Option<Condition>,
    /// Compact saturated sets of `Y` whose preimage was checked.
    pub compact_cases: usize,
    /// Cases where the preimage was not saturated or the two `E_K` paths differed.
    pub compact_failures: usize,
}

impl PairWitness {
    pub fn holds(&self) -> bool {
        self.p1.holds
            && self.p2.holds
            && self.p3.holds
            && self.p4.as_ref().is_none_or(|c| c.holds)
            && self.compact_failures == 0
    }
}

/// Check `S_c(ΣP̂) ⊆ G ⊆ Irr(ΣP̂)` and build `Y = P_H(G)`.
pub fn pair_space(ctx: &ModelContext, g: &ClosedFamily) -> Result<HyperSpace, ReflectionError> {
    if let Some(&a) = ctx.sigma_fams.sc.minus(g).first() {
        return Err(ReflectionError::SandwichViolated(format!("point closure {} is missing", ctx.sigma.show(a))));
    }
    if let Some(&a) = g.minus(&ctx.sigma_fams.irr).first() {
        return Err(ReflectionError::SandwichViolated(format!("{} is not irreducible closed", ctx.sigma.show(a))));
    }
    Ok(ph_space(&ctx.sigma, g.members())?)
}

/// The pair conditions for `⟨Y, f⟩ = ⟨P_H(G), η⟩`, plus the compact-preimage
/// and `E_K` sub-check on every compact saturated set of `Y`.
pub fn pair_conditions_check(ctx: &ModelContext, g: &ClosedFamily) -> Result<PairWitness, ReflectionError> {
    let y = pair_space(ctx, g)?;
    let f = y.eta().unwrap();
    let ys = y.space();
    let p1 = Condition::from_defect(ctx.sigma.embedding_defect(ys, f));

    let image = |s: Subset| -> Subset { s.iter().map(|i| f[i]).collect() };
    let up_max = ys.spec_up(image(ctx.max_mask));
    let cover = up_max.union(image(ctx.nonmax()));
    let p2 = if cover != ys.carrier() {
        Condition::fail(format!("{} is not covered", ys.show(ys.carrier().minus(cover))))
    } else if ys.spec_down(image(ctx.sigma.carrier())) != image(ctx.sigma.carrier()) {
        Condition::fail("f(P̂) is not a lower set")
    } else {
        Condition::ok()
    };

    let nonmax = ctx.nonmax();
    let (sub, _) = ctx.sigma.subspace(nonmax);
    let p3 = sub
        .closed_sets()
        .iter()
        .map(|c| c.expand(nonmax))
        .find(|&c| !ys.is_closed(image(c)))
        .map_or_else(Condition::ok, |c| Condition::fail(format!("f({}) is not closed", ctx.sigma.show(c))));

    let mut compact_cases = 0;
    let mut compact_failures = 0;
    for kk in ys.compact_saturated_sets() {
        compact_cases += 1;
        let k: Subset = (0..ctx.sigma.len()).filter(|&p| kk.contains(f[p])).collect();
        let ok = ctx.sigma.is_saturated(k) && e_set(&ctx.h, k).is_ok_and(|e| e == e_set_by_scan(&ctx.h, k));
        if !ok {
            compact_failures += 1;
        }
    }
    Ok(PairWitness { family: g.role(), points: ys.len(), p1, p2, p3, p4: None, compact_cases, compact_failures })
}

/// The set equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Equation {
    #[serde(rename = "EQ0")]
    Eq0,
    #[serde(rename = "EQ1")]
    Eq1,
    /// Checked for the pairs built from `G = S_c(P̂)` and `G = Irr(P̂)`.
    #[serde(rename = "EQ2")]
    Eq2,
    #[serde(rename = "KFSET2")]
    KfSet2,
    #[serde(rename = "EQ3")]
    Eq3,
}

impl Equation {
    pub const ALL: [Equation; 5] = [Equation::Eq0, Equation::Eq1, Equation::Eq2, Equation::KfSet2, Equation::Eq3];

    pub fn name(self) -> &'static str {
        match self {
            Equation::Eq0 => "EQ0",
            Equation::Eq1 => "EQ1",
            Equation::Eq2 => "EQ2",
            Equation::KfSet2 => "KFSET2",
            Equation::Eq3 => "EQ3",
        }
    }

    pub fn parse(s: &str) -> Option<Equation> {
        Equation::ALL.into_iter().find(|e| e.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One set equation with both sides and their differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetEquation {
    pub name: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub lhs_only: Vec<String>,
    pub rhs_only: Vec<String>,
    pub holds: bool,
}

impl SetEquation {
    fn compare(name: impl Into<String>, lhs: Vec<Subset>, rhs: Vec<Subset>, show: impl Fn(Subset) -> String) -> Self {
        let (l, r) = (ClosedFamily::new(FamilyRole::Custom, lhs), ClosedFamily::new(FamilyRole::Custom, rhs));
        let render = |v: &[Subset]| v.iter().map(|&a| show(a)).collect::<Vec<_>>();
        SetEquation {
            name: name.into(),
            lhs: render(l.members()),
            rhs: render(r.members()),
            lhs_only: render(&l.minus(&r)),
            rhs_only: render(&r.minus(&l)),
            holds: l == r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationVerdict {
    pub which: Equation,
    pub holds: bool,
    pub parts: Vec<SetEquation>,
}

/// Both halves of a "global = lifted ∪ ideals / local = traces" pair.
fn lift_trace_pair(ctx: &ModelContext, tag: &str, global: &ClosedFamily, local: &ClosedFamily) -> [SetEquation; 2] {
    let mut rhs: Vec<Subset> = local.members().iter().map(|&a| ctx.lift(a)).collect();
    rhs.extend(ctx.nonmax_ideals());
    let first =
        SetEquation::compare(format!("{tag}(P̂) = cl(lifted) ∪ ideals"), global.members().to_vec(), rhs, |a| {
            ctx.sigma.show(a)
        });
    let traces: Vec<Subset> =
        global.members().iter().filter(|a| a.meets(ctx.max_mask)).map(|&a| ctx.trace(a)).collect();
    let second =
        SetEquation::compare(format!("{tag}(Max) = traces"), local.members().to_vec(), traces, |a| ctx.max.show(a));
    [first, second]
}

/// The `KF` equations for `⟨P_H(G), η⟩`, in `Y` coordinates.
fn pair_kf_equations(ctx: &ModelContext, g: &ClosedFamily, tag: &str) -> Result<[SetEquation; 2], ReflectionError> {
    let y = pair_space(ctx, g)?;
    let f = y.eta().unwrap();
    let ys = y.space();
    let up = ys.spec_up(ctx.max_mask.iter().map(|i| f[i]).collect());
    let (u_space, _) = ys.subspace(up);
    let kf_y = kf_sets(ys)?;
    let kf_u = kf_sets(&u_space)?;
    let mut rhs: Vec<Subset> = kf_u.members().iter().map(|&a| ys.closure(a.expand(up))).collect();
    rhs.extend(ctx.nonmax().iter().map(|i| ctx.h.poset().down(i).iter().map(|p| f[p]).collect::<Subset>()));
    let first =
        SetEquation::compare(format!("KF(Y[{tag}]) = cl(KF(U)) ∪ f(ideals)"), kf_y.members().to_vec(), rhs, |a| {
            ys.show(a)
        });
    let traces: Vec<Subset> = kf_y.members().iter().filter(|a| a.meets(up)).map(|&a| a.inter(up)).collect();
    let lhs: Vec<Subset> = kf_u.members().iter().map(|&a| a.expand(up)).collect();
    let second = SetEquation::compare(format!("KF(U[{tag}]) = traces"), lhs, traces, |a| ys.show(a));
    Ok([first, second])
}

/// Compute both sides of the named equation independently and compare.
pub fn decomposition_check(ctx: &ModelContext, which: Equation) -> Result<EquationVerdict, ReflectionError> {
    let (sf, mf) = (&ctx.sigma_fams, &ctx.max_fams);
    let parts: Vec<SetEquation> = match which {
        Equation::Eq0 => {
            let eta_max: Vec<Subset> = ctx.max_mask.iter().map(|i| ctx.sigma.point_closure(i)).collect();
            let mut rhs: Vec<Subset> =
                sf.irr.members().iter().copied().filter(|a| eta_max.iter().any(|c| c.is_subset(*a))).collect();
            rhs.extend(ctx.nonmax().iter().map(|i| ctx.sigma.point_closure(i)));
            vec![SetEquation::compare(
                "Irr(P̂) = ↑η(Max) ∪ η(P̂ \\ Max)",
                sf.irr.members().to_vec(),
                rhs,
                |a| ctx.sigma.show(a),
            )]
        }
        Equation::Eq1 => lift_trace_pair(ctx, "Irr", &sf.irr, &mf.irr).into(),
        Equation::KfSet2 => lift_trace_pair(ctx, "KF", &sf.kf, &mf.kf).into(),
        Equation::Eq3 => {
            let (g, l) = (sf.wd_family()?, mf.wd_family()?);
            lift_trace_pair(ctx, "WD", g, l).into()
        }
        Equation::Eq2 => {
            let mut v: Vec<SetEquation> = pair_kf_equations(ctx, &sf.sc, "Sc")?.into();
            v.extend(pair_kf_equations(ctx, &sf.irr, "Irr")?);
            v
        }
    };
    Ok(EquationVerdict { which, holds: parts.iter().all(|p| p.holds), parts })
}

/// Finite posets on `1..=max_points` points up to isomorphism, as Alexandrov
/// spaces (every finite T0 space is one of these).
pub fn small_t0_spaces(max_points: usize) -> Vec<FinSpace> {
    let mut out: Vec<FinSpace> = Vec::new();
    for n in 1..=max_points {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut reps: Vec<FinPoset> = Vec::new();
        for bits in 0u64..1 << pairs.len() {
            let chosen: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|&k| bits >> k & 1 == 1).map(|k| pairs[k]).collect();
            let labels = (0..n).map(|i| format!("y{i}")).collect();
            let p = FinPoset::from_index_pairs(labels, &chosen).expect("upper-triangular relations are acyclic");
            if !reps.iter().any(|q| q.find_isomorphism(&p).is_some()) {
                reps.push(p);
            }
        }
        out.extend(reps.iter().map(FinSpace::alexandrov));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalityReport {
    pub kind: ReflectionKind,
    pub targets: usize,
    pub maps_checked: usize,
    /// `(target index, graph of f, number of factorizations)` for each failure.
    pub failures: Vec<(usize, Vec<usize>, usize)>,
}

impl UniversalityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every continuous `f: X -> Y` into every enumerated sober (or well-filtered)
/// `Y` with at most `max_points` points factors as `g ∘ η` for exactly one
/// continuous `g` out of `X^s` (or `X^w`).
pub fn universal_property_smoke(
    x: &FinSpace,
    kind: ReflectionKind,
    max_points: usize,
    budget: u128,
) -> Result<UniversalityReport, ReflectionError> {
    let r = match kind {
        ReflectionKind::Sober => sobrification(x)?,
        ReflectionKind::WellFiltered => wf_reflection(x)?,
    };
    let eta = r.eta().unwrap();
    let mut targets = 0;
    let mut maps_checked = 0;
    let mut failures = Vec::new();
    for (ti, y) in small_t0_spaces(max_points).iter().enumerate() {
        let admissible = match kind {
            ReflectionKind::Sober => y.is_sober()?,
            ReflectionKind::WellFiltered => {
                let f = SpaceFamilies::compute(y)?;
                f.kf.same_members(&f.sc)
            }
        };
        if !admissible {
            continue;
        }
        targets += 1;
        let mut by_restriction: HashMap<Vec<usize>, usize> = HashMap::new();
        for g in continuous_maps(r.space(), y, budget)? {
            let restricted: Vec<usize> = eta.iter().map(|&p| g.apply(p)).collect();
            *by_restriction.entry(restricted).or_default() += 1;
        }
        for f in continuous_maps(x, y, budget)? {
            maps_checked += 1;
            let n = by_restriction.get(f.graph()).copied().unwrap_or(0);
            if n != 1 {
                failures.push((ti, f.graph().to_vec(), n));
            }
        }
    }
    Ok(UniversalityReport { kind, targets, maps_checked, failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embed2Report {
    pub stages: usize,
    pub max_stabilized_at: usize,
    pub model_stabilized_at: usize,
    /// Per stage: does `j(X_β) = ↑_{Y_β} η(Max(P̂))` hold.
    pub stage_equations: Vec<bool>,
    pub max_final_is_wd: bool,
    pub model_final_is_wd: bool,
}

impl Embed2Report {
    pub fn holds(&self) -> bool {
        self.stage_equations.iter().all(|&b| b) && self.max_final_is_wd && self.model_final_is_wd
    }
}

/// Paired Shen chains `X_β` in `Max(P̂)^s` and `Y_β` in `P̂^s`.
pub fn claim_embed2_check(ctx: &ModelContext) -> Result<Embed2Report, ReflectionError> {
    let (ms, ps) = (&ctx.max_s, &ctx.sigma_s);
    let xs = shen_iterate(ms.space(), ms.eta().unwrap().iter().copied().collect())?;
    let ys = shen_iterate(ps.space(), ps.eta().unwrap().iter().copied().collect())?;
    let j: Vec<usize> = ms.members().iter().map(|&a| ps.index_of(ctx.lift(a)).expect("j lands in P̂^s")).collect();
    let eta_p = ps.eta().unwrap();
    let eta_max: Subset = ctx.max_mask.iter().map(|t| eta_p[t]).collect();
    let stages = xs.stages.len().max(ys.stages.len());
    let stage_equations = (0..stages)
        .map(|b| {
            let jx: Subset = xs.stage(b).iter().map(|i| j[i]).collect();
            let yb = ys.stage(b);
            jx == ps.space().spec_up(eta_max).inter(yb)
        })
        .collect();
    let as_family = |hs: &HyperSpace, pts: Subset| ClosedFamily::new(FamilyRole::Custom, hs.family_of(pts));
    let max_final_is_wd = as_family(ms, xs.last()).same_members(ctx.max_fams.wd_family()?);
    let model_final_is_wd = as_family(ps, ys.last()).same_members(ctx.sigma_fams.wd_family()?);
    Ok(Embed2Report {
        stages,
        max_stabilized_at: xs.stabilized_at,
        model_stabilized_at: ys.stabilized_at,
        stage_equations,
        max_final_is_wd,
        model_final_is_wd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::test_support::arb_space;
    use proptest::prelude::*;

    fn ctx(p: &FinPoset) -> ModelContext {
        ModelContext::new(p).unwrap()
    }

    #[test]
    fn sobrification_examples() {
        let sierp = fixtures::sierpinski();
        let s = sobrification(&sierp).unwrap();
        assert_eq!(finite_collapse(&s).unwrap(), vec![0, 1]);
        let d = fixtures::discrete(&["p", "q"]);
        assert_eq!(sobrification(&d).unwrap().space().opens().len(), 4);
        assert_eq!(sobrification(&fixtures::indiscrete(&["p", "q"])).unwrap_err(), ReflectionError::NotT0);
        let w = wf_reflection(&sierp).unwrap();
        assert_eq!(w.members(), s.members());
    }

    #[test]
    fn shen_examples() {
        for (_, x) in fixtures::named_spaces() {
            let (xs, chain) = shen_in_sobrification(&x).unwrap();
            assert!(chain.stabilized_at <= 1);
            assert_eq!(chain.last(), xs.space().carrier());
        }
        let not_sober = fixtures::indiscrete(&["p", "q"]);
        assert!(shen_iterate(&not_sober, Subset::singleton(0)).is_err());
    }

    #[test]
    fn j_examples() {
        let c = ctx(&fixtures::vee());
        let r = j_embedding_check(&c, ReflectionKind::Sober).unwrap();
        assert!(r.holds());
        assert_eq!(r.image, vec!["{a@b,a@c,b@b}", "{a@b,a@c,c@c}"]);
        assert_eq!(c.sigma_fams.irr.len(), 4);
        let r = j_embedding_check(&ctx(&fixtures::chain2()), ReflectionKind::Sober).unwrap();
        assert_eq!(r.image, vec!["{a@b,b@b}"]);
        let r = j_embedding_check(&ctx(&fixtures::diamond()), ReflectionKind::WellFiltered).unwrap();
        assert!(r.holds());
        assert_eq!(r.image, vec!["{0@1,m1@1,m2@1,1@1}"]);
    }

    #[test]
    fn pair_condition_examples() {
        let c = ctx(&fixtures::vee());
        for g in [c.sigma_fams.sc.clone(), c.sigma_fams.irr.clone()] {
            let w = pair_conditions_check(&c, &g).unwrap();
            assert!(w.holds(), "{w:?}");
            assert!(w.compact_cases > 0);
        }
        let missing = c.sigma_fams.sc.without(c.sigma_fams.sc.members()[0]);
        assert!(matches!(pair_conditions_check(&c, &missing), Err(ReflectionError::SandwichViolated(_))));
    }

    #[test]
    fn equation_examples() {
        let c = ctx(&fixtures::vee());
        let eq1 = decomposition_check(&c, Equation::Eq1).unwrap();
        assert!(eq1.holds);
        assert_eq!(eq1.parts[0].lhs.len(), 4);
        let kf2 = decomposition_check(&c, Equation::KfSet2).unwrap();
        assert!(kf2.holds);
        assert_eq!(kf2.parts[1].lhs, vec!["{b@b}", "{c@c}"]);
        let c = ctx(&fixtures::chain2());
        let eq3 = decomposition_check(&c, Equation::Eq3).unwrap();
        assert!(eq3.holds);
        assert_eq!(eq3.parts[0].lhs, vec!["{a@b}", "{a@b,b@b}"]);
        for which in Equation::ALL {
            assert!(decomposition_check(&ctx(&fixtures::diamond()), which).unwrap().holds);
        }
    }

    #[test]
    fn small_targets_up_to_iso() {
        let counts: Vec<usize> = (1..=4).map(|k| small_t0_spaces(k).len()).collect();
        assert_eq!(counts, vec![1, 3, 8, 24]);
    }

    #[test]
    fn universality_examples() {
        let r = universal_property_smoke(&fixtures::sierpinski(), ReflectionKind::Sober, 3, 1 << 20).unwrap();
        assert!(r.holds() && r.targets == 8);
        let r = universal_property_smoke(&fixtures::discrete(&["p", "q"]), ReflectionKind::WellFiltered, 3, 1 << 20)
            .unwrap();
        assert!(r.holds());
    }

    #[test]
    fn embed2_examples() {
        for p in [fixtures::vee(), fixtures::chain2(), fixtures::diamond()] {
            let r = claim_embed2_check(&ctx(&p)).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(r.max_stabilized_at <= 1 && r.model_stabilized_at <= 1);
        }
    }

    proptest! {
        #[test]
        fn reflections_are_sober_and_collapse(x in arb_space(5)) {
            let s = sobrification(&x).unwrap();
            prop_assert!(s.space().is_sober().unwrap());
            prop_assert!(finite_collapse(&s).is_ok());
            let w = wf_reflection(&x).unwrap();
            prop_assert!(finite_collapse(&w).is_ok());
        }
    }
}
