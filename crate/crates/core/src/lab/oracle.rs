use serde::Serialize;

use super::io::PosetFile;
use super::report::SCHEMA_VERSION;
use super::{generate_poset, LabError, RunConfig};
use crate::families::{kf_sets_multi_scan, kf_sets_single_scan, minimal_meeting, ClosedFamily, FamilyRole};
use crate::order::FinPoset;
use crate::reflections::{finite_collapse, sobrification};
use crate::scott::{e_set, e_set_by_scan, scott_opens_definitional, scott_space, xizhao_model};
use crate::subset::Subset;
use crate::symbolic::kf_witness_window;
use crate::topo::FinSpace;

/// Deliberate faults for exercising the harness.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// The definitional `Irr` scan forgets the whole carrier.
    IrrDropsCarrier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub path: String,
    /// Smallest sub-poset found that still disagrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<PosetFile>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub instances: usize,
    pub comparisons: usize,
    pub disagreements: Vec<Disagreement>,
}

struct Tally {
    comparisons: usize,
    found: Vec<(String, String)>,
}

impl Tally {
    fn compare<T: PartialEq + std::fmt::Debug>(&mut self, path: String, a: T, b: T) {
        self.comparisons += 1;
        if a != b {
            self.found.push((path, format!("{a:?} vs {b:?}")));
        }
    }
}

fn irr_scan(x: &FinSpace, m: Mutation) -> ClosedFamily {
    let irr = x.irreducible_closed_sets();
    match m {
        Mutation::None => irr,
        Mutation::IrrDropsCarrier => irr.without(x.carrier()),
    }
}

fn space_paths(tag: &str, x: &FinSpace, m: Mutation, t: &mut Tally) -> Result<(), LabError> {
    let show = |f: &ClosedFamily| f.show(x);
    t.compare(format!("{tag}: Irr scan vs point closures"), show(&irr_scan(x, m)), show(&x.point_closure_family()));
    t.compare(format!("{tag}: KF single vs multi scan"), show(&kf_sets_single_scan(x)), show(&kf_sets_multi_scan(x)));
    for k in x.compact_saturated_sets() {
        let mut family = vec![k];
        family.extend(x.carrier().minus(k).iter().map(|p| x.saturation(k.with(p))));
        let full = ClosedFamily::new(FamilyRole::Custom, minimal_meeting(x, &family));
        let least = ClosedFamily::new(FamilyRole::Custom, minimal_meeting(x, &[k]));
        t.compare(format!("{tag}: m(K) full vs least member at {}", x.show(k)), show(&full), show(&least));
    }
    match sobrification(x) {
        Ok(hs) => {
            let eta = hs.eta().unwrap();
            let images: Vec<Subset> = eta.iter().map(|&i| hs.member(i)).collect();
            let closures: Vec<Subset> = (0..x.len()).map(|p| x.point_closure(p)).collect();
            t.compare(format!("{tag}: η(x) vs cl{{x}}"), images, closures);
            t.compare(format!("{tag}: η is a homeomorphism"), finite_collapse(&hs).is_ok(), true);
        }
        Err(e) => {
            let e = LabError::from(e);
            if e.is_budget() {
                return Err(e);
            }
            t.found.push((format!("{tag}: sobrification"), e.to_string()));
        }
    }
    Ok(())
}

/// Every redundant path on `P`, `ΣP`, `P̂`, `ΣP̂` and `Max(P̂)`. Returns the
/// number of comparisons and the `(path, detail)` pairs that differ.
pub fn poset_disagreements(p: &FinPoset, m: Mutation) -> Result<(usize, Vec<(String, String)>), LabError> {
    let mut t = Tally { comparisons: 0, found: Vec::new() };
    t.compare("P: Scott definitional vs upper sets".into(), scott_opens_definitional(p)?, p.upper_sets());
    let h = xizhao_model(p)?;
    let hp = h.poset();
    t.compare("P^: Scott definitional vs upper sets".into(), scott_opens_definitional(hp)?, hp.upper_sets());
    for a in hp.upper_sets() {
        t.compare(format!("P^: E_A by slices vs scan at {}", h.show(a)), e_set(&h, a)?, e_set_by_scan(&h, a));
    }
    let sigma_p = scott_space(p)?;
    let sigma_h = scott_space(hp)?;
    let (max, _) = sigma_h.subspace(h.maxima());
    space_paths("SigmaP", &sigma_p, m, &mut t)?;
    space_paths("SigmaP^", &sigma_h, m, &mut t)?;
    space_paths("Max(P^)", &max, m, &mut t)?;
    Ok((t.comparisons, t.found))
}

/// Drop elements one at a time while the poset stays bounded complete and
/// some path still disagrees.
fn shrink(p: &FinPoset, m: Mutation) -> Result<FinPoset, LabError> {
    let mut cur = p.clone();
    'outer: loop {
        for i in 0..cur.len() {
            if cur.len() == 1 {
                break 'outer;
            }
            let q = cur.restrict(cur.carrier().minus(Subset::singleton(i)));
            if q.is_bounded_complete() && !poset_disagreements(&q, m)?.1.is_empty() {
                cur = q;
                continue 'outer;
            }
        }
        break;
    }
    Ok(cur)
}

pub fn oracle_search(cfg: &RunConfig) -> Result<OracleReport, LabError> {
    oracle_search_with(cfg, Mutation::None)
}

/// The corpus is the poset fixtures followed by `cfg.trials` generated posets.
#[doc(hidden)]
pub fn oracle_search_with(cfg: &RunConfig, m: Mutation) -> Result<OracleReport, LabError> {
    cfg.validate()?;
    let mut corpus: Vec<(Option<u64>, FinPoset)> =
        crate::fixtures::named_posets().into_iter().map(|(_, p)| (None, p)).collect();
    for t in 0..cfg.trials as u64 {
        corpus.push((Some(t), generate_poset(cfg, t)?));
    }
    let check = |(trial, p): &(Option<u64>, FinPoset)| -> Result<(usize, Vec<Disagreement>), LabError> {
        let (n, found) = poset_disagreements(p, m)?;
        if found.is_empty() {
            return Ok((n, Vec::new()));
        }
        let small = PosetFile::from_poset(&shrink(p, m)?);
        let out = found
            .into_iter()
            .map(|(path, detail)| Disagreement { trial: *trial, path, instance: Some(small.clone()), detail })
            .collect();
        Ok((n, out))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        corpus.par_iter().map(check).collect::<Result<_, _>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = corpus.iter().map(check).collect::<Result<_, _>>()?;

    let mut comparisons = 1;
    let mut disagreements = Vec::new();
    if let Some(w) = kf_witness_window(16) {
        disagreements.push(Disagreement {
            trial: None,
            path: "cofinite-nat: KF window".into(),
            instance: None,
            detail: format!("{w:?}"),
        });
    }
    for (n, d) in results {
        comparisons += n;
        disagreements.extend(d);
    }
    Ok(OracleReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        instances: corpus.len(),
        comparisons,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig { seed: 11, max_size: 6, trials: 15, ..RunConfig::default() }
    }

    #[test]
    fn default_corpus_agrees() {
        let r = oracle_search(&cfg()).unwrap();
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert_eq!(r.instances, 18);
        assert_eq!(r, oracle_search(&cfg()).unwrap());
    }

    #[test]
    fn mutation_is_caught_with_minimal_witness() {
        let r = oracle_search_with(&cfg(), Mutation::IrrDropsCarrier).unwrap();
        assert!(!r.disagreements.is_empty());
        for d in &r.disagreements {
            assert!(d.path.contains("Irr scan"));
            assert_eq!(d.instance.as_ref().unwrap().elements.len(), 1);
        }
    }
}
