//! The verification suites. Each sweeps (group, subgroup) pairs from a
//! catalog in parallel and merges results in catalog order.

use std::collections::{BTreeMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::catalog::{Catalog, CatalogEntry};
use super::report::{Counterexample, Instance, Mode, RunConfig, Verdict, VerificationReport};
use crate::cay::format_table;
use crate::congruence::{
    all_invariant_subloops, congruence_from_invariant, is_solvable_loop, order2_invariant_subloops,
    quotient_loop, smallest_abelian_group_congruence, smallest_group_congruence, Congruence,
    InvariantSubloop,
};
use crate::error::{Error, Result};
use crate::group::{symmetric, Subgroup};
use crate::rightloop::{RightLoop, TorsionGroup};
use crate::transversal::{CosetSpace, Transversal};

pub const DEFAULT_MAX_ORDER: usize = 24;
pub const DEFAULT_MAX_TRANSVERSALS: u128 = 10_000;
pub const DEFAULT_SAMPLE: usize = 2000;
pub const DEFAULT_SEED: u64 = 0;
/// Generating transversals checked per pair in the reconstruction suite.
pub const RECONSTRUCTION_PER_PAIR: usize = 200;
/// Largest loop on which the lemma suite enumerates invariant subloops.
pub const MINIMALITY_MAX_ORDER: usize = 12;

pub const SUITES: [&str; 9] = [
    "counterexample-s3",
    "theorem1",
    "theorem2",
    "reconstruction",
    "corollary1",
    "corollary2",
    "cameron",
    "iso-classes",
    "lemmas",
];

#[derive(Debug, Clone)]
pub struct Config {
    pub max_order: usize,
    pub max_transversals: u128,
    pub sample: usize,
    pub seed: u64,
    /// Add the `A5` stress entry to the `theorem1` sweep.
    pub stress: bool,
    /// Extra loops for the suites that accept arbitrary right loops.
    pub user_loops: Vec<(String, RightLoop)>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_order: DEFAULT_MAX_ORDER,
            max_transversals: DEFAULT_MAX_TRANSVERSALS,
            sample: DEFAULT_SAMPLE,
            seed: DEFAULT_SEED,
            stress: true,
            user_loops: Vec::new(),
        }
    }
}

impl Config {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            max_order: self.max_order,
            max_transversals: self.max_transversals,
            sample: self.sample,
            seed: self.seed,
        }
    }
}

pub fn run_suite(name: &str, catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    match name {
        "counterexample-s3" => counterexample_s3(cfg),
        "theorem1" => theorem1(catalog, cfg),
        "theorem2" => theorem2(catalog, cfg),
        "reconstruction" => reconstruction(catalog, cfg),
        "corollary1" => corollary1(catalog, cfg),
        "corollary2" => corollary2(catalog, cfg),
        "cameron" => cameron(catalog, cfg),
        "iso-classes" => iso_classes(catalog, cfg),
        "lemmas" => lemmas(catalog, cfg),
        _ => Err(Error::PreconditionFailed(format!("unknown suite {name}"))),
    }
}

type Outcome = (Instance, Vec<Counterexample>);

struct Pair<'c> {
    entry: &'c CatalogEntry,
    h: Subgroup,
    core_free: bool,
}

impl Pair<'_> {
    fn instance(&self, mode: Mode) -> Instance {
        Instance {
            group: self.entry.name.clone(),
            order: self.entry.group.order(),
            subgroup: self.h.elements().to_vec(),
            core_free: self.core_free,
            mode,
            verdict: Verdict::Pass,
            counts: BTreeMap::new(),
        }
    }

    fn counterexample(
        &self,
        reps: Option<&[usize]>,
        check: &str,
        detail: String,
    ) -> Counterexample {
        Counterexample {
            group: self.entry.name.clone(),
            group_table: format_table(&self.entry.group.rows()),
            subgroup: self.h.elements().to_vec(),
            reps: reps.map(<[usize]>::to_vec),
            check: check.into(),
            detail,
        }
    }

    /// FNV-1a over the run seed, group name and subgroup.
    fn seed(&self, base: u64) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325 ^ base;
        let bytes = self.entry.name.bytes().chain(
            self.h
                .elements()
                .iter()
                .flat_map(|x| (*x as u32).to_le_bytes()),
        );
        for b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
        hash
    }
}

fn pairs(catalog: &Catalog, max_order: usize, core_free_only: bool) -> Result<Vec<Pair<'_>>> {
    let mut out = Vec::new();
    for entry in catalog.entries() {
        if entry.group.order() > max_order && !entry.stress {
            continue;
        }
        for h in entry.subgroups()? {
            let core_free = entry.group.is_core_free(&h);
            if core_free || !core_free_only {
                out.push(Pair {
                    entry,
                    h,
                    core_free,
                });
            }
        }
    }
    Ok(out)
}

/// All transversals when within the cap, otherwise distinct seeded samples.
/// Stress entries are always sampled.
fn transversals<'s>(
    space: &'s CosetSpace<'_>,
    pair: &Pair<'_>,
    cfg: &Config,
) -> (Mode, Box<dyn Iterator<Item = Transversal> + 's>) {
    if !pair.entry.stress {
        if let Ok(iter) = space.transversals(cfg.max_transversals) {
            return (Mode::Exhaustive, Box::new(iter));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(pair.seed(cfg.seed));
    let mut sample = space.sample(cfg.sample, &mut rng);
    sample.sort();
    sample.dedup();
    (Mode::Sampled, Box::new(sample.into_iter()))
}

fn sweep<'c, F>(report: &mut VerificationReport, pairs: &[Pair<'c>], f: F) -> Result<()>
where
    F: Fn(&Pair<'c>) -> Result<Outcome> + Sync + Send,
{
    let results: Vec<Result<Outcome>> = pairs.par_iter().map(f).collect();
    for r in results {
        let (mut inst, cxs) = r?;
        if !cxs.is_empty() {
            inst.verdict = Verdict::Fail;
        }
        report.push(inst, cxs);
    }
    Ok(())
}

fn bump(inst: &mut Instance, key: &'static str) {
    *inst.counts.entry(key).or_default() += 1;
}

fn loop_counterexample(name: &str, s: &RightLoop, check: &str, detail: String) -> Counterexample {
    Counterexample {
        group: name.into(),
        group_table: format_table(&s.rows()),
        subgroup: Vec::new(),
        reps: None,
        check: check.into(),
        detail,
    }
}

/// Every order-2 subgroup of `S3`: four transversals, one of them the
/// non-generating `A3`, and no solvable generating transversal.
pub fn counterexample_s3(cfg: &Config) -> Result<VerificationReport> {
    let g = symmetric(3)?;
    let mut catalog = Catalog::default();
    catalog.add("S3", g.clone())?;
    let entry = &catalog.entries()[0];
    let mut report = VerificationReport::new("counterexample-s3", cfg.run_config());
    if !g.is_solvable() {
        report.add_counterexample(Counterexample {
            group: "S3".into(),
            group_table: format_table(&g.rows()),
            subgroup: Vec::new(),
            reps: None,
            check: "S3 is solvable".into(),
            detail: format!("derived series {:?}", g.derived_series()),
        });
    }
    let subs: Vec<Pair> = entry
        .subgroups()?
        .into_iter()
        .filter(|h| h.order() == 2)
        .map(|h| Pair {
            entry,
            core_free: g.is_core_free(&h),
            h,
        })
        .collect();
    if subs.len() != 3 {
        report.add_counterexample(Counterexample {
            group: "S3".into(),
            group_table: format_table(&g.rows()),
            subgroup: Vec::new(),
            reps: None,
            check: "three order-2 subgroups".into(),
            detail: format!("found {}", subs.len()),
        });
    }
    sweep(&mut report, &subs, |pair| {
        let space = CosetSpace::new(&pair.entry.group, &pair.h);
        let mut inst = pair.instance(Mode::Exhaustive);
        let mut cxs = Vec::new();
        for t in space.transversals(cfg.max_transversals.max(4))? {
            bump(&mut inst, "transversals");
            let s = space.induced_loop(&t);
            let solvable = is_solvable_loop(s.right_loop());
            if space.is_generating(&t) {
                bump(&mut inst, "generating");
                if solvable {
                    bump(&mut inst, "solvable_generating");
                    cxs.push(pair.counterexample(
                        Some(t.reps()),
                        "no solvable generating transversal",
                        "induced loop is solvable".into(),
                    ));
                }
            } else {
                bump(&mut inst, "non_generating");
                let closure = g.subgroup_closure(t.reps());
                let is_a3 = closure.order() == 3;
                if !is_a3 || !s.right_loop().is_associative() || !solvable {
                    cxs.push(pair.counterexample(
                        Some(t.reps()),
                        "non-generating transversal is A3",
                        format!(
                            "closure {:?}, associative {}, solvable {solvable}",
                            closure.elements(),
                            s.right_loop().is_associative()
                        ),
                    ));
                }
            }
        }
        let expect = [
            ("transversals", 4),
            ("generating", 3),
            ("non_generating", 1),
        ];
        for (key, want) in expect {
            let got = inst.counts.get(key).copied().unwrap_or(0);
            if got != want {
                cxs.push(pair.counterexample(None, key, format!("expected {want}, found {got}")));
            }
        }
        inst.counts.entry("solvable_generating").or_default();
        Ok((inst, cxs))
    })?;
    Ok(report.finish())
}

/// A solvable generating transversal of a core-free subgroup forces a
/// solvable group.
pub fn theorem1(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let mut cat = catalog.clone();
    if cfg.stress {
        cat.extend(Catalog::stress())?;
    }
    let ps = pairs(&cat, cfg.max_order, true)?;
    let mut report = VerificationReport::new("theorem1", cfg.run_config());
    sweep(&mut report, &ps, |pair| {
        let g = &pair.entry.group;
        let g_solvable = g.is_solvable();
        let space = CosetSpace::new(g, &pair.h);
        let (mode, iter) = transversals(&space, pair, cfg);
        let mut inst = pair.instance(mode);
        let mut cxs = Vec::new();
        for key in ["transversals", "generating", "solvable_generating"] {
            inst.counts.insert(key, 0);
        }
        for t in iter {
            bump(&mut inst, "transversals");
            if !space.is_generating(&t) {
                continue;
            }
            bump(&mut inst, "generating");
            if is_solvable_loop(space.induced_loop(&t).right_loop()) {
                bump(&mut inst, "solvable_generating");
                if !g_solvable {
                    cxs.push(pair.counterexample(
                        Some(t.reps()),
                        "solvable generating transversal implies solvable group",
                        format!("{} is not solvable", pair.entry.name),
                    ));
                }
            }
        }
        if inst.counts["solvable_generating"] == 0 {
            inst.verdict = Verdict::Vacuous;
        }
        if !g_solvable {
            bump(&mut inst, "nonsolvable_group");
        }
        Ok((inst, cxs))
    })?;
    for inst in report
        .instances
        .iter()
        .filter(|i| i.counts.contains_key("nonsolvable_group"))
    {
        report.notes.push(format!(
            "{} H={:?} ({}): {} solvable generating among {} generating transversals",
            inst.group,
            inst.subgroup,
            format!("{:?}", inst.mode).to_lowercase(),
            inst.counts["solvable_generating"],
            inst.counts["generating"]
        ));
    }
    Ok(report.finish())
}

/// Order-2 torsion checks on one loop. Returns the number of qualifying `T` and
/// a list of `(check, detail)` failures.
pub fn theorem2_on_loop(s: &RightLoop) -> Result<(usize, Vec<(&'static str, String)>)> {
    let qualifying: Vec<InvariantSubloop> = order2_invariant_subloops(s)
        .into_iter()
        .filter(|t| {
            congruence_from_invariant(s, t)
                .map(|r| quotient_loop(s, &r).right_loop.is_associative())
                .unwrap_or(false)
        })
        .collect();
    let mut failures = Vec::new();
    if qualifying.is_empty() {
        return Ok((0, failures));
    }
    let torsion = s.torsion_group()?;
    let tg = torsion.as_group();
    if !tg.is_elementary_abelian_2() {
        let bad = (0..tg.order())
            .find(|&a| tg.mul(a, a) != 0)
            .map(|a| {
                format!(
                    "element {} has order {}",
                    torsion.elements()[a],
                    tg.element_order(a)
                )
            })
            .unwrap_or_else(|| "torsion group is not abelian".into());
        failures.push(("G_S is an elementary abelian 2-group", bad));
    }
    if !tg.is_abelian() {
        failures.push(("G_S is abelian", format!("|G_S| = {}", tg.order())));
    }
    for t in &qualifying {
        let t = t.elements()[1];
        for ((y, z), f) in torsion.generators() {
            for x in 0..s.order() {
                let fx = TorsionGroup::act(x, f);
                let tx = s.mul(t, x);
                if fx != x && (fx != tx || TorsionGroup::act(tx, f) != x) {
                    failures.push((
                        "f^S(y,z) is a product of transpositions (x, t∘x)",
                        format!("t={t} y={y} z={z}: f^S(y,z) = {f}, x={x}"),
                    ));
                    break;
                }
            }
        }
    }
    Ok((qualifying.len(), failures))
}

pub fn theorem2(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let ps = pairs(catalog, cfg.max_order, true)?;
    let mut report = VerificationReport::new("theorem2", cfg.run_config());
    sweep(&mut report, &ps, |pair| {
        let space = CosetSpace::new(&pair.entry.group, &pair.h);
        let (mode, iter) = transversals(&space, pair, cfg);
        let mut inst = pair.instance(mode);
        let mut cxs = Vec::new();
        for key in [
            "transversals",
            "distinct_loops",
            "qualifying_t",
            "vacuous_loops",
        ] {
            inst.counts.insert(key, 0);
        }
        let mut seen = HashSet::new();
        for t in iter {
            bump(&mut inst, "transversals");
            let s = space.induced_loop(&t).right_loop().clone();
            if !seen.insert(s.clone()) {
                continue;
            }
            bump(&mut inst, "distinct_loops");
            let (q, failures) = theorem2_on_loop(&s)?;
            *inst.counts.entry("qualifying_t").or_default() += q as u64;
            if q == 0 {
                bump(&mut inst, "vacuous_loops");
            }
            for (check, detail) in failures {
                cxs.push(pair.counterexample(Some(t.reps()), check, detail));
            }
        }
        if inst.counts["qualifying_t"] == 0 {
            inst.verdict = Verdict::Vacuous;
        }
        Ok((inst, cxs))
    })?;
    for (name, s) in &cfg.user_loops {
        let (q, failures) = theorem2_on_loop(s)?;
        let mut inst = user_instance(name, s);
        inst.counts.insert("qualifying_t", q as u64);
        if q == 0 {
            inst.verdict = Verdict::Vacuous;
        }
        let cxs = failures
            .into_iter()
            .map(|(check, detail)| loop_counterexample(name, s, check, detail))
            .collect();
        report.push(inst, cxs);
    }
    Ok(report.finish())
}

fn user_instance(name: &str, s: &RightLoop) -> Instance {
    Instance {
        group: name.into(),
        order: s.order(),
        subgroup: Vec::new(),
        core_free: false,
        mode: Mode::Direct,
        verdict: Verdict::Pass,
        counts: BTreeMap::new(),
    }
}

/// `G_S S ≅ G` with `G_S ≅ H` for generating transversals of core-free
/// subgroups.
pub fn reconstruction(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let ps = pairs(catalog, cfg.max_order, true)?;
    let mut report = VerificationReport::new("reconstruction", cfg.run_config());
    sweep(&mut report, &ps, |pair| {
        let g = &pair.entry.group;
        let space = CosetSpace::new(g, &pair.h);
        let (mode, iter) = transversals(&space, pair, cfg);
        let mut inst = pair.instance(mode);
        let mut cxs = Vec::new();
        let (hg, _) = g.subgroup_as_group(&pair.h);
        inst.counts.insert("checked", 0);
        for t in iter
            .filter(|t| space.is_generating(t))
            .take(RECONSTRUCTION_PER_PAIR)
        {
            bump(&mut inst, "checked");
            let s = space.induced_loop(&t);
            let reps = Some(t.reps());
            let gss = s.right_loop().g_ss()?;
            if !gss.group.is_isomorphic(g)? {
                cxs.push(pair.counterexample(
                    reps,
                    "G_S S ≅ G",
                    format!("|G_S S| = {}", gss.group.order()),
                ));
                continue;
            }
            if gss.torsion.order() != pair.h.order() {
                cxs.push(pair.counterexample(
                    reps,
                    "|G_S| = |H|",
                    format!("|G_S| = {}", gss.torsion.order()),
                ));
                continue;
            }
            let (tg, _) = gss.group.subgroup_as_group(&gss.torsion);
            if !tg.is_isomorphic(&hg)? {
                cxs.push(pair.counterexample(reps, "G_S ≅ H", String::new()));
            }
            let cosets = CosetSpace::new(&gss.group, &gss.torsion);
            let hit: HashSet<usize> = gss
                .translations
                .iter()
                .map(|&r| cosets.coset_of(r))
                .collect();
            if hit.len() != cosets.index() || gss.translations.len() != cosets.index() {
                cxs.push(pair.counterexample(
                    reps,
                    "right translations form a transversal of G_S",
                    format!("{} cosets hit of {}", hit.len(), cosets.index()),
                ));
            }
        }
        if inst.counts["checked"] == 0 {
            inst.verdict = Verdict::Vacuous;
        }
        Ok((inst, cxs))
    })?;
    Ok(report.finish())
}

/// `G_S S` is solvable for every solvable loop met: induced loops of all
/// pairs, the group tables themselves and any user loops.
pub fn corollary1(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let ps = pairs(catalog, cfg.max_order, false)?;
    let mut report = VerificationReport::new("corollary1", cfg.run_config());
    let check = |s: &RightLoop| -> Result<Option<String>> {
        if !is_solvable_loop(s) {
            return Ok(None);
        }
        let gss = s.g_ss()?;
        Ok((!gss.group.is_solvable()).then(|| format!("|G_S S| = {}", gss.group.order())))
    };
    sweep(&mut report, &ps, |pair| {
        let space = CosetSpace::new(&pair.entry.group, &pair.h);
        let (mode, iter) = transversals(&space, pair, cfg);
        let mut inst = pair.instance(mode);
        let mut cxs = Vec::new();
        for key in ["distinct_loops", "solvable_loops"] {
            inst.counts.insert(key, 0);
        }
        let mut seen = HashSet::new();
        for t in iter {
            let s = space.induced_loop(&t).right_loop().clone();
            if !seen.insert(s.clone()) {
                continue;
            }
            bump(&mut inst, "distinct_loops");
            if is_solvable_loop(&s) {
                bump(&mut inst, "solvable_loops");
            }
            if let Some(detail) = check(&s)? {
                cxs.push(pair.counterexample(Some(t.reps()), "G_S S is solvable", detail));
            }
        }
        if inst.counts["solvable_loops"] == 0 {
            inst.verdict = Verdict::Vacuous;
        }
        Ok((inst, cxs))
    })?;
    let mut direct: Vec<(String, RightLoop)> = catalog
        .entries()
        .iter()
        .filter(|e| e.group.order() <= cfg.max_order)
        .map(|e| {
            (
                format!("{} (table)", e.name),
                RightLoop::from_group(&e.group),
            )
        })
        .collect();
    direct.extend(cfg.user_loops.iter().cloned());
    for (name, s) in &direct {
        let mut inst = user_instance(name, s);
        let solvable = is_solvable_loop(s);
        inst.counts.insert("solvable_loops", solvable as u64);
        if !solvable {
            inst.verdict = Verdict::Vacuous;
        }
        let cxs = check(s)?
            .map(|d| loop_counterexample(name, s, "G_S S is solvable", d))
            .into_iter()
            .collect();
        report.push(inst, cxs);
    }
    Ok(report.finish())
}

/// A core-free `H` of index 2 in a normal `N` forces `N` to be an
/// elementary abelian 2-group.
pub fn corollary2(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("corollary2", cfg.run_config());
    let entries: Vec<&CatalogEntry> = catalog
        .entries()
        .iter()
        .filter(|e| e.group.order() <= cfg.max_order)
        .collect();
    let results: Vec<Result<Outcome>> = entries
        .par_iter()
        .map(|entry| {
            let g = &entry.group;
            let subs = entry.subgroups()?;
            let normals: Vec<&Subgroup> = subs.iter().filter(|n| g.is_normal(n)).collect();
            let mut inst = Instance {
                group: entry.name.clone(),
                order: g.order(),
                subgroup: Vec::new(),
                core_free: false,
                mode: Mode::Exhaustive,
                verdict: Verdict::Pass,
                counts: BTreeMap::from([("triples", 0)]),
            };
            let mut cxs = Vec::new();
            for h in subs.iter().filter(|h| g.is_core_free(h)) {
                for n in normals
                    .iter()
                    .filter(|n| n.order() == 2 * h.order() && h.is_subgroup_of(n))
                {
                    bump(&mut inst, "triples");
                    if !g.subgroup_is_elementary_abelian_2(n) {
                        cxs.push(Counterexample {
                            group: entry.name.clone(),
                            group_table: format_table(&g.rows()),
                            subgroup: h.elements().to_vec(),
                            reps: None,
                            check: "N is an elementary abelian 2-group".into(),
                            detail: format!("N = {:?}", n.elements()),
                        });
                    }
                }
            }
            if inst.counts["triples"] == 0 {
                inst.verdict = Verdict::Vacuous;
            }
            Ok((inst, cxs))
        })
        .collect();
    for r in results {
        let (mut inst, cxs) = r?;
        if !cxs.is_empty() {
            inst.verdict = Verdict::Fail;
        }
        report.push(inst, cxs);
    }
    Ok(report.finish())
}

/// Every core-free subgroup has a generating transversal.
pub fn cameron(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let ps = pairs(catalog, cfg.max_order, true)?;
    let mut report = VerificationReport::new("cameron", cfg.run_config());
    sweep(&mut report, &ps, |pair| {
        let space = CosetSpace::new(&pair.entry.group, &pair.h);
        let mut inst = pair.instance(Mode::Direct);
        let mut cxs = Vec::new();
        match space.find_generating_transversal() {
            Ok(t) if space.is_generating(&t) => {
                inst.counts.insert("found", 1);
            }
            Ok(t) => cxs.push(pair.counterexample(
                Some(t.reps()),
                "generating transversal exists",
                "returned transversal does not generate".into(),
            )),
            Err(e) => {
                cxs.push(pair.counterexample(None, "generating transversal exists", e.to_string()))
            }
        }
        Ok((inst, cxs))
    })?;
    Ok(report.finish())
}

/// Index 3 gives three isomorphism classes of transversals. Asserted for
/// non-normal core-free subgroups; other index-3 pairs and the converse
/// direction are reported as notes.
pub fn iso_classes(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let ps = pairs(catalog, cfg.max_order, false)?;
    let mut report = VerificationReport::new("iso-classes", cfg.run_config());
    let results: Vec<Result<(Outcome, Option<String>)>> = ps
        .par_iter()
        .map(|pair| {
            let g = &pair.entry.group;
            let space = CosetSpace::new(g, &pair.h);
            let index = space.index();
            let mut inst = pair.instance(Mode::Exhaustive);
            let mut cxs = Vec::new();
            let classes = match space.transversal_iso_classes(cfg.max_transversals) {
                Ok(c) => c,
                Err(Error::CapExceeded { .. }) => {
                    inst.verdict = Verdict::Skipped;
                    return Ok(((inst, cxs), None));
                }
                Err(e) => return Err(e),
            };
            inst.counts.insert("transversals", classes.transversals);
            inst.counts.insert("classes", classes.count() as u64);
            let normal = g.is_normal(&pair.h);
            let mut note = None;
            if index == 3 {
                if pair.core_free && !normal {
                    if classes.count() != 3 {
                        cxs.push(pair.counterexample(
                            None,
                            "index 3 gives 3 isomorphism classes",
                            format!("{} classes", classes.count()),
                        ));
                    }
                } else {
                    inst.verdict = Verdict::Vacuous;
                    note = Some(format!(
                        "{} H={:?}: index 3 ({}) with {} classes, not asserted",
                        pair.entry.name,
                        pair.h.elements(),
                        if normal { "normal" } else { "not core-free" },
                        classes.count()
                    ));
                }
            } else {
                inst.verdict = Verdict::Vacuous;
                if classes.count() == 3 {
                    note = Some(format!(
                        "{} H={:?}: 3 classes at index {index}",
                        pair.entry.name,
                        pair.h.elements()
                    ));
                }
            }
            Ok(((inst, cxs), note))
        })
        .collect();
    for r in results {
        let ((mut inst, cxs), note) = r?;
        if !cxs.is_empty() {
            inst.verdict = Verdict::Fail;
        }
        report.push(inst, cxs);
        report.notes.extend(note);
    }
    let skipped = report
        .instances
        .iter()
        .filter(|i| i.verdict == Verdict::Skipped)
        .count();
    if skipped > 0 {
        report
            .notes
            .push(format!("{skipped} pairs above the transversal cap skipped"));
    }
    Ok(report.finish())
}

/// The smallest group and abelian-group congruences are minimal among all
/// congruences with those quotients.
fn minimality_failures(s: &RightLoop) -> Result<Vec<(&'static str, String)>> {
    let mut failures = Vec::new();
    let sg = smallest_group_congruence(s);
    let ab = smallest_abelian_group_congruence(s);
    let sq = quotient_loop(s, &sg).right_loop;
    if !sq.is_associative() {
        failures.push((
            "smallest group congruence has a group quotient",
            String::new(),
        ));
    }
    let aq = quotient_loop(s, &ab).right_loop;
    if !aq.is_associative() || !aq.is_commutative() {
        failures.push((
            "derived congruence has an abelian group quotient",
            String::new(),
        ));
    }
    for inv in all_invariant_subloops(s)? {
        let r: Congruence = congruence_from_invariant(s, &inv)?;
        let q = quotient_loop(s, &r).right_loop;
        if !q.is_associative() {
            continue;
        }
        if !sg.refines(&r) {
            failures.push((
                "smallest group congruence is minimal",
                format!("invariant subloop {:?}", inv.elements()),
            ));
        }
        if q.is_commutative() && !ab.refines(&r) {
            failures.push((
                "derived subloop is minimal",
                format!("invariant subloop {:?}", inv.elements()),
            ));
        }
    }
    Ok(failures)
}

pub fn lemmas(catalog: &Catalog, cfg: &Config) -> Result<VerificationReport> {
    let ps = pairs(catalog, cfg.max_order, false)?;
    let mut report = VerificationReport::new("lemmas", cfg.run_config());
    sweep(&mut report, &ps, |pair| {
        let g = &pair.entry.group;
        let space = CosetSpace::new(g, &pair.h);
        let normals: Vec<Subgroup> = pair
            .entry
            .subgroups()?
            .into_iter()
            .filter(|n| g.is_normal(n) && pair.h.is_subgroup_of(n))
            .collect();
        let (mode, iter) = transversals(&space, pair, cfg);
        let mut inst = pair.instance(mode);
        let mut cxs = Vec::new();
        let mut seen = HashSet::new();
        for key in ["lemma4", "lemma_a", "lemma_b", "proof_chain", "minimality"] {
            inst.counts.insert(key, 0);
        }
        for t in iter {
            let s = space.induced_loop(&t);
            let reps = Some(t.reps());
            let mut fail =
                |check: &str, e: Error| cxs.push(pair.counterexample(reps, check, e.to_string()));
            bump(&mut inst, "lemma4");
            if let Err(e) = s.check_lemma4() {
                fail("lemma 4", e);
            }
            for tc in [s.theta_congruence(), Congruence::full(space.index())] {
                bump(&mut inst, "lemma_b");
                if let Err(e) = s.lemma_b_check(&tc) {
                    fail("lemma b", e);
                }
            }
            for n in &normals {
                bump(&mut inst, "lemma_a");
                if let Err(e) = s.lemma_a_check(n) {
                    fail("lemma a", e);
                }
            }
            if pair.core_free && space.is_generating(&t) {
                bump(&mut inst, "proof_chain");
                match s.proof_chain_check() {
                    Ok(chain) => {
                        let mut reported = HashSet::new();
                        for step in chain.steps.iter().filter(|s| !s.holds) {
                            if reported.insert(step.equation) {
                                cxs.push(pair.counterexample(
                                    reps,
                                    step.equation,
                                    format!(
                                        "n={}: {}",
                                        step.n,
                                        step.detail.clone().unwrap_or_default()
                                    ),
                                ));
                            }
                        }
                    }
                    Err(e) => cxs.push(pair.counterexample(reps, "proof chain", e.to_string())),
                }
            }
            let l = s.right_loop();
            if l.order() <= MINIMALITY_MAX_ORDER && seen.insert(l.clone()) {
                bump(&mut inst, "minimality");
                for (check, detail) in minimality_failures(l)? {
                    cxs.push(pair.counterexample(reps, check, detail));
                }
            }
        }
        Ok((inst, cxs))
    })?;
    Ok(report.finish())
}
