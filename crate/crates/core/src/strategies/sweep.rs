//! Exhaustive sweep over minimal generating sets of the order-150 groups.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::enumerate_groups;
use crate::cayley::{default_names, GeneratorSet};
use crate::certificate::Provenance;
use crate::corpus::figure_ids;
use crate::group::{automorphisms, generate, Element, FiniteGroup, Group};

use super::{produce_certificate, CaseLabel, StrategyError};

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Restrict to these presets; empty means all.
    pub presets: Vec<String>,
}

/// Outcome for one orbit of minimal generating sets.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub preset: String,
    pub generators: Vec<(String, Element)>,
    /// Number of minimal generating sets (up to inverting elements) in the orbit.
    pub orbit: usize,
    pub case: Option<CaseLabel>,
    pub provenance: Option<Provenance>,
    pub figure: Option<String>,
    pub witness: Option<String>,
    pub note: Option<String>,
    pub cycle_sha256: Option<String>,
    pub verified: bool,
    pub error: Option<String>,
    /// The failure was an exhausted search budget.
    pub budget_exceeded: bool,
    /// Emitted certificate text.
    #[serde(skip)]
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub records: Vec<SweepRecord>,
}

/// Orbit representatives of minimal generating sets under `Aut(g)` and
/// inversion of individual elements, with orbit sizes. Each set is sorted,
/// and each element is the smaller of itself and its inverse.
pub fn minimal_generating_sets(g: &Group) -> Result<Vec<(Vec<usize>, usize)>, StrategyError> {
    let n = g.order();
    let norm: Vec<usize> = (0..n).map(|x| x.min(g.inv(x))).collect();
    let reps: Vec<usize> = (0..n).filter(|&x| x != g.identity() && norm[x] == x).collect();
    let auts: Vec<Vec<usize>> = automorphisms(g)?.into_iter().map(|a| a.images().to_vec()).collect();
    let image = |a: &[usize], set: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&x| norm[a[x]]).collect();
        v.sort_unstable();
        v
    };
    let canonical = |set: &[usize]| auts.iter().map(|a| image(a, set)).min().expect("identity automorphism");
    let orbit = |set: &[usize]| auts.len() / auts.iter().filter(|a| image(a, set) == set).count();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for &x in &reps {
        let c = canonical(&[x]);
        if seen.insert(c.clone()) {
            frontier.push(c);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in frontier {
            if generate(g, &set).order() == n {
                let o = orbit(&set);
                out.push((set, o));
                continue;
            }
            let span = generate(g, &set);
            for &y in &reps {
                if span.contains(y) {
                    continue;
                }
                let mut t = set.clone();
                t.push(y);
                let irredundant = (0..set.len()).all(|i| {
                    let others: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &z)| z).collect();
                    !generate(g, &others).contains(t[i])
                });
                if !irredundant {
                    continue;
                }
                let c = canonical(&t);
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn run_one(g: &Group, preset: &str, set: &[usize], orbit: usize) -> SweepRecord {
    let named: Vec<(String, usize)> = default_names(set.len()).into_iter().zip(set.iter().copied()).collect();
    let mut rec = SweepRecord {
        preset: preset.to_string(),
        generators: named.iter().map(|(n, x)| (n.clone(), g.element(*x))).collect(),
        orbit,
        case: None,
        provenance: None,
        figure: None,
        witness: None,
        note: None,
        cycle_sha256: None,
        verified: false,
        error: None,
        budget_exceeded: false,
        certificate: None,
    };
    let gens = match GeneratorSet::new(g, named) {
        Ok(s) => s,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    match produce_certificate(g, &gens) {
        Ok(out) => {
            rec.verified = out.certificate.verify().map(|r| r.ok).unwrap_or(false);
            rec.cycle_sha256 = Some(sha256_hex(&out.certificate.walk.to_string()));
            rec.case = Some(out.case);
            rec.provenance = Some(out.provenance);
            rec.figure = out.certificate.figure.clone();
            rec.witness = Some(out.witness.to_string());
            rec.note = out.note;
            rec.certificate = Some(out.certificate.emit());
        }
        Err(e) => {
            rec.budget_exceeded = e.is_budget();
            rec.error = Some(e.to_string());
        }
    }
    rec
}

/// Sweep one group: every orbit of minimal generating sets gets a
/// certificate. Records come back in enumeration order.
pub fn reproduce(g: &Group, preset: &str, opts: &SweepOptions) -> Result<Vec<SweepRecord>, StrategyError> {
    let sets = minimal_generating_sets(g)?;
    let work = || sets.par_iter().map(|(s, o)| run_one(g, preset, s, *o)).collect::<Vec<_>>();
    if opts.jobs == 0 {
        Ok(work())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| StrategyError::Internal(e.to_string()))?;
        Ok(pool.install(work))
    }
}

/// Sweep every isomorphism class of order 150, in catalog order.
pub fn reproduce_order_150(opts: &SweepOptions) -> Result<SweepReport, StrategyError> {
    let mut records = Vec::new();
    let classes = enumerate_groups(150).map_err(|e| StrategyError::Internal(e.to_string()))?;
    for class in classes {
        if !opts.presets.is_empty() && !opts.presets.contains(&class.id) {
            continue;
        }
        let g = Group::preset(&class.id)?;
        records.extend(reproduce(&g, &class.id, opts)?);
    }
    Ok(SweepReport { records })
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.records.iter().all(|r| r.verified)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SweepRecord> {
        self.records.iter().filter(|r| !r.verified)
    }

    pub fn figures_reached(&self) -> BTreeSet<String> {
        self.records.iter().filter_map(|r| r.figure.clone()).collect()
    }

    /// Figure ids never used by the sweep.
    pub fn figures_missed(&self) -> Vec<String> {
        let hit = self.figures_reached();
        figure_ids().filter(|id| !hit.contains(*id)).map(str::to_string).collect()
    }

    pub fn leaves_reached(&self) -> BTreeSet<CaseLabel> {
        self.records.iter().filter_map(|r| r.case.clone()).collect()
    }

    /// Human-readable summary.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let mut by_preset: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
        let mut order: Vec<&str> = Vec::new();
        for r in &self.records {
            let e = by_preset.entry(&r.preset).or_insert_with(|| {
                order.push(&r.preset);
                (0, 0, 0)
            });
            e.0 += 1;
            e.1 += r.orbit;
            e.2 += usize::from(r.verified);
        }
        let _ = writeln!(s, "{:<20} {:>7} {:>9} {:>9}", "preset", "orbits", "sets", "verified");
        for p in order {
            let (n, sets, ok) = by_preset[p];
            let _ = writeln!(s, "{p:<20} {n:>7} {sets:>9} {ok:>9}");
        }
        let mut prov: BTreeMap<&str, usize> = BTreeMap::new();
        for r in &self.records {
            *prov.entry(r.provenance.map(Provenance::as_str).unwrap_or("error")).or_default() += 1;
        }
        let _ = writeln!(s, "\nprovenance:");
        for (k, v) in &prov {
            let _ = writeln!(s, "  {k:<16} {v}");
        }
        let mut leaves: BTreeMap<String, usize> = BTreeMap::new();
        for r in &self.records {
            *leaves.entry(r.case.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "-".into())).or_default() += 1;
        }
        let _ = writeln!(s, "\ncase leaves:");
        for (k, v) in &leaves {
            let _ = writeln!(s, "  {v:>5}  {k}");
        }
        let missed = self.figures_missed();
        let _ = writeln!(s, "\nfigures reached: {} of {}", self.figures_reached().len(), figure_ids().count());
        for m in &missed {
            let _ = writeln!(s, "  missed: {m}");
        }
        let failures: Vec<&SweepRecord> = self.failures().collect();
        let _ = writeln!(s, "\nfailures: {}", failures.len());
        for r in failures {
            let gens: Vec<String> = r.generators.iter().map(|(n, e)| format!("{n}={e}")).collect();
            let _ = writeln!(s, "  {} {{{}}}: {}", r.preset, gens.join(", "), r.error.as_deref().unwrap_or("unverified"));
        }
        s
    }

    /// One JSON object per record.
    pub fn jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }

    /// Write `report.txt`, `summary.jsonl` and one file per certificate
    /// under `certs/`, named `<preset>-<nnnn>.cert` in record order.
    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        let certs = dir.join("certs");
        fs::create_dir_all(&certs)?;
        fs::write(dir.join("report.txt"), self.render())?;
        fs::write(dir.join("summary.jsonl"), self.jsonl())?;
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for r in &self.records {
            let k = index.entry(&r.preset).or_default();
            *k += 1;
            if let Some(text) = &r.certificate {
                fs::write(certs.join(format!("{}-{:04}.cert", r.preset, k)), text)?;
            }
        }
        Ok(())
    }
}
