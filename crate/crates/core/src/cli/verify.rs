//! The one-shot pipeline running every suite on one algebra.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::AlgRef;
use crate::bits;
use crate::error::{Error, Result};
use crate::groups::{
    check_chain_relations, check_gamma, heart_controlled_cert, interval_heart_group, iota_is_isomorphism,
    picture_group, telescope, Psi,
};
use crate::hall::Hall;
use crate::rep::catalog::{Catalog, EnumOptions};
use crate::scalarext::{ExtensionContext, Report};
use crate::stability;
use crate::tau::TauTilting;
use crate::tors::{self, ClosureData, Lattice};
use crate::wcat::{self, WCat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub suite: &'static str,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub extension_degree: Option<u32>,
    pub truncation_level: Option<usize>,
    pub entries: Vec<Entry>,
    /// Milliseconds per suite; the only nondeterministic part of the report.
    pub timing_ms: BTreeMap<&'static str, u128>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub extend: Option<u32>,
    pub truncate: Option<usize>,
    /// Total dimension bound of the brute-force completeness sweep.
    pub sweep_total: usize,
    /// Dimension vectors with more candidate modules than this are skipped (and listed).
    pub sweep_cap: u64,
    /// Suites to run besides the representation-finiteness certificate; empty runs all.
    pub suites: Vec<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { extend: None, truncate: None, sweep_total: 8, sweep_cap: 1 << 10, suites: Vec::new() }
    }
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail).collect()
    }

    /// 0 when everything passes, 1 on a failed check, 3 when suites were skipped.
    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().any(|e| e.status == Status::Fail) {
            1
        } else if self.entries.iter().any(|e| e.status == Status::Skipped) {
            3
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("algebra: {}\n", self.algebra);
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            s += &format!("[{tag}] {}/{}", e.suite, e.check);
            if let Some(w) = &e.witness {
                s += &format!(": {w}");
            }
            s.push('\n');
        }
        let (p, n) = (self.entries.iter().filter(|e| e.status == Status::Pass).count(), self.entries.len());
        s += &format!("{p}/{n} checks passed\n");
        s
    }
}

struct Builder {
    entries: Vec<Entry>,
    timing: BTreeMap<&'static str, u128>,
    only: Vec<String>,
}

impl Builder {
    fn wants(&self, suite: &str) -> bool {
        suite == "rep-finiteness" || self.only.is_empty() || self.only.iter().any(|s| s == suite)
    }
    fn push(&mut self, suite: &'static str, check: &str, ok: bool, witness: Option<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.entries.push(Entry { suite, check: check.to_string(), status, witness });
    }
    fn flag(&mut self, suite: &'static str, check: &str, ok: bool) {
        self.push(suite, check, ok, None);
    }
    fn skip(&mut self, suite: &'static str, reason: &str) {
        self.entries.push(Entry { suite, check: "*".into(), status: Status::Skipped, witness: Some(reason.into()) });
    }
    fn report(&mut self, suite: &'static str, r: &Report) {
        for c in &r.checks {
            self.push(suite, c.name, c.ok, c.witness.clone());
        }
    }
    /// Errors inside a suite: caps become loud skips, anything else a failure.
    fn error(&mut self, suite: &'static str, e: &Error) {
        match e {
            Error::Cap(_) => self.skip(suite, &e.to_string()),
            _ => self.push(suite, "error", false, Some(e.to_string())),
        }
    }
    fn timed(&mut self, suite: &'static str, f: impl FnOnce(&mut Builder) -> Result<()>) {
        if !self.wants(suite) {
            return;
        }
        let start = Instant::now();
        if let Err(e) = f(self) {
            self.error(suite, &e);
        }
        self.timing.insert(suite, start.elapsed().as_millis());
    }
}

pub const SUITES: [&str; 7] = ["scalarext", "tau", "tors", "stability", "wcat", "hall", "groups"];

/// Run, in order: the representation-finiteness certificate and the scalar extension,
/// τ-tilting, torsion, stability, τ-cluster morphism category, Hall and group suites.
pub fn verify(alg: &AlgRef, name: &str, opts: &VerifyOptions) -> VerifyReport {
    let mut b = Builder { entries: Vec::new(), timing: BTreeMap::new(), only: opts.suites.clone() };
    let mut catalog = None;
    b.timed("rep-finiteness", |b| {
        let cat = catalog.insert(Catalog::build(alg, EnumOptions::default())?);
        b.push("rep-finiteness", "closure", true, Some(format!("{} indecomposables", cat.len())));
        let cert = cat.certify(opts.sweep_total, opts.sweep_cap)?;
        let mut w = cert.missing.as_ref().map(|d| format!("uncatalogued module of dimension vector {d:?}"));
        if w.is_none() && !cert.dim_vectors_skipped.is_empty() {
            w = Some(format!(
                "{} modules checked; {} dimension vectors over the candidate cap skipped",
                cert.modules_checked,
                cert.dim_vectors_skipped.len()
            ));
        }
        b.push("rep-finiteness", "brute-force-sweep", cert.ok(), w);
        Ok(())
    });
    let t = catalog.map(TauTilting::new);
    let t = match t {
        Some(Ok(t)) => t,
        other => {
            if let Some(Err(e)) = other {
                b.error("tau", &e);
            }
            let wanted: Vec<&str> = SUITES.into_iter().filter(|s| b.wants(s)).collect();
            for s in wanted {
                b.skip(s, "no certified catalogue of indecomposables");
            }
            return finish(b, alg, name, opts, None);
        }
    };

    let mut ctx = None;
    b.timed("scalarext", |b| {
        let Some(m) = opts.extend else {
            b.skip("scalarext", "no extension degree given");
            return Ok(());
        };
        let c = ExtensionContext::new(alg, m)?;
        b.report("scalarext", &c.verify()?);
        ctx = Some(c);
        Ok(())
    });
    // stability and wcat also check the extension, even when its own suite is not selected
    if let (None, Some(m), false) = (&ctx, opts.extend, b.wants("scalarext")) {
        if b.wants("stability") || b.wants("wcat") {
            match ExtensionContext::new(alg, m) {
                Ok(c) => ctx = Some(c),
                Err(e) => b.error(if b.wants("stability") { "stability" } else { "wcat" }, &e),
            }
        }
    }

    b.timed("tau", |b| tau_suite(b, &t));
    let lat = match Lattice::new(&t) {
        Ok(l) => l,
        Err(e) => {
            b.error("tors", &e);
            return finish(b, alg, name, opts, None);
        }
    };
    b.timed("tors", |b| tors_suite(b, &t, &lat));
    b.timed("stability", |b| {
        b.flag("stability", "chambers", stability::check_chambers(&t)?);
        b.flag("stability", "walls", stability::check_walls(&t, 2)?);
        b.flag("stability", "sub-quotient-symmetry", stability::check_sub_quotient_symmetry(&t)?);
        if let Some(c) = &ctx {
            b.report("stability", &stability::verify_extension(c, 3)?);
        }
        Ok(())
    });
    let mut wc = None;
    b.timed("wcat", |b| {
        let c = WCat::new(&t)?;
        b.flag("wcat", "category-axioms", c.check_category());
        b.flag("wcat", "containment-is-inclusion", c.check_containment_is_inclusion());
        b.flag("wcat", "identifications", wcat::check_identifications(&lat, &c)?);
        b.flag("wcat", "objects-are-wide", wcat::check_objects(&t, &c)?);
        if let Some(x) = &ctx {
            b.report("wcat", &wcat::verify_functor(x)?);
        }
        wc = Some(c);
        Ok(())
    });
    let level = opts.truncate.unwrap_or(Hall::default_level(&t) + 1);
    let hall = if !b.wants("hall") && !b.wants("groups") {
        None
    } else {
        match Hall::new(&t, level) {
            Ok(h) => Some(h),
            Err(e) => {
                b.error(if b.wants("hall") { "hall" } else { "groups" }, &e);
                None
            }
        }
    };
    if let Some(hall) = &hall {
        b.timed("hall", |b| {
            let r = hall.report(&lat)?;
            b.flag("hall", "unit", r.unit);
            b.flag("hall", "associativity", r.associative);
            b.flag("hall", "submodule-conservation", r.conservation);
            b.flag("hall", "inverses", r.inverses);
            b.flag("hall", "non-invertible-rejected", r.non_invertible_rejected);
            let w = format!("{} of {} maximal chains fail", r.factorization_failures, r.factorizations);
            b.push("hall", "factorization", r.factorization_failures == 0, (r.factorization_failures > 0).then_some(w));
            b.flag("hall", "phi-relations", r.phi_relations);
            b.flag("hall", "heart-controlled", r.heart_controlled);
            Ok(())
        });
        b.timed("groups", |b| groups_suite(b, &t, &lat, hall, wc.as_ref()));
    } else if b.wants("groups") {
        b.skip("groups", "no Hall algebra at this truncation");
    }
    finish(b, alg, name, opts, Some(level))
}

fn finish(b: Builder, _alg: &AlgRef, name: &str, opts: &VerifyOptions, level: Option<usize>) -> VerifyReport {
    VerifyReport {
        algebra: name.to_string(),
        extension_degree: opts.extend,
        truncation_level: level,
        entries: b.entries,
        timing_ms: b.timing,
    }
}

fn tau_suite(b: &mut Builder, t: &TauTilting) -> Result<()> {
    b.push("tau", "support-tau-tilting", t.stt_len() > 0, None);
    b.flag("tau", "covers-are-mutations", t.covers_are_mutations());
    let fan = t.check_fan()?;
    b.push("tau", "g-fan", fan.ok(), (!fan.ok()).then(|| format!("{fan:?}")));
    let mut w = None;
    for s in 0..t.stt_len() {
        let p = t.stt_pair(s);
        if !t.check_h(p) || t.ext_projective_pair(t.stt_fac(s)) != *p {
            w = Some(format!("{p:?}"));
        }
    }
    b.push("tau", "h-map-and-bongartz", w.is_none(), w);
    let mut w = None;
    for p in t.pairs() {
        let red = t.jasso_reduce(p)?;
        let ok = t.verify_reduction(&red)
            && t.check_wide(red.wide)?
            && bits::count(t.relative_simples(red.wide)) == t.rank() - p.size();
        if !ok {
            w = Some(format!("{p:?}"));
        }
    }
    b.push("tau", "reduction", w.is_none(), w);
    let mut w = None;
    for len in 1..=t.rank() {
        let signed = t.exceptional_sequences(len, true)?.len() as u64;
        let unsigned = t.exceptional_sequences(len, false)?.len() as u64;
        if signed != t.ordered_decomposition_count(len) || unsigned != t.tf_ordering_count(len) {
            w = Some(format!("length {len}"));
        }
    }
    b.push("tau", "exceptional-counts", w.is_none(), w);
    Ok(())
}

fn tors_suite(b: &mut Builder, t: &TauTilting, lat: &Lattice) -> Result<()> {
    let data = ClosureData::new(t)?;
    b.flag("tors", "oracle-classes", tors::check_against_oracle(t, lat, &data)?);
    b.flag("tors", "lattice", lat.check_lattice(t));
    b.flag("tors", "torf-duality", tors::check_torf_duality(t, lat));
    b.flag("tors", "semibrick-labels", tors::check_semibrick_labels(t, lat)?);
    b.flag("tors", "perpendicular-hearts", tors::check_perp_hearts(t, lat)?);
    let mut w = None;
    for p in t.pairs() {
        if !tors::check_interval_labels(t, lat, p)? {
            w = Some(format!("{p:?}"));
        }
    }
    b.push("tors", "interval-labels", w.is_none(), w);
    b.flag("tors", "f-bricks-are-bricks", tors::f_bricks(t)? == tors::bricks(t)?);
    Ok(())
}

fn groups_suite(b: &mut Builder, t: &TauTilting, lat: &Lattice, hall: &Hall, wc: Option<&WCat>) -> Result<()> {
    let g = picture_group(t, lat)?;
    let h = interval_heart_group(t, lat.classes());
    let r = Psi::new(&g, &h, lat)?.report(t);
    b.flag("groups", "psi-well-defined", r.psi_well_defined);
    b.flag("groups", "psi-relations", r.relations_preserved);
    b.flag("groups", "v-relations", r.v_relations_preserved);
    b.flag("groups", "v-psi-identity", r.v_psi_identity);
    b.flag("groups", "psi-v-identity", r.psi_v_identity);
    b.flag("groups", "psi-surjective", r.surjective);
    b.flag("groups", "abelianizations-agree", r.abelianizations_agree);
    let full = ClosureData::new(t)?.oracle_classes(t)?;
    b.flag("groups", "iota-isomorphism", iota_is_isomorphism(&h, &interval_heart_group(t, &full)));
    let top = h.generator(lat.bottom(), lat.top());
    b.flag("groups", "telescoping", lat.maximal_chains().iter().all(|c| telescope(&h, c) == top));
    b.flag("groups", "chain-relations", check_chain_relations(t, &g, lat, hall));
    let c = heart_controlled_cert(t, lat, hall, &g);
    b.flag("groups", "heart-controlled-generators", c.ok());
    if let Some(wc) = wc {
        let gr = check_gamma(t, wc, hall);
        b.flag("groups", "gamma-functor", gr.ok());
    }
    Ok(())
}
