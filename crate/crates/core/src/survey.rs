//! Batch driver: catalog groups, exact pairs and triples, and one report per
//! subject.

use std::sync::Arc;

use rayon::prelude::*;

use crate::double_groupoid::{
    verify_derived_composition, verify_groupoid_laws, verify_interchange, verify_unique_fillers,
};
use crate::error::{Error, Result};
use crate::factorization::{
    build_pair_factorization, build_triple_factorization, enumerate_exact_pairs,
    enumerate_exact_triples, enumerate_subgroups, PairFactorization, TripleFactorization,
    TripleMode,
};
use crate::group::{subgroup_generated, Family, GroupTable, SubgroupRef, DEFAULT_MAX_ORDER};
use crate::group_spec::{build_spec_with_limit, parse_generators, GroupSpec};
use crate::matched_pair::{
    bicrossproduct, derive_matched_pair, verify_canonical_map, verify_inverse_identities,
    verify_pair_axioms, MatchedPairData,
};
use crate::matched_triple::{
    derive_matched_triple, verify_cube_identities, verify_oracle_group, verify_triple_group,
    PairSlot, PAIRING_SOURCES,
};
use crate::report::{
    Check, CheckBuilder, Counterexample, Status, VerificationReport, DEFAULT_COUNTEREXAMPLE_CAP,
};

/// Largest order `run_survey` accepts.
pub const MAX_SURVEY_ORDER: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurveyOptions {
    pub triples: bool,
    pub include_degenerate: bool,
    pub mode: TripleMode,
    /// Counterexamples kept per check.
    pub cap: usize,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            triples: false,
            include_degenerate: false,
            mode: TripleMode::Strict,
            cap: DEFAULT_COUNTEREXAMPLE_CAP,
        }
    }
}

/// Options for the single-subject `run_verify_*` drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Counterexamples kept per check.
    pub cap: usize,
    /// Largest group table the spec may build.
    pub max_group_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_COUNTEREXAMPLE_CAP,
            max_group_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Catalog groups of order at most `max_order`, sorted by `(order, spec)`.
/// Products are unordered and built from nontrivial base groups.
pub fn catalog(max_order: usize) -> Vec<GroupSpec> {
    let base: Vec<GroupSpec> = (1..=24)
        .map(Family::Cyclic)
        .chain((3..=12).map(Family::Dihedral))
        .chain([
            Family::Symmetric(3),
            Family::Symmetric(4),
            Family::Alternating(4),
            Family::Klein4,
            Family::Quaternion8,
        ])
        .map(GroupSpec::Standard)
        .filter(|s| s.order().is_some_and(|o| o <= max_order))
        .collect();
    let mut out = base.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            let (oa, ob) = (a.order().unwrap(), b.order().unwrap());
            if oa > 1 && ob > 1 && oa * ob <= max_order {
                out.push(GroupSpec::product(a.clone(), b.clone()));
            }
        }
    }
    let mut keyed: Vec<(usize, String, GroupSpec)> = out
        .into_iter()
        .map(|s| (s.order().unwrap(), s.to_string(), s))
        .collect();
    keyed.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    keyed.into_iter().map(|(_, _, s)| s).collect()
}

/// `<g1,g2>`: a generating set of `h`, rendered in the ambient group.
pub fn describe_subgroup(h: &SubgroupRef) -> String {
    let g = h.ambient();
    let gens: Vec<String> = h
        .to_table()
        .generating_set()
        .into_iter()
        .map(|i| g.render(h.elements()[i]))
        .collect();
    format!("<{}>", gens.join(","))
}

fn error_check(id: &str, inputs: &str, err: &Error) -> Check {
    let mut c = CheckBuilder::new(id, 1);
    c.record(false, || Counterexample {
        inputs: inputs.into(),
        lhs: err.to_string(),
        rhs: "ok".into(),
    });
    c.finish()
}

/// Exhaustive closure, identity, inverse and associativity sweep.
fn group_axioms(g: &GroupTable, cap: usize) -> Check {
    let n = g.order();
    let mut c = CheckBuilder::new("group_axioms", cap);
    for a in 0..n {
        c.expect_eq(
            g.mul(0, a),
            a,
            |x| g.render(x),
            || format!("1·{}", g.render(a)),
        );
        c.expect_eq(
            g.mul(a, g.inv(a)),
            0,
            |x| g.render(x),
            || format!("{}·{}⁻¹", g.render(a), g.render(a)),
        );
        for b in 0..n {
            let ab = g.mul(a, b);
            for d in 0..n {
                c.expect_eq(
                    g.mul(ab, d),
                    g.mul(a, g.mul(b, d)),
                    |x| g.render(x),
                    || format!("({}·{})·{}", g.render(a), g.render(b), g.render(d)),
                );
            }
        }
    }
    c.finish()
}

fn subgroup_lattice(g: &GroupTable, subgroups: &[SubgroupRef], cap: usize) -> Check {
    let mut c = CheckBuilder::new("subgroups_closed_lagrange", cap);
    for h in subgroups {
        let closed = h
            .elements()
            .iter()
            .all(|&x| h.elements().iter().all(|&y| h.contains(g.mul(x, y))));
        let divides = g.order().is_multiple_of(h.len());
        c.record(closed && divides, || Counterexample {
            inputs: describe_subgroup(h),
            lhs: format!("closed={closed}, |H|={}", h.len()),
            rhs: format!("closed=true, |H| divides {}", g.order()),
        });
    }
    c.finish()
}

fn exactness_check(
    id: &str,
    g: &GroupTable,
    reproduce: impl Fn(usize) -> usize,
    cap: usize,
) -> Check {
    let mut c = CheckBuilder::new(id, cap);
    for x in 0..g.order() {
        c.expect_eq(reproduce(x), x, |v| g.render(v), || g.render(x));
    }
    c.finish()
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> impl Iterator<Item = Check> + '_ {
    checks.into_iter().map(move |mut c| {
        c.id = format!("{prefix}_{}", c.id);
        c
    })
}

fn action_notes(label: &str, mp: &MatchedPairData) -> Option<String> {
    match (mp.is_left_trivial(), mp.is_right_trivial()) {
        (true, true) => Some(format!("{label}trivial actions: direct product")),
        (true, false) => Some(format!("{label}trivial left action")),
        (false, true) => Some(format!("{label}trivial right action")),
        (false, false) => None,
    }
}

/// Every pair-level verifier on one exact factorization.
pub fn verify_pair_report(spec: &str, pf: &PairFactorization, cap: usize) -> VerificationReport {
    let g = pf.group();
    let subject = format!(
        "{spec} pair M={} N={}",
        describe_subgroup(pf.m()),
        describe_subgroup(pf.n())
    );
    let mut report = VerificationReport::new(subject, spec, g.order());
    report.extend([exactness_check(
        "exact_factorization",
        g,
        |x| {
            let (m, n) = pf.decomp(x);
            g.mul(m, n)
        },
        cap,
    )]);
    let mp = derive_matched_pair(pf);
    report.notes.extend(action_notes("", &mp));
    report.extend(verify_pair_axioms(&mp, cap));
    report.extend(verify_inverse_identities(&mp, cap));
    report.extend(verify_canonical_map(&mp, pf, cap));
    report.extend([match bicrossproduct(&mp) {
        Ok(b) => {
            let mut c = CheckBuilder::new("bicrossproduct_group", cap);
            c.expect_eq(b.order(), g.order(), |v| v.to_string(), || "order".into());
            c.finish()
        }
        Err(e) => error_check("bicrossproduct_group", "M×N", &e),
    }]);
    report.extend([verify_interchange(&mp, cap)]);
    report.extend(verify_groupoid_laws(&mp, cap));
    report.extend([
        verify_unique_fillers(&mp, cap),
        verify_derived_composition(&mp, cap),
    ]);
    report
}

/// Every triple-level verifier on one exact triple. Relaxed triples whose
/// pairwise products are not subgroups only get the oracle checks.
pub fn verify_triple_report(
    spec: &str,
    tf: &Arc<TripleFactorization>,
    cap: usize,
) -> VerificationReport {
    let g = tf.group();
    let subject = format!(
        "{spec} triple M={} N={} P={}",
        describe_subgroup(tf.m()),
        describe_subgroup(tf.n()),
        describe_subgroup(tf.p())
    );
    let mut report = VerificationReport::new(subject, spec, g.order());
    report.notes.push(format!("mode: {}", tf.mode().as_str()));
    report.extend([exactness_check(
        "exact_triple",
        g,
        |x| {
            let [m, n, p] = tf.decomp3(x);
            g.mul(g.mul(m, n), p)
        },
        cap,
    )]);

    let mt = match derive_matched_triple(tf) {
        Ok(mt) => mt,
        Err(e) => {
            report.notes.push(e.to_string());
            report.extend(
                ["pair_axioms", "cube_identities", "triple_formula"]
                    .map(|id| Check::skipped(id, "actions undefined for this relaxed triple")),
            );
            report.extend(verify_oracle_group(tf, cap));
            return report;
        }
    };
    report.notes.push(format!("pairings: {PAIRING_SOURCES}"));
    for (slot, prefix, pf) in [
        (PairSlot::MN, "mn", &tf.sub_pairs().unwrap().mn),
        (PairSlot::MP, "mp", &tf.sub_pairs().unwrap().mp),
        (PairSlot::NP, "np", &tf.sub_pairs().unwrap().np),
    ] {
        let mp = mt.pair(slot);
        report
            .notes
            .extend(action_notes(&format!("{prefix}: "), mp));
        report.extend(prefixed(prefix, verify_pair_axioms(mp, cap)));
        report.extend(prefixed(prefix, verify_inverse_identities(mp, cap)));
        report.extend(prefixed(prefix, verify_canonical_map(mp, pf, cap)));
    }
    report.extend(verify_cube_identities(&mt, cap));
    report.extend(verify_triple_group(&mt, cap));

    let verdict = match report.check("formula_matches_oracle") {
        Some(c) if c.status == Status::Pass => {
            format!(
                "corrected formula agrees with the oracle on all {} cells",
                c.instances
            )
        }
        Some(c) => format!(
            "corrected formula disagrees with the oracle in {} of {} cells",
            c.failures, c.instances
        ),
        None => "corrected formula not evaluated".into(),
    };
    report.notes.push(verdict);
    if let Some(note) = report
        .check("literal_third_slot")
        .and_then(|c| c.note.clone())
    {
        report.notes.push(format!("literal third slot: {note}"));
    }
    report
}

fn group_report(
    spec: &str,
    g: &GroupTable,
    subgroups: &[SubgroupRef],
    cap: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new(format!("{spec} group"), spec, g.order());
    report.extend([group_axioms(g, cap), subgroup_lattice(g, subgroups, cap)]);
    report
        .notes
        .push(format!("{} subgroups enumerated", subgroups.len()));
    report
}

fn survey_group(spec: &GroupSpec, opts: &SurveyOptions) -> Vec<VerificationReport> {
    let name = spec.to_string();
    let g = match spec.build() {
        Ok(g) => Arc::new(g),
        Err(e) => {
            let mut r =
                VerificationReport::new(format!("{name} group"), &name, spec.order().unwrap_or(0));
            r.extend([error_check("build", &name, &e)]);
            return vec![r];
        }
    };
    let subgroups = enumerate_subgroups(&g);
    let mut head = group_report(&name, &g, &subgroups, opts.cap);

    let pairs = enumerate_exact_pairs(&g, &subgroups, opts.include_degenerate);
    head.notes.push(format!("{} exact pairs", pairs.len()));
    let mut reports: Vec<VerificationReport> = pairs
        .into_par_iter()
        .map(|(m, n)| match build_pair_factorization(&g, m, n) {
            Ok(pf) => verify_pair_report(&name, &pf, opts.cap),
            Err(e) => failed_subject(&name, g.order(), "exact_factorization", &e),
        })
        .collect();

    if opts.triples {
        let triples = enumerate_exact_triples(&g, &subgroups, opts.include_degenerate, opts.mode);
        head.notes.push(format!(
            "{} exact triples ({})",
            triples.len(),
            opts.mode.as_str()
        ));
        reports.extend(
            triples
                .into_par_iter()
                .map(
                    |(m, n, p)| match build_triple_factorization(&g, m, n, p, opts.mode) {
                        Ok(tf) => verify_triple_report(&name, &Arc::new(tf), opts.cap),
                        Err(e) => failed_subject(&name, g.order(), "exact_triple", &e),
                    },
                )
                .collect::<Vec<_>>(),
        );
    }
    reports.insert(0, head);
    reports
}

fn failed_subject(spec: &str, order: usize, id: &str, err: &Error) -> VerificationReport {
    let mut r = VerificationReport::new(format!("{spec} {id}"), spec, order);
    r.extend([error_check(id, spec, err)]);
    r
}

/// Every catalog group of order at most `max_order`: a group report, then
/// one report per exact pair and, when requested, per exact triple.
pub fn run_survey(max_order: usize, opts: &SurveyOptions) -> Result<Vec<VerificationReport>> {
    if max_order == 0 || max_order > MAX_SURVEY_ORDER {
        return Err(Error::Argument(format!(
            "max order must be between 1 and {MAX_SURVEY_ORDER}"
        )));
    }
    Ok(catalog(max_order)
        .par_iter()
        .map(|spec| survey_group(spec, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect())
}

fn subgroup_from_text(g: &Arc<GroupTable>, text: &str) -> Result<SubgroupRef> {
    subgroup_generated(g, &parse_generators(g, text)?)
}

/// Builds `G`, `M = ⟨m_gens⟩`, `N = ⟨n_gens⟩` and runs every pair verifier.
pub fn run_verify_pair(
    spec: &str,
    m_gens: &str,
    n_gens: &str,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let (spec, g) = build_spec_with_limit(spec, opts.max_group_order)?;
    let m = subgroup_from_text(&g, m_gens)?;
    let n = subgroup_from_text(&g, n_gens)?;
    let pf = build_pair_factorization(&g, m, n)?;
    Ok(verify_pair_report(&spec.to_string(), &pf, opts.cap))
}

pub fn run_verify_triple(
    spec: &str,
    m_gens: &str,
    n_gens: &str,
    p_gens: &str,
    mode: TripleMode,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let (spec, g) = build_spec_with_limit(spec, opts.max_group_order)?;
    let m = subgroup_from_text(&g, m_gens)?;
    let n = subgroup_from_text(&g, n_gens)?;
    let p = subgroup_from_text(&g, p_gens)?;
    let tf = Arc::new(build_triple_factorization(&g, m, n, p, mode)?);
    Ok(verify_triple_report(&spec.to_string(), &tf, opts.cap))
}
