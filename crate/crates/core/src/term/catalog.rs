//! The built-in catalog of checkable statements and the audit runner.

use std::sync::OnceLock;

use serde::Serialize;

use super::eval::{check_identity, CheckReport, Model, Verdict};
use super::procedures::{Outcome, Procedure};
use super::{parse_identity, Hypothesis, Identity};
use crate::exec::Exec;

const CATALOG_SOURCE: &str = include_str!("catalog.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryBody {
    Identity(Identity),
    Procedure(Procedure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    /// declared and implied hypotheses
    pub hypotheses: Vec<Hypothesis>,
    pub body: EntryBody,
    pub description: String,
}

impl CatalogEntry {
    /// The statement in source syntax, hypotheses included.
    pub fn statement(&self) -> String {
        match &self.body {
            EntryBody::Identity(id) => id.to_string(),
            EntryBody::Procedure(p) => {
                let hs: Vec<String> = self.hypotheses.iter().map(|h| h.to_string()).collect();
                if hs.is_empty() {
                    format!("@{p}")
                } else {
                    format!("{{{}}} @{p}", hs.join(", "))
                }
            }
        }
    }
}

fn parse_line(lineno: usize, line: &str) -> Result<CatalogEntry, String> {
    let cols: Vec<&str> = line.split('|').map(str::trim).collect();
    let [id, hyps, body, description] = cols[..] else {
        return Err(format!(
            "line {lineno}: expected 4 columns, found {}",
            cols.len()
        ));
    };
    let (hypotheses, body) = if let Some(name) = body.strip_prefix('@') {
        let hypotheses = hyps
            .trim_matches(|c| c == '{' || c == '}')
            .split(',')
            .map(str::trim)
            .filter(|h| !h.is_empty())
            .map(|h| {
                h.parse::<Hypothesis>()
                    .map_err(|h| format!("line {lineno}: unknown hypothesis `{h}`"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p: Procedure = name.parse().map_err(|e| format!("line {lineno}: {e}"))?;
        (hypotheses, EntryBody::Procedure(p))
    } else {
        let text = format!("{hyps} {body}");
        let identity = parse_identity(&text)
            .map_err(|e| format!("line {lineno}: {e} in `{text}`"))?
            .with_implied_hypotheses();
        (identity.hypotheses.clone(), EntryBody::Identity(identity))
    };
    Ok(CatalogEntry {
        id: id.to_string(),
        hypotheses,
        body,
        description: description.to_string(),
    })
}

fn parse_catalog(src: &str) -> Result<Vec<CatalogEntry>, String> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let e = parse_line(i + 1, line)?;
        if entries.iter().any(|o| o.id == e.id) {
            return Err(format!("line {}: duplicate id `{}`", i + 1, e.id));
        }
        entries.push(e);
    }
    Ok(entries)
}

/// Every built-in entry, in file order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(CATALOG_SOURCE).expect("built-in catalog is well formed"))
}

pub fn catalog_entry(id: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.id == id)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryResult {
    pub id: String,
    pub statement: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryResult>,
    pub tally: Tally,
}

impl CatalogReport {
    pub fn failures(&self) -> impl Iterator<Item = &EntryResult> {
        self.entries.iter().filter(|e| e.report.verdict.is_fail())
    }
}

fn run_entry(model: Model<'_>, e: &CatalogEntry) -> CheckReport {
    let bare = |verdict| CheckReport {
        verdict,
        checked: 0,
        skipped: 0,
    };
    if let Some(reason) = model.unmet(&e.hypotheses) {
        return bare(Verdict::Vacuous { reason });
    }
    match (&e.body, model) {
        (EntryBody::Identity(id), _) => check_identity(model, id).unwrap_or_else(|err| {
            // implied hypotheses rule this out; report rather than panic
            bare(Verdict::Fail {
                detail: err.to_string(),
                witness: None,
            })
        }),
        (EntryBody::Procedure(p), Model::Finite(m)) => match p.run(m) {
            Outcome::Pass(checked) => CheckReport {
                verdict: Verdict::Pass,
                checked,
                skipped: 0,
            },
            Outcome::Fail(detail) => bare(Verdict::Fail {
                detail,
                witness: None,
            }),
            Outcome::Vacuous(reason) => bare(Verdict::Vacuous { reason }),
        },
        (EntryBody::Procedure(_), Model::Sampled(_)) => bare(Verdict::NotApplicable {
            reason: "procedural check needs a finite model".into(),
        }),
    }
}

/// Run `entries` (all of the catalog when `None`) on one model.
pub fn run_catalog(
    model: Model<'_>,
    entries: Option<&[&CatalogEntry]>,
    exec: Exec,
) -> CatalogReport {
    let selected: Vec<&CatalogEntry> = match entries {
        Some(es) => es.to_vec(),
        None => catalog().iter().collect(),
    };
    let results = exec.map(selected, |e| EntryResult {
        id: e.id.clone(),
        statement: e.statement(),
        report: run_entry(model, e),
    });
    let mut tally = Tally::default();
    for r in &results {
        match r.report.verdict {
            Verdict::Pass => tally.pass += 1,
            Verdict::Fail { .. } => tally.fail += 1,
            Verdict::Vacuous { .. } => tally.vacuous += 1,
            Verdict::NotApplicable { .. } => tally.not_applicable += 1,
        }
    }
    CatalogReport {
        entries: results,
        tally,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::term::eval::FiniteModel;

    #[test]
    fn catalog_parses() {
        assert!(catalog().len() > 150);
        let e = catalog_entry("sqrt-square").unwrap();
        assert_eq!(e.hypotheses, vec![Hypothesis::Sqrt]);
        assert!(matches!(
            catalog_entry("quotient-root").unwrap().body,
            EntryBody::Procedure(Procedure::QuotientRoot)
        ));
        for p in Procedure::ALL {
            assert!(
                catalog().iter().any(|e| e.body == EntryBody::Procedure(*p)),
                "procedure {p} has no entry"
            );
        }
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse_catalog("a | | x = x").is_err());
        assert!(parse_catalog("a | {shiny} | x = x | d").is_err());
        assert!(parse_catalog("a | | @nothing | d").is_err());
        assert!(parse_catalog("a | | x = x | d\na | | x = x | d").is_err());
    }

    #[test]
    fn fixtures_pass_the_whole_catalog() {
        for h in [
            fixtures::trivial(),
            fixtures::two(),
            fixtures::g3(),
            fixtures::l3(),
            fixtures::b4(),
        ] {
            let m = FiniteModel::new(h);
            let r = run_catalog(Model::Finite(&m), None, Exec::Sequential);
            let fails: Vec<_> = r.failures().map(|e| (&e.id, &e.report.verdict)).collect();
            assert!(fails.is_empty(), "{fails:#?}");
        }
    }
}
