use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hoops::enumerate::{enumerate_hoops_with, sqrt_census, EnumerateOptions, EXTENDED_BOUND};
use hoops::filters::{
    all_filters, distinguished_subsets, filter, is_maximal, is_prime, quotient, quotient_sqrt,
    sqrt_image_filter, sqrt_quotient_isomorphism,
};
use hoops::format::{dump_hoop, parse_hoop_file, FormatError};
use hoops::hoop::BuildError;
use hoops::morphisms::{find_isomorphism, product, product_sqrt, transport_root};
use hoops::parametric::{ParametricHoop, SamplePlan};
use hoops::roots::{classify_sqrt, nth_root_solve, sqrt_oracle, RootMap, SqrtClassification};
use hoops::term::{
    catalog, catalog_entry, hunt, parse_identity, run_catalog, CatalogEntry, CatalogReport,
    FiniteModel, Model, ParametricModel, Verdict,
};
use hoops::{ElemSet, Exec, FiniteHoop};
use serde_json::{json, Value};

use crate::report::{digest, fingerprint, Report, UsageError};

/// Largest carrier on which `sqrt` cross-checks against the all-maps search.
const ORACLE_BOUND: usize = 7;

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FiniteHoop, UsageError> {
    parse_hoop_file(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn labels(h: &FiniteHoop, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| h.label(x).to_string()).collect()
}

fn map_json(h: &FiniteHoop, r: &RootMap) -> Value {
    h.elements()
        .map(|x| json!([h.label(x), h.label(r.apply(x))]))
        .collect()
}

fn map_text(h: &FiniteHoop, r: &RootMap) -> String {
    h.elements()
        .map(|x| format!("{} -> {}", h.label(x), h.label(r.apply(x))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn classification_text(c: &SqrtClassification) -> String {
    format!(
        "good = {}, strict = {}, sq1 = {}, sq2 = {}, sq3 = {}",
        c.good, c.strict, c.sq1, c.sq2, c.sq3
    )
}

pub fn check(report: &mut Report, path: &Path) -> Result<(), UsageError> {
    let h = match parse_hoop_file(&read(path)?) {
        Ok(h) => h,
        Err(FormatError::Build {
            source: BuildError::Axioms(axioms),
            labels,
        }) => {
            let violations: Vec<Value> = axioms
                .violations
                .iter()
                .map(|v| {
                    let at: Vec<&str> = v.witness.iter().map(|&x| labels[x].as_str()).collect();
                    report.finding(format!("{} fails at ({})", v.axiom, at.join(", ")));
                    json!({ "axiom": v.axiom.tag(), "witness": at })
                })
                .collect();
            report.result = json!({ "certified": false, "violations": violations });
            report.text = "not a hoop\n".to_string();
            return Ok(());
        }
        Err(e) => return Err(UsageError(format!("{}: {e}", path.display()))),
    };
    report.fingerprint = Some(fingerprint(&h));
    let props: Vec<&str> = h.properties().iter().map(|p| p.name()).collect();
    report.result = json!({
        "certified": true,
        "size": h.size(),
        "elements": h.labels(),
        "bounded": h.is_bounded(),
        "properties": props,
    });
    report.text = format!(
        "certified hoop of size {}\nelements: {}\nproperties: {}\n",
        h.size(),
        h.labels().join(" "),
        props.join(", ")
    );
    Ok(())
}

pub fn root(report: &mut Report, path: &Path, degree: u32) -> Result<(), UsageError> {
    if degree == 0 {
        return Err(UsageError("root degree must be at least 1".into()));
    }
    let h = load(path)?;
    report.fingerprint = Some(fingerprint(&h));
    let r = nth_root_solve(&h, degree);
    let mut result = json!({ "degree": degree, "exists": r.is_some() });
    let name = if degree == 2 {
        "square root".to_string()
    } else {
        format!("root of degree {degree}")
    };
    let mut text = String::new();
    match &r {
        None => writeln!(text, "no {name}").unwrap(),
        Some(r) => {
            writeln!(text, "{name}: {}", map_text(&h, r)).unwrap();
            result["map"] = map_json(&h, r);
            result["identity"] = json!(r.is_identity());
        }
    }
    if degree == 2 {
        if h.size() <= ORACLE_BOUND {
            let oracle = sqrt_oracle(&h, ORACLE_BOUND)?;
            result["oracle_agrees"] = json!(oracle == r);
            if oracle != r {
                report.finding("the all-maps search disagrees with the solver");
            }
        }
        if let (Some(s), true) = (&r, h.is_bounded()) {
            let c = classify_sqrt(&h, s)?;
            writeln!(text, "{}", classification_text(&c)).unwrap();
            result["classification"] = serde_json::to_value(c).unwrap();
            result["join_hoop"] = json!(h.is_join_hoop());
            if !h.is_join_hoop() {
                writeln!(text, "note: not a join hoop, sq2 uses the candidate join").unwrap();
            }
        }
    }
    report.result = result;
    report.text = text;
    Ok(())
}

pub fn filters(report: &mut Report, path: &Path) -> Result<(), UsageError> {
    let h = load(path)?;
    report.fingerprint = Some(fingerprint(&h));
    let s = nth_root_solve(&h, 2).filter(|_| h.is_bounded());
    let join = h.is_join_hoop();
    let mut text = String::new();
    let mut rows = Vec::new();
    for f in all_filters(&h) {
        let prime = if join && f.is_proper() {
            Some(is_prime(&h, &f)?)
        } else {
            None
        };
        let maximal = if f.is_proper() {
            Some(is_maximal(&h, &f)?)
        } else {
            None
        };
        let image = s
            .as_ref()
            .map(|s| sqrt_image_filter(&h, &f, s))
            .transpose()?;
        let members = labels(&h, f.to_vec());
        let mut tags = Vec::new();
        if !f.is_proper() {
            tags.push("improper");
        }
        if prime == Some(true) {
            tags.push("prime");
        }
        if maximal == Some(true) {
            tags.push("maximal");
        }
        writeln!(text, "{{{}}} {}", members.join(", "), tags.join(" ")).unwrap();
        rows.push(json!({
            "members": members,
            "proper": f.is_proper(),
            "prime": prime,
            "maximal": maximal,
            "root_image": image.map(|g| labels(&h, g.to_vec())),
        }));
    }
    report.result = json!({ "join_hoop": join, "filters": rows });
    report.text = text;
    Ok(())
}

pub fn quotient_cmd(report: &mut Report, path: &Path, members: &str) -> Result<(), UsageError> {
    let h = load(path)?;
    report.fingerprint = Some(fingerprint(&h));
    let mut set = ElemSet::empty(h.size());
    for name in members.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let x = h
            .find_label(name)
            .ok_or_else(|| UsageError(format!("unknown element label `{name}`")))?;
        set.insert(x);
    }
    let f = filter(&h, set).map_err(|e| UsageError(format!("{{{members}}}: {e}")))?;
    let q = quotient(&h, &f)?;
    let classes: Vec<Vec<String>> = q.classes.iter().map(|c| labels(&h, c.clone())).collect();
    let mut text = String::new();
    for c in &classes {
        writeln!(text, "class {{{}}}", c.join(", ")).unwrap();
    }
    text.push_str(&dump_hoop(&q.hoop));
    let mut result = json!({
        "filter": labels(&h, f.to_vec()),
        "classes": classes,
        "quotient": dump_hoop(&q.hoop),
        "quotient_fingerprint": fingerprint(&q.hoop),
    });
    if let (Some(s), true) = (nth_root_solve(&h, 2), h.is_bounded()) {
        let t = quotient_sqrt(&h, &q, &s)?;
        writeln!(text, "induced square root: {}", map_text(&q.hoop, &t)).unwrap();
        result["quotient_root"] = map_json(&q.hoop, &t);
        let iso = sqrt_quotient_isomorphism(&h, &f, &s)?;
        writeln!(text, "root image quotient isomorphic: {iso}").unwrap();
        result["root_image_isomorphic"] = json!(iso);
        if !iso {
            report.finding("the root image of the quotient is not isomorphic to the quotient of the root images");
        }
    }
    report.result = result;
    report.text = text;
    Ok(())
}

pub fn subsets(report: &mut Report, path: &Path) -> Result<(), UsageError> {
    let h = load(path)?;
    report.fingerprint = Some(fingerprint(&h));
    let d = distinguished_subsets(&h)?;
    let rows = [
        ("idempotent", &d.idempotent),
        ("regular", &d.regular),
        ("dense", &d.dense),
        ("nilpotent", &d.nilpotent),
        ("boolean", &d.boolean),
    ];
    let mut text = String::new();
    let mut result = serde_json::Map::new();
    for (name, xs) in rows {
        let ls = labels(&h, xs.iter().copied());
        writeln!(text, "{name}: {{{}}}", ls.join(", ")).unwrap();
        result.insert(name.to_string(), json!(ls));
    }
    for f in &d.findings {
        report.finding(f.clone());
    }
    report.result = Value::Object(result);
    report.text = text;
    Ok(())
}

pub fn product_cmd(report: &mut Report, left: &Path, right: &Path) -> Result<(), UsageError> {
    let (a, b) = (load(left)?, load(right)?);
    let p = product(&a, &b);
    report.fingerprint = Some(fingerprint(&p));
    let mut text = dump_hoop(&p);
    let solved = nth_root_solve(&p, 2);
    let mut result = json!({
        "factors": [fingerprint(&a), fingerprint(&b)],
        "product": dump_hoop(&p),
        "has_sqrt": solved.is_some(),
    });
    match (nth_root_solve(&a, 2), nth_root_solve(&b, 2)) {
        (Some(sa), Some(sb)) => {
            let ps = product_sqrt(&a, &sa, &b, &sb)?;
            writeln!(text, "componentwise square root: {}", map_text(&p, &ps)).unwrap();
            result["sqrt"] = map_json(&p, &ps);
            if solved.as_ref() != Some(&ps) {
                report
                    .finding("the componentwise root differs from the solved root of the product");
            }
        }
        _ => {
            writeln!(text, "no square root").unwrap();
            if solved.is_some() {
                report.finding("the product has a root although a factor lacks one");
            }
        }
    }
    report.result = result;
    report.text = text;
    Ok(())
}

pub fn iso(report: &mut Report, left: &Path, right: &Path) -> Result<(), UsageError> {
    let (a, b) = (load(left)?, load(right)?);
    report.fingerprint = Some(fingerprint(&a));
    let found = find_isomorphism(&a, &b);
    let mut result = json!({
        "fingerprints": [fingerprint(&a), fingerprint(&b)],
        "isomorphic": found.is_some(),
    });
    let mut text = String::new();
    match &found {
        None => writeln!(text, "not isomorphic").unwrap(),
        Some(m) => {
            let pairs: Vec<String> = a
                .elements()
                .map(|x| format!("{} -> {}", a.label(x), b.label(m[x])))
                .collect();
            writeln!(text, "isomorphism: {}", pairs.join(", ")).unwrap();
            result["map"] = a
                .elements()
                .map(|x| json!([a.label(x), b.label(m[x])]))
                .collect();
            if let (Some(s), Some(t)) = (nth_root_solve(&a, 2), nth_root_solve(&b, 2)) {
                if transport_root(&a, &b, m, &s)? != t {
                    report.finding("the isomorphism does not carry one root onto the other");
                }
            }
        }
    }
    report.result = result;
    report.text = text;
    Ok(())
}

pub struct AuditArgs<'a> {
    pub file: Option<&'a Path>,
    pub model: Option<&'a str>,
    pub catalog: &'a str,
    pub plan: SamplePlan,
}

fn select(ids: &str) -> Result<Vec<&'static CatalogEntry>, UsageError> {
    if ids == "all" {
        return Ok(catalog().iter().collect());
    }
    ids.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|id| {
            catalog_entry(id).ok_or_else(|| UsageError(format!("unknown catalog entry `{id}`")))
        })
        .collect()
}

fn catalog_text(r: &CatalogReport) -> String {
    let mut text = String::new();
    for e in &r.entries {
        write!(text, "{:<14} {}", e.report.verdict.label(), e.id).unwrap();
        match &e.report.verdict {
            Verdict::Fail { detail, witness } => {
                write!(text, ": {detail}").unwrap();
                if let Some(w) = witness {
                    write!(text, " [{w}]").unwrap();
                }
            }
            Verdict::Vacuous { reason } | Verdict::NotApplicable { reason } => {
                write!(text, ": {reason}").unwrap()
            }
            Verdict::Pass => {}
        }
        text.push('\n');
    }
    let t = r.tally;
    writeln!(
        text,
        "pass {}, fail {}, vacuous {}, not applicable {}",
        t.pass, t.fail, t.vacuous, t.not_applicable
    )
    .unwrap();
    text
}

pub fn audit(report: &mut Report, args: AuditArgs<'_>) -> Result<(), UsageError> {
    let entries = select(args.catalog)?;
    let mut text = String::new();
    let (model_json, cat) = match (args.file, args.model) {
        (Some(path), None) => {
            let h = load(path)?;
            report.fingerprint = Some(fingerprint(&h));
            let m = FiniteModel::new(h);
            let mut info = json!({ "kind": "finite", "size": m.hoop().size() });
            if let (Some(s), true) = (m.sqrt_map(), m.hoop().is_bounded()) {
                let c = classify_sqrt(m.hoop(), s)?;
                writeln!(text, "square root: {}", map_text(m.hoop(), s)).unwrap();
                writeln!(text, "{}", classification_text(&c)).unwrap();
                info["classification"] = serde_json::to_value(c).unwrap();
            }
            (
                info,
                run_catalog(Model::Finite(&m), Some(&entries), Exec::default()),
            )
        }
        (None, Some(name)) => {
            let hoop: ParametricHoop = name.parse()?;
            let m = ParametricModel::new(hoop, args.plan)?;
            let c = m.classification();
            let s0 = c.sqrt_zero.as_ref().map(|r| r.to_string());
            report.fingerprint = Some(digest(&m.hoop().to_string()));
            writeln!(text, "model: {}", m.hoop()).unwrap();
            if let Some(s0) = &s0 {
                writeln!(text, "s(0) = {s0}").unwrap();
            }
            let strict = c.strict.map_or("n/a".to_string(), |b| b.to_string());
            writeln!(text, "good = {}, strict = {strict}", c.good).unwrap();
            let info = json!({
                "kind": "parametric",
                "name": m.hoop().to_string(),
                "plan": args.plan,
                "classification": { "sqrt_zero": s0, "good": c.good, "strict": c.strict },
            });
            (
                info,
                run_catalog(Model::Sampled(&m), Some(&entries), Exec::default()),
            )
        }
        _ => {
            return Err(UsageError(
                "audit needs exactly one of FILE or --model".into(),
            ))
        }
    };
    text.push_str(&catalog_text(&cat));
    for f in cat.failures() {
        report.finding(format!("catalog entry {} fails", f.id));
    }
    report.result = json!({ "model": model_json, "tally": cat.tally, "entries": cat.entries });
    report.text = text;
    Ok(())
}

pub fn hunt_cmd(
    report: &mut Report,
    identity: &str,
    max_size: usize,
    extended: bool,
) -> Result<(), UsageError> {
    let id = parse_identity(identity).map_err(|e| UsageError(format!("identity {e}")))?;
    let opts = EnumerateOptions {
        extended,
        exec: Exec::default(),
    };
    let found = hunt(&id, max_size, opts)?;
    let mut result =
        json!({ "identity": id.to_string(), "max_size": max_size, "found": found.is_some() });
    let mut text = String::new();
    match found {
        None => writeln!(text, "no counterexample up to size {max_size}").unwrap(),
        Some(w) => {
            writeln!(
                text,
                "counterexample of size {} (model {}): {}",
                w.size, w.index, w.detail
            )
            .unwrap();
            text.push_str(&dump_hoop(&w.hoop));
            report.fingerprint = Some(fingerprint(&w.hoop));
            result["witness"] = json!({
                "size": w.size,
                "index": w.index,
                "detail": w.detail,
                "assignment": w.witness.as_ref().map(|x| x.assignment.clone()),
                "model": dump_hoop(&w.hoop),
            });
            report.finding(format!("`{id}` fails on a hoop of size {}", w.size));
        }
    }
    report.result = result;
    report.text = text;
    Ok(())
}

pub fn enumerate(
    report: &mut Report,
    size: usize,
    census: bool,
    extended: bool,
) -> Result<(), UsageError> {
    let opts = EnumerateOptions {
        extended,
        exec: Exec::default(),
    };
    if size == EXTENDED_BOUND && extended {
        eprintln!("warning: size {size} is beyond the default enumeration bound");
    }
    let models = enumerate_hoops_with(size, opts)?;
    let mut text = format!("{} hoops of size {size}\n", models.models.len());
    let mut result = json!({
        "size": size,
        "count": models.models.len(),
        "models": models.models.iter().map(|h| json!({
            "fingerprint": fingerprint(h),
            "tables": dump_hoop(h),
        })).collect::<Vec<_>>(),
    });
    if census {
        let c = sqrt_census(&models, opts.exec);
        text.push_str(&c.to_csv());
        let exceptions = c.rigidity_exceptions();
        for i in &exceptions {
            report.finding(format!(
                "model {i}: root and idempotence disagree or the root is not the identity"
            ));
        }
        result["census"] = serde_json::to_value(&c.rows).unwrap();
        result["rigidity_exceptions"] = json!(exceptions);
    } else {
        for (i, h) in models.models.iter().enumerate() {
            writeln!(text, "# model {i}").unwrap();
            text.push_str(&dump_hoop(h));
        }
    }
    report.result = result;
    report.text = text;
    Ok(())
}
