use std::path::Path;
use std::process::ExitCode;

use promosort_core::closed_forms::{
    attach_antichain, broom_f, irf_bound, irf_bound_limit, irf_evaluate, ordinal_sum_antichains_g, pedestal_coeffs,
    w_poset_tangled, weak_order_family, TreeRoute,
};
use promosort_core::enumeration::{sorting_gf, tangled_report};
use promosort_core::families::InflationFile;
use promosort_core::harness::conjectures::{scan_catalog, ConjectureReport, ScanChecks};
use promosort_core::harness::generate::generate_posets;
use promosort_core::io::{big_to_json, bigs_to_json, join_decimal, parse_decimal, parse_usize_list};
use promosort_core::promotion::{frozen_set, is_tangled, lift_labeling, order as order_of, promotions};
use promosort_core::{Error, GenFun, GenFunKind, InflationSpec, Labeling, Poset, Result, WParams};
use serde_json::json;

use crate::{Conjecture, Global, LabeledArgs, Mode, PosetArg, Route};

fn load(arg: &PosetArg) -> Result<Poset> {
    Poset::read(&arg.poset)
}

fn load_labeled(args: &LabeledArgs) -> Result<(Poset, Labeling)> {
    let poset = load(&args.poset)?;
    let labeling: Labeling = args.labeling.parse()?;
    labeling.check(&poset)?;
    Ok((poset, labeling))
}

fn name(poset: &Poset, x: usize) -> String {
    poset.names().map_or_else(|| x.to_string(), |names| names[x].clone())
}

fn names(poset: &Poset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| name(poset, x)).collect()
}

fn emit(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
}

fn ok() -> Result<ExitCode> {
    Ok(ExitCode::SUCCESS)
}

pub fn promote(g: &Global, args: &LabeledArgs, steps: usize) -> Result<ExitCode> {
    let (poset, start) = load_labeled(args)?;
    let run = promotions(&poset, &start, steps)?;
    if g.json {
        let steps: Vec<_> = run
            .iter()
            .enumerate()
            .map(|(i, s)| json!({"step": i + 1, "labeling": s.result.labels(), "chain": s.chain}))
            .collect();
        emit(json!({"start": start.labels(), "steps": steps}));
    } else {
        for (i, s) in run.iter().enumerate() {
            println!("step {}: {}  chain [{}]", i + 1, s.result, names(&poset, &s.chain).join(", "));
        }
    }
    ok()
}

pub fn order(g: &Global, args: &LabeledArgs) -> Result<ExitCode> {
    let (poset, labeling) = load_labeled(args)?;
    let k = order_of(&poset, &labeling)?;
    let tangled = is_tangled(&poset, &labeling)?;
    let frozen = frozen_set(&poset, &labeling)?;
    if g.json {
        emit(json!({
            "order": k,
            "natural": labeling.is_natural(&poset),
            "tangled": tangled,
            "frozen": frozen,
        }));
    } else {
        println!("order: {k}");
        println!("natural: {}", labeling.is_natural(&poset));
        println!("tangled: {tangled}");
        println!("frozen: {}", names(&poset, &frozen).join(" "));
    }
    ok()
}

pub fn gf(g: &Global, args: &PosetArg) -> Result<ExitCode> {
    let poset = load(args)?;
    let f = sorting_gf(&poset, &g.config())?;
    let cumulative = f.to_cumulative()?;
    if g.json {
        emit(json!({
            "poset": args.poset.display().to_string(),
            "f": bigs_to_json(f.trimmed()),
            "g": bigs_to_json(&cumulative.coeffs),
        }));
    } else {
        println!("f: {}", join_decimal(f.trimmed()));
        println!("g: {}", cumulative.to_text());
    }
    ok()
}

pub fn tangled(g: &Global, args: &PosetArg, by_element: bool) -> Result<ExitCode> {
    let poset = load(args)?;
    let report = tangled_report(&poset, &g.config())?;
    if g.json {
        emit(serde_json::to_value(&report)?);
    } else {
        println!("total: {}", report.total);
        if by_element {
            for (x, c) in report.by_element.iter().enumerate() {
                println!("{}: {c}", name(&poset, x));
            }
        }
    }
    ok()
}

pub fn lift(g: &Global, args: &LabeledArgs, indices: &str) -> Result<ExitCode> {
    let (poset, labeling) = load_labeled(args)?;
    let indices = parse_usize_list(indices)?;
    let lifted = lift_labeling(&labeling, &indices)?;
    let big = Poset::antichain(indices.len())?.ordinal_sum(&poset);
    let lifted_order = order_of(&big, &lifted)?;
    let base_order = order_of(&poset, &labeling)?;
    if g.json {
        emit(json!({"lifted": lifted.labels(), "order": lifted_order, "base_order": base_order}));
    } else {
        println!("lifted: {lifted}");
        println!("order: {lifted_order}");
        println!("base order: {base_order}");
    }
    ok()
}

pub fn irf(g: &Global, path: &Path, route: Route, enumerate: bool) -> Result<ExitCode> {
    let file: InflationFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let spec = InflationSpec::from_file(&file)?;
    let built = spec.build()?;
    let poset = &built.poset;
    let n = poset.len();
    if n < 2 {
        return Err(Error::Param("tangled labelings need at least two elements".into()));
    }
    let route = match route {
        Route::Reduced => TreeRoute::Reduced,
        Route::AsGiven => TreeRoute::AsGiven,
    };
    let evals = (0..n).map(|x| irf_evaluate(&spec, x, route)).collect::<Result<Vec<_>>>()?;
    let brute = if enumerate { Some(tangled_report(poset, &g.config())?) } else { None };
    let single_tree = spec.parent.iter().filter(|p| p.is_none()).count() == 1;
    let bound = if single_tree { Some((irf_bound(&spec)?, irf_bound_limit(&spec)?)) } else { None };
    let mismatch = brute.as_ref().is_some_and(|b| evals.iter().zip(&b.by_element).any(|(e, c)| e.count != *c));
    if g.json {
        let elements: Vec<_> = evals
            .iter()
            .enumerate()
            .map(|(x, e)| {
                json!({
                    "element": x,
                    "count": big_to_json(&e.count),
                    "leaf_sum": e.sum.to_string(),
                    "unit_factors": e.degenerate_factors,
                    "enumerated": brute.as_ref().map(|b| big_to_json(&b.by_element[x])),
                })
            })
            .collect();
        emit(json!({
            "n": n,
            "phi": built.phi,
            "elements": elements,
            "bound": bound.as_ref().map(|(s, l)| json!({"sum": s.to_string(), "limit": l.to_string()})),
            "agrees": !mismatch,
        }));
    } else {
        for (x, e) in evals.iter().enumerate() {
            let mut line = format!("{}: {}", name(poset, x), e.count);
            if let Some(b) = &brute {
                line.push_str(&format!("  enumerated {}", b.by_element[x]));
            }
            println!("{line}");
        }
        if let Some((sum, limit)) = &bound {
            println!("leaf sum: {sum} (limit {limit})");
        }
    }
    if mismatch {
        return Err(Error::Internal("formula and enumeration disagree".into()));
    }
    ok()
}

pub fn wposet(g: &Global, [a, b, c, d]: [usize; 4], enumerate: bool) -> Result<ExitCode> {
    let params = WParams::new(a, b, c, d);
    let count = w_poset_tangled(&params)?;
    let brute = if enumerate { Some(tangled_report(&params.build(), &g.config())?.total) } else { None };
    if g.json {
        emit(json!({
            "params": [a, b, c, d],
            "n": params.size(),
            "tangled": big_to_json(&count),
            "enumerated": brute.as_ref().map(big_to_json),
        }));
    } else {
        println!("tangled: {count}");
        if let Some(b) = &brute {
            println!("enumerated: {b}");
        }
    }
    if brute.is_some_and(|b| b != count) {
        return Err(Error::Internal("formula and enumeration disagree".into()));
    }
    ok()
}

pub fn attach(g: &Global, poset: Option<&Path>, coeffs: Option<&str>, k: usize, mode: Mode) -> Result<ExitCode> {
    let kind = match mode {
        Mode::Sorting => GenFunKind::Sorting,
        Mode::Cumulative => GenFunKind::Cumulative,
    };
    let gf = match (poset, coeffs) {
        (Some(path), _) => {
            let f = sorting_gf(&Poset::read(path)?, &g.config())?;
            match kind {
                GenFunKind::Sorting => f,
                GenFunKind::Cumulative => f.to_cumulative()?,
            }
        }
        (None, Some(text)) => GenFun { kind, coeffs: parse_decimal(text)? },
        (None, None) => return Err(Error::Param("give --poset or --coeffs".into())),
    };
    let out = attach_antichain(&gf, k, kind)?;
    let shown = match kind {
        GenFunKind::Sorting => out.trimmed(),
        GenFunKind::Cumulative => &out.coeffs,
    };
    if g.json {
        emit(json!({"k": k, "mode": kind, "coeffs": bigs_to_json(shown)}));
    } else {
        println!("{}", join_decimal(shown));
    }
    ok()
}

pub fn pedestal(g: &Global, n: usize, l: usize) -> Result<ExitCode> {
    let p = pedestal_coeffs(n, l)?;
    if g.json {
        emit(serde_json::to_value(&p)?);
    } else {
        println!("b tail: {}", join_decimal(&p.b_tail));
        println!("a tail: {}", join_decimal(&p.a_tail));
        match &p.quasi_plus_tangled {
            Some(v) => println!("tangled + quasi-tangled: {v}"),
            None => println!("tangled + quasi-tangled: depends on the base poset when l = 1"),
        }
    }
    ok()
}

pub fn ordsum(g: &Global, composition: &str) -> Result<ExitCode> {
    let parts = parse_usize_list(composition)?;
    let cumulative = ordinal_sum_antichains_g(&parts)?;
    let f = cumulative.to_sorting()?;
    if g.json {
        emit(json!({"composition": parts, "f": bigs_to_json(f.trimmed()), "g": bigs_to_json(&cumulative.coeffs)}));
    } else {
        println!("f: {}", join_decimal(f.trimmed()));
        println!("g: {}", cumulative.to_text());
    }
    ok()
}

pub fn broom(g: &Global, n: usize, k: usize) -> Result<ExitCode> {
    let f = broom_f(n, k);
    if g.json {
        emit(json!({"n": n, "k": k, "f": bigs_to_json(&f.coeffs)}));
    } else {
        println!("f: {}", f.to_text());
    }
    ok()
}

fn one_line(perm: &[usize]) -> String {
    if perm.len() < 10 {
        perm.iter().map(usize::to_string).collect()
    } else {
        perm.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn weak_order(g: &Global, composition: &str) -> Result<ExitCode> {
    let parts = parse_usize_list(composition)?;
    let fam = weak_order_family(&parts)?;
    let perm = |i: usize| one_line(&fam.perms[i]);
    // Refinement pairs (i, j) compare b_{rev(i)} with b_{rev(j)}.
    let image = |i: usize| perm(fam.reversed(i));
    if g.json {
        let vectors: Vec<_> = fam
            .perms
            .iter()
            .zip(&fam.vectors)
            .map(|(p, v)| json!({"perm": one_line(p), "vector": bigs_to_json(v)}))
            .collect();
        let pairs = |v: &[(usize, usize)], f: &dyn Fn(usize) -> String| -> Vec<[String; 2]> {
            v.iter().map(|&(a, b)| [f(a), f(b)]).collect()
        };
        emit(json!({
            "composition": parts,
            "vectors": vectors,
            "hasse": pairs(&fam.hasse, &perm),
            "collisions": pairs(&fam.collisions, &perm),
            "weak_covers": pairs(&fam.refinement.weak_covers, &perm),
            "violations": pairs(&fam.refinement.violations, &perm),
            "extra": pairs(&fam.refinement.extra, &image),
            "refines": fam.refinement.holds(),
        }));
    } else {
        for (p, v) in fam.perms.iter().zip(&fam.vectors) {
            println!("{}: {}", one_line(p), join_decimal(v));
        }
        for &(a, b) in &fam.hasse {
            println!("cover: b{} < b{}", perm(a), perm(b));
        }
        for &(a, b) in &fam.collisions {
            println!("collision: b{} = b{}", perm(a), perm(b));
        }
        println!("weak covers: {}", fam.refinement.weak_covers.len());
        for &(a, b) in &fam.refinement.violations {
            println!("violation: {} < {} but b{} is not below b{}", perm(a), perm(b), image(a), image(b));
        }
        for &(a, b) in &fam.refinement.extra {
            println!("extra: b{} <= b{}", image(a), image(b));
        }
        println!("refines weak order: {}", if fam.refinement.holds() { "yes" } else { "no" });
    }
    ok()
}

pub fn gen_posets(g: &Global, n: usize, connected: bool, out: Option<&Path>) -> Result<ExitCode> {
    let threads = g.config().threads;
    let catalog = generate_posets(n, connected, threads, g.force)?;
    match out {
        Some(path) => catalog.save(path)?,
        None => catalog.write_ndjson(std::io::stdout().lock())?,
    }
    eprintln!("{} posets on {n} elements{}", catalog.len(), if connected { ", connected" } else { "" });
    ok()
}

fn failed(report: &ConjectureReport, which: Conjecture) -> bool {
    match which {
        Conjecture::All => !report.pass(),
        Conjecture::NMinus2 => !(report.element_bound_ok && report.equality_ok),
        Conjecture::Hodges => !report.hodges_ok,
        Conjecture::NMinus1 => !report.total_bound_ok,
    }
}

pub fn verify(g: &Global, max_n: usize, which: Conjecture, connected: bool, unimodality: bool) -> Result<ExitCode> {
    let config = g.config();
    let checks = ScanChecks { bounds: true, unimodality };
    let mut levels = Vec::new();
    let mut counterexamples = 0;
    for n in 2..=max_n {
        let catalog = generate_posets(n, connected, config.threads, g.force)?;
        let summary = scan_catalog(&catalog, checks, &config)?;
        let bad: Vec<&ConjectureReport> = summary.counterexamples.iter().filter(|r| failed(r, which)).collect();
        counterexamples += bad.len();
        if !g.json {
            println!("n = {n}: {} posets, {} counterexamples", summary.posets, bad.len());
            for r in &bad {
                let covers: Vec<String> = r.covers.iter().map(|[a, b]| format!("{a}<{b}")).collect();
                println!("  counterexample {}: covers {}", r.id, covers.join(" "));
                for e in r.offending() {
                    println!("    element {}: {} tangled (bound {})", e.element, e.count, r.element_bound);
                }
            }
            if unimodality {
                println!("  not unimodal: {}", summary.non_unimodal.len());
            }
        }
        levels.push(json!({
            "n": n,
            "posets": summary.posets,
            "counterexamples": bad,
            "non_unimodal": summary.non_unimodal,
        }));
    }
    if g.json {
        emit(json!({"connected_only": connected, "levels": levels, "clean": counterexamples == 0}));
    }
    Ok(if counterexamples == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

pub fn export_dot(args: &PosetArg, labeling: Option<&str>) -> Result<ExitCode> {
    let poset = load(args)?;
    let labeling = labeling.map(str::parse::<Labeling>).transpose()?;
    if let Some(l) = &labeling {
        l.check(&poset)?;
    }
    print!("{}", promosort_core::dot::export_dot(&poset, labeling.as_ref()));
    ok()
}
