use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use mackey_core::io::{parse_subgroup, to_json, MackeyFile, SheafFile};
use mackey_core::mackey::check_axioms;
use mackey_core::sheaf::{
    decompose, mackey_to_sheaf, roundtrip_mackey, roundtrip_sheaf, sheaf_to_mackey, StalkPolicy,
    Transversal,
};
use mackey_core::suite::run_suite;
use mackey_core::{BurnsideRing, Check, FiniteGroup, Report, SubgroupLattice, WeylSheaf};
use serde_json::json;

use crate::source::{self, CliError, CliResult};
use crate::{Cli, Command, Format, Global};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    }
}

fn report_output(report: Report, g: &Global) -> Output {
    if let Some(c) = report.failures().next() {
        eprintln!(
            "failed: {} ({})",
            c.name,
            c.witness.as_deref().unwrap_or("")
        );
    }
    Output {
        passed: report.passed(),
        text: render(&report, g.format),
    }
}

fn write_out(g: &Global, contents: String) -> CliResult<()> {
    if let Some(p) = &g.out {
        std::fs::write(p, contents)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn lattice_of(name: &str, max_order: usize) -> CliResult<Arc<SubgroupLattice>> {
    let g = Arc::new(FiniteGroup::from_name(name)?);
    Ok(Arc::new(SubgroupLattice::with_cap(g, max_order)?))
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Marks { group } => marks(g, group),
        Command::Idempotents { group, normal } => idempotents(g, group, normal.as_deref()),
        Command::CheckMackey { input } => {
            let m = source::mackey(g, input.as_deref())?;
            let mut r = check_axioms(&m);
            r.set_input("depth", m.depth().to_string());
            Ok(report_output(r, g))
        }
        Command::ToSheaf { input } => to_sheaf(g, input.as_deref()),
        Command::ToMackey { input } => to_mackey(g, input.as_deref()),
        Command::Roundtrip { input } => {
            let sheaf_input = match input {
                Some(p) => source::is_sheaf_file(p)?,
                None => g.sheaf.is_some() && g.mackey.is_none(),
            };
            let r = if sheaf_input {
                let e = WeylSheaf::new(source::sheaf(g, input.as_deref())?)?;
                roundtrip_sheaf(&e)?
            } else {
                roundtrip_mackey(&source::mackey(g, input.as_deref())?, g.seed)?
            };
            Ok(report_output(r, g))
        }
        Command::Decompose { input } => decompose_cmd(g, input.as_deref()),
        Command::Stalks { input, chain } => stalks(g, input.as_deref(), chain),
        Command::Suite => {
            let (report, results) = run_suite(g.seed)?;
            let mut out = Output {
                passed: report.passed(),
                text: render(&report, g.format),
            };
            if g.format == Format::Text {
                let lines: String = results.iter().map(|r| r.line() + "\n").collect();
                out.text = lines + &out.text;
            }
            Ok(out)
        }
    }
}

fn marks(g: &Global, group: &str) -> CliResult<Output> {
    let lat = lattice_of(group, g.max_order)?;
    let ring = BurnsideRing::of_group(lat.clone());
    let reps: Vec<String> = (0..ring.rank())
        .map(|c| lat.subgroup(ring.class_rep(c)).to_string())
        .collect();
    let rows = ring.table_of_marks().rows().to_vec();
    let text = match g.format {
        Format::Json => {
            let classes: Vec<_> = (0..ring.rank())
                .map(|c| json!({"rep": reps[c], "order": lat.order_of(ring.class_rep(c)), "size": ring.classes()[c].len()}))
                .collect();
            serde_json::to_string_pretty(
                &json!({"command": "marks", "group": group, "classes": classes, "marks": rows}),
            )
            .expect("json")
        }
        Format::Csv => {
            let mut s = format!(
                "class,{}\n",
                reps.iter()
                    .map(|r| format!("\"{r}\""))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            for (c, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(s, "\"{}\",{}", reps[c], cells.join(","));
            }
            s
        }
        Format::Text => {
            let width = reps.iter().map(String::len).max().unwrap_or(1);
            let mut s = format!("table of marks of {group}\n");
            for (c, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
                let _ = writeln!(s, "{:>width$} |{}", reps[c], cells.join(""));
            }
            s
        }
    };
    Ok(Output { text, passed: true })
}

fn idempotents(g: &Global, group: &str, normal: Option<&str>) -> CliResult<Output> {
    let lat = lattice_of(group, g.max_order)?;
    let ring = BurnsideRing::of_group(lat.clone());
    let n = normal
        .map(|s| parse_subgroup(&lat, s))
        .transpose()?
        .unwrap_or(lat.trivial());
    let report = ring
        .idempotent_suite_check(n)?
        .with_input("group", group)
        .with_input("normal", lat.subgroup(n).to_string());
    let reps: Vec<String> = (0..ring.rank())
        .map(|c| lat.subgroup(ring.class_rep(c)).to_string())
        .collect();
    let mut table = Vec::new();
    for j in ring.classes_over(n) {
        let e = ring.idempotent_formula(n, j)?;
        let coeffs: Vec<String> = e.coeffs().iter().map(ToString::to_string).collect();
        let marks: Vec<String> = ring
            .mark_of(&e)
            .values
            .iter()
            .map(ToString::to_string)
            .collect();
        table.push((lat.subgroup(j).to_string(), coeffs, marks));
    }
    let text = match g.format {
        Format::Json => {
            let items: Vec<_> = table
                .iter()
                .map(|(j, c, m)| json!({"class": j, "coefficients": c, "marks": m}))
                .collect();
            let value = json!({
                "command": "idempotents",
                "group": group,
                "normal": lat.subgroup(n).to_string(),
                "classes": reps,
                "idempotents": items,
                "report": serde_json::to_value(&report).expect("json"),
            });
            serde_json::to_string_pretty(&value).expect("json")
        }
        Format::Csv => {
            let mut s = format!(
                "idempotent,{}\n",
                reps.iter()
                    .map(|r| format!("\"{r}\""))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            for (j, c, _) in &table {
                let _ = writeln!(s, "\"{j}\",{}", c.join(","));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} idempotents of {group} over N={}\n",
                table.len(),
                lat.subgroup(n)
            );
            for (j, c, _) in &table {
                let _ = writeln!(s, "  e_{j} = [{}]", c.join(", "));
            }
            s + &report.to_text()
        }
    };
    Ok(Output {
        text,
        passed: report.passed(),
    })
}

fn to_sheaf(g: &Global, input: Option<&Path>) -> CliResult<Output> {
    let m = source::mackey(g, input)?;
    let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal)?;
    let lat = m.lattice();
    let mut r = Report::new("to_sheaf")
        .with_input("functor", m.name())
        .with_input("tower", m.tower().label())
        .with_input("depth", m.depth().to_string())
        .with_input("stalk_dims", format!("{:?}", ms.sheaf.dims()));
    for w in &ms.witnesses {
        let stages: Vec<String> = w
            .stages
            .iter()
            .map(|(j, d)| format!("{}:{d}", lat.subgroup(*j)))
            .collect();
        let note = if w.stabilized() {
            "stable"
        } else {
            "terminal stage"
        };
        r.push(Check::pass(
            &format!("stalk {}", lat.subgroup(w.chain)),
            "stalk is the terminal stage of the idempotent sequence",
            format!("stages {} ({note})", stages.join(" -> ")),
        ));
    }
    let bad = ms.sheaf.weyl_violations();
    r.push(Check::from_bool(
        "weyl_condition",
        "each chain acts trivially on its own stalk",
        bad.is_empty(),
        format!("{} chains", lat.len()),
    ));
    write_out(g, to_json(&SheafFile::from_sheaf(&ms.sheaf)))?;
    Ok(report_output(r, g))
}

fn to_mackey(g: &Global, input: Option<&Path>) -> CliResult<Output> {
    let e = source::sheaf(g, input)?;
    let m = sheaf_to_mackey(&e, Transversal::Canonical)?;
    let mut r = check_axioms(&m);
    r.command = "to_mackey".into();
    r.set_input("sheaf", e.name());
    r.set_input("weyl", e.is_weyl().to_string());
    r.set_input("dims", format!("{:?}", m.dims()));
    write_out(g, to_json(&MackeyFile::from_functor(&m)))?;
    Ok(report_output(r, g))
}

fn decompose_cmd(g: &Global, input: Option<&Path>) -> CliResult<Output> {
    let m = source::mackey(g, input)?;
    let d = decompose(&m)?;
    let lat = m.lattice();
    let mut r = Report::new("decompose")
        .with_input("functor", m.name())
        .with_input("tower", m.tower().label());
    for p in &d.pieces {
        r.push(Check::pass(
            &format!("class {}", lat.subgroup(p.class_rep)),
            "idempotent piece with its Weyl group action",
            format!(
                "piece dim {}, Weyl order {}, fixed dim {}",
                p.space.dim(),
                p.weyl_module.action().map_or(1, |a| a.group().order()),
                p.fixed_dim
            ),
        ));
    }
    r.push(Check::from_bool(
        "dimension_formula",
        "dimension at the whole group is the sum of Weyl-fixed pieces",
        d.holds(),
        format!("dim M(G)={} sum={}", d.top_dim, d.total()),
    ));
    Ok(report_output(r, g))
}

fn stalks(g: &Global, input: Option<&Path>, chain: &str) -> CliResult<Output> {
    let m = source::mackey(g, input)?;
    let lat = m.lattice().clone();
    let k = parse_subgroup(&lat, chain)?;
    let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal)?;
    let w = &ms.witnesses[k];
    let stages: Vec<String> = w
        .stages
        .iter()
        .map(|(j, d)| format!("{}:{d}", lat.subgroup(*j)))
        .collect();
    let mut r = Report::new("stalks")
        .with_input("functor", m.name())
        .with_input("tower", m.tower().label())
        .with_input("depth", m.depth().to_string())
        .with_input(
            "chain",
            m.tower().describe_chain(&m.tower().chain_of(m.depth(), k)),
        );
    r.push(Check::pass(
        "stalk",
        "stalk is the terminal stage of the idempotent sequence",
        format!(
            "dim {} stages {} stabilized={}",
            ms.sheaf.stalk_dim(k),
            stages.join(" -> "),
            w.stabilized()
        ),
    ));
    let fixed = ms.sheaf.stalk_fixed(k).dim() == ms.sheaf.stalk_dim(k);
    r.push(Check::from_bool(
        "weyl_condition",
        "the chain acts trivially on its stalk",
        fixed,
        lat.subgroup(k).to_string(),
    ));
    Ok(report_output(r, g))
}
