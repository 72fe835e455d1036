//! Subcommand implementations. Every report embeds its configuration
//! header, and identical configurations produce byte-identical files.

use crate::specs::{build_op, parse_function_spec};
use crate::{
    CatalogArgs, CheckOpArgs, ConvolveArgs, ExportArgs, SweepArgs, VerifyArgs, EXIT_AXIOM_FAILURE,
    EXIT_HARNESS_DEFECT, EXIT_OK,
};
use anyhow::{bail, Context, Result};
use serde_json::json;
use std::path::Path;
use t2fuzz::axioms::{
    check_tr_axioms_with, o2_grid_residual, report_table, theorem_roundtrip_combiner,
    theorem_roundtrip_star, AxiomReport, FamilyConfig, FunctionFamily, RoundtripVerdict,
    TrCheckConfig,
};
use t2fuzz::convolution::{ConvolutionOperator, Convolved, Engine, OperatorKind};
use t2fuzz::membership::LGenerator;
use t2fuzz::scalar::{
    catalog_lookup, catalog_manifest, check_scalar_axioms, OpClass, ScalarCheckConfig, ScalarReport,
};

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn header(grid_n: usize, eps: f64, seed: u64, family: Option<&FamilyConfig>) -> serde_json::Value {
    json!({
        "tool": "t2fuzz",
        "grid_n": grid_n,
        "eps": eps,
        "seed": seed,
        "family": family.map(|f| json!({
            "j_points": f.j_points,
            "k_intervals": f.k_intervals,
            "v_params": f.v_params,
            "w_params": f.w_params,
            "random_members": f.random_members,
        })),
    })
}

fn header_text(grid_n: usize, eps: f64, seed: u64, family: Option<&FamilyConfig>) -> String {
    let family = family
        .map(|f| {
            format!(
                " families: J={} K={} V={} W={} L={}",
                f.j_points, f.k_intervals, f.v_params, f.w_params, f.random_members
            )
        })
        .unwrap_or_default();
    format!("# t2fuzz report | grid_n={grid_n} eps={eps} seed={seed}{family}\n")
}

fn scalar_report_text(report: &ScalarReport, required: &[&str]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "operation `{}` (grid {}, associativity grid {}, eps {})\n",
        report.op_name, report.grid_n, report.assoc_grid_n, report.eps
    ));
    for verdict in report.verdicts() {
        let name = verdict.axiom.to_string();
        let marker = if required.contains(&name.as_str()) {
            "required"
        } else {
            "informational"
        };
        match (&verdict.pass, &verdict.witness) {
            (true, _) => out.push_str(&format!("  {name:<4} pass  ({marker})\n")),
            (false, Some(w)) => {
                let z = w.z.map(|z| format!(", {z}")).unwrap_or_default();
                out.push_str(&format!(
                    "  {name:<4} FAIL  ({marker}) at ({}, {}{z}): lhs={} rhs={}\n",
                    w.x, w.y, w.lhs, w.rhs
                ));
            }
            (false, None) => out.push_str(&format!("  {name:<4} FAIL  ({marker})\n")),
        }
    }
    out.push_str(&format!(
        "  range-ok: {}  continuity estimate: {}\n",
        report.range_ok, report.continuity_estimate
    ));
    out
}

pub fn check_op(args: &CheckOpArgs) -> Result<u8> {
    let op = build_op(&args.op, &args.params, args.op_table.as_deref())?;
    let config = ScalarCheckConfig {
        grid_n: args.grid_n,
        assoc_grid_n: args.assoc_grid_n,
        eps: args.eps,
    };
    let report = check_scalar_axioms(&op, &config);
    let required: Vec<&str> = match op.declared_class() {
        OpClass::TConorm => vec!["T1", "T2", "T3", "T4'"],
        _ => vec!["T1", "T2", "T3", "T4"],
    };
    let pass = report
        .verdicts()
        .into_iter()
        .filter(|v| required.contains(&v.axiom.to_string().as_str()))
        .all(|v| v.pass)
        && report.range_ok;

    let dir = crate::out_dir(&args.out)?;
    let stem = format!("check-op-{}", args.op);
    let json_doc = json!({
        "header": header(args.grid_n, args.eps, 0, None),
        "op": {"name": args.op, "params": args.params, "class": op.declared_class(),
               "continuous": op.declared_continuous()},
        "required": required,
        "pass": pass,
        "report": report,
    });
    write_text(
        &dir.join(format!("{stem}.json")),
        &serde_json::to_string_pretty(&json_doc)?,
    )?;
    let text = format!(
        "{}{}",
        header_text(args.grid_n, args.eps, 0, None),
        scalar_report_text(&report, &required)
    );
    write_text(&dir.join(format!("{stem}.txt")), &text)?;
    print!("{text}");
    Ok(if pass { EXIT_OK } else { EXIT_AXIOM_FAILURE })
}

fn parse_kind(kind: &str) -> Result<OperatorKind> {
    match kind {
        "meet" => Ok(OperatorKind::MeetLike),
        "join" => Ok(OperatorKind::JoinLike),
        other => bail!("unknown kind `{other}`; expected meet or join"),
    }
}

fn parse_engine(engine: &str) -> Result<Engine> {
    match engine {
        "auto" => Ok(Engine::Auto),
        "exact" => Ok(Engine::Exact),
        "grid" => Ok(Engine::Grid),
        other => bail!("unknown engine `{other}`; expected auto, exact, or grid"),
    }
}

pub fn convolve(args: &ConvolveArgs) -> Result<u8> {
    let star = build_op(&args.star, &args.star_params, None)?;
    let combiner = build_op(&args.combiner, &args.combiner_params, None)?;
    let opr = ConvolutionOperator::new(
        star,
        combiner,
        parse_kind(&args.kind)?,
        parse_engine(&args.engine)?,
        args.grid_n,
    )?;
    let f = parse_function_spec(&args.f)?;
    let g = parse_function_spec(&args.g)?;
    let result = opr.convolve(&f, &g)?;
    let resolution = args.resolution.unwrap_or(args.grid_n);

    let dir = crate::out_dir(&args.out)?;
    write_text(&dir.join("input-f.csv"), &f.to_csv(resolution))?;
    write_text(&dir.join("input-g.csv"), &g.to_csv(resolution))?;

    let mut unfilled = 0usize;
    match &result {
        Convolved::Exact(exact) => {
            write_text(&dir.join("result.csv"), &exact.to_csv(resolution))?;
            let doc = json!({
                "header": header(args.grid_n, 0.0, 0, None),
                "engine": "exact",
                "function": exact.to_json(),
            });
            write_text(
                &dir.join("result.json"),
                &serde_json::to_string_pretty(&doc)?,
            )?;
            println!(
                "exact result with {} breakpoints",
                exact.breakpoints().len()
            );
        }
        Convolved::Grid(grid) => {
            unfilled = grid.unfilled_count();
            write_text(&dir.join("result.csv"), &grid.to_csv())?;
            let doc = json!({
                "header": header(args.grid_n, 0.0, 0, None),
                "engine": "grid",
                "grid": grid,
            });
            write_text(
                &dir.join("result.json"),
                &serde_json::to_string_pretty(&doc)?,
            )?;
            println!(
                "grid result at resolution {} ({} unfilled buckets)",
                grid.resolution(),
                unfilled
            );
        }
    }
    if unfilled > 0 && !args.allow_partial {
        eprintln!("{unfilled} buckets unfilled; pass --allow-partial to accept");
        return Ok(EXIT_AXIOM_FAILURE);
    }
    Ok(EXIT_OK)
}

/// The default verification matrix: the forward cells that must pass, the
/// broken-star cells that must link, and the varying-combiner cells.
fn forward_cells() -> Vec<(&'static str, Vec<f64>, &'static str, Vec<f64>)> {
    let names: [(&str, Vec<f64>); 4] = [
        ("minimum", vec![]),
        ("product", vec![]),
        ("lukasiewicz", vec![]),
        ("hamacher", vec![2.0]),
    ];
    let mut cells = Vec::new();
    for (s, sp) in &names {
        for (c, cp) in &names {
            cells.push((*s, sp.clone(), *c, cp.clone()));
        }
    }
    cells
}

fn broken_star_cells() -> Vec<(&'static str, &'static str)> {
    let mut cells = Vec::new();
    for star in ["mean", "scaled-product", "left-projection", "asym-power"] {
        for comb in ["minimum", "product"] {
            cells.push((star, comb));
        }
    }
    cells
}

fn combiner_cells() -> Vec<&'static str> {
    vec!["mean", "left-projection", "product", "maximum"]
}

struct CellOutcome {
    label: String,
    verdict: RoundtripVerdict,
    expected_failures: bool,
    prediction_ok: bool,
}

fn assess(label: String, verdict: RoundtripVerdict, expected_failures: bool) -> CellOutcome {
    let has_failures = !verdict.scalar_failures().is_empty();
    let prediction_ok = verdict.consistent && (has_failures == expected_failures);
    CellOutcome {
        label,
        verdict,
        expected_failures,
        prediction_ok,
    }
}

fn outcome_json(outcome: &CellOutcome) -> serde_json::Value {
    let v = &outcome.verdict;
    json!({
        "cell": outcome.label,
        "star": v.operator.star().name(),
        "combiner": v.operator.combiner().name(),
        "scalar_failures": v.scalar_failures().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "lifted_failures": v.lifted_failures().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "links": v.links.iter().map(|l| json!({
            "scalar": l.scalar_axiom.to_string(),
            "lifted": l.lifted_axiom.to_string(),
            "reproduced": l.reproduced,
            "witness": l.witness.to_json(),
        })).collect::<Vec<_>>(),
        "consistent": v.consistent,
        "harness_defect": v.harness_defect,
        "expected_failures": outcome.expected_failures,
        "prediction_ok": outcome.prediction_ok,
        "lifted_reports": v.lifted_reports.iter().map(AxiomReport::to_json).collect::<Vec<_>>(),
    })
}

fn outcome_text(outcome: &CellOutcome) -> String {
    let v = &outcome.verdict;
    let mut out = format!(
        "[{}] {}\n",
        if outcome.prediction_ok {
            "ok"
        } else {
            "MISMATCH"
        },
        outcome.label
    );
    if !v.scalar_failures().is_empty() {
        out.push_str(&format!(
            "    scalar failures: {:?}\n",
            v.scalar_failures()
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
        ));
        for link in &v.links {
            out.push_str(&format!(
                "    {} -> {} ({}): {}\n",
                link.scalar_axiom,
                link.lifted_axiom,
                if link.reproduced {
                    "reproduced"
                } else {
                    "NOT REPRODUCED"
                },
                link.witness.description
            ));
        }
    }
    if let Some(defect) = &v.harness_defect {
        out.push_str(&format!("    harness defect: {defect}\n"));
    }
    out
}

pub fn verify_theorems(args: &VerifyArgs) -> Result<u8> {
    let family_config = FamilyConfig {
        seed: args.seed,
        ..FamilyConfig::default()
    };
    let family = FunctionFamily::default_family(&family_config);
    let tr = TrCheckConfig {
        grid_n: args.grid_n,
        eps: args.eps,
        seed: args.seed,
        ..TrCheckConfig::default()
    };

    let mut outcomes: Vec<CellOutcome> = Vec::new();

    match (args.mode.as_str(), &args.star, &args.combiner) {
        ("full", None, None) => {
            for (s, sp, c, cp) in forward_cells() {
                let verdict = theorem_roundtrip_star(
                    catalog_lookup(s, &sp)?,
                    catalog_lookup(c, &cp)?,
                    &family,
                    &tr,
                )?;
                outcomes.push(assess(format!("forward {s} / {c}"), verdict, false));
            }
            for (s, c) in broken_star_cells() {
                let verdict = theorem_roundtrip_star(
                    catalog_lookup(s, &[])?,
                    catalog_lookup(c, &[])?,
                    &family,
                    &tr,
                )?;
                outcomes.push(assess(format!("broken-star {s} / {c}"), verdict, true));
            }
            for c in combiner_cells() {
                let comb = catalog_lookup(c, &[])?;
                let expect_fail = matches!(c, "mean" | "left-projection");
                let verdict = theorem_roundtrip_combiner(
                    catalog_lookup("minimum", &[])?,
                    comb,
                    &family,
                    &tr,
                )?;
                outcomes.push(assess(
                    format!("combiner minimum / {c}"),
                    verdict,
                    expect_fail,
                ));
            }
        }
        ("star", star, combiner) => {
            let star_name = star.as_deref().unwrap_or("minimum");
            let comb_name = combiner.as_deref().unwrap_or("minimum");
            let verdict = theorem_roundtrip_star(
                build_op(star_name, &args.star_params, None)?,
                build_op(comb_name, &args.combiner_params, None)?,
                &family,
                &tr,
            )?;
            let expect = !verdict.scalar_failures().is_empty();
            outcomes.push(assess(
                format!("star {star_name} / {comb_name}"),
                verdict,
                expect,
            ));
        }
        ("combiner", star, combiner) => {
            let star_name = star.as_deref().unwrap_or("minimum");
            let comb_name = combiner.as_deref().unwrap_or("minimum");
            let verdict = theorem_roundtrip_combiner(
                build_op(star_name, &args.star_params, None)?,
                build_op(comb_name, &args.combiner_params, None)?,
                &family,
                &tr,
            )?;
            let expect = !verdict.scalar_failures().is_empty();
            outcomes.push(assess(
                format!("combiner {star_name} / {comb_name}"),
                verdict,
                expect,
            ));
        }
        ("full", _, _) => {
            // a slice was requested through flags without a mode
            let star_name = args.star.as_deref().unwrap_or("minimum");
            let comb_name = args.combiner.as_deref().unwrap_or("minimum");
            let verdict = theorem_roundtrip_star(
                build_op(star_name, &args.star_params, None)?,
                build_op(comb_name, &args.combiner_params, None)?,
                &family,
                &tr,
            )?;
            let expect = !verdict.scalar_failures().is_empty();
            outcomes.push(assess(
                format!("star {star_name} / {comb_name}"),
                verdict,
                expect,
            ));
        }
        (other, _, _) => bail!("unknown mode `{other}`; expected star, combiner, or full"),
    }

    let dir = crate::out_dir(&args.out)?;
    let doc = json!({
        "header": header(args.grid_n, args.eps, args.seed, Some(&family_config)),
        "cells": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
    });
    write_text(
        &dir.join("verify-theorems.json"),
        &serde_json::to_string_pretty(&doc)?,
    )?;
    let mut text = header_text(args.grid_n, args.eps, args.seed, Some(&family_config));
    for outcome in &outcomes {
        text.push_str(&outcome_text(outcome));
    }
    write_text(&dir.join("verify-theorems.txt"), &text)?;
    print!("{text}");

    if outcomes.iter().any(|o| o.verdict.harness_defect.is_some()) {
        return Ok(EXIT_HARNESS_DEFECT);
    }
    if outcomes.iter().all(|o| o.prediction_ok) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_AXIOM_FAILURE)
    }
}

pub fn sweep(args: &SweepArgs) -> Result<u8> {
    let dir = crate::out_dir(&args.out)?;
    match (&args.family, &args.grid_values) {
        (Some(family_name), None) => {
            let values: Vec<f64> = args
                .values
                .as_deref()
                .ok_or_else(|| anyhow::anyhow!("--family requires --values"))?
                .split(',')
                .map(|s| s.trim().parse::<f64>().context("parsing --values"))
                .collect::<Result<_>>()?;
            if values.is_empty() {
                bail!("empty --values range");
            }
            // compact family keeps each row under a second
            let family = FunctionFamily::default_family(&FamilyConfig {
                j_points: 9,
                k_intervals: 5,
                v_params: 5,
                w_params: 5,
                random_members: 10,
                seed: args.seed,
            });
            let tr = TrCheckConfig {
                grid_n: 128,
                seed: args.seed,
                ..TrCheckConfig::default()
            };
            let mut csv =
                String::from("param,t1,t2,t3,t4,lifted_failures,consistent,worst_witness\n");
            for value in &values {
                let op = catalog_lookup(family_name, &[*value])?;
                let comb = catalog_lookup(&args.combiner, &[])?;
                let verdict = theorem_roundtrip_star(op, comb, &family, &tr)?;
                let r = &verdict.scalar_report;
                let worst = verdict
                    .links
                    .iter()
                    .map(|l| (l.witness.lhs - l.witness.rhs).abs())
                    .fold(0.0f64, f64::max);
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    value,
                    r.t1.pass,
                    r.t2.pass,
                    r.t3.pass,
                    r.t4.pass,
                    verdict.lifted_failures().len(),
                    verdict.consistent,
                    worst
                ));
            }
            write_text(&dir.join("sweep.csv"), &csv)?;
            print!("{csv}");
            Ok(EXIT_OK)
        }
        (None, Some(grid_values)) => {
            let grids: Vec<usize> = grid_values
                .split(',')
                .map(|s| s.trim().parse::<usize>().context("parsing --grid-values"))
                .collect::<Result<_>>()?;
            if grids.is_empty() {
                bail!("empty --grid-values range");
            }
            let mut gen = LGenerator::continuous(args.seed);
            let triples: Vec<_> = (0..5)
                .map(|_| (gen.next_member(), gen.next_member(), gen.next_member()))
                .collect();
            let mut csv = String::from("grid_n,o2_residual\n");
            for n in &grids {
                let opr = ConvolutionOperator::new(
                    catalog_lookup(&args.star, &[])?,
                    catalog_lookup(&args.combiner, &[])?,
                    OperatorKind::MeetLike,
                    Engine::Grid,
                    *n,
                )?;
                let residual = o2_grid_residual(&opr, &triples)?;
                csv.push_str(&format!("{n},{residual}\n"));
            }
            write_text(&dir.join("sweep.csv"), &csv)?;
            print!("{csv}");
            Ok(EXIT_OK)
        }
        _ => bail!("pass exactly one of --family (with --values) or --grid-values"),
    }
}

pub fn export_function(args: &ExportArgs) -> Result<u8> {
    let f = parse_function_spec(&args.f)?;
    let dir = crate::out_dir(&args.out)?;
    write_text(&dir.join("function.csv"), &f.to_csv(args.resolution))?;
    write_text(
        &dir.join("function.json"),
        &serde_json::to_string_pretty(&f.to_json())?,
    )?;
    println!(
        "exported {} samples and the exact form to {}",
        args.resolution + 1,
        dir.display()
    );
    Ok(EXIT_OK)
}

pub fn catalog(args: &CatalogArgs) -> Result<u8> {
    let manifest = catalog_manifest();
    let text = serde_json::to_string_pretty(&manifest)?;
    println!("{text}");
    if args.write {
        let dir = crate::out_dir(&args.out)?;
        write_text(&dir.join("catalog.json"), &text)?;
    }
    Ok(EXIT_OK)
}

/// Used by integration tests to drive a single axiom-check cell without the
/// full matrix.
#[allow(dead_code)]
pub fn run_single_cell(
    star: &str,
    comb: &str,
    grid_n: usize,
    eps: f64,
) -> Result<Vec<AxiomReport>> {
    let family = FunctionFamily::default_family(&FamilyConfig::default());
    let opr = ConvolutionOperator::new(
        catalog_lookup(star, &[])?,
        catalog_lookup(comb, &[])?,
        OperatorKind::MeetLike,
        Engine::Auto,
        grid_n,
    )?;
    let cfg = TrCheckConfig {
        grid_n,
        eps,
        ..TrCheckConfig::default()
    };
    let reports = check_tr_axioms_with(&opr, &family, &cfg);
    println!("{}", report_table(&reports));
    Ok(reports)
}
