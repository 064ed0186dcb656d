use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use bei_core::bms::{bms_scan, verify_reduction_d2, verify_reduction_d3, ScanFilters, ScanOutcome};
use bei_core::cas::{emit_cas_script, Dialect};
use bei_core::corona::{gadget_d2, gadget_d3, CoronaProduct, CoronaSpec};
use bei_core::cutsets::{accessibility_witness_chain_bounded, enumerate_cutsets_bounded, is_cutset};
use bei_core::graph::format::{to_dot, to_edge_list, to_graph6};
use bei_core::invariants::{
    base_invariants_block_graph, depth_reg_corona_cm_closed, depth_reg_corona_complete, depth_reg_corona_path,
    BaseInvariants, InvariantReport,
};
use bei_core::{Graph, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::input::{parse_graph_arg, parse_source, parse_vertex_list, read_text, Source};

pub struct Ctx {
    pub bound: usize,
}

fn dialect(d: DialectArg) -> Dialect {
    match d {
        DialectArg::M2 => Dialect::M2,
        DialectArg::Singular => Dialect::Singular,
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    writeln!(io::stdout().lock(), "{text}")?;
    Ok(())
}

fn print_text(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn unsupported(verb: &str, out: OutFormat) -> CliError {
    CliError::Usage(format!("{verb} does not support --out {out:?}").to_lowercase())
}

fn load(input: &GraphInput) -> Result<Source, CliError> {
    let given = [input.graph.is_some(), input.input.is_some(), input.corona.is_some()];
    match given.iter().filter(|&&b| b).count() {
        0 => {
            return Err(CliError::Usage(
                "no graph given: pass GRAPH, --input or --corona".into(),
            ))
        }
        1 => {}
        _ => return Err(CliError::Usage("pass only one of GRAPH, --input and --corona".into())),
    }
    if let Some(name) = &input.graph {
        return Ok(Source {
            graph: parse_graph_arg(name)?,
            product: None,
        });
    }
    if let Some(path) = &input.input {
        return parse_source(&read_text(path)?, input.input_format);
    }
    let parts = input.corona.as_ref().expect("checked above");
    let base = parse_graph_arg(&parts[0])?;
    let pendant = parse_graph_arg(&parts[1])?;
    let attach = match &input.attach {
        Some(list) => parse_vertex_list(list, &base)?,
        None => base.vertex_set(),
    };
    let product = CoronaSpec::new(base, attach, pendant)?.build();
    Ok(Source {
        graph: product.graph.clone(),
        product: Some(product),
    })
}

fn graph_json(g: &Graph, product: Option<&CoronaProduct>) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(a, b)| [a, b]).collect();
    let mut v = json!({
        "n": g.n(),
        "edge_count": edges.len(),
        "edges": edges,
        "graph6": to_graph6(g),
        "labels": g.labels(),
        "diameter": g.diameter(),
    });
    if let Some(p) = product {
        v["spec"] = serde_json::from_str(&p.spec.to_json()).expect("spec JSON parses");
    }
    v
}

fn emit_graph(
    g: &Graph,
    product: Option<&CoronaProduct>,
    out: OutFormat,
    verb: &str,
    d: Dialect,
) -> Result<(), CliError> {
    match out {
        OutFormat::Json => print_json(&graph_json(g, product)),
        OutFormat::Dot => print_text(&to_dot(g, verb)),
        OutFormat::Graph6 => print_text(&to_graph6(g)),
        OutFormat::Edgelist => print_text(&to_edge_list(g)),
        OutFormat::Cas => {
            let expected = product.and_then(expected_report);
            print_text(&emit_cas_script(g, d, expected.as_ref()).text)
        }
        OutFormat::Jsonl => Err(unsupported(verb, out)),
    }
}

/// Closed-form report for a corona over a complete or closed base with a
/// block-graph pendant, when one applies.
fn expected_report(p: &CoronaProduct) -> Option<InvariantReport> {
    let base = base_invariants_block_graph(p.spec.pendant()).ok()?;
    let g = p.spec.base();
    if g.is_complete() {
        depth_reg_corona_complete(g.n(), p.spec.attach().len(), &base).ok()
    } else if p.spec.is_full() {
        depth_reg_corona_cm_closed(g, &base, None).ok()
    } else {
        None
    }
}

pub fn construct(args: &ConstructArgs) -> Result<(), CliError> {
    let src = load(&args.input)?;
    emit_graph(&src.graph, src.product.as_ref(), args.out, "construct", Dialect::M2)
}

pub fn cutsets(ctx: &Ctx, args: &CutsetsArgs) -> Result<(), CliError> {
    let src = load(&args.input)?;
    let report = enumerate_cutsets_bounded(&src.graph, args.size_cap, ctx.bound)?;
    match args.out {
        OutFormat::Json => print_json(&report),
        OutFormat::Jsonl => {
            let mut out = io::BufWriter::new(io::stdout().lock());
            report.write_jsonl(&mut out)?;
            out.flush()?;
            Ok(())
        }
        other => Err(unsupported("cutsets", other)),
    }
}

fn labels_of(g: &Graph, t: &VertexSet) -> Option<Vec<String>> {
    g.labels().map(|_| t.iter().map(|v| g.label(v)).collect())
}

pub fn check(ctx: &Ctx, args: &CheckArgs) -> Result<(), CliError> {
    let src = load(&args.input)?;
    let g = &src.graph;
    let mut out = json!({ "n": g.n() });
    let want_all = !args.unmixed && !args.accessible && args.cutset.is_none() && args.chain.is_none();
    if args.unmixed || args.accessible || want_all {
        let r = enumerate_cutsets_bounded(g, None, ctx.bound)?;
        out["extension"] = json!(r.extension);
        if args.unmixed || want_all {
            out["unmixed"] = json!(r.is_unmixed);
            out["witness"] = json!(r.unmixed_witness);
            if let Some(w) = &r.unmixed_witness {
                out["witness_components"] = json!(g.component_count(w));
                out["witness_labels"] = json!(labels_of(g, w));
            }
        }
        if args.accessible || want_all {
            out["accessible"] = json!(r.is_accessible());
            out["accessible_system"] = json!(r.is_accessible_system);
        }
    }
    if let Some(list) = &args.cutset {
        let t = parse_vertex_list(list, g)?;
        let yes = is_cutset(g, &t);
        let mut c = json!({
            "vertices": t,
            "labels": labels_of(g, &t),
            "is_cutset": yes,
            "components": g.component_count(&t),
        });
        if let Some(p) = &src.product {
            c["decomposition"] = json!(p.decompose(&t)?);
            if yes && !t.is_empty() {
                c["structure"] = json!(p.check_cutset_structure(&t)?);
            }
        }
        out["cutset"] = c;
    }
    if let Some(list) = &args.chain {
        let t = parse_vertex_list(list, g)?;
        out["chain"] = json!(accessibility_witness_chain_bounded(g, &t, ctx.bound)?);
    }
    print_json(&out)
}

fn pendant_invariants(args: &InvariantsArgs) -> Result<(BaseInvariants, Option<Graph>), CliError> {
    if let Some(name) = &args.pendant_block_graph {
        let h = parse_graph_arg(name)?;
        return Ok((base_invariants_block_graph(&h)?, Some(h)));
    }
    if let Some(path) = &args.pendant_json {
        let text = read_text(path)?;
        let b: BaseInvariants =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("pendant JSON: {e}")))?;
        b.validate()?;
        return Ok((b, None));
    }
    Err(CliError::Usage("pass --pendant-block-graph or --pendant-json".into()))
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this family")))
}

#[derive(Serialize)]
struct InvariantsOutput {
    #[serde(flatten)]
    report: InvariantReport,
    oracle_dimension: Option<usize>,
    oracle_agrees: Option<bool>,
}

pub fn invariants(ctx: &Ctx, args: &InvariantsArgs) -> Result<(), CliError> {
    let (base, pendant) = pendant_invariants(args)?;
    let (b_graph, attach) = match args.family {
        FamilyArg::LCorona => {
            let n = need(args.n, "n")?;
            let l = need(args.l, "l")?;
            (Graph::complete(n), l)
        }
        FamilyArg::FullCorona => {
            let n = need(args.n, "n")?;
            (Graph::complete(n), n)
        }
        FamilyArg::Path => {
            let n = need(args.n, "n")?;
            (Graph::path(n), n)
        }
        FamilyArg::CmClosed => {
            let b = args
                .base
                .as_deref()
                .ok_or_else(|| CliError::Usage("--base is required for cm-closed".into()))?;
            let g = parse_graph_arg(b)?;
            let n = g.n();
            (g, n)
        }
    };
    let product = match &pendant {
        Some(h) if b_graph.n() > 0 && attach >= 1 && attach <= b_graph.n() => {
            let l_set = VertexSet::from_indices(b_graph.n(), 0..attach);
            Some(CoronaSpec::new(b_graph.clone(), l_set, h.clone())?.build())
        }
        _ => None,
    };
    let oracle = match &product {
        Some(p) if !args.no_oracle && p.graph.n() <= ctx.bound => {
            Some(enumerate_cutsets_bounded(&p.graph, None, ctx.bound)?.oracle_dimension)
        }
        _ => None,
    };
    let report = match args.family {
        FamilyArg::LCorona | FamilyArg::FullCorona => depth_reg_corona_complete(b_graph.n(), attach, &base)?,
        FamilyArg::Path => depth_reg_corona_path(b_graph.n(), &base, oracle)?,
        FamilyArg::CmClosed => depth_reg_corona_cm_closed(&b_graph, &base, oracle)?,
    };
    match args.out {
        OutFormat::Json => {
            let agrees = oracle.zip(report.dim).map(|(o, d)| o == d.value);
            print_json(&InvariantsOutput {
                report,
                oracle_dimension: oracle,
                oracle_agrees: agrees,
            })
        }
        OutFormat::Cas => {
            let p = product.ok_or_else(|| {
                CliError::Usage("a CAS script needs the pendant graph (--pendant-block-graph)".into())
            })?;
            print_text(&emit_cas_script(&p.graph, dialect(args.dialect), Some(&report)).text)
        }
        other => Err(unsupported("invariants", other)),
    }
}

pub fn gadget(ctx: &Ctx, args: &GadgetArgs) -> Result<(), CliError> {
    let h = load(&args.input)?.graph;
    if args.verify {
        let record = match args.kind {
            GadgetKind::D2 => verify_reduction_d2(&h, ctx.bound)?,
            GadgetKind::D3 => verify_reduction_d3(&h, ctx.bound)?,
        };
        return match args.out {
            OutFormat::Json => print_json(&record),
            other => Err(unsupported("gadget --verify", other)),
        };
    }
    match args.kind {
        GadgetKind::D2 => emit_graph(&gadget_d2(&h), None, args.out, "gadget", Dialect::M2),
        GadgetKind::D3 => {
            let p = gadget_d3(&h);
            emit_graph(&p.graph, Some(&p), args.out, "gadget", Dialect::M2)
        }
    }
}

pub fn scan(ctx: &Ctx, args: &ScanArgs) -> Result<(), CliError> {
    let text = read_text(&args.input)?;
    let filters = ScanFilters {
        diameters: args
            .diameter
            .as_ref()
            .map(|d| d.iter().copied().collect::<BTreeSet<_>>()),
        max_n: args.max_n,
        cas: args.cas_dir.as_ref().map(|_| dialect(args.dialect)),
    };
    if let Some(dir) = &args.cas_dir {
        fs::create_dir_all(dir)?;
    }
    let outcomes = bms_scan(&text, &filters, ctx.bound);
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut err = io::stderr().lock();
    for o in outcomes {
        match o {
            ScanOutcome::Record(record, script) => {
                if let (Some(dir), Some(s), Some(name)) = (&args.cas_dir, script, &record.cas_script_path) {
                    fs::write(Path::new(dir).join(name), s.text)?;
                }
                serde_json::to_writer(&mut out, &record).expect("record serializes");
                out.write_all(b"\n")?;
            }
            ScanOutcome::Filtered { .. } => {}
            ScanOutcome::Error { line, message } => {
                let e = json!({ "error": { "kind": "input", "line": line, "message": message } });
                writeln!(err, "{e}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn export(args: &ExportArgs) -> Result<(), CliError> {
    let src = load(&args.input)?;
    emit_graph(
        &src.graph,
        src.product.as_ref(),
        args.out,
        "export",
        dialect(args.dialect),
    )
}
