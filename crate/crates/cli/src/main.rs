//! Command-line entry point: builds cyclotomic Hecke algebras, decomposes
//! them into blocks, verifies the KLR presentation and grading, computes
//! graded dimensions and semi-normal forms, probes the nilpotency bound, and
//! compares blocks across fields.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure. Reports are
//! emitted as aligned text on stdout and, with --out, as JSON (schema 1).

use std::collections::BTreeMap;

use serde_json::{json, Value};

use hecke_core::blockspectral::{block_decomposition, Block};
use hecke_core::exactfield::{parse_field, Field};
use hecke_core::heckecore::build_hecke;
use hecke_core::klriso::{
    check_grading, check_nilpotency_conjecture, compare_blocks, klr_generators,
    laurent_to_string, poincare_polynomial, verify_intertwiner_identities, verify_klr_relations,
    verify_roundtrip, QChoice, VerifyReport,
};
use hecke_core::rootdata::{DominantWeight, Partition, Quiver};
use hecke_core::seminormal::{seminormal_action, specht_module, verify_specht};

struct Config {
    command: String,
    field: String,
    field2: Option<String>,
    charge: Vec<i64>,
    d: usize,
    out: Option<String>,
    jobs: usize,
    qchoice: QChoice,
    matrices: bool,
}

const USAGE: &str = "usage: hecke <command> [flags]

commands:
  blocks      block decomposition: dimensions and formal characters
  verify      KLR relations, intertwiner identities, round trip, grading
  poincare    graded dimensions (Poincare polynomials) per block
  seminormal  semi-normal matrices and classical-oracle comparison (e = 0)
  conjecture  nilpotency probe y_r^l = 0 per block (e = 0)
  compare     cross-field block comparison (needs --field2)

flags:
  --field SPEC     coefficient field, e.g. \"Q,q=1\", \"GF(5),q=4\", \"Qzeta(3)\"
  --field2 SPEC    second field for `compare`
  --charge LIST    multicharge, comma separated, e.g. 0 or 0,1
  --d N            number of strands
  --out PATH       write the JSON report here
  --jobs N         parallel block workers (default 1)
  --qchoice C      series choice: paper (default) or alt
  --matrices true  include restricted generator matrices in blocks reports
";

fn parse_args(args: &[String]) -> Result<Config, String> {
    if args.is_empty() {
        return Err("missing command".into());
    }
    let command = args[0].clone();
    let mut cfg = Config {
        command,
        field: "Q,q=1".into(),
        field2: None,
        charge: vec![0],
        d: 2,
        out: None,
        jobs: 1,
        qchoice: QChoice::Paper,
        matrices: false,
    };
    let mut k = 1;
    while k < args.len() {
        let flag = &args[k];
        let value = args
            .get(k + 1)
            .ok_or_else(|| format!("flag {} needs a value", flag))?;
        match flag.as_str() {
            "--field" => cfg.field = value.clone(),
            "--field2" => cfg.field2 = Some(value.clone()),
            "--charge" => {
                cfg.charge = value
                    .split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad charge {}", t)))
                    .collect::<Result<Vec<i64>, String>>()?;
                if cfg.charge.is_empty() {
                    return Err("empty multicharge".into());
                }
            }
            "--d" => {
                cfg.d = value.parse().map_err(|_| format!("bad d {}", value))?;
            }
            "--out" => cfg.out = Some(value.clone()),
            "--jobs" => {
                cfg.jobs = value.parse().map_err(|_| format!("bad jobs {}", value))?;
                if cfg.jobs == 0 {
                    return Err("jobs must be positive".into());
                }
            }
            "--matrices" => {
                cfg.matrices = value == "true";
            }
            "--qchoice" => {
                cfg.qchoice = match value.as_str() {
                    "paper" => QChoice::Paper,
                    "alt" => QChoice::Alt,
                    other => return Err(format!("unknown qchoice {}", other)),
                }
            }
            other => return Err(format!("unknown flag {}", other)),
        }
        k += 2;
    }
    Ok(cfg)
}

fn residue_str(e: u32, i: i64) -> String {
    if e == 0 {
        format!("{}", i)
    } else {
        format!("{} mod {}", i, e)
    }
}

fn seq_str(e: u32, seq: &[i64]) -> String {
    let parts: Vec<String> = seq.iter().map(|&i| residue_str(e, i)).collect();
    format!("({})", parts.join(","))
}

fn seq_json(seq: &[i64]) -> Value {
    json!(seq)
}

/// Runs per-block work, optionally on a small thread pool; results come back
/// in input order so reports stay deterministic.
fn map_blocks<T: Send, F: Fn(&Block) -> T + Sync>(jobs: usize, blocks: &[Block], f: F) -> Vec<T> {
    if jobs <= 1 || blocks.len() <= 1 {
        return blocks.iter().map(&f).collect();
    }
    let n = blocks.len();
    let results: Vec<std::sync::Mutex<Option<T>>> =
        (0..n).map(|_| std::sync::Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(n) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if k >= n {
                    break;
                }
                let v = f(&blocks[k]);
                *results[k].lock().unwrap() = Some(v);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().unwrap())
        .collect()
}

fn build_blocks(cfg: &Config, field: &Field) -> Result<(usize, Vec<Block>), String> {
    let quiver = Quiver::new(field.quantum_char());
    let weight = DominantWeight::new(quiver, &cfg.charge);
    let h = build_hecke(field, &weight, cfg.d);
    let dim = h.dim();
    let blocks = block_decomposition(&h).map_err(|e| e.to_string())?;
    Ok((dim, blocks.into_values().collect()))
}

fn report_header(cfg: &Config, field: &Field) -> Value {
    json!({
        "schema": 1,
        "command": cfg.command,
        "field": cfg.field,
        "charge": cfg.charge,
        "d": cfg.d,
        "e": field.quantum_char(),
    })
}

fn verify_section(rep: &VerifyReport) -> Value {
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            json!({
                "family": c.family,
                "instances": c.instances,
                "failures": c.failures,
            })
        })
        .collect();
    json!({
        "instances": rep.total_instances(),
        "failures": rep.total_failures(),
        "checks": checks,
    })
}

fn cmd_blocks(cfg: &Config) -> Result<(Value, String, bool), String> {
    let field = parse_field(&cfg.field).map_err(|e| e.to_string())?;
    let e = field.quantum_char();
    let (dim, blocks) = build_blocks(cfg, &field)?;
    let expected: usize =
        cfg.charge.len().pow(cfg.d as u32) * (1..=cfg.d).product::<usize>().max(1);
    let mut text = format!(
        "cyclotomic Hecke algebra over {}  charge={:?}  d={}  e={}\ndimension {} (l^d d! = {})\n",
        cfg.field, cfg.charge, cfg.d, e, dim, expected
    );
    text.push_str(&format!("{:<28} {:>6}  character\n", "alpha", "dim"));
    let mut items = vec![];
    for b in &blocks {
        let ch: Vec<Value> = b
            .character()
            .iter()
            .map(|(seq, m)| json!({"seq": seq_json(seq), "dim": m}))
            .collect();
        let chs: Vec<String> = b
            .character()
            .iter()
            .map(|(seq, m)| format!("{}:{}", seq_str(e, seq), m))
            .collect();
        text.push_str(&format!(
            "{:<28} {:>6}  {}\n",
            seq_str(e, &b.alpha.as_multiset()),
            b.dim,
            chs.join(" ")
        ));
        let mut item = json!({
            "alpha": seq_json(&b.alpha.as_multiset()),
            "dim": b.dim,
            "character": ch,
        });
        if cfg.matrices {
            let dump = |ms: &[hecke_core::linalg::Matrix]| -> Value {
                let out: Vec<Value> = ms
                    .iter()
                    .enumerate()
                    .map(|(r, m)| {
                        let rows: Vec<Vec<String>> = (0..m.rows)
                            .map(|i| (0..m.cols).map(|j| field.show(m.at(i, j))).collect())
                            .collect();
                        json!({"r": r + 1, "matrix": rows})
                    })
                    .collect();
                json!(out)
            };
            item["x_generators"] = dump(&b.x_gen);
            item["coxeter_generators"] = dump(&b.s_gen);
        }
        items.push(item);
    }
    let total: usize = blocks.iter().map(|b| b.dim).sum();
    let ok = total == dim && dim == expected;
    text.push_str(&format!("block dimension sum {} of {}\n", total, dim));
    let mut report = report_header(cfg, &field);
    report["dimension"] = json!(dim);
    report["dimension_formula"] = json!(expected);
    report["blocks"] = json!(items);
    report["consistent"] = json!(ok);
    Ok((report, text, ok))
}

fn cmd_verify(cfg: &Config) -> Result<(Value, String, bool), String> {
    let field = parse_field(&cfg.field).map_err(|e| e.to_string())?;
    let e = field.quantum_char();
    let quiver = Quiver::new(e);
    let weight = DominantWeight::new(quiver, &cfg.charge);
    let (_, blocks) = build_blocks(cfg, &field)?;
    let results = map_blocks(cfg.jobs, &blocks, |b| {
        let a = klr_generators(b, cfg.qchoice);
        let relations = verify_klr_relations(&a);
        let intertwiners = verify_intertwiner_identities(b);
        let roundtrip = verify_roundtrip(b, &a);
        let grading = check_grading(b.quiver, &weight, &b.seqs);
        (relations, intertwiners, roundtrip, grading)
    });
    let mut ok = true;
    let mut text = format!(
        "KLR verification over {}  charge={:?}  d={}  e={}  qchoice={:?}\n",
        cfg.field, cfg.charge, cfg.d, e, cfg.qchoice
    );
    text.push_str(&format!(
        "{:<28} {:>6} {:>10} {:>9} {:>11} {:>9} {:>9}\n",
        "alpha", "dim", "relations", "intertw", "roundtrip", "grading", "status"
    ));
    let mut items = vec![];
    for (b, (rel, int, rt, gr)) in blocks.iter().zip(&results) {
        let pass = rel.all_passed() && int.all_passed() && rt.all_passed() && gr.all_passed();
        ok &= pass;
        text.push_str(&format!(
            "{:<28} {:>6} {:>10} {:>9} {:>11} {:>9} {:>9}\n",
            seq_str(e, &b.alpha.as_multiset()),
            b.dim,
            format!(
                "{}/{}",
                rel.total_instances() - rel.total_failures(),
                rel.total_instances()
            ),
            format!(
                "{}/{}",
                int.total_instances() - int.total_failures(),
                int.total_instances()
            ),
            format!(
                "{}/{}",
                rt.total_instances() - rt.total_failures(),
                rt.total_instances()
            ),
            format!(
                "{}/{}",
                gr.total_instances() - gr.total_failures(),
                gr.total_instances()
            ),
            if pass { "pass" } else { "FAIL" }
        ));
        items.push(json!({
            "alpha": seq_json(&b.alpha.as_multiset()),
            "dim": b.dim,
            "relations": verify_section(rel),
            "intertwiners": verify_section(int),
            "roundtrip": verify_section(rt),
            "grading": verify_section(gr),
            "pass": pass,
        }));
    }
    text.push_str(if ok { "all blocks pass\n" } else { "FAILURES found\n" });
    let mut report = report_header(cfg, &field);
    report["qchoice"] = json!(format!("{:?}", cfg.qchoice).to_lowercase());
    report["blocks"] = json!(items);
    report["pass"] = json!(ok);
    Ok((report, text, ok))
}

fn cmd_poincare(cfg: &Config) -> Result<(Value, String, bool), String> {
    let field = parse_field(&cfg.field).map_err(|e| e.to_string())?;
    let e = field.quantum_char();
    let (_, blocks) = build_blocks(cfg, &field)?;
    let results = map_blocks(cfg.jobs, &blocks, |b| {
        let a = klr_generators(b, cfg.qchoice);
        poincare_polynomial(&a)
    });
    let mut ok = true;
    let mut text = format!(
        "graded dimensions over {}  charge={:?}  d={}  e={}\n",
        cfg.field, cfg.charge, cfg.d, e
    );
    text.push_str(&format!("{:<28} {:>6}  poincare\n", "alpha", "dim"));
    let mut items = vec![];
    for (b, g) in blocks.iter().zip(&results) {
        let at_one: usize = g.poincare.values().sum();
        ok &= at_one == b.dim;
        let coeffs: BTreeMap<String, usize> =
            g.poincare.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        text.push_str(&format!(
            "{:<28} {:>6}  {}\n",
            seq_str(e, &b.alpha.as_multiset()),
            b.dim,
            laurent_to_string(&g.poincare)
        ));
        items.push(json!({
            "alpha": seq_json(&b.alpha.as_multiset()),
            "dim": b.dim,
            "poincare": coeffs,
        }));
    }
    let mut report = report_header(cfg, &field);
    report["blocks"] = json!(items);
    report["pass"] = json!(ok);
    Ok((report, text, ok))
}

fn cmd_seminormal(cfg: &Config) -> Result<(Value, String, bool), String> {
    let field = parse_field(&cfg.field).map_err(|e| e.to_string())?;
    if field.quantum_char() != 0 {
        return Err("seminormal needs a field with e = 0".into());
    }
    if cfg.charge != vec![0] {
        return Err("seminormal is a level-one construction; use --charge 0".into());
    }
    let shapes = Partition::all(cfg.d);
    let results: Vec<_> = shapes
        .iter()
        .map(|lam| {
            let rep = verify_specht(lam, &field, cfg.qchoice).map_err(|e| e.to_string())?;
            let module = specht_module(lam, &field, cfg.qchoice).map_err(|e| e.to_string())?;
            let mats = seminormal_action(&module);
            Ok::<_, String>((rep, mats))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let mut ok = true;
    let mut text = format!(
        "semi-normal forms over {}  d={}\n{:<18} {:>5} {:>8} {:>8} {:>8} {:>9}\n",
        cfg.field, cfg.d, "lambda", "dim", "klr", "coxeter", "oracle", "surjects"
    );
    let mut items = vec![];
    for (lam, (rep, mats)) in shapes.iter().zip(&results) {
        ok &= rep.all_passed();
        let oracle_ok = rep.oracle_diagonals_ok && rep.oracle_off_products_ok;
        text.push_str(&format!(
            "{:<18} {:>5} {:>8} {:>8} {:>8} {:>9}\n",
            format!("{:?}", lam.0),
            rep.dimension,
            if rep.klr_relations_ok { "pass" } else { "FAIL" },
            if rep.coxeter_ok { "pass" } else { "FAIL" },
            if oracle_ok { "pass" } else { "FAIL" },
            if rep.surjects_onto_matrix_algebra {
                "pass"
            } else {
                "FAIL"
            },
        ));
        let mats_json: Vec<Value> = mats
            .iter()
            .enumerate()
            .map(|(r, m)| {
                let rows: Vec<Vec<String>> = (0..m.rows)
                    .map(|i| (0..m.cols).map(|j| field.show(m.at(i, j))).collect())
                    .collect();
                json!({"r": r + 1, "matrix": rows})
            })
            .collect();
        items.push(json!({
            "lambda": lam.0,
            "dim": rep.dimension,
            "klr": rep.klr_relations_ok,
            "coxeter": rep.coxeter_ok,
            "oracle_diagonals": rep.oracle_diagonals_ok,
            "oracle_off_products": rep.oracle_off_products_ok,
            "surjects": rep.surjects_onto_matrix_algebra,
            "character": rep.character_ok,
            "generators": mats_json,
        }));
    }
    text.push_str(if ok { "all shapes pass\n" } else { "FAILURES found\n" });
    let mut report = report_header(cfg, &field);
    report["shapes"] = json!(items);
    report["pass"] = json!(ok);
    Ok((report, text, ok))
}

fn cmd_conjecture(cfg: &Config) -> Result<(Value, String, bool), String> {
    let field = parse_field(&cfg.field).map_err(|e| e.to_string())?;
    if field.quantum_char() != 0 {
        return Err("the nilpotency probe is stated for e = 0".into());
    }
    let e = field.quantum_char();
    let (_, blocks) = build_blocks(cfg, &field)?;
    let results = map_blocks(cfg.jobs, &blocks, |b| {
        let a = klr_generators(b, cfg.qchoice);
        check_nilpotency_conjecture(&a)
    });
    let level = cfg.charge.len();
    let mut ok = true;
    let mut text = format!(
        "nilpotency probe y_r^{} = 0 over {}  charge={:?}  d={}\n{:<28} {:>6}  indices  status\n",
        level, cfg.field, cfg.charge, cfg.d, "alpha", "dim"
    );
    let mut items = vec![];
    for (b, rep) in blocks.iter().zip(&results) {
        ok &= rep.all_pass;
        let indices: Vec<usize> = rep.per_generator.iter().map(|&(n, _)| n).collect();
        text.push_str(&format!(
            "{:<28} {:>6}  {:?}  {}\n",
            seq_str(e, &b.alpha.as_multiset()),
            b.dim,
            indices,
            if rep.all_pass { "pass" } else { "FAIL" }
        ));
        items.push(json!({
            "alpha": seq_json(&b.alpha.as_multiset()),
            "dim": b.dim,
            "observed_indices": indices,
            "pass": rep.all_pass,
        }));
    }
    text.push_str(if ok {
        "conjectured bound holds on all blocks\n"
    } else {
        "BOUND VIOLATED\n"
    });
    let mut report = report_header(cfg, &field);
    report["level"] = json!(level);
    report["blocks"] = json!(items);
    report["pass"] = json!(ok);
    Ok((report, text, ok))
}

fn cmd_compare(cfg: &Config) -> Result<(Value, String, bool), String> {
    let field = parse_field(&cfg.field).map_err(|e| e.to_string())?;
    let spec2 = cfg
        .field2
        .clone()
        .ok_or_else(|| "compare needs --field2".to_string())?;
    let field2 = parse_field(&spec2).map_err(|e| e.to_string())?;
    if field.quantum_char() != field2.quantum_char() {
        return Err(format!(
            "quantum characteristics differ: {} vs {}",
            field.quantum_char(),
            field2.quantum_char()
        ));
    }
    let e = field.quantum_char();
    let (_, blocks1) = build_blocks(cfg, &field)?;
    let (_, blocks2) = build_blocks(cfg, &field2)?;
    let mut text = format!(
        "block comparison {} vs {}  charge={:?}  d={}\n{:<28} {:>10} {:>12} {:>12}\n",
        cfg.field, spec2, cfg.charge, cfg.d, "alpha", "dims", "characters", "structure"
    );
    let keys1: Vec<Vec<i64>> = blocks1.iter().map(|b| b.alpha.as_multiset()).collect();
    let keys2: Vec<Vec<i64>> = blocks2.iter().map(|b| b.alpha.as_multiset()).collect();
    let mut ok = keys1 == keys2;
    let mut items = vec![];
    if ok {
        for (b1, b2) in blocks1.iter().zip(&blocks2) {
            let cmp = compare_blocks(b1, b2, cfg.qchoice)?;
            ok &= cmp.dims_equal && cmp.characters_equal;
            if cmp.structure_constants_equal == Some(false) {
                ok = false;
            }
            let sc = match cmp.structure_constants_equal {
                Some(true) => "equal",
                Some(false) => "DIFFER",
                None => "inconclusive",
            };
            text.push_str(&format!(
                "{:<28} {:>10} {:>12} {:>12}\n",
                seq_str(e, &b1.alpha.as_multiset()),
                if cmp.dims_equal { "equal" } else { "DIFFER" },
                if cmp.characters_equal { "equal" } else { "DIFFER" },
                sc,
            ));
            items.push(json!({
                "alpha": seq_json(&b1.alpha.as_multiset()),
                "dim": [b1.dim, b2.dim],
                "dims_equal": cmp.dims_equal,
                "characters_equal": cmp.characters_equal,
                "structure_constants": sc,
            }));
        }
    } else {
        text.push_str("block sets differ\n");
    }
    text.push_str(if ok { "comparison passes\n" } else { "MISMATCH found\n" });
    let mut report = report_header(cfg, &field);
    report["field2"] = json!(spec2);
    report["blocks"] = json!(items);
    report["pass"] = json!(ok);
    Ok((report, text, ok))
}

fn run(args: Vec<String>) -> i32 {
    let cfg = match parse_args(&args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {}\n\n{}", msg, USAGE);
            return 1;
        }
    };
    let result = match cfg.command.as_str() {
        "blocks" => cmd_blocks(&cfg),
        "verify" => cmd_verify(&cfg),
        "poincare" => cmd_poincare(&cfg),
        "seminormal" => cmd_seminormal(&cfg),
        "conjecture" => cmd_conjecture(&cfg),
        "compare" => cmd_compare(&cfg),
        other => {
            eprintln!("error: unknown command {}\n\n{}", other, USAGE);
            return 1;
        }
    };
    match result {
        Err(msg) => {
            eprintln!("error: {}", msg);
            1
        }
        Ok((report, text, ok)) => {
            print!("{}", text);
            if let Some(path) = &cfg.out {
                let body = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(path, body + "\n") {
                    eprintln!("error: cannot write {}: {}", path, e);
                    return 1;
                }
                println!("report written to {}", path);
            }
            if ok {
                0
            } else {
                2
            }
        }
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(run(args));
}
