//! Command-line front end: orbit tables, exponents, the orbit graph,
//! unramified period values, spectral classification and the acceptance
//! selftest, with text or JSON reports.

use perlab::exponents::{rho_x_formula, rho_x_oracle, singular_subspace, AffineSubspace};
use perlab::graph::{cusp_graph, cuspidal_seeds, standard_relevant_seeds, OrbitGraph};
use perlab::levi::LeviDatum;
use perlab::orbits::{enumerate_cuspidal_orbits_with_limit, t_orbit_count, CuspidalOrbit};
use perlab::periods::{cw, j1, jn, jn_domain, local_l_triv, LocalField, Value};
use perlab::spectrum::{
    gl_class_of_datum, gl_classify_class, gl_convergence_check, gl_is_h_dist_datum,
    sp_classify_class, sp_convergence_check, sp_is_h_type_datum, CuspLabel, GlDiscreteDatum,
    GlSpectralClass, SpDiscreteDatum, SpRepDatum, SpSpectralClass, SpehBlock,
};
use perlab::{parse_rat, Rat};
use serde_json::{json, Value as Json};
use std::collections::HashMap;
use std::time::Instant;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DEFAULT_MAX_RANK: usize = 6;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let code = match run(&args) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            2
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            1
        }
    };
    eprintln!("# elapsed: {} ms", start.elapsed().as_millis());
    std::process::exit(code);
}

const USAGE: &str = "\
usage: perlab <command> [flags]

commands:
  orbits    --n N --levi B [--format text|json]   cuspidal orbits of a Levi
  rho       --n N --levi B [--orbit I] [--format] exponents rho_x
  graph     --n N [--all] [--format text|json]    the orbit graph G_cusp
  period    <l|j1|cw|jn> --field q|real|complex   local factors
            [--s S] [--lambda L1,L2,...]
  classify  <gl-datum|gl-class|sp-class|sp-datum> --input FILE|-
  converge  <gl|sp> --n N --levi B --lambda ...   integrability criteria
  count     --n N                                 T-orbit counts
  selftest  [--slow]                              acceptance criteria

Levi compositions are written n1,n2,...;r (e.g. 2,2;0); rationals as p/q.
The PERLAB_MAX_RANK variable overrides the rank-6 enumeration guard.";

enum CliError {
    Usage(String),
    Invariant(String),
}

impl From<perlab::Error> for CliError {
    fn from(e: perlab::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(cmd) = args.first() else {
        return Err(CliError::Usage("missing command".into()));
    };
    let (positional, flags) = parse_flags(&args[1..])?;
    let allowed: &[&str] = match cmd.as_str() {
        "orbits" => &["n", "levi", "format"],
        "rho" => &["n", "levi", "orbit", "format"],
        "graph" => &["n", "all", "format"],
        "period" => &["field", "q", "s", "lambda", "format"],
        "classify" => &["input", "format"],
        "converge" => &["n", "levi", "lambda", "format"],
        "count" => &["n", "format"],
        "selftest" => &["slow", "format"],
        other => return Err(CliError::Usage(format!("unknown command `{other}`"))),
    };
    if let Some(stray) = flags.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Usage(format!(
            "unknown flag --{stray} for `{cmd}`"
        )));
    }
    match cmd.as_str() {
        "orbits" => cmd_orbits(&flags),
        "rho" => cmd_rho(&flags),
        "graph" => cmd_graph(&positional, &flags),
        "period" => cmd_period(&positional, &flags),
        "classify" => cmd_classify(&positional, &flags),
        "converge" => cmd_converge(&positional, &flags),
        "count" => cmd_count(&flags),
        "selftest" => cmd_selftest(&flags),
        _ => unreachable!(),
    }
}

fn parse_flags(args: &[String]) -> Result<(Vec<String>, HashMap<String, String>), CliError> {
    let mut flags = HashMap::new();
    let mut positional = Vec::new();
    let mut it = args.iter().peekable();
    while let Some(a) = it.next() {
        if let Some(name) = a.strip_prefix("--") {
            match name {
                "slow" | "all" => {
                    flags.insert(name.to_string(), "1".into());
                }
                _ => {
                    let v = it
                        .next()
                        .ok_or_else(|| CliError::Usage(format!("flag --{name} needs a value")))?;
                    flags.insert(name.to_string(), v.clone());
                }
            }
        } else {
            positional.push(a.clone());
        }
    }
    Ok((positional, flags))
}

fn max_rank() -> usize {
    match std::env::var("PERLAB_MAX_RANK") {
        Ok(v) => match v.parse::<usize>() {
            Ok(r) if r > DEFAULT_MAX_RANK => {
                eprintln!(
                    "# warning: PERLAB_MAX_RANK={r} is beyond the supported guard ({DEFAULT_MAX_RANK}); unsupported territory"
                );
                r
            }
            Ok(r) => r,
            Err(_) => DEFAULT_MAX_RANK,
        },
        Err(_) => DEFAULT_MAX_RANK,
    }
}

fn need<'a>(flags: &'a HashMap<String, String>, key: &str) -> Result<&'a str, CliError> {
    flags
        .get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| CliError::Usage(format!("missing --{key}")))
}

fn parse_levi(flags: &HashMap<String, String>, two_n: usize) -> Result<LeviDatum, CliError> {
    let levi = LeviDatum::parse(need(flags, "levi")?)?;
    if levi.ambient_rank() != two_n {
        return Err(CliError::Usage(format!(
            "Levi {} has rank {}, expected {two_n}",
            levi,
            levi.ambient_rank()
        )));
    }
    Ok(levi)
}

fn parse_n(flags: &HashMap<String, String>) -> Result<usize, CliError> {
    let n: usize = need(flags, "n")?
        .parse()
        .map_err(|_| CliError::Usage("invalid --n".into()))?;
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    Ok(n)
}

fn parse_lambda(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|p| parse_rat(p).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn rat_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn want_json(flags: &HashMap<String, String>) -> bool {
    flags.get("format").map(|f| f == "json").unwrap_or(false)
}

fn emit(report: Json, flags: &HashMap<String, String>, text: impl FnOnce()) {
    if want_json(flags) {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        text();
    }
}

fn subspace_json(s: &AffineSubspace) -> Json {
    json!({
        "base": rat_strings(s.base()),
        "dirs": s.directions().iter().map(|d| rat_strings(d)).collect::<Vec<_>>(),
    })
}

fn orbit_json(o: &CuspidalOrbit) -> Json {
    let rho = rho_x_formula(o);
    json!({
        "levi": o.levi.to_string(),
        "pair_levi": o.pair_levi.to_string(),
        "k": o.k,
        "l1": o.l1,
        "h": o.h,
        "pq_list": o.data.pq_list,
        "rho_x": rat_strings(&rho.coords),
        "singular_subspace": subspace_json(&singular_subspace(o)),
    })
}

fn cmd_orbits(flags: &HashMap<String, String>) -> Result<(), CliError> {
    let n = parse_n(flags)?;
    let levi = parse_levi(flags, 2 * n)?;
    let orbits = enumerate_cuspidal_orbits_with_limit(&levi, max_rank())?;
    let report = json!({
        "command": "orbits",
        "version": VERSION,
        "params": {"n": n, "levi": levi.to_string()},
        "result": orbits.iter().map(orbit_json).collect::<Vec<_>>(),
    });
    emit(report, flags, || {
        println!(
            "{} standard cuspidal orbit(s) over M = {levi}",
            orbits.len()
        );
        println!(
            "{:<4} {:<3} {:<4} {:<12} {:<20} L(x)",
            "idx", "k", "l1", "h", "rho_x"
        );
        for (i, o) in orbits.iter().enumerate() {
            let rho = rho_x_formula(o);
            println!(
                "{:<4} {:<3} {:<4} {:<12} {:<20} {}",
                i,
                o.k,
                o.l1,
                format!("{:?}", o.h),
                format!("({})", rat_strings(&rho.coords).join(", ")),
                o.pair_levi,
            );
        }
    });
    Ok(())
}

fn cmd_rho(flags: &HashMap<String, String>) -> Result<(), CliError> {
    let n = parse_n(flags)?;
    let levi = parse_levi(flags, 2 * n)?;
    let orbits = enumerate_cuspidal_orbits_with_limit(&levi, max_rank())?;
    let selected: Vec<(usize, &CuspidalOrbit)> = match flags.get("orbit") {
        Some(idx) => {
            let i: usize = idx
                .parse()
                .map_err(|_| CliError::Usage("invalid --orbit".into()))?;
            let o = orbits
                .get(i)
                .ok_or_else(|| CliError::Usage(format!("orbit index {i} out of range")))?;
            vec![(i, o)]
        }
        None => orbits.iter().enumerate().collect(),
    };
    let mut rows = Vec::new();
    for (i, o) in &selected {
        let formula = rho_x_formula(o);
        let oracle = rho_x_oracle(&o.rep).map_err(|e| CliError::Invariant(e.to_string()))?;
        if formula.coords != oracle.coords {
            return Err(CliError::Invariant(format!(
                "formula and oracle disagree on orbit {i} of {levi}"
            )));
        }
        rows.push(json!({
            "orbit": i,
            "h": o.h,
            "rho_x": rat_strings(&formula.coords),
            "oracle": rat_strings(&oracle.coords),
        }));
    }
    let report = json!({
        "command": "rho",
        "version": VERSION,
        "params": {"n": n, "levi": levi.to_string()},
        "result": rows,
    });
    emit(report, flags, || {
        for (i, o) in &selected {
            let rho = rho_x_formula(o);
            println!(
                "orbit {i}: h = {:?}  rho_x = ({})  [oracle agrees]",
                o.h,
                rat_strings(&rho.coords).join(", ")
            );
        }
    });
    Ok(())
}

fn graph_json(g: &OrbitGraph) -> Json {
    let vertices: Vec<Json> = g
        .vertices
        .iter()
        .map(|v| {
            let rho = rho_x_oracle(&v.x)
                .map(|r| rat_strings(&r.coords))
                .unwrap_or_default();
            json!({
                "levi": v.levi().to_string(),
                "block_action": v.x.block_action(),
                "gl_signatures": v.x.gl_signatures(),
                "tail_signature": v.x.tail_signature(),
                "rho_x": rho,
            })
        })
        .collect();
    let edges: Vec<Json> = g
        .edges
        .iter()
        .map(|e| {
            json!({
                "from": e.from,
                "to": e.to,
                "alpha": e.alpha_index + 1,
                "descending": e.descending,
            })
        })
        .collect();
    json!({"vertices": vertices, "edges": edges})
}

fn cmd_graph(positional: &[String], flags: &HashMap<String, String>) -> Result<(), CliError> {
    if !positional.is_empty() {
        return Err(CliError::Usage(
            "graph takes no positional arguments".into(),
        ));
    }
    let n = parse_n(flags)?;
    let two_n = 2 * n;
    if two_n > max_rank() {
        return Err(CliError::Usage(format!("rank {two_n} exceeds the guard")));
    }
    let g = if flags.contains_key("all") {
        let mut seeds = standard_relevant_seeds(two_n)?;
        seeds.extend(cuspidal_seeds(two_n)?);
        OrbitGraph::from_seeds(seeds)
    } else {
        cusp_graph(two_n)?
    };
    let report = json!({
        "command": "graph",
        "version": VERSION,
        "params": {"n": n, "cusp_only": !flags.contains_key("all")},
        "result": graph_json(&g),
    });
    emit(report, flags, || {
        println!("# vertices: {}", g.vertices.len());
        for (i, v) in g.vertices.iter().enumerate() {
            let rho = rho_x_oracle(&v.x)
                .map(|r| format!("({})", rat_strings(&r.coords).join(", ")))
                .unwrap_or_else(|_| "-".into());
            println!(
                "v{i}: M = {} action = {:?} sig = {:?} rho_x = {}",
                v.levi(),
                v.x.block_action(),
                v.x.gl_signatures(),
                rho
            );
        }
        println!("# edges: {}", g.edges.len());
        for e in &g.edges {
            println!(
                "v{} -> v{}  alpha_{}  {}",
                e.from,
                e.to,
                e.alpha_index + 1,
                if e.descending {
                    "descending"
                } else {
                    "ascending"
                }
            );
        }
    });
    Ok(())
}

fn cmd_period(positional: &[String], flags: &HashMap<String, String>) -> Result<(), CliError> {
    let Some(which) = positional.first() else {
        return Err(CliError::Usage(
            "period needs a factor: l, j1, cw or jn".into(),
        ));
    };
    let field = match flags.get("field") {
        Some(f) => LocalField::parse(f)?,
        None => match flags.get("q") {
            Some(q) => LocalField::parse(q)?,
            None => return Err(CliError::Usage("missing --field (or --q)".into())),
        },
    };
    let value = match which.as_str() {
        "l" => {
            let s = parse_rat(need(flags, "s")?)?;
            local_l_triv(&s, &field)
        }
        "j1" => {
            let s = parse_rat(need(flags, "s")?)?;
            j1(&s, &field)
        }
        "cw" => {
            let lambda = parse_lambda(need(flags, "lambda")?)?;
            cw(&lambda, &field)
        }
        "jn" => {
            let lambda = parse_lambda(need(flags, "lambda")?)?;
            if !jn_domain(&lambda) {
                eprintln!("# note: outside the convergence domain; evaluating the closed form");
            }
            jn(&lambda, &field)
        }
        other => return Err(CliError::Usage(format!("unknown period factor `{other}`"))),
    };
    let value = value.map_err(|e| CliError::Usage(e.to_string()))?;
    let rendered = match &value {
        Value::Exact(r) => r.to_string(),
        Value::Approx(x) => format!("{x:.14e}"),
    };
    let report = json!({
        "command": "period",
        "version": VERSION,
        "params": {"factor": which, "s": flags.get("s"), "lambda": flags.get("lambda")},
        "result": {"value": rendered, "exact": matches!(value, Value::Exact(_))},
    });
    emit(report, flags, || println!("{rendered}"));
    Ok(())
}

fn cmd_converge(positional: &[String], flags: &HashMap<String, String>) -> Result<(), CliError> {
    let Some(which) = positional.first() else {
        return Err(CliError::Usage("converge needs `gl` or `sp`".into()));
    };
    let n = parse_n(flags)?;
    let lambda = parse_lambda(need(flags, "lambda")?)?;
    let verdict = match which.as_str() {
        "sp" => {
            let levi = parse_levi(flags, 2 * n)?;
            sp_convergence_check(&lambda, &levi)?
        }
        "gl" => {
            let blocks: Vec<usize> = need(flags, "levi")?
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| CliError::Usage("invalid GL composition".into()))?;
            gl_convergence_check(&lambda, &blocks)?
        }
        other => return Err(CliError::Usage(format!("unknown pair `{other}`"))),
    };
    let report = json!({
        "command": "converge",
        "version": VERSION,
        "params": {"pair": which, "n": n, "lambda": flags.get("lambda")},
        "result": verdict,
    });
    emit(report, flags, || println!("{verdict}"));
    Ok(())
}

fn cmd_count(flags: &HashMap<String, String>) -> Result<(), CliError> {
    let n = parse_n(flags)?;
    let counts: Vec<u64> = (0..=n)
        .map(|k| t_orbit_count(n, k))
        .collect::<perlab::Result<_>>()?;
    let report = json!({
        "command": "count",
        "version": VERSION,
        "params": {"n": n},
        "result": counts,
    });
    emit(report, flags, || {
        for (k, c) in counts.iter().enumerate() {
            println!("k = {k}: {c} T-orbit(s)");
        }
    });
    Ok(())
}

fn cmd_selftest(flags: &HashMap<String, String>) -> Result<(), CliError> {
    let slow = flags.contains_key("slow");
    let results = perlab::selftest::run_all(slow);
    let all_passed = results.iter().all(|r| r.passed);
    if want_json(flags) {
        let rows: Vec<Json> = results
            .iter()
            .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "details": r.details}))
            .collect();
        let report = json!({
            "command": "selftest",
            "version": VERSION,
            "params": {"slow": slow},
            "result": {"passed": all_passed, "criteria": rows},
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        for r in &results {
            println!("{r}");
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::Invariant("selftest criteria failed".into()))
    }
}

// ---------------------------------------------------------------------------
// classify: JSON input decoding
// ---------------------------------------------------------------------------

fn cmd_classify(positional: &[String], flags: &HashMap<String, String>) -> Result<(), CliError> {
    let Some(kind) = positional.first() else {
        return Err(CliError::Usage(
            "classify needs gl-datum, gl-class, sp-class or sp-datum".into(),
        ));
    };
    let input = need(flags, "input")?;
    let raw = if input == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| CliError::Usage(e.to_string()))?
    };
    let doc: Json =
        serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("bad JSON: {e}")))?;
    let verdict = match kind.as_str() {
        "gl-datum" => {
            let d = decode_gl_datum(&doc)?;
            // the two derivations agree by construction; report the datum one
            debug_assert_eq!(
                gl_is_h_dist_datum(&d),
                gl_classify_class(&gl_class_of_datum(&d))
            );
            gl_is_h_dist_datum(&d)
        }
        "gl-class" => gl_classify_class(&decode_gl_class(&doc)?),
        "sp-class" => sp_classify_class(&decode_sp_class(&doc)?),
        "sp-datum" => sp_is_h_type_datum(&decode_sp_datum(&doc)?)?,
        other => return Err(CliError::Usage(format!("unknown classify kind `{other}`"))),
    };
    let report = json!({
        "command": "classify",
        "version": VERSION,
        "params": {"kind": kind},
        "result": verdict,
    });
    emit(report, flags, || println!("{verdict}"));
    Ok(())
}

fn bad(msg: &str) -> CliError {
    CliError::Usage(msg.into())
}

fn decode_label(v: &Json) -> Result<CuspLabel, CliError> {
    let id = v["id"].as_str().ok_or_else(|| bad("label needs an id"))?;
    let size = v["gl_size"]
        .as_u64()
        .ok_or_else(|| bad("label needs gl_size"))? as usize;
    CuspLabel::new(
        id,
        size,
        v["trivial_char"].as_bool().unwrap_or(false),
        v["glhalf_distinguished"].as_bool().unwrap_or(false),
        v["selfdual"].as_bool().unwrap_or(false),
    )
    .map_err(|e| CliError::Usage(e.to_string()))
}

fn decode_labels(v: &Json) -> Result<Vec<CuspLabel>, CliError> {
    v.as_array()
        .ok_or_else(|| bad("labels must be an array"))?
        .iter()
        .map(decode_label)
        .collect()
}

fn decode_rats(v: &Json) -> Result<Vec<Rat>, CliError> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of fraction strings"))?
        .iter()
        .map(|x| {
            let s = x
                .as_str()
                .ok_or_else(|| bad("fractions are strings like \"1/2\""))?;
            parse_rat(s).map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn decode_subspace(v: &Json) -> Result<AffineSubspace, CliError> {
    let base = decode_rats(&v["base"])?;
    let dirs = match v["dirs"].as_array() {
        Some(rows) => rows
            .iter()
            .map(decode_rats)
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![],
    };
    Ok(AffineSubspace::new(base, dirs))
}

fn decode_speh_blocks(v: &Json) -> Result<Vec<SpehBlock>, CliError> {
    v.as_array()
        .ok_or_else(|| bad("blocks must be an array"))?
        .iter()
        .map(|b| {
            let tau = decode_label(&b["tau"])?;
            let r = b["r"].as_u64().ok_or_else(|| bad("Speh block needs r"))? as usize;
            if r == 0 {
                return Err(bad("Speh parameter r must be positive"));
            }
            Ok(SpehBlock { tau, r })
        })
        .collect()
}

fn decode_gl_datum(v: &Json) -> Result<GlDiscreteDatum, CliError> {
    Ok(GlDiscreteDatum {
        blocks: decode_speh_blocks(&v["blocks"])?,
    })
}

fn decode_gl_class(v: &Json) -> Result<GlSpectralClass, CliError> {
    let levi: Vec<usize> = v["levi"]
        .as_array()
        .ok_or_else(|| bad("gl-class levi is an array of block sizes"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| bad("bad block size"))
        })
        .collect::<Result<_, _>>()?;
    Ok(GlSpectralClass {
        levi,
        labels: decode_labels(&v["labels"])?,
        subspace: decode_subspace(&v["subspace"])?,
    })
}

fn decode_sp_class(v: &Json) -> Result<SpSpectralClass, CliError> {
    let levi = LeviDatum::parse(
        v["levi"]
            .as_str()
            .ok_or_else(|| bad("sp-class levi is a composition string"))?,
    )?;
    Ok(SpSpectralClass {
        levi,
        labels: decode_labels(&v["labels"])?,
        subspace: decode_subspace(&v["subspace"])?,
    })
}

fn decode_sp_datum(v: &Json) -> Result<SpDiscreteDatum, CliError> {
    let gl_blocks = decode_speh_blocks(&v["gl_blocks"])?;
    let sp_tail_rank = v["sp_tail_rank"].as_u64().unwrap_or(0) as usize;
    let sp_factor = if v["sp_factor"].is_null() {
        None
    } else {
        let f = &v["sp_factor"];
        Some(SpRepDatum {
            levi: LeviDatum::parse(
                f["levi"]
                    .as_str()
                    .ok_or_else(|| bad("sp_factor needs a levi"))?,
            )?,
            labels: decode_labels(&f["labels"])?,
            point: decode_rats(&f["point"])?,
        })
    };
    Ok(SpDiscreteDatum {
        gl_blocks,
        sp_tail_rank,
        sp_factor,
    })
}
