use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heun_atlas::belyi::{builtin_catalog, load_catalog, solve_belyi, verify_covering, CoveringRecord};
use heun_atlas::charcount::frobenius_count_with;
use heun_atlas::lemmas::nonexistence_search;
use heun_atlas::monodromy::{count_triples, dessin, emit_dot};
use heun_atlas::mp24::{classify_mp_with, builtin_fixture, mp_report_with, parse_marked_partition, MP_DEGREE};
use heun_atlas::patterns::{derive_heun_exponents, enumerate_patterns, enumerate_types, BranchingPattern, RestrictionType};
use heun_atlas::shell::{
    open_cache, persist_cache, reproduce_tables, run_all_with, Profile, RunReport, TableFixture,
};

#[derive(Parser)]
#[command(name = "heun-atlas", version, about = "Belyi coverings behind hypergeometric-to-Heun pull-backs")]
struct Cli {
    /// Print JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Include elapsed times in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Restriction types with bounded degree.
    Types,
    /// Branching patterns with their Heun exponent differences.
    Patterns {
        /// Restriction type such as "(2,3)" or "()"; all types when absent.
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
        /// Only this degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Check catalog coverings against their branching patterns.
    Verify {
        /// Covering id such as H21.
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        /// Every catalog record.
        #[arg(long)]
        all: bool,
        /// Catalog file instead of the bundled one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Compute the coverings with a branching pattern (degree 6 at most).
    Solve {
        #[arg(long)]
        pattern: String,
    },
    /// Count permutation triples with the pattern's cycle types.
    Count {
        #[arg(long)]
        pattern: String,
    },
    /// Dessins of the orbit representatives.
    Dessin {
        #[arg(long)]
        pattern: String,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Search for a non-existence certificate.
    Nonexist {
        #[arg(long)]
        pattern: String,
        /// Restriction type; read from the pattern's brackets when absent.
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
        /// Keep every certificate instead of stopping at the first.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Triple count from the character formula.
    Sigma {
        #[arg(long)]
        pattern: String,
    },
    /// Degree-24 branch data 2^12 = 3^8 = six parts.
    Mp24 {
        /// One partition such as "10+6+4+2+1+1"; the full report when absent.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Regenerate the pattern tables and diff against the fixture.
    Tables {
        /// Directory with tables.txt and unrealizable.txt instead of the bundled fixture.
        #[arg(long)]
        fixture_dir: Option<PathBuf>,
    },
    /// Run every check.
    All {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
    },
}

type CmdResult = Result<(Value, String, bool), String>;

fn pattern_arg(s: &str) -> Result<BranchingPattern, String> {
    BranchingPattern::parse(s).map_err(|e| e.to_string())
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn report_output(r: &RunReport, timings: bool) -> (Value, String, bool) {
    (r.to_json(timings), r.to_text(timings), !r.failed())
}

fn types() -> CmdResult {
    let mut rows = vec![vec!["type".into(), "max degree".into(), "degrees".into()]];
    let mut data = Vec::new();
    for (t, dmax) in enumerate_types() {
        let ds = t.admissible_degrees();
        rows.push(vec![t.label(), dmax.to_string(), format!("{ds:?}")]);
        data.push(json!({ "type": t.label(), "max_degree": dmax, "degrees": ds }));
    }
    Ok((json!(data), table(&rows), true))
}

fn patterns(ty: Option<String>, degree: Option<u32>) -> CmdResult {
    let types: Vec<RestrictionType> = match ty {
        Some(s) => vec![RestrictionType::parse(&s).map_err(|e| e.to_string())?],
        None => enumerate_types().into_iter().map(|(t, _)| t).collect(),
    };
    let mut rows = vec![vec!["type".into(), "degree".into(), "pattern".into(), "heun".into()]];
    let mut data = Vec::new();
    for t in types {
        let degrees = match degree {
            Some(d) => vec![d],
            None => t.admissible_degrees(),
        };
        for d in degrees {
            for p in enumerate_patterns(&t, d).map_err(|e| e.to_string())? {
                let (forms, _) = derive_heun_exponents(&p.default_base(), &p).map_err(|e| e.to_string())?;
                let heun: Vec<String> = forms.iter().map(|f| f.to_text()).collect();
                rows.push(vec![t.label(), d.to_string(), p.to_text(), heun.join(", ")]);
                data.push(json!({ "type": t.label(), "degree": d, "pattern": p.to_text(), "heun": heun }));
            }
        }
    }
    let text = format!("{}{} patterns\n", table(&rows), data.len());
    Ok((json!(data), text, true))
}

fn verify(id: Option<String>, all: bool, catalog: Option<PathBuf>) -> CmdResult {
    let records: Vec<CoveringRecord> = match catalog {
        Some(p) => load_catalog(&p).map_err(|e| e.to_string())?,
        None => builtin_catalog(),
    };
    let chosen: Vec<&CoveringRecord> = match (id, all) {
        (Some(id), _) => {
            let r = records.iter().find(|r| r.id == id).ok_or_else(|| format!("no covering {id}"))?;
            vec![r]
        }
        (None, true) => records.iter().collect(),
        (None, false) => return Err("give --id or --all".into()),
    };
    let mut rows = vec![vec!["id".into(), "field".into(), "pattern".into(), "status".into()]];
    let mut data = Vec::new();
    let mut ok = true;
    for r in chosen {
        let res = verify_covering(&r.map, &r.pattern);
        ok &= res.is_ok();
        let status = match &res {
            Ok(_) => "PASS".to_string(),
            Err(e) => format!("FAIL {e}"),
        };
        rows.push(vec![r.id.clone(), r.field.tag(), r.pattern.to_text(), status.clone()]);
        data.push(json!({
            "id": r.id, "field": r.field.tag(), "pattern": r.pattern.to_text(),
            "passed": res.is_ok(), "fibers": res.ok(),
        }));
    }
    Ok((json!(data), table(&rows), ok))
}

fn solve(pattern: &str) -> CmdResult {
    let p = pattern_arg(pattern)?;
    let rep = solve_belyi(&p).map_err(|e| e.to_string())?;
    let maps: Vec<String> = rep.maps.iter().map(|m| m.to_text()).collect();
    let text: String = maps.iter().map(|m| format!("{m}\n")).collect::<String>()
        + &format!("{} coverings, {} raw solutions\n", maps.len(), rep.raw_solutions);
    let data = json!({ "pattern": p.to_text(), "maps": maps, "raw_solutions": rep.raw_solutions, "saturated": rep.saturated });
    Ok((data, text, true))
}

fn count(pattern: &str) -> CmdResult {
    let p = pattern_arg(pattern)?;
    let c = count_triples(&p.partitions()).map_err(|e| e.to_string())?;
    let reps: Vec<Vec<String>> = c.representatives.iter().map(|t| t.as_array().map(|s| s.to_string()).to_vec()).collect();
    let mut text = format!(
        "raw count {}\ntransitive matches {}\norbits {}\n",
        c.raw_count, c.transitive_matches, c.orbit_count
    );
    for r in &reps {
        text.push_str(&format!("  {}\n", r.join("  ")));
    }
    let data = json!({
        "pattern": p.to_text(), "raw_count": c.raw_count.to_string(),
        "transitive_matches": c.transitive_matches, "orbit_count": c.orbit_count, "representatives": reps,
    });
    Ok((data, text, true))
}

fn dessins(pattern: &str, dot: bool) -> CmdResult {
    let p = pattern_arg(pattern)?;
    let c = count_triples(&p.partitions()).map_err(|e| e.to_string())?;
    let ds: Vec<_> = c.representatives.iter().map(dessin).collect();
    let text = if dot {
        ds.iter().map(emit_dot).collect()
    } else {
        let mut rows = vec![vec!["#".into(), "genus".into(), "black".into(), "white".into(), "faces".into()]];
        for (i, d) in ds.iter().enumerate() {
            rows.push(vec![
                (i + 1).to_string(),
                d.genus.map_or("-".into(), |g| g.to_string()),
                format!("{:?}", d.black_orders()),
                format!("{:?}", d.white_orders()),
                format!("{:?}", d.face_orders()),
            ]);
        }
        table(&rows)
    };
    let data: Vec<Value> = ds
        .iter()
        .map(|d| {
            json!({
                "genus": d.genus, "black": d.black_orders(), "white": d.white_orders(),
                "faces": d.face_orders(), "dot": emit_dot(d),
            })
        })
        .collect();
    Ok((json!({ "pattern": p.to_text(), "dessins": data }), text, true))
}

fn nonexist(pattern: &str, ty: Option<String>, exhaustive: bool) -> CmdResult {
    let p = pattern_arg(pattern)?;
    let t = match ty {
        Some(s) => RestrictionType::parse(&s),
        None => RestrictionType::new(p.restriction_type()),
    }
    .map_err(|e| e.to_string())?;
    let v = nonexistence_search(&t, &p, exhaustive);
    let mut text = format!("{:?}\n", v.status);
    for c in &v.chain {
        let alpha: Vec<String> = c.alpha.iter().map(heun_atlas::exactalg::fmt_rat).collect();
        let base: Vec<String> = c.profile.base.iter().map(heun_atlas::exactalg::fmt_rat).collect();
        text.push_str(&format!(
            "  {:<16} base ({}){} params [{}] -> {}\n",
            c.rule.to_string(),
            base.join(", "),
            if c.implied { " implied" } else { "" },
            alpha.join(", "),
            c.profile.to_text()
        ));
    }
    let data = serde_json::to_value(&v).map_err(|e| e.to_string())?;
    Ok((json!({ "pattern": p.to_text(), "type": t.label(), "verdict": data }), text, true))
}

fn sigma(pattern: &str) -> CmdResult {
    let p = pattern_arg(pattern)?;
    let parts = p.partitions();
    let cache = open_cache();
    let n = frobenius_count_with(&cache, &parts[0], &parts[1], &parts[2]).map_err(|e| e.to_string())?;
    persist_cache(&cache).map_err(|e| e.to_string())?;
    Ok((json!({ "pattern": p.to_text(), "count": n.to_string() }), format!("{n}\n"), true))
}

fn mp24(partition: Option<String>) -> CmdResult {
    let cache = open_cache();
    let out = match partition {
        Some(s) => {
            let (mut parts, _) = parse_marked_partition(&s).ok_or_else(|| format!("bad partition {s:?}"))?;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            if parts.iter().sum::<u32>() != MP_DEGREE || parts.len() != 6 {
                return Err(format!("{s:?} is not a six-part partition of {MP_DEGREE}"));
            }
            let r = classify_mp_with(&cache, &builtin_fixture(), &parts).map_err(|e| e.to_string())?;
            let mut text = format!("character sum {}\nresolution {:?}\nlisted as {:?}\n", r.sigma_raw, r.resolution, r.listed_status);
            for route in r.routes.iter().filter(|x| !x.rules.is_empty()) {
                let rules: Vec<String> = route.rules.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("  1/{}: {}\n", route.k, rules.join(", ")));
            }
            (serde_json::to_value(&r).map_err(|e| e.to_string())?, text, true)
        }
        None => {
            let r = mp_report_with(&cache).map_err(|e| e.to_string())?;
            let t = &r.totals;
            let mut text = format!(
                "partitions {}\ncharacter sum zero {}\nrefuted directly {}\nrefuted with gauge parity {}\nlisted non-existent {}\n",
                t.partitions, t.sigma_zero, t.direct, t.with_gauge, t.listed_nonexistent
            );
            for w in r.warnings.iter().chain(&r.violations) {
                text.push_str(&format!("  {w}\n"));
            }
            let ok = r.violations.is_empty();
            (serde_json::to_value(&r).map_err(|e| e.to_string())?, text, ok)
        }
    };
    persist_cache(&cache).map_err(|e| e.to_string())?;
    Ok(out)
}

fn tables(dir: Option<PathBuf>, timings: bool) -> CmdResult {
    let fixture = match dir {
        Some(d) => TableFixture::load(&d),
        None => Ok(TableFixture::builtin()),
    }
    .map_err(|e| e.to_string())?;
    let r = reproduce_tables(&fixture, &builtin_catalog()).map_err(|e| e.to_string())?;
    Ok(report_output(&r, timings))
}

fn all(profile: ProfileArg, timings: bool) -> CmdResult {
    let profile = match profile {
        ProfileArg::Quick => Profile::Quick,
        ProfileArg::Full => Profile::Full,
    };
    let cache = open_cache();
    let r = run_all_with(profile, &TableFixture::builtin(), &builtin_catalog(), &cache).map_err(|e| e.to_string())?;
    persist_cache(&cache).map_err(|e| e.to_string())?;
    Ok(report_output(&r, timings))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Types => types(),
        Command::Patterns { ty, degree } => patterns(ty, degree),
        Command::Verify { id, all, catalog } => verify(id, all, catalog),
        Command::Solve { pattern } => solve(&pattern),
        Command::Count { pattern } => count(&pattern),
        Command::Dessin { pattern, dot } => dessins(&pattern, dot),
        Command::Nonexist { pattern, ty, exhaustive } => nonexist(&pattern, ty, exhaustive),
        Command::Sigma { pattern } => sigma(&pattern),
        Command::Mp24 { partition } => mp24(partition),
        Command::Tables { fixture_dir } => tables(fixture_dir, cli.timings),
        Command::All { profile } => all(profile, cli.timings),
    };
    match result {
        Ok((data, text, ok)) => {
            let out = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&data).expect("JSON values serialize"))
            } else {
                text
            };
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
