mod exit;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use exit::CliError;
use quandlekit::abgrp::{AbHom, FinAbGroup, DEFAULT_SUBGROUP_CAP};
use quandlekit::cocycle::{g_orbits, h2c, orbit_partition, ConstantCocycle, PairMapKind, DEFAULT_NODE_BUDGET};
use quandlekit::covering::is_covering;
use quandlekit::fingroup::FiniteGroup;
use quandlekit::knot::{cocycle_invariant, col_count, colorings, invariant_labels, is_trivial_invariant, parse_gauss};
use quandlekit::permgrp::DEFAULT_CLOSURE_CAP;
use quandlekit::pi1::s_group_with_cap;
use quandlekit::quandle::{affine_is_connected, Quandle};

#[derive(Parser)]
#[command(name = "quandlekit", version, about = "Finite quandles, constant cocycles and coverings")]
struct Cli {
    /// Print a JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms and report structural flags of a table file.
    Check {
        table: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        lmlt_cap: usize,
    },
    /// Constant cohomology classes with coefficients in a finite group.
    H2c {
        table: PathBuf,
        /// `S3`, `Sym(4)`, `Z2xZ2`, `Z6` or `table:<path>`.
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = 0)]
        base_point: usize,
        /// Recount at every base point and fail if the counts differ.
        #[arg(long)]
        all_base_points: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Fundamental group of the affine quandle Q(G, α).
    Pi1 {
        /// Abelian group such as `Z2xZ2` or `Z9`.
        #[arg(long)]
        group: String,
        /// Matrix of α as JSON rows, e.g. `[[1,1],[1,0]]`; a bare integer for cyclic groups.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
        subgroup_cap: usize,
    },
    Cover {
        #[command(subcommand)]
        action: CoverCommand,
    },
    Knot {
        #[command(subcommand)]
        action: KnotCommand,
    },
    /// Orbits of f, g and h on pairs, and the distinguished g-orbit families.
    Orbits {
        table: PathBuf,
        #[arg(long, default_value_t = 0)]
        base_point: usize,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Decide whether a map between two quandles is a covering.
    Verify {
        total: PathBuf,
        base: PathBuf,
        /// Images of the elements of the total quandle, comma or space separated.
        #[arg(long)]
        map: String,
    },
}

#[derive(Subcommand)]
enum KnotCommand {
    /// Coloring counts and, given a cocycle, the conjugacy-class invariant.
    Invariant {
        #[arg(long)]
        quandle: PathBuf,
        #[arg(long)]
        gauss: String,
        #[arg(long, requires = "cocycle")]
        coeff: Option<String>,
        #[arg(long, requires = "coeff")]
        cocycle: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { table, lmlt_cap } => check(&table, lmlt_cap),
        Command::H2c { table, coeff, base_point, all_base_points, budget } => {
            cmd_h2c(&table, &coeff, base_point, all_base_points, budget)
        }
        Command::Pi1 { group, matrix, subgroup_cap } => pi1(&group, &matrix, subgroup_cap),
        Command::Cover { action: CoverCommand::Verify { total, base, map } } => cover_verify(&total, &base, &map),
        Command::Knot { action: KnotCommand::Invariant { quandle, gauss, coeff, cocycle } } => {
            knot(&quandle, &gauss, coeff.as_deref(), cocycle.as_deref())
        }
        Command::Orbits { table, base_point } => orbits(&table, base_point),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(Failure { report, error }) => {
            if let Some(r) = report {
                print!("{}", r.render(cli.json));
            }
            eprintln!("error: {error}");
            ExitCode::from(error.code())
        }
    }
}

/// Text lines plus the equivalent JSON document.
struct Report {
    lines: Vec<String>,
    doc: Value,
}

impl Report {
    fn render(&self, json: bool) -> String {
        if json {
            format!("{}\n", serde_json::to_string_pretty(&self.doc).expect("serializable"))
        } else {
            self.lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

/// An error, possibly after a report that explains it.
struct Failure {
    report: Option<Report>,
    error: CliError,
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { report: None, error: e.into() }
    }
}

type Outcome = Result<Report, Failure>;

fn load(path: &Path) -> Result<Quandle, CliError> {
    Ok(Quandle::load(path)?)
}

fn coefficients(desc: &str) -> Result<FiniteGroup, CliError> {
    if let Some(path) = desc.strip_prefix("table:") {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        return Ok(FiniteGroup::parse_table_text(&text, desc)?);
    }
    Ok(FiniteGroup::from_descriptor(desc)?)
}

fn base_point(q: &Quandle, u: usize) -> Result<(), CliError> {
    if u >= q.size() {
        return Err(CliError::Usage(format!("base point {u} out of range for a quandle of order {}", q.size())));
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(path: &Path, cap: usize) -> Outcome {
    let q = load(path)?;
    let latin = q.is_latin();
    let connected = q.is_connected();
    let doubly = q.is_doubly_transitive();
    let semiregular = q.semiregular();
    let lmlt = q.lmlt_order(cap)?;
    let summary = if connected {
        let mut flags = Vec::new();
        if latin {
            flags.push("latin");
        }
        flags.push("connected");
        if doubly {
            flags.push("2-transitive");
        }
        format!("{}, |LMlt|={lmlt}", flags.join(" "))
    } else {
        format!("not connected, |LMlt|={lmlt}")
    };
    let lines = vec![
        format!("order: {}", q.size()),
        "axioms: ok".to_string(),
        format!("latin: {}", yes(latin)),
        format!("connected: {}", yes(connected)),
        format!("doubly transitive: {}", yes(doubly)),
        format!("semiregular: {}", semiregular.map_or("no".to_string(), |s| format!("s={s}"))),
        format!("|LMlt|: {lmlt}"),
        summary,
    ];
    let doc = json!({
        "order": q.size(),
        "latin": latin,
        "connected": connected,
        "doubly_transitive": doubly,
        "semiregular": semiregular,
        "lmlt_order": lmlt,
    });
    Ok(Report { lines, doc })
}

fn cmd_h2c(path: &Path, coeff: &str, u: usize, every: bool, budget: u64) -> Outcome {
    let q = load(path)?;
    base_point(&q, u)?;
    let g = coefficients(coeff)?;
    let h = h2c(&q, &g, u, budget)?;
    let name = path.display().to_string();
    let docs: Vec<Value> = h.classes.iter().map(|c| c.to_json(&g, &name)).collect();
    let mut lines = vec![
        format!("coefficients: {} (order {})", g.descriptor(), g.order()),
        format!("base point: {u}"),
        format!("normalized cocycles: {}", h.normalized),
        format!("classes: {}", h.classes.len()),
    ];
    for (i, d) in docs.iter().enumerate() {
        lines.push(format!("class {}: {d}", i + 1));
    }
    let mut doc = json!({
        "coeff": g.descriptor(),
        "base_point": u,
        "normalized": h.normalized,
        "classes": docs,
    });
    if every {
        let counts = (0..q.size())
            .map(|v| Ok(h2c(&q, &g, v, budget)?.classes.len()))
            .collect::<Result<Vec<usize>, CliError>>()?;
        let agree = counts.iter().all(|&c| c == h.classes.len());
        lines.push(format!(
            "class counts by base point: {}",
            counts.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        ));
        doc["counts_by_base_point"] = json!(counts);
        if !agree {
            return Err(Failure {
                report: Some(Report { lines, doc }),
                error: CliError::Negative("class count depends on the base point".into()),
            });
        }
    }
    Ok(Report { lines, doc })
}

fn parse_matrix(text: &str, rank: usize) -> Result<Vec<Vec<i64>>, CliError> {
    if let Ok(k) = text.trim().parse::<i64>() {
        if rank != 1 {
            return Err(CliError::Usage(format!("a scalar matrix needs a cyclic group, got rank {rank}")));
        }
        return Ok(vec![vec![k]]);
    }
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("cannot parse matrix {text:?}: {e}")))
}

fn pi1(group: &str, matrix: &str, cap: usize) -> Outcome {
    let g: FinAbGroup = group.parse().map_err(CliError::from)?;
    let alpha = AbHom::endo(g.clone(), parse_matrix(matrix, g.rank())?).map_err(CliError::from)?;
    if !affine_is_connected(&g, &alpha)? {
        return Err(CliError::Negative(format!("Q({g}, α) is not connected")).into());
    }
    let d = s_group_with_cap(&g, &alpha, cap)?;
    let pi = if d.s_is_trivial() {
        "trivial".to_string()
    } else {
        d.invariants().iter().map(|k| format!("Z_{k}")).collect::<Vec<_>>().join(" x ")
    };
    let mut lines = vec![
        format!("G: {g}"),
        format!("|G⊗G|: {}", d.tensor_order()),
        format!("|I|: {}", d.i_order()),
        format!("relators: {}", d.relators().len()),
    ];
    lines.extend(d.relators().iter().map(|r| format!("  {r:?}")));
    lines.push(format!("π₁ = {pi}"));
    let doc = json!({
        "group": g.to_string(),
        "tensor_order": d.tensor_order(),
        "i_order": d.i_order(),
        "relators": d.relators(),
        "invariants": d.invariants(),
    });
    Ok(Report { lines, doc })
}

fn cover_verify(total: &Path, base: &Path, map: &str) -> Outcome {
    let y = load(total)?;
    let x = load(base)?;
    let images = map
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad map entry {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if images.len() != y.size() || images.iter().any(|&i| i >= x.size()) {
        return Err(CliError::Usage(format!(
            "map must list {} images in 0..{}",
            y.size(),
            x.size()
        ))
        .into());
    }
    let ok = is_covering(&y, &x, &images)?;
    let mut fibers = vec![0usize; x.size()];
    for &i in &images {
        fibers[i] += 1;
    }
    let lines = vec![
        format!("covering: {}", yes(ok)),
        format!("fiber sizes: {}", fibers.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")),
        format!("total connected: {}", yes(y.is_connected())),
    ];
    let doc = json!({ "covering": ok, "fiber_sizes": fibers, "total_connected": y.is_connected() });
    let report = Report { lines, doc };
    if ok {
        Ok(report)
    } else {
        Err(Failure {
            report: Some(report),
            error: CliError::Negative("elements with equal images have different left sections".into()),
        })
    }
}

fn knot(path: &Path, gauss: &str, coeff: Option<&str>, cocycle: Option<&Path>) -> Outcome {
    let q = load(path)?;
    let k = parse_gauss(gauss)?;
    let all = colorings(&k, &q).len();
    let col = col_count(&k, &q);
    let mut lines = vec![
        format!("crossings: {}", k.crossing_count()),
        format!("colorings: {all}"),
        format!("col: {col}"),
    ];
    let mut doc = json!({ "crossings": k.crossing_count(), "colorings": all, "col": col });
    if let (Some(coeff), Some(cocycle)) = (coeff, cocycle) {
        let g = coefficients(coeff)?;
        let text = fs::read_to_string(cocycle).map_err(|e| CliError::Usage(format!("{}: {e}", cocycle.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", cocycle.display())))?;
        let beta = ConstantCocycle::from_json(&q, &g, &value)?;
        let inv = cocycle_invariant(&k, &q, &g, &beta)?;
        let mut labels = invariant_labels(&g, &inv);
        labels.sort();
        lines.push(format!("trivial: {}", yes(is_trivial_invariant(&inv))));
        lines.extend(labels.iter().map(|(c, n)| format!("class {c}: {n}")));
        doc["trivial"] = json!(is_trivial_invariant(&inv));
        doc["invariant"] = labels.iter().map(|(c, n)| json!({ "class": c, "count": n })).collect();
    }
    Ok(Report { lines, doc })
}

fn histogram(sizes: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &s in sizes {
        *h.entry(s).or_insert(0) += 1;
    }
    h
}

fn show(h: &BTreeMap<usize, usize>) -> String {
    h.iter().map(|(l, c)| format!("{l}^{c}")).collect::<Vec<_>>().join(" ")
}

fn orbits(path: &Path, u: usize) -> Outcome {
    let q = load(path)?;
    base_point(&q, u)?;
    let n = q.size();
    let kinds = [("f", PairMapKind::F), ("g", PairMapKind::G), ("h", PairMapKind::H)];
    let mut lines = vec![format!("base point: {u}"), "orbit lengths as length^count".to_string()];
    let mut doc = json!({ "base_point": u });
    for (name, kind) in kinds {
        let h = histogram(&orbit_partition(&q, u, &[kind])?.sizes());
        lines.push(format!("{name}: {}", show(&h)));
        doc[name] = json!(h);
    }
    let all = histogram(&orbit_partition(&q, u, &[PairMapKind::F, PairMapKind::G, PairMapKind::H])?.sizes());
    lines.push(format!("<f,g,h>: {}", show(&all)));
    doc["fgh"] = json!(all);

    let o = g_orbits(&q, u)?;
    let pair = |i: usize| format!("({},{})", i / n, i % n);
    let family = |fam: &[usize]| -> Vec<String> {
        fam.iter().filter(|&&b| b != o.base_block).map(|&b| pair(o.partition.representative(b))).collect()
    };
    let fu = family(&o.u_family);
    let ff = family(&o.f_fixed_family);
    lines.push(format!("O_g^u: {}", fu.join(" ")));
    lines.push(format!("O_g^f: {}", ff.join(" ")));
    doc["o_g_u"] = json!(fu);
    doc["o_g_f"] = json!(ff);

    let f = orbit_partition(&q, u, &[PairMapKind::F])?;
    let fixed: Vec<String> = f.blocks().iter().filter(|b| b.len() == 1).map(|b| pair(b[0])).collect();
    let moving: Vec<usize> = histogram(&f.sizes()).into_keys().filter(|&l| l > 1).collect();
    lines.push(format!("f fixed points: {}", fixed.join(" ")));
    lines.push(format!(
        "non-fixed f-orbit lengths: {}",
        moving.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    ));
    doc["f_fixed"] = json!(fixed);
    doc["f_lengths"] = json!(moving);
    Ok(Report { lines, doc })
}
