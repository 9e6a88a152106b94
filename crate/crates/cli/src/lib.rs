//! Command-line front end for `hombound`.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hombound::bounds::{best_bound, lower_bound_explicit, verify_certificate, BoundCertificate};
use hombound::constructions::modules::DimensionReport;
use hombound::constructions::theorem3::{search_presentation, DEFAULT_DMAX};
use hombound::constructions::theorem4::{DEFAULT_SIEVE_BOUND, DEFAULT_SUM_CAP};
use hombound::constructions::{
    find_simple_module, min_m_for_conclusion, solsol_construct, theorem1_target, theorem3_decompose,
    theorem4_construct, ModuleAction,
};
use hombound::format::{read_document, Document};
use hombound::homcount::{
    count_homs_with, free_product_count, witness_quotient, SearchOptions, DEFAULT_NODE_BUDGET,
    DEFAULT_WIDTH_CAP,
};
use hombound::selfcheck::run_invariant_suites;
use hombound::subgroup::{d_min_generators, largest_normal_p_subgroup, DEFAULT_GENERATOR_BUDGET};
use hombound::{Error, FiniteGroup, Presentation};

/// Targets up to this order get an explicit recount in `construct-thm1`.
const RECOUNT_LIMIT: u64 = 5000;

#[derive(Debug, Parser)]
#[command(name = "hombound", version, about = "Lower bounds for h(G_1 * ... * G_n) via homomorphism counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for inner parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Omit the timestamp so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub reproducible: bool,
    /// Print the JSON report on stdout instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count homomorphisms from each factor, and from their free product, into a target.
    Homcount {
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<PathBuf>,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Certify a lower bound; several targets pick the best one.
    Bound {
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<PathBuf>,
        #[arg(long, num_args = 1.., required = true)]
        target: Vec<PathBuf>,
    },
    /// Build the witness quotient G(Γ, H) and report its order and rank.
    Witness {
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<PathBuf>,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WIDTH_CAP)]
        width_cap: usize,
        #[arg(long, default_value_t = DEFAULT_GENERATOR_BUDGET)]
        budget: u64,
    },
    /// Minimal number of generators.
    Dmin {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GENERATOR_BUDGET)]
        budget: u64,
    },
    /// Largest normal p-subgroup O_p.
    Opsub {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Metabelian target for a free product of cyclic groups.
    ConstructSolsol {
        /// Orders of the cyclic factors.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// V^m : R target from simple modules of the factors over F_p.
    ConstructThm1 {
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<PathBuf>,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = DEFAULT_DMAX)]
        dmax: usize,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Family of n groups with h > n from disjoint prime progressions.
    ConstructThm4 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SIEVE_BOUND)]
        sieve_bound: u64,
        #[arg(long, default_value_t = DEFAULT_SUM_CAP)]
        sum_cap: u64,
    },
    /// Bound from the abelianizations of the factors.
    DecomposeThm3 {
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DMAX)]
        dmax: usize,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Re-check a certificate, or run the built-in invariant suites.
    Verify {
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct Report {
    pub value: Value,
    pub summary: Vec<String>,
    /// A check ran and failed; the process exits with status 2.
    pub failed: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core {
                source: Error::Verification(_),
                ..
            } => 2,
            _ => 1,
        }
    }
}

trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> Context<T> for hombound::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core {
            context: what(),
            source,
        })
    }
}

fn load(path: &Path) -> Result<Document, CliError> {
    read_document(path).context(|| path.display().to_string())
}

fn load_group(path: &Path) -> Result<FiniteGroup, CliError> {
    load(path)?.group().cloned().ok_or_else(|| {
        CliError::Usage(format!(
            "{}: a group is needed here, not a bare presentation",
            path.display()
        ))
    })
}

fn load_presentations(paths: &[PathBuf]) -> Result<Vec<Presentation>, CliError> {
    paths
        .iter()
        .map(|p| load(p)?.presentation().context(|| p.display().to_string()))
        .collect()
}

fn load_groups(paths: &[PathBuf]) -> Result<Vec<FiniteGroup>, CliError> {
    paths.iter().map(|p| load_group(p)).collect()
}

fn paths_of(cmd: &Command) -> Vec<&PathBuf> {
    match cmd {
        Command::Homcount { factors, target, .. } | Command::Witness { factors, target, .. } => {
            factors.iter().chain(std::iter::once(target)).collect()
        }
        Command::Bound { factors, target } => factors.iter().chain(target).collect(),
        Command::Dmin { group, .. } | Command::Opsub { group, .. } => vec![group],
        Command::ConstructThm1 { factors, .. } | Command::DecomposeThm3 { factors, .. } => {
            factors.iter().collect()
        }
        Command::Verify { certificate } => certificate.iter().collect(),
        Command::ConstructSolsol { .. } | Command::ConstructThm4 { .. } => vec![],
    }
}

fn timestamp() -> String {
    humantime::format_rfc3339_seconds(std::time::SystemTime::now()).to_string()
}

fn stamp_certificate(cert: &mut BoundCertificate, reproducible: bool) {
    cert.generated_at = (!reproducible).then(timestamp);
}

fn cert_value(cert: &BoundCertificate) -> Value {
    serde_json::to_value(cert).expect("certificates serialize")
}

fn cert_summary(cert: &BoundCertificate) -> Vec<String> {
    let mut lines = vec![
        format!(
            "conclusion {} ({}{}), target {} of order {}",
            cert.conclusion,
            cert.proof_kind,
            if cert.conditional { ", conditional" } else { "" },
            cert.target.name,
            cert.target.order
        ),
        format!(
            "certified by {} {} {}",
            cert.comparison.lhs,
            cert.comparison.relation.symbol(),
            cert.comparison.rhs
        ),
        format!("sum of h = {:.6}", cert.total_h),
    ];
    lines.extend(cert.notes.iter().map(|n| format!("note: {n}")));
    lines
}

fn module_reports(reports: &[DimensionReport]) -> Value {
    serde_json::to_value(reports).expect("reports serialize")
}

fn elements(g: &FiniteGroup, idx: &[u32]) -> Result<Value, CliError> {
    let e = g.enumerate().context(|| g.name().to_string())?;
    Ok(json!(idx.iter().map(|&i| e.element(i).to_vec()).collect::<Vec<_>>()))
}

/// Runs one job; the caller prints and picks the exit status.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    for p in paths_of(&cli.command) {
        if !p.exists() {
            return Err(CliError::Usage(format!("{} does not exist", p.display())));
        }
    }
    if let Some(t) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let repro = cli.reproducible;
    let mut report = match &cli.command {
        Command::Homcount {
            factors,
            target,
            budget,
        } => homcount(factors, target, *budget)?,
        Command::Bound { factors, target } => bound(factors, target, repro)?,
        Command::Witness {
            factors,
            target,
            width_cap,
            budget,
        } => witness(factors, target, *width_cap, *budget)?,
        Command::Dmin { group, budget } => dmin(group, *budget)?,
        Command::Opsub { group, prime } => opsub(group, *prime)?,
        Command::ConstructSolsol { primes, m } => {
            let mut r = solsol_construct(primes, *m).context(|| "construct-solsol".into())?;
            stamp_certificate(&mut r.certificate, repro);
            let mut summary = vec![format!(
                "p = {}, k = {}, units {:?}, target order {}",
                r.p,
                r.k,
                r.units,
                r.target.order()
            )];
            summary.extend(cert_summary(&r.certificate));
            let failed = r.metabelian == Some(false);
            if failed {
                summary.push("target is not metabelian".into());
            }
            Report {
                value: cert_value(&r.certificate),
                summary,
                failed,
            }
        }
        Command::ConstructThm1 {
            factors,
            prime,
            dmax,
            m,
        } => thm1(factors, *prime, *dmax, *m, repro)?,
        Command::ConstructThm4 {
            n,
            sieve_bound,
            sum_cap,
        } => {
            let mut inst = theorem4_construct(*n, *sieve_bound, *sum_cap)
                .context(|| format!("construct-thm4 (n = {n})"))?;
            stamp_certificate(&mut inst.certificate, repro);
            let claims: Vec<Value> = inst
                .all_claims()
                .map(|c| json!({"claim": c.name, "holds": c.holds, "detail": c.detail}))
                .collect();
            let mut summary = vec![format!(
                "k = {}, blocks {:?}",
                inst.k,
                inst.factors.iter().map(|f| &f.blocks).collect::<Vec<_>>()
            )];
            summary.extend(
                inst.all_claims()
                    .map(|c| format!("[{}] {}: {}", if c.holds { "ok" } else { "FAIL" }, c.name, c.detail)),
            );
            summary.extend(cert_summary(&inst.certificate));
            let failed = inst.all_claims().any(|c| !c.holds);
            Report {
                value: json!({"certificate": cert_value(&inst.certificate), "claims": claims}),
                summary,
                failed,
            }
        }
        Command::DecomposeThm3 { factors, dmax, m } => {
            let groups = load_groups(factors)?;
            let mut d = theorem3_decompose(&groups, *dmax, *m).context(|| "decompose-thm3".into())?;
            stamp_certificate(&mut d.certificate, repro);
            let decomposition = json!({
                "invariants": d.invariants.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "s_prime": d.s_prime,
                "p": d.p.to_string(),
                "t": d.t,
                "order": d.order,
                "h_orders": d.h_groups.iter().map(|h| h.order().map(|o| o.to_string()).unwrap_or_default()).collect::<Vec<_>>(),
                "last_rank": d.last_rank,
                "module_reports": d.module_reports.iter().map(|r| module_reports(r)).collect::<Vec<_>>(),
            });
            let mut summary = vec![format!(
                "s' = {}, p = {}, t = {}, H_(t+1) = C{}^{}",
                d.s_prime, d.p, d.t, d.p, d.last_rank
            )];
            summary.extend(cert_summary(&d.certificate));
            Report {
                value: json!({"certificate": cert_value(&d.certificate), "decomposition": decomposition}),
                summary,
                failed: false,
            }
        }
        Command::Verify { certificate } => verify(certificate.as_deref())?,
    };
    if !repro {
        if let Value::Object(map) = &mut report.value {
            if !map.contains_key("certificate") && !map.contains_key("generated_at") {
                map.insert("generated_at".into(), json!(timestamp()));
            }
        }
    }
    Ok(report)
}

fn homcount(factors: &[PathBuf], target: &Path, budget: u64) -> Result<Report, CliError> {
    let pres = load_presentations(factors)?;
    let h = load_group(target)?;
    let opts = SearchOptions {
        node_budget: budget,
        ..SearchOptions::default()
    };
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for p in &pres {
        let r = count_homs_with(p, &h, opts).context(|| format!("counting {} -> {}", p.name(), h.name()))?;
        summary.push(format!("{} -> {}: count {}, h {:.6}", p.name(), h.name(), r.count, r.h()));
        rows.push(json!({"factor": p.name(), "count": r.count.to_string(), "h": r.h()}));
    }
    let total = free_product_count(&pres, &h).context(|| "free product count".into())?;
    summary.push(format!("free product: count {}, h {:.6}", total.count, total.h()));
    Ok(Report {
        value: json!({
            "target": h.name(),
            "target_order": total.target_order.to_string(),
            "factors": rows,
            "free_product": {"count": total.count.to_string(), "h": total.h()},
        }),
        summary,
        failed: false,
    })
}

fn bound(factors: &[PathBuf], targets: &[PathBuf], repro: bool) -> Result<Report, CliError> {
    let pres = load_presentations(factors)?;
    let groups = load_groups(targets)?;
    if groups.len() == 1 {
        let mut cert = lower_bound_explicit(&pres, &groups[0]).context(|| "bound".into())?;
        stamp_certificate(&mut cert, repro);
        return Ok(Report {
            value: cert_value(&cert),
            summary: cert_summary(&cert),
            failed: false,
        });
    }
    let mut best = best_bound(&pres, &groups).context(|| "bound".into())?;
    stamp_certificate(&mut best.certificate, repro);
    let mut summary = vec![format!("best target: index {}", best.best_index)];
    summary.extend(best.candidates.iter().map(|c| match (&c.conclusion, &c.error) {
        (Some(k), _) => format!("  {}: conclusion {k}", c.target),
        (None, e) => format!("  {}: failed ({})", c.target, e.as_deref().unwrap_or("")),
    }));
    summary.extend(cert_summary(&best.certificate));
    Ok(Report {
        value: serde_json::to_value(&best).expect("serializes"),
        summary,
        failed: false,
    })
}

fn witness(factors: &[PathBuf], target: &Path, width_cap: usize, budget: u64) -> Result<Report, CliError> {
    let pres = load_presentations(factors)?;
    let h = load_group(target)?;
    let w = witness_quotient(&pres, &h, width_cap).context(|| "witness".into())?;
    let order = w.group.order().context(|| "witness order".into())?;
    let (d, status) = match d_min_generators(&w.group, budget) {
        Ok(g) => (json!(g.d), "exact".to_string()),
        Err(Error::GeneratorBudgetExceeded { lower_bound }) => (json!(lower_bound), "lower-bound".into()),
        Err(e) => (Value::Null, format!("not computed: {e}")),
    };
    Ok(Report {
        summary: vec![
            format!(
                "G({}, {}) has order {}, built from {} of {} homomorphisms",
                w.source.name(),
                h.name(),
                order,
                w.hom_count_used,
                w.hom_count_total
            ),
            format!("d = {d} ({status})"),
        ],
        value: json!({
            "source": w.source.name(),
            "target": h.name(),
            "hom_count_total": w.hom_count_total.to_string(),
            "hom_count_used": w.hom_count_used.to_string(),
            "order": order.to_string(),
            "d": d,
            "d_status": status,
        }),
        failed: false,
    })
}

fn dmin(group: &Path, budget: u64) -> Result<Report, CliError> {
    let g = load_group(group)?;
    let w = d_min_generators(&g, budget).context(|| format!("dmin {}", g.name()))?;
    Ok(Report {
        summary: vec![format!("d({}) = {}", g.name(), w.d)],
        value: json!({
            "group": g.name(),
            "order": g.order().context(|| g.name().into())?.to_string(),
            "d": w.d,
            "witness": elements(&g, &w.witness)?,
        }),
        failed: false,
    })
}

fn opsub(group: &Path, prime: u64) -> Result<Report, CliError> {
    let g = load_group(group)?;
    let op = largest_normal_p_subgroup(&g, prime).context(|| format!("O_{prime}({})", g.name()))?;
    Ok(Report {
        summary: vec![format!("|O_{prime}({})| = {}", g.name(), op.order())],
        value: json!({
            "group": g.name(),
            "prime": prime.to_string(),
            "order": op.order().to_string(),
            "generators": elements(&g, op.generators())?,
        }),
        failed: false,
    })
}

fn thm1(factors: &[PathBuf], p: u32, dmax: usize, m: Option<u64>, repro: bool) -> Result<Report, CliError> {
    let docs: Vec<Document> = factors.iter().map(|f| load(f)).collect::<Result<_, _>>()?;
    let mut modules: Vec<ModuleAction> = Vec::new();
    let mut searches = Vec::new();
    let mut sources = Vec::new();
    for (doc, path) in docs.iter().zip(factors) {
        let pres = match doc.group() {
            Some(g) => search_presentation(g),
            None => doc.presentation(),
        }
        .context(|| path.display().to_string())?;
        let s = find_simple_module(&pres, p, dmax).context(|| format!("module search for {}", pres.name()))?;
        searches.push(json!({"factor": pres.name(), "dimensions": module_reports(&s.reports)}));
        match s.found {
            Some(md) => modules.push(md),
            None => {
                return Err(CliError::Core {
                    context: format!("module search for {}", pres.name()),
                    source: Error::NotFound(format!(
                        "no nontrivial simple module over F_{p} up to dimension {dmax}"
                    )),
                })
            }
        }
        sources.push(pres);
    }
    let probe = theorem1_target(&modules, 1).context(|| "construct-thm1".into())?;
    let m = m.unwrap_or_else(|| min_m_for_conclusion(modules.len() as u64, p as u64, probe.l as u64, probe.r));
    let target = if m == 1 {
        probe
    } else {
        theorem1_target(&modules, m as usize).context(|| "construct-thm1".into())?
    };
    let named: Vec<(String, u64)> = sources
        .iter()
        .map(|s| (s.name().to_string(), s.num_generators() as u64))
        .collect();
    let mut cert = target.certificate(&named).context(|| "construct-thm1".into())?;
    stamp_certificate(&mut cert, repro);
    let floor = target.params().module_order();
    let mut recounts = Vec::new();
    let mut failed = false;
    if target.order() <= RECOUNT_LIMIT.into() {
        for s in &sources {
            let c = hombound::count_homs(s, &target.group).context(|| format!("recount {}", s.name()))?;
            failed |= c.count < floor;
            recounts.push(json!({"factor": s.name(), "count": c.count.to_string(), "floor": floor.to_string()}));
        }
    }
    let mut summary = vec![format!(
        "p = {p}, l = {}, m = {}, r = {}, target order {}",
        target.l,
        target.m,
        target.r,
        target.order()
    )];
    summary.extend(cert_summary(&cert));
    if failed {
        summary.push("an explicit count fell below p^(lm)".into());
    }
    Ok(Report {
        value: json!({"certificate": cert_value(&cert), "modules": searches, "explicit_counts": recounts}),
        summary,
        failed,
    })
}

fn verify(certificate: Option<&Path>) -> Result<Report, CliError> {
    match certificate {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let inner = value.get("certificate").cloned().unwrap_or(value);
            let cert: BoundCertificate = serde_json::from_value(inner)
                .map_err(|e| CliError::Usage(format!("{}: not a certificate: {e}", path.display())))?;
            let outcome = verify_certificate(&cert);
            let ok = outcome.is_ok();
            let detail = outcome.err().map(|e| e.to_string());
            Ok(Report {
                summary: vec![match &detail {
                    None => format!("certificate valid: conclusion {}", cert.conclusion),
                    Some(d) => format!("certificate INVALID: {d}"),
                }],
                value: json!({"path": path.display().to_string(), "valid": ok, "error": detail}),
                failed: !ok,
            })
        }
        None => {
            let checks = run_invariant_suites().context(|| "invariant suites".into())?;
            let failed = checks.iter().any(|c| !c.passed);
            Ok(Report {
                summary: checks
                    .iter()
                    .map(|c| format!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.suite, c.detail))
                    .collect(),
                value: json!({"suites": checks, "passed": !failed}),
                failed,
            })
        }
    }
}
