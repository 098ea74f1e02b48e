//! `quillen` — analyze p-subgroup posets of concrete finite groups and run
//! certified lemma verifications.
//!
//! Exit codes: 0 clean, 1 usage error, 2 computation error, 3 violation
//! found (a group with trivial p-core and vanishing integral homology).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use quillen_core::chains::{shuffle_product, CpContext, FormalChain};
use quillen_core::corpus::{self, resolve_group};
use quillen_core::group::{Group, Subgroup};
use quillen_core::homology::{homology, OrderComplex, Ring};
use quillen_core::local::{components, o_p_prime, omega1, sylow};
use quillen_core::poset::{inflation_maps, link_maps, neighborhood, quillen_poset};
use quillen_core::reduction::{
    central_quotient_check, product_factors, propagation_check,
    propagation_instance_for_product, retract_reduction, strongly_p_embedded, theorem1_pipeline,
    Verdict,
};
use quillen_core::report::{
    analyze, export_poset, homology_summary, records_to_csv, run_suite, Check, QcVerdict,
};
use quillen_core::{Caps, Error};

#[derive(Parser)]
#[command(name = "quillen", version, about)]
struct Cli {
    /// Optional JSON config with caps: {"element_cap":…, "poset_cap":…,
    /// "coeff_box":…}
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one (group, prime) pair and print the record as JSON.
    Analyze(AnalyzeArgs),
    /// Run a certified verification on a group.
    Verify(VerifyArgs),
    /// Batch-analyze the built-in corpus.
    Corpus(CorpusArgs),
    /// Worked examples printed step by step.
    Demo(DemoArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// `builtin:<name>` or a path to a group JSON file.
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u64,
    #[arg(long, value_enum, default_value = "z")]
    ring: RingArg,
    /// Write the elementary abelian poset (nodes + covers) as JSON.
    #[arg(long)]
    dump_poset: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Z,
    Q,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    kind: VerifyKind,
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: u64,
    /// Subgroup selector: op-prime | omega1 | sylow | layer | fitting |
    /// center | a path to a group JSON file whose generators lie in G.
    #[arg(long)]
    subgroup: Option<String>,
    /// Second factor for product-based verifications (join, shuffle,
    /// propagation).
    #[arg(long)]
    group2: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Inflation,
    Link,
    Retract,
    Join,
    CentralQuotient,
    Shuffle,
    Propagation,
    Theorem1,
    Embedded,
}

#[derive(Args)]
struct CorpusArgs {
    #[command(subcommand)]
    action: CorpusAction,
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Analyze every corpus group of order ≤ max-order at the given primes.
    Run {
        #[arg(long, default_value_t = 600)]
        max_order: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5])]
        primes: Vec<u64>,
        /// Output path ending in .json or .csv (stdout JSON otherwise).
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct DemoArgs {
    #[command(subcommand)]
    which: DemoKind,
}

#[derive(Subcommand)]
enum DemoKind {
    /// Print the shuffle product of two flag chains of elementary abelian
    /// groups, term by term.
    Shuffle {
        /// Degree of the left chain (length m+1).
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Degree of the right chain (length n+1).
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        prime: usize,
    },
}

#[derive(Deserialize)]
struct CapsFile {
    element_cap: Option<usize>,
    poset_cap: Option<usize>,
    coeff_box: Option<i64>,
}

fn load_caps(path: Option<&str>) -> anyhow::Result<Caps> {
    let mut caps = Caps::default();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)?;
        let file: CapsFile = serde_json::from_str(&text)?;
        if let Some(v) = file.element_cap {
            caps.element_cap = v;
        }
        if let Some(v) = file.poset_cap {
            caps.poset_cap = v;
        }
        if let Some(v) = file.coeff_box {
            caps.coeff_box = v;
        }
    }
    Ok(caps)
}

fn resolve_subgroup(g: &Group, p: u64, spec: Option<&str>, caps: &Caps) -> anyhow::Result<Subgroup> {
    let top = g.top();
    let spec = spec.unwrap_or("op-prime");
    Ok(match spec {
        "op-prime" => o_p_prime(&top, p)?,
        "omega1" => omega1(&top, p),
        "sylow" => sylow(&top, p)?,
        "center" => quillen_core::group::center(&top),
        "layer" => components(&top, caps.element_cap)?.layer,
        "fitting" => components(&top, caps.element_cap)?.fitting,
        path => {
            let sub = resolve_group(path, caps.element_cap)?;
            Subgroup::generated_from_perms(g, sub.generators())?
        }
    })
}

fn print_report(report: &quillen_core::reduction::ReductionReport) -> anyhow::Result<Verdict> {
    println!("{}", serde_json::to_string_pretty(report)?);
    Ok(report.verdict)
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage problems exit 1; --help/--version print and exit 0
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return Ok(ExitCode::from(code));
        }
    };
    let caps = load_caps(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze(args) => {
            let g = resolve_group(&args.group, caps.element_cap)?;
            let record = analyze(&g, args.prime, &[Check::Embedded, Check::TopHomology], &caps)?;
            if let Some(path) = args.dump_poset {
                let poset = quillen_poset(&g.top(), args.prime, caps.poset_cap)?;
                std::fs::write(&path, serde_json::to_string_pretty(&export_poset(&poset))?)?;
            }
            println!("{}", serde_json::to_string_pretty(&record)?);
            let (ring_name, degrees) = match args.ring {
                RingArg::Z => ("Z", &record.homology_z),
                RingArg::Q => ("Q", &record.homology_q),
            };
            let summary = homology_summary(&quillen_core::homology::HomologyResult {
                ring: match args.ring {
                    RingArg::Z => Ring::Integer,
                    RingArg::Q => Ring::Rational,
                },
                degrees: degrees.clone(),
            });
            eprintln!(
                "{} at p = {} over {ring_name}: {}",
                record.group,
                record.prime,
                if summary.is_empty() { "acyclic".to_string() } else { summary }
            );
            if record.qc_verdict == QcVerdict::Violation {
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let g = resolve_group(&args.group, caps.element_cap)?;
            let p = args.prime;
            let verdict = match args.kind {
                VerifyKind::Retract => {
                    let h = resolve_subgroup(&g, p, args.subgroup.as_deref(), &caps)?;
                    print_report(&retract_reduction(&g.top(), p, &h, &caps)?)?
                }
                VerifyKind::Theorem1 => print_report(&theorem1_pipeline(&g, p, &caps)?)?,
                VerifyKind::Embedded => {
                    let rep = strongly_p_embedded(&g, p, &caps)?;
                    println!("{}", serde_json::to_string_pretty(&rep)?);
                    Verdict::Verified
                }
                VerifyKind::CentralQuotient => {
                    let z = match args.subgroup.as_deref() {
                        None => {
                            // largest central p'-subgroup
                            let center = quillen_core::group::center(&g.top());
                            o_p_prime(&center, p)?
                        }
                        Some(spec) => resolve_subgroup(&g, p, Some(spec), &caps)?,
                    };
                    print_report(&central_quotient_check(&g, &z, p, &caps)?)?
                }
                VerifyKind::Inflation => {
                    let h = resolve_subgroup(&g, p, args.subgroup.as_deref(), &caps)?;
                    let top = g.top();
                    let (_inc, _ret) = inflation_maps(&top, p, &h, caps.poset_cap)?;
                    let nh = neighborhood(&top, p, &h, caps.poset_cap)?;
                    let ah = quillen_poset(&h, p, caps.poset_cap)?;
                    let h_n = homology(&OrderComplex::new(&nh, caps.poset_cap)?, Ring::Integer);
                    let h_a = homology(&OrderComplex::new(&ah, caps.poset_cap)?, Ring::Integer);
                    if !h_n.same_homology(&h_a) {
                        return Err(Error::Internal("inflation homology mismatch".into()).into());
                    }
                    println!(
                        "inflation verified: N(H) on {} nodes and the H-poset on {} nodes share homology [{}]",
                        nh.len(),
                        ah.len(),
                        homology_summary(&h_a)
                    );
                    Verdict::Verified
                }
                VerifyKind::Link => {
                    let h = resolve_subgroup(&g, p, args.subgroup.as_deref(), &caps)?;
                    let top = g.top();
                    let ap = quillen_poset(&top, p, caps.poset_cap)?;
                    let mut checked = 0usize;
                    for i in 0..ap.len() {
                        let e = ap.subgroup_at(i)?.clone();
                        if e.intersection(&h).order() > 1 {
                            continue;
                        }
                        let (f, _gmap) = link_maps(&top, p, &h, &e, caps.poset_cap)?;
                        let h_up =
                            homology(&OrderComplex::new(&f.target, caps.poset_cap)?, Ring::Integer);
                        let h_c =
                            homology(&OrderComplex::new(&f.source, caps.poset_cap)?, Ring::Integer);
                        if !h_up.same_homology(&h_c) {
                            return Err(Error::Internal("link homology mismatch".into()).into());
                        }
                        checked += 1;
                    }
                    println!("link lemma verified on {checked} subgroups meeting H trivially");
                    Verdict::Verified
                }
                VerifyKind::Join => {
                    let g2spec = args
                        .group2
                        .ok_or_else(|| anyhow::anyhow!("--group2 required for join"))?;
                    let g2 = resolve_group(&g2spec, caps.element_cap)?;
                    let prod = Group::direct_product(&g, &g2, caps.element_cap)?;
                    let hp = homology(
                        &OrderComplex::new(
                            &quillen_poset(&prod.top(), p, caps.poset_cap)?,
                            caps.poset_cap,
                        )?,
                        Ring::Rational,
                    );
                    let h1 = homology(
                        &OrderComplex::new(
                            &quillen_poset(&g.top(), p, caps.poset_cap)?,
                            caps.poset_cap,
                        )?,
                        Ring::Rational,
                    );
                    let h2 = homology(
                        &OrderComplex::new(
                            &quillen_poset(&g2.top(), p, caps.poset_cap)?,
                            caps.poset_cap,
                        )?,
                        Ring::Rational,
                    );
                    let max_deg = hp.degrees.last().map_or(-1, |d| d.degree);
                    for d in -1..=max_deg {
                        let mut expected = 0usize;
                        for i in -1..=d {
                            let j = d - 1 - i;
                            expected += h1.betti(i) * h2.betti(j);
                        }
                        if hp.betti(d) != expected {
                            return Err(Error::Internal(format!(
                                "join formula fails in degree {d}: {} vs {expected}",
                                hp.betti(d)
                            ))
                            .into());
                        }
                    }
                    println!(
                        "join verified: rational Betti numbers of the product poset match the join formula [{}]",
                        homology_summary(&hp)
                    );
                    Verdict::Verified
                }
                VerifyKind::Shuffle | VerifyKind::Propagation => {
                    let g2spec = args
                        .group2
                        .ok_or_else(|| anyhow::anyhow!("--group2 required"))?;
                    let g2 = resolve_group(&g2spec, caps.element_cap)?;
                    let prod = Group::direct_product(&g, &g2, caps.element_cap)?;
                    let (h, k) = product_factors(&prod, &g, &g2)?;
                    let inst = propagation_instance_for_product(&prod, p, &h, &k, &caps)?;
                    if matches!(args.kind, VerifyKind::Shuffle) {
                        let ctx =
                            CpContext::new(prod.top(), h.clone(), k.clone(), p)?;
                        let gamma = shuffle_product(&inst.x, &inst.alpha, &inst.beta, &ctx)?;
                        if !gamma.is_cycle() {
                            return Err(
                                Error::Internal("shuffle of cycles is not a cycle".into()).into()
                            );
                        }
                        println!(
                            "shuffle verified: product of cycles is a degree-{} cycle on {} simplices",
                            gamma.degree,
                            gamma.support_len()
                        );
                        Verdict::Verified
                    } else {
                        print_report(&propagation_check(&inst, &caps)?)?
                    }
                }
            };
            match verdict {
                Verdict::Verified => Ok(ExitCode::SUCCESS),
                _ => Ok(ExitCode::from(2)),
            }
        }
        Command::Corpus(args) => match args.action {
            CorpusAction::Run {
                max_order,
                primes,
                out,
            } => {
                let corpus = corpus::corpus_default()?;
                let entries = run_suite(
                    &corpus,
                    &primes,
                    max_order,
                    &[Check::Embedded, Check::TopHomology],
                    &caps,
                );
                let violations = entries
                    .iter()
                    .filter(|e| {
                        e.record
                            .as_ref()
                            .is_some_and(|r| r.qc_verdict == QcVerdict::Violation)
                    })
                    .count();
                let errors = entries.iter().filter(|e| e.error.is_some()).count();
                match out.as_deref() {
                    Some(path) if path.ends_with(".csv") => {
                        let records: Vec<_> =
                            entries.iter().filter_map(|e| e.record.clone()).collect();
                        std::fs::write(path, records_to_csv(&records)?)?;
                    }
                    Some(path) => {
                        std::fs::write(path, serde_json::to_string_pretty(&entries)?)?;
                    }
                    None => println!("{}", serde_json::to_string_pretty(&entries)?),
                }
                eprintln!(
                    "{} records, {} violations, {} errors",
                    entries.len(),
                    violations,
                    errors
                );
                if violations > 0 {
                    return Ok(ExitCode::from(3));
                }
                if errors > 0 {
                    return Ok(ExitCode::from(2));
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Demo(args) => match args.which {
            DemoKind::Shuffle { m, n, prime } => {
                demo_shuffle(m, n, prime, &caps)?;
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

/// Builds two elementary abelian blocks, takes the full flag chain in each,
/// and prints every interleaving of the shuffle product with its sign.
fn demo_shuffle(m: usize, n: usize, prime: usize, caps: &Caps) -> anyhow::Result<()> {
    let left = corpus::elementary_abelian(prime, m + 1)?;
    let right = corpus::elementary_abelian(prime, n + 1)?;
    let prod = Group::direct_product(&left, &right, caps.element_cap)?;
    let (h, k) = product_factors(&prod, &left, &right)?;
    let top = prod.top();
    let p = prime as u64;
    let poset = quillen_poset(&top, p, caps.poset_cap)?;
    // full flags: generated by the first i generators of each block
    let flag = |block: &Subgroup, len: usize| -> Vec<usize> {
        let gens = block.gens();
        (1..=len)
            .map(|i| {
                let sub = Subgroup::generated(&prod, &gens[..i]);
                poset
                    .index_of_label(&quillen_core::poset::NodeLabel::Subgroup(sub))
                    .expect("flag subgroup is a node")
            })
            .collect()
    };
    let a = flag(&h, m + 1);
    let b = flag(&k, n + 1);
    println!(
        "left chain a ({} nodes), right chain b ({} nodes), prime {prime}",
        a.len(),
        b.len()
    );
    let ctx = CpContext::new(top, h, k, p)?;
    let one = quillen_core::num_rational::BigRational::from_integer(1.into());
    let alpha = FormalChain::from_term(a.clone(), one.clone());
    let beta = FormalChain::from_term(b.clone(), one);
    let product = shuffle_product(&poset, &alpha, &beta, &ctx)?;
    println!(
        "shuffle product has {} addends (binomial({}, {}))",
        product.support_len(),
        m + n + 2,
        m + 1
    );
    for (simplex, coeff) in product.terms() {
        let orders: Vec<usize> = simplex
            .iter()
            .map(|&i| poset.subgroup_at(i).expect("subgroup node").order())
            .collect();
        println!("  {coeff:>2} · nodes {simplex:?}, subgroup orders {orders:?}");
    }
    let boundary = product.boundary();
    println!(
        "boundary of the product: {} (chains are cycles only in paired sums)",
        if boundary.is_zero() { "zero" } else { "nonzero" }
    );
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            // clap usage errors exit 1 via clap itself; anything else is a
            // computation error
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
