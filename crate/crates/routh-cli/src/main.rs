//! `routh` — exact Routh-type simplex volumes from the command line.
//!
//! Subcommands compute central and first-kind volumes, intersection volumes
//! of cutter subsets, coordinate-oracle cross-checks, identity suites at
//! seeded random points, and equal-ratio tables. All values are exact
//! rationals rendered as canonical `p/q` strings; output on stdout is
//! byte-deterministic for a fixed invocation.
//!
//! Exit codes: 0 success, 1 invalid input, 2 when a cross-check or identity
//! row fails (a defect signal, since every identity is exact).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use routh_core::{
    central_vertices, central_volume, check_e2, check_first_kind_n4, check_first_kind_n5,
    check_ie_n4, cyclic_blocks, equal_ratio_volume, first_kind_volume, inclusion_exclusion_volume,
    oracle_central_volume, oracle_first_kind_volume, oracle_subset_volume, subset_volume,
    volume_ratio, CycleRatios, ExactRational, IdentityCheckResult, ProductRegime, RatioSampler,
    SimplexVertices, VolumeKind, VolumeMethod, VolumeReport, DEFAULT_E2_MAX_N,
};
use serde::Serialize;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "routh", version, about = "Exact Routh-type simplex volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct RatioArgs {
    /// Cycle length n (the simplex has n vertices)
    #[arg(long)]
    n: usize,
    /// Comma-separated exact ratios, e.g. `2/1,3,5/2`; length must equal n
    #[arg(long, conflicts_with = "k")]
    ratios: Option<String>,
    /// Equal-ratio shorthand: every ratio set to this exact value
    #[arg(long)]
    k: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of the central simplex enclosed by the cutting hyperplanes
    Volume {
        #[command(flatten)]
        ratios: RatioArgs,
        /// closed: closed form (with cycle reversal below product 1);
        /// ie: alternating sum over all cutter subsets
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Largest n accepted by the 2^n subset enumeration
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Volume of the simplex spanned by the edge points
    FirstKind {
        #[command(flatten)]
        ratios: RatioArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Volume of the intersection of the chosen cut pieces, with its block
    /// decomposition and a coordinate-oracle cross-check
    Subset {
        #[command(flatten)]
        ratios: RatioArgs,
        /// Comma-separated 1-based indices of a proper nonempty subset
        #[arg(long)]
        subset: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cross-check the closed-form and first-kind volumes against the
    /// coordinate oracle
    Oracle {
        #[command(flatten)]
        ratios: RatioArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate an identity at seeded random rational points, one row each
    Identity {
        /// ie_n4 | e2 | first_kind_n4 | first_kind_n5
        #[arg(long)]
        id: IdentityChoice,
        /// Cycle length; required for e2, fixed for the others
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled numerators and denominators range over 1..=bound
        #[arg(long, default_value_t = 9)]
        bound: u64,
        /// Largest n accepted by the e2 identity
        #[arg(long, default_value_t = DEFAULT_E2_MAX_N)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Equal-ratio volume law over a range of cycle lengths
    Table {
        /// central | first-kind
        #[arg(long, value_enum)]
        kind: TableKind,
        /// Single length (`5`) or inclusive range (`3..8`)
        #[arg(long)]
        n: String,
        /// The common ratio, e.g. `2` or `5/2`
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Ie,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityChoice {
    #[value(name = "ie_n4", alias = "ie-n4")]
    IeN4,
    E2,
    #[value(name = "first_kind_n4", alias = "first-kind-n4")]
    FirstKindN4,
    #[value(name = "first_kind_n5", alias = "first-kind-n5")]
    FirstKindN5,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Central,
    FirstKind,
}

#[derive(Serialize)]
struct SubsetReport {
    n: usize,
    x: CycleRatios,
    subset: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    value: ExactRational,
    oracle: ExactRational,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct OracleReport {
    n: usize,
    x: CycleRatios,
    closed_form: ExactRational,
    oracle: ExactRational,
    #[serde(rename = "match")]
    matches: bool,
    first_kind: ExactRational,
    first_kind_oracle: ExactRational,
    first_kind_match: bool,
}

#[derive(Serialize)]
struct TableRow {
    kind: &'static str,
    n: usize,
    k: ExactRational,
    value: ExactRational,
}

/// Outcome of a command: the rendered report plus whether every exact
/// cross-check in it held.
struct Outcome {
    stdout: String,
    all_checks_hold: bool,
}

/// 0 on success, 1 on invalid input, 2 when a report contains a failed
/// cross-check or identity row.
fn exit_code(outcome: &Result<Outcome, String>) -> u8 {
    match outcome {
        Ok(o) if o.all_checks_hold => 0,
        Ok(_) => 2,
        Err(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let outcome = run(cli.command);
    let code = exit_code(&outcome);
    match outcome {
        Ok(o) => {
            print!("{}", o.stdout);
            if code == 2 {
                eprintln!("error: an exact cross-check failed; this signals a defect");
            }
        }
        Err(message) => eprintln!("error: {message}"),
    }
    ExitCode::from(code)
}

fn parse_rational(text: &str) -> Result<ExactRational, String> {
    let value =
        ExactRational::from_str(text.trim()).map_err(|e| format!("bad rational {text:?}: {e}"))?;
    Ok(value)
}

fn parse_cycle(args: &RatioArgs) -> Result<CycleRatios, String> {
    if args.n > 63 {
        return Err(format!("n must be at most 63, got {}", args.n));
    }
    let ratios = match (&args.ratios, &args.k) {
        (Some(list), None) => {
            let parsed: Result<Vec<_>, _> = list.split(',').map(parse_rational).collect();
            let parsed = parsed?;
            if parsed.len() != args.n {
                return Err(format!(
                    "expected {} ratios, got {}",
                    args.n,
                    parsed.len()
                ));
            }
            parsed
        }
        (None, Some(k)) => vec![parse_rational(k)?; args.n],
        (None, None) => return Err("one of --ratios or --k is required".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects --ratios with --k"),
    };
    CycleRatios::new(ratios).map_err(|e| e.to_string())
}

fn parse_subset(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad subset element {part:?}"))
        })
        .collect()
}

fn parse_n_range(text: &str) -> Result<(usize, usize), String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start {lo:?}"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end {hi:?}"))?;
        if lo > hi {
            return Err(format!("empty range {text:?}"));
        }
        Ok((lo, hi))
    } else {
        let n: usize = text.trim().parse().map_err(|_| format!("bad length {text:?}"))?;
        Ok((n, n))
    }
}

/// One CSV line; the ratio vector is joined with `;` inside a single cell.
fn csv_join(cells: &[String]) -> String {
    cells.join(",")
}

fn volume_report_output(report: &VolumeReport, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(report).expect("report serializes")
        ),
        Format::Csv => {
            let method = match report.method {
                VolumeMethod::ClosedForm => "closed_form",
                VolumeMethod::InclusionExclusion => "inclusion_exclusion",
                VolumeMethod::Oracle => "oracle",
                VolumeMethod::FirstKind => "first_kind",
            };
            let regime = match report.product_regime {
                ProductRegime::Gt1 => "gt1",
                ProductRegime::Eq1 => "eq1",
                ProductRegime::Lt1 => "lt1",
            };
            format!(
                "method,value,n,x,product_regime\n{}\n",
                csv_join(&[
                    method.to_string(),
                    report.value.to_string(),
                    report.n.to_string(),
                    report.x.to_strings().join(";"),
                    regime.to_string(),
                ])
            )
        }
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Volume {
            ratios,
            method,
            max_n,
            format,
        } => {
            let x = parse_cycle(&ratios)?;
            let report = match method {
                Method::Closed => central_volume(&x),
                Method::Ie => {
                    if x.n() > max_n {
                        return Err(format!(
                            "subset enumeration is bounded at n = {max_n} (see --max-n); got n = {}",
                            x.n()
                        ));
                    }
                    let value = inclusion_exclusion_volume(&x).map_err(|e| e.to_string())?;
                    VolumeReport {
                        method: VolumeMethod::InclusionExclusion,
                        value,
                        n: x.n(),
                        x: x.clone(),
                        product_regime: ProductRegime::of(&x),
                    }
                }
            };
            Ok(Outcome {
                stdout: volume_report_output(&report, format),
                all_checks_hold: true,
            })
        }

        Command::FirstKind { ratios, format } => {
            let x = parse_cycle(&ratios)?;
            let report = VolumeReport {
                method: VolumeMethod::FirstKind,
                value: first_kind_volume(&x),
                n: x.n(),
                x: x.clone(),
                product_regime: ProductRegime::of(&x),
            };
            Ok(Outcome {
                stdout: volume_report_output(&report, format),
                all_checks_hold: true,
            })
        }

        Command::Subset {
            ratios,
            subset,
            format,
        } => {
            let x = parse_cycle(&ratios)?;
            let elements = parse_subset(&subset)?;
            let n = x.n();
            let decomposition = cyclic_blocks(n, &elements).map_err(|e| e.to_string())?;
            let value = subset_volume(&x, &elements).map_err(|e| e.to_string())?;
            let oracle = oracle_subset_volume(&x, &elements).map_err(|e| e.to_string())?;
            let mut elements_sorted = elements.clone();
            elements_sorted.sort_unstable();
            elements_sorted.dedup();
            let report = SubsetReport {
                n,
                x,
                subset: elements_sorted,
                blocks: decomposition
                    .blocks()
                    .iter()
                    .map(|b| b.members(n).collect())
                    .collect(),
                matches: value == oracle,
                value,
                oracle,
            };
            let stdout = match format {
                Format::Json => format!("{}\n", serde_json::to_string(&report).unwrap()),
                Format::Csv => format!(
                    "n,x,subset,blocks,value,oracle,match\n{}\n",
                    csv_join(&[
                        report.n.to_string(),
                        report.x.to_strings().join(";"),
                        report
                            .subset
                            .iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join(";"),
                        report
                            .blocks
                            .iter()
                            .map(|b| {
                                b.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
                            })
                            .collect::<Vec<_>>()
                            .join(";"),
                        report.value.to_string(),
                        report.oracle.to_string(),
                        report.matches.to_string(),
                    ])
                ),
            };
            Ok(Outcome {
                stdout,
                all_checks_hold: report.matches,
            })
        }

        Command::Oracle { ratios, format } => {
            let x = parse_cycle(&ratios)?;
            let closed_form = central_volume(&x).value;
            let oracle = match ProductRegime::of(&x) {
                ProductRegime::Gt1 => oracle_central_volume(&x).map_err(|e| e.to_string())?,
                // the hyperplanes meet in a point; measure the (degenerate)
                // corner simplex directly
                ProductRegime::Eq1 => {
                    let corners = central_vertices(&x).map_err(|e| e.to_string())?;
                    volume_ratio(&SimplexVertices::new(corners).map_err(|e| e.to_string())?)
                }
                // measure the reversed cycle, which has the same volume
                ProductRegime::Lt1 => oracle_central_volume(&x.reversed_reciprocal())
                    .map_err(|e| e.to_string())?,
            };
            let first_kind = first_kind_volume(&x);
            let first_kind_oracle = oracle_first_kind_volume(&x);
            let report = OracleReport {
                n: x.n(),
                x,
                matches: closed_form == oracle,
                closed_form,
                oracle,
                first_kind_match: first_kind == first_kind_oracle,
                first_kind,
                first_kind_oracle,
            };
            let stdout = match format {
                Format::Json => format!("{}\n", serde_json::to_string(&report).unwrap()),
                Format::Csv => format!(
                    "n,x,closed_form,oracle,match,first_kind,first_kind_oracle,first_kind_match\n{}\n",
                    csv_join(&[
                        report.n.to_string(),
                        report.x.to_strings().join(";"),
                        report.closed_form.to_string(),
                        report.oracle.to_string(),
                        report.matches.to_string(),
                        report.first_kind.to_string(),
                        report.first_kind_oracle.to_string(),
                        report.first_kind_match.to_string(),
                    ])
                ),
            };
            Ok(Outcome {
                all_checks_hold: report.matches && report.first_kind_match,
                stdout,
            })
        }

        Command::Identity {
            id,
            n,
            samples,
            seed,
            bound,
            max_n,
            format,
        } => {
            let n = match (id, n) {
                (IdentityChoice::E2, Some(n)) => n,
                (IdentityChoice::E2, None) => {
                    return Err("--n is required for the e2 identity".into())
                }
                (IdentityChoice::IeN4 | IdentityChoice::FirstKindN4, n) => match n {
                    Some(4) | None => 4,
                    Some(other) => {
                        return Err(format!("this identity is fixed at n = 4, got {other}"))
                    }
                },
                (IdentityChoice::FirstKindN5, n) => match n {
                    Some(5) | None => 5,
                    Some(other) => {
                        return Err(format!("this identity is fixed at n = 5, got {other}"))
                    }
                },
            };
            let mut sampler = RatioSampler::new(seed, bound).map_err(|e| e.to_string())?;
            let mut rows: Vec<IdentityCheckResult> = Vec::with_capacity(samples);
            for _ in 0..samples {
                let x = sampler.next_ratios(n).map_err(|e| e.to_string())?;
                let row = match id {
                    IdentityChoice::IeN4 => check_ie_n4(&x),
                    IdentityChoice::E2 => check_e2(&x, max_n),
                    IdentityChoice::FirstKindN4 => check_first_kind_n4(&x),
                    IdentityChoice::FirstKindN5 => check_first_kind_n5(&x),
                }
                .map_err(|e| e.to_string())?;
                rows.push(row);
            }
            let all_hold = rows.iter().all(|row| row.holds);
            let stdout = match format {
                Format::Json => {
                    let mut out = String::new();
                    for row in &rows {
                        out.push_str(&serde_json::to_string(row).unwrap());
                        out.push('\n');
                    }
                    out
                }
                Format::Csv => {
                    let mut out = String::from("identity_id,n,x,lhs,rhs,holds\n");
                    for row in &rows {
                        let id_text = serde_json::to_value(row.identity_id)
                            .unwrap()
                            .as_str()
                            .unwrap()
                            .to_owned();
                        out.push_str(&csv_join(&[
                            id_text,
                            row.n.to_string(),
                            row.x.to_strings().join(";"),
                            row.lhs.to_string(),
                            row.rhs.to_string(),
                            row.holds.to_string(),
                        ]));
                        out.push('\n');
                    }
                    out
                }
            };
            Ok(Outcome {
                stdout,
                all_checks_hold: all_hold,
            })
        }

        Command::Table { kind, n, k, format } => {
            let (lo, hi) = parse_n_range(&n)?;
            if lo < 3 {
                return Err(format!("cycle length must be at least 3, got {lo}"));
            }
            if hi > 63 {
                return Err(format!("cycle length must be at most 63, got {hi}"));
            }
            let k = parse_rational(&k)?;
            let (kind_name, volume_kind) = match kind {
                TableKind::Central => ("central", VolumeKind::Central),
                TableKind::FirstKind => ("first_kind", VolumeKind::FirstKind),
            };
            let rows: Result<Vec<TableRow>, String> = (lo..=hi)
                .map(|n| {
                    Ok(TableRow {
                        kind: kind_name,
                        n,
                        k: k.clone(),
                        value: equal_ratio_volume(n, &k, volume_kind)
                            .map_err(|e| e.to_string())?,
                    })
                })
                .collect();
            let rows = rows?;
            let stdout = match format {
                Format::Json => format!("{}\n", serde_json::to_string(&rows).unwrap()),
                Format::Csv => {
                    let mut out = String::from("kind,n,k,value\n");
                    for row in &rows {
                        out.push_str(&csv_join(&[
                            row.kind.to_string(),
                            row.n.to_string(),
                            row.k.to_string(),
                            row.value.to_string(),
                        ]));
                        out.push('\n');
                    }
                    out
                }
            };
            Ok(Outcome {
                stdout,
                all_checks_hold: true,
            })
        }
    }
}
