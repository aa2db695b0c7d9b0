//! Command-line front end. Every subcommand prints one JSON document on
//! stdout: compact single-line by default, indented with --pretty. Exit
//! codes: 0 success (or all checks passing), 1 a verification command found
//! a failing check, 2 malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use thetacover::charsum::LocalFieldSpec;
use thetacover::error::Result;
use thetacover::matgroup::{catalog, transport};
use thetacover::partitions::{
    dimension_equation_check, dominance_compare, gk_dimension, sp_collapse, Partition,
};
use thetacover::rat::{parse_rat, rat_string, Rat};
use thetacover::suites;
use thetacover::whittaker::{
    beta_crosscheck, beta_exponent, descent_summary, exponent_pipeline, special_value_rhs,
    SpecialValueOptions,
};

#[derive(Parser)]
#[command(
    name = "thetacover",
    version,
    about = "Exact-arithmetic workbench: orbit combinatorics, symplectic identities, character sums"
)]
struct Cli {
    /// Indent the JSON output for reading
    #[arg(long, global = true)]
    pretty: bool,
    /// Compact single-line JSON (the default; kept as an explicit switch)
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BuildKind {
    Element,
    Family,
}

#[derive(Subcommand)]
enum Command {
    /// Symplectic collapse of a partition, e.g. `collapse 7,1`
    Collapse {
        /// Comma-separated parts
        parts: String,
    },
    /// Dominance comparison of two partitions of the same total
    Dominance {
        a: String,
        b: String,
    },
    /// Predicted wavefront partition of the degree-r theta representation
    Orbit {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Half the dimension of the nilpotent orbit attached to a partition
    GkDim {
        parts: String,
        #[arg(long)]
        n: u64,
    },
    /// Orbit prediction plus the dimension-equation report
    DimCheck {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Construct a cataloged element or family by name and print it
    Build {
        kind: BuildKind,
        /// Catalog name, e.g. block-swap, pair-interleave, siegel, corner
        name: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated parameters; rationals for elements, indices for families
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Verify cataloged conjugation identities (all, or one by --id)
    Identity {
        /// Step id, e.g. "block-swap(3,3,1)"; omit to verify the whole catalog
        #[arg(long)]
        id: Option<String>,
        /// List available step ids instead of verifying
        #[arg(long)]
        list: bool,
    },
    /// Character sum over units twisted by the t-th power of the order-n character
    Gauss {
        #[arg(long)]
        p: u64,
        /// Order of the multiplicative character
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        t: i64,
    },
    /// Unit-group integral at conductor exponent m (exact zero for m >= 2)
    UnitIntegral {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        t: i64,
    },
    /// Tame Hilbert symbol of p^v1 u1 and p^v2 u2 as a root-of-unity exponent
    Hilbert {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        v1: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        u1: i64,
        #[arg(long, default_value_t = 0)]
        v2: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        u2: i64,
    },
    /// Boundary exponent of the descent integral; full table when --a is omitted
    Beta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        a: Option<usize>,
    },
    /// Exponent assembly for the two-term special value at odd rank n
    Pipeline {
        #[arg(long)]
        n: usize,
    },
    /// Right-hand side of the special-value identity at torus depth (n1, n2)
    Theorem2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        /// Attach the exact order-n character sum to the second term
        #[arg(long)]
        with_gauss_factor: bool,
        /// Residue characteristic for the character sum (default: smallest p = 1 mod n)
        #[arg(long)]
        witness_prime: Option<u64>,
    },
    /// Run verification suites; exit 1 if any check fails
    Verify {
        /// identities | exponents | orbits | charsums; omit for all
        #[arg(long)]
        suite: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match execute(cli.command, cli.pretty) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    });
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|e| thetacover::Error::InvalidParameter(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn execute(cmd: Command, pretty: bool) -> Result<i32> {
    match cmd {
        Command::Collapse { parts } => {
            let input: Partition = parts.parse()?;
            let collapse = sp_collapse(&input)?;
            emit(&json!({ "input": input, "collapse": collapse }), pretty)?;
            Ok(0)
        }
        Command::Dominance { a, b } => {
            let pa: Partition = a.parse()?;
            let pb: Partition = b.parse()?;
            let rel = dominance_compare(&pa, &pb)?;
            emit(&json!({ "a": pa, "b": pb, "relation": rel }), pretty)?;
            Ok(0)
        }
        Command::Orbit { n, r } => {
            let orbit = thetacover::partitions::conjectured_orbit(n, r)?;
            emit(&json!({ "n": n, "r": r, "orbit": orbit }), pretty)?;
            Ok(0)
        }
        Command::GkDim { parts, n } => {
            let p: Partition = parts.parse()?;
            let gk = gk_dimension(&p, n)?;
            emit(&json!({ "partition": p, "n": n, "gk_dim": rat_string(&gk) }), pretty)?;
            Ok(0)
        }
        Command::DimCheck { n, r } => {
            emit(&dimension_equation_check(n, r)?, pretty)?;
            Ok(0)
        }
        Command::Build { kind, name, n, params } => {
            match kind {
                BuildKind::Element => {
                    let vals: Vec<Rat> = params
                        .iter()
                        .map(|s| {
                            parse_rat(s).ok_or_else(|| {
                                thetacover::Error::InvalidParameter(format!(
                                    "element parameters must be rationals p or p/q, got {s:?}"
                                ))
                            })
                        })
                        .collect::<Result<_>>()?;
                    let g = catalog::build_named_element(&name, n, &vals)?;
                    emit(
                        &json!({
                            "name": name,
                            "half_rank": g.half_rank(),
                            "rows": g.matrix().row_strings(),
                        }),
                        pretty,
                    )?;
                }
                BuildKind::Family => {
                    let vals: Vec<usize> = params
                        .iter()
                        .map(|s| {
                            s.trim().parse::<usize>().map_err(|_| {
                                thetacover::Error::InvalidParameter(format!(
                                    "family parameters must be nonnegative integers, got {s:?}"
                                ))
                            })
                        })
                        .collect::<Result<_>>()?;
                    let fam = catalog::build_named_family(&name, n, &vals)?;
                    emit(&fam, pretty)?;
                }
            }
            Ok(0)
        }
        Command::Identity { id, list } => {
            if list {
                emit(&transport::builtin_step_ids(), pretty)?;
                return Ok(0);
            }
            match id {
                Some(id) => {
                    let report = transport::verify_integral_transport(&transport::builtin_step(&id)?)?;
                    let ok = report.ok;
                    emit(&report, pretty)?;
                    Ok(if ok { 0 } else { 1 })
                }
                None => {
                    let mut reports = Vec::new();
                    for step in transport::builtin_steps()? {
                        reports.push(transport::verify_integral_transport(&step)?);
                    }
                    let all_ok = reports.iter().all(|r| r.ok);
                    emit(&reports, pretty)?;
                    Ok(if all_ok { 0 } else { 1 })
                }
            }
        }
        Command::Gauss { p, n, t } => {
            let field = LocalFieldSpec::new(p, n)?;
            let g = field.gauss_sum(t)?;
            emit(&json!({ "p": p, "order": n, "t": t, "sum": g }), pretty)?;
            Ok(0)
        }
        Command::UnitIntegral { p, n, m, t } => {
            let field = LocalFieldSpec::new(p, n)?;
            let v = field.unit_integral(m, t)?;
            let zero = v.is_zero();
            emit(
                &json!({ "p": p, "order": n, "m": m, "t": t, "integral": v, "is_zero": zero }),
                pretty,
            )?;
            Ok(0)
        }
        Command::Hilbert { p, n, v1, u1, v2, u2 } => {
            let field = LocalFieldSpec::new(p, n)?;
            let e = field.tame_hilbert(v1, u1, v2, u2)?;
            emit(
                &json!({ "p": p, "order": n, "exponent": e }),
                pretty,
            )?;
            Ok(0)
        }
        Command::Beta { n, r, a } => {
            match a {
                Some(a) => {
                    let beta = beta_exponent(n, r, a)?;
                    let cross = beta_crosscheck(n, r, a)?;
                    let matches = beta == cross;
                    emit(
                        &json!({
                            "n": n, "r": r, "a": a,
                            "beta": rat_string(&beta),
                            "crosscheck": rat_string(&cross),
                            "matches": matches,
                        }),
                        pretty,
                    )?;
                }
                None => emit(&descent_summary(n, r)?, pretty)?,
            }
            Ok(0)
        }
        Command::Pipeline { n } => {
            emit(&exponent_pipeline(n)?, pretty)?;
            Ok(0)
        }
        Command::Theorem2 { n, n1, n2, with_gauss_factor, witness_prime } => {
            let opts = SpecialValueOptions { with_gauss_factor, witness_prime };
            emit(&special_value_rhs(n, n1, n2, &opts)?, pretty)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let results = match suite {
                Some(name) => vec![suites::run_suite(&name)?],
                None => suites::run_all(),
            };
            let all_ok = results.iter().all(|s| s.all_passed());
            emit(&results, pretty)?;
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}
