//! `partact` — validate, decompose, globalize, and verify partial actions
//! of finite groups, and resolve their crossed products into blocks.
//!
//! Exit codes: 0 on success or a passing verdict, 1 when the domain
//! verdict is negative (invalid instance, refuted parameter, failed
//! verification), 2 on usage or I/O problems.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use partact::action::PartialAction;
use partact::decomp::{
    check_decomposition, check_enveloping, detect_parameter, equivariant_unit_system, globalize,
    stratify,
};
use partact::group::FiniteGroup;
use partact::instance::parse_instance_unvalidated;
use partact::structure::{crossed_product_structure, partial_group_algebra, StructureReport};
use partact::tuples::Tuple;
use partact::verify::{build_corner, build_expectation, build_psi, freeness_equivalence};

mod report;

use report::{payload, ReportDocument};

#[derive(Parser)]
#[command(name = "partact", version, about = "Structure engine for partial actions of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest allowed group order (tuple enumeration is exponential).
    #[arg(long, global = true, default_value_t = 24)]
    max_group_order: usize,
    /// Seed for the randomized representative-independence checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check the partial-action axioms of an instance file.
    Validate { path: PathBuf },
    /// Resolve a crossed product into matrix blocks over subgroup algebras.
    Structure {
        path: Option<PathBuf>,
        /// Compute the partial group algebra of a group instead
        /// (e.g. `family:cyclic:4`).
        #[arg(long, value_name = "GROUPSPEC", conflicts_with = "path")]
        par_group: Option<String>,
    },
    /// Decomposition certificate, or the stratification by type size.
    Decompose {
        path: PathBuf,
        /// Check one specific decomposition parameter.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Explicit globalization with the enveloping-action checks.
    Globalize {
        path: PathBuf,
        /// Globalize stratum by stratum when the instance is mixed.
        #[arg(long)]
        stratify: bool,
    },
    /// Run the full verification suite (psi, expectation, corner, units,
    /// freeness).
    Verify { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Loads and structurally parses an instance; axiom violations are left to
/// the caller.
fn load_instance(path: &Path) -> Result<(FiniteGroup, PartialAction, String), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let (group, pa) =
        parse_instance_unvalidated(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = report::digest(&pa.canonical_text());
    Ok((group, pa, digest))
}

/// Loads an instance and requires it to satisfy the axioms.
fn load_valid_instance(
    path: &Path,
    max_order: usize,
) -> Result<Result<(FiniteGroup, PartialAction, String), String>, String> {
    let (group, pa, digest) = load_instance(path)?;
    if group.order() > max_order {
        return Err(format!(
            "group order {} exceeds --max-group-order {max_order}",
            group.order()
        ));
    }
    let violations = pa.validate();
    if violations.is_empty() {
        Ok(Ok((group, pa, digest)))
    } else {
        let rendered: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Ok(Err(format!("invalid instance: {}", rendered.join("; "))))
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Validate { path } => {
            let (group, pa, digest) = load_instance(path)?;
            if group.order() > cli.max_group_order {
                return Err(format!(
                    "group order {} exceeds --max-group-order {}",
                    group.order(),
                    cli.max_group_order
                ));
            }
            let violations = pa.validate();
            let ok = violations.is_empty();
            let doc = ReportDocument::new("validate", Some(digest), cli.seed)
                .with(payload::validate(&violations));
            emit(cli, &doc);
            Ok(verdict(ok))
        }
        Command::Structure { path, par_group } => match (path, par_group) {
            (_, Some(spec)) => {
                let group = FiniteGroup::parse_spec(spec).map_err(|e| e.to_string())?;
                let report = partial_group_algebra(&group, cli.max_group_order)
                    .map_err(|e| e.to_string())?;
                let digest = report::digest(&group.canonical_text());
                let doc = ReportDocument::new("structure", Some(digest), cli.seed)
                    .with(payload::structure(&report, Some(spec)));
                emit(cli, &doc);
                Ok(ExitCode::SUCCESS)
            }
            (Some(path), None) => {
                let loaded = load_valid_instance(path, cli.max_group_order)?;
                let (_, pa, digest) = match loaded {
                    Ok(v) => v,
                    Err(msg) => return fail_domain(&msg),
                };
                let report = crossed_product_structure(&pa);
                let doc = ReportDocument::new("structure", Some(digest), cli.seed)
                    .with(payload::structure(&report, None));
                emit(cli, &doc);
                Ok(ExitCode::SUCCESS)
            }
            (None, None) => Err("structure needs an instance path or --par-group".to_string()),
        },
        Command::Decompose { path, n } => {
            let loaded = load_valid_instance(path, cli.max_group_order)?;
            let (_, pa, digest) = match loaded {
                Ok(v) => v,
                Err(msg) => return fail_domain(&msg),
            };
            let doc = ReportDocument::new("decompose", Some(digest), cli.seed);
            match n {
                Some(k) => match check_decomposition(&pa, *k) {
                    Ok(cert) => {
                        emit(cli, &doc.with(payload::certificate(&pa, &cert)));
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(refutation) => {
                        emit(cli, &doc.with(payload::refutation(&refutation)));
                        Ok(ExitCode::from(1))
                    }
                },
                None => match detect_parameter(&pa) {
                    // A 0-point instance reports an empty stratification
                    // rather than a vacuous certificate.
                    Some(k) if pa.points() > 0 => {
                        let cert = check_decomposition(&pa, k).expect("detected parameter");
                        emit(cli, &doc.with(payload::certificate(&pa, &cert)));
                        Ok(ExitCode::SUCCESS)
                    }
                    _ => {
                        let strat = stratify(&pa);
                        emit(cli, &doc.with(payload::stratification(&strat)));
                        Ok(ExitCode::SUCCESS)
                    }
                },
            }
        }
        Command::Globalize { path, stratify: per_stratum } => {
            let loaded = load_valid_instance(path, cli.max_group_order)?;
            let (_, pa, digest) = match loaded {
                Ok(v) => v,
                Err(msg) => return fail_domain(&msg),
            };
            let doc = ReportDocument::new("globalize", Some(digest), cli.seed);
            if detect_parameter(&pa).is_some() {
                let glob = globalize(&pa).expect("decomposable");
                let report = check_enveloping(&pa, &glob);
                let ok = report.passed();
                emit(cli, &doc.with(payload::globalization(&pa, &[(None, glob, report)])));
                Ok(verdict(ok))
            } else if *per_stratum {
                let strat = stratify(&pa);
                let mut parts = Vec::new();
                let mut all_ok = true;
                for stratum in &strat.strata {
                    let glob = globalize(&stratum.action).expect("strata are decomposable");
                    let report = check_enveloping(&stratum.action, &glob);
                    all_ok &= report.passed();
                    parts.push((Some(stratum.k), glob, report));
                }
                emit(cli, &doc.with(payload::globalization(&pa, &parts)));
                Ok(verdict(all_ok))
            } else {
                fail_domain(
                    "instance is not decomposable; rerun with --stratify to globalize stratum by stratum",
                )
            }
        }
        Command::Verify { path } => {
            let loaded = load_valid_instance(path, cli.max_group_order)?;
            let (_, pa, digest) = match loaded {
                Ok(v) => v,
                Err(msg) => return fail_domain(&msg),
            };
            let checks = verification_suite(&pa, cli.seed)?;
            let pass = checks.iter().all(|c| c.ok);
            let doc = ReportDocument::new("verify", Some(digest), cli.seed)
                .with(payload::verification(&checks, pass));
            emit(cli, &doc);
            Ok(verdict(pass))
        }
    }
}

/// One named check row of the verification report.
pub struct NamedCheck {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

/// Runs the full verification suite stratum by stratum: the crossed
/// product isomorphism per orbit summand, the expectation and corner
/// suites, the equivariant unit relation, and the freeness-fullness
/// comparison.
fn verification_suite(pa: &PartialAction, seed: u64) -> Result<Vec<NamedCheck>, String> {
    let strat = stratify(pa);
    let mut checks = Vec::new();
    for stratum in &strat.strata {
        let prefix = format!("k{}", stratum.k);
        let action = &stratum.action;
        let cert = check_decomposition(action, stratum.k).expect("stratum parameter");

        for summand in &cert.summands {
            let psi = build_psi(action, &summand.base).map_err(|e| e.to_string())?;
            for c in &psi.checks {
                checks.push(NamedCheck {
                    name: format!("{prefix}.psi{}.{}", summand.base.render(), c.name),
                    ok: c.ok,
                    witness: c.witness.clone(),
                });
            }
        }

        let e = build_expectation(action, seed).map_err(|e| e.to_string())?;
        for c in &e.checks {
            checks.push(NamedCheck {
                name: format!("{prefix}.expectation.{}", c.name),
                ok: c.ok,
                witness: c.witness.clone(),
            });
        }

        let corner = build_corner(action, seed).map_err(|e| e.to_string())?;
        for c in &corner.checks {
            checks.push(NamedCheck {
                name: format!("{prefix}.corner.{}", c.name),
                ok: c.ok,
                witness: c.witness.clone(),
            });
        }

        let units = equivariant_unit_system(action).map_err(|e| e.to_string())?;
        checks.push(NamedCheck {
            name: format!("{prefix}.units.domain_indicators"),
            ok: units.matches_domain_indicators,
            witness: None,
        });
        checks.push(NamedCheck {
            name: format!("{prefix}.units.relation"),
            ok: units.relation_failures.is_empty(),
            witness: units
                .relation_failures
                .first()
                .map(|(g, h)| format!("pair ({g}, {h})")),
        });
    }

    let freeness = freeness_equivalence(pa).map_err(|e| e.to_string())?;
    for s in &freeness.strata {
        checks.push(NamedCheck {
            name: format!("freeness.k{}.agreement", s.k),
            ok: s.agrees(),
            witness: s.witness.map(|(g, x)| format!("sigma_{g} fixes point {x}")),
        });
    }
    checks.push(NamedCheck {
        name: "freeness.overall".to_string(),
        ok: freeness.pass,
        witness: None,
    });
    Ok(checks)
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn fail_domain(message: &str) -> Result<ExitCode, String> {
    eprintln!("{message}");
    Ok(ExitCode::from(1))
}

fn emit(cli: &Cli, doc: &ReportDocument) {
    match cli.format {
        Format::Machine => println!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
}

/// Used by the payload builders to render tuples consistently.
pub fn render_tuple(t: &Tuple) -> String {
    t.render()
}

/// Shared helper for the structure payloads.
pub fn structure_lines(report: &StructureReport) -> Vec<String> {
    let mut lines = Vec::new();
    for b in &report.blocks {
        lines.push(format!(
            "block {} dim {} k0 {} (stratum {}, orbit {}, point-orbit {})",
            b.render(),
            b.dimension(),
            b.simple_summands,
            b.provenance.stratum_k,
            b.provenance.orbit.render(),
            b.provenance.point_orbit
        ));
    }
    lines.push(format!("total_dimension {}", report.total_dimension));
    lines.push(format!("k0_rank {}", report.k0_rank));
    lines.push(format!("k1 {}", report.k1));
    lines
}
