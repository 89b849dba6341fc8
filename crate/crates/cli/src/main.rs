use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use constadesign::constacyclic::check_r;
use constadesign::designs::{self, Design};
use constadesign::equations::{self, PowerMap};
use constadesign::numtheory::prime_power;
use constadesign::quantum_lrc;
use constadesign::subfield;
use constadesign::wdist::{self, macwilliams_dual, minimum_distance};
use constadesign::{pipeline, ConstacyclicCode, Error, Family, FieldTower, Level};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "constadesign", version, about = "Constacyclic codes of length q^2+1 and their designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Primal,
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EquationKind {
    /// Roots on U_{q+1} of b x^{p^k+1} + a x^{p^k} + a^q x + b^q.
    UnitCircle,
    /// Roots in F_q of x^{p^k+1} + a x + b.
    Bluher,
    /// Maximum root count for p = 3, k = 2, odd m.
    Conjecture,
    /// Fibers of x -> x^{q+1} (family A) or x^{q-1} (family B).
    Preimage,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Prime power q; alternative to --p/--m.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u64>,
    #[arg(long, requires = "m")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    m: Option<u32>,
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Order of the shift constant.
    #[arg(long)]
    r: u64,
    /// Bound on the number of elementary evaluations.
    #[arg(long, default_value_t = wdist::DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe the field tower for q.
    Tower {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Construct a code and print its generator and check polynomials.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Describe the dual code instead.
        #[arg(long)]
        dual: bool,
    },
    /// Weight distribution of a code and of its dual.
    Wdist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        r: Option<u64>,
        /// Use the closed form instead of enumerating codewords.
        #[arg(long)]
        analytic: bool,
        #[arg(long, default_value_t = wdist::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// 3-designs held by the minimum-weight supports of a code and its dual.
    Designs {
        #[command(flatten)]
        code: CodeArgs,
        /// Which block set goes to CSV output.
        #[arg(long, value_enum, default_value_t = Side::Primal)]
        side: Side,
        /// Include block lists in JSON output (small designs only).
        #[arg(long)]
        blocks: bool,
    },
    /// Subfield subcode over F_q.
    Subfield {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Root counts of the polynomial equations behind the weight computation.
    Equations {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        kind: EquationKind,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, default_value_t = equations::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Entanglement-assisted quantum code from a pair of codes.
    Eaqecc {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum)]
        family2: Option<FamilyArg>,
        #[arg(long)]
        r2: Option<u64>,
    },
    /// Locality and bounds for the dual code.
    Lrc {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Every check for every admissible code at one q.
    VerifyAll {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = wdist::DEFAULT_BUDGET)]
        budget: u128,
    },
}

enum Failure {
    Precondition(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e)
    }
}

struct Report {
    body: Value,
    csv: Option<String>,
    /// Name of the first failed check, if any.
    failed: Option<String>,
}

impl Report {
    fn pass(body: Value) -> Self {
        Report { body, csv: None, failed: None }
    }

    fn judged(body: Value, checks: &[(&str, bool)]) -> Self {
        let failed = checks.iter().find(|c| !c.1).map(|c| c.0.to_string());
        Report { body, csv: None, failed }
    }
}

fn resolve(field: &FieldArgs) -> Result<(u64, u32), Failure> {
    match (field.q, field.p, field.m) {
        (Some(q), _, _) => Ok(prime_power(q)?),
        (None, Some(p), Some(m)) => Ok((p, m)),
        _ => Err(Failure::Usage("one of --q or --p/--m is required".into())),
    }
}

fn tower_of(field: &FieldArgs) -> Result<Arc<FieldTower>, Failure> {
    let (p, m) = resolve(field)?;
    Ok(Arc::new(FieldTower::build(p, m)?))
}

fn build_code(args: &CodeArgs) -> Result<(Arc<FieldTower>, ConstacyclicCode), Failure> {
    let tower = tower_of(&args.field)?;
    let code = ConstacyclicCode::build(Arc::clone(&tower), args.r, args.family.into())?;
    Ok((tower, code))
}

fn tower_json(t: &FieldTower) -> Value {
    let d = t.descriptor();
    json!({ "p": d.p, "m": d.m, "q": t.q(), "modulus": d.modulus })
}

fn header(command: &str, t: &FieldTower, body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA, "command": command, "tower": tower_json(t) });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Tower { field } => {
            let t = tower_of(field)?;
            let levels: Vec<Value> = Level::ALL
                .iter()
                .map(|&l| json!({ "level": l.to_string(), "degree": t.level_degree(l), "size": t.level_size(l) }))
                .collect();
            Ok(Report::pass(header("tower", &t, json!({ "levels": levels }))))
        }
        Command::Build { code, dual } => {
            let (t, c) = build_code(code)?;
            let c = if *dual { c.dual()? } else { c };
            let rows = c.generator_matrix()?.len();
            Ok(Report::pass(header(
                "build",
                &t,
                json!({ "code": c.descriptor(), "rn": c.rn(), "nonzeros": c.nonzero_exponents(), "generator_rank": rows }),
            )))
        }
        Command::Wdist { field, family, r, analytic, budget } => {
            let t = tower_of(field)?;
            let family = Family::from(*family);
            let q = t.q();
            let (wd, r, matches) = match (analytic, r) {
                (true, r) => {
                    if let Some(r) = r {
                        check_r(q, *r, family)?;
                    }
                    (wdist::weight_distribution_analytic(q, family)?, *r, None)
                }
                (false, Some(r)) => {
                    let c = ConstacyclicCode::build(Arc::clone(&t), *r, family)?;
                    let wd = wdist::weight_distribution_exhaustive(&c, *budget)?;
                    let matches = (q > 2).then(|| wdist::weight_distribution_analytic(q, family).map(|a| a == wd));
                    (wd, Some(*r), matches.transpose()?)
                }
                (false, None) => return Err(Failure::Usage("--r is required unless --analytic is given".into())),
            };
            let dual = macwilliams_dual(&wd);
            let body = header(
                "wdist",
                &t,
                json!({
                    "family": family,
                    "r": r,
                    "method": if *analytic { "analytic" } else { "exhaustive" },
                    "distribution": wd.to_json(),
                    "d": minimum_distance(&wd)?,
                    "dual": dual.to_json(),
                    "dual_d": minimum_distance(&dual)?,
                    "matches_analytic": matches,
                }),
            );
            let mut rep = Report::judged(body, &[("matches_analytic", matches != Some(false))]);
            rep.csv = Some(wd.to_csv());
            Ok(rep)
        }
        Command::Designs { code, side, blocks } => {
            let (t, c) = build_code(code)?;
            let q = t.q();
            let n = c.n();
            let weight = (q * q - q) as usize;
            let (wd, scan) = wdist::scan_with_supports(&c, code.budget, weight)?;
            let mut primal = Design::from_scan(n, &scan)?;
            let pc = designs::verify_t_design(&mut primal, 3, code.budget)?;
            let primal_id = designs::design_identity_check(n as u64, 3, weight as u64, pc.eta, primal.b() as u128);
            let mut comp = primal.complement();
            let steiner = designs::steiner_check(&mut comp, code.budget)?;

            let words = wdist::low_weight_dual_codewords(&c, 4, code.budget)?;
            let mut dual = Design::new(n, 4, words.iter().filter(|w| w.support.len() == 4).map(|w| w.support.clone()))?;
            let dc = designs::verify_t_design(&mut dual, 3, code.budget)?;
            let dual_id = designs::design_identity_check(n as u64, 3, 4, dc.eta, dual.b() as u128);
            let am = designs::assmus_mattson_check(&wd, &macwilliams_dual(&wd), 3)?;

            let body = header(
                "designs",
                &t,
                json!({
                    "code": c.descriptor(),
                    "primal": { "design": primal.to_json(*blocks), "holds": pc.holds, "identity": primal_id, "witness": pc.witness },
                    "complement": { "design": comp.to_json(*blocks), "steiner": steiner },
                    "dual": { "design": dual.to_json(*blocks), "holds": dc.holds, "identity": dual_id, "witness": dc.witness },
                    "assmus_mattson": am,
                }),
            );
            let mut rep = Report::judged(
                body,
                &[
                    ("primal 3-design", pc.holds && primal_id),
                    ("dual 3-design", dc.holds && dual_id),
                    ("Assmus-Mattson", am.holds),
                ],
            );
            rep.csv = Some(match side {
                Side::Primal => primal.to_csv(),
                Side::Dual => dual.to_csv(),
            });
            Ok(rep)
        }
        Command::Subfield { code } => {
            let (t, c) = build_code(code)?;
            let sub = subfield::subfield_subcode_direct(&c)?;
            let delsarte = subfield::delsarte_cross_check(&c)?;
            let analysis = subfield::triviality_analysis(&c)?;
            let ovoid = (sub.k_sub() == 4).then(|| subfield::ovoid_check(&t, &sub, code.budget)).transpose()?;
            let agrees = analysis["agrees"].as_bool() == Some(true);
            let body = header(
                "subfield",
                &t,
                json!({
                    "code": c.descriptor(),
                    "subcode": sub.to_json(&t),
                    "delsarte": delsarte,
                    "ovoid": ovoid.as_ref().map(|o| o.to_json()),
                    "prediction": analysis,
                }),
            );
            Ok(Report::judged(
                body,
                &[
                    ("Delsarte", delsarte.equal),
                    ("ovoid", ovoid.as_ref().is_none_or(|o| o.holds())),
                    ("prediction", agrees),
                ],
            ))
        }
        Command::Equations { field, kind, k, r, family, budget } => {
            let (p, m) = resolve(field)?;
            let t = FieldTower::build(p, m)?;
            let (body, ok) = match kind {
                EquationKind::UnitCircle => {
                    let rep = equations::unit_circle_root_histogram(&t, *k, *budget)?;
                    (json!(rep), rep.consistent())
                }
                EquationKind::Bluher => {
                    let rep = equations::bluher_root_histogram(p, m, *k, *budget)?;
                    (json!(rep), rep.consistent())
                }
                EquationKind::Conjecture => {
                    if p != 3 {
                        return Err(Failure::Precondition(Error::InvalidRegime(format!("needs p = 3, got {p}"))));
                    }
                    let rep = equations::conjecture_check(m, *budget)?;
                    (json!(rep), rep.holds)
                }
                EquationKind::Preimage => {
                    let (Some(r), Some(family)) = (r, family) else {
                        return Err(Failure::Usage("--kind preimage needs --r and --family".into()));
                    };
                    let map = match family {
                        FamilyArg::A => PowerMap::QPlusOne,
                        FamilyArg::B => PowerMap::QMinusOne,
                    };
                    let rep = equations::preimage_structure_check(&t, *r, map)?;
                    (json!(rep), rep.holds)
                }
            };
            let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
            let body = header("equations", &t, json!({ "kind": name, "report": body }));
            Ok(Report::judged(body, &[(name.as_str(), ok)]))
        }
        Command::Eaqecc { code, family2, r2 } => {
            let (t, c1) = build_code(code)?;
            let c2 = ConstacyclicCode::build(
                Arc::clone(&t),
                r2.unwrap_or(code.r),
                family2.map_or(c1.family(), Family::from),
            )?;
            let d1 = quantum_lrc::code_distance(&c1, code.budget)?;
            let d2 = quantum_lrc::code_distance(&c2, code.budget)?;
            let primal = quantum_lrc::eaqecc_from_pair(&c1, &c2, d1, d2)?;
            let (e1, e2) = (c1.dual()?, c2.dual()?);
            let dd1 = quantum_lrc::code_distance(&e1, code.budget)?;
            let dd2 = quantum_lrc::code_distance(&e2, code.budget)?;
            let dual = quantum_lrc::eaqecc_from_pair(&e1, &e2, dd1, dd2)?;
            let body = header(
                "eaqecc",
                &t,
                json!({
                    "c1": c1.descriptor(),
                    "c2": c2.descriptor(),
                    "primal": primal.to_json(),
                    "dual": dual.to_json(),
                }),
            );
            Ok(Report::judged(
                body,
                &[
                    ("primal intersection", primal.intersection.agrees()),
                    ("dual intersection", dual.intersection.agrees()),
                ],
            ))
        }
        Command::Lrc { code } => {
            let (t, c) = build_code(code)?;
            let wd = wdist::weight_distribution_exhaustive(&c, code.budget)?;
            let d = minimum_distance(&wd)?;
            let dual_d = minimum_distance(&macwilliams_dual(&wd))?;
            let n = c.n();
            let rep = quantum_lrc::lrc_report(n, n - c.k(), dual_d, d)?;
            let ok = rep.distance_optimal && rep.dimension_optimal;
            let body = header("lrc", &t, json!({ "code": c.dual()?.descriptor(), "lrc": rep.to_json() }));
            Ok(Report::judged(body, &[("optimality", ok)]))
        }
        Command::VerifyAll { field, budget } => {
            let (p, m) = resolve(field)?;
            let t = FieldTower::build(p, m)?;
            let rep = pipeline::verify_all(t.q(), *budget)?;
            let failed = rep.first_failure().map(|c| c.name.clone());
            let body = header(
                "verify-all",
                &t,
                json!({
                    "q": rep.q,
                    "passed": rep.passed(),
                    "total": rep.checks.len(),
                    "first_failure": failed,
                    "checks": rep.checks,
                }),
            );
            Ok(Report { body, csv: None, failed })
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_object(kind: &str, message: &str) -> String {
    let v = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message } });
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            let (kind, message) = match f {
                Failure::Precondition(e) => (e.kind().to_string(), e.to_string()),
                Failure::Usage(m) => ("Usage".to_string(), m),
            };
            eprintln!("error: {message}");
            print!("{}", error_object(&kind, &message));
            return ExitCode::from(2);
        }
    };
    let text = match (cli.format, &report.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => {
            let message = "CSV output is available for wdist and designs only";
            eprintln!("error: {message}");
            print!("{}", error_object("Usage", message));
            return ExitCode::from(2);
        }
        (Format::Json, _) => format!("{}\n", serde_json::to_string_pretty(&report.body).expect("serializable")),
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(2);
    }
    match report.failed {
        Some(name) => {
            eprintln!("FAILED: {name}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
