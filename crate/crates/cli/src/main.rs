use std::path::PathBuf;
use std::process::ExitCode;

use basechange::cuspchar::{oracle_matches, Cuspidal, Level0, Unitary};
use basechange::ffield::{MultChar, NormOneChar, QuadExt};
use basechange::grpcore::export::TableExport;
use basechange::grpcore::{character_table, max_group, ClassFunction, Group};
use basechange::heis::{Realization, TorusAction};
use basechange::verify::{default_heis_params, run_all, HeisParams, Report, SuiteRequest};
use basechange::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "basechange",
    version,
    about = "Exact character computations and verification suites"
)]
struct Cli {
    /// Worker threads for suite fan-out.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Sl2,
    Gl2,
    U2,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Suite {
    Level0,
    NormBijection,
    Restriction,
    Endoscopic,
    Heisenberg,
    FormulaOracle,
    Engine,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Oracle character table of SL2, GL2 or U(1,1) over GF(q).
    Chartable {
        family: Family,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cuspidal characters from the explicit formulas, matched to the oracle.
    Cuspidal {
        family: Family,
        #[arg(long)]
        q: u32,
        /// Parameter exponent; for u2 two exponents "s1,s2".
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Field sizes; defaults depend on the suite.
        #[arg(long, num_args = 1..)]
        q: Vec<u32>,
        /// Heisenberg tuples "(p,a,d,split|nonsplit)".
        #[arg(long = "params", num_args = 1..)]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hypothesis (H) and multiplicity checks for one torus.
    Heis {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        realization: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidParameter(_)
            | Error::Parse(_)
            | Error::EvenCharacteristic
            | Error::NotRegular(_)
            | Error::ReducibleParameter
            | Error::Realization(_)
            | Error::HypothesisH(_)
            | Error::SizeBound { .. }
            | Error::TrivialCentralCharacter => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Run(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn quad(q: u32) -> Result<std::sync::Arc<QuadExt>, Failure> {
    QuadExt::new(q, 1).map_err(|e| Failure::Usage(format!("q = {q}: {e}")))
}

fn parse_i64(s: &str) -> Result<i64, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("integer expected: {s:?}")))
}

fn family_group(
    family: Family,
    q: u32,
) -> Result<(std::sync::Arc<Group>, Option<Level0>, Option<Unitary>), Failure> {
    let qd = quad(q)?;
    Ok(match family {
        Family::Sl2 | Family::Gl2 => {
            let lv = Level0::new(&qd, max_group())?;
            let g = if matches!(family, Family::Sl2) {
                lv.sl2().clone()
            } else {
                lv.gl2().clone()
            };
            (g, Some(lv), None)
        }
        Family::U2 => {
            let un = Unitary::new(&qd, max_group())?;
            (un.group().clone(), None, Some(un))
        }
    })
}

fn render(table: &TableExport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(table.to_json()),
        Format::Csv => Ok(table.to_csv()?.trim_end().to_string()),
    }
}

fn chartable(
    family: Family,
    q: u32,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let (g, _, _) = family_group(family, q)?;
    let chars: Vec<(String, ClassFunction)> = character_table(&g)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| (format!("chi{i}"), c))
        .collect();
    emit(out, &render(&TableExport::new(&g, &chars), format)?)?;
    Ok(true)
}

fn cuspidal(
    family: Family,
    q: u32,
    theta: Option<String>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool, Failure> {
    let qd = quad(q)?;
    let (g, lv, un) = family_group(family, q)?;
    let built: Vec<Cuspidal> = match (family, theta) {
        (Family::Sl2, Some(t)) => vec![lv
            .expect("level0")
            .sl2_cuspidal(&NormOneChar::new(&qd, parse_i64(&t)?))?],
        (Family::Sl2, None) => {
            let lv = lv.expect("level0");
            NormOneChar::all(&qd)
                .iter()
                .filter(|t| t.is_regular())
                .map(|t| lv.sl2_cuspidal(t))
                .collect::<Result<_, _>>()?
        }
        (Family::Gl2, Some(t)) => vec![lv
            .expect("level0")
            .gl2_cuspidal(&MultChar::new(qd.l(), parse_i64(&t)?))?],
        (Family::Gl2, None) => {
            let lv = lv.expect("level0");
            MultChar::all(qd.l())
                .iter()
                .filter(|t| t.is_regular(q))
                .map(|t| lv.gl2_cuspidal(t))
                .collect::<Result<_, _>>()?
        }
        (Family::U2, Some(t)) => {
            let (a, b) = t
                .split_once(',')
                .ok_or_else(|| Failure::Usage("u2 expects --theta s1,s2".into()))?;
            let un = un.expect("unitary");
            vec![un.u2_cuspidal(
                &NormOneChar::new(&qd, parse_i64(a)?),
                &NormOneChar::new(&qd, parse_i64(b)?),
            )?]
        }
        (Family::U2, None) => {
            let un = un.expect("unitary");
            let all = NormOneChar::all(&qd);
            let mut v = Vec::new();
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    v.push(un.u2_cuspidal(a, b)?);
                }
            }
            v
        }
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for c in &built {
        let m = oracle_matches(&c.chi)?;
        ok &= m.len() == 1;
        let name = format!("{:?} {}", c.tag.family, c.tag.params.join(" "));
        json_rows.push(json!({
            "tag": c.tag,
            "oracle_matches": m,
            "norm": c.chi.norm().to_string(),
            "values": c.chi.value_strings(),
        }));
        rows.push((name, c.chi.clone()));
    }
    let text = match format {
        Format::Csv => render(&TableExport::new(&g, &rows), format)?,
        Format::Json => {
            let table = TableExport::new(&g, &[]);
            serde_json::to_string_pretty(&json!({
                "group": table.group,
                "order": table.order,
                "classes": table.classes,
                "characters": json_rows,
            }))
            .expect("plain data serializes")
        }
    };
    emit(out, &text)?;
    Ok(ok)
}

fn parse_q_list(q: &[u32], default: &[u32]) -> Vec<u32> {
    if q.is_empty() {
        default.to_vec()
    } else {
        q.to_vec()
    }
}

fn suite_requests(
    suite: Suite,
    q: &[u32],
    params: &[String],
) -> Result<Vec<SuiteRequest>, Failure> {
    for &x in q {
        quad(x)?;
    }
    let heis = if params.is_empty() {
        default_heis_params()
    } else {
        params
            .iter()
            .map(|s| s.parse::<HeisParams>())
            .collect::<Result<Vec<_>, _>>()?
    };
    let per_q = |f: fn(u32) -> SuiteRequest, default: &[u32]| {
        parse_q_list(q, default)
            .into_iter()
            .map(f)
            .collect::<Vec<_>>()
    };
    Ok(match suite {
        Suite::Level0 => per_q(SuiteRequest::Level0, &[3, 5, 7]),
        Suite::NormBijection => per_q(SuiteRequest::NormBijection, &[3]),
        Suite::Restriction => per_q(SuiteRequest::Restriction, &[3, 5]),
        Suite::Endoscopic => per_q(SuiteRequest::Endoscopic, &[3, 5]),
        Suite::FormulaOracle => per_q(SuiteRequest::FormulaOracle, &[3, 5]),
        Suite::Engine => per_q(SuiteRequest::Engine, &[3]),
        Suite::Heisenberg => vec![SuiteRequest::Heisenberg(heis)],
        Suite::All => {
            let mut v = Vec::new();
            for s in [
                Suite::Level0,
                Suite::NormBijection,
                Suite::Restriction,
                Suite::Endoscopic,
                Suite::FormulaOracle,
                Suite::Engine,
                Suite::Heisenberg,
            ] {
                v.extend(suite_requests(s, q, params)?);
            }
            v
        }
    })
}

fn reports_json(reports: &[Report]) -> String {
    match reports {
        [one] => one.to_json(),
        many => serde_json::to_string_pretty(many).expect("plain data serializes"),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Run(e.to_string()))?;
    }
    match cli.command {
        Command::Chartable {
            family,
            q,
            format,
            out,
        } => chartable(family, q, format, &out),
        Command::Cuspidal {
            family,
            q,
            theta,
            format,
            out,
        } => cuspidal(family, q, theta, format, &out),
        Command::Verify {
            suite,
            q,
            params,
            out,
        } => {
            let reports = run_all(&suite_requests(suite, &q, &params)?);
            emit(&out, &reports_json(&reports))?;
            Ok(reports.iter().all(Report::passed))
        }
        Command::Heis {
            p,
            a,
            d,
            realization,
            out,
        } => {
            let realization: Realization = realization.parse()?;
            if a != 1 {
                return Err(Failure::Usage(format!(
                    "a = {a}: only a = 1 realizations are built in"
                )));
            }
            TorusAction::realize(p, d, realization)?;
            let reports = run_all(&[SuiteRequest::Heisenberg(vec![HeisParams {
                p,
                a,
                d,
                realization,
            }])]);
            emit(&out, &reports_json(&reports))?;
            Ok(reports.iter().all(Report::passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
