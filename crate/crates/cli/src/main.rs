use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hankelfrac::hfrac::{expand_super_delta, hankel_from_hfrac};
use hankelfrac::input::{SeriesSpec, SourceSpec};
use hankelfrac::oracle::{hankel_sequence_bruteforce, hankel_sequence_integer};
use hankelfrac::quadfrac::{certified_hankel_period, expand_quadratic_equation, QuadraticTriple};
use hankelfrac::report::{ExpansionReport, QuadraticReport, SequenceDto};
use hankelfrac::reproduce::{reproduce_all, Outcome, REPRODUCE_IDS};
use hankelfrac::seqlib::NamedSequence;
use hankelfrac::{Error, ErrorClass, FieldSpec, Result};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hankelfrac", version, about = "Hankel continued fractions and Hankel determinants of power series")]
struct Cli {
    /// List the named sequences and exit.
    #[arg(long)]
    list_named: bool,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Super delta-fraction expansion of a series.
    Expand {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 2)]
        delta: usize,
        #[arg(long, default_value_t = 256)]
        quotients: usize,
        /// Coefficient budget for lazily generated series.
        #[arg(long, env = "HANKELFRAC_DEPTH", default_value_t = 512)]
        depth: usize,
        /// Largest Hankel index in the report.
        #[arg(long, default_value_t = 48)]
        nmax: usize,
    },
    /// Periodic expansion of the root of A + B F + C F^2 = 0 over a prime field.
    HfracQuadratic {
        #[arg(long)]
        field: Option<String>,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, default_value_t = 2)]
        delta: usize,
        /// Value of F(0) selecting the root.
        #[arg(long, allow_hyphen_values = true)]
        branch: Option<String>,
        /// Use the equation of a named sequence instead.
        #[arg(long, conflicts_with_all = ["a", "b", "c"])]
        named: Option<String>,
    },
    /// Hankel determinants from the expansion, certified periodic when the
    /// series comes with a quadratic equation over a prime field.
    Hankel {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 48)]
        nmax: usize,
        #[arg(long, env = "HANKELFRAC_DEPTH", default_value_t = 512)]
        depth: usize,
    },
    /// Hankel determinants by direct elimination.
    Oracle {
        #[command(flatten)]
        series: SeriesArgs,
        /// Defaults to 48 over a field and 24 over Z.
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Ring::Field)]
        ring: Ring,
    },
    /// Recompute the worked examples and tables and compare with golden values.
    Reproduce {
        /// Ids to check; all when empty.
        ids: Vec<String>,
        #[arg(long)]
        table: Vec<String>,
        /// List the ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ring {
    /// The series' own field.
    Field,
    /// Integer coefficients, fraction-free elimination.
    #[value(name = "Z")]
    Z,
}

#[derive(Args, Debug, Default)]
struct SeriesArgs {
    /// F2, F3, F5, ... or Q.
    #[arg(long)]
    field: Option<String>,
    /// Named sequence, see --list-named.
    #[arg(long)]
    named: Option<String>,
    /// Rational source num/den.
    #[arg(long, requires = "den", allow_hyphen_values = true)]
    num: Option<String>,
    #[arg(long, requires = "num", allow_hyphen_values = true)]
    den: Option<String>,
    /// Explicit comma-separated coefficients.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Root of A + B F + C F^2 = 0.
    #[arg(long = "A", requires_all = ["b", "c"], allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long = "C", allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f0: Option<String>,
    /// JSON series spec, inline or as @path.
    #[arg(long)]
    series_json: Option<String>,
}

impl SeriesArgs {
    fn spec(&self) -> Result<SeriesSpec> {
        if let Some(j) = &self.series_json {
            let text = match j.strip_prefix('@') {
                Some(path) => fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {}", path, e)))?,
                None => j.clone(),
            };
            return SeriesSpec::from_json(&text);
        }
        let field = self.field.clone().unwrap_or_else(|| "Q".to_string());
        let source = if let Some(n) = &self.named {
            SourceSpec::Named(NamedSequence::parse(n)?)
        } else if let (Some(num), Some(den)) = (&self.num, &self.den) {
            SourceSpec::Rational {
                num: num.clone(),
                den: den.clone(),
            }
        } else if let Some(c) = &self.coeffs {
            SourceSpec::Explicit {
                coeffs: c.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            }
        } else if let (Some(a), Some(b), Some(c)) = (&self.a, &self.b, &self.c) {
            SourceSpec::Quadratic {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                f0: self.f0.clone(),
            }
        } else {
            return Err(Error::InvalidInput(
                "no series given: use --named, --num/--den, --coeffs, --A/--B/--C or --series-json".into(),
            ));
        };
        Ok(SeriesSpec { field, source })
    }
}

/// One rendered report in the three formats.
struct Report {
    text: String,
    json: Value,
    csv: String,
}

fn csv_table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{}\n", header);
    for r in rows {
        out += &r;
        out.push('\n');
    }
    out
}

fn quotient_csv(q: &[hankelfrac::report::QuotientDto]) -> String {
    csv_table(
        "j,v,k,u",
        q.iter().enumerate().map(|(j, q)| format!("{},{},{},\"{}\"", j, q.v, q.k, q.u)),
    )
}

fn sequence_csv(h: &[String]) -> String {
    csv_table("n,H_n", h.iter().enumerate().map(|(n, v)| format!("{},{}", n, v)))
}

fn expand(series: &SeriesArgs, delta: usize, quotients: usize, depth: usize, nmax: usize) -> Result<Report> {
    let spec = series.spec()?;
    let f = spec.build()?;
    let h = expand_super_delta(&f, delta, quotients, depth)?;
    let r = ExpansionReport::build(f.describe(), &h, nmax)?;
    Ok(Report {
        text: r.to_text(),
        csv: quotient_csv(&r.fraction.quotients),
        json: serde_json::to_value(&r).expect("report serializes"),
    })
}

fn quadratic_triple(
    field: Option<&str>,
    abc: (Option<&str>, Option<&str>, Option<&str>),
    named: Option<&str>,
    delta: usize,
    branch: Option<&str>,
) -> Result<(QuadraticTriple, Option<hankelfrac::FieldElement>)> {
    if let Some(n) = named {
        let (mut t, b) = NamedSequence::parse(n)?
            .equation()
            .ok_or_else(|| Error::InvalidInput(format!("{} has no quadratic equation over a prime field", n)))?;
        t.delta = delta;
        let b = match branch {
            Some(s) => Some(t.spec().parse_element(s)?),
            None => b,
        };
        return Ok((t, b));
    }
    let (Some(a), Some(b), Some(c)) = abc else {
        return Err(Error::InvalidInput("--A, --B and --C are required (or --named)".into()));
    };
    let spec: FieldSpec = field
        .ok_or_else(|| Error::InvalidInput("--field is required".into()))?
        .parse()?;
    let t = QuadraticTriple::parse(spec, a, b, c, delta)?;
    let br = branch.map(|s| spec.parse_element(s)).transpose()?;
    Ok((t, br))
}

fn hfrac_quadratic(t: &QuadraticTriple, branch: Option<hankelfrac::FieldElement>) -> Result<Report> {
    let e = expand_quadratic_equation(t, branch)?;
    let r = QuadraticReport::build(&e)?;
    Ok(Report {
        text: r.to_text(),
        csv: quotient_csv(&r.fraction.quotients),
        json: serde_json::to_value(&r).expect("report serializes"),
    })
}

fn hankel(series: &SeriesArgs, nmax: usize, depth: usize) -> Result<Report> {
    let spec = series.spec()?;
    let f = spec.build()?;
    let certified = match spec.equation(2)? {
        Some((t, b)) if t.spec().is_prime_field() => {
            let e = expand_quadratic_equation(&t, b)?;
            Some((e.fraction.clone(), certified_hankel_period(&e.fraction)?))
        }
        _ => None,
    };
    let values = match &certified {
        Some((_, seq)) => seq.prefix(nmax + 1),
        None => {
            let h = expand_super_delta(&f, 2, usize::MAX, depth)?;
            hankel_from_hfrac(&h, nmax)?
        }
    };
    let h: Vec<String> = values.iter().map(|c| c.to_string()).collect();
    let mut text = format!("series: {}\n", f.describe());
    let mut json = json!({"series": f.describe(), "hankel": h});
    if let Some((_, seq)) = &certified {
        let dto = SequenceDto::from(seq);
        text += &format!("certified: {} (preperiod {}, period {})\n", dto.text, dto.preperiod.len(), dto.period.len());
        json["certified"] = serde_json::to_value(&dto).expect("sequence serializes");
    }
    text += &format!("H_0..H_{}: {}\n", nmax, h.join(","));
    Ok(Report {
        text,
        csv: sequence_csv(&h),
        json,
    })
}

fn oracle(series: &SeriesArgs, nmax: Option<usize>, ring: Ring) -> Result<Report> {
    let spec = series.spec()?;
    let (describe, h): (String, Vec<String>) = match ring {
        Ring::Field => {
            let n = nmax.unwrap_or(48);
            let f = spec.build()?;
            let h = hankel_sequence_bruteforce(&f, n)?;
            (f.describe(), h.iter().map(|c| c.to_string()).collect())
        }
        Ring::Z => {
            let n = nmax.unwrap_or(24);
            let len = 2 * n + 1;
            let terms = match &spec.source {
                SourceSpec::Named(named) => named
                    .integer_terms(len)
                    .ok_or_else(|| Error::Unsupported(format!("{:?} has no integer terms", named)))?,
                SourceSpec::Explicit { coeffs } => coeffs
                    .iter()
                    .map(|s| {
                        s.parse()
                            .map_err(|_| Error::InvalidInput(format!("{:?} is not an integer", s)))
                    })
                    .collect::<Result<_>>()?,
                _ => return Err(Error::Unsupported("--ring Z needs a named integer sequence or --coeffs".into())),
            };
            let h = hankel_sequence_integer(&terms, n)?;
            ("integer sequence".to_string(), h.iter().map(|c| c.to_string()).collect())
        }
    };
    Ok(Report {
        text: format!("series: {}\nH_0..H_{}: {}\n", describe, h.len() - 1, h.join(",")),
        csv: sequence_csv(&h),
        json: json!({"series": describe, "hankel": h}),
    })
}

fn reproduce_report(ids: &[String]) -> Result<Report> {
    let outcomes: Vec<Outcome> = reproduce_all(ids)?;
    let mut text = String::new();
    let mut csv = String::from("id,check,passed\n");
    for o in &outcomes {
        text += &format!("{} {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.id, o.description);
        if let Some(e) = &o.error {
            text += &format!("  error: {}\n", e);
        }
        for c in o.mismatches() {
            text += &format!("  {}: expected {} got {}\n", c.name, c.expected, c.got);
        }
        for c in &o.checks {
            csv += &format!("{},{},{}\n", o.id, c.name, c.passed);
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text += &format!("{} of {} passed\n", passed, outcomes.len());
    Ok(Report {
        text,
        csv,
        json: serde_json::to_value(&outcomes).expect("outcomes serialize"),
    })
}

fn run(cli: &Cli) -> Result<Report> {
    if cli.list_named {
        let rows = NamedSequence::catalogue();
        return Ok(Report {
            text: rows.iter().map(|(id, d)| format!("{:<22} {}\n", id, d)).collect(),
            csv: csv_table("id,description", rows.iter().map(|(id, d)| format!("{},\"{}\"", id, d))),
            json: json!(rows.iter().map(|(id, d)| json!({"id": id, "description": d})).collect::<Vec<_>>()),
        });
    }
    let Some(command) = &cli.command else {
        return Err(Error::InvalidInput("no command given; see --help".into()));
    };
    match command {
        Command::Expand {
            series,
            delta,
            quotients,
            depth,
            nmax,
        } => expand(series, *delta, *quotients, *depth, *nmax),
        Command::HfracQuadratic {
            field,
            a,
            b,
            c,
            delta,
            branch,
            named,
        } => {
            let (t, br) = quadratic_triple(
                field.as_deref(),
                (a.as_deref(), b.as_deref(), c.as_deref()),
                named.as_deref(),
                *delta,
                branch.as_deref(),
            )?;
            hfrac_quadratic(&t, br)
        }
        Command::Hankel { series, nmax, depth } => hankel(series, *nmax, *depth),
        Command::Oracle { series, nmax, ring } => oracle(series, *nmax, *ring),
        Command::Reproduce { ids, table, list } => {
            if *list {
                let ids: Vec<&str> = REPRODUCE_IDS.to_vec();
                return Ok(Report {
                    text: ids.iter().map(|id| format!("{}\n", id)).collect(),
                    csv: csv_table("id", ids.iter().map(|id| id.to_string())),
                    json: json!(ids),
                });
            }
            let all: Vec<String> = ids.iter().chain(table).cloned().collect();
            reproduce_report(&all)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Input => 1,
        ErrorClass::Unsupported => 2,
        ErrorClass::Internal => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match cli.format {
        Format::Text => report.text,
        Format::Csv => report.csv,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json renders");
            s.push('\n');
            s
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {}", e);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
