use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::str::FromStr;

use clap::CommandFactory;
use num_complex::Complex64;
use num_rational::BigRational;
use pie_core::arith::{CPolynomial, Coefficient};
use pie_core::identities::{
    check_all, check_identity, default_numeric_grid, reports_to_csv, reports_to_json, reports_to_text,
    CheckConfig, IdentityReport, Mode,
};
use pie_core::involution::{in_class, pair, verify_class};
use pie_core::partition::enumerate_distinct;
use pie_core::series::{series_a, series_dilcher_binomial, series_entry4, series_k, series_m, TruncatedSeries};
use pie_core::Error;

use crate::args::{CheckArgs, Cli, Command, Format, InvolutionArgs, ModeArg, SeriesArgs, SeriesName};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// What a command produced: its rendered output and whether every check
/// passed.
struct Outcome {
    text: String,
    ok: bool,
}

pub fn run(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Verify(v) => {
            let mode = match v.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Numeric => Mode::Numeric,
            };
            config(&v.check, mode).and_then(|cfg| {
                let reports = match v.id {
                    Some(id) => vec![check_identity(id, &cfg)?],
                    None => check_all(&cfg)?,
                };
                Ok(render_reports(&reports, cli.format(), v.check.timings))
            })
        }
        Command::ReportAll(check) => config(check, Mode::Exact).and_then(|exact| {
            let numeric = config(check, Mode::Numeric)?;
            let mut reports = check_all(&exact)?;
            reports.extend(check_all(&numeric)?);
            Ok(render_reports(&reports, cli.format(), check.timings))
        }),
        Command::Series(s) => series(s, cli.format()),
        Command::Involution(i) => involution(i, cli.format()),
    };
    match result {
        Ok(outcome) => match emit(cli, &outcome.text) {
            Ok(()) if outcome.ok => EXIT_OK,
            Ok(()) => EXIT_FAIL,
            Err(e) => {
                eprintln!("pie: cannot write output: {e}");
                EXIT_FAIL
            }
        },
        Err(e @ (Error::Usage(_) | Error::Range(_) | Error::Domain(_))) => {
            eprintln!("pie: {e}\n");
            eprintln!("{}", Cli::command().render_usage());
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("pie: {e}");
            EXIT_FAIL
        }
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn render_reports(reports: &[IdentityReport], format: Format, timings: bool) -> Outcome {
    let text = match format {
        Format::Json => reports_to_json(reports, timings),
        Format::Csv => reports_to_csv(reports, timings),
        Format::Text => reports_to_text(reports),
    };
    Outcome { text, ok: reports.iter().all(IdentityReport::passed) }
}

fn usage(msg: String) -> Error {
    Error::Usage(msg)
}

pub fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let t = s.trim();
    let normalized = match t {
        "i" | "+i" => "0+1i".to_string(),
        "-i" => "0-1i".to_string(),
        _ if t.ends_with("+i") || t.ends_with("-i") => format!("{}1i", &t[..t.len() - 1]),
        _ => t.to_string(),
    };
    Complex64::from_str(&normalized).map_err(|_| usage(format!("cannot parse {s:?} as a complex number")))
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    BigRational::from_str(s.trim()).map_err(|_| usage(format!("cannot parse {s:?} as a rational")))
}

fn config(args: &CheckArgs, mode: Mode) -> Result<CheckConfig, Error> {
    let mut cfg = CheckConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        mode,
        tolerance: args.tol,
        q_order: args.q_order,
        m_max: args.m_max,
        binomial_k_max: args.k_max,
        disk_radius: args.disk_radius,
        ..CheckConfig::default()
    };
    match mode {
        Mode::Exact => {
            if !args.z.is_empty() {
                cfg.exponents = args
                    .z
                    .iter()
                    .map(|z| z.trim().parse::<u32>().map_err(|_| usage(format!("exact-mode exponent {z:?} is not a nonnegative integer"))))
                    .collect::<Result<_, _>>()?;
            }
            if !args.c.is_empty() {
                cfg.c_values = args.c.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?;
            }
        }
        Mode::Numeric => {
            let default = default_numeric_grid();
            let mut zs: Vec<Complex64> = args.z.iter().map(|z| parse_complex(z)).collect::<Result<_, _>>()?;
            let mut cs: Vec<Complex64> = args.c.iter().map(|c| parse_complex(c)).collect::<Result<_, _>>()?;
            if zs.is_empty() && cs.is_empty() {
                cfg.numeric_grid = default;
            } else {
                if zs.is_empty() {
                    zs = unique(default.iter().map(|p| p.0));
                }
                if cs.is_empty() {
                    cs = unique(default.iter().map(|p| p.1));
                }
                cfg.numeric_grid = zs.iter().flat_map(|&z| cs.iter().map(move |&c| (z, c))).collect();
            }
        }
    }
    Ok(cfg)
}

fn unique(values: impl Iterator<Item = Complex64>) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn render_series<C: Coefficient>(s: &TruncatedSeries<C>, format: Format) -> String {
    match format {
        Format::Csv | Format::Text => s.to_csv(),
        Format::Json => {
            let rows: Vec<_> = s
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero_elem())
                .map(|(i, c)| serde_json::json!({ "coeff": c.to_string(), "power": i }))
                .collect();
            let mut out = serde_json::to_string_pretty(&rows).expect("rows are serializable");
            out.push('\n');
            out
        }
    }
}

fn series_for<C: Coefficient>(args: &SeriesArgs, c: &C) -> Result<TruncatedSeries<C>, Error> {
    match args.name {
        SeriesName::Entry4 => {
            let sides = series_entry4(c, args.order);
            if let Some(i) = sides.lhs.first_difference(&sides.rhs) {
                return Err(Error::Consistency(format!("the two sides differ at q^{i}")));
            }
            Ok(sides.lhs)
        }
        SeriesName::M => Ok(series_m(args.m, c, args.order)),
        SeriesName::K => series_k(args.m, c, args.order),
        SeriesName::A => series_a(c, args.order),
        SeriesName::Dilcher => unreachable!("handled without a weight"),
    }
}

fn series(args: &SeriesArgs, format: Format) -> Result<Outcome, Error> {
    if args.order == 0 {
        return Err(usage("q-order must be positive".into()));
    }
    let text = if args.name == SeriesName::Dilcher {
        let forms = series_dilcher_binomial::<BigRational>(args.m as usize, args.order)?;
        for (label, other) in [("alternating", &forms.alternating), ("nested", &forms.nested)] {
            if let Some(i) = forms.binomial_sum.first_difference(other) {
                return Err(Error::Consistency(format!("binomial and {label} forms differ at q^{i}")));
            }
        }
        render_series(&forms.binomial_sum, format)
    } else if args.c.trim().eq_ignore_ascii_case("symbolic") {
        render_series(&series_for(args, &CPolynomial::c())?, format)
    } else {
        render_series(&series_for(args, &parse_rational(&args.c)?)?, format)
    };
    Ok(Outcome { text, ok: true })
}

/// Lists (or traces) every pairing in one class. The listing is plain text
/// whatever the format.
fn involution(args: &InvolutionArgs, format: Format) -> Result<Outcome, Error> {
    if args.sweep {
        return sweep(args.n, format);
    }
    let divisor = args.divisor.expect("clap requires the divisor without --sweep");
    if divisor == 0 {
        return Err(usage("N must be positive".into()));
    }
    let mut text = String::new();
    for p in enumerate_distinct(args.n)? {
        if !in_class(&p, divisor)? {
            continue;
        }
        let trace = pair(&p, divisor)?;
        if args.trace {
            text.push_str(&trace.to_text());
            text.push('\n');
        } else {
            match &trace.output {
                Some(out) => writeln!(text, "{p} -> {out} ({})", trace.case),
                None => writeln!(text, "{p} fixed"),
            }
            .expect("writing to a string");
        }
    }
    let summary = verify_class(args.n, divisor)?;
    writeln!(
        text,
        "n={} N={divisor} class={} case1={} case2={} fixed={}",
        args.n, summary.class_size, summary.case1, summary.case2, summary.fixed
    )
    .expect("writing to a string");
    Ok(Outcome { text, ok: true })
}

fn sweep(n_max: u32, format: Format) -> Result<Outcome, Error> {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 1..=n_max {
        for divisor in 1..=n {
            match verify_class(n, divisor) {
                Ok(s) => rows.push((n, divisor, Some(s), None)),
                Err(e @ Error::AlgorithmFault(_)) => {
                    ok = false;
                    rows.push((n, divisor, None, Some(e.to_string())));
                }
                Err(e) => return Err(e),
            }
        }
    }
    let text = match format {
        Format::Json => {
            let values: Vec<_> = rows
                .iter()
                .map(|(n, d, s, err)| {
                    serde_json::json!({
                        "n": n,
                        "divisor": d,
                        "status": if err.is_none() { "pass" } else { "fail" },
                        "class_size": s.map(|s| s.class_size),
                        "fixed": s.map(|s| s.fixed),
                        "fault": err,
                    })
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&values).expect("rows are serializable");
            out.push('\n');
            out
        }
        Format::Csv | Format::Text => {
            let mut out = String::from("n,N,status,class_size,case1,case2,fixed\n");
            for (n, d, s, err) in &rows {
                match s {
                    Some(s) => writeln!(out, "{n},{d},pass,{},{},{},{}", s.class_size, s.case1, s.case2, s.fixed),
                    None => writeln!(out, "{n},{d},fail,,,,"),
                }
                .expect("writing to a string");
                if let Some(e) = err {
                    eprintln!("pie: n={n} N={d}: {e}");
                }
            }
            out
        }
    };
    Ok(Outcome { text, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_complex("0.5+0.5i").unwrap(), Complex64::new(0.5, 0.5));
        assert_eq!(parse_complex("2-i").unwrap(), Complex64::new(2.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("0.4-0.3i").unwrap(), Complex64::new(0.4, -0.3));
        assert!(parse_complex("x").is_err());
    }
}
