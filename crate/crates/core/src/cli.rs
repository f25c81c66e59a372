//! Command-line front end. `run` does all the work and returns the exit code and
//! the text to print, so the binary is a thin wrapper and tests can call it directly.
//!
//! Exit codes: 0 success, 2 invalid input, 3 size bound refused.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abelian::{class_counts, count_euclidean_abelian, count_hermitian_abelian, cyclotomic_classes, AbelianGroup};
use crate::chain_ring::PolyRing;
use crate::error::{Error, Result};
use crate::ideal_canon::{count_all_ideals, enumerate_ideals, CanonicalIdeal, CodeParams};
use crate::oracle::CensusMode;
use crate::selfdual::{count_selfdual, enumerate_selfdual, InnerProduct};
use crate::verify::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "chaincodes", version, about = "Cyclic and abelian codes over F_{p^k} + uF_{p^k}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count cyclic, self-dual cyclic, or self-dual abelian codes.
    Count {
        #[command(subcommand)]
        what: CountWhat,
    },
    /// List cyclic or self-dual cyclic codes by canonical generators.
    List {
        #[command(subcommand)]
        what: ListWhat,
    },
    /// 2^k-cyclotomic classes of an odd abelian group, with their types.
    Classes {
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check the library against brute force at one parameter point.
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Omit per-check timings so the report is reproducible byte for byte.
        #[arg(long)]
        no_timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum CountWhat {
    Cyclic {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    SelfDual {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Inner::Euclidean)]
        inner: Inner,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    Abelian {
        /// Comma-separated odd cyclic orders; 1 for the trivial group.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Inner::Euclidean)]
        inner: Inner,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum ListWhat {
    Cyclic {
        #[command(flatten)]
        ring: RingArgs,
        /// Only codes with T1 = i1.
        #[arg(long)]
        i1: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    SelfDual {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Inner::Euclidean)]
        inner: Inner,
        #[arg(long)]
        i1: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct RingArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Inner {
    Euclidean,
    Hermitian,
}

impl From<Inner> for InnerProduct {
    fn from(i: Inner) -> Self {
        match i {
            Inner::Euclidean => InnerProduct::Euclidean,
            Inner::Hermitian => InnerProduct::Hermitian,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Cheap,
}

/// A report in all three output formats: JSON value, CSV rows, text lines.
struct Report {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: Vec<String>,
}

impl Report {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("plain data serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                    let _ = writeln!(s, "{}", cells.join(","));
                }
                s
            }
            Format::Text => self.text.iter().map(|l| format!("{l}\n")).collect(),
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn params(r: &RingArgs) -> Result<CodeParams> {
    CodeParams::new(r.p, r.k, r.s)
}

fn ring(r: &RingArgs) -> Result<std::sync::Arc<PolyRing>> {
    PolyRing::create(r.p, r.k, r.s)
}

fn scalar_report(json: Value, fields: &[&'static str]) -> Report {
    let value = |f: &str| match &json[f] {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    Report {
        header: fields.to_vec(),
        rows: vec![fields.iter().map(|f| value(f)).collect()],
        text: fields.iter().map(|f| format!("{f}: {}", value(f))).collect(),
        json,
    }
}

fn ideal_report(head: Value, ideals: &[CanonicalIdeal]) -> Report {
    let mut json = head;
    json["count"] = Value::String(ideals.len().to_string());
    json["ideals"] = Value::Array(ideals.iter().map(|c| c.to_json()).collect());
    let rows = ideals
        .iter()
        .map(|c| {
            let h: Vec<String> = c.to_json()["h"]
                .as_array()
                .expect("h is an array")
                .iter()
                .map(|d| d.as_str().unwrap_or_default().to_string())
                .collect();
            vec![c.t0().to_string(), c.t1().to_string(), h.join(";"), c.render()]
        })
        .collect();
    Report {
        json,
        header: vec!["T0", "T1", "h", "generators"],
        rows,
        text: ideals.iter().map(|c| c.render()).collect(),
    }
}

fn dispatch(cmd: Command) -> Result<(Report, Format)> {
    Ok(match cmd {
        Command::Count { what } => match what {
            CountWhat::Cyclic { ring, format } => {
                let c = count_all_ideals(params(&ring)?)?;
                let json = json!({
                    "p": ring.p, "k": ring.k, "s": ring.s,
                    "count": c.count,
                    "closed_form": c.closed_form,
                    "closed_form_mismatch": c.closed_form_mismatch,
                });
                let fields = ["p", "k", "s", "count", "closed_form", "closed_form_mismatch"];
                (scalar_report(json, &fields), format)
            }
            CountWhat::SelfDual { ring, inner, format } => {
                let c = count_selfdual(params(&ring)?, inner.into())?;
                let mut json = serde_json::to_value(&c).expect("plain data serializes");
                json["p"] = json!(ring.p);
                json["k"] = json!(ring.k);
                json["s"] = json!(ring.s);
                let mut report = scalar_report(json, &["inner", "p", "k", "s", "count", "closed_form", "closed_form_mismatch"]);
                report.header = vec!["i1", "dimension", "count"];
                report.rows = c
                    .by_torsion_degree
                    .iter()
                    .map(|t| vec![t.i1.to_string(), t.dimension.to_string(), t.count.to_string()])
                    .collect();
                (report, format)
            }
            CountWhat::Abelian { group, k, s, inner, format } => {
                let g = AbelianGroup::new(&group)?;
                let c = match InnerProduct::from(inner) {
                    InnerProduct::Euclidean => count_euclidean_abelian(&g, k, s)?,
                    InnerProduct::Hermitian => count_hermitian_abelian(&g, k, s)?,
                };
                let json = serde_json::to_value(&c).expect("plain data serializes");
                let mut report = scalar_report(json, &["inner", "k", "s", "count"]);
                report.header = vec!["d", "ord", "predicate", "base", "base_value", "exponent"];
                report.rows = c
                    .factors
                    .iter()
                    .map(|f| {
                        vec![
                            f.d.to_string(),
                            f.ord.to_string(),
                            f.predicate.to_string(),
                            f.base.to_string(),
                            f.base_value.to_string(),
                            f.exponent.to_string(),
                        ]
                    })
                    .collect();
                report.text.extend(
                    c.factors
                        .iter()
                        .map(|f| format!("d={} ord={} {}={}^{}", f.d, f.ord, f.base, f.base_value, f.exponent)),
                );
                (report, format)
            }
        },
        Command::List { what } => match what {
            ListWhat::Cyclic { ring: r, i1, format } => {
                let ring = ring(&r)?;
                let ideals: Vec<_> = enumerate_ideals(&ring)?.filter(|c| i1.is_none_or(|i| c.t1() == i)).collect();
                (ideal_report(json!({"p": r.p, "k": r.k, "s": r.s}), &ideals), format)
            }
            ListWhat::SelfDual { ring: r, inner, i1, format } => {
                let inner = InnerProduct::from(inner);
                if inner == InnerProduct::Hermitian && r.k % 2 != 0 {
                    return Err(Error::OddDegree(r.k));
                }
                let ring = ring(&r)?;
                let ideals = enumerate_selfdual(&ring, inner, i1)?;
                let head = json!({"inner": inner.name(), "p": r.p, "k": r.k, "s": r.s});
                (ideal_report(head, &ideals), format)
            }
        },
        Command::Classes { group, k, format } => {
            let g = AbelianGroup::new(&group)?;
            let classes = cyclotomic_classes(&g, k)?;
            let counts = class_counts(&classes);
            let json = json!({
                "group": group,
                "k": k,
                "order": g.order().to_string(),
                "exponent": g.exponent().to_string(),
                "counts": counts,
                "classes": classes,
            });
            let show = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            let name = |t: Value| t.as_str().unwrap_or("").to_string();
            let rows: Vec<Vec<String>> = classes
                .iter()
                .map(|c| {
                    vec![
                        show(&c.representative),
                        c.members.iter().map(|m| show(m)).collect::<Vec<_>>().join(";"),
                        c.element_order.to_string(),
                        name(serde_json::to_value(c.type_euclidean).expect("enum serializes")),
                        c.partner_euclidean.map_or(String::new(), |i| i.to_string()),
                        c.type_hermitian
                            .map_or(String::new(), |t| name(serde_json::to_value(t).expect("enum serializes"))),
                        c.partner_hermitian.map_or(String::new(), |i| i.to_string()),
                    ]
                })
                .collect();
            let text = rows
                .iter()
                .map(|r| format!("{{{}}} order {} type {} {}", r[1].replace(';', ", "), r[2], r[3], r[5]).trim_end().to_string())
                .collect();
            let report = Report {
                json,
                header: vec!["representative", "members", "order", "type", "partner", "hermitian_type", "hermitian_partner"],
                rows,
                text,
            };
            (report, format)
        }
        Command::Verify { ring, mode, no_timings, format } => {
            let mode = match mode {
                Mode::Exhaustive => CensusMode::Exhaustive,
                Mode::Cheap => CensusMode::Cheap,
            };
            let r = verify(ring.p, ring.k, ring.s, mode, !no_timings)?;
            let rows = r.checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string()]).collect();
            let text = r
                .checks
                .iter()
                .map(|c| format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name))
                .collect();
            let report = Report {
                json: serde_json::to_value(&r).expect("plain data serializes"),
                header: vec!["check", "passed"],
                rows,
                text,
            };
            (report, format)
        }
    })
}

/// Parses `argv` (program name first) and executes it.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok((report, format)) => (EXIT_OK, report.render(format)),
        Err(e) => {
            let code = if e.is_size_bound() { EXIT_SIZE_BOUND } else { EXIT_INVALID };
            (code, format!("error: {e}\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> (i32, Value) {
        let (code, out) = run(std::iter::once("chaincodes").chain(args.split_whitespace()));
        (code, serde_json::from_str(&out).unwrap_or(Value::Null))
    }

    #[test]
    fn counts() {
        assert_eq!(call("count cyclic --p 2 --k 1 --s 2").1["count"], "23");
        let (code, v) = call("count self-dual --inner euclidean --p 2 --k 1 --s 1");
        assert_eq!(code, 0);
        assert_eq!(v["count"], "3");
        assert_eq!(call("count abelian --group 3 --k 1 --s 1 --inner euclidean").1["count"], "9");
        assert_eq!(call("count abelian --group 1 --k 1 --s 1").1["count"], "3");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("count self-dual --inner hermitian --p 2 --k 1 --s 1").0, 2);
        assert_eq!(call("count cyclic --p 4 --k 1 --s 1").0, 2);
        assert_eq!(call("count cyclic --p 2 --k 1").0, 2);
        assert_eq!(call("count abelian --group 4 --k 1 --s 1").0, 2);
        assert_eq!(call("list cyclic --p 3 --k 2 --s 3").0, 3);
        assert_eq!(call("verify --p 3 --k 1 --s 2").0, 3);
        assert_eq!(run(["chaincodes", "--help"]).0, 0);
    }

    #[test]
    fn formats() {
        let (_, csv) = run(["chaincodes", "list", "self-dual", "--p", "2", "--k", "1", "--s", "1", "--format", "csv"]);
        assert_eq!(csv.lines().next(), Some("T0,T1,h,generators"));
        assert_eq!(csv.lines().count(), 4);
        let (_, text) = run(["chaincodes", "classes", "--group", "7", "--k", "1", "--format", "text"]);
        assert_eq!(text.lines().count(), 3);
        let (_, text) = run(["chaincodes", "count", "cyclic", "--p", "3", "--k", "1", "--s", "1", "--format", "text"]);
        assert!(text.contains("closed_form_mismatch: true"));
    }

    #[test]
    fn listing_filter() {
        let (_, v) = call("list self-dual --p 2 --k 1 --s 2 --i1 2");
        assert_eq!(v["count"], "4");
        let (_, v) = call("list cyclic --p 2 --k 1 --s 1 --i1 0");
        assert_eq!(v["count"], "3");
    }
}
