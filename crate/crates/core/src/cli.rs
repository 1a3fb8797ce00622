//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it with in-memory buffers.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::census::{
    full_census, iso_pair_generator, unitary_classes, CensusOptions, GroupingMode, CONSTRUCTION_KINDS,
};
use crate::config::{OutputFormat, RunConfig};
use crate::error::Error;
use crate::field::{prime_power_parts, Field};
use crate::graph::{build_graph, char_poly_spectral};
use crate::iso::is_isomorphic;
use crate::parse::{parse_poly, parse_poly_list};
use crate::poly::Poly;
use crate::prime_power::{pp_report, pp_report_json, pp_structure, PrimePowerSpec};
use crate::ramanujan::{recover_divisor_set, spectral_vector};
use crate::verify::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gcdgraph", version, about = "Exact spectra and isomorphism classes of gcd-graphs over F_q[x]")]
struct Cli {
    /// TOML file with defaults and caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// json | dot | text | csv
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Field order, a prime power.
    #[arg(long)]
    q: Option<u32>,
    /// Modulus, e.g. "x^2*(x+1)".
    #[arg(long)]
    f: String,
    /// Comma-separated proper monic divisors of f.
    #[arg(long = "D", default_value = "")]
    d: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues with multiplicities, from Ramanujan sums.
    Spectrum(GraphArgs),
    /// Characteristic polynomial in factored form.
    Charpoly {
        #[command(flatten)]
        graph: GraphArgs,
        /// Compute from the adjacency matrix instead of the spectral vector.
        #[arg(long)]
        matrix: bool,
    },
    /// Materialize G_f(D).
    Graph(GraphArgs),
    /// Closed-form report for a prime-power modulus f = P^k.
    PpReport(GraphArgs),
    /// Group all divisor sets of f by characteristic polynomial.
    Census {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        f: String,
        /// isospectral | isomorphism
        #[arg(long, default_value = "isospectral")]
        mode: String,
        /// Skip isomorphism certificates inside classes.
        #[arg(long)]
        no_verify: bool,
    },
    /// Recompute a published table: 1, 2 or 3.
    Table {
        which: u32,
        /// Field orders for table 3.
        #[arg(long, default_value = "2,3,4,5,7,8,9,11")]
        q: String,
        /// Degrees for table 3, a list or an inclusive range "a..b".
        #[arg(long, default_value = "1..6")]
        n: String,
    },
    /// Run a named property suite, or "all".
    Verify { suite: String },
    /// Generate isomorphism claims and certify them, or check one pair.
    IsoCheck {
        /// Construction kind or "all".
        #[arg(long, default_value = "all")]
        kind: String,
        /// Field orders to sweep.
        #[arg(long, default_value = "2,3,5")]
        q: String,
        #[arg(long, default_value_t = 256)]
        max_vertices: u64,
        /// Check G_f(D1) against G_f(D2) instead of sweeping.
        #[arg(long)]
        f: Option<String>,
        #[arg(long = "D1")]
        d1: Option<String>,
        #[arg(long = "D2")]
        d2: Option<String>,
    },
    /// Recover D from the spectral vector restricted to the monic divisors of f.
    RecoverD {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        f: String,
        /// Comma-separated eigenvalues, one per monic divisor in (degree, lex) order.
        #[arg(long)]
        vector: String,
    },
}

/// Process-level failure: exit code plus message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::CapExceeded { .. } | Error::SearchBudget(_) => EXIT_CAP,
            Error::Inconsistency(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure { code: EXIT_VIOLATION, message: e.to_string() }
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let format = cli.format.or(cfg.format);
    let ctx = Ctx { cfg, format };
    match cli.command {
        Command::Spectrum(a) => ctx.spectrum(&a, out),
        Command::Charpoly { graph, matrix } => ctx.charpoly(&graph, matrix, out),
        Command::Graph(a) => ctx.graph(&a, out),
        Command::PpReport(a) => ctx.pp_report(&a, out),
        Command::Census { q, f, mode, no_verify } => ctx.census(q, &f, &mode, !no_verify, out),
        Command::Table { which, q, n } => ctx.table(which, &q, &n, out),
        Command::Verify { suite } => ctx.verify(&suite, out),
        Command::IsoCheck { kind, q, max_vertices, f, d1, d2 } => match (f, d1, d2) {
            (Some(f), Some(d1), Some(d2)) => ctx.iso_pair(&q, &f, &d1, &d2, out),
            (None, None, None) => ctx.iso_sweep(&kind, &q, max_vertices, out),
            _ => Err(Failure { code: EXIT_USAGE, message: "--f, --D1 and --D2 go together".into() }),
        },
        Command::RecoverD { q, f, vector } => ctx.recover(q, &f, &vector, out),
    }
}

struct Ctx {
    cfg: RunConfig,
    format: Option<OutputFormat>,
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))
}

fn unsupported(format: OutputFormat, cmd: &str) -> Failure {
    Failure { code: EXIT_USAGE, message: format!("format {format:?} is not available for {cmd}").to_lowercase() }
}

fn parse_list<T: std::str::FromStr>(src: &str, what: &str) -> std::result::Result<Vec<T>, Failure> {
    src.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure { code: EXIT_USAGE, message: format!("bad {what}: {s:?}") }))
        .collect()
}

fn parse_range(src: &str) -> std::result::Result<Vec<usize>, Failure> {
    match src.split_once("..") {
        Some((a, b)) => {
            let bad = || Failure { code: EXIT_USAGE, message: format!("bad range {src:?}") };
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok((a..=b).collect())
        }
        None => parse_list(src, "degree"),
    }
}

impl Ctx {
    fn field(&self, q: Option<u32>) -> std::result::Result<Field, Failure> {
        let q = q.or(self.cfg.q).ok_or(Failure { code: EXIT_USAGE, message: "missing --q".into() })?;
        let (p, k) = prime_power_parts(q as u64).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Ok(Field::with_cap(p as u32, k, self.cfg.caps.max_field_order)?)
    }

    fn modulus_and_set(&self, a: &GraphArgs) -> std::result::Result<(Poly, Vec<Poly>), Failure> {
        let field = self.field(a.q)?;
        let f = parse_poly(&field, &a.f)?;
        let d = parse_poly_list(&field, &a.d)?;
        Ok((f, d))
    }

    fn spectrum(&self, a: &GraphArgs, out: &mut dyn Write) -> CliResult {
        let (f, d) = self.modulus_and_set(a)?;
        let sv = spectral_vector(&f, &d)?;
        match self.format.unwrap_or(OutputFormat::Text) {
            OutputFormat::Json => json_line(out, &sv.to_json())?,
            OutputFormat::Text => {
                let n: u64 = sv.multiset().iter().map(|m| m.1).sum();
                writeln!(out, "vertices: {n}")?;
                for (v, m) in sv.multiset() {
                    writeln!(out, "{v}: {m}")?;
                }
            }
            OutputFormat::Csv => {
                writeln!(out, "eigenvalue,multiplicity")?;
                for (v, m) in sv.multiset() {
                    writeln!(out, "{v},{m}")?;
                }
            }
            other => return Err(unsupported(other, "spectrum")),
        }
        Ok(EXIT_OK)
    }

    fn charpoly(&self, a: &GraphArgs, matrix: bool, out: &mut dyn Write) -> CliResult {
        let (f, d) = self.modulus_and_set(a)?;
        let cp = if matrix {
            build_graph(&f, &d, self.cfg.caps.max_vertices)?.graph().char_poly(self.cfg.caps.max_matrix_vertices)?
        } else {
            char_poly_spectral(&f, &d)?
        };
        match self.format.unwrap_or(OutputFormat::Text) {
            OutputFormat::Text => writeln!(out, "{cp}")?,
            OutputFormat::Json => {
                let coeffs: Vec<String> = cp.coeffs().iter().map(|c| c.to_string()).collect();
                json_line(
                    out,
                    &serde_json::json!({"charpoly": cp.factored_string(), "expanded": cp.expanded_string(), "coefficients": coeffs}),
                )?
            }
            other => return Err(unsupported(other, "charpoly")),
        }
        Ok(EXIT_OK)
    }

    fn graph(&self, a: &GraphArgs, out: &mut dyn Write) -> CliResult {
        let (f, d) = self.modulus_and_set(a)?;
        let g = build_graph(&f, &d, self.cfg.caps.max_vertices)?;
        match self.format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => json_line(out, &g.to_json())?,
            OutputFormat::Dot => write!(out, "{}", g.graph().to_dot("G"))?,
            OutputFormat::Text => {
                writeln!(out, "vertices: {} edges: {}", g.graph().vertex_count(), g.graph().edge_count())?;
                for (u, v) in g.graph().edges() {
                    writeln!(out, "{u} {v}")?;
                }
            }
            OutputFormat::Csv => {
                writeln!(out, "u,v")?;
                for (u, v) in g.graph().edges() {
                    writeln!(out, "{u},{v}")?;
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn pp_report(&self, a: &GraphArgs, out: &mut dyn Write) -> CliResult {
        let (f, d) = self.modulus_and_set(a)?;
        let spec = PrimePowerSpec::from_divisor_set(&f, &d)?;
        match self.format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => json_line(out, &pp_report_json(&spec))?,
            OutputFormat::Text => {
                let report = pp_report(&spec);
                let st = pp_structure(&spec);
                writeln!(out, "P = {}, k = {}, exponents = {:?}", spec.prime(), spec.k(), spec.exponents())?;
                for c in &report.classes {
                    writeln!(out, "t = {}: lambda = {}, multiplicity = {}", c.t, c.lambda, c.mult)?;
                }
                let fl = &report.flags;
                writeln!(
                    out,
                    "has_zero = {}, has_neg_one = {}, has_one = {}, exactly_two_distinct = {}",
                    fl.has_zero, fl.has_neg_one, fl.has_one, fl.exactly_two_distinct
                )?;
                writeln!(
                    out,
                    "components = {}, bipartite = {}, clique = {}, chromatic = {}, independence = {}",
                    st.components, st.bipartite, st.clique_number, st.chromatic_number, st.independence_number
                )?;
                writeln!(out, "decomposition = {}", st.decomposition)?;
            }
            other => return Err(unsupported(other, "pp-report")),
        }
        Ok(EXIT_OK)
    }

    fn census_opts(&self, mode: &str, verify: bool) -> std::result::Result<CensusOptions, Failure> {
        let mode = match mode {
            "isospectral" => GroupingMode::Isospectral,
            "isomorphism" => GroupingMode::Isomorphism,
            other => return Err(Failure { code: EXIT_USAGE, message: format!("unknown mode {other:?}") }),
        };
        Ok(CensusOptions {
            mode,
            verify_isomorphism: verify,
            max_vertices: self.cfg.caps.max_census_vertices,
            max_tau: self.cfg.caps.max_tau,
        })
    }

    fn census(&self, q: Option<u32>, f: &str, mode: &str, verify: bool, out: &mut dyn Write) -> CliResult {
        let field = self.field(q)?;
        let f = parse_poly(&field, f)?;
        self.emit_census(&f, &self.census_opts(mode, verify)?, out)
    }

    fn emit_census(&self, f: &Poly, opts: &CensusOptions, out: &mut dyn Write) -> CliResult {
        let report = full_census(f, opts)?;
        match self.format.unwrap_or(OutputFormat::Text) {
            OutputFormat::Text => write!(out, "{}", report.to_text())?,
            OutputFormat::Json => json_line(out, &report.to_json())?,
            other => return Err(unsupported(other, "census")),
        }
        Ok(EXIT_OK)
    }

    fn table(&self, which: u32, qs: &str, ns: &str, out: &mut dyn Write) -> CliResult {
        match which {
            1 | 2 => {
                let field = Field::new(3, 1)?;
                let f = parse_poly(&field, if which == 1 { "x*(x+1)" } else { "x^2*(x+1)" })?;
                self.emit_census(&f, &self.census_opts("isospectral", true)?, out)
            }
            3 => {
                let qs: Vec<u64> = parse_list(qs, "field order")?;
                let ns = parse_range(ns)?;
                let mut rows = Vec::new();
                for &n in &ns {
                    let counts = qs.iter().map(|&q| unitary_classes(q, n).map(|t| t.count)).collect::<Result<Vec<_>, _>>()?;
                    rows.push((n, counts));
                }
                match self.format.unwrap_or(OutputFormat::Csv) {
                    OutputFormat::Csv | OutputFormat::Text => {
                        let header: Vec<String> = qs.iter().map(|q| q.to_string()).collect();
                        writeln!(out, "n,{}", header.join(","))?;
                        for (n, counts) in rows {
                            let cells: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                            writeln!(out, "{n},{}", cells.join(","))?;
                        }
                    }
                    OutputFormat::Json => {
                        let rows: Vec<_> = rows.into_iter().map(|(n, c)| serde_json::json!({"n": n, "counts": c})).collect();
                        json_line(out, &serde_json::json!({"q": qs, "rows": rows}))?
                    }
                    other => return Err(unsupported(other, "table 3")),
                }
                Ok(EXIT_OK)
            }
            other => Err(Failure { code: EXIT_USAGE, message: format!("no table {other}; expected 1, 2 or 3") }),
        }
    }

    fn verify(&self, suite: &str, out: &mut dyn Write) -> CliResult {
        let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
        let mut code = EXIT_OK;
        for name in names {
            let report = run_suite(name)?;
            write!(out, "{}", report.to_text())?;
            if !report.passed() {
                code = EXIT_VIOLATION;
            }
        }
        Ok(code)
    }

    fn iso_sweep(&self, kind: &str, qs: &str, max_vertices: u64, out: &mut dyn Write) -> CliResult {
        let kinds: Vec<&str> = if kind == "all" { CONSTRUCTION_KINDS.to_vec() } else { vec![kind] };
        let cap = self.cfg.caps.max_iso_vertices;
        let mut failures = 0;
        let mut total = 0;
        for q in parse_list::<u32>(qs, "field order")? {
            let field = self.field(Some(q))?;
            for &k in &kinds {
                for claim in iso_pair_generator(k, &field, max_vertices)? {
                    let ok = claim.verify(cap)?;
                    total += 1;
                    if !ok {
                        failures += 1;
                    }
                    writeln!(out, "{} q = {q} {}", if ok { "ok  " } else { "FAIL" }, claim.describe())?;
                }
            }
        }
        writeln!(out, "{total} claims, {failures} failures")?;
        Ok(if failures == 0 { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn iso_pair(&self, qs: &str, f: &str, d1: &str, d2: &str, out: &mut dyn Write) -> CliResult {
        let q: Vec<u32> = parse_list(qs, "field order")?;
        let field = self.field(q.first().copied().or(self.cfg.q))?;
        let f = parse_poly(&field, f)?;
        let cap = self.cfg.caps.max_iso_vertices;
        let a = build_graph(&f, &parse_poly_list(&field, d1)?, cap)?;
        let b = build_graph(&f, &parse_poly_list(&field, d2)?, cap)?;
        let cert = is_isomorphic(a.graph(), b.graph(), cap)?;
        match self.format.unwrap_or(OutputFormat::Text) {
            OutputFormat::Text => writeln!(out, "{}", if cert.is_some() { "isomorphic" } else { "not isomorphic" })?,
            OutputFormat::Json => json_line(out, &serde_json::json!({"isomorphic": cert.is_some(), "certificate": cert}))?,
            other => return Err(unsupported(other, "iso-check")),
        }
        Ok(EXIT_OK)
    }

    fn recover(&self, q: Option<u32>, f: &str, vector: &str, out: &mut dyn Write) -> CliResult {
        let field = self.field(q)?;
        let f = parse_poly(&field, f)?;
        let v: Vec<i64> = parse_list(vector, "eigenvalue")?;
        let d = recover_divisor_set(&f, &v)?;
        match self.format.unwrap_or(OutputFormat::Text) {
            OutputFormat::Text => writeln!(out, "{}", crate::census::divisor_set_label(&d))?,
            OutputFormat::Json => json_line(out, &d.iter().map(Poly::to_json).collect::<Vec<_>>())?,
            other => return Err(unsupported(other, "recover-d")),
        }
        Ok(EXIT_OK)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gcdgraph").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn charpoly_example() {
        let (code, out, _) = call(&["charpoly", "--q", "3", "--f", "x*(x+1)", "--D", "1,x"]);
        assert_eq!((code, out.as_str()), (0, "(x - 6)*(x + 3)^2*x^6\n"));
        let (_, out, _) = call(&["charpoly", "--q", "3", "--f", "x*(x+1)", "--D", "1,x", "--matrix"]);
        assert_eq!(out, "(x - 6)*(x + 3)^2*x^6\n");
    }

    #[test]
    fn spectrum_example() {
        let (code, out, _) = call(&["spectrum", "--q", "3", "--f", "x", "--D", ""]);
        assert_eq!((code, out.as_str()), (0, "vertices: 3\n0: 3\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["spectrum", "--f", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["spectrum", "--q", "6", "--f", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["spectrum", "--q", "3", "--f", "x^"]).0, EXIT_USAGE);
        assert_eq!(call(&["spectrum", "--q", "3", "--f", "x", "--D", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["graph", "--q", "3", "--f", "x^7"]).0, EXIT_CAP);
        assert_eq!(call(&["census", "--q", "2", "--f", "x^7"]).0, EXIT_CAP);
        assert_eq!(call(&["spectrum", "--q", "64", "--f", "x"]).0, EXIT_CAP);
        assert_eq!(call(&["table", "4"]).0, EXIT_USAGE);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("charpoly"));
    }

    #[test]
    fn table3_csv() {
        let (code, out, _) = call(&["table", "3", "--q", "2,3,4,5,7,8,9,11", "--n", "1..6"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "n,2,3,4,5,7,8,9,11\n1,1,1,1,1,1,1,1,1\n2,3,3,3,3,3,3,3,3\n3,4,5,5,5,5,5,5,5\n\
             4,7,9,10,10,10,10,10,10\n5,9,12,13,14,14,14,14,14\n6,15,22,24,25,26,26,26,26\n"
        );
    }
}
