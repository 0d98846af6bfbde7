//! Command-line surface for the loosecycle toolkit.
//!
//! Exit codes: 0 found/success, 1 negative answer (no cycle, bound holds,
//! invalid certificate), 2 usage or input error, 3 search budget exhausted.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use loosecycle::codec::{self, EncodeOutcome, Encoding};
use loosecycle::decompose::{
    decompose_greedy, decomposition_budget_constant, partite_cycle_threshold,
};
use loosecycle::detect::{find_cycle_two_mod, find_loose_cycle, SearchBudget};
use loosecycle::enumerate::{count_colored_bicliques, count_cycle_free, growth_table};
use loosecycle::ramsey::{
    canonical_search, check_color_count_bound, srcycle_parse_cert, srcycle_to_cert,
    BipartiteColoring, CanonicalCertificate, ColorBoundOutcome,
};
use loosecycle::{
    validate_graph_cycle, validate_loose_cycle, EdgeColoredGraph, Error, GraphCycleCertificate,
    Hypergraph, LooseCycleCertificate, Rainbowness,
};

#[derive(Parser)]
#[command(name = "loosecycle", version, about = "Loose-cycle search, decomposition, codecs and exact counters for uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Seed for randomized search phases.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Node limit for budgeted searches (unbounded by default).
    #[arg(long, global = true)]
    node_limit: Option<u64>,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output style for the counting commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search a UHG file for a loose k-cycle; prints a certificate or NONE.
    Detect {
        /// Input hypergraph (UHG), `-` for standard input.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        k: usize,
    },
    /// Find a cycle of length 2 modulo h in a 2-uniform UHG file.
    Cycle2mod {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long = "h")]
        modulus: u32,
    },
    /// Decompose a UHG file into balanced complete r-partite blocks (DEC).
    Decompose {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Peel-encode a UHG file; prints an ENC container or a CERT witness.
    Encode {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        k: usize,
    },
    /// Decode an ENC container back to its UHG form.
    Decode {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Check any CERT block against its host file.
    Verify {
        /// Host file: UHG for LOOSE/CYCLE, CHG for SRCYCLE/RAINBOW/CANON/MONO.
        host: String,
        /// Certificate file.
        cert: String,
    },
    /// Canonical Ramsey search on an edge-colored complete bipartite CHG.
    Ramsey {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        l: u32,
    },
    /// Color-count bound check; prints a strongly rainbow cycle when it fails.
    Colorbound {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        l: u32,
    },
    /// Count loose-k-cycle-free r-graphs on [n] exactly.
    CountForb {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    /// Count colored bicliques with cycle-free extensions exactly.
    CountColored {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Exact counts over a range of n with the lower-bound column.
    Growth {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_from: u32,
        #[arg(long)]
        n_to: u32,
    },
    /// Print the decomposition budget constant enclosure (and, with --k,
    /// the partite cycle threshold).
    Constants {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((code, out)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, out).map_err(|e| e.to_string()),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::BudgetExhausted) => 3,
                Some(Error::Contradiction(_)) => 4,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<(u8, String)> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build_global()
        .context("building the worker pool")?;
    let budget = SearchBudget {
        node_limit: cli.node_limit.unwrap_or(u64::MAX),
        seed: cli.seed,
    };

    match &cli.cmd {
        Cmd::Detect { input, k } => {
            let h = Hypergraph::parse_uhg(&read_input(input)?)?;
            anyhow::ensure!(*k >= 3, "k must be at least 3");
            match find_loose_cycle(&h, *k, &budget)? {
                Some(cert) => Ok((0, cert.to_cert())),
                None => Ok((1, "NONE\n".into())),
            }
        }
        Cmd::Cycle2mod { input, modulus } => {
            let h = Hypergraph::parse_uhg(&read_input(input)?)?;
            anyhow::ensure!(h.uniformity() == 2, "cycle2mod expects a 2-uniform host");
            anyhow::ensure!(*modulus >= 2, "the modulus must be at least 2");
            match find_cycle_two_mod(&h, *modulus) {
                Some(cert) => Ok((0, cert.to_cert(*modulus))),
                None => Ok((1, "NONE\n".into())),
            }
        }
        Cmd::Decompose { input } => {
            let h = Hypergraph::parse_uhg(&read_input(input)?)?;
            Ok((0, decompose_greedy(&h).to_dec()))
        }
        Cmd::Encode { input, k } => {
            let h = Hypergraph::parse_uhg(&read_input(input)?)?;
            anyhow::ensure!(h.uniformity() >= 3, "encoding expects uniformity at least 3");
            anyhow::ensure!(*k >= 3, "k must be at least 3");
            match codec::encode(&h, *k) {
                EncodeOutcome::Encoded(enc) => Ok((0, enc.to_enc())),
                EncodeOutcome::Witness(cert) => Ok((0, cert.to_cert())),
            }
        }
        Cmd::Decode { input } => {
            let enc = Encoding::parse_enc(&read_input(input)?)?;
            Ok((0, codec::decode(&enc).to_uhg()))
        }
        Cmd::Verify { host, cert } => {
            let cert_text = read_input(cert)?;
            let host_text = read_input(host)?;
            match verify_any(&host_text, &cert_text) {
                Ok(()) => Ok((0, "VALID\n".into())),
                Err(reason) => Ok((1, format!("INVALID: {reason}\n"))),
            }
        }
        Cmd::Ramsey { input, l } => {
            let b = parse_bipartite(&read_input(input)?)?;
            anyhow::ensure!(*l >= 2, "l must be at least 2");
            match canonical_search(&b, *l, &budget)? {
                Some(cert) => Ok((0, cert.to_cert())),
                None => Ok((1, "NONE\n".into())),
            }
        }
        Cmd::Colorbound { input, l } => {
            let b = parse_bipartite(&read_input(input)?)?;
            anyhow::ensure!(*l >= 2, "l must be at least 2");
            match check_color_count_bound(&b, *l)? {
                ColorBoundOutcome::BoundHolds { colors, threshold } => {
                    Ok((1, format!("BOUND_HOLDS colors={colors} threshold={threshold}\n")))
                }
                ColorBoundOutcome::Witness(cert) => Ok((0, srcycle_to_cert(&cert, *l))),
            }
        }
        Cmd::CountForb { r, n, k } => {
            anyhow::ensure!(*k >= 3, "k must be at least 3");
            let report = count_cycle_free(*r, *n, *k, &budget)?;
            let line = match cli.format {
                Format::Table => report.summary(),
                Format::Records => report.record(),
            };
            Ok((0, format!("{line}\n")))
        }
        Cmd::CountColored { n, l, s, t } => {
            anyhow::ensure!(*l >= 2, "l must be at least 2");
            let report = count_colored_bicliques(*n, 2 * *l as usize, *s, *t)?;
            let line = match cli.format {
                Format::Table => report.summary(),
                Format::Records => report.record(),
            };
            Ok((0, format!("{line}\n")))
        }
        Cmd::Growth { r, k, n_from, n_to } => {
            anyhow::ensure!(*k >= 3, "k must be at least 3");
            anyhow::ensure!(n_from <= n_to, "empty range");
            let rows = growth_table(*r, *k, *n_from..=*n_to, &budget)?;
            let mut out = String::new();
            match cli.format {
                Format::Table => {
                    let _ = writeln!(
                        out,
                        "{:>4} {:>22} {:>12} {:>12} {:>3}",
                        "n", "count", "log2", "lower", "ok"
                    );
                    for row in &rows {
                        let _ = writeln!(
                            out,
                            "{:>4} {:>22} {:>12.6} {:>12} {:>3}",
                            row.n,
                            row.report.count.to_string(),
                            row.report.log2_f64(),
                            row.lower_bound_exponent,
                            if row.bound_ok { "yes" } else { "NO" }
                        );
                    }
                }
                Format::Records => {
                    for row in &rows {
                        let _ = writeln!(
                            out,
                            "{} lower={} ok={}",
                            row.report.record(),
                            row.lower_bound_exponent,
                            row.bound_ok
                        );
                    }
                }
            }
            Ok((0, out))
        }
        Cmd::Constants { r, k } => {
            anyhow::ensure!(*r >= 2, "r must be at least 2");
            let c1 = decomposition_budget_constant(*r);
            let mut out = format!(
                "c1_lo={:.9} c1_hi={:.9} width={:.3e}\n",
                c1.lo_f64(),
                c1.hi_f64(),
                c1.hi_f64() - c1.lo_f64()
            );
            if let Some(k) = k {
                anyhow::ensure!(*r >= 3 && *k >= 3, "the cycle threshold needs r >= 3 and k >= 3");
                let c2 = partite_cycle_threshold(*r, *k);
                let approx = loosecycle::num::ToPrimitive::to_f64(&c2).unwrap();
                let _ = writeln!(out, "c2prime={}/{} ({:.6})", c2.numer(), c2.denom(), approx);
            }
            Ok((0, out))
        }
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading standard input")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn parse_bipartite(text: &str) -> anyhow::Result<BipartiteColoring> {
    let g = EdgeColoredGraph::parse_chg(text)?;
    Ok(BipartiteColoring::from_colored_graph(&g)?)
}

/// Dispatches on the certificate header and rechecks it against the host.
fn verify_any(host_text: &str, cert_text: &str) -> Result<(), String> {
    let head = cert_text.lines().next().unwrap_or_default();
    let kind = head.split_whitespace().nth(1).unwrap_or_default();
    match kind {
        "LOOSE" => {
            let cert = LooseCycleCertificate::parse_cert(cert_text).map_err(|e| e.to_string())?;
            let host = Hypergraph::parse_uhg(host_text).map_err(|e| e.to_string())?;
            validate_loose_cycle(&host, &cert)
        }
        "CYCLE" => {
            let (cert, modulus) =
                GraphCycleCertificate::parse_cert(cert_text).map_err(|e| e.to_string())?;
            let host = Hypergraph::parse_uhg(host_text).map_err(|e| e.to_string())?;
            validate_graph_cycle(&host, &cert)?;
            if (cert.len() - 2) % modulus as usize != 0 {
                return Err(format!("length {} is not 2 modulo {modulus}", cert.len()));
            }
            Ok(())
        }
        "SRCYCLE" => {
            let (cert, l) = srcycle_parse_cert(cert_text).map_err(|e| e.to_string())?;
            let g = EdgeColoredGraph::parse_chg(host_text).map_err(|e| e.to_string())?;
            validate_graph_cycle(g.base(), &cert)?;
            if cert.len() != 2 * l as usize {
                return Err(format!("length {} is not 2l = {}", cert.len(), 2 * l));
            }
            if g.rainbowness(&cert.cycle_edges()) != Rainbowness::StronglyRainbow {
                return Err("cycle is not strongly rainbow".into());
            }
            Ok(())
        }
        "RAINBOW" | "CANON" | "MONO" => {
            let cert = CanonicalCertificate::parse_cert(cert_text).map_err(|e| e.to_string())?;
            let g = EdgeColoredGraph::parse_chg(host_text).map_err(|e| e.to_string())?;
            let b = BipartiteColoring::from_colored_graph(&g).map_err(|e| e.to_string())?;
            loosecycle::ramsey::validate_certificate(&b, &cert)
        }
        other => Err(format!("unknown certificate kind {other:?}")),
    }
}
