use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncpk::bijections::{
    gj_tree, ideal_to_path, nc_to_nn, path_decompose, phi, phi_inverse, split_and_contract, tree_to_dyck, enumerate_ideals,
    LatticePath, ParkingFunction,
};
use ncpk::geometry::{build_cambrian, theta_class, CambrianElement};
use ncpk::hurwitz::{orbit_report, staircase, CommClass, Factorization, DEFAULT_MAX_STATES};
use ncpk::mdiv::{build_mposet, m_maximal_chains, m_mobius, m_rank_jump_count, mzeta, MobiusVariant};
use ncpk::nc::{enumerate_nc, NoncrossingElement};
use ncpk::poset::{
    build_poset, census_csv, count_by_rank, count_elements, count_maximal_chains, count_multichains_by_jump, mobius_invariant,
    to_dot, zeta, RankJumpVector,
};
use ncpk::typeb::typeb_report;
use ncpk::verify::{run_verify, VerifyConfig};
use ncpk::{Error, KParams, Permutation};

#[derive(Parser)]
#[command(name = "ncpk", version, about = "k-indivisible noncrossing partitions: counts, posets, factorizations, bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Cap on breadth-first search states.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Args, Clone, Copy)]
struct KN {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
}

impl KN {
    fn params(self) -> ncpk::Result<KParams> {
        KParams::new(self.k, self.n)
    }
}

#[derive(Subcommand)]
enum Command {
    /// |NC_{N;k}|, or the number of elements of one rank.
    Count {
        #[command(flatten)]
        kn: KN,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// List the elements, optionally of one rank.
    Enumerate {
        #[command(flatten)]
        kn: KN,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Build the poset: summary, rank census (csv) or Hasse diagram (dot).
    Poset {
        #[command(flatten)]
        kn: KN,
    },
    /// Maximal chains, or multichains with given rank jumps.
    Chains {
        #[command(flatten)]
        kn: KN,
        /// Comma-separated jump vector summing to n.
        #[arg(long)]
        jumps: Option<String>,
    },
    /// Zeta polynomial at q, closed form against the multichain count.
    Zeta {
        #[command(flatten)]
        kn: KN,
        /// May be negative: `--q -1` gives the Möbius invariant.
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Möbius invariant, closed form against the poset.
    Mobius {
        #[command(flatten)]
        kn: KN,
    },
    /// The poset of m-multichains.
    Mdiv {
        #[command(flatten)]
        kn: KN,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        jumps: Option<String>,
    },
    /// Hurwitz orbit of a factorization (default: the staircase).
    Hurwitz {
        #[command(flatten)]
        kn: KN,
        /// Factorization such as "(1 2 3)|(3 4 5)".
        #[arg(long)]
        start: Option<String>,
    },
    /// Commutation classes ordered by clockwise rotation of dissections.
    Cambrian {
        #[command(flatten)]
        kn: KN,
        #[arg(long, default_value_t = 20_000)]
        max_elements: usize,
    },
    /// Run one bijection on one input.
    Bijection {
        #[command(flatten)]
        kn: KN,
        /// Factorization to send to its parking function.
        #[arg(long, conflicts_with_all = ["parking", "element"])]
        factorization: Option<String>,
        /// Comma-separated parking function to send to its factorization.
        #[arg(long, conflicts_with = "element")]
        parking: Option<String>,
        /// Element of NC to send through the tree and path bijections.
        #[arg(long)]
        element: Option<String>,
    },
    /// Order ideals of the triangular poset and their paths.
    Nonnesting {
        #[command(flatten)]
        kn: KN,
        /// Split one path (a word over U, R) instead of listing.
        #[arg(long)]
        path: Option<String>,
    },
    /// Type-B orbit, prefix census and restricted zeta.
    TypebOrbit {
        #[command(flatten)]
        kn: KN,
        #[arg(long, default_value_t = 3)]
        max_q: usize,
    },
    /// Every closed form against brute force up to the given sizes.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
}

fn parse_jumps(text: &str, n: usize) -> ncpk::Result<RankJumpVector> {
    let parts = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
        .collect::<ncpk::Result<Vec<_>>>()?;
    RankJumpVector::new(parts, n)
}

fn unsupported(format: Format) -> Error {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Dot => "dot",
    };
    Error::InvalidInput(format!("--format {name} is not available for this subcommand"))
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

/// Output text and whether a verification failed.
fn run(cli: &Cli) -> ncpk::Result<(String, bool)> {
    let format = cli.format;
    let mut out = String::new();
    match &cli.command {
        Command::Count { kn, rank } => {
            let p = kn.params()?;
            let v = match rank {
                Some(l) => count_by_rank(p, *l)?,
                None => count_elements(p)?,
            };
            match format {
                Format::Text => writeln!(out, "{v}").unwrap(),
                Format::Json => out = pretty(json!({"k": p.k, "n": p.n, "rank": rank, "count": v.to_string()})),
                f => return Err(unsupported(f)),
            }
        }
        Command::Enumerate { kn, rank } => {
            let p = kn.params()?;
            let elements: Vec<NoncrossingElement> =
                enumerate_nc(p)?.into_iter().filter(|e| rank.is_none_or(|l| e.rank() == l)).collect();
            match format {
                Format::Text => elements.iter().for_each(|e| writeln!(out, "{e}").unwrap()),
                Format::Json => {
                    let records: Vec<_> = elements.iter().map(NoncrossingElement::record).collect();
                    out = serde_json::to_string_pretty(&records).expect("records serialize") + "\n";
                }
                Format::Csv => {
                    writeln!(out, "rank,element").unwrap();
                    elements.iter().for_each(|e| writeln!(out, "{},\"{e}\"", e.rank()).unwrap());
                }
                f => return Err(unsupported(f)),
            }
        }
        Command::Poset { kn } => {
            let p = kn.params()?;
            let poset = build_poset(p)?;
            match format {
                Format::Dot => out = to_dot(&poset, &format!("NC k={} n={}", p.k, p.n), |e| e.to_string()),
                Format::Csv => {
                    let closed = (0..=p.n).map(|l| count_by_rank(p, l)).collect::<ncpk::Result<Vec<_>>>()?;
                    out = census_csv(&poset.rank_profile(), &closed).map_err(|e| Error::InvalidInput(e.to_string()))?;
                }
                Format::Text | Format::Json => {
                    let summary = json!({
                        "k": p.k, "n": p.n,
                        "elements": poset.len(),
                        "covers": poset.covers().len(),
                        "rank_profile": poset.rank_profile(),
                        "graded": poset.is_graded(),
                        "lattice": poset.is_lattice(),
                    });
                    if format == Format::Json {
                        out = pretty(summary);
                    } else {
                        writeln!(out, "elements {}", poset.len()).unwrap();
                        writeln!(out, "covers {}", poset.covers().len()).unwrap();
                        writeln!(out, "rank profile {:?}", poset.rank_profile()).unwrap();
                        writeln!(out, "graded {}", poset.is_graded()).unwrap();
                        writeln!(out, "lattice {}", poset.is_lattice()).unwrap();
                    }
                }
            }
        }
        Command::Chains { kn, jumps } => {
            let p = kn.params()?;
            let (closed, brute) = match jumps {
                None => (count_maximal_chains(p), build_poset(p)?.maximal_chains()),
                Some(text) => {
                    let r = parse_jumps(text, p.n)?;
                    (count_multichains_by_jump(p, &r)?, build_poset(p)?.multichains_by_jump(&r.0, p.n)?)
                }
            };
            match format {
                Format::Text => writeln!(out, "{closed}").unwrap(),
                Format::Json => out = pretty(json!({"closed_form": closed.to_string(), "brute_force": brute.to_string(), "match": closed == brute})),
                f => return Err(unsupported(f)),
            }
        }
        Command::Zeta { kn, q } => {
            let p = kn.params()?;
            let closed = zeta(p, *q);
            let brute = if *q >= 1 { Some(build_poset(p)?.multichains(*q as usize - 1)) } else { None };
            match format {
                Format::Text => writeln!(out, "{closed}").unwrap(),
                Format::Json => out = pretty(json!({"q": q, "closed_form": closed.to_string(), "brute_force": brute.map(|b| b.to_string())})),
                f => return Err(unsupported(f)),
            }
        }
        Command::Mobius { kn } => {
            let p = kn.params()?;
            let closed = mobius_invariant(p)?;
            let brute = build_poset(p)?.mobius()?;
            match format {
                Format::Text => writeln!(out, "{closed}").unwrap(),
                Format::Json => out = pretty(json!({
                    "closed_form": closed.to_string(), "brute_force": brute.to_string(), "zeta_at_minus_one": zeta(p, -1).to_string(),
                })),
                f => return Err(unsupported(f)),
            }
        }
        Command::Mdiv { kn, m, q, jumps } => {
            let p = kn.params()?;
            let poset = build_mposet(p, *m)?;
            let mut rows = vec![
                ("maximal_chains", m_maximal_chains(p, *m), poset.maximal_chains()),
                ("mobius_hat", m_mobius(p, *m, MobiusVariant::Hat)?, poset.mobius_with_new_bottom()?),
                ("mobius_bar", m_mobius(p, *m, MobiusVariant::Bar)?, poset.mobius_with_merged_minima()?),
            ];
            if let Some(q) = q {
                rows.push(("zeta", mzeta(p, *m, *q as i64), poset.multichains(*q)));
            }
            if let Some(text) = jumps {
                let r = parse_jumps(text, p.n)?;
                rows.push(("rank_jumps", m_rank_jump_count(p, *m, &r)?, poset.multichains_by_jump(&r.0, p.n)?));
            }
            match format {
                Format::Text => {
                    writeln!(out, "elements {}", poset.len()).unwrap();
                    for (what, c, b) in &rows {
                        writeln!(out, "{what} {c} {b}").unwrap();
                    }
                }
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|(what, c, b)| json!({"claim": what, "closed_form": c.to_string(), "brute_force": b.to_string(), "match": c == b}))
                        .collect();
                    out = pretty(json!({"elements": poset.len(), "claims": v}));
                }
                f => return Err(unsupported(f)),
            }
        }
        Command::Hurwitz { kn, start } => {
            let p = kn.params()?;
            let f = match start {
                Some(text) => Factorization::parse(p, text)?,
                None => staircase(p),
            };
            let r = orbit_report(&f, cli.max_states)?;
            match format {
                Format::Text => writeln!(out, "orbit {} expected {} transitive {}", r.orbit_size, r.expected, r.transitive).unwrap(),
                Format::Json => out = serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
                f => return Err(unsupported(f)),
            }
        }
        Command::Cambrian { kn, max_elements } => {
            let p = kn.params()?;
            let poset = build_cambrian(p, *max_elements)?;
            match format {
                Format::Dot => out = to_dot(&poset, &format!("Cambrian k={} n={}", p.k, p.n), CambrianElement::to_string),
                Format::Text => {
                    writeln!(out, "elements {}", poset.len()).unwrap();
                    writeln!(out, "lattice {}", poset.is_lattice()).unwrap();
                    for (a, b) in poset.covers() {
                        writeln!(out, "{} < {}", poset.element(a), poset.element(b)).unwrap();
                    }
                }
                Format::Json => {
                    let elements: Vec<_> = poset
                        .elements()
                        .iter()
                        .map(|e| json!({"class": e.class.representative.to_string(), "size": e.class.size, "dissection": e.dissection.to_json()}))
                        .collect();
                    out = pretty(json!({"elements": elements, "covers": poset.covers(), "lattice": poset.is_lattice()}));
                }
                f => return Err(unsupported(f)),
            }
        }
        Command::Bijection { kn, factorization, parking, element } => {
            let p = kn.params()?;
            let v = if let Some(text) = factorization {
                let f = Factorization::parse(p, text)?;
                let class = CommClass::of(&f);
                json!({
                    "factorization": f.to_string(),
                    "parking_function": phi(&f).to_string(),
                    "class": class.representative.to_string(),
                    "dissection": theta_class(&class)?.to_json(),
                })
            } else if let Some(text) = parking {
                let pf = ParkingFunction::parse(p.k, text)?;
                if pf.len() != p.n {
                    return Err(Error::InvalidInput(format!("parking function has length {}, expected {}", pf.len(), p.n)));
                }
                json!({"parking_function": pf.to_string(), "factorization": phi_inverse(&pf)?.to_string()})
            } else if let Some(text) = element {
                let w = NoncrossingElement::new(Permutation::parse(text, p.big_n())?, p)?;
                let t = gj_tree(&w);
                let (white, black) = t.split();
                let (a, b) = split_and_contract(&t)?;
                let ideal = nc_to_nn(&w)?;
                json!({
                    "element": w.to_string(),
                    "kreweras": w.kreweras().to_string(),
                    "white_tree": white.to_string(),
                    "black_tree": black.to_string(),
                    "white_ary": a.to_string(),
                    "black_ary": b.to_string(),
                    "white_path": tree_to_dyck(&a, p.k)?.to_string(),
                    "black_path": tree_to_dyck(&b, p.k)?.to_string(),
                    "path": ideal_to_path(&ideal).to_string(),
                    "ideal": ideal.to_string(),
                })
            } else {
                return Err(Error::InvalidInput("give one of --factorization, --parking, --element".into()));
            };
            match format {
                Format::Json => out = pretty(v),
                Format::Text => {
                    for (key, val) in v.as_object().expect("object") {
                        writeln!(out, "{key}\t{}", val.as_str().map(str::to_string).unwrap_or_else(|| val.to_string())).unwrap();
                    }
                }
                f => return Err(unsupported(f)),
            }
        }
        Command::Nonnesting { kn, path } => {
            let p = kn.params()?;
            if let Some(text) = path {
                let lp = LatticePath::parse(p, text)?;
                let (p1, p2) = path_decompose(&lp);
                match format {
                    Format::Text => writeln!(out, "{p1}\t{p2}").unwrap(),
                    Format::Json => out = pretty(json!({"path": lp.to_string(), "first": p1.to_string(), "second": p2.to_string(), "split": p1.height()})),
                    f => return Err(unsupported(f)),
                }
            } else {
                let ideals = enumerate_ideals(p);
                match format {
                    Format::Text => {
                        for i in &ideals {
                            writeln!(out, "{}\t{i}", ideal_to_path(i)).unwrap();
                        }
                    }
                    Format::Csv => {
                        writeln!(out, "path,size").unwrap();
                        ideals.iter().for_each(|i| writeln!(out, "{},{}", ideal_to_path(i), i.len()).unwrap());
                    }
                    Format::Json => {
                        let v: Vec<_> = ideals.iter().map(|i| json!({"path": ideal_to_path(i).to_string(), "pairs": i.pairs()})).collect();
                        out = pretty(json!(v));
                    }
                    f => return Err(unsupported(f)),
                }
            }
        }
        Command::TypebOrbit { kn, max_q } => {
            let r = typeb_report(kn.k, kn.n, *max_q, cli.max_states)?;
            match format {
                Format::Json => out = serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
                Format::Text => {
                    writeln!(out, "product preserved {}", r.product_preserved).unwrap();
                    for c in &r.comparisons {
                        writeln!(out, "{}\t{}\tobserved {}\tconjectured {}", c.status, c.what, c.observed, c.conjectured).unwrap();
                    }
                }
                f => return Err(unsupported(f)),
            }
        }
        Command::Verify { max_n, max_k } => {
            let r = run_verify(VerifyConfig { max_n: *max_n, max_k: *max_k, max_states: cli.max_states })?;
            out = match format {
                Format::Text => r.to_text(),
                Format::Json => serde_json::to_string_pretty(&r).expect("report serializes") + "\n",
                Format::Csv => r.to_csv().map_err(|e| Error::InvalidInput(e.to_string()))?,
                f => return Err(unsupported(f)),
            };
            return Ok((out, !r.passed()));
        }
    }
    Ok((out, false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("NCPK_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok((text, failed)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
