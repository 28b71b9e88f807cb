//! `cdsw`: exact desk-scale checks for the invariant exterior algebras of a
//! simple Lie algebra and the matching affine Weyl combinatorics.
//!
//! Exit code 0 means every executed check passed (skips allowed), 1 means
//! some check failed, 2 is reserved for usage errors.

use cdsw_core::abelian::{enumerate_ideals, mask_to_indices, zeta_match};
use cdsw_core::affweyl::{AffElt, AffWeyl};
use cdsw_core::cartan::lie::LieAlgebra;
use cdsw_core::cartan::RootSystem;
use cdsw_core::quotient::{AlgebraKind, DEFAULT_MAX_BLOCK_DIM};
use cdsw_core::report::{all_clear, render_csv, render_json, render_md, Report, Status};
use cdsw_core::verify::{self, VerifyOpts};
use cdsw_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cdsw",
    version,
    about = "Exact checks for invariant algebras and alcove combinatorics of simple Lie algebras"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Args)]
struct Target {
    /// Family letter A through G
    #[arg(long = "type")]
    letter: char,
    /// Rank within the family
    #[arg(long)]
    rank: usize,
}

impl Target {
    fn letter(&self) -> char {
        self.letter.to_ascii_uppercase()
    }
}

#[derive(Args)]
struct Budget {
    /// Refuse any weight block wider than this many monomials
    #[arg(long, default_value_t = DEFAULT_MAX_BLOCK_DIM)]
    max_block_dim: usize,
    /// Largest total degree p+q in invariant grids
    #[arg(long, default_value_t = 6)]
    max_total_degree: usize,
    /// Component cache directory; CDSW_CACHE_DIR takes precedence when set
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    /// Seed for randomized checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random samples per check
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    /// Three structure maps
    A,
    /// Per-copy maps only
    B,
    /// Single copy, single map
    Single,
}

impl KindArg {
    fn to_kind(self) -> AlgebraKind {
        match self {
            KindArg::A => AlgebraKind::A,
            KindArg::B => AlgebraKind::B,
            KindArg::Single => AlgebraKind::Single,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Combinatorial,
    Algebraic,
    Cocycle,
    Full,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root system facts and the Chevalley basis
    Cartan {
        #[command(flatten)]
        target: Target,
        /// Include basis names, weights, and structure constants (json only)
        #[arg(long)]
        constants: bool,
    },
    /// Doubled-alcove elements of the affine Weyl group
    Aff2 {
        #[command(flatten)]
        target: Target,
    },
    /// Abelian ideals of the Borel subalgebra
    Abelian {
        #[command(flatten)]
        target: Target,
    },
    /// Ideal-to-alcove matching with lengths
    Zeta {
        #[command(flatten)]
        target: Target,
    },
    /// Invariant dimensions of a quotient algebra by bidegree
    Invariants {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        budget: Budget,
        /// Which quotient to take
        #[arg(long, value_enum, default_value_t = KindArg::A)]
        kind: KindArg,
    },
    /// First vanishing power of the canonical invariant S
    Spower {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        budget: Budget,
    },
    /// Degree statistic of a triple of reduced affine words
    Ddegree {
        #[command(flatten)]
        target: Target,
        /// Word for u, comma or space separated letters (empty for identity)
        #[arg(long, default_value = "")]
        u: String,
        /// Word for v
        #[arg(long, default_value = "")]
        v: String,
        /// Word for w
        #[arg(long, default_value = "")]
        w: String,
    },
    /// Loop-algebra cocycle identity checks
    Cocycle {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        sampling: Sampling,
        /// Restrict to one polynomial degree
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Named check suites
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = SuiteArg::Full)]
        suite: SuiteArg,
    },
}

fn effective_cache_dir(flag: &Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os("CDSW_CACHE_DIR")
        .map(PathBuf::from)
        .or_else(|| flag.clone())
}

fn opts(target: &Target, budget: &Budget, sampling: Option<&Sampling>) -> VerifyOpts {
    let mut o = VerifyOpts::new(target.letter(), target.rank);
    o.max_block_dim = budget.max_block_dim;
    o.max_total_degree = budget.max_total_degree;
    o.cache_dir = effective_cache_dir(&budget.cache_dir);
    if let Some(s) = sampling {
        o.seed = s.seed;
        o.samples = s.samples;
    }
    o
}

fn parse_word(text: &str) -> Result<Vec<usize>, Error> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Usage(format!("word letter {s:?} is not a number")))
        })
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn word_text(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn root_text(root: &[i64]) -> String {
    format!(
        "[{}]",
        root.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Tolerates a closed pipe: downstream tools may stop reading early.
fn print_text(text: &str) {
    use std::io::Write as _;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(text.as_bytes());
    let _ = lock.flush();
}

fn reports_text(format: Format, reports: &[Report]) -> String {
    let mut text = match format {
        Format::Json => render_json(reports),
        Format::Csv => render_csv(reports),
        Format::Md => render_md(reports),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn emit_reports(format: Format, reports: &[Report]) -> ExitCode {
    print_text(&reports_text(format, reports));
    if all_clear(reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cartan_text(format: Format, rs: &RootSystem, constants: bool) -> Result<String, Error> {
    let mut out = String::new();
    match format {
        Format::Json => {
            let doc = if constants {
                LieAlgebra::new(rs.clone())?.to_json()
            } else {
                rs.to_json()
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            )
            .unwrap();
        }
        Format::Md => {
            writeln!(out, "# {}", rs.family_name()).unwrap();
            writeln!(
                out,
                "rank {}, dimension {}, positive roots {}",
                rs.rank,
                rs.dim(),
                rs.num_pos_roots()
            )
            .unwrap();
            writeln!(
                out,
                "dual Coxeter {}, exponents {:?}",
                rs.dual_coxeter, rs.exponents
            )
            .unwrap();
            writeln!(out, "marks {:?}, comarks {:?}", rs.marks(), rs.comarks).unwrap();
            writeln!(out, "highest root {}", root_text(&rs.theta)).unwrap();
            writeln!(out, "Cartan matrix:").unwrap();
            for row in &rs.cartan {
                writeln!(
                    out,
                    "| {} |",
                    row.iter()
                        .map(|x| format!("{x:>2}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                )
                .unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "key,value").unwrap();
            writeln!(out, "type,{}", rs.family_name()).unwrap();
            writeln!(out, "rank,{}", rs.rank).unwrap();
            writeln!(out, "dimension,{}", rs.dim()).unwrap();
            writeln!(out, "positive_roots,{}", rs.num_pos_roots()).unwrap();
            writeln!(out, "dual_coxeter,{}", rs.dual_coxeter).unwrap();
            writeln!(
                out,
                "exponents,{}",
                csv_field(&format!("{:?}", rs.exponents))
            )
            .unwrap();
            writeln!(out, "marks,{}", csv_field(&format!("{:?}", rs.marks()))).unwrap();
            writeln!(out, "comarks,{}", csv_field(&format!("{:?}", rs.comarks))).unwrap();
            writeln!(out, "theta,{}", csv_field(&root_text(&rs.theta))).unwrap();
            for (i, row) in rs.cartan.iter().enumerate() {
                writeln!(out, "cartan_row_{i},{}", csv_field(&format!("{row:?}"))).unwrap();
            }
        }
    }
    Ok(out)
}

fn sorted_elements(aw: &AffWeyl) -> Vec<AffElt> {
    let mut elements = aw.enumerate_doubled();
    elements.sort_by(|a, b| (a.len(), &a.word).cmp(&(b.len(), &b.word)));
    elements
}

fn aff2_text(format: Format, rs: &RootSystem, elements: &[AffElt]) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let doc = json!({
                "type": rs.family_name(),
                "count": elements.len(),
                "elements": elements.iter().map(|w| json!({
                    "word": w.word,
                    "length": w.len(),
                })).collect::<Vec<_>>(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            )
            .unwrap();
        }
        Format::Md => {
            writeln!(out, "| word | length |").unwrap();
            writeln!(out, "|------|--------|").unwrap();
            for w in elements {
                writeln!(out, "| {} | {} |", word_text(&w.word), w.len()).unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "{} elements", elements.len()).unwrap();
        }
        Format::Csv => {
            writeln!(out, "word,length").unwrap();
            for w in elements {
                writeln!(out, "{},{}", csv_field(&word_text(&w.word)), w.len()).unwrap();
            }
        }
    }
    out
}

fn ideal_roots(rs: &RootSystem, mask: u128) -> Vec<Vec<i64>> {
    mask_to_indices(mask)
        .into_iter()
        .map(|i| rs.pos_roots[i].clone())
        .collect()
}

fn roots_line(rs: &RootSystem, mask: u128) -> String {
    let roots = ideal_roots(rs, mask)
        .iter()
        .map(|r| root_text(r))
        .collect::<Vec<_>>()
        .join(" ");
    if roots.is_empty() {
        "-".into()
    } else {
        roots
    }
}

fn abelian_text(format: Format, rs: &RootSystem, ideals: &[u128]) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let doc = json!({
                "type": rs.family_name(),
                "count": ideals.len(),
                "ideals": ideals.iter().map(|&m| json!({
                    "size": m.count_ones(),
                    "roots": ideal_roots(rs, m),
                })).collect::<Vec<_>>(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            )
            .unwrap();
        }
        Format::Md => {
            writeln!(out, "| size | roots |").unwrap();
            writeln!(out, "|------|-------|").unwrap();
            for &m in ideals {
                writeln!(out, "| {} | {} |", m.count_ones(), roots_line(rs, m)).unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "{} abelian ideals", ideals.len()).unwrap();
        }
        Format::Csv => {
            writeln!(out, "size,roots").unwrap();
            for &m in ideals {
                writeln!(out, "{},{}", m.count_ones(), csv_field(&roots_line(rs, m))).unwrap();
            }
        }
    }
    out
}

fn zeta_text(format: Format, rs: &RootSystem, ideals: &[u128], elements: &[&AffElt]) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let doc = json!({
                "type": rs.family_name(),
                "count": ideals.len(),
                "pairs": ideals.iter().zip(elements).map(|(&m, w)| json!({
                    "size": m.count_ones(),
                    "roots": ideal_roots(rs, m),
                    "word": w.word,
                    "length": w.len(),
                })).collect::<Vec<_>>(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("valid json")
            )
            .unwrap();
        }
        Format::Md => {
            writeln!(out, "| size | roots | word | length |").unwrap();
            writeln!(out, "|------|-------|------|--------|").unwrap();
            for (&m, w) in ideals.iter().zip(elements) {
                writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    m.count_ones(),
                    roots_line(rs, m),
                    word_text(&w.word),
                    w.len()
                )
                .unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "{} matched pairs", ideals.len()).unwrap();
        }
        Format::Csv => {
            writeln!(out, "size,roots,word,length").unwrap();
            for (&m, w) in ideals.iter().zip(elements) {
                writeln!(
                    out,
                    "{},{},{},{}",
                    m.count_ones(),
                    csv_field(&roots_line(rs, m)),
                    csv_field(&word_text(&w.word)),
                    w.len()
                )
                .unwrap();
            }
        }
    }
    out
}

fn run_ddegree(
    format: Format,
    target: &Target,
    u: &str,
    v: &str,
    w: &str,
) -> Result<ExitCode, Error> {
    let rs = RootSystem::new(target.letter(), target.rank)?;
    let aw = AffWeyl::new(&rs);
    let (wu, wv, ww) = (parse_word(u)?, parse_word(v)?, parse_word(w)?);
    let (eu, ev, ew) = (
        aw.element_from_word(&wu)?,
        aw.element_from_word(&wv)?,
        aw.element_from_word(&ww)?,
    );
    let fam = rs.family_name();
    let params = format!(
        "u={} v={} w={}",
        word_text(&wu),
        word_text(&wv),
        word_text(&ww)
    );
    let report = cdsw_core::report::timed("d-degree", &fam, &params, || {
        match aw.d_degree(&eu, &ev, &ew) {
            Ok(d) => {
                let by_len = aw.d_degree_by_length(&eu, &ev, &ew);
                if d == by_len {
                    (Status::Pass, format!("degree = {d}, both routes"))
                } else {
                    (
                        Status::Fail,
                        format!("weight route {d} disagrees with length route {by_len}"),
                    )
                }
            }
            Err(e) => (Status::Fail, e.to_string()),
        }
    });
    Ok(emit_reports(format, &[report]))
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Cmd::Cartan { target, constants } => {
            let rs = RootSystem::new(target.letter(), target.rank)?;
            print_text(&cartan_text(cli.format, &rs, *constants)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Aff2 { target } => {
            let rs = RootSystem::new(target.letter(), target.rank)?;
            let aw = AffWeyl::new(&rs);
            let elements = sorted_elements(&aw);
            print_text(&aff2_text(cli.format, &rs, &elements));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Abelian { target } => {
            let rs = RootSystem::new(target.letter(), target.rank)?;
            let ideals = enumerate_ideals(&rs);
            print_text(&abelian_text(cli.format, &rs, &ideals));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Zeta { target } => {
            let rs = RootSystem::new(target.letter(), target.rank)?;
            let aw = AffWeyl::new(&rs);
            let elements = sorted_elements(&aw);
            let ideals = enumerate_ideals(&rs);
            let matched = zeta_match(&rs, &aw, &elements, &ideals)?;
            print_text(&zeta_text(cli.format, &rs, &ideals, &matched.elements));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Invariants {
            target,
            budget,
            kind,
        } => {
            let o = opts(target, budget, None);
            let reports = verify::invariants_grid(&o, kind.to_kind())?;
            Ok(emit_reports(cli.format, &reports))
        }
        Cmd::Spower { target, budget } => {
            let o = opts(target, budget, None);
            let report = verify::s_power(&o)?;
            Ok(emit_reports(cli.format, &[report]))
        }
        Cmd::Ddegree { target, u, v, w } => run_ddegree(cli.format, target, u, v, w),
        Cmd::Cocycle {
            target,
            sampling,
            degree,
        } => {
            let mut o = VerifyOpts::new(target.letter(), target.rank);
            o.seed = sampling.seed;
            o.samples = sampling.samples;
            let reports = match degree {
                Some(d) => verify::cocycle_degree(&o, *d)?,
                None => verify::cocycle(&o)?,
            };
            Ok(emit_reports(cli.format, &reports))
        }
        Cmd::Verify {
            target,
            budget,
            sampling,
            suite,
        } => {
            let o = opts(target, budget, Some(sampling));
            let reports = match suite {
                SuiteArg::Combinatorial => verify::combinatorial(&o)?,
                SuiteArg::Algebraic => verify::algebraic(&o)?,
                SuiteArg::Cocycle => verify::cocycle(&o)?,
                SuiteArg::Full => verify::full(&o)?,
            };
            Ok(emit_reports(cli.format, &reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::BadWord(_) | Error::InvalidType { .. } => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
