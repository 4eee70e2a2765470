use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use braidforge::arrangements::{
    assemble_presentation, exponents, monomial_tower, typeb_monodromy_closed, typeb_tower,
    verify_pbn_monomial, verify_pbn_table, verify_typeb_monodromy, ArrangementKind,
};
use braidforge::braid::{linking_numbers, verify_braid_relations, verify_pure_braid_relations};
use braidforge::liealg::{
    graded_ranks, monomial_holonomy, parse_flats, product_holonomy, typeb_holonomy, witt_rank,
    HolonomyPresentation,
};
use braidforge::monomial::{
    verify_generators_free_factor, verify_lemma_conj, verify_monomial_relations, verify_presentation,
    MonomialParams, Reading,
};
use braidforge::wiring::{
    braid_monodromy, parse_real_lines, parse_wiring, wiring_from_real_lines, WiringDiagram,
};
use braidforge::{Exec, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};

const MAX_R: usize = 6;
const MAX_N: usize = 6;
const MAX_DEGREE: usize = 8;

#[derive(Parser)]
#[command(name = "braidforge", version, about = "Exact braid monodromy and monomial braid computations")]
struct Cli {
    /// Worker threads for relation sweeps; 1 runs sequentially.
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Braid monodromy of a wiring diagram file.
    Monodromy { file: PathBuf },
    /// Braid monodromy of a file of real lines `slope intercept`.
    Lines { file: PathBuf },
    /// Type B monodromy: closed forms, or checked against the wiring computation.
    Typeb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Monomial braid verification suites.
    Monomial {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        verify: Suite,
        #[arg(long, value_enum, default_value = "literal")]
        reading: ReadingArg,
    },
    /// Print a fiber-type presentation.
    Present {
        #[command(subcommand)]
        which: PresentWhich,
    },
    /// Graded ranks of a holonomy Lie algebra with the Witt comparison.
    Lie(LieArgs),
    /// Relation suites.
    Verify {
        #[command(subcommand)]
        which: VerifyWhich,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    LemmaConj,
    Presentation,
    Generators,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReadingArg {
    Literal,
    Corrected,
}

#[derive(Subcommand)]
enum PresentWhich {
    Typeb {
        #[arg(long)]
        n: usize,
    },
    Monomial {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VerifyWhich {
    /// Braid and pure braid relations on n strands.
    Purebraid {
        #[arg(long)]
        n: usize,
    },
    /// The type B generator action table, by the free-group route and the r = 2 monomial route.
    Pbn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).multiple(true).args(["exponents", "monomial", "typeb", "flats"]))]
struct LieArgs {
    /// Comma-separated exponents; alone, the tower with trivial monodromy.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    exponents: Option<Vec<usize>>,
    /// Monomial arrangement `R,N`.
    #[arg(long, value_name = "R,N", conflicts_with_all = ["typeb", "flats"])]
    monomial: Option<String>,
    /// Type B arrangement of rank N.
    #[arg(long, value_name = "N", conflicts_with = "flats")]
    typeb: Option<usize>,
    /// Flats file: optional `generators …` line, then one flat per line.
    #[arg(long, value_name = "FILE")]
    flats: Option<PathBuf>,
    #[arg(long, value_name = "D")]
    max_degree: usize,
}

struct Ctx {
    exec: Exec,
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli, &mut out) {
        Ok(ok) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<bool> {
    let exec = match cli.jobs {
        Some(0) => bail!("--jobs must be at least 1"),
        Some(1) => Exec::Sequential,
        Some(k) => {
            set_threads(k)?;
            Exec::Parallel
        }
        None => Exec::Parallel,
    };
    let ctx = Ctx { exec, format: cli.format };
    match cli.command {
        Command::Monodromy { file } => {
            let d = parse_wiring(&read(&file)?).with_context(|| format!("parsing {}", file.display()))?;
            monodromy(&d, &ctx, out)
        }
        Command::Lines { file } => {
            let lines =
                parse_real_lines(&read(&file)?).with_context(|| format!("parsing {}", file.display()))?;
            monodromy(&wiring_from_real_lines(&lines)?, &ctx, out)
        }
        Command::Typeb { n, verify } => {
            guard_n(n, 1)?;
            if verify {
                return report(verify_typeb_monodromy(n, ctx.exec), &ctx, out);
            }
            for (g, b) in typeb_monodromy_closed(n)? {
                match ctx.format {
                    Format::Text => writeln!(out, "{g} = {b}")?,
                    Format::Tsv => writeln!(out, "{g}\t{b}")?,
                }
            }
            Ok(true)
        }
        Command::Monomial { r, n, verify, reading } => {
            guard_r(r)?;
            guard_n(n, 2)?;
            let p = MonomialParams::new(r, n)?;
            let reading = match reading {
                ReadingArg::Literal => Reading::Literal,
                ReadingArg::Corrected => Reading::Corrected,
            };
            let rep = match verify {
                Suite::Relations => verify_monomial_relations(&p, ctx.exec),
                Suite::LemmaConj => verify_lemma_conj(&p, reading, ctx.exec),
                Suite::Presentation => verify_presentation(&p, reading, ctx.exec),
                Suite::Generators => verify_generators_free_factor(&p, reading),
            };
            report(rep, &ctx, out)
        }
        Command::Present { which } => {
            let tower = match which {
                PresentWhich::Typeb { n } => {
                    guard_n(n, 1)?;
                    typeb_tower(n)?
                }
                PresentWhich::Monomial { r, n } => {
                    guard_r(r)?;
                    guard_n(n, 1)?;
                    monomial_tower(r, n)?
                }
            };
            out.push_str(&assemble_presentation(&tower)?.render());
            Ok(true)
        }
        Command::Lie(args) => lie(args, &ctx, out),
        Command::Verify { which } => match which {
            VerifyWhich::Purebraid { n } => {
                guard_n(n, 2)?;
                let mut rep = verify_braid_relations(n, ctx.exec);
                rep.extend(verify_pure_braid_relations(n, ctx.exec));
                report(rep, &ctx, out)
            }
            VerifyWhich::Pbn { n } => {
                ensure!((2..=4).contains(&n), "the action table is checked for 2 <= n <= 4, got n={n}");
                let mut rep = verify_pbn_table(n, ctx.exec);
                if n <= 3 {
                    rep.extend(verify_pbn_monomial(n, ctx.exec));
                }
                report(rep, &ctx, out)
            }
        },
    }
}

#[cfg(feature = "parallel")]
fn set_threads(k: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new().num_threads(k).build_global().context("configuring the thread pool")
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) -> Result<()> {
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn guard_r(r: usize) -> Result<()> {
    ensure!(
        (1..=MAX_R).contains(&r),
        "r={r} is outside 1..={MAX_R}; braids act on r(n-1)+1 strands and conjugated words grow roughly \
         geometrically in that count"
    );
    Ok(())
}

fn guard_n(n: usize, min: usize) -> Result<()> {
    ensure!(
        (min..=MAX_N).contains(&n),
        "n={n} is outside {min}..={MAX_N}; relation counts grow like n^4 and word lengths with the strand count"
    );
    Ok(())
}

fn report(rep: Report, ctx: &Ctx, out: &mut String) -> Result<bool> {
    match ctx.format {
        Format::Tsv => out.push_str(&rep.to_tsv()),
        Format::Text => {
            out.push_str(&rep.failure_list());
            writeln!(out, "{} checks, {} failed", rep.len(), rep.failure_count())?;
        }
    }
    Ok(rep.all_passed())
}

fn monodromy(d: &WiringDiagram, ctx: &Ctx, out: &mut String) -> Result<bool> {
    let gens = braid_monodromy(d)?;
    if ctx.format == Format::Tsv {
        out.push_str("event\tbraid\tblocks\tlinking\n");
    }
    for g in &gens {
        let blocks: Vec<String> = g
            .block_partition
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let link = linking_numbers(&g.braid)?;
        let rows: Vec<String> =
            link.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        match ctx.format {
            Format::Tsv => {
                writeln!(out, "{}\t{}\t{}\t{}", g.index, g.braid, blocks.join(" "), rows.join(";"))?
            }
            Format::Text => {
                writeln!(out, "u{} = {}", g.index, g.braid)?;
                writeln!(out, "  V({}) = {}", g.index, blocks.join(" "))?;
                writeln!(out, "  linking:")?;
                for r in rows {
                    writeln!(out, "    {r}")?;
                }
            }
        }
    }
    Ok(true)
}

fn lie(args: LieArgs, ctx: &Ctx, out: &mut String) -> Result<bool> {
    let d = args.max_degree;
    ensure!((1..=MAX_DEGREE).contains(&d), "--max-degree {d} is outside 1..={MAX_DEGREE}");
    let (p, expected): (HolonomyPresentation, Option<Vec<usize>>) = if let Some(spec) = &args.monomial {
        ensure!(args.exponents.is_none(), "--exponents is implied by --monomial");
        let (r, n) = spec
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
            .with_context(|| format!("--monomial expects R,N, got {spec:?}"))?;
        guard_r(r)?;
        guard_n(n, 1)?;
        (monomial_holonomy(r, n)?, Some(exponents(ArrangementKind::Monomial { r, n })))
    } else if let Some(n) = args.typeb {
        ensure!(args.exponents.is_none(), "--exponents is implied by --typeb");
        guard_n(n, 1)?;
        (typeb_holonomy(n)?, Some(exponents(ArrangementKind::TypeB { n })))
    } else if let Some(path) = &args.flats {
        let p = parse_flats(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
        (p, args.exponents.clone())
    } else {
        let e = args.exponents.clone().expect("clap requires a source");
        ensure!(!e.is_empty() && e.iter().all(|&x| x >= 1), "exponents must be positive");
        (product_holonomy(&e)?, Some(e))
    };
    let ranks = graded_ranks(&p, d, ctx.exec)?;
    let mut all = true;
    match ctx.format {
        Format::Tsv => out.push_str("degree\trank\texpected\tmatch\n"),
        Format::Text => writeln!(out, "{:>6}  {:>10}  {:>10}  match", "degree", "rank", "expected")?,
    }
    for (k, &got) in ranks.iter().enumerate() {
        let k = k + 1;
        let want: Option<u128> =
            expected.as_ref().map(|e| e.iter().map(|&x| witt_rank(x as u64, k as u64)).sum());
        let (w, m) = match want {
            Some(w) => {
                let ok = w == got as u128;
                all &= ok;
                (w.to_string(), if ok { "yes" } else { "NO" })
            }
            None => ("-".to_string(), "-"),
        };
        match ctx.format {
            Format::Tsv => writeln!(out, "{k}\t{got}\t{w}\t{m}")?,
            Format::Text => writeln!(out, "{k:>6}  {got:>10}  {w:>10}  {m}")?,
        }
    }
    if ctx.format == Format::Text {
        let torsion = p.degree2_torsion();
        if torsion.is_empty() {
            writeln!(out, "degree 2 quotient is torsion free")?;
        } else {
            writeln!(out, "degree 2 quotient has torsion {torsion:?}")?;
        }
    }
    Ok(all)
}
