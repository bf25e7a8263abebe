use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mvsheaf::commands as cmd;
use mvsheaf::input::{self, DEFAULT_SIZE_LIMIT};
use mvsheaf::{report_status, CliError};
use mvsheaf_core::locale::DEFAULT_FRAME_CAP;
use mvsheaf_core::mcnaughton::DEFAULT_DIMENSION_CAP;
use mvsheaf_core::spectrum::DEFAULT_SECTION_CAP;
use mvsheaf_core::MvValue;
use serde_json::Value;

/// Finite MV-algebras, their prime spectra, McNaughton functions and
/// sheaves on finite sites.
#[derive(Parser)]
#[command(name = "mvsheaf", version)]
struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Group {
    /// Finite MV-algebras.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Prime spectra, global sections and gluing.
    #[command(subcommand)]
    Spec(SpecCmd),
    /// Terms and their McNaughton functions.
    #[command(subcommand)]
    Term(TermCmd),
    /// Truncations, covers and polyhedra.
    #[command(subcommand)]
    Mc(McCmd),
    /// Sites, frames and points.
    #[command(subcommand)]
    Locale(LocaleCmd),
}

#[derive(Args)]
struct AlgArg {
    /// Algebra JSON, or @file.
    #[arg(long)]
    alg: String,
    /// Largest algebra accepted.
    #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
    max_size: usize,
}

impl AlgArg {
    fn load(&self) -> Result<mvsheaf_core::FiniteMvAlgebra, CliError> {
        input::parse_algebra(&self.alg, self.max_size)
    }
}

#[derive(Args)]
struct DimArg {
    /// Dimension of the cube; defaults to the largest variable index used.
    #[arg(long)]
    n: Option<usize>,
    /// Largest dimension accepted.
    #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Check the MV-algebra identities.
    Validate(AlgArg),
    /// List prime ideals.
    Primes(AlgArg),
    /// Quotient by the ideal generated by the given elements.
    Quotient {
        #[command(flatten)]
        alg: AlgArg,
        /// Generator (index or label array); repeatable.
        #[arg(long = "ideal", required = true)]
        ideal: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SpecCmd {
    Build(AlgArg),
    Sections {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long, default_value_t = DEFAULT_SECTION_CAP)]
        cap: u64,
    },
    /// Check that a ↦ â is a bijection onto global sections.
    Verify {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long, default_value_t = DEFAULT_SECTION_CAP)]
        cap: u64,
    },
    /// Glue b1 mod (a1) with b2 mod (a2).
    Glue {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
    },
}

#[derive(Subcommand)]
enum TermCmd {
    /// Parse terms, one per line; `#` starts a comment.
    Parse {
        /// Term text, or @file.
        text: String,
    },
    /// Evaluate on a point of the cube or in a finite algebra.
    Eval {
        term: String,
        /// Comma-separated rationals.
        #[arg(long, conflicts_with_all = ["alg", "env"])]
        point: Option<String>,
        #[arg(long, requires = "env")]
        alg: Option<String>,
        /// JSON array of elements.
        #[arg(long, requires = "alg")]
        env: Option<String>,
    },
    Compile {
        term: String,
        #[command(flatten)]
        dim: DimArg,
    },
    Eq {
        left: String,
        right: String,
        #[command(flatten)]
        dim: DimArg,
    },
    Zeros {
        term: String,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Is g in the ideal generated by f?
    Member {
        f: String,
        g: String,
        #[command(flatten)]
        dim: DimArg,
    },
    Archimedean {
        f: String,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Glue g1 on Z(f1) with g2 on Z(f2).
    Glue {
        f1: String,
        f2: String,
        g1: String,
        g2: String,
        #[command(flatten)]
        dim: DimArg,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// Truncate an integer affine form into [0,1].
    Truncate {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Glue local terms `f; g` (g on Z(f)) whose zero sets cover the cube.
    GlueCover {
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        #[command(flatten)]
        dim: DimArg,
    },
    /// Term whose zero set is the given polyhedron.
    Poly2term {
        #[arg(long = "constraint")]
        constraints: Vec<String>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct SiteArg {
    /// Site JSON, or @file.
    #[arg(long)]
    site: String,
    #[arg(long, default_value_t = DEFAULT_FRAME_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum LocaleCmd {
    Check {
        #[arg(long)]
        site: String,
    },
    Frame(SiteArg),
    Points(SiteArg),
    Space(SiteArg),
    /// The lattice V_A of an algebra and its points.
    Va(AlgArg),
}

fn element(a: &mvsheaf_core::FiniteMvAlgebra, s: &str) -> Result<MvValue, CliError> {
    input::parse_element(a, s)
}

fn term(s: &str) -> Result<mvsheaf_core::Term, CliError> {
    cmd::parse_term(&input::read_arg(s)?)
}

fn run(group: Group) -> Result<Value, CliError> {
    match group {
        Group::Alg(c) => match c {
            AlgCmd::Validate(a) => Ok(cmd::alg_validate(&a.load()?)),
            AlgCmd::Primes(a) => cmd::alg_primes(&a.load()?),
            AlgCmd::Quotient { alg, ideal } => {
                let a = alg.load()?;
                let gens = ideal
                    .iter()
                    .map(|s| element(&a, s))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(cmd::alg_quotient(&a, &gens))
            }
        },
        Group::Spec(c) => match c {
            SpecCmd::Build(a) => cmd::spec_build(&a.load()?),
            SpecCmd::Sections { alg, cap } => cmd::spec_sections(&alg.load()?, cap),
            SpecCmd::Verify { alg, cap } => cmd::spec_verify(&alg.load()?, cap),
            SpecCmd::Glue {
                alg,
                a1,
                a2,
                b1,
                b2,
            } => {
                let a = alg.load()?;
                cmd::spec_glue(
                    &a,
                    element(&a, &a1)?,
                    element(&a, &a2)?,
                    element(&a, &b1)?,
                    element(&a, &b2)?,
                )
            }
        },
        Group::Term(c) => match c {
            TermCmd::Parse { text } => cmd::term_parse(&input::read_arg(&text)?),
            TermCmd::Eval {
                term: t,
                point,
                alg,
                env,
            } => {
                let t = term(&t)?;
                match (point, alg, env) {
                    (Some(p), None, None) => cmd::term_eval_unit(&t, &input::parse_point(&p)?),
                    (None, Some(alg), Some(env)) => {
                        let a = input::parse_algebra(&alg, DEFAULT_SIZE_LIMIT)?;
                        let items: Vec<Value> = serde_json::from_str(&env)
                            .map_err(|e| CliError::Usage(format!("bad --env: {e}")))?;
                        let env = items
                            .iter()
                            .map(|v| input::element_from_json(&a, v))
                            .collect::<Result<Vec<_>, _>>()?;
                        cmd::term_eval_algebra(&t, &a, &env)
                    }
                    _ => Err(CliError::Usage("give --point, or --alg with --env".into())),
                }
            }
            TermCmd::Compile { term: t, dim } => {
                let t = term(&t)?;
                cmd::term_compile(&t, cmd::dimension(dim.n, &[&t])?, dim.max_dim)
            }
            TermCmd::Eq { left, right, dim } => {
                let (s, t) = (term(&left)?, term(&right)?);
                cmd::term_eq(&s, &t, cmd::dimension(dim.n, &[&s, &t])?, dim.max_dim)
            }
            TermCmd::Zeros { term: t, dim } => {
                let t = term(&t)?;
                cmd::term_zeros(&t, cmd::dimension(dim.n, &[&t])?, dim.max_dim)
            }
            TermCmd::Member { f, g, dim } => {
                let (f, g) = (term(&f)?, term(&g)?);
                cmd::term_member(&f, &g, cmd::dimension(dim.n, &[&f, &g])?, dim.max_dim)
            }
            TermCmd::Archimedean { f, dim } => {
                let f = term(&f)?;
                cmd::term_archimedean(&f, cmd::dimension(dim.n, &[&f])?, dim.max_dim)
            }
            TermCmd::Glue {
                f1,
                f2,
                g1,
                g2,
                dim,
            } => {
                let ts = [term(&f1)?, term(&f2)?, term(&g1)?, term(&g2)?];
                let refs = [&ts[0], &ts[1], &ts[2], &ts[3]];
                cmd::term_glue(refs, cmd::dimension(dim.n, &refs)?, dim.max_dim)
            }
        },
        Group::Mc(c) => match c {
            McCmd::Truncate { form, dim } => {
                let n = dim
                    .n
                    .ok_or_else(|| CliError::Usage("truncate needs --n".into()))?;
                cmd::mc_truncate(&input::parse_integer_form(&form, n)?, n, dim.max_dim)
            }
            McCmd::GlueCover { pairs, dim } => {
                let pairs = pairs
                    .iter()
                    .map(|p| {
                        let (f, g) = p
                            .split_once(';')
                            .ok_or_else(|| CliError::Usage(format!("pair `{p}` needs `f; g`")))?;
                        Ok((term(f.trim())?, term(g.trim())?))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                let refs: Vec<&mvsheaf_core::Term> =
                    pairs.iter().flat_map(|(f, g)| [f, g]).collect();
                cmd::mc_glue_cover(&pairs, cmd::dimension(dim.n, &refs)?, dim.max_dim)
            }
            McCmd::Poly2term { constraints, n } => {
                let cs = constraints
                    .iter()
                    .map(|c| input::parse_constraint(c, n))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(cmd::mc_poly2term(cs, n))
            }
        },
        Group::Locale(c) => match c {
            LocaleCmd::Check { site } => Ok(cmd::locale_check(&input::parse_site(&site)?)),
            LocaleCmd::Frame(s) => cmd::locale_frame(&input::parse_site(&s.site)?, s.cap),
            LocaleCmd::Points(s) => cmd::locale_points(&input::parse_site(&s.site)?, s.cap),
            LocaleCmd::Space(s) => cmd::locale_space(&input::parse_site(&s.site)?, s.cap),
            LocaleCmd::Va(a) => cmd::locale_va(&a.load()?),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out;
    match run(cli.group) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("JSON values serialize") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("mvsheaf: cannot write {path}: {e}");
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(report_status(&report) as u8)
        }
        Err(e) => {
            eprintln!("mvsheaf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
