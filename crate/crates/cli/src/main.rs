use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridmorse::count::{partition_function, partition_function_brute, partition_function_frontier, canonical_order, partition_at};
use gridmorse::lattice::dump_graph;
use gridmorse::morse::{grow_tree, make_strategy, verify_acyclic, StrategyKind};
use gridmorse::spectral::charpoly::format_gauss;
use gridmorse::spectral::{
    build_transfer, char_poly, char_poly_rev, cyclotomic_factorize, dump_matrix, fit_linear_recurrence, Label,
    TransferKind,
};
use gridmorse::verifier::{
    check_identities, check_ordinary_rect_series, default_strategy, explore_ordinary_cylinders, run_suite,
    suite_instances, CheckReport, IdentityConfig, Method, SuiteName,
};
use gridmorse::{build_graph, Caps, Error, FamilySpec, GridGraph};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "gridmorse", version, about = "Independence complexes of grid graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the graph of a family instance (`gridgraph v1`).
    Build(FamilyArgs),
    /// Count independent sets.
    Count(CountArgs),
    /// Grow a matching tree and list its critical cells.
    Morse(MorseArgs),
    /// Characteristic polynomial of a transfer matrix.
    Spectrum(SpectrumArgs),
    /// Resolvent series of a transfer-matrix entry.
    Series(SeriesArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    TiltedRect,
    TiltedRectSmooth,
    CylRect,
    Parallelogram,
    Quad,
    OrdRect,
    OrdCyl,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
}

#[derive(Args)]
struct CapArgs {
    /// Largest independence complex materialized by the acyclicity check.
    #[arg(long)]
    max_cells: Option<usize>,
    /// Node guard for matching-tree growth.
    #[arg(long)]
    max_nodes: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Auto,
    Brute,
    Frontier,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Evaluate `Z(u)` at this activity instead of printing the polynomial.
    #[arg(long, allow_hyphen_values = true)]
    activity: Option<i64>,
    #[arg(long, value_enum, default_value = "auto")]
    method: CountMethod,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    DiagLex,
    Block,
    SlopeLex,
}

#[derive(Args)]
struct MorseArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Defaults to the family's own rule.
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Print the whole tree.
    #[arg(long)]
    tree: bool,
    /// Also run the exhaustive acyclicity check.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixLetter {
    P,
    R,
    L,
    O,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum, ignore_case = true)]
    matrix: MatrixLetter,
    /// Matrix parameter (`--n` is accepted as well).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Print `det(I - tM)` instead of `det(xI - M)`.
    #[arg(long)]
    rev: bool,
    /// Print the cyclotomic factorization.
    #[arg(long)]
    factor: bool,
    /// Print the matrix itself (`gaussmat v1`).
    #[arg(long)]
    dump: bool,
    /// Print `tr M^0 .. tr M^K`.
    #[arg(long)]
    traces: Option<usize>,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    #[arg(long, default_value = "{}")]
    row: Label,
    #[arg(long, default_value = "{}")]
    col: Label,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Fit a rational function with denominator degree at most this.
    #[arg(long)]
    fit: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Rect,
    Cyl,
    Paral,
    Quad,
    OrdCyl,
    OrdRect,
    Identities,
    ExploreOrdCyl,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Size bound of the instance range; each suite has its own default.
    #[arg(long)]
    max: Option<u32>,
    /// Comma separated subset of predict,brute,frontier,morse,acyclic,trace,fold.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// Identity suite: include the slower table rows.
    #[arg(long)]
    extended: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    caps: CapArgs,
}

/// A usage problem, exit status 2.
struct Usage(String);

enum Failure {
    Usage(String),
    Run(Error),
    /// A check failed; its output is already printed.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidFamily(_) | Error::UnknownLabel(_) | Error::Parse { .. } | Error::InvalidCaps(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Run(e),
        }
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Usage> {
    v.ok_or_else(|| Usage(format!("--{flag} is required for {family}")))
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Usage> {
        let name = self.family.to_possible_value().expect("no skipped variants").get_name().to_string();
        let mn = || -> Result<(u32, u32), Usage> { Ok((need(self.m, "m", &name)?, need(self.n, "n", &name)?)) };
        let kn = || -> Result<(u32, u32), Usage> { Ok((need(self.k, "k", &name)?, need(self.n, "n", &name)?)) };
        Ok(match self.family {
            Family::TiltedRect => {
                let (m, n) = mn()?;
                FamilySpec::TiltedRect { m, n }
            }
            Family::TiltedRectSmooth => {
                let (m, n) = mn()?;
                FamilySpec::TiltedRectSmooth { m, n }
            }
            Family::CylRect => {
                let (m, n) = mn()?;
                FamilySpec::CylindricRect { m, n }
            }
            Family::Parallelogram => {
                let (k, n) = kn()?;
                FamilySpec::Parallelogram { k, n }
            }
            Family::Quad => {
                let (m, n) = mn()?;
                FamilySpec::Quadrangle { m, n, a: need(self.a, "a", &name)?, b: need(self.b, "b", &name)? }
            }
            Family::OrdRect => {
                let (k, n) = kn()?;
                FamilySpec::OrdinaryRect { k, n }
            }
            Family::OrdCyl => {
                let (k, n) = kn()?;
                FamilySpec::OrdinaryCylinder { k, n }
            }
        })
    }

    fn graph(&self) -> Result<(FamilySpec, GridGraph), Failure> {
        let spec = self.spec()?;
        Ok((spec, build_graph(spec)?))
    }
}

impl CapArgs {
    fn caps(&self) -> Result<Caps, Failure> {
        let mut caps = Caps::from_env()?;
        if let Some(c) = self.max_cells {
            caps.max_cells = c;
        }
        if let Some(n) = self.max_nodes {
            caps.max_nodes = n;
        }
        Ok(caps)
    }
}

impl MatrixArgs {
    fn kind(&self) -> Result<TransferKind, Usage> {
        let p = match (self.k, self.n) {
            (Some(k), None) | (None, Some(k)) => k,
            (Some(_), Some(_)) => return Err(Usage("give the matrix parameter once, as --k or --n".into())),
            (None, None) => return Err(Usage("--k (or --n) is required with --matrix".into())),
        };
        Ok(match self.matrix {
            MatrixLetter::P => TransferKind::P(p),
            MatrixLetter::R => TransferKind::R(p),
            MatrixLetter::L => TransferKind::L(p),
            MatrixLetter::O => TransferKind::O(p),
        })
    }
}

fn run_build(args: &FamilyArgs) -> Result<(), Failure> {
    let (_, g) = args.graph()?;
    print!("{}", dump_graph(&g));
    Ok(())
}

fn run_count(args: &CountArgs) -> Result<(), Failure> {
    let (_, g) = args.family.graph()?;
    let caps = Caps::from_env()?;
    match args.activity {
        Some(u) => {
            let z = match args.method {
                CountMethod::Brute => partition_function_brute(&g, &caps)?.eval(&BigInt::from(u)),
                CountMethod::Frontier => partition_at(&g, &canonical_order(&g), BigInt::from(u), &caps)?,
                CountMethod::Auto => partition_function(&g, &caps)?.eval(&BigInt::from(u)),
            };
            println!("{z}");
        }
        None => {
            let p = match args.method {
                CountMethod::Brute => partition_function_brute(&g, &caps)?,
                CountMethod::Frontier => partition_function_frontier(&g, &canonical_order(&g), &caps)?,
                CountMethod::Auto => partition_function(&g, &caps)?,
            };
            println!("{p}");
        }
    }
    Ok(())
}

fn run_morse(args: &MorseArgs) -> Result<(), Failure> {
    let (spec, g) = args.family.graph()?;
    let caps = args.caps.caps()?;
    let kind = match args.strategy {
        None => default_strategy(spec),
        Some(Strategy::DiagLex) => StrategyKind::DiagLex,
        Some(Strategy::Block) => match spec {
            FamilySpec::Parallelogram { k, .. } => StrategyKind::Block(k),
            _ => return Err(Failure::Usage("--strategy block needs --family parallelogram".into())),
        },
        Some(Strategy::SlopeLex) => match spec {
            FamilySpec::Quadrangle { a, b, .. } => StrategyKind::SlopeLex(a, b),
            _ => StrategyKind::SlopeLex(1, 1),
        },
    };
    let strategy = make_strategy(kind, &g)?;
    let tree = grow_tree(&g, &strategy, &caps)?;
    let cells = tree.critical_cells();
    let points = |c: &gridmorse::VertexSet| c.iter().map(|v| g.point(v).to_string()).collect::<Vec<_>>().join(" ");
    match args.format {
        Format::Tsv => {
            println!("cell\tsize\tpoints");
            for (i, c) in cells.iter().enumerate() {
                println!("{i}\t{}\t{}", c.len(), points(c));
            }
        }
        Format::Text => {
            let s = tree.stats();
            println!("graph {spec}");
            println!("strategy {kind}");
            println!(
                "nodes {} matching {} splitting {} empty-leaves {} depth {}",
                s.nodes, s.matching_sites, s.splitting_sites, s.empty_leaves, s.depth
            );
            println!("Z {}", tree.morse_euler_sum());
            println!("critical {}", cells.len());
            for c in &cells {
                println!("  {} | {}", c.len(), points(c));
            }
        }
    }
    if args.tree {
        print!("{}", tree.dump());
    }
    if args.check {
        let r = verify_acyclic(&g, &tree, &caps)?;
        println!(
            "acyclic {} faces {} pairs {} involutive {} critical-agree {}",
            r.check.acyclic && r.check.is_matching,
            r.faces,
            r.pairs,
            r.involutive,
            r.critical_agree
        );
        if !r.ok() {
            return Err(Failure::Check);
        }
    }
    Ok(())
}

fn run_spectrum(args: &SpectrumArgs) -> Result<(), Failure> {
    let kind = args.matrix.kind()?;
    let caps = Caps::from_env()?;
    let t = build_transfer(kind, &caps)?;
    if args.dump {
        print!("{}", dump_matrix(&t));
        return Ok(());
    }
    if let Some(kmax) = args.traces {
        for (k, tr) in t.pow_traces(kmax)?.iter().enumerate() {
            println!("{k}\t{}", format_gauss(tr));
        }
        return Ok(());
    }
    let (p, var) = if args.rev { (char_poly_rev(&t.matrix)?, "t") } else { (char_poly(&t.matrix)?, "x") };
    if args.factor {
        println!("{}", cyclotomic_factorize(&p, None).render(var));
    } else if args.rev {
        println!("{}", p.to_ascending_string(var));
    } else {
        println!("{}", p.to_descending_string(var));
    }
    Ok(())
}

fn run_series(args: &SeriesArgs) -> Result<(), Failure> {
    let kind = args.matrix.kind()?;
    let caps = Caps::from_env()?;
    let t = build_transfer(kind, &caps)?;
    let s = t.resolvent_series(args.row, args.col, args.order)?;
    let real: Option<Vec<BigInt>> = s.iter().map(|z| (z.im == BigInt::from(0)).then(|| z.re.clone())).collect();
    match &real {
        Some(r) => println!("{}", r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")),
        None => println!("{}", s.iter().map(format_gauss).collect::<Vec<_>>().join(" ")),
    }
    if let Some(maxdeg) = args.fit {
        let real = real.ok_or_else(|| Failure::Usage("--fit needs a real series".into()))?;
        println!("{}", fit_linear_recurrence(&real, maxdeg)?);
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let caps = args.caps.caps()?;
    let methods: Vec<Method> = match &args.methods {
        None => Method::ALL.to_vec(),
        Some(names) => names.iter().map(|n| n.parse()).collect::<Result<_, Error>>().map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let family_suite = |name: SuiteName, default_max: u32| {
        run_suite(&suite_instances(name, args.max.unwrap_or(default_max)), &methods, &caps)
    };
    let identities = || {
        let cfg = if args.extended { IdentityConfig::extended() } else { IdentityConfig::default() };
        check_identities(&cfg, &caps)
    };
    let report = match args.suite {
        Suite::Rect => family_suite(SuiteName::Rect, 7),
        Suite::Cyl => family_suite(SuiteName::Cyl, 8),
        Suite::Paral => family_suite(SuiteName::Paral, 5),
        Suite::Quad => family_suite(SuiteName::Quad, 8),
        Suite::OrdCyl => family_suite(SuiteName::OrdCyl, 5),
        Suite::OrdRect => {
            let mut r = CheckReport::new();
            r.push(check_ordinary_rect_series(args.max.unwrap_or(20) as usize, &caps));
            r
        }
        Suite::Identities => identities(),
        Suite::ExploreOrdCyl => {
            let max = args.max.unwrap_or(9);
            explore_ordinary_cylinders(max.min(6), max, &caps)
        }
        Suite::All => {
            let mut r = CheckReport::new();
            for (name, max) in [(SuiteName::Rect, 7), (SuiteName::Cyl, 8), (SuiteName::Paral, 5), (SuiteName::Quad, 8)] {
                r.extend(family_suite(name, max));
            }
            r.push(check_ordinary_rect_series(20, &caps));
            r.extend(identities());
            r
        }
    };
    match args.format {
        Format::Tsv => print!("{}", report.to_tsv()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.has_failures() {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(a) => run_build(a),
        Command::Count(a) => run_count(a),
        Command::Morse(a) => run_morse(a),
        Command::Spectrum(a) => run_spectrum(a),
        Command::Series(a) => run_series(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
