//! Command-line front end: root systems, structure constants, parabolic
//! combinatorics, toral pairs, presentation generation, model verification,
//! and the finite-presentability classifier, with stable JSON/text/CSV
//! output.
//!
//! Exit codes: 0 success (or verdict finitely-presented), 1 verification
//! failure or verdict not-finitely-presented, 2 unknown verdict or refusal,
//! 64 usage error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chevpres::chevmodel::ChevalleyBasis;
use chevpres::classify::{block_demo, ring_level, s_arithmetic, FPStatus, Verdict};
use chevpres::parab::{blocks_to_subset, ParabolicSpec};
use chevpres::presgen::{
    present_borel_finite, present_kernel, present_parabolic_case1, present_parabolic_nvb,
    present_unipotent, BlockSource, LeviSource, Presentation, Truncation,
};
use chevpres::ringspec::{toral_constant, toral_pair, ArithmeticData, RingSpec, ToralTag};
use chevpres::rootsys::{Root, RootSystem, RootSystemType};
use chevpres::verify::{verify_filtration, verify_presentation, verify_retract, ModelKind};
use chevpres::{Error, TriBool};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Write a line to stdout, exiting quietly if the reader closed the pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let mut so = std::io::stdout().lock();
        if writeln!(so, $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// Like `out!` without the trailing newline.
macro_rules! outp {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let mut so = std::io::stdout().lock();
        if write!(so, $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "chevpres",
    version,
    about = "Chevalley groups over commutative rings: combinatorics, presentations, \
             verification, and finite-presentability classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the roots of a system in the fixed (height, lexicographic) order
    Roots {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Chevalley commutator structure constants for root pairs
    Structconsts {
        #[command(flatten)]
        t: TypeArgs,
        /// Emit every ordered pair of non-proportional roots (the default)
        #[arg(long)]
        all: bool,
        /// Restrict to one pair of simple roots, as 1-based indices "i,j"
        #[arg(long, value_name = "I,J", conflicts_with = "all")]
        pair: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Adjacency combinatorics of a standard parabolic subgroup
    #[command(name = "parabolic-info")]
    ParabolicInfo {
        #[command(flatten)]
        t: TypeArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// One-parameter torus fixing one root element and scaling another
    Toral {
        #[command(flatten)]
        t: TypeArgs,
        /// First root (fixed), as coefficients over the simple roots, "1,1"
        #[arg(long, value_name = "COEFFS")]
        a: Option<String>,
        /// Second root (scaled), same syntax
        #[arg(long, value_name = "COEFFS", requires = "a")]
        b: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Generate a presentation for a parabolic-related group
    Present {
        #[command(flatten)]
        t: TypeArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum)]
        kind: PresentKind,
        /// Truncation bounds "exponent,max-args" for the schematic emitters
        #[arg(long, value_name = "E,A")]
        truncate: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate presentations, retractions, or filtrations in a matrix model
    Verify {
        #[command(flatten)]
        t: TypeArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum)]
        what: VerifyWhat,
        /// Presentation kind (required for --what presentation)
        #[arg(long, value_enum)]
        kind: Option<PresentKind>,
        #[arg(long, value_enum, default_value_t = ModelArg::Adjoint)]
        model: ModelArg,
        #[arg(long, default_value_t = 60)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "E,A")]
        truncate: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide finite presentability of a parabolic subgroup
    Classify {
        #[command(flatten)]
        t: TypeArgs,
        #[command(flatten)]
        subset: SubsetArgs,
        #[command(flatten)]
        ring: RingArgs,
        /// What is known about the Levi-extension subgroup (ring-level rule)
        #[arg(long, value_enum)]
        le: Option<LeArg>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The contrasting 12-by-12 block parabolic pair (1,5,1,5) vs (5,1,1,5)
    #[command(name = "block-demo")]
    BlockDemo {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct TypeArgs {
    /// Root system type like "A2", or a family letter combined with --rank
    #[arg(long = "type", value_name = "TYPE")]
    rstype: String,
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn system(&self) -> chevpres::Result<RootSystem> {
        let spec = match self.rank {
            Some(r) => format!("{}{r}", self.rstype),
            None => self.rstype.clone(),
        };
        RootSystem::build(RootSystemType::parse(&spec)?)
    }
}

#[derive(Args)]
struct SubsetArgs {
    /// Simple-root subset: 1-based indices "1,3", or "long"/"short", or "none"
    #[arg(long = "I", value_name = "SUBSET")]
    i: Option<String>,
    /// Type-A block widths "n1,n2,..." (alternative to --I)
    #[arg(long, value_name = "WIDTHS", conflicts_with = "i")]
    blocks: Option<String>,
}

impl SubsetArgs {
    fn resolve(&self, rs: &RootSystem) -> chevpres::Result<Vec<usize>> {
        if let Some(blocks) = &self.blocks {
            let widths = parse_usizes(blocks)?;
            let (rstype, subset) = blocks_to_subset(&widths)?;
            if rstype != rs.rstype {
                return Err(Error::InvalidInput(format!(
                    "blocks {blocks} describe type {rstype}, not {}",
                    rs.rstype
                )));
            }
            return Ok(subset);
        }
        let spec = ParabolicSpec::parse(rs, self.i.as_deref().unwrap_or(""))?;
        Ok(spec.subset().to_vec())
    }
}

#[derive(Args)]
struct RingArgs {
    /// Ring preset (Z, Z_laurent, Fq_poly, Fq_laurent, OS) or a JSON file path
    #[arg(long, value_name = "PRESET|FILE")]
    ring: String,
    /// Field size for the Fq presets
    #[arg(long)]
    q: Option<u32>,
    /// Characteristic for the OS preset / the S-arithmetic rule
    #[arg(long = "char")]
    char_p: Option<u32>,
    /// Number of places for the OS preset / the S-arithmetic rule
    #[arg(long = "S")]
    s_size: Option<usize>,
}

impl RingArgs {
    fn build(&self) -> chevpres::Result<RingSpec> {
        if self.ring.ends_with(".json") || self.ring.contains('/') {
            let text = std::fs::read_to_string(&self.ring).map_err(|e| {
                Error::InvalidInput(format!("cannot read ring file {}: {e}", self.ring))
            })?;
            return RingSpec::from_json(&text);
        }
        RingSpec::preset(&self.ring, self.q, self.char_p, self.s_size)
    }

    /// Arithmetic data for the S-arithmetic rule: explicit flags override
    /// whatever the ring description carries.
    fn arithmetic(&self, ring: &RingSpec) -> Option<ArithmeticData> {
        match (&ring.arithmetic, self.char_p, self.s_size) {
            (Some(a), c, s) => Some(ArithmeticData {
                global_field_char: c.unwrap_or(a.global_field_char),
                s_size: s.unwrap_or(a.s_size),
            }),
            (None, Some(c), Some(s)) => Some(ArithmeticData { global_field_char: c, s_size: s }),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresentKind {
    Unipotent,
    Kernel,
    Borel,
    Case1,
    Nvb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyWhat {
    Presentation,
    Retract,
    Filtration,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Adjoint,
    Sln,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LeArg {
    Yes,
    No,
    Unknown,
}

impl From<LeArg> for TriBool {
    fn from(v: LeArg) -> TriBool {
        match v {
            LeArg::Yes => TriBool::Yes,
            LeArg::No => TriBool::No,
            LeArg::Unknown => TriBool::Unknown,
        }
    }
}

fn parse_usizes(s: &str) -> chevpres::Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad number '{p}'")))
        })
        .collect()
}

fn parse_root(rs: &RootSystem, s: &str) -> chevpres::Result<Root> {
    let coeffs: Vec<i32> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i32>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient '{p}'")))
        })
        .collect::<chevpres::Result<_>>()?;
    if coeffs.len() != rs.rank() {
        return Err(Error::InvalidInput(format!(
            "expected {} coefficients, got {}",
            rs.rank(),
            coeffs.len()
        )));
    }
    let r = Root::new(coeffs);
    rs.id_of(&r)?;
    Ok(r)
}

fn parse_truncation(s: Option<&str>) -> chevpres::Result<Truncation> {
    match s {
        None => Ok(Truncation::default()),
        Some(s) => {
            let parts = parse_usizes(s)?;
            if parts.len() != 2 || parts[0] == 0 {
                return Err(Error::InvalidInput(
                    "expected --truncate exponent,max-args with a positive exponent".into(),
                ));
            }
            Ok(Truncation { exp_bound: parts[0] as i64, max_args: parts[1] })
        }
    }
}

fn one_based(ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|&i| i + 1).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::InvalidRootSystem(_) | Error::RootNotInSystem(_) => {
            EXIT_USAGE
        }
        Error::ModelCheck(_) | Error::NotAUnit(_) => EXIT_NEGATIVE,
        _ => EXIT_UNKNOWN,
    }
}

fn run(cmd: Cmd) -> chevpres::Result<u8> {
    match cmd {
        Cmd::Roots { t, format } => roots_cmd(&t, format),
        Cmd::Structconsts { t, all, pair, format } => structconsts_cmd(&t, all, pair, format),
        Cmd::ParabolicInfo { t, subset, format } => parabolic_info_cmd(&t, &subset, format),
        Cmd::Toral { t, a, b, format } => toral_cmd(&t, a, b, format),
        Cmd::Present { t, subset, ring, kind, truncate, format } => {
            present_cmd(&t, &subset, &ring, kind, truncate, format)
        }
        Cmd::Verify { t, subset, ring, what, kind, model, samples, seed, truncate, format } => {
            verify_cmd(&t, &subset, &ring, what, kind, model, samples, seed, truncate, format)
        }
        Cmd::Classify { t, subset, ring, le, format } => {
            classify_cmd(&t, &subset, &ring, le, format)
        }
        Cmd::BlockDemo { ring, format } => block_demo_cmd(&ring, format),
    }
}

fn roots_cmd(t: &TypeArgs, format: Format) -> chevpres::Result<u8> {
    let rs = t.system()?;
    match format {
        Format::Json => {
            let roots: Vec<_> = rs
                .roots()
                .iter()
                .enumerate()
                .map(|(id, r)| {
                    json!({
                        "id": id,
                        "display": r.display(),
                        "coeffs": r.coeffs,
                        "height": r.height(),
                        "positive": r.is_positive(),
                        "long": rs.is_long(r),
                    })
                })
                .collect();
            let v = json!({
                "schema": "chevpres/roots/v1",
                "type": rs.rstype.to_string(),
                "rank": rs.rank(),
                "count": rs.num_roots(),
                "simples": (0..rs.rank()).map(|i| rs.simple_id(i)).collect::<Vec<_>>(),
                "roots": roots,
            });
            out!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        }
        Format::Text => {
            out!(
                "{}: {} roots, {} positive",
                rs.rstype,
                rs.num_roots(),
                rs.num_positive()
            );
            for (id, r) in rs.roots().iter().enumerate() {
                out!(
                    "{id:3}  {:<12} height {:3}  {}",
                    r.display(),
                    r.height(),
                    if rs.is_long(r) { "long" } else { "short" },
                );
            }
        }
        Format::Csv => {
            out!("id,display,coeffs,height,positive,long");
            for (id, r) in rs.roots().iter().enumerate() {
                let coeffs: Vec<String> = r.coeffs.iter().map(|c| c.to_string()).collect();
                out!(
                    "{id},{},{},{},{},{}",
                    r.display(),
                    coeffs.join(" "),
                    r.height(),
                    r.is_positive(),
                    rs.is_long(r),
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn structconsts_cmd(
    t: &TypeArgs,
    _all: bool,
    pair: Option<String>,
    format: Format,
) -> chevpres::Result<u8> {
    let rs = t.system()?;
    let cb = ChevalleyBasis::new(rs);
    let rs = cb.rs();
    let pairs: Vec<(usize, usize)> = match pair {
        Some(p) => {
            let ij = parse_usizes(&p)?;
            if ij.len() != 2 || ij.contains(&0) || ij.iter().any(|&k| k > rs.rank()) {
                return Err(Error::InvalidInput(
                    "--pair wants two 1-based simple-root indices".into(),
                ));
            }
            vec![(rs.simple_id(ij[0] - 1), rs.simple_id(ij[1] - 1))]
        }
        None => {
            let mut v = Vec::new();
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    if a != b && b != rs.neg_id(a) {
                        v.push((a, b));
                    }
                }
            }
            v
        }
    };
    let mut rows = Vec::new();
    for (a, b) in pairs {
        for term in cb.structure_constants(a, b)? {
            rows.push((a, b, term.m, term.n, term.root, term.coeff));
        }
    }
    match format {
        Format::Csv => {
            out!("a,b,m,n,target,coeff");
            for (a, b, m, n, root, coeff) in &rows {
                out!(
                    "{},{},{m},{n},{},{coeff}",
                    rs.root(*a).display(),
                    rs.root(*b).display(),
                    root.display(),
                );
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(a, b, m, n, root, coeff)| {
                    json!({
                        "a": rs.root(*a).display(),
                        "b": rs.root(*b).display(),
                        "m": m,
                        "n": n,
                        "target": root.display(),
                        "coeff": coeff,
                    })
                })
                .collect();
            let v = json!({
                "schema": "chevpres/structconsts/v1",
                "type": rs.rstype.to_string(),
                "terms": items,
            });
            out!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        }
        Format::Text => {
            for (a, b, m, n, root, coeff) in &rows {
                out!(
                    "[{}, {}] term ({m},{n}) -> {} with coefficient {coeff}",
                    rs.root(*a).display(),
                    rs.root(*b).display(),
                    root.display(),
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn parabolic_info_cmd(t: &TypeArgs, subset: &SubsetArgs, format: Format) -> chevpres::Result<u8> {
    let rs = t.system()?;
    let ids = subset.resolve(&rs)?;
    let spec = ParabolicSpec::new(&rs, ids)?;
    let profiles = spec.profiles();
    match format {
        Format::Json => {
            let items: Vec<_> = profiles
                .iter()
                .map(|p| {
                    let kernel: Vec<_> = p
                        .kernel_roots
                        .iter()
                        .map(|&id| {
                            json!({
                                "root": rs.root(id).display(),
                                "level": p.alvl(rs.root(id)),
                            })
                        })
                        .collect();
                    json!({
                        "borel_choice": p.borel_choice.map(|n| n + 1),
                        "subset": one_based(&p.subset),
                        "adjacent": one_based(&p.adj),
                        "non_adjacent": one_based(&p.nonadj),
                        "extended": one_based(&p.ext),
                        "levi_components": p.levi_components.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
                        "le_roots": p.le_roots.iter().map(|&id| rs.root(id).display()).collect::<Vec<_>>(),
                        "kernel": kernel,
                        "grading": one_based(&p.grading),
                        "retracts_onto_almost_borel": p.retracts_onto_almost_borel(),
                        "max_level": p.max_alvl(&rs),
                    })
                })
                .collect();
            let v = json!({
                "schema": "chevpres/parabolic/v1",
                "type": rs.rstype.to_string(),
                "subset": one_based(spec.subset()),
                "profiles": items,
            });
            out!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        }
        Format::Text => {
            out!("{} parabolic, subset {:?}", rs.rstype, one_based(spec.subset()));
            for p in &profiles {
                if let Some(n) = p.borel_choice {
                    out!("profile for distinguished simple root {}", n + 1);
                }
                out!("  adjacent     {:?}", one_based(&p.adj));
                out!("  non-adjacent {:?}", one_based(&p.nonadj));
                out!("  extended     {:?}", one_based(&p.ext));
                let le: Vec<_> = p.le_roots.iter().map(|&id| rs.root(id).display()).collect();
                out!("  levi-extension roots: {}", le.join(", "));
                let kern: Vec<_> = p
                    .kernel_roots
                    .iter()
                    .map(|&id| format!("{} (level {})", rs.root(id).display(), p.alvl(rs.root(id))))
                    .collect();
                out!("  kernel roots: {}", kern.join(", "));
                out!(
                    "  retracts onto almost-Borel: {}",
                    p.retracts_onto_almost_borel()
                );
            }
        }
        Format::Csv => {
            out!("profile,root,level,role");
            for (pi, p) in profiles.iter().enumerate() {
                for &id in &p.le_roots {
                    out!("{pi},{},0,levi-extension", rs.root(id).display());
                }
                for &id in &p.kernel_roots {
                    out!(
                        "{pi},{},{},kernel",
                        rs.root(id).display(),
                        p.alvl(rs.root(id))
                    );
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn toral_cmd(
    t: &TypeArgs,
    a: Option<String>,
    b: Option<String>,
    format: Format,
) -> chevpres::Result<u8> {
    let rs = t.system()?;
    let constant = toral_constant(&rs);
    let v = match (a, b) {
        (Some(a), Some(b)) => {
            let ra = parse_root(&rs, &a)?;
            let rb = parse_root(&rs, &b)?;
            let pair = toral_pair(&rs, &ra, &rb)?;
            let tag = match &pair.tag {
                ToralTag::Orthogonal => json!({"kind": "orthogonal"}),
                ToralTag::Bystander(g) => json!({"kind": "bystander", "root": g.display()}),
                ToralTag::PQ { p, q } => json!({"kind": "pq", "p": p, "q": q}),
            };
            let h: Vec<_> = pair
                .h_factors(&rs, &ra, &rb)
                .into_iter()
                .map(|(root, exp)| json!({"root": rs.root(root).display(), "exp": exp}))
                .collect();
            json!({
                "schema": "chevpres/toral/v1",
                "type": rs.rstype.to_string(),
                "a": ra.display(),
                "b": rb.display(),
                "n": pair.n,
                "tag": tag,
                "h_factors": h,
                "constant": constant,
            })
        }
        (Some(_), None) => {
            return Err(Error::InvalidInput("--a needs --b".into()));
        }
        _ => json!({
            "schema": "chevpres/toral/v1",
            "type": rs.rstype.to_string(),
            "constant": constant,
        }),
    };
    match format {
        Format::Json => out!("{}", serde_json::to_string_pretty(&v).expect("serializes")),
        Format::Text | Format::Csv => {
            let mut out = String::new();
            writeln!(out, "type {}", v["type"].as_str().expect("string")).expect("writes");
            if let Some(n) = v.get("n") {
                writeln!(out, "a = {}, b = {}, weight n = {n}", v["a"], v["b"]).expect("writes");
            }
            write!(out, "toral constant {constant}").expect("writes");
            out!("{out}");
        }
    }
    Ok(EXIT_OK)
}

fn build_presentation(
    cb: &ChevalleyBasis,
    subset: &[usize],
    ring: &RingSpec,
    kind: PresentKind,
    trunc: &Truncation,
) -> chevpres::Result<Presentation> {
    match kind {
        PresentKind::Unipotent => present_unipotent(cb, subset, ring, trunc),
        PresentKind::Kernel => present_kernel(cb, subset, ring, trunc),
        PresentKind::Borel => present_borel_finite(cb, ring, &BlockSource::RingDefault),
        PresentKind::Case1 => {
            present_parabolic_case1(cb, subset, ring, &BlockSource::RingDefault, &LeviSource::Stub)
        }
        PresentKind::Nvb => present_parabolic_nvb(cb, subset, ring, &LeviSource::Stub),
    }
}

fn present_cmd(
    t: &TypeArgs,
    subset: &SubsetArgs,
    ring: &RingArgs,
    kind: PresentKind,
    truncate: Option<String>,
    format: Format,
) -> chevpres::Result<u8> {
    let rs = t.system()?;
    let ids = subset.resolve(&rs)?;
    let ring = ring.build()?;
    let trunc = parse_truncation(truncate.as_deref())?;
    let cb = ChevalleyBasis::new(rs);
    let pres = build_presentation(&cb, &ids, &ring, kind, &trunc)?;
    match format {
        Format::Text => outp!("{}", pres.to_text(cb.rs(), &ring)),
        Format::Json => out!(
            "{}",
            serde_json::to_string_pretty(&pres.to_json(cb.rs(), &ring)).expect("serializes")
        ),
        Format::Csv => {
            return Err(Error::InvalidInput(
                "presentations have no CSV form; use text or json".into(),
            ));
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    t: &TypeArgs,
    subset: &SubsetArgs,
    ring: &RingArgs,
    what: VerifyWhat,
    kind: Option<PresentKind>,
    model: ModelArg,
    samples: usize,
    seed: u64,
    truncate: Option<String>,
    format: Format,
) -> chevpres::Result<u8> {
    let rs = t.system()?;
    let ids = subset.resolve(&rs)?;
    let ring = ring.build()?;
    let cb = ChevalleyBasis::new(rs);
    let (ok, out) = match what {
        VerifyWhat::Presentation => {
            let kind = kind.ok_or_else(|| {
                Error::InvalidInput("--what presentation needs --kind".into())
            })?;
            let trunc = parse_truncation(truncate.as_deref())?;
            let pres = build_presentation(&cb, &ids, &ring, kind, &trunc)?;
            let mk = match model {
                ModelArg::Adjoint => ModelKind::Adjoint,
                ModelArg::Sln => ModelKind::Sln,
            };
            let report = verify_presentation(&cb, &ring, &pres, mk)?;
            (report.ok(), report.to_json())
        }
        VerifyWhat::Retract => {
            let report = verify_retract(&cb, &ids, &ring, samples, seed)?;
            (report.ok(), report.to_json())
        }
        VerifyWhat::Filtration => {
            let report = verify_filtration(&cb, &ids, &ring)?;
            (report.ok(), report.to_json())
        }
    };
    match format {
        Format::Text => {
            out!("{}", if ok { "all checks passed" } else { "FAILURES" });
            out!("{out}");
        }
        _ => out!("{out}"),
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn exit_for_verdict(v: Verdict) -> u8 {
    match v {
        Verdict::FinitelyPresented => EXIT_OK,
        Verdict::NotFinitelyPresented => EXIT_NEGATIVE,
        Verdict::EquivalentToLe | Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn print_status(status: &FPStatus, format: Format) {
    match format {
        Format::Text => outp!("{}", status.to_text()),
        _ => out!("{}", status.to_json()),
    }
}

/// Stored-fact derivation of the Levi-extension status for type-A block
/// layouts: no adjacent width-1 blocks means the Levi factor itself (known
/// finitely presented general-linear blocks), adjacent width-1 blocks pull
/// in a rank-1 Borel group.
fn le_status_from_blocks(spec: &ParabolicSpec, ring: &RingSpec) -> TriBool {
    let profiles = spec.profiles();
    let Some(profile) = profiles.first() else {
        return TriBool::Unknown;
    };
    if profile.nonadj.is_empty() {
        if ring.flags.levi_gl_blocks_fp == TriBool::Yes {
            return TriBool::Yes;
        }
    } else if ring.flags.borel2_fp == TriBool::No {
        return TriBool::No;
    }
    TriBool::Unknown
}

fn classify_cmd(
    t: &TypeArgs,
    subset: &SubsetArgs,
    ring_args: &RingArgs,
    le: Option<LeArg>,
    format: Format,
) -> chevpres::Result<u8> {
    let rs = t.system()?;
    let ids = subset.resolve(&rs)?;
    let spec = ParabolicSpec::new(&rs, ids)?;
    let ring = ring_args.build()?;
    let use_arithmetic = ring_args.char_p.is_some() || ring_args.s_size.is_some();
    let status = if use_arithmetic {
        let arith = ring_args.arithmetic(&ring).ok_or_else(|| {
            Error::InvalidInput(
                "the S-arithmetic rule needs both --char and --S (or an arithmetic ring)".into(),
            )
        })?;
        let ranks: Vec<usize> = if spec.subset().is_empty() {
            Vec::new()
        } else {
            spec.profiles()[0].levi_components.iter().map(Vec::len).collect()
        };
        s_arithmetic(&spec, &arith, &ranks)?
    } else {
        let le_status = match le {
            Some(v) => v.into(),
            None if subset.blocks.is_some() => le_status_from_blocks(&spec, &ring),
            None => TriBool::Unknown,
        };
        ring_level(&spec, &ring, le_status)?
    };
    print_status(&status, format);
    Ok(exit_for_verdict(status.verdict))
}

fn block_demo_cmd(ring: &RingArgs, format: Format) -> chevpres::Result<u8> {
    let ring = ring.build()?;
    let (p1, p2) = block_demo(&ring)?;
    match format {
        Format::Text => {
            out!("blocks 1,5,1,5:");
            outp!("{}", p1.to_text());
            out!("blocks 5,1,1,5:");
            outp!("{}", p2.to_text());
        }
        _ => {
            let v = json!({
                "schema": "chevpres/blockdemo/v1",
                "p1": serde_json::from_str::<serde_json::Value>(&p1.to_json()).expect("round-trips"),
                "p2": serde_json::from_str::<serde_json::Value>(&p2.to_json()).expect("round-trips"),
            });
            out!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        }
    }
    Ok(EXIT_OK)
}
