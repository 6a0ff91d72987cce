use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use taxotopy::covers::{is_chain_compact, validate_cover, van_kampen_star_report};
use taxotopy::decomposition::lambda_double;
use taxotopy::equivalence::{is_null_taxotopic, poset_taxotopic, v_equivalence_check};
use taxotopy::fundamental::{lambda_with, map_label};
use taxotopy::galois::{
    enumerate_adjunctions, extension_of, first_non_restricting, inclusion, is_strong_sub,
    is_weak_sub, restricts_to,
};
use taxotopy::generate::posets_of_size;
use taxotopy::iso::are_isomorphic;
use taxotopy::structure::{self, Hypothesis};
use taxotopy::{
    catalog, chains, fundamental_poset, lambda, BitSet, Error, FinitePoset, FundamentalPoset,
    GaloisConnection, Limits,
};
use taxotopy_cli::report::{PosetRecord, ResultRecord, Table};
use taxotopy_cli::{parse, print, to_dot, ParseError, Report};
use thiserror::Error;

const DEFAULT_LAMBDA: usize = 10;
const DEFAULT_HEAVY: usize = 7;

#[derive(Parser)]
#[command(name = "taxo", version, about = "Taxotopy invariants of finite posets")]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Write the Hasse diagram of the main result as DOT.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Largest |P| for λ and L (default 10).
    #[arg(long, global = true, value_name = "N")]
    max_lambda: Option<usize>,
    /// Largest |P| for verbs that enumerate Adj on many subposets or map sets (default 7).
    #[arg(long, global = true, value_name = "N")]
    max_heavy: Option<usize>,
    /// Budget for |S|·log2|P| when enumerating Pos(S,P) (default 26).
    #[arg(long, global = true, value_name = "BITS")]
    map_bits: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

/// A poset file path, or a catalog name such as `diamond` or `n(4)`.
#[derive(Args, Clone)]
struct Input {
    #[arg(value_name = "FILE")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// λ(P): taxotopy classes of points.
    Lambda(Input),
    /// Λ(S,P): taxotopy classes of monotone maps S → P.
    Fundamental {
        #[arg(long, value_name = "S_SPEC")]
        source: String,
        #[command(flatten)]
        input: Input,
    },
    /// L(P): taxotopy classes of chains.
    Chains(Input),
    /// Adj(P): all Galois connections on P.
    Adjunctions {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        count: bool,
    },
    /// Collapse tunnels until none is left.
    Reduce(Input),
    /// Membership predicates; exit 0 when the predicate holds, 1 otherwise.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Theorem checks that compute both sides independently.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Run a hypothesis checker over every connected poset up to a size.
    Search {
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum)]
        hypothesis: HypothesisArg,
        /// Size of the chain S for `vk-star`.
        #[arg(long, default_value_t = 2)]
        source: usize,
    },
    /// Print a named poset in file format.
    Catalog { name: String },
    /// Time an enumeration over every poset of the given sizes.
    Bench {
        #[arg(value_enum)]
        what: BenchWhat,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5])]
        sizes: Vec<usize>,
    },
}

#[derive(Args, Clone)]
struct SubsetArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated element labels.
    #[arg(long)]
    subset: String,
}

#[derive(Args, Clone)]
struct CoverArgs {
    #[command(flatten)]
    input: Input,
    /// One block as comma-separated labels; repeat for each block.
    #[arg(long = "block", required = true)]
    blocks: Vec<String>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Q ∈ Sub_w(P): every connection on P restricts to Q.
    Subw(SubsetArgs),
    /// Q is a strong subposet.
    Strongsub(SubsetArgs),
    /// The inclusion Q ↣ P has the extension property.
    Extension(SubsetArgs),
    /// Which connections on P restrict to Q.
    Restriction(SubsetArgs),
    /// The blocks form a cover.
    Cover(CoverArgs),
    /// The blocks form a chain-compact cover.
    ChainCompact(CoverArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// λ(CP) = 𝟑, L(CP) = ◇ ⊔ 𝟑 and, when small enough, Λ(CP) = ◇.
    Cone(Input),
    /// Collapsing each tunnel leaves λ unchanged.
    Tunnel(Input),
    /// λ(P) is the pushout of λ(P₁) and λ(P₂) over λ(P₁ ∩ P₂).
    VankampenLambda {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
    },
    /// Λ*(S,P_⊥) is the limit over a chain-compact cover.
    VankampenStar {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, default_value = "two")]
        source: String,
    },
    /// λ(P) as a pushout at a Paris point.
    Paris {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Λ*(S,P_⊥) as a pullback at a Paris point.
    ParisStar {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "two")]
        source: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Λ(P ⊔ P) directly against the fold formula.
    Disjoint(Input),
    /// Rigid points are fixed by every closure and interior operator.
    Rigid(Input),
    /// P is null-taxotopic, and then 𝐕 ≈ P̈.
    Null {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "one")]
        source: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HypothesisArg {
    Paris,
    VkLambda,
    VkStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchWhat {
    Adjunctions,
    Lambda,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Parse { .. } => 2,
            CliError::Core(e) => match e {
                Error::HypothesisFailed(_)
                | Error::NotNullTaxotopic
                | Error::NotConnected
                | Error::NotAChain
                | Error::NotATunnel(..)
                | Error::MaxUndefined(_)
                | Error::Cover(_) => 1,
                Error::TheoremViolation(_) => 3,
                Error::SizeLimit { .. } => 4,
                _ => 2,
            },
        }
    }
}

type Res<T> = Result<T, CliError>;

/// What a command produced: the report, its exit code, an optional DOT
/// target and an optional plain-text form that replaces the table.
struct Outcome {
    report: Report,
    code: u8,
    dot: Option<(String, FinitePoset)>,
    text: Option<String>,
}

impl Outcome {
    fn new(report: Report) -> Self {
        Outcome {
            report,
            code: 0,
            dot: None,
            text: None,
        }
    }
}

struct Ctx {
    limits: Limits,
    heavy: usize,
}

impl Ctx {
    fn heavy(&self, what: &'static str, size: usize) -> Res<()> {
        Ok(Limits::check(what, size, self.heavy)?)
    }
}

fn load(spec: &str) -> Res<(String, FinitePoset)> {
    let path = Path::new(spec);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        let f = parse(&text).map_err(|source| CliError::Parse {
            path: spec.to_string(),
            source,
        })?;
        return Ok((f.name, f.poset));
    }
    match catalog(spec) {
        Ok(p) => Ok((spec.to_string(), p)),
        Err(Error::UnknownName(_)) => Err(CliError::Input(format!(
            "`{spec}` is neither a file nor a catalog poset"
        ))),
        Err(e) => Err(e.into()),
    }
}

fn subset(p: &FinitePoset, spec: &str) -> Res<BitSet> {
    let mut set = BitSet::new(p.len());
    for label in spec.split(',').map(str::trim).filter(|l| !l.is_empty()) {
        let i = p
            .index_of(label)
            .ok_or_else(|| CliError::Input(format!("unknown element label `{label}`")))?;
        set.insert(i);
    }
    Ok(set)
}

fn set_label(p: &FinitePoset, set: &BitSet) -> String {
    let parts: Vec<&str> = set.iter().map(|i| p.label(i)).collect();
    format!("{{{}}}", parts.join(","))
}

fn conn_label(p: &FinitePoset, f: &GaloisConnection) -> [String; 2] {
    let show = |m: &taxotopy::MonotoneMap| {
        m.values()
            .iter()
            .map(|&v| p.label(v))
            .collect::<Vec<_>>()
            .join(",")
    };
    [show(&f.lower), show(&f.upper)]
}

fn classes_of(lam: &FundamentalPoset, p: &FinitePoset) -> Vec<Vec<String>> {
    let label = map_label(p);
    lam.quotient
        .classes
        .iter()
        .map(|c| c.iter().map(|&i| label(&lam.maps[i])).collect())
        .collect()
}

/// Witnesses for the covering pairs of the quotient, between class representatives.
fn cover_witnesses(
    lam: &FundamentalPoset,
    s: &FinitePoset,
    p: &FinitePoset,
    adj_s: &[GaloisConnection],
    adj_p: &[GaloisConnection],
) -> Table {
    let label = map_label(p);
    let mut t = Table::new(
        "witnesses",
        &["k", "h", "f* on S", "f_* on S", "g* on P", "g_* on P"],
    );
    for (a, b) in lam.poset().covers() {
        let (i, j) = (
            lam.quotient.representative(a),
            lam.quotient.representative(b),
        );
        let Some(w) = lam.witnesses.get(&(i, j)) else {
            continue;
        };
        let [fl, fu] = conn_label(s, &adj_s[w.dom_conn]);
        let [gl, gu] = conn_label(p, &adj_p[w.cod_conn]);
        t.push(vec![
            label(&lam.maps[i]),
            label(&lam.maps[j]),
            fl,
            fu,
            gl,
            gu,
        ]);
    }
    t
}

fn source(spec: &str) -> Res<FinitePoset> {
    Ok(load(spec)?.1)
}

fn run(cmd: &Command, ctx: &Ctx, command: String) -> Res<Outcome> {
    let lim = &ctx.limits;
    let mut r = Report::new(command);
    match cmd {
        Command::Lambda(Input { input }) => {
            let (name, p) = load(input)?;
            Limits::check("λ carrier", p.len(), lim.lambda)?;
            let adj = enumerate_adjunctions(&p, lim)?;
            let lam = lambda_with(&p, &adj);
            r.inputs.push(PosetRecord::new("P", &name, &p));
            r.results.push(ResultRecord::new(
                "λ(P)",
                lam.poset(),
                Some(classes_of(&lam, &p)),
            ));
            let one = [GaloisConnection::identity(1)];
            r.tables.push(cover_witnesses(
                &lam,
                &FinitePoset::chain(1),
                &p,
                &one,
                adj.connections(),
            ));
            let mut o = Outcome::new(r);
            o.dot = Some(("lambda".into(), lam.poset().clone()));
            Ok(o)
        }
        Command::Fundamental {
            source: s_spec,
            input: Input { input },
        } => {
            let (name, p) = load(input)?;
            let s = source(s_spec)?;
            ctx.heavy("|P|", p.len())?;
            ctx.heavy("|S|", s.len())?;
            let lam = fundamental_poset(&s, &p, lim)?;
            let (adj_s, adj_p) = (
                enumerate_adjunctions(&s, lim)?,
                enumerate_adjunctions(&p, lim)?,
            );
            r.inputs.push(PosetRecord::new("S", s_spec, &s));
            r.inputs.push(PosetRecord::new("P", &name, &p));
            r.results.push(ResultRecord::new(
                "Λ(S,P)",
                lam.poset(),
                Some(classes_of(&lam, &p)),
            ));
            r.tables.push(cover_witnesses(
                &lam,
                &s,
                &p,
                adj_s.connections(),
                adj_p.connections(),
            ));
            let mut o = Outcome::new(r);
            o.dot = Some(("fundamental".into(), lam.poset().clone()));
            Ok(o)
        }
        Command::Chains(Input { input }) => {
            let (name, p) = load(input)?;
            let l = chains::L_poset(&p, lim)?;
            let classes = l
                .quotient
                .classes
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&i| chains::chain_label(&p, &l.chains[i]))
                        .collect()
                })
                .collect();
            r.inputs.push(PosetRecord::new("P", &name, &p));
            r.results
                .push(ResultRecord::new("L(P)", l.poset(), Some(classes)));
            let mut o = Outcome::new(r);
            o.dot = Some(("chains".into(), l.poset().clone()));
            Ok(o)
        }
        Command::Adjunctions {
            input: Input { input },
            count,
        } => {
            let (name, p) = load(input)?;
            ctx.heavy("|P| for Adj enumeration", p.len())?;
            let adj = enumerate_adjunctions(&p, lim)?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let mut t = Table::new("Adj(P)", &["#", "f*", "f_*"]);
            if !count {
                for (i, f) in adj.iter().enumerate() {
                    let [lo, up] = conn_label(&p, f);
                    t.push(vec![i.to_string(), lo, up]);
                }
            }
            r.tables.push(t);
            r.verdict(format!("|Adj(P)| = {}", adj.len()), true, "");
            let mut o = Outcome::new(r);
            if *count {
                o.text = Some(format!("{}\n", adj.len()));
            }
            Ok(o)
        }
        Command::Reduce(Input { input }) => {
            let (name, p) = load(input)?;
            let mut t = Table::new("tunnels", &["a", "b", "maximal"]);
            for tn in structure::find_tunnels(&p) {
                t.push(vec![
                    p.label(tn.a).into(),
                    p.label(tn.b).into(),
                    tn.maximal.to_string(),
                ]);
            }
            let reduced = structure::reduce(&p);
            r.inputs.push(PosetRecord::new("P", &name, &p));
            r.results.push(ResultRecord::new("reduced", &reduced, None));
            r.tables.push(t);
            let mut o = Outcome::new(r);
            o.text = Some(print(&format!("{name}-reduced"), &reduced));
            o.dot = Some(("reduced".into(), reduced));
            Ok(o)
        }
        Command::Check { what } => check(what, ctx, r),
        Command::Verify { what } => verify(what, ctx, r),
        Command::Search {
            max_size,
            hypothesis,
            source,
        } => {
            ctx.heavy("search size", *max_size)?;
            let h = match hypothesis {
                HypothesisArg::Paris => Hypothesis::Paris,
                HypothesisArg::VkLambda => Hypothesis::VanKampenLambda,
                HypothesisArg::VkStar => Hypothesis::VanKampenStar { source: *source },
            };
            let report = structure::search(*max_size, h, lim)?;
            let mut t = Table::new("instances", &["poset", "pieces", "holds", "note"]);
            for inst in &report.instances {
                let p = &inst.poset;
                let covers: Vec<String> = p
                    .covers()
                    .iter()
                    .map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b)))
                    .collect();
                let pieces: Vec<String> = inst.pieces.iter().map(|s| set_label(p, s)).collect();
                t.push(vec![
                    format!("{} [{}]", p.len(), covers.join(" ")),
                    pieces.join(" "),
                    inst.holds.to_string(),
                    inst.note.trim().to_string(),
                ]);
            }
            r.tables.push(t);
            let bad = report.instances.iter().filter(|i| !i.holds).count();
            r.verdict(
                format!("conclusion holds on every instance up to size {max_size}"),
                bad == 0,
                format!(
                    "{} connected posets examined, {} instances, {bad} violations",
                    report.examined,
                    report.instances.len()
                ),
            );
            let mut o = Outcome::new(r);
            o.code = if bad == 0 { 0 } else { 3 };
            Ok(o)
        }
        Command::Catalog { name } => {
            let p = catalog(name)?;
            r.inputs.push(PosetRecord::new("P", name, &p));
            let mut o = Outcome::new(r);
            o.text = Some(print(name, &p));
            o.dot = Some((name.clone(), p));
            Ok(o)
        }
        Command::Bench { what, sizes } => {
            let mut t = Table::new("bench", &["n", "posets", "total", "ms"]);
            for &n in sizes {
                let ps = posets_of_size(n, lim)?;
                let start = Instant::now();
                let total: usize = match what {
                    BenchWhat::Adjunctions => ps
                        .iter()
                        .map(|p| enumerate_adjunctions(p, lim).map(|a| a.len()))
                        .sum::<taxotopy::Result<usize>>()?,
                    BenchWhat::Lambda => ps
                        .iter()
                        .map(|p| lambda(p, lim).map(|l| l.class_count()))
                        .sum::<taxotopy::Result<usize>>()?,
                };
                let ms = start.elapsed().as_secs_f64() * 1e3;
                t.push(vec![
                    n.to_string(),
                    ps.len().to_string(),
                    total.to_string(),
                    format!("{ms:.1}"),
                ]);
            }
            r.tables.push(t);
            Ok(Outcome::new(r))
        }
    }
}

fn check(what: &CheckCmd, ctx: &Ctx, mut r: Report) -> Res<Outcome> {
    let lim = &ctx.limits;
    let holds = match what {
        CheckCmd::Subw(a)
        | CheckCmd::Strongsub(a)
        | CheckCmd::Extension(a)
        | CheckCmd::Restriction(a) => {
            let (name, p) = load(&a.input.input)?;
            let q = subset(&p, &a.subset)?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let adj = enumerate_adjunctions(&p, lim)?;
            let qs = set_label(&p, &q);
            match what {
                CheckCmd::Subw(_) => {
                    let ok = is_weak_sub(&adj, &q);
                    let detail = match first_non_restricting(&adj, &q) {
                        Some(i) => {
                            let [lo, up] = conn_label(&p, adj.get(i));
                            format!("connection ({lo} | {up}) does not restrict")
                        }
                        None => String::new(),
                    };
                    r.verdict(format!("{qs} ∈ Sub_w(P)"), ok, detail);
                    ok
                }
                CheckCmd::Strongsub(_) => {
                    ctx.heavy("|P| for strong subposets", p.len())?;
                    let ok = is_strong_sub(&adj, &q, lim)?;
                    r.verdict(format!("{qs} is a strong subposet"), ok, "");
                    ok
                }
                CheckCmd::Extension(_) => {
                    ctx.heavy("|P| for the extension property", p.len())?;
                    let (sub, _) = p.subposet(&q);
                    let adj_q = enumerate_adjunctions(&sub, lim)?;
                    let h = inclusion(&q);
                    let mut t =
                        Table::new("extensions", &["f* on Q", "f_* on Q", "extension on P"]);
                    for f in adj_q.iter() {
                        let [lo, up] = conn_label(&sub, f);
                        let ext = extension_of(&h, f, &adj).map(|i| {
                            let [lo, up] = conn_label(&p, adj.get(i));
                            format!("{lo} | {up}")
                        });
                        t.push(vec![lo, up, ext.unwrap_or_else(|| "-".into())]);
                    }
                    let ok = t.rows.iter().all(|row| row[2] != "-");
                    r.tables.push(t);
                    r.verdict(format!("{qs} ↣ P has the extension property"), ok, "");
                    ok
                }
                _ => {
                    let mut t = Table::new("restrictions", &["f*", "f_*", "restricts"]);
                    for f in adj.iter() {
                        let [lo, up] = conn_label(&p, f);
                        t.push(vec![lo, up, restricts_to(&p, f, &q).is_some().to_string()]);
                    }
                    let ok = t.rows.iter().all(|row| row[2] == "true");
                    r.tables.push(t);
                    r.verdict(format!("every connection on P restricts to {qs}"), ok, "");
                    ok
                }
            }
        }
        CheckCmd::Cover(a) | CheckCmd::ChainCompact(a) => {
            let (name, p) = load(&a.input.input)?;
            ctx.heavy("|P| for covers", p.len())?;
            let blocks: Vec<BitSet> = a.blocks.iter().map(|b| subset(&p, b)).collect::<Res<_>>()?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let labels: Vec<String> = blocks.iter().map(|b| set_label(&p, b)).collect();
            match validate_cover(&p, &blocks, lim) {
                Ok(cover) => {
                    r.verdict(format!("{} is a cover", labels.join(" ")), true, "");
                    if matches!(what, CheckCmd::ChainCompact(_)) {
                        let ok = is_chain_compact(&cover);
                        r.verdict("the cover is chain-compact", ok, "");
                        ok
                    } else {
                        true
                    }
                }
                Err(Error::Cover(e)) => {
                    r.verdict(
                        format!("{} is a cover", labels.join(" ")),
                        false,
                        e.to_string(),
                    );
                    false
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let mut o = Outcome::new(r);
    o.code = if holds { 0 } else { 1 };
    Ok(o)
}

fn verify(what: &VerifyCmd, ctx: &Ctx, mut r: Report) -> Res<Outcome> {
    let lim = &ctx.limits;
    let mut dot = None;
    match what {
        VerifyCmd::Cone(Input { input }) => {
            let (name, p) = load(input)?;
            let c = p.cone();
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let three = FinitePoset::chain(3);
            let diamond = catalog("diamond")?;
            let lam = lambda(&c, lim)?;
            r.results.push(ResultRecord::new(
                "λ(CP)",
                lam.poset(),
                Some(classes_of(&lam, &c)),
            ));
            r.verdict("λ(CP) ≅ 𝟑", are_isomorphic(lam.poset(), &three), "");
            let l = chains::L_poset(&c, lim)?;
            r.results.push(ResultRecord::new("L(CP)", l.poset(), None));
            r.verdict(
                "L(CP) ≅ ◇ ⊔ 𝟑",
                are_isomorphic(l.poset(), &diamond.disjoint_union(&three)),
                "",
            );
            if c.len() <= ctx.heavy {
                let big = fundamental_poset(&c, &c, lim)?;
                r.results
                    .push(ResultRecord::new("Λ(CP)", big.poset(), None));
                r.verdict("Λ(CP) ≅ ◇", are_isomorphic(big.poset(), &diamond), "");
            } else {
                r.verdict(
                    "Λ(CP) ≅ ◇",
                    true,
                    format!("skipped: |CP| = {} exceeds --max-heavy", c.len()),
                );
            }
            dot = Some(("lambda_cone".into(), lam.poset().clone()));
        }
        VerifyCmd::Tunnel(Input { input }) => {
            let (name, p) = load(input)?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let lam = lambda(&p, lim)?;
            let tunnels = structure::find_tunnels(&p);
            if tunnels.is_empty() {
                r.verdict("P has a tunnel", false, "");
                let mut o = Outcome::new(r);
                o.code = 1;
                return Ok(o);
            }
            let mut t = Table::new("collapses", &["a", "b", "|λ(collapse)|", "λ unchanged"]);
            for tn in &tunnels {
                let c = structure::collapse_tunnel(&p, tn.a, tn.b)?;
                let lc = lambda(&c, lim)?;
                let ok = are_isomorphic(lam.poset(), lc.poset());
                t.push(vec![
                    p.label(tn.a).into(),
                    p.label(tn.b).into(),
                    lc.class_count().to_string(),
                    ok.to_string(),
                ]);
            }
            let ok = t.rows.iter().all(|row| row[3] == "true");
            r.tables.push(t);
            r.results.push(ResultRecord::new(
                "λ(P)",
                lam.poset(),
                Some(classes_of(&lam, &p)),
            ));
            r.verdict(
                "λ(collapse) ≅ λ(P) for every tunnel",
                ok,
                format!("{} tunnels", tunnels.len()),
            );
        }
        VerifyCmd::VankampenLambda {
            input: Input { input },
            p1,
            p2,
        } => {
            let (name, p) = load(input)?;
            ctx.heavy("|P| for van Kampen", p.len())?;
            let (a, b) = (subset(&p, p1)?, subset(&p, p2)?);
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let report = structure::van_kampen_lambda_report(&p, &a, &b, lim)?;
            r.results
                .push(ResultRecord::new("pushout", &report.pushout, None));
            r.results
                .push(ResultRecord::new("λ(P)", &report.lambda, None));
            let hyp = report.hypothesis_failure.clone();
            r.verdict("hypotheses", hyp.is_none(), hyp.clone().unwrap_or_default());
            r.verdict("pushout ≅ λ(P)", report.isomorphic, "");
            let mut o = Outcome::new(r);
            o.code = if hyp.is_some() {
                1
            } else if report.isomorphic {
                0
            } else {
                3
            };
            o.dot = Some(("pushout".into(), report.pushout));
            return Ok(o);
        }
        VerifyCmd::VankampenStar {
            cover: a,
            source: s_spec,
        } => {
            let (name, p) = load(&a.input.input)?;
            let s = source(s_spec)?;
            ctx.heavy("|P| for van Kampen", p.len())?;
            ctx.heavy("|S|", s.len())?;
            let blocks: Vec<BitSet> = a.blocks.iter().map(|b| subset(&p, b)).collect::<Res<_>>()?;
            let cover = validate_cover(&p, &blocks, lim)?;
            r.inputs.push(PosetRecord::new("S", s_spec, &s));
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let report = van_kampen_star_report(&s, &cover, lim)?;
            r.results
                .push(ResultRecord::new("Λ*(S,P_⊥)", &report.star, None));
            r.results
                .push(ResultRecord::new("limit", &report.limit, None));
            r.verdict(
                "matching families biject with Pos(S,P_⊥)",
                report.families_biject,
                format!(
                    "{} maps, {} families",
                    report.maps, report.matching_families
                ),
            );
            r.verdict(
                "⪯* is blockwise",
                report.iff_violations.is_empty(),
                format!(
                    "{} violating pairs of {} related",
                    report.iff_violations.len(),
                    report.related_pairs
                ),
            );
            r.verdict("limit ≅ Λ*(S,P_⊥)", report.limit_isomorphic, "");
            let mut o = Outcome::new(r);
            o.code = if report.holds() { 0 } else { 3 };
            o.dot = Some(("limit".into(), report.limit));
            return Ok(o);
        }
        VerifyCmd::Paris {
            input: Input { input },
            n,
            m,
        } => {
            let (name, p) = load(input)?;
            ctx.heavy("|P| for Paris points", p.len())?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let report = if n.is_none() && m.is_none() {
                structure::paris_point(&p, lim)?
            } else {
                structure::paris_point_general(&p, n.unwrap_or(0), m.unwrap_or(0), lim)?
            };
            r.results
                .push(ResultRecord::new("pushout", &report.pushout, None));
            r.results
                .push(ResultRecord::new("λ(P)", &report.lambda, None));
            r.verdict(
                format!(
                    "T_{} = {} and B_{} = {}",
                    report.n,
                    set_label(&p, &report.top),
                    report.m,
                    set_label(&p, &report.bottom)
                ),
                true,
                "",
            );
            r.verdict("extension property", report.extension, "");
            r.verdict("pushout ≅ λ(P)", report.isomorphic, "");
            dot = Some(("pushout".into(), report.pushout));
        }
        VerifyCmd::ParisStar {
            input: Input { input },
            source: s_spec,
            n,
            m,
        } => {
            let (name, p) = load(input)?;
            let s = source(s_spec)?;
            ctx.heavy("|P| for Paris points", p.len())?;
            ctx.heavy("|S|", s.len())?;
            r.inputs.push(PosetRecord::new("S", s_spec, &s));
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let report = structure::paris_point_star(&p, &s, *n, *m, lim)?;
            r.results
                .push(ResultRecord::new("pullback", &report.pullback, None));
            r.results
                .push(ResultRecord::new("Λ*(S,P_⊥)", &report.star, None));
            r.verdict(
                "{T_n, B_m, T_n∩B_m} is chain-compact",
                report.chain_compact,
                "",
            );
            r.verdict("pullback ≅ Λ*(S,P_⊥)", report.isomorphic, "");
            dot = Some(("pullback".into(), report.pullback));
        }
        VerifyCmd::Disjoint(Input { input }) => {
            let (name, p) = load(input)?;
            let u = p.disjoint_union(&p);
            ctx.heavy("|P ⊔ P|", u.len())?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let formula = lambda_double(&p, lim)?;
            let direct = fundamental_poset(&u, &u, lim)?;
            r.results
                .push(ResultRecord::new("Λ(P⊔P)", direct.poset(), None));
            r.results
                .push(ResultRecord::new("fold formula", &formula, None));
            r.verdict(
                "Λ(P⊔P) ≅ fold formula",
                are_isomorphic(direct.poset(), &formula),
                "",
            );
            dot = Some(("disjoint".into(), formula));
        }
        VerifyCmd::Rigid(Input { input }) => {
            let (name, p) = load(input)?;
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let rp = structure::rigid_points(&p, lim)?;
            let mut t = Table::new("rigid points", &["fixed by", "elements"]);
            t.push(vec![
                "every closure f_*f*".into(),
                set_label(&p, &rp.closure),
            ]);
            t.push(vec![
                "every interior f*f_*".into(),
                set_label(&p, &rp.interior),
            ]);
            r.tables.push(t);
            r.verdict("⋃ max T_n and ⋃ min B_m are rigid", true, "");
        }
        VerifyCmd::Null {
            input: Input { input },
            source: s_spec,
        } => {
            let (name, p) = load(input)?;
            let s = source(s_spec)?;
            ctx.heavy("|P| for weak adjoint search", p.len())?;
            r.inputs.push(PosetRecord::new("S", s_spec, &s));
            r.inputs.push(PosetRecord::new("P", &name, &p));
            let null = is_null_taxotopic(&p, &s, lim)?;
            r.verdict("P ≈ 𝟏", null, "");
            if !null {
                let mut o = Outcome::new(r);
                o.code = 1;
                return Ok(o);
            }
            if let Some(pair) = poset_taxotopic(&FinitePoset::chain(1), &p, &s, lim)? {
                let mut t = Table::new("𝟏 ⪯ P", &["h⁺: P → 𝟏", "h₊: 𝟏 → P"]);
                t.push(vec![
                    pair.forward
                        .values()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    pair.backward
                        .values()
                        .iter()
                        .map(|&v| p.label(v).to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ]);
                r.tables.push(t);
            }
            if p.len() + 2 <= ctx.heavy {
                r.verdict("𝐕 ≈ P̈", v_equivalence_check(&p, lim)?, "");
            } else {
                r.verdict(
                    "𝐕 ≈ P̈",
                    true,
                    format!("skipped: |P̈| = {} exceeds --max-heavy", p.len() + 2),
                );
            }
        }
    }
    let code = if r.verdicts.iter().all(|v| v.holds) {
        0
    } else {
        3
    };
    let mut o = Outcome::new(r);
    o.code = code;
    o.dot = dot;
    Ok(o)
}

fn limits(cli: &Cli) -> (Ctx, Vec<String>) {
    let mut warnings = Vec::new();
    let mut limits = Limits::default();
    if let Some(n) = cli.max_lambda {
        if n > DEFAULT_LAMBDA {
            warnings.push(format!(
                "--max-lambda {n} is above the default {DEFAULT_LAMBDA}; λ may take very long"
            ));
        }
        limits.lambda = n;
    }
    let heavy = cli.max_heavy.unwrap_or(DEFAULT_HEAVY);
    if heavy > DEFAULT_HEAVY {
        warnings.push(format!("--max-heavy {heavy} is above the default {DEFAULT_HEAVY}; Adj-heavy verbs may take very long"));
    }
    if let Some(b) = cli.map_bits {
        if b > limits.map_bits {
            warnings.push(format!(
                "--map-bits {b} is above the default {}; map enumeration may exhaust memory",
                limits.map_bits
            ));
        }
        limits.map_bits = b;
    }
    limits.adjunctions = limits.adjunctions.max(limits.lambda).max(heavy);
    limits.generation = limits.generation.max(heavy);
    (Ctx { limits, heavy }, warnings)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let (ctx, warnings) = limits(&cli);
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let outcome = match run(&cli.command, &ctx, command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let mut report = outcome.report;
    report.timing_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        match &outcome.text {
            Some(t) => print!("{t}"),
            None => print!("{}", report.render_text()),
        }
    }
    if let Some(path) = &cli.dot {
        match &outcome.dot {
            Some((name, p)) => {
                if let Err(e) = std::fs::write(path, to_dot(name, p)) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => eprintln!("warning: this command has no poset to draw; --dot ignored"),
        }
    }
    ExitCode::from(outcome.code)
}
