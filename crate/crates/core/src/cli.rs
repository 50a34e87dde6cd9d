//! Command-line front end. [`run`] parses arguments, runs one subcommand and
//! returns the exit code with the report text.
//!
//! Exit codes: 0 success, 1 mismatch or failed check, 2 usage, 3 resource cap.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::biorder::{square_report, DEFAULT_MAX_MONOID};
use crate::error::{Error, Result};
use crate::fpgroup::{abelianization, eliminate_short_relators, todd_coxeter, DEFAULT_MAX_COSETS};
use crate::group::{make_group, Group, GroupSpec};
use crate::presentation::{
    build_gr_presentation, build_quotient_presentation, lavers_presentation, schreier_build, Presentation, RelTag,
    DEFAULT_MAX_RELATORS,
};
use crate::reduction::{connectivity, decompose, rising_point, simplify_presentation, Simplified};
use crate::rees::{build_sandwich, SandwichMatrix, DEFAULT_MAX_ENTRIES};
use crate::wreath::WreathElem;

#[derive(Parser, Debug)]
#[command(name = "igwreath", version, about = "Maximal subgroups of IG(E) for End F_n(G)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the rank-r sandwich matrix.
    Sandwich(Common),
    /// Print a presentation in the relator file format.
    Presentation {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Kind::Gr)]
        kind: Kind,
    },
    /// Coset-enumerate the simplified presentation and compare with |G|^r r!.
    Verify(Common),
    /// Rising point of an element of G ≀ S_r.
    RisingPoint(ElemArgs),
    /// Split an element as β·γ with γ a simple form.
    Decompose(ElemArgs),
    /// Connectivity components of each matrix value.
    Connectivity(Common),
    /// E-square counts of End F_n(G) by rank.
    Squares(Common),
    /// Positions of the matrix holding a given value.
    Occurrences {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Gr,
    Quotient,
    Lavers,
    Simplified,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value = "trivial")]
    group: String,
    #[arg(long, env = "IGWREATH_MAX_ENTRIES", default_value_t = DEFAULT_MAX_ENTRIES)]
    max_entries: usize,
    #[arg(long, env = "IGWREATH_MAX_RELATORS", default_value_t = DEFAULT_MAX_RELATORS)]
    max_relators: usize,
    #[arg(long, env = "IGWREATH_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    #[arg(long, env = "IGWREATH_MAX_MONOID", default_value_t = DEFAULT_MAX_MONOID)]
    max_monoid: usize,
    #[arg(long)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct ElemArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    alpha: String,
}

/// Caps for [`verify`].
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_entries: usize,
    pub max_relators: usize,
    pub max_cosets: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_entries: DEFAULT_MAX_ENTRIES,
            max_relators: DEFAULT_MAX_RELATORS,
            max_cosets: DEFAULT_MAX_COSETS,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub r: usize,
    pub group: String,
    pub generators: usize,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub simplified_generators: usize,
    pub simplified_relators: usize,
    pub merges: usize,
    /// `None` when the group was not enumerated (rank `n−1`).
    pub order: Option<usize>,
    pub expected: Option<usize>,
    pub abelianization: String,
    pub ok: bool,
}

impl VerifyReport {
    pub fn line(&self) -> String {
        let verdict = if self.ok { "OK" } else { "MISMATCH" };
        match (self.order, self.expected) {
            (Some(o), Some(e)) => format!("order={o} expected={e} {verdict}"),
            _ => format!("r3={} abelianization={} {verdict}", self.r3, self.abelianization),
        }
    }
}

/// `|G|^r · r!`, or `None` on overflow.
pub fn expected_order(g: &Group, r: usize) -> Option<usize> {
    let mut x = 1usize;
    for k in 1..=r {
        x = x.checked_mul(g.order())?.checked_mul(k)?;
    }
    Some(x)
}

/// Everything `verify` needs, kept for callers that want to inspect it.
pub struct Pipeline {
    pub matrix: SandwichMatrix,
    pub gr: Presentation,
    pub simplified: Simplified,
}

pub fn pipeline(g: &Group, n: usize, r: usize, caps: Caps) -> Result<Pipeline> {
    let matrix = build_sandwich(g, n, r, caps.max_entries)?;
    let s = schreier_build(n, r)?;
    let (gr, _) = build_gr_presentation(&matrix, &s, caps.max_relators)?;
    let pg = connectivity(&matrix);
    let simplified = simplify_presentation(&gr, &matrix, &pg)?;
    Ok(Pipeline { matrix, gr, simplified })
}

/// Builds, simplifies and checks the presentation. At rank `n−1` the check
/// is that no R3 relators exist; at rank `n` the group must be trivial;
/// otherwise the enumerated order must equal `|G|^r r!`.
pub fn verify(g: &Group, n: usize, r: usize, caps: Caps) -> Result<VerifyReport> {
    let matrix = build_sandwich(g, n, r, caps.max_entries)?;
    let s = schreier_build(n, r)?;
    let (gr, _) = build_gr_presentation(&matrix, &s, caps.max_relators)?;
    let mut rep = VerifyReport {
        n,
        r,
        group: g.label().to_string(),
        generators: gr.num_generators(),
        r1: gr.count_tag(RelTag::R1),
        r2: gr.count_tag(RelTag::R2),
        r3: gr.count_tag(RelTag::R3),
        simplified_generators: 0,
        simplified_relators: 0,
        merges: 0,
        order: None,
        expected: None,
        abelianization: String::new(),
        ok: false,
    };
    if r + 1 == n {
        let reduced = eliminate_short_relators(&gr);
        rep.simplified_generators = reduced.pres.num_generators();
        rep.simplified_relators = reduced.pres.relators.len();
        rep.abelianization = abelianization(&reduced.pres)?.to_string();
        rep.ok = rep.r3 == 0;
        return Ok(rep);
    }
    let pg = connectivity(&matrix);
    let simplified = simplify_presentation(&gr, &matrix, &pg)?;
    let p = simplified.presentation();
    rep.simplified_generators = p.num_generators();
    rep.simplified_relators = p.relators.len();
    rep.merges = simplified.merges.len();
    rep.abelianization = abelianization(p)?.to_string();
    let table = todd_coxeter(p, &[], caps.max_cosets)?;
    rep.order = Some(table.order());
    rep.expected = if r == n { Some(1) } else { expected_order(g, r) };
    rep.ok = rep.order == rep.expected;
    Ok(rep)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } | Error::Capped { .. } => 3,
        Error::WitnessNotFound(_) | Error::IncompleteTable | Error::Overflow(_) => 1,
        _ => 2,
    }
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Parse(format!("--{name} is required")))
}

fn group_of(c: &Common) -> Result<Group> {
    make_group(&c.group.parse::<GroupSpec>()?)
}

fn rank_of(c: &Common) -> Result<(usize, usize)> {
    let (n, r) = (need(c.n, "n")?, need(c.r, "r")?);
    if n < 3 || r == 0 || r > n {
        return Err(Error::BadRank { n, r });
    }
    Ok((n, r))
}

/// Parses `args` (including the program name), runs the command and returns
/// `(exit code, report)`.
pub fn run<S: AsRef<str>>(args: &[S]) -> (i32, String) {
    let cli = match Cli::try_parse_from(args.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let output = match &cli.command {
        Command::Sandwich(c) | Command::Verify(c) | Command::Connectivity(c) | Command::Squares(c) => c.output.clone(),
        Command::Presentation { common, .. } | Command::Occurrences { common, .. } => common.output.clone(),
        Command::RisingPoint(e) | Command::Decompose(e) => e.common.output.clone(),
    };
    let (code, report) = match dispatch(&cli.command) {
        Ok(x) => x,
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    };
    match output {
        Some(path) if code == 0 || code == 1 => match std::fs::write(&path, &report) {
            Ok(()) => (code, String::new()),
            Err(e) => (2, format!("error: cannot write {path}: {e}\n")),
        },
        _ => (code, report),
    }
}

fn dispatch(cmd: &Command) -> Result<(i32, String)> {
    let mut out = String::new();
    match cmd {
        Command::Sandwich(c) => {
            let g = group_of(c)?;
            let (n, r) = rank_of(c)?;
            let m = build_sandwich(&g, n, r, c.max_entries)?;
            if c.json {
                let rows: Vec<_> = m
                    .nonzero_positions()
                    .iter()
                    .map(|&(i, l)| {
                        let v = m.value(l, i).expect("nonzero");
                        json!({"lambda": m.lambdas[l].to_string(), "kernel": i + 1, "value": v.canonical()})
                    })
                    .collect();
                let doc = json!({
                    "n": n, "r": r, "group_order": g.order(),
                    "lambdas": m.num_lambdas(), "kernels": m.num_kernels(),
                    "nonzero": m.nonzero_count(), "values": m.values.len(), "entries": rows,
                });
                out = doc.to_string() + "\n";
            } else {
                out = m.export();
            }
        }
        Command::Presentation { common: c, kind } => {
            let g = group_of(c)?;
            let caps = Caps {
                max_entries: c.max_entries,
                max_relators: c.max_relators,
                max_cosets: c.max_cosets,
            };
            let p = match kind {
                Kind::Lavers => lavers_presentation(&g, need(c.r, "r")?),
                _ => {
                    let (n, r) = rank_of(c)?;
                    match kind {
                        Kind::Gr => {
                            let m = build_sandwich(&g, n, r, c.max_entries)?;
                            build_gr_presentation(&m, &schreier_build(n, r)?, c.max_relators)?.0
                        }
                        Kind::Quotient => {
                            let m = build_sandwich(&g, n, r, c.max_entries)?;
                            build_quotient_presentation(&m, c.max_relators)?
                        }
                        _ => pipeline(&g, n, r, caps)?.simplified.reduced.pres,
                    }
                }
            };
            if c.json {
                let tags: serde_json::Map<String, serde_json::Value> = RelTag::ALL
                    .iter()
                    .filter(|t| p.count_tag(**t) > 0)
                    .map(|t| (t.to_string(), json!(p.count_tag(*t))))
                    .collect();
                let rels: Vec<String> = p.relators.iter().map(|w| p.word_to_string(w)).collect();
                let doc = json!({"generators": p.generators, "relators": rels, "counts": tags});
                out = doc.to_string() + "\n";
            } else {
                out = p.to_text();
            }
        }
        Command::Verify(c) => {
            let g = group_of(c)?;
            let (n, r) = rank_of(c)?;
            let caps = Caps {
                max_entries: c.max_entries,
                max_relators: c.max_relators,
                max_cosets: c.max_cosets,
            };
            let rep = verify(&g, n, r, caps)?;
            if c.json {
                out = serde_json::to_string(&rep).expect("report serializes") + "\n";
            } else {
                writeln!(out, "{}", rep.line()).unwrap();
            }
            return Ok((if rep.ok { 0 } else { 1 }, out));
        }
        Command::RisingPoint(e) => {
            let g = group_of(&e.common)?;
            let phi = parse_alpha(&g, &e.alpha, e.common.r)?;
            let k = rising_point(&phi);
            if e.common.json {
                out = json!({"alpha": phi.canonical(), "rising_point": k}).to_string() + "\n";
            } else {
                writeln!(out, "{k}").unwrap();
            }
        }
        Command::Decompose(e) => {
            let g = group_of(&e.common)?;
            let phi = parse_alpha(&g, &e.alpha, e.common.r)?;
            let d = decompose(&g, &phi)?;
            if e.common.json {
                out = serde_json::to_string(&json!({
                    "alpha": phi.canonical(), "rising_point": d.rising_point, "case": format!("{:?}", d.case),
                    "beta": d.beta.canonical(), "gamma": d.gamma.canonical(),
                    "beta_rising_point": rising_point(&d.beta),
                }))
                .expect("serializes")
                    + "\n";
            } else {
                writeln!(
                    out,
                    "rising_point={} case={:?} beta={} gamma={} beta_rising_point={}",
                    d.rising_point,
                    d.case,
                    d.beta,
                    d.gamma,
                    rising_point(&d.beta)
                )
                .unwrap();
            }
        }
        Command::Connectivity(c) => {
            let g = group_of(c)?;
            let (n, r) = rank_of(c)?;
            let m = build_sandwich(&g, n, r, c.max_entries)?;
            let lines = connectivity(&m).report(&m);
            if c.json {
                out = serde_json::to_string(&lines).expect("serializes") + "\n";
            } else {
                for l in lines {
                    writeln!(out, "{l}").unwrap();
                }
            }
        }
        Command::Squares(c) => {
            let g = group_of(c)?;
            let n = need(c.n, "n")?;
            let rep = square_report(&g, n, c.max_monoid)?;
            if c.json {
                out = json!({
                    "idempotents_by_rank": rep.idempotents_by_rank,
                    "squares_by_rank": rep.squares_by_rank,
                    "singular_by_rank": rep.singular_by_rank,
                })
                .to_string()
                    + "\n";
            } else {
                for r in 1..=n {
                    writeln!(
                        out,
                        "rank={r} idempotents={} squares={} singular={}",
                        rep.idempotents_by_rank[r - 1],
                        rep.squares_by_rank[r - 1],
                        rep.singular_by_rank[r - 1]
                    )
                    .unwrap();
                }
            }
        }
        Command::Occurrences { common: c, alpha } => {
            let g = group_of(c)?;
            let (n, r) = rank_of(c)?;
            let phi = parse_alpha(&g, alpha, Some(r))?;
            let m = build_sandwich(&g, n, r, c.max_entries)?;
            let occ = m.occurrences(&phi);
            if c.json {
                let pos: Vec<_> = occ
                    .iter()
                    .map(|&(i, l)| json!({"kernel": i + 1, "lambda": m.lambdas[l].to_string()}))
                    .collect();
                out = json!({"alpha": phi.canonical(), "count": occ.len(), "positions": pos}).to_string() + "\n";
            } else {
                for &(i, l) in &occ {
                    writeln!(out, "kernel={} lambda={}", i + 1, m.lambdas[l]).unwrap();
                }
                writeln!(out, "count={}", occ.len()).unwrap();
            }
        }
    }
    Ok((0, out))
}

fn parse_alpha(g: &Group, text: &str, r: Option<usize>) -> Result<WreathElem> {
    let phi = WreathElem::parse(g, text)?;
    if let Some(r) = r {
        if phi.rank() != r {
            return Err(Error::RankMismatch(phi.rank(), r));
        }
    }
    Ok(phi)
}
