//! `ratdec`: decomposition of univariate polynomials and rational
//! functions over finite fields, and the subgroup/fixed-field
//! correspondence behind it.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 invalid input, 2 search budget exceeded, 3 a verification check
//! failed. Identical invocations produce byte-identical output.

use clap::{Args, Parser, Subcommand};
use ratdec::constructions::{build_constructions, theorem_suite, CheckStatus};
use ratdec::decomp::{complete_decompositions, SearchLimits};
use ratdec::galois::{fixed_field, fixing_group, joint_generator};
use ratdec::gf::FieldCtx;
use ratdec::moebius::{
    closure, enumerate_gamma, enumerate_subgroups, gamma_order, GammaKind, LatticeOptions, Moebius,
};
use ratdec::parse::{parse_modulus, parse_ratfunc};
use ratdec::ratfunc::RatFunc;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ratdec",
    version,
    about = "Exact decomposition of polynomials and rational functions over F_q"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field size q = p^m (a prime power)
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u64>,
    /// Characteristic (requires --m)
    #[arg(long, requires = "m")]
    p: Option<u64>,
    /// Extension degree (requires --p)
    #[arg(long, requires = "p")]
    m: Option<usize>,
    /// Modulus polynomial in t, e.g. "t^2+t+1" (default: lexicographically
    /// smallest irreducible)
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print all complete decompositions of a function, outermost first
    Decompose {
        function: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print the elements of the fixing group G(f)
    Group {
        function: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
    /// Generator of the fixed field of the subgroup generated by units
    Fixfield {
        #[arg(required = true, num_args = 1..)]
        generators: Vec<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
    /// Maximal subgroup chains of the affine group (all of Γ with --full)
    Chains {
        #[command(flatten)]
        field: FieldArgs,
        /// Use the full unit group instead of the affine subgroup
        #[arg(long)]
        full: bool,
        /// Write the whole lattice as JSON to this file
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Expand the invariant functions P_q, h_q and f_q for the field
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
    /// Generator of the compositum field K(f, g)
    Joint {
        f: String,
        g: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run the theorem-check suite for the field
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<ratdec::Error> for Failure {
    fn from(e: ratdec::Error) -> Self {
        Failure {
            code: if e.is_budget() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn factor_prime_power(q: u64) -> Result<(u64, usize), Failure> {
    if q < 2 {
        return Err(Failure::input(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q; // q itself is prime
    }
    let mut m = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Failure::input(format!("{q} is not a prime power")));
    }
    Ok((p, m))
}

fn resolve_field(args: &FieldArgs) -> Result<FieldCtx, Failure> {
    let (p, m) = match (args.q, args.p, args.m) {
        (Some(q), None, None) => factor_prime_power(q)?,
        (None, Some(p), Some(m)) => (p, m),
        _ => {
            return Err(Failure::input(
                "specify the field as --q N or as --p P --m M".to_string(),
            ))
        }
    };
    let ctx = match &args.modulus {
        Some(text) => FieldCtx::with_modulus(p, m, &parse_modulus(text, p)?)?,
        None => FieldCtx::new(p, m)?,
    };
    Ok(ctx)
}

fn field_json(ctx: &FieldCtx) -> serde_json::Value {
    json!({ "p": ctx.p(), "m": ctx.m(), "modulus": ctx.modulus_string() })
}

fn parse_nonconstant(s: &str, ctx: &FieldCtx) -> Result<RatFunc, Failure> {
    let f = parse_ratfunc(s, ctx)?;
    if f.is_constant() {
        return Err(Failure::input(format!(
            "'{s}' is a constant; a nonconstant function is required"
        )));
    }
    Ok(f)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = SearchLimits::default();
    match cli.cmd {
        Cmd::Decompose {
            function,
            field,
            json,
        } => {
            let ctx = resolve_field(&field)?;
            let f = parse_nonconstant(&function, &ctx)?;
            let chains = complete_decompositions(&f, &limits)?;
            if json {
                let chains_json: Vec<Vec<String>> = chains
                    .iter()
                    .map(|c| c.components.iter().map(|g| g.to_string()).collect())
                    .collect();
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": f.to_string(),
                    "result": { "decompositions": chains_json },
                }));
            } else if f.is_unit() {
                println!("{f} is a unit: no complete decompositions");
            } else if chains.len() == 1 && chains[0].len() == 1 {
                println!("{f} is indecomposable");
            } else {
                for c in &chains {
                    println!("{c}");
                }
            }
            Ok(())
        }
        Cmd::Group {
            function,
            field,
            json,
        } => {
            let ctx = resolve_field(&field)?;
            let f = parse_nonconstant(&function, &ctx)?;
            let group = fixing_group(&f)?;
            if json {
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": f.to_string(),
                    "result": { "order": group.order(), "elements": group.element_strings() },
                }));
            } else {
                println!("order {}", group.order());
                for s in group.element_strings() {
                    println!("{s}");
                }
            }
            Ok(())
        }
        Cmd::Fixfield {
            generators,
            field,
            json,
        } => {
            let ctx = resolve_field(&field)?;
            let mut units = Vec::new();
            for s in &generators {
                let f = parse_nonconstant(s, &ctx)?;
                units.push(Moebius::from_ratfunc(&f)?);
            }
            let group = closure(&ctx, &units);
            let gen = fixed_field(&group);
            if json {
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": generators,
                    "result": {
                        "group_order": group.order(),
                        "witness_index": gen.witness,
                        "generator": gen.generator.to_string(),
                        "degree": gen.generator.degree(),
                    },
                }));
            } else {
                println!("group order {}", group.order());
                println!("{}", gen.generator);
            }
            Ok(())
        }
        Cmd::Chains {
            field,
            full,
            export,
            json,
        } => {
            let ctx = resolve_field(&field)?;
            let opts = LatticeOptions::default();
            let order = if full {
                gamma_order(ctx.q())
            } else {
                ctx.q() * (ctx.q() - 1)
            };
            if order > opts.max_order as u64 {
                return Err(ratdec::Error::GroupTooLarge {
                    order: order as usize,
                    bound: opts.max_order,
                }
                .into());
            }
            let kind = if full {
                GammaKind::Full
            } else {
                GammaKind::Affine
            };
            let group = enumerate_gamma(&ctx, kind);
            let lattice = enumerate_subgroups(&group, &opts)?;
            let counts = lattice.chain_length_multiset();
            if let Some(path) = export {
                let payload = serde_json::to_string_pretty(&lattice.export())
                    .expect("lattice export serializes");
                std::fs::write(&path, payload + "\n")
                    .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            }
            if json {
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": if full { "gamma" } else { "gamma0" },
                    "result": {
                        "group_order": group.order(),
                        "subgroup_count": lattice.nodes().len(),
                        "chain_group_counts": counts,
                    },
                }));
            } else if counts.len() == 1 {
                let (len, n) = counts.iter().next().unwrap();
                println!("all maximal chains: {len} groups ({n} chains)");
            } else {
                let parts: Vec<String> = counts
                    .iter()
                    .map(|(len, n)| format!("{len} groups x{n}"))
                    .collect();
                println!("chain lengths differ: {}", parts.join(", "));
            }
            Ok(())
        }
        Cmd::Construct { field, json } => {
            let ctx = resolve_field(&field)?;
            let set = build_constructions(&ctx);
            if json {
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": format!("q = {}", ctx.q()),
                    "result": {
                        "p_q": set.affine_invariant.to_string(),
                        "h_q": set.cofactor.to_string(),
                        "f_q": set.full_invariant.to_string(),
                        "degrees": {
                            "p_q": set.affine_invariant.degree().unwrap_or(0),
                            "h_q": set.cofactor.degree(),
                            "f_q": set.full_invariant.degree(),
                        },
                    },
                }));
            } else {
                println!("P_q = {}", set.affine_invariant);
                println!("h_q = {}", set.cofactor);
                println!("f_q = {}", set.full_invariant);
            }
            Ok(())
        }
        Cmd::Joint { f, g, field, json } => {
            let ctx = resolve_field(&field)?;
            let f = parse_nonconstant(&f, &ctx)?;
            let g = parse_nonconstant(&g, &ctx)?;
            let gen = joint_generator(&f, &g)?;
            if json {
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": [f.to_string(), g.to_string()],
                    "result": { "generator": gen.to_string(), "degree": gen.degree() },
                }));
            } else {
                println!("{gen}");
            }
            Ok(())
        }
        Cmd::Verify { field, json } => {
            let ctx = resolve_field(&field)?;
            let results = theorem_suite(&ctx, &limits);
            if json {
                print_json(&json!({
                    "field": field_json(&ctx),
                    "input": format!("q = {}", ctx.q()),
                    "result": serde_json::to_value(&results).expect("report serializes"),
                }));
            } else {
                for r in &results {
                    let tag = match r.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::BudgetExceeded => "budget",
                        CheckStatus::Skipped => "skip",
                    };
                    println!("[{tag}] {}: {}", r.check, r.witness);
                }
            }
            if results.iter().any(|r| r.status == CheckStatus::Fail) {
                return Err(Failure {
                    code: 3,
                    message: "verification checks failed".into(),
                });
            }
            if results
                .iter()
                .any(|r| r.status == CheckStatus::BudgetExceeded)
            {
                return Err(Failure {
                    code: 2,
                    message: "verification checks exceeded budgets".into(),
                });
            }
            Ok(())
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn main() -> ExitCode {
    // Die quietly when stdout is a closed pipe (e.g. `ratdec ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
