//! `lrsys`: load semigroups, λρ-systems and actions, build products and
//! check the structural results on them.
//!
//! Exit status: 0 on success, 1 when a verification fails (the witness is
//! printed), 2 on usage or input errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use lrsys::category::{canonical_transformation, induced_map};
use lrsys::constructions::{from_right_action, from_two_sided_action, system_by_name, SYSTEM_NAMES};
use lrsys::group_wreath::{corollary_demo, verify_wreath_iso, wreathize};
use lrsys::io::{self, Action, ActionFile, SemigroupFile, SystemFile, TransformationFile};
use lrsys::iso::{divides, find_isomorphism_with_cap, DivisionOptions, DEFAULT_CONGRUENCE_CAP, DEFAULT_ISO_CAP};
use lrsys::product::{nonassociativity_witness, product_table_with_cap, DEFAULT_TABLE_CAP, DEFAULT_UNIVERSE_CAP};
use lrsys::system::{check_axioms, enumerate_systems, EnumerationOptions, Unitality};
use lrsys::{catalog, FiniteSemigroup, LrSystem, SystemOfMaps};

#[derive(Parser)]
#[command(name = "lrsys", version, about = "Finite λρ-systems and their products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a semigroup table, a system of maps, or an action.
    Validate {
        #[arg(long)]
        system: Option<String>,
        /// A semigroup file or built-in name.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        action: Option<String>,
    },
    /// Multiplication table of H^[S], or of the product built from an action.
    Product {
        /// The system S (file or built-in name).
        #[arg(long, visible_alias = "base")]
        system: Option<String>,
        /// A one- or two-sided action; its action system is used.
        #[arg(long, conflicts_with = "system")]
        action: Option<String>,
        #[arg(long, default_value = "z2")]
        h: String,
        /// Largest table to build.
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        cap: usize,
    },
    /// Quotient of a semigroup, or of H^[S], by a partition.
    Quotient {
        #[arg(long)]
        base: Option<String>,
        #[arg(long, conflicts_with = "base")]
        system: Option<String>,
        #[arg(long, default_value = "z2")]
        h: String,
        /// Partition file, or inline JSON such as [[0,1],[2,5],[3,4]].
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        cap: usize,
    },
    /// Search for an isomorphism between two semigroups.
    Iso {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_ISO_CAP)]
        cap: usize,
    },
    /// Decide whether T divides S. S is a semigroup, or H^[system].
    Divides {
        t: String,
        s: Option<String>,
        #[arg(long, conflicts_with = "s")]
        system: Option<String>,
        #[arg(long, default_value = "z2")]
        h: String,
        /// Also try subsemigroups generated by up to three elements.
        #[arg(long)]
        subsemigroups: bool,
        /// Bound on the number of congruences examined.
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_CAP)]
        cap: usize,
    },
    /// List the built-in semigroups and systems, or print one of them.
    Examples { name: Option<String> },
    /// Truncated free system over the base and the canonical arrow into it.
    Free {
        #[arg(long)]
        system: String,
        /// Longest word kept.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value = "z2")]
        h: String,
        #[arg(long, default_value_t = DEFAULT_UNIVERSE_CAP)]
        cap: usize,
    },
    /// Derived action and wreath isomorphism of a unital system over a group.
    Wreathize {
        #[arg(long)]
        system: String,
        /// Also compare H^[S] with the wreath product H ≀ (X,G).
        #[arg(long)]
        h: Option<String>,
    },
    /// Check the two divisions behind the decomposition result.
    Corollary,
    /// Enumerate λρ-systems over a base with given index sizes.
    Enumerate {
        #[arg(long)]
        base: String,
        /// Index sizes, comma separated, one per base element.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop after this many systems.
        #[arg(long)]
        cap: Option<usize>,
        /// Only systems with identity maps at the unit.
        #[arg(long)]
        unital: bool,
    },
}

struct Output {
    pretty: String,
    json: Value,
    verified: bool,
}

impl Output {
    fn ok(pretty: String, json: Value) -> Self {
        Self {
            pretty,
            json,
            verified: true,
        }
    }

    fn check(verified: bool, pretty: String, json: Value) -> Self {
        Self { pretty, json, verified }
    }
}

type CmdResult = Result<Output, String>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn semigroup(name: &str) -> Result<FiniteSemigroup, String> {
    io::load_semigroup(name).map_err(|e| e.to_string())
}

fn system_maps(name: &str) -> Result<SystemOfMaps, String> {
    io::load_system(name).map_err(|e| e.to_string())
}

fn system(name: &str) -> Result<LrSystem, String> {
    system_maps(name)?.validate().map_err(|e| format!("{name}: {e}"))
}

fn format_table(s: &FiniteSemigroup) -> String {
    let names: Vec<String> = (0..s.size()).map(|a| s.name(a)).collect();
    let w = names.iter().map(|n| n.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{:w$} |", "·");
    for n in &names {
        let _ = write!(out, " {n:w$}");
    }
    out.push('\n');
    out.push_str(&"-".repeat(w + 1));
    out.push('+');
    out.push_str(&"-".repeat((w + 1) * names.len()));
    out.push('\n');
    for a in 0..s.size() {
        let _ = write!(out, "{:w$} |", names[a]);
        for b in 0..s.size() {
            let _ = write!(out, " {:w$}", names[s.mul(a, b)]);
        }
        out.push('\n');
    }
    out
}

fn table_output(s: &FiniteSemigroup) -> Output {
    Output::ok(format_table(s), to_value(&SemigroupFile::from(s)))
}

fn violation_text(v: &lrsys::AxiomViolation) -> String {
    format!("AxiomViolation{{{}, a={}, b={}, c={}, point={}}}", v.axiom, v.a, v.b, v.c, v.point)
}

fn validate(system: Option<String>, base: Option<String>, action: Option<String>) -> CmdResult {
    match (system, base, action) {
        (Some(name), None, None) => {
            let maps = system_maps(&name)?;
            let report = check_axioms(&maps, false);
            if let Some(v) = report.violations.first() {
                let w = nonassociativity_witness(&maps, v);
                let pretty = format!(
                    "invalid: {}\n{v}\nnon-associative triple in H^[S] with |H| = {}: ({}) ({}) ({})\n",
                    violation_text(v),
                    w.h.size(),
                    w.triple.p,
                    w.triple.q,
                    w.triple.r
                );
                let json = json!({
                    "valid": false,
                    "violation": v,
                    "witness": {"h": SemigroupFile::from(&w.h), "triple": w.triple},
                });
                return Ok(Output::check(false, pretty, json));
            }
            let sys = maps.validate().map_err(|e| e.to_string())?;
            let unitality = sys.unitality();
            let ideal = sys.empty_support_ideal().map_err(|e| e.to_string())?;
            let unital = match unitality {
                Unitality::Unital { identity } => format!("yes (unit {identity})"),
                Unitality::NotMonoid => "no (base is not a monoid)".into(),
                Unitality::NotIdentity { a, map, point } => format!("no ({map} at a = {a}, point {point})"),
            };
            let pretty = format!(
                "valid λρ-system: base of order {}, index sizes {:?}\naxiom instances checked: {}\nunital: {unital}\ngroup preserving: {}\nempty-fiber ideal: {:?}\n",
                sys.base().size(),
                sys.index_sizes(),
                report.instances_checked,
                sys.is_group_preserving(),
                ideal
            );
            let json = json!({
                "valid": true,
                "instances_checked": report.instances_checked,
                "unitality": unitality,
                "group_preserving": sys.is_group_preserving(),
                "empty_support_ideal": ideal,
            });
            Ok(Output::ok(pretty, json))
        }
        (None, Some(name), None) => {
            // Loading already checks shape and associativity.
            let s = semigroup(&name)?;
            let pretty = format!(
                "valid semigroup of {} elements\nmonoid: {}\ngroup: {}\ncommutative: {}\n",
                s.size(),
                s.is_monoid(),
                s.is_group(),
                s.is_commutative()
            );
            let json = json!({
                "valid": true,
                "size": s.size(),
                "monoid": s.is_monoid(),
                "group": s.is_group(),
                "commutative": s.is_commutative(),
            });
            Ok(Output::ok(pretty, json))
        }
        (None, None, Some(path)) => {
            let (kind, carrier) = match io::load_action(&path).map_err(|e| e.to_string())? {
                Action::Right(a) => ("right", a.carrier()),
                Action::TwoSided(a) => ("two-sided", a.carrier()),
            };
            let pretty = format!("valid {kind} action on {carrier} points\n");
            Ok(Output::ok(pretty, json!({"valid": true, "kind": kind, "carrier": carrier})))
        }
        _ => Err("validate takes exactly one of --system, --base, --action".into()),
    }
}

fn product(system_name: Option<String>, action: Option<String>, h: &str, cap: usize) -> CmdResult {
    let h = semigroup(h)?;
    let sys = match (system_name, action) {
        (Some(name), None) => system(&name)?,
        (None, Some(path)) => match io::load_action(&path).map_err(|e| e.to_string())? {
            Action::Right(a) => from_right_action(&a).map_err(|e| e.to_string())?,
            Action::TwoSided(a) => from_two_sided_action(&a).map_err(|e| e.to_string())?,
        },
        _ => return Err("product needs --system (or --base) or --action".into()),
    };
    let table = product_table_with_cap(&h, &sys, cap).map_err(|e| e.to_string())?;
    Ok(table_output(&table))
}

fn partition_input(spec: &str, size: usize) -> Result<lrsys::Partition, String> {
    let r = if spec.trim_start().starts_with('[') {
        io::parse_partition(spec, size)
    } else {
        io::load_partition(spec, size)
    };
    r.map_err(|e| e.to_string())
}

fn quotient(base: Option<String>, system_name: Option<String>, h: &str, partition: &str, cap: usize) -> CmdResult {
    let s = match (base, system_name) {
        (Some(b), None) => semigroup(&b)?,
        (None, Some(name)) => product_table_with_cap(&semigroup(h)?, &system(&name)?, cap).map_err(|e| e.to_string())?,
        _ => return Err("quotient needs --base or --system".into()),
    };
    let p = partition_input(partition, s.size())?;
    if let Some((a, a2, b, b2)) = s.congruence_failure(&p) {
        let pretty = format!(
            "not a congruence: {} ~ {} and {} ~ {}, but {}·{} = {} and {}·{} = {} lie in different classes\n",
            s.name(a),
            s.name(a2),
            s.name(b),
            s.name(b2),
            s.name(a),
            s.name(b),
            s.name(s.mul(a, b)),
            s.name(a2),
            s.name(b2),
            s.name(s.mul(a2, b2))
        );
        let json = json!({"congruence": false, "failure": [a, a2, b, b2]});
        return Ok(Output::check(false, pretty, json));
    }
    let q = s.quotient(&p).map_err(|e| e.to_string())?;
    Ok(table_output(&q))
}

fn iso(left: &str, right: &str, cap: usize) -> CmdResult {
    let (a, b) = (semigroup(left)?, semigroup(right)?);
    match find_isomorphism_with_cap(&a, &b, cap).map_err(|e| e.to_string())? {
        Some(m) => {
            let pairs: Vec<String> = (0..a.size()).map(|x| format!("{} ↦ {}", a.name(x), b.name(m.apply(x)))).collect();
            Ok(Output::ok(
                format!("isomorphic\n{}\n", pairs.join("\n")),
                json!({"isomorphic": true, "map": m.map()}),
            ))
        }
        None => Ok(Output::check(false, "not isomorphic\n".into(), json!({"isomorphic": false}))),
    }
}

fn divides_cmd(t: &str, s: Option<String>, system_name: Option<String>, h: &str, subsemigroups: bool, cap: usize) -> CmdResult {
    let t = semigroup(t)?;
    let s = match (s, system_name) {
        (Some(s), None) => semigroup(&s)?,
        (None, Some(name)) => product_table_with_cap(&semigroup(h)?, &system(&name)?, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?,
        _ => return Err("divides needs S or --system".into()),
    };
    let opts = DivisionOptions {
        quotient_only: !subsemigroups,
        congruence_cap: cap,
        ..Default::default()
    };
    match divides(&t, &s, opts).map_err(|e| e.to_string())? {
        Some(w) => {
            let classes: Vec<String> = w
                .classes
                .iter()
                .map(|c| format!("{{{}}}", c.iter().map(|&x| s.name(x)).collect::<Vec<_>>().join(",")))
                .collect();
            let pretty = format!(
                "divides\nsubsemigroup: {} elements\ncongruence: {}\n",
                w.subsemigroup.len(),
                classes.join(" ")
            );
            Ok(Output::ok(pretty, json!({"divides": true, "witness": w})))
        }
        None => {
            let scope = if subsemigroups { "quotient of a subsemigroup" } else { "quotient" };
            Ok(Output::check(false, format!("does not divide (as a {scope})\n"), json!({"divides": false})))
        }
    }
}

fn examples(name: Option<String>) -> CmdResult {
    match name {
        None => {
            let semigroups: Vec<&str> = catalog::all().into_iter().map(|(n, _)| n).collect();
            let pretty = format!("semigroups: {}\nsystems: {}\n", semigroups.join(", "), SYSTEM_NAMES.join(", "));
            Ok(Output::ok(pretty, json!({"semigroups": semigroups, "systems": SYSTEM_NAMES})))
        }
        Some(n) => {
            if let Some(sys) = system_by_name(&n) {
                let file = to_value(&SystemFile::from(sys.as_maps()));
                let pretty = io::to_json(&file) + "\n";
                Ok(Output::ok(pretty, file))
            } else if let Some(s) = catalog::by_name(&n) {
                Ok(table_output(&s))
            } else {
                Err(format!("unknown example `{n}`"))
            }
        }
    }
}

fn free(system_name: &str, bound: usize, h: &str, cap: usize) -> CmdResult {
    let sys = system(system_name)?;
    let h = semigroup(h)?;
    let tr = canonical_transformation(&sys, bound).map_err(|e| e.to_string())?;
    let free = tr.target();
    let axioms = free.axiom_report();
    let induced = induced_map(&h, &tr, cap).map_err(|e| e.to_string())?;
    let verified = axioms.is_valid() && induced.is_surjective();
    let words: Vec<Value> = (0..free.words().len())
        .map(|w| {
            json!({
                "word": free.word_name(w),
                "size": lrsys::system::IndexedSystem::fiber_size(free, w),
                "h": tr.h()[w],
                "t": tr.map(w),
            })
        })
        .collect();
    let mut pretty = format!(
        "free system over {} letters, words of length ≤ {bound}: {} words\n",
        free.alphabet(),
        free.words().len()
    );
    let _ = writeln!(
        pretty,
        "axioms: {} instances checked, {} triples out of range, {}",
        axioms.instances_checked,
        axioms.triples_skipped,
        if axioms.is_valid() { "all hold" } else { "VIOLATED" }
    );
    let _ = writeln!(pretty, "canonical arrow: squares commute on every in-range pair");
    let _ = writeln!(
        pretty,
        "induced map: {} → {} elements, homomorphic on {} pairs, {}",
        induced.map.len(),
        induced.codomain_size,
        induced.pairs_checked,
        if induced.is_surjective() { "surjective" } else { "NOT surjective" }
    );
    let json = json!({
        "bound": bound,
        "alphabet": free.alphabet(),
        "words": words,
        "axiom_instances_checked": axioms.instances_checked,
        "triples_out_of_range": axioms.triples_skipped,
        "axiom_violations": axioms.violations,
        "induced_pairs_checked": induced.pairs_checked,
        "induced_surjective": induced.is_surjective(),
    });
    Ok(Output::check(verified, pretty, json))
}

fn wreathize_cmd(system_name: &str, h: Option<String>) -> CmdResult {
    let sys = system(system_name)?;
    let w = match wreathize(&sys) {
        Ok(w) => w,
        Err(e) => {
            return Ok(Output::check(
                false,
                format!("cannot wreathize: {e}\n"),
                json!({"wreathized": false, "reason": e.to_string()}),
            ))
        }
    };
    let action = ActionFile::from(w.derived.action());
    let tr = TransformationFile::new(w.transformation.h(), w.transformation.maps());
    let mut pretty = format!(
        "derived action on {} points: {:?}\ntransformation (id, λ[e,g]) is a system isomorphism: {}\n",
        w.derived.action().carrier(),
        action.act.as_deref().unwrap_or_default(),
        w.transformation.is_system_isomorphism()
    );
    let mut json = json!({
        "wreathized": true,
        "action": action,
        "system": SystemFile::from(w.system.as_maps()),
        "transformation": tr,
    });
    let mut verified = w.transformation.is_system_isomorphism();
    if let Some(h) = h {
        let report = verify_wreath_iso(&semigroup(&h)?, &sys).map_err(|e| e.to_string())?;
        let _ = writeln!(
            pretty,
            "H^[S] has {} elements, group: {}; isomorphic to the wreath product by search: {}, by the induced map: {}",
            report.size, report.product_is_group, report.search, report.explicit
        );
        json["wreath_iso"] = to_value(&report);
        verified &= report.holds();
    }
    Ok(Output::check(verified, pretty, json))
}

fn corollary() -> CmdResult {
    let report = corollary_demo().map_err(|e| e.to_string())?;
    Ok(Output::check(report.holds(), report.to_string(), to_value(&report)))
}

fn enumerate(base: &str, sizes: Vec<usize>, seed: u64, cap: Option<usize>, unital: bool) -> CmdResult {
    let base = semigroup(base)?;
    if sizes.len() != base.size() {
        return Err(format!("--sizes: {} values for a base of order {}", sizes.len(), base.size()));
    }
    let opts = EnumerationOptions {
        limit: cap,
        seed,
        unital_only: unital,
    };
    let it = enumerate_systems(&base, &sizes, opts);
    let exhaustive = it.is_exhaustive();
    let systems: Vec<LrSystem> = it.collect();
    let pretty = format!(
        "{} systems ({} mode, seed {seed})\n",
        systems.len(),
        if exhaustive { "exhaustive" } else { "randomized" }
    );
    let files: Vec<SystemFile> = systems.iter().map(|s| SystemFile::from(s.as_maps())).collect();
    Ok(Output::ok(
        pretty,
        json!({"count": systems.len(), "exhaustive": exhaustive, "seed": seed, "systems": files}),
    ))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { system, base, action } => validate(system, base, action),
        Command::Product { system, action, h, cap } => product(system, action, &h, cap),
        Command::Quotient {
            base,
            system,
            h,
            partition,
            cap,
        } => quotient(base, system, &h, &partition, cap),
        Command::Iso { left, right, cap } => iso(&left, &right, cap),
        Command::Divides {
            t,
            s,
            system,
            h,
            subsemigroups,
            cap,
        } => divides_cmd(&t, s, system, &h, subsemigroups, cap),
        Command::Examples { name } => examples(name),
        Command::Free { system, bound, h, cap } => free(&system, bound, &h, cap),
        Command::Wreathize { system, h } => wreathize_cmd(&system, h),
        Command::Corollary => corollary(),
        Command::Enumerate {
            base,
            sizes,
            seed,
            cap,
            unital,
        } => enumerate(&base, sizes, seed, cap, unital),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, out) = (cli.format, cli.out.clone());
    match run(cli) {
        Ok(output) => {
            let text = match format {
                Format::Pretty => output.pretty,
                Format::Json => io::to_json(&output.json) + "\n",
            };
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if output.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
