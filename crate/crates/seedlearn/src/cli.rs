//! Command-line experiment runner: parses one of the text input
//! formats, dispatches to a library operation, and emits a report as
//! plain text or deterministic JSON (keys sorted, no timestamps with
//! --no-time).
//!
//! Exit codes: 0 success, 1 learner failure value, 2 usage or malformed
//! input, 3 resource cap.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::boolcore::codec;
use crate::boolcore::{
    exact_min_dnf_capped, Assignment, Dnf, Literal, PartialFn, Term, TruthTable, MAX_N,
};
use crate::certs::{certify, verify_certificate, CertifyOutcome};
use crate::coverlearn::{cover_sample, exact_error, pac_learn_uniform, pac_sample_size};
use crate::eqlearn::{learn_eq, learn_eq_auto, HonestTeacher, QueryRecord, TeacherMode};
use crate::error::{Error, Result};
use crate::seeds::{dtree_seed, find_seed_enumerate, find_seed_constructive_traced, seed_bound, Seed};
use crate::tradeoff::{
    enumerate_m, zero_prob_check, fingerprint_counterexample, halving_learn, HalvingTeacher,
    VersionSpace, DEFAULT_CLASS_CAP, DEFAULT_MAX_RETRIES,
};

#[derive(Parser)]
#[command(name = "seedlearn", version, about = "Proper DNF learning via seeds")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// RNG seed; all randomness derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Resource caps, e.g. "max_n=12,max_class=100000,max_retries=500".
    #[arg(long, global = true, default_value = "")]
    pub caps: Caps,
    /// Omit wall time from the report, for byte-identical reruns.
    #[arg(long, global = true)]
    pub no_time: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_n: u32,
    pub max_class: u64,
    pub max_retries: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_n: MAX_N, max_class: DEFAULT_CLASS_CAP, max_retries: DEFAULT_MAX_RETRIES }
    }
}

impl FromStr for Caps {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut caps = Caps::default();
        for pair in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {pair:?}"))?;
            let parse = |v: &str| v.trim().parse::<u64>().map_err(|e| e.to_string());
            match key.trim() {
                "max_n" => caps.max_n = parse(value)?.min(MAX_N as u64) as u32,
                "max_class" => caps.max_class = parse(value)?,
                "max_retries" => caps.max_retries = parse(value)? as u32,
                other => return Err(format!("unknown cap {other:?}")),
            }
        }
        Ok(caps)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeedMethod {
    Enumerate,
    Constructive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EqTeacherKind {
    Lex,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HalvingTeacherKind {
    Worst,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Dnf,
    Tt,
    Sample,
}

#[derive(Subcommand)]
pub enum Command {
    /// Find a seed of the input function.
    FindSeed {
        /// dnf, sample, tt, or dtree file.
        #[arg(long)]
        input: PathBuf,
        /// Assumed DNF size, setting the seed-size bound.
        #[arg(long)]
        s: Option<u32>,
        /// Explicit seed-size bound (overrides --s).
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, value_enum, default_value_t = SeedMethod::Enumerate)]
        method: SeedMethod,
    },
    /// PAC-learn a DNF from uniform random examples.
    LearnPac {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value = "uniform")]
        dist: String,
        #[arg(long, default_value_t = 1)]
        trials: u32,
    },
    /// Learn a DNF exactly from equivalence queries.
    LearnEq {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        s: Option<u32>,
        /// Start at s = 1 and double on failure instead of fixing s.
        #[arg(long)]
        auto_s: bool,
        #[arg(long, value_enum, default_value_t = EqTeacherKind::Lex)]
        teacher: EqTeacherKind,
    },
    /// Extract a decision-tree seed and cover the tree's function.
    LearnDtree {
        /// dtree file.
        #[arg(long)]
        input: PathBuf,
        /// DNF size bound for the covering step (default: the tree's
        /// 1-leaf count).
        #[arg(long)]
        s: Option<u32>,
    },
    /// Cover the target or produce a certificate that it has no s-term DNF.
    Certify {
        /// tt, dnf, sample, or dtree file.
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        s: u32,
    },
    /// Exact minimum DNF of the input function.
    Mindnf {
        #[arg(long)]
        input: PathBuf,
        /// Report failure instead of a DNF when the minimum exceeds this.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Fingerprint adversary over M(n,t,s) against a scripted query sequence.
    Adversary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
        /// dnf files, played as equivalence queries in order.
        #[arg(long, num_args = 1..)]
        script: Vec<PathBuf>,
    },
    /// Majority-vote halving learner over an enumerated universe.
    Halving {
        /// Universe spec "m:<n>,<t>,<s>".
        #[arg(long)]
        universe: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        t_sample: usize,
        #[arg(long, value_enum, default_value_t = HalvingTeacherKind::Worst)]
        teacher: HalvingTeacherKind,
        /// Target dnf file, required for the lex teacher.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Exact probability that a random M(n,t,s) member vanishes at z.
    ZeroProb {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
        /// n-character bitstring.
        #[arg(long)]
        z: String,
    },
    /// Generate a random target or sample file on stdout.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: u32,
        /// Term count for --kind dnf.
        #[arg(long, default_value_t = 2)]
        terms: u32,
        /// Point count for --kind sample.
        #[arg(long, default_value_t = 16)]
        points: u32,
        /// Function file labeling the sample (default: a generated DNF).
        #[arg(long)]
        target: Option<PathBuf>,
    },
}

/// Runs the parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let started = Instant::now();
    match dispatch(&cli) {
        // A null report means the command already wrote its raw output.
        Ok((Value::Null, exit)) => exit,
        Ok((mut report, exit)) => {
            if !cli.no_time {
                if let Value::Object(map) = &mut report {
                    map.insert(
                        "wall_ms".into(),
                        json!(started.elapsed().as_secs_f64() * 1e3),
                    );
                }
            }
            emit(cli.format, &report);
            exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceCap(_) => 3,
                Error::Parse { .. }
                | Error::Contract(_)
                | Error::DimensionMismatch { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn emit(format: Format, report: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("valid json")),
        Format::Text => {
            let mut out = String::new();
            render_text(report, 0, &mut out);
            print!("{out}");
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{v}\n")),
    }
}

fn read_input(path: &Path) -> Result<codec::Input> {
    let text = std::fs::read_to_string(path)?;
    codec::parse_input(&text)
}

fn read_dnf(path: &Path) -> Result<Dnf> {
    let text = std::fs::read_to_string(path)?;
    codec::parse_dnf(&text)
}

fn check_n(n: u32, caps: &Caps) -> Result<()> {
    if n > caps.max_n {
        return Err(Error::ResourceCap(format!("n={n} exceeds max_n={}", caps.max_n)));
    }
    Ok(())
}

fn seed_json(seed: &Seed) -> Value {
    json!({
        "term": seed.term.to_string(),
        "size": seed.term.size(),
        "witness": seed.witness.bitstring(),
        "residual": seed.residual.to_string(),
    })
}

fn dnf_json(phi: &Dnf) -> Value {
    json!({
        "formula": phi.to_string(),
        "terms": phi.size(),
        "file": codec::serialize_dnf(phi),
    })
}

fn rational_json(r: &BigRational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "decimal": r.to_f64(),
    })
}

fn query_log_json(log: &[QueryRecord]) -> Value {
    Value::Array(
        log.iter()
            .map(|r| {
                json!({
                    "query_index": r.query_index,
                    "hyp_terms": r.hyp_terms,
                    "counterexample": r.counterexample.map(|a| a.bitstring()),
                    "label": r.label,
                })
            })
            .collect(),
    )
}

fn random_dnf(rng: &mut ChaCha8Rng, n: u32, terms: u32) -> Dnf {
    let terms = (0..terms)
        .map(|_| {
            loop {
                let t = Term::from_literals((1..=n).filter_map(|v| match rng.gen_range(0..3) {
                    0 => Some(Literal::pos(v)),
                    1 => Some(Literal::neg(v)),
                    _ => None,
                }));
                if !t.is_empty() || n == 0 {
                    break t;
                }
            }
        })
        .collect();
    Dnf::new(n, terms)
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    let caps = cli.caps;
    match &cli.command {
        Command::FindSeed { input, s, q, method } => {
            let input = read_input(input)?;
            let n = input.n();
            check_n(n, &caps)?;
            let f = input.partial_fn()?;
            let bound = match (q, s) {
                (Some(q), _) => *q,
                (None, Some(s)) => seed_bound(n, *s),
                (None, None) => {
                    return Err(Error::Contract("find-seed needs --s or --q".into()));
                }
            };
            match method {
                SeedMethod::Enumerate => match find_seed_enumerate(&f, bound) {
                    Some(seed) => Ok((
                        json!({
                            "n": n, "q": bound, "method": "enumerate",
                            "found": true, "seed": seed_json(&seed),
                        }),
                        0,
                    )),
                    None => Ok((
                        json!({"n": n, "q": bound, "method": "enumerate", "found": false}),
                        1,
                    )),
                },
                SeedMethod::Constructive => {
                    let codec::Input::Dnf(phi) = &input else {
                        return Err(Error::Contract(
                            "--method constructive requires a dnf input (the constructive procedure consumes a formula)".into(),
                        ));
                    };
                    let (seed, trace) = find_seed_constructive_traced(&f, phi)?;
                    Ok((
                        json!({
                            "n": n,
                            "q": seed_bound(n, phi.size().max(1) as u32),
                            "method": "constructive",
                            "found": true,
                            "seed": seed_json(&seed),
                            "trace": trace.iter().map(|e| format!("{e:?}")).collect::<Vec<_>>(),
                        }),
                        0,
                    ))
                }
            }
        }

        Command::LearnPac { target, s, eps, delta, dist, trials } => {
            if dist != "uniform" {
                return Err(Error::Contract(format!("unsupported distribution {dist:?}")));
            }
            let target = read_dnf(target)?;
            check_n(target.n(), &caps)?;
            let m = pac_sample_size(target.n(), *s, *eps, *delta);
            let mut records = Vec::new();
            let mut failures = 0u32;
            for trial in 0..*trials {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                rng.set_stream(trial as u64);
                match pac_learn_uniform(&target, *s, *eps, *delta, &mut rng) {
                    Ok(h) => {
                        let error = exact_error(&h, &target);
                        records.push(json!({
                            "m": m, "queries": 0, "error_exact": error,
                            "size_h": h.size(), "ok": error <= *eps,
                        }));
                    }
                    Err(Error::Protocol(msg)) => {
                        failures += 1;
                        records.push(json!({
                            "m": m, "queries": 0, "ok": false, "fail": msg,
                        }));
                    }
                    Err(e) => return Err(e),
                }
            }
            let exit = if failures > 0 { 1 } else { 0 };
            Ok((
                json!({
                    "target": target.to_string(), "n": target.n(), "s": s,
                    "eps": eps, "delta": delta, "m": m,
                    "trials": records, "cover_failures": failures,
                }),
                exit,
            ))
        }

        Command::LearnEq { target, s, auto_s, teacher } => {
            let target = read_dnf(target)?;
            check_n(target.n(), &caps)?;
            let table = TruthTable::of_dnf(&target)?;
            let mode = match teacher {
                EqTeacherKind::Lex => TeacherMode::Lex,
                EqTeacherKind::Random => {
                    TeacherMode::Random(ChaCha8Rng::seed_from_u64(cli.seed))
                }
            };
            let mut teacher = HonestTeacher::new(table.clone(), mode);
            let (h, log, used_s, total) = if *auto_s {
                learn_eq_auto(&mut teacher, target.n())?
            } else {
                let s = s.ok_or_else(|| {
                    Error::Contract("learn-eq needs --s (or --auto-s)".into())
                })?;
                let (h, log) = learn_eq(&mut teacher, target.n(), s)?;
                let queries = log.len();
                (h, log, s, queries)
            };
            let equal = h.equivalent(&target);
            Ok((
                json!({
                    "target": target.to_string(), "n": target.n(), "s": used_s,
                    "log": query_log_json(&log),
                    "queries": total, "equal": equal,
                    "hypothesis": dnf_json(&h),
                }),
                if equal { 0 } else { 1 },
            ))
        }

        Command::LearnDtree { input, s } => {
            let input = read_input(input)?;
            let codec::Input::Tree { tree, n } = &input else {
                return Err(Error::Contract("learn-dtree requires a dtree input".into()));
            };
            check_n(*n, &caps)?;
            let seed = dtree_seed(tree, *n)?;
            let f = input.partial_fn()?;
            let s = s.unwrap_or_else(|| tree.s1().max(1) as u32);
            let cover = cover_sample(&f, s);
            let ok = cover.succeeded();
            Ok((
                json!({
                    "n": n, "one_leaves": tree.s1(), "s": s,
                    "seed": seed_json(&seed),
                    "cover": {
                        "succeeded": ok,
                        "hypothesis": dnf_json(&cover.hypothesis),
                        "leftover_positives": cover.leftover_positives.len(),
                    },
                }),
                if ok { 0 } else { 1 },
            ))
        }

        Command::Certify { target, s } => {
            let input = read_input(target)?;
            check_n(input.n(), &caps)?;
            let f = input.partial_fn()?;
            match certify(&f, *s)? {
                CertifyOutcome::Cover(h) => Ok((
                    json!({
                        "n": input.n(), "s": s, "result": "cover",
                        "cover": dnf_json(&h), "terms": h.size(),
                    }),
                    0,
                )),
                CertifyOutcome::Witness(cert) => {
                    let verified = verify_certificate(&cert)?;
                    Ok((
                        json!({
                            "n": input.n(), "s": s, "result": "certificate",
                            "certificate": cert.points.iter()
                                .map(|(a, l)| json!([a.bitstring(), u8::from(*l)]))
                                .collect::<Vec<_>>(),
                            "points": cert.size(),
                            "triples": cert.triples.iter().map(|t| json!({
                                "term": t.term.to_string(),
                                "positives": [t.positives[0].bitstring(), t.positives[1].bitstring()],
                                "negative": t.negative.bitstring(),
                            })).collect::<Vec<_>>(),
                            "verified": verified,
                        }),
                        0,
                    ))
                }
            }
        }

        Command::Mindnf { input, budget } => {
            let input = read_input(input)?;
            check_n(input.n(), &caps)?;
            let f = input.partial_fn()?;
            match exact_min_dnf_capped(&f, *budget, caps.max_n.min(crate::boolcore::MINDNF_MAX_N))? {
                Some(phi) => Ok((
                    json!({
                        "n": input.n(), "size": phi.size(), "dnf": dnf_json(&phi),
                    }),
                    0,
                )),
                None => Ok((
                    json!({"n": input.n(), "budget": budget, "found": false}),
                    1,
                )),
            }
        }

        Command::Adversary { n, t, s, script } => {
            check_n(*n, &caps)?;
            let class = enumerate_m(*n, *t, *s, caps.max_class)?;
            let class_size = class.formulas.len();
            let mut vs = VersionSpace::new(class.formulas);
            let mut entries = Vec::new();
            let mut done = false;
            for path in script {
                let h = read_dnf(path)?;
                if h.n() != *n {
                    return Err(Error::DimensionMismatch { expected: *n, got: h.n() });
                }
                let before = vs.len();
                match fingerprint_counterexample(&vs, &h) {
                    None => {
                        entries.push(json!({
                            "query": h.to_string(), "before": before,
                            "answer": "yes", "remaining": before,
                        }));
                        done = true;
                        break;
                    }
                    Some(a) => {
                        let label = !h.eval(&a);
                        let eliminated = vs.apply(&h, a, label)?;
                        entries.push(json!({
                            "query": h.to_string(), "before": before,
                            "counterexample": a.bitstring(), "label": u8::from(label),
                            "eliminated": eliminated, "remaining": vs.len(),
                        }));
                    }
                }
            }
            Ok((
                json!({
                    "n": n, "t": t, "s": s, "class_size": class_size,
                    "queries": entries, "done": done, "remaining": vs.len(),
                }),
                0,
            ))
        }

        Command::Halving { universe, k, t_sample, teacher, target } => {
            let (n, t, s) = parse_universe(universe)?;
            check_n(n, &caps)?;
            let class = enumerate_m(n, t, s, caps.max_class)?;
            let mut teacher = match teacher {
                HalvingTeacherKind::Worst => HalvingTeacher::Worst,
                HalvingTeacherKind::Lex => {
                    let path = target.as_ref().ok_or_else(|| {
                        Error::Contract("--teacher lex requires --target".into())
                    })?;
                    let target = read_dnf(path)?;
                    HalvingTeacher::Lex(TruthTable::of_dnf(&target)?)
                }
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let result = halving_learn(
                class.formulas,
                &mut teacher,
                *k,
                *t_sample,
                &mut rng,
                caps.max_retries,
            )?;
            Ok((
                json!({
                    "universe": universe, "k": k, "t_sample": t_sample,
                    "queries": result.queries,
                    "hypothesis": dnf_json(&result.hypothesis),
                    "shrink_log": serde_json::to_value(&result.log).expect("serializable"),
                }),
                0,
            ))
        }

        Command::ZeroProb { n, t, s, z } => {
            check_n(*n, &caps)?;
            let z = Assignment::parse(z)?;
            let report = zero_prob_check(*n, *t, *s, z, caps.max_class)?;
            Ok((
                json!({
                    "n": n, "t": t, "s": s, "z": report.z.bitstring(),
                    "bound": rational_json(&report.bound),
                    "exact": rational_json(&report.exact),
                    "ok": report.ok,
                }),
                0,
            ))
        }

        Command::Gen { kind, n, terms, points, target } => {
            check_n(*n, &caps)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let text = match kind {
                GenKind::Dnf => codec::serialize_dnf(&random_dnf(&mut rng, *n, *terms)),
                GenKind::Tt => {
                    let values = (0..(1u32 << n)).map(|_| rng.gen_bool(0.5)).collect();
                    codec::serialize_table(&TruthTable::new(*n, values)?)
                }
                GenKind::Sample => {
                    let labeler: Box<dyn Fn(&Assignment) -> bool> = match target {
                        Some(path) => {
                            let input = read_input(path)?;
                            let table = match &input {
                                codec::Input::Dnf(d) => TruthTable::of_dnf(d)?,
                                codec::Input::Table(t) => t.clone(),
                                codec::Input::Tree { tree, n } => TruthTable::of_tree(tree, *n)?,
                                codec::Input::Sample(_) => {
                                    return Err(Error::Contract(
                                        "--target must be a total function".into(),
                                    ))
                                }
                            };
                            if table.n() != *n {
                                return Err(Error::DimensionMismatch {
                                    expected: *n,
                                    got: table.n(),
                                });
                            }
                            Box::new(move |a| table.value(a))
                        }
                        None => {
                            let phi = random_dnf(&mut rng, *n, *terms);
                            Box::new(move |a| phi.eval(a))
                        }
                    };
                    let mut f = PartialFn::empty(*n);
                    for _ in 0..*points {
                        let a = Assignment::from_index(*n, rng.gen_range(0..(1u32 << n)));
                        f.insert(a, labeler(&a)).expect("total labeler is consistent");
                    }
                    codec::serialize_sample(&f)
                }
            };
            print!("{text}");
            // Raw file output, not a report.
            Ok((Value::Null, 0))
        }
    }
}

fn parse_universe(spec: &str) -> Result<(u32, u32, u32)> {
    let rest = spec
        .strip_prefix("m:")
        .ok_or_else(|| Error::Contract(format!("universe spec must look like m:<n>,<t>,<s>, got {spec:?}")))?;
    let parts: Vec<&str> = rest.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Contract("universe spec must have three components".into()));
    }
    let parse = |p: &str| {
        p.trim()
            .parse::<u32>()
            .map_err(|_| Error::Contract(format!("bad universe component {p:?}")))
    };
    Ok((parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
}
