use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use fancoh::checks::CheckRegistry;
use fancoh::classes::{
    exceptional_positivity_check, leung_reiner_certificate, rr_check_with, signature_theorem_check,
    subdivision_recursion_check, todd_check, todd_class, Status, TheoremReport,
};
use fancoh::cohomology::{CohomologyRing, Monomial, SrElement};
use fancoh::io::{fan_to_json, parse_fan, rational_to_json};
use fancoh::sheaf::{cellular_cohomology, chi_k, kclass_of, stalk_model, KClass, SheafSpec};
use fancoh::subdivision::{random_chain, regular_star_subdivide, star_subdivide};
use fancoh::{catalog, Cone, Error, Fan, LatticeVector};

#[derive(Parser)]
#[command(name = "fancoh", version, about = "Exact cohomology and theorem checks for complete unimodular fans")]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Add wall-clock timings to the result.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a fan file.
    Validate { fan: String },
    /// Flags, f-vector and local convexity.
    Classify { fan: String },
    /// Star subdivision at a cone; writes the new fan and a `.map.json` sidecar.
    Subdivide {
        fan: String,
        /// Ray indices of the cone, e.g. `0,1`.
        #[arg(long, value_delimiter = ',')]
        cone: Vec<usize>,
        /// Primitive interior vector; defaults to the sum of the cone's rays.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        vector: Option<Vec<i64>>,
    },
    /// Dimensions of H^0..H^n.
    Hvector { fan: String },
    /// Integral of a top-degree monomial given as ray indices with repetition.
    Integrate {
        fan: String,
        #[arg(long, value_delimiter = ',')]
        monomial: Vec<usize>,
    },
    /// h-vector, signature and epsilon.
    Signature { fan: String },
    /// Euler characteristic and cellular cohomology of a sheaf
    /// (`const:d`, `o:0,1`, `star:0`, `sky:0,1`, `forms:q`).
    Chi {
        fan: String,
        #[arg(long, default_value = "const:1")]
        sheaf: String,
    },
    /// Class of a sheaf in the [O(s)] basis.
    Kclass {
        fan: String,
        #[arg(long)]
        sheaf: String,
    },
    /// Integral of the Todd class equals 1.
    ToddCheck { fan: String },
    /// Riemann-Roch for every basis class [O(s)].
    RrCheck { fan: String },
    /// signature = epsilon = integral of L.
    SigCheck { fan: String },
    /// Leung-Reiner certificate for locally convex fans.
    LrCertify { fan: String },
    /// Exceptional positivity at every cone of dimension 2..=4.
    ExceptionalCheck { fan: String },
    /// Signature and epsilon recursions at every cone of dimension >= 2.
    RecursionCheck { fan: String },
    /// Run the invariant suite along a random chain of regular subdivisions.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

/// Exit 2: the input could not be used.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(Value, bool), InputError>;

fn load_fan(arg: &str) -> Result<Fan, InputError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return Ok(catalog::by_name(name)?);
    }
    let text = fs::read_to_string(arg).map_err(|e| InputError(format!("{arg}: {e}")))?;
    parse_fan(&text).map_err(|e| InputError(format!("{arg}: {e}")))
}

fn load_ring(arg: &str) -> Result<CohomologyRing, InputError> {
    Ok(CohomologyRing::new(&load_fan(arg)?)?)
}

fn parse_cone(s: &str) -> Result<Cone, InputError> {
    let body = s.trim().trim_start_matches('{').trim_end_matches('}');
    if body.is_empty() {
        return Ok(Cone::origin());
    }
    body.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| InputError(format!("bad ray index `{x}`"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Cone::new)
}

fn parse_sheaf(s: &str) -> Result<SheafSpec, InputError> {
    let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
    let num = |a: &str| a.trim().parse::<usize>().map_err(|_| InputError(format!("bad sheaf `{s}`")));
    Ok(match kind {
        "const" => SheafSpec::Constant(if arg.is_empty() { 1 } else { num(arg)? }),
        "forms" => SheafSpec::Forms(num(arg)?),
        "o" => SheafSpec::LineO(parse_cone(arg)?),
        "star" => SheafSpec::IndicatorStar(parse_cone(arg)?),
        "sky" => SheafSpec::Skyscraper(parse_cone(arg)?),
        _ => return Err(InputError(format!("unknown sheaf `{s}`"))),
    })
}

fn kclass_json(fan: &Fan, k: &KClass) -> Value {
    let mut m = serde_json::Map::new();
    for (c, x) in k.iter() {
        m.insert(fan.cone(c).to_string(), rational_to_json(x));
    }
    Value::Object(m)
}

fn fan_json(fan: &Fan) -> Value {
    serde_json::from_str(&fan_to_json(fan)).expect("fan json")
}

fn report_json(r: &TheoremReport) -> Value {
    if r.status == Status::HypothesisFailed && r.locally_convex.is_some() {
        return json!({"locally_convex": r.locally_convex, "status": "hypothesis_failed"});
    }
    serde_json::to_value(r).expect("report serializes")
}

fn run_check(name: &str, arg: &str) -> Outcome {
    let ring = load_ring(arg)?;
    let reports = CheckRegistry::standard().get(name)?.run(&ring)?;
    let pass = reports.iter().all(TheoremReport::passed);
    let labelled: Vec<Value> = reports.into_iter().map(|r| report_json(&r.labelled(arg))).collect();
    let value = match <[Value; 1]>::try_from(labelled) {
        Ok([one]) => one,
        Err(many) => Value::Array(many),
    };
    Ok((value, pass))
}

fn classify(fan: &Fan) -> Result<Value, InputError> {
    let flags = fan.flags();
    let locally_convex = if flags.complete { Some(fan.is_locally_convex()?) } else { None };
    Ok(json!({
        "rank": fan.rank(),
        "rays": fan.num_rays(),
        "f_vector": fan.f_vector(),
        "complete": flags.complete,
        "simplicial": flags.simplicial,
        "unimodular": flags.unimodular,
        "locally_convex": locally_convex,
    }))
}

fn subdivide(arg: &str, cone: &[usize], vector: Option<&[i64]>, output: Option<&Path>) -> Outcome {
    let fan = load_fan(arg)?;
    let sigma = Cone::new(cone.to_vec());
    let (sub, map) = match vector {
        Some(v) => star_subdivide(&fan, &sigma, &LatticeVector::from_i64(v))?,
        None => regular_star_subdivide(&fan, &sigma)?,
    };
    let side = match map.new_ray() {
        Some(r) => json!({
            "new_ray": r,
            "vector": fan_json(&sub)["rays"][r].clone(),
            "center": map.ray_image[r].rays(),
        }),
        None => json!({"new_ray": null, "center": sigma.rays()}),
    };
    if let Some(path) = output {
        let mut name = path.as_os_str().to_owned();
        name.push(".map.json");
        fs::write(&name, format!("{side}\n")).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    Ok((fan_json(&sub), true))
}

fn fuzz_start(dim: usize, seed: u64) -> Result<(String, Fan), InputError> {
    let names: &[&str] = match dim {
        2 => &["p2", "p1xp1"],
        3 => &["p3", "p1xp2", "p1xp1xp1"],
        4 => &["p4", "p2xp2", "p1xp3"],
        _ => &[],
    };
    if dim < 2 {
        return Err(InputError("fuzz needs --dim >= 2".into()));
    }
    let name = if names.is_empty() {
        format!("p{dim}")
    } else {
        names[(seed % names.len() as u64) as usize].to_string()
    };
    Ok((name.clone(), catalog::by_name(&name)?))
}

fn fuzz(seed: u64, steps: usize, dim: usize) -> Outcome {
    let (start_name, start) = fuzz_start(dim, seed)?;
    let chain = random_chain(seed, &start, steps)?;
    let mut fans = vec![(start.clone(), None)];
    let mut prev = start;
    for step in chain {
        let center = step.map.center().cloned();
        fans.push((step.fan.clone(), center.map(|c| (prev.clone(), c))));
        prev = step.fan;
    }
    let mut all_pass = true;
    let mut rows = Vec::new();
    for (i, (fan, parent)) in fans.iter().enumerate() {
        let ring = CohomologyRing::new(fan)?;
        let mut reports = vec![todd_check(&ring), signature_theorem_check(&ring)];
        let td = todd_class(&ring);
        reports.extend((0..fan.cones().len()).map(|s| rr_check_with(&ring, &KClass::basis(s), &td)));
        if let Some((coarse, tau)) = parent {
            let coarse_ring = CohomologyRing::new(coarse)?;
            reports.push(exceptional_positivity_check(&coarse_ring, tau)?);
            if fan.rank() % 2 == 0 {
                reports.push(subdivision_recursion_check(&coarse_ring, tau)?);
            }
        }
        if fan.rank() % 2 == 0 && fan.is_locally_convex()? {
            reports.push(leung_reiner_certificate(&ring)?);
        }
        let h = ring.h_vector();
        let symmetric = h.iter().eq(h.iter().rev());
        let zeta_one = fan.rank() == 0
            || ring.zeta_points().iter().all(|p| ring.zeta_evaluate(&SrElement::one(), p).is_ok_and(|z| z.is_zero()));
        let failures: Vec<Value> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| serde_json::to_value(r).expect("report serializes"))
            .collect();
        let pass = failures.is_empty() && symmetric && zeta_one;
        all_pass &= pass;
        rows.push(json!({
            "step": i,
            "rays": fan.num_rays(),
            "h": h,
            "signature": ring.signature_report().signature,
            "checks": reports.len() + 2,
            "pass": pass,
            "failures": failures,
        }));
    }
    let value = json!({
        "seed": seed,
        "steps": steps,
        "dim": dim,
        "start": start_name,
        "fans": rows,
        "pass": all_pass,
    });
    Ok((value, all_pass))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { fan } => {
            let f = load_fan(fan)?;
            Ok((json!({"valid": true, "rank": f.rank(), "rays": f.num_rays(), "flags": f.flags()}), true))
        }
        Command::Classify { fan } => Ok((classify(&load_fan(fan)?)?, true)),
        Command::Subdivide { fan, cone, vector } => subdivide(fan, cone, vector.as_deref(), cli.output.as_deref()),
        Command::Hvector { fan } => Ok((json!({"h": load_ring(fan)?.h_vector()}), true)),
        Command::Integrate { fan, monomial } => {
            let ring = load_ring(fan)?;
            if let Some(&r) = monomial.iter().find(|&&r| r >= ring.fan().num_rays()) {
                return Err(InputError(format!("ray {r} out of range")));
            }
            let v = ring.integrate(&SrElement::monomial(Monomial::new(monomial.clone())))?;
            Ok((json!({"integral": rational_to_json(&v)}), true))
        }
        Command::Signature { fan } => {
            let r = load_ring(fan)?.signature_report();
            Ok((json!({"h": r.h, "signature": r.signature, "epsilon": r.epsilon}), true))
        }
        Command::Chi { fan, sheaf } => {
            let f = load_fan(fan)?;
            let spec = parse_sheaf(sheaf)?;
            let model = stalk_model(&f, &spec)?;
            let coh = cellular_cohomology(&f, &model)?;
            let chi: i64 = coh.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
            let mut out = json!({"sheaf": spec.to_string(), "cohomology": coh, "chi": chi});
            if let Ok(k) = kclass_of(&f, &spec) {
                let via_k = chi_k(&f, &k);
                out["chi_from_class"] = rational_to_json(&via_k);
            }
            Ok((out, true))
        }
        Command::Kclass { fan, sheaf } => {
            let f = load_fan(fan)?;
            let spec = parse_sheaf(sheaf)?;
            let k = kclass_of(&f, &spec)?;
            Ok((json!({"sheaf": spec.to_string(), "class": kclass_json(&f, &k)}), true))
        }
        Command::ToddCheck { fan } => run_check("todd-check", fan),
        Command::RrCheck { fan } => run_check("rr-check", fan),
        Command::SigCheck { fan } => run_check("sig-check", fan),
        Command::LrCertify { fan } => run_check("lr-certify", fan),
        Command::ExceptionalCheck { fan } => run_check("exceptional-check", fan),
        Command::RecursionCheck { fan } => run_check("recursion-check", fan),
        Command::Fuzz { seed, steps, dim } => fuzz(*seed, *steps, *dim),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((mut value, pass)) => {
            if cli.timings {
                let ms = start.elapsed().as_secs_f64() * 1000.0;
                value = json!({"result": value, "timings_ms": format!("{ms:.3}")});
            }
            let text = format!("{value}\n");
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("{}", json!({"error": format!("{}: {e}", path.display())}));
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("{}", json!({"error": msg}));
            ExitCode::from(2)
        }
    }
}
