//! `monogenic`: classify `F_p[X]/(P)`, test isomorphism, and compute
//! automorphism groups from the command line.
//!
//! Exit codes: 0 success (and "isomorphic"), 1 negative answer ("not
//! isomorphic", or a failing `verify` row), 2 invalid input, 3 infeasible
//! form, 4 cap exceeded.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use monogenic::algebra::DEFAULT_IDEMPOTENT_SLOT_CAP;
use monogenic::autgroup::{aut_generators, aut_group_order, enumerate_auts, DEFAULT_ENUMERATION_CAP};
use monogenic::classify::{classify_type, generator_element, realize, ExplicitIsomorphism};
use monogenic::oracle::DEFAULT_BRUTE_CAP;
use monogenic::{verify, AlgebraType, CanonicalForm, Error, ExtensionField, Polynomial, PrimeField, ProductAut};

#[derive(Parser)]
#[command(name = "monogenic", version, about = "One-generator algebras over prime finite fields")]
struct Cli {
    /// Machine-readable JSON on stdout; diagnostics stay on stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Prime {
    /// Characteristic of the ground field.
    #[arg(short = 'p', long = "prime")]
    p: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a polynomial into monic irreducibles.
    Factor {
        #[command(flatten)]
        prime: Prime,
        poly: String,
    },
    /// Canonical form of F_p[X]/(P); a zero or omitted P gives F_p[X].
    Classify {
        #[command(flatten)]
        prime: Prime,
        poly: Option<String>,
    },
    /// Decide whether F_p[X]/(P) and F_p[X]/(Q) are isomorphic.
    Iso {
        #[command(flatten)]
        prime: Prime,
        left: String,
        right: String,
    },
    /// A polynomial whose quotient ring has the given canonical form.
    Realize {
        #[command(flatten)]
        prime: Prime,
        /// Canonical form as JSON.
        #[arg(long)]
        form: String,
    },
    /// Automorphism group of F_p[X]/(P).
    Aut {
        #[command(flatten)]
        prime: Prime,
        poly: String,
        /// Print the group order (the default).
        #[arg(long, group = "mode")]
        order: bool,
        /// Print a generating set.
        #[arg(long, group = "mode")]
        generators: bool,
        /// Print every automorphism.
        #[arg(long, group = "mode")]
        enumerate: bool,
        /// Largest group order `--enumerate` will list.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Idempotents of F_p[X]/(P).
    Idem {
        #[command(flatten)]
        prime: Prime,
        poly: String,
        /// Largest slot count to enumerate (2^slots idempotents).
        #[arg(long, default_value_t = DEFAULT_IDEMPOTENT_SLOT_CAP)]
        max_slots: usize,
    },
    /// A generator of the product algebra of a form, with its rank certificate.
    Gen {
        #[command(flatten)]
        prime: Prime,
        #[arg(long)]
        form: String,
    },
    /// Cross-check the algorithms against brute force up to a dimension.
    Verify {
        #[command(flatten)]
        prime: Prime,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Largest brute-force search space per case.
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        cap: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible { .. } => 3,
        Error::CapExceeded { .. } => 4,
        _ => 2,
    }
}

fn field(prime: &Prime) -> Result<ExtensionField, Error> {
    Ok(ExtensionField::prime(PrimeField::new(prime.p)?))
}

fn parse(prime: &Prime, text: &str) -> Result<Polynomial, Error> {
    Polynomial::parse(text, &field(prime)?)
}

fn parse_form(prime: &Prime, text: &str) -> Result<CanonicalForm, Error> {
    let form = CanonicalForm::from_json(text)?;
    if form.p().p() != prime.p {
        return Err(Error::PrimeMismatch(prime.p, form.p().p()));
    }
    if form.parts().is_empty() {
        return Err(Error::InvalidForm("the zero algebra has no generator polynomial".into()));
    }
    Ok(form)
}

/// Canonical form of a nonzero `P`; the free algebra is refused.
fn finite_form(poly: &Polynomial) -> Result<CanonicalForm, Error> {
    match classify_type(poly)? {
        AlgebraType::Quotient(f) => Ok(f),
        AlgebraType::Free(_) => Err(Error::InvalidForm(
            "the free algebra F_p[X] is infinite; give a nonzero polynomial".into(),
        )),
    }
}

fn emit(json: bool, value: Value, human: impl FnOnce() -> String) {
    if json {
        println!("{value}");
    } else {
        println!("{}", human());
    }
}

fn raw_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library emits valid JSON")
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let json = cli.json;
    match &cli.command {
        Command::Factor { prime, poly } => {
            let poly = parse(prime, poly)?;
            let fz = poly.factor()?;
            let factors: Vec<Value> = fz
                .factors
                .iter()
                .map(|(q, e)| json!({"factor": q.to_string(), "coeffs": q.to_u64s(), "multiplicity": e}))
                .collect();
            emit(json, json!({"unit": fz.unit.coeffs()[0], "factors": factors}), || {
                let mut lines = vec![format!("unit: {}", fz.unit)];
                lines.extend(fz.factors.iter().map(|(q, e)| format!("({q})^{e}")));
                lines.join("\n")
            });
        }
        Command::Classify { prime, poly } => {
            let poly = match poly {
                Some(text) => parse(prime, text)?,
                None => Polynomial::zero(&field(prime)?),
            };
            let t = classify_type(&poly)?;
            emit(json, raw_json(&t.to_json()), || match &t {
                AlgebraType::Free(_) => format!("{t} (free)"),
                AlgebraType::Quotient(f) => {
                    let parts: Vec<String> = f.parts().iter().map(|q| format!("({},{},{})", q.d, q.j, q.n)).collect();
                    format!("{t}\nparts (d,j,n): {}", parts.join(" "))
                }
            });
        }
        Command::Iso { prime, left, right } => {
            let (l, r) = (classify_type(&parse(prime, left)?)?, classify_type(&parse(prime, right)?)?);
            let same = l == r;
            emit(
                json,
                json!({"isomorphic": same, "left": raw_json(&l.to_json()), "right": raw_json(&r.to_json())}),
                || if same { "isomorphic".into() } else { "not isomorphic".into() },
            );
            return Ok(if same { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Realize { prime, form } => {
            let q = realize(&parse_form(prime, form)?)?;
            emit(json, json!({"polynomial": q.to_string(), "coeffs": q.to_u64s()}), || q.to_string());
        }
        Command::Aut {
            prime,
            poly,
            generators,
            enumerate,
            cap,
            ..
        } => {
            let poly = parse(prime, poly)?;
            let form = finite_form(&poly)?;
            if *generators || *enumerate {
                let list: Vec<ProductAut> = if *generators {
                    aut_generators(&form)?
                } else {
                    enumerate_auts(&form, *cap)?.collect()
                };
                let iso = ExplicitIsomorphism::new(&poly.monic())?;
                let gen = iso.generator();
                let mut rows = Vec::with_capacity(list.len());
                for g in &list {
                    let t = iso.preimage(&g.apply(&gen)?)?;
                    rows.push((g, t));
                }
                let key = if *generators { "generators" } else { "automorphisms" };
                let values: Vec<Value> = rows
                    .iter()
                    .map(|(g, t)| json!({"x_image": t.to_string(), "aut": raw_json(&g.to_json())}))
                    .collect();
                emit(json, json!({ "form": raw_json(&form.to_json()), key: values }), || {
                    let mut lines = vec![format!("{} {key} of {form}", rows.len())];
                    lines.extend(rows.iter().map(|(g, t)| format!("X -> {t}    {g}")));
                    lines.join("\n")
                });
            } else {
                let order = aut_group_order(&form);
                emit(json, json!({"order": order.to_string(), "form": raw_json(&form.to_json())}), || {
                    order.to_string()
                });
            }
        }
        Command::Idem { prime, poly, max_slots } => {
            let poly = parse(prime, poly)?;
            let residues: Vec<Polynomial> = match classify_type(&poly)? {
                // a polynomial ring is a domain
                AlgebraType::Free(_) => vec![Polynomial::zero(poly.field()), Polynomial::one(poly.field())],
                AlgebraType::Quotient(_) => {
                    let iso = ExplicitIsomorphism::new(&poly.monic())?;
                    let mut out = iso
                        .algebra()
                        .idempotents(*max_slots)?
                        .iter()
                        .map(|e| iso.preimage(e))
                        .collect::<Result<Vec<_>, _>>()?;
                    out.sort();
                    out
                }
            };
            let shown: Vec<String> = residues.iter().map(Polynomial::to_string).collect();
            emit(json, json!({"count": residues.len(), "idempotents": shown}), || {
                let mut lines = vec![format!("{} idempotents", residues.len())];
                lines.extend(shown.iter().cloned());
                lines.join("\n")
            });
        }
        Command::Gen { prime, form } => {
            let cert = generator_element(&parse_form(prime, form)?)?;
            emit(
                json,
                json!({
                    "element": cert.element.to_string(),
                    "coords": cert.element.fp_coords(),
                    "modulus": cert.modulus.to_string(),
                    "rank": cert.rank,
                    "dimension": cert.dimension,
                }),
                || {
                    format!(
                        "generator: {}\nminimal polynomial: {}\nrank of 1, g, ..., g^{}: {} of {}",
                        cert.element,
                        cert.modulus,
                        cert.dimension - 1,
                        cert.rank,
                        cert.dimension
                    )
                },
            );
        }
        Command::Verify { prime, max_dim, cap } => {
            let fp = PrimeField::new(prime.p)?;
            let table = verify::run(fp, *max_dim, *cap);
            let passed = table.iter().all(verify::CheckOutcome::passed);
            let rows: Vec<Value> = table
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "passed": r.passed(),
                        "cases": r.cases,
                        "skipped": r.skipped,
                        "failures": r.failures,
                    })
                })
                .collect();
            emit(json, json!({"passed": passed, "checks": rows}), || {
                table.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
            });
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}
