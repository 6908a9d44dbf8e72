use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superkit::algebra::{format_coords, odd_ideal, parse_element, AlgebraRef, SuperIdeal};
use superkit::filtration::{graded_companion, FilteredSuperAlgebra};
use superkit::gamma::{format_matrix, parse_word, EnvelopingOracle, Gamma, Strategy, SupermatrixOracle};
use superkit::hcp::{r_radical, validate_pair, HarishChandraPair, Representation};
use superkit::hopf::{check_alpha_surjective, check_hopf_axioms, coinvariants, CoidealCoaction};
use superkit::hyp::{canonical_decompose, check_gr_hyp_duality, check_hyp_filtration};
use superkit::io::{builtin, coefficient_ring, load_file, Fixture};
use superkit::lie::check_axioms;
use superkit::linalg::{Subspace, Vector};
use superkit::{Error, Field, Report};

#[derive(Parser)]
#[command(name = "superkit", version, about = "Exact computations with superalgebras and Harish-Chandra pairs")]
struct Cli {
    /// Ground field: `q` or `p=5`
    #[arg(long, global = true)]
    field: Option<String>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoactionArg {
    Regular,
    Trivial,
}

#[derive(Subcommand)]
enum Command {
    /// Validate any fixture file
    Validate { fixture: String },
    /// Normal form of a generator word in Γ(R)
    Nf {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value = "K")]
        coeffs: String,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
        #[arg(long)]
        check_oracle: bool,
        word: String,
    },
    /// Graded companion of an algebra for an adic filtration
    Gr {
        algebra: String,
        /// `odd`, or generators separated by `;`
        #[arg(long, default_value = "odd")]
        ideal: String,
    },
    /// Subordinated submodule and radical for a subgroup R
    Radical {
        pair: String,
        /// Lie(R) basis as comma-separated Lie(G) labels
        #[arg(long, default_value = "")]
        lie_r: String,
    },
    /// Canonical decomposition of a functional on a truncated hyperalgebra
    HypDecompose {
        hopf: String,
        /// coordinates `c1,c2,...` or `label=c,...`
        #[arg(long)]
        phi: String,
    },
    /// Axiom check for a Lie or Hopf fixture
    Axioms { fixture: String },
    /// Coinvariants of a coaction and surjectivity of α
    Coinvariants {
        hopf: String,
        #[arg(long, value_enum, default_value = "regular")]
        coaction: CoactionArg,
    },
}

/// A failed run: exit 1 for validation failures, 2 for malformed input.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse(_) | Error::Field(_) | Error::Dimension(_) | Error::AlgebraMismatch => 2,
            _ => 1,
        };
        let message = match e {
            Error::Parse(m) => format!("parse error: {m}"),
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn fixture(name: &str, field: Option<Field>) -> Result<Fixture, Failure> {
    if name.ends_with(".json") || name.contains('/') {
        if !Path::new(name).exists() {
            return Err(malformed(format!("missing fixture '{name}'")));
        }
        return Ok(load_file(name, field)?);
    }
    Ok(builtin(name, field.unwrap_or(Field::Rational))?)
}

fn pair_fixture(name: &str, field: Option<Field>) -> Result<HarishChandraPair, Failure> {
    match fixture(name, field)? {
        Fixture::Pair(p) => Ok(p),
        _ => Err(malformed(format!("'{name}' is not a pair fixture"))),
    }
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(&r.checks).expect("report serializes")
}

fn report_output(r: Report, extra: &str) -> Output {
    let mut text = r.to_string();
    text.push_str(extra);
    Output { ok: r.passed(), json: json!({"passed": r.passed(), "checks": report_json(&r)}), text }
}

fn format_span(labels: &[String], s: &Subspace) -> String {
    let parts: Vec<String> = s.basis().iter().map(|v| format_coords(labels, v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn validate(name: &str, field: Option<Field>) -> Result<Output, Failure> {
    Ok(match fixture(name, field)? {
        Fixture::Pair(p) => {
            let r = validate_pair(&p);
            let abc = ["(a)", "(b)", "(c)"]
                .iter()
                .all(|tag| r.checks.iter().filter(|c| c.name.starts_with(tag)).all(|c| c.passed));
            let summary = format!("conditions (a)(b)(c): {}\n", if abc { "PASS" } else { "FAIL" });
            report_output(r, &summary)
        }
        Fixture::Algebra(a) => {
            let (even, odd) = a.dims();
            let nil = odd_ideal(&a)?.nilpotency_index();
            let mut r = Report::new();
            r.record("supercommutative associative unital", Ok(()));
            r.record("odd ideal nilpotent", nil.map(|_| ()).ok_or_else(|| "powers do not vanish".into()));
            report_output(r, &format!("dimension {even}|{odd}\n"))
        }
        Fixture::Hopf(h) if h.limit.is_some() => {
            // a proper truncation is not a Hopf algebra; check it as a hyperalgebra source
            let t = h.truncated()?;
            let mut r = check_hyp_filtration(&t);
            r.extend("gr/hyp ", check_gr_hyp_duality(&t)?);
            report_output(r, &format!("truncation exact up to level {}\n", h.limit.unwrap_or_default()))
        }
        Fixture::Hopf(h) => report_output(check_hopf_axioms(&h.hopf), ""),
        Fixture::Lie(g) => report_output(check_axioms(&g), ""),
    })
}

fn axioms(name: &str, field: Option<Field>) -> Result<Output, Failure> {
    Ok(match fixture(name, field)? {
        Fixture::Lie(g) => report_output(check_axioms(&g), ""),
        Fixture::Pair(p) => report_output(check_axioms(p.lie()), ""),
        Fixture::Hopf(h) => report_output(check_hopf_axioms(&h.hopf), ""),
        Fixture::Algebra(_) => return Err(malformed("axioms needs a Lie, Hopf or pair fixture")),
    })
}

fn nf(pair: &str, coeffs: &str, strategy: StrategyArg, check_oracle: bool, word: &str, field: Option<Field>) -> Result<Output, Failure> {
    let p = Arc::new(pair_fixture(pair, field)?);
    let ring = coefficient_ring(coeffs, p.field())?;
    let strategy = match strategy {
        StrategyArg::Leftmost => Strategy::Leftmost,
        StrategyArg::Rightmost => Strategy::Rightmost,
    };
    let gamma = Gamma::new(p.clone(), ring.clone())?.with_strategy(strategy);
    let letters = parse_word(&p, &ring, word)?;
    let u = gamma.word(&letters)?;
    let mut text = format!("{u}\n");
    let odd: Vec<String> = u.odd.iter().map(|a| a.to_string()).collect();
    let mut out = json!({"even": format_matrix(&u.even), "coords": odd, "v_labels": p.v.labels()});
    let mut ok = true;
    if check_oracle {
        let env = EnvelopingOracle::new(p.clone(), ring.clone());
        let verdict = match (env.of_word(&letters), env.of_element(&u)) {
            (Ok(x), Ok(y)) if x == y => "agrees".to_string(),
            (Ok(_), Ok(_)) => {
                ok = false;
                "MISMATCH".to_string()
            }
            (Err(e), _) | (_, Err(e)) => format!("not applicable ({e})"),
        };
        text.push_str(&format!("enveloping oracle: {verdict}\n"));
        out["enveloping_oracle"] = json!(verdict);
        if matches!(p.rho, Representation::Adjoint { .. }) {
            let sm = SupermatrixOracle::calibrate(p.clone())?;
            let verdict = if sm.of_word(&ring, &letters) == sm.of_element(&u) {
                "agrees"
            } else {
                ok = false;
                "MISMATCH"
            };
            text.push_str(&format!("supermatrix oracle: {verdict}\n"));
            out["supermatrix_oracle"] = json!(verdict);
        }
    }
    Ok(Output { text, json: out, ok })
}

fn ideal_of(a: &AlgebraRef, text: &str) -> Result<SuperIdeal, Failure> {
    if text.trim() == "odd" {
        return Ok(odd_ideal(a)?);
    }
    let gens = text
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_element(a, s))
        .collect::<superkit::Result<Vec<_>>>()?;
    Ok(SuperIdeal::generated_by(a, &gens)?)
}

fn gr(name: &str, ideal: &str, field: Option<Field>) -> Result<Output, Failure> {
    let a = match fixture(name, field)? {
        Fixture::Algebra(a) => a,
        Fixture::Hopf(h) => h.hopf.algebra().clone(),
        _ => return Err(malformed(format!("'{name}' is not an algebra fixture"))),
    };
    let i = ideal_of(&a, ideal)?;
    let f = FilteredSuperAlgebra::adic(&a, &i)?;
    let g = graded_companion(&f)?;
    let dims = g.component_dims();
    let dims_text: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let ga = g.algebra();
    let labels = ga.labels().to_vec();
    let mut text = format!("degrees: {}\n", dims_text.join(" "));
    let mut basis = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let rep = format_coords(a.labels(), g.representative(i));
        text.push_str(&format!("{l}: degree {}, parity {}, represented by {rep}\n", g.degree(i), ga.parity(i).bit()));
        basis.push(json!({"label": l, "degree": g.degree(i), "parity": ga.parity(i).bit(), "representative": rep}));
    }
    let mut products = Vec::new();
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            if ga.structure_constants(i, j).is_empty() {
                continue;
            }
            let v = format_coords(&labels, &ga.basis_product(i, j));
            text.push_str(&format!("{} * {} = {v}\n", labels[i], labels[j]));
            products.push(json!({"left": labels[i], "right": labels[j], "value": v}));
        }
    }
    Ok(Output { text, json: json!({"degrees": dims, "basis": basis, "products": products}), ok: true })
}

fn radical(name: &str, lie_r: &str, field: Option<Field>) -> Result<Output, Failure> {
    let p = pair_fixture(name, field)?;
    let f = p.field();
    let g0 = p.group.lie_dim();
    let labels = p.group.lie_labels.clone();
    let mut vecs: Vec<Vector> = Vec::new();
    for item in lie_r.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let idx = labels.iter().position(|l| l == item).ok_or_else(|| malformed(format!("unknown Lie label '{item}'")))?;
        vecs.push(superkit::linalg::unit_vec(f, g0, idx));
    }
    let r = Subspace::span(f, g0, vecs);
    let (sub, lie_h) = r_radical(&p, &r)?;
    let w = format_span(p.v.labels(), &sub.w);
    let h = format_span(&labels, &lie_h);
    let text = format!(
        "W_R: {w}\nLie(H_R): {h}\niterations: {}\nW_R stable under G: {}\n",
        sub.iterations,
        if sub.stable { "yes" } else { "no" }
    );
    let out = json!({"w": w, "w_dim": sub.w.dim(), "lie_h": h, "lie_h_dim": lie_h.dim(), "iterations": sub.iterations, "stable": sub.stable});
    Ok(Output { text, json: out, ok: true })
}

fn parse_functional(text: &str, labels: &[String], field: Field) -> Result<Vector, Failure> {
    let n = labels.len();
    let mut v = superkit::linalg::zero_vec(field, n);
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.iter().all(|s| !s.contains('=')) {
        if items.len() != n {
            return Err(malformed(format!("functional needs {n} coordinates, got {}", items.len())));
        }
        for (i, s) in items.iter().enumerate() {
            v[i] = field.parse_scalar(s)?;
        }
        return Ok(v);
    }
    for s in items {
        let (l, c) = s.split_once('=').ok_or_else(|| malformed(format!("expected label=value, got '{s}'")))?;
        let i = labels.iter().position(|x| x == l.trim()).ok_or_else(|| malformed(format!("unknown basis label '{}'", l.trim())))?;
        v[i] += &field.parse_scalar(c)?;
    }
    Ok(v)
}

fn hyp_decompose(name: &str, phi: &str, field: Option<Field>) -> Result<Output, Failure> {
    let h = match fixture(name, field)? {
        Fixture::Hopf(h) => h.truncated()?,
        _ => return Err(malformed(format!("'{name}' is not a Hopf fixture"))),
    };
    let labels = h.algebra().labels().to_vec();
    // `1*` is the counit, written `eps`
    let dual: Vec<String> = labels.iter().map(|l| if l == "1" { "eps".to_string() } else { format!("{l}*") }).collect();
    let v = parse_functional(phi, &labels, h.field())?;
    let table = canonical_decompose(&h, &v)?;
    let c = h.canonical().expect("decomposition needs the factored basis");
    let mut text = String::new();
    let mut rows = Vec::new();
    for (mask, psi) in &table {
        let gens: Vec<&str> = (0..c.odd_generators.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| labels[c.odd_generators[k]].as_str())
            .collect();
        let coef = format_coords(&dual, psi);
        text.push_str(&format!("gamma({}): {coef}\n", gens.join(",")));
        rows.push(json!({"odd": gens, "coefficient": coef}));
    }
    if table.is_empty() {
        text.push_str("zero functional\n");
    }
    Ok(Output { text, json: json!({"terms": rows}), ok: true })
}

fn coinvariants_cmd(name: &str, coaction: CoactionArg, field: Option<Field>) -> Result<Output, Failure> {
    let h = match fixture(name, field)? {
        Fixture::Hopf(h) => h.hopf,
        _ => return Err(malformed(format!("'{name}' is not a Hopf fixture"))),
    };
    let c = match coaction {
        CoactionArg::Regular => CoidealCoaction::regular(&h)?,
        CoactionArg::Trivial => CoidealCoaction::trivial(h.algebra(), &h)?,
    };
    let co = coinvariants(&c)?;
    let surj = check_alpha_surjective(&c);
    let span = format_span(c.carrier.labels(), &co);
    let text = format!("coinvariants: {span}\ndimension: {}\nalpha surjective: {surj}\n", co.dim());
    Ok(Output { text, json: json!({"coinvariants": span, "dim": co.dim(), "alpha_surjective": surj}), ok: true })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let field = cli.field.as_deref().map(Field::parse).transpose()?;
    match &cli.command {
        Command::Validate { fixture } => validate(fixture, field),
        Command::Nf { pair, coeffs, strategy, check_oracle, word } => nf(pair, coeffs, *strategy, *check_oracle, word, field),
        Command::Gr { algebra, ideal } => gr(algebra, ideal, field),
        Command::Radical { pair, lie_r } => radical(pair, lie_r, field),
        Command::HypDecompose { hopf, phi } => hyp_decompose(hopf, phi, field),
        Command::Axioms { fixture } => axioms(fixture, field),
        Command::Coinvariants { hopf, coaction } => coinvariants_cmd(hopf, *coaction, field),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut j = out.json;
                j["ok"] = json!(out.ok);
                println!("{}", serde_json::to_string_pretty(&j).expect("json output"));
            } else {
                print!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({"ok": false, "error": f.message, "exit": f.code}));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
