//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

mod common;

use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use superkit::algebra::{dual_super_numbers, grassmann_named, odd_ideal, AlgebraRef};
use superkit::filtration::{check_gr_tensor_iso, FilteredSuperAlgebra};
use superkit::gamma::{tangent_bracket, EnvelopingOracle, Gamma, GammaElement, Strategy, SupermatrixOracle};
use superkit::hcp::{gl_pair, pseudoabelian_example, r_radical, subordinated_closure, validate_pair, HarishChandraPair};
use superkit::hopf::{check_alpha_surjective, coinvariants, CoidealCoaction};
use superkit::hyp::{canonical_decompose, canonical_recompose, check_gr_hyp_duality, check_hyp_filtration};
use superkit::io::{load_file, Fixture};
use superkit::lie::{check_axioms, gl_super};
use superkit::linalg::{self, Subspace, Vector};
use superkit::Field;

type Outcome = Result<String, String>;

fn ring(f: Field, k: usize) -> AlgebraRef {
    let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    grassmann_named(f, &names.iter().map(String::as_str).collect::<Vec<_>>()).unwrap()
}

fn fixture_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_files(suffix: &str) -> Vec<std::path::PathBuf> {
    let mut out: Vec<_> = std::fs::read_dir(fixture_dir())
        .map(|d| d.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.to_string_lossy().ends_with(suffix)).collect())
        .unwrap_or_default();
    out.sort();
    out
}

fn gl_pairs() -> Vec<Arc<HarishChandraPair>> {
    let q = Field::Rational;
    vec![Arc::new(gl_pair(q, 1, 1).unwrap()), Arc::new(gl_pair(q, 2, 1).unwrap())]
}

fn relation_soundness() -> Outcome {
    let mut rng = common::rng(1);
    let (mut draws, mut instances) = (0, 0);
    for p in gl_pairs() {
        for k in 1..=4 {
            let r = ring(Field::Rational, k);
            let g = Gamma::new(p.clone(), r.clone()).map_err(|e| e.to_string())?;
            let o = EnvelopingOracle::new(p.clone(), r);
            for _ in 0..50 {
                instances += common::check_relations(&mut rng, &g, &o).map_err(|e| format!("{} over Lambda({k}): {e}", p.name))?;
                draws += 1;
            }
        }
    }
    Ok(format!("{instances} relation instances over {draws} coefficient draws"))
}

fn normal_form_uniqueness() -> Outcome {
    let mut rng = common::rng(2);
    let q = Field::Rational;
    let mut pairs = gl_pairs();
    pairs.push(Arc::new(pseudoabelian_example(q, 1).unwrap()));
    let r = ring(q, 4);
    let mut supermatrix = 0;
    for n in 0..500 {
        let p = pairs[n % pairs.len()].clone();
        let w = common::random_word(&mut rng, &p, &r, 6, true);
        let left = Gamma::new(p.clone(), r.clone()).unwrap().word(&w).map_err(|e| e.to_string())?;
        let right = Gamma::new(p.clone(), r.clone()).unwrap().with_strategy(Strategy::Rightmost).word(&w).map_err(|e| e.to_string())?;
        if left != right {
            return Err(format!("word {n} on {}: strategies disagree", p.name));
        }
        let o = EnvelopingOracle::new(p.clone(), r.clone());
        if o.of_element(&left).map_err(|e| e.to_string())? != o.of_word(&w).map_err(|e| e.to_string())? {
            return Err(format!("word {n} on {}: enveloping oracle disagrees", p.name));
        }
        if let Ok(s) = SupermatrixOracle::calibrate(p.clone()) {
            if s.of_element(&left) != s.of_word(&r, &w) {
                return Err(format!("word {n} on {}: supermatrix oracle disagrees", p.name));
            }
            supermatrix += 1;
        }
    }
    Ok(format!("500 words, {supermatrix} also through the supermatrix oracle"))
}

fn group_axioms() -> Outcome {
    let mut rng = common::rng(3);
    let q = Field::Rational;
    let mut pairs = gl_pairs();
    pairs.push(Arc::new(pseudoabelian_example(q, 2).unwrap()));
    let r = ring(q, 4);
    for n in 0..200 {
        let p = pairs[n % pairs.len()].clone();
        let g = Gamma::new(p.clone(), r.clone()).unwrap();
        let mut draw = || g.word(&common::random_word(&mut rng, &p, &r, 4, false)).map_err(|e| e.to_string());
        let (x, y, z) = (draw()?, draw()?, draw()?);
        let m = |a: &GammaElement, b: &GammaElement| g.multiply(a, b).map_err(|e| e.to_string());
        if m(&m(&x, &y)?, &z)? != m(&x, &m(&y, &z)?)? {
            return Err(format!("triple {n} on {}: not associative", p.name));
        }
        let inv = g.inverse(&x).map_err(|e| e.to_string())?;
        if m(&x, &inv)? != g.identity() || m(&inv, &x)? != g.identity() {
            return Err(format!("triple {n} on {}: inverse law", p.name));
        }
        if m(&g.identity(), &x)? != x || m(&x, &g.identity())? != x {
            return Err(format!("triple {n} on {}: identity law", p.name));
        }
    }
    Ok("200 triples".into())
}

fn lie_consistency() -> Outcome {
    let mut checked = Vec::new();
    for f in [Field::Rational, Field::prime(5).unwrap()] {
        let mut pairs: Vec<(String, HarishChandraPair)> = [gl_pair(f, 1, 1), gl_pair(f, 2, 1), gl_pair(f, 1, 2)]
            .into_iter()
            .chain((1..=3).map(|n| pseudoabelian_example(f, n)))
            .map(|p| p.map(|p| (p.name.clone(), p)))
            .collect::<superkit::Result<_>>()
            .map_err(|e| e.to_string())?;
        for path in fixture_files(".pair.json") {
            if let Ok(Fixture::Pair(p)) = load_file(&path.to_string_lossy(), Some(f)) {
                // deliberately broken fixtures have no supergroup behind them
                if validate_pair(&p).passed() {
                    pairs.push((path.file_name().unwrap().to_string_lossy().into_owned(), p));
                }
            }
        }
        for (label, p) in pairs {
            let p = Arc::new(p);
            let lie = p.lie();
            for i in 0..lie.dim() {
                for j in 0..lie.dim() {
                    let t = tangent_bracket(&p, i, j).map_err(|e| format!("{label}: {e}"))?;
                    if t != lie.basis_bracket(i, j) {
                        return Err(format!("{label} over {f}: [{}, {}]", lie.label(i), lie.label(j)));
                    }
                }
            }
            checked.push(format!("{label}/{f}"));
        }
    }
    Ok(format!("{} pairs: {}", checked.len(), checked.join(" ")))
}

fn gr_tensor() -> Outcome {
    let mut rng = common::rng(5);
    let q = Field::Rational;
    let mut count = 0;
    for n in 0..100 {
        let f = [q, Field::prime(3).unwrap(), Field::prime(5).unwrap()][n % 3];
        let a = common::random_filtered(&mut rng, f, 8);
        let partner = rng.gen_range(2..=4);
        let b = common::random_filtered(&mut rng, f, partner);
        let iso = check_gr_tensor_iso(&a, &b).map_err(|e| format!("random pair {n}: {e}"))?;
        if iso.degree_dims.iter().sum::<usize>() != a.algebra().dim() * b.algebra().dim() {
            return Err(format!("random pair {n}: dimensions"));
        }
        count += 1;
    }
    let k = grassmann_named(q, &[]).unwrap();
    let fixtures = [
        k.clone(),
        grassmann_named(q, &["th"]).unwrap(),
        grassmann_named(q, &["th1", "th2"]).unwrap(),
        grassmann_named(q, &["th1", "th2", "th3"]).unwrap(),
        dual_super_numbers(&k, "e0", "e1").unwrap().algebra,
        dual_super_numbers(&grassmann_named(q, &["a"]).unwrap(), "e0", "e1").unwrap().algebra,
    ];
    let adic = |a: &AlgebraRef| FilteredSuperAlgebra::adic(a, &odd_ideal(a).unwrap()).unwrap();
    for a in &fixtures {
        for b in &fixtures {
            if a.dim() * b.dim() <= 64 {
                check_gr_tensor_iso(&adic(a), &adic(b)).map_err(|e| format!("fixture pair: {e}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} tensor products (100 random)"))
}

fn lie_axioms() -> Outcome {
    let mut count = 0;
    for f in [Field::Rational, Field::prime(3).unwrap(), Field::prime(5).unwrap()] {
        for size in 1..=4 {
            for m in 0..=size {
                let gl = gl_super(f, m, size - m).map_err(|e| e.to_string())?;
                let r = check_axioms(&gl.lie);
                if !r.passed() {
                    return Err(format!("gl({m}|{}) over {f}: {r}", size - m));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} algebras"))
}

fn hyp_filtration() -> Outcome {
    let mut count = 0;
    for f in [Field::Rational, Field::prime(3).unwrap()] {
        let mut rng = common::rng(7);
        for (name, h) in common::hyp_fixtures(f) {
            let r = check_hyp_filtration(&h);
            if !r.passed() {
                return Err(format!("{name} over {f}: {r}"));
            }
            let n = h.dim();
            // over F_3 small duals are enumerated outright
            let probes: Vec<Vector> = if f != Field::Rational && n <= 6 {
                common::all_vectors_f3(n)
            } else {
                let mut v: Vec<Vector> = (0..n).map(|i| linalg::unit_vec(f, n, i)).collect();
                v.extend((0..8).map(|_| common::random_element(&mut rng, h.algebra(), None).coords().to_vec()));
                v
            };
            for phi in probes {
                let table = canonical_decompose(&h, &phi).map_err(|e| format!("{name}: {e}"))?;
                if canonical_recompose(&h, &table).map_err(|e| format!("{name}: {e}"))? != phi {
                    return Err(format!("{name} over {f}: round trip"));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} sources of dimension <= 12"))
}

fn gr_hyp_duality() -> Outcome {
    let mut count = 0;
    for f in [Field::Rational, Field::prime(5).unwrap()] {
        for (name, h) in common::hyp_fixtures(f) {
            let r = check_gr_hyp_duality(&h).map_err(|e| format!("{name}: {e}"))?;
            if !r.passed() {
                return Err(format!("{name} over {f}: {r}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} sources"))
}

fn radicals() -> Outcome {
    let q = Field::Rational;
    for n in 1..=3 {
        let p = pseudoabelian_example(q, n).unwrap();
        let x = Subspace::span(q, n + 1, vec![linalg::unit_vec(q, n + 1, n)]);
        let (w, h) = r_radical(&p, &x).map_err(|e| e.to_string())?;
        if w.w != Subspace::full(q, 2 * n) || h != x {
            return Err(format!("pseudoabelian{n}: radical for the central group"));
        }
        let (w0, h0) = r_radical(&p, &Subspace::zero(q, n + 1)).map_err(|e| e.to_string())?;
        if !w0.w.is_zero() || !h0.is_zero() {
            return Err(format!("pseudoabelian{n}: radical for the trivial group"));
        }
    }
    let pairs = [gl_pair(q, 1, 1).unwrap(), gl_pair(q, 2, 1).unwrap(), pseudoabelian_example(q, 1).unwrap(), pseudoabelian_example(q, 2).unwrap()];
    let mut cases = 0;
    for p in &pairs {
        let t = p.dim_v();
        let candidates = common::echelon_subspaces(q, t);
        let g0 = p.group.lie_dim();
        let lie_rs: Vec<Subspace> = if g0 <= 3 {
            common::echelon_subspaces(q, g0)
        } else {
            (0u32..1 << g0).map(|m| Subspace::span(q, g0, (0..g0).filter(|i| m >> i & 1 == 1).map(|i| linalg::unit_vec(q, g0, i)))).collect()
        };
        for lie_r in &lie_rs {
            let sub = subordinated_closure(p, lie_r).map_err(|e| e.to_string())?;
            if sub.iterations > t.max(1) {
                return Err(format!("{}: {} iterations", p.name, sub.iterations));
            }
            if sub.w != common::brute_force_subordinated(p, lie_r, &candidates) {
                return Err(format!("{}: brute force disagrees for Lie(R) = {:?}", p.name, lie_r.basis()));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} closures against brute force"))
}

fn coinvariant_lemma() -> Outcome {
    let f3 = Field::prime(3).unwrap();
    let mut hopfs = common::hopf_fixtures(f3);
    for path in fixture_files(".hopf.json") {
        if let Ok(Fixture::Hopf(h)) = load_file(&path.to_string_lossy(), Some(f3)) {
            if h.limit.is_none() {
                hopfs.push((path.file_name().unwrap().to_string_lossy().into_owned(), h.hopf));
            }
        }
    }
    let mut count = 0;
    for (name, h) in &hopfs {
        if h.dim() > 8 {
            continue;
        }
        let regular = CoidealCoaction::regular(h).map_err(|e| e.to_string())?;
        let trivial = CoidealCoaction::trivial(h.algebra(), h).map_err(|e| e.to_string())?;
        if !check_alpha_surjective(&regular) {
            return Err(format!("{name}: alpha not surjective for the regular coaction"));
        }
        if check_alpha_surjective(&trivial) != (h.dim() == 1) {
            return Err(format!("{name}: alpha for the trivial coaction"));
        }
        let mut coactions = vec![regular, trivial];
        if h.dim() <= 4 {
            coactions.push(CoidealCoaction::on_right_factor(&grassmann_named(f3, &["b"]).unwrap(), h).map_err(|e| e.to_string())?);
        }
        for c in &coactions {
            if coinvariants(c).map_err(|e| e.to_string())? != common::equalizer_by_enumeration(c) {
                return Err(format!("{name}: coinvariants differ from the equalizer"));
            }
        }
        count += 1;
    }
    Ok(format!("{count} Hopf superalgebras"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 10] = [
        ("relation soundness", relation_soundness, Some(30)),
        ("normal-form uniqueness", normal_form_uniqueness, Some(60)),
        ("group axioms", group_axioms, None),
        ("Lie consistency of the tangent bracket", lie_consistency, None),
        ("gr tensor compatibility", gr_tensor, Some(30)),
        ("Lie axiom suite", lie_axioms, None),
        ("hyp filtration lemmas", hyp_filtration, None),
        ("gr/hyp duality", gr_hyp_duality, None),
        ("radical fixpoints", radicals, None),
        ("coinvariants and alpha", coinvariant_lemma, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|s| elapsed > Duration::from_secs(s));
        let ok = outcome.is_ok() && !over;
        let detail = match (&outcome, over) {
            (Ok(d), false) => d.clone(),
            (Ok(d), true) => format!("{d}; over the {}s budget", budget.unwrap()),
            (Err(e), _) => e.clone(),
        };
        println!("criterion {:>2} {}: {} ({detail}; {:.2?})", i + 1, name, if ok { "PASS" } else { "FAIL" }, elapsed);
        if !ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
