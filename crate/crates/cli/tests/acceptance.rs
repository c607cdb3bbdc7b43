//! Acceptance suite: one line per criterion, exact integer equality
//! throughout. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use formalq::branching::{branch, branch_series, Embedding};
use formalq::cone::half_space_certificate;
use formalq::hamiltonian::{
    formal_quantisation_series, induce_formal_quantisation, induce_quantisation, product_model,
    reduction_multiplicity, semi_formal_quantisation, shifted_invariant_quantisation, vector_partition,
    CoadjointOrbitModel, InducedModel, InnerModel, LinearModel, Sign,
};
use formalq::khom::{
    dirac_induction, dirac_pullback, dirac_restriction, discrete_series_class, external_product, lift_series,
    module_action, module_action_via_restriction, EllipticRule, GroupModel, KHomologyClass,
};
use formalq::repring::{dimension, tensor_decompose, weight_multiplicities};
use formalq::{Error, FormalSeries, RKElement, Rational64, RootDatum, Weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn rd(s: &str) -> RootDatum {
    RootDatum::parse(s).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_window(a: &FormalSeries, b: &FormalSeries, radius: Rational64, what: &str) -> Check {
    match a.first_difference(b, radius).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some(x) => Err(format!(
            "{what}: differ at {x}: {} vs {}",
            a.coefficient(&x).unwrap(),
            b.coefficient(&x).unwrap()
        )),
    }
}

// ---------------------------------------------------------------------------
// Independent character oracles.

/// Weights of the A1 representation with highest weight `n`.
fn a1_character(n: i64) -> BTreeMap<Vec<i64>, i64> {
    (0..=n).map(|k| (vec![n - 2 * k], 1)).collect()
}

/// Weights of the A2 representation `[a, b]` from Gelfand–Tsetlin patterns
/// with top row `(a + b, b, 0)`.
fn a2_character(a: i64, b: i64) -> BTreeMap<Vec<i64>, i64> {
    let (m1, m2, m3) = (a + b, b, 0);
    let mut out = BTreeMap::new();
    for x in m2..=m1 {
        for y in m3..=m2 {
            for z in y..=x {
                // Row sums give the gl3 weight (z, x + y − z, m − x − y).
                let e = [z, x + y - z, m1 + m2 + m3 - x - y];
                *out.entry(vec![e[0] - e[1], e[1] - e[2]]).or_insert(0) += 1;
            }
        }
    }
    out
}

fn oracle_character(datum: &str, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    match datum {
        "A1" => a1_character(lambda[0]),
        "A2" => a2_character(lambda[0], lambda[1]),
        "A1xA1" => {
            let mut out = BTreeMap::new();
            for (x, m) in a1_character(lambda[0]) {
                for (y, n) in a1_character(lambda[1]) {
                    out.insert(vec![x[0], y[0]], m * n);
                }
            }
            out
        }
        other => panic!("no oracle for {other}"),
    }
}

/// Convolve two oracle characters and strip highest weights. The highest
/// remaining dominant weight maximises the coordinate sum for A1, A2 and
/// A1xA1, where the fundamental weights all have equal height.
fn oracle_tensor(datum: &str, lambda: &[i64], mu: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let (x, y) = (oracle_character(datum, lambda), oracle_character(datum, mu));
    let mut chi: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (a, m) in &x {
        for (b, n) in &y {
            let s: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
            *chi.entry(s).or_insert(0) += m * n;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        chi.retain(|_, m| *m != 0);
        let top = chi
            .iter()
            .filter(|(k, _)| k.iter().all(|&c| c >= 0))
            .max_by_key(|(k, _)| (k.iter().sum::<i64>(), (*k).clone()))
            .map(|(k, m)| (k.clone(), *m));
        let Some((top, m)) = top else { break };
        out.insert(top.clone(), m);
        for (k, n) in oracle_character(datum, &top) {
            *chi.entry(k).or_insert(0) -= m * n;
        }
    }
    assert!(chi.is_empty(), "oracle left a remainder");
    out
}

fn as_map(x: &RKElement) -> BTreeMap<Vec<i64>, i64> {
    x.terms().iter().map(|(k, v)| (k.0.clone(), *v)).collect()
}

/// `Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩` with roots in weight coordinates.
fn oracle_dimension(datum: &RootDatum, lambda: &Weight) -> Rational64 {
    let rho = datum.weyl_vector();
    let lr = lambda.add(&rho);
    datum
        .positive_roots()
        .iter()
        .map(|a| datum.inner_product(&lr, a).unwrap() / datum.inner_product(&rho, a).unwrap())
        .product()
}

// ---------------------------------------------------------------------------
// Criteria.

fn character_engine() -> Check {
    for datum in ["A1", "A2", "A1xA1"] {
        let k = rd(datum);
        let window = k.dominant_weights_up_to(r(5));
        for l in &window {
            for m in &window {
                let got = as_map(&tensor_decompose(&k, l, m).map_err(|e| e.to_string())?);
                let expect = oracle_tensor(datum, &l.0, &m.0);
                ensure(got == expect, || format!("{datum}: {l} ⊗ {m}: {got:?} vs {expect:?}"))?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for (datum, max) in [("A1", 12), ("A2", 6), ("A1xA1", 6), ("B2", 4), ("C3", 2), ("D4", 1)] {
        let k = rd(datum);
        for _ in 0..50 {
            let lambda = Weight((0..k.rank()).map(|_| rng.gen_range(0..=max)).collect());
            let total = weight_multiplicities(&k, &lambda).map_err(|e| e.to_string())?.total();
            let weyl = dimension(&k, &lambda).map_err(|e| e.to_string())? as i64;
            let product = oracle_dimension(&k, &lambda);
            ensure(total == weyl && r(total) == product, || {
                format!("{datum} {lambda}: Freudenthal {total}, Weyl {weyl}, oracle {product}")
            })?;
            if datum == "A2" {
                let gt: i64 = a2_character(lambda.0[0], lambda.0[1]).values().sum();
                ensure(gt == total, || format!("A2 {lambda}: GT {gt} vs {total}"))?;
            }
        }
    }
    Ok(())
}

fn t1_double() -> LinearModel {
    LinearModel::new(RootDatum::torus(1), vec![w(&[1]), w(&[1])], Some(vec![r(1)])).unwrap()
}

fn restriction_functoriality() -> Check {
    let t2 = LinearModel::torus_identity(2);
    let e = Embedding::diagonal_circle(2);
    let restricted = branch_series(&e, &formal_quantisation_series(&t2).unwrap(), r(10)).map_err(|e| e.to_string())?;
    let direct = formal_quantisation_series(&t1_double()).unwrap();
    same_window(&restricted, &direct, r(10), "T2 restricted to the diagonal circle")?;
    // λ ↦ λ + 1 on λ ≥ 0, independently.
    for l in -3..=3 {
        let expect = if l >= 0 { l + 1 } else { 0 };
        ensure(restricted.coefficient(&w(&[l])).unwrap() == expect, || format!("coefficient at {l}"))?;
    }
    let su2 = formal_quantisation_series(&LinearModel::su2_standard()).unwrap();
    match branch_series(&Embedding::maximal_torus(&rd("A1")), &su2, r(10)) {
        Err(Error::MissingWitness(_)) => Ok(()),
        other => Err(format!("Sym(C^2) restricted to T1 should lack a witness, got {other:?}")),
    }
}

fn multiplicativity() -> Check {
    let one = LinearModel::new(RootDatum::torus(1), vec![w(&[1])], Some(vec![r(1)])).unwrap();
    let su2 = LinearModel::su2_standard();
    let a1_d2 = GroupModel::new("A1 (d=2)", rd("A1"), 2);
    let pairs = [
        (t1_double(), one.clone(), GroupModel::compact(rd("T1")), GroupModel::compact(rd("T1"))),
        (su2.clone(), t1_double(), a1_d2.clone(), GroupModel::sl2r()),
        (LinearModel::torus_identity(2), su2, GroupModel::compact(rd("T2")), a1_d2),
    ];
    for (m1, m2, g1, g2) in pairs {
        let c1 = lift_series(&g1, formal_quantisation_series(&m1).unwrap()).unwrap();
        let c2 = lift_series(&g2, formal_quantisation_series(&m2).unwrap()).unwrap();
        let ext = external_product(&c1, &c2);
        ensure(ext.degree() == g1.d + g2.d, || format!("degree {} != {} + {}", ext.degree(), g1.d, g2.d))?;
        let direct = formal_quantisation_series(&product_model(&m1, &m2).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        same_window(&ext.series, &direct, r(8), &format!("{} x {}", g1.name, g2.name))?;
    }
    let p = product_model(&t1_double(), &one).unwrap();
    let c = formal_quantisation_series(&p).unwrap().coefficient(&w(&[2, 3])).unwrap();
    ensure(c == 3, || format!("(T1,(1,1)) x (T1,(1)) at (2,3): {c}"))
}

fn induced_models() -> Vec<InducedModel> {
    let a2 = rd("A2");
    vec![
        InducedModel::new(
            GroupModel::new("A1 (d=2)", rd("A1"), 2),
            InnerModel::Linear(LinearModel::su2_standard()),
        )
        .unwrap(),
        InducedModel::new(GroupModel::compact(rd("T1")), InnerModel::Linear(t1_double())).unwrap(),
        InducedModel::new(GroupModel::compact(rd("T2")), InnerModel::Linear(LinearModel::torus_identity(2))).unwrap(),
        InducedModel::new(
            GroupModel::new("A2 (d=4)", a2.clone(), 4),
            InnerModel::Coadjoint(CoadjointOrbitModel::new(a2, w(&[2, 1]), Sign::Minus).unwrap()),
        )
        .unwrap(),
    ]
}

fn quantisation_commutes_with_reduction() -> Check {
    for im in induced_models() {
        let lifted = induce_quantisation(&im).map_err(|e| e.to_string())?;
        let reduced = induce_formal_quantisation(&im).map_err(|e| e.to_string())?;
        ensure(lifted.degree() == im.group.d && reduced.degree() == im.group.d, || "degree tag".into())?;
        same_window(&lifted.series, &reduced.series, r(10), &im.group.name)?;
    }
    // SU(2)/ℂ² gives the all-ones series.
    let c = induce_quantisation(&induced_models()[0]).unwrap();
    let ones = FormalSeries::from_oracle(rd("A1"), |_| 1);
    same_window(&c.series, &ones, r(10), "SU(2)/C^2 against all ones")
}

fn partition_oracles() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut built = 0;
    while built < 10 {
        let rank = 1 + built % 2;
        let n = rng.gen_range(1..=4);
        let weights: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let Some(xi) = half_space_certificate(&weights, rank) else {
            continue;
        };
        built += 1;
        let m = LinearModel::new(
            RootDatum::torus(rank),
            weights.iter().map(|v| Weight(v.clone())).collect(),
            Some(xi.iter().map(|&x| r(x)).collect()),
        )
        .map_err(|e| e.to_string())?;
        let a: Vec<Vec<i64>> = (0..rank).map(|i| weights.iter().map(|v| v[i]).collect()).collect();
        let series = formal_quantisation_series(&m).unwrap();
        for lambda in RootDatum::torus(rank).dominant_weights_up_to(r(10)) {
            let sym = series.coefficient(&lambda).unwrap();
            let dp = vector_partition(&a, &lambda.0).map_err(|e| e.to_string())? as i64;
            ensure(sym == dp, || format!("weights {weights:?} at {lambda}: Sym {sym}, partitions {dp}"))?;
        }
    }
    Ok(())
}

/// `(π · s)(ν) = Σ_λ s(λ) mult(ν; π ⊗ π_λ)` with the oracle tensor product.
fn oracle_action(datum: &str, pi: &RKElement, s: &FormalSeries, nu: &Weight) -> i64 {
    let k = rd(datum);
    let nu_norm = k.norm_sq(nu).unwrap();
    let mut total = 0;
    for (l1, &a) in pi.terms() {
        let bound = r(2) * (k.norm_sq(l1).unwrap() + nu_norm);
        for l2 in k.dominant_weights_up_to(bound) {
            let c = s.coefficient(&l2).unwrap();
            if c != 0 {
                let m = oracle_tensor(datum, &l1.0, &l2.0).get(&nu.0).copied().unwrap_or(0);
                total += a * c * m;
            }
        }
    }
    total
}

fn module_structure() -> Check {
    for datum in ["A1", "A2"] {
        let k = rd(datum);
        let g = GroupModel::new(format!("{datum} (d=2)"), k.clone(), 2);
        let gens = k.dominant_weights_up_to(r(4));
        for l1 in &gens {
            for l2 in &gens {
                let pi = RKElement::irreducible(k.clone(), l1.clone()).unwrap();
                let a = dirac_induction(&g, &pi).unwrap();
                let b = KHomologyClass::generator(g.clone(), l2.clone()).unwrap();
                let direct = dirac_pullback(&module_action(&a, &b).unwrap());
                let via = module_action_via_restriction(&a, &b, r(8)).map_err(|e| e.to_string())?;
                for nu in k.dominant_weights_up_to(r(8)) {
                    let expect = oracle_action(datum, &pi, &dirac_pullback(&b), &nu);
                    let (x, y) = (direct.coefficient(&nu).unwrap(), via.series.coefficient(&nu).unwrap());
                    ensure(x == expect && y == expect, || {
                        format!("{datum}: [{l1}]·[{l2}]^* at {nu}: {x}, {y}, oracle {expect}")
                    })?;
                }
            }
        }
    }

    let a1 = rd("A1");
    let g = GroupModel::new("A1 (d=2)", a1.clone(), 2);
    let one = RKElement::irreducible(a1.clone(), w(&[1])).unwrap();
    let cg = module_action(
        &dirac_induction(&g, &one).unwrap(),
        &KHomologyClass::generator(g.clone(), w(&[1])).unwrap(),
    )
    .unwrap();
    let expect = FormalSeries::finite(a1.clone(), [(w(&[2]), 1), (w(&[0]), 1)]).unwrap();
    same_window(&cg.series, &expect, r(20), "[1]·[1]^*")?;

    let b = lift_series(&g, formal_quantisation_series(&LinearModel::su2_standard()).unwrap()).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    for _ in 0..10 {
        let terms: Vec<(Weight, i64)> = (0..rng.gen_range(1..=3))
            .map(|_| (w(&[rng.gen_range(0..=4)]), rng.gen_range(-3..=3)))
            .collect();
        let x = RKElement::from_terms(a1.clone(), terms).unwrap();
        let a = dirac_induction(&g, &x).unwrap();
        let direct = dirac_pullback(&module_action(&a, &b).unwrap());
        let via = module_action_via_restriction(&a, &b, r(8)).map_err(|e| e.to_string())?;
        for nu in a1.dominant_weights_up_to(r(8)) {
            // Against all ones, λ₂ runs over |ν − λ₁|, …, ν + λ₁ in steps of 2.
            let closed: i64 = x.terms().iter().map(|(l, &c)| c * (l.0[0].min(nu.0[0]) + 1)).sum();
            let oracle = oracle_action("A1", &x, &b.series, &nu);
            let (p, q) = (direct.coefficient(&nu).unwrap(), via.series.coefficient(&nu).unwrap());
            ensure(p == closed && q == closed && oracle == closed, || {
                format!("{x:?} at {nu}: {p}, {q}, oracle {oracle}, closed form {closed}")
            })?;
        }
    }
    Ok(())
}

fn discrete_series() -> Check {
    let g = GroupModel::new("A1 (d=2)", rd("A1"), 2).with_elliptic(EllipticRule::Regular);
    let target = GroupModel::sl2r();
    let e = Embedding::maximal_torus(&rd("A1"));
    for k in 1..=4 {
        let (sign, class) = discrete_series_class(&g, &w(&[k])).map_err(|e| e.to_string())?;
        ensure(sign == -1, || format!("sign at [{k}] is {sign}"))?;
        let restricted = dirac_restriction(&class, &target, &e, r(10)).map_err(|e| e.to_string())?;
        let signed = FormalSeries::from_rk(&branch(&e, &w(&[k])).unwrap().scale(-1));
        same_window(&restricted.series, &signed, r(10), &format!("DRes of [{k}]"))?;
        // m_{λ'} = 1 on k, k − 2, …, −k.
        let independent = FormalSeries::finite(rd("T1"), (0..=k).map(|j| (w(&[k - 2 * j]), -1))).unwrap();
        same_window(&restricted.series, &independent, r(10), &format!("weights of [{k}]"))?;
        ensure(restricted.degree() == 2, || "degree tag".into())?;
    }
    match discrete_series_class(&GroupModel::new("odd", rd("A1"), 3).with_elliptic(EllipticRule::All), &w(&[1])) {
        Err(Error::OddDimension { .. }) => Ok(()),
        other => Err(format!("odd d should be refused: {other:?}")),
    }
}

fn shifting_trick() -> Check {
    for m in [LinearModel::su2_standard(), t1_double()] {
        let g = GroupModel::compact(m.datum().clone());
        let c = lift_series(&g, formal_quantisation_series(&m).unwrap()).unwrap();
        for lambda in m.datum().dominant_weights_up_to(r(8)) {
            let direct = reduction_multiplicity(&c, &lambda).unwrap();
            let shifted = shifted_invariant_quantisation(&m, &lambda).map_err(|e| e.to_string())?;
            let known = match m.datum().label() {
                "A1" => 1,
                _ => (lambda.0[0] + 1).max(0),
            };
            ensure(direct == shifted && shifted == known, || {
                format!("{} at {lambda}: direct {direct}, shifted {shifted}, expected {known}", m.datum())
            })?;
        }
        let semi = semi_formal_quantisation(&m).unwrap();
        same_window(&semi, &c.series, r(8), "semi-formal")?;
    }
    Ok(())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn cli_contract() -> Check {
    let bin = env!("CARGO_BIN_EXE_formalq");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let su2 = write(dir.path(), "su2.json", r#"{"kind":"linear","datum":"A1","weights":[[1],[-1]]}"#);
    let t1 = write(dir.path(), "t1.json", r#"{"kind":"linear","datum":"T1","weights":[[1],[1]],"xi":[1]}"#);
    let bare = write(dir.path(), "bare.json", r#"{"kind":"linear","datum":"T1","weights":[[1],[1]]}"#);
    let induced = write(
        dir.path(),
        "induced.json",
        r#"{"kind":"induced","d":2,"inner":{"kind":"linear","datum":"A1","weights":[[1],[-1]]}}"#,
    );
    let broken = write(dir.path(), "broken.json", r#"{"kind":"linear","datum":"A1""#);

    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        (
            out.status.code().unwrap_or(-1),
            String::from_utf8_lossy(&out.stdout).into_owned(),
            String::from_utf8_lossy(&out.stderr).into_owned(),
        )
    };
    let commands: Vec<Vec<&str>> = vec![
        vec!["quantise", "--model", &su2, "--radius", "8"],
        vec!["branch", "--group", "A1", "--lambda", "[2]"],
        vec!["tensor", "--group", "A1", "--lambda", "[1]", "--mu", "[1]"],
        vec!["verify", "--check", "qr-induced", "--model", &induced, "--radius", "10"],
        vec!["verify", "--check", "shift", "--model", &t1, "--radius", "8"],
        vec!["shift", "--model", &t1, "--radius", "8"],
        vec!["induce", "--model", &induced, "--radius", "8"],
    ];
    for args in &commands {
        let first = run(args);
        let second = run(args);
        ensure(first.0 == 0, || format!("{args:?} exited {}: {}", first.0, first.2))?;
        ensure(first.1 == second.1 && !first.1.is_empty(), || format!("{args:?} is not deterministic"))?;
        serde_json::from_str::<serde_json::Value>(&first.1).map_err(|e| format!("{args:?}: {e}"))?;
    }

    let quantised: serde_json::Value = serde_json::from_str(&run(&commands[0]).1).unwrap();
    let terms = &quantised["series"]["terms"];
    let expect: serde_json::Value = serde_json::from_str(
        r#"[{"mult":1,"weight":[0]},{"mult":1,"weight":[1]},{"mult":1,"weight":[2]},{"mult":1,"weight":[3]},{"mult":1,"weight":[4]}]"#,
    )
    .unwrap();
    ensure(*terms == expect, || format!("SU(2)/C^2 at radius 8: {terms}"))?;
    let tensor: serde_json::Value = serde_json::from_str(&run(&commands[2]).1).unwrap();
    ensure(
        tensor["result"] == serde_json::json!([{"mult":1,"weight":[0]},{"mult":1,"weight":[2]}]),
        || format!("tensor: {}", tensor["result"]),
    )?;
    let verify: serde_json::Value = serde_json::from_str(&run(&commands[3]).1).unwrap();
    ensure(verify["pass"] == true && verify["radius"] == 10, || format!("verify report: {verify}"))?;

    let negatives: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["verify", "--check", "restr-cpt", "--model", &su2, "--radius", "8"], 3, "MissingWitness"),
        (vec!["quantise", "--model", &bare, "--radius", "8"], 3, "PropernessUncertified"),
        (vec!["verify", "--check", "no-such-check", "--model", &su2, "--radius", "8"], 4, "UnknownCheck"),
        (vec!["quantise", "--model", &broken, "--radius", "8"], 2, "Parse"),
        (vec!["quantise", "--model", &su2, "--radius", "-1"], 2, "Parse"),
    ];
    for (args, code, name) in negatives {
        let (got, _, err) = run(&args);
        ensure(got == code && err.lines().next() == Some(name), || {
            format!("{args:?}: exit {got}, stderr {err:?}; wanted {code} {name}")
        })?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 9] = [
        ("character engine matches the convolution oracle and the Weyl dimension", character_engine),
        ("restriction functoriality on T2 to the diagonal circle", restriction_functoriality),
        ("multiplicativity of formal quantisation", multiplicativity),
        ("quantisation commutes with reduction on induced spaces", quantisation_commutes_with_reduction),
        ("vector partitions agree with Sym enumeration", partition_oracles),
        ("module structure and compatibility with Dirac induction", module_structure),
        ("discrete series sign and Dirac restriction", discrete_series),
        ("shifting trick and semi-formal quantisation", shifting_trick),
        ("command-line contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.2?})", i + 1, started.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
