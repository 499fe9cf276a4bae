//! The ten acceptance criteria, each with its time budget. Prints one line per
//! criterion and exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::oracle::{oracle_hc, oracle_hoch};
use common::*;
use dgcoh::comodule::{Bicomodule, DGComodule, Side};
use dgcoh::cyclic::{check_operator_identities, h_cohomology, hc, hoch, hoch_bicomodule, sbi};
use dgcoh::fixture::Fixture;
use dgcoh::fixtures::*;
use dgcoh::invariance::{
    check_quasi_iso_invariance, verify_cotilting, CotiltingCertificate, COND_ADD, COND_COEND,
};
use dgcoh::resolution::StandardResolution;
use dgcoh::{DGCoalgebra, Field};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dims(m: std::collections::BTreeMap<i32, usize>) -> Vec<usize> {
    m.into_values().collect()
}

const REQUIRED: [&str; 5] = ["T^{n+1} = id", "N b′ = b N", "(1−T) N = 0", "N (1−T) = 0", "(1−T) b = b′ (1−T)"];

fn operator_suite() -> Outcome {
    let mut count = 0;
    for f in [Field::Rational, Field::Prime(5)] {
        let mut g = rng(if f == Field::Rational { 0x5eed } else { 0x5eed5 });
        for _ in 0..50 {
            let c = random_coalgebra(&mut g, f, 4);
            ensure!(c.validate().is_valid(), "generator produced an invalid coalgebra");
            ensure!(c.basis().iter().all(|b| (0..=2).contains(&b.degree)), "degree out of range");
            for n in 0..=4 {
                let checks = check_operator_identities(&c, n).map_err(err)?;
                for name in REQUIRED.iter().chain(["d T = T d"].iter()) {
                    ensure!(checks.iter().any(|x| x.identity == *name), "{name} not checked");
                }
                if let Some(bad) = checks.iter().find(|x| !x.holds) {
                    return Err(format!("{} fails at arity {n} over {f}", bad.identity));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} coalgebras, arities 0..4"))
}

fn bundled_coalgebras() -> Result<Vec<(String, DGCoalgebra)>, String> {
    let mut out = Vec::new();
    for path in fixture_files() {
        let fx = Fixture::load(&path, None).map_err(err)?;
        let stem = path.file_stem().unwrap().to_string_lossy().to_string();
        for (name, c) in fx.coalgebras {
            if c.validate().is_valid() && !out.iter().any(|(_, d): &(String, DGCoalgebra)| *d == c) {
                out.push((format!("{stem}:{name}"), c));
            }
        }
    }
    Ok(out)
}

fn resolution_suite() -> Outcome {
    let cs = bundled_coalgebras()?;
    for (name, c) in &cs {
        let m = DGComodule::regular(c, Side::Left);
        for p in 1..=4 {
            let res = StandardResolution::new(&m, p).map_err(err)?;
            res.complex().check_square_zero().map_err(|e| format!("{name}, p = {p}: {e}"))?;
            let aug = StandardResolution::augmented(&m, p).map_err(err)?;
            aug.complex().check_square_zero().map_err(|e| format!("{name}, p = {p}: {e}"))?;
            aug.check_contraction().map_err(|e| format!("{name}, p = {p}: {e}"))?;
        }
    }
    Ok(format!("{} coalgebras, p = 1..4", cs.len()))
}

fn trivial_values() -> Outcome {
    let k = trivial(Field::Rational);
    let h = dims(hoch(&k, 4).map_err(err)?);
    let c = dims(hc(&k, 4, None).map_err(err)?);
    ensure!(h == vec![1, 0, 0, 0, 0] && h == oracle_hoch(1, 4), "Hoch(k) = {h:?}");
    ensure!(c == vec![1, 0, 1, 0, 1] && c == oracle_hc(4), "HC(k) = {c:?}");
    Ok(format!("Hoch {h:?}, HC {c:?}"))
}

fn coseparable() -> Outcome {
    for n in 1..=3 {
        let h = dims(hoch(&group_likes(Field::Rational, n), 3).map_err(err)?);
        ensure!(h == vec![n, 0, 0, 0] && h == oracle_hoch(n, 3), "Hoch(k^{n}) = {h:?}");
    }
    Ok("Hoch(k^n) = (n,0,0,0) for n = 1..3".into())
}

fn morita_takeuchi() -> Outcome {
    let f = Field::Rational;
    let (k, m2) = (trivial(f), matrix_coalgebra(f, 2));
    let hk = dims(hoch(&k, 3).map_err(err)?);
    let hm = dims(hoch(&m2, 3).map_err(err)?);
    let ek = dims(h_cohomology(&Bicomodule::regular(&k), 3, None).map_err(err)?);
    let em = dims(h_cohomology(&Bicomodule::regular(&m2), 3, None).map_err(err)?);
    ensure!(hk == hm, "Hoch: k {hk:?}, M₂ {hm:?}");
    ensure!(ek == em, "H: k {ek:?}, M₂ {em:?}");
    Ok(format!("Hoch {hm:?}, H {em:?}"))
}

fn two_routes() -> Outcome {
    let cs = bundled_coalgebras()?;
    for (name, c) in &cs {
        let a = hoch(c, 3).map_err(err)?;
        let b = hoch_bicomodule(&Bicomodule::regular(c), 3, None).map_err(err)?;
        ensure!(a == b, "{name}: {a:?} vs {b:?}");
    }
    Ok(format!("{} coalgebras, degrees 0..3", cs.len()))
}

fn sbi_exactness() -> Outcome {
    let f = Field::Rational;
    let mut nodes = 0;
    for (name, c) in [("k", trivial(f)), ("k²", group_likes(f, 2)), ("divided powers", divided_powers(f, 2))] {
        let s = sbi(&c, 4).map_err(err)?;
        if let Some(bad) = s.report.nodes.iter().find(|n| !n.exact) {
            return Err(format!("{name}: not exact at {}", bad.group));
        }
        ensure!(s.report.exact && s.report.quotient_matches_hoch, "{name}: report not exact");
        nodes += s.report.nodes.len();
    }
    Ok(format!("{nodes} nodes exact"))
}

fn qiso_invariance() -> Outcome {
    let f = Field::Rational;
    let good = check_quasi_iso_invariance(&extension_inclusion(f, &acyclic_extension(f)).map_err(err)?, 3).map_err(err)?;
    ensure!(good.passed, "acyclic extension fails at {:?}", good.failed_stage);
    let theories: Vec<&str> = good.tables.iter().map(|t| t.theory.as_str()).collect();
    ensure!(theories == ["Hoch", "H", "HC"], "tables {theories:?}");
    for t in &good.tables {
        ensure!(t.equal && t.left.len() == 4, "{} differs", t.theory);
    }
    let bad = check_quasi_iso_invariance(&extension_inclusion(f, &sabotaged_extension(f)).map_err(err)?, 3).map_err(err)?;
    ensure!(!bad.passed && bad.failed_stage.as_deref() == Some("quasi-isomorphism"), "sabotaged: {:?}", bad.failed_stage);
    Ok("acyclic passes; sabotaged stops at quasi-isomorphism".into())
}

fn expect_failure(cert: &CotiltingCertificate, cond: &str, what: &str) -> Result<(), String> {
    let r = verify_cotilting(cert).map_err(err)?;
    ensure!(!r.passed && r.failed_stage.as_deref() == Some(cond), "{what}: failed at {:?}", r.failed_stage);
    Ok(())
}

fn mutate(cert: &CotiltingCertificate, label: &str) -> Result<(), String> {
    let f = cert.c.field();
    let mut broken = cert.clone();
    broken.coend_c[0] = broken.coend_c[0].scale(&f.int(2));
    expect_failure(&broken, COND_COEND, &format!("{label} broken counit witness"))?;
    let mut removed = cert.clone();
    removed.add.maps[0] = None;
    expect_failure(&removed, COND_ADD, &format!("{label} removed map"))?;
    let r = verify_cotilting(&removed).map_err(err)?;
    let (_, check) = r.first_failure().ok_or("no failing check")?;
    ensure!(check.locus.as_deref().is_some_and(|l| l.starts_with("node")), "removed map not located at a node");
    let mut flipped = cert.clone();
    let m = flipped.add.maps[0].as_mut().ok_or("no first map")?;
    let x = m.get(0, 0).clone();
    ensure!(!x.is_zero(), "{label}: entry (0,0) of the first map is zero");
    m.set(0, 0, -x);
    expect_failure(&flipped, COND_ADD, &format!("{label} flipped sign"))?;
    Ok(())
}

fn cotilting() -> Outcome {
    let f = Field::Rational;
    let mut certs = Vec::new();
    for (name, c) in [("k", trivial(f)), ("k²", group_likes(f, 2)), ("divided powers", divided_powers(f, 2))] {
        certs.push((format!("identity over {name}"), identity_certificate(&c).map_err(err)?));
    }
    certs.push(("Morita–Takeuchi".into(), morita_takeuchi_certificate(f).map_err(err)?));
    for (name, cert) in &mut certs {
        cert.ext_bound = 3;
        let r = verify_cotilting(cert).map_err(err)?;
        ensure!(r.passed, "{name} fails at {:?}", r.failed_stage);
    }
    mutate(&certs[2].1, "identity")?;
    mutate(&certs[3].1, "Morita–Takeuchi")?;
    Ok(format!("{} certificates pass at n_max = 3; 6 mutations fail where expected", certs.len()))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_dgcoh");
    let mut n = 0;
    for path in fixture_files() {
        for args in invocations(&path) {
            let once = || Command::new(bin).args(&args[1..]).output().map_err(err);
            let (a, b) = (once()?, once()?);
            ensure!(a.stdout == b.stdout && a.status == b.status, "{args:?} differs between runs");
            ensure!(serde_json::from_slice::<serde_json::Value>(&a.stdout).is_ok(), "{args:?} is not JSON");
            n += 1;
        }
    }
    Ok(format!("{n} invocations byte-identical"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("operator identities", 10, operator_suite),
        ("resolution identities", 5, resolution_suite),
        ("trivial coalgebra", 1, trivial_values),
        ("coseparability", 5, coseparable),
        ("Morita–Takeuchi dimensions", 30, morita_takeuchi),
        ("two-route agreement", 60, two_routes),
        ("SBI exactness", 60, sbi_exactness),
        ("quasi-isomorphism invariance", 60, qiso_invariance),
        ("cotilting certificates", 60, cotilting),
        ("deterministic reports", 120, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let outcome = match outcome {
            Ok(_) if t > Duration::from_secs(*budget) => Err(format!("over the {budget} s budget")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => {
                failed += 1;
                ("FAIL", e.clone())
            }
        };
        println!("[{tag}] {:>2} {name:<29} {:>7.2} s  {detail}", i + 1, t.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
