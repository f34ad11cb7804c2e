//! Acceptance criteria 1-10. Each criterion prints one [PASS]/[FAIL] line
//! with its wall-clock time; the test fails if any criterion fails or runs
//! over its time limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use dashu_int::IBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ringlab::cli::{builtin_zoo, sweep, ReportRecord};
use ringlab::proofs::{prop4_unit_sum, prop5_duo_witness, theorem1_transfer};
use ringlab::props::{probe_rings, replay};
use ringlab::reduce::{
    check_edr_small, diagonal_reduce, smith_form_integers_with, verify_certificate, SmithStrategy, EDR_SHAPES,
};
use ringlab::skew::{noncommutativity_witness, s_is_unit, skew_mul, SGrid, SkewPolynomial};
use ringlab::{
    check_property, make_ring, Element, FiniteRing, MatrixOverRing, PropertyId, RingDescriptor as D, Side,
    Verdict, DEFAULT_BUDGET,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn verdict(ring: &D, p: PropertyId) -> Verdict {
    check_property(ring, p, DEFAULT_BUDGET).unwrap().verdict
}

fn finite_zoo() -> Vec<D> {
    builtin_zoo().into_iter().filter(D::is_finite).collect()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn comaximal_pairs(fr: &FiniteRing) -> Vec<(usize, usize)> {
    let n = fr.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| fr.comaximal(a, b, Side::Right))
        .collect()
}

fn criterion_1() -> Outcome {
    let (code, out) = run_bin(&["check", "--ring", "Mat(2,Zn(2))", "--property", "unit-sr1", "--json"]);
    ensure!(code == 0, "exit {code}");
    let rec = ReportRecord::from_json(out.trim()).map_err(|e| e.to_string())?;
    ensure!(rec.verdict == "holds", "Mat(2,Zn(2)) unit-sr1: {}", rec.verdict);

    let (code, out) = run_bin(&["check", "--ring", "Zn(2)", "--property", "unit-sr1", "--json"]);
    ensure!(code == 0, "exit {code}");
    let rec = ReportRecord::from_json(out.trim()).map_err(|e| e.to_string())?;
    let w: Vec<&str> = rec.witness.iter().map(|w| w.value.as_str()).collect();
    ensure!(rec.verdict == "fails" && w == ["1", "1"], "Zn(2) unit-sr1: {} {:?}", rec.verdict, w);
    Ok("M2(Z2) holds; Z2 fails with witness (1,1)".into())
}

/// Built-in finite rings plus every Zn and Zn(2) x Zn(m) up to order 36.
fn transfer_rings() -> Vec<D> {
    let mut rings = finite_zoo();
    for n in 13..=36 {
        rings.push(D::Modular(n));
    }
    for m in 4..=18 {
        rings.push(D::Product(vec![D::Modular(2), D::Modular(m)]));
    }
    rings.push(D::Product(vec![D::Modular(3), D::Modular(3)]));
    rings.push(D::upper_triangular(2, D::Modular(3)));
    rings
}

fn criterion_2() -> Outcome {
    let mut tested = 0;
    let mut pairs_total = 0;
    for ring in transfer_rings() {
        if verdict(&ring, PropertyId::StableRange1) != Verdict::Holds
            || verdict(&ring, PropertyId::KazimirskyLeft) != Verdict::Holds
        {
            continue;
        }
        let r = make_ring(ring.clone()).unwrap();
        let fr = FiniteRing::of(&ring).unwrap();
        for (a, b) in comaximal_pairs(&fr) {
            let (a, b) = (fr.element(a), fr.element(b));
            let w = theorem1_transfer(&ring, a, b).map_err(|e| format!("{ring} ({a},{b}): {e}"))?;
            let s = r.add(&r.mul(&w.p, a), &r.mul(&w.q, b));
            ensure!(s == w.unit && r.is_unit(&s).unwrap(), "{ring} ({a},{b}): p·a+q·b = {s} is not a unit");
            pairs_total += 1;
        }
        tested += 1;
    }
    ensure!(tested >= 12, "only {tested} rings satisfied the hypotheses");
    Ok(format!("{tested} rings, {pairs_total} comaximal pairs, all transferred"))
}

fn criterion_3() -> Outcome {
    let mut tested = Vec::new();
    for ring in finite_zoo() {
        if verdict(&ring, PropertyId::StableRange1) == Verdict::Holds
            && verdict(&ring, PropertyId::KazimirskyLeft) == Verdict::Holds
        {
            let q = verdict(&ring, PropertyId::QuasiDuoLeft);
            ensure!(q == Verdict::Holds, "{ring}: quasi-duo-left {q}");
            tested.push(ring.to_string());
        }
    }
    let m = D::matrix(2, D::Modular(2));
    ensure!(verdict(&m, PropertyId::QuasiDuoLeft) == Verdict::Fails, "M2(Z2) should fail quasi-duo-left");
    ensure!(verdict(&m, PropertyId::KazimirskyLeft) == Verdict::Fails, "M2(Z2) should fail kazimirsky-left");
    Ok(format!("{} rings quasi-duo-left; M2(Z2) fails both", tested.len()))
}

fn criterion_4() -> Outcome {
    let mut tested = Vec::new();
    for ring in finite_zoo() {
        if verdict(&ring, PropertyId::UnitStableRange1) != Verdict::Holds {
            continue;
        }
        let r = make_ring(ring.clone()).unwrap();
        for a in r.enumerate_elements().unwrap().iter().filter(|a| !r.is_zero(a)) {
            let (u, w) = prop4_unit_sum(&ring, a).map_err(|e| format!("{ring} {a}: {e}"))?;
            ensure!(
                r.is_unit(&u).unwrap() && r.is_unit(&w).unwrap() && &r.add(&u, &w) == a,
                "{ring}: bad decomposition {a} = {u} + {w}"
            );
        }
        tested.push(ring);
    }
    for must in [D::Modular(3), D::matrix(2, D::Modular(2))] {
        ensure!(tested.contains(&must), "{must} did not pass unit-sr1");
    }
    Ok(format!("{} rings decomposed", tested.len()))
}

fn criterion_5() -> Outcome {
    let mut tested = 0;
    for ring in finite_zoo() {
        if verdict(&ring, PropertyId::UnitStableRange1) != Verdict::Holds
            || verdict(&ring, PropertyId::KazimirskyRight) != Verdict::Holds
        {
            continue;
        }
        ensure!(verdict(&ring, PropertyId::DuoLeft) == Verdict::Holds, "{ring}: duo-left");
        ensure!(verdict(&ring, PropertyId::DuoRight) == Verdict::Holds, "{ring}: duo-right");
        let r = make_ring(ring.clone()).unwrap();
        let all = r.enumerate_elements().unwrap();
        for a in all.iter().filter(|a| !r.is_zero(a)) {
            for b in &all {
                let w = prop5_duo_witness(&ring, a, b).map_err(|e| format!("{ring} ({a},{b}): {e}"))?;
                ensure!(r.mul(a, b) == r.mul(b, &w.z), "{ring}: {a}·{b} != {b}·{}", w.z);
            }
        }
        tested += 1;
    }
    let m = D::matrix(2, D::Modular(2));
    ensure!(verdict(&m, PropertyId::KazimirskyRight) == Verdict::Fails, "M2(Z2) should fail kazimirsky-right");
    ensure!(tested > 0, "no ring satisfied unit-sr1 and kazimirsky-right");
    Ok(format!("{tested} rings duo with verified z for every pair; M2(Z2) fails kazimirsky-right"))
}

fn all_matrices(fr: &FiniteRing, rows: usize, cols: usize) -> Vec<MatrixOverRing> {
    let n = fr.len();
    let k = rows * cols;
    (0..n.pow(k as u32))
        .map(|mut code| {
            let mut entries = vec![Element::Residue(0); k];
            for slot in entries.iter_mut().rev() {
                *slot = fr.element(code % n).clone();
                code /= n;
            }
            MatrixOverRing::new(fr.descriptor().clone(), rows, cols, entries).unwrap()
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut certs = 0;
    for n in [2, 3, 4, 6] {
        let ring = D::Modular(n);
        let fr = FiniteRing::of(&ring).unwrap();
        for (rows, cols) in EDR_SHAPES {
            for a in all_matrices(&fr, rows, cols) {
                let cert = diagonal_reduce(&ring, &a).map_err(|e| format!("{ring} {a}: {e}"))?;
                let v = verify_certificate(&a, &cert).map_err(|e| e.to_string())?;
                ensure!(v.ok(), "{ring} {a}: certificate fails '{}'", v.first_failure().unwrap());
                certs += 1;
            }
        }
        let v = check_edr_small(&ring, 2, 2).map_err(|e| e.to_string())?;
        ensure!(v.verdict == Verdict::Holds, "{ring}: edr-small {}", v.verdict);
    }
    let mut commutative = 0;
    for ring in finite_zoo() {
        if FiniteRing::of(&ring).unwrap().is_commutative() {
            let v = verdict(&ring, PropertyId::EdrSmall);
            ensure!(v == Verdict::Holds, "{ring}: edr-small {v}");
            commutative += 1;
        }
    }
    Ok(format!("{certs} certificates verified; {commutative} commutative zoo rings pass edr-small"))
}

fn int_det(m: &[IBig], k: usize) -> IBig {
    if k == 1 {
        return m[0].clone();
    }
    let mut det = IBig::ZERO;
    for j in 0..k {
        let minor: Vec<IBig> = (1..k)
            .flat_map(|r| (0..k).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| m[r * k + c].clone())
            .collect();
        let term = &m[j] * int_det(&minor, k - 1);
        det = if j % 2 == 0 { det + term } else { det - term };
    }
    det
}

fn ints(m: &MatrixOverRing) -> Vec<IBig> {
    m.entries().iter().map(|e| e.as_integer().unwrap().clone()).collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..50 {
        let (rows, cols) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let entries = (0..rows * cols).map(|_| Element::int(rng.random_range(-20..=20))).collect();
        let a = MatrixOverRing::new(D::Integer, rows, cols, entries).unwrap();
        let first = smith_form_integers_with(&a, SmithStrategy::MinimalPivot).map_err(|e| e.to_string())?;
        let second = smith_form_integers_with(&a, SmithStrategy::BezoutSteps).map_err(|e| e.to_string())?;
        for cert in [&first, &second] {
            ensure!(cert.p.mul(&a).unwrap().mul(&cert.q).unwrap() == cert.d, "trial {trial}: PAQ != D");
            for (m, k) in [(&cert.p, rows), (&cert.q, cols)] {
                let det = int_det(&ints(m), k);
                ensure!(det == IBig::ONE || det == IBig::NEG_ONE, "trial {trial}: det {det}");
            }
            let d = ints(&MatrixOverRing::new(D::Integer, 1, cert.diagonal.len(), cert.diagonal.clone()).unwrap());
            ensure!(d.iter().all(|x| *x >= IBig::ZERO), "trial {trial}: negative invariant");
            for w in d.windows(2) {
                let divides = if w[0] == IBig::ZERO { w[1] == IBig::ZERO } else { &w[1] % &w[0] == IBig::ZERO };
                ensure!(divides, "trial {trial}: {} does not divide {}", w[0], w[1]);
            }
            ensure!(verify_certificate(&a, cert).unwrap().ok(), "trial {trial}: certificate rejected");
        }
        ensure!(first.d == second.d, "trial {trial}: elimination orders disagree on {a}");
    }
    Ok("50 matrices; both elimination orders agree".into())
}

fn criterion_8() -> Outcome {
    let grid = SGrid::new(3, 2);
    let (one, minus_one) = (SkewPolynomial::one(), SkewPolynomial::one().neg());
    let mut units = 0;
    for f in grid.iter() {
        let is_unit = s_is_unit(&f).map_err(|e| e.to_string())?;
        ensure!(is_unit == (f == one || f == minus_one), "s_is_unit({f}) = {is_unit}");
        units += usize::from(is_unit);
    }
    ensure!(units == 2, "{units} units on the grid");

    let (x, w) = noncommutativity_witness();
    let (xw, wx) = (skew_mul(&x, &w), skew_mul(&w, &x));
    ensure!(xw == wx.neg() && xw != wx, "x·w = {xw}, w·x = {wx}");

    let s = D::skew_subring(3, 2);
    let v = check_property(&s, PropertyId::UnitCentral, grid.len()).map_err(|e| e.to_string())?;
    ensure!(v.verdict == Verdict::Holds, "unit-central on S: {} ({:?})", v.verdict, v.note);
    ensure!(v.budget_used == grid.len(), "grid only partly scanned: {}", v.budget_used);
    let c = check_property(&s, PropertyId::DuoLeft, DEFAULT_BUDGET).unwrap();
    ensure!(c.verdict != Verdict::Holds, "S must not be reported duo");
    Ok(format!("{} grid elements; units exactly 1, -1; unit-central holds; x·w = -w·x", grid.len()))
}

fn criterion_9() -> Outcome {
    let (code, out) = run_bin(&["probe", "unit-central", "--max-order", "16"]);
    ensure!(code == 0, "exit {code}");
    let rings = probe_rings(16);
    let lines: Vec<&str> = out.lines().collect();
    ensure!(lines.len() == rings.len() + 1, "{} lines for {} rings", lines.len(), rings.len());
    for (line, ring) in lines.iter().zip(&rings) {
        let name = ring.to_string();
        ensure!(
            line.starts_with(&format!("{name} ")) && line.contains("unit-central=") && line.contains("sr1=") && line.contains("commutative="),
            "bad probe line '{line}'"
        );
    }
    let summary = lines.last().unwrap();
    ensure!(summary.ends_with("counterexamples: 0"), "summary '{summary}'");
    Ok(format!("{} rings probed, 0 counterexamples", rings.len()))
}

fn criterion_10() -> Outcome {
    let zoo = builtin_zoo();
    let mut buf = Vec::new();
    sweep(&zoo, &PropertyId::ALL, DEFAULT_BUDGET, 1, &mut buf).map_err(|e| e.to_string())?;
    let text = String::from_utf8(buf).unwrap();
    let (mut fails, mut replayed) = (0, 0);
    for line in text.lines() {
        let rec = ReportRecord::from_json(line).map_err(|e| e.to_string())?;
        let v = rec.to_verdict().map_err(|e| format!("{line}: {e}"))?;
        ensure!(replay(&v).map_err(|e| format!("{line}: {e}"))?, "witness does not replay: {line}");
        replayed += 1;
        fails += usize::from(rec.verdict == "fails");
    }
    ensure!(replayed == zoo.len() * PropertyId::ALL.len(), "{replayed} records");
    ensure!(fails > 0, "sweep produced no counterexamples to replay");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zoo.jsonl");
    std::fs::write(&path, &text).unwrap();
    let (code, out) = run_bin(&["replay", "--report", path.to_str().unwrap()]);
    ensure!(code == 0, "replay exit {code}: {out}");
    Ok(format!("{replayed} records, {fails} with witnesses, 0 replay failures"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("claim reproduction (unit-sr1 on M2(Z2) and Z2)", criterion_1, 5),
        ("comaximal pair transfer suite", criterion_2, 60),
        ("quasi-duo suite", criterion_3, 60),
        ("sum of two units suite", criterion_4, 10),
        ("duo witness suite", criterion_5, 30),
        ("edr-small consistency", criterion_6, 120),
        ("Smith oracle", criterion_7, 5),
        ("example ring S", criterion_8, 30),
        ("open-problem probe", criterion_9, 60),
        ("witness replay over the zoo", criterion_10, 600),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {:.1}s, limit {limit}s", took.as_secs_f64()))
            }
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("[{tag}] criterion {}: {name} ({:.2}s): {detail}", i + 1, took.as_secs_f64());
        if result.is_err() {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
