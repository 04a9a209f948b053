//! One PASS/FAIL line per acceptance criterion, written straight to stdout so
//! the lines survive test-output capture.
//!
//! Criterion 3 asks for a finite diagnostic locus of 5 points on Example 3.
//! Every form of that example is a cubic in `X1` and `X2 + X3`, so its image is
//! a curve, every fiber is 1-dimensional and no finite locus exists. That part
//! is reported as FAIL and listed in `KNOWN_FAILURES`; the test fails if it
//! ever starts passing, or if anything else fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use fibercount::bounds::*;
use fibercount::experiment::random_parameterization;
use fibercount::fibers::*;
use fibercount::hilbert::*;
use fibercount::*;
use serde_json::Value;

type Check = std::result::Result<String, String>;
type Res<T> = std::result::Result<T, String>;

const KNOWN_FAILURES: &[&str] = &["3b"];

fn say(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", line);
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Res<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Res<()> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn input(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name).to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fibercount"))
        .args(args)
        .env_remove("FIBERCOUNT_SEED")
        .output()
        .expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

fn pairs(list: Vec<(&str, String)>) -> BTreeSet<(String, String)> {
    list.into_iter().map(|(p, h)| (p.to_string(), h)).collect()
}

fn locus_pairs<F: Field>(field: &F, l: &OneDimLocus<F>) -> BTreeSet<(String, String)> {
    l.entries.iter().map(|e| (e.point.format(field), e.h.to_string())).collect()
}

fn json_pairs(locus: &Value) -> BTreeSet<(String, String)> {
    locus["points"]
        .as_array()
        .map(|ps| {
            ps.iter()
                .map(|p| (p["point"].as_str().unwrap_or("").to_string(), p["h"].as_str().unwrap_or("").to_string()))
                .collect()
        })
        .unwrap_or_default()
}

fn criterion1() -> Check {
    let start = Instant::now();
    let (code, v) = cli(&["--no-timings", "bound", "--smax", "2", &input("example1.txt")]);
    ensure(code == Some(0), || format!("bound exit code {:?}", code))?;
    ensure(v["prop1"]["s"] == 2 && v["prop1"]["nu"] == 8, || format!("prop1 = {}", v["prop1"]))?;
    let (code, v) = cli(&["--no-timings", "fibers", &input("example1_printed.txt")]);
    ensure(code == Some(0), || format!("fibers exit code {:?}", code))?;
    let got = json_pairs(&v["locus"]);
    ensure(got == pairs(example1_list()), || format!("locus {:?}", got))?;
    ensure(v["sum_deg_h"] == 8 && v["locus"]["complete"] == true, || format!("sum {}", v["sum_deg_h"]))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("indeg((I^2)^sat) = 8, 4 points, sum 8, {:.2}s", start.elapsed().as_secs_f64()))
}

fn criterion2() -> Check {
    let start = Instant::now();
    let q = Rationals;
    let (param, _) = example2_printed(&q);
    let rep = param.base_locus();
    ensure(rep.hypotheses_pass, || format!("hypotheses fail: {:?}", rep.failure_reason()))?;
    ensure(
        rep.is_saturated == Some(true) && rep.is_lci == Some(true) && rep.deg_p == Some(6),
        || format!("{:?}", rep),
    )?;
    let l = one_dim_locus(&param, 0, Hypotheses::Enforce).map_err(|e| e.to_string())?;
    ensure(locus_pairs(&q, &l) == pairs(example2_list()), || format!("locus {:?}", locus_pairs(&q, &l)))?;
    let bound = theorem_bound(3).map_err(|e| e.to_string())?;
    ensure(sum_fiber_degrees(&l) == (4, false) && bound == 4, || format!("sum {:?}", sum_fiber_degrees(&l)))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("4 points, sum 4 = bound, {:.2}s", start.elapsed().as_secs_f64()))
}

fn criterion3a() -> Check {
    let (code, v) = cli(&["--no-timings", "analyze", &input("example3.txt")]);
    ensure(v["hypotheses"]["is_lci"] == false, || format!("is_lci = {}", v["hypotheses"]["is_lci"]))?;
    ensure(code == Some(2), || format!("exit code {:?}", code))?;
    Ok("is_lci = false, exit code 2".into())
}

fn criterion3b() -> Check {
    let param = catalog::example3(&Rationals).map_err(|e| e.to_string())?;
    match one_dim_locus(&param, 0, Hypotheses::Override) {
        Ok(l) => {
            let s = sum_fiber_degrees(&l);
            ensure(l.entries.len() == 5 && s == (5, false), || format!("{} points, sum {:?}", l.entries.len(), s))?;
            Ok("5 points, sum 5 > 4".into())
        }
        Err(e) => Err(format!("no finite diagnostic locus: {}", e)),
    }
}

fn criterion4() -> Check {
    let q = Rationals;
    let mut notes = Vec::new();
    for d in 4..=7u32 {
        let start = Instant::now();
        let (param, _) = example4_printed(&q, d);
        let rep = param.base_locus();
        ensure(rep.hypotheses_pass, || format!("d = {}: {:?}", d, rep.failure_reason()))?;
        ensure(rep.deg_p == Some((d * d - 3 * d + 7) as u64), || format!("d = {}: degP {:?}", d, rep.deg_p))?;
        let l = one_dim_locus(&param, d as u64, Hypotheses::Enforce).map_err(|e| e.to_string())?;
        let want = pairs(example4_list(d));
        ensure(locus_pairs(&q, &l) == want, || format!("d = {}: locus {:?}", d, locus_pairs(&q, &l)))?;
        let count = if (d - 3) % 2 == 1 { 6 } else { 5 };
        ensure(l.entries.len() == count, || format!("d = {}: {} points", d, l.entries.len()))?;
        let bound = (d / 2) * d - 1;
        ensure(
            sum_fiber_degrees(&l) == (d + 2, false) && d + 2 <= bound,
            || format!("d = {}: sum {:?}, bound {}", d, sum_fiber_degrees(&l), bound),
        )?;
        within(start, Duration::from_secs(120))?;
        notes.push(format!("d={} {:.2}s", d, start.elapsed().as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn random_instances() -> Vec<Parameterization<PrimeField>> {
    let mut out = Vec::new();
    for p in [101u32, 32003] {
        for d in 3..=5u32 {
            let mut found = 0;
            for s in 0..60u64 {
                if let Ok(param) = random_parameterization(p, d, 7000 + 100 * d as u64 + s) {
                    out.push(param);
                    found += 1;
                    if found == 9 {
                        break;
                    }
                }
            }
        }
    }
    out
}

fn invariants_hold<F: Field>(param: &Parameterization<F>) -> Res<()> {
    let d = param.degree();
    let a = nml_invariants(param.ideal(), d, NmlRoute::ClosedForm).map_err(|e| e.to_string())?;
    let b = nml_invariants(param.ideal(), d, NmlRoute::Direct).map_err(|e| e.to_string())?;
    ensure((a.n, a.m, a.l) == (b.n, b.m, b.l) && a.n - a.m + a.l == 0, || format!("d = {}: {:?} vs {:?}", d, a, b))?;
    let deg_p = param.base_locus().deg_p.ok_or("no degP")? as u32;
    ensure(d * (d + 1) / 2 <= deg_p && deg_p <= d * d - 2 * d + 3, || format!("d = {}: degP {}", d, deg_p))?;
    let mu = 2 * d as i64 - 2;
    let (x, y) = (ideal_dimension_in_degree(param.ideal(), mu), ideal_dimension_in_degree(param.saturation(), mu));
    ensure(x == y, || format!("d = {}: dim I_(2d-2) {} vs {}", d, x, y))
}

fn criterion5(randoms: &[Parameterization<PrimeField>]) -> Check {
    let q = Rationals;
    let mut examples = vec![catalog::example1(&q), catalog::example2(&q)];
    examples.extend((4..=7).map(|d| catalog::example4(&q, d)));
    for e in examples {
        invariants_hold(&e.map_err(|e| e.to_string())?)?;
    }
    ensure(randoms.len() >= 50, || format!("only {} random instances accepted", randoms.len()))?;
    for p in randoms {
        invariants_hold(p)?;
    }
    Ok(format!("examples and {} random instances", randoms.len()))
}

fn criterion6() -> Check {
    let q = Rationals;
    let e1 = catalog::example1(&q).map_err(|e| e.to_string())?;
    let cases = [
        (e1.clone(), 1),
        (e1, 2),
        (catalog::example2(&q).map_err(|e| e.to_string())?, 1),
        (catalog::example4(&q, 4).map_err(|e| e.to_string())?, 1),
    ];
    let mut vals = Vec::new();
    for (param, s) in &cases {
        let r = prop17_check(param, *s).map_err(|e| e.to_string())?;
        ensure(r.lhs == r.rhs && r.lhs >= 0, || format!("s = {}: {} vs {}", s, r.lhs, r.rhs))?;
        vals.push(r.lhs);
    }
    ensure(vals[0] == 3, || format!("Example 1, s = 1 gives {}", vals[0]))?;
    Ok(format!("values {:?}", vals))
}

/// Points of `P^3(K)` in normalized form.
fn projective_space(ext: &ExtensionField) -> Vec<[u32; 4]> {
    let elems = ext.elements().expect("finite");
    let one = ext.one();
    let mut out = Vec::new();
    for pivot in 0..4 {
        let free = 3 - pivot;
        let n = elems.len().pow(free as u32);
        for mut idx in 0..n {
            let mut c = [ext.zero(); 4];
            c[pivot] = one;
            for k in (pivot + 1)..4 {
                c[k] = elems[idx % elems.len()];
                idx /= elems.len();
            }
            out.push(c);
        }
    }
    out
}

fn criterion7() -> Check {
    let mut instances = Vec::new();
    for (p, d) in [(5u32, 3u32), (7, 3), (5, 4), (7, 4)] {
        let found: Vec<_> = (0..80u64).filter_map(|s| random_parameterization(p, d, 500 + 10 * d as u64 + s).ok()).take(6).collect();
        instances.extend(found);
    }
    ensure(instances.len() >= 20, || format!("only {} instances accepted", instances.len()))?;
    // random draws rarely have non-rational points in the locus; this one has a conjugate pair
    let text = std::fs::read_to_string(input("conjugate_lines_mod7.txt")).map_err(|e| e.to_string())?;
    let spec = fibercount::input::parse_input(&text).map_err(|e| e.to_string())?;
    instances.push(spec.prime_parameterization().map_err(|e| e.to_string())?);
    let mut with_residual = 0;
    let mut predicted_total = 0;
    for param in &instances {
        let p = param.field().modulus() as u64;
        let sym = one_dim_locus(param, 1, Hypotheses::Enforce).map_err(|e| e.to_string())?;
        let e1 = ExtensionField::new(p, 1).map_err(|e| e.to_string())?;
        let scan1 = exhaustive_scan(param, 1).map_err(|e| e.to_string())?;
        ensure(locus_pairs(param.field(), &sym) == locus_pairs(&e1, &scan1), || {
            format!("{}: {:?} vs {:?}", param.field().name(), locus_pairs(param.field(), &sym), locus_pairs(&e1, &scan1))
        })?;

        // over F_{p^2}: rational points plus the zeros of the residual ideal
        let ext = ExtensionField::new(p, 2).map_err(|e| e.to_string())?;
        let embed_point = |pt: &ProjectivePoint<PrimeField>| {
            ProjectivePoint::new(&ext, pt.coords().map(|c| ext.embed(c))).unwrap().format(&ext)
        };
        let mut expected: BTreeSet<String> = sym.entries.iter().map(|e| embed_point(&e.point)).collect();
        if let Some(res) = &sym.residual {
            with_residual += 1;
            let lring = lambda_ring(&ext);
            let gens: Vec<_> = res.generators().iter().map(|g| g.map_coeffs(&lring, |c| ext.embed(*c))).collect();
            for c in projective_space(&ext) {
                if gens.iter().all(|g| ext.is_zero(&g.evaluate(&c))) {
                    expected.insert(ProjectivePoint::new(&ext, c).unwrap().format(&ext));
                    predicted_total += 1;
                }
            }
        }
        let scan2 = exhaustive_scan(param, 2).map_err(|e| e.to_string())?;
        let found: BTreeSet<String> = scan2.entries.iter().map(|e| e.point.format(&ext)).collect();
        ensure(expected.is_subset(&found), || format!("{}: predicted {:?}, scanned {:?}", param.field().name(), expected, found))?;
        ensure(found == expected, || format!("{}: scan found extra points {:?}", param.field().name(), found.difference(&expected).collect::<Vec<_>>()))?;
    }
    ensure(predicted_total >= 2, || format!("only {} residual points over F_(p^2)", predicted_total))?;
    Ok(format!(
        "{} instances, {} with a residual, {} residual points over F_(p^2) all found by the scan",
        instances.len(),
        with_residual,
        predicted_total
    ))
}

fn criterion8(randoms: &[Parameterization<PrimeField>]) -> Check {
    let q = Rationals;
    let l = liaison_check(&catalog::example2(&q).map_err(|e| e.to_string())?, 0).map_err(|e| e.to_string())?;
    ensure(l.deg_q == 3 && l.hilbert.starts_with(&[1, 3, 3, 3]), || format!("Example 2: {:?}", l))?;
    let l = liaison_check(&catalog::example4(&q, 4).map_err(|e| e.to_string())?, 0).map_err(|e| e.to_string())?;
    ensure(l.deg_q == 5, || format!("Example 4: degQ = {}", l.deg_q))?;
    for (i, p) in randoms.iter().enumerate() {
        let l = liaison_check(p, i as u64).map_err(|e| e.to_string())?;
        ensure(l.all_hold(), || format!("instance {} ({}, d = {}): {:?}", i, p.field().name(), p.degree(), l.identities))?;
    }
    Ok(format!("examples and {} random instances", randoms.len()))
}

fn criterion9() -> Check {
    let q = Rationals;
    let param = catalog::monomial_cubics(&q).map_err(|e| e.to_string())?;
    let c = prop1_certificate(&param, 3).map_err(|e| e.to_string())?.ok_or("no certificate")?;
    ensure(c.kind == BoundKind::Prop1 { s: 1, nu: 2 }, || format!("{:?}", c.kind))?;
    let r = param.ring();
    let expected = Ideal::new(r, vec![poly(r, "X1^2"), poly(r, "X2^2")]).map_err(|e| e.to_string())?;
    ensure(param.saturation().same_as(&expected), || "saturation differs from (X1^2, X2^2)".into())?;
    Ok("certificate (s = 1, nu = 2), saturation (X1^2, X2^2)".into())
}

#[test]
fn acceptance() {
    let randoms = random_instances();
    let results: Vec<(&str, Check)> = vec![
        ("1", criterion1()),
        ("2", criterion2()),
        ("3a", criterion3a()),
        ("3b", criterion3b()),
        ("4", criterion4()),
        ("5", criterion5(&randoms)),
        ("6", criterion6()),
        ("7", criterion7()),
        ("8", criterion8(&randoms)),
        ("9", criterion9()),
    ];
    let mut unexpected = Vec::new();
    for (id, r) in &results {
        let known = KNOWN_FAILURES.contains(id);
        match r {
            Ok(msg) => say(&format!("criterion {:<3} PASS  {}", id, msg)),
            Err(msg) if known => say(&format!("criterion {:<3} FAIL  {} (known: the image is a curve)", id, msg)),
            Err(msg) => say(&format!("criterion {:<3} FAIL  {}", id, msg)),
        }
        if r.is_ok() == known {
            unexpected.push(*id);
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcome for criteria {:?}", unexpected);
}
