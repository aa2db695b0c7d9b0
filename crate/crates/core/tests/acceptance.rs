//! Acceptance gate: eight end-to-end checks, each printing one PASS/FAIL
//! line (visible with `--nocapture`) and enforcing its runtime budget.
//! Every expected value is produced by an independent oracle: closed-form
//! case lists, brute-force dominance search, or frozen golden outputs.

use std::process::Command;
use std::time::{Duration, Instant};

use thetacover::charsum::LocalFieldSpec;
use thetacover::cyclotomic::CycScalar;
use thetacover::partitions::{
    dimension_equation_check, dominance_compare, sp_collapse, Dominance, Partition,
};
use thetacover::rat::{rat, ratio};
use thetacover::suites;
use thetacover::whittaker::{beta_crosscheck, beta_exponent, exponent_pipeline};

fn finish(idx: usize, label: &str, pass: bool, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {idx} ({label}): {verdict} in {elapsed:?}");
    assert!(pass, "criterion {idx} ({label}) failed");
    assert!(
        elapsed <= budget,
        "criterion {idx} ({label}) exceeded its {budget:?} budget: {elapsed:?}"
    );
}

// --- criterion 1: orbit table against the closed-form case list ------------

fn case_list_orbit(n: u64, r: u64) -> Partition {
    let parts = if r == n {
        vec![n, n]
    } else {
        let i = (2 * n - 1 - r) / 2;
        vec![2 * n - 2 * i - 2, 2 * i + 2]
    };
    Partition::new(parts).expect("case-list partition")
}

#[test]
fn criterion_1_orbit_table() {
    let start = Instant::now();
    let mut pass = true;
    for n in 1..=6u64 {
        for r in (1..2 * n).step_by(2) {
            if r < n {
                continue;
            }
            let report = dimension_equation_check(n, r).expect("orbit report");
            let expected_gk = rat((n * n - n) as i64) + ratio((r - 1) as i64, 2);
            pass &= report.orbit == case_list_orbit(n, r);
            pass &= report.satisfied && report.gk_dim == expected_gk;
        }
    }
    finish(1, "orbit table", pass, start, Duration::from_secs(1));
}

// --- criterion 2: collapse against brute-force dominance search ------------

fn partitions_of(total: u64) -> Vec<Partition> {
    fn go(left: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition::new(prefix.clone()).expect("enumerated partition"));
            return;
        }
        let mut part = max.min(left);
        while part >= 1 {
            prefix.push(part);
            go(left - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// Greatest symplectic partition dominated by `lambda`, found by scanning
/// every partition of the same total. Asserts the maximum is unique.
fn brute_force_collapse(lambda: &Partition, pool: &[Partition]) -> Partition {
    let candidates: Vec<&Partition> = pool
        .iter()
        .filter(|c| c.is_symplectic())
        .filter(|c| {
            matches!(
                dominance_compare(c, lambda).expect("same total"),
                Dominance::Less | Dominance::Equal
            )
        })
        .collect();
    let top: Vec<&&Partition> = candidates
        .iter()
        .filter(|g| {
            candidates.iter().all(|c| {
                matches!(
                    dominance_compare(c, g).expect("same total"),
                    Dominance::Less | Dominance::Equal
                )
            })
        })
        .collect();
    assert_eq!(top.len(), 1, "dominance maximum below {lambda} is not unique");
    (**top[0]).clone()
}

#[test]
fn criterion_2_collapse_oracle() {
    let start = Instant::now();
    let mut pass = true;
    let mut checked = 0usize;
    for total in 1..=16u64 {
        let pool = partitions_of(total);
        for lambda in &pool {
            if total % 2 == 1 {
                pass &= sp_collapse(lambda).is_err();
                continue;
            }
            let expected = brute_force_collapse(lambda, &pool);
            pass &= sp_collapse(lambda).expect("collapse") == expected;
            checked += 1;
        }
    }
    assert!(checked > 500, "oracle sweep unexpectedly small: {checked}");
    finish(2, "collapse oracle", pass, start, Duration::from_secs(30));
}

// --- criterion 3: boundary exponent cross-check ----------------------------

#[test]
fn criterion_3_beta_crosscheck() {
    let start = Instant::now();
    let mut pass = true;
    for n in 1..=8usize {
        for r in (3..2 * n as u64).step_by(2) {
            let rp = ((r - 1) / 2) as usize;
            for a in 0..=n - rp {
                pass &= beta_exponent(n, r, a).expect("beta")
                    == beta_crosscheck(n, r, a).expect("crosscheck");
            }
        }
    }
    finish(3, "beta crosscheck", pass, start, Duration::from_secs(1));
}

// --- criterion 4: exponent pipeline ----------------------------------------

#[test]
fn criterion_4_exponent_pipeline() {
    let start = Instant::now();
    let mut pass = true;
    for n in (3..=15usize).step_by(2) {
        let rep = exponent_pipeline(n).expect("pipeline");
        let ni = n as i64;
        pass &= rep.total == ratio(-(ni - 2) * (2 * ni - 1), 2 * ni);
        pass &= rep.matches && rep.higher_shells_vanish;
        if n == 3 {
            pass &= rep.total == ratio(-5, 6);
        }
    }
    finish(4, "exponent pipeline", pass, start, Duration::from_secs(1));
}

// --- criterion 5: unit-integral vanishing and Gauss norms ------------------

#[test]
fn criterion_5_unit_integrals() {
    let start = Instant::now();
    let mut pass = true;
    for p in [7u64, 13, 19, 31] {
        let field = LocalFieldSpec::new(p, 3).expect("field spec");
        for t in [1i64, 2] {
            for m in [2u32, 3, 4] {
                pass &= field.unit_integral(m, t).expect("integral").is_zero();
            }
            let depth_one = field.unit_integral(1, t).expect("depth one");
            let gauss = field.gauss_sum(t).expect("gauss");
            // p^-1 * raw sum: same cyclotomic value, tagged q^-1
            pass &= depth_one.value == gauss.value && depth_one.q_exp == rat(-1);
            let norm = gauss.value.mul(&gauss.value.conj()).expect("norm");
            pass &= norm == CycScalar::from_rat(3 * p, rat(p as i64));
        }
    }
    finish(5, "unit integrals", pass, start, Duration::from_secs(60));
}

// --- criterion 6: matrix identity suite ------------------------------------

#[test]
fn criterion_6_identity_suite() {
    let start = Instant::now();
    let suite = suites::run_suite("identities").expect("identities suite");
    for check in &suite.checks {
        assert!(check.pass, "identities/{} failed: {}", check.id, check.detail);
    }
    // instances must span ranks 2 through 4 at least
    let text = serde_json::to_string(&suite).expect("serializable");
    let pass = suite.all_passed()
        && text.contains("(3,3,1)")
        && text.contains("(4,5,2)")
        && suite.checks.iter().any(|c| c.id == "heisenberg-quotients");
    finish(6, "identity suite", pass, start, Duration::from_secs(10));
}

// --- criteria 7 and 8: the shipped binary ----------------------------------

fn run_cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_thetacover"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 output"),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_7_special_value_assembly() {
    let start = Instant::now();
    let (plain, code) = run_cli(&["theorem2", "--n", "3", "--n1", "0", "--n2", "0"]);
    let expected_plain = concat!(
        r#"[{"weil_exp":0,"q_exp":"0","coeff":"1","token":"T(0,0,0)"},"#,
        r#"{"weil_exp":0,"q_exp":"-5/6","coeff":"1","token":"T(0,0,1)"}]"#,
        "\n"
    );
    let mut pass = code == 0 && plain == expected_plain;

    let (twisted, code) =
        run_cli(&["theorem2", "--n", "3", "--n1", "0", "--n2", "0", "--with-gauss-factor"]);
    pass &= code == 0;
    let doc: serde_json::Value = serde_json::from_str(&twisted).expect("json");
    let second = &doc[1];
    pass &= second["q_exp"] == "-4/3";
    pass &= second["coeff"]["modulus"] == 21;
    let golden = ["2", "-1", "-2", "3", "-2", "-2", "1", "1", "-1", "0", "1", "-3"];
    let coeffs = second["coeff"]["coefficients"].as_array().expect("coefficients");
    pass &= coeffs.len() == golden.len()
        && coeffs.iter().zip(golden).all(|(c, g)| c == g);
    finish(7, "special value assembly", pass, start, Duration::from_secs(1));
}

#[test]
fn criterion_8_byte_stable_output() {
    let start = Instant::now();
    let mut pass = true;
    for args in [
        vec!["verify"],
        vec!["verify", "--suite", "identities"],
        vec!["verify", "--suite", "exponents"],
        vec!["verify", "--suite", "orbits"],
        vec!["verify", "--suite", "charsums"],
        vec!["theorem2", "--n", "5", "--n1", "1", "--n2", "2", "--with-gauss-factor"],
        vec!["dim-check", "--n", "4", "--r", "7"],
    ] {
        let (first, code_a) = run_cli(&args);
        let (second, code_b) = run_cli(&args);
        pass &= code_a == 0 && code_b == 0 && !first.is_empty() && first == second;
    }
    finish(8, "byte-stable output", pass, start, Duration::from_secs(120));
}
