//! Acceptance suite. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use common::{enumerate3, outcome_strings, random_state, rng, within_3_sigma};
use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};
use wqsc::bell::*;
use wqsc::protocol::*;
use wqsc::qcore::{eigenvalues_hermitian, partial_transpose, reduced_density, three_tangle, StateVector, Subsystem};
use wqsc::report::{parse_run_report, OutputFormat};
use wqsc::states::{ghz_state, w_prime, w_state, AttackAngle};
use wqsc::{Axis, Outcome, Party};
use Party::{Alice as A, Bob as B, Charlie as C};

const N: u64 = 100_000;
const ROLES: [(Party, Party, Party); 6] = [(A, B, C), (A, C, B), (B, A, C), (B, C, A), (C, A, B), (C, B, A)];

fn close(got: f64, want: f64, tol: f64, what: &str) {
    assert!((got - want).abs() <= tol, "{what}: got {got}, want {want} (tol {tol:e})");
}

fn golden_probabilities() {
    let start = Instant::now();
    let w = w_state();
    close(prob_two_z_plus(&w, PairInterpretation::AtLeastTwo).unwrap(), 1.0, 1e-12, "A11 at-least-two");
    for (i, j, _) in ROLES {
        close(prob_two_z_plus(&w, PairInterpretation::StrictPair(i, j)).unwrap(), 1.0 / 3.0, 1e-12, "A11 strict");
    }
    for (i, j, k) in ROLES {
        close(prob_z_plus_x_unequal(&w, i, (j, k)).unwrap(), 0.0, 1e-12, "z+ with x unequal");
    }
    close(prob_x_all_equal(&w).unwrap(), 0.75, 1e-12, "x all equal");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

fn ch_bell_term() {
    let w = w_state();
    for roles in ROLES {
        let t = ch_middle_term(&w, PairInterpretation::AtLeastTwo, roles).unwrap();
        close(t.value, 0.25, 1e-12, "at-least-two CH value");
        assert!(t.violates(1e-12), "1/4 should exceed the bound 0");
        let (i, j, _) = roles;
        let t = ch_middle_term(&w, PairInterpretation::StrictPair(i, j), roles).unwrap();
        close(t.value, -5.0 / 12.0, 1e-12, "strict-pair CH value");
        assert!(!t.violates(1e-12), "-5/12 lies inside the bound");
    }
}

fn entanglement_classification() {
    close(three_tangle(&ghz_state()).unwrap(), 1.0, 1e-9, "tangle GHZ");
    close(three_tangle(&w_state()).unwrap(), 0.0, 1e-9, "tangle W");
    let expect = (1.0 - 5f64.sqrt()) / 6.0;
    for keep in [[0, 1], [1, 2], [0, 2]] {
        let rho = reduced_density(&w_state(), &keep).unwrap();
        for side in [Subsystem::First, Subsystem::Second] {
            let pt = partial_transpose(&rho, side).unwrap();
            close(eigenvalues_hermitian(&pt).unwrap()[0], expect, 1e-8, "PPT minimum");
        }
    }
}

fn attack_statistics() {
    for i in 0..50 {
        let phi = AttackAngle::new(FRAC_PI_2 * i as f64 / 49.0).unwrap();
        let wp = w_prime(phi);
        let (s, c) = phi.radians().sin_cos();
        close(security_event_probability(&wp, AxisSet::XXZ).unwrap(), s * s / 6.0, 1e-12, "xxz");
        close(security_event_probability(&wp, AxisSet::XZX).unwrap(), (1.0 - c) / 3.0, 1e-12, "xzx");
        close(security_event_probability(&wp, AxisSet::ZXX).unwrap(), (1.0 - c) / 3.0, 1e-12, "zxx");
        close(averaged_security_probability(phi), (1.0 - c) * (5.0 + c) / 18.0, 1e-12, "P_bar");
    }
    close(averaged_security_probability(AttackAngle::MAXIMAL), 5.0 / 18.0, 1e-12, "P_bar(pi/2)");
}

fn monte_carlo_success_rates() {
    for (mode, p) in [(ProtocolMode::Qkd, 0.25), (ProtocolMode::Pqss, 0.125), (ProtocolMode::Synth, 0.375)] {
        let start = Instant::now();
        let r = run_protocol(&ProtocolConfig::new(mode, N, 2024).with_announce_rate(0.0)).unwrap();
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(30), "{mode} took {elapsed:?}");
        assert!(within_3_sigma(r.total_key_bits, N, p), "{mode}: {} of {N}", r.total_key_bits);
        if mode == ProtocolMode::Qkd {
            assert!(
                within_3_sigma(r.qkd_key_bits, r.qkd_set_trials, 2.0 / 3.0),
                "conditional {} of {}",
                r.qkd_key_bits,
                r.qkd_set_trials
            );
        }
    }
}

fn resource_accounting() {
    for (mode, target) in [(ProtocolMode::Qkd, 12.0), (ProtocolMode::Pqss, 24.0), (ProtocolMode::Synth, 8.0)] {
        let r = run_protocol(&ProtocolConfig::new(mode, N, 2025).with_announce_rate(0.0)).unwrap();
        let per_bit = r.qubits_per_key_bit.unwrap();
        assert!((per_bit - target).abs() / target < 0.05, "{mode}: {per_bit}");
    }
    assert_eq!(qubits_per_key_bit(E91.0, E91.1).unwrap(), 9.0);
    assert_eq!(qubits_per_key_bit(HBB99.0, HBB99.1).unwrap(), 6.0);
    let e91 = key_accounting(1.0, E91.0, 10, 0, E91.1).unwrap();
    assert_eq!((e91.paper, e91.exact), (9.0, 9.0));
    let hbb = key_accounting(1.0, HBB99.0, 10, 0, HBB99.1).unwrap();
    assert_eq!((hbb.paper, hbb.exact), (6.0, 6.0));
}

fn key_material() {
    let qkd = Run::execute(ProtocolConfig::new(ProtocolMode::Qkd, N, 2026).with_announce_rate(0.0)).unwrap();
    assert_eq!(qkd.keys().qkd_disagreements(), 0);
    assert_eq!(qkd.report.qkd_key_disagreements, 0);

    let pqss = Run::execute(ProtocolConfig::new(ProtocolMode::Pqss, N, 2026).with_announce_rate(0.0)).unwrap();
    let keys = pqss.keys();
    assert_eq!(keys.pqss_failures(), 0);
    assert_eq!(pqss.report.pqss_reconstruction_failures, 0);
    let shares = &keys.pqss_shares.0;
    let leaks = shares.iter().filter(|&&s| partial_inference(s) == Inference::DealerIsPlus).count() as u64;
    assert!(within_3_sigma(leaks, shares.len() as u64, 1.0 / 3.0), "{leaks} of {}", shares.len());
}

fn cli(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_wqsc"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn detection() {
    let base = ["run", "--mode", "qkd", "--trials", "100000", "--seed", "7", "--target", "C", "--announce-rate", "0.2"];

    let (code, stdout) = cli(&[&base[..], &["--phi", "1.5707963267948966"]].concat());
    assert_eq!(code, Some(2), "expected Compromised exit code");
    let r = parse_run_report(std::str::from_utf8(&stdout).unwrap(), OutputFormat::Json).unwrap();
    assert_eq!(r.verdict, SecurityVerdict::Compromised);
    assert!(
        within_3_sigma(r.security_events, r.security_trials, 5.0 / 18.0),
        "frequency {}",
        r.security_event_frequency.unwrap_or(f64::NAN)
    );

    let (code, stdout) = cli(&[&base[..], &["--phi", "0"]].concat());
    assert_eq!(code, Some(0), "expected Secure exit code");
    let r = parse_run_report(std::str::from_utf8(&stdout).unwrap(), OutputFormat::Json).unwrap();
    assert!(r.security_trials > 0);
    assert_eq!(r.security_events, 0);
    assert_eq!(r.security_event_frequency, Some(0.0));
    assert_eq!(r.verdict, SecurityVerdict::Secure);
}

fn determinism() {
    for format in ["json", "csv"] {
        let args = [
            "run", "--mode", "synth", "--trials", "50000", "--seed", "11", "--phi", "0.9", "--target", "A",
            "--announce-rate", "0.3", "--format", format,
        ];
        let (c1, a) = cli(&args);
        let (c2, b) = cli(&args);
        assert_eq!(c1, c2);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{format} reports differ");
    }
    let (_, a) = cli(&["sweep-phi", "--phi", "0.3,1.2", "--trials", "5000", "--seed", "4"]);
    let (_, b) = cli(&["sweep-phi", "--phi", "0.3,1.2", "--trials", "5000", "--seed", "4"]);
    assert_eq!(a, b, "sweep reports differ");
}

fn pauli_oracle(s: &StateVector, axes: [Axis; 3]) -> f64 {
    outcome_strings(3)
        .map(|o| {
            let c: Vec<_> = (0..3).map(|q| (q, axes[q], o[q])).collect();
            let sign: f64 = o.iter().map(|x| x.sign()).product();
            sign * s.joint_probability(&c).unwrap()
        })
        .sum()
}

fn oracle_equivalence() {
    let mut r = rng(2027);
    let mut states = vec![w_state(), ghz_state()];
    states.extend((0..30).map(|_| random_state(3, &mut r)));
    states.extend((0..30).map(|_| random_state(4, &mut r)));
    states.extend((0..8).map(|i| w_prime(AttackAngle::new(PI / 2.0 * i as f64 / 7.0).unwrap())));
    let plus = Outcome::Plus;

    for s in &states {
        for axes in AxisSet::all() {
            let ops: Vec<_> = (0..3).map(|q| (q, axes.0[q])).collect();
            close(s.pauli_expectation(&ops).unwrap(), pauli_oracle(s, axes.0), 1e-12, "three-body correlator");
            if let AxisClass::Qkd { decider } = axes.classify() {
                let z = decider.index();
                let oracle = enumerate3(s, axes.0, |o| {
                    let x: Vec<_> = (0..3).filter(|&q| q != z).map(|q| o[q]).collect();
                    o[z] == plus && x[0] != x[1]
                });
                close(security_event_probability(s, axes).unwrap(), oracle, 1e-12, "security event");
            }
        }
        let at_least_two = enumerate3(s, [Axis::Z; 3], |o| o.iter().filter(|&&x| x == plus).count() >= 2);
        close(prob_two_z_plus(s, PairInterpretation::AtLeastTwo).unwrap(), at_least_two, 1e-12, "A11");
        let x_equal = enumerate3(s, [Axis::X; 3], |o| o[0] == o[1] && o[1] == o[2]);
        close(prob_x_all_equal(s).unwrap(), x_equal, 1e-12, "x all equal");
        for (i, j, k) in ROLES {
            let (qi, qj, qk) = (i.index(), j.index(), k.index());
            let strict = enumerate3(s, [Axis::Z; 3], |o| o[qi] == plus && o[qj] == plus);
            close(prob_two_z_plus(s, PairInterpretation::StrictPair(i, j)).unwrap(), strict, 1e-12, "A11 strict");
            let unequal = |zq: usize, a: usize, b: usize| {
                let mut ax = [Axis::X; 3];
                ax[zq] = Axis::Z;
                enumerate3(s, ax, |o| o[zq] == plus && o[a] != o[b])
            };
            close(prob_z_plus_x_unequal(s, i, (j, k)).unwrap(), unequal(qi, qj, qk), 1e-12, "z+ x unequal");
            if s.num_qubits() == 3 {
                let t = ch_middle_term(s, PairInterpretation::AtLeastTwo, (i, j, k)).unwrap();
                let oracle = at_least_two - unequal(qi, qj, qk) - unequal(qj, qi, qk) - x_equal;
                close(t.value, oracle, 1e-12, "CH combination");
            }
        }
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn()); 10] = [
        ("1 golden probabilities on W", golden_probabilities),
        ("2 CH-Bell middle term", ch_bell_term),
        ("3 entanglement classification", entanglement_classification),
        ("4 attack statistics", attack_statistics),
        ("5 Monte Carlo success rates", monte_carlo_success_rates),
        ("6 resource accounting", resource_accounting),
        ("7 key material correctness", key_material),
        ("8 eavesdropper detection", detection),
        ("9 determinism", determinism),
        ("10 oracle equivalence", oracle_equivalence),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(()) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  {name}: {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
