//! Acceptance gate: eight exact checks, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines always reach the
//! terminal. Exits non-zero if any criterion fails.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigUint;

use macaulay::binomial::{self, macaulay_rep, rep_compare, rep_eval};
use macaulay::engine::{
    build_certificate, check_certificate, default_cells, enumerate_gotzmann, enumerate_subsets,
    find_splitting_index, run_lemma_suite, verify_persistence, LemmaId, LemmaReport, Parallelism,
    SuiteRange, DEFAULT_BUDGET,
};
use macaulay::monomial::{count_monomials, lexsegment, MonomialSet};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Every subset of every default cell, in enumeration order.
fn sweep() -> impl Iterator<Item = MonomialSet> {
    default_cells().into_iter().flat_map(|(n, d)| {
        (0..=count_monomials(n, d))
            .flat_map(move |a| enumerate_subsets(n, d, a, DEFAULT_BUDGET).expect("within budget"))
    })
}

fn gotzmann_sweep() -> impl Iterator<Item = MonomialSet> {
    default_cells().into_iter().flat_map(|(n, d)| {
        (0..=count_monomials(n, d))
            .flat_map(move |a| enumerate_gotzmann(n, d, a, DEFAULT_BUDGET).expect("within budget"))
    })
}

fn suite(id: LemmaId) -> Result<LemmaReport, String> {
    run_lemma_suite(id, &SuiteRange::defaults(id), Parallelism::sequential())
        .map_err(|e| format!("{id}: {e}"))
}

fn suites(ids: &[LemmaId]) -> Check {
    let mut summary = Vec::new();
    for &id in ids {
        let report = suite(id)?;
        if !report.passed() || report.cases == 0 {
            return Err(report.to_string());
        }
        summary.push(format!("{id} cases={}", report.cases));
    }
    Ok(summary.join(", "))
}

fn macaulay_bound() -> Check {
    let expected: u64 = default_cells()
        .iter()
        .map(|&(n, d)| 1u64 << count_monomials(n, d))
        .sum();
    let mut cases = 0u64;
    for v in sweep() {
        cases += 1;
        let bound = binomial::up(&big(v.len() as u64), v.n_vars() as u32 - 1).unwrap();
        if big(v.shadow().len() as u64) < bound {
            return Err(format!("|MV| = {} < {bound} for\n{v}", v.shadow().len()));
        }
    }
    if cases != expected {
        return Err(format!("swept {cases} sets, expected {expected}"));
    }
    let report = suite(LemmaId::Macaulay1)?;
    if !report.passed() || report.cases != expected {
        return Err(report.to_string());
    }
    Ok(format!("{cases} subsets"))
}

fn lexsegment_tightness() -> Check {
    let mut cases = 0;
    for n in 1..=4usize {
        for d in 0..=4u32 {
            for a in 0..=count_monomials(n, d) {
                let lex = lexsegment(n, d, a).map_err(|e| e.to_string())?;
                let shadow = big(lex.shadow().len() as u64);
                let up = binomial::up(&big(a as u64), n as u32 - 1).map_err(|e| e.to_string())?;
                if shadow != up {
                    return Err(format!("n={n} d={d} a={a}: |M Lex| = {shadow}, up = {up}"));
                }
                cases += 1;
            }
        }
    }
    let shadow = lexsegment(3, 2, 5).unwrap().shadow().len();
    if shadow != 9 || binomial::up(&big(5), 2).unwrap() != big(9) {
        return Err("up(5,2) = 9 = |M Lex(3,2,5)| fails".into());
    }
    Ok(format!("{cases} lexsegments"))
}

fn persistence() -> Check {
    let mut cases = 0u64;
    for v in gotzmann_sweep() {
        cases += 1;
        if !verify_persistence(&v, 5).map_err(|e| format!("{e}\n{v}"))? {
            return Err(format!("persistence fails for\n{v}"));
        }
    }
    let report = suite(LemmaId::Persistence)?;
    if !report.passed() || report.cases != cases {
        return Err(report.to_string());
    }
    Ok(format!("{cases} Gotzmann sets, 5 steps"))
}

fn splitting_certificates() -> Check {
    let mut split_sets = 0u64;
    let mut certificates = 0u64;
    for v in gotzmann_sweep().filter(|v| !v.is_empty()) {
        let needs_split = !v.is_full() && v.gcd().unwrap().is_one();
        if needs_split {
            find_splitting_index(&v).map_err(|e| e.to_string())?;
            split_sets += 1;
        }
        let cert = build_certificate(&v).map_err(|e| format!("{e}\n{v}"))?;
        check_certificate(&cert, &v).map_err(|e| format!("{e}\n{v}"))?;
        certificates += 1;
    }
    if split_sets == 0 {
        return Err("no set needed a split".into());
    }
    let report = suite(LemmaId::Certificate)?;
    if !report.passed() {
        return Err(report.to_string());
    }
    Ok(format!(
        "{split_sets} split roots, {certificates} certificates checked"
    ))
}

fn numeric_suites() -> Check {
    suites(&[
        LemmaId::L1_3,
        LemmaId::L1_4,
        LemmaId::L1_5,
        LemmaId::L1_7,
        LemmaId::L1_6,
    ])
}

fn split_lemmas() -> Check {
    suites(&[LemmaId::L2_1, LemmaId::L2_2, LemmaId::ClaimSharp])
}

fn representation_integrity() -> Check {
    let conventions = [
        ("0^<3>", binomial::up(&big(0), 3), 0u64),
        ("0_<3>", binomial::down(&big(0), 3), 0),
        ("0_<<3>>", binomial::ddown(&big(0), 3), 0),
        ("1^<0>", binomial::up(&big(1), 0), 1),
        ("1_<<0>>", binomial::ddown(&big(1), 0), 1),
        ("1_<0>", binomial::down(&big(1), 0), 0),
    ];
    for (name, got, want) in conventions {
        if got != Ok(big(want)) {
            return Err(format!("{name} = {got:?}, expected {want}"));
        }
    }
    // full pairwise agreement with integer order on a smaller window
    for n in 1..=8u32 {
        let reps: Vec<_> = (1..=300u64)
            .map(|h| macaulay_rep(&big(h), n).unwrap())
            .collect();
        for (x, rx) in reps.iter().enumerate() {
            if rep_eval(rx) != big(x as u64 + 1) {
                return Err(format!("round trip fails for h={} n={n}", x + 1));
            }
            for (y, ry) in reps.iter().enumerate() {
                if rep_compare(rx, ry) != Ok(x.cmp(&y)) {
                    return Err(format!("order of h={} and h={} at n={n}", x + 1, y + 1));
                }
            }
        }
    }
    let five = macaulay_rep(&big(5), 2).unwrap();
    let six = macaulay_rep(&big(6), 2).unwrap();
    if rep_compare(&five, &six) != Ok(Ordering::Less) {
        return Err("rep(5,2) < rep(6,2) fails".into());
    }
    suites(&[LemmaId::L1_2])
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

struct Golden {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const GOLDEN: &[Golden] = &[
    Golden {
        name: "rep_5_2",
        args: &["rep", "5", "2"],
        exit: 0,
    },
    Golden {
        name: "rep_1_4",
        args: &["rep", "1", "4"],
        exit: 0,
    },
    Golden {
        name: "rep_0_2",
        args: &["rep", "0", "2"],
        exit: 2,
    },
    Golden {
        name: "op_up_5_2",
        args: &["op", "up", "5", "2"],
        exit: 0,
    },
    Golden {
        name: "op_down_1_0",
        args: &["op", "down", "1", "0"],
        exit: 0,
    },
    Golden {
        name: "op_rem_6_2",
        args: &["op", "rem", "6", "2"],
        exit: 0,
    },
    Golden {
        name: "set_lex_3_2_5",
        args: &["set", "lex", "3", "2", "5"],
        exit: 0,
    },
    Golden {
        name: "set_persist_lex_3_2_5",
        args: &[
            "set",
            "persist",
            "--steps",
            "4",
            "tests/fixtures/lex_3_2_5.ms",
        ],
        exit: 0,
    },
    Golden {
        name: "set_gotzmann_pure_powers",
        args: &["set", "gotzmann", "tests/fixtures/pure_powers.ms"],
        exit: 1,
    },
    Golden {
        name: "lemma_L1_5",
        args: &["lemma", "L1_5", "--max-a", "100", "--max-n", "4"],
        exit: 0,
    },
    Golden {
        name: "lemma_macaulay_1",
        args: &["lemma", "macaulay_1", "--n", "3", "--d", "2"],
        exit: 0,
    },
    Golden {
        name: "lemma_L1_6",
        args: &["lemma", "L1_6", "--seed", "0", "--samples", "1000"],
        exit: 0,
    },
];

fn invoke(args: &[&str], extra: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_macaulay"))
        .current_dir(manifest_dir())
        .args(extra)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by a signal")?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((code, stdout))
}

fn cli_golden() -> Check {
    let golden_dir = manifest_dir().join("tests/golden");
    for case in GOLDEN {
        let path: &Path = &golden_dir.join(format!("{}.out", case.name));
        let expected =
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for extra in [&[][..], &["--parallel", "1"], &["--parallel", "4"]] {
            let (code, stdout) = invoke(case.args, extra)?;
            if code != case.exit {
                return Err(format!(
                    "{} {extra:?}: exit {code}, expected {}",
                    case.name, case.exit
                ));
            }
            if stdout != expected {
                return Err(format!(
                    "{} {extra:?}: output differs from golden\n--- got\n{stdout}--- expected\n{expected}",
                    case.name
                ));
            }
        }
    }
    Ok(format!("{} invocations x 3 thread settings", GOLDEN.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("macaulay bound over all subsets", macaulay_bound),
        ("lexsegment shadows equal up(a, n-1)", lexsegment_tightness),
        ("persistence on every Gotzmann set", persistence),
        ("splitting index and certificates", splitting_certificates),
        ("numeric lemma sweeps", numeric_suites),
        (
            "split bounds, dropped range, uniform-drop claim",
            split_lemmas,
        ),
        (
            "representation round trip, order, conventions",
            representation_integrity,
        ),
        ("cli golden output, sequential and parallel", cli_golden),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.2}s)", k + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.2}s)", k + 1);
                for line in reason.lines() {
                    println!("    {line}");
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
