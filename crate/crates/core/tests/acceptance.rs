//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pushcops::graph::OrientedGraph;
use pushcops::solver::cop_number;
use pushcops::verify::{self, class_sweep, open_sweep, theorem_from_sweep, Suite, SuiteReport, VerifyOptions};
use pushcops::PushAbility;

struct Line {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn report_line(name: &'static str, r: &SuiteReport, elapsed: Duration) -> Line {
    let c = &r.counts;
    let mut detail = format!(
        "graphs {} classes {} orientations {} matches {} solves {} in {:.1}s",
        c.graphs,
        c.classes,
        c.orientations,
        c.matches,
        c.solves,
        elapsed.as_secs_f64()
    );
    if let Some(f) = r.minimal_failure() {
        detail.push_str(&format!("; {} failures, smallest: {}", r.failures.len(), f.message));
    }
    Line { name, ok: r.passed(), detail }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn suite(s: Suite, max_n: Option<usize>) -> (SuiteReport, Duration) {
    timed(|| verify::run(s, &VerifyOptions { max_n, ..Default::default() }))
}

fn main() -> ExitCode {
    let mut lines = Vec::new();
    let mut emit = |line: Line| {
        println!("{} {}: {}", if line.ok { "PASS" } else { "FAIL" }, line.name, line.detail);
        lines.push(line.ok);
    };

    let (r, t) = suite(Suite::TheoremDag, Some(5));
    emit(report_line("pushable-to-DAG orientations are one-cop wins (n <= 5)", &r, t));

    // Fast tier with the oracle replay, then the full n <= 6 sweep shared
    // with the open-question count below.
    let (fast3, t3) = suite(Suite::Theorem3Degen, Some(5));
    let (fast4, t4) = suite(Suite::TheoremMaxdeg4, Some(5));
    let fast_ok = fast3.passed() && fast4.passed() && t3 + t4 < Duration::from_secs(60);
    emit(Line {
        name: "3-degenerate and max-degree-4 fast tier (n <= 5, under 60 s)",
        ok: fast_ok,
        detail: format!(
            "{} + {} orientations, {} oracle replays, {:.1}s",
            fast3.counts.orientations,
            fast4.counts.orientations,
            fast3.counts.matches + fast4.counts.matches,
            (t3 + t4).as_secs_f64()
        ),
    });
    let (data, ts) = timed(|| class_sweep(6, |_| true));
    let r = theorem_from_sweep(Suite::Theorem3Degen, &data, |g| g.three_degenerate, "3-degenerate");
    emit(report_line("3-degenerate orientations are one-cop wins (n <= 6)", &r, ts));
    let r = theorem_from_sweep(Suite::TheoremMaxdeg4, &data, |g| g.max_degree <= 4, "max degree <= 4");
    emit(report_line("max-degree-4 orientations are one-cop wins (n <= 6)", &r, ts));

    let (r, t) = suite(Suite::Strategy4Regular, None);
    emit(report_line("4-regular cop strategy wins from every start", &r, t));

    let (r, t) = suite(Suite::PushdagProps, Some(6));
    emit(report_line("reachability extension and single-source normalisation (n <= 6)", &r, t));

    let (r, t) = suite(Suite::Trap, Some(12));
    emit(report_line("trapped robber is caught without touching its neighbours", &r, t));

    let (r, t) = suite(Suite::Monotonic, Some(5));
    emit(report_line("c_sp <= c_wp <= c (n <= 5)", &r, t));

    let (r, t) = suite(Suite::Cycles, Some(8));
    let tri = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    let tri_ok = cop_number(&tri, PushAbility::None, 3).unwrap().value() == Some(2)
        && cop_number(&tri, PushAbility::Strong, 3).unwrap().value() == Some(1);
    let mut line = report_line("oriented cycles: c = 2 and c_sp = 1 (n = 3..8)", &r, t);
    line.ok &= tri_ok;
    line.detail.push_str(&format!("; directed triangle by hand {}", if tri_ok { "ok" } else { "wrong" }));
    emit(line);

    let (r, t) = suite(Suite::K4Obstruction, None);
    let mismatch = r.findings.iter().any(|f| f.starts_with("MISMATCH"));
    let mut line = report_line("K4 push classes with no acyclic member", &r, t);
    line.ok &= !mismatch;
    line.detail = format!("{}; {}", r.findings[0], line.detail);
    emit(line);

    let (r, t) = timed(|| open_sweep(&data));
    let mut line = report_line("open sweep over all connected graphs (n <= 6)", &r, t + ts);
    line.detail = format!("{}; {}", r.findings[0], line.detail);
    emit(line);

    let failed = lines.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", lines.len() - failed, lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
