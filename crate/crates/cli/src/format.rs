//! Plain-text rendering of tables, superpolynomials and suite reports.

use std::fmt::Write;

use hhh_core::homology::TriGradedTable;
use hhh_core::invariant::{homfly_specialize, Superpolynomial};
use hhh_core::verify::SuiteReport;

fn flags(v: &[bool]) -> String {
    v.iter().map(|f| if *f { "yes" } else { "no" }).collect::<Vec<_>>().join(" ")
}

pub fn table(t: &TriGradedTable) -> String {
    let mut out = String::new();
    let word: Vec<String> = t.braid.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "braid      {}", word.join(" "));
    let _ = writeln!(
        out,
        "n = {}  writhe = {}  components = {}  field = {}  qmax = {}",
        t.n, t.writhe, t.components, t.field, t.qmax
    );
    let h = &t.hypotheses;
    let _ = writeln!(
        out,
        "positive = {}  negative = {}  all generators = {}  stst per pair = [{}]",
        h.positive,
        h.negative,
        h.all_generators,
        flags(&h.stst_per_pair)
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "{:>5} {:>3} {:>5} {:>4}", "T", "A", "Q", "dim");
    for &tt in t.t_degrees.iter().rev() {
        for a in 0..t.n {
            let tail = t.tail_at(a, tt);
            for (q, dim) in t.dims(a, tt) {
                if tail.is_some_and(|x| q > x.qstart) {
                    continue;
                }
                let _ = write!(out, "{:>5} {:>3} {:>5} {:>4}", tt, a, q, dim);
                if let Some(x) = tail.filter(|x| x.qstart == q) {
                    let _ = write!(out, "  free: k[a{}] from Q = {}, every {}", x.variable, x.qstart, x.period);
                }
                let _ = writeln!(out);
            }
        }
    }
    let _ = writeln!(out, "(T-degrees {:?}; cells not listed are zero)", t.t_degrees);
    if !h.theorem_verdicts.is_empty() {
        let _ = writeln!(out);
        for v in &h.theorem_verdicts {
            let _ = writeln!(out, "{}  {}", if v.holds { "ok  " } else { "FAIL" }, v.claim);
        }
    }
    for w in &t.warnings {
        let _ = writeln!(out, "warning: {}", w);
    }
    out
}

pub fn superpoly(p: &Superpolynomial) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "P = {}", p.factored());
    match p.t_window {
        Some((lo, hi)) => {
            let _ = writeln!(out, "computed T-exponents {}..={} only", lo, hi);
        }
        None => {
            let _ = writeln!(out, "complete");
        }
    }
    let h = homfly_specialize(p);
    let _ = writeln!(out, "HOMFLY (T = -1, A = -a^2 q^2, Q = q): {}", h);
    let _ = writeln!(out, "normalization: {}", h.normalization);
    out
}

pub fn report(r: &SuiteReport, verbose: bool) -> String {
    let mut out = String::new();
    let failures = r.failures();
    let _ = writeln!(
        out,
        "{} {} ({} checks, {} failed, seed {}, count {})",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        r.suite,
        r.checks.len(),
        failures.len(),
        r.seed,
        r.count
    );
    for c in &r.checks {
        if verbose || !c.passed {
            let _ = writeln!(out, "  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }
    out
}
