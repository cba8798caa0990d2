use crate::plcore::{pl_prove_equal, AffineForm, Cell, CellReport, Constraint, PLExpr};

use super::BsideError;

pub const SYMBOLIC_VARS: [&str; 7] = ["q1", "q2", "P", "P1", "P2", "e1", "e2"];

fn v(name: &str) -> AffineForm {
    AffineForm::var(name)
}

fn zero() -> AffineForm {
    AffineForm::zero()
}

/// Inequalities known about P = ψ(q) on U_k, given which q_i vanish.
pub fn chart_facts(chart: usize, q1_zero: bool, q2_zero: bool) -> Vec<Constraint> {
    let mut out = vec![
        Constraint::lt(&zero(), &v("P2")),
        Constraint::lt(&v("P2"), &v("P1")),
        Constraint::gt(&v("P"), &zero()),
    ];
    match chart {
        1 => {
            out.push(Constraint::gt(&v("P"), &v("P2")));
            if q1_zero {
                out.push(Constraint::gt(&v("P"), &v("P1")));
            }
        }
        2 => {
            if q1_zero {
                out.push(Constraint::lt(&v("P"), &v("P1")));
            }
            if q2_zero {
                out.push(Constraint::gt(&v("P"), &v("P2")));
            }
        }
        _ => out.push(Constraint::lt(&v("P"), &v("P2"))),
    }
    out
}

fn parse(s: &str) -> PLExpr {
    s.parse().expect("well-formed PL expression")
}

/// Components of F∘g_k and j∘π₀∨ in terms of q₁, q₂, P, P1, P2 and
/// e_i = val(1 + y_i).
pub fn diagram_exprs(chart: usize) -> ([PLExpr; 3], [PLExpr; 3]) {
    let m = "min(0, q1) + min(0, q2)";
    let (x1, x2, z) = match chart {
        1 => {
            let s = format!("(P - min(0, q1) - min(0, q2))");
            (format!("-{s}"), format!("{s} + e1 + e2"), format!("{s} + e1"))
        }
        2 => {
            let s = "(P - min(0, q2))".to_string();
            (format!("e1 - {s}"), format!("{s} + e2"), s)
        }
        _ => ("e1 + e2 - P".to_string(), "P".to_string(), "P - e2".to_string()),
    };
    let lhs = [
        parse(&format!("min({x1}, -P1 + {m})")),
        parse(&format!("min({x2}, P2)")),
        parse(&format!("median({z} + min(0, q2), P1, P2)")),
    ];
    let rhs = [
        parse(&format!("min(-P, -P1) + {m}")),
        parse("min(P, P2)"),
        parse("median(P, P1, P2)"),
    ];
    (lhs, rhs)
}

/// The four branches for one index i: (q_i < 0, e_i = q_i), (q_i > 0,
/// e_i = 0), (q_i = 0, e_i ≥ 0) and (q_i = 0, e_i = +∞).
fn branches(i: usize) -> Vec<(bool, Vec<Constraint>, Option<String>)> {
    let q = v(&format!("q{i}"));
    let e = v(&format!("e{i}"));
    vec![
        (false, vec![Constraint::lt(&q, &zero()), Constraint::eq(&e, &q)], None),
        (false, vec![Constraint::gt(&q, &zero()), Constraint::eq(&e, &zero())], None),
        (true, vec![Constraint::eq(&q, &zero()), Constraint::ge(&e, &zero())], None),
        (true, vec![Constraint::eq(&q, &zero())], Some(format!("e{i}"))),
    ]
}

/// Proves F∘g_k = j∘π₀∨ on U_k cell by cell using only the chart facts.
pub fn verify_diagram_symbolic(chart: usize) -> Result<CellReport, BsideError> {
    verify_diagram_symbolic_with(chart, &chart_facts)
}

/// As [`verify_diagram_symbolic`], with the chart facts supplied by `facts`
/// (called with the chart and whether q₁, q₂ vanish).
pub fn verify_diagram_symbolic_with(
    chart: usize,
    facts: &dyn Fn(usize, bool, bool) -> Vec<Constraint>,
) -> Result<CellReport, BsideError> {
    let (lhs, rhs) = diagram_exprs(chart);
    let mut report = CellReport::default();
    let mut feasible_base = 0;
    for (z1, c1, inf1) in branches(1) {
        for (z2, c2, inf2) in branches(2) {
            let mut cell = Cell::new().with_all(facts(chart, z1, z2)).with_all(c1.clone()).with_all(c2);
            for var in inf1.iter().chain(inf2.iter()) {
                cell = cell.with_infinite(var);
            }
            if !cell.feasible() {
                continue;
            }
            feasible_base += 1;
            for (l, r) in lhs.iter().zip(rhs.iter()) {
                let part = pl_prove_equal(l, r, &cell)?;
                report.cells_checked += part.cells_checked;
                report.cells_passed += part.cells_passed;
                report.failures.extend(part.failures);
            }
        }
    }
    if feasible_base == 0 || report.cells_checked == 0 {
        report.warnings.push("no feasible cells".to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_charts_pass() {
        for k in [1, 2, 3] {
            let r = verify_diagram_symbolic(k).unwrap();
            assert!(r.success(), "chart {k}: {:?}", r.failures);
            assert!(r.cells_checked >= 9, "chart {k}: {}", r.cells_checked);
            assert!(r.warnings.is_empty());
        }
    }

    #[test]
    fn injected_contradiction_is_vacuous() {
        let bad = |k: usize, a: bool, b: bool| {
            let mut f = chart_facts(k, a, b);
            f.push(Constraint::lt(&v("P"), &v("P2")));
            f
        };
        let r = verify_diagram_symbolic_with(1, &bad).unwrap();
        assert_eq!(r.cells_checked, 0);
        assert_eq!(r.warnings, ["no feasible cells"]);
    }

    #[test]
    fn corrupted_fact_is_detected() {
        let bad = |k: usize, a: bool, b: bool| {
            let mut f = chart_facts(k, a, false);
            if b {
                f.push(Constraint::lt(&v("P"), &v("P2")));
            }
            f
        };
        let r = verify_diagram_symbolic_with(2, &bad).unwrap();
        assert!(!r.success());
    }
}
