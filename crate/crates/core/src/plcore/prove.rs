use serde::{Deserialize, Serialize};

use super::affine::AffineForm;
use super::cell::{Cell, Constraint};
use super::expr::PLExpr;
use super::PlError;

/// Splits `base` into feasible cells on each of which `e` is affine.
///
/// Ties are broken by argument position, so the returned cells partition
/// `base`.
pub fn pl_case_split(e: &PLExpr, base: &Cell) -> Result<Vec<(Cell, AffineForm)>, PlError> {
    if !base.feasible() {
        return Ok(Vec::new());
    }
    split(e, base.clone())
}

fn split(e: &PLExpr, cell: Cell) -> Result<Vec<(Cell, AffineForm)>, PlError> {
    match e {
        PLExpr::Affine(f) => Ok(vec![(f.substitute_inf(&cell.infinite_vars)?, cell)]
            .into_iter()
            .map(|(f, c)| (c, f))
            .collect()),
        PLExpr::Sum(v) => {
            let mut acc = vec![(cell, AffineForm::zero())];
            for child in v {
                let mut next = Vec::new();
                for (c, f) in acc {
                    for (c2, g) in split(child, c)? {
                        next.push((c2, f.checked_add(&g)?));
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        PLExpr::Min(v) => select_over(v, cell, Pick::Min),
        PLExpr::Max(v) => select_over(v, cell, Pick::Max),
        PLExpr::Median(m) => {
            let mut acc: Vec<(Cell, Vec<AffineForm>)> = vec![(cell, Vec::new())];
            for child in m.iter() {
                let mut next = Vec::new();
                for (c, forms) in acc {
                    for (c2, g) in split(child, c)? {
                        let mut fs = forms.clone();
                        fs.push(g);
                        next.push((c2, fs));
                    }
                }
                acc = next;
            }
            let mut out = Vec::new();
            for (c, forms) in acc {
                out.extend(select_median(&forms, c)?);
            }
            Ok(out)
        }
    }
}

/// `a` precedes `b` in the order by value, then by index.
fn precedes(fa: &AffineForm, a: usize, fb: &AffineForm, b: usize, cell: &mut Cell) -> Result<bool, PlError> {
    if fa == fb {
        return Ok(a < b);
    }
    let (fin_a, fin_b) = (fa.is_finite(), fb.is_finite());
    if !fin_a || !fin_b {
        let lo_a = *fa == AffineForm::neg_inf();
        let hi_b = *fb == AffineForm::pos_inf();
        return Ok(lo_a || hi_b);
    }
    let d = fb.checked_sub(fa)?;
    let strict = a > b;
    if d.is_constant() {
        let x = d.constant_part().as_finite().map(|x| x.signum()).unwrap_or(0);
        return Ok(x > 0 || (x == 0 && !strict));
    }
    let zero = AffineForm::zero();
    cell.push(if strict { Constraint::gt(&d, &zero) } else { Constraint::ge(&d, &zero) });
    Ok(true)
}

fn select_median(forms: &[AffineForm], cell: Cell) -> Result<Vec<(Cell, AffineForm)>, PlError> {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for [a, b, c] in ORDERS {
        let mut k = cell.clone();
        if precedes(&forms[a], a, &forms[b], b, &mut k)? && precedes(&forms[b], b, &forms[c], c, &mut k)? && k.feasible() {
            out.push((k, forms[b].clone()));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Pick {
    Min,
    Max,
}

fn select_over(args: &[PLExpr], cell: Cell, pick: Pick) -> Result<Vec<(Cell, AffineForm)>, PlError> {
    let mut acc: Vec<(Cell, Vec<AffineForm>)> = vec![(cell, Vec::new())];
    for child in args {
        let mut next = Vec::new();
        for (c, forms) in acc {
            for (c2, g) in split(child, c)? {
                let mut fs = forms.clone();
                fs.push(g);
                next.push((c2, fs));
            }
        }
        acc = next;
    }
    let mut out = Vec::new();
    for (c, forms) in acc {
        out.extend(select(forms, c, pick));
    }
    Ok(out)
}

/// Branches on which of `forms` attains the min (or max) on `cell`.
fn select(forms: Vec<AffineForm>, cell: Cell, pick: Pick) -> Vec<(Cell, AffineForm)> {
    let (absorbing, neutral) = match pick {
        Pick::Min => (AffineForm::neg_inf(), AffineForm::pos_inf()),
        Pick::Max => (AffineForm::pos_inf(), AffineForm::neg_inf()),
    };
    if forms.contains(&absorbing) {
        return vec![(cell, absorbing)];
    }
    let mut finite: Vec<AffineForm> = Vec::new();
    for f in forms {
        if f != neutral && !finite.contains(&f) {
            finite.push(f);
        }
    }
    match finite.len() {
        0 => return vec![(cell, neutral)],
        1 => return vec![(cell, finite.pop().expect("one form"))],
        _ => {}
    }
    let mut out = Vec::new();
    'cand: for (i, fi) in finite.iter().enumerate() {
        let mut c = cell.clone();
        for (j, fj) in finite.iter().enumerate() {
            if i == j {
                continue;
            }
            // fi must beat fj, and strictly when j comes first.
            let d = match pick {
                Pick::Min => fj.checked_sub(fi),
                Pick::Max => fi.checked_sub(fj),
            }
            .expect("finite forms");
            let strict = j < i;
            if d.is_constant() {
                let x = d.constant_part().as_finite().map_or(0, |x| x.signum());
                if x < 0 || (x == 0 && strict) {
                    continue 'cand;
                }
                continue;
            }
            let zero = AffineForm::zero();
            c.push(if strict { Constraint::gt(&d, &zero) } else { Constraint::ge(&d, &zero) });
        }
        if c.feasible() {
            out.push((c, fi.clone()));
        }
    }
    out
}

/// One mismatching cell of a PL identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub cell: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub cells_checked: usize,
    pub cells_passed: usize,
    pub failures: Vec<CellFailure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl CellReport {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }

    /// Associative merge of two reports.
    pub fn merge(mut self, other: CellReport) -> CellReport {
        self.cells_checked += other.cells_checked;
        self.cells_passed += other.cells_passed;
        self.failures.extend(other.failures);
        self.warnings.extend(other.warnings);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Whether `f = g` holds identically on `cell`.
pub fn forms_agree_on(f: &AffineForm, g: &AffineForm, cell: &Cell) -> bool {
    if f == g {
        return true;
    }
    if !f.is_finite() || !g.is_finite() {
        return false;
    }
    let d = f.checked_sub(g).expect("finite forms");
    let zero = AffineForm::zero();
    if d.is_constant() {
        return d == zero;
    }
    let below = cell.clone().with(Constraint::lt(&d, &zero));
    let above = cell.clone().with(Constraint::gt(&d, &zero));
    !below.feasible() && !above.feasible()
}

/// Proves `lhs = rhs` on every feasible cell of a common refinement under
/// `facts`.
pub fn pl_prove_equal(lhs: &PLExpr, rhs: &PLExpr, facts: &Cell) -> Result<CellReport, PlError> {
    let mut report = CellReport::default();
    for (c, fl) in pl_case_split(lhs, facts)? {
        for (c2, fr) in split(rhs, c)? {
            report.cells_checked += 1;
            if forms_agree_on(&fl, &fr, &c2) {
                report.cells_passed += 1;
            } else {
                report.failures.push(CellFailure {
                    cell: c2.describe(),
                    lhs: fl.to_string(),
                    rhs: fr.to_string(),
                });
            }
        }
    }
    if report.cells_checked == 0 {
        report.warnings.push("no feasible cells".to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{ExtScalar, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(s: &str) -> PLExpr {
        s.parse().unwrap()
    }

    fn v(s: &str) -> AffineForm {
        AffineForm::var(s)
    }

    fn base_p() -> Cell {
        Cell::new()
            .with(Constraint::lt(&AffineForm::zero(), &v("P2")))
            .with(Constraint::lt(&v("P2"), &v("P1")))
    }

    #[test]
    fn split_min() {
        let cells = pl_case_split(&e("min(t, 1)"), &Cell::new()).unwrap();
        let forms: Vec<String> = cells.iter().map(|(_, f)| f.to_string()).collect();
        assert_eq!(forms, ["t", "1"]);
        assert_eq!(cells[0].0.describe(), ["-t + 1 >= 0"]);
    }

    #[test]
    fn split_median_gives_three_pieces() {
        let cells = pl_case_split(&e("median(t, P1, P2)"), &base_p()).unwrap();
        let mut forms: Vec<String> = cells.iter().map(|(_, f)| f.to_string()).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms, ["P1", "P2", "t"]);
    }

    #[test]
    fn infinite_branch_is_absorbed() {
        let base = Cell::new().with_infinite("x");
        let cells = pl_case_split(&e("min(x, c)"), &base).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].1, v("c"));
    }

    #[test]
    fn prove_examples() {
        let r = pl_prove_equal(&e("min(t,c) + min(-t,-c)"), &e("-max(t,c) + min(t,c)"), &Cell::new()).unwrap();
        assert!(r.success() && r.cells_checked > 0);
        let facts = base_p().with(Constraint::gt(&v("P"), &v("P1")));
        let r = pl_prove_equal(&e("median(P, P1, P2)"), &e("P1"), &facts).unwrap();
        assert!(r.success());
        assert_eq!(r.cells_checked, 1);
        let facts = base_p().with(Constraint::lt(&v("P"), &v("P2")));
        assert!(pl_prove_equal(&e("min(P, P2)"), &e("P"), &facts).unwrap().success());
    }

    #[test]
    fn wrong_identity_is_caught() {
        let r = pl_prove_equal(&e("min(P, P2)"), &e("P"), &base_p()).unwrap();
        assert!(!r.success());
        assert!(r.failures.iter().all(|f| f.lhs == "P2"));
        let json = r.to_json();
        assert!(json.contains("cells_checked"));
    }

    #[test]
    fn infeasible_facts_warn() {
        let facts = base_p().with(Constraint::lt(&v("P1"), &v("P2")));
        let r = pl_prove_equal(&e("P"), &e("P"), &facts).unwrap();
        assert_eq!(r.cells_checked, 0);
        assert_eq!(r.warnings, ["no feasible cells"]);
    }

    #[test]
    fn soundness_on_sampled_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let expr = e("median(t - q, P1, P2) + min(0, q) - max(t, P2, q)");
        for (cell, form) in pl_case_split(&expr, &base_p()).unwrap() {
            for _ in 0..100 {
                let p = cell.sample_point(&mut rng).unwrap();
                let lhs = expr.eval::<Rational>(&p).unwrap();
                assert_eq!(lhs, form.eval::<Rational>(&p).unwrap(), "{cell} {form}");
                assert!(lhs.is_finite() || lhs == ExtScalar::PosInf);
            }
        }
    }
}
