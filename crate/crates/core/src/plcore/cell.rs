use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

use crate::novikov::{ExtScalar, Rational};

use super::affine::{AffineForm, Ext};
use super::PlError;

/// Relation of a constraint `form ⋈ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Gt,
    Ge,
    Eq,
}

/// A linear constraint `form ⋈ 0` with a finite form.
#[derive(Clone, PartialEq, Eq)]
pub struct Constraint {
    pub form: AffineForm,
    pub rel: Rel,
}

impl Constraint {
    fn between(a: &AffineForm, b: &AffineForm, rel: Rel) -> Self {
        let form = a.checked_sub(b).expect("constraints compare finite forms");
        assert!(form.is_finite(), "constraints compare finite forms");
        Constraint { form, rel }
    }

    /// `a < b`
    pub fn lt(a: &AffineForm, b: &AffineForm) -> Self {
        Self::between(b, a, Rel::Gt)
    }

    /// `a ≤ b`
    pub fn le(a: &AffineForm, b: &AffineForm) -> Self {
        Self::between(b, a, Rel::Ge)
    }

    pub fn gt(a: &AffineForm, b: &AffineForm) -> Self {
        Self::lt(b, a)
    }

    pub fn ge(a: &AffineForm, b: &AffineForm) -> Self {
        Self::le(b, a)
    }

    pub fn eq(a: &AffineForm, b: &AffineForm) -> Self {
        Self::between(a, b, Rel::Eq)
    }

    pub fn holds(&self, point: &BTreeMap<String, Ext>) -> Result<bool, PlError> {
        let v = self.form.eval(point)?;
        let zero = ExtScalar::Finite(Rational::zero());
        Ok(match self.rel {
            Rel::Gt => v > zero,
            Rel::Ge => v >= zero,
            Rel::Eq => v == zero,
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.rel {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Eq => "=",
        };
        write!(f, "{} {op} 0", self.form)
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polyhedral cell together with the variables pinned to +∞ on it.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Cell {
    pub constraints: Vec<Constraint>,
    pub infinite_vars: BTreeSet<String>,
}

impl Cell {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn with_all(mut self, cs: impl IntoIterator<Item = Constraint>) -> Self {
        self.constraints.extend(cs);
        self
    }

    pub fn with_infinite(mut self, var: &str) -> Self {
        self.infinite_vars.insert(var.to_string());
        self
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.constraints
            .iter()
            .flat_map(|c| c.form.vars().map(str::to_string))
            .collect()
    }

    /// Exact feasibility over ℚ.
    pub fn feasible(&self) -> bool {
        let (system, _) = self.system(&BTreeMap::new());
        project(system, None).is_some()
    }

    /// Whether `point` (finite values plus +∞ on the infinite variables)
    /// satisfies every constraint.
    pub fn contains(&self, point: &BTreeMap<String, Ext>) -> Result<bool, PlError> {
        for v in &self.infinite_vars {
            if point.get(v) != Some(&ExtScalar::PosInf) {
                return Ok(false);
            }
        }
        for c in &self.constraints {
            if !c.holds(point)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A random rational point of the cell, found by exact projection onto
    /// one variable at a time. `None` iff the cell is infeasible.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<BTreeMap<String, Ext>> {
        let vars: Vec<String> = self.vars().into_iter().collect();
        let mut fixed: BTreeMap<String, Rational> = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            let (system, names) = self.system(&fixed);
            let keep = names.iter().position(|n| n == v);
            let rest = project(system, keep)?;
            let x = match keep {
                Some(k) => pick(&rest, k, rng)?,
                None => Rational::zero(),
            };
            fixed.insert(v.clone(), x);
            debug_assert!(i < vars.len());
        }
        let mut out: BTreeMap<String, Ext> =
            fixed.into_iter().map(|(k, v)| (k, ExtScalar::Finite(v))).collect();
        for v in &self.infinite_vars {
            out.insert(v.clone(), ExtScalar::PosInf);
        }
        Some(out)
    }

    fn system(&self, fixed: &BTreeMap<String, Rational>) -> (Vec<Lin>, Vec<String>) {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let forms: Vec<(AffineForm, Rel)> = self
            .constraints
            .iter()
            .map(|c| (c.form.substitute(fixed), c.rel))
            .collect();
        for (f, _) in &forms {
            for v in f.vars() {
                if !index.contains_key(v) {
                    index.insert(v.to_string(), names.len());
                    names.push(v.to_string());
                }
            }
        }
        let n = names.len();
        let system = forms
            .into_iter()
            .map(|(f, rel)| {
                let mut a = vec![Rational::zero(); n];
                for (v, c) in f.coeffs() {
                    a[index[v]] = c.clone();
                }
                let c = f.constant_part().as_finite().cloned().expect("finite constraint");
                Lin { a, c, rel }
            })
            .collect();
        (system, names)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.describe();
        if parts.is_empty() {
            return f.write_str("{}");
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Cell {
    /// Constraints as inequality strings, infinite variables last.
    pub fn describe(&self) -> Vec<String> {
        self.constraints
            .iter()
            .map(|c| c.to_string())
            .chain(self.infinite_vars.iter().map(|v| format!("{v} = +inf")))
            .collect()
    }
}

/// `a·x + c ⋈ 0` over dense variable indices.
#[derive(Clone, Debug)]
struct Lin {
    a: Vec<Rational>,
    c: Rational,
    rel: Rel,
}

impl Lin {
    fn is_constant(&self) -> bool {
        self.a.iter().all(Rational::is_zero)
    }

    fn constant_ok(&self) -> bool {
        match self.rel {
            Rel::Gt => self.c.signum() > 0,
            Rel::Ge => self.c.signum() >= 0,
            Rel::Eq => self.c.is_zero(),
        }
    }

    /// Scales so the first nonzero coefficient has magnitude one.
    fn normalize(&mut self) {
        let Some(lead) = self.a.iter().find(|x| !x.is_zero()).cloned() else {
            return;
        };
        let k = lead.abs().recip();
        if k == Rational::one() {
            return;
        }
        for x in &mut self.a {
            *x = &*x * &k;
        }
        self.c = &self.c * &k;
    }
}

/// Eliminates every variable except `keep`. Returns `None` on a
/// contradiction, otherwise the residual constraints (all in `keep`).
fn project(mut sys: Vec<Lin>, keep: Option<usize>) -> Option<Vec<Lin>> {
    loop {
        let mut kept = Vec::with_capacity(sys.len());
        for l in sys {
            if l.is_constant() {
                if !l.constant_ok() {
                    return None;
                }
            } else {
                kept.push(l);
            }
        }
        sys = kept;

        let pivot = sys.iter().enumerate().find_map(|(i, l)| {
            if l.rel != Rel::Eq {
                return None;
            }
            l.a.iter()
                .enumerate()
                .find(|(j, x)| Some(*j) != keep && !x.is_zero())
                .map(|(j, _)| (i, j))
        });
        if let Some((i, j)) = pivot {
            let eq = sys.swap_remove(i);
            let inv = eq.a[j].recip();
            for l in &mut sys {
                if l.a[j].is_zero() {
                    continue;
                }
                let k = &l.a[j] * &inv;
                for (x, y) in l.a.iter_mut().zip(&eq.a) {
                    *x = &*x - &(&k * y);
                }
                l.c = &l.c - &(&k * &eq.c);
                l.a[j] = Rational::zero();
            }
            continue;
        }

        let nvars = sys.first().map_or(0, |l| l.a.len());
        let candidate = (0..nvars)
            .filter(|&j| Some(j) != keep)
            .filter_map(|j| {
                let pos = sys.iter().filter(|l| l.a[j].signum() > 0).count();
                let neg = sys.iter().filter(|l| l.a[j].signum() < 0).count();
                (pos + neg > 0).then_some((pos * neg, pos + neg, j))
            })
            .min();
        let Some((_, _, j)) = candidate else {
            return Some(sys);
        };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for l in sys {
            match l.a[j].signum() {
                1 => pos.push(l),
                -1 => neg.push(l),
                _ => rest.push(l),
            }
        }
        for p in &pos {
            for n in &neg {
                let kp = -&n.a[j];
                let kn = p.a[j].clone();
                let a: Vec<Rational> = p
                    .a
                    .iter()
                    .zip(&n.a)
                    .map(|(x, y)| &(&kp * x) + &(&kn * y))
                    .collect();
                let c = &(&kp * &p.c) + &(&kn * &n.c);
                let rel = if p.rel == Rel::Gt || n.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
                let mut l = Lin { a, c, rel };
                l.a[j] = Rational::zero();
                rest.push(l);
            }
        }
        sys = prune(rest);
    }
}

/// Drops duplicate inequalities, keeping the tightest of each direction.
fn prune(sys: Vec<Lin>) -> Vec<Lin> {
    let mut best: HashMap<Vec<Rational>, Lin> = HashMap::new();
    let mut order: Vec<Vec<Rational>> = Vec::new();
    let mut eqs = Vec::new();
    for mut l in sys {
        l.normalize();
        if l.rel == Rel::Eq || l.is_constant() {
            eqs.push(l);
            continue;
        }
        match best.get_mut(&l.a) {
            Some(cur) => {
                let tighter = l.c < cur.c || (l.c == cur.c && l.rel == Rel::Gt);
                if tighter {
                    *cur = l;
                }
            }
            None => {
                order.push(l.a.clone());
                best.insert(l.a.clone(), l);
            }
        }
    }
    eqs.extend(order.into_iter().map(|k| best.remove(&k).expect("present")));
    eqs
}

/// Chooses a value of variable `k` satisfying the one-variable system.
fn pick<R: Rng + ?Sized>(rest: &[Lin], k: usize, rng: &mut R) -> Option<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for l in rest {
        let a = &l.a[k];
        let bound = -&(&l.c / a);
        if l.rel == Rel::Eq {
            let ok = rest.iter().all(|m| {
                let v = &(&m.a[k] * &bound) + &m.c;
                Lin { a: Vec::new(), c: v, rel: m.rel }.constant_ok()
            });
            return ok.then_some(bound);
        }
        let strict = l.rel == Rel::Gt;
        if a.signum() > 0 {
            if lo.as_ref().map_or(true, |(b, s)| bound > *b || (bound == *b && strict && !s)) {
                lo = Some((bound, strict));
            }
        } else if hi.as_ref().map_or(true, |(b, s)| bound < *b || (bound == *b && strict && !s)) {
            hi = Some((bound, strict));
        }
    }
    if let (Some((l, ls)), Some((h, hs))) = (&lo, &hi) {
        if l > h || (l == h && (*ls || *hs)) {
            return None;
        }
    }
    let step = |n: i64, d: i64| Rational::new(n, d);
    Some(match (lo, hi) {
        (Some((l, _)), Some((h, _))) if l == h => l,
        (Some((l, _)), Some((h, _))) => {
            let t = step(rng.gen_range(1..8), 8);
            &l + &(&(&h - &l) * &t)
        }
        (Some((l, _)), None) => &l + &step(rng.gen_range(1..=6), 2),
        (None, Some((h, _))) => &h - &step(rng.gen_range(1..=6), 2),
        (None, None) => step(rng.gen_range(-6..=6), 2),
    })
}
