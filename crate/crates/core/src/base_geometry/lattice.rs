use std::fmt;

use serde::Serialize;

use crate::novikov::Scalar;

use super::GeometryError;

pub type Matrix3 = [[i64; 3]; 3];

const IDENTITY: Matrix3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

/// An integral affine map `x ↦ L·x + b` of chart coordinates (q₁, q₂, s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineMap {
    pub linear: Matrix3,
    pub translation: [i64; 3],
}

fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat_vec(a: &Matrix3, v: &[i64; 3]) -> [i64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

pub(crate) fn transpose(a: &Matrix3) -> Matrix3 {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| a[j][i]))
}

pub fn det(a: &Matrix3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Inverse of a unimodular integer matrix.
fn unimodular_inverse(a: &Matrix3) -> Option<Matrix3> {
    let d = det(a);
    if d.abs() != 1 {
        return None;
    }
    let c = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let k: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let minor = a[r[0]][k[0]] * a[r[1]][k[1]] - a[r[0]][k[1]] * a[r[1]][k[0]];
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    Some([0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i) * d)))
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { linear: IDENTITY, translation: [0; 3] }
    }

    pub fn linear(linear: Matrix3) -> Self {
        AffineMap { linear, translation: [0; 3] }
    }

    pub fn is_unimodular(&self) -> bool {
        det(&self.linear).abs() == 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let lb = mat_vec(&self.linear, &other.translation);
        AffineMap {
            linear: mat_mul(&self.linear, &other.linear),
            translation: [0, 1, 2].map(|i| lb[i] + self.translation[i]),
        }
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = unimodular_inverse(&self.linear)?;
        let t = mat_vec(&inv, &self.translation);
        Some(AffineMap { linear: inv, translation: t.map(|x| -x) })
    }

    pub fn apply<S: Scalar>(&self, x: &[S; 3]) -> [S; 3] {
        [0, 1, 2].map(|i| {
            (0..3).fold(S::from_int(self.translation[i]), |acc, k| {
                acc + S::from_int(self.linear[i][k]) * x[k].clone()
            })
        })
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}", self.linear, self.translation)
    }
}

/// The change of coordinates χ_{to} ∘ χ_{from}⁻¹ over the tube side `side`.
pub fn transition(from: usize, to: usize, side: Side) -> Result<AffineMap, GeometryError> {
    let shear = |col: usize| {
        let mut m = IDENTITY;
        m[2][col] = 1;
        AffineMap::linear(m)
    };
    let forward = |a: usize, b: usize| match (a, b, side) {
        (1, 2, Side::Minus) => Some(shear(0)),
        (2, 3, Side::Minus) => Some(shear(1)),
        (1, 2, Side::Plus) | (2, 3, Side::Plus) => Some(AffineMap::identity()),
        _ => None,
    };
    if let Some(m) = forward(from, to) {
        return Ok(m);
    }
    if let Some(m) = forward(to, from) {
        return Ok(m.inverse().expect("shears are unimodular"));
    }
    Err(GeometryError::InvalidTransition(format!("({from}, {to}, {side})")))
}

/// One step `(from, to, side)` of a loop of charts.
pub type LoopStep = (usize, usize, Side);

/// The composite `last ∘ … ∘ first` of the transitions along a closed loop.
pub fn monodromy(steps: &[LoopStep]) -> Result<AffineMap, GeometryError> {
    let Some(first) = steps.first() else {
        return Err(GeometryError::NonComposable("empty loop".into()));
    };
    let mut acc = AffineMap::identity();
    let mut at = first.0;
    for &(from, to, side) in steps {
        if from != at {
            return Err(GeometryError::NonComposable(format!("step starts at U{from}, loop is at U{at}")));
        }
        acc = transition(from, to, side)?.compose(&acc);
        at = to;
    }
    if at != first.0 {
        return Err(GeometryError::NonComposable(format!("loop ends at U{at}, started at U{}", first.0)));
    }
    Ok(acc)
}

/// Outcome of [`DiskLattice::check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskCheck {
    pub ok: bool,
    pub checked: usize,
    pub diagnostics: Vec<String>,
}

/// Disk classes in the frames {σ₁, σ₂, ∂β_k} of π₁(L_q) ≅ ℤ³, one per chart.
///
/// Classes are named by their ± factor types; switching factor i from + to −
/// adds σ_i.
#[derive(Clone, Debug)]
pub struct DiskLattice {
    transitions: Vec<((usize, usize, Side), Matrix3)>,
}

impl Default for DiskLattice {
    fn default() -> Self {
        Self::standard()
    }
}

impl DiskLattice {
    pub fn standard() -> Self {
        let mut transitions = Vec::new();
        for (a, b) in [(1, 2), (2, 3)] {
            for side in [Side::Plus, Side::Minus] {
                let m = transition(a, b, side).expect("valid pair").linear;
                transitions.push(((a, b, side), m));
            }
        }
        DiskLattice { transitions }
    }

    /// Replaces one transition matrix (used for negative controls).
    pub fn with_transition(mut self, from: usize, to: usize, side: Side, m: Matrix3) -> Self {
        for (key, mat) in &mut self.transitions {
            if *key == (from, to, side) {
                *mat = m;
            }
        }
        self
    }

    fn matrix(&self, from: usize, to: usize, side: Side) -> Matrix3 {
        self.transitions
            .iter()
            .find(|(k, _)| *k == (from, to, side))
            .map(|(_, m)| *m)
            .expect("transition present")
    }

    pub fn sigma(i: usize) -> [i64; 3] {
        if i == 1 {
            [1, 0, 0]
        } else {
            [0, 1, 0]
        }
    }

    /// β₁ with factor signs (s₁, s₂), in the frame of U₁.
    pub fn beta1(s1: Side, s2: Side) -> [i64; 3] {
        [(s1 == Side::Minus) as i64, (s2 == Side::Minus) as i64, 1]
    }

    /// β₂ with factor sign s, in the frame of U₂.
    pub fn beta2(s: Side) -> [i64; 3] {
        [0, (s == Side::Minus) as i64, 1]
    }

    /// β₃ in the frame of U₃.
    pub fn beta3() -> [i64; 3] {
        [0, 0, 1]
    }

    /// Verifies the β-matchings across every tube, the σ-relations and the
    /// shear amounts as exact lattice identities.
    pub fn check(&self) -> DiskCheck {
        use Side::{Minus, Plus};
        let mut diagnostics = Vec::new();
        let mut checked = 0;
        let mut expect = |cond: bool, what: String| {
            checked += 1;
            if !cond {
                diagnostics.push(what);
            }
        };
        let sub = |a: [i64; 3], b: [i64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        let add = |a: [i64; 3], b: [i64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];

        for ((a, b, side), m) in &self.transitions {
            expect(det(m).abs() == 1, format!("transition ({a},{b},{side}) is not unimodular: {m:?}"));
        }

        // Across 𝒩₁±: β₂± in U₂ is β₁(side, ±) in U₁.
        for side in [Plus, Minus] {
            let lt = transpose(&self.matrix(1, 2, side));
            for s in [Plus, Minus] {
                let got = mat_vec(&lt, &Self::beta2(s));
                let want = Self::beta1(side, s);
                expect(got == want, format!("on N1{side}: beta2{s} maps to {got:?}, expected beta1{side}{s} = {want:?}"));
            }
        }
        // Across 𝒩₂±: β₃ in U₃ is β₂± in U₂.
        for side in [Plus, Minus] {
            let lt = transpose(&self.matrix(2, 3, side));
            let got = mat_vec(&lt, &Self::beta3());
            let want = Self::beta2(side);
            expect(got == want, format!("on N2{side}: beta3 maps to {got:?}, expected beta2{side} = {want:?}"));
        }

        // σ-relations.
        expect(sub(Self::beta2(Minus), Self::beta2(Plus)) == Self::sigma(2), "sigma2 != beta2- - beta2+".into());
        expect(
            sub(Self::beta1(Minus, Plus), Self::beta1(Plus, Plus)) == Self::sigma(1),
            "sigma1 != beta1-+ - beta1++".into(),
        );
        expect(
            sub(Self::beta1(Plus, Minus), Self::beta1(Plus, Plus)) == Self::sigma(2),
            "sigma2 != beta1+- - beta1++".into(),
        );
        expect(
            Self::beta1(Minus, Minus) == add(add(Self::sigma(1), Self::sigma(2)), Self::beta1(Plus, Plus)),
            "beta1-- != sigma1 + sigma2 + beta1++".into(),
        );
        expect(
            sub(Self::beta1(Minus, Plus), Self::beta1(Plus, Plus))
                == sub(Self::beta1(Minus, Minus), Self::beta1(Plus, Minus)),
            "beta1-+ - beta1++ != beta1-- - beta1+-".into(),
        );

        // Shear amounts: on the − side the third coordinate moves by
        // E(σ₁) = q₁ (resp. E(σ₂) = q₂), the energy differences of the β's.
        for (a, b, i) in [(1, 2, 1), (2, 3, 2)] {
            let m = self.matrix(a, b, Minus);
            let diff = sub(m[2], IDENTITY[2]);
            expect(diff == Self::sigma(i), format!("({a},{b},-) shears by {diff:?}, expected sigma{i}"));
            for r in 0..2 {
                expect(m[r] == IDENTITY[r], format!("({a},{b},-) moves q{}", r + 1));
            }
            let p = self.matrix(a, b, Plus);
            expect(p == IDENTITY, format!("({a},{b},+) is not the identity"));
        }

        DiskCheck { ok: diagnostics.is_empty(), checked, diagnostics }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::Rational;

    #[test]
    fn transition_examples() {
        assert_eq!(transition(1, 2, Side::Plus).unwrap(), AffineMap::identity());
        let x = [5, 7, 11].map(Rational::from_integer);
        let y = transition(1, 2, Side::Minus).unwrap().apply(&x);
        assert_eq!(y, [5, 7, 16].map(Rational::from_integer));
        let z = transition(2, 3, Side::Minus).unwrap().apply(&[0, 5, 2].map(Rational::from_integer));
        assert_eq!(z, [0, 5, 7].map(Rational::from_integer));
        assert!(transition(1, 3, Side::Plus).is_err());
        assert_eq!(
            transition(2, 1, Side::Minus).unwrap().compose(&transition(1, 2, Side::Minus).unwrap()),
            AffineMap::identity()
        );
    }

    #[test]
    fn monodromy_examples() {
        let m1 = monodromy(&[(1, 2, Side::Minus), (2, 1, Side::Plus)]).unwrap();
        assert_eq!(m1.linear, [[1, 0, 0], [0, 1, 0], [1, 0, 1]]);
        assert_eq!(m1.translation, [0; 3]);
        let m2 = monodromy(&[(2, 3, Side::Minus), (3, 2, Side::Plus)]).unwrap();
        assert_eq!(m2.linear, [[1, 0, 0], [0, 1, 0], [0, 1, 1]]);
        let triv = monodromy(&[(1, 2, Side::Plus), (2, 1, Side::Plus)]).unwrap();
        assert_eq!(triv, AffineMap::identity());
        assert!(monodromy(&[(1, 2, Side::Plus), (3, 2, Side::Plus)]).is_err());
        assert!(monodromy(&[(1, 2, Side::Plus)]).is_err());
        assert!(m1.is_unimodular() && m2.is_unimodular());
    }

    #[test]
    fn disk_relations_hold() {
        let c = DiskLattice::standard().check();
        assert!(c.ok, "{:?}", c.diagnostics);
        assert!(c.checked > 10);
    }

    #[test]
    fn corrupted_transition_is_detected() {
        let bad = DiskLattice::standard().with_transition(1, 2, Side::Minus, [[1, 0, 0], [0, 1, 0], [2, 0, 1]]);
        let c = bad.check();
        assert!(!c.ok);
        assert!(c.diagnostics.iter().any(|d| d.contains("N1-")));
    }
}
