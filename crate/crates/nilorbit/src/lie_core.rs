//! Nilpotent Lie algebras from structure constants, and their structural
//! queries: center, lower central series, subalgebra and ideal tests,
//! Jordan-Hoelder flags, quotients.
//!
//! An algebra is defined on a fixed basis `e_0, ..., e_{n-1}` by the
//! brackets `[e_i, e_j]` for `i < j`; antisymmetry is forced by storage.
//! Validation checks the Jacobi identity exactly and that the lower central
//! series terminates, and caches the series, the center and the nilpotency
//! class. Values are immutable after construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{is_zero_vec, unit_vec, vec_scale, vec_sub, Mat};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::Result;

/// Element of the dual space: its value on each basis vector.
pub type Functional<K> = Vec<K>;

/// A linear subspace in canonical form: reduced row echelon basis with
/// lowest-index pivots. Two equal subspaces have identical representation,
/// so `==` decides subspace equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<K> {
    ambient: usize,
    rows: Vec<Vec<K>>,
    pivots: Vec<usize>,
}

impl<K: Scalar> Subspace<K> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_spanning(ambient, (0..ambient).map(|i| unit_vec(ambient, i)).collect())
    }

    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<K>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "spanning vector of wrong length");
        }
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let mut m = Mat::from_rows(vectors);
        let pivots = m.rref_in_place();
        let rows = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Residual of `v` after elimination against the basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = r[p].clone();
                r = vec_sub(&r, &vec_scale(row, &c));
            }
        }
        r
    }

    pub fn contains(&self, v: &[K]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.clone());
        Self::from_spanning(self.ambient, rows)
    }

    /// The subspace extended by one vector, or `None` if `v` is dependent.
    pub fn extended_by(&self, v: &[K]) -> Option<Self> {
        if self.contains(v) {
            return None;
        }
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Some(Self::from_spanning(self.ambient, rows))
    }

    /// Greedy complement of `self` inside `sup`: rows of `sup`'s canonical
    /// basis that extend `self`, in basis order.
    pub fn complement_in(&self, sup: &Self) -> Vec<Vec<K>> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for row in sup.basis() {
            if let Some(ext) = cur.extended_by(row) {
                cur = ext;
                out.push(row.clone());
            }
        }
        out
    }
}

/// An increasing chain of ideals `0 = g_0 < g_1 < ... < g_n`, together with
/// the direction vector added at each step, so `(directions[0..i])` spans a
/// complement of `g_0` in `g_i`.
#[derive(Debug, Clone)]
pub struct Flag<K> {
    pub steps: Vec<Subspace<K>>,
    pub directions: Vec<Vec<K>>,
}

impl<K: Scalar> Flag<K> {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// JSON description of an algebra. Unknown fields are rejected; rationals
/// are strings `p/q` or `p`; bracket indices are zero-based with `i < j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    /// Map from basis index (as decimal string, JSON keys being strings) to
    /// the rational coefficient of that basis vector in `[e_i, e_j]`.
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct NilpotentAlgebra<K> {
    name: String,
    dim: usize,
    basis_names: Vec<String>,
    /// `[e_i, e_j]` for `i < j`, as sparse coordinate lists.
    brackets: BTreeMap<(usize, usize), Vec<(usize, K)>>,
    /// Nonzero terms of the lower central series: `C^1 = g, ..., C^class`.
    lcs: Vec<Subspace<K>>,
    center: Subspace<K>,
    class: usize,
}

impl<K: Scalar> NilpotentAlgebra<K> {
    /// Validate structure constants and build the algebra with its cached
    /// series, center and class.
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        raw: BTreeMap<(usize, usize), Vec<(usize, K)>>,
    ) -> Result<Self> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut brackets = BTreeMap::new();
        for ((i, j), entries) in raw {
            if i >= j {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket indices must satisfy i < j, got ({i}, {j})"
                )));
            }
            if j >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket index {j} out of range for dimension {dim}"
                )));
            }
            let mut acc: BTreeMap<usize, K> = BTreeMap::new();
            for (k, c) in entries {
                if k >= dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket coefficient index {k} out of range for dimension {dim}"
                    )));
                }
                let cur = acc.entry(k).or_insert_with(K::zero);
                *cur = cur.clone() + c;
            }
            let entries: Vec<(usize, K)> =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !entries.is_empty() {
                brackets.insert((i, j), entries);
            }
        }

        let mut alg = NilpotentAlgebra {
            name: name.into(),
            dim,
            basis_names,
            brackets,
            lcs: Vec::new(),
            center: Subspace::zero(dim),
            class: 0,
        };
        alg.check_jacobi()?;
        alg.compute_series()?;
        alg.center = alg.compute_center();
        debug_assert!(alg.center.dim() >= 1);
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let ei = unit_vec::<K>(self.dim, i);
                    let ej = unit_vec::<K>(self.dim, j);
                    let ek = unit_vec::<K>(self.dim, k);
                    let mut defect = self.bracket(&self.bracket(&ei, &ej), &ek);
                    defect = crate::linalg::vec_add(&defect, &self.bracket(&self.bracket(&ej, &ek), &ei));
                    defect = crate::linalg::vec_add(&defect, &self.bracket(&self.bracket(&ek, &ei), &ej));
                    if !is_zero_vec(&defect) {
                        return Err(Error::JacobiViolation {
                            i,
                            j,
                            k,
                            defect: format_vec(&defect),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_series(&mut self) -> Result<()> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let prev = series.last().unwrap();
            if prev.is_zero() {
                series.pop();
                break;
            }
            let mut span = Vec::new();
            for i in 0..self.dim {
                let ei = unit_vec::<K>(self.dim, i);
                for row in prev.basis() {
                    let b = self.bracket(&ei, row);
                    if !is_zero_vec(&b) {
                        span.push(b);
                    }
                }
            }
            let next = Subspace::from_spanning(self.dim, span);
            if next.dim() == prev.dim() {
                return Err(Error::NotNilpotent);
            }
            if next.is_zero() {
                break;
            }
            series.push(next);
        }
        self.class = series.len();
        self.lcs = series;
        Ok(())
    }

    fn compute_center(&self) -> Subspace<K> {
        // v is central iff [v, e_j] = 0 for all j; stack those conditions.
        let mut m = Mat::zeros(self.dim * self.dim, self.dim);
        for i in 0..self.dim {
            let ei = unit_vec::<K>(self.dim, i);
            for j in 0..self.dim {
                let b = self.bracket(&ei, &unit_vec::<K>(self.dim, j));
                for (k, c) in b.into_iter().enumerate() {
                    *m.at_mut(j * self.dim + k, i) = c;
                }
            }
        }
        Subspace::from_spanning(self.dim, m.kernel())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn center(&self) -> &Subspace<K> {
        &self.center
    }

    /// Nonzero terms of the lower central series, `C^1` first.
    pub fn lower_central_series(&self) -> &[Subspace<K>] {
        &self.lcs
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize), Vec<(usize, K)>> {
        &self.brackets
    }

    /// The bracket `[v, w]`, exact.
    pub fn bracket(&self, v: &[K], w: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.dim);
        assert_eq!(w.len(), self.dim);
        let mut out = vec![K::zero(); self.dim];
        for (&(i, j), entries) in &self.brackets {
            if (v[i].is_zero() || w[j].is_zero()) && (v[j].is_zero() || w[i].is_zero()) {
                continue;
            }
            let coeff = v[i].clone() * w[j].clone() - v[j].clone() * w[i].clone();
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in entries {
                out[*k] = out[*k].clone() + coeff.clone() * c.clone();
            }
        }
        out
    }

    /// Matrix of `ad(v) = [v, -]` acting on columns.
    pub fn ad_matrix(&self, v: &[K]) -> Mat<K> {
        let cols: Vec<Vec<K>> = (0..self.dim)
            .map(|j| self.bracket(v, &unit_vec(self.dim, j)))
            .collect();
        Mat::from_fn(self.dim, self.dim, |i, j| cols[j][i].clone())
    }

    pub fn check_vector(&self, v: &[K]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, s: &Subspace<K>) -> Result<bool> {
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: s.ambient_dim(),
            });
        }
        for (a, x) in s.basis().iter().enumerate() {
            for y in s.basis().iter().skip(a + 1) {
                if !s.contains(&self.bracket(x, y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_ideal(&self, s: &Subspace<K>) -> Result<bool> {
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: s.ambient_dim(),
            });
        }
        for i in 0..self.dim {
            let ei = unit_vec::<K>(self.dim, i);
            for x in s.basis() {
                if !s.contains(&self.bracket(&ei, x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A deterministic Jordan-Hoelder flag of ideals, one dimension per step.
    ///
    /// The descending lower central series is refined layer by layer; inside
    /// a layer the canonical basis vectors of the larger term enter the flag
    /// in descending pivot order. Everything strictly between consecutive
    /// series terms is automatically an ideal, so every step is an ideal of
    /// the full algebra.
    pub fn jordan_holder_flag(&self) -> Flag<K> {
        let mut steps = vec![Subspace::zero(self.dim)];
        let mut directions = Vec::new();
        for layer in self.lcs.iter().rev() {
            for row in layer.basis().iter().rev() {
                if let Some(next) = steps.last().unwrap().extended_by(row) {
                    steps.push(next);
                    directions.push(row.clone());
                }
            }
        }
        debug_assert_eq!(steps.len(), self.dim + 1);
        Flag { steps, directions }
    }

    /// Quotient by an ideal: the algebra on a complement basis plus the
    /// projection matrix onto the quotient coordinates.
    pub fn quotient(&self, ideal: &Subspace<K>) -> Result<(NilpotentAlgebra<K>, Mat<K>)> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let full = Subspace::full(self.dim);
        let comp = ideal.complement_in(&full);
        let q = comp.len();
        // Change of basis: columns are ideal basis then complement vectors.
        let mut cols: Vec<Vec<K>> = ideal.basis().to_vec();
        cols.extend(comp.iter().cloned());
        let m = Mat::from_fn(self.dim, self.dim, |i, j| cols[j][i].clone());
        let minv = m.inverse().expect("change of basis is invertible");
        let proj = Mat::from_fn(q, self.dim, |i, j| minv.at(ideal.dim() + i, j).clone());

        let mut brackets = BTreeMap::new();
        for a in 0..q {
            for b in (a + 1)..q {
                let img = proj.mul_vec(&self.bracket(&comp[a], &comp[b]));
                let entries: Vec<(usize, K)> = img
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !entries.is_empty() {
                    brackets.insert((a, b), entries);
                }
            }
        }
        // Name quotient coordinates after the standard vectors that represent them.
        let names = comp
            .iter()
            .map(|v| {
                let p = v.iter().position(|c| !c.is_zero()).unwrap();
                self.basis_names[p].clone()
            })
            .collect();
        let alg = NilpotentAlgebra::from_brackets(format!("{}/ideal", self.name), names, brackets)?;
        Ok((alg, proj))
    }
}

impl NilpotentAlgebra<Rational> {
    /// Load and validate an algebra from its JSON description.
    pub fn load(spec: &AlgebraSpec) -> Result<Self> {
        if spec.dim != spec.basis.len() {
            return Err(Error::InvalidAlgebra(format!(
                "dim is {} but {} basis names given",
                spec.dim,
                spec.basis.len()
            )));
        }
        let mut raw: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for b in &spec.brackets {
            if raw.contains_key(&(b.i, b.j)) {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate bracket entry for ({}, {})",
                    b.i, b.j
                )));
            }
            let mut entries = Vec::new();
            for (k, c) in &b.coeffs {
                let idx: usize = k
                    .parse()
                    .map_err(|_| Error::InvalidAlgebra(format!("bad coefficient index {k:?}")))?;
                entries.push((idx, parse_rational(c)?));
            }
            raw.insert((b.i, b.j), entries);
        }
        Self::from_brackets(spec.name.clone(), spec.basis.clone(), raw)
    }

    pub fn load_json(json: &str) -> Result<Self> {
        let spec: AlgebraSpec =
            serde_json::from_str(json).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        Self::load(&spec)
    }

    /// The JSON description this algebra round-trips through.
    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: self.name.clone(),
            dim: self.dim,
            basis: self.basis_names.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), entries)| BracketSpec {
                    i,
                    j,
                    coeffs: entries
                        .iter()
                        .map(|(k, c)| (k.to_string(), c.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }
}

pub fn format_vec<K: Scalar>(v: &[K]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    pub fn heisenberg3() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(2, qi(1))]);
        NilpotentAlgebra::from_brackets(
            "heisenberg3",
            vec!["x".into(), "y".into(), "z".into()],
            b,
        )
        .unwrap()
    }

    fn n4() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(3, qi(1))]); // [e12, e23] = e13
        b.insert((1, 2), vec![(4, qi(1))]); // [e23, e34] = e24
        b.insert((0, 4), vec![(5, qi(1))]); // [e12, e24] = e14
        b.insert((2, 3), vec![(5, qi(-1))]); // [e34, e13] = -e14
        NilpotentAlgebra::from_brackets(
            "n4",
            ["e12", "e23", "e34", "e13", "e24", "e14"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            b,
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_class_and_center() {
        let h = heisenberg3();
        assert_eq!(h.class(), 2);
        assert_eq!(h.center().dim(), 1);
        assert!(h.center().contains(&[qi(0), qi(0), qi(1)]));
    }

    #[test]
    fn abelian_center_is_everything() {
        let a = NilpotentAlgebra::<Rational>::from_brackets(
            "ab2",
            vec!["e1".into(), "e2".into()],
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(a.class(), 1);
        assert_eq!(a.center().dim(), 2);
    }

    #[test]
    fn so3_like_is_rejected() {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(2, qi(1))]); // [x,y] = z
        b.insert((1, 2), vec![(0, qi(1))]); // [y,z] = x
        let err = NilpotentAlgebra::from_brackets(
            "so3ish",
            vec!["x".into(), "y".into(), "z".into()],
            b,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotNilpotent));
    }

    #[test]
    fn jacobi_violation_reported_with_triple() {
        // [x,y] = z, [x,z] = x breaks Jacobi on (x, y, z): the cyclic sum is -z.
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(2, qi(1))]);
        b.insert((0, 2), vec![(0, qi(1))]);
        let err = NilpotentAlgebra::from_brackets(
            "bad",
            vec!["x".into(), "y".into(), "z".into()],
            b,
        )
        .unwrap_err();
        match err {
            Error::JacobiViolation { i, j, k, .. } => assert_eq!((i, j, k), (0, 1, 2)),
            other => panic!("expected JacobiViolation, got {other:?}"),
        }
    }

    #[test]
    fn n4_center_is_the_corner() {
        let a = n4();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.class(), 3);
        assert_eq!(a.center().dim(), 1);
        assert!(a.center().contains(&unit_vec::<Rational>(6, 5)));
    }

    #[test]
    fn subalgebra_and_ideal_tests() {
        let h = heisenberg3();
        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        assert!(h.is_subalgebra(&yz).unwrap());
        assert!(h.is_ideal(&yz).unwrap());
        let x = Subspace::from_spanning(3, vec![unit_vec(3, 0)]);
        assert!(h.is_subalgebra(&x).unwrap());
        assert!(!h.is_ideal(&x).unwrap());
        let bad = Subspace::<Rational>::zero(5);
        assert!(h.is_subalgebra(&bad).is_err());
    }

    #[test]
    fn heisenberg_flag_matches_lagrangian() {
        let h = heisenberg3();
        let flag = h.jordan_holder_flag();
        assert_eq!(flag.steps.len(), 4);
        let z = Subspace::from_spanning(3, vec![unit_vec(3, 2)]);
        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        assert_eq!(flag.steps[1], z);
        assert_eq!(flag.steps[2], yz);
        for step in &flag.steps {
            assert!(h.is_ideal(step).unwrap());
        }
    }

    #[test]
    fn flags_are_ideal_chains_with_unit_increments() {
        for alg in [heisenberg3(), n4()] {
            let flag = alg.jordan_holder_flag();
            for (i, step) in flag.steps.iter().enumerate() {
                assert_eq!(step.dim(), i);
                assert!(alg.is_ideal(step).unwrap());
            }
        }
    }

    #[test]
    fn quotients_of_heisenberg() {
        let h = heisenberg3();
        let z = Subspace::from_spanning(3, vec![unit_vec(3, 2)]);
        let (q1, proj) = h.quotient(&z).unwrap();
        assert_eq!(q1.dim(), 2);
        assert!(q1.is_abelian());
        // pi([a, b]) = [pi a, pi b] on a sample.
        let a = vec![qi(1), qi(2), qi(0)];
        let b = vec![qi(0), qi(1), qi(5)];
        let lhs = proj.mul_vec(&h.bracket(&a, &b));
        let rhs = q1.bracket(&proj.mul_vec(&a), &proj.mul_vec(&b));
        assert_eq!(lhs, rhs);

        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        let (q2, _) = h.quotient(&yz).unwrap();
        assert_eq!(q2.dim(), 1);
        assert!(q2.is_abelian());

        let x = Subspace::from_spanning(3, vec![unit_vec(3, 0)]);
        assert!(matches!(h.quotient(&x), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn n4_quotient_by_center_structure() {
        // dim 5, class 2, derived algebra of dimension 2, center of dimension 2.
        let a = n4();
        let (q, _) = a.quotient(a.center()).unwrap();
        assert_eq!(q.dim(), 5);
        assert_eq!(q.class(), 2);
        assert_eq!(q.lower_central_series()[1].dim(), 2);
        assert_eq!(q.center().dim(), 2);
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let json = r#"{
            "name": "heisenberg3",
            "dim": 3,
            "basis": ["x", "y", "z"],
            "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}]
        }"#;
        let h = NilpotentAlgebra::load_json(json).unwrap();
        assert_eq!(h.class(), 2);
        let again =
            NilpotentAlgebra::load_json(&serde_json::to_string(&h.to_spec()).unwrap()).unwrap();
        assert_eq!(again.bracket_table(), h.bracket_table());

        let unknown_field = json.replace("\"dim\"", "\"extra\": 1, \"dim\"");
        assert!(NilpotentAlgebra::load_json(&unknown_field).is_err());

        let bad_rational = json.replace("\"1\"", "\"1.5\"");
        assert!(matches!(
            NilpotentAlgebra::load_json(&bad_rational),
            Err(Error::MalformedRational(_))
        ));

        let bad_order = json.replace("\"i\": 0, \"j\": 1", "\"i\": 1, \"j\": 0");
        assert!(NilpotentAlgebra::load_json(&bad_order).is_err());
    }

    #[test]
    fn zero_dim_rejected() {
        let err =
            NilpotentAlgebra::<Rational>::from_brackets("empty", Vec::new(), BTreeMap::new())
                .unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
    }
}
