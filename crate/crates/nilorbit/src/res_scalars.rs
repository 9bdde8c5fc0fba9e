//! Restriction of scalars: view an algebra over a number field F as a
//! rational algebra of dimension multiplied by the degree, carry
//! functionals across via the field trace, and compare polarizations on
//! both sides.
//!
//! The F-side computations reuse the generic kernels at `K = NfElem`; the
//! restricted side is an ordinary rational algebra revalidated on
//! construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::coadjoint::{is_polarized, orbit_dim, stabilizer_algebra};
use crate::error::Error;
use crate::lie_core::{NilpotentAlgebra, Subspace};
use crate::linalg::Mat;
use crate::number_field::{NfElem, NumberField};
use crate::scalar::{Rational, Scalar};
use crate::Result;

/// An F-algebra together with its restriction to the rationals.
#[derive(Debug, Clone)]
pub struct RestrictedAlgebra {
    pub field: Arc<NumberField>,
    pub original: NilpotentAlgebra<NfElem>,
    pub restricted: NilpotentAlgebra<Rational>,
}

impl RestrictedAlgebra {
    /// Flat index of `e_i (x) a^j`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.field.degree() + j
    }
}

/// Reinterpret a rational algebra as an algebra over F (structure constants
/// embedded through the canonical inclusion of the rationals).
pub fn embed_algebra(
    alg: &NilpotentAlgebra<Rational>,
    field: &Arc<NumberField>,
) -> NilpotentAlgebra<NfElem> {
    let raw: BTreeMap<(usize, usize), Vec<(usize, NfElem)>> = alg
        .bracket_table()
        .iter()
        .map(|(&key, entries)| {
            (
                key,
                entries
                    .iter()
                    .map(|(k, c)| (*k, NfElem::from_q(c)))
                    .collect(),
            )
        })
        .collect();
    NilpotentAlgebra::from_brackets(
        format!("{}/{}", alg.name(), field.name()),
        alg.basis_names().to_vec(),
        raw,
    )
    .expect("embedding preserves validity")
}

/// The Weil restriction at the level of structure constants: a rational
/// algebra on the basis `e_i (x) a^j`, revalidated over the rationals.
pub fn restrict_algebra(
    alg_f: &NilpotentAlgebra<NfElem>,
    field: &Arc<NumberField>,
) -> Result<RestrictedAlgebra> {
    let n = alg_f.dim();
    let m = field.degree();
    let idx = |i: usize, j: usize| i * m + j;
    let mut raw: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    for j in 0..m {
        let mut c = vec![Rational::zero(); m];
        c[j] = num::One::one();
        powers.push(c);
    }
    for (&(i, j), entries) in alg_f.bracket_table() {
        for a in 0..m {
            for b in 0..m {
                let u = idx(i, a);
                let v = idx(j, b);
                // i < j guarantees u < v.
                let factor = field.mul_coords(&powers[a], &powers[b]);
                let mut out = Vec::new();
                for (k, coeff) in entries {
                    let coords = field.mul_coords(&field.coords_of(coeff), &factor);
                    for (jj, c) in coords.into_iter().enumerate() {
                        if !c.is_zero() {
                            out.push((idx(*k, jj), c));
                        }
                    }
                }
                if !out.is_empty() {
                    raw.insert((u, v), out);
                }
            }
        }
    }
    let mut names = Vec::with_capacity(n * m);
    for base in alg_f.basis_names() {
        for j in 0..m {
            names.push(match j {
                0 => base.clone(),
                1 => format!("{base}.a"),
                _ => format!("{base}.a{j}"),
            });
        }
    }
    let restricted = NilpotentAlgebra::from_brackets(
        format!("Res_{}({})", field.name(), alg_f.name()),
        names,
        raw,
    )?;
    Ok(RestrictedAlgebra {
        field: Arc::clone(field),
        original: alg_f.clone(),
        restricted,
    })
}

/// `ell_K = Tr o ell` in restricted coordinates: the value on `e_i (x) a^j`
/// is the trace of `a^j ell(e_i)`.
pub fn restrict_functional(field: &Arc<NumberField>, ell: &[NfElem]) -> Vec<Rational> {
    let m = field.degree();
    let mut out = Vec::with_capacity(ell.len() * m);
    for v in ell {
        let coords = field.coords_of(v);
        for j in 0..m {
            let mut aj = vec![Rational::zero(); m];
            aj[j] = num::One::one();
            out.push(field.trace_coords(&field.mul_coords(&aj, &coords)));
        }
    }
    out
}

/// Matrix of the rational-linear map `ell -> ell_K`, block diagonal with
/// one trace-form block per algebra coordinate. Its exact invertibility is
/// the bijectivity claim.
pub fn restriction_matrix(field: &Arc<NumberField>, n: usize) -> Mat<Rational> {
    let m = field.degree();
    let mut block = Mat::zeros(m, m);
    for j in 0..m {
        for k in 0..m {
            let mut aj = vec![Rational::zero(); m];
            aj[j] = num::One::one();
            let mut ak = vec![Rational::zero(); m];
            ak[k] = num::One::one();
            *block.at_mut(j, k) = field.trace_coords(&field.mul_coords(&aj, &ak));
        }
    }
    Mat::from_fn(n * m, n * m, |r, c| {
        if r / m == c / m {
            block.at(r % m, c % m).clone()
        } else {
            Rational::zero()
        }
    })
}

/// Pull a functional on the restricted algebra back to an F-valued one;
/// exact inverse of [`restrict_functional`].
pub fn functional_from_restricted(
    field: &Arc<NumberField>,
    phi: &[Rational],
) -> Result<Vec<NfElem>> {
    let m = field.degree();
    if phi.len() % m != 0 {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: phi.len(),
        });
    }
    let n = phi.len() / m;
    let mat = restriction_matrix(field, 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let rhs = &phi[i * m..(i + 1) * m];
        let coords = mat
            .solve(rhs)
            .ok_or_else(|| Error::ConstructionFailure("trace form not invertible".into()))?;
        out.push(field.element(coords));
    }
    Ok(out)
}

/// Restriction of an F-subspace: spanned by `b (x) a^j` over all F-basis
/// vectors `b` of the subspace.
pub fn restrict_subspace(field: &Arc<NumberField>, sub: &Subspace<NfElem>) -> Subspace<Rational> {
    let m = field.degree();
    let n = sub.ambient_dim();
    let mut rows = Vec::new();
    for b in sub.basis() {
        for j in 0..m {
            let mut aj = vec![Rational::zero(); m];
            aj[j] = num::One::one();
            let mut flat = vec![Rational::zero(); n * m];
            for (i, coeff) in b.iter().enumerate() {
                let coords = field.mul_coords(&aj, &field.coords_of(coeff));
                for (k, c) in coords.into_iter().enumerate() {
                    flat[i * m + k] = c;
                }
            }
            rows.push(flat);
        }
    }
    Subspace::from_spanning(n * m, rows)
}

/// Flatten an F-vector to restricted coordinates.
pub fn embed_vector(field: &Arc<NumberField>, v: &[NfElem]) -> Vec<Rational> {
    let m = field.degree();
    let mut flat = vec![Rational::zero(); v.len() * m];
    for (i, e) in v.iter().enumerate() {
        for (k, c) in field.coords_of(e).into_iter().enumerate() {
            flat[i * m + k] = c;
        }
    }
    flat
}

/// Report of the two-sided polarization check.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub f_side_polarized: bool,
    pub q_side_polarized: bool,
}

impl CorrespondenceReport {
    pub fn agree(&self) -> bool {
        self.f_side_polarized == self.q_side_polarized
    }
}

/// Evaluate the polarization property on both sides of restriction; the
/// two verdicts must always agree, and a disagreement is reported as a
/// counterexample rather than an error.
pub fn check_polarization_correspondence(
    res: &RestrictedAlgebra,
    ell: &[NfElem],
    v: &Subspace<NfElem>,
) -> Result<CorrespondenceReport> {
    let f_side = is_polarized(&res.original, ell, v)?.0;
    let ell_k = restrict_functional(&res.field, ell);
    let v_k = restrict_subspace(&res.field, v);
    let q_side = is_polarized(&res.restricted, &ell_k, &v_k)?.0;
    Ok(CorrespondenceReport {
        f_side_polarized: f_side,
        q_side_polarized: q_side,
    })
}

/// Stabilizer dimensions on both sides; the rational one is the degree
/// times the F-side one.
pub fn stabilizer_dims(res: &RestrictedAlgebra, ell: &[NfElem]) -> (usize, usize) {
    let f_dim = stabilizer_algebra(&res.original, ell).dim();
    let q_dim = stabilizer_algebra(&res.restricted, &restrict_functional(&res.field, ell)).dim();
    (f_dim, q_dim)
}

/// Orbit dimensions on both sides (F-side counted over F).
pub fn orbit_dims(res: &RestrictedAlgebra, ell: &[NfElem]) -> Result<(usize, usize)> {
    Ok((
        orbit_dim(&res.original, ell)?,
        orbit_dim(&res.restricted, &restrict_functional(&res.field, ell))?,
    ))
}

/// The scalar twist `ell -> a^{-1} ell` on functionals.
pub fn twist<K: Scalar>(ell: &[K], a: &K) -> Result<Vec<K>> {
    let inv = a.inv().ok_or_else(|| Error::InvalidInput("twist by zero".into()))?;
    Ok(ell.iter().map(|c| c.clone() * inv.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coadjoint::vergne_polarization;
    use crate::number_field::{gaussian_rationals, rational_field, sqrt2_field};
    use crate::scalar::qi;
    use num::One;
    use std::collections::BTreeMap as Map;

    fn heisenberg3() -> NilpotentAlgebra<Rational> {
        let mut b = Map::new();
        b.insert((0, 1), vec![(2, qi(1))]);
        NilpotentAlgebra::from_brackets("heisenberg3", vec!["x".into(), "y".into(), "z".into()], b)
            .unwrap()
    }

    #[test]
    fn restriction_of_h3_over_qi() {
        let f = gaussian_rationals();
        let h3f = embed_algebra(&heisenberg3(), &f);
        let res = restrict_algebra(&h3f, &f).unwrap();
        assert_eq!(res.restricted.dim(), 6);
        assert_eq!(res.restricted.class(), 2);
        // [x(x)1, y(x)i] = z(x)i.
        let u = crate::linalg::unit_vec::<Rational>(6, res.index(0, 0));
        let v = crate::linalg::unit_vec::<Rational>(6, res.index(1, 1));
        let out = res.restricted.bracket(&u, &v);
        assert_eq!(out[res.index(2, 1)], qi(1));
        // [x(x)i, y(x)i] = z(x)i^2 = -z(x)1.
        let u2 = crate::linalg::unit_vec::<Rational>(6, res.index(0, 1));
        let out2 = res.restricted.bracket(&u2, &v);
        assert_eq!(out2[res.index(2, 0)], qi(-1));
    }

    #[test]
    fn degree_one_restriction_is_identity() {
        let f = rational_field();
        let h3f = embed_algebra(&heisenberg3(), &f);
        let res = restrict_algebra(&h3f, &f).unwrap();
        assert_eq!(res.restricted.dim(), 3);
        assert_eq!(
            res.restricted.bracket_table(),
            heisenberg3().bracket_table()
        );
    }

    #[test]
    fn center_of_sqrt2_restriction() {
        let f = sqrt2_field();
        let h3f = embed_algebra(&heisenberg3(), &f);
        let res = restrict_algebra(&h3f, &f).unwrap();
        let c = res.restricted.center();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&crate::linalg::unit_vec(6, res.index(2, 0))));
        assert!(c.contains(&crate::linalg::unit_vec(6, res.index(2, 1))));
    }

    #[test]
    fn functional_trace_values() {
        let f = gaussian_rationals();
        // ell = z* with value 1 in F.
        let ell = vec![NfElem::zero(), NfElem::zero(), NfElem::one()];
        let ell_k = restrict_functional(&f, &ell);
        assert_eq!(ell_k[4], qi(2)); // Tr(1) = 2 on z(x)1
        assert_eq!(ell_k[5], qi(0)); // Tr(i) = 0 on z(x)i

        let zero = vec![NfElem::zero(); 3];
        assert!(restrict_functional(&f, &zero).iter().all(Zero::is_zero));
    }

    #[test]
    fn restriction_map_is_bijective() {
        for field in [gaussian_rationals(), sqrt2_field()] {
            let mat = restriction_matrix(&field, 3);
            assert!(mat.inverse().is_some());
        }
        // Round trip through the inverse map.
        let f = gaussian_rationals();
        let ell = vec![
            f.element(vec![qi(1), qi(2)]),
            NfElem::zero(),
            f.element(vec![qi(0), qi(-3)]),
        ];
        let back = functional_from_restricted(&f, &restrict_functional(&f, &ell)).unwrap();
        assert_eq!(back, ell);
    }

    #[test]
    fn polarization_correspondence_h3_qi() {
        let f = gaussian_rationals();
        let h3f = embed_algebra(&heisenberg3(), &f);
        let res = restrict_algebra(&h3f, &f).unwrap();
        let ell = vec![NfElem::zero(), NfElem::zero(), NfElem::one()];
        // Lagrangian span_F(y, z).
        let v = Subspace::from_spanning(
            3,
            vec![
                crate::linalg::unit_vec::<NfElem>(3, 1),
                crate::linalg::unit_vec::<NfElem>(3, 2),
            ],
        );
        let rep = check_polarization_correspondence(&res, &ell, &v).unwrap();
        assert!(rep.f_side_polarized && rep.q_side_polarized);

        // Vergne polarization over F also corresponds.
        let pair = vergne_polarization(&res.original, &ell, None).unwrap();
        let rep2 = check_polarization_correspondence(&res, &ell, &pair.subalgebra).unwrap();
        assert!(rep2.agree() && rep2.f_side_polarized);

        // Trivial pair.
        let zero = vec![NfElem::zero(); 3];
        let all = Subspace::full(3);
        let rep3 = check_polarization_correspondence(&res, &zero, &all).unwrap();
        assert!(rep3.agree() && rep3.f_side_polarized);
    }

    #[test]
    fn stabilizer_dimension_relation() {
        let f = gaussian_rationals();
        let h3f = embed_algebra(&heisenberg3(), &f);
        let res = restrict_algebra(&h3f, &f).unwrap();
        let i = f.gen();
        let ell = vec![NfElem::zero(), i.clone(), NfElem::one() + i];
        let (df, dq) = stabilizer_dims(&res, &ell);
        assert_eq!(dq, f.degree() * df);
        let (of, oq) = orbit_dims(&res, &ell).unwrap();
        assert_eq!(oq, f.degree() * of);
    }

    #[test]
    fn twist_is_inverse_scaling() {
        let ell = vec![qi(2), qi(4)];
        assert_eq!(twist(&ell, &qi(2)).unwrap(), vec![qi(1), qi(2)]);
        assert!(twist(&ell, &qi(0)).is_err());
    }
}
