//! Involutions of a nilpotent Lie algebra and the orbit-theoretic
//! classification of distinguished representations.
//!
//! An involution is an order-two Lie algebra automorphism; its +1 and -1
//! eigenspaces give a Z/2-grading. The dual space carries the twisted
//! action `sigma(phi) = -phi o S`, whose fixed points are exactly the
//! functionals vanishing on the +1 eigenspace. An orbit parameter is
//! distinguished when it is conjugate self-dual, i.e. when the twisted
//! dual of a functional stays on its coadjoint orbit; in that case the
//! orbit contains a fixed functional, and the machinery here produces one
//! explicitly together with a sigma-stable polarization.
//!
//! The witness comes for free from the canonical form: running the orbit
//! normalization along a flag of ideals spanned by sigma-eigenvectors
//! commutes with the twisted action, so the canonical representative of a
//! conjugate self-dual orbit is itself fixed, hence vanishes on the +1
//! eigenspace. No search is required.

use crate::coadjoint::{
    canonical_form_with_directions, is_polarized, same_orbit, vergne_polarization,
    OrbitCanonicalForm, PolarizedPair, SameOrbit,
};
use crate::error::Error;
use crate::group_law::{apply_coadjoint, inverse, multiply, GroupElement};
use crate::lie_core::{Flag, Functional, NilpotentAlgebra, Subspace};
use crate::linalg::{dot, is_zero_vec, unit_vec, vec_add, vec_scale, vec_sub, Mat};
use crate::scalar::Scalar;
use crate::Result;

/// A rational involution of the algebra: a matrix squaring to the identity
/// and respecting brackets, with its eigenspace decomposition.
#[derive(Debug, Clone)]
pub struct Involution<K> {
    matrix: Mat<K>,
    plus: Subspace<K>,
    minus: Subspace<K>,
}

impl<K: Scalar> Involution<K> {
    pub fn new(alg: &NilpotentAlgebra<K>, matrix: Mat<K>) -> Result<Self> {
        let n = alg.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.nrows(),
            });
        }
        if matrix.mul(&matrix) != Mat::identity(n) {
            return Err(Error::NotInvolutive);
        }
        // S[e_i, e_j] = [S e_i, S e_j] on every basis pair; bilinearity
        // extends it to the whole algebra.
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = matrix.mul_vec(&alg.bracket(&unit_vec(n, i), &unit_vec(n, j)));
                let rhs = alg.bracket(
                    &matrix.mul_vec(&unit_vec(n, i)),
                    &matrix.mul_vec(&unit_vec(n, j)),
                );
                if lhs != rhs {
                    return Err(Error::NotHomomorphism {
                        i,
                        j,
                        defect: crate::lie_core::format_vec(&vec_sub(&rhs, &lhs)),
                    });
                }
            }
        }
        let plus = Subspace::from_spanning(n, matrix.sub(&Mat::identity(n)).kernel());
        let minus = Subspace::from_spanning(n, matrix.add(&Mat::identity(n)).kernel());
        if plus.dim() + minus.dim() != n {
            return Err(Error::ConstructionFailure(
                "eigenspaces do not span despite S^2 = I".into(),
            ));
        }
        Ok(Involution {
            matrix,
            plus,
            minus,
        })
    }

    pub fn matrix(&self) -> &Mat<K> {
        &self.matrix
    }

    /// The +1 eigenspace, a subalgebra.
    pub fn plus_space(&self) -> &Subspace<K> {
        &self.plus
    }

    /// The -1 eigenspace.
    pub fn minus_space(&self) -> &Subspace<K> {
        &self.minus
    }

    pub fn apply(&self, v: &[K]) -> Vec<K> {
        self.matrix.mul_vec(v)
    }

    /// Projection onto the +1 eigenspace, `(v + Sv)/2`.
    pub fn p_plus(&self, v: &[K]) -> Vec<K> {
        let half = K::from_q(&crate::scalar::q(1, 2));
        vec_scale(&vec_add(v, &self.apply(v)), &half)
    }

    /// Projection onto the -1 eigenspace, `(v - Sv)/2`.
    pub fn p_minus(&self, v: &[K]) -> Vec<K> {
        let half = K::from_q(&crate::scalar::q(1, 2));
        vec_scale(&vec_sub(v, &self.apply(v)), &half)
    }

    /// Parity of an eigenvector: +1, -1, or `None` for mixed vectors.
    pub fn parity(&self, v: &[K]) -> Option<i8> {
        let sv = self.apply(v);
        if sv == v.to_vec() {
            Some(1)
        } else if sv == crate::linalg::vec_neg(v) {
            Some(-1)
        } else {
            None
        }
    }

    /// The group-level involution in exponential coordinates.
    pub fn apply_group(&self, g: &GroupElement<K>) -> GroupElement<K> {
        GroupElement::exp(self.apply(g.log()))
    }
}

/// The twisted action on the dual: `sigma(phi) = -phi o S`.
pub fn dual_sigma_action<K: Scalar>(sigma: &Involution<K>, phi: &[K]) -> Functional<K> {
    crate::linalg::vec_neg(&sigma.matrix.transpose().mul_vec(phi))
}

/// `phi o p_minus`, which vanishes on the +1 eigenspace; used to sample
/// twisted-fixed functionals.
pub fn anti_invariant_part<K: Scalar>(sigma: &Involution<K>, phi: &[K]) -> Functional<K> {
    let half = K::from_q(&crate::scalar::q(1, 2));
    vec_scale(&vec_sub(phi, &sigma.matrix.transpose().mul_vec(phi)), &half)
}

/// True iff the functional vanishes on the +1 eigenspace, i.e. is fixed by
/// the twisted dual action.
pub fn vanishes_on_plus<K: Scalar>(sigma: &Involution<K>, phi: &[K]) -> bool {
    sigma.plus.basis().iter().all(|b| dot(phi, b).is_zero())
}

/// A flag of ideals spanned by sigma-eigenvectors, refining the lower
/// central series with +1 directions entering each layer first.
#[derive(Debug, Clone)]
pub struct SigmaFlag<K> {
    pub flag: Flag<K>,
    /// Parity of each flag direction.
    pub parities: Vec<i8>,
}

pub fn sigma_stable_flag<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
) -> SigmaFlag<K> {
    let n = alg.dim();
    let mut steps = vec![Subspace::zero(n)];
    let mut directions: Vec<Vec<K>> = Vec::new();
    let mut parities = Vec::new();
    for layer in alg.lower_central_series().iter().rev() {
        // Each series term is sigma-stable, so it splits into eigenparts.
        for sign in [1i8, -1] {
            let part = eigenpart(sigma, layer, sign);
            for row in part.basis().iter().rev() {
                if let Some(next) = steps.last().unwrap().extended_by(row) {
                    steps.push(next);
                    directions.push(row.clone());
                    parities.push(sign);
                }
            }
        }
    }
    debug_assert_eq!(steps.len(), n + 1);
    SigmaFlag {
        flag: Flag { steps, directions },
        parities,
    }
}

fn eigenpart<K: Scalar>(sigma: &Involution<K>, sub: &Subspace<K>, sign: i8) -> Subspace<K> {
    Subspace::from_spanning(
        sub.ambient_dim(),
        sub.basis()
            .iter()
            .map(|b| {
                if sign > 0 {
                    sigma.p_plus(b)
                } else {
                    sigma.p_minus(b)
                }
            })
            .collect(),
    )
}

/// Heisenberg-type decomposition adapted to an involution: vectors x, y, z
/// of pure parity with `[x, y] = z` spanning the center, a complement W
/// commuting with y, and the codimension-one ideal `U0 = <y, z> + W`, all
/// sigma-stable.
#[derive(Debug, Clone)]
pub struct KirillovDecomposition<K> {
    pub x: Vec<K>,
    pub y: Vec<K>,
    pub z: Vec<K>,
    pub w: Subspace<K>,
    pub u0: Subspace<K>,
    pub parity_x: i8,
    pub parity_y: i8,
    pub parity_z: i8,
}

pub fn sigma_kirillov_decomposition<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
) -> Result<KirillovDecomposition<K>> {
    if alg.is_abelian() {
        return Err(Error::AbelianAlgebra);
    }
    if alg.center().dim() != 1 {
        return Err(Error::CenterNotLine(alg.center().dim()));
    }
    let n = alg.dim();
    let z = alg.center().basis()[0].clone();
    let parity_z = sigma.parity(&z).ok_or_else(|| {
        Error::ConstructionFailure("one-dimensional center is not an eigenline".into())
    })?;

    // A sigma-stable two-dimensional ideal containing the center is spanned
    // by z and any eigenvector outside the center of the second upper
    // central term; take the first such, preferring the +1 eigenspace.
    let z2 = second_upper_central(alg);
    let mut found = None;
    'outer: for sign in [1i8, -1] {
        let part = eigenpart(sigma, &z2, sign);
        for row in part.basis() {
            if !alg.center().contains(row) {
                found = Some((row.clone(), sign));
                break 'outer;
            }
        }
    }
    let Some((y, parity_y)) = found else {
        return Err(Error::ConstructionFailure(
            "no eigenvector extends the center inside the second upper central term".into(),
        ));
    };

    // Solve [x0, y] = z, then take the projection of matching parity.
    let map = Mat::from_fn(n, n, |r, c| alg.bracket(&unit_vec(n, c), &y)[r].clone());
    let x0 = map
        .solve(&z)
        .ok_or_else(|| Error::ConstructionFailure("no x with [x, y] = z".into()))?;
    let want = parity_y * parity_z;
    let (x, parity_x) = if want > 0 {
        (sigma.p_plus(&x0), 1)
    } else {
        (sigma.p_minus(&x0), -1)
    };
    if alg.bracket(&x, &y) != z {
        return Err(Error::ConstructionFailure(
            "pure-parity projection of x fails [x, y] = z".into(),
        ));
    }

    // U0 is the centralizer of y, automatically sigma-stable and of
    // codimension one.
    let u0 = Subspace::from_spanning(n, map.kernel());
    if u0.dim() != n - 1 {
        return Err(Error::ConstructionFailure(format!(
            "centralizer of y has dimension {}, expected {}",
            u0.dim(),
            n - 1
        )));
    }
    let span_yz = Subspace::from_spanning(n, vec![y.clone(), z.clone()]);
    let mut w_rows = Vec::new();
    for sign in [1i8, -1] {
        let sub_part = eigenpart(sigma, &span_yz, sign);
        let u0_part = eigenpart(sigma, &u0, sign);
        w_rows.extend(sub_part.complement_in(&u0_part));
    }
    let w = Subspace::from_spanning(n, w_rows);

    let dec = KirillovDecomposition {
        x,
        y,
        z,
        w,
        u0,
        parity_x,
        parity_y,
        parity_z,
    };
    verify_decomposition(alg, sigma, &dec)?;
    Ok(dec)
}

fn verify_decomposition<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
    dec: &KirillovDecomposition<K>,
) -> Result<()> {
    let n = alg.dim();
    let fail = |msg: &str| Err(Error::ConstructionFailure(msg.into()));
    if !alg.center().contains(&dec.z) || alg.center().dim() != 1 {
        return fail("z does not span the center");
    }
    if alg.bracket(&dec.x, &dec.y) != dec.z {
        return fail("[x, y] != z");
    }
    for row in dec.w.basis() {
        if !is_zero_vec(&alg.bracket(&dec.y, row)) {
            return fail("[y, W] != 0");
        }
    }
    let mut all = vec![dec.x.clone(), dec.y.clone(), dec.z.clone()];
    all.extend(dec.w.basis().to_vec());
    if Subspace::from_spanning(n, all).dim() != n || dec.w.dim() != n - 3 {
        return fail("x, y, z, W do not form a direct sum decomposition");
    }
    let yzw = Subspace::from_spanning(
        n,
        [dec.y.clone(), dec.z.clone()]
            .into_iter()
            .chain(dec.w.basis().to_vec())
            .collect(),
    );
    if yzw != dec.u0 || !alg.is_ideal(&dec.u0)? {
        return fail("U0 is not the stated codimension-one ideal");
    }
    for (v, p) in [
        (&dec.x, dec.parity_x),
        (&dec.y, dec.parity_y),
        (&dec.z, dec.parity_z),
    ] {
        if sigma.parity(v) != Some(p) {
            return fail("x, y or z is not a pure eigenvector");
        }
    }
    if !is_sigma_stable(sigma, &dec.w) {
        return fail("W is not sigma-stable");
    }
    Ok(())
}

/// `{v : [v, g] is contained in the center}`, the second term of the upper
/// central series.
fn second_upper_central<K: Scalar>(alg: &NilpotentAlgebra<K>) -> Subspace<K> {
    let n = alg.dim();
    let center = alg.center();
    let mut m = Mat::zeros(n * n, n);
    for i in 0..n {
        let ei = unit_vec::<K>(n, i);
        for j in 0..n {
            let res = center.reduce(&alg.bracket(&ei, &unit_vec(n, j)));
            for (k, c) in res.into_iter().enumerate() {
                *m.at_mut(j * n + k, i) = c;
            }
        }
    }
    Subspace::from_spanning(n, m.kernel())
}

/// Sigma-stable polarization of a functional vanishing on the +1
/// eigenspace: the Vergne construction along a sigma-stable flag.
pub fn sigma_stable_polarization<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
    ell: &[K],
) -> Result<PolarizedPair<K>> {
    alg.check_vector(ell)?;
    if !vanishes_on_plus(sigma, ell) {
        return Err(Error::FunctionalNotAntiInvariant);
    }
    let sf = sigma_stable_flag(alg, sigma);
    let pair = vergne_polarization(alg, ell, Some(&sf.flag))?;
    if !is_sigma_stable(sigma, &pair.subalgebra) {
        return Err(Error::ConstructionFailure(
            "Vergne polarization along the sigma-stable flag is not sigma-stable".into(),
        ));
    }
    Ok(pair)
}

/// Verdict of the distinction classifier; when positive it carries a
/// functional in the orbit vanishing on the +1 eigenspace, the conjugator
/// reaching it, and a sigma-stable polarized pair at the witness.
#[derive(Debug, Clone)]
pub struct DistinctionVerdict<K> {
    pub distinguished: bool,
    pub witness: Option<Functional<K>>,
    pub conjugator: Option<GroupElement<K>>,
    pub sigma_stable_pair: Option<PolarizedPair<K>>,
}

/// Classify an orbit parameter: distinguished means the twisted dual
/// `sigma(ell) = -ell o S` lies on the orbit of `ell`. The canonical form
/// along the sigma-stable flag then produces the vanishing witness
/// directly.
pub fn classify_distinction<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
    ell: &[K],
) -> Result<DistinctionVerdict<K>> {
    alg.check_vector(ell)?;
    let sf = sigma_stable_flag(alg, sigma);
    let twisted = dual_sigma_action(sigma, ell);
    let a = canonical_form_with_directions(alg, ell, &sf.flag, None)?;
    let b = canonical_form_with_directions(alg, &twisted, &sf.flag, None)?;
    let distinguished = a.canonical_rep == b.canonical_rep && a.jump_set == b.jump_set;
    if !distinguished {
        return Ok(DistinctionVerdict {
            distinguished: false,
            witness: None,
            conjugator: None,
            sigma_stable_pair: None,
        });
    }
    let witness = a.canonical_rep.clone();
    if !vanishes_on_plus(sigma, &witness) {
        // Equivariance of the eigenflag normalization forbids this.
        return Err(Error::WitnessSearchFailure);
    }
    if apply_coadjoint(alg, &a.conjugator, ell) != witness {
        return Err(Error::WitnessSearchFailure);
    }
    let pair = sigma_stable_polarization(alg, sigma, &witness)?;
    Ok(DistinctionVerdict {
        distinguished: true,
        witness: Some(witness),
        conjugator: Some(a.conjugator),
        sigma_stable_pair: Some(pair),
    })
}

/// Orbit equality under the fixed subgroup only: the canonical-form loop
/// restricted to conjugation directions inside the +1 eigenspace.
pub fn uplus_same_orbit<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
    ell: &[K],
    ell_prime: &[K],
) -> Result<SameOrbit<K>> {
    let sf = sigma_stable_flag(alg, sigma);
    let a = uplus_canonical_form(alg, sigma, ell, &sf)?;
    let b = uplus_canonical_form(alg, sigma, ell_prime, &sf)?;
    if a.canonical_rep != b.canonical_rep || a.jump_set != b.jump_set {
        return Ok(SameOrbit {
            same: false,
            conjugator: None,
        });
    }
    let g = multiply(alg, &inverse(&b.conjugator), &a.conjugator)?;
    if !sigma.plus_space().contains(g.log()) {
        return Err(Error::ConstructionFailure(
            "restricted conjugator escapes the fixed subalgebra".into(),
        ));
    }
    if apply_coadjoint(alg, &g, ell) != ell_prime.to_vec() {
        return Err(Error::ConstructionFailure(
            "restricted conjugator fails exact verification".into(),
        ));
    }
    Ok(SameOrbit {
        same: true,
        conjugator: Some(g),
    })
}

pub fn uplus_canonical_form<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
    ell: &[K],
    sf: &SigmaFlag<K>,
) -> Result<OrbitCanonicalForm<K>> {
    canonical_form_with_directions(alg, ell, &sf.flag, Some(sigma.plus_space()))
}

/// Report of the parametrization consistency check: full-orbit equality of
/// twisted-fixed functionals must coincide with equality under the fixed
/// subgroup alone.
#[derive(Debug, Clone)]
pub struct CdualReport {
    pub pairs_checked: usize,
    /// `(i, j, same_full_orbit, same_uplus_orbit)` for each violating pair.
    pub violations: Vec<(usize, usize, bool, bool)>,
}

pub fn cdual_parametrization_check<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    sigma: &Involution<K>,
    sample: &[Functional<K>],
) -> Result<CdualReport> {
    for ell in sample {
        alg.check_vector(ell)?;
        if !vanishes_on_plus(sigma, ell) {
            return Err(Error::FunctionalNotAntiInvariant);
        }
    }
    let mut report = CdualReport {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for i in 0..sample.len() {
        for j in (i + 1)..sample.len() {
            let full = same_orbit(alg, &sample[i], &sample[j])?.same;
            let restricted = uplus_same_orbit(alg, sigma, &sample[i], &sample[j])?.same;
            report.pairs_checked += 1;
            if full != restricted {
                report.violations.push((i, j, full, restricted));
            }
        }
    }
    Ok(report)
}

pub fn is_sigma_stable<K: Scalar>(sigma: &Involution<K>, v: &Subspace<K>) -> bool {
    let sv = Subspace::from_spanning(
        v.ambient_dim(),
        v.basis().iter().map(|r| sigma.apply(r)).collect(),
    );
    sv == *v
}

/// The Z/2-grading of the eigenspaces under the bracket.
pub fn grading_holds<K: Scalar>(alg: &NilpotentAlgebra<K>, sigma: &Involution<K>) -> bool {
    let pairs = [
        (sigma.plus_space(), sigma.plus_space(), sigma.plus_space()),
        (sigma.plus_space(), sigma.minus_space(), sigma.minus_space()),
        (sigma.minus_space(), sigma.minus_space(), sigma.plus_space()),
    ];
    pairs.iter().all(|(a, b, target)| {
        a.basis().iter().all(|u| {
            b.basis()
                .iter()
                .all(|v| target.contains(&alg.bracket(u, v)))
        })
    })
}

/// Re-check a polarized pair's certificate.
pub fn certify_pair<K: Scalar>(alg: &NilpotentAlgebra<K>, pair: &PolarizedPair<K>) -> Result<bool> {
    Ok(is_polarized(alg, &pair.ell, &pair.subalgebra)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};
    use std::collections::BTreeMap;

    fn heisenberg3() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(2, qi(1))]);
        NilpotentAlgebra::from_brackets("heisenberg3", vec!["x".into(), "y".into(), "z".into()], b)
            .unwrap()
    }

    fn heisenberg5() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(4, qi(1))]);
        b.insert((2, 3), vec![(4, qi(1))]);
        NilpotentAlgebra::from_brackets(
            "heisenberg5",
            ["x1", "y1", "x2", "y2", "z"].iter().map(|s| s.to_string()).collect(),
            b,
        )
        .unwrap()
    }

    fn diag(entries: &[i64]) -> Mat<Rational> {
        let n = entries.len();
        Mat::from_fn(n, n, |i, j| if i == j { qi(entries[i]) } else { qi(0) })
    }

    fn sign_involution_h3(alg: &NilpotentAlgebra<Rational>) -> Involution<Rational> {
        Involution::new(alg, diag(&[-1, 1, -1])).unwrap()
    }

    #[test]
    fn sign_involution_eigenspaces() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        assert_eq!(s.plus_space().dim(), 1);
        assert!(s.plus_space().contains(&unit_vec(3, 1)));
        assert_eq!(s.minus_space().dim(), 2);
        assert!(grading_holds(&h, &s));
    }

    #[test]
    fn identity_involution_is_valid() {
        let h = heisenberg3();
        let s = Involution::new(&h, Mat::identity(3)).unwrap();
        assert_eq!(s.plus_space().dim(), 3);
        assert_eq!(s.minus_space().dim(), 0);
    }

    #[test]
    fn swap_without_sign_is_rejected() {
        let h = heisenberg3();
        // x <-> y, z fixed: [Sx, Sy] = [y, x] = -z but S z = z.
        let mut m = Mat::zeros(3, 3);
        *m.at_mut(0, 1) = qi(1);
        *m.at_mut(1, 0) = qi(1);
        *m.at_mut(2, 2) = qi(1);
        match Involution::new(&h, m) {
            Err(Error::NotHomomorphism { i, j, .. }) => assert_eq!((i, j), (0, 1)),
            other => panic!("expected NotHomomorphism, got {other:?}"),
        }
    }

    #[test]
    fn non_involutive_rejected() {
        let h = heisenberg3();
        let mut m = Mat::identity(3);
        *m.at_mut(0, 0) = qi(2);
        assert!(matches!(Involution::new(&h, m), Err(Error::NotInvolutive)));
    }

    #[test]
    fn dual_action_examples() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        let zero = vec![qi(0); 3];
        assert_eq!(dual_sigma_action(&s, &zero), zero);

        let zstar = unit_vec::<Rational>(3, 2);
        assert_eq!(dual_sigma_action(&s, &zstar), zstar);

        let phi = vec![qi(2), qi(-3), qi(5)];
        assert_eq!(dual_sigma_action(&s, &dual_sigma_action(&s, &phi)), phi);

        assert!(vanishes_on_plus(&s, &anti_invariant_part(&s, &phi)));
    }

    #[test]
    fn dual_action_intertwines_coadjoint() {
        let h = heisenberg5();
        let s = Involution::new(&h, diag(&[-1, 1, -1, 1, -1])).unwrap();
        let phi = vec![qi(1), qi(2), qi(-1), qi(0), qi(3)];
        let g = GroupElement::exp(vec![qi(2), qi(-1), qi(1), qi(1), qi(0)]);
        let lhs = dual_sigma_action(&s, &apply_coadjoint(&h, &g, &phi));
        let rhs = apply_coadjoint(&h, &s.apply_group(&g), &dual_sigma_action(&s, &phi));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kirillov_decomposition_h3_sign() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        let dec = sigma_kirillov_decomposition(&h, &s).unwrap();
        assert_eq!(dec.parity_x, -1);
        assert_eq!(dec.parity_y, 1);
        assert_eq!(dec.parity_z, -1);
        assert!(dec.w.is_zero());
        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        assert_eq!(dec.u0, yz);
    }

    #[test]
    fn kirillov_decomposition_h5_sign() {
        let h = heisenberg5();
        let s = Involution::new(&h, diag(&[-1, 1, -1, 1, -1])).unwrap();
        let dec = sigma_kirillov_decomposition(&h, &s).unwrap();
        // W is the second hyperbolic pair.
        assert_eq!(dec.w.dim(), 2);
        assert!(dec.w.contains(&unit_vec(5, 2)));
        assert!(dec.w.contains(&unit_vec(5, 3)));
        assert!(is_sigma_stable(&s, &dec.w));
    }

    #[test]
    fn kirillov_decomposition_identity_sigma() {
        let h = heisenberg3();
        let s = Involution::new(&h, Mat::identity(3)).unwrap();
        let dec = sigma_kirillov_decomposition(&h, &s).unwrap();
        assert_eq!((dec.parity_x, dec.parity_y, dec.parity_z), (1, 1, 1));
    }

    #[test]
    fn kirillov_decomposition_rejects_wide_center() {
        let free: NilpotentAlgebra<Rational> = {
            let mut b = BTreeMap::new();
            b.insert((0, 1), vec![(3, qi(1))]);
            b.insert((0, 2), vec![(4, qi(1))]);
            b.insert((1, 2), vec![(5, qi(1))]);
            NilpotentAlgebra::from_brackets(
                "free2step3",
                ["x1", "x2", "x3", "z12", "z13", "z23"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                b,
            )
            .unwrap()
        };
        let s = Involution::new(&free, diag(&[-1, -1, -1, 1, 1, 1])).unwrap();
        assert!(matches!(
            sigma_kirillov_decomposition(&free, &s),
            Err(Error::CenterNotLine(3))
        ));
    }

    #[test]
    fn sigma_polarization_examples() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        let zstar = unit_vec::<Rational>(3, 2);
        let pair = sigma_stable_polarization(&h, &s, &zstar).unwrap();
        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        assert_eq!(pair.subalgebra, yz);
        assert!(is_sigma_stable(&s, &pair.subalgebra));

        let zero = vec![qi(0); 3];
        let pair0 = sigma_stable_polarization(&h, &s, &zero).unwrap();
        assert_eq!(pair0.subalgebra, Subspace::full(3));

        let flip = Involution::new(
            &h,
            Mat::from_rows(vec![
                vec![qi(0), qi(-1), qi(0)],
                vec![qi(-1), qi(0), qi(0)],
                vec![qi(0), qi(0), qi(-1)],
            ]),
        )
        .unwrap();
        // U+ = span(x - y); z* vanishes there, x* does not.
        let pair2 = sigma_stable_polarization(&h, &flip, &zstar).unwrap();
        assert!(is_sigma_stable(&flip, &pair2.subalgebra));
        assert!(certify_pair(&h, &pair2).unwrap());
        let xstar = unit_vec::<Rational>(3, 0);
        assert!(matches!(
            sigma_stable_polarization(&h, &flip, &xstar),
            Err(Error::FunctionalNotAntiInvariant)
        ));
    }

    #[test]
    fn distinction_examples_h3() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        let zstar = unit_vec::<Rational>(3, 2);
        let v = classify_distinction(&h, &s, &zstar).unwrap();
        assert!(v.distinguished);
        assert_eq!(v.witness.as_ref().unwrap(), &zstar);
        assert!(certify_pair(&h, v.sigma_stable_pair.as_ref().unwrap()).unwrap());

        // With sigma = id the twisted dual is -ell, and ell(z) is an orbit
        // invariant, so z* is not distinguished.
        let id = Involution::new(&h, Mat::identity(3)).unwrap();
        let v2 = classify_distinction(&h, &id, &zstar).unwrap();
        assert!(!v2.distinguished);

        let zero = vec![qi(0); 3];
        let v3 = classify_distinction(&h, &s, &zero).unwrap();
        assert!(v3.distinguished);
        assert!(is_zero_vec(v3.witness.as_ref().unwrap()));
    }

    #[test]
    fn distinction_is_orbit_invariant() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        let ell = vec![qi(5), qi(0), qi(1)];
        let g = GroupElement::exp(vec![qi(1), qi(7), qi(-2)]);
        let moved = apply_coadjoint(&h, &g, &ell);
        let a = classify_distinction(&h, &s, &ell).unwrap();
        let b = classify_distinction(&h, &s, &moved).unwrap();
        assert_eq!(a.distinguished, b.distinguished);
        assert!(a.distinguished);
        assert!(vanishes_on_plus(&s, a.witness.as_ref().unwrap()));
        assert!(
            same_orbit(&h, a.witness.as_ref().unwrap(), b.witness.as_ref().unwrap())
                .unwrap()
                .same
        );
    }

    #[test]
    fn cdual_check_h3_sign() {
        let h = heisenberg3();
        let s = sign_involution_h3(&h);
        let zstar = unit_vec::<Rational>(3, 2);
        let twice = vec![qi(0), qi(0), qi(2)];
        let mixed = vec![qi(1), qi(0), qi(1)];
        let report =
            cdual_parametrization_check(&h, &s, &[zstar.clone(), twice, mixed.clone()]).unwrap();
        assert_eq!(report.pairs_checked, 3);
        assert!(report.violations.is_empty());

        // z* and z* + x* are U+-equivalent via exp(t y).
        let r = uplus_same_orbit(&h, &s, &zstar, &mixed).unwrap();
        assert!(r.same);
        let g = r.conjugator.unwrap();
        assert!(s.plus_space().contains(g.log()));
    }
}
