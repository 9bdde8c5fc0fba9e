//! Coadjoint-orbit computations: the skew form attached to a functional,
//! stabilizers and orbit dimensions, polarized pairs, the Vergne
//! polarization, and a deterministic orbit canonical form that decides
//! orbit equality with an explicit, exactly verified conjugator.
//!
//! The canonical form walks the dual coordinates of a flag of ideals from
//! the bottom. At each step the functional is either moved to zero along a
//! one-parameter coadjoint flow (a jump index) or its value is frozen as
//! part of the canonical data. Because each flag step is an ideal, the flow
//! acts affinely on the coordinate being normalized and fixes everything
//! below, which keeps the loop exact and makes its output a complete orbit
//! invariant.

use crate::error::Error;
use crate::group_law::{apply_coadjoint, inverse, multiply, GroupElement};
use crate::lie_core::{Flag, Functional, NilpotentAlgebra, Subspace};
use crate::linalg::{dot, unit_vec, vec_add, vec_scale, Mat};
use crate::scalar::Scalar;
use crate::Result;

/// A functional together with a subalgebra subordinate to it of maximal
/// dimension, and the certificate data that witnessed maximality.
#[derive(Debug, Clone)]
pub struct PolarizedPair<K> {
    pub ell: Functional<K>,
    pub subalgebra: Subspace<K>,
    /// Rank of the skew form of `ell`; always even.
    pub orbit_dim: usize,
    pub subordinate_checked: bool,
}

/// Canonical data of a coadjoint orbit: the flag indices where the orbit
/// moves, the canonical representative, and a group element mapping the
/// input functional onto it.
#[derive(Debug, Clone)]
pub struct OrbitCanonicalForm<K> {
    pub jump_set: Vec<usize>,
    pub canonical_rep: Functional<K>,
    pub conjugator: GroupElement<K>,
}

/// Outcome of an orbit-equality test; a positive answer carries a verified
/// conjugator `g` with `Ad*(g) ell = ell_prime`.
#[derive(Debug, Clone)]
pub struct SameOrbit<K> {
    pub same: bool,
    pub conjugator: Option<GroupElement<K>>,
}

/// The antisymmetric matrix `B[i][j] = ell([e_i, e_j])`.
pub fn skew_form<K: Scalar>(alg: &NilpotentAlgebra<K>, ell: &[K]) -> Mat<K> {
    assert_eq!(ell.len(), alg.dim());
    let mut b = Mat::zeros(alg.dim(), alg.dim());
    for (&(i, j), entries) in alg.bracket_table() {
        let mut val = K::zero();
        for (k, c) in entries {
            val = val + ell[*k].clone() * c.clone();
        }
        if !val.is_zero() {
            *b.at_mut(i, j) = val.clone();
            *b.at_mut(j, i) = -val;
        }
    }
    b
}

/// The stabilizer subalgebra `{x : ell([x, -]) = 0}`, i.e. the radical of
/// the skew form.
pub fn stabilizer_algebra<K: Scalar>(alg: &NilpotentAlgebra<K>, ell: &[K]) -> Subspace<K> {
    Subspace::from_spanning(alg.dim(), skew_form(alg, ell).kernel())
}

/// Dimension of the coadjoint orbit: the rank of the skew form, always even.
pub fn orbit_dim<K: Scalar>(alg: &NilpotentAlgebra<K>, ell: &[K]) -> Result<usize> {
    let r = skew_form(alg, ell).rank();
    if r % 2 != 0 {
        return Err(Error::OddRank);
    }
    Ok(r)
}

/// Subordination test: `ell([V, V]) = 0`.
pub fn is_subordinate<K: Scalar>(alg: &NilpotentAlgebra<K>, ell: &[K], v: &Subspace<K>) -> bool {
    let basis = v.basis();
    for (a, x) in basis.iter().enumerate() {
        for y in basis.iter().skip(a + 1) {
            if !dot(ell, &alg.bracket(x, y)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Polarization test with a reason string: subordinate and of the maximal
/// dimension `dim(g) - orbit_dim/2`.
pub fn is_polarized<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    v: &Subspace<K>,
) -> Result<(bool, String)> {
    if !alg.is_subalgebra(v)? {
        return Err(Error::NotASubalgebra);
    }
    if !is_subordinate(alg, ell, v) {
        return Ok((false, "not subordinate: ell does not vanish on [V, V]".into()));
    }
    let target = alg.dim() - orbit_dim(alg, ell)? / 2;
    if v.dim() != target {
        return Ok((
            false,
            format!(
                "subordinate but dim {} != {} required for maximality",
                v.dim(),
                target
            ),
        ));
    }
    Ok((true, "polarized".into()))
}

/// The Vergne polarization along a flag of ideals: the sum over flag steps
/// of the radicals of the restricted skew forms. The output is certified
/// with [`is_polarized`] before it is returned.
pub fn vergne_polarization<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    flag: Option<&Flag<K>>,
) -> Result<PolarizedPair<K>> {
    alg.check_vector(ell)?;
    let default;
    let flag = match flag {
        Some(f) => f,
        None => {
            default = alg.jordan_holder_flag();
            &default
        }
    };
    let mut span: Vec<Vec<K>> = Vec::new();
    for step in &flag.steps {
        span.extend(restricted_radical(alg, ell, step));
    }
    let v = Subspace::from_spanning(alg.dim(), span);
    let (ok, reason) = is_polarized(alg, ell, &v)?;
    if !ok {
        return Err(Error::ConstructionFailure(format!(
            "Vergne construction produced a non-polarization: {reason}"
        )));
    }
    Ok(PolarizedPair {
        ell: ell.to_vec(),
        subalgebra: v,
        orbit_dim: orbit_dim(alg, ell)?,
        subordinate_checked: true,
    })
}

/// Radical of the skew form restricted to a subspace, as vectors of the
/// ambient algebra.
fn restricted_radical<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    sub: &Subspace<K>,
) -> Vec<Vec<K>> {
    let basis = sub.basis();
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    let gram = Mat::from_fn(d, d, |i, j| dot(ell, &alg.bracket(&basis[i], &basis[j])));
    gram.kernel()
        .into_iter()
        .map(|coeffs| combine(alg.dim(), &coeffs, basis))
        .collect()
}

fn combine<K: Scalar>(n: usize, coeffs: &[K], basis: &[Vec<K>]) -> Vec<K> {
    let mut v = vec![K::zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            v = vec_add(&v, &vec_scale(b, c));
        }
    }
    v
}

/// Directions allowed when normalizing coordinate `i`: the subalgebra
/// `{v : ell([v, g_{i-1}]) = 0}`. Flows along such directions fix the
/// functional on all of `g_{i-1}` because that step is an ideal.
fn step_stabilizer<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    processed: &Subspace<K>,
) -> Subspace<K> {
    let rows = processed.basis();
    if rows.is_empty() {
        return Subspace::full(alg.dim());
    }
    let n = alg.dim();
    let m = Mat::from_fn(rows.len(), n, |r, c| {
        dot(ell, &alg.bracket(&unit_vec(n, c), &rows[r]))
    });
    Subspace::from_spanning(n, m.kernel())
}

/// Deterministic orbit canonical form along a flag of ideals (the
/// Jordan-Hoelder flag by default). Two functionals have equal canonical
/// data (representative and jump set) exactly when they lie on the same
/// coadjoint orbit, and the conjugator witnesses membership exactly.
pub fn orbit_canonical_form<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    flag: Option<&Flag<K>>,
) -> Result<OrbitCanonicalForm<K>> {
    alg.check_vector(ell)?;
    let default;
    let flag = match flag {
        Some(f) => f,
        None => {
            default = alg.jordan_holder_flag();
            &default
        }
    };
    canonical_form_with_directions(alg, ell, flag, None)
}

/// Canonical form with conjugation directions restricted to a subalgebra
/// (`None` allows the whole algebra); the restricted variant computes
/// canonical forms for the action of the corresponding subgroup.
pub(crate) fn canonical_form_with_directions<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    flag: &Flag<K>,
    allowed: Option<&Subspace<K>>,
) -> Result<OrbitCanonicalForm<K>> {
    let n = alg.dim();
    let mut cur = ell.to_vec();
    let mut conj = GroupElement::identity(n);
    let mut jumps = Vec::new();
    for i in 1..=n {
        let processed = &flag.steps[i - 1];
        let f_i = &flag.directions[i - 1];
        let mut stab = step_stabilizer(alg, &cur, processed);
        if let Some(a) = allowed {
            stab = intersect(&stab, a);
        }
        // Lowest-pivot direction that moves coordinate i.
        let hit = stab.basis().iter().find_map(|v| {
            let rate = dot(&cur, &alg.bracket(v, f_i));
            if rate.is_zero() {
                None
            } else {
                Some((v.clone(), rate))
            }
        });
        let Some((dir, rate)) = hit else {
            continue; // frozen coordinate
        };
        jumps.push(i);
        let value = dot(&cur, f_i);
        if value.is_zero() {
            continue; // jump index, but nothing to move
        }
        // Ad*(exp(t dir)) changes the value at f_i affinely with slope -rate.
        let t = value.div_exact(&rate);
        let g = GroupElement::exp(vec_scale(&dir, &t));
        cur = apply_coadjoint(alg, &g, &cur);
        conj = multiply(alg, &g, &conj)?;
        if !dot(&cur, f_i).is_zero() {
            return Err(Error::NormalizationFailure(i));
        }
    }
    if apply_coadjoint(alg, &conj, ell) != cur {
        return Err(Error::NormalizationFailure(0));
    }
    if allowed.is_none() && jumps.len() != orbit_dim(alg, ell)? {
        return Err(Error::ConstructionFailure(format!(
            "jump set has {} indices but the orbit has dimension {}",
            jumps.len(),
            orbit_dim(alg, ell)?
        )));
    }
    Ok(OrbitCanonicalForm {
        jump_set: jumps,
        canonical_rep: cur,
        conjugator: conj,
    })
}

/// Intersection of two subspaces, canonical.
pub fn intersect<K: Scalar>(a: &Subspace<K>, b: &Subspace<K>) -> Subspace<K> {
    let n = a.ambient_dim();
    assert_eq!(n, b.ambient_dim());
    let rows_a = a.basis();
    if rows_a.is_empty() || b.dim() == n {
        return a.clone();
    }
    // x is in the intersection iff x = sum c_i a_i and the residual of x
    // against b vanishes; the residual is linear, so this is a kernel.
    let residuals: Vec<Vec<K>> = rows_a.iter().map(|r| b.reduce(r)).collect();
    let m = Mat::from_fn(n, rows_a.len(), |r, c| residuals[c][r].clone());
    Subspace::from_spanning(
        n,
        m.kernel()
            .into_iter()
            .map(|x| combine(n, &x, rows_a))
            .collect(),
    )
}

/// Decide whether two functionals lie on the same coadjoint orbit; on a
/// positive answer, return a conjugator `g` with `Ad*(g) ell = ell_prime`,
/// verified exactly before returning.
pub fn same_orbit<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    ell: &[K],
    ell_prime: &[K],
) -> Result<SameOrbit<K>> {
    let flag = alg.jordan_holder_flag();
    let a = orbit_canonical_form(alg, ell, Some(&flag))?;
    let b = orbit_canonical_form(alg, ell_prime, Some(&flag))?;
    if a.canonical_rep != b.canonical_rep || a.jump_set != b.jump_set {
        return Ok(SameOrbit {
            same: false,
            conjugator: None,
        });
    }
    // Ad*(a.conj) ell = rep = Ad*(b.conj) ell', so g = b.conj^{-1} a.conj.
    let g = multiply(alg, &inverse(&b.conjugator), &a.conjugator)?;
    if apply_coadjoint(alg, &g, ell) != ell_prime.to_vec() {
        return Err(Error::ConstructionFailure(
            "conjugator fails exact verification".into(),
        ));
    }
    Ok(SameOrbit {
        same: true,
        conjugator: Some(g),
    })
}
