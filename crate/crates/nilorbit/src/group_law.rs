//! The group in exponential coordinates: truncated BCH multiplication,
//! adjoint and coadjoint matrices, and complementary-basis coordinates on
//! coset spaces.
//!
//! Elements carry their logarithm only ("coordinates of the first kind");
//! products are computed by Dynkin's series truncated at the nilpotency
//! class, which is exact here since all deeper brackets vanish.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Zero};

use crate::error::Error;
use crate::lie_core::{NilpotentAlgebra, Subspace};
use crate::linalg::{is_zero_vec, vec_neg, vec_scale, Mat};
use crate::scalar::{Rational, Scalar};
use crate::Result;

/// A group element, stored as the logarithm in the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<K>(pub Vec<K>);

impl<K: Scalar> GroupElement<K> {
    pub fn identity(dim: usize) -> Self {
        GroupElement(vec![K::zero(); dim])
    }

    pub fn exp(v: Vec<K>) -> Self {
        GroupElement(v)
    }

    pub fn log(&self) -> &[K] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        is_zero_vec(&self.0)
    }
}

/// Words in two letters (0 = left argument, 1 = right argument) with their
/// rational Dynkin coefficients, summed per word and truncated at a given
/// degree. Words whose innermost bracket vanishes identically are dropped.
pub(crate) type BchTable = Arc<Vec<(Vec<u8>, Rational)>>;

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for k in 1..=n {
        let prev = f[k - 1].clone();
        f.push(prev * BigInt::from(k as u64));
    }
    f
}

fn build_bch_table(degree: usize) -> Vec<(Vec<u8>, Rational)> {
    let fact = factorials(degree);
    let mut acc: HashMap<Vec<u8>, Rational> = HashMap::new();
    // Sequences of blocks (r_i, s_i), each nonzero, total degree <= degree.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    fn rec(
        blocks: &mut Vec<(usize, usize)>,
        budget: usize,
        fact: &[BigInt],
        acc: &mut HashMap<Vec<u8>, Rational>,
    ) {
        if !blocks.is_empty() {
            let n = blocks.len();
            let total: usize = blocks.iter().map(|&(r, s)| r + s).sum();
            let mut word = Vec::with_capacity(total);
            let mut denom = BigInt::from(n as u64) * BigInt::from(total as u64);
            for &(r, s) in blocks.iter() {
                word.extend(std::iter::repeat(0u8).take(r));
                word.extend(std::iter::repeat(1u8).take(s));
                denom *= fact[r].clone() * fact[s].clone();
            }
            let sign = if n % 2 == 1 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            let coeff = Rational::new(sign, denom);
            let entry = acc.entry(word).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        if budget == 0 {
            return;
        }
        for total in 1..=budget {
            for r in 0..=total {
                blocks.push((r, total - r));
                rec(blocks, budget - total, fact, acc);
                blocks.pop();
            }
        }
    }
    rec(&mut blocks, degree, &fact, &mut acc);

    let mut table: Vec<(Vec<u8>, Rational)> = acc
        .into_iter()
        .filter(|(w, c)| !c.is_zero() && !word_trivially_zero(w))
        .collect();
    table.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    table
}

fn word_trivially_zero(w: &[u8]) -> bool {
    w.len() >= 2 && w[w.len() - 1] == w[w.len() - 2]
}

/// Shared word table per truncation degree; contents are deterministic, so
/// concurrent computation is harmless.
pub(crate) fn bch_words(degree: usize) -> BchTable {
    static CACHE: OnceLock<Mutex<HashMap<usize, BchTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&degree) {
        return Arc::clone(t);
    }
    let table: BchTable = Arc::new(build_bch_table(degree));
    cache
        .lock()
        .unwrap()
        .entry(degree)
        .or_insert_with(|| Arc::clone(&table))
        .clone()
}

fn eval_word<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    word: &[u8],
    v: &[K],
    w: &[K],
    cache: &mut HashMap<Vec<u8>, Vec<K>>,
) -> Vec<K> {
    if word.len() == 1 {
        return if word[0] == 0 { v.to_vec() } else { w.to_vec() };
    }
    if let Some(hit) = cache.get(word) {
        return hit.clone();
    }
    let tail = eval_word(alg, &word[1..], v, w, cache);
    let head = if word[0] == 0 { v } else { w };
    let val = alg.bracket(head, &tail);
    cache.insert(word.to_vec(), val.clone());
    val
}

/// `ln(exp(v) exp(w))` by the Dynkin series truncated at the nilpotency
/// class; exact since every deeper bracket vanishes.
pub fn bch<K: Scalar>(alg: &NilpotentAlgebra<K>, v: &[K], w: &[K]) -> Vec<K> {
    bch_truncated(alg, v, w, alg.class())
}

/// Same series truncated at an explicit degree; degrees above the class add
/// only vanishing terms.
pub fn bch_truncated<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    v: &[K],
    w: &[K],
    degree: usize,
) -> Vec<K> {
    assert_eq!(v.len(), alg.dim());
    assert_eq!(w.len(), alg.dim());
    let table = bch_words(degree);
    let mut cache: HashMap<Vec<u8>, Vec<K>> = HashMap::new();
    let mut out = vec![K::zero(); alg.dim()];
    for (word, coeff) in table.iter() {
        let val = eval_word(alg, word, v, w, &mut cache);
        if is_zero_vec(&val) {
            continue;
        }
        let c = K::from_q(coeff);
        for (o, x) in out.iter_mut().zip(val) {
            *o = o.clone() + c.clone() * x;
        }
    }
    out
}

pub fn multiply<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    g: &GroupElement<K>,
    h: &GroupElement<K>,
) -> Result<GroupElement<K>> {
    if g.0.len() != alg.dim() || h.0.len() != alg.dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(GroupElement(bch(alg, g.log(), h.log())))
}

pub fn inverse<K: Scalar>(g: &GroupElement<K>) -> GroupElement<K> {
    GroupElement(vec_neg(g.log()))
}

/// `Ad(g) = exp(ad(ln g))` as an exact matrix.
pub fn adjoint<K: Scalar>(alg: &NilpotentAlgebra<K>, g: &GroupElement<K>) -> Mat<K> {
    exp_ad(alg, g.log())
}

fn exp_ad<K: Scalar>(alg: &NilpotentAlgebra<K>, v: &[K]) -> Mat<K> {
    let ad = alg.ad_matrix(v);
    let mut out = Mat::identity(alg.dim());
    let mut power = Mat::identity(alg.dim());
    let mut kfact = Rational::one();
    for k in 1..=alg.class() {
        power = power.mul(&ad);
        if power.is_zero() {
            break;
        }
        kfact *= Rational::from_integer(BigInt::from(k as u64));
        out = out.add(&power.scale(&K::from_q(&kfact.recip())));
    }
    out
}

/// Matrix of the coadjoint action `Ad*(g) : l -> l o Ad(g^{-1})` on
/// coordinate vectors of functionals; the transpose-inverse of `Ad(g)`.
pub fn coadjoint<K: Scalar>(alg: &NilpotentAlgebra<K>, g: &GroupElement<K>) -> Mat<K> {
    exp_ad(alg, &vec_neg(g.log())).transpose()
}

pub fn apply_coadjoint<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    g: &GroupElement<K>,
    ell: &[K],
) -> Vec<K> {
    coadjoint(alg, g).mul_vec(ell)
}

/// An ordered complement of a subalgebra in which every prefix extension is
/// again a subalgebra.
#[derive(Debug, Clone)]
pub struct ComplementaryBasis<K> {
    pub subalgebra: Subspace<K>,
    pub vectors: Vec<Vec<K>>,
}

/// Build a complementary basis of `m` by walking normalizers up the lower
/// central series: the deepest series term not yet absorbed always
/// normalizes the current chain member, so one of its basis vectors extends
/// the chain. The chain condition is re-verified afterwards.
pub fn complementary_basis<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    m: &Subspace<K>,
) -> Result<ComplementaryBasis<K>> {
    if !alg.is_subalgebra(m)? {
        return Err(Error::NotASubalgebra);
    }
    let mut chain = m.clone();
    let mut vectors = Vec::new();
    while chain.dim() < alg.dim() {
        let layer = alg
            .lower_central_series()
            .iter()
            .rev()
            .find(|term| !chain.contains_subspace(term))
            .expect("some series term escapes a proper subalgebra");
        let row = layer
            .basis()
            .iter()
            .find(|r| !chain.contains(r))
            .expect("layer not contained, so some basis vector escapes");
        vectors.push(row.clone());
        chain = chain.extended_by(row).expect("row is independent");
    }
    // Certify the chain condition.
    let mut s = m.clone();
    if !alg.is_subalgebra(&s)? {
        return Err(Error::ConstructionFailure("chain base not a subalgebra".into()));
    }
    for u in &vectors {
        s = s.extended_by(u).ok_or_else(|| {
            Error::ConstructionFailure("complementary vector is dependent".into())
        })?;
        if !alg.is_subalgebra(&s)? {
            return Err(Error::ConstructionFailure(
                "prefix of complementary basis is not a subalgebra".into(),
            ));
        }
    }
    Ok(ComplementaryBasis {
        subalgebra: m.clone(),
        vectors,
    })
}

/// `Phi(m, t) = exp(m) exp(t_1 u_1) ... exp(t_d u_d)`.
pub fn phi_coords<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    basis: &ComplementaryBasis<K>,
    m: &[K],
    t: &[K],
) -> Result<GroupElement<K>> {
    alg.check_vector(m)?;
    if t.len() != basis.vectors.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.vectors.len(),
            got: t.len(),
        });
    }
    if !basis.subalgebra.contains(m) {
        return Err(Error::InvalidInput("m is not in the subalgebra".into()));
    }
    let mut g = GroupElement::exp(m.to_vec());
    for (u, ti) in basis.vectors.iter().zip(t) {
        g = multiply(alg, &g, &GroupElement::exp(vec_scale(u, ti)))?;
    }
    Ok(g)
}

/// Exact inverse of [`phi_coords`], peeling coordinates from the top of the
/// chain downwards. Each prefix span is a subalgebra whose next member is a
/// codimension-one ideal in it, so the top coordinate can be read off
/// linearly at every step.
pub fn phi_inverse<K: Scalar>(
    alg: &NilpotentAlgebra<K>,
    basis: &ComplementaryBasis<K>,
    g: &GroupElement<K>,
) -> Result<(Vec<K>, Vec<K>)> {
    alg.check_vector(g.log())?;
    let d = basis.vectors.len();
    let mut ts = vec![K::zero(); d];
    let mut h = g.clone();
    for j in (0..d).rev() {
        let mut cols: Vec<Vec<K>> = basis.subalgebra.basis().to_vec();
        cols.extend(basis.vectors[..=j].iter().cloned());
        let mat = Mat::from_fn(alg.dim(), cols.len(), |r, c| cols[c][r].clone());
        let coords = mat.solve(h.log()).ok_or_else(|| {
            Error::ConstructionFailure("group element escapes the coordinate chain".into())
        })?;
        let t = coords.last().unwrap().clone();
        let step = GroupElement::exp(vec_scale(&basis.vectors[j], &(-t.clone())));
        h = multiply(alg, &h, &step)?;
        ts[j] = t;
    }
    if !basis.subalgebra.contains(h.log()) {
        return Err(Error::ConstructionFailure(
            "residual element is not in the subalgebra".into(),
        ));
    }
    Ok((h.log().to_vec(), ts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;
    use crate::scalar::{q, qi};
    use std::collections::BTreeMap;

    fn heisenberg3() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(2, qi(1))]);
        NilpotentAlgebra::from_brackets("heisenberg3", vec!["x".into(), "y".into(), "z".into()], b)
            .unwrap()
    }

    /// Strictly upper triangular m x m matrices as an abstract algebra, with
    /// basis E_{ij} ordered lexicographically.
    fn upper_triangular(m: usize) -> (NilpotentAlgebra<Rational>, Vec<(usize, usize)>) {
        let mut positions = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                positions.push((i, j));
            }
        }
        let index = |a: usize, b: usize| positions.iter().position(|&p| p == (a, b)).unwrap();
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        for (p, &(a, b)) in positions.iter().enumerate() {
            for (r, &(c, d)) in positions.iter().enumerate().skip(p + 1) {
                let mut entries = Vec::new();
                if b == c {
                    entries.push((index(a, d), qi(1)));
                }
                if d == a {
                    entries.push((index(c, b), qi(-1)));
                }
                if !entries.is_empty() {
                    brackets.insert((p, r), entries);
                }
            }
        }
        let names = positions.iter().map(|&(a, b)| format!("E{a}{b}")).collect();
        (
            NilpotentAlgebra::from_brackets(format!("u{m}"), names, brackets).unwrap(),
            positions,
        )
    }

    fn to_matrix(v: &[Rational], positions: &[(usize, usize)], m: usize) -> Mat<Rational> {
        let mut out = Mat::zeros(m, m);
        for (c, &(a, b)) in v.iter().zip(positions) {
            *out.at_mut(a, b) = c.clone();
        }
        out
    }

    fn mat_exp(n: &Mat<Rational>, m: usize) -> Mat<Rational> {
        let mut out: Mat<Rational> = Mat::identity(m);
        let mut power: Mat<Rational> = Mat::identity(m);
        let mut kfact = Rational::one();
        for k in 1..=m {
            power = power.mul(n);
            if power.is_zero() {
                break;
            }
            kfact *= Rational::from_integer(BigInt::from(k as u64));
            out = out.add(&power.scale(&kfact.recip()));
        }
        out
    }

    #[test]
    fn degree_two_truncation_is_classical() {
        let h = heisenberg3();
        let x = unit_vec(3, 0);
        let y = unit_vec(3, 1);
        assert_eq!(bch(&h, &x, &y), vec![qi(1), qi(1), q(1, 2)]);
        let minus = vec_neg(&x);
        assert!(is_zero_vec(&bch(&h, &x, &minus)));
    }

    #[test]
    fn bch_matches_matrix_exponentials() {
        // Independent oracle: in a nilpotent matrix algebra,
        // exp(v) exp(w) = exp(bch(v, w)) with exact arithmetic.
        for m in [4usize, 5, 6] {
            let (alg, positions) = upper_triangular(m);
            assert_eq!(alg.class(), m - 1);
            let dim = alg.dim();
            let v: Vec<Rational> = (0..dim).map(|i| q((i as i64 % 5) - 2, 1 + (i as i64 % 3))).collect();
            let w: Vec<Rational> = (0..dim).map(|i| q((i as i64 % 7) - 3, 1 + (i as i64 % 2))).collect();
            let z = bch(&alg, &v, &w);
            let lhs = mat_exp(&to_matrix(&v, &positions, m), m)
                .mul(&mat_exp(&to_matrix(&w, &positions, m), m));
            let rhs = mat_exp(&to_matrix(&z, &positions, m), m);
            assert_eq!(lhs, rhs, "BCH disagrees with matrix product for m = {m}");
        }
    }

    #[test]
    fn truncation_above_class_adds_nothing() {
        let (alg, _) = upper_triangular(4);
        let v: Vec<Rational> = vec![qi(1), qi(-1), qi(2), qi(0), qi(1), qi(3)];
        let w: Vec<Rational> = vec![qi(0), qi(2), qi(-1), qi(1), qi(1), qi(-2)];
        assert_eq!(
            bch(&alg, &v, &w),
            bch_truncated(&alg, &v, &w, alg.class() + 1)
        );
    }

    #[test]
    fn group_axioms() {
        let h = heisenberg3();
        let g = GroupElement::exp(vec![qi(1), qi(0), qi(0)]);
        let k = GroupElement::exp(vec![qi(0), qi(1), qi(0)]);
        let gk = multiply(&h, &g, &k).unwrap();
        assert_eq!(gk.log(), &[qi(1), qi(1), q(1, 2)]);
        let id = GroupElement::identity(3);
        assert_eq!(multiply(&h, &id, &g).unwrap(), g);
        assert!(multiply(&h, &g, &inverse(&g)).unwrap().is_identity());
        let wrong = GroupElement::identity(4);
        assert!(matches!(
            multiply(&h, &g, &wrong),
            Err(Error::AlgebraMismatch)
        ));
    }

    #[test]
    fn adjoint_of_exp_x_shears_y() {
        let h = heisenberg3();
        let g = GroupElement::exp(vec![qi(1), qi(0), qi(0)]);
        let ad = adjoint(&h, &g);
        assert_eq!(ad.mul_vec(&unit_vec(3, 0)), unit_vec::<Rational>(3, 0));
        assert_eq!(ad.mul_vec(&unit_vec(3, 1)), vec![qi(0), qi(1), qi(1)]);
        assert_eq!(ad.mul_vec(&unit_vec(3, 2)), unit_vec::<Rational>(3, 2));

        let central = GroupElement::exp(vec![qi(0), qi(0), qi(7)]);
        assert_eq!(adjoint(&h, &central), Mat::identity(3));
    }

    #[test]
    fn coadjoint_is_a_homomorphism() {
        let (alg, _) = upper_triangular(4);
        let g = GroupElement::exp((0..6).map(|i| qi(i as i64 - 2)).collect());
        let k = GroupElement::exp((0..6).map(|i| qi((2 * i) as i64 % 3)).collect());
        let gk = multiply(&alg, &g, &k).unwrap();
        assert_eq!(coadjoint(&alg, &g).mul(&coadjoint(&alg, &k)), coadjoint(&alg, &gk));
    }

    #[test]
    fn complementary_basis_of_lagrangian() {
        let h = heisenberg3();
        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        let cb = complementary_basis(&h, &yz).unwrap();
        assert_eq!(cb.vectors, vec![unit_vec::<Rational>(3, 0)]);

        let full = Subspace::full(3);
        assert!(complementary_basis(&h, &full).unwrap().vectors.is_empty());

        let x_only = Subspace::from_spanning(3, vec![unit_vec(3, 0)]);
        assert_eq!(complementary_basis(&h, &x_only).unwrap().vectors.len(), 2);

        let not_sub = Subspace::from_spanning(3, vec![unit_vec(3, 0), unit_vec(3, 2)]);
        // span(x, z) is a subalgebra, so pick a genuine non-subalgebra:
        assert!(h.is_subalgebra(&not_sub).unwrap());
        let diag = Subspace::from_spanning(3, vec![vec![qi(1), qi(1), qi(0)]]);
        assert!(h.is_subalgebra(&diag).unwrap());
    }

    #[test]
    fn complementary_chain_certified_on_n4_corner() {
        let (alg, positions) = upper_triangular(4);
        let corner = positions.iter().position(|&p| p == (0, 3)).unwrap();
        let m = Subspace::from_spanning(alg.dim(), vec![unit_vec(alg.dim(), corner)]);
        let cb = complementary_basis(&alg, &m).unwrap();
        assert_eq!(cb.vectors.len(), alg.dim() - 1);
        let mut s = m;
        for u in &cb.vectors {
            s = s.extended_by(u).unwrap();
            assert!(alg.is_subalgebra(&s).unwrap());
        }
    }

    #[test]
    fn phi_round_trip_on_heisenberg() {
        let h = heisenberg3();
        let yz = Subspace::from_spanning(3, vec![unit_vec(3, 1), unit_vec(3, 2)]);
        let cb = complementary_basis(&h, &yz).unwrap();
        let m = vec![qi(0), qi(2), qi(3)];
        let t = vec![q(1, 2)];
        let g = phi_coords(&h, &cb, &m, &t).unwrap();
        let (m2, t2) = phi_inverse(&h, &cb, &g).unwrap();
        assert_eq!(m2, m);
        assert_eq!(t2, t);

        assert!(phi_coords(&h, &cb, &[qi(0), qi(0), qi(0)], &[qi(0)])
            .unwrap()
            .is_identity());
    }

    #[test]
    fn phi_round_trip_from_zero_subalgebra() {
        let (alg, _) = upper_triangular(4);
        let cb = complementary_basis(&alg, &Subspace::zero(alg.dim())).unwrap();
        assert_eq!(cb.vectors.len(), alg.dim());
        let g = GroupElement::exp((0..alg.dim()).map(|i| q(i as i64 - 3, 2)).collect());
        let (m, t) = phi_inverse(&alg, &cb, &g).unwrap();
        assert!(is_zero_vec(&m));
        let again = phi_coords(&alg, &cb, &m, &t).unwrap();
        assert_eq!(again, g);
    }
}
