//! The brute-force finite-field oracle: the group over F_p with its exact
//! BCH law, coadjoint orbits by breadth-first search, character tables in
//! exact cyclotomic arithmetic, and distinction multiplicities by direct
//! summation.
//!
//! This module is deliberately self-contained: it carries its own dense
//! mod-p arithmetic rather than instantiating the generic rational kernels,
//! so that its verdicts are an independent check on the exact-arithmetic
//! path. Conjugation and the coadjoint action are precomputed as generator
//! matrices (conjugation is linear in exponential coordinates), which keeps
//! the enumeration kernels free of BCH evaluations.

mod characters;
mod cyclotomic;
mod distinction;
mod orbits;

pub use characters::{kirillov_character, verify_character_table, CharacterTableReport};
pub use cyclotomic::CyclotomicNumber;
pub use distinction::{
    cross_validate, distinction_multiplicity, finite_distinction_report, orbit_vanishing_count,
    reduce_involution, uplus_basis_mod_p, uplus_log_vectors, CrossValidationReport, CrossValidationRow,
    DistinctionRow, FiniteDistinctionReport,
};
pub use orbits::{
    conjugacy_classes, orbit_bfs, orbit_bfs_with, orbit_table, ConjClass, FiniteOrbit,
    FiniteOrbitTable,
};

use num::{BigInt, Zero};

use crate::error::Error;
use crate::group_law::bch_words;
use crate::lie_core::NilpotentAlgebra;
use crate::scalar::Rational;
use crate::Result;

/// A nilpotent algebra reduced modulo an admissible prime, with the group
/// law and action generators precomputed.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    name: String,
    p: u64,
    dim: usize,
    class: usize,
    /// Dense structure constants `c[i][j][k]`, antisymmetry included.
    brackets: Vec<u64>,
    /// BCH words with coefficients reduced mod p.
    bch_table: Vec<(Vec<u8>, u64)>,
    /// `Ad(exp(e_i))` mod p; conjugation by `exp(e_i)` is linear in log
    /// coordinates with exactly this matrix.
    ad_gens: Vec<Vec<Vec<u64>>>,
    /// `Ad*(exp(e_i))` mod p acting on functional coordinates.
    coad_gens: Vec<Vec<Vec<u64>>>,
}

impl FiniteAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn group_order(&self) -> u64 {
        self.p.pow(self.dim as u32)
    }

    /// Number of points of the dual space, equal to the group order.
    pub fn dual_size(&self) -> usize {
        (self.p as usize).pow(self.dim as u32)
    }

    pub fn bracket(&self, v: &[u64], w: &[u64]) -> Vec<u64> {
        let n = self.dim;
        let p = self.p;
        let mut out = vec![0u64; n];
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            for j in 0..n {
                if w[j] == 0 || i == j {
                    continue;
                }
                let c = v[i] * w[j] % p;
                if c == 0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    let t = self.brackets[base + k];
                    if t != 0 {
                        out[k] = (out[k] + c * t) % p;
                    }
                }
            }
        }
        out
    }

    /// `ln(exp(v) exp(w))` over F_p via the reduced word table.
    pub fn bch(&self, v: &[u64], w: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out: Vec<u64> = v.iter().zip(w).map(|(a, b)| (a + b) % p).collect();
        for (word, coeff) in &self.bch_table {
            let mut acc = if word[word.len() - 1] == 0 {
                v.to_vec()
            } else {
                w.to_vec()
            };
            for &letter in word[..word.len() - 1].iter().rev() {
                let head = if letter == 0 { v } else { w };
                acc = self.bracket(head, &acc);
                if acc.iter().all(|&c| c == 0) {
                    break;
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = (*o + coeff * a) % p;
            }
        }
        out
    }

    pub fn mul(&self, g: &[u64], h: &[u64]) -> Vec<u64> {
        self.bch(g, h)
    }

    pub fn inv(&self, g: &[u64]) -> Vec<u64> {
        g.iter().map(|&c| (self.p - c % self.p) % self.p).collect()
    }

    pub fn identity(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    pub fn ad_generator(&self, i: usize) -> &Vec<Vec<u64>> {
        &self.ad_gens[i]
    }

    pub fn coad_generator(&self, i: usize) -> &Vec<Vec<u64>> {
        &self.coad_gens[i]
    }

    pub fn mat_vec(&self, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        let p = self.p;
        m.iter()
            .map(|row| {
                let mut acc = 0u64;
                for (a, b) in row.iter().zip(v) {
                    acc = (acc + a * b) % p;
                }
                acc
            })
            .collect()
    }

    /// Encode a mod-p vector as a base-p integer.
    pub fn encode(&self, v: &[u64]) -> usize {
        let mut code = 0usize;
        for &c in v.iter().rev() {
            code = code * self.p as usize + c as usize;
        }
        code
    }

    pub fn decode(&self, mut code: usize) -> Vec<u64> {
        let p = self.p as usize;
        (0..self.dim)
            .map(|_| {
                let c = code % p;
                code /= p;
                c as u64
            })
            .collect()
    }

    /// Value of a functional on a log vector, mod p.
    pub fn pair(&self, ell: &[u64], v: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (a, b) in ell.iter().zip(v) {
            acc = (acc + a * b) % self.p;
        }
        acc
    }

    /// Sampled associativity check of the reduced group law.
    pub fn check_associativity(&self, triples: &[(Vec<u64>, Vec<u64>, Vec<u64>)]) -> bool {
        triples
            .iter()
            .all(|(a, b, c)| self.mul(&self.mul(a, b), c) == self.mul(a, &self.mul(b, c)))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn reduce_rational(q: &Rational, p: u64) -> Result<u64> {
    let pp = BigInt::from(p);
    let den = q.denom();
    if (den % &pp).is_zero() {
        return Err(Error::InadmissiblePrime {
            p,
            denominator: den.to_string(),
        });
    }
    let num = ((q.numer() % &pp) + &pp) % &pp;
    let den_red = ((den % &pp) + &pp) % &pp;
    let num_u: u64 = num.to_string().parse().unwrap();
    let den_u: u64 = den_red.to_string().parse().unwrap();
    Ok(num_u * mod_inv(den_u, p) % p)
}

/// Reduce an algebra modulo `p`. Admissibility requires `p` to divide no
/// structure-constant denominator and no BCH coefficient denominator at the
/// algebra's nilpotency class, so the whole group law reduces exactly.
pub fn reduce_mod_p(alg: &NilpotentAlgebra<Rational>, p: u64) -> Result<FiniteAlgebra> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if (p as u128).pow(alg.dim() as u32) > u32::MAX as u128 {
        return Err(Error::InvalidInput(format!(
            "p^dim = {p}^{} exceeds the enumerable range",
            alg.dim()
        )));
    }
    let n = alg.dim();
    let words = bch_words(alg.class());
    // Admissibility scan before any reduction.
    for entries in alg.bracket_table().values() {
        for (_, c) in entries {
            let den = c.denom();
            if (den % BigInt::from(p)).is_zero() {
                return Err(Error::InadmissiblePrime {
                    p,
                    denominator: den.to_string(),
                });
            }
        }
    }
    for (_, coeff) in words.iter() {
        let den = coeff.denom();
        if (den % BigInt::from(p)).is_zero() {
            return Err(Error::InadmissiblePrime {
                p,
                denominator: den.to_string(),
            });
        }
    }

    let mut brackets = vec![0u64; n * n * n];
    for (&(i, j), entries) in alg.bracket_table() {
        for (k, c) in entries {
            let r = reduce_rational(c, p)?;
            brackets[(i * n + j) * n + k] = r;
            brackets[(j * n + i) * n + k] = (p - r) % p;
        }
    }
    let bch_table: Vec<(Vec<u8>, u64)> = words
        .iter()
        .filter(|(w, _)| w.len() >= 2)
        .map(|(w, c)| Ok((w.clone(), reduce_rational(c, p)?)))
        .collect::<Result<_>>()?;

    let mut fa = FiniteAlgebra {
        name: format!("{} mod {p}", alg.name()),
        p,
        dim: n,
        class: alg.class(),
        brackets,
        bch_table,
        ad_gens: Vec::new(),
        coad_gens: Vec::new(),
    };
    // exp(ad e_i) and its transpose at -e_i, reduced; the factorials
    // involved are invertible by admissibility.
    let mut ad_gens = Vec::with_capacity(n);
    let mut coad_gens = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        ad_gens.push(exp_ad_mod(&fa, &e));
        coad_gens.push(transpose(&exp_ad_mod(&fa, &fa.inv(&e))));
    }
    fa.ad_gens = ad_gens;
    fa.coad_gens = coad_gens;
    Ok(fa)
}

/// Matrix of `Ad*(exp(v))` mod p for an arbitrary log vector.
pub fn coadjoint_matrix_of_log(fa: &FiniteAlgebra, v: &[u64]) -> Vec<Vec<u64>> {
    transpose(&exp_ad_mod(fa, &fa.inv(v)))
}

fn exp_ad_mod(fa: &FiniteAlgebra, v: &[u64]) -> Vec<Vec<u64>> {
    let n = fa.dim;
    let p = fa.p;
    let mut ad = vec![vec![0u64; n]; n];
    for j in 0..n {
        let mut ej = vec![0u64; n];
        ej[j] = 1;
        let col = fa.bracket(v, &ej);
        for (r, c) in col.into_iter().enumerate() {
            ad[r][j] = c;
        }
    }
    let mut out = identity_mat(n);
    let mut power = identity_mat(n);
    let mut kfact_inv = 1u64;
    for k in 1..=fa.class {
        power = mat_mul(&power, &ad, p);
        if power.iter().all(|row| row.iter().all(|&c| c == 0)) {
            break;
        }
        kfact_inv = kfact_inv * mod_inv(k as u64 % p, p) % p;
        for r in 0..n {
            for c in 0..n {
                out[r][c] = (out[r][c] + power[r][c] * kfact_inv) % p;
            }
        }
    }
    out
}

fn identity_mat(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
            }
        }
    }
    out
}

fn transpose(a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Reduced row echelon form mod p; returns pivot columns.
pub(crate) fn rref_mod_p(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        let Some(pr) = (lead..nrows).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(lead, pr);
        let inv = mod_inv(rows[lead][col] % p, p);
        for c in 0..ncols {
            rows[lead][c] = rows[lead][c] % p * inv % p;
        }
        for r in 0..nrows {
            if r != lead && rows[r][col] % p != 0 {
                let f = rows[r][col] % p;
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] + (p - f) * rows[lead][c]) % p;
                }
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == nrows {
            break;
        }
    }
    pivots
}

/// Canonical kernel basis of a matrix mod p.
pub(crate) fn kernel_mod_p(matrix: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if matrix.is_empty() {
        return Vec::new();
    }
    let ncols = matrix[0].len();
    let mut m = matrix.to_vec();
    let pivots = rref_mod_p(&mut m, p);
    let mut pivot_of_col = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_of_col[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (c, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                v[c] = (p - m[*r][free] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::scalar::qi;
    use std::collections::BTreeMap;

    pub fn heisenberg3() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(2, qi(1))]);
        NilpotentAlgebra::from_brackets("heisenberg3", vec!["x".into(), "y".into(), "z".into()], b)
            .unwrap()
    }

    pub fn heisenberg5() -> NilpotentAlgebra<Rational> {
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

    pub fn n4() -> NilpotentAlgebra<Rational> {
        let mut b = BTreeMap::new();
        b.insert((0, 1), vec![(3, qi(1))]);
        b.insert((1, 2), vec![(4, qi(1))]);
        b.insert((0, 4), vec![(5, qi(1))]);
        b.insert((2, 3), vec![(5, qi(-1))]);
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

    pub fn abelian2() -> NilpotentAlgebra<Rational> {
        NilpotentAlgebra::from_brackets(
            "abelian2",
            vec!["e1".into(), "e2".into()],
            BTreeMap::new(),
        )
        .unwrap()
    }
}
