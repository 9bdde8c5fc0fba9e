//! Distinction multiplicities over F_p by direct summation, and the
//! cross-validation harness tying the finite verdicts to the rational
//! classifier.
//!
//! For an orbit with character chi and the fixed subgroup attached to a
//! reduced involution, the multiplicity is the exact average of chi over
//! the fixed subgroup. It must be 0 or 1, and it is 1 exactly when the
//! orbit contains a functional vanishing on the fixed subalgebra, with the
//! count of such functionals equal to the square root of the orbit size;
//! all three facts are computed independently and compared.

use num::{BigInt, One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::involution::{classify_distinction, Involution};
use crate::lie_core::NilpotentAlgebra;
use crate::scalar::Rational;
use crate::Result;

use super::cyclotomic::CyclotomicNumber;
use super::orbits::{orbit_table, FiniteOrbit};
use super::{kernel_mod_p, FiniteAlgebra};

/// Reduce an involution matrix mod p, checking admissibility of its
/// denominators and that it stays an involutive bracket homomorphism.
pub fn reduce_involution(
    fa: &FiniteAlgebra,
    sigma: &Involution<Rational>,
) -> Result<Vec<Vec<u64>>> {
    let p = fa.prime();
    let n = fa.dim();
    let m = sigma.matrix();
    let pp = BigInt::from(p);
    let mut out = vec![vec![0u64; n]; n];
    for r in 0..n {
        for c in 0..n {
            let q = m.at(r, c);
            if (q.denom() % &pp).is_zero() {
                return Err(Error::InadmissiblePrime {
                    p,
                    denominator: q.denom().to_string(),
                });
            }
            let num = ((q.numer() % &pp) + &pp) % &pp;
            let num_u: u64 = num.to_string().parse().unwrap();
            let den = ((q.denom() % &pp) + &pp) % &pp;
            let den_u: u64 = den.to_string().parse().unwrap();
            out[r][c] = num_u * super::mod_inv(den_u, p) % p;
        }
    }
    // S^2 = I must survive reduction.
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        let twice = fa.mat_vec(&out, &fa.mat_vec(&out, &e));
        if twice != e {
            return Err(Error::ConstructionFailure(
                "involution does not square to identity mod p".into(),
            ));
        }
    }
    Ok(out)
}

/// Basis of the fixed subalgebra mod p: the kernel of `S - I`.
pub fn uplus_basis_mod_p(fa: &FiniteAlgebra, sigma_mod: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let p = fa.prime();
    let n = fa.dim();
    let mut m = vec![vec![0u64; n]; n];
    for r in 0..n {
        for c in 0..n {
            let sub = if r == c { 1 } else { 0 };
            m[r][c] = (sigma_mod[r][c] + p - sub) % p;
        }
    }
    kernel_mod_p(&m, p)
}

/// All log vectors of the fixed subgroup: the span of the fixed basis.
pub fn uplus_log_vectors(fa: &FiniteAlgebra, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let p = fa.prime();
    let n = fa.dim();
    let k = basis.len();
    let total = (p as usize).pow(k as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut v = vec![0u64; n];
        for b in basis {
            let c = (code % p as usize) as u64;
            code /= p as usize;
            if c != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi) % p;
                }
            }
        }
        out.push(v);
    }
    out
}

/// `m = |U+|^{-1} sum over the fixed subgroup of chi`, computed exactly;
/// must be a nonnegative rational integer.
pub fn distinction_multiplicity(
    fa: &FiniteAlgebra,
    orbit: &FiniteOrbit,
    uplus: &[Vec<u64>],
) -> Result<u64> {
    let p = fa.prime();
    let mut counts = vec![0i128; p as usize];
    let decoded: Vec<Vec<u64>> = orbit
        .elements
        .iter()
        .map(|&c| fa.decode(c as usize))
        .collect();
    for u in uplus {
        for ell in &decoded {
            counts[fa.pair(ell, u) as usize] += 1;
        }
    }
    let scale = Rational::new(
        BigInt::one(),
        BigInt::from(p.pow(orbit.half_dim)) * BigInt::from(uplus.len() as u64),
    );
    let value = CyclotomicNumber::from_power_counts(p, &counts).scale(&scale);
    let Some(q) = value.as_rational() else {
        return Err(Error::NonIntegralMultiplicity(value.to_string()));
    };
    if !q.denom().is_one() || q.numer() < &BigInt::zero() {
        return Err(Error::NonIntegralMultiplicity(q.to_string()));
    }
    Ok(q.numer().to_string().parse().unwrap())
}

/// Number of functionals in the orbit vanishing on the fixed subalgebra.
pub fn orbit_vanishing_count(
    fa: &FiniteAlgebra,
    orbit: &FiniteOrbit,
    uplus_basis: &[Vec<u64>],
) -> u64 {
    orbit
        .elements
        .iter()
        .filter(|&&code| {
            let ell = fa.decode(code as usize);
            uplus_basis.iter().all(|b| fa.pair(&ell, b) == 0)
        })
        .count() as u64
}

/// Per-orbit distinction data over F_p.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DistinctionRow {
    pub rep: Vec<u64>,
    pub orbit_size: u64,
    pub degree: u64,
    pub multiplicity: u64,
    pub vanishing_count: u64,
    /// multiplicity is 0/1, equals (vanishing_count > 0), and when 1 the
    /// vanishing count is the square root of the orbit size.
    pub criterion_ok: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FiniteDistinctionReport {
    pub prime: u64,
    pub uplus_dim: usize,
    pub rows: Vec<DistinctionRow>,
    pub all_ok: bool,
}

/// Multiplicities and the vanishing criterion for every orbit.
pub fn finite_distinction_report(
    fa: &FiniteAlgebra,
    sigma: &Involution<Rational>,
) -> Result<FiniteDistinctionReport> {
    let sigma_mod = reduce_involution(fa, sigma)?;
    let basis = uplus_basis_mod_p(fa, &sigma_mod);
    let uplus = uplus_log_vectors(fa, &basis);
    let table = orbit_table(fa)?;
    let p = fa.prime();
    let rows: Vec<Result<DistinctionRow>> = table
        .orbits
        .par_iter()
        .map(|orbit| {
            let multiplicity = distinction_multiplicity(fa, orbit, &uplus)?;
            let vanishing_count = orbit_vanishing_count(fa, orbit, &basis);
            let mult_ok = multiplicity <= 1;
            let iff_ok = (multiplicity == 1) == (vanishing_count > 0);
            let count_ok = multiplicity == 0 || vanishing_count == p.pow(orbit.half_dim);
            Ok(DistinctionRow {
                rep: orbit.rep.clone(),
                orbit_size: orbit.size,
                degree: p.pow(orbit.half_dim),
                multiplicity,
                vanishing_count,
                criterion_ok: mult_ok && iff_ok && count_ok,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let all_ok = rows.iter().all(|r| r.criterion_ok);
    Ok(FiniteDistinctionReport {
        prime: p,
        uplus_dim: basis.len(),
        rows,
        all_ok,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CrossValidationRow {
    pub prime: u64,
    pub functional: Vec<String>,
    pub rational_distinguished: bool,
    pub multiplicity: u64,
    pub vanishing_count: u64,
    /// The rational witness reduces into the mod-p orbit and vanishes on
    /// the mod-p fixed subalgebra (only meaningful when distinguished).
    pub witness_consistent: bool,
    /// Distinct rational orbits can collapse mod p; such rows are recorded
    /// but are not mismatches.
    pub reduction_collapse: bool,
    pub mismatch: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CrossValidationReport {
    pub rows: Vec<CrossValidationRow>,
    pub mismatches: usize,
}

fn reduce_functional(ell: &[Rational], p: u64) -> Result<Vec<u64>> {
    let pp = BigInt::from(p);
    ell.iter()
        .map(|q| {
            if (q.denom() % &pp).is_zero() {
                return Err(Error::InadmissiblePrime {
                    p,
                    denominator: q.denom().to_string(),
                });
            }
            let num = ((q.numer() % &pp) + &pp) % &pp;
            let num_u: u64 = num.to_string().parse().unwrap();
            let den = ((q.denom() % &pp) + &pp) % &pp;
            let den_u: u64 = den.to_string().parse().unwrap();
            Ok(num_u * super::mod_inv(den_u, p) % p)
        })
        .collect()
}

/// Compare the rational distinction classifier against the finite-field
/// multiplicities for a batch of functionals and primes.
pub fn cross_validate(
    alg: &NilpotentAlgebra<Rational>,
    sigma: &Involution<Rational>,
    primes: &[u64],
    sample: &[Vec<Rational>],
) -> Result<CrossValidationReport> {
    let mut rows = Vec::new();
    for &p in primes {
        let fa = reduce_mod_p_cached(alg, p)?;
        let sigma_mod = reduce_involution(&fa, sigma)?;
        let basis = uplus_basis_mod_p(&fa, &sigma_mod);
        let uplus = uplus_log_vectors(&fa, &basis);
        let table = orbit_table(&fa)?;
        for ell in sample {
            let verdict = classify_distinction(alg, sigma, ell)?;
            let ell_mod = reduce_functional(ell, p)?;
            let orbit = &table.orbits[table.orbit_of[fa.encode(&ell_mod)] as usize];
            let multiplicity = distinction_multiplicity(&fa, orbit, &uplus)?;
            let vanishing_count = orbit_vanishing_count(&fa, orbit, &basis);

            let witness_consistent = if let Some(w) = &verdict.witness {
                let w_mod = reduce_functional(w, p)?;
                let in_orbit = table.orbit_of[fa.encode(&w_mod)]
                    == table.orbit_of[fa.encode(&ell_mod)];
                let vanishes = basis.iter().all(|b| fa.pair(&w_mod, b) == 0);
                in_orbit && vanishes
            } else {
                true
            };

            // A negative rational verdict with a positive finite one means
            // the twisted dual moved to the same orbit only after
            // reduction; verify that reading before accepting the row.
            let mut reduction_collapse = false;
            let mismatch = if multiplicity > 1 {
                true
            } else if verdict.distinguished {
                !(witness_consistent && multiplicity == 1)
            } else if multiplicity == 1 {
                let s_mod = &sigma_mod;
                let twisted: Vec<u64> = {
                    // -ell o S mod p
                    let n = fa.dim();
                    (0..n)
                        .map(|j| {
                            let mut acc = 0u64;
                            for i in 0..n {
                                acc = (acc + ell_mod[i] * s_mod[i][j]) % p;
                            }
                            (p - acc) % p
                        })
                        .collect()
                };
                let same_mod_p = table.orbit_of[fa.encode(&twisted)]
                    == table.orbit_of[fa.encode(&ell_mod)];
                reduction_collapse = same_mod_p;
                !same_mod_p
            } else {
                false
            };

            rows.push(CrossValidationRow {
                prime: p,
                functional: ell.iter().map(ToString::to_string).collect(),
                rational_distinguished: verdict.distinguished,
                multiplicity,
                vanishing_count,
                witness_consistent,
                reduction_collapse,
                mismatch,
            });
        }
    }
    let mismatches = rows.iter().filter(|r| r.mismatch).count();
    Ok(CrossValidationReport { rows, mismatches })
}

fn reduce_mod_p_cached(alg: &NilpotentAlgebra<Rational>, p: u64) -> Result<FiniteAlgebra> {
    super::reduce_mod_p(alg, p)
}

#[cfg(test)]
mod tests {
    use super::super::reduce_mod_p;
    use super::super::test_support::*;
    use super::*;
    use crate::linalg::Mat;
    use crate::scalar::qi;

    fn sign_h3(alg: &NilpotentAlgebra<Rational>) -> Involution<Rational> {
        Involution::new(
            alg,
            Mat::from_fn(3, 3, |i, j| {
                if i != j {
                    qi(0)
                } else if i == 1 {
                    qi(1)
                } else {
                    qi(-1)
                }
            }),
        )
        .unwrap()
    }

    #[test]
    fn sign_involution_multiplicities_mod_five() {
        let alg = heisenberg3();
        let sigma = sign_h3(&alg);
        let fa = reduce_mod_p(&alg, 5).unwrap();
        let sigma_mod = reduce_involution(&fa, &sigma).unwrap();
        let basis = uplus_basis_mod_p(&fa, &sigma_mod);
        assert_eq!(basis.len(), 1); // U+ = <y>
        let uplus = uplus_log_vectors(&fa, &basis);
        assert_eq!(uplus.len(), 5);

        let table = orbit_table(&fa).unwrap();
        let orbit = &table.orbits[table.orbit_of[fa.encode(&[0, 0, 1])] as usize];
        assert_eq!(distinction_multiplicity(&fa, orbit, &uplus).unwrap(), 1);
        assert_eq!(orbit_vanishing_count(&fa, orbit, &basis), 5);

        // Trivial orbit is always distinguished.
        let zero = &table.orbits[table.orbit_of[0] as usize];
        assert_eq!(distinction_multiplicity(&fa, zero, &uplus).unwrap(), 1);
    }

    #[test]
    fn identity_involution_kills_zstar_mod_five() {
        let alg = heisenberg3();
        let id = Involution::new(&alg, Mat::identity(3)).unwrap();
        let fa = reduce_mod_p(&alg, 5).unwrap();
        let sigma_mod = reduce_involution(&fa, &id).unwrap();
        let basis = uplus_basis_mod_p(&fa, &sigma_mod);
        assert_eq!(basis.len(), 3);
        let uplus = uplus_log_vectors(&fa, &basis);
        assert_eq!(uplus.len(), 125);
        let table = orbit_table(&fa).unwrap();
        let orbit = &table.orbits[table.orbit_of[fa.encode(&[0, 0, 1])] as usize];
        assert_eq!(distinction_multiplicity(&fa, orbit, &uplus).unwrap(), 0);
        assert_eq!(orbit_vanishing_count(&fa, orbit, &basis), 0);
    }

    #[test]
    fn full_report_is_multiplicity_free_h3() {
        let alg = heisenberg3();
        let sigma = sign_h3(&alg);
        for p in [3u64, 5] {
            let fa = reduce_mod_p(&alg, p).unwrap();
            let report = finite_distinction_report(&fa, &sigma).unwrap();
            assert!(report.all_ok, "criterion fails mod {p}");
        }
    }

    #[test]
    fn cross_validation_h3_examples() {
        let alg = heisenberg3();
        let sigma = sign_h3(&alg);
        let sample = vec![
            vec![qi(0), qi(0), qi(0)],
            vec![qi(1), qi(0), qi(0)], // x*: fixed by the twisted action
            vec![qi(0), qi(0), qi(1)], // z*
            vec![qi(0), qi(1), qi(0)], // y*: not fixed, point orbit
        ];
        let report = cross_validate(&alg, &sigma, &[3, 5, 7], &sample).unwrap();
        assert_eq!(report.mismatches, 0);
        // y* has multiplicity 0: its twisted dual is -y* which is a
        // different point orbit (for p > 2).
        for row in report.rows.iter().filter(|r| r.functional[1] == "1") {
            assert!(!row.rational_distinguished);
            assert_eq!(row.multiplicity, 0);
        }
    }
}
