//! Exact character tables of the finite groups: the orbit sum formula
//! evaluated in cyclotomic arithmetic, with orthonormality, degree counting
//! and class counting certified against independent brute force.
//!
//! The certification never trusts the character formula: degrees must
//! square-sum to the group order, the number of orbits must match the
//! number of conjugacy classes computed by conjugation closure, and all
//! pairwise inner products must come out exactly delta. Inner products are
//! class sums in integer cyclotomic counts; for pairs of one-dimensional
//! characters the sum only depends on the difference of the two
//! functionals, so one class sum per difference covers every such pair.

use rayon::prelude::*;

use num::{BigInt, One};

use crate::error::Error;
use crate::scalar::Rational;
use crate::Result;

use super::cyclotomic::CyclotomicNumber;
use super::orbits::{conjugacy_classes, orbit_table, FiniteOrbit};
use super::FiniteAlgebra;

/// Kirillov's character formula for a finite orbit: the normalized
/// exponential sum `p^{-d} sum_{l in orbit} zeta^{l(ln g)}`, exact.
pub fn kirillov_character(
    fa: &FiniteAlgebra,
    orbit: &FiniteOrbit,
    g_log: &[u64],
) -> Result<CyclotomicNumber> {
    let p = fa.prime();
    if orbit.size != p.pow(2 * orbit.half_dim) {
        return Err(Error::NonSquareOrbit(orbit.size));
    }
    let mut counts = vec![0i128; p as usize];
    for &code in &orbit.elements {
        let ell = fa.decode(code as usize);
        counts[fa.pair(&ell, g_log) as usize] += 1;
    }
    let scale = Rational::new(BigInt::one(), BigInt::from(p.pow(orbit.half_dim)));
    Ok(CyclotomicNumber::from_power_counts(p, &counts).scale(&scale))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CharacterTableReport {
    pub group_order: u64,
    pub num_orbits: usize,
    pub num_classes: usize,
    /// Character degree per orbit, in orbit order.
    pub degrees: Vec<u64>,
    pub degree_square_sum: u64,
    pub degrees_ok: bool,
    pub class_count_ok: bool,
    pub orthonormal: bool,
    pub failures: Vec<String>,
}

impl CharacterTableReport {
    pub fn passed(&self) -> bool {
        self.degrees_ok && self.class_count_ok && self.orthonormal && self.failures.is_empty()
    }
}

/// Integer counts of powers of zeta; the workhorse representation for
/// inner-product accumulation.
type Counts = Vec<i128>;

fn counts_zero(p: u64) -> Counts {
    vec![0i128; p as usize]
}

fn counts_is_zero_cyclo(p: u64, c: &Counts) -> bool {
    CyclotomicNumber::from_power_counts(p, c).is_zero()
}

/// Multiply two count vectors as cyclotomic integers (circular
/// convolution), conjugating the second factor.
fn counts_mul_conj(p: u64, a: &Counts, b: &Counts) -> Counts {
    let pu = p as usize;
    let mut out = counts_zero(p);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            // conj(zeta^j) = zeta^{p-j}.
            let k = (i + (pu - j)) % pu;
            out[k] += x * y;
        }
    }
    out
}

fn counts_add_scaled(acc: &mut Counts, c: &Counts, w: i128) {
    for (a, x) in acc.iter_mut().zip(c) {
        *a += x * w;
    }
}

/// Full certification of the character table. See the module docs for what
/// is checked and how the inner products are organized.
pub fn verify_character_table(fa: &FiniteAlgebra) -> Result<CharacterTableReport> {
    let p = fa.prime();
    let pu = p as usize;
    let table = orbit_table(fa)?;
    let classes = conjugacy_classes(fa);
    let mut failures: Vec<String> = Vec::new();

    let degrees: Vec<u64> = table.orbits.iter().map(|o| p.pow(o.half_dim)).collect();
    let degree_square_sum: u64 = degrees.iter().map(|d| d * d).sum();
    let degrees_ok = degree_square_sum == fa.group_order();
    if !degrees_ok {
        failures.push(format!(
            "degree square sum {} != group order {}",
            degree_square_sum,
            fa.group_order()
        ));
    }
    let class_count_ok = table.orbits.len() == classes.len();
    if !class_count_ok {
        failures.push(format!(
            "{} orbits but {} conjugacy classes",
            table.orbits.len(),
            classes.len()
        ));
    }

    // chi(1) = p^d: the formula's value at the identity must equal the
    // degree (all summands are 1 there).
    for (o, d) in table.orbits.iter().zip(&degrees) {
        let at_one = kirillov_character(fa, o, &fa.identity())?;
        if at_one.as_rational() != Some(Rational::from_integer(BigInt::from(*d))) {
            failures.push(format!("chi(1) != degree on the orbit of {:?}", o.rep));
        }
    }

    let class_reps: Vec<Vec<u64>> = classes.iter().map(|c| c.rep.clone()).collect();
    let class_sizes: Vec<i128> = classes.iter().map(|c| c.size as i128).collect();

    let linear: Vec<usize> = (0..table.orbits.len())
        .filter(|&i| table.orbits[i].size == 1)
        .collect();
    let big: Vec<usize> = (0..table.orbits.len())
        .filter(|&i| table.orbits[i].size > 1)
        .collect();

    // One-dimensional characters are zeta^{<rep, ->}; the inner product of
    // two of them is the class sum attached to the difference of the reps.
    // Differences of fixed functionals are again fixed functionals, so one
    // sum per fixed functional covers all pairs at once.
    let lin_sums: Vec<(usize, bool)> = linear
        .par_iter()
        .map(|&li| {
            let d = &table.orbits[li].rep;
            let mut acc = counts_zero(p);
            for (g, w) in class_reps.iter().zip(&class_sizes) {
                acc[fa.pair(d, g) as usize] += w;
            }
            let is_zero = counts_is_zero_cyclo(p, &acc);
            let is_order = acc[0] == fa.group_order() as i128
                && acc[1..].iter().all(|&c| c == 0);
            (li, if d.iter().all(|&c| c == 0) { is_order } else { is_zero })
        })
        .collect();
    for (li, ok) in lin_sums {
        if !ok {
            failures.push(format!(
                "class sum for linear difference {:?} is not delta",
                table.orbits[li].rep
            ));
        }
    }

    // Values of the higher-degree characters on every class, as sparse
    // unnormalized counts (the p^{-d} factor is restored at the end).
    let big_values: Vec<Vec<(u32, Counts)>> = big
        .par_iter()
        .map(|&bi| {
            let orbit = &table.orbits[bi];
            let decoded: Vec<Vec<u64>> = orbit
                .elements
                .iter()
                .map(|&c| fa.decode(c as usize))
                .collect();
            let mut vals = Vec::new();
            for (ci, g) in class_reps.iter().enumerate() {
                let mut counts = counts_zero(p);
                for ell in &decoded {
                    counts[fa.pair(ell, g) as usize] += 1;
                }
                if !counts_is_zero_cyclo(p, &counts) {
                    vals.push((ci as u32, counts));
                }
            }
            vals
        })
        .collect();

    // Inner products involving a higher-degree character.
    let normalizer = |di: u32, dj: u32| -> Rational {
        Rational::new(
            BigInt::one(),
            BigInt::from(fa.group_order()) * BigInt::from(p.pow(di) * p.pow(dj)),
        )
    };
    for (a, &bi) in big.iter().enumerate() {
        // against linear characters
        for &li in &linear {
            let lin_rep = &table.orbits[li].rep;
            let mut acc = counts_zero(p);
            for (ci, counts) in &big_values[a] {
                let e = fa.pair(lin_rep, &class_reps[*ci as usize]) as usize;
                let mut lin_counts = counts_zero(p);
                lin_counts[e] = 1;
                let prod = counts_mul_conj(p, &lin_counts, counts);
                counts_add_scaled(&mut acc, &prod, class_sizes[*ci as usize]);
            }
            let val = CyclotomicNumber::from_power_counts(p, &acc)
                .scale(&normalizer(0, table.orbits[bi].half_dim));
            if !val.is_zero() {
                failures.push(format!("<chi_{li}, chi_{bi}> = {val} != 0"));
            }
        }
        // against other higher-degree characters and itself
        for (b, &bj) in big.iter().enumerate().skip(a) {
            let mut acc = counts_zero(p);
            let (small, large, swap) = if big_values[a].len() <= big_values[b].len() {
                (&big_values[a], &big_values[b], false)
            } else {
                (&big_values[b], &big_values[a], true)
            };
            let mut idx = std::collections::HashMap::new();
            for (ci, counts) in large {
                idx.insert(*ci, counts);
            }
            for (ci, counts_s) in small {
                if let Some(counts_l) = idx.get(ci) {
                    let prod = if swap {
                        counts_mul_conj(p, counts_l, counts_s)
                    } else {
                        counts_mul_conj(p, counts_s, counts_l)
                    };
                    counts_add_scaled(&mut acc, &prod, class_sizes[*ci as usize]);
                }
            }
            let val = CyclotomicNumber::from_power_counts(p, &acc).scale(&normalizer(
                table.orbits[bi].half_dim,
                table.orbits[bj].half_dim,
            ));
            let expected_one = bi == bj;
            let ok = if expected_one {
                val.as_rational() == Some(Rational::one())
            } else {
                val.is_zero()
            };
            if !ok {
                failures.push(format!("<chi_{bi}, chi_{bj}> = {val} != delta"));
            }
        }
    }

    // Geometric sums vanish; this is what makes the one-dimensional
    // difference sums above equivalent to the pairwise inner products.
    for t in 1..pu {
        let mut counts = counts_zero(p);
        for a in 0..pu {
            counts[t * a % pu] += 1;
        }
        if !counts_is_zero_cyclo(p, &counts) {
            failures.push(format!("geometric sum at step {t} does not vanish"));
        }
    }

    let orthonormal = !failures
        .iter()
        .any(|f| f.contains("<chi") || f.contains("class sum") || f.contains("geometric sum"));
    Ok(CharacterTableReport {
        group_order: fa.group_order(),
        num_orbits: table.orbits.len(),
        num_classes: classes.len(),
        degrees,
        degree_square_sum,
        degrees_ok,
        class_count_ok,
        orthonormal,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::super::reduce_mod_p;
    use super::super::test_support::*;
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn trivial_orbit_has_trivial_character() {
        let fa = reduce_mod_p(&heisenberg3(), 5).unwrap();
        let table = orbit_table(&fa).unwrap();
        let zero_orbit = &table.orbits[0];
        assert_eq!(zero_orbit.size, 1);
        for code in [0usize, 7, 31] {
            let chi = kirillov_character(&fa, zero_orbit, &fa.decode(code)).unwrap();
            assert_eq!(chi.as_rational(), Some(qi(1)));
        }
    }

    #[test]
    fn character_values_on_zstar_orbit_mod_three() {
        let fa = reduce_mod_p(&heisenberg3(), 3).unwrap();
        let table = orbit_table(&fa).unwrap();
        let orbit = table.orbits[table.orbit_of[fa.encode(&[0, 0, 1])] as usize].clone();
        assert_eq!(orbit.size, 9);

        // chi(exp z) = 3 zeta.
        let chi_z = kirillov_character(&fa, &orbit, &[0, 0, 1]).unwrap();
        let mut counts = vec![0i128; 3];
        counts[1] = 3;
        assert_eq!(chi_z, CyclotomicNumber::from_power_counts(3, &counts));

        // chi(exp x) = 0.
        let chi_x = kirillov_character(&fa, &orbit, &[1, 0, 0]).unwrap();
        assert!(chi_x.is_zero());

        // chi(1) = 3.
        let chi_1 = kirillov_character(&fa, &orbit, &[0, 0, 0]).unwrap();
        assert_eq!(chi_1.as_rational(), Some(qi(3)));
    }

    #[test]
    fn heisenberg_mod_three_table() {
        let fa = reduce_mod_p(&heisenberg3(), 3).unwrap();
        let report = verify_character_table(&fa).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.num_orbits, 11);
        let ones = report.degrees.iter().filter(|&&d| d == 1).count();
        let threes = report.degrees.iter().filter(|&&d| d == 3).count();
        assert_eq!((ones, threes), (9, 2));
        assert_eq!(report.degree_square_sum, 27);
    }

    #[test]
    fn abelian_table_mod_five() {
        let fa = reduce_mod_p(&abelian2(), 5).unwrap();
        let report = verify_character_table(&fa).unwrap();
        assert!(report.passed());
        assert_eq!(report.num_orbits, 25);
        assert!(report.degrees.iter().all(|&d| d == 1));
    }

    #[test]
    fn heisenberg5_mod_three_table() {
        let fa = reduce_mod_p(&heisenberg5(), 3).unwrap();
        let report = verify_character_table(&fa).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        let ones = report.degrees.iter().filter(|&&d| d == 1).count();
        let nines = report.degrees.iter().filter(|&&d| d == 9).count();
        assert_eq!(ones, 81);
        assert_eq!(nines, 2);
        assert_eq!(report.degree_square_sum, 243);
    }
}
