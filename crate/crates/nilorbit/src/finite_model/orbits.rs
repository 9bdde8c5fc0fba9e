//! Coadjoint orbits over F_p by breadth-first search, and conjugacy
//! classes by the same closure with the adjoint generators.
//!
//! The whole dual (p^dim points) is enumerated; orbits partition it and
//! their sizes are even powers of p. Elements are stored as base-p codes;
//! frontier deduplication uses a dense visited table indexed by code.

use crate::error::Error;
use crate::Result;

use super::FiniteAlgebra;

#[derive(Debug, Clone)]
pub struct FiniteOrbit {
    pub rep: Vec<u64>,
    pub size: u64,
    /// Orbit size is `p^(2 half_dim)`.
    pub half_dim: u32,
    /// Element codes in increasing order.
    pub elements: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct FiniteOrbitTable {
    pub orbits: Vec<FiniteOrbit>,
    /// Orbit index of every functional code.
    pub orbit_of: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: Vec<u64>,
    pub size: u64,
}

/// Closure of a single functional under the coadjoint generator matrices.
/// Powers of each generator recover all one-parameter steps, so the result
/// is the full orbit. Elements come back sorted.
pub fn orbit_bfs(fa: &FiniteAlgebra, ell: &[u64]) -> Vec<Vec<u64>> {
    let gens: Vec<&Vec<Vec<u64>>> = (0..fa.dim()).map(|i| fa.coad_generator(i)).collect();
    let codes = closure(fa, fa.encode(ell), &gens);
    codes.into_iter().map(|c| fa.decode(c as usize)).collect()
}

/// Orbit closure under an explicit set of generator matrices, as sorted
/// codes; used for subgroup-restricted orbits.
pub fn orbit_bfs_with(fa: &FiniteAlgebra, ell: &[u64], mats: &[Vec<Vec<u64>>]) -> Vec<u32> {
    let gens: Vec<&Vec<Vec<u64>>> = mats.iter().collect();
    closure(fa, fa.encode(ell), &gens)
}

fn closure(fa: &FiniteAlgebra, start: usize, gens: &[&Vec<Vec<u64>>]) -> Vec<u32> {
    let mut seen = vec![false; fa.dual_size()];
    let mut stack = vec![start as u32];
    let mut out = vec![start as u32];
    seen[start] = true;
    while let Some(code) = stack.pop() {
        let v = fa.decode(code as usize);
        for m in gens {
            let w = fa.mat_vec(m, &v);
            let c = fa.encode(&w);
            if !seen[c] {
                seen[c] = true;
                stack.push(c as u32);
                out.push(c as u32);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All coadjoint orbits: scan codes in increasing order and close each
/// unassigned one. Representatives are the least code of each orbit; sizes
/// are checked to be even powers of p and to sum to the dual size.
pub fn orbit_table(fa: &FiniteAlgebra) -> Result<FiniteOrbitTable> {
    let n = fa.dual_size();
    let gens: Vec<&Vec<Vec<u64>>> = (0..fa.dim()).map(|i| fa.coad_generator(i)).collect();
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits = Vec::new();
    for code in 0..n {
        if orbit_of[code] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        let elements = closure(fa, code, &gens);
        for &c in &elements {
            orbit_of[c as usize] = id;
        }
        let size = elements.len() as u64;
        let half_dim = half_dim_of(size, fa.prime())?;
        orbits.push(FiniteOrbit {
            rep: fa.decode(code),
            size,
            half_dim,
            elements,
        });
    }
    debug_assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), n as u64);
    Ok(FiniteOrbitTable { orbits, orbit_of })
}

fn half_dim_of(size: u64, p: u64) -> Result<u32> {
    let mut s = size;
    let mut k = 0u32;
    while s % p == 0 {
        s /= p;
        k += 1;
    }
    if s != 1 || k % 2 != 0 {
        return Err(Error::NonSquareOrbit(size));
    }
    Ok(k / 2)
}

/// Conjugacy classes by closure under conjugation by the generators;
/// conjugation is linear in log coordinates with the adjoint matrices.
pub fn conjugacy_classes(fa: &FiniteAlgebra) -> Vec<ConjClass> {
    let n = fa.dual_size();
    let gens: Vec<&Vec<Vec<u64>>> = (0..fa.dim()).map(|i| fa.ad_generator(i)).collect();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for code in 0..n {
        if assigned[code] {
            continue;
        }
        let elements = closure(fa, code, &gens);
        for &c in &elements {
            assigned[c as usize] = true;
        }
        classes.push(ConjClass {
            rep: fa.decode(code),
            size: elements.len() as u64,
        });
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::super::reduce_mod_p;
    use super::*;

    #[test]
    fn zero_orbit_is_a_point() {
        let fa = reduce_mod_p(&heisenberg3(), 5).unwrap();
        let orbit = orbit_bfs(&fa, &[0, 0, 0]);
        assert_eq!(orbit, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn zstar_orbit_mod_five() {
        let fa = reduce_mod_p(&heisenberg3(), 5).unwrap();
        let orbit = orbit_bfs(&fa, &[0, 0, 1]);
        assert_eq!(orbit.len(), 25);
        // Exactly the functionals with z-coordinate one.
        assert!(orbit.iter().all(|l| l[2] == 1));
    }

    #[test]
    fn heisenberg_mod_three_orbit_census() {
        let fa = reduce_mod_p(&heisenberg3(), 3).unwrap();
        let table = orbit_table(&fa).unwrap();
        let fixed = table.orbits.iter().filter(|o| o.size == 1).count();
        let nine = table.orbits.iter().filter(|o| o.size == 9).count();
        assert_eq!(fixed, 9);
        assert_eq!(nine, 2);
        assert_eq!(table.orbits.iter().map(|o| o.size).sum::<u64>(), 27);
    }

    #[test]
    fn orbit_count_equals_class_count() {
        for (alg, p) in [
            (heisenberg3(), 3),
            (heisenberg3(), 5),
            (heisenberg5(), 3),
            (abelian2(), 5),
        ] {
            let fa = reduce_mod_p(&alg, p).unwrap();
            let orbits = orbit_table(&fa).unwrap().orbits.len();
            let classes = conjugacy_classes(&fa).len();
            assert_eq!(orbits, classes, "{} mod {p}", alg.name());
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        let fa = reduce_mod_p(&heisenberg5(), 3).unwrap();
        let classes = conjugacy_classes(&fa);
        assert_eq!(
            classes.iter().map(|c| c.size).sum::<u64>(),
            fa.group_order()
        );
    }
}
