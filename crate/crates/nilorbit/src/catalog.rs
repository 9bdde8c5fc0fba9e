//! Built-in example catalog: algebras with named involutions and
//! functionals, plus lookup by `builtin:NAME` for the CLI. Every entry is
//! fully validated at construction time.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;
use crate::involution::Involution;
use crate::lie_core::NilpotentAlgebra;
use crate::linalg::Mat;
use crate::number_field::{cbrt2_field, gaussian_rationals, rational_field, sqrt2_field, NumberField};
use crate::res_scalars::{embed_algebra, restrict_algebra};
use crate::scalar::{qi, Rational};
use crate::Result;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: NilpotentAlgebra<Rational>,
    pub involutions: Vec<(String, Involution<Rational>)>,
    pub functionals: Vec<(String, Vec<Rational>)>,
}

fn diag(entries: &[i64]) -> Mat<Rational> {
    let n = entries.len();
    Mat::from_fn(n, n, |i, j| if i == j { qi(entries[i]) } else { qi(0) })
}

fn named_involutions(
    alg: &NilpotentAlgebra<Rational>,
    list: Vec<(&str, Mat<Rational>)>,
) -> Vec<(String, Involution<Rational>)> {
    list.into_iter()
        .map(|(name, m)| {
            let inv = Involution::new(alg, m)
                .unwrap_or_else(|e| panic!("catalog involution {name} invalid: {e}"));
            (name.to_string(), inv)
        })
        .collect()
}

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

/// Strictly upper triangular 4x4 matrices on the basis
/// `E12, E23, E34, E13, E24, E14`.
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

/// Free two-step algebra on three generators.
pub fn free2step() -> NilpotentAlgebra<Rational> {
    let mut b = BTreeMap::new();
    b.insert((0, 1), vec![(3, qi(1))]);
    b.insert((0, 2), vec![(4, qi(1))]);
    b.insert((1, 2), vec![(5, qi(1))]);
    NilpotentAlgebra::from_brackets(
        "free2step",
        ["x1", "x2", "x3", "z12", "z13", "z23"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        b,
    )
    .unwrap()
}

/// The restriction of the Heisenberg algebra over the Gaussian rationals,
/// on the interleaved basis `x, x.a, y, y.a, z, z.a`.
pub fn heisenberg3_gaussian() -> NilpotentAlgebra<Rational> {
    let f = gaussian_rationals();
    let res = restrict_algebra(&embed_algebra(&heisenberg3(), &f), &f)
        .expect("restriction of a valid algebra is valid");
    res.restricted.renamed("heisenberg3_gaussian")
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();

    let h3 = heisenberg3();
    let invs = named_involutions(
        &h3,
        vec![
            ("sign", diag(&[-1, 1, -1])),
            (
                "flip",
                Mat::from_rows(vec![
                    vec![qi(0), qi(-1), qi(0)],
                    vec![qi(-1), qi(0), qi(0)],
                    vec![qi(0), qi(0), qi(-1)],
                ]),
            ),
            ("identity", Mat::identity(3)),
        ],
    );
    entries.push(CatalogEntry {
        name: "heisenberg3".into(),
        functionals: vec![
            ("zero".into(), vec![qi(0); 3]),
            ("zstar".into(), vec![qi(0), qi(0), qi(1)]),
            ("xstar".into(), vec![qi(1), qi(0), qi(0)]),
            ("mixed".into(), vec![qi(5), qi(0), qi(1)]),
        ],
        algebra: h3,
        involutions: invs,
    });

    let h5 = heisenberg5();
    // swap exchanges the two hyperbolic pairs and fixes the center.
    let mut swap = Mat::zeros(5, 5);
    for (from, to) in [(0usize, 2usize), (1, 3), (2, 0), (3, 1), (4, 4)] {
        *swap.at_mut(to, from) = qi(1);
    }
    let invs = named_involutions(
        &h5,
        vec![("sign", diag(&[-1, 1, -1, 1, -1])), ("swap", swap)],
    );
    entries.push(CatalogEntry {
        name: "heisenberg5".into(),
        functionals: vec![
            ("zero".into(), vec![qi(0); 5]),
            ("zstar".into(), vec![qi(0), qi(0), qi(0), qi(0), qi(1)]),
            ("mixed".into(), vec![qi(1), qi(2), qi(0), qi(-1), qi(3)]),
        ],
        algebra: h5,
        involutions: invs,
    });

    let n4alg = n4();
    // The outer flip of the Dynkin diagram: E_{ij} -> -E_{5-j,5-i}.
    let mut flip = Mat::zeros(6, 6);
    for (from, to) in [(0usize, 2usize), (1, 1), (2, 0), (3, 4), (4, 3), (5, 5)] {
        *flip.at_mut(to, from) = qi(-1);
    }
    let invs = named_involutions(
        &n4alg,
        vec![("sign", diag(&[-1, -1, -1, 1, 1, -1])), ("flip", flip)],
    );
    entries.push(CatalogEntry {
        name: "n4".into(),
        functionals: vec![
            ("zero".into(), vec![qi(0); 6]),
            ("corner".into(), vec![qi(0), qi(0), qi(0), qi(0), qi(0), qi(1)]),
            ("mixed".into(), vec![qi(1), qi(0), qi(-1), qi(2), qi(0), qi(1)]),
        ],
        algebra: n4alg,
        involutions: invs,
    });

    let free = free2step();
    // swap12 exchanges the first two generators; z12 changes sign and the
    // other two central directions swap.
    let mut swap12 = Mat::zeros(6, 6);
    *swap12.at_mut(1, 0) = qi(1);
    *swap12.at_mut(0, 1) = qi(1);
    *swap12.at_mut(2, 2) = qi(1);
    *swap12.at_mut(3, 3) = qi(-1);
    *swap12.at_mut(5, 4) = qi(1);
    *swap12.at_mut(4, 5) = qi(1);
    let invs = named_involutions(
        &free,
        vec![("sign", diag(&[-1, -1, -1, 1, 1, 1])), ("swap12", swap12)],
    );
    entries.push(CatalogEntry {
        name: "free2step".into(),
        functionals: vec![
            ("zero".into(), vec![qi(0); 6]),
            ("z12star".into(), vec![qi(0), qi(0), qi(0), qi(1), qi(0), qi(0)]),
            ("mixed".into(), vec![qi(1), qi(1), qi(0), qi(2), qi(0), qi(-1)]),
        ],
        algebra: free,
        involutions: invs,
    });

    let gauss = heisenberg3_gaussian();
    let invs = named_involutions(
        &gauss,
        vec![
            // Galois conjugation on the coefficient side.
            ("galois", diag(&[1, -1, 1, -1, 1, -1])),
            // The Heisenberg sign involution extended coefficient-wise.
            ("sign", diag(&[-1, -1, 1, 1, -1, -1])),
        ],
    );
    entries.push(CatalogEntry {
        name: "heisenberg3_gaussian".into(),
        functionals: vec![
            ("zero".into(), vec![qi(0); 6]),
            ("zstar".into(), vec![qi(0), qi(0), qi(0), qi(0), qi(1), qi(0)]),
            ("mixed".into(), vec![qi(1), qi(0), qi(0), qi(2), qi(1), qi(0)]),
        ],
        algebra: gauss,
        involutions: invs,
    });

    entries
}

pub fn builtin_algebra(name: &str) -> Result<NilpotentAlgebra<Rational>> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.algebra)
        .ok_or_else(|| Error::InvalidInput(format!("unknown builtin algebra {name:?}")))
}

pub fn builtin_entry(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown builtin algebra {name:?}")))
}

pub fn builtin_field(name: &str) -> Result<Arc<NumberField>> {
    match name {
        "q" => Ok(rational_field()),
        "qi" => Ok(gaussian_rationals()),
        "qsqrt2" => Ok(sqrt2_field()),
        "qcbrt2" => Ok(cbrt2_field()),
        other => Err(Error::InvalidInput(format!(
            "unknown builtin field {other:?} (expected q, qi, qsqrt2 or qcbrt2)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::grading_holds;

    #[test]
    fn catalog_entries_validate() {
        let entries = catalog();
        assert_eq!(entries.len(), 5);
        for e in &entries {
            assert!(e.involutions.len() >= 2, "{} lacks involutions", e.name);
            for (_, inv) in &e.involutions {
                assert!(grading_holds(&e.algebra, inv));
            }
            for (_, f) in &e.functionals {
                assert_eq!(f.len(), e.algebra.dim());
            }
        }
    }

    #[test]
    fn expected_shapes() {
        let h3 = builtin_algebra("heisenberg3").unwrap();
        assert_eq!((h3.dim(), h3.class()), (3, 2));
        let n4 = builtin_algebra("n4").unwrap();
        assert_eq!((n4.dim(), n4.class()), (6, 3));
        assert_eq!(n4.center().dim(), 1);
        let free = builtin_algebra("free2step").unwrap();
        assert_eq!((free.dim(), free.class()), (6, 2));
        assert_eq!(free.center().dim(), 3);
        let gauss = builtin_algebra("heisenberg3_gaussian").unwrap();
        assert_eq!((gauss.dim(), gauss.class()), (6, 2));
        assert_eq!(gauss.center().dim(), 2);
        assert!(builtin_algebra("nope").is_err());
    }

    #[test]
    fn builtin_fields_resolve() {
        assert_eq!(builtin_field("qi").unwrap().degree(), 2);
        assert_eq!(builtin_field("qcbrt2").unwrap().degree(), 3);
        assert!(builtin_field("qx").is_err());
    }
}
