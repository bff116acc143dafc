use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::character::{character_table, inner_product, Character};
use crate::cyclotomic::{units, Cyclotomic};
use crate::error::Result;
use crate::galois::{fixed_subfield, lift_subgroup, Subfield};
use crate::hilbert::{local_invariants, LocalInvariants};
use crate::matrix::{Matrix, SpanCoordinates};
use crate::rational::{lcm_u32, squarefree_part, Rational};
use crate::rep::{intertwiner_space, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EndClassification {
    Field {
        degree: usize,
    },
    Quaternion {
        #[serde(with = "crate::rational::serde_rational")]
        a: Rational,
        #[serde(with = "crate::rational::serde_rational")]
        b: Rational,
        is_division: bool,
        invariants: LocalInvariants,
    },
    Unclassified {
        dim: usize,
        center_dim: usize,
    },
}

impl EndClassification {
    pub fn is_division(&self) -> Option<bool> {
        match self {
            EndClassification::Field { .. } => Some(true),
            EndClassification::Quaternion { is_division, .. } => Some(*is_division),
            EndClassification::Unclassified { .. } => None,
        }
    }
}

/// The commutant of a representation over the field generated by its entries.
#[derive(Debug, Clone, Serialize)]
pub struct EndAlgebra {
    pub base: Subfield,
    pub basis: Vec<Matrix>,
    /// `structure_constants[i][j][k]`: coefficient of `E_k` in `E_i E_j`.
    pub structure_constants: Vec<Vec<Vec<Cyclotomic>>>,
    pub center: Vec<Matrix>,
    pub classification: EndClassification,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_commutative(&self) -> bool {
        self.center.len() == self.basis.len()
    }
}

fn flatten(m: &Matrix) -> Vec<Cyclotomic> {
    m.entries().to_vec()
}

fn combination(basis: &[Matrix], coeffs: &[Cyclotomic]) -> Matrix {
    let (r, c, n) = (basis[0].rows(), basis[0].cols(), basis[0].conductor());
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, x)| !x.is_zero())
        .fold(Matrix::zeros(r, c, n), |acc, (m, x)| &acc + &m.scale(x))
}

/// Field generated by the entries of the generator matrices.
pub(crate) fn entry_field(rho: &Representation) -> Subfield {
    let n = rho.conductor();
    let gens = rho.group().generators();
    let stab: Vec<u32> =
        units(n).into_iter().filter(|&k| gens.iter().all(|&g| rho.matrix(g).fixed_by(&[k]))).collect();
    fixed_subfield(n, &stab).expect("stabilizer of the entries is a subgroup")
}

/// Commutant, structure constants, center and classification.
pub fn end_algebra(rho: &Representation) -> Result<EndAlgebra> {
    let base = entry_field(rho);
    let basis = intertwiner_space(rho, rho)?;
    let coords = SpanCoordinates::new(&basis.iter().map(flatten).collect::<Vec<_>>())?;
    let structure_constants = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| coords.coordinates(&flatten(&(x * y))).expect("commutant is closed under products"))
                .collect()
        })
        .collect();
    let center = center_of(&basis);
    let classification = classify(rho, &base, &basis, &center)?;
    Ok(EndAlgebra { base, basis, structure_constants, center, classification })
}

fn center_of(basis: &[Matrix]) -> Vec<Matrix> {
    let r = basis.len();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for y in basis {
        let brackets: Vec<Vec<Cyclotomic>> = basis.iter().map(|x| flatten(&(&(x * y) - &(y * x)))).collect();
        for e in 0..brackets[0].len() {
            let row: Vec<Cyclotomic> = (0..r).map(|k| brackets[k][e].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return basis.to_vec();
    }
    Matrix::from_rows(rows)
        .expect("rows share a width")
        .nullspace()
        .iter()
        .map(|v| combination(basis, v))
        .collect()
}

fn classify(rho: &Representation, base: &Subfield, basis: &[Matrix], center: &[Matrix]) -> Result<EndClassification> {
    let dim = basis.len();
    if dim == 1 {
        return Ok(EndClassification::Field { degree: 1 });
    }
    if center.len() == dim {
        return Ok(if single_orbit(rho, base)? {
            EndClassification::Field { degree: dim }
        } else {
            EndClassification::Unclassified { dim, center_dim: center.len() }
        });
    }
    if dim == 4 && center.len() == 1 && base.is_rationals() {
        if let Some((a, b)) = quaternion_pair(basis) {
            let (a, b) = canonical_quaternion_pair(&a, &b);
            let invariants = local_invariants(&a, &b)?;
            let is_division = !invariants.is_trivial();
            return Ok(EndClassification::Quaternion { a, b, is_division, invariants });
        }
    }
    Ok(EndClassification::Unclassified { dim, center_dim: center.len() })
}

/// Multiplicities of the absolutely irreducible constituents.
fn constituents(rho: &Representation, table: &[Character]) -> Result<Vec<usize>> {
    let chi = rho.character();
    table
        .iter()
        .map(|psi| {
            let m = inner_product(&chi, psi)?;
            Ok(m.to_rational().filter(Rational::is_integer).map_or(0, |q| q.to_integer().try_into().unwrap_or(0)))
        })
        .collect()
}

/// Whether the constituents form one orbit under `Gal(Q(zeta_N)/F)`, each once.
fn single_orbit(rho: &Representation, base: &Subfield) -> Result<bool> {
    let table = character_table(rho.group())?;
    let mult = constituents(rho, &table)?;
    let present: Vec<usize> = (0..table.len()).filter(|&i| mult[i] > 0).collect();
    if present.is_empty() || present.iter().any(|&i| mult[i] != 1) {
        return Ok(false);
    }
    let orbit = orbit_indices(&table, present[0], base);
    Ok(orbit == present)
}

/// Indices of the table rows in the `Gal(/F)`-orbit of row `i`.
pub(crate) fn orbit_indices(table: &[Character], i: usize, field: &Subfield) -> Vec<usize> {
    let big = lcm_u32(table[i].conductor(), field.conductor());
    let gamma = lift_subgroup(field.conductor(), field.stabilizer(), big);
    let chi = table[i].lift(big).expect("conductor divides");
    let mut out: Vec<usize> = gamma
        .iter()
        .filter_map(|&k| {
            let t = chi.galois(k);
            table.iter().position(|psi| *psi == t)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Small integer combinations of the vectors, by increasing max-norm.
fn small_combinations(len: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for r in 1..=radius {
        let mut v = vec![-r; len];
        loop {
            if v.iter().any(|x| x.abs() == r) {
                out.push(v.clone());
            }
            let Some(i) = v.iter().position(|&x| x < r) else { break };
            v[i] += 1;
            for x in v.iter_mut().take(i) {
                *x = -r;
            }
        }
    }
    out
}

fn int_combination(vectors: &[Matrix], coeffs: &[i64]) -> Matrix {
    let c: Vec<Cyclotomic> = coeffs.iter().map(|&k| Cyclotomic::from_int(1, k)).collect();
    combination(vectors, &c)
}

/// Anticommuting trace-zero `i`, `j` with `i^2 = a`, `j^2 = b` nonzero scalars.
fn quaternion_pair(basis: &[Matrix]) -> Option<(Rational, Rational)> {
    let traces: Vec<Cyclotomic> = basis.iter().map(Matrix::trace).collect();
    let pure: Vec<Matrix> =
        Matrix::from_rows(vec![traces]).ok()?.nullspace().iter().map(|v| combination(basis, v)).collect();
    if pure.len() != 3 {
        return None;
    }
    let square = |x: &Matrix| -> Option<Rational> {
        (x * x).scalar_value().and_then(|c| c.to_rational()).filter(|q| !q.is_zero())
    };
    let (i, a) = small_combinations(3, 2).into_iter().find_map(|v| {
        let x = int_combination(&pure, &v);
        square(&x).map(|a| (x, a))
    })?;
    let rows: Vec<Vec<Cyclotomic>> = {
        let anti: Vec<Vec<Cyclotomic>> = pure.iter().map(|y| flatten(&(&(&i * y) + &(y * &i)))).collect();
        (0..anti[0].len()).map(|e| (0..3).map(|k| anti[k][e].clone()).collect()).collect()
    };
    let anticommuting: Vec<Matrix> =
        Matrix::from_rows(rows).ok()?.nullspace().iter().map(|v| combination(&pure, v)).collect();
    if anticommuting.is_empty() {
        return None;
    }
    let (j, b) = small_combinations(anticommuting.len(), 2).into_iter().find_map(|v| {
        let x = int_combination(&anticommuting, &v);
        square(&x).map(|b| (x, b))
    })?;
    let k = &i * &j;
    let span = vec![flatten(&Matrix::identity(i.rows(), i.conductor())), flatten(&i), flatten(&j), flatten(&k)];
    (crate::matrix::vectors_rank(&span) == 4).then_some((a, b))
}

/// The pair `(a, b)` with the same ramified places and least
/// `(max(|a|,|b|), |a|, |b|, a < 0, b < 0)` among squarefree integers up to 60.
pub fn canonical_quaternion_pair(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let target = match local_invariants(a, b) {
        Ok(inv) => inv.ramified(),
        Err(_) => return (a.clone(), b.clone()),
    };
    let squarefree = |k: i64| squarefree_part(&Rational::from_integer(k.into())) == BigInt::from(k);
    let mut candidates: Vec<i64> = (1..=60).flat_map(|k| [k, -k]).filter(|&k| squarefree(k)).collect();
    candidates.sort_by_key(|&k| (k.abs(), k < 0));
    let mut pairs: Vec<(i64, i64)> = candidates.iter().flat_map(|&x| candidates.iter().map(move |&y| (x, y))).collect();
    pairs.sort_by_key(|&(x, y)| (x.abs().max(y.abs()), x.abs(), y.abs(), x < 0, y < 0));
    for (x, y) in pairs {
        let (qx, qy) = (Rational::from_integer(x.into()), Rational::from_integer(y.into()));
        if local_invariants(&qx, &qy).map(|i| i.ramified()) == Ok(target.clone()) {
            return (qx, qy);
        }
    }
    (a.clone(), b.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Undecided,
}

/// Simple iff the commutant is a division algebra; otherwise falls back on the
/// orbit structure of the constituents.
pub fn is_simple_over(rho: &Representation, table: &[Character]) -> Simplicity {
    let Ok(end) = end_algebra(rho) else { return Simplicity::Undecided };
    match end.classification.is_division() {
        Some(true) => return Simplicity::Simple,
        Some(false) => return Simplicity::NotSimple,
        None => {}
    }
    let Ok(mult) = constituents(rho, table) else { return Simplicity::Undecided };
    let present: Vec<usize> = (0..table.len()).filter(|&i| mult[i] > 0).collect();
    let Some(&first) = present.first() else { return Simplicity::Undecided };
    if orbit_indices(table, first, &end.base) != present {
        return Simplicity::NotSimple;
    }
    if present.iter().any(|&i| mult[i] != mult[first]) {
        return Simplicity::NotSimple;
    }
    if mult[first] == 1 {
        return Simplicity::Simple;
    }
    Simplicity::Undecided
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Place;
    use crate::catalog;
    use crate::descent::restriction_of_scalars;
    use crate::rational::rat;

    #[test]
    fn absolutely_irreducible_is_field_one() {
        let end = end_algebra(&catalog::s3_2dim().unwrap()).unwrap();
        assert_eq!(end.classification, EndClassification::Field { degree: 1 });
    }

    #[test]
    fn c3_restriction_is_a_quadratic_field() {
        let res = restriction_of_scalars(&catalog::cyclic_char(3).unwrap(), &Subfield::rationals(1)).unwrap();
        let end = end_algebra(&res).unwrap();
        assert_eq!(end.classification, EndClassification::Field { degree: 2 });
        assert!(end.is_commutative());
        assert_eq!(end.center.len(), 2);
    }

    #[test]
    fn q8_restriction_is_the_hamilton_quaternions() {
        let res = restriction_of_scalars(&catalog::q8_2dim().unwrap(), &Subfield::rationals(1)).unwrap();
        let end = end_algebra(&res).unwrap();
        let EndClassification::Quaternion { a, b, is_division, invariants } = &end.classification else {
            panic!("expected a quaternion algebra, got {:?}", end.classification)
        };
        assert_eq!((a, b), (&rat(-1), &rat(-1)));
        assert!(is_division);
        assert_eq!(invariants.ramified(), vec![Place::Infinity, Place::prime(2)]);
        let table = character_table(res.group()).unwrap();
        assert_eq!(is_simple_over(&res, &table), Simplicity::Simple);
    }

    #[test]
    fn s3_restriction_is_split() {
        let res = restriction_of_scalars(&catalog::s3_2dim_over_qi().unwrap(), &Subfield::rationals(1)).unwrap();
        let end = end_algebra(&res).unwrap();
        assert_eq!(end.classification.is_division(), Some(false));
        let table = character_table(res.group()).unwrap();
        assert_eq!(is_simple_over(&res, &table), Simplicity::NotSimple);
        assert_eq!(is_simple_over(&catalog::s3_2dim().unwrap(), &table), Simplicity::Simple);
    }

    #[test]
    fn structure_constants_reproduce_products() {
        let res = restriction_of_scalars(&catalog::q8_2dim().unwrap(), &Subfield::rationals(1)).unwrap();
        let end = end_algebra(&res).unwrap();
        for (i, x) in end.basis.iter().enumerate() {
            for (j, y) in end.basis.iter().enumerate() {
                assert_eq!(combination(&end.basis, &end.structure_constants[i][j]), x * y);
            }
        }
    }

    #[test]
    fn canonical_pairs() {
        assert_eq!(canonical_quaternion_pair(&rat(-4), &rat(-9)), (rat(-1), rat(-1)));
        assert_eq!(canonical_quaternion_pair(&rat(1), &rat(-7)), (rat(1), rat(1)));
        assert_eq!(canonical_quaternion_pair(&rat(-1), &rat(3)), (rat(-1), rat(3)));
    }
}
