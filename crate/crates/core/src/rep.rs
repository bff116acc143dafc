//! Matrix representations of finite groups over `Q(zeta_n)`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::character::{inner_product, Character};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::galois::GaloisAutomorphism;
use crate::group::{FiniteGroup, SubgroupEmbedding};
use crate::matrix::Matrix;
use crate::rational::{lcm_u32, Rational};

/// A homomorphism `G -> GL_d(Q(zeta_n))`, stored as one matrix per element.
#[derive(Clone)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    conductor: u32,
    dim: usize,
    matrices: Vec<Matrix>,
}

/// A pair `(a, b)` with `rho(a) rho(b) != rho(ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FailingPair {
    pub a: usize,
    pub b: usize,
}

/// Outcome of the exhaustive homomorphism check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_not_unit: Option<usize>,
    pub failures: Vec<FailingPair>,
}

impl ValidationReport {
    pub fn first_failure(&self) -> Option<FailingPair> {
        self.failures.first().copied()
    }
}

/// Checks `rho(e) = I` and `rho(a) rho(b) = rho(ab)` for every pair.
pub fn validate_matrices(group: &FiniteGroup, matrices: &[Matrix]) -> ValidationReport {
    let mut failures = Vec::new();
    let e = group.identity();
    let identity_not_unit = (!matrices[e].is_identity()).then_some(e);
    for a in 0..group.order() {
        for b in 0..group.order() {
            if &matrices[a] * &matrices[b] != matrices[group.mul(a, b)] {
                failures.push(FailingPair { a, b });
            }
        }
    }
    ValidationReport { ok: failures.is_empty() && identity_not_unit.is_none(), identity_not_unit, failures }
}

fn aligned_matrices(matrices: Vec<Matrix>) -> Result<(u32, usize, Vec<Matrix>)> {
    let d = matrices.first().map_or(0, Matrix::rows);
    if d == 0 {
        return Err(Error::InvalidRepresentation("dimension must be at least 1".into()));
    }
    if matrices.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::InvalidRepresentation("matrices must all be square of one size".into()));
    }
    let n = matrices.iter().fold(1, |m, x| lcm_u32(m, x.conductor()));
    Ok((n, d, matrices.into_iter().map(|m| m.at(n)).collect()))
}

impl Representation {
    /// One matrix per group element; the homomorphism property is verified.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let (conductor, dim, matrices) = aligned_matrices(matrices)?;
        let report = validate_matrices(&group, &matrices);
        if !report.ok {
            return Err(Error::InvalidRepresentation(describe_failure(&group, &report)));
        }
        Ok(Self { group, conductor, dim, matrices })
    }

    /// Extends generator images along the breadth-first numbering, then verifies
    /// `rho(g) rho(s) = rho(gs)` for every element `g` and generator `s`, which
    /// forces the full homomorphism property.
    pub fn from_generators(group: Arc<FiniteGroup>, images: &[(usize, Matrix)]) -> Result<Self> {
        let (conductor, dim, mats) = aligned_matrices(images.iter().map(|(_, m)| m.clone()).collect())?;
        let gens: Vec<(usize, Matrix)> = images.iter().map(|(g, _)| *g).zip(mats).collect();
        let mut matrices: Vec<Option<Matrix>> = vec![None; group.order()];
        matrices[group.identity()] = Some(Matrix::identity(dim, conductor));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            for (s, m) in &gens {
                let h = group.mul(g, *s);
                if matrices[h].is_none() {
                    matrices[h] = Some(matrices[g].as_ref().unwrap() * m);
                    queue.push_back(h);
                }
            }
        }
        let matrices: Vec<Matrix> = matrices
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidRepresentation("generators do not generate the group".into()))?;
        for g in 0..group.order() {
            for (s, m) in &gens {
                if &matrices[g] * m != matrices[group.mul(g, *s)] {
                    return Err(Error::InvalidRepresentation(format!(
                        "rho({}) rho({}) != rho({}{})",
                        group.label(g),
                        group.label(*s),
                        group.label(g),
                        group.label(*s)
                    )));
                }
            }
        }
        Ok(Self { group, conductor, dim, matrices })
    }

    /// Skips verification; for constructions that preserve the homomorphism property.
    pub(crate) fn from_parts(group: Arc<FiniteGroup>, matrices: Vec<Matrix>) -> Self {
        let (conductor, dim, matrices) = aligned_matrices(matrices).expect("derived matrices are well formed");
        Self { group, conductor, dim, matrices }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_parts(Arc::clone(group), vec![Matrix::identity(1, 1); group.order()])
    }

    /// Left regular representation on the basis of group elements.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| Matrix::from_fn(n, n, 1, |i, j| Cyclotomic::from_int(1, i64::from(group.mul(g, j) == i))))
            .collect();
        Self::from_parts(Arc::clone(group), matrices)
    }

    /// The 1-dimensional representation of a linear character.
    pub fn from_linear_character(chi: &Character) -> Result<Self> {
        if chi.degree() != Some(1) {
            return Err(Error::PreconditionFailed("character is not linear".into()));
        }
        let g = chi.group();
        let matrices = (0..g.order()).map(|x| Matrix::scalar(1, chi.at_element(x))).collect();
        Self::new(Arc::clone(g), matrices)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn validate(&self) -> ValidationReport {
        validate_matrices(&self.group, &self.matrices)
    }

    pub fn character(&self) -> Character {
        let values = self.group.classes().iter().map(|c| self.matrices[c[0]].trace()).collect();
        Character::new(Arc::clone(&self.group), values).expect("one value per class")
    }

    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::ConductorMismatch(self.conductor, m));
        }
        Ok(self.at(m))
    }

    pub(crate) fn at(&self, m: u32) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        Self {
            group: Arc::clone(&self.group),
            conductor: m,
            dim: self.dim,
            matrices: self.matrices.iter().map(|x| x.at(m)).collect(),
        }
    }

    /// Rewrites over `Q(zeta_m)` if all entries lie there.
    pub fn descend(&self, m: u32) -> Option<Self> {
        let matrices = self.matrices.iter().map(|x| x.descend(m)).collect::<Option<Vec<_>>>()?;
        Some(Self { group: Arc::clone(&self.group), conductor: m, dim: self.dim, matrices })
    }

    /// Least conductor containing every matrix entry.
    pub fn min_conductor(&self) -> u32 {
        let gens = self.group.generators();
        let entries: Vec<Cyclotomic> =
            gens.iter().flat_map(|&g| self.matrices[g].entries().iter().cloned()).collect();
        crate::cyclotomic::min_conductor_of(&entries)
    }

    pub fn reduced(&self) -> Self {
        let m = self.min_conductor();
        self.descend(m).expect("entries lie in the minimal field")
    }

    /// Entrywise `zeta -> zeta^k` at this conductor.
    pub fn twist(&self, k: u32) -> Self {
        Self {
            group: Arc::clone(&self.group),
            conductor: self.conductor,
            dim: self.dim,
            matrices: self.matrices.iter().map(|x| x.galois(k)).collect(),
        }
    }

    /// Entrywise automorphism; the representation is lifted to its conductor.
    pub fn galois_twist(&self, s: &GaloisAutomorphism) -> Result<Self> {
        Ok(self.lift(s.conductor())?.twist(s.exponent()))
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::from_parts(Arc::clone(&self.group), matrices))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.kron(b)).collect();
        Ok(Self::from_parts(Arc::clone(&self.group), matrices))
    }

    /// `rho (x) sigma` on a product built by `FiniteGroup::direct_product(A, B)`.
    pub fn outer_tensor(&self, other: &Self, product: &Arc<FiniteGroup>) -> Result<Self> {
        let nb = other.group.order();
        if product.order() != self.group.order() * nb {
            return Err(Error::GroupMismatch);
        }
        let matrices = (0..product.order())
            .map(|x| self.matrices[x / nb].kron(&other.matrices[x % nb]))
            .collect();
        Representation::new(Arc::clone(product), matrices)
    }

    /// `x -> P rho(x) P^{-1}`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        let pinv = p.invert()?;
        let matrices = self.matrices.iter().map(|m| &(p * m) * &pinv).collect();
        Ok(Self::from_parts(Arc::clone(&self.group), matrices))
    }

    pub fn restrict(&self, emb: &SubgroupEmbedding) -> Result<Self> {
        if !emb.parent.same_as(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let matrices = emb.map.iter().map(|&g| self.matrices[g].clone()).collect();
        Ok(Self::from_parts(Arc::clone(&emb.sub), matrices))
    }

    /// Restriction to an invariant subspace spanned by the columns of `basis`.
    pub fn subrepresentation(&self, basis: &Matrix) -> Result<Self> {
        let k = basis.cols();
        let rows = basis.independent_rows();
        if rows.len() != k {
            return Err(Error::PreconditionFailed("basis vectors are dependent".into()));
        }
        let block_inv = basis.submatrix(&rows, &(0..k).collect::<Vec<_>>()).invert()?;
        let mut matrices = Vec::with_capacity(self.group.order());
        for m in &self.matrices {
            let image = m * basis;
            let coords = &block_inv * &image.submatrix(&rows, &(0..k).collect::<Vec<_>>());
            if &(basis * &coords) != &image {
                return Err(Error::PreconditionFailed("subspace is not invariant".into()));
            }
            matrices.push(coords);
        }
        Ok(Self::from_parts(Arc::clone(&self.group), matrices))
    }

    /// Exact basis of `{T : T rho1(g) = rho2(g) T}`.
    pub fn intertwiner_space(&self, other: &Self) -> Result<Vec<Matrix>> {
        intertwiner_space(self, other)
    }

    pub fn is_absolutely_irreducible(&self) -> bool {
        intertwiner_space(self, self).map(|b| b.len() == 1).unwrap_or(false)
    }

    /// `(chi(1)/|G|) sum_g chi(g^{-1}) rho(g)`.
    pub fn isotypic_projector(&self, chi: &Character) -> Result<Matrix> {
        if !chi.group().same_as(&self.group) {
            return Err(Error::GroupMismatch);
        }
        if !chi.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let n = lcm_u32(self.conductor, chi.conductor());
        let mut acc = Matrix::zeros(self.dim, self.dim, n);
        for g in 0..self.group.order() {
            let c = chi.at_element(self.group.inv(g));
            if !c.is_zero() {
                acc = &acc + &self.matrices[g].scale(c);
            }
        }
        let d = chi.value(0).to_rational().expect("degree is rational");
        Ok(acc.scale_rational(&(d / Rational::from_integer((self.group.order() as i64).into()))))
    }

    /// `<chi_rho, chi>` as a non-negative integer.
    pub fn multiplicity(&self, chi: &Character) -> Result<usize> {
        if !chi.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let m = inner_product(&self.character(), chi)?;
        m.to_rational()
            .filter(|q| q.is_integer() && *q >= Rational::from_integer(0.into()))
            .and_then(|q| usize::try_from(q.to_integer()).ok())
            .ok_or_else(|| Error::PreconditionFailed("multiplicity is not a non-negative integer".into()))
    }

    /// Averaged intertwiner `sum_g rho2(g) E_ab rho1(g)^{-1}` for the first unit
    /// matrix `E_ab` in `order` giving a nonzero result, scaled so its first
    /// nonzero entry in `order` is 1.
    pub fn averaged_intertwiner(&self, target: &Self, order: &[(usize, usize)]) -> Result<Option<Matrix>> {
        self.check_group(target)?;
        let n = lcm_u32(self.conductor, target.conductor);
        let (src, dst) = (self.at(n), target.at(n));
        for &(a, b) in order {
            let mut acc = Matrix::zeros(dst.dim, src.dim, n);
            for g in 0..self.group.order() {
                let left = &dst.matrices[g];
                let right = &src.matrices[self.group.inv(g)];
                // column a of rho2(g) times row b of rho1(g^{-1})
                let col: Vec<Cyclotomic> = (0..dst.dim).map(|i| left.get(i, a).clone()).collect();
                let row = right.row(b);
                let outer = Matrix::from_fn(dst.dim, src.dim, n, |i, j| &col[i] * &row[j]);
                acc = &acc + &outer;
            }
            if let Some(lead) = order.iter().map(|&(i, j)| acc.get(i, j)).find(|x| !x.is_zero()) {
                let lead = lead.inv()?;
                return Ok(Some(acc.scale(&lead)));
            }
        }
        Ok(None)
    }

    /// Unit-matrix positions `(a, b)` in lexicographic order.
    pub fn lexicographic_order(rows: usize, cols: usize) -> Vec<(usize, usize)> {
        (0..rows).flat_map(|a| (0..cols).map(move |b| (a, b))).collect()
    }
}

fn describe_failure(group: &FiniteGroup, report: &ValidationReport) -> String {
    if let Some(e) = report.identity_not_unit {
        return format!("rho({}) is not the identity", group.label(e));
    }
    match report.first_failure() {
        Some(FailingPair { a, b }) => format!(
            "rho({}) rho({}) != rho({}) ({} failing pairs)",
            group.label(a),
            group.label(b),
            group.label(group.mul(a, b)),
            report.failures.len()
        ),
        None => "valid".into(),
    }
}

/// Exact basis of `{T : T rho1(g) = rho2(g) T for all g}`, from the equations
/// at a generating set.
pub fn intertwiner_space(rho1: &Representation, rho2: &Representation) -> Result<Vec<Matrix>> {
    rho1.check_group(rho2)?;
    let n = lcm_u32(rho1.conductor, rho2.conductor);
    let (d1, d2) = (rho1.dim, rho2.dim);
    let unknowns = d1 * d2;
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for &s in rho1.group.generators() {
        let a = rho1.matrices[s].at(n);
        let b = rho2.matrices[s].at(n);
        for i in 0..d2 {
            for j in 0..d1 {
                let mut row = vec![Cyclotomic::zero(n); unknowns];
                for k in 0..d1 {
                    let t = i * d1 + k;
                    row[t] = &row[t] + a.get(k, j);
                }
                for k in 0..d2 {
                    let t = k * d1 + j;
                    row[t] = &row[t] - b.get(i, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns)
            .map(|t| (0..unknowns).map(|u| Cyclotomic::from_int(n, i64::from(t == u))).collect())
            .collect()
    } else {
        Matrix::from_rows(rows)?.nullspace()
    };
    Ok(basis
        .into_iter()
        .map(|v| Matrix::from_fn(d2, d1, n, |i, j| v[i * d1 + j].clone()))
        .collect())
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.matrices == other.matrices
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation(dim {}, over Q(z{}), group order {})", self.dim, self.conductor, self.group.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::character_table;
    use crate::group::from_cycles;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::closure(&[from_cycles(3, &[&[0, 1]]), from_cycles(3, &[&[0, 1, 2]])]).unwrap())
    }

    fn s3_2dim() -> Representation {
        let g = s3();
        let t = Matrix::from_ints(&[&[0, 1], &[1, 0]], 1);
        let r = Matrix::from_ints(&[&[0, -1], &[1, -1]], 1);
        let gens = g.generators().to_vec();
        Representation::from_generators(g, &[(gens[0], t), (gens[1], r)]).unwrap()
    }

    fn c4_char() -> Representation {
        let g = Arc::new(FiniteGroup::closure(&[from_cycles(4, &[&[0, 1, 2, 3]])]).unwrap());
        let s = g.generators()[0];
        Representation::from_generators(g, &[(s, Matrix::scalar(1, &Cyclotomic::zeta(4)))]).unwrap()
    }

    #[test]
    fn validation_reports_failing_pair() {
        let rho = s3_2dim();
        assert!(rho.validate().ok);
        let mut mats = rho.matrices().to_vec();
        mats[1] = -&mats[1];
        let report = validate_matrices(rho.group(), &mats);
        assert!(!report.ok);
        assert!(report.failures.iter().all(|p| p.a == 1 || p.b == 1 || rho.group().mul(p.a, p.b) == 1));
        assert!(Representation::new(rho.group().clone(), mats).is_err());
    }

    #[test]
    fn characters_of_standard_reps() {
        let g = s3();
        let reg = Representation::regular(&g);
        let ints: Vec<Cyclotomic> = [6, 0, 0].iter().map(|&x| Cyclotomic::from_int(1, x)).collect();
        assert_eq!(reg.character().values(), ints.as_slice());
        assert!(Representation::trivial(&g).character().values().iter().all(Cyclotomic::is_one));
    }

    #[test]
    fn twists_are_strict() {
        let rho = c4_char();
        let t = rho.twist(3);
        let s = rho.group().generators()[0];
        assert_eq!(t.matrix(s).get(0, 0), &-Cyclotomic::zeta(4));
        let r = s3_2dim().lift(12).unwrap();
        for k in [5, 7, 11] {
            for l in [5, 7, 11] {
                assert_eq!(r.twist(k).twist(l), r.twist(k * l % 12));
            }
        }
    }

    #[test]
    fn intertwiner_examples() {
        let rho = s3_2dim();
        assert_eq!(intertwiner_space(&rho, &rho).unwrap().len(), 1);
        let g = rho.group().clone();
        let table = character_table(&g).unwrap();
        let sign = Representation::from_linear_character(&table[1]).unwrap();
        assert!(intertwiner_space(&Representation::trivial(&g), &sign).unwrap().is_empty());
        let dbl = rho.direct_sum(&rho).unwrap();
        assert_eq!(intertwiner_space(&dbl, &dbl).unwrap().len(), 4);
        assert!(!Representation::trivial(&g).direct_sum(&Representation::trivial(&g)).unwrap().is_absolutely_irreducible());
    }

    #[test]
    fn projector_examples() {
        let rho = s3_2dim();
        let g = rho.group().clone();
        let table = character_table(&g).unwrap();
        assert!(rho.isotypic_projector(&rho.character()).unwrap().is_identity());
        assert!(rho.isotypic_projector(&table[0]).unwrap().is_zero());
        let reg = Representation::regular(&g);
        let p = reg.isotypic_projector(&table[2]).unwrap();
        assert_eq!(p.rank(), 4);
        assert_eq!(&p * &p, p);
        assert_eq!(reg.multiplicity(&table[2]).unwrap(), 2);
        assert_eq!(rho.multiplicity(&rho.character()).unwrap(), 1);
    }

    #[test]
    fn averaged_chooser_is_normalized() {
        let rho = c4_char();
        let t = rho.twist(3);
        assert_eq!(t.averaged_intertwiner(&rho, &[(0, 0)]).unwrap(), None);
        let r = s3_2dim();
        let phi = r.averaged_intertwiner(&r, &Representation::lexicographic_order(2, 2)).unwrap().unwrap();
        assert!(phi.first_nonzero().unwrap().is_one());
        assert!(phi.scalar_value().is_some());
    }
}
