use serde::Serialize;

use super::cocycle::DescentMaps;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::galois::{fixed_subfield, mul_mod, Subfield};
use crate::matrix::{vectors_rank, Matrix};
use crate::rational::{euler_phi, Rational};
use crate::rep::Representation;

/// `phi_s : s rho -> rho` satisfying `phi_st = phi_s s(phi_t)` and `phi_1 = I`.
#[derive(Debug, Clone)]
pub struct DescentSystem {
    rep: Representation,
    field: Subfield,
    maps: DescentMaps,
}

impl DescentSystem {
    /// The system with no acting automorphisms.
    pub fn trivial(rho: &Representation) -> Self {
        let maps = super::cocycle::choose_descent_maps(rho, &[1], Default::default()).expect("identity map");
        Self { rep: rho.clone(), field: Subfield::full(rho.conductor()), maps }
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    /// The descent target `F`, the fixed field of the acting group.
    pub fn field(&self) -> &Subfield {
        &self.field
    }

    pub fn gamma(&self) -> &[u32] {
        self.maps.gamma()
    }

    pub fn map(&self, s: u32) -> Option<&Matrix> {
        self.maps.map(s)
    }

    /// Exhaustive check of the intertwining property, `phi_1 = I` and (DS).
    pub fn verify(&self) -> Result<()> {
        let n = self.maps.conductor();
        let gens = self.rep.group().generators();
        for (&s, phi) in self.gamma().iter().zip(self.maps.maps()) {
            let twisted = self.rep.twist(s);
            for &g in gens {
                if &(phi * twisted.matrix(g)) != &(self.rep.matrix(g) * phi) {
                    return Err(Error::NoIntertwiner(s));
                }
            }
        }
        if !self.map(1).is_some_and(Matrix::is_identity) {
            return Err(Error::CocycleNotSplit);
        }
        for &s in self.gamma() {
            for &t in self.gamma() {
                let lhs = self.map(mul_mod(s, t, n)).expect("closed under products");
                let rhs = self.map(s).unwrap() * &self.map(t).unwrap().galois(s);
                if *lhs != rhs {
                    return Err(Error::CocycleNotSplit);
                }
            }
        }
        Ok(())
    }
}

impl Serialize for DescentSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            field: &'a Subfield,
            conductor: u32,
            maps: std::collections::BTreeMap<String, &'a Matrix>,
        }
        let maps = self.gamma().iter().zip(self.maps.maps()).map(|(k, m)| (k.to_string(), m)).collect();
        Doc { field: &self.field, conductor: self.maps.conductor(), maps }.serialize(s)
    }
}

/// Rescales `phi_s` to `c_s^{-1} phi_s` and verifies (DS).
pub fn build_descent_system(rho: &Representation, maps: &DescentMaps, cochain: &[Cyclotomic]) -> Result<DescentSystem> {
    if cochain.len() != maps.gamma().len() {
        return Err(Error::ShapeMismatch("cochain does not match the acting group".into()));
    }
    if rho.conductor() != maps.conductor() {
        return Err(Error::ConductorMismatch(rho.conductor(), maps.conductor()));
    }
    let field = fixed_subfield(maps.conductor(), maps.gamma())?;
    let system = DescentSystem { rep: rho.clone(), field, maps: maps.rescaled(cochain)? };
    system.verify().map_err(|_| Error::CocycleNotSplit)?;
    Ok(system)
}

/// The `F`-form on the fixed vectors of the semilinear maps `v -> phi_s s(v)`.
///
/// Fixed vectors are found over `Q` in power-basis coordinates; `d` of them that
/// are independent over `Q(zeta_n)` form an `F`-basis, and conjugating into it
/// gives matrices with entries in `F`.
pub fn rational_form(ds: &DescentSystem) -> Result<Representation> {
    let rho = &ds.rep;
    let n = rho.conductor();
    let d = rho.dim();
    let phi = euler_phi(n) as usize;
    let width = d * phi;
    let mut equations: Vec<Vec<Rational>> = Vec::new();
    for (&s, map) in ds.gamma().iter().zip(ds.maps.maps()) {
        if s == 1 {
            continue;
        }
        // column (i, j): phi_s applied to s(zeta^j e_i) = zeta^{js} (column i of phi_s)
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(width);
        for i in 0..d {
            for j in 0..phi {
                let z = Cyclotomic::zeta_pow(n, (j as i64) * i64::from(s));
                let mut col = Vec::with_capacity(width);
                for r in 0..d {
                    let entry = (map.get(r, i) * &z).at(n);
                    col.extend_from_slice(entry.coeffs());
                }
                columns.push(col);
            }
        }
        for r in 0..width {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row[r] -= Rational::from_integer(1.into());
            equations.push(row);
        }
    }
    let fixed: Vec<Vec<Rational>> = if equations.is_empty() {
        (0..width)
            .map(|t| (0..width).map(|u| Rational::from_integer(i64::from(t == u).into())).collect())
            .collect()
    } else {
        let m = Matrix::from_fn(equations.len(), width, 1, |i, j| Cyclotomic::from_rational(1, equations[i][j].clone()));
        m.nullspace().into_iter().map(|v| v.iter().map(|x| x.to_rational().expect("rational")).collect()).collect()
    };
    let expected = d * ds.field.degree();
    if fixed.len() != expected {
        return Err(Error::FixedSpaceDimensionMismatch { expected, found: fixed.len() });
    }
    let mut basis: Vec<Vec<Cyclotomic>> = Vec::with_capacity(d);
    for q in &fixed {
        let v: Vec<Cyclotomic> =
            (0..d).map(|i| Cyclotomic::from_coeffs(n, q[i * phi..(i + 1) * phi].to_vec())).collect();
        let mut trial = basis.clone();
        trial.push(v);
        if vectors_rank(&trial) == trial.len() {
            basis = trial;
        }
        if basis.len() == d {
            break;
        }
    }
    if basis.len() != d {
        return Err(Error::FixedSpaceDimensionMismatch { expected: d, found: basis.len() });
    }
    let p = Matrix::from_columns(&basis)?.at(n);
    let form = rho.conjugate(&p.invert()?)?;
    for &g in rho.group().generators() {
        if !form.matrix(g).entries().iter().all(|x| ds.field.contains(x)) {
            return Err(Error::LiftFailure("form has entries outside the descent field".into()));
        }
    }
    Ok(form.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::descent::cocycle::{borel_tits_cocycle, choose_descent_maps, split_cocycle, ChooserOrder};

    fn system_for(rho: &Representation, gamma: &[u32]) -> Result<DescentSystem> {
        let maps = choose_descent_maps(rho, gamma, ChooserOrder::Lexicographic)?;
        let beta = borel_tits_cocycle(rho, &maps)?;
        let c = split_cocycle(&beta, 50)?;
        build_descent_system(rho, &maps, &c)
    }

    #[test]
    fn trivial_system_returns_the_rep() {
        let rho = catalog::cyclic_char(4).unwrap();
        let ds = DescentSystem::trivial(&rho);
        ds.verify().unwrap();
        assert_eq!(rational_form(&ds).unwrap(), rho);
    }

    #[test]
    fn s3_descends_to_rationals() {
        let rho = catalog::s3_2dim_over_qi().unwrap();
        let ds = system_for(&rho, &[1, 3]).unwrap();
        let phi = ds.map(3).unwrap();
        assert!((phi * &phi.galois(3)).is_identity());
        let form = rational_form(&ds).unwrap();
        assert_eq!(form.conductor(), 1);
        let chars: Vec<Cyclotomic> = [2, 0, -1].iter().map(|&k| Cyclotomic::from_int(1, k)).collect();
        assert_eq!(form.character().values(), chars.as_slice());
    }

    #[test]
    fn q8_does_not_split() {
        let rho = catalog::q8_2dim().unwrap();
        let maps = choose_descent_maps(&rho, &[1, 3], ChooserOrder::Lexicographic).unwrap();
        let fake = vec![Cyclotomic::one(4); 2];
        assert_eq!(build_descent_system(&rho, &maps, &fake).unwrap_err(), Error::CocycleNotSplit);
        assert!(system_for(&rho, &[1, 3]).is_err());
    }

    #[test]
    fn twisted_s3_form_is_conjugated_back() {
        // conjugating by a non-rational matrix forces a nontrivial cocycle
        let rho = catalog::s3_2dim_over_qi().unwrap();
        let p = Matrix::from_rows(vec![
            vec![Cyclotomic::one(4), Cyclotomic::zeta(4)],
            vec![Cyclotomic::zero(4), Cyclotomic::from_int(4, 2)],
        ])
        .unwrap();
        let twisted = rho.conjugate(&p).unwrap();
        let ds = system_for(&twisted, &[1, 3]).unwrap();
        let form = rational_form(&ds).unwrap();
        assert_eq!(form.conductor(), 1);
        assert_eq!(form.character(), rho.character().reduced());
    }
}
