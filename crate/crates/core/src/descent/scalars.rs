use std::sync::Arc;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::galois::Subfield;
use crate::matrix::{vectors_rank, Matrix, SpanCoordinates};
use crate::rational::lcm_u32;
use crate::rep::Representation;

/// `E` as a vector space over `F`, both inside `Q(zeta_n)`.
struct RelativeBasis {
    n: u32,
    small: Vec<Cyclotomic>,
    big: Vec<Cyclotomic>,
    coords: SpanCoordinates,
}

fn rational_coords(x: &Cyclotomic, n: u32) -> Vec<Cyclotomic> {
    x.at(n).coeffs().iter().map(|q| Cyclotomic::from_rational(1, q.clone())).collect()
}

impl RelativeBasis {
    /// Greedy `F`-basis of `E` drawn from the `Q`-basis of `E`.
    fn new(e: &Subfield, f: &Subfield, n: u32) -> Result<Self> {
        let small = f.basis().to_vec();
        let mut big: Vec<Cyclotomic> = Vec::new();
        let mut span: Vec<Vec<Cyclotomic>> = Vec::new();
        for x in e.basis() {
            let mut trial = span.clone();
            trial.extend(small.iter().map(|b| rational_coords(&(b * x), n)));
            if vectors_rank(&trial) == trial.len() {
                span = trial;
                big.push(x.at(n));
            }
        }
        if span.len() != e.degree() {
            return Err(Error::NotASubfield);
        }
        let coords = SpanCoordinates::new(&span)?;
        Ok(Self { n, small, big, coords })
    }

    fn degree(&self) -> usize {
        self.big.len()
    }

    /// `c_i` in `F` with `y = sum_i c_i e_i`.
    fn expand(&self, y: &Cyclotomic) -> Result<Vec<Cyclotomic>> {
        let q = self
            .coords
            .coordinates(&rational_coords(y, self.n))
            .ok_or_else(|| Error::PreconditionFailed(format!("{y} lies outside the source field")))?;
        let f = self.small.len();
        Ok((0..self.degree())
            .map(|i| {
                self.small.iter().enumerate().fold(Cyclotomic::zero(self.n), |acc, (s, b)| {
                    &acc + &b.scale(&q[i * f + s].to_rational().expect("rational coordinate"))
                })
            })
            .collect())
    }

    /// Matrix of multiplication by `x` on the `F`-basis.
    fn block(&self, x: &Cyclotomic) -> Result<Matrix> {
        let r = self.degree();
        let mut m = Matrix::zeros(r, r, self.n);
        for (j, e) in self.big.iter().enumerate() {
            for (i, c) in self.expand(&(x * e))?.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

/// `Res_{E/F}` for a representation whose entries lie in `E`.
pub fn restriction_of_scalars_between(rho: &Representation, from: &Subfield, to: &Subfield) -> Result<Representation> {
    let n = lcm_u32(rho.conductor(), from.min_conductor());
    let e = from.at_conductor(n)?;
    let f = to.at_conductor(n).map_err(|_| Error::NotASubfield)?;
    if !f.is_subfield_of(&e) {
        return Err(Error::NotASubfield);
    }
    let rho = rho.lift(n)?;
    let g = rho.group();
    if !g.generators().iter().all(|&s| rho.matrix(s).fixed_by(e.stabilizer())) {
        return Err(Error::NotASubfield);
    }
    let basis = RelativeBasis::new(&e, &f, n)?;
    let r = basis.degree();
    let d = rho.dim();
    let mut images = Vec::new();
    for &s in g.generators() {
        let m = rho.matrix(s);
        let mut big = Matrix::zeros(d * r, d * r, n);
        for a in 0..d {
            for b in 0..d {
                let block = basis.block(m.get(a, b))?;
                for i in 0..r {
                    for j in 0..r {
                        big.set(a * r + i, b * r + j, block.get(i, j).clone());
                    }
                }
            }
        }
        images.push((s, big));
    }
    Ok(Representation::from_generators(Arc::clone(g), &images)?.reduced())
}

/// `Res_{Q(zeta_n)/F}` with `n` the conductor of `rho`.
pub fn restriction_of_scalars(rho: &Representation, field: &Subfield) -> Result<Representation> {
    if rho.conductor() % field.min_conductor() != 0 {
        return Err(Error::NotASubfield);
    }
    restriction_of_scalars_between(rho, &Subfield::full(rho.conductor()), field)
}
