//! Character tables by simultaneous diagonalization of class matrices modulo a
//! prime `p = 1 (mod e)`, lifted back to `Q(zeta_e)`.

use std::sync::Arc;

use crate::character::{inner_product, Character};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rational::{is_prime_u64, modinv_u64, modpow_u64, Rational};

/// Least prime `p = 1 (mod e)` with `p > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime_u64(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

/// Element of multiplicative order exactly `e` modulo the prime `p`.
fn root_of_unity(e: u64, p: u64) -> u64 {
    let factors: Vec<u64> = {
        let mut m = p - 1;
        let mut out = Vec::new();
        let mut q = 2;
        while q * q <= m {
            if m % q == 0 {
                out.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            out.push(m);
        }
        out
    };
    let generator = (2..p)
        .find(|&g| factors.iter().all(|&q| modpow_u64(g, (p - 1) / q, p) != 1))
        .expect("multiplicative group of a prime field is cyclic");
    modpow_u64(generator, (p - 1) / e, p)
}

/// Row-reduces in place modulo `p`, returning pivot columns.
fn rref_mod(a: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, k);
        let inv = modinv_u64(a[r][c], p).expect("nonzero mod a prime");
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace_mod(a: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = a.to_vec();
    let pivots = rref_mod(&mut m, p);
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[f] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[i][f]) % p;
        }
        out.push(v);
    }
    out
}

/// Class matrices `(M_j)_{ik} = #{x in C_j : x^{-1} z_k in C_i}` modulo `p`.
fn class_matrices(g: &FiniteGroup, p: u64) -> Vec<Vec<Vec<u64>>> {
    let k = g.num_classes();
    let mut out = vec![vec![vec![0u64; k]; k]; k];
    for (j, cj) in g.classes().iter().enumerate() {
        for kk in 0..k {
            let z = g.class_representative(kk);
            for &x in cj {
                let i = g.class_of(g.mul(g.inv(x), z));
                out[j][i][kk] += 1;
            }
        }
    }
    for m in out.iter_mut() {
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x %= p;
            }
        }
    }
    out
}

/// Splits `F_p^k` into common eigenlines of the class matrices.
fn common_eigenvectors(mats: &[Vec<Vec<u64>>], k: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for m in mats {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // image of each basis vector, as columns of a k x dim system
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| (0..k).map(|i| (0..k).fold(0, |acc, j| (acc + m[i][j] * v[j]) % p)).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let system: Vec<Vec<u64>> = (0..k)
                    .map(|i| {
                        basis
                            .iter()
                            .zip(&images)
                            .map(|(v, w)| (w[i] + p - lambda * v[i] % p) % p)
                            .collect()
                    })
                    .collect();
                let coeffs = nullspace_mod(&system, basis.len(), p);
                if coeffs.is_empty() {
                    continue;
                }
                found += coeffs.len();
                let sub: Vec<Vec<u64>> = coeffs
                    .iter()
                    .map(|c| (0..k).map(|i| basis.iter().zip(c).fold(0, |acc, (v, x)| (acc + v[i] * x) % p)).collect())
                    .collect();
                next.push(sub);
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(Error::LiftFailure("class matrix is not diagonalizable mod p".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::LiftFailure("class matrices do not separate the characters".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

/// Irreducible character values, one row per character, at conductor `exponent(G)`.
pub(crate) fn irreducible_values(g: &Arc<FiniteGroup>) -> Result<Vec<Vec<Cyclotomic>>> {
    let order = g.order() as u64;
    let e = g.exponent() as u64;
    let k = g.num_classes();
    let p = dixon_prime(e, order);
    let z = root_of_unity(e, p);
    let sizes: Vec<u64> = g.class_sizes().iter().map(|&s| s as u64).collect();
    let inv_class = g.inverse_classes();
    let mats = class_matrices(g, p);
    let vectors = common_eigenvectors(&mats, k, p)?;
    let n = e as u32;
    let mut rows: Vec<(usize, Vec<Vec<u64>>, Vec<Cyclotomic>)> = Vec::new();
    for w in vectors {
        let lead = modinv_u64(w[0], p).ok_or_else(|| Error::LiftFailure("eigenvector vanishes at identity".into()))?;
        let w: Vec<u64> = w.iter().map(|x| x * lead % p).collect();
        // sum_i w_i w_{i*} / |C_i| = |G| / d^2
        let s = (0..k).fold(0, |acc, i| {
            (acc + w[i] * w[inv_class[i]] % p * modinv_u64(sizes[i] % p, p).unwrap()) % p
        });
        let d2 = order % p * modinv_u64(s, p).ok_or_else(|| Error::LiftFailure("degree sum vanishes".into()))? % p;
        let d = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::LiftFailure("no integral degree".into()))?;
        let chi_mod: Vec<u64> =
            (0..k).map(|i| w[i] * d % p * modinv_u64(sizes[i] % p, p).unwrap() % p).collect();
        let mut values = Vec::with_capacity(k);
        let mut mults = Vec::with_capacity(k);
        let einv = modinv_u64(e % p, p).unwrap();
        for c in 0..k {
            let x = g.class_representative(c);
            let powers: Vec<u64> = (0..e).map(|l| chi_mod[g.class_of(g.pow(x, l as i64))]).collect();
            let mut coeffs = vec![Rational::from_integer(0.into()); e as usize];
            let mut m_c = Vec::with_capacity(e as usize);
            for kk in 0..e {
                let mut acc = 0;
                for (l, v) in powers.iter().enumerate() {
                    let zinv = modpow_u64(z, (e - kk) * l as u64 % e, p);
                    acc = (acc + v * zinv) % p;
                }
                let m = acc * einv % p;
                if m > d {
                    return Err(Error::LiftFailure(format!("eigenvalue multiplicity {m} exceeds degree {d}")));
                }
                coeffs[kk as usize] = Rational::from_integer((m as i64).into());
                m_c.push(m);
            }
            values.push(Cyclotomic::from_coeffs(n, coeffs));
            mults.push(m_c);
        }
        rows.push((d as usize, mults, values));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let values: Vec<Vec<Cyclotomic>> = rows.into_iter().map(|(_, _, v)| v).collect();
    let chars = values
        .iter()
        .map(|v| Character::new(Arc::clone(g), v.clone()))
        .collect::<Result<Vec<_>>>()?;
    verify_table(g, &chars)?;
    Ok(values)
}

/// Exact orthonormality and degree-sum check.
pub(crate) fn verify_table(g: &FiniteGroup, chars: &[Character]) -> Result<()> {
    if chars.len() != g.num_classes() {
        return Err(Error::LiftFailure(format!("{} characters for {} classes", chars.len(), g.num_classes())));
    }
    let mut degree_squares = 0usize;
    for (a, chi) in chars.iter().enumerate() {
        let d = chi.degree().ok_or_else(|| Error::LiftFailure("degree is not a positive integer".into()))?;
        degree_squares += d * d;
        for (b, psi) in chars.iter().enumerate().skip(a) {
            let ip = inner_product(chi, psi)?;
            let ok = if a == b { ip.is_one() } else { ip.is_zero() };
            if !ok {
                return Err(Error::LiftFailure(format!("rows {a} and {b} are not orthonormal")));
            }
        }
    }
    if degree_squares != g.order() {
        return Err(Error::LiftFailure("squared degrees do not sum to the order".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(2, 2), 3);
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(4, 8), 13);
        assert_eq!(dixon_prime(12, 48), 37);
    }

    #[test]
    fn roots_have_exact_order() {
        for (e, p) in [(4, 13), (6, 7), (12, 37)] {
            let z = root_of_unity(e, p);
            assert_eq!(modpow_u64(z, e, p), 1);
            assert!((1..e).all(|k| modpow_u64(z, k, p) != 1));
        }
    }
}
