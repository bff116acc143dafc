//! Built-in groups and representations used by the tests and the `catalog:` scheme.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{from_cycles, FiniteGroup, Permutation, SubgroupEmbedding};
use crate::matrix::Matrix;
use crate::rep::Representation;

pub const GROUP_NAMES: [&str; 12] = ["C2", "C3", "C4", "C5", "C6", "S3", "D4", "Q8", "A4", "Dic3", "Q8xC2", "Q8xS3"];

pub const REP_NAMES: [&str; 8] =
    ["q8_2dim", "q8_2dim_qi", "s3_2dim", "s3_2dim_over_Qi", "c4_char", "c3_char", "q8xc2_2_sign", "q8xs3_2_2"];

static GROUPS: LazyLock<Mutex<HashMap<String, Arc<FiniteGroup>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Shared instance of a catalog group; character tables are cached on it.
pub fn group(name: &str) -> Result<Arc<FiniteGroup>> {
    if let Some(g) = GROUPS.lock().unwrap().get(name) {
        return Ok(Arc::clone(g));
    }
    let g = Arc::new(build_group(name)?);
    Ok(Arc::clone(GROUPS.lock().unwrap().entry(name.to_string()).or_insert(g)))
}

fn build_group(name: &str) -> Result<FiniteGroup> {
    match name {
        "C2" | "C3" | "C4" | "C5" | "C6" => cyclic(name[1..].parse().unwrap()),
        "S3" => FiniteGroup::closure_named(&[("t", from_cycles(3, &[&[0, 1]])), ("r", from_cycles(3, &[&[0, 1, 2]]))]),
        "D4" => FiniteGroup::closure_named(&[("r", from_cycles(4, &[&[0, 1, 2, 3]])), ("s", from_cycles(4, &[&[1, 3]]))]),
        "Q8" => FiniteGroup::closure_named(&[("i", quaternion_i()), ("j", quaternion_j())]),
        "A4" => FiniteGroup::closure_named(&[
            ("a", from_cycles(4, &[&[0, 1, 2]])),
            ("b", from_cycles(4, &[&[0, 1], &[2, 3]])),
        ]),
        "Dic3" => dicyclic3(),
        "Q8xC2" => Ok(FiniteGroup::direct_product(&*group("Q8")?, &*group("C2")?)),
        "Q8xS3" => Ok(FiniteGroup::direct_product(&*group("Q8")?, &*group("S3")?)),
        _ => Err(Error::Parse(format!("unknown catalog group {name:?}"))),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    let cycle: Vec<usize> = (0..n).collect();
    FiniteGroup::closure_named(&[("g", from_cycles(n, &[&cycle]))])
}

// Points 0..3 are 1, i, j, k and 4..7 their negatives; generators act by left multiplication.
fn quaternion_i() -> Permutation {
    vec![1, 4, 3, 6, 5, 0, 7, 2]
}

fn quaternion_j() -> Permutation {
    vec![2, 7, 4, 1, 6, 3, 0, 5]
}

/// `<a, x | a^6, x^2 = a^3, x a x^{-1} = a^{-1}>`, element `a^k x^s` numbered `k + 6 s`.
fn dicyclic3() -> Result<FiniteGroup> {
    let idx = |k: i64, s: i64| (k.rem_euclid(6) + 6 * s) as usize;
    let mut mul = vec![vec![0; 12]; 12];
    for s in 0..2 {
        for k in 0..6 {
            for t in 0..2 {
                for m in 0..6 {
                    let mut e = k + if s == 1 { -m } else { m };
                    let mut u = s + t;
                    if u == 2 {
                        e += 3;
                        u = 0;
                    }
                    mul[idx(k, s)][idx(m, t)] = idx(e, u);
                }
            }
        }
    }
    let labels = (0..12)
        .map(|i| match (i % 6, i / 6) {
            (0, 0) => "e".to_string(),
            (k, 0) => format!("a^{k}"),
            (0, _) => "x".to_string(),
            (k, _) => format!("a^{k}*x"),
        })
        .collect();
    FiniteGroup::from_table(mul, Some(labels))
}

fn gen(g: &FiniteGroup, label: &str) -> usize {
    g.element_by_label(label).expect("catalog generator label")
}

fn cyc(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::from_int(n, k)
}

/// Two-dimensional irreducible of Q8 over `Q(i)`.
pub fn q8_2dim() -> Result<Representation> {
    let g = group("Q8")?;
    let z = Cyclotomic::zeta(4);
    let i = Matrix::from_rows(vec![vec![z.clone(), cyc(4, 0)], vec![cyc(4, 0), -&z]])?;
    let j = Matrix::from_ints(&[&[0, -1], &[1, 0]], 4);
    Representation::from_generators(Arc::clone(&g), &[(gen(&g, "i"), i), (gen(&g, "j"), j)])
}

/// Two-dimensional irreducible of S3 with integer matrices.
pub fn s3_2dim() -> Result<Representation> {
    let g = group("S3")?;
    let t = Matrix::from_ints(&[&[0, 1], &[1, 0]], 1);
    let r = Matrix::from_ints(&[&[0, -1], &[1, -1]], 1);
    Representation::from_generators(Arc::clone(&g), &[(gen(&g, "t"), t), (gen(&g, "r"), r)])
}

pub fn s3_2dim_over_qi() -> Result<Representation> {
    s3_2dim()?.lift(4)
}

/// Faithful character `g -> zeta_n` of the cyclic group of order `n`.
pub fn cyclic_char(n: usize) -> Result<Representation> {
    let g = group(&format!("C{n}"))?;
    let z = Matrix::scalar(1, &Cyclotomic::zeta(n as u32));
    Representation::from_generators(Arc::clone(&g), &[(gen(&g, "g"), z)])
}

/// Sign character of C2.
pub fn c2_sign() -> Result<Representation> {
    let g = group("C2")?;
    Representation::from_generators(Arc::clone(&g), &[(gen(&g, "g"), Matrix::from_ints(&[&[-1]], 1))])
}

/// Outer tensor product of the Q8 two-dimensional irreducible with the sign of C2.
pub fn q8xc2_2_sign() -> Result<Representation> {
    q8_2dim()?.outer_tensor(&c2_sign()?, &group("Q8xC2")?)
}

/// Outer tensor product of the two-dimensional irreducibles of Q8 and S3.
pub fn q8xs3_2_2() -> Result<Representation> {
    q8_2dim()?.outer_tensor(&s3_2dim()?, &group("Q8xS3")?)
}

/// Embedding of the first factor `A -> A x B` of a catalog direct product.
pub fn first_factor(product: &str) -> Result<SubgroupEmbedding> {
    let (a, b) = product.split_once('x').ok_or_else(|| Error::Parse(format!("{product:?} is not a product")))?;
    let (ga, gb, gp) = (group(a)?, group(b)?, group(product)?);
    let map = (0..ga.order()).map(|x| x * gb.order() + gb.identity()).collect();
    SubgroupEmbedding::new(ga, gp, map)
}

/// Looks up a catalog representation by name.
pub fn representation(name: &str) -> Result<Representation> {
    match name {
        "q8_2dim" => q8_2dim()?.lift(8),
        "q8_2dim_qi" => q8_2dim(),
        "s3_2dim" => s3_2dim(),
        "s3_2dim_over_Qi" => s3_2dim_over_qi(),
        "c4_char" => cyclic_char(4),
        "c3_char" => cyclic_char(3),
        "q8xc2_2_sign" => q8xc2_2_sign(),
        "q8xs3_2_2" => q8xs3_2_2(),
        _ => Err(Error::Parse(format!("unknown catalog representation {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::character_table;

    #[test]
    fn group_orders_and_classes() {
        let expected = [
            ("C2", 2, 2),
            ("C3", 3, 3),
            ("C4", 4, 4),
            ("C5", 5, 5),
            ("C6", 6, 6),
            ("S3", 6, 3),
            ("D4", 8, 5),
            ("Q8", 8, 5),
            ("A4", 12, 4),
            ("Dic3", 12, 6),
            ("Q8xC2", 16, 10),
            ("Q8xS3", 48, 15),
        ];
        for (name, order, classes) in expected {
            let g = group(name).unwrap();
            assert_eq!((g.order(), g.num_classes()), (order, classes), "{name}");
        }
    }

    #[test]
    fn q8_character_and_table() {
        let rho = q8_2dim().unwrap();
        let vals: Vec<Cyclotomic> = [2, -2, 0, 0, 0].iter().map(|&x| cyc(1, x)).collect();
        assert_eq!(rho.character().values(), vals.as_slice());
        assert!(rho.character().is_irreducible());
        let degrees: Vec<usize> = character_table(rho.group()).unwrap().iter().map(|c| c.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn named_reps_build() {
        for name in REP_NAMES {
            let r = representation(name).unwrap();
            assert!(r.validate().ok, "{name}");
        }
        assert_eq!(representation("q8_2dim").unwrap().conductor(), 8);
        assert!(representation("nope").is_err());
    }
}
