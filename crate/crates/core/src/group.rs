//! Finite groups stored as fully enumerated multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Largest group `closure` will enumerate.
pub const ORDER_CAP: usize = 10_000;

/// Bijection of `{0, .., n-1}` given by its image list.
pub type Permutation = Vec<usize>;

/// A finite group with its conjugacy classes.
///
/// Classes are ordered by element order and then by least member, so the
/// identity class comes first.
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    orders: Vec<usize>,
    exponent: usize,
    generators: Vec<usize>,
    labels: Vec<String>,
    table: OnceLock<Result<Vec<Vec<Cyclotomic>>>>,
}

impl FiniteGroup {
    /// Builds from a multiplication table, checking the group axioms.
    pub fn from_table(mul: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a square array of element indices".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            inv[g] = h;
        }
        check_associative(&mul)?;
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidGroup(format!("{} labels for {n} elements", l.len())));
            }
        }
        let generators = greedy_generators(&mul, identity);
        Ok(Self::assemble(mul, identity, inv, generators, labels))
    }

    fn assemble(
        mul: Vec<Vec<usize>>,
        identity: usize,
        inv: Vec<usize>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let n = mul.len();
        let orders: Vec<usize> = (0..n)
            .map(|g| {
                let (mut x, mut k) = (g, 1);
                while x != identity {
                    x = mul[x][g];
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = orders.iter().fold(1, |a, &b| a.lcm(&b));
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|x| mul[mul[x][g]][inv[x]]).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            classes.push(cls);
        }
        classes.sort_by_key(|c| (orders[c[0]], c[0]));
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &g in c {
                class_of[g] = i;
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|g| if g == identity { "e".into() } else { format!("g{g}") }).collect());
        Self { mul, identity, inv, classes, class_of, orders, exponent, generators, labels, table: OnceLock::new() }
    }

    /// The group generated by permutations, elements numbered breadth-first
    /// from the identity by right multiplication with the generators in order.
    pub fn closure(generators: &[Permutation]) -> Result<Self> {
        let names: Vec<String> = (0..generators.len()).map(|i| format!("s{i}")).collect();
        let named: Vec<(&str, Permutation)> =
            names.iter().map(String::as_str).zip(generators.iter().cloned()).collect();
        Self::closure_named(&named)
    }

    /// As [`FiniteGroup::closure`], labelling each element by its breadth-first word.
    pub fn closure_named(generators: &[(&str, Permutation)]) -> Result<Self> {
        let degree = generators.first().map_or(0, |(_, p)| p.len());
        for (name, p) in generators {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if p.len() != degree || sorted.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(Error::InvalidGroup(format!("generator {name} is not a permutation of {degree} points")));
            }
        }
        let id: Permutation = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (s, (_, p)) in generators.iter().enumerate() {
                let h = compose(&elements[g], p);
                if !index.contains_key(&h) {
                    if elements.len() == ORDER_CAP {
                        return Err(Error::ClosureBoundExceeded(ORDER_CAP));
                    }
                    index.insert(h.clone(), elements.len());
                    let mut w = words[g].clone();
                    w.push(s);
                    words.push(w);
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let n = elements.len();
        let mul: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect()).collect();
        let inv: Vec<usize> = (0..n)
            .map(|a| {
                let mut q = vec![0; degree];
                for (i, &x) in elements[a].iter().enumerate() {
                    q[x] = i;
                }
                index[&q]
            })
            .collect();
        let mut gens: Vec<usize> = generators.iter().map(|(_, p)| index[p]).filter(|&g| g != 0).collect();
        gens.dedup();
        let labels = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "e".to_string()
                } else {
                    w.iter().map(|&s| generators[s].0).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        Ok(Self::assemble(mul, 0, inv, gens, Some(labels)))
    }

    /// Direct product with elements `(g, h)` numbered `g * |H| + h`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        let inv = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        let identity = a.identity * nb + b.identity;
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb + b.identity).collect();
        gens.extend(b.generators.iter().map(|&h| a.identity * nb + h));
        let labels = (0..n).map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb])).collect();
        Self::assemble(mul, identity, inv, gens, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv[g] } else { g };
        let mut x = self.identity;
        for _ in 0..k.unsigned_abs() {
            x = self.mul[x][base];
        }
        x
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.orders[g]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// A small generating set (the given generators, or a greedy choice).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `g -> g^2` for every element.
    pub fn squaring_map(&self) -> Vec<usize> {
        (0..self.order()).map(|g| self.mul[g][g]).collect()
    }

    /// Class index of `g^{-1}` for each class.
    pub fn inverse_classes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| self.class_of[self.inv[c[0]]]).collect()
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul[a][b] == self.mul[b][a]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.commute(a, b)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let g = out[i];
            for &s in gens {
                let h = self.mul[g][s];
                if !seen[h] {
                    seen[h] = true;
                    out.push(h);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// The subgroup on `elements` as a group in its own right, with the embedding.
    pub fn subgroup(self: &Arc<Self>, elements: &[usize]) -> Result<SubgroupEmbedding> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut mul = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                let p = pos
                    .get(&self.mul[a][b])
                    .ok_or_else(|| Error::InvalidGroup("elements are not closed under multiplication".into()))?;
                row.push(*p);
            }
            mul.push(row);
        }
        let labels = elems.iter().map(|&g| self.labels[g].clone()).collect();
        let sub = FiniteGroup::from_table(mul, Some(labels))?;
        Ok(SubgroupEmbedding { sub: Arc::new(sub), parent: Arc::clone(self), map: elems })
    }

    /// Structural equality of multiplication tables.
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other) || self.mul == other.mul
    }

    pub(crate) fn cached_table(&self) -> &OnceLock<Result<Vec<Vec<Cyclotomic>>>> {
        &self.table
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc { order: self.order(), mul: self.mul.clone(), labels: Some(self.labels.clone()) }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {} classes)", self.order(), self.num_classes())
    }
}

/// An injective homomorphism `sub -> parent` given by element images.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    pub sub: Arc<FiniteGroup>,
    pub parent: Arc<FiniteGroup>,
    pub map: Vec<usize>,
}

impl SubgroupEmbedding {
    /// Checks that `map` is an injective homomorphism.
    pub fn new(sub: Arc<FiniteGroup>, parent: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self> {
        if map.len() != sub.order() || map.iter().any(|&g| g >= parent.order()) {
            return Err(Error::InvalidGroup("embedding has the wrong shape".into()));
        }
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != map.len() {
            return Err(Error::InvalidGroup("embedding is not injective".into()));
        }
        for a in 0..sub.order() {
            for b in 0..sub.order() {
                if map[sub.mul(a, b)] != parent.mul(map[a], map[b]) {
                    return Err(Error::InvalidGroup("embedding is not a homomorphism".into()));
                }
            }
        }
        Ok(Self { sub, parent, map })
    }
}

/// JSON form of a group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDoc {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupDoc {
    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.order != self.mul.len() {
            return Err(Error::InvalidGroup(format!("order {} but {} table rows", self.order, self.mul.len())));
        }
        FiniteGroup::from_table(self.mul, self.labels)
    }
}

/// `(p * q)(x) = p(q(x))`.
pub fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&x| p[x]).collect()
}

/// Permutation of `degree` points from disjoint cycles.
pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Permutation {
    let mut p: Permutation = (0..degree).collect();
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            p[x] = c[(i + 1) % c.len()];
        }
    }
    p
}

fn check_associative(mul: &[Vec<usize>]) -> Result<()> {
    let n = mul.len();
    // exhaustive for small tables, a strided sample of triples otherwise
    let step = if n <= 64 { 1 } else { n / 23 + 1 };
    for a in (0..n).step_by(step) {
        for b in 0..n {
            for c in (0..n).step_by(step) {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(())
}

fn greedy_generators(mul: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = mul.len();
    let mut inside = vec![false; n];
    inside[identity] = true;
    let mut members = vec![identity];
    let mut gens = Vec::new();
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        // re-close the subgroup with the new generator
        let mut i = 0;
        members.push(g);
        inside[g] = true;
        while i < members.len() {
            let x = members[i];
            for &s in &gens {
                let y = mul[x][s];
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}
