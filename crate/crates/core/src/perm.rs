//! Finite permutation groups stored as explicit element lists.
//!
//! This is the Galois side of the density experiments: `G` acts on the `d`
//! roots of the defining polynomial and `H` is the stabilizer of the root
//! generating the field. Points are 0-based internally and 1-based in every
//! serialized form.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Closure guard.
pub const MAX_GROUP_ORDER: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based images, the serialized form.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?} uses point 0")));
        }
        Perm::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    /// Builds a permutation of `n` points from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(Error::InvalidPermutation(format!("cycle {cyc:?} out of range")));
                }
                img[a - 1] = b - 1;
            }
        }
        Perm::new(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i == j).count()
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Partition of `d`, stored ascending (e.g. `(1,2)`), ordered by comparing
/// the descending forms lexicographically so that `(1,1,1) < (1,2) < (3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn has_fixed_point(&self) -> bool {
        self.0.contains(&1)
    }
}

impl Ord for CycleType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for CycleType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
    pub cycle_type: CycleType,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Breadth-first closure of the generators. The empty list gives the
/// trivial group on `degree` points.
pub fn close(degree: usize, generators: &[Perm]) -> Result<PermGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} acts on {} points, expected {degree}",
                g.degree()
            )));
        }
    }
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let h = g.compose(&e);
            if seen.insert(h.clone()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(Error::ClosureOverflow(MAX_GROUP_ORDER));
                }
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<Perm> = seen.into_iter().collect();
    elements.sort();
    Ok(PermGroup {
        degree,
        generators: generators.to_vec(),
        elements,
    })
}

impl PermGroup {
    /// Symmetric group on `n` points.
    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[1, 2]]).unwrap());
            let cyc: Vec<usize> = (1..=n).collect();
            gens.push(Perm::from_cycles(n, &[&cyc]).unwrap());
        }
        close(n, &gens).expect("symmetric group fits the guard for small n")
    }

    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        PermGroup {
            degree,
            generators: elements.clone(),
            elements,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let orbit: HashSet<usize> = self.elements.iter().map(|g| g.apply(0)).collect();
        orbit.len() == self.degree
    }

    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.degree];
        let mut count = 0;
        for i in 0..self.degree {
            if seen[i] {
                continue;
            }
            count += 1;
            for g in &self.elements {
                seen[g.apply(i)] = true;
            }
        }
        count
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let elems = self
            .elements
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elems)
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let mut assigned: HashSet<&Perm> = HashSet::new();
        let inverses: Vec<Perm> = self.elements.iter().map(Perm::inverse).collect();
        let mut classes = Vec::new();
        for s in &self.elements {
            if assigned.contains(s) {
                continue;
            }
            let mut members: BTreeSet<Perm> = BTreeSet::new();
            for (g, gi) in self.elements.iter().zip(&inverses) {
                members.insert(g.compose(s).compose(gi));
            }
            let members: Vec<Perm> = members.into_iter().collect();
            for m in &members {
                let idx = self.elements.binary_search(m).expect("closed group");
                assigned.insert(&self.elements[idx]);
            }
            classes.push(ConjClass {
                representative: members[0].clone(),
                cycle_type: s.cycle_type(),
                members,
            });
        }
        classes.sort_by(|a, b| {
            a.cycle_type
                .cmp(&b.cycle_type)
                .then_with(|| a.representative.cmp(&b.representative))
        });
        classes
    }

    /// Every subgroup, found by repeatedly adjoining one element to a known
    /// subgroup and closing. Meant for small groups.
    pub fn subgroups(&self) -> Vec<PermGroup> {
        let n = self.order();
        let index: HashMap<&Perm, usize> = self.elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let table: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|a| self.elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let identity = index[&Perm::identity(self.degree)];
        let closure = |mut set: BTreeSet<usize>| -> BTreeSet<usize> {
            loop {
                let mut added = Vec::new();
                for &a in &set {
                    for &b in &set {
                        let c = table[a][b];
                        if !set.contains(&c) {
                            added.push(c);
                        }
                    }
                }
                if added.is_empty() {
                    return set;
                }
                set.extend(added);
            }
        };
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
        let trivial: BTreeSet<usize> = [identity].into_iter().collect();
        found.insert(trivial.clone());
        queue.push_back(trivial);
        while let Some(s) = queue.pop_front() {
            for g in 0..n {
                if s.contains(&g) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(g);
                let t = closure(t);
                if found.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        found
            .into_iter()
            .map(|s| {
                PermGroup::from_elements(self.degree, s.into_iter().map(|i| self.elements[i].clone()).collect())
            })
            .collect()
    }
}

/// Classes `<s>` with `<s> ∩ H` empty.
pub fn classes_missing(g: &PermGroup, h: &PermGroup) -> Vec<ConjClass> {
    g.conjugacy_classes()
        .into_iter()
        .filter(|c| c.members.iter().all(|m| !h.contains(m)))
        .collect()
}

/// Classes of fixed-point-free elements; equals [`classes_missing`] for a
/// point stabilizer of a transitive group.
pub fn fixed_point_free_classes(g: &PermGroup) -> Vec<ConjClass> {
    g.conjugacy_classes()
        .into_iter()
        .filter(|c| !c.cycle_type.has_fixed_point())
        .collect()
}

/// Some class of `g` avoiding the proper subgroup `h`.
pub fn missing_class_witness(g: &PermGroup, h: &PermGroup) -> Result<ConjClass> {
    if h.order() >= g.order() {
        return Err(Error::NotProperSubgroup);
    }
    classes_missing(g, h).into_iter().next().ok_or_else(|| {
        // unreachable for genuine proper subgroups
        Error::InvalidPermutation("subgroup meets every conjugacy class".into())
    })
}

pub type Density = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDensity {
    pub cycle_type: CycleType,
    pub size: usize,
    pub density: Density,
    pub meets_h: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoreticalDensities {
    pub classes: Vec<ClassDensity>,
    pub d_low: Density,
    pub d_high: Density,
}

impl TheoreticalDensities {
    /// Class densities summed over equal cycle types, in class order.
    pub fn by_cycle_type(&self) -> Vec<(CycleType, Density)> {
        let mut out: Vec<(CycleType, Density)> = Vec::new();
        for c in &self.classes {
            match out.iter_mut().find(|(t, _)| *t == c.cycle_type) {
                Some((_, d)) => *d += c.density,
                None => out.push((c.cycle_type.clone(), c.density)),
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Chebotarev densities `|<s>|/|G|` and their split into classes meeting
/// or missing `h`.
pub fn theoretical_densities(g: &PermGroup, h: &PermGroup) -> TheoreticalDensities {
    let order = g.order() as i64;
    let mut d_low = Density::zero();
    let mut d_high = Density::zero();
    let classes: Vec<ClassDensity> = g
        .conjugacy_classes()
        .into_iter()
        .map(|c| {
            let meets_h = c.members.iter().any(|m| h.contains(m));
            let density = Density::new(c.size() as i64, order);
            if meets_h {
                d_low += density;
            } else {
                d_high += density;
            }
            ClassDensity {
                cycle_type: c.cycle_type,
                size: c.members.len(),
                density,
                meets_h,
            }
        })
        .collect();
    TheoreticalDensities {
        classes,
        d_low,
        d_high,
    }
}

fn is_rational_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn cyc(n: usize, cycles: &[&[usize]]) -> Perm {
    Perm::from_cycles(n, cycles).expect("static cycles")
}

/// Galois group of an irreducible polynomial of degree 2 to 4 as a
/// permutation group on its roots (up to relabelling).
pub fn galois_group_small(f: &IntPoly) -> Result<PermGroup> {
    let d = f.degree().unwrap_or(0);
    let disc = f.discriminant()?;
    let disc_square = is_rational_square(&disc);
    let gens = match d {
        2 => vec![cyc(2, &[&[1, 2]])],
        3 => {
            if disc_square {
                vec![cyc(3, &[&[1, 2, 3]])]
            } else {
                vec![cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])]
            }
        }
        4 => quartic_generators(f, &disc, disc_square)?,
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    close(d, &gens)
}

fn quartic_generators(f: &IntPoly, disc: &BigInt, disc_square: bool) -> Result<Vec<Perm>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let [d0, c1, b2, a3] = [f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3)];
    // x^4 + a x^3 + b x^2 + c x + d  ->  y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4 b d + c^2)
    let (a, b, c, d) = (a3, b2, c1, d0);
    let resolvent = IntPoly::new(vec![
        -(&a * &a * &d - BigInt::from(4) * &b * &d + &c * &c),
        &a * &c - BigInt::from(4) * &d,
        -b.clone(),
        BigInt::from(1),
    ]);
    let roots = resolvent.integer_roots();
    let gens = match roots.len() {
        0 => {
            if disc_square {
                vec![cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[2, 3, 4]])]
            } else {
                vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])]
            }
        }
        1 => {
            // Kappe-Warren: cyclic iff both quadratics split over Q(sqrt(disc))
            let r = &roots[0];
            let t1 = (r * r - BigInt::from(4) * &d) * disc;
            let t2 = (&a * &a - BigInt::from(4) * (&b - r)) * disc;
            if is_rational_square(&t1) && is_rational_square(&t2) {
                vec![cyc(4, &[&[1, 2, 3, 4]])]
            } else {
                vec![cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])]
            }
        }
        _ => vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])],
    };
    Ok(gens)
}

/// `n!` when it fits.
pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// True when `|g|` divides `d!`.
pub fn order_divides_factorial(g: &PermGroup) -> bool {
    match factorial(g.degree()) {
        Some(f) => f % (g.order() as u128) == 0,
        None => true,
    }
}

/// Group order as `f64`, for averaging.
pub fn burnside_average_fixed_points(g: &PermGroup) -> f64 {
    let total: usize = g.elements().iter().map(Perm::fixed_points).sum();
    total as f64 / g.order().to_f64().unwrap_or(1.0)
}
