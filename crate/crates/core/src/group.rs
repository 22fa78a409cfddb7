//! Finite groups as full multiplication tables, and group extensions with a
//! set-theoretic section.
//!
//! Elements are indices `0..n` and `0` is always the identity.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from its table, checking closure, identity, inverses
    /// and associativity by enumeration.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} is out of range")));
            }
            flat.extend_from_slice(row);
        }
        let names = match names {
            Some(v) if v.len() != n => {
                return Err(Error::InvalidGroup(format!("{} names for {n} elements", v.len())));
            }
            Some(v) => v,
            None => (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") }).collect(),
        };
        for a in 0..n {
            if flat[a] != a || flat[a * n] != a {
                return Err(Error::InvalidGroup(format!("0 is not a two-sided identity at element {a}")));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0) else {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            };
            inverse[a] = b;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table: flat, inverse, names })
    }

    fn from_fn(n: usize, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(table, Some(names)).expect("constructed group is valid")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// ℤ/n with generator `t`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        Self::from_fn(n, names, |a, b| (a + b) % n)
    }

    /// G × H with `(g, h)` stored at `g + |G| * h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.order, h.order);
        let names = (0..m * k)
            .map(|i| {
                let (a, b) = (i % m, i / m);
                match (a, b) {
                    (0, 0) => "1".to_string(),
                    _ => format!("({},{})", g.name(a), h.name(b)),
                }
            })
            .collect();
        Self::from_fn(m * k, names, |x, y| g.mul(x % m, y % m) + m * h.mul(x / m, y / m))
    }

    /// ℤ/2 × ℤ/2 = {1, t1, t2, t1t2}.
    pub fn klein_four() -> Self {
        let mut v = Self::product(&Self::cyclic(2), &Self::cyclic(2));
        v.names = ["1", "t1", "t2", "t1t2"].map(String::from).to_vec();
        v
    }

    /// Dihedral group of order 2n, `a^i b^j` stored at `j * n + i`, with
    /// `a` the rotation and `b` a reflection.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..2 * n)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                let rot = match i {
                    0 => String::new(),
                    1 => "a".to_string(),
                    _ => format!("a^{i}"),
                };
                match (i, j) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => rot,
                    _ => format!("{rot}b"),
                }
            })
            .collect();
        Self::from_fn(2 * n, names, |x, y| {
            let (i, j, k, l) = (x % n, x / n, y % n, y / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            ((j + l) % 2) * n + rot
        })
    }

    /// Dicyclic group of order 4m: `a^{2m} = 1`, `b^2 = a^m`,
    /// `b a b^-1 = a^-1`. `m = 2` is the quaternion group.
    pub fn dicyclic(m: usize) -> Self {
        assert!(m >= 2);
        let n = 2 * m;
        let names = (0..2 * n)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                match (i, j) {
                    (0, 0) => "1".to_string(),
                    (1, 0) => "a".to_string(),
                    (_, 0) => format!("a^{i}"),
                    (0, _) => "b".to_string(),
                    (1, _) => "ab".to_string(),
                    _ => format!("a^{i}b"),
                }
            })
            .collect();
        Self::from_fn(2 * n, names, |x, y| {
            let (i, j, k, l) = (x % n, x / n, y % n, y / n);
            match (j, l) {
                (0, _) => l * n + (i + k) % n,
                (1, 0) => n + (i + n - k) % n,
                _ => (i + n - k + m) % n,
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order).all(|g| subgroup.iter().all(|&n| set.contains(&self.conj(g, n))))
    }

    /// Proper, nontrivial normal subgroups generated by at most two
    /// elements, deduplicated and sorted.
    pub fn small_normal_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found = BTreeSet::new();
        for a in 1..self.order {
            for b in a..self.order {
                let h = self.subgroup_generated(&[a, b]);
                if h.len() > 1 && h.len() < self.order && self.is_normal(&h) {
                    found.insert(h);
                }
            }
        }
        found.into_iter().collect()
    }

    /// The subgroup on the given sorted element list, re-indexed in that
    /// order; `subset[0]` must be the identity.
    pub fn subgroup(&self, subset: &[usize]) -> Result<FiniteGroup> {
        if subset.first() != Some(&0) {
            return Err(Error::InvalidGroup("subgroup list must start with the identity".into()));
        }
        let pos = |x: usize| subset.iter().position(|&y| y == x);
        let mut table = Vec::with_capacity(subset.len());
        for &a in subset {
            let mut row = Vec::with_capacity(subset.len());
            for &b in subset {
                row.push(pos(self.mul(a, b)).ok_or_else(|| Error::InvalidGroup("subset is not closed".into()))?);
            }
            table.push(row);
        }
        FiniteGroup::from_table(table, Some(subset.iter().map(|&a| self.names[a].clone()).collect()))
    }

    /// Quotient by a normal subgroup. Cosets are ordered by their smallest
    /// element, so the identity coset comes first. Returns the quotient and
    /// the projection as an element map.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::InvalidGroup("subgroup is not normal".into()));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if proj[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &n in normal {
                proj[self.mul(x, n)] = idx;
            }
        }
        let k = reps.len();
        let table = (0..k).map(|a| (0..k).map(|b| proj[self.mul(reps[a], reps[b])]).collect()).collect();
        let names = reps.iter().map(|&r| if r == 0 { "1".to_string() } else { format!("[{}]", self.names[r]) }).collect();
        Ok((FiniteGroup::from_table(table, Some(names))?, proj))
    }
}

/// Checks that `map: source → target` is a homomorphism.
pub fn is_homomorphism(source: &FiniteGroup, target: &FiniteGroup, map: &[usize]) -> bool {
    map.len() == source.order()
        && map.iter().all(|&v| v < target.order())
        && (0..source.order())
            .all(|a| (0..source.order()).all(|b| map[source.mul(a, b)] == target.mul(map[a], map[b])))
}

/// `N → E → G` with a set-theoretic section `s: G → E`, `s(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupExtension {
    total: FiniteGroup,
    kernel: FiniteGroup,
    quotient: FiniteGroup,
    inclusion: Vec<usize>,
    projection: Vec<usize>,
    section: Vec<usize>,
}

impl GroupExtension {
    pub fn new(
        total: FiniteGroup,
        kernel: FiniteGroup,
        quotient: FiniteGroup,
        inclusion: Vec<usize>,
        projection: Vec<usize>,
        section: Vec<usize>,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidExtension(m.to_string()));
        if !is_homomorphism(&kernel, &total, &inclusion) {
            return bad("inclusion is not a homomorphism");
        }
        let image: BTreeSet<usize> = inclusion.iter().copied().collect();
        if image.len() != kernel.order() {
            return bad("inclusion is not injective");
        }
        let image_vec: Vec<usize> = image.iter().copied().collect();
        if !total.is_normal(&image_vec) {
            return bad("image of the inclusion is not normal");
        }
        if !is_homomorphism(&total, &quotient, &projection) {
            return bad("projection is not a homomorphism");
        }
        let ker: BTreeSet<usize> = (0..total.order()).filter(|&e| projection[e] == 0).collect();
        if ker != image {
            return bad("kernel of the projection differs from the image of the inclusion");
        }
        if section.len() != quotient.order() || section.iter().any(|&e| e >= total.order()) {
            return bad("section has the wrong shape");
        }
        if section[0] != 0 {
            return bad("section does not send 1 to 1");
        }
        if (0..quotient.order()).any(|g| projection[section[g]] != g) {
            return bad("section is not a right inverse of the projection");
        }
        Ok(GroupExtension { total, kernel, quotient, inclusion, projection, section })
    }

    /// `ℤ/2 → D4 → ℤ/2 × ℤ/2`, `t ↦ a²`, `a ↦ t1`, `b ↦ t2`, with section
    /// `1, a, b, ab`.
    pub fn d4() -> Self {
        let d4 = FiniteGroup::dihedral(4);
        let klein = FiniteGroup::klein_four();
        let a2 = d4.index_of("a^2").unwrap();
        // a^i b^j ↦ t1^i t2^j; Klein stores t1^x t2^y at x + 2y.
        let projection = (0..8).map(|x| (x % 4) % 2 + 2 * (x / 4)).collect();
        let section = ["1", "a", "b", "ab"].iter().map(|n| d4.index_of(n).unwrap()).collect();
        Self::new(d4, FiniteGroup::cyclic(2), klein, vec![0, a2], projection, section)
            .expect("the D4 extension is valid")
    }

    /// Extension by a normal subgroup with the section chosen per coset by
    /// `pick` (given the coset's sorted elements); the identity coset always
    /// maps to 1.
    pub fn from_normal_subgroup(
        total: FiniteGroup,
        normal: &[usize],
        mut pick: impl FnMut(&[usize]) -> usize,
    ) -> Result<Self> {
        let normal: Vec<usize> = normal.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let kernel = total.subgroup(&normal)?;
        let (quotient, projection) = total.quotient(&normal)?;
        let mut section = vec![0; quotient.order()];
        for (g, s) in section.iter_mut().enumerate().skip(1) {
            let coset: Vec<usize> = (0..total.order()).filter(|&e| projection[e] == g).collect();
            *s = pick(&coset);
        }
        Self::new(total, kernel, quotient, normal, projection, section)
    }

    /// Random section over a random proper nontrivial normal subgroup;
    /// `None` if the group has none.
    pub fn random(total: FiniteGroup, rng: &mut impl Rng) -> Option<Self> {
        let normals = total.small_normal_subgroups();
        if normals.is_empty() {
            return None;
        }
        let n = normals[rng.gen_range(0..normals.len())].clone();
        Self::from_normal_subgroup(total, &n, |coset| coset[rng.gen_range(0..coset.len())]).ok()
    }

    /// The split extension `N → N × G → G`, `s(g) = (1, g)`.
    pub fn split(kernel: FiniteGroup, quotient: FiniteGroup) -> Self {
        let total = FiniteGroup::product(&kernel, &quotient);
        let m = kernel.order();
        let inclusion = (0..m).collect();
        let projection = (0..total.order()).map(|x| x / m).collect();
        let section = (0..quotient.order()).map(|g| g * m).collect();
        Self::new(total, kernel, quotient, inclusion, projection, section).expect("split extension is valid")
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn kernel(&self) -> &FiniteGroup {
        &self.kernel
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn inclusion(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// Replaces the section; the result is revalidated.
    pub fn with_section(&self, section: Vec<usize>) -> Result<Self> {
        Self::new(
            self.total.clone(),
            self.kernel.clone(),
            self.quotient.clone(),
            self.inclusion.clone(),
            self.projection.clone(),
            section,
        )
    }

    fn preimage(&self, e: usize) -> Option<usize> {
        self.inclusion.iter().position(|&x| x == e)
    }

    /// `c(g, h) = s(g) s(h) s(gh)^-1` and `φ_g(n) = s(g) n s(g)^-1`, both
    /// pulled back to the kernel.
    pub fn cocycle_from_section(&self) -> Result<SectionCocycle> {
        let (g_ord, e) = (self.quotient.order(), &self.total);
        let mut values = Vec::with_capacity(g_ord * g_ord);
        for g in 0..g_ord {
            for h in 0..g_ord {
                let gh = self.quotient.mul(g, h);
                let x = e.mul(e.mul(self.section[g], self.section[h]), e.inv(self.section[gh]));
                values.push(self.preimage(x).ok_or(Error::SectionNotValid { g, h })?);
            }
        }
        let conjugation = (0..g_ord)
            .map(|g| {
                (0..self.kernel.order())
                    .map(|n| {
                        let x = e.conj(self.section[g], self.inclusion[n]);
                        self.preimage(x).expect("kernel is normal")
                    })
                    .collect()
            })
            .collect();
        Ok(SectionCocycle { quotient_order: g_ord, values, conjugation })
    }
}

/// The compositors and conjugation maps induced by a section, with values in
/// the kernel group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCocycle {
    quotient_order: usize,
    values: Vec<usize>,
    conjugation: Vec<Vec<usize>>,
}

impl SectionCocycle {
    pub fn c(&self, g: usize, h: usize) -> usize {
        self.values[g * self.quotient_order + h]
    }

    pub fn phi(&self, g: usize, n: usize) -> usize {
        self.conjugation[g][n]
    }

    pub fn conjugation(&self, g: usize) -> &[usize] {
        &self.conjugation[g]
    }

    /// First triple `(g, h, k)` violating
    /// `φ_g(c(h,k)) c(g,hk) = c(g,h) c(gh,k)`, or `None`.
    pub fn cocycle_violation(&self, quotient: &FiniteGroup, kernel: &FiniteGroup) -> Option<(usize, usize, usize)> {
        let n = self.quotient_order;
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = kernel.mul(self.phi(g, self.c(h, k)), self.c(g, quotient.mul(h, k)));
                    let rhs = kernel.mul(self.c(g, h), self.c(quotient.mul(g, h), k));
                    if lhs != rhs {
                        return Some((g, h, k));
                    }
                }
            }
        }
        None
    }
}
