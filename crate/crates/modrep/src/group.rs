use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A finite group realized by permutations, fully enumerated. Element 0 is
/// the identity. Every non-identity element records how it was first reached
/// from a generator, so module actions can be evaluated by word unwinding.
pub struct Group {
    pub degree: usize,
    pub gens: Vec<Perm>,
    pub elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// word[i] = (j, g) with elems[i] = gens[g] * elems[j]; None for identity.
    word: Vec<Option<(usize, usize)>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, degree {})", self.order(), self.degree)
    }
}

impl Group {
    pub fn from_generators(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<Arc<Group>> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::BadGroupSpec("generator degree mismatch".into()));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Perm::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut word: Vec<Option<(usize, usize)>> = vec![None];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for (gi, g) in gens.iter().enumerate() {
                let next = g.compose(&elems[i]);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                    word.push(Some((i, gi)));
                    frontier.push(elems.len() - 1);
                }
            }
        }
        Ok(Arc::new(Group { degree, gens, elems, index, word }))
    }

    pub fn trivial() -> Arc<Group> {
        Group::from_generators(1, vec![], DEFAULT_ORDER_CAP).unwrap()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elem_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elems[a].compose(&self.elems[b]);
        self.index[&p]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elems[a].inverse()]
    }

    /// g x g^-1.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, a: usize) -> u64 {
        self.elems[a].order()
    }

    pub fn exponent(&self) -> u64 {
        let mut lcm = 1u64;
        for i in 0..self.order() {
            let o = self.elem_order(i);
            lcm = lcm / gcd(lcm, o) * o;
        }
        lcm
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.gens.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.gens[i].compose(&self.gens[j]) == self.gens[j].compose(&self.gens[i]))
        })
    }

    /// How element i decomposes as generator * earlier element; None for the identity.
    pub fn word_step(&self, i: usize) -> Option<(usize, usize)> {
        self.word[i]
    }

    /// Conjugacy classes as sorted element-index lists; the identity's class
    /// comes first, the rest are ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            let mut class = BTreeSet::new();
            class.insert(start);
            assigned[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for g in 0..n {
                    let y = self.conj(g, x);
                    if class.insert(y) {
                        assigned[y] = true;
                        stack.push(y);
                    }
                }
            }
            classes.push(class.into_iter().collect::<Vec<_>>());
        }
        classes
    }

    /// All normal subgroups, as sorted element-index sets. Computed as the
    /// unions of conjugacy classes (containing the identity) that are closed
    /// under multiplication and whose size divides the group order.
    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        let classes = self.conjugacy_classes();
        let k = classes.len();
        // classes[0] is the identity's class.
        let mut result: Vec<Vec<usize>> = Vec::new();
        for mask in 0..(1u64 << (k - 1)) {
            let mut size = classes[0].len();
            for b in 0..k - 1 {
                if mask >> b & 1 == 1 {
                    size += classes[b + 1].len();
                }
            }
            if self.order() % size != 0 {
                continue;
            }
            let mut set: HashSet<usize> = classes[0].iter().copied().collect();
            for b in 0..k - 1 {
                if mask >> b & 1 == 1 {
                    set.extend(classes[b + 1].iter().copied());
                }
            }
            let closed = set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))));
            if closed {
                let mut v: Vec<usize> = set.into_iter().collect();
                v.sort_unstable();
                result.push(v);
            }
        }
        result.sort_by_key(|s| (s.len(), s.clone()));
        result
    }

    /// Representatives of the left cosets of the embedded subgroup, smallest
    /// element index first; the identity represents the subgroup itself.
    pub fn coset_reps(&self, sub: &SubgroupEmbedding) -> Vec<usize> {
        let image: HashSet<usize> = sub.map.iter().copied().collect();
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if covered[x] {
                continue;
            }
            reps.push(x);
            for &h in &image {
                covered[self.mul(x, h)] = true;
            }
        }
        reps
    }

    /// A Sylow p-subgroup, grown by closing p-element extensions. Returns the
    /// trivial subgroup when p does not divide the order.
    pub fn sylow(self: &Arc<Group>, p: u64) -> SubgroupEmbedding {
        let mut target = 1usize;
        let mut n = self.order();
        while n % p as usize == 0 {
            target *= p as usize;
            n /= p as usize;
        }
        let p_elems: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let o = self.elem_order(i);
                o > 1 && is_p_power(o, p)
            })
            .collect();
        let start: BTreeSet<usize> = [0usize].into();
        let mut failed: HashSet<Vec<usize>> = HashSet::new();
        let found = self
            .grow_p_subgroup(&start, target, &p_elems, &mut failed)
            .expect("Sylow subgroup must exist");
        SubgroupEmbedding::from_subset(self, &found.into_iter().collect::<Vec<_>>())
            .expect("closed subset")
    }

    fn grow_p_subgroup(
        &self,
        current: &BTreeSet<usize>,
        target: usize,
        p_elems: &[usize],
        failed: &mut HashSet<Vec<usize>>,
    ) -> Option<BTreeSet<usize>> {
        if current.len() == target {
            return Some(current.clone());
        }
        let key: Vec<usize> = current.iter().copied().collect();
        if failed.contains(&key) {
            return None;
        }
        for &g in p_elems {
            if current.contains(&g) {
                continue;
            }
            let closed = self.close_subset(current, g);
            if closed.len() <= target && target % closed.len() == 0 && is_p_power_usize(closed.len(), target) {
                if let Some(found) = self.grow_p_subgroup(&closed, target, p_elems, failed) {
                    return Some(found);
                }
            }
        }
        failed.insert(key);
        None
    }

    fn close_subset(&self, base: &BTreeSet<usize>, extra: usize) -> BTreeSet<usize> {
        let mut set = base.clone();
        let mut frontier: Vec<usize> = vec![extra];
        set.insert(extra);
        while let Some(x) = frontier.pop() {
            let members: Vec<usize> = set.iter().copied().collect();
            for &y in &members {
                for z in [self.mul(x, y), self.mul(y, x), self.inv(x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        set
    }

    /// Smallest generating subsets give a compact presentation for module
    /// actions: try singletons, then pairs, then grow greedily.
    fn small_generating_set(&self, subset: &[usize]) -> Vec<usize> {
        if subset.len() == 1 {
            return Vec::new();
        }
        let want: BTreeSet<usize> = subset.iter().copied().collect();
        for &g in subset {
            if g == 0 {
                continue;
            }
            if self.close_subset(&[0].into(), g) == want {
                return vec![g];
            }
        }
        for &g in subset {
            for &h in subset {
                if g == 0 || h == 0 || h <= g {
                    continue;
                }
                let mut s = self.close_subset(&[0].into(), g);
                if !s.contains(&h) {
                    s = {
                        let mut t = s;
                        t.extend(self.close_subset_from(&t, h));
                        t
                    };
                }
                if s == want {
                    return vec![g, h];
                }
            }
        }
        // Greedy fallback.
        let mut gens = Vec::new();
        let mut have: BTreeSet<usize> = [0].into();
        for &g in subset {
            if !have.contains(&g) {
                gens.push(g);
                have = self.close_subset_from(&have, g);
                if have == want {
                    break;
                }
            }
        }
        gens
    }

    fn close_subset_from(&self, base: &BTreeSet<usize>, extra: usize) -> BTreeSet<usize> {
        self.close_subset(base, extra)
    }
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn is_p_power_usize(n: usize, target: usize) -> bool {
    // n divides target and target is a p-power, so n is one too.
    target % n == 0
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An injective homomorphism realized by literal containment of permutations:
/// the subgroup lives on the same permuted points as the parent.
#[derive(Clone)]
pub struct SubgroupEmbedding {
    pub sub: Arc<Group>,
    pub parent: Arc<Group>,
    /// sub element index -> parent element index.
    pub map: Vec<usize>,
    inverse: HashMap<usize, usize>,
}

impl fmt::Debug for SubgroupEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.sub.order(), self.parent.order())
    }
}

impl SubgroupEmbedding {
    /// Build from a multiplicatively closed subset of parent element indices.
    pub fn from_subset(parent: &Arc<Group>, subset: &[usize]) -> Result<SubgroupEmbedding> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::NotSubgroup("subset misses the identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::NotSubgroup("subset not closed under inverse".into()));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotSubgroup("subset not closed under product".into()));
                }
            }
        }
        let ordered: Vec<usize> = set.iter().copied().collect();
        let gen_idx = parent.small_generating_set(&ordered);
        let gens: Vec<Perm> = gen_idx.iter().map(|&i| parent.elems[i].clone()).collect();
        let sub = Group::from_generators(parent.degree, gens, DEFAULT_ORDER_CAP)?;
        if sub.order() != ordered.len() {
            return Err(Error::Internal("generating set closure mismatch".into()));
        }
        let mut map = Vec::with_capacity(sub.order());
        let mut inverse = HashMap::new();
        for i in 0..sub.order() {
            let pidx = parent
                .elem_index(&sub.elems[i])
                .ok_or_else(|| Error::Internal("subgroup element escaped parent".into()))?;
            map.push(pidx);
            inverse.insert(pidx, i);
        }
        Ok(SubgroupEmbedding { sub: sub.clone(), parent: parent.clone(), map, inverse })
    }

    /// Embed an existing group object along an explicit element map, which is
    /// verified to be an injective homomorphism. Unlike `from_subset` this
    /// keeps the original `Arc<Group>` as the subgroup, so modules built over
    /// it stay usable.
    pub fn from_map(sub: &Arc<Group>, parent: &Arc<Group>, map: Vec<usize>) -> Result<SubgroupEmbedding> {
        if map.len() != sub.order() {
            return Err(Error::NotSubgroup("map length differs from subgroup order".into()));
        }
        let mut inverse = HashMap::new();
        for (i, &p) in map.iter().enumerate() {
            if p >= parent.order() || inverse.insert(p, i).is_some() {
                return Err(Error::NotSubgroup("element map is not injective".into()));
            }
        }
        if map[0] != parent.identity() {
            return Err(Error::NotSubgroup("map must send identity to identity".into()));
        }
        for a in 0..sub.order() {
            for b in 0..sub.order() {
                if parent.mul(map[a], map[b]) != map[sub.mul(a, b)] {
                    return Err(Error::NotSubgroup("element map is not a homomorphism".into()));
                }
            }
        }
        Ok(SubgroupEmbedding { sub: sub.clone(), parent: parent.clone(), map, inverse })
    }

    /// Embed a group whose permutations are literally elements of the parent.
    pub fn from_group(parent: &Arc<Group>, sub: &Arc<Group>) -> Result<SubgroupEmbedding> {
        let mut subset = Vec::with_capacity(sub.order());
        for e in &sub.elems {
            let padded = pad_perm(e, parent.degree)?;
            let idx = parent.elem_index(&padded).ok_or_else(|| {
                Error::NotSubgroup(format!("element {:?} not in parent", e))
            })?;
            subset.push(idx);
        }
        SubgroupEmbedding::from_subset(parent, &subset)
    }

    pub fn whole(parent: &Arc<Group>) -> SubgroupEmbedding {
        let all: Vec<usize> = (0..parent.order()).collect();
        SubgroupEmbedding::from_subset(parent, &all).expect("whole group")
    }

    pub fn trivial(parent: &Arc<Group>) -> SubgroupEmbedding {
        SubgroupEmbedding::from_subset(parent, &[0]).expect("trivial group")
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.sub.order()
    }

    pub fn image_set(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    pub fn to_parent(&self, sub_idx: usize) -> usize {
        self.map[sub_idx]
    }

    pub fn from_parent(&self, parent_idx: usize) -> Option<usize> {
        self.inverse.get(&parent_idx).copied()
    }

    pub fn is_normal(&self) -> bool {
        let image = self.image_set();
        (0..self.parent.order()).all(|g| {
            image.iter().all(|&x| image.contains(&self.parent.conj(g, x)))
        })
    }

    /// The conjugated subgroup g H g^-1 as an embedding.
    pub fn conjugated(&self, g: usize) -> SubgroupEmbedding {
        let subset: Vec<usize> = self.map.iter().map(|&x| self.parent.conj(g, x)).collect();
        SubgroupEmbedding::from_subset(&self.parent, &subset).expect("conjugate subgroup")
    }

    /// Compose embeddings H <= K with K <= G into H <= G.
    pub fn compose(inner: &SubgroupEmbedding, outer: &SubgroupEmbedding) -> SubgroupEmbedding {
        assert!(Arc::ptr_eq(&inner.parent, &outer.sub), "embedding chain mismatch");
        let map: Vec<usize> = inner.map.iter().map(|&k| outer.map[k]).collect();
        let mut inverse = HashMap::new();
        for (i, &p) in map.iter().enumerate() {
            inverse.insert(p, i);
        }
        SubgroupEmbedding {
            sub: inner.sub.clone(),
            parent: outer.parent.clone(),
            map,
            inverse,
        }
    }

    /// All subgroups of this (small, typically Sylow) subgroup, enumerated by
    /// closing generating subsets of size <= 2 and deduplicated up to
    /// conjugacy in the parent. Sorted by order, then by element set.
    pub fn subgroups_up_to_parent_conjugacy(&self) -> Vec<SubgroupEmbedding> {
        let parent = &self.parent;
        let members: Vec<usize> = self.map.clone();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut subs: Vec<BTreeSet<usize>> = Vec::new();
        let mut record = |set: BTreeSet<usize>, subs: &mut Vec<BTreeSet<usize>>| {
            let key: Vec<usize> = set.iter().copied().collect();
            if seen.contains(&key) {
                return;
            }
            // Dedup up to parent conjugacy.
            for g in 0..parent.order() {
                let conj: Vec<usize> = {
                    let mut v: Vec<usize> =
                        set.iter().map(|&x| parent.conj(g, x)).collect();
                    v.sort_unstable();
                    v
                };
                if g > 0 && conj == key {
                    continue;
                }
                if seen.contains(&conj) {
                    seen.insert(key);
                    return;
                }
            }
            seen.insert(key.clone());
            subs.push(set);
        };
        record([0usize].into(), &mut subs);
        for &a in &members {
            if a == 0 {
                continue;
            }
            record(parent.close_subset(&[0].into(), a), &mut subs);
            for &b in &members {
                if b <= a || b == 0 {
                    continue;
                }
                let mut s = parent.close_subset(&[0].into(), a);
                s = parent.close_subset_from(&s, b);
                record(s, &mut subs);
            }
        }
        let mut sets: Vec<Vec<usize>> = subs
            .into_iter()
            .map(|s| s.into_iter().collect::<Vec<usize>>())
            .collect();
        sets.sort_by_key(|s| (s.len(), s.clone()));
        sets.iter()
            .map(|s| SubgroupEmbedding::from_subset(parent, s).expect("closed subgroup"))
            .collect()
    }
}

fn pad_perm(p: &Perm, degree: usize) -> Result<Perm> {
    if p.degree() == degree {
        return Ok(p.clone());
    }
    if p.degree() > degree {
        return Err(Error::NotSubgroup("subgroup degree exceeds parent degree".into()));
    }
    let mut images: Vec<u16> = (0..degree as u16).collect();
    for i in 0..p.degree() {
        images[i] = p.apply(i) as u16;
    }
    Perm::from_images(images)
}

/// A quotient G/N realized by the left-multiplication action on cosets.
pub struct QuotientGroup {
    pub parent: Arc<Group>,
    pub kernel: SubgroupEmbedding,
    pub quotient: Arc<Group>,
    /// parent element index -> quotient element index (surjective homomorphism).
    pub projection: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(parent: &Arc<Group>, kernel: SubgroupEmbedding) -> Result<QuotientGroup> {
        if !Arc::ptr_eq(&kernel.parent, parent) {
            return Err(Error::AlgebraMismatch("kernel not embedded in parent".into()));
        }
        if !kernel.is_normal() {
            return Err(Error::NotNormal("quotient needs a normal subgroup".into()));
        }
        let image: BTreeSet<usize> = kernel.image_set();
        let n = parent.order();
        // Coset id of each element; cosets numbered by first-seen order, so
        // the identity coset is 0.
        let mut coset_of = vec![usize::MAX; n];
        let mut num_cosets = 0;
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &h in &image {
                coset_of[parent.mul(x, h)] = num_cosets;
            }
            num_cosets += 1;
        }
        let act = |g: usize| -> Perm {
            let mut images = vec![0u16; num_cosets];
            let mut seen = vec![false; num_cosets];
            for x in 0..n {
                let c = coset_of[x];
                if seen[c] {
                    continue;
                }
                seen[c] = true;
                images[c] = coset_of[parent.mul(g, x)] as u16;
            }
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let gen_perms: Vec<Perm> = (0..parent.gens.len())
            .map(|gi| {
                let g = parent
                    .elem_index(&parent.gens[gi])
                    .expect("generator enumerated");
                act(g)
            })
            .collect();
        let quotient = Group::from_generators(num_cosets, gen_perms, DEFAULT_ORDER_CAP)?;
        if quotient.order() * kernel.sub.order() != parent.order() {
            return Err(Error::Internal("quotient order mismatch".into()));
        }
        let mut projection = Vec::with_capacity(n);
        for g in 0..n {
            let qi = quotient
                .elem_index(&act(g))
                .ok_or_else(|| Error::Internal("projection left the quotient".into()))?;
            projection.push(qi);
        }
        Ok(QuotientGroup { parent: parent.clone(), kernel, quotient, projection })
    }
}

// --- builtins and parsing ---

pub fn cyclic(n: usize) -> Result<Arc<Group>> {
    if n == 1 {
        return Ok(Group::trivial());
    }
    let cycle: Vec<usize> = (1..=n).collect();
    let text = format!("({})", cycle.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    Group::from_generators(n, vec![Perm::from_cycles(n, &text)?], DEFAULT_ORDER_CAP)
}

pub fn symmetric(n: usize) -> Result<Arc<Group>> {
    if n <= 1 {
        return Ok(Group::trivial());
    }
    let mut gens = vec![Perm::from_cycles(n, "(1 2)")?];
    if n > 2 {
        let cycle: Vec<String> = (1..=n).map(|x| x.to_string()).collect();
        gens.push(Perm::from_cycles(n, &format!("({})", cycle.join(" ")))?);
    }
    Group::from_generators(n, gens, DEFAULT_ORDER_CAP)
}

pub fn alternating(n: usize) -> Result<Arc<Group>> {
    if n <= 2 {
        return Ok(Group::trivial());
    }
    let mut gens = vec![Perm::from_cycles(n, "(1 2 3)")?];
    if n > 3 {
        let pts: Vec<String> = if n % 2 == 1 {
            (1..=n).map(|x| x.to_string()).collect()
        } else {
            (2..=n).map(|x| x.to_string()).collect()
        };
        gens.push(Perm::from_cycles(n, &format!("({})", pts.join(" ")))?);
    }
    Group::from_generators(n, gens, DEFAULT_ORDER_CAP)
}

/// Dihedral group of order 2n acting on n points (n >= 3).
pub fn dihedral(n: usize) -> Result<Arc<Group>> {
    if n < 3 {
        return Err(Error::BadGroupSpec("dihedral needs n >= 3 (order 2n)".into()));
    }
    let cycle: Vec<String> = (1..=n).map(|x| x.to_string()).collect();
    let rot = Perm::from_cycles(n, &format!("({})", cycle.join(" ")))?;
    let refl = Perm::from_images((0..n).map(|i| ((n - i) % n) as u16).collect())?;
    Group::from_generators(n, vec![rot, refl], DEFAULT_ORDER_CAP)
}

pub fn klein4() -> Result<Arc<Group>> {
    Group::from_generators(
        4,
        vec![Perm::from_cycles(4, "(1 2)(3 4)")?, Perm::from_cycles(4, "(1 3)(2 4)")?],
        DEFAULT_ORDER_CAP,
    )
}

/// Parse a group specification:
/// `builtin:<cyclic|symmetric|alternating|dihedral>:<n>`, `builtin:klein4`,
/// `perm:<degree>:<cycles>,<cycles>,...`, or the shorthand aliases
/// `c<n> s<n> a<n> d<2n> v4`.
pub fn parse_group_spec(spec: &str) -> Result<Arc<Group>> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let mut parts = rest.split(':');
        let name = parts.next().unwrap_or("");
        let arg = parts.next();
        return match (name, arg) {
            ("klein4", None) => klein4(),
            ("cyclic", Some(n)) => cyclic(parse_n(n)?),
            ("symmetric", Some(n)) => symmetric(parse_n(n)?),
            ("alternating", Some(n)) => alternating(parse_n(n)?),
            ("dihedral", Some(n)) => dihedral(parse_n(n)?),
            ("trivial", None) => Ok(Group::trivial()),
            _ => Err(Error::BadGroupSpec(format!("unknown builtin '{rest}'"))),
        };
    }
    if let Some(rest) = spec.strip_prefix("perm:") {
        let (deg_str, cycles) = rest
            .split_once(':')
            .ok_or_else(|| Error::BadGroupSpec("perm spec needs degree:cycles".into()))?;
        let degree = parse_n(deg_str)?;
        let gens: Result<Vec<Perm>> = split_cycle_list(cycles)
            .into_iter()
            .map(|c| Perm::from_cycles(degree, &c))
            .collect();
        return Group::from_generators(degree, gens?, DEFAULT_ORDER_CAP);
    }
    // Shorthand aliases.
    let lower = spec.to_ascii_lowercase();
    if lower == "v4" || lower == "klein4" {
        return klein4();
    }
    if let Some(n) = lower.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        return cyclic(n);
    }
    if let Some(n) = lower.strip_prefix('s').and_then(|s| s.parse::<usize>().ok()) {
        return symmetric(n);
    }
    if let Some(n) = lower.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
        return alternating(n);
    }
    if let Some(n) = lower.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
        if n % 2 != 0 {
            return Err(Error::BadGroupSpec("d<n> names the dihedral group of order n".into()));
        }
        return dihedral(n / 2);
    }
    Err(Error::BadGroupSpec(format!("cannot parse group spec '{spec}'")))
}

/// Split `(1 2 3)(4 5),(1 2)` on commas that separate generators.
fn split_cycle_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn parse_n(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::BadGroupSpec(format!("bad integer '{s}'")))
}

/// Resolve a normal-subgroup specification against an ambient group:
/// `order:<n>` picks the unique normal subgroup of that order, or any group
/// spec whose permutations are literally contained in the ambient group.
pub fn parse_normal_spec(parent: &Arc<Group>, spec: &str) -> Result<SubgroupEmbedding> {
    let spec = spec.trim();
    if let Some(n) = spec.strip_prefix("order:") {
        let n = parse_n(n)?;
        let candidates: Vec<Vec<usize>> = parent
            .normal_subgroups()
            .into_iter()
            .filter(|s| s.len() == n)
            .collect();
        return match candidates.len() {
            0 => Err(Error::NotSubgroup(format!("no normal subgroup of order {n}"))),
            1 => SubgroupEmbedding::from_subset(parent, &candidates[0]),
            k => Err(Error::NotSubgroup(format!(
                "{k} normal subgroups of order {n}; specify one by generators"
            ))),
        };
    }
    let sub = parse_group_spec(spec)?;
    let emb = SubgroupEmbedding::from_group(parent, &sub)?;
    if !emb.is_normal() {
        return Err(Error::NotNormal(format!("'{spec}' is not normal in the ambient group")));
    }
    Ok(emb)
}
