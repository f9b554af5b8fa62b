//! Finite groups as multiplication tables.
//!
//! Element `0` is always the identity. Tables built from permutations keep the
//! permutation of every element as its label; elements are then ordered
//! lexicographically by image sequence, which puts the identity first.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default ceiling on the order of any table this crate will build.
pub const DEFAULT_MAX_ORDER: usize = 10368;

// Above these orders the exhaustive associativity sweep and the full
// label-agreement sweep are replaced as described in `validate`.
const ASSOC_SWEEP_LIMIT: usize = 256;
const LABEL_SWEEP_LIMIT: usize = 1024;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<Perm>>,
}

impl GroupTable {
    /// Builds a table from explicit rows and checks every group axiom.
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<Perm>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= order {
                    return Err(Error::IndexOutOfRange { index: c, order });
                }
                mul.push(c as u32);
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != order {
                return Err(Error::Argument(format!(
                    "{} labels for a table of order {order}",
                    labels.len()
                )));
            }
        }
        let mut table = GroupTable {
            order,
            mul,
            inv: Vec::new(),
            labels,
        };
        table.inv = table.find_inverses()?;
        table.validate(true)?;
        Ok(table)
    }

    fn find_inverses(&self) -> Result<Vec<u32>> {
        let mut inv = vec![u32::MAX; self.order];
        for a in 0..self.order {
            if let Some(b) = self.row(a).iter().position(|&c| c == 0) {
                inv[a] = b as u32;
            } else {
                return Err(Error::NotAGroup(format!(
                    "element {a} has no right inverse"
                )));
            }
        }
        Ok(inv)
    }

    /// Latin square, identity and inverse laws are always checked.
    /// Associativity is swept over all triples up to `ASSOC_SWEEP_LIMIT`, and
    /// always for unlabeled tables. For larger labeled tables the label
    /// agreement sweep implies it, since composition of permutations is
    /// associative.
    fn validate(&self, full_labels: bool) -> Result<()> {
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a {
                    return Err(Error::NotAGroup(format!("row {a} repeats element {c}")));
                }
                seen[c] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b {
                    return Err(Error::NotAGroup(format!("column {b} repeats element {c}")));
                }
                seen[c] = b;
            }
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not an identity (fails at {a})"
                )));
            }
            let i = self.inv(a);
            if self.mul(a, i) != 0 || self.mul(i, a) != 0 {
                return Err(Error::NotAGroup(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
        }
        let check_labels = self.labels.is_some() && (full_labels || n <= LABEL_SWEEP_LIMIT);
        if let (true, Some(labels)) = (check_labels, &self.labels) {
            let degree = labels[0].degree();
            if !labels[0].is_identity() {
                return Err(Error::NotAGroup(
                    "label of element 0 is not the identity".into(),
                ));
            }
            for a in 0..n {
                for b in 0..n {
                    let (la, lb, lc) = (&labels[a], &labels[b], &labels[self.mul(a, b)]);
                    if (0..degree).any(|i| lc.apply(i) != lb.apply(la.apply(i))) {
                        return Err(Error::NotAGroup(format!(
                            "mul[{a}][{b}] disagrees with permutation composition"
                        )));
                    }
                }
            }
        }
        if n <= ASSOC_SWEEP_LIMIT || self.labels.is_none() {
            if let Some((a, b, c)) = self.first_non_associative() {
                return Err(Error::NotAGroup(format!(
                    "associativity fails at ({a}, {b}, {c})"
                )));
            }
        }
        Ok(())
    }

    fn first_non_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let row_ab = self.row(ab);
                for c in 0..n {
                    if row_ab[c] as usize != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Unchecked product; panics on out-of-range indices.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: usize) -> Result<usize> {
        self.check_index(a)?;
        Ok(self.inv(a))
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: a,
                order: self.order,
            })
        }
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn labels(&self) -> Option<&[Perm]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> Option<&Perm> {
        self.labels.as_ref().map(|l| &l[a])
    }

    pub fn degree(&self) -> Option<usize> {
        self.labels.as_ref().map(|l| l[0].degree())
    }

    pub fn find_label(&self, perm: &Perm) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == perm)
    }

    /// Cycle notation when labeled, `#<index>` otherwise.
    pub fn render(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].to_string(),
            None => format!("#{a}"),
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
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

    /// The image of the map `a ↦ images[a]` is a homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &GroupTable, images: &[usize]) -> bool {
        (0..self.order).all(|a| {
            (0..self.order).all(|b| images[self.mul(a, b)] == other.mul(images[a], images[b]))
        })
    }

    /// Small generating set found greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut size = 1;
        for a in 1..self.order {
            if size == self.order {
                break;
            }
            if !inside[a] {
                gens.push(a);
                let members = closure(self, &gens);
                size = members.len();
                for g in members {
                    inside[g] = true;
                }
            }
        }
        gens
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("labeled", &self.labels.is_some())
            .finish()
    }
}

/// Sorted element list of the subgroup generated by `gens`.
pub(crate) fn closure(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                queue.push_back(y);
            }
        }
    }
    inside
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// Closure of permutation generators, with the default order ceiling.
pub fn group_from_generators(degree: usize, gens: &[Perm]) -> Result<GroupTable> {
    group_from_generators_with_limit(degree, gens, DEFAULT_MAX_ORDER)
}

pub fn group_from_generators_with_limit(
    degree: usize,
    gens: &[Perm],
    max_order: usize,
) -> Result<GroupTable> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::InvalidPerm(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
    }
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut elements = vec![id];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for s in gens {
            let y = x.then(s);
            if !seen.contains_key(&y) {
                if elements.len() == max_order {
                    return Err(Error::SizeLimit { max: max_order });
                }
                seen.insert(y.clone(), ());
                elements.push(y);
            }
        }
    }
    drop(seen);
    elements.sort();
    let n = elements.len();
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Right multiplication by each generator, then a BFS tree writing every
    // element as (parent, generator).
    let right: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| gens.iter().map(|s| index[&x.then(s)]).collect())
        .collect();
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut bfs = Vec::with_capacity(n);
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        bfs.push(x);
        for (s, &y) in right[x].iter().enumerate() {
            if !reached[y] {
                reached[y] = true;
                parent[y] = (x, s);
                queue.push_back(y);
            }
        }
    }
    debug_assert_eq!(bfs.len(), n);

    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        let row = &mut mul[a * n..(a + 1) * n];
        row[0] = a as u32;
        for &b in &bfs[1..] {
            let (c, s) = parent[b];
            row[b] = right[row[c] as usize][s] as u32;
        }
    }
    let mut table = GroupTable {
        order: n,
        mul,
        inv: Vec::new(),
        labels: Some(elements),
    };
    table.inv = table.find_inverses()?;
    table.validate(false)?;
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of a regular `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Klein4,
    Quaternion8,
}

pub fn standard_group(family: Family) -> Result<GroupTable> {
    standard_group_with_limit(family, DEFAULT_MAX_ORDER)
}

pub fn standard_group_with_limit(family: Family, max_order: usize) -> Result<GroupTable> {
    let generate =
        |degree: usize, gens: &[Perm]| group_from_generators_with_limit(degree, gens, max_order);
    let cycle = |n: usize| Perm::from_cycles(n, &[(0..n).collect()]);
    match family {
        Family::Cyclic(n) => {
            if n == 0 {
                return Err(Error::Argument("cyclic group needs n >= 1".into()));
            }
            if n > max_order {
                return Err(Error::SizeLimit { max: max_order });
            }
            let gens = if n == 1 { vec![] } else { vec![cycle(n)?] };
            generate(n, &gens)
        }
        Family::Dihedral(n) => {
            if n < 3 {
                return Err(Error::Argument("dihedral group needs n >= 3".into()));
            }
            if 2 * n > max_order {
                return Err(Error::SizeLimit { max: max_order });
            }
            let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
            generate(n, &[cycle(n)?, reflection])
        }
        Family::Symmetric(n) => {
            if n == 0 || n > 8 {
                return Err(Error::Argument("symmetric group needs 1 <= n <= 8".into()));
            }
            let gens = if n == 1 {
                vec![]
            } else {
                vec![Perm::from_cycles(n, &[vec![0, 1]])?, cycle(n)?]
            };
            generate(n, &gens)
        }
        Family::Alternating(n) => {
            if n == 0 || n > 8 {
                return Err(Error::Argument(
                    "alternating group needs 1 <= n <= 8".into(),
                ));
            }
            let gens = (2..n)
                .map(|i| Perm::from_cycles(n, &[vec![0, 1, i]]))
                .collect::<Result<Vec<_>>>()?;
            generate(n, &gens)
        }
        Family::Klein4 => generate(
            4,
            &[
                Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
            ],
        ),
        Family::Quaternion8 if max_order < 8 => Err(Error::SizeLimit { max: max_order }),
        Family::Quaternion8 => Ok(quaternion8()),
    }
}

/// Fixed table for Q8 with elements, in index order,
/// `1, -1, i, -i, j, -j, k, -k`.
fn quaternion8() -> GroupTable {
    // unit product: (sign, unit) for units 0=1, 1=i, 2=j, 3=k
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let rows = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (neg, unit) = UNIT[a / 2][b / 2];
                    let neg = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                    2 * unit + neg as usize
                })
                .collect()
        })
        .collect();
    GroupTable::from_table(rows, None).expect("quaternion table is a group")
}

/// Direct product `a × b`. Permutation groups are multiplied as disjoint
/// permutation groups and keep canonical order; otherwise `(x, y)` has index
/// `x * |b| + y`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    direct_product_with_limit(a, b, DEFAULT_MAX_ORDER)
}

pub fn direct_product_with_limit(
    a: &GroupTable,
    b: &GroupTable,
    max_order: usize,
) -> Result<GroupTable> {
    let order = a
        .order()
        .checked_mul(b.order())
        .filter(|&o| o <= max_order)
        .ok_or(Error::SizeLimit { max: max_order })?;
    if let (Some(la), Some(lb)) = (a.labels(), b.labels()) {
        let (da, db) = (la[0].degree(), lb[0].degree());
        let degree = da + db;
        let gens: Vec<Perm> = a
            .generating_set()
            .into_iter()
            .map(|x| la[x].shifted(0, degree))
            .chain(
                b.generating_set()
                    .into_iter()
                    .map(|y| lb[y].shifted(da, degree)),
            )
            .collect();
        let g = group_from_generators_with_limit(degree, &gens, max_order)?;
        debug_assert_eq!(g.order(), order);
        return Ok(g);
    }
    let nb = b.order();
    let rows = (0..order)
        .map(|x| {
            (0..order)
                .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                .collect()
        })
        .collect();
    GroupTable::from_table(rows, None)
}

/// A subgroup of an ambient table, as a sorted list of ambient indices.
#[derive(Clone)]
pub struct SubgroupRef {
    ambient: Arc<GroupTable>,
    elements: Vec<usize>,
}

impl SubgroupRef {
    pub fn new(ambient: Arc<GroupTable>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        for &x in &elements {
            ambient.check_index(x)?;
        }
        if elements.first() != Some(&0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let sub = SubgroupRef { ambient, elements };
        for &x in &sub.elements {
            if !sub.contains(sub.ambient.inv(x)) {
                return Err(Error::NotSubgroup(format!(
                    "not closed under inverses at {}",
                    sub.ambient.render(x)
                )));
            }
            for &y in &sub.elements {
                if !sub.contains(sub.ambient.mul(x, y)) {
                    return Err(Error::NotSubgroup(format!(
                        "not closed under products at ({}, {})",
                        sub.ambient.render(x),
                        sub.ambient.render(y)
                    )));
                }
            }
        }
        Ok(sub)
    }

    /// Caller guarantees `elements` is a sorted, closed subset.
    pub(crate) fn from_closed(ambient: Arc<GroupTable>, elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        SubgroupRef { ambient, elements }
    }

    pub fn trivial(ambient: Arc<GroupTable>) -> Self {
        SubgroupRef::from_closed(ambient, vec![0])
    }

    pub fn whole(ambient: Arc<GroupTable>) -> Self {
        let n = ambient.order();
        SubgroupRef::from_closed(ambient, (0..n).collect())
    }

    pub fn ambient(&self) -> &Arc<GroupTable> {
        &self.ambient
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Local index of an ambient element.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn belongs_to(&self, g: &GroupTable) -> bool {
        std::ptr::eq(Arc::as_ptr(&self.ambient), g) || *self.ambient == *g
    }

    /// The subgroup re-indexed as a standalone table; local index `i`
    /// corresponds to ambient element `elements()[i]`.
    pub fn to_table(&self) -> GroupTable {
        let k = self.len();
        let mut mul = Vec::with_capacity(k * k);
        for &x in &self.elements {
            for &y in &self.elements {
                let p = self
                    .position(self.ambient.mul(x, y))
                    .expect("closed subgroup");
                mul.push(p as u32);
            }
        }
        let inv = self
            .elements
            .iter()
            .map(|&x| self.position(self.ambient.inv(x)).expect("closed subgroup") as u32)
            .collect();
        let labels = self
            .ambient
            .labels()
            .map(|l| self.elements.iter().map(|&x| l[x].clone()).collect());
        GroupTable {
            order: k,
            mul,
            inv,
            labels,
        }
    }
}

impl PartialEq for SubgroupRef {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && other.belongs_to(&self.ambient)
    }
}

impl Eq for SubgroupRef {}

impl fmt::Debug for SubgroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .elements
            .iter()
            .map(|&x| self.ambient.render(x))
            .collect();
        write!(f, "SubgroupRef{{{}}}", rendered.join(", "))
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generated(g: &Arc<GroupTable>, gens: &[usize]) -> Result<SubgroupRef> {
    for &x in gens {
        g.check_index(x)?;
    }
    let elements = closure(g, gens);
    debug_assert_eq!(g.order() % elements.len(), 0, "Lagrange");
    Ok(SubgroupRef::from_closed(Arc::clone(g), elements))
}
