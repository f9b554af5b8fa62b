//! Exact factorizations `G = MN` and `G = MNP`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{closure, GroupTable, SubgroupRef};

fn ensure_subgroup_of(g: &GroupTable, h: &SubgroupRef, name: &str) -> Result<()> {
    if h.belongs_to(g) {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "{name} is not a subgroup of the given group"
        )))
    }
}

fn intersects_trivially(a: &SubgroupRef, b: &SubgroupRef) -> bool {
    a.elements().iter().skip(1).all(|&x| !b.contains(x))
}

/// `M ∩ N = 1` and `|M||N| = |G|`.
pub fn is_exact_pair(g: &GroupTable, m: &SubgroupRef, n: &SubgroupRef) -> Result<bool> {
    ensure_subgroup_of(g, m, "M")?;
    ensure_subgroup_of(g, n, "N")?;
    Ok(m.len() * n.len() == g.order() && intersects_trivially(m, n))
}

/// Unique decompositions `g = m·n` and `g = n′·m′`. All indices are ambient.
#[derive(Clone)]
pub struct PairFactorization {
    group: Arc<GroupTable>,
    m: SubgroupRef,
    n: SubgroupRef,
    decomp: Vec<(usize, usize)>,
    decomp_rev: Vec<(usize, usize)>,
}

impl PairFactorization {
    pub fn new(g: &Arc<GroupTable>, m: SubgroupRef, n: SubgroupRef) -> Result<Self> {
        if !is_exact_pair(g, &m, &n)? {
            return Err(Error::NotExact(format!(
                "|M| = {}, |N| = {}, |G| = {}, M ∩ N trivial: {}",
                m.len(),
                n.len(),
                g.order(),
                intersects_trivially(&m, &n)
            )));
        }
        let unset = (usize::MAX, usize::MAX);
        let mut decomp = vec![unset; g.order()];
        let mut decomp_rev = vec![unset; g.order()];
        for &x in m.elements() {
            for &y in n.elements() {
                let xy = g.mul(x, y);
                let yx = g.mul(y, x);
                if decomp[xy] != unset || decomp_rev[yx] != unset {
                    return Err(Error::NotExact(format!(
                        "{} has two decompositions",
                        g.render(if decomp[xy] != unset { xy } else { yx })
                    )));
                }
                decomp[xy] = (x, y);
                decomp_rev[yx] = (y, x);
            }
        }
        Ok(PairFactorization {
            group: Arc::clone(g),
            m,
            n,
            decomp,
            decomp_rev,
        })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn m(&self) -> &SubgroupRef {
        &self.m
    }

    pub fn n(&self) -> &SubgroupRef {
        &self.n
    }

    /// `(m, n)` with `g = m·n`.
    pub fn decomp(&self, g: usize) -> (usize, usize) {
        self.decomp[g]
    }

    /// `(n′, m′)` with `g = n′·m′`.
    pub fn decomp_rev(&self, g: usize) -> (usize, usize) {
        self.decomp_rev[g]
    }
}

impl fmt::Debug for PairFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairFactorization")
            .field("order", &self.group.order())
            .field("m", &self.m)
            .field("n", &self.n)
            .finish()
    }
}

pub fn build_pair_factorization(
    g: &Arc<GroupTable>,
    m: SubgroupRef,
    n: SubgroupRef,
) -> Result<PairFactorization> {
    PairFactorization::new(g, m, n)
}

/// Every subgroup, ordered by `(size, element list)`.
pub fn enumerate_subgroups(g: &Arc<GroupTable>) -> Vec<SubgroupRef> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic_gens = Vec::new();
    for x in 0..g.order() {
        let members = closure(g, &[x]);
        if seen.insert(members) {
            cyclic_gens.push(x);
        }
    }
    // Every subgroup is a join of cyclic ones. Each round joins the subgroups
    // first seen in the previous round with every cyclic subgroup, keeping
    // one generator list per distinct result, until nothing new appears.
    let mut level: Vec<Vec<usize>> = cyclic_gens.iter().map(|&x| vec![x]).collect();
    loop {
        let candidates: Vec<(Vec<usize>, Vec<usize>)> = level
            .par_iter()
            .flat_map_iter(|gens| {
                cyclic_gens.iter().filter_map(move |&c| {
                    if gens.contains(&c) {
                        return None;
                    }
                    let mut next = gens.clone();
                    next.push(c);
                    Some((closure(g, &next), next))
                })
            })
            .collect();
        level = Vec::new();
        for (members, gens) in candidates {
            if seen.insert(members) {
                level.push(gens);
            }
        }
        if level.is_empty() {
            break;
        }
    }
    let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|members| SubgroupRef::from_closed(Arc::clone(g), members))
        .collect()
}

/// Ordered exact pairs `(M, N)` drawn from `subgroups`, in list order.
pub fn enumerate_exact_pairs(
    g: &GroupTable,
    subgroups: &[SubgroupRef],
    include_degenerate: bool,
) -> Vec<(SubgroupRef, SubgroupRef)> {
    let mut out = Vec::new();
    for m in subgroups {
        for n in subgroups {
            if !include_degenerate && (m.is_trivial() || n.is_trivial()) {
                continue;
            }
            if is_exact_pair(g, m, n).unwrap_or(false) {
                out.push((m.clone(), n.clone()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleMode {
    /// `MN`, `MP`, `NP` must be subgroups, each exactly factorized.
    Strict,
    /// Only `(m, n, p) ↦ mnp` must be a bijection.
    Relaxed,
}

impl TripleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TripleMode::Strict => "strict",
            TripleMode::Relaxed => "relaxed",
        }
    }
}

/// The product set `AB` as a subgroup, if it is one of size `|A||B|`.
fn product_subgroup(g: &Arc<GroupTable>, a: &SubgroupRef, b: &SubgroupRef) -> Option<SubgroupRef> {
    let mut set: Vec<usize> = a
        .elements()
        .iter()
        .flat_map(|&x| b.elements().iter().map(move |&y| g.mul(x, y)))
        .collect();
    set.sort_unstable();
    set.dedup();
    if set.len() != a.len() * b.len() {
        return None;
    }
    SubgroupRef::new(Arc::clone(g), set).ok()
}

fn triple_is_bijective(g: &GroupTable, m: &SubgroupRef, n: &SubgroupRef, p: &SubgroupRef) -> bool {
    if m.len() * n.len() * p.len() != g.order() {
        return false;
    }
    let mut hit = vec![false; g.order()];
    for &x in m.elements() {
        for &y in n.elements() {
            let xy = g.mul(x, y);
            for &z in p.elements() {
                let w = g.mul(xy, z);
                if hit[w] {
                    return false;
                }
                hit[w] = true;
            }
        }
    }
    true
}

pub fn is_exact_triple(
    g: &Arc<GroupTable>,
    m: &SubgroupRef,
    n: &SubgroupRef,
    p: &SubgroupRef,
    mode: TripleMode,
) -> Result<bool> {
    ensure_subgroup_of(g, m, "M")?;
    ensure_subgroup_of(g, n, "N")?;
    ensure_subgroup_of(g, p, "P")?;
    if !triple_is_bijective(g, m, n, p) {
        return Ok(false);
    }
    Ok(match mode {
        TripleMode::Relaxed => true,
        TripleMode::Strict => [(m, n), (m, p), (n, p)]
            .iter()
            .all(|(a, b)| product_subgroup(g, a, b).is_some()),
    })
}

/// The three pair factorizations of a strict triple. Each lives inside its
/// product subgroup, re-indexed as a standalone table.
#[derive(Debug, Clone)]
pub struct SubPairs {
    pub mn: PairFactorization,
    pub mp: PairFactorization,
    pub np: PairFactorization,
    /// `MN`, `MP`, `NP` as subgroups of the ambient group.
    pub products: [SubgroupRef; 3],
}

#[derive(Clone)]
pub struct TripleFactorization {
    group: Arc<GroupTable>,
    m: SubgroupRef,
    n: SubgroupRef,
    p: SubgroupRef,
    mode: TripleMode,
    decomp3: Vec<[usize; 3]>,
    pairs: Option<SubPairs>,
}

impl fmt::Debug for TripleFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TripleFactorization")
            .field("order", &self.group.order())
            .field("mode", &self.mode)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("p", &self.p)
            .finish()
    }
}

fn pair_inside(
    g: &Arc<GroupTable>,
    a: &SubgroupRef,
    b: &SubgroupRef,
) -> Result<Option<(SubgroupRef, PairFactorization)>> {
    let Some(product) = product_subgroup(g, a, b) else {
        return Ok(None);
    };
    let table = Arc::new(product.to_table());
    let local = |h: &SubgroupRef| -> Result<SubgroupRef> {
        let elems = h
            .elements()
            .iter()
            .map(|&x| product.position(x).expect("factor lies in product"))
            .collect();
        SubgroupRef::new(Arc::clone(&table), elems)
    };
    let pf = PairFactorization::new(&table, local(a)?, local(b)?)?;
    Ok(Some((product, pf)))
}

impl TripleFactorization {
    pub fn new(
        g: &Arc<GroupTable>,
        m: SubgroupRef,
        n: SubgroupRef,
        p: SubgroupRef,
        mode: TripleMode,
    ) -> Result<Self> {
        if !is_exact_triple(g, &m, &n, &p, mode)? {
            return Err(Error::NotExact(format!(
                "({}, {}, {}) is not an exact triple of a group of order {} in {} mode",
                m.len(),
                n.len(),
                p.len(),
                g.order(),
                mode.as_str()
            )));
        }
        let mut decomp3 = vec![[usize::MAX; 3]; g.order()];
        for &x in m.elements() {
            for &y in n.elements() {
                let xy = g.mul(x, y);
                for &z in p.elements() {
                    decomp3[g.mul(xy, z)] = [x, y, z];
                }
            }
        }
        let pairs = match (
            pair_inside(g, &m, &n)?,
            pair_inside(g, &m, &p)?,
            pair_inside(g, &n, &p)?,
        ) {
            (Some((smn, mn)), Some((smp, mp)), Some((snp, np))) => Some(SubPairs {
                mn,
                mp,
                np,
                products: [smn, smp, snp],
            }),
            _ => None,
        };
        debug_assert!(mode == TripleMode::Relaxed || pairs.is_some());
        Ok(TripleFactorization {
            group: Arc::clone(g),
            m,
            n,
            p,
            mode,
            decomp3,
            pairs,
        })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn m(&self) -> &SubgroupRef {
        &self.m
    }

    pub fn n(&self) -> &SubgroupRef {
        &self.n
    }

    pub fn p(&self) -> &SubgroupRef {
        &self.p
    }

    pub fn mode(&self) -> TripleMode {
        self.mode
    }

    /// Ambient `[m, n, p]` with `g = m·n·p`.
    pub fn decomp3(&self, g: usize) -> [usize; 3] {
        self.decomp3[g]
    }

    /// Present whenever `MN`, `MP` and `NP` are subgroups.
    pub fn sub_pairs(&self) -> Option<&SubPairs> {
        self.pairs.as_ref()
    }
}

pub fn build_triple_factorization(
    g: &Arc<GroupTable>,
    m: SubgroupRef,
    n: SubgroupRef,
    p: SubgroupRef,
    mode: TripleMode,
) -> Result<TripleFactorization> {
    TripleFactorization::new(g, m, n, p, mode)
}

/// Ordered exact triples drawn from `subgroups`, in list order.
pub fn enumerate_exact_triples(
    g: &Arc<GroupTable>,
    subgroups: &[SubgroupRef],
    include_degenerate: bool,
    mode: TripleMode,
) -> Vec<(SubgroupRef, SubgroupRef, SubgroupRef)> {
    let order = g.order();
    let usable: Vec<&SubgroupRef> = subgroups
        .iter()
        .filter(|h| include_degenerate || !h.is_trivial())
        .collect();
    let mut candidates = Vec::new();
    for &m in &usable {
        for &n in &usable {
            if !order.is_multiple_of(m.len() * n.len()) || !intersects_trivially(m, n) {
                continue;
            }
            for &p in &usable {
                if m.len() * n.len() * p.len() == order {
                    candidates.push((m, n, p));
                }
            }
        }
    }
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|(m, n, p)| is_exact_triple(g, m, n, p, mode).unwrap_or(false))
        .collect();
    candidates
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((m, n, p), _)| (m.clone(), n.clone(), p.clone()))
        .collect()
}
