//! Matched pairs of groups.
//!
//! An exact factorization `G = MN` rewrites every product `m·n` uniquely as
//! `ᵐn · mⁿ` with `ᵐn ∈ N` and `mⁿ ∈ M`. That gives a left action of `M` on
//! `N` (`left`) and a right action of `N` on `M` (`right`). The reversed
//! product is recovered through two pairings,
//!
//! ```text
//! n·m = (m ↗ n)·(m ↖ n),   m ↗ n = m^(ᵐ̄n̄),   m ↖ n = ^(m̄^n̄) n
//! ```
//!
//! and `M × N` becomes a group (the bicrossproduct) under
//! `(m, n)(l, p) = (m·(l ↗ n), (l ↖ n)·p)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factorization::PairFactorization;
use crate::group::GroupTable;
use crate::report::{Check, CheckBuilder, Counterexample};

/// Where the two factors sit inside an ambient group.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub ambient: Arc<GroupTable>,
    pub m: Vec<usize>,
    pub n: Vec<usize>,
}

/// Action tables of a matched pair, indexed by standalone element indices of
/// `M` and `N`. Constructible by hand, so every verifier treats it as
/// untrusted.
#[derive(Debug, Clone)]
pub struct MatchedPairData {
    m_group: Arc<GroupTable>,
    n_group: Arc<GroupTable>,
    left: Vec<u32>,
    right: Vec<u32>,
    origin: Option<Embedding>,
}

impl MatchedPairData {
    /// `left[m][n] = ᵐn` (an `N` index), `right[m][n] = mⁿ` (an `M` index).
    pub fn from_tables(
        m_group: Arc<GroupTable>,
        n_group: Arc<GroupTable>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (km, kn) = (m_group.order(), n_group.order());
        let flatten = |rows: Vec<Vec<usize>>, bound: usize, what: &str| -> Result<Vec<u32>> {
            if rows.len() != km || rows.iter().any(|r| r.len() != kn) {
                return Err(Error::Argument(format!("{what} table must be {km}×{kn}")));
            }
            rows.into_iter()
                .flatten()
                .map(|x| {
                    if x < bound {
                        Ok(x as u32)
                    } else {
                        Err(Error::IndexOutOfRange {
                            index: x,
                            order: bound,
                        })
                    }
                })
                .collect()
        };
        Ok(MatchedPairData {
            left: flatten(left, kn, "left action")?,
            right: flatten(right, km, "right action")?,
            m_group,
            n_group,
            origin: None,
        })
    }

    /// Both actions trivial: the data of a direct product.
    pub fn trivial(m_group: Arc<GroupTable>, n_group: Arc<GroupTable>) -> Self {
        let (km, kn) = (m_group.order(), n_group.order());
        let left = (0..km).flat_map(|_| 0..kn as u32).collect();
        let right = (0..km as u32)
            .flat_map(|m| std::iter::repeat_n(m, kn))
            .collect();
        MatchedPairData {
            m_group,
            n_group,
            left,
            right,
            origin: None,
        }
    }

    pub fn m_group(&self) -> &Arc<GroupTable> {
        &self.m_group
    }

    pub fn n_group(&self) -> &Arc<GroupTable> {
        &self.n_group
    }

    pub fn m_order(&self) -> usize {
        self.m_group.order()
    }

    pub fn n_order(&self) -> usize {
        self.n_group.order()
    }

    pub fn origin(&self) -> Option<&Embedding> {
        self.origin.as_ref()
    }

    pub(crate) fn with_origin(mut self, origin: Embedding) -> Self {
        self.origin = Some(origin);
        self
    }

    /// `ᵐn`
    #[inline]
    pub fn left(&self, m: usize, n: usize) -> usize {
        self.left[m * self.n_order() + n] as usize
    }

    /// `mⁿ`
    #[inline]
    pub fn right(&self, m: usize, n: usize) -> usize {
        self.right[m * self.n_order() + n] as usize
    }

    pub fn set_left(&mut self, m: usize, n: usize, value: usize) {
        assert!(value < self.n_order());
        let k = self.n_order();
        self.left[m * k + n] = value as u32;
    }

    pub fn set_right(&mut self, m: usize, n: usize, value: usize) {
        assert!(value < self.m_order());
        let k = self.n_order();
        self.right[m * k + n] = value as u32;
    }

    /// `m ↗ n = m^(ᵐ̄n̄)`, the `M` factor of `n·m`.
    #[inline]
    pub fn ne(&self, m: usize, n: usize) -> usize {
        let (mb, nb) = (self.m_group.inv(m), self.n_group.inv(n));
        self.right(m, self.left(mb, nb))
    }

    /// `m ↖ n = ^(m̄^n̄) n`, the `N` factor of `n·m`.
    #[inline]
    pub fn nw(&self, m: usize, n: usize) -> usize {
        let (mb, nb) = (self.m_group.inv(m), self.n_group.inv(n));
        self.left(self.right(mb, nb), n)
    }

    pub fn is_left_trivial(&self) -> bool {
        (0..self.m_order()).all(|m| (0..self.n_order()).all(|n| self.left(m, n) == n))
    }

    pub fn is_right_trivial(&self) -> bool {
        (0..self.m_order()).all(|m| (0..self.n_order()).all(|n| self.right(m, n) == m))
    }

    pub fn render_m(&self, m: usize) -> String {
        match &self.origin {
            Some(e) => e.ambient.render(e.m[m]),
            None => self.m_group.render(m),
        }
    }

    pub fn render_n(&self, n: usize) -> String {
        match &self.origin {
            Some(e) => e.ambient.render(e.n[n]),
            None => self.n_group.render(n),
        }
    }

    fn check_m(&self, m: usize) -> Result<()> {
        self.m_group.check_index(m)
    }

    fn check_n(&self, n: usize) -> Result<()> {
        self.n_group.check_index(n)
    }

    /// Bicrossproduct index of `(m, n)`.
    pub fn pack(&self, m: usize, n: usize) -> usize {
        m * self.n_order() + n
    }

    pub fn unpack(&self, x: usize) -> (usize, usize) {
        (x / self.n_order(), x % self.n_order())
    }
}

/// Reads both actions off the reversed decomposition `m·n = n′·m′`.
pub fn derive_matched_pair(pf: &PairFactorization) -> MatchedPairData {
    let g = pf.group();
    let (ms, ns) = (pf.m(), pf.n());
    let (km, kn) = (ms.len(), ns.len());
    let mut left = Vec::with_capacity(km * kn);
    let mut right = Vec::with_capacity(km * kn);
    for &x in ms.elements() {
        for &y in ns.elements() {
            let (n2, m2) = pf.decomp_rev(g.mul(x, y));
            left.push(ns.position(n2).expect("N factor") as u32);
            right.push(ms.position(m2).expect("M factor") as u32);
        }
    }
    MatchedPairData {
        m_group: Arc::new(ms.to_table()),
        n_group: Arc::new(ns.to_table()),
        left,
        right,
        origin: Some(Embedding {
            ambient: Arc::clone(g),
            m: ms.elements().to_vec(),
            n: ns.elements().to_vec(),
        }),
    }
}

pub fn pairing_ne(mp: &MatchedPairData, m: usize, n: usize) -> Result<usize> {
    mp.check_m(m)?;
    mp.check_n(n)?;
    Ok(mp.ne(m, n))
}

pub fn pairing_nw(mp: &MatchedPairData, m: usize, n: usize) -> Result<usize> {
    mp.check_m(m)?;
    mp.check_n(n)?;
    Ok(mp.nw(m, n))
}

fn witness(parts: &[(&str, String)]) -> String {
    parts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Unit laws, bijectivity of the actions, and the four compatibility rules
/// `m^(np) = (mⁿ)^p`, `ᵐ(np) = ᵐn·^(mⁿ)p`, `^(lm)n = ˡ(ᵐn)`,
/// `(lm)ⁿ = l^(ᵐn)·mⁿ`.
pub fn verify_pair_axioms(mp: &MatchedPairData, cap: usize) -> Vec<Check> {
    let (gm, gn) = (mp.m_group(), mp.n_group());
    let (km, kn) = (mp.m_order(), mp.n_order());
    let rm = |x: usize| mp.render_m(x);
    let rn = |x: usize| mp.render_n(x);
    let mut out = Vec::new();

    let mut unit = CheckBuilder::new("unit_laws", cap);
    for n in 0..kn {
        unit.expect_eq(mp.left(0, n), n, rn, || format!("^1 n with n={}", rn(n)));
        unit.expect_eq(mp.right(0, n), 0, rm, || format!("1^n with n={}", rn(n)));
    }
    for m in 0..km {
        unit.expect_eq(mp.right(m, 0), m, rm, || format!("m^1 with m={}", rm(m)));
        unit.expect_eq(mp.left(m, 0), 0, rn, || format!("^m 1 with m={}", rm(m)));
    }
    out.push(unit.finish());

    let mut bij = CheckBuilder::new("actions_bijective", cap);
    for m in 0..km {
        let mut seen = vec![false; kn];
        for n in 0..kn {
            seen[mp.left(m, n)] = true;
        }
        let missing = seen.iter().filter(|&&s| !s).count();
        bij.expect_eq(
            missing,
            0,
            |k| format!("{k} missing"),
            || format!("n ↦ ^m n with m={}", rm(m)),
        );
    }
    for n in 0..kn {
        let mut seen = vec![false; km];
        for m in 0..km {
            seen[mp.right(m, n)] = true;
        }
        let missing = seen.iter().filter(|&&s| !s).count();
        bij.expect_eq(
            missing,
            0,
            |k| format!("{k} missing"),
            || format!("m ↦ m^n with n={}", rn(n)),
        );
    }
    out.push(bij.finish());

    let mut right_prod = CheckBuilder::new("right_action_of_product", cap);
    let mut left_prod = CheckBuilder::new("left_action_of_product", cap);
    for m in 0..km {
        for n in 0..kn {
            let (ln, rmn) = (mp.left(m, n), mp.right(m, n));
            for p in 0..kn {
                let np = gn.mul(n, p);
                let inputs = || witness(&[("m", rm(m)), ("n", rn(n)), ("p", rn(p))]);
                right_prod.expect_eq(mp.right(m, np), mp.right(rmn, p), rm, inputs);
                left_prod.expect_eq(mp.left(m, np), gn.mul(ln, mp.left(rmn, p)), rn, inputs);
            }
        }
    }
    out.push(right_prod.finish());
    out.push(left_prod.finish());

    let mut left_comp = CheckBuilder::new("left_action_compose", cap);
    let mut right_left = CheckBuilder::new("right_action_of_m_product", cap);
    for l in 0..km {
        for m in 0..km {
            let lm = gm.mul(l, m);
            for n in 0..kn {
                let ln = mp.left(m, n);
                let inputs = || witness(&[("l", rm(l)), ("m", rm(m)), ("n", rn(n))]);
                left_comp.expect_eq(mp.left(lm, n), mp.left(l, ln), rn, inputs);
                right_left.expect_eq(
                    mp.right(lm, n),
                    gm.mul(mp.right(l, ln), mp.right(m, n)),
                    rm,
                    inputs,
                );
            }
        }
    }
    out.push(left_comp.finish());
    out.push(right_left.finish());
    out
}

/// `(ᵐn)⁻¹ = ^(mⁿ)(n⁻¹)` and `(mⁿ)⁻¹ = (m⁻¹)^(ᵐn)`.
pub fn verify_inverse_identities(mp: &MatchedPairData, cap: usize) -> Vec<Check> {
    let (gm, gn) = (mp.m_group(), mp.n_group());
    let rm = |x: usize| mp.render_m(x);
    let rn = |x: usize| mp.render_n(x);
    let mut left_inv = CheckBuilder::new("inverse_of_left_action", cap);
    let mut right_inv = CheckBuilder::new("inverse_of_right_action", cap);
    for m in 0..mp.m_order() {
        for n in 0..mp.n_order() {
            let inputs = || witness(&[("m", rm(m)), ("n", rn(n))]);
            let (ln, rmn) = (mp.left(m, n), mp.right(m, n));
            left_inv.expect_eq(gn.inv(ln), mp.left(rmn, gn.inv(n)), rn, inputs);
            right_inv.expect_eq(gm.inv(rmn), mp.right(gm.inv(m), ln), rm, inputs);
        }
    }
    vec![left_inv.finish(), right_inv.finish()]
}

/// `(m, n)(l, p) = (m·(l ↗ n), (l ↖ n)·p)`, evaluated without validation.
pub fn bicross_mul(mp: &MatchedPairData, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    let ((m, n), (l, p)) = (a, b);
    (
        mp.m_group().mul(m, mp.ne(l, n)),
        mp.n_group().mul(mp.nw(l, n), p),
    )
}

/// The bicrossproduct group on `M × N`, index `m·|N| + n`; `(1, 1)` is 0.
pub fn bicrossproduct(mp: &MatchedPairData) -> Result<GroupTable> {
    let k = mp.m_order() * mp.n_order();
    let rows = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    let (m, n) = bicross_mul(mp, mp.unpack(x), mp.unpack(y));
                    mp.pack(m, n)
                })
                .collect()
        })
        .collect();
    GroupTable::from_table(rows, None).map_err(|e| match e {
        Error::NotAGroup(why) => Error::NotAGroup(format!("bicrossproduct: {why}")),
        other => other,
    })
}

/// Compares `mp` against the factorization it should come from: the defining
/// relation `m·n = ᵐn·mⁿ`, bijectivity and multiplicativity of
/// `φ(m, n) = m·n`, and `n·m = (m ↗ n)(m ↖ n)` in the ambient group.
pub fn verify_canonical_map(
    mp: &MatchedPairData,
    pf: &PairFactorization,
    cap: usize,
) -> Vec<Check> {
    let g = pf.group();
    let (me, ne) = (pf.m().elements(), pf.n().elements());
    let (km, kn) = (mp.m_order(), mp.n_order());
    if me.len() != km || ne.len() != kn {
        let mut c = CheckBuilder::new("canonical_map_shape", cap);
        c.expect_eq(
            (me.len(), ne.len()),
            (km, kn),
            |(a, b)| format!("{a}×{b}"),
            || "factor orders".into(),
        );
        return vec![c.finish()];
    }
    let rg = |x: usize| g.render(x);
    let rm = |x: usize| mp.render_m(x);
    let rn = |x: usize| mp.render_n(x);
    let phi = |m: usize, n: usize| g.mul(me[m], ne[n]);

    let mut defining = CheckBuilder::new("defining_relation", cap);
    let mut bijective = CheckBuilder::new("canonical_map_bijective", cap);
    let mut reversed = CheckBuilder::new("reversed_product_pairings", cap);
    let mut hit: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    for m in 0..km {
        for n in 0..kn {
            let inputs = || witness(&[("m", rm(m)), ("n", rn(n))]);
            let mn = phi(m, n);
            defining.expect_eq(mn, g.mul(ne[mp.left(m, n)], me[mp.right(m, n)]), rg, inputs);
            let clash = hit[mn];
            bijective.record(clash.is_none(), || Counterexample {
                inputs: inputs(),
                lhs: rg(mn),
                rhs: format!("also φ{:?}", clash.map(|(a, b)| (rm(a), rn(b))).unwrap()),
            });
            hit[mn] = Some((m, n));
            reversed.expect_eq(
                g.mul(ne[n], me[m]),
                phi(mp.ne(m, n), mp.nw(m, n)),
                rg,
                inputs,
            );
        }
    }

    let mut hom = CheckBuilder::new("canonical_map_homomorphism", cap);
    for m in 0..km {
        for n in 0..kn {
            for l in 0..km {
                for p in 0..kn {
                    let (a, b) = bicross_mul(mp, (m, n), (l, p));
                    hom.expect_eq(phi(a, b), g.mul(phi(m, n), phi(l, p)), rg, || {
                        witness(&[("m", rm(m)), ("n", rn(n)), ("l", rm(l)), ("p", rn(p))])
                    });
                }
            }
        }
    }
    vec![
        defining.finish(),
        bijective.finish(),
        hom.finish(),
        reversed.finish(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::build_pair_factorization;
    use crate::group::{standard_group, subgroup_generated, Family};
    use crate::perm::Perm;
    use crate::report::Status;

    struct S3Pair {
        pf: PairFactorization,
        mp: MatchedPairData,
    }

    impl S3Pair {
        fn new() -> Self {
            let g = Arc::new(standard_group(Family::Symmetric(3)).unwrap());
            let m = subgroup_generated(&g, &[el(&g, "(1 2 3)")]).unwrap();
            let n = subgroup_generated(&g, &[el(&g, "(1 2)")]).unwrap();
            let pf = build_pair_factorization(&g, m, n).unwrap();
            let mp = derive_matched_pair(&pf);
            S3Pair { pf, mp }
        }

        fn m(&self, s: &str) -> usize {
            let g = self.pf.group();
            self.pf.m().position(el(g, s)).unwrap()
        }

        fn n(&self, s: &str) -> usize {
            let g = self.pf.group();
            self.pf.n().position(el(g, s)).unwrap()
        }
    }

    fn el(g: &GroupTable, s: &str) -> usize {
        g.find_label(&Perm::parse(s, g.degree()).unwrap()).unwrap()
    }

    fn all_pass(checks: &[Check]) -> bool {
        checks.iter().all(|c| c.status == Status::Pass)
    }

    fn z2_z3_trivial() -> MatchedPairData {
        MatchedPairData::trivial(
            Arc::new(standard_group(Family::Cyclic(2)).unwrap()),
            Arc::new(standard_group(Family::Cyclic(3)).unwrap()),
        )
    }

    #[test]
    fn s3_actions() {
        let s = S3Pair::new();
        assert!(s.mp.is_left_trivial());
        let (r, t) = (s.m("(1 2 3)"), s.n("(1 2)"));
        assert_eq!(s.mp.right(r, t), s.m("(1 3 2)"));
        assert_eq!(s.mp.left(r, t), t);
    }

    #[test]
    fn s3_pairings() {
        let s = S3Pair::new();
        let (r, t) = (s.m("(1 2 3)"), s.n("(1 2)"));
        assert_eq!(pairing_ne(&s.mp, r, t).unwrap(), s.m("(1 3 2)"));
        assert_eq!(pairing_nw(&s.mp, r, t).unwrap(), t);
        assert!(pairing_ne(&s.mp, 3, 0).is_err());
        assert!(pairing_nw(&s.mp, 0, 2).is_err());
    }

    #[test]
    fn pairing_unit_coherence() {
        let s = S3Pair::new();
        for m in 0..3 {
            assert_eq!(s.mp.ne(m, 0), m);
            assert_eq!(s.mp.nw(m, 0), 0);
        }
        for n in 0..2 {
            assert_eq!(s.mp.nw(0, n), n);
            assert_eq!(s.mp.ne(0, n), 0);
        }
        let t = z2_z3_trivial();
        for m in 0..2 {
            for n in 0..3 {
                assert_eq!(t.ne(m, n), m);
                assert_eq!(t.nw(m, n), n);
            }
        }
    }

    #[test]
    fn s3_identities_pass() {
        let s = S3Pair::new();
        let checks = verify_pair_axioms(&s.mp, 10);
        assert!(all_pass(&checks), "{checks:#?}");
        let counts: Vec<u64> = checks.iter().map(|c| c.instances).collect();
        assert_eq!(counts, vec![10, 5, 12, 12, 18, 18]);
        assert!(all_pass(&verify_inverse_identities(&s.mp, 10)));
        let canon = verify_canonical_map(&s.mp, &s.pf, 10);
        assert!(all_pass(&canon), "{canon:#?}");
        assert_eq!(
            canon
                .iter()
                .find(|c| c.id == "reversed_product_pairings")
                .unwrap()
                .instances,
            6
        );
    }

    #[test]
    fn trivial_pair_passes() {
        let t = z2_z3_trivial();
        assert!(all_pass(&verify_pair_axioms(&t, 10)));
        assert!(all_pass(&verify_inverse_identities(&t, 10)));
        let g = bicrossproduct(&t).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert!((0..6).any(|x| g.element_order(x) == 6));
    }

    #[test]
    fn s3_bicrossproduct() {
        let s = S3Pair::new();
        let b = bicrossproduct(&s.mp).unwrap();
        assert_eq!(b.order(), 6);
        let g = s.pf.group();
        let phi: Vec<usize> = (0..6)
            .map(|x| {
                let (m, n) = s.mp.unpack(x);
                g.mul(s.pf.m().elements()[m], s.pf.n().elements()[n])
            })
            .collect();
        assert!(b.is_homomorphism(g, &phi));
        let (r, r2, t) = (s.m("(1 2 3)"), s.m("(1 3 2)"), s.n("(1 2)"));
        assert_eq!(bicross_mul(&s.mp, (r, 0), (r2, t)), (0, t));
    }

    #[test]
    fn swapped_left_entries_fail() {
        let s = S3Pair::new();
        let mut bad = s.mp.clone();
        let (a, b) = (bad.left(1, 0), bad.left(1, 1));
        bad.set_left(1, 0, b);
        bad.set_left(1, 1, a);
        let checks = verify_pair_axioms(&bad, 10);
        let failed: Vec<&Check> = checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|c| !c.counterexamples.is_empty()));
        assert!(!all_pass(&verify_inverse_identities(&bad, 10)));
        assert!(!all_pass(&verify_canonical_map(&bad, &s.pf, 10)));
        assert!(matches!(bicrossproduct(&bad), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn from_tables_validates_shape() {
        let m = Arc::new(standard_group(Family::Cyclic(2)).unwrap());
        let n = Arc::new(standard_group(Family::Cyclic(2)).unwrap());
        let ok = MatchedPairData::from_tables(
            Arc::clone(&m),
            Arc::clone(&n),
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 0], vec![1, 1]],
        )
        .unwrap();
        assert!(ok.is_left_trivial() && ok.is_right_trivial());
        assert!(MatchedPairData::from_tables(
            Arc::clone(&m),
            Arc::clone(&n),
            vec![vec![0, 2], vec![0, 1]],
            vec![vec![0, 0], vec![1, 1]],
        )
        .is_err());
        assert!(MatchedPairData::from_tables(m, n, vec![vec![0, 1]], vec![vec![0, 0]]).is_err());
    }
}
