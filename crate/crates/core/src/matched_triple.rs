//! Matched triples from exact factorizations `G = MNP`.
//!
//! Each of the ordered pairs `(M, N)`, `(M, P)`, `(N, P)` is a matched pair
//! derived inside its product subgroup, giving six actions in all. Every
//! action or pairing that occurs in a composite expression is read from the
//! one pair that makes it type-correct:
//!
//! | expression          | table                 |
//! |---------------------|-----------------------|
//! | `ᵐn`, `mⁿ`          | `(M, N)` left / right |
//! | `ᵐp`, `mᵖ`          | `(M, P)` left / right |
//! | `ⁿp`, `nᵖ`          | `(N, P)` left / right |
//! | `μ ↗ p`, `μ ↖ p`    | `(M, P)` pairings     |
//! | `(μ ↗ p) ↗ n`, `↖ n`| `(M, N)` pairings     |
//! | `ν ↗ (μ ↖ p)`, `↖`  | `(N, P)` pairings     |
//!
//! The candidate product on triples is
//!
//! ```text
//! (m, n, p)(μ, ν, π) = (m·((μ↗p)↗n), ((μ↗p)↖n)·(ν↗(μ↖p)), (ν↖(μ↖p))·π)
//! ```
//!
//! obtained by moving `p` past `μ`, then `n` past `μ↗p`, then `μ↖p` past `ν`.
//! The variant whose third slot reads `(ν↗(μ↖p))·π` multiplies an `N`
//! element by a `P` element; it is kept only as a reported diagnostic.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factorization::TripleFactorization;
use crate::group::GroupTable;
use crate::matched_pair::{derive_matched_pair, Embedding, MatchedPairData};
use crate::report::{Check, CheckBuilder, Counterexample};

/// Which action or pairing is read from which pair, as printed in reports.
pub const PAIRING_SOURCES: &str = "^m n, m^n, (mu^p)^n, (mu^p)~n: (M,N); \
^m p, m^p, mu^p, mu~p: (M,P); ^n p, n^p, nu^(mu~p), nu~(mu~p): (N,P)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleElement {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl TripleElement {
    pub const IDENTITY: TripleElement = TripleElement { m: 0, n: 0, p: 0 };

    pub fn new(m: usize, n: usize, p: usize) -> Self {
        TripleElement { m, n, p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSlot {
    MN,
    MP,
    NP,
}

#[derive(Debug, Clone)]
pub struct MatchedTripleData {
    origin: Arc<TripleFactorization>,
    mn: MatchedPairData,
    mp: MatchedPairData,
    np: MatchedPairData,
}

fn ambient_embedding(tf: &TripleFactorization, slot: PairSlot) -> Embedding {
    let (a, b) = match slot {
        PairSlot::MN => (tf.m(), tf.n()),
        PairSlot::MP => (tf.m(), tf.p()),
        PairSlot::NP => (tf.n(), tf.p()),
    };
    Embedding {
        ambient: Arc::clone(tf.group()),
        m: a.elements().to_vec(),
        n: b.elements().to_vec(),
    }
}

pub fn derive_matched_triple(tf: &Arc<TripleFactorization>) -> Result<MatchedTripleData> {
    let pairs = tf.sub_pairs().ok_or_else(|| {
        Error::Unsupported(
            "MN, MP or NP is not a subgroup, so the six actions are undefined".into(),
        )
    })?;
    let derive = |pf, slot| derive_matched_pair(pf).with_origin(ambient_embedding(tf, slot));
    let mt = MatchedTripleData {
        mn: derive(&pairs.mn, PairSlot::MN),
        mp: derive(&pairs.mp, PairSlot::MP),
        np: derive(&pairs.np, PairSlot::NP),
        origin: Arc::clone(tf),
    };
    debug_assert!(**mt.mn.m_group() == **mt.mp.m_group());
    debug_assert!(**mt.mn.n_group() == **mt.np.m_group());
    debug_assert!(**mt.mp.n_group() == **mt.np.n_group());
    Ok(mt)
}

impl MatchedTripleData {
    pub fn origin(&self) -> &Arc<TripleFactorization> {
        &self.origin
    }

    pub fn pair(&self, slot: PairSlot) -> &MatchedPairData {
        match slot {
            PairSlot::MN => &self.mn,
            PairSlot::MP => &self.mp,
            PairSlot::NP => &self.np,
        }
    }

    pub fn pair_mut(&mut self, slot: PairSlot) -> &mut MatchedPairData {
        match slot {
            PairSlot::MN => &mut self.mn,
            PairSlot::MP => &mut self.mp,
            PairSlot::NP => &mut self.np,
        }
    }

    pub fn m_group(&self) -> &GroupTable {
        self.mn.m_group()
    }

    pub fn n_group(&self) -> &GroupTable {
        self.mn.n_group()
    }

    pub fn p_group(&self) -> &GroupTable {
        self.mp.n_group()
    }

    pub fn order(&self) -> usize {
        self.origin.group().order()
    }

    pub fn all_actions_trivial(&self) -> bool {
        [&self.mn, &self.mp, &self.np]
            .iter()
            .all(|x| x.is_left_trivial() && x.is_right_trivial())
    }

    /// Index of a triple in `0..|G|`.
    pub fn pack(&self, t: TripleElement) -> usize {
        pack(&self.origin, t)
    }

    pub fn unpack(&self, x: usize) -> TripleElement {
        unpack(&self.origin, x)
    }

    /// Ambient element `m·n·p`.
    pub fn embed(&self, t: TripleElement) -> usize {
        embed(&self.origin, t)
    }

    pub fn render(&self, t: TripleElement) -> String {
        render(&self.origin, t)
    }
}

fn pack(tf: &TripleFactorization, t: TripleElement) -> usize {
    (t.m * tf.n().len() + t.n) * tf.p().len() + t.p
}

fn unpack(tf: &TripleFactorization, x: usize) -> TripleElement {
    let (kn, kp) = (tf.n().len(), tf.p().len());
    TripleElement::new(x / (kn * kp), (x / kp) % kn, x % kp)
}

fn render(tf: &TripleFactorization, t: TripleElement) -> String {
    let g = tf.group();
    format!(
        "({}, {}, {})",
        g.render(tf.m().elements()[t.m]),
        g.render(tf.n().elements()[t.n]),
        g.render(tf.p().elements()[t.p])
    )
}

fn embed(tf: &TripleFactorization, t: TripleElement) -> usize {
    let g = tf.group();
    let mn = g.mul(tf.m().elements()[t.m], tf.n().elements()[t.n]);
    g.mul(mn, tf.p().elements()[t.p])
}

/// Standalone indices of the unique `(m, n, p)` with `m·n·p = g`.
fn factor(tf: &TripleFactorization, g: usize) -> TripleElement {
    let [a, b, c] = tf.decomp3(g);
    TripleElement::new(
        tf.m().position(a).expect("M factor"),
        tf.n().position(b).expect("N factor"),
        tf.p().position(c).expect("P factor"),
    )
}

/// Every `(m, n, p)`: the three faces of the cube, plus face B against the
/// ambient group. Writing `g = m·n·p` uniquely as `p′·n′·m′`:
///
/// * A: `m′ = m^(np) = (m^(ⁿp))^(nᵖ)`
/// * B: `^(m^(ⁿp))(nᵖ) = (ᵐn)^(^(mⁿ)p)`
/// * C: `p′ = ^(mn)p = ^(ᵐn)(^(mⁿ)p)`
///
/// `m^(np)` and `^(mn)p` are read from the ambient decomposition of `g⁻¹`.
pub fn verify_cube_identities(mt: &MatchedTripleData, cap: usize) -> Vec<Check> {
    let tf = &mt.origin;
    let g = tf.group();
    let (mn, mp, np) = (&mt.mn, &mt.mp, &mt.np);
    let (gm, gn, gp) = (mt.m_group(), mt.n_group(), mt.p_group());
    let rm = |x: usize| g.render(tf.m().elements()[x]);
    let rn = |x: usize| g.render(tf.n().elements()[x]);
    let rp = |x: usize| g.render(tf.p().elements()[x]);

    let mut face_a = CheckBuilder::new("cube_face_a", cap);
    let mut face_b = CheckBuilder::new("cube_face_b", cap);
    let mut face_b_ambient = CheckBuilder::new("cube_face_b_ambient", cap);
    let mut face_c = CheckBuilder::new("cube_face_c", cap);
    for m in 0..gm.order() {
        for n in 0..gn.order() {
            for p in 0..gp.order() {
                let t = TripleElement::new(m, n, p);
                let inputs = || mt.render(t);
                // g⁻¹ = a·b·c  ⇒  g = c⁻¹·b⁻¹·a⁻¹ with c⁻¹ ∈ P, b⁻¹ ∈ N, a⁻¹ ∈ M
                let rev = factor(tf, g.inv(mt.embed(t)));
                let (m_amb, n_amb, p_amb) = (gm.inv(rev.m), gn.inv(rev.n), gp.inv(rev.p));

                let n_on_p = np.left(n, p);
                let n_by_p = np.right(n, p);
                let m_by_np = mp.right(m, n_on_p);
                let a_rhs = mn.right(m_by_np, n_by_p);
                face_a.expect_eq(m_amb, a_rhs, rm, inputs);

                let m_on_n = mn.left(m, n);
                let m_by_n = mn.right(m, n);
                let mn_on_p = mp.left(m_by_n, p);
                let b_lhs = mn.left(m_by_np, n_by_p);
                let b_rhs = np.right(m_on_n, mn_on_p);
                face_b.expect_eq(b_lhs, b_rhs, rn, inputs);
                face_b_ambient.expect_eq(n_amb, b_lhs, rn, inputs);

                let c_rhs = np.left(m_on_n, mn_on_p);
                face_c.expect_eq(p_amb, c_rhs, rp, inputs);
            }
        }
    }
    vec![
        face_a.finish(),
        face_b.finish(),
        face_b_ambient.finish(),
        face_c.finish(),
    ]
}

/// Third slot as literally displayed: an `N` element times a `P` element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralThird {
    /// The `N` factor is the identity, so the product is the `P` element.
    Typed(usize),
    /// `n_factor · p_factor` with a non-identity `n_factor`.
    IllTyped { n_factor: usize, p_factor: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaperProduct {
    pub value: TripleElement,
    pub literal_third: LiteralThird,
}

pub fn triple_compose_paper(
    mt: &MatchedTripleData,
    t1: TripleElement,
    t2: TripleElement,
) -> PaperProduct {
    let TripleElement { m, n, p } = t1;
    let TripleElement {
        m: mu,
        n: nu,
        p: pi,
    } = t2;
    let mu_ne_p = mt.mp.ne(mu, p);
    let mu_nw_p = mt.mp.nw(mu, p);
    let m_slot = mt.mn.ne(mu_ne_p, n);
    let n_slot = mt.mn.nw(mu_ne_p, n);
    let nu_ne = mt.np.ne(nu, mu_nw_p);
    let nu_nw = mt.np.nw(nu, mu_nw_p);
    let value = TripleElement::new(
        mt.m_group().mul(m, m_slot),
        mt.n_group().mul(n_slot, nu_ne),
        mt.p_group().mul(nu_nw, pi),
    );
    let literal_third = if nu_ne == 0 {
        LiteralThird::Typed(pi)
    } else {
        LiteralThird::IllTyped {
            n_factor: nu_ne,
            p_factor: pi,
        }
    };
    PaperProduct {
        value,
        literal_third,
    }
}

/// Multiply in the ambient group and factor again.
pub fn triple_compose_oracle(
    tf: &TripleFactorization,
    t1: TripleElement,
    t2: TripleElement,
) -> TripleElement {
    let g = tf.group();
    factor(tf, g.mul(embed(tf, t1), embed(tf, t2)))
}

type Table = Vec<Vec<usize>>;

fn build_table<F>(k: usize, f: F) -> Table
where
    F: Fn(usize, usize) -> usize + Sync,
{
    (0..k)
        .into_par_iter()
        .map(|x| (0..k).map(|y| f(x, y)).collect())
        .collect()
}

fn associativity(id: &str, table: &Table, cap: usize, render: &dyn Fn(usize) -> String) -> Check {
    let k = table.len();
    let failures: Vec<(usize, usize, usize)> = (0..k)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut bad = Vec::new();
            for y in 0..k {
                let xy = table[x][y];
                for z in 0..k {
                    if table[xy][z] != table[x][table[y][z]] {
                        bad.push((x, y, z));
                    }
                }
            }
            bad
        })
        .collect();
    let mut check = CheckBuilder::new(id, cap);
    let mut bad = failures.iter().peekable();
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let fails = bad.peek() == Some(&&(x, y, z));
                if fails {
                    bad.next();
                }
                check.record(!fails, || Counterexample {
                    inputs: format!("{}·{}·{}", render(x), render(y), render(z)),
                    lhs: render(table[table[x][y]][z]),
                    rhs: render(table[x][table[y][z]]),
                });
            }
        }
    }
    check.finish()
}

/// Two-sided identities found by scanning the table.
fn identities(table: &Table) -> Vec<usize> {
    let k = table.len();
    (0..k)
        .filter(|&e| (0..k).all(|x| table[e][x] == x && table[x][e] == x))
        .collect()
}

fn identity_and_inverses(
    id: &str,
    table: &Table,
    cap: usize,
    render: &dyn Fn(usize) -> String,
) -> Check {
    let k = table.len();
    let mut check = CheckBuilder::new(id, cap);
    let found = identities(table);
    let expected = 0;
    check.record(found == [expected], || Counterexample {
        inputs: "two-sided identities".into(),
        lhs: format!("{:?}", found.iter().map(|&e| render(e)).collect::<Vec<_>>()),
        rhs: format!("[{}]", render(expected)),
    });
    if let [e] = found[..] {
        for x in 0..k {
            let inverses: Vec<usize> = (0..k)
                .filter(|&y| table[x][y] == e && table[y][x] == e)
                .collect();
            check.record(inverses.len() == 1, || Counterexample {
                inputs: format!("two-sided inverses of {}", render(x)),
                lhs: inverses.len().to_string(),
                rhs: "1".into(),
            });
        }
        check.note(format!("identity {}", render(e)));
    }
    check.finish()
}

fn canonical_isomorphism(id: &str, tf: &TripleFactorization, table: &Table, cap: usize) -> Check {
    let g = tf.group();
    let k = table.len();
    let phi: Vec<usize> = (0..k).map(|x| embed(tf, unpack(tf, x))).collect();
    let show = |x: usize| render(tf, unpack(tf, x));
    let mut check = CheckBuilder::new(id, cap);
    let mut hit = vec![false; g.order()];
    for (x, &gx) in phi.iter().enumerate() {
        check.record(!hit[gx], || Counterexample {
            inputs: format!("φ{}", show(x)),
            lhs: g.render(gx),
            rhs: "an element not hit before".into(),
        });
        hit[gx] = true;
    }
    for x in 0..k {
        for y in 0..k {
            check.expect_eq(
                phi[table[x][y]],
                g.mul(phi[x], phi[y]),
                |v| g.render(v),
                || format!("φ({}·{})", show(x), show(y)),
            );
        }
    }
    check.finish()
}

fn oracle_table(tf: &TripleFactorization) -> Table {
    build_table(tf.group().order(), |x, y| {
        pack(tf, triple_compose_oracle(tf, unpack(tf, x), unpack(tf, y)))
    })
}

/// Group axioms of the oracle composition and the isomorphism onto `G`.
/// Needs no action data, so it also runs on relaxed triples.
pub fn verify_oracle_group(tf: &TripleFactorization, cap: usize) -> Vec<Check> {
    oracle_checks(tf, &oracle_table(tf), cap)
}

fn oracle_checks(tf: &TripleFactorization, oracle: &Table, cap: usize) -> Vec<Check> {
    let show = |x: usize| render(tf, unpack(tf, x));
    vec![
        associativity("oracle_associativity", oracle, cap, &show),
        identity_and_inverses("oracle_identity_inverses", oracle, cap, &show),
        canonical_isomorphism("oracle_canonical_isomorphism", tf, oracle, cap),
    ]
}

/// Builds the oracle and formula tables on `M × N × P` and checks both for
/// the group axioms, against each other, and against `G` through
/// `(m, n, p) ↦ m·n·p`.
pub fn verify_triple_group(mt: &MatchedTripleData, cap: usize) -> Vec<Check> {
    let k = mt.order();
    let tf = &mt.origin;
    let render = |x: usize| mt.render(mt.unpack(x));

    let oracle = oracle_table(tf);
    let products: Vec<Vec<PaperProduct>> = (0..k)
        .into_par_iter()
        .map(|x| {
            (0..k)
                .map(|y| triple_compose_paper(mt, mt.unpack(x), mt.unpack(y)))
                .collect()
        })
        .collect();
    let formula: Table = products
        .iter()
        .map(|row| row.iter().map(|pp| mt.pack(pp.value)).collect())
        .collect();

    let mut out = oracle_checks(tf, &oracle, cap);
    out.extend([
        identity_and_inverses("formula_identity_inverses", &formula, cap, &render),
        associativity("formula_associativity", &formula, cap, &render),
    ]);

    let mut cells = CheckBuilder::new("formula_matches_oracle", cap);
    for x in 0..k {
        for y in 0..k {
            cells.expect_eq(formula[x][y], oracle[x][y], render, || {
                format!("{}·{}", render(x), render(y))
            });
        }
    }
    cells.note(format!("{k}x{k} cells"));
    out.push(cells.finish());
    out.push(canonical_isomorphism(
        "formula_canonical_isomorphism",
        tf,
        &formula,
        cap,
    ));
    out.push(literal_third_slot(mt, &products, &oracle));
    out
}

/// The literally displayed third slot is only a `P` element where its `N`
/// factor is the identity. It is a finding about the displayed formula rather
/// than an identity this crate relies on, so it never fails a report: it
/// passes when it agrees with the oracle on every cell and is otherwise
/// skipped with the counts and a first disagreeing cell in the note.
fn literal_third_slot(
    mt: &MatchedTripleData,
    products: &[Vec<PaperProduct>],
    oracle: &Table,
) -> Check {
    const ID: &str = "literal_third_slot";
    let k = products.len();
    let (mut typed, mut agree) = (0usize, 0usize);
    let mut first_miss = None;
    for x in 0..k {
        for y in 0..k {
            if let LiteralThird::Typed(p) = products[x][y].literal_third {
                typed += 1;
                let want = mt.unpack(oracle[x][y]).p;
                if want == p {
                    agree += 1;
                } else if first_miss.is_none() {
                    first_miss = Some((x, y, p, want));
                }
            }
        }
    }
    let cells = k * k;
    let summary = format!(
        "(nu^(mu~p))*pi multiplies an N element by a P element; \
         typable in {typed} of {cells} cells, agreeing with the oracle third slot in {agree}"
    );
    let note = if typed < cells {
        format!("ill-typed: {summary}")
    } else if agree < cells {
        let (x, y, p, want) = first_miss.expect("a disagreeing cell");
        let tf = &mt.origin;
        let show = |v: usize| mt.render(mt.unpack(v));
        let show_p = |v: usize| tf.group().render(tf.p().elements()[v]);
        format!(
            "disagrees: {summary}; e.g. {}·{} gives {} instead of {}",
            show(x),
            show(y),
            show_p(p),
            show_p(want)
        )
    } else {
        summary
    };
    let mut c = if typed == cells && agree == cells {
        let mut c = CheckBuilder::new(ID, 1);
        for _ in 0..cells {
            c.record(true, || unreachable!());
        }
        c.finish()
    } else {
        Check::skipped(ID, "")
    };
    c.instances = cells as u64;
    c.note = Some(note);
    c
}
