//! Squares of the double groupoid attached to a matched pair.
//!
//! A square is stored as its left edge `m` and bottom edge `n`; the top edge
//! `ᵐn` and right edge `mⁿ` are derived, so the boundary always reads
//! `m·n = ᵐn·mⁿ`.
//!
//! ```text
//!        ᵐn
//!     . ----> .
//!   m |       | mⁿ
//!     v       v
//!     . ----> .
//!         n
//! ```
//!
//! Direction 1 (`compose_v`) stacks squares vertically along `N` edges;
//! direction 2 (`compose_h`) places them side by side along `M` edges.

use crate::error::{Error, Result};
use crate::matched_pair::{bicross_mul, MatchedPairData};
use crate::report::{Check, CheckBuilder, Counterexample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub m: usize,
    pub n: usize,
}

impl Square {
    pub fn new(m: usize, n: usize) -> Self {
        Square { m, n }
    }

    pub fn left(&self) -> usize {
        self.m
    }

    pub fn bottom(&self) -> usize {
        self.n
    }

    pub fn top(&self, mp: &MatchedPairData) -> usize {
        mp.left(self.m, self.n)
    }

    pub fn right(&self, mp: &MatchedPairData) -> usize {
        mp.right(self.m, self.n)
    }

    fn render(&self, mp: &MatchedPairData) -> String {
        format!("[{}, {}]", mp.render_m(self.m), mp.render_n(self.n))
    }
}

/// `(m, n) ∘₂ (mⁿ, p) = (m, np)`: `s2` sits to the right of `s1`.
pub fn compose_h(mp: &MatchedPairData, s1: Square, s2: Square) -> Result<Square> {
    if s2.m != s1.right(mp) {
        return Err(Error::NotComposable(format!(
            "right edge {} of {} differs from left edge {} of {}",
            mp.render_m(s1.right(mp)),
            s1.render(mp),
            mp.render_m(s2.m),
            s2.render(mp)
        )));
    }
    Ok(Square::new(s1.m, mp.n_group().mul(s1.n, s2.n)))
}

/// `(l, ᵐn) ∘₁ (m, n) = (lm, n)`: `s1` sits on top of `s2`.
pub fn compose_v(mp: &MatchedPairData, s1: Square, s2: Square) -> Result<Square> {
    if s1.n != s2.top(mp) {
        return Err(Error::NotComposable(format!(
            "bottom edge {} of {} differs from top edge {} of {}",
            mp.render_n(s1.n),
            s1.render(mp),
            mp.render_n(s2.top(mp)),
            s2.render(mp)
        )));
    }
    Ok(Square::new(mp.m_group().mul(s1.m, s2.m), s2.n))
}

/// Two adjacent edges of a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSpec {
    LeftBottom { left: usize, bottom: usize },
    LeftTop { left: usize, top: usize },
    BottomRight { bottom: usize, right: usize },
    TopRight { top: usize, right: usize },
}

impl EdgeSpec {
    pub fn of(mp: &MatchedPairData, s: Square) -> [EdgeSpec; 4] {
        let (top, right) = (s.top(mp), s.right(mp));
        [
            EdgeSpec::LeftBottom {
                left: s.m,
                bottom: s.n,
            },
            EdgeSpec::LeftTop { left: s.m, top },
            EdgeSpec::BottomRight { bottom: s.n, right },
            EdgeSpec::TopRight { top, right },
        ]
    }

    fn matches(&self, mp: &MatchedPairData, s: Square) -> bool {
        match *self {
            EdgeSpec::LeftBottom { left, bottom } => s.m == left && s.n == bottom,
            EdgeSpec::LeftTop { left, top } => s.m == left && s.top(mp) == top,
            EdgeSpec::BottomRight { bottom, right } => s.n == bottom && s.right(mp) == right,
            EdgeSpec::TopRight { top, right } => s.top(mp) == top && s.right(mp) == right,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            EdgeSpec::LeftBottom { .. } => "left+bottom",
            EdgeSpec::LeftTop { .. } => "left+top",
            EdgeSpec::BottomRight { .. } => "bottom+right",
            EdgeSpec::TopRight { .. } => "top+right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillMode {
    /// Solve through the action bijections.
    #[default]
    Fast,
    /// Scan every square and insist on exactly one match.
    Checked,
}

/// The unique square with the given adjacent edges.
pub fn fill_square(mp: &MatchedPairData, spec: EdgeSpec, mode: FillMode) -> Result<Square> {
    let (km, kn) = (mp.m_order(), mp.n_order());
    match spec {
        EdgeSpec::LeftBottom { left, bottom } | EdgeSpec::LeftTop { left, top: bottom } => {
            mp.m_group().check_index(left)?;
            mp.n_group().check_index(bottom)?;
        }
        EdgeSpec::BottomRight { bottom, right } | EdgeSpec::TopRight { top: bottom, right } => {
            mp.m_group().check_index(right)?;
            mp.n_group().check_index(bottom)?;
        }
    }
    if mode == FillMode::Checked {
        let hits: Vec<Square> = (0..km)
            .flat_map(|m| (0..kn).map(move |n| Square::new(m, n)))
            .filter(|&s| spec.matches(mp, s))
            .collect();
        return match hits.as_slice() {
            [s] => Ok(*s),
            [] => Err(Error::Filler(format!("no square fills {}", spec.name()))),
            many => Err(Error::Filler(format!(
                "{} squares fill {}",
                many.len(),
                spec.name()
            ))),
        };
    }
    let solve_top = |m: usize, top: usize| (0..kn).find(|&n| mp.left(m, n) == top);
    let found = match spec {
        EdgeSpec::LeftBottom { left, bottom } => Some(Square::new(left, bottom)),
        EdgeSpec::LeftTop { left, top } => solve_top(left, top).map(|n| Square::new(left, n)),
        EdgeSpec::BottomRight { bottom, right } => (0..km)
            .find(|&m| mp.right(m, bottom) == right)
            .map(|m| Square::new(m, bottom)),
        EdgeSpec::TopRight { top, right } => {
            // (mⁿ)⁻¹ = (m⁻¹)^(ᵐn): m⁻¹ is the element sent to right⁻¹ by top
            let gm = mp.m_group();
            (0..km)
                .find(|&x| mp.right(x, top) == gm.inv(right))
                .map(|x| gm.inv(x))
                .and_then(|m| solve_top(m, top).map(|n| Square::new(m, n)))
        }
    };
    match found {
        Some(s) if spec.matches(mp, s) => Ok(s),
        _ => Err(Error::Filler(format!("no square fills {}", spec.name()))),
    }
}

/// `(m, n)·(l, p)` through the filler diagram: the square with top `n` and
/// right `l` rewrites `n·l` as `m′·n′`, giving `(m·m′, n′·p)`.
pub fn derived_composition(
    mp: &MatchedPairData,
    a: (usize, usize),
    b: (usize, usize),
    mode: FillMode,
) -> Result<(usize, usize)> {
    let ((m, n), (l, p)) = (a, b);
    mp.m_group().check_index(m)?;
    mp.n_group().check_index(p)?;
    let s = fill_square(mp, EdgeSpec::TopRight { top: n, right: l }, mode)?;
    Ok((mp.m_group().mul(m, s.m), mp.n_group().mul(s.n, p)))
}

/// Every composable 2×2 grid
///
/// ```text
///   x y
///   z w
/// ```
///
/// with `z = (m, n)`, `w = (mⁿ, p)`, `x = (l, ᵐn)` and `y` forced, checked for
/// `(x ∘₁ z) ∘₂ (y ∘₁ w) = (x ∘₂ y) ∘₁ (z ∘₂ w)`.
pub fn verify_interchange(mp: &MatchedPairData, cap: usize) -> Check {
    let mut check = CheckBuilder::new("interchange_law", cap);
    let (km, kn) = (mp.m_order(), mp.n_order());
    for l in 0..km {
        for m in 0..km {
            for n in 0..kn {
                for p in 0..kn {
                    let z = Square::new(m, n);
                    let w = Square::new(z.right(mp), p);
                    let x = Square::new(l, z.top(mp));
                    let y = Square::new(x.right(mp), w.top(mp));
                    let columns = compose_v(mp, x, z)
                        .and_then(|xz| compose_v(mp, y, w).and_then(|yw| compose_h(mp, xz, yw)));
                    let rows = compose_h(mp, x, y)
                        .and_then(|xy| compose_h(mp, z, w).and_then(|zw| compose_v(mp, xy, zw)));
                    let ok = matches!((&columns, &rows), (Ok(a), Ok(b)) if a == b);
                    check.record(ok, || Counterexample {
                        inputs: format!(
                            "x={}, y={}, z={}, w={}",
                            x.render(mp),
                            y.render(mp),
                            z.render(mp),
                            w.render(mp)
                        ),
                        lhs: outcome(mp, &columns),
                        rhs: outcome(mp, &rows),
                    });
                }
            }
        }
    }
    check.note(format!("{} composable grids", km * km * kn * kn));
    check.finish()
}

fn outcome(mp: &MatchedPairData, r: &Result<Square>) -> String {
    match r {
        Ok(s) => s.render(mp),
        Err(e) => e.to_string(),
    }
}

/// Associativity, identities and inverses for both compositions.
pub fn verify_groupoid_laws(mp: &MatchedPairData, cap: usize) -> Vec<Check> {
    let (gm, gn) = (mp.m_group(), mp.n_group());
    let (km, kn) = (mp.m_order(), mp.n_order());
    let squares: Vec<Square> = (0..km)
        .flat_map(|m| (0..kn).map(move |n| Square::new(m, n)))
        .collect();
    let render = |r: &Result<Square>| outcome(mp, r);

    let mut h_assoc = CheckBuilder::new("horizontal_associativity", cap);
    for &s in &squares {
        for q in 0..kn {
            let t = Square::new(s.right(mp), q);
            for r in 0..kn {
                let u = Square::new(t.right(mp), r);
                let a = compose_h(mp, s, t).and_then(|st| compose_h(mp, st, u));
                let b = compose_h(mp, t, u).and_then(|tu| compose_h(mp, s, tu));
                let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
                h_assoc.record(ok, || Counterexample {
                    inputs: format!("{} ∘₂ {} ∘₂ {}", s.render(mp), t.render(mp), u.render(mp)),
                    lhs: render(&a),
                    rhs: render(&b),
                });
            }
        }
    }

    let mut v_assoc = CheckBuilder::new("vertical_associativity", cap);
    for &s in &squares {
        for l in 0..km {
            let t = Square::new(l, s.top(mp));
            for k in 0..km {
                let u = Square::new(k, t.top(mp));
                let a = compose_v(mp, u, t).and_then(|ut| compose_v(mp, ut, s));
                let b = compose_v(mp, t, s).and_then(|ts| compose_v(mp, u, ts));
                let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
                v_assoc.record(ok, || Counterexample {
                    inputs: format!("{} ∘₁ {} ∘₁ {}", u.render(mp), t.render(mp), s.render(mp)),
                    lhs: render(&a),
                    rhs: render(&b),
                });
            }
        }
    }

    let mut h_units = CheckBuilder::new("horizontal_identities_inverses", cap);
    let mut v_units = CheckBuilder::new("vertical_identities_inverses", cap);
    for &s in &squares {
        let (top, right) = (s.top(mp), s.right(mp));
        let expect = |check: &mut CheckBuilder, what: &str, got: Result<Square>, want: Square| {
            let ok = matches!(&got, Ok(x) if *x == want);
            check.record(ok, || Counterexample {
                inputs: format!("{what} for {}", s.render(mp)),
                lhs: render(&got),
                rhs: want.render(mp),
            });
        };
        expect(
            &mut h_units,
            "left identity",
            compose_h(mp, Square::new(s.m, 0), s),
            s,
        );
        expect(
            &mut h_units,
            "right identity",
            compose_h(mp, s, Square::new(right, 0)),
            s,
        );
        let h_inv = Square::new(right, gn.inv(s.n));
        expect(
            &mut h_units,
            "right inverse",
            compose_h(mp, s, h_inv),
            Square::new(s.m, 0),
        );
        expect(
            &mut h_units,
            "left inverse",
            compose_h(mp, h_inv, s),
            Square::new(right, 0),
        );

        expect(
            &mut v_units,
            "upper identity",
            compose_v(mp, Square::new(0, top), s),
            s,
        );
        expect(
            &mut v_units,
            "lower identity",
            compose_v(mp, s, Square::new(0, s.n)),
            s,
        );
        let v_inv = Square::new(gm.inv(s.m), top);
        expect(
            &mut v_units,
            "upper inverse",
            compose_v(mp, v_inv, s),
            Square::new(0, s.n),
        );
        expect(
            &mut v_units,
            "lower inverse",
            compose_v(mp, s, v_inv),
            Square::new(0, top),
        );
    }

    vec![
        h_assoc.finish(),
        v_assoc.finish(),
        h_units.finish(),
        v_units.finish(),
    ]
}

/// Queries every square by each of its four adjacent-edge pairs in checked
/// mode and expects that square back.
pub fn verify_unique_fillers(mp: &MatchedPairData, cap: usize) -> Check {
    let mut check = CheckBuilder::new("unique_filler", cap);
    for m in 0..mp.m_order() {
        for n in 0..mp.n_order() {
            let s = Square::new(m, n);
            for spec in EdgeSpec::of(mp, s) {
                let got = fill_square(mp, spec, FillMode::Checked);
                let ok = matches!(&got, Ok(x) if *x == s);
                check.record(ok, || Counterexample {
                    inputs: format!("{} of {}", spec.name(), s.render(mp)),
                    lhs: outcome(mp, &got),
                    rhs: s.render(mp),
                });
            }
        }
    }
    check.finish()
}

/// The filler-diagram product against the bicrossproduct formula on every
/// pair of elements.
pub fn verify_derived_composition(mp: &MatchedPairData, cap: usize) -> Check {
    let mut check = CheckBuilder::new("derived_composition_matches_bicrossproduct", cap);
    let k = mp.m_order() * mp.n_order();
    let render = |(m, n): (usize, usize)| format!("({}, {})", mp.render_m(m), mp.render_n(n));
    for x in 0..k {
        for y in 0..k {
            let (a, b) = (mp.unpack(x), mp.unpack(y));
            let formula = bicross_mul(mp, a, b);
            let got = derived_composition(mp, a, b, FillMode::Fast);
            let ok = matches!(&got, Ok(v) if *v == formula);
            check.record(ok, || Counterexample {
                inputs: format!("{}·{}", render(a), render(b)),
                lhs: match &got {
                    Ok(v) => render(*v),
                    Err(e) => e.to_string(),
                },
                rhs: render(formula),
            });
        }
    }
    check.finish()
}
