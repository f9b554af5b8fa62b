//! Textual group descriptors and generator lists.
//!
//! ```text
//! spec := cyclic:<n> | dihedral:<n> | symmetric:<n> | alternating:<n>
//!       | klein4 | quaternion8 | product:<spec>,<spec>
//!       | perm:<degree>:<cycles>;<cycles>;...
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    direct_product_with_limit, group_from_generators_with_limit, standard_group_with_limit, Family,
    GroupTable, DEFAULT_MAX_ORDER,
};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Standard(Family),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm { degree: usize, gens: Vec<Perm> },
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<GroupTable> {
        self.build_with_limit(DEFAULT_MAX_ORDER)
    }

    /// Builds the table, refusing any intermediate group above `max_order`.
    pub fn build_with_limit(&self, max_order: usize) -> Result<GroupTable> {
        match self {
            GroupSpec::Standard(f) => standard_group_with_limit(*f, max_order),
            GroupSpec::Product(a, b) => direct_product_with_limit(
                &a.build_with_limit(max_order)?,
                &b.build_with_limit(max_order)?,
                max_order,
            ),
            GroupSpec::Perm { degree, gens } => {
                group_from_generators_with_limit(*degree, gens, max_order)
            }
        }
    }

    /// Order computed from the descriptor alone; `None` for `perm:` specs.
    pub fn order(&self) -> Option<usize> {
        let factorial = |n: usize| (1..=n).product::<usize>();
        match self {
            GroupSpec::Standard(f) => Some(match *f {
                Family::Cyclic(n) => n,
                Family::Dihedral(n) => 2 * n,
                Family::Symmetric(n) => factorial(n),
                Family::Alternating(n) => (factorial(n) / 2).max(1),
                Family::Klein4 => 4,
                Family::Quaternion8 => 8,
            }),
            GroupSpec::Product(a, b) => Some(a.order()? * b.order()?),
            GroupSpec::Perm { .. } => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Standard(Family::Cyclic(n)) => write!(f, "cyclic:{n}"),
            GroupSpec::Standard(Family::Dihedral(n)) => write!(f, "dihedral:{n}"),
            GroupSpec::Standard(Family::Symmetric(n)) => write!(f, "symmetric:{n}"),
            GroupSpec::Standard(Family::Alternating(n)) => write!(f, "alternating:{n}"),
            GroupSpec::Standard(Family::Klein4) => f.write_str("klein4"),
            GroupSpec::Standard(Family::Quaternion8) => f.write_str("quaternion8"),
            GroupSpec::Product(a, b) => write!(f, "product:{a},{b}"),
            GroupSpec::Perm { degree, gens } => {
                write!(f, "perm:{degree}:")?;
                let cycles: Vec<String> = gens.iter().map(Perm::to_string).collect();
                f.write_str(&cycles.join(";"))
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim())?;
        if !rest.is_empty() {
            return Err(Error::Parse(format!(
                "trailing input {rest:?} in group spec {s:?}"
            )));
        }
        Ok(spec)
    }
}

fn parse_number(tok: &str, ctx: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected a number after {ctx}:, got {tok:?}")))
}

/// Leaf specs end at the next comma.
fn split_leaf(s: &str) -> (&str, &str) {
    match s.find(',') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    }
}

fn parse_spec(s: &str) -> Result<(GroupSpec, &str)> {
    if let Some(rest) = s.strip_prefix("product:") {
        let (a, rest) = parse_spec(rest)?;
        let rest = rest.strip_prefix(',').ok_or_else(|| {
            Error::Parse(format!("product needs two comma-separated specs in {s:?}"))
        })?;
        let (b, rest) = parse_spec(rest)?;
        return Ok((GroupSpec::product(a, b), rest));
    }
    let (leaf, rest) = split_leaf(s);
    let (head, tail) = match leaf.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (leaf, None),
    };
    let spec = match (head, tail) {
        ("klein4", None) => GroupSpec::Standard(Family::Klein4),
        ("quaternion8", None) => GroupSpec::Standard(Family::Quaternion8),
        ("cyclic", Some(t)) => GroupSpec::Standard(Family::Cyclic(parse_number(t, head)?)),
        ("dihedral", Some(t)) => GroupSpec::Standard(Family::Dihedral(parse_number(t, head)?)),
        ("symmetric", Some(t)) => GroupSpec::Standard(Family::Symmetric(parse_number(t, head)?)),
        ("alternating", Some(t)) => {
            GroupSpec::Standard(Family::Alternating(parse_number(t, head)?))
        }
        ("perm", Some(t)) => {
            let (deg, cycles) = t.split_once(':').ok_or_else(|| {
                Error::Parse(format!("expected perm:<degree>:<cycles>, got {leaf:?}"))
            })?;
            let degree = parse_number(deg, "perm")?;
            let gens = cycles
                .split(';')
                .filter(|c| !c.trim().is_empty())
                .map(|c| Perm::parse(c, Some(degree)))
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::Perm { degree, gens }
        }
        _ => return Err(Error::Parse(format!("unknown group spec {leaf:?}"))),
    };
    Ok((spec, rest))
}

/// Splits a comma-separated generator list at top-level commas.
fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter()
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect()
}

/// Resolves a generator list to element indices of `g`. Entries are cycle
/// notation (1-based points) or `#<index>`, which also works for groups
/// without permutation labels.
pub fn parse_generators(g: &GroupTable, text: &str) -> Result<Vec<usize>> {
    split_generators(text)
        .into_iter()
        .map(|tok| {
            if let Some(idx) = tok.strip_prefix('#') {
                let i: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element index {tok:?}")))?;
                g.check_index(i).map_err(|_| {
                    Error::Parse(format!(
                        "element {tok} out of range for order {}",
                        g.order()
                    ))
                })?;
                return Ok(i);
            }
            let degree = g.degree().ok_or_else(|| {
                Error::Parse(format!(
                    "group has no permutation labels; use #<index> instead of {tok:?}"
                ))
            })?;
            let perm = Perm::parse(tok, Some(degree))?;
            g.find_label(&perm)
                .ok_or_else(|| Error::Parse(format!("{perm} is not an element of the group")))
        })
        .collect()
}

/// Parsed spec together with its built table.
pub fn build_spec(text: &str) -> Result<(GroupSpec, Arc<GroupTable>)> {
    build_spec_with_limit(text, DEFAULT_MAX_ORDER)
}

pub fn build_spec_with_limit(text: &str, max_order: usize) -> Result<(GroupSpec, Arc<GroupTable>)> {
    let spec: GroupSpec = text.parse()?;
    let g = spec.build_with_limit(max_order)?;
    Ok((spec, Arc::new(g)))
}
