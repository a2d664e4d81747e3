//! Brute-force generation of (k-colored) overpartitions.
//!
//! This module is deliberately naive: it is the oracle every counting
//! claim elsewhere in the crate is checked against.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::Nat;

/// One part of a (colored) overpartition. Uncolored parts carry color 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub size: u32,
    pub color: u32,
    pub overlined: bool,
}

impl Part {
    pub const fn plain(size: u32, color: u32) -> Self {
        Self {
            size,
            color,
            overlined: false,
        }
    }

    pub const fn bar(size: u32, color: u32) -> Self {
        Self {
            size,
            color,
            overlined: true,
        }
    }

    pub fn with_size(self, size: u32) -> Self {
        Self { size, ..self }
    }

    /// Total order in which parts appear in canonical form: size descending,
    /// then color descending, then the plain copy before the overlined one.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other
            .size
            .cmp(&self.size)
            .then(other.color.cmp(&self.color))
            .then(self.overlined.cmp(&other.overlined))
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, colored: bool) -> fmt::Result {
        for ch in self.size.to_string().chars() {
            write!(f, "{ch}")?;
            if self.overlined {
                write!(f, "\u{0305}")?;
            }
        }
        if colored {
            for ch in self.color.to_string().chars() {
                let sub = char::from_u32(0x2080 + ch.to_digit(10).unwrap_or(0)).unwrap_or(ch);
                write!(f, "{sub}")?;
            }
        }
        Ok(())
    }
}

/// A (k-colored) overpartition in canonical order.
///
/// Constructed only through [`canonicalize`], so every value is valid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOverpartition")]
pub struct Overpartition {
    parts: Vec<Part>,
    colors: u32,
}

#[derive(Deserialize)]
struct RawOverpartition {
    parts: Vec<Part>,
    colors: u32,
}

impl TryFrom<RawOverpartition> for Overpartition {
    type Error = Error;

    fn try_from(raw: RawOverpartition) -> Result<Self> {
        canonicalize(raw.parts, raw.colors)
    }
}

impl Overpartition {
    pub fn empty(colors: u32) -> Self {
        Self {
            parts: Vec::new(),
            colors,
        }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| u64::from(p.size)).sum()
    }

    pub fn satisfies(&self, c: &Constraint) -> bool {
        self.parts.iter().all(|p| c.allows(p))
    }

    /// Last part, `λ_t`.
    pub fn last(&self) -> Option<&Part> {
        self.parts.last()
    }

    /// Whether the parts end with `suffix`, compared part by part.
    pub fn ends_with(&self, suffix: &[Part]) -> bool {
        self.parts.ends_with(suffix)
    }

    pub fn into_parts(self) -> Vec<Part> {
        self.parts
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colored = self.colors > 1;
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            p.write(f, colored)?;
        }
        write!(f, ")")
    }
}

/// Sorts `parts` into canonical order and validates them against `colors`.
pub fn canonicalize(mut parts: Vec<Part>, colors: u32) -> Result<Overpartition> {
    if colors == 0 {
        return Err(Error::Validity(
            "number of colors must be at least 1".into(),
        ));
    }
    for p in &parts {
        if p.size == 0 {
            return Err(Error::Validity("parts must have positive size".into()));
        }
        if p.color == 0 || p.color > colors {
            return Err(Error::Validity(format!(
                "color {} outside 1..={colors}",
                p.color
            )));
        }
    }
    parts.sort_by(Part::canonical_cmp);
    for w in parts.windows(2) {
        if w[0] == w[1] && w[0].overlined {
            return Err(Error::Validity(format!(
                "more than one overlined part of size {} and color {}",
                w[0].size, w[0].color
            )));
        }
    }
    Ok(Overpartition { parts, colors })
}

/// Set of `(size, color)` pairs whose plain (non-overlined) copies are banned.
/// Overlined parts are never banned.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    forbidden: BTreeSet<(u32, u32)>,
}

impl Constraint {
    pub fn none() -> Self {
        Self::default()
    }

    /// Bans plain parts of the given size and color.
    pub fn no_plain(size: u32, color: u32) -> Self {
        Self::none().and_no_plain(size, color)
    }

    pub fn and_no_plain(mut self, size: u32, color: u32) -> Self {
        self.forbidden.insert((size, color));
        self
    }

    pub fn allows(&self, p: &Part) -> bool {
        p.overlined || !self.forbidden.contains(&(p.size, p.color))
    }

    pub fn is_none(&self) -> bool {
        self.forbidden.is_empty()
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forbidden.is_empty() {
            return write!(f, "none");
        }
        let items: Vec<String> = self
            .forbidden
            .iter()
            .map(|(s, c)| format!("no {s}_{c}"))
            .collect();
        write!(f, "{}", items.join(" and "))
    }
}

/// Largest weight the enumerator accepts, per number of colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumCaps {
    pub caps: BTreeMap<u32, u32>,
    /// Cap used for color counts absent from `caps`.
    pub fallback: u32,
}

impl Default for EnumCaps {
    fn default() -> Self {
        Self {
            caps: BTreeMap::from([(1, 25), (2, 12), (3, 8)]),
            fallback: 6,
        }
    }
}

impl EnumCaps {
    pub fn cap_for(&self, colors: u32) -> u32 {
        self.caps.get(&colors).copied().unwrap_or(self.fallback)
    }

    pub fn with_cap(mut self, colors: u32, cap: u32) -> Self {
        self.caps.insert(colors, cap);
        self
    }

    pub fn check(&self, n: u32, colors: u32) -> Result<()> {
        let cap = self.cap_for(colors);
        if n > cap {
            return Err(Error::Resource {
                what: format!("enumeration weight {n} with {colors} colors"),
                cap,
            });
        }
        Ok(())
    }
}

/// Every `k`-colored overpartition of `n` allowed by `c`, in canonical form.
///
/// The order is deterministic: `(size, color)` pairs are visited in canonical
/// order, choosing the number of plain copies and then the optional overline.
pub fn enumerate_ops(
    n: u32,
    k: u32,
    c: &Constraint,
    caps: &EnumCaps,
) -> Result<Vec<Overpartition>> {
    let mut out = Vec::new();
    for_each_ops(n, k, c, caps, |parts| {
        out.push(Overpartition {
            parts: parts.to_vec(),
            colors: k,
        })
    })?;
    Ok(out)
}

/// Streams the output of [`enumerate_ops`] without materializing it.
pub fn for_each_ops<F: FnMut(&[Part])>(
    n: u32,
    k: u32,
    c: &Constraint,
    caps: &EnumCaps,
    mut visit: F,
) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("number of colors must be at least 1".into()));
    }
    caps.check(n, k)?;
    let slots: Vec<(u32, u32)> = (1..=n)
        .rev()
        .flat_map(|s| (1..=k).rev().map(move |col| (s, col)))
        .collect();
    let mut stack = Vec::new();
    descend(&slots, 0, n, c, &mut stack, &mut visit);
    Ok(())
}

fn descend<F: FnMut(&[Part])>(
    slots: &[(u32, u32)],
    idx: usize,
    remaining: u32,
    c: &Constraint,
    stack: &mut Vec<Part>,
    visit: &mut F,
) {
    if remaining == 0 {
        visit(stack);
        return;
    }
    let Some(&(size, color)) = slots.get(idx) else {
        return;
    };
    if size > remaining {
        // slots are ordered by decreasing size
        let skip = slots[idx..]
            .iter()
            .take_while(|(s, _)| *s > remaining)
            .count();
        descend(slots, idx + skip, remaining, c, stack, visit);
        return;
    }
    let plain = Part::plain(size, color);
    let max_plain = if c.allows(&plain) {
        remaining / size
    } else {
        0
    };
    let base = stack.len();
    for m in 0..=max_plain {
        stack.truncate(base);
        stack.extend(std::iter::repeat_n(plain, m as usize));
        let left = remaining - m * size;
        descend(slots, idx + 1, left, c, stack, visit);
        if left >= size {
            stack.push(Part::bar(size, color));
            descend(slots, idx + 1, left - size, c, stack, visit);
            stack.pop();
        }
    }
    stack.truncate(base);
}

/// Number of objects [`enumerate_ops`] would return.
pub fn count_ops(n: u32, k: u32, c: &Constraint, caps: &EnumCaps) -> Result<Nat> {
    let mut count: u64 = 0;
    for_each_ops(n, k, c, caps, |_| count += 1)?;
    Ok(Nat::from(count))
}
