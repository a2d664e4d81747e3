//! Case-defined injections between sets of overpartitions and an exhaustive
//! auditor for them.
//!
//! Each map evaluates the guards of all of its cases before dispatching, so
//! an input matching zero or several cases surfaces as an error instead of
//! silently taking the first branch.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::{canonicalize, enumerate_ops, Constraint, EnumCaps, Overpartition, Part};
use crate::error::{Error, Result};

/// Position where the tail of `λ` first reaches `b`.
///
/// `i` is 1-based; `x + (λ_{i+1} + ... + λ_t) = b` and `y = λ_i - x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPoint {
    pub i: usize,
    pub x: u32,
    pub y: u32,
}

pub fn split_point(lambda: &Overpartition, b: u32) -> Result<SplitPoint> {
    if b == 0 {
        return Err(Error::Domain("split_point needs b >= 1".into()));
    }
    if lambda.weight() < u64::from(b) {
        return Err(Error::Domain(format!(
            "split_point: weight {} is less than b = {b}",
            lambda.weight()
        )));
    }
    let parts = lambda.parts();
    let mut tail: u64 = 0;
    for (idx, p) in parts.iter().enumerate().rev() {
        let after = tail;
        tail += u64::from(p.size);
        if tail >= u64::from(b) {
            let x = (u64::from(b) - after) as u32;
            return Ok(SplitPoint {
                i: idx + 1,
                x,
                y: p.size - x,
            });
        }
    }
    unreachable!("weight >= b guarantees a split point")
}

/// An element of `A ⊕ B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImagePair {
    pub left: Overpartition,
    pub right: Overpartition,
}

impl fmt::Display for ImagePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.left, self.right)
    }
}

/// The five injections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    F,
    G1,
    G2,
    Fk,
    Gk,
}

impl MapKind {
    pub const ALL: [MapKind; 5] = [
        MapKind::F,
        MapKind::G1,
        MapKind::G2,
        MapKind::Fk,
        MapKind::Gk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::F => "f",
            MapKind::G1 => "g1",
            MapKind::G2 => "g2",
            MapKind::Fk => "fk",
            MapKind::Gk => "gk",
        }
    }

    /// Number of cases in the map's definition.
    pub fn case_count(self) -> usize {
        match self {
            MapKind::F => 5,
            MapKind::G1 => 4,
            MapKind::G2 => 8,
            MapKind::Fk => 7,
            MapKind::Gk => 6,
        }
    }

    /// Weight of the right-hand factor of the codomain.
    pub fn right_weight(self, b: u32) -> u32 {
        match self {
            MapKind::F | MapKind::Fk => b,
            MapKind::G1 | MapKind::Gk => 1,
            MapKind::G2 => 2,
        }
    }

    fn domain_constraint(self) -> Constraint {
        match self {
            MapKind::F => Constraint::no_plain(1, 1).and_no_plain(2, 1),
            MapKind::G1 | MapKind::G2 | MapKind::Gk => Constraint::no_plain(1, 1),
            MapKind::Fk => Constraint::no_plain(1, 1).and_no_plain(1, 2),
        }
    }

    fn left_constraint(self) -> Constraint {
        Constraint::no_plain(1, 1)
    }

    fn right_constraint(self) -> Constraint {
        match self {
            MapKind::F => Constraint::no_plain(2, 1),
            MapKind::Fk => Constraint::no_plain(1, 2),
            MapKind::G1 | MapKind::G2 | MapKind::Gk => Constraint::none(),
        }
    }

    fn check_params(self, a: u32, b: u32, k: u32) -> Result<()> {
        let ok = match self {
            MapKind::F => a >= b && b >= 2 && k == 1,
            MapKind::G1 => a >= 1 && k == 1,
            MapKind::G2 => a >= 2 && k == 1,
            MapKind::Fk => a >= 2 && b >= 1 && k >= 2,
            MapKind::Gk => a >= 2 && k >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "map {} is not defined for a = {a}, b = {b}, k = {k}",
                self.name()
            )))
        }
    }

    /// Applies the map and reports which case fired (1-based, in listing order).
    pub fn apply(self, lambda: &Overpartition, a: u32, b: u32, k: u32) -> Result<MapOutcome> {
        match self {
            MapKind::F => map_f_traced(lambda, a, b),
            MapKind::G1 => map_g1_traced(lambda, a),
            MapKind::G2 => map_g2_traced(lambda, a),
            MapKind::Fk => map_fk_traced(lambda, a, b, k),
            MapKind::Gk => map_gk_traced(lambda, a, k),
        }
    }

    /// Shape of the codomain elements the corresponding lemma names as
    /// missed by the map.
    fn claimed_unhit(self, a: u32, b: u32, pair: &ImagePair) -> bool {
        const BARS_21: [Part; 2] = [Part::bar(2, 1), Part::bar(1, 1)];
        const BARS_1_21: [Part; 2] = [Part::bar(1, 2), Part::bar(1, 1)];
        match self {
            MapKind::F if a == 2 && b == 2 => {
                pair.left.parts() == [Part::bar(2, 1)] && pair.right.parts() == [Part::bar(2, 1)]
            }
            MapKind::F | MapKind::G2 => pair.left.ends_with(&BARS_21),
            MapKind::G1 => pair.left.ends_with(&BARS_21) && pair.right.parts() == [Part::bar(1, 1)],
            MapKind::Fk | MapKind::Gk => pair.left.ends_with(&BARS_1_21),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown map {s:?}, expected one of f, g1, g2, fk, gk"
                ))
            })
    }
}

/// Image of one element together with the case that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapOutcome {
    pub image: ImagePair,
    pub case: usize,
}

fn select_case(map: MapKind, guards: &[bool], lambda: &Overpartition) -> Result<usize> {
    let fired: Vec<usize> = guards
        .iter()
        .enumerate()
        .filter_map(|(i, &g)| g.then_some(i + 1))
        .collect();
    match fired.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Internal(format!(
            "map {map}: no case applies to {lambda}"
        ))),
        many => Err(Error::Internal(format!(
            "map {map}: cases {many:?} all apply to {lambda}"
        ))),
    }
}

fn require_domain(map: MapKind, lambda: &Overpartition, weight: u32, k: u32) -> Result<()> {
    if lambda.colors() != k {
        return Err(Error::Domain(format!(
            "map {map}: expected {k} colors, got {}",
            lambda.colors()
        )));
    }
    if lambda.weight() != u64::from(weight) {
        return Err(Error::Domain(format!(
            "map {map}: expected weight {weight}, got {}",
            lambda.weight()
        )));
    }
    let c = map.domain_constraint();
    if !lambda.satisfies(&c) {
        return Err(Error::Domain(format!("map {map}: {lambda} violates {c}")));
    }
    Ok(())
}

fn pair(left: Vec<Part>, right: Vec<Part>, k: u32) -> Result<ImagePair> {
    Ok(ImagePair {
        left: canonicalize(left, k)?,
        right: canonicalize(right, k)?,
    })
}

fn with(head: &[Part], extra: impl IntoIterator<Item = Part>) -> Vec<Part> {
    let mut v = head.to_vec();
    v.extend(extra);
    v
}

fn ones(x: u32, color: u32) -> impl Iterator<Item = Part> {
    std::iter::repeat_n(Part::plain(1, color), x as usize)
}

/// `P(a+b | no 1, no 2) -> P(a | no 1) ⊕ P(b | no 2)`, uncolored.
pub fn map_f(lambda: &Overpartition, a: u32, b: u32) -> Result<ImagePair> {
    map_f_traced(lambda, a, b).map(|o| o.image)
}

pub fn map_f_traced(lambda: &Overpartition, a: u32, b: u32) -> Result<MapOutcome> {
    let map = MapKind::F;
    map.check_params(a, b, 1)?;
    require_domain(map, lambda, a + b, 1)?;
    let parts = lambda.parts();
    let SplitPoint { i, x, y } = split_point(lambda, b)?;
    let idx = i - 1;
    let cur = parts[idx];
    let prev = idx.checked_sub(1).map(|j| parts[j]);
    let guards = [
        y == 0,
        y >= 1 && cur.overlined,
        y >= 2 && !cur.overlined,
        y == 1 && !cur.overlined && prev.is_some_and(|p| !p.overlined),
        y == 1 && !cur.overlined && prev.is_some_and(|p| p.overlined),
    ];
    let case = select_case(map, &guards, lambda)?;
    let head = &parts[..idx];
    let right = || with(&parts[idx + 1..], ones(x, 1));
    let image = match case {
        1 => pair(head.to_vec(), parts[idx..].to_vec(), 1)?,
        2 => pair(with(head, [Part::bar(y, 1)]), right(), 1)?,
        3 => pair(with(head, [Part::plain(y, 1)]), right(), 1)?,
        _ => {
            let p = prev.expect("guarded");
            let hi = (p.size + 2) / 2;
            let lo = p.size.div_ceil(2);
            let top = if case == 5 {
                Part::bar(hi, 1)
            } else {
                Part::plain(hi, 1)
            };
            pair(
                with(&parts[..idx - 1], [top, Part::plain(lo, 1)]),
                right(),
                1,
            )?
        }
    };
    Ok(MapOutcome { image, case })
}

/// `P(a+1 | no 1) -> P(a | no 1) ⊕ P(1)`, uncolored.
pub fn map_g1(lambda: &Overpartition, a: u32) -> Result<ImagePair> {
    map_g1_traced(lambda, a).map(|o| o.image)
}

pub fn map_g1_traced(lambda: &Overpartition, a: u32) -> Result<MapOutcome> {
    let map = MapKind::G1;
    map.check_params(a, 1, 1)?;
    require_domain(map, lambda, a + 1, 1)?;
    let parts = lambda.parts();
    let (&last, init) = parts.split_last().expect("weight >= 2");
    let guards = [
        last.size >= 2 && last.overlined,
        last.size >= 3 && !last.overlined,
        last == Part::plain(2, 1),
        last == Part::bar(1, 1),
    ];
    let case = select_case(map, &guards, lambda)?;
    let one = Part::plain(1, 1);
    let image = match case {
        1 => pair(with(init, [Part::bar(last.size - 1, 1)]), vec![one], 1)?,
        2 => pair(with(init, [Part::plain(last.size - 1, 1)]), vec![one], 1)?,
        3 => pair(with(init, [Part::bar(1, 1)]), vec![Part::bar(1, 1)], 1)?,
        _ => pair(init.to_vec(), vec![last], 1)?,
    };
    Ok(MapOutcome { image, case })
}

/// `P(a+2 | no 1) -> P(a | no 1) ⊕ P(2)`, uncolored.
pub fn map_g2(lambda: &Overpartition, a: u32) -> Result<ImagePair> {
    map_g2_traced(lambda, a).map(|o| o.image)
}

pub fn map_g2_traced(lambda: &Overpartition, a: u32) -> Result<MapOutcome> {
    let map = MapKind::G2;
    map.check_params(a, 2, 1)?;
    require_domain(map, lambda, a + 2, 1)?;
    let parts = lambda.parts();
    let (&last, init) = parts.split_last().expect("weight >= 4");
    let prev = init.last().copied();
    let last_is_bar1 = last == Part::bar(1, 1);
    let guards = [
        last.size >= 3 && last.overlined,
        last.size >= 4 && !last.overlined,
        last == Part::plain(3, 1),
        last == Part::plain(2, 1),
        last == Part::bar(2, 1),
        last_is_bar1 && prev.is_some_and(|p| p.overlined),
        last_is_bar1 && prev == Some(Part::plain(2, 1)),
        last_is_bar1 && prev.is_some_and(|p| p.size >= 3 && !p.overlined),
    ];
    let case = select_case(map, &guards, lambda)?;
    let (one, bar1) = (Part::plain(1, 1), Part::bar(1, 1));
    let two = Part::plain(2, 1);
    let image = match case {
        1 => pair(with(init, [Part::bar(last.size - 2, 1)]), vec![two], 1)?,
        2 => pair(with(init, [Part::plain(last.size - 2, 1)]), vec![two], 1)?,
        3 => pair(with(init, [bar1]), vec![Part::bar(2, 1)], 1)?,
        4 => pair(init.to_vec(), vec![one, one], 1)?,
        5 => pair(init.to_vec(), vec![last], 1)?,
        _ => {
            let p = prev.expect("guarded");
            let init2 = &init[..init.len() - 1];
            match case {
                6 => pair(with(init2, [Part::bar(p.size - 1, 1)]), vec![one, bar1], 1)?,
                7 => pair(with(init2, [bar1]), vec![one, one], 1)?,
                _ => pair(
                    with(init2, [Part::plain(p.size - 1, 1)]),
                    vec![one, bar1],
                    1,
                )?,
            }
        }
    };
    Ok(MapOutcome { image, case })
}

/// `P_k(a+b | no 1_1, no 1_2) -> P_k(a | no 1_1) ⊕ P_k(b | no 1_2)`.
pub fn map_fk(lambda: &Overpartition, a: u32, b: u32, k: u32) -> Result<ImagePair> {
    map_fk_traced(lambda, a, b, k).map(|o| o.image)
}

pub fn map_fk_traced(lambda: &Overpartition, a: u32, b: u32, k: u32) -> Result<MapOutcome> {
    let map = MapKind::Fk;
    map.check_params(a, b, k)?;
    require_domain(map, lambda, a + b, k)?;
    let parts = lambda.parts();
    let SplitPoint { i, x, y } = split_point(lambda, b)?;
    let idx = i - 1;
    let cur = parts[idx];
    let prev = idx.checked_sub(1).map(|j| parts[j]);
    let two_1 = Part::plain(2, 1);
    let y1_color1 = y == 1 && cur.color == 1 && !cur.overlined;
    let guards = [
        y == 0,
        y >= 1 && cur.overlined,
        y >= 2 && !cur.overlined,
        y == 1 && cur.color != 1 && !cur.overlined,
        y1_color1 && prev == Some(two_1),
        y1_color1 && prev.is_some_and(|p| p != two_1 && !p.overlined),
        y1_color1 && prev.is_some_and(|p| p.overlined),
    ];
    let case = select_case(map, &guards, lambda)?;
    let head = &parts[..idx];
    let right = || with(&parts[idx + 1..], ones(x, 1));
    let image = match case {
        1 => pair(head.to_vec(), parts[idx..].to_vec(), k)?,
        2 => pair(with(head, [Part::bar(y, cur.color)]), right(), k)?,
        3 => pair(with(head, [Part::plain(y, cur.color)]), right(), k)?,
        4 => pair(with(head, [Part::plain(1, cur.color)]), right(), k)?,
        _ => {
            let p = prev.expect("guarded");
            let head2 = &parts[..idx - 1];
            let left = match case {
                5 => with(head2, ones(2, 2).chain([Part::bar(1, 1)])),
                6 => with(
                    head2,
                    [Part::plain(p.size - 1, p.color)]
                        .into_iter()
                        .chain(ones(2, 2)),
                ),
                _ => with(
                    head2,
                    [Part::bar(p.size - 1, p.color)]
                        .into_iter()
                        .chain(ones(2, 2)),
                ),
            };
            pair(left, right(), k)?
        }
    };
    Ok(MapOutcome { image, case })
}

/// `P_k(a+1 | no 1_1) -> P_k(a | no 1_1) ⊕ P_k(1)`.
pub fn map_gk(lambda: &Overpartition, a: u32, k: u32) -> Result<ImagePair> {
    map_gk_traced(lambda, a, k).map(|o| o.image)
}

pub fn map_gk_traced(lambda: &Overpartition, a: u32, k: u32) -> Result<MapOutcome> {
    let map = MapKind::Gk;
    map.check_params(a, 1, k)?;
    require_domain(map, lambda, a + 1, k)?;
    let parts = lambda.parts();
    let (&last, init) = parts.split_last().expect("weight >= 3");
    let prev = init.last().copied();
    let two_1 = Part::plain(2, 1);
    let guards = [
        last.size >= 2 && last.overlined,
        last.size >= 2 && last != two_1 && !last.overlined,
        last == two_1 && prev.is_some_and(|p| p.overlined),
        last == two_1 && prev.is_some_and(|p| p != two_1 && !p.overlined),
        last == two_1 && prev == Some(two_1),
        last.size == 1,
    ];
    let case = select_case(map, &guards, lambda)?;
    let one_1 = vec![Part::plain(1, 1)];
    let image = match case {
        1 => pair(with(init, [Part::bar(last.size - 1, last.color)]), one_1, k)?,
        2 => pair(
            with(init, [Part::plain(last.size - 1, last.color)]),
            one_1,
            k,
        )?,
        6 => pair(init.to_vec(), vec![last], k)?,
        _ => {
            let p = prev.expect("guarded");
            let init2 = &init[..init.len() - 1];
            let left = match case {
                3 => with(
                    init2,
                    [Part::bar(p.size - 1, p.color)]
                        .into_iter()
                        .chain(ones(2, 2)),
                ),
                4 => with(
                    init2,
                    [Part::plain(p.size - 1, p.color)]
                        .into_iter()
                        .chain(ones(2, 2)),
                ),
                _ => with(init2, ones(2, 2).chain([Part::bar(1, 1)])),
            };
            pair(left, one_1, k)?
        }
    };
    Ok(MapOutcome { image, case })
}

/// A domain element on which a map failed, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defect {
    pub element: Overpartition,
    pub reason: String,
}

/// Outcome of running a map over its entire domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub map_name: MapKind,
    pub a: u32,
    /// Weight of the right-hand factor (1 for g1 and gk, 2 for g2).
    pub b: u32,
    pub k: u32,
    pub domain_size: u64,
    pub codomain_size: u64,
    pub image_size: u64,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    /// How many domain elements each case handled, in listing order.
    pub case_counts: Vec<u64>,
    pub defect: Option<Defect>,
    pub collision_witness: Option<(Overpartition, Overpartition)>,
    pub unhit_witness: Option<ImagePair>,
    /// Codomain elements of the shape the lemma names as missed.
    pub pattern_pairs: u64,
    /// How many of those the map nevertheless reaches.
    pub pattern_pairs_hit: u64,
}

impl AuditReport {
    /// Well-defined, injective and not surjective.
    pub fn confirms_strict_injection(&self) -> bool {
        self.well_defined && self.injective && !self.surjective
    }
}

/// Enumerates the domain of `map`, applies it everywhere and checks the
/// image against the codomain. `b` is ignored for `g1`, `g2` and `gk`.
pub fn audit(map: MapKind, a: u32, b: u32, k: u32, caps: &EnumCaps) -> Result<AuditReport> {
    let b = map.right_weight(b);
    map.check_params(a, b, k)?;
    let domain = enumerate_ops(a + b, k, &map.domain_constraint(), caps)?;
    let (left_c, right_c) = (map.left_constraint(), map.right_constraint());
    let lefts = enumerate_ops(a, k, &left_c, caps)?;
    let rights = enumerate_ops(b, k, &right_c, caps)?;

    let mut case_counts = vec![0u64; map.case_count()];
    let mut seen: HashMap<ImagePair, usize> = HashMap::with_capacity(domain.len());
    let mut defect = None;
    let mut collision = None;

    for (pos, lambda) in domain.iter().enumerate() {
        let outcome = match map.apply(lambda, a, b, k) {
            Ok(o) => o,
            Err(e) => {
                defect.get_or_insert(Defect {
                    element: lambda.clone(),
                    reason: e.to_string(),
                });
                continue;
            }
        };
        case_counts[outcome.case - 1] += 1;
        let img = outcome.image;
        let lands = img.left.weight() == u64::from(a)
            && img.right.weight() == u64::from(b)
            && img.left.satisfies(&left_c)
            && img.right.satisfies(&right_c);
        if !lands {
            defect.get_or_insert(Defect {
                element: lambda.clone(),
                reason: format!(
                    "image {img} lies outside the codomain (case {})",
                    outcome.case
                ),
            });
            continue;
        }
        if let Some(&other) = seen.get(&img) {
            collision.get_or_insert((domain[other].clone(), lambda.clone()));
        } else {
            seen.insert(img, pos);
        }
    }

    let codomain_size = (lefts.len() * rights.len()) as u64;
    let image_size = seen.len() as u64;
    let well_defined = defect.is_none();
    let injective = well_defined && collision.is_none();
    let surjective = image_size == codomain_size;

    let mut pattern_pairs = 0u64;
    let mut pattern_pairs_hit = 0u64;
    let mut unhit_witness = None;
    for left in &lefts {
        for right in &rights {
            let candidate = ImagePair {
                left: left.clone(),
                right: right.clone(),
            };
            if !map.claimed_unhit(a, b, &candidate) {
                continue;
            }
            pattern_pairs += 1;
            if seen.contains_key(&candidate) {
                pattern_pairs_hit += 1;
            } else if unhit_witness.is_none() {
                unhit_witness = Some(candidate);
            }
        }
    }
    if unhit_witness.is_none() && !surjective {
        unhit_witness = lefts
            .iter()
            .flat_map(|l| rights.iter().map(move |r| (l, r)))
            .map(|(l, r)| ImagePair {
                left: l.clone(),
                right: r.clone(),
            })
            .find(|p| !seen.contains_key(p));
    }

    Ok(AuditReport {
        map_name: map,
        a,
        b,
        k,
        domain_size: domain.len() as u64,
        codomain_size,
        image_size,
        well_defined,
        injective,
        surjective,
        case_counts,
        defect,
        collision_witness: collision,
        unhit_witness,
        pattern_pairs,
        pattern_pairs_hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(parts: &[Part], k: u32) -> Overpartition {
        canonicalize(parts.to_vec(), k).unwrap()
    }

    fn p(s: u32) -> Part {
        Part::plain(s, 1)
    }

    fn bar(s: u32) -> Part {
        Part::bar(s, 1)
    }

    fn image(l: &[Part], r: &[Part], k: u32) -> ImagePair {
        ImagePair {
            left: op(l, k),
            right: op(r, k),
        }
    }

    #[test]
    fn split_point_examples() {
        assert_eq!(
            split_point(&op(&[p(4)], 1), 2).unwrap(),
            SplitPoint { i: 1, x: 2, y: 2 }
        );
        assert_eq!(
            split_point(&op(&[p(3), bar(1)], 1), 2).unwrap(),
            SplitPoint { i: 1, x: 1, y: 2 }
        );
        let lambda = op(&[Part::bar(2, 1), Part::bar(1, 2)], 2);
        assert_eq!(
            split_point(&lambda, 1).unwrap(),
            SplitPoint { i: 2, x: 1, y: 0 }
        );
        assert!(matches!(
            split_point(&op(&[p(2)], 1), 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn map_f_examples() {
        assert_eq!(
            map_f(&op(&[p(4)], 1), 2, 2).unwrap(),
            image(&[p(2)], &[p(1), p(1)], 1)
        );
        assert_eq!(
            map_f(&op(&[bar(4)], 1), 2, 2).unwrap(),
            image(&[bar(2)], &[p(1), p(1)], 1)
        );
        assert_eq!(
            map_f(&op(&[bar(3), bar(1)], 1), 2, 2).unwrap(),
            image(&[bar(2)], &[p(1), bar(1)], 1)
        );
    }

    #[test]
    fn map_f_split_cases() {
        // y = 1 with both parts plain: 5 splits into 3 + 3, here with a = 6, b = 4
        let out = map_f_traced(&op(&[p(5), p(5)], 1), 6, 4).unwrap();
        assert_eq!(out.case, 4);
        assert_eq!(
            out.image,
            image(&[p(3), p(3)], &[p(1), p(1), p(1), p(1)], 1)
        );
        let out = map_f_traced(&op(&[p(5), bar(5)], 1), 6, 4);
        // λ_i is overlined here, so the y >= 1 overlined case applies
        assert_eq!(out.unwrap().case, 2);
        let out = map_f_traced(&op(&[bar(5), p(4)], 1), 6, 3).unwrap();
        assert_eq!(out.case, 5);
        assert_eq!(out.image, image(&[p(3), bar(3)], &[p(1), p(1), p(1)], 1));
    }

    #[test]
    fn map_f_rejects_bad_input() {
        assert!(matches!(
            map_f(&op(&[p(2), p(2)], 1), 2, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            map_f(&op(&[p(5)], 1), 2, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            map_f(&op(&[p(4)], 1), 1, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn map_g1_examples() {
        assert_eq!(
            map_g1(&op(&[p(4)], 1), 3).unwrap(),
            image(&[p(3)], &[p(1)], 1)
        );
        assert_eq!(
            map_g1(&op(&[p(2), p(2)], 1), 3).unwrap(),
            image(&[p(2), bar(1)], &[bar(1)], 1)
        );
        assert_eq!(
            map_g1(&op(&[p(3), bar(1)], 1), 3).unwrap(),
            image(&[p(3)], &[bar(1)], 1)
        );
    }

    #[test]
    fn map_g2_examples() {
        assert_eq!(
            map_g2(&op(&[p(4)], 1), 2).unwrap(),
            image(&[p(2)], &[p(2)], 1)
        );
        assert_eq!(
            map_g2(&op(&[p(2), bar(2)], 1), 2).unwrap(),
            image(&[p(2)], &[bar(2)], 1)
        );
        assert_eq!(
            map_g2(&op(&[bar(3), bar(1)], 1), 2).unwrap(),
            image(&[bar(2)], &[p(1), bar(1)], 1)
        );
    }

    #[test]
    fn map_fk_examples() {
        let k = 2;
        assert_eq!(
            map_fk(&op(&[Part::plain(3, 2)], k), 2, 1, k).unwrap(),
            image(&[Part::plain(2, 2)], &[Part::plain(1, 1)], k)
        );
        assert_eq!(
            map_fk(&op(&[Part::bar(2, 1), Part::bar(1, 2)], k), 2, 1, k).unwrap(),
            image(&[Part::bar(2, 1)], &[Part::bar(1, 2)], k)
        );
        assert_eq!(
            map_fk(&op(&[Part::bar(3, 1)], k), 2, 1, k).unwrap(),
            image(&[Part::bar(2, 1)], &[Part::plain(1, 1)], k)
        );
    }

    #[test]
    fn map_fk_color_one_cases() {
        let k = 2;
        // λ = (2₁, 2₁), a = 3, b = 1: i = 2, x = 1, y = 1, λ_{i-1} = 2₁
        let out = map_fk_traced(&op(&[p(2), p(2)], k), 3, 1, k).unwrap();
        assert_eq!(out.case, 5);
        assert_eq!(
            out.image,
            image(
                &[Part::plain(1, 2), Part::plain(1, 2), Part::bar(1, 1)],
                &[p(1)],
                k
            )
        );
        let out = map_fk_traced(&op(&[Part::plain(3, 2), p(2)], k), 4, 1, k).unwrap();
        assert_eq!(out.case, 6);
        assert_eq!(
            out.image,
            image(
                &[Part::plain(2, 2), Part::plain(1, 2), Part::plain(1, 2)],
                &[p(1)],
                k
            )
        );
        let out = map_fk_traced(&op(&[Part::bar(2, 2), p(2)], k), 3, 1, k).unwrap();
        assert_eq!(out.case, 7);
        assert_eq!(
            out.image,
            image(
                &[Part::plain(1, 2), Part::plain(1, 2), Part::bar(1, 2)],
                &[p(1)],
                k
            )
        );
    }

    #[test]
    fn map_gk_examples() {
        let k = 2;
        assert_eq!(
            map_gk(&op(&[p(3)], k), 2, k).unwrap(),
            image(&[p(2)], &[p(1)], k)
        );
        assert_eq!(
            map_gk(&op(&[p(2), bar(1)], k), 2, k).unwrap(),
            image(&[p(2)], &[bar(1)], k)
        );
        assert_eq!(
            map_gk(&op(&[Part::bar(2, 2), Part::plain(1, 2)], k), 2, k).unwrap(),
            image(&[Part::bar(2, 2)], &[Part::plain(1, 2)], k)
        );
    }

    #[test]
    fn audit_f_two_two() {
        let r = audit(MapKind::F, 2, 2, 1, &EnumCaps::default()).unwrap();
        assert!(r.well_defined && r.injective && !r.surjective);
        assert_eq!((r.domain_size, r.codomain_size, r.image_size), (4, 6, 4));
        assert_eq!(r.pattern_pairs, 1);
        assert_eq!(r.pattern_pairs_hit, 0);
        assert_eq!(r.unhit_witness, Some(image(&[bar(2)], &[bar(2)], 1)));
    }

    #[test]
    fn audit_g1_small() {
        let caps = EnumCaps::default();
        for a in 1..=2 {
            let r = audit(MapKind::G1, a, 1, 1, &caps).unwrap();
            assert!(r.well_defined && r.injective && r.surjective, "a = {a}");
        }
        let r = audit(MapKind::G1, 3, 1, 1, &caps).unwrap();
        assert!(r.confirms_strict_injection());
        let w = r.unhit_witness.unwrap();
        assert!(w.left.ends_with(&[bar(2), bar(1)]));
        assert_eq!(w.right.parts(), &[bar(1)]);
    }

    #[test]
    fn audit_gk_two_two() {
        let r = audit(MapKind::Gk, 2, 1, 2, &EnumCaps::default()).unwrap();
        assert!(r.confirms_strict_injection());
        assert_eq!(r.pattern_pairs_hit, 0);
    }

    #[test]
    fn audit_rejects_bad_parameters() {
        assert!(audit(MapKind::F, 1, 1, 1, &EnumCaps::default()).is_err());
        assert!(audit(MapKind::Fk, 2, 1, 1, &EnumCaps::default()).is_err());
        assert!(matches!(
            audit(MapKind::Fk, 6, 6, 3, &EnumCaps::default()),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn map_kind_parsing() {
        for m in MapKind::ALL {
            assert_eq!(m.name().parse::<MapKind>().unwrap(), m);
        }
        assert!("h".parse::<MapKind>().is_err());
    }
}
