//! Segments, allowed pairs, the canonical factorization `r(w)`, the bijection
//! `π` onto colored affine partitions, and the generalized Young's lattice.
//!
//! A segment is a minimal coset representative of a finite parabolic quotient
//! with the affine generator appended (Type I), or a minimal representative of
//! `(W_{S'})^J` / `(W_S)^J` directly (Type II, parities 0/1). Every
//! `w ∈ W̃^S` factors uniquely into segments with weakly decreasing lengths,
//! and the lengths-with-colors form the affine partition `π(w)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use once_cell::sync::Lazy;

use crate::cartan::{AffineType, Family, Gen, TypeClass};
use crate::weyl::{parabolic_quotient, GroupElement, QuotientElement};
use crate::{Error, Result};

/// A colored part `value^color`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub value: u32,
    pub color: u32,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.color == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}^{}", self.value, self.color)
        }
    }
}

/// Weakly decreasing colored parts; the image of `π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPartition {
    ty: AffineType,
    parts: Vec<Part>,
}

impl ColoredPartition {
    pub fn new(ty: AffineType, parts: Vec<Part>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0].value < w[1].value {
                return Err(Error::InvalidInput(format!(
                    "parts not weakly decreasing: {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.iter().any(|p| p.value == 0) {
            return Err(Error::InvalidInput("zero part".into()));
        }
        Ok(ColoredPartition { ty, parts })
    }

    pub fn empty(ty: AffineType) -> Self {
        ColoredPartition { ty, parts: vec![] }
    }

    /// Uncolored convenience constructor.
    pub fn from_values(ty: AffineType, values: &[u32]) -> Result<Self> {
        Self::new(
            ty,
            values
                .iter()
                .map(|&value| Part { value, color: 0 })
                .collect(),
        )
    }

    pub fn ty(&self) -> AffineType {
        self.ty
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.value as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parses `"7,5^1,5^1,3,1"`; the empty string or `"()"` is the empty
    /// partition.
    pub fn parse(ty: AffineType, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "()" {
            return Ok(Self::empty(ty));
        }
        let mut parts = vec![];
        for token in text.split(',') {
            let token = token.trim();
            let (v, c) = match token.split_once('^') {
                Some((v, c)) => (v, c),
                None => (token, "0"),
            };
            let value: u32 = v
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad part {token:?}")))?;
            let color: u32 = c
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad color in {token:?}")))?;
            parts.push(Part { value, color });
        }
        Self::new(ty, parts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.parts
                .iter()
                .map(|p| serde_json::json!({"value": p.value, "color": p.color}))
                .collect(),
        )
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A segment: a fixed reduced word with its length, color, and (for Type II)
/// parity, together with the group element it evaluates to.
#[derive(Debug, Clone)]
pub struct Segment {
    pub ty: AffineType,
    pub len: u32,
    pub color: u32,
    /// `None` for Type I; `Some(0)`/`Some(1)` for Type II 0/1-segments.
    pub parity: Option<u8>,
    pub word: Vec<Gen>,
    element: GroupElement,
}

impl Segment {
    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    pub fn part(&self) -> Part {
        Part {
            value: self.len,
            color: self.color,
        }
    }
}

/// Segments compare by underlying group element, not by stored word.
impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element
    }
}

impl Eq for Segment {}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            Some(p) => write!(f, "s[{}]_{p}({})", self.color, self.len),
            None => write!(f, "s[{}]({})", self.color, self.len),
        }
    }
}

fn seg(ty: AffineType, len: u32, color: u32, parity: Option<u8>, word: Vec<Gen>) -> Segment {
    let element = GroupElement::from_word(ty, &word);
    assert_eq!(
        element.len() as u32,
        len,
        "segment word for {ty} len {len} color {color} is not reduced"
    );
    assert_eq!(element.len(), word.len());
    Segment {
        ty,
        len,
        color,
        parity,
        word,
        element,
    }
}

/// The literal segment tables for `B, C, D, G₂, F₄` (Type II families
/// list both parities). Errors for `A` and `E`; use [`segments_compute`].
pub fn segments_table(ty: AffineType) -> Result<Vec<Segment>> {
    let n = ty.rank();
    let mut out = vec![];
    match ty.family() {
        Family::B => {
            for j in 1..=2 * n - 1 {
                let w1 = b_segment_word(n, j, 1);
                let w0 = b_segment_word(n, j, 0);
                out.push(seg(ty, j as u32, 0, Some(1), w1));
                out.push(seg(ty, j as u32, 0, Some(0), w0));
            }
        }
        Family::C => {
            for j in 1..=2 * n {
                out.push(seg(ty, j as u32, 0, None, c_segment_word(n, j)));
            }
        }
        Family::D => {
            for j in 1..=2 * n - 2 {
                let colors: &[u32] = if j == n - 1 { &[0, 1] } else { &[0] };
                for &color in colors {
                    out.push(seg(
                        ty,
                        j as u32,
                        color,
                        Some(1),
                        d_segment_word(n, j, color, 1),
                    ));
                    out.push(seg(
                        ty,
                        j as u32,
                        color,
                        Some(0),
                        d_segment_word(n, j, color, 0),
                    ));
                }
            }
        }
        Family::G2 => {
            for j in 1..=6usize {
                out.push(seg(ty, j as u32, 0, None, g2_segment_word(j)));
            }
        }
        Family::F4 => {
            for &(len, color, word) in F4_SEGMENTS {
                out.push(seg(ty, len, color, None, word.to_vec()));
            }
        }
        Family::A | Family::E6 | Family::E7 | Family::E8 => {
            return Err(Error::UnsupportedFamily {
                op: "segments_table",
                family: ty.family().letter(),
                reason: "no literal table; use segments_compute",
            })
        }
    }
    Ok(out)
}

fn b_segment_word(n: usize, j: usize, parity: u8) -> Vec<Gen> {
    // Parity 1 from the table; parity 0 swaps s_1 ↔ s_0.
    let mut w: Vec<Gen> = if j <= n {
        (1..=j).rev().map(|g| g as Gen).collect()
    } else {
        let mut w: Vec<Gen> = (2 * n - j..=n).map(|g| g as Gen).collect();
        w.extend((1..n).rev().map(|g| g as Gen));
        w
    };
    if parity == 0 {
        for g in &mut w {
            *g = match *g {
                0 => 1,
                1 => 0,
                other => other,
            };
        }
    }
    w
}

fn c_segment_word(n: usize, j: usize) -> Vec<Gen> {
    if j <= n + 1 {
        (0..j).rev().map(|g| g as Gen).collect()
    } else {
        let mut w: Vec<Gen> = (2 * n - j + 1..=n).map(|g| g as Gen).collect();
        w.extend((0..n).rev().map(|g| g as Gen));
        w
    }
}

fn d_segment_word(n: usize, j: usize, color: u32, parity: u8) -> Vec<Gen> {
    // Parity 1 from the table; parity 0 applies the diagram involution
    // s_0 ↔ s_1, s_{n-1} ↔ s_n.
    let mut w: Vec<Gen> = if j <= n - 2 {
        (1..=j).rev().map(|g| g as Gen).collect()
    } else if j == n - 1 {
        let top = if color == 0 { n - 1 } else { n };
        let mut w = vec![top as Gen];
        w.extend((1..=n - 2).rev().map(|g| g as Gen));
        w
    } else {
        let mut w: Vec<Gen> = (2 * n - j - 1..=n).map(|g| g as Gen).collect();
        w.extend((1..=n - 2).rev().map(|g| g as Gen));
        w
    };
    if parity == 0 {
        for g in &mut w {
            *g = match *g as usize {
                0 => 1,
                1 => 0,
                x if x == n - 1 => n as Gen,
                x if x == n => (n - 1) as Gen,
                other => other as Gen,
            };
        }
    }
    w
}

fn g2_segment_word(j: usize) -> Vec<Gen> {
    // Alternating 2,1 ending in s_1 s_0; the letter k steps from the right
    // end is 1 for odd k, 2 for even k.
    (0..j)
        .map(|pos| {
            let k = j - 1 - pos;
            match k {
                0 => 0,
                k if k % 2 == 1 => 1,
                _ => 2,
            }
        })
        .collect()
}

/// The 24 F₄ segments; superscript-1 entries carry color 1.
const F4_SEGMENTS: &[(u32, u32, &[Gen])] = &[
    (1, 0, &[0]),
    (2, 0, &[1, 0]),
    (3, 0, &[2, 1, 0]),
    (4, 0, &[3, 2, 1, 0]),
    (5, 0, &[2, 3, 2, 1, 0]),
    (5, 1, &[4, 3, 2, 1, 0]),
    (6, 0, &[1, 2, 3, 2, 1, 0]),
    (6, 1, &[2, 4, 3, 2, 1, 0]),
    (7, 0, &[1, 2, 4, 3, 2, 1, 0]),
    (7, 1, &[3, 2, 4, 3, 2, 1, 0]),
    (8, 0, &[1, 3, 2, 4, 3, 2, 1, 0]),
    (8, 1, &[2, 3, 2, 4, 3, 2, 1, 0]),
    (9, 0, &[1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (9, 1, &[2, 1, 3, 2, 4, 3, 2, 1, 0]),
    (10, 0, &[2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (10, 1, &[3, 2, 1, 3, 2, 4, 3, 2, 1, 0]),
    (11, 0, &[3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (11, 1, &[4, 3, 2, 1, 3, 2, 4, 3, 2, 1, 0]),
    (12, 0, &[2, 3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (12, 1, &[4, 3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (13, 0, &[2, 4, 3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (14, 0, &[3, 2, 4, 3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (15, 0, &[2, 3, 2, 4, 3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
    (16, 0, &[1, 2, 3, 2, 4, 3, 2, 1, 2, 3, 2, 4, 3, 2, 1, 0]),
];

/// Type-A segment word `C_{i,j} = s_i ... s_1 s_{n-j+2} ... s_n s_0`.
pub fn type_a_segment_word(n: usize, i: usize, j: usize) -> Vec<Gen> {
    assert!(i <= n && (1..=n).contains(&j));
    let mut w: Vec<Gen> = (1..=i).rev().map(|g| g as Gen).collect();
    w.extend((n - j + 2..=n).map(|g| g as Gen));
    w.push(0);
    w
}

/// Enumerates the segments of any supported type from the finite parabolic
/// quotients, assigning labels per family.
pub fn segments_compute(ty: AffineType, cap: usize) -> Result<Vec<Segment>> {
    let n = ty.rank();
    match ty.typeclass() {
        TypeClass::TypeI => {
            let s_gens: Vec<Gen> = (1..=n as Gen).collect();
            let j_set: Vec<Gen> = ty.commuting_with_s0().into_iter().collect();
            let frags = parabolic_quotient(ty, &s_gens, &j_set, cap)?;
            let elems: Vec<GroupElement> = frags.iter().map(|f| f.right_multiply(0)).collect();
            match ty.family() {
                Family::A => {
                    let mut out = vec![];
                    for i in 0..=n {
                        for j in 1..=n {
                            let word = type_a_segment_word(n, i, j);
                            out.push(seg(ty, (i + j) as u32, i as u32, None, word));
                        }
                    }
                    check_same_elements(&out, &elems, "type A segment formula")?;
                    Ok(out)
                }
                Family::C | Family::G2 | Family::F4 => {
                    // Words and colors come from the literal table; the
                    // enumeration is the independent element-set check.
                    let out = segments_table(ty)?;
                    check_same_elements(&out, &elems, "segment table")?;
                    Ok(out)
                }
                Family::E6 | Family::E7 | Family::E8 => {
                    // No table: group by length, colors in lex-min-word
                    // order within a length class.
                    let mut by_len: BTreeMap<u32, Vec<GroupElement>> = BTreeMap::new();
                    for e in elems {
                        by_len.entry(e.len() as u32).or_default().push(e);
                    }
                    let mut out = vec![];
                    for (len, mut group) in by_len {
                        let mut keyed: Vec<(Vec<Gen>, GroupElement)> =
                            group.drain(..).map(|e| (e.lex_min_word(), e)).collect();
                        keyed.sort_by(|a, b| a.0.cmp(&b.0));
                        for (color, (word, _)) in keyed.into_iter().enumerate() {
                            out.push(seg(ty, len, color as u32, None, word));
                        }
                    }
                    Ok(out)
                }
                _ => unreachable!("Type I families"),
            }
        }
        TypeClass::TypeII => {
            let j_set: Vec<Gen> = (2..=n as Gen).collect();
            let s_gens: Vec<Gen> = (1..=n as Gen).collect();
            let mut sprime_gens: Vec<Gen> = vec![0];
            sprime_gens.extend(2..=n as Gen);
            let ones: Vec<GroupElement> = parabolic_quotient(ty, &s_gens, &j_set, cap)?
                .into_iter()
                .filter(|e| !e.is_identity())
                .collect();
            let zeros: Vec<GroupElement> = parabolic_quotient(ty, &sprime_gens, &j_set, cap)?
                .into_iter()
                .filter(|e| !e.is_identity())
                .collect();
            let out = segments_table(ty)?;
            let built_ones: Vec<Segment> = out
                .iter()
                .filter(|s| s.parity == Some(1))
                .cloned()
                .collect();
            let built_zeros: Vec<Segment> = out
                .iter()
                .filter(|s| s.parity == Some(0))
                .cloned()
                .collect();
            check_same_elements(&built_ones, &ones, "1-segment table")?;
            check_same_elements(&built_zeros, &zeros, "0-segment table")?;
            Ok(out)
        }
    }
}

fn check_same_elements(built: &[Segment], expected: &[GroupElement], what: &str) -> Result<()> {
    let mut a: Vec<&[BigInt]> = built.iter().map(|s| s.element.inv_vector()).collect();
    let mut b: Vec<&[BigInt]> = expected.iter().map(|e| e.inv_vector()).collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::FactorizationInvariant(format!(
            "{what} disagrees with the parabolic quotient enumeration"
        )));
    }
    Ok(())
}

/// Immutable segment data for one `(family, rank)`: the segment list, the
/// part set, and the allowed-pair table (the single source of truth for
/// membership in `𝒫`).
pub struct SegmentSystem {
    ty: AffineType,
    segments: Vec<Segment>,
    parts: Vec<Part>,
    part_idx: HashMap<Part, usize>,
    seg_idx: HashMap<(Part, Option<u8>), usize>,
    elem_idx: HashMap<Vec<BigInt>, usize>,
    allowed: Vec<Vec<bool>>,
}

static SYSTEM_CACHE: Lazy<RwLock<HashMap<AffineType, Arc<SegmentSystem>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

impl SegmentSystem {
    /// Shared, cached system for a type.
    pub fn get(ty: AffineType) -> Result<Arc<SegmentSystem>> {
        if let Some(s) = SYSTEM_CACHE.read().unwrap().get(&ty) {
            return Ok(s.clone());
        }
        let built = Arc::new(SegmentSystem::build(ty)?);
        Ok(SYSTEM_CACHE
            .write()
            .unwrap()
            .entry(ty)
            .or_insert(built)
            .clone())
    }

    fn build(ty: AffineType) -> Result<SegmentSystem> {
        let segments = segments_compute(ty, 2_000_000)?;
        let mut parts: Vec<Part> = segments.iter().map(|s| s.part()).collect();
        parts.sort();
        parts.dedup();
        let part_idx: HashMap<Part, usize> =
            parts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut seg_idx = HashMap::new();
        let mut elem_idx = HashMap::new();
        for (i, s) in segments.iter().enumerate() {
            seg_idx.insert((s.part(), s.parity), i);
            elem_idx.insert(s.element.inv_vector().to_vec(), i);
        }
        let mut system = SegmentSystem {
            ty,
            segments,
            parts,
            part_idx,
            seg_idx,
            elem_idx,
            allowed: vec![],
        };
        let np = system.parts.len();
        let mut allowed = vec![vec![false; np]; np];
        for (a, &pa) in system.parts.iter().enumerate() {
            for (b, &pb) in system.parts.iter().enumerate() {
                allowed[a][b] = system.compute_allowed(pa, pb);
            }
        }
        system.allowed = allowed;
        Ok(system)
    }

    pub fn ty(&self) -> AffineType {
        self.ty
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Distinct colored parts, sorted.
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn segment(&self, value: u32, color: u32, parity: Option<u8>) -> Option<&Segment> {
        self.seg_idx
            .get(&(Part { value, color }, parity))
            .map(|&i| &self.segments[i])
    }

    /// The canonical element of a part: the segment itself for Type I, the
    /// 0-segment for Type II.
    pub fn part_element(&self, p: Part) -> &GroupElement {
        let parity = match self.ty.typeclass() {
            TypeClass::TypeI => None,
            TypeClass::TypeII => Some(0),
        };
        &self.segments[self.seg_idx[&(p, parity)]].element
    }

    fn part_segment(&self, p: Part, parity: Option<u8>) -> &Segment {
        &self.segments[self.seg_idx[&(p, parity)]]
    }

    fn compute_allowed(&self, pa: Part, pb: Part) -> bool {
        match self.ty.typeclass() {
            TypeClass::TypeI => {
                let a = self.part_segment(pa, None);
                let b = self.part_segment(pb, None);
                let x = a.element.multiply(&b.element);
                x.len() == (pa.value + pb.value) as usize && x.is_min_rep()
            }
            TypeClass::TypeII => {
                let a = self.part_segment(pa, Some(1));
                let b = self.part_segment(pb, Some(0));
                let x = a.element.multiply(&b.element);
                x.len() == (pa.value + pb.value) as usize && x.is_min_rep()
            }
        }
    }

    /// Whether `(a, b)` is an allowed pair of colored parts (`a` stacked
    /// below `b`, i.e. `a` is the smaller/later part).
    pub fn allowed_parts(&self, a: Part, b: Part) -> bool {
        match (self.part_idx.get(&a), self.part_idx.get(&b)) {
            (Some(&i), Some(&j)) => self.allowed[i][j],
            _ => false,
        }
    }

    /// A part is repeatable when it may stack on itself.
    pub fn repeatable(&self, p: Part) -> bool {
        self.allowed_parts(p, p)
    }

    /// Whether the ordered product `a · b` of two segments is reduced and a
    /// minimal representative for the appropriate quotient.
    pub fn allowed_pair(&self, a: &Segment, b: &Segment) -> Result<bool> {
        if a.ty != self.ty || b.ty != self.ty {
            return Err(Error::TypeMismatch);
        }
        match self.ty.typeclass() {
            TypeClass::TypeI => Ok(self.allowed_parts(a.part(), b.part())),
            TypeClass::TypeII => {
                let (pa, pb) = match (a.parity, b.parity) {
                    (Some(pa), Some(pb)) if pa != pb => (pa, pb),
                    _ => return Err(Error::TypeMismatch),
                };
                let x = a.element.multiply(&b.element);
                let reduced = x.len() == (a.len + b.len) as usize;
                let rep = if pb == 0 {
                    x.is_min_rep()
                } else {
                    x.is_min_rep_sprime()
                };
                let _ = pa;
                Ok(reduced && rep)
            }
        }
    }

    /// The canonical factorization `r(w)` in product order: leftmost factor
    /// (the smallest part) first.
    pub fn factor(&self, w: &QuotientElement) -> Result<Vec<Segment>> {
        if w.ty() != self.ty {
            return Err(Error::TypeMismatch);
        }
        let n = self.ty.rank();
        let mut u = w.element().clone();
        let mut factors: Vec<Segment> = vec![]; // rightmost first
        let strip = |mut x: GroupElement, gens: &[Gen]| -> (GroupElement, Vec<Gen>) {
            let mut letters = vec![];
            while let Some(i) = gens.iter().copied().find(|&i| x.is_right_descent(i)) {
                letters.push(i);
                x = x.right_multiply(i);
            }
            letters.reverse();
            (x, letters)
        };
        match self.ty.typeclass() {
            TypeClass::TypeI => {
                let s_gens: Vec<Gen> = (1..=n as Gen).collect();
                while !u.is_identity() {
                    if !u.is_right_descent(0) {
                        return Err(Error::FactorizationInvariant(
                            "minimal representative lost its s_0 descent".into(),
                        ));
                    }
                    let (rest, mut frag_word) = strip(u.right_multiply(0), &s_gens);
                    frag_word.push(0);
                    factors.push(self.lookup_segment(&frag_word, None)?);
                    u = rest;
                }
            }
            TypeClass::TypeII => {
                let s_gens: Vec<Gen> = (1..=n as Gen).collect();
                let mut sprime_gens: Vec<Gen> = vec![0];
                sprime_gens.extend(2..=n as Gen);
                let mut parity: u8 = 0;
                while !u.is_identity() {
                    let gens = if parity == 0 { &sprime_gens } else { &s_gens };
                    let (rest, word) = strip(u.clone(), gens);
                    if word.is_empty() {
                        return Err(Error::FactorizationInvariant(format!(
                            "no parity-{parity} descent while peeling"
                        )));
                    }
                    factors.push(self.lookup_segment(&word, Some(parity))?);
                    u = rest;
                    parity ^= 1;
                }
            }
        }
        debug_assert!(
            factors.windows(2).all(|f| f[0].len >= f[1].len),
            "peeled lengths must be weakly decreasing"
        );
        factors.reverse();
        Ok(factors)
    }

    fn lookup_segment(&self, word: &[Gen], parity: Option<u8>) -> Result<Segment> {
        let e = GroupElement::from_word(self.ty, word);
        if e.len() != word.len() {
            return Err(Error::FactorizationInvariant(
                "peeled word is not reduced".into(),
            ));
        }
        let &idx = self.elem_idx.get(e.inv_vector()).ok_or_else(|| {
            Error::FactorizationInvariant(format!(
                "peeled factor of length {} is not a known segment",
                e.len()
            ))
        })?;
        let s = &self.segments[idx];
        if s.parity != parity {
            return Err(Error::FactorizationInvariant(format!(
                "peeled factor has parity {:?}, expected {:?}",
                s.parity, parity
            )));
        }
        Ok(s.clone())
    }

    /// `π(w)`: the affine partition of segment lengths, largest part first.
    pub fn pi(&self, w: &QuotientElement) -> Result<ColoredPartition> {
        let factors = self.factor(w)?;
        let parts: Vec<Part> = factors.iter().rev().map(|s| s.part()).collect();
        ColoredPartition::new(self.ty, parts)
    }

    /// `π⁻¹(λ)`: multiply segment words, smallest part leftmost, the largest
    /// part as the rightmost factor (parity 0 for Type II).
    pub fn pi_inv(&self, lambda: &ColoredPartition) -> Result<QuotientElement> {
        self.check_affine_partition(lambda)
            .map_err(Error::NotAffinePartition)?;
        let mut word: Vec<Gen> = vec![];
        for (k, p) in lambda.parts.iter().enumerate().rev() {
            let parity = match self.ty.typeclass() {
                TypeClass::TypeI => None,
                TypeClass::TypeII => Some((k % 2) as u8),
            };
            word.extend_from_slice(&self.part_segment(*p, parity).word);
        }
        let e = GroupElement::from_word(self.ty, &word);
        debug_assert_eq!(e.len(), lambda.size(), "segment product must be reduced");
        QuotientElement::new(e)
    }

    /// Membership in `𝒫`: all consecutive pairs allowed.
    pub fn is_affine_partition(&self, lambda: &ColoredPartition) -> bool {
        self.check_affine_partition(lambda).is_ok()
    }

    fn check_affine_partition(&self, lambda: &ColoredPartition) -> std::result::Result<(), String> {
        if lambda.ty != self.ty {
            return Err("type mismatch".into());
        }
        for p in &lambda.parts {
            if !self.part_idx.contains_key(p) {
                return Err(format!("{p} is not a segment part"));
            }
        }
        for w in lambda.parts.windows(2) {
            // The pair is read (lower, upper) = (w[1], w[0]).
            if !self.allowed_parts(w[1], w[0]) {
                return Err(format!("({},{}) is not an allowed pair", w[1], w[0]));
            }
        }
        Ok(())
    }

    /// Left weak order on parts: `a ≤ b` iff `b · a⁻¹` is length-additive.
    pub fn part_left_leq(&self, a: Part, b: Part) -> bool {
        if a == b {
            return true;
        }
        if a.value > b.value {
            return false;
        }
        let ea = self.part_element(a);
        let eb = self.part_element(b);
        let x = eb.multiply(&ea.inverse());
        x.len() == (b.value - a.value) as usize
    }

    /// Cover in the colored-part order: `big = s_i · small` for a single
    /// generator (left weak cover); value-1 parts cover the empty part.
    pub fn part_cover(&self, big: Part, small: Option<Part>) -> bool {
        match small {
            None => big.value == 1,
            Some(p) => {
                big.value == p.value + 1 && {
                    let x = self
                        .part_element(big)
                        .multiply(&self.part_element(p).inverse());
                    x.len() == 1
                }
            }
        }
    }

    /// Partitions covered by `lambda` in the generalized Young's lattice:
    /// lower one part by a covering part (or drop a value-1 part), staying
    /// inside `𝒫`.
    pub fn gyl_covered_by(&self, lambda: &ColoredPartition) -> Vec<ColoredPartition> {
        let mut out = vec![];
        for (i, &p) in lambda.parts.iter().enumerate() {
            if p.value == 1 {
                let mut parts = lambda.parts.clone();
                parts.remove(i);
                if let Ok(mu) = ColoredPartition::new(self.ty, parts) {
                    if self.is_affine_partition(&mu) {
                        out.push(mu);
                    }
                }
                continue;
            }
            for &q in &self.parts {
                if q.value != p.value - 1 || !self.part_cover(p, Some(q)) {
                    continue;
                }
                let mut parts = lambda.parts.clone();
                parts[i] = q;
                if let Ok(mu) = ColoredPartition::new(self.ty, parts) {
                    if self.is_affine_partition(&mu) {
                        out.push(mu);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Generalized Young's lattice cover test.
    pub fn gyl_covers(&self, lambda: &ColoredPartition, mu: &ColoredPartition) -> bool {
        lambda.size() == mu.size() + 1 && self.gyl_covered_by(lambda).contains(mu)
    }

    /// The interval `[∅, λ]` in the generalized Young's lattice, grouped by
    /// rank (= size).
    pub fn gyl_interval(&self, lambda: &ColoredPartition) -> Vec<Vec<ColoredPartition>> {
        let top = lambda.size();
        let mut ranks: Vec<Vec<ColoredPartition>> = vec![vec![]; top + 1];
        let mut seen: HashMap<ColoredPartition, ()> = HashMap::new();
        let mut frontier = vec![lambda.clone()];
        seen.insert(lambda.clone(), ());
        ranks[top].push(lambda.clone());
        while let Some(nu) = frontier.pop() {
            for mu in self.gyl_covered_by(&nu) {
                if !seen.contains_key(&mu) {
                    seen.insert(mu.clone(), ());
                    ranks[mu.size()].push(mu.clone());
                    frontier.push(mu);
                }
            }
        }
        for r in &mut ranks {
            r.sort();
        }
        ranks
    }

    /// Positions (0-based) of corners whose removal (to any color) leaves a
    /// member of `𝒫`.
    pub fn p_removable_corners(&self, lambda: &ColoredPartition) -> Vec<usize> {
        let mut out = vec![];
        for (i, &p) in lambda.parts.iter().enumerate() {
            let next_value = lambda.parts.get(i + 1).map_or(0, |q| q.value);
            if p.value == next_value {
                continue; // not a corner
            }
            let mut ok = false;
            if p.value == 1 {
                let mut parts = lambda.parts.clone();
                parts.remove(i);
                ok = ColoredPartition::new(self.ty, parts)
                    .is_ok_and(|mu| self.is_affine_partition(&mu));
            } else {
                for &q in &self.parts {
                    if q.value != p.value - 1 {
                        continue;
                    }
                    let mut parts = lambda.parts.clone();
                    parts[i] = q;
                    if ColoredPartition::new(self.ty, parts)
                        .is_ok_and(|mu| self.is_affine_partition(&mu))
                    {
                        ok = true;
                        break;
                    }
                }
            }
            if ok {
                out.push(i);
            }
        }
        out
    }
}
