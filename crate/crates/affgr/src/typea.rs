//! Type-A specifics: `(n+1)`-cores, `n`-bounded partitions, the bijections
//! between them and `W̃^S`, central-hook factorization, the core-containment
//! (Lascoux) order, spiral elements, and the diagram involution.

use crate::cartan::{AffineType, Family, Gen};
use crate::segments::type_a_segment_word;
use crate::weyl::{GroupElement, QuotientElement};
use crate::{Error, Result};

/// An `(n+1)`-core: no cell has hook length divisible by `n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorePartition {
    rows: Vec<u32>,
    modulus: usize, // n + 1
}

impl CorePartition {
    pub fn new(rows: Vec<u32>, n: usize) -> Result<Self> {
        let core = CorePartition {
            rows,
            modulus: n + 1,
        };
        for w in core.rows.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidInput("rows not weakly decreasing".into()));
            }
        }
        if core.rows.contains(&0) {
            return Err(Error::InvalidInput("zero row".into()));
        }
        for r in 1..=core.rows.len() {
            for c in 1..=core.rows[r - 1] as usize {
                if core.hook(r, c).is_multiple_of(core.modulus) {
                    return Err(Error::InvalidInput(format!(
                        "hook at ({r},{c}) divisible by {}",
                        core.modulus
                    )));
                }
            }
        }
        Ok(core)
    }

    pub fn empty(n: usize) -> Self {
        CorePartition {
            rows: vec![],
            modulus: n + 1,
        }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.modulus - 1
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }

    fn col_len(&self, c: usize) -> usize {
        self.rows.iter().take_while(|&&r| r as usize >= c).count()
    }

    /// Hook length of the cell `(r, c)` (1-indexed, matrix convention).
    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.rows[r - 1] as usize - c;
        let leg = self.col_len(c) - r;
        arm + leg + 1
    }

    /// `n`-content of cell `(r, c)`: `(c - r) mod (n+1)`.
    pub fn content(&self, r: usize, c: usize) -> usize {
        (c as i64 - r as i64).rem_euclid(self.modulus as i64) as usize
    }

    fn addable_cells(&self, content: usize) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for r in 1..=self.rows.len() + 1 {
            let c = self.rows.get(r - 1).copied().unwrap_or(0) as usize + 1;
            let fits = r == 1 || self.rows[r - 2] as usize >= c;
            if fits && self.content(r, c) == content {
                out.push((r, c));
            }
        }
        out
    }

    fn removable_cells(&self, content: usize) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for r in 1..=self.rows.len() {
            let c = self.rows[r - 1] as usize;
            let corner = self.rows.get(r).copied().unwrap_or(0) < self.rows[r - 1];
            if corner && self.content(r, c) == content {
                out.push((r, c));
            }
        }
        out
    }

    /// The operator `r_i`: add all addable cells of content `i` if any exist,
    /// else remove all removable cells of content `i`, else return unchanged.
    pub fn r_op(&self, i: Gen) -> CorePartition {
        let i = i as usize;
        let addable = self.addable_cells(i);
        let mut rows = self.rows.clone();
        if !addable.is_empty() {
            debug_assert!(
                self.removable_cells(i).is_empty(),
                "a core has no mixed addable/removable content class"
            );
            for (r, _) in addable {
                if r > rows.len() {
                    rows.push(1);
                } else {
                    rows[r - 1] += 1;
                }
            }
        } else {
            for (r, _) in self.removable_cells(i) {
                rows[r - 1] -= 1;
            }
            while rows.last() == Some(&0) {
                rows.pop();
            }
        }
        let out = CorePartition {
            rows,
            modulus: self.modulus,
        };
        debug_assert!(
            CorePartition::new(out.rows.clone(), self.n()).is_ok(),
            "r_op must preserve the core property"
        );
        out
    }

    /// Componentwise containment of Ferrers diagrams.
    pub fn contains(&self, other: &CorePartition) -> bool {
        other
            .rows
            .iter()
            .enumerate()
            .all(|(i, &r)| self.rows.get(i).copied().unwrap_or(0) >= r)
    }

    pub fn transpose(&self) -> CorePartition {
        let cols = self.rows.first().copied().unwrap_or(0) as usize;
        let rows = (1..=cols).map(|c| self.col_len(c) as u32).collect();
        CorePartition {
            rows,
            modulus: self.modulus,
        }
    }
}

/// A partition with all parts at most `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedPartition {
    rows: Vec<u32>,
    bound: usize,
}

impl BoundedPartition {
    pub fn new(rows: Vec<u32>, n: usize) -> Result<Self> {
        for w in rows.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidInput("rows not weakly decreasing".into()));
            }
        }
        if rows.iter().any(|&r| r == 0 || r as usize > n) {
            return Err(Error::InvalidInput(format!("parts must lie in 1..={n}")));
        }
        Ok(BoundedPartition { rows, bound: n })
    }

    pub fn empty(n: usize) -> Self {
        BoundedPartition {
            rows: vec![],
            bound: n,
        }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|&r| r as usize).sum()
    }
}

/// A type-A segment `C_{i,j}` with arm index `i` and leg index `j`.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub struct TypeASegment {
    pub i: usize,
    pub j: usize,
}

impl TypeASegment {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.i + self.j
    }

    pub fn word(&self, n: usize) -> Vec<Gen> {
        type_a_segment_word(n, self.i, self.j)
    }
}

fn require_type_a(ty: AffineType) -> Result<usize> {
    if ty.family() != Family::A {
        return Err(Error::UnsupportedFamily {
            op: "typea",
            family: ty.family().letter(),
            reason: "core/bounded bijections are type A only",
        });
    }
    Ok(ty.rank())
}

/// The Misra–Miwa map `𝔠`: apply `r`-operators along the reduced word,
/// rightmost letter first.
pub fn c_map(w: &QuotientElement) -> Result<CorePartition> {
    let n = require_type_a(w.ty())?;
    let mut core = CorePartition::empty(n);
    for &g in w.element().word().iter().rev() {
        core = core.r_op(g);
    }
    Ok(core)
}

/// `𝔟`: row `i` of the image counts the cells of row `i` with hook length at
/// most `n`.
pub fn b_map(core: &CorePartition) -> BoundedPartition {
    let n = core.n();
    let rows: Vec<u32> = (1..=core.rows.len())
        .map(|r| {
            (1..=core.rows[r - 1] as usize)
                .filter(|&c| core.hook(r, c) <= n)
                .count() as u32
        })
        .take_while(|&r| r > 0)
        .collect();
    BoundedPartition { rows, bound: n }
}

/// `𝔞`: fill the bounded partition with `n`-contents, read rows right to
/// left, bottom to top, and multiply the generators in that order.
pub fn a_map(ty: AffineType, mu: &BoundedPartition) -> Result<QuotientElement> {
    let n = require_type_a(ty)?;
    if mu.bound != n {
        return Err(Error::InvalidInput(format!(
            "bounded partition has bound {}, expected {n}",
            mu.bound
        )));
    }
    let mut word: Vec<Gen> = vec![];
    for r in (1..=mu.rows.len()).rev() {
        for c in (1..=mu.rows[r - 1] as usize).rev() {
            word.push((c as i64 - r as i64).rem_euclid(n as i64 + 1) as Gen);
        }
    }
    let e = GroupElement::from_word(ty, &word);
    if e.len() != mu.size() {
        return Err(Error::FactorizationInvariant(
            "content word of a bounded partition must be reduced".into(),
        ));
    }
    QuotientElement::new(e)
}

/// Successively strips the lowest central hook, yielding the factors of
/// `r(w)` leftmost first.
pub fn central_hook_factor(core: &CorePartition) -> Result<Vec<TypeASegment>> {
    let n = core.n();
    let mut current = core.clone();
    let mut out = vec![];
    while !current.rows.is_empty() {
        // Lowest central hook: largest a with λ_a ≥ a.
        let a = (1..=current.rows.len())
            .rev()
            .find(|&a| current.rows[a - 1] as usize >= a)
            .expect("nonempty partition has a diagonal cell");
        let arm = current.rows[a - 1] as usize - a;
        let leg = current.col_len(a) - a;
        let hooksize = arm + leg + 1;
        debug_assert_ne!(hooksize, n + 1);
        let segment = if hooksize <= n {
            TypeASegment { i: arm, j: leg + 1 }
        } else {
            TypeASegment { i: arm, j: leg }
        };
        if segment.j == 0 || segment.j > n || segment.i > n {
            return Err(Error::FactorizationInvariant(format!(
                "central hook (arm {arm}, leg {leg}) is not a segment shape"
            )));
        }
        // Removing the hook = applying the segment word left to right.
        let before = current.size();
        for &g in &segment.word(n) {
            current = current.r_op(g);
        }
        if current.size() >= before {
            return Err(Error::FactorizationInvariant(
                "hook removal failed to shrink the core".into(),
            ));
        }
        // The lowest hook is the leftmost (last applied) factor, so the
        // emission order is already product order.
        out.push(segment);
    }
    Ok(out)
}

/// Allowed pair condition for `C_{i,j} · C_{k,l}`.
pub fn allowed_pair_a(n: usize, i: usize, j: usize, k: usize, l: usize) -> bool {
    (i < k && j < l) || (k + l > n && i < k && j <= l) || (i + j > n && i <= k && j <= l)
}

/// Bruhat order through Lascoux's theorem: containment of the cores.
pub fn core_leq(v: &QuotientElement, w: &QuotientElement) -> Result<bool> {
    Ok(c_map(w)?.contains(&c_map(v)?))
}

/// Which way a spiral element winds around the affine diagram.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum SpiralDirection {
    /// The `C_{0,j}(C_{1,n})^m` family.
    CounterClockwise,
    /// The `C_{i,1}(C_{n,1})^m` family.
    Clockwise,
}

/// The spiral element of length `k·n` in the requested family.
pub fn spiral(ty: AffineType, k: usize, direction: SpiralDirection) -> Result<QuotientElement> {
    let n = require_type_a(ty)?;
    if n < 2 || k < 1 {
        return Err(Error::CongruenceUnsatisfiable(format!(
            "spiral needs n ≥ 2 and k ≥ 1 (got n={n}, k={k})"
        )));
    }
    let length = k * n;
    let mut word: Vec<Gen> = vec![];
    match direction {
        SpiralDirection::Clockwise => {
            let i = (length - 1) % (n + 1);
            let m = (length - 1 - i) / (n + 1);
            word.extend(type_a_segment_word(n, i, 1));
            for _ in 0..m {
                word.extend(type_a_segment_word(n, n, 1));
            }
        }
        SpiralDirection::CounterClockwise => {
            let j = length % (n + 1);
            let m = if j == 0 {
                length / (n + 1)
            } else {
                (length - j) / (n + 1)
            };
            if j > 0 {
                word.extend(type_a_segment_word(n, 0, j));
            }
            for _ in 0..m {
                word.extend(type_a_segment_word(n, 1, n));
            }
        }
    }
    let e = GroupElement::from_word(ty, &word);
    if e.len() != length {
        return Err(Error::FactorizationInvariant(
            "spiral word must be reduced".into(),
        ));
    }
    QuotientElement::new(e)
}

/// All spiral elements (both directions) of length at most `max_len`.
pub fn spiral_elements_up_to(ty: AffineType, max_len: usize) -> Result<Vec<QuotientElement>> {
    let n = require_type_a(ty)?;
    let mut out = vec![];
    if n < 2 {
        return Ok(out);
    }
    for k in 1..=max_len / n {
        for dir in [
            SpiralDirection::Clockwise,
            SpiralDirection::CounterClockwise,
        ] {
            let w = spiral(ty, k, dir)?;
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// The nontrivial closed-parabolic-orbit elements: one ascending chain of
/// segments per top segment `C_{i,j}` with `i + j ≤ n`.
pub fn cpo_elements(ty: AffineType) -> Result<Vec<QuotientElement>> {
    let n = require_type_a(ty)?;
    let mut out = vec![];
    for i in 0..=n {
        for j in 1..=n {
            if i + j > n {
                continue;
            }
            let factors: Vec<(usize, usize)> = if i < j {
                (0..=i).map(|t| (t, j - i + t)).collect()
            } else {
                (0..j).map(|t| (i - j + 1 + t, 1 + t)).collect()
            };
            let mut word: Vec<Gen> = vec![];
            for (a, b) in factors {
                word.extend(type_a_segment_word(n, a, b));
            }
            let e = GroupElement::from_word(ty, &word);
            if e.len() != word.len() {
                return Err(Error::FactorizationInvariant(
                    "cpo chain word must be reduced".into(),
                ));
            }
            out.push(QuotientElement::new(e)?);
        }
    }
    Ok(out)
}

/// The involution `s_i → s_{n+1-i}` (fixing `s_0`); transposes the core.
pub fn diagram_involution(w: &QuotientElement) -> Result<QuotientElement> {
    let n = require_type_a(w.ty())?;
    let word: Vec<Gen> = w
        .element()
        .word()
        .iter()
        .map(|&g| {
            if g == 0 {
                0
            } else {
                (n + 1 - g as usize) as Gen
            }
        })
        .collect();
    QuotientElement::new(GroupElement::from_word(w.ty(), &word))
}
