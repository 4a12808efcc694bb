//! Exact element arithmetic for affine Weyl groups via the numbers game,
//! enumeration of the quotient `W̃^S` by length, and Bruhat order.
//!
//! An element `w` is represented by the integer vector
//! `V_j = ⟨w⁻¹(θ), α_j^∨⟩` where `θ = Σ Λ_i` is the sum of all fundamental
//! weights (the all-ones seed). Since `θ` is regular dominant of positive
//! level its orbit is free, so `V` is a complete invariant: two elements are
//! equal iff their vectors are equal. Right multiplication by `s_i` is the
//! linear update `V'_j = V_j - ⟨α_i, α_j^∨⟩ V_i`, the length changes by the
//! sign of `V_i`, and `s_i` is a right descent exactly when `V_i < 0`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::{AffineType, CartanData, Gen};
use crate::{Error, Result};

/// An element of `W̃`: invariant vector, length, and one stored reduced word.
#[derive(Debug, Clone)]
pub struct GroupElement {
    ty: AffineType,
    inv: Vec<BigInt>,
    len: usize,
    word: Vec<Gen>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty && self.inv == other.inv
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ty.hash(state);
        self.inv.hash(state);
    }
}

impl fmt::Display for GroupElement {
    /// Formats the stored word as `s3 s2 s0` (or `e` for the identity).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|g| format!("s{g}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl GroupElement {
    pub fn identity(ty: AffineType) -> Self {
        GroupElement {
            ty,
            inv: vec![BigInt::one(); ty.nodes()],
            len: 0,
            word: vec![],
        }
    }

    /// Evaluates a word (not necessarily reduced) left to right.
    pub fn from_word(ty: AffineType, word: &[Gen]) -> Self {
        let mut w = Self::identity(ty);
        for &i in word {
            w = w.right_multiply(i);
        }
        w
    }

    pub fn ty(&self) -> AffineType {
        self.ty
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// The identity is the empty word.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// The stored reduced word.
    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    pub fn inv_vector(&self) -> &[BigInt] {
        &self.inv
    }

    /// `w · s_i`.
    pub fn right_multiply(&self, i: Gen) -> Self {
        let cart = self.ty.cartan();
        let ascending = self.inv[i as usize].is_positive();
        debug_assert!(!self.inv[i as usize].is_zero(), "orbit must be regular");
        let inv = apply_gen(&cart, &self.inv, i);
        if ascending {
            let mut word = self.word.clone();
            word.push(i);
            GroupElement {
                ty: self.ty,
                inv,
                len: self.len + 1,
                word,
            }
        } else {
            let len = self.len - 1;
            let word = word_from_inv(&cart, &inv, len);
            GroupElement {
                ty: self.ty,
                inv,
                len,
                word,
            }
        }
    }

    /// `s_i · w`, by replaying the prepended word.
    pub fn left_multiply(&self, i: Gen) -> Self {
        let mut w = Self::identity(self.ty).right_multiply(i);
        for &g in &self.word {
            w = w.right_multiply(g);
        }
        w
    }

    /// `self · other`.
    pub fn multiply(&self, other: &GroupElement) -> Self {
        assert_eq!(self.ty, other.ty);
        let mut w = self.clone();
        for &g in &other.word {
            w = w.right_multiply(g);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        let rev: Vec<Gen> = self.word.iter().rev().copied().collect();
        Self::from_word(self.ty, &rev)
    }

    /// `s_i` is a right descent iff `V_i < 0`.
    pub fn is_right_descent(&self, i: Gen) -> bool {
        self.inv[i as usize].is_negative()
    }

    pub fn right_descents(&self) -> Vec<Gen> {
        (0..self.ty.nodes() as Gen)
            .filter(|&i| self.is_right_descent(i))
            .collect()
    }

    pub fn is_left_descent(&self, i: Gen) -> bool {
        self.left_multiply(i).len < self.len
    }

    /// Minimal length in its coset `wW`: no right descent among `s_1 ... s_n`.
    pub fn is_min_rep(&self) -> bool {
        self.inv[1..].iter().all(|v| v.is_positive())
    }

    /// Minimal length in its coset `wW_{S'}` where `S' = {s_0, s_2, ..., s_n}`.
    pub fn is_min_rep_sprime(&self) -> bool {
        self.inv
            .iter()
            .enumerate()
            .all(|(j, v)| j == 1 || v.is_positive())
    }

    /// Generators appearing in any reduced word of `w`.
    pub fn support(&self) -> BTreeSet<Gen> {
        self.word.iter().copied().collect()
    }

    /// The lexicographically smallest reduced word, built by repeatedly
    /// taking the smallest left descent.
    pub fn lex_min_word(&self) -> Vec<Gen> {
        let cart = self.ty.cartan();
        // Track the inverse: left descents of w are right descents of w⁻¹.
        let mut z = self.inverse().inv;
        let mut out = Vec::with_capacity(self.len);
        for _ in 0..self.len {
            let i = smallest_descent(&z).expect("nonidentity element has a descent");
            out.push(i);
            z = apply_gen(&cart, &z, i);
        }
        debug_assert!(z.iter().all(|v| v.is_one()));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.ty.to_string(),
            "word": self.word.iter().map(|&g| g as u32).collect::<Vec<_>>(),
            "length": self.len,
        })
    }

    /// Parses the JSON element form; the invariant vector is recomputed and
    /// the stored length verified.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Dto {
            #[serde(rename = "type")]
            ty: String,
            word: Vec<u32>,
            length: usize,
        }
        let dto: Dto = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("bad element JSON: {e}")))?;
        let ty: AffineType = dto.ty.parse()?;
        let word: Vec<Gen> = dto
            .word
            .iter()
            .map(|&g| {
                if (g as usize) < ty.nodes() {
                    Ok(g as Gen)
                } else {
                    Err(Error::InvalidInput(format!("generator {g} out of range")))
                }
            })
            .collect::<Result<_>>()?;
        let w = Self::from_word(ty, &word);
        if w.len != dto.length {
            return Err(Error::InvalidInput(format!(
                "word is not reduced: evaluates to length {}, claimed {}",
                w.len, dto.length
            )));
        }
        Ok(w)
    }
}

/// Serializable form used by the CLI.
#[derive(Debug, Serialize)]
pub struct ElementRecord {
    pub r#type: String,
    pub word: Vec<u32>,
    pub length: usize,
}

fn apply_gen(cart: &CartanData, inv: &[BigInt], i: Gen) -> Vec<BigInt> {
    let i = i as usize;
    let vi = inv[i].clone();
    inv.iter()
        .enumerate()
        .map(|(j, v)| {
            let c = cart.pairing(i, j);
            if c == 0 {
                v.clone()
            } else {
                v - c * &vi
            }
        })
        .collect()
}

fn smallest_descent(inv: &[BigInt]) -> Option<Gen> {
    inv.iter().position(|v| v.is_negative()).map(|i| i as Gen)
}

/// Reconstructs a reduced word from an invariant vector by stripping the
/// smallest right descent `len` times.
fn word_from_inv(cart: &CartanData, inv: &[BigInt], len: usize) -> Vec<Gen> {
    let mut x = inv.to_vec();
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let j = smallest_descent(&x).expect("descent must exist below identity");
        letters.push(j);
        x = apply_gen(cart, &x, j);
    }
    debug_assert!(
        x.iter().all(|v| v.is_one()),
        "stripping must reach identity"
    );
    letters.reverse();
    letters
}

/// A group element carrying the certificate `w ∈ W̃^S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientElement(GroupElement);

impl QuotientElement {
    pub fn new(w: GroupElement) -> Result<Self> {
        if w.is_min_rep() {
            Ok(QuotientElement(w))
        } else {
            Err(Error::NotMinimalRep)
        }
    }

    pub fn identity(ty: AffineType) -> Self {
        QuotientElement(GroupElement::identity(ty))
    }

    pub fn element(&self) -> &GroupElement {
        &self.0
    }

    pub fn into_element(self) -> GroupElement {
        self.0
    }

    pub fn ty(&self) -> AffineType {
        self.0.ty
    }

    pub fn len(&self) -> usize {
        self.0.len
    }

    pub fn is_empty(&self) -> bool {
        self.0.len == 0
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All `w ∈ W̃^S` with `ℓ(w) ≤ max_len`, grouped by length.
///
/// BFS by left multiplication: `W̃^S` is a lower ideal in left weak order, so
/// every layer is reached from the previous one. Candidates are deduplicated
/// on the invariant vector and sorted by it for determinism. Errors if a
/// layer exceeds `cap` elements.
pub fn enumerate_quotient(
    ty: AffineType,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Vec<QuotientElement>>> {
    enumerate_quotient_threaded(ty, max_len, cap, 1)
}

/// `enumerate_quotient` with a worker count for layer expansion.
pub fn enumerate_quotient_threaded(
    ty: AffineType,
    max_len: usize,
    cap: usize,
    threads: usize,
) -> Result<Vec<Vec<QuotientElement>>> {
    let mut layers: Vec<Vec<QuotientElement>> = vec![vec![QuotientElement::identity(ty)]];
    for len in 0..max_len {
        let current = &layers[len];
        let gens: Vec<Gen> = (0..ty.nodes() as Gen).collect();
        let expand = |chunk: &[QuotientElement]| -> Vec<GroupElement> {
            let mut out = vec![];
            for w in chunk {
                for &i in &gens {
                    let wi = w.element().left_multiply(i);
                    if wi.len() == len + 1 && wi.is_min_rep() {
                        out.push(wi);
                    }
                }
            }
            out
        };
        let mut candidates: Vec<GroupElement> = if threads > 1 && current.len() >= threads {
            let chunk_size = current.len().div_ceil(threads);
            std::thread::scope(|scope| {
                let handles: Vec<_> = current
                    .chunks(chunk_size)
                    .map(|chunk| scope.spawn(move || expand(chunk)))
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().unwrap())
                    .collect()
            })
        } else {
            expand(current)
        };
        candidates.sort_by(|a, b| a.inv.cmp(&b.inv));
        candidates.dedup_by(|a, b| a.inv == b.inv);
        if candidates.len() > cap {
            return Err(Error::ResourceCap {
                what: "enumerate_quotient layer",
                cap,
            });
        }
        if candidates.is_empty() {
            break;
        }
        layers.push(candidates.into_iter().map(QuotientElement).collect());
    }
    Ok(layers)
}

/// Bruhat order via the lifting recursion, memoized on interned invariant
/// vectors. One context per enumeration session bounds the memo's lifetime.
#[derive(Default)]
pub struct BruhatContext {
    interner: HashMap<Vec<BigInt>, u32>,
    memo: HashMap<(u32, u32), bool>,
}

impl BruhatContext {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, inv: &[BigInt]) -> u32 {
        if let Some(&id) = self.interner.get(inv) {
            return id;
        }
        let id = self.interner.len() as u32;
        self.interner.insert(inv.to_vec(), id);
        id
    }

    /// `v ≤ w` in Bruhat order on `W̃`.
    ///
    /// Lifting step: pick a right descent `s_i` of `w`; if `s_i` is also a
    /// descent of `v` recurse on `(v s_i, w s_i)`, otherwise on `(v, w s_i)`.
    pub fn leq(&mut self, v: &GroupElement, w: &GroupElement) -> bool {
        assert_eq!(v.ty, w.ty, "Bruhat comparison requires equal types");
        let cart = v.ty.cartan();
        let mut vv = (v.inv.clone(), v.len);
        let mut ww = (w.inv.clone(), w.len);
        // The recursion is linear, so run it as a loop and backfill the memo.
        let mut trail: Vec<(u32, u32)> = vec![];
        let result = loop {
            if vv.1 > ww.1 {
                break false;
            }
            if ww.1 == 0 {
                break vv.1 == 0;
            }
            if vv.1 == 0 {
                break true;
            }
            let key = (self.intern(&vv.0), self.intern(&ww.0));
            if let Some(&r) = self.memo.get(&key) {
                break r;
            }
            trail.push(key);
            let i = smallest_descent(&ww.0).expect("w below identity");
            ww = (apply_gen(&cart, &ww.0, i), ww.1 - 1);
            if vv.0[i as usize].is_negative() {
                vv = (apply_gen(&cart, &vv.0, i), vv.1 - 1);
            }
        };
        for key in trail {
            self.memo.insert(key, result);
        }
        result
    }
}

/// One-shot Bruhat comparison with a fresh memo table.
pub fn bruhat_leq(v: &GroupElement, w: &GroupElement) -> bool {
    BruhatContext::new().leq(v, w)
}

/// Enumerates minimal coset representatives of `W_gens / W_J` inside the
/// parabolic generated by `gens` (a subset of `s_0 ... s_n` generating a
/// finite group), as full affine elements.
pub(crate) fn parabolic_quotient(
    ty: AffineType,
    gens: &[Gen],
    j_set: &[Gen],
    cap: usize,
) -> Result<Vec<GroupElement>> {
    let mut all: Vec<GroupElement> = vec![GroupElement::identity(ty)];
    let mut frontier: Vec<GroupElement> = all.clone();
    let is_rep = |w: &GroupElement| -> bool { j_set.iter().all(|&j| !w.is_right_descent(j)) };
    while !frontier.is_empty() {
        let mut next: Vec<GroupElement> = vec![];
        for w in &frontier {
            for &i in gens {
                let wi = w.left_multiply(i);
                if wi.len() == w.len() + 1 && is_rep(&wi) {
                    next.push(wi);
                }
            }
        }
        next.sort_by(|a, b| a.inv.cmp(&b.inv));
        next.dedup_by(|a, b| a.inv == b.inv);
        if all.len() + next.len() > cap {
            return Err(Error::ResourceCap {
                what: "parabolic_quotient",
                cap,
            });
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}
