//! Poincaré polynomials of lower Bruhat intervals, palindromy and cpo/chain
//! classification, thin and extra-thin partitions, branching numbers, the
//! empirical `m_W`, and the predicted palindromic sets per type.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::cartan::{AffineType, Family};
use crate::segments::{ColoredPartition, Part, SegmentSystem};
use crate::typea;
use crate::weyl::{enumerate_quotient_threaded, QuotientElement};
use crate::{Error, Result};

/// Dense bit set over element indices.
#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn count_range(&self, start: usize, end: usize) -> usize {
        (start..end).filter(|&i| self.contains(i)).count()
    }

    fn ones(&self, upto: usize) -> Vec<usize> {
        (0..upto).filter(|&i| self.contains(i)).collect()
    }
}

/// The Bruhat order on `W̃^S` up to a length cap, with covers and full
/// downsets.
///
/// Covers are found by single-letter deletion from the stored reduced word
/// (the subword property makes this exhaustive for rank differences of one),
/// and downsets are the transitive closure. The lifting recursion in
/// [`crate::weyl::BruhatContext`] serves as an independent oracle in tests.
pub struct BruhatPoset {
    ty: AffineType,
    system: Arc<SegmentSystem>,
    elements: Vec<QuotientElement>,
    partitions: Vec<ColoredPartition>,
    by_partition: HashMap<ColoredPartition, usize>,
    len_start: Vec<usize>,
    covers_down: Vec<Vec<usize>>,
    down: Vec<BitSet>,
    max_len: usize,
}

impl BruhatPoset {
    pub fn build(ty: AffineType, max_len: usize, cap: usize) -> Result<Self> {
        Self::build_threaded(ty, max_len, cap, 1)
    }

    pub fn build_threaded(
        ty: AffineType,
        max_len: usize,
        cap: usize,
        threads: usize,
    ) -> Result<Self> {
        let system = SegmentSystem::get(ty)?;
        let layers = enumerate_quotient_threaded(ty, max_len, cap, threads)?;
        let mut elements: Vec<QuotientElement> = vec![];
        let mut partitions: Vec<ColoredPartition> = vec![];
        let mut len_start = vec![0usize];
        for layer in &layers {
            let mut keyed: Vec<(ColoredPartition, QuotientElement)> = layer
                .iter()
                .map(|w| Ok((system.pi(w)?, w.clone())))
                .collect::<Result<_>>()?;
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            for (p, w) in keyed {
                partitions.push(p);
                elements.push(w);
            }
            len_start.push(elements.len());
        }
        let n = elements.len();
        let mut by_inv: HashMap<Vec<BigInt>, usize> = HashMap::with_capacity(n);
        for (i, w) in elements.iter().enumerate() {
            by_inv.insert(w.element().inv_vector().to_vec(), i);
        }
        let mut covers_down: Vec<Vec<usize>> = vec![vec![]; n];
        let mut down: Vec<BitSet> = Vec::with_capacity(n);
        for (i, w) in elements.iter().enumerate() {
            let mut bs = BitSet::new(n);
            bs.insert(i);
            let word = w.element().word();
            let mut children = vec![];
            for k in 0..word.len() {
                let mut sub: Vec<_> = word.to_vec();
                sub.remove(k);
                let v = crate::weyl::GroupElement::from_word(ty, &sub);
                if v.len() + 1 == word.len() && v.is_min_rep() {
                    if let Some(&j) = by_inv.get(v.inv_vector()) {
                        children.push(j);
                    }
                }
            }
            children.sort_unstable();
            children.dedup();
            for &j in &children {
                bs.union_with(&down[j]);
            }
            covers_down[i] = children;
            down.push(bs);
        }
        let by_partition = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(BruhatPoset {
            ty,
            system,
            elements,
            partitions,
            by_partition,
            len_start,
            covers_down,
            down,
            max_len: layers.len() - 1,
        })
    }

    pub fn ty(&self) -> AffineType {
        self.ty
    }

    pub fn system(&self) -> &Arc<SegmentSystem> {
        &self.system
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, id: usize) -> &QuotientElement {
        &self.elements[id]
    }

    pub fn partition(&self, id: usize) -> &ColoredPartition {
        &self.partitions[id]
    }

    pub fn id_of_partition(&self, p: &ColoredPartition) -> Option<usize> {
        self.by_partition.get(p).copied()
    }

    pub fn id_of(&self, w: &QuotientElement) -> Option<usize> {
        self.elements.iter().position(|e| e == w)
    }

    pub fn len_of(&self, id: usize) -> usize {
        self.elements[id].len()
    }

    pub fn ids_of_len(&self, len: usize) -> std::ops::Range<usize> {
        if len + 1 >= self.len_start.len() {
            return 0..0;
        }
        self.len_start[len]..self.len_start[len + 1]
    }

    pub fn all_ids(&self) -> std::ops::Range<usize> {
        0..self.elements.len()
    }

    /// `v ≤ w` read off the closed downsets.
    pub fn leq(&self, v: usize, w: usize) -> bool {
        self.down[w].contains(v)
    }

    pub fn covers_down(&self, id: usize) -> &[usize] {
        &self.covers_down[id]
    }

    /// Ids of `{v : v ≤ w}`.
    pub fn lower_interval(&self, w: usize) -> Vec<usize> {
        self.down[w].ones(self.elements.len())
    }

    pub fn poincare(&self, w: usize) -> PoincarePolynomial {
        let lw = self.len_of(w);
        let coeffs = (0..=lw)
            .map(|l| {
                let r = self.ids_of_len(l);
                BigInt::from(self.down[w].count_range(r.start, r.end))
            })
            .collect();
        PoincarePolynomial { coeffs }
    }

    pub fn is_palindromic(&self, w: usize) -> bool {
        self.poincare(w).is_palindromic()
    }

    /// Chain: one element per rank below `w`.
    pub fn is_chain(&self, w: usize) -> bool {
        self.down[w].count_range(0, self.elements.len()) == self.len_of(w) + 1
    }
}

/// Rank generating function of a lower Bruhat interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    coeffs: Vec<BigInt>,
}

impl PoincarePolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        PoincarePolynomial {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Smallest `i ≥ 1` with `a_i ≠ a_{ℓ-i}`, if any.
    pub fn first_asymmetry(&self) -> Option<usize> {
        let n = self.coeffs.len();
        (1..=n / 2).find(|&i| self.coeffs[i] != self.coeffs[n - 1 - i])
    }

    pub fn to_int_polynomial(&self) -> crate::series::IntPolynomial {
        crate::series::IntPolynomial::from_coeffs(self.coeffs.clone())
    }
}

/// All `v ∈ W̃^S` with `v ≤ w`, by enumerating up to `ℓ(w)` and reading the
/// downset off the cover closure.
pub fn lower_interval(w: &QuotientElement, cap: usize) -> Result<Vec<QuotientElement>> {
    let poset = BruhatPoset::build(w.ty(), w.len(), cap)?;
    let id = poset
        .id_of(w)
        .expect("a minimal representative lies in its own-length poset");
    Ok(poset
        .lower_interval(id)
        .into_iter()
        .map(|v| poset.element(v).clone())
        .collect())
}

/// Rank generating function of the lower interval of `w`.
pub fn poincare(w: &QuotientElement, cap: usize) -> Result<PoincarePolynomial> {
    let poset = BruhatPoset::build(w.ty(), w.len(), cap)?;
    let id = poset
        .id_of(w)
        .expect("a minimal representative lies in its own-length poset");
    Ok(poset.poincare(id))
}

/// Closed parabolic orbit test: for every generator in the support,
/// `s_i · w` projects to a coset representative `≤ w`. The only failure mode
/// is `s_i w` staying a minimal representative of strictly larger length.
pub fn is_cpo(w: &QuotientElement) -> bool {
    w.element().support().into_iter().all(|i| {
        let up = w.element().left_multiply(i);
        !(up.len() > w.len() && up.is_min_rep())
    })
}

/// Smallest rank of `W̃^S` with at least two elements; `None` for `Ã_1`
/// where the quotient is a chain.
pub fn branching_number(ty: AffineType) -> Option<usize> {
    let s = ty.bott_series(32);
    (1..=32).find(|&k| s.coeff(k) > &BigInt::from(1))
}

/// Rank symmetry of the generalized Young's lattice interval `[∅, λ]` in the
/// first and last `b_W` ranks.
pub fn is_thin(system: &SegmentSystem, lambda: &ColoredPartition) -> bool {
    let Some(b) = branching_number(system.ty()) else {
        return true;
    };
    let ranks = system.gyl_interval(lambda);
    let top = lambda.size();
    (0..b.min(top + 1)).all(|i| ranks[i].len() == ranks[top - i].len())
}

/// Thin, plus at most one Bruhat-covered partition whose largest part stays
/// below the largest part of `λ` in left weak order.
pub fn is_extra_thin(poset: &BruhatPoset, lambda: &ColoredPartition) -> Result<bool> {
    let system = poset.system();
    if !is_thin(system, lambda) {
        return Ok(false);
    }
    let id = poset
        .id_of_partition(lambda)
        .ok_or_else(|| Error::InvalidInput(format!("{lambda} not in poset (cap too small?)")))?;
    let top = lambda.parts().first().copied();
    let mut small_covers = 0usize;
    for &v in poset.covers_down(id) {
        let mu = poset.partition(v);
        let mu_top = mu.parts().first().copied();
        let below = match (mu_top, top) {
            (None, _) => true,
            (Some(a), Some(b)) => system.part_left_leq(a, b),
            (Some(_), None) => false,
        };
        if below {
            small_covers += 1;
        }
    }
    Ok(small_covers <= 1)
}

/// A finite graded poset given by ranks and cover edges, for isomorphism
/// testing of Bruhat and generalized-Young intervals.
pub struct RankedPoset {
    /// `ranks[r]` lists node ids of rank `r`.
    pub ranks: Vec<Vec<usize>>,
    /// Cover edges downward per node.
    pub down: Vec<Vec<usize>>,
}

impl RankedPoset {
    pub fn size(&self) -> usize {
        self.down.len()
    }

    fn up(&self) -> Vec<Vec<usize>> {
        let mut up = vec![vec![]; self.down.len()];
        for (v, ds) in self.down.iter().enumerate() {
            for &d in ds {
                up[d].push(v);
            }
        }
        up
    }

    pub fn from_bruhat_interval(poset: &BruhatPoset, w: usize) -> RankedPoset {
        let ids = poset.lower_interval(w);
        let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut ranks = vec![vec![]; poset.len_of(w) + 1];
        let mut down = vec![vec![]; ids.len()];
        for (local, &global) in ids.iter().enumerate() {
            ranks[poset.len_of(global)].push(local);
            for &c in poset.covers_down(global) {
                down[local].push(index[&c]);
            }
        }
        RankedPoset { ranks, down }
    }

    pub fn from_gyl_interval(system: &SegmentSystem, lambda: &ColoredPartition) -> RankedPoset {
        let by_rank = system.gyl_interval(lambda);
        let mut index: HashMap<ColoredPartition, usize> = HashMap::new();
        let mut flat: Vec<ColoredPartition> = vec![];
        let mut ranks = vec![];
        for level in &by_rank {
            let mut ids = vec![];
            for p in level {
                ids.push(flat.len());
                index.insert(p.clone(), flat.len());
                flat.push(p.clone());
            }
            ranks.push(ids);
        }
        let mut down = vec![vec![]; flat.len()];
        for (v, p) in flat.iter().enumerate() {
            for mu in system.gyl_covered_by(p) {
                if let Some(&d) = index.get(&mu) {
                    down[v].push(d);
                }
            }
        }
        RankedPoset { ranks, down }
    }
}

/// Graded poset isomorphism: iterative refinement by (rank, neighbor label
/// multisets), then a backtracking match within refinement classes.
pub fn poset_isomorphic(a: &RankedPoset, b: &RankedPoset) -> bool {
    if a.size() != b.size() || a.ranks.len() != b.ranks.len() {
        return false;
    }
    for (ra, rb) in a.ranks.iter().zip(&b.ranks) {
        if ra.len() != rb.len() {
            return false;
        }
    }
    let (la, lb) = match refine_labels(a, b) {
        Some(pair) => pair,
        None => return false,
    };
    // Backtracking rank by rank; candidates must share the refinement label
    // and map the already-matched down-neighborhood exactly.
    let mut image: Vec<Option<usize>> = vec![None; a.size()];
    let mut used: Vec<bool> = vec![false; b.size()];
    let order: Vec<usize> = a.ranks.iter().flatten().copied().collect();
    let rank_of_b: Vec<usize> = {
        let mut r = vec![0; b.size()];
        for (rank, ids) in b.ranks.iter().enumerate() {
            for &i in ids {
                r[i] = rank;
            }
        }
        r
    };
    let rank_of_a: Vec<usize> = {
        let mut r = vec![0; a.size()];
        for (rank, ids) in a.ranks.iter().enumerate() {
            for &i in ids {
                r[i] = rank;
            }
        }
        r
    };
    #[allow(clippy::too_many_arguments)]
    fn try_match(
        pos: usize,
        order: &[usize],
        a: &RankedPoset,
        b: &RankedPoset,
        la: &[u64],
        lb: &[u64],
        rank_of_a: &[usize],
        rank_of_b: &[usize],
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let mut want: Vec<usize> = a.down[v].iter().map(|&d| image[d].unwrap()).collect();
        want.sort_unstable();
        for u in 0..b.size() {
            if used[u] || lb[u] != la[v] || rank_of_b[u] != rank_of_a[v] {
                continue;
            }
            let mut have: Vec<usize> = b.down[u].to_vec();
            have.sort_unstable();
            if have != want {
                continue;
            }
            image[v] = Some(u);
            used[u] = true;
            if try_match(
                pos + 1,
                order,
                a,
                b,
                la,
                lb,
                rank_of_a,
                rank_of_b,
                image,
                used,
            ) {
                return true;
            }
            image[v] = None;
            used[u] = false;
        }
        false
    }
    try_match(
        0, &order, a, b, &la, &lb, &rank_of_a, &rank_of_b, &mut image, &mut used,
    )
}

/// Stable refinement labels for both posets; `None` when the label multisets
/// already distinguish them.
fn refine_labels(a: &RankedPoset, b: &RankedPoset) -> Option<(Vec<u64>, Vec<u64>)> {
    let up_a = a.up();
    let up_b = b.up();
    let rank_vec = |p: &RankedPoset| {
        let mut r = vec![0u64; p.size()];
        for (rank, ids) in p.ranks.iter().enumerate() {
            for &i in ids {
                r[i] = rank as u64;
            }
        }
        r
    };
    let mut la = rank_vec(a);
    let mut lb = rank_vec(b);
    for _ in 0..a.size().max(2) {
        let step =
            |p: &RankedPoset, up: &[Vec<usize>], l: &[u64]| -> Vec<(u64, Vec<u64>, Vec<u64>)> {
                (0..p.size())
                    .map(|v| {
                        let mut d: Vec<u64> = p.down[v].iter().map(|&x| l[x]).collect();
                        let mut u: Vec<u64> = up[v].iter().map(|&x| l[x]).collect();
                        d.sort_unstable();
                        u.sort_unstable();
                        (l[v], d, u)
                    })
                    .collect()
            };
        let sa = step(a, &up_a, &la);
        let sb = step(b, &up_b, &lb);
        let mut dict: HashMap<&(u64, Vec<u64>, Vec<u64>), u64> = HashMap::new();
        let mut all: Vec<&(u64, Vec<u64>, Vec<u64>)> = sa.iter().chain(sb.iter()).collect();
        all.sort();
        all.dedup();
        for (i, key) in all.into_iter().enumerate() {
            dict.insert(key, i as u64);
        }
        let na: Vec<u64> = sa.iter().map(|k| dict[k]).collect();
        let nb: Vec<u64> = sb.iter().map(|k| dict[k]).collect();
        let mut ma = na.clone();
        let mut mb = nb.clone();
        ma.sort_unstable();
        mb.sort_unstable();
        if ma != mb {
            return None;
        }
        let stable = na == la && nb == lb;
        la = na;
        lb = nb;
        if stable {
            break;
        }
    }
    Some((la, lb))
}

/// Whether the Bruhat interval below `w` is isomorphic to the generalized
/// Young's lattice interval below `π(w)`.
pub fn yb_nice(poset: &BruhatPoset, w: usize) -> bool {
    let bruhat = RankedPoset::from_bruhat_interval(poset, w);
    let gyl = RankedPoset::from_gyl_interval(poset.system(), poset.partition(w));
    poset_isomorphic(&bruhat, &gyl)
}

/// Report of the empirical `m_W` computation.
#[derive(Debug, Clone)]
pub struct MwReport {
    /// Maximum asymmetry depth over all non-palindromic elements observed.
    pub value: usize,
    /// Partitions attaining the maximum depth.
    pub witnesses: Vec<ColoredPartition>,
    pub non_palindromic: usize,
    pub max_len: usize,
}

/// Least `m` such that every non-palindromic `w` with `ℓ(w) ≤ max_len` fails
/// coefficient symmetry within the first `m` positions.
pub fn empirical_mw(poset: &BruhatPoset) -> Result<MwReport> {
    let mut value = 0usize;
    let mut witnesses = vec![];
    let mut non_palindromic = 0usize;
    for id in poset.all_ids() {
        let p = poset.poincare(id);
        if let Some(d) = p.first_asymmetry() {
            non_palindromic += 1;
            match d.cmp(&value) {
                std::cmp::Ordering::Greater => {
                    value = d;
                    witnesses = vec![poset.partition(id).clone()];
                }
                std::cmp::Ordering::Equal => witnesses.push(poset.partition(id).clone()),
                std::cmp::Ordering::Less => {}
            }
        }
    }
    if non_palindromic == 0 {
        return Err(Error::InvalidInput(
            "no non-palindromic element within the length cap".into(),
        ));
    }
    Ok(MwReport {
        value,
        witnesses,
        non_palindromic,
        max_len: poset.max_len(),
    })
}

/// All palindromic elements with `ℓ(w) ≤ max_len`, as partitions.
pub fn empirical_palindromics(poset: &BruhatPoset) -> BTreeSet<ColoredPartition> {
    poset
        .all_ids()
        .filter(|&id| poset.is_palindromic(id))
        .map(|id| poset.partition(id).clone())
        .collect()
}

/// The classification's predicted palindromic shapes up to `max_len`.
///
/// Infinite families use the closed-form shape lists; type A uses cpo chains
/// and spirals; `G₂`/`F₄` use the finite lists; `E` types run the extra-thin
/// search (capped at `max_len`).
pub fn predicted_palindromics(
    ty: AffineType,
    max_len: usize,
) -> Result<BTreeSet<ColoredPartition>> {
    let n = ty.rank();
    let mut shapes: Vec<ColoredPartition> = vec![ColoredPartition::empty(ty)];
    let row = |j: u32, color: u32| -> ColoredPartition {
        ColoredPartition::new(ty, vec![Part { value: j, color }]).unwrap()
    };
    let staircase = |k: u32, top_color: u32| -> ColoredPartition {
        let parts = (1..=k)
            .rev()
            .map(|value| Part {
                value,
                color: if value == k { top_color } else { 0 },
            })
            .collect();
        ColoredPartition::new(ty, parts).unwrap()
    };
    match ty.family() {
        Family::A => {
            let system = SegmentSystem::get(ty)?;
            if n == 1 {
                // Ã₁ is a chain: everything is palindromic.
                let poset = BruhatPoset::build(ty, max_len, 1_000_000)?;
                return Ok(poset
                    .all_ids()
                    .map(|id| poset.partition(id).clone())
                    .collect());
            }
            for w in typea::cpo_elements(ty)? {
                shapes.push(system.pi(&w)?);
            }
            for w in typea::spiral_elements_up_to(ty, max_len)? {
                shapes.push(system.pi(&w)?);
            }
        }
        Family::B => {
            for j in 1..=(2 * n - 1) as u32 {
                shapes.push(row(j, 0));
            }
            if n == 3 {
                shapes.push(staircase(2, 0));
                shapes.push(ColoredPartition::from_values(ty, &[3, 3, 3]).unwrap());
            } else {
                for k in 2..=(n - 1) as u32 {
                    shapes.push(staircase(k, 0));
                }
            }
        }
        Family::C => {
            for j in 1..=(2 * n) as u32 {
                shapes.push(row(j, 0));
            }
            for k in 2..=n as u32 {
                shapes.push(staircase(k, 0));
            }
        }
        Family::D => {
            for j in 1..=(n - 2) as u32 {
                shapes.push(row(j, 0));
            }
            shapes.push(row((n - 1) as u32, 0));
            shapes.push(row((n - 1) as u32, 1));
            shapes.push(row((2 * n - 2) as u32, 0));
            for k in 2..=(n - 2) as u32 {
                shapes.push(staircase(k, 0));
            }
            shapes.push(staircase((n - 1) as u32, 0));
            shapes.push(staircase((n - 1) as u32, 1));
        }
        Family::G2 => {
            for j in 1..=6 {
                shapes.push(row(j, 0));
            }
            shapes.push(ColoredPartition::from_values(ty, &[4, 1]).unwrap());
        }
        Family::F4 => {
            for j in 1..=6 {
                shapes.push(row(j, 0));
            }
            shapes.push(row(5, 1));
            shapes.push(ColoredPartition::from_values(ty, &[6, 1]).unwrap());
        }
        Family::E6 | Family::E7 | Family::E8 => {
            return exceptional_palindromics_search(ty, max_len);
        }
    }
    Ok(shapes.into_iter().filter(|p| p.size() <= max_len).collect())
}

/// Frozen palindromic lists for the E types (11 each), computed once by the
/// extra-thin search; regenerate with
/// `affgr verify palindromy --type E6 --max-len 17` (respectively E7 at 28,
/// E8 at 30), which reruns the search live.
pub fn e_type_palindromic_fixture(ty: AffineType) -> &'static [&'static str] {
    match ty.family() {
        Family::E6 => &[
            "()", "1", "2", "3", "4", "4^1", "5^1", "5^2", "7,1", "11^4,5^2", "11^5,5^1",
        ],
        Family::E7 => &[
            "()", "1", "2", "3", "4", "5", "5^1", "6^1", "7^2", "9,1", "17^6,9,1",
        ],
        Family::E8 => &[
            "()", "1", "2", "3", "4", "5", "6", "7", "7^1", "8^1", "13,1",
        ],
        _ => &[],
    }
}

/// Palindromic elements of an exceptional type found by the extra-thin
/// search: all candidates have at most 3 parts, are extra thin, and are then
/// tested for palindromy directly.
pub fn exceptional_palindromics_search(
    ty: AffineType,
    max_len: usize,
) -> Result<BTreeSet<ColoredPartition>> {
    if !ty.is_exceptional() {
        return Err(Error::UnsupportedFamily {
            op: "exceptional_palindromics_search",
            family: ty.family().letter(),
            reason: "extra-thin search applies to exceptional types",
        });
    }
    let poset = BruhatPoset::build(ty, max_len, 2_000_000)?;
    let mut out: BTreeSet<ColoredPartition> = BTreeSet::new();
    for lambda in partitions_with_at_most(&poset, 3)? {
        if is_extra_thin(&poset, &lambda)? {
            let id = poset.id_of_partition(&lambda).unwrap();
            if poset.is_palindromic(id) {
                out.insert(lambda);
            }
        }
    }
    Ok(out)
}

/// All affine partitions with at most `max_parts` parts and size within the
/// poset's length cap.
pub fn partitions_with_at_most(
    poset: &BruhatPoset,
    max_parts: usize,
) -> Result<Vec<ColoredPartition>> {
    Ok(poset
        .all_ids()
        .map(|id| poset.partition(id).clone())
        .filter(|p| p.num_parts() <= max_parts)
        .collect())
}

/// All extra-thin partitions with at most `max_parts` parts and size at most
/// the poset cap, by the suffix-closed search: a partition is pruned as soon
/// as one of its suffixes fails to stay extra thin.
pub fn extra_thin_partitions(
    poset: &BruhatPoset,
    max_parts: usize,
) -> Result<Vec<ColoredPartition>> {
    let system = poset.system();
    let ty = poset.ty();
    let max_size = poset.max_len();
    let mut found: Vec<ColoredPartition> = vec![];
    // Seed with single parts.
    let mut frontier: Vec<ColoredPartition> = vec![];
    for &p in system.parts() {
        if (p.value as usize) <= max_size {
            let lambda = ColoredPartition::new(ty, vec![p]).unwrap();
            if is_extra_thin(poset, &lambda)? {
                frontier.push(lambda);
            }
        }
    }
    found.extend(frontier.iter().cloned());
    for _ in 2..=max_parts {
        let mut next = vec![];
        for lambda in &frontier {
            let top = lambda.parts()[0];
            for &p in system.parts() {
                if !system.allowed_parts(top, p) {
                    continue;
                }
                if lambda.size() + p.value as usize > max_size {
                    continue;
                }
                let mut parts = vec![p];
                parts.extend_from_slice(lambda.parts());
                let bigger = ColoredPartition::new(ty, parts).unwrap();
                if is_extra_thin(poset, &bigger)? {
                    next.push(bigger);
                }
            }
        }
        found.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(found)
}

/// Per-element classification flags for reporting.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassificationRecord {
    pub partition: String,
    pub length: usize,
    pub poincare: Vec<u64>,
    pub palindromic: bool,
    pub cpo: bool,
    pub chain: bool,
    pub thin: bool,
    pub extra_thin: bool,
    pub yb_nice: bool,
    pub predicted_palindromic: bool,
    pub first_asymmetry: Option<usize>,
}

/// Builds the full classification report for all elements up to the poset cap.
pub fn classification_report(poset: &BruhatPoset) -> Result<Vec<ClassificationRecord>> {
    let predicted = predicted_palindromics(poset.ty(), poset.max_len())?;
    let mut out = vec![];
    for id in poset.all_ids() {
        let p = poset.poincare(id);
        let lambda = poset.partition(id);
        out.push(ClassificationRecord {
            partition: lambda.to_string(),
            length: poset.len_of(id),
            poincare: p
                .coeffs()
                .iter()
                .map(|c| u64::try_from(c.clone()).unwrap_or(u64::MAX))
                .collect(),
            palindromic: p.is_palindromic(),
            cpo: is_cpo(poset.element(id)),
            chain: poset.is_chain(id),
            thin: is_thin(poset.system(), lambda),
            extra_thin: is_extra_thin(poset, lambda)?,
            yb_nice: yb_nice(poset, id),
            predicted_palindromic: predicted.contains(lambda),
            first_asymmetry: p.first_asymmetry(),
        });
    }
    Ok(out)
}
