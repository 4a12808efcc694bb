//! Exact polynomial and truncated power series arithmetic, plus the
//! generating-function identity checks that tie partition counts to Bott's
//! formula.
//!
//! Coefficients are unbounded integers throughout; division by `(1 - t^k)`
//! is the prefix recurrence `c'_i = c_i + c'_{i-k}` and is always exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::AffineType;
use crate::segments::{ColoredPartition, Part, SegmentSystem};
use crate::{Error, Result};

/// Dense integer polynomial with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 - t^k`.
    pub fn one_minus_tk(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = BigInt::one();
        c[k] = -BigInt::one();
        IntPolynomial { coeffs: c }
    }

    /// `1 + t^k`.
    pub fn one_plus_tk(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = BigInt::one();
        c[k] = BigInt::one();
        IntPolynomial { coeffs: c }
    }

    /// `1 + t + ... + t^k`.
    pub fn geometric(k: usize) -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one(); k + 1],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![BigInt::zero(); len];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in other.coeffs.iter().enumerate() {
            c[i] += v;
        }
        Self::from_coeffs(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(c)
    }

    pub fn mul_tk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: c }
    }

    /// Exact division by `1 - t^k`; panics if the division leaves a remainder.
    pub fn div_one_minus_tk_exact(&self, k: usize) -> Self {
        assert!(k > 0);
        if self.is_zero() {
            return Self::zero();
        }
        // (1 - t^k) * q = self  =>  q_i = self_i + q_{i-k}
        let deg = self.coeffs.len() - 1;
        assert!(deg >= k, "division by 1 - t^{k} cannot be exact");
        let qdeg = deg - k;
        let mut q = vec![BigInt::zero(); qdeg + 1];
        for i in 0..=qdeg {
            let prev = if i >= k {
                q[i - k].clone()
            } else {
                BigInt::zero()
            };
            q[i] = &self.coeffs[i] + prev;
        }
        // Verify the top k coefficients cancel.
        for i in qdeg + 1..=deg {
            let prev = if i >= k {
                q[i - k].clone()
            } else {
                BigInt::zero()
            };
            assert!(
                (&self.coeffs[i] + prev).is_zero(),
                "inexact division by 1 - t^{k}"
            );
        }
        Self::from_coeffs(q)
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// Coefficients `c_0 .. c_N` of a power series truncated at degree `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.trunc(), other.trunc());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn add_to_coeff(&mut self, i: usize, v: &BigInt) {
        if i < self.coeffs.len() {
            self.coeffs[i] += v;
        }
    }

    /// Multiply in place by `1/(1 - t^k)` via the prefix recurrence.
    pub fn div_one_minus_tk(&mut self, k: usize) {
        assert!(k > 0);
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] += prev;
        }
    }

    pub fn mul_poly(&self, p: &IntPolynomial) -> Self {
        let trunc = self.trunc();
        let mut out = Self::zero(trunc);
        for (j, b) in p.coeffs().iter().enumerate() {
            if b.is_zero() || j > trunc {
                continue;
            }
            for i in 0..=trunc - j {
                if !self.coeffs[i].is_zero() {
                    out.coeffs[i + j] += &self.coeffs[i] * b;
                }
            }
        }
        out
    }

    pub fn to_u64_vec(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .map(|c| u64::try_from(c.clone()).expect("coefficient fits u64"))
            .collect()
    }
}

/// A rational function `num / ∏ (1 - t^k)^m`, compared exactly by
/// cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalForm {
    pub numerator: IntPolynomial,
    /// `(k, multiplicity)` factors of the denominator.
    pub denominator: Vec<(usize, usize)>,
}

impl RationalForm {
    pub fn new(numerator: IntPolynomial, denominator: Vec<(usize, usize)>) -> Self {
        RationalForm {
            numerator,
            denominator,
        }
    }

    pub fn denominator_poly(&self) -> IntPolynomial {
        let mut d = IntPolynomial::one();
        for &(k, m) in &self.denominator {
            for _ in 0..m {
                d = d.mul(&IntPolynomial::one_minus_tk(k));
            }
        }
        d
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, other: &RationalForm) -> bool {
        self.numerator.mul(&other.denominator_poly())
            == other.numerator.mul(&self.denominator_poly())
    }

    /// Expand to a truncated series.
    pub fn series(&self, trunc: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::one(trunc).mul_poly(&self.numerator);
        for &(k, m) in &self.denominator {
            for _ in 0..m {
                s.div_one_minus_tk(k);
            }
        }
        s
    }
}

/// Gaussian binomial `[n choose k]_t`: exact quotient of t-factorials.
pub fn t_binomial(n: usize, k: usize) -> IntPolynomial {
    assert!(k <= n);
    let mut p = IntPolynomial::one();
    // ∏_{i=1}^{k} (1 - t^{n-k+i}) / (1 - t^i), multiplied then divided so the
    // intermediate quotients stay polynomial.
    for i in 1..=k {
        p = p.mul(&IntPolynomial::one_minus_tk(n - k + i));
        p = p.div_one_minus_tk_exact(i);
    }
    p
}

/// Number of affine colored partitions of each size `0..=trunc`, by dynamic
/// programming over the allowed-pair table.
pub fn partition_series(system: &SegmentSystem, trunc: usize) -> TruncatedSeries {
    let parts = system.parts();
    let np = parts.len();
    // allowed_into[q] = indices p such that (parts[p], parts[q]) is allowed,
    // i.e. p may be appended below q in the partition.
    let mut allowed_into: Vec<Vec<usize>> = vec![vec![]; np];
    for (q, &pq) in parts.iter().enumerate() {
        for (p, &pp) in parts.iter().enumerate() {
            if system.allowed_parts(pp, pq) {
                allowed_into[q].push(p);
            }
        }
    }
    // f[k][p] = number of partitions of size k whose smallest part is parts[p].
    let mut f: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); np]; trunc + 1];
    for (p, part) in parts.iter().enumerate() {
        let v = part.value as usize;
        if v <= trunc {
            f[v][p] += 1;
        }
    }
    for k in 1..=trunc {
        for q in 0..np {
            if f[k][q].is_zero() {
                continue;
            }
            let fkq = f[k][q].clone();
            for &p in &allowed_into[q] {
                let v = parts[p].value as usize;
                if k + v <= trunc {
                    f[k + v][p] += &fkq;
                }
            }
        }
    }
    let mut s = TruncatedSeries::zero(trunc);
    s.add_to_coeff(0, &BigInt::one());
    for (k, row) in f.iter().enumerate().skip(1) {
        let total: BigInt = row.iter().sum();
        s.add_to_coeff(k, &total);
    }
    s
}

/// Outcome of one closed-form identity check.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub lhs: RationalForm,
    pub rhs: RationalForm,
    pub holds: bool,
}

/// `∏(1+x^i, i<n) / ∏(1-x^i, n≤i≤2n-1)` against Bott's formula for `B_n`.
pub fn closed_form_b(n: usize) -> Result<IdentityReport> {
    if n < 3 {
        return Err(Error::RankOutOfRange {
            family: "B",
            rank: n,
        });
    }
    let mut num = IntPolynomial::one();
    for i in 1..n {
        num = num.mul(&IntPolynomial::one_plus_tk(i));
    }
    let lhs = RationalForm::new(num, (n..=2 * n - 1).map(|k| (k, 1)).collect());
    let rhs = bott_form(AffineType::new(crate::cartan::Family::B, n)?);
    let holds = lhs.equals(&rhs);
    Ok(IdentityReport { lhs, rhs, holds })
}

/// `∏(1+x^i, i≤n) / ∏(1-x^i, n+1≤i≤2n)` against Bott's formula for `C_n`.
pub fn closed_form_c(n: usize) -> Result<IdentityReport> {
    if n < 2 {
        return Err(Error::RankOutOfRange {
            family: "C",
            rank: n,
        });
    }
    let mut num = IntPolynomial::one();
    for i in 1..=n {
        num = num.mul(&IntPolynomial::one_plus_tk(i));
    }
    let lhs = RationalForm::new(num, (n + 1..=2 * n).map(|k| (k, 1)).collect());
    let rhs = bott_form(AffineType::new(crate::cartan::Family::C, n)?);
    let holds = lhs.equals(&rhs);
    Ok(IdentityReport { lhs, rhs, holds })
}

/// `∏(1+x^i, i≤n-1) / ∏(1-x^i, n-1≤i≤2n-2)` against Bott's formula for `D_n`,
/// whose right side carries the extra `(1-x^{n-1})` factor.
pub fn closed_form_d(n: usize) -> Result<IdentityReport> {
    if n < 4 {
        return Err(Error::RankOutOfRange {
            family: "D",
            rank: n,
        });
    }
    let mut num = IntPolynomial::one();
    for i in 1..=n - 1 {
        num = num.mul(&IntPolynomial::one_plus_tk(i));
    }
    let lhs = RationalForm::new(num, (n - 1..=2 * n - 2).map(|k| (k, 1)).collect());
    let rhs = bott_form(AffineType::new(crate::cartan::Family::D, n)?);
    let holds = lhs.equals(&rhs);
    Ok(IdentityReport { lhs, rhs, holds })
}

/// Bott's formula as a rational form `1 / ∏(1 - t^{e_i})`.
pub fn bott_form(ty: AffineType) -> RationalForm {
    let mut denom: Vec<(usize, usize)> = vec![];
    for e in ty.exponents() {
        match denom.iter_mut().find(|(k, _)| *k == e) {
            Some((_, m)) => *m += 1,
            None => denom.push((e, 1)),
        }
    }
    RationalForm::new(IntPolynomial::one(), denom)
}

/// The chain expansion `Σ t^{|λ|}/D(λ)` over strictly decreasing chains in the
/// allowed-part poset, with `D(j^c) = (1 - t^j)` for repeatable parts.
pub fn chain_sum_genfun(
    system: &SegmentSystem,
    trunc: usize,
    chain_cap: usize,
) -> Result<TruncatedSeries> {
    let parts = system.parts();
    let np = parts.len();
    let mut allowed_into: Vec<Vec<usize>> = vec![vec![]; np];
    for (q, &pq) in parts.iter().enumerate() {
        for (p, &pp) in parts.iter().enumerate() {
            if p != q && system.allowed_parts(pp, pq) {
                allowed_into[q].push(p);
            }
        }
    }
    let mut total = TruncatedSeries::one(trunc); // empty chain
    let mut count = 0usize;
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![]; // (top part, size, repeatables)
    for (p, part) in parts.iter().enumerate() {
        stack.push((p, part.value as usize, repeat_factor(system, *part)));
    }
    while let Some((q, size, reps)) = stack.pop() {
        count += 1;
        if count > chain_cap {
            return Err(Error::ResourceCap {
                what: "chain_sum_genfun",
                cap: chain_cap,
            });
        }
        if size <= trunc {
            let mut term = TruncatedSeries::zero(trunc);
            term.add_to_coeff(size, &BigInt::one());
            for &k in &reps {
                term.div_one_minus_tk(k);
            }
            total.add_assign(&term);
        } else {
            // Every extension is larger still; the term contributes nothing.
            continue;
        }
        for &p in &allowed_into[q] {
            let mut reps2 = reps.clone();
            reps2.extend(repeat_factor(system, parts[p]));
            stack.push((p, size + parts[p].value as usize, reps2));
        }
    }
    Ok(total)
}

fn repeat_factor(system: &SegmentSystem, p: Part) -> Vec<usize> {
    if system.repeatable(p) {
        vec![p.value as usize]
    } else {
        vec![]
    }
}

/// The `NR`/`NRE` decomposition of the F₄ affine partitions and the resulting
/// identity with Bott's formula.
#[derive(Debug, Clone)]
pub struct F4AppendixReport {
    pub nr: Vec<ColoredPartition>,
    pub nre: Vec<ColoredPartition>,
    pub nr_coeffs: Vec<u64>,
    pub nre_coeffs: Vec<u64>,
    pub nr_max_size: usize,
    pub nr_max_partitions: Vec<ColoredPartition>,
    pub identity_holds: bool,
}

/// Computes `NR` (affine partitions with no part in {11¹, 14, 15, 16}),
/// `NRE` (those compatible with inserting an 11¹), their rank vectors, and
/// checks the resulting rational identity against Bott's formula.
pub fn f4_appendix_data() -> Result<F4AppendixReport> {
    let ty: AffineType = "F4".parse()?;
    let system = SegmentSystem::get(ty)?;
    let excluded = [
        Part {
            value: 11,
            color: 1,
        },
        Part {
            value: 14,
            color: 0,
        },
        Part {
            value: 15,
            color: 0,
        },
        Part {
            value: 16,
            color: 0,
        },
    ];
    let kept: Vec<Part> = system
        .parts()
        .iter()
        .copied()
        .filter(|p| !excluded.contains(p))
        .collect();
    // None of the kept parts is repeatable, so NR partitions are strictly
    // decreasing and the enumeration is finite.
    for &p in &kept {
        assert!(!system.repeatable(p), "NR parts must be non-repeatable");
    }
    let mut nr: Vec<Vec<Part>> = vec![vec![]];
    let mut stack: Vec<Vec<Part>> = kept.iter().map(|&p| vec![p]).collect();
    while let Some(chain) = stack.pop() {
        nr.push(chain.clone());
        let last = *chain.last().unwrap();
        for &p in &kept {
            if system.allowed_parts(p, last) {
                let mut c = chain.clone();
                c.push(p);
                stack.push(c);
            }
        }
    }
    let eleven1 = Part {
        value: 11,
        color: 1,
    };
    let is_nre = |parts: &[Part]| -> bool {
        // 11¹ can be inserted at position i (above parts[i..], below parts[..i]).
        (0..=parts.len()).any(|i| {
            let above_ok = i == 0 || system.allowed_parts(eleven1, parts[i - 1]);
            let below_ok = i == parts.len() || system.allowed_parts(parts[i], eleven1);
            above_ok && below_ok
        })
    };
    let nre: Vec<Vec<Part>> = nr.iter().filter(|p| is_nre(p)).cloned().collect();

    let max_size = nr
        .iter()
        .map(|p| p.iter().map(|q| q.value as usize).sum::<usize>())
        .max()
        .unwrap_or(0);
    let size = |p: &Vec<Part>| p.iter().map(|q| q.value as usize).sum::<usize>();
    let mut nr_coeffs = vec![0u64; max_size + 1];
    for p in &nr {
        nr_coeffs[size(p)] += 1;
    }
    let mut nre_coeffs = vec![0u64; max_size + 1];
    for p in &nre {
        nre_coeffs[size(p)] += 1;
    }
    let max_partitions: Vec<Vec<Part>> =
        nr.iter().filter(|p| size(p) == max_size).cloned().collect();

    // G_NR / ((1-t¹⁴)(1-t¹⁵)(1-t¹⁶)) + t¹¹ G_NRE / ((1-t¹¹)(1-t¹⁴)(1-t¹⁵)(1-t¹⁶))
    // must equal 1 / ((1-t)(1-t⁵)(1-t⁷)(1-t¹¹)).
    let poly = |coeffs: &[u64]| {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    };
    let g_nr = poly(&nr_coeffs);
    let g_nre = poly(&nre_coeffs);
    let lhs_num = g_nr
        .mul(&IntPolynomial::one_minus_tk(11))
        .add(&g_nre.mul_tk(11));
    let lhs = RationalForm::new(lhs_num, vec![(11, 1), (14, 1), (15, 1), (16, 1)]);
    let rhs = bott_form(ty);
    let identity_holds = lhs.equals(&rhs);

    let as_partition = |parts: &Vec<Part>| ColoredPartition::new(ty, parts.clone()).unwrap();
    let mut nr_p: Vec<ColoredPartition> = nr.iter().map(as_partition).collect();
    nr_p.sort();
    let mut nre_p: Vec<ColoredPartition> = nre.iter().map(as_partition).collect();
    nre_p.sort();
    Ok(F4AppendixReport {
        nr: nr_p,
        nre: nre_p,
        nr_coeffs,
        nre_coeffs,
        nr_max_size: max_size,
        nr_max_partitions: max_partitions.iter().map(as_partition).collect(),
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_basics() {
        let p = IntPolynomial::from_i64(&[1, 2, 1]);
        let q = IntPolynomial::one_plus_tk(1);
        assert_eq!(q.mul(&q), p);
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_palindromic());
        assert!(!IntPolynomial::from_i64(&[1, 2]).is_palindromic());
        // (1 - t³)/(1 - t) = 1 + t + t².
        assert_eq!(
            IntPolynomial::one_minus_tk(3).div_one_minus_tk_exact(1),
            IntPolynomial::geometric(2)
        );
    }

    #[test]
    fn exact_division_round_trip() {
        let p = IntPolynomial::from_i64(&[1, 0, 2, 5, 0, 7]);
        for k in 1..4 {
            let q = p.mul(&IntPolynomial::one_minus_tk(k));
            assert_eq!(q.div_one_minus_tk_exact(k), p);
        }
    }

    #[test]
    fn t_binomial_examples() {
        assert_eq!(t_binomial(2, 1), IntPolynomial::from_i64(&[1, 1]));
        // [4 choose 2]_t = 1 + t + 2t² + t³ + t⁴ (partitions in a 2×2 box).
        assert_eq!(t_binomial(4, 2), IntPolynomial::from_i64(&[1, 1, 2, 1, 1]));
        for n in 0..=8 {
            for k in 0..=n {
                let b = t_binomial(n, k);
                assert!(b.is_palindromic(), "[{n} choose {k}]_t");
                assert_eq!(b.coeff_sum(), BigInt::from(binomial(n, k)), "column sum");
            }
        }
    }

    fn binomial(n: usize, k: usize) -> u64 {
        let mut r = 1u64;
        for i in 0..k {
            r = r * (n - i) as u64 / (i + 1) as u64;
        }
        r
    }

    #[test]
    fn rational_form_equality() {
        // (1 - t²)/( (1-t) ) == (1 + t)/1
        let a = RationalForm::new(IntPolynomial::one_minus_tk(2), vec![(1, 1)]);
        let b = RationalForm::new(IntPolynomial::one_plus_tk(1), vec![]);
        assert!(a.equals(&b));
        let c = RationalForm::new(IntPolynomial::one(), vec![]);
        assert!(!a.equals(&c));
    }

    #[test]
    fn series_division_matches_geometric() {
        let mut s = TruncatedSeries::one(10);
        s.div_one_minus_tk(3);
        assert_eq!(s.to_u64_vec(), vec![1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0]);
    }
}
