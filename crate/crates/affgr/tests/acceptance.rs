//! Acceptance suite: one test per criterion, each printing a PASS line after
//! all of its assertions hold. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines).

use std::collections::BTreeSet;

use affgr::cartan::{AffineType, Family, Gen};
use affgr::cli::{stated_mw, MwClaim};
use affgr::segments::{segments_compute, segments_table, ColoredPartition, Part, SegmentSystem};
use affgr::series;
use affgr::smoothness::{
    self, empirical_mw, empirical_palindromics, predicted_palindromics, BruhatPoset,
    PoincarePolynomial,
};
use affgr::typea;
use affgr::weyl::{enumerate_quotient, GroupElement, QuotientElement};

fn ty(s: &str) -> AffineType {
    s.parse().unwrap()
}

fn qe(t: AffineType, word: &[Gen]) -> QuotientElement {
    QuotientElement::new(GroupElement::from_word(t, word)).unwrap()
}

fn partition(t: AffineType, text: &str) -> ColoredPartition {
    ColoredPartition::parse(t, text).unwrap()
}

const CAP: usize = 1_000_000;

/// Criterion 1: BFS layer sizes = Bott series coefficients = affine partition
/// counts, exactly, for the full type matrix.
#[test]
fn criterion_1_bijection_counts() {
    let matrix: &[(&str, usize)] = &[
        ("A2", 12),
        ("A3", 12),
        ("B3", 12),
        ("B4", 12),
        ("C2", 12),
        ("C3", 12),
        ("D4", 12),
        ("G2", 16),
        ("F4", 16),
    ];
    for &(name, max_len) in matrix {
        let t = ty(name);
        let layers = enumerate_quotient(t, max_len, CAP).unwrap();
        let bott = t.bott_series(max_len);
        let system = SegmentSystem::get(t).unwrap();
        let counts = series::partition_series(&system, max_len);
        for l in 0..=max_len {
            let layer = layers.get(l).map_or(0, |v| v.len());
            assert_eq!(
                num_bigint::BigInt::from(layer),
                *bott.coeff(l),
                "{name}: layer {l} vs Bott"
            );
            assert_eq!(
                bott.coeff(l),
                counts.coeff(l),
                "{name}: Bott vs partitions at {l}"
            );
        }
    }
    println!("PASS criterion 1: bijection counts (layers = Bott = partitions) on the full matrix");
}

/// Criterion 2: segment tables match the algorithmic enumeration; counts per
/// family are the documented ones.
#[test]
fn criterion_2_segment_tables() {
    // segments_compute cross-checks the element sets against the parabolic
    // quotient BFS internally and fails loudly on disagreement.
    for n in 3..=6 {
        let t = AffineType::new(Family::B, n).unwrap();
        let computed = segments_compute(t, CAP).unwrap();
        assert_eq!(computed.len(), 2 * (2 * n - 1), "B{n} segment count");
        check_table_equals_compute(t);
    }
    for n in 2..=6 {
        let t = AffineType::new(Family::C, n).unwrap();
        assert_eq!(segments_compute(t, CAP).unwrap().len(), 2 * n, "C{n}");
        check_table_equals_compute(t);
    }
    for n in 4..=6 {
        let t = AffineType::new(Family::D, n).unwrap();
        // Lengths 1..2n-2 with two colors at n-1, both parities.
        assert_eq!(segments_compute(t, CAP).unwrap().len(), 4 * n - 2, "D{n}");
        check_table_equals_compute(t);
    }
    assert_eq!(segments_compute(ty("G2"), CAP).unwrap().len(), 6);
    check_table_equals_compute(ty("G2"));
    let f4 = segments_compute(ty("F4"), CAP).unwrap();
    assert_eq!(f4.len(), 24, "F4 has 24 segments");
    check_table_equals_compute(ty("F4"));
    // The verbatim words of e:segments.f4 are the stored table words.
    let table = segments_table(ty("F4")).unwrap();
    let long = table.iter().find(|s| s.len == 11 && s.color == 1).unwrap();
    assert_eq!(long.word, vec![4, 3, 2, 1, 3, 2, 4, 3, 2, 1, 0]);
    for n in 1..=5 {
        let t = AffineType::new(Family::A, n).unwrap();
        assert_eq!(segments_compute(t, CAP).unwrap().len(), n * (n + 1), "A{n}");
    }
    let e8 = SegmentSystem::get(ty("E8")).unwrap();
    assert_eq!(e8.segments().len(), 240, "E8 has 240 segments");
    println!(
        "PASS criterion 2: segment tables (B/C/D n≤6, G2=6, F4=24 verbatim, A=n(n+1), E8=240)"
    );
}

fn check_table_equals_compute(t: AffineType) {
    let table = segments_table(t).unwrap();
    let computed = segments_compute(t, CAP).unwrap();
    assert_eq!(table.len(), computed.len(), "{t} count");
    for ts in &table {
        let cs = computed
            .iter()
            .find(|c| c.len == ts.len && c.color == ts.color && c.parity == ts.parity)
            .unwrap_or_else(|| panic!("{t}: missing segment {ts}"));
        assert_eq!(cs.element(), ts.element(), "{t}: element of {ts}");
    }
}

/// Criterion 3: allowed-pair lists, exact.
#[test]
fn criterion_3_allowed_pairs() {
    // G₂: the known 12-pair list.
    let g2 = SegmentSystem::get(ty("G2")).unwrap();
    let expected: BTreeSet<(u32, u32)> = [
        (1, 4),
        (1, 5),
        (1, 6),
        (2, 5),
        (2, 6),
        (3, 5),
        (3, 6),
        (4, 5),
        (4, 6),
        (5, 5),
        (5, 6),
        (6, 6),
    ]
    .into();
    let mut got = BTreeSet::new();
    for a in 1..=6 {
        for b in 1..=6 {
            if g2.allowed_parts(Part { value: a, color: 0 }, Part { value: b, color: 0 }) {
                got.insert((a, b));
            }
        }
    }
    assert_eq!(got, expected, "G2 allowed pairs");

    // F₄: the full allowed-pattern list, exactly.
    let f4 = SegmentSystem::get(ty("F4")).unwrap();
    let expected = f4_pattern_list();
    let mut got = BTreeSet::new();
    for &a in f4.parts() {
        for &b in f4.parts() {
            if f4.allowed_parts(a, b) {
                got.insert(((a.value, a.color), (b.value, b.color)));
            }
        }
    }
    assert_eq!(got.len(), 144);
    assert_eq!(got, expected, "F4 allowed patterns");

    // B: (j,k) allowed iff j<k or n ≤ j=k; C: j<k or n < j=k; D adds the
    // matching color constraint.
    for n in 3..=6 {
        let t = AffineType::new(Family::B, n).unwrap();
        let sys = SegmentSystem::get(t).unwrap();
        for j in 1..=(2 * n - 1) as u32 {
            for k in 1..=(2 * n - 1) as u32 {
                let rule = j < k || (j == k && j as usize >= n);
                let got =
                    sys.allowed_parts(Part { value: j, color: 0 }, Part { value: k, color: 0 });
                assert_eq!(got, rule, "B{n} pair ({j},{k})");
            }
        }
    }
    for n in 2..=6 {
        let t = AffineType::new(Family::C, n).unwrap();
        let sys = SegmentSystem::get(t).unwrap();
        for j in 1..=(2 * n) as u32 {
            for k in 1..=(2 * n) as u32 {
                let rule = j < k || (j == k && j as usize > n);
                let got =
                    sys.allowed_parts(Part { value: j, color: 0 }, Part { value: k, color: 0 });
                assert_eq!(got, rule, "C{n} pair ({j},{k})");
            }
        }
    }
    for n in 4..=6 {
        let t = AffineType::new(Family::D, n).unwrap();
        let sys = SegmentSystem::get(t).unwrap();
        for &a in sys.parts() {
            for &b in sys.parts() {
                let value_rule =
                    a.value < b.value || (a.value == b.value && a.value as usize >= n - 1);
                let color_rule =
                    a.value as usize != n - 1 || b.value as usize != n - 1 || a.color == b.color;
                assert_eq!(
                    sys.allowed_parts(a, b),
                    value_rule && color_rule,
                    "D{n} pair ({a:?},{b:?})"
                );
            }
        }
    }
    println!("PASS criterion 3: allowed pairs (G2 list, F4 pattern list, B/C/D rules n≤6)");
}

fn f4_pattern_list() -> BTreeSet<((u32, u32), (u32, u32))> {
    // The 144 allowed patterns; `v^1` is color 1.
    let rows: &[(&str, &[&str])] = &[
        ("16", &["16"]),
        ("15", &["16", "15"]),
        ("14", &["16", "15", "14"]),
        ("13", &["16", "15", "14"]),
        ("12", &["16", "15", "14"]),
        ("12^1", &["16", "15", "14", "13"]),
        ("11", &["16", "15", "14", "13"]),
        ("11^1", &["16", "15", "14", "13", "12^1", "11^1"]),
        ("10", &["16", "15", "14", "13"]),
        ("10^1", &["16", "15", "14", "13", "12^1", "11^1"]),
        ("9", &["16", "15", "14", "13", "12"]),
        ("9^1", &["16", "15", "14", "13", "12^1", "11^1"]),
        ("8", &["16", "15", "14", "13", "12^1", "11^1"]),
        ("8^1", &["16", "15", "14", "13", "12"]),
        ("7", &["16", "15", "14", "13", "12^1", "11^1"]),
        ("7^1", &["16", "15", "14", "13", "12", "12^1", "11^1"]),
        ("6", &["16", "15", "14", "13", "12^1", "11^1"]),
        ("6^1", &["16", "15", "14", "13", "12", "12^1", "11^1"]),
        ("5", &["16", "15", "14", "13", "12", "12^1", "11^1"]),
        (
            "5^1",
            &["16", "15", "14", "13", "12", "12^1", "11", "11^1", "10^1"],
        ),
        (
            "4",
            &["16", "15", "14", "13", "12", "12^1", "11", "11^1", "10^1"],
        ),
        (
            "3",
            &["16", "15", "14", "13", "12", "12^1", "11", "11^1", "10^1"],
        ),
        (
            "2",
            &[
                "16", "15", "14", "13", "12", "12^1", "11", "11^1", "10", "10^1", "9^1",
            ],
        ),
        (
            "1",
            &[
                "16", "15", "14", "13", "12", "12^1", "11", "11^1", "10", "10^1", "9", "9^1", "8",
                "7", "6",
            ],
        ),
    ];
    let parse = |s: &str| -> (u32, u32) {
        match s.split_once('^') {
            Some((v, c)) => (v.parse().unwrap(), c.parse().unwrap()),
            None => (s.parse().unwrap(), 0),
        }
    };
    let mut out = BTreeSet::new();
    for (small, larges) in rows {
        for large in *larges {
            out.insert((parse(small), parse(large)));
        }
    }
    out
}

/// Criterion 4: the worked labeling examples round-trip, and the B₄ Bruhat
/// cover (5,2,1) ⋗ (7) holds.
#[test]
fn criterion_4_worked_examples() {
    let cases: &[(&str, &[Gen], &str)] = &[
        (
            "B4",
            &[
                0, 3, 2, 1, 3, 4, 3, 2, 0, 3, 4, 3, 2, 1, 0, 2, 3, 4, 3, 2, 0,
            ],
            "7,5,5,3,1",
        ),
        (
            "C4",
            &[
                0, 2, 1, 0, 4, 3, 2, 1, 0, 4, 3, 2, 1, 0, 2, 3, 4, 3, 2, 1, 0,
            ],
            "7,5,5,3,1",
        ),
        (
            "D6",
            &[
                0, 3, 2, 1, 6, 4, 3, 2, 0, 5, 4, 3, 2, 1, 4, 6, 5, 4, 3, 2, 0,
            ],
            "7,5,5,3,1",
        ),
    ];
    for &(name, word, expected) in cases {
        let t = ty(name);
        let system = SegmentSystem::get(t).unwrap();
        let w = qe(t, word);
        assert_eq!(w.len(), word.len(), "{name}: example word is reduced");
        let lambda = system.pi(&w).unwrap();
        assert_eq!(lambda, partition(t, expected), "{name}: π(w)");
        assert_eq!(system.pi_inv(&lambda).unwrap(), w, "{name}: π⁻¹ ∘ π");
        let factors = system.factor(&w).unwrap();
        let lens: Vec<u32> = factors.iter().map(|s| s.len).collect();
        assert_eq!(lens, vec![1, 3, 5, 5, 7], "{name}: factor lengths");
    }
    // D₆ colors: the 5-parts carry the same color (b, printed plain).
    let t = ty("D6");
    let system = SegmentSystem::get(t).unwrap();
    let lambda = system
        .pi(&qe(
            t,
            &[
                0, 3, 2, 1, 6, 4, 3, 2, 0, 5, 4, 3, 2, 1, 4, 6, 5, 4, 3, 2, 0,
            ],
        ))
        .unwrap();
    assert_eq!(lambda.parts()[1], Part { value: 5, color: 0 });
    assert_eq!(lambda.parts()[2], Part { value: 5, color: 0 });
    // Bruhat cover: (5,2,1) covers (7) in B₄ with length gap 1.
    let t = ty("B4");
    let poset = BruhatPoset::build(t, 8, CAP).unwrap();
    let big = poset.id_of_partition(&partition(t, "5,2,1")).unwrap();
    let small = poset.id_of_partition(&partition(t, "7")).unwrap();
    assert_eq!(poset.len_of(big), 8);
    assert_eq!(poset.len_of(small), 7);
    assert!(
        poset.covers_down(big).contains(&small),
        "(5,2,1) covers (7)"
    );
    println!("PASS criterion 4: worked labeling examples (B4/C4/D6) and the B4 Bruhat cover");
}

/// Criterion 5: the type-A maps 𝔠, 𝔟, 𝔞 with their known values;
/// 𝔞∘𝔟∘𝔠 = id and Lascoux order ≡ lifting order for ℓ ≤ 10, n ≤ 4.
#[test]
fn criterion_5_type_a_maps() {
    let a3 = ty("A3");
    let w = qe(a3, &[0, 3, 2, 1, 2, 3, 0]);
    let core = typea::c_map(&w).unwrap();
    assert_eq!(core.rows(), &[5, 2, 1, 1, 1]);
    assert_eq!(typea::b_map(&core).rows(), &[3, 1, 1, 1, 1]);
    let mu = typea::BoundedPartition::new(vec![3, 3], 3).unwrap();
    assert_eq!(typea::a_map(a3, &mu).unwrap(), qe(a3, &[1, 0, 3, 2, 1, 0]));
    for n in 1..=4 {
        let t = AffineType::new(Family::A, n).unwrap();
        let layers = enumerate_quotient(t, 10, CAP).unwrap();
        let all: Vec<&QuotientElement> = layers.iter().flatten().collect();
        for w in &all {
            let bounded = typea::b_map(&typea::c_map(w).unwrap());
            assert_eq!(bounded.size(), w.len(), "A{n}: |𝔟𝔠(w)| = ℓ(w)");
            assert_eq!(&&typea::a_map(t, &bounded).unwrap(), w, "A{n}: 𝔞𝔟𝔠 = id");
        }
        // Lascoux core containment vs the lifting recursion, all pairs.
        let mut ctx = affgr::weyl::BruhatContext::new();
        for v in &all {
            for w in &all {
                let via_cores = typea::core_leq(v, w).unwrap();
                let via_lifting = ctx.leq(v.element(), w.element());
                assert_eq!(via_cores, via_lifting, "A{n}: {v} vs {w}");
            }
        }
    }
    println!(
        "PASS criterion 5: type A maps (known values, 𝔞∘𝔟∘𝔠 = id, Lascoux ≡ lifting, ℓ≤10, n≤4)"
    );
}

/// Criterion 6: Poincaré polynomial fixtures.
#[test]
fn criterion_6_poincare_fixtures() {
    // B₃, w = s3 s2 s0 s3 s2 s1 s3 s2 s0: the known degree-9 polynomial.
    let t = ty("B3");
    let poset = BruhatPoset::build(t, 9, CAP).unwrap();
    let id = poset.id_of_partition(&partition(t, "3,3,3")).unwrap();
    assert_eq!(
        poset.element(id).element(),
        &GroupElement::from_word(t, &[3, 2, 0, 3, 2, 1, 3, 2, 0])
    );
    assert_eq!(
        poset.poincare(id),
        PoincarePolynomial::from_u64(&[1, 1, 1, 2, 2, 2, 2, 1, 1, 1])
    );

    // Staircases (k,...,1) give ∏ (1+t^j).
    let staircases: &[(&str, u32)] = &[
        ("B3", 2),
        ("B4", 2),
        ("B4", 3),
        ("C2", 2),
        ("C3", 3),
        ("C4", 4),
        ("D4", 3),
        ("D5", 4),
    ];
    for &(name, k) in staircases {
        let t = ty(name);
        let size = (k * (k + 1) / 2) as usize;
        let poset = BruhatPoset::build(t, size, CAP).unwrap();
        let values: Vec<u32> = (1..=k).rev().collect();
        let lambda = ColoredPartition::from_values(t, &values).unwrap();
        let p = poset
            .poincare(poset.id_of_partition(&lambda).unwrap())
            .to_int_polynomial();
        let mut expected = series::IntPolynomial::one();
        for j in 1..=k as usize {
            expected = expected.mul(&series::IntPolynomial::one_plus_tk(j));
        }
        assert_eq!(p, expected, "{name} staircase k={k}");
    }

    // D single rows: the full row (2n-2) doubles the coefficient at t^{n-1}.
    for n in [4usize, 5] {
        let t = AffineType::new(Family::D, n).unwrap();
        let poset = BruhatPoset::build(t, 2 * n - 2, CAP).unwrap();
        let lambda = ColoredPartition::from_values(t, &[(2 * n - 2) as u32]).unwrap();
        let p = poset.poincare(poset.id_of_partition(&lambda).unwrap());
        let mut expected = vec![1u64; 2 * n - 1];
        expected[n - 1] = 2;
        assert_eq!(p, PoincarePolynomial::from_u64(&expected), "D{n} row 2n-2");
        assert!(p.is_palindromic());
        // Intermediate rows n ≤ j < 2n-2 carry the same doubled coefficient
        // and are not palindromic.
        for j in n..2 * n - 2 {
            let lambda = ColoredPartition::from_values(t, &[j as u32]).unwrap();
            let p = poset.poincare(poset.id_of_partition(&lambda).unwrap());
            let mut expected = vec![1u64; j + 1];
            expected[n - 1] = 2;
            assert_eq!(p, PoincarePolynomial::from_u64(&expected), "D{n} row {j}");
            assert!(!p.is_palindromic());
        }
    }

    // Spirals give Gaussian binomials: P = [n+k choose k]_t.
    for n in 2..=4usize {
        let t = AffineType::new(Family::A, n).unwrap();
        let poset = BruhatPoset::build(t, 4 * n, CAP).unwrap();
        for k in 1..=4usize {
            for dir in [
                typea::SpiralDirection::Clockwise,
                typea::SpiralDirection::CounterClockwise,
            ] {
                let w = typea::spiral(t, k, dir).unwrap();
                let id = poset.id_of(&w).unwrap();
                assert_eq!(
                    poset.poincare(id).to_int_polynomial(),
                    series::t_binomial(n + k, k),
                    "A{n} spiral k={k} {dir:?}"
                );
            }
        }
    }

    // E₆ length-16 specials: the known product polynomial.
    let t = ty("E6");
    let poset = BruhatPoset::build(t, 16, CAP).unwrap();
    let expected = series::IntPolynomial::from_i64(&[1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1])
        .mul(&series::IntPolynomial::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
    let specials: Vec<usize> = poset
        .ids_of_len(16)
        .filter(|&id| poset.is_palindromic(id))
        .collect();
    assert_eq!(specials.len(), 2, "two palindromic elements of length 16");
    for id in specials {
        assert_eq!(poset.poincare(id).to_int_polynomial(), expected);
    }
    println!("PASS criterion 6: Poincaré fixtures (B3 degree 9, staircases, D rows, spirals, E6 specials)");
}

/// Criterion 7: empirical palindromic sets equal the predicted
/// classification, with the expected counts.
#[test]
fn criterion_7_palindromy_classification() {
    let matrix: &[(&str, usize, Option<usize>)] = &[
        ("B3", 12, Some(8)),
        ("B4", 12, Some(10)), // 3n-2
        ("B5", 12, Some(13)),
        ("C2", 12, Some(6)), // 3n
        ("C3", 12, Some(9)),
        ("C4", 12, Some(12)),
        ("D4", 12, Some(9)),
        ("G2", 16, Some(8)),
        ("F4", 16, Some(9)),
        ("A2", 12, None),
        ("A3", 12, None),
    ];
    for &(name, max_len, count) in matrix {
        let t = ty(name);
        let poset = BruhatPoset::build(t, max_len, CAP).unwrap();
        let empirical = empirical_palindromics(&poset);
        let predicted = predicted_palindromics(t, max_len).unwrap();
        assert_eq!(
            empirical, predicted,
            "{name}: palindromic sets (L={max_len})"
        );
        if let Some(c) = count {
            assert_eq!(empirical.len(), c, "{name}: palindromic count");
        }
    }
    // In type A the prediction is exactly cpos plus spirals.
    for name in ["A2", "A3"] {
        let t = ty(name);
        let system = SegmentSystem::get(t).unwrap();
        let poset = BruhatPoset::build(t, 12, CAP).unwrap();
        let mut custom: BTreeSet<ColoredPartition> = BTreeSet::new();
        custom.insert(ColoredPartition::empty(t));
        for w in typea::cpo_elements(t).unwrap() {
            custom.insert(system.pi(&w).unwrap());
        }
        for w in typea::spiral_elements_up_to(t, 12).unwrap() {
            custom.insert(system.pi(&w).unwrap());
        }
        assert_eq!(
            empirical_palindromics(&poset),
            custom,
            "{name} cpos+spirals"
        );
        // Nontrivial cpo count: n(n+1)/2.
        let n = t.rank();
        let cpos = poset
            .all_ids()
            .filter(|&id| poset.len_of(id) > 0 && smoothness::is_cpo(poset.element(id)))
            .count();
        assert_eq!(cpos, n * (n + 1) / 2, "{name} cpo count");
    }
    println!(
        "PASS criterion 7: palindromy classification (counts 8/3n-2/3n/9/8/9, A = cpos+spirals)"
    );
}

/// Criterion 8: empirical m_W versus the stated table, with the D conflict
/// (and the A₂ minimality edge case) reported rather than hidden.
#[test]
fn criterion_8_mw() {
    let matrix: &[(&str, usize)] = &[
        ("A2", 12),
        ("A3", 12),
        ("B3", 12),
        ("B4", 16),
        ("C2", 12),
        ("C3", 12),
        ("G2", 16),
        ("F4", 16),
        ("D4", 12),
        ("D5", 12),
    ];
    for &(name, max_len) in matrix {
        let t = ty(name);
        let poset = BruhatPoset::build(t, max_len, CAP).unwrap();
        let report = empirical_mw(&poset).unwrap();
        match stated_mw(t) {
            MwClaim::Exact(m) => {
                assert_eq!(report.value, m, "{name}: m_W (stated {m})");
            }
            MwClaim::StatedWithDeskValue { stated, desk } => {
                assert_eq!(report.value, desk, "{name}: desk-scale m_W");
                assert!(report.value <= stated, "{name}: stated value certifies");
                println!(
                    "  note {name}: empirical m_W = {desk}; the stated {stated} certifies but has no witness at this rank"
                );
            }
            MwClaim::DConflict { table, corollary } => {
                assert!(
                    report.value == table || report.value == corollary,
                    "{name}: m_W {} matches neither claim",
                    report.value
                );
                let which = if report.value == table {
                    "table (n-2)"
                } else {
                    "corollary (n-1)"
                };
                println!(
                    "  note {name}: empirical m_W = {} resolves the conflicting stated values in favor of the {which} claim",
                    report.value
                );
                assert_eq!(report.value, table, "{name}: the empirical value is n-2");
            }
        }
    }
    // A₁ is a chain: everything is palindromic, matching the stated 0.
    let poset = BruhatPoset::build(ty("A1"), 10, CAP).unwrap();
    assert!(poset.all_ids().all(|id| poset.is_palindromic(id)));
    println!("PASS criterion 8: m_W (exact for A3/B3/B4/C/G2/F4; D resolved to n-2; A2 desk value flagged)");
}

/// Criterion 9: generating-function identities, exact where stated.
#[test]
fn criterion_9_identities() {
    for n in 3..=8 {
        assert!(series::closed_form_b(n).unwrap().holds, "B{n}");
    }
    for n in 2..=8 {
        assert!(series::closed_form_c(n).unwrap().holds, "C{n}");
    }
    for n in 4..=8 {
        assert!(series::closed_form_d(n).unwrap().holds, "D{n}");
    }
    // G₂: (1+t+t²+t³+t⁴+t⁵) / ((1-t⁵)(1-t⁶)) = 1/((1-t)(1-t⁵)), exactly.
    let lhs = series::RationalForm::new(series::IntPolynomial::geometric(5), vec![(5, 1), (6, 1)]);
    let rhs = series::bott_form(ty("G2"));
    assert!(lhs.equals(&rhs), "G2 identity");
    // F₄: the NR/NRE identity with byte-identical coefficient vectors.
    let rep = series::f4_appendix_data().unwrap();
    assert_eq!(rep.nr.len(), 132);
    assert_eq!(rep.nre.len(), 96);
    assert_eq!(
        rep.nr_coeffs,
        vec![
            1, 1, 1, 1, 1, 2, 2, 3, 3, 3, 4, 4, 5, 5, 5, 5, 4, 5, 5, 6, 6, 6, 6, 6, 5, 5, 4, 4, 3,
            2, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1
        ]
    );
    assert_eq!(
        rep.nre_coeffs,
        vec![
            1, 1, 1, 1, 1, 2, 2, 3, 2, 2, 2, 2, 2, 3, 3, 3, 2, 3, 4, 5, 5, 4, 4, 4, 3, 3, 3, 3, 2,
            1, 2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1
        ]
    );
    assert_eq!(rep.nr_max_size, 40);
    assert_eq!(
        rep.nr_max_partitions,
        vec![partition(ty("F4"), "13,12^1,10^1,5^1")]
    );
    assert!(rep.identity_holds, "F4 identity");
    // E types: truncated agreement to degree 60.
    for name in ["E6", "E7", "E8"] {
        let t = ty(name);
        let system = SegmentSystem::get(t).unwrap();
        assert_eq!(
            series::partition_series(&system, 60),
            t.bott_series(60),
            "{name} truncated identity"
        );
    }
    println!("PASS criterion 9: identities (B/C/D closed forms exact to rank 8, G2, F4 NR/NRE, E to degree 60)");
}

/// Criterion 10: the named invariant battery on the standard matrix
/// (the standalone property suite extends these to the full ranges).
#[test]
fn criterion_10_property_battery() {
    // Allowed pairs embed in left weak order, and the weak-order ideal
    // below a segment consists of segments with inherited pairs.
    for name in ["A3", "B4", "C3", "D4", "G2", "F4"] {
        let t = ty(name);
        let sys = SegmentSystem::get(t).unwrap();
        for &a in sys.parts() {
            for &b in sys.parts() {
                if !sys.allowed_parts(a, b) {
                    continue;
                }
                assert!(
                    sys.part_left_leq(a, b),
                    "{name}: pair ({a:?},{b:?}) weak order"
                );
                assert!(a.value <= b.value, "{name}: i ≤ j");
                if a.value == b.value {
                    assert_eq!(a.color, b.color, "{name}: i=j forces equal color");
                }
                // (2): every proper nonidentity weak-order predecessor of a
                // is a segment part whose pair with b is allowed.
                for &u in sys.parts() {
                    if u != a && sys.part_left_leq(u, a) {
                        assert!(sys.allowed_parts(u, b), "{name}: ({u:?},{b:?}) inherited");
                    }
                }
            }
        }
        // The predecessors tested above cover all of the weak-order ideal
        // below a segment: check that every quotient element strictly below
        // a segment in left weak order is itself a segment.
        let max_seg = sys.parts().iter().map(|p| p.value).max().unwrap() as usize;
        let layers = enumerate_quotient(t, max_seg, CAP).unwrap();
        for &a in sys.parts() {
            let ea = sys.part_element(a);
            for layer in layers.iter().take(a.value as usize) {
                for u in layer {
                    if u.is_empty() || u.len() == a.value as usize {
                        continue;
                    }
                    let x = ea.multiply(&u.element().inverse());
                    if x.len() == a.value as usize - u.len() {
                        // u <_L segment(a): must itself be a segment element.
                        let lambda = sys.pi(u).unwrap();
                        assert_eq!(lambda.num_parts(), 1, "{name}: weak ideal is segments");
                    }
                }
            }
        }
    }

    // A product of three segments is canonical iff both consecutive
    // pairs are allowed (checked on all triples at small rank).
    for name in ["A2", "B3", "C2", "G2", "F4"] {
        let t = ty(name);
        let sys = SegmentSystem::get(t).unwrap();
        let parts = sys.parts();
        for &a in parts {
            for &b in parts {
                for &c in parts {
                    let local = sys.allowed_parts(a, b) && sys.allowed_parts(b, c);
                    let lambda = ColoredPartition::new(t, vec![c, b, a]);
                    let global = match lambda {
                        Ok(l) => sys.pi_inv(&l).is_ok(),
                        Err(_) => false,
                    };
                    assert_eq!(local, global, "{name}: triple ({a:?},{b:?},{c:?})");
                }
            }
        }
    }

    // Deletion property over the matrix: deleting one letter from a stored
    // reduced word either drops the length by exactly 1 (a Bruhat cover) or
    // leaves a non-reduced word.
    let mut ctx = affgr::weyl::BruhatContext::new();
    for name in ["A3", "B3", "C2", "D4", "G2"] {
        let t = ty(name);
        for layer in enumerate_quotient(t, 8, CAP).unwrap() {
            for w in layer {
                let word = w.element().word().to_vec();
                for k in 0..word.len() {
                    let mut sub = word.clone();
                    sub.remove(k);
                    let v = GroupElement::from_word(t, &sub);
                    assert!(v.len() < word.len());
                    assert!(
                        (word.len() - 1 - v.len()).is_multiple_of(2),
                        "{name}: deletion parity"
                    );
                    if v.len() + 1 == word.len() {
                        assert!(ctx.leq(&v, w.element()), "{name}: cover after deletion");
                    }
                }
            }
        }
    }

    // Bruhat order axioms: antisymmetry via the complete invariant,
    // transitivity on all triples at small scale, and refinement of length.
    let poset = BruhatPoset::build(ty("B3"), 7, CAP).unwrap();
    for a in poset.all_ids() {
        for b in poset.all_ids() {
            if poset.leq(a, b) && poset.leq(b, a) {
                assert_eq!(a, b, "antisymmetry");
            }
            if poset.leq(a, b) && a != b {
                assert!(poset.len_of(a) < poset.len_of(b), "refines length");
            }
            for c in poset.all_ids() {
                if poset.leq(a, b) && poset.leq(b, c) {
                    assert!(poset.leq(a, c), "transitivity");
                }
            }
        }
    }

    // Core facts: s_i w ∈ W̃^S iff the core has an addable or
    // removable cell of content i; ascents add, descents remove.
    for n in [2usize, 3] {
        let t = AffineType::new(Family::A, n).unwrap();
        for layer in enumerate_quotient(t, 7, CAP).unwrap() {
            for w in layer {
                let core = typea::c_map(&w).unwrap();
                for i in 0..=n as Gen {
                    let up = w.element().left_multiply(i);
                    let stays = up.is_min_rep();
                    let acted = core.r_op(i);
                    assert_eq!(stays, acted != core, "A{n}: core.facts(2) at {i}");
                    if stays && up.len() > w.len() {
                        assert!(acted.size() > core.size(), "A{n}: ascent adds cells");
                    }
                    if stays && up.len() < w.len() {
                        assert!(acted.size() < core.size(), "A{n}: descent removes cells");
                    }
                }
            }
        }
    }

    // The type-A generator relations as element identities for n ≤ 4 (n ≤ 5 in the
    // standalone suite).
    for n in 2..=4usize {
        check_relations_an(n);
    }
    println!("PASS criterion 10: property battery (pair embedding, local products, deletion, Bruhat axioms, core facts, generator relations)");
}

fn check_relations_an(n: usize) {
    let t = AffineType::new(Family::A, n).unwrap();
    let c = |i: usize, j: usize| {
        GroupElement::from_word(t, &affgr::segments::type_a_segment_word(n, i, j))
    };
    for i in 0..=n {
        for j in 1..=n {
            let base = c(i, j);
            for a in 1..=n {
                let lhs = base.left_multiply(a as Gen);
                let rhs = if a < i {
                    if a < n - j {
                        base.multiply(&GroupElement::from_word(t, &[(a + 1) as Gen]))
                    } else if a == n - j {
                        c(i, j + 1)
                    } else if a == n - j + 1 {
                        c(i, j - 1)
                    } else {
                        base.multiply(&GroupElement::from_word(t, &[a as Gen]))
                    }
                } else if a == i {
                    c(i - 1, j)
                } else if a == i + 1 {
                    c(i + 1, j)
                } else {
                    // a > i + 1
                    if a <= n - j {
                        base.multiply(&GroupElement::from_word(t, &[a as Gen]))
                    } else if a == n - j + 1 {
                        c(i, j + 1)
                    } else if a == n - j + 2 {
                        c(i, j - 1)
                    } else {
                        base.multiply(&GroupElement::from_word(t, &[(a - 1) as Gen]))
                    }
                };
                assert_eq!(lhs, rhs, "A{n}: s_{a} C_({i},{j})");
            }
        }
    }
}
