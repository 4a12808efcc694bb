//! Static data for the affine Dynkin diagrams: Cartan pairings, bond orders,
//! exponents, marks, and the Type I / Type II split.
//!
//! Node numbering follows the affine Dynkin diagram conventions used
//! throughout the crate: generators are `s_0 ... s_n` where `s_1 ... s_n`
//! generate the finite Weyl group and `s_0` is the affine node. Concretely:
//!
//! * `Ã_1`: `0 = 1` (infinite bond), `Ã_n (n≥2)`: cycle `0-1-...-n-0`.
//! * `B̃_n (n≥3)`: `0` and `1` both attach to `2`, chain to `n-1`, double
//!   bond `n-1 ⇒ n`.
//! * `C̃_n (n≥2)`: chain `0-1-...-n` with double bonds `0 ⇒ 1` and `n ⇒ n-1`.
//! * `D̃_n (n≥4)`: pendant nodes `0,1` at `2` and pendant nodes `n-1,n` at `n-2`.
//! * `Ẽ_6`: chain `0-1-2-3-4` with `5` on `2` and `6` on `5`.
//! * `Ẽ_7`: chain `0-...-6` with `7` on `3`.
//! * `Ẽ_8`: chain `0-...-7` with `8` on `5`.
//! * `F̃_4`: chain `0-1-2-3-4` with double bond `2 ⇒ 3`.
//! * `G̃_2`: chain `0-1-2` with triple bond `1 ⇒ 2`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Generator index, `0 ..= n`.
pub type Gen = u8;

/// The nine affine families.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 | Family::E7 | Family::E8 => "E",
            Family::F4 => "F",
            Family::G2 => "G",
        }
    }
}

/// Whether `s_0` attaches to `s_1` (Type I) or the diagram carries the
/// `s_0 ↔ s_1` swap symmetry (Type II).
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub enum TypeClass {
    TypeI,
    TypeII,
}

/// An affine family together with its rank `n`; the group has generators
/// `s_0 ... s_n`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineType {
    family: Family,
    rank: usize,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
            Family::F4 => rank == 4,
            Family::G2 => rank == 2,
        };
        if !ok {
            return Err(Error::RankOutOfRange {
                family: family.letter(),
                rank,
            });
        }
        Ok(AffineType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of finite simple generators `n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of affine generators `n + 1`.
    pub fn nodes(&self) -> usize {
        self.rank + 1
    }

    pub fn typeclass(&self) -> TypeClass {
        match self.family {
            Family::B | Family::D => TypeClass::TypeII,
            _ => TypeClass::TypeI,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(
            self.family,
            Family::E6 | Family::E7 | Family::E8 | Family::F4 | Family::G2
        )
    }

    pub fn cartan(&self) -> Arc<CartanData> {
        cartan_data(*self)
    }

    /// Exponents `e_1 ... e_n` of the finite Weyl group.
    pub fn exponents(&self) -> Vec<usize> {
        let n = self.rank;
        match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
            Family::D => {
                let mut e: Vec<usize> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            Family::E6 => vec![1, 4, 5, 7, 8, 11],
            Family::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            Family::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            Family::F4 => vec![1, 5, 7, 11],
            Family::G2 => vec![1, 5],
        }
    }

    /// Coefficients of Bott's formula `∏ 1/(1 - t^{e_i})` through degree `trunc`.
    pub fn bott_series(&self, trunc: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::one(trunc);
        for e in self.exponents() {
            s.div_one_minus_tk(e);
        }
        s
    }

    /// The parabolic subset `J ⊆ {1..n}` used to build fragments and segments:
    /// for Type I the generators commuting with `s_0`, for Type II the set
    /// `{2..n}` (everything but `s_1`).
    pub fn commuting_with_s0(&self) -> BTreeSet<Gen> {
        match self.typeclass() {
            TypeClass::TypeI => {
                let c = self.cartan();
                (1..=self.rank as Gen).filter(|&j| c.m(0, j) == 2).collect()
            }
            TypeClass::TypeII => (2..=self.rank as Gen).collect(),
        }
    }

    /// Marks of the null root `δ = Σ a_i α_i`; the row kernel of the pairing.
    pub fn marks(&self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::A => vec![1; n + 1],
            Family::B => {
                let mut m = vec![2i64; n + 1];
                m[0] = 1;
                m[1] = 1;
                m
            }
            Family::C => {
                let mut m = vec![2i64; n + 1];
                m[0] = 1;
                m[n] = 1;
                m
            }
            Family::D => {
                let mut m = vec![2i64; n + 1];
                m[0] = 1;
                m[1] = 1;
                m[n - 1] = 1;
                m[n] = 1;
                m
            }
            Family::E6 => vec![1, 2, 3, 2, 1, 2, 1],
            Family::E7 => vec![1, 2, 3, 4, 3, 2, 1, 2],
            Family::E8 => vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
            Family::F4 => vec![1, 2, 3, 4, 2],
            Family::G2 => vec![1, 2, 3],
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::ParseType(s.to_string());
        let (letter, digits) = s.split_at(s.len().min(1));
        let rank: usize = digits.parse().map_err(|_| err())?;
        let family = match letter.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => match rank {
                6 => Family::E6,
                7 => Family::E7,
                8 => Family::E8,
                _ => return Err(err()),
            },
            "F" => Family::F4,
            "G" => Family::G2,
            _ => return Err(err()),
        };
        AffineType::new(family, rank)
    }
}

/// The `(n+1) × (n+1)` affine Cartan pairing together with bond orders.
///
/// `pairing[i][j] = ⟨α_i, α_j^∨⟩`, so right multiplication by `s_i` updates
/// the inversion vector as `V'_j = V_j - pairing[i][j] · V_i`.
#[derive(Debug, Clone)]
pub struct CartanData {
    ty: AffineType,
    pairing: Vec<Vec<i64>>,
    /// Bond orders `m_ij`; `0` encodes an infinite bond (only `Ã_1`).
    bonds: Vec<Vec<usize>>,
}

impl CartanData {
    fn build(ty: AffineType) -> Self {
        let n = ty.rank();
        let nodes = n + 1;
        let mut p = vec![vec![0i64; nodes]; nodes];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 2;
        }
        // edge(i, j, cij, cji) writes pairing[i][j] = cij, pairing[j][i] = cji.
        let edge = |p: &mut Vec<Vec<i64>>, i: usize, j: usize, cij: i64, cji: i64| {
            p[i][j] = cij;
            p[j][i] = cji;
        };
        match ty.family() {
            Family::A => {
                if n == 1 {
                    edge(&mut p, 0, 1, -2, -2);
                } else {
                    for i in 0..nodes {
                        let j = (i + 1) % nodes;
                        edge(&mut p, i, j, -1, -1);
                    }
                }
            }
            Family::B => {
                edge(&mut p, 0, 2, -1, -1);
                edge(&mut p, 1, 2, -1, -1);
                for i in 2..n - 1 {
                    edge(&mut p, i, i + 1, -1, -1);
                }
                edge(&mut p, n - 1, n, -2, -1);
            }
            Family::C => {
                edge(&mut p, 0, 1, -2, -1);
                for i in 1..n - 1 {
                    edge(&mut p, i, i + 1, -1, -1);
                }
                edge(&mut p, n - 1, n, -1, -2);
            }
            Family::D => {
                edge(&mut p, 0, 2, -1, -1);
                edge(&mut p, 1, 2, -1, -1);
                for i in 2..n - 2 {
                    edge(&mut p, i, i + 1, -1, -1);
                }
                edge(&mut p, n - 2, n - 1, -1, -1);
                edge(&mut p, n - 2, n, -1, -1);
            }
            Family::E6 => {
                for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)] {
                    edge(&mut p, i, j, -1, -1);
                }
            }
            Family::E7 => {
                for i in 0..6 {
                    edge(&mut p, i, i + 1, -1, -1);
                }
                edge(&mut p, 3, 7, -1, -1);
            }
            Family::E8 => {
                for i in 0..7 {
                    edge(&mut p, i, i + 1, -1, -1);
                }
                edge(&mut p, 5, 8, -1, -1);
            }
            Family::F4 => {
                edge(&mut p, 0, 1, -1, -1);
                edge(&mut p, 1, 2, -1, -1);
                edge(&mut p, 2, 3, -2, -1);
                edge(&mut p, 3, 4, -1, -1);
            }
            Family::G2 => {
                edge(&mut p, 0, 1, -1, -1);
                edge(&mut p, 1, 2, -3, -1);
            }
        }
        let mut bonds = vec![vec![2usize; nodes]; nodes];
        for i in 0..nodes {
            bonds[i][i] = 1;
            for j in 0..nodes {
                if i == j {
                    continue;
                }
                bonds[i][j] = match p[i][j] * p[j][i] {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    4 => 0, // infinite (Ã_1)
                    other => panic!("invalid Cartan product {other} at ({i},{j})"),
                };
            }
        }
        CartanData {
            ty,
            pairing: p,
            bonds,
        }
    }

    pub fn ty(&self) -> AffineType {
        self.ty
    }

    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    /// Bond order `m_ij`; `0` means infinite.
    pub fn m(&self, i: Gen, j: Gen) -> usize {
        self.bonds[i as usize][j as usize]
    }

    pub fn adjacent(&self, i: Gen, j: Gen) -> bool {
        i != j && self.m(i, j) != 2
    }
}

static CARTAN_CACHE: Lazy<RwLock<HashMap<AffineType, Arc<CartanData>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Shared, cached Cartan data for a type.
pub fn cartan_data(ty: AffineType) -> Arc<CartanData> {
    if let Some(c) = CARTAN_CACHE.read().unwrap().get(&ty) {
        return c.clone();
    }
    let built = Arc::new(CartanData::build(ty));
    CARTAN_CACHE
        .write()
        .unwrap()
        .entry(ty)
        .or_insert(built)
        .clone()
}
