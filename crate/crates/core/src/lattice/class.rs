use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A class `dH − Σ mᵢEᵢ` in N¹ of the blow-up at `k = m.len()` points.
///
/// The matrix side acts on coefficient vectors in the basis `H, E₁..E_k`,
/// where the `Eᵢ`-coefficient is `−mᵢ`; [`DivisorClass::coefficients`] and
/// [`DivisorClass::from_coefficients`] own that sign flip.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    #[serde(with = "crate::serde_big::scalar")]
    pub d: BigInt,
    #[serde(with = "crate::serde_big::vec")]
    pub m: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(d: BigInt, m: Vec<BigInt>) -> Self {
        DivisorClass { d, m }
    }

    pub fn from_i64(d: i64, m: &[i64]) -> Self {
        DivisorClass { d: d.into(), m: m.iter().map(|&x| x.into()).collect() }
    }

    pub fn zero(k: usize) -> Self {
        DivisorClass { d: BigInt::zero(), m: vec![BigInt::zero(); k] }
    }

    /// `H`.
    pub fn hyperplane(k: usize) -> Self {
        DivisorClass { d: BigInt::one(), ..Self::zero(k) }
    }

    /// `Eᵢ` for 1-based `label`, i.e. `mᵢ = −1`.
    pub fn exceptional(k: usize, label: usize) -> Self {
        let mut c = Self::zero(k);
        c.m[label - 1] = -BigInt::one();
        c
    }

    /// `H − Σ_{j ∈ labels} E_j`, the class of a plane through those points.
    pub fn plane_through(k: usize, labels: &[usize]) -> Self {
        let mut c = Self::hyperplane(k);
        for &l in labels {
            c.m[l - 1] += 1;
        }
        c
    }

    /// `2H − Σ Eᵢ`, quadrics through all points.
    pub fn quadric(k: usize) -> Self {
        DivisorClass { d: BigInt::from(2), m: vec![BigInt::one(); k] }
    }

    /// `−K = 4H − 2Σ Eᵢ`.
    pub fn anticanonical(k: usize) -> Self {
        DivisorClass { d: BigInt::from(4), m: vec![BigInt::from(2); k] }
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    pub fn degree(&self) -> &BigInt {
        &self.d
    }

    /// `4d − Σ mᵢ`, the pairing with the quartic curve class `4ℓ − Σ eᵢ`.
    pub fn quartic_pairing(&self) -> BigInt {
        BigInt::from(4) * &self.d - self.m.iter().sum::<BigInt>()
    }

    /// Coordinates in the basis `H, E₁..E_k`: `(d, −m₁, …, −m_k)`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        std::iter::once(self.d.clone()).chain(self.m.iter().map(|x| -x)).collect()
    }

    pub fn from_coefficients(v: &[BigInt]) -> Self {
        assert!(!v.is_empty(), "coefficient vector includes the H coordinate");
        DivisorClass { d: v[0].clone(), m: v[1..].iter().map(|x| -x).collect() }
    }

    /// If the class is `H − E_a − E_b − E_c − E_d`, the sorted 1-based labels.
    pub fn as_plane_class(&self) -> Option<[usize; 4]> {
        if !self.d.is_one() {
            return None;
        }
        let mut labels = Vec::new();
        for (i, x) in self.m.iter().enumerate() {
            if x.is_one() {
                labels.push(i + 1);
            } else if !x.is_zero() {
                return None;
            }
        }
        labels.try_into().ok()
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.k(), rhs.k());
        DivisorClass { d: &self.d + &rhs.d, m: self.m.iter().zip(&rhs.m).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass { d: -&self.d, m: self.m.iter().map(|x| -x).collect() }
    }
}

fn write_class(f: &mut fmt::Formatter<'_>, lead: &BigInt, lead_sym: &str, rest: &[BigInt], sym: &str) -> fmt::Result {
    let mut wrote = false;
    let mut term = |f: &mut fmt::Formatter<'_>, coeff: &BigInt, name: String| -> fmt::Result {
        if coeff.is_zero() {
            return Ok(());
        }
        let sign = if coeff.is_negative() { "−" } else { "+" };
        let mag = coeff.abs();
        let mag = if mag.is_one() { String::new() } else { mag.to_string() };
        if wrote {
            write!(f, " {sign} {mag}{name}")?;
        } else {
            write!(f, "{}{mag}{name}", if coeff.is_negative() { "−" } else { "" })?;
        }
        wrote = true;
        Ok(())
    };
    term(f, lead, lead_sym.to_string())?;
    for (i, x) in rest.iter().enumerate() {
        term(f, &-x, format!("{sym}{}", i + 1))?;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_class(f, &self.d, "H", &self.m, "E")
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A class `aℓ − Σ nᵢeᵢ` in N₁, with `ℓ` a line and `eᵢ` a line in `Eᵢ`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    #[serde(with = "crate::serde_big::scalar")]
    pub a: BigInt,
    #[serde(with = "crate::serde_big::vec")]
    pub n: Vec<BigInt>,
}

impl CurveClass {
    pub fn new(a: BigInt, n: Vec<BigInt>) -> Self {
        CurveClass { a, n }
    }

    pub fn from_i64(a: i64, n: &[i64]) -> Self {
        CurveClass { a: a.into(), n: n.iter().map(|&x| x.into()).collect() }
    }

    /// `ℓ`.
    pub fn line(k: usize) -> Self {
        CurveClass { a: BigInt::one(), n: vec![BigInt::zero(); k] }
    }

    /// `eᵢ` for 1-based `label`.
    pub fn exceptional_line(k: usize, label: usize) -> Self {
        let mut c = CurveClass { a: BigInt::zero(), n: vec![BigInt::zero(); k] };
        c.n[label - 1] = -BigInt::one();
        c
    }

    /// `ℓ − eᵢ − eⱼ`, the strict transform of the line through two points.
    pub fn line_through(k: usize, i: usize, j: usize) -> Self {
        let mut c = Self::line(k);
        c.n[i - 1] += 1;
        c.n[j - 1] += 1;
        c
    }

    /// `C̄ = 4ℓ − Σ eᵢ`, the quartic elliptic curve through all points.
    pub fn quartic(k: usize) -> Self {
        CurveClass { a: BigInt::from(4), n: vec![BigInt::one(); k] }
    }

    pub fn k(&self) -> usize {
        self.n.len()
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_class(f, &self.a, "ℓ", &self.n, "e")
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Intersection number with `H·ℓ = 1`, `Eᵢ·eⱼ = −δᵢⱼ`, `H·eᵢ = Eᵢ·ℓ = 0`:
/// `(dH − Σ mᵢEᵢ)·(aℓ − Σ nᵢeᵢ) = da − Σ mᵢnᵢ`.
pub fn intersect(dc: &DivisorClass, cc: &CurveClass) -> Result<BigInt> {
    if dc.k() != cc.k() {
        return Err(Error::Dimension { expected: dc.k(), got: cc.k() });
    }
    Ok(&dc.d * &cc.a - dc.m.iter().zip(&cc.n).map(|(m, n)| m * n).sum::<BigInt>())
}
