//! Monomials, A-degrees and pure difference binomials `x^u - x^v`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An A-degree: a nonnegative integer vector in the ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<u32>);

impl DegreeVector {
    pub fn zero(n: usize) -> Self {
        DegreeVector(vec![0; n])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Order used to walk candidate degrees: total sum, then lexicographic.
    pub fn graded_cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl Add for &DegreeVector {
    type Output = DegreeVector;

    fn add(self, rhs: &DegreeVector) -> DegreeVector {
        assert_eq!(self.0.len(), rhs.0.len());
        DegreeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A monomial, stored as a dense exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial(vec![0; m])
    }

    pub fn variable(m: usize, i: usize) -> Self {
        let mut x = vec![0; m];
        x[i] = 1;
        Monomial(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i)
    }

    /// Renders as e.g. `e1e2^2` with the given variable prefix and 1-based indices.
    pub fn render(&self, prefix: &str) -> String {
        let mut s = String::new();
        for (i, &k) in self.0.iter().enumerate() {
            match k {
                0 => {}
                1 => s.push_str(&format!("{prefix}{}", i + 1)),
                _ => s.push_str(&format!("{prefix}{}^{k}", i + 1)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    fn to_sparse(&self) -> BTreeMap<usize, u32> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
            .collect()
    }

    fn from_sparse(m: usize, sparse: &BTreeMap<String, u32>) -> Result<Self, String> {
        let mut x = vec![0; m];
        for (key, &k) in sparse {
            let i: usize = key.parse().map_err(|_| format!("bad variable index {key:?}"))?;
            if i == 0 || i > m {
                return Err(format!("variable index {i} outside 1..={m}"));
            }
            x[i - 1] = k;
        }
        Ok(Monomial(x))
    }
}

/// A binomial `x^plus - x^minus` of the toric ideal, with its A-degree.
///
/// Construction normalizes the sign so that `plus` is the lexicographically
/// larger exponent vector; two binomials that differ only by sign compare
/// equal after construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    plus: Monomial,
    minus: Monomial,
    degree: DegreeVector,
}

impl Binomial {
    pub fn new(a: Monomial, b: Monomial, degree: DegreeVector) -> Self {
        assert_eq!(a.len(), b.len());
        if a >= b {
            Binomial { plus: a, minus: b, degree }
        } else {
            Binomial { plus: b, minus: a, degree }
        }
    }

    pub fn plus(&self) -> &Monomial {
        &self.plus
    }

    pub fn minus(&self) -> &Monomial {
        &self.minus
    }

    pub fn degree(&self) -> &DegreeVector {
        &self.degree
    }

    pub fn variables(&self) -> usize {
        self.plus.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.plus.total_degree()
    }

    pub fn is_coprime(&self) -> bool {
        self.plus.is_coprime_to(&self.minus)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.variables()).filter(|&i| self.plus.0[i] > 0 || self.minus.0[i] > 0).collect()
    }

    /// `plus - minus` as a signed vector.
    pub fn kernel_vector(&self) -> Vec<i64> {
        self.plus.0.iter().zip(&self.minus.0).map(|(&a, &b)| i64::from(a) - i64::from(b)).collect()
    }

    /// Splits a signed vector into its positive and negative parts.
    pub fn from_kernel_vector(z: &[i64], degree: DegreeVector) -> Self {
        let plus = z.iter().map(|&x| x.max(0) as u32).collect();
        let minus = z.iter().map(|&x| (-x).max(0) as u32).collect();
        Binomial::new(Monomial(plus), Monomial(minus), degree)
    }

    /// Whether either term of `self` divides either term of `other`.
    pub fn term_divides_term_of(&self, other: &Binomial) -> bool {
        [&self.plus, &self.minus]
            .iter()
            .any(|t| t.divides(&other.plus) || t.divides(&other.minus))
    }

    pub fn render(&self, prefix: &str) -> String {
        format!("{} - {}", self.plus.render(prefix), self.minus.render(prefix))
    }
}

/// Canonical order: total degree, then plus vector descending, then minus
/// vector descending (so `e1e2 - e3e4` precedes `e3e4 - e5e6`).
impl Ord for Binomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.plus.cmp(&self.plus))
            .then_with(|| other.minus.cmp(&self.minus))
    }
}

impl PartialOrd for Binomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize)]
struct BinomialJson {
    plus: BTreeMap<usize, u32>,
    minus: BTreeMap<usize, u32>,
    degree: DegreeVector,
    variables: usize,
}

#[derive(Deserialize)]
struct BinomialInput {
    plus: BTreeMap<String, u32>,
    minus: BTreeMap<String, u32>,
    degree: DegreeVector,
    variables: usize,
}

impl Serialize for Binomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BinomialJson {
            plus: self.plus.to_sparse(),
            minus: self.minus.to_sparse(),
            degree: self.degree.clone(),
            variables: self.variables(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Binomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BinomialInput::deserialize(deserializer)?;
        let plus = Monomial::from_sparse(raw.variables, &raw.plus).map_err(serde::de::Error::custom)?;
        let minus =
            Monomial::from_sparse(raw.variables, &raw.minus).map_err(serde::de::Error::custom)?;
        Ok(Binomial::new(plus, minus, raw.degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(x: &[u32]) -> Monomial {
        Monomial(x.to_vec())
    }

    #[test]
    fn orientation_is_canonical() {
        let d = DegreeVector(vec![1, 1, 1, 1]);
        let a = Binomial::new(mono(&[1, 1, 0, 0]), mono(&[0, 0, 1, 1]), d.clone());
        let b = Binomial::new(mono(&[0, 0, 1, 1]), mono(&[1, 1, 0, 0]), d);
        assert_eq!(a, b);
        assert_eq!(a.render("e"), "e1e2 - e3e4");
        assert_eq!(a.kernel_vector(), vec![1, 1, -1, -1]);
    }

    #[test]
    fn rendering_with_powers() {
        assert_eq!(mono(&[0, 2, 1]).render("x"), "x2^2x3");
        assert_eq!(mono(&[0, 0]).render("x"), "1");
    }

    #[test]
    fn canonical_order() {
        let d = DegreeVector(vec![1, 1, 1, 1]);
        let b12_34 = Binomial::new(mono(&[1, 1, 0, 0, 0, 0]), mono(&[0, 0, 1, 1, 0, 0]), d.clone());
        let b12_56 = Binomial::new(mono(&[1, 1, 0, 0, 0, 0]), mono(&[0, 0, 0, 0, 1, 1]), d.clone());
        let b34_56 = Binomial::new(mono(&[0, 0, 1, 1, 0, 0]), mono(&[0, 0, 0, 0, 1, 1]), d);
        let mut v = vec![b34_56.clone(), b12_56.clone(), b12_34.clone()];
        v.sort();
        assert_eq!(v, vec![b12_34, b12_56, b34_56]);
    }

    #[test]
    fn json_shape() {
        let b = Binomial::new(mono(&[2, 0, 0]), mono(&[0, 1, 1]), DegreeVector(vec![2, 2]));
        let v: serde_json::Value = serde_json::to_value(&b).unwrap();
        assert_eq!(v["plus"]["1"], 2);
        assert_eq!(v["minus"]["3"], 1);
        assert_eq!(v["degree"], serde_json::json!([2, 2]));
    }

    proptest! {
        #[test]
        fn json_round_trip(z in proptest::collection::vec(-3i64..=3, 1..8)) {
            let b = Binomial::from_kernel_vector(&z, DegreeVector(vec![1, 2]));
            let text = serde_json::to_string(&b).unwrap();
            let back: Binomial = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(b, back);
        }

        #[test]
        fn gcd_lcm_identity(a in proptest::collection::vec(0u32..4, 5), b in proptest::collection::vec(0u32..4, 5)) {
            let (a, b) = (Monomial(a), Monomial(b));
            prop_assert_eq!(a.gcd(&b).mul(&a.lcm(&b)), a.mul(&b));
            prop_assert!(a.gcd(&b).divides(&a) && a.divides(&a.lcm(&b)));
        }
    }
}
