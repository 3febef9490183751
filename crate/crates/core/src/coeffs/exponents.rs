use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// Exponent vector of a commutative or standard monomial.
///
/// Ordering is graded lexicographic with the highest-indexed variable most
/// significant, so `x_1 < x_2 < ... < x_n`. Missing trailing entries count
/// as zero, which lets parameter monomials use trimmed vectors.
#[derive(Clone, Debug, Default)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn zero(arity: usize) -> Self {
        Exponents(vec![0; arity])
    }

    pub fn unit(arity: usize, index: usize) -> Self {
        let mut v = vec![0; arity];
        v[index] = 1;
        Exponents(v)
    }

    pub fn from_vec(v: Vec<u32>) -> Self {
        Exponents(v)
    }

    /// Trimmed form without trailing zeros.
    pub fn trimmed(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Exponents(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    fn significant(&self) -> &[u32] {
        let mut end = self.0.len();
        while end > 0 && self.0[end - 1] == 0 {
            end -= 1;
        }
        &self.0[..end]
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        let len = self.0.len().max(other.0.len());
        Exponents((0..len).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Exponents) -> Option<Exponents> {
        let len = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.get(i).checked_sub(other.get(i))?);
        }
        Some(Exponents(out))
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        other.div(self).is_some()
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Exponents) -> Exponents {
        let len = self.0.len().max(other.0.len());
        Exponents::trimmed((0..len).map(|i| self.get(i).min(other.get(i))).collect())
    }

    pub fn with_incremented(&self, i: usize) -> Exponents {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] += 1;
        Exponents(v)
    }

    pub fn with_decremented(&self, i: usize) -> Exponents {
        let mut v = self.0.clone();
        v[i] -= 1;
        Exponents(v)
    }

    /// Render as `name1^e1*name2^e2`; empty string for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl PartialEq for Exponents {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for Exponents {}

impl Hash for Exponents {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.significant().hash(state);
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in (0..len).rev() {
                match self.get(i).cmp(&other.get(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_then_last_variable_most_significant() {
        let x = Exponents::from_vec(vec![1, 0]);
        let y = Exponents::from_vec(vec![0, 1]);
        let x2 = Exponents::from_vec(vec![2, 0]);
        let xy = Exponents::from_vec(vec![1, 1]);
        assert!(x < y);
        assert!(y < x2);
        assert!(x2 < xy);
    }

    #[test]
    fn trailing_zeros_are_insignificant() {
        assert_eq!(Exponents::from_vec(vec![1, 0, 0]), Exponents::from_vec(vec![1]));
        assert_eq!(
            Exponents::from_vec(vec![2, 1]).div(&Exponents::from_vec(vec![1])),
            Some(Exponents::from_vec(vec![1, 1]))
        );
        assert_eq!(Exponents::from_vec(vec![0, 1]).div(&Exponents::from_vec(vec![1])), None);
    }
}
