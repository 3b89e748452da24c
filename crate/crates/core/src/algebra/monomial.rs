use std::cmp::Ordering;
use std::fmt;

/// A PBW basis element `x^ν = x_1^{ν_1} ... x_N^{ν_N}`.
///
/// Ordered graded-lexicographically: first by total degree, then by
/// comparing `ν` left to right, so `x_1` is the largest variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    nu: Vec<u32>,
}

impl Monomial {
    pub fn new(nu: Vec<u32>) -> Self {
        Monomial { nu }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { nu: vec![0; dim] }
    }

    /// The generator `x_j` (1-based).
    pub fn generator(dim: usize, j: usize) -> Self {
        let mut nu = vec![0; dim];
        nu[j - 1] = 1;
        Monomial { nu }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.nu
    }

    /// `ν_j` for 1-based `j`.
    pub fn exp(&self, j: usize) -> u32 {
        self.nu[j - 1]
    }

    pub fn dim(&self) -> usize {
        self.nu.len()
    }

    pub fn degree(&self) -> u32 {
        self.nu.iter().sum()
    }

    /// Exponentwise sum (the leading monomial of a product).
    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial { nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a + b).collect() }
    }

    /// Exponentwise difference, if nonnegative.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        self.nu
            .iter()
            .zip(&other.nu)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
    }

    /// Add `delta[j]` to the exponent of `x_{j+1}`; `None` if any exponent
    /// would become negative.
    pub fn shifted(&self, delta: &[(usize, i64)]) -> Option<Monomial> {
        let mut nu = self.nu.clone();
        for &(j, d) in delta {
            let v = nu[j - 1] as i64 + d;
            if v < 0 {
                return None;
            }
            nu[j - 1] = v as u32;
        }
        Some(Monomial { nu })
    }

    /// Weight `(ν_1 - ν_{1'}, ..., ν_n - ν_{n'})`.
    pub fn weight(&self) -> Vec<i64> {
        let dim = self.nu.len();
        (0..dim / 2).map(|i| self.nu[i] as i64 - self.nu[dim - 1 - i] as i64).collect()
    }

    /// Embed into a larger space of the same parity, centred (index shift).
    pub fn embed(&self, dim: usize) -> Monomial {
        let off = (dim - self.nu.len()) / 2;
        let mut nu = vec![0; dim];
        nu[off..off + self.nu.len()].copy_from_slice(&self.nu);
        Monomial { nu }
    }

    pub(crate) fn nu_mut(&mut self) -> &mut Vec<u32> {
        &mut self.nu
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.nu.cmp(&other.nu))
    }
}

impl fmt::Display for Monomial {
    /// `x1^2 x3`; the empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.nu.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![1, 0, 1]);
        let c = Monomial::new(vec![3, 0, 0]);
        assert!(a < b && b < c);
        assert_eq!(b.to_string(), "x1 x3");
        assert_eq!(Monomial::one(3).to_string(), "1");
    }

    #[test]
    fn weights() {
        assert_eq!(Monomial::new(vec![2, 0, 1, 1]).weight(), vec![1, -1]);
        assert_eq!(Monomial::one(5).weight(), vec![0, 0]);
        assert_eq!(Monomial::new(vec![1, 2, 7, 2, 1]).weight(), vec![0, 0]);
    }

    #[test]
    fn embedding_centres_the_window() {
        let m = Monomial::new(vec![1, 2]);
        assert_eq!(m.embed(4).exponents(), &[0, 1, 2, 0]);
    }
}
