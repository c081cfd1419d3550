//! Power products of indexed dependent variables. The index is a shift in the
//! difference ring and a derivative order in the differential ring.

use smallvec::SmallVec;

/// Non-negative multi-index, one entry per grid axis.
pub type MultiIndex = SmallVec<[u32; 4]>;

/// A dependent variable carrying a multi-index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedVar {
    pub indet: usize,
    pub index: MultiIndex,
}

impl IndexedVar {
    pub fn new(indet: usize, index: &[u32]) -> Self {
        IndexedVar {
            indet,
            index: index.iter().copied().collect(),
        }
    }

    /// Adds `theta` to the index.
    pub fn shifted(&self, theta: &[u32]) -> Self {
        IndexedVar {
            indet: self.indet,
            index: self.index.iter().zip(theta).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.index.iter().sum()
    }
}

/// A power product of indexed variables. Factors are kept sorted by the
/// structural order of [`IndexedVar`], exponents are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[(IndexedVar, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: IndexedVar) -> Self {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (IndexedVar, u32)>) -> Self {
        let mut v: SmallVec<[(IndexedVar, u32); 4]> = factors.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: SmallVec<[(IndexedVar, u32); 4]> = SmallVec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(IndexedVar, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, v: &IndexedVar) -> u32 {
        self.0
            .binary_search_by(|f| f.0.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Largest total order of an index among the factors.
    pub fn max_order(&self) -> u32 {
        self.0.iter().map(|f| f.0.order()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(other.0[j..].iter().cloned());
        Monomial(out)
    }

    /// `self / other` if `other` divides `self` as an ordinary monomial.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                j += 1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((v.clone(), e - f));
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut all: Vec<(IndexedVar, u32)> = self.0.to_vec();
        for (v, e) in &other.0 {
            match all.iter_mut().find(|f| f.0 == *v) {
                Some(f) => f.1 = f.1.max(*e),
                None => all.push((v.clone(), *e)),
            }
        }
        Monomial::from_factors(all)
    }

    pub fn shifted(&self, theta: &[u32]) -> Monomial {
        if theta.iter().all(|&t| t == 0) {
            return self.clone();
        }
        // adding theta preserves the structural order within one indeterminate
        // and the indeterminate is the primary key, so the factor list stays sorted
        Monomial(self.0.iter().map(|(v, e)| (v.shifted(theta), *e)).collect())
    }
}
