//! Rankings on operator-indeterminate pairs, shared by the difference ring
//! (shift multi-indices) and the differential ring (derivative multi-indices).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankingKind {
    /// Operators are compared before indeterminates.
    Orderly,
    /// Indeterminates are compared before operators.
    Elimination,
}

/// How two operator multi-indices are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OperatorOrder {
    /// Total order first, then lexicographic by axis precedence.
    #[default]
    Graded,
    /// Lexicographic by axis precedence.
    Lex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    kind: RankingKind,
    operator_order: OperatorOrder,
    axis_precedence: Vec<usize>,
    indet_precedence: Vec<usize>,
    // position of each indeterminate in `indet_precedence` (0 = highest)
    indet_rank: Vec<usize>,
}

fn check_permutation(p: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return Err(Error::Input(format!("{what} precedence is not a permutation: {p:?}")));
        }
        seen[i] = true;
    }
    Ok(())
}

impl Ranking {
    /// `axis_precedence` lists axis indices from most to least significant;
    /// `indet_precedence` lists indeterminates from highest to lowest.
    pub fn new(
        kind: RankingKind,
        operator_order: OperatorOrder,
        axis_precedence: Vec<usize>,
        indet_precedence: Vec<usize>,
    ) -> Result<Self> {
        check_permutation(&axis_precedence, "axis")?;
        check_permutation(&indet_precedence, "indeterminate")?;
        let mut indet_rank = vec![0; indet_precedence.len()];
        for (pos, &i) in indet_precedence.iter().enumerate() {
            indet_rank[i] = pos;
        }
        Ok(Ranking {
            kind,
            operator_order,
            axis_precedence,
            indet_precedence,
            indet_rank,
        })
    }

    /// Orderly graded ranking with the natural axis and indeterminate orders.
    pub fn orderly(axes: usize, indets: usize) -> Self {
        Self::new(
            RankingKind::Orderly,
            OperatorOrder::Graded,
            (0..axes).collect(),
            (0..indets).collect(),
        )
        .expect("identity permutations")
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn operator_order(&self) -> OperatorOrder {
        self.operator_order
    }

    pub fn axis_precedence(&self) -> &[usize] {
        &self.axis_precedence
    }

    pub fn indet_precedence(&self) -> &[usize] {
        &self.indet_precedence
    }

    pub fn num_axes(&self) -> usize {
        self.axis_precedence.len()
    }

    pub fn num_indets(&self) -> usize {
        self.indet_precedence.len()
    }

    pub fn cmp_operators(&self, a: &[u32], b: &[u32]) -> Ordering {
        if self.operator_order == OperatorOrder::Graded {
            let ta: u64 = a.iter().map(|&x| x as u64).sum();
            let tb: u64 = b.iter().map(|&x| x as u64).sum();
            if ta != tb {
                return ta.cmp(&tb);
            }
        }
        self.cmp_axes_lex(a, b)
    }

    /// Lexicographic comparison of multi-indices by axis precedence.
    pub fn cmp_axes_lex(&self, a: &[u32], b: &[u32]) -> Ordering {
        for &i in &self.axis_precedence {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Greater means higher precedence.
    pub fn cmp_indets(&self, a: usize, b: usize) -> Ordering {
        self.indet_rank[b].cmp(&self.indet_rank[a])
    }

    pub fn cmp(&self, a: (usize, &[u32]), b: (usize, &[u32])) -> Ordering {
        match self.kind {
            RankingKind::Orderly => self.cmp_operators(a.1, b.1).then_with(|| self.cmp_indets(a.0, b.0)),
            RankingKind::Elimination => self.cmp_indets(a.0, b.0).then_with(|| self.cmp_operators(a.1, b.1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orderly_graded_compares_total_order_first() {
        // axes t, x, y with precedence t > x > y
        let r = Ranking::new(
            RankingKind::Orderly,
            OperatorOrder::Graded,
            vec![0, 1, 2],
            vec![0, 1, 2],
        )
        .unwrap();
        assert_eq!(r.cmp((1, &[1, 0, 0]), (1, &[0, 1, 0])), Ordering::Greater);
        assert_eq!(r.cmp((1, &[0, 2, 0]), (0, &[1, 0, 0])), Ordering::Greater);
        assert_eq!(r.cmp((0, &[0, 0, 1]), (1, &[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn elimination_compares_indeterminate_first() {
        let r = Ranking::new(RankingKind::Elimination, OperatorOrder::Graded, vec![0], vec![0, 1]).unwrap();
        assert_eq!(r.cmp((0, &[0]), (1, &[5])), Ordering::Greater);
    }

    #[test]
    fn lex_operator_order() {
        let r = Ranking::new(RankingKind::Orderly, OperatorOrder::Lex, vec![0, 1], vec![0]).unwrap();
        assert_eq!(r.cmp((0, &[1, 0]), (0, &[0, 7])), Ordering::Greater);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Ranking::new(RankingKind::Orderly, OperatorOrder::Graded, vec![0, 0], vec![0]).is_err());
    }
}
