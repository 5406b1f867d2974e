//! Propositional core: literals, clauses, CNF formulas and normalization.

use std::fmt;

/// A propositional literal: a 1-based variable index plus a polarity.
///
/// Ordering is by variable first, then negative before positive polarity;
/// every place that needs a deterministic literal sequence sorts in this
/// order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: u32,
    positive: bool,
}

impl Literal {
    /// Creates a literal over variable `var` (1-based).
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var >= 1, "variable indices are 1-based");
        Literal { var, positive }
    }

    pub fn positive(var: u32) -> Self {
        Self::new(var, true)
    }

    pub fn negative(var: u32) -> Self {
        Self::new(var, false)
    }

    /// Builds a literal from a signed DIMACS code; `code` must be nonzero.
    pub fn from_dimacs(code: i32) -> Self {
        assert!(
            code != 0,
            "0 is the DIMACS clause terminator, not a literal"
        );
        Self::new(code.unsigned_abs(), code > 0)
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// The complementary literal. Negation is an involution.
    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn to_dimacs(self) -> i32 {
        if self.positive {
            self.var as i32
        } else {
            -(self.var as i32)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals. Literal order is preserved as constructed; a
/// clause of width 0 is the empty clause.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    /// The empty clause.
    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn unit(lit: Literal) -> Self {
        Clause {
            literals: vec![lit],
        }
    }

    /// Builds a clause from signed DIMACS codes, e.g. `&[-1, 2]`.
    pub fn from_dimacs(codes: &[i32]) -> Self {
        Clause {
            literals: codes.iter().map(|&c| Literal::from_dimacs(c)).collect(),
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.literals.len() == 1
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    /// True when some variable occurs in both polarities.
    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(|l| self.contains(l.negated()))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.literals.iter()
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Literal;
    type IntoIter = std::slice::Iter<'a, Literal>;

    fn into_iter(self) -> Self::IntoIter {
        self.literals.iter()
    }
}

/// A CNF formula over variables `1..=num_vars`.
///
/// Clause order is significant and preserved exactly, so serializing equal
/// formulas yields identical bytes.
#[derive(Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
    has_empty_clause: bool,
}

impl CnfFormula {
    /// Builds a formula; `num_vars` is raised to the largest variable
    /// mentioned in `clauses` if necessary.
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Self {
        let mentioned = clauses
            .iter()
            .flat_map(|c| c.iter())
            .map(|l| l.var())
            .max()
            .unwrap_or(0);
        let has_empty_clause = clauses.iter().any(|c| c.is_empty());
        CnfFormula {
            num_vars: num_vars.max(mentioned),
            clauses,
            has_empty_clause,
        }
    }

    /// A formula with no clauses.
    pub fn empty(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
            has_empty_clause: false,
        }
    }

    /// Convenience constructor from DIMACS-coded clauses.
    pub fn from_dimacs(num_vars: u32, clauses: &[&[i32]]) -> Self {
        Self::new(
            num_vars,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.has_empty_clause
    }

    /// Literals of the unit clauses, in clause order.
    pub fn unit_literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.clauses
            .iter()
            .filter(|c| c.is_unit())
            .map(|c| c.literals()[0])
    }

    /// Returns a copy of the formula with `clause` appended.
    pub fn with_clause(&self, clause: Clause) -> Self {
        let mut clauses = self.clauses.clone();
        clauses.push(clause);
        Self::new(self.num_vars, clauses)
    }

    /// True when no clause carries duplicate literals or both polarities of
    /// a variable.
    pub fn is_normalized(&self) -> bool {
        self.clauses.iter().all(|c| {
            !c.is_tautology()
                && c.iter()
                    .enumerate()
                    .all(|(i, l)| !c.literals()[..i].contains(l))
        })
    }
}

impl fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CnfFormula")
            .field("num_vars", &self.num_vars)
            .field("clauses", &self.clauses)
            .finish()
    }
}

/// Removes duplicate literals within each clause (keeping first occurrences)
/// and drops tautological clauses entirely. Empty clauses are kept and
/// clause order is otherwise preserved. Idempotent, and never changes the
/// set of satisfying total assignments.
pub fn normalize(f: &CnfFormula) -> CnfFormula {
    let mut clauses = Vec::with_capacity(f.num_clauses());
    for clause in f.clauses() {
        if clause.is_tautology() {
            continue;
        }
        let mut kept: Vec<Literal> = Vec::with_capacity(clause.len());
        for &lit in clause.iter() {
            if !kept.contains(&lit) {
                kept.push(lit);
            }
        }
        clauses.push(Clause::new(kept));
    }
    CnfFormula::new(f.num_vars(), clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_is_an_involution() {
        for code in [1, -1, 7, -42] {
            let lit = Literal::from_dimacs(code);
            assert_eq!(lit.negated().negated(), lit);
            assert_eq!(lit.negated().to_dimacs(), -code);
        }
    }

    #[test]
    fn literal_order_is_var_then_polarity() {
        let mut lits = [
            Literal::from_dimacs(3),
            Literal::from_dimacs(-1),
            Literal::from_dimacs(-3),
            Literal::from_dimacs(2),
        ];
        lits.sort();
        let codes: Vec<i32> = lits.iter().map(|l| l.to_dimacs()).collect();
        assert_eq!(codes, vec![-1, 2, -3, 3]);
    }

    #[test]
    fn duplicate_literals_are_removed() {
        let f = CnfFormula::from_dimacs(2, &[&[1, 1, 2]]);
        let norm = normalize(&f);
        assert_eq!(norm.clauses()[0], Clause::from_dimacs(&[1, 2]));
    }

    #[test]
    fn tautologies_are_dropped() {
        let f = CnfFormula::from_dimacs(2, &[&[1, -1, 2], &[2]]);
        let norm = normalize(&f);
        assert_eq!(norm.num_clauses(), 1);
        assert_eq!(norm.clauses()[0], Clause::from_dimacs(&[2]));
        assert_eq!(norm.num_vars(), 2);
    }

    #[test]
    fn empty_clauses_survive_normalization() {
        let f = CnfFormula::from_dimacs(2, &[&[], &[1, 2]]);
        let norm = normalize(&f);
        assert!(norm.has_empty_clause());
        assert_eq!(norm.num_clauses(), 2);
    }

    #[test]
    fn num_vars_grows_to_largest_mentioned() {
        let f = CnfFormula::from_dimacs(2, &[&[5, -3]]);
        assert_eq!(f.num_vars(), 5);
    }

    #[test]
    fn is_normalized_detects_duplicates_and_tautologies() {
        assert!(CnfFormula::from_dimacs(3, &[&[1, 2], &[-2, 3]]).is_normalized());
        assert!(!CnfFormula::from_dimacs(3, &[&[1, 1]]).is_normalized());
        assert!(!CnfFormula::from_dimacs(3, &[&[1, -1]]).is_normalized());
    }
}
