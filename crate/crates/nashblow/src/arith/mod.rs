//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials keep their terms in a canonical form: sorted strictly
//! descending under graded reverse lexicographic order, no zero
//! coefficients, monomials pairwise distinct. Every constructor and
//! operation restores that form, so structural equality is semantic
//! equality.

mod parse;

pub use parse::{format_polynomial, parse_polynomial};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always gcd-reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector. Length is fixed by the ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps: exps.into_boxed_slice() }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps: exps.into_boxed_slice() }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// other / self, assuming `self.divides(other)`.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial::new(other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Total, multiplicative monomial orders with 1 minimal.
///
/// `Elimination(k)` is the block order that compares the first `k`
/// variables by grevlex before the remaining ones; generators free of
/// the first block in a basis under this order cut out the
/// elimination ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Elimination(usize),
}

fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // Smaller exponent in the last differing (rightmost) slot wins.
            return if a[i] < b[i] { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            MonomialOrder::GrevLex => grevlex_slice(a.exps(), b.exps()),
            MonomialOrder::Lex => {
                for (x, y) in a.exps().iter().zip(b.exps().iter()) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination(k) => {
                match grevlex_slice(&a.exps()[..k], &b.exps()[..k]) {
                    Ordering::Equal => grevlex_slice(&a.exps()[k..], &b.exps()[k..]),
                    ord => ord,
                }
            }
        }
    }
}

pub type Term = (Monomial, Rational);

/// Multivariate polynomial over the rationals in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        Polynomial { nvars, terms: vec![(Monomial::var(nvars, index), Rational::one())] }
    }

    pub fn term(nvars: usize, m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds the canonical form from an arbitrary term list: sorts,
    /// merges equal monomials, drops zero coefficients.
    pub fn from_terms(nvars: usize, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|(a, _), (b, _)| MonomialOrder::GrevLex.cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some((last_m, last_c)) = out.last_mut() {
                if *last_m == m {
                    *last_c += c;
                    if last_c.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Polynomial { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Leading term under grevlex (the stored order).
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match MonomialOrder::GrevLex.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut acc: Vec<Term> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, acc)
    }

    pub fn mul_rational(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// self * (c * m); order is preserved because monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn partial_derivative(&self, var_index: usize) -> Result<Polynomial> {
        if var_index >= self.nvars {
            return Err(Error::Invalid(format!(
                "variable index {} out of range for {} variables",
                var_index, self.nvars
            )));
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var_index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var_index] = e - 1;
            terms.push((Monomial::new(exps), c * rat(e as i64)));
        }
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Rational::one() / lc;
                self.mul_rational(&inv)
            }
        }
    }
}

/// All strictly increasing index sequences of length `k` drawn from
/// `0..n`, in lexicographic order.
pub fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=(n.saturating_sub(need)) {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut cur, &mut out);
    }
    out
}

/// All nondecreasing index sequences of length `k` drawn from `0..n`
/// (multisets with repetition), in lexicographic order.
pub fn index_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    if n > 0 || k == 0 {
        rec(n, k, 0, &mut cur, &mut out);
    }
    out
}

/// Determinant by cofactor expansion along the first column.
///
/// `reduce` is applied after every multiplication so callers can keep
/// intermediate results in normal form; pass the identity for a plain
/// determinant.
pub fn determinant<F>(rows: &[Vec<Polynomial>], reduce: &F) -> Result<Polynomial>
where
    F: Fn(Polynomial) -> Polynomial,
{
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(Error::NonSquareMatrix { rows: n, cols: row.len() });
        }
    }
    if n == 0 {
        return Err(Error::NonSquareMatrix { rows: 0, cols: 0 });
    }
    Ok(det_rec(rows, &(0..n).collect::<Vec<_>>(), n, reduce))
}

/// Expands along the leftmost column still in play. A submatrix on k
/// live rows always uses the last k columns of the full matrix.
fn det_rec<F>(rows: &[Vec<Polynomial>], live: &[usize], ncols: usize, reduce: &F) -> Polynomial
where
    F: Fn(Polynomial) -> Polynomial,
{
    let nvars = rows[0][0].nvars();
    let col = ncols - live.len();
    if live.len() == 1 {
        return rows[live[0]][col].clone();
    }
    let mut acc = Polynomial::zero(nvars);
    for (pos, &ri) in live.iter().enumerate() {
        let entry = &rows[ri][col];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = live.iter().copied().filter(|&r| r != ri).collect();
        let minor = det_rec(rows, &rest, ncols, reduce);
        let signed = if pos % 2 == 0 { entry.clone() } else { entry.neg() };
        acc = acc.add(&reduce(signed.mul(&minor)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_orders_by_degree_then_reverse_lex() {
        let o = MonomialOrder::GrevLex;
        // x^3 > y^2 (degree)
        assert_eq!(o.cmp(&m(&[3, 0]), &m(&[0, 2])), Ordering::Greater);
        // among degree 3: x^3 > x*y^2 > y^3
        assert_eq!(o.cmp(&m(&[3, 0]), &m(&[1, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn lex_ignores_degree() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_prefers_first_block() {
        let o = MonomialOrder::Elimination(1);
        // t > x^9 when t occupies the first slot
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let p = Polynomial::from_terms(
            2,
            vec![
                (m(&[1, 0]), rat(2)),
                (m(&[0, 1]), rat(1)),
                (m(&[1, 0]), rat(-2)),
            ],
        );
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, m(&[0, 1]));
    }

    #[test]
    fn difference_of_squares() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_by_zero_annihilates() {
        let x = Polynomial::variable(2, 0);
        assert!(x.mul(&Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn power_rule_partial_derivative() {
        // d/dx (y^2 - x^3) = -3x^2
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let f = y.pow(2).sub(&x.pow(3));
        let expect = x.pow(2).mul_rational(&rat(-3));
        assert_eq!(f.partial_derivative(0).unwrap(), expect);
        // d/dy of a constant is 0
        assert!(Polynomial::one(2).partial_derivative(1).unwrap().is_zero());
        // d/dx (x^2 y + x y^2) = 2xy + y^2
        let g = x.pow(2).mul(&y).add(&x.mul(&y.pow(2)));
        let expect = x.mul(&y).mul_rational(&rat(2)).add(&y.pow(2));
        assert_eq!(g.partial_derivative(0).unwrap(), expect);
    }

    #[test]
    fn leibniz_rule_on_a_product() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let f = x.pow(2).add(&y);
        let g = x.mul(&y).sub(&Polynomial::one(2));
        let prod = f.mul(&g);
        let lhs = prod.partial_derivative(0).unwrap();
        let rhs = f
            .partial_derivative(0)
            .unwrap()
            .mul(&g)
            .add(&g.partial_derivative(0).unwrap().mul(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn combination_and_multiset_counts() {
        assert_eq!(index_combinations(4, 2).len(), 6);
        assert_eq!(index_combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(index_combinations(2, 3).is_empty());
        assert_eq!(index_combinations(3, 0), vec![Vec::<usize>::new()]);
        // Multisets of size 3 from 2 symbols: 4 of them, ordered.
        assert_eq!(
            index_multisets(2, 3),
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );
        assert_eq!(index_multisets(3, 0), vec![Vec::<usize>::new()]);
        assert!(index_multisets(0, 2).is_empty());
    }

    #[test]
    fn determinant_basics() {
        let one = Polynomial::one(1);
        let zero = Polynomial::zero(1);
        let id2 = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert_eq!(determinant(&id2, &|p| p).unwrap(), one);

        let x = Polynomial::variable(1, 0);
        let repeated = vec![vec![x.clone(), one.clone()], vec![x.clone(), one.clone()]];
        assert!(determinant(&repeated, &|p| p).unwrap().is_zero());

        let bad = vec![vec![x.clone()], vec![x.clone(), one.clone()]];
        assert!(determinant(&bad, &|p| p).is_err());
    }
}
