use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ssc::ksf_monomial_truncated;
use super::partition::Partition;
use crate::error::{KsfError, Result};
use crate::graph::WeightedGraph;

/// Exact rational coefficient.
pub type Rational = BigRational;

/// Which family of symmetric functions indexes a series.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    /// `m_λ`.
    Monomial,
    /// `m̃_λ = m_λ ∏ r_i(λ)!`.
    Augmented,
    /// `m̄_λ`, the KSF of the weighted complete graph `K_λ`.
    KAugmented,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Augmented => "mtilde",
            Basis::KAugmented => "mbar",
        }
    }
}

/// A symmetric function truncated at a degree bound: only terms indexed by
/// partitions of size `<= bound` are kept, and no zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymSeries {
    basis: Basis,
    bound: usize,
    coeffs: BTreeMap<Partition, Rational>,
}

fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

impl SymSeries {
    pub fn zero(basis: Basis, bound: usize) -> Self {
        SymSeries {
            basis,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis, bound: usize) -> Self {
        SymSeries::term(basis, bound, Partition::empty(), Rational::one())
    }

    /// `c · b_λ`, or zero if `λ` exceeds the bound.
    pub fn term(basis: Basis, bound: usize, part: Partition, c: Rational) -> Self {
        let mut s = SymSeries::zero(basis, bound);
        s.add_term(part, c);
        s
    }

    /// Builds a series from integer counts.
    pub fn from_counts<I>(basis: Basis, bound: usize, counts: I) -> Self
    where
        I: IntoIterator<Item = (Partition, u128)>,
    {
        let mut s = SymSeries::zero(basis, bound);
        for (p, c) in counts {
            s.add_term(p, rat(c));
        }
        s
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, part: &Partition) -> Rational {
        self.coeffs.get(part).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · b_λ`; terms above the bound are dropped.
    pub fn add_term(&mut self, part: Partition, c: Rational) {
        if part.size() > self.bound || c.is_zero() {
            return;
        }
        match self.coeffs.entry(part) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = SymSeries::zero(self.basis, self.bound);
        for (p, v) in &self.coeffs {
            s.add_term(p.clone(), v * c);
        }
        s
    }

    /// Drops every term above `bound`; `bound` must not exceed the current one.
    pub fn truncate(&self, bound: usize) -> Result<Self> {
        if bound > self.bound {
            return Err(KsfError::Input(format!(
                "cannot truncate a series with bound {} to the larger bound {bound}",
                self.bound
            )));
        }
        let mut s = SymSeries::zero(self.basis, bound);
        for (p, v) in &self.coeffs {
            s.add_term(p.clone(), v.clone());
        }
        Ok(s)
    }

    /// Re-labels the bound to a larger value. Only valid for series that are
    /// complete polynomials (for example CSF expansions), which have no
    /// omitted terms above their own bound.
    pub fn widen_exact(&self, bound: usize) -> Self {
        let mut s = self.clone();
        s.bound = bound.max(self.bound);
        s
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Sum of the coefficients on partitions of exactly `size`.
    pub fn slice(&self, size: usize) -> SymSeries {
        let mut s = SymSeries::zero(self.basis, self.bound);
        for (p, v) in &self.coeffs {
            if p.size() == size {
                s.add_term(p.clone(), v.clone());
            }
        }
        s
    }

    fn check_compatible(&self, other: &SymSeries) -> Result<()> {
        if self.basis != other.basis {
            return Err(KsfError::BasisMismatch(format!(
                "{:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        if self.bound != other.bound {
            return Err(KsfError::Input(format!(
                "degree bounds differ ({} vs {})",
                self.bound, other.bound
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SymSeries) -> Result<SymSeries> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for (p, v) in &other.coeffs {
            s.add_term(p.clone(), v.clone());
        }
        Ok(s)
    }

    pub fn try_sub(&self, other: &SymSeries) -> Result<SymSeries> {
        self.try_add(&-other)
    }

    /// Renders terms as `coef*basis[parts]` joined by ` + `, ascending by
    /// `(size, parts)`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SymSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_integer() {
                write!(f, "{}*{}{}", c.numer(), self.basis.symbol(), p)?;
            } else {
                write!(f, "{}/{}*{}{}", c.numer(), c.denom(), self.basis.symbol(), p)?;
            }
        }
        Ok(())
    }
}

impl Neg for &SymSeries {
    type Output = SymSeries;

    fn neg(self) -> SymSeries {
        self.scale(&-Rational::one())
    }
}

impl Add for &SymSeries {
    type Output = SymSeries;

    /// Panics on basis or bound mismatch; use [`SymSeries::try_add`] to handle it.
    fn add(self, rhs: &SymSeries) -> SymSeries {
        self.try_add(rhs).expect("compatible series")
    }
}

impl Sub for &SymSeries {
    type Output = SymSeries;

    fn sub(self, rhs: &SymSeries) -> SymSeries {
        self.try_sub(rhs).expect("compatible series")
    }
}

/// Bilinear extension of `b_λ ⊙ b_μ = b_{λ⊔μ}` for the augmented and
/// K-augmented bases.
pub fn odot_product(a: &SymSeries, b: &SymSeries) -> Result<SymSeries> {
    a.check_compatible(b)?;
    if a.basis == Basis::Monomial {
        return Err(KsfError::BasisMismatch(
            "the odot product is defined on the augmented and K-augmented bases".into(),
        ));
    }
    let mut s = SymSeries::zero(a.basis, a.bound);
    for (p, x) in &a.coeffs {
        for (q, y) in &b.coeffs {
            if p.size() + q.size() <= a.bound {
                s.add_term(p.union(q), x * y);
            }
        }
    }
    Ok(s)
}

/// `odot_product` over several factors, left to right.
pub fn odot_all(factors: &[&SymSeries]) -> Result<SymSeries> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| KsfError::Input("empty product".into()))?;
    let mut acc = (*first).clone();
    for f in rest {
        acc = odot_product(&acc, f)?;
    }
    Ok(acc)
}

/// Structure constants of `m_λ · m_μ`: the coefficient of `m_ν` is the number
/// of ways to write the exponent vector `ν` as `a + b` with `a` a
/// rearrangement of `λ` and `b` a rearrangement of `μ`, zero-padded.
pub fn monomial_product_terms(lam: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    fn distinct(p: &Partition) -> Vec<(u32, usize)> {
        p.multiplicities()
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        a: &mut Vec<(u32, usize)>,
        b: &mut Vec<(u32, usize)>,
        left_a: usize,
        left_b: usize,
        prev: u32,
        cur: &mut Vec<u32>,
        out: &mut HashMap<Vec<u32>, u64>,
    ) {
        if left_a == 0 && left_b == 0 {
            *out.entry(cur.clone()).or_default() += 1;
            return;
        }
        // Slot value from `a`: index or none.
        for ia in 0..=a.len() {
            let va = if ia < a.len() {
                if a[ia].1 == 0 {
                    continue;
                }
                a[ia].0
            } else {
                0
            };
            for ib in 0..=b.len() {
                let vb = if ib < b.len() {
                    if b[ib].1 == 0 {
                        continue;
                    }
                    b[ib].0
                } else {
                    0
                };
                let s = va + vb;
                if s == 0 || s > prev {
                    continue;
                }
                if ia < a.len() {
                    a[ia].1 -= 1;
                }
                if ib < b.len() {
                    b[ib].1 -= 1;
                }
                cur.push(s);
                rec(
                    a,
                    b,
                    left_a - usize::from(ia < a.len()),
                    left_b - usize::from(ib < b.len()),
                    s,
                    cur,
                    out,
                );
                cur.pop();
                if ia < a.len() {
                    a[ia].1 += 1;
                }
                if ib < b.len() {
                    b[ib].1 += 1;
                }
            }
        }
    }
    let mut a = distinct(lam);
    let mut b = distinct(mu);
    let mut out = HashMap::new();
    rec(
        &mut a,
        &mut b,
        lam.len(),
        mu.len(),
        u32::MAX,
        &mut Vec::new(),
        &mut out,
    );
    let mut v: Vec<(Partition, u64)> = out
        .into_iter()
        .map(|(k, c)| (Partition::from_sorted(k), c))
        .collect();
    v.sort();
    v
}

/// Ordinary product in the monomial basis, truncated at the common bound.
pub fn ordinary_product(a: &SymSeries, b: &SymSeries) -> Result<SymSeries> {
    a.check_compatible(b)?;
    if a.basis != Basis::Monomial {
        return Err(KsfError::BasisMismatch(
            "the ordinary product is implemented in the monomial basis".into(),
        ));
    }
    let mut s = SymSeries::zero(Basis::Monomial, a.bound);
    let mut cache: HashMap<(&Partition, &Partition), Vec<(Partition, u64)>> = HashMap::new();
    for (p, x) in &a.coeffs {
        for (q, y) in &b.coeffs {
            if p.size() + q.size() > a.bound {
                continue;
            }
            let terms = cache
                .entry((p, q))
                .or_insert_with(|| monomial_product_terms(p, q));
            let xy = x * y;
            for (nu, c) in terms.iter() {
                s.add_term(nu.clone(), &xy * rat(*c));
            }
        }
    }
    Ok(s)
}

/// Monomial expansion of `m̄_λ`, truncated at `bound`.
fn kaugmented_in_monomial(part: &Partition, bound: usize) -> SymSeries {
    let k = WeightedGraph::complete_weighted(part.parts()).expect("K_λ fits");
    ksf_monomial_truncated(&k, bound)
}

fn to_monomial(series: &SymSeries) -> SymSeries {
    let d = series.bound;
    match series.basis {
        Basis::Monomial => series.clone(),
        Basis::Augmented => {
            let mut s = SymSeries::zero(Basis::Monomial, d);
            for (p, c) in &series.coeffs {
                s.add_term(p.clone(), c * Rational::from_integer(p.multiplicity_factorial()));
            }
            s
        }
        Basis::KAugmented => {
            let mut s = SymSeries::zero(Basis::Monomial, d);
            for (p, c) in &series.coeffs {
                let expansion = kaugmented_in_monomial(p, d);
                for (q, v) in &expansion.coeffs {
                    s.add_term(q.clone(), c * v);
                }
            }
            s
        }
    }
}

fn from_monomial(series: &SymSeries, target: Basis) -> Result<SymSeries> {
    let d = series.bound;
    match target {
        Basis::Monomial => Ok(series.clone()),
        Basis::Augmented => {
            let mut s = SymSeries::zero(Basis::Augmented, d);
            for (p, c) in &series.coeffs {
                s.add_term(p.clone(), c / Rational::from_integer(p.multiplicity_factorial()));
            }
            Ok(s)
        }
        Basis::KAugmented => {
            // m̄_λ = r(λ)! m_λ + terms of strictly larger size, so peeling off
            // the smallest remaining key terminates.
            let mut rest = series.clone();
            let mut out = SymSeries::zero(Basis::KAugmented, d);
            let mut cache: HashMap<Partition, SymSeries> = HashMap::new();
            while let Some((p, c)) = rest.coeffs.iter().next().map(|(p, c)| (p.clone(), c.clone())) {
                if p.size() > d {
                    return Err(KsfError::TruncationInsufficient {
                        bound: d,
                        needed: p.size(),
                    });
                }
                let lead = c / Rational::from_integer(p.multiplicity_factorial());
                let expansion = cache
                    .entry(p.clone())
                    .or_insert_with(|| kaugmented_in_monomial(&p, d));
                for (q, v) in &expansion.coeffs {
                    rest.add_term(q.clone(), -(&lead * v));
                }
                debug_assert!(rest.coeff(&p).is_zero());
                out.add_term(p, lead);
            }
            Ok(out)
        }
    }
}

/// Exact change of basis at the series' own bound.
pub fn convert(series: &SymSeries, target: Basis) -> Result<SymSeries> {
    if series.basis == target {
        return Ok(series.clone());
    }
    from_monomial(&to_monomial(series), target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn r(n: i64) -> Rational {
        rat(n)
    }

    fn series(basis: Basis, d: usize, terms: &[(&[u32], i64)]) -> SymSeries {
        let mut s = SymSeries::zero(basis, d);
        for (p, c) in terms {
            s.add_term(pt(p), r(*c));
        }
        s
    }

    #[test]
    fn rendering() {
        let s = series(Basis::KAugmented, 7, &[(&[4, 2, 1], 3), (&[1], -1), (&[], 1)]);
        assert_eq!(s.to_string(), "1*mbar[] + -1*mbar[1] + 3*mbar[4,2,1]");
        let half = SymSeries::term(Basis::Monomial, 2, pt(&[2]), Rational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2*m[2]");
        assert_eq!(SymSeries::zero(Basis::Augmented, 3).to_string(), "0");
    }

    #[test]
    fn truncation_closed() {
        let mut s = SymSeries::zero(Basis::KAugmented, 2);
        s.add_term(pt(&[3]), r(1));
        assert!(s.is_zero());
        s.add_term(pt(&[1]), r(2));
        s.add_term(pt(&[1]), r(-2));
        assert!(s.is_zero());
        let t = series(Basis::KAugmented, 4, &[(&[2, 1], 1), (&[4], 1)]).truncate(3).unwrap();
        assert_eq!(t, series(Basis::KAugmented, 3, &[(&[2, 1], 1)]));
        assert!(t.truncate(4).is_err());
    }

    #[test]
    fn odot_examples() {
        let a = series(Basis::KAugmented, 13, &[(&[3, 2, 1, 1], 1)]);
        let b = series(Basis::KAugmented, 13, &[(&[4, 2], 1)]);
        assert_eq!(
            odot_product(&a, &b).unwrap(),
            series(Basis::KAugmented, 13, &[(&[4, 3, 2, 2, 1, 1], 1)])
        );
        let one_plus = series(Basis::KAugmented, 3, &[(&[], 1), (&[1], 1)]);
        let inv = series(
            Basis::KAugmented,
            3,
            &[(&[], 1), (&[1], -1), (&[1, 1], 1), (&[1, 1, 1], -1)],
        );
        assert_eq!(odot_product(&one_plus, &inv).unwrap(), SymSeries::one(Basis::KAugmented, 3));
        assert_eq!(odot_product(&a, &SymSeries::one(Basis::KAugmented, 13)).unwrap(), a);
    }

    #[test]
    fn product_errors() {
        let a = SymSeries::one(Basis::KAugmented, 3);
        let m = SymSeries::one(Basis::Monomial, 3);
        assert!(matches!(odot_product(&a, &m), Err(KsfError::BasisMismatch(_))));
        assert!(matches!(odot_product(&m, &m), Err(KsfError::BasisMismatch(_))));
        assert!(matches!(ordinary_product(&a, &a), Err(KsfError::BasisMismatch(_))));
        let a4 = SymSeries::one(Basis::KAugmented, 4);
        assert!(odot_product(&a, &a4).is_err());
        assert!(a.try_add(&a4).is_err());
    }

    #[test]
    fn monomial_products() {
        let m1 = series(Basis::Monomial, 3, &[(&[1], 1)]);
        let m2 = series(Basis::Monomial, 3, &[(&[2], 1)]);
        assert_eq!(
            ordinary_product(&m1, &m1).unwrap(),
            series(Basis::Monomial, 3, &[(&[2], 1), (&[1, 1], 2)])
        );
        assert_eq!(
            ordinary_product(&m1, &m2).unwrap(),
            series(Basis::Monomial, 3, &[(&[3], 1), (&[2, 1], 1)])
        );
        let one = SymSeries::one(Basis::Monomial, 3);
        assert_eq!(ordinary_product(&one, &m2).unwrap(), m2);
        // m_11 * m_1 = m_21 + 3 m_111 (standard identity).
        assert_eq!(
            monomial_product_terms(&pt(&[1, 1]), &pt(&[1])),
            vec![(pt(&[1, 1, 1]), 3), (pt(&[2, 1]), 1)]
        );
    }

    /// Oracle for structure constants: expand monomials on a finite variable
    /// set large enough to hold every term and read off coefficients.
    fn brute_monomial_product(lam: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
        let nvars = lam.len() + mu.len();
        fn monomials(p: &Partition, nvars: usize) -> Vec<Vec<u32>> {
            let mut out = std::collections::BTreeSet::new();
            fn rec(parts: &[u32], used: &mut Vec<u32>, out: &mut std::collections::BTreeSet<Vec<u32>>) {
                if parts.is_empty() {
                    out.insert(used.clone());
                    return;
                }
                for i in 0..used.len() {
                    if used[i] == 0 {
                        used[i] = parts[0];
                        rec(&parts[1..], used, out);
                        used[i] = 0;
                    }
                }
            }
            rec(p.parts(), &mut vec![0; nvars], &mut out);
            out.into_iter().collect()
        }
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        for a in monomials(lam, nvars) {
            for b in monomials(mu, nvars) {
                let s: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                *counts.entry(s).or_default() += 1;
            }
        }
        let mut out = vec![];
        for (exps, c) in counts {
            let nz: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
            let leading = exps.iter().take(nz.len()).copied().collect::<Vec<_>>();
            if leading == nz && nz.windows(2).all(|w| w[0] >= w[1]) {
                out.push((Partition::from_sorted(nz), c));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn structure_constants_match_expansion() {
        let parts = Partition::all_up_to(4);
        for a in &parts {
            for b in &parts {
                assert_eq!(monomial_product_terms(a, b), brute_monomial_product(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn conversions() {
        let mt = series(Basis::Augmented, 2, &[(&[1, 1], 1)]);
        assert_eq!(
            convert(&mt, Basis::Monomial).unwrap(),
            series(Basis::Monomial, 2, &[(&[1, 1], 2)])
        );
        let mb = series(Basis::KAugmented, 3, &[(&[1, 1], 1)]);
        assert_eq!(
            convert(&mb, Basis::Monomial).unwrap(),
            series(Basis::Monomial, 3, &[(&[1, 1], 2), (&[1, 1, 1], 6)])
        );
        let m2 = series(Basis::KAugmented, 4, &[(&[2], 1)]);
        let there = convert(&m2, Basis::Monomial).unwrap();
        assert_eq!(convert(&there, Basis::KAugmented).unwrap(), m2);
        assert_eq!(convert(&m2, Basis::Augmented).unwrap().basis(), Basis::Augmented);
    }

    fn arb_series(basis: Basis, d: usize) -> impl Strategy<Value = SymSeries> {
        let parts = Partition::all_up_to(d);
        proptest::collection::vec((0..parts.len(), -3i64..=3), 0..6).prop_map(move |ts| {
            let mut s = SymSeries::zero(basis, d);
            for (i, c) in ts {
                s.add_term(parts[i].clone(), r(c));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn odot_ring_laws(
            a in arb_series(Basis::KAugmented, 5),
            b in arb_series(Basis::KAugmented, 5),
            c in arb_series(Basis::KAugmented, 5),
        ) {
            let ab = odot_product(&a, &b).unwrap();
            prop_assert_eq!(&ab, &odot_product(&b, &a).unwrap());
            prop_assert_eq!(
                odot_product(&ab, &c).unwrap(),
                odot_product(&a, &odot_product(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(odot_product(&a, &SymSeries::one(Basis::KAugmented, 5)).unwrap(), a.clone());
            prop_assert_eq!(
                odot_product(&a, &(&b + &c)).unwrap(),
                &ab + &odot_product(&a, &c).unwrap()
            );
        }

        #[test]
        fn monomial_round_trip(a in arb_series(Basis::Monomial, 5)) {
            let k = convert(&a, Basis::KAugmented).unwrap();
            prop_assert_eq!(convert(&k, Basis::Monomial).unwrap(), a.clone());
            let t = convert(&a, Basis::Augmented).unwrap();
            prop_assert_eq!(convert(&t, Basis::Monomial).unwrap(), a);
        }
    }
}
