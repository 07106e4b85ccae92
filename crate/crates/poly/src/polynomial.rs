use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::{Context, Monomial, PolyError, Result};

/// Coefficient ring. Any commutative ring with the usual `num-traits`
/// plumbing qualifies: `BigInt`, `i64`, `BigRational`, ...
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}

/// Sparse polynomial. Terms are kept sorted in descending graded-lex order
/// with no zero coefficients, so equality is structural.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C> {
    ctx: Context,
    terms: Vec<(Monomial, C)>,
}

fn accumulate<C: Coeff>(acc: &mut HashMap<Monomial, C>, m: Monomial, c: C) {
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            let v = e.get_mut();
            let old = std::mem::replace(v, C::zero());
            *v = old + c;
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ctx: &Context) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &Context, c: C) -> Self {
        Self::term(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn term(ctx: &Context, m: Monomial, c: C) -> Self {
        assert_eq!(m.exponents().len(), ctx.len(), "monomial arity");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The variable with index `i`.
    pub fn var(ctx: &Context, i: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.len(), i), C::one())
    }

    pub fn var_named(ctx: &Context, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.index_of(name)?))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ctx.len(), "monomial arity");
            accumulate(&mut acc, m, c);
        }
        Self::from_map(ctx, acc)
    }

    fn from_map(ctx: &Context, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Largest exponent of variable `var`; `None` for zero.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max()
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&v| self.terms.iter().any(|(m, _)| m.exponents()[v] > 0))
            .collect()
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.clone() + cb.clone();
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms: out,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (ms, cs) = &small.terms[0];
            let mut terms = Vec::with_capacity(big.len());
            for (mb, cb) in &big.terms {
                let c = cs.clone() * cb.clone();
                if !c.is_zero() {
                    terms.push((ms.mul(mb)?, c));
                }
            }
            // Multiplying by a monomial preserves the graded-lex order.
            return Ok(Polynomial {
                ctx: self.ctx.clone(),
                terms,
            });
        }
        let mut acc = HashMap::with_capacity(big.len() * 2);
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                accumulate(&mut acc, ms.mul(mb)?, cs.clone() * cb.clone());
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Polynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut k: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let k = C::from_u32(e as u32).expect("exponent fits in the coefficient ring");
            let c = c.clone() * k;
            if !c.is_zero() {
                terms.push((Monomial::from_exponents(exps), c));
            }
        }
        // Lowering one exponent can reorder terms, so renormalize.
        Self::from_terms(&self.ctx, terms)
    }

    /// Replaces variable `var` by the polynomial `q` (same context).
    pub fn substitute(&self, var: usize, q: &Self) -> Result<Self> {
        self.same_context(q)?;
        let max = self.degree_in(var).unwrap_or(0) as usize;
        let mut powers = vec![Self::one(&self.ctx)];
        for k in 1..=max {
            let next = powers[k - 1].checked_mul(q)?;
            powers.push(next);
        }
        // Group terms by exponent of `var` so each power is used once.
        let mut groups: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); max + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            groups[e].push((Monomial::from_exponents(exps), c.clone()));
        }
        let mut acc = HashMap::new();
        for (e, group) in groups.into_iter().enumerate() {
            if group.is_empty() {
                continue;
            }
            let rest = Self::from_terms(&self.ctx, group);
            for (m, c) in rest.checked_mul(&powers[e])?.terms {
                accumulate(&mut acc, m, c);
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: usize, k: u16) -> Self {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] == k)
            .map(|(m, c)| {
                let mut exps = m.exponents().to_vec();
                exps[var] = 0;
                (Monomial::from_exponents(exps), c.clone())
            })
            .collect();
        Self::from_terms(&self.ctx, terms)
    }

    /// Moves the polynomial into another context, mapping variable `i` to
    /// `map[i]`. Variables mapped to `None` must not occur.
    pub fn remap(&self, target: &Context, map: &[Option<usize>]) -> Result<Self> {
        assert_eq!(map.len(), self.ctx.len());
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => return Err(PolyError::UnknownVariable(self.ctx.name(i).to_string())),
                }
            }
            terms.push((Monomial::from_exponents(exps), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Evaluates at a point, converting coefficients with `conv`.
    pub fn eval_with<T, F>(&self, point: &[T], conv: F) -> T
    where
        T: Clone + Zero + One + Mul<Output = T>,
        F: Fn(&C) -> T,
    {
        assert_eq!(point.len(), self.ctx.len());
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut t = conv(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(&self.ctx, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Σ_v ∂p/∂x_v = 0, which in characteristic zero is equivalent to
    /// p(x + c·1) = p(x) for every shift c.
    pub fn is_translation_invariant(&self) -> bool {
        let mut acc = HashMap::new();
        for v in 0..self.ctx.len() {
            for (m, c) in self.derivative(v).terms {
                accumulate(&mut acc, m, c);
            }
        }
        acc.values().all(|c| c.is_zero())
    }
}

impl<C: Coeff + Integer + Signed> Polynomial<C> {
    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn canonicalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone() / g.clone()))
            .collect();
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Exact division by a scalar.
    pub fn div_exact_scalar(&self, k: &C) -> Result<Self> {
        if k.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            terms.push((m.clone(), q));
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Exact multivariate division; errors unless `divisor` divides `self`.
    ///
    /// With a single divisor the graded-lex division algorithm leaves a zero
    /// remainder exactly when the division is exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.same_context(divisor)?;
        let (lm, lc) = divisor
            .leading()
            .cloned()
            .ok_or(PolyError::InexactDivision)?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.div(&lm).ok_or(PolyError::InexactDivision)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let step = Polynomial::term(&self.ctx, qm.clone(), qc.clone());
            rem = rem.checked_sub(&divisor.checked_mul(&step)?)?;
            quotient.push((qm, qc));
        }
        Ok(Self::from_terms(&self.ctx, quotient))
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<'a, C: Coeff> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    /// Panics on a context mismatch; use [`Polynomial::checked_add`] to handle it.
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl<'a, C: Coeff> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl<'a, C: Coeff> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(self)
    }
}
