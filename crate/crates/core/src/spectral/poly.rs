//! Exact univariate polynomials used for root isolation.
//!
//! Rational polynomials carry the Euclidean work (square-free split, Sturm
//! chains); integer polynomials evaluated at dyadic points carry the bisection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Coefficients low to high, no trailing zeros (zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        QPoly::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0 as well.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.lead().clone();
        QPoly(self.0.iter().map(|c| c / &lead).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        QPoly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if rem.len() < divisor.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let lead = divisor.lead().clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free factorization `self = c * Π f_i^i` (Yun). Returns the
    /// non-constant `(f_i, i)` pairs with monic `f_i`.
    pub fn square_free_factors(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut y = df.div_rem(&c).0;
        let mut z = y.sub(&w.derivative());
        let mut i = 1;
        while w.degree() > 0 {
            let g = w.gcd(&z);
            w = w.div_rem(&g).0;
            y = z.div_rem(&g).0;
            z = y.sub(&w.derivative());
            if g.degree() > 0 {
                out.push((g.monic(), i));
            }
            i += 1;
        }
        out
    }

    /// Positive-scaled integer multiple (same sign everywhere).
    pub fn to_int_poly(&self) -> IntPoly {
        let mut denom = BigInt::one();
        for c in &self.0 {
            denom = denom.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &denom).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return IntPoly(ints);
        }
        IntPoly(ints.into_iter().map(|c| c / &g).collect())
    }
}

/// Integer polynomial, low to high.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

/// The dyadic rational `num / 2^shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub shift: u32,
}

impl Dyadic {
    pub fn integer(v: BigInt) -> Self {
        Dyadic { num: v, shift: 0 }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let bits = self.num.bits();
        // keep the mantissa in range before scaling down
        if bits > 1000 {
            let drop = bits - 60;
            let head = (&self.num >> drop).to_f64().unwrap_or(f64::INFINITY);
            return head * 2f64.powi(drop as i32 - self.shift as i32);
        }
        self.num.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(self.shift as i32))
    }

    fn rescale(&self, shift: u32) -> BigInt {
        debug_assert!(shift >= self.shift);
        &self.num << (shift - self.shift)
    }
}

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Sign of the polynomial at `x` (exact).
    pub fn sign_at(&self, x: &Dyadic) -> Ordering {
        let Some(last) = self.0.last() else {
            return Ordering::Equal;
        };
        let d = self.degree();
        // 2^(shift*d) * p(num / 2^shift) by Horner
        let mut acc = last.clone();
        for j in (0..d).rev() {
            acc *= &x.num;
            if !self.0[j].is_zero() {
                acc += &self.0[j] << (x.shift as usize * (d - j));
            }
        }
        acc.sign_cmp()
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Sturm chain of a square-free polynomial.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &QPoly) -> Self {
        let mut rational = vec![f.clone(), f.derivative()];
        loop {
            let len = rational.len();
            if rational[len - 1].is_zero() {
                rational.pop();
                break;
            }
            if rational[len - 1].degree() == 0 {
                break;
            }
            let (_, r) = rational[len - 2].div_rem(&rational[len - 1]);
            if r.is_zero() {
                break;
            }
            rational.push(r.neg());
        }
        SturmChain {
            chain: rational.iter().map(QPoly::to_int_poly).collect(),
        }
    }

    pub fn sign_changes(&self, x: &Dyadic) -> usize {
        let mut changes = 0;
        let mut prev = Ordering::Equal;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if prev != Ordering::Equal && s != prev {
                changes += 1;
            }
            prev = s;
        }
        changes
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }
}

/// A root bracket `lo <= root <= hi` with dyadic endpoints on a shared scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigInt,
    pub hi: BigInt,
    pub shift: u32,
}

impl RootBracket {
    pub fn lo(&self) -> Dyadic {
        Dyadic { num: self.lo.clone(), shift: self.shift }
    }

    pub fn hi(&self) -> Dyadic {
        Dyadic { num: self.hi.clone(), shift: self.shift }
    }

    fn mid(&self) -> Dyadic {
        Dyadic { num: &self.lo + &self.hi, shift: self.shift + 1 }
    }

    fn refine_scale(&mut self) {
        self.lo <<= 1;
        self.hi <<= 1;
        self.shift += 1;
    }
}

/// Stopping rule for refinement: a bracket `[lo, hi]` on the squared scale is
/// narrow enough once `sqrt(hi) - sqrt(lo) <= eps`.
#[derive(Clone, Debug)]
pub struct SqrtWidthTarget {
    eps_sq_num: BigInt,
    eps_sq_den: BigInt,
}

impl SqrtWidthTarget {
    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite());
        let e = BigRational::from_float(eps).expect("finite eps");
        let sq = &e * &e;
        SqrtWidthTarget {
            eps_sq_num: sq.numer().clone(),
            eps_sq_den: sq.denom().clone(),
        }
    }

    fn satisfied(&self, b: &RootBracket) -> bool {
        let w = &b.hi - &b.lo;
        if w.is_zero() {
            return true;
        }
        let scale = BigInt::one() << b.shift as usize;
        // w <= eps^2 implies sqrt(hi) - sqrt(lo) <= sqrt(w) <= eps
        if &w * &self.eps_sq_den <= &self.eps_sq_num * &scale {
            return true;
        }
        // sqrt(hi) - sqrt(lo) <= w / (2 sqrt(lo)) <= eps  iff  w^2 <= 4 eps^2 lo
        if b.lo.is_positive() {
            let lhs = &w * &w * &self.eps_sq_den;
            let rhs = (&self.eps_sq_num * &b.lo * &scale) << 2;
            return lhs <= rhs;
        }
        false
    }
}

/// Isolates all roots of a square-free polynomial in `(0, bound]` and refines
/// each bracket until `target` is met.
pub fn isolate_positive_roots(f: &QPoly, bound: &BigInt, target: &SqrtWidthTarget) -> Vec<RootBracket> {
    let sturm = SturmChain::new(f);
    let lo = Dyadic::integer(BigInt::zero());
    let hi = Dyadic::integer(bound.clone());
    let v_lo = sturm.sign_changes(&lo);
    let v_hi = sturm.sign_changes(&hi);
    let mut out = Vec::new();
    let mut stack = vec![(
        RootBracket { lo: BigInt::zero(), hi: bound.clone(), shift: 0 },
        v_lo,
        v_hi,
    )];
    while let Some((mut b, v_lo, v_hi)) = stack.pop() {
        let count = v_lo.saturating_sub(v_hi);
        match count {
            0 => {}
            1 => out.push(refine_simple_root(sturm.poly(), b, target)),
            _ => {
                let mid = b.mid();
                let v_mid = sturm.sign_changes(&mid);
                b.refine_scale();
                let left = RootBracket { lo: b.lo.clone(), hi: mid.num.clone(), shift: b.shift };
                let right = RootBracket { lo: mid.num, hi: b.hi, shift: b.shift };
                stack.push((right, v_mid, v_hi));
                stack.push((left, v_lo, v_mid));
            }
        }
    }
    out.sort_by(|a, b| {
        let s = a.shift.max(b.shift);
        a.lo().rescale(s).cmp(&b.lo().rescale(s))
    });
    out
}

/// Bisects a bracket `(lo, hi]` holding exactly one simple root of `f`.
fn refine_simple_root(f: &IntPoly, mut b: RootBracket, target: &SqrtWidthTarget) -> RootBracket {
    let s_hi = f.sign_at(&b.hi());
    if s_hi == Ordering::Equal {
        return RootBracket { lo: b.hi.clone(), hi: b.hi, shift: b.shift };
    }
    while !target.satisfied(&b) {
        let mid = b.mid();
        let s_mid = f.sign_at(&mid);
        b.refine_scale();
        match s_mid {
            Ordering::Equal => {
                return RootBracket { lo: mid.num.clone(), hi: mid.num, shift: b.shift };
            }
            s if s == s_hi => b.hi = mid.num,
            _ => b.lo = mid.num,
        }
    }
    b
}
