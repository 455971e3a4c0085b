//! Univariate polynomials over the base field, just enough to split minimal
//! polynomials when decomposing semisimple algebras.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{abs_big, rational_parts, Field, Scalar};

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

const BRUTE_FORCE_LIMIT: u32 = 1 << 16;
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        Poly::new(field, vec![c])
    }

    /// `t - root`
    pub fn linear(field: Field, root: &Scalar) -> Self {
        Poly::new(field, vec![-root, field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero lead");
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let neg = Poly::new(self.field, other.coeffs.iter().map(|c| -c).collect());
        self.add(&neg)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(self.field, vec![]);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let lead = divisor.lead().expect("division by zero polynomial");
        let inv = lead.inverse().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::new(self.field, vec![]), self.clone());
        }
        let mut quot = vec![self.field.zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quot[i] = c;
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g = gcd`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let zero = Poly::new(f, vec![]);
        let one = Poly::constant(f, f.one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().map(|l| l.inverse().expect("nonzero")).unwrap_or_else(|| f.one());
        let c = Poly::constant(f, inv);
        (r0.mul(&c), s0.mul(&c), t0.mul(&c))
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| &self.field.from_i64(i as i64) * a)
            .collect();
        Poly::new(self.field, c)
    }

    fn powmod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.divrem(modulus).1;
        let mut acc = Poly::constant(self.field, self.field.one()).divrem(modulus).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(modulus).1;
            }
            base = base.mul(&base).divrem(modulus).1;
            e >>= 1;
        }
        acc
    }

    /// Distinct roots in the base field. For the rationals the search gives up
    /// on candidates whose numerators or denominators are too large to factor,
    /// so the returned list may be incomplete in that case.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let mut roots = if self.field.is_rational() {
            self.rational_roots()
        } else if self.field.characteristic() <= BRUTE_FORCE_LIMIT {
            let elems = self.field.elements().expect("prime field");
            elems.into_iter().filter(|x| self.eval(x).is_zero()).collect()
        } else {
            self.modular_roots_cz()
        };
        roots.sort_by_key(|r| r.to_string());
        roots.dedup();
        roots
    }

    fn rational_roots(&self) -> Vec<Scalar> {
        let f = self.field;
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            let (_, d) = rational_parts(c.as_rational().expect("rational"));
            denom_lcm = denom_lcm.lcm(&d);
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = rational_parts(c.as_rational().expect("rational"));
                n * (&denom_lcm / d)
            })
            .collect();
        let mut roots = Vec::new();
        let start = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if start > 0 {
            roots.push(f.zero());
        }
        let a0 = abs_big(&ints[start]);
        let an = abs_big(ints.last().expect("nonzero poly"));
        let (Some(num_divs), Some(den_divs)) = (divisors(&a0), divisors(&an)) else {
            return roots;
        };
        for p in &num_divs {
            for q in &den_divs {
                for sign in [1i64, -1] {
                    let cand = f
                        .from_ratio(&(BigInt::from(*p) * sign), &BigInt::from(*q))
                        .expect("nonzero denominator");
                    if self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    /// Cantor–Zassenhaus splitting of the linear part, for large odd primes.
    fn modular_roots_cz(&self) -> Vec<Scalar> {
        let f = self.field;
        let p = f.characteristic() as u64;
        let t = Poly::new(f, vec![f.zero(), f.one()]);
        let monic = self.monic();
        let tp = t.powmod(p, &monic);
        let linear_part = monic.gcd(&tp.sub(&t));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut stack = vec![linear_part];
        let mut roots = Vec::new();
        while let Some(g) = stack.pop() {
            match g.degree() {
                0 => {}
                1 => roots.push(-&g.coeffs[0]),
                _ => loop {
                    let a = f.from_i64(rng.gen_range(0..p as i64));
                    let shifted = Poly::new(f, vec![a, f.one()]);
                    let h = shifted.powmod((p - 1) / 2, &g).sub(&Poly::constant(f, f.one()));
                    let d = g.gcd(&h);
                    if d.degree() > 0 && d.degree() < g.degree() {
                        let other = g.divrem(&d).0;
                        stack.push(d);
                        stack.push(other);
                        break;
                    }
                },
            }
        }
        roots
    }
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: Field, xs: &[i64]) -> Poly {
        Poly::new(f, xs.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn rational_roots_of_split_cubic() {
        let q = Field::RATIONALS;
        // (t - 1)(t + 2)(2t - 1) = 2t^3 + t^2 - 5t + 2
        let p = poly(q, &[2, -5, 1, 2]);
        let roots = p.roots();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn irreducible_has_no_roots() {
        assert!(poly(Field::RATIONALS, &[1, 0, 1]).roots().is_empty());
        assert!(poly(Field::prime(3).unwrap(), &[1, 0, 1]).roots().is_empty());
    }

    #[test]
    fn large_prime_roots() {
        let f = Field::prime(1_000_003).unwrap();
        let p = Poly::linear(f, &f.from_i64(17))
            .mul(&Poly::linear(f, &f.from_i64(123_456)))
            .mul(&poly(f, &[2, 0, 1]));
        let mut roots: Vec<u32> = p.roots().iter().map(|r| r.residue().unwrap()).collect();
        roots.sort();
        let expected_extra = p.roots().len() - 2;
        assert!(roots.contains(&17) && roots.contains(&123_456));
        assert!(expected_extra <= 2);
    }

    #[test]
    fn ext_gcd_identity() {
        let q = Field::RATIONALS;
        let a = poly(q, &[-1, 0, 1]);
        let b = poly(q, &[1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, poly(q, &[1, 1]));
    }
}
