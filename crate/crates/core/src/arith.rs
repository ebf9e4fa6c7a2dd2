//! Number-theoretic kernels: Kronecker symbols, sieves, and small
//! multiplicative functions.

use crate::error::{Error, Result};

/// Kronecker symbol (a|n), extended to all integer pairs except (0, 0).
///
/// Binary algorithm: no factorization, O(log) word operations.
pub fn kronecker(a: i64, n: i64) -> i32 {
    assert!(a != 0 || n != 0, "kronecker(0, 0) is undefined");
    let mut a = a;
    let mut n = n;
    if n == 0 {
        // (a|0) = 1 iff a = ±1.
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    // Pull out the even part of n; (a|2) is 0 for even a, else (2|a) pattern.
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let mut tz = 0u32;
        while n % 2 == 0 {
            n /= 2;
            tz += 1;
        }
        if tz % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    a = a.rem_euclid(n);
    // Jacobi loop on odd n > 0.
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Simple bit sieve of Eratosthenes; returns all primes <= bound.
pub fn primes_up_to(bound: u64) -> Vec<u32> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u32);
        }
    }
    primes
}

/// Smallest-prime-factor table plus prime list, built by a linear sieve.
pub struct SpfTable {
    pub bound: u64,
    spf: Vec<u32>,
    pub primes: Vec<u32>,
}

impl SpfTable {
    pub fn build(bound: u64) -> Result<Self> {
        if bound > u32::MAX as u64 {
            return Err(Error::Resource(format!(
                "spf table bound {bound} exceeds u32 range"
            )));
        }
        let n = bound as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in primes.iter() {
                let ip = i * p as usize;
                if p > spf[i] || ip > n {
                    break;
                }
                spf[ip] = p;
            }
        }
        Ok(SpfTable { bound, spf, primes })
    }

    /// Least prime factor of n (2 <= n <= bound).
    #[inline]
    pub fn spf(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    fn check(&self, n: u64) -> Result<()> {
        if n < 1 || n > self.bound {
            return Err(Error::Range(format!(
                "n = {n} outside spf table range [1, {}]",
                self.bound
            )));
        }
        Ok(())
    }

    /// Prime factorization (p, multiplicity) in increasing p.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u32, u32)>> {
        self.check(n)?;
        let mut out = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m as usize];
            let mut e = 0u32;
            while m % p as u64 == 0 {
                m /= p as u64;
                e += 1;
            }
            out.push((p, e));
        }
        Ok(out)
    }

    /// Number of prime factors counted with multiplicity.
    pub fn omega_big(&self, n: u64) -> Result<u32> {
        self.check(n)?;
        let mut m = n;
        let mut count = 0;
        while m > 1 {
            m /= self.spf[m as usize] as u64;
            count += 1;
        }
        Ok(count)
    }

    /// Multiplicative w(n) with w(p^a) = a!.
    pub fn w_multiplicative(&self, n: u64) -> Result<u64> {
        let mut w = 1u64;
        for (_, e) in self.factorize(n)? {
            w *= factorial_u64(e);
        }
        Ok(w)
    }

    /// Moebius function via the spf table.
    pub fn mu(&self, n: u64) -> Result<i32> {
        let f = self.factorize(n)?;
        if f.iter().any(|&(_, e)| e > 1) {
            return Ok(0);
        }
        Ok(if f.len() % 2 == 0 { 1 } else { -1 })
    }

    /// Divisor count d(n).
    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        let mut d = 1u64;
        for (_, e) in self.factorize(n)? {
            d *= (e + 1) as u64;
        }
        Ok(d)
    }
}

fn factorial_u64(n: u32) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

/// Integer square-root test.
pub fn is_square(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let r = (n as f64).sqrt() as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if (c as u128) * (c as u128) == n as u128 {
            return true;
        }
    }
    false
}

/// Square-free part: n = n1 * n2^2 with n1 square-free; returns (n1, n2).
pub fn squarefree_part(spf: &SpfTable, n: u64) -> Result<(u64, u64)> {
    let mut n1 = 1u64;
    let mut n2 = 1u64;
    for (p, e) in spf.factorize(n)? {
        if e % 2 == 1 {
            n1 *= p as u64;
        }
        n2 *= (p as u64).pow(e / 2);
    }
    Ok((n1, n2))
}

/// Sieved enumeration of the family: odd square-free d in (0, X).
pub struct FamilyIndex {
    pub x: u64,
    marked: Vec<bool>,
}

impl FamilyIndex {
    pub fn build(x: u64) -> Result<Self> {
        if x < 16 {
            return Err(Error::Domain(format!("family bound X = {x} < 16")));
        }
        if x > 1 << 34 {
            return Err(Error::Resource(format!("family bound X = {x} too large")));
        }
        let n = x as usize;
        let mut marked = vec![false; n];
        for d in (1..n).step_by(2) {
            marked[d] = true;
        }
        let mut p = 3usize;
        while p * p < n {
            // p odd suffices: even d are already unmarked.
            let sq = p * p;
            let mut j = sq;
            while j < n {
                marked[j] = false;
                j += sq;
            }
            p += 2;
        }
        // Odd p without odd prime square divisors is square-free except 9, 25, ...
        // handled above for every odd p, prime or not: composite p's squares are
        // multiples of smaller prime squares, so the extra passes are harmless.
        Ok(FamilyIndex { x, marked })
    }

    /// True iff d is odd, square-free, and 0 < d < X.
    #[inline]
    pub fn contains(&self, d: u64) -> bool {
        (d as usize) < self.marked.len() && self.marked[d as usize]
    }

    pub fn count(&self) -> u64 {
        self.marked.iter().filter(|&&b| b).count() as u64
    }

    /// Iterator over all family members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.marked
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(d, _)| d as u64)
    }

    /// Family members d with lo < d < hi.
    pub fn members_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        let hi = hi.min(self.x);
        (lo + 1..hi).filter(|&d| self.contains(d)).collect()
    }
}

/// Table of chi_{8d}(p) over a prime list, with composite evaluation through
/// complete multiplicativity and an spf walk.
pub struct Chi8d<'a> {
    pub d: u64,
    spf: &'a SpfTable,
    /// chi_{8d}(p) indexed by p itself (0 for non-prime slots).
    on_prime: Vec<i8>,
}

impl<'a> Chi8d<'a> {
    /// Evaluate chi_{8d} on all primes <= bound (bound <= spf.bound).
    pub fn build(spf: &'a SpfTable, d: u64, bound: u64) -> Self {
        let mut on_prime = vec![0i8; bound as usize + 1];
        let a = 8 * d as i64;
        for &p in spf.primes.iter() {
            if p as u64 > bound {
                break;
            }
            on_prime[p as usize] = kronecker(a, p as i64) as i8;
        }
        Chi8d { d, spf, on_prime }
    }

    #[inline]
    pub fn on_prime(&self, p: u32) -> i8 {
        self.on_prime[p as usize]
    }

    /// chi_{8d}(n) for composite n via the spf table.
    #[inline]
    pub fn eval(&self, n: u64) -> i32 {
        let mut m = n;
        let mut s = 1i32;
        while m > 1 {
            let p = self.spf.spf(m) as u64;
            let c = self.on_prime[p as usize] as i32;
            if c == 0 {
                return 0;
            }
            loop {
                s *= c;
                m /= p;
                if m % p != 0 {
                    break;
                }
            }
        }
        s
    }
}
