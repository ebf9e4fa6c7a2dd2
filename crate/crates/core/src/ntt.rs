//! Number-theoretic transforms over 62-bit primes, used for exact integer
//! power-series products via CRT.

/// A prime q = c * 2^26 + 1 with a primitive root, plus Montgomery constants.
#[derive(Clone, Copy, Debug)]
pub struct NttPrime {
    pub q: u64,
    pub root: u64,
    // Montgomery: R = 2^64, q_inv = -q^{-1} mod 2^64, r2 = R^2 mod q.
    q_inv: u64,
    r2: u64,
}

const TWO_ADICITY: u32 = 26;

impl NttPrime {
    fn new(q: u64, root: u64) -> Self {
        // q_inv = -q^{-1} mod 2^64 by Newton iteration.
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        let q_inv = inv.wrapping_neg();
        let r = (1u128 << 64) % q as u128;
        let r2 = (r * r % q as u128) as u64;
        NttPrime { q, root, q_inv, r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.q_inv);
        let t2 = (t + m as u128 * self.q as u128) >> 64;
        let t2 = t2 as u64;
        if t2 >= self.q {
            t2 - self.q
        } else {
            t2
        }
    }

    #[inline(always)]
    fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline(always)]
    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        // b in Montgomery form.
        let mut acc = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.q - 2)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let modpow = |mut b: u128, mut e: u64, m: u128| {
        let mut r = 1u128;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    };
    // Deterministic witness set for all n < 3.3 * 10^24.
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = modpow(a as u128, d, n as u128);
        if x == 1 || x == n as u128 - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == n as u128 - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Find `count` primes of the form c * 2^26 + 1 just below 2^62, with
/// primitive roots, largest first.
pub fn ntt_primes(count: usize) -> Vec<NttPrime> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << (62 - TWO_ADICITY)) - 1;
    while out.len() < count {
        let q = (c << TWO_ADICITY) + 1;
        if is_prime_u64(q) {
            if let Some(g) = primitive_root(q, c) {
                out.push(NttPrime::new(q, g));
            }
        }
        c -= 1;
    }
    out
}

fn primitive_root(q: u64, c: u64) -> Option<u64> {
    // q - 1 = c * 2^26; factor c by trial division (c < 2^36).
    let mut factors = vec![2u64];
    let mut m = c;
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            factors.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 2;
    }
    if m > 1 {
        factors.push(m);
    }
    let modpow = |mut b: u128, mut e: u64| {
        let mut r = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q as u128;
            }
            b = b * b % q as u128;
            e >>= 1;
        }
        r as u64
    };
    'g: for g in 2..200u64 {
        for &f in &factors {
            if modpow(g as u128, (q - 1) / f) == 1 {
                continue 'g;
            }
        }
        return Some(g);
    }
    None
}

/// In-place iterative Cooley-Tukey NTT of power-of-two length (values in
/// Montgomery form).
fn ntt_in_place(p: &NttPrime, a: &mut [u64], invert: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    let log_n = n.trailing_zeros();
    debug_assert!(log_n <= TWO_ADICITY);

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }

    let g = p.to_mont(p.root);
    for len_log in 1..=log_n {
        let len = 1usize << len_log;
        let half = len >> 1;
        let mut w_len = p.pow(g, (p.q - 1) >> len_log);
        if invert {
            w_len = p.inv(w_len);
        }
        // Precompute twiddles for this stage.
        let mut tw = Vec::with_capacity(half);
        let mut w = p.to_mont(1);
        for _ in 0..half {
            tw.push(w);
            w = p.mul(w, w_len);
        }
        let mut i = 0;
        while i < n {
            for k in 0..half {
                let u = a[i + k];
                let v = p.mul(a[i + k + half], tw[k]);
                a[i + k] = p.add(u, v);
                a[i + k + half] = p.sub(u, v);
            }
            i += len;
        }
    }
    if invert {
        let inv_n = p.inv(p.to_mont(n as u64));
        for x in a.iter_mut() {
            *x = p.mul(*x, inv_n);
        }
    }
}

/// Residues mod one NTT prime, kept in ordinary (non-Montgomery) form.
pub struct ModSeries<'a> {
    pub prime: &'a NttPrime,
    pub coeffs: Vec<u64>,
}

impl<'a> ModSeries<'a> {
    pub fn new(prime: &'a NttPrime, coeffs: Vec<u64>) -> Self {
        ModSeries { prime, coeffs }
    }

    /// Truncated product: coefficients 0..=n_max of self * other.
    pub fn mul_truncated(&self, other: &ModSeries<'a>, n_max: usize) -> ModSeries<'a> {
        let p = self.prime;
        let la = self.coeffs.len().min(n_max + 1);
        let lb = other.coeffs.len().min(n_max + 1);
        let out_len = (la + lb - 1).min(n_max + 1);
        let size = (la + lb - 1).next_power_of_two();
        let mut fa: Vec<u64> = Vec::with_capacity(size);
        fa.extend(self.coeffs[..la].iter().map(|&c| p.to_mont(c)));
        fa.resize(size, 0);
        let mut fb: Vec<u64> = Vec::with_capacity(size);
        fb.extend(other.coeffs[..lb].iter().map(|&c| p.to_mont(c)));
        fb.resize(size, 0);
        ntt_in_place(p, &mut fa, false);
        ntt_in_place(p, &mut fb, false);
        for (x, y) in fa.iter_mut().zip(fb.iter()) {
            *x = p.mul(*x, *y);
        }
        drop(fb);
        ntt_in_place(p, &mut fa, true);
        fa.truncate(out_len);
        for x in fa.iter_mut() {
            *x = p.from_mont(*x);
        }
        ModSeries::new(p, fa)
    }

    pub fn sub(&self, other: &ModSeries<'a>) -> ModSeries<'a> {
        let p = self.prime;
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        let coeffs = (0..len)
            .map(|i| {
                let a = get(&self.coeffs, i);
                let b = get(&other.coeffs, i);
                if a >= b {
                    a - b
                } else {
                    a + p.q - b
                }
            })
            .collect();
        ModSeries::new(p, coeffs)
    }

    /// Multiply every coefficient by the modular inverse of k (k coprime to q).
    pub fn div_exact(&mut self, k: u64) {
        let p = self.prime;
        let inv = p.from_mont(p.inv(p.to_mont(k % p.q)));
        let inv_m = p.to_mont(inv);
        for x in self.coeffs.iter_mut() {
            *x = p.from_mont(p.mul(p.to_mont(*x), inv_m));
        }
    }
}
