//! Exact integer q-expansions of the level-1 Eisenstein series and their
//! products, computed per NTT prime and recombined by CRT.

use crate::ntt::{ntt_primes, ModSeries, NttPrime};
use sha2::{Digest, Sha256};

/// sigma_k(n) mod q for n = 0..=n_max (index 0 unused, set to 0).
fn sigma_mod(k: u32, n_max: usize, p: &NttPrime) -> Vec<u64> {
    let q = p.q;
    let mut s = vec![0u64; n_max + 1];
    for d in 1..=n_max as u64 {
        let mut dk = 1u128;
        for _ in 0..k {
            dk = dk * d as u128 % q as u128;
        }
        let dk = dk as u64;
        let mut m = d as usize;
        while m <= n_max {
            let t = s[m] + dk;
            s[m] = if t >= q { t - q } else { t };
            m += d as usize;
        }
    }
    s
}

/// E4 = 1 + 240 sum sigma_3(n) q^n, reduced mod q.
fn e4_mod(n_max: usize, p: &NttPrime) -> ModSeries<'_> {
    let mut c = sigma_mod(3, n_max, p);
    for x in c.iter_mut().skip(1) {
        *x = (*x as u128 * 240 % p.q as u128) as u64;
    }
    c[0] = 1;
    ModSeries::new(p, c)
}

/// E6 = 1 - 504 sum sigma_5(n) q^n, reduced mod q.
fn e6_mod(n_max: usize, p: &NttPrime) -> ModSeries<'_> {
    let mut c = sigma_mod(5, n_max, p);
    for x in c.iter_mut().skip(1) {
        let t = (*x as u128 * 504 % p.q as u128) as u64;
        *x = if t == 0 { 0 } else { p.q - t };
    }
    c[0] = 1;
    ModSeries::new(p, c)
}

/// Residues mod one prime of the integer coefficients a(n), n = 0..=n_max, of
/// the unique normalized cusp eigenform of the given weight.
pub fn eigenform_coeffs_mod(weight: u32, n_max: usize, p: &NttPrime) -> Vec<u64> {
    let e4 = e4_mod(n_max, p);
    let e6 = e6_mod(n_max, p);
    let e4sq = e4.mul_truncated(&e4, n_max);
    let e4cube = e4sq.mul_truncated(&e4, n_max);
    let e6sq = e6.mul_truncated(&e6, n_max);
    let mut delta = e4cube.sub(&e6sq);
    delta.div_exact(1728);
    let out = match weight {
        12 => delta,
        16 => delta.mul_truncated(&e4, n_max),
        18 => delta.mul_truncated(&e6, n_max),
        20 => delta.mul_truncated(&e4sq, n_max),
        22 => delta.mul_truncated(&e4, n_max).mul_truncated(&e6, n_max),
        26 => delta.mul_truncated(&e4sq, n_max).mul_truncated(&e6, n_max),
        _ => unreachable!("weight validated by caller"),
    };
    out.coeffs
}

/// Number of CRT primes needed so the product exceeds twice the Deligne bound
/// d(n) n^{(k-1)/2} with a generous divisor-count margin.
pub fn primes_needed(weight: u32, n_max: u64) -> usize {
    // log2 bound: 13 bits of divisor-count slack + (k-1)/2 * log2(n_max) + sign bit.
    let bits = 16.0 + (weight as f64 - 1.0) / 2.0 * (n_max as f64).log2();
    (bits / 61.0).ceil() as usize
}

/// Fixed-width unsigned accumulator for CRT mixed-radix evaluation.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Wide([u64; 8]);

impl Wide {
    fn zero() -> Self {
        Wide([0; 8])
    }

    fn from_u64(v: u64) -> Self {
        let mut w = Wide::zero();
        w.0[0] = v;
        w
    }

    fn mul_add_small(&mut self, m: u64, a: u64) {
        let mut carry = a as u128;
        for limb in self.0.iter_mut() {
            let t = *limb as u128 * m as u128 + carry;
            *limb = t as u64;
            carry = t >> 64;
        }
        debug_assert_eq!(carry, 0, "wide accumulator overflow");
    }

    fn ge(&self, other: &Wide) -> bool {
        for i in (0..8).rev() {
            if self.0[i] != other.0[i] {
                return self.0[i] > other.0[i];
            }
        }
        true
    }

    fn sub_from(&self, minuend: &Wide) -> Wide {
        // minuend - self, requires minuend >= self.
        let mut out = Wide::zero();
        let mut borrow = 0u64;
        for i in 0..8 {
            let (d, b1) = minuend.0[i].overflowing_sub(self.0[i]);
            let (d, b2) = d.overflowing_sub(borrow);
            out.0[i] = d;
            borrow = (b1 || b2) as u64;
        }
        debug_assert_eq!(borrow, 0);
        out
    }

    fn to_f64(&self) -> f64 {
        let mut v = 0.0f64;
        for i in (0..8).rev() {
            v = v * 1.8446744073709552e19 + self.0[i] as f64;
        }
        v
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }
}

/// Garner reconstruction of signed integers from residues mod the prime set.
pub struct CrtContext {
    primes: Vec<NttPrime>,
    /// inv_prefix[j] = (q_0 ... q_{j-1})^{-1} mod q_j.
    inv_prefix: Vec<u64>,
    half_modulus: Wide,
}

impl CrtContext {
    pub fn new(count: usize) -> Self {
        assert!(count >= 1 && count <= 7, "unsupported CRT width {count}");
        let primes = ntt_primes(count);
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
            r as u64
        };
        let mut inv_prefix = vec![0u64; count];
        for j in 1..count {
            let qj = primes[j].q as u128;
            let mut prod = 1u128;
            for q in primes.iter().take(j) {
                prod = prod * (q.q as u128 % qj) % qj;
            }
            inv_prefix[j] = modpow(prod, primes[j].q - 2, qj);
        }
        let mut modulus = Wide::from_u64(1);
        for q in &primes {
            modulus.mul_add_small(q.q, 0);
        }
        // Halve by shifting (all limbs).
        let mut half = modulus;
        let mut carry = 0u64;
        for i in (0..8).rev() {
            let cur = half.0[i];
            half.0[i] = (cur >> 1) | (carry << 63);
            carry = cur & 1;
        }
        CrtContext {
            primes,
            inv_prefix,
            half_modulus: half,
        }
    }

    pub fn primes(&self) -> &[NttPrime] {
        &self.primes
    }

    /// Reconstruct the centered representative as (sign, |value| as f64,
    /// canonical bytes for hashing). Exact for |value| < prod(q_i)/2.
    pub fn reconstruct(&self, residues: &[u64]) -> SignedWide {
        let k = self.primes.len();
        debug_assert_eq!(residues.len(), k);
        // Mixed-radix digits by Garner.
        let mut digits = vec![0u64; k];
        digits[0] = residues[0];
        for j in 1..k {
            let qj = self.primes[j].q as u128;
            // c = value-so-far mod q_j.
            let mut c = 0u128;
            for i in (0..j).rev() {
                c = (c * (self.primes[i].q as u128 % qj) + digits[i] as u128) % qj;
            }
            let r = residues[j] as u128 % qj;
            let diff = (r + qj - c) % qj;
            digits[j] = (diff * self.inv_prefix[j] as u128 % qj) as u64;
        }
        // value = digits[k-1]; value = value*q_i + digits[i] downward.
        let mut v = Wide::from_u64(digits[k - 1]);
        for i in (0..k - 1).rev() {
            v.mul_add_small(self.primes[i].q, digits[i]);
        }
        if v.ge(&self.half_modulus) && !v.is_zero() {
            // Negative: value - M.
            let mut modulus = Wide::from_u64(1);
            for q in &self.primes {
                modulus.mul_add_small(q.q, 0);
            }
            let mag = v.sub_from(&modulus);
            SignedWide {
                negative: true,
                magnitude: mag,
            }
        } else {
            SignedWide {
                negative: false,
                magnitude: v,
            }
        }
    }
}

/// A signed integer of at most 8 limbs (CRT output).
pub struct SignedWide {
    pub negative: bool,
    magnitude: Wide,
}

impl SignedWide {
    pub fn to_f64(&self) -> f64 {
        let m = self.magnitude.to_f64();
        if self.negative {
            -m
        } else {
            m
        }
    }

    /// Canonical byte encoding fed to the coefficient digest: sign byte, then
    /// the eight little-endian limbs.
    pub fn write_digest_bytes(&self, hasher: &mut Sha256) {
        let sign = if self.magnitude.is_zero() {
            0u8
        } else if self.negative {
            2
        } else {
            1
        };
        hasher.update([sign]);
        for limb in self.magnitude.0 {
            hasher.update(limb.to_le_bytes());
        }
    }

    #[cfg(test)]
    pub fn to_i128(&self) -> i128 {
        let mut v = 0i128;
        for i in (0..8).rev() {
            assert!(self.magnitude.0[i] == 0 || i < 2, "value exceeds i128");
            if i < 2 {
                v = (v << 64) | self.magnitude.0[i] as i128;
            }
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}
