//! The integers as an analytic object.
//!
//! Finite domains are fields, so statements about domains need an infinite
//! example. Every fact here about `Z` and `Z/n` comes from gcd arithmetic;
//! the carrier of `Z` is never enumerated.

use num_integer::Integer;
use serde::Serialize;

use crate::HarnessError;

/// The `Z`-module `Z/n`. `n = 0` is `Z` itself and `n = 1` the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZModule {
    pub n: u64,
}

/// Cases registered for the domain-based checks.
pub const CASES: std::ops::RangeInclusive<u64> = 2..=30;

/// Integers sampled when a statement quantifies over `Z`: enough to reach
/// every residue class and every divisor of `n`.
fn sample(n: u64) -> impl Iterator<Item = i64> {
    let span = 2 * n.max(2) as i64;
    -span..=span
}

impl ZModule {
    pub fn new(n: u64) -> ZModule {
        ZModule { n }
    }

    pub fn is_zero(self) -> bool {
        self.n == 1
    }

    /// Module descriptor in the construction language, over the ring `ZZ`.
    pub fn descriptor(self) -> String {
        if self.n == 0 {
            "Reg".to_string()
        } else {
            format!("Cyclic({})", self.n)
        }
    }

    /// `k ∈ Z_Z(Z/n)`: some nonzero class is killed by `k`, i.e. `gcd(k, n) > 1`.
    /// For `n = 0` this is `Z(Z) = {0}`.
    pub fn is_zero_divisor(self, k: i64) -> bool {
        match self.n {
            0 => k == 0,
            1 => false,
            n => (k.unsigned_abs()).gcd(&n) > 1,
        }
    }

    /// A nonzero class killed by `k`, when there is one: `n / gcd(k, n)`.
    pub fn killed_element(self, k: i64) -> Option<u64> {
        if self.n < 2 {
            return None;
        }
        let g = k.unsigned_abs().gcd(&self.n);
        (g > 1).then(|| self.n / g)
    }

    /// `Z(Z) ⊆ Z(Z/n)`: always, since `0` kills every nonzero class.
    pub fn is_auslander(self) -> Option<bool> {
        (!self.is_zero()).then_some(true)
    }

    /// `Z(Z/n) ⊆ {0}`. Fails for `n ≥ 2`; the witness is the least prime
    /// factor of `n`, which is the least positive zero-divisor.
    pub fn is_torsion_free(self) -> Option<bool> {
        (!self.is_zero()).then_some(self.n == 0)
    }

    pub fn torsion_witness(self) -> Option<i64> {
        (self.n >= 2).then(|| (2..=self.n).find(|p| self.n % p == 0).expect("n ≥ 2 has a prime factor") as i64)
    }

    /// `Ann(Z/n) = (n)`.
    pub fn is_faithful(self) -> bool {
        self.n == 0
    }

    /// `Z` is free; `Z/n` is torsion, hence not flat.
    pub fn is_flat(self) -> bool {
        self.n == 0
    }

    /// An ideal `(d)` lies in `Z(Z/n)` iff `gcd(d, n) > 1`, and then it kills
    /// `n / p` for a prime `p | gcd(d, n)`. Over `Z` the only such ideal is `(0)`,
    /// which kills everything.
    pub fn has_property_a(self) -> bool {
        if self.is_zero() {
            return true;
        }
        sample(self.n).all(|d| {
            let inside = sample(self.n).all(|k| self.is_zero_divisor(d * k));
            !inside || (self.n == 0 && d == 0) || self.killed_element(d).is_some()
        })
    }

    /// Kernel of `M -> M ⊗ Q`: elements killed by a nonzero integer. All of
    /// `Z/n`, since `n` is regular in `Z`; zero for `Z`.
    pub fn natural_map_kernel_is_zero(self) -> bool {
        self.n == 0 || self.n == 1
    }

    /// `Z_Z(Z/n) ⊇ (n)` on the sampled multiples of `n`.
    pub fn contains_defining_ideal(self) -> bool {
        sample(self.n).all(|k| self.is_zero_divisor(k * self.n as i64))
    }
}

/// One adapter case: `Z_Z(Z/n) ⊇ (n)`, Auslander and torsion-free verdicts
/// and the torsion witness. The zero module is flagged degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZCheck {
    pub module: String,
    pub degenerate: bool,
    pub contains_defining_ideal: bool,
    pub auslander: Option<bool>,
    pub torsion_free: Option<bool>,
    pub witness: Option<i64>,
}

/// Case `0` is `Z`, case `n >= 1` is `Z/n`; cases above the registered
/// range are unknown.
pub fn z_adapter_check(n: u64) -> Result<ZCheck, HarnessError> {
    if n > *CASES.end() {
        return Err(HarnessError::UnknownCase(n));
    }
    let z = ZModule::new(n);
    Ok(ZCheck {
        module: z.descriptor(),
        degenerate: z.is_zero(),
        contains_defining_ideal: z.contains_defining_ideal(),
        auslander: z.is_auslander(),
        torsion_free: z.is_torsion_free(),
        witness: z.torsion_witness(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let six = ZModule::new(6);
        assert_eq!(six.is_auslander(), Some(true));
        assert_eq!(six.is_torsion_free(), Some(false));
        assert_eq!(six.torsion_witness(), Some(2));
        assert_eq!(ZModule::new(5).torsion_witness(), Some(5));
        assert_eq!(ZModule::new(1).is_auslander(), None);
        assert_eq!(ZModule::new(0).is_torsion_free(), Some(true));
        assert!(!six.is_zero_divisor(5) && six.is_zero_divisor(4) && six.is_zero_divisor(0));
        assert_eq!(six.killed_element(4), Some(3));
    }

    #[test]
    fn adapter_cases() {
        let six = z_adapter_check(6).unwrap();
        assert_eq!((six.auslander, six.torsion_free, six.witness), (Some(true), Some(false), Some(2)));
        let five = z_adapter_check(5).unwrap();
        assert_eq!((five.auslander, five.torsion_free, five.witness), (Some(true), Some(false), Some(5)));
        assert!(z_adapter_check(1).unwrap().degenerate);
        assert!(z_adapter_check(31).is_err());
    }

    #[test]
    fn gcd_facts_match_residue_arithmetic() {
        for n in CASES {
            let m = ZModule::new(n);
            assert!(m.contains_defining_ideal());
            assert!(m.has_property_a());
            for k in -40i64..=40 {
                let by_residues = (1..n).any(|x| (k.rem_euclid(n as i64) as u64 * x) % n == 0);
                assert_eq!(m.is_zero_divisor(k), by_residues, "n={n} k={k}");
            }
        }
    }
}
