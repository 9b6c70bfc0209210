//! Finite abelian groups `Z/m x Z/k` with `m | k`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionGroup {
    pub m: u32,
    pub k: u32,
}

impl TorsionGroup {
    /// Panics unless `m` divides `k`; use [`TorsionGroup::try_new`] for
    /// untrusted input.
    pub fn new(m: u32, k: u32) -> Self {
        Self::try_new(m, k).unwrap_or_else(|| panic!("Z/{m} x Z/{k} is not in normal form"))
    }

    pub fn try_new(m: u32, k: u32) -> Option<Self> {
        (m >= 1 && k >= 1 && k.is_multiple_of(m)).then_some(TorsionGroup { m, k })
    }

    pub fn trivial() -> Self {
        TorsionGroup { m: 1, k: 1 }
    }

    pub fn cyclic(k: u32) -> Self {
        Self::new(1, k)
    }

    pub fn order(&self) -> u32 {
        self.m * self.k
    }

    pub fn is_cyclic(&self) -> bool {
        self.m == 1
    }

    /// The `p`-primary part.
    pub fn p_part(&self, p: u32) -> TorsionGroup {
        TorsionGroup::new(p_power(self.m, p), p_power(self.k, p))
    }

    /// Largest `q` with `Z/q` a quotient.
    pub fn exponent(&self) -> u32 {
        self.k
    }

    /// Direct product, brought back to normal form.
    pub fn product(&self, other: &TorsionGroup) -> TorsionGroup {
        // invariant factors of Z/a x Z/b x Z/c x Z/d, known to have rank <= 2
        let mut inv = [1u32, 1u32];
        for p in primes_dividing(self.order() * other.order()) {
            let mut exps = [self.m, self.k, other.m, other.k].map(|v| p_power(v, p));
            exps.sort_unstable();
            assert!(exps[1] == 1, "product has rank above 2");
            inv[0] *= exps[2];
            inv[1] *= exps[3];
        }
        TorsionGroup::new(inv[0], inv[1])
    }

    /// True iff this group embeds in `other`.
    pub fn embeds_in(&self, other: &TorsionGroup) -> bool {
        other.m.is_multiple_of(self.m) && other.k.is_multiple_of(self.k)
    }
}

fn p_power(mut n: u32, p: u32) -> u32 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

fn primes_dividing(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.k) {
            (1, 1) => write!(f, "0"),
            (1, k) => write!(f, "Z/{k}"),
            (m, k) => write!(f, "Z/{m} x Z/{k}"),
        }
    }
}

impl std::str::FromStr for TorsionGroup {
    type Err = String;

    /// Accepts `0`, `Z/k`, `Z/m x Z/k` and the spaced or unspaced variants.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" || t == "1" || t == "{1}" || t == "trivial" {
            return Ok(TorsionGroup::trivial());
        }
        let parse_factor = |p: &str| -> Result<u32, String> {
            p.strip_prefix("Z/")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| format!("bad group factor {p:?} in {s:?}"))
        };
        let parts: Vec<&str> = t.split(['x', '×']).collect();
        match parts.as_slice() {
            [a] => Ok(TorsionGroup::cyclic(parse_factor(a)?)),
            [a, b] => {
                let (m, k) = (parse_factor(a)?, parse_factor(b)?);
                TorsionGroup::try_new(m, k).ok_or_else(|| format!("{s:?} is not in normal form"))
            }
            _ => Err(format!("cannot parse group {s:?}")),
        }
    }
}
