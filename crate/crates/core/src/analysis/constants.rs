use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// Decimal expansions, 30 significant digits. The integration tests
/// recompute each of them with integer arithmetic.
pub const ALPHA_DIGITS: &str = "1.60669515241529176378330152319";
pub const EULER_GAMMA_DIGITS: &str = "0.577215664901532860606512090082";
pub const ZETA_PRIME_MINUS_ONE_DIGITS: &str = "-0.165421143700450929213919660243";
pub const LN_GLAISHER_DIGITS: &str = "0.248754477033784262547252993576";
pub const PI_DIGITS: &str = "3.14159265358979323846264338328";
pub const LN2_DIGITS: &str = "0.693147180559945309417232121458";

pub const ALPHA: f64 = 1.606_695_152_415_291_8;
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_93;
pub const PI: f64 = std::f64::consts::PI;
pub const LN2: f64 = std::f64::consts::LN_2;

/// Σ_{k≥1} 1/(2^k - 1) to `digits` decimals, correctly rounded.
pub fn alpha_decimal(digits: usize) -> String {
    let guard = 12;
    let scale = BigInt::from(10).pow((digits + guard) as u32);
    let mut acc = BigInt::zero();
    let mut k = 1u32;
    // tail after term k is below 2 * 2^-k
    loop {
        let den = (BigInt::one() << k) - 1;
        acc += &scale / den;
        let tail = (BigInt::from(2) * &scale) >> k;
        if tail < BigInt::from(10).pow(guard as u32 - 2) {
            break;
        }
        k += 1;
    }
    let unit = BigInt::from(10).pow(guard as u32);
    let (q, rem) = acc.div_rem(&unit);
    let q = if rem * 2 >= unit { q + 1 } else { q };
    let s = q.to_string();
    if digits == 0 {
        return s;
    }
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{int}.{frac}")
}

/// α rounded to `precision` decimals.
pub fn constant_alpha(precision: usize) -> f64 {
    assert!(precision <= 50, "at most 50 digits");
    alpha_decimal(precision).parse().expect("decimal literal")
}

/// Constant term of the expansion of the expected number of paths.
pub fn paths_constant() -> f64 {
    -(EULER_GAMMA + 4.0 * (ALPHA - 1.0) * LN2 + LN2 + 24.0 * ZETA_PRIME_MINUS_ONE + 2.0) / (12.0 * LN2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TotalKind {
    Paths,
    OldPathSegments,
}

impl TotalKind {
    pub const ALL: [TotalKind; 2] = [TotalKind::Paths, TotalKind::OldPathSegments];

    pub fn name(self) -> &'static str {
        match self {
            TotalKind::Paths => "paths",
            TotalKind::OldPathSegments => "old-path-segments",
        }
    }

    /// Exponent e of the remainder O(n^e) of `total_asymptotics`.
    pub fn error_exponent(self) -> f64 {
        match self {
            TotalKind::Paths => -0.25,
            TotalKind::OldPathSegments => -2.0,
        }
    }
}

impl std::fmt::Display for TotalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TotalKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TotalKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

/// Deterministic part of the expansion of E P_n or E S_n.
pub fn total_asymptotics(kind: TotalKind, n: f64) -> f64 {
    match kind {
        // fluctuation omitted
        TotalKind::Paths => (ALPHA - 1.0) * n + n.ln() / (6.0 * 4f64.ln()) + paths_constant(),
        TotalKind::OldPathSegments => {
            let pi2 = PI * PI;
            (pi2 / 6.0 - 1.0) * n - pi2 / 36.0 - 1.0 / 12.0 - pi2 / (120.0 * n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_rounding() {
        assert_eq!(constant_alpha(6), 1.606695);
        assert_eq!(constant_alpha(1), 1.6);
        assert_eq!(alpha_decimal(29), ALPHA_DIGITS);
        assert!((constant_alpha(17) - ALPHA).abs() < 1e-15);
    }

    #[test]
    fn segments_plug_in() {
        let v = total_asymptotics(TotalKind::OldPathSegments, 3.0);
        assert!((v - 1.550).abs() < 1e-3, "{v}");
        assert!((paths_constant() + 0.1181).abs() < 1e-3);
    }
}
