//! Bounded Vilenkin group materialized to a finite resolution.
//!
//! A point of `G_m` is a digit vector `(x_0, .., x_{N-1})` with `x_k in Z_{m_k}`.
//! Every function handled by this crate is constant on the cosets of `I_N`, so a
//! point is identified with its coset index `sum_k x_k M_k`. The same mixed-radix
//! expansion indexes the characters, which keeps the character table and the
//! fast transform free of any digit-reversal permutation.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Radix sequence together with the subgroup sizes `M_0 = 1, M_{k+1} = m_k M_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupConfig {
    radix: Vec<usize>,
    sizes: Vec<usize>,
}

impl GroupConfig {
    /// Builds the group `Z_{m_0} x .. x Z_{m_{N-1}}`.
    ///
    /// A radix list shorter than `resolution` is repeated periodically, so
    /// `new(&[2], 6)` is the dyadic group at resolution 6. Entries beyond
    /// `resolution` are ignored.
    pub fn new(radix: &[usize], resolution: usize) -> Result<Self> {
        if radix.is_empty() {
            return Err(Error::EmptyRadix);
        }
        if resolution == 0 {
            return Err(Error::ZeroResolution);
        }
        let radix: Vec<usize> = radix.iter().copied().cycle().take(resolution).collect();
        let mut sizes = Vec::with_capacity(resolution + 1);
        sizes.push(1usize);
        for (index, &m) in radix.iter().enumerate() {
            if m < 2 {
                return Err(Error::RadixTooSmall { index, value: m });
            }
            let next = sizes[index]
                .checked_mul(m)
                .ok_or(Error::Overflow { index: index + 1 })?;
            sizes.push(next);
        }
        Ok(Self { radix, sizes })
    }

    /// Group whose resolution equals the length of `radix`.
    pub fn from_radix(radix: &[usize]) -> Result<Self> {
        Self::new(radix, radix.len())
    }

    /// Number of materialized coordinates `N`.
    pub fn resolution(&self) -> usize {
        self.radix.len()
    }

    pub fn radix(&self, k: usize) -> usize {
        self.radix[k]
    }

    pub fn radices(&self) -> &[usize] {
        &self.radix
    }

    /// `M_k` for `k <= N`.
    pub fn subgroup_size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn subgroup_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `M_N`, the number of `I_N`-cosets.
    pub fn order(&self) -> usize {
        self.sizes[self.radix.len()]
    }

    pub fn max_radix(&self) -> usize {
        self.radix.iter().copied().max().unwrap_or(2)
    }

    /// Haar measure of `I_n`, exactly `1 / M_n`.
    pub fn interval_measure(&self, n: usize) -> Result<Ratio<u64>> {
        self.check_level(n)?;
        Ok(Ratio::new(1, self.sizes[n] as u64))
    }

    pub(crate) fn check_level(&self, n: usize) -> Result<()> {
        if n > self.resolution() {
            Err(Error::LevelOutOfRange { level: n, resolution: self.resolution() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.order() {
            Err(Error::IndexOutOfRange { index, bound: self.order() })
        } else {
            Ok(())
        }
    }

    /// Digit `k` of a coset index or of a natural number below `M_N`.
    #[inline]
    pub fn digit(&self, value: usize, k: usize) -> usize {
        (value / self.sizes[k]) % self.radix[k]
    }

    /// Generalized number-system expansion `n = sum_j n_j M_j`.
    pub fn natural_digits(&self, n: usize) -> Result<NaturalDigits> {
        self.check_index(n)?;
        Ok(NaturalDigits((0..self.resolution()).map(|k| self.digit(n, k)).collect()))
    }

    pub fn point_index(&self, x: &GroupPoint) -> Result<usize> {
        self.validate(x)?;
        Ok(x.digits.iter().zip(&self.sizes).map(|(&d, &m)| d * m).sum())
    }

    pub fn index_point(&self, index: usize) -> Result<GroupPoint> {
        self.check_index(index)?;
        Ok(GroupPoint { digits: (0..self.resolution()).map(|k| self.digit(index, k)).collect() })
    }

    /// Checks that `x` has `N` digits with `x_k < m_k`.
    pub fn validate(&self, x: &GroupPoint) -> Result<()> {
        if x.digits.len() != self.resolution() {
            return Err(Error::DigitCount { expected: self.resolution(), found: x.digits.len() });
        }
        for (index, (&value, &radix)) in x.digits.iter().zip(&self.radix).enumerate() {
            if value >= radix {
                return Err(Error::DigitOutOfRange { index, value, radix });
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupPoint {
        GroupPoint { digits: vec![0; self.resolution()] }
    }

    /// The generator `e_k = (0, .., 0, 1, 0, ..)`.
    pub fn unit(&self, k: usize) -> Result<GroupPoint> {
        if k >= self.resolution() {
            return Err(Error::LevelOutOfRange { level: k, resolution: self.resolution() });
        }
        let mut x = self.zero();
        x.digits[k] = 1;
        Ok(x)
    }

    pub fn add(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        self.combine(x, y, |a, b, m| (a + b) % m)
    }

    pub fn sub(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        self.combine(x, y, |a, b, m| (a + m - b) % m)
    }

    pub fn neg(&self, x: &GroupPoint) -> Result<GroupPoint> {
        self.sub(&self.zero(), x)
    }

    fn combine(
        &self,
        x: &GroupPoint,
        y: &GroupPoint,
        op: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<GroupPoint> {
        self.validate(x).map_err(|_| Error::ConfigMismatch)?;
        self.validate(y).map_err(|_| Error::ConfigMismatch)?;
        let digits = x
            .digits
            .iter()
            .zip(&y.digits)
            .zip(&self.radix)
            .map(|((&a, &b), &m)| op(a, b, m))
            .collect();
        Ok(GroupPoint { digits })
    }

    /// Coordinatewise sum of two coset indices.
    #[inline]
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for k in 0..self.resolution() {
            let m = self.radix[k];
            out += ((self.digit(a, k) + self.digit(b, k)) % m) * self.sizes[k];
        }
        out
    }

    /// Coordinatewise difference `a - b` of two coset indices.
    #[inline]
    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for k in 0..self.resolution() {
            let m = self.radix[k];
            out += ((self.digit(a, k) + m - self.digit(b, k)) % m) * self.sizes[k];
        }
        out
    }

    #[inline]
    pub fn neg_index(&self, a: usize) -> usize {
        self.sub_index(0, a)
    }

    /// `n (+) k`: digitwise modular sum of two naturals, recombined with weights `M_i`.
    pub fn nat_add(&self, n: usize, k: usize) -> Result<usize> {
        self.check_index(n)?;
        self.check_index(k)?;
        Ok(self.add_index(n, k))
    }

    /// `n (-) k`: digitwise modular difference, recombined with weights `M_i`.
    pub fn nat_sub(&self, n: usize, k: usize) -> Result<usize> {
        self.check_index(n)?;
        self.check_index(k)?;
        Ok(self.sub_index(n, k))
    }

    /// `rho(x, y) = sum_k |x_k - y_k| / M_{k+1}`, exact.
    pub fn metric(&self, x: &GroupPoint, y: &GroupPoint) -> Result<Ratio<u64>> {
        self.validate(x)?;
        self.validate(y)?;
        let order = self.order() as u64;
        let numer: u64 = x
            .digits
            .iter()
            .zip(&y.digits)
            .enumerate()
            .map(|(k, (&a, &b))| a.abs_diff(b) as u64 * (order / self.sizes[k + 1] as u64))
            .sum();
        Ok(Ratio::new(numer, order))
    }

    /// Canonical representative of `I_n(x)`: digits from `n` on set to zero.
    pub fn interval_coset(&self, x: &GroupPoint, n: usize) -> Result<GroupPoint> {
        self.validate(x)?;
        self.check_level(n)?;
        let mut rep = x.clone();
        rep.digits[n..].iter_mut().for_each(|d| *d = 0);
        Ok(rep)
    }

    /// `y in I_n(x)`: the first `n` digits agree.
    pub fn interval_contains(&self, x: &GroupPoint, n: usize, y: &GroupPoint) -> Result<bool> {
        self.validate(x)?;
        self.validate(y)?;
        self.check_level(n)?;
        Ok(x.digits[..n] == y.digits[..n])
    }

    /// Index form of [`interval_contains`](Self::interval_contains).
    #[inline]
    pub fn interval_contains_index(&self, x: usize, n: usize, y: usize) -> bool {
        x % self.sizes[n] == y % self.sizes[n]
    }

    /// Position of the first nonzero digit of a coset index, `None` for zero.
    /// Equivalently the `s` with `x in I_s \ I_{s+1}`.
    pub fn leading_zero_level(&self, x: usize) -> Option<usize> {
        (0..self.resolution()).find(|&k| self.digit(x, k) != 0)
    }

    /// Serialized form `radix=2,3,4;N=3`.
    pub fn header(&self) -> String {
        let radix: Vec<String> = self.radix.iter().map(ToString::to_string).collect();
        format!("radix={};N={}", radix.join(","), self.resolution())
    }

    /// Parses a header line, ignoring fields other than `radix` and `N`.
    pub fn parse_header(line: &str) -> Result<Self> {
        let mut radix = None;
        let mut resolution = None;
        for field in line.trim().split(';') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field `{field}`")))?;
            match key.trim() {
                "radix" => radix = Some(parse_radix(value)?),
                "N" => {
                    resolution = Some(
                        value.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?,
                    )
                }
                _ => {}
            }
        }
        let radix = radix.ok_or_else(|| Error::Parse("header lacks `radix`".into()))?;
        let resolution = resolution.unwrap_or(radix.len());
        Self::new(&radix, resolution)
    }
}

impl fmt::Display for GroupConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

impl FromStr for GroupConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_header(s)
    }
}

/// Parses `2,3,4` into a radix list.
pub fn parse_radix(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("radix `{t}`: {e}"))))
        .collect()
}

/// One element of `G_m` at the configured resolution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPoint {
    digits: Vec<usize>,
}

impl GroupPoint {
    /// Validated point.
    pub fn new(cfg: &GroupConfig, digits: Vec<usize>) -> Result<Self> {
        let x = Self { digits };
        cfg.validate(&x)?;
        Ok(x)
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, k: usize) -> usize {
        self.digits[k]
    }
}

/// Mixed-radix digits `n_0, n_1, ..` of a natural number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalDigits(pub Vec<usize>);

impl NaturalDigits {
    pub fn value(&self, cfg: &GroupConfig) -> usize {
        self.0.iter().zip(cfg.subgroup_sizes()).map(|(&d, &m)| d * m).sum()
    }

    /// `|n|`: position of the leading nonzero digit.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().rposition(|&d| d != 0)
    }

    /// `<n>`: position of the lowest nonzero digit.
    pub fn lowest(&self) -> Option<usize> {
        self.0.iter().position(|&d| d != 0)
    }

    /// Nonzero digit blocks `(position, digit)` from the most significant down.
    pub fn blocks_descending(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().rev().filter(|(_, &d)| d != 0).map(|(k, &d)| (k, d)).collect()
    }
}

/// Cylinder sets used by the complement decomposition of `I_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CylinderRegion {
    /// `I_n(x)` with `x` the canonical center.
    Interval { n: usize, center: usize },
    /// `I_s \ I_{s+1}`.
    Annulus { s: usize },
    /// `I_N^{k,l}`: first nonzero digit at `k`, next nonzero digit at `l`
    /// (`l = N` meaning digits `k+1 .. N-1` all vanish).
    Corner { k: usize, l: usize, level: usize },
}

impl CylinderRegion {
    pub fn contains(&self, cfg: &GroupConfig, x: usize) -> bool {
        match *self {
            CylinderRegion::Interval { n, center } => cfg.interval_contains_index(center, n, x),
            CylinderRegion::Annulus { s } => cfg.leading_zero_level(x) == Some(s),
            CylinderRegion::Corner { k, l, level } => {
                if cfg.leading_zero_level(x) != Some(k) {
                    return false;
                }
                let next = (k + 1..level).find(|&j| cfg.digit(x, j) != 0).unwrap_or(level);
                next == l
            }
        }
    }

    /// Number of `I_N`-cosets (at the configuration's resolution) inside the region.
    pub fn coset_count(&self, cfg: &GroupConfig) -> usize {
        (0..cfg.order()).filter(|&x| self.contains(cfg, x)).count()
    }

    pub fn measure(&self, cfg: &GroupConfig) -> Ratio<u64> {
        Ratio::new(self.coset_count(cfg) as u64, cfg.order() as u64)
    }
}

/// The regions `I_N^{k,l}` partitioning `G_m \ I_N`.
///
/// Includes `I_N^{0,N}`, the cosets whose only nonzero digit below `N` is `x_0`;
/// without it the regions miss `(x_0 != 0, 0, .., 0)`.
pub fn complement_decomposition(cfg: &GroupConfig, level: usize) -> Result<Vec<CylinderRegion>> {
    cfg.check_level(level)?;
    let mut regions = Vec::new();
    for k in 0..level {
        for l in k + 1..=level {
            regions.push(CylinderRegion::Corner { k, l, level });
        }
    }
    Ok(regions)
}

/// The annuli `I_s \ I_{s+1}` for `s < level`.
pub fn annulus_decomposition(cfg: &GroupConfig, level: usize) -> Result<Vec<CylinderRegion>> {
    cfg.check_level(level)?;
    Ok((0..level).map(|s| CylinderRegion::Annulus { s }).collect())
}
