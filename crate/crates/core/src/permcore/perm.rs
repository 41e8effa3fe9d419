use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0..degree}`. Displayed and parsed 1-based.
///
/// Products compose left to right: `a.mul(&b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// 1-based images, as in the usual list notation.
    pub fn from_images_1based(images: &[usize]) -> Result<Self> {
        let mut v = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 {
                return Err(Error::NotBijection);
            }
            v.push((x - 1) as u32);
        }
        Self::from_images(v)
    }

    /// Builds from 1-based cycles; fixed points may be omitted.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > degree {
                    return Err(Error::PointOutOfRange { point: a, degree });
                }
                if used[a - 1] {
                    return Err(Error::NotBijection);
                }
                used[a - 1] = true;
                let b = cyc[(k + 1) % cyc.len()];
                if b == 0 || b > degree {
                    return Err(Error::PointOutOfRange { point: b, degree });
                }
                images[a - 1] = (b - 1) as u32;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let o = &other.images;
        Permutation {
            images: self.images.iter().map(|&x| o[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation::from_images_unchecked(inv)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// `g⁻¹ self g`, the right-action conjugate.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation::from_images_unchecked(out)
    }

    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .mul(&other.inverse())
            .mul(self)
            .mul(other)
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// Cycle type as (length, multiplicity) pairs, ascending by length.
    pub fn cycle_type(&self) -> CycleType {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for l in self.cycle_lengths() {
            match out.last_mut() {
                Some((len, c)) if *len == l => *c += 1,
                _ => out.push((l, 1)),
            }
        }
        CycleType(out)
    }

    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for (l, _) in self.cycle_type().0 {
            acc = lcm(acc, l as u128);
        }
        acc
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] || self.images[i] as usize == i {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j as u32);
                j = self.images[j] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .count()
    }
}

pub(crate) fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Cycle-length multiset, e.g. `1^4 2^4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<(usize, usize)>);

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (l, c)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", l, c)?;
        }
        Ok(())
    }
}

impl CycleType {
    pub fn parse(s: &str) -> Option<CycleType> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (l, c) = tok.split_once('^')?;
            out.push((l.parse().ok()?, c.parse().ok()?));
        }
        out.sort_unstable();
        if out.is_empty() {
            return None;
        }
        Some(CycleType(out))
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(l, c)| l * c).sum()
    }
}

impl serde::Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CycleType::parse(&s).ok_or_else(|| serde::de::Error::custom("bad cycle type"))
    }
}
