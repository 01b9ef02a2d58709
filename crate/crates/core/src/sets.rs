//! Finite subsets of `Z` and of `Z_n`.
//!
//! A [`ZSet`] is the canonical representative of a translation class: sorted,
//! duplicate-free, minimum zero. Only the translation class matters for every
//! covering quantity in this crate, so all entry points normalize first.

use std::fmt;

use crate::error::Error;

/// Normalized finite subset of `Z`: strictly increasing, first element 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZSet {
    elems: Vec<u64>,
}

impl ZSet {
    /// Normalize an arbitrary non-empty list: sort, deduplicate, translate so
    /// the minimum is 0.
    pub fn normalize(raw: &[i64]) -> Result<ZSet, Error> {
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut sorted: Vec<i64> = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let min = sorted[0];
        let elems = sorted.iter().map(|&x| (x - min) as u64).collect();
        Ok(ZSet { elems })
    }

    /// Construct from already-normalized elements. Panics if the input is not
    /// strictly increasing starting at 0 (internal use, tests).
    pub fn from_normalized(elems: Vec<u64>) -> ZSet {
        assert!(!elems.is_empty() && elems[0] == 0, "not normalized: {elems:?}");
        assert!(elems.windows(2).all(|w| w[0] < w[1]), "not sorted: {elems:?}");
        ZSet { elems }
    }

    /// Parse a comma-separated list such as `0,1,3` (normalizing).
    pub fn parse(text: &str) -> Result<ZSet, Error> {
        let bad = || Error::Parse { what: "set", input: text.to_string() };
        let mut raw = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            raw.push(token.parse::<i64>().map_err(|_| bad())?);
        }
        if raw.is_empty() {
            return Err(bad());
        }
        ZSet::normalize(&raw)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    /// Number of elements, written `k` throughout.
    pub fn size(&self) -> u64 {
        self.elems.len() as u64
    }

    /// `max(S) - min(S)`; zero for singletons.
    pub fn diameter(&self) -> u64 {
        *self.elems.last().unwrap()
    }

    /// Mirror image `{diam - x : x in S}`, renormalized.
    pub fn reflect(&self) -> ZSet {
        let d = self.diameter();
        let elems = self.elems.iter().rev().map(|&x| d - x).collect();
        ZSet { elems }
    }

    /// Dilation `{c * x : x in S}` for `c >= 1`.
    pub fn dilate(&self, c: u64) -> Result<ZSet, Error> {
        if c == 0 {
            return Err(Error::InvalidParameter("dilation factor must be >= 1".into()));
        }
        Ok(ZSet { elems: self.elems.iter().map(|&x| c * x).collect() })
    }

    /// View in `Z_n`. Because the set is normalized and `n > diam`, the
    /// elements are already distinct residues.
    pub fn embed_cyclic(&self, n: u64) -> Result<CyclicSet, Error> {
        let diam = self.diameter();
        if n <= diam {
            return Err(Error::ModulusTooSmall { n, diam });
        }
        Ok(CyclicSet { modulus: n, residues: self.elems.clone() })
    }
}

impl fmt::Display for ZSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.elems {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

/// Non-empty subset of `Z_n`: distinct sorted residues in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl CyclicSet {
    /// Reduce an arbitrary non-empty list mod `n`, deduplicate, sort.
    pub fn new(n: u64, raw: &[i64]) -> Result<CyclicSet, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("modulus must be >= 1".into()));
        }
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        let m = n as i64;
        let mut residues: Vec<u64> = raw.iter().map(|&x| x.rem_euclid(m) as u64).collect();
        residues.sort_unstable();
        residues.dedup();
        Ok(CyclicSet { modulus: n, residues })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn size(&self) -> u64 {
        self.residues.len() as u64
    }
}

impl fmt::Display for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.residues {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        write!(f, " (mod {})", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(ZSet::normalize(&[3, 1, 0]).unwrap().elements(), &[0, 1, 3]);
        assert_eq!(ZSet::normalize(&[5, 5, 7]).unwrap().elements(), &[0, 2]);
        assert_eq!(ZSet::normalize(&[-2, 0, 3]).unwrap().elements(), &[0, 2, 5]);
        assert!(matches!(ZSet::normalize(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(ZSet::parse("0,1,3").unwrap().elements(), &[0, 1, 3]);
        assert_eq!(ZSet::parse(" 7, 5,5 ").unwrap().elements(), &[0, 2]);
        assert!(ZSet::parse("").is_err());
        assert!(ZSet::parse("0,x").is_err());
    }

    #[test]
    fn embed_cyclic_examples() {
        let s = ZSet::parse("0,1,3").unwrap();
        let c = s.embed_cyclic(5).unwrap();
        assert_eq!(c.residues(), &[0, 1, 3]);
        assert_eq!(c.modulus(), 5);
        assert!(matches!(
            s.embed_cyclic(3),
            Err(Error::ModulusTooSmall { n: 3, diam: 3 })
        ));
        // Size is preserved whenever the embedding is accepted.
        assert_eq!(s.embed_cyclic(4).unwrap().size(), s.size());
    }

    #[test]
    fn reflect_and_dilate() {
        let s = ZSet::parse("0,1,3").unwrap();
        assert_eq!(s.reflect().elements(), &[0, 2, 3]);
        assert_eq!(s.reflect().reflect(), s);
        assert_eq!(s.dilate(2).unwrap().elements(), &[0, 2, 6]);
        assert!(s.dilate(0).is_err());
    }

    #[test]
    fn cyclic_set_reduces_mod_n() {
        let c = CyclicSet::new(6, &[7, -1, 1]).unwrap();
        assert_eq!(c.residues(), &[1, 5]);
        assert!(CyclicSet::new(0, &[1]).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ZSet::parse("3,1,0").unwrap().to_string(), "0,1,3");
        assert_eq!(CyclicSet::new(6, &[0, 3]).unwrap().to_string(), "0,3 (mod 6)");
    }
}
