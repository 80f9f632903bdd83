//! Permutations of `{0, ..., n-1}`.
//!
//! Maps act on the right: `x.apply(p)` is written `xp`, and the composite
//! `pq` sends `x` to `(xp)q`. Every search in the crate follows this order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest degree representable with byte-sized images.
pub const MAX_DEGREE: usize = 256;

/// A bijection on `{0, ..., n-1}`, stored as its image sequence.
///
/// The derived ordering is lexicographic on the image sequence, which is
/// the canonical order for every listing of permutations in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u8]>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Perm {
            images: (0..n).map(|i| i as u8).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Perm>
    where
        I: IntoIterator<Item = usize>,
    {
        let images: Vec<usize> = images.into_iter().collect();
        let n = images.len();
        if n == 0 {
            return Err(Error::NotAPermutation("empty image list".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::OrderTooLarge {
                order: n,
                max: MAX_DEGREE,
            });
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::NotAPermutation(format!(
                    "image {img} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(Error::NotAPermutation(format!("image {img} repeated")));
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_bytes_unchecked(images: Vec<u8>) -> Perm {
        debug_assert!(Perm::from_images(images.iter().map(|&b| b as usize)).is_ok());
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&b| b as usize)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &b)| i == b as usize)
    }

    /// The composite `self` then `other`: `x -> (x self) other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked [`Perm::compose`]; panics on a degree mismatch.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self
                .images
                .iter()
                .map(|&b| other.images[b as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &b) in self.images.iter().enumerate() {
            inv[b as usize] = i as u8;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// True when every member of `set` is sent back into `set`.
    pub fn stabilizes(&self, set: &[usize]) -> bool {
        let mut mask = vec![false; self.degree()];
        for &s in set {
            mask[s] = true;
        }
        set.iter().all(|&s| mask[self.apply(s)])
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let mut images = Vec::new();
        for (i, tok) in s.split(',').enumerate() {
            let tok = tok.trim();
            let v = tok.parse::<usize>().map_err(|_| Error::Parse {
                line: 1,
                column: i + 1,
                message: format!("expected an integer, found {tok:?}"),
            })?;
            images.push(v);
        }
        Perm::from_images(images)
    }
}

impl serde::Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.iter().copied()).unwrap()
    }

    #[test]
    fn compose_chases_left_to_right() {
        // 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
        assert_eq!(
            p(&[1, 2, 0]).compose(&p(&[1, 0, 2])).unwrap(),
            p(&[0, 2, 1])
        );
    }

    #[test]
    fn compose_identity_and_inverse() {
        let q = p(&[3, 0, 2, 1]);
        assert_eq!(q.compose(&Perm::identity(4)).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = p(&[1, 0]).compose(&Perm::identity(3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(&[1, 2, 0]).inverse(), p(&[2, 0, 1]));
        assert_eq!(Perm::identity(5).inverse(), Perm::identity(5));
        let q = p(&[4, 2, 0, 1, 3]);
        assert_eq!(q.inverse().inverse(), q);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images([0, 0, 1]).is_err());
        assert!(Perm::from_images([0, 3, 1]).is_err());
        assert!(Perm::from_images(std::iter::empty()).is_err());
    }

    #[test]
    fn text_form_round_trips() {
        let q: Perm = "1,2,0".parse().unwrap();
        assert_eq!(q, p(&[1, 2, 0]));
        assert_eq!(q.to_string(), "1,2,0");
        assert!("1,x,0".parse::<Perm>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = vec![p(&[2, 1, 0]), p(&[0, 1, 2]), p(&[1, 0, 2])];
        v.sort();
        assert_eq!(v, vec![p(&[0, 1, 2]), p(&[1, 0, 2]), p(&[2, 1, 0])]);
    }

    #[test]
    fn stabilizes_checks_setwise() {
        let q = p(&[2, 3, 0, 1]);
        assert!(q.stabilizes(&[0, 2]));
        assert!(!q.stabilizes(&[0, 1]));
    }
}
