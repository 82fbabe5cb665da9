use std::fmt;

use crate::error::{Error, Result};

/// Joint iterate `z = (x, y)` stored as one flat vector.
///
/// The first `split` coordinates form the x-block, the rest the y-block.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
    split: usize,
}

impl Point {
    /// Builds a point, rejecting an out-of-range split or non-finite entries.
    pub fn new(coords: Vec<f64>, split: usize) -> Result<Self> {
        if split > coords.len() {
            return Err(Error::InvalidPoint(format!(
                "split {} exceeds length {}",
                split,
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("coordinate {i} is not finite")));
        }
        Ok(Self { coords, split })
    }

    pub fn from_blocks(x: &[f64], y: &[f64]) -> Result<Self> {
        let mut coords = Vec::with_capacity(x.len() + y.len());
        coords.extend_from_slice(x);
        coords.extend_from_slice(y);
        Self::new(coords, x.len())
    }

    pub fn zeros(dim_x: usize, dim_y: usize) -> Self {
        Self {
            coords: vec![0.0; dim_x + dim_y],
            split: dim_x,
        }
    }

    /// Skips validation; callers check finiteness themselves.
    pub(crate) fn from_raw(coords: Vec<f64>, split: usize) -> Self {
        debug_assert!(split <= coords.len());
        Self { coords, split }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim_x(&self) -> usize {
        self.split
    }

    pub fn dim_y(&self) -> usize {
        self.coords.len() - self.split
    }

    pub fn x(&self) -> &[f64] {
        &self.coords[..self.split]
    }

    pub fn y(&self) -> &[f64] {
        &self.coords[self.split..]
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.coords)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, other: &Point) -> f64 {
        dot(&self.coords, &other.coords)
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        dist_sq(&self.coords, &other.coords)
    }

    /// `self - other`, keeping the split of `self`.
    pub fn sub(&self, other: &Point) -> Point {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Point::from_raw(coords, self.split)
    }

    pub fn scaled(&self, factor: f64) -> Point {
        Point::from_raw(self.coords.iter().map(|c| c * factor).collect(), self.split)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Point")
            .field("x", &self.x())
            .field("y", &self.y())
            .finish()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|u| u * u).sum()
}

pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}
