//! Colored fans of rank one and the Picard-one smoothness configuration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Color {
    pub name: String,
    /// Image of the color in the lattice `N = Z`.
    pub image: i64,
    /// Whether the color is attached to the cone on its image ray.
    pub attached: bool,
}

/// A colored fan in `N = Z`: rays among `{+1, -1}` plus color data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredFanRank1 {
    rays: Vec<i64>,
    colors: Vec<Color>,
}

impl ColoredFanRank1 {
    pub fn new(rays: Vec<i64>, colors: Vec<Color>) -> Result<Self> {
        if rays.is_empty() {
            return Err(Error::InvalidFan("no rays".into()));
        }
        let mut seen = BTreeSet::new();
        for &r in &rays {
            if r != 1 && r != -1 {
                return Err(Error::InvalidFan(format!("ray {r} is not primitive")));
            }
            if !seen.insert(r) {
                return Err(Error::InvalidFan(format!("ray {r} repeated")));
            }
        }
        let mut names = BTreeSet::new();
        for c in &colors {
            if !names.insert(c.name.as_str()) {
                return Err(Error::InvalidFan(format!("color {} repeated", c.name)));
            }
            if c.attached && (c.image == 0 || !rays.contains(&c.image.signum())) {
                return Err(Error::InvalidFan(format!("color {} is attached off the fan", c.name)));
            }
        }
        Ok(ColoredFanRank1 { rays, colors })
    }

    pub fn rays(&self) -> &[i64] {
        &self.rays
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn is_complete(&self) -> bool {
        self.rays.contains(&1) && self.rays.contains(&-1)
    }

    pub fn attached_count(&self) -> usize {
        self.colors.iter().filter(|c| c.attached).count()
    }

    /// `(rays - 1) + total_colors - attached`.
    pub fn picard_number(&self, total_colors: usize) -> Result<i64> {
        if !self.is_complete() {
            return Err(Error::NotProjective);
        }
        let attached = self.attached_count();
        if attached > total_colors {
            return Err(Error::InvalidFan(format!("{attached} attached colors out of {total_colors}")));
        }
        Ok(self.rays.len() as i64 - 1 + total_colors as i64 - attached as i64)
    }
}

pub fn picard_number(f: &ColoredFanRank1, total_colors: usize) -> Result<i64> {
    f.picard_number(total_colors)
}

/// The four complete fans for two colors with images `+1` (alpha) and `-1` (beta):
/// no color, alpha only, beta only, both.
pub fn enumerate_rank1_embeddings() -> Vec<ColoredFanRank1> {
    let mk = |alpha: bool, beta: bool| {
        ColoredFanRank1::new(
            vec![1, -1],
            vec![
                Color { name: "alpha".into(), image: 1, attached: alpha },
                Color { name: "beta".into(), image: -1, attached: beta },
            ],
        )
        .expect("valid by construction")
    };
    vec![mk(false, false), mk(true, false), mk(false, true), mk(true, true)]
}

/// Colors of a Picard-one fan with rays `e_1, ..., e_n, -(e_1 + ... + e_n)`
/// keep it smooth iff their images are distinct rays.
pub fn is_smooth_picard1_config(n: usize, images: &[Vec<i64>]) -> bool {
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    rays.push(vec![-1; n]);
    let mut seen = BTreeSet::new();
    images.iter().all(|img| rays.contains(img) && seen.insert(img.clone()))
}
