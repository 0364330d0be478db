//! The Standard-Model gauge algebra and its representation content.
//!
//! The gauge algebra is su(3) ⊕ su(2) ⊕ u(1). The Higgs representation acts
//! on ℂ² through the su(2) fundamental twisted by hypercharge y = 1 (with the
//! generator convention ρ_*(i) = 3yi, i.e. n_Y = 3). The chiral fermion
//! representation is the direct sum, over three generations, of outer-tensor
//! multiplets (color, weak, hypercharge); the per-multiplet hypercharges are
//! configuration data, with defaults matching the usual assignments.

use super::algebra::LieAlgebra;
use super::rep::{hypercharge_rep, outer_tensor, Representation};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use thiserror::Error;

/// Which chirality block a multiplet belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

/// One fermion multiplet per generation: its su(3) and su(2) dimensions
/// (1 = trivial, 3/2 = fundamental) and its hypercharge, written as a
/// rational string such as `"1/3"` or `"-2"`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Multiplet {
    pub name: String,
    pub color_dim: usize,
    pub weak_dim: usize,
    pub hypercharge: String,
    pub chirality: Chirality,
}

impl Multiplet {
    pub fn hypercharge_value(&self) -> Result<BigRational, SmError> {
        BigRational::from_str(self.hypercharge.trim())
            .map_err(|_| SmError::BadHypercharge { value: self.hypercharge.clone() })
    }
}

/// Per-generation multiplet table plus the generation count.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GenerationTable {
    pub generations: usize,
    pub multiplets: Vec<Multiplet>,
}

impl Default for GenerationTable {
    /// Three generations of the usual multiplets: left-handed quark and
    /// lepton doublets; right-handed up, down, and charged-lepton singlets.
    fn default() -> Self {
        let m = |name: &str, color_dim: usize, weak_dim: usize, y: &str, chirality: Chirality| {
            Multiplet {
                name: name.to_string(),
                color_dim,
                weak_dim,
                hypercharge: y.to_string(),
                chirality,
            }
        };
        GenerationTable {
            generations: 3,
            multiplets: vec![
                m("quark-doublet", 3, 2, "1/3", Chirality::Left),
                m("lepton-doublet", 1, 2, "-1", Chirality::Left),
                m("up-singlet", 3, 1, "4/3", Chirality::Right),
                m("down-singlet", 3, 1, "-2/3", Chirality::Right),
                m("charged-lepton-singlet", 1, 1, "-2", Chirality::Right),
            ],
        }
    }
}

#[derive(Error, Debug)]
pub enum SmError {
    #[error("hypercharge '{value}' is not a rational number")]
    BadHypercharge { value: String },
    #[error("multiplet dimension {dim} not supported for {factor} (use 1 or the fundamental)")]
    BadDimension { factor: &'static str, dim: usize },
    #[error("generation count must be at least 1")]
    NoGenerations,
}

/// The assembled Standard-Model content.
#[derive(Clone, Debug)]
pub struct SmContent {
    /// su(3) ⊕ su(2) ⊕ u(1), in that basis order.
    pub algebra: LieAlgebra,
    /// Higgs representation on ℂ².
    pub higgs: Representation,
    /// Chiral fermion representation with V_L columns first.
    pub fermion: Representation,
    /// Per-multiplet blocks (name, start, len) into the fermion dimension.
    pub summands: Vec<(String, usize, usize)>,
}

/// Build 𝔤 = su(3)⊕su(2)⊕u(1), the Higgs representation, and the chiral
/// fermion representation from a generation table.
pub fn standard_model_content(table: &GenerationTable) -> Result<SmContent, SmError> {
    if table.generations == 0 {
        return Err(SmError::NoGenerations);
    }
    let su3 = LieAlgebra::su3();
    let su2 = LieAlgebra::su2();
    let algebra = LieAlgebra::direct_sum(&[su3.clone(), su2.clone(), LieAlgebra::u1()]);

    let factor_rep = |color_dim: usize, weak_dim: usize, y: BigRational| -> Result<Representation, SmError> {
        let color = match color_dim {
            1 => Representation::trivial(su3.clone(), 1),
            3 => Representation::fundamental(su3.clone()),
            dim => return Err(SmError::BadDimension { factor: "su(3)", dim }),
        };
        let weak = match weak_dim {
            1 => Representation::trivial(su2.clone(), 1),
            2 => Representation::fundamental(su2.clone()),
            dim => return Err(SmError::BadDimension { factor: "su(2)", dim }),
        };
        Ok(outer_tensor(&[color, weak, hypercharge_rep(y)]))
    };

    // Higgs: ℂ² with su(2) fundamental and hypercharge 1 (n_Y = 3).
    let higgs = factor_rep(1, 2, BigRational::from_integer(1.into()))?;

    // Fermions: all left multiplets (each repeated per generation), then all
    // right multiplets, so the chiral split is (dim V_L, dim V_R).
    let mut left_parts: Vec<(String, Representation)> = Vec::new();
    let mut right_parts: Vec<(String, Representation)> = Vec::new();
    for m in &table.multiplets {
        let y = m.hypercharge_value()?;
        for gen in 0..table.generations {
            let rep = factor_rep(m.color_dim, m.weak_dim, y.clone())?;
            let label = format!("{}-gen{}", m.name, gen + 1);
            match m.chirality {
                Chirality::Left => left_parts.push((label, rep)),
                Chirality::Right => right_parts.push((label, rep)),
            }
        }
    }
    let dim_l: usize = left_parts.iter().map(|(_, r)| r.dim()).sum();
    let dim_r: usize = right_parts.iter().map(|(_, r)| r.dim()).sum();
    let mut summands = Vec::new();
    let mut offset = 0usize;
    let ordered: Vec<Representation> = left_parts
        .into_iter()
        .chain(right_parts)
        .map(|(name, rep)| {
            summands.push((name, offset, rep.dim()));
            offset += rep.dim();
            rep
        })
        .collect();
    let fermion = Representation::direct_sum(&ordered, Some((dim_l, dim_r)));
    Ok(SmContent { algebra, higgs, fermion, summands })
}
