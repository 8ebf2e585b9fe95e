//! Algebra description files (TOML): a field and exactly one presentation block.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    algebra_from_structure_constants, path_algebra, species_algebra, AlgRef, Arrow, BimoduleTag, PathComb, Quiver,
    RSpecies, RTag, SpeciesArrow, SpeciesFq, SpeciesVertex,
};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Optional defining polynomial, constant term first; must be the canonical one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverBlock {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    /// Linear combinations of paths such as `"a*b + 2*c*d"`; paths compose left to right
    /// and coefficients are field element codes.
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureBlock {
    pub basis: Vec<String>,
    pub unit: Vec<Elem>,
    /// Flat `d³` table: entry `(i*d + j)*d + k` is the coefficient of `b_k` in `b_i b_j`.
    pub table: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesVertexSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: u32,
    #[serde(default)]
    pub twist: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesBlock {
    pub vertices: Vec<SpeciesVertexSpec>,
    #[serde(default)]
    pub arrows: Vec<SpeciesArrowSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rad_power: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RKind {
    R,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BimoduleKind {
    Natural,
    Conjugate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RVertexSpec {
    pub name: String,
    pub kind: RKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub bimodule: BimoduleKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RSpeciesBlock {
    pub vertices: Vec<RVertexSpec>,
    #[serde(default)]
    pub arrows: Vec<RArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_level: Option<usize>,
    /// Suites `verify` runs; empty means all of them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<StructureBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub species: Option<SpeciesBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_species: Option<RSpeciesBlock>,
}

/// The presentation block of a parsed file.
pub enum Block<'a> {
    Quiver(&'a QuiverBlock),
    Structure(&'a StructureBlock),
    Species(&'a SpeciesBlock),
    RSpecies(&'a RSpeciesBlock),
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

/// Error positioned at the first quoted occurrence of `needle`, or at the file start.
fn semantic(src: &str, needle: &str, msg: String) -> Error {
    let off = src.find(&format!("\"{needle}\"")).or_else(|| src.find(needle)).unwrap_or(0);
    let (line, col) = line_col(src, off);
    Error::Parse { line, col, msg }
}

fn index_of(src: &str, names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| semantic(src, name, format!("{what} refers to undeclared vertex {name}")))
}

impl AlgebraSpecFile {
    pub fn parse(src: &str) -> Result<AlgebraSpecFile> {
        let spec: AlgebraSpecFile = toml::from_str(src).map_err(|e| {
            let (line, col) = e.span().map_or((1, 1), |s| line_col(src, s.start));
            Error::Parse { line, col, msg: e.message().to_string() }
        })?;
        spec.validate(src)?;
        Ok(spec)
    }

    pub fn read(path: &std::path::Path) -> Result<AlgebraSpecFile> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        AlgebraSpecFile::parse(&src)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files serialize")
    }

    pub fn block(&self) -> Block<'_> {
        if let Some(q) = &self.quiver {
            Block::Quiver(q)
        } else if let Some(s) = &self.structure_constants {
            Block::Structure(s)
        } else if let Some(s) = &self.species {
            Block::Species(s)
        } else {
            Block::RSpecies(self.r_species.as_ref().expect("validated"))
        }
    }

    fn validate(&self, src: &str) -> Result<()> {
        let blocks = [
            self.quiver.is_some(),
            self.structure_constants.is_some(),
            self.species.is_some(),
            self.r_species.is_some(),
        ];
        let count = blocks.iter().filter(|&&b| b).count();
        if count != 1 {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: format!("expected exactly one presentation block, found {count}"),
            });
        }
        if let Some(c) = self.checks.iter().find(|c| !super::verify::SUITES.contains(&c.as_str())) {
            return Err(semantic(src, c, format!("unknown check suite {c}")));
        }
        self.field_checked(src)?;
        match self.block() {
            Block::Quiver(_) => {
                self.quiver_data(src)?;
            }
            Block::Structure(s) => {
                let d = s.basis.len();
                if s.unit.len() != d || s.table.len() != d * d * d {
                    return Err(semantic(src, "table", format!("a basis of size {d} needs a unit of length {d} and a table of length {}", d * d * d)));
                }
            }
            Block::Species(_) => {
                self.species_data(src)?;
            }
            Block::RSpecies(_) => {
                self.r_species_data(src)?;
            }
        }
        Ok(())
    }

    fn field_checked(&self, src: &str) -> Result<Field> {
        let FieldSpec { p, n, modulus } = &self.field;
        let f = Field::new(*p, *n).map_err(|e| match e {
            Error::Cap(_) => e,
            e => semantic(src, "field", e.to_string()),
        })?;
        if let Some(m) = modulus {
            if m.len() != *n as usize + 1 || m.last() != Some(&1) || m.iter().any(|&c| c >= *p) {
                return Err(semantic(src, "modulus", format!("modulus must be monic of degree {n} over F_{p}")));
            }
            if !crate::gf::is_irreducible_poly(m, *p) {
                return Err(semantic(src, "modulus", format!("modulus {m:?} is reducible over F_{p}")));
            }
            if m.as_slice() != f.modulus() {
                return Err(semantic(src, "modulus", format!("only the canonical modulus {:?} is supported", f.modulus())));
            }
        }
        Ok(f)
    }

    pub fn field(&self) -> Result<Field> {
        self.field_checked("")
    }

    fn quiver_data(&self, src: &str) -> Result<(Quiver, Vec<PathComb>)> {
        let q = self.quiver.as_ref().expect("quiver block");
        let f = self.field_checked(src)?;
        let mut arrows = Vec::new();
        for a in &q.arrows {
            let what = format!("arrow {}", a.name);
            arrows.push(Arrow {
                name: a.name.clone(),
                source: index_of(src, &q.vertices, &a.source, &what)?,
                target: index_of(src, &q.vertices, &a.target, &what)?,
            });
        }
        let quiver = Quiver { vertices: q.vertices.clone(), arrows };
        quiver.validate().map_err(|e| semantic(src, "arrows", e.to_string()))?;
        let rels = q
            .relations
            .iter()
            .map(|r| parse_relation(&f, &quiver, r).map_err(|m| semantic(src, r, m)))
            .collect::<Result<Vec<_>>>()?;
        Ok((quiver, rels))
    }

    fn species_data(&self, src: &str) -> Result<SpeciesFq> {
        let s = self.species.as_ref().expect("species block");
        let names: Vec<String> = s.vertices.iter().map(|v| v.name.clone()).collect();
        let mut arrows = Vec::new();
        for a in &s.arrows {
            let what = format!("arrow {}", a.name);
            arrows.push(SpeciesArrow {
                name: a.name.clone(),
                source: index_of(src, &names, &a.source, &what)?,
                target: index_of(src, &names, &a.target, &what)?,
                degree: a.degree,
                twist: a.twist,
            });
        }
        Ok(SpeciesFq {
            vertices: s.vertices.iter().map(|v| SpeciesVertex { name: v.name.clone(), degree: v.degree }).collect(),
            arrows,
            rad_power: s.rad_power,
        })
    }

    fn r_species_data(&self, src: &str) -> Result<RSpecies> {
        let s = self.r_species.as_ref().expect("r_species block");
        let names: Vec<String> = s.vertices.iter().map(|v| v.name.clone()).collect();
        let mut arrows = Vec::new();
        for a in &s.arrows {
            let what = format!("arrow {}", a.name);
            let tag = match a.bimodule {
                BimoduleKind::Natural => BimoduleTag::Natural,
                BimoduleKind::Conjugate => BimoduleTag::Conjugate,
            };
            arrows.push((a.name.clone(), index_of(src, &names, &a.source, &what)?, index_of(src, &names, &a.target, &what)?, tag));
        }
        let vertices = s
            .vertices
            .iter()
            .map(|v| (v.name.clone(), if v.kind == RKind::R { RTag::R } else { RTag::C }))
            .collect();
        Ok(RSpecies { vertices, arrows })
    }

    /// The ℝ-species of an `r_species` file.
    pub fn r_species(&self) -> Result<RSpecies> {
        if self.r_species.is_none() {
            return Err(Error::Input("not an r_species file".into()));
        }
        self.r_species_data("")
    }

    /// Build the algebra over the finite field; `r_species` files are rejected.
    pub fn algebra(&self) -> Result<AlgRef> {
        let f = self.field()?;
        let alg = match self.block() {
            Block::Quiver(_) => {
                let (q, rels) = self.quiver_data("")?;
                path_algebra(&f, &q, &rels)?
            }
            Block::Structure(s) => algebra_from_structure_constants(&f, s.basis.clone(), s.table.clone(), s.unit.clone())?,
            Block::Species(_) => species_algebra(&f, &self.species_data("")?)?,
            Block::RSpecies(_) => {
                return Err(Error::Input("an r_species file is only accepted by complexify".into()));
            }
        };
        Ok(Arc::new(alg))
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            let kind = match self.block() {
                Block::Quiver(_) => "quiver",
                Block::Structure(_) => "structure-constants",
                Block::Species(_) => "species",
                Block::RSpecies(_) => "r-species",
            };
            format!("{kind} over F_{}", self.field.p.pow(self.field.n))
        })
    }
}

/// `"a*b + 2*c*d - e"`: terms separated by `+` or `-`, factors by `*`; a leading integer
/// factor is a coefficient.
pub fn parse_relation(f: &Field, q: &Quiver, s: &str) -> std::result::Result<PathComb, String> {
    let mut out: PathComb = Vec::new();
    let mut sign_neg = false;
    let mut term = String::new();
    let flush = |term: &str, neg: bool, out: &mut PathComb| -> std::result::Result<(), String> {
        let t = term.trim();
        if t.is_empty() {
            return Err(format!("empty term in relation {s:?}"));
        }
        let mut coeff: Elem = 1;
        let mut path = Vec::new();
        for (k, factor) in t.split('*').map(str::trim).enumerate() {
            if k == 0 {
                if let Ok(c) = factor.parse::<u32>() {
                    if c >= f.q() {
                        return Err(format!("coefficient {c} is not an element of {}", f.name()));
                    }
                    coeff = c;
                    continue;
                }
            }
            let a = q
                .arrows
                .iter()
                .position(|a| a.name == factor)
                .ok_or_else(|| format!("relation {s:?} uses undeclared arrow {factor:?}"))?;
            path.push(a);
        }
        if path.is_empty() {
            return Err(format!("relation {s:?} has a term without arrows"));
        }
        for w in path.windows(2) {
            if q.arrows[w[0]].target != q.arrows[w[1]].source {
                return Err(format!("path {t:?} in relation {s:?} does not compose"));
            }
        }
        out.push((if neg { f.neg(coeff) } else { coeff }, path));
        Ok(())
    };
    for ch in s.chars() {
        if ch == '+' || ch == '-' {
            if !term.trim().is_empty() {
                flush(&term, sign_neg, &mut out)?;
            } else if !out.is_empty() {
                return Err(format!("empty term in relation {s:?}"));
            }
            term.clear();
            sign_neg = ch == '-';
        } else {
            term.push(ch);
        }
    }
    flush(&term, sign_neg, &mut out)?;
    Ok(out)
}
