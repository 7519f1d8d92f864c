//! Members of the generalized cluster-XY family.
//!
//! A model on a periodic ring of `N` sites is
//!
//! ```text
//! H = - sum_j [ sum_X J  X_j Z_{j+1} ... Z_{j+n} X_{j+n+1}
//!             + sum_Y J  Y_j Z_{j+1} ... Z_{j+n} Y_{j+n+1}
//!             + h Z_j ]
//! ```
//!
//! where each interaction block carries a kind (X or Y), a coupling `J` and
//! a mediator count `n` (the number of Z operators strung between the two
//! endpoints). Site indices are taken modulo `N`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Endpoint operator of an interaction block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    X,
    Y,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::X => f.write_str("x"),
            BlockKind::Y => f.write_str("y"),
        }
    }
}

/// One `P Z...Z P` interaction term, repeated on every site of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub strength: f64,
    pub mediators: usize,
}

impl BlockSpec {
    pub fn x(strength: f64, mediators: usize) -> Self {
        BlockSpec {
            kind: BlockKind::X,
            strength,
            mediators,
        }
    }

    pub fn y(strength: f64, mediators: usize) -> Self {
        BlockSpec {
            kind: BlockKind::Y,
            strength,
            mediators,
        }
    }

    /// Distance between the two endpoint operators.
    pub fn span(&self) -> usize {
        self.mediators + 1
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.kind, self.strength, self.mediators)
    }
}

/// A validated member of the family. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSpec {
    sites: usize,
    field: f64,
    blocks: Vec<BlockSpec>,
}

/// Builds and validates a model.
///
/// Zero-strength and duplicate blocks are kept as given; duplicates simply
/// add in the single-particle dispersion.
pub fn make_model(sites: usize, field: f64, blocks: Vec<BlockSpec>) -> Result<ModelSpec> {
    if sites < 2 {
        return Err(Error::InvalidSize {
            sites,
            reason: "a ring needs at least 2 sites",
        });
    }
    if !field.is_finite() {
        return Err(Error::NonFinite {
            name: "field",
            value: field,
        });
    }
    for block in &blocks {
        if !block.strength.is_finite() {
            return Err(Error::NonFinite {
                name: "strength",
                value: block.strength,
            });
        }
        if block.mediators + 2 > sites {
            return Err(Error::BlockTooLong {
                mediators: block.mediators,
                sites,
            });
        }
    }
    Ok(ModelSpec {
        sites,
        field,
        blocks,
    })
}

impl ModelSpec {
    pub fn new(sites: usize, field: f64, blocks: Vec<BlockSpec>) -> Result<Self> {
        make_model(sites, field, blocks)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn x_block_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.kind == BlockKind::X).count()
    }

    pub fn y_block_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Y).count()
    }

    /// Same couplings on a ring of a different size.
    pub fn with_sites(&self, sites: usize) -> Result<Self> {
        make_model(sites, self.field, self.blocks.clone())
    }

    pub fn with_field(&self, field: f64) -> Result<Self> {
        make_model(self.sites, field, self.blocks.clone())
    }

    /// Parses the JSON model-definition format:
    /// `{"sites": 8, "field": 1.0, "blocks": [{"kind": "x", "strength": 0.75, "mediators": 1}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        make_model(raw.sites, raw.field, raw.blocks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    /// Compact `x:J:n;y:J:n` rendering of the block list.
    pub fn blocks_label(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawModel::deserialize(deserializer)?;
        make_model(raw.sites, raw.field, raw.blocks).map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    sites: usize,
    field: f64,
    blocks: Vec<BlockSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A real multiple of a tensor product of single-site Pauli operators.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    pub coefficient: f64,
    pub letters: Vec<Pauli>,
}

impl PauliString {
    pub fn sites(&self) -> usize {
        self.letters.len()
    }

    /// Letters as text, site 0 first.
    pub fn label(&self) -> String {
        self.letters.iter().map(|p| p.letter()).collect()
    }

    /// Cyclic relabelling `j -> j + shift`.
    pub fn shifted(&self, shift: usize) -> PauliString {
        let n = self.letters.len();
        let mut letters = vec![Pauli::I; n];
        for (j, &p) in self.letters.iter().enumerate() {
            letters[(j + shift) % n] = p;
        }
        PauliString {
            coefficient: self.coefficient,
            letters,
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}*{}", self.coefficient, self.label())
    }
}

/// Literal expansion of the Hamiltonian into Pauli strings.
///
/// Terms with a zero coefficient are omitted, so a model with `B` non-zero
/// blocks and `h != 0` yields exactly `N * (B + 1)` strings.
pub fn to_pauli_strings(spec: &ModelSpec) -> Vec<PauliString> {
    let n = spec.sites;
    let mut out = Vec::with_capacity(n * (spec.blocks.len() + 1));
    for j in 0..n {
        for block in spec.blocks.iter().filter(|b| b.strength != 0.0) {
            let end = match block.kind {
                BlockKind::X => Pauli::X,
                BlockKind::Y => Pauli::Y,
            };
            let mut letters = vec![Pauli::I; n];
            letters[j] = end;
            for t in 1..=block.mediators {
                letters[(j + t) % n] = Pauli::Z;
            }
            letters[(j + block.span()) % n] = end;
            out.push(PauliString {
                coefficient: -block.strength,
                letters,
            });
        }
    }
    if spec.field != 0.0 {
        for j in 0..n {
            let mut letters = vec![Pauli::I; n];
            letters[j] = Pauli::Z;
            out.push(PauliString {
                coefficient: -spec.field,
                letters,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xzy_parameters() {
        let spec = make_model(8, 1.0, vec![BlockSpec::x(0.75, 1), BlockSpec::y(0.25, 1)]).unwrap();
        assert_eq!(spec.sites(), 8);
        assert_eq!(spec.x_block_count(), 1);
        assert_eq!(spec.y_block_count(), 1);
    }

    #[test]
    fn free_spins_have_no_blocks() {
        let spec = make_model(4, 0.0, vec![]).unwrap();
        assert!(spec.blocks().is_empty());
        assert!(to_pauli_strings(&spec).is_empty());
    }

    #[test]
    fn rejects_invalid_models() {
        assert!(matches!(
            make_model(4, 1.0, vec![BlockSpec::x(1.0, 3)]),
            Err(Error::BlockTooLong { mediators: 3, sites: 4 })
        ));
        assert!(matches!(
            make_model(1, 1.0, vec![]),
            Err(Error::InvalidSize { .. })
        ));
        assert!(matches!(
            make_model(4, f64::NAN, vec![]),
            Err(Error::NonFinite { name: "field", .. })
        ));
        assert!(matches!(
            make_model(4, 0.0, vec![BlockSpec::y(f64::INFINITY, 0)]),
            Err(Error::NonFinite { name: "strength", .. })
        ));
        // mediators = N - 2 is the longest block that fits
        assert!(make_model(4, 1.0, vec![BlockSpec::x(1.0, 2)]).is_ok());
    }

    #[test]
    fn two_site_ising_expansion() {
        let spec = make_model(2, 0.0, vec![BlockSpec::x(1.0, 0), BlockSpec::y(0.0, 0)]).unwrap();
        let strings = to_pauli_strings(&spec);
        assert_eq!(strings.len(), 2);
        for s in &strings {
            assert_eq!(s.coefficient, -1.0);
            assert_eq!(s.label(), "XX");
        }
    }

    #[test]
    fn xzy_expansion_wraps() {
        let spec = make_model(4, 0.3, vec![BlockSpec::x(1.0, 1), BlockSpec::y(0.0, 1)]).unwrap();
        let labels: Vec<(f64, String)> = to_pauli_strings(&spec)
            .iter()
            .map(|s| (s.coefficient, s.label()))
            .collect();
        assert_eq!(
            labels,
            vec![
                (-1.0, "XZXI".to_string()),
                (-1.0, "IXZX".to_string()),
                (-1.0, "XIXZ".to_string()),
                (-1.0, "ZXIX".to_string()),
                (-0.3, "ZIII".to_string()),
                (-0.3, "IZII".to_string()),
                (-0.3, "IIZI".to_string()),
                (-0.3, "IIIZ".to_string()),
            ]
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"sites": 6, "field": 0.5, "blocks": [
            {"kind": "x", "strength": 0.75, "mediators": 1},
            {"kind": "y", "strength": -0.25, "mediators": 0}]}"#;
        let spec = ModelSpec::from_json(text).unwrap();
        assert_eq!(spec.blocks()[1], BlockSpec::y(-0.25, 0));
        assert_eq!(ModelSpec::from_json(&spec.to_json()).unwrap(), spec);
        let bad = r#"{"sites": 4, "field": 0.5, "blocks": [{"kind": "x", "strength": 1, "mediators": 3}]}"#;
        assert!(matches!(
            ModelSpec::from_json(bad),
            Err(Error::BlockTooLong { .. })
        ));
        assert!(matches!(
            ModelSpec::from_json(r#"{"sites": 4, "field": 1}"#),
            Err(Error::Parse(_))
        ));
        let serde_bad: Result<ModelSpec, _> = serde_json::from_str(bad);
        assert!(serde_bad.is_err());
    }
}
