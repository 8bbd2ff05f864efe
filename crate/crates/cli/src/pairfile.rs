//! The pair-file format: a JSON document with keys `group`, `S`, `T` and
//! optional `provenance`. Coordinates are strict (no modular reduction on
//! parse) and duplicates are rejected; files are written in canonical
//! dense-rank order so parse-then-serialize is the identity.

use fdp::{ElementSet, FiniteAbelianGroup};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub group: Vec<u32>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<i64>>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug)]
pub struct ParsedPair {
    pub group: FiniteAbelianGroup,
    pub s: ElementSet,
    pub t: ElementSet,
}

fn validate_side(
    group: &FiniteAbelianGroup,
    name: &str,
    vectors: &[Vec<i64>],
) -> Result<ElementSet, String> {
    let orders = group.factor_orders();
    let mut elems = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != orders.len() {
            return Err(format!(
                "{name}[{i}]: expected {} coordinates, got {}",
                orders.len(),
                v.len()
            ));
        }
        for (j, (&c, &n)) in v.iter().zip(orders).enumerate() {
            if c < 0 || c >= n as i64 {
                return Err(format!(
                    "{name}[{i}][{j}] = {c} out of range for factor {j} (Z{n})"
                ));
            }
        }
        elems.push(group.element(v).map_err(|e| e.to_string())?);
    }
    for (i, e) in elems.iter().enumerate() {
        if elems[..i].contains(e) {
            return Err(format!("duplicate element in {name} at index {i}"));
        }
    }
    ElementSet::from_elements(group.clone(), &elems).map_err(|e| e.to_string())
}

impl PairFile {
    pub fn parse(text: &str) -> Result<(Self, ParsedPair), String> {
        let file: PairFile = serde_json::from_str(text)
            .map_err(|e| format!("invalid pair file: {e}"))?;
        let group = FiniteAbelianGroup::new(&file.group).map_err(|e| e.to_string())?;
        let s = validate_side(&group, "S", &file.s)?;
        let t = validate_side(&group, "T", &file.t)?;
        Ok((
            file,
            ParsedPair {
                group,
                s,
                t,
            },
        ))
    }

    pub fn from_sets(s: &ElementSet, t: &ElementSet, provenance: Option<String>) -> Self {
        let coords = |set: &ElementSet| -> Vec<Vec<i64>> {
            set.elements()
                .map(|e| e.coords().iter().map(|&c| c as i64).collect())
                .collect()
        };
        PairFile {
            group: s.group().factor_orders().to_vec(),
            s: coords(s),
            t: coords(t),
            provenance,
        }
    }

    /// Canonical bytes: dense-rank element order, pretty-printed, trailing
    /// newline.
    pub fn canonical_json(&self) -> Result<String, String> {
        // reparse through sets to force canonical ordering
        let group = FiniteAbelianGroup::new(&self.group).map_err(|e| e.to_string())?;
        let s = validate_side(&group, "S", &self.s)?;
        let t = validate_side(&group, "T", &self.t)?;
        let canonical = PairFile::from_sets(&s, &t, self.provenance.clone());
        serde_json::to_string_pretty(&canonical)
            .map(|mut text| {
                text.push('\n');
                text
            })
            .map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_then_serialize_is_identity_on_canonical_files() {
        let file = PairFile {
            group: vec![4],
            s: vec![vec![3], vec![0]],
            t: vec![vec![1], vec![0]],
            provenance: None,
        };
        let canonical = file.canonical_json().unwrap();
        let (reparsed, _) = PairFile::parse(&canonical).unwrap();
        assert_eq!(reparsed.canonical_json().unwrap(), canonical);
        // canonical order is dense-rank sorted
        assert_eq!(reparsed.s, vec![vec![0], vec![3]]);
    }

    #[test]
    fn parse_rejects_out_of_range_and_duplicates() {
        let err = PairFile::parse(r#"{"group":[4],"S":[[4]],"T":[[0]]}"#).unwrap_err();
        assert!(err.contains("S[0][0]"), "{err}");
        let err = PairFile::parse(r#"{"group":[4],"S":[[1],[1]],"T":[[0]]}"#).unwrap_err();
        assert!(err.contains("duplicate element in S at index 1"), "{err}");
        let err =
            PairFile::parse(r#"{"group":[4],"S":[[0,1]],"T":[[0]]}"#).unwrap_err();
        assert!(err.contains("expected 1 coordinates"), "{err}");
    }
}
