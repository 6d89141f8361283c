//! Origin slot maps for selective and grouped tracking.
//!
//! Provenance vectors stay per vertex; only the origin axis is remapped.
//! Selective tracking keeps `k` tracked vertices in slots `0..k` and collects
//! every other origin in slot `k`. Grouped tracking maps every vertex to one of
//! `m` groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::proportional::sparse::UNKNOWN_SLOT;
use crate::types::{Interaction, Origin, VertexId};

#[derive(Clone, Debug, Default, PartialEq)]
pub enum ScopeMap {
    /// Every vertex is its own slot.
    #[default]
    Identity,
    Selective {
        tracked: Vec<VertexId>,
        slot_of: HashMap<VertexId, u32>,
    },
    Grouped {
        slot_of: Vec<u32>,
        groups: usize,
    },
}

/// An interaction together with the slot its newborn mass is credited to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScopedInteraction {
    pub interaction: Interaction,
    pub newborn_slot: u32,
}

impl ScopeMap {
    pub fn selective(tracked: Vec<VertexId>) -> Result<Self> {
        if tracked.is_empty() {
            return Err(Error::config(
                "selective tracking needs at least one vertex",
            ));
        }
        let mut slot_of = HashMap::with_capacity(tracked.len());
        for (i, &v) in tracked.iter().enumerate() {
            if slot_of.insert(v, i as u32).is_some() {
                return Err(Error::config(format!(
                    "vertex {v} listed twice in selective set"
                )));
            }
        }
        Ok(ScopeMap::Selective { tracked, slot_of })
    }

    /// `assignment[v]` is the group of vertex `v`. Every vertex must be
    /// assigned; groups are numbered densely from zero.
    pub fn grouped(assignment: Vec<Option<u32>>) -> Result<Self> {
        let mut slot_of = Vec::with_capacity(assignment.len());
        for (v, g) in assignment.into_iter().enumerate() {
            match g {
                Some(g) => slot_of.push(g),
                None => {
                    return Err(Error::config(format!(
                        "group map does not cover vertex #{v}"
                    )));
                }
            }
        }
        let groups = slot_of.iter().map(|&g| g as usize + 1).max().unwrap_or(0);
        Ok(ScopeMap::Grouped { slot_of, groups })
    }

    /// Dense vector length implied by the scope, if fixed.
    pub fn width(&self) -> Option<usize> {
        match self {
            ScopeMap::Identity => None,
            ScopeMap::Selective { tracked, .. } => Some(tracked.len() + 1),
            ScopeMap::Grouped { groups, .. } => Some(*groups),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ScopeMap::Identity)
    }

    /// Slot that mass generated at `v` is credited to.
    pub fn slot(&self, v: VertexId) -> u32 {
        match self {
            ScopeMap::Identity => v.0,
            ScopeMap::Selective { tracked, slot_of } => {
                slot_of.get(&v).copied().unwrap_or(tracked.len() as u32)
            }
            ScopeMap::Grouped { slot_of, .. } => *slot_of
                .get(v.index())
                .unwrap_or_else(|| panic!("vertex {v} missing from group map")),
        }
    }

    /// The "rest" slot of selective tracking.
    pub fn rest_slot(&self) -> Option<u32> {
        match self {
            ScopeMap::Selective { tracked, .. } => Some(tracked.len() as u32),
            _ => None,
        }
    }

    /// What a slot stands for.
    pub fn origin(&self, slot: u32) -> Origin {
        if slot == UNKNOWN_SLOT {
            return Origin::Unknown;
        }
        match self {
            ScopeMap::Identity => Origin::Vertex(VertexId(slot)),
            ScopeMap::Selective { tracked, .. } => tracked
                .get(slot as usize)
                .map(|&v| Origin::Vertex(v))
                .unwrap_or(Origin::Rest),
            ScopeMap::Grouped { .. } => Origin::Group(slot),
        }
    }

    /// Origin under which mass generated at `v` shows up.
    pub fn origin_of(&self, v: VertexId) -> Origin {
        self.origin(self.slot(v))
    }

    pub fn apply(&self, r: &Interaction) -> ScopedInteraction {
        ScopedInteraction {
            interaction: *r,
            newborn_slot: self.slot(r.source),
        }
    }
}

/// Maps an interaction onto the scope's slots.
pub fn apply_scope(r: &Interaction, scope: &ScopeMap) -> ScopedInteraction {
    scope.apply(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selective_rest_slot() {
        let s = ScopeMap::selective(vec![VertexId(5), VertexId(2)]).unwrap();
        assert_eq!(s.width(), Some(3));
        assert_eq!(s.slot(VertexId(2)), 1);
        assert_eq!(s.slot(VertexId(9)), 2);
        assert_eq!(s.origin(0), Origin::Vertex(VertexId(5)));
        assert_eq!(s.origin(2), Origin::Rest);
        let m = apply_scope(&Interaction::new(7, 5, 1.0, 1.0), &s);
        assert_eq!(m.newborn_slot, 2);
    }

    #[test]
    fn selective_rejects_duplicates_and_empty() {
        assert!(ScopeMap::selective(vec![]).is_err());
        assert!(ScopeMap::selective(vec![VertexId(1), VertexId(1)]).is_err());
    }

    #[test]
    fn grouped_needs_full_cover() {
        assert!(ScopeMap::grouped(vec![Some(0), None]).is_err());
        let g = ScopeMap::grouped(vec![Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(g.width(), Some(2));
        assert_eq!(g.slot(VertexId(2)), 1);
        assert_eq!(g.origin_of(VertexId(1)), Origin::Group(0));
    }
}
