//! Transfer paths for quantity elements.
//!
//! A path starts as `[origin]` when a parcel is born and gains the transmitter
//! vertex every time the parcel is relayed. The holder itself is implied by the
//! buffer and is not stored. Paths are kept as parent-linked chains in one
//! append-only arena, so parcels that share a route prefix share its storage.

use crate::types::VertexId;

const NO_PARENT: u32 = u32::MAX;

/// Handle to a path in a [`PathStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathRef(u32);

#[derive(Clone, Copy, Debug)]
struct Node {
    vertex: VertexId,
    parent: u32,
    len: u32,
}

#[derive(Clone, Debug, Default)]
pub struct PathStore {
    nodes: Vec<Node>,
    // Birth paths are identical for every parcel of the same origin.
    births: Vec<u32>,
}

impl PathStore {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: Node) -> PathRef {
        let id = self.nodes.len() as u32;
        assert!(id != NO_PARENT, "path store overflow");
        self.nodes.push(node);
        PathRef(id)
    }

    /// Path of a freshly generated parcel: `[origin]`.
    pub fn on_birth(&mut self, origin: VertexId) -> PathRef {
        let slot = origin.index();
        if slot < self.births.len() && self.births[slot] != NO_PARENT {
            return PathRef(self.births[slot]);
        }
        let r = self.push(Node {
            vertex: origin,
            parent: NO_PARENT,
            len: 1,
        });
        if slot >= self.births.len() {
            self.births.resize(slot + 1, NO_PARENT);
        }
        self.births[slot] = r.0;
        r
    }

    /// `path` extended by the vertex relaying the parcel.
    pub fn on_transfer(&mut self, path: PathRef, transmitter: VertexId) -> PathRef {
        let len = self.nodes[path.0 as usize].len + 1;
        self.push(Node {
            vertex: transmitter,
            parent: path.0,
            len,
        })
    }

    pub fn len_of(&self, path: PathRef) -> usize {
        self.nodes[path.0 as usize].len as usize
    }

    pub fn origin_of(&self, path: PathRef) -> VertexId {
        let mut cur = path.0;
        loop {
            let node = self.nodes[cur as usize];
            if node.parent == NO_PARENT {
                return node.vertex;
            }
            cur = node.parent;
        }
    }

    /// Logical sequence `[origin, transmitter_1, ..., transmitter_n]`.
    pub fn resolve(&self, path: PathRef) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len_of(path));
        let mut cur = path.0;
        while cur != NO_PARENT {
            let node = self.nodes[cur as usize];
            out.push(node.vertex);
            cur = node.parent;
        }
        out.reverse();
        out
    }

    /// Number of stored nodes.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn memory_bytes(&self) -> usize {
        self.nodes.len() * std::mem::size_of::<Node>() + self.births.len() * 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn birth_is_single_vertex() {
        let mut store = PathStore::new();
        let p = store.on_birth(v(3));
        assert_eq!(store.resolve(p), vec![v(3)]);
        assert_eq!(store.len_of(p), 1);
    }

    #[test]
    fn repeated_births_share_storage() {
        let mut store = PathStore::new();
        let a = store.on_birth(v(0));
        let b = store.on_birth(v(0));
        assert_eq!(store.resolve(a), store.resolve(b));
        assert_eq!(store.node_count(), 1);
    }

    #[test]
    fn relay_appends_transmitter() {
        let mut store = PathStore::new();
        let a = store.on_birth(v(0));
        let ab = store.on_transfer(a, v(1));
        let abc = store.on_transfer(ab, v(2));
        assert_eq!(store.resolve(ab), vec![v(0), v(1)]);
        assert_eq!(store.resolve(abc), vec![v(0), v(1), v(2)]);
        assert_eq!(store.len_of(abc), 3);
        assert_eq!(store.origin_of(abc), v(0));
        // the prefix is untouched
        assert_eq!(store.resolve(a), vec![v(0)]);
    }
}
