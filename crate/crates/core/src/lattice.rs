//! Planar open-boundary toric-code geometry.
//!
//! Qubits sit on the vertices of a `width x height` grid. The faces of the
//! grid are coloured like a checkerboard: face `(i, j)` is an S plaquette
//! (X-type interaction, hosts `e` anyons) when `i + j` is even and a P
//! plaquette (Z-type interaction, hosts `m` anyons) otherwise. Faces are
//! indexed by their lower-left vertex, so faces with `i = -1`, `j = -1`,
//! `i = width - 1` or `j = height - 1` lie outside the grid and touch only
//! one or two qubits.
//!
//! Boundary treatment: every P face that touches at least one qubit is kept
//! as a truncated Z operator, while S faces are kept only in the interior.
//! With this choice all plaquette operators commute and the plaquette set
//! fixes a unique vacuum. A `2 x 2` grid reproduces the minimal instance:
//! one S plaquette and four two-qubit P links.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlaquetteKind {
    /// X-type plaquette, detects `e` anyons.
    S,
    /// Z-type plaquette, detects `m` anyons.
    P,
}

impl PlaquetteKind {
    pub fn letter(self) -> Pauli {
        match self {
            PlaquetteKind::S => Pauli::X,
            PlaquetteKind::P => Pauli::Z,
        }
    }
}

/// Anyon species that a string operator creates.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnyonKind {
    /// Z-string, endpoints on S plaquettes.
    E,
    /// X-string, endpoints on P plaquettes.
    M,
}

impl AnyonKind {
    pub fn host(self) -> PlaquetteKind {
        match self {
            AnyonKind::E => PlaquetteKind::S,
            AnyonKind::M => PlaquetteKind::P,
        }
    }

    pub fn letter(self) -> Pauli {
        match self {
            AnyonKind::E => Pauli::Z,
            AnyonKind::M => Pauli::X,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Plaquette {
    pub id: usize,
    pub kind: PlaquetteKind,
    /// Counter-clockwise vertex list (1 to 4 qubits).
    pub qubits: Vec<usize>,
    /// Lower-left face index for grid lattices.
    pub face: Option<(i32, i32)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LatticeDescriptor {
    Minimal,
    Grid { width: usize, height: usize },
}

#[derive(Clone, Debug)]
pub struct ToricLattice {
    descriptor: LatticeDescriptor,
    qubit_count: usize,
    plaquettes: Vec<Plaquette>,
    /// For each qubit, the plaquette ids containing it.
    membership: Vec<Vec<usize>>,
}

impl ToricLattice {
    /// The four-qubit single-S-plaquette instance. Qubits 0..3 carry the
    /// counter-clockwise labels 1..4; plaquette 0 is the S plaquette and
    /// plaquettes 1..4 are the links (1,2), (2,3), (3,4), (4,1).
    pub fn minimal() -> Self {
        let mut plaquettes = vec![Plaquette {
            id: 0,
            kind: PlaquetteKind::S,
            qubits: vec![0, 1, 2, 3],
            face: None,
        }];
        for (k, (a, b)) in [(0, 1), (1, 2), (2, 3), (3, 0)].into_iter().enumerate() {
            plaquettes.push(Plaquette {
                id: k + 1,
                kind: PlaquetteKind::P,
                qubits: vec![a, b],
                face: None,
            });
        }
        Self::assemble(LatticeDescriptor::Minimal, 4, plaquettes)
    }

    pub fn grid(width: usize, height: usize) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid lattice needs at least 2x2 vertices, got {width}x{height}"
            )));
        }
        let (w, h) = (width as i32, height as i32);
        let vertex = |x: i32, y: i32| -> Option<usize> {
            (0..w).contains(&x).then_some(())?;
            (0..h).contains(&y).then_some(())?;
            Some((y * w + x) as usize)
        };
        let mut plaquettes = Vec::new();
        for j in -1..h {
            for i in -1..w {
                let kind = if (i + j).rem_euclid(2) == 0 {
                    PlaquetteKind::S
                } else {
                    PlaquetteKind::P
                };
                let qubits: Vec<usize> = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
                    .into_iter()
                    .filter_map(|(x, y)| vertex(x, y))
                    .collect();
                let keep = match kind {
                    PlaquetteKind::S => qubits.len() == 4,
                    PlaquetteKind::P => !qubits.is_empty(),
                };
                if keep {
                    let id = plaquettes.len();
                    plaquettes.push(Plaquette {
                        id,
                        kind,
                        qubits,
                        face: Some((i, j)),
                    });
                }
            }
        }
        Ok(Self::assemble(
            LatticeDescriptor::Grid { width, height },
            width * height,
            plaquettes,
        ))
    }

    pub fn from_descriptor(desc: LatticeDescriptor) -> Result<Self> {
        match desc {
            LatticeDescriptor::Minimal => Ok(Self::minimal()),
            LatticeDescriptor::Grid { width, height } => Self::grid(width, height),
        }
    }

    fn assemble(
        descriptor: LatticeDescriptor,
        qubit_count: usize,
        plaquettes: Vec<Plaquette>,
    ) -> Self {
        let mut membership = vec![Vec::new(); qubit_count];
        for p in &plaquettes {
            for &q in &p.qubits {
                membership[q].push(p.id);
            }
        }
        ToricLattice {
            descriptor,
            qubit_count,
            plaquettes,
            membership,
        }
    }

    pub fn descriptor(&self) -> LatticeDescriptor {
        self.descriptor
    }

    pub fn is_minimal(&self) -> bool {
        matches!(self.descriptor, LatticeDescriptor::Minimal)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// First qubit label used in text: 1 for the minimal instance, 0 for grids.
    pub fn label_base(&self) -> usize {
        if self.is_minimal() {
            1
        } else {
            0
        }
    }

    pub fn qubit_from_label(&self, label: usize) -> Result<usize> {
        label
            .checked_sub(self.label_base())
            .filter(|&q| q < self.qubit_count)
            .ok_or(Error::QubitOutOfRange {
                index: label,
                n: self.qubit_count,
            })
    }

    /// Parses a Pauli string written with this lattice's qubit labels.
    pub fn parse_pauli(&self, text: &str) -> Result<PauliString> {
        PauliString::parse_labeled(text, self.qubit_count, self.label_base())
    }

    pub fn render_pauli(&self, p: &PauliString) -> String {
        p.render_labeled(self.label_base())
    }

    /// Vertex coordinates `(x, y)` for drawing. The minimal instance is laid
    /// out counter-clockwise on a unit square.
    pub fn coords(&self, q: usize) -> (usize, usize) {
        match self.descriptor {
            LatticeDescriptor::Minimal => [(0, 0), (1, 0), (1, 1), (0, 1)][q],
            LatticeDescriptor::Grid { width, .. } => (q % width, q / width),
        }
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    pub fn plaquette(&self, id: usize) -> Result<&Plaquette> {
        self.plaquettes.get(id).ok_or(Error::UnknownPlaquette(id))
    }

    pub fn plaquettes_of(&self, kind: PlaquetteKind) -> impl Iterator<Item = &Plaquette> {
        self.plaquettes.iter().filter(move |p| p.kind == kind)
    }

    pub fn membership(&self, q: usize) -> &[usize] {
        &self.membership[q]
    }

    /// XXXX on S plaquettes, ZZZZ on P plaquettes (fewer sites at the boundary).
    pub fn plaquette_operator(&self, id: usize) -> Result<PauliString> {
        let p = self.plaquette(id)?;
        PauliString::uniform(self.qubit_count, &p.qubits, p.kind.letter())
    }

    pub fn plaquette_operators(&self) -> Vec<PauliString> {
        (0..self.plaquettes.len())
            .map(|id| self.plaquette_operator(id).expect("valid id"))
            .collect()
    }

    /// Marks every plaquette whose operator anticommutes with `applied`,
    /// i.e. the anyons present after applying `applied` to the vacuum.
    pub fn anyon_occupancy(&self, applied: &PauliString) -> Result<Occupancy> {
        if applied.n_qubits() != self.qubit_count {
            return Err(Error::SizeMismatch {
                expected: self.qubit_count,
                found: applied.n_qubits(),
            });
        }
        let occupied = self
            .plaquette_operators()
            .iter()
            .map(|op| op.symplectic_product(applied))
            .collect();
        Ok(Occupancy { occupied })
    }

    /// Shortest string creating anyons of `kind` exactly on `from` and `to`.
    ///
    /// Two host plaquettes are adjacent when they share a qubit that belongs
    /// to no other host plaquette. Among shortest paths the lexicographically
    /// smallest qubit sequence (read from `from`) is returned.
    pub fn string_between(&self, kind: AnyonKind, from: usize, to: usize) -> Result<StringPath> {
        let host = kind.host();
        for id in [from, to] {
            if self.plaquette(id)?.kind != host {
                return Err(Error::PlaquetteKind {
                    id,
                    reason: match kind {
                        AnyonKind::E => "e strings end on S plaquettes",
                        AnyonKind::M => "m strings end on P plaquettes",
                    },
                });
            }
        }
        let adjacency = self.host_adjacency(host);
        // distances to `to`
        let mut dist = vec![usize::MAX; self.plaquettes.len()];
        dist[to] = 0;
        let mut queue = VecDeque::from([to]);
        while let Some(cur) = queue.pop_front() {
            for &(_, next) in &adjacency[cur] {
                if dist[next] == usize::MAX {
                    dist[next] = dist[cur] + 1;
                    queue.push_back(next);
                }
            }
        }
        if dist[from] == usize::MAX {
            return Err(Error::NoPath { from, to });
        }
        let mut qubits = Vec::with_capacity(dist[from]);
        let mut cur = from;
        while cur != to {
            let &(q, next) = adjacency[cur]
                .iter()
                .filter(|(_, nb)| dist[*nb] + 1 == dist[cur])
                .min_by_key(|(q, _)| *q)
                .expect("BFS distances are consistent");
            qubits.push(q);
            cur = next;
        }
        let operator = PauliString::uniform(self.qubit_count, &qubits, kind.letter())?;
        Ok(StringPath {
            kind,
            qubits,
            operator,
        })
    }

    fn host_adjacency(&self, host: PlaquetteKind) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.plaquettes.len()];
        for q in 0..self.qubit_count {
            let hosts: Vec<usize> = self.membership[q]
                .iter()
                .copied()
                .filter(|&id| self.plaquettes[id].kind == host)
                .collect();
            if let [a, b] = hosts[..] {
                adj[a].push((q, b));
                adj[b].push((q, a));
            }
        }
        adj
    }

    /// The X loop bounding a region of S plaquettes: the product of their
    /// plaquette operators. An empty region gives the identity.
    pub fn loop_around(&self, region: &[usize]) -> Result<PauliString> {
        let mut acc = PauliString::identity(self.qubit_count);
        for &id in region {
            if self.plaquette(id)?.kind != PlaquetteKind::S {
                return Err(Error::PlaquetteKind {
                    id,
                    reason: "loops enclose S plaquettes",
                });
            }
            acc = acc.multiply(&self.plaquette_operator(id)?)?;
        }
        Ok(acc)
    }

    /// Hamiltonian terms: every plaquette operator with coefficient -1.
    pub fn hamiltonian_terms(&self) -> Vec<PauliString> {
        self.plaquette_operators()
    }
}

/// Per-plaquette anyon occupancy, indexed by plaquette id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occupancy {
    pub occupied: Vec<bool>,
}

impl Occupancy {
    pub fn occupied_ids(&self) -> Vec<usize> {
        self.occupied
            .iter()
            .enumerate()
            .filter_map(|(i, &o)| o.then_some(i))
            .collect()
    }

    pub fn is_vacuum(&self) -> bool {
        !self.occupied.iter().any(|&o| o)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringPath {
    pub kind: AnyonKind,
    pub qubits: Vec<usize>,
    pub operator: PauliString,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_s(lat: &ToricLattice) -> Vec<usize> {
        lat.plaquettes_of(PlaquetteKind::S).map(|p| p.id).collect()
    }

    #[test]
    fn minimal_instance_operators() {
        let lat = ToricLattice::minimal();
        assert_eq!(
            lat.plaquette_operator(0).unwrap(),
            lat.parse_pauli("X1 X2 X3 X4").unwrap()
        );
        assert_eq!(
            lat.plaquette_operator(1).unwrap(),
            lat.parse_pauli("Z1 Z2").unwrap()
        );
        let links: Vec<_> = (1..=4)
            .map(|id| lat.plaquette_operator(id).unwrap())
            .collect();
        let product = links
            .iter()
            .fold(PauliString::identity(4), |acc, l| acc.multiply(l).unwrap());
        assert_eq!(product, PauliString::identity(4));
        for l in &links {
            assert_eq!(l.commutes(&lat.plaquette_operator(0).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn two_by_two_grid_matches_minimal_shape() {
        let g = ToricLattice::grid(2, 2).unwrap();
        assert_eq!(g.plaquettes_of(PlaquetteKind::S).count(), 1);
        let links: Vec<_> = g.plaquettes_of(PlaquetteKind::P).collect();
        assert_eq!(links.len(), 4);
        assert!(links.iter().all(|p| p.qubits.len() == 2));
    }

    #[test]
    fn checkerboard_and_membership_invariants() {
        for (w, h) in [(2, 2), (3, 3), (4, 4), (3, 5), (6, 6), (5, 2)] {
            let lat = ToricLattice::grid(w, h).unwrap();
            for p in lat.plaquettes() {
                if p.kind == PlaquetteKind::S {
                    assert_eq!(p.qubits.len(), 4);
                }
                let mut dedup = p.qubits.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), p.qubits.len());
            }
            for q in 0..lat.qubit_count() {
                assert!(lat.membership(q).len() <= 4);
                // every vertex sits in exactly two P plaquettes
                let p_count = lat
                    .membership(q)
                    .iter()
                    .filter(|&&id| lat.plaquettes()[id].kind == PlaquetteKind::P)
                    .count();
                assert_eq!(p_count, 2, "{w}x{h} qubit {q}");
            }
            // faces sharing an edge differ in kind
            for a in lat.plaquettes() {
                for b in lat.plaquettes() {
                    let shared = a.qubits.iter().filter(|q| b.qubits.contains(q)).count();
                    if a.id != b.id && shared == 2 && a.qubits.len() > 2 && b.qubits.len() > 2 {
                        assert_ne!(a.kind, b.kind);
                    }
                }
            }
        }
    }

    #[test]
    fn plaquette_operators_commute_exhaustively() {
        for (w, h) in [(4, 4), (3, 5), (6, 6)] {
            let lat = ToricLattice::grid(w, h).unwrap();
            let ops = lat.plaquette_operators();
            for a in &ops {
                for b in &ops {
                    assert_eq!(a.commutes(b).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn single_z_on_interior_qubit_makes_two_e_anyons() {
        let lat = ToricLattice::grid(4, 4).unwrap();
        let q = 5; // vertex (1, 1)
        let occ = lat
            .anyon_occupancy(&PauliString::single(16, q, Pauli::Z).unwrap())
            .unwrap();
        let ids = occ.occupied_ids();
        assert_eq!(ids.len(), 2);
        for id in ids {
            assert_eq!(lat.plaquettes()[id].kind, PlaquetteKind::S);
            assert!(lat.plaquettes()[id].qubits.contains(&q));
        }
    }

    #[test]
    fn single_x_makes_two_m_anyons() {
        let lat = ToricLattice::grid(4, 4).unwrap();
        for q in 0..16 {
            let occ = lat
                .anyon_occupancy(&PauliString::single(16, q, Pauli::X).unwrap())
                .unwrap();
            let ids = occ.occupied_ids();
            assert_eq!(ids.len(), 2);
            assert!(ids
                .iter()
                .all(|&id| lat.plaquettes()[id].kind == PlaquetteKind::P));
        }
    }

    #[test]
    fn z_string_occupies_only_endpoints() {
        let lat = ToricLattice::grid(5, 5).unwrap();
        let s = interior_s(&lat);
        for &a in &s {
            for &b in &s {
                let path = lat.string_between(AnyonKind::E, a, b).unwrap();
                let occ = lat.anyon_occupancy(&path.operator).unwrap();
                if a == b {
                    assert!(occ.is_vacuum());
                    assert!(path.qubits.is_empty());
                } else {
                    let mut want = vec![a, b];
                    want.sort();
                    assert_eq!(occ.occupied_ids(), want);
                }
            }
        }
    }

    #[test]
    fn adjacent_s_plaquettes_joined_by_shared_vertex() {
        let lat = ToricLattice::grid(4, 4).unwrap();
        let s = interior_s(&lat);
        let (a, b) = s
            .iter()
            .flat_map(|&a| s.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| {
                a != b
                    && lat.plaquettes()[a]
                        .qubits
                        .iter()
                        .any(|q| lat.plaquettes()[b].qubits.contains(q))
            })
            .unwrap();
        let path = lat.string_between(AnyonKind::E, a, b).unwrap();
        assert_eq!(path.qubits.len(), 1);
        assert_eq!(path.operator.weight(), 1);
        assert!(lat.plaquettes()[a].qubits.contains(&path.qubits[0]));
        assert!(lat.plaquettes()[b].qubits.contains(&path.qubits[0]));
    }

    #[test]
    fn string_tie_break_is_lexicographic() {
        let lat = ToricLattice::grid(5, 5).unwrap();
        let s = interior_s(&lat);
        let (a, b) = (s[0], *s.last().unwrap());
        let path = lat.string_between(AnyonKind::E, a, b).unwrap();
        // path from (0,0) to (3,3) moves diagonally: shared vertices (1,1), (2,2), (3,3)
        assert_eq!(path.qubits, vec![6, 12, 18]);
        let again = lat.string_between(AnyonKind::E, a, b).unwrap();
        assert_eq!(path, again);
    }

    #[test]
    fn string_errors() {
        let lat = ToricLattice::grid(3, 3).unwrap();
        let s = interior_s(&lat)[0];
        let p = lat.plaquettes_of(PlaquetteKind::P).next().unwrap().id;
        assert!(matches!(
            lat.string_between(AnyonKind::E, s, p),
            Err(Error::PlaquetteKind { .. })
        ));
        assert!(matches!(
            lat.string_between(AnyonKind::M, s, p),
            Err(Error::PlaquetteKind { .. })
        ));
        assert!(matches!(
            lat.string_between(AnyonKind::E, s, 999),
            Err(Error::UnknownPlaquette(999))
        ));
        assert!(matches!(
            lat.plaquette_operator(999),
            Err(Error::UnknownPlaquette(999))
        ));
    }

    #[test]
    fn minimal_m_strings_between_links() {
        let lat = ToricLattice::minimal();
        let path = lat.string_between(AnyonKind::M, 1, 2).unwrap();
        assert_eq!(lat.render_pauli(&path.operator), "X2");
        let occ = lat.anyon_occupancy(&path.operator).unwrap();
        assert_eq!(occ.occupied_ids(), vec![1, 2]);
    }

    #[test]
    fn disconnected_e_plaquettes_have_no_path() {
        // on a 2-wide strip the S plaquettes never share a vertex
        let lat = ToricLattice::grid(2, 4).unwrap();
        let s = interior_s(&lat);
        assert_eq!(s.len(), 2);
        assert!(matches!(
            lat.string_between(AnyonKind::E, s[0], s[1]),
            Err(Error::NoPath { .. })
        ));
    }

    #[test]
    fn loops() {
        let min = ToricLattice::minimal();
        assert_eq!(
            min.loop_around(&[0]).unwrap(),
            min.parse_pauli("X1 X2 X3 X4").unwrap()
        );
        assert_eq!(min.loop_around(&[]).unwrap(), PauliString::identity(4));
        assert!(min.loop_around(&[1]).is_err());

        let lat = ToricLattice::grid(4, 4).unwrap();
        let s = interior_s(&lat);
        let (a, b) = (s[0], s[2]); // faces (0,0) and (1,1) touch at vertex (1,1)
        let boundary = lat.loop_around(&[a, b]).unwrap();
        assert_eq!(boundary.weight(), 6);
        assert_eq!(boundary.y_count(), 0);
        assert_eq!(
            boundary
                .z_words()
                .iter()
                .map(|w| w.count_ones())
                .sum::<u32>(),
            0
        );
    }

    #[test]
    fn closed_z_loop_around_p_plaquette_cancels() {
        let lat = ToricLattice::grid(4, 4).unwrap();
        for p in lat.plaquettes_of(PlaquetteKind::P) {
            let op = lat.plaquette_operator(p.id).unwrap();
            assert!(lat.anyon_occupancy(&op).unwrap().is_vacuum());
        }
    }

    #[test]
    fn occupancy_size_mismatch() {
        let lat = ToricLattice::grid(3, 3).unwrap();
        assert!(matches!(
            lat.anyon_occupancy(&PauliString::identity(4)),
            Err(Error::SizeMismatch {
                expected: 9,
                found: 4
            })
        ));
    }

    #[test]
    fn labels() {
        let min = ToricLattice::minimal();
        assert_eq!(min.qubit_from_label(1).unwrap(), 0);
        assert!(min.qubit_from_label(0).is_err());
        assert!(min.qubit_from_label(5).is_err());
        let g = ToricLattice::grid(3, 3).unwrap();
        assert_eq!(g.qubit_from_label(0).unwrap(), 0);
        assert!(ToricLattice::grid(1, 3).is_err());
    }
}
