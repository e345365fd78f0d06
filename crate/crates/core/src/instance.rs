//! Groupcast and unicast index-coding instances, their canonical JSON
//! serialization, conversions between the two representations, and the
//! deterministic instance generators used by tests and the CLI.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A groupcast instance: a set of users, a set of packets, one requested
/// packet per user and a side-information packet set per user.
///
/// Users and packets are referred to by index internally; the original string
/// ids are kept for serialization. Instances are immutable once built and all
/// invariants (single request per user, request not in side information,
/// every packet requested at least once) are established by the constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupcastInstance {
    users: Vec<String>,
    packets: Vec<String>,
    request: Vec<usize>,
    side_info: Vec<Vec<usize>>,
    requesters: Vec<Vec<usize>>,
}

/// A unicast instance as a directed side-information graph: vertex `u` has an
/// out-edge to `v` when `u` holds the packet requested by `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicastInstance {
    vertices: Vec<String>,
    out_neighbors: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    packets: Vec<String>,
    users: Vec<UserDoc>,
}

#[derive(Serialize, Deserialize)]
struct UserDoc {
    id: String,
    request: String,
    side_info: Vec<String>,
}

impl GroupcastInstance {
    /// Builds an instance from id-based data.
    ///
    /// `users` holds `(id, requested packet id, side-information packet ids)`.
    /// Packets requested by nobody are dropped with a warning; they cannot
    /// affect any computed parameter.
    pub fn new(packets: Vec<String>, users: Vec<(String, String, Vec<String>)>) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::Parse("instance has no users".into()));
        }
        let mut packet_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, p) in packets.iter().enumerate() {
            if packet_index.insert(p, i).is_some() {
                return Err(Error::Parse(format!("duplicate packet id {p:?}")));
            }
        }
        let mut seen_users: BTreeMap<&str, ()> = BTreeMap::new();
        for (id, _, _) in &users {
            if packet_index.contains_key(id.as_str()) {
                return Err(Error::Parse(format!(
                    "id {id:?} used as both user and packet"
                )));
            }
            if seen_users.insert(id, ()).is_some() {
                return Err(Error::Parse(format!("duplicate user id {id:?}")));
            }
        }

        let mut requested = vec![false; packets.len()];
        for (id, req, side) in &users {
            let &r = packet_index
                .get(req.as_str())
                .ok_or_else(|| Error::Parse(format!("user {id:?} requests unknown packet {req:?}")))?;
            requested[r] = true;
            for p in side {
                if !packet_index.contains_key(p.as_str()) {
                    return Err(Error::Parse(format!(
                        "user {id:?} has unknown packet {p:?} in side_info"
                    )));
                }
                if p == req {
                    return Err(Error::Parse(format!(
                        "user {id:?}: request {req:?} in side_info"
                    )));
                }
            }
        }

        // Drop packets nobody requests, then re-index.
        let kept: Vec<String> = packets
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                if requested[i] {
                    Some(p.clone())
                } else {
                    log::warn!("dropping packet {p:?}: requested by no user");
                    None
                }
            })
            .collect();
        let kept_index: BTreeMap<&str, usize> =
            kept.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();

        let mut request = Vec::with_capacity(users.len());
        let mut side_info = Vec::with_capacity(users.len());
        let mut user_ids = Vec::with_capacity(users.len());
        for (id, req, side) in users {
            request.push(kept_index[req.as_str()]);
            let mut s: Vec<usize> = side
                .iter()
                .filter_map(|p| kept_index.get(p.as_str()).copied())
                .collect();
            s.sort_unstable();
            s.dedup();
            side_info.push(s);
            user_ids.push(id);
        }
        let mut requesters = vec![Vec::new(); kept.len()];
        for (u, &r) in request.iter().enumerate() {
            requesters[r].push(u);
        }
        Ok(Self {
            users: user_ids,
            packets: kept,
            request,
            side_info,
            requesters,
        })
    }

    /// Parses the canonical JSON document format.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
        Self::new(
            doc.packets,
            doc.users
                .into_iter()
                .map(|u| (u.id, u.request, u.side_info))
                .collect(),
        )
    }

    /// Canonical serialization: UTF-8, two-space indent, packets then users,
    /// side-information ids sorted lexicographically.
    pub fn to_canonical_json(&self) -> String {
        let doc = InstanceDoc {
            packets: self.packets.clone(),
            users: (0..self.n())
                .map(|u| {
                    let mut side: Vec<String> = self.side_info[u]
                        .iter()
                        .map(|&p| self.packets[p].clone())
                        .collect();
                    side.sort();
                    UserDoc {
                        id: self.users[u].clone(),
                        request: self.packets[self.request[u]].clone(),
                        side_info: side,
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("instance serialization cannot fail")
    }

    /// Number of users.
    pub fn n(&self) -> usize {
        self.users.len()
    }

    /// Number of packets.
    pub fn m(&self) -> usize {
        self.packets.len()
    }

    pub fn user_ids(&self) -> &[String] {
        &self.users
    }

    pub fn packet_ids(&self) -> &[String] {
        &self.packets
    }

    pub fn user_index(&self, id: &str) -> Option<usize> {
        self.users.iter().position(|u| u == id)
    }

    /// Packet requested by user `u`.
    pub fn request(&self, u: usize) -> usize {
        self.request[u]
    }

    /// Side-information packets of user `u`, sorted by index.
    pub fn side_info(&self, u: usize) -> &[usize] {
        &self.side_info[u]
    }

    pub fn has_side_info(&self, u: usize, p: usize) -> bool {
        self.side_info[u].binary_search(&p).is_ok()
    }

    /// Users requesting packet `p`.
    pub fn requesters(&self, p: usize) -> &[usize] {
        &self.requesters[p]
    }

    /// True when requests are a bijection between users and packets, i.e. the
    /// instance is a unicast problem in disguise.
    pub fn is_unicast(&self) -> bool {
        self.m() == self.n() && self.requesters.iter().all(|w| w.len() == 1)
    }

    /// Side-information graph of the instance: one vertex per user, an edge
    /// `(u, v)` whenever `u` holds the packet `v` requests or both request
    /// the same packet (then edges in both directions).
    pub fn to_unicast(&self) -> UnicastInstance {
        let n = self.n();
        let mut out = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if self.has_side_info(u, self.request[v]) || self.request[u] == self.request[v] {
                    out[u].push(v);
                }
            }
        }
        UnicastInstance {
            vertices: self.users.clone(),
            out_neighbors: out,
        }
    }
}

impl UnicastInstance {
    /// Builds a unicast instance from id-based adjacency data.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Self> {
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != vertices.len() {
            return Err(Error::Parse("duplicate vertex id".into()));
        }
        let mut out = vec![Vec::new(); vertices.len()];
        for (a, b) in &edges {
            let (&i, &j) = match (index.get(a.as_str()), index.get(b.as_str())) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(Error::Parse(format!("unknown vertex in edge ({a:?},{b:?})"))),
            };
            if i == j {
                return Err(Error::Parse(format!("self-loop at {a:?}")));
            }
            out[i].push(j);
        }
        for o in &mut out {
            o.sort_unstable();
            o.dedup();
        }
        Ok(Self {
            vertices,
            out_neighbors: out,
        })
    }

    fn from_out(vertices: Vec<String>, mut out: Vec<Vec<usize>>) -> Self {
        for o in &mut out {
            o.sort_unstable();
            o.dedup();
        }
        Self {
            vertices,
            out_neighbors: out,
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    /// Out-neighborhood of vertex `u`, sorted.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_neighbors[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_neighbors[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.out_neighbors.iter().map(Vec::len).sum()
    }

    /// Directed complement: the out-neighborhood of `u` becomes the set of
    /// vertices that are neither `u` nor an out-neighbor of `u`. Applying the
    /// operation twice returns the original graph.
    pub fn directed_complement(&self) -> UnicastInstance {
        let n = self.n();
        let out = (0..n)
            .map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect())
            .collect();
        UnicastInstance {
            vertices: self.vertices.clone(),
            out_neighbors: out,
        }
    }

    /// Groupcast view of the unicast problem: one packet per vertex, vertex
    /// `u` requests its own packet and holds the packets of its
    /// out-neighbors.
    pub fn to_groupcast(&self) -> GroupcastInstance {
        let packet_id = |v: &str| format!("x:{v}");
        let packets: Vec<String> = self.vertices.iter().map(|v| packet_id(v)).collect();
        let users = self
            .vertices
            .iter()
            .enumerate()
            .map(|(u, id)| {
                let side = self.out_neighbors[u]
                    .iter()
                    .map(|&v| packets[v].clone())
                    .collect();
                (id.clone(), packets[u].clone(), side)
            })
            .collect();
        GroupcastInstance::new(packets, users).expect("unicast conversion is always valid")
    }
}

/// Disjoint union of `k` six-vertex circulant graphs in which every vertex
/// has out-edges to the next two vertices of its component (indices mod 6).
/// Plain fractional covering needs one transmission per vertex here, while
/// per-component schemes get away with four per component, which makes the
/// family a useful benchmark for the partitioned bounds.
pub fn gen_figure2(k: usize) -> Result<UnicastInstance> {
    if k == 0 {
        return Err(Error::InvalidArgument("figure2 requires k >= 1".into()));
    }
    let n = 6 * k;
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let out = (0..n)
        .map(|i| {
            let base = i - i % 6;
            vec![base + (i + 1) % 6, base + (i + 2) % 6]
        })
        .collect();
    Ok(UnicastInstance::from_out(vertices, out))
}

/// Named unicast families used by tests and the CLI generator mini-language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Complete bidirected graph.
    Complete,
    /// No edges.
    Empty,
    /// Directed cycle `1 -> 2 -> ... -> n -> 1`.
    Dicycle,
    /// Bidirected cycle.
    Bidicycle,
}

pub fn gen_family(kind: Family, n: usize) -> Result<UnicastInstance> {
    if n == 0 {
        return Err(Error::InvalidArgument("family size must be >= 1".into()));
    }
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let out = (0..n)
        .map(|u| match kind {
            Family::Complete => (0..n).filter(|&v| v != u).collect(),
            Family::Empty => Vec::new(),
            Family::Dicycle => {
                if n == 1 {
                    Vec::new()
                } else {
                    vec![(u + 1) % n]
                }
            }
            Family::Bidicycle => {
                if n == 1 {
                    Vec::new()
                } else if n == 2 {
                    vec![(u + 1) % 2]
                } else {
                    vec![(u + 1) % n, (u + n - 1) % n]
                }
            }
        })
        .collect();
    Ok(UnicastInstance::from_out(vertices, out))
}

/// Random groupcast instance: each of the `n` users requests one of `m`
/// packets uniformly, and every non-requested packet lands in the user's
/// side information independently with probability `density`. Deterministic
/// for a fixed seed.
pub fn gen_random(n: usize, m: usize, density: f64, seed: u64) -> Result<GroupcastInstance> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= m <= n, got n={n}, m={m}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "density must be in [0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let packets: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
    let users = (1..=n)
        .map(|i| {
            let req = rng.gen_range(0..m);
            let side = (0..m)
                .filter(|&p| p != req && rng.gen_bool(density))
                .map(|p| packets[p].clone())
                .collect();
            (format!("u{i}"), packets[req].clone(), side)
        })
        .collect();
    GroupcastInstance::new(packets, users)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dicycle3() -> UnicastInstance {
        gen_family(Family::Dicycle, 3).unwrap()
    }

    #[test]
    fn parse_minimal_instance() {
        let h =
            GroupcastInstance::parse(r#"{"packets":["p"],"users":[{"id":"u1","request":"p","side_info":[]}]}"#)
                .unwrap();
        assert_eq!(h.n(), 1);
        assert_eq!(h.m(), 1);
        assert_eq!(h.request(0), 0);
    }

    #[test]
    fn parse_rejects_request_in_side_info() {
        let err = GroupcastInstance::parse(
            r#"{"packets":["p1"],"users":[{"id":"u1","request":"p1","side_info":["p1"]}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("in side_info"), "{err}");
    }

    #[test]
    fn parse_rejects_duplicates_and_unknowns() {
        assert!(GroupcastInstance::parse(
            r#"{"packets":["p"],"users":[{"id":"u","request":"p","side_info":[]},{"id":"u","request":"p","side_info":[]}]}"#,
        )
        .is_err());
        assert!(GroupcastInstance::parse(
            r#"{"packets":["p"],"users":[{"id":"u","request":"q","side_info":[]}]}"#,
        )
        .is_err());
        assert!(GroupcastInstance::parse(r#"{"packets":[],"users":[]}"#).is_err());
    }

    #[test]
    fn unrequested_packets_are_dropped() {
        let h = GroupcastInstance::parse(
            r#"{"packets":["a","b"],"users":[{"id":"u","request":"a","side_info":["b"]}]}"#,
        )
        .unwrap();
        assert_eq!(h.m(), 1);
        assert!(h.side_info(0).is_empty());
    }

    #[test]
    fn serialization_round_trips_figure2() {
        let h = gen_figure2(1).unwrap().to_groupcast();
        let parsed = GroupcastInstance::parse(&h.to_canonical_json()).unwrap();
        assert_eq!(parsed, h);
    }

    #[test]
    fn uic_as_gic_unfolds_definition() {
        let g = UnicastInstance::new(
            vec!["a".into(), "b".into()],
            vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap();
        let h = g.to_groupcast();
        assert_eq!(h.n(), 2);
        assert_eq!(h.m(), 2);
        // Each user holds the other's packet.
        assert_eq!(h.side_info(0), &[1]);
        assert_eq!(h.side_info(1), &[0]);

        let empty = gen_family(Family::Empty, 3).unwrap().to_groupcast();
        assert_eq!(empty.n(), 3);
        assert_eq!(empty.m(), 3);
        assert!((0..3).all(|u| empty.side_info(u).is_empty()));

        let c3 = dicycle3().to_groupcast();
        assert_eq!(c3.side_info(0), &[1]);
        assert_eq!(c3.side_info(1), &[2]);
        assert_eq!(c3.side_info(2), &[0]);
    }

    #[test]
    fn gic_to_uic_same_request_gives_bidirected_edge() {
        let h = GroupcastInstance::new(
            vec!["p".into()],
            vec![
                ("u".into(), "p".into(), vec![]),
                ("v".into(), "p".into(), vec![]),
            ],
        )
        .unwrap();
        let g = h.to_unicast();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn gic_to_uic_round_trips_on_unicast() {
        for g in [
            dicycle3(),
            gen_family(Family::Complete, 4).unwrap(),
            gen_figure2(2).unwrap(),
            gen_family(Family::Bidicycle, 5).unwrap(),
        ] {
            assert_eq!(g.to_groupcast().to_unicast(), g);
        }
    }

    #[test]
    fn gic_to_uic_side_info_edge_only() {
        let h = GroupcastInstance::new(
            vec!["p".into(), "q".into()],
            vec![
                ("u".into(), "q".into(), vec!["p".into()]),
                ("v".into(), "p".into(), vec![]),
            ],
        )
        .unwrap();
        let g = h.to_unicast();
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(1, 0));
    }

    #[test]
    fn directed_complement_examples() {
        let k3 = gen_family(Family::Complete, 3).unwrap();
        let empty3 = gen_family(Family::Empty, 3).unwrap();
        assert_eq!(k3.directed_complement().edge_count(), 0);
        assert_eq!(empty3.directed_complement().edge_count(), 6);

        let c3 = dicycle3();
        let rev = c3.directed_complement();
        assert!(rev.has_edge(0, 2) && rev.has_edge(2, 1) && rev.has_edge(1, 0));
        assert_eq!(rev.edge_count(), 3);

        for g in [k3, empty3, c3, gen_figure2(1).unwrap()] {
            assert_eq!(g.directed_complement().directed_complement(), g);
        }
    }

    #[test]
    fn figure2_shape() {
        let g = gen_figure2(1).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 12);
        assert!((0..6).all(|u| g.out_neighbors(u).len() == 2));
        assert_eq!(g.out_neighbors(5), &[0, 1]);

        let g2 = gen_figure2(2).unwrap();
        assert_eq!(g2.n(), 12);
        // Components are disjoint: no edges across the 6-vertex blocks.
        assert!((0..6).all(|u| g2.out_neighbors(u).iter().all(|&v| v < 6)));
        assert!((6..12).all(|u| g2.out_neighbors(u).iter().all(|&v| v >= 6)));
        // In-degree is also 2 by circulant symmetry.
        let mut indeg = vec![0; 12];
        for u in 0..12 {
            for &v in g2.out_neighbors(u) {
                indeg[v] += 1;
            }
        }
        assert!(indeg.iter().all(|&d| d == 2));
    }

    #[test]
    fn family_generators() {
        let c4 = gen_family(Family::Dicycle, 4).unwrap();
        assert!(c4.has_edge(0, 1) && c4.has_edge(1, 2) && c4.has_edge(2, 3) && c4.has_edge(3, 0));
        assert_eq!(c4.edge_count(), 4);

        let k3 = gen_family(Family::Complete, 3).unwrap();
        assert!((0..3).all(|u| (0..3).all(|v| u == v || k3.has_edge(u, v))));
    }

    #[test]
    fn gen_random_is_deterministic() {
        let a = gen_random(5, 3, 0.5, 42).unwrap();
        let b = gen_random(5, 3, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!(gen_random(5, 3, 1.5, 42).is_err());
        assert!(gen_random(3, 5, 0.5, 42).is_err());
    }
}
