//! Weak-hyperclique enumeration and interference neighborhoods.
//!
//! A set of users is a weak hyperclique when every pair either mutually holds
//! each other's requested packet or requests the same packet. The condition
//! is purely pairwise, so hypercliques are exactly the cliques of an
//! auxiliary undirected "compatibility graph" on the users, and maximal ones
//! can be enumerated with pivoted Bron–Kerbosch on that graph.

use crate::{Error, GroupcastInstance, Result};

/// Default cap on the number of users for clique enumeration.
pub const ENUMERATION_CAP: usize = 24;

/// A user set satisfying the pairwise weak-hyperclique condition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperclique {
    /// Member user indices, sorted.
    pub members: Vec<usize>,
}

/// Bitmask over user indices; enumeration caps keep these within 64 bits.
pub(crate) type UserMask = u64;

pub(crate) fn mask_from_members(members: &[usize]) -> UserMask {
    members.iter().fold(0, |m, &u| m | (1 << u))
}

pub(crate) fn members_from_mask(mut mask: UserMask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let u = mask.trailing_zeros() as usize;
        out.push(u);
        mask &= mask - 1;
    }
    out
}

/// Pairwise compatibility: `u` and `v` can share a hyperclique.
pub fn compatible(h: &GroupcastInstance, u: usize, v: usize) -> bool {
    h.request(u) == h.request(v)
        || (h.has_side_info(u, h.request(v)) && h.has_side_info(v, h.request(u)))
}

/// Adjacency masks of the compatibility graph (self excluded).
pub(crate) fn compatibility_masks(h: &GroupcastInstance) -> Vec<UserMask> {
    let n = h.n();
    let mut adj = vec![0 as UserMask; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if compatible(h, u, v) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    adj
}

/// Whether `users` forms a weak hyperclique. The empty set and singletons
/// qualify trivially.
pub fn is_hyperclique(h: &GroupcastInstance, users: &[usize]) -> Result<bool> {
    for &u in users {
        if u >= h.n() {
            return Err(Error::InvalidArgument(format!("unknown user index {u}")));
        }
    }
    for (i, &u) in users.iter().enumerate() {
        for &v in &users[i + 1..] {
            if u != v && !compatible(h, u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_cap(h: &GroupcastInstance, cap: usize) -> Result<()> {
    let cap = cap.min(64);
    if h.n() > cap {
        return Err(Error::CapExceeded(format!(
            "clique enumeration needs n <= {cap}, instance has n = {}",
            h.n()
        )));
    }
    Ok(())
}

/// All maximal hypercliques, in deterministic (lexicographic) order.
pub fn enumerate_maximal_hypercliques(h: &GroupcastInstance) -> Result<Vec<Hyperclique>> {
    enumerate_maximal_hypercliques_capped(h, ENUMERATION_CAP)
}

/// As [`enumerate_maximal_hypercliques`] with an explicit user-count cap.
pub fn enumerate_maximal_hypercliques_capped(
    h: &GroupcastInstance,
    cap: usize,
) -> Result<Vec<Hyperclique>> {
    check_cap(h, cap)?;
    let adj = compatibility_masks(h);
    let mut masks = Vec::new();
    let all = if h.n() == 64 {
        !0
    } else {
        (1u64 << h.n()) - 1
    };
    bron_kerbosch(&adj, 0, all, 0, &mut masks);
    let mut cliques: Vec<Hyperclique> = masks
        .into_iter()
        .map(|m| Hyperclique {
            members: members_from_mask(m),
        })
        .collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(adj: &[UserMask], r: UserMask, mut p: UserMask, mut x: UserMask, out: &mut Vec<UserMask>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot on the candidate with the most neighbors in P; ties go to the
    // lowest index so the recursion order is reproducible.
    let mut pivot = usize::MAX;
    let mut best = -1i32;
    let mut px = p | x;
    while px != 0 {
        let v = px.trailing_zeros() as usize;
        px &= px - 1;
        let score = (p & adj[v]).count_ones() as i32;
        if score > best {
            best = score;
            pivot = v;
        }
    }
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        cand &= cand - 1;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Every nonempty hyperclique (the full downward closure), in deterministic
/// order. Exponential in the clique sizes; intended for oracles and
/// cross-checks on small instances.
pub fn all_hypercliques(h: &GroupcastInstance, cap: usize) -> Result<Vec<Hyperclique>> {
    check_cap(h, cap)?;
    let adj = compatibility_masks(h);
    let mut masks = Vec::new();
    fn extend(adj: &[UserMask], clique: UserMask, cand: UserMask, out: &mut Vec<UserMask>) {
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let bit = 1u64 << v;
            rest &= rest - 1;
            out.push(clique | bit);
            extend(adj, clique | bit, rest & adj[v], out);
        }
    }
    extend(&adj, 0, if h.n() == 64 { !0 } else { (1u64 << h.n()) - 1 }, &mut masks);
    let mut cliques: Vec<Hyperclique> = masks
        .into_iter()
        .map(|m| Hyperclique {
            members: members_from_mask(m),
        })
        .collect();
    cliques.sort();
    Ok(cliques)
}

/// The interference neighborhood of `u`: users whose request is `u`'s own
/// packet or a packet `u` does not hold. Always contains `u` itself.
pub fn interference_users(h: &GroupcastInstance, u: usize) -> Result<Vec<usize>> {
    if u >= h.n() {
        return Err(Error::InvalidArgument(format!("unknown user index {u}")));
    }
    Ok((0..h.n())
        .filter(|&v| {
            let rv = h.request(v);
            rv == h.request(u) || !h.has_side_info(u, rv)
        })
        .collect())
}

pub(crate) fn interference_mask(h: &GroupcastInstance, u: usize) -> UserMask {
    interference_users(h, u)
        .expect("index in range")
        .iter()
        .fold(0, |m, &v| m | (1 << v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_family, gen_figure2, Family};

    #[test]
    fn singletons_and_empty_are_hypercliques() {
        let h = gen_figure2(1).unwrap().to_groupcast();
        assert!(is_hyperclique(&h, &[]).unwrap());
        for u in 0..6 {
            assert!(is_hyperclique(&h, &[u]).unwrap());
        }
        assert!(is_hyperclique(&h, &[0, 99]).is_err());
    }

    #[test]
    fn same_request_pair_is_hyperclique() {
        let h = GroupcastInstance::new(
            vec!["p".into()],
            vec![
                ("a".into(), "p".into(), vec![]),
                ("b".into(), "p".into(), vec![]),
            ],
        )
        .unwrap();
        assert!(is_hyperclique(&h, &[0, 1]).unwrap());
    }

    #[test]
    fn figure2_has_no_nontrivial_cliques() {
        let h = gen_figure2(1).unwrap().to_groupcast();
        for u in 0..6 {
            for v in (u + 1)..6 {
                assert!(!is_hyperclique(&h, &[u, v]).unwrap());
            }
        }
        let maximal = enumerate_maximal_hypercliques(&h).unwrap();
        assert_eq!(maximal.len(), 6);
        assert!(maximal.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn complete_graph_is_one_clique() {
        let h = gen_family(Family::Complete, 4).unwrap().to_groupcast();
        let maximal = enumerate_maximal_hypercliques(&h).unwrap();
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].members, vec![0, 1, 2, 3]);
    }

    #[test]
    fn bidicycle5_maximal_cliques_are_the_edges() {
        let h = gen_family(Family::Bidicycle, 5).unwrap().to_groupcast();
        let maximal = enumerate_maximal_hypercliques(&h).unwrap();
        // Independent oracle: test all 32 subsets directly.
        let mut expected = Vec::new();
        for mask in 1u32..32 {
            let members: Vec<usize> = (0..5).filter(|&u| mask & (1 << u) != 0).collect();
            if !is_hyperclique(&h, &members).unwrap() {
                continue;
            }
            let maximal_set = (0..5).all(|v| {
                members.contains(&v) || {
                    let mut ext = members.clone();
                    ext.push(v);
                    !is_hyperclique(&h, &ext).unwrap()
                }
            });
            if maximal_set {
                expected.push(Hyperclique { members });
            }
        }
        expected.sort();
        assert_eq!(maximal, expected);
        assert_eq!(maximal.len(), 5);
        assert!(maximal.iter().all(|c| c.members.len() == 2));
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let h = gen_figure2(5).unwrap().to_groupcast(); // n = 30
        assert!(matches!(
            enumerate_maximal_hypercliques(&h),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn interference_neighborhoods() {
        let kn = gen_family(Family::Complete, 5).unwrap().to_groupcast();
        for u in 0..5 {
            assert_eq!(interference_users(&kn, u).unwrap(), vec![u]);
        }
        let empty = gen_family(Family::Empty, 4).unwrap().to_groupcast();
        for u in 0..4 {
            assert_eq!(interference_users(&empty, u).unwrap(), vec![0, 1, 2, 3]);
        }
        let f2 = gen_figure2(1).unwrap().to_groupcast();
        assert_eq!(interference_users(&f2, 0).unwrap(), vec![0, 3, 4, 5]);
        assert!((0..6).all(|u| interference_users(&f2, u).unwrap().len() == 4));
    }

    #[test]
    fn all_hypercliques_closure() {
        let h = gen_family(Family::Complete, 3).unwrap().to_groupcast();
        let all = all_hypercliques(&h, ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 7); // every nonempty subset
        let f2 = gen_figure2(1).unwrap().to_groupcast();
        assert_eq!(all_hypercliques(&f2, ENUMERATION_CAP).unwrap().len(), 6);
    }
}
