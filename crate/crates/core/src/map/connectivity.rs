use std::collections::VecDeque;

use crate::map::{LevelMap, RoomKind};

/// Room adjacency lists, where two rooms are adjacent when they share at
/// least one cell of wall.
pub fn adjacency(map: &LevelMap) -> Vec<Vec<usize>> {
    let rooms = map.rooms();
    let mut adj = vec![Vec::new(); rooms.len()];
    for i in 0..rooms.len() {
        for j in i + 1..rooms.len() {
            if rooms[i].rect.shared_wall(&rooms[j].rect) > 0 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

fn reach_from(map: &LevelMap, sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let adj = adjacency(map);
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(r) = queue.pop_front() {
        for &n in &adj[r] {
            if !seen[n] {
                seen[n] = true;
                queue.push_back(n);
            }
        }
    }
    seen
}

/// True when the wall-sharing graph over all rooms is a single component.
pub fn is_connected(map: &LevelMap) -> bool {
    map.rooms().is_empty() || reach_from(map, [0]).into_iter().all(|s| s)
}

/// True when every room can be reached from some start room.
pub fn all_reach_start(map: &LevelMap) -> bool {
    let starts = map.rooms().iter().filter(|r| r.kind == RoomKind::Start).map(|r| r.id);
    reach_from(map, starts).into_iter().all(|s| s)
}
