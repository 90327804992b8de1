use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::SystemTime;

use lightsout_core::lightsout::{BoardState, Graph};

pub const DEFAULT_CAPACITY: usize = 1024;

/// One player's board. `state.len()` always equals the graph's vertex count.
#[derive(Debug)]
pub struct Session {
    pub graph: Graph,
    /// `(rows, cols)` when the board came from a grid spec.
    pub grid: Option<(usize, usize)>,
    pub state: BoardState,
    pub created_at: SystemTime,
}

struct Entry {
    session: Arc<Mutex<Session>>,
    last_used: u64,
}

struct Inner {
    entries: HashMap<String, Entry>,
    next_id: u64,
    clock: u64,
}

/// In-memory sessions with least-recently-used eviction.
///
/// Ids are `s1`, `s2`, ... in creation order, so a fresh store answers the
/// same request sequence identically.
pub struct SessionStore {
    capacity: usize,
    inner: Mutex<Inner>,
}

impl SessionStore {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "capacity must be positive");
        Self {
            capacity,
            inner: Mutex::new(Inner {
                entries: HashMap::new(),
                next_id: 1,
                clock: 0,
            }),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, session: Session) -> (String, Arc<Mutex<Session>>) {
        let mut inner = self.inner.lock().unwrap();
        if inner.entries.len() >= self.capacity {
            let oldest = inner
                .entries
                .iter()
                .min_by_key(|(_, e)| e.last_used)
                .map(|(id, _)| id.clone())
                .expect("non-empty at capacity");
            inner.entries.remove(&oldest);
        }
        let id = format!("s{}", inner.next_id);
        inner.next_id += 1;
        inner.clock += 1;
        let session = Arc::new(Mutex::new(session));
        let last_used = inner.clock;
        inner.entries.insert(
            id.clone(),
            Entry {
                session: session.clone(),
                last_used,
            },
        );
        (id, session)
    }

    /// Looks a session up and marks it as recently used.
    pub fn get(&self, id: &str) -> Option<Arc<Mutex<Session>>> {
        let mut inner = self.inner.lock().unwrap();
        inner.clock += 1;
        let now = inner.clock;
        let entry = inner.entries.get_mut(id)?;
        entry.last_used = now;
        Some(entry.session.clone())
    }
}

impl Default for SessionStore {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY)
    }
}
