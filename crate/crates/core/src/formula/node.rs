//! Hash-consed formula nodes.
//!
//! Every node lives in a global, sharded intern table. Constructing a node
//! whose kind and children already exist returns the existing node, so
//! structural equality coincides with pointer equality.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock, Weak};

use super::atom::Atom;

/// Shape of a node over the primitive basis.
#[derive(Debug)]
pub enum Kind {
    Top,
    Atom(Atom),
    Not(Formula),
    And(Formula, Formula),
    Box(Formula),
}

#[derive(Debug)]
pub(crate) struct Node {
    id: u64,
    has_box: bool,
    kind: Kind,
}

/// Handle to a hash-consed formula node. Cloning is cheap; equality and
/// hashing are by node identity.
#[derive(Clone, Debug)]
pub struct Formula(Arc<Node>);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Top,
    Atom(Atom),
    Not(u64),
    And(u64, u64),
    Box(u64),
}

struct Shard {
    map: HashMap<Key, Weak<Node>>,
    sweep_at: usize,
}

const SHARDS: usize = 64;

fn table() -> &'static [Mutex<Shard>] {
    static TABLE: OnceLock<Vec<Mutex<Shard>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..SHARDS)
            .map(|_| {
                Mutex::new(Shard {
                    map: HashMap::new(),
                    sweep_at: 1 << 12,
                })
            })
            .collect()
    })
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

fn intern(key: Key, make: impl FnOnce() -> Kind) -> Formula {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    let shard = &table()[(h.finish() as usize) % SHARDS];
    let mut shard = shard.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(node) = shard.map.get(&key).and_then(Weak::upgrade) {
        return Formula(node);
    }
    let kind = make();
    let has_box = match &kind {
        Kind::Top | Kind::Atom(_) => false,
        Kind::Not(a) => a.0.has_box,
        Kind::And(a, b) => a.0.has_box || b.0.has_box,
        Kind::Box(_) => true,
    };
    let node = Arc::new(Node {
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        has_box,
        kind,
    });
    shard.map.insert(key, Arc::downgrade(&node));
    if shard.map.len() >= shard.sweep_at {
        shard.map.retain(|_, w| w.strong_count() > 0);
        shard.sweep_at = (shard.map.len() * 2).max(1 << 12);
    }
    Formula(node)
}

impl Drop for Node {
    // Dropping a long chain of uniquely owned nodes recursively could
    // exhaust the stack, so children are released iteratively.
    fn drop(&mut self) {
        let mut stack = Vec::new();
        take_children(&mut self.kind, &mut stack);
        while let Some(f) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(f.0) {
                take_children(&mut node.kind, &mut stack);
            }
        }
    }
}

fn take_children(kind: &mut Kind, stack: &mut Vec<Formula>) {
    match std::mem::replace(kind, Kind::Top) {
        Kind::Top | Kind::Atom(_) => {}
        Kind::Not(a) | Kind::Box(a) => stack.push(a),
        Kind::And(a, b) => {
            stack.push(a);
            stack.push(b);
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl Formula {
    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Process-unique node id. Stable for the lifetime of the node, but not
    /// across runs; never use it to order output.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// True iff no `Box` occurs in the formula.
    pub fn is_propositional(&self) -> bool {
        !self.0.has_box
    }

    pub fn top() -> Formula {
        intern(Key::Top, || Kind::Top)
    }

    pub fn bot() -> Formula {
        Formula::top().not()
    }

    pub fn atom(a: Atom) -> Formula {
        intern(Key::Atom(a.clone()), || Kind::Atom(a))
    }

    /// Plain atom by name. Panics on an invalid name.
    pub fn var(name: &str) -> Formula {
        Formula::atom(Atom::base(name))
    }

    pub fn not(&self) -> Formula {
        if let Kind::Not(inner) = self.kind() {
            return inner.clone();
        }
        intern(Key::Not(self.id()), || Kind::Not(self.clone()))
    }

    pub fn and(&self, other: &Formula) -> Formula {
        if self.is_top() {
            return other.clone();
        }
        if other.is_top() {
            return self.clone();
        }
        intern(Key::And(self.id(), other.id()), || {
            Kind::And(self.clone(), other.clone())
        })
    }

    pub fn boxed(&self) -> Formula {
        intern(Key::Box(self.id()), || Kind::Box(self.clone()))
    }

    pub fn or(&self, other: &Formula) -> Formula {
        self.not().and(&other.not()).not()
    }

    pub fn implies(&self, other: &Formula) -> Formula {
        self.and(&other.not()).not()
    }

    pub fn iff(&self, other: &Formula) -> Formula {
        self.implies(other).and(&other.implies(self))
    }

    pub fn diamond(&self) -> Formula {
        self.not().boxed().not()
    }

    /// `n`-fold box.
    pub fn box_n(&self, n: usize) -> Formula {
        (0..n).fold(self.clone(), |f, _| f.boxed())
    }

    /// `n`-fold diamond.
    pub fn diamond_n(&self, n: usize) -> Formula {
        (0..n).fold(self.clone(), |f, _| f.diamond())
    }

    /// `φ ∧ □φ ∧ … ∧ □ⁿφ`.
    pub fn box_upto(&self, n: usize) -> Formula {
        let mut items = Vec::with_capacity(n + 1);
        let mut cur = self.clone();
        items.push(cur.clone());
        for _ in 0..n {
            cur = cur.boxed();
            items.push(cur.clone());
        }
        Formula::conj(items)
    }

    /// `¬□^{≤n}¬φ`.
    pub fn diamond_upto(&self, n: usize) -> Formula {
        self.not().box_upto(n).not()
    }

    /// Balanced conjunction; the empty conjunction is `⊤`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let items: Vec<Formula> = items.into_iter().collect();
        balanced(&items, &|a, b| a.and(b), Formula::top)
    }

    /// Balanced disjunction; the empty disjunction is `⊥`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        let items: Vec<Formula> = items.into_iter().collect();
        balanced(&items, &|a, b| a.or(b), Formula::bot)
    }

    pub fn is_top(&self) -> bool {
        matches!(self.kind(), Kind::Top)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.kind(), Kind::Not(a) if a.is_top())
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self.kind() {
            Kind::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Children in left-to-right order.
    pub fn children(&self) -> Vec<&Formula> {
        match self.kind() {
            Kind::Top | Kind::Atom(_) => vec![],
            Kind::Not(a) | Kind::Box(a) => vec![a],
            Kind::And(a, b) => vec![a, b],
        }
    }
}

fn balanced(
    items: &[Formula],
    join: &dyn Fn(&Formula, &Formula) -> Formula,
    empty: fn() -> Formula,
) -> Formula {
    match items.len() {
        0 => empty(),
        1 => items[0].clone(),
        n => {
            let mid = n.div_ceil(2);
            let l = balanced(&items[..mid], join, empty);
            let r = balanced(&items[mid..], join, empty);
            join(&l, &r)
        }
    }
}
