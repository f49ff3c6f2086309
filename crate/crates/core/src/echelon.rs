//! Incremental sparse reduced row echelon form over ℚ, with a tracked payload
//! per row (a formal combination carried through every row operation).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::numbers::Rational;

/// Formal ℚ-combination of labels.
pub type Payload<K> = BTreeMap<K, Rational>;

pub type SparseRow = BTreeMap<usize, Rational>;

pub(crate) fn axpy<K: Ord + Clone>(
    target: &mut BTreeMap<K, Rational>,
    src: &BTreeMap<K, Rational>,
    c: &Rational,
) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let x = v * c;
        match target.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(x);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

fn scale_in_place<K: Ord>(m: &mut BTreeMap<K, Rational>, c: &Rational) {
    for v in m.values_mut() {
        *v *= c;
    }
}

#[derive(Clone, Debug)]
pub struct PivotRow<K> {
    /// Entries with the pivot entry equal to 1; every other entry sits in a
    /// non-pivot column.
    pub entries: SparseRow,
    pub payload: Payload<K>,
}

/// Row echelon form whose pivot of a row is its smallest column, so columns
/// with small indices are eliminated first. In eager mode rows are kept fully
/// reduced after every insertion; in lazy mode only forward elimination runs
/// until [`Echelon::finish`].
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    ncols: usize,
    eager: bool,
    pivots: BTreeMap<usize, PivotRow<K>>,
    kernel: Vec<Payload<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            eager: true,
            pivots: BTreeMap::new(),
            kernel: Vec::new(),
        }
    }

    pub fn lazy(ncols: usize) -> Self {
        Echelon {
            eager: false,
            ..Echelon::new(ncols)
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ncols
    }

    /// Fully reduced rows; call [`Echelon::finish`] first in lazy mode.
    pub fn pivots(&self) -> &BTreeMap<usize, PivotRow<K>> {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Payloads of rows that reduced to zero: each is a linear dependency
    /// among the inserted rows.
    pub fn kernel(&self) -> &[Payload<K>] {
        &self.kernel
    }

    /// Subtract pivot rows until no pivot column is left in `row`; returns the
    /// accumulated multiples, i.e. `original = reduced + sum c_p * pivot_p`.
    pub fn reduce(&self, row: &mut SparseRow, payload: &mut Payload<K>) {
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, c)) = hit else { break };
            let p = &self.pivots[&col];
            let neg = -c;
            axpy(row, &p.entries, &neg);
            axpy(payload, &p.payload, &neg);
            cursor = col + 1;
        }
    }

    /// Insert a row; returns `true` when it raised the rank.
    pub fn insert(&mut self, mut row: SparseRow, mut payload: Payload<K>) -> bool {
        row.retain(|_, v| !v.is_zero());
        self.reduce(&mut row, &mut payload);
        let Some((&col, lead)) = row.iter().next() else {
            if !payload.is_empty() {
                self.kernel.push(payload);
            }
            return false;
        };
        let inv = Rational::one() / lead;
        scale_in_place(&mut row, &inv);
        scale_in_place(&mut payload, &inv);
        if self.eager {
            for other in self.pivots.values_mut() {
                if let Some(c) = other.entries.get(&col).cloned() {
                    let neg = -c;
                    axpy(&mut other.entries, &row, &neg);
                    axpy(&mut other.payload, &payload, &neg);
                }
            }
        }
        self.pivots.insert(
            col,
            PivotRow {
                entries: row,
                payload,
            },
        );
        true
    }

    /// Back substitution: afterwards every row is zero on all other pivot columns.
    pub fn finish(&mut self) {
        if self.eager {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for p in cols {
            let mut row = self.pivots.remove(&p).expect("pivot present");
            let hits: Vec<(usize, Rational)> = row
                .entries
                .iter()
                .filter(|(c, _)| **c != p && self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (q, c) in hits {
                let other = &self.pivots[&q];
                let neg = -c;
                axpy(&mut row.entries, &other.entries, &neg);
                axpy(&mut row.payload, &other.payload, &neg);
            }
            self.pivots.insert(p, row);
        }
        self.eager = true;
    }
}
