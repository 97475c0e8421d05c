//! Monomial bases of the graded pieces `S_(a,b)`.
//!
//! Order: x-part first, then y-part, each block in lexicographic order with
//! `x_0 > x_1 > ...`. The index of `x^u y^v` in `S_(a,b)` is
//! `rank_x(u) * dim S_(0,b) + rank_y(v)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Bidegree, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub xexp: Vec<u32>,
    pub yexp: Vec<u32>,
}

impl Monomial {
    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(
            self.xexp.iter().map(|&e| e as i64).sum(),
            self.yexp.iter().map(|&e| e as i64).sum(),
        )
    }

    /// Sort key realizing the basis order (smaller key comes first).
    pub(crate) fn order_key(&self) -> (Vec<std::cmp::Reverse<u32>>, Vec<std::cmp::Reverse<u32>>) {
        (
            self.xexp.iter().map(|&e| std::cmp::Reverse(e)).collect(),
            self.yexp.iter().map(|&e| std::cmp::Reverse(e)).collect(),
        )
    }
}

/// Exponent vectors of a fixed length and total degree, in lex order.
#[derive(Debug)]
pub struct Block {
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Block {
    fn new(nvars: usize, degree: u32) -> Self {
        let mut exps = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                fill(pos + 1, left - e, cur, out);
            }
        }
        if nvars > 0 {
            fill(0, degree, &mut cur, &mut exps);
        }
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Block { exps, index }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn index_of(&self, e: &[u32]) -> usize {
        self.index[e]
    }
}

/// Lazily built, shared blocks for one shape. Safe to share across threads.
#[derive(Debug)]
pub struct MonomialSpace {
    shape: Shape,
    x_blocks: RwLock<HashMap<u32, Arc<Block>>>,
    y_blocks: RwLock<HashMap<u32, Arc<Block>>>,
}

/// The basis of one graded piece, as a product of two blocks.
#[derive(Debug, Clone)]
pub struct Piece {
    pub mu: Bidegree,
    pub x: Arc<Block>,
    pub y: Arc<Block>,
}

impl Piece {
    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, xi: usize, yi: usize) -> usize {
        xi * self.y.len() + yi
    }

    pub fn index_of(&self, xexp: &[u32], yexp: &[u32]) -> usize {
        self.index(self.x.index_of(xexp), self.y.index_of(yexp))
    }

    pub fn monomial(&self, idx: usize) -> Monomial {
        Monomial {
            xexp: self.x.exps()[idx / self.y.len()].clone(),
            yexp: self.y.exps()[idx % self.y.len()].clone(),
        }
    }
}

impl MonomialSpace {
    pub fn new(shape: Shape) -> Self {
        MonomialSpace {
            shape,
            x_blocks: RwLock::new(HashMap::new()),
            y_blocks: RwLock::new(HashMap::new()),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    fn block(cache: &RwLock<HashMap<u32, Arc<Block>>>, nvars: usize, degree: u32) -> Arc<Block> {
        if let Some(b) = cache.read().expect("block cache poisoned").get(&degree) {
            return Arc::clone(b);
        }
        let built = Arc::new(Block::new(nvars, degree));
        let mut w = cache.write().expect("block cache poisoned");
        Arc::clone(w.entry(degree).or_insert(built))
    }

    pub fn x_block(&self, degree: u32) -> Arc<Block> {
        Self::block(&self.x_blocks, self.shape.n() as usize + 1, degree)
    }

    pub fn y_block(&self, degree: u32) -> Arc<Block> {
        Self::block(&self.y_blocks, self.shape.m() as usize + 1, degree)
    }

    /// Basis of `S_mu`; `None` when a coordinate is negative (the piece is zero).
    pub fn piece(&self, mu: Bidegree) -> Option<Piece> {
        if !mu.is_nonnegative() {
            return None;
        }
        Some(Piece {
            mu,
            x: self.x_block(mu.a as u32),
            y: self.y_block(mu.b as u32),
        })
    }

    pub fn dim(&self, mu: Bidegree) -> usize {
        self.piece(mu).map_or(0, |p| p.len())
    }
}

/// All monomials of bidegree `mu` in basis order.
pub fn monomial_basis(shape: Shape, mu: Bidegree) -> Vec<Monomial> {
    let space = MonomialSpace::new(shape);
    match space.piece(mu) {
        None => Vec::new(),
        Some(p) => (0..p.len()).map(|i| p.monomial(i)).collect(),
    }
}
