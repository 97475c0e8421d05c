//! Graded pieces of `I = (f_1, ..., f_r)` and of its Koszul complex.

use super::instance::Instance;
use super::monomial::{MonomialSpace, Piece};
use crate::combinatorics::Bidegree;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField};

struct PreparedForm {
    degree: Bidegree,
    terms: Vec<(Vec<u32>, Vec<u32>, u64)>,
}

/// A subset `T`, the piece `S_{mu - d_T}` and its offset in `(K_i)_mu`.
type KoszulBlock = (Vec<usize>, Option<Piece>, usize);

/// Per-instance state shared by every graded computation: the generators in
/// split form and a shared cache of monomial blocks.
pub struct Oracle<'a> {
    inst: &'a Instance,
    space: MonomialSpace,
    forms: Vec<PreparedForm>,
}

impl<'a> Oracle<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let forms = inst
            .forms()
            .iter()
            .map(|f| PreparedForm {
                degree: f.bidegree(),
                terms: f
                    .terms()
                    .iter()
                    .map(|(m, c)| (m.xexp.clone(), m.yexp.clone(), *c))
                    .collect(),
            })
            .collect();
        Oracle {
            inst,
            space: MonomialSpace::new(inst.shape()),
            forms,
        }
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    pub fn field(&self) -> PrimeField {
        self.inst.field()
    }

    pub fn space(&self) -> &MonomialSpace {
        &self.space
    }

    pub fn r(&self) -> usize {
        self.forms.len()
    }

    pub fn dim(&self, mu: Bidegree) -> usize {
        self.space.dim(mu)
    }

    /// Adds `sign * g * f_j` into `row`, where `g` is monomial `gi` of `src`
    /// and `row` is indexed by the basis of `dst`.
    fn add_product(&self, j: usize, src: &Piece, gi: usize, dst: &Piece, negate: bool, row: &mut [u64]) {
        let field = self.field();
        let g = src.monomial(gi);
        let mut xe = vec![0u32; g.xexp.len()];
        let mut ye = vec![0u32; g.yexp.len()];
        for (tx, ty, c) in &self.forms[j].terms {
            for (k, e) in xe.iter_mut().enumerate() {
                *e = g.xexp[k] + tx[k];
            }
            for (k, e) in ye.iter_mut().enumerate() {
                *e = g.yexp[k] + ty[k];
            }
            let col = dst.index_of(&xe, &ye);
            row[col] = if negate {
                field.sub(row[col], *c)
            } else {
                field.add(row[col], *c)
            };
        }
    }

    /// Unreduced generating rows of `I_mu`: one row per `(j, g)`.
    pub fn ideal_generators(&self, mu: Bidegree) -> FpMatrix {
        let field = self.field();
        let Some(dst) = self.space.piece(mu) else {
            return FpMatrix::zeros(field, 0, 0);
        };
        let mut out = FpMatrix::zeros(field, 0, dst.len());
        let mut row = vec![0u64; dst.len()];
        for j in 0..self.r() {
            let Some(src) = self.space.piece(mu - self.forms[j].degree) else {
                continue;
            };
            for gi in 0..src.len() {
                row.iter_mut().for_each(|v| *v = 0);
                self.add_product(j, &src, gi, &dst, false, &mut row);
                out.push_row(&row);
            }
        }
        out
    }

    /// `I_mu` in RREF.
    pub fn ideal_piece(&self, mu: Bidegree) -> FpMatrix {
        let mut m = self.ideal_generators(mu);
        m.rref_in_place();
        m
    }

    pub fn hf_si(&self, mu: Bidegree) -> u64 {
        let mut m = self.ideal_generators(mu);
        let rank = m.echelon_in_place().len();
        (self.dim(mu) - rank) as u64
    }

    fn subsets(&self, size: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, r: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for j in start..=(r - left) {
                cur.push(j);
                rec(j + 1, r, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if size <= self.r() {
            rec(0, self.r(), size, &mut Vec::new(), &mut out);
        }
        out
    }

    fn subset_degree(&self, t: &[usize]) -> Bidegree {
        t.iter().fold(Bidegree::ZERO, |acc, &j| acc + self.forms[j].degree)
    }

    /// Basis of `(K_i)_mu`: subsets in lex order, each with its piece `S_{mu - d_T}`
    /// and its column offset, plus the total dimension.
    fn koszul_blocks(&self, i: usize, mu: Bidegree) -> (Vec<KoszulBlock>, usize) {
        let mut offset = 0;
        let mut blocks = Vec::new();
        for t in self.subsets(i) {
            let piece = self.space.piece(mu - self.subset_degree(&t));
            let len = piece.as_ref().map_or(0, |p| p.len());
            blocks.push((t, piece, offset));
            offset += len;
        }
        (blocks, offset)
    }

    pub fn koszul_dim(&self, i: usize, mu: Bidegree) -> usize {
        self.koszul_blocks(i, mu).1
    }

    /// `d_i : (K_i)_mu -> (K_{i-1})_mu`, one row per basis element of the source,
    /// `e_T g -> sum_k (-1)^k f_{t_k} g e_{T \ t_k}`.
    pub fn koszul_differential(&self, i: usize, mu: Bidegree) -> FpMatrix {
        let field = self.field();
        let (src_blocks, _) = self.koszul_blocks(i, mu);
        let (dst_blocks, dst_dim) = self.koszul_blocks(i - 1, mu);
        let mut out = FpMatrix::zeros(field, 0, dst_dim);
        let mut row = vec![0u64; dst_dim];
        for (t, piece, _) in &src_blocks {
            let Some(src) = piece else { continue };
            for gi in 0..src.len() {
                row.iter_mut().for_each(|v| *v = 0);
                for (k, &j) in t.iter().enumerate() {
                    let rest: Vec<usize> = t.iter().copied().filter(|&x| x != j).collect();
                    let (_, dst, off) = dst_blocks
                        .iter()
                        .find(|(s, _, _)| *s == rest)
                        .expect("face of a subset is a subset");
                    let dst = dst.as_ref().expect("target piece contains the product");
                    self.add_product(j, src, gi, dst, k % 2 == 1, &mut row[*off..*off + dst.len()]);
                }
                out.push_row(&row);
            }
        }
        out
    }

    pub fn koszul_homology_dim(&self, i: i64, mu: Bidegree) -> Result<u64> {
        let r = self.r();
        if i < 0 || i as usize > r {
            return Err(Error::IndexOutOfRange { index: i, max: r });
        }
        let i = i as usize;
        let dim = self.koszul_dim(i, mu);
        if dim == 0 {
            return Ok(0);
        }
        let rank_out = if i == 0 { 0 } else { self.koszul_differential(i, mu).rank() };
        let rank_in = if i == r { 0 } else { self.koszul_differential(i + 1, mu).rank() };
        Ok((dim - rank_out - rank_in) as u64)
    }
}

pub fn ideal_piece(inst: &Instance, mu: Bidegree) -> FpMatrix {
    Oracle::new(inst).ideal_piece(mu)
}

/// `dim (S/I)_mu`.
pub fn hf_si_oracle(inst: &Instance, mu: Bidegree) -> u64 {
    Oracle::new(inst).hf_si(mu)
}

/// `dim H_i(K(f; S))_mu`.
pub fn koszul_homology_dim(inst: &Instance, i: i64, mu: Bidegree) -> Result<u64> {
    Oracle::new(inst).koszul_homology_dim(i, mu)
}
