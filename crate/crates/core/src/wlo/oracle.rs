//! Reference computation of `wl` straight from the recursion, over element
//! lists and the order relation only.

use std::collections::HashMap;

use super::{FinitePoset, SimVariant};

struct Oracle<'a> {
    p: &'a FinitePoset,
    v: SimVariant,
    memo: HashMap<(Vec<usize>, i32), bool>,
}

impl Oracle<'_> {
    fn sim(&self, elems: &[usize], a: usize, b: usize) -> bool {
        let le = |x, y| self.p.leq(x, y);
        if !le(a, b) && !le(b, a) {
            return false;
        }
        let inside = |r| (le(a, r) && le(r, b)) || (le(b, r) && le(r, a));
        let interval: Vec<usize> = elems.iter().copied().filter(|&r| inside(r)).collect();
        if !interval.iter().all(|&x| interval.iter().all(|&y| le(x, y) || le(y, x))) {
            return false;
        }
        elems.iter().filter(|&&r| !inside(r)).all(|&r| {
            let below = le(r, a) == le(r, b);
            match self.v {
                SimVariant::AsymmetricLiteral => below,
                SimVariant::SymmetricAmended => below && le(a, r) == le(b, r),
            }
        })
    }

    /// `wl(elems) ≤ beta`.
    fn at_most(&mut self, elems: Vec<usize>, beta: i32) -> bool {
        if elems.is_empty() {
            return true;
        }
        if beta < 0 {
            return false;
        }
        if let Some(&r) = self.memo.get(&(elems.clone(), beta)) {
            return r;
        }
        let mut all = true;
        for &x in &elems {
            let mut found = false;
            for &q in &elems {
                if self.p.leq(q, x) && self.sim(&elems, x, q) {
                    let below: Vec<usize> = (0..self.p.len()).filter(|&r| r != q && self.p.leq(r, q)).collect();
                    if self.at_most(below, beta - 1) {
                        found = true;
                        break;
                    }
                }
            }
            if !found {
                all = false;
                break;
            }
        }
        self.memo.insert((elems, beta), all);
        all
    }
}

/// Least `β ≥ -1` with `wl(P) ≤ β`.
pub fn wl_oracle(p: &FinitePoset, v: SimVariant) -> i32 {
    let mut o = Oracle { p, v, memo: HashMap::new() };
    let all: Vec<usize> = (0..p.len()).collect();
    (-1..=p.len() as i32).find(|&b| o.at_most(all.clone(), b)).expect("wl(P) ≤ |P|")
}
