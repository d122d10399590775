//! Invariant factors of finite abelian subgroups.
//!
//! The relation lattice of a generating set is collected from the Schreier
//! edges of a breadth-first enumeration, brought to Hermite form modulo the
//! group order, and then diagonalized.

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Invariant factors `d_1 | d_2 | …` (all `> 1`) of an abelian subgroup.
pub fn abelian_invariants(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<u64>> {
    if !g.is_abelian(h) {
        return Err(Error::Domain(
            "abelian invariants of a non-abelian group".into(),
        ));
    }
    let gens: Vec<Elem> = h.generators().to_vec();
    let k = gens.len();
    let n = h.order() as i64;
    if n == 1 {
        return Ok(Vec::new());
    }

    // Every element has order dividing n, so n·e_i is a relation and all
    // arithmetic can be done modulo n.
    let mut lattice = HermiteBasis::new(k, n);
    let mut coords: std::collections::HashMap<Elem, Vec<i64>> = Default::default();
    let mut queue = vec![Elem::IDENTITY];
    coords.insert(Elem::IDENTITY, vec![0; k]);
    let mut i = 0;
    while i < queue.len() {
        let e = queue[i];
        let base = coords[&e].clone();
        for (s, &gen) in gens.iter().enumerate() {
            let f = g.mul(e, gen);
            let mut v = base.clone();
            v[s] += 1;
            match coords.get(&f) {
                Some(cf) => {
                    let rel: Vec<i64> = v.iter().zip(cf).map(|(a, b)| a - b).collect();
                    lattice.insert(rel);
                }
                None => {
                    coords.insert(f, v);
                    queue.push(f);
                }
            }
        }
        i += 1;
    }
    let matrix = lattice.into_matrix();
    let mut diag = smith_diagonal(matrix);
    diag.retain(|&d| d != 1);
    diag.sort_unstable();
    let product: u64 = diag.iter().product();
    debug_assert_eq!(product, n as u64);
    Ok(diag)
}

/// Row-echelon lattice basis over `Z`, entries reduced modulo `modulus`.
struct HermiteBasis {
    rows: Vec<Vec<i64>>,
    modulus: i64,
}

impl HermiteBasis {
    fn new(k: usize, modulus: i64) -> Self {
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = modulus;
                r
            })
            .collect();
        HermiteBasis { rows, modulus }
    }

    fn insert(&mut self, mut v: Vec<i64>) {
        let m = self.modulus;
        for x in v.iter_mut() {
            *x = x.rem_euclid(m);
        }
        for col in 0..v.len() {
            if v[col] == 0 {
                continue;
            }
            let row = &mut self.rows[col];
            // Unimodular combination putting gcd(row[col], v[col]) on the pivot.
            let (gcd, s, t) = ext_gcd(row[col], v[col]);
            let (a, b) = (row[col] / gcd, v[col] / gcd);
            for j in col..v.len() {
                let (r, x) = (row[j] as i128, v[j] as i128);
                let new_row = (s as i128 * r + t as i128 * x).rem_euclid(m as i128);
                let new_v = (-(b as i128) * r + a as i128 * x).rem_euclid(m as i128);
                row[j] = new_row as i64;
                v[j] = new_v as i64;
            }
            if row[col] == 0 {
                // gcd reduced to a multiple of m; the diagonal m row is still implied.
                row[col] = m;
            }
        }
    }

    /// The lattice is `span(rows) + m·Z^k`, so the modulus rows go back in.
    fn into_matrix(self) -> Vec<Vec<i64>> {
        let k = self.rows.len();
        let mut out = self.rows;
        for i in 0..k {
            let mut r = vec![0; k];
            r[i] = self.modulus;
            out.push(r);
        }
        out
    }
}

/// Returns `(g, s, t)` with `g = gcd(a, b) > 0` and `s·a + t·b = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Diagonal of the Smith normal form of an integer matrix of full column rank.
pub fn smith_diagonal(matrix: Vec<Vec<i64>>) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = matrix
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Pivot must divide the remaining block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn cyclic_product(orders: &[u32]) -> FiniteGroup {
        let degree: u32 = orders.iter().sum::<u32>().max(1);
        let mut gens = Vec::new();
        let mut offset = 0;
        for &n in orders {
            let mut images: Vec<u32> = (0..degree).collect();
            for i in 0..n {
                images[(offset + i) as usize] = offset + (i + 1) % n;
            }
            gens.push(Permutation::from_images(images).unwrap());
            offset += n;
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(1));
        }
        FiniteGroup::new(gens).unwrap()
    }

    #[test]
    fn small_cases() {
        let g = cyclic_product(&[]);
        assert_eq!(
            abelian_invariants(&g, &g.whole()).unwrap(),
            Vec::<u64>::new()
        );
        let g = cyclic_product(&[2, 3]);
        assert_eq!(abelian_invariants(&g, &g.whole()).unwrap(), vec![6]);
        let g = cyclic_product(&[4, 2]);
        assert_eq!(abelian_invariants(&g, &g.whole()).unwrap(), vec![2, 4]);
        let g = cyclic_product(&[6, 4]);
        assert_eq!(abelian_invariants(&g, &g.whole()).unwrap(), vec![2, 12]);
    }

    #[test]
    fn rejects_non_abelian() {
        let g = FiniteGroup::new(vec![
            Permutation::parse_cycles("(0 1)", 3).unwrap(),
            Permutation::parse_cycles("(0 1 2)", 3).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            abelian_invariants(&g, &g.whole()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn smith_of_known_matrix() {
        // diag(2, 6) hidden behind unimodular transforms
        let m = vec![vec![2, 4], vec![-2, 2]];
        assert_eq!(smith_diagonal(m), vec![2, 6]);
    }
}
