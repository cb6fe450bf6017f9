use super::CatError;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    neutral: usize,
}

impl Group {
    /// Validates closure, associativity, the neutral element and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, CatError> {
        let n = names.len();
        if n == 0 {
            return Err(CatError::Schema("group has no elements".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(CatError::Schema(format!("group table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(CatError::Schema("group table entry out of range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(CatError::Invariant(format!(
                            "group associativity violated at ({},{},{})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let neutral = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| CatError::Invariant("group has no neutral element".into()))?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| table[a][b] == neutral && table[b][a] == neutral)
                .ok_or_else(|| {
                    CatError::Invariant(format!("group element {} has no inverse", names[a]))
                })?;
        }
        Ok(Group { names, table, inv, neutral })
    }

    pub fn trivial() -> Self {
        Group::new(vec!["e".into()], vec![vec![0]]).unwrap()
    }

    /// Cyclic group Z_n with elements named 0..n-1.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::new(names, table).unwrap()
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn neutral(&self) -> usize {
        self.neutral
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn conj(&self, k: usize, g: usize) -> usize {
        self.mul(self.mul(k, g), self.inv(k))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|k| self.conj(k, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &x in &cls {
                seen[x] = true;
            }
            out.push(cls);
        }
        out
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&k| self.mul(k, g) == self.mul(g, k))
            .collect()
    }

    /// Number of conjugacy classes of the subgroup `h` (given as element list).
    pub fn subgroup_class_count(&self, h: &[usize]) -> usize {
        let mut seen: Vec<usize> = Vec::new();
        let mut count = 0;
        for &g in h {
            if seen.contains(&g) {
                continue;
            }
            count += 1;
            for &k in h {
                let c = self.conj(k, g);
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
        }
        count
    }

    /// Direct product `self × other`, element (a,b) at index a*|other| + b.
    pub fn product(&self, other: &Group) -> Group {
        let m = other.order();
        let n = self.order() * m;
        let names = (0..n)
            .map(|i| format!("({},{})", self.name(i / m), other.name(i % m)))
            .collect();
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Group::new(names, table).unwrap()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.neutral {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        // Permutations of {0,1,2} in one-line notation.
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        Group::new((0..6).map(|i| i.to_string()).collect(), table).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let g = Group::cyclic(3);
        assert_eq!(g.neutral(), 0);
        assert_eq!(g.inv(1), 2);
        assert!(g.is_abelian());
        assert_eq!(g.conjugacy_classes().len(), 3);
    }

    #[test]
    fn s3_classes_and_centralizers() {
        let g = s3();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![1, 2, 3]);
        let irr: usize = classes
            .iter()
            .map(|c| g.subgroup_class_count(&g.centralizer(c[0])))
            .sum();
        assert_eq!(irr, 8);
    }

    #[test]
    fn rejects_non_associative_table() {
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 1, 0]];
        assert!(Group::new(vec!["a".into(), "b".into(), "c".into()], t).is_err());
    }

    #[test]
    fn product_order() {
        let g = Group::cyclic(2).product(&Group::cyclic(2));
        assert_eq!(g.order(), 4);
        assert!((0..4).all(|x| g.element_order(x) <= 2));
    }
}
