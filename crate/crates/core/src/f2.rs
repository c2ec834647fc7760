//! Dense linear algebra over F₂, sized for desk-scale complexes.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.get(*i))
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

/// Incrementally maintained row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    rows: Vec<(usize, BitVec)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }
}

impl Default for EchelonBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Kernel of the linear map sending basis vector `j` to `columns[j]`.
pub fn kernel(columns: &[BitVec]) -> Vec<BitVec> {
    let n = columns.len();
    // Track each reduced column together with the combination producing it.
    let mut pivots: Vec<(usize, BitVec, BitVec)> = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = BitVec::zeros(n);
        combo.set(j, true);
        for (p, row, c) in &pivots {
            if v.get(*p) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        match v.first_one() {
            None => kernel.push(combo),
            Some(p) => pivots.push((p, v, combo)),
        }
    }
    kernel
}

pub fn rank(vectors: &[BitVec]) -> usize {
    let mut basis = EchelonBasis::new();
    vectors.iter().filter(|v| basis.insert(v)).count()
}

/// Homology of a differential on F₂^n given by arrows `from -> to`.
#[derive(Clone, Debug)]
pub struct Homology {
    /// Cycles whose classes form a basis of homology.
    pub cycles: Vec<BitVec>,
    /// Cocycles whose classes form a basis of cohomology.
    pub cocycles: Vec<BitVec>,
}

impl Homology {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }
}

pub fn homology(n: usize, arrows: &[(usize, usize)]) -> Homology {
    let mut d = vec![BitVec::zeros(n); n];
    let mut dt = vec![BitVec::zeros(n); n];
    for &(from, to) in arrows {
        d[from].flip(to);
        dt[to].flip(from);
    }
    Homology {
        cycles: complement_reps(&kernel(&d), &d),
        cocycles: complement_reps(&kernel(&dt), &dt),
    }
}

/// Elements of `kernel` whose classes form a basis of span(kernel)/span(image).
fn complement_reps(kernel: &[BitVec], image: &[BitVec]) -> Vec<BitVec> {
    let mut basis = EchelonBasis::new();
    for v in image {
        basis.insert(v);
    }
    kernel.iter().filter(|z| basis.insert(z)).cloned().collect()
}
