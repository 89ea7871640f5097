use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which objects a space indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// The points `1..=n`.
    Points { n: usize },
    /// The `m`-subsets of `1..=n`.
    Subsets { n: usize, m: usize },
    /// Partitions of `1..=m*l` into `l` blocks of size `m`.
    Partitions { m: usize, l: usize },
}

/// A carrier set with a bijection between objects and `0..size`.
///
/// Objects are flat `Vec<u32>` of 0-based points: a singleton for points,
/// the sorted subset for subsets, and the concatenation of the sorted blocks
/// (ordered by smallest element) for partitions.
///
/// Subsets are indexed in colexicographic order; partitions in lexicographic
/// order of their block-label strings.
#[derive(Debug, Clone)]
pub struct ActionSpace {
    kind: ActionKind,
    size: BigUint,
    /// `binom[a][b] = C(a, b)` for the ranges ranking needs, saturating.
    binom: Vec<Vec<u64>>,
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn binom_table(rows: usize, cols: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; cols + 1]; rows + 1];
    for a in 0..=rows {
        t[a][0] = 1;
        for b in 1..=cols.min(a) {
            t[a][b] = t[a - 1][b - 1].saturating_add(if b < a { t[a - 1][b] } else { 0 });
        }
    }
    t
}

impl ActionSpace {
    pub fn points(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("points space needs n >= 1".into()));
        }
        Ok(ActionSpace {
            kind: ActionKind::Points { n },
            size: BigUint::from(n),
            binom: Vec::new(),
        })
    }

    pub fn subsets(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 || m > n {
            return Err(Error::InvalidParameters(format!(
                "subsets space needs 1 <= m <= n, got n={n}, m={m}"
            )));
        }
        Ok(ActionSpace {
            kind: ActionKind::Subsets { n, m },
            size: binomial(n as u64, m as u64),
            binom: binom_table(n, m),
        })
    }

    pub fn partitions(m: usize, l: usize) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(Error::InvalidParameters(format!(
                "partitions space needs m, l >= 1, got m={m}, l={l}"
            )));
        }
        let n = m * l;
        let size = factorial(n as u64)
            / (factorial(m as u64).pow(l as u32) * factorial(l as u64));
        Ok(ActionSpace {
            kind: ActionKind::Partitions { m, l },
            size,
            binom: binom_table(n, n),
        })
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    /// Short description such as `subsets(n=8, m=3)`.
    pub fn describe(&self) -> String {
        match self.kind {
            ActionKind::Points { n } => format!("points(n={n})"),
            ActionKind::Subsets { n, m } => format!("subsets(n={n}, m={m})"),
            ActionKind::Partitions { m, l } => format!("partitions(m={m}, l={l})"),
        }
    }

    /// 1-based rendering: `5`, `{1,2,4}` or `{1,2|3,4}`.
    pub fn format_object(&self, object: &[u32]) -> String {
        let join = |ps: &[u32]| ps.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            ActionKind::Points { .. } => (object[0] + 1).to_string(),
            ActionKind::Subsets { .. } => format!("{{{}}}", join(object)),
            ActionKind::Partitions { m, .. } => {
                let blocks: Vec<String> = object.chunks(m).map(join).collect();
                format!("{{{}}}", blocks.join("|"))
            }
        }
    }

    /// Number of points the acting group must move.
    pub fn degree(&self) -> usize {
        match self.kind {
            ActionKind::Points { n } | ActionKind::Subsets { n, .. } => n,
            ActionKind::Partitions { m, l } => m * l,
        }
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    /// Length of one flat object.
    pub fn object_len(&self) -> usize {
        match self.kind {
            ActionKind::Points { .. } => 1,
            ActionKind::Subsets { m, .. } => m,
            ActionKind::Partitions { m, l } => m * l,
        }
    }

    /// Size as `u64`; spaces too large to index fail here.
    pub fn len_u64(&self) -> Result<u64> {
        self.size.to_u64().ok_or_else(|| Error::CapExceeded {
            what: "action space size".into(),
            cap_name: "space_materialize",
            value: self.size.to_string(),
            cap: u64::MAX,
        })
    }

    pub(crate) fn check_group_degree(&self, degree: usize) -> Result<()> {
        if degree != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: degree,
            });
        }
        Ok(())
    }

    /// Size as `usize` after checking the materialisation cap.
    pub fn materializable_len(&self, caps: &Caps) -> Result<usize> {
        let cap = caps.space_materialize.min(u32::MAX as u64);
        match self.size.to_u64() {
            Some(s) if s <= cap => Ok(s as usize),
            _ => Err(Error::CapExceeded {
                what: "action space size".into(),
                cap_name: "space_materialize",
                value: self.size.to_string(),
                cap,
            }),
        }
    }

    /// Canonical form of an arbitrary object of the right shape.
    pub fn canonicalize(&self, object: &mut [u32]) {
        match self.kind {
            ActionKind::Points { .. } => {}
            ActionKind::Subsets { .. } => object.sort_unstable(),
            ActionKind::Partitions { m, .. } => {
                for block in object.chunks_mut(m) {
                    block.sort_unstable();
                }
                let mut blocks: Vec<Vec<u32>> = object.chunks(m).map(|b| b.to_vec()).collect();
                blocks.sort_unstable_by_key(|b| b[0]);
                for (dst, b) in object.chunks_mut(m).zip(blocks) {
                    dst.copy_from_slice(&b);
                }
            }
        }
    }

    /// Checks that `object` is canonical and in range.
    pub fn validate(&self, object: &[u32]) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidParameters(format!("invalid object {object:?}: {why}")));
        if object.len() != self.object_len() {
            return bad("wrong length");
        }
        let n = self.degree() as u32;
        if object.iter().any(|&p| p >= n) {
            return bad("point out of range");
        }
        let mut canon = object.to_vec();
        self.canonicalize(&mut canon);
        if canon != object {
            return bad("not in canonical form");
        }
        let mut sorted = canon;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated point");
        }
        Ok(())
    }

    /// Index of a canonical object.
    pub fn index(&self, object: &[u32]) -> Result<u64> {
        self.validate(object)?;
        Ok(self.rank(object))
    }

    fn rank(&self, object: &[u32]) -> u64 {
        match self.kind {
            ActionKind::Points { .. } => object[0] as u64,
            ActionKind::Subsets { .. } => object
                .iter()
                .enumerate()
                .map(|(i, &c)| self.binom[c as usize][i + 1])
                .sum(),
            ActionKind::Partitions { m, l } => {
                let labels = partition_labels(object, m);
                self.rank_labels(&labels, m, l)
            }
        }
    }

    /// The object with index `i`.
    pub fn object(&self, i: u64) -> Result<Vec<u32>> {
        let len = self.len_u64()?;
        if i >= len {
            return Err(Error::PointOutOfRange {
                point: i + 1,
                degree: len as usize,
            });
        }
        Ok(match self.kind {
            ActionKind::Points { .. } => vec![i as u32],
            ActionKind::Subsets { n, m } => {
                let mut out = vec![0u32; m];
                let mut r = i;
                let mut c = n;
                for slot in (0..m).rev() {
                    // Largest c with C(c, slot+1) <= r.
                    c -= 1;
                    while self.binom[c][slot + 1] > r {
                        c -= 1;
                    }
                    out[slot] = c as u32;
                    r -= self.binom[c][slot + 1];
                }
                out
            }
            ActionKind::Partitions { m, l } => {
                let labels = self.unrank_labels(i, m, l);
                labels_to_partition(&labels, m, l)
            }
        })
    }

    /// Canonical image of `object` under `g`.
    pub fn image(&self, object: &[u32], g: &Permutation) -> Vec<u32> {
        let mut out: Vec<u32> = object.iter().map(|&p| g.apply(p)).collect();
        self.canonicalize(&mut out);
        out
    }

    pub fn index_of_image(&self, object: &[u32], g: &Permutation) -> Result<u64> {
        self.check_group_degree(g.degree())?;
        Ok(self.rank(&self.image(object, g)))
    }

    /// Calls `f(index, object)` for every object in index order.
    pub fn for_each_object<F: FnMut(u64, &[u32])>(&self, caps: &Caps, mut f: F) -> Result<()> {
        let len = self.materializable_len(caps)? as u64;
        match self.kind {
            ActionKind::Points { .. } => {
                for i in 0..len {
                    f(i, &[i as u32]);
                }
            }
            ActionKind::Subsets { m, .. } => {
                // Colex successor.
                let mut c: Vec<u32> = (0..m as u32).collect();
                for i in 0..len {
                    f(i, &c);
                    if i + 1 == len {
                        break;
                    }
                    let mut j = 0;
                    while j + 1 < m && c[j] + 1 == c[j + 1] {
                        j += 1;
                    }
                    c[j] += 1;
                    for (t, slot) in c.iter_mut().enumerate().take(j) {
                        *slot = t as u32;
                    }
                }
            }
            ActionKind::Partitions { .. } => {
                for i in 0..len {
                    let obj = self.object(i)?;
                    f(i, &obj);
                }
            }
        }
        Ok(())
    }

    /// The permutation of indices induced by `g`.
    pub fn induced_permutation(&self, g: &Permutation, caps: &Caps) -> Result<Permutation> {
        self.check_group_degree(g.degree())?;
        let len = self.materializable_len(caps)?;
        if let ActionKind::Points { .. } = self.kind {
            return Ok(g.clone());
        }
        let mut images = vec![0u32; len];
        self.for_each_object(caps, |i, obj| {
            images[i as usize] = self.rank(&self.image(obj, g)) as u32;
        })?;
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Number of objects fixed by `g`.
    pub fn fixed_points(&self, g: &Permutation, caps: &Caps) -> Result<u64> {
        self.check_group_degree(g.degree())?;
        let mut count = 0u64;
        self.for_each_object(caps, |_, obj| {
            if self.image(obj, g) == obj {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// Completions of a label string: `rest` unlabelled points, open blocks
    /// with the given free capacities, and `fresh` blocks not yet started.
    fn completions(&self, rest: usize, caps: &[usize], fresh: usize, m: usize) -> u64 {
        let mut acc: u128 = 1;
        let mut r = rest;
        for &c in caps {
            acc = acc.saturating_mul(self.binom[r][c] as u128);
            r -= c;
        }
        // Unordered split of the remaining fresh*m points into blocks of m.
        for i in 1..=fresh {
            acc = acc.saturating_mul(self.binom[i * m - 1][m - 1] as u128);
        }
        acc.min(u64::MAX as u128) as u64
    }

    fn rank_labels(&self, labels: &[u8], m: usize, l: usize) -> u64 {
        let n = m * l;
        let mut free = Vec::with_capacity(l);
        let mut rank = 0u64;
        for (pos, &label) in labels.iter().enumerate() {
            let rest = n - pos - 1;
            let opened = free.len();
            for choice in 0..label as usize {
                if free[choice] == 0 {
                    continue;
                }
                free[choice] -= 1;
                rank += self.completions(rest, &free, l - opened, m);
                free[choice] += 1;
            }
            if label as usize == opened {
                free.push(m - 1);
            } else {
                free[label as usize] -= 1;
            }
        }
        rank
    }

    fn unrank_labels(&self, mut r: u64, m: usize, l: usize) -> Vec<u8> {
        let n = m * l;
        let mut free: Vec<usize> = Vec::with_capacity(l);
        let mut labels = Vec::with_capacity(n);
        for pos in 0..n {
            let rest = n - pos - 1;
            let opened = free.len();
            let mut chosen = None;
            for choice in 0..=opened.min(l - 1) {
                let count = if choice == opened {
                    free.push(m - 1);
                    let c = self.completions(rest, &free, l - opened - 1, m);
                    free.pop();
                    c
                } else {
                    if free[choice] == 0 {
                        continue;
                    }
                    free[choice] -= 1;
                    let c = self.completions(rest, &free, l - opened, m);
                    free[choice] += 1;
                    c
                };
                if r < count {
                    chosen = Some(choice);
                    break;
                }
                r -= count;
            }
            let choice = chosen.expect("rank within range");
            if choice == opened {
                free.push(m - 1);
            } else {
                free[choice] -= 1;
            }
            labels.push(choice as u8);
        }
        labels
    }
}

fn partition_labels(object: &[u32], m: usize) -> Vec<u8> {
    let mut labels = vec![0u8; object.len()];
    for (b, block) in object.chunks(m).enumerate() {
        for &p in block {
            labels[p as usize] = b as u8;
        }
    }
    labels
}

fn labels_to_partition(labels: &[u8], m: usize, l: usize) -> Vec<u32> {
    let mut blocks: Vec<Vec<u32>> = vec![Vec::with_capacity(m); l];
    for (p, &b) in labels.iter().enumerate() {
        blocks[b as usize].push(p as u32);
    }
    blocks.concat()
}
