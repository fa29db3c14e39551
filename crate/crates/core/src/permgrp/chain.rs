use num_bigint::BigUint;

use super::perm::Permutation;

/// One level of a stabilizer chain: the base point, strong generators of the
/// pointwise stabilizer of all earlier base points, and a transversal for the
/// orbit of the base point under those generators.
#[derive(Clone, Debug)]
pub struct Level {
    point: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    rep_invs: Vec<Permutation>,
}

const NONE: u32 = u32::MAX;

impl Level {
    fn new(n: usize, point: u32, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            point,
            gens,
            orbit: Vec::new(),
            slot: vec![NONE; n],
            reps: Vec::new(),
            rep_invs: Vec::new(),
        };
        level.rebuild(n);
        level
    }

    fn rebuild(&mut self, n: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.rep_invs.clear();
        self.slot = vec![NONE; n];
        self.slot[self.point as usize] = 0;
        self.orbit.push(self.point);
        self.reps.push(Permutation::identity(n));
        self.rep_invs.push(Permutation::identity(n));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            let rx = self.reps[head].clone();
            head += 1;
            for g in &self.gens {
                let y = g.image(x);
                if self.slot[y as usize] == NONE {
                    let r = rx.then(g);
                    self.slot[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.rep_invs.push(r.inverse());
                    self.reps.push(r);
                }
            }
        }
    }

    pub fn point(&self) -> u32 {
        self.point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn contains(&self, x: u32) -> bool {
        self.slot[x as usize] != NONE
    }

    /// A group element of this level mapping the base point to `x`.
    pub fn rep(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            NONE => None,
            s => Some(&self.reps[s as usize]),
        }
    }

    pub fn rep_inv(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            NONE => None,
            s => Some(&self.rep_invs[s as usize]),
        }
    }
}

/// Base and strong generating set built by deterministic Schreier-Sims.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain whose base starts with `prefix`; further base points are
    /// taken greedily from the largest orbit of the remaining stabilizer.
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let mut base: Vec<u32> = Vec::new();
        for &p in prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        loop {
            let rest: Vec<Permutation> = gens
                .iter()
                .filter(|g| base.iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            if rest.is_empty() {
                break;
            }
            base.push(largest_orbit_point(degree, &rest));
        }
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.image(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(degree, b, level_gens));
        }
        chain.complete();
        chain
    }

    /// Chain of the full symmetric group with the given base order, built
    /// without sifting.
    pub fn symmetric(degree: usize, order: &[u32]) -> Self {
        debug_assert_eq!(order.len(), degree);
        let mut levels = Vec::new();
        for i in 0..degree.saturating_sub(1) {
            let b = order[i];
            let mut level = Level {
                point: b,
                gens: Vec::new(),
                orbit: Vec::new(),
                slot: vec![NONE; degree],
                reps: Vec::new(),
                rep_invs: Vec::new(),
            };
            for &x in &order[i..] {
                let t = Permutation::transposition(degree, b, x);
                if x != b {
                    level.gens.push(t.clone());
                }
                level.slot[x as usize] = level.orbit.len() as u32;
                level.orbit.push(x);
                level.rep_invs.push(t.clone());
                level.reps.push(t);
            }
            levels.push(level);
        }
        StabChain { degree, levels }
    }

    /// Incremental Schreier-Sims: verify Schreier generators from the deepest
    /// level upwards, restarting at the level where a residue was inserted.
    fn complete(&mut self) {
        let n = self.degree;
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                for s in &gens {
                    let u = self.levels[lvl].rep(beta).unwrap();
                    let img = s.image(beta);
                    let w = self.levels[lvl].rep_inv(img).unwrap();
                    let h = u.then(s).then(w);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.sift(&h, lvl + 1);
                    if res.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let point = largest_orbit_point(n, std::slice::from_ref(&res));
                        self.levels.push(Level::new(n, point, Vec::new()));
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(res.clone());
                        self.levels[l].rebuild(n);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where stripping stopped (`len()` when it passed every level).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.image(level.point);
            match level.rep_inv(x) {
                Some(inv) => h = h.then(inv),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, j) = self.sift(g, 0);
        j == self.levels.len() && res.is_identity()
    }

    /// Union of the level generators.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Visits every group element once.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn rec(chain: &StabChain, j: usize, p: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            if j == chain.levels.len() {
                f(p);
                return;
            }
            let level = &chain.levels[j];
            for &d in &level.orbit {
                let q = level.rep(d).unwrap().then(p);
                rec(chain, j + 1, &q, f);
            }
        }
        rec(self, 0, &Permutation::identity(self.degree), &mut f);
    }
}

/// Least point of the largest orbit of `gens`, ignoring fixed points.
fn largest_orbit_point(n: usize, gens: &[Permutation]) -> u32 {
    let mut seen = vec![false; n];
    let mut best: Option<(usize, u32)> = None;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut size = 0usize;
        let mut stack = vec![start as u32];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            size += 1;
            for g in gens {
                let y = g.image(x) as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y as u32);
                }
            }
        }
        if size > 1 && best.map_or(true, |(s, _)| size > s) {
            best = Some((size, start as u32));
        }
    }
    best.map(|(_, p)| p).expect("a non-identity generator moves some point")
}
