use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::RhoTreeError;
use crate::cseq::CSequence;
use crate::fnv::hash_of;
use crate::ordinal::random::random_below;
use crate::ordinal::Ordinal;
use crate::walks::walk;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArenaConfig {
    /// Largest closure allowed.
    pub cap: usize,
    /// Random probes per level; also the number of extra C_α entries probed.
    pub probe_budget: usize,
    pub seed: u64,
    /// Finite levels up to this size are probed exhaustively.
    pub exact_finite_below: u64,
    /// Coefficient bound for random probes.
    pub max_coeff: u64,
}

impl Default for ArenaConfig {
    fn default() -> Self {
        ArenaConfig {
            cap: 4096,
            probe_budget: 8,
            seed: 0x5eed,
            exact_finite_below: 256,
            max_coeff: 8,
        }
    }
}

/// A finite set of ordinals closed under walk steps between its members,
/// together with the probe sets used to compare code functions.
#[derive(Debug, Clone)]
pub struct Arena<C> {
    cseq: C,
    members: Vec<Ordinal>,
    extra: BTreeSet<Ordinal>,
    config: ArenaConfig,
    probes: BTreeMap<Ordinal, Vec<Ordinal>>,
}

pub fn build_arena<C: CSequence>(seed: &[Ordinal], cseq: C, probe_budget: usize) -> Result<Arena<C>, RhoTreeError> {
    let config = ArenaConfig {
        probe_budget,
        ..ArenaConfig::default()
    };
    build_arena_with(seed, cseq, config)
}

pub fn build_arena_with<C: CSequence>(
    seed: &[Ordinal],
    cseq: C,
    config: ArenaConfig,
) -> Result<Arena<C>, RhoTreeError> {
    let mut builder = ArenaBuilder::new(cseq, config);
    builder.add(seed)?;
    Ok(builder.build())
}

/// Grows a walk-closed set in steps; probe sets are computed once, by
/// [`ArenaBuilder::build`].
#[derive(Debug, Clone)]
pub struct ArenaBuilder<C> {
    cseq: C,
    config: ArenaConfig,
    known: BTreeSet<Ordinal>,
    order: Vec<Ordinal>,
    extra: BTreeSet<Ordinal>,
}

impl<C: CSequence> ArenaBuilder<C> {
    pub fn new(cseq: C, config: ArenaConfig) -> Self {
        ArenaBuilder {
            cseq,
            config,
            known: BTreeSet::new(),
            order: Vec::new(),
            extra: BTreeSet::new(),
        }
    }

    /// See [`Arena::add_probe_points`].
    pub fn probe_points<I: IntoIterator<Item = Ordinal>>(&mut self, points: I) {
        self.extra.extend(points);
    }

    /// Adds points and closes again. Every pair is walked once: a member
    /// being processed is paired with all members processed before it.
    pub fn add(&mut self, points: &[Ordinal]) -> Result<(), RhoTreeError> {
        let cap = self.config.cap;
        let mut next = self.order.len();
        for x in points {
            if self.known.insert(x.clone()) {
                self.order.push(x.clone());
            }
        }
        if self.order.len() > cap {
            return Err(RhoTreeError::Overflow { cap });
        }
        while next < self.order.len() {
            let x = self.order[next].clone();
            for j in 0..next {
                let y = &self.order[j];
                let (lo, hi) = if *y <= x { (y, &x) } else { (&x, y) };
                for step in walk(&self.cseq, lo, hi)?.steps {
                    if self.known.insert(step.clone()) {
                        self.order.push(step);
                        if self.order.len() > cap {
                            return Err(RhoTreeError::Overflow { cap });
                        }
                    }
                }
            }
            next += 1;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn build(self) -> Arena<C> {
        let mut arena = Arena {
            cseq: self.cseq,
            members: self.known.into_iter().collect(),
            extra: self.extra,
            config: self.config,
            probes: BTreeMap::new(),
        };
        arena.refresh_probes();
        arena
    }
}

impl<C: CSequence> Arena<C> {
    pub fn cseq(&self) -> &C {
        &self.cseq
    }

    /// The closed set W, increasing.
    pub fn members(&self) -> &[Ordinal] {
        &self.members
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn config(&self) -> &ArenaConfig {
        &self.config
    }

    pub fn probe_budget(&self) -> usize {
        self.config.probe_budget
    }

    /// Extra points (e.g. the avoided set) that every level above them probes.
    pub fn add_probe_points<I: IntoIterator<Item = Ordinal>>(&mut self, points: I) {
        self.extra.extend(points);
        self.refresh_probes();
    }

    /// The same arena with a different probe budget (same seeds, so probe
    /// sets only grow when the budget grows).
    pub fn with_probe_budget(&self, probe_budget: usize) -> Self
    where
        C: Clone,
    {
        let mut arena = Arena {
            cseq: self.cseq.clone(),
            members: self.members.clone(),
            extra: self.extra.clone(),
            config: ArenaConfig {
                probe_budget,
                ..self.config.clone()
            },
            probes: BTreeMap::new(),
        };
        arena.refresh_probes();
        arena
    }

    fn refresh_probes(&mut self) {
        let mut probes = BTreeMap::new();
        for alpha in &self.members {
            probes.insert(alpha.clone(), self.compute_probes(alpha));
        }
        self.probes = probes;
    }

    /// The probe set of `alpha`, increasing; every element is below `alpha`.
    pub fn probes(&self, alpha: &Ordinal) -> alloc::borrow::Cow<'_, [Ordinal]> {
        match self.probes.get(alpha) {
            Some(p) => alloc::borrow::Cow::Borrowed(p),
            None => alloc::borrow::Cow::Owned(self.compute_probes(alpha)),
        }
    }

    fn compute_probes(&self, alpha: &Ordinal) -> Vec<Ordinal> {
        let mut set = BTreeSet::new();
        self.collect_probes(alpha, &mut set);
        set.into_iter().collect()
    }

    fn collect_probes(&self, alpha: &Ordinal, set: &mut BTreeSet<Ordinal>) {
        if alpha.is_zero() {
            return;
        }
        if let Some(n) = alpha.as_nat() {
            if n <= self.config.exact_finite_below {
                set.extend((0..n).map(Ordinal::nat));
                return;
            }
        }
        set.extend(self.members.iter().take_while(|x| *x < alpha).cloned());
        set.extend(self.extra.range(..alpha).cloned());

        let (lambda, n) = alpha.split_finite();
        if n > 0 {
            // α = λ + n: the top of the finite tail (which holds ᾱ), its
            // bottom, and everything λ itself would probe.
            let k = n.min(64);
            set.extend((0..k).map(|i| lambda.add_nat(i)));
            set.extend((0..k).map(|i| lambda.add_nat(n - 1 - i)));
            self.random_probes(alpha, set);
            if !lambda.is_zero() {
                self.collect_probes(&lambda, set);
            }
            return;
        }

        // Limit level: the first entries of C_α, far enough to pass every
        // arena point below α and the last C_w-entry below α of every arena
        // point w above α.
        let mut reach = 0u64;
        let mut note = |x: &Ordinal, set: &mut BTreeSet<Ordinal>| {
            if let Ok((_, pos)) = self.cseq.min_above(alpha, x) {
                reach = reach.max(pos + 1);
            }
            set.insert(x.clone());
        };
        let below: Vec<Ordinal> = set.iter().cloned().collect();
        for x in &below {
            note(x, set);
        }
        for w in self.members.iter().filter(|w| *w > alpha) {
            if let Ok((_, pos)) = self.cseq.min_above(w, alpha) {
                if pos > 0 {
                    if let Some(m) = self.cseq.entry(w, pos - 1) {
                        note(&m, set);
                    }
                }
            }
        }
        let top = (reach + self.config.probe_budget as u64).min(4096);
        for i in 0..top {
            if let Some(v) = self.cseq.entry(alpha, i) {
                set.insert(v);
            }
        }
        self.random_probes(alpha, set);
    }

    fn random_probes(&self, alpha: &Ordinal, set: &mut BTreeSet<Ordinal>) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ hash_of(alpha));
        for _ in 0..self.config.probe_budget {
            if let Some(x) = random_below(&mut rng, alpha, self.config.max_coeff) {
                set.insert(x);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cseq::standard_csequence;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn closure_examples() {
        let a = build_arena(&[o("5"), o("w")], standard_csequence(), 0).unwrap();
        assert_eq!(a.members(), &[o("5"), o("w")]);
        let a = build_arena(&[o("w^(2)")], standard_csequence(), 0).unwrap();
        assert_eq!(a.members(), &[o("w^(2)")]);
        let a = build_arena(&[o("w"), o("w*2")], standard_csequence(), 0).unwrap();
        assert_eq!(a.members(), &[o("w"), o("w*2")]);
        let a = build_arena(&[o("3"), o("w^(2)+1")], standard_csequence(), 0).unwrap();
        // ω²+1 → ω² → ω → 3.
        assert_eq!(a.members(), &[o("3"), o("w"), o("w^(2)"), o("w^(2)+1")]);
    }

    #[test]
    fn closure_is_closed() {
        let seed = [o("w*3+2"), o("w^(2)*2+w+1"), o("17"), o("w^(2)+5"), o("w*7")];
        let c = standard_csequence();
        let a = build_arena(&seed, c, 4).unwrap();
        for (i, x) in a.members().iter().enumerate() {
            for y in &a.members()[i..] {
                for step in walk(&c, x, y).unwrap().steps {
                    assert!(a.contains(&step), "{step} missing from the walk {y} → {x}");
                }
            }
        }
    }

    #[test]
    fn stepwise_growth_matches_one_shot() {
        let pts = [o("w*3+2"), o("w^(2)*2+w+1"), o("17"), o("w^(2)+5"), o("w*7")];
        let mut b = ArenaBuilder::new(standard_csequence(), ArenaConfig::default());
        for p in &pts {
            b.add(core::slice::from_ref(p)).unwrap();
        }
        let one = build_arena(&pts, standard_csequence(), 8).unwrap();
        assert_eq!(b.build().members(), one.members());
    }

    #[test]
    fn overflow() {
        let config = ArenaConfig {
            cap: 3,
            ..ArenaConfig::default()
        };
        let r = build_arena_with(&[o("3"), o("w^(2)+1")], standard_csequence(), config);
        assert_eq!(r.err(), Some(RhoTreeError::Overflow { cap: 3 }));
    }

    #[test]
    fn probes_lie_below_and_grow_with_budget() {
        let seed = [o("w^(2)*2"), o("w*5+3"), o("w^(2)+w*2")];
        let a = build_arena(&seed, standard_csequence(), 4).unwrap();
        let b = a.with_probe_budget(16);
        for alpha in a.members().iter().chain([o("w*9"), o("300"), o("w+1000")].iter()) {
            let small = a.probes(alpha);
            let big = b.probes(alpha);
            assert!(small.iter().all(|x| x < alpha));
            assert!(small.windows(2).all(|w| w[0] < w[1]));
            assert!(small.iter().all(|x| big.contains(x)), "probes of {alpha} shrank");
        }
        assert_eq!(a.probes(&o("5")).len(), 5);
        assert!(a.probes(&o("w+1000")).contains(&o("w+999")));
        assert!(a.probes(&Ordinal::zero()).is_empty());
    }
}
