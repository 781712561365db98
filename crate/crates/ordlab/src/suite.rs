//! Property suites for the acceptance criteria. Every suite is seeded and
//! reproducible; a criterion passes when no check fails and, where a time
//! limit applies, the suite finishes within it.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use ordlab_core::cseq::{
    build_avoiding, standard_csequence, verify_csequence, AvoidSet, AvoidingCSequence, StandardCSequence,
};
use ordlab_core::ordinal::random::random_below;
use ordlab_core::ordinal::{decode_seq, encode_seq};
use ordlab_core::poset::{
    build_poset, find_reduct, is_regular_suborder, is_suborder, regular_closure, support_product, FinitePoset,
};
use ordlab_core::refine::{compatible_refinement_product, is_delta_system, knaster_refinement, KnasterCondition};
use ordlab_core::rhotree::{build_arena, Arena, ArenaBuilder, ArenaConfig, TreeNode, TreeView, Verdict};
use ordlab_core::specforcing::{
    build_linked_poset, linked_leq, linked_reduct_refuter, pt_compatible, pt_enumerate, pt_validate,
    syntactic_incompatible, tree_reduct_refuter, BitString, FiniteTree, LinkedCondition, LinkedParams, SpecCondition,
    TreeWitness,
};
use ordlab_core::walks::{rho0, walk_with_code};
use ordlab_core::Ordinal;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 20_140_915;
const MAX_REPORTED: usize = 10;

type Cs = AvoidingCSequence<StandardCSequence>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failure_count: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
    failure_count: usize,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(what);
        }
    }
}

pub const CRITERIA: [(u8, &str, Option<u64>); 12] = [
    (1, "regularity equals suborder plus reducts", Some(60)),
    (2, "walks terminate and descend", Some(10)),
    (3, "codes separate levels", None),
    (4, "avoiding sequences", None),
    (5, "regressive map is injective on chains", None),
    (6, "no splitting at limit levels", None),
    (7, "P(T) compatibility oracle", None),
    (8, "Knaster refinement", None),
    (9, "support product refinement", None),
    (10, "reduct refuters", None),
    (11, "regular closure", None),
    (12, "ordinal algebra", Some(5)),
];

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|&(id, _, _)| run_criterion(id, seed).expect("known id"))
        .collect()
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    let &(_, name, limit) = CRITERIA.iter().find(|c| c.0 == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(id).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let start = Instant::now();
    let tally = match id {
        1 => regularity(&mut rng),
        2 => walks(&mut rng),
        3 => level_distinctness(&mut rng),
        4 => avoiding(&mut rng),
        5 => injective_r(&mut rng),
        6 => nonsplitting(&mut rng),
        7 => pt_oracle(&mut rng),
        8 => knaster(&mut rng),
        9 => product(&mut rng),
        10 => refuters(&mut rng),
        11 => closure(&mut rng),
        12 => algebra(&mut rng),
        _ => unreachable!(),
    };
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let in_time = limit.is_none_or(|l| elapsed < l);
    Some(CriterionResult {
        id,
        name: name.to_string(),
        passed: tally.failure_count == 0 && in_time,
        checked: tally.checked,
        failure_count: tally.failure_count,
        failures: tally.failures,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
        notes: tally.notes,
    })
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let limit = self.limit_ms.map(|l| format!(" (limit {} ms)", l)).unwrap_or_default();
        let mut line = format!(
            "criterion {:>2} {verdict}: {} — {} checks, {} failures, {} ms{limit}",
            self.id, self.name, self.checked, self.failure_count, self.elapsed_ms
        );
        if let Some(first) = self.failures.first() {
            line.push_str(&format!("; first: {first}"));
        }
        line
    }
}

// ---------------------------------------------------------------- helpers

fn o(s: &str) -> Ordinal {
    s.parse().expect("literal")
}

fn below(rng: &mut ChaCha8Rng, bound: &Ordinal, max_coeff: u64) -> Ordinal {
    random_below(rng, bound, max_coeff).expect("nonzero bound")
}

/// A random limit ordinal in `(lo, bound)`, if the draw lands there.
fn random_limit(rng: &mut ChaCha8Rng, bound: &Ordinal, lo: &Ordinal) -> Option<Ordinal> {
    let (limit, _) = below(rng, bound, 4).split_finite();
    (limit > *lo).then_some(limit)
}

/// A labeled poset: a random DAG on a shuffled order.
fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[a], perm[b]));
            }
        }
    }
    build_poset(n, &pairs, None).expect("acyclic")
}

/// Every partial order on `0..n`, as relation bit masks filtered for
/// antisymmetry and transitivity.
fn all_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let rel: BTreeSet<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let antisymmetric = rel.iter().all(|&(a, b)| !rel.contains(&(b, a)));
        let transitive = rel.iter().all(|&(a, b)| {
            rel.iter()
                .filter(|&&(c, _)| c == b)
                .all(|&(_, d)| a == d || rel.contains(&(a, d)))
        });
        if antisymmetric && transitive {
            let rel: Vec<(usize, usize)> = rel.into_iter().collect();
            out.push(build_poset(n, &rel, None).expect("partial order"));
        }
    }
    out
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> FiniteTree {
    let parents = (0..n)
        .map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) })
        .collect();
    FiniteTree::new(parents).expect("parent before child")
}

fn random_condition(
    rng: &mut ChaCha8Rng,
    tree: &FiniteTree,
    nodes: &[usize],
    max_dom: usize,
    colors: u64,
) -> SpecCondition {
    loop {
        let m: BTreeMap<usize, u64> = (0..rng.gen_range(0..=max_dom))
            .map(|_| (*nodes.choose(rng).expect("nodes"), rng.gen_range(0..colors)))
            .collect();
        if let Ok(p) = pt_validate(tree, m) {
            return p;
        }
    }
}

// ---------------------------------------------------------------- 1

fn regularity(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let compare = |t: &mut Tally, q: &FinitePoset, a: &[usize]| {
        let by_reducts = is_suborder(q, a) && (0..q.len()).all(|x| find_reduct(q, a, x).is_some());
        match is_regular_suborder(q, a) {
            Ok(regular) => t.check(regular == by_reducts, || {
                format!("{q:?} subset {a:?}: antichains say {regular}, reducts say {by_reducts}")
            }),
            Err(e) => t.fail(format!("{q:?} subset {a:?}: {e}")),
        }
    };
    for (n, expected) in [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)] {
        let posets = all_posets(n);
        t.check(posets.len() == expected, || {
            format!("{} labeled posets on {n} points, expected {expected}", posets.len())
        });
        for q in &posets {
            for a in subsets(n) {
                compare(&mut t, q, &a);
            }
        }
    }
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.6);
        let q = random_poset(rng, n, density);
        for a in subsets(n) {
            compare(&mut t, &q, &a);
        }
    }
    t
}

// ---------------------------------------------------------------- 2, 3, 4

fn random_avoid(rng: &mut ChaCha8Rng, bound: &Ordinal, lo: &Ordinal, size: usize) -> AvoidSet {
    let mut members = BTreeSet::new();
    while members.len() < size {
        if let Some(x) = random_limit(rng, bound, lo) {
            members.insert(x);
        }
    }
    AvoidSet::new(members).expect("limits")
}

fn walks(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let bound = o("w^(3)");
    for arena_no in 0..10 {
        let avoid = if arena_no % 2 == 0 {
            AvoidSet::empty()
        } else {
            let size = rng.gen_range(1..=5);
            random_avoid(rng, &bound, &Ordinal::zero(), size)
        };
        let c: Cs = build_avoiding(avoid, standard_csequence());
        let seed: Vec<Ordinal> = (0..25).map(|_| below(rng, &bound, 6)).collect();
        let arena = match build_arena(&seed, c, 4) {
            Ok(a) => a,
            Err(e) => {
                t.fail(format!("arena {arena_no}: {e}"));
                continue;
            }
        };
        let w = arena.members();
        for _ in 0..1000 {
            let (x, y) = (w.choose(rng).unwrap(), w.choose(rng).unwrap());
            let (alpha, beta) = if x <= y { (x, y) } else { (y, x) };
            match walk_with_code(arena.cseq(), alpha, beta) {
                Ok((walk, code)) => {
                    let ok = walk.steps.first() == Some(beta)
                        && walk.steps.last() == Some(alpha)
                        && walk.steps.windows(2).all(|s| s[0] > s[1])
                        && code.len() + 1 == walk.steps.len();
                    t.check(ok, || format!("walk {alpha} -> {beta}: {:?} code {code}", walk.steps));
                }
                Err(e) => t.fail(format!("walk {alpha} -> {beta}: {e}")),
            }
            let fixed = rho0(arena.cseq(), alpha, alpha);
            t.check(fixed.as_ref().is_ok_and(|c| c.is_empty()), || {
                format!("rho0({alpha},{alpha}) = {fixed:?}")
            });
        }
    }
    t
}

fn level_distinctness(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let bound = o("w^(3)");
    let avoiding: Cs = build_avoiding(random_avoid(rng, &bound, &Ordinal::omega(), 4), standard_csequence());
    let plain: Cs = build_avoiding(AvoidSet::empty(), standard_csequence());
    let mut done = 0;
    while done < 1000 {
        let mut xs = [below(rng, &bound, 6), below(rng, &bound, 6), below(rng, &bound, 6)];
        xs.sort();
        if xs[0] == xs[1] || xs[1] == xs[2] {
            continue;
        }
        done += 1;
        let [a0, a1, b] = xs;
        let c = if done % 2 == 0 { &avoiding } else { &plain };
        match (rho0(c, &a0, &b), rho0(c, &a1, &b)) {
            (Ok(c0), Ok(c1)) => t.check(c0 != c1, || format!("rho0({a0},{b}) = rho0({a1},{b}) = {c0}")),
            (r0, r1) => t.fail(format!("walk error: {r0:?} {r1:?}")),
        }
    }
    t
}

fn avoiding(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let bound = o("w^(3)");
    for _ in 0..100 {
        let size = rng.gen_range(1..=6);
        let avoid = random_avoid(rng, &bound, &Ordinal::zero(), size);
        let c = build_avoiding(avoid.clone(), standard_csequence());
        let mut levels: Vec<Ordinal> = (0..30).map(|_| below(rng, &bound, 6)).collect();
        levels.extend((0..10).filter_map(|_| random_limit(rng, &bound, &Ordinal::zero())));
        levels.extend(avoid.iter().cloned());
        let report = verify_csequence(&c, &levels, &avoid, 10);
        t.checked += report.checked_levels;
        for v in report.violations {
            t.fail(format!(
                "avoid {:?}: {v:?}",
                avoid.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            ));
        }
    }
    t
}

// ---------------------------------------------------------------- 5, 6

/// A walk-closed arena of about 200 points below ω³ whose C-sequence avoids
/// `s`, with `s` added to every probe set.
fn suite_arena(rng: &mut ChaCha8Rng, s: &[Ordinal]) -> Result<Arena<Cs>, String> {
    let bound = o("w^(3)");
    let c: Cs = build_avoiding(
        AvoidSet::new(s.iter().cloned()).map_err(|e| e.to_string())?,
        standard_csequence(),
    );
    let top = s.iter().max().cloned().unwrap_or_else(Ordinal::zero);
    let config = ArenaConfig {
        probe_budget: 4,
        ..ArenaConfig::default()
    };
    let mut builder = ArenaBuilder::new(c, config);
    builder.add(s).map_err(|e| e.to_string())?;
    let mut added = 0;
    while builder.len() < 180 && added < 400 {
        let mut fresh = Vec::new();
        for _ in 0..6 {
            fresh.push(below(rng, &bound, 5));
            // Sources above the top level so that every level has many nodes.
            let x = below(rng, &bound, 5);
            if x > top {
                fresh.push(x);
            }
        }
        added += fresh.len();
        builder.add(&fresh).map_err(|e| e.to_string())?;
    }
    builder.probe_points(s.iter().cloned());
    Ok(builder.build())
}

fn random_s(rng: &mut ChaCha8Rng) -> Vec<Ordinal> {
    let bound = o("w^(3)");
    let size = rng.gen_range(3..=6);
    let mut s = BTreeSet::new();
    while s.len() < size {
        if let Some(x) = random_limit(rng, &bound, &Ordinal::omega()) {
            s.insert(x);
        }
    }
    s.into_iter().collect()
}

/// For every `S`-level node `t₁` and every lower `S`-level `α₀`, the node
/// below `t₁` at `α₀` forms a comparable pair with it; `r` must differ on the
/// pair. Apparent equalities are re-examined with four times the probes.
fn injective_r(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let mut escalations = 0;
    for arena_no in 0..20 {
        let s = random_s(rng);
        let arena = match suite_arena(rng, &s) {
            Ok(a) => a,
            Err(e) => {
                t.fail(format!("arena {arena_no}: {e}"));
                continue;
            }
        };
        let mut view = TreeView::new(&arena);
        let mut suspects: Vec<(TreeNode, TreeNode)> = Vec::new();
        let result: Result<(), ordlab_core::rhotree::RhoTreeError> = (|| {
            for (j, a1) in s.iter().enumerate() {
                for t1 in view.nodes_at_level(a1)? {
                    for a0 in &s[..j] {
                        let t0 = view.node(a0, &t1.source)?;
                        if view.tree_leq(&t0, &t1)? != Verdict::Below {
                            continue;
                        }
                        t.checked += 1;
                        if view.regressive_r(&t0)? == view.regressive_r(&t1)? {
                            suspects.push((t0, t1.clone()));
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            t.fail(format!("arena {arena_no}: {e}"));
            continue;
        }
        if suspects.is_empty() {
            continue;
        }
        escalations += suspects.len();
        let wide = arena.with_probe_budget(arena.probe_budget() * 4);
        let mut view = TreeView::new(&wide);
        for (t0, t1) in suspects {
            let verdict = (|| {
                let t1 = view.node(&t1.level, &t1.source)?;
                let t0 = view.node(&t0.level, &t1.source)?;
                let comparable = view.tree_leq(&t0, &t1)? == Verdict::Below;
                let same = comparable && view.regressive_r(&t0)? == view.regressive_r(&t1)?;
                Ok::<_, ordlab_core::rhotree::RhoTreeError>((t0, t1, same))
            })();
            match verdict {
                Ok((t0, t1, true)) => t.fail(format!("r({t0}) = r({t1}) persists under escalation")),
                Ok(_) => {}
                Err(e) => t.fail(format!("escalation: {e}")),
            }
        }
    }
    t.notes.push(format!("{escalations} apparent equalities escalated"));
    t
}

fn nonsplitting(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let mut unresolved = 0;
    for arena_no in 0..20 {
        let s = random_s(rng);
        let arena = match suite_arena(rng, &s) {
            Ok(a) => a,
            Err(e) => {
                t.fail(format!("arena {arena_no}: {e}"));
                continue;
            }
        };
        let mut view = TreeView::new(&arena);
        let limits: Vec<Ordinal> = arena.members().iter().filter(|x| x.is_limit()).cloned().collect();
        for lambda in &limits {
            let report = (|| {
                let nodes = view.nodes_at_level(lambda)?;
                let pairs: Vec<(TreeNode, TreeNode)> = nodes
                    .iter()
                    .enumerate()
                    .flat_map(|(i, a)| nodes[i + 1..].iter().map(move |b| (a.clone(), b.clone())))
                    .collect();
                view.check_nonsplitting(lambda, &pairs)
            })();
            match report {
                Ok(r) => {
                    t.checked += r.confirmed.len() + r.violations.len();
                    unresolved += r.unresolved.len();
                    for v in r.violations {
                        t.fail(format!("level {lambda}: {} / {}: {}", v.pair.0, v.pair.1, v.reason));
                    }
                }
                Err(e) => t.fail(format!("arena {arena_no} level {lambda}: {e}")),
            }
        }
    }
    t.notes
        .push(format!("{unresolved} pairs not separated by probes (not counted)"));
    t
}

// ---------------------------------------------------------------- 7

fn pt_oracle(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for _ in 0..30 {
        let n = rng.gen_range(1..=6);
        let tree = random_tree(rng, n);
        let small = pt_enumerate(&tree, 3, 3).expect("small fragment");
        let big = pt_enumerate(&tree, 6, 3).expect("fragment");
        // Pairs with a common extension: both are restrictions of some r.
        let mut joint: HashSet<(usize, usize)> = HashSet::new();
        for r in &big {
            let below: Vec<usize> = small
                .iter()
                .enumerate()
                .filter(|(_, p)| r.extends(p))
                .map(|(i, _)| i)
                .collect();
            for &a in &below {
                for &b in &below {
                    joint.insert((a, b));
                }
            }
        }
        for (a, p) in small.iter().enumerate() {
            for (b, q) in small.iter().enumerate() {
                let fast = pt_compatible(&tree, p, q);
                let brute = joint.contains(&(a, b));
                t.check(fast == brute, || {
                    format!("tree {:?}: {p:?} vs {q:?}: {fast} vs {brute}", tree.parents())
                });
            }
        }
    }
    t
}

// ---------------------------------------------------------------- 8

/// A tree of height ≤ 8 and ≤ 40 nodes that branches only at levels
/// outside `S`, with a random valid witness: `r(t)` is the root or the
/// level-1 predecessor, and the colour of `t` is drawn from `0..|S|` avoiding
/// the colours of the nodes below `t` in its fibre.
fn knaster_instance(rng: &mut ChaCha8Rng) -> (FiniteTree, TreeWitness) {
    loop {
        let height = rng.gen_range(5..=8u32);
        let s: BTreeSet<u32> = (2..height).filter(|_| rng.gen_bool(0.5)).collect();
        let mut parent: Vec<Option<usize>> = vec![None];
        let mut frontier = vec![0usize];
        for level in 1..height {
            // Spread the 40-node budget over the remaining levels.
            let width = (40 - parent.len()) / (height - level) as usize;
            let mut next = Vec::new();
            for (i, &p) in frontier.iter().enumerate() {
                let reserve = frontier.len() - i - 1;
                let room = width.saturating_sub(next.len() + reserve).max(1);
                let kids = if s.contains(&level) {
                    1
                } else {
                    rng.gen_range(1..=3).min(room)
                };
                for _ in 0..kids {
                    if parent.len() < 40 {
                        parent.push(Some(p));
                        next.push(parent.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        let tree = FiniteTree::new(parent).expect("tree");
        // The node cap can cut the tree short; keep the levels that exist.
        let s: BTreeSet<u32> = s.into_iter().filter(|&l| l < tree.height()).collect();
        if s.len() < 2 {
            continue;
        }
        let k = s.len() as u64;
        let mut w = TreeWitness {
            s_levels: s,
            ..TreeWitness::default()
        };
        // Nodes by level, so every node sees its S-ancestors coloured.
        let mut order: Vec<usize> = (0..tree.len())
            .filter(|&t| w.s_levels.contains(&tree.level(t)))
            .collect();
        order.sort_by_key(|&t| tree.level(t));
        for node in order {
            let r = tree.pred_at_level(node, rng.gen_range(0..2)).expect("level ≥ 2");
            let used: BTreeSet<u64> =
                w.r.iter()
                    .filter(|&(&u, &ru)| ru == r && tree.is_below(u, node))
                    .map(|(u, _)| w.colors[u])
                    .collect();
            let free: Vec<u64> = (0..k).filter(|c| !used.contains(c)).collect();
            w.r.insert(node, r);
            w.colors.insert(node, *free.choose(rng).expect("at most k ancestors"));
        }
        return (tree, w);
    }
}

fn knaster(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let mut ratios = Vec::new();
    for inst in 0..20 {
        let (tree, witness) = knaster_instance(rng);
        let levels: Vec<u32> = witness.s_levels.iter().copied().collect();
        let conditions: Vec<KnasterCondition> = (0..64)
            .map(|_| {
                let level = *levels.choose(rng).unwrap();
                let at = tree.nodes_at_level(level);
                loop {
                    // Lower part from a two-element pool, then one new node
                    // at the level (two, a quarter of the time).
                    let mut m = BTreeMap::new();
                    m.insert(0usize, rng.gen_range(0..2u64));
                    let n = if at.len() >= 2 && rng.gen_bool(0.25) { 2 } else { 1 };
                    for &node in at.choose_multiple(rng, n) {
                        m.insert(node, rng.gen_range(0..3u64));
                    }
                    if let Ok(condition) = pt_validate(&tree, m) {
                        break KnasterCondition { level, condition };
                    }
                }
            })
            .collect();
        match knaster_refinement(&tree, &witness, &conditions) {
            Ok((u, trace)) => {
                let f = trace.fingerprint_count;
                let floor = 64usize.div_ceil(f);
                for (i, &a) in u.iter().enumerate() {
                    for &b in &u[i + 1..] {
                        let (p, q) = (&conditions[a].condition, &conditions[b].condition);
                        let mut union = p.assignment().clone();
                        let functional = q.assignment().iter().all(|(k, v)| *union.entry(*k).or_insert(*v) == *v);
                        t.check(functional && pt_validate(&tree, union).is_ok(), || {
                            format!("instance {inst}: {a} and {b} incompatible")
                        });
                    }
                }
                t.check(u.len() >= 2, || {
                    format!("instance {inst}: |U| = {} with {f} fingerprints", u.len())
                });
                t.check(u.len() >= floor, || {
                    format!("instance {inst}: |U| = {} < ceil(64/{f})", u.len())
                });
                let partition = trace.stages.iter().all(|st| {
                    let mut all: Vec<usize> = st.groups.concat();
                    all.sort_unstable();
                    all == (0..64).collect::<Vec<_>>()
                });
                let nested = trace.stages.windows(2).all(|w| {
                    let outer: BTreeSet<usize> = w[0].selected_group().iter().copied().collect();
                    w[1].selected_group().iter().all(|x| outer.contains(x))
                });
                t.check(partition && nested, || {
                    format!("instance {inst}: trace stages are not nested partitions")
                });
                ratios.push(format!("{}/{f}", u.len()));
            }
            Err(e) => t.fail(format!("instance {inst}: {e}")),
        }
    }
    t.notes.push(format!("|U|/fingerprints: {}", ratios.join(" ")));
    t
}

// ---------------------------------------------------------------- 9

fn product(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for inst in 0..20 {
        let factors: Vec<FinitePoset> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let n = rng.gen_range(1..=6);
                let density = rng.gen_range(0.1..0.6);
                random_poset(rng, n, density)
            })
            .collect();
        let p = support_product(&factors, 1).expect("small product");
        let m = p.conditions().len();
        let conditions: Vec<usize> = (0..32).map(|_| rng.gen_range(0..m)).collect();
        let supports: Vec<Vec<u64>> = conditions
            .iter()
            .map(|&c| p.support(c).into_iter().map(|g| g as u64).collect())
            .collect();
        let any_pair = (0..32).any(|i| (i + 1..32).any(|j| p.poset().compatible(conditions[i], conditions[j])));
        match compatible_refinement_product(&p, &conditions) {
            Ok((out, trace)) => {
                t.check(is_delta_system(&supports, &trace.delta), || {
                    format!("instance {inst}: Δ-root not exact: {:?}", trace.delta)
                });
                for (i, &a) in out.iter().enumerate() {
                    for &b in &out[i + 1..] {
                        let (ca, cb) = (
                            &p.conditions()[conditions[a]].coords,
                            &p.conditions()[conditions[b]].coords,
                        );
                        // Independent check: a common lower bound with support ≤ ν exists.
                        let common = (0..m).any(|r| {
                            let cr = &p.conditions()[r].coords;
                            (0..ca.len()).all(|g| p.factors()[g].leq(cr[g], ca[g]) && p.factors()[g].leq(cr[g], cb[g]))
                        });
                        t.check(common, || format!("instance {inst}: {a} and {b} incompatible"));
                    }
                }
                t.check(out.len() >= 2 || !any_pair, || {
                    format!("instance {inst}: only {} returned", out.len())
                });
            }
            Err(ordlab_core::refine::RefineError::Empty) => t.check(!any_pair, || {
                format!("instance {inst}: EMPTY although a compatible pair exists")
            }),
            Err(e) => t.fail(format!("instance {inst}: {e}")),
        }
    }
    t
}

// ---------------------------------------------------------------- 10

fn refuters(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(3..=12);
        let tree = random_tree(rng, n);
        let beta = rng.gen_range(0..tree.height().max(1));
        let above: Vec<usize> = (0..n).filter(|&x| tree.level(x) > beta).collect();
        let below: Vec<usize> = (0..n).filter(|&x| tree.level(x) < beta).collect();
        let Some(&target) = above.choose(rng) else { continue };
        let q = if below.is_empty() {
            SpecCondition::empty()
        } else {
            random_condition(rng, &tree, &below, 3, 4)
        };
        if q.domain().any(|s| tree.is_below(s, target) && q.get(s) == Some(0)) {
            continue;
        }
        done += 1;
        match tree_reduct_refuter(&tree, &q, target, beta) {
            Ok(r) => {
                let single = pt_validate(&tree, [(target, 0)].into_iter().collect()).expect("singleton");
                t.check(r.extends(&q) && !pt_compatible(&tree, &r, &single), || {
                    format!("tree refuter: r = {r:?} for q = {q:?}")
                });
            }
            Err(e) => t.fail(format!("tree refuter: {e}")),
        }
    }
    let mut done = 0;
    let mut fragments: BTreeMap<(u8, Vec<BitString>), ordlab_core::specforcing::LinkedFragment> = BTreeMap::new();
    while done < 100 {
        let lambda = rng.gen_range(2..=3u8);
        let all: Vec<BitString> = BitString::all_of_length(lambda as usize).collect();
        let k = rng.gen_range(2..=4);
        let x: BTreeSet<BitString> = all.choose_multiple(rng, k).copied().collect();
        let params = LinkedParams {
            lambda,
            x: x.clone(),
            max_n: 2,
            max_a: 2,
        };
        let xs: Vec<BitString> = x.iter().copied().collect();
        let x0 = *xs.choose(rng).unwrap();
        let rest: Vec<BitString> = xs.iter().copied().filter(|y| *y != x0).collect();
        let k = rng.gen_range(0..=rest.len().min(2));
        let a: BTreeSet<BitString> = rest.choose_multiple(rng, k).copied().collect();
        let strings: Vec<BitString> = (0..lambda as usize).flat_map(BitString::all_of_length).collect();
        let s: Vec<BitString> = (0..rng.gen_range(0..=1))
            .map(|_| *strings.choose(rng).unwrap())
            .collect();
        let q = LinkedCondition { s, a };
        let r = match linked_reduct_refuter(&params, &q, &x0) {
            Ok(r) => r,
            Err(ordlab_core::specforcing::LinkedError::NoSeparator) => continue,
            Err(e) => {
                done += 1;
                t.fail(format!("linked refuter: {e}"));
                continue;
            }
        };
        done += 1;
        let target = LinkedCondition {
            s: Vec::new(),
            a: [x0].into_iter().collect(),
        };
        let key = (lambda, xs.clone());
        let frag = fragments
            .entry(key)
            .or_insert_with(|| build_linked_poset(params.clone()).expect("fragment"));
        let syntactic = syntactic_incompatible(&r, &x0);
        let brute = frag.compatible(&r, &target).map(|c| !c);
        t.check(linked_leq(&r, &q) && syntactic && brute == Some(true), || {
            format!("linked refuter: q = {q:?}, x = {x0}, r = {r:?}, syntactic {syntactic}, brute {brute:?}")
        });
    }
    t
}

// ---------------------------------------------------------------- 11

fn closure(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let density = rng.gen_range(0.1..0.5);
        let q = random_poset(rng, n, density);
        let seed: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        match regular_closure(&q, &seed) {
            Ok(c) => {
                let contains = seed.iter().all(|x| c.contains(x));
                let regular = is_regular_suborder(&q, &c).unwrap_or(false);
                t.check(contains && regular, || format!("{q:?} seed {seed:?}: closure {c:?}"));
            }
            Err(e) => t.fail(format!("{q:?} seed {seed:?}: {e}")),
        }
    }
    t
}

// ---------------------------------------------------------------- 12

fn algebra(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let bound = o("w^(w^(2))");
    for _ in 0..10_000 {
        let (a, b, c) = (below(rng, &bound, 9), below(rng, &bound, 9), below(rng, &bound, 9));
        let left = &(&a + &b) + &c;
        let right = &a + &(&b + &c);
        t.check(left == right, || {
            format!("({a}+{b})+{c} = {left} but {a}+({b}+{c}) = {right}")
        });
        let z = Ordinal::zero();
        t.check(&a + &z == a && &z + &a == a, || format!("0 is not an identity for {a}"));
        let (lo, hi) = if b < c { (&b, &c) } else { (&c, &b) };
        if lo != hi {
            t.check(&a + lo < &a + hi, || format!("{a}+{lo} is not below {a}+{hi}"));
        }
        let sum = &a + &b;
        t.check(sum.is_normal() && a.is_normal(), || {
            format!("{a}+{b} = {sum} is not in normal form")
        });
        t.check(sum.to_string().parse::<Ordinal>().ok() == Some(sum.clone()), || {
            format!("{sum} does not reparse")
        });
        let len = rng.gen_range(0..8);
        let seq: Vec<u64> = (0..len).map(|_| rng.gen_range(0..64)).collect();
        t.check(decode_seq(&encode_seq(&seq)) == seq, || {
            format!("seqcode roundtrip fails on {seq:?}")
        });
    }
    t
}
