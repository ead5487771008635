//! Deciding `Σ ⊢ σ` for G-dependence atoms.
//!
//! The decision procedure reduces the goal and premises to single-antecedent
//! atoms and then computes, per goal component `⋈(xᵢ, Wᵢ)`, the least set of
//! variables closed under the premises starting from `Wᵢ`. The goal component
//! is derivable iff `xᵢ` lands in that set. When it does not, the two-row
//! binary team whose rows differ exactly outside the set satisfies every
//! premise and refutes the goal.
//!
//! Positive answers come with a derivation tree in the six-rule calculus,
//! negative ones with that two-row counter-model. [`semantic_oracle`] decides
//! the same question by brute force over two-row teams and shares no code
//! with the fixpoint.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::atoms::{normalize, normalize_set, AtomSet, GAtom};
use crate::error::{Error, Result};
use crate::team::{check_gdep, Team, Value, VarSet, Variable};

/// Inference rules of the calculus. `Premise` marks a leaf taken from Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Premise,
    /// `⋈(∅, y)`
    A0,
    /// `⋈(x, x)`
    A1,
    /// `⋈(x, y)` gives `⋈(xᵢ, (x − xᵢ) y)`
    R0,
    /// all `⋈(xᵢ, (x − xᵢ) y)` give `⋈(x, y)`
    R0Prime,
    /// `⋈(x, y)` gives `⋈(x, y z)`
    R1,
    /// `⋈(zᵢ, y)` for every `zᵢ ∈ z` and `⋈(x₀, z)` give `⋈(x₀, y)`
    R2,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Premise => "Premise",
            Rule::A0 => "A0",
            Rule::A1 => "A1",
            Rule::R0 => "R0",
            Rule::R0Prime => "R0'",
            Rule::R1 => "R1",
            Rule::R2 => "R2",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A derivation tree. Sub-derivations are shared, so the value is a DAG in
/// memory even though it prints as a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: GAtom,
    pub rule: Rule,
    pub premises: Vec<Arc<Derivation>>,
}

impl Derivation {
    pub fn leaf(rule: Rule, conclusion: GAtom) -> Arc<Derivation> {
        Arc::new(Derivation {
            conclusion,
            rule,
            premises: Vec::new(),
        })
    }

    pub fn node(rule: Rule, conclusion: GAtom, premises: Vec<Arc<Derivation>>) -> Arc<Derivation> {
        Arc::new(Derivation {
            conclusion,
            rule,
            premises,
        })
    }

    /// Number of nodes in the printed tree.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        writeln!(f, "{:indent$}{}: {}", "", self.rule, self.conclusion, indent = 2 * depth)?;
        for p in &self.premises {
            p.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

/// One node per line as `rule: conclusion`; children indented two spaces.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// A two-row team over `{0, 1}`: row 0 is all zeros, row 1 is 1 exactly on
/// `differing`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterModel {
    pub team: Team,
    pub differing: VarSet,
}

impl CounterModel {
    pub fn new(universe: &VarSet, differing: VarSet) -> CounterModel {
        CounterModel {
            team: two_row_team(universe, &differing),
            differing,
        }
    }
}

fn two_row_team(universe: &VarSet, differing: &VarSet) -> Team {
    let zero = Value::new("0").unwrap();
    let one = Value::new("1").unwrap();
    let columns: Vec<Variable> = universe.iter().cloned().collect();
    let row0 = vec![zero.clone(); columns.len()];
    let row1 = columns
        .iter()
        .map(|v| if differing.contains(v) { one.clone() } else { zero.clone() })
        .collect();
    Team::new(columns, vec![row0, row1]).expect("universe has distinct variables")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Derivation(Arc<Derivation>),
    CounterModel(CounterModel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentResult {
    pub witness: Witness,
}

impl EntailmentResult {
    pub fn verdict(&self) -> bool {
        matches!(self.witness, Witness::Derivation(_))
    }

    pub fn derivation(&self) -> Option<&Arc<Derivation>> {
        match &self.witness {
            Witness::Derivation(d) => Some(d),
            Witness::CounterModel(_) => None,
        }
    }

    pub fn counter_model(&self) -> Option<&CounterModel> {
        match &self.witness {
            Witness::CounterModel(m) => Some(m),
            Witness::Derivation(_) => None,
        }
    }
}

/// Why a variable entered the reach set.
#[derive(Debug, Clone)]
enum Reason {
    Seed,
    /// Index into the canonical atom list of the single-antecedent premises.
    Fired(usize),
}

/// Least fixpoint of the single-antecedent premises above a seed set,
/// together with the reason each member was added.
struct Reach {
    members: VarSet,
    reasons: HashMap<Variable, Reason>,
}

fn compute_reach(atoms: &[&GAtom], seed: &VarSet) -> Reach {
    let mut reasons: HashMap<Variable, Reason> = HashMap::new();
    let mut members = VarSet::new();
    let mut queue: VecDeque<Variable> = VecDeque::new();

    // missing[k]: rhs members of atom k not yet in the set
    let mut missing: Vec<usize> = atoms.iter().map(|a| a.rhs().len()).collect();
    let mut watchers: HashMap<&Variable, Vec<usize>> = HashMap::new();
    for (k, a) in atoms.iter().enumerate() {
        for z in a.rhs() {
            watchers.entry(z).or_default().push(k);
        }
    }

    let mut add = |v: &Variable, why: Reason, members: &mut VarSet, queue: &mut VecDeque<Variable>| {
        if members.insert(v.clone()) {
            reasons.insert(v.clone(), why);
            queue.push_back(v.clone());
        }
    };

    for v in seed {
        add(v, Reason::Seed, &mut members, &mut queue);
    }
    for (k, a) in atoms.iter().enumerate() {
        if missing[k] == 0 {
            let u = a.single_antecedent().expect("single-antecedent premise");
            add(u, Reason::Fired(k), &mut members, &mut queue);
        }
    }
    while let Some(v) = queue.pop_front() {
        if let Some(ks) = watchers.get(&v) {
            for &k in ks {
                missing[k] -= 1;
                if missing[k] == 0 {
                    let u = atoms[k].single_antecedent().expect("single-antecedent premise");
                    add(u, Reason::Fired(k), &mut members, &mut queue);
                }
            }
        }
    }
    Reach { members, reasons }
}

fn require_single_antecedent(sigma1: &AtomSet) -> Result<()> {
    match sigma1.iter().find(|a| a.single_antecedent().is_none()) {
        Some(a) => Err(Error::Contract(format!("`{a}` does not have a single antecedent"))),
        None => Ok(()),
    }
}

/// The least `S ⊆ universe` containing `seed` such that `u ∈ S` whenever
/// `⋈(u, Z) ∈ sigma1` and `Z ⊆ S`. `⋈(v, seed)` is derivable iff `v ∈ S`.
pub fn reach_set(sigma1: &AtomSet, seed: &VarSet, universe: &VarSet) -> Result<VarSet> {
    require_single_antecedent(sigma1)?;
    if !seed.is_subset(universe) || !sigma1.variables().is_subset(universe) {
        return Err(Error::Contract("seed and premise variables must lie in the universe".into()));
    }
    let atoms: Vec<&GAtom> = sigma1.iter().collect();
    Ok(compute_reach(&atoms, seed).members)
}

/// Decides `Σ ⊢ σ` and returns a derivation or a two-row counter-model.
pub fn entails(sigma: &AtomSet, goal: &GAtom) -> EntailmentResult {
    Prover::new(sigma).prove(goal)
}

/// Single-antecedent view of a premise set, with the original premise each
/// normalized atom came from.
struct Prover<'a> {
    sigma: &'a AtomSet,
    atoms: Vec<GAtom>,
    sources: Vec<&'a GAtom>,
}

impl<'a> Prover<'a> {
    fn new(sigma: &'a AtomSet) -> Self {
        let mut source_of: HashMap<GAtom, &'a GAtom> = HashMap::new();
        for original in sigma {
            for part in normalize(original) {
                let direct = original.lhs().len() == 1;
                match source_of.get(&part) {
                    Some(prev) if prev.lhs().len() == 1 || !direct => {}
                    _ => {
                        source_of.insert(part, original);
                    }
                }
            }
        }
        let atoms: Vec<GAtom> = normalize_set(sigma).into_iter().collect();
        let sources = atoms.iter().map(|a| source_of[a]).collect();
        Prover {
            sigma,
            atoms,
            sources,
        }
    }

    fn reach(&self, seed: &VarSet) -> Reach {
        let refs: Vec<&GAtom> = self.atoms.iter().collect();
        compute_reach(&refs, seed)
    }

    fn prove(&self, goal: &GAtom) -> EntailmentResult {
        if goal.lhs().is_empty() {
            return EntailmentResult {
                witness: Witness::Derivation(Derivation::leaf(Rule::A0, goal.clone())),
            };
        }
        let universe = self.sigma.variables().union(&goal.variables());
        let mut parts = Vec::with_capacity(goal.lhs().len());
        for xi in goal.lhs() {
            let target = goal.lhs().without(xi).union(goal.rhs());
            let reach = self.reach(&target);
            if !reach.members.contains(xi) {
                let differing = universe.difference(&reach.members);
                return EntailmentResult {
                    witness: Witness::CounterModel(CounterModel::new(&universe, differing)),
                };
            }
            let mut memo = HashMap::new();
            parts.push(self.derive_member(xi, &target, &reach, &mut memo));
        }
        let derivation = if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Derivation::node(Rule::R0Prime, goal.clone(), parts)
        };
        EntailmentResult {
            witness: Witness::Derivation(derivation),
        }
    }

    /// Derivation of the normalized premise `self.atoms[k]` from Σ.
    fn premise(&self, k: usize) -> Arc<Derivation> {
        let atom = &self.atoms[k];
        let source = self.sources[k];
        if source == atom {
            Derivation::leaf(Rule::Premise, atom.clone())
        } else {
            Derivation::node(
                Rule::R0,
                atom.clone(),
                vec![Derivation::leaf(Rule::Premise, source.clone())],
            )
        }
    }

    /// Derivation of `⋈(v, target)` for a member `v` of the reach set of `target`.
    fn derive_member(
        &self,
        v: &Variable,
        target: &VarSet,
        reach: &Reach,
        memo: &mut HashMap<Variable, Arc<Derivation>>,
    ) -> Arc<Derivation> {
        if let Some(d) = memo.get(v) {
            return d.clone();
        }
        let conclusion = GAtom::new(VarSet::singleton(v.clone()), target.clone());
        let d = match reach.reasons[v] {
            Reason::Seed => {
                let single = VarSet::singleton(v.clone());
                let axiom = Derivation::leaf(Rule::A1, GAtom::new(single.clone(), single.clone()));
                if *target == single {
                    axiom
                } else {
                    Derivation::node(Rule::R1, conclusion, vec![axiom])
                }
            }
            Reason::Fired(k) => {
                let via = &self.atoms[k];
                let premise = self.premise(k);
                if via.rhs().is_empty() {
                    if target.is_empty() {
                        premise
                    } else {
                        Derivation::node(Rule::R1, conclusion, vec![premise])
                    }
                } else {
                    let mut children: Vec<Arc<Derivation>> = via
                        .rhs()
                        .iter()
                        .map(|z| self.derive_member(z, target, reach, memo))
                        .collect();
                    children.push(premise);
                    Derivation::node(Rule::R2, conclusion, children)
                }
            }
        };
        memo.insert(v.clone(), d.clone());
        d
    }
}

/// A rejected derivation step: the child-index path from the root and what
/// was wrong there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidStep {
    pub path: Vec<usize>,
    pub message: String,
}

impl fmt::Display for InvalidStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
        write!(f, "at /{}: {}", path.join("/"), self.message)
    }
}

/// Checks that every node instantiates its rule and every premise leaf is in `sigma`.
pub fn check_derivation(sigma: &AtomSet, d: &Derivation) -> Result<(), InvalidStep> {
    let mut seen = HashSet::new();
    let mut path = Vec::new();
    check_node(sigma, d, &mut path, &mut seen)
}

fn check_node(
    sigma: &AtomSet,
    d: &Derivation,
    path: &mut Vec<usize>,
    seen: &mut HashSet<*const Derivation>,
) -> Result<(), InvalidStep> {
    if !seen.insert(d as *const Derivation) {
        return Ok(());
    }
    check_step(sigma, d).map_err(|message| InvalidStep {
        path: path.clone(),
        message,
    })?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(sigma, p, path, seen)?;
        path.pop();
    }
    Ok(())
}

fn check_step(sigma: &AtomSet, d: &Derivation) -> std::result::Result<(), String> {
    let c = &d.conclusion;
    let prem: Vec<&GAtom> = d.premises.iter().map(|p| &p.conclusion).collect();
    let arity = |n: usize| {
        if prem.len() == n {
            Ok(())
        } else {
            Err(format!("{} expects {n} premise(s), found {}", d.rule, prem.len()))
        }
    };
    match d.rule {
        Rule::Premise => {
            arity(0)?;
            if !sigma.contains(c) {
                return Err(format!("`{c}` is not a declared premise"));
            }
        }
        Rule::A0 => {
            arity(0)?;
            if !c.lhs().is_empty() {
                return Err(format!("A0 needs an empty antecedent, found `{c}`"));
            }
        }
        Rule::A1 => {
            arity(0)?;
            if c.lhs() != c.rhs() {
                return Err(format!("A1 needs equal sides, found `{c}`"));
            }
        }
        Rule::R0 => {
            arity(1)?;
            let p = prem[0];
            let ok = c
                .single_antecedent()
                .is_some_and(|xi| p.lhs().contains(xi) && *c.rhs() == p.lhs().without(xi).union(p.rhs()));
            if !ok {
                return Err(format!("`{c}` is not an R0 instance of `{p}`"));
            }
        }
        Rule::R0Prime => {
            let expected = normalize(c);
            if c.lhs().is_empty() {
                return Err("R0' needs a nonempty antecedent".into());
            }
            arity(expected.len())?;
            let got: AtomSet = prem.iter().map(|p| (*p).clone()).collect();
            if got != expected || got.len() != prem.len() {
                return Err(format!("premises do not split `{c}` by R0'"));
            }
        }
        Rule::R1 => {
            arity(1)?;
            let p = prem[0];
            if p.lhs() != c.lhs() || !p.rhs().is_subset(c.rhs()) {
                return Err(format!("`{c}` does not weaken `{p}` by R1"));
            }
        }
        Rule::R2 => {
            let Some((last, rest)) = prem.split_last() else {
                return Err("R2 needs at least one premise".into());
            };
            let x0 = c
                .single_antecedent()
                .ok_or_else(|| format!("R2 concludes a single-antecedent atom, found `{c}`"))?;
            if last.single_antecedent() != Some(x0) {
                return Err(format!("last premise `{last}` must have antecedent `{x0}`"));
            }
            let z = last.rhs();
            if rest.len() != z.len() {
                return Err(format!("R2 expects {} side premise(s), found {}", z.len(), rest.len()));
            }
            let mut covered = VarSet::new();
            for p in rest {
                let zi = p
                    .single_antecedent()
                    .ok_or_else(|| format!("side premise `{p}` must have a single antecedent"))?;
                if p.rhs() != c.rhs() || !z.contains(zi) {
                    return Err(format!("side premise `{p}` does not fit `{c}`"));
                }
                covered.insert(zi.clone());
            }
            if covered != *z {
                return Err(format!("side premises do not cover `{z}`"));
            }
        }
    }
    Ok(())
}

/// Largest variable count [`semantic_oracle`] enumerates.
pub const ORACLE_MAX_VARIABLES: usize = 20;

/// Brute-force entailment over two-row binary teams, which suffice as
/// counter-models. Uses only [`check_gdep`].
pub fn semantic_oracle(sigma: &AtomSet, goal: &GAtom) -> Result<bool> {
    let universe = sigma.variables().union(&goal.variables());
    let n = universe.len();
    if n > ORACLE_MAX_VARIABLES {
        return Err(Error::size("semantic oracle (variables)", ORACLE_MAX_VARIABLES as u128, n as u128));
    }
    let vars: Vec<&Variable> = universe.iter().collect();
    for mask in 0u32..1 << n {
        let differing: VarSet = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vars[i].clone())
            .collect();
        let team = two_row_team(&universe, &differing);
        let mut satisfies_sigma = true;
        for a in sigma {
            if !check_gdep(&team, a.lhs(), a.rhs())? {
                satisfies_sigma = false;
                break;
            }
        }
        if satisfies_sigma && !check_gdep(&team, goal.lhs(), goal.rhs())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default bound on universe size for closure and Armstrong construction.
pub const DEFAULT_UNIVERSE_BOUND: usize = 12;

/// Every single-antecedent atom `⋈(v, W)` over `universe` derivable from `sigma`.
pub fn deductive_closure(sigma: &AtomSet, universe: &VarSet, bound: usize) -> Result<AtomSet> {
    if universe.len() > bound {
        return Err(Error::size("deductive closure (universe)", bound as u128, universe.len() as u128));
    }
    let prover = Prover::new(sigma);
    let mut out = AtomSet::new();
    for target in universe.subsets() {
        let reach = prover.reach(&target);
        for v in reach.members.intersection(universe) {
            out.insert(GAtom::new(VarSet::singleton(v), target.clone()));
        }
    }
    Ok(out)
}

/// Reach set of `seed` under the normalized form of `sigma`, for callers
/// holding arbitrary premise sets.
pub(crate) fn derivable_from(sigma: &AtomSet) -> impl Fn(&VarSet) -> VarSet + '_ {
    let prover = Prover::new(sigma);
    move |seed| prover.reach(seed).members
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(names: &[&str]) -> VarSet {
        VarSet::from_names(names.iter().copied()).unwrap()
    }

    fn g(lhs: &[&str], rhs: &[&str]) -> GAtom {
        GAtom::new(vs(lhs), vs(rhs))
    }

    fn set(atoms: &[GAtom]) -> AtomSet {
        atoms.iter().cloned().collect()
    }

    #[test]
    fn reach_set_examples() {
        let abc = vs(&["a", "b", "c"]);
        let s = set(&[g(&["b"], &["c"])]);
        assert_eq!(reach_set(&s, &vs(&["c"]), &abc).unwrap(), vs(&["b", "c"]));
        assert_eq!(reach_set(&AtomSet::new(), &vs(&["x"]), &vs(&["x"])).unwrap(), vs(&["x"]));
        let s = set(&[g(&["u"], &[])]);
        assert_eq!(reach_set(&s, &vs(&[]), &vs(&["u"])).unwrap(), vs(&["u"]));
    }

    #[test]
    fn reach_set_rejects_compound_premises() {
        let s = set(&[g(&["a", "b"], &["c"])]);
        assert!(matches!(
            reach_set(&s, &vs(&[]), &vs(&["a", "b", "c"])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn transitivity_through_r2() {
        let s = set(&[g(&["a"], &["b"]), g(&["b"], &["c"])]);
        let r = entails(&s, &g(&["a"], &["c"]));
        let d = r.derivation().expect("derivable");
        assert_eq!(d.rule, Rule::R2);
        check_derivation(&s, d).unwrap();
        assert_eq!(
            d.to_string(),
            "R2: gdep(a ; c)\n  R2: gdep(b ; c)\n    A1: gdep(c ; c)\n    Premise: gdep(b ; c)\n  Premise: gdep(a ; b)\n"
        );
    }

    #[test]
    fn compound_premise_counter_model() {
        let s = set(&[g(&["a", "b"], &["c"])]);
        let r = entails(&s, &g(&["a"], &["c"]));
        let m = r.counter_model().expect("not derivable");
        assert_eq!(m.differing, vs(&["a", "b"]));
        assert_eq!(m.team.to_csv_string(), "a,b,c\n0,0,0\n1,1,0\n");
    }

    #[test]
    fn axioms() {
        let d = entails(&AtomSet::new(), &g(&["x"], &["x"]));
        assert_eq!(d.derivation().unwrap().rule, Rule::A1);
        let d = entails(&AtomSet::new(), &g(&[], &["y"]));
        assert_eq!(d.derivation().unwrap().rule, Rule::A0);
    }

    #[test]
    fn derivation_checker_rejects_bad_templates() {
        assert!(check_derivation(&AtomSet::new(), &Derivation::leaf(Rule::A1, g(&["x"], &["x"]))).is_ok());
        let bad = Derivation::leaf(Rule::A1, g(&["x"], &["y"]));
        assert!(check_derivation(&AtomSet::new(), &bad).is_err());
        let bad = Derivation::leaf(Rule::Premise, g(&["x"], &["y"]));
        assert!(check_derivation(&AtomSet::new(), &bad).is_err());

        // R1 that drops a variable, nested one level down
        let inner = Derivation::node(
            Rule::R1,
            g(&["x"], &[]),
            vec![Derivation::leaf(Rule::A1, g(&["x"], &["x"]))],
        );
        let outer = Derivation::node(Rule::R1, g(&["x"], &["y"]), vec![inner]);
        let err = check_derivation(&AtomSet::new(), &outer).unwrap_err();
        assert_eq!(err.path, vec![0]);
    }

    #[test]
    fn oracle_examples() {
        assert!(semantic_oracle(&AtomSet::new(), &g(&[], &[])).unwrap());
        let s = set(&[g(&["a"], &[])]);
        assert!(!semantic_oracle(&s, &g(&["b"], &["a"])).unwrap());
        let m = entails(&s, &g(&["b"], &["a"]));
        assert_eq!(m.counter_model().unwrap().differing, vs(&["b"]));
    }

    #[test]
    fn oracle_guard() {
        let names: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let goal = GAtom::new(VarSet::from_names(names).unwrap(), VarSet::new());
        assert!(semantic_oracle(&AtomSet::new(), &goal).unwrap_err().is_size());
    }

    #[test]
    fn closure_examples() {
        let c = deductive_closure(&AtomSet::new(), &vs(&["a"]), 12).unwrap();
        assert_eq!(c, set(&[g(&["a"], &["a"])]));

        let s = set(&[g(&["a"], &["b"])]);
        let ab = vs(&["a", "b"]);
        let c = deductive_closure(&s, &ab, 12).unwrap();
        for a in [
            g(&["a"], &["b"]),
            g(&["a"], &["a", "b"]),
            g(&["a"], &["a"]),
            g(&["b"], &["b"]),
            g(&["b"], &["a", "b"]),
        ] {
            assert!(c.contains(&a), "{a}");
        }
        assert!(!c.contains(&g(&["b"], &["a"])));
        assert_eq!(deductive_closure(&c, &ab, 12).unwrap(), c);
        assert!(deductive_closure(&s, &ab, 1).unwrap_err().is_size());
    }
}
