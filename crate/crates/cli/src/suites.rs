//! Property suites behind `redei verify`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use redei_berge::combinatorics::{permutations, Permutation};
use redei_berge::digraph::Digraph;
use redei_berge::hopf::{
    apply_f, apply_f_tensor, apply_g, apply_g_tensor, character, hopf_coproduct, hopf_product,
    psi, psi_of_digraph, DigraphClasses, FreeModuleElement, Permutations, Posets, Species,
    TensorElement,
};
use redei_berge::order::{enumerate_posets, permutation_to_json, Poset};
use redei_berge::qsym::{f_to_m, p_to_m};
use redei_berge::redei::{
    cycle_deletion_expansion, deletion_expansion, is_p_positive, sum_expansion, u_of_perm,
    u_of_poset, u_via_cycles, u_via_listings,
};
use redei_berge::{Error, Result};

pub const SUITES: &[&str] = &[
    "oracle",
    "dual",
    "loops",
    "deletion",
    "k-deletion",
    "redei",
    "berge",
    "hopf-axioms",
    "morphisms",
    "p-positivity",
];

pub struct SuiteConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
}

pub struct SuiteOutcome {
    pub checked: usize,
    pub failure: Option<Value>,
}

impl SuiteOutcome {
    fn pass(checked: usize) -> Self {
        SuiteOutcome {
            checked,
            failure: None,
        }
    }

    fn fail(checked: usize, counterexample: Value) -> Self {
        SuiteOutcome {
            checked,
            failure: Some(counterexample),
        }
    }
}

pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, loops: bool) -> Digraph {
    let masks = (0..n)
        .map(|u| {
            let mut m = rng.gen::<u64>() & ((1u64 << n) - 1);
            if !loops {
                m &= !(1 << u);
            }
            m
        })
        .collect();
    Digraph::from_masks(masks).expect("masks inside [n]")
}

fn loopless_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|bits| {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Digraph::new(n, &e).expect("distinct pairs")
        })
        .collect()
}

/// Every loopless digraph for `n ≤ 4`, otherwise seeded samples with loops.
pub fn population(cfg: &SuiteConfig) -> Vec<Digraph> {
    if cfg.n <= 4 {
        loopless_digraphs(cfg.n)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..cfg.samples).map(|_| random_digraph(&mut rng, cfg.n, true)).collect()
    }
}

fn tournaments(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|bits| {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| if bits >> i & 1 == 1 { (u, v) } else { (v, u) })
                .collect();
            Digraph::new(n, &e).expect("one orientation per pair")
        })
        .collect()
}

fn for_population<F>(cfg: &SuiteConfig, mut check: F) -> Result<SuiteOutcome>
where
    F: FnMut(&Digraph) -> Result<bool>,
{
    let pop = population(cfg);
    for (i, x) in pop.iter().enumerate() {
        if !check(x)? {
            return Ok(SuiteOutcome::fail(i + 1, json!({"digraph": x.to_json()})));
        }
    }
    Ok(SuiteOutcome::pass(pop.len()))
}

fn check_species<S: Species>(objs: &[S::Obj], max_deg: usize, to_json: impl Fn(&S::Obj) -> Value) -> Result<Option<Value>> {
    for o in objs {
        let e = FreeModuleElement::<S>::basis(o.clone())?;
        let d = hopf_coproduct(&e)?;
        if d.coproduct_at(0)? != d.coproduct_at(1)? {
            return Ok(Some(json!({"coassociativity": to_json(o)})));
        }
        if d.apply_counit_at(0) != TensorElement::from_element(&e) {
            return Ok(Some(json!({"counit": to_json(o)})));
        }
    }
    for a in objs {
        for b in objs {
            if S::degree(a) + S::degree(b) > max_deg {
                continue;
            }
            let x = FreeModuleElement::<S>::basis(a.clone())?;
            let y = FreeModuleElement::<S>::basis(b.clone())?;
            let xy = hopf_product(&x, &y)?;
            if character(&xy)? != character(&x)? * character(&y)? {
                return Ok(Some(json!({"multiplicativity": [to_json(a), to_json(b)]})));
            }
            if hopf_coproduct(&xy)? != hopf_coproduct(&x)?.mul(&hopf_coproduct(&y)?)? {
                return Ok(Some(json!({"compatibility": [to_json(a), to_json(b)]})));
            }
        }
    }
    Ok(None)
}

fn digraph_classes(n: usize) -> Result<Vec<Digraph>> {
    let mut out = Vec::new();
    for bits in 0u64..1 << (n * n) {
        let masks = (0..n).map(|u| bits >> (u * n) & ((1 << n) - 1)).collect();
        out.push(Digraph::from_masks(masks)?.canonical_form()?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    match name {
        "oracle" => for_population(cfg, |x| {
            let a = f_to_m(&u_via_listings(x)?);
            let b = p_to_m(&u_via_cycles(x)?)?;
            Ok(a == b && a == psi_of_digraph(x)?)
        }),
        "dual" => for_population(cfg, |x| Ok(u_via_cycles(x)? == u_via_cycles(&x.opposite())?)),
        "loops" => for_population(cfg, |x| {
            let u = u_via_cycles(x)?;
            for v in 1..=x.n() {
                if u_via_cycles(&x.toggle_loop(v)?)? != u {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        "berge" => for_population(cfg, |x| {
            Ok(x.count_hamiltonian_paths()? % 2 == x.complement().count_hamiltonian_paths()? % 2)
        }),
        "redei" => {
            let mut checked = 0;
            for n in 1..=cfg.n {
                let mut classes: Vec<Digraph> = tournaments(n)
                    .into_iter()
                    .map(|t| t.canonical_form())
                    .collect::<Result<_>>()?;
                classes.sort();
                classes.dedup();
                for t in classes {
                    checked += 1;
                    if t.count_hamiltonian_paths()? % 2 == 0 {
                        return Ok(SuiteOutcome::fail(checked, json!({"tournament": t.to_json()})));
                    }
                }
            }
            Ok(SuiteOutcome::pass(checked))
        }
        "deletion" => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let cells: Vec<(usize, usize)> = (1..=cfg.n)
                .flat_map(|u| (1..=cfg.n).map(move |v| (u, v)))
                .collect();
            let mut checked = 0;
            while checked < cfg.samples {
                let k = rng.gen_range(1..=cells.len().min(8));
                let edges: Vec<_> = cells.choose_multiple(&mut rng, k).copied().collect();
                let x = Digraph::new(cfg.n, &edges)?;
                if x.is_disjoint_union_of_paths() {
                    continue;
                }
                checked += 1;
                let u = p_to_m(&u_via_cycles(&x)?)?;
                if sum_expansion(&deletion_expansion(&x)?)? != u {
                    return Ok(SuiteOutcome::fail(checked, json!({"digraph": x.to_json()})));
                }
            }
            Ok(SuiteOutcome::pass(checked))
        }
        "k-deletion" => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut checked = 0;
            for k in 2..=cfg.n.min(4) {
                for _ in 0..cfg.samples {
                    let mut x = random_digraph(&mut rng, cfg.n, true);
                    let mut verts: Vec<usize> = (1..=cfg.n).collect();
                    verts.shuffle(&mut rng);
                    let cycle = &verts[..k];
                    for i in 0..k {
                        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
                        if !x.has_edge(u, v) {
                            x = x.with_edge(u, v)?;
                        }
                    }
                    checked += 1;
                    let u = p_to_m(&u_via_cycles(&x)?)?;
                    if sum_expansion(&cycle_deletion_expansion(&x, cycle)?)? != u {
                        return Ok(SuiteOutcome::fail(
                            checked,
                            json!({"digraph": x.to_json(), "cycle": cycle}),
                        ));
                    }
                }
            }
            Ok(SuiteOutcome::pass(checked))
        }
        "hopf-axioms" => {
            let deg = cfg.n.min(4);
            let mut checked = 0;
            let digraphs: Vec<Digraph> = (0..=deg.min(3))
                .map(digraph_classes)
                .collect::<Result<Vec<_>>>()?
                .concat();
            checked += digraphs.len();
            if let Some(f) = check_species::<DigraphClasses>(&digraphs, deg, |x| x.to_json())? {
                return Ok(SuiteOutcome::fail(checked, f));
            }
            let posets: Vec<Poset> = (0..=deg)
                .map(|n| enumerate_posets(n, false))
                .collect::<Result<Vec<_>>>()?
                .concat();
            checked += posets.len();
            if let Some(f) = check_species::<Posets>(&posets, deg, |p| p.to_json())? {
                return Ok(SuiteOutcome::fail(checked, f));
            }
            let perms: Vec<Permutation> = (0..=deg).flat_map(permutations).collect();
            checked += perms.len();
            if let Some(f) = check_species::<Permutations>(&perms, deg, |s| permutation_to_json(s))? {
                return Ok(SuiteOutcome::fail(checked, f));
            }
            Ok(SuiteOutcome::pass(checked))
        }
        "morphisms" => {
            let deg = cfg.n.min(5);
            let mut checked = 0;
            for s in (0..=deg).flat_map(permutations) {
                checked += 1;
                let e = FreeModuleElement::<Permutations>::basis(s.clone())?;
                let fe = apply_f(&e);
                let ok = character(&e)? == character(&fe)?
                    && apply_f_tensor(&hopf_coproduct(&e)?) == hopf_coproduct(&fe)?
                    && psi(&e)? == f_to_m(&u_of_perm(&s)?.fundamental);
                if !ok {
                    return Ok(SuiteOutcome::fail(checked, json!({"permutation": permutation_to_json(&s)})));
                }
            }
            for n in 0..=deg {
                for p in enumerate_posets(n, false)? {
                    checked += 1;
                    let e = FreeModuleElement::<Posets>::basis(p.clone())?;
                    let ge = apply_g(&e)?;
                    let u = f_to_m(&u_of_poset(&p)?.fundamental);
                    let ok = character(&e)? == character(&ge)?
                        && apply_g_tensor(&hopf_coproduct(&e)?)? == hopf_coproduct(&ge)?
                        && psi(&ge)? == u
                        && psi(&e)? == u;
                    if !ok {
                        return Ok(SuiteOutcome::fail(checked, json!({"poset": p.to_json()})));
                    }
                }
            }
            Ok(SuiteOutcome::pass(checked))
        }
        "p-positivity" => {
            let mut checked = 0;
            for n in 1..=cfg.n.min(4) {
                for x in loopless_digraphs(n).into_iter().filter(Digraph::is_acyclic) {
                    checked += 1;
                    if !is_p_positive(&u_via_cycles(&x)?) {
                        return Ok(SuiteOutcome::fail(checked, json!({"digraph": x.to_json()})));
                    }
                }
            }
            for n in 1..=cfg.n.min(5) {
                for p in enumerate_posets(n, false)? {
                    checked += 1;
                    if !is_p_positive(&u_of_poset(&p)?.power_sum) {
                        return Ok(SuiteOutcome::fail(checked, json!({"poset": p.to_json()})));
                    }
                }
                for s in permutations(n) {
                    checked += 1;
                    if !is_p_positive(&u_of_perm(&s)?.power_sum) {
                        return Ok(SuiteOutcome::fail(checked, json!({"permutation": permutation_to_json(&s)})));
                    }
                }
            }
            Ok(SuiteOutcome::pass(checked))
        }
        other => Err(Error::Validation(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}
