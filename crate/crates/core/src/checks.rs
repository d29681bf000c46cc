//! Named end-to-end checks of the finite claims the library reproduces.
//! Shared by the `acceptance` test target and `powham check`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::absorbing::{connect_2path, Connection, GoodnessThreshold};
use crate::bounds::{extremal_total_min_degree, goodness_bound, gk_semi_degree_bound};
use crate::constructions::{
    clique_minus_matching, d_r, extremal_total, f_r, gk, paley, power_cycle, random_digraph,
};
use crate::digraph::{Digraph, DigraphBuilder};
use crate::pipeline::{heuristic_ham_power, HeuristicOutcome, HeuristicParams};
use crate::scalar::Rational;
use crate::solver::certificate::naive_ham_power_exists;
use crate::solver::scan::{automorphism_count, isomorphic, tournament_from_index, transitive_free_indices};
use crate::solver::{
    embed, find_ham_power, is_k_path, ramsey_scan, tiling_scan, validate_certificate, Mode, Outcome, RamseyScan,
    SearchBudget, TilingScan,
};
use crate::{rng_for, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckInfo {
    pub id: u8,
    pub name: &'static str,
    pub summary: &'static str,
}

pub const CHECKS: [CheckInfo; 10] = [
    CheckInfo {
        id: 1,
        name: "ramsey",
        summary: "tournament Ramsey values 2 and 4; Paley(7) is the only T_4-free class on 7 vertices",
    },
    CheckInfo {
        id: 2,
        name: "tiling",
        summary: "every 6-tournament has a T_3-factor; C_3 is the 3-vertex counterexample",
    },
    CheckInfo {
        id: 3,
        name: "extremal-total",
        summary: "extremal total-degree digraphs: degree formula, no k-cycle, spanning k-path",
    },
    CheckInfo {
        id: 4,
        name: "gk",
        summary: "G_2 for t = 1, 2: semi-degree bound and no spanning square cycle",
    },
    CheckInfo {
        id: 5,
        name: "cyclic-tournaments",
        summary: "F_2 and D_r containments of k-cycles",
    },
    CheckInfo {
        id: 6,
        name: "clique-minus-matching",
        summary: "k-cycle containment in complete digraphs minus a matching",
    },
    CheckInfo {
        id: 7,
        name: "oracle",
        summary: "exact solver agrees with brute force on all small digraphs and 5-tournaments",
    },
    CheckInfo {
        id: 8,
        name: "connector",
        summary: "2-path connectors on dense random digraphs",
    },
    CheckInfo {
        id: 9,
        name: "heuristic",
        summary: "absorbing heuristic on complete, random and extremal hosts",
    },
    CheckInfo {
        id: 10,
        name: "goodness",
        summary: "goodness threshold arithmetic in exact and floating scalars",
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

/// Looks a check up by name or numeric id.
pub fn find_check(key: &str) -> Option<CheckInfo> {
    CHECKS
        .iter()
        .copied()
        .find(|c| c.name == key || c.id.to_string() == key)
}

pub fn run_check(info: CheckInfo) -> CheckOutcome {
    let start = Instant::now();
    let result = match info.id {
        1 => ramsey(),
        2 => tiling(),
        3 => extremal(),
        4 => gk_check(),
        5 => cyclic_tournaments(),
        6 => clique_matching(),
        7 => oracle(),
        8 => connector(),
        9 => heuristic(),
        10 => goodness(),
        _ => Err(format!("unknown check id {}", info.id)),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        id: info.id,
        name: info.name,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

type CheckResult = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ramsey() -> CheckResult {
    for (k, want) in [(2, 2), (3, 4)] {
        let r = ramsey_scan(k, 7).map_err(err)?;
        ensure(r == RamseyScan::Determined { value: want }, || {
            format!("ramsey_scan({k}, 7) = {r:?}, expected {want}")
        })?;
    }
    let p7 = paley(7).map_err(err)?;
    let RamseyScan::NotDetermined {
        witness, free_count, ..
    } = ramsey_scan(4, 7).map_err(err)?
    else {
        return Err("ramsey_scan(4, 7) claims every 7-tournament contains T_4".into());
    };
    ensure(isomorphic(&witness, &p7), || "lowest T_4-free witness is not Paley(7)".into())?;
    let free = transitive_free_indices(4, 7).map_err(err)?;
    ensure(free.len() as u64 == free_count, || "free counts disagree".into())?;
    let expected = 5040 / automorphism_count(&p7);
    ensure(free.len() == expected, || {
        format!("{} T_4-free labelled 7-tournaments, expected 7!/|Aut| = {expected}", free.len())
    })?;
    for &i in &free {
        let t = tournament_from_index(7, i);
        let prof = t.degree_profile();
        ensure(prof.min_semi_degree == 3, || format!("T_4-free tournament {i} is not regular"))?;
        ensure(isomorphic(&t, &p7), || format!("T_4-free tournament {i} is not Paley(7)"))?;
    }
    Ok(format!(
        "r(2) = 2, r(3) = 4, r(4) > 7; {} T_4-free labelled 7-tournaments, all regular copies of Paley(7)",
        free.len()
    ))
}

fn tiling() -> CheckResult {
    let r = tiling_scan(3, 6).map_err(err)?;
    ensure(r == TilingScan::AllTile { checked: 1 << 15 }, || {
        format!("tiling_scan(3, 6) = {r:?}")
    })?;
    match tiling_scan(3, 3).map_err(err)? {
        TilingScan::Counterexample { tournament, index } => {
            ensure(isomorphic(&tournament, &power_cycle(1, 3).map_err(err)?), || {
                format!("counterexample {index} is not C_3")
            })?;
        }
        other => return Err(format!("tiling_scan(3, 3) = {other:?}")),
    }
    Ok("all 32768 labelled 6-tournaments have a T_3-factor; C_3 has none".into())
}

fn extremal() -> CheckResult {
    let mut cases = 0;
    for k in 2..=3 {
        for n in k + 4..=14 {
            let g = extremal_total(k, n).map_err(err)?;
            let delta = g.degree_profile().min_total_degree;
            let want = extremal_total_min_degree(k, n);
            ensure(delta == want, || format!("k={k} n={n}: δ = {delta}, formula {want}"))?;
            let c = find_ham_power(&g, k, Mode::Cycle, SearchBudget::unlimited()).map_err(err)?;
            ensure(c.outcome == Outcome::Exhausted, || {
                format!("k={k} n={n}: cycle search {}", c.outcome)
            })?;
            let p = find_ham_power(&g, k, Mode::Path, SearchBudget::unlimited()).map_err(err)?;
            ensure(p.outcome == Outcome::Found, || format!("k={k} n={n}: path search {}", p.outcome))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} hosts: degree formula exact, cycle EXHAUSTED, path FOUND"))
}

fn gk_check() -> CheckResult {
    let mut notes = Vec::new();
    for t in [1, 2] {
        let g = gk(2, t, None).map_err(err)?;
        let n = g.n();
        let semi = g.degree_profile().min_semi_degree;
        let bound: Rational = gk_semi_degree_bound(3, n);
        ensure(Rational::from_integer(semi as i64) >= bound, || {
            format!("t={t}: δ⁰ = {semi} below {bound}")
        })?;
        if n == 22 {
            ensure(semi == 8 && bound == Rational::from_integer(8), || {
                format!("n=22: δ⁰ = {semi}, bound {bound}, expected both 8")
            })?;
        }
        let r = find_ham_power(&g, 2, Mode::Cycle, SearchBudget::nodes(1_000_000_000)).map_err(err)?;
        ensure(r.outcome == Outcome::Exhausted, || {
            format!("t={t}: cycle search {} after {} nodes", r.outcome, r.nodes_expanded)
        })?;
        notes.push(format!("n={n} δ⁰={semi} EXHAUSTED in {} nodes", r.nodes_expanded));
    }
    Ok(notes.join("; "))
}

fn cyclic_tournaments() -> CheckResult {
    let f2 = f_r(2).map_err(err)?;
    let prof = f2.degree_profile();
    ensure(
        prof.min_semi_degree == 4 && prof.out_degrees.iter().chain(&prof.in_degrees).all(|&d| d == 4),
        || "F_2 is not 4-regular".into(),
    )?;
    let run = |p: &Digraph, h: &Digraph| embed(p, h, SearchBudget::unlimited()).outcome;
    ensure(run(&power_cycle(2, 5).map_err(err)?, &f2) == Outcome::Exhausted, || {
        "C_5^2 embeds in F_2".into()
    })?;
    ensure(run(&power_cycle(2, 6).map_err(err)?, &d_r(2)) == Outcome::Found, || {
        "C_6^2 does not embed in D_2".into()
    })?;
    ensure(run(&power_cycle(2, 5).map_err(err)?, &d_r(4)) == Outcome::Exhausted, || {
        "C_5^2 embeds in D_4".into()
    })?;
    let mut cases = 0;
    for k in 1..=3 {
        for l in k + 1..=9 {
            let got = run(&power_cycle(k, l).map_err(err)?, &d_r(l));
            let want = if l >= 3 * k { Outcome::Found } else { Outcome::Exhausted };
            ensure(got == want, || format!("C_{l}^{k} in D_{l}: {got}, expected {want}"))?;
            cases += 1;
        }
    }
    Ok(format!("F_2 4-regular and C_5^2-free; {cases} (k, ℓ) pairs match ℓ ≥ 3k"))
}

fn clique_matching() -> CheckResult {
    for k in 2..=4 {
        let r = embed(
            &power_cycle(k, k + 2).map_err(err)?,
            &clique_minus_matching(k + 2).map_err(err)?,
            SearchBudget::unlimited(),
        );
        ensure(r.outcome == Outcome::Found, || format!("k={k}: C_{{k+2}}^k not found"))?;
        let r = embed(
            &power_cycle(k, k + 1).map_err(err)?,
            &clique_minus_matching(k + 1).map_err(err)?,
            SearchBudget::unlimited(),
        );
        ensure(r.outcome == Outcome::Exhausted, || format!("k={k}: C_{{k+1}}^k found"))?;
    }
    Ok("k = 2, 3, 4: C_{k+2}^k embeds, C_{k+1}^k does not".into())
}

/// All `4^6` labelled digraphs on 4 vertices (every pair absent, either
/// single direction or both) and all `2^10` labelled 5-tournaments.
fn oracle() -> CheckResult {
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let mut disagreements = Vec::new();
    let mut with_cycle = 0;
    for code in 0..4usize.pow(6) {
        let mut b = DigraphBuilder::new(4).map_err(err)?;
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let state = (code >> (2 * p)) & 3;
            if state & 1 != 0 {
                b.add_edge(i, j).map_err(err)?;
            }
            if state & 2 != 0 {
                b.add_edge(j, i).map_err(err)?;
            }
        }
        let g = b.build();
        let fast = find_ham_power(&g, 1, Mode::Cycle, SearchBudget::unlimited()).map_err(err)?;
        let naive = naive_ham_power_exists(&g, 1, Mode::Cycle);
        with_cycle += naive as usize;
        if fast.is_found() != naive || fast.outcome == Outcome::Budget {
            disagreements.push(format!("4-vertex digraph {code}"));
        }
    }
    let mut square = 0;
    for index in 0..1u64 << 10 {
        let g = tournament_from_index(5, index);
        let fast = find_ham_power(&g, 2, Mode::Cycle, SearchBudget::unlimited()).map_err(err)?;
        let naive = naive_ham_power_exists(&g, 2, Mode::Cycle);
        square += naive as usize;
        if fast.is_found() != naive || fast.outcome == Outcome::Budget {
            disagreements.push(format!("5-tournament {index}"));
        }
    }
    ensure(disagreements.is_empty(), || format!("disagreements: {disagreements:?}"))?;
    Ok(format!(
        "4096 digraphs ({with_cycle} Hamiltonian) and 1024 5-tournaments ({square} with a square cycle) agree"
    ))
}

fn connector() -> CheckResult {
    const N: usize = 30;
    let mut hosts = Vec::new();
    let mut seed = 0u64;
    while hosts.len() < 100 {
        if seed > 1_000_000 {
            return Err(format!("only {} hosts pass the degree filter", hosts.len()));
        }
        let g = random_digraph(N, 0.85, seed).map_err(err)?;
        // δ ≥ 1.6n, compared in integers.
        if 5 * g.degree_profile().min_total_degree >= 8 * N {
            hosts.push((seed, g));
        }
        seed += 1;
    }
    let mut found = 0;
    let mut invalid = Vec::new();
    for (seed, g) in &hosts {
        let mut rng = rng_for(*seed, 7);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let (a, b) = *edges.choose(&mut rng).expect("dense host has edges");
        let (y, z) = loop {
            let (y, z) = edges[rng.gen_range(0..edges.len())];
            if ![a, b].contains(&y) && ![a, b].contains(&z) {
                break (y, z);
            }
        };
        let avoid = VertexSet::new(N);
        match connect_2path(g, a, b, y, z, &avoid, 20, crate::absorbing::connect::DEFAULT_CONNECT_NODES) {
            Ok(Connection::Found(p)) => {
                let ok = p.len() <= 20
                    && p[..2] == [a, b]
                    && p[p.len() - 2..] == [y, z]
                    && is_k_path(g, &p, 2)
                    && {
                        let mut s = p.clone();
                        s.sort_unstable();
                        s.windows(2).all(|w| w[0] != w[1])
                    };
                if ok {
                    found += 1;
                } else {
                    invalid.push(*seed);
                }
            }
            Ok(_) => {}
            Err(e) => return Err(format!("seed {seed}: {e}")),
        }
    }
    ensure(invalid.is_empty(), || format!("invalid connectors on seeds {invalid:?}"))?;
    ensure(found >= 99, || format!("only {found} of 100 connections found"))?;
    Ok(format!("{found} of 100 connections found (hosts drawn from seeds 0..{seed}), all valid"))
}

fn heuristic() -> CheckResult {
    let k = 2;
    let complete = Digraph::complete(100).map_err(err)?;
    let t = heuristic_ham_power(&complete, k, &HeuristicParams::for_k(k));
    let cert = t.certificate.as_ref().ok_or("no certificate on the complete digraph")?;
    ensure(validate_certificate(&complete, cert, Mode::Cycle) == Ok(true), || {
        "invalid certificate on the complete digraph".into()
    })?;
    let mut wins = 0;
    for seed in 0..5 {
        let g = random_digraph(60, 0.9, seed).map_err(err)?;
        let t = heuristic_ham_power(&g, k, &HeuristicParams::for_k(k).with_seed(seed));
        if let Some(cert) = &t.certificate {
            ensure(validate_certificate(&g, cert, Mode::Cycle) == Ok(true), || {
                format!("invalid certificate on random host {seed}")
            })?;
            wins += 1;
        }
    }
    ensure(wins >= 3, || format!("only {wins} of 5 random hosts solved"))?;
    let ext = extremal_total(k, 100).map_err(err)?;
    let t = heuristic_ham_power(&ext, k, &HeuristicParams::for_k(k));
    let stage = match (&t.outcome, &t.certificate) {
        (HeuristicOutcome::Failure { stage }, None) => *stage,
        _ => return Err("extremal host produced a certificate".into()),
    };
    Ok(format!(
        "complete n=100 solved; {wins} of 5 random n=60 hosts solved; extremal n=100 fails at {stage}"
    ))
}

fn goodness() -> CheckResult {
    // Independent recomputation: ((2k−1)δ − k + 1) / (k·2^(2k−1)) · n.
    let direct = |k: i64, delta: Rational, n: i64| {
        ((Rational::from_integer(2 * k - 1) * delta - Rational::from_integer(k - 1))
            / Rational::from_integer(k * (1 << (2 * k - 1))))
            * Rational::from_integer(n)
    };
    for (delta, tau) in [(Rational::new(1, 2), 1usize), (Rational::new(1, 3), 0)] {
        let exact = GoodnessThreshold::new(2, delta, 32);
        ensure(exact.bound() == direct(2, delta, 32), || {
            format!("δ={delta}: bound {} differs from recomputation", exact.bound())
        })?;
        ensure(exact.tau() == tau, || format!("δ={delta}: τ = {}, expected {tau}", exact.tau()))?;
        let float = GoodnessThreshold::new(2, *delta.numer() as f64 / *delta.denom() as f64, 32);
        ensure(float.tau() == tau, || format!("δ={delta}: f64 τ = {}", float.tau()))?;
        ensure(goodness_bound(2, delta, 32) == exact.bound(), || "bound functions disagree".into())?;
    }
    Ok("τ(2, 1/2, 32) = 1 and τ(2, 1/3, 32) = 0 in Ratio<i64> and f64".into())
}
