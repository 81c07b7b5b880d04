//! Acceptance checks. Each criterion prints one PASS/FAIL line with its
//! runtime; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use redwords::oracle::{
    enumerate_reduced_words, enumerate_set_valued, enumerate_skew_syt, exact_expectation,
};
use redwords::perm::{all_permutations, pattern_2143};
use redwords::sampling::{estimate_with_threads, h_sample, y_sample, z_sample};
use redwords::tableaux::partitions_of;
use redwords::transition::{leaf_shapes, TransitionNode, TreeOptions};
use redwords::*;

type Check = std::result::Result<String, String>;

fn perm(text: &str) -> Permutation {
    text.parse().expect("valid permutation literal")
}

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn lib<T>(r: redwords::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn transition_exactness() -> Check {
    let w = perm("5,4,2,7,8,3,1,6");
    let count = lib(count_red_exact(&w))?;
    ensure(count == big(730158), || format!("count {count}, expected 730158"))?;
    let shapes: BTreeSet<Partition> = lib(leaf_shapes(&w, TreeOptions::default()))?
        .into_keys()
        .collect();
    let expected: BTreeSet<Partition> = [
        part(&[4, 3, 3, 3, 1, 1]),
        part(&[4, 4, 3, 2, 1, 1]),
        part(&[5, 4, 2, 2, 1, 1]),
        part(&[5, 3, 3, 2, 1, 1]),
    ]
    .into();
    ensure(shapes == expected, || format!("leaf shapes {shapes:?}"))?;
    Ok("730158 from 4 leaf shapes".into())
}

fn second_running_example() -> Check {
    let count = lib(count_red_exact(&perm("4,3,8,1,7,6,2,5")))?;
    ensure(count == big(2085655), || format!("count {count}, expected 2085655"))?;
    let f = hook_count(&part(&[6, 4, 2, 2, 1]));
    ensure(f == big(243243), || format!("f^(6,4,2,2,1) = {f}"))?;
    Ok("2085655 and 243243".into())
}

fn oracle_equivalence() -> Check {
    let all = all_permutations(6);
    for w in &all {
        let fast = lib(count_red_exact(w))?;
        let slow = lib(enumerate_reduced_words(w))?;
        ensure(fast == slow, || format!("{w}: transition {fast}, oracle {slow}"))?;
    }
    Ok(format!("{} permutations agree", all.len()))
}

fn staircase_identity() -> Check {
    for n in 3..=6 {
        let red = lib(count_red_exact(&Permutation::longest(n)))?;
        let f = hook_count(&Partition::staircase(n));
        ensure(red == f, || format!("n={n}: #Red(w0)={red}, f^delta={f}"))?;
    }
    Ok("n = 3..6".into())
}

fn catalan_identity() -> Check {
    let mut catalan = big(1);
    for n in 1..=10u64 {
        // C_n = C_{n-1} * 2(2n-1)/(n+1)
        catalan = catalan * big(2 * (2 * n - 1)) / big(n + 1);
        let f = hook_count(&Partition::rectangle(2, n as usize));
        ensure(f == catalan, || format!("n={n}: f^(n,n)={f}, C_n={catalan}"))?;
    }
    Ok("n = 1..10".into())
}

fn eg_distribution() -> Check {
    let pattern = pattern_2143();
    let mut eg_one = 0;
    let mut avoiders = 0;
    for w in all_permutations(6) {
        if lib(eg_statistic(&w, transition::DEFAULT_NODE_CAP))? == 1 {
            eg_one += 1;
        }
        if !w.contains_pattern(&pattern) {
            avoiders += 1;
        }
    }
    ensure(eg_one == avoiders, || format!("EG=1 for {eg_one}, 2143-avoiders {avoiders}"))?;
    let mut values = Vec::new();
    for n in 1..=5 {
        let eg = lib(eg_statistic(&Permutation::disjoint_swaps(n), transition::DEFAULT_NODE_CAP))?;
        ensure(big(eg) == involutions(n), || format!("EG(sigma^({n})) = {eg}"))?;
        values.push(eg);
    }
    ensure(values == [1, 2, 4, 10, 26], || format!("EG(sigma^(n)) = {values:?}"))?;
    Ok(format!("{eg_one} vexillary in S_6; EG(sigma^(n)) = {values:?}"))
}

fn tree_invariants() -> Check {
    let pattern = pattern_2143();
    let mut edges = 0u64;
    for w in all_permutations(6) {
        let tree = lib(build_tree(&w, transition::DEFAULT_NODE_CAP))?;
        let mut stack: Vec<&TransitionNode> = vec![&tree];
        while let Some(node) = stack.pop() {
            if let [only] = node.children.as_slice() {
                let before = node.perm.count_pattern(&pattern);
                let after = only.perm.count_pattern(&pattern);
                ensure(after >= before, || {
                    format!("{} -> {}: 2143 count {before} -> {after}", node.perm, only.perm)
                })?;
            }
            edges += node.children.len() as u64;
            stack.extend(node.children.iter());
        }
        let eg = tree.leaves().len() as u64;
        let q = lib(min_branch_depth(&w, transition::DEFAULT_NODE_CAP))?;
        ensure(eg >= 1u64 << q, || format!("{w}: EG {eg} < 2^{q}"))?;
    }
    Ok(format!("720 trees, {edges} edges, no violations"))
}

fn hecke_exactness() -> Check {
    let a = lib(count_hecke_exact(&perm("3,1,5,2,4"), 5))?;
    ensure(a == big(32), || format!("#Hecke(31524, 5) = {a}"))?;
    let b = lib(count_hecke_exact(&perm("3,5,1,6,2,4"), 13))?;
    ensure(b == big(2030964), || format!("#Hecke(351624, 13) = {b}"))?;
    for n in 3..=5usize {
        let w0 = Permutation::longest(n);
        let c = n * (n - 1) / 2;
        let hecke = lib(count_hecke_exact(&w0, c + 1))?;
        let red = lib(count_red_exact(&w0))?;
        // #Hecke = C(C+1)/n * #Red, compared without division
        ensure(&hecke * big(n as u64) == red * big((c * (c + 1)) as u64), || {
            format!("n={n}: #Hecke(w0, {}) = {hecke}", c + 1)
        })?;
    }
    Ok("32, 2030964, w0 identity for n = 3..5".into())
}

fn lenart_path() -> Check {
    for (shape, want) in [(&[2, 2][..], 10u64), (&[3, 1], 17), (&[3, 2], 5)] {
        let got = set_valued_count(&part(shape), 5);
        ensure(got == big(want), || format!("f^({shape:?}),5 = {got}, expected {want}"))?;
    }
    let mut cases = 0;
    for size in 1..=5 {
        for lambda in partitions_of(size) {
            for n in 0..=size + 3 {
                let fast = set_valued_count(&lambda, n);
                let slow = lib(enumerate_set_valued(&SkewShape::straight(lambda.clone()), n))?;
                ensure(fast == big(slow), || format!("{lambda}, N={n}: {fast} vs brute force {slow}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("10, 17, 5; {cases} brute-force cases agree"))
}

fn large_lenart_run() -> Check {
    let value = set_valued_count(&Partition::staircase(100), 4952).to_string();
    ensure(value.len() == 7982, || format!("{} digits", value.len()))?;
    ensure(value.starts_with("375"), || format!("leading digits {}", &value[..6]))?;
    Ok(format!("{} digits, {}.{}... x 10^{}", value.len(), &value[..1], &value[1..4], value.len() - 1))
}

fn skew_determinant() -> Check {
    let shape = lib(SkewShape::parse("12,10,9,9/4,3,3,0"))?;
    let det = skew_det_count(&shape);
    ensure(det == big(73064598262110), || format!("determinant {det}"))?;
    let w = skew_to_permutation(&shape);
    let red = lib(count_red_exact(&w))?;
    ensure(red == det, || format!("#Red({w}) = {red}"))?;
    let mut shapes = 0;
    for outer_size in 1..=10 {
        for outer in partitions_of(outer_size) {
            for inner_size in outer_size.saturating_sub(7)..outer_size {
                for inner in partitions_of(inner_size) {
                    if !outer.contains(&inner) {
                        continue;
                    }
                    let s = lib(SkewShape::new(outer.clone(), inner))?;
                    let det = skew_det_count(&s);
                    let red = lib(count_red_exact(&skew_to_permutation(&s)))?;
                    let syt = lib(enumerate_skew_syt(&s))?;
                    ensure(det == red && red == big(syt), || {
                        format!("{s}: det {det}, #Red {red}, SYT {syt}")
                    })?;
                    shapes += 1;
                }
            }
        }
    }
    Ok(format!("73064598262110 by both paths; {shapes} small skew shapes agree"))
}

fn exact(value: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(value.clone()))
}

fn estimator_unbiasedness() -> Check {
    let mut checked = 0;
    for w in all_permutations(4) {
        let red = lib(count_red_exact(&w))?;
        let ey = lib(exact_expectation(|src| y_sample(&w, src)))?;
        ensure(ey == exact(&red), || format!("E[Y({w})] = {ey}, #Red = {red}"))?;
        checked += 1;
        let len = w.length();
        for n in len..=len + 2 {
            let hecke = lib(count_hecke_exact(&w, n))?;
            let ez = lib(exact_expectation(|src| z_sample(&w, n, src)))?;
            ensure(ez == exact(&hecke), || format!("E[Z({w}, {n})] = {ez}, #Hecke = {hecke}"))?;
            let eh = lib(exact_expectation(|src| h_sample(&w, n, src)))?;
            ensure(eh == exact(&hecke), || format!("E[H({w}, {n})] = {eh}, #Hecke = {hecke}"))?;
            checked += 2;
        }
    }
    Ok(format!("{checked} exact expectations match"))
}

fn seeds_within_band(alg: Algorithm, w: &Permutation, len: Option<usize>, truth: u64) -> std::result::Result<(usize, String), String> {
    let mut hits = 0;
    let mut example = String::new();
    for seed in 0..12 {
        let est = lib(estimate(alg, w, len, &SamplerConfig::new(2000, 12, seed)))?;
        if est.within_sems(&big(truth), 5) {
            hits += 1;
        }
        if seed == 0 {
            example = format!("{:.4e} (sem {:.2e})", est.mean_f64(), est.sem_f64());
        }
    }
    Ok((hits, example))
}

fn estimator_reproduction() -> Check {
    let (y_hits, y_example) = seeds_within_band(Algorithm::Y, &perm("4,3,8,1,7,6,2,5"), None, 2085655)?;
    let (z_hits, z_example) = seeds_within_band(Algorithm::Z, &perm("3,5,1,6,2,4"), Some(13), 2030964)?;
    let detail = format!("Y {y_hits}/12 seeds, seed 0 {y_example}; Z {z_hits}/12 seeds, seed 0 {z_example}");
    ensure(y_hits >= 11 && z_hits >= 11, || detail.clone())?;
    Ok(detail)
}

fn determinism() -> Check {
    let cases = [
        (Algorithm::Y, perm("4,3,8,1,7,6,2,5"), None),
        (Algorithm::Z, perm("3,5,1,6,2,4"), Some(13)),
        (Algorithm::H, perm("3,5,1,6,2,4"), Some(13)),
    ];
    let cfg = SamplerConfig::new(300, 12, 7);
    for (alg, w, len) in &cases {
        let runs: Vec<Estimate> = [1, 4, 8]
            .into_iter()
            .map(|threads| lib(estimate_with_threads(*alg, w, *len, &cfg, threads)))
            .collect::<std::result::Result<_, _>>()?;
        for run in &runs[1..] {
            ensure(run.trial_means == runs[0].trial_means && run.trial_sums == runs[0].trial_sums, || {
                format!("{alg} on {w}: trial means differ across thread counts")
            })?;
        }
    }
    Ok("Y, Z, H identical under 1, 4, 8 threads".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Option<Duration>, fn() -> Check); 14] = [
        (1, "transition exactness", Some(Duration::from_secs(1)), transition_exactness),
        (2, "second running example", Some(Duration::from_secs(1)), second_running_example),
        (3, "oracle equivalence on S_6", Some(Duration::from_secs(60)), oracle_equivalence),
        (4, "staircase identity", None, staircase_identity),
        (5, "Catalan identity", None, catalan_identity),
        (6, "EG distribution", None, eg_distribution),
        (7, "tree invariants on S_6", None, tree_invariants),
        (8, "Hecke exactness", Some(Duration::from_secs(10)), hecke_exactness),
        (9, "set-valued counts", None, lenart_path),
        (10, "large set-valued count", Some(Duration::from_secs(300)), large_lenart_run),
        (11, "skew determinant", None, skew_determinant),
        (12, "estimator unbiasedness", None, estimator_unbiasedness),
        (13, "estimator reproduction", None, estimator_reproduction),
        (14, "thread-count determinism", None, determinism),
    ];
    let mut failures = 0;
    for (id, title, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {title} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {id:>2} {title} ({elapsed:.2?}): {detail}");
            }
        }
    }
    println!("{} of 14 criteria passed", 14 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
