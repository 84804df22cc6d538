//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::Instant;

use bott_core::linalg::{dot, int, ints};
use bott_core::{
    apply_unimodular, bott_matrix, bott_number, bott_number_moebius, build_fan, c_matrix, canonical_lambda, classify,
    dual_generators, extend_sequence, fans_isomorphic, hk_support, is_complete, is_fano, is_smooth, lambda_perp,
    lemma_identities, lift_with_support_function, primitive_collections, product_of_lines, sample, xi_bundle,
    BinaryCode, CharacterBundle, CohomologyRing, Fan, GeneralFan, IndexSet, IntegralSequence, Poset, RejectionCode,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xb077_0000 + criterion)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Debug) -> String {
    format!("{e:?}")
}

fn inverse() -> Check {
    let mut r = rng(1);
    for t in 0..1000 {
        let n = r.random_range(1..=10);
        let c = sample::sequence(&mut r, n, -9, 9);
        let all = IndexSet::interval(1, n).map_err(err)?;
        let product = c_matrix(&c, &all).map_err(err)?.mul(&bott_matrix(&c, &all).map_err(err)?.neg());
        ensure(product.is_identity(), || format!("trial {t}: C(n)(-B(n)) != I for {c:?}"))?;
    }
    Ok("1000 sequences".into())
}

fn oracle() -> Check {
    let mut r = rng(2);
    let mut sets = 0usize;
    for t in 0..100 {
        let c = sample::sequence(&mut r, 8, -9, 9);
        for mask in 0u32..1 << 8 {
            if mask.count_ones() < 2 {
                continue;
            }
            let set = IndexSet::new((1..=8).filter(|i| mask >> (i - 1) & 1 == 1).collect()).map_err(err)?;
            let fast = bott_number(&c, &set).map_err(err)?;
            let slow = bott_number_moebius(&c, &set).map_err(err)?;
            ensure(fast == slow, || format!("trial {t}: b({set:?}) recursion {fast} vs subset sum {slow}"))?;
            sets += 1;
        }
    }
    Ok(format!("{sets} index sets"))
}

fn lemma() -> Check {
    let mut r = rng(3);
    let zero = int(0);
    for t in 0..1000 {
        let n = r.random_range(2..=10);
        let c = sample::sequence(&mut r, n, -9, 9);
        let k = r.random_range(2..=n);
        let w = sample::code(&mut r, k);
        let i = r.random_range(1..k);
        let j = r.random_range(i + 1..=k);
        let (a, b) = lemma_identities(&c, &w, i, j).map_err(err)?;
        ensure(a == zero && b == zero, || format!("trial {t}: ({a}, {b}) at i={i}, j={j}, w={w}"))?;
    }
    Ok("1000 cases".into())
}

fn bridge_holds(p: &Poset) -> bool {
    let n = p.size();
    let all = IndexSet::interval(1, n).expect("n >= 1");
    bott_matrix(&p.to_sequence(), &all).expect("valid").neg() == p.moebius_matrix()
}

fn poset_bridge() -> Check {
    let mut exhaustive = 0usize;
    for n in 1..=4 {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let chosen = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p);
            let p = Poset::new(n, chosen).map_err(err)?;
            ensure(bridge_holds(&p), || format!("exhaustive n={n}, mask {mask:#b}"))?;
            exhaustive += 1;
        }
    }
    let mut r = rng(4);
    for t in 0..200 {
        let n = r.random_range(1..=7);
        let p = sample::poset(&mut r, n, 0.35);
        ensure(bridge_holds(&p), || format!("random trial {t}: {p:?}"))?;
    }
    Ok(format!("{exhaustive} exhaustive relations, 200 random posets"))
}

fn fan_validity() -> Check {
    let mut r = rng(5);
    let mut fans = 0;
    for k in 1..=8 {
        for t in 0..12 {
            let c = sample::sequence(&mut r, k, -6, 6);
            let fan = build_fan(&c, k).map_err(err)?;
            let pairs: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
            ensure(is_smooth(&fan) == Ok(true), || format!("k={k} trial {t}: not smooth"))?;
            ensure(is_complete(&fan), || format!("k={k} trial {t}: not complete"))?;
            ensure(fan.cones().len() == 1 << k, || format!("k={k} trial {t}: {} cones", fan.cones().len()))?;
            ensure(primitive_collections(&fan).map_err(err)? == pairs, || {
                format!("k={k} trial {t}: primitive collections differ from the opposite pairs")
            })?;
            fans += 1;
        }
    }
    Ok(format!("{fans} fans, k = 1..8"))
}

fn duality() -> Check {
    let mut r = rng(6);
    let mut codes = 0usize;
    for t in 0..50 {
        let k = 1 + t % 7;
        let c = sample::sequence(&mut r, k, -9, 9);
        let fan = build_fan(&c, k).map_err(err)?;
        for w in BinaryCode::all(k) {
            let upsilon = dual_generators(&c, k, &w).map_err(err)?;
            for i in 1..=k {
                for j in 1..=k {
                    let pairing = dot(&upsilon[i - 1], fan.generator(j, w.gamma(j)));
                    let expected = int(i64::from(i == j));
                    ensure(pairing == expected, || format!("trial {t}: <u_{i}, a_{j}> = {pairing} at w={w}"))?;
                }
            }
            codes += 1;
        }
    }
    Ok(format!("50 sequences, {codes} codes"))
}

fn lift_round_trip() -> Check {
    let mut r = rng(7);
    let mut steps = 0usize;
    for t in 0..100 {
        let n = r.random_range(2..=8);
        let c = sample::sequence(&mut r, n, -9, 9);
        for k in 1..n {
            let h = hk_support(&c, k).map_err(err)?;
            let lifted = lift_with_support_function(&build_fan(&c, k).map_err(err)?, &h).map_err(err)?;
            let next = build_fan(&c, k + 1).map_err(err)?.to_general();
            ensure(lifted == next, || format!("trial {t}: lift at k={k} differs from the stage-{} fan", k + 1))?;
            let column = extend_sequence(&c, k, &h).map_err(err)?;
            ensure(column == c.column(k + 1), || format!("trial {t}: extension at k={k} gives {column:?}"))?;
            steps += 1;
        }
    }
    Ok(format!("100 sequences, {steps} stages"))
}

fn scrambled(c: &IntegralSequence, r: &mut ChaCha8Rng) -> Result<GeneralFan, String> {
    let k = c.height();
    let m = sample::unimodular(r, k, 2 * k);
    let moved = apply_unimodular(&build_fan(c, k).map_err(err)?, &m).map_err(err)?;
    moved.relabel(&sample::permutation(r, 2 * k)).map_err(err)
}

fn classification() -> Check {
    let mut r = rng(8);
    for t in 0..200 {
        let k = 1 + t % 5;
        let c = sample::sequence(&mut r, k, -4, 4);
        let fan = scrambled(&c, &mut r)?;
        let result = classify(&fan).map_err(|e| format!("trial {t}: rejected with {}", e.code))?;
        ensure(result.reproduces(&fan), || format!("trial {t}: reconstruction does not reproduce the input"))?;
        let rebuilt = build_fan(&result.sequence, k).map_err(err)?;
        ensure(fans_isomorphic(&rebuilt, &fan).map_err(err)?.is_some(), || {
            format!("trial {t}: reconstruction not isomorphic to the input")
        })?;
    }
    let p2 = GeneralFan::new(
        2,
        vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, -1])],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .map_err(err)?;
    let code = classify(&p2).map(|_| ()).map_err(|e| e.code);
    ensure(code == Err(RejectionCode::NoValidPairing), || format!("P2 gave {code:?}"))?;
    let punctured = product_of_lines(3).map_err(err)?.without_cone(4).map_err(err)?;
    let code = classify(&punctured).map(|_| ()).map_err(|e| e.code);
    ensure(code == Err(RejectionCode::ConeSetNotFullBinaryCube), || format!("punctured cube gave {code:?}"))?;
    let punctured = build_fan(&IntegralSequence::hirzebruch(int(3)), 2).map_err(err)?.to_general().without_cone(1).map_err(err)?;
    let code = classify(&punctured).map(|_| ()).map_err(|e| e.code);
    ensure(code == Err(RejectionCode::ConeSetNotFullBinaryCube), || format!("punctured Hirzebruch gave {code:?}"))?;
    Ok("200 scrambled fans, P2 and punctured fans rejected".into())
}

fn binomial_row(k: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn cohomology() -> Check {
    let mut r = rng(9);
    for t in 0..100 {
        let k = 1 + t % 8;
        let c = sample::sequence(&mut r, k, -9, 9);
        let ring = CohomologyRing::new(&c, k).map_err(err)?;
        ensure(ring.betti() == binomial_row(k), || format!("trial {t}: betti {:?}", ring.betti()))?;
        let cones = build_fan(&c, k).map_err(err)?.cones().len();
        let chi = ring.euler_characteristic();
        ensure(chi == BigInt::from(1u64 << k) && cones == 1 << k, || {
            format!("trial {t}: chi = {chi}, {cones} maximal cones, k = {k}")
        })?;
    }
    // x_2^2 = -2 x_1 x_2 on the Hirzebruch surface with c(1,2) = 2, so
    // c_2 = x_1 x_2 + x_1 z_2 + z_1 x_2 + z_1 z_2 integrates to 4.
    let ring = CohomologyRing::new(&IntegralSequence::hirzebruch(int(2)), 2).map_err(err)?;
    let chi = ring.euler_characteristic();
    ensure(chi == int(4), || format!("Hirzebruch chi = {chi}"))?;
    Ok("100 sequences, k = 1..8, Hirzebruch chi = 4".into())
}

fn fano_boundary() -> Check {
    let mut fano = Vec::new();
    for v in -5..=5 {
        let fan = build_fan(&IntegralSequence::hirzebruch(int(v)), 2).map_err(err)?;
        if is_fano(&fan).map_err(err)? {
            fano.push(v);
        }
    }
    ensure(fano == [-1, 0, 1], || format!("Fano for c(1,2) in {fano:?}"))?;
    Ok("Fano exactly for c(1,2) in {-1, 0, 1}".into())
}

fn bundle_arithmetic() -> Check {
    let mut r = rng(11);
    for t in 0..100 {
        let n = 2 + t % 7;
        let c = sample::sequence(&mut r, n, -9, 9);
        for k in 2..=n {
            let lhs = canonical_lambda(k) + lambda_perp(&c, k).map_err(err)?;
            let rhs = xi_bundle(&c, k - 1).map_err(err)?.pull_back(k);
            ensure(lhs == rhs, || format!("trial {t}: K8 fails at k={k}"))?;
        }
        for k in 1..n {
            let expected = (1..=k).fold(CharacterBundle::trivial(k), |acc, i| {
                acc + canonical_lambda(i).pull_back(k).power(&-c.c(i, k + 1))
            });
            ensure(xi_bundle(&c, k).map_err(err)? == expected, || format!("trial {t}: K11 fails at k={k}"))?;
        }
    }
    let flag = IntegralSequence::bounded_flag(8).map_err(err)?;
    for k in 2..=8 {
        let mut data = vec![0i64; k];
        data[k - 2] = -1;
        data[k - 1] = 1;
        ensure(flag.column(k) == ints(&data[..k - 1]), || format!("bounded flag column {k}: {:?}", flag.column(k)))?;
        ensure(lambda_perp(&flag, k).map_err(err)?.0 == ints(&data), || format!("bounded flag lambda_perp at {k}"))?;
    }
    Ok("100 sequences up to height 8, bounded flag data".into())
}

fn run_bott(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bott")).args(args).output().map_err(err)?;
    match out.status.code() {
        Some(0) | Some(4) => Ok(out.stdout),
        code => Err(format!("bott {args:?} exited with {code:?}")),
    }
}

fn determinism() -> Check {
    let seq = r#"{"n":3,"c":[[1,2,2],[1,3,-1],[2,3,3]]}"#;
    let hz = r#"{"n":2,"c":[[1,2,2]]}"#;
    let p2 = r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[0,2]]}"#;
    let runs: [&[&str]; 9] = [
        &["numbers", "--oracle", seq],
        &["fan", seq],
        &["check", seq],
        &["charts", seq],
        &["bundle", seq],
        &["cohomology", "--oracle", seq],
        &["classify", p2],
        &["render", hz],
        &["render", p2],
    ];
    for args in runs {
        let first = run_bott(args)?;
        for _ in 0..2 {
            ensure(run_bott(args)? == first, || format!("bott {} output changed between runs", args[0]))?;
        }
    }
    Ok("9 commands, 3 runs each".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("bott matrix inverse", inverse),
        ("oracle equivalence", oracle),
        ("lemma identities", lemma),
        ("poset bridge", poset_bridge),
        ("fan validity", fan_validity),
        ("duality", duality),
        ("lift round trip", lift_round_trip),
        ("classification round trip", classification),
        ("cohomology", cohomology),
        ("fano boundary", fano_boundary),
        ("bundle arithmetic", bundle_arithmetic),
        ("cli determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
