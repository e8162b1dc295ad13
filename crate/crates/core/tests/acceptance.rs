//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{corpus_diagrams, permutations, random_diagrams, scripted_moves, Move};
use lmt::braid::RandomBraids;
use lmt::kauffman::lambda_poly;
use lmt::laurent::{LaurentA, LaurentAZ};
use lmt::lmt::{check_lemma4, verify_all, verify_theorem5};
use lmt::transfer::{check_lemma3a, check_lemma3b, g_tau};
use lmt::{Diagram, Engine, OrientationMask, SkeinTask, Smoothing, SublinkMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail} in {took:.2?}"))
}

fn reference(d: &Diagram) -> OrientationMask {
    OrientationMask::reference(d.component_count())
}

fn knot_specialization() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut engine = Engine::new();
        let mut knots: Vec<(String, Diagram)> =
            corpus_diagrams().into_iter().filter(|(_, d)| d.component_count() == 1).collect();
        let corpus_knots = knots.len();
        let mut stream = RandomBraids::new(1, 8);
        for _ in 0..60 {
            let b = stream.next_knot();
            knots.push((b.to_string(), b.closure()));
        }
        for (name, d) in &knots {
            let f = engine.specialized_f(d, &reference(d)).map_err(|e| format!("{name}: {e}"))?;
            ensure(f.is_one(), || format!("{name}: specialization is {f}"))?;
        }
        Ok(format!("{corpus_knots} corpus knots and 60 random knots give 1"))
    })
}

fn specialization_on_corpus_and_random() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut engine = Engine::new();
        let mut subjects = corpus_diagrams();
        subjects.extend(random_diagrams(2, 200, 8));
        for (name, d) in &subjects {
            let r = verify_theorem5(&mut engine, d, &reference(d)).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.pass, || format!("{name}: {} vs {}", r.lhs, r.rhs))?;
        }
        Ok(format!("{} diagrams", subjects.len()))
    })
}

fn transfer_skein() -> Outcome {
    let mut checked = 0;
    for (name, d) in corpus_diagrams() {
        for x in 0..d.crossing_count() {
            let r = check_lemma3a(&d, x).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.pass, || format!("{name} at {x}: {} vs {}", r.lhs, r.rhs))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pairs = 0;
    for b in RandomBraids::new(3, 8) {
        if pairs == 100 {
            break;
        }
        let d = b.closure();
        let x = rng.gen_range(0..d.crossing_count());
        let r = check_lemma3a(&d, x).map_err(|e| format!("{b}: {e}"))?;
        ensure(r.pass, || format!("{b} at {x}: {} vs {}", r.lhs, r.rhs))?;
        pairs += 1;
    }
    Ok(format!("{checked} corpus crossings and {pairs} random pairs"))
}

fn transfer_equals_lambda() -> Outcome {
    let mut engine = Engine::new();
    let subjects = corpus_diagrams();
    for (name, d) in &subjects {
        let r = check_lemma3b(&mut engine, d).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.pass, || format!("{name}: {} vs {}", r.lhs, r.rhs))?;
    }
    let u = Diagram::unlink(1);
    let g = g_tau(&u);
    let lambda = lambda_poly(&u).map_err(|e| e.to_string())?;
    ensure(lambda.is_one(), || format!("unknot lambda is {lambda}"))?;
    ensure(g == LaurentA::constant(-2), || format!("unknot g_tau is {g}"))?;
    Ok(format!("{} corpus diagrams; unknot {g} = -2*{lambda}", subjects.len()))
}

fn writhe_change() -> Outcome {
    let mut exhaustive = 0;
    for (name, d) in corpus_diagrams().into_iter().filter(|(_, d)| d.component_count() <= 3) {
        let com = d.component_count();
        for o in OrientationMask::all(com) {
            for s in SublinkMask::all(com) {
                let r = check_lemma4(&d, &o, &s).map_err(|e| format!("{name}: {e}"))?;
                ensure(r.pass, || format!("{name} o={o} s={s}: {} vs {}", r.lhs, r.rhs))?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut stream = RandomBraids::new(5, 8);
    for _ in 0..500 {
        let b = stream.next().unwrap();
        let d = b.closure();
        let com = d.component_count();
        let o = OrientationMask::from_bits(rng.gen_range(0..1u64 << com), com);
        let s = SublinkMask::from_bits(rng.gen_range(0..1u64 << com), com);
        let r = check_lemma4(&d, &o, &s).map_err(|e| format!("{b}: {e}"))?;
        ensure(r.pass, || format!("{b} o={o} s={s}: {} vs {}", r.lhs, r.rhs))?;
    }
    Ok(format!("{exhaustive} exhaustive corpus triples and 500 random triples"))
}

fn axioms() -> Outcome {
    let mut engine = Engine::new();
    let mut lambda = |d: &Diagram| engine.lambda(d).map_err(|e| e.to_string());

    let unknot = lambda(&Diagram::unlink(1))?;
    ensure(unknot.is_one(), || format!("unknot gives {unknot}"))?;

    for (name, factor) in [("unknot-kink-positive", LaurentAZ::a()), ("unknot-kink-negative", LaurentAZ::a_pow(-1))] {
        let got = lambda(&lmt::corpus::find(name).unwrap().diagram())?;
        ensure(got == factor, || format!("{name} gives {got}"))?;
    }

    let mut crossings = 0;
    for (name, d) in corpus_diagrams() {
        let here = lambda(&d)?;
        for x in 0..d.crossing_count() {
            let switched = lambda(&d.switch(x).unwrap())?;
            let a = lambda(&d.smooth(x, Smoothing::A).unwrap())?;
            let b = lambda(&d.smooth(x, Smoothing::B).unwrap())?;
            let lhs = &here + &switched;
            let rhs = LaurentAZ::z() * (a + b);
            ensure(lhs == rhs, || format!("{name} at {x}: {lhs} vs {rhs}"))?;
            crossings += 1;
        }
    }

    let moves = scripted_moves();
    for m in &moves {
        let before = lambda(&m.before)?;
        let after = lambda(&m.after)?;
        let factor = match m.kind {
            Move::Regular => LaurentAZ::one(),
            Move::CurlPositive => LaurentAZ::a(),
            Move::CurlNegative => LaurentAZ::a_pow(-1),
        };
        ensure(after == &before * &factor, || format!("{}: {before} then {after}", m.name))?;
    }
    let regular = moves.iter().filter(|m| m.kind == Move::Regular).count();
    Ok(format!("skein at {crossings} crossings; {regular} move-2/3 pairs and {} curl pairs", moves.len() - regular))
}

/// Sum of `(-1)^com a^writhe` over orientations, written out directly.
fn enumerate_orientations(d: &Diagram) -> LaurentA {
    let com = d.component_count();
    let sign = if com.is_multiple_of(2) { 1 } else { -1 };
    let mut sum = LaurentA::zero();
    for bits in 0..1u64 << com {
        let o = OrientationMask::from_bits(bits, com);
        let w: i32 = (0..d.crossing_count()).map(|i| d.crossing_sign(i, &o)).sum();
        sum = sum + LaurentA::term(w, sign);
    }
    sum
}

fn two_paths_agree() -> Outcome {
    let mut engine = Engine::new();
    let subjects = corpus_diagrams();
    for (name, d) in &subjects {
        let by_enumeration = enumerate_orientations(d);
        let by_skein = (LaurentAZ::constant(-2) * engine.lambda(d).map_err(|e| e.to_string())?)
            .substitute_z()
            .map_err(|e| e.to_string())?;
        ensure(by_enumeration == by_skein, || format!("{name}: {by_enumeration} vs {by_skein}"))?;
    }
    Ok(format!("{} corpus diagrams", subjects.len()))
}

fn structural() -> Outcome {
    let mut engine = Engine::new();
    let mut lambda = |d: &Diagram| engine.lambda(d).map_err(|e| e.to_string());
    let subjects = corpus_diagrams();
    for (name, d) in &subjects {
        let m = lambda(&d.mirror())?;
        let expected = lambda(d)?.invert_a();
        ensure(m == expected, || format!("{name}: mirror {m} vs {expected}"))?;
    }
    let small: Vec<&(String, Diagram)> = subjects.iter().filter(|(_, d)| d.crossing_count() <= 5).collect();
    let mut pairs = 0;
    for (n1, d1) in &small {
        for (n2, d2) in &small {
            let (l1, l2) = (lambda(d1)?, lambda(d2)?);
            let u = lambda(&d1.distant_union(d2))?;
            let expected = &(&LaurentAZ::delta() * &l1) * &l2;
            ensure(u == expected, || format!("{n1} + {n2}: {u} vs {expected}"))?;
            let s = u.substitute_z().map_err(|e| e.to_string())?;
            let s_expected = LaurentA::constant(-2)
                * l1.substitute_z().map_err(|e| e.to_string())?
                * l2.substitute_z().map_err(|e| e.to_string())?;
            ensure(s == s_expected, || format!("{n1} + {n2} specialized: {s} vs {s_expected}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} mirrors and {pairs} unions", subjects.len()))
}

fn determinism() -> Outcome {
    let mut subjects = corpus_diagrams();
    subjects.extend(random_diagrams(9, 100, 8));

    let mut cached = Engine::new();
    let memo_results: Vec<_> = subjects
        .iter()
        .map(|(_, d)| verify_all(&mut cached, d, &reference(d)).map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;

    std::env::set_var("LMT_NO_MEMO", "1");
    let mut plain = Engine::from_env();
    std::env::remove_var("LMT_NO_MEMO");
    ensure(!plain.memo_enabled(), || "LMT_NO_MEMO=1 left the memo on".into())?;
    for ((name, d), expected) in subjects.iter().zip(&memo_results) {
        let got: Vec<String> = verify_all(&mut plain, d, &reference(d))
            .map_err(|e| format!("{name}: {e}"))?
            .iter()
            .map(ToString::to_string)
            .collect();
        ensure(&got == expected, || format!("{name}: reports differ without memo"))?;
    }
    ensure(plain.memo_len() == 0, || "memo filled while disabled".into())?;

    let mut orders = 0;
    for (name, d) in subjects.iter().filter(|(_, d)| d.crossing_count() <= 6) {
        let expected = lambda_poly(d).map_err(|e| e.to_string())?;
        for order in permutations(d.strands().len()) {
            let basepoints = d.strands().iter().map(|s| s[0]).collect();
            let task = SkeinTask::with_traversal(d.clone(), order.clone(), basepoints).map_err(|e| e.to_string())?;
            let got = Engine::without_memo().lambda_task(&task).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{name} order {order:?}: {got} vs {expected}"))?;
            orders += 1;
        }
    }
    Ok(format!("{} diagrams without memo; {orders} component orders", subjects.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("knot specialization is 1", knot_specialization),
        ("specialization equals the sublink sum", specialization_on_corpus_and_random),
        ("transfer skein relation", transfer_skein),
        ("transfer sum is -2 times the specialization", transfer_equals_lambda),
        ("reversing a sublink shifts writhe by -4 lk", writhe_change),
        ("axioms and scripted moves", axioms),
        ("enumeration agrees with the skein engine", two_paths_agree),
        ("mirror and distant union", structural),
        ("memo off and traversal order", determinism),
    ];
    let mut failed = 0;
    for (i, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {what}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {what}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
