//! End-to-end acceptance run. Every criterion prints one `PASS` or `FAIL`
//! line with its measurements; the process fails if any criterion does.

mod common;

use std::time::{Duration, Instant};

use chromsp::atlas::{encode_ppm, render_pixels, Color, ColorCounts, RenderSpec};
use chromsp::certify::{certify, certify_near_one, certify_real_01, certify_real_3227, MethodChoice, REAL_3227_END};
use chromsp::escape::{escape_search, find_family_zero, word_value, Kind};
use chromsp::leafjoin::{
    activity_search, alternating_shape, leafjoined_expr, ratio_bridge_check, reference_row, zero_hunt_leafjoined,
    HuntKind, HuntOptions, RootedTree, DEFAULT_THETA_GRID,
};
use chromsp::sp::eval::{pair_recursion, ScaledPair};
use chromsp::sp::{brute_force_z, z_poly};
use chromsp::{cx, Cx};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEPTHS: [u64; 3] = [75, 150, 300];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(limit_secs: u64, start: Instant) -> (bool, String) {
    let t = start.elapsed();
    (t <= Duration::from_secs(limit_secs), format!("{:.1}s of {limit_secs}s", t.as_secs_f64()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let small = common::all_exprs_by_edges(6);
    let exhaustive: usize = small.iter().map(Vec::len).sum();
    for g in small.iter().flatten() {
        if z_poly(g).unwrap() != brute_force_z(g).unwrap() {
            bad.push(g.to_string());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let edges = rng.random_range(7..=12);
        let g = common::random_expr(&mut rng, edges);
        if z_poly(&g).unwrap() != brute_force_z(&g).unwrap() {
            bad.push(g.to_string());
        }
    }
    let (fast, t) = within(60, start);
    outcome(
        bad.is_empty() && fast,
        format!("{exhaustive} exhaustive + 500 random expressions, {} mismatches, {t}", bad.len()),
    )
}

/// The rational parameters of criterion 2 as `(numerator, 100)`.
fn interval_parameters() -> Vec<i64> {
    let mut out: Vec<i64> = (1..=19).map(|k| 5 * k).collect();
    out.extend((101..=118).filter(|&k| (k as f64) / 100.0 < REAL_3227_END));
    out
}

fn criterion_2(certified: &mut Vec<f64>) -> Outcome {
    let start = Instant::now();
    let mut missing = Vec::new();
    for k in interval_parameters() {
        let q = k as f64 / 100.0;
        let c = if q < 1.0 { certify_real_01(q) } else { certify_real_3227(q) };
        match c {
            Ok(_) => certified.push(q),
            Err(e) => missing.push(format!("{q}: {e}")),
        }
    }
    let pairs = common::distinct_pairs_by_edges(10);
    let distinct: usize = pairs.iter().map(Vec::len).sum();
    let mut zeros = Vec::new();
    for &q in certified.iter() {
        let a = (q * 100.0).round() as i64;
        for p in pairs.iter().flatten() {
            if common::z_at_rational(p, a, 100).is_zero() {
                zeros.push(q);
            }
        }
    }
    let (fast, t) = within(120, start);
    outcome(
        missing.is_empty() && zeros.is_empty() && fast,
        format!(
            "{} of {} parameters certified, {distinct} distinct pairs up to 10 edges, {} exact zeros, {t}{}",
            certified.len(),
            interval_parameters().len(),
            zeros.len(),
            if missing.is_empty() { String::new() } else { format!("; missing {missing:?}") }
        ),
    )
}

fn criterion_3() -> Outcome {
    let ring = |r: f64| (0..16).map(move |k| 1.0 + Cx::from_polar(r, std::f64::consts::PI * k as f64 / 8.0));
    let inner_ok = ring(0.06).filter(|&q| certify_near_one(q).is_ok()).count();
    let outer_rejected = ring(0.08).filter(|&q| certify_near_one(q).is_err()).count();
    let general = ring(0.08).filter(|&q| certify(q, MethodChoice::General).is_ok()).count();
    outcome(
        inner_ok == 16 && outer_rejected == 16,
        format!(
            "|q-1| = 0.06: {inner_ok}/16 certified; |q-1| = 0.08: {outer_rejected}/16 rejected by the near-one method, {general}/16 certified by the general search"
        ),
    )
}

fn random_in_frame(rng: &mut ChaCha8Rng, keep: impl Fn(Cx) -> bool) -> Cx {
    loop {
        let q = cx(rng.random_range(0.0..=2.0), rng.random_range(-1.0..=1.0));
        if keep(q) {
            return q;
        }
    }
}

fn criterion_4(certified: &[f64]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut notes = Vec::new();
    let mut pass = true;

    let mut a_ok = 0;
    for _ in 0..50 {
        let q = random_in_frame(&mut rng, |q| (1.0 - q).norm() > 1.05);
        let v = escape_search(q, 300, &DEPTHS).unwrap();
        if v.witness().is_some_and(|w| w.word.is_empty() || w.word == [2]) {
            a_ok += 1;
        }
    }
    pass &= a_ok == 50;
    notes.push(format!("(a) {a_ok}/50"));

    // The 1.3 case is stated as four applications of g(z) = f_q(z^2) to 0.
    for (q, want) in [(1.20, None), (1.30, Some((4, -1.0033))), (1.50, None)] {
        let v = escape_search(cx(q, 0.0), 300, &DEPTHS).unwrap();
        let ok = match (v.witness(), &want) {
            (Some(w), Some((k, value))) => {
                let direct = g_iterate(q, *k);
                w.word == g_word(*k) && (w.value - value).norm() <= 1e-3 && (w.value - direct).norm() <= 1e-9
            }
            (Some(w), None) => !w.word.is_empty() && w.word.iter().all(|&n| n == 2),
            (None, _) => false,
        };
        pass &= ok;
        let got = match v.witness() {
            Some(w) => format!("word {:?} value {:.4}", w.word, w.value.re),
            None => format!("{} at budget 300", v.status()),
        };
        notes.push(format!("(b) q = {q}: {got}{}; first escaping all-2 word {}", if ok { "" } else { " [miss]" }, first_two_word(q)));
    }

    // Where |1 - q| > 1 as well, the empty word has the smaller product and
    // is found first; the path of length two is then not reached.
    let (mut c_two, mut c_empty) = (0, 0);
    for _ in 0..50 {
        let q = random_in_frame(&mut rng, |q| q.re > 1.55);
        let v = escape_search(q, 300, &DEPTHS).unwrap();
        match v.witness().map(|w| w.word.as_slice()) {
            Some([2]) => c_two += 1,
            Some([]) => c_empty += 1,
            _ => {}
        }
    }
    pass &= c_two + c_empty == 50;
    notes.push(format!("(c) {}/50 at word (2) or earlier ({c_two} at (2), {c_empty} at the empty word)", c_two + c_empty));

    let escaped: Vec<f64> =
        certified.iter().copied().filter(|&q| escape_search(cx(q, 0.0), 300, &DEPTHS).unwrap().witness().is_some()).collect();
    pass &= escaped.is_empty() && !certified.is_empty();
    notes.push(format!("(d) {} certified parameters escaped", escaped.len()));
    outcome(pass, notes.join("; "))
}

/// `g^k(0)` for `g(z) = f_q(z^2)`, computed directly.
fn g_iterate(q: f64, k: usize) -> Cx {
    let q = cx(q, 0.0);
    (0..k).fold(cx(0.0, 0.0), |z, _| 1.0 + q / (z * z - 1.0))
}

/// The search word whose value is `g^k(0)`. The first application squares 0
/// and yields `f_q(0) = 1 - q`, which is the value of the empty word; each
/// later application is one more `2`.
fn g_word(k: usize) -> Vec<u64> {
    vec![2; k - 1]
}

/// The shortest word `(2, …, 2)` with product at most 300 whose value escapes,
/// in either kind.
fn first_two_word(q: f64) -> String {
    for len in 1..=8 {
        let word = vec![2u64; len];
        for kind in [Kind::Interaction, Kind::Virtual] {
            let v = word_value(cx(q, 0.0), &word, kind);
            if v.norm() > 1.0 + 1e-9 {
                return format!("{word:?} ({kind:?}, {:.4})", v.re);
            }
        }
    }
    "none up to length 8".into()
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for q0 in [cx(2.5, 0.0), cx(3.0, 1.0)] {
        let start = Instant::now();
        let w = escape_search(q0, 300, &DEPTHS).unwrap().witness().cloned();
        let found = w.as_ref().map(|w| find_family_zero(w, 0.1, 64));
        let (fast, t) = within(120, start);
        match found {
            Some(Ok(Some(f))) => {
                pass &= fast && f.zeros >= 1;
                notes.push(format!("q0 = {q0}: {} zeros in the family member n = {}, m = {}, {t}", f.zeros, f.n, f.m));
            }
            other => {
                pass = false;
                notes.push(format!("q0 = {q0}: no zero found ({other:?}), {t}"));
            }
        }
    }
    outcome(pass, notes.join("; "))
}

fn random_uniform_shape(rng: &mut ChaCha8Rng, d: usize, depth: u32) -> RootedTree {
    if depth == 0 {
        return RootedTree::leaf();
    }
    let kids = (0..d)
        .map(|_| if rng.random_bool(0.6) { random_uniform_shape(rng, d, depth - 1) } else { RootedTree::leaf() })
        .collect();
    RootedTree::node(kids)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut errors = 0;
    for _ in 0..50 {
        let d = rng.random_range(1..=4);
        let depth = rng.random_range(1..=4);
        let shape = random_uniform_shape(&mut rng, d, depth);
        for _ in 0..20 {
            let q = cx(rng.random_range(-2.0..6.0), rng.random_range(-3.0..3.0));
            match ratio_bridge_check(&shape, q) {
                Ok(e) => worst = worst.max(e),
                Err(_) => errors += 1,
            }
        }
    }
    let (fast, t) = within(60, start);
    outcome(worst < 1e-8 && errors == 0 && fast, format!("1000 checks, worst error {worst:.2e}, {errors} errors, {t}"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut in_band = true;
    let mut hard = true;
    let mut notes = Vec::new();
    for (d1, d2) in [(3u32, 2u32), (4, 3), (6, 4), (9, 6)] {
        let delta = d1 + 1;
        let (_, re, im, _, _) = reference_row(delta).expect("reference row");
        let p = activity_search(d1, d2, DEFAULT_THETA_GRID, 0).unwrap();
        let dev = (p.q - cx(re, im)).norm();
        in_band &= dev <= 5e-3;
        let above = p.q.re > delta as f64;
        if (d1, d2) == (3, 2) || (d1, d2) == (4, 3) {
            hard &= above;
        }
        notes.push(format!("({d1},{d2}) q = {:.5}{:+.5}i, |dq| = {dev:.1e}, Re q > {delta}: {above}", p.q.re, p.q.im));
    }
    let (fast, t) = within(300, start);
    let verdict = if in_band && hard && fast {
        ""
    } else if hard {
        " [soft failure: outside the tolerance band]"
    } else {
        " [hard failure]"
    };
    outcome(in_band && hard && fast, format!("{}; {t}{verdict}", notes.join("; ")))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let seed = activity_search(3, 2, DEFAULT_THETA_GRID, 0).unwrap().q;
    let depths: Vec<u32> = (2..=8).collect();
    let recs = zero_hunt_leafjoined(3, 2, &depths, seed, &HuntOptions::default()).unwrap();
    let mut best: Option<(u32, Cx, f64)> = None;
    for r in recs.iter().filter(|r| r.kind == HuntKind::MinusOne) {
        let t = leafjoined_expr(&alternating_shape(3, 2, r.depth).unwrap());
        for z in &r.zeros {
            let p: ScaledPair<Cx> = pair_recursion(&t, z.q).unwrap();
            let residual = ((p.same + p.dif) / p.dif).norm();
            if best.is_none_or(|b| z.q.re > b.1.re) {
                best = Some((r.depth, z.q, residual));
            }
        }
    }
    let (fast, t) = within(300, start);
    match best {
        Some((depth, q, residual)) => outcome(
            q.re > 4.0 && residual < 1e-8 && fast,
            format!("largest Re q among the zeros found is {:.5}{:+.5}i at depth {depth} with |R+1| = {residual:.1e}; need Re q > 4; {t}", q.re, q.im),
        ),
        None => outcome(false, format!("no zero found for depths 2..=8; {t}")),
    }
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let thumb = RenderSpec::thumbnail(101, 101);
    let px = render_pixels(&thumb).unwrap();
    let at = |row: usize, col: usize| &px[row * 101 + col];
    let mut segment_bad = Vec::new();
    let mut right_bad = 0;
    let mut outer_bad = 0;
    for row in 0..101 {
        for col in 0..101 {
            let p = at(row, col);
            let q = p.q;
            let excluded = q.im == 0.0 && [0.0, 1.0, 2.0].contains(&q.re);
            if q.im == 0.0 && q.re > 0.0 && q.re < REAL_3227_END {
                let want = if excluded { Color::White } else { Color::Orange };
                if p.color != want {
                    segment_bad.push(q.re);
                }
            }
            if q.re > 1.5 && !excluded && !p.color.is_blue() {
                right_bad += 1;
            }
            if (q - 1.0).norm() > 1.0 && !excluded && p.color != Color::Blue75 {
                outer_bad += 1;
            }
        }
    }
    pass &= segment_bad.is_empty() && right_bad == 0 && outer_bad == 0;
    notes.push(format!(
        "101x101 (exact 0, 1, 2 excluded): real segment mismatches {segment_bad:?}, non-blue with Re q > 1.5: {right_bad}, not blue75 with |q-1| > 1: {outer_bad}, counts {:?}",
        ColorCounts::of(&px)
    ));

    let full = RenderSpec::default();
    let mut images = Vec::new();
    for workers in [1, 8] {
        let start = Instant::now();
        let spec = RenderSpec { workers, ..full.clone() };
        let img = encode_ppm(&spec, &render_pixels(&spec).unwrap()).unwrap();
        let (fast, t) = within(30 * 60, start);
        pass &= fast;
        notes.push(format!("1001x1001 with {workers} workers: {t}"));
        images.push(img);
    }
    let same = images[0] == images[1];
    pass &= same;
    notes.push(format!("byte-identical across worker counts: {same}"));
    outcome(pass, notes.join("; "))
}

fn main() {
    println!("parallel feature: {}, available cores: {}", chromsp::par::PARALLEL_ENABLED, std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut certified = Vec::new();
    let results = [
        criterion_1(),
        criterion_2(&mut certified),
        criterion_3(),
        criterion_4(&certified),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        println!("{} criterion {}: {}", if r.pass { "PASS" } else { "FAIL" }, i + 1, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
