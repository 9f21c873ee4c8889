//! Escape witnesses: effective interactions (or their `f_q` images) of
//! modulus greater than one, found by a search over words `(n1, ..., nk)`.
//!
//! A word describes a graph built from a single edge by alternately taking
//! series powers (odd positions) and parallel powers (even positions). Along
//! the way two values are available at every word: the value right after
//! powering and its `f_q` image. One of them is the effective interaction of
//! the realized graph and the other its virtual interaction, depending on
//! the parity of the word length.

use serde::{Deserialize, Serialize};

use crate::moebius::{f_raw, DEFAULT_DELTA};
use crate::sp::eval::{pair_recursion, EvalPath};
use crate::sp::{interaction_eval, pair_polys, SpExpr};
use crate::{Cx, Error, Result};

/// Whether a witness value is an interaction `y_G` or its image `f_q(y_G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Interaction,
    Virtual,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EscapeWitness {
    pub q: Cx,
    pub word: Vec<u64>,
    pub value: Cx,
    pub kind: Kind,
    pub budget_used: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EscapeVerdict {
    /// A witness together with the smallest shading depth that contains it.
    Escaped { witness: EscapeWitness, shade: Option<u64> },
    /// No word within the budget escaped. This is not a proof of anything.
    Bounded { budget: u64 },
    /// Nothing escaped, and at least one word was cut short by an exact hit
    /// on a pole of the recursion.
    Indeterminate { budget: u64 },
}

impl EscapeVerdict {
    pub fn witness(&self) -> Option<&EscapeWitness> {
        match self {
            EscapeVerdict::Escaped { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            EscapeVerdict::Escaped { .. } => "escaped",
            EscapeVerdict::Bounded { .. } => "bounded",
            EscapeVerdict::Indeterminate { .. } => "indeterminate",
        }
    }
}

/// Kinds of the post-power and post-`f_q` values at a word of length `k ≥ 1`.
fn kinds_at(k: usize) -> (Kind, Kind) {
    if k % 2 == 1 {
        (Kind::Virtual, Kind::Interaction)
    } else {
        (Kind::Interaction, Kind::Virtual)
    }
}

/// `z^n` for the moderate moduli reached during the search; large moduli go
/// through log-polar form so that overflow cannot hide an escape.
fn pow_n(z: Cx, n: u64) -> Cx {
    if z.norm() > 1e3 {
        let (r, t) = z.to_polar();
        let lr = r.ln() * n as f64;
        if lr > 700.0 {
            return Cx::new(f64::INFINITY, 0.0);
        }
        return Cx::from_polar(lr.exp(), t * n as f64);
    }
    match u32::try_from(n) {
        Ok(k) => z.powu(k),
        Err(_) => Cx::new(f64::INFINITY, 0.0),
    }
}

struct Best {
    product: u64,
    word: Vec<u64>,
    value: Cx,
    kind: Kind,
}

struct Search {
    q: Cx,
    budget: u64,
    delta: f64,
    word: Vec<u64>,
    best: Option<Best>,
    pruned: usize,
}

impl Search {
    fn record(&mut self, product: u64, n: u64, value: Cx, kind: Kind) {
        let mut word = self.word.clone();
        word.push(n);
        self.best = Some(Best { product, word, value, kind });
    }

    /// Children of the current word, whose post-`f_q` value is `x`.
    fn dfs(&mut self, x: Cx, product: u64) {
        let k = self.word.len() + 1;
        let (kind_p, kind_y) = kinds_at(k);
        let mut p = x;
        for n in 2.. {
            let np = match product.checked_mul(n) {
                Some(v) => v,
                None => break,
            };
            if np > self.budget || self.best.as_ref().is_some_and(|b| np >= b.product) {
                break;
            }
            // |x| ≤ 1 + δ here, so repeated multiplication stays in range.
            p *= x;
            if p.norm() > 1.0 + self.delta {
                self.record(np, n, p, kind_p);
                break;
            }
            if p == Cx::new(1.0, 0.0) {
                self.pruned += 1;
                continue;
            }
            let y = f_raw(self.q, p);
            if y.norm() > 1.0 + self.delta {
                self.record(np, n, y, kind_y);
                break;
            }
            self.word.push(n);
            self.dfs(y, np);
            self.word.pop();
        }
    }
}

/// Search words with `n1·…·nk ≤ budget` for an escaping value, using the
/// default margin.
pub fn escape_search(q: Cx, budget: u64, shading_depths: &[u64]) -> Result<EscapeVerdict> {
    escape_search_with_margin(q, budget, shading_depths, DEFAULT_DELTA)
}

/// Among all escaping words the one with the smallest product is returned,
/// ties broken lexicographically, so the witness found at one budget is also
/// the witness at every larger budget.
pub fn escape_search_with_margin(q: Cx, budget: u64, shading_depths: &[u64], delta: f64) -> Result<EscapeVerdict> {
    if q == Cx::new(0.0, 0.0) || !(q.re.is_finite() && q.im.is_finite()) {
        return Err(Error::Domain("escape search needs a finite nonzero q".into()));
    }
    if budget == 0 {
        return Err(Error::Argument("budget must be >= 1".into()));
    }
    let shade_of = |used: u64| shading_depths.iter().copied().filter(|&s| s >= used).min();
    let x0 = 1.0 - q;
    if x0.norm() > 1.0 + delta {
        let witness = EscapeWitness { q, word: Vec::new(), value: x0, kind: Kind::Virtual, budget_used: 1 };
        return Ok(EscapeVerdict::Escaped { witness, shade: shade_of(1) });
    }
    let mut s = Search { q, budget, delta, word: Vec::new(), best: None, pruned: 0 };
    s.dfs(x0, 1);
    Ok(match s.best {
        Some(b) => {
            let witness = EscapeWitness { q, word: b.word, value: b.value, kind: b.kind, budget_used: b.product };
            EscapeVerdict::Escaped { shade: shade_of(witness.budget_used), witness }
        }
        None if s.pruned > 0 => EscapeVerdict::Indeterminate { budget },
        None => EscapeVerdict::Bounded { budget },
    })
}

/// Both values along a word: for each prefix the post-power and the
/// post-`f_q` value. The empty prefix contributes `(0, 1 - q)`.
pub fn word_trace(q: Cx, word: &[u64]) -> Vec<(Cx, Cx)> {
    let mut out = vec![(Cx::new(0.0, 0.0), 1.0 - q)];
    let mut x = 1.0 - q;
    for &n in word {
        let p = pow_n(x, n);
        x = f_raw(q, p);
        out.push((p, x));
    }
    out
}

/// Value of kind `kind` at the full word, recomputed from scratch.
pub fn word_value(q: Cx, word: &[u64], kind: Kind) -> Cx {
    let (p, y) = *word_trace(q, word).last().expect("nonempty trace");
    if word.is_empty() {
        return match kind {
            Kind::Virtual => y,
            Kind::Interaction => p,
        };
    }
    let (kind_p, _) = kinds_at(word.len());
    if kind == kind_p {
        p
    } else {
        y
    }
}

/// The graph of a word: series powers at odd positions, parallel powers at
/// even positions, starting from a single edge.
pub fn realize_word(word: &[u64]) -> Result<SpExpr> {
    let mut g = SpExpr::edge();
    for (i, &n) in word.iter().enumerate() {
        g = if i % 2 == 0 { SpExpr::series_power(&g, n)? } else { SpExpr::parallel_power(&g, n)? };
    }
    Ok(g)
}

/// Build the witness graph and confirm that its interaction reproduces the
/// witness value.
pub fn realize_witness(w: &EscapeWitness) -> Result<SpExpr> {
    let g = realize_word(&w.word)?;
    let y = interaction_eval(&g, w.q, EvalPath::Auto)?
        .finite()
        .ok_or_else(|| Error::Mismatch("realized interaction is infinite".into()))?;
    let got = match w.kind {
        Kind::Interaction => y,
        Kind::Virtual => f_raw(w.q, y),
    };
    let err = (got - w.value).norm();
    if !(err <= 1e-8 * (1.0 + w.value.norm())) {
        return Err(Error::Mismatch(format!("witness value {} but graph gives {got} (error {err:e})", w.value)));
    }
    Ok(g)
}

/// `|(q-1)/(q-2)| > 1 + δ`: the path of length two already escapes.
pub fn classify_halfplane(q: Cx) -> bool {
    classify_halfplane_with_margin(q, DEFAULT_DELTA)
}

pub fn classify_halfplane_with_margin(q: Cx, delta: f64) -> bool {
    let d = q - 2.0;
    if d == Cx::new(0.0, 0.0) {
        return true;
    }
    ((q - 1.0) / d).norm() > 1.0 + delta
}

/// Largest number of contour samples tried before giving up.
pub const MAX_CONTOUR_SAMPLES: usize = 1 << 22;

fn contour_point(center: Cx, radius: f64, k: usize, n: usize) -> Cx {
    center + Cx::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64)
}

/// Number of zeros of `Z(g; q)` in the open disk, by the argument principle.
///
/// Samples double until every phase step is below π/2. A sample where `Z`
/// nearly cancels refuses the count.
pub fn count_zeros_in_disk(g: &SpExpr, center: Cx, radius: f64, samples: usize) -> Result<i64> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Argument("radius must be positive".into()));
    }
    let exact = if EvalPath::Auto.uses_exact(g) { Some(pair_polys(g)?) } else { None };
    let phase_at = |q: Cx| -> Result<f64> {
        let (same, dif) = match &exact {
            Some(p) => (p.same.eval_cx(q), p.dif.eval_cx(q)),
            None => {
                if q == Cx::new(0.0, 0.0) || q == Cx::new(1.0, 0.0) {
                    (Cx::new(0.0, 0.0), Cx::new(0.0, 0.0))
                } else {
                    let s = pair_recursion(g, q)?;
                    (s.same, s.dif)
                }
            }
        };
        let z = same + dif;
        let ratio = z.norm() / (same.norm() + dif.norm());
        if !(ratio >= 1e-12) {
            return Err(Error::ContourThroughZero { re: q.re, im: q.im, ratio });
        }
        Ok(z.arg())
    };
    let mut n = samples.max(8);
    let mut phases = (0..n).map(|k| phase_at(contour_point(center, radius, k, n))).collect::<Result<Vec<_>>>()?;
    loop {
        let mut total = 0.0;
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let mut step = phases[(k + 1) % n] - phases[k];
            step -= std::f64::consts::TAU * (step / std::f64::consts::TAU).round();
            worst = worst.max(step.abs());
            total += step;
        }
        if worst < std::f64::consts::FRAC_PI_2 {
            return Ok((total / std::f64::consts::TAU).round() as i64);
        }
        if 2 * n > MAX_CONTOUR_SAMPLES {
            let q = contour_point(center, radius, 0, n);
            return Err(Error::ContourThroughZero { re: q.re, im: q.im, ratio: 0.0 });
        }
        let mut refined = Vec::with_capacity(2 * n);
        for (k, &ph) in phases.iter().enumerate() {
            refined.push(ph);
            refined.push(phase_at(contour_point(center, radius, 2 * k + 1, 2 * n))?);
        }
        phases = refined;
        n *= 2;
    }
}

/// The two-parameter family built from a witness graph `G`.
///
/// For a virtual witness: `m` parallel copies of `n` copies of `G` in
/// series. For an interaction witness: `m` series copies of `n` parallel
/// copies of `G`, closed by an edge between the terminals.
pub fn witness_family(w: &EscapeWitness, n: u64, m: u64) -> Result<SpExpr> {
    let base = realize_witness(w)?;
    match w.kind {
        Kind::Virtual => SpExpr::parallel_power(&SpExpr::series_power(&base, n)?, m),
        Kind::Interaction => {
            let chain = SpExpr::series_power(&SpExpr::parallel_power(&base, n)?, m)?;
            Ok(SpExpr::parallel(&chain, &SpExpr::edge()))
        }
    }
}

/// `m·Log f_q(w(q)^n) - target(q) - 2πik`, where `w(q)` is the witness value
/// continued in `q`; its roots are zeros of the `(n, m)` family member.
fn family_condition(w: &EscapeWitness, n: u64, m: u64, k: i32, q: Cx) -> Cx {
    let inner = f_raw(q, pow_n(word_value(q, &w.word, w.kind), n));
    let target = match w.kind {
        Kind::Virtual => (1.0 - q).ln(),
        Kind::Interaction => Cx::new(0.0, 0.0),
    };
    inner.ln() * m as f64 - target - Cx::new(0.0, std::f64::consts::TAU * k as f64)
}

/// Damped Newton with a central-difference derivative; a root strictly
/// inside `B_radius(center)` is returned.
fn newton_in_disk(phi: impl Fn(Cx) -> Cx, center: Cx, radius: f64) -> Option<Cx> {
    let mut q = center;
    for _ in 0..80 {
        let h = 1e-7 * (1.0 + q.norm());
        let d = (phi(q + h) - phi(q - h)) / (2.0 * h);
        let mut step = -phi(q) / d;
        if !step.is_finite() {
            return None;
        }
        if step.norm() > 0.25 * radius {
            step *= 0.25 * radius / step.norm();
        }
        q += step;
        if (q - center).norm() > 2.0 * radius {
            return None;
        }
        if step.norm() < 1e-13 * (1.0 + q.norm()) {
            break;
        }
    }
    ((q - center).norm() < radius && phi(q).norm() < 1e-8).then_some(q)
}

/// A family member with a counted zero near the witness parameter.
#[derive(Clone, Debug)]
pub struct FamilyZeros {
    pub n: u64,
    pub m: u64,
    pub zeros: i64,
    pub graph: SpExpr,
}

/// Scan the witness family for a member with at least one zero within
/// `radius` of `w.q`.
///
/// For each `n` the copy count `m` is aimed at the zero condition: a virtual
/// witness `v` gives a member with interaction `f_q(v^n)^m`, which equals
/// `1 - q` (so `Z = 0`) when `m·log f_q(v^n) ≡ log(1 - q)` modulo `2πi`; an
/// interaction witness `y` needs `f_q(y^n)^m = 1`. A few copy counts around
/// each estimate are tried; members on which Newton's method finds a root
/// in the disk are verified by [`count_zeros_in_disk`].
pub fn find_family_zero(w: &EscapeWitness, radius: f64, n_max: u64) -> Result<Option<FamilyZeros>> {
    let q = w.q;
    let tau = std::f64::consts::TAU;
    for n in 1..=n_max {
        let (inner, target) = match w.kind {
            Kind::Virtual => (f_raw(q, pow_n(w.value, n)), (1.0 - q).ln()),
            Kind::Interaction => (f_raw(q, pow_n(w.value, n)), Cx::new(0.0, 0.0)),
        };
        let step = inner.ln();
        if !(step.norm() > 0.0) || !step.norm().is_finite() {
            continue;
        }
        let mut candidates = Vec::new();
        for k in -3i32..=3 {
            let t = target + Cx::new(0.0, tau * k as f64);
            if t.norm() == 0.0 {
                continue;
            }
            let m0 = t.norm() / step.norm();
            for factor in [0.8, 0.9, 1.0, 1.1, 1.25] {
                let m = (m0 * factor).round();
                if (1.0..1e12).contains(&m) {
                    candidates.push(m as u64);
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        for m in candidates {
            if !(-3..=3).any(|k| newton_in_disk(|z| family_condition(w, n, m, k, z), q, radius).is_some()) {
                continue;
            }
            let graph = witness_family(w, n, m)?;
            match count_zeros_in_disk(&graph, q, radius, 256) {
                Ok(z) if z >= 1 => return Ok(Some(FamilyZeros { n, m, zeros: z, graph })),
                Ok(_) | Err(Error::ContourThroughZero { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}
