//! Closed forms for `GL_2` and `GL_3`, used as oracles against the generic
//! intersection and eigenflag machinery.
//!
//! For `GL_3` the torus through `B = u B+ u^{-1}` and `B' = v^{-1} B+ v`, with
//!
//! ```text
//!     | 1 0 0 |        | 1  0  0 |
//! u = | a 1 0 |,   v = | a' 1  0 |,
//!     | b c 1 |        | b' c' 1 |
//! ```
//!
//! has the frame `S = u (u^{-1} v^{-1})~` written out below, in terms of
//! `A = ac + a'c + a'c' - b - b'` and `C = ac' + b + b'`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, Rational, SquareMatrix};
use crate::flags::FlagPairClass;
use crate::pinning::{is_in_g_pos, y_gen, TorusElement};
use crate::tori::{iota, TorusFrame};

fn positive(name: &str, v: &Rational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive(format!("{name} = {v}")))
    }
}

/// `B = y_1(a) B+ y_1(-a)`, `B' = y_1(-c) B+ y_1(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GL2Params {
    pub a: Rational,
    pub c: Rational,
}

impl GL2Params {
    pub fn new(a: Rational, c: Rational) -> Result<Self> {
        positive("a", &a)?;
        positive("c", &c)?;
        Ok(GL2Params { a, c })
    }

    pub fn pair(&self) -> FlagPairClass {
        FlagPairClass::from_unipotents(
            &y_gen(2, 1, &self.a).expect("GL_2 has y_1"),
            &y_gen(2, 1, &self.c).expect("GL_2 has y_1"),
        )
        .expect("positive parameters give a positive pair")
    }

    pub fn frame(&self) -> Result<TorusFrame> {
        iota(&self.pair())
    }
}

/// The torus element with eigenvalues `t` (on the line of `B`) and `s`.
pub fn gl2_torus_matrix(p: &GL2Params, t: &Rational, s: &Rational) -> Result<SquareMatrix> {
    if t.is_zero() || s.is_zero() {
        return Err(Error::Precondition("torus coordinates must be nonzero".into()));
    }
    let (a, c) = (&p.a, &p.c);
    let ac = a + c;
    SquareMatrix::from_rows(vec![
        vec![(t * c + s * a) / &ac, (t - s) / &ac],
        vec![a * c * (t - s) / &ac, (t * a + s * c) / &ac],
    ])
}

/// Membership of the `GL_2` torus element in `G_{>0}`: `t / s > 1`.
pub fn gl2_membership(t: &Rational, s: &Rational) -> Result<bool> {
    if !t.is_positive() || !s.is_positive() {
        return Err(Error::Precondition("t and s must be positive".into()));
    }
    Ok(t > s)
}

/// The six coordinates of `(u, v)` in `U-_{>0} × U-_{>0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GL3Params {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub a1: Rational,
    pub b1: Rational,
    pub c1: Rational,
}

impl GL3Params {
    /// `a1, b1, c1` stand for `a', b', c'`.
    pub fn new(a: Rational, b: Rational, c: Rational, a1: Rational, b1: Rational, c1: Rational) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b), ("c", &c), ("a'", &a1), ("b'", &b1), ("c'", &c1)] {
            positive(name, v)?;
        }
        positive("ac - b", &(&a * &c - &b))?;
        positive("a'c' - b'", &(&a1 * &c1 - &b1))?;
        Ok(GL3Params { a, b, c, a1, b1, c1 })
    }

    pub fn big_a(&self) -> Rational {
        &self.a * &self.c + &self.a1 * &self.c + &self.a1 * &self.c1 - &self.b - &self.b1
    }

    pub fn big_c(&self) -> Rational {
        &self.a * &self.c1 + &self.b + &self.b1
    }

    pub fn u(&self) -> SquareMatrix {
        lower3(&self.a, &self.b, &self.c)
    }

    pub fn v(&self) -> SquareMatrix {
        lower3(&self.a1, &self.b1, &self.c1)
    }

    pub fn pair(&self) -> FlagPairClass {
        FlagPairClass::from_unipotents(&self.u(), &self.v()).expect("admissible parameters give a positive pair")
    }

    pub fn frame(&self) -> Result<TorusFrame> {
        iota(&self.pair())
    }

    /// `(ac - b)(a'c' - b') C / (b b' A)`, the second lower bound in (a).
    pub fn kappa(&self) -> Rational {
        let p = &(&self.a * &self.c - &self.b) * &(&self.a1 * &self.c1 - &self.b1);
        p * self.big_c() / (&self.b * &self.b1 * self.big_a())
    }

    pub fn to_strings(&self) -> [String; 6] {
        [&self.a, &self.b, &self.c, &self.a1, &self.b1, &self.c1].map(format_rational)
    }
}

fn lower3(a: &Rational, b: &Rational, c: &Rational) -> SquareMatrix {
    let (o, z) = (Rational::one(), Rational::zero());
    SquareMatrix::from_rows(vec![
        vec![o.clone(), z.clone(), z.clone()],
        vec![a.clone(), o.clone(), z],
        vec![b.clone(), c.clone(), o],
    ])
    .expect("3 x 3")
}

/// Shorthands shared by the closed forms.
struct Terms {
    a: Rational,
    b: Rational,
    c: Rational,
    a1: Rational,
    b1: Rational,
    c1: Rational,
    big_a: Rational,
    big_c: Rational,
    /// `ac - b`
    p: Rational,
    /// `a'c' - b'`
    q: Rational,
    /// `a a' c' - a b' + a' b`
    k1: Rational,
    /// `a c c' - b c' + b' c`
    k3: Rational,
}

impl Terms {
    fn new(g: &GL3Params) -> Self {
        let (a, b, c, a1, b1, c1) = (&g.a, &g.b, &g.c, &g.a1, &g.b1, &g.c1);
        Terms {
            big_a: g.big_a(),
            big_c: g.big_c(),
            p: a * c - b,
            q: a1 * c1 - b1,
            k1: a * a1 * c1 - a * b1 + a1 * b,
            k3: a * c * c1 - b * c1 + b1 * c,
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            a1: a1.clone(),
            b1: b1.clone(),
            c1: c1.clone(),
        }
    }
}

/// The frame `S` in closed form.
pub fn gl3_s(g: &GL3Params) -> SquareMatrix {
    let m = Terms::new(g);
    let (ca, cc) = (&m.big_a, &m.big_c);
    SquareMatrix::from_rows(vec![
        vec![Rational::one(), -(&m.c + &m.c1) / cc, ca.recip()],
        vec![m.a.clone(), (&m.b + &m.b1 - &m.a * &m.c) / cc, -&m.a1 / ca],
        vec![m.b.clone(), &m.k3 / cc, &m.q / ca],
    ])
    .expect("3 x 3")
}

/// `S^{-1}` in closed form.
pub fn gl3_s_inverse(g: &GL3Params) -> SquareMatrix {
    let m = Terms::new(g);
    let (ca, cc) = (&m.big_a, &m.big_c);
    SquareMatrix::from_rows(vec![
        vec![&m.b1 / cc, &m.c1 / cc, cc.recip()],
        vec![-&m.k1 / ca, (&m.q - &m.b) / ca, (&m.a + &m.a1) / ca],
        vec![m.p.clone(), -m.c.clone(), Rational::one()],
    ])
    .expect("3 x 3")
}

/// Coefficients `(α, β, γ)` with `g_ij = α t/C + β s/(AC) + γ r/A`.
fn g_coefficients(m: &Terms) -> [[(Rational, Rational, Rational); 3]; 3] {
    let (a, b, c, a1, b1, c1) = (&m.a, &m.b, &m.c, &m.a1, &m.b1, &m.c1);
    let cc1 = c + c1;
    let aa1 = a + a1;
    // b + b' - a'c' and ac - b - b'
    let e = b + b1 - a1 * c1;
    let f = &m.p - b1;
    [
        [
            (b1.clone(), &cc1 * &m.k1, m.p.clone()),
            (c1.clone(), &cc1 * &e, -c.clone()),
            (Rational::one(), -(&aa1 * &cc1), Rational::one()),
        ],
        [
            (a * b1, &f * &m.k1, -(a1 * &m.p)),
            (a * c1, &f * &e, a1 * c),
            (a.clone(), -(&aa1 * &f), -a1.clone()),
        ],
        [
            (b * b1, -(&m.k1 * &m.k3), &m.p * &m.q),
            (b * c1, -(&e * &m.k3), -(c * &m.q)),
            (b.clone(), &aa1 * &m.k3, m.q.clone()),
        ],
    ]
}

/// `S δ(t, s, r) S^{-1}` entry by entry, in the form
/// `g_ij = α_ij t/C + β_ij s/(AC) + γ_ij r/A`.
pub fn gl3_g_entries(g: &GL3Params, t: &Rational, s: &Rational, r: &Rational) -> Result<SquareMatrix> {
    if t.is_zero() || s.is_zero() || r.is_zero() {
        return Err(Error::Precondition("torus coordinates must be nonzero".into()));
    }
    let m = Terms::new(g);
    let coeff = g_coefficients(&m);
    let ac = &m.big_a * &m.big_c;
    Ok(SquareMatrix::from_fn(3, |i, j| {
        let (al, be, ga) = &coeff[i][j];
        al * t / &m.big_c + be * s / &ac + ga * r / &m.big_a
    }))
}

/// `(t/s - 1)/(1 - r/s)` and `(s/r - 1)/(1 - s/t)`.
fn ratios(t: &Rational, s: &Rational, r: &Rational) -> Result<(Rational, Rational)> {
    if !(r.is_positive() && r < s && s < t) {
        return Err(Error::Precondition("expected t > s > r > 0".into()));
    }
    let one = Rational::one();
    let x = (t / s - &one) / (&one - r / s);
    let y = (s / r - &one) / (&one - s / t);
    Ok((x, y))
}

/// The conditions (a) and (b) as stated for `t > s > r > 0`:
///
/// * (a) `X > C/A` and `X > (ac-b)(a'c'-b')C/(bb'A)`,
/// * (b) `Y > b'/(a'c'-b')` and `Y > (ac-b)/b`,
///
/// with `X = (t/s-1)/(1-r/s)` and `Y = (s/r-1)/(1-s/t)`.
///
/// Condition (b) in this form is not equivalent to positivity of the two
/// corner minors it is meant to encode; see [`gl3_conditions_reconciled`].
pub fn gl3_conditions(g: &GL3Params, t: &Rational, s: &Rational, r: &Rational) -> Result<(bool, bool)> {
    let (x, y) = ratios(t, s, r)?;
    let m = Terms::new(g);
    let cond_a = x > &m.big_c / &m.big_a && x > g.kappa();
    let cond_b = y > &m.b1 / &m.q && y > &m.p / &m.b;
    Ok((cond_a, cond_b))
}

/// Conditions (a), (b) derived from the corner entries of
/// `g^{-1} = S δ^{-1} S^{-1}`:
///
/// * `(g^{-1})_13 > 0` iff `Y > A/C`,
/// * `(g^{-1})_31 > 0` iff `Y > bb'A/((ac-b)(a'c'-b')C)`.
///
/// (a) is unchanged. With these, `t > s > r` and (a), (b) characterize
/// `S δ S^{-1} in G_{>0}`.
pub fn gl3_conditions_reconciled(g: &GL3Params, t: &Rational, s: &Rational, r: &Rational) -> Result<(bool, bool)> {
    let (x, y) = ratios(t, s, r)?;
    let k1 = g.big_c() / g.big_a();
    let k2 = g.kappa();
    Ok((x > k1 && x > k2, y > k1.recip() && y > k2.recip()))
}

/// How the `s` coefficient of a transcribed entry is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// Taken exactly as written.
    Literal,
    /// The `s` term divided by `AC`.
    SOverAc,
}

/// Which matrix a transcribed form is meant to describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `g = S δ(t,s,r) S^{-1}`
    G,
    /// `g^{-1}`
    GInverse,
}

type FormEval = fn(&Terms, &Rational, &Rational, &Rational) -> Rational;

/// One transcribed closed form of an entry of `g` or `g^{-1}`.
pub struct TranscribedForm {
    pub target: Target,
    pub row: usize,
    pub col: usize,
    /// 1 for the expanded form, 2 for the factored one.
    pub form: usize,
    pub reading: Reading,
    eval: FormEval,
}

impl TranscribedForm {
    pub fn label(&self) -> String {
        let prime = if self.target == Target::GInverse { "'" } else { "" };
        let reading = match self.reading {
            Reading::Literal => "literal",
            Reading::SOverAc => "s-term over AC",
        };
        format!("g{prime}{}{} form {} ({reading})", self.row, self.col, self.form)
    }

    pub fn eval(&self, g: &GL3Params, t: &Rational, s: &Rational, r: &Rational) -> Rational {
        (self.eval)(&Terms::new(g), t, s, r)
    }
}

macro_rules! form {
    ($target:ident, $row:expr, $col:expr, $form:expr, $reading:ident, |$m:ident, $t:ident, $s:ident, $r:ident| $body:expr) => {
        TranscribedForm {
            target: Target::$target,
            row: $row,
            col: $col,
            form: $form,
            reading: Reading::$reading,
            eval: |$m: &Terms, $t: &Rational, $s: &Rational, $r: &Rational| $body,
        }
    };
}

/// Expanded forms `α t/C + β' s + γ r/A` come in two readings: `s` literally,
/// and `s/(AC)`.
fn over(m: &Terms, reading: Reading) -> Rational {
    match reading {
        Reading::Literal => Rational::one(),
        Reading::SOverAc => (&m.big_a * &m.big_c).recip(),
    }
}

/// Every transcribed form of the entries of `g` and of the four corner
/// entries of `g^{-1}`, verbatim (including apparent misprints), for
/// reconciliation against the matrix products.
pub fn transcribed_forms() -> Vec<TranscribedForm> {
    let mut v = Vec::new();
    macro_rules! both {
        ($row:expr, $col:expr, $form:expr, |$m:ident, $t:ident, $s:ident, $r:ident, $w:ident| $body:expr) => {
            v.push(form!(G, $row, $col, $form, Literal, |$m, $t, $s, $r| {
                let $w = over($m, Reading::Literal);
                $body
            }));
            v.push(form!(G, $row, $col, $form, SOverAc, |$m, $t, $s, $r| {
                let $w = over($m, Reading::SOverAc);
                $body
            }));
        };
    }
    // g11 carries "-ab' + ab'" where the frame has "-ab' + a'b"
    both!(1, 1, 1, |m, t, s, r, w| &m.b1 * t / &m.big_c
        + (&m.c + &m.c1)
            * (&m.a * &m.a1 * &m.c1 - &m.a * &m.b1 + &m.a * &m.b1)
            * s
            * w
        + &m.p * r / &m.big_a);
    both!(1, 2, 1, |m, t, s, r, w| &m.c1 * t / &m.big_c
        - (&m.c + &m.c1) * (&m.q - &m.b) * s * w
        - &m.c * r / &m.big_a);
    v.push(form!(G, 1, 2, 2, Literal, |m, t, s, r| &m.c1 * (t - s) / &m.big_c
        + &m.c * (s - r) / &m.big_a));
    both!(1, 3, 1, |m, t, s, r, w| t / &m.big_c
        - (&m.a + &m.a1) * (&m.c + &m.c1) * s * w
        + r / &m.big_a);
    v.push(form!(G, 1, 3, 2, Literal, |m, t, s, r| (t - s) / &m.big_c
        - (s - r) / &m.big_a));
    both!(2, 1, 1, |m, t, s, r, w| &m.a * &m.b1 * t / &m.big_c
        - (&m.b + &m.b1 - &m.a * &m.c) * &m.k1 * s * w
        - &m.a1 * &m.p * r / &m.big_a);
    v.push(form!(G, 2, 1, 2, Literal, |m, t, s, r| &m.a * &m.b1 * (t - s)
        / &m.big_c
        + &m.a1 * &m.p * (s - r) / &m.big_a));
    both!(2, 2, 1, |m, t, s, r, w| &m.a * &m.c1 * t / &m.big_c
        + (&m.b + &m.b1 - &m.a * &m.c) * (&m.q - &m.b) * s * w
        + &m.a1 * &m.c * r / &m.big_a);
    both!(2, 2, 2, |m, t, s, r, w| &m.a * &m.c1 * (t - s) / &m.big_c
        + (&m.q + &m.p) * (&m.b + &m.b1 + &m.a * &m.c1) * s * w
        + &m.a1 * &m.c * r / &m.big_a);
    both!(2, 3, 1, |m, t, s, r, w| &m.a * t / &m.big_c
        + (&m.b + &m.b1 - &m.a * &m.c) * (&m.a + &m.a1) * s * w
        - &m.a1 * r / &m.big_a);
    v.push(form!(G, 2, 3, 2, Literal, |m, t, s, r| &m.a * (t - s) / &m.big_c
        + &m.a1 * (s - r) / &m.big_a));
    both!(3, 1, 1, |m, t, s, r, w| &m.b * &m.b1 * t / &m.big_c
        - &m.k3 * &m.k1 * s * w
        + &m.p * &m.q * r / &m.big_a);
    v.push(form!(G, 3, 1, 2, Literal, |m, t, s, r| &m.b * &m.b1 * (t - s)
        / &m.big_c
        - &m.p * &m.q * (s - r) / &m.big_a));
    // g32 has its t-term over A where the frame gives C
    both!(3, 2, 1, |m, t, s, r, w| &m.b * &m.c1 * t / &m.big_a
        + &m.k3 * (&m.q - &m.b) * s * w
        - &m.c * &m.q * r / &m.big_a);
    v.push(form!(G, 3, 2, 2, Literal, |m, t, s, r| &m.b * &m.c1 * (t - s)
        / &m.big_a
        + &m.c * &m.q * (s - r) / &m.big_a));
    both!(3, 3, 1, |m, t, s, r, w| &m.b * t / &m.big_c
        + &m.k3 * (&m.a + &m.a1) * s * w
        + &m.q * r / &m.big_a);

    v.push(form!(GInverse, 1, 1, 1, Literal, |m, t, s, r| (&m.b1 / t
        + &m.a * &m.c1 / s
        + &m.b / r)
        / &m.big_c));
    v.push(form!(GInverse, 1, 3, 1, Literal, |m, t, s, r| (&m.b1 / t
        - &m.a1 * &m.c / s
        + &m.q / r)
        / (&m.big_a * &m.big_c)));
    v.push(form!(GInverse, 1, 3, 2, Literal, |m, t, s, r| (&m.q
        * (r.recip() - s.recip())
        - &m.b1 * (s.recip() - t.recip()))
        / (&m.big_a * &m.big_c)));
    v.push(form!(GInverse, 3, 1, 1, Literal, |m, t, s, r| &m.p / t
        - &m.a * &m.c / s
        + &m.b / r));
    v.push(form!(GInverse, 3, 1, 2, Literal, |m, t, s, r| &m.b
        * (r.recip() - s.recip())
        - &m.p * (s.recip() - t.recip())));
    v.push(form!(GInverse, 3, 3, 1, Literal, |m, t, s, r| (&m.p / t
        + &m.a1 * &m.c / s
        + &m.q / r)
        / &m.big_a));
    v
}

/// Verdict for one transcribed form over a sample set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconciliationEntry {
    pub label: String,
    pub target: Target,
    pub row: usize,
    pub col: usize,
    pub form: usize,
    pub reading: Reading,
    /// Agrees with `S δ S^{-1}` (for `g`) or `S δ^{-1} S^{-1}` (for `g^{-1}`)
    /// on every sample.
    pub agrees: bool,
    /// For `g^{-1}` forms: agrees with the reversed conjugation
    /// `S^{-1} δ^{-1} S` instead.
    pub agrees_with_reversed_conjugation: Option<bool>,
    pub samples: usize,
    /// Parameters `(a,b,c,a',b',c',t,s,r)` of the first disagreement.
    pub first_mismatch: Option<Vec<String>>,
}

/// A sample point for the `GL_3` closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GL3Sample {
    pub params: GL3Params,
    pub t: Rational,
    pub s: Rational,
    pub r: Rational,
}

impl GL3Sample {
    pub fn delta(&self) -> TorusElement {
        TorusElement::new(vec![self.t.clone(), self.s.clone(), self.r.clone()]).expect("nonzero torus coordinates")
    }

    fn describe(&self) -> Vec<String> {
        let mut v = self.params.to_strings().to_vec();
        v.extend([&self.t, &self.s, &self.r].map(format_rational));
        v
    }
}

/// Evaluates every transcribed form against the matrix products.
pub fn reconcile(samples: &[GL3Sample]) -> Vec<ReconciliationEntry> {
    let products: Vec<(SquareMatrix, SquareMatrix, SquareMatrix)> = samples
        .iter()
        .map(|x| {
            let (s, si) = (gl3_s(&x.params), gl3_s_inverse(&x.params));
            let d = x.delta();
            let g = &(&s * &d.matrix()) * &si;
            let ginv = &(&s * &d.inverse().matrix()) * &si;
            let reversed = &(&si * &d.inverse().matrix()) * &s;
            (g, ginv, reversed)
        })
        .collect();
    transcribed_forms()
        .iter()
        .map(|f| {
            let (i, j) = (f.row - 1, f.col - 1);
            let mut first_mismatch = None;
            let mut reversed_ok = true;
            for (x, (g, ginv, rev)) in samples.iter().zip(&products) {
                let value = f.eval(&x.params, &x.t, &x.s, &x.r);
                let oracle = match f.target {
                    Target::G => g,
                    Target::GInverse => ginv,
                };
                if &value != oracle.get(i, j) && first_mismatch.is_none() {
                    first_mismatch = Some(x.describe());
                }
                reversed_ok &= &value == rev.get(i, j);
            }
            ReconciliationEntry {
                label: f.label(),
                target: f.target,
                row: f.row,
                col: f.col,
                form: f.form,
                reading: f.reading,
                agrees: first_mismatch.is_none(),
                agrees_with_reversed_conjugation: (f.target == Target::GInverse).then_some(reversed_ok),
                samples: samples.len(),
                first_mismatch,
            }
        })
        .collect()
}

/// One `(a', b', c', t, s, r)` trial for a fixed `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSample {
    pub params: GL3Params,
    pub t: Rational,
    pub s: Rational,
    pub r: Rational,
    /// `S δ S^{-1}` is totally positive.
    pub realized: bool,
    /// `Y > (ac - b)/b`, the bound claimed to be necessary for realizability.
    pub stated_bound_holds: bool,
}

/// Eigenvalue triples of totally positive elements of one fixed `B`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionReport {
    pub samples: Vec<RegionSample>,
}

impl RegionReport {
    pub fn realized(&self) -> impl Iterator<Item = &RegionSample> {
        self.samples.iter().filter(|x| x.realized)
    }

    /// Trials with `t > s > r` that were not realized by their `(a', b', c')`.
    pub fn not_realized(&self) -> impl Iterator<Item = &RegionSample> {
        self.samples.iter().filter(|x| !x.realized)
    }

    /// Realized triples violating the stated bound.
    pub fn bound_violations(&self) -> impl Iterator<Item = &RegionSample> {
        self.samples.iter().filter(|x| x.realized && !x.stated_bound_holds)
    }
}

/// For fixed `(a, b, c)`, tests each `(a', b', c', t, s, r)` with `t > s > r > 0`
/// for total positivity of `S δ S^{-1}`, and records whether the triple
/// satisfies `(s/r - 1)/(1 - s/t) > (ac - b)/b`.
pub fn gl3_eigen_region_probe(
    abc: (&Rational, &Rational, &Rational),
    trials: &[(Rational, Rational, Rational, Rational, Rational, Rational)],
) -> Result<RegionReport> {
    let (a, b, c) = abc;
    let mut samples = Vec::with_capacity(trials.len());
    for (a1, b1, c1, t, s, r) in trials {
        let params = GL3Params::new(a.clone(), b.clone(), c.clone(), a1.clone(), b1.clone(), c1.clone())?;
        let (_, y) = ratios(t, s, r)?;
        let g = gl3_g_entries(&params, t, s, r)?;
        samples.push(RegionSample {
            realized: is_in_g_pos(&g).verdict,
            stated_bound_holds: y > (a * c - b) / b,
            params,
            t: t.clone(),
            s: s.clone(),
            r: r.clone(),
        });
    }
    Ok(RegionReport { samples })
}
