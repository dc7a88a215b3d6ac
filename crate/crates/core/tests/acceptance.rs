//! Acceptance run: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines are always printed. A criterion whose stated form is
//! known to be false is listed in `KNOWN_FALSE`; it prints FAIL but does not
//! fail the run, and any other FAIL does.

use std::collections::BTreeSet;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use ascover::astower::{self, Subspace, Tower};
use ascover::elliptic;
use ascover::ffield::{count_base_points, BaseCurve, Divisor, FFElem};
use ascover::planemodel;
use ascover::report;
use ascover::rrspace::{self, RrSpace};
use ascover::{fixtures, FieldSpec, Poly2};

/// Criterion 3 asks for `F = [-1] + iota`, which is false with the standard
/// group law; `F = [-1] - iota` is checked alongside.
const KNOWN_FALSE: &[u32] = &[3];

const D: &str = "place(x^7+x+1,x^6+x^5+x^2+x)";

/// A small GF(2^n) for the oracles, independent of the library field code.
#[derive(Clone, Copy)]
struct Gf {
    n: u32,
    modulus: u32,
}

impl Gf {
    fn new(n: u32) -> Gf {
        const MODULI: [u32; 15] = [
            0, 0b11, 0b111, 0b1011, 0b10011, 0b100101, 0b1000011, 0b10000011, 0x11b, 0x211, 0x409, 0x805,
            0x1009, 0x201b, 0x4021,
        ];
        Gf { n, modulus: MODULI[n as usize] }
    }

    fn size(self) -> u32 {
        1 << self.n
    }

    fn mul(self, mut a: u32, mut b: u32) -> u32 {
        let mut r = 0;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.n & 1 == 1 {
                a ^= self.modulus;
            }
        }
        r
    }

    fn trace(self, a: u32) -> u32 {
        let (mut t, mut s) = (a, a);
        for _ in 1..self.n {
            s = self.mul(s, s);
            t ^= s;
        }
        t
    }

    fn inv(self, a: u32) -> u32 {
        // a^(2^n - 2)
        let mut r = 1;
        for _ in 0..self.size() - 2 {
            r = self.mul(r, a);
        }
        r
    }

    fn eval(self, p: &Poly2, x: u32) -> u32 {
        (0..=p.deg().max(0) as usize).rev().fold(0, |acc, i| self.mul(acc, x) ^ p.coeff(i) as u32)
    }

    /// Value of `f` at `(x, y)`, `None` at a pole of the denominator.
    fn value(self, f: &FFElem, x: u32, y: u32) -> Option<u32> {
        let den = self.eval(f.den(), x);
        (den != 0).then(|| self.mul(self.eval(f.u(), x) ^ self.mul(self.eval(f.v(), x), y), self.inv(den)))
    }

    fn roots_of_wp(self, c: u32) -> u64 {
        (0..self.size()).filter(|&w| self.mul(w, w) ^ w == c).count() as u64
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Collects failed sub-checks of one criterion.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn ok(&mut self, what: &str, cond: bool) {
        if !cond {
            self.0.push(what.to_string());
        }
    }

    fn finish(self, detail: &str) -> Outcome {
        if self.0.is_empty() {
            outcome(true, detail)
        } else {
            outcome(false, self.0.join("; "))
        }
    }
}

fn serre() -> (Tower, BaseCurve, Divisor, Divisor) {
    let t = fixtures::serre();
    let e = t.base().clone();
    let d = Divisor::parse(&e, D).unwrap();
    let r = Divisor::parse(&e, "R").unwrap();
    (t, e, d, r)
}

fn oracle_e_count(n: u32) -> u64 {
    // y^2 + y = c has two roots exactly when Tr(c) = 0
    let k = Gf::new(n);
    1 + (0..k.size()).filter(|&x| k.trace(k.mul(k.mul(x, x), x) ^ x) == 0).count() as u64 * 2
}

fn criterion_1() -> Outcome {
    let mut f = Failures::default();
    for n in 1..=14 {
        let want = oracle_e_count(n);
        f.eq(&format!("closed form n={n}"), elliptic::count_closed_form(n), want);
        let k = FieldSpec::new(n).unwrap();
        f.eq(&format!("enumeration n={n}"), elliptic::points(&k).len() as u64, want);
        f.eq(&format!("place count n={n}"), count_base_points(fixtures::serre().base(), n).unwrap(), want);
    }
    f.eq("n=1", oracle_e_count(1), 5);
    f.eq("n=7", oracle_e_count(7), 145);
    f.finish("n = 1..14 agree; 5 and 145")
}

fn criterion_2() -> Outcome {
    let (_, e, _, _) = serre();
    let g = FFElem::parse("x^6+x^5+x^2+x", "1", "1").unwrap();
    let mut f = Failures::default();
    // the norm (u^2 + u + x^3 + x with u the polynomial part) carries the x-degrees
    let u = Poly2::parse("x^6+x^5+x^2+x").unwrap();
    let norm = u.square().add(&u).add(&Poly2::parse("x^3+x").unwrap());
    let factored = Poly2::parse("x^3").unwrap().mul(&Poly2::parse("x^2+1").unwrap()).mul(&Poly2::parse("x^7+x+1").unwrap());
    f.eq("norm", norm, factored);
    let want = Divisor::parse(&e, &format!("3*(0,0) + 2*(1,0) + {D} - 12*O")).unwrap();
    let got = e.divisor_of(&g).unwrap();
    f.eq("divisor", got.to_string(), want.to_string());
    f.finish(&format!("div = {want}"))
}

fn criterion_3() -> Outcome {
    // independent group law on y^2 + y = x^3 + x
    type P = Option<(u32, u32)>;
    fn add(k: Gf, p: P, q: P) -> P {
        let ((x1, y1), (x2, y2)) = match (p, q) {
            (None, q) => return q,
            (p, None) => return p,
            (Some(a), Some(b)) => (a, b),
        };
        if x1 == x2 && y1 != y2 {
            return None;
        }
        let l = if x1 == x2 { k.mul(x1, x1) ^ 1 } else { k.mul(y1 ^ y2, k.inv(x1 ^ x2)) };
        let x3 = k.mul(l, l) ^ x1 ^ x2;
        Some((x3, k.mul(l, x1 ^ x3) ^ y1 ^ 1))
    }
    let neg = |p: P| p.map(|(x, y)| (x, y ^ 1));
    let iota = |p: P| p.map(|(x, y)| (x ^ 1, y ^ x ^ 1));
    let mut literal = true;
    let mut corrected = true;
    let mut iota_sq = true;
    let mut library_agrees = true;
    for n in 1..=7 {
        let k = Gf::new(n);
        let mut pts: Vec<P> = vec![None];
        for x in 0..k.size() {
            for y in 0..k.size() {
                if k.mul(y, y) ^ y == k.mul(k.mul(x, x), x) ^ x {
                    pts.push(Some((x, y)));
                }
            }
        }
        let (mut lit_n, mut cor_n) = (true, true);
        for p in pts {
            let frob = p.map(|(x, y)| (k.mul(x, x), k.mul(y, y)));
            iota_sq &= iota(iota(p)) == neg(p);
            lit_n &= frob == add(k, neg(p), iota(p));
            cor_n &= frob == add(k, neg(p), neg(iota(p)));
        }
        library_agrees &= elliptic::frobenius_identity_check(n).unwrap() == lit_n;
        library_agrees &= elliptic::frobenius_relation_holds(n, -1).unwrap() == cor_n;
        literal &= lit_n;
        corrected &= cor_n;
    }
    let mut detail = format!(
        "iota^2 = [-1]: {iota_sq}; F = [-1] + iota: {literal}; F = [-1] - iota: {corrected} (n <= 7)"
    );
    if !(iota_sq && !literal && corrected && library_agrees) {
        detail.push_str(DIFFERS);
    }
    outcome(iota_sq && literal, detail)
}

const DIFFERS: &str = " [differs from the documented outcome]";

fn criterion_4() -> Outcome {
    let (t, e, d, r) = serre();
    let mut f = Failures::default();
    let ldr = RrSpace::new(&e, &d.sub(&r)).unwrap();
    f.eq("dim L(D-R)", ldr.dim(), 2);
    let (f1, f2, f3) = (t.covers()[0].clone(), t.covers()[1].clone(), t.covers()[2].clone());
    let got: BTreeSet<String> = (0..4u32)
        .map(|m| ldr.element(&[m & 1 == 1, m & 2 == 2]).to_string())
        .collect();
    let want: BTreeSet<String> = [FFElem::zero(), f1.clone(), f2.clone(), f1.add(&f2)].iter().map(|x| x.to_string()).collect();
    f.eq("span", got, want);
    // the Riemann-Roch formula on a genus-1 curve gives deg G for deg G > 0
    let two_d_r = d.scale(2).sub(&r);
    f.eq("dim L(2D-R)", rrspace::rr_basis(&e, &two_d_r).unwrap().len() as i64, two_d_r.degree());
    let w = rrspace::wp_image_subspace(&e, &d, &r).unwrap();
    f.eq("dim wp(L(D)) + L(D-R)", w.dim(), (7 - 1) + 2);
    f.ok("f3 outside the image", !w.contains(&f3).unwrap());
    f.ok("f3 in L(2D-R)", rrspace::rr_member(&f3, &e, &two_d_r).unwrap());
    f.finish("dims 2, 9, 8; span {0, f1, f2, f1+f2}; f3 in the complement")
}

fn criterion_5() -> Outcome {
    let (s, e, _, _) = serre();
    let h = fixtures::h();
    let mut f = Failures::default();
    let g = |t: &Tower, sub: &str| astower::genus(t, &Subspace::parse(t.k(), sub).unwrap()).unwrap();
    f.eq("X1", g(&s, "1"), 8);
    f.eq("X1 by Riemann-Hurwitz", astower::rh_single_cover_genus(&e, &s.covers()[0]).unwrap(), 8);
    f.eq("X12", g(&s, "3"), 22);
    f.eq("X123", g(&s, "7"), 50);
    f.eq("H", h.base().genus(), 2);
    f.eq("C1", g(&h, "1"), 8);
    f.eq("C2", g(&h, "3"), 22);
    for t in [&s, &h] {
        for m in 1..1u64 << t.k() {
            let by_conductor = astower::genus(t, &Subspace::new(t.k(), &[m]).unwrap()).unwrap();
            let by_rh = astower::rh_single_cover_genus(t.base(), &t.function(m)).unwrap();
            f.eq(&format!("single cover {m}"), by_conductor, by_rh);
        }
    }
    f.finish("8, 22, 50; 2, 8, 22; both methods agree on every single cover")
}

/// Exhaustive count for the built-in tower: affine solutions of
/// `y^2 + y = x^3 + x`, `w_i^2 + w_i = f_i` plus the fibre above `O`.
/// Every `f_i` has a pole of order 14 in its denominator and at most 13 in
/// its numerator at `O`, so it vanishes there and `O` splits completely.
fn oracle_serre_count(t: &Tower, r: &Subspace, n: u32) -> u64 {
    let k = Gf::new(n);
    let gens: Vec<FFElem> = r.basis().iter().map(|&m| t.function(m)).collect();
    for f in &gens {
        let at_o = 2 * f.den().deg() - (2 * f.u().deg()).max(2 * f.v().deg() + 3);
        assert!(at_o > 0, "oracle assumes f vanishes at O");
    }
    let mut total = 1 << gens.len();
    for x in 0..k.size() {
        let c = k.mul(k.mul(x, x), x) ^ x;
        for y in (0..k.size()).filter(|&y| k.mul(y, y) ^ y == c) {
            total += gens
                .iter()
                .map(|f| k.roots_of_wp(k.value(f, x, y).expect("no poles for n < 7")))
                .product::<u64>();
        }
    }
    total
}

fn criterion_6() -> Outcome {
    let s = fixtures::serre();
    let h = fixtures::h();
    let mut f = Failures::default();
    let c = |t: &Tower, sub: &str| astower::count_points(t, &Subspace::parse(t.k(), sub).unwrap(), 1, 1).unwrap();
    f.eq("X123", c(&s, "7"), 40);
    f.eq("X12", c(&s, "3"), 20);
    f.eq("C1", c(&h, "1"), 11);
    f.eq("C2", c(&h, "3"), 21);
    f.eq("H", c(&h, "0"), 6);
    let x1 = c(&s, "1");
    let oracle = oracle_serre_count(&s, &Subspace::parse(3, "1").unwrap(), 1);
    f.eq("X1 against exhaustive search", x1, oracle);
    f.finish(&format!("40, 20, 11, 21, 6; X1 = {x1} by search (the lattice formula says 10, the tabulated claim is 8)"))
}

fn criterion_7() -> Outcome {
    let s = fixtures::serre();
    let mut f = Failures::default();
    let rows = astower::lattice_report(&s, 2).unwrap();
    f.eq("rows", rows.len(), 16);
    for row in &rows {
        f.eq(&format!("g({})", row.subspace), row.genus, 1 + 7 * (row.subspace.size() - 1));
        for n in 1..=4 {
            let oracle = oracle_serre_count(&s, &row.subspace, n);
            let got = astower::count_points(&s, &row.subspace, n, 1).unwrap();
            f.eq(&format!("#X_{}(GF(2^{n}))", row.subspace), got, oracle);
        }
    }
    f.finish("all 16 subspaces: g = 1 + 7(#R - 1); counts match exhaustive search for n <= 4")
}

fn criterion_8() -> Outcome {
    let (t, e, _, _) = serre();
    let f3 = &t.covers()[2];
    let mut f = Failures::default();
    let want = Divisor::parse(&e, &format!("8*O + 3*(1,1) + (0,0) + (0,1) + (1,0) - 2*{D}")).unwrap();
    f.eq("div f3", e.divisor_of(f3).unwrap().to_string(), want.to_string());
    let want = Divisor::parse(&e, &format!("12*O + 2*(1,1) - 2*{D}")).unwrap();
    f.eq("div df3", e.differential_divisor(&e.derivative(f3)).unwrap().to_string(), want.to_string());
    f.finish("div f3 and div df3 as stated")
}

fn criterion_9() -> Outcome {
    let t = fixtures::serre();
    let e = t.base();
    let mut f = Failures::default();
    let oct = planemodel::octic_minpoly(&t).unwrap();
    let [f1, f2, f3] = [&t.covers()[0], &t.covers()[1], &t.covers()[2]];
    let m = |a: &FFElem, b: &FFElem| e.mul(a, b);
    let (p12, p13, p23) = (m(f1, f2), m(f1, f3), m(f2, f3));
    let p = m(&p12, f3);
    let a6 = f1.add(f2).add(f3);
    let a5 = p.add(&p12).add(&p13).add(&p23);
    let a4 = e.square(&p12).add(&e.square(&p13)).add(&e.square(&p23)).add(&p);
    let want = [
        e.pow(&p, 4),
        e.pow(&p, 3),
        m(&a6, &e.pow(&p, 2)),
        m(&a5, &p),
        a4,
        a5,
        a6,
        FFElem::one(),
        FFElem::one(),
    ];
    for (i, w) in want.iter().enumerate() {
        f.eq(&format!("octic T^{i}"), &oct[i], w);
    }
    let sed = planemodel::sedectic_minpoly(&t).unwrap();
    let q = |s: &str| Poly2::parse(s).unwrap();
    let den = |e: u64| q("x^7+x+1").pow(e);
    let xx = q("x^2+x");
    let frac = |n: Poly2, e: u64| FFElem::from_rational(n, den(e)).unwrap();
    f.eq("T^14", &sed[14], &frac(q("x^14+x^11+x^10+x^6+x^3+x^2+1"), 2));
    f.eq("T^13", &sed[13], &frac(q("x^22+x^20+x^14+x^13+x^11+x^6"), 4));
    f.eq("T^1", &sed[1], &frac(xx.pow(31).mul(&q("x^13+x^12+x^11+x^10+x^8+x^5+x^4+x+1")), 16));
    f.eq("T^0", &sed[0], &frac(xx.pow(36), 16));
    f.finish("octic closed form; T^14, T^13, T^1, T^0 of the degree-16 polynomial")
}

fn criterion_10() -> Outcome {
    // 0.6272·50 + 9.562 = (6272·50 + 95620) / 10^4
    let bound = (6272 * 50 + 95620) / 10_000;
    let count = astower::count_points(&fixtures::serre(), &Subspace::full(3), 1, 1).unwrap();
    let mut f = Failures::default();
    f.eq("bound", report::bound_at(50), bound);
    f.eq("bound value", bound, 40);
    f.eq("attained", count, bound);
    f.finish("floor(0.6272*50 + 9.562) = 40 = #X123(F2)")
}

fn run_prop<S: Strategy>(f: &mut Failures, name: &str, cases: u32, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    if let Err(e) = runner.run(&s, test) {
        f.0.push(format!("{name}: {e}"));
    }
}

fn small_poly() -> impl Strategy<Value = Poly2> {
    (0u64..1 << 8).prop_map(Poly2::from_u64)
}

fn small_elem() -> impl Strategy<Value = FFElem> {
    (small_poly(), small_poly(), 1u64..1 << 5)
        .prop_filter("nonzero", |(u, v, _)| !(u.is_zero() && v.is_zero()))
        .prop_map(|(u, v, d)| FFElem::new(u, v, Poly2::from_u64(d)).unwrap())
}

fn criterion_11() -> Outcome {
    let mut f = Failures::default();
    // field axioms in GF(2^n) against the oracle field
    run_prop(&mut f, "field axioms", 256, (1u32..=14, any::<u32>(), any::<u32>(), any::<u32>()), |(n, a, b, c)| {
        let o = Gf::new(n);
        let k = FieldSpec::with_modulus(&Poly2::from_u64(o.modulus as u64)).unwrap();
        let mask = (1u32 << n) - 1;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(k.mul(a, b), o.mul(a, b));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.trace(a), o.trace(a));
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        }
        Ok(())
    });
    for n in 1..=16 {
        let k = FieldSpec::new(n).unwrap();
        let zeros = k.elements().filter(|&a| k.trace(a) == 0).count() as u64;
        f.eq(&format!("trace balance n={n}"), zeros, 1 << (n - 1));
    }
    let e = fixtures::serre().base().clone();
    let h = fixtures::h().base().clone();
    for (name, c) in [("E", e.clone()), ("H", h.clone())] {
        run_prop(&mut f, &format!("principal divisors on {name}"), 24, small_elem(), |a| {
            prop_assert_eq!(c.divisor_of(&a).unwrap().degree(), 0);
            Ok(())
        });
    }
    for (c, g) in [(&e, "3*(0,0) + (1,1) - O"), (&e, format!("{D} - R").as_str()), (&e, "5*O"), (&h, "3*R"), (&h, "place(inf,0) + 2*place(x^2+x+1) + (0,0)")] {
        let d = Divisor::parse(c, g).unwrap();
        let genus = c.genus() as i64;
        if d.degree() > 2 * genus - 2 {
            f.eq(&format!("dim L({g})"), RrSpace::new(c, &d).unwrap().dim() as i64, d.degree() + 1 - genus);
        }
    }
    let mut weil = 0;
    for t in [fixtures::serre(), fixtures::h()] {
        for r in Subspace::all(t.k()) {
            let g = astower::genus(&t, &r).unwrap() as f64;
            for n in 1..=12 {
                let count = astower::count_points(&t, &r, n, 2).unwrap();
                let dev = (count as f64 - ((1u64 << n) + 1) as f64).abs();
                f.ok(&format!("Weil bound for {} n={n}", r), dev <= 2.0 * g * 2f64.powf(n as f64 / 2.0));
                weil += 1;
            }
        }
    }
    let s = fixtures::serre();
    for n in [1, 7, 10] {
        let one = astower::count_points(&s, &Subspace::full(3), n, 1).unwrap();
        for threads in [2, 3, 8] {
            f.eq(&format!("threads {threads} n={n}"), astower::count_points(&s, &Subspace::full(3), n, threads).unwrap(), one);
        }
    }
    f.finish(&format!("field axioms, trace balance, principal divisors, Riemann-Roch, {weil} Weil checks, thread invariance"))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut unexpected = 0;
    for (i, run) in criteria {
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {i:>2}: {status}  {}", o.detail);
        let known = KNOWN_FALSE.contains(&i);
        if known {
            println!("              stated form is false; see the decisions ledger");
        }
        let documented = !o.detail.contains(DIFFERS);
        if (!o.pass && !known) || (known && (o.pass || !documented)) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    } else {
        println!("all criteria behave as documented");
        ExitCode::SUCCESS
    }
}
