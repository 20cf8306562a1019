use fracbed::fields::TestFamily;
use fracbed::inequalities::{verify, TheoremId, Tier, VerifyRequest};

fn run(label: &str, req: VerifyRequest) {
    let t = std::time::Instant::now();
    match verify(&req) {
        Ok(r) => println!(
            "{label}: lhs={:.6e} rhs={:.6e} ratio={:.4} verdict={:?} ({} ms) {:?}",
            r.lhs,
            r.rhs,
            r.ratio,
            r.verdict,
            t.elapsed().as_millis(),
            r.annotations
        ),
        Err(e) => println!("{label}: ERROR {e} ({} ms)", t.elapsed().as_millis()),
    }
}

fn main() {
    let gauss = TestFamily::Gaussian { a: std::f64::consts::PI };
    let which: Vec<String> = std::env::args().skip(1).collect();
    let want = |s: &str| which.is_empty() || which.iter().any(|w| w == s);

    if want("lemma1") {
        let mut r = VerifyRequest::new(TheoremId::Lemma1, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.beta = 0.25;
        run("lemma1 n=1 p=2 b=0.25", r);
    }
    if want("bbm") {
        let mut r = VerifyRequest::new(TheoremId::Bbm, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.beta = 0.25;
        run("bbm n=1 p=2 b=0.25", r);
    }
    if want("t2") {
        let mut r = VerifyRequest::new(
            TheoremId::T2,
            3,
            TestFamily::HlsOptimizer { s: 0.7 },
            Tier::Quick,
        );
        r.alpha = 0.3;
        r.beta = 0.4;
        run("t2 n=3 a=0.3 b=0.4 hls", r);
    }
    if want("t3") {
        let mut r = VerifyRequest::new(TheoremId::T3, 1, gauss.clone(), Tier::Quick);
        r.p = 1.5;
        r.beta = 0.25;
        run("t3 n=1 p=1.5", r.clone());
        r.p = 3.0;
        run("t3 n=1 p=3", r);
    }
    if want("t4") {
        let mut r = VerifyRequest::new(TheoremId::T4, 1, gauss.clone(), Tier::Quick);
        r.lambda = 0.5;
        run("t4 n=1 l=0.5", r);
    }
    if want("t5") {
        let mut r = VerifyRequest::new(TheoremId::T5, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.lambda = 0.5;
        run("t5 n=1 p=2 l=0.5", r);
    }
    if want("t6") {
        let mut r = VerifyRequest::new(TheoremId::T6, 1, gauss.clone(), Tier::Quick);
        r.lambda = 0.5;
        run("t6 n=1 l=0.5", r);
    }
    if want("t7") {
        let mut r = VerifyRequest::new(TheoremId::T7, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.beta = 0.25;
        run("t7 n=1 p=2 b=0.25", r);
    }
    if want("t8") {
        let mut r = VerifyRequest::new(TheoremId::T8, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.beta = 0.25;
        run("t8 n=1 p=2 b=0.25", r);
    }
    if want("t9") {
        let mut r = VerifyRequest::new(TheoremId::T9, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.alpha = 0.4;
        r.beta = 0.4;
        run("t9 n=1 p=2 a=b=0.4", r);
    }
    if want("pitt") {
        for (n, p, b) in [(1usize, 2.0, 0.25), (1, 1.5, 0.25), (2, 1.25, 0.25), (2, 2.0, 0.5)] {
            let mut r = VerifyRequest::new(TheoremId::Pitt, n, gauss.clone(), Tier::Quick);
            r.p = p;
            r.beta = b;
            run(&format!("pitt n={n} p={p} b={b}"), r);
        }
    }
    if want("unc") {
        for n in [1usize, 2, 3] {
            let mut r = VerifyRequest::new(TheoremId::Uncertainty, n, gauss.clone(), Tier::Quick);
            r.alpha = 0.5;
            run(&format!("uncertainty n={n} a=0.5"), r);
        }
    }
    if want("tri") {
        let r = VerifyRequest::new(TheoremId::Triangle, 1, gauss.clone(), Tier::Quick);
        run("triangle n=1 p=2", r);
        let r = VerifyRequest::new(TheoremId::Reduction, 1, gauss.clone(), Tier::Quick);
        run("reduction n=1 p=2", r);
    }
    if want("hls") {
        let mut r = VerifyRequest::new(TheoremId::Hls, 3, gauss.clone(), Tier::Quick);
        r.alpha = 2.0;
        r.p = 1.2;
        run("hls n=3 a=2 p=6/5", r);
    }
    if want("sw") {
        let mut r = VerifyRequest::new(TheoremId::Sw, 1, gauss.clone(), Tier::Quick);
        r.p = 2.0;
        r.lambda = 0.8;
        run("sw n=1 p=2 g=0.8", r);
    }
    if want("t1") {
        let mut r = VerifyRequest::new(TheoremId::T1, 1, gauss, Tier::Quick);
        r.p = 1.5;
        r.alpha = 0.2;
        r.beta = 0.25;
        run("t1 n=1 p=1.5 a=0.2 b=0.25", r);
    }
}
