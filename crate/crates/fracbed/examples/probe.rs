use fracbed::inequalities::{sharpness_probe, TheoremId, Tier};

fn main() {
    let pts =
        sharpness_probe(TheoremId::Lemma1, 1, 2.0, 0.0, 0.25, &[1.5, 2.0, 3.0, 4.0], Tier::Quick)
            .unwrap();
    for p in pts {
        println!("lemma1 R={} ratio={:.6}", p.dial, p.ratio);
    }
    let pts =
        sharpness_probe(TheoremId::T2, 3, 2.0, 0.3, 0.4, &[4.0, 2.0, 1.0, 0.5], Tier::Quick)
            .unwrap();
    for p in pts {
        println!("t2 d={} ratio={:.8}", p.dial, p.ratio);
    }
    let pts = sharpness_probe(TheoremId::T3, 1, 2.0, 0.0, 0.25, &[0.5, 1.0, 2.0], Tier::Quick)
        .unwrap();
    for p in pts {
        println!("t3 a={} ratio={:.6}", p.dial, p.ratio);
    }
    let pts =
        sharpness_probe(TheoremId::Triangle, 1, 2.0, 0.0, 0.25, &[0.5, 1.0, 2.0, 4.0], Tier::Quick)
            .unwrap();
    for p in pts {
        println!("tri eps={} ratio={:.6}", p.dial, p.ratio);
    }
}
