use fracbed::fields::TestFamily;
use fracbed::inequalities::{verify, TheoremId, Tier, VerifyRequest};
fn main() {
    for tier in [Tier::Quick, Tier::Standard, Tier::Thorough] {
        let mut r = VerifyRequest::new(TheoremId::T2, 3, TestFamily::HlsOptimizer { s: 0.7 }, tier);
        r.alpha = 0.3; r.beta = 0.4;
        let t = std::time::Instant::now();
        match verify(&r) {
            Ok(rep) => println!("{:?}: lhs={:.5e} rhs={:.5e} ratio={:.4} ({} ms)", tier, rep.lhs, rep.rhs, rep.ratio, t.elapsed().as_millis()),
            Err(e) => println!("{tier:?}: ERR {e}"),
        }
    }
}
