use deltaspec::verify::verify_campaign;
use std::time::Instant;

fn main() {
    for seed in [7u64, 42, 123, 2024] {
        let t = Instant::now();
        let s = verify_campaign(seed, 300);
        println!("seed {seed}: disagreements {} in {:?}", s.disagreements, t.elapsed());
        if let Some(f) = &s.first_failure {
            println!("  first: {} [{}] {}", f.check, f.instance, f.detail);
            if let Some(cfg) = &f.config_json { println!("  config: {}", cfg.replace('\n', " ")); }
        }
        for c in &s.checks { println!("  {}: {}/{}", c.name, c.passed, c.passed + c.failed); }
    }
}
