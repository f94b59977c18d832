//! Drive an experiment from config text, the same path the `simulate`
//! binary takes.
//!
//! ```bash
//! cargo run --release --example run_experiment
//! ```

use cqed_router::config::ExperimentConfig;
use cqed_router::experiment::run;

const CONFIG: &str = "
experiment = SWEEP
router.kappa_loss = 0.1
router.gamma = 0.5
sweep.axis = g
sweep.start = 1.5
sweep.stop = 3.0
sweep.count = 4
";

fn main() {
    let cfg = match ExperimentConfig::from_text(CONFIG) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    print!("{}", cfg.to_text());
    match run(&cfg) {
        Ok(tables) => {
            for t in tables {
                println!("\n{}", t.file);
                print!("{}", t.to_csv(""));
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(3);
        }
    }
}
