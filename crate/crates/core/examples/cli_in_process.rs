//! Drive the `lel` front end in-process, with a config overlay.

use lane_emden_lab::cli::run_with_config;
use lane_emden_lab::config::RunConfig;

fn main() {
    let cfg = RunConfig::parse("solution_nodes = 33\n").expect("valid config");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let status = run_with_config(["lel", "solve", "--p", "2"], cfg, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit code {}", status.code());
}
