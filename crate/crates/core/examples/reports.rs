//! The command-line reports, driven in-process.

use special_birational::cli::run_with;

fn main() {
    let argv = ["sbt", "classify", "--n", "1", "--format", "md"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(argv, &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    println!("exit status {code}");
}
