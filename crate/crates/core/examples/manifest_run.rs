//! Parse a manifest, run its checks and print the report.

use sflab::cli::{run_tasks, Manifest, RunOptions};

const MANIFEST: &str = "\
[manifold]
dim = 3
radical = 2

[poisson]
Pi = e1^e3 + rt * e2^e3

[splitting]
tf1 = e1 + rt * e2
tf2 = e3
g1 = e2

[deformation]
Z = order 2: 0 ; cos(0,0,1) * e1^e3 + rt * cos(0,0,1) * e2^e3 ; 0

[task]
seed = 1
check = jacobi arity=2 trials=5
check = mc
check = cohomology lambda=rt cutoff=10
";

fn main() {
    let m = Manifest::parse(MANIFEST).unwrap();
    print!("{}", run_tasks(&m, RunOptions::default()).render());
    println!("--- canonical form ---");
    print!("{}", m.to_text());
}
