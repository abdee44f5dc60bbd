use std::io::Write;

fn main() {
    let env_tol = std::env::var(segre_geom_cli::TOL_ENV).ok();
    let outcome = segre_geom_cli::run(
        std::env::args_os(),
        env_tol.as_deref(),
        &mut std::io::stdin(),
    );
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
