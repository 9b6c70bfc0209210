use clap::Parser;

fn main() {
    let out = qabtors::run(qabtors::Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
