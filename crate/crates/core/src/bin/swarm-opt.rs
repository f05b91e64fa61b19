fn main() {
    std::process::exit(swarm_opt::harness::cli_main(std::env::args_os()));
}
