fn main() {
    std::process::exit(cvrp_feasibility::cli::cli_main());
}
