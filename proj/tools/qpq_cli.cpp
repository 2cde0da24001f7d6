#include <qpq/io/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    qpq::io::Request req;
    CLI::App app{"Exact checks for quasi-Poisson structures, brace bialgebras, L-infinity maps and dynamical r-matrices"};
    app.add_option("command", req.command, "Check suite to run")
        ->required()
        ->check(CLI::IsMember(qpq::io::command_names()));
    app.add_option("--input", req.inputs, "Input JSON documents; top-level keys are merged")->check(CLI::ExistingFile);
    app.add_option("--bounds.hbar", req.hbar, "Working hbar order")->capture_default_str();
    app.add_option("--bounds.arity", req.arity, "Arity bound")->capture_default_str();
    app.add_option("--bounds.filtration", req.filtration, "PBW length per slot")->capture_default_str();
    app.add_option("--bounds.outer", req.outer, "Outer word length for random elements")->capture_default_str();
    app.add_option("--trials", req.trials, "Random trials")->capture_default_str();
    app.add_option("--seed", req.seed, "Random seed")->capture_default_str();
    app.add_option("--format", req.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qpq::io::exit_parse;
    }
    const auto out = qpq::io::run(req);
    if (req.format == "json") std::cout << out.report.dump(2) << "\n";
    else std::cout << qpq::io::render_text(out.report);
    return out.exit_code;
}
