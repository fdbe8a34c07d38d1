#include "ainf/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for curved filtered A-infinity algebras, cyclic cocycles and disk potentials"};
    app.require_subcommand(1);
    ainf::CliOptions o;
    const std::vector<std::pair<std::string, std::string>> help{
        {"check", "A-infinity relations, strict unit, Hochschild and cyclic identities"},
        {"cocycle", "validate the cocycle tower and check the induced infinity inner product"},
        {"mc", "weak Maurer-Cartan check of the candidates, or solve from mc_seed"},
        {"potential", "infinity-cyclic and OGW potentials of the candidates"},
        {"gauge", "gauge invariance of the potential along the document's path"},
        {"wallcross", "wall-crossing identity chain, or the report for a wallcross_pair document"},
    };
    for (const auto& [name, text] : help) {
        auto* sub = app.add_subcommand(name, text);
        sub->add_option("--input", o.input, "input document (JSON, version 1)")->required();
        sub->add_option("--emax", o.emax, "energy cutoff E_max (fraction)");
        sub->add_option("--kmax", o.kmax, "arity cutoff K_max for the relation check");
        sub->add_option("--lmax", o.lmax, "word-length cutoff L_max");
        sub->add_option("--nmax", o.nmax, "series cutoff N_max (default: automatic from the valuation of b)");
        sub->add_option("--seed", o.seed, "seed for sampled checks");
        sub->add_option("--report", o.report, "write the JSON report here");
        sub->add_option("--chains", o.chains, "random chains for the Hochschild identities (check)");
        sub->callback([&o, name = name] { o.command = name; });
    }
    CLI11_PARSE(app, argc, argv);
    return ainf::run_cli(o, std::cout, std::cerr);
}
