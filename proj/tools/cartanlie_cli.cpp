// cartanlie: exact verification harness for the Jacobson-Witt algebra W_n
// and the special algebra S_n over small prime fields.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage/parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cartan/json_io.hpp"
#include "cartan/suites.hpp"

namespace {

int run_one_suite(const std::string& id, cartan::suites::SuiteParams params,
                  const std::string& out_path, bool quiet) {
    using namespace cartan::suites;
    SuiteReport rep = run_suite(id, params);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::app);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 2;
        }
        out << rep.to_json().dump() << "\n";
    }
    if (!quiet) std::cout << rep.render_text();
    return rep.failed() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for restricted Lie algebras of Cartan types W and S"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a verification suite");
    std::string suite;
    cartan::suites::SuiteParams params;
    std::string out_path;
    bool quiet = false;
    std::string suite_help = "suite id, or \"all\"; one of:";
    for (const auto& s : cartan::suites::all_suites()) suite_help += " " + s.id;
    run->add_option("--suite", suite, suite_help)->required();
    run->add_option("--p", params.p, "field characteristic (prime > 3)")->default_val(5);
    run->add_option("--n", params.n, "number of variables (default: 2 for W-side suites, 3 for "
                                     "S-side suites)")
        ->default_val(0);
    run->add_option("--seed", params.seed, "base seed; trial k uses the derived stream (seed, k)")
        ->default_val(1);
    run->add_option("--trials", params.trials, "number of randomized trials")->default_val(100);
    run->add_option("--jobs", params.jobs, "worker threads (does not affect the report)")
        ->default_val(1);
    run->add_option("--out", out_path, "append the JSON report(s) to this file");
    run->add_flag("--quiet", quiet, "suppress the text rendering");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "analyze a serialized element");
    std::string element_path;
    inspect->add_option("file", element_path, "JSON element file")->required();

    // list
    auto* list = app.add_subcommand("list", "list available suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& s : cartan::suites::all_suites())
                std::cout << s.id << (s.s_side ? "  [S-side, default n=3]  " : "  [W-side, default n=2]  ")
                          << s.summary << "\n";
            return 0;
        }
        if (run->parsed()) {
            if (suite == "all") {
                int worst = 0;
                for (const auto& s : cartan::suites::all_suites()) {
                    cartan::suites::SuiteParams pr = params;
                    int rc = run_one_suite(s.id, pr, out_path, quiet);
                    if (rc == 2) return 2;
                    worst = std::max(worst, rc);
                }
                return worst;
            }
            return run_one_suite(suite, params, out_path, quiet);
        }
        if (inspect->parsed()) {
            std::ifstream in(element_path);
            if (!in) {
                std::cerr << "cannot open element file: " << element_path << "\n";
                return 2;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            cartan::Json doc = cartan::parse_document(buf.str());
            std::cout << cartan::inspect_element(doc);
            return 0;
        }
    } catch (const cartan::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const cartan::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const cartan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
