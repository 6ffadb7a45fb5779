#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "thetak/report.hpp"

namespace {

struct CliOptions {
    thetak::SpaceSpec spec;
    std::string space = "sphere";
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--space", opt.space, "sphere | su | custom")
        ->check(CLI::IsMember({"sphere", "su", "custom"}));
    cmd->add_option("--n", opt.spec.n, "sphere S^{2n+1} (n >= 0) or SU(n) (n >= 2)");
    cmd->add_option("--custom", opt.spec.custom_path, "custom algebra input file (JSON)");
    cmd->add_option("--p", opt.spec.p, "odd prime");
    cmd->add_option("--precision", opt.spec.precision, "work modulo p^N");
    cmd->add_option("--depth", opt.spec.depth, "free theta-algebra truncation T");
    cmd->add_option("--max-degree", opt.spec.max_degree, "word-length budget for certificates");
    cmd->add_option("--bott-twist", opt.spec.bott_twist, "scale the SU theta matrix by p^k");
    cmd->add_option("--samples", opt.spec.samples, "random samples for property checks");
    cmd->add_option("--seed", opt.spec.seed, "deterministic seed");
    cmd->add_option("--format", opt.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", opt.out_path, "write the report to a file");
}

int emit(const thetak::Report& rep, const CliOptions& opt) {
    std::string payload = opt.format == "text" ? rep.to_text() : rep.to_json_string();
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "cannot write " << opt.out_path << "\n";
            return 2;
        }
        out << payload;
    } else {
        std::cout << payload;
    }
    return rep.exit_code;
}

int run(CliOptions& opt, const std::vector<std::string>& tasks) {
    if (opt.space == "sphere")
        opt.spec.kind = thetak::SpaceSpec::Kind::Sphere;
    else if (opt.space == "su")
        opt.spec.kind = thetak::SpaceSpec::Kind::SU;
    else
        opt.spec.kind = thetak::SpaceSpec::Kind::Custom;
    thetak::Report rep = thetak::run_report(opt.spec, tasks);
    return emit(rep, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic theta-algebra kernel"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* axioms = app.add_subcommand("axioms", "check the theta-algebra axioms on Lambda[G]");
    auto* presentation =
        app.add_subcommand("presentation", "relation map, change of basis, quotient certificates");
    auto* tor_cmd = app.add_subcommand("tor", "Tor vanishing for the truncated relation map");
    auto* ss = app.add_subcommand("ss", "Tor spectral sequence of the presentation instance");
    auto* v1 = app.add_subcommand("v1", "kernel and cokernel of theta_G");
    auto* report = app.add_subcommand("report", "run every task and aggregate certificates");
    for (auto* cmd : {axioms, presentation, tor_cmd, ss, v1, report}) add_common(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // malformed invocation is an input error
    }

    try {
        if (axioms->parsed()) return run(opt, {"axioms"});
        if (presentation->parsed()) return run(opt, {"presentation"});
        if (tor_cmd->parsed()) return run(opt, {"tor"});
        if (ss->parsed()) return run(opt, {"ss"});
        if (v1->parsed()) return run(opt, {"v1"});
        if (report->parsed()) return run(opt, {"axioms", "presentation", "tor", "ss", "v1"});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
