// selfsim: reproduce published amplitude tables, compare resummation methods
// and run user-defined problems.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/harness.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string problem;
    std::string orders;
    std::optional<int> order;
    std::string q;
    std::string strategy;
    std::optional<int> digits;
    std::string format;
    std::string out;
    std::optional<double> tolerance;
    std::optional<int> significant;
    std::vector<std::string> methods;
};

void add_common(CLI::App* cmd, Options& o, bool with_methods) {
    cmd->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--problem", o.problem, "benchmark name: partition, oscillator, electron");
    cmd->add_option("--orders", o.orders, "order range A:B:STEP");
    cmd->add_option("--order", o.order, "single order");
    cmd->add_option("--q", o.q, "counter-terms: auto or a count");
    cmd->add_option("--strategy", o.strategy, "real or average")->check(CLI::IsMember({"real", "average"}));
    cmd->add_option("--digits", o.digits, "working precision in decimal digits (default 60)");
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--tolerance", o.tolerance, "relative tolerance against published amplitudes (default 1e-4)");
    cmd->add_option("--significant", o.significant, "significant digits in the output (default 6)");
    if (with_methods)
        cmd->add_option("--methods", o.methods, "additive, pade, pade-modified, factor, root")->delimiter(',');
}

selfsim::RunConfig build_config(const Options& o) {
    selfsim::RunConfig c = o.config_path.empty() ? selfsim::RunConfig{} : selfsim::load_config(o.config_path);
    if (!o.problem.empty()) {
        c.problem = o.problem;
        c.custom.reset();
    }
    if (!o.orders.empty()) c.orders = selfsim::parse_order_range(o.orders);
    if (o.order) {
        if (*o.order < 1) throw selfsim::Error(selfsim::ErrorKind::config, "--order: must be >= 1");
        c.orders = {*o.order};
    }
    if (!o.q.empty()) {
        if (o.q == "auto") {
            c.q.reset();
        } else {
            try {
                std::size_t used = 0;
                const int q = std::stoi(o.q, &used);
                if (used != o.q.size() || q < 0) throw std::invalid_argument(o.q);
                c.q = q;
            } catch (const std::exception&) {
                throw selfsim::Error(selfsim::ErrorKind::config, "--q: expected auto or a non-negative integer");
            }
        }
    }
    if (o.strategy == "real") c.strategy = selfsim::Strategy::real_only;
    if (o.strategy == "average") c.strategy = selfsim::Strategy::average_all;
    if (o.digits) {
        if (*o.digits < 15) throw selfsim::Error(selfsim::ErrorKind::config, "--digits: must be >= 15");
        c.digits = *o.digits;
    }
    if (o.format == "csv") c.format = selfsim::OutputFormat::csv;
    if (o.format == "json") c.format = selfsim::OutputFormat::json;
    if (!o.out.empty()) c.out = o.out;
    if (o.tolerance) {
        if (!(*o.tolerance > 0)) throw selfsim::Error(selfsim::ErrorKind::config, "--tolerance: must be positive");
        c.tolerance = *o.tolerance;
    }
    if (o.significant) {
        if (*o.significant < 1 || *o.significant > 17)
            throw selfsim::Error(selfsim::ErrorKind::config, "--significant: must be in 1..17");
        c.significant = *o.significant;
    }
    if (!o.methods.empty()) {
        c.methods.clear();
        for (const auto& m : o.methods) c.methods.push_back(selfsim::parse_method(m));
    }
    if (c.problem.empty() && !c.custom)
        throw selfsim::Error(selfsim::ErrorKind::config, "--problem or --config with a problem is required");
    return c;
}

int emit(const selfsim::RunConfig& c, const selfsim::RunResult& result) {
    const std::string text = c.format == selfsim::OutputFormat::json ? selfsim::format_json(result, c.significant)
                                                                     : selfsim::format_csv(result, c.significant);
    if (c.out) {
        std::ofstream f(*c.out);
        if (!f) {
            std::cerr << "error: cannot write " << *c.out << "\n";
            return 2;
        }
        f << text;
    } else {
        std::cout << text;
    }
    for (const auto* r : result.failures()) {
        std::cerr << "mismatch: " << r->problem << " " << r->method << " k=" << r->k;
        if (r->q) std::cerr << " q=" << *r->q;
        if (r->strategy) std::cerr << " " << *r->strategy;
        std::cerr << " [" << r->status << "] " << r->message << "\n";
    }
    return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Additive self-similar approximants and resummation comparisons"};
    app.require_subcommand(1);

    Options reproduce_opts, compare_opts, run_opts;
    auto* reproduce = app.add_subcommand("reproduce", "additive approximants against the published tables");
    add_common(reproduce, reproduce_opts, false);
    auto* compare = app.add_subcommand("compare", "all methods side by side");
    add_common(compare, compare_opts, true);
    auto* run = app.add_subcommand("run", "run a JSON configuration, including inline problems");
    add_common(run, run_opts, true);
    run->get_option("--config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (reproduce->parsed()) {
            const auto c = build_config(reproduce_opts);
            return emit(c, selfsim::run_reproduce(c));
        }
        if (compare->parsed()) {
            const auto c = build_config(compare_opts);
            return emit(c, selfsim::run_compare(c));
        }
        const auto c = build_config(run_opts);
        return emit(c, selfsim::run_custom(c));
    } catch (const selfsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
