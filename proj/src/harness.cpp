#include "selfsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <tuple>
#include <type_traits>

#include "json.hpp"
#include "selfsim/comparators.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/problems.hpp"

namespace selfsim {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr Method kAllMethods[] = {Method::additive, Method::pade, Method::pade_modified, Method::factor, Method::root};

// Benchmark or inline problem behind one run.
struct ProblemView {
    std::string name;
    std::function<SmallSeries(int)> series;
    int max_order = 0;
    std::function<PowerLadder(int)> ladder;
    std::function<std::vector<LargeCondition>()> large_matches;
    std::function<Real()> exact_amplitude;
    const ReferenceTable* reference = nullptr;
};

struct Cell {
    Method method = Method::additive;
    int k = 0;
    std::optional<int> q;
    std::optional<Strategy> strategy;
};

ProblemView view_of(const BenchmarkProblem& p) {
    return {p.name, p.series, p.max_order, p.ladder, p.large_matches, p.exact_amplitude, &p.reference};
}

std::vector<Real> parse_all(const std::vector<std::string>& texts) {
    std::vector<Real> out;
    for (const auto& t : texts) out.push_back(parse_real(t));
    return out;
}

ProblemView view_of(const CustomProblem& c) {
    ProblemView v;
    v.name = c.name;
    v.max_order = static_cast<int>(c.a_coeffs.size()) - 1;
    v.series = [c](int k) {
        SmallSeries s(parse_all(c.a_coeffs));
        return s.truncated(std::min(k, s.order()));
    };
    v.ladder = [c](int) {
        auto powers = parse_all(c.beta_powers);
        std::optional<std::vector<Real>> amps;
        if (!c.large_amplitudes.empty()) amps = parse_all(c.large_amplitudes);
        std::optional<Real> spacing;
        if (powers.size() >= 2) {
            const Real d = powers[0] - powers[1];
            bool uniform = true;
            for (std::size_t i = 1; i + 1 < powers.size(); ++i) uniform = uniform && same_power(powers[i] - powers[i + 1], d);
            if (uniform) spacing = d;
        }
        return PowerLadder(std::move(powers), std::move(amps), std::move(spacing));
    };
    if (!c.large_amplitudes.empty()) {
        v.large_matches = [c] {
            std::vector<LargeCondition> out;
            for (std::size_t i = 0; i < c.large_amplitudes.size(); ++i)
                out.push_back({parse_real(c.beta_powers[i]), parse_real(c.large_amplitudes[i])});
            return out;
        };
        v.exact_amplitude = [c] { return parse_real(c.large_amplitudes[0]); };
    }
    return v;
}

ProblemView resolve(const RunConfig& config) {
    if (config.custom) return view_of(*config.custom);
    if (config.problem.empty()) throw Error(ErrorKind::config, "problem: no problem name or inline problem given");
    try {
        return view_of(benchmark(config.problem));
    } catch (const Error& e) {
        throw Error(ErrorKind::config, std::string("problem: ") + e.what());
    }
}

std::vector<LargeCondition> matches_of(const ProblemView& v) {
    return v.large_matches ? v.large_matches() : std::vector<LargeCondition>{};
}

bool rel_close(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::max(std::abs(target), 1e-300);
}

// Published value comparison; fills status/failed/message.
void check_reference(ResultRow& row, const ReferenceRow& ref, const ReferenceParameters* params,
                     const AdditiveApproximant* real_solution, double tolerance) {
    std::vector<std::string> issues;
    if (ref.conditional && ref.n_solutions && row.n_solutions && *row.n_solutions != *ref.n_solutions) {
        row.status = "count-mismatch";
        row.message = "solver finds " + std::to_string(*row.n_solutions) + " solutions, published average uses " +
                      std::to_string(*ref.n_solutions) + "; published value not compared";
        return;
    }
    if (ref.B && row.B && !rel_close(*row.B, *ref.B, std::max(tolerance, ref.B_tolerance))) {
        std::ostringstream m;
        m.precision(7);
        m << "B = " << *row.B << " vs published " << *ref.B;
        issues.push_back(m.str());
    }
    if (ref.error_percent && row.percent_error && std::abs(*row.percent_error - *ref.error_percent) > ref.error_band + 1e-9) {
        std::ostringstream m;
        m.precision(4);
        m << "error " << *row.percent_error << "% vs published " << *ref.error_percent << "% (band " << ref.error_band << " pp)";
        issues.push_back(m.str());
    }
    if (ref.n_solutions && row.n_solutions && *row.n_solutions != *ref.n_solutions)
        issues.push_back("n_solutions " + std::to_string(*row.n_solutions) + " vs published " + std::to_string(*ref.n_solutions));
    if (ref.n_real && row.n_real && *row.n_real != *ref.n_real)
        issues.push_back("n_real " + std::to_string(*row.n_real) + " vs published " + std::to_string(*ref.n_real));
    if (params && real_solution) {
        const double lambda = real_solution->lambda.re.to_double();
        if (!rel_close(lambda, params->lambda, 1e-5))
            issues.push_back("lambda differs from published " + std::to_string(params->lambda));
        const auto terms = real_solution->all_terms();
        for (std::size_t i = 0; i < params->amplitudes.size() && i < terms.size(); ++i) {
            const double a = terms[i].amplitude.re.to_double();
            if (!rel_close(a, params->amplitudes[i], 1e-5))
                issues.push_back("A_" + std::to_string(i + 1) + " differs from published " + std::to_string(params->amplitudes[i]));
        }
    }
    if (!issues.empty()) {
        row.status = "mismatch";
        row.failed = true;
        std::string msg;
        for (const auto& s : issues) msg += (msg.empty() ? "" : "; ") + s;
        row.message = msg;
    }
}

// Exact agreement (the electron amplitude is matched by construction) prints as 0.
double percent_value(const Real& pe, int digits) { return pe < ten_to_minus(digits - 10) ? 0.0 : pe.to_double(); }

std::optional<Strategy> published_strategy(const ProblemView& v, int k, int q) {
    if (!v.reference) return std::nullopt;
    if (const auto* r = v.reference->find("additive", k, q, std::nullopt)) return r->strategy;
    return std::nullopt;
}

ResultRow run_additive(const ProblemView& v, const Cell& cell, const RunConfig& config) {
    ResultRow row;
    row.problem = v.name;
    row.method = std::string(to_string(Method::additive));
    row.k = cell.k;
    row.q = cell.q;
    const auto ctx = PrecisionContext::with_digits(config.digits);
    PrecisionScope scope(config.digits);

    const auto matches = matches_of(v);
    const auto series = v.series(std::min(v.max_order, 3 * cell.k + 2));
    const auto ladder = v.ladder(2 * cell.k + 2);
    const auto conditions = assemble_conditions(series, ladder, cell.k, cell.q, matches);
    const int q = static_cast<int>(conditions.counter_powers.size());
    row.q = q;
    const auto set = solve(conditions, ctx);
    row.n_solutions = static_cast<int>(set.size());
    row.n_real = static_cast<int>(set.real_count());

    const Strategy strategy = cell.strategy.value_or(published_strategy(v, cell.k, q).value_or(Strategy::real_only));
    row.strategy = std::string(to_string(strategy));
    std::optional<Real> exact;
    if (v.exact_amplitude) exact = v.exact_amplitude();

    const AdditiveApproximant* real_solution = nullptr;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set.tags[i].kind == SolutionKind::real) {
            real_solution = &set.solutions[i];
            break;
        }
    if (real_solution && set.real_count() == 1) {
        row.lambda = real_solution->lambda.re.to_double();
        for (const auto& t : real_solution->all_terms()) row.amplitudes.push_back(t.amplitude.re.to_double());
    }

    const auto report = strategy_amplitude(set, strategy, exact, cell.k, q);
    row.B = report.amplitude.to_double();
    if (report.percent_error) row.percent_error = percent_value(*report.percent_error, config.digits);

    if (v.reference) {
        if (const auto* ref = v.reference->find("additive", cell.k, q, strategy)) {
            row.paper_B = ref->B;
            row.paper_error = ref->error_percent;
            const ReferenceParameters* params =
                strategy == Strategy::real_only ? v.reference->find_parameters(cell.k, q) : nullptr;
            check_reference(row, *ref, params, set.real_count() == 1 ? real_solution : nullptr, config.tolerance);
        }
    }
    return row;
}

ResultRow run_comparator(const ProblemView& v, const Cell& cell, const RunConfig& config) {
    ResultRow row;
    row.problem = v.name;
    row.method = std::string(to_string(cell.method));
    row.k = cell.k;
    const auto ctx = PrecisionContext::with_digits(config.digits);
    PrecisionScope scope(config.digits);

    const auto series = v.series(std::min(v.max_order, cell.k));
    const auto ladder = v.ladder(cell.k + 2);
    const Real& beta1 = ladder[0];
    if (cell.method == Method::pade) pade_check_applicable(ladder);
    if (series.order() < cell.k)
        throw Error(ErrorKind::invalid_argument, "order " + std::to_string(cell.k) + " needs a series of that order; only " +
                                                     std::to_string(series.order()) + " available");
    Real amplitude;
    switch (cell.method) {
        case Method::pade: {
            pade_check_applicable(ladder);
            const long b1 = static_cast<long>(round(beta1).to_double());
            const int N = static_cast<int>((cell.k - b1) / 2);
            amplitude = pade_amplitude(series, ladder, N + static_cast<int>(b1), N, ctx);
            break;
        }
        case Method::pade_modified: {
            const auto r = pade_modified_amplitude(series, pade_modified_degree(cell.k), beta1, ctx);
            amplitude = r.amplitude;
            if (r.pole_on_positive_axis) row.message = "denominator has a pole on the positive axis";
            break;
        }
        case Method::factor:
            amplitude = factor_amplitude(factor_construct(series, beta1, ctx)).amplitude;
            break;
        case Method::root:
            amplitude = root_amplitude(root_construct(series, ladder, RootMode::small_only, 0, ctx));
            break;
        case Method::additive:
            break;
    }
    row.B = amplitude.to_double();
    if (v.exact_amplitude) {
        const Real exact = v.exact_amplitude();
        row.percent_error = percent_value(Real(100) * abs(amplitude - exact) / abs(exact), config.digits);
    }
    if (v.reference) {
        if (const auto* ref = v.reference->find(row.method, cell.k, 0, std::nullopt)) {
            row.paper_B = ref->B;
            row.paper_error = ref->error_percent;
            if (ref->expected_status) {
                row.status = "mismatch";
                row.failed = true;
                row.message = "expected diagnostic " + *ref->expected_status;
            } else {
                check_reference(row, *ref, nullptr, nullptr, config.tolerance);
            }
        }
    }
    return row;
}

ResultRow run_cell(const ProblemView& v, const Cell& cell, const RunConfig& config) {
    try {
        return cell.method == Method::additive ? run_additive(v, cell, config) : run_comparator(v, cell, config);
    } catch (const std::exception& e) {
        ResultRow row;
        row.problem = v.name;
        row.method = std::string(to_string(cell.method));
        row.k = cell.k;
        if (cell.method == Method::additive) {
            row.q = cell.q;
            if (!row.q) {
                // auto: report the counter-term count the solver used
                try {
                    PrecisionScope scope(config.digits);
                    row.q = static_cast<int>(counterterm_powers(v.ladder(2 * cell.k + 2), cell.k).size());
                } catch (const Error&) {
                }
            }
            if (cell.strategy) row.strategy = std::string(to_string(*cell.strategy));
        }
        const auto* err = dynamic_cast<const Error*>(&e);
        row.status = err ? std::string(to_string(err->kind())) : "error";
        row.message = e.what();
        if (v.reference) {
            const ReferenceRow* ref = nullptr;
            if (cell.method != Method::additive) ref = v.reference->find(row.method, cell.k, 0, std::nullopt);
            else if (row.q) ref = v.reference->find("additive", cell.k, *row.q, cell.strategy);
            if (ref) {
                row.paper_B = ref->B;
                row.paper_error = ref->error_percent;
                row.failed = !(ref->expected_status && *ref->expected_status == row.status);
            }
        }
        return row;
    }
}

int method_rank(const std::string& name) {
    for (std::size_t i = 0; i < std::size(kAllMethods); ++i)
        if (to_string(kAllMethods[i]) == name) return static_cast<int>(i);
    return static_cast<int>(std::size(kAllMethods));
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        const auto key = [](const ResultRow& r) {
            return std::make_tuple(r.problem, method_rank(r.method), r.k, r.q.value_or(-1), r.strategy.value_or(""));
        };
        return key(a) < key(b);
    });
}

RunResult run_cells(const ProblemView& v, const std::vector<Cell>& cells, const RunConfig& config) {
    RunResult result;
    result.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) result.rows[i] = run_cell(v, cells[i], config);
    };
    const std::size_t n_threads = std::min<std::size_t>(cells.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    sort_rows(result.rows);
    return result;
}

std::vector<Cell> cells_for(const ProblemView& v, const RunConfig& config, const std::vector<Method>& methods) {
    std::vector<Cell> cells;
    if (config.orders.empty()) {
        if (v.reference) {
            for (const auto& r : v.reference->rows) {
                const Method m = parse_method(r.method);
                if (std::find(methods.begin(), methods.end(), m) == methods.end()) continue;
                if (m == Method::additive) {
                    if (config.q && *config.q != r.q) continue;
                    if (config.strategy && r.strategy && *config.strategy != *r.strategy) continue;
                    cells.push_back({m, r.k, r.q, config.strategy ? config.strategy : r.strategy});
                } else {
                    cells.push_back({m, r.k, std::nullopt, std::nullopt});
                }
            }
            return cells;
        }
        const int k = std::max(1, v.max_order + static_cast<int>(matches_of(v).size()));
        for (const auto m : methods) cells.push_back({m, k, config.q, config.strategy});
        return cells;
    }
    for (const int k : config.orders)
        for (const auto m : methods) cells.push_back({m, k, config.q, config.strategy});
    return cells;
}

std::vector<Method> methods_or(const RunConfig& config, std::vector<Method> fallback) {
    return config.methods.empty() ? fallback : config.methods;
}

std::string fmt(double v, int significant) {
    if (v == 0) v = 0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    return buf;
}

template <class T>
std::string cell_text(const std::optional<T>& v, int significant) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, double>) return fmt(*v, significant);
    else if constexpr (std::is_same_v<T, int>) return std::to_string(*v);
    else return *v;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

template <class T>
ordered_json json_value(const std::optional<T>& v, int significant) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, double>) return std::stod(fmt(*v, significant));
    else return *v;
}

std::string json_string(const json& j, const char* field) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number()) return j.dump();
    throw Error(ErrorKind::config, std::string(field) + ": expected a number or numeric string");
}

std::vector<std::string> json_numbers(const json& j, const char* field) {
    if (!j.is_array()) throw Error(ErrorKind::config, std::string(field) + ": expected an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        out.push_back(json_string(e, field));
        parse_real(out.back());
    }
    return out;
}

CustomProblem parse_custom(const json& j) {
    CustomProblem c;
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (!j.contains("a_coeffs")) throw Error(ErrorKind::config, "a_coeffs: required for an inline problem");
    if (!j.contains("beta_powers")) throw Error(ErrorKind::config, "beta_powers: required for an inline problem");
    c.a_coeffs = json_numbers(j.at("a_coeffs"), "a_coeffs");
    c.beta_powers = json_numbers(j.at("beta_powers"), "beta_powers");
    if (j.contains("large_amplitudes")) c.large_amplitudes = json_numbers(j.at("large_amplitudes"), "large_amplitudes");
    if (c.a_coeffs.empty()) throw Error(ErrorKind::config, "a_coeffs: needs at least a_0");
    if (c.beta_powers.empty()) throw Error(ErrorKind::config, "beta_powers: needs at least beta_1");
    if (c.large_amplitudes.size() > c.beta_powers.size())
        throw Error(ErrorKind::config, "large_amplitudes: more entries than beta_powers");
    PrecisionScope scope(30);
    const auto powers = parse_all(c.beta_powers);
    for (std::size_t i = 0; i + 1 < powers.size(); ++i)
        if (!(powers[i] > powers[i + 1]))
            throw Error(ErrorKind::config, "beta_powers: must be strictly descending (entry " + std::to_string(i + 2) + ")");
    return c;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::additive: return "additive";
        case Method::pade: return "pade";
        case Method::pade_modified: return "pade-modified";
        case Method::factor: return "factor";
        case Method::root: return "root";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (const auto m : kAllMethods)
        if (to_string(m) == name) return m;
    throw Error(ErrorKind::config, "methods: unknown method '" + std::string(name) + "'");
}

std::vector<int> parse_order_range(std::string_view text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(':', pos), text.size());
        int v = 0;
        const auto part = text.substr(pos, end - pos);
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty())
            throw Error(ErrorKind::config, "orders: '" + std::string(text) + "' is not A:B:STEP");
        parts.push_back(v);
        pos = end + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) throw Error(ErrorKind::config, "orders: expected A:B or A:B:STEP");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0 || parts[0] > parts[1] || parts[0] < 1)
        throw Error(ErrorKind::config, "orders: need 1 <= A <= B and STEP > 0");
    std::vector<int> out;
    for (int k = parts[0]; k <= parts[1]; k += step) out.push_back(k);
    return out;
}

Real parse_real(std::string_view text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return Real(text);
        const Real den(text.substr(slash + 1));
        if (den.is_zero()) throw Error(ErrorKind::config, "zero denominator in '" + std::string(text) + "'");
        return Real(text.substr(0, slash)) / den;
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::config, "'" + std::string(text) + "' is not a number");
    }
}

RunConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::config, "config: expected a JSON object");
    RunConfig c;
    try {
        if (j.contains("problem")) {
            if (j.at("problem").is_string()) c.problem = j.at("problem").get<std::string>();
            else c.custom = parse_custom(j.at("problem"));
        }
        if (j.contains("custom")) c.custom = parse_custom(j.at("custom"));
        if (j.contains("a_coeffs")) c.custom = parse_custom(j);
        if (j.contains("orders")) {
            const auto& o = j.at("orders");
            if (o.is_string()) c.orders = parse_order_range(o.get<std::string>());
            else c.orders = o.get<std::vector<int>>();
        }
        if (j.contains("order")) c.orders = {j.at("order").get<int>()};
        for (int k : c.orders)
            if (k < 1) throw Error(ErrorKind::config, "orders: every order must be >= 1");
        if (j.contains("q")) {
            const auto& q = j.at("q");
            if (q.is_string() && q.get<std::string>() == "auto") c.q.reset();
            else if (q.is_number_integer() && q.get<int>() >= 0) c.q = q.get<int>();
            else throw Error(ErrorKind::config, "q: expected \"auto\" or a non-negative integer");
        }
        if (j.contains("strategy")) {
            const auto s = j.at("strategy").get<std::string>();
            if (s == "real") c.strategy = Strategy::real_only;
            else if (s == "average") c.strategy = Strategy::average_all;
            else throw Error(ErrorKind::config, "strategy: expected \"real\" or \"average\"");
        }
        if (j.contains("digits")) c.digits = j.at("digits").get<int>();
        if (c.digits < 15) throw Error(ErrorKind::config, "digits: must be >= 15");
        if (j.contains("methods"))
            for (const auto& m : j.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
        if (j.contains("format")) {
            const auto f = j.at("format").get<std::string>();
            if (f == "csv") c.format = OutputFormat::csv;
            else if (f == "json") c.format = OutputFormat::json;
            else throw Error(ErrorKind::config, "format: expected \"csv\" or \"json\"");
        }
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
        if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
        if (!(c.tolerance > 0)) throw Error(ErrorKind::config, "tolerance: must be positive");
        if (j.contains("significant")) c.significant = j.at("significant").get<int>();
        if (c.significant < 1 || c.significant > 17) throw Error(ErrorKind::config, "significant: must be in 1..17");
    } catch (const json::exception& e) {
        throw Error(ErrorKind::config, std::string("config field has the wrong type: ") + e.what());
    }
    if (c.problem.empty() && !c.custom) throw Error(ErrorKind::config, "problem: give a benchmark name or an inline problem");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

int RunResult::exit_code() const noexcept {
    return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.failed; }) ? 1 : 0;
}

std::vector<const ResultRow*> RunResult::failures() const {
    std::vector<const ResultRow*> out;
    for (const auto& r : rows)
        if (r.failed) out.push_back(&r);
    return out;
}

RunResult run_reproduce(const RunConfig& config) {
    RunConfig c = config;
    c.methods = {Method::additive};
    const auto v = resolve(c);
    return run_cells(v, cells_for(v, c, c.methods), c);
}

RunResult run_compare(const RunConfig& config) {
    const auto v = resolve(config);
    const auto methods = methods_or(config, {std::begin(kAllMethods), std::end(kAllMethods)});
    return run_cells(v, cells_for(v, config, methods), config);
}

RunResult run_custom(const RunConfig& config) {
    const auto v = resolve(config);
    const auto methods = methods_or(config, {Method::additive});
    const auto cells = cells_for(v, config, methods);
    if (config.custom) {
        // Balance every additive cell before any solving starts.
        PrecisionScope scope(config.digits);
        const auto matches = matches_of(v);
        for (const auto& cell : cells) {
            if (cell.method != Method::additive) continue;
            try {
                assemble_conditions(v.series(v.max_order), v.ladder(0), cell.k, cell.q, matches);
            } catch (const Error& e) {
                throw Error(ErrorKind::config, "a_coeffs/beta_powers: order " + std::to_string(cell.k) + ": " + e.what());
            }
        }
    }
    return run_cells(v, cells, config);
}

std::string format_csv(const RunResult& result, int significant) {
    std::ostringstream out;
    out << "problem,method,k,q,strategy,B,paper_B,percent_error,paper_error,n_solutions,n_real,status\n";
    for (const auto& r : result.rows) {
        out << csv_escape(r.problem) << ',' << r.method << ',' << r.k << ',' << cell_text(r.q, significant) << ','
            << cell_text(r.strategy, significant) << ',' << cell_text(r.B, significant) << ','
            << cell_text(r.paper_B, significant) << ',' << cell_text(r.percent_error, significant) << ','
            << cell_text(r.paper_error, significant) << ',' << cell_text(r.n_solutions, significant) << ','
            << cell_text(r.n_real, significant) << ',' << r.status << '\n';
    }
    return out.str();
}

std::string format_json(const RunResult& result, int significant) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : result.rows) {
        ordered_json j;
        j["problem"] = r.problem;
        j["method"] = r.method;
        j["k"] = r.k;
        j["q"] = json_value(r.q, significant);
        j["strategy"] = json_value(r.strategy, significant);
        j["B"] = json_value(r.B, significant);
        j["paper_B"] = json_value(r.paper_B, significant);
        j["percent_error"] = json_value(r.percent_error, significant);
        j["paper_error"] = json_value(r.paper_error, significant);
        j["n_solutions"] = json_value(r.n_solutions, significant);
        j["n_real"] = json_value(r.n_real, significant);
        j["status"] = r.status;
        j["lambda"] = json_value(r.lambda, significant);
        ordered_json amps = ordered_json::array();
        for (double a : r.amplitudes) amps.push_back(std::stod(fmt(a, significant)));
        j["amplitudes"] = amps;
        j["message"] = r.message;
        rows.push_back(std::move(j));
    }
    ordered_json doc;
    doc["reference_version"] = reference_tables_version();
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace selfsim
