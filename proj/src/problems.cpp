#include "selfsim/problems.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "json.hpp"

#include "selfsim/errors.hpp"

namespace selfsim::detail {
extern const std::string_view kReferenceTablesJson;
}

namespace selfsim {

namespace {

using boost::multiprecision::mpq_rational;

// Rayleigh-Schrodinger coefficients for psi = exp(-x^2/2) sum_n g^n phi_n,
// phi_n = sum_j A[n][j] x^(2j). Grown on demand, shared across threads.
class OscillatorTable {
public:
    std::vector<mpq_rational> energies(int k) {
        std::lock_guard lock(mutex_);
        while (static_cast<int>(energy_.size()) <= k) extend();
        return {energy_.begin(), energy_.begin() + k + 1};
    }

private:
    void extend() {
        if (energy_.empty()) {
            A_.push_back({mpq_rational(1)});
            energy_.emplace_back(1, 2);
            return;
        }
        const int n = static_cast<int>(A_.size());
        auto coeff = [&](int m, int j) -> mpq_rational {
            if (m < 0 || j < 0 || j >= static_cast<int>(A_[static_cast<std::size_t>(m)].size())) return 0;
            return A_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        };
        std::vector<mpq_rational> row(static_cast<std::size_t>(2 * n + 1));
        A_.push_back(row);
        auto& cur = A_.back();
        for (int j = 2 * n; j >= 1; --j) {
            mpq_rational acc = (j + 1 < static_cast<int>(cur.size()) ? mpq_rational((j + 1) * (2 * j + 1)) * cur[static_cast<std::size_t>(j + 1)] : mpq_rational(0));
            acc -= coeff(n - 1, j - 2);
            for (int m = 1; m <= n - 1; ++m) acc += energy_[static_cast<std::size_t>(m)] * coeff(n - m, j);
            cur[static_cast<std::size_t>(j)] = acc / (2 * j);
        }
        energy_.push_back(-cur[1]);
    }

    std::mutex mutex_;
    std::vector<std::vector<mpq_rational>> A_;
    std::vector<mpq_rational> energy_;
};

OscillatorTable& oscillator_table() {
    static OscillatorTable table;
    return table;
}

std::optional<Strategy> parse_strategy(const std::string& s) {
    if (s == "real") return Strategy::real_only;
    if (s == "average") return Strategy::average_all;
    throw Error(ErrorKind::config, "unknown strategy '" + s + "' in reference tables");
}

template <class T>
std::optional<T> opt(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

ReferenceTable parse_table(const nlohmann::json& j) {
    ReferenceTable t;
    t.exact_amplitude = j.at("exact_amplitude").get<double>();
    for (const auto& r : j.at("rows")) {
        ReferenceRow row;
        row.method = r.at("method").get<std::string>();
        row.k = r.at("k").get<int>();
        row.q = r.value("q", 0);
        if (r.contains("strategy")) row.strategy = parse_strategy(r.at("strategy").get<std::string>());
        row.B = opt<double>(r, "B");
        row.B_tolerance = r.value("B_tolerance", 1e-4);
        row.error_percent = opt<double>(r, "error_percent");
        row.error_band = r.value("error_band", 0.5);
        row.n_solutions = opt<int>(r, "n_solutions");
        row.n_real = opt<int>(r, "n_real");
        row.components = r.value("components", std::vector<double>{});
        row.conditional = r.value("conditional", false);
        row.expected_status = opt<std::string>(r, "expected_status");
        row.source = r.at("source").get<std::string>();
        t.rows.push_back(std::move(row));
    }
    for (const auto& p : j.value("parameters", nlohmann::json::array())) {
        ReferenceParameters par;
        par.k = p.at("k").get<int>();
        par.q = p.value("q", 0);
        par.lambda = p.at("lambda").get<double>();
        par.amplitudes = p.at("amplitudes").get<std::vector<double>>();
        par.B = p.at("B").get<double>();
        par.source = p.at("source").get<std::string>();
        t.parameters.push_back(std::move(par));
    }
    return t;
}

const nlohmann::json& reference_json() {
    static const nlohmann::json doc = nlohmann::json::parse(detail::kReferenceTablesJson);
    return doc;
}

std::map<std::string, BenchmarkProblem, std::less<>> make_registry() {
    const auto& problems = reference_json().at("problems");
    std::map<std::string, BenchmarkProblem, std::less<>> reg;

    BenchmarkProblem partition;
    partition.name = "partition";
    partition.series = partition_coeffs;
    partition.max_order = 200;
    partition.ladder = partition_ladder;
    partition.exact_amplitude = [] { return exp(lgamma(Real(0.25))) / (Real(2) * sqrt(pi())); };
    partition.oracle = partition_exact;
    partition.reference = parse_table(problems.at("partition"));
    reg.emplace(partition.name, std::move(partition));

    BenchmarkProblem oscillator;
    oscillator.name = "oscillator";
    oscillator.series = oscillator_coeffs;
    oscillator.max_order = 200;
    oscillator.ladder = oscillator_ladder;
    oscillator.exact_amplitude = [] { return Real("0.667986"); };
    oscillator.reference = parse_table(problems.at("oscillator"));
    reg.emplace(oscillator.name, std::move(oscillator));

    BenchmarkProblem electron;
    electron.name = "electron";
    electron.series = [](int k) {
        const auto s = electron_series();
        return s.truncated(std::min(k, s.order()));
    };
    electron.max_order = 1;
    electron.ladder = electron_ladder;
    electron.large_matches = electron_large_conditions;
    electron.exact_amplitude = [] { return -(log(sqrt(Real(2) * pi())) - Real(3) / Real(4)); };
    electron.reference = parse_table(problems.at("electron"));
    reg.emplace(electron.name, std::move(electron));
    return reg;
}

const std::map<std::string, BenchmarkProblem, std::less<>>& registry() {
    static const auto reg = make_registry();
    return reg;
}

}  // namespace

SmallSeries partition_coeffs(int k) {
    if (k < 0) throw Error(ErrorKind::invalid_argument, "partition_coeffs needs k >= 0");
    std::vector<Real> c;
    c.reserve(static_cast<std::size_t>(k + 1));
    const Real root_pi = sqrt(pi());
    for (int n = 0; n <= k; ++n) {
        const Real v = exp(lgamma(Real(2 * n) + Real(0.5)) - lgamma(Real(n + 1))) / root_pi;
        c.push_back(n % 2 == 0 ? v : -v);
    }
    return SmallSeries(std::move(c));
}

double partition_exact(double g) {
    if (!(g >= 0) || !std::isfinite(g)) throw Error(ErrorKind::domain, "partition_exact needs finite g >= 0");
    // z = s u keeps the integrand's width O(1) for every g.
    const double s = std::pow(1.0 + g, -0.25);
    const double s2 = s * s;
    const double gs4 = g * s2 * s2;
    auto f = [&](double u) {
        const double u2 = u * u;
        return std::exp(-s2 * u2 - gs4 * u2 * u2);
    };
    using boost::math::quadrature::gauss_kronrod;
    const double half = gauss_kronrod<double, 61>::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
    return 2.0 * s * half / std::sqrt(M_PI);
}

PowerLadder partition_ladder(int count) {
    // b_{m+1} = (-1)^m Gamma((2m+1)/4) / (2 m! sqrt(pi)).
    std::vector<Real> b;
    for (int m = 0; m < count; ++m) {
        const Real v = exp(lgamma(Real(2 * m + 1) / Real(4)) - lgamma(Real(m + 1))) / (Real(2) * sqrt(pi()));
        b.push_back(m % 2 == 0 ? v : -v);
    }
    return PowerLadder::uniform(Real(-1) / Real(4), Real(1) / Real(2), count, std::move(b));
}

std::vector<std::string> oscillator_coeffs_exact(int k) {
    if (k < 0) throw Error(ErrorKind::invalid_argument, "oscillator_coeffs needs k >= 0");
    std::vector<std::string> out;
    for (const auto& q : oscillator_table().energies(k)) out.push_back(q.str());
    return out;
}

SmallSeries oscillator_coeffs(int k) {
    if (k < 0) throw Error(ErrorKind::invalid_argument, "oscillator_coeffs needs k >= 0");
    std::vector<Real> c;
    for (const auto& q : oscillator_table().energies(k)) {
        Real r;
        mpfr_set_q(r.get(), q.backend().data(), MPFR_RNDN);
        c.push_back(std::move(r));
    }
    return SmallSeries(std::move(c));
}

PowerLadder oscillator_ladder(int count) {
    std::vector<Real> b;
    for (const char* v : {"0.667986", "0.143669", "-0.008628", "0.000818", "-0.000082", "0.000008"}) b.emplace_back(v);
    if (static_cast<int>(b.size()) > count) b.resize(static_cast<std::size_t>(count));
    return PowerLadder::uniform(Real(1) / Real(3), Real(2) / Real(3), count, std::move(b));
}

SmallSeries electron_series() { return SmallSeries({-pi() * pi() / Real(360), Real("0.00845")}); }

PowerLadder electron_ladder(int count) {
    std::vector<Real> b{-(log(sqrt(Real(2) * pi())) - Real(3) / Real(4)), Real("0.359933")};
    if (count < 2) b.resize(static_cast<std::size_t>(std::max(count, 0)));
    return PowerLadder::uniform(Real(-1), Real(1) / Real(2), count, std::move(b));
}

std::vector<LargeCondition> electron_large_conditions() {
    const auto ladder = electron_ladder(2);
    const auto& b = *ladder.amplitudes();
    return {{ladder[0], b[0]}, {ladder[1], b[1]}};
}

const ReferenceRow* ReferenceTable::find(std::string_view method, int k, int q, std::optional<Strategy> strategy) const {
    for (const auto& r : rows)
        if (r.method == method && r.k == k && r.q == q && (!strategy || !r.strategy || r.strategy == strategy)) return &r;
    return nullptr;
}

const ReferenceParameters* ReferenceTable::find_parameters(int k, int q) const {
    for (const auto& p : parameters)
        if (p.k == k && p.q == q) return &p;
    return nullptr;
}

int reference_tables_version() { return reference_json().at("version").get<int>(); }

const BenchmarkProblem& benchmark(std::string_view name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw Error(ErrorKind::invalid_argument, "unknown problem '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> benchmark_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : registry()) out.push_back(name);
    return out;
}

}  // namespace selfsim
