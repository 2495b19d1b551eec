#include "selfsim/additive.hpp"

#include <algorithm>
#include <sstream>

#include "selfsim/errors.hpp"

namespace selfsim {

std::vector<GeneralizedTerm> AdditiveApproximant::all_terms() const {
    std::vector<GeneralizedTerm> out = main_terms;
    out.insert(out.end(), counter_terms.begin(), counter_terms.end());
    return out;
}

bool AdditiveApproximant::is_real() const {
    if (!lambda.im.is_zero()) return false;
    const auto real_amp = [](const GeneralizedTerm& t) { return t.amplitude.im.is_zero(); };
    return std::all_of(main_terms.begin(), main_terms.end(), real_amp) &&
           std::all_of(counter_terms.begin(), counter_terms.end(), real_amp);
}

std::size_t SolutionSet::real_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tags.begin(), tags.end(), [](const SolutionTag& t) { return t.kind == SolutionKind::real; }));
}

std::string_view to_string(Strategy s) noexcept { return s == Strategy::real_only ? "real" : "average"; }

std::vector<Real> counterterm_powers(const PowerLadder& ladder, int k) {
    if (k < 1) throw Error(ErrorKind::invalid_argument, "approximant order k must be >= 1");
    if (ladder.size() < static_cast<std::size_t>(k) + 1)
        throw Error(ErrorKind::invalid_argument, "counter-term bound needs beta_" + std::to_string(k + 1) + " but the ladder has " +
                                                     std::to_string(ladder.size()) + " powers");
    if (invariance_check(ladder)) return {};
    const Real& upper = ladder[0];
    const Real& lower = ladder[static_cast<std::size_t>(k)];
    const Real tol(kPowerTolerance);
    std::vector<Real> out;
    for (int j = 0; j < k; ++j) {
        Real gamma = ladder[static_cast<std::size_t>(j)] - Real(1);
        if (gamma > lower + tol && gamma < upper - tol) out.push_back(std::move(gamma));
    }
    return out;
}

ConditionSet assemble_conditions(const SmallSeries& series, const PowerLadder& ladder, int k, std::optional<int> q,
                                 std::span<const LargeCondition> large_matches) {
    if (k < 1) throw Error(ErrorKind::invalid_argument, "approximant order k must be >= 1");
    if (ladder.size() < static_cast<std::size_t>(k))
        throw Error(ErrorKind::invalid_argument,
                    "order " + std::to_string(k) + " needs " + std::to_string(k) + " ladder powers, got " + std::to_string(ladder.size()));

    ConditionSet set;
    set.main_powers.assign(ladder.powers().begin(), ladder.powers().begin() + k);

    std::vector<Real> available;
    if (ladder.size() > static_cast<std::size_t>(k)) available = counterterm_powers(ladder, k);
    else if (!invariance_check(ladder) && q.value_or(0) > 0)
        throw Error(ErrorKind::invalid_argument, "counter-terms need beta_" + std::to_string(k + 1) + " in the ladder");
    const int q_used = q.value_or(static_cast<int>(available.size()));
    if (q_used < 0 || static_cast<std::size_t>(q_used) > available.size()) {
        std::ostringstream msg;
        msg << "condition count mismatch: requested q = " << q_used << " counter-terms but only " << available.size()
            << " powers satisfy beta_" << (k + 1) << " < gamma < beta_1";
        throw Error(ErrorKind::condition_count, msg.str());
    }
    set.counter_powers.assign(available.begin(), available.begin() + q_used);
    set.cancellations = set.counter_powers;

    const std::size_t unknowns = set.unknown_count();
    if (large_matches.size() + set.cancellations.size() > unknowns) {
        std::ostringstream msg;
        msg << "condition count mismatch: expected " << unknowns << " conditions, supplied " << large_matches.size()
            << " large-variable and " << set.cancellations.size() << " cancellation conditions already";
        throw Error(ErrorKind::condition_count, msg.str());
    }
    const std::size_t small_needed = unknowns - large_matches.size() - set.cancellations.size();
    if (small_needed == 0) throw Error(ErrorKind::condition_count, "condition count mismatch: no small-variable condition left");
    if (static_cast<std::size_t>(series.order()) + 1 < small_needed) {
        std::ostringstream msg;
        msg << "condition count mismatch: expected " << small_needed << " small-variable coefficients (orders 0.."
            << (small_needed - 1) << "), supplied " << (series.order() + 1);
        throw Error(ErrorKind::condition_count, msg.str());
    }
    if (large_matches.empty() && series[0].is_zero())
        throw Error(ErrorKind::domain, "a_0 = 0: factor out the leading small-variable behaviour before extrapolating");

    for (std::size_t n = 0; n < small_needed; ++n) set.small_orders.push_back({static_cast<int>(n), series[n]});
    for (const auto& lm : large_matches) {
        const bool in_ladder = std::any_of(ladder.powers().begin(), ladder.powers().end(),
                                           [&](const Real& p) { return same_power(p, lm.power); });
        if (!in_ladder)
            throw Error(ErrorKind::invalid_argument, "large-variable match at power " + lm.power.to_string(6) + " is not a ladder power");
        set.large_amplitudes.push_back(lm);
    }
    return set;
}

namespace {

struct Row {
    std::vector<Real> coeffs;  // per term, terms ordered main then counter
    Real rhs;                  // right-hand side is rhs * mu^exponent
    Real exponent;
    std::string label;
};

// binom(p, m) if p - target is a non-negative integer m, else zero: the
// coefficient a term of power p contributes at large-x power `target`.
Real large_row_entry(const Real& p, const Real& target) {
    const Real shift = p - target;
    const Real tol(kPowerTolerance);
    if (shift < -tol || !is_integer(shift, tol)) return Real(0);
    return binom(p, static_cast<int>(round(shift).to_double()));
}

std::vector<Row> build_rows(const ConditionSet& c) {
    std::vector<Real> powers = c.main_powers;
    powers.insert(powers.end(), c.counter_powers.begin(), c.counter_powers.end());
    std::vector<Row> rows;
    for (const auto& s : c.small_orders) {
        Row r;
        for (const auto& p : powers) r.coeffs.push_back(binom(p, s.order));
        r.rhs = s.value;
        r.exponent = Real(s.order);
        r.label = "small-variable order " + std::to_string(s.order);
        rows.push_back(std::move(r));
    }
    for (const auto& l : c.large_amplitudes) {
        Row r;
        for (const auto& p : powers) r.coeffs.push_back(large_row_entry(p, l.power));
        r.rhs = l.value;
        r.exponent = l.power;
        r.label = "large-variable amplitude at power " + l.power.to_string(6);
        rows.push_back(std::move(r));
    }
    for (const auto& g : c.cancellations) {
        Row r;
        for (const auto& p : powers) r.coeffs.push_back(large_row_entry(p, g));
        r.rhs = Real(0);
        r.exponent = Real(0);
        r.label = "cancellation at power " + g.to_string(6);
        rows.push_back(std::move(r));
    }
    return rows;
}

int common_denominator(const std::vector<Row>& rows) {
    const Real tol(kPowerTolerance);
    for (int d = 1; d <= 64; ++d) {
        const bool ok = std::all_of(rows.begin(), rows.end(), [&](const Row& r) {
            return r.rhs.is_zero() || is_integer(r.exponent * Real(d), tol * Real(d));
        });
        if (ok) return d;
    }
    throw Error(ErrorKind::invalid_argument, "large-variable powers are not rational with denominator <= 64");
}

Real relative_residual(const Row& row, const std::vector<Complex>& amps, const Complex& rhs) {
    Complex acc;
    Real scale = abs(rhs);
    for (std::size_t t = 0; t < amps.size(); ++t) {
        const Complex term = amps[t] * Complex(row.coeffs[t]);
        scale += abs(term);
        acc += term;
    }
    if (scale.is_zero()) return Real(0);
    return abs(acc - rhs) / scale;
}

}  // namespace

Real condition_residual(const AdditiveApproximant& approx, const ConditionSet& conditions) {
    const auto rows = build_rows(conditions);
    std::vector<Complex> amps;
    for (const auto& t : approx.main_terms) amps.push_back(t.amplitude);
    for (const auto& t : approx.counter_terms) amps.push_back(t.amplitude);
    const Complex mu = Complex(1) / approx.lambda;
    Real worst;
    for (const auto& row : rows) {
        const Complex rhs = row.rhs.is_zero() ? Complex() : Complex(row.rhs) * pow(mu, row.exponent);
        worst = std::max(worst, relative_residual(row, amps, rhs));
    }
    return worst;
}

SolutionSet solve(const ConditionSet& conditions, const PrecisionContext& ctx) {
    ctx.validate();
    const PrecisionScope scope(ctx.decimal_digits);

    if (conditions.condition_count() != conditions.unknown_count()) {
        std::ostringstream msg;
        msg << "condition count mismatch: expected " << conditions.unknown_count() << " conditions, supplied "
            << conditions.condition_count();
        throw Error(ErrorKind::condition_count, msg.str());
    }

    const auto rows = build_rows(conditions);
    const std::size_t n_amp = conditions.main_powers.size() + conditions.counter_powers.size();
    const std::size_t n_rows = rows.size();

    ComplexMatrix m(n_rows, n_amp);
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t t = 0; t < n_amp; ++t) m(r, t) = Complex(rows[r].coeffs[t]);

    // Cofactors of the right-hand-side column of the augmented matrix.
    std::vector<Complex> cofactor(n_rows);
    std::size_t pivot_row = 0;
    for (std::size_t r = 0; r < n_rows; ++r) {
        cofactor[r] = determinant(m.without_row(r));
        if ((r + n_amp) % 2 == 1) cofactor[r] = -cofactor[r];
        if (abs(cofactor[r]) > abs(cofactor[pivot_row])) pivot_row = r;
    }

    const int denom = common_denominator(rows);
    std::vector<long> nu_exp(n_rows, 0);
    long min_exp = 0;
    bool any = false;
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (rows[r].rhs.is_zero()) continue;
        nu_exp[r] = static_cast<long>(round(rows[r].exponent * Real(denom)).to_double());
        min_exp = any ? std::min(min_exp, nu_exp[r]) : nu_exp[r];
        any = true;
    }
    if (!any) throw Error(ErrorKind::no_valid_solution, "all conditions are homogeneous; only the zero approximant fits");

    long max_exp = min_exp;
    for (std::size_t r = 0; r < n_rows; ++r)
        if (!rows[r].rhs.is_zero()) max_exp = std::max(max_exp, nu_exp[r]);
    std::vector<Complex> poly(static_cast<std::size_t>(max_exp - min_exp + 1));
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (rows[r].rhs.is_zero()) continue;
        poly[static_cast<std::size_t>(nu_exp[r] - min_exp)] += Complex(rows[r].rhs) * cofactor[r];
    }
    const Polynomial elimination(std::move(poly));
    if (elimination.degree() < 1)
        throw Error(ErrorKind::no_valid_solution, "elimination polynomial is constant; the conditions admit no solution");

    const auto nus = poly_roots(elimination, ctx);
    SolutionSet out;
    out.candidate_count = nus.size();

    const Real branch_limit = pi() / Real(denom);
    const Real accept_tol = ctx.tolerance(8);
    const Real imag_tol = ctx.tolerance(10);
    const ComplexMatrix reduced = m.without_row(pivot_row);

    for (const auto& nu : nus) {
        if (nu.is_zero() || !(abs(arg(nu)) < branch_limit - imag_tol)) {
            ++out.rejected_count;
            continue;
        }
        std::vector<Complex> rhs(n_rows);
        for (std::size_t r = 0; r < n_rows; ++r)
            if (!rows[r].rhs.is_zero()) rhs[r] = Complex(rows[r].rhs) * pow(nu, nu_exp[r]);

        std::vector<Complex> reduced_rhs;
        for (std::size_t r = 0; r < n_rows; ++r)
            if (r != pivot_row) reduced_rhs.push_back(rhs[r]);
        std::vector<Complex> amps;
        try {
            amps = solve_linear(reduced, std::move(reduced_rhs), ctx);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::singular_matrix) throw;
            ++out.rejected_count;
            continue;
        }
        if (!std::all_of(amps.begin(), amps.end(), [](const Complex& a) { return a.is_finite(); })) {
            ++out.rejected_count;
            continue;
        }

        for (std::size_t r = 0; r < n_rows; ++r) {
            const Real res = relative_residual(rows[r], amps, rhs[r]);
            if (res > accept_tol) {
                std::ostringstream msg;
                msg << "residual failure: " << rows[r].label << " violated by " << res.to_string(3);
                throw Error(ErrorKind::residual, msg.str());
            }
        }

        AdditiveApproximant approx;
        approx.lambda = Complex(1) / pow(nu, static_cast<long>(denom));
        if (nu.im.is_zero()) {
            approx.lambda.im = Real(0);
            Real scale;
            for (const auto& a : amps) scale = std::max(scale, abs(a));
            for (auto& a : amps) {
                if (abs(a.im) > imag_tol * scale) throw Error(ErrorKind::residual, "real lambda with complex amplitudes");
                a.im = Real(0);
            }
        }
        for (std::size_t t = 0; t < conditions.main_powers.size(); ++t)
            approx.main_terms.push_back({conditions.main_powers[t], amps[t]});
        for (std::size_t t = 0; t < conditions.counter_powers.size(); ++t)
            approx.counter_terms.push_back({conditions.counter_powers[t], amps[conditions.main_powers.size() + t]});
        out.solutions.push_back(std::move(approx));
    }

    if (out.solutions.empty())
        throw Error(ErrorKind::no_valid_solution,
                    "no admissible solution: all " + std::to_string(out.candidate_count) + " roots were rejected");

    // Classification: real, or paired with its complex conjugate.
    out.tags.assign(out.solutions.size(), SolutionTag{});
    const auto conjugate_of = [&](const AdditiveApproximant& a, const AdditiveApproximant& b) {
        const Real scale = abs(a.lambda);
        if (abs(a.lambda - conj(b.lambda)) > imag_tol * scale) return false;
        const auto ta = a.all_terms();
        const auto tb = b.all_terms();
        for (std::size_t t = 0; t < ta.size(); ++t) {
            const Real s = abs(ta[t].amplitude) + Real(1);
            if (abs(ta[t].amplitude - conj(tb[t].amplitude)) > imag_tol * s) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < out.solutions.size(); ++i) {
        if (out.solutions[i].is_real()) continue;
        if (out.tags[i].partner) continue;
        out.tags[i].kind = SolutionKind::unpaired;
        for (std::size_t j = i + 1; j < out.solutions.size(); ++j) {
            if (out.tags[j].partner || out.solutions[j].is_real()) continue;
            if (conjugate_of(out.solutions[i], out.solutions[j])) {
                out.tags[i] = {SolutionKind::conjugate_pair, j};
                out.tags[j] = {SolutionKind::conjugate_pair, i};
                break;
            }
        }
    }
    return out;
}

Complex amplitude(const AdditiveApproximant& approx) {
    if (approx.main_terms.empty()) throw Error(ErrorKind::invalid_argument, "approximant has no main term");
    const auto& lead = approx.main_terms.front();
    if (lead.amplitude.is_zero()) return {};
    return lead.amplitude * pow(approx.lambda, lead.power);
}

AmplitudeReport strategy_amplitude(const SolutionSet& set, Strategy strategy, std::optional<Real> reference, int k, int q) {
    std::vector<Complex> entries;
    for (std::size_t i = 0; i < set.solutions.size(); ++i) {
        const auto& tag = set.tags.at(i);
        switch (tag.kind) {
            case SolutionKind::real:
                entries.push_back(amplitude(set.solutions[i]));
                break;
            case SolutionKind::conjugate_pair:
                if (strategy == Strategy::average_all && tag.partner && *tag.partner > i)
                    entries.push_back((amplitude(set.solutions[i]) + amplitude(set.solutions[*tag.partner])) / Complex(2));
                break;
            case SolutionKind::unpaired:
                if (strategy == Strategy::average_all) entries.push_back(amplitude(set.solutions[i]));
                break;
        }
    }
    if (entries.empty()) {
        throw Error(ErrorKind::empty_strategy, strategy == Strategy::real_only ? "no real solution for the real-only strategy"
                                                                                : "empty solution set");
    }
    Complex mean;
    for (const auto& e : entries) mean += e;
    mean /= Complex(static_cast<long>(entries.size()));
    const Real tol = ten_to_minus(working_digits() - 8);
    if (abs(mean.im) > tol * (abs(mean.re) + Real(1)))
        throw Error(ErrorKind::domain, "averaged amplitude is not real: imaginary part " + mean.im.to_string(3));

    AmplitudeReport report;
    report.k = k;
    report.q = q;
    report.strategy = strategy;
    report.amplitude = mean.re;
    report.n_solutions = set.size();
    report.n_real = set.real_count();
    if (reference && !reference->is_zero())
        report.percent_error = Real(100) * abs(report.amplitude - *reference) / abs(*reference);
    return report;
}

Complex evaluate_complex(const AdditiveApproximant& approx, const Real& x) {
    if (x < Real(0)) throw Error(ErrorKind::domain, "additive approximants are defined for x >= 0");
    const Complex base = Complex(1) + approx.lambda * Complex(x);
    Complex acc;
    for (const auto& t : approx.all_terms()) acc += t.amplitude * pow(base, t.power);
    return acc;
}

Real evaluate(const AdditiveApproximant& approx, const Real& x) { return evaluate_complex(approx, x).re; }

}  // namespace selfsim
