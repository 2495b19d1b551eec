#include "selfsim/series.hpp"

#include <algorithm>
#include <string>

#include "selfsim/errors.hpp"

namespace selfsim {

bool same_power(const Real& a, const Real& b) { return abs(a - b) <= Real(kPowerTolerance); }

SmallSeries::SmallSeries(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::invalid_argument, "a series needs at least a_0");
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        if (!coeffs_[n].is_finite())
            throw Error(ErrorKind::invalid_argument, "series coefficient a_" + std::to_string(n) + " is not finite");
}

SmallSeries SmallSeries::truncated(int order) const {
    if (order < 0 || order > this->order())
        throw Error(ErrorKind::invalid_argument,
                    "cannot truncate an order-" + std::to_string(this->order()) + " series to order " + std::to_string(order));
    return SmallSeries({coeffs_.begin(), coeffs_.begin() + order + 1});
}

Real SmallSeries::operator()(const Real& x) const {
    Real acc;
    for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * x + coeffs_[n];
    return acc;
}

SmallSeries SmallSeries::in_root_variable(int s) const {
    if (s < 1) throw Error(ErrorKind::invalid_argument, "root variable index must be >= 1");
    std::vector<Real> out(static_cast<std::size_t>(order() * s + 1));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) out[n * static_cast<std::size_t>(s)] = coeffs_[n];
    return SmallSeries(std::move(out));
}

PowerLadder::PowerLadder(std::vector<Real> powers, std::optional<std::vector<Real>> amplitudes, std::optional<Real> spacing)
    : powers_(std::move(powers)), amplitudes_(std::move(amplitudes)), spacing_(std::move(spacing)) {
    if (powers_.empty()) throw Error(ErrorKind::invalid_argument, "a power ladder needs at least one power");
    for (const auto& p : powers_)
        if (!p.is_finite()) throw Error(ErrorKind::invalid_argument, "ladder powers must be finite");
    for (std::size_t n = 0; n + 1 < powers_.size(); ++n) {
        if (!(powers_[n] > powers_[n + 1]))
            throw Error(ErrorKind::invalid_argument,
                        "ladder powers must be strictly descending (beta_" + std::to_string(n + 1) + " <= beta_" +
                            std::to_string(n + 2) + ")");
        if (spacing_ && !same_power(powers_[n] - powers_[n + 1], *spacing_))
            throw Error(ErrorKind::invalid_argument, "ladder spacing is not constant at beta_" + std::to_string(n + 1));
    }
    if (spacing_ && !(*spacing_ > Real(0))) throw Error(ErrorKind::invalid_argument, "ladder spacing must be positive");
    if (amplitudes_) {
        if (amplitudes_->size() > powers_.size())
            throw Error(ErrorKind::invalid_argument, "more ladder amplitudes than powers");
        for (const auto& b : *amplitudes_)
            if (!b.is_finite()) throw Error(ErrorKind::invalid_argument, "ladder amplitudes must be finite");
    }
}

PowerLadder PowerLadder::uniform(const Real& first, const Real& spacing, int count, std::optional<std::vector<Real>> amplitudes) {
    if (count < 1) throw Error(ErrorKind::invalid_argument, "ladder count must be positive");
    std::vector<Real> powers;
    powers.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) powers.push_back(first - spacing * Real(n));
    if (amplitudes && amplitudes->size() > powers.size()) amplitudes->resize(powers.size());
    return PowerLadder(std::move(powers), std::move(amplitudes), spacing);
}

PowerLadder PowerLadder::truncated(std::size_t count) const {
    if (count == 0 || count > powers_.size())
        throw Error(ErrorKind::invalid_argument, "cannot truncate a ladder of " + std::to_string(powers_.size()) +
                                                     " powers to " + std::to_string(count));
    std::optional<std::vector<Real>> amps;
    if (amplitudes_) amps = std::vector<Real>(amplitudes_->begin(), amplitudes_->begin() + static_cast<std::ptrdiff_t>(std::min(count, amplitudes_->size())));
    return PowerLadder({powers_.begin(), powers_.begin() + static_cast<std::ptrdiff_t>(count)}, std::move(amps), spacing_);
}

Real binom(const Real& beta, int n) {
    if (n < 0) throw Error(ErrorKind::invalid_argument, "binom needs n >= 0");
    Real r(1);
    for (int i = 1; i <= n; ++i) r = r * (beta - Real(i - 1)) / Real(i);
    return r;
}

std::vector<Complex> small_expand(std::span<const GeneralizedTerm> terms, const Complex& lambda, int order) {
    if (order < 0) throw Error(ErrorKind::invalid_argument, "small_expand needs order >= 0");
    std::vector<Complex> out(static_cast<std::size_t>(order + 1));
    Complex lambda_n(1);
    for (int n = 0; n <= order; ++n) {
        Complex acc;
        for (const auto& t : terms) acc += t.amplitude * Complex(binom(t.power, n));
        out[static_cast<std::size_t>(n)] = acc * lambda_n;
        lambda_n *= lambda;
    }
    return out;
}

std::vector<LargeTerm> large_expand(std::span<const GeneralizedTerm> terms, const Complex& lambda, int depth) {
    if (depth < 0) throw Error(ErrorKind::invalid_argument, "large_expand needs depth >= 0");
    if (lambda.is_zero() || (lambda.im.is_zero() && lambda.re.sign() < 0))
        throw Error(ErrorKind::domain, "large-variable expansion needs lambda off the non-positive real axis");
    std::vector<LargeTerm> out;
    for (const auto& t : terms) {
        for (int m = 0; m <= depth; ++m) {
            const Real power = t.power - Real(m);
            const Complex c = t.amplitude * pow(lambda, power) * Complex(binom(t.power, m));
            auto it = std::find_if(out.begin(), out.end(), [&](const LargeTerm& lt) { return same_power(lt.power, power); });
            if (it == out.end()) out.push_back({power, c});
            else it->coeff += c;
        }
    }
    std::sort(out.begin(), out.end(), [](const LargeTerm& a, const LargeTerm& b) { return a.power > b.power; });
    return out;
}

Complex coefficient_at(std::span<const LargeTerm> expansion, const Real& power) {
    for (const auto& t : expansion)
        if (same_power(t.power, power)) return t.coeff;
    return {};
}

bool invariance_check(const PowerLadder& ladder) {
    if (const auto& spacing = ladder.spacing()) return is_integer(Real(1) / *spacing, Real(kPowerTolerance));
    const auto& powers = ladder.powers();
    const Real& lowest = powers.back();
    for (const auto& beta : powers) {
        const Real shifted = beta - Real(1);
        if (shifted < lowest - Real(kPowerTolerance)) continue;
        const bool found = std::any_of(powers.begin(), powers.end(), [&](const Real& p) { return same_power(p, shifted); });
        if (!found) return false;
    }
    return true;
}

}  // namespace selfsim
