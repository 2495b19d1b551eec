#include "selfsim/comparators.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

// Miller's recurrence for b = a^p: n a_0 b_n = sum_{j=1}^n (p j - (n - j)) a_j b_{n-j}.
template <class T, class P>
std::vector<T> power_recurrence(const std::vector<T>& a, const P& p, const T& lead, int order) {
    std::vector<T> b(idx(order + 1));
    b[0] = lead;
    for (int n = 1; n <= order; ++n) {
        T acc{};
        for (int j = 1; j <= n && idx(j) < a.size(); ++j)
            acc += (T(p) * T(j) - T(n - j)) * a[idx(j)] * b[idx(n - j)];
        b[idx(n)] = acc / (T(n) * a[0]);
    }
    return b;
}

// log of a series with a_0 = 1.
std::vector<Real> series_log(const std::vector<Real>& a, int order) {
    std::vector<Real> l(idx(order + 1));
    for (int n = 1; n <= order; ++n) {
        Real acc = Real(n) * a[idx(n)];
        for (int j = 1; j < n; ++j) acc -= Real(j) * l[idx(j)] * a[idx(n - j)];
        l[idx(n)] = acc / Real(n);
    }
    return l;
}

std::vector<Real> series_div(const std::vector<Real>& a, const std::vector<Real>& b, int order) {
    std::vector<Real> c(idx(order + 1));
    for (int n = 0; n <= order; ++n) {
        Real acc = idx(n) < a.size() ? a[idx(n)] : Real(0);
        for (int j = 1; j <= n && idx(j) < b.size(); ++j) acc -= b[idx(j)] * c[idx(n - j)];
        c[idx(n)] = acc / b[0];
    }
    return c;
}

std::vector<Real> normalized(const SmallSeries& series) {
    const Real& a0 = series[0];
    if (a0.is_zero()) throw Error(ErrorKind::domain, "comparators need a_0 != 0");
    std::vector<Real> out;
    out.reserve(series.coeffs().size());
    for (const auto& c : series.coeffs()) out.push_back(c / a0);
    return out;
}

bool has_positive_real_root(const std::vector<Real>& poly, const PrecisionContext& ctx) {
    std::vector<Complex> c(poly.begin(), poly.end());
    Polynomial p(std::move(c));
    if (p.degree() < 1) return false;
    for (const auto& z : poly_roots(p, ctx))
        if (z.im.is_zero() && z.re.sign() >= 0) return true;
    return false;
}

// Large-x generalized series sum_i c_i x^{e_i}, leading term first. Terms
// more than `depth` below the leading exponent are dropped.
struct GenTerm {
    Real e;
    Real c;
};

class LargeSeries {
public:
    explicit LargeSeries(Real depth) : depth_(std::move(depth)) {}

    const std::vector<GenTerm>& terms() const { return terms_; }

    void add(const Real& e, const Real& c) {
        if (c.is_zero()) return;
        auto it = std::find_if(terms_.begin(), terms_.end(), [&](const GenTerm& t) { return same_power(t.e, e); });
        if (it == terms_.end()) terms_.push_back({e, c});
        else it->c += c;
        normalize();
    }

    // (c_0 x^{e_0} (1 + u))^n with u expanded binomially to the kept depth.
    void raise(const Real& n) {
        if (terms_.empty()) return;
        const GenTerm lead = terms_.front();
        if (lead.c.sign() < 0 && !is_integer(n, Real(kPowerTolerance)))
            throw Error(ErrorKind::complex_solution,
                        "negative leading coefficient " + lead.c.to_string(6) + " raised to fractional power " +
                            n.to_string(6));
        std::vector<GenTerm> u;
        for (std::size_t i = 1; i < terms_.size(); ++i) u.push_back({terms_[i].e - lead.e, terms_[i].c / lead.c});
        std::vector<GenTerm> acc{{Real(0), Real(1)}};
        if (!u.empty()) {
            Real smallest = -u.front().e;
            for (const auto& t : u) smallest = std::min(smallest, -t.e);
            const int max_m = static_cast<int>(floor((depth_ + Real(kPowerTolerance)) / smallest).to_double());
            std::vector<GenTerm> um{{Real(0), Real(1)}};
            for (int m = 1; m <= max_m; ++m) {
                std::vector<GenTerm> next;
                for (const auto& a : um)
                    for (const auto& b : u) {
                        const Real e = a.e + b.e;
                        if (e < -depth_ - Real(kPowerTolerance)) continue;
                        merge(next, e, a.c * b.c);
                    }
                um = std::move(next);
                const Real w = binom(n, m);
                for (const auto& t : um) merge(acc, t.e, w * t.c);
            }
        }
        Real scale = pow(abs(lead.c), n);
        if (lead.c.sign() < 0 && static_cast<long>(round(n).to_double()) % 2 != 0) scale = -scale;
        const Real shift = n * lead.e;
        terms_.clear();
        for (const auto& t : acc) terms_.push_back({t.e + shift, t.c * scale});
        normalize();
    }

private:
    static void merge(std::vector<GenTerm>& v, const Real& e, const Real& c) {
        auto it = std::find_if(v.begin(), v.end(), [&](const GenTerm& t) { return same_power(t.e, e); });
        if (it == v.end()) v.push_back({e, c});
        else it->c += c;
    }

    void normalize() {
        std::erase_if(terms_, [](const GenTerm& t) { return t.c.is_zero(); });
        std::sort(terms_.begin(), terms_.end(), [](const GenTerm& a, const GenTerm& b) { return a.e > b.e; });
        if (terms_.empty()) return;
        const Real floor_e = terms_.front().e - depth_ - Real(kPowerTolerance);
        std::erase_if(terms_, [&](const GenTerm& t) { return t.e < floor_e; });
    }

    Real depth_;
    std::vector<GenTerm> terms_;
};

// Large-x expansion of the normalized nesting (prefactor excluded).
LargeSeries root_large(const std::vector<Real>& A, const std::vector<Real>& n, const Real& depth) {
    LargeSeries s(depth);
    s.add(Real(0), Real(1));
    for (std::size_t j = 0; j < A.size(); ++j) {
        s.add(Real(static_cast<long>(j + 1)), A[j]);
        s.raise(n[j]);
    }
    return s;
}

// Normalized nesting expanded at small x.
std::vector<Real> root_small(const std::vector<Real>& A, const std::vector<Real>& n, int order) {
    std::vector<Real> cur(idx(order + 1));
    cur[0] = Real(1);
    for (std::size_t j = 0; j < A.size(); ++j) {
        if (j + 1 <= idx(order)) cur[j + 1] += A[j];
        cur = series_power(cur, n[j], order);
    }
    return cur;
}

}  // namespace

std::vector<Real> series_power(const std::vector<Real>& a, const Real& p, int order) {
    if (a.empty() || !(a[0] > Real(0))) throw Error(ErrorKind::domain, "series_power needs a_0 > 0");
    return power_recurrence<Real, Real>(a, p, pow(a[0], p), order);
}

std::vector<Complex> series_power(const std::vector<Complex>& a, const Complex& p, int order) {
    if (a.empty() || a[0].is_zero()) throw Error(ErrorKind::domain, "series_power needs a_0 != 0");
    return power_recurrence<Complex, Complex>(a, p, exp(p * log(a[0])), order);
}

PadeApproximant pade_construct(const SmallSeries& series, int M, int N, const PrecisionContext& ctx) {
    ctx.validate();
    PrecisionScope scope(ctx.decimal_digits);
    if (M < 0 || N < 0) throw Error(ErrorKind::invalid_argument, "Pade degrees must be non-negative");
    if (M + N > series.order())
        throw Error(ErrorKind::invalid_argument, "Pade [" + std::to_string(M) + "/" + std::to_string(N) +
                                                     "] needs a series of order " + std::to_string(M + N));
    const auto& s = series.coeffs();
    auto at = [&](int n) { return n < 0 ? Real(0) : s[idx(n)]; };
    PadeApproximant p;
    p.denominator.assign(idx(N + 1), Real(0));
    p.denominator[0] = Real(1);
    if (N > 0) {
        ComplexMatrix a(idx(N), idx(N));
        std::vector<Complex> b(idx(N));
        for (int r = 0; r < N; ++r) {
            const int n = M + 1 + r;
            for (int j = 1; j <= N; ++j) a(idx(r), idx(j - 1)) = at(n - j);
            b[idx(r)] = -at(n);
        }
        const auto q = solve_linear(std::move(a), std::move(b), ctx);
        for (int j = 1; j <= N; ++j) p.denominator[idx(j)] = q[idx(j - 1)].re;
    }
    p.numerator.assign(idx(M + 1), Real(0));
    for (int n = 0; n <= M; ++n)
        for (int j = 0; j <= std::min(n, N); ++j) p.numerator[idx(n)] += p.denominator[idx(j)] * at(n - j);
    p.pole_on_positive_axis = has_positive_real_root(p.denominator, ctx);
    return p;
}

Real pade_evaluate(const PadeApproximant& p, const Real& x) {
    Real num, den;
    for (std::size_t n = p.numerator.size(); n-- > 0;) num = num * x + p.numerator[n];
    for (std::size_t n = p.denominator.size(); n-- > 0;) den = den * x + p.denominator[n];
    const Real ratio = num / den;
    if (p.gamma == Real(1)) return p.scale * ratio;
    if (ratio.sign() < 0) throw Error(ErrorKind::domain, "negative Pade base under a fractional exponent");
    return p.scale * pow(ratio, p.gamma);
}

void pade_check_applicable(const PowerLadder& ladder) {
    for (const auto& beta : ladder.powers())
        if (!is_integer(beta, Real(kPowerTolerance)))
            throw Error(ErrorKind::power_incompatible,
                        "plain Pade produces only integer large-x powers; the ladder contains " + beta.to_string(6));
}

Real pade_amplitude(const SmallSeries& series, const PowerLadder& ladder, int M, int N, const PrecisionContext& ctx) {
    pade_check_applicable(ladder);
    if (!same_power(Real(M - N), ladder[0]))
        throw Error(ErrorKind::invalid_argument, "plain Pade needs M - N = beta_1");
    const auto p = pade_construct(series, M, N, ctx);
    PrecisionScope scope(ctx.decimal_digits);
    return p.numerator.back() / p.denominator.back();
}

PadeApproximant pade_modified_construct(const SmallSeries& series, int N, const Real& beta1, const PrecisionContext& ctx) {
    ctx.validate();
    PrecisionScope scope(ctx.decimal_digits);
    if (N < 0) throw Error(ErrorKind::invalid_argument, "modified Pade needs N >= 0");
    if (beta1.is_zero()) throw Error(ErrorKind::invalid_argument, "modified Pade needs beta_1 != 0");
    const int order = 2 * N + 1;
    if (series.order() < order)
        throw Error(ErrorKind::invalid_argument, "modified Pade with N = " + std::to_string(N) + " needs a series of order " +
                                                     std::to_string(order));
    const Real gamma = -beta1;
    const auto g = series_power(normalized(series), Real(1) / gamma, order);
    auto p = pade_construct(SmallSeries(g), N, N + 1, ctx);
    p.gamma = gamma;
    p.scale = series[0];
    return p;
}

PadeAmplitude pade_modified_amplitude(const SmallSeries& series, int N, const Real& beta1, const PrecisionContext& ctx) {
    const auto p = pade_modified_construct(series, N, beta1, ctx);
    PrecisionScope scope(ctx.decimal_digits);
    const Real ratio = p.numerator.back() / p.denominator.back();
    if (ratio.sign() < 0 && !is_integer(p.gamma, Real(kPowerTolerance)))
        throw Error(ErrorKind::complex_solution, "modified Pade leading ratio is negative under a fractional exponent");
    const Real mag = pow(abs(ratio), p.gamma);
    const bool flip = ratio.sign() < 0 && static_cast<long>(round(p.gamma).to_double()) % 2 != 0;
    return {p.scale * (flip ? -mag : mag), p.pole_on_positive_axis};
}

int pade_modified_degree(int k) {
    if (k < 1) throw Error(ErrorKind::invalid_argument, "modified Pade needs order >= 1");
    return (k - 1) / 2;
}

FactorApproximant factor_construct(const SmallSeries& series, std::optional<Real> beta1, const PrecisionContext& ctx) {
    ctx.validate();
    PrecisionScope scope(ctx.decimal_digits);
    const int k = series.order();
    if (k < 2) throw Error(ErrorKind::invalid_argument, "factor approximants need k >= 2");
    const bool odd = k % 2 == 1;
    if (odd && !beta1) throw Error(ErrorKind::invalid_argument, "odd-order factor approximants need beta_1");
    const auto a = normalized(series);
    const auto l = series_log(a, k);

    // Power sums P_m = sum_i n_i A_i^m, m = m0 .. m0 + 2N - 1.
    const int N = odd ? (k + 1) / 2 : k / 2;
    const int m0 = odd ? 0 : 1;
    std::vector<Real> P(idx(k + 1));
    if (odd) P[0] = *beta1;
    for (int m = 1; m <= k; ++m) P[idx(m)] = (m % 2 == 1 ? Real(m) : Real(-m)) * l[idx(m)];

    ComplexMatrix h(idx(N), idx(N));
    std::vector<Complex> rhs(idx(N));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) h(idx(i), idx(j)) = P[idx(m0 + i + j)];
        rhs[idx(i)] = -P[idx(m0 + i + N)];
    }
    std::vector<Complex> c;
    try {
        c = solve_linear(std::move(h), std::move(rhs), ctx);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::singular_matrix) throw;
        throw Error(ErrorKind::singular_matrix, std::string("factor approximant Hankel system is singular: ") + e.what());
    }
    c.emplace_back(1);
    const auto roots = poly_roots(Polynomial(c), ctx);

    ComplexMatrix v(idx(N), idx(N));
    std::vector<Complex> sums(idx(N));
    for (int i = 0; i < N; ++i) {
        for (int t = 0; t < N; ++t) v(idx(i), idx(t)) = pow(roots[idx(t)], static_cast<long>(m0 + i));
        sums[idx(i)] = P[idx(m0 + i)];
    }
    const auto n = solve_linear(std::move(v), std::move(sums), ctx);

    FactorApproximant f;
    f.prefactor = series[0];
    f.coeffs = roots;
    f.powers = n;
    const Real tol = ctx.tolerance(10);
    for (int t = 0; t < N; ++t) {
        if (!roots[idx(t)].im.is_zero()) f.complex_factors = true;
        if (abs(n[idx(t)].im) > tol * (Real(1) + abs(n[idx(t)]))) f.complex_factors = true;
        else if (roots[idx(t)].im.is_zero()) f.powers[idx(t)].im = Real(0);
    }
    return f;
}

FactorAmplitude factor_amplitude(const FactorApproximant& f) {
    if (f.complex_factors) throw Error(ErrorKind::complex_solution, "factor approximant has complex factors");
    Real amp = f.prefactor;
    Real power = f.alpha;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const Real& A = f.coeffs[i].re;
        const Real& n = f.powers[i].re;
        power += n;
        if (A.sign() > 0) {
            amp *= pow(A, n);
        } else if (!A.is_zero() && is_integer(n, Real(kPowerTolerance))) {
            amp *= pow(A, static_cast<long>(round(n).to_double()));
        } else {
            throw Error(ErrorKind::complex_solution,
                        "factor coefficient " + A.to_string(6) + " with power " + n.to_string(6) + " has no real limit");
        }
    }
    return {amp, power};
}

Complex factor_evaluate(const FactorApproximant& f, const Real& x) {
    Complex v = Complex(f.prefactor) * (f.alpha.is_zero() ? Complex(1) : Complex(pow(x, f.alpha)));
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        v *= exp(f.powers[i] * log(Complex(1) + f.coeffs[i] * Complex(x)));
    return v;
}

RootApproximant root_construct(const SmallSeries& series, const PowerLadder& ladder, RootMode mode, int large_count,
                               const PrecisionContext& ctx) {
    ctx.validate();
    PrecisionScope scope(ctx.decimal_digits);
    const int k = series.order();
    if (k < 1) throw Error(ErrorKind::invalid_argument, "root approximants need k >= 1");
    int p = 0;
    if (mode == RootMode::mixed) p = large_count;
    if (mode == RootMode::full_large) p = k;
    if (p < 0 || p > k) throw Error(ErrorKind::invalid_argument, "root approximant large-condition count out of range");
    if (mode != RootMode::small_only && ladder.size() < idx(k))
        throw Error(ErrorKind::invalid_argument, "root approximant needs " + std::to_string(k) + " ladder powers");
    if (p > 0 && (!ladder.amplitudes() || ladder.amplitudes()->size() < idx(p)))
        throw Error(ErrorKind::invalid_argument, "root approximant needs ladder amplitudes b_1..b_" + std::to_string(p));

    const Real& beta1 = ladder[0];
    RootApproximant r;
    r.prefactor = series[0];
    for (int j = 1; j < k; ++j) {
        if (mode == RootMode::small_only) {
            r.powers.push_back(Real(j + 1) / Real(j));
        } else {
            const Real gap = ladder[idx(k - j - 1)] - ladder[idx(k - j)];
            r.powers.push_back((Real(j + 1) - gap) / Real(j));
        }
    }
    r.powers.push_back(beta1 / Real(k));

    // Sequential small-side matching: a_j enters linearly through A_j with
    // weight prod_{i >= j} n_i.
    const auto a = normalized(series);
    r.coeffs.assign(idx(k), Real(0));
    for (int j = 1; j <= k; ++j) {
        const auto s = root_small(r.coeffs, r.powers, j);
        Real weight(1);
        for (int i = j; i <= k; ++i) weight *= r.powers[idx(i - 1)];
        r.coeffs[idx(j - 1)] = (a[idx(j)] - s[idx(j)]) / weight;
    }
    if (p == 0) {
        root_large(r.coeffs, r.powers, Real(0));  // surfaces complex nestings
        return r;
    }

    // Newton on the last p coefficients against b_1..b_p.
    const auto& b = *ladder.amplitudes();
    const Real depth = beta1 - ladder[idx(p - 1)];
    auto residual = [&](const std::vector<Real>& A) {
        const auto s = root_large(A, r.powers, depth);
        std::vector<Complex> out(idx(p));
        if (s.terms().empty() || !same_power(s.terms().front().e, beta1))
            throw Error(ErrorKind::no_valid_solution, "root approximant leading power differs from beta_1");
        for (int i = 0; i < p; ++i) {
            Real c;
            for (const auto& t : s.terms())
                if (same_power(t.e, ladder[idx(i)])) c = t.c;
            out[idx(i)] = r.prefactor * c - b[idx(i)];
        }
        return out;
    };
    auto size_of = [&](const std::vector<Complex>& f) {
        Real worst;
        for (int i = 0; i < p; ++i) worst = std::max(worst, abs(f[idx(i)]) / (Real(1) + abs(b[idx(i)])));
        return worst;
    };
    const Real tol = ctx.tolerance(10);
    const Real h = ten_to_minus(ctx.decimal_digits / 3);
    for (int iter = 0; iter < 200; ++iter) {
        const auto f0 = residual(r.coeffs);
        const Real worst = size_of(f0);
        if (worst < tol) return r;
        ComplexMatrix jac(idx(p), idx(p));
        for (int c = 0; c < p; ++c) {
            auto shifted = r.coeffs;
            auto& v = shifted[idx(k - p + c)];
            const Real step = h * (Real(1) + abs(v));
            v += step;
            const auto f1 = residual(shifted);
            for (int i = 0; i < p; ++i) jac(idx(i), idx(c)) = (f1[idx(i)] - f0[idx(i)]) / Complex(step);
        }
        std::vector<Complex> rhs(idx(p));
        for (int i = 0; i < p; ++i) rhs[idx(i)] = -f0[idx(i)];
        const auto delta = solve_linear(std::move(jac), std::move(rhs), ctx);
        // Halve the step until the nesting stays real and the residual drops.
        Real scale(1);
        bool moved = false;
        for (int halving = 0; halving < 60 && !moved; ++halving, scale /= Real(2)) {
            auto trial = r.coeffs;
            for (int c = 0; c < p; ++c) trial[idx(k - p + c)] += scale * delta[idx(c)].re;
            try {
                if (size_of(residual(trial)) < worst) {
                    r.coeffs = std::move(trial);
                    moved = true;
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::complex_solution) throw;
            }
        }
        if (!moved) break;
    }
    throw Error(ErrorKind::no_valid_solution, "root approximant large-side Newton iteration did not converge");
}

Real root_amplitude(const RootApproximant& r) {
    const auto s = root_large(r.coeffs, r.powers, Real(0));
    if (s.terms().empty()) throw Error(ErrorKind::domain, "root approximant vanishes at large x");
    return r.prefactor * s.terms().front().c;
}

Real root_evaluate(const RootApproximant& r, const Real& x) {
    Real v(1);
    Real xn(1);
    for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
        xn *= x;
        v += r.coeffs[j] * xn;
        if (v.sign() < 0 && !is_integer(r.powers[j], Real(kPowerTolerance)))
            throw Error(ErrorKind::complex_solution, "root approximant base is negative at x = " + x.to_string(6));
        v = pow(v, r.powers[j]);
    }
    return r.prefactor * v;
}

std::vector<Real> taylor(const PadeApproximant& p, int order) {
    auto ratio = series_div(p.numerator, p.denominator, order);
    if (p.gamma != Real(1)) ratio = series_power(ratio, p.gamma, order);
    for (auto& c : ratio) c *= p.scale;
    return ratio;
}

std::vector<Complex> taylor(const FactorApproximant& f, int order) {
    if (!f.alpha.is_zero()) throw Error(ErrorKind::invalid_argument, "Taylor expansion needs alpha = 0");
    std::vector<Complex> acc(idx(order + 1));
    acc[0] = Complex(f.prefactor);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const auto fac = series_power(std::vector<Complex>{Complex(1), f.coeffs[i]}, f.powers[i], order);
        std::vector<Complex> next(idx(order + 1));
        for (int n = 0; n <= order; ++n)
            for (int j = 0; j <= n; ++j) next[idx(n)] += acc[idx(j)] * fac[idx(n - j)];
        acc = std::move(next);
    }
    return acc;
}

std::vector<Real> taylor(const RootApproximant& r, int order) {
    auto s = root_small(r.coeffs, r.powers, order);
    for (auto& c : s) c *= r.prefactor;
    return s;
}

}  // namespace selfsim
