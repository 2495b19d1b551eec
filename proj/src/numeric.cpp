#include "selfsim/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace selfsim {

PrecisionContext PrecisionContext::with_digits(int digits) {
    PrecisionContext ctx;
    ctx.decimal_digits = digits;
    ctx.root_tolerance = std::pow(10.0, -(digits - 10));
    return ctx;
}

void PrecisionContext::validate() const {
    if (decimal_digits < 15)
        throw Error(ErrorKind::invalid_argument, "decimal_digits must be at least 15, got " + std::to_string(decimal_digits));
    if (!(root_tolerance > 0.0)) throw Error(ErrorKind::invalid_argument, "root_tolerance must be positive");
    if (max_root_iterations < 1) throw Error(ErrorKind::invalid_argument, "max_root_iterations must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1);
    return m;
}

ComplexMatrix ComplexMatrix::without_row(std::size_t skip) const {
    ComplexMatrix out(rows_ - 1, cols_);
    std::size_t dst = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r == skip) continue;
        for (std::size_t c = 0; c < cols_; ++c) out(dst, c) = (*this)(r, c);
        ++dst;
    }
    return out;
}

std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b, const PrecisionContext& ctx) {
    ctx.validate();
    const PrecisionScope scope(ctx.decimal_digits);
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw Error(ErrorKind::invalid_argument, "solve_linear needs a square matrix and a matching right-hand side");

    std::vector<Real> scale(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (!a(r, c).is_finite()) throw Error(ErrorKind::invalid_argument, "solve_linear: non-finite matrix entry");
            scale[r] = std::max(scale[r], abs(a(r, c)));
        }
    }
    const Real pivot_floor = ctx.tolerance(3);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        Real best_norm = norm(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            Real candidate = norm(a(r, col));
            if (candidate > best_norm) {
                best = r;
                best_norm = std::move(candidate);
            }
        }
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
            std::swap(b[col], b[best]);
            std::swap(scale[col], scale[best]);
        }
        if (scale[col].is_zero() || abs(a(col, col)) < pivot_floor * scale[col]) {
            std::ostringstream msg;
            msg << "singular matrix: pivot " << col << " below 1e-" << (ctx.decimal_digits - 3) << " of its row scale";
            throw Error(ErrorKind::singular_matrix, msg.str());
        }
        const Complex inv = Complex(1) / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col).is_zero()) continue;
            const Complex factor = a(r, col) * inv;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[r] -= factor * b[col];
            a(r, col) = Complex();
        }
    }

    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
        x[i] = acc / a(i, i);
    }
    return x;
}

Complex determinant(ComplexMatrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorKind::invalid_argument, "determinant of a non-square matrix");
    Complex det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        Real best_norm = norm(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            Real candidate = norm(a(r, col));
            if (candidate > best_norm) {
                best = r;
                best_norm = std::move(candidate);
            }
        }
        if (best_norm.is_zero()) return Complex();
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
            det = -det;
        }
        det *= a(col, col);
        const Complex inv = Complex(1) / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col).is_zero()) continue;
            const Complex factor = a(r, col) * inv;
            for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
        }
    }
    return det;
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Polynomial::has_real_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) { return c.im.is_zero(); });
}

Complex Polynomial::operator()(const Complex& z) const {
    Complex acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Complex> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Complex(static_cast<long>(i)));
    return Polynomial(std::move(d));
}

namespace {

struct Evaluation {
    Complex value;
    Complex slope;
    Real magnitude;  // sum |c_i| |z|^i, the scale of rounding errors in value
};

Evaluation evaluate_with_slope(const std::vector<Complex>& c, const Complex& z) {
    Evaluation e;
    const Real az = abs(z);
    for (std::size_t i = c.size(); i-- > 0;) {
        e.slope = e.slope * z + e.value;
        e.value = e.value * z + c[i];
        e.magnitude = e.magnitude * az + abs(c[i]);
    }
    return e;
}

// Starting points on circles whose radii come from the upper convex hull of
// (i, log|c_i|), so that roots of very different magnitude each get a guess
// of the right size.
std::vector<Complex> initial_guesses(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<std::pair<int, double>> pts;
    for (int i = 0; i <= n; ++i) {
        if (!c[static_cast<std::size_t>(i)].is_zero())
            pts.emplace_back(i, log(abs(c[static_cast<std::size_t>(i)])).to_double());
    }
    std::vector<std::pair<int, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull[hull.size() - 1];
            const double cross = (x2 - x1) * (p.second - y1) - (y2 - y1) * (p.first - x1);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<Complex> z;
    const double sigma = 0.7;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const int m = hull[h + 1].first - hull[h].first;
        const double radius = std::exp((hull[h].second - hull[h + 1].second) / m);
        for (int j = 0; j < m; ++j) {
            const double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) / m + static_cast<double>(hull[h + 1].first) / n) + sigma;
            z.emplace_back(Real(radius * std::cos(angle)), Real(radius * std::sin(angle)));
        }
    }
    return z;
}

bool lex_less(const Complex& a, const Complex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p, const PrecisionContext& ctx) {
    ctx.validate();
    const PrecisionScope scope(ctx.decimal_digits);
    if (p.degree() < 1) throw Error(ErrorKind::invalid_argument, "poly_roots needs degree >= 1");
    const auto& all = p.coeffs();
    for (const auto& c : all)
        if (!c.is_finite()) throw Error(ErrorKind::invalid_argument, "poly_roots: non-finite coefficient");

    std::vector<Complex> roots;
    std::size_t low = 0;
    while (all[low].is_zero()) {
        roots.emplace_back();
        ++low;
    }
    std::vector<Complex> c(all.begin() + static_cast<std::ptrdiff_t>(low), all.end());
    const int n = static_cast<int>(c.size()) - 1;

    if (n >= 1) {
        const Complex lead = c.back();
        for (auto& ci : c) ci /= lead;

        std::vector<Complex> z = initial_guesses(c);
        std::vector<bool> done(z.size(), false);
        const Real step_tol = ten_to_minus(ctx.decimal_digits);
        int iteration = 0;
        for (; iteration < ctx.max_root_iterations; ++iteration) {
            bool all_done = true;
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (done[i]) continue;
                const Evaluation e = evaluate_with_slope(c, z[i]);
                if (e.value.is_zero()) {
                    done[i] = true;
                    continue;
                }
                const Complex ratio = e.value / e.slope;
                Complex repulsion;
                for (std::size_t j = 0; j < z.size(); ++j)
                    if (j != i) repulsion += Complex(1) / (z[i] - z[j]);
                const Complex w = ratio / (Complex(1) - ratio * repulsion);
                z[i] -= w;
                if (abs(w) <= step_tol * abs(z[i]) || abs(e.value) <= step_tol * step_tol * e.magnitude) done[i] = true;
                else all_done = false;
            }
            if (all_done) break;
        }

        // Newton polish against the full (undeflated) polynomial.
        const Real backward_tol(ctx.root_tolerance);
        std::vector<Real> residuals;
        for (auto& root : z) {
            Real last_step;
            for (int k = 0; k < 8; ++k) {
                const Evaluation e = evaluate_with_slope(c, root);
                if (e.value.is_zero() || e.slope.is_zero()) break;
                const Complex step = e.value / e.slope;
                const Real size = abs(step);
                if (k > 0 && size >= last_step) break;
                root -= step;
                last_step = size;
                if (size <= step_tol * step_tol * abs(root)) break;
            }
            const Evaluation e = evaluate_with_slope(c, root);
            residuals.push_back(e.magnitude.is_zero() ? Real(0) : abs(e.value) / e.magnitude);
        }
        const bool converged = iteration < ctx.max_root_iterations;
        const bool accurate = std::all_of(residuals.begin(), residuals.end(), [&](const Real& r) { return r <= backward_tol; });
        if (!converged || !accurate) {
            std::ostringstream msg;
            msg << "polynomial roots did not converge after " << iteration << " iterations; relative residuals:";
            for (const auto& r : residuals) msg << ' ' << r.to_string(3);
            throw Error(ErrorKind::root_finding, msg.str());
        }

        if (p.has_real_coefficients()) {
            // Snap numerically real roots and make conjugate partners exact.
            const Real pair_tol = ctx.tolerance(10);
            std::vector<bool> paired(z.size(), false);
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (abs(z[i].im) <= pair_tol * abs(z[i])) {
                    z[i].im = Real(0);
                    paired[i] = true;
                }
            }
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (paired[i] || z[i].im < Real(0)) continue;
                std::size_t partner = z.size();
                Real best;
                for (std::size_t j = 0; j < z.size(); ++j) {
                    if (paired[j] || j == i || !(z[j].im < Real(0))) continue;
                    Real d = abs(z[j] - conj(z[i]));
                    if (partner == z.size() || d < best) {
                        partner = j;
                        best = std::move(d);
                    }
                }
                if (partner != z.size() && best <= pair_tol * abs(z[i])) {
                    z[partner] = conj(z[i]);
                    paired[i] = paired[partner] = true;
                }
            }
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }
    std::sort(roots.begin(), roots.end(), lex_less);
    return roots;
}

}  // namespace selfsim
