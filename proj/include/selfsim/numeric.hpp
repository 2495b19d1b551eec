#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "selfsim/complex.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/real.hpp"

namespace selfsim {

/// Working precision of a computation. Passed explicitly; entry points open a
/// PrecisionScope with it so that every intermediate Real uses these digits.
struct PrecisionContext {
    int decimal_digits = 60;
    /// Backward-error bound for polynomial roots, |p(z)| <= tol * sum |c_i||z|^i.
    double root_tolerance = 1e-50;
    int max_root_iterations = 1000;

    static PrecisionContext with_digits(int digits);

    /// Throws Error(invalid_argument) unless digits >= 15 and tolerance > 0.
    void validate() const;

    /// 10^-(decimal_digits - loss), as a Real at the current working precision.
    Real tolerance(int loss) const { return ten_to_minus(decimal_digits - loss); }
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Copy with row `skip` removed.
    ComplexMatrix without_row(std::size_t skip) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Gaussian elimination with partial pivoting. Throws Error(singular_matrix)
/// when a pivot falls below 10^-(digits-3) of its row scale.
std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b, const PrecisionContext& ctx);

/// LU determinant with the pivot sign tracked; an exactly singular matrix gives 0.
Complex determinant(ComplexMatrix a);

/// Dense polynomial, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool has_real_coefficients() const;

    Complex operator()(const Complex& z) const;
    Polynomial derivative() const;

private:
    std::vector<Complex> coeffs_;
};

/// All roots, with multiplicity, ordered by (real part, imaginary part).
/// Throws Error(root_finding) if the iteration budget is exhausted.
std::vector<Complex> poly_roots(const Polynomial& p, const PrecisionContext& ctx);

}  // namespace selfsim
