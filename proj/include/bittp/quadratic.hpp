#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bittp {

using Var = std::uint32_t;

struct LinearTerm {
    Var var;
    double coef;
};

/// Product term with `i < j`.
struct QuadraticTerm {
    Var i;
    Var j;
    double coef;
};

/// Sparse quadratic polynomial over binary variables.
///
/// Terms may be added in any order; `canonicalize` merges duplicates, drops
/// zeros and sorts. Self products fold into the linear part (x*x = x).
class QuadraticForm {
public:
    void add_linear(Var v, double coef);
    void add_quadratic(Var i, Var j, double coef);
    void add_offset(double c) { offset_ += c; }
    void add(const QuadraticForm& other, double scale = 1.0);
    void scale(double factor);

    void canonicalize();

    std::span<const LinearTerm> linear() const noexcept { return linear_; }
    std::span<const QuadraticTerm> quadratic() const noexcept { return quadratic_; }
    double offset() const noexcept { return offset_; }

    bool empty() const noexcept { return linear_.empty() && quadratic_.empty(); }
    bool is_linear() const noexcept { return quadratic_.empty(); }
    /// One past the largest referenced variable index, 0 when there are no terms.
    std::size_t var_bound() const noexcept;
    /// Largest absolute coefficient over linear and quadratic terms (offset excluded).
    double max_abs_coef() const noexcept;
    /// Number of distinct variables appearing in any term.
    std::size_t num_distinct_vars() const;
    /// True when every coefficient and the offset are integers within `tol`.
    bool has_integral_coefs(double tol = 1e-9) const noexcept;
    /// Smallest and largest value over all binary assignments, bounded termwise.
    double lower_bound() const noexcept;
    double upper_bound() const noexcept;

    double evaluate(std::span<const std::uint8_t> x) const;

private:
    std::vector<LinearTerm> linear_;
    std::vector<QuadraticTerm> quadratic_;
    double offset_ = 0.0;
};

} // namespace bittp
