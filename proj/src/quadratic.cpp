#include "bittp/quadratic.hpp"

#include <algorithm>
#include <cmath>

#include "bittp/error.hpp"

namespace bittp {

void QuadraticForm::add_linear(Var v, double coef) {
    linear_.push_back({v, coef});
}

void QuadraticForm::add_quadratic(Var i, Var j, double coef) {
    if (i == j) {
        linear_.push_back({i, coef});
        return;
    }
    if (i > j) {
        std::swap(i, j);
    }
    quadratic_.push_back({i, j, coef});
}

void QuadraticForm::add(const QuadraticForm& other, double scale) {
    for (const auto& t : other.linear_) {
        linear_.push_back({t.var, t.coef * scale});
    }
    for (const auto& t : other.quadratic_) {
        quadratic_.push_back({t.i, t.j, t.coef * scale});
    }
    offset_ += other.offset_ * scale;
}

void QuadraticForm::scale(double factor) {
    for (auto& t : linear_) {
        t.coef *= factor;
    }
    for (auto& t : quadratic_) {
        t.coef *= factor;
    }
    offset_ *= factor;
}

void QuadraticForm::canonicalize() {
    std::sort(linear_.begin(), linear_.end(), [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
    std::vector<LinearTerm> lin;
    lin.reserve(linear_.size());
    for (const auto& t : linear_) {
        if (!lin.empty() && lin.back().var == t.var) {
            lin.back().coef += t.coef;
        } else {
            lin.push_back(t);
        }
    }
    std::erase_if(lin, [](const LinearTerm& t) { return t.coef == 0.0; });
    linear_ = std::move(lin);

    std::sort(quadratic_.begin(), quadratic_.end(), [](const QuadraticTerm& a, const QuadraticTerm& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    std::vector<QuadraticTerm> quad;
    quad.reserve(quadratic_.size());
    for (const auto& t : quadratic_) {
        if (!quad.empty() && quad.back().i == t.i && quad.back().j == t.j) {
            quad.back().coef += t.coef;
        } else {
            quad.push_back(t);
        }
    }
    std::erase_if(quad, [](const QuadraticTerm& t) { return t.coef == 0.0; });
    quadratic_ = std::move(quad);
}

std::size_t QuadraticForm::var_bound() const noexcept {
    std::size_t bound = 0;
    for (const auto& t : linear_) {
        bound = std::max<std::size_t>(bound, t.var + 1);
    }
    for (const auto& t : quadratic_) {
        bound = std::max<std::size_t>(bound, std::max(t.i, t.j) + 1);
    }
    return bound;
}

double QuadraticForm::max_abs_coef() const noexcept {
    double m = 0.0;
    for (const auto& t : linear_) {
        m = std::max(m, std::abs(t.coef));
    }
    for (const auto& t : quadratic_) {
        m = std::max(m, std::abs(t.coef));
    }
    return m;
}

std::size_t QuadraticForm::num_distinct_vars() const {
    std::vector<Var> vars;
    for (const auto& t : linear_) {
        vars.push_back(t.var);
    }
    for (const auto& t : quadratic_) {
        vars.push_back(t.i);
        vars.push_back(t.j);
    }
    std::sort(vars.begin(), vars.end());
    return static_cast<std::size_t>(std::unique(vars.begin(), vars.end()) - vars.begin());
}

bool QuadraticForm::has_integral_coefs(double tol) const noexcept {
    auto integral = [tol](double c) { return std::abs(c - std::round(c)) <= tol * std::max(1.0, std::abs(c)); };
    if (!integral(offset_)) {
        return false;
    }
    for (const auto& t : linear_) {
        if (!integral(t.coef)) {
            return false;
        }
    }
    for (const auto& t : quadratic_) {
        if (!integral(t.coef)) {
            return false;
        }
    }
    return true;
}

double QuadraticForm::lower_bound() const noexcept {
    double v = offset_;
    for (const auto& t : linear_) {
        v += std::min(0.0, t.coef);
    }
    for (const auto& t : quadratic_) {
        v += std::min(0.0, t.coef);
    }
    return v;
}

double QuadraticForm::upper_bound() const noexcept {
    double v = offset_;
    for (const auto& t : linear_) {
        v += std::max(0.0, t.coef);
    }
    for (const auto& t : quadratic_) {
        v += std::max(0.0, t.coef);
    }
    return v;
}

double QuadraticForm::evaluate(std::span<const std::uint8_t> x) const {
    double v = offset_;
    for (const auto& t : linear_) {
        if (t.var >= x.size()) {
            throw InvalidArgument("assignment shorter than the variables referenced");
        }
        if (x[t.var]) {
            v += t.coef;
        }
    }
    for (const auto& t : quadratic_) {
        if (t.j >= x.size()) {
            throw InvalidArgument("assignment shorter than the variables referenced");
        }
        if (x[t.i] && x[t.j]) {
            v += t.coef;
        }
    }
    return v;
}

} // namespace bittp
