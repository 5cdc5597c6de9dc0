#pragma once

#include <optional>
#include <vector>

namespace ptune {

struct ExpTerm {
    double coef;
    double base;
};

// f(x) = sum_i coef_i * base_i^x with positive bases.
//
// Construction normalizes: terms are sorted by base, equal bases combined and
// cancelled coefficients dropped. An empty term list means f is identically zero.
class ExpSum {
public:
    ExpSum() = default;
    explicit ExpSum(std::vector<ExpTerm> terms);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool identically_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    double eval(double x) const;
    // Sign changes of the coefficient sequence ordered by base; bounds the real root count.
    int sign_changes() const;

private:
    std::vector<ExpTerm> terms_;
};

struct RootSet {
    bool identically_zero = false;
    std::vector<double> roots; // sorted, sign-change roots in the open interval
};

// All sign-change roots of f in (lo, hi). Roots are located by recursive Rolle
// descent (the derivative of f / base_max^x has one term fewer) and refined by
// bisection down to machine precision; tol only bounds the accepted bracket width.
RootSet find_roots(const ExpSum& f, double lo, double hi, double tol = 1e-10);

// Smallest (largest) sign-change root in (lo, hi). Uses interval bounds to skip
// root-free windows before falling back to find_roots.
std::optional<double> first_root(const ExpSum& f, double lo, double hi);
std::optional<double> last_root(const ExpSum& f, double lo, double hi);

// True when f provably keeps one strict sign on [lo, hi].
bool sign_definite_on(const ExpSum& f, double lo, double hi);

} // namespace ptune
