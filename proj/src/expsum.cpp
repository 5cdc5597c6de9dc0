#include "ptune/expsum.hpp"

#include <algorithm>
#include <cmath>

#include "ptune/error.hpp"

namespace ptune {

namespace {

constexpr double kBaseMergeRel = 1e-14;
constexpr double kCoefDropRel = 1e-13;
constexpr int kMaxBisect = 200;

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Terms in log-base form: sum_i c_i * exp(lb_i * x).
struct LogTerms {
    std::vector<double> c;
    std::vector<double> lb;

    double eval(double x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * std::exp(lb[i] * x);
        return s;
    }

    int sign_changes() const {
        int v = 0, last = 0;
        for (double ci : c) {
            const int s = sgn(ci);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }
};

template <class F>
double bisect(const F& g, double a, double b, double ga) {
    const int sa = sgn(ga);
    for (int it = 0; it < kMaxBisect; ++it) {
        const double m = a + (b - a) / 2.0;
        if (!(m > a && m < b)) break;
        const double gm = g(m);
        if (gm == 0.0) return m;
        if (sgn(gm) == sa)
            a = m;
        else
            b = m;
    }
    return a + (b - a) / 2.0;
}

void roots_rec(const LogTerms& t, double lo, double hi, std::vector<double>& out) {
    if (t.c.size() <= 1) return;
    const int v = t.sign_changes();
    if (v == 0) return;
    auto g = [&t](double x) { return t.eval(x); };
    if (v == 1) {
        const double glo = g(lo), ghi = g(hi);
        if (sgn(glo) * sgn(ghi) < 0) out.push_back(bisect(g, lo, hi, glo));
        return;
    }
    // Divide by the largest base; the derivative drops the constant term.
    const double lmax = *std::max_element(t.lb.begin(), t.lb.end());
    LogTerms norm, deriv;
    for (std::size_t i = 0; i < t.c.size(); ++i) {
        const double l = t.lb[i] - lmax;
        norm.c.push_back(t.c[i]);
        norm.lb.push_back(l);
        if (l < 0.0) {
            deriv.c.push_back(t.c[i] * l);
            deriv.lb.push_back(l);
        }
    }
    std::vector<double> crit;
    roots_rec(deriv, lo, hi, crit);
    std::vector<double> pts;
    pts.reserve(crit.size() + 2);
    pts.push_back(lo);
    for (double x : crit)
        if (x > pts.back() && x < hi) pts.push_back(x);
    pts.push_back(hi);
    auto gn = [&norm](double x) { return norm.eval(x); };
    std::vector<double> vals(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) vals[k] = gn(pts[k]);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (sgn(vals[k]) * sgn(vals[k + 1]) < 0) out.push_back(bisect(gn, pts[k], pts[k + 1], vals[k]));
        // A critical point that is itself a crossing.
        if (k + 2 < pts.size() && vals[k + 1] == 0.0) {
            const double left = gn(pts[k] + (pts[k + 1] - pts[k]) / 2.0);
            const double right = gn(pts[k + 1] + (pts[k + 2] - pts[k + 1]) / 2.0);
            if (sgn(left) * sgn(right) < 0) out.push_back(pts[k + 1]);
        }
    }
}

LogTerms to_log_terms(const ExpSum& f) {
    LogTerms t;
    for (const auto& term : f.terms()) {
        t.c.push_back(term.coef);
        t.lb.push_back(std::log(term.base));
    }
    return t;
}

} // namespace

ExpSum::ExpSum(std::vector<ExpTerm> terms) {
    double scale = 0.0;
    for (const auto& t : terms) {
        if (!(t.base > 0.0) || !std::isfinite(t.base) || !std::isfinite(t.coef))
            throw Error(ErrorCode::domain_error, "exponential sum needs finite coefficients and positive bases");
        scale = std::max(scale, std::abs(t.coef));
    }
    std::sort(terms.begin(), terms.end(), [](const ExpTerm& a, const ExpTerm& b) { return a.base < b.base; });
    std::vector<ExpTerm> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && t.base - merged.back().base <= kBaseMergeRel * merged.back().base)
            merged.back().coef += t.coef;
        else
            merged.push_back(t);
    }
    for (const auto& t : merged)
        if (std::abs(t.coef) > kCoefDropRel * scale) terms_.push_back(t);
}

double ExpSum::eval(double x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coef * std::pow(t.base, x);
    return s;
}

int ExpSum::sign_changes() const {
    int v = 0, last = 0;
    for (const auto& t : terms_) {
        const int s = sgn(t.coef);
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

RootSet find_roots(const ExpSum& f, double lo, double hi, double tol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw Error(ErrorCode::domain_error, "find_roots needs finite lo < hi");
    if (!(tol > 0.0)) throw Error(ErrorCode::domain_error, "tol must be positive");
    RootSet r;
    if (f.identically_zero()) {
        r.identically_zero = true;
        return r;
    }
    roots_rec(to_log_terms(f), lo, hi, r.roots);
    std::sort(r.roots.begin(), r.roots.end());
    // Brackets from neighbouring pieces can converge onto the same crossing.
    std::vector<double> uniq;
    for (double x : r.roots)
        if (uniq.empty() || x - uniq.back() > tol * 1e-3) uniq.push_back(x);
    r.roots = std::move(uniq);
    return r;
}

bool sign_definite_on(const ExpSum& f, double lo, double hi) {
    double low = 0.0, high = 0.0, mag = 0.0;
    for (const auto& t : f.terms()) {
        const double u = t.coef * std::pow(t.base, lo);
        const double v = t.coef * std::pow(t.base, hi);
        low += std::min(u, v);
        high += std::max(u, v);
        mag += std::max(std::abs(u), std::abs(v));
    }
    const double margin = 1e-14 * mag;
    return low > margin || high < -margin;
}

namespace {

constexpr int kSearchDepth = 8;

std::optional<double> search(const ExpSum& f, double a, double b, int depth, bool first) {
    if (sign_definite_on(f, a, b)) return std::nullopt;
    if (depth == kSearchDepth) {
        RootSet r = find_roots(f, a, b);
        if (r.roots.empty()) return std::nullopt;
        return first ? r.roots.front() : r.roots.back();
    }
    const double m = a + (b - a) / 2.0;
    if (first) {
        if (auto x = search(f, a, m, depth + 1, true)) return x;
        return search(f, m, b, depth + 1, true);
    }
    if (auto x = search(f, m, b, depth + 1, false)) return x;
    return search(f, a, m, depth + 1, false);
}

std::optional<double> extreme_root(const ExpSum& f, double lo, double hi, bool first) {
    if (!(lo < hi) || f.size() <= 1) return std::nullopt;
    const int v = f.sign_changes();
    if (v == 0) return std::nullopt;
    if (v == 1) {
        const double flo = f.eval(lo), fhi = f.eval(hi);
        if (sgn(flo) * sgn(fhi) >= 0) return std::nullopt;
        return bisect([&f](double x) { return f.eval(x); }, lo, hi, flo);
    }
    return search(f, lo, hi, 0, first);
}

} // namespace

std::optional<double> first_root(const ExpSum& f, double lo, double hi) { return extreme_root(f, lo, hi, true); }

std::optional<double> last_root(const ExpSum& f, double lo, double hi) { return extreme_root(f, lo, hi, false); }

} // namespace ptune
