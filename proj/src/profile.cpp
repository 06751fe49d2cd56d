#include "stripwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "stripwave/errors.hpp"

namespace sw {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

Profile Profile::water_wave(double g, double lambda) {
    if (!(g > 0.0) || !(lambda > 0.0))
        throw InvalidError("water-wave profile requires g > 0 and lambda > 0");
    Profile p;
    p.kind_ = ProfileKind::water_wave;
    p.g_ = g;
    p.lambda_ = lambda;
    p.y_lo_ = 0.0;
    p.y_hi_ = lambda / (2.0 * g);
    return p;
}

Profile Profile::tabulated(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size())
        throw InvalidError("tabulated profile: knot/value count mismatch");
    if (knots.size() < 4)
        throw InvalidError("tabulated profile needs at least 4 knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i] < knots[i + 1]))
            throw InvalidError("tabulated profile knots must be strictly increasing");
    if (knots.front() < 0.0)
        throw InvalidError("tabulated profile requires y_lo >= 0");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidError("tabulated profile values must be finite and >= 0");

    Profile p;
    p.kind_ = ProfileKind::tabulated;
    p.y_lo_ = knots.front();
    p.y_hi_ = knots.back();
    p.knots_ = std::move(knots);
    p.values_ = std::move(values);

    // Fritsch-Carlson monotone cubic Hermite slopes
    const std::size_t n = p.knots_.size();
    std::vector<double> dx(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dx[i] = p.knots_[i + 1] - p.knots_[i];
        d[i] = (p.values_[i + 1] - p.values_[i]) / dx[i];
    }
    p.slopes_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            p.slopes_[i] = 0.0;
        } else {
            const double w1 = 2.0 * dx[i] + dx[i - 1];
            const double w2 = dx[i] + 2.0 * dx[i - 1];
            p.slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto end_slope = [](double dx0, double dx1, double d0, double d1) {
        double m = ((2.0 * dx0 + dx1) * d0 - dx0 * d1) / (dx0 + dx1);
        if (m * d0 <= 0.0) m = 0.0;
        else if (std::abs(m) > 3.0 * std::abs(d0)) m = 3.0 * d0;
        return m;
    };
    p.slopes_[0] = end_slope(dx[0], dx[1], d[0], d[1]);
    p.slopes_[n - 1] = end_slope(dx[n - 2], dx[n - 3], d[n - 2], d[n - 3]);
    return p;
}

Profile Profile::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile table '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty profile table '" + path + "'", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "Y,h")
        throw ParseError("profile table '" + path + "': expected header \"Y,h\"", 1);

    std::vector<double> ys, hs;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw ParseError("profile table '" + path + "': malformed row", lineno);
        try {
            std::size_t pa = 0, pb = 0;
            double y = std::stod(a, &pa);
            double h = std::stod(b, &pb);
            ys.push_back(y);
            hs.push_back(h);
        } catch (const std::exception&) {
            throw ParseError("profile table '" + path + "': malformed number", lineno);
        }
    }
    return tabulated(std::move(ys), std::move(hs));
}

double Profile::gravity() const {
    if (kind_ != ProfileKind::water_wave)
        throw InvalidError("gravity is defined for the water-wave kind only");
    return g_;
}

double Profile::lambda() const {
    if (kind_ != ProfileKind::water_wave)
        throw InvalidError("lambda is defined for the water-wave kind only");
    return lambda_;
}

Profile Profile::with_lambda(double lambda) const {
    if (kind_ != ProfileKind::water_wave)
        throw InvalidError("with_lambda applies to the water-wave kind only");
    return water_wave(g_, lambda);
}

std::size_t Profile::segment(double Y) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), Y);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    if (i == 0) i = 1;
    if (i >= knots_.size()) i = knots_.size() - 1;
    return i - 1;
}

double Profile::h_raw(double Y) const {
    if (kind_ == ProfileKind::water_wave) {
        const double arg = lambda_ - 2.0 * g_ * Y;
        return arg <= 0.0 ? 0.0 : std::sqrt(arg);
    }
    const std::size_t i = segment(Y);
    const double dx = knots_[i + 1] - knots_[i];
    const double s = (Y - knots_[i]) / dx;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * values_[i] + h10 * dx * slopes_[i] + h01 * values_[i + 1] +
           h11 * dx * slopes_[i + 1];
}

double Profile::h_prime_raw(double Y) const {
    if (kind_ == ProfileKind::water_wave) {
        const double hv = h_raw(Y);
        if (hv <= 0.0)
            throw SingularValueError("h' unbounded where h vanishes (Y = " +
                                     std::to_string(Y) + ")");
        return -g_ / hv;
    }
    const std::size_t i = segment(Y);
    const double dx = knots_[i + 1] - knots_[i];
    const double s = (Y - knots_[i]) / dx;
    const double g00 = 6.0 * s * (s - 1.0) / dx;
    const double g10 = (1.0 - s) * (1.0 - 3.0 * s);
    const double g01 = -g00;
    const double g11 = s * (3.0 * s - 2.0);
    return g00 * values_[i] + g10 * slopes_[i] + g01 * values_[i + 1] +
           g11 * slopes_[i + 1];
}

double Profile::h(double Y) const {
    if (!(Y > y_lo_) || !(Y <= y_hi_))
        throw DomainError("Y = " + std::to_string(Y) + " outside J = (" +
                          std::to_string(y_lo_) + ", " + std::to_string(y_hi_) + "]");
    return h_raw(Y);
}

double Profile::h_prime(double Y) const {
    if (!(Y > y_lo_) || !(Y < y_hi_))
        throw DomainError("h' requires Y in the interior of J");
    return h_prime_raw(Y);
}

double Profile::log_h(double Y) const {
    const double hv = h(Y);
    if (hv <= 0.0)
        throw SingularValueError("log h undefined where h = 0 (Y = " +
                                 std::to_string(Y) + ")");
    return std::log(hv);
}

Profile::Values Profile::eval(double Y) const {
    if (!(Y > y_lo_) || !(Y < y_hi_))
        throw DomainError("eval requires Y in the interior of J");
    const double hv = h_raw(Y);
    if (hv <= 0.0)
        throw SingularValueError("log h undefined where h = 0 (Y = " +
                                 std::to_string(Y) + ")");
    return {hv, h_prime_raw(Y), std::log(hv)};
}

bool Profile::has_zero_endpoint(double tol) const {
    const double scale = std::max(1.0, h_raw(0.5 * (y_lo_ + y_hi_)));
    return std::abs(h_raw(y_hi_)) <= tol * scale;
}

std::string HypothesisReport::failed_clauses() const {
    std::string s;
    if (!clause_a_pass) s += 'a';
    if (!clause_b_pass) s += 'b';
    if (!clause_c_pass) s += 'c';
    return s;
}

HypothesisReport check_hypotheses(const Profile& profile, std::size_t sample_count) {
    if (sample_count < 64)
        throw InvalidError("check_hypotheses requires sample_count >= 64");

    const double lo = profile.y_lo(), hi = profile.y_hi();
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);

    HypothesisReport rep{};
    rep.sample_count = sample_count;

    // clause (a): h(d) = 0 at the right endpoint, h > 0 inside
    rep.endpoint_value = profile.h(hi);
    bool positive_inside = true;

    // Chebyshev nodes cluster at both ends of J, in particular near d where
    // h -> 0 and the margins are tightest.
    std::vector<double> nodes(sample_count);
    for (std::size_t j = 0; j < sample_count; ++j) {
        const double ang = kPi * (2.0 * static_cast<double>(j) + 1.0) /
                           (2.0 * static_cast<double>(sample_count));
        nodes[j] = mid + half * std::cos(ang);
    }

    bool finite_ok = true;
    double inf_neg_hp = std::numeric_limits<double>::infinity();
    double sup_d2logh = -std::numeric_limits<double>::infinity();

    for (double y : nodes) {
        double hv = 0.0, hp = 0.0;
        try {
            hv = profile.h(y);
            hp = profile.h_prime(y);
        } catch (const Error&) {
            finite_ok = false;
            continue;
        }
        if (!(hv > 0.0)) {
            positive_inside = false;
            continue;
        }
        if (!std::isfinite(hv) || !std::isfinite(hp)) finite_ok = false;
        inf_neg_hp = std::min(inf_neg_hp, -hp);

        // second difference of log h, step shrunk near both endpoints
        const double gap = std::min(y - lo, hi - y);
        const double step = std::min(1e-4 * (hi - lo), 0.25 * gap);
        if (step <= 0.0) continue;
        try {
            const double l0 = profile.log_h(y - step);
            const double l1 = profile.log_h(y);
            const double l2 = profile.log_h(y + step);
            const double d2 = (l0 - 2.0 * l1 + l2) / (step * step);
            if (std::isfinite(d2)) sup_d2logh = std::max(sup_d2logh, d2);
        } catch (const Error&) {
            // h hit zero inside the stencil; skip the node, clause (a) sees it
        }
    }

    const double scale = std::max(1.0, profile.h(mid));
    rep.clause_a_pass = std::abs(rep.endpoint_value) <= 1e-10 * scale && positive_inside;
    rep.clause_b_pass = finite_ok;
    rep.strict_decrease_margin = inf_neg_hp;
    rep.log_concavity_margin = sup_d2logh;
    // the degenerate (linear log h) boundary case counts as concave
    rep.clause_c_pass = inf_neg_hp > 0.0 && sup_d2logh <= 1e-8;
    rep.overall = rep.clause_a_pass && rep.clause_b_pass && rep.clause_c_pass;
    return rep;
}

}  // namespace sw
