#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sw {

enum class ProfileKind { water_wave, tabulated };

// The speed law h on an interval J = (y_lo, y_hi].  The water-wave kind is
// the closed form h(Y) = sqrt(lambda - 2 g Y) on (0, lambda/2g]; tabulated
// profiles use a monotone C1 (Fritsch-Carlson) interpolant so that spurious
// oscillation cannot fake a hypothesis failure.
class Profile {
public:
    static Profile water_wave(double g, double lambda);
    static Profile tabulated(std::vector<double> knots, std::vector<double> values);
    static Profile from_table_file(const std::string& path);

    ProfileKind kind() const { return kind_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }

    double gravity() const;
    double lambda() const;
    Profile with_lambda(double lambda) const;  // water-wave only

    // h on (y_lo, y_hi]; h' and log h on the open interior.
    double h(double Y) const;
    double h_prime(double Y) const;
    double log_h(double Y) const;

    struct Values {
        double h;
        double h_prime;
        double log_h;
    };
    Values eval(double Y) const;

    // true when h(y_hi) vanishes, i.e. the profile has a stagnation endpoint d.
    bool has_zero_endpoint(double tol = 1e-10) const;

private:
    Profile() = default;
    double h_raw(double Y) const;
    double h_prime_raw(double Y) const;
    std::size_t segment(double Y) const;

    ProfileKind kind_ = ProfileKind::water_wave;
    double y_lo_ = 0.0, y_hi_ = 0.0;
    double g_ = 0.0, lambda_ = 0.0;
    std::vector<double> knots_, values_, slopes_;
};

struct HypothesisReport {
    bool clause_a_pass;     // h(d) = 0 and h > 0 on the interior
    double endpoint_value;  // h(y_hi)
    bool clause_b_pass;     // finite, continuous C1 sampling
    bool clause_c_pass;     // strictly decreasing and log-concave
    double strict_decrease_margin;  // inf of -h' over the sample grid
    double log_concavity_margin;    // sup of (log h)'' over the sample grid
    bool overall;
    std::size_t sample_count;

    std::string failed_clauses() const;  // e.g. "ac"
};

// Audits the profile on a Chebyshev-distributed sample of the interior of J
// (clustered near both endpoints); concavity via second differences of log h
// with step shrunk near the endpoints.
HypothesisReport check_hypotheses(const Profile& profile, std::size_t sample_count);

}  // namespace sw
