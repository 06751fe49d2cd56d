#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stripwave/profile.hpp"
#include "stripwave/solver.hpp"
#include "stripwave/strip_harmonic.hpp"
#include "stripwave/verifier.hpp"

namespace sw {

// Exit-status contract of the front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitNoSolve = 2,   // solver non-convergence / unattainable computation
    kExitCertFail = 3,  // solved or verified, but a certificate clause is false
    kExitBadInput = 4,  // I/O or parse error
};

struct ProfileSpec {
    ProfileKind kind = ProfileKind::water_wave;
    double g = 0.0;
    double lambda = 0.0;
    std::string table_path;

    Profile make() const;
    std::string to_string() const;
    // "water-wave:g=<v>,lambda=<v>" or "tabulated:<path>"
    static ProfileSpec parse(const std::string& text);
};

struct RunSpec {
    enum class Command { solve, verify, profile_check, kernel_eval };

    Command command = Command::solve;
    ProfileSpec profile;
    double C = 0.0;
    double P = 0.0;

    // numerics
    std::size_t N = 128;
    double amplitude = 0.0;
    int steps = 1;
    Branch branch = Branch::upper;
    double newton_tol = 1e-10;
    int max_newton = 25;
    double stagnation_tol = 1e-6;
    std::size_t grid_nx = 64;
    std::size_t grid_ny = 32;

    // kernel-eval
    Parity kernel_parity = Parity::even;
    int kernel_mode = 1;
    std::size_t kernel_N = 512;
    std::size_t kernel_nx = 32;
    std::size_t kernel_ny = 17;
    double kernel_ymin = 0.0;
    double kernel_ymax = 0.0;  // 0 means 0.9 C

    std::string out_dir;

    // Strict "key = value" INI: '#' comments, fixed sections, unknown keys
    // and unknown sections are errors.
    static RunSpec parse_config(const std::string& text, Command command);
    std::string serialize() const;
};

struct RunResult {
    int exit_code = kExitOk;
    std::vector<std::string> files;
    std::string message;
};

// solve / kernel-eval orchestration; out_override (when nonempty) wins over
// the [output] section.
RunResult run(const RunSpec& spec, const std::string& out_override = "");

RunResult run_verify(const std::string& curve_csv, const std::string& profile_spec,
                     double half_width, const std::string& out_dir,
                     double stagnation_tol = 1e-6);

RunResult run_profile_check(const std::string& profile_spec,
                            const std::string& out_path, std::string* json_out);

// ---- artifacts ------------------------------------------------------------

// Minimal deterministic JSON emitter: insertion-ordered keys, all numbers
// printed with 17 significant digits.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, double value);
    JsonWriter& field(const std::string& key, int value);
    JsonWriter& field(const std::string& key, std::size_t value);
    JsonWriter& field(const std::string& key, bool value);
    JsonWriter& field(const std::string& key, const std::string& value);
    JsonWriter& null_field(const std::string& key);
    JsonWriter& field(const std::string& key, const std::optional<double>& value);
    JsonWriter& element(double value);
    std::string str() const { return out_; }

private:
    void item_prefix();
    void key_prefix(const std::string& key);
    std::string out_;
    std::vector<bool> first_;  // per nesting level
};

std::string format_double(double v);  // %.17g

void write_solution_csv(const std::string& path, const Solution& solution);
void write_solution_sidecar(const std::string& path, const Solution& solution);
void write_report_json(const std::string& path, const DiagnosticsReport& report);
std::string report_json(const DiagnosticsReport& report);
std::string hypothesis_report_json(const HypothesisReport& report);

// "t,u,v" with optional fourth column "theta"; one header line.
FreeCurve read_curve_csv(const std::string& path);

}  // namespace sw
