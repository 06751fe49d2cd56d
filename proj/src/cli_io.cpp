#include "stripwave/cli_io.hpp"

#include <sys/stat.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "stripwave/errors.hpp"

namespace sw {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw ParseError("line " + std::to_string(line) + ": malformed number '" +
                                 value + "' for key '" + key + "'",
                             line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": malformed number '" +
                             value + "' for key '" + key + "'",
                         line);
    }
}

long parse_integer(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size())
            throw ParseError("line " + std::to_string(line) + ": malformed integer '" +
                                 value + "' for key '" + key + "'",
                             line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": malformed integer '" +
                             value + "' for key '" + key + "'",
                         line);
    }
}

struct Entry {
    std::string value;
    int line;
};
using Section = std::map<std::string, Entry>;

bool file_exists(const std::string& path) {
    struct stat st {};
    return ::stat(path.c_str(), &st) == 0;
}

void make_dir(const std::string& path) {
    if (path.empty()) throw IoError("output directory not specified");
    if (file_exists(path)) return;
    if (::mkdir(path.c_str(), 0755) != 0)
        throw IoError("cannot create output directory '" + path + "'");
}

}  // namespace

Profile ProfileSpec::make() const {
    if (kind == ProfileKind::water_wave) return Profile::water_wave(g, lambda);
    return Profile::from_table_file(table_path);
}

std::string ProfileSpec::to_string() const {
    if (kind == ProfileKind::water_wave)
        return "water-wave:g=" + format_double(g) + ",lambda=" + format_double(lambda);
    return "tabulated:" + table_path;
}

ProfileSpec ProfileSpec::parse(const std::string& text) {
    ProfileSpec spec;
    const std::size_t colon = text.find(':');
    const std::string head = colon == std::string::npos ? text : text.substr(0, colon);

    if (head == "tabulated") {
        if (colon == std::string::npos || colon + 1 >= text.size())
            throw ParseError("profile spec 'tabulated:' needs a table path");
        spec.kind = ProfileKind::tabulated;
        spec.table_path = text.substr(colon + 1);
        return spec;
    }
    if (head != "water-wave")
        throw ParseError("unknown profile kind '" + head +
                         "' (expected water-wave or tabulated)");

    spec.kind = ProfileKind::water_wave;
    bool have_g = false, have_l = false;
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::istringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("malformed profile parameter '" + item + "'");
        const std::string k = trim(item.substr(0, eq));
        const std::string v = trim(item.substr(eq + 1));
        if (k == "g") {
            spec.g = parse_number(v, "g", 0);
            have_g = true;
        } else if (k == "lambda") {
            spec.lambda = parse_number(v, "lambda", 0);
            have_l = true;
        } else {
            throw ParseError("unknown profile parameter '" + k + "'");
        }
    }
    if (!have_g || !have_l)
        throw ParseError("water-wave profile spec needs g=<v>,lambda=<v>");
    return spec;
}

RunSpec RunSpec::parse_config(const std::string& text, Command command) {
    std::map<std::string, Section> sections;
    {
        std::istringstream in(text);
        std::string line, current;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ParseError("line " + std::to_string(lineno) +
                                         ": malformed section header",
                                     lineno);
                current = trim(line.substr(1, line.size() - 2));
                if (current != "profile" && current != "domain" &&
                    current != "numerics" && current != "output" && current != "kernel")
                    throw ParseError("line " + std::to_string(lineno) +
                                         ": unknown section '" + current + "'",
                                     lineno);
                sections[current];
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("line " + std::to_string(lineno) +
                                     ": expected 'key = value'",
                                 lineno);
            if (current.empty())
                throw ParseError("line " + std::to_string(lineno) +
                                     ": key outside any section",
                                 lineno);
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (sections[current].count(key))
                throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" +
                                     key + "' in [" + current + "]",
                                 lineno);
            sections[current][key] = {value, lineno};
        }
    }

    RunSpec spec;
    spec.command = command;

    auto take = [&](const std::string& sec, const std::string& key) -> const Entry* {
        auto s = sections.find(sec);
        if (s == sections.end()) return nullptr;
        auto it = s->second.find(key);
        if (it == s->second.end()) return nullptr;
        return &it->second;
    };
    auto require = [&](const std::string& sec, const std::string& key) -> const Entry& {
        if (!sections.count(sec)) throw ParseError("missing section " + sec);
        const Entry* e = take(sec, key);
        if (!e) throw ParseError("missing key '" + key + "' in section [" + sec + "]");
        return *e;
    };

    // track consumed keys so typos fail closed
    std::map<std::string, std::vector<std::string>> allowed;
    allowed["output"] = {"dir"};

    const bool needs_profile = command != Command::kernel_eval;
    if (needs_profile) {
        allowed["profile"] = {"kind", "g", "lambda", "table"};
        const Entry& kind = require("profile", "kind");
        if (kind.value == "water-wave") {
            spec.profile.kind = ProfileKind::water_wave;
            spec.profile.g = parse_number(require("profile", "g").value, "g",
                                          require("profile", "g").line);
            spec.profile.lambda = parse_number(require("profile", "lambda").value,
                                               "lambda",
                                               require("profile", "lambda").line);
        } else if (kind.value == "tabulated") {
            spec.profile.kind = ProfileKind::tabulated;
            spec.profile.table_path = require("profile", "table").value;
            if (!file_exists(spec.profile.table_path))
                throw ParseError("profile table '" + spec.profile.table_path +
                                 "' does not exist");
        } else {
            throw ParseError("line " + std::to_string(kind.line) +
                                 ": invalid profile kind '" + kind.value + "'",
                             kind.line);
        }
    }

    allowed["domain"] = {"C", "P"};
    spec.C = parse_number(require("domain", "C").value, "C", require("domain", "C").line);
    spec.P = parse_number(require("domain", "P").value, "P", require("domain", "P").line);
    if (!(spec.C > 0.0) || !(spec.P > 0.0))
        throw ParseError("domain requires C > 0 and P > 0");

    if (command == Command::solve) {
        allowed["numerics"] = {"N",          "amplitude", "steps",
                               "branch",     "newton_tol", "max_newton",
                               "stagnation_tol", "grid_nx",  "grid_ny"};
        spec.N = static_cast<std::size_t>(
            parse_integer(require("numerics", "N").value, "N",
                          require("numerics", "N").line));
        spec.amplitude = parse_number(require("numerics", "amplitude").value,
                                      "amplitude",
                                      require("numerics", "amplitude").line);
        if (const Entry* e = take("numerics", "steps"))
            spec.steps = static_cast<int>(parse_integer(e->value, "steps", e->line));
        if (const Entry* e = take("numerics", "branch")) {
            if (e->value == "lower")
                spec.branch = Branch::lower;
            else if (e->value == "upper")
                spec.branch = Branch::upper;
            else
                throw ParseError("line " + std::to_string(e->line) +
                                     ": invalid branch '" + e->value +
                                     "' (lower|upper)",
                                 e->line);
        }
        if (const Entry* e = take("numerics", "newton_tol"))
            spec.newton_tol = parse_number(e->value, "newton_tol", e->line);
        if (const Entry* e = take("numerics", "max_newton"))
            spec.max_newton =
                static_cast<int>(parse_integer(e->value, "max_newton", e->line));
        if (const Entry* e = take("numerics", "stagnation_tol"))
            spec.stagnation_tol = parse_number(e->value, "stagnation_tol", e->line);
        if (const Entry* e = take("numerics", "grid_nx"))
            spec.grid_nx =
                static_cast<std::size_t>(parse_integer(e->value, "grid_nx", e->line));
        if (const Entry* e = take("numerics", "grid_ny"))
            spec.grid_ny =
                static_cast<std::size_t>(parse_integer(e->value, "grid_ny", e->line));

        if (spec.N < 64 || (spec.N & (spec.N - 1)) != 0)
            throw ParseError("N must be a power of two with N >= 64");
        if (spec.amplitude < 0.0) throw ParseError("amplitude must be >= 0");
        if (spec.steps < 1) throw ParseError("steps must be >= 1");
        if (!(spec.newton_tol > 0.0) || !(spec.stagnation_tol > 0.0))
            throw ParseError("tolerances must be positive");
    }

    if (command == Command::kernel_eval) {
        allowed["kernel"] = {"parity", "mode_k", "N", "nx", "ny", "ymin", "ymax"};
        const Entry& par = require("kernel", "parity");
        if (par.value == "even")
            spec.kernel_parity = Parity::even;
        else if (par.value == "odd")
            spec.kernel_parity = Parity::odd;
        else
            throw ParseError("line " + std::to_string(par.line) +
                                 ": invalid parity '" + par.value + "' (even|odd)",
                             par.line);
        spec.kernel_mode = static_cast<int>(
            parse_integer(require("kernel", "mode_k").value, "mode_k",
                          require("kernel", "mode_k").line));
        if (const Entry* e = take("kernel", "N"))
            spec.kernel_N = static_cast<std::size_t>(parse_integer(e->value, "N", e->line));
        if (const Entry* e = take("kernel", "nx"))
            spec.kernel_nx = static_cast<std::size_t>(parse_integer(e->value, "nx", e->line));
        if (const Entry* e = take("kernel", "ny"))
            spec.kernel_ny = static_cast<std::size_t>(parse_integer(e->value, "ny", e->line));
        if (const Entry* e = take("kernel", "ymin"))
            spec.kernel_ymin = parse_number(e->value, "ymin", e->line);
        if (const Entry* e = take("kernel", "ymax"))
            spec.kernel_ymax = parse_number(e->value, "ymax", e->line);
        if (spec.kernel_mode < 0) throw ParseError("mode_k must be >= 0");
        if (spec.kernel_N < 64 || (spec.kernel_N & (spec.kernel_N - 1)) != 0)
            throw ParseError("kernel N must be a power of two with N >= 64");
    }

    if (const Entry* e = take("output", "dir")) spec.out_dir = e->value;

    // fail closed on unknown keys and stray sections
    for (const auto& [sec, entries] : sections) {
        auto it = allowed.find(sec);
        if (it == allowed.end())
            throw ParseError("section [" + sec + "] not used by this command");
        for (const auto& [key, entry] : entries) {
            bool ok = false;
            for (const std::string& k : it->second) ok |= (k == key);
            if (!ok)
                throw ParseError("line " + std::to_string(entry.line) +
                                     ": unknown key '" + key + "' in [" + sec + "]",
                                 entry.line);
        }
    }
    return spec;
}

std::string RunSpec::serialize() const {
    std::string s;
    if (command != Command::kernel_eval) {
        s += "[profile]\n";
        if (profile.kind == ProfileKind::water_wave) {
            s += "kind = water-wave\n";
            s += "g = " + format_double(profile.g) + "\n";
            s += "lambda = " + format_double(profile.lambda) + "\n";
        } else {
            s += "kind = tabulated\n";
            s += "table = " + profile.table_path + "\n";
        }
    }
    s += "[domain]\n";
    s += "C = " + format_double(C) + "\n";
    s += "P = " + format_double(P) + "\n";
    if (command == Command::solve) {
        s += "[numerics]\n";
        s += "N = " + std::to_string(N) + "\n";
        s += "amplitude = " + format_double(amplitude) + "\n";
        s += "steps = " + std::to_string(steps) + "\n";
        s += std::string("branch = ") + (branch == Branch::upper ? "upper" : "lower") + "\n";
        s += "newton_tol = " + format_double(newton_tol) + "\n";
        s += "max_newton = " + std::to_string(max_newton) + "\n";
        s += "stagnation_tol = " + format_double(stagnation_tol) + "\n";
        s += "grid_nx = " + std::to_string(grid_nx) + "\n";
        s += "grid_ny = " + std::to_string(grid_ny) + "\n";
    }
    if (command == Command::kernel_eval) {
        s += "[kernel]\n";
        s += std::string("parity = ") + (kernel_parity == Parity::even ? "even" : "odd") + "\n";
        s += "mode_k = " + std::to_string(kernel_mode) + "\n";
        s += "N = " + std::to_string(kernel_N) + "\n";
        s += "nx = " + std::to_string(kernel_nx) + "\n";
        s += "ny = " + std::to_string(kernel_ny) + "\n";
        s += "ymin = " + format_double(kernel_ymin) + "\n";
        s += "ymax = " + format_double(kernel_ymax) + "\n";
    }
    if (!out_dir.empty()) {
        s += "[output]\n";
        s += "dir = " + out_dir + "\n";
    }
    return s;
}

// ---- JSON -----------------------------------------------------------------

std::string format_double(double v) {
    if (std::isnan(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::item_prefix() {
    if (first_.empty()) return;
    if (!first_.back()) out_ += ",";
    first_.back() = false;
    out_ += "\n";
    out_.append(2 * first_.size(), ' ');
}

void JsonWriter::key_prefix(const std::string& key) {
    item_prefix();
    out_ += "\"" + key + "\": ";
}

JsonWriter& JsonWriter::begin_object() {
    if (!first_.empty()) item_prefix();
    out_ += "{";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) {
        out_ += "\n";
        out_.append(2 * first_.size(), ' ');
    }
    out_ += "}";
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    key_prefix(key);
    out_ += "[";
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) {
        out_ += "\n";
        out_.append(2 * first_.size(), ' ');
    }
    out_ += "]";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
    key_prefix(key);
    out_ += format_double(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
    key_prefix(key);
    out_ += std::to_string(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, std::size_t value) {
    key_prefix(key);
    out_ += std::to_string(value);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
    key_prefix(key);
    out_ += value ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
    key_prefix(key);
    out_ += "\"" + value + "\"";
    return *this;
}

JsonWriter& JsonWriter::null_field(const std::string& key) {
    key_prefix(key);
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key,
                              const std::optional<double>& value) {
    if (value) return field(key, *value);
    return null_field(key);
}

JsonWriter& JsonWriter::element(double value) {
    item_prefix();
    out_ += format_double(value);
    return *this;
}

// ---- artifact writers -------------------------------------------------------

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void write_solution_csv(const std::string& path, const Solution& sol) {
    std::string s = "t,u,v,theta,abs_wprime\n";
    const std::size_t n = sol.v.size();
    for (std::size_t j = 0; j <= n; ++j) {
        const std::size_t i = j % n;
        const double t = (j == n) ? sol.domain.period : sol.v.t(j);
        const double u = sol.mean_slope * t + sol.u_periodic[i];
        s += format_double(t) + "," + format_double(u) + "," +
             format_double(sol.v[i]) + "," + format_double(sol.theta[i]) + "," +
             format_double(sol.abs_wp[i]) + "\n";
    }
    write_file(path, s);
}

void write_solution_sidecar(const std::string& path, const Solution& sol) {
    JsonWriter w;
    w.begin_object();
    w.field("C", sol.domain.half_width);
    w.field("P", sol.domain.period);
    w.field("N", sol.v.size());
    if (sol.profile.kind() == ProfileKind::water_wave) {
        w.field("lambda", sol.lambda);
        w.field("g", sol.profile.gravity());
    } else {
        w.null_field("lambda");
        w.null_field("g");
    }
    w.field("amplitude", sol.amplitude);
    w.field("residual_norm", sol.residual_norm);
    const char* regime = sol.regime == StreamRegime::critical
                             ? "critical"
                             : (sol.regime == StreamRegime::subcritical
                                    ? "subcritical"
                                    : "supercritical");
    w.field("branch", std::string(regime));
    w.field("mean_slope", sol.mean_slope);
    w.field("newton_iterations", sol.newton_iterations);
    w.end_object();
    write_file(path, w.str() + "\n");
}

std::string report_json(const DiagnosticsReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.field("bernoulli_sup", rep.bernoulli_sup);
    w.field("min_cos_theta", rep.min_cos_theta);
    w.field("min_u_prime", rep.min_u_prime);
    w.field("czam_margin", rep.czam_margin);
    w.field("q_max_interior", rep.q_max_interior);
    w.field("q_boundary_dev", rep.q_boundary_dev);
    w.field("q_cross_validation", rep.q_cross_validation);
    w.begin_array("stagnation_set");
    for (const Interval& iv : rep.stagnation_set) {
        w.begin_object();
        w.field("t_begin", iv.t_begin);
        w.field("t_end", iv.t_end);
        w.end_object();
    }
    w.end_array();
    w.field("stagnation_checked", rep.stagnation_checked);
    w.field("self_intersects", rep.self_intersects);
    if (rep.intersection_witness) {
        w.begin_array("intersection_witness");
        w.element(static_cast<double>(rep.intersection_witness->first));
        w.element(static_cast<double>(rep.intersection_witness->second));
        w.end_array();
    } else {
        w.null_field("intersection_witness");
    }
    w.field("turning_number", rep.turning_number);
    if (rep.graph_property)
        w.field("graph_property", *rep.graph_property);
    else
        w.null_field("graph_property");
    w.field("certificate", rep.certificate());
    w.field("samples", rep.samples);
    w.field("P", rep.period);
    w.field("C", rep.half_width);
    w.field("stagnation_tol", rep.stagnation_tol);
    w.field("bernoulli_tol", rep.bernoulli_tol);
    w.end_object();
    return w.str() + "\n";
}

void write_report_json(const std::string& path, const DiagnosticsReport& rep) {
    write_file(path, report_json(rep));
}

std::string hypothesis_report_json(const HypothesisReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.field("clause_a_pass", rep.clause_a_pass);
    w.field("endpoint_value", rep.endpoint_value);
    w.field("clause_b_pass", rep.clause_b_pass);
    w.field("clause_c_pass", rep.clause_c_pass);
    w.field("strict_decrease_margin", rep.strict_decrease_margin);
    w.field("log_concavity_margin", rep.log_concavity_margin);
    w.field("overall", rep.overall);
    w.field("failed_clauses", rep.failed_clauses());
    w.field("sample_count", rep.sample_count);
    w.end_object();
    return w.str() + "\n";
}

FreeCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open curve file '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty curve file '" + path + "'", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t columns;
    if (line == "t,u,v")
        columns = 3;
    else if (line == "t,u,v,theta")
        columns = 4;
    else if (line == "t,u,v,theta,abs_wprime")  // solve artifacts re-import
        columns = 5;
    else
        throw ParseError("curve file '" + path +
                             "': expected header \"t,u,v\" or \"t,u,v,theta\"",
                         1);

    FreeCurve c;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(cell, &pos));
            } catch (const std::exception&) {
                throw ParseError("curve file '" + path + "': malformed number", lineno);
            }
        }
        if (row.size() != columns)
            throw ParseError("curve file '" + path + "': wrong column count", lineno);
        c.t.push_back(row[0]);
        c.u.push_back(row[1]);
        c.v.push_back(row[2]);
        if (columns >= 4) c.theta.push_back(row[3]);
    }
    if (c.size() < 2) throw ParseError("curve file '" + path + "': too few rows");
    c.closed = (c.u.front() == c.u.back() && c.v.front() == c.v.back());
    c.shift = c.closed ? 0.0 : c.u.back() - c.u.front();
    return c;
}

// ---- orchestration ----------------------------------------------------------

RunResult run(const RunSpec& spec, const std::string& out_override) {
    RunResult result;
    const std::string out = out_override.empty() ? spec.out_dir : out_override;

    try {
        make_dir(out);

        if (spec.command == RunSpec::Command::solve) {
            const Profile profile = spec.profile.make();
            const StripDomain domain(spec.C, spec.P);

            SolveOptions opt;
            opt.branch = spec.branch;
            opt.steps = spec.steps;
            opt.newton_tol = spec.newton_tol;
            opt.max_newton = spec.max_newton;

            Solution sol = solve_periodic(profile, domain, spec.N, spec.amplitude, opt);

            VerifyOptions vopt;
            vopt.stagnation_tol = spec.stagnation_tol;
            vopt.grid = GridSpec{spec.grid_nx, spec.grid_ny, 0.0, 0.0};
            DiagnosticsReport rep = verify_solution(sol, sol.profile, vopt);

            write_solution_csv(out + "/solution.csv", sol);
            write_solution_sidecar(out + "/solution.json", sol);
            write_report_json(out + "/report.json", rep);
            result.files = {out + "/solution.csv", out + "/solution.json",
                            out + "/report.json"};
            if (!rep.certificate()) {
                result.exit_code = kExitCertFail;
                result.message = "certificate failed";
            } else {
                result.message = "solved: residual " + format_double(sol.residual_norm);
            }
            return result;
        }

        if (spec.command == RunSpec::Command::kernel_eval) {
            const StripDomain domain(spec.C, spec.P);
            const std::size_t n = spec.kernel_N;
            std::vector<double> samples(n);
            const double w = 2.0 * 3.1415926535897932384626433832795 / spec.P *
                             static_cast<double>(spec.kernel_mode);
            for (std::size_t j = 0; j < n; ++j)
                samples[j] = std::cos(w * (spec.P * static_cast<double>(j) /
                                           static_cast<double>(n)));
            PeriodicFunction f(std::move(samples), spec.P);

            const double ymax =
                spec.kernel_ymax != 0.0 ? spec.kernel_ymax : 0.9 * spec.C;
            const double ymin = spec.kernel_ymin;

            std::string csv = "x,y,value\n";
            for (std::size_t jy = 0; jy < spec.kernel_ny; ++jy) {
                const double y =
                    spec.kernel_ny == 1
                        ? ymin
                        : ymin + (ymax - ymin) * static_cast<double>(jy) /
                              static_cast<double>(spec.kernel_ny - 1);
                for (std::size_t ix = 0; ix < spec.kernel_nx; ++ix) {
                    const double x = spec.P * static_cast<double>(ix) /
                                     static_cast<double>(spec.kernel_nx);
                    const double val =
                        symmetric_extend_at(f, spec.kernel_parity, domain, x, y);
                    csv += format_double(x) + "," + format_double(y) + "," +
                           format_double(val) + "\n";
                }
            }
            write_file(out + "/kernel.csv", csv);
            result.files = {out + "/kernel.csv"};
            result.message = "kernel grid written";
            return result;
        }

        throw InvalidError("run() handles solve and kernel-eval commands");
    } catch (const ParseError& e) {
        return {kExitBadInput, {}, e.what()};
    } catch (const IoError& e) {
        return {kExitBadInput, {}, e.what()};
    } catch (const ConvergenceError& e) {
        return {kExitNoSolve, {}, e.what()};
    } catch (const Error& e) {
        return {kExitNoSolve, {}, e.what()};
    }
}

RunResult run_verify(const std::string& curve_csv, const std::string& profile_spec,
                     double half_width, const std::string& out_dir,
                     double stagnation_tol) {
    try {
        make_dir(out_dir);
        const FreeCurve curve = read_curve_csv(curve_csv);

        Profile profile = Profile::water_wave(1.0, 1.0);
        bool have_profile = false;
        if (!profile_spec.empty()) {
            profile = ProfileSpec::parse(profile_spec).make();
            have_profile = true;
        }

        VerifyOptions opt;
        opt.stagnation_tol = stagnation_tol;
        DiagnosticsReport rep =
            verify_curve(curve, have_profile ? &profile : nullptr, half_width, opt);
        write_report_json(out_dir + "/report.json", rep);

        RunResult result;
        result.files = {out_dir + "/report.json"};
        if (!rep.certificate()) {
            result.exit_code = kExitCertFail;
            result.message = "certificate failed";
        } else {
            result.message = "certificate holds at the sampled resolution";
        }
        return result;
    } catch (const ParseError& e) {
        return {kExitBadInput, {}, e.what()};
    } catch (const IoError& e) {
        return {kExitBadInput, {}, e.what()};
    } catch (const Error& e) {
        return {kExitNoSolve, {}, e.what()};
    }
}

RunResult run_profile_check(const std::string& profile_spec,
                            const std::string& out_path, std::string* json_out) {
    try {
        const Profile profile = ProfileSpec::parse(profile_spec).make();
        const HypothesisReport rep = check_hypotheses(profile, 512);
        const std::string json = hypothesis_report_json(rep);
        if (json_out) *json_out = json;
        if (!out_path.empty()) write_file(out_path, json);

        RunResult result;
        if (!out_path.empty()) result.files = {out_path};
        result.exit_code = rep.overall ? kExitOk : kExitCertFail;
        result.message = rep.overall ? "hypotheses hold"
                                     : "failed clauses: " + rep.failed_clauses();
        return result;
    } catch (const ParseError& e) {
        return {kExitBadInput, {}, e.what()};
    } catch (const IoError& e) {
        return {kExitBadInput, {}, e.what()};
    } catch (const Error& e) {
        return {kExitNoSolve, {}, e.what()};
    }
}

}  // namespace sw
