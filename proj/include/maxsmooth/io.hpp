#pragma once

// Serialization: certificate reports and problem instances as JSON, traces as CSV.
// CSV headers are fixed; floating point is written with 17 significant digits.

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxsmooth/certify.hpp"
#include "maxsmooth/minimax.hpp"
#include "maxsmooth/regret.hpp"

namespace maxsmooth {

using json = nlohmann::json;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// Certificate reports

inline json to_json(const CertReport& r) {
    json j;
    j["name"] = r.name;
    j["samples"] = r.samples;
    j["worst_violation"] = r.worst_violation;
    j["witness"] = r.witness;
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    if (r.measured) j["measured"] = *r.measured;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline CertReport cert_report_from_json(const json& j) {
    CertReport r;
    r.name = j.at("name").get<std::string>();
    r.samples = j.at("samples").get<std::size_t>();
    r.worst_violation = j.at("worst_violation").get<double>();
    r.witness = j.at("witness").get<std::vector<std::vector<double>>>();
    r.passed = j.at("passed").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.tolerance = j.at("tolerance").get<double>();
    if (j.contains("measured")) r.measured = j.at("measured").get<double>();
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

// ---------------------------------------------------------------------------
// Problem instances
//
// {"n": 10, "L": 0, "M": 3.2,
//  "components": [{"type": "affine", "a": [...], "b": 0.1},
//                 {"type": "quadratic", "q": 1.0, "center": [...], "b": 0.0}],
//  "optimal_value": ..., "optimal_point": [...], "y0": [...]}
//
// L defaults to the largest q (0 for affine-only); M defaults to max ||a|| and is
// required when quadratic components are present.

inline MaxOfSmoothProblem problem_from_json(const json& j) {
    try {
        if (!j.is_object()) throw SchemaError("problem: top level must be an object");
        MaxOfSmoothProblem p;
        p.n = j.at("n").get<std::size_t>();
        const auto& comps = j.at("components");
        if (!comps.is_array() || comps.empty()) throw SchemaError("problem: components must be a nonempty array");
        double derived_l = 0.0;
        double derived_m = 0.0;
        bool has_quadratic = false;
        for (const auto& c : comps) {
            const auto type = c.at("type").get<std::string>();
            if (type == "affine") {
                AffineComponent a{c.at("a").get<std::vector<double>>(), c.value("b", 0.0)};
                if (a.a.size() != p.n) throw SchemaError("problem: affine 'a' must have length n");
                derived_m = std::max(derived_m, detail::norm_two(a.a));
                p.components.emplace_back(std::move(a));
            } else if (type == "quadratic") {
                QuadraticComponent q{c.at("q").get<double>(), c.at("center").get<std::vector<double>>(),
                                     c.value("b", 0.0)};
                if (q.center.size() != p.n) throw SchemaError("problem: quadratic 'center' must have length n");
                if (!(q.q >= 0.0)) throw SchemaError("problem: quadratic 'q' must be >= 0");
                derived_l = std::max(derived_l, q.q);
                has_quadratic = true;
                p.components.emplace_back(std::move(q));
            } else {
                throw SchemaError("problem: unknown component type '" + type + "'");
            }
        }
        p.L = j.contains("L") ? j.at("L").get<double>() : derived_l;
        if (j.contains("M")) {
            p.M = j.at("M").get<double>();
        } else if (has_quadratic) {
            throw SchemaError("problem: 'M' is required when quadratic components are present");
        } else {
            p.M = derived_m;
        }
        if (j.contains("optimal_value")) p.optimal_value = j.at("optimal_value").get<double>();
        if (j.contains("optimal_point")) p.optimal_point = j.at("optimal_point").get<std::vector<double>>();
        if (j.contains("y0")) p.start = j.at("y0").get<std::vector<double>>();
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("problem: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

inline json to_json(const MaxOfSmoothProblem& p) {
    json j;
    j["n"] = p.n;
    j["L"] = p.L;
    j["M"] = p.M;
    json comps = json::array();
    for (const auto& c : p.components) {
        if (const auto* a = std::get_if<AffineComponent>(&c)) {
            comps.push_back({{"type", "affine"}, {"a", a->a}, {"b", a->b}});
        } else if (const auto* q = std::get_if<QuadraticComponent>(&c)) {
            comps.push_back({{"type", "quadratic"}, {"q", q->q}, {"center", q->center}, {"b", q->b}});
        } else {
            throw SchemaError("problem: custom components cannot be serialized");
        }
    }
    j["components"] = comps;
    if (p.optimal_value) j["optimal_value"] = *p.optimal_value;
    if (p.optimal_point) j["optimal_point"] = *p.optimal_point;
    if (p.start) j["y0"] = *p.start;
    return j;
}

inline MaxOfSmoothProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open problem file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError("problem file '" + path + "' is not valid JSON: " + e.what());
    }
    return problem_from_json(j);
}

// ---------------------------------------------------------------------------
// CSV traces

inline constexpr const char* solver_csv_header = "iteration,objective,best_objective,smoothed_objective,gradient_norm,calls";
inline constexpr const char* regret_csv_header = "round,learner_loss,best_expert_loss,regret";

inline void write_solver_csv(std::ostream& os, const SolverTrace& trace) {
    os << solver_csv_header << '\n';
    for (const auto& r : trace.records) {
        os << r.iteration << ',' << format_double(r.objective) << ',' << format_double(r.best_objective) << ','
           << format_double(r.smoothed) << ',' << format_double(r.gradient_norm) << ',' << r.calls << '\n';
    }
}

inline void write_regret_csv(std::ostream& os, const RegretTrace& trace, bool header = true) {
    if (header) os << regret_csv_header << '\n';
    for (const auto& r : trace.rounds) {
        os << r.round << ',' << format_double(r.learner_loss) << ',' << format_double(r.best_expert_loss) << ','
           << format_double(r.regret) << '\n';
    }
}

} // namespace maxsmooth
