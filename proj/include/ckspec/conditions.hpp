#pragma once

#include "ckspec/graph.hpp"
#include "ckspec/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ckspec {

struct HypothesisReport {
    bool connected = false;
    bool locally_finite = false;
    bool no_sinks = false;
    bool faithful_graph_trace_exists = false;
    bool single_entry = false;  // single exit for k >= 2
    bool fg_ktheory = false;
    int ends = 0;  // grows along the dyadic family while each member stays finitely generated
    std::string trace_error;
    std::vector<std::string> violated;

    bool all() const { return violated.empty(); }
};

HypothesisReport hypothesis_check(const Graph& g, const std::map<std::string, Rational>& end_values);
HypothesisReport hypothesis_check(const Graph& g);

enum class Status { Holds, Fails, NotApplicable };
std::string to_string(Status s);

struct ConditionEntry {
    std::string name;
    Status status = Status::NotApplicable;
    std::string method;  // "exact" or "numeric"
    nlohmann::json witness = nlohmann::json::object();
    std::optional<double> tolerance;
};

struct ConditionOptions {
    int level = 3;         // truncation level L (also the cycle depth T)
    long window = 100000;  // spectral window N for k = 1
    double tolerance = 0.05;
};

struct ConditionReport {
    int k = 1;
    HypothesisReport hypotheses;
    ConditionOptions options;
    std::vector<ConditionEntry> entries;  // the nine conditions in fixed order

    const ConditionEntry& at(const std::string& name) const;
    // 0 all hold, 2 some fail, 3 otherwise not_applicable present
    int exit_code() const;
};

extern const std::vector<std::string> kConditionNames;

ConditionReport evaluate_all(const Graph& g, const std::map<std::string, Rational>& end_values,
                             const ConditionOptions& options = {});
ConditionReport evaluate_all(const Graph& g, const ConditionOptions& options = {});

nlohmann::json to_json(const HypothesisReport& h);
nlohmann::json to_json(const ConditionReport& r);

}  // namespace ckspec
