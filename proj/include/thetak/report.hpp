#pragma once

#include <string>
#include <vector>

#include "thetak/catalog.hpp"
#include "thetak/presentation.hpp"
#include "thetak/spectral.hpp"

#include "json.hpp"

namespace thetak {

struct SpaceSpec {
    enum class Kind { Sphere, SU, Custom };
    Kind kind = Kind::Sphere;
    int n = 1;
    std::string custom_path;
    int64_t p = 3;
    int precision = 6;
    int depth = 2;        // free-theta truncation T
    int max_degree = -1;  // word-length budget; -1 = full
    int bott_twist = 0;
    int samples = 200;
    uint64_t seed = 1;
};

struct Report {
    nlohmann::ordered_json body;
    int exit_code = 0;  // 0 all certificates pass, 1 failures, 2 input error

    std::string to_text() const;
    std::string to_json_string() const { return body.dump(2) + "\n"; }
};

/// Orchestrates the requested tasks (subset of axioms, presentation, tor,
/// ss, v1) on the space and aggregates certificates.
Report run_report(const SpaceSpec& spec, const std::vector<std::string>& tasks);

/// The Morava module a SpaceSpec describes (catalog or custom file).
MoravaModule space_module(const SpaceSpec& spec, const PadicContext& ctx);

}  // namespace thetak
