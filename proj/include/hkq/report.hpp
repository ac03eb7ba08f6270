#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "hkq/flats.hpp"
#include "hkq/flowlab.hpp"
#include "hkq/setup.hpp"

namespace hkq::report {

using Json = nlohmann::ordered_json;

enum ExitCode : int
{
    exit_ok = 0,
    exit_invalid_input = 2,
    exit_non_generic = 3,
    exit_disagreement = 4,
};

/**
 * {"weights": [[int]], "alpha": ["p/q"], "beta": [["p/q", "r/s"]]}. alpha and beta are
 * optional and default to zero; entries may be strings or integers. Throws InvalidInput.
 */
TorusSetup parse_setup(const Json& j);

Json setup_json(const TorusSetup& s);

/// 1-based index list.
Json index_json(const IndexSet& J);

struct Outcome
{
    Json report;
    int exit_code = exit_ok;
    std::string message;  ///< printed to stderr when nonempty
};

struct AnalyzeOptions
{
    bool sample_generic = false;
    std::uint64_t seed = 0;
    std::size_t max_n = default_max_n;
};

/// flats -> morse -> arrangement -> ringcalc, with the three-way Poincare agreement.
Outcome analyze(const TorusSetup& s, const AnalyzeOptions& opts = {});

/// {"d": [...], "poincare": [...]}
Outcome census(const TorusSetup& s, const AnalyzeOptions& opts = {});

/// The modification, the original and the quotient by the circle with weights `column`.
Outcome modify(const TorusSetup& s, const RatVec& column, bool check_recurrence, const AnalyzeOptions& opts = {});

struct FlowCommandOptions
{
    flow::Function which = flow::Function::C2;
    std::size_t trials = 8;
    flow::EnsembleOptions ensemble;
};

Outcome run_flow(const TorusSetup& s, const FlowCommandOptions& fopts, const AnalyzeOptions& opts = {},
                 std::vector<flow::FlowRecord>* records = nullptr);

/// One line per sample: seed,t,f,grad_norm
std::string flow_csv(const std::vector<flow::FlowRecord>& records);

/**
 * A representation given as a list of {"re": [[...]], "im": [[...]]} basis matrices, or an
 * object {"basis": [...], "alpha": [...]}, or a setup (object with "weights") for its torus.
 */
struct RepInput
{
    flow::GroupRep rep;
    flow::RVec alpha;
};

RepInput parse_rep(const Json& j);

Outcome crossterm(const RepInput& in, std::size_t samples, std::uint64_t seed, double radius);

}  // namespace hkq::report
