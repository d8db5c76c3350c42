#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fbc/channel.hpp"
#include "fbc/markov.hpp"

namespace fbc {

using ordered_json = nlohmann::ordered_json;

// Parse failures surface as validation errors, never as library exceptions.
ordered_json parse_json_text(const std::string& text);

// Channel files: either a bare row matrix or {"matrix": [[...]], ...} with
// an optional "input_law" array.
DiscreteChannel channel_from_json(const ordered_json& j);
std::optional<ProbabilityVector> input_law_from_json(const ordered_json& j);

// {"costs": [...], "cap": k}
CostFunction cost_from_json(const ordered_json& j);

// Either a bare transition matrix or {"transition": [[...]]}.
MarkovNoise markov_from_json(const ordered_json& j);

// Shortest-17-significant-digit decimal; used for every CSV cell so output
// bytes are reproducible.
std::string format_g17(double v);

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);
ordered_json json_table(const std::vector<std::string>& columns,
                        const std::vector<std::vector<double>>& rows);

// key,value lines for scalar reports rendered as CSV.
std::string scalar_csv(const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace fbc
