#pragma once

#include "thetak/complex.hpp"
#include "thetak/spectral.hpp"

#include "json.hpp"

namespace thetak {

/// Fixture serialization for chain complexes, filtered complexes and
/// simplicial modules; used by golden tests and the CLI fixture loader.
nlohmann::ordered_json to_json(const ChainComplex& c);
ChainComplex chain_complex_from_json(const PadicContext& ctx, const nlohmann::json& j);

nlohmann::ordered_json to_json(const FilteredComplex& f);
FilteredComplex filtered_complex_from_json(const PadicContext& ctx, const nlohmann::json& j);

nlohmann::ordered_json to_json(const SimplicialModule& q);
SimplicialModule simplicial_from_json(const PadicContext& ctx, const nlohmann::json& j);

}  // namespace thetak
