#pragma once

#include "ckspec/algebra.hpp"
#include "ckspec/clifford.hpp"
#include "ckspec/hochschild.hpp"
#include "ckspec/spectral.hpp"
#include "ckspec/trace.hpp"

#include <string>

#include <json.hpp>

namespace ckspec {

// [{"mu": [edge ids], "nu": [edge ids], "re": "p/q", "im": "p/q"}]. An empty nu means
// r(mu); when both are empty the vertex goes in "vertex".
nlohmann::json to_json(const Element& a);
Element element_from_json(const Graph& g, const nlohmann::json& j);

// Each term: {"factors": [element terms...], "re", "im"}.
nlohmann::json to_json(const Chain& c);

// Row-major "re,im" strings.
nlohmann::json to_json(const Matrix& m);

nlohmann::json to_json(const GraphTrace& t);  // {vertex: "p/q"}
nlohmann::json to_json(const KTheoryRanks& r);
nlohmann::json to_json(const std::vector<SignTableRow>& rows);  // keyed by k
nlohmann::json to_json(const CancellationReport& r);
nlohmann::json to_json(const SpectralProfile& p);  // {limit, band, window, ...}
nlohmann::json to_json(const ZetaCheck& z);

// "t,F" header then one sample per line.
std::string profile_csv(const SpectralProfile& p);

}  // namespace ckspec
