#pragma once

#include "revisekit/corpus.hpp"
#include "revisekit/falappa.hpp"
#include "revisekit/metrics.hpp"
#include "revisekit/postulates.hpp"
#include "revisekit/revision.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace revisekit {

nlohmann::json to_json(const Literal& l);
nlohmann::json to_json(const BeliefBase& b);
nlohmann::json to_json(const ChangeMeasure& m);
nlohmann::json to_json(const CorrectionSet& s);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const SuiteReport& r);
nlohmann::json to_json(const CorpusReport& r);

/// RevisionResult with optional postulate flags and change measure.
nlohmann::json to_json(const RevisionResult& r, const PostulateReport* postulates = nullptr,
                       const std::optional<ChangeMeasure>& measure = std::nullopt);

std::string describe(const RevisionResult& r, const PostulateReport* postulates = nullptr,
                     const std::optional<ChangeMeasure>& measure = std::nullopt);
std::string describe(const SuiteReport& r);
std::string describe(const CorpusReport& r);

} // namespace revisekit
