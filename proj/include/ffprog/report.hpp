#pragma once

// JSON and CSV renderings of the library's reports. Every JSON document
// carries a "kind" tag; see docs/report-schema.json.

#include <string>
#include <vector>

#include "json.hpp"

#include "ffprog/bounds.hpp"
#include "ffprog/chars.hpp"
#include "ffprog/classify.hpp"
#include "ffprog/search.hpp"
#include "ffprog/section4.hpp"
#include "ffprog/sweep.hpp"

namespace ffprog {

using Json = nlohmann::ordered_json;

Json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const Json& j);

Json to_json(const SpecialSieveReport& r);
Json to_json(const FieldCtx& ctx, const ProgressionSpec& spec, const SearchReport& r);
Json to_json(const FieldCtx& ctx, const FieldElem& a, const ElementProfile& p);
Json to_json(const WeilReport& r, const FieldCtx& ctx);
Json to_json(const Section4Report& r);

/// Timings are left out unless asked for, so equal inputs give equal bytes.
Json to_json(const std::vector<SweepRow>& rows, bool with_elapsed = false);
SweepRow sweep_row_from_json(const Json& j);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace ffprog
