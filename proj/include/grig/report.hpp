#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grig/bounds.hpp"
#include "grig/growth.hpp"
#include "grig/growth_forms.hpp"
#include "grig/marked.hpp"
#include "grig/omega.hpp"
#include "grig/two_generated.hpp"

namespace grig {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"schema_version", "kind", "params", ...}; callers append the payload.
Json make_report(std::string_view kind, Json params);

std::string mpq_to_string(const mpq_class& q);

Json counts_json(const std::vector<std::uint64_t>& counts);
Json lemma_report_json(const LemmaReport& r);
Json c0_json(const C0Estimate& e, bool with_samples = false);
Json membership_json(const MembershipReport& r);
Json alpha_json(const AlphaParams& p);
Json theta0_json(const Theta0& t);
Json dohuz_json(const DohuzBound& d);
Json recursion_json(const RecursionCheck& c);
Json compare_json(const CompareResult& r);
Json oscillation_json(const OscillationResult& r);
Json subdirect_json(const TwoGenerated& m, const SubdirectReport& r);

/// '#'-prefixed metadata (schema version, kind, params), then a header row
/// and the rows.
std::string csv_document(std::string_view kind, const Json& params, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

enum class PlotTransform { Raw, Log, LogLog };

PlotTransform parse_transform(std::string_view text);
const char* to_string(PlotTransform t);

using PlotRows = std::vector<std::pair<double, double>>;

/// Applies the transform pointwise: raw (x, y), log (x, ln y),
/// loglog (ln x, ln ln y). Rows where the transform is undefined are
/// dropped. Throws EmptyInput on an empty input.
PlotRows emit_plot_data(const PlotRows& points, PlotTransform t);

/// (n, γ(n)).
PlotRows points_from_counts(const std::vector<std::uint64_t>& counts);
/// (trial index, sample), trials numbered from 1.
PlotRows points_from_samples(const std::vector<double>& samples);
/// (C, α(C)) for C = from, from + step, ..., to.
PlotRows alpha_sweep(double from, double to, double step);

/// Two whitespace-separated columns with a '#' header line.
std::string plot_columns(const PlotRows& rows, std::string_view x_name, std::string_view y_name);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace grig
