#include "grig/report.hpp"

#include <charconv>
#include <cmath>

#include "grig/errors.hpp"

namespace grig {

Json make_report(std::string_view kind, Json params) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = std::string(kind);
  j["params"] = std::move(params);
  return j;
}

std::string mpq_to_string(const mpq_class& q) { return q.get_str(); }

Json counts_json(const std::vector<std::uint64_t>& counts) {
  Json a = Json::array();
  for (auto c : counts) a.push_back(c);
  return a;
}

Json lemma_report_json(const LemmaReport& r) {
  Json j;
  j["context"] = r.context;
  j["max_length"] = r.max_length;
  j["max_q"] = r.max_q;
  j["elements"] = r.elements;
  j["representations"] = r.representations;
  j["pairs"] = r.pairs;
  j["l4_depths"] = r.l4_depths;
  Json checks;
  for (const auto& [k, v] : r.checks) checks[k] = v;
  j["checks"] = checks;
  Json viol;
  for (const char* name : {"l-0", "l-1", "l-2", "l-3", "l-4"}) viol[name] = Json::array();
  for (const auto& v : r.violations)
    viol[v.lemma].push_back({{"element", v.element}, {"other", v.other}, {"q", v.q}, {"lhs", v.lhs}, {"bound", v.rhs}});
  j["violations"] = viol;
  j["ok"] = r.ok();
  return j;
}

Json c0_json(const C0Estimate& e, bool with_samples) {
  Json j;
  j["mean"] = e.mean;
  j["stddev"] = e.stddev;
  j["ci95"] = {e.ci95_lo, e.ci95_hi};
  j["trials"] = e.trials;
  j["n"] = e.n;
  j["seed"] = e.seed;
  if (with_samples) j["samples"] = e.samples;
  return j;
}

Json membership_json(const MembershipReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["exact"] = r.exact;
  if (r.exact) {
    j["cycle_letters"] = r.cycle_letters;
    j["cycle_blocks"] = r.cycle_blocks;
  } else {
    j["horizon"] = r.horizon;
    j["max_t_over_n"] = r.max_t_over_n;
    j["max_q_over_t"] = r.max_q_over_t;
  }
  return j;
}

Json alpha_json(const AlphaParams& p) {
  return Json{{"rho", mpq_to_string(rho())}, {"C", p.C}, {"kappa", p.kappa}, {"alpha", p.alpha}};
}

Json theta0_json(const Theta0& t) { return Json{{"x0", t.x0}, {"theta0", t.theta0}, {"residual", t.residual}}; }

Json dohuz_json(const DohuzBound& d) {
  Json j;
  j["m"] = d.m;
  j["t"] = d.t;
  j["q"] = d.q;
  j["t_m"] = d.t_m;
  j["x_m"] = d.x_m.get_str();
  j["R_m"] = mpq_to_string(d.R_m);
  j["S_m"] = mpq_to_string(d.S_m);
  j["log10_bound"] = d.log10_bound;
  j["S_m_le_R_m"] = d.s_le_r;
  return j;
}

Json recursion_json(const RecursionCheck& c) {
  return Json{{"q", c.q}, {"checked", c.checked}, {"x_max", c.x_max}, {"violations", c.violations}};
}

Json compare_json(const CompareResult& r) {
  Json j;
  j["scope"] = "finite-range";
  j["range"] = {r.n_lo, r.n_hi};
  j["witness_C"] = r.witness ? Json(*r.witness) : Json(nullptr);
  Json per = Json::array();
  for (const auto& e : r.per_c) {
    Json x{{"C", e.C}, {"status", to_string(e.status)}};
    if (e.status != CompareEntry::Status::Holds) x["n"] = e.n;
    per.push_back(std::move(x));
  }
  j["per_C"] = per;
  return j;
}

Json oscillation_json(const OscillationResult& r) {
  auto list = [](const std::vector<OscillationEntry>& v, const char* factor, const char* arg) {
    Json a = Json::array();
    for (const auto& e : v)
      a.push_back({{factor, e.factor}, {arg, e.argument ? Json(*e.argument) : Json("not-found")}});
    return a;
  };
  Json j;
  j["scope"] = "finite-range";
  j["n_max"] = r.n_max;
  j["lower"] = list(r.lower, "C", "m");
  j["upper"] = list(r.upper, "D", "k");
  j["lower_found"] = r.lower_found();
  j["upper_found"] = r.upper_found();
  return j;
}

Json subdirect_json(const TwoGenerated& m, const SubdirectReport& r) {
  Json j;
  Json conj = Json::array();
  for (int k = 0; k < 4; ++k) {
    std::string expected;
    for (char ch : r.expected[k]) expected.push_back(ch);
    conj.push_back({{"word", std::string(k, 'x') + "y" + std::string(k, 'X')},
                    {"psi", m.to_string(r.conjugates[k])},
                    {"expected_sections", expected},
                    {"holds", r.identities[k]}});
  }
  j["conjugates"] = conj;
  j["coverage"] = r.coverage;
  j["ok"] = r.ok();
  return j;
}

std::string csv_document(std::string_view kind, const Json& params, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::string out = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  out += "# kind=" + std::string(kind) + "\n";
  out += "# params=" + params.dump() + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(',');
      out += cells[i];
    }
    out.push_back('\n');
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

PlotTransform parse_transform(std::string_view text) {
  if (text == "raw") return PlotTransform::Raw;
  if (text == "log") return PlotTransform::Log;
  if (text == "loglog") return PlotTransform::LogLog;
  throw ParseError("transform must be raw, log or loglog, got '" + std::string(text) + "'");
}

const char* to_string(PlotTransform t) {
  switch (t) {
    case PlotTransform::Raw: return "raw";
    case PlotTransform::Log: return "log";
    case PlotTransform::LogLog: return "loglog";
  }
  return "?";
}

PlotRows emit_plot_data(const PlotRows& points, PlotTransform t) {
  if (points.empty()) throw EmptyInput("nothing to plot");
  PlotRows out;
  out.reserve(points.size());
  for (auto [x, y] : points) {
    switch (t) {
      case PlotTransform::Raw: out.emplace_back(x, y); break;
      case PlotTransform::Log:
        if (y > 0) out.emplace_back(x, std::log(y));
        break;
      case PlotTransform::LogLog:
        if (x > 0 && y > 1) out.emplace_back(std::log(x), std::log(std::log(y)));
        break;
    }
  }
  return out;
}

PlotRows points_from_counts(const std::vector<std::uint64_t>& counts) {
  PlotRows out;
  for (std::size_t n = 0; n < counts.size(); ++n) out.emplace_back(double(n), double(counts[n]));
  return out;
}

PlotRows points_from_samples(const std::vector<double>& samples) {
  PlotRows out;
  for (std::size_t i = 0; i < samples.size(); ++i) out.emplace_back(double(i + 1), samples[i]);
  return out;
}

PlotRows alpha_sweep(double from, double to, double step) {
  if (!(step > 0) || from > to) throw InvalidArgument("alpha sweep needs step > 0 and from <= to");
  PlotRows out;
  // Index-based so the endpoint is not lost to rounding.
  const auto steps = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double C = from + double(i) * step;
    out.emplace_back(C, alpha_for_C(C).alpha);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string plot_columns(const PlotRows& rows, std::string_view x_name, std::string_view y_name) {
  std::string out = "# " + std::string(x_name) + " " + std::string(y_name) + "\n";
  for (auto [x, y] : rows) out += format_double(x) + " " + format_double(y) + "\n";
  return out;
}

}  // namespace grig
