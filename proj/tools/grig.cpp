// grig: command-line front end for the G_ω library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "grig/bounds.hpp"
#include "grig/errors.hpp"
#include "grig/growth.hpp"
#include "grig/growth_forms.hpp"
#include "grig/marked.hpp"
#include "grig/omega.hpp"
#include "grig/report.hpp"
#include "grig/tree_group.hpp"
#include "grig/two_generated.hpp"

namespace {

using namespace grig;

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kBudget = 3, kValidity = 4 };

struct Common {
  std::string omega = "(012)";
  std::string gens = "A";
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
  std::size_t max_elements = 10'000'000;

  EnumOptions enum_opts() const { return {threads, max_elements}; }
  Json params() const {
    return Json{{"omega", OmegaSeq::parse(omega).to_string()}, {"gens", gens}};
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_omega = true, bool with_gens = true) {
  if (with_omega) cmd->add_option("--omega", c.omega, "ω: [pre](period) or bernoulli:w0,w1,w2:seed[@offset]");
  if (with_gens) cmd->add_option("--gens", c.gens, "generating set A or S");
  cmd->add_option("--threads", c.threads, "worker threads (default: GRIG_THREADS or 1)");
  cmd->add_option("--max-elements", c.max_elements, "ball size budget");
  cmd->add_option("-o,--output", c.output, "write to file instead of stdout");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ContextPtr context_for(const Common& c, std::uint64_t radius) {
  return GroupContext::make(OmegaSeq::parse(c.omega), parse_genset(c.gens), radius);
}

Json context_json(const ContextPtr& ctx) {
  Json j{{"omega", ctx->omega().to_string()}, {"gens", to_string(ctx->gens())}};
  if (ctx->is_surrogate()) {
    j["policy"] = "surrogate";
    j["surrogate_depth"] = *ctx->surrogate_depth();
    j["effective_omega"] = ctx->effective().to_string();
    j["validity_radius"] = *ctx->validity_radius();
  } else {
    j["policy"] = "exact";
  }
  return j;
}

// --- growth -----------------------------------------------------------------

struct GrowthCmd {
  Common c;
  unsigned radius = 8;

  std::string run() const {
    const auto ctx = context_for(c, radius);
    const auto ball = enumerate_ball(ctx, radius, c.enum_opts());
    Json params = context_json(ctx);
    params["radius"] = radius;
    if (c.format == "csv") {
      std::vector<std::vector<std::string>> rows;
      for (std::size_t n = 0; n < ball.counts.size(); ++n)
        rows.push_back({std::to_string(n), std::to_string(ball.counts[n])});
      return csv_document("growth", params, {"n", "gamma"}, rows);
    }
    if (c.format != "json") throw InvalidArgument("format must be json or csv");
    Json j = make_report("growth", params);
    j["gamma"] = counts_json(ball.counts);
    j["elements"] = ball.size();
    return dump(j);
  }
};

// --- ball -------------------------------------------------------------------

struct BallCmd {
  Common c;
  unsigned radius = 2;
  std::optional<unsigned> depth;
  bool edges = false;

  std::string run() const {
    const auto omega = OmegaSeq::parse(c.omega);
    const auto gens = parse_genset(c.gens);
    const auto ctx = depth ? GroupContext::surrogate(omega, *depth, gens) : GroupContext::make(omega, gens, radius);
    const auto ball = canonical_ball(ctx, radius, c.enum_opts());
    if (c.format == "text") return ball.to_text();
    if (c.format != "json") throw InvalidArgument("format must be json or text");
    Json params = context_json(ctx);
    params["radius"] = radius;
    Json j = make_report("ball", params);
    j["vertices"] = ball.vertex_count;
    j["edges"] = ball.edges.size();
    char fp[32];
    std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(ball.fingerprint()));
    j["fingerprint_fnv1a64"] = fp;
    if (edges) {
      Json list = Json::array();
      for (const auto& e : ball.edges) list.push_back({e[0], e[1], e[2]});
      j["edge_list"] = list;
    }
    return dump(j);
  }
};

// --- distance ---------------------------------------------------------------

struct DistanceCmd {
  Common c;
  std::string eta = "(021)";
  unsigned budget = 4;

  std::string run() const {
    const auto gens = parse_genset(c.gens);
    const auto x = GroupContext::make(OmegaSeq::parse(c.omega), gens, budget);
    const auto y = GroupContext::make(OmegaSeq::parse(eta), gens, budget);
    const auto d = distance(x, y, budget, c.enum_opts());
    Json params{{"omega", context_json(x)}, {"eta", context_json(y)}, {"budget", budget}};
    Json j = make_report("distance", params);
    j["exact"] = d.exact;
    j["m"] = d.m;
    j["distance"] = d.to_string();
    j["value"] = d.value();
    return dump(j);
  }
};

// --- wordproblem ------------------------------------------------------------

struct WordCmd {
  Common c;
  std::string word;
  std::string vertex;

  std::string run() const {
    const auto reduced = reduce_word(word);
    const auto ctx = context_for(c, std::max<std::size_t>(reduced.size(), 1));
    const GenWord g(ctx, word);
    Json params = context_json(ctx);
    params["word"] = word;
    if (!vertex.empty()) params["vertex"] = vertex;
    Json j = make_report("wordproblem", params);
    j["reduced"] = reduced;
    j["is_identity"] = is_identity(g);
    j["portrait"] = to_string(portrait(g));
    if (!vertex.empty()) {
      j["image"] = act(g, vertex);
      const auto s = section(g, vertex);
      j["section"] = s.letters();
    }
    return dump(j);
  }
};

// --- order ------------------------------------------------------------------

struct OrderCmd {
  Common c;
  std::string word;
  unsigned cap = 10;

  std::string run() const {
    // Squaring doubles the length, so the surrogate must cover the last power.
    const std::uint64_t reach = std::max<std::uint64_t>(reduce_word(word).size(), 1) << std::min(cap, 40u);
    const auto ctx = context_for(c, reach);
    const auto r = order(GenWord(ctx, word), cap);
    Json params = context_json(ctx);
    params["word"] = word;
    params["cap"] = cap;
    Json j = make_report("order", params);
    j["exceeds_cap"] = r.exceeds_cap;
    if (!r.exceeds_cap) {
      j["order"] = r.order();
      j["exponent"] = r.exponent;
    }
    return dump(j);
  }
};

// --- omega-stats ------------------------------------------------------------

struct OmegaStatsCmd {
  Common c;
  std::optional<int> length;
  std::string weights = "1/3,1/3,1/3";
  std::optional<std::size_t> count;
  std::optional<double> C;
  double eps = 0.5;
  std::size_t horizon = 100000;

  std::string run() const {
    Json params;
    Json body;
    if (length) {
      const auto w = parse_weights(weights);
      params["length"] = *length;
      params["weights"] = weights_to_string(w);
      Json counts;
      for (auto [k, n] : count_by_T(*length)) counts[std::to_string(k)] = n;
      body["N"] = counts;
      body["I_m"] = mpq_to_string(expected_T_exact(*length, w));
    }
    if (count || C) {
      const auto omega = OmegaSeq::parse(c.omega);
      params["omega"] = omega.to_string();
      if (omega.is_periodic()) body["class"] = to_string(classify(omega));
      if (count) {
        params["count"] = *count;
        const auto s = t_sequence(omega, *count);
        body["t"] = s.t_values;
        body["q"] = s.q_values;
      }
      if (C) {
        params["C"] = *C;
        params["eps"] = eps;
        params["horizon"] = horizon;
        body["membership"] = membership_json(omega_membership(omega, *C, eps, horizon));
      }
    }
    if (!length && !count && !C) throw InvalidArgument("omega-stats needs --length, --count or --C");
    Json j = make_report("omega-stats", params);
    for (auto& [k, v] : body.items()) j[k] = v;
    return dump(j);
  }
};

// --- c0 ---------------------------------------------------------------------

struct C0Cmd {
  Common c;
  std::string weights = "1/3,1/3,1/3";
  std::size_t n = 10000;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  bool samples = false;

  std::string run() const {
    const auto w = parse_weights(weights);
    const auto est = estimate_C0(w, n, trials, seed, c.threads ? c.threads : default_threads());
    Json params{{"weights", weights_to_string(w)}, {"n", n}, {"trials", trials}, {"seed", seed}};
    Json j = make_report("c0", params);
    j["estimate"] = c0_json(est, samples);
    return dump(j);
  }
};

// --- bounds -----------------------------------------------------------------

struct BoundsCmd {
  Common c;
  double C = 7.3;
  std::optional<unsigned> m;

  std::string run() const {
    Json params{{"C", C}};
    if (m) {
      params["omega"] = OmegaSeq::parse(c.omega).to_string();
      params["m"] = *m;
    }
    Json j = make_report("bounds", params);
    j["alpha"] = alpha_json(alpha_for_C(C));
    j["theta0"] = theta0_json(theta0());
    if (m) j["dohuz"] = dohuz_json(dohuz_bound(OmegaSeq::parse(c.omega), *m));
    return dump(j);
  }
};

// --- compare ----------------------------------------------------------------

struct CompareCmd {
  std::string f, g;
  unsigned c_max = 4;
  std::uint64_t lo = 1, hi = 100;
  std::string gamma1, gamma2;
  unsigned d_max = 4;
  std::optional<std::uint64_t> n_max;

  std::string run() const {
    if (!gamma1.empty() || !gamma2.empty()) {
      if (gamma1.empty() || gamma2.empty()) throw InvalidArgument("oscillation needs both --gamma1 and --gamma2");
      const auto gamma = GrowthForm::parse(f);
      const auto r = oscillation_witness(gamma, GrowthForm::parse(gamma1), GrowthForm::parse(gamma2), c_max, d_max, n_max);
      Json params{{"gamma", f}, {"gamma1", gamma1}, {"gamma2", gamma2}, {"C_max", c_max}, {"D_max", d_max}};
      Json j = make_report("oscillation", params);
      j["result"] = oscillation_json(r);
      return dump(j);
    }
    if (g.empty()) throw InvalidArgument("compare needs --g (or --gamma1/--gamma2)");
    const auto r = compare_growth(GrowthForm::parse(f), GrowthForm::parse(g), c_max, lo, hi);
    Json params{{"f", f}, {"g", g}, {"C_max", c_max}, {"range", {lo, hi}}};
    Json j = make_report("compare", params);
    j["result"] = compare_json(r);
    return dump(j);
  }
};

// --- verify-lemmas ----------------------------------------------------------

struct LemmasCmd {
  Common c;
  unsigned length = 8;
  LemmaOptions opts;

  std::string run() {
    const auto ctx = context_for(c, length);
    opts.enum_opts = c.enum_opts();
    const auto rep = verify_lemmas(ctx, length, opts);
    Json params = context_json(ctx);
    params["max_length"] = length;
    params["max_q"] = opts.max_q;
    params["pairs"] = opts.pairs;
    params["seed"] = opts.seed;
    params["all_geodesics_max"] = opts.all_geodesics_max;
    Json j = make_report("verify-lemmas", params);
    j["report"] = lemma_report_json(rep);
    return dump(j);
  }
};

// --- two-gen ----------------------------------------------------------------

struct TwoGenCmd {
  Common c;
  std::string word;
  bool subdirect = false;
  std::optional<unsigned> radius;

  std::string run() const {
    const std::uint64_t reach = std::max<std::uint64_t>({word.size(), radius.value_or(0), 1});
    const auto ctx = GroupContext::make(OmegaSeq::parse(c.omega), GenSet::A, reach);
    const TwoGenerated m(ctx);
    Json params = context_json(ctx);
    if (!word.empty()) params["word"] = word;
    if (radius) params["radius"] = *radius;
    Json j = make_report("two-gen", params);
    if (!word.empty()) {
      j["normal_form"] = reduce_m_word(word);
      j["psi"] = m.to_string(m.psi(word));
      j["is_identity"] = m.is_identity(word);
    }
    if (subdirect) j["subdirect"] = subdirect_json(m, verify_subdirect(m));
    if (radius) j["gamma_M"] = counts_json(growth_M(m, *radius, c.enum_opts()).counts);
    if (word.empty() && !subdirect && !radius) throw InvalidArgument("two-gen needs --word, --subdirect or --radius");
    return dump(j);
  }
};

// --- plot-data --------------------------------------------------------------

struct PlotCmd {
  Common c;
  std::string source = "growth";
  std::string transform = "raw";
  unsigned radius = 8;
  std::string table;
  std::string weights = "1/3,1/3,1/3";
  std::size_t n = 10000, trials = 100;
  std::uint64_t seed = 42;
  double from = 3, to = 10, step = 0.1;

  std::string run() const {
    const auto t = parse_transform(transform);
    PlotRows points;
    std::string xn = "x", yn = "y";
    if (source == "growth") {
      if (!table.empty()) {
        const auto f = GrowthForm::from_csv(table);
        for (std::uint64_t k = 0; k <= *f.max_argument(); ++k)
          if (f.defined_at(k)) points.emplace_back(double(k), std::exp(f.log_value(k)));
      } else {
        points = points_from_counts(enumerate_ball(context_for(c, radius), radius, c.enum_opts()).counts);
      }
      xn = "n";
      yn = "gamma";
    } else if (source == "c0") {
      points = points_from_samples(
          estimate_C0(parse_weights(weights), n, trials, seed, c.threads ? c.threads : default_threads()).samples);
      xn = "trial";
      yn = "t_n/n";
    } else if (source == "alpha") {
      points = alpha_sweep(from, to, step);
      xn = "C";
      yn = "alpha";
    } else {
      throw InvalidArgument("source must be growth, c0 or alpha");
    }
    const std::string tn = to_string(t);
    if (t == PlotTransform::Log) yn = "log(" + yn + ")";
    if (t == PlotTransform::LogLog) {
      xn = "log(" + xn + ")";
      yn = "loglog(" + yn + ")";
    }
    return plot_columns(emit_plot_data(points, t), xn, yn);
  }
};

int exit_code_for(const grig::Error& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e) || dynamic_cast<const RangeExceeded*>(&e)) return kBudget;
  if (dynamic_cast<const ValidityExceeded*>(&e)) return kValidity;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
      dynamic_cast<const AlphabetViolation*>(&e) || dynamic_cast<const ContextMismatch*>(&e) ||
      dynamic_cast<const EmptyInput*>(&e) || dynamic_cast<const NotDecidable*>(&e) ||
      dynamic_cast<const Diverges*>(&e))
    return kUsage;
  return kOther;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grigorchuk family G_ω (p = 2): growth, word problem, bounds, marked balls"};
  app.require_subcommand(1);

  GrowthCmd growth;
  auto* g = app.add_subcommand("growth", "growth table γ(0..radius)");
  add_common(g, growth.c);
  g->add_option("--radius", growth.radius);
  g->add_option("--format", growth.c.format, "json or csv");

  BallCmd ball;
  auto* b = app.add_subcommand("ball", "canonical marked Cayley ball");
  add_common(b, ball.c);
  b->add_option("--radius", ball.radius);
  b->add_option("--depth", ball.depth, "surrogate depth for eventually constant ω");
  b->add_option("--format", ball.c.format, "json or text");
  b->add_flag("--edges", ball.edges, "include the edge list in JSON");

  DistanceCmd dist;
  auto* d = app.add_subcommand("distance", "marked-group distance 2^-m");
  add_common(d, dist.c);
  d->add_option("--eta", dist.eta);
  d->add_option("--budget", dist.budget);

  WordCmd wp;
  auto* w = app.add_subcommand("wordproblem", "identity test, portrait, action and sections");
  add_common(w, wp.c);
  w->add_option("--word", wp.word)->required();
  w->add_option("--vertex", wp.vertex, "vertex over {0,1} for image and section");

  OrderCmd ord;
  auto* o = app.add_subcommand("order", "order of an element by repeated squaring");
  add_common(o, ord.c);
  o->add_option("--word", ord.word)->required();
  o->add_option("--cap", ord.cap, "largest exponent k tried for 2^k");

  OmegaStatsCmd os;
  auto* s = app.add_subcommand("omega-stats", "block counts, exact I_m, t_n, membership");
  add_common(s, os.c, true, false);
  s->add_option("--length", os.length, "m for N_k counts and I_m");
  s->add_option("--weights", os.weights);
  s->add_option("--count", os.count, "number of t_n to list");
  s->add_option("--C", os.C, "membership threshold C");
  s->add_option("--eps", os.eps);
  s->add_option("--horizon", os.horizon);

  C0Cmd c0;
  auto* c = app.add_subcommand("c0", "Monte-Carlo estimate of lim t_n/n");
  add_common(c, c0.c, false, false);
  c->add_option("--weights", c0.weights);
  c->add_option("--n", c0.n);
  c->add_option("--trials", c0.trials);
  c->add_option("--seed", c0.seed);
  c->add_flag("--samples", c0.samples, "include per-trial values");

  BoundsCmd bounds;
  auto* bo = app.add_subcommand("bounds", "α(C), θ0 and the block-recursion bound");
  add_common(bo, bounds.c, true, false);
  bo->add_option("--C", bounds.C);
  bo->add_option("--m", bounds.m, "block count for the x_m bound");

  CompareCmd cmp;
  auto* cm = app.add_subcommand("compare", "finite-range growth comparison and oscillation witnesses");
  cm->add_option("--f", cmp.f, "growth form or table:<path> (γ for oscillation)")->required();
  cm->add_option("--g", cmp.g);
  cm->add_option("--c-max", cmp.c_max);
  cm->add_option("--from", cmp.lo);
  cm->add_option("--to", cmp.hi);
  cm->add_option("--gamma1", cmp.gamma1);
  cm->add_option("--gamma2", cmp.gamma2);
  cm->add_option("--d-max", cmp.d_max);
  cm->add_option("--n-max", cmp.n_max);
  std::string cmp_output;
  cm->add_option("-o,--output", cmp_output);

  LemmasCmd lem;
  auto* l = app.add_subcommand("verify-lemmas", "check the section-length inequalities on a ball");
  add_common(l, lem.c, true, false);
  l->add_option("--length", lem.length);
  l->add_option("--max-q", lem.opts.max_q);
  l->add_option("--pairs", lem.opts.pairs);
  l->add_option("--seed", lem.opts.seed);
  l->add_option("--all-geodesics-max", lem.opts.all_geodesics_max);

  TwoGenCmd tg;
  auto* t = app.add_subcommand("two-gen", "the group M_ω = <x, y>");
  add_common(t, tg.c, true, false);
  t->add_option("--word", tg.word, "word over x, X (= x^-1), y");
  t->add_flag("--subdirect", tg.subdirect, "check the conjugate identities");
  t->add_option("--radius", tg.radius, "growth of M_ω");

  PlotCmd plot;
  auto* p = app.add_subcommand("plot-data", "two-column data for external plotting");
  add_common(p, plot.c);
  p->add_option("--source", plot.source, "growth, c0 or alpha");
  p->add_option("--transform", plot.transform, "raw, log or loglog");
  p->add_option("--radius", plot.radius);
  p->add_option("--table", plot.table, "growth CSV instead of enumerating");
  p->add_option("--weights", plot.weights);
  p->add_option("--n", plot.n);
  p->add_option("--trials", plot.trials);
  p->add_option("--seed", plot.seed);
  p->add_option("--from", plot.from);
  p->add_option("--to", plot.to);
  p->add_option("--step", plot.step);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    std::string out, path;
    if (g->parsed()) out = growth.run(), path = growth.c.output;
    else if (b->parsed()) out = ball.run(), path = ball.c.output;
    else if (d->parsed()) out = dist.run(), path = dist.c.output;
    else if (w->parsed()) out = wp.run(), path = wp.c.output;
    else if (o->parsed()) out = ord.run(), path = ord.c.output;
    else if (s->parsed()) out = os.run(), path = os.c.output;
    else if (c->parsed()) out = c0.run(), path = c0.c.output;
    else if (bo->parsed()) out = bounds.run(), path = bounds.c.output;
    else if (cm->parsed()) out = cmp.run(), path = cmp_output;
    else if (l->parsed()) out = lem.run(), path = lem.c.output;
    else if (t->parsed()) out = tg.run(), path = tg.c.output;
    else if (p->parsed()) out = plot.run(), path = plot.c.output;

    if (path.empty()) {
      std::cout << out;
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write '" + path + "'");
      f << out;
    }
    return kOk;
  } catch (const grig::Error& e) {
    std::cerr << "grig: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "grig: " << e.what() << "\n";
    return kOther;
  }
}
