// bq: batch interface for biserial quiver presentations.
//
//   bq check FILE [--json] [--degree-bound N] [--max-period K]
//   bq screen FILE [--json] [--assume-period4] [--max-period K]
//   bq enumerate --vertices N [--max-arrows M] [--filters LIST] [--out DIR] [--json]
//   bq sequence FILE --vertex I [--json]
//
// Exit codes: 0 success (screen: no failing check), 1 screen found a failing
// check, 2 usage, parse or build error.

#include "bq/bq.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace bq;

constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

InputDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

/// Calls fn(field) with the document's field type.
template <class Fn>
auto with_field(const InputDocument& doc, Fn&& fn) {
  const auto spec = doc.resolved_field();
  if (spec.kind == FieldSpec::Kind::Rational) return fn(RationalField{});
  return fn(PrimeField{spec.prime});
}

template <ExactField F>
Json elements_json(const F& f, const Quiver& q, const std::vector<AlgebraElement<F>>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(element_to_string(f, q, x));
  return j;
}

Json counts_json(const std::vector<std::size_t>& v) {
  Json j = Json::array();
  for (auto x : v) j.push_back(x);
  return j;
}

std::string counts_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + ")";
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  bool json = false;
  std::optional<std::size_t> degree_bound, max_period;
};

int run_check(const CheckArgs& args) {
  const auto doc = load(args.file);
  const std::size_t max_period = args.max_period.value_or(doc.max_period.value_or(8));
  return with_field(doc, [&](const auto& f) {
    const auto A = build_algebra(doc, f, args.degree_bound);
    const Quiver& q = A.quiver();
    const MinimalRelations mr(A);
    const bool symmetric = symmetrizing_form(A).has_value();
    std::vector<PeriodResult> periods;
    for (VertexId v = 0; v < q.num_vertices(); ++v) periods.push_back(omega_period(A, v, max_period));

    if (args.json) {
      Json j;
      j["input_hash"] = document_hash(doc);
      j["field"] = f.name();
      j["degree_bound"] = A.degree_bound();
      j["dimension"] = A.dimension();
      j["nilpotency_degree"] = A.nilpotency_degree();
      Json cartan = Json::object();
      const auto C = A.cartan_matrix();
      for (VertexId v = 0; v < q.num_vertices(); ++v) cartan[q.vertex_name(v)] = counts_json(C[v]);
      j["cartan"] = std::move(cartan);
      Json rels = Json::array();
      for (const auto& [key, xs] : mr.all())
        for (const auto& x : xs) rels.push_back(element_to_string(f, q, x));
      j["minimal_relations"] = std::move(rels);
      j["symmetric"] = symmetric;
      Json per = Json::object();
      for (VertexId v = 0; v < q.num_vertices(); ++v) {
        Json e;
        e["period"] = periods[v].period ? Json(*periods[v].period) : Json(nullptr);
        if (!periods[v].period) e["reason"] = periods[v].reason;
        e["syzygy_dimensions"] = counts_json(periods[v].dimensions);
        per[q.vertex_name(v)] = std::move(e);
      }
      j["periods"] = std::move(per);
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    std::cout << "field: " << f.name() << '\n'
              << "dimension: " << A.dimension() << '\n'
              << "nilpotency degree: " << A.nilpotency_degree() << '\n'
              << "cartan matrix (row i = dimension vector of P_i):\n";
    const auto C = A.cartan_matrix();
    for (VertexId v = 0; v < q.num_vertices(); ++v)
      std::cout << "  " << q.vertex_name(v) << ": " << counts_text(C[v]) << '\n';
    std::cout << "minimal relations: " << mr.count() << '\n';
    for (const auto& [key, xs] : mr.all())
      for (const auto& x : xs) std::cout << "  " << element_to_string(f, q, x) << '\n';
    std::cout << "symmetric: " << (symmetric ? "yes" : "no") << '\n';
    for (VertexId v = 0; v < q.num_vertices(); ++v) {
      std::cout << "period(S_" << q.vertex_name(v) << ") = ";
      if (periods[v].period)
        std::cout << *periods[v].period;
      else
        std::cout << "none (" << periods[v].reason << ")";
      std::cout << "  syzygy dims " << counts_text(periods[v].dimensions) << '\n';
    }
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct ScreenArgs {
  std::string file;
  bool json = false;
  bool assume_period4 = false;
  std::optional<std::size_t> max_period;
};

int run_screen(const ScreenArgs& args) {
  const auto doc = load(args.file);
  ScreeningOptions opts;
  opts.max_period = args.max_period.value_or(doc.max_period.value_or(opts.max_period));
  opts.assume_period4 = args.assume_period4 || doc.assume_period4;
  const auto rep = with_field(doc, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    if (!doc.has_relations()) return run_pipeline<F>(doc.quiver(), nullptr, opts);
    const auto A = build_algebra(doc, f);
    return run_pipeline(doc.quiver(), &A, opts);
  });
  ScreeningReport out = rep;
  out.input_hash = document_hash(doc);
  if (args.json) {
    std::cout << out.to_json().dump(2) << '\n';
  } else {
    std::cout << "input " << out.input_hash << '\n';
    for (const auto& c : out.checks) {
      std::cout << std::left << std::setw(22) << to_string(c.id) << to_string(c.status) << '\n';
      if (c.status == Status::Fail || c.status == Status::Inconclusive) std::cout << "    " << c.witness.dump() << '\n';
    }
    std::cout << "note: " << out.presentation.value("caveat", "") << '\n';
  }
  return out.any_fail() ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
  std::size_t vertices = 1;
  std::optional<std::size_t> max_arrows;
  std::string filters = "L21,L22,ONE_VERTEX_TRIANGLE";
  std::string out_dir;
  bool json = false;
};

int run_enumerate(const EnumerateArgs& args) {
  EnumerationOptions opts;
  opts.num_vertices = args.vertices;
  opts.max_arrows = args.max_arrows;
  std::stringstream ss(args.filters);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item == "none") continue;
    auto f = parse_filter(item);
    if (!f) throw UsageError("unknown filter '" + item + "'");
    opts.filters.push_back(*f);
  }
  const auto res = enumerate_biserial_quivers(opts);

  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    const int width = static_cast<int>(std::to_string(res.quivers.size()).size());
    for (std::size_t k = 0; k < res.quivers.size(); ++k) {
      std::ostringstream name;
      name << "quiver_" << std::setw(width) << std::setfill('0') << k + 1 << ".bq";
      std::ofstream o(std::filesystem::path(args.out_dir) / name.str(), std::ios::binary);
      if (!o) throw UsageError("cannot write to " + args.out_dir);
      o << render_document(document_from_quiver(res.quivers[k]));
    }
  }

  if (args.json) {
    Json j;
    j["vertices"] = args.vertices;
    j["generated"] = res.generated;
    Json steps = Json::array();
    for (const auto& [f, n] : res.surviving_after) steps.push_back(Json{{"filter", to_string(f)}, {"surviving", n}});
    j["filters"] = std::move(steps);
    Json qs = Json::array();
    for (const auto& q : res.quivers) qs.push_back(render_document(document_from_quiver(q)));
    j["quivers"] = std::move(qs);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << std::left << std::setw(22) << "stage" << "count\n";
  std::cout << std::setw(22) << "generated" << res.generated << '\n';
  for (const auto& [f, n] : res.surviving_after) std::cout << std::setw(22) << to_string(f) << n << '\n';
  for (std::size_t k = 0; k < res.quivers.size(); ++k) {
    const Quiver& q = res.quivers[k];
    std::cout << "# " << k + 1 << ":";
    for (ArrowId a = 0; a < q.num_arrows(); ++a)
      std::cout << ' ' << q.vertex_name(q.arrow(a).source) << "->" << q.vertex_name(q.arrow(a).target);
    std::cout << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SequenceArgs {
  std::string file;
  std::string vertex;
  bool json = false;
};

int run_sequence(const SequenceArgs& args) {
  const auto doc = load(args.file);
  return with_field(doc, [&](const auto& f) {
    const auto A = build_algebra(doc, f);
    const Quiver& q = A.quiver();
    std::optional<VertexId> v;
    for (VertexId k = 0; k < q.num_vertices(); ++k)
      if (q.vertex_name(k) == args.vertex) v = k;
    if (!v) throw UsageError("unknown vertex '" + args.vertex + "'");
    const auto d = exact_sequence_data(A, *v);
    auto names = [&](const std::vector<ArrowId>& as) {
      Json j = Json::array();
      for (ArrowId a : as) j.push_back(q.arrow(a).name);
      return j;
    };
    auto targets = [&](const std::vector<ArrowId>& as, bool source) {
      Json j = Json::array();
      for (ArrowId a : as) j.push_back(q.vertex_name(source ? q.arrow(a).source : q.arrow(a).target));
      return j;
    };
    Json M = Json::array();
    for (const auto& row : d.M) M.push_back(elements_json(f, q, row));
    Json subs = Json::array();
    for (const auto& s : d.substitutions)
      subs.push_back(Json{{"arrow", q.arrow(s.arrow).name}, {"replacement", element_to_string(f, q, s.replacement)}});
    Json checks;
    checks["d1_d2_zero"] = d.checks.d1_d2_zero;
    checks["d2_d3_zero"] = d.checks.d2_d3_zero;
    checks["exact"] = Json::array();
    for (bool b : d.checks.exact) checks["exact"].push_back(b);
    checks["images_are_syzygies"] = d.checks.images_are_syzygies;
    checks["alternating_sum_zero"] = d.checks.alternating_sum_zero;
    checks["dimvec_equal"] = d.checks.dimvec_equal;
    checks["dimvec_strict"] = d.checks.dimvec_strict;
    checks["all"] = d.checks.all();

    if (args.json) {
      Json j;
      j["input_hash"] = document_hash(doc);
      j["vertex"] = q.vertex_name(*v);
      j["out_arrows"] = names(d.out_arrows);
      j["in_arrows"] = names(d.in_arrows);
      j["P_plus_summands"] = targets(d.out_arrows, false);
      j["P_minus_summands"] = targets(d.in_arrows, true);
      j["M"] = std::move(M);
      j["d3"] = elements_json(f, q, d.d3);
      j["substitutions"] = std::move(subs);
      j["p"] = counts_json(d.p);
      j["p_plus"] = counts_json(d.p_plus);
      j["p_minus"] = counts_json(d.p_minus);
      j["ranks"] = counts_json(d.ranks);
      j["checks"] = std::move(checks);
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    auto sum = [](const std::vector<std::size_t>& x) { return std::accumulate(x.begin(), x.end(), std::size_t{0}); };
    std::cout << "vertex " << q.vertex_name(*v) << '\n';
    std::cout << "P^+ = sum of P_t over out-arrows " << names(d.out_arrows).dump() << " -> "
              << targets(d.out_arrows, false).dump() << '\n';
    std::cout << "P^- = sum of P_s over in-arrows " << names(d.in_arrows).dump() << " -> "
              << targets(d.in_arrows, true).dump() << '\n';
    std::cout << "M:\n";
    for (const auto& row : d.M) {
      std::cout << " ";
      for (const auto& x : row) std::cout << "  [" << element_to_string(f, q, x) << "]";
      std::cout << '\n';
    }
    std::cout << "d3: " << elements_json(f, q, d.d3).dump() << '\n';
    if (!d.substitutions.empty()) std::cout << "arrow substitutions: " << subs.dump() << '\n';
    std::cout << "ranks (d1, d2, d3): " << counts_text(d.ranks) << '\n';
    std::cout << "p   = " << counts_text(d.p) << "  |p| = " << sum(d.p) << '\n';
    std::cout << "p^+ = " << counts_text(d.p_plus) << "  p^- = " << counts_text(d.p_minus) << '\n';
    std::cout << "|p-hat| = |p^+| = " << sum(d.p_plus) << " vs |p| = " << sum(d.p) << '\n';
    std::cout << "checks: " << checks.dump() << '\n';
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bq: exact computations for biserial quiver algebras"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Build the algebra; print dimension, Cartan matrix, symmetry and periods");
  check->add_option("FILE", ca.file)->required();
  check->add_flag("--json", ca.json);
  check->add_option("--degree-bound", ca.degree_bound)->check(CLI::Range(2, 1000));
  check->add_option("--max-period", ca.max_period)->check(CLI::Range(1, 1000));

  ScreenArgs sa;
  auto* screen = app.add_subcommand("screen", "Run the necessary-condition checks");
  screen->add_option("FILE", sa.file)->required();
  screen->add_flag("--json", sa.json);
  screen->add_flag("--assume-period4", sa.assume_period4, "Run the dimension-vector checks regardless of periods");
  screen->add_option("--max-period", sa.max_period)->check(CLI::Range(1, 1000));

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate biserial quivers up to isomorphism");
  enumerate->add_option("--vertices", ea.vertices)->required()->check(CLI::Range(1, 12));
  enumerate->add_option("--max-arrows", ea.max_arrows);
  enumerate->add_option("--filters", ea.filters, "Comma list of L21, L22, ONE_VERTEX_TRIANGLE or none")
      ->capture_default_str();
  enumerate->add_option("--out", ea.out_dir, "Write one quiver file per survivor into DIR");
  enumerate->add_flag("--json", ea.json);

  SequenceArgs qa;
  auto* sequence = app.add_subcommand("sequence", "Four-term exact sequence at a vertex");
  sequence->add_option("FILE", qa.file)->required();
  sequence->add_option("--vertex", qa.vertex)->required();
  sequence->add_flag("--json", qa.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check) return run_check(ca);
    if (*screen) return run_screen(sa);
    if (*enumerate) return run_enumerate(ea);
    if (*sequence) return run_sequence(qa);
  } catch (const ParseError& e) {
    std::cerr << "bq: " << e.what() << '\n';
  } catch (const BuildError& e) {
    std::cerr << "bq: build error (" << to_string(e.kind()) << "): " << e.what() << '\n';
  } catch (const SequenceError& e) {
    std::cerr << "bq: " << to_string(e.kind()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "bq: " << e.what() << '\n';
  }
  return kExitError;
}
