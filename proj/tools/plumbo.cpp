// plumbo: command-line front end over the header library.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plumbo/plumbo.hpp"
#include "plumbo/selftest.hpp"

using nlohmann::json;
using namespace plumbo;

namespace {

struct Config {
  std::string command;
  std::string input, fixture, with, vertex;
  int nmax = 6;
  std::string k_range;
  std::string format = "json";
  std::uint64_t seed = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphDocument load(const Config& cfg) {
  if (!cfg.fixture.empty()) return fixtures::by_name(cfg.fixture);
  if (cfg.input.empty()) throw InputError("no input: pass --input FILE or --fixture NAME");
  return parse_graph(slurp(cfg.input));
}

PlumbingGraph plain(const GraphDocument& doc) {
  if (const auto* g = std::get_if<PlumbingGraph>(&doc)) return *g;
  throw InputError("this command takes a graph without a distinguished vertex");
}

MarkedGraph marked(const GraphDocument& doc) {
  if (const auto* m = std::get_if<MarkedGraph>(&doc)) return *m;
  throw InputError("this command takes a graph with a distinguished vertex");
}

std::pair<std::int64_t, std::int64_t> k_bounds(const Config& cfg, const KnotContext& kc) {
  if (cfg.k_range.empty()) {
    const auto k = min_admissible_k(kc);
    return {k, k + 3};
  }
  const auto dots = cfg.k_range.find("..");
  try {
    if (dots == std::string::npos) {
      const auto k = std::stoll(cfg.k_range);
      return {k, k};
    }
    const auto a = std::stoll(cfg.k_range.substr(0, dots)), b = std::stoll(cfg.k_range.substr(dots + 2));
    if (a > b) throw InputError("empty k range " + cfg.k_range);
    return {a, b};
  } catch (const std::logic_error&) {
    throw InputError("malformed k range: " + cfg.k_range);
  }
}

// Returns the result document; sets `failed` for verification mismatches.
json run(const Config& cfg, bool& failed) {
  LatticeOptions lopt;
  lopt.nmax = cfg.nmax;
  const auto& c = cfg.command;
  if (c == "selftest") {
    const auto results = selftest::run_all();
    for (const auto& r : results) failed = failed || !r["pass"].get<bool>();
    return results;
  }
  const auto doc = load(cfg);
  if (c == "rational") return report::rational(plain(doc));
  if (c == "homology") return report::homology(plain(doc), lopt);
  if (c == "dinv") return report::dinv(plain(doc), lopt);
  if (c == "delta") return report::delta(plain(doc), lopt);
  if (c == "lspace") return report::lspace(plain(doc), lopt);
  if (c == "hfminus") {
    const auto g = plain(doc);
    const auto w = cfg.vertex.empty() ? report::default_cone_vertex(g) : g.index_of(cfg.vertex);
    bool ok = true;
    auto out = report::hfminus(g, w, lopt, ok);
    failed = !ok;
    return out;
  }
  const auto mg = marked(doc);
  KnotContext kc(mg, lopt);
  if (c == "knot") return report::knot(kc);
  if (c == "model") return report::model(kc);
  if (c == "cone" || c == "verify") {
    const auto [lo, hi] = k_bounds(cfg, kc);
    json out = json::array();
    bool ok = true;
    for (auto k = lo; k <= hi; ++k) out.push_back(c == "cone" ? report::cone(kc, k, lopt) : report::verify(kc, k, lopt, ok));
    failed = !ok;
    return out;
  }
  if (c == "sum") {
    const auto other = cfg.with.empty() ? mg : marked(parse_graph(slurp(cfg.with)));
    const auto sum = connected_sum(mg, other);
    KnotContext ks(sum, lopt);
    json out{{"graph", to_json(sum)}, {"knot", report::knot(ks)}};
    try {
      const auto ma = extract_model(kc.staircase(0)), mb = extract_model(KnotContext(other, lopt).staircase(0));
      const auto ms = extract_model(ks.staircase(0));
      out["models"] = {ma.str(), mb.str(), ms.str()};
      out["tensor_equivalent"] = model_equiv(tensor(realize_model(ma), realize_model(mb)), ms);
    } catch (const std::exception& e) {
      out["tensor_equivalent"] = false;
      out["tensor_error"] = e.what();
    }
    return out;
  }
  throw InputError("unknown command: " + c);
}

void render_table(const json& j, std::ostream& os, const std::string& indent = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured()) {
        os << indent << k << ":\n";
        render_table(v, os, indent + "  ");
      } else {
        os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = std::none_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); });
    if (flat) {
      os << indent;
      for (std::size_t i = 0; i < j.size(); ++i)
        os << (i ? "  " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      os << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << indent << "[" << i << "]\n";
      render_table(j[i], os, indent + "  ");
    }
  } else {
    os << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Config& cfg, const json& doc) {
  if (cfg.format == "table")
    render_table(doc, std::cout);
  else
    std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plumbo: lattice homology of plumbed 3-manifolds and knots in them"};
  Config cfg;
  app.add_option("command", cfg.command, "rational|homology|dinv|delta|lspace|knot|model|cone|verify|hfminus|sum|selftest")
      ->required()
      ->check(CLI::IsMember({"rational", "homology", "dinv", "delta", "lspace", "knot", "model", "cone", "verify",
                             "hfminus", "sum", "selftest"}));
  app.add_option("--input", cfg.input, "graph JSON file");
  app.add_option("--fixture", cfg.fixture, "built-in fixture name instead of --input");
  app.add_option("--with", cfg.with, "second marked graph for sum (default: the input)");
  app.add_option("--vertex", cfg.vertex, "vertex id for hfminus (default: first admissible)");
  app.add_option("--nmax", cfg.nmax, "stabilisation depth")->check(CLI::Range(3, 64));
  app.add_option("--k", cfg.k_range, "surgery coefficients A..B for cone/verify");
  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", cfg.seed, "recorded in the report; the corpus is exhaustive");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  json config{{"command", cfg.command}, {"nmax", cfg.nmax}, {"seed", cfg.seed}};
  if (!cfg.input.empty()) config["input"] = cfg.input;
  if (!cfg.fixture.empty()) config["fixture"] = cfg.fixture;
  if (!cfg.k_range.empty()) config["k"] = cfg.k_range;
  try {
    bool failed = false;
    auto result = run(cfg, failed);
    emit(cfg, {{"config", config}, {"ok", !failed}, {"result", result}});
    return failed ? 2 : 0;
  } catch (const InputError& e) {
    emit(cfg, {{"config", config}, {"ok", false}, {"error", {{"kind", "input"}, {"message", e.what()}}}});
    return 1;
  } catch (const ConsistencyError& e) {
    emit(cfg, {{"config", config}, {"ok", false}, {"error", {{"kind", "consistency"}, {"message", e.what()}}}});
    return 2;
  } catch (const std::exception& e) {
    emit(cfg, {{"config", config}, {"ok", false}, {"error", {{"kind", "internal"}, {"message", e.what()}}}});
    return 2;
  }
}
