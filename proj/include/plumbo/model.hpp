#ifndef PLUMBO_MODEL_HPP
#define PLUMBO_MODEL_HPP

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "plumbo/bifiltered.hpp"
#include "plumbo/complex.hpp"
#include "plumbo/errors.hpp"
#include "plumbo/knot.hpp"
#include "plumbo/rational.hpp"

namespace plumbo {

/// C(q; alpha_1..alpha_n; beta_1..beta_{n+1}): generators y_1..y_{n+1}
/// (degree 0) and x_1..x_n (degree 1), dx_k = U^{beta_k - alpha_k} y_k + y_{k+1}.
struct ModelComplex {
  Rational q;
  std::vector<Rational> alphas;  // decreasing
  std::vector<Rational> betas;   // decreasing, one longer

  std::size_t n() const { return alphas.size(); }
  friend bool operator==(const ModelComplex&, const ModelComplex&) = default;

  /// Broken interleaving (hard) and congruence (soft) conditions.
  struct Report {
    std::vector<std::string> errors, warnings;
  };

  Report check() const {
    Report r;
    if (betas.size() != alphas.size() + 1) {
      r.errors.push_back("need exactly one more beta than alphas");
      return r;
    }
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      if (!(betas[k] > alphas[k])) r.errors.push_back("beta_" + std::to_string(k + 1) + " <= alpha_" + std::to_string(k + 1));
      if (!(alphas[k] > betas[k + 1]))
        r.errors.push_back("alpha_" + std::to_string(k + 1) + " <= beta_" + std::to_string(k + 2));
    }
    auto even = [](const Rational& x) { return x.is_integer() && x.to_integer() % 2 == 0; };
    for (std::size_t k = 1; k < alphas.size(); ++k)
      if (!even(alphas[k] - alphas[0])) r.warnings.push_back("alpha_" + std::to_string(k + 1) + " !== alpha_1 mod 2");
    for (std::size_t k = 1; k < betas.size(); ++k)
      if (!even(betas[k] - betas[0])) r.warnings.push_back("beta_" + std::to_string(k + 1) + " !== beta_1 mod 2");
    if (!alphas.empty() && !even(alphas[0] - betas[0] - Rational(1))) r.warnings.push_back("alpha_1 !== beta_1 + 1 mod 2");
    return r;
  }

  std::string str() const {
    std::string s = "C(" + q.str() + ";";
    for (std::size_t k = 0; k < alphas.size(); ++k) s += (k ? "," : " ") + alphas[k].str();
    s += ";";
    for (std::size_t k = 0; k < betas.size(); ++k) s += (k ? "," : " ") + betas[k].str();
    return s + ")";
  }
};

inline nlohmann::json to_json(const ModelComplex& m) {
  nlohmann::json j;
  j["q"] = m.q.str();
  j["alphas"] = nlohmann::json::array();
  j["betas"] = nlohmann::json::array();
  for (const auto& a : m.alphas) j["alphas"].push_back(a.str());
  for (const auto& b : m.betas) j["betas"].push_back(b.str());
  return j;
}

/// Jumps gamma_1 > gamma_2 > ... read as beta_1, alpha_1, beta_2, ...
inline ModelComplex extract_model(const StaircaseData& sd) {
  if (sd.jumps.size() % 2 == 0)
    throw ConsistencyError("extract_model: even number of jumps (" + std::to_string(sd.jumps.size()) + ")");
  ModelComplex m;
  m.q = sd.q;
  for (std::size_t k = 0; k < sd.jumps.size(); ++k) (k % 2 == 0 ? m.betas : m.alphas).push_back(sd.jumps[k]);
  const auto rep = m.check();
  if (!rep.errors.empty()) throw ConsistencyError("extract_model: " + rep.errors.front());
  return m;
}

/// Generator order: y_1, x_1, y_2, x_2, ..., y_{n+1}.
inline BifilteredComplex realize_model(const ModelComplex& m) {
  const auto rep = m.check();
  if (!rep.errors.empty()) throw InputError("realize_model: " + rep.errors.front());
  BifilteredComplex c;
  Rational drop;  // 2 * sum of (beta - alpha) so far
  std::vector<std::size_t> y, x;
  for (std::size_t k = 0; k < m.betas.size(); ++k) {
    y.push_back(c.add_generator(Generator{"y" + std::to_string(k + 1), m.q - drop, 0, m.betas[k]}));
    if (k == m.alphas.size()) break;
    drop += Rational(2) * (m.betas[k] - m.alphas[k]);
    x.push_back(c.add_generator(Generator{"x" + std::to_string(k + 1), m.q - drop + Rational(1), 1, m.alphas[k]}));
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Rational e = m.betas[k] - m.alphas[k];
    if (!e.is_integer()) throw InputError("realize_model: beta - alpha is not an integer");
    c.toggle(x[k], y[k], e.to_integer());
    c.toggle(x[k], y[k + 1], 0);
  }
  c.validate();
  c.validate_filtration();
  return c;
}

namespace detail {

using GenKey = std::tuple<Rational, Rational, int>;

inline std::vector<GenKey> generator_multiset(const BifilteredComplex& c, const Rational& a_shift) {
  std::vector<GenKey> out;
  for (const auto& g : c.generators())
    out.emplace_back(g.maslov, g.alexander + a_shift, static_cast<int>(((g.degree % 2) + 2) % 2));
  std::sort(out.begin(), out.end());
  return out;
}

inline void require_lspace_type(const StaircaseData& sd) {
  for (const auto& w : sd.warnings)
    if (w.find("not F[U]") != std::string::npos) throw InputError("model_equiv: complex is not of L-space type (" + w + ")");
}

}  // namespace detail

/// Finite complex: minimal model has the model's generators (grading,
/// normalized A, parity) and the staircases agree.
inline bool model_equiv(const BifilteredComplex& c, const ModelComplex& m) {
  const auto sd = staircase_of_complex(c, false);
  detail::require_lspace_type(sd);
  const auto real = realize_model(m);
  const auto sm = staircase_of_complex(real);
  if (!(sd == sm)) return false;
  return detail::generator_multiset(minimal_model(c), sd.shift) == detail::generator_multiset(real, sm.shift);
}

/// Lattice complex of one class: infinite rank, so only the staircase is
/// compared (complete for L-space type).
inline bool model_equiv(const KnotContext& kc, std::size_t s, const ModelComplex& m) {
  const auto& sd = kc.staircase(s);
  detail::require_lspace_type(sd);
  return sd == staircase_of_complex(realize_model(m));
}

}  // namespace plumbo

#endif  // PLUMBO_MODEL_HPP
