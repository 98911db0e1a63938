#ifndef PLUMBO_COMPLEX_HPP
#define PLUMBO_COMPLEX_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plumbo/errors.hpp"
#include "plumbo/rational.hpp"
#include "plumbo/upoly.hpp"

namespace plumbo {

struct Generator {
  std::string label;
  Rational maslov;
  std::int64_t degree = 0;  // homological degree; parity is degree mod 2
  Rational alexander;       // only meaningful on bifiltered complexes
};

/// One boundary monomial U^exponent * target.
struct Entry {
  std::size_t target = 0;
  std::int64_t exponent = 0;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Free chain complex over F[U] with Maslov gradings. Homogeneity forces
/// every matrix entry to be a monomial, so entries are stored as exponents.
class GradedFreeComplex {
public:
  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  const std::vector<Entry>& boundary(std::size_t i) const { return bd_.at(i); }

  std::size_t add_generator(Generator g) {
    gens_.push_back(std::move(g));
    bd_.emplace_back();
    return gens_.size() - 1;
  }

  /// Adds U^e * y to the boundary of x (over F, so a repeated entry cancels).
  void toggle(std::size_t x, std::size_t y, std::int64_t e) {
    if (e < 0) throw ConsistencyError("negative U exponent in boundary");
    auto& col = bd_.at(x);
    auto it = std::lower_bound(col.begin(), col.end(), y,
                               [](const Entry& a, std::size_t t) { return a.target < t; });
    if (it != col.end() && it->target == y) {
      if (it->exponent != e)
        throw ConsistencyError("inhomogeneous boundary entry " + gens_.at(x).label + " -> " + gens_.at(y).label);
      col.erase(it);
    } else {
      col.insert(it, Entry{y, e});
    }
  }

  /// Adds p * y to the boundary of x; p must be a sum of monomials each
  /// compatible with the gradings.
  void add_boundary(std::size_t x, std::size_t y, const UPolynomial& p) {
    for (auto e : p.exponents()) toggle(x, y, e);
  }

  /// Filtration level (degree - maslov)/2; U raises it by one and the
  /// differential preserves it.
  Rational level(std::size_t i) const { return (Rational(gens_[i].degree) - gens_[i].maslov) / Rational(2); }

  /// Grading law per monomial, degree drop, and d^2 = 0.
  void validate() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (const auto& en : bd_[x]) {
        const auto& gx = gens_[x];
        const auto& gy = gens_.at(en.target);
        if (gx.degree - 1 != gy.degree) throw ConsistencyError("boundary does not drop degree by one at " + gx.label);
        if (gx.maslov - Rational(1) != gy.maslov - Rational(2 * en.exponent))
          throw ConsistencyError("grading law fails at " + gx.label + " -> " + gy.label);
      }
    // Over F2 each target of d^2 x must appear an even number of times,
    // always with the same exponent.
    std::vector<Entry> sq;
    for (std::size_t x = 0; x < size(); ++x) {
      sq.clear();
      for (const auto& a : bd_[x])
        for (const auto& b : bd_[a.target]) sq.push_back(Entry{b.target, a.exponent + b.exponent});
      std::sort(sq.begin(), sq.end(), [](const Entry& l, const Entry& r) { return l.target < r.target; });
      for (std::size_t i = 0; i < sq.size();) {
        std::size_t j = i;
        while (j < sq.size() && sq[j].target == sq[i].target) {
          if (sq[j].exponent != sq[i].exponent) throw ConsistencyError("inhomogeneous d^2 at " + gens_[x].label);
          ++j;
        }
        if ((j - i) % 2 != 0) throw ConsistencyError("d^2 != 0 at " + gens_[x].label);
        i = j;
      }
    }
  }

  /// Filtration compatibility A(y) - t <= A(x) for every monomial.
  void validate_filtration() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (const auto& en : bd_[x])
        if (gens_[en.target].alexander - Rational(en.exponent) > gens_[x].alexander)
          throw ConsistencyError("Alexander filtration violated at " + gens_[x].label + " -> " +
                                 gens_[en.target].label);
  }

private:
  std::vector<Generator> gens_;
  std::vector<std::vector<Entry>> bd_;
};

/// Complex carrying the (j, A) bifiltration; A lives on the generators.
using BifilteredComplex = GradedFreeComplex;

struct TorsionSummand {
  Rational grading;
  std::int64_t order = 0;
  friend auto operator<=>(const TorsionSummand&, const TorsionSummand&) = default;
};

/// F[U]^{free} + sum F[U]/U^{order}, in canonical (sorted) form.
struct GradedModule {
  std::vector<Rational> free;
  std::vector<TorsionSummand> torsion;

  void canonicalize() {
    std::sort(free.begin(), free.end(), std::greater<>());
    std::sort(torsion.begin(), torsion.end(), [](const TorsionSummand& a, const TorsionSummand& b) {
      if (a.grading != b.grading) return a.grading > b.grading;
      return a.order < b.order;
    });
  }
  bool is_free_rank_one() const { return free.size() == 1 && torsion.empty(); }
  bool is_zero() const { return free.empty() && torsion.empty(); }
  void append(const GradedModule& o) {
    free.insert(free.end(), o.free.begin(), o.free.end());
    torsion.insert(torsion.end(), o.torsion.begin(), o.torsion.end());
    canonicalize();
  }
  friend bool operator==(const GradedModule&, const GradedModule&) = default;

  std::string str() const {
    std::string out;
    for (const auto& g : free) out += (out.empty() ? "" : " + ") + std::string("T_") + g.str();
    for (const auto& t : torsion)
      out += (out.empty() ? "" : " + ") + std::string("F[U]/U^") + std::to_string(t.order) + "_" + t.grading.str();
    return out.empty() ? "0" : out;
  }
};

inline nlohmann::json to_json(const GradedModule& m) {
  nlohmann::json j;
  j["free"] = nlohmann::json::array();
  for (const auto& g : m.free) j["free"].push_back(g.str());
  j["torsion"] = nlohmann::json::array();
  for (const auto& t : m.torsion) j["torsion"].push_back({{"grading", t.grading.str()}, {"order", t.order}});
  return j;
}

inline nlohmann::json to_json(const GradedFreeComplex& c, bool with_alexander = false) {
  nlohmann::json gens = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& g = c.generator(i);
    nlohmann::json e = nlohmann::json::array();
    for (const auto& en : c.boundary(i)) e.push_back({en.target, en.exponent});
    nlohmann::json row{{"label", g.label}, {"maslov", g.maslov.str()}, {"degree", g.degree}, {"boundary", e}};
    if (with_alexander) row["alexander"] = g.alexander.str();
    gens.push_back(row);
  }
  return nlohmann::json{{"generators", gens}};
}

/// Persistence-style reduction of a complex, viewed as the F-complex on its
/// generators filtered by level. A pair (y, x) with x killing y gives the
/// summand F[U]/U^{level(x)-level(y)} at maslov(y); an unpaired y gives a
/// free summand at maslov(y).
class Reduction {
public:
  struct Pair {
    std::size_t birth, death;
  };

  explicit Reduction(const GradedFreeComplex& c, bool track_cycles = false) : c_(&c) {
    const std::size_t n = c.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    levels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) levels_[i] = c.level(i);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      if (levels_[a] != levels_[b]) return levels_[a] < levels_[b];
      return c.generator(a).degree < c.generator(b).degree;
    });
    pos_.assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) pos_[order_[p]] = p;

    reduced_.assign(n, {});
    low_owner_.assign(n, kNone);
    std::vector<char> cleared(n, 0);
    if (track_cycles) { v_.assign(n, {}); }
    std::vector<std::int64_t> degs;
    for (const auto& g : c.generators()) degs.push_back(g.degree);
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());

    for (auto dit = degs.rbegin(); dit != degs.rend(); ++dit) {
      for (std::size_t p = 0; p < n; ++p) {
        const std::size_t x = order_[p];
        if (c.generator(x).degree != *dit) continue;
        if (track_cycles) v_[p] = {p};
        if (cleared[p]) continue;
        std::vector<std::size_t> col;
        for (const auto& en : c.boundary(x)) {
          check_consistent(Rational(en.exponent) == levels_[x] - levels_[en.target],
                           "grading inconsistency at " + c.generator(x).label);
          col.push_back(pos_[en.target]);
        }
        std::sort(col.begin(), col.end());
        while (!col.empty() && low_owner_[col.back()] != kNone) {
          const std::size_t q = low_owner_[col.back()];
          col = sym_diff(col, reduced_[q]);
          if (track_cycles) v_[p] = sym_diff(v_[p], v_[q]);
        }
        if (!col.empty()) {
          low_owner_[col.back()] = p;
          cleared[col.back()] = 1;
          reduced_[p] = std::move(col);
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!reduced_[p].empty()) {
        pairs_.push_back(Pair{order_[reduced_[p].back()], order_[p]});
      } else if (low_owner_[p] == kNone) {
        essential_.push_back(order_[p]);
      }
    }
  }

  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::vector<std::size_t>& essential() const { return essential_; }

  /// Homology of the subcomplex of generators with level <= cap (the whole
  /// complex when cap is empty). Sublevel sets are prefixes of the
  /// reduction order, so this is exact.
  GradedModule module(std::optional<Rational> cap = {}) const {
    GradedModule m;
    auto in = [&](std::size_t g) { return !cap || levels_[g] <= *cap; };
    for (const auto& pr : pairs_) {
      if (!in(pr.birth)) continue;
      if (!in(pr.death)) {
        m.free.push_back(c_->generator(pr.birth).maslov);
        continue;
      }
      const Rational len = levels_[pr.death] - levels_[pr.birth];
      if (len > Rational(0)) m.torsion.push_back({c_->generator(pr.birth).maslov, len.to_integer()});
    }
    for (auto g : essential_)
      if (in(g)) m.free.push_back(c_->generator(g).maslov);
    m.canonicalize();
    return m;
  }

  /// Same, split by the homological degree of the creating generator.
  std::map<std::int64_t, GradedModule> module_by_degree(std::optional<Rational> cap = {}) const {
    std::map<std::int64_t, GradedModule> out;
    auto in = [&](std::size_t g) { return !cap || levels_[g] <= *cap; };
    auto& gens = c_->generators();
    for (const auto& pr : pairs_) {
      if (!in(pr.birth)) continue;
      auto& m = out[gens[pr.birth].degree];
      if (!in(pr.death)) {
        m.free.push_back(gens[pr.birth].maslov);
        continue;
      }
      const Rational len = levels_[pr.death] - levels_[pr.birth];
      if (len > Rational(0)) m.torsion.push_back({gens[pr.birth].maslov, len.to_integer()});
    }
    for (auto g : essential_)
      if (in(g)) out[gens[g].degree].free.push_back(gens[g].maslov);
    std::erase_if(out, [](const auto& kv) { return kv.second.free.empty() && kv.second.torsion.empty(); });
    for (auto& [d, m] : out) m.canonicalize();
    return out;
  }

  /// Generators summing to a cycle representing the class born at the
  /// essential generator g. Requires track_cycles.
  std::vector<std::size_t> cycle(std::size_t g) const {
    if (v_.empty()) throw ConsistencyError("reduction built without cycle tracking");
    std::vector<std::size_t> out;
    for (auto p : v_[pos_.at(g)]) out.push_back(order_[p]);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Whether the chain sum of `gens` (each at its own level, all lifted to
  /// `lvl` by powers of U) is a boundary in the sublevel complex at lvl.
  bool is_boundary(const std::vector<std::size_t>& gens, const Rational& lvl) const {
    std::vector<std::size_t> col;
    for (auto g : gens) col.push_back(pos_.at(g));
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      const std::size_t q = low_owner_[col.back()];
      if (q == kNone || levels_[order_[q]] > lvl) return false;
      col = sym_diff(col, reduced_[q]);
    }
    return true;
  }

  const Rational& level(std::size_t g) const { return levels_.at(g); }

private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  static std::vector<std::size_t> sym_diff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  const GradedFreeComplex* c_;
  std::vector<std::size_t> order_, pos_;
  std::vector<Rational> levels_;
  std::vector<std::vector<std::size_t>> reduced_;
  std::vector<std::size_t> low_owner_;
  std::vector<std::vector<std::size_t>> v_;
  std::vector<Pair> pairs_;
  std::vector<std::size_t> essential_;
};

inline GradedModule homology(const GradedFreeComplex& c) { return Reduction(c).module(); }

inline std::map<std::int64_t, GradedModule> homology_by_degree(const GradedFreeComplex& c) {
  return Reduction(c).module_by_degree();
}

/// U-equivariant map sending each generator x to a sum of U^e y, lowering
/// the Maslov grading by 2*shift.
struct ChainMap {
  std::vector<std::vector<Entry>> images;
  std::int64_t shift = 0;
};

inline void validate_chain_map(const GradedFreeComplex& s, const GradedFreeComplex& t, const ChainMap& f) {
  check_consistent(f.images.size() == s.size(), "chain map has wrong source size");
  auto apply = [&](const std::vector<Entry>& in, auto next) {
    std::map<std::size_t, std::int64_t> out;
    for (const auto& a : in)
      for (const auto& b : next(a.target)) {
        auto [it, fresh] = out.emplace(b.target, a.exponent + b.exponent);
        if (!fresh) {
          check_consistent(it->second == a.exponent + b.exponent, "inhomogeneous chain map");
          out.erase(it);
        }
      }
    return out;
  };
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (const auto& en : f.images[x])
      check_consistent(s.generator(x).maslov - Rational(2 * f.shift) ==
                           t.generator(en.target).maslov - Rational(2 * en.exponent),
                       "chain map is not homogeneous at " + s.generator(x).label);
    auto lhs = apply(s.boundary(x), [&](std::size_t y) -> const std::vector<Entry>& { return f.images[y]; });
    auto rhs = apply(f.images[x], [&](std::size_t y) -> const std::vector<Entry>& { return t.boundary(y); });
    if (lhs != rhs) throw ConsistencyError("f d != d f at " + s.generator(x).label);
  }
}

/// For complexes whose homologies are both F[U], the e with f_* = U^e.
/// Computed by pushing a cycle for the source generator through f and
/// locating the image in the target's reduction.
inline std::int64_t induced_power(const GradedFreeComplex& s, const GradedFreeComplex& t, const ChainMap& f) {
  Reduction rs(s, true), rt(t);
  const auto ms = rs.module(), mt = rt.module();
  if (!ms.is_free_rank_one() || !mt.is_free_rank_one())
    throw ConsistencyError("induced_power: homology is not F[U] (source " + ms.str() + ", target " + mt.str() + ")");
  const auto z = rs.cycle(rs.essential().at(0));
  std::map<std::size_t, std::int64_t> image;
  for (auto x : z)
    for (const auto& en : f.images.at(x)) {
      auto [it, fresh] = image.emplace(en.target, en.exponent);
      if (!fresh) image.erase(it);
    }
  std::vector<std::size_t> gens;
  for (const auto& [y, e] : image) gens.push_back(y);
  const Rational qs = ms.free[0], qt = mt.free[0];
  const Rational img_grading = qs - Rational(2 * f.shift);
  if (gens.empty() || rt.is_boundary(gens, (Rational(s.generator(z[0]).degree) - img_grading) / Rational(2)))
    throw ConsistencyError("induced_power: induced map vanishes on homology");
  const Rational e = (qt - img_grading) / Rational(2);
  check_consistent(e.is_integer() && e >= Rational(0), "induced_power: non-integral exponent");
  return e.to_integer();
}

/// Subcomplex spanned by the generators with level <= cap.
inline GradedFreeComplex truncate_levels(const GradedFreeComplex& c, const Rational& cap) {
  GradedFreeComplex out;
  std::vector<std::size_t> idx(c.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.level(i) <= cap) idx[i] = out.add_generator(c.generator(i));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (idx[i] == static_cast<std::size_t>(-1)) continue;
    for (const auto& en : c.boundary(i)) {
      check_consistent(idx[en.target] != static_cast<std::size_t>(-1), "level truncation is not a subcomplex");
      out.toggle(idx[i], idx[en.target], en.exponent);
    }
  }
  return out;
}

}  // namespace plumbo

#endif  // PLUMBO_COMPLEX_HPP
