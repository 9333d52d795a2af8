#include "pml/kripke.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace pml {

const char* to_string(ModelClass cls) {
  switch (cls) {
    case ModelClass::Mixed:
      return "Mixed";
    case ModelClass::IntuitionisticMixed:
      return "IntuitionisticMixed";
    case ModelClass::MinimalMixed:
      return "MinimalMixed";
  }
  return "?";
}

namespace {

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

MixedModel MixedModel::validate(const RawModel& raw) {
  using K = ModelError::Kind;
  MixedModel m;
  if (raw.worlds.empty()) throw ModelError(K::NotAPoset, "a model needs at least one world");
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& w : raw.worlds) {
    if (!index.emplace(w, index.size()).second) throw ModelError(K::NotAPoset, "duplicate world " + quote(w));
  }
  m.worlds_ = raw.worlds;
  const std::size_t n = raw.worlds.size();
  auto lookup = [&](const std::string& w) {
    auto it = index.find(w);
    if (it == index.end()) throw ModelError(K::UnknownWorld, "unknown world " + quote(w));
    return it->second;
  };

  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t w = 0; w < n; ++w) le[w][w] = true;
  for (const auto& [a, b] : raw.leq) le[lookup(a)][lookup(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i])
        throw ModelError(K::NotAPoset, "order is not antisymmetric: " + quote(raw.worlds[i]) + " and " +
                                           quote(raw.worlds[j]) + " lie on a cycle");
  m.up_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j]) m.up_[i].set(j);

  m.signature_.insert(Formula::bottom());
  for (Formula a : raw.signature) {
    if (!a.is_atom() || (a.is_var() && !a.sort()))
      throw ModelError(K::SignatureMismatch, "signature entry " + quote(to_string(a)) + " is not a sorted atom");
    m.signature_.insert(a);
  }
  for (Formula a : m.signature_) m.forcing_.emplace(a, Bits(n));
  for (const auto& [w, a] : raw.forcing) {
    auto it = m.forcing_.find(a);
    if (it == m.forcing_.end())
      throw ModelError(K::SignatureMismatch, "forced atom " + quote(to_string(a)) + " is not in the signature");
    it->second.set(lookup(w));
  }

  const Bits& bottom = m.forcing_.at(Formula::bottom());
  for (const auto& [atom, ws] : m.forcing_) {
    for (std::size_t w = 0; w < n; ++w) {
      if (!ws.test(w)) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (le[w][v] && !ws.test(v))
          throw ModelError(K::MonotonicityViolation, "monotonicity: " + quote(m.worlds_[w]) + " forces " +
                                                         to_string(atom) + " but " + quote(m.worlds_[v]) +
                                                         " above it does not");
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (!bottom.test(w)) continue;
    for (const auto& [atom, ws] : m.forcing_)
      if (atom.is_var() && *atom.sort() != Sort::m && !ws.test(w))
        throw ModelError(K::BottomConditionViolation,
                         "bottom condition: " + quote(m.worlds_[w]) + " forces bot but not " + to_string(atom));
  }
  for (const auto& [atom, ws] : m.forcing_) {
    if (!atom.is_var() || *atom.sort() != Sort::c) continue;
    for (std::size_t w = 0; w < n; ++w) {
      if (!ws.test(w) || bottom.test(w)) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (!ws.test(v))
          throw ModelError(K::ClassicalConditionViolation,
                           "classical condition: " + quote(m.worlds_[w]) + " forces " + to_string(atom) +
                               " without bot but " + quote(m.worlds_[v]) + " does not");
    }
  }
  return m;
}

std::size_t MixedModel::world_index(std::string_view name) const {
  for (std::size_t w = 0; w < worlds_.size(); ++w)
    if (worlds_[w] == name) return w;
  throw ModelError(ModelError::Kind::UnknownWorld, "unknown world " + quote(name));
}

const Bits& MixedModel::forced(Formula atom) const {
  auto it = forcing_.find(atom);
  if (it == forcing_.end())
    throw ModelError(ModelError::Kind::SignatureMismatch, "atom " + to_string(atom) + " is not in the signature");
  return it->second;
}

bool atom_allowed(Formula atom, ModelClass cls) {
  if (atom.is_bottom()) return true;
  if (!atom.is_var() || !atom.sort()) return false;
  switch (cls) {
    case ModelClass::Mixed:
      return true;
    case ModelClass::IntuitionisticMixed:
      return *atom.sort() != Sort::c;
    case ModelClass::MinimalMixed:
      return *atom.sort() == Sort::m;
  }
  return false;
}

bool MixedModel::fits(ModelClass cls) const {
  return std::all_of(signature_.begin(), signature_.end(), [&](Formula a) { return atom_allowed(a, cls); });
}

RawModel MixedModel::to_raw() const {
  RawModel raw;
  raw.worlds = worlds_;
  for (std::size_t w = 0; w < size(); ++w)
    for (std::size_t v = 0; v < size(); ++v)
      if (w != v && leq(w, v)) raw.leq.emplace_back(worlds_[w], worlds_[v]);
  for (std::size_t w = 0; w < size(); ++w)
    for (const auto& [atom, ws] : forcing_)
      if (ws.test(w)) raw.forcing.emplace_back(worlds_[w], atom);
  raw.signature.assign(signature_.begin(), signature_.end());
  return raw;
}

namespace {

Bits eval(const MixedModel& m, Formula a, std::unordered_map<Formula, Bits>& memo) {
  if (a.is_atom()) return m.forced(a);
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  Bits l = eval(m, a.lhs(), memo);
  Bits r = eval(m, a.rhs(), memo);
  Bits out(m.size());
  switch (a.kind()) {
    case Kind::And:
      out = l & r;
      break;
    case Kind::Or:
      out = l | r;
      break;
    default: {
      Bits bad = l & ~r;
      for (std::size_t w = 0; w < m.size(); ++w)
        if (!m.up(w).intersects(bad)) out.set(w);
    }
  }
  memo.emplace(a, out);
  return out;
}

}  // namespace

Bits forcing_set(const MixedModel& m, Formula a) {
  for (Formula v : vars(a))
    if (!m.in_signature(v))
      throw ModelError(ModelError::Kind::SignatureMismatch,
                       "variable " + to_string(v) + " of " + quote(to_string(a)) + " is not in the signature");
  if (a.has_ordinary_vars())
    throw ModelError(ModelError::Kind::SignatureMismatch, "ordinary formulas cannot be evaluated in a mixed model");
  std::unordered_map<Formula, Bits> memo;
  return eval(m, a, memo);
}

bool forces(const MixedModel& m, std::size_t w, Formula a) {
  if (w >= m.size()) throw ModelError(ModelError::Kind::UnknownWorld, "world index out of range");
  return forcing_set(m, a).test(w);
}

bool forces(const MixedModel& m, std::string_view world, Formula a) { return forces(m, m.world_index(world), a); }

bool valid_in(const MixedModel& m, Formula a) { return forcing_set(m, a).all(); }

bool entails(const MixedModel& m, std::span<const Formula> gamma, Formula a) {
  // Evaluate everything first so signature errors surface regardless of order.
  bool all_hyps = true;
  for (Formula b : gamma)
    if (!valid_in(m, b)) all_hyps = false;
  bool goal = valid_in(m, a);
  return !all_hyps || goal;
}

MixedModel restrict(const MixedModel& m, ModelClass cls) {
  RawModel raw = m.to_raw();
  std::erase_if(raw.signature, [&](Formula a) { return !atom_allowed(a, cls); });
  std::erase_if(raw.forcing, [&](const auto& p) { return !atom_allowed(p.second, cls); });
  return MixedModel::validate(raw);
}

// --- enumeration -----------------------------------------------------------

namespace {

constexpr std::size_t kMaxPosetSize = 7;
constexpr std::size_t kMaxCanonicalSize = 6;

std::uint64_t relation_code(const Poset& p, std::span<const std::size_t> perm) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      if (i != j && ((p.up[i] >> j) & 1u)) code |= std::uint64_t{1} << (perm[i] * p.n + perm[j]);
  return code;
}

std::uint64_t canonical_code(const Poset& p) {
  std::vector<std::size_t> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, relation_code(p, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Poset> enumerate_posets(std::size_t n) {
  if (n == 0) return {Poset{0, {}}};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Poset> out;
  std::map<std::uint64_t, std::size_t> seen;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << pairs.size()); ++subset) {
    Poset p{n, std::vector<std::uint64_t>(n)};
    for (std::size_t w = 0; w < n; ++w) p.up[w] = std::uint64_t{1} << w;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((subset >> k) & 1u) p.up[pairs[k].first] |= std::uint64_t{1} << pairs[k].second;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = i + 1; j < n && transitive; ++j)
        if ((p.up[i] >> j) & 1u)
          if ((p.up[j] & ~p.up[i]) != 0) transitive = false;
    if (!transitive) continue;
    if (n <= kMaxCanonicalSize) {
      if (!seen.emplace(canonical_code(p), out.size()).second) continue;
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct PosetCache {
  std::mutex mutex;
  std::map<std::size_t, std::vector<Poset>> plain;
  std::map<std::size_t, std::vector<Poset>> rooted;
};

PosetCache& poset_cache() {
  static PosetCache* c = new PosetCache();
  return *c;
}

}  // namespace

const std::vector<Poset>& posets(std::size_t n) {
  if (n == 0 || n > kMaxPosetSize) throw std::invalid_argument("poset size must be in 1.." + std::to_string(kMaxPosetSize));
  auto& c = poset_cache();
  std::lock_guard lock(c.mutex);
  auto it = c.plain.find(n);
  if (it == c.plain.end()) it = c.plain.emplace(n, enumerate_posets(n)).first;
  return it->second;
}

const std::vector<Poset>& rooted_posets(std::size_t n) {
  if (n == 0 || n > kMaxPosetSize + 1)
    throw std::invalid_argument("rooted poset size must be in 1.." + std::to_string(kMaxPosetSize + 1));
  std::vector<Poset> tops = n == 1 ? std::vector<Poset>{Poset{0, {}}} : posets(n - 1);
  auto& c = poset_cache();
  std::lock_guard lock(c.mutex);
  auto it = c.rooted.find(n);
  if (it != c.rooted.end()) return it->second;
  std::vector<Poset> out;
  for (const Poset& t : tops) {
    Poset p{n, std::vector<std::uint64_t>(n)};
    p.up[0] = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t w = 0; w < t.n; ++w) p.up[w + 1] = t.up[w] << 1;
    out.push_back(std::move(p));
  }
  return c.rooted.emplace(n, std::move(out)).first->second;
}

std::vector<std::uint64_t> up_sets(const Poset& p) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << p.n); ++s) {
    bool closed = true;
    for (std::size_t w = 0; w < p.n && closed; ++w)
      if (((s >> w) & 1u) && (p.up[w] & ~s)) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

bool for_each_forcing(const Poset& p, std::span<const Formula> atoms,
                      const std::function<bool(std::span<const std::uint64_t>)>& fn) {
  const std::vector<std::uint64_t> ups = up_sets(p);
  const std::uint64_t all = (std::uint64_t{1} << p.n) - 1;
  std::size_t bottom_at = atoms.size();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (atoms[k].is_bottom()) bottom_at = k;
    else if (!atoms[k].is_var() || !atoms[k].sort())
      throw std::invalid_argument("model atoms must be sorted variables or bot");
  }
  if (bottom_at == atoms.size()) throw std::invalid_argument("model atoms must include bot");

  std::vector<std::size_t> order{bottom_at};
  for (std::size_t k = 0; k < atoms.size(); ++k)
    if (k != bottom_at) order.push_back(k);

  std::vector<std::uint64_t> masks(atoms.size(), 0);
  bool keep_going = true;
  std::function<void(std::size_t)> assign = [&](std::size_t pos) {
    if (!keep_going) return;
    if (pos == order.size()) {
      keep_going = fn(masks);
      return;
    }
    const std::size_t k = order[pos];
    const std::uint64_t bot = masks[bottom_at];
    for (std::uint64_t s : ups) {
      if (pos > 0) {
        Sort sort = *atoms[k].sort();
        if (sort != Sort::m && (bot & ~s)) continue;
        if (sort == Sort::c && (s & ~bot) && s != all) continue;
      }
      masks[k] = s;
      assign(pos + 1);
      if (!keep_going) return;
    }
  };
  assign(0);
  return keep_going;
}

MixedModel model_from_masks(const Poset& p, std::span<const Formula> atoms, std::span<const std::uint64_t> masks) {
  RawModel raw;
  for (std::size_t w = 0; w < p.n; ++w) raw.worlds.push_back("w" + std::to_string(w));
  for (std::size_t w = 0; w < p.n; ++w)
    for (std::size_t v = 0; v < p.n; ++v)
      if (w != v && ((p.up[w] >> v) & 1u)) raw.leq.emplace_back(raw.worlds[w], raw.worlds[v]);
  for (std::size_t w = 0; w < p.n; ++w)
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if ((masks[k] >> w) & 1u) raw.forcing.emplace_back(raw.worlds[w], atoms[k]);
  raw.signature.assign(atoms.begin(), atoms.end());
  return MixedModel::validate(raw);
}

}  // namespace pml
