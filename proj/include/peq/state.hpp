#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "peq/error.hpp"
#include "peq/expr.hpp"

namespace peq {

/// Total map from variables to integers. Variables not stored read as 0;
/// zero entries are never stored, so equal states have equal representations.
class DataState {
 public:
  using Entry = std::pair<Var, Int>;

  DataState() = default;
  DataState(std::initializer_list<std::pair<std::string_view, long long>> init) {
    for (const auto& [name, value] : init) assign(Var(name), Int(value));
  }

  const Int& get(Var v) const {
    static const Int zero = 0;
    auto it = find(v);
    return (it != entries_.end() && it->first == v) ? it->second : zero;
  }
  const Int& operator[](Var v) const { return get(v); }
  const Int& operator[](std::string_view name) const { return get(Var(name)); }

  void assign(Var v, Int value) {
    auto it = find(v);
    bool present = it != entries_.end() && it->first == v;
    if (value == 0) {
      if (present) entries_.erase(it);
    } else if (present) {
      it->second = std::move(value);
    } else {
      entries_.insert(it, Entry{v, std::move(value)});
    }
  }

  /// σ[v := value]
  DataState updated(Var v, Int value) const {
    DataState out = *this;
    out.assign(v, std::move(value));
    return out;
  }

  /// Non-zero entries sorted by variable name.
  const std::vector<Entry>& entries() const { return entries_; }

  /// Variables with a non-zero value.
  VarSet support() const {
    VarSet out;
    for (const auto& e : entries_) out.insert(e.first);
    return out;
  }

  bool agrees_on(const DataState& other, const VarSet& vs) const {
    return std::all_of(vs.begin(), vs.end(), [&](Var v) { return get(v) == other.get(v); });
  }

  std::size_t hash() const {
    std::size_t h = 0x51ed;
    for (const auto& [v, value] : entries_) h = detail::hash_mix(detail::hash_mix(h, v.hash()), detail::hash_int(value));
    return h;
  }

  friend bool operator==(const DataState& a, const DataState& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry>::iterator find(Var v) {
    return std::lower_bound(entries_.begin(), entries_.end(), v, [](const Entry& e, Var x) { return e.first < x; });
  }
  std::vector<Entry>::const_iterator find(Var v) const {
    return std::lower_bound(entries_.begin(), entries_.end(), v, [](const Entry& e, Var x) { return e.first < x; });
  }

  std::vector<Entry> entries_;
};

inline std::string to_string(const DataState& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, value] : s.entries()) {
    if (!first) out += ", ";
    out += v.name() + "=" + value.str();
    first = false;
  }
  return out + "}";
}

/// Renders the state restricted to `vs`, including zero-valued variables.
inline std::string to_string(const DataState& s, const VarSet& vs) {
  std::string out = "{";
  bool first = true;
  for (Var v : vs) {
    if (!first) out += ", ";
    out += v.name() + "=" + s.get(v).str();
    first = false;
  }
  return out + "}";
}

/// Bijection on variables with finite support; identity elsewhere.
class RenamingFn {
 public:
  RenamingFn() = default;

  /// Throws Error(invalid_renaming) unless the pairs describe a bijection
  /// that maps its support onto itself.
  explicit RenamingFn(const std::vector<std::pair<Var, Var>>& pairs) {
    for (const auto& [from, to] : pairs) {
      if (from == to) continue;
      if (!forward_.emplace(from, to).second)
        throw Error(ErrorKind::invalid_renaming, "variable '" + from.name() + "' mapped twice");
      if (!inverse_.emplace(to, from).second)
        throw Error(ErrorKind::invalid_renaming, "variable '" + to.name() + "' is the image of two variables");
    }
    for (const auto& [to, from] : inverse_)
      if (!forward_.contains(to))
        throw Error(ErrorKind::invalid_renaming, "image '" + to.name() + "' is not renamed itself; not a bijection");
  }

  Var operator()(Var v) const {
    auto it = forward_.find(v);
    return it == forward_.end() ? v : it->second;
  }
  Var inverse_of(Var v) const {
    auto it = inverse_.find(v);
    return it == inverse_.end() ? v : it->second;
  }

  RenamingFn inverse() const {
    RenamingFn out;
    out.forward_ = inverse_;
    out.inverse_ = forward_;
    return out;
  }

  bool is_identity() const { return forward_.empty(); }
  /// Non-identity pairs sorted by source name.
  const std::map<Var, Var>& pairs() const { return forward_; }

  friend bool operator==(const RenamingFn& a, const RenamingFn& b) { return a.forward_ == b.forward_; }

 private:
  std::map<Var, Var> forward_;
  std::map<Var, Var> inverse_;
};

}  // namespace peq

template <>
struct std::hash<peq::DataState> {
  std::size_t operator()(const peq::DataState& s) const noexcept { return s.hash(); }
};
