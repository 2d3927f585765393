#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace peq {

namespace detail {

// Process-wide string pool. Interned strings are never freed, so a Var can
// hold a raw pointer and read its name without locking.
class VarPool {
 public:
  static VarPool& instance() {
    static VarPool pool;
    return pool;
  }

  const std::string* intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = names_.find(name);
    if (it != names_.end()) return it->get();
    auto owned = std::make_unique<const std::string>(name);
    const std::string* raw = owned.get();
    names_.insert(std::move(owned));
    return raw;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    std::size_t operator()(const std::unique_ptr<const std::string>& s) const { return (*this)(*s); }
  };
  struct Eq {
    using is_transparent = void;
    static std::string_view view(std::string_view s) { return s; }
    static std::string_view view(const std::unique_ptr<const std::string>& s) { return *s; }
    template <class A, class B>
    bool operator()(const A& a, const B& b) const { return view(a) == view(b); }
  };

  std::mutex mutex_;
  std::unordered_set<std::unique_ptr<const std::string>, Hash, Eq> names_;
};

}  // namespace detail

/// An interned program variable. Equality and hashing use the pool pointer;
/// ordering is lexicographic on the name so that sets iterate deterministically.
class Var {
 public:
  Var() : name_(detail::VarPool::instance().intern("")) {}
  explicit Var(std::string_view name) : name_(detail::VarPool::instance().intern(name)) {}

  const std::string& name() const { return *name_; }
  std::size_t hash() const { return std::hash<const void*>{}(name_); }

  friend bool operator==(Var a, Var b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(Var a, Var b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name_->compare(*b.name_) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  const std::string* name_;
};

using VarSet = std::set<Var>;

inline VarSet var_set(std::initializer_list<std::string_view> names) {
  VarSet out;
  for (auto n : names) out.insert(Var(n));
  return out;
}

inline VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline VarSet set_intersection(const VarSet& a, const VarSet& b) {
  VarSet out;
  for (Var v : a)
    if (b.contains(v)) out.insert(v);
  return out;
}

inline VarSet set_difference(const VarSet& a, const VarSet& b) {
  VarSet out;
  for (Var v : a)
    if (!b.contains(v)) out.insert(v);
  return out;
}

inline bool is_subset(const VarSet& sub, const VarSet& super) {
  for (Var v : sub)
    if (!super.contains(v)) return false;
  return true;
}

inline std::string to_string(const VarSet& vs) {
  std::string out = "{";
  bool first = true;
  for (Var v : vs) {
    if (!first) out += ", ";
    out += v.name();
    first = false;
  }
  return out + "}";
}

}  // namespace peq

template <>
struct std::hash<peq::Var> {
  std::size_t operator()(peq::Var v) const noexcept { return v.hash(); }
};
