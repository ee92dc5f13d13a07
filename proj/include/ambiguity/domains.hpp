//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef AMBIGUITY_DOMAINS_HPP_
#define AMBIGUITY_DOMAINS_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ambiguity/defaults.hpp"
#include "ambiguity/errors.hpp"

namespace ambiguity {

// A knob is a named control with a finite, ordered list of settings. A
// detector is a named device with a finite, ordered list of outcomes. Knob
// domains and detector domains are unordered products of such factors, keyed
// by name: a factor appears at most once, and two factors with the same name
// must be the same factor. Join, meet and difference act on the factor sets,
// which makes the domains a distributive lattice.

struct Knob {
  std::string name;
  std::vector<std::string> settings;

  friend bool operator==(const Knob&, const Knob&) = default;
};

struct Detector {
  std::string name;
  std::vector<std::string> outcomes;

  friend bool operator==(const Detector&, const Detector&) = default;
};

namespace detail {

inline const std::vector<std::string>& labels(const Knob& k) {
  return k.settings;
}
inline const std::vector<std::string>& labels(const Detector& d) {
  return d.outcomes;
}

template <class Factor>
void validate_factor(const Factor& f) {
  if (f.name.empty()) fail(ErrorCode::InvalidInput, "factor with empty name");
  const auto& ls = labels(f);
  if (ls.empty())
    fail(ErrorCode::InvalidInput, "factor '" + f.name + "' has no labels");
  std::set<std::string_view> seen;
  for (const auto& l : ls) {
    if (!seen.insert(l).second)
      fail(ErrorCode::InvalidInput,
           "factor '" + f.name + "' repeats label '" + l + "'");
  }
}

}  // namespace detail

// Unordered product of factors, stored sorted by name. Immutable after
// construction.
template <class Factor>
class Domain {
 public:
  Domain() = default;

  explicit Domain(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      detail::validate_factor(factors_[i]);
      if (i > 0 && factors_[i].name == factors_[i - 1].name) {
        if (!(factors_[i] == factors_[i - 1]))
          fail(ErrorCode::NameClash,
               "two different factors named '" + factors_[i].name + "'");
      }
    }
    // identical duplicates collapse: the same factor listed twice is one factor
    factors_.erase(std::unique(factors_.begin(), factors_.end()),
                   factors_.end());
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }

  bool has(std::string_view name) const { return find(name) != nullptr; }

  const Factor& factor(std::string_view name) const {
    const Factor* f = find(name);
    if (!f)
      fail(ErrorCode::DomainMismatch,
           "no factor named '" + std::string(name) + "'");
    return *f;
  }

  // Number of total assignments (empty domain has exactly one, the empty
  // assignment).
  std::size_t assignment_count() const {
    std::size_t n = 1;
    for (const auto& f : factors_) {
      std::size_t m = detail::labels(f).size();
      if (n > defaults::max_enumeration / m)
        fail(ErrorCode::InvalidInput, "domain too large to enumerate");
      n *= m;
    }
    return n;
  }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  const Factor* find(std::string_view name) const {
    auto it = std::lower_bound(
        factors_.begin(), factors_.end(), name,
        [](const Factor& f, std::string_view n) { return f.name < n; });
    if (it != factors_.end() && it->name == name) return &*it;
    return nullptr;
  }

  std::vector<Factor> factors_;
};

using KnobDomain = Domain<Knob>;
using DetectorDomain = Domain<Detector>;

namespace detail {

// Factors shared by name must be identical factors; anything else is an
// ill-formed pair of domains.
template <class Factor>
void check_compatible(const Domain<Factor>& a, const Domain<Factor>& b) {
  for (const auto& f : a.factors()) {
    if (b.has(f.name) && !(b.factor(f.name) == f))
      fail(ErrorCode::NameClash,
           "factor '" + f.name + "' differs between the two domains");
  }
}

}  // namespace detail

template <class Factor>
Domain<Factor> join(const Domain<Factor>& a, const Domain<Factor>& b) {
  detail::check_compatible(a, b);
  std::vector<Factor> fs = a.factors();
  for (const auto& f : b.factors())
    if (!a.has(f.name)) fs.push_back(f);
  return Domain<Factor>(std::move(fs));
}

template <class Factor>
Domain<Factor> meet(const Domain<Factor>& a, const Domain<Factor>& b) {
  detail::check_compatible(a, b);
  std::vector<Factor> fs;
  for (const auto& f : a.factors())
    if (b.has(f.name)) fs.push_back(f);
  return Domain<Factor>(std::move(fs));
}

// Factors of `a` that are not factors of `b`.
template <class Factor>
Domain<Factor> diff(const Domain<Factor>& a, const Domain<Factor>& b) {
  detail::check_compatible(a, b);
  std::vector<Factor> fs;
  for (const auto& f : a.factors())
    if (!b.has(f.name)) fs.push_back(f);
  return Domain<Factor>(std::move(fs));
}

template <class Factor>
bool leq(const Domain<Factor>& a, const Domain<Factor>& b) {
  detail::check_compatible(a, b);
  for (const auto& f : a.factors())
    if (!b.has(f.name)) return false;
  return true;
}

// One label per factor of the owning domain. Entries are kept sorted by
// factor name, so comparison and serialization are deterministic.
template <class Factor>
class Assignment {
 public:
  Assignment() = default;

  Assignment(const Domain<Factor>& domain,
             std::map<std::string, std::string> entries)
      : entries_(std::move(entries)) {
    if (entries_.size() != domain.size())
      fail(ErrorCode::DomainMismatch,
           "assignment covers " + std::to_string(entries_.size()) +
               " factors, domain has " + std::to_string(domain.size()));
    for (const auto& [name, label] : entries_) {
      if (!domain.has(name))
        fail(ErrorCode::DomainMismatch,
             "assignment names unknown factor '" + name + "'");
      const auto& ls = detail::labels(domain.factor(name));
      if (std::find(ls.begin(), ls.end(), label) == ls.end())
        fail(ErrorCode::DomainMismatch,
             "label '" + label + "' not valid for factor '" + name + "'");
    }
  }

  static Assignment unchecked(std::map<std::string, std::string> entries) {
    Assignment a;
    a.entries_ = std::move(entries);
    return a;
  }

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

  const std::string& label(std::string_view factor) const {
    auto it = entries_.find(std::string(factor));
    if (it == entries_.end())
      fail(ErrorCode::DomainMismatch,
           "assignment has no factor '" + std::string(factor) + "'");
    return it->second;
  }

  bool operator==(const Assignment&) const = default;
  bool operator<(const Assignment& other) const {
    return entries_ < other.entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
};

using Setting = Assignment<Knob>;
using AtomicOutcome = Assignment<Detector>;

// Merge of two assignments over disjoint domains into one over the join.
// Defined exactly when the domains share no factor.
template <class Factor>
Assignment<Factor> combine(const Domain<Factor>& da,
                           const Assignment<Factor>& a,
                           const Domain<Factor>& db,
                           const Assignment<Factor>& b) {
  if (!meet(da, db).empty())
    fail(ErrorCode::OverlappingDomains,
         "assignments can only be combined over disjoint domains");
  Assignment<Factor> va(da, a.entries());  // validate against owners
  Assignment<Factor> vb(db, b.entries());
  std::map<std::string, std::string> merged = va.entries();
  merged.insert(vb.entries().begin(), vb.entries().end());
  return Assignment<Factor>::unchecked(std::move(merged));
}

// Keep only the factors of `sub`; every factor of `sub` must be assigned.
template <class Factor>
Assignment<Factor> restrict_to(const Domain<Factor>& sub,
                               const Assignment<Factor>& a) {
  std::map<std::string, std::string> entries;
  for (const auto& f : sub.factors()) entries[f.name] = a.label(f.name);
  return Assignment<Factor>::unchecked(std::move(entries));
}

// All assignments in lexicographic order: factor names ascending, the label
// index of the last factor varying fastest. The empty domain yields exactly
// one (empty) assignment.
template <class Factor>
std::vector<Assignment<Factor>> enumerate_assignments(
    const Domain<Factor>& domain) {
  const std::size_t total = domain.assignment_count();
  std::vector<Assignment<Factor>> out;
  out.reserve(total);
  const auto& fs = domain.factors();
  std::vector<std::size_t> odo(fs.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::map<std::string, std::string> entries;
    for (std::size_t j = 0; j < fs.size(); ++j)
      entries[fs[j].name] = detail::labels(fs[j])[odo[j]];
    out.push_back(Assignment<Factor>::unchecked(std::move(entries)));
    for (std::size_t j = fs.size(); j-- > 0;) {
      if (++odo[j] < detail::labels(fs[j]).size()) break;
      odo[j] = 0;
    }
  }
  return out;
}

// Position of an assignment within enumerate_assignments(domain).
template <class Factor>
std::size_t assignment_index(const Domain<Factor>& domain,
                             const Assignment<Factor>& a) {
  Assignment<Factor> checked(domain, a.entries());
  std::size_t idx = 0;
  for (const auto& f : domain.factors()) {
    const auto& ls = detail::labels(f);
    auto it = std::find(ls.begin(), ls.end(), checked.label(f.name));
    idx = idx * ls.size() + static_cast<std::size_t>(it - ls.begin());
  }
  return idx;
}

// A measurable set of a finite detector domain: any subset of its atoms.
struct Event {
  std::vector<AtomicOutcome> atoms;
};

// Sorted, deduplicated atom indices of an event; validates every atom.
inline std::vector<std::size_t> event_indices(const DetectorDomain& domain,
                                              const Event& event) {
  std::set<std::size_t> idx;
  for (const auto& atom : event.atoms)
    idx.insert(assignment_index(domain, atom));
  return {idx.begin(), idx.end()};
}

}  // namespace ambiguity

#endif  // AMBIGUITY_DOMAINS_HPP_
