// Sorted index sets used for point sets, open sets and arrow sets.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace holmon {

// Always sorted and duplicate-free.
using IndexSet = std::vector<std::uint32_t>;

inline IndexSet make_set(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline IndexSet make_set(std::initializer_list<std::uint32_t> v) {
  return make_set(std::vector<std::uint32_t>(v));
}

inline IndexSet full_set(std::size_t n) {
  IndexSet s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = static_cast<std::uint32_t>(i);
  }
  return s;
}

inline bool set_contains(const IndexSet& s, std::uint32_t x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline bool set_insert(IndexSet& s, std::uint32_t x) {
  auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it != s.end() && *it == x) {
    return false;
  }
  s.insert(it, x);
  return true;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Canonical listing such as {a,b} for reports.
inline std::string format_set(const IndexSet& s, const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += names.at(s[i]);
  }
  out += "}";
  return out;
}

}  // namespace holmon
