#include "holmon/finspace.hpp"

#include <algorithm>
#include <set>

namespace holmon {

const char* err_name(Err e) {
  switch (e) {
    case Err::MissingEmptyOrFull: return "MissingEmptyOrFull";
    case Err::NotClosedUnderUnion: return "NotClosedUnderUnion";
    case Err::NotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case Err::UnknownPoint: return "UnknownPoint";
    case Err::UnknownArrow: return "UnknownArrow";
    case Err::NotOpen: return "NotOpen";
    case Err::CompositionDomain: return "CompositionDomain";
    case Err::Associativity: return "Associativity";
    case Err::IdentityLaw: return "IdentityLaw";
    case Err::InverseLaw: return "InverseLaw";
    case Err::EndpointOutsideU: return "EndpointOutsideU";
    case Err::NotWide: return "NotWide";
    case Err::NotNormal: return "NotNormal";
    case Err::NotLoopOnly: return "NotLoopOnly";
    case Err::NotSubset: return "NotSubset";
    case Err::PointNotInChart: return "PointNotInChart";
    case Err::InvalidChart: return "InvalidChart";
    case Err::NotACover: return "NotACover";
    case Err::GermMismatch: return "GermMismatch";
    case Err::BaseMismatch: return "BaseMismatch";
    case Err::EndpointMismatch: return "EndpointMismatch";
    case Err::NotInW: return "NotInW";
    case Err::NotComposable: return "NotComposable";
    case Err::NotAdapted: return "NotAdapted";
    case Err::OverlapDisagreement: return "OverlapDisagreement";
    case Err::NotPregroupoidMorphism: return "NotPregroupoidMorphism";
    case Err::SourceCondition: return "SourceCondition";
    case Err::ImageNotOpen: return "ImageNotOpen";
    case Err::NotHomeoOntoImage: return "NotHomeoOntoImage";
    case Err::PointOutsideDomain: return "PointOutsideDomain";
    case Err::NoSectionThroughW: return "NoSectionThroughW";
    case Err::NormalityFailure: return "NormalityFailure";
    case Err::HypothesisFailureA: return "HypothesisFailure(a)";
    case Err::HypothesisFailureB: return "HypothesisFailure(b)";
    case Err::HypothesisFailureC: return "HypothesisFailure(c)";
    case Err::HypothesisFailureD: return "HypothesisFailure(d)";
    case Err::NotContinuousOnChart: return "NotContinuousOnChart";
    case Err::TooLarge: return "TooLarge";
    case Err::Parse: return "Parse";
    case Err::CrossRef: return "CrossRef";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

void sort_opens(std::vector<IndexSet>& opens) {
  std::sort(opens.begin(), opens.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a < b;
  });
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
}

void FinSpace::build_index() {
  index_.clear();
  for (std::uint32_t i = 0; i < points_.size(); ++i) {
    if (!index_.emplace(points_[i], i).second) {
      fail(Err::Parse, "duplicate point id '" + points_[i] + "'");
    }
  }
}

void FinSpace::check_base() const {
  for (std::uint32_t x = 0; x < size(); ++x) {
    const IndexSet& m = min_open_[x];
    if (!set_contains(m, x)) {
      fail(Err::Internal, "minimal open of " + points_[x] + " misses the point");
    }
    for (std::uint32_t y : m) {
      if (y >= size() || !is_subset(min_open_[y], m)) {
        fail(Err::Internal, "minimal-open base not transitive at " + points_[x]);
      }
    }
  }
}

FinSpace FinSpace::validated(std::vector<std::string> points, std::vector<IndexSet> opens) {
  FinSpace s;
  s.points_ = std::move(points);
  s.build_index();
  const std::size_t n = s.size();
  for (IndexSet& u : opens) {
    for (std::uint32_t x : u) {
      if (x >= n) {
        fail(Err::UnknownPoint, "open set references point index " + std::to_string(x));
      }
    }
  }
  sort_opens(opens);
  auto have = [&opens](const IndexSet& u) {
    return std::find(opens.begin(), opens.end(), u) != opens.end();
  };
  if (!have(IndexSet{}) || !have(full_set(n))) {
    fail(Err::MissingEmptyOrFull, "opens must contain the empty set and the full point set");
  }
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!have(set_union(opens[i], opens[j]))) {
        fail(Err::NotClosedUnderUnion, format_set(opens[i], s.points_) + " with " +
                                           format_set(opens[j], s.points_));
      }
      if (!have(set_intersect(opens[i], opens[j]))) {
        fail(Err::NotClosedUnderIntersection, format_set(opens[i], s.points_) + " with " +
                                                  format_set(opens[j], s.points_));
      }
    }
  }
  s.min_open_.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    IndexSet m = full_set(n);
    for (const IndexSet& u : opens) {
      if (set_contains(u, x)) {
        m = set_intersect(m, u);
      }
    }
    s.min_open_[x] = std::move(m);
  }
  s.opens_ = std::move(opens);
  s.check_base();
  return s;
}

FinSpace FinSpace::from_min_opens(std::vector<std::string> points,
                                  std::vector<IndexSet> min_opens) {
  FinSpace s;
  s.points_ = std::move(points);
  s.build_index();
  if (min_opens.size() != s.size()) {
    fail(Err::Internal, "minimal-open base size mismatch");
  }
  s.min_open_ = std::move(min_opens);
  s.check_base();
  return s;
}

FinSpace FinSpace::discrete(std::vector<std::string> points) {
  std::vector<IndexSet> m(points.size());
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    m[i] = IndexSet{i};
  }
  return from_min_opens(std::move(points), std::move(m));
}

std::uint32_t FinSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    fail(Err::UnknownPoint, "'" + id + "'");
  }
  return it->second;
}

bool FinSpace::has_point(const std::string& id) const { return index_.count(id) > 0; }

const IndexSet& FinSpace::min_open(std::uint32_t x) const {
  if (x >= size()) {
    fail(Err::UnknownPoint, "index " + std::to_string(x));
  }
  return min_open_[x];
}

bool FinSpace::is_open(const IndexSet& u) const {
  for (std::uint32_t x : u) {
    if (x >= size() || !is_subset(min_open_[x], u)) {
      return false;
    }
  }
  return true;
}

const std::vector<IndexSet>& FinSpace::explicit_opens() const {
  if (!opens_) {
    fail(Err::Internal, "no explicit open lattice stored");
  }
  return *opens_;
}

std::vector<IndexSet> FinSpace::all_opens(std::size_t cap) const {
  if (opens_) {
    return *opens_;
  }
  // Every open is a union of minimal opens; close the base under unions.
  std::set<IndexSet> known;
  known.insert(IndexSet{});
  std::vector<IndexSet> work{IndexSet{}};
  while (!work.empty()) {
    IndexSet u = std::move(work.back());
    work.pop_back();
    for (std::uint32_t x = 0; x < size(); ++x) {
      IndexSet v = set_union(u, min_open_[x]);
      if (known.insert(v).second) {
        if (known.size() > cap) {
          fail(Err::TooLarge, "open lattice exceeds cap " + std::to_string(cap));
        }
        work.push_back(std::move(v));
      }
    }
  }
  std::vector<IndexSet> out(known.begin(), known.end());
  sort_opens(out);
  return out;
}

FinSpace FinSpace::subspace(const IndexSet& a) const {
  std::vector<std::string> pts;
  pts.reserve(a.size());
  std::map<std::uint32_t, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    pts.push_back(points_.at(a[i]));
    pos[a[i]] = i;
  }
  std::vector<IndexSet> mins(a.size());
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    IndexSet m = set_intersect(min_open_[a[i]], a);
    IndexSet rel;
    rel.reserve(m.size());
    for (std::uint32_t y : m) {
      rel.push_back(pos[y]);
    }
    mins[i] = make_set(std::move(rel));
  }
  return from_min_opens(std::move(pts), std::move(mins));
}

std::uint32_t PointMap::value_at(std::uint32_t x) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), x);
  if (it == domain.end() || *it != x) {
    fail(Err::PointOutsideDomain, "point index " + std::to_string(x));
  }
  return values.at(static_cast<std::size_t>(it - domain.begin()));
}

bool is_continuous(const PointMap& f, const FinSpace& s, const FinSpace& t) {
  if (!s.is_open(f.domain)) {
    fail(Err::NotOpen, "map domain is not open");
  }
  if (f.values.size() != f.domain.size()) {
    fail(Err::Parse, "map values do not cover the domain");
  }
  for (std::uint32_t x : f.domain) {
    const IndexSet& fm = t.min_open(f.value_at(x));
    for (std::uint32_t y : s.min_open(x)) {
      if (!set_contains(fm, f.value_at(y))) {
        return false;
      }
    }
  }
  return true;
}

bool is_open_homeo_onto_image(const PointMap& f, const FinSpace& s) {
  if (!s.is_open(f.domain)) {
    fail(Err::NotOpen, "map domain is not open");
  }
  IndexSet img = f.image();
  if (img.size() != f.domain.size()) {
    return false;  // not injective
  }
  if (!s.is_open(img)) {
    return false;
  }
  // Both directions of continuity between the subspaces.
  for (std::uint32_t x : f.domain) {
    for (std::uint32_t y : f.domain) {
      bool near = set_contains(s.min_open(x), y);
      bool image_near = set_contains(s.min_open(f.value_at(x)), f.value_at(y));
      if (near != image_near) {
        return false;
      }
    }
  }
  return true;
}

FinSpace sierp_space() {
  return FinSpace::validated({"a", "b"}, {IndexSet{}, IndexSet{0}, IndexSet{0, 1}});
}

FinSpace disc2_space() { return FinSpace::discrete({"a", "b"}); }

FinSpace circ4_space() {
  // points x1,x2,y1,y2; opens {},{x1},{x2},{x1,x2},{x1,x2,y1},{x1,x2,y2},X
  return FinSpace::validated({"x1", "x2", "y1", "y2"},
                             {IndexSet{}, IndexSet{0}, IndexSet{1}, IndexSet{0, 1},
                              IndexSet{0, 1, 2}, IndexSet{0, 1, 3}, IndexSet{0, 1, 2, 3}});
}

}  // namespace holmon
