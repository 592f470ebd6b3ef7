#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radon/de9im.hpp"
#include "radon/geometry.hpp"

namespace radon {

/// One ingested resource. Geometries crossing the antimeridian are stored
/// already split (as a multi-geometry), with one box per side.
struct Feature {
  std::string id;
  Geometry geometry;
  PreparedGeometry prepared;
  MBB envelope;
  std::vector<MBB> boxes;
  double lon_extent = 0.0;
  double lat_extent = 0.0;
};

Feature make_feature(std::string id, const Geometry& g);

/// Ordered collection of features with unique ids.
class Dataset {
 public:
  Dataset() = default;
  /// Throws Error(invalid_config) on duplicate ids.
  Dataset(std::string label, std::vector<Feature> features);

  static Dataset from_geometries(std::string label, std::vector<std::pair<std::string, Geometry>> items);

  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return features_.size(); }
  bool empty() const noexcept { return features_.empty(); }
  const Feature& operator[](std::size_t k) const noexcept { return features_[k]; }
  auto begin() const noexcept { return features_.begin(); }
  auto end() const noexcept { return features_.end(); }

  std::optional<std::size_t> find(const std::string& id) const;

 private:
  std::string label_;
  std::vector<Feature> features_;
};

}  // namespace radon
