#include "radon/dataset.hpp"

#include <unordered_map>

#include "radon/error.hpp"
#include "radon/tiling.hpp"

namespace radon {

Feature make_feature(std::string id, const Geometry& g) {
  const std::vector<Geometry> pieces = split_antimeridian(g);
  Geometry shape = merge_pieces(pieces);
  PreparedGeometry prepared(shape);
  Feature f{std::move(id), std::move(shape), std::move(prepared), {}, {}, 0.0, 0.0};
  f.envelope = f.prepared.envelope();
  for (const Geometry& piece : pieces) {
    f.boxes.push_back(mbb(piece));
    f.lon_extent += f.boxes.back().width();
  }
  f.lat_extent = f.envelope.height();
  return f;
}

Dataset::Dataset(std::string label, std::vector<Feature> features)
    : label_(std::move(label)), features_(std::move(features)) {
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(features_.size());
  for (std::size_t k = 0; k < features_.size(); ++k)
    if (!seen.emplace(features_[k].id, k).second)
      throw Error(ErrorCode::invalid_config, "duplicate id '" + features_[k].id + "' in dataset " + label_);
}

Dataset Dataset::from_geometries(std::string label, std::vector<std::pair<std::string, Geometry>> items) {
  std::vector<Feature> features;
  features.reserve(items.size());
  for (auto& [id, g] : items) features.push_back(make_feature(std::move(id), g));
  return Dataset(std::move(label), std::move(features));
}

std::optional<std::size_t> Dataset::find(const std::string& id) const {
  for (std::size_t k = 0; k < features_.size(); ++k)
    if (features_[k].id == id) return k;
  return std::nullopt;
}

}  // namespace radon
